//! Integral mixed Hodge structures of 1-motive type.
//!
//! A structure is a lattice `T_Z = Z^n` with saturated weight sublattices
//! `W_-2 ⊂ W_-1`, a complex subspace `F^0` of `C^n`, and a polarization of
//! the weight -1 graded piece given on chosen lifts.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::numeric::{CMat, RMat};
use crate::report::Report;
use crate::zlinalg::{
    complete_basis, det, inverse_unimodular, is_saturated, lattice_basis, rank, solve_integral, IntMatrix,
};

/// Polarization of `gr_-1`: an integral alternating form on the span of `lifts`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polarization {
    /// `n x 2g` lifts to `W_-1` of a basis of `gr_-1`.
    pub lifts: IntMatrix,
    /// `2g x 2g` alternating form.
    pub form: IntMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MixedHodgeStructure {
    rank: usize,
    w2: IntMatrix,
    w1: IntMatrix,
    f0: CMat,
    polarization: Option<Polarization>,
}

/// Ranks `(r, t, g)` read off from a structure of 1-motive type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HodgeType {
    pub r: usize,
    pub t: usize,
    pub g: usize,
}

/// Graded pieces: `gr_0` and `gr_-2` are recorded by rank, `gr_-1` carries
/// its Hodge filtration and polarization.
#[derive(Clone, Debug)]
pub struct GradedPieces {
    pub gr0_rank: usize,
    pub gr2_rank: usize,
    /// `2g x g` basis of `F^0 gr_-1` in the coordinates of the lifts.
    pub gr1_f0: CMat,
    pub gr1_form: Option<IntMatrix>,
}

/// The standard form `[[0, I], [-I, 0]]`.
pub fn standard_symplectic(g: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        j[(i, g + i)] = BigInt::one();
        j[(g + i, i)] = -BigInt::one();
    }
    j
}

/// Unimodular `s` with `s^T e s = [[0, I], [-I, 0]]`, for a unimodular alternating `e`.
pub fn symplectic_basis(e: &IntMatrix) -> Result<IntMatrix> {
    let k = e.rows();
    if e.cols() != k || k % 2 == 1 {
        return Err(Error::Riemann(format!("form of shape {}x{} is not even square", k, e.cols())));
    }
    if e.transpose() != e.neg() {
        return Err(Error::Riemann("form is not alternating".into()));
    }
    if !det(e).abs().is_one() {
        return Err(Error::Riemann("polarization is not principal".into()));
    }
    let g = k / 2;
    let pair = |x: &[BigInt], y: &[BigInt]| -> BigInt {
        let ey = e.mul_vec(y);
        x.iter().zip(&ey).fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
    };
    let mut lattice = IntMatrix::identity(k);
    let mut es = Vec::new();
    let mut fs = Vec::new();
    for _ in 0..g {
        let v = lattice.col(0);
        let ev: Vec<BigInt> = {
            let vt = IntMatrix::from_columns(k, &[v.clone()]).transpose();
            (&(&vt * e) * &lattice).row(0)
        };
        let row = IntMatrix::from_bigint(1, lattice.cols(), ev);
        let sol = solve_integral(&row, &[BigInt::one()])
            .ok_or_else(|| Error::Riemann("form is degenerate on a sublattice".into()))?;
        let w = lattice.mul_vec(&sol.particular);
        let mut projected = Vec::new();
        for j in 0..lattice.cols() {
            let x = lattice.col(j);
            let xw = pair(&x, &w);
            let xv = pair(&x, &v);
            let p: Vec<BigInt> = (0..k).map(|i| &x[i] - &xw * &v[i] + &xv * &w[i]).collect();
            projected.push(p);
        }
        lattice = lattice_basis(&IntMatrix::from_columns(k, &projected));
        es.push(v);
        fs.push(w);
    }
    let mut cols = es;
    cols.extend(fs);
    let s = IntMatrix::from_columns(k, &cols);
    if &(&s.transpose() * e) * &s != standard_symplectic(g) {
        return Err(Error::Numerical("symplectic reduction did not converge".into()));
    }
    Ok(s)
}

/// True when the columns of `a` and `b` span the same complex subspace.
pub fn same_subspace(a: &CMat, b: &CMat, tol: f64) -> bool {
    if a.rows() != b.rows() {
        return false;
    }
    let ra = a.rank(tol);
    ra == b.rank(tol) && a.hstack(b).rank(tol) == ra
}

impl MixedHodgeStructure {
    /// Builds a structure from generators of the weight lattices and a spanning set of `F^0`.
    pub fn new(
        rank: usize,
        w2: IntMatrix,
        w1: IntMatrix,
        f0: CMat,
        polarization: Option<Polarization>,
    ) -> Result<Self> {
        if w2.rows() != rank || w1.rows() != rank || f0.rows() != rank {
            return Err(Error::Dimension(format!(
                "weight bases and F^0 must have {rank} rows (got {}, {}, {})",
                w2.rows(),
                w1.rows(),
                f0.rows()
            )));
        }
        for (name, w) in [("W_-2", &w2), ("W_-1", &w1)] {
            if w.cols() > 0 && !is_saturated(&lattice_basis(w)) {
                return Err(Error::TypeViolation(format!("{name} is not a saturated sublattice")));
            }
        }
        let w2 = lattice_basis(&w2);
        let w1 = lattice_basis(&w1);
        if rank_of(&w1.hstack(&w2)) != w1.cols() {
            return Err(Error::TypeViolation("W_-2 is not contained in W_-1".into()));
        }
        if let Some(p) = &polarization {
            let g2 = w1.cols() - w2.cols();
            if p.lifts.shape() != (rank, g2) || p.form.shape() != (g2, g2) {
                return Err(Error::Dimension(format!(
                    "polarization needs {rank}x{g2} lifts and a {g2}x{g2} form"
                )));
            }
        }
        Ok(MixedHodgeStructure { rank, w2, w1, f0, polarization })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn w2(&self) -> &IntMatrix {
        &self.w2
    }

    pub fn w1(&self) -> &IntMatrix {
        &self.w1
    }

    pub fn f0(&self) -> &CMat {
        &self.f0
    }

    pub fn polarization(&self) -> Option<&Polarization> {
        self.polarization.as_ref()
    }

    /// Ranks `(r, t, g)`. An odd rank of `gr_-1` is reported as a type violation.
    pub fn hodge_type(&self) -> Result<HodgeType> {
        let t = self.w2.cols();
        let g2 = self.w1.cols() - t;
        if g2 % 2 == 1 {
            return Err(Error::TypeViolation(format!("gr_-1 has odd rank {g2}")));
        }
        Ok(HodgeType { r: self.rank - self.w1.cols(), t, g: g2 / 2 })
    }

    /// Unimodular basis `[W_-2 | lifts | complement]` adapted to the weight filtration.
    /// The polarization lifts are used when present.
    pub fn adapted_basis(&self) -> Result<IntMatrix> {
        let n = self.rank;
        let t = self.w2.cols();
        let k1 = self.w1.cols();
        let head = match &self.polarization {
            Some(p) => {
                let head = self.w2.hstack(&p.lifts);
                if lattice_basis(&head) != self.w1 || rank_of(&head) != k1 {
                    return Err(Error::TypeViolation(
                        "polarization lifts do not complete W_-2 to a basis of W_-1".into(),
                    ));
                }
                head
            }
            None => {
                let b1 = complete_basis(&self.w2)?;
                let b1inv = inverse_unimodular(&b1).ok_or(Error::Numerical("basis inversion".into()))?;
                let y = &b1inv * &self.w1;
                let tail = lattice_basis(&y.block(t, 0, n - t, k1));
                let b2 = complete_basis(&tail)?;
                let full = &b1 * &IntMatrix::identity(t).block_diag(&b2);
                full.block(0, 0, n, k1)
            }
        };
        complete_basis(&head)
    }

    /// `F^0` in the coordinates of the adapted basis.
    fn adapted_f0(&self) -> Result<(IntMatrix, CMat)> {
        let b = self.adapted_basis()?;
        let binv = inverse_unimodular(&b).ok_or(Error::Numerical("basis inversion".into()))?;
        Ok((b, CMat::from_int(&binv).mul(&self.f0)))
    }

    /// Full type check with one finding per condition.
    pub fn type_report(&self, cfg: &Config) -> Report {
        let mut rep = Report::new("hodge_type");
        let ty = match self.hodge_type() {
            Ok(t) => t,
            Err(e) => {
                rep.check("gr1_even_rank", false, format!("{e}"));
                return rep;
            }
        };
        let HodgeType { r, t, g } = ty;
        let (_, f) = match self.adapted_f0() {
            Ok(x) => x,
            Err(e) => {
                rep.check("adapted_basis", false, format!("{e}"));
                return rep;
            }
        };
        let tol = cfg.tol;
        let k = f.rank(tol);
        rep.check("f0_dimension", k == g + r, format!("dim F^0 = {k}, expected g + r = {}", g + r));
        let basis = f.select_cols(&f.rref_cols(tol));
        let below = basis.block(t, 0, self.rank - t, basis.cols());
        rep.check(
            "f0_meets_w2_trivially",
            below.rank(tol) == basis.cols(),
            "F^0 must meet W_-2 only in 0",
        );
        let top = basis.block(t + 2 * g, 0, r, basis.cols());
        rep.check("f0_onto_gr0", top.rank(tol) == r, "F^0 must surject onto gr_0");
        let x = gr1_piece(&basis, t, g, r, tol);
        let x_ok = x.cols() == g && x.rank(tol) == g && x.hstack(&x.conj()).rank(tol) == 2 * g;
        rep.check("gr1_hodge_decomposition", x_ok, "gr_-1 must be pure of type (-1,0) + (0,-1)");
        if g == 0 {
            return rep;
        }
        let Some(pol) = &self.polarization else {
            rep.check("polarization_present", false, "gr_-1 is nonzero but no polarization was given");
            return rep;
        };
        if !x_ok {
            return rep;
        }
        let e = &pol.form;
        if e.transpose() != e.neg() || det(e).is_zero() {
            rep.check("polarization_nondegenerate", false, "form must be alternating and nondegenerate");
            return rep;
        }
        let ec = CMat::from_int(e);
        let iso = x.transpose().mul(&ec).mul(&x);
        let scale = x.max_abs() * x.max_abs() * ec.max_abs();
        rep.check(
            "riemann_isotropy",
            iso.max_abs() <= tol * scale.max(1.0),
            format!("F^0 must be isotropic, defect {:.3e}", iso.max_abs()),
        );
        let positive = complex_structure(&x, tol).map(|j| {
            let er = RMat::from_int(e);
            let ej = er.mul(&j);
            ej.is_symmetric(1e3 * tol) && ej.add(&ej.transpose()).is_positive_definite()
        });
        rep.check(
            "riemann_positivity",
            positive == Some(true),
            "E(x, Jx) must be positive definite",
        );
        rep
    }

    /// Confirms the structure has 1-motive type, naming the first failed condition.
    pub fn validate_type(&self, cfg: &Config) -> Result<()> {
        let rep = self.type_report(cfg);
        match rep.details.iter().find(|f| !matches!(f.status, crate::report::Status::Pass)) {
            None => Ok(()),
            Some(f) if f.name == "polarization_present" => Err(Error::MissingPolarization),
            Some(f) if f.name.starts_with("riemann") || f.name.starts_with("polarization") => {
                Err(Error::Riemann(format!("{}: {}", f.name, f.message)))
            }
            Some(f) => Err(Error::TypeViolation(format!("{}: {}", f.name, f.message))),
        }
    }

    pub fn graded_pieces(&self, cfg: &Config) -> Result<GradedPieces> {
        self.validate_type(cfg)?;
        let HodgeType { r, t, g } = self.hodge_type()?;
        let (_, f) = self.adapted_f0()?;
        let basis = f.select_cols(&f.rref_cols(cfg.tol));
        Ok(GradedPieces {
            gr0_rank: r,
            gr2_rank: t,
            gr1_f0: gr1_piece(&basis, t, g, r, cfg.tol),
            gr1_form: self.polarization.as_ref().map(|p| p.form.clone()),
        })
    }

    /// The pure structure `gr^W_i`, for `i` in `{0, -1, -2}`.
    pub fn graded_piece(&self, i: i64, cfg: &Config) -> Result<Self> {
        let pieces = self.graded_pieces(cfg)?;
        match i {
            0 => {
                let r = pieces.gr0_rank;
                MixedHodgeStructure::new(r, IntMatrix::zeros(r, 0), IntMatrix::zeros(r, 0), CMat::identity(r), None)
            }
            -1 => {
                let n = pieces.gr1_f0.rows();
                let polarization = pieces.gr1_form.map(|form| Polarization { lifts: IntMatrix::identity(n), form });
                MixedHodgeStructure::new(n, IntMatrix::zeros(n, 0), IntMatrix::identity(n), pieces.gr1_f0, polarization)
            }
            -2 => {
                let t = pieces.gr2_rank;
                MixedHodgeStructure::new(t, IntMatrix::identity(t), IntMatrix::identity(t), CMat::zeros(t, 0), None)
            }
            _ => Err(Error::Weight(i)),
        }
    }

    /// Tate twist by `Z(k)`; only twists that keep the weights in `{-2, -1, 0}` are allowed.
    pub fn tate_twist(&self, k: i64) -> Result<Self> {
        let HodgeType { r, t, g } = self.hodge_type()?;
        let n = self.rank;
        match k {
            0 => Ok(self.clone()),
            1 if t == 0 && g == 0 => {
                let all = IntMatrix::identity(n);
                MixedHodgeStructure::new(n, all.clone(), all, CMat::zeros(n, 0), None)
            }
            -1 if r == 0 && g == 0 => {
                let none = IntMatrix::zeros(n, 0);
                MixedHodgeStructure::new(n, none.clone(), none, CMat::identity(n), None)
            }
            _ => Err(Error::TypeViolation(format!(
                "twist by Z({k}) leaves weights -2..0 for type (r, t, g) = ({r}, {t}, {g})"
            ))),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let n = self.rank + other.rank;
        let polarization = match (&self.polarization, &other.polarization) {
            (None, None) => None,
            (a, b) => {
                let lift = |p: Option<&Polarization>, h: &Self| {
                    p.cloned().unwrap_or_else(|| Polarization {
                        lifts: IntMatrix::zeros(h.rank, 0),
                        form: IntMatrix::zeros(0, 0),
                    })
                };
                let (pa, pb) = (lift(a.as_ref(), self), lift(b.as_ref(), other));
                if pa.lifts.cols() != self.w1.cols() - self.w2.cols()
                    || pb.lifts.cols() != other.w1.cols() - other.w2.cols()
                {
                    return Err(Error::MissingPolarization);
                }
                Some(Polarization { lifts: pa.lifts.block_diag(&pb.lifts), form: pa.form.block_diag(&pb.form) })
            }
        };
        MixedHodgeStructure::new(
            n,
            self.w2.block_diag(&other.w2),
            self.w1.block_diag(&other.w1),
            self.f0.block_diag(&other.f0),
            polarization,
        )
    }

    /// Equality of filtrations and polarizations, `F^0` up to `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.rank != other.rank || self.w2 != other.w2 || self.w1 != other.w1 {
            return false;
        }
        if !same_subspace(&self.f0, &other.f0, tol) {
            return false;
        }
        match (&self.polarization, &other.polarization) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                let Some(s) = gr1_change(&self.w2, &a.lifts, &b.lifts) else {
                    return false;
                };
                &(&s.transpose() * &a.form) * &s == b.form
            }
            _ => self.w1.cols() == self.w2.cols(),
        }
    }
}

fn rank_of(a: &IntMatrix) -> usize {
    rank(a)
}

/// Integer `s` with `b = a s` modulo `w2`, when it exists.
fn gr1_change(w2: &IntMatrix, a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let sys = a.hstack(w2);
    let mut cols = Vec::new();
    for j in 0..b.cols() {
        let sol = solve_integral(&sys, &b.col(j))?;
        cols.push(sol.particular[..a.cols()].to_vec());
    }
    Some(IntMatrix::from_columns(a.cols(), &cols))
}

/// Columns of `f` in `gr_-1` coordinates: the part of `F^0` inside `W_-1`, projected.
fn gr1_piece(f: &CMat, t: usize, g: usize, r: usize, tol: f64) -> CMat {
    let top = f.block(t + 2 * g, 0, r, f.cols());
    let inside = if r == 0 { CMat::identity(f.cols()) } else { top.nullspace(tol) };
    f.block(t, 0, 2 * g, f.cols()).mul(&inside)
}

/// Real matrix of multiplication by `i` on `V_R`, for `V_C = F ⊕ conj(F)` with
/// `F` spanned by the columns of `x`, acting on the quotient `V_C / F`.
pub(crate) fn complex_structure(x: &CMat, tol: f64) -> Option<RMat> {
    let phi = x.left_nullspace(tol);
    let g = phi.rows();
    let r = phi.re().vstack(&phi.im());
    if r.rows() != r.cols() {
        return None;
    }
    let mut rot = RMat::zeros(2 * g, 2 * g);
    for i in 0..g {
        rot[(i, g + i)] = -1.0;
        rot[(g + i, i)] = 1.0;
    }
    r.solve(&rot.mul(&r))
}

impl core::fmt::Display for HodgeType {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "(r, t, g) = ({}, {}, {})", self.r, self.t, self.g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::C64;

    fn z1() -> MixedHodgeStructure {
        MixedHodgeStructure::new(1, IntMatrix::identity(1), IntMatrix::identity(1), CMat::zeros(1, 0), None).unwrap()
    }

    fn z0() -> MixedHodgeStructure {
        MixedHodgeStructure::new(1, IntMatrix::zeros(1, 0), IntMatrix::zeros(1, 0), CMat::identity(1), None).unwrap()
    }

    fn h1_elliptic(tau: C64) -> MixedHodgeStructure {
        let f0 = CMat::from_vec(2, 1, alloc::vec![tau, C64::new(-1.0, 0.0)]);
        let pol = Polarization { lifts: IntMatrix::identity(2), form: standard_symplectic(1) };
        MixedHodgeStructure::new(2, IntMatrix::zeros(2, 0), IntMatrix::identity(2), f0, Some(pol)).unwrap()
    }

    #[test]
    fn tate_objects() {
        let cfg = Config::default();
        z1().validate_type(&cfg).unwrap();
        z0().validate_type(&cfg).unwrap();
        let bad = MixedHodgeStructure::new(1, IntMatrix::identity(1), IntMatrix::identity(1), CMat::identity(1), None)
            .unwrap();
        let rep = bad.type_report(&cfg);
        assert!(!rep.passed());
        assert!(rep.details.iter().any(|f| f.status != crate::report::Status::Pass && f.name == "f0_meets_w2_trivially"));
    }

    #[test]
    fn elliptic_h1_is_of_type() {
        let cfg = Config::default();
        let h = h1_elliptic(C64::new(0.3, 1.2));
        h.validate_type(&cfg).unwrap();
        assert_eq!(h.hodge_type().unwrap(), HodgeType { r: 0, t: 0, g: 1 });
        let real_line = CMat::from_vec(2, 1, alloc::vec![C64::new(1.0, 0.0), C64::new(2.0, 0.0)]);
        let pol = Polarization { lifts: IntMatrix::identity(2), form: standard_symplectic(1) };
        let flat = MixedHodgeStructure::new(2, IntMatrix::zeros(2, 0), IntMatrix::identity(2), real_line, Some(pol))
            .unwrap();
        assert!(flat.validate_type(&cfg).is_err());
    }

    #[test]
    fn graded_pieces_of_tate_objects() {
        let cfg = Config::default();
        assert_eq!(z1().graded_piece(-2, &cfg).unwrap().rank(), 1);
        assert_eq!(z1().graded_piece(0, &cfg).unwrap().rank(), 0);
        assert_eq!(h1_elliptic(C64::new(0.0, 1.0)).graded_piece(-1, &cfg).unwrap().rank(), 2);
        assert_eq!(z1().graded_piece(1, &cfg), Err(Error::Weight(1)));
    }

    #[test]
    fn twists() {
        let cfg = Config::default();
        assert!(z0().tate_twist(1).unwrap().approx_eq(&z1(), cfg.tol));
        assert!(z1().tate_twist(-1).unwrap().approx_eq(&z0(), cfg.tol));
        assert!(h1_elliptic(C64::new(0.0, 1.0)).tate_twist(1).is_err());
    }

    #[test]
    fn sums() {
        let cfg = Config::default();
        let s = z0().direct_sum(&z1()).unwrap();
        s.validate_type(&cfg).unwrap();
        assert_eq!(s.hodge_type().unwrap(), HodgeType { r: 1, t: 1, g: 0 });
        let e = h1_elliptic(C64::new(-0.2, 0.9));
        let s2 = e.direct_sum(&s).unwrap();
        s2.validate_type(&cfg).unwrap();
        assert_eq!(s2.rank(), 4);
    }
}
