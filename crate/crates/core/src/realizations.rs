//! Hodge, finite-level and de Rham realizations.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use core::f64::consts::PI;

use num_traits::{Float, One, Pow, Zero};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::hodge::{standard_symplectic, symplectic_basis, MixedHodgeStructure, Polarization};
use crate::motives::{AbelianVariety, MotiveMorphism, OneMotive, SemiAbelianVariety};
use crate::numeric::{CMat, RMat, C64, TWO_PI_I};
use crate::report::Report;
use crate::zlinalg::{cokernel_structure, inverse_unimodular, FiniteAbelianGroup, IntMatrix};

fn unit_block(n: usize, start: usize, len: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, len);
    for i in 0..len {
        m[(start + i, i)] = BigInt::one();
    }
    m
}

/// Hodge realization. `T_Z = Z^(t+2g+r)` with the torus lattice first, then
/// the abelian lattice (`mu` block, then `lambda` block), then `L`.
pub fn t_hodge(m: &OneMotive) -> MixedHodgeStructure {
    let (_, t, g) = m.ranks();
    let n = m.total_rank();
    let f0 = m.hodge_matrix().nullspace(1e-12);
    let polarization = Polarization { lifts: unit_block(n, t, 2 * g), form: standard_symplectic(g) };
    MixedHodgeStructure::new(n, unit_block(n, 0, t), unit_block(n, 0, t + 2 * g), f0, Some(polarization))
        .expect("Hodge realization of a valid motive is well formed")
}

/// The 1-motive of a structure of 1-motive type, with the isomorphism
/// `T_Z(motivic(h)) -> T_Z(h)` in standard coordinates.
pub fn motivic(h: &MixedHodgeStructure, cfg: &Config) -> Result<(OneMotive, IntMatrix)> {
    h.validate_type(cfg)?;
    let ty = h.hodge_type()?;
    let (r, t, g) = (ty.r, ty.t, ty.g);
    let b = h.adapted_basis()?;
    let binv = inverse_unimodular(&b).ok_or(Error::Numerical("adapted basis inversion".into()))?;
    let f = CMat::from_int(&binv).mul(h.f0());
    let phi = f.left_nullspace(cfg.tol);
    if phi.rows() != t + g {
        return Err(Error::TypeViolation(format!("Lie algebra has dimension {}, expected {}", phi.rows(), t + g)));
    }
    let s = match h.polarization() {
        Some(p) if p.form == standard_symplectic(g) => IntMatrix::identity(2 * g),
        Some(p) => symplectic_basis(&p.form)?,
        None if g == 0 => IntMatrix::identity(0),
        None => return Err(Error::MissingPolarization),
    };
    let phi_t = phi.block(0, 0, t + g, t);
    let phi_a = phi.block(0, t, t + g, 2 * g).mul(&CMat::from_int(&s));
    let phi_l = phi.block(0, t + 2 * g, t + g, r);
    let q = phi_t.hstack(&phi_a.block(0, 0, t + g, g));
    let qinv = q.inverse().ok_or(Error::Riemann("period matrix of the abelian part is singular".into()))?;
    let mut d = CMat::identity(t + g);
    for i in 0..t {
        d[(i, i)] = TWO_PI_I;
    }
    let c = d.mul(&qinv);
    let lam = c.mul(&phi_a.block(0, g, t + g, g));
    let omega_raw = lam.block(t, 0, g, g);
    let omega = omega_raw.add(&omega_raw.transpose()).scale(C64::new(0.5, 0.0));
    if omega.dist(&omega_raw) > cfg.tol * omega.max_abs().max(1.0) {
        return Err(Error::NotSymmetric);
    }
    let n = h.rank();
    let mut eta = CMat::zeros(t, 2 * g);
    let mut shift_eta = IntMatrix::identity(n);
    for j in 0..t {
        for k in 0..g {
            let x = lam[(j, k)];
            let m = Float::round(x.im / (2.0 * PI));
            eta[(j, g + k)] = x - TWO_PI_I.scale(m);
            shift_eta[(j, t + g + k)] = BigInt::from(-(m as i64));
        }
    }
    let u = c.mul(&phi_l);
    let a = AbelianVariety::new(omega, cfg)?;
    let raw = OneMotive::new(r, SemiAbelianVariety::new(t, a, eta)?, u)?;
    let k = lift_reduction(&raw);
    let motive = raw.shift_lift(&k)?;
    let mut shift_u = IntMatrix::identity(n);
    shift_u.set_block(0, t + 2 * g, &k);
    let iso = &(&(&b * &IntMatrix::identity(t).block_diag(&s).block_diag(&IntMatrix::identity(r))) * &shift_eta) * &shift_u;
    Ok((motive, iso))
}

/// Integer `k` moving the lift of `u` towards the fundamental domain of the period lattice.
fn lift_reduction(m: &OneMotive) -> IntMatrix {
    let p = m.period_matrix();
    let (d, k) = (p.rows(), p.cols());
    let mut k_out = IntMatrix::zeros(k, m.r());
    if k == 0 {
        return k_out;
    }
    let real = p.re().vstack(&p.im());
    for col in 0..m.r() {
        let v = m.u_lift().col(col);
        let rhs: Vec<f64> = v.iter().map(|z| z.re).chain(v.iter().map(|z| z.im)).collect();
        debug_assert_eq!(rhs.len(), 2 * d);
        if let Some(x) = real.lstsq(&RMat::column(&rhs)) {
            for i in 0..k {
                let c = Float::round(x[(i, 0)]);
                if c.is_finite() {
                    k_out[(i, col)] = BigInt::from(-(c as i64));
                }
            }
        }
    }
    k_out
}

/// `T_Z / m`, with the inclusion of `T_Z(G)/m` and the projection to `L/m`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteLevelRealization {
    pub level: u64,
    pub rank: usize,
    pub group: FiniteAbelianGroup,
    /// `n x (t+2g)`: `G[m] -> M[m]`.
    pub sub: IntMatrix,
    /// `r x n`: `M[m] -> L/m`.
    pub quot: IntMatrix,
    /// `n x t`: `T[m] -> M[m]`.
    pub torus: IntMatrix,
}

/// A point of `M[m]`: a class `x` in `L/m` and `v` in `Lie G` with `u(x) + m exp(v) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionPoint {
    pub x: Vec<i64>,
    pub v: Vec<C64>,
}

/// Order of the image of `a: Z^k -> (Z/m)^n`.
pub fn image_order_mod(a: &IntMatrix, m: u64) -> BigInt {
    let n = a.rows();
    let mb = BigInt::from(m);
    let aug = a.hstack(&IntMatrix::identity(n).scale(&mb));
    let coker = cokernel_structure(&aug).order().unwrap_or_else(BigInt::zero);
    Pow::pow(&mb, n as u32) / coker
}

pub fn t_mod_m(m: &OneMotive, level: u64) -> Result<FiniteLevelRealization> {
    if level < 2 {
        return Err(Error::Level(level));
    }
    let (r, t, g) = m.ranks();
    let n = m.total_rank();
    Ok(FiniteLevelRealization {
        level,
        rank: n,
        group: FiniteAbelianGroup::cyclic_power(level, n),
        sub: unit_block(n, 0, t + 2 * g),
        quot: unit_block(n, t + 2 * g, r).transpose(),
        torus: unit_block(n, 0, t),
    })
}

impl FiniteLevelRealization {
    /// The point of `M[m]` of a class `(lambda, x)` of `T_Z`.
    pub fn point(&self, motive: &OneMotive, class: &[i64]) -> TorsionPoint {
        let k = motive.semiabelian().lattice_rank();
        assert_eq!(class.len(), self.rank);
        let p = motive.period_matrix();
        let lam: Vec<C64> = class[..k].iter().map(|&x| C64::new(x as f64, 0.0)).collect();
        let x: Vec<C64> = class[k..].iter().map(|&x| C64::new(x as f64, 0.0)).collect();
        let pl = p.mul_vec(&lam);
        let ux = motive.u_lift().mul_vec(&x);
        let mf = self.level as f64;
        TorsionPoint {
            x: class[k..].iter().map(|&v| v.rem_euclid(self.level as i64)).collect(),
            v: pl.iter().zip(&ux).map(|(a, b)| (a - b) / mf).collect(),
        }
    }

    /// Exactness of `0 -> G[m] -> M[m] -> L/m -> 0` and of `0 -> T[m] -> G[m]`.
    pub fn exactness_report(&self) -> Report {
        let mut rep = Report::new("finite_level_exactness");
        let m = self.level;
        let mb = BigInt::from(m);
        let k = self.sub.cols();
        let r = self.quot.rows();
        let sub_img = image_order_mod(&self.sub, m);
        rep.check(
            "sub_injective",
            sub_img == Pow::pow(&mb, k as u32),
            format!("|image of G[m]| = {sub_img}, expected {m}^{k}"),
        );
        let quot_img = image_order_mod(&self.quot, m);
        rep.check(
            "quot_surjective",
            quot_img == Pow::pow(&mb, r as u32),
            format!("|image in L/m| = {quot_img}, expected {m}^{r}"),
        );
        let comp = (&self.quot * &self.sub).reduce_mod(&mb);
        rep.check("composite_zero", comp.is_zero(), "M[m] -> L/m must kill G[m]");
        let total = self.group.order().unwrap_or_else(BigInt::zero);
        let ker = &total / &quot_img;
        rep.check("middle_exact", ker == sub_img, format!("|ker| = {ker}, |image| = {sub_img}"));
        let tor = image_order_mod(&self.torus, m);
        rep.check(
            "torus_injective",
            tor == Pow::pow(&mb, self.torus.cols() as u32),
            format!("|image of T[m]| = {tor}"),
        );
        rep
    }
}

/// Levels `m_1 | m_2 | ...` with the reduction maps `M[m_j] -> M[m_i]`.
#[derive(Clone, Debug)]
pub struct EtaleTower {
    pub levels: Vec<FiniteLevelRealization>,
    /// `transitions[i]` maps level `i + 1` onto level `i`.
    pub transitions: Vec<IntMatrix>,
}

pub fn etale_tower(m: &OneMotive, levels: &[u64]) -> Result<EtaleTower> {
    let mut out = Vec::new();
    for (i, &l) in levels.iter().enumerate() {
        if i > 0 && l % levels[i - 1] != 0 {
            return Err(Error::LevelChain(levels[i - 1], l));
        }
        out.push(t_mod_m(m, l)?);
    }
    let n = m.total_rank();
    let transitions = (1..out.len()).map(|_| IntMatrix::identity(n)).collect();
    Ok(EtaleTower { levels: out, transitions })
}

impl EtaleTower {
    /// Each transition must be surjective with kernel of order `(m'/m)^n`.
    pub fn transition_report(&self) -> Report {
        let mut rep = Report::new("etale_tower");
        for (i, tr) in self.transitions.iter().enumerate() {
            let lo = &self.levels[i];
            let hi = &self.levels[i + 1];
            let img = image_order_mod(tr, lo.level);
            let full = lo.group.order().unwrap_or_else(BigInt::zero);
            rep.check(
                &format!("surjective_{}_{}", hi.level, lo.level),
                img == full,
                format!("image order {img}"),
            );
            let ratio = BigInt::from(hi.level / lo.level);
            let ker = hi.group.order().unwrap_or_else(BigInt::zero) / &img;
            rep.check(
                &format!("kernel_{}_{}", hi.level, lo.level),
                ker == Pow::pow(&ratio, lo.rank as u32),
                format!("kernel order {ker}"),
            );
        }
        rep
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeRhamRealization {
    pub dim: usize,
    pub f0_dim: usize,
    pub lie_dim: usize,
    /// `Lie(A^v)`-type piece from the abelian part.
    pub ext_abelian_dim: usize,
    /// Piece coming from `L`.
    pub ext_lattice_dim: usize,
    /// Comparison `T_Z ⊗ C -> T_dR`, the identity in the Hodge basis.
    pub comparison: CMat,
    pub f0: CMat,
}

pub fn t_de_rham(m: &OneMotive) -> DeRhamRealization {
    let (r, t, g) = m.ranks();
    let h = t_hodge(m);
    let n = m.total_rank();
    DeRhamRealization {
        dim: n,
        f0_dim: h.f0().cols(),
        lie_dim: t + g,
        ext_abelian_dim: g,
        ext_lattice_dim: r,
        comparison: CMat::identity(n),
        f0: h.f0().clone(),
    }
}

/// Checks every realization of `m` at the given finite levels.
pub fn realization_sequences_check(m: &OneMotive, levels: &[u64], cfg: &Config) -> Report {
    let mut rep = Report::new("realizations");
    let (r, t, g) = m.ranks();
    let h = t_hodge(m);
    let type_rep = h.type_report(cfg);
    rep.check("hodge_type", type_rep.passed(), format!("{} sub-checks", type_rep.details.len()));
    rep.check(
        "hodge_weight_ranks",
        h.w2().cols() == t && h.w1().cols() == t + 2 * g && h.rank() == r + t + 2 * g,
        format!("W_-2, W_-1, T_Z ranks {}, {}, {}", h.w2().cols(), h.w1().cols(), h.rank()),
    );
    match h.graded_pieces(cfg) {
        Ok(gr) => {
            let sum = gr.gr0_rank + gr.gr1_f0.cols();
            rep.check("hodge_strict", sum == h.f0().cols(), format!("dim F^0 gr = {sum}, dim F^0 = {}", h.f0().cols()));
        }
        Err(e) => rep.check("hodge_strict", false, format!("{e}")),
    }
    for &l in levels {
        match t_mod_m(m, l) {
            Ok(fl) => {
                let ex = fl.exactness_report();
                rep.check(&format!("finite_exact_{l}"), ex.passed(), format!("{} sub-checks", ex.details.len()));
            }
            Err(e) => rep.check(&format!("finite_exact_{l}"), false, format!("{e}")),
        }
    }
    for (i, &a) in levels.iter().enumerate() {
        for &b in &levels[i + 1..] {
            let (lo, hi) = (a.min(b), a.max(b));
            if lo == hi || hi % lo != 0 {
                continue;
            }
            match etale_tower(m, &[lo, hi]) {
                Ok(tw) => rep.check(&format!("etale_{hi}_{lo}"), tw.transition_report().passed(), "transition map"),
                Err(e) => rep.check(&format!("etale_{hi}_{lo}"), false, format!("{e}")),
            }
        }
    }
    let dr = t_de_rham(m);
    rep.check(
        "de_rham_dims",
        dr.dim == r + t + 2 * g && dr.f0_dim == g + r && dr.lie_dim == t + g && dr.dim == dr.f0_dim + dr.lie_dim,
        format!("dim {}, F^0 {}, Lie {}", dr.dim, dr.f0_dim, dr.lie_dim),
    );
    rep
}

/// The maps induced by a morphism on finite levels: the Hodge map reduced mod `m`.
pub fn finite_level_map(f: &MotiveMorphism, level: u64, cfg: &Config) -> Result<IntMatrix> {
    if level < 2 {
        return Err(Error::Level(level));
    }
    Ok(f.hodge_map(cfg)?.reduce_mod(&BigInt::from(level)))
}
