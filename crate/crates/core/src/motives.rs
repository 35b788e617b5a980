//! 1-motives `[u: L -> G]` given by period data.
//!
//! `G` is an extension of a principally polarized abelian variety
//! `A = C^g / (Z^g + Omega Z^g)` by the torus `G_m^t`. On `Lie G = C^(t+g)`
//! the period lattice is spanned by the columns of
//!
//! ```text
//! P = [ 2 pi i I_t   H         ]
//!     [ 0            I_g  Omega ]
//! ```
//!
//! where `H = eta` is `t x 2g`, and `u` is recorded by a lift `U~` of
//! `u(e_1), ..., u(e_r)` to `Lie G`.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Float;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::numeric::{CMat, RMat, C64, TWO_PI_I};
use crate::report::Report;
use crate::zlinalg::IntMatrix;

fn scale_of(m: &CMat) -> f64 {
    m.max_abs().max(1.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AbelianVariety {
    omega: CMat,
}

impl AbelianVariety {
    /// Requires `omega` symmetric with positive definite imaginary part.
    pub fn new(omega: CMat, cfg: &Config) -> Result<Self> {
        let g = omega.rows();
        if omega.cols() != g {
            return Err(Error::Dimension(format!("period matrix must be square, got {}x{}", g, omega.cols())));
        }
        if !omega.is_finite() {
            return Err(Error::Numerical("period matrix has non-finite entries".into()));
        }
        if omega.dist(&omega.transpose()) > cfg.tol * scale_of(&omega) {
            return Err(Error::NotSymmetric);
        }
        let im = omega.im();
        let sym = im.add(&im.transpose()).scale(0.5);
        if g > 0 && !sym.is_positive_definite() {
            return Err(Error::NotPositive);
        }
        Ok(AbelianVariety { omega })
    }

    pub fn elliptic(tau: C64, cfg: &Config) -> Result<Self> {
        Self::new(CMat::from_vec(1, 1, alloc::vec![tau]), cfg)
    }

    pub fn zero() -> Self {
        AbelianVariety { omega: CMat::zeros(0, 0) }
    }

    pub fn dim(&self) -> usize {
        self.omega.rows()
    }

    pub fn omega(&self) -> &CMat {
        &self.omega
    }

    /// `[I | Omega]`.
    pub fn period_matrix(&self) -> CMat {
        CMat::identity(self.dim()).hstack(&self.omega)
    }

    pub fn product(&self, other: &Self) -> Self {
        AbelianVariety { omega: self.omega.block_diag(&other.omega) }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SemiAbelianVariety {
    t: usize,
    abelian: AbelianVariety,
    eta: CMat,
}

impl SemiAbelianVariety {
    pub fn new(t: usize, abelian: AbelianVariety, eta: CMat) -> Result<Self> {
        let g = abelian.dim();
        if eta.shape() != (t, 2 * g) {
            return Err(Error::Dimension(format!(
                "extension data must be {t}x{}, got {}x{}",
                2 * g,
                eta.rows(),
                eta.cols()
            )));
        }
        if !eta.is_finite() {
            return Err(Error::Numerical("extension data has non-finite entries".into()));
        }
        let s = SemiAbelianVariety { t, abelian, eta };
        if s.period_matrix().realify().rank(1e-12) != t + 2 * g {
            return Err(Error::NotDiscrete);
        }
        Ok(s)
    }

    pub fn torus(t: usize) -> Self {
        SemiAbelianVariety { t, abelian: AbelianVariety::zero(), eta: CMat::zeros(t, 0) }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn g(&self) -> usize {
        self.abelian.dim()
    }

    pub fn abelian(&self) -> &AbelianVariety {
        &self.abelian
    }

    pub fn eta(&self) -> &CMat {
        &self.eta
    }

    pub fn lie_dim(&self) -> usize {
        self.t + self.g()
    }

    pub fn lattice_rank(&self) -> usize {
        self.t + 2 * self.g()
    }

    /// Periods as columns, `(t+g) x (t+2g)`.
    pub fn period_matrix(&self) -> CMat {
        let (t, g) = (self.t, self.g());
        let mut p = CMat::zeros(t + g, t + 2 * g);
        for i in 0..t {
            p[(i, i)] = TWO_PI_I;
        }
        p.set_block(0, t, &self.eta);
        p.set_block(t, t, &self.abelian.period_matrix());
        p
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OneMotive {
    r: usize,
    g: SemiAbelianVariety,
    u_lift: CMat,
}

impl OneMotive {
    pub fn new(r: usize, g: SemiAbelianVariety, u_lift: CMat) -> Result<Self> {
        if u_lift.shape() != (g.lie_dim(), r) {
            return Err(Error::Dimension(format!(
                "u lift must be {}x{r}, got {}x{}",
                g.lie_dim(),
                u_lift.rows(),
                u_lift.cols()
            )));
        }
        if !u_lift.is_finite() {
            return Err(Error::Numerical("u lift has non-finite entries".into()));
        }
        Ok(OneMotive { r, g, u_lift })
    }

    /// Builds a motive from raw period data.
    pub fn from_data(r: usize, t: usize, omega: CMat, eta: CMat, u_lift: CMat, cfg: &Config) -> Result<Self> {
        let a = AbelianVariety::new(omega, cfg)?;
        OneMotive::new(r, SemiAbelianVariety::new(t, a, eta)?, u_lift)
    }

    /// `[Z -> G_m]` with `1 -> q`, lifted by the principal logarithm.
    pub fn kummer(q: C64) -> Result<Self> {
        if q.norm() == 0.0 || !q.norm().is_finite() {
            return Err(Error::Numerical("Kummer parameter must be a nonzero finite number".into()));
        }
        OneMotive::new(1, SemiAbelianVariety::torus(1), CMat::from_vec(1, 1, alloc::vec![q.ln()]))
    }

    /// `[0 -> E_tau]`.
    pub fn elliptic(tau: C64, cfg: &Config) -> Result<Self> {
        let a = AbelianVariety::elliptic(tau, cfg)?;
        OneMotive::new(0, SemiAbelianVariety::new(0, a, CMat::zeros(0, 2))?, CMat::zeros(1, 0))
    }

    /// `[Z^r -> 0]`.
    pub fn from_lattice(r: usize) -> Self {
        OneMotive { r, g: SemiAbelianVariety::torus(0), u_lift: CMat::zeros(0, r) }
    }

    /// `[0 -> G_m^t]`.
    pub fn from_torus(t: usize) -> Self {
        OneMotive { r: 0, g: SemiAbelianVariety::torus(t), u_lift: CMat::zeros(t, 0) }
    }

    /// `[0 -> A]`.
    pub fn from_abelian(a: AbelianVariety) -> Self {
        let g = a.dim();
        OneMotive { r: 0, g: SemiAbelianVariety { t: 0, abelian: a, eta: CMat::zeros(0, 2 * g) }, u_lift: CMat::zeros(g, 0) }
    }

    /// `[0 -> G]`.
    pub fn from_semiabelian(g: SemiAbelianVariety) -> Self {
        let d = g.lie_dim();
        OneMotive { r: 0, g, u_lift: CMat::zeros(d, 0) }
    }

    /// The weight piece `W_i(M)`: `M` for `i >= 0`, `[0 -> G]`, `[0 -> T]`, then `0`.
    pub fn weight_sub(&self, i: i64) -> OneMotive {
        match i {
            i if i >= 0 => self.clone(),
            -1 => OneMotive::from_semiabelian(self.g.clone()),
            -2 => OneMotive::from_torus(self.t()),
            _ => OneMotive::from_torus(0),
        }
    }

    /// `0 -> [0 -> G] -> M -> L[1] -> 0`.
    pub fn canonical_sequence(&self) -> (MotiveMorphism, MotiveMorphism) {
        let incl = MotiveMorphism::inclusion(&self.weight_sub(-1), self);
        let (r, d, k) = (self.r, self.g.lie_dim(), self.g.lattice_rank());
        let proj = MotiveMorphism {
            source: self.clone(),
            target: OneMotive::from_lattice(r),
            f: IntMatrix::identity(r),
            phi: CMat::zeros(0, d),
            lambda: IntMatrix::zeros(0, k),
        };
        (incl, proj)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn t(&self) -> usize {
        self.g.t
    }

    pub fn g(&self) -> usize {
        self.g.g()
    }

    /// `(r, t, g)`.
    pub fn ranks(&self) -> (usize, usize, usize) {
        (self.r, self.t(), self.g())
    }

    pub fn semiabelian(&self) -> &SemiAbelianVariety {
        &self.g
    }

    pub fn abelian(&self) -> &AbelianVariety {
        &self.g.abelian
    }

    pub fn omega(&self) -> &CMat {
        &self.g.abelian.omega
    }

    pub fn eta(&self) -> &CMat {
        &self.g.eta
    }

    pub fn u_lift(&self) -> &CMat {
        &self.u_lift
    }

    /// Rank of the Hodge lattice, `r + t + 2g`.
    pub fn total_rank(&self) -> usize {
        self.r + self.g.lattice_rank()
    }

    pub fn period_matrix(&self) -> CMat {
        self.g.period_matrix()
    }

    /// `[P | U~]`, the map `T_Z -> Lie G` whose kernel spans `F^0`.
    pub fn hodge_matrix(&self) -> CMat {
        self.period_matrix().hstack(&self.u_lift)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let (t1, g1) = (self.t(), self.g());
        let (t2, g2) = (other.t(), other.g());
        let a = self.abelian().product(other.abelian());
        let mut eta = CMat::zeros(t1 + t2, 2 * (g1 + g2));
        eta.set_block(0, 0, &self.eta().block(0, 0, t1, g1));
        eta.set_block(0, g1 + g2, &self.eta().block(0, g1, t1, g1));
        eta.set_block(t1, g1, &other.eta().block(0, 0, t2, g2));
        eta.set_block(t1, g1 + g2 + g1, &other.eta().block(0, g2, t2, g2));
        let mut u = CMat::zeros(t1 + t2 + g1 + g2, self.r + other.r);
        u.set_block(0, 0, &self.u_lift.block(0, 0, t1, self.r));
        u.set_block(t1, self.r, &other.u_lift.block(0, 0, t2, other.r));
        u.set_block(t1 + t2, 0, &self.u_lift.block(t1, 0, g1, self.r));
        u.set_block(t1 + t2 + g1, self.r, &other.u_lift.block(t2, 0, g2, other.r));
        OneMotive::new(self.r + other.r, SemiAbelianVariety::new(t1 + t2, a, eta)?, u)
    }

    /// The same motive with `u` lifted differently: `U~ + P k` for an integer `k`.
    pub fn shift_lift(&self, k: &IntMatrix) -> Result<Self> {
        let p = self.period_matrix();
        if k.shape() != (p.cols(), self.r) {
            return Err(Error::Dimension("lift shift has the wrong shape".into()));
        }
        OneMotive::new(self.r, self.g.clone(), self.u_lift.add(&p.mul(&CMat::from_int(k))))
    }

    /// Extension class of the `j`-th torus character, as a point of the dual abelian variety.
    pub fn ext_class(&self, j: usize) -> ExtClassPoint {
        let g = self.g();
        let h = self.eta().block(j, 0, 1, 2 * g);
        let mu = h.block(0, 0, 1, g);
        let la = h.block(0, g, 1, g);
        ExtClassPoint { omega: self.omega().clone(), value: la.sub(&mu.mul(self.omega())).row(0) }
    }
}

/// Point `nu = h_lambda - h_mu Omega` of `C^g / 2 pi i (Z^g + Omega Z^g)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtClassPoint {
    pub omega: CMat,
    pub value: Vec<C64>,
}

impl ExtClassPoint {
    /// Integer `(a, b)` with `value = 2 pi i (a + b Omega)` up to `tol`, if any.
    pub fn lattice_coordinates(&self, tol: f64) -> Option<(Vec<i64>, Vec<i64>)> {
        let g = self.value.len();
        let basis = CMat::identity(g).hstack(&self.omega).scale(TWO_PI_I);
        let rhs = CMat::column(&self.value);
        let x = basis.realify().lstsq(&rhs.realify())?;
        let z: Vec<i64> = x.entries().iter().map(|&v| Float::round(v) as i64).collect();
        let back = basis.mul(&CMat::from_real(&RMat::column(&z.iter().map(|&v| v as f64).collect::<Vec<_>>())));
        if back.dist(&rhs) <= tol * scale_of(&basis).max(scale_of(&rhs)) {
            Some((z[..g].to_vec(), z[g..].to_vec()))
        } else {
            None
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.omega.shape() != other.omega.shape() || self.omega.dist(&other.omega) > tol * scale_of(&self.omega) {
            return false;
        }
        let diff = ExtClassPoint {
            omega: self.omega.clone(),
            value: self.value.iter().zip(&other.value).map(|(a, b)| a - b).collect(),
        };
        diff.lattice_coordinates(tol).is_some()
    }
}

/// A morphism given by its integer data `f: L -> L'`, `lambda` on the
/// lattices of `G`, and its complex-linear map `phi` on Lie algebras.
#[derive(Clone, Debug, PartialEq)]
pub struct MotiveMorphism {
    pub source: OneMotive,
    pub target: OneMotive,
    pub f: IntMatrix,
    pub phi: CMat,
    pub lambda: IntMatrix,
}

impl MotiveMorphism {
    pub fn new(source: OneMotive, target: OneMotive, f: IntMatrix, phi: CMat, lambda: IntMatrix) -> Result<Self> {
        let m = MotiveMorphism { source, target, f, phi, lambda };
        m.check_shapes()?;
        Ok(m)
    }

    pub fn identity(m: &OneMotive) -> Self {
        MotiveMorphism {
            source: m.clone(),
            target: m.clone(),
            f: IntMatrix::identity(m.r()),
            phi: CMat::identity(m.semiabelian().lie_dim()),
            lambda: IntMatrix::identity(m.semiabelian().lattice_rank()),
        }
    }

    /// Inclusion of `W_i(M)` into `M`, as returned by `weight_sub`.
    pub fn inclusion(sub: &OneMotive, m: &OneMotive) -> Self {
        let (t, g) = (m.t(), m.g());
        let (st, sg) = (sub.t(), sub.g());
        let mut phi = CMat::zeros(t + g, st + sg);
        let mut lambda = IntMatrix::zeros(t + 2 * g, st + 2 * sg);
        for i in 0..st {
            phi[(i, i)] = C64::new(1.0, 0.0);
            lambda[(i, i)] = num_traits::One::one();
        }
        for i in 0..sg {
            phi[(t + i, st + i)] = C64::new(1.0, 0.0);
            lambda[(t + i, st + i)] = num_traits::One::one();
            lambda[(t + g + i, st + sg + i)] = num_traits::One::one();
        }
        let f = if sub.r() == m.r() { IntMatrix::identity(m.r()) } else { IntMatrix::zeros(m.r(), sub.r()) };
        MotiveMorphism { source: sub.clone(), target: m.clone(), f, phi, lambda }
    }

    /// Multiplication by an integer on a motive.
    pub fn multiplication(m: &OneMotive, k: i64) -> Self {
        let kb = num_bigint::BigInt::from(k);
        let id = Self::identity(m);
        MotiveMorphism {
            f: id.f.scale(&kb),
            phi: id.phi.scale(C64::new(k as f64, 0.0)),
            lambda: id.lambda.scale(&kb),
            ..id
        }
    }

    fn check_shapes(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.f.shape() != (t.r(), s.r())
            || self.phi.shape() != (t.semiabelian().lie_dim(), s.semiabelian().lie_dim())
            || self.lambda.shape() != (t.semiabelian().lattice_rank(), s.semiabelian().lattice_rank())
        {
            return Err(Error::Dimension("morphism data does not match source and target".into()));
        }
        Ok(())
    }

    /// Integer `X` with `P' X = phi U~ - U~' f` up to tolerance.
    fn lattice_lift_with_residual(&self) -> Option<(IntMatrix, f64, f64)> {
        let pt = self.target.period_matrix();
        let d = self.phi.mul(self.source.u_lift()).sub(&self.target.u_lift().mul(&CMat::from_int(&self.f)));
        let r = self.source.r();
        if r == 0 {
            return Some((IntMatrix::zeros(pt.cols(), 0), 0.0, 1.0));
        }
        let scale = scale_of(&d).max(scale_of(&pt));
        if pt.cols() == 0 {
            return Some((IntMatrix::zeros(0, r), d.max_abs(), scale));
        }
        let x = pt.realify().lstsq(&d.realify())?;
        let z = x.round_to_int();
        let zi = IntMatrix::from_i64(pt.cols(), r, &z);
        let res = pt.mul(&CMat::from_int(&zi)).dist(&d);
        Some((zi, res, scale))
    }

    /// One finding per condition: shapes, `phi P = P' lambda`, and `phi U~ = U~' f` modulo periods.
    pub fn verify(&self, cfg: &Config) -> Report {
        let mut rep = Report::new("morphism");
        if let Err(e) = self.check_shapes() {
            rep.check("shapes", false, format!("{e}"));
            return rep;
        }
        let p = self.source.period_matrix();
        let pt = self.target.period_matrix();
        let lhs = self.phi.mul(&p);
        let rhs = pt.mul(&CMat::from_int(&self.lambda));
        let scale = scale_of(&lhs).max(scale_of(&rhs));
        let d = lhs.dist(&rhs);
        rep.check("periods", d <= cfg.tol * scale, format!("|phi P - P' lambda| = {d:.3e}"));
        let st = self.source.t();
        let tt = self.target.t();
        let weights_ok = (0..self.lambda.rows())
            .filter(|&i| i >= tt)
            .all(|i| (0..st).all(|j| num_traits::Zero::is_zero(&self.lambda[(i, j)])));
        rep.check("weights", weights_ok, "lambda must map the torus lattice into the torus lattice");
        match self.lattice_lift_with_residual() {
            Some((_, res, sc)) => rep.check(
                "u_compatible",
                res <= cfg.tol * sc,
                format!("distance of phi U~ - U~' f to the period lattice = {res:.3e}"),
            ),
            None => rep.check("u_compatible", false, "least-squares solve failed"),
        }
        rep
    }

    pub fn is_valid(&self, cfg: &Config) -> bool {
        self.verify(cfg).passed()
    }

    /// The integer lift `X` of `phi U~ - U~' f` to the period lattice.
    pub fn lattice_lift(&self, cfg: &Config) -> Result<IntMatrix> {
        let (x, res, sc) = self
            .lattice_lift_with_residual()
            .ok_or_else(|| Error::Morphism("least-squares solve failed".into()))?;
        if res > cfg.tol * sc {
            return Err(Error::Morphism(format!("u is not compatible with the morphism (residual {res:.3e})")));
        }
        Ok(x)
    }

    /// Matrix of the induced map on Hodge lattices, `[[lambda, X], [0, f]]`.
    pub fn hodge_map(&self, cfg: &Config) -> Result<IntMatrix> {
        let x = self.lattice_lift(cfg)?;
        let top = self.lambda.hstack(&x);
        let bottom = IntMatrix::zeros(self.f.rows(), self.lambda.cols()).hstack(&self.f);
        Ok(top.vstack(&bottom))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MotiveMorphism) -> Result<MotiveMorphism> {
        if self.target.ranks() != other.source.ranks() {
            return Err(Error::Dimension("morphisms are not composable".into()));
        }
        MotiveMorphism::new(
            self.source.clone(),
            other.target.clone(),
            &other.f * &self.f,
            other.phi.mul(&self.phi),
            &other.lambda * &self.lambda,
        )
    }

    /// Rebuilds a morphism from the matrix of a map of Hodge lattices.
    pub fn from_hodge_map(source: &OneMotive, target: &OneMotive, full: &IntMatrix, cfg: &Config) -> Result<Self> {
        let (n, nt) = (source.total_rank(), target.total_rank());
        if full.shape() != (nt, n) {
            return Err(Error::Dimension(format!("Hodge map must be {nt}x{n}")));
        }
        let (t, g) = (source.t(), source.g());
        let ls = source.semiabelian().lattice_rank();
        let lt = target.semiabelian().lattice_rank();
        if !full.block(lt, 0, target.r(), ls).is_zero() {
            return Err(Error::Morphism("map does not preserve W_-1".into()));
        }
        if !full.block(target.t(), 0, lt - target.t(), t).is_zero() {
            return Err(Error::Morphism("map does not preserve W_-2".into()));
        }
        let lambda = full.block(0, 0, lt, ls);
        let f = full.block(lt, ls, target.r(), source.r());
        let cols: Vec<usize> = (0..t + g).collect();
        let pb = source.period_matrix().select_cols(&cols);
        let image = target.period_matrix().mul(&CMat::from_int(&lambda)).select_cols(&cols);
        let phi = match pb.transpose().solve(&image.transpose()) {
            Some(x) => x.transpose(),
            None => return Err(Error::Numerical("period basis is singular".into())),
        };
        let m = MotiveMorphism::new(source.clone(), target.clone(), f, phi, lambda)?;
        let rep = m.verify(cfg);
        if !rep.passed() {
            let bad: Vec<_> = rep.details.iter().filter(|d| d.status != crate::report::Status::Pass).collect();
            return Err(Error::Morphism(format!("{}: {}", bad[0].name, bad[0].message)));
        }
        if m.lattice_lift(cfg)? != full.block(0, ls, lt, source.r()) {
            return Err(Error::Morphism("lattice part of the map disagrees with u".into()));
        }
        Ok(m)
    }
}
