//! Search for isomorphisms between 1-motives given by period data.
//!
//! A morphism `M -> M'` is block triangular on Hodge lattices. The search
//! solves for the abelian block first, then the columns over `L`, then the
//! rows over the torus, each as an integer-relation problem. Any candidate
//! is verified exactly before it is returned.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Float, One, Signed};
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

use crate::config::Config;
use crate::motives::{MotiveMorphism, OneMotive};
use crate::numeric::{CMat, RMat, C64, TWO_PI_I};
use crate::realizations::t_mod_m;
use crate::relations::integer_solutions;
use crate::zlinalg::{det, solve_integral, IntMatrix};

const MAX_ABELIAN_CANDIDATES: usize = 48;
const UNIT_BUDGET: usize = 3000;

#[derive(Clone, Debug)]
pub enum IsoOutcome {
    VerifiedIso(MotiveMorphism),
    VerifiedDistinct(String),
    Unknown(String),
}

impl IsoOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            IsoOutcome::VerifiedIso(_) => "verified_iso",
            IsoOutcome::VerifiedDistinct(_) => "verified_distinct",
            IsoOutcome::Unknown(_) => "unknown",
        }
    }

    pub fn is_iso(&self) -> bool {
        matches!(self, IsoOutcome::VerifiedIso(_))
    }
}

/// Real form `(A, b)` of an affine map `z -> eval(z)`, so `eval(z) = 0` iff `A z = b`.
fn linearize(n: usize, eval: impl Fn(&[f64]) -> Vec<C64>) -> (RMat, Vec<f64>) {
    let zero = vec![0.0; n];
    let r0 = eval(&zero);
    let m = r0.len();
    let mut a = RMat::zeros(2 * m, n);
    for j in 0..n {
        let mut e = zero.clone();
        e[j] = 1.0;
        let rj = eval(&e);
        for i in 0..m {
            let d = rj[i] - r0[i];
            a[(i, j)] = d.re;
            a[(m + i, j)] = d.im;
        }
    }
    let mut b = vec![0.0; 2 * m];
    for i in 0..m {
        b[i] = -r0[i].re;
        b[m + i] = -r0[i].im;
    }
    (a, b)
}

fn to_cmat(rows: usize, cols: usize, z: &[f64]) -> CMat {
    CMat::from_vec(rows, cols, z.iter().map(|&x| C64::new(x, 0.0)).collect())
}

fn int_mat(rows: usize, cols: usize, z: &[i64]) -> IntMatrix {
    IntMatrix::from_i64(rows, cols, z)
}

fn is_unit(rows: usize, z: &[i64]) -> bool {
    rows == 0 || det(&int_mat(rows, rows, z)).abs().is_one()
}

/// Affine family `base + sum c_i dirs_i` of integer vectors.
struct Family {
    base: Vec<i64>,
    dirs: Vec<Vec<i64>>,
}

impl Family {
    fn point(&self, c: &[i64]) -> Vec<i64> {
        let mut z = self.base.clone();
        for (ci, d) in c.iter().zip(&self.dirs) {
            if *ci != 0 {
                for (x, y) in z.iter_mut().zip(d) {
                    *x += ci * y;
                }
            }
        }
        z
    }

    /// Coefficients making the coordinates `idx` equal `target`, when integrally possible.
    fn hit(&self, idx: &[usize], target: &[i64]) -> Option<Vec<i64>> {
        let s = self.dirs.len();
        let mut a = IntMatrix::zeros(idx.len(), s);
        let mut rhs = Vec::with_capacity(idx.len());
        for (row, &i) in idx.iter().enumerate() {
            for (j, d) in self.dirs.iter().enumerate() {
                a[(row, j)] = BigInt::from(d[i]);
            }
            rhs.push(BigInt::from(target[row] - self.base[i]));
        }
        let sol = solve_integral(&a, &rhs)?;
        let c: Option<Vec<i64>> = sol.particular.iter().map(num_traits::ToPrimitive::to_i64).collect();
        c.map(|c| self.point(&c))
    }

    /// Enumerates candidate points: preferred ones, small boxes, then random draws.
    fn candidates(&self, preferred: Vec<Vec<i64>>, budget: usize, seed: u64) -> Vec<Vec<i64>> {
        let s = self.dirs.len();
        let mut out = preferred;
        out.push(self.base.clone());
        if s == 0 {
            return out;
        }
        for i in 0..s {
            for sign in [1, -1] {
                let mut c = vec![0; s];
                c[i] = sign;
                out.push(self.point(&c));
            }
        }
        let boxes: [(i64, usize); 2] = [(1, 3), (2, 5)];
        for (radius, width) in boxes {
            if (width as f64).powi(s as i32) <= budget as f64 {
                let total = width.pow(s as u32);
                for code in 0..total {
                    let mut c = Vec::with_capacity(s);
                    let mut k = code;
                    for _ in 0..s {
                        c.push((k % width) as i64 - radius);
                        k /= width;
                    }
                    out.push(self.point(&c));
                }
            }
        }
        let mut rng = SmallRng::seed_from_u64(seed);
        while out.len() < budget {
            let c: Vec<i64> = (0..s).map(|_| rng.gen_range(-2..=2)).collect();
            out.push(self.point(&c));
        }
        out
    }
}

struct Blocks<'a> {
    a: &'a OneMotive,
    b: &'a OneMotive,
    r: usize,
    t: usize,
    g: usize,
}

/// Pieces of one torus row of a morphism.
#[derive(Clone)]
struct TorusRow {
    l: Vec<i64>,
    a: Vec<i64>,
}

impl<'a> Blocks<'a> {
    fn abelian_residual(&self, lam: &CMat) -> CMat {
        let g = self.g;
        let pl = self.b.abelian().period_matrix().mul(lam);
        pl.block(0, g, g, g).sub(&pl.block(0, 0, g, g).mul(self.a.omega()))
    }

    /// Lattice of `lambda_AA` with `phi Pi = Pi' lambda_AA`.
    fn abelian_homs(&self, cfg: &Config) -> Vec<Vec<i64>> {
        let g2 = 2 * self.g;
        let (a, _) = linearize(g2 * g2, |z| self.abelian_residual(&to_cmat(g2, g2, z)).entries().to_vec());
        integer_solutions(&a, None, cfg).kernel
    }

    fn phi_aa(&self, lam_aa: &IntMatrix) -> CMat {
        let g = self.g;
        self.b.abelian().period_matrix().mul(&CMat::from_int(lam_aa)).block(0, 0, g, g)
    }

    fn u_t(m: &OneMotive) -> CMat {
        m.u_lift().block(0, 0, m.t(), m.r())
    }

    fn u_a(m: &OneMotive) -> CMat {
        m.u_lift().block(m.t(), 0, m.g(), m.r())
    }

    /// Columns over `L`: `Pi' x + U'_A y = phi_AA U_A e_k`.
    fn lattice_columns(&self, lam_aa: &IntMatrix, cfg: &Config) -> Option<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
        let (g, r) = (self.g, self.r);
        let pi_t = self.b.abelian().period_matrix();
        let ua_t = Self::u_a(self.b);
        let target = self.phi_aa(lam_aa).mul(&Self::u_a(self.a));
        let n = 2 * g + r;
        let mut parts = Vec::with_capacity(r);
        let mut kernel = None;
        for k in 0..r {
            let col = target.col(k);
            let (a, rhs) = linearize(n, |z| {
                let x: Vec<C64> = z[..2 * g].iter().map(|&v| C64::new(v, 0.0)).collect();
                let y: Vec<C64> = z[2 * g..].iter().map(|&v| C64::new(v, 0.0)).collect();
                let lhs = pi_t.mul_vec(&x);
                let ly = ua_t.mul_vec(&y);
                (0..g).map(|i| lhs[i] + ly[i] - col[i]).collect()
            });
            let sol = integer_solutions(&a, Some(&rhs), cfg);
            parts.push(sol.particular?);
            kernel.get_or_insert(sol.kernel);
        }
        Some((parts, kernel.unwrap_or_default()))
    }

    /// Residual of torus row `j` as an affine function of `(l, a, b)`, with the
    /// lattice data `lam_al`, `f` given as real matrices.
    fn torus_row_residual(&self, j: usize, lam_aa: &CMat, lam_al: &CMat, f: &CMat, z: &[f64]) -> Vec<C64> {
        let (r, t, g) = (self.r, self.t, self.g);
        let h = self.a.eta();
        let hp = self.b.eta();
        let omega = self.a.omega();
        let ua = Self::u_a(self.a);
        let ut = Self::u_t(self.a);
        let l = to_cmat(1, t, &z[..t]);
        let av = to_cmat(1, 2 * g, &z[t..t + 2 * g]);
        let bv = to_cmat(1, r, &z[t + 2 * g..]);
        let hj = hp.block(j, 0, 1, 2 * g).mul(lam_aa);
        let (hj_mu, hj_la) = (hj.block(0, 0, 1, g), hj.block(0, g, 1, g));
        let (h_mu, h_la) = (h.block(0, 0, t, g), h.block(0, g, t, g));
        let (a_mu, a_la) = (av.block(0, 0, 1, g), av.block(0, g, 1, g));
        let nu = h_la.sub(&h_mu.mul(omega));
        let r1 = l
            .mul(&nu)
            .add(&a_mu.mul(omega).sub(&a_la).scale(TWO_PI_I))
            .sub(&hj_la.sub(&hj_mu.mul(omega)));
        let upt = Self::u_t(self.b).block(j, 0, 1, r);
        let rhs2 = hp.block(j, 0, 1, 2 * g).mul(lam_al).add(&upt.mul(f)).sub(&hj_mu.mul(&ua));
        let r2 = l
            .mul(&ut.sub(&h_mu.mul(&ua)))
            .add(&a_mu.mul(&ua).sub(&bv).scale(TWO_PI_I))
            .sub(&rhs2);
        let mut out = r1.entries().to_vec();
        out.extend_from_slice(r2.entries());
        out
    }

    fn assemble(
        &self,
        lam_aa: &IntMatrix,
        f: &IntMatrix,
        rows: &[TorusRow],
        cfg: &Config,
    ) -> Option<MotiveMorphism> {
        let (t, g) = (self.t, self.g);
        let mut lambda = IntMatrix::zeros(t + 2 * g, t + 2 * g);
        let mut phi = CMat::zeros(t + g, t + g);
        let phi_aa = self.phi_aa(lam_aa);
        lambda.set_block(t, t, lam_aa);
        phi.set_block(t, t, &phi_aa);
        let h = self.a.eta();
        let hp = self.b.eta();
        let lam_aa_c = CMat::from_int(lam_aa);
        for (j, row) in rows.iter().enumerate() {
            for (k, &v) in row.l.iter().enumerate() {
                lambda[(j, k)] = BigInt::from(v);
                phi[(j, k)] = C64::new(v as f64, 0.0);
            }
            for (k, &v) in row.a.iter().enumerate() {
                lambda[(j, t + k)] = BigInt::from(v);
            }
            let a_mu = to_cmat(1, g, &row.a[..g].iter().map(|&v| v as f64).collect::<Vec<_>>());
            let l = to_cmat(1, t, &row.l.iter().map(|&v| v as f64).collect::<Vec<_>>());
            let hj_mu = hp.block(j, 0, 1, 2 * g).mul(&lam_aa_c).block(0, 0, 1, g);
            let psi = a_mu.scale(TWO_PI_I).add(&hj_mu).sub(&l.mul(&h.block(0, 0, t, g)));
            phi.set_block(j, t, &psi);
        }
        let m = MotiveMorphism::new(self.a.clone(), self.b.clone(), f.clone(), phi, lambda).ok()?;
        m.verify(cfg).passed().then_some(m)
    }
}

fn ivec_to_f(v: &[i64]) -> Vec<f64> {
    v.iter().map(|&x| x as f64).collect()
}

/// Matrix whose column `k` is `cols[k]`.
fn columns_to_int(rows: usize, cols: &[Vec<i64>]) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows, cols.len());
    for (k, c) in cols.iter().enumerate() {
        for (i, &v) in c.iter().enumerate() {
            m[(i, k)] = BigInt::from(v);
        }
    }
    m
}

fn identity_attempt(a: &OneMotive, b: &OneMotive, cfg: &Config) -> Option<MotiveMorphism> {
    let n = a.total_rank();
    MotiveMorphism::from_hodge_map(a, b, &IntMatrix::identity(n), cfg).ok().or_else(|| {
        let k = a.semiabelian().lattice_rank();
        let lam = IntMatrix::identity(k);
        let cols: Vec<usize> = (0..a.t() + a.g()).collect();
        let pb = a.period_matrix().select_cols(&cols);
        let image = b.period_matrix().mul(&CMat::from_int(&lam)).select_cols(&cols);
        let phi = pb.transpose().solve(&image.transpose())?.transpose();
        let m = MotiveMorphism::new(a.clone(), b.clone(), IntMatrix::identity(a.r()), phi, lam).ok()?;
        m.verify(cfg).passed().then_some(m)
    })
}

/// Staged isomorphism search. Distinctness is only claimed when an exact
/// invariant differs or the relevant homomorphism lattice admits no unit.
pub fn iso_test(a: &OneMotive, b: &OneMotive, cfg: &Config) -> IsoOutcome {
    if a.ranks() != b.ranks() {
        return IsoOutcome::VerifiedDistinct(format!("ranks (r, t, g) differ: {:?} vs {:?}", a.ranks(), b.ranks()));
    }
    for m in 2..=5u64 {
        let (x, y) = (t_mod_m(a, m), t_mod_m(b, m));
        if let (Ok(x), Ok(y)) = (x, y) {
            if x.group != y.group {
                return IsoOutcome::VerifiedDistinct(format!("finite level {m} groups differ"));
            }
        }
    }
    if let Some(m) = identity_attempt(a, b, cfg) {
        return IsoOutcome::VerifiedIso(m);
    }
    let (r, t, g) = a.ranks();
    let blocks = Blocks { a, b, r, t, g };
    let abelian: Vec<IntMatrix> = if g == 0 {
        vec![IntMatrix::zeros(0, 0)]
    } else {
        let homs = blocks.abelian_homs(cfg);
        if homs.is_empty() {
            return IsoOutcome::VerifiedDistinct("abelian parts admit no nonzero homomorphism".into());
        }
        let fam = Family { base: vec![0; 4 * g * g], dirs: homs };
        let ident: Vec<i64> = (0..4 * g * g).map(|k| i64::from(k / (2 * g) == k % (2 * g))).collect();
        let idx: Vec<usize> = (0..4 * g * g).collect();
        let preferred: Vec<Vec<i64>> = fam.hit(&idx, &ident).into_iter().collect();
        let mut seen = Vec::new();
        for z in fam.candidates(preferred, UNIT_BUDGET, 17) {
            if is_unit(2 * g, &z) && !seen.contains(&z) {
                seen.push(z);
                if seen.len() >= MAX_ABELIAN_CANDIDATES {
                    break;
                }
            }
        }
        if seen.is_empty() {
            return IsoOutcome::Unknown("no unit found among abelian homomorphisms".into());
        }
        seen.into_iter().map(|z| int_mat(2 * g, 2 * g, &z)).collect()
    };
    let mut last = String::from("no candidate survived");
    let mut distinct_evidence = g == 0;
    for lam_aa in &abelian {
        match search_with_abelian(&blocks, lam_aa, cfg) {
            Ok(m) => return IsoOutcome::VerifiedIso(m),
            Err(Failure::Exhausted(msg)) => last = msg,
            Err(Failure::Inconclusive(msg)) => {
                distinct_evidence = false;
                last = msg;
            }
        }
    }
    if distinct_evidence {
        IsoOutcome::VerifiedDistinct(last)
    } else {
        IsoOutcome::Unknown(last)
    }
}

enum Failure {
    /// The homomorphism lattice was fully described and contains no unit.
    Exhausted(String),
    Inconclusive(String),
}

fn search_with_abelian(bl: &Blocks<'_>, lam_aa: &IntMatrix, cfg: &Config) -> Result<MotiveMorphism, Failure> {
    let (r, g) = (bl.r, bl.g);
    let (parts, kb) = if r == 0 {
        (Vec::new(), Vec::new())
    } else if g == 0 {
        (vec![vec![0; r]; r], (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect())
    } else {
        bl.lattice_columns(lam_aa, cfg)
            .ok_or_else(|| Failure::Inconclusive("columns over L have no integral solution".into()))?
    };
    let lam_aa_c = CMat::from_int(lam_aa);
    if kb.is_empty() {
        let lam_al = columns_to_int(2 * g, &parts.iter().map(|p| p[..2 * g].to_vec()).collect::<Vec<_>>());
        let f = columns_to_int(r, &parts.iter().map(|p| p[2 * g..].to_vec()).collect::<Vec<_>>());
        if !is_unit(r, &f.to_i64().unwrap_or_default()) {
            return Err(Failure::Inconclusive("forced map on L is not invertible".into()));
        }
        let rows = torus_rows(bl, &lam_aa_c, &CMat::from_int(&lam_al), &CMat::from_int(&f), cfg)?;
        return bl
            .assemble(lam_aa, &f, &rows, cfg)
            .ok_or_else(|| Failure::Inconclusive("assembled morphism failed verification".into()));
    }
    joint_search(bl, lam_aa, &parts, &kb, cfg)
}

/// Decoupled torus rows: each row solves its own relation problem.
fn torus_rows(bl: &Blocks<'_>, lam_aa: &CMat, lam_al: &CMat, f: &CMat, cfg: &Config) -> Result<Vec<TorusRow>, Failure> {
    let (r, t, g) = (bl.r, bl.t, bl.g);
    if t == 0 {
        return Ok(Vec::new());
    }
    let n = t + 2 * g + r;
    let mut bases = Vec::with_capacity(t);
    let mut kernel = Vec::new();
    for j in 0..t {
        let (a, rhs) = linearize(n, |z| bl.torus_row_residual(j, lam_aa, lam_al, f, z));
        let sol = integer_solutions(&a, Some(&rhs), cfg);
        let p = sol
            .particular
            .ok_or_else(|| Failure::Inconclusive(format!("torus row {j} has no integral solution")))?;
        bases.push(p);
        if j == 0 {
            kernel = sol.kernel;
        }
    }
    let mut base = Vec::with_capacity(t * n);
    for p in &bases {
        base.extend_from_slice(p);
    }
    let mut dirs = Vec::new();
    for j in 0..t {
        for k in &kernel {
            let mut d = vec![0; t * n];
            d[j * n..(j + 1) * n].copy_from_slice(k);
            dirs.push(d);
        }
    }
    let fam = Family { base, dirs };
    let lt_idx: Vec<usize> = (0..t).flat_map(|j| (0..t).map(move |k| j * n + k)).collect();
    let ident: Vec<i64> = (0..t * t).map(|k| i64::from(k / t == k % t)).collect();
    let preferred: Vec<Vec<i64>> = fam.hit(&lt_idx, &ident).into_iter().collect();
    let exhaustive = fam.dirs.is_empty();
    for z in fam.candidates(preferred, UNIT_BUDGET, 29) {
        let lt: Vec<i64> = lt_idx.iter().map(|&i| z[i]).collect();
        if is_unit(t, &lt) {
            return Ok((0..t)
                .map(|j| {
                    let row = &z[j * n..(j + 1) * n];
                    TorusRow { l: row[..t].to_vec(), a: row[t..t + 2 * g].to_vec() }
                })
                .collect());
        }
    }
    let msg = String::from("no invertible torus block found");
    if exhaustive {
        Err(Failure::Exhausted(msg))
    } else {
        Err(Failure::Inconclusive(msg))
    }
}

/// Torus rows and the free part of the columns over `L`, solved together.
fn joint_search(
    bl: &Blocks<'_>,
    lam_aa: &IntMatrix,
    parts: &[Vec<i64>],
    kb: &[Vec<i64>],
    cfg: &Config,
) -> Result<MotiveMorphism, Failure> {
    let (r, t, g) = (bl.r, bl.t, bl.g);
    let s = kb.len();
    let nc = r * s;
    let nrow = t + 2 * g + r;
    let n = nc + t * nrow;
    let lam_aa_c = CMat::from_int(lam_aa);
    let lattice_data = |c: &[f64]| -> (CMat, CMat) {
        let mut lam_al = CMat::zeros(2 * g, r);
        let mut f = CMat::zeros(r, r);
        for k in 0..r {
            let mut col = ivec_to_f(&parts[k]);
            for (i, kv) in kb.iter().enumerate() {
                let ci = c[k * s + i];
                if ci != 0.0 {
                    for (x, &y) in col.iter_mut().zip(kv) {
                        *x += ci * y as f64;
                    }
                }
            }
            for i in 0..2 * g {
                lam_al[(i, k)] = C64::new(col[i], 0.0);
            }
            for i in 0..r {
                f[(i, k)] = C64::new(col[2 * g + i], 0.0);
            }
        }
        (lam_al, f)
    };
    let (a, rhs) = linearize(n, |z| {
        let (lam_al, f) = lattice_data(&z[..nc]);
        let mut out = Vec::new();
        for j in 0..t {
            out.extend(bl.torus_row_residual(j, &lam_aa_c, &lam_al, &f, &z[nc + j * nrow..nc + (j + 1) * nrow]));
        }
        out
    });
    let sol = integer_solutions(&a, Some(&rhs), cfg);
    let Some(base) = sol.particular else {
        let msg = String::from("joint system over the torus has no integral solution");
        return Err(if g == 0 { Failure::Exhausted(msg) } else { Failure::Inconclusive(msg) });
    };
    let fam = Family { base, dirs: sol.kernel };
    let f_of = |z: &[i64]| -> Vec<i64> {
        let (_, f) = lattice_data(&ivec_to_f(&z[..nc]));
        f.entries().iter().map(|x| Float::round(x.re) as i64).collect()
    };
    let lt_idx: Vec<usize> = (0..t).flat_map(|j| (0..t).map(move |k| nc + j * nrow + k)).collect();
    let mut preferred = Vec::new();
    if let Some(z) = fam.hit(&lt_idx, &(0..t * t).map(|k| i64::from(k / t == k % t)).collect::<Vec<_>>()) {
        preferred.push(z);
    }
    let rank_one = fam.dirs.len() <= 1;
    let homogeneous = g == 0;
    for z in fam.candidates(preferred, UNIT_BUDGET, 41) {
        let lt: Vec<i64> = lt_idx.iter().map(|&i| z[i]).collect();
        let f = f_of(&z);
        if !is_unit(t, &lt) || !is_unit(r, &f) {
            continue;
        }
        let rows: Vec<TorusRow> = (0..t)
            .map(|j| {
                let row = &z[nc + j * nrow..nc + (j + 1) * nrow];
                TorusRow { l: row[..t].to_vec(), a: row[t..t + 2 * g].to_vec() }
            })
            .collect();
        if let Some(m) = bl.assemble(lam_aa, &int_mat(r, r, &f), &rows, cfg) {
            return Ok(m);
        }
    }
    let msg = format!("no invertible morphism in a homomorphism family of rank {}", fam.dirs.len());
    if homogeneous && rank_one {
        Err(Failure::Exhausted(msg))
    } else {
        Err(Failure::Inconclusive(msg))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64, y: f64) -> C64 {
        C64::new(x, y)
    }

    #[test]
    fn kummer_two_three_distinct() {
        let cfg = Config::default();
        let a = OneMotive::kummer(c(2.0, 0.0)).unwrap();
        let b = OneMotive::kummer(c(3.0, 0.0)).unwrap();
        assert_eq!(iso_test(&a, &b, &cfg).label(), "verified_distinct");
    }

    #[test]
    fn rebased_kummer_is_isomorphic() {
        let cfg = Config::default();
        let a = OneMotive::kummer(c(2.0, 0.0)).unwrap();
        let shifted = a.shift_lift(&IntMatrix::from_i64(1, 1, &[3])).unwrap();
        assert!(iso_test(&a, &shifted, &cfg).is_iso());
        let inv = OneMotive::kummer(c(0.5, 0.0)).unwrap();
        assert!(iso_test(&a, &inv, &cfg).is_iso());
    }

    #[test]
    fn elliptic_curves_in_one_orbit() {
        let cfg = Config::default();
        let tau = c(0.31, core::f64::consts::FRAC_PI_2);
        let a = OneMotive::elliptic(tau, &cfg).unwrap();
        let b = OneMotive::elliptic(-C64::new(1.0, 0.0) / tau, &cfg).unwrap();
        assert!(iso_test(&a, &b, &cfg).is_iso());
        let d = OneMotive::elliptic(c(0.1, core::f64::consts::E), &cfg).unwrap();
        assert_eq!(iso_test(&a, &d, &cfg).label(), "verified_distinct");
    }
}
