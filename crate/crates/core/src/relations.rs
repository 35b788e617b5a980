//! Integer solutions of real linear systems, found by lattice reduction.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Float, ToPrimitive};

use crate::config::Config;
use crate::numeric::RMat;
use crate::zlinalg::{lattice_basis, saturate, IntMatrix};

const DELTA: f64 = 0.99;

fn dot(x: &[i128], y: &[i128]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum::<i128>() as f64
}

/// LLL reduction, Schnorr-Euchner style: exact integer basis, floating Gram-Schmidt.
pub fn lll_reduce(b: &mut [Vec<i128>]) {
    let n = b.len();
    if n <= 1 {
        return;
    }
    let mut mu = vec![vec![0.0f64; n]; n];
    let mut bb = vec![0.0f64; n];
    bb[0] = dot(&b[0], &b[0]);
    let mut k = 1;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        if guard > 100_000 + 1000 * n * n {
            break;
        }
        for _pass in 0..64 {
            for j in 0..k {
                let mut s = dot(&b[k], &b[j]);
                for i in 0..j {
                    s -= mu[j][i] * mu[k][i] * bb[i];
                }
                mu[k][j] = if bb[j] > 0.0 { s / bb[j] } else { 0.0 };
            }
            let mut s = dot(&b[k], &b[k]);
            for j in 0..k {
                s -= mu[k][j] * mu[k][j] * bb[j];
            }
            bb[k] = s;
            let mut changed = false;
            for j in (0..k).rev() {
                if Float::abs(mu[k][j]) > 0.51 {
                    let q = Float::round(mu[k][j]);
                    let qi = q as i128;
                    let (lo, hi) = b.split_at_mut(k);
                    for (x, y) in hi[0].iter_mut().zip(&lo[j]) {
                        *x -= qi * y;
                    }
                    for i in 0..j {
                        mu[k][i] -= q * mu[j][i];
                    }
                    mu[k][j] -= q;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if bb[k] < (DELTA - mu[k][k - 1] * mu[k][k - 1]) * bb[k - 1] {
            b.swap(k, k - 1);
            if k == 1 {
                bb[0] = dot(&b[0], &b[0]);
            }
            k = if k > 1 { k - 1 } else { 1 };
        } else {
            k += 1;
        }
    }
}

/// Integer solutions of `a z = b`.
#[derive(Clone, Debug, Default)]
pub struct Relations {
    /// A solution of the inhomogeneous system, if one was found.
    pub particular: Option<Vec<i64>>,
    /// Reduced basis of the integer kernel that was found.
    pub kernel: Vec<Vec<i64>>,
}

struct Normalized {
    a: RMat,
    b: Vec<f64>,
}

fn normalize(a: &RMat, b: &[f64]) -> Normalized {
    let (m, n) = a.shape();
    let mut out = RMat::zeros(m, n);
    let mut rhs = vec![0.0; m];
    for i in 0..m {
        let s = (0..n).map(|j| Float::abs(a[(i, j)])).fold(Float::abs(b[i]), f64::max);
        if s == 0.0 {
            continue;
        }
        for j in 0..n {
            out[(i, j)] = a[(i, j)] / s;
        }
        rhs[i] = b[i] / s;
    }
    Normalized { a: out, b: rhs }
}

fn residual(a: &RMat, b: &[f64], z: &[i64]) -> f64 {
    (0..a.rows())
        .map(|i| Float::abs((0..a.cols()).map(|j| a[(i, j)] * z[j] as f64).sum::<f64>() - b[i]))
        .fold(0.0, f64::max)
}

/// Accepted relations are small and hold to `tol` in absolute terms. Size
/// must stay well below the embedding scale, otherwise pigeonhole
/// vectors of size about `scale^(m/n)` pass any tolerance scaled by size.
fn accept(a: &RMat, b: &[f64], z: &[i64], tol: f64, bound: f64) -> bool {
    let size = z.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0) as f64;
    size <= bound && residual(a, b, z) <= tol + 1e-14 * size * a.cols() as f64
}

fn size_bound(cfg: &Config) -> f64 {
    Float::sqrt(cfg.denom_bound).max(1.0)
}

fn reduce_basis(vs: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut b: Vec<Vec<i128>> = vs.iter().map(|v| v.iter().map(|&x| x as i128).collect()).collect();
    lll_reduce(&mut b);
    b.into_iter().map(|v| v.into_iter().map(|x| x as i64).collect()).collect()
}

fn embedding(a: &RMat, scale: f64) -> Vec<Vec<i128>> {
    let (m, n) = a.shape();
    (0..n)
        .map(|j| {
            let mut v = vec![0i128; n + m];
            v[j] = 1;
            for i in 0..m {
                v[n + i] = Float::round(scale * a[(i, j)]) as i128;
            }
            v
        })
        .collect()
}

/// Integer kernel of a real matrix, up to the tolerance in `cfg`.
fn kernel(a: &RMat, cfg: &Config) -> Vec<Vec<i64>> {
    let n = a.cols();
    if n == 0 {
        return Vec::new();
    }
    let zero = vec![0.0; a.rows()];
    let tol = cfg.tol.max(1e-12);
    let mut basis = embedding(a, cfg.denom_bound);
    lll_reduce(&mut basis);
    let mut found: Vec<Vec<i64>> = Vec::new();
    for v in &basis {
        let Some(z) = v[..n].iter().map(|&x| i64::try_from(x).ok()).collect::<Option<Vec<i64>>>() else {
            continue;
        };
        if z.iter().all(|&x| x == 0) {
            continue;
        }
        if accept(a, &zero, &z, tol, size_bound(cfg)) {
            found.push(z);
        }
    }
    if found.is_empty() {
        return found;
    }
    let gens = IntMatrix::from_columns(n, &found.iter().map(|z| z.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>());
    let basis = lattice_basis(&gens);
    let sat = saturate(&basis).unwrap_or(basis);
    let cols: Vec<Vec<i64>> = (0..sat.cols())
        .map(|j| sat.col(j).iter().map(|x| x.to_i64().unwrap_or(0)).collect())
        .collect();
    let reduced = reduce_basis(&cols);
    reduced.into_iter().filter(|z| accept(a, &zero, z, tol, size_bound(cfg))).collect()
}

/// Integer solutions of the real system `a z = b`, or of `a z = 0` when `b` is `None`.
pub fn integer_solutions(a: &RMat, b: Option<&[f64]>, cfg: &Config) -> Relations {
    let (m, n) = a.shape();
    let rhs: Vec<f64> = b.map_or_else(|| vec![0.0; m], |x| x.to_vec());
    assert_eq!(rhs.len(), m, "right-hand side length");
    if n == 0 {
        let ok = rhs.iter().all(|&x| Float::abs(x) <= cfg.tol);
        return Relations { particular: ok.then(Vec::new), kernel: Vec::new() };
    }
    let nz = normalize(a, &rhs);
    let tol = cfg.tol.max(1e-12);
    if m > 0 && nz.a.rank(1e-10) == n {
        let Some(x) = nz.a.lstsq(&RMat::column(&nz.b)) else {
            return Relations::default();
        };
        let z: Vec<i64> = x.entries().iter().map(|&v| Float::round(v) as i64).collect();
        let particular = accept(&nz.a, &nz.b, &z, tol, size_bound(cfg)).then_some(z);
        return Relations { particular, kernel: Vec::new() };
    }
    let kernel = kernel(&nz.a, cfg);
    if b.is_none() || nz.b.iter().all(|&x| x == 0.0) {
        return Relations { particular: Some(vec![0; n]), kernel };
    }
    let mut basis = embedding(&nz.a, cfg.denom_bound);
    for v in basis.iter_mut() {
        v.push(0);
    }
    let mut extra = vec![0i128; n + m + 1];
    for i in 0..m {
        extra[n + i] = -(Float::round(cfg.denom_bound * nz.b[i]) as i128);
    }
    extra[n + m] = 1;
    basis.push(extra);
    lll_reduce(&mut basis);
    let mut best: Option<Vec<i64>> = None;
    for v in &basis {
        let sign = match v[n + m] {
            1 => 1,
            -1 => -1,
            _ => continue,
        };
        let Some(z) = v[..n].iter().map(|&x| i64::try_from(sign * x).ok()).collect::<Option<Vec<i64>>>() else {
            continue;
        };
        if accept(&nz.a, &nz.b, &z, tol, size_bound(cfg)) {
            let norm = |w: &Vec<i64>| w.iter().map(|x| x.unsigned_abs()).sum::<u64>();
            if best.as_ref().map_or(true, |w| norm(&z) < norm(w)) {
                best = Some(z);
            }
        }
    }
    Relations { particular: best, kernel }
}
