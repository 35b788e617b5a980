#![allow(dead_code)]

use onemotive::motives::OneMotive;
use onemotive::numeric::{CMat, C64};
use onemotive::Config;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(x: f64, y: f64) -> C64 {
    C64::new(x, y)
}

pub fn random_c(rng: &mut ChaCha8Rng) -> C64 {
    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Point of the Siegel upper half space.
pub fn random_omega(rng: &mut ChaCha8Rng, g: usize) -> CMat {
    let mut a = vec![0.0; g * g];
    for x in a.iter_mut() {
        *x = rng.gen_range(-0.5..0.5);
    }
    let mut m = CMat::zeros(g, g);
    for i in 0..g {
        for j in i..g {
            let x = rng.gen_range(-0.5..0.5);
            let mut y: f64 = (0..g).map(|k| a[i * g + k] * a[j * g + k]).sum();
            if i == j {
                y += 0.7;
            }
            m[(i, j)] = c(x, y);
            m[(j, i)] = c(x, y);
        }
    }
    m
}

pub fn random_cmat(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMat {
    CMat::from_vec(rows, cols, (0..rows * cols).map(|_| random_c(rng)).collect())
}

pub fn random_motive(rng: &mut ChaCha8Rng, r: usize, t: usize, g: usize) -> OneMotive {
    let cfg = Config::default();
    let omega = random_omega(rng, g);
    let eta = random_cmat(rng, t, 2 * g);
    let u = random_cmat(rng, t + g, r);
    OneMotive::from_data(r, t, omega, eta, u, &cfg).expect("random data is valid")
}

/// Every `(r, t, g)` with entries in `0..=2`.
pub fn all_shapes() -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for r in 0..=2 {
        for t in 0..=2 {
            for g in 0..=2 {
                out.push((r, t, g));
            }
        }
    }
    out
}

use onemotive::hodge::{MixedHodgeStructure, Polarization};
use onemotive::zlinalg::IntMatrix;

/// Random unimodular matrix, a product of elementary moves.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, moves: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            m = m.neg();
        }
        return m;
    }
    for _ in 0..moves {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let k: i64 = rng.gen_range(-2..=2);
        let mut e = IntMatrix::identity(n);
        e[(i, j)] = k.into();
        m = &e * &m;
    }
    m
}

/// Block upper triangular unimodular matrix preserving the weight filtration.
pub fn random_filtered_unimodular(rng: &mut ChaCha8Rng, r: usize, t: usize, g: usize) -> IntMatrix {
    let n = r + t + 2 * g;
    let mut m = IntMatrix::zeros(n, n);
    let blocks = [(0, t), (t, 2 * g), (t + 2 * g, r)];
    for &(s, len) in &blocks {
        m.set_block(s, s, &random_unimodular(rng, len, 3 * len));
    }
    for (bi, &(s, len)) in blocks.iter().enumerate() {
        for &(s2, len2) in &blocks[bi + 1..] {
            let mut off = IntMatrix::zeros(len, len2);
            for a in 0..len {
                for b in 0..len2 {
                    off[(a, b)] = rng.gen_range(-2i64..=2).into();
                }
            }
            m.set_block(s, s2, &off);
        }
    }
    m
}

/// The structure transported along an integral change of basis.
pub fn transport(h: &MixedHodgeStructure, a: &IntMatrix) -> MixedHodgeStructure {
    let ac = CMat::from_int(a);
    let pol = h.polarization().map(|p| Polarization { lifts: a * &p.lifts, form: p.form.clone() });
    MixedHodgeStructure::new(h.rank(), a * h.w2(), a * h.w1(), ac.mul(h.f0()), pol).expect("transport")
}

use onemotive::curves::{Component, Coord, CurveConfiguration, MarkedPoint};

/// Random seminormal configuration: up to four components of genus at most
/// one and up to five identification classes.
pub fn random_curve(rng: &mut ChaCha8Rng, cfg: &Config) -> CurveConfiguration {
    let n = rng.gen_range(1..=4);
    let mut components = Vec::new();
    for i in 0..n {
        let tau = rng.gen_bool(0.5).then(|| c(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.6)));
        components.push(Component { label: format!("C{i}"), genus: tau.is_some() as u32, tau });
    }
    let mut points = Vec::new();
    let mut gluings = Vec::new();
    let classes = rng.gen_range(0..=5);
    for _ in 0..classes {
        let size = if rng.gen_bool(0.8) { 2 } else { 3 };
        let mut class = Vec::new();
        for _ in 0..size {
            let comp = rng.gen_range(0..n);
            let label = format!("p{:02}", points.len());
            points.push(random_point(rng, &components, comp, &points, &label));
            class.push(label);
        }
        gluings.push(class);
    }
    CurveConfiguration::new(components, points, gluings, Vec::new(), cfg).expect("random configuration is valid")
}

fn random_point(rng: &mut ChaCha8Rng, comps: &[Component], comp: usize, existing: &[MarkedPoint], label: &str) -> MarkedPoint {
    let cl = comps[comp].label.clone();
    let coord = match comps[comp].tau {
        Some(tau) => Coord::Finite(tau * rng.gen_range(0.0..1.0) + rng.gen_range(0.0..1.0)),
        None => {
            let has_inf = existing.iter().any(|p| p.component == cl && p.coord == Coord::Infinity);
            if !has_inf && rng.gen_bool(0.15) {
                Coord::Infinity
            } else {
                Coord::Finite(c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
            }
        }
    };
    MarkedPoint { label: label.into(), component: cl, coord }
}

/// A random configuration with one to three extra deleted points.
pub fn random_open_curve(rng: &mut ChaCha8Rng, cfg: &Config) -> CurveConfiguration {
    let base = random_curve(rng, cfg);
    let mut points = base.points().to_vec();
    let mut deleted = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let comp = rng.gen_range(0..base.components().len());
        let label = format!("f{:02}", points.len());
        let p = random_point(rng, base.components(), comp, &points, &label);
        points.push(p);
        deleted.push(label);
    }
    CurveConfiguration::new(base.components().to_vec(), points, base.gluings().to_vec(), deleted, cfg)
        .expect("random open configuration is valid")
}
