mod common;

use common::*;
use onemotive::motives::{MotiveMorphism, OneMotive};
use onemotive::numeric::{CMat, RMat, C64, TWO_PI_I};
use onemotive::realizations::*;
use onemotive::zlinalg::IntMatrix;
use onemotive::Config;
use proptest::prelude::*;
use rand::Rng;

/// Is `v` in the period lattice of `m`? Solved in real coordinates, independent of the library.
fn in_period_lattice(m: &OneMotive, v: &[C64], tol: f64) -> bool {
    let p = m.period_matrix();
    if p.cols() == 0 {
        return v.iter().all(|z| z.norm() <= tol);
    }
    let a = p.realify();
    let b = CMat::column(v).realify();
    let Some(x) = a.lstsq(&b) else { return false };
    let k: Vec<f64> = x.entries().iter().map(|c| c.round()).collect();
    let back = a.mul(&RMat::column(&k));
    back.dist(&b) <= tol * (1.0 + b.max_abs())
}

fn classes(n: usize, m: u64) -> Vec<Vec<i64>> {
    let total = (m as usize).pow(n as u32);
    (0..total)
        .map(|mut i| {
            (0..n)
                .map(|_| {
                    let d = (i % m as usize) as i64;
                    i /= m as usize;
                    d
                })
                .collect()
        })
        .collect()
}

#[test]
fn kummer_lifts_of_minus_one_and_e() {
    let mi = OneMotive::kummer(c(-1.0, 0.0)).unwrap();
    assert!((mi.u_lift()[(0, 0)] - c(0.0, std::f64::consts::PI)).norm() < 1e-12);
    let me = OneMotive::kummer(c(std::f64::consts::E, 0.0)).unwrap();
    assert!((me.u_lift()[(0, 0)] - c(1.0, 0.0)).norm() < 1e-12);
    // u(1) = -1 is 2-torsion in G_m.
    let fl = t_mod_m(&mi, 2).unwrap();
    let pt = fl.point(&mi, &[0, 1]);
    assert_eq!(pt.x, vec![1]);
    let two_v_plus_u: Vec<C64> = pt.v.iter().zip(mi.u_lift().col(0)).map(|(v, u)| *v * 2.0 + u).collect();
    assert!(in_period_lattice(&mi, &two_v_plus_u, 1e-10));
}

#[test]
fn torsion_points_are_distinct_and_count_m_to_the_n() {
    let mut rng = rng(31);
    for &(r, t, g) in &[(1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1), (2, 1, 0)] {
        let m = random_motive(&mut rng, r, t, g);
        let n = m.total_rank();
        for level in [2u64, 3] {
            let fl = t_mod_m(&m, level).unwrap();
            assert_eq!(fl.group.order().unwrap(), num_bigint::BigInt::from(level.pow(n as u32)));
            let pts: Vec<_> = classes(n, level).iter().map(|cl| fl.point(&m, cl)).collect();
            for p in &pts {
                let mv: Vec<C64> = p
                    .v
                    .iter()
                    .zip(m.u_lift().mul_vec(&p.x.iter().map(|&x| c(x as f64, 0.0)).collect::<Vec<_>>()))
                    .map(|(v, u)| *v * level as f64 + u)
                    .collect();
                assert!(in_period_lattice(&m, &mv, 1e-9), "m v + u(x) must be a period");
            }
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    if pts[i].x != pts[j].x {
                        continue;
                    }
                    let d: Vec<C64> = pts[i].v.iter().zip(&pts[j].v).map(|(a, b)| a - b).collect();
                    assert!(!in_period_lattice(&m, &d, 1e-9), "{:?} level {level}: points {i} and {j} coincide", (r, t, g));
                }
            }
        }
    }
}

#[test]
fn sequences_hold_at_mixed_levels() {
    let cfg = Config::default();
    let mut rng = rng(7);
    for (r, t, g) in all_shapes() {
        let m = random_motive(&mut rng, r, t, g);
        let rep = realization_sequences_check(&m, &[2, 3, 4, 5, 6, 12], &cfg);
        assert!(rep.passed(), "{:?}: {rep:?}", (r, t, g));
        assert!(rep.finding("etale_12_4").is_some());
        assert!(rep.finding("etale_5_2").is_none());
    }
}

#[test]
fn tower_rejects_non_chain() {
    let m = OneMotive::kummer(c(3.0, 0.0)).unwrap();
    assert!(etale_tower(&m, &[2, 3]).is_err());
    let tw = etale_tower(&m, &[2, 4, 12]).unwrap();
    assert!(tw.transition_report().passed());
}

#[test]
fn de_rham_dimensions() {
    let mut rng = rng(8);
    for (r, t, g) in all_shapes() {
        let m = random_motive(&mut rng, r, t, g);
        let dr = t_de_rham(&m);
        assert_eq!(dr.dim, r + t + 2 * g);
        assert_eq!(dr.f0_dim, r + g);
        assert_eq!(dr.lie_dim, t + g);
        assert_eq!(dr.ext_abelian_dim + dr.ext_lattice_dim, r + g);
    }
}

#[test]
fn multiplication_acts_by_scalar_mod_m() {
    let cfg = Config::default();
    let mut rng = rng(9);
    let m = random_motive(&mut rng, 1, 1, 1);
    for k in [2i64, 3, -1] {
        let f = MotiveMorphism::multiplication(&m, k);
        assert!(f.is_valid(&cfg));
        let red = finite_level_map(&f, 5, &cfg).unwrap();
        let expect = IntMatrix::identity(m.total_rank()).scale(&num_bigint::BigInt::from(k)).reduce_mod(&num_bigint::BigInt::from(5));
        assert_eq!(red, expect);
    }
}

#[test]
fn level_one_is_rejected() {
    let m = OneMotive::kummer(c(2.0, 0.0)).unwrap();
    assert!(t_mod_m(&m, 1).is_err());
    assert!(t_mod_m(&m, 0).is_err());
}

#[test]
fn hodge_of_kummer_has_expected_filtration() {
    let q = c(0.3, -1.1);
    let m = OneMotive::kummer(q).unwrap();
    let h = t_hodge(&m);
    let v = h.f0().col(0);
    // F^0 is spanned by (-log q / 2πi, 1).
    assert!((v[0] / v[1] + q.ln() / TWO_PI_I).norm() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hodge_round_trip(seed in any::<u64>(), r in 0usize..3, t in 0usize..3, g in 0usize..3) {
        let cfg = Config::default().with_tol(1e-7);
        let mut rng = rng(seed);
        let m = random_motive(&mut rng, r, t, g);
        let (back, iso) = motivic(&t_hodge(&m), &cfg).unwrap();
        prop_assert_eq!(back.ranks(), (r, t, g));
        prop_assert!(onemotive::zlinalg::is_unimodular(&iso));
        let f = MotiveMorphism::from_hodge_map(&back, &m, &iso, &cfg);
        prop_assert!(f.is_ok(), "{:?}", f.err());
    }

    #[test]
    fn rebased_structure_returns_same_motive(seed in any::<u64>(), r in 0usize..3, t in 0usize..3, g in 0usize..3) {
        let cfg = Config::default().with_tol(1e-7);
        let mut rng = rng(seed);
        let m = random_motive(&mut rng, r, t, g);
        let a = random_filtered_unimodular(&mut rng, r, t, g);
        let h = transport(&t_hodge(&m), &a);
        let (back, iso) = motivic(&h, &cfg).unwrap();
        prop_assert_eq!(back.ranks(), (r, t, g));
        // iso: T(back) -> T(h) = a T(m), so a^-1 iso is a Hodge map back -> m.
        let ainv = onemotive::zlinalg::inverse_unimodular(&a).unwrap();
        let f = MotiveMorphism::from_hodge_map(&back, &m, &(&ainv * &iso), &cfg);
        prop_assert!(f.is_ok(), "{:?}", f.err());
    }

    #[test]
    fn image_order_of_random_map(seed in any::<u64>(), level in 2u64..7) {
        let mut rng = rng(seed);
        let rows = rng.gen_range(1..4);
        let cols = rng.gen_range(1..4);
        let data: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-6..7)).collect();
        let a = IntMatrix::from_i64(rows, cols, &data);
        // Brute force: enumerate all images of (Z/level)^cols.
        let mut seen = std::collections::HashSet::new();
        for x in classes(cols, level) {
            let y: Vec<i64> = (0..rows)
                .map(|i| (0..cols).map(|j| data[i * cols + j] * x[j]).sum::<i64>().rem_euclid(level as i64))
                .collect();
            seen.insert(y);
        }
        prop_assert_eq!(image_order_mod(&a, level), num_bigint::BigInt::from(seen.len()));
    }
}
