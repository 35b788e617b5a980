mod common;

use common::*;
use onemotive::iso::iso_test;
use onemotive::motives::{AbelianVariety, MotiveMorphism, OneMotive};
use onemotive::numeric::CMat;
use onemotive::zlinalg::IntMatrix;
use onemotive::Config;
use rand::Rng;

#[test]
fn canonical_sequence_is_a_complex() {
    let cfg = Config::default();
    let mut rng = rng(21);
    for (r, t, g) in all_shapes() {
        let m = random_motive(&mut rng, r, t, g);
        let (incl, proj) = m.canonical_sequence();
        assert!(incl.is_valid(&cfg), "{:?}", (r, t, g));
        assert!(proj.is_valid(&cfg));
        let comp = incl.then(&proj).unwrap();
        assert!(comp.hodge_map(&cfg).unwrap().is_zero());
        // The inclusion is injective on Hodge lattices, the projection onto L.
        let hi = incl.hodge_map(&cfg).unwrap();
        assert_eq!(onemotive::zlinalg::rank(&hi), t + 2 * g);
        assert!(onemotive::zlinalg::is_saturated(&hi));
        assert_eq!(onemotive::zlinalg::rank(&proj.hodge_map(&cfg).unwrap()), r);
    }
}

#[test]
fn weight_filtration_ranks() {
    let mut rng = rng(22);
    let m = random_motive(&mut rng, 2, 1, 1);
    assert_eq!(m.weight_sub(0).ranks(), (2, 1, 1));
    assert_eq!(m.weight_sub(-1).ranks(), (0, 1, 1));
    assert_eq!(m.weight_sub(-2).ranks(), (0, 1, 0));
    assert_eq!(m.weight_sub(-3).ranks(), (0, 0, 0));
}

#[test]
fn lift_shift_gives_isomorphic_motive() {
    let cfg = Config::default().with_tol(1e-8);
    let mut rng = rng(23);
    for (r, t, g) in all_shapes() {
        let m = random_motive(&mut rng, r, t, g);
        let k = m.semiabelian().lattice_rank();
        let data: Vec<i64> = (0..k * r).map(|_| rng.gen_range(-3..=3)).collect();
        let m2 = m.shift_lift(&IntMatrix::from_i64(k, r, &data)).unwrap();
        let out = iso_test(&m, &m2, &cfg);
        assert!(out.is_iso(), "{:?}: {out:?}", (r, t, g));
    }
}

#[test]
fn trivial_extension_splits() {
    let cfg = Config::default().with_tol(1e-8);
    let mut rng = rng(24);
    for (r, t, g) in [(1, 1, 1), (2, 1, 1), (1, 2, 1)] {
        let omega = random_omega(&mut rng, g);
        let m = OneMotive::from_data(r, t, omega.clone(), CMat::zeros(t, 2 * g), CMat::zeros(t + g, r), &cfg).unwrap();
        let split = OneMotive::from_torus(t)
            .direct_sum(&OneMotive::from_abelian(AbelianVariety::new(omega, &cfg).unwrap()))
            .unwrap()
            .direct_sum(&OneMotive::from_lattice(r))
            .unwrap();
        assert!(iso_test(&m, &split, &cfg).is_iso());
    }
}

#[test]
fn multiplication_composes() {
    let cfg = Config::default();
    let mut rng = rng(25);
    let m = random_motive(&mut rng, 1, 1, 1);
    let six = MotiveMorphism::multiplication(&m, 2).then(&MotiveMorphism::multiplication(&m, 3)).unwrap();
    assert_eq!(six.hodge_map(&cfg).unwrap(), MotiveMorphism::multiplication(&m, 6).hodge_map(&cfg).unwrap());
    assert!(MotiveMorphism::identity(&m).hodge_map(&cfg).unwrap().is_identity());
}

#[test]
fn perturbed_morphism_fails_verification() {
    let cfg = Config::default();
    let mut rng = rng(26);
    let m = random_motive(&mut rng, 1, 1, 1);
    let mut f = MotiveMorphism::identity(&m);
    f.phi[(1, 1)] += common::c(1e-3, 0.0);
    assert!(!f.is_valid(&cfg));
    let mut f = MotiveMorphism::identity(&m);
    f.f = f.f.scale(&2.into());
    assert!(!f.is_valid(&cfg), "changing f alone breaks compatibility with u");
}

#[test]
fn kummer_hom_is_multiplication_on_the_torus() {
    // [Z -> G_m, 1 -> q] maps to [Z -> G_m, 1 -> q^2] by f = 1 on L and squaring on the torus.
    let cfg = Config::default();
    let q = common::c(1.3, 0.4);
    let a = OneMotive::kummer(q).unwrap();
    let b = OneMotive::kummer(q * q).unwrap();
    let square = CMat::from_vec(1, 1, vec![common::c(2.0, 0.0)]);
    let f = MotiveMorphism::new(a.clone(), b, IntMatrix::identity(1), square, IntMatrix::from_i64(1, 1, &[2])).unwrap();
    assert!(f.is_valid(&cfg));
    let m2 = MotiveMorphism::multiplication(&a, 2);
    assert!(m2.is_valid(&cfg));
}

#[test]
fn invalid_data_is_rejected() {
    let cfg = Config::default();
    let not_siegel = CMat::from_vec(1, 1, vec![common::c(0.3, -1.0)]);
    assert!(AbelianVariety::new(not_siegel, &cfg).is_err());
    let asym = CMat::from_vec(2, 2, vec![common::c(0.0, 1.0), common::c(0.1, 0.0), common::c(0.2, 0.0), common::c(0.0, 1.0)]);
    assert!(AbelianVariety::new(asym, &cfg).is_err());
    assert!(OneMotive::kummer(common::c(0.0, 0.0)).is_err());
    assert!(OneMotive::from_data(1, 1, CMat::zeros(0, 0), CMat::zeros(1, 0), CMat::zeros(2, 1), &cfg).is_err());
}
