mod common;

use common::*;
use onemotive::duality::*;
use onemotive::iso::{iso_test, IsoOutcome};
use onemotive::motives::OneMotive;
use onemotive::realizations::{motivic, t_hodge};
use onemotive::zlinalg::{det, is_unimodular};
use onemotive::Config;
use proptest::prelude::*;

fn rebased(m: &OneMotive, seed: u64, cfg: &Config) -> OneMotive {
    let mut rng = rng(seed);
    let (r, t, g) = m.ranks();
    let a = random_filtered_unimodular(&mut rng, r, t, g);
    motivic(&transport(&t_hodge(m), &a), cfg).unwrap().0
}

#[test]
fn kummer_classes() {
    let cfg = Config::default();
    let k = |x: f64| OneMotive::kummer(c(x, 0.0)).unwrap();
    assert!(matches!(iso_test(&k(2.0), &k(3.0), &cfg), IsoOutcome::VerifiedDistinct(_)));
    assert!(matches!(iso_test(&k(2.0), &k(4.0), &cfg), IsoOutcome::VerifiedDistinct(_)));
    assert!(iso_test(&k(2.0), &k(0.5), &cfg).is_iso(), "q and 1/q differ by -1 on L");
    let q = c(-0.7, 1.9);
    let twisted = OneMotive::kummer(q).unwrap().shift_lift(&onemotive::zlinalg::IntMatrix::from_i64(1, 1, &[5])).unwrap();
    assert!(iso_test(&OneMotive::kummer(q).unwrap(), &twisted, &cfg).is_iso());
}

#[test]
fn elliptic_classes() {
    let cfg = Config::default();
    let tau = c(0.23, 1.17);
    let e = |t| OneMotive::elliptic(t, &cfg).unwrap();
    assert!(iso_test(&e(tau), &e(tau + 1.0), &cfg).is_iso());
    assert!(iso_test(&e(tau), &e(-tau.inv()), &cfg).is_iso());
    assert!(!iso_test(&e(tau), &e(tau * 2.0), &cfg).is_iso());
}

#[test]
fn rank_mismatch_is_distinct() {
    let cfg = Config::default();
    let mut rng = rng(41);
    let a = random_motive(&mut rng, 1, 1, 0);
    let b = random_motive(&mut rng, 0, 1, 1);
    assert!(matches!(iso_test(&a, &b, &cfg), IsoOutcome::VerifiedDistinct(_)));
}

#[test]
fn random_pairs_are_not_isomorphic() {
    let cfg = Config::default().with_tol(1e-8);
    let mut rng = rng(42);
    for (r, t, g) in all_shapes() {
        if r + t + g == 0 || (r + g == 0) || (t + g == 0) {
            continue;
        }
        let a = random_motive(&mut rng, r, t, g);
        let b = random_motive(&mut rng, r, t, g);
        let out = iso_test(&a, &b, &cfg);
        assert!(!out.is_iso(), "{:?}", (r, t, g));
    }
}

#[test]
fn dual_exchanges_lattice_and_torus() {
    let cfg = Config::default().with_tol(1e-8);
    let mut rng = rng(43);
    for (r, t, g) in all_shapes() {
        let m = random_motive(&mut rng, r, t, g);
        let (d, psi) = cartier_dual(&m, &cfg).unwrap();
        assert_eq!(d.ranks(), (t, r, g));
        assert!(is_unimodular(&psi));
        let av = symmetric_avatar(&m, &cfg).unwrap();
        assert_eq!((av.lattice_rank, av.dual_lattice_rank), (r, t));
        assert_eq!(av.v.len(), t);
        assert_eq!(av.u.shape(), (g, r));
        assert_eq!(av.dual_abelian.dim(), g);
    }
}

#[test]
fn level_pairings_are_perfect() {
    let cfg = Config::default().with_tol(1e-8);
    let mut rng = rng(44);
    let m = random_motive(&mut rng, 1, 1, 1);
    for level in [2u64, 3, 4, 5, 12] {
        let p = pairing_mod_m(&m, level, &cfg).unwrap();
        assert!(p.perfect);
        let d = det(&p.gram);
        assert_eq!(num_integer::Integer::gcd(&d, &num_bigint::BigInt::from(level)), 1.into());
    }
    assert!(pairing_mod_m(&m, 1, &cfg).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn double_dual_is_canonically_isomorphic(seed in any::<u64>(), s in 0usize..27) {
        let cfg = Config::default().with_tol(1e-7);
        let (r, t, g) = all_shapes()[s];
        let m = random_motive(&mut rng(seed), r, t, g);
        let rep = double_dual_compare(&m, &cfg);
        prop_assert!(rep.passed(), "{:?}", rep);
    }

    #[test]
    fn rebased_copy_is_isomorphic(seed in any::<u64>(), s in 0usize..27) {
        let cfg = Config::default().with_tol(1e-7);
        let (r, t, g) = all_shapes()[s];
        let m = random_motive(&mut rng(seed), r, t, g);
        let m2 = rebased(&m, seed ^ 0x5555, &cfg);
        let out = iso_test(&m, &m2, &cfg);
        prop_assert!(out.is_iso(), "{:?}", out);
    }
}
