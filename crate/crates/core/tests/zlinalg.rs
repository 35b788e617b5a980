use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use onemotive::zlinalg::*;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-6i64..=6, rows * cols).prop_map(move |v| IntMatrix::from_i64(rows, cols, &v))
}

fn shaped() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c))
}

/// Determinant by cofactor expansion.
fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut s = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<BigInt>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
    }
    s
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from gcds of minors.
fn determinantal_factors(a: &IntMatrix) -> Vec<BigInt> {
    let (r, c) = a.shape();
    let mut d_prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let m: Vec<Vec<BigInt>> = rows.iter().map(|&i| cols.iter().map(|&j| a[(i, j)].clone()).collect()).collect();
                g = g.gcd(&cofactor_det(&m));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &d_prev);
        d_prev = g;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_is_a_diagonalization(a in shaped()) {
        let s = snf(&a);
        prop_assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        prop_assert_eq!(&(&s.u * &a) * &s.v, s.d.clone());
        let diag = s.diagonal();
        for i in 0..diag.len() {
            for j in 0..diag.len() {
                if i != j && i < s.d.rows() && j < s.d.cols() {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
    }

    #[test]
    fn snf_matches_minors(a in shaped()) {
        let nonzero: Vec<BigInt> = snf(&a).diagonal().into_iter().filter(|d| !d.is_zero()).map(|d| d.abs()).collect();
        prop_assert_eq!(nonzero, determinantal_factors(&a));
    }

    #[test]
    fn hnf_is_canonical(a in shaped(), moves in prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..6)) {
        let h = hnf(&a);
        prop_assert!(is_unimodular(&h.u));
        prop_assert_eq!(&h.u * &a, h.h.clone());
        let mut w = IntMatrix::identity(a.rows());
        for (i, j, k) in moves {
            let (i, j) = (i % a.rows(), j % a.rows());
            if i != j {
                let mut e = IntMatrix::identity(a.rows());
                e[(i, j)] = BigInt::from(k);
                w = &e * &w;
            }
        }
        prop_assert_eq!(hnf(&(&w * &a)).h, h.h);
    }

    #[test]
    fn kernel_is_saturated_and_complete(a in shaped()) {
        let k = kernel_basis(&a);
        prop_assert!((&a * &k).is_zero());
        prop_assert_eq!(k.cols(), a.cols() - rank(&a));
        if k.cols() > 0 {
            prop_assert!(is_saturated(&k));
        }
    }

    #[test]
    fn solve_recovers_solutions(a in shaped(), x in prop::collection::vec(-5i64..=5, 4)) {
        let x: Vec<BigInt> = x[..a.cols()].iter().map(|&v| BigInt::from(v)).collect();
        let b = a.mul_vec(&x);
        let sol = solve_integral(&a, &b).expect("consistent system");
        prop_assert_eq!(a.mul_vec(&sol.particular), b);
        prop_assert!((&a * &sol.kernel).is_zero());
    }

    #[test]
    fn cokernel_order_is_determinant(a in matrix(3, 3)) {
        let d = det(&a);
        let g = cokernel_structure(&a);
        if d.is_zero() {
            prop_assert!(g.free_rank > 0);
        } else {
            prop_assert_eq!(g.order(), Some(d.abs()));
        }
    }
}

#[test]
fn diagonal_example() {
    let a = IntMatrix::from_i64(3, 3, &[2, 0, 0, 0, 6, 0, 0, 0, 12]);
    let g = cokernel_structure(&a);
    let expected: Vec<BigInt> = [2, 6, 12].iter().map(|&x| BigInt::from(x)).collect();
    assert_eq!(g.invariant_factors, expected);
    assert_eq!(g.free_rank, 0);
}

#[test]
fn saturation_of_doubled_vector() {
    let l = IntMatrix::from_i64(2, 1, &[2, 4]);
    assert!(!is_saturated(&l));
    assert_eq!(saturate(&l).unwrap(), IntMatrix::from_i64(2, 1, &[1, 2]));
}
