//! Exact linear algebra against slow textbook oracles.

mod common;

use common::*;
use instanton_core::linalg::{self, rat_frac, Rat, RatMatrix};
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat_frac(p, q))
}

fn matrix(rows: std::ops::RangeInclusive<usize>, cols: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = RatMatrix> {
    (rows, cols).prop_flat_map(|(r, c)| {
        // low-rank products show up often enough through the sparse entries
        proptest::collection::vec(prop_oneof![3 => Just(Rat::zero()), 2 => rational()], r * c)
            .prop_map(move |d| RatMatrix::from_vec(r, c, d).unwrap())
    })
}

fn square(max: usize) -> impl Strategy<Value = RatMatrix> {
    (0..=max).prop_flat_map(|n| {
        proptest::collection::vec(prop_oneof![2 => Just(Rat::zero()), 3 => rational()], n * n)
            .prop_map(move |d| RatMatrix::from_vec(n, n, d).unwrap())
    })
}

fn skew_rat(max_half: usize) -> impl Strategy<Value = RatMatrix> {
    (0..=max_half).prop_flat_map(|h| {
        let n = 2 * h;
        proptest::collection::vec(prop_oneof![1 => Just(Rat::zero()), 3 => rational()], n * n).prop_map(move |d| {
            RatMatrix::from_fn(n, n, |i, j| if i < j { d[i * n + j].clone() } else if i > j { -d[j * n + i].clone() } else { Rat::zero() })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn rank_matches_gaussian_elimination(m in matrix(0..=6, 0..=7)) {
        prop_assert_eq!(linalg::rank(&m), naive_rank(&m.to_rows()));
        prop_assert_eq!(linalg::rank(&m), linalg::rank(&m.transpose()));
    }

    #[test]
    fn det_matches_cofactor_expansion(m in square(6)) {
        prop_assert_eq!(linalg::det(&m).unwrap(), cofactor_det(&m.to_rows()));
    }

    #[test]
    fn pfaffian_matches_expansion_and_squares_to_det(m in skew_rat(4)) {
        let pf = linalg::pfaffian(&m).unwrap();
        prop_assert_eq!(&pf, &pfaffian_expansion(&m.to_rows()));
        prop_assert_eq!(&pf * &pf, linalg::det(&m).unwrap());
    }

    #[test]
    fn kernel_basis_spans_the_kernel(m in matrix(1..=5, 1..=7)) {
        let basis = linalg::kernel_basis(&m);
        prop_assert_eq!(basis.len(), m.cols() - naive_rank(&m.to_rows()));
        for v in &basis {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        if !basis.is_empty() {
            prop_assert_eq!(naive_rank(&basis), basis.len());
        }
    }

    #[test]
    fn inverse_inverts(m in square(5)) {
        match linalg::inverse(&m) {
            Ok(inv) => prop_assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(m.rows())),
            Err(_) => prop_assert!(cofactor_det(&m.to_rows()).is_zero()),
        }
    }

    #[test]
    fn principal_subset_gives_invertible_block(m in matrix(0..=6, 0..=6)) {
        let sym = m.transpose().mul(&m).unwrap();
        let s = linalg::principal_rank_subset(&sym).unwrap();
        prop_assert_eq!(s.len(), naive_rank(&sym.to_rows()));
        prop_assert!(!cofactor_det(&sym.principal(&s).to_rows()).is_zero());
    }
}

#[test]
fn hand_values() {
    let m = RatMatrix::from_i64(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
    assert_eq!(linalg::det(&m).unwrap(), cofactor_det(&m.to_rows()));
    assert_eq!(linalg::det(&m).unwrap(), Rat::from_integer(6.into()));
    let j = RatMatrix::from_i64(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
    assert_eq!(linalg::pfaffian(&j).unwrap(), pfaffian_expansion(&j.to_rows()));
}
