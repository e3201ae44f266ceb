//! Fraction-free elimination over the integers.
//!
//! Every rational matrix is first brought to an integer matrix by scaling
//! each row with the lcm of its denominators (this leaves rank, kernel and
//! pivot columns unchanged). Elimination then runs Bareiss' update
//!
//! ```text
//! a[i][j] <- (p * a[i][j] - a[i][col] * a[r][j]) / prev
//! ```
//!
//! whose division is exact because every intermediate entry is a minor of the
//! input. Pivots are chosen as the first nonzero entry at or below the
//! current row, scanning columns left to right.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::RatMatrix;
use super::rat::{common_denominator, Rat};
use crate::error::{Error, Result};

pub(crate) fn div_exact(num: BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    debug_assert!(r.is_zero(), "inexact fraction-free division");
    q
}

/// Integer rows `D * M` together with the row scale factors `D`.
pub(crate) fn integer_rows(m: &RatMatrix) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(m.rows());
    let mut scales = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let row = m.row(i);
        let l = common_denominator(row.iter());
        rows.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
        scales.push(l);
    }
    (rows, scales)
}

pub(crate) struct Forward {
    pub pivot_cols: Vec<usize>,
    /// `true` when an odd number of row swaps happened.
    pub odd_swaps: bool,
    pub last_pivot: BigInt,
}

/// Bareiss forward elimination restricted to the first `ncols` columns.
pub(crate) fn bareiss_forward(a: &mut [Vec<BigInt>], ncols: usize) -> Forward {
    let m = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivot_cols = Vec::new();
    let mut odd_swaps = false;
    for col in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            odd_swaps = !odd_swaps;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            let f = std::mem::take(&mut row[col]);
            for j in col + 1..width {
                let v = pivot * &row[j] - &f * &pivot_row[j];
                row[j] = div_exact(v, &prev);
            }
        }
        prev = pivot.clone();
        pivot_cols.push(col);
        r += 1;
    }
    Forward { pivot_cols, odd_swaps, last_pivot: prev }
}

/// Fraction-free Gauss-Jordan over the first `ncols` columns. On return every
/// pivot entry equals the returned common pivot `d` and pivot columns are
/// zero elsewhere.
pub(crate) fn fraction_free_gauss_jordan(a: &mut [Vec<BigInt>], ncols: usize) -> (Vec<usize>, BigInt) {
    let m = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let pivot_row = a[r].clone();
        let pivot = &pivot_row[col];
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = std::mem::take(&mut row[col]);
            for j in 0..width {
                if j == col {
                    continue;
                }
                let v = pivot * &row[j] - &f * &pivot_row[j];
                row[j] = div_exact(v, &prev);
            }
        }
        prev = pivot.clone();
        pivot_cols.push(col);
        r += 1;
    }
    (pivot_cols, prev)
}

pub fn rank(m: &RatMatrix) -> usize {
    let (mut a, _) = integer_rows(m);
    bareiss_forward(&mut a, m.cols()).pivot_cols.len()
}

/// Column indices of the first maximal linearly independent set of columns.
pub fn pivot_columns(m: &RatMatrix) -> Vec<usize> {
    let (mut a, _) = integer_rows(m);
    bareiss_forward(&mut a, m.cols()).pivot_cols
}

pub fn det(m: &RatMatrix) -> Result<Rat> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Rat::one());
    }
    let (mut a, scales) = integer_rows(m);
    let fw = bareiss_forward(&mut a, n);
    if fw.pivot_cols.len() < n {
        return Ok(Rat::zero());
    }
    let mut d = fw.last_pivot;
    if fw.odd_swaps {
        d = -d;
    }
    let denom = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    Ok(Rat::new(d, denom))
}

/// Basis of the right kernel as primitive integer vectors (stored as
/// rationals), one per non-pivot column, in increasing column order.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let cols = m.cols();
    if m.rows() == 0 {
        return (0..cols).map(|f| unit(cols, f)).collect();
    }
    let (mut a, _) = integer_rows(m);
    let (pivots, d) = fraction_free_gauss_jordan(&mut a, cols);
    let mut is_pivot = vec![None; cols];
    for (row, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(row);
    }
    let mut out = Vec::new();
    for f in (0..cols).filter(|&c| is_pivot[c].is_none()) {
        let mut v = vec![BigInt::zero(); cols];
        v[f] = d.clone();
        for (row, &c) in pivots.iter().enumerate() {
            v[c] = -&a[row][f];
        }
        let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let sign = if v[f].is_negative() { -BigInt::one() } else { BigInt::one() };
        out.push(v.into_iter().map(|x| Rat::from_integer(x * &sign / &g)).collect());
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

pub fn inverse(m: &RatMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let (rows, scales) = integer_rows(m);
    let mut a: Vec<Vec<BigInt>> = rows
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let (pivots, d) = fraction_free_gauss_jordan(&mut a, n);
    if pivots.len() < n {
        return Err(Error::Singular);
    }
    Ok(RatMatrix::from_fn(n, n, |i, j| Rat::new(&a[i][n + j] * &scales[j], d.clone())))
}

/// Lexicographically first index set `S` with `|S| = rank(M)` and `M[S,S]`
/// invertible, for symmetric `M`.
///
/// For a symmetric matrix the first maximal independent set of rows (equal
/// to the pivot columns of greedy elimination) indexes a nonsingular
/// principal submatrix.
pub fn principal_rank_subset(m: &RatMatrix) -> Result<Vec<usize>> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(pivot_columns(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat::{rat, rat_frac};

    #[test]
    fn identity_rank_and_det() {
        assert_eq!(rank(&RatMatrix::identity(5)), 5);
        assert_eq!(det(&RatMatrix::identity(4)).unwrap(), rat(1));
    }

    #[test]
    fn det_of_non_square_fails() {
        assert!(matches!(det(&RatMatrix::zeros(2, 3)), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn kernel_of_zero_matrix_is_standard_basis() {
        let k = kernel_basis(&RatMatrix::zeros(3, 3));
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x, if i == j { rat(1) } else { rat(0) });
            }
        }
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(&k[0][0] * rat(-1), &k[0][1] * rat(2));
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn inverse_of_two_by_two_skew() {
        let m = RatMatrix::from_i64(&[&[0, 2], &[-2, 0]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(inv[(0, 1)], rat_frac(-1, 2));
        assert_eq!(inv[(1, 0)], rat_frac(1, 2));
        assert!(inv[(0, 0)].is_zero());
        assert_eq!(inverse(&RatMatrix::identity(3)).unwrap(), RatMatrix::identity(3));
    }

    #[test]
    fn singular_inverse_fails() {
        let m = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(matches!(inverse(&m), Err(Error::Singular)));
    }

    #[test]
    fn rational_entries_are_handled() {
        let m = RatMatrix::from_rows(vec![
            vec![rat_frac(1, 2), rat_frac(1, 3)],
            vec![rat_frac(1, 4), rat_frac(1, 5)],
        ])
        .unwrap();
        // 1/10 - 1/12 = 1/60
        assert_eq!(det(&m).unwrap(), rat_frac(1, 60));
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(2));
    }

    #[test]
    fn principal_subset_examples() {
        assert_eq!(principal_rank_subset(&RatMatrix::identity(3)).unwrap(), vec![0, 1, 2]);
        assert_eq!(principal_rank_subset(&RatMatrix::from_i64(&[&[1, 1], &[1, 1]])).unwrap(), vec![0]);
        // greedy on principal minors would stall here; row-basis selection does not
        assert_eq!(principal_rank_subset(&RatMatrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap(), vec![0, 1]);
        assert!(matches!(
            principal_rank_subset(&RatMatrix::from_i64(&[&[0, 1], &[2, 0]])),
            Err(Error::NotSymmetric)
        ));
    }
}
