use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use super::elimination::div_exact;
use super::matrix::RatMatrix;
use super::rat::{common_denominator, Rat};
use crate::error::{Error, Result};

/// Pfaffian of an even-order skew-symmetric matrix.
///
/// Works on the integer matrix `L * M` (`L` the common denominator) with a
/// skew analogue of Bareiss' update: after eliminating the leading `2x2`
/// block with pivot `p`,
///
/// ```text
/// a[i][j] <- (p * a[i][j] + a[i][k] * a[k+1][j] - a[i][k+1] * a[k][j]) / prev
/// ```
///
/// Every intermediate entry is the Pfaffian of a principal submatrix of the
/// input, so each division is exact. A simultaneous row/column swap of two
/// unprocessed indices flips the sign.
pub fn pfaffian(m: &RatMatrix) -> Result<Rat> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    if !m.is_skew() {
        return Err(Error::NotSkew("pfaffian input".into()));
    }
    let n = m.rows();
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    let l = common_denominator(m.entries().iter());
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| m.row(i).iter().map(|x| x.numer() * (&l / x.denom())).collect())
        .collect();

    let mut negate = false;
    let mut prev = BigInt::one();
    for k in (0..n).step_by(2) {
        let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) else {
            return Ok(Rat::zero());
        };
        if j != k + 1 {
            swap_index(&mut a, j, k + 1);
            negate = !negate;
        }
        let p = a[k][k + 1].clone();
        for i in k + 2..n {
            for jj in i + 1..n {
                let v = &p * &a[i][jj] + &a[i][k] * &a[k + 1][jj] - &a[i][k + 1] * &a[k][jj];
                let v = div_exact(v, &prev);
                a[jj][i] = -&v;
                a[i][jj] = v;
            }
        }
        prev = p;
    }
    if negate {
        prev = -prev;
    }
    let scale: BigInt = Pow::pow(&l, (n / 2) as u32);
    Ok(Rat::new(prev, scale))
}

fn swap_index(a: &mut [Vec<BigInt>], x: usize, y: usize) {
    a.swap(x, y);
    for row in a.iter_mut() {
        row.swap(x, y);
    }
}
