//! The linear monad `H_c ⊗ O(-1) --α--> W ⊗ O --β--> H_c^∨ ⊗ O(1)` of a form.
//!
//! `W` is the coimage of `A`. It is realized on a principal index set `S`
//! where `A[S,S]` is invertible: the images of the basis vectors indexed by
//! `S` form a basis of `W`, the projection `H_c ⊗ V -> W` has matrix
//! `X = A[S,S]⁻¹ A[S,·]`, and the induced symmetric isomorphism is
//! `q = A[S,S]`. In these coordinates
//!
//! * `α = X · α₀` where `α₀((i,j), i') = δ_{ii'} x_j`,
//! * `β(k, s) = Σ_l A[s, (k,l)] x_l`.
//!
//! When `A` has full rank `S` is everything, `X = Id` and `q = A`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::linform::{LinForm, LinFormMatrix};
use crate::tensor::FlatForm;

/// A basis of `W` given by a principal index subset of `H_c ⊗ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WBasis {
    subset: Vec<usize>,
    projection: RatMatrix,
    q: RatMatrix,
}

impl WBasis {
    /// Uses the lexicographically first rank-realizing subset.
    pub fn principal(form: &FlatForm) -> Self {
        let subset = linalg::principal_rank_subset(form.matrix()).expect("flat forms are symmetric");
        Self::new(form, subset).expect("principal subset realizes the rank")
    }

    pub fn new(form: &FlatForm, subset: Vec<usize>) -> Result<Self> {
        let m = form.matrix();
        let d = form.order();
        if let Some(&bad) = subset.iter().find(|&&s| s >= d) {
            return Err(Error::BadSubset(format!("index {bad} out of range 0..{d}")));
        }
        if subset.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadSubset("indices must be strictly increasing".into()));
        }
        let q = m.principal(&subset);
        let rank = form.rank();
        if subset.len() != rank {
            return Err(Error::BadSubset(format!("subset has {} indices, form has rank {rank}", subset.len())));
        }
        if subset.len() == d {
            return Ok(WBasis { projection: RatMatrix::identity(d), q, subset });
        }
        let q_inv = linalg::inverse(&q).map_err(|_| Error::BadSubset("principal block is singular".into()))?;
        let all: Vec<usize> = (0..d).collect();
        let projection = q_inv.mul(&m.submatrix(&subset, &all))?;
        Ok(WBasis { subset, projection, q })
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn dim(&self) -> usize {
        self.subset.len()
    }

    /// `X` with `p(e_t) = Σ_s X[s,t] p(e_s)`.
    pub fn projection(&self) -> &RatMatrix {
        &self.projection
    }

    /// The symmetric isomorphism `q_A : W -> W^∨` in this basis.
    pub fn q(&self) -> &RatMatrix {
        &self.q
    }
}

/// `α₀` (`c(n+1) × c`), or its image `X · α₀` in the coordinates of `w`.
pub fn build_alpha(c: usize, n: usize, w: Option<&WBasis>) -> Result<LinFormMatrix> {
    let nv = n + 1;
    let mut alpha = LinFormMatrix::zeros(c * nv, c, nv);
    for i in 0..c {
        for j in 0..nv {
            alpha.set(i * nv + j, i, LinForm::var(nv, j));
        }
    }
    match w {
        None => Ok(alpha),
        Some(w) => {
            if w.projection.cols() != c * nv {
                return Err(Error::BadSubset("basis belongs to a different (c, n)".into()));
            }
            if w.dim() == c * nv {
                return Ok(alpha);
            }
            alpha.left_mul_const(&w.projection)
        }
    }
}

/// Rows `β(k, s) = Σ_l m[s, (k,l)] x_l` for `s` in `subset`, for any square
/// matrix `m` of order `c(n+1)` (no wedge check).
pub fn beta_from_matrix(c: usize, n: usize, m: &RatMatrix, subset: &[usize]) -> Result<LinFormMatrix> {
    let nv = n + 1;
    if m.rows() != c * nv || m.cols() != c * nv {
        return Err(Error::ShapeMismatch(format!("matrix must be {0}x{0}", c * nv)));
    }
    let mut beta = LinFormMatrix::zeros(c, subset.len(), nv);
    for k in 0..c {
        for (col, &s) in subset.iter().enumerate() {
            let coeffs = (0..nv).map(|l| m[(s, k * nv + l)].clone()).collect();
            beta.set(k, col, LinForm::from_coeffs(coeffs));
        }
    }
    Ok(beta)
}

fn check_rank(form: &FlatForm, r: usize) -> Result<()> {
    let expected = 2 * form.charge() + r;
    let found = form.rank();
    if found != expected {
        return Err(Error::RankMismatch { expected, found });
    }
    Ok(())
}

/// `β = a_A^∨ ∘ (q_A ⊗ Id)` as a `c × dim W` matrix; requires `rank A = 2c + r`.
pub fn build_beta(form: &FlatForm, r: usize) -> Result<LinFormMatrix> {
    check_rank(form, r)?;
    let w = WBasis::principal(form);
    beta_from_matrix(form.charge(), form.dim(), form.matrix(), w.subset())
}

/// Whether `β · α` vanishes identically as a matrix of quadratic forms.
pub fn verify_monad_identity(alpha: &LinFormMatrix, beta: &LinFormMatrix) -> Result<bool> {
    Ok(beta.mul_quadratic(alpha)?.iter().flatten().all(|q| q.is_zero()))
}

#[derive(Clone, Debug, Serialize)]
pub struct Monad {
    pub c: usize,
    pub n: usize,
    pub r: usize,
    pub w_subset: Vec<usize>,
    pub alpha: LinFormMatrix,
    pub beta: LinFormMatrix,
}

impl Monad {
    pub fn build(form: &FlatForm, r: usize) -> Result<Self> {
        check_rank(form, r)?;
        let w = WBasis::principal(form);
        let alpha = build_alpha(form.charge(), form.dim(), Some(&w))?;
        let beta = beta_from_matrix(form.charge(), form.dim(), form.matrix(), w.subset())?;
        Ok(Monad { c: form.charge(), n: form.dim(), r, w_subset: w.subset, alpha, beta })
    }

    pub fn dim_w(&self) -> usize {
        self.w_subset.len()
    }

    pub fn is_complex(&self) -> bool {
        verify_monad_identity(&self.alpha, &self.beta).unwrap_or(false)
    }
}
