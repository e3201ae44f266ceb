//! The form `A ∈ Λ²H_c^∨ ⊗ Λ²V^∨`, its flattening to a symmetric matrix on
//! `H_c ⊗ V`, and the `GL(H_c)` action.
//!
//! Basis vector `h_i ⊗ v_j` of `H_c ⊗ V` has flat index `i * (n + 1) + j`, so
//! the flattened matrix of a pure tensor `B ⊗ C` is the Kronecker product.

use crate::error::{Error, Result};
use crate::linalg::{self, rat, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorTerm {
    pub b: RatMatrix,
    pub c: RatMatrix,
}

/// `Σ_t B_t ⊗ C_t` with integer skew `B_t` (`c × c`) and `C_t` (`(n+1) × (n+1)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSpec {
    c: usize,
    n: usize,
    terms: Vec<TensorTerm>,
}

/// An integer term `(B, C)` given by rows.
pub type IntTerm = (Vec<Vec<i64>>, Vec<Vec<i64>>);

impl TensorSpec {
    pub fn new(c: usize, n: usize, terms: &[IntTerm]) -> Result<Self> {
        if c == 0 || n == 0 {
            return Err(Error::Degenerate(format!("need c >= 1 and n >= 1, got c = {c}, n = {n}")));
        }
        let mut out = Vec::with_capacity(terms.len());
        for (t, (b, cm)) in terms.iter().enumerate() {
            let b = square(b, c, &format!("terms[{t}].B"))?;
            let cm = square(cm, n + 1, &format!("terms[{t}].C"))?;
            if !b.is_skew() {
                return Err(Error::NotSkew(format!("terms[{t}].B")));
            }
            if !cm.is_skew() {
                return Err(Error::NotSkew(format!("terms[{t}].C")));
            }
            out.push(TensorTerm { b, c: cm });
        }
        Ok(TensorSpec { c, n, terms: out })
    }

    pub fn pure(b: &[Vec<i64>], cm: &[Vec<i64>]) -> Result<Self> {
        let c = b.len();
        let n = cm.len().checked_sub(1).ok_or_else(|| Error::Degenerate("empty C".into()))?;
        Self::new(c, n, &[(b.to_vec(), cm.to_vec())])
    }

    pub fn charge(&self) -> usize {
        self.c
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[TensorTerm] {
        &self.terms
    }
}

fn square(rows: &[Vec<i64>], size: usize, what: &str) -> Result<RatMatrix> {
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(Error::ShapeMismatch(format!("{what} must be {size}x{size}")));
    }
    RatMatrix::from_i64_rows(rows)
}

/// Symmetric `c(n+1)` square matrix of `A` as a bilinear form on `H_c ⊗ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatForm {
    c: usize,
    n: usize,
    matrix: RatMatrix,
    // Set when A is known to be a single B ⊗ C; kept up to date by `act`.
    pure: Option<(RatMatrix, RatMatrix)>,
}

impl FlatForm {
    pub fn zero(c: usize, n: usize) -> Self {
        let d = c * (n + 1);
        FlatForm { c, n, matrix: RatMatrix::zeros(d, d), pure: None }
    }

    /// Wraps a raw matrix after checking shape, symmetry and H-swap antisymmetry.
    pub fn from_matrix(c: usize, n: usize, matrix: RatMatrix) -> Result<Self> {
        let d = c * (n + 1);
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::ShapeMismatch(format!(
                "form for c = {c}, n = {n} must be {d}x{d}, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !matrix.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if !h_swap_antisymmetric(c, n, &matrix) {
            return Err(Error::NotSkew("form is not antisymmetric in the H_c factor".into()));
        }
        Ok(FlatForm { c, n, matrix, pure: None })
    }

    pub fn charge(&self) -> usize {
        self.c
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `c * (n + 1)`.
    pub fn order(&self) -> usize {
        self.c * (self.n + 1)
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * (self.n + 1) + j
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix)
    }

    pub fn pure_factors(&self) -> Option<(&RatMatrix, &RatMatrix)> {
        self.pure.as_ref().map(|(b, c)| (b, c))
    }

    pub fn wedge_membership(&self) -> bool {
        wedge_membership(self.c, self.n, &self.matrix)
    }
}

/// `M[(i,j),(k,l)] = Σ_t B_t[i,k] · C_t[j,l]`.
pub fn flatten(spec: &TensorSpec) -> Result<FlatForm> {
    let (c, n) = (spec.c, spec.n);
    let d = c * (n + 1);
    let mut m = RatMatrix::zeros(d, d);
    for t in &spec.terms {
        if t.b.rows() != c || t.c.rows() != n + 1 {
            return Err(Error::ShapeMismatch("term does not match (c, n)".into()));
        }
        if !t.b.is_skew() || !t.c.is_skew() {
            return Err(Error::NotSkew("tensor factor".into()));
        }
        m = m.add(&t.b.kron(&t.c))?;
    }
    let pure = match spec.terms.as_slice() {
        [t] => Some((t.b.clone(), t.c.clone())),
        _ => None,
    };
    Ok(FlatForm { c, n, matrix: m, pure })
}

fn h_swap_antisymmetric(c: usize, n: usize, m: &RatMatrix) -> bool {
    let w = n + 1;
    for i in 0..c {
        for k in i..c {
            for j in 0..w {
                for l in 0..w {
                    if m[(i * w + j, k * w + l)] != -&m[(k * w + j, i * w + l)] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Whether a raw matrix is the flattening of an element of `Λ²H_c^∨ ⊗ Λ²V^∨`:
/// symmetric and antisymmetric under swapping the `H_c` indices.
pub fn wedge_membership(c: usize, n: usize, m: &RatMatrix) -> bool {
    let d = c * (n + 1);
    m.rows() == d && m.cols() == d && m.is_symmetric() && h_swap_antisymmetric(c, n, m)
}

/// `(h ⊗ Id) · M · (hᵀ ⊗ Id)`.
pub fn act(h: &RatMatrix, form: &FlatForm) -> Result<FlatForm> {
    let c = form.c;
    if h.rows() != c || h.cols() != c {
        return Err(Error::ShapeMismatch(format!("group element must be {c}x{c}")));
    }
    if linalg::rank(h) < c {
        return Err(Error::Singular);
    }
    let id = RatMatrix::identity(form.n + 1);
    let left = h.kron(&id);
    let right = h.transpose().kron(&id);
    let matrix = left.mul(&form.matrix)?.mul(&right)?;
    let pure = match &form.pure {
        Some((b, cm)) => Some((h.mul(b)?.mul(&h.transpose())?, cm.clone())),
        None => None,
    };
    Ok(FlatForm { c, n: form.n, matrix, pure })
}

/// `-Id` and `Id` of the right size, for isotropy checks.
pub fn scalar_identity(c: usize, s: i64) -> RatMatrix {
    RatMatrix::identity(c).scale(&rat(s))
}
