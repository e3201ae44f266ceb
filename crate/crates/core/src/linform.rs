//! Matrices whose entries are linear forms in `x_0, …, x_n`.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{format_rat, Rat, RatMatrix};

/// `Σ_j coeffs[j] · x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinForm {
    coeffs: Vec<Rat>,
}

impl LinForm {
    pub fn zero(nvars: usize) -> Self {
        LinForm { coeffs: vec![Rat::zero(); nvars] }
    }

    pub fn var(nvars: usize, j: usize) -> Self {
        let mut f = Self::zero(nvars);
        f.coeffs[j] = Rat::one();
        f
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        LinForm { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        self.coeffs
            .iter()
            .zip(point)
            .filter(|(a, _)| !a.is_zero())
            .fold(Rat::zero(), |acc, (a, x)| acc + a * x)
    }

    fn add_scaled(&mut self, other: &LinForm, s: &Rat) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b * s;
            }
        }
    }
}

impl fmt::Display for LinForm {
    /// Renders like `2x1 - 6x3` or `-x0-x2`; zero renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let neg = a < &Rat::zero();
            let mag = if neg { -a } else { a.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, "-")?,
                (false, false) => write!(f, "+")?,
                (true, false) => {}
            }
            if !mag.is_one() {
                write!(f, "{}", format_rat(&mag))?;
            }
            write!(f, "x{j}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for LinForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Quadratic form stored as an upper-triangular coefficient table:
/// `coeff(j, l)` with `j <= l` multiplies `x_j x_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    nvars: usize,
    coeffs: Vec<Rat>,
}

impl QuadForm {
    fn zero(nvars: usize) -> Self {
        QuadForm { nvars, coeffs: vec![Rat::zero(); nvars * nvars] }
    }

    pub fn coeff(&self, j: usize, l: usize) -> &Rat {
        let (a, b) = if j <= l { (j, l) } else { (l, j) };
        &self.coeffs[a * self.nvars + b]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn add_product(&mut self, p: &LinForm, q: &LinForm) {
        for (j, a) in p.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (l, b) in q.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (x, y) = if j <= l { (j, l) } else { (l, j) };
                self.coeffs[x * self.nvars + y] += a * b;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinFormMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<LinForm>,
}

impl LinFormMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        LinFormMatrix { rows, cols, nvars, entries: vec![LinForm::zero(nvars); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &LinForm {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: LinForm) {
        assert_eq!(f.nvars(), self.nvars, "linear form arity");
        self.entries[i * self.cols + j] = f;
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Coefficient matrix of `x_l`.
    pub fn coefficient_matrix(&self, l: usize) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).coeffs[l].clone())
    }

    pub fn eval(&self, point: &[Rat]) -> Result<RatMatrix> {
        if point.len() != self.nvars {
            return Err(Error::ShapeMismatch(format!(
                "point has {} coordinates, forms have {} variables",
                point.len(),
                self.nvars
            )));
        }
        Ok(RatMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(point)))
    }

    /// `R · self` for a constant matrix `R`.
    pub fn left_mul_const(&self, r: &RatMatrix) -> Result<Self> {
        if r.cols() != self.rows {
            return Err(Error::ShapeMismatch("constant factor does not compose".into()));
        }
        let mut out = Self::zeros(r.rows(), self.cols, self.nvars);
        for i in 0..r.rows() {
            for k in 0..self.rows {
                let s = &r[(i, k)];
                if s.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    out.entries[i * self.cols + j].add_scaled(self.get(k, j), s);
                }
            }
        }
        Ok(out)
    }

    /// `self · other` as a matrix of quadratic forms.
    pub fn mul_quadratic(&self, other: &LinFormMatrix) -> Result<Vec<Vec<QuadForm>>> {
        if self.cols != other.rows || self.nvars != other.nvars {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose {}x{} with {}x{} (variables {} vs {})",
                self.rows, self.cols, other.rows, other.cols, self.nvars, other.nvars
            )));
        }
        let mut out = vec![vec![QuadForm::zero(self.nvars); other.cols]; self.rows];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, q) in row.iter_mut().enumerate() {
                for k in 0..self.cols {
                    q.add_product(self.get(i, k), other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl fmt::Display for LinFormMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            write!(f, "[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{c:>width$}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl Serialize for LinFormMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}
