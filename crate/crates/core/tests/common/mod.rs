//! Independent oracles, strategies and fixtures shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;

use instanton_core::linalg::{rat, Rat};
use instanton_core::spec_file::{parse_spec, SpecFile};
use instanton_core::tensor::{flatten, FlatForm, IntTerm, TensorSpec};
use num_traits::{One, Zero};
use proptest::prelude::*;

pub fn example_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(format!("{name}.json"))
}

pub fn example(name: &str) -> SpecFile {
    parse_spec(example_path(name)).unwrap()
}

pub fn example_form(name: &str) -> FlatForm {
    example(name).form().unwrap()
}

pub fn pt(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

// ---- oracles ----

/// Rank by textbook Gaussian elimination over the rationals.
pub fn naive_rank(rows: &[Vec<Rat>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank && !a[i][col].is_zero() {
                let f = &a[i][col] / &a[rank][col];
                for j in col..cols {
                    let d = &f * &a[rank][j];
                    a[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    let mut total = Rat::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rat>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Pfaffian by expansion along the first row.
pub fn pfaffian_expansion(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    if n % 2 == 1 {
        return Rat::zero();
    }
    let mut total = Rat::zero();
    for j in 1..n {
        if m[0][j].is_zero() {
            continue;
        }
        let keep: Vec<usize> = (1..n).filter(|&k| k != j).collect();
        let minor: Vec<Vec<Rat>> = keep.iter().map(|&r| keep.iter().map(|&c| m[r][c].clone()).collect()).collect();
        let term = &m[0][j] * pfaffian_expansion(&minor);
        if j % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `γ` straight from the terms: `M[i][k] = Σ_t B_t[i][k] · (Qᵀ C_t P)`.
pub fn gamma_oracle(terms: &[IntTerm], p: &[Rat], q: &[Rat]) -> Vec<Vec<Rat>> {
    let c = terms[0].0.len();
    let mut m = vec![vec![Rat::zero(); c]; c];
    for (b, cm) in terms {
        let mut s = Rat::zero();
        for j in 0..q.len() {
            for l in 0..p.len() {
                s += &q[j] * rat(cm[j][l]) * &p[l];
            }
        }
        for i in 0..c {
            for k in 0..c {
                m[i][k] += rat(b[i][k]) * &s;
            }
        }
    }
    m
}

/// `γ` entry `(i, k)` of the charge-6 example for `P = (a,b,c,d)`, `Q = (e,f,g,h)`:
/// the nonzero entries are `(0,1) = 2ℓ`, `(2,3) = −ℓ`, `(4,5) = ℓ` (and their
/// negatives) with `ℓ = be − af − 3dg + 3ch`.
pub fn c6p3_ell(p: &[Rat], q: &[Rat]) -> Rat {
    let (a, b, c, d) = (&p[0], &p[1], &p[2], &p[3]);
    let (e, f, g, h) = (&q[0], &q[1], &q[2], &q[3]);
    b * e - a * f - rat(3) * d * g + rat(3) * c * h
}

/// The three λ of the printed charge-6 matrix, as printed.
pub fn c6p3_lambdas(p: &[Rat], q: &[Rat]) -> [Rat; 3] {
    let l = c6p3_ell(p, q);
    [rat(2) * &l, -l.clone(), l]
}

// ---- strategies ----

pub fn skew(size: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(-bound..=bound, size * size.saturating_sub(1) / 2).prop_map(move |upper| {
        let mut m = vec![vec![0; size]; size];
        let mut it = upper.into_iter();
        for i in 0..size {
            for j in i + 1..size {
                let x = it.next().unwrap();
                m[i][j] = x;
                m[j][i] = -x;
            }
        }
        m
    })
}

pub type Terms = Vec<IntTerm>;

/// `(c, n, terms)` with `2 ≤ c ≤ cmax`, `1 ≤ n ≤ nmax`, `1..=tmax` terms.
pub fn spec_parts(cmax: usize, nmax: usize, tmax: usize) -> impl Strategy<Value = (usize, usize, Terms)> {
    (2..=cmax, 1..=nmax, 1..=tmax).prop_flat_map(|(c, n, t)| {
        (Just(c), Just(n), proptest::collection::vec((skew(c, 3), skew(n + 1, 3)), t))
    })
}

pub fn form_of(c: usize, n: usize, terms: &Terms) -> FlatForm {
    flatten(&TensorSpec::new(c, n, terms).unwrap()).unwrap()
}

pub fn int_point(nv: usize, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-bound..=bound, nv)
}

/// Integer `c × c` matrix that is invertible over the rationals.
pub fn invertible(c: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), c).prop_filter("invertible", |m| {
        let r: Vec<Vec<Rat>> = m.iter().map(|row| pt(row)).collect();
        !cofactor_det(&r).is_zero()
    })
}

// ---- printed tables ----

/// `βᵀ` of the charge-6 example exactly as printed, in the library's notation.
pub const C6P3_BETA_T: [[&str; 6]; 24] = [
    ["0", "2x1", "0", "0", "0", "0"],
    ["0", "-2x0", "0", "0", "0", "0"],
    ["0", "-6x3", "0", "0", "0", "0"],
    ["0", "6x2", "0", "0", "0", "0"],
    ["-2x1", "0", "0", "0", "0", "0"],
    ["2x0", "0", "0", "0", "0", "0"],
    ["6x3", "0", "0", "0", "0", "0"],
    ["-6x2", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "-x1", "0", "0"],
    ["0", "0", "0", "x0", "0", "0"],
    ["0", "0", "0", "-3x3", "0", "0"],
    ["0", "0", "0", "3x2", "0", "0"],
    ["0", "0", "x1", "0", "0", "0"],
    ["0", "0", "x0", "0", "0", "0"],
    ["0", "0", "-3x3", "0", "0", "0"],
    ["0", "0", "3x2", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "x1"],
    ["0", "0", "0", "0", "0", "-x0"],
    ["0", "0", "0", "0", "0", "-3x3"],
    ["0", "0", "0", "0", "0", "3x2"],
    ["0", "0", "0", "0", "-x1", "0"],
    ["0", "0", "0", "0", "x0", "0"],
    ["0", "0", "0", "0", "3x3", "0"],
    ["0", "0", "0", "0", "-3x2", "0"],
];

/// `βᵀ` of the charge-5 example exactly as printed.
pub const C5P3_BETA_T: [[&str; 5]; 20] = [
    ["0", "x1", "x3", "0", "x3"],
    ["0", "-x0", "x2", "0", "x2"],
    ["0", "x3", "-x1", "0", "-x1"],
    ["0", "-x2", "-x0", "0", "-x0"],
    ["-x1", "0", "x1", "x3", "0"],
    ["x0", "0", "-x0", "0", "0"],
    ["-x3", "0", "x3", "x3", "0"],
    ["x2", "0", "-x2", "-x0-x2", "0"],
    ["-x3", "-x1", "0", "0", "x3"],
    ["x2", "x0", "0", "0", "0"],
    ["x1", "-x3", "0", "0", "x3"],
    ["x0", "x2", "0", "0", "-x0-x2"],
    ["0", "-x3", "0", "0", "-x3"],
    ["0", "0", "0", "0", "x2"],
    ["0", "-x3", "0", "0", "-x1"],
    ["0", "x0+x2", "0", "0", "-x0"],
    ["-x3", "0", "-x3", "-x3", "0"],
    ["-x2", "0", "0", "-x2", "0"],
    ["-x3", "0", "-x3", "0", "0"],
    ["x0", "0", "x0+x2", "x0", "0"],
];

/// Printed entries of the charge-5 `βᵀ` that contradict `A = Σ B_t ⊗ C_t`:
/// `(row, col, printed, computed)`.
pub const C5P3_PRINTED_DEFECTS: [(usize, usize, &str, &str); 4] = [
    (9, 0, "x2", "-x2"),
    (12, 4, "-x3", "x3"),
    (18, 0, "-x3", "x1"),
    (18, 3, "0", "x1"),
];

/// Cells where a computed table differs from a printed one.
pub fn table_diff<const W: usize>(printed: &[[&str; W]], computed: &[Vec<String>]) -> Vec<(usize, usize, String, String)> {
    let mut out = vec![];
    for (i, row) in printed.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            if computed[i][j] != *cell {
                out.push((i, j, cell.to_string(), computed[i][j].clone()));
            }
        }
    }
    out
}
