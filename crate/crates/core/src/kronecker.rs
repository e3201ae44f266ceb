//! The Kronecker module `γ(v₁ ∧ v₂) = β(v₂) ∘ α(v₁)` of a form and the
//! splitting type of the bundle on lines.
//!
//! For a line through `P` and `Q`, `γ` is the `c × c` matrix
//! `M[i][k] = Σ_{j,l} A[(i,j),(k,l)] Q_j P_l`, which for a single term
//! `B ⊗ C` is `B[i,k] · (Qᵀ C P)`. The restriction to the line is trivial
//! exactly when `M` is invertible.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::conditions::{slice_at_v, NondegStatus, Witness};
use crate::error::{Error, Result};
use crate::linalg::{self, format_rat, rat::primitive_integer_vector, Rat, RatMatrix};
use crate::sampling::{int_vec, nonzero_int_vec, stream_rng, to_rat};
use crate::tensor::FlatForm;

/// Samples per RNG stream in [`scan_lines`].
const CHUNK: usize = 64;
/// Jumping-line witnesses kept by a scan.
const MAX_WITNESSES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaEval {
    #[serde(rename = "P", with = "crate::linalg::rat::vec_as_strings")]
    pub p: Vec<Rat>,
    #[serde(rename = "Q", with = "crate::linalg::rat::vec_as_strings")]
    pub q: Vec<Rat>,
    #[serde(rename = "M")]
    pub m: RatMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Trivial,
    Jumping,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitVerdict {
    pub verdict: Verdict,
    #[serde(with = "crate::linalg::rat::as_string")]
    pub determinant: Rat,
    #[serde(with = "crate::linalg::rat::option_as_string")]
    pub pfaffian: Option<Rat>,
}

fn check_point(form: &FlatForm, name: &str, x: &[Rat]) -> Result<()> {
    let nv = form.dim() + 1;
    if x.len() != nv {
        return Err(Error::ShapeMismatch(format!("{name} has {} coordinates, expected {nv}", x.len())));
    }
    Ok(())
}

/// `γ` at `(P, Q)` without the line check; bilinear in both arguments.
pub(crate) fn gamma_matrix(form: &FlatForm, p: &[Rat], q: &[Rat]) -> RatMatrix {
    let (c, nv) = (form.charge(), form.dim() + 1);
    let a = form.matrix();
    let nz_q: Vec<usize> = (0..nv).filter(|&j| !q[j].is_zero()).collect();
    let nz_p: Vec<usize> = (0..nv).filter(|&l| !p[l].is_zero()).collect();
    RatMatrix::from_fn(c, c, |i, k| {
        let mut s = Rat::zero();
        for &j in &nz_q {
            for &l in &nz_p {
                let e = &a[(i * nv + j, k * nv + l)];
                if !e.is_zero() {
                    s += e * &q[j] * &p[l];
                }
            }
        }
        s
    })
}

/// Whether `P` and `Q` span a line (`P ∧ Q ≠ 0`).
pub fn spans_line(p: &[Rat], q: &[Rat]) -> bool {
    let m = RatMatrix::from_rows(vec![p.to_vec(), q.to_vec()]).expect("equal lengths");
    linalg::rank(&m) == 2
}

pub fn gamma_eval(form: &FlatForm, p: &[Rat], q: &[Rat]) -> Result<GammaEval> {
    check_point(form, "P", p)?;
    check_point(form, "Q", q)?;
    if !spans_line(p, q) {
        return Err(Error::DegenerateLine);
    }
    Ok(GammaEval { p: p.to_vec(), q: q.to_vec(), m: gamma_matrix(form, p, q) })
}

fn verdict_of(m: &RatMatrix) -> SplitVerdict {
    let determinant = linalg::det(m).expect("square");
    let pfaffian = if m.rows().is_multiple_of(2) && m.is_skew() {
        let pf = linalg::pfaffian(m).expect("even skew");
        assert_eq!(&pf * &pf, determinant, "Pfaffian squared must equal the determinant");
        Some(pf)
    } else {
        None
    };
    let verdict = if determinant.is_zero() { Verdict::Jumping } else { Verdict::Trivial };
    SplitVerdict { verdict, determinant, pfaffian }
}

pub fn splitting_type(form: &FlatForm, p: &[Rat], q: &[Rat]) -> Result<SplitVerdict> {
    Ok(verdict_of(&gamma_eval(form, p, q)?.m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineWitness {
    #[serde(rename = "P", with = "crate::linalg::rat::vec_as_strings")]
    pub p: Vec<Rat>,
    #[serde(rename = "Q", with = "crate::linalg::rat::vec_as_strings")]
    pub q: Vec<Rat>,
    #[serde(with = "crate::linalg::rat::as_string")]
    pub det: Rat,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub samples: usize,
    pub trivial: usize,
    pub jumping: usize,
    pub degenerate: usize,
    pub fraction_trivial: f64,
    pub witnesses: Vec<LineWitness>,
}

enum Outcome {
    Trivial,
    Jumping(LineWitness),
    Degenerate,
}

fn classify(form: &FlatForm, p: Vec<Rat>, q: Vec<Rat>) -> Outcome {
    if !spans_line(&p, &q) {
        return Outcome::Degenerate;
    }
    let m = gamma_matrix(form, &p, &q);
    let det = linalg::det(&m).expect("square");
    if det.is_zero() {
        Outcome::Jumping(LineWitness { p, q, det })
    } else {
        Outcome::Trivial
    }
}

fn summarize(samples: usize, outcomes: impl IntoIterator<Item = Outcome>) -> ScanReport {
    let mut rep = ScanReport { samples, trivial: 0, jumping: 0, degenerate: 0, fraction_trivial: 0.0, witnesses: vec![] };
    for o in outcomes {
        match o {
            Outcome::Trivial => rep.trivial += 1,
            Outcome::Degenerate => rep.degenerate += 1,
            Outcome::Jumping(w) => {
                rep.jumping += 1;
                if rep.witnesses.len() < MAX_WITNESSES {
                    rep.witnesses.push(w);
                }
            }
        }
    }
    if samples > 0 {
        rep.fraction_trivial = rep.trivial as f64 / samples as f64;
    }
    rep
}

/// Classifies `samples` random lines through integer points of `[-bound, bound]^{n+1}`.
///
/// Sample `s` is drawn from stream `s / 64` of `seed`, so the result does not
/// depend on the thread count. Pairs that do not span a line are counted as
/// degenerate, not redrawn.
pub fn scan_lines(form: &FlatForm, samples: usize, seed: u64, bound: i64) -> ScanReport {
    let nv = form.dim() + 1;
    let chunks = samples.div_ceil(CHUNK);
    let per_chunk: Vec<Vec<Outcome>> = (0..chunks)
        .into_par_iter()
        .map(|ch| {
            let mut rng = stream_rng(seed, ch as u64);
            let len = CHUNK.min(samples - ch * CHUNK);
            (0..len)
                .map(|_| {
                    let p = to_rat(&int_vec(&mut rng, nv, bound));
                    let q = to_rat(&int_vec(&mut rng, nv, bound));
                    classify(form, p, q)
                })
                .collect()
        })
        .collect();
    summarize(samples, per_chunk.into_iter().flatten())
}

/// Classifies the given lines.
pub fn scan_explicit(form: &FlatForm, lines: &[(Vec<Rat>, Vec<Rat>)]) -> Result<ScanReport> {
    for (p, q) in lines {
        check_point(form, "P", p)?;
        check_point(form, "Q", q)?;
    }
    let outcomes: Vec<Outcome> = lines.par_iter().map(|(p, q)| classify(form, p.clone(), q.clone())).collect();
    Ok(summarize(lines.len(), outcomes))
}

/// `Σ coeff[l][j] · P_l Q_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bilinear {
    coeffs: Vec<Vec<Rat>>,
}

impl Bilinear {
    /// Coefficient of `P_l Q_j`.
    pub fn coeff(&self, l: usize, j: usize) -> &Rat {
        &self.coeffs[l][j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Zero::is_zero)
    }

    pub fn eval(&self, p: &[Rat], q: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (l, row) in self.coeffs.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    s += a * &p[l] * &q[j];
                }
            }
        }
        s
    }
}

impl fmt::Display for Bilinear {
    /// Renders like `2p1q0-2p0q1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (l, row) in self.coeffs.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let neg = a < &Rat::zero();
                let mag = if neg { -a } else { a.clone() };
                if neg {
                    write!(f, "-")?;
                } else if !first {
                    write!(f, "+")?;
                }
                if !mag.is_one() {
                    write!(f, "{}", format_rat(&mag))?;
                }
                write!(f, "p{l}q{j}")?;
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for Bilinear {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `γ` with entries as bilinear forms in `P` and `Q`, recovered from its
/// values at pairs of basis vectors.
pub fn symbolic_gamma(form: &FlatForm) -> Vec<Vec<Bilinear>> {
    let (c, nv) = (form.charge(), form.dim() + 1);
    let unit = |i: usize| -> Vec<Rat> { (0..nv).map(|k| if k == i { Rat::one() } else { Rat::zero() }).collect() };
    let mut out = vec![vec![Bilinear { coeffs: vec![vec![Rat::zero(); nv]; nv] }; c]; c];
    for l in 0..nv {
        for j in 0..nv {
            let m = gamma_matrix(form, &unit(l), &unit(j));
            for (i, row) in out.iter_mut().enumerate() {
                for (k, b) in row.iter_mut().enumerate() {
                    b.coeffs[l][j] = m[(i, k)].clone();
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct KroneckerReport {
    pub k1: NondegStatus,
    pub k2: NondegStatus,
    pub rank_gamma_hat: usize,
    pub expected_2c_plus_r: usize,
    pub k3_ok: bool,
    pub printed_2n_plus_r: usize,
    pub matches_printed: bool,
}

impl KroneckerReport {
    pub fn passes(&self) -> bool {
        self.k1.is_acceptable() && self.k2.is_acceptable() && self.k3_ok
    }
}

/// Searches for `v ≠ 0` where `γ̂(v ⊗ -)` has a kernel: basis vectors first,
/// then `budget` seeded integer points in `[-10, 10]^{n+1}`.
fn k1_status(form: &FlatForm, budget: usize, seed: u64) -> NondegStatus {
    if form.rank() == form.order() {
        return NondegStatus::CertifiedFullRank;
    }
    let nv = form.dim() + 1;
    let check = |v: Vec<Rat>| {
        linalg::kernel_basis(&slice_at_v(form, &v)).into_iter().next().map(|h| Witness {
            h: primitive_integer_vector(&h),
            v: primitive_integer_vector(&v),
        })
    };
    for j in 0..nv {
        let v = (0..nv).map(|k| if k == j { Rat::one() } else { Rat::zero() }).collect();
        if let Some(w) = check(v) {
            return NondegStatus::CounterexampleFound { witness: w };
        }
    }
    let mut rng = stream_rng(seed, 1);
    for _ in 0..budget {
        if let Some(w) = check(to_rat(&nonzero_int_vec(&mut rng, nv, 10))) {
            return NondegStatus::CounterexampleFound { witness: w };
        }
    }
    if budget > 0 {
        NondegStatus::SampledNoCounterexample { samples: budget }
    } else {
        NondegStatus::Unknown
    }
}

/// (K1) injectivity of `γ̂(v ⊗ -)`, (K2) its dual surjectivity, and (K3)
/// `rank γ̂` compared against `2c + r` and against `2n + r`.
pub fn kronecker_conditions(form: &FlatForm, r: usize, budget: usize, seed: u64) -> KroneckerReport {
    let k1 = k1_status(form, budget, seed);
    let rank_gamma_hat = form.rank();
    let expected_2c_plus_r = 2 * form.charge() + r;
    let printed_2n_plus_r = 2 * form.dim() + r;
    KroneckerReport {
        k2: k1.clone(),
        k1,
        rank_gamma_hat,
        expected_2c_plus_r,
        k3_ok: rank_gamma_hat == expected_2c_plus_r,
        printed_2n_plus_r,
        matches_printed: rank_gamma_hat == printed_2n_plus_r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::tensor::{flatten, TensorSpec};

    fn pts(p: &[i64], q: &[i64]) -> (Vec<Rat>, Vec<Rat>) {
        (to_rat(p), to_rat(q))
    }

    fn small() -> FlatForm {
        let b = vec![vec![0, 1], vec![-1, 0]];
        let c = vec![vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]];
        flatten(&TensorSpec::pure(&b, &c).unwrap()).unwrap()
    }

    #[test]
    fn pure_term_gives_b_times_bilinear() {
        let f = small();
        let (p, q) = pts(&[1, 0, 0, 0], &[0, 1, 0, 0]);
        // Qᵀ C P = C[1][0] = -1
        let g = gamma_eval(&f, &p, &q).unwrap();
        assert_eq!(g.m, RatMatrix::from_i64(&[&[0, -1], &[1, 0]]));
        let v = splitting_type(&f, &p, &q).unwrap();
        assert_eq!(v.verdict, Verdict::Trivial);
        assert_eq!(v.pfaffian, Some(rat(-1)));
    }

    #[test]
    fn proportional_points_are_rejected() {
        let f = small();
        let (p, q) = pts(&[1, 2, 0, 0], &[-2, -4, 0, 0]);
        assert!(matches!(gamma_eval(&f, &p, &q), Err(Error::DegenerateLine)));
        let (p, q) = pts(&[1, 2, 0], &[0, 1, 0]);
        assert!(matches!(gamma_eval(&f, &p, &q), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn symbolic_matches_evaluation() {
        let f = small();
        let s = symbolic_gamma(&f);
        assert_eq!(s[0][1].to_string(), "-p0q1+p1q0-p2q3+p3q2");
        let (p, q) = pts(&[1, 2, 3, 4], &[5, -6, 7, 8]);
        let g = gamma_eval(&f, &p, &q).unwrap();
        for i in 0..2 {
            for k in 0..2 {
                assert_eq!(s[i][k].eval(&p, &q), g.m[(i, k)]);
            }
        }
    }

    #[test]
    fn scan_is_deterministic_and_counts_add_up() {
        let f = small();
        let a = scan_lines(&f, 130, 5, 3);
        let b = scan_lines(&f, 130, 5, 3);
        assert_eq!(a, b);
        assert_eq!(a.trivial + a.jumping + a.degenerate, 130);
        for w in &a.witnesses {
            assert!(splitting_type(&f, &w.p, &w.q).unwrap().verdict == Verdict::Jumping);
        }
    }

    #[test]
    fn zero_form_fails_k1() {
        let k = kronecker_conditions(&FlatForm::zero(3, 3), 0, 10, 0);
        assert!(matches!(k.k1, NondegStatus::CounterexampleFound { .. }));
        assert!(!k.passes());
    }
}
