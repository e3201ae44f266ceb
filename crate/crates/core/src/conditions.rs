//! Rank, non-degeneracy and symmetric-isomorphism conditions on a form, plus
//! the charge and rank-bound prechecks.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::linalg::{self, rat::primitive_integer_vector, Rat, RatMatrix};
use crate::sampling::{nonzero_int_vec, stream_rng, to_rat};
use crate::tensor::FlatForm;

/// A nonzero decomposable tensor `h ⊗ v` with `A(h ⊗ v) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(with = "crate::linalg::rat::bigint_vec")]
    pub h: Vec<BigInt>,
    #[serde(with = "crate::linalg::rat::bigint_vec")]
    pub v: Vec<BigInt>,
}

impl Witness {
    pub fn h_rat(&self) -> Vec<Rat> {
        self.h.iter().cloned().map(Rat::from_integer).collect()
    }

    pub fn v_rat(&self) -> Vec<Rat> {
        self.v.iter().cloned().map(Rat::from_integer).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum NondegStatus {
    CertifiedFullRank,
    CertifiedPureTensor,
    SampledNoCounterexample { samples: usize },
    CounterexampleFound { witness: Witness },
    Unknown,
}

impl NondegStatus {
    pub fn is_certified(&self) -> bool {
        matches!(self, NondegStatus::CertifiedFullRank | NondegStatus::CertifiedPureTensor)
    }

    /// Certified, or sampled without finding a counterexample.
    pub fn is_acceptable(&self) -> bool {
        self.is_certified() || matches!(self, NondegStatus::SampledNoCounterexample { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Precheck {
    Ok,
    ChargeOneForbidden,
    ChargeTwoForbidden,
    RankBoundViolated,
}

#[derive(Clone, Copy, Debug)]
pub struct NondegStrategy {
    /// Random `(h, v)` pairs tried when no certificate applies; `0` disables sampling.
    pub samples: usize,
    pub seed: u64,
    /// Coordinates are drawn from `[-bound, bound]`.
    pub bound: i64,
}

impl Default for NondegStrategy {
    fn default() -> Self {
        NondegStrategy { samples: 1000, seed: 0, bound: 10 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    pub c: usize,
    pub n: usize,
    pub r: usize,
    pub rank_a: usize,
    pub a1_expected: usize,
    pub a1_ok: bool,
    pub a2_status: NondegStatus,
    pub a3_ok: bool,
    pub q_subset: Vec<usize>,
    pub precheck: Precheck,
    pub warnings: Vec<String>,
}

impl ConditionReport {
    /// All three conditions hold and no precheck forbids the charge or rank.
    pub fn passes(&self) -> bool {
        self.linear_algebra_passes() && self.precheck == Precheck::Ok
    }

    pub fn linear_algebra_passes(&self) -> bool {
        self.a1_ok && self.a2_status.is_acceptable() && self.a3_ok
    }
}

pub fn precheck(c: usize, n: usize, r: usize) -> Precheck {
    match c {
        1 => Precheck::ChargeOneForbidden,
        2 => Precheck::ChargeTwoForbidden,
        _ if r > n.saturating_sub(1) * c => Precheck::RankBoundViolated,
        _ => Precheck::Ok,
    }
}

pub fn check_conditions(form: &FlatForm, r: usize, strategy: NondegStrategy) -> ConditionReport {
    let (c, n) = (form.charge(), form.dim());
    let rank_a = form.rank();
    let a1_expected = 2 * c + r;
    let a1_ok = rank_a == a1_expected;

    let a2_status = if rank_a == form.order() {
        NondegStatus::CertifiedFullRank
    } else if pure_tensor_certified(form) {
        NondegStatus::CertifiedPureTensor
    } else {
        match nondegeneracy_witness_search(form, strategy.samples, strategy.seed, strategy.bound) {
            Some(w) => NondegStatus::CounterexampleFound { witness: w },
            None if strategy.samples > 0 => NondegStatus::SampledNoCounterexample { samples: strategy.samples },
            None => NondegStatus::Unknown,
        }
    };

    let q_subset = linalg::principal_rank_subset(form.matrix()).expect("flat forms are symmetric");
    let q = form.matrix().principal(&q_subset);
    let a3_ok = q_subset.len() == a1_expected
        && q.is_symmetric()
        && !linalg::det(&q).map(|d| d.is_zero()).unwrap_or(true);

    let precheck = precheck(c, n, r);
    let mut warnings = Vec::new();
    match precheck {
        Precheck::ChargeOneForbidden => {
            warnings.push("charge 1: Λ²H_1 is zero, so the form is the zero map, which is degenerate".into())
        }
        Precheck::ChargeTwoForbidden => {
            let mut w = String::from("charge 2 is excluded by the nonexistence result for c = 2");
            if a1_ok && a2_status.is_acceptable() && a3_ok {
                w.push_str("; note that the linear-algebra conditions on this form do pass");
            }
            warnings.push(w);
        }
        Precheck::RankBoundViolated => {
            warnings.push(format!("rank r = {r} exceeds the bound (n-1)c = {}", n.saturating_sub(1) * c))
        }
        Precheck::Ok => {}
    }
    if matches!(a2_status, NondegStatus::SampledNoCounterexample { .. }) {
        warnings.push("non-degeneracy is sampled, not certified".into());
    }
    ConditionReport { c, n, r, rank_a, a1_expected, a1_ok, a2_status, a3_ok, q_subset, precheck, warnings }
}

fn pure_tensor_certified(form: &FlatForm) -> bool {
    match form.pure_factors() {
        Some((b, cm)) => linalg::rank(b) == b.rows() && linalg::rank(cm) == cm.rows(),
        None => false,
    }
}

/// `A · (e_i ⊗ v)` for each `i`, as the columns of a `c(n+1) × c` matrix.
pub fn slice_at_v(form: &FlatForm, v: &[Rat]) -> RatMatrix {
    let (c, nv) = (form.charge(), form.dim() + 1);
    let m = form.matrix();
    RatMatrix::from_fn(form.order(), c, |row, i| {
        (0..nv).filter(|&j| !v[j].is_zero()).fold(Rat::zero(), |acc, j| acc + &m[(row, i * nv + j)] * &v[j])
    })
}

/// `A · (h ⊗ e_j)` for each `j`, as the columns of a `c(n+1) × (n+1)` matrix.
pub fn slice_at_h(form: &FlatForm, h: &[Rat]) -> RatMatrix {
    let (c, nv) = (form.charge(), form.dim() + 1);
    let m = form.matrix();
    RatMatrix::from_fn(form.order(), nv, |row, j| {
        (0..c).filter(|&i| !h[i].is_zero()).fold(Rat::zero(), |acc, i| acc + &m[(row, i * nv + j)] * &h[i])
    })
}

fn witness(h: &[Rat], v: &[Rat]) -> Witness {
    Witness { h: primitive_integer_vector(h), v: primitive_integer_vector(v) }
}

fn unit(len: usize, i: usize) -> Vec<Rat> {
    (0..len).map(|k| if k == i { linalg::rat(1) } else { Rat::zero() }).collect()
}

/// Searches for `h ⊗ v ≠ 0` with `A(h ⊗ v) = 0`.
///
/// Order: kernels of the slices at the basis vectors `e_j` of `V`, then at the
/// basis vectors of `H_c`, then `budget` seeded samples, each testing the
/// kernel of the slice at a random `v` and at a random `h`. A `None` is not
/// a certificate of non-degeneracy unless the form has full rank.
pub fn nondegeneracy_witness_search(form: &FlatForm, budget: usize, seed: u64, bound: i64) -> Option<Witness> {
    if form.rank() == form.order() {
        return None;
    }
    let (c, nv) = (form.charge(), form.dim() + 1);
    for j in 0..nv {
        let v = unit(nv, j);
        if let Some(h) = linalg::kernel_basis(&slice_at_v(form, &v)).into_iter().next() {
            return Some(witness(&h, &v));
        }
    }
    for i in 0..c {
        let h = unit(c, i);
        if let Some(v) = linalg::kernel_basis(&slice_at_h(form, &h)).into_iter().next() {
            return Some(witness(&h, &v));
        }
    }
    let mut rng = stream_rng(seed, 0);
    for _ in 0..budget {
        let v = to_rat(&nonzero_int_vec(&mut rng, nv, bound));
        if let Some(h) = linalg::kernel_basis(&slice_at_v(form, &v)).into_iter().next() {
            return Some(witness(&h, &v));
        }
        let h = to_rat(&nonzero_int_vec(&mut rng, c, bound));
        if let Some(v) = linalg::kernel_basis(&slice_at_h(form, &h)).into_iter().next() {
            return Some(witness(&h, &v));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{flatten, TensorSpec};

    #[test]
    fn zero_form_witness_is_first_basis_pair() {
        let f = FlatForm::zero(3, 3);
        let w = nondegeneracy_witness_search(&f, 10, 0, 10).unwrap();
        assert_eq!(w.h, vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)]);
        assert_eq!(w.v, vec![BigInt::from(1), BigInt::from(0), BigInt::from(0), BigInt::from(0)]);
    }

    #[test]
    fn prechecks() {
        assert_eq!(precheck(1, 3, 0), Precheck::ChargeOneForbidden);
        assert_eq!(precheck(2, 3, 4), Precheck::ChargeTwoForbidden);
        assert_eq!(precheck(3, 3, 7), Precheck::RankBoundViolated);
        assert_eq!(precheck(3, 3, 6), Precheck::Ok);
    }

    #[test]
    fn charge_two_full_rank_is_flagged_but_linear_algebra_passes() {
        let b = vec![vec![0, 1], vec![-1, 0]];
        let c = vec![vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]];
        let f = flatten(&TensorSpec::pure(&b, &c).unwrap()).unwrap();
        let rep = check_conditions(&f, 4, NondegStrategy::default());
        assert_eq!(rep.precheck, Precheck::ChargeTwoForbidden);
        assert!(rep.linear_algebra_passes());
        assert!(!rep.passes());
        assert!(rep.warnings[0].contains("do pass"));
    }

    #[test]
    fn degenerate_pure_tensor_gets_counterexample() {
        // B has a two-dimensional kernel spanned by e2, e3
        let b = vec![vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 0]];
        let c = vec![vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]];
        let f = flatten(&TensorSpec::pure(&b, &c).unwrap()).unwrap();
        let rep = check_conditions(&f, 0, NondegStrategy::default());
        assert!(rep.a1_ok);
        let NondegStatus::CounterexampleFound { witness } = &rep.a2_status else {
            panic!("expected a counterexample, got {:?}", rep.a2_status)
        };
        let bm = crate::linalg::RatMatrix::from_i64_rows(&b).unwrap();
        assert!(bm.mul_vec(&witness.h_rat()).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn deterministic_sweep_finds_off_axis_kernel() {
        let b = vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]];
        let c = vec![vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]];
        let f = flatten(&TensorSpec::pure(&b, &c).unwrap()).unwrap();
        // ker B = (1, 0, 1): not a coordinate vector, but the slice at any v finds it
        let rep = check_conditions(&f, 0, NondegStrategy { samples: 0, seed: 0, bound: 10 });
        assert!(matches!(rep.a2_status, NondegStatus::CounterexampleFound { .. }));
    }
}
