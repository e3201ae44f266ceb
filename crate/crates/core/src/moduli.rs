//! Moduli dimension and checks of the `GL(H_c)` action.

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kronecker::{gamma_matrix, spans_line, Verdict};
use crate::linalg::{self, Rat, RatMatrix};
use crate::sampling::{int_vec, stream_rng, to_rat};
use crate::tensor::{act, scalar_identity, FlatForm};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuliInfo {
    pub c: usize,
    pub n: usize,
    pub dim: i64,
    pub ambient_dim: i64,
    pub group_dim: i64,
    pub possibly_empty: bool,
}

/// `C(c,2)·C(n+1,2) − c²`, for `c, n ≥ 3`.
pub fn moduli_dim(c: usize, n: usize) -> Result<ModuliInfo> {
    if c < 3 || n < 3 {
        return Err(Error::HypothesisViolation { c, n });
    }
    let (ci, ni) = (c as i64, n as i64);
    let ambient_dim = ci * (ci - 1) / 2 * ((ni + 1) * ni / 2);
    let group_dim = ci * ci;
    let dim = ambient_dim - group_dim;
    Ok(ModuliInfo { c, n, dim, ambient_dim, group_dim, possibly_empty: dim < 0 })
}

/// Unimodular integer matrix: a product of `steps` elementary row operations
/// with multipliers in `[-3, 3]`.
pub fn random_unimodular(rng: &mut impl Rng, c: usize, steps: usize) -> RatMatrix {
    let mut h = RatMatrix::identity(c);
    if c < 2 {
        return h;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..c);
        let mut j = rng.gen_range(0..c - 1);
        if j >= i {
            j += 1;
        }
        let s = Rat::from_integer(rng.gen_range(-3i64..=3).into());
        if s.is_zero() {
            continue;
        }
        for col in 0..c {
            let add = &h[(j, col)] * &s;
            h[(i, col)] += add;
        }
    }
    h
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OrbitReport {
    pub trials: usize,
    pub panel_lines: usize,
    pub violations: Vec<String>,
}

impl OrbitReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

const PANEL: usize = 20;

fn panel(form: &FlatForm, seed: u64) -> Vec<(Vec<Rat>, Vec<Rat>)> {
    let nv = form.dim() + 1;
    let mut rng = stream_rng(seed, u64::MAX);
    let mut out = Vec::with_capacity(PANEL);
    while out.len() < PANEL {
        let p = to_rat(&int_vec(&mut rng, nv, 10));
        let q = to_rat(&int_vec(&mut rng, nv, 10));
        if spans_line(&p, &q) {
            out.push((p, q));
        }
    }
    out
}

fn verdicts(form: &FlatForm, lines: &[(Vec<Rat>, Vec<Rat>)]) -> Vec<(RatMatrix, Verdict)> {
    lines
        .iter()
        .map(|(p, q)| {
            let m = gamma_matrix(form, p, q);
            let v = if linalg::det(&m).expect("square").is_zero() { Verdict::Jumping } else { Verdict::Trivial };
            (m, v)
        })
        .collect()
}

/// Applies `trials` seeded unimodular `h` and checks that rank, wedge
/// membership and the verdict on a fixed panel of lines are preserved, that
/// `γ` transforms as `h γ hᵀ`, and that `±Id` act trivially.
pub fn orbit_probe(form: &FlatForm, trials: usize, seed: u64) -> OrbitReport {
    let c = form.charge();
    let lines = panel(form, seed);
    let base = verdicts(form, &lines);
    let rank = form.rank();
    let mut violations = Vec::new();

    for s in [1, -1] {
        match act(&scalar_identity(c, s), form) {
            Ok(g) if g.matrix() == form.matrix() => {}
            _ => violations.push(format!("act({s}·Id) does not fix the form")),
        }
    }

    let per_trial: Vec<Vec<String>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream_rng(seed, t as u64);
            let h = random_unimodular(&mut rng, c, 4 * c);
            let mut v = Vec::new();
            if linalg::det(&h).map(|d| d.abs() != Rat::one()).unwrap_or(true) {
                v.push(format!("trial {t}: generated matrix is not unimodular"));
                return v;
            }
            let g = match act(&h, form) {
                Ok(g) => g,
                Err(e) => return vec![format!("trial {t}: {e}")],
            };
            if g.rank() != rank {
                v.push(format!("trial {t}: rank {} != {rank}", g.rank()));
            }
            if !g.wedge_membership() {
                v.push(format!("trial {t}: wedge membership lost"));
            }
            let ht = h.transpose();
            for (idx, ((m, verdict), (gm, gv))) in base.iter().zip(verdicts(&g, &lines)).enumerate() {
                if *verdict != gv {
                    v.push(format!("trial {t}: verdict changed on panel line {idx}"));
                }
                let expected = h.mul(m).and_then(|x| x.mul(&ht)).expect("square");
                if expected != gm {
                    v.push(format!("trial {t}: gamma not equivariant on panel line {idx}"));
                }
            }
            v
        })
        .collect();
    violations.extend(per_trial.into_iter().flatten());
    OrbitReport { trials, panel_lines: lines.len(), violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(moduli_dim(6, 3).unwrap().dim, 54);
        assert_eq!(moduli_dim(5, 3).unwrap().dim, 35);
        assert_eq!(moduli_dim(3, 3).unwrap().dim, 9);
        assert!(matches!(moduli_dim(2, 3), Err(Error::HypothesisViolation { c: 2, n: 3 })));
        assert!(matches!(moduli_dim(3, 2), Err(Error::HypothesisViolation { .. })));
    }

    #[test]
    fn unimodular_has_unit_determinant() {
        let mut rng = stream_rng(3, 0);
        for c in 1..6 {
            let h = random_unimodular(&mut rng, c, 20);
            assert_eq!(linalg::det(&h).unwrap().abs(), Rat::one());
        }
    }

    #[test]
    fn zero_form_probe_is_clean() {
        let rep = orbit_probe(&FlatForm::zero(3, 3), 5, 0);
        assert!(rep.ok(), "{:?}", rep.violations);
    }
}
