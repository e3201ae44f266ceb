//! Random example forms of maximal rank.

use rand::Rng;
use serde::Serialize;

use crate::conditions::{check_conditions, ConditionReport, NondegStrategy};
use crate::error::{Error, Result};
use crate::sampling::stream_rng;
use crate::spec_file::{SpecFile, SpecTerm};

pub const MAX_ATTEMPTS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// One term `B ⊗ C` with `B`, `C` block diagonal in `[[0, λ], [−λ, 0]]` blocks.
    Pure,
    /// `t` terms with random entries in `{−1, 0, 1}`.
    Sum(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct Generated {
    pub spec: SpecFile,
    pub attempts: usize,
    pub conditions: ConditionReport,
}

fn block_skew(rng: &mut impl Rng, size: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; size]; size];
    for b in 0..size / 2 {
        let mut lambda = 0;
        while lambda == 0 {
            lambda = rng.gen_range(-5..=5);
        }
        m[2 * b][2 * b + 1] = lambda;
        m[2 * b + 1][2 * b] = -lambda;
    }
    m
}

fn random_skew(rng: &mut impl Rng, size: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; size]; size];
    for i in 0..size {
        for j in i + 1..size {
            let x = rng.gen_range(-1..=1);
            m[i][j] = x;
            m[j][i] = -x;
        }
    }
    m
}

/// Draws specs until one passes all conditions with `r = (n−1)c`, at most
/// [`MAX_ATTEMPTS`] times. Attempt `a` uses stream `a` of `seed`.
pub fn generate(c: usize, n: usize, mode: Mode, seed: u64) -> Result<Generated> {
    if c < 3 || n < 3 {
        return Err(Error::HypothesisViolation { c, n });
    }
    match mode {
        Mode::Pure if c % 2 == 1 || (n + 1) % 2 == 1 => {
            return Err(Error::Degenerate(format!(
                "pure mode needs c and n+1 even (got c = {c}, n+1 = {}): a skew matrix of odd order is singular, \
                 so every pure tensor would be degenerate; use sum mode",
                n + 1
            )))
        }
        Mode::Sum(0) => return Err(Error::Usage("sum mode needs at least one term".into())),
        _ => {}
    }
    let r = (n - 1) * c;
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = stream_rng(seed, attempt as u64);
        let terms = match mode {
            Mode::Pure => vec![SpecTerm { b: block_skew(&mut rng, c), c: block_skew(&mut rng, n + 1) }],
            Mode::Sum(t) => (0..t)
                .map(|_| SpecTerm { b: random_skew(&mut rng, c), c: random_skew(&mut rng, n + 1) })
                .collect(),
        };
        let label = match mode {
            Mode::Pure => "pure".to_string(),
            Mode::Sum(t) => format!("sum{t}"),
        };
        let spec = SpecFile { name: Some(format!("c{c}n{n}-{label}-seed{seed}")), c, n, r, terms };
        let form = spec.form()?;
        if form.rank() != 2 * c + r {
            continue;
        }
        let conditions = check_conditions(&form, r, NondegStrategy { seed, ..Default::default() });
        if conditions.passes() {
            return Ok(Generated { spec, attempts: attempt + 1, conditions });
        }
    }
    Err(Error::GenerationExhausted { attempts: MAX_ATTEMPTS })
}
