//! Cohomology of the bundle `E` defined by the monad of a form.
//!
//! With `K = ker(β : W ⊗ O -> H_c^∨ ⊗ O(1))` and `0 -> H_c ⊗ O(-1) -> K -> E -> 0`,
//! for `n ≥ 3`:
//!
//! * `h⁰(E(k)) = dim ker σ_k − c · h⁰(O(k−1))`,
//! * `h¹(E(k)) = dim coker σ_k`,
//! * `hⁱ(E(k)) = 0` for `2 ≤ i ≤ n−2`,
//! * `h^{n−1}(E(k)) = h¹(E(−k−n−1))` and `hⁿ(E(k)) = h⁰(E(−k−n−1))` by Serre
//!   duality and `E ≅ E^∨`,
//!
//! where `σ_k : W ⊗ S_k -> H_c^∨ ⊗ S_{k+1}` is `β` on global sections.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::Serialize;

use crate::conditions::{check_conditions, ConditionReport, NondegStrategy};
use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::linform::LinFormMatrix;
use crate::monad::build_beta;
use crate::tensor::FlatForm;

/// `hⁱ(P^n, O(k))`.
pub fn bott_h(i: usize, k: i64, n: usize) -> u64 {
    let nn = n as i64;
    if i == 0 && k >= 0 {
        binomial((nn + k) as u64, n as u64)
    } else if i == n && k < -nn {
        binomial((-k - 1) as u64, n as u64)
    } else {
        0
    }
}

/// `χ(O(k)) = C(n+k, n)` as a polynomial in `k`.
pub fn euler_o(k: i64, n: usize) -> BigInt {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 1..=n as i64 {
        num *= k + i;
        den *= i;
    }
    num / den
}

/// Exponent vectors of degree `d` in `nvars` variables, graded lex with
/// `x_0 > x_1 > …`. Empty for negative `d`.
pub fn monomials(nvars: usize, d: i64) -> Vec<Vec<u32>> {
    fn rec(rest: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(rest - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d >= 0 && nvars > 0 {
        rec(nvars, d as u32, &mut Vec::with_capacity(nvars), &mut out);
    }
    out
}

fn section_map_from_beta(beta: &LinFormMatrix, k: i64) -> RatMatrix {
    let nv = beta.nvars();
    let src = monomials(nv, k);
    let dst = monomials(nv, k + 1);
    let dst_index: HashMap<&[u32], usize> = dst.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let (c, dim_w) = (beta.rows(), beta.cols());
    let mut out = RatMatrix::zeros(c * dst.len(), dim_w * src.len());
    for kk in 0..c {
        for w in 0..dim_w {
            let form = beta.get(kk, w);
            for (l, a) in form.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (mi, m) in src.iter().enumerate() {
                    let mut prod = m.clone();
                    prod[l] += 1;
                    let row = kk * dst.len() + dst_index[prod.as_slice()];
                    out[(row, w * src.len() + mi)] += a;
                }
            }
        }
    }
    out
}

/// `β` on global sections of the twist by `k`, columns indexed by
/// `(w, monomial of degree k)` and rows by `(h, monomial of degree k+1)`.
pub fn section_map(form: &FlatForm, r: usize, k: i64) -> Result<RatMatrix> {
    Ok(section_map_from_beta(&build_beta(form, r)?, k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    Direct,
    ForcedZero,
    SerreDual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CohomEntry {
    pub dim: u64,
    pub cert: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub i: usize,
    pub k: i64,
    pub computed: u64,
    pub expected: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomTable {
    pub c: usize,
    pub n: usize,
    pub r: usize,
    pub kmin: i64,
    pub kmax: i64,
    #[serde(serialize_with = "entries_by_pair")]
    pub entries: BTreeMap<(usize, i64), CohomEntry>,
    /// Disagreements with the instanton table `hⁱ(E(k))` for `-n-1 ≤ k ≤ 0`.
    pub discrepancies: Vec<Discrepancy>,
    /// Twists where `Σ (−1)ⁱ hⁱ` differs from the Euler characteristic of the monad.
    pub euler_mismatches: Vec<i64>,
}

fn entries_by_pair<S: serde::Serializer>(m: &BTreeMap<(usize, i64), CohomEntry>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(m.len()))?;
    for ((i, k), e) in m {
        map.serialize_entry(&format!("({i},{k})"), e)?;
    }
    map.end()
}

impl CohomTable {
    pub fn get(&self, i: usize, k: i64) -> Option<u64> {
        self.entries.get(&(i, k)).map(|e| e.dim)
    }

    pub fn entry(&self, i: usize, k: i64) -> Option<&CohomEntry> {
        self.entries.get(&(i, k))
    }

    /// `Σ (−1)ⁱ hⁱ(E(k))`.
    pub fn euler(&self, k: i64) -> Option<i64> {
        (0..=self.n)
            .map(|i| self.get(i, k).map(|d| if i % 2 == 0 { d as i64 } else { -(d as i64) }))
            .sum()
    }

    pub fn is_consistent(&self) -> bool {
        self.discrepancies.is_empty() && self.euler_mismatches.is_empty()
    }
}

/// Expected `hⁱ(E(k))` of an orthogonal instanton of charge `c` and rank `r`
/// without global sections, for `-n-1 ≤ k ≤ 0`.
pub fn expected_h(i: usize, k: i64, c: usize, n: usize, r: usize) -> Option<i64> {
    let nn = n as i64;
    if !(-nn - 1..=0).contains(&k) {
        return None;
    }
    let (c, r) = (c as i64, r as i64);
    Some(match (i, k) {
        (1, -1) => c,
        (1, 0) => (nn - 1) * c - r,
        _ if i == n - 1 && k == -nn => c,
        _ if i == n - 1 && k == -nn - 1 => (nn - 1) * c - r,
        _ => 0,
    })
}

/// `(h⁰(E(k)), h¹(E(k)))` from the section map.
fn direct(beta: &LinFormMatrix, c: usize, n: usize, k: i64) -> (u64, u64) {
    let s = section_map_from_beta(beta, k);
    let rank = linalg::rank(&s) as u64;
    let ker = s.cols() as u64 - rank;
    let coker = s.rows() as u64 - rank;
    let h0 = ker.saturating_sub(c as u64 * bott_h(0, k - 1, n));
    (h0, coker)
}

pub fn h_table(form: &FlatForm, r: usize, kmin: i64, kmax: i64) -> Result<CohomTable> {
    let (c, n) = (form.charge(), form.dim());
    if n < 3 {
        return Err(Error::PreconditionN(n));
    }
    if kmin > kmax {
        return Err(Error::Usage(format!("kmin {kmin} exceeds kmax {kmax}")));
    }
    let beta = build_beta(form, r)?;
    let nn = n as i64;
    let mut twists: Vec<i64> = (kmin..=kmax).chain((kmin..=kmax).map(|k| -k - nn - 1)).collect();
    twists.sort_unstable();
    twists.dedup();
    let low: HashMap<i64, (u64, u64)> = twists.par_iter().map(|&k| (k, direct(&beta, c, n, k))).collect();

    let mut entries = BTreeMap::new();
    for k in kmin..=kmax {
        let (h0, h1) = low[&k];
        let (d0, d1) = low[&(-k - nn - 1)];
        entries.insert((0, k), CohomEntry { dim: h0, cert: Certificate::Direct });
        entries.insert((1, k), CohomEntry { dim: h1, cert: Certificate::Direct });
        for i in 2..=n - 2 {
            entries.insert((i, k), CohomEntry { dim: 0, cert: Certificate::ForcedZero });
        }
        entries.insert((n - 1, k), CohomEntry { dim: d1, cert: Certificate::SerreDual });
        entries.insert((n, k), CohomEntry { dim: d0, cert: Certificate::SerreDual });
    }

    let mut table = CohomTable {
        c,
        n,
        r,
        kmin,
        kmax,
        entries,
        discrepancies: vec![],
        euler_mismatches: vec![],
    };
    for ((i, k), e) in &table.entries {
        if let Some(expected) = expected_h(*i, *k, c, n, r) {
            if expected != e.dim as i64 {
                table.discrepancies.push(Discrepancy { i: *i, k: *k, computed: e.dim, expected });
            }
        }
    }
    let dim_w = beta.cols() as i64;
    for k in kmin..=kmax {
        let chi = BigInt::from(dim_w) * euler_o(k, n) - BigInt::from(c) * (euler_o(k - 1, n) + euler_o(k + 1, n));
        if table.euler(k).map(BigInt::from) != Some(chi) {
            table.euler_mismatches.push(k);
        }
    }
    Ok(table)
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingCheck {
    pub condition: String,
    pub value: u64,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstantonReport {
    pub conditions: ConditionReport,
    pub vanishing: Vec<VanishingCheck>,
    pub no_global_sections: bool,
    /// `−χ(E(−1))` from the table.
    pub charge: i64,
    pub charge_ok: bool,
    pub table: CohomTable,
}

impl InstantonReport {
    pub fn passes(&self) -> bool {
        self.vanishing.iter().all(|v| v.ok) && self.no_global_sections && self.charge_ok && self.table.is_consistent()
    }
}

/// Checks the instanton vanishing conditions and the charge on the table
/// over `-n-1 ≤ k ≤ 0`.
pub fn verify_instanton(form: &FlatForm, r: usize) -> Result<InstantonReport> {
    let (c, n) = (form.charge(), form.dim());
    if n < 3 {
        return Err(Error::PreconditionN(n));
    }
    let nn = n as i64;
    let table = h_table(form, r, -nn - 1, 0)?;
    let h = |i: usize, k: i64| table.get(i, k).expect("twist in range");
    let mut vanishing = vec![];
    let mut need = |name: String, v: u64| vanishing.push(VanishingCheck { condition: name, value: v, ok: v == 0 });
    need("h0(E(-1))".into(), h(0, -1));
    need(format!("h{n}(E({}))", -nn), h(n, -nn));
    need("h1(E(-2))".into(), h(1, -2));
    need(format!("h{}(E({}))", n - 1, 1 - nn), h(n - 1, 1 - nn));
    for i in 2..=n - 2 {
        for k in -nn - 1..=0 {
            need(format!("h{i}(E({k}))"), h(i, k));
        }
    }
    let charge = -table.euler(-1).expect("twist in range");
    let conditions = check_conditions(form, r, NondegStrategy::default());
    Ok(InstantonReport {
        conditions,
        vanishing,
        no_global_sections: h(0, 0) == 0,
        charge,
        charge_ok: charge == c as i64,
        table,
    })
}

/// Number of monomials of degree `d` in `nvars` variables.
pub fn monomial_count(nvars: usize, d: i64) -> u64 {
    if d < 0 {
        0
    } else {
        binomial(nvars as u64 + d as u64 - 1, d as u64)
    }
}
