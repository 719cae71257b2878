//! Weight distributions: closed-form tables and exact enumeration.
//!
//! The closed form dispatches on how the two inner levels divide each other
//! and evaluates every entry with exact integer division, so a formula that
//! does not apply (the degenerate one-point codes) surfaces as an error
//! instead of a wrong table. Enumeration walks the full message space with an
//! odometer that adds one scaled generator row per step, so its cost is one
//! length-n pass per codeword; both paths must agree and the acceptance suite
//! checks that they do.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{BigUint, One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chars::{eta_minus_one, gauss_product_eval, gauss_square, gauss_symbol};
use crate::code::{row_basis, Code};
use crate::counts::{code_length, exact_div, pow};
use crate::error::{Error, Result};
use crate::ff::{Params, Subfield};

/// Codeword-count budget guard for enumeration, measured in coordinate
/// operations (messages × length).
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 100_000_000;

/// Weight distribution of an [n, k] code over an alphabet of size q; `counts`
/// maps weight to frequency and omits zero frequencies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WdistFile", into = "WdistFile")]
pub struct WeightDistribution {
    pub n: u64,
    pub k: u32,
    pub q: u64,
    pub counts: BTreeMap<u64, BigUint>,
}

impl WeightDistribution {
    /// Total number of codewords, q^k.
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }
}

#[derive(Serialize, Deserialize)]
struct WdistFile {
    n: u64,
    k: u32,
    q: u64,
    counts: BTreeMap<u64, String>,
}

impl From<WeightDistribution> for WdistFile {
    fn from(d: WeightDistribution) -> WdistFile {
        WdistFile {
            n: d.n,
            k: d.k,
            q: d.q,
            counts: d.counts.iter().map(|(&w, c)| (w, c.to_string())).collect(),
        }
    }
}

impl TryFrom<WdistFile> for WeightDistribution {
    type Error = String;

    fn try_from(f: WdistFile) -> std::result::Result<WeightDistribution, String> {
        let mut counts = BTreeMap::new();
        for (w, c) in f.counts {
            let parsed = c
                .parse::<BigUint>()
                .map_err(|e| format!("count at weight {w}: {e}"))?;
            counts.insert(w, parsed);
        }
        Ok(WeightDistribution {
            n: f.n,
            k: f.k,
            q: f.q,
            counts,
        })
    }
}

/// Closed-form weight distribution of the defining-set code.
pub fn wdist_closed(params: &Params) -> Result<WeightDistribution> {
    let p = params.p as i128;
    let (s, s1, s2) = (params.s, params.s1, params.s2);
    let n = code_length(params)?;
    let k = params.dimension();
    let p2s = pow(p, 2 * s);
    let q1 = pow(p, s1);
    let q2 = pow(p, s2);
    let ps12 = pow(p, s1 + s2);
    let g2 = gauss_square(params.p, s);
    let w_bulk = exact_div(p2s * (q2 - 1), ps12, "bulk weight")?;

    let mut rows: Vec<(i128, i128)> = vec![(0, 1), (n, q2 - 1)];
    if s1 % s2 == 0 {
        rows.push((w_bulk, n - 1));
        rows.push((
            w_bulk + exact_div((q1 - 1) * g2, q1, "weight shift")?,
            (q2 - 1) * (n - 1),
        ));
        rows.push((
            w_bulk + exact_div((ps12 - q1) * g2, ps12, "weight shift")?,
            exact_div((q1 - 1) * (p2s - g2), q1, "frequency")?,
        ));
        rows.push((
            w_bulk + exact_div((ps12 - q1 - q2) * g2, ps12, "weight shift")?,
            exact_div((q2 - 1) * (q1 - 1) * (p2s - g2), q1, "frequency")?,
        ));
    } else {
        if s2 % s1 != 0 {
            return Err(Error::IncompatibleLevels { s1, s2 });
        }
        let t = s2 / s1;
        let n2 = exact_div(p2s + (q2 - 1) * g2, q2, "inner length")?;
        let e2n = eta_minus_one(params.p, s2) as i128;
        rows.push((w_bulk, n2 - 1));
        let shifted = w_bulk + exact_div((q1 - 1) * g2, q1, "weight shift")?;
        if t % 2 == 1 {
            let gp = gauss_product_eval(&[
                gauss_symbol(params.p, s1),
                gauss_symbol(params.p, s2),
            ])?;
            let e1n = eta_minus_one(params.p, s1) as i128;
            let p_gap = pow(p, s2 - s1);
            rows.push((shifted, (q2 - 1) * (n2 - 1) + p_gap * (p2s - n2)));
            rows.push((
                n - exact_div(p2s + e2n * gp * g2, ps12, "weight")?,
                exact_div(
                    (q1 - 1) * (p2s - n2) * (p_gap * q1 + e1n * gp),
                    2 * q1,
                    "frequency",
                )?,
            ));
            rows.push((
                n - exact_div(p2s - e2n * gp * g2, ps12, "weight")?,
                exact_div(
                    (q1 - 1) * (p2s - n2) * (p_gap * q1 - e1n * gp),
                    2 * q1,
                    "frequency",
                )?,
            ));
        } else {
            let g_outer = gauss_product_eval(&[gauss_symbol(params.p, s2)])?;
            rows.push((shifted, (q2 - 1) * (n2 - 1)));
            let bulk_freq = (q2 - 1) * (p2s - g2);
            rows.push((
                n - exact_div(p2s + e2n * (q1 - 1) * g_outer * g2, ps12, "weight")?,
                exact_div(
                    bulk_freq * (q2 + (q1 - 1) * g_outer),
                    2 * ps12,
                    "frequency",
                )?,
            ));
            rows.push((
                n - exact_div(p2s - e2n * (q1 - 1) * g_outer * g2, ps12, "weight")?,
                exact_div(
                    bulk_freq * (q2 - (q1 - 1) * g_outer),
                    2 * ps12,
                    "frequency",
                )?,
            ));
            rows.push((
                n - exact_div(p2s - e2n * g_outer * g2, ps12, "weight")?,
                exact_div(
                    (q1 - 1) * bulk_freq * (q2 - g_outer),
                    2 * ps12,
                    "frequency",
                )?,
            ));
            rows.push((
                n - exact_div(p2s + e2n * g_outer * g2, ps12, "weight")?,
                exact_div(
                    (q1 - 1) * bulk_freq * (q2 + g_outer),
                    2 * ps12,
                    "frequency",
                )?,
            ));
        }
    }
    assemble(n, k, q2, &rows)
}

fn assemble(n: i128, k: u32, q2: i128, rows: &[(i128, i128)]) -> Result<WeightDistribution> {
    let mut merged: BTreeMap<i128, i128> = BTreeMap::new();
    for &(w, freq) in rows {
        if freq == 0 {
            continue;
        }
        if freq < 0 {
            return Err(Error::InvalidDistribution {
                detail: format!("negative frequency {freq} at weight {w}"),
            });
        }
        *merged.entry(w).or_insert(0) += freq;
    }
    let mut counts = BTreeMap::new();
    let mut total: i128 = 0;
    for (&w, &freq) in &merged {
        if w < 0 || w > n {
            return Err(Error::InvalidDistribution {
                detail: format!("weight {w} outside [0, {n}]"),
            });
        }
        total += freq;
        counts.insert(w as u64, BigUint::from(freq as u128));
    }
    if merged.get(&0).copied() != Some(1) {
        return Err(Error::InvalidDistribution {
            detail: format!(
                "zero weight has frequency {}, expected 1",
                merged.get(&0).copied().unwrap_or(0)
            ),
        });
    }
    let expected = pow(q2, k);
    if total != expected {
        return Err(Error::InvalidDistribution {
            detail: format!("frequencies sum to {total}, expected {expected}"),
        });
    }
    Ok(WeightDistribution {
        n: n as u64,
        k,
        q: q2 as u64,
        counts,
    })
}

/// Exact weight distribution by walking all q^k codewords, under the default
/// budget.
pub fn wdist_enumerate(code: &Code) -> Result<WeightDistribution> {
    wdist_enumerate_with_budget(code, DEFAULT_ENUMERATION_BUDGET)
}

/// Exact weight distribution by walking all q^k codewords; `budget` caps
/// messages × length.
pub fn wdist_enumerate_with_budget(code: &Code, budget: u128) -> Result<WeightDistribution> {
    let sf = code.alphabet();
    let m = sf.size as usize;
    let basis = row_basis(&sf, &code.rows);
    let k = basis.len();
    let n = code.n;
    let messages = (m as u128)
        .checked_pow(k as u32)
        .ok_or(Error::BudgetExceeded {
            required: u128::MAX,
            budget,
        })?;
    let required = messages.saturating_mul(n.max(1) as u128);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let freq = if k == 0 {
        let mut f = vec![0u64; n + 1];
        f[0] = 1;
        f
    } else {
        let fixed = if k >= 2 && m <= 64 { 2 } else { 1 };
        let fixed = fixed.min(k);
        let tops: Vec<Vec<u16>> = top_digit_tuples(m, fixed);
        tops.par_iter()
            .map(|top| enumerate_chunk(&sf, &basis, top, n))
            .reduce(
                || vec![0u64; n + 1],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    };

    let mut counts = BTreeMap::new();
    let mut total = BigUint::zero();
    for (w, &c) in freq.iter().enumerate() {
        if c > 0 {
            total += c;
            counts.insert(w as u64, BigUint::from(c));
        }
    }
    if total != BigUint::from(messages) {
        return Err(Error::Inconsistent {
            detail: format!("enumerated {total} codewords, expected {messages}"),
        });
    }
    Ok(WeightDistribution {
        n: n as u64,
        k: k as u32,
        q: m as u64,
        counts,
    })
}

fn top_digit_tuples(m: usize, fixed: usize) -> Vec<Vec<u16>> {
    let mut tops = vec![Vec::new()];
    for _ in 0..fixed {
        let mut next = Vec::with_capacity(tops.len() * m);
        for t in &tops {
            for d in 0..m as u16 {
                let mut t2 = t.clone();
                t2.push(d);
                next.push(t2);
            }
        }
        tops = next;
    }
    tops
}

/// Walks all messages whose top `top.len()` digits are fixed; the remaining
/// digits run through an odometer that applies one scaled-row delta per step.
fn enumerate_chunk(sf: &Subfield, basis: &[Vec<u16>], top: &[u16], n: usize) -> Vec<u64> {
    let m = sf.size as usize;
    let k = basis.len();
    let r = k - top.len();
    let mut cw = vec![0u16; n];
    for (&digit, row) in top.iter().zip(&basis[r..]) {
        for (c, &v) in cw.iter_mut().zip(row) {
            *c = sf.add_idx(*c, sf.mul_idx(digit, v));
        }
    }

    let prime = sf.level == 1;
    let mut freq = vec![0u64; n + 1];
    let mut digits = vec![0usize; r];
    let mut nonzero = cw.iter().filter(|&&v| v != 0).count() as u64;

    if prime {
        let p = m as u16;
        loop {
            freq[nonzero as usize] += 1;
            let mut i = 0;
            loop {
                if i == r {
                    return freq;
                }
                nonzero = add_row_mod_p(&mut cw, &basis[i], p);
                digits[i] += 1;
                if digits[i] < m {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    } else {
        let shift = m.next_power_of_two().trailing_zeros();
        let mut tab = vec![0u16; m << shift];
        for a in 0..m as u16 {
            for b in 0..m as u16 {
                tab[((a as usize) << shift) | b as usize] = sf.add_idx(a, b);
            }
        }
        // deltas[i][d]: row i scaled by elems[d + 1] − elems[d] (wrapping),
        // entries pre-shifted for the padded add table.
        let deltas: Vec<Vec<Vec<u16>>> = basis[..r]
            .iter()
            .map(|row| {
                (0..m as u16)
                    .map(|d| {
                        let step = sf.sub_idx((d + 1) % m as u16, d);
                        row.iter()
                            .map(|&v| sf.mul_idx(step, v) << shift)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        loop {
            freq[nonzero as usize] += 1;
            let mut i = 0;
            loop {
                if i == r {
                    return freq;
                }
                let d = digits[i];
                nonzero = add_row_table(&mut cw, &deltas[i][d], &tab);
                digits[i] += 1;
                if digits[i] < m {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }
}

fn add_row_mod_p(cw: &mut [u16], row: &[u16], p: u16) -> u64 {
    let mut zeros = 0u32;
    for (c, &r) in cw.iter_mut().zip(row) {
        let v = *c + r;
        let v = v.min(v.wrapping_sub(p));
        *c = v;
        zeros += (v == 0) as u32;
    }
    (cw.len() as u64) - zeros as u64
}

fn add_row_table(cw: &mut [u16], row_shifted: &[u16], tab: &[u16]) -> u64 {
    let mut zeros = 0u32;
    for (c, &r) in cw.iter_mut().zip(row_shifted) {
        let v = tab[(r as usize) | (*c as usize)];
        *c = v;
        zeros += (v == 0) as u32;
    }
    (cw.len() as u64) - zeros as u64
}

/// Minimum distance read off a distribution.
pub fn min_distance(dist: &WeightDistribution) -> Result<u64> {
    dist.counts
        .keys()
        .find(|&&w| w > 0)
        .copied()
        .ok_or(Error::ZeroCode)
}

/// First three dual weight-distribution counts [A1, A2, A3], solved from the
/// first four power moments of the primal distribution.
pub fn pless_dual_counts(dist: &WeightDistribution) -> Result<[BigUint; 3]> {
    let q = BigInt::from(dist.q);
    let n = BigInt::from(dist.n);
    let k = dist.k as i64;

    let mut sums = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for (&w, c) in &dist.counts {
        let c = BigInt::from(c.clone());
        let w = BigInt::from(w);
        sums[0] += &c;
        sums[1] += &w * &c;
        sums[2] += &w * &w * &c;
        sums[3] += &w * &w * &w * &c;
    }
    if sums[0] != q.pow(dist.k) {
        return Err(Error::Inconsistent {
            detail: format!("distribution holds {} words, expected q^k", sums[0]),
        });
    }

    let rat = |v: BigInt| BigRational::from(v);
    let qpow = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from(q.pow(e as u32))
        } else {
            BigRational::new(BigInt::one(), q.pow((-e) as u32))
        }
    };
    let qn = &q * &n;
    let one = BigInt::one();

    let a1 = rat(&qn - &n) - rat(sums[1].clone()) * qpow(1 - k);
    let a2 = (rat(sums[2].clone()) * qpow(2 - k)
        - rat((&q - &one) * &n * (&qn - &n + &one))
        + rat(2 * &qn - &q - 2 * &n + 2) * &a1)
        / rat(BigInt::from(2));
    let e_term = &q * &q * &n * &n - 2 * &q * &n * &n + 3 * &qn - &q + &n * &n - 3 * &n + 2;
    let f_term = 3 * &q * &q * &n * &n - 3 * &q * &q * &n - 6 * &q * &n * &n + 12 * &qn
        + &q * &q
        - 6 * &q
        + 3 * &n * &n
        - 9 * &n
        + 6;
    let a3 = (rat((&q - &one) * &n * e_term) - rat(f_term) * &a1
        + rat(6 * (&qn - &q - &n + 2)) * &a2
        - rat(sums[3].clone()) * qpow(3 - k))
        / rat(BigInt::from(6));

    let mut out = Vec::with_capacity(3);
    for (i, a) in [a1, a2, a3].into_iter().enumerate() {
        if !a.is_integer() || a.is_negative() {
            return Err(Error::Inconsistent {
                detail: format!("moment solution A{}⊥ = {} is not a count", i + 1, a),
            });
        }
        out.push(a.to_integer().to_biguint().expect("checked nonnegative"));
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}
