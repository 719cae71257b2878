//! Structural certifications: self-orthogonality, divisibility, dual
//! distance, distance labels, sphere-packing optimality, and locality.
//!
//! Everything here is exact. Dual distance is certified by column-dependency
//! search, weight-3 dual words are counted either through the affine
//! collinearity structure of the canonical generator or by a generic
//! column-triple kernel scan, and every locality certificate re-verifies its
//! repair equations before it is returned.

use num::{BigUint, One, Zero};
use serde::{Deserialize, Serialize};

use crate::code::{gram, row_basis, solve_in_span, Code, Provenance};
use crate::counts::enumerate_defining_set;
use crate::error::{Error, Result};
use crate::ff::Params;
use crate::wdist::WeightDistribution;

/// Cost ceiling for the column-subset and locality searches, in rough
/// per-element operations.
const SEARCH_BUDGET: u128 = 2_000_000_000;

/// MDS / AMDS / other label for an [n, k, d] code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    Mds,
    Amds,
    Other,
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Mds => write!(f, "MDS"),
            Label::Amds => write!(f, "AMDS"),
            Label::Other => write!(f, "other"),
        }
    }
}

/// Distance label from the Singleton gap: d = n−k+1 is MDS, d = n−k is AMDS.
pub fn classify(n: u64, k: u64, d: u64) -> Label {
    if d + k == n + 1 {
        Label::Mds
    } else if d + k == n {
        Label::Amds
    } else {
        Label::Other
    }
}

/// Generator Gram matrix G·Gᵀ as element encodings.
pub fn gram_matrix(code: &Code) -> Vec<Vec<u64>> {
    let sf = code.alphabet();
    gram(&sf, &code.rows)
        .into_iter()
        .map(|row| row.into_iter().map(|i| sf.elems[i as usize]).collect())
        .collect()
}

/// True iff the row space is orthogonal to itself (G·Gᵀ = 0).
pub fn is_self_orthogonal(code: &Code) -> bool {
    let sf = code.alphabet();
    gram(&sf, &code.rows)
        .iter()
        .all(|row| row.iter().all(|&v| v == 0))
}

/// True iff the all-ones word is a codeword.
pub fn contains_all_ones(code: &Code) -> bool {
    let sf = code.alphabet();
    let basis = row_basis(&sf, &code.rows);
    let ones = vec![sf.one(); code.n];
    solve_in_span(&sf, &basis, &ones).is_some()
}

/// Executable divisibility criterion: returns whether the code contains the
/// all-ones word and every nonzero weight is divisible by the characteristic.
/// When that premise holds, self-orthogonality is forced and asserted.
pub fn divisibility_implies_so(code: &Code, wd: &WeightDistribution) -> bool {
    assert_eq!(wd.n as usize, code.n, "distribution belongs to another code");
    let p = code.tower.params.p;
    let divisible = wd.counts.keys().all(|&w| w % p == 0);
    let premise = divisible && contains_all_ones(code);
    if premise {
        assert!(
            is_self_orthogonal(code),
            "divisible code with all-ones word must be self-orthogonal"
        );
    }
    premise
}

/// Closed-form self-orthogonality side condition for the defining-set code,
/// by the same level dispatch as the weight tables.
pub fn so_condition(params: &Params) -> Result<bool> {
    let (s, s1, s2) = (params.s, params.s1, params.s2);
    if s1 % s2 == 0 {
        Ok(s >= 2 * s1)
    } else if s2 % s1 == 0 {
        if (s2 / s1) % 2 == 1 {
            Ok(2 * s > s1 + s2)
        } else {
            Ok(2 * s > 2 * s1 + s2)
        }
    } else {
        Err(Error::IncompatibleLevels { s1, s2 })
    }
}

/// Result of a bounded column-dependency search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceBound {
    /// Smallest number of linearly dependent generator columns, which is the
    /// dual minimum distance when below the bound.
    Exact(u64),
    AboveBound,
}

fn columns(code: &Code) -> Vec<Vec<u16>> {
    let k = code.rows.len();
    (0..code.n)
        .map(|c| (0..k).map(|r| code.rows[r][c]).collect())
        .collect()
}

/// Dual distance by column search: the smallest w ≤ wmax such that some w
/// generator columns are linearly dependent, or `AboveBound`.
pub fn dual_distance_upto(code: &Code, wmax: u64) -> Result<DistanceBound> {
    let sf = code.alphabet();
    let cols = columns(code);
    let n = cols.len();
    let k = code.rows.len();

    // Stage 1: a zero column.
    if cols.iter().any(|c| c.iter().all(|&v| v == 0)) {
        return Ok(DistanceBound::Exact(1));
    }
    if wmax < 2 {
        return Ok(DistanceBound::AboveBound);
    }

    // Stage 2: a proportional pair, via projective normal forms.
    let mut normals = std::collections::HashSet::with_capacity(n);
    for col in &cols {
        let lead = col.iter().find(|&&v| v != 0).copied().expect("no zero column");
        let scale = sf.inv[lead as usize];
        let normal: Vec<u16> = col.iter().map(|&v| sf.mul_idx(scale, v)).collect();
        if !normals.insert(normal) {
            return Ok(DistanceBound::Exact(2));
        }
    }
    if wmax < 3 {
        return Ok(DistanceBound::AboveBound);
    }

    // Stage 3: a dependent triple. All pairs are independent now, so it
    // suffices to test later columns against each pair's span.
    let est = (n as u128) * (n as u128) * (n as u128) / 6 * (k as u128).max(1);
    if est > SEARCH_BUDGET {
        return Err(Error::BudgetExceeded {
            required: est,
            budget: SEARCH_BUDGET,
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            let (gi, gj) = (&cols[i], &cols[j]);
            let Some((a, b, det)) = pivot_pair(&sf, gi, gj) else {
                unreachable!("pairs are independent at stage 3");
            };
            let det_inv = sf.inv[det as usize];
            for (l, gl) in cols.iter().enumerate().skip(j + 1) {
                let alpha = sf.mul_idx(
                    det_inv,
                    sf.sub_idx(
                        sf.mul_idx(gl[a], gj[b]),
                        sf.mul_idx(gl[b], gj[a]),
                    ),
                );
                let beta = sf.mul_idx(
                    det_inv,
                    sf.sub_idx(
                        sf.mul_idx(gi[a], gl[b]),
                        sf.mul_idx(gi[b], gl[a]),
                    ),
                );
                let matches = (0..k).all(|r| {
                    sf.add_idx(sf.mul_idx(alpha, gi[r]), sf.mul_idx(beta, gj[r])) == gl[r]
                });
                if matches {
                    let _ = l;
                    return Ok(DistanceBound::Exact(3));
                }
            }
        }
    }

    // Stages ≥ 4: generic subset search; every smaller subset is independent.
    for w in 4..=wmax {
        let mut subsets: u128 = 1;
        for i in 0..(w - 1) {
            subsets = subsets.saturating_mul((n as u128).saturating_sub(i as u128));
        }
        let est = subsets.saturating_mul(n as u128).saturating_mul(k as u128);
        if est > SEARCH_BUDGET {
            return Err(Error::BudgetExceeded {
                required: est,
                budget: SEARCH_BUDGET,
            });
        }
        let mut chosen = Vec::with_capacity(w as usize - 1);
        if dependent_subset(&sf, &cols, w as usize, 0, &mut chosen) {
            return Ok(DistanceBound::Exact(w));
        }
    }
    Ok(DistanceBound::AboveBound)
}

/// Two row positions where the pair of columns has an invertible 2×2 minor,
/// plus that minor's determinant index; None iff the pair is dependent.
fn pivot_pair(
    sf: &crate::ff::Subfield,
    gi: &[u16],
    gj: &[u16],
) -> Option<(usize, usize, u16)> {
    let a = (0..gi.len()).find(|&r| gi[r] != 0 || gj[r] != 0)?;
    for b in 0..gi.len() {
        if b == a {
            continue;
        }
        let det = sf.sub_idx(sf.mul_idx(gi[a], gj[b]), sf.mul_idx(gi[b], gj[a]));
        if det != 0 {
            return Some((a, b, det));
        }
    }
    // A pair with all 2×2 minors zero is proportional; with a = first
    // nonzero row that means dependence.
    None
}

fn dependent_subset(
    sf: &crate::ff::Subfield,
    cols: &[Vec<u16>],
    w: usize,
    start: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == w - 1 {
        let basis: Vec<Vec<u16>> = chosen.iter().map(|&i| cols[i].clone()).collect();
        return (start..cols.len()).any(|m| solve_in_span(sf, &basis, &cols[m]).is_some());
    }
    for i in start..cols.len() {
        chosen.push(i);
        if dependent_subset(sf, cols, w, i + 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Number of weight-3 words of the dual code.
///
/// For a canonical defining-set build, three columns are dependent exactly
/// when the corresponding defining-set points are affinely collinear over
/// the alphabet field, and pairs are never dependent, so the count is
/// (q−1) × the number of collinear point triples. Other codes fall back to a
/// column-triple kernel scan.
pub fn dual_weight3_count(code: &Code) -> Result<BigUint> {
    if code.provenance == Provenance::DefiningSet {
        return collinear_triple_count(code);
    }
    generic_weight3_count(code)
}

fn collinear_triple_count(code: &Code) -> Result<BigUint> {
    let tower = &code.tower;
    let params = tower.params;
    let ds = enumerate_defining_set(tower)?;
    let q = tower.q() as usize;
    let lambdas: Vec<u64> = tower
        .subfield_elements(params.s2)?
        .into_iter()
        .filter(|&l| l != 0 && l != 1)
        .collect();

    let est = (ds.pairs.len() as u128).pow(2) / 2 * (lambdas.len() as u128).max(1);
    if est > SEARCH_BUDGET * 4 {
        return Err(Error::BudgetExceeded {
            required: est,
            budget: SEARCH_BUDGET * 4,
        });
    }

    let mut member = vec![false; q * q];
    for &(x, y) in &ds.pairs {
        member[x as usize * q + y as usize] = true;
    }
    let mut add = vec![0u32; q * q];
    for x in 0..q as u64 {
        for y in 0..q as u64 {
            add[x as usize * q + y as usize] = tower.add(x, y) as u32;
        }
    }
    let neg: Vec<u32> = (0..q as u64).map(|x| tower.neg(x) as u32).collect();
    // scaled[t][z] = lambdas[t] · z
    let scaled: Vec<Vec<u32>> = lambdas
        .iter()
        .map(|&l| (0..q as u64).map(|z| tower.mul(l, z) as u32).collect())
        .collect();

    let mut third_points: u64 = 0;
    let pts = &ds.pairs;
    for i in 0..pts.len() {
        let (ux, uy) = pts[i];
        for j in i + 1..pts.len() {
            let (vx, vy) = pts[j];
            let dx = add[ux as usize * q + neg[vx as usize] as usize] as usize;
            let dy = add[uy as usize * q + neg[vy as usize] as usize] as usize;
            for tab in &scaled {
                let wx = add[vx as usize * q + tab[dx] as usize] as usize;
                let wy = add[vy as usize * q + tab[dy] as usize] as usize;
                third_points += member[wx * q + wy] as u64;
            }
        }
    }
    debug_assert_eq!(third_points % 3, 0);
    let triples = third_points / 3;
    Ok(BigUint::from(triples) * BigUint::from(params.p.pow(params.s2) - 1))
}

fn generic_weight3_count(code: &Code) -> Result<BigUint> {
    let sf = code.alphabet();
    let cols = columns(code);
    let n = cols.len();
    let k = code.rows.len().max(1);
    let est = (n as u128).pow(3) / 6 * k as u128 * sf.size as u128;
    if est > SEARCH_BUDGET {
        return Err(Error::BudgetExceeded {
            required: est,
            budget: SEARCH_BUDGET,
        });
    }
    let mut count = BigUint::zero();
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                count += weight3_kernel_words(&sf, &cols[i], &cols[j], &cols[l]);
            }
        }
    }
    Ok(count)
}

/// Number of kernel vectors of the k×3 column matrix with all three
/// coordinates nonzero.
fn weight3_kernel_words(
    sf: &crate::ff::Subfield,
    a: &[u16],
    b: &[u16],
    c: &[u16],
) -> u64 {
    let rows: Vec<Vec<u16>> = (0..a.len()).map(|r| vec![a[r], b[r], c[r]]).collect();
    let kernel = crate::code::nullspace(sf, &rows);
    if kernel.is_empty() {
        return 0;
    }
    let m = sf.size;
    let dim = kernel.len();
    let mut count = 0u64;
    let mut digits = vec![0usize; dim];
    loop {
        let mut i = 0;
        loop {
            if i == dim {
                return count;
            }
            digits[i] += 1;
            if digits[i] < m {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        let mut v = [0u16; 3];
        for (d, kv) in digits.iter().zip(&kernel) {
            for (slot, &entry) in v.iter_mut().zip(kv.iter()) {
                *slot = sf.add_idx(*slot, sf.mul_idx(*d as u16, entry));
            }
        }
        if v.iter().all(|&x| x != 0) {
            count += 1;
        }
    }
}

/// Largest d allowed jointly by the sphere-packing and Singleton bounds.
pub fn sphere_packing_max_d(n: u64, k: u64, q: u64) -> u64 {
    let volume = BigUint::from(q).pow((n - k) as u32);
    let mut sum = BigUint::one();
    let mut binom = BigUint::one();
    let mut power = BigUint::one();
    let mut t_star = 0;
    for t in 1..=n {
        binom = binom * BigUint::from(n - t + 1) / BigUint::from(t);
        power *= BigUint::from(q - 1);
        sum += &binom * &power;
        if sum > volume {
            break;
        }
        t_star = t;
    }
    (2 * t_star + 2).min(n - k + 1)
}

/// One repair equation: column `coordinate` equals the combination of the
/// support columns with the given coefficients (encodings).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recovery {
    pub coordinate: usize,
    pub support: Vec<usize>,
    pub coefficients: Vec<u64>,
}

/// Locality certificate: a verified repair equation of size ≤ r for every
/// coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityCert {
    pub r: usize,
    pub recoveries: Vec<Recovery>,
}

/// Outcome of the locality search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocalityOutcome {
    Cert(LocalityCert),
    Uncoverable { coordinate: usize },
}

/// Searches, per coordinate, all subsets of at most r other coordinates for
/// an exact repair equation; first (smallest, lexicographic) subset wins.
pub fn locality(code: &Code, r: usize) -> Result<LocalityOutcome> {
    let sf = code.alphabet();
    let cols = columns(code);
    let n = cols.len();
    let k = code.rows.len();
    let mut subsets: u128 = 1;
    for e in 1..=r as u32 {
        subsets = subsets.saturating_add((n as u128).saturating_pow(e));
    }
    let est = (n as u128)
        .saturating_mul(subsets)
        .saturating_mul(k as u128);
    if est > SEARCH_BUDGET {
        return Err(Error::BudgetExceeded {
            required: est,
            budget: SEARCH_BUDGET,
        });
    }

    let mut recoveries = Vec::with_capacity(n);
    'coord: for i in 0..n {
        if cols[i].iter().all(|&v| v == 0) {
            recoveries.push(Recovery {
                coordinate: i,
                support: Vec::new(),
                coefficients: Vec::new(),
            });
            continue;
        }
        if r >= 1 {
            for j in 0..n {
                if j == i {
                    continue;
                }
                if let Some(alpha) = proportion(&sf, &cols[j], &cols[i]) {
                    recoveries.push(verified_recovery(&sf, &cols, i, vec![j], vec![alpha]));
                    continue 'coord;
                }
            }
        }
        if r >= 2 {
            for j in 0..n {
                if j == i {
                    continue;
                }
                for l in j + 1..n {
                    if l == i {
                        continue;
                    }
                    if let Some((a, b, det)) = pivot_pair(&sf, &cols[j], &cols[l]) {
                        let det_inv = sf.inv[det as usize];
                        let gi = &cols[i];
                        let (gj, gl) = (&cols[j], &cols[l]);
                        let alpha = sf.mul_idx(
                            det_inv,
                            sf.sub_idx(
                                sf.mul_idx(gi[a], gl[b]),
                                sf.mul_idx(gi[b], gl[a]),
                            ),
                        );
                        let beta = sf.mul_idx(
                            det_inv,
                            sf.sub_idx(
                                sf.mul_idx(gj[a], gi[b]),
                                sf.mul_idx(gj[b], gi[a]),
                            ),
                        );
                        let ok = (0..k).all(|row| {
                            sf.add_idx(
                                sf.mul_idx(alpha, gj[row]),
                                sf.mul_idx(beta, gl[row]),
                            ) == gi[row]
                        });
                        if ok {
                            recoveries.push(verified_recovery(
                                &sf,
                                &cols,
                                i,
                                vec![j, l],
                                vec![alpha, beta],
                            ));
                            continue 'coord;
                        }
                    }
                }
            }
        }
        if r >= 3 {
            let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            let mut chosen = Vec::new();
            if let Some((support, coefs)) =
                span_subset(&sf, &cols, &cols[i], &others, 3.min(r), 0, &mut chosen)
            {
                recoveries.push(verified_recovery(&sf, &cols, i, support, coefs));
                continue 'coord;
            }
        }
        return Ok(LocalityOutcome::Uncoverable { coordinate: i });
    }
    Ok(LocalityOutcome::Cert(LocalityCert { r, recoveries }))
}

fn proportion(
    sf: &crate::ff::Subfield,
    from: &[u16],
    to: &[u16],
) -> Option<u16> {
    let lead = (0..from.len()).find(|&r| from[r] != 0)?;
    let alpha = sf.mul_idx(to[lead], sf.inv[from[lead] as usize]);
    if alpha == 0 {
        return None;
    }
    (0..from.len())
        .all(|r| sf.mul_idx(alpha, from[r]) == to[r])
        .then_some(alpha)
}

fn span_subset(
    sf: &crate::ff::Subfield,
    cols: &[Vec<u16>],
    target: &[u16],
    others: &[usize],
    size: usize,
    start: usize,
    chosen: &mut Vec<usize>,
) -> Option<(Vec<usize>, Vec<u16>)> {
    if chosen.len() == size {
        let basis: Vec<Vec<u16>> = chosen.iter().map(|&j| cols[j].clone()).collect();
        let coefs = solve_in_span(sf, &basis, target)?;
        return Some((chosen.clone(), coefs));
    }
    for idx in start..others.len() {
        chosen.push(others[idx]);
        if let Some(found) = span_subset(sf, cols, target, others, size, idx + 1, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

fn verified_recovery(
    sf: &crate::ff::Subfield,
    cols: &[Vec<u16>],
    coordinate: usize,
    support: Vec<usize>,
    coefs: Vec<u16>,
) -> Recovery {
    let k = cols[coordinate].len();
    for row in 0..k {
        let mut acc = 0u16;
        for (&j, &cf) in support.iter().zip(&coefs) {
            acc = sf.add_idx(acc, sf.mul_idx(cf, cols[j][row]));
        }
        assert_eq!(acc, cols[coordinate][row], "repair equation failed recheck");
    }
    Recovery {
        coordinate,
        support,
        coefficients: coefs.iter().map(|&c| sf.elems[c as usize]).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::build_code;
    use crate::ff::make_tower;
    use crate::wdist::{pless_dual_counts, wdist_closed};
    use std::sync::Arc;

    fn build(p: u64, s: u32, s1: u32, s2: u32) -> Code {
        let tower = make_tower(Params::new(p, s, s1, s2).unwrap()).unwrap();
        build_code(&tower).unwrap()
    }

    fn synthetic(rows: Vec<Vec<u64>>) -> Code {
        let tower = make_tower(Params::new(3, 1, 1, 1).unwrap()).unwrap();
        Code::from_encodings(Arc::clone(&tower), 1, rows, Provenance::Synthetic).unwrap()
    }

    #[test]
    fn classify_labels() {
        assert_eq!(classify(33, 30, 3), Label::Amds);
        assert_eq!(classify(10, 1, 10), Label::Mds);
        assert_eq!(classify(33, 28, 3), Label::Other);
    }

    #[test]
    fn so_condition_cases() {
        let cond = |p, s, s1, s2| so_condition(&Params::new(p, s, s1, s2).unwrap()).unwrap();
        assert!(cond(3, 2, 1, 1));
        assert!(!cond(3, 2, 1, 2));
        assert!(cond(3, 4, 1, 2));
        assert!(!cond(3, 2, 2, 2));
        assert!(cond(3, 3, 1, 3));
        assert!(matches!(
            so_condition(&Params::new(3, 6, 2, 3).unwrap()),
            Err(Error::IncompatibleLevels { s1: 2, s2: 3 })
        ));
    }

    #[test]
    fn gram_detects_self_orthogonality() {
        assert!(is_self_orthogonal(&build(3, 2, 1, 1)));
        assert!(!is_self_orthogonal(&synthetic(vec![vec![1]])));
        let g = gram_matrix(&build(3, 2, 1, 1));
        assert!(g.iter().all(|r| r.iter().all(|&v| v == 0)));
    }

    #[test]
    fn divisibility_premise() {
        let code = build(3, 2, 1, 1);
        let wd = wdist_closed(&code.tower.params).unwrap();
        assert!(divisibility_implies_so(&code, &wd));

        let rep = synthetic(vec![vec![1, 1, 1, 1]]);
        let wd = crate::wdist::wdist_enumerate(&rep).unwrap();
        assert!(!divisibility_implies_so(&rep, &wd));
    }

    #[test]
    fn dual_distance_stages() {
        assert_eq!(
            dual_distance_upto(&build(3, 2, 1, 2), 4).unwrap(),
            DistanceBound::Exact(3)
        );
        assert_eq!(
            dual_distance_upto(&build(3, 2, 1, 1), 4).unwrap(),
            DistanceBound::Exact(3)
        );
        let zero_col = synthetic(vec![vec![1, 0, 2], vec![2, 0, 1]]);
        assert_eq!(
            dual_distance_upto(&zero_col, 4).unwrap(),
            DistanceBound::Exact(1)
        );
        let prop = synthetic(vec![vec![1, 2, 1], vec![2, 1, 2]]);
        assert_eq!(
            dual_distance_upto(&prop, 4).unwrap(),
            DistanceBound::Exact(2)
        );
        let identity = synthetic(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(
            dual_distance_upto(&identity, 2).unwrap(),
            DistanceBound::AboveBound
        );
        let extended = synthetic(vec![
            vec![1, 0, 0, 1],
            vec![0, 1, 0, 1],
            vec![0, 0, 1, 1],
        ]);
        assert_eq!(
            dual_distance_upto(&extended, 4).unwrap(),
            DistanceBound::Exact(4)
        );
    }

    #[test]
    fn weight3_paths_agree_and_match_moments() {
        for (p, s, s1, s2) in [(3, 2, 1, 1), (3, 2, 2, 2)] {
            let code = build(p, s, s1, s2);
            let fast = dual_weight3_count(&code).unwrap();
            let mut generic = code.clone();
            generic.provenance = Provenance::Synthetic;
            let slow = dual_weight3_count(&generic).unwrap();
            assert_eq!(fast, slow, "({p},{s},{s1},{s2})");
            let wd = wdist_closed(&code.tower.params).unwrap();
            let [a1, a2, a3] = pless_dual_counts(&wd).unwrap();
            assert_eq!(a1, BigUint::zero());
            assert_eq!(a2, BigUint::zero());
            assert_eq!(a3, fast);
        }
    }

    #[test]
    fn sphere_packing_values() {
        assert_eq!(sphere_packing_max_d(38, 33, 3), 4);
        assert_eq!(sphere_packing_max_d(9, 6, 5), 4);
        assert_eq!(sphere_packing_max_d(12, 12, 4), 1);
        assert_eq!(sphere_packing_max_d(5, 1, 5), 5);
    }

    #[test]
    fn locality_certificate_for_cone_code() {
        let code = build(3, 2, 2, 1);
        match locality(&code, 2).unwrap() {
            LocalityOutcome::Cert(cert) => {
                assert_eq!(cert.recoveries.len(), 17);
                assert!(cert.recoveries.iter().all(|rec| rec.support.len() <= 2));
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn locality_rejects_identity() {
        let identity = synthetic(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(
            locality(&identity, 1).unwrap(),
            LocalityOutcome::Uncoverable { coordinate: 0 }
        );
        let with_zero = synthetic(vec![vec![1, 1, 0]]);
        match locality(&with_zero, 1).unwrap() {
            LocalityOutcome::Cert(cert) => {
                assert_eq!(cert.recoveries[0].support, vec![1]);
                assert!(cert.recoveries[2].support.is_empty());
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }
}
