//! Solution counts behind the code family.
//!
//! The defining set is D = {(x, y) ∈ F_q² : Tr_{s1}(x² + y²) = 0}. Code
//! length is |D|, and the weight of the codeword indexed by (a, b, c) is
//! n − N(a, b, c) where N counts the pairs of D on which the affine form
//! Tr_{s2}(ax + by) + c vanishes. Everything here has a closed form built
//! from Gauss-sum squares and quadratic characters, plus a direct
//! enumeration oracle for testing.

use serde::{Deserialize, Serialize};

use crate::chars::{gauss_product_eval, gauss_square, gauss_symbol};
use crate::error::{Error, Result};
use crate::ff::{FieldTower, Params};

/// The defining set: coordinate pairs in lexicographic (encoding x,
/// encoding y) order, except that (0, 0) is moved to the last position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefiningSet {
    pub pairs: Vec<(u64, u64)>,
}

/// |D| by the closed formula (p^{2s} + (p^{s1} − 1)·𝒢²) / p^{s1}.
pub fn code_length(params: &Params) -> Result<i128> {
    let p = params.p as i128;
    let g2 = gauss_square(params.p, params.s);
    let num = pow(p, 2 * params.s) + (pow(p, params.s1) - 1) * g2;
    exact_div(num, pow(p, params.s1), "code length")
}

/// Enumerates D by bucketing y values on the trace of their square.
pub fn enumerate_defining_set(tower: &FieldTower) -> Result<DefiningSet> {
    let params = tower.params;
    let q = tower.q();
    // t2[z] = Tr_{s1}(z²)
    let mut t2 = vec![0u64; q as usize];
    for z in 0..q {
        t2[z as usize] = tower.trace(tower.mul(z, z), params.s1)?;
    }
    let mut buckets: std::collections::HashMap<u64, Vec<u64>> = std::collections::HashMap::new();
    for y in 0..q {
        buckets.entry(t2[y as usize]).or_default().push(y);
    }
    let mut pairs = Vec::new();
    for x in 0..q {
        let want = tower.neg(t2[x as usize]);
        if let Some(ys) = buckets.get(&want) {
            for &y in ys {
                if x == 0 && y == 0 {
                    continue;
                }
                pairs.push((x, y));
            }
        }
    }
    pairs.push((0, 0));
    Ok(DefiningSet { pairs })
}

/// Closed count of {c ∈ F_{p^s2}* : Tr_{s1}^{s2}(μ c²) = ρ} for s1 | s2 with
/// odd quotient: ρ = 0 gives p^{s2−s1} − 1, otherwise
/// p^{s2−s1} + η''(μ) η'(−ρ) 𝒢'𝒢'' / p^{s1}.
pub fn count_n_c_rho(tower: &FieldTower, mu: u64, rho: u64) -> Result<i128> {
    let Params { p, s1, s2, .. } = tower.params;
    if s2 % s1 != 0 || (s2 / s1) % 2 == 0 {
        return Err(Error::QuotientNotOdd { s1, s2 });
    }
    if mu == 0 {
        return Err(Error::ZeroMu);
    }
    if !tower.is_in_subfield(mu, s2) {
        return Err(Error::NotInSubfield {
            element: mu,
            level: s2,
        });
    }
    if !tower.is_in_subfield(rho, s1) {
        return Err(Error::NotInSubfield {
            element: rho,
            level: s1,
        });
    }
    let base = pow(p as i128, s2 - s1);
    if rho == 0 {
        return Ok(base - 1);
    }
    let gp = gauss_product_eval(&[gauss_symbol(p, s1), gauss_symbol(p, s2)])?;
    let eta2_mu = tower.quad_character(mu, s2)? as i128;
    let eta1_negrho = tower.quad_character(tower.neg(rho), s1)? as i128;
    let twist = exact_div(gp, pow(p as i128, s1), "count twist")?;
    Ok(base + eta2_mu * eta1_negrho * twist)
}

/// Enumeration oracle for [`count_n_c_rho`].
pub fn count_n_c_rho_oracle(tower: &FieldTower, mu: u64, rho: u64) -> Result<i128> {
    let s1 = tower.params.s1;
    let s2 = tower.params.s2;
    if mu == 0 {
        return Err(Error::ZeroMu);
    }
    let mut n = 0;
    for &c in &tower.subfield_elements(s2)? {
        if c == 0 {
            continue;
        }
        let v = tower.trace_between(tower.mul(mu, tower.mul(c, c)), s1, s2)?;
        if v == rho {
            n += 1;
        }
    }
    Ok(n)
}

/// The two trace invariants of a message (a, b) and the twist Θ of its c
/// component: Γ(t) = Tr_t(a² + b²) and Θ = Tr_{s1}^{s2}(c²/Γ(s2)),
/// defined when Γ(s2) ≠ 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaTheta {
    pub gamma_s1: u64,
    pub gamma_s2: u64,
    pub theta: Option<u64>,
}

pub fn gamma_theta(tower: &FieldTower, a: u64, b: u64, c: u64) -> Result<GammaTheta> {
    let params = tower.params;
    let sq = tower.add(tower.mul(a, a), tower.mul(b, b));
    let gamma_s1 = tower.trace(sq, params.s1)?;
    let gamma_s2 = tower.trace(sq, params.s2)?;
    let theta = if gamma_s2 != 0 && params.s2 % params.s1 == 0 {
        let ratio = tower.mul(tower.mul(c, c), tower.inv(gamma_s2));
        Some(tower.trace_between(ratio, params.s1, params.s2)?)
    } else {
        None
    };
    Ok(GammaTheta {
        gamma_s1,
        gamma_s2,
        theta,
    })
}

/// Closed count N(a, b, c) = |{(x, y) ∈ D : Tr_{s2}(ax + by) + c = 0}|.
///
/// Case split: (a, b) = (0, 0) is the whole set or nothing; otherwise the
/// s2 | s1 shape depends on (Γ(s1), c) and the s1 | s2 shape on
/// (Γ(s2), c, parity of s2/s1, Θ). When s1 = s2 both shapes apply and agree;
/// the s2 | s1 branch is used.
pub fn count_n_ab(tower: &FieldTower, a: u64, b: u64, c: u64) -> Result<i128> {
    let params = tower.params;
    let Params { p, s, s1, s2 } = params;
    if !tower.is_in_subfield(c, s2) {
        return Err(Error::NotInSubfield {
            element: c,
            level: s2,
        });
    }
    if a == 0 && b == 0 {
        return if c == 0 { code_length(&params) } else { Ok(0) };
    }
    let pi = p as i128;
    let g2 = gauss_square(p, s);
    let bulk = pow(pi, 2 * s - s1 - s2);
    let gt = gamma_theta(tower, a, b, c)?;

    if s1 % s2 == 0 {
        // s2 | s1: four cells on (Γ(s1), c)
        return match (gt.gamma_s1 == 0, c == 0) {
            (true, true) => {
                let extra = exact_div((pow(pi, s1) - 1) * g2, pow(pi, s1), "N(a,b) cell")?;
                Ok(bulk + extra)
            }
            (true, false) => Ok(bulk),
            (false, true) => exact_div(
                pow(pi, 2 * s) + (pow(pi, s1) - pow(pi, s2)) * g2,
                pow(pi, s1 + s2),
                "N(a,b) cell",
            ),
            (false, false) => {
                let extra = exact_div(g2, pow(pi, s2), "N(a,b) cell")?;
                Ok(bulk + extra)
            }
        };
    }
    if s2 % s1 != 0 {
        return Err(Error::IncompatibleLevels { s1, s2 });
    }

    // s1 | s2 strictly
    let t_odd = (s2 / s1) % 2 == 1;
    if gt.gamma_s2 == 0 {
        if c == 0 {
            let extra = exact_div((pow(pi, s1) - 1) * g2, pow(pi, s1), "N(a,b) cell")?;
            return Ok(bulk + extra);
        }
        return Ok(bulk);
    }
    let eta2_neg_gamma = tower.quad_character(tower.neg(gt.gamma_s2), s2)? as i128;
    let theta = gt.theta.expect("Γ(s2) nonzero fixes Θ");
    let denom = pow(pi, s1 + s2);
    if t_odd {
        if c == 0 || theta == 0 {
            return Ok(bulk);
        }
        let eta1_theta = tower.quad_character(theta, s1)? as i128;
        let gpp = gauss_product_eval(&[gauss_symbol(p, s1), gauss_symbol(p, s2)])?;
        return exact_div(
            pow(pi, 2 * s) + eta2_neg_gamma * eta1_theta * gpp * g2,
            denom,
            "N(a,b) cell",
        );
    }
    let gpp = gauss_product_eval(&[gauss_symbol(p, s2)])?;
    if c == 0 || theta == 0 {
        return exact_div(
            pow(pi, 2 * s) + eta2_neg_gamma * (pow(pi, s1) - 1) * gpp * g2,
            denom,
            "N(a,b) cell",
        );
    }
    exact_div(
        pow(pi, 2 * s) - eta2_neg_gamma * gpp * g2,
        denom,
        "N(a,b) cell",
    )
}

/// Direct enumeration oracle for [`count_n_ab`]: walks all of F_q² with
/// dense per-element trace index tables.
pub fn count_n_ab_oracle(tower: &FieldTower, a: u64, b: u64, c: u64) -> Result<i128> {
    let params = tower.params;
    let q = tower.q() as usize;
    let sf1 = tower.subfield(params.s1)?;
    let sf2 = tower.subfield(params.s2)?;
    let neg_c = sf2
        .index_of(tower.neg(c))
        .ok_or(Error::NotInSubfield {
            element: c,
            level: params.s2,
        })?;
    let mut t2 = vec![0u16; q];
    let mut ta = vec![0u16; q];
    let mut tb = vec![0u16; q];
    for z in 0..q as u64 {
        let zz = tower.trace(tower.mul(z, z), params.s1)?;
        t2[z as usize] = sf1.index_of(zz).expect("trace lands in subfield");
        let az = tower.trace(tower.mul(a, z), params.s2)?;
        ta[z as usize] = sf2.index_of(az).expect("trace lands in subfield");
        let bz = tower.trace(tower.mul(b, z), params.s2)?;
        tb[z as usize] = sf2.index_of(bz).expect("trace lands in subfield");
    }
    let mut n: i128 = 0;
    for x in 0..q {
        let tx = t2[x];
        let ax = ta[x];
        for y in 0..q {
            if sf1.add_idx(tx, t2[y]) == 0 && sf2.add_idx(ax, tb[y]) == neg_c {
                n += 1;
            }
        }
    }
    Ok(n)
}

pub(crate) fn pow(base: i128, e: u32) -> i128 {
    let mut acc: i128 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(base).expect("count overflow");
    }
    acc
}

pub(crate) fn exact_div(num: i128, den: i128, what: &str) -> Result<i128> {
    if den == 0 || num % den != 0 {
        return Err(Error::NonIntegralEntry {
            detail: format!("{what}: {num} not divisible by {den}"),
        });
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_tower;

    fn t(p: u64, s: u32, s1: u32, s2: u32) -> std::sync::Arc<FieldTower> {
        make_tower(Params::new(p, s, s1, s2).unwrap()).unwrap()
    }

    #[test]
    fn known_lengths() {
        let cases = [
            ((3, 2, 1, 1), 33),
            ((3, 3, 1, 1), 225),
            ((3, 4, 1, 2), 2241),
            ((3, 2, 2, 1), 17),
            ((5, 1, 1, 1), 9),
            ((5, 2, 1, 2), 145),
            ((5, 2, 2, 2), 49),
            ((13, 1, 1, 1), 25),
            ((3, 1, 1, 1), 1),
            ((7, 1, 1, 1), 1),
        ];
        for ((p, s, s1, s2), want) in cases {
            let params = Params::new(p, s, s1, s2).unwrap();
            assert_eq!(code_length(&params).unwrap(), want, "{params:?}");
        }
    }

    #[test]
    fn defining_set_matches_length_and_ordering() {
        for (p, s, s1, s2) in [(3, 2, 1, 1), (3, 2, 2, 1), (3, 3, 1, 1), (5, 2, 1, 2)] {
            let tw = t(p, s, s1, s2);
            let ds = enumerate_defining_set(&tw).unwrap();
            assert_eq!(ds.pairs.len() as i128, code_length(&tw.params).unwrap());
            assert_eq!(*ds.pairs.last().unwrap(), (0, 0));
            let body = &ds.pairs[..ds.pairs.len() - 1];
            assert!(body.windows(2).all(|w| w[0] < w[1]));
            for &(x, y) in &ds.pairs {
                let v = tw
                    .trace(tw.add(tw.mul(x, x), tw.mul(y, y)), s1)
                    .unwrap();
                assert_eq!(v, 0);
            }
        }
    }

    #[test]
    fn defining_set_size_17_is_the_isotropic_cone() {
        // For (3,2,2,1) the condition degenerates to x² + y² = 0 in F_9,
        // i.e. y = ±i·x with i = ω².
        let tw = t(3, 2, 2, 1);
        let ds = enumerate_defining_set(&tw).unwrap();
        assert_eq!(ds.pairs.len(), 17);
        let i_unit = tw.omega_pow(2);
        let mut expect: Vec<(u64, u64)> = vec![(0, 0)];
        for x in 1..9 {
            expect.push((x, tw.mul(i_unit, x)));
            expect.push((x, tw.neg(tw.mul(i_unit, x))));
        }
        let mut got = ds.pairs.clone();
        got.sort_unstable();
        expect.sort_unstable();
        assert_eq!(got, expect);
    }

    #[test]
    fn c_rho_count_matches_oracle() {
        for (p, s, s1, s2) in [(3, 3, 1, 3), (3, 3, 3, 3), (5, 3, 1, 3), (3, 1, 1, 1), (7, 3, 1, 3)]
        {
            let tw = t(p, s, s1, s2);
            for &mu in &tw.subfield_elements(s2).unwrap() {
                if mu == 0 {
                    continue;
                }
                for &rho in &tw.subfield_elements(s1).unwrap() {
                    assert_eq!(
                        count_n_c_rho(&tw, mu, rho).unwrap(),
                        count_n_c_rho_oracle(&tw, mu, rho).unwrap(),
                        "p={p} s={s} s1={s1} s2={s2} mu={mu} rho={rho}"
                    );
                }
            }
        }
    }

    #[test]
    fn c_rho_rejects_even_quotient_and_zero_mu() {
        let tw = t(3, 2, 1, 2);
        assert_eq!(
            count_n_c_rho(&tw, 1, 0),
            Err(Error::QuotientNotOdd { s1: 1, s2: 2 })
        );
        let tw = t(3, 3, 1, 3);
        assert_eq!(count_n_c_rho(&tw, 0, 0), Err(Error::ZeroMu));
    }

    #[test]
    fn count_rejects_c_outside_alphabet() {
        let tw = t(3, 2, 1, 1);
        // ω (encoding 3) is not in F_3
        assert_eq!(
            count_n_ab(&tw, 1, 0, 3),
            Err(Error::NotInSubfield {
                element: 3,
                level: 1
            })
        );
    }

    #[test]
    fn zero_message_counts() {
        let tw = t(3, 2, 1, 1);
        assert_eq!(count_n_ab(&tw, 0, 0, 0).unwrap(), 33);
        assert_eq!(count_n_ab(&tw, 0, 0, 1).unwrap(), 0);
    }

    #[test]
    fn closed_count_matches_oracle_exhaustively_small() {
        // Every (a, b, c) for the small towers in both branch shapes.
        for (p, s, s1, s2) in [
            (3, 1, 1, 1),
            (3, 2, 1, 1),
            (3, 2, 2, 1),
            (3, 2, 1, 2),
            (3, 2, 2, 2),
            (5, 1, 1, 1),
        ] {
            let tw = t(p, s, s1, s2);
            let alphabet = tw.subfield_elements(s2).unwrap();
            for a in 0..tw.q() {
                for b in 0..tw.q() {
                    for &c in &alphabet {
                        assert_eq!(
                            count_n_ab(&tw, a, b, c).unwrap(),
                            count_n_ab_oracle(&tw, a, b, c).unwrap(),
                            "p={p} s={s} s1={s1} s2={s2} a={a} b={b} c={c}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn branch_overlap_agrees_where_both_apply() {
        // At s1 = s2 the two non-trivial shapes of the count must coincide;
        // spot-check by comparing the implementation against the oracle on a
        // tower where s1 = s2 > 1.
        let tw = t(3, 2, 2, 2);
        for a in 0..9 {
            for b in 0..9 {
                for c in 0..9 {
                    if !tw.is_in_subfield(c, 2) {
                        continue;
                    }
                    assert_eq!(
                        count_n_ab(&tw, a, b, c).unwrap(),
                        count_n_ab_oracle(&tw, a, b, c).unwrap()
                    );
                }
            }
        }
    }
}
