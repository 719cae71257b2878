//! Exact quadratic Gauss sums and character sums.
//!
//! The quadratic Gauss sum over F_{p^level} has the closed form
//! (−1)^{level−1} (√−1)^{((p−1)/2)²·level} √(p^level). [`GaussSymbol`] keeps
//! that shape symbolically as a power of i and a half-power of p, so products
//! of Gauss sums can be combined and evaluated exactly when they are rational
//! integers. [`CyclotomicInt`] is exact arithmetic in Z[ζ_p], used both to
//! expand Gauss sums into sums of roots of unity and as the value space for
//! complete character sums.

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::FieldTower;

/// Symbolic (√−1)^i_exponent · p^{halfpow/2}: the unit and magnitude of a
/// quadratic Gauss sum or a product of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussSymbol {
    pub p: u64,
    /// Power of √−1, reduced mod 4.
    pub i_exponent: u8,
    /// The magnitude is p^{halfpow/2}.
    pub halfpow: u32,
}

/// Symbol of the quadratic Gauss sum over F_{p^level}.
pub fn gauss_symbol(p: u64, level: u32) -> GaussSymbol {
    let unit_sq = ((p - 1) / 2) * ((p - 1) / 2) % 4;
    let i_exponent = ((2 * (level as u64 - 1) + unit_sq * level as u64) % 4) as u8;
    GaussSymbol {
        p,
        i_exponent,
        halfpow: level,
    }
}

/// The square of the Gauss sum over F_{p^level}: (−1)^{((p−1)/2)²·level} p^level.
pub fn gauss_square(p: u64, level: u32) -> i128 {
    let negative = p % 4 == 3 && level % 2 == 1;
    let mag = pow_i128(p, level);
    if negative {
        -mag
    } else {
        mag
    }
}

/// Multiplies Gauss symbols and evaluates the product as a rational integer.
/// Errors with NonIntegral when the product has an odd half-power of p or a
/// non-real unit, and MixedPrimes when the symbols disagree on p.
pub fn gauss_product_eval(symbols: &[GaussSymbol]) -> Result<i128> {
    if symbols.is_empty() {
        return Ok(1);
    }
    let p = symbols[0].p;
    let mut i_exp = 0u32;
    let mut halfpow = 0u32;
    for sym in symbols {
        if sym.p != p {
            return Err(Error::MixedPrimes);
        }
        i_exp = (i_exp + sym.i_exponent as u32) % 4;
        halfpow += sym.halfpow;
    }
    if halfpow % 2 != 0 || i_exp % 2 != 0 {
        return Err(Error::NonIntegral);
    }
    let mag = pow_i128(p, halfpow / 2);
    Ok(if i_exp == 0 { mag } else { -mag })
}

/// +1 when −1 is a square in F_{p^level}, i.e. p^level ≡ 1 (mod 4).
pub fn eta_minus_one(p: u64, level: u32) -> i32 {
    if p % 4 == 1 || level % 2 == 0 {
        1
    } else {
        -1
    }
}

fn pow_i128(p: u64, e: u32) -> i128 {
    let mut acc: i128 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p as i128).expect("Gauss magnitude overflow");
    }
    acc
}

/// An element of Z[ζ_p] in the basis 1, ζ, …, ζ^{p−2}, with
/// ζ^{p−1} = −(1 + ζ + … + ζ^{p−2}).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicInt {
    pub p: u64,
    pub coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    pub fn zero(p: u64) -> Self {
        CyclotomicInt {
            p,
            coeffs: vec![BigInt::zero(); (p - 1) as usize],
        }
    }

    pub fn from_integer(p: u64, v: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(p);
        out.coeffs[0] = v.into();
        out
    }

    /// ζ^k for any exponent, reduced into the basis.
    pub fn zeta_pow(p: u64, k: u64) -> Self {
        let k = (k % p) as usize;
        let mut out = Self::zero(p);
        if k < (p - 1) as usize {
            out.coeffs[k] = BigInt::one();
        } else {
            for c in out.coeffs.iter_mut() {
                *c = -BigInt::one();
            }
        }
        out
    }

    /// Builds from raw counts per exponent 0..p−1 (e.g. a character-sum
    /// accumulator), folding the ζ^{p−1} slot into the basis.
    pub fn from_exponent_counts(p: u64, counts: &[BigInt]) -> Self {
        assert_eq!(counts.len(), p as usize);
        let top = counts[(p - 1) as usize].clone();
        let mut out = Self::zero(p);
        for (k, c) in counts.iter().take((p - 1) as usize).enumerate() {
            out.coeffs[k] = c - &top;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        CyclotomicInt {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CyclotomicInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, k: &BigInt) -> Self {
        CyclotomicInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let p = self.p as usize;
        let mut acc = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                acc[(i + j) % p] += a * b;
            }
        }
        Self::from_exponent_counts(self.p, &acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::from_integer(self.p, 1);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Applies the Galois map ζ ↦ ζ^k for k coprime to p.
    pub fn galois(&self, k: u64) -> Self {
        assert!(k % self.p != 0);
        let p = self.p as usize;
        let mut acc = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            acc[i * (k as usize % p) % p] += a;
        }
        Self::from_exponent_counts(self.p, &acc)
    }

    /// Field norm: the product over all Galois conjugates; always a rational
    /// integer.
    pub fn norm(&self) -> BigInt {
        let mut prod = Self::from_integer(self.p, 1);
        for k in 1..self.p {
            prod = prod.mul(&self.galois(k));
        }
        prod.as_integer().expect("norm must be rational")
    }
}

fn legendre(c: u64, p: u64) -> i32 {
    let mut acc: u64 = 1;
    let mut base = c % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// The Gauss sum over F_{p^level} expanded in Z[ζ_p]: by the Hasse–Davenport
/// relation it equals (−1)^{level−1} (Σ_c legendre(c) ζ^c)^level.
pub fn gauss_cyclotomic(p: u64, level: u32) -> CyclotomicInt {
    let mut base = CyclotomicInt::zero(p);
    for c in 1..p {
        let term = CyclotomicInt::zeta_pow(p, c);
        if legendre(c, p) == 1 {
            base = base.add(&term);
        } else {
            base = base.sub(&term);
        }
    }
    let out = base.pow(level);
    if level % 2 == 0 {
        out.neg()
    } else {
        out
    }
}

/// Direct summation oracle: Σ over nonzero z in the level-t subfield of
/// η_t(z) ζ^{Tr_1^t(z)}.
pub fn gauss_sum_direct(tower: &FieldTower, level: u32) -> Result<CyclotomicInt> {
    let p = tower.params.p;
    let mut acc = vec![BigInt::zero(); p as usize];
    for &z in &tower.subfield_elements(level)? {
        if z == 0 {
            continue;
        }
        let e = tower.trace_between(z, 1, level)? as usize;
        if tower.quad_character(z, level)? == 1 {
            acc[e] += 1;
        } else {
            acc[e] -= 1;
        }
    }
    Ok(CyclotomicInt::from_exponent_counts(p, &acc))
}

/// Closed form of Σ_{z ∈ F_{p^s}} ψ(h2 z² + h1 z + h0) with ψ(y) =
/// ζ_p^{Tr_1^s(y)}: ψ(h0 − h1²/(4h2)) · η(h2) · 𝒢. Requires h2 ≠ 0.
pub fn char_sum_quadratic(
    tower: &FieldTower,
    h2: u64,
    h1: u64,
    h0: u64,
) -> Result<CyclotomicInt> {
    if h2 == 0 {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let p = tower.params.p;
    let s = tower.params.s;
    let four = tower.element_from_int(4);
    let shift = tower.mul(tower.mul(h1, h1), tower.inv(tower.mul(four, h2)));
    let u = tower.sub(h0, shift);
    let psi_u = CyclotomicInt::zeta_pow(p, tower.trace(u, 1)?);
    let gauss = gauss_cyclotomic(p, s);
    let signed = if tower.quad_character(h2, s)? == 1 {
        gauss
    } else {
        gauss.neg()
    };
    Ok(psi_u.mul(&signed))
}

/// Direct summation oracle for [`char_sum_quadratic`].
pub fn char_sum_quadratic_direct(
    tower: &FieldTower,
    h2: u64,
    h1: u64,
    h0: u64,
) -> Result<CyclotomicInt> {
    if h2 == 0 {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let p = tower.params.p;
    let mut acc = vec![BigInt::zero(); p as usize];
    for z in 0..tower.q() {
        let val = tower.add(tower.add(tower.mul(h2, tower.mul(z, z)), tower.mul(h1, z)), h0);
        acc[tower.trace(val, 1)? as usize] += 1;
    }
    Ok(CyclotomicInt::from_exponent_counts(p, &acc))
}

/// True when every coefficient magnitude stays below the given bound; used
/// by tests as a cheap sanity guard on intermediate growth.
pub fn coeffs_bounded(v: &CyclotomicInt, bound: &BigInt) -> bool {
    v.coeffs.iter().all(|c| &c.abs() < bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{make_tower, Params};

    #[test]
    fn symbol_squares_match_gauss_square() {
        for p in [3u64, 5, 7, 11, 13] {
            for level in 1..=4u32 {
                let sym = gauss_symbol(p, level);
                let sq = gauss_product_eval(&[sym, sym]).unwrap();
                assert_eq!(sq, gauss_square(p, level), "p={p} level={level}");
            }
        }
    }

    #[test]
    fn known_symbol_values() {
        // 𝒢 over F_3 is i√3; over F_9 it is +3; over F_81 it is −9.
        assert_eq!(gauss_symbol(3, 1).i_exponent, 1);
        assert_eq!(gauss_product_eval(&[gauss_symbol(3, 2)]).unwrap(), 3);
        assert_eq!(gauss_product_eval(&[gauss_symbol(3, 4)]).unwrap(), -9);
        assert_eq!(gauss_product_eval(&[gauss_symbol(5, 2)]).unwrap(), -5);
        assert_eq!(
            gauss_product_eval(&[gauss_symbol(3, 1), gauss_symbol(3, 3)]).unwrap(),
            9
        );
    }

    #[test]
    fn product_error_cases() {
        assert_eq!(
            gauss_product_eval(&[gauss_symbol(3, 1)]),
            Err(Error::NonIntegral)
        );
        assert_eq!(
            gauss_product_eval(&[gauss_symbol(3, 1), gauss_symbol(5, 1)]),
            Err(Error::MixedPrimes)
        );
    }

    #[test]
    fn eta_minus_one_by_residue() {
        assert_eq!(eta_minus_one(3, 1), -1);
        assert_eq!(eta_minus_one(3, 2), 1);
        assert_eq!(eta_minus_one(5, 1), 1);
        assert_eq!(eta_minus_one(7, 3), -1);
        assert_eq!(eta_minus_one(13, 1), 1);
    }

    #[test]
    fn zeta_has_order_p() {
        for p in [3u64, 5, 7] {
            for k in 1..p {
                let prod = CyclotomicInt::zeta_pow(p, k).mul(&CyclotomicInt::zeta_pow(p, p - k));
                assert_eq!(prod, CyclotomicInt::from_integer(p, 1));
            }
        }
    }

    #[test]
    fn all_pth_roots_sum_to_zero() {
        for p in [3u64, 5, 7, 11] {
            let mut acc = CyclotomicInt::zero(p);
            for k in 0..p {
                acc = acc.add(&CyclotomicInt::zeta_pow(p, k));
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn norm_of_zeta_minus_zeta_squared() {
        let v = CyclotomicInt::zeta_pow(3, 1).sub(&CyclotomicInt::zeta_pow(3, 2));
        assert_eq!(v.coeffs, vec![BigInt::from(1), BigInt::from(2)]);
        assert_eq!(v.norm(), BigInt::from(3));
    }

    #[test]
    fn gauss_cyclotomic_base_case() {
        let g = gauss_cyclotomic(3, 1);
        assert_eq!(g.coeffs, vec![BigInt::from(1), BigInt::from(2)]);
        assert_eq!(
            g.mul(&g).as_integer().unwrap(),
            BigInt::from(gauss_square(3, 1))
        );
    }

    #[test]
    fn gauss_cyclotomic_square_is_symbol_square() {
        for p in [3u64, 5, 7, 11] {
            for level in 1..=3u32 {
                let g = gauss_cyclotomic(p, level);
                assert_eq!(
                    g.mul(&g).as_integer().unwrap(),
                    BigInt::from(gauss_square(p, level)),
                    "p={p} level={level}"
                );
            }
        }
    }

    #[test]
    fn direct_sum_matches_lifted_formula() {
        // Executable Hasse–Davenport on real towers.
        for (p, s) in [(3u64, 1u32), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2)] {
            let t = make_tower(Params::new(p, s, 1, 1).unwrap()).unwrap();
            for level in 1..=s {
                if s % level != 0 {
                    continue;
                }
                assert_eq!(
                    gauss_sum_direct(&t, level).unwrap(),
                    gauss_cyclotomic(p, level),
                    "p={p} s={s} level={level}"
                );
            }
        }
    }

    #[test]
    fn char_sum_paths_agree_small() {
        for (p, s) in [(3u64, 1u32), (3, 2), (5, 1)] {
            let t = make_tower(Params::new(p, s, 1, 1).unwrap()).unwrap();
            for h2 in 1..t.q() {
                for h1 in 0..t.q() {
                    for h0 in 0..t.q() {
                        assert_eq!(
                            char_sum_quadratic(&t, h2, h1, h0).unwrap(),
                            char_sum_quadratic_direct(&t, h2, h1, h0).unwrap(),
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn char_sum_rejects_degenerate_quadratic() {
        let t = make_tower(Params::new(3, 2, 1, 1).unwrap()).unwrap();
        assert_eq!(
            char_sum_quadratic(&t, 0, 1, 1),
            Err(Error::ZeroLeadingCoefficient)
        );
    }
}
