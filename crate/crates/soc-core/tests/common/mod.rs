//! Shared tuple-grid helpers for the integration suites.
#![allow(dead_code)]

use soc_core::{make_tower, FieldTower, Params};
use std::sync::Arc;

/// Every valid shape (p, s, s1, s2) with p drawn from `primes`, s ≤ s_max,
/// and s1, s2 divisors of s.
pub fn grid(primes: &[u64], s_max: u32) -> Vec<Params> {
    let mut shapes = Vec::new();
    for &p in primes {
        for s in 1..=s_max {
            let divisors: Vec<u32> = (1..=s).filter(|d| s % d == 0).collect();
            for &s1 in &divisors {
                for &s2 in &divisors {
                    shapes.push(Params::new(p, s, s1, s2).unwrap());
                }
            }
        }
    }
    shapes
}

/// True when the defining set collapses to {(0, 0)}: the squared Gauss sum
/// is −p^s exactly when p ≡ 3 (mod 4) and s is odd, and together with
/// s1 = s that forces code length 1.
pub fn is_degenerate(params: &Params) -> bool {
    params.p % 4 == 3 && params.s % 2 == 1 && params.s1 == params.s
}

/// Canonical tower for a shape given by bare numbers.
pub fn tower(p: u64, s: u32, s1: u32, s2: u32) -> Arc<FieldTower> {
    make_tower(Params::new(p, s, s1, s2).unwrap()).unwrap()
}

/// Odd primes up to and including `bound`.
pub fn odd_primes_upto(bound: u64) -> Vec<u64> {
    (3..=bound)
        .filter(|&m| m % 2 == 1 && (2..m).take_while(|d| d * d <= m).all(|d| m % d != 0))
        .collect()
}

/// Messages q2^k × length n: the coordinate-operation estimate used to
/// decide whether a shape is cheap enough for full enumeration.
pub fn enumeration_cost(params: &Params) -> u128 {
    let n = soc_core::counts::code_length(params).unwrap() as u128;
    let messages = (params.q2() as u128).pow(params.dimension());
    messages * n
}
