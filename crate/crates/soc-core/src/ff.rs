//! Finite field towers F_p ⊂ F_{p^s1}, F_{p^s2} ⊂ F_{p^s} in polynomial basis.
//!
//! Elements of F_{p^s} are polynomials Σ c_i x^i with 0 ≤ c_i < p, stored as
//! the canonical integer encoding Σ c_i p^i. The modulus is the
//! lexicographically smallest monic primitive polynomial of degree s, with
//! coefficient tuples compared constant term first, so every tower for a
//! given (p, s) is identical across runs. The residue of x is then a
//! multiplicative generator ω, and all multiplicative structure is handled
//! through discrete log tables.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Largest supported field order; keeps the exp/log and trace tables small.
pub const MAX_FIELD: u64 = 1 << 22;

/// Largest subfield for which dense index/add/mul tables are built; the
/// quadratic add/mul tables stay under a few dozen MB at this size.
pub const MAX_ALPHABET: u64 = 4096;

/// Tower shape (p, s, s1, s2): characteristic, full extension degree, and
/// the two marked sublevels. s1 and s2 must each divide s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub p: u64,
    pub s: u32,
    pub s1: u32,
    pub s2: u32,
}

impl Params {
    pub fn new(p: u64, s: u32, s1: u32, s2: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if s == 0 {
            return Err(Error::NonDivisor {
                what: "s",
                value: 0,
                s,
            });
        }
        for (what, value) in [("s1", s1), ("s2", s2)] {
            if value == 0 || s % value != 0 {
                return Err(Error::NonDivisor { what, value, s });
            }
        }
        match checked_pow(p, s) {
            Some(q) if q <= MAX_FIELD => {}
            _ => return Err(Error::FieldTooLarge { p, s }),
        }
        Ok(Params { p, s, s1, s2 })
    }

    /// Order of the full field, p^s.
    pub fn q(&self) -> u64 {
        self.p.pow(self.s)
    }

    /// Order of the level-s1 subfield, p^s1.
    pub fn q1(&self) -> u64 {
        self.p.pow(self.s1)
    }

    /// Order of the level-s2 subfield (the code alphabet), p^s2.
    pub fn q2(&self) -> u64 {
        self.p.pow(self.s2)
    }

    /// Claimed code dimension 2s/s2 + 1.
    pub fn dimension(&self) -> u32 {
        2 * self.s / self.s2 + 1
    }
}

fn checked_pow(p: u64, s: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..s {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense arithmetic context for one subfield: elements listed by ascending
/// encoding, a full-field index map, and index-level add/mul/neg/inv tables.
#[derive(Debug)]
pub struct Subfield {
    pub level: u32,
    pub size: usize,
    /// Subfield element encodings in ascending order; elems[0] is 0.
    pub elems: Vec<u64>,
    /// Full-field encoding -> subfield index, u32::MAX when absent.
    pub index: Vec<u32>,
    /// add[a * size + b] = index of elems[a] + elems[b].
    pub add: Vec<u16>,
    /// mul[a * size + b] = index of elems[a] * elems[b].
    pub mul: Vec<u16>,
    pub neg: Vec<u16>,
    /// inv[0] = 0 is a sentinel; callers must not invert zero.
    pub inv: Vec<u16>,
}

impl Subfield {
    /// Index of the multiplicative identity.
    pub fn one(&self) -> u16 {
        self.index[1] as u16
    }

    pub fn add_idx(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.size + b as usize]
    }

    pub fn mul_idx(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.size + b as usize]
    }

    pub fn sub_idx(&self, a: u16, b: u16) -> u16 {
        self.add_idx(a, self.neg[b as usize])
    }

    pub fn index_of(&self, enc: u64) -> Option<u16> {
        match self.index.get(enc as usize) {
            Some(&i) if i != u32::MAX => Some(i as u16),
            _ => None,
        }
    }
}

/// The tower F_p ⊂ F_{p^s1}, F_{p^s2} ⊂ F_{p^s} with full log/exp tables
/// and one trace table per divisor level of s.
pub struct FieldTower {
    pub params: Params,
    /// Modulus coefficients, constant term first, length s+1, monic.
    pub modulus: Vec<u64>,
    q: u64,
    /// exp[i] = encoding of ω^i for 0 ≤ i < q−1.
    exp: Vec<u32>,
    /// log[enc] for enc ≥ 1; log[0] is a sentinel.
    log: Vec<u32>,
    /// trace_tabs[level][enc] = encoding of Tr_level^s(enc), one per divisor.
    trace_tabs: HashMap<u32, Vec<u32>>,
    subfields: Mutex<HashMap<u32, Arc<Subfield>>>,
}

impl std::fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldTower")
            .field("params", &self.params)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Builds the canonical tower for the given shape.
pub fn make_tower(params: Params) -> Result<Arc<FieldTower>> {
    FieldTower::with_nth_modulus(params, 0)
}

impl FieldTower {
    /// Builds a tower using the (nth+1)-smallest primitive modulus. nth = 0
    /// is the canonical tower; nth > 0 exists for representation-independence
    /// tests.
    pub fn with_nth_modulus(params: Params, nth: usize) -> Result<Arc<FieldTower>> {
        let p = params.p;
        let s = params.s;
        let q = params.q();
        let modulus = find_primitive_modulus(p, s, nth)?;

        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![0u64; s as usize];
        cur[0] = 1;
        for i in 0..(q - 1) as usize {
            let enc = encode(&cur, p);
            exp[i] = enc as u32;
            log[enc as usize] = i as u32;
            mul_by_x(&mut cur, &modulus, p);
        }
        debug_assert_eq!(encode(&cur, p), 1, "ω must have order q−1");

        let mut trace_tabs = HashMap::new();
        for t in 1..=s {
            if s % t != 0 {
                continue;
            }
            let mut tab = vec![0u32; q as usize];
            let span = (q - 1) as u128;
            for (enc, slot) in tab.iter_mut().enumerate().skip(1) {
                let l = log[enc] as u128;
                let mut acc = 0u64;
                let mut shift = 1u128;
                for _ in 0..s / t {
                    let conj = exp[(l * shift % span) as usize] as u64;
                    acc = add_enc(acc, conj, p);
                    shift = shift * (p as u128).pow(t) % span;
                }
                *slot = acc as u32;
            }
            trace_tabs.insert(t, tab);
        }

        Ok(Arc::new(FieldTower {
            params,
            modulus,
            q,
            exp,
            log,
            trace_tabs,
            subfields: Mutex::new(HashMap::new()),
        }))
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The multiplicative generator ω (the residue of x).
    pub fn generator(&self) -> u64 {
        self.omega_pow(1)
    }

    /// ω^i for any i ≥ 0.
    pub fn omega_pow(&self, i: u64) -> u64 {
        self.exp[(i % (self.q - 1)) as usize] as u64
    }

    pub fn log(&self, a: u64) -> Option<u64> {
        if a == 0 || a >= self.q {
            None
        } else {
            Some(self.log[a as usize] as u64)
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        add_enc(a, b, self.params.p)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let p = self.params.p;
        let mut r = 0;
        let mut m = 1;
        let mut a = a;
        while a != 0 {
            let d = a % p;
            if d != 0 {
                r += (p - d) * m;
            }
            m *= p;
            a /= p;
        }
        r
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let span = self.q - 1;
        let i = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % span;
        self.exp[i as usize] as u64
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0, "inverse of zero");
        let span = self.q - 1;
        let i = (span - self.log[a as usize] as u64) % span;
        self.exp[i as usize] as u64
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let span = self.q - 1;
        let i = (self.log[a as usize] as u64 * (e % span)) % span;
        self.exp[i as usize] as u64
    }

    /// Embedding of the integer m (mod p) into the prime subfield.
    pub fn element_from_int(&self, m: u64) -> u64 {
        m % self.params.p
    }

    fn subfield_step(&self, level: u32) -> u64 {
        (self.q - 1) / (self.params.p.pow(level) - 1)
    }

    pub fn is_in_subfield(&self, z: u64, level: u32) -> bool {
        if self.params.s % level != 0 {
            return false;
        }
        z == 0 || self.log[z as usize] as u64 % self.subfield_step(level) == 0
    }

    fn check_level(&self, level: u32) -> Result<()> {
        if level == 0 || self.params.s % level != 0 {
            return Err(Error::NonDivisor {
                what: "level",
                value: level,
                s: self.params.s,
            });
        }
        Ok(())
    }

    /// Tr_level^s(z), by table lookup.
    pub fn trace(&self, z: u64, level: u32) -> Result<u64> {
        self.check_level(level)?;
        Ok(self.trace_tabs[&level][z as usize] as u64)
    }

    /// Relative trace Tr_{lo}^{hi}(z) for lo | hi | s and z in the level-hi
    /// subfield: Σ z^{p^{lo·i}} over i < hi/lo.
    pub fn trace_between(&self, z: u64, lo: u32, hi: u32) -> Result<u64> {
        self.check_level(lo)?;
        self.check_level(hi)?;
        if hi % lo != 0 {
            return Err(Error::NonDivisor {
                what: "lo",
                value: lo,
                s: hi,
            });
        }
        if !self.is_in_subfield(z, hi) {
            return Err(Error::NotInSubfield {
                element: z,
                level: hi,
            });
        }
        if z == 0 {
            return Ok(0);
        }
        let span = (self.q - 1) as u128;
        let l = self.log[z as usize] as u128;
        let mut acc = 0u64;
        let mut shift = 1u128;
        for _ in 0..hi / lo {
            let conj = self.exp[(l * shift % span) as usize] as u64;
            acc = self.add(acc, conj);
            shift = shift * (self.params.p as u128).pow(lo) % span;
        }
        Ok(acc)
    }

    /// Quadratic character of the level-t subfield: +1 on nonzero squares,
    /// −1 on non-squares, 0 at 0.
    pub fn quad_character(&self, z: u64, level: u32) -> Result<i32> {
        self.check_level(level)?;
        if z == 0 {
            return Ok(0);
        }
        if !self.is_in_subfield(z, level) {
            return Err(Error::NotInSubfield { element: z, level });
        }
        let j = self.log[z as usize] as u64 / self.subfield_step(level);
        Ok(if j % 2 == 0 { 1 } else { -1 })
    }

    /// Same character evaluated as z^((p^level−1)/2); test oracle for the
    /// log-based path.
    pub fn quad_character_by_pow(&self, z: u64, level: u32) -> Result<i32> {
        self.check_level(level)?;
        if z == 0 {
            return Ok(0);
        }
        if !self.is_in_subfield(z, level) {
            return Err(Error::NotInSubfield { element: z, level });
        }
        let v = self.pow(z, (self.params.p.pow(level) - 1) / 2);
        Ok(if v == 1 { 1 } else { -1 })
    }

    /// All elements of the level-t subfield, ascending by encoding.
    pub fn subfield_elements(&self, level: u32) -> Result<Vec<u64>> {
        self.check_level(level)?;
        let m = self.params.p.pow(level);
        let step = self.subfield_step(level);
        let mut elems = Vec::with_capacity(m as usize);
        elems.push(0);
        for j in 0..m - 1 {
            elems.push(self.exp[(j * step) as usize] as u64);
        }
        elems.sort_unstable();
        Ok(elems)
    }

    /// Dense table context for the level-t subfield, cached per level.
    pub fn subfield(&self, level: u32) -> Result<Arc<Subfield>> {
        self.check_level(level)?;
        if let Some(sf) = self.subfields.lock().unwrap().get(&level) {
            return Ok(sf.clone());
        }
        let m = self.params.p.pow(level);
        if m > MAX_ALPHABET {
            return Err(Error::FieldTooLarge {
                p: self.params.p,
                s: level,
            });
        }
        let elems = self.subfield_elements(level)?;
        let size = elems.len();
        let mut index = vec![u32::MAX; self.q as usize];
        for (i, &e) in elems.iter().enumerate() {
            index[e as usize] = i as u32;
        }
        let mut add = vec![0u16; size * size];
        let mut mul = vec![0u16; size * size];
        for a in 0..size {
            for b in 0..size {
                add[a * size + b] = index[self.add(elems[a], elems[b]) as usize] as u16;
                mul[a * size + b] = index[self.mul(elems[a], elems[b]) as usize] as u16;
            }
        }
        let neg: Vec<u16> = elems
            .iter()
            .map(|&e| index[self.neg(e) as usize] as u16)
            .collect();
        let inv: Vec<u16> = elems
            .iter()
            .map(|&e| {
                if e == 0 {
                    0
                } else {
                    index[self.inv(e) as usize] as u16
                }
            })
            .collect();
        let sf = Arc::new(Subfield {
            level,
            size,
            elems,
            index,
            add,
            mul,
            neg,
            inv,
        });
        self.subfields
            .lock()
            .unwrap()
            .insert(level, sf.clone());
        Ok(sf)
    }

    /// SHA-256 of the canonical tower description; stable across runs.
    pub fn fingerprint(&self) -> String {
        let Params { p, s, s1, s2 } = self.params;
        let text = format!(
            "p={} s={} s1={} s2={} modulus={:?}",
            p, s, s1, s2, self.modulus
        );
        let mut hasher = Sha256::new();
        hasher.update(text.as_bytes());
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Digitwise base-p addition of two encodings (no carries across digits).
fn add_enc(a: u64, b: u64, p: u64) -> u64 {
    let mut r = 0;
    let mut m = 1;
    let (mut a, mut b) = (a, b);
    while a != 0 || b != 0 {
        let d = (a % p + b % p) % p;
        r += d * m;
        m *= p;
        a /= p;
        b /= p;
    }
    r
}

fn encode(digits: &[u64], p: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Multiplies the digit vector by x and reduces by the monic modulus.
fn mul_by_x(cur: &mut [u64], modulus: &[u64], p: u64) {
    let s = cur.len();
    let top = cur[s - 1];
    for j in (1..s).rev() {
        cur[j] = cur[j - 1];
    }
    cur[0] = 0;
    if top != 0 {
        for j in 0..s {
            cur[j] = (cur[j] + top * (p - modulus[j]) % p) % p;
        }
    }
}

/// Finds the (nth+1)-smallest monic primitive polynomial of degree s over
/// F_p, coefficient tuples ordered lexicographically constant term first.
fn find_primitive_modulus(p: u64, s: u32, nth: usize) -> Result<Vec<u64>> {
    let q = checked_pow(p, s).ok_or(Error::FieldTooLarge { p, s })?;
    let factors = prime_factors(q - 1);
    let mut seen = 0;
    let mut coeffs = vec![0u64; s as usize + 1];
    coeffs[s as usize] = 1;
    let mut weights = vec![0u64; s as usize];
    for (i, w) in weights.iter_mut().enumerate() {
        // coefficient c_i carries weight p^{s−1−i}: c_0 is most significant
        *w = p.pow(s - 1 - i as u32);
    }
    for t in 0..q {
        for i in 0..s as usize {
            coeffs[i] = t / weights[i] % p;
        }
        if is_primitive(&coeffs, p, q, &factors) {
            if seen == nth {
                return Ok(coeffs);
            }
            seen += 1;
        }
    }
    unreachable!("primitive polynomials exist for every prime power");
}

/// ord(x) == q−1 in F_p[x]/(f). A non-field quotient has fewer than q−1
/// units, so passing this test also certifies irreducibility.
fn is_primitive(f: &[u64], p: u64, q: u64, factors: &[u64]) -> bool {
    if f[0] == 0 {
        return false;
    }
    if poly_pow_x(q - 1, f, p) != one_poly(f.len() - 1) {
        return false;
    }
    for &r in factors {
        if poly_pow_x((q - 1) / r, f, p) == one_poly(f.len() - 1) {
            return false;
        }
    }
    true
}

fn one_poly(s: usize) -> Vec<u64> {
    let mut v = vec![0u64; s];
    v[0] = 1;
    v
}

/// x^e mod f by square and multiply on degree-< s coefficient vectors.
fn poly_pow_x(e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let s = f.len() - 1;
    let mut base = vec![0u64; s];
    if s == 1 {
        base[0] = (p - f[0]) % p;
    } else {
        base[1] = 1;
    }
    let mut acc = one_poly(s);
    let mut e = e;
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &sq, f, p);
        }
        sq = poly_mulmod(&sq, &sq, f, p);
        e >>= 1;
    }
    acc
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let s = f.len() - 1;
    let mut prod = vec![0u64; 2 * s - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    for d in (s..2 * s - 1).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for j in 0..s {
            prod[d - s + j] = (prod[d - s + j] + c * (p - f[j]) % p) % p;
        }
    }
    prod.truncate(s);
    prod
}
