//! Code construction over the defining set.
//!
//! The code over F_{p^s2} attached to a tower has one coordinate per pair in
//! the defining set D and codewords Tr_{s2}(ax + by) + c over (a, b) ∈ F_q²,
//! c ∈ F_{p^s2}. Its canonical generator matrix stacks the all-ones row with
//! the trace-coordinate rows Tr_{s2}(x ω^j) and Tr_{s2}(y ω^j); the message
//! space view and the (a, b, c) view span the same code. Matrix entries are
//! stored as dense alphabet indices so that all downstream linear algebra
//! and enumeration run on small table lookups.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::counts::{count_n_ab, enumerate_defining_set, DefiningSet};
use crate::error::{Error, Result};
use crate::ff::{FieldTower, Params, Subfield};

/// How a [`Code`] came to be; drives fast paths that rely on the canonical
/// generator layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Canonical build over the defining set: row 0 all-ones, then the
    /// trace-coordinate rows for x, then for y.
    DefiningSet,
    /// Identity-extended complementary-dual construction.
    Lcd,
    /// Row-tweaked complementary-dual construction.
    LcdVariant,
    /// Anything else (tests, loaded files with unknown layout).
    Synthetic,
}

/// A linear code with its generator matrix in alphabet-index form.
#[derive(Debug, Clone)]
pub struct Code {
    pub tower: Arc<FieldTower>,
    /// Alphabet subfield level (s2 for canonical builds).
    pub level: u32,
    pub n: usize,
    /// Rank of `rows`.
    pub k: usize,
    /// Generator rows; entries are indices into the alphabet subfield.
    pub rows: Vec<Vec<u16>>,
    pub provenance: Provenance,
}

impl Code {
    pub fn alphabet(&self) -> Arc<Subfield> {
        self.tower
            .subfield(self.level)
            .expect("alphabet context was built during construction")
    }

    /// Alphabet size, the q of [n, k]_q.
    pub fn q(&self) -> u64 {
        self.tower.params.p.pow(self.level)
    }

    /// Generator rows as canonical element encodings.
    pub fn row_encodings(&self) -> Vec<Vec<u64>> {
        let sf = self.alphabet();
        self.rows
            .iter()
            .map(|r| r.iter().map(|&i| sf.elems[i as usize]).collect())
            .collect()
    }

    /// Builds a code from rows given as element encodings. Rows are kept as
    /// given; k is the computed rank.
    pub fn from_encodings(
        tower: Arc<FieldTower>,
        level: u32,
        rows: Vec<Vec<u64>>,
        provenance: Provenance,
    ) -> Result<Code> {
        let sf = tower.subfield(level)?;
        let n = rows.first().map_or(0, |r| r.len());
        let mut idx_rows = Vec::with_capacity(rows.len());
        for row in &rows {
            if row.len() != n {
                return Err(Error::Inconsistent {
                    detail: "generator rows have unequal lengths".into(),
                });
            }
            let mut out = Vec::with_capacity(n);
            for &e in row {
                out.push(sf.index_of(e).ok_or(Error::NotInSubfield {
                    element: e,
                    level,
                })?);
            }
            idx_rows.push(out);
        }
        let k = rank(&sf, idx_rows.clone());
        Ok(Code {
            tower,
            level,
            n,
            k,
            rows: idx_rows,
            provenance,
        })
    }

    pub fn to_file(&self) -> CodeFile {
        CodeFile {
            params: self.tower.params,
            modulus: self.tower.modulus.clone(),
            fingerprint: self.tower.fingerprint(),
            alphabet_level: self.level,
            provenance: self.provenance,
            n: self.n,
            k: self.k,
            rows: self.row_encodings(),
        }
    }

    pub fn from_file(file: &CodeFile) -> Result<Code> {
        let tower = crate::ff::make_tower(file.params)?;
        if tower.modulus != file.modulus {
            return Err(Error::Inconsistent {
                detail: format!(
                    "stored modulus {:?} is not the canonical {:?}",
                    file.modulus, tower.modulus
                ),
            });
        }
        let code = Code::from_encodings(
            tower,
            file.alphabet_level,
            file.rows.clone(),
            file.provenance,
        )?;
        if code.n != file.n {
            return Err(Error::Inconsistent {
                detail: format!("stored n = {} but rows have length {}", file.n, code.n),
            });
        }
        if code.k != file.k {
            return Err(Error::Inconsistent {
                detail: format!("stored k = {} but rows have rank {}", file.k, code.k),
            });
        }
        Ok(code)
    }
}

/// Serialization form of a [`Code`]: parameters, modulus, and generator rows
/// as element encodings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeFile {
    pub params: Params,
    pub modulus: Vec<u64>,
    pub fingerprint: String,
    pub alphabet_level: u32,
    pub provenance: Provenance,
    pub n: usize,
    pub k: usize,
    pub rows: Vec<Vec<u64>>,
}

/// One codeword of the defining-set code, with entries as encodings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codeword {
    pub entries: Vec<u64>,
    pub weight: u64,
}

/// The codeword indexed by (a, b, c): Tr_{s2}(a x + b y) + c over D.
pub fn codeword(tower: &FieldTower, ds: &DefiningSet, a: u64, b: u64, c: u64) -> Result<Codeword> {
    let s2 = tower.params.s2;
    if !tower.is_in_subfield(c, s2) {
        return Err(Error::NotInSubfield {
            element: c,
            level: s2,
        });
    }
    let mut entries = Vec::with_capacity(ds.pairs.len());
    let mut weight = 0;
    for &(x, y) in &ds.pairs {
        let v = tower.add(
            tower.trace(tower.add(tower.mul(a, x), tower.mul(b, y)), s2)?,
            c,
        );
        if v != 0 {
            weight += 1;
        }
        entries.push(v);
    }
    Ok(Codeword { entries, weight })
}

/// Weight of the (a, b, c) codeword by the closed count: n − N(a, b, c).
pub fn codeword_weight_closed(tower: &FieldTower, a: u64, b: u64, c: u64) -> Result<i128> {
    let n = crate::counts::code_length(&tower.params)?;
    Ok(n - count_n_ab(tower, a, b, c)?)
}

/// Builds the canonical generator matrix over the defining set and checks
/// that it has the claimed rank 2s/s2 + 1.
pub fn build_code(tower: &Arc<FieldTower>) -> Result<Code> {
    let params = tower.params;
    let s2 = params.s2;
    let sf = tower.subfield(s2)?;
    let ds = enumerate_defining_set(tower)?;
    let n = ds.pairs.len();
    let blocks = (params.s / s2) as usize;
    let expected = 2 * blocks + 1;

    let q = tower.q() as usize;
    let mut rows = Vec::with_capacity(expected);
    rows.push(vec![sf.one(); n]);
    for source in 0..2 {
        for j in 0..blocks {
            let wj = tower.omega_pow(j as u64);
            let mut tab = vec![0u16; q];
            for (z, slot) in tab.iter_mut().enumerate() {
                let t = tower.trace(tower.mul(z as u64, wj), s2)?;
                *slot = sf.index_of(t).expect("trace lands in alphabet");
            }
            let row = ds
                .pairs
                .iter()
                .map(|&(x, y)| tab[if source == 0 { x } else { y } as usize])
                .collect();
            rows.push(row);
        }
    }

    let found = rank(&sf, rows.clone());
    if found < expected {
        return Err(Error::RankDeficient { expected, found });
    }
    Ok(Code {
        tower: tower.clone(),
        level: s2,
        n,
        k: expected,
        rows,
        provenance: Provenance::DefiningSet,
    })
}

/// Rank of the row span, by fresh elimination; `Code::k` caches this.
pub fn dimension(code: &Code) -> usize {
    rank(&code.alphabet(), code.rows.clone())
}

/// In-place reduced row echelon form over the subfield; returns the rank.
pub(crate) fn rref(sf: &Subfield, rows: &mut Vec<Vec<u16>>) -> usize {
    let n = rows.first().map_or(0, |r| r.len());
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == rows.len() {
            break;
        }
        let Some(r) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = sf.inv[rows[pivot_row][col] as usize];
        if inv != sf.one() {
            for v in rows[pivot_row].iter_mut() {
                *v = sf.mul_idx(*v, inv);
            }
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (v, &pv) in row.iter_mut().zip(&pivot) {
                *v = sf.sub_idx(*v, sf.mul_idx(factor, pv));
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    pivot_row
}

pub(crate) fn rank(sf: &Subfield, mut rows: Vec<Vec<u16>>) -> usize {
    rref(sf, &mut rows)
}

/// A row basis of the span, in reduced echelon form.
pub(crate) fn row_basis(sf: &Subfield, rows: &[Vec<u16>]) -> Vec<Vec<u16>> {
    let mut m = rows.to_vec();
    rref(sf, &mut m);
    m
}

/// A basis of the right kernel {v : rows · v = 0}, one vector per free
/// column of the echelon form.
pub(crate) fn nullspace(sf: &Subfield, rows: &[Vec<u16>]) -> Vec<Vec<u16>> {
    let mut m = rows.to_vec();
    rref(sf, &mut m);
    let n = rows.first().map_or(0, |r| r.len());
    let mut pivot_of_col = vec![usize::MAX; n];
    for (r, row) in m.iter().enumerate() {
        if let Some(c) = row.iter().position(|&v| v != 0) {
            pivot_of_col[c] = r;
        }
    }
    let mut basis = Vec::new();
    for f in 0..n {
        if pivot_of_col[f] != usize::MAX {
            continue;
        }
        let mut v = vec![0u16; n];
        v[f] = sf.one();
        for (c, &r) in pivot_of_col.iter().enumerate() {
            if r != usize::MAX {
                v[c] = sf.neg[m[r][f] as usize];
            }
        }
        basis.push(v);
    }
    basis
}

/// Solves Σ coef_i · basis_i = target over the subfield; `basis` need not be
/// echelonized. Returns the coefficients when the target is in the span.
pub(crate) fn solve_in_span(
    sf: &Subfield,
    basis: &[Vec<u16>],
    target: &[u16],
) -> Option<Vec<u16>> {
    let k = basis.len();
    let n = target.len();
    // Eliminate on columns of [basisᵀ | target] by tracking row operations.
    let mut m = basis.to_vec();
    let mut t = target.to_vec();
    let mut coef_track: Vec<Vec<u16>> = (0..k)
        .map(|i| {
            let mut e = vec![0u16; k];
            e[i] = sf.one();
            e
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == k {
            break;
        }
        let Some(r) = (pivot_row..k).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(pivot_row, r);
        coef_track.swap(pivot_row, r);
        let inv = sf.inv[m[pivot_row][col] as usize];
        for v in m[pivot_row].iter_mut() {
            *v = sf.mul_idx(*v, inv);
        }
        for v in coef_track[pivot_row].iter_mut() {
            *v = sf.mul_idx(*v, inv);
        }
        let pivot = m[pivot_row].clone();
        let pivot_coef = coef_track[pivot_row].clone();
        for r in 0..k {
            if r == pivot_row || m[r][col] == 0 {
                continue;
            }
            let factor = m[r][col];
            for (v, &pv) in m[r].iter_mut().zip(&pivot) {
                *v = sf.sub_idx(*v, sf.mul_idx(factor, pv));
            }
            for (v, &pv) in coef_track[r].iter_mut().zip(&pivot_coef) {
                *v = sf.sub_idx(*v, sf.mul_idx(factor, pv));
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    // Express target on the echelon rows.
    let mut coefs = vec![0u16; k];
    for &(r, col) in &pivots {
        let factor = t[col];
        if factor == 0 {
            continue;
        }
        for (v, &pv) in t.iter_mut().zip(&m[r]) {
            *v = sf.sub_idx(*v, sf.mul_idx(factor, pv));
        }
        for (c, &pc) in coefs.iter_mut().zip(&coef_track[r]) {
            *c = sf.add_idx(*c, sf.mul_idx(factor, pc));
        }
    }
    if t.iter().all(|&v| v == 0) {
        Some(coefs)
    } else {
        None
    }
}

/// Gram matrix G·Gᵀ of the generator rows, in alphabet indices.
pub(crate) fn gram(sf: &Subfield, rows: &[Vec<u16>]) -> Vec<Vec<u16>> {
    let k = rows.len();
    let mut g = vec![vec![0u16; k]; k];
    for i in 0..k {
        for j in i..k {
            let mut acc = 0u16;
            for (&a, &b) in rows[i].iter().zip(&rows[j]) {
                acc = sf.add_idx(acc, sf.mul_idx(a, b));
            }
            g[i][j] = acc;
            g[j][i] = acc;
        }
    }
    g
}

/// Determinant of a square index matrix over the subfield.
pub(crate) fn det(sf: &Subfield, matrix: &[Vec<u16>]) -> u16 {
    let k = matrix.len();
    let mut m = matrix.to_vec();
    let mut d = sf.one();
    for col in 0..k {
        let Some(r) = (col..k).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if r != col {
            m.swap(r, col);
            d = sf.neg[d as usize];
        }
        let pivot = m[col][col];
        d = sf.mul_idx(d, pivot);
        let inv = sf.inv[pivot as usize];
        for r in col + 1..k {
            if m[r][col] == 0 {
                continue;
            }
            let factor = sf.mul_idx(m[r][col], inv);
            let upper = m[col].clone();
            for (v, &pv) in m[r].iter_mut().zip(&upper) {
                *v = sf.sub_idx(*v, sf.mul_idx(factor, pv));
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_tower;

    fn build(p: u64, s: u32, s1: u32, s2: u32) -> Code {
        let tower = make_tower(Params::new(p, s, s1, s2).unwrap()).unwrap();
        build_code(&tower).unwrap()
    }

    #[test]
    fn known_shapes() {
        for ((p, s, s1, s2), n, k) in [
            ((3, 2, 1, 1), 33usize, 5usize),
            ((3, 2, 2, 1), 17, 5),
            ((3, 2, 1, 2), 33, 3),
            ((3, 3, 1, 1), 225, 7),
            ((5, 1, 1, 1), 9, 3),
        ] {
            let code = build(p, s, s1, s2);
            assert_eq!((code.n, code.k), (n, k), "({p},{s},{s1},{s2})");
            assert_eq!(dimension(&code), k);
        }
    }

    #[test]
    fn degenerate_family_is_rank_deficient() {
        for (p, s, s1, s2) in [(3, 1, 1, 1), (7, 1, 1, 1), (3, 3, 3, 1), (3, 3, 3, 3)] {
            let tower = make_tower(Params::new(p, s, s1, s2).unwrap()).unwrap();
            assert!(
                matches!(build_code(&tower), Err(Error::RankDeficient { .. })),
                "({p},{s},{s1},{s2})"
            );
        }
    }

    #[test]
    fn rows_are_codewords() {
        // Row 1 + j is the (ω^j, 0, 0) codeword, rows after the x block are
        // (0, ω^j, 0), and row 0 is (0, 0, 1).
        let tower = make_tower(Params::new(3, 2, 1, 1).unwrap()).unwrap();
        let code = build_code(&tower).unwrap();
        let ds = enumerate_defining_set(&tower).unwrap();
        let sf = code.alphabet();
        let decode = |row: &Vec<u16>| -> Vec<u64> {
            row.iter().map(|&i| sf.elems[i as usize]).collect()
        };
        assert_eq!(
            decode(&code.rows[0]),
            codeword(&tower, &ds, 0, 0, 1).unwrap().entries
        );
        for j in 0..2u64 {
            assert_eq!(
                decode(&code.rows[1 + j as usize]),
                codeword(&tower, &ds, tower.omega_pow(j), 0, 0).unwrap().entries
            );
            assert_eq!(
                decode(&code.rows[3 + j as usize]),
                codeword(&tower, &ds, 0, tower.omega_pow(j), 0).unwrap().entries
            );
        }
    }

    #[test]
    fn codeword_weight_matches_closed_count() {
        for (p, s, s1, s2) in [(3, 2, 1, 1), (3, 2, 1, 2), (3, 2, 2, 2), (5, 1, 1, 1)] {
            let tower = make_tower(Params::new(p, s, s1, s2).unwrap()).unwrap();
            let ds = enumerate_defining_set(&tower).unwrap();
            for a in 0..tower.q() {
                for b in 0..tower.q() {
                    for &c in &tower.subfield_elements(s2).unwrap() {
                        let direct = codeword(&tower, &ds, a, b, c).unwrap().weight;
                        let closed = codeword_weight_closed(&tower, a, b, c).unwrap();
                        assert_eq!(direct as i128, closed, "a={a} b={b} c={c}");
                    }
                }
            }
        }
    }

    #[test]
    fn rref_and_solve_round_trip() {
        let tower = make_tower(Params::new(3, 2, 1, 1).unwrap()).unwrap();
        let code = build_code(&tower).unwrap();
        let sf = code.alphabet();
        let basis = row_basis(&sf, &code.rows);
        assert_eq!(basis.len(), 5);
        // Every row is in the span of the basis; a random-ish non-codeword
        // vector is not.
        for row in &code.rows {
            let coefs = solve_in_span(&sf, &basis, row).expect("row in span");
            let mut acc = vec![0u16; code.n];
            for (c, b) in coefs.iter().zip(&basis) {
                for (a, &v) in acc.iter_mut().zip(b) {
                    *a = sf.add_idx(*a, sf.mul_idx(*c, v));
                }
            }
            assert_eq!(&acc, row);
        }
        let mut not_cw = vec![0u16; code.n];
        not_cw[0] = sf.one();
        assert!(solve_in_span(&sf, &basis, &not_cw).is_none());
    }

    #[test]
    fn nullspace_is_orthogonal_complement() {
        let tower = make_tower(Params::new(3, 2, 1, 1).unwrap()).unwrap();
        let code = build_code(&tower).unwrap();
        let sf = code.alphabet();
        let kernel = nullspace(&sf, &code.rows);
        assert_eq!(kernel.len(), code.n - code.k);
        for v in &kernel {
            for row in &code.rows {
                let mut acc = 0u16;
                for (&a, &b) in v.iter().zip(row) {
                    acc = sf.add_idx(acc, sf.mul_idx(a, b));
                }
                assert_eq!(acc, 0);
            }
        }
    }

    #[test]
    fn file_round_trip() {
        let tower = make_tower(Params::new(3, 2, 1, 2).unwrap()).unwrap();
        let code = build_code(&tower).unwrap();
        let file = code.to_file();
        let text = serde_json::to_string(&file).unwrap();
        let parsed: CodeFile = serde_json::from_str(&text).unwrap();
        let loaded = Code::from_file(&parsed).unwrap();
        assert_eq!(loaded.rows, code.rows);
        assert_eq!(loaded.k, code.k);
        assert_eq!(loaded.provenance, Provenance::DefiningSet);
    }

    #[test]
    fn det_and_gram_small() {
        let tower = make_tower(Params::new(3, 1, 1, 1).unwrap()).unwrap();
        let sf = tower.subfield(1).unwrap();
        // [[1, 2], [2, 2]] over F_3 has determinant 2·1−... = 1·2 − 2·2 = −2 = 1
        let m = vec![vec![1u16, 2], vec![2, 2]];
        assert_eq!(sf.elems[det(&sf, &m) as usize], 1);
        let g = gram(&sf, &m);
        // rows dotted: [1+4, 2+4, ...] = [[2, 0], [0, 2]]
        assert_eq!(sf.elems[g[0][0] as usize], 2);
        assert_eq!(sf.elems[g[0][1] as usize], 0);
        assert_eq!(sf.elems[g[1][1] as usize], 2);
    }
}
