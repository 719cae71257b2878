//! Embedded reference rows for the two headline families — optimal/AMDS
//! linear codes (table 4) and MDS/AMDS quantum codes (table 5) — plus the
//! verifiers that recompute every computable field.
//!
//! `Optimal` labels are golden metadata from a best-known-codes census and
//! are not recomputed; distances, dimensions, and MDS/AMDS labels are.

use crate::analysis::{classify, dual_distance_upto, DistanceBound, Label};
use crate::code::build_code;
use crate::derived::{quantum_params, steane_chain_check};
use crate::error::{Error, Result};
use crate::ff::{make_tower, Params};
use crate::wdist::{min_distance, wdist_closed};

/// Golden label carried by a linear reference row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceLabel {
    /// Distance-optimal per the external census; metadata only.
    Optimal,
    /// Almost-MDS; recomputed from the Singleton gap.
    Amds,
}

/// One linear reference row: the defining-set code itself or its dual.
#[derive(Debug, Clone, Copy)]
pub struct ReferenceLinearCode {
    pub p: u64,
    pub s: u32,
    pub s1: u32,
    pub s2: u32,
    pub dual: bool,
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub q: u64,
    pub label: ReferenceLabel,
}

/// The ten linear reference rows (table 4).
pub fn linear_reference_rows() -> Vec<ReferenceLinearCode> {
    use ReferenceLabel::*;
    let row = |p, s, s1, s2, dual, n, k, d, q, label| ReferenceLinearCode {
        p,
        s,
        s1,
        s2,
        dual,
        n,
        k,
        d,
        q,
        label,
    };
    vec![
        row(3, 2, 1, 1, true, 33, 28, 3, 3, Optimal),
        row(3, 2, 1, 2, true, 33, 30, 3, 9, Amds),
        row(3, 2, 2, 2, true, 17, 14, 3, 9, Amds),
        row(3, 3, 1, 1, false, 225, 7, 144, 3, Optimal),
        row(3, 3, 1, 1, true, 225, 218, 3, 3, Optimal),
        row(3, 3, 1, 3, true, 225, 222, 3, 27, Amds),
        row(5, 1, 1, 1, true, 9, 6, 3, 5, Amds),
        row(5, 2, 1, 2, true, 145, 142, 3, 25, Amds),
        row(5, 2, 2, 2, true, 49, 46, 3, 25, Amds),
        row(13, 1, 1, 1, true, 25, 22, 3, 13, Amds),
    ]
}

/// One quantum reference row.
#[derive(Debug, Clone, Copy)]
pub struct ReferenceQuantumCode {
    pub p: u64,
    pub s: u32,
    pub s1: u32,
    pub s2: u32,
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub q: u64,
    pub label: Label,
}

/// The nine quantum reference rows (table 5).
pub fn quantum_reference_rows() -> Vec<ReferenceQuantumCode> {
    let row = |p, s, s1, s2, n, k, d, q, label| ReferenceQuantumCode {
        p,
        s,
        s1,
        s2,
        n,
        k,
        d,
        q,
        label,
    };
    vec![
        row(3, 2, 1, 1, 33, 27, 3, 3, Label::Amds),
        row(3, 3, 1, 3, 225, 221, 3, 27, Label::Mds),
        row(3, 4, 2, 2, 801, 795, 3, 9, Label::Amds),
        row(3, 4, 1, 4, 2241, 2237, 3, 81, Label::Mds),
        row(5, 2, 1, 1, 145, 139, 3, 5, Label::Amds),
        row(5, 3, 1, 3, 3225, 3221, 3, 125, Label::Mds),
        row(5, 4, 2, 2, 16225, 16219, 3, 25, Label::Amds),
        row(7, 2, 1, 1, 385, 379, 3, 7, Label::Amds),
        row(7, 3, 1, 3, 16513, 16509, 3, 343, Label::Mds),
    ]
}

/// Length bound under which a quantum row's inclusion chain is re-verified
/// on the built code; longer rows get parameter checks only.
pub fn chain_checkable(row: &ReferenceQuantumCode) -> bool {
    row.n <= 2241
}

fn mismatch(what: &str, expected: impl std::fmt::Display, got: impl std::fmt::Display) -> Error {
    Error::Inconsistent {
        detail: format!("{what}: expected {expected}, got {got}"),
    }
}

/// Recomputes a linear reference row: parameters, distance (closed
/// distribution for the code, column search for the dual), and the AMDS
/// label where claimed.
pub fn verify_linear_row(row: &ReferenceLinearCode) -> Result<()> {
    let params = Params::new(row.p, row.s, row.s1, row.s2)?;
    if row.q != params.p.pow(params.s2) {
        return Err(mismatch("alphabet", params.p.pow(params.s2), row.q));
    }
    let wd = wdist_closed(&params)?;
    let dim = params.dimension() as u64;
    if wd.n != row.n {
        return Err(mismatch("length", wd.n, row.n));
    }
    if row.dual {
        if row.k != row.n - dim {
            return Err(mismatch("dual dimension", row.n - dim, row.k));
        }
        let tower = make_tower(params)?;
        let code = build_code(&tower)?;
        match dual_distance_upto(&code, 4)? {
            DistanceBound::Exact(d) if d == row.d => {}
            other => return Err(mismatch("dual distance", row.d, format!("{other:?}"))),
        }
    } else {
        if row.k != dim {
            return Err(mismatch("dimension", dim, row.k));
        }
        let d = min_distance(&wd)?;
        if d != row.d {
            return Err(mismatch("distance", d, row.d));
        }
    }
    if row.label == ReferenceLabel::Amds {
        let got = classify(row.n, row.k, row.d);
        if got != Label::Amds {
            return Err(mismatch("label", "AMDS", got));
        }
    }
    Ok(())
}

/// Recomputes a quantum reference row from the parameter formulas; when
/// `check_chain` is set, additionally builds the classical code and verifies
/// the inclusion chain by exact linear algebra.
pub fn verify_quantum_row(row: &ReferenceQuantumCode, check_chain: bool) -> Result<()> {
    let params = Params::new(row.p, row.s, row.s1, row.s2)?;
    let qp = quantum_params(&params)?;
    if (qp.n, qp.k, qp.d, qp.q) != (row.n, row.k, row.d, row.q) {
        return Err(mismatch(
            "quantum parameters",
            format!("[[{}, {}, {}]]_{}", row.n, row.k, row.d, row.q),
            format!("[[{}, {}, {}]]_{}", qp.n, qp.k, qp.d, qp.q),
        ));
    }
    if qp.label != row.label {
        return Err(mismatch("label", row.label, qp.label));
    }
    if check_chain {
        let tower = make_tower(params)?;
        let code = build_code(&tower)?;
        steane_chain_check(&code)?;
    }
    Ok(())
}
