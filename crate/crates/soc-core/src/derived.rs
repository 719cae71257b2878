//! Derived constructions: quantum code parameters from the self-orthogonal
//! family, and complementary-dual codes built by identity extension.
//!
//! Quantum codes are parameter records plus a verified inclusion chain; no
//! stabilizer matrices are materialized. The LCD builders produce real
//! generator matrices whose Gram nonsingularity and distances are checked by
//! the callers' enumeration.

use serde::{Deserialize, Serialize};
use std::sync::Arc;

use crate::analysis::{is_self_orthogonal, so_condition, Label};
use crate::code::{build_code, det, gram, row_basis, solve_in_span, Code, Provenance};
use crate::counts::code_length;
use crate::error::{Error, Result};
use crate::ff::{FieldTower, Params};

/// Parameters [[n, k, d]]_q of a derived quantum code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumParams {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub q: u64,
    /// Carried from the construction; the stabilizer level is not checked.
    pub pure: bool,
    pub label: Label,
    /// Set when the label is AMDS and n > q² + 1: optimal provided the
    /// classical MDS conjecture holds. Metadata, not a computation.
    pub conditionally_optimal: bool,
}

/// Quantum parameters [[n, n − 2s/s2 − 2, 3]]_{p^s2} for a tuple whose
/// self-orthogonality condition holds.
pub fn quantum_params(params: &Params) -> Result<QuantumParams> {
    if !so_condition(params)? {
        return Err(Error::ConditionsNotMet);
    }
    let n = code_length(params)? as u64;
    let dim = params.dimension() as u64;
    let k = n - dim - 1;
    let q = params.p.pow(params.s2);
    // Distance from the nested-pair rule with (d1, d2) = (3, 2):
    // min{d1, ⌈(q+1)/q · d2⌉}.
    let lifted = (2 * (q + 1)).div_ceil(q);
    let d = 3u64.min(lifted);
    if d != 3 {
        return Err(Error::Inconsistent {
            detail: format!("derived quantum distance {d}, expected 3"),
        });
    }

    let label = if params.s == params.s2 && params.s2 > 2 * params.s1 {
        Label::Mds
    } else if params.s == 2 * params.s2 {
        Label::Amds
    } else {
        Label::Other
    };
    // The label must agree with the quantum Singleton gap n − k − 2(d − 1).
    let gap = (n - k) - 2 * (d - 1);
    let gap_label = match gap {
        0 => Label::Mds,
        2 => Label::Amds,
        _ => Label::Other,
    };
    if label != gap_label {
        return Err(Error::Inconsistent {
            detail: format!("label {label} disagrees with Singleton gap {gap}"),
        });
    }
    Ok(QuantumParams {
        n,
        k,
        d,
        q,
        pure: true,
        label,
        conditionally_optimal: label == Label::Amds && n > q * q + 1,
    })
}

/// Verifies the nested pair behind the quantum construction on a built code:
/// the code is self-orthogonal, the all-ones word lies in it (so the dual
/// sits inside the sum-zero code), and the dimension gap needed by the
/// construction holds.
pub fn steane_chain_check(code: &Code) -> Result<bool> {
    let sf = code.alphabet();
    if !is_self_orthogonal(code) {
        return Err(Error::NotSelfOrthogonal);
    }
    if (code.n - code.k) + 2 > code.n - 1 {
        return Err(Error::DimensionGapTooSmall { k: code.k });
    }
    let basis = row_basis(&sf, &code.rows);
    let ones = vec![sf.one(); code.n];
    if solve_in_span(&sf, &basis, &ones).is_none() {
        return Err(Error::Inconsistent {
            detail: "all-ones word missing from the code".into(),
        });
    }
    Ok(true)
}

/// A complementary-dual code together with the parameters it came from.
#[derive(Debug, Clone)]
pub struct LcdCode {
    pub code: Code,
    pub parent: Params,
}

/// True iff the generator Gram matrix is nonsingular.
pub fn is_lcd(code: &Code) -> bool {
    let sf = code.alphabet();
    let g = gram(&sf, &code.rows);
    det(&sf, &g) != 0
}

fn identity_extend(parent: &Code, provenance: Provenance) -> Code {
    let sf = parent.alphabet();
    let k = parent.rows.len();
    let rows: Vec<Vec<u16>> = parent
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut out = vec![0u16; k + parent.n];
            out[i] = sf.one();
            out[k..].copy_from_slice(row);
            out
        })
        .collect();
    Code {
        tower: Arc::clone(&parent.tower),
        level: parent.level,
        n: parent.n + k,
        k,
        rows,
        provenance,
    }
}

/// Extends a self-orthogonal code's generator to [I : G], which is
/// complementary-dual with Gram matrix exactly I.
pub fn build_lcd(parent: &Code) -> Result<LcdCode> {
    if !is_self_orthogonal(parent) {
        return Err(Error::NotSelfOrthogonal);
    }
    let code = identity_extend(parent, Provenance::Lcd);
    debug_assert!(is_lcd(&code));
    Ok(LcdCode {
        code,
        parent: parent.tower.params,
    })
}

/// The row-tweaked variant for towers of shape (p, 2, 1, 1): rows 3 and 5 of
/// the canonical generator get row 1 added before the identity extension,
/// which lifts the minimum distance by one more than the plain extension.
pub fn build_lcd_variant(tower: &Arc<FieldTower>) -> Result<LcdCode> {
    let params = tower.params;
    if params.s != 2 || params.s1 != 1 || params.s2 != 1 {
        return Err(Error::WrongShape {
            expected: "(p, 2, 1, 1)",
        });
    }
    let mut parent = build_code(tower)?;
    let sf = parent.alphabet();
    for target in [2usize, 4] {
        let first = parent.rows[0].clone();
        for (v, &a) in parent.rows[target].iter_mut().zip(&first) {
            *v = sf.add_idx(*v, a);
        }
    }
    if !is_self_orthogonal(&parent) {
        return Err(Error::NotSelfOrthogonal);
    }
    let code = identity_extend(&parent, Provenance::LcdVariant);
    Ok(LcdCode {
        code,
        parent: params,
    })
}
