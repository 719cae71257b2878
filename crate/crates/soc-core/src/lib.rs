//! Trace-defined linear codes over odd-characteristic finite fields.
//!
//! The crate builds the two-variable defining set
//! D = {(x, y) ∈ F_q² : Tr_{s1}(x² + y²) = 0} for a tower
//! F_p ⊂ F_{p^s1}, F_{p^s2} ⊂ F_{p^s}, the linear code over F_{p^s2} whose
//! codewords are (Tr_{s2}(ax + by) + c) indexed by D, and everything the
//! family is good for:
//!
//! - exact weight distributions, both by closed Gauss-sum formulas and by
//!   full message-space enumeration ([`wdist`]);
//! - solution counts behind the formulas, with enumeration oracles
//!   ([`counts`]);
//! - exact Gauss-sum and quadratic character-sum arithmetic over cyclotomic
//!   integers ([`chars`]);
//! - self-orthogonality, dual-distance, optimality, and locality
//!   certification ([`analysis`]);
//! - derived quantum and complementary-dual codes ([`derived`]);
//! - embedded reference parameter tables ([`tables`]).

pub mod analysis;
pub mod chars;
pub mod code;
pub mod counts;
pub mod derived;
pub mod error;
pub mod ff;
pub mod tables;
pub mod wdist;

pub use error::{Error, Result};
pub use ff::{make_tower, FieldTower, Params, Subfield};
