//! Exact obstruction engine for relative genus bounds of knots in closed
//! 4-manifolds.
//!
//! Given a knot `K` (as a braid closure or an invariant bundle), a closed
//! oriented 4-manifold `X`, a second homology class ξ, and a genus `g`, the
//! engine decides — by exact arithmetic only — whether any of a family of
//! obstruction rules rules out a properly embedded genus-`g` surface in
//! `X∖B̊⁴` with boundary `K` in class ξ. The rules span classical invariants
//! (Arf, Levine–Tristram signatures at prime-power roots of unity, Rokhlin-
//! style congruences), adjunction-type bounds from gauge theory and Heegaard
//! Floer homology, and a 10/8-type obstruction for spin fillings; alongside
//! them run constructive upper-bound rules that certify sliceness.
//!
//! Everything is computed over ℤ, ℚ, or cyclotomic fields ℚ(ζ): no floating
//! point enters any verdict. Reports are deterministic and byte-stable.

pub mod braid;
pub mod cyclotomic;
pub mod error;
pub mod floer;
pub mod invariants;
pub mod laurent;
pub mod manifold;
pub mod obstruction;
pub mod parse;
pub mod report;
pub mod scan;
pub mod seifert;
pub mod signature;

mod enclose;
mod zmat;

pub use braid::BraidWord;
pub use cyclotomic::CyclotomicNumber;
pub use error::{Error, Result};
pub use floer::{
    bottom_class_nontrivial, d_negative_surgery, nu_plus_consistency, torus_knot_table, VSequence,
};
pub use invariants::{CuratedInvariantStore, KnotInvariants, StoreEntry};
pub use laurent::LaurentPoly;
pub use manifold::{BasicClass, ClassGeometry, FourManifold, HomologyClass};
pub use obstruction::{
    evaluate_all, upper_bound_rules, ClassData, DiskCertificate, EvalOptions, ObstructionReport,
    RuleId, RuleOutcome, SpinFilling, Summary, SurfaceProblem, TwistMove, UpperBoundCertificate,
    UpperBoundInputs, UpperRuleId, Verdict, WhiteheadData,
};
pub use parse::{
    manifold_from_text, manifold_to_text, merge_bundle, parse_braid, parse_class, parse_knot,
    parse_manifold, parse_v_sequence, ParsedKnot,
};
pub use report::{render_report, render_scan, rule_verdict_line, verdict_line, ReportFormat};
pub use scan::{enumerate_classes, slice_scan, Completeness, ScanConfig, ScanLedger, ScanRow};
pub use seifert::SeifertMatrix;
pub use signature::{
    hermitian_signature, levine_tristram, signature_profile, PrimePowerRoot, SignatureProfile,
};
