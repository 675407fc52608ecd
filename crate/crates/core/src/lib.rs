//! Gentle bound quiver algebras: validation, string combinatorics, band
//! detection, Hom spaces of string modules, and the tau-tilting finiteness
//! decision procedure.

pub mod bands;
pub mod decide;
pub mod error;
pub mod field;
pub mod linalg;
pub mod modules;
pub mod quiver;
pub mod walks;

pub use bands::{
    canonical_band_word, find_minimal_band, has_band, is_band, reduce_band,
    recognize_witness_class, Band, ClassDescriptor, WitnessBand, WitnessForm,
};
pub use decide::{
    brick_family, decide, decide_with, idempotent_reduction, quotient_by_ideal, reduction_trail,
    DecideOptions, Decision, ReducedQuiver, ReductionStep, Verdict, Witness,
};
pub use error::{Error, Result, StringViolation};
pub use field::{FieldSpec, DEFAULT_PRIME};
pub use modules::{
    hom_dim_combinatorial, hom_dim_combinatorial_certified, hom_dim_linear, is_brick,
    string_module, HomCertificate, MatchedBy, MatchedPair, StringModuleRep,
};
pub use quiver::{
    parse_quiver, validate_gentle, Arrow, BoundQuiver, Condition, GentleReport, Violation,
};
pub use walks::{
    concat, enumerate_strings, factorizations, is_string, string_violation, FactorKind,
    Factorization, Letter, StringWord,
};
