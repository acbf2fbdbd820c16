//! Replication of the finite computations on shift operators, the comparison
//! with the Schwinger and residue cocycles, and seeded random sweeps of the
//! algebraic identities. All reports serialize to JSON with exact rationals.

mod cases;
mod comparison;
pub mod dense;
pub mod random;
mod sweeps;

pub use cases::{
    case_table, classify_by_dense_window, classify_by_operator, count_signs, enumeration_bound,
    four_cocycle_on_shifts, four_cocycle_table, omega_case_classifier, theta_bracket_trace,
    CaseMismatch, CaseTableReport, CaseVerdict, FourCocycleTable, PermutationReport, TableClaims,
};
pub use comparison::{
    calibrate_radul_normalization, schwinger_comparison, ComparisonRow, SchwingerComparison,
};
pub use sweeps::{
    bianchi_sweep, closedness_sweep, commutator_trace_sweep, oracle_sweep, residue_trace_sweep,
    ClosednessReport, ClosednessRow, Failure, IdentityReport, SweepConfig,
};
