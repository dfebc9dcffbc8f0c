//! Witness sets for root subgroups and double-centralizer verification.

pub mod sets;
pub mod torus;
pub mod verify;

pub use sets::{
    augmented_torus_witness_set, auto_kind, classical_witness_set, f4_exceptional_roots, f4_witness_set,
    torus_witness_set, x3_index_set, WitnessKind, WitnessSet,
};
pub use torus::{
    character, generic_unit, is_torus_witness, torus_matrix_oracle, torus_survey, torus_witness, MatrixOracleReport,
    TorusSurvey, TorusWitness, WitnessSource,
};
pub use verify::{
    check_dc, choose_backend, exceptional_bound, is_exceptional, pick_root, verify_containment,
    verify_containment_enumerated, verify_dc, verify_dc_exceptional_sp4, verify_dc_linear, verify_torus_cut, Backend,
    ContainmentReport, DCReport, DcCase, DcSizes, TorusCutReport, Sp4ExactReport, DEFAULT_BUDGET,
};
