//! First-order definability inside finite Chevalley groups: formulas and
//! their evaluation, the definable maps between root subgroups, the ring
//! interpreted on a root subgroup, and the matrix map back into it.

pub mod dc;
pub mod eval;
pub mod formula;
pub mod maps;
pub mod ring;

pub use dc::{dc_definition_formula, root_group_formula, DefiningFormula};
pub use eval::{define_set, holds, FiniteGroup, DEFAULT_EVAL_BUDGET};
pub use formula::{parse_formula, Connective, Formula, Quantifier, Term};
pub use maps::{map_c, map_m, proj_pi1, RootMaps};
pub use ring::{
    eval_poly_in_group, psi_check, width_probe, PsiReport, RingAxiomReport, RingInGroup, Theta, ThetaMatrix, WidthProbe,
    WidthReport,
};
