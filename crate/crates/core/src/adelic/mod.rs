//! `SL2` over finite products of finite fields, standing in for the adele
//! ring: the sets `H`, `U`, `W`, `A_T`, `Gamma_1`, the multiplication `*` on
//! `U`, the matrix encoding `theta` and the `K_a` width bounds.

pub mod check;
pub mod formulas;
pub mod group;
pub mod sets;
pub mod theta;
pub mod width;

pub use check::{check_adelic, AdelicOptions, AdelicReport, HReport, StarReport};
pub use formulas::{formula_checks, formula_parameters, SetCheck, Sl2Formulas};
pub use group::{Mat2, QuotientMode, Sl2Group};
pub use sets::{
    centralizer_h, define_at, define_u, define_w, gamma1_check, gamma1_factor, make_tau, mult_formula_p,
    star_words, torus, u_decode, unipotents, w_correction, w_mask, AtReport, Gamma1Report, UReport,
    UnipotentCover, WReport,
};
pub use theta::{theta_check, Sl2Theta, ThetaMat, ThetaReport};
pub use width::{higher_rank_width, higher_rank_width_product, k_alpha_product, HigherRankWidth, KAlphaReport, ProductWidth};
