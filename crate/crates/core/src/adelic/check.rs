//! Every adelic check on one `SL2(A)` in one quotient mode.

use serde::Serialize;

use super::formulas::{formula_checks, formula_parameters, SetCheck};
use super::group::{QuotientMode, Sl2Group};
use super::sets::{centralizer_h, define_at, define_w, gamma1_check, torus, u_decode, AtReport, Gamma1Report, UReport, UnipotentCover, WReport};
use super::theta::{theta_check, ThetaReport};
use super::width::{k_alpha_product, KAlphaReport};
use crate::definability::FiniteGroup;
use crate::error::Result;
use crate::rings::{Code, Ring};

#[derive(Clone, Debug, Serialize)]
pub struct HReport {
    pub centralizer: usize,
    pub torus: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StarReport {
    pub pairs: usize,
    pub failures: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdelicReport {
    pub group: String,
    pub mode: QuotientMode,
    pub order: usize,
    pub h: HReport,
    pub u: UReport,
    /// `u(r) * u(s) = u(rs)` for every pair.
    pub star: StarReport,
    pub a_t: Vec<AtReport>,
    pub w: WReport,
    pub gamma1: Gamma1Report,
    /// The five sets through first-order formulas.
    pub formulas: Vec<SetCheck>,
    /// Parameters used by the formulas; informational.
    pub parameters: Vec<String>,
    pub theta: ThetaReport,
    pub k_alpha: KAlphaReport,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct AdelicOptions {
    pub s: Vec<Code>,
    pub cap: usize,
    /// Elements sampled for the theta round trip; all when `None`.
    pub theta_limit: Option<usize>,
    pub theta_pairs: usize,
    pub seed: u64,
}

impl Default for AdelicOptions {
    fn default() -> Self {
        AdelicOptions { s: vec![0], cap: 1 << 22, theta_limit: Some(4000), theta_pairs: 1000, seed: 0 }
    }
}

const A_T_SETS: [&[i64]; 3] = [&[0, 1], &[1, -1], &[0, 2, 3]];

pub fn check_adelic(ring: &Ring, mode: QuotientMode, opts: &AdelicOptions) -> Result<AdelicReport> {
    let g = Sl2Group::new(ring.clone(), mode, opts.cap)?;
    let (c, t) = (centralizer_h(&g)?, torus(&g));
    let mut c_sorted = c.clone();
    c_sorted.sort_unstable();
    let h = HReport { centralizer: c.len(), torus: t.len(), equal: c_sorted == t };
    let cover = UnipotentCover::new(&g, &opts.s)?;
    let u = cover.report(&g);
    let decode = u_decode(&g);
    let tb = g.t();
    let n = tb.size as Code;
    let mut failures = 0;
    for r in 0..n {
        for s in 0..n {
            let got = cover.star(&g, &g.u(r), &g.u(s)).ok().and_then(|m| decode.get(&m).copied());
            failures += (got != Some(tb.mul(r, s))) as usize;
        }
    }
    let star = StarReport { pairs: (n as usize).pow(2), failures, ok: failures == 0 };
    let a_t = A_T_SETS.iter().map(|t| define_at(&g, &opts.s, t)).collect::<Result<Vec<_>>>()?;
    let w = define_w(&g, &opts.s)?;
    let gamma1 = gamma1_check(&g)?;
    let formulas = formula_checks(&g, &opts.s)?;
    let parameters = formula_parameters(&g, &opts.s)?;
    let theta = theta_check(&g, &opts.s, opts.theta_limit, opts.theta_pairs, opts.seed)?;
    let k_alpha = k_alpha_product(ring)?;
    let ok = h.equal
        && u.complete
        && star.ok
        && a_t.iter().all(|r| r.equal)
        && w.equal
        && gamma1.equal
        && formulas.iter().all(|c| c.equal)
        && theta.ok
        && k_alpha.covers;
    Ok(AdelicReport { group: g.label(), mode, order: g.order(), h, u, star, a_t, w, gamma1, formulas, parameters, theta, k_alpha, ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f7_every_mode() {
        let ring = Ring::parse("F7").unwrap();
        for mode in [QuotientMode::Sl2, QuotientMode::Sl2ModMinusOne, QuotientMode::Psl2] {
            let r = check_adelic(&ring, mode, &AdelicOptions::default()).unwrap();
            assert!(r.ok, "{r:?}");
            assert_eq!(r.star.pairs, 49);
        }
    }

    #[test]
    fn f5_depends_on_s() {
        let ring = Ring::parse("F5").unwrap();
        assert!(check_adelic(&ring, QuotientMode::Sl2, &AdelicOptions::default()).is_err());
        let opts = AdelicOptions { s: vec![0, 1, 4], ..Default::default() };
        assert!(check_adelic(&ring, QuotientMode::Sl2, &opts).unwrap().ok);
    }
}
