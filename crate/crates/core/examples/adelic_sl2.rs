// `SL2` over products of prime fields: every set and map, in each quotient
// mode, then the effect of the set `S` over `F5`.

use chevdef::adelic::{check_adelic, define_u, AdelicOptions, QuotientMode, Sl2Group};
use chevdef::rings::Code;
use chevdef::Ring;

pub fn run_example() -> chevdef::Result<()> {
    let ring = Ring::parse("F7xF11")?;
    for mode in [QuotientMode::Sl2, QuotientMode::Sl2ModMinusOne, QuotientMode::Psl2] {
        let r = check_adelic(&ring, mode, &AdelicOptions::default())?;
        println!(
            "{} {mode}: order {}, |H| = {}, |Gamma_1| = {}, theta ok {}, K_a covers {}, all ok {}",
            r.group, r.order, r.h.torus, r.gamma1.gamma1, r.theta.ok, r.k_alpha.covers, r.ok
        );
    }
    let g = Sl2Group::parse("F5", QuotientMode::Sl2, 1 << 22)?;
    let u = define_u(&g, &[0])?;
    println!("F5 with S = {{0}}: complete {}, missing {:?}", u.complete, u.missing);
    let s: Vec<Code> = [0, 1, 4].iter().map(|&c| g.ring.from_int(c).code() as Code).collect();
    println!("F5 with S = {{0,1,4}}: complete {}", define_u(&g, &s)?.complete);
    Ok(())
}

#[allow(dead_code)]
fn main() -> chevdef::Result<()> {
    run_example()
}
