// Parsing and evaluating first-order formulas over an enumerated group, and
// the formula that defines `U Z`.

use chevdef::chevgroup::{Chevalley, EnumeratedGroup, DEFAULT_CAP};
use chevdef::definability::{dc_definition_formula, define_set, parse_formula, DEFAULT_EVAL_BUDGET};
use chevdef::witnesses::pick_root;
use chevdef::Ring;

pub fn run_example() -> chevdef::Result<()> {
    let g = Chevalley::parse("SL3", Ring::parse("F2")?)?;
    let e = EnumeratedGroup::from_root_generators(g.clone(), DEFAULT_CAP)?;
    let center = parse_formula("A y. x*y = y*x")?;
    println!("{center}: {} element(s)", define_set(&center, &e, &[], DEFAULT_EVAL_BUDGET)?.len());
    let involutions = parse_formula("x*x = 1 & !(x = 1)")?;
    println!("{involutions}: {} elements", define_set(&involutions, &e, &[], DEFAULT_EVAL_BUDGET)?.len());

    let a = pick_root(&g, true)?;
    let f = dc_definition_formula(&g, a)?;
    let set = define_set(&f.formula, &e, &f.params, DEFAULT_EVAL_BUDGET)?;
    println!("U Z for {} with parameters {:?}: {} elements", g.sys().name(a), f.param_labels, set.len());
    println!("formula: {}", f.formula);
    Ok(())
}

#[allow(dead_code)]
fn main() -> chevdef::Result<()> {
    run_example()
}
