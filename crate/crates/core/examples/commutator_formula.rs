// The Chevalley commutator formula against matrix commutators.

use chevdef::chevgroup::{commutator_word, Chevalley};
use chevdef::Ring;

pub fn run_example() -> chevdef::Result<()> {
    let g = Chevalley::parse("G2adj", Ring::parse("F5")?)?;
    let sys = g.sys();
    let (a, b) = (sys.simple(0), sys.simple(1));
    let (r, s) = (g.ring.from_int(2), g.ring.from_int(3));
    let word = commutator_word(sys, a, b, &r, &s);
    let shown: Vec<String> = word.iter().map(|(c, t)| format!("x_{}({t})", sys.name(*c))).collect();
    println!("[x_a1(2), x_a2(3)] = {}", shown.join(" "));
    let agrees = g.eval_word(&word) == g.comm(&g.x(a, &r), &g.x(b, &s));
    println!("matches the 14x14 matrix commutator: {agrees}");
    let stats = chevdef::report::commutator_stats(&g)?;
    println!("all pairs over F5: {} evaluations, {} mismatches", stats.evaluations, stats.mismatches);
    Ok(())
}

#[allow(dead_code)]
fn main() -> chevdef::Result<()> {
    run_example()
}
