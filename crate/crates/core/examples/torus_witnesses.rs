// Torus elements that centralize one root subgroup and move another.

use chevdef::rootsys::RootSystem;
use chevdef::witnesses::{torus_survey, torus_witness};
use chevdef::Ring;

pub fn run_example() -> chevdef::Result<()> {
    let sys = RootSystem::parse("E6")?;
    let f5 = Ring::parse("F5")?;
    let (a, b) = (sys.simple(0), sys.simple(2));
    if let Some(w) = torus_witness(&sys, a, b, &f5) {
        let word: Vec<String> = w.word.iter().map(|(g, t)| format!("h_{}({t})", sys.name(*g))).collect();
        println!("E6 over F5, ({}, {}): {} via {:?}", sys.name(a), sys.name(b), word.join(" "), w.source);
    }
    for (label, q) in [("F4", "F3"), ("F4", "F5"), ("E7", "F3")] {
        let r = torus_survey(&RootSystem::parse(label)?, &Ring::parse(q)?)?;
        println!("{label} over {q}: {} of {} pairs have witnesses, {} absent", r.found, r.pairs, r.absent.len());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> chevdef::Result<()> {
    run_example()
}
