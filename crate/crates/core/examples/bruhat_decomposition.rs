// Unique factorization `u h n_w v` over a field.

use chevdef::chevgroup::{verify_bruhat, weyl_group, Chevalley, EnumeratedGroup, DEFAULT_CAP};
use chevdef::Ring;

pub fn run_example() -> chevdef::Result<()> {
    for (spec, q) in [("SL3", "F2"), ("SL3", "F3"), ("Sp4", "F2")] {
        let g = Chevalley::parse(spec, Ring::parse(q)?)?;
        println!("{spec}: Weyl group of order {}", weyl_group(g.sys()).len());
        let e = EnumeratedGroup::from_root_generators(g, DEFAULT_CAP)?;
        let r = verify_bruhat(&e)?;
        println!("  {}: {} tuples, {} distinct, group order {}, unique: {}", r.group, r.tuples, r.distinct, r.order, r.verdict);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> chevdef::Result<()> {
    run_example()
}
