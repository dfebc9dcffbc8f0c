// Products of root subgroups that cover the group, for `SL2` over a product
// ring and for higher rank groups.

use chevdef::adelic::{higher_rank_width, k_alpha_product};
use chevdef::chevgroup::{Chevalley, DEFAULT_CAP};
use chevdef::Ring;

pub fn run_example() -> chevdef::Result<()> {
    let k = k_alpha_product(&Ring::parse("F7xF11")?)?;
    println!("{}: covered after {:?} factors, sizes {:?}", k.group, k.covered_after, k.sizes);
    for (spec, q) in [("SL3", "F3"), ("Sp4", "F3"), ("G2adj", "F2")] {
        let r = higher_rank_width(&Chevalley::parse(spec, Ring::parse(q)?)?, DEFAULT_CAP)?;
        println!("{}: order {}, {} root factors: {}", r.group, r.order, r.n, r.sequence.join(" "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> chevdef::Result<()> {
    run_example()
}
