// Breadth-first enumeration from root generators, compared with the order
// formula, plus centers and centralizers.

use chevdef::chevgroup::{Chevalley, EnumeratedGroup, DEFAULT_CAP};
use chevdef::report::expected_order;
use chevdef::Ring;

pub fn run_example() -> chevdef::Result<()> {
    for (spec, q) in [("SL3", "F4"), ("Sp4", "F3"), ("B2adj", "F3"), ("G2adj", "F2")] {
        let g = Chevalley::parse(spec, Ring::parse(q)?)?;
        let expected = expected_order(&g);
        let e = EnumeratedGroup::from_root_generators(g, DEFAULT_CAP)?;
        println!("{}: order {} (formula {:?}), center {}", e.group.label(), e.order(), expected, e.center().len());
    }
    let g = Chevalley::parse("SL3", Ring::parse("F3")?)?;
    let e = EnumeratedGroup::from_root_generators(g, DEFAULT_CAP)?;
    let u = e.group.parse_element("x(a1,1)")?;
    println!("SL3(F3): |C(x_a1(1))| = {}", e.centralizer(&[u]).len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> chevdef::Result<()> {
    run_example()
}
