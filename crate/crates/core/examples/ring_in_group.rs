// The ring recovered inside a root subgroup, the maps `c` and `m`, and the
// interpretation `theta` of the group in matrices over that ring.

use chevdef::chevgroup::{Chevalley, DEFAULT_CAP};
use chevdef::definability::{width_probe, RingInGroup, Theta};
use chevdef::report::map_stats;
use chevdef::Ring;

pub fn run_example() -> chevdef::Result<()> {
    let g = Chevalley::parse("SL3", Ring::parse("F4")?)?;
    let root = g.sys().highest_root();
    let r = RingInGroup::new(g.clone(), root)?;
    let axioms = r.check_axioms();
    println!("R' in U_{}: {} elements, ring axioms and isomorphism hold: {}", g.sys().name(root), r.size(), axioms.verdict);
    let m = map_stats(&g)?;
    println!("maps c and m: {} evaluations, {} failures", m.checked, m.failures);

    let small = Chevalley::parse("SL3", Ring::parse("F2")?)?;
    let probe = width_probe(small.clone(), DEFAULT_CAP)?;
    let ring = RingInGroup::new(small, probe.enumerated.group.sys().highest_root())?;
    let theta = Theta::new(&ring, &probe);
    let failures = probe.enumerated.elements.iter().filter(|x| theta.apply(x).map(|m| theta.decode(&m) != **x).unwrap_or(true)).count();
    println!("theta on SL3(F2): width {}, {} of {} elements fail to round-trip", probe.width, failures, probe.enumerated.order());
    Ok(())
}

#[allow(dead_code)]
fn main() -> chevdef::Result<()> {
    run_example()
}
