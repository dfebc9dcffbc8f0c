// Witness sets for classical groups, verified through the linear commutant.

use chevdef::chevgroup::{Chevalley, Subgroup};
use chevdef::witnesses::{classical_witness_set, exceptional_bound, verify_containment, WitnessKind, DEFAULT_BUDGET};
use chevdef::Ring;

pub fn run_example() -> chevdef::Result<()> {
    for (spec, kind) in [("SL4", "sl"), ("Sp4", "X1"), ("Sp4", "X2"), ("O8", "X3"), ("SO7", "X4"), ("SO7", "X5")] {
        let g = Chevalley::parse(spec, Ring::parse("F3")?)?;
        let kind: WitnessKind = kind.parse()?;
        let y = classical_witness_set(&g, kind)?;
        let expected = if kind == WitnessKind::X2 { exceptional_bound(&g, y.target) } else { Subgroup::uz(y.target) };
        let r = verify_containment(&g, &y, &expected, DEFAULT_BUDGET)?;
        println!(
            "{} {kind}: {} witnesses for U_{}, commutant dim {:?}, |C(Y)| = {}, inside {}: {}",
            r.group, r.witnesses, r.target, r.commutant_dim, r.points, r.expected, r.verdict
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> chevdef::Result<()> {
    run_example()
}
