// Double centralizers of root elements, generic and exceptional.

use chevdef::chevgroup::{Chevalley, DEFAULT_CAP};
use chevdef::witnesses::{check_dc, verify_dc_exceptional_sp4, DEFAULT_BUDGET};
use chevdef::Ring;

pub fn run_example() -> chevdef::Result<()> {
    for (spec, q, long) in [("SL3", "F4", true), ("Sp4", "F3", true), ("Sp4", "F3", false), ("Sp4", "F2", false)] {
        let g = Chevalley::parse(spec, Ring::parse(q)?)?;
        let r = check_dc(&g, long, DEFAULT_CAP, DEFAULT_BUDGET)?;
        let s = &r.sizes;
        println!(
            "{} {}: {:?} case via {:?}, |C(C(u))| = {}, |Z(C(u))| = {}, |U Z| = {}, verdict {}{}",
            r.group,
            r.root,
            r.case,
            r.backend,
            s.cc_u,
            s.zc_u,
            s.uz,
            r.verdict,
            if r.exploratory { " (exploratory)" } else { "" }
        );
    }
    let g = Chevalley::parse("Sp4", Ring::parse("F5")?)?;
    let r = verify_dc_exceptional_sp4(&g, DEFAULT_CAP, DEFAULT_BUDGET)?;
    println!("{}: Z(C(v)) = {} with {} elements, verdict {}", r.group, r.expected, r.zc_v, r.verdict);
    Ok(())
}

#[allow(dead_code)]
fn main() -> chevdef::Result<()> {
    run_example()
}
