// Root systems: counts, Cartan integers, structure constants and reflections.

use chevdef::rootsys::RootSystem;

pub fn run_example() -> chevdef::Result<()> {
    for label in ["A2", "B2", "G2", "F4", "E8"] {
        let sys = RootSystem::parse(label)?;
        println!("{label}: {} roots, {} positive, highest {}", sys.num_roots(), sys.num_positive(), sys.name(sys.highest_root()));
    }
    let g2 = RootSystem::parse("G2")?;
    let (a, b) = (g2.simple(0), g2.simple(1));
    println!("G2: <a1,a2> = {}, <a2,a1> = {}", g2.cartan_integer(a, b), g2.cartan_integer(b, a));
    if let Some(s) = g2.add(a, b) {
        println!("G2: N(a1,a2) = {}, a1+a2 = {}", g2.structure_constant(a, b), g2.name(s));
    }
    println!("G2: reflection of a2 in a1 is {}", g2.name(g2.reflect(a, b)));
    print!("{}", g2.dump());
    Ok(())
}

#[allow(dead_code)]
fn main() -> chevdef::Result<()> {
    run_example()
}
