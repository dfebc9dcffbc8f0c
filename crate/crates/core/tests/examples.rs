//! Every runnable example, run as a test.

mod adelic_sl2 {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/adelic_sl2.rs"));
}

mod bruhat_decomposition {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bruhat_decomposition.rs"));
}

mod classical_witnesses {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/classical_witnesses.rs"));
}

mod commutator_formula {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/commutator_formula.rs"));
}

mod double_centralizer {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/double_centralizer.rs"));
}

mod elementary_width {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/elementary_width.rs"));
}

mod enumerate_group {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/enumerate_group.rs"));
}

mod finite_rings {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/finite_rings.rs"));
}

mod first_order_formulas {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/first_order_formulas.rs"));
}

mod ring_in_group {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/ring_in_group.rs"));
}

mod root_systems {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/root_systems.rs"));
}

mod torus_witnesses {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/torus_witnesses.rs"));
}

mod verification_suite {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verification_suite.rs"));
}

#[test]
fn examples_run() {
    adelic_sl2::run_example().expect("adelic_sl2");
    bruhat_decomposition::run_example().expect("bruhat_decomposition");
    classical_witnesses::run_example().expect("classical_witnesses");
    commutator_formula::run_example().expect("commutator_formula");
    double_centralizer::run_example().expect("double_centralizer");
    elementary_width::run_example().expect("elementary_width");
    enumerate_group::run_example().expect("enumerate_group");
    finite_rings::run_example().expect("finite_rings");
    first_order_formulas::run_example().expect("first_order_formulas");
    ring_in_group::run_example().expect("ring_in_group");
    root_systems::run_example().expect("root_systems");
    torus_witnesses::run_example().expect("torus_witnesses");
    verification_suite::run_example().expect("verification_suite");
}
