// Running a suite from a JSON configuration and rendering the report.

use chevdef::report::{run_suite, Format, Suite, SuiteConfig};

pub fn run_example() -> chevdef::Result<()> {
    let config = SuiteConfig::from_json(
        r#"{ "dc_cases": ["SL3 F3 long", "Sp4 F3 short", "Sp4 F2 short"], "seed": 7 }"#,
    )?;
    let report = run_suite(Suite::Dc, &config)?;
    println!("{}", report.render(Format::Text));
    println!("{} failure(s), ok: {}", report.failures(), report.ok());
    Ok(())
}

#[allow(dead_code)]
fn main() -> chevdef::Result<()> {
    run_example()
}
