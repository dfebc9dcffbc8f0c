// Finite fields, residue rings and products, with the hypothesis flags used
// elsewhere.

use chevdef::Ring;

pub fn run_example() -> chevdef::Result<()> {
    let f4 = Ring::parse("F4")?;
    let t = f4.elem(2);
    println!("F4: t = {t}, t^2 = {}, t^3 = {}, 1/t = {}", t.pow(2), t.pow(3), t.inv().expect("field"));
    for spec in ["F3", "F5", "F9", "Z/4", "F7xF11"] {
        let r = Ring::parse(spec)?;
        let p = r.hypothesis_profile()?;
        println!(
            "{spec}: size {}, characteristic {}, domain {}, units {}, R* = {{1,-1}}: {}",
            r.size().unwrap_or(0),
            p.characteristic,
            p.is_domain,
            p.units_count,
            p.units_eq_pm1
        );
    }
    let a = Ring::parse("F7xF11")?;
    let x = a.from_int(10);
    let s = [a.zero()];
    let (xi, eta, c) = a.decompose_square_diff(&x, &s)?;
    println!("F7xF11: {x} = {xi}^2 - {eta}^2 + {c}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> chevdef::Result<()> {
    run_example()
}
