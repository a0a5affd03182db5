// The octonion multiplication table and a few identities it satisfies.

use num_complex::Complex64;
use octocartan::{build_mult_table, Octonion};

fn show(x: &Octonion) -> String {
    let terms: Vec<String> =
        x.0.iter().enumerate().filter(|(_, c)| c.norm() > 0.0).map(|(i, c)| format!("({c}) e{i}")).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn run_example() -> octocartan::Result<()> {
    let table = build_mult_table()?;
    println!("     {}", (0..8).map(|j| format!("  e{j}")).collect::<String>());
    for i in 0..8 {
        let row: String = (0..8)
            .map(|j| {
                let p = table.entry(i, j);
                format!(" {}e{}", if p.sign > 0 { '+' } else { '-' }, p.index)
            })
            .collect();
        println!("e{i} |{row}");
    }

    let e = Octonion::basis;
    let i = Complex64::new(0.0, 1.0);
    // Over C the algebra has zero divisors: (e1 + i e2)^2 = 0.
    let z = e(1) + e(2).scale(i);
    println!("(e1 + i e2)^2 = {}", show(&(z * z)));
    // but it is still a composition algebra for the bilinear form.
    let x = e(1).scale(Complex64::new(0.3, 1.0)) + e(6);
    let y = e(0).scale(Complex64::new(2.0, 0.0)) + e(4).scale(i);
    let xy = x * y;
    println!("(xy, xy) = {}, (x, x)(y, y) = {}", xy.form(&xy), x.form(&x) * y.form(&y));
    // and not associative.
    println!("(e1 e2) e4 = {}, e1 (e2 e4) = {}", show(&((e(1) * e(2)) * e(4))), show(&(e(1) * (e(2) * e(4)))));
    Ok(())
}

fn main() -> octocartan::Result<()> {
    run_example()
}
