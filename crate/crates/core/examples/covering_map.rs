// Triality: every g in Spin(7,C) has a companion g0 in SO(7,C) with
// (g0 x)(g y) = g(xy), and g -> g0 is the double cover.

use octocartan::groups::covering_map;
use octocartan::pairs::{one_param, OneParamKind};
use octocartan::{lift, random_element, triality_companion, GroupTag};

pub fn run_example() -> octocartan::Result<()> {
    let tol = 1e-9;
    let g = random_element(GroupTag::Spin7C, 1, 1.0)?;
    let pair = triality_companion(&g, tol)?;
    println!("law residual for a random spin element: {:.1e}", pair.law_residual());

    // -g has the same image, so the lift is only defined up to sign.
    let minus = covering_map(&-g, tol)?;
    println!("|pi(-g) - pi(g)| = {:.1e}", minus.dist(&pair.g0));
    let up = lift(&pair.g0, tol)?;
    println!("lift(pi(g)) = ±g: {:.1e}", up.dist(&g).min(up.dist(&-g)));

    for th in [0.5, 1.0, 2.0] {
        let down = covering_map(&one_param(OneParamKind::A0Tilde, th).matrix, tol)?;
        let expected = one_param(OneParamKind::A0, 2.0 * th / 3.0).matrix;
        println!("pi(ã_{th}) = a_{:.4}: {:.1e}", 2.0 * th / 3.0, down.dist(&expected));
    }
    Ok(())
}

fn main() -> octocartan::Result<()> {
    run_example()
}
