// Certifying that the compact group acts strongly visibly on G_C / H_C.

use octocartan::visible::{check_s1, run_visible, S2_TOL};
use octocartan::{Pair, Tolerances};

pub fn run_example() -> octocartan::Result<()> {
    for pair in Pair::ALL {
        println!("{pair}: σ0 on the slice, max |σ0(a) - a| = {:e}", check_s1(pair));
        let r = run_visible(pair, 20, 0, &Tolerances::default())?;
        println!(
            "{pair}: 20 samples, decomposition {:.1e}, witness {:.1e} (bound {S2_TOL:e}), passed: {}",
            r.v1_residual, r.s2_residual, r.passed
        );
    }
    Ok(())
}

fn main() -> octocartan::Result<()> {
    run_example()
}
