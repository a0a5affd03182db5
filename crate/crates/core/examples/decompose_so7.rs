// SO(7,C) = SO(7) · A0 · G2(C), computed through the lift to Spin(7,C)

use octocartan::{classify, decompose, random_element, reconstruct, GroupTag, Pair, Tolerances};

pub fn run_example() -> octocartan::Result<()> {
    let pair = Pair::R1;
    let tol = Tolerances::default();
    for seed in 0..5 {
        let g = random_element(GroupTag::SO7C, seed, 2.0)?;
        let f = decompose(pair, &g, &tol)?;
        let k = classify(&f.k, 1e-8);
        let h = classify(&f.h, 1e-8);
        println!(
            "seed {seed}: θ = {:.6}, |g - k a h| = {:.1e}, k in {}: {}, h in {}: {}",
            f.theta,
            reconstruct(&f).dist(&g),
            pair.compact_group(),
            k.member_of(pair.compact_group()),
            pair.subgroup(),
            h.member_of(pair.subgroup()),
        );
    }
    Ok(())
}

fn main() -> octocartan::Result<()> {
    run_example()
}
