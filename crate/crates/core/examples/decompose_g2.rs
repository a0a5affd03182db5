// G2(C) = G2 · A1 · SL(3,C)

use octocartan::{classify, decompose, random_element, reconstruct, GroupTag, Pair, Tolerances};

pub fn run_example() -> octocartan::Result<()> {
    let pair = Pair::R2;
    let tol = Tolerances::default();
    for seed in 0..5 {
        let g = random_element(GroupTag::G2C, seed, 2.0)?;
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
