// The real forms fixed by σ0: dimension, trace-form signature and real rank.

use octocartan::pairs::AlgebraTag;
use octocartan::visible::real_form_report;

pub fn run_example() -> octocartan::Result<()> {
    for tag in [AlgebraTag::G2C, AlgebraTag::Spin7C, AlgebraTag::So7C, AlgebraTag::So8C] {
        let r = real_form_report(tag)?;
        println!(
            "{tag:>6}: dim {:2} = {} + {}, signature ({}, {}), real rank {}{}",
            r.dim_fixed,
            r.dim_k,
            r.dim_p,
            r.signature.n_pos,
            r.signature.n_neg,
            r.real_rank_estimate,
            if r.inconclusive { " (inconclusive)" } else { "" }
        );
    }
    Ok(())
}

fn main() -> octocartan::Result<()> {
    run_example()
}
