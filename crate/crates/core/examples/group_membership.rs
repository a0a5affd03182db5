// Classifying matrices against G2(C), SL(3,C), Spin(7,C), SO(7,C) and
// their compact forms.

use octocartan::pairs::{one_param, OneParamKind};
use octocartan::{classify, random_element, GroupTag};

pub fn run_example() -> octocartan::Result<()> {
    let samples = [
        ("t_1", one_param(OneParamKind::A1, 1.0).matrix),
        ("ã_1", one_param(OneParamKind::A0Tilde, 1.0).matrix),
        ("a_1", one_param(OneParamKind::A0, 1.0).matrix),
        ("random G2", random_element(GroupTag::G2, 7, 2.0)?),
        ("random SL(3,C)", random_element(GroupTag::SL3C, 7, 1.0)?),
    ];
    for (name, g) in samples {
        let report = classify(&g, 1e-9);
        let groups: Vec<&str> = GroupTag::ALL.iter().filter(|&&t| report.member_of(t)).map(|t| t.name()).collect();
        println!("{name:>15}: {}", groups.join(" "));
    }
    Ok(())
}

fn main() -> octocartan::Result<()> {
    run_example()
}
