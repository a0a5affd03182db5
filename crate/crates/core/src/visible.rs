//! The anti-holomorphic involution `σ0(g) = I₊₋ ḡ I₊₋`, numerical
//! certificates for the strongly visible actions, and real-form
//! diagnostics of the `σ0`-fixed subalgebras.
//!
//! For a pair with slice group `A`, the certificate has three parts:
//!
//! * (V.1) `G_C = G_u A H_C`, witnessed by [`decompose`] succeeding;
//! * (S.1) `σ0` is the identity on `A`;
//! * (S.2) `σ0(g) ∈ G_u g H_C`, witnessed by `u = σ0(k) k⁻¹` and
//!   `m = (u g)⁻¹ σ0(g) ∈ H_C`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decompose::{decompose, Pair, Tolerances};
use crate::error::{Error, Result};
use crate::groups::{cartan_theta, classify, random_element, GroupTag};
use crate::linalg::{real_nullspace, sym_signature, CMatrix, Signature, DEFAULT_RANK_TOL};
use crate::pairs::{
    basis, canonical_span, one_param, realify, trace_form, AlgebraTag, BasisKind, SpanField, SubalgebraBasis,
};

/// Slice parameters at which (S.1) is checked.
pub const S1_GRID: [f64; 7] = [-3.0, -1.0, -0.5, 0.0, 0.5, 1.0, 3.0];

/// Bound for the (S.1) residual.
pub const S1_TOL: f64 = 1e-12;

/// Bound for the (S.2) witness residual.
pub const S2_TOL: f64 = 1e-6;

/// Scale of the random samples drawn by [`run_visible`].
pub const SAMPLE_SCALE: f64 = 1.5;

/// Number of seeds tried by the real-rank estimate.
pub const RANK_TRIALS: u64 = 5;

/// Groups stabilized by `σ0`.
pub const SIGMA0_STABLE_GROUPS: [GroupTag; 5] =
    [GroupTag::SO8C, GroupTag::SO7C, GroupTag::Spin7C, GroupTag::G2C, GroupTag::SL3C];

/// `diag(1, -1, 1, -1, 1, -1, 1, -1)`.
pub fn i_plus_minus() -> CMatrix {
    CMatrix::from_real(|i, j| match (i == j, i % 2) {
        (true, 0) => 1.0,
        (true, _) => -1.0,
        _ => 0.0,
    })
}

/// `σ0(g) = I₊₋ ḡ I₊₋`. Also the differential on the Lie algebra.
pub fn sigma0(g: &CMatrix) -> CMatrix {
    // Conjugating by a diagonal sign matrix flips entries with i + j odd.
    CMatrix::from_fn(|i, j| {
        let c = g.get(i, j).conj();
        if (i + j) % 2 == 0 {
            c
        } else {
            -c
        }
    })
}

/// Largest `|σ0(a_θ) - a_θ|_F` over [`S1_GRID`].
pub fn check_s1(pair: Pair) -> f64 {
    S1_GRID
        .iter()
        .map(|&th| {
            let a = one_param(pair.slice_kind(), th).matrix;
            sigma0(&a).dist(&a)
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct S2Witness {
    /// Reconstruction residual of the decomposition (V.1).
    pub decomposition_residual: f64,
    /// Membership residual of `u = σ0(k) k⁻¹` in the compact group.
    pub u_residual: f64,
    /// Membership residual of `m = (u g)⁻¹ σ0(g)` in `H_C`.
    pub m_residual: f64,
}

impl S2Witness {
    pub fn residual(&self) -> f64 {
        self.u_residual.max(self.m_residual)
    }
}

/// Builds and checks the (S.2) witness for `g`.
pub fn check_s2(pair: Pair, g: &CMatrix, tol: &Tolerances) -> Result<S2Witness> {
    let f = decompose(pair, g, tol)?;
    // k is real orthogonal and u g is complex orthogonal, so inverses are transposes.
    let u = sigma0(&f.k) * f.k.transpose();
    let m = (u * *g).transpose() * sigma0(g);
    Ok(S2Witness {
        decomposition_residual: f.residual,
        u_residual: classify(&u, tol.membership).residual_for(pair.compact_group()),
        m_residual: classify(&m, tol.membership).residual_for(pair.subgroup()),
    })
}

/// Residual of `σ0(g)` in `group`; zero up to rounding when `g` is in `group`.
pub fn sigma0_stability_residual(group: GroupTag, g: &CMatrix) -> f64 {
    classify(&sigma0(g), 0.0).residual_for(group)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VisibleReport {
    pub pair: Pair,
    pub samples: u64,
    pub seed: u64,
    pub v1_residual: f64,
    pub s1_residual: f64,
    pub s2_residual: f64,
    pub passed: bool,
}

/// Certifies (V.1), (S.1) and (S.2) for `pair` on `samples` random
/// elements. Sample `n` is `random_element(group, seed + n, SAMPLE_SCALE)`.
pub fn run_visible(pair: Pair, samples: u64, seed: u64, tol: &Tolerances) -> Result<VisibleReport> {
    let s1 = check_s1(pair);
    let mut v1 = 0.0f64;
    let mut s2 = 0.0f64;
    for n in 0..samples {
        let g = random_element(pair.group(), seed.wrapping_add(n), SAMPLE_SCALE)?;
        let w = check_s2(pair, &g, tol)?;
        v1 = v1.max(w.decomposition_residual);
        s2 = s2.max(w.residual());
    }
    let passed = v1 <= tol.residual && s1 <= S1_TOL && s2 <= S2_TOL;
    Ok(VisibleReport { pair, samples, seed, v1_residual: v1, s1_residual: s1, s2_residual: s2, passed })
}

fn ambient(tag: AlgebraTag) -> Result<&'static SubalgebraBasis> {
    match tag {
        AlgebraTag::G2C | AlgebraTag::Spin7C | AlgebraTag::So7C | AlgebraTag::So8C => Ok(basis(tag)),
        _ => Err(Error::InvalidArgument(format!("{tag} is not one of g2c, spin7c, so7c, so8c"))),
    }
}

fn realified(m: &CMatrix) -> DVector<f64> {
    let v = m.to_vec64();
    DVector::from_fn(128, |i, _| if i < 64 { v[i].re } else { v[i - 64].im })
}

fn from_realified(v: &DVector<f64>) -> CMatrix {
    let c: Vec<Complex64> = (0..64).map(|i| Complex64::new(v[i], v[i + 64])).collect();
    CMatrix::from_vec64(&c)
}

/// Canonical real basis of the real span of `ms`.
fn real_span(ms: &[CMatrix]) -> Vec<CMatrix> {
    let vs: Vec<DVector<f64>> = ms.iter().map(realified).collect();
    canonical_span(&vs, DEFAULT_RANK_TOL).iter().map(from_realified).collect()
}

/// Real basis of `{X in g : σ0(X) = X}` for a complex algebra `g`.
///
/// Writing `X = sum (a_j + i b_j) B_j`, the condition is real-linear in
/// the `2n` coordinates `(a, b)`.
pub fn fixed_subalgebra(tag: AlgebraTag) -> Result<SubalgebraBasis> {
    let amb = ambient(tag)?;
    let i = Complex64::new(0.0, 1.0);
    let cols: Vec<CMatrix> = amb
        .elements
        .iter()
        .map(|b| sigma0(b) - *b)
        .chain(amb.elements.iter().map(|b| sigma0(&b.scale(i)) - b.scale(i)))
        .collect();
    let system = realify(&DMatrix::from_columns(&cols.iter().map(|c| c.to_vec64()).collect::<Vec<_>>()));
    let n = amb.len();
    let fixed: Vec<CMatrix> = real_nullspace(&system, DEFAULT_RANK_TOL)
        .iter()
        .map(|v| {
            amb.elements
                .iter()
                .enumerate()
                .fold(CMatrix::zero(), |acc, (j, b)| acc + b.scale(Complex64::new(v[j], v[j + n])))
        })
        .collect();
    Ok(SubalgebraBasis { tag: BasisKind::SigmaFixed(tag), elements: real_span(&fixed), span_field: SpanField::Real })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealFormReport {
    pub algebra: AlgebraTag,
    #[serde(rename = "dim")]
    pub dim_fixed: usize,
    /// Dimension of the Cartan-fixed part `k0`.
    pub dim_k: usize,
    /// Dimension of the Cartan-antifixed part `p0`.
    pub dim_p: usize,
    pub signature: Signature,
    #[serde(rename = "rank")]
    pub real_rank_estimate: usize,
    /// Centralizer dimension found by each seed.
    pub rank_trials: Vec<usize>,
    /// The seeds disagreed; `rank` is then only the minimum.
    pub inconclusive: bool,
}

/// Dimension of the centralizer of a random `X` in `p0`, within `p0`.
fn centralizer_dim(p0: &[CMatrix], seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = p0.iter().fold(CMatrix::zero(), |acc, p| acc + p.scale_real(2.0 * rng.gen::<f64>() - 1.0));
    let cols: Vec<DVector<f64>> = p0.iter().map(|p| realified(&x.commutator(p))).collect();
    real_nullspace(&DMatrix::from_columns(&cols), DEFAULT_RANK_TOL).len()
}

/// Dimension, trace-form signature and real rank of `g^{σ0}`.
pub fn real_form_report(tag: AlgebraTag) -> Result<RealFormReport> {
    let fixed = fixed_subalgebra(tag)?;
    let half = |sign: f64| -> Vec<CMatrix> {
        let parts: Vec<CMatrix> =
            fixed.elements.iter().map(|x| (*x + cartan_theta(x).scale_real(sign)).scale_real(0.5)).collect();
        real_span(&parts)
    };
    let k0 = half(1.0);
    let p0 = half(-1.0);
    if k0.len() + p0.len() != fixed.len() {
        return Err(Error::ComplementRank { got: k0.len() + p0.len(), expected: fixed.len() });
    }
    let all: Vec<CMatrix> = k0.iter().chain(&p0).copied().collect();
    let gram = DMatrix::from_fn(all.len(), all.len(), |a, b| trace_form(&all[a], &all[b]).re);
    let signature = sym_signature(&gram, DEFAULT_RANK_TOL)?;
    let rank_trials: Vec<usize> = (0..RANK_TRIALS).map(|s| centralizer_dim(&p0, s)).collect();
    let real_rank_estimate = rank_trials.iter().copied().min().unwrap_or(0);
    let inconclusive = rank_trials.iter().any(|&r| r != real_rank_estimate);
    Ok(RealFormReport {
        algebra: tag,
        dim_fixed: fixed.len(),
        dim_k: k0.len(),
        dim_p: p0.len(),
        signature,
        real_rank_estimate,
        rank_trials,
        inconclusive,
    })
}
