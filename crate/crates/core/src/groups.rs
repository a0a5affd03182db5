//! Group membership, the Cartan involution, and the triality covering map.
//!
//! Every group is realized inside `SO(8,C)` acting on the complexified
//! octonions:
//!
//! * `G2(C)`: orthogonal automorphisms, `(gx)(gy) = g(xy)`.
//! * `Spin(7,C)`: orthogonal `g` with a companion `g0` in `SO(7,C)` such
//!   that `(g0 x)(g y) = g(xy)`. The map `g -> g0` is the double cover
//!   `pi : Spin(7,C) -> SO(7,C)`.
//! * `SO(7,C)`: orthogonal, fixes `e0`.
//! * `SL(3,C)`: elements of `G2(C)` fixing `e1`.
//!
//! Compact forms are the real points of each group.
//!
//! Residuals are scale-aware: a law that is quadratic in the matrix is
//! divided by the square of [`magnitude`], a linear one by the magnitude
//! itself, so a single tolerance works for both unitary-sized and
//! strongly non-compact elements.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cayley::{mult_table, Octonion};
use crate::error::{Error, Result};
use crate::linalg::{expm, left_mul_matrix, nullspace, CMatrix, DEFAULT_RANK_TOL};
use crate::pairs::{basis, AlgebraTag, SpanField};

/// Default tolerance for membership and rank decisions.
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-9;

/// Upper bound on the coefficient range accepted by [`random_element`].
pub const MAX_RANDOM_SCALE: f64 = 3.0;

/// `max(1, |g|_F / sqrt(8))`; equals 1 on the real orthogonal group.
pub fn magnitude(g: &CMatrix) -> f64 {
    (g.frobenius_norm() / 8f64.sqrt()).max(1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupTag {
    SO8C,
    SO7C,
    Spin7C,
    G2C,
    SL3C,
    SO8,
    SO7,
    Spin7,
    G2,
    SU3,
}

impl GroupTag {
    pub const ALL: [GroupTag; 10] = [
        GroupTag::SO8C,
        GroupTag::SO7C,
        GroupTag::Spin7C,
        GroupTag::G2C,
        GroupTag::SL3C,
        GroupTag::SO8,
        GroupTag::SO7,
        GroupTag::Spin7,
        GroupTag::G2,
        GroupTag::SU3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GroupTag::SO8C => "so8c",
            GroupTag::SO7C => "so7c",
            GroupTag::Spin7C => "spin7c",
            GroupTag::G2C => "g2c",
            GroupTag::SL3C => "sl3c",
            GroupTag::SO8 => "so8",
            GroupTag::SO7 => "so7",
            GroupTag::Spin7 => "spin7",
            GroupTag::G2 => "g2",
            GroupTag::SU3 => "su3",
        }
    }

    pub fn is_compact(self) -> bool {
        matches!(self, GroupTag::SO8 | GroupTag::SO7 | GroupTag::Spin7 | GroupTag::G2 | GroupTag::SU3)
    }

    /// The complexification of a compact group; complex groups map to themselves.
    pub fn complexification(self) -> GroupTag {
        match self {
            GroupTag::SO8 => GroupTag::SO8C,
            GroupTag::SO7 => GroupTag::SO7C,
            GroupTag::Spin7 => GroupTag::Spin7C,
            GroupTag::G2 => GroupTag::G2C,
            GroupTag::SU3 => GroupTag::SL3C,
            other => other,
        }
    }

    /// Lie algebra basis whose exponentials generate the group.
    pub fn algebra(self) -> AlgebraTag {
        match self {
            GroupTag::SO8C => AlgebraTag::So8C,
            GroupTag::SO7C => AlgebraTag::So7C,
            GroupTag::Spin7C => AlgebraTag::Spin7C,
            GroupTag::G2C => AlgebraTag::G2C,
            GroupTag::SL3C => AlgebraTag::Sl3C,
            GroupTag::SO8 => AlgebraTag::So8Compact,
            GroupTag::SO7 => AlgebraTag::So7Compact,
            GroupTag::Spin7 => AlgebraTag::Spin7Compact,
            GroupTag::G2 => AlgebraTag::G2Compact,
            GroupTag::SU3 => AlgebraTag::Su3,
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        GroupTag::ALL.iter().copied().find(|t| t.name() == lower).ok_or_else(|| Error::UnknownTag(s.to_string()))
    }
}

/// One membership condition and how far `g` is from satisfying it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub holds: bool,
    pub residual: f64,
}

impl Check {
    fn new(residual: f64, tol: f64) -> Self {
        Check { holds: residual <= tol, residual }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub orthogonal: Check,
    pub special: Check,
    pub fixes_e0: Check,
    pub fixes_e1: Check,
    pub is_automorphism: Check,
    pub has_triality_companion: Check,
    pub is_real: Check,
}

impl MembershipReport {
    /// Conditions that together define membership in `group`.
    pub fn conditions(&self, group: GroupTag) -> Vec<Check> {
        let mut out = vec![self.orthogonal, self.special];
        match group.complexification() {
            GroupTag::SO8C => {}
            GroupTag::SO7C => out.push(self.fixes_e0),
            GroupTag::Spin7C => out.push(self.has_triality_companion),
            GroupTag::G2C => out.extend([self.fixes_e0, self.is_automorphism]),
            GroupTag::SL3C => out.extend([self.fixes_e0, self.fixes_e1, self.is_automorphism]),
            _ => unreachable!("complexification returns a complex group"),
        }
        if group.is_compact() {
            out.push(self.is_real);
        }
        out
    }

    pub fn member_of(&self, group: GroupTag) -> bool {
        self.conditions(group).iter().all(|c| c.holds)
    }

    /// Largest residual among the conditions for `group`.
    pub fn residual_for(&self, group: GroupTag) -> f64 {
        self.conditions(group).iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// Scaled residual of `g^T g = I`.
pub fn orthogonality_residual(g: &CMatrix) -> f64 {
    let m = magnitude(g);
    (g.transpose() * *g).dist(&CMatrix::identity()) / (m * m)
}

/// Scaled residual of `g e_i = e_i`.
pub fn fixes_residual(g: &CMatrix, i: usize) -> f64 {
    (g.column(i) - Octonion::basis(i)).magnitude() / magnitude(g)
}

/// Scaled residual of the automorphism law over all 64 ordered basis pairs.
pub fn automorphism_residual(g: &CMatrix) -> f64 {
    let table = mult_table();
    let cols: [Octonion; 8] = std::array::from_fn(|j| g.column(j));
    let mut worst = 0.0f64;
    for i in 0..8 {
        for j in 0..8 {
            let p = table.entry(i, j);
            let rhs = cols[p.index].scale(Complex64::new(p.sign as f64, 0.0));
            worst = worst.max((cols[i] * cols[j] - rhs).magnitude());
        }
    }
    let m = magnitude(g);
    worst / (m * m)
}

/// Scaled residual of `(g0 e_i)(g e_j) = g(e_i e_j)` over all 64 pairs.
pub fn triality_law_residual(g: &CMatrix, g0: &CMatrix) -> f64 {
    let table = mult_table();
    let gc: [Octonion; 8] = std::array::from_fn(|j| g.column(j));
    let g0c: [Octonion; 8] = std::array::from_fn(|j| g0.column(j));
    let mut worst = 0.0f64;
    for i in 0..8 {
        for j in 0..8 {
            let p = table.entry(i, j);
            let rhs = gc[p.index].scale(Complex64::new(p.sign as f64, 0.0));
            worst = worst.max((g0c[i] * gc[j] - rhs).magnitude());
        }
    }
    worst / (magnitude(g) * magnitude(g0))
}

/// Candidate companion `g0 x = (g x) * conj(g e0) / (g e0, g e0)`.
///
/// Setting `y = e0` in the triality law forces this formula; whether it
/// satisfies the full law is a separate question.
pub fn companion_candidate(g: &CMatrix) -> Option<CMatrix> {
    let ge0 = g.column(0);
    let form = ge0.form(&ge0);
    if form.norm() == 0.0 {
        return None;
    }
    let right = ge0.conj().scale(form.inv());
    let cols: [Octonion; 8] = std::array::from_fn(|j| g.column(j) * right);
    Some(CMatrix::from_columns(&cols))
}

/// Law residual combined with the requirement that `g0` lie in `SO(7,C)`.
fn companion_residual(g: &CMatrix) -> (Option<CMatrix>, f64) {
    match companion_candidate(g) {
        None => (None, f64::INFINITY),
        Some(g0) => {
            let r = triality_law_residual(g, &g0).max(orthogonality_residual(&g0)).max(fixes_residual(&g0, 0));
            (Some(g0), r)
        }
    }
}

/// Evaluates every membership flag of `g`.
pub fn classify(g: &CMatrix, tol: f64) -> MembershipReport {
    let m = magnitude(g);
    let det = g.determinant();
    let imag = CMatrix::from_fn(|i, j| Complex64::new(g.get(i, j).im, 0.0)).frobenius_norm();
    MembershipReport {
        orthogonal: Check::new(orthogonality_residual(g), tol),
        special: Check::new((det - Complex64::new(1.0, 0.0)).norm() / (m * m), tol),
        fixes_e0: Check::new(fixes_residual(g, 0), tol),
        fixes_e1: Check::new(fixes_residual(g, 1), tol),
        is_automorphism: Check::new(automorphism_residual(g), tol),
        has_triality_companion: Check::new(companion_residual(g).1, tol),
        is_real: Check::new(imag / m, tol),
    }
}

/// Cartan involution: entrywise complex conjugation.
pub fn cartan_theta(g: &CMatrix) -> CMatrix {
    g.conj()
}

/// A spin element together with its image under the covering map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialityPair {
    /// Spin element acting on the 8-dimensional representation.
    pub g: CMatrix,
    /// Vector element in `SO(7,C)`, `pi(g)`.
    pub g0: CMatrix,
}

impl TrialityPair {
    pub fn law_residual(&self) -> f64 {
        triality_law_residual(&self.g, &self.g0)
    }
}

/// Computes the companion of `g` and verifies the full triality law.
pub fn triality_companion(g: &CMatrix, tol: f64) -> Result<TrialityPair> {
    let orth = orthogonality_residual(g);
    if orth > tol {
        return Err(Error::Precondition(format!("matrix is not orthogonal (residual {orth:e})")));
    }
    match companion_residual(g) {
        (Some(g0), r) if r <= tol => Ok(TrialityPair { g: *g, g0 }),
        (_, residual) => Err(Error::NoTrialityCompanion { residual }),
    }
}

/// The covering map `pi : Spin(7,C) -> SO(7,C)`.
pub fn covering_map(g: &CMatrix, tol: f64) -> Result<CMatrix> {
    triality_companion(g, tol).map(|p| p.g0)
}

/// Linear system whose nullspace is `{g : (g0 x)(g y) = g(xy)}`.
///
/// Unknowns are the 64 entries of `g` in column-major order. Rows are grouped
/// by ordered basis pair `(i, j)`, eight rows per pair.
pub fn lift_system(g0: &CMatrix) -> DMatrix<Complex64> {
    let table = mult_table();
    let mut a = DMatrix::<Complex64>::zeros(512, 64);
    for i in 0..8 {
        let left = left_mul_matrix(&g0.column(i));
        for j in 0..8 {
            let p = table.entry(i, j);
            let row0 = (i * 8 + j) * 8;
            for r in 0..8 {
                for c in 0..8 {
                    a[(row0 + r, j * 8 + c)] += left.get(r, c);
                }
                a[(row0 + r, p.index * 8 + r)] -= Complex64::new(p.sign as f64, 0.0);
            }
        }
    }
    a
}

/// Lifts `g0` in `SO(7,C)` to a spin element `g` with `pi(g) = g0`.
///
/// The sign is fixed so that the first coordinate of `g e0` with modulus
/// above `tol` has argument in `(-pi/2, pi/2]`.
pub fn lift(g0: &CMatrix, tol: f64) -> Result<CMatrix> {
    let orth = orthogonality_residual(g0);
    let fix = fixes_residual(g0, 0);
    if orth > tol || fix > tol {
        return Err(Error::Precondition(format!(
            "lift needs an element of SO(7,C) (orthogonality {orth:e}, e0 residual {fix:e})"
        )));
    }
    let ns = nullspace(&lift_system(g0), DEFAULT_RANK_TOL);
    if ns.len() != 1 {
        return Err(Error::LiftNullspace { dim: ns.len() });
    }
    let g = CMatrix::from_vec64(ns[0].as_slice());
    let ge0 = g.column(0);
    let form = ge0.form(&ge0);
    if form.norm() <= tol {
        return Err(Error::LiftNormalization { value: form.norm() });
    }
    let mut g = g.scale(form.sqrt().inv());
    let ge0 = g.column(0);
    if let Some(c) = ge0.0.iter().find(|c| c.norm() > tol) {
        let keep = c.re > 0.0 || (c.re == 0.0 && c.im > 0.0);
        if !keep {
            g = -g;
        }
    }
    Ok(g)
}

/// Seeded random element `exp(X)` of `group`.
///
/// `X` is a real-linear combination of the group's algebra basis. For
/// complex groups each basis element `B` contributes `(a + i b) B`, for
/// compact groups `a B`; coefficients are drawn in basis order as
/// `scale * (2u - 1)` with `u` uniform on `[0, 1)` from ChaCha8 seeded by
/// `seed` (real part first, then imaginary part).
pub fn random_element(group: GroupTag, seed: u64, scale: f64) -> Result<CMatrix> {
    if !(0.0..=MAX_RANDOM_SCALE).contains(&scale) {
        return Err(Error::InvalidArgument(format!("scale {scale} outside [0, {MAX_RANDOM_SCALE}]")));
    }
    let x = random_algebra_element(group.algebra(), seed, scale);
    expm(&x)
}

/// The algebra element behind [`random_element`].
pub fn random_algebra_element(tag: AlgebraTag, seed: u64, scale: f64) -> CMatrix {
    let b = basis(tag);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || scale * (2.0 * rng.gen::<f64>() - 1.0);
    let mut x = CMatrix::zero();
    for elem in &b.elements {
        let coeff = match b.span_field {
            SpanField::Complex => {
                let re = draw();
                let im = draw();
                Complex64::new(re, im)
            }
            SpanField::Real => Complex64::new(draw(), 0.0),
        };
        x = x + elem.scale(coeff);
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::{one_param, OneParamKind};

    const TOL: f64 = DEFAULT_MEMBERSHIP_TOL;

    #[test]
    fn identity_is_in_everything() {
        let r = classify(&CMatrix::identity(), TOL);
        for tag in GroupTag::ALL {
            assert!(r.member_of(tag), "{tag}");
            assert_eq!(r.residual_for(tag), 0.0);
        }
    }

    #[test]
    fn slice_element_of_g2() {
        let t = one_param(OneParamKind::A1, 1.0).matrix;
        let r = classify(&t, TOL);
        assert!(r.orthogonal.holds);
        assert!(r.is_automorphism.holds);
        assert!(r.fixes_e0.holds);
        assert!(!r.fixes_e1.holds);
        assert!(!r.is_real.holds);
    }

    #[test]
    fn spin_slice_element() {
        let a = one_param(OneParamKind::A0Tilde, 1.0).matrix;
        let r = classify(&a, TOL);
        assert!(r.has_triality_companion.holds);
        assert!(!r.is_automorphism.holds);
        assert!(!r.fixes_e0.holds);
    }

    #[test]
    fn cartan_theta_examples() {
        assert_eq!(cartan_theta(&CMatrix::identity()), CMatrix::identity());
        for th in [0.3, 1.0, 2.5] {
            let a = one_param(OneParamKind::A0Tilde, th).matrix;
            let b = one_param(OneParamKind::A0Tilde, -th).matrix;
            assert!(cartan_theta(&a).dist(&b) < 1e-14);
        }
        let g = random_element(GroupTag::SO8, 4, 1.0).unwrap();
        assert!(g.dist(&cartan_theta(&g)) == 0.0);
    }

    #[test]
    fn companion_examples() {
        let p = triality_companion(&CMatrix::identity(), TOL).unwrap();
        assert_eq!(p.g0, CMatrix::identity());
        let p = triality_companion(&-CMatrix::identity(), TOL).unwrap();
        assert!(p.g0.dist(&CMatrix::identity()) < 1e-15);
        for th in [-3.0, 0.5, 1.0] {
            let p = triality_companion(&one_param(OneParamKind::A0Tilde, th).matrix, TOL).unwrap();
            let expected = one_param(OneParamKind::A0, 2.0 * th / 3.0).matrix;
            assert!(p.g0.dist(&expected) < 1e-12, "{}", p.g0.dist(&expected));
        }
    }

    #[test]
    fn companion_rejects_non_spin() {
        // A coordinate reflection pair: orthogonal, det 1, not in Spin(7,C).
        let g = CMatrix::diag([1.0, 1.0, 1.0, 1.0, 1.0, 1.0, -1.0, -1.0].map(|v| Complex64::new(v, 0.0)));
        assert!(matches!(triality_companion(&g, TOL), Err(Error::NoTrialityCompanion { .. })));
        let not_orth = CMatrix::identity().scale_real(2.0);
        assert!(matches!(triality_companion(&not_orth, TOL), Err(Error::Precondition(_))));
    }

    #[test]
    fn lift_examples() {
        assert!(lift(&CMatrix::identity(), TOL).unwrap().dist(&CMatrix::identity()) < 1e-12);
        for th in [0.5, 1.0, 2.0] {
            let g0 = one_param(OneParamKind::A0, th).matrix;
            let g = lift(&g0, TOL).unwrap();
            let expected = one_param(OneParamKind::A0Tilde, 1.5 * th).matrix;
            assert!(g.dist(&expected) < 1e-8, "{}", g.dist(&expected));
        }
    }

    #[test]
    fn lift_rejects_non_so7() {
        let a = one_param(OneParamKind::A0Tilde, 1.0).matrix;
        assert!(matches!(lift(&a, TOL), Err(Error::Precondition(_))));
    }

    #[test]
    fn triality_system_nullspaces() {
        let ns = nullspace(&lift_system(&CMatrix::identity()), DEFAULT_RANK_TOL);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        let ratio = v[0];
        let g = CMatrix::from_vec64(v.as_slice()).scale(ratio.inv());
        assert!(g.dist(&CMatrix::identity()) < 1e-12);
    }

    #[test]
    fn random_element_examples() {
        assert_eq!(random_element(GroupTag::G2C, 1, 0.0).unwrap(), CMatrix::identity());
        for seed in 0..5 {
            let g = random_element(GroupTag::G2, seed, 1.0).unwrap();
            let r = classify(&g, TOL);
            assert!(r.is_real.holds && r.is_automorphism.holds);
            let h = random_element(GroupTag::SL3C, seed, 1.0).unwrap();
            let r = classify(&h, TOL);
            assert!(r.fixes_e1.holds && r.is_automorphism.holds);
        }
        assert!(random_element(GroupTag::G2C, 0, 3.5).is_err());
        assert!("e8".parse::<GroupTag>().is_err());
    }

    #[test]
    fn random_elements_belong_to_their_group() {
        for tag in GroupTag::ALL {
            for seed in 0..3 {
                let g = random_element(tag, seed, 1.0).unwrap();
                let r = classify(&g, TOL);
                assert!(r.member_of(tag), "{tag} seed {seed}: {r:?}");
            }
        }
    }

    #[test]
    fn random_element_is_deterministic() {
        let a = random_element(GroupTag::Spin7C, 42, 2.0).unwrap();
        let b = random_element(GroupTag::Spin7C, 42, 2.0).unwrap();
        assert_eq!(a, b);
        let c = random_element(GroupTag::Spin7C, 43, 2.0).unwrap();
        assert_ne!(a, c);
    }
}
