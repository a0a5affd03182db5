//! Constructive Cartan decompositions `g = k · a_θ · h`.
//!
//! Each pair reduces to a point on a complex unit sphere:
//!
//! * R-2: `v = g e1` on the sphere in `Im(C_C)`, slice `t_θ e1`;
//! * R-1': `v = g e0` on the sphere in `C_C`, slice `ã_θ e0`;
//! * R-1: lift to `Spin(7,C)`, decompose there, and push down with `pi`.
//!
//! Writing `v = x + i y` with real `x, y`, the sphere condition forces
//! `|x|^2 - |y|^2 = 1` and `x ⊥ y`, so `v = cosh θ x̂ + i sinh θ ŷ`. A
//! compact `k` carrying the standard frame to `(x̂, ŷ)` then gives
//! `h = (k a_θ)^{-1} g` in the stabilizer.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::cayley::Octonion;
use crate::error::{Error, Result};
use crate::groups::{classify, covering_map, lift, triality_companion, GroupTag, TrialityPair, DEFAULT_MEMBERSHIP_TOL};
use crate::linalg::{left_mul_matrix, CMatrix};
use crate::pairs::{one_param, slice_blocks, OneParamKind};

/// Default bound on `|g - k a h|_F`.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-7;

/// Completion candidates must keep at least this much length after
/// projection. Among 7 unit candidates against a span of dimension `d`
/// the best keeps at least `sqrt((7 - d) / 7)`, which is above this for
/// every `d <= 3`.
const COMPLETION_MIN_NORM: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub membership: f64,
    pub residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { membership: DEFAULT_MEMBERSHIP_TOL, residual: DEFAULT_RESIDUAL_TOL }
    }
}

/// The three rank-one spherical pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pair {
    /// `(SO(7,C), G2(C))`
    #[serde(rename = "r1")]
    R1,
    /// `(Spin(7,C), G2(C))`
    #[serde(rename = "r1p")]
    R1Prime,
    /// `(G2(C), SL(3,C))`
    #[serde(rename = "r2")]
    R2,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::R1, Pair::R1Prime, Pair::R2];

    pub fn name(self) -> &'static str {
        match self {
            Pair::R1 => "r1",
            Pair::R1Prime => "r1p",
            Pair::R2 => "r2",
        }
    }

    pub fn group(self) -> GroupTag {
        match self {
            Pair::R1 => GroupTag::SO7C,
            Pair::R1Prime => GroupTag::Spin7C,
            Pair::R2 => GroupTag::G2C,
        }
    }

    pub fn compact_group(self) -> GroupTag {
        match self {
            Pair::R1 => GroupTag::SO7,
            Pair::R1Prime => GroupTag::Spin7,
            Pair::R2 => GroupTag::G2,
        }
    }

    pub fn subgroup(self) -> GroupTag {
        match self {
            Pair::R1 | Pair::R1Prime => GroupTag::G2C,
            Pair::R2 => GroupTag::SL3C,
        }
    }

    pub fn slice_kind(self) -> OneParamKind {
        match self {
            Pair::R1 => OneParamKind::A0,
            Pair::R1Prime => OneParamKind::A0Tilde,
            Pair::R2 => OneParamKind::A1,
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pair {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Pair::ALL.iter().copied().find(|p| p.name() == lower).ok_or_else(|| Error::UnknownTag(s.to_string()))
    }
}

/// `g = k · a_θ · h` with `k` compact and `h` in the subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KAHFactors {
    pub pair: Pair,
    pub theta: f64,
    pub k: CMatrix,
    pub h: CMatrix,
    pub residual: f64,
}

/// Which real subspace a sphere point lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereMode {
    /// `Im(C_C)`, coordinates `e1..e7`.
    Imaginary7,
    /// All of `C_C`.
    Full8,
}

impl SphereMode {
    fn first_index(self) -> usize {
        match self {
            SphereMode::Imaginary7 => 1,
            SphereMode::Full8 => 0,
        }
    }
}

/// `v = cosh θ · x_hat + i sinh θ · y_hat` with real orthonormal `x_hat, y_hat`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereNormalForm {
    pub x_hat: Octonion,
    pub y_hat: Octonion,
    pub theta: f64,
}

type Real8 = [f64; 8];

fn dot(a: &Real8, b: &Real8) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &Real8) -> f64 {
    dot(a, a).sqrt()
}

fn scaled(a: &Real8, s: f64) -> Real8 {
    a.map(|x| x * s)
}

/// Removes the components along the orthonormal `span`, twice for accuracy.
fn project_out(v: &Real8, span: &[Real8]) -> Real8 {
    let mut out = *v;
    for _ in 0..2 {
        for u in span {
            let c = dot(&out, u);
            for (o, ui) in out.iter_mut().zip(u) {
                *o -= c * ui;
            }
        }
    }
    out
}

/// First standard basis vector `e_k`, `k` in `first..8`, whose projection
/// off `span` keeps length above [`COMPLETION_MIN_NORM`], normalized.
fn first_completion(span: &[Real8], first: usize) -> Option<Real8> {
    (first..8).find_map(|k| {
        let mut e = [0.0; 8];
        e[k] = 1.0;
        let p = project_out(&e, span);
        let n = norm(&p);
        (n > COMPLETION_MIN_NORM).then(|| scaled(&p, 1.0 / n))
    })
}

fn real_octonion(o: &Octonion, tol: f64, what: &str) -> Result<Real8> {
    let im = norm(&o.im());
    if im > tol {
        return Err(Error::Frame(format!("{what} is not real (imaginary part {im:e})")));
    }
    Ok(o.re())
}

/// Normal form of a point on the complex unit sphere.
pub fn sphere_normal_form(v: &Octonion, mode: SphereMode, tol: f64) -> Result<SphereNormalForm> {
    let scale = v.magnitude().powi(2).max(1.0);
    let residual = (v.form(v) - Complex64::new(1.0, 0.0)).norm() / scale;
    if residual > tol {
        return Err(Error::NotOnSphere { residual });
    }
    let mut x = v.re();
    let mut y = v.im();
    if mode == SphereMode::Imaginary7 {
        let off = v.0[0].norm() / scale.sqrt();
        if off > tol {
            return Err(Error::Precondition(format!("point has an e0 component ({off:e})")));
        }
        x[0] = 0.0;
        y[0] = 0.0;
    }
    let x_hat = scaled(&x, 1.0 / norm(&x));
    let ny = norm(&y);
    let theta = ny.asinh();
    let y_hat = if ny > tol {
        let p = project_out(&y, &[x_hat]);
        scaled(&p, 1.0 / norm(&p))
    } else {
        first_completion(&[x_hat], mode.first_index()).expect("a unit vector always has a completion")
    };
    Ok(SphereNormalForm { x_hat: Octonion::from_real(x_hat), y_hat: Octonion::from_real(y_hat), theta })
}

/// Compact `k` in `G2` with `k e1 = u1` and `k e2 = u2`.
///
/// The frame is `u3 = u1 u2`, `u4` the first index-ordered completion of
/// `{u1, u2, u3}`, `u5 = u1 u4`, `u6 = u4 u2`, `u7 = u1 u6`, mirroring how
/// the standard basis is generated by `e1, e2, e4`.
pub fn g2_frame(u1: &Octonion, u2: &Octonion, tol: f64) -> Result<CMatrix> {
    let a = real_octonion(u1, tol, "u1")?;
    let b = real_octonion(u2, tol, "u2")?;
    if a[0].abs() > tol || b[0].abs() > tol {
        return Err(Error::Frame("frame vectors must be imaginary".into()));
    }
    if (norm(&a) - 1.0).abs() > tol || (norm(&b) - 1.0).abs() > tol || dot(&a, &b).abs() > tol {
        return Err(Error::Frame("frame vectors must be orthonormal".into()));
    }
    let u1 = Octonion::from_real(a);
    let u2 = Octonion::from_real(b);
    let u3 = u1 * u2;
    let span = [a, b, u3.re()];
    let u4 = first_completion(&span, 1).ok_or_else(|| Error::Frame("no completion for u4".into()))?;
    let u4 = Octonion::from_real(u4);
    let u5 = u1 * u4;
    let u6 = u4 * u2;
    let u7 = u1 * u6;
    Ok(CMatrix::from_columns(&[Octonion::basis(0), u1, u2, u3, u4, u5, u6, u7]))
}

/// Compact spin element `g` with `g e0 = a`, for a real unit octonion `a`.
///
/// Left multiplication by an imaginary unit lies in `Spin(7)`, but by a
/// general unit it does not. So `a` is factored as `u1 u2` with imaginary
/// units `u2 ⊥ Im a` (first index-ordered completion) and `u1 = a conj(u2)`,
/// and `g = L_{u1} L_{u2}`.
pub fn spin7_move(a: &Octonion, tol: f64) -> Result<TrialityPair> {
    let ar = real_octonion(a, tol, "a")?;
    if (norm(&ar) - 1.0).abs() > tol {
        return Err(Error::Frame("spin7_move needs a unit vector".into()));
    }
    let mut im = ar;
    im[0] = 0.0;
    let n_im = norm(&im);
    let span: Vec<Real8> = if n_im > tol { vec![scaled(&im, 1.0 / n_im)] } else { Vec::new() };
    let u2 = first_completion(&span, 1).expect("at most one direction to avoid");
    let u2 = Octonion::from_real(u2);
    let a = Octonion::from_real(scaled(&ar, 1.0 / norm(&ar)));
    let mut u1 = a * u2.conj();
    u1.0[0] = Complex64::new(0.0, 0.0);
    let g = left_mul_matrix(&u1) * left_mul_matrix(&u2);
    triality_companion(&g, tol)
}

fn check_membership(g: &CMatrix, group: GroupTag, tol: f64) -> Result<()> {
    let report = classify(g, tol);
    if report.member_of(group) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("input is not in {group} (residual {:e})", report.residual_for(group))))
    }
}

/// `h = a_θ⁻¹ kᵀ g` in double-double arithmetic, rounded once at the end.
///
/// For large θ, `a_θ` and `g` are both of size `cosh θ` while `h` stays
/// small, so forming `h` in plain doubles cancels away most of its digits
/// and `k a h` amplifies the loss again. The inverse is taken of the
/// stored blocks, determinant included, so `k a h = k kᵀ g` up to rounding.
fn accurate_h(kind: OneParamKind, theta: f64, k: &CMatrix, g: &CMatrix) -> CMatrix {
    let mut b = [[(TwoFloat::from(0.0), TwoFloat::from(0.0)); 8]; 8];
    for (i, row) in b.iter_mut().enumerate() {
        for (j, bij) in row.iter_mut().enumerate() {
            let (mut re, mut im) = (TwoFloat::from(0.0), TwoFloat::from(0.0));
            for l in 0..8 {
                let (x, y) = (k.get(l, i), g.get(l, j));
                re += TwoFloat::new_mul(x.re, y.re) - TwoFloat::new_mul(x.im, y.im);
                im += TwoFloat::new_mul(x.re, y.im) + TwoFloat::new_mul(x.im, y.re);
            }
            *bij = (re, im);
        }
    }
    let mut h = CMatrix::zero();
    for (p, q, t) in slice_blocks(kind, theta) {
        let (c, s) = (t.cosh(), t.sinh());
        let det = TwoFloat::new_mul(c, c) - TwoFloat::new_mul(s, s);
        for j in 0..8 {
            let ((pr, pi), (qr, qi)) = (b[p][j], b[q][j]);
            let entry = |re: TwoFloat, im: TwoFloat| Complex64::new((re / det).into(), (im / det).into());
            h.set(p, j, entry(pr * c - qi * s, pi * c + qr * s));
            h.set(q, j, entry(pi * s + qr * c, qi * c - pr * s));
        }
    }
    h
}

fn finish(pair: Pair, g: &CMatrix, k: CMatrix, theta: f64, tol: &Tolerances) -> Result<KAHFactors> {
    let ka = k * one_param(pair.slice_kind(), theta).matrix;
    let h = accurate_h(pair.slice_kind(), theta, &k, g);
    let residual = g.dist(&(ka * h));
    if residual > tol.residual {
        return Err(Error::Residual { residual, tol: tol.residual });
    }
    Ok(KAHFactors { pair, theta, k, h, residual })
}

/// `G2(C) = G2 · A1 · SL(3,C)`.
pub fn decompose_r2(g: &CMatrix, tol: &Tolerances) -> Result<KAHFactors> {
    check_membership(g, GroupTag::G2C, tol.membership)?;
    let nf = sphere_normal_form(&g.column(1), SphereMode::Imaginary7, tol.membership)?;
    let k = g2_frame(&nf.x_hat, &nf.y_hat, tol.membership)?;
    finish(Pair::R2, g, k, nf.theta, tol)
}

/// `Spin(7,C) = Spin(7) · Ã0 · G2(C)`.
pub fn decompose_r1p(g: &CMatrix, tol: &Tolerances) -> Result<KAHFactors> {
    check_membership(g, GroupTag::Spin7C, tol.membership)?;
    let nf = sphere_normal_form(&g.column(0), SphereMode::Full8, tol.membership)?;
    let k1 = spin7_move(&nf.x_hat, tol.membership)?.g;
    // k1^{-1} y_hat is orthogonal to k1^{-1} x_hat = e0, hence imaginary.
    let mut w = k1.transpose().apply(&nf.y_hat).re();
    w[0] = 0.0;
    let w = scaled(&w, 1.0 / norm(&w));
    let w2 = first_completion(&[w], 1).expect("a unit vector always has a completion");
    let k2 = g2_frame(&Octonion::from_real(w), &Octonion::from_real(w2), tol.membership)?;
    finish(Pair::R1Prime, g, k1 * k2, nf.theta, tol)
}

/// `SO(7,C) = SO(7) · A0 · G2(C)`, through the lift to `Spin(7,C)`.
pub fn decompose_r1(g: &CMatrix, tol: &Tolerances) -> Result<KAHFactors> {
    check_membership(g, GroupTag::SO7C, tol.membership)?;
    let spin = lift(g, tol.membership)?;
    let up = decompose_r1p(&spin, tol)?;
    let k = covering_map(&up.k, tol.membership)?;
    // pi(ã_θ) = a_{2θ/3}; pi restricts to the identity on G2(C).
    finish(Pair::R1, g, k, 2.0 * up.theta / 3.0, tol)
}

pub fn decompose(pair: Pair, g: &CMatrix, tol: &Tolerances) -> Result<KAHFactors> {
    match pair {
        Pair::R1 => decompose_r1(g, tol),
        Pair::R1Prime => decompose_r1p(g, tol),
        Pair::R2 => decompose_r2(g, tol),
    }
}

/// `k · a_θ · h`.
pub fn reconstruct(f: &KAHFactors) -> CMatrix {
    f.k * one_param(f.pair.slice_kind(), f.theta).matrix * f.h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::random_element;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normal_form_examples() {
        let nf = sphere_normal_form(&Octonion::basis(1), SphereMode::Imaginary7, 1e-9).unwrap();
        assert_eq!((nf.x_hat, nf.y_hat, nf.theta), (Octonion::basis(1), Octonion::basis(2), 0.0));

        let v = Octonion::basis(1).scale(c(1f64.cosh(), 0.0)) + Octonion::basis(2).scale(c(0.0, 1f64.sinh()));
        let nf = sphere_normal_form(&v, SphereMode::Imaginary7, 1e-9).unwrap();
        assert!((nf.theta - 1.0).abs() < 1e-14);
        assert!((nf.x_hat - Octonion::basis(1)).magnitude() < 1e-15);
        assert!((nf.y_hat - Octonion::basis(2)).magnitude() < 1e-15);

        let v = Octonion::basis(2).scale(c(1.25, 0.0)) + Octonion::basis(5).scale(c(0.0, 0.75));
        let nf = sphere_normal_form(&v, SphereMode::Imaginary7, 1e-9).unwrap();
        assert!((nf.theta - 0.75f64.asinh()).abs() < 1e-15);
        assert!((nf.theta.cosh() - 1.25).abs() < 1e-14 && (nf.theta.sinh() - 0.75).abs() < 1e-14);
        assert_eq!(nf.x_hat, Octonion::basis(2));
        assert_eq!(nf.y_hat, Octonion::basis(5));
    }

    #[test]
    fn normal_form_rejects_off_sphere() {
        let v = Octonion::basis(1).scale(c(2.0, 0.0));
        assert!(matches!(sphere_normal_form(&v, SphereMode::Imaginary7, 1e-9), Err(Error::NotOnSphere { .. })));
        assert!(matches!(
            sphere_normal_form(&Octonion::basis(0), SphereMode::Imaginary7, 1e-9),
            Err(Error::Precondition(_))
        ));
        assert!(sphere_normal_form(&Octonion::basis(0), SphereMode::Full8, 1e-9).is_ok());
    }

    #[test]
    fn g2_frame_examples() {
        let e = Octonion::basis;
        assert_eq!(g2_frame(&e(1), &e(2), 1e-9).unwrap(), CMatrix::identity());
        let k = g2_frame(&e(2), &e(1), 1e-9).unwrap();
        assert_ne!(k, CMatrix::identity());
        assert_eq!(k.column(1), e(2));
        assert_eq!(k.column(2), e(1));
        assert!(classify(&k, 1e-12).member_of(GroupTag::G2));
        assert!(matches!(g2_frame(&e(1), &e(1), 1e-9), Err(Error::Frame(_))));
        assert!(matches!(g2_frame(&e(0), &e(1), 1e-9), Err(Error::Frame(_))));
    }

    #[test]
    fn spin7_move_examples() {
        let e = Octonion::basis;
        let p = spin7_move(&e(0), 1e-9).unwrap();
        assert_eq!(p.g, CMatrix::identity());
        assert_eq!(p.g0, CMatrix::identity());
        let p = spin7_move(&e(1), 1e-9).unwrap();
        assert_eq!(p.g.column(0), e(1));
        assert_eq!(p.g.column(1), -e(0));
        assert_eq!(p.g.column(2), e(3));
        assert!(classify(&p.g, 1e-12).member_of(GroupTag::Spin7));
    }

    #[test]
    fn slice_elements_decompose_to_themselves() {
        for th in [0.0, 0.25, 1.0, 2.5] {
            for pair in Pair::ALL {
                let a = one_param(pair.slice_kind(), th).matrix;
                let f = decompose(pair, &a, &tol()).unwrap();
                assert!((f.theta - th).abs() < 1e-9, "{pair} {th}: theta {}", f.theta);
                assert!(f.k.dist(&CMatrix::identity()) < 1e-8, "{pair} {th}");
                assert!(f.h.dist(&CMatrix::identity()) < 1e-8, "{pair} {th}");
            }
        }
    }

    #[test]
    fn factors_belong_to_their_groups() {
        for pair in Pair::ALL {
            for seed in 0..10 {
                let g = random_element(pair.group(), seed, 1.5).unwrap();
                let f = decompose(pair, &g, &tol()).unwrap();
                assert!(f.residual <= 1e-7);
                assert!(f.theta >= 0.0);
                let rk = classify(&f.k, 1e-8);
                assert!(rk.member_of(pair.compact_group()), "{pair} seed {seed}: k {rk:?}");
                let rh = classify(&f.h, 1e-8);
                assert!(rh.member_of(pair.subgroup()), "{pair} seed {seed}: h {rh:?}");
                assert!(reconstruct(&f).dist(&g) <= 1e-7);
            }
        }
    }

    #[test]
    fn large_theta_keeps_full_accuracy() {
        // seed 17 gives θ ≈ 7.7 and |g| ≈ 2.6e3 for G2(C) at scale 2.
        for pair in [Pair::R2, Pair::R1Prime] {
            for seed in 0..40 {
                let g = random_element(pair.group(), seed, 2.0).unwrap();
                let f = decompose(pair, &g, &tol()).unwrap();
                assert!(f.residual < 1e-10, "{pair} seed {seed}: {:e}", f.residual);
            }
        }
    }

    #[test]
    fn compact_inputs_have_zero_theta() {
        for (pair, group) in [(Pair::R2, GroupTag::G2), (Pair::R1Prime, GroupTag::Spin7), (Pair::R1, GroupTag::SO7)] {
            for seed in 0..5 {
                let g = random_element(group, seed, 2.0).unwrap();
                let f = decompose(pair, &g, &tol()).unwrap();
                assert!(f.theta < 1e-9, "{pair}: {}", f.theta);
                let rh = classify(&f.h, 1e-8);
                assert!(rh.member_of(pair.subgroup()));
            }
        }
    }

    #[test]
    fn negated_slice_parameter_reconstructs() {
        // k a_{-θ} h' with k' = k·w for a Weyl-type element flipping the slice.
        let g = random_element(GroupTag::G2C, 7, 1.0).unwrap();
        let f = decompose_r2(&g, &tol()).unwrap();
        let nf = sphere_normal_form(&g.column(1), SphereMode::Imaginary7, 1e-9).unwrap();
        let k_neg = g2_frame(&nf.x_hat, &-nf.y_hat, 1e-9).unwrap();
        let a_neg = one_param(OneParamKind::A1, -f.theta).matrix;
        let h_neg = (k_neg * a_neg).transpose() * g;
        let alt = KAHFactors { pair: Pair::R2, theta: -f.theta, k: k_neg, h: h_neg, residual: 0.0 };
        assert!(reconstruct(&alt).dist(&g) < 1e-9);
        assert!(classify(&h_neg, 1e-8).member_of(GroupTag::SL3C));
    }

    #[test]
    fn rejects_wrong_group() {
        let a = one_param(OneParamKind::A0Tilde, 1.0).matrix;
        assert!(matches!(decompose_r2(&a, &tol()), Err(Error::Precondition(_))));
        assert!(matches!(decompose_r1(&a, &tol()), Err(Error::Precondition(_))));
    }

    #[test]
    fn identity_factors() {
        let f =
            KAHFactors { pair: Pair::R2, theta: 0.0, k: CMatrix::identity(), h: CMatrix::identity(), residual: 0.0 };
        assert_eq!(reconstruct(&f), CMatrix::identity());
    }
}
