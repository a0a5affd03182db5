//! One-parameter slice groups, explicit subalgebra bases, and the trace form.
//!
//! The three abelian groups are
//!
//! * `A1 = { t_θ }` in `G2(C)`, slice group for `(G2(C), SL(3,C))`;
//! * `Ã0 = { ã_θ }` in `Spin(7,C)`, slice group for `(Spin(7,C), G2(C))`;
//! * `A0 = { a_θ }` in `SO(7,C)`, slice group for `(SO(7,C), G2(C))`.
//!
//! All are built in closed form from 2x2 blocks
//! `d_θ = [[cosh θ, -i sinh θ], [i sinh θ, cosh θ]]` and the 4x4 blocks
//! `exp δ_(x,y)`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cayley::{mult_table, Octonion};
use crate::error::{Error, Result};
use crate::linalg::{complex_rank, nullspace, real_nullspace, real_rank, CMatrix, DEFAULT_RANK_TOL};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OneParamKind {
    A1,
    A0Tilde,
    A0,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OneParamElement {
    pub kind: OneParamKind,
    pub theta: f64,
    pub matrix: CMatrix,
    pub algebra_matrix: CMatrix,
}

/// `d_θ`.
pub fn d_block(theta: f64) -> [[Complex64; 2]; 2] {
    let (c, s) = (theta.cosh(), theta.sinh());
    [[Complex64::new(c, 0.0), Complex64::new(0.0, -s)], [Complex64::new(0.0, s), Complex64::new(c, 0.0)]]
}

/// `δ_θ`, the generator of `d_θ`.
pub fn delta_block(theta: f64) -> [[Complex64; 2]; 2] {
    [[ZERO, Complex64::new(0.0, -theta)], [Complex64::new(0.0, theta), ZERO]]
}

/// The 4x4 generator `δ_(x,y)`.
pub fn delta4(x: f64, y: f64) -> [[Complex64; 4]; 4] {
    let mut m = [[ZERO; 4]; 4];
    m[0][3] = Complex64::new(0.0, -x);
    m[3][0] = Complex64::new(0.0, x);
    m[1][2] = Complex64::new(0.0, -y);
    m[2][1] = Complex64::new(0.0, y);
    m
}

/// Closed form of `exp δ_(x,y)`.
pub fn exp_delta4(x: f64, y: f64) -> [[Complex64; 4]; 4] {
    let mut m = [[ZERO; 4]; 4];
    m[0][0] = Complex64::new(x.cosh(), 0.0);
    m[3][3] = Complex64::new(x.cosh(), 0.0);
    m[0][3] = Complex64::new(0.0, -x.sinh());
    m[3][0] = Complex64::new(0.0, x.sinh());
    m[1][1] = Complex64::new(y.cosh(), 0.0);
    m[2][2] = Complex64::new(y.cosh(), 0.0);
    m[1][2] = Complex64::new(0.0, -y.sinh());
    m[2][1] = Complex64::new(0.0, y.sinh());
    m
}

const ID2: [[Complex64; 2]; 2] = [[ONE, ZERO], [ZERO, ONE]];
const ZERO2: [[Complex64; 2]; 2] = [[ZERO; 2]; 2];

/// Closed-form element of the slice group `kind` at parameter `theta`.
pub fn one_param(kind: OneParamKind, theta: f64) -> OneParamElement {
    let (matrix, algebra_matrix) = match kind {
        OneParamKind::A1 => (
            CMatrix::block_diag4([exp_delta4(0.0, theta), exp_delta4(-theta / 2.0, -theta / 2.0)]),
            CMatrix::block_diag4([delta4(0.0, theta), delta4(-theta / 2.0, -theta / 2.0)]),
        ),
        OneParamKind::A0Tilde => {
            let d = d_block(-theta / 3.0);
            let a = delta_block(-theta / 3.0);
            (CMatrix::block_diag2([d_block(theta), d, d, d]), CMatrix::block_diag2([delta_block(theta), a, a, a]))
        }
        OneParamKind::A0 => {
            let d = d_block(theta);
            let a = delta_block(theta);
            (CMatrix::block_diag2([ID2, d, d, d]), CMatrix::block_diag2([ZERO2, a, a, a]))
        }
    };
    OneParamElement { kind, theta, matrix, algebra_matrix }
}

/// The slice element as four 2x2 blocks: `(p, q, t)` means rows and
/// columns `p, q` carry `d_t`. Entries agree bitwise with [`one_param`].
pub fn slice_blocks(kind: OneParamKind, theta: f64) -> [(usize, usize, f64); 4] {
    match kind {
        OneParamKind::A1 => [(0, 3, 0.0), (1, 2, theta), (4, 7, -theta / 2.0), (5, 6, -theta / 2.0)],
        OneParamKind::A0Tilde => [(0, 1, theta), (2, 3, -theta / 3.0), (4, 5, -theta / 3.0), (6, 7, -theta / 3.0)],
        OneParamKind::A0 => [(0, 1, 0.0), (2, 3, theta), (4, 5, theta), (6, 7, theta)],
    }
}

/// `X_ij = E_ij - E_ji`.
pub fn x_ij(i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zero();
    m.set(i, j, ONE);
    m.set(j, i, -ONE);
    m
}

fn combo(terms: &[(f64, usize, usize)]) -> CMatrix {
    terms.iter().fold(CMatrix::zero(), |acc, &(c, i, j)| acc + x_ij(i, j).scale_real(c))
}

/// The listed basis of `sl(3,C) = { X in g2(C) : X e1 = 0 }`.
pub fn sl3_elements() -> Vec<CMatrix> {
    vec![
        combo(&[(-1.0, 2, 3), (1.0, 4, 5)]),
        combo(&[(-1.0, 4, 5), (1.0, 6, 7)]),
        combo(&[(1.0, 2, 4), (1.0, 3, 5)]),
        combo(&[(-1.0, 2, 5), (1.0, 3, 4)]),
        combo(&[(1.0, 2, 6), (1.0, 3, 7)]),
        combo(&[(-1.0, 2, 7), (1.0, 3, 6)]),
        combo(&[(1.0, 4, 6), (1.0, 5, 7)]),
        combo(&[(-1.0, 4, 7), (1.0, 5, 6)]),
    ]
}

/// The listed basis of the trace-form complement of `sl(3,C)` in `g2(C)`.
pub fn q_elements() -> Vec<CMatrix> {
    vec![
        combo(&[(2.0, 1, 2), (-1.0, 4, 7), (-1.0, 5, 6)]),
        combo(&[(2.0, 1, 3), (-1.0, 4, 6), (1.0, 5, 7)]),
        combo(&[(2.0, 1, 4), (1.0, 2, 7), (1.0, 3, 6)]),
        combo(&[(2.0, 1, 5), (1.0, 2, 6), (-1.0, 3, 7)]),
        combo(&[(2.0, 1, 6), (-1.0, 2, 5), (-1.0, 3, 4)]),
        combo(&[(2.0, 1, 7), (-1.0, 2, 4), (1.0, 3, 5)]),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraTag {
    Sl3C,
    QG2,
    G2C,
    Spin7C,
    So7C,
    So8C,
    Su3,
    G2Compact,
    Spin7Compact,
    So7Compact,
    So8Compact,
}

impl AlgebraTag {
    pub const ALL: [AlgebraTag; 11] = [
        AlgebraTag::Sl3C,
        AlgebraTag::QG2,
        AlgebraTag::G2C,
        AlgebraTag::Spin7C,
        AlgebraTag::So7C,
        AlgebraTag::So8C,
        AlgebraTag::Su3,
        AlgebraTag::G2Compact,
        AlgebraTag::Spin7Compact,
        AlgebraTag::So7Compact,
        AlgebraTag::So8Compact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgebraTag::Sl3C => "sl3c",
            AlgebraTag::QG2 => "qg2",
            AlgebraTag::G2C => "g2c",
            AlgebraTag::Spin7C => "spin7c",
            AlgebraTag::So7C => "so7c",
            AlgebraTag::So8C => "so8c",
            AlgebraTag::Su3 => "su3",
            AlgebraTag::G2Compact => "g2",
            AlgebraTag::Spin7Compact => "spin7",
            AlgebraTag::So7Compact => "so7",
            AlgebraTag::So8Compact => "so8",
        }
    }

    /// Compact real form of a complex algebra tag.
    pub fn compact_form(self) -> Option<AlgebraTag> {
        match self {
            AlgebraTag::Sl3C => Some(AlgebraTag::Su3),
            AlgebraTag::G2C => Some(AlgebraTag::G2Compact),
            AlgebraTag::Spin7C => Some(AlgebraTag::Spin7Compact),
            AlgebraTag::So7C => Some(AlgebraTag::So7Compact),
            AlgebraTag::So8C => Some(AlgebraTag::So8Compact),
            _ => None,
        }
    }

    fn index(self) -> usize {
        AlgebraTag::ALL.iter().position(|&t| t == self).expect("tag listed in ALL")
    }
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgebraTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        AlgebraTag::ALL.iter().copied().find(|t| t.name() == lower).ok_or_else(|| Error::UnknownTag(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpanField {
    Real,
    Complex,
}

/// Where a basis came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Named(AlgebraTag),
    Complement,
    SigmaFixed(AlgebraTag),
}

#[derive(Clone, Debug)]
pub struct SubalgebraBasis {
    pub tag: BasisKind,
    pub elements: Vec<CMatrix>,
    pub span_field: SpanField,
}

impl SubalgebraBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// 64 x n matrix whose columns are the flattened elements.
    pub fn coordinate_matrix(&self) -> DMatrix<Complex64> {
        let cols: Vec<DVector<Complex64>> = self.elements.iter().map(|e| e.to_vec64()).collect();
        if cols.is_empty() {
            return DMatrix::zeros(64, 0);
        }
        DMatrix::from_columns(&cols)
    }

    /// Dimension of the span over `span_field`.
    pub fn rank(&self) -> usize {
        match self.span_field {
            SpanField::Complex => complex_rank(&self.coordinate_matrix(), DEFAULT_RANK_TOL),
            SpanField::Real => real_rank(&realify(&self.coordinate_matrix()), DEFAULT_RANK_TOL),
        }
    }
}

/// Stacks real and imaginary parts: a complex 64 x n block becomes 128 x n real.
pub(crate) fn realify(m: &DMatrix<Complex64>) -> DMatrix<f64> {
    let (r, c) = m.shape();
    DMatrix::from_fn(2 * r, c, |i, j| if i < r { m[(i, j)].re } else { m[(i - r, j)].im })
}

/// Reduced row echelon form of the span of `vectors`, one vector per pivot.
///
/// The result depends only on the span, not on the spanning set, which
/// makes nullspace-derived bases reproducible.
pub(crate) fn canonical_span(vectors: &[DVector<f64>], tol: f64) -> Vec<DVector<f64>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let n = vectors[0].len();
    let mut rows: Vec<DVector<f64>> = vectors.to_vec();
    let scale = rows.iter().map(|v| v.amax()).fold(0.0, f64::max);
    let mut out = Vec::new();
    let mut col = 0;
    while col < n && !rows.is_empty() {
        let (best, val) =
            rows.iter()
                .enumerate()
                .map(|(k, r)| (k, r[col].abs()))
                .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val <= tol * scale {
            col += 1;
            continue;
        }
        let pivot = rows.swap_remove(best);
        let pivot = &pivot / pivot[col];
        for r in rows.iter_mut() {
            let f = r[col];
            *r -= &pivot * f;
        }
        for o in out.iter_mut() {
            let o: &mut DVector<f64> = o;
            let f = o[col];
            *o -= &pivot * f;
        }
        out.push(pivot);
        col += 1;
    }
    for v in out.iter_mut() {
        v.apply(|x| {
            if x.abs() <= 1e-14 {
                *x = 0.0
            }
        });
    }
    out
}

fn x_real_vec(m: &CMatrix) -> DVector<f64> {
    DVector::from_iterator(64, m.inner().iter().map(|c| c.re))
}

fn from_real_vec(v: &DVector<f64>) -> CMatrix {
    CMatrix::from_fn(|i, j| Complex64::new(v[j * 8 + i], 0.0))
}

/// Linear constraints on `(X, X0)` (128 real unknowns, `X` first, both
/// column-major) expressing `(X0 x)y + x(Xy) = X(xy)`, antisymmetry of both,
/// and `X0 e0 = 0`.
fn spin7_algebra_system() -> DMatrix<f64> {
    let table = mult_table();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let xi = |r: usize, c: usize| c * 8 + r;
    let x0i = |r: usize, c: usize| 64 + c * 8 + r;
    for i in 0..8 {
        for j in 0..8 {
            // component k of (X0 e_i) e_j + e_i (X e_j) - X(e_i e_j)
            let mut block = vec![vec![0.0; 128]; 8];
            for r in 0..8 {
                let p = table.entry(r, j);
                block[p.index][x0i(r, i)] += p.sign as f64;
                let q = table.entry(i, r);
                block[q.index][xi(r, j)] += q.sign as f64;
            }
            let p = table.entry(i, j);
            for r in 0..8 {
                block[r][xi(r, p.index)] -= p.sign as f64;
            }
            rows.extend(block);
        }
    }
    for r in 0..8 {
        for c in r..8 {
            let mut row = vec![0.0; 128];
            row[xi(r, c)] += 1.0;
            row[xi(c, r)] += 1.0;
            rows.push(row);
            let mut row = vec![0.0; 128];
            row[x0i(r, c)] += 1.0;
            row[x0i(c, r)] += 1.0;
            rows.push(row);
        }
        let mut row = vec![0.0; 128];
        row[x0i(r, 0)] = 1.0;
        rows.push(row);
    }
    DMatrix::from_fn(rows.len(), 128, |i, j| rows[i][j])
}

fn spin7_elements() -> Vec<CMatrix> {
    let ns = real_nullspace(&spin7_algebra_system(), DEFAULT_RANK_TOL);
    let xs: Vec<DVector<f64>> = ns.iter().map(|v| v.rows(0, 64).into_owned()).collect();
    canonical_span(&xs, DEFAULT_RANK_TOL).iter().map(from_real_vec).collect()
}

fn so_elements(lowest: usize) -> Vec<CMatrix> {
    let mut out = Vec::new();
    for i in lowest..8 {
        for j in i + 1..8 {
            out.push(x_ij(i, j));
        }
    }
    out
}

/// Compact real form: real and imaginary parts of each element, keeping the
/// antihermitian ones and discarding dependent candidates.
pub fn compact_real_form(elements: &[CMatrix]) -> Vec<CMatrix> {
    let mut kept: Vec<CMatrix> = Vec::new();
    let mut kept_vecs: Vec<DVector<f64>> = Vec::new();
    for b in elements {
        let re = CMatrix::from_fn(|i, j| Complex64::new(b.get(i, j).re, 0.0));
        let im = CMatrix::from_fn(|i, j| Complex64::new(b.get(i, j).im, 0.0));
        for cand in [re, im] {
            if cand.frobenius_norm() == 0.0 || (cand + cand.adjoint()).frobenius_norm() > 1e-12 * cand.frobenius_norm()
            {
                continue;
            }
            let v = x_real_vec(&cand);
            let mut trial = kept_vecs.clone();
            trial.push(v.clone());
            if real_rank(&DMatrix::from_columns(&trial), DEFAULT_RANK_TOL) == trial.len() {
                kept_vecs.push(v);
                kept.push(cand);
            }
        }
    }
    kept
}

fn build_basis(tag: AlgebraTag) -> SubalgebraBasis {
    let complex = |elements| SubalgebraBasis { tag: BasisKind::Named(tag), elements, span_field: SpanField::Complex };
    match tag {
        AlgebraTag::Sl3C => complex(sl3_elements()),
        AlgebraTag::QG2 => complex(q_elements()),
        AlgebraTag::G2C => complex(sl3_elements().into_iter().chain(q_elements()).collect()),
        AlgebraTag::Spin7C => complex(spin7_elements()),
        AlgebraTag::So7C => complex(so_elements(1)),
        AlgebraTag::So8C => complex(so_elements(0)),
        AlgebraTag::Su3
        | AlgebraTag::G2Compact
        | AlgebraTag::Spin7Compact
        | AlgebraTag::So7Compact
        | AlgebraTag::So8Compact => {
            let parent = match tag {
                AlgebraTag::Su3 => AlgebraTag::Sl3C,
                AlgebraTag::G2Compact => AlgebraTag::G2C,
                AlgebraTag::Spin7Compact => AlgebraTag::Spin7C,
                AlgebraTag::So7Compact => AlgebraTag::So7C,
                _ => AlgebraTag::So8C,
            };
            SubalgebraBasis {
                tag: BasisKind::Named(tag),
                elements: compact_real_form(&basis(parent).elements),
                span_field: SpanField::Real,
            }
        }
    }
}

/// Cached basis for `tag`.
pub fn basis(tag: AlgebraTag) -> &'static SubalgebraBasis {
    static CACHE: [OnceLock<SubalgebraBasis>; 11] = [const { OnceLock::new() }; 11];
    CACHE[tag.index()].get_or_init(|| build_basis(tag))
}

/// `tr(XY)`, proportional to the Killing form on each simple algebra here.
pub fn trace_form(x: &CMatrix, y: &CMatrix) -> Complex64 {
    (*x * *y).trace()
}

/// Residual of the derivation law `X(xy) = (Xx)y + x(Xy)` on basis pairs.
pub fn derivation_residual(x: &CMatrix) -> f64 {
    let table = mult_table();
    let mut worst = 0.0f64;
    for i in 0..8 {
        for j in 0..8 {
            let p = table.entry(i, j);
            let lhs = x.column(p.index).scale(Complex64::new(p.sign as f64, 0.0));
            let rhs = x.column(i) * Octonion::basis(j) + Octonion::basis(i) * x.column(j);
            worst = worst.max((lhs - rhs).magnitude());
        }
    }
    worst
}

/// Residual of the linearized triality law, with `X0 x = Xx - x(X e0)`.
pub fn spin7_algebra_residual(x: &CMatrix) -> f64 {
    let table = mult_table();
    let xe0 = x.column(0);
    let x0_cols: [Octonion; 8] = std::array::from_fn(|i| x.column(i) - Octonion::basis(i) * xe0);
    let x0 = CMatrix::from_columns(&x0_cols);
    let mut worst = (*x + x.transpose()).frobenius_norm();
    worst = worst.max((x0 + x0.transpose()).frobenius_norm());
    for i in 0..8 {
        for j in 0..8 {
            let p = table.entry(i, j);
            let lhs = x0_cols[i] * Octonion::basis(j) + Octonion::basis(i) * x.column(j);
            let rhs = x.column(p.index).scale(Complex64::new(p.sign as f64, 0.0));
            worst = worst.max((lhs - rhs).magnitude());
        }
    }
    worst
}

/// Residual of `X^T = -X` and `X e0 = 0`.
pub fn so7_algebra_residual(x: &CMatrix) -> f64 {
    (*x + x.transpose()).frobenius_norm().max(x.column(0).magnitude())
}

/// Membership residual of `x` in the algebra named by `tag`.
pub fn algebra_residual(tag: AlgebraTag, x: &CMatrix) -> f64 {
    let antiherm = |m: &CMatrix| (*m + m.adjoint()).frobenius_norm();
    match tag {
        AlgebraTag::G2C | AlgebraTag::QG2 => derivation_residual(x),
        AlgebraTag::Sl3C => derivation_residual(x).max(x.column(1).magnitude()),
        AlgebraTag::Spin7C => spin7_algebra_residual(x),
        AlgebraTag::So7C => so7_algebra_residual(x),
        AlgebraTag::So8C => (*x + x.transpose()).frobenius_norm(),
        AlgebraTag::Su3 => algebra_residual(AlgebraTag::Sl3C, x).max(antiherm(x)),
        AlgebraTag::G2Compact => derivation_residual(x).max(antiherm(x)),
        AlgebraTag::Spin7Compact => spin7_algebra_residual(x).max(antiherm(x)),
        AlgebraTag::So7Compact => so7_algebra_residual(x).max(antiherm(x)),
        AlgebraTag::So8Compact => (*x + x.transpose()).frobenius_norm().max(antiherm(x)),
    }
}

/// Basis of `{ X in span(ambient) : tr(XB) = 0 for all B in sub }`.
pub fn orthogonal_complement(ambient: &SubalgebraBasis, sub: &SubalgebraBasis) -> Result<SubalgebraBasis> {
    let n = ambient.len();
    let expected = n.checked_sub(sub.len()).ok_or_else(|| {
        Error::Precondition(format!("subalgebra of dimension {} exceeds ambient dimension {n}", sub.len()))
    })?;
    if sub.is_empty() {
        return Ok(SubalgebraBasis {
            tag: BasisKind::Complement,
            elements: ambient.elements.clone(),
            span_field: ambient.span_field,
        });
    }
    let gram = DMatrix::from_fn(sub.len(), n, |l, k| trace_form(&ambient.elements[k], &sub.elements[l]));
    let ns = nullspace(&gram, DEFAULT_RANK_TOL);
    if ns.len() != expected {
        return Err(Error::ComplementRank { got: ns.len(), expected });
    }
    let elements = ns
        .iter()
        .map(|c| ambient.elements.iter().zip(c.iter()).fold(CMatrix::zero(), |acc, (a, &w)| acc + a.scale(w)))
        .collect();
    Ok(SubalgebraBasis { tag: BasisKind::Complement, elements, span_field: SpanField::Complex })
}

/// Coordinates of `x` in `b` by least squares over the basis span field.
pub fn coordinates(b: &SubalgebraBasis, x: &CMatrix) -> Vec<Complex64> {
    let m = b.coordinate_matrix();
    let svd = m.svd(true, true);
    let sol = svd.solve(&x.to_vec64(), 1e-12).expect("SVD solve with both factors");
    sol.iter().copied().collect()
}

/// Killing form `tr(ad X ad Y)` computed from structure constants in `b`.
pub fn killing_form(b: &SubalgebraBasis, x: &CMatrix, y: &CMatrix) -> Complex64 {
    let n = b.len();
    let m = b.coordinate_matrix();
    let svd = m.svd(true, true);
    let ad = |z: &CMatrix| {
        let cols: Vec<DVector<Complex64>> = b
            .elements
            .iter()
            .map(|e| svd.solve(&z.commutator(e).to_vec64(), 1e-12).expect("SVD solve with both factors"))
            .collect();
        DMatrix::from_columns(&cols)
    };
    let (ax, ay) = (ad(x), ad(y));
    debug_assert_eq!(ax.nrows(), n);
    (ax * ay).trace()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slice_blocks_match_matrices() {
        for kind in [OneParamKind::A1, OneParamKind::A0Tilde, OneParamKind::A0] {
            for th in [-2.0, 0.3, 1.0, 7.7] {
                let m = one_param(kind, th).matrix;
                let mut rebuilt = CMatrix::zero();
                for (p, q, t) in slice_blocks(kind, th) {
                    let d = d_block(t);
                    rebuilt.set(p, p, d[0][0]);
                    rebuilt.set(p, q, d[0][1]);
                    rebuilt.set(q, p, d[1][0]);
                    rebuilt.set(q, q, d[1][1]);
                }
                assert_eq!(rebuilt, m, "{kind:?} {th}");
            }
        }
    }
    use crate::groups::{classify, triality_companion, GroupTag};
    use crate::linalg::expm;

    #[test]
    fn one_param_examples() {
        assert_eq!(one_param(OneParamKind::A1, 0.0).matrix, CMatrix::identity());
        let th = 0.8;
        let v = one_param(OneParamKind::A0Tilde, th).matrix.apply(&Octonion::basis(0));
        let expected = Octonion::basis(0).scale(Complex64::new(th.cosh(), 0.0))
            + Octonion::basis(1).scale(Complex64::new(0.0, th.sinh()));
        assert!((v - expected).magnitude() < 1e-15);
        let v = one_param(OneParamKind::A1, th).matrix.apply(&Octonion::basis(4));
        let expected = Octonion::basis(4).scale(Complex64::new((th / 2.0).cosh(), 0.0))
            - Octonion::basis(7).scale(Complex64::new(0.0, (th / 2.0).sinh()));
        assert!((v - expected).magnitude() < 1e-15);
    }

    #[test]
    fn a1_images_of_basis_vectors() {
        let th = 1.1;
        let t = one_param(OneParamKind::A1, th).matrix;
        let (c, s) = (th.cosh(), th.sinh());
        let (ch, sh) = ((th / 2.0).cosh(), (th / 2.0).sinh());
        let e = Octonion::basis;
        let r = |x: f64| Complex64::new(x, 0.0);
        let im = |x: f64| Complex64::new(0.0, x);
        let cases = [
            (1, e(1).scale(r(c)) + e(2).scale(im(s))),
            (2, e(1).scale(im(-s)) + e(2).scale(r(c))),
            (5, e(5).scale(r(ch)) + e(6).scale(im(-sh))),
            (6, e(5).scale(im(sh)) + e(6).scale(r(ch))),
            (7, e(4).scale(im(sh)) + e(7).scale(r(ch))),
            (0, e(0)),
            (3, e(3)),
        ];
        for (i, want) in cases {
            assert!((t.apply(&e(i)) - want).magnitude() < 1e-14, "e{i}");
        }
    }

    #[test]
    fn closed_forms_match_expm() {
        for kind in [OneParamKind::A1, OneParamKind::A0Tilde, OneParamKind::A0] {
            for th in [-3.0, -0.5, 0.0, 1.0, 3.0] {
                let el = one_param(kind, th);
                let e = expm(&el.algebra_matrix).unwrap();
                assert!(e.dist(&el.matrix) < 1e-12 * el.matrix.frobenius_norm(), "{kind:?} {th}");
            }
        }
    }

    #[test]
    fn group_law() {
        for kind in [OneParamKind::A1, OneParamKind::A0Tilde, OneParamKind::A0] {
            let a = one_param(kind, 0.7).matrix * one_param(kind, -1.9).matrix;
            assert!(a.dist(&one_param(kind, -1.2).matrix) < 1e-13);
        }
    }

    #[test]
    fn theta_antifixed_generators() {
        for kind in [OneParamKind::A1, OneParamKind::A0Tilde, OneParamKind::A0] {
            let x = one_param(kind, 1.0).algebra_matrix;
            assert_eq!(x.conj(), -x);
        }
    }

    #[test]
    fn tau_is_multiple_of_first_q_vector() {
        let th = 1.7;
        let tau = one_param(OneParamKind::A1, th).algebra_matrix;
        let q0 = q_elements()[0].scale(Complex64::new(0.0, -th / 2.0));
        assert!(tau.dist(&q0) < 1e-15);
    }

    #[test]
    fn slice_group_memberships() {
        for th in [-2.0, 0.4, 1.5] {
            let r = classify(&one_param(OneParamKind::A1, th).matrix, 1e-9);
            assert!(r.member_of(GroupTag::G2C));
            let p = triality_companion(&one_param(OneParamKind::A0Tilde, th).matrix, 1e-9).unwrap();
            assert!(p.g0.dist(&one_param(OneParamKind::A0, 2.0 * th / 3.0).matrix) < 1e-12);
            let r = classify(&one_param(OneParamKind::A0, th).matrix, 1e-9);
            assert!(r.member_of(GroupTag::SO7C));
        }
    }

    #[test]
    fn listed_bases() {
        assert_eq!(basis(AlgebraTag::Sl3C).elements[0], combo(&[(-1.0, 2, 3), (1.0, 4, 5)]));
        assert_eq!(basis(AlgebraTag::QG2).elements[0], combo(&[(2.0, 1, 2), (-1.0, 4, 7), (-1.0, 5, 6)]));
    }

    #[test]
    fn basis_cardinalities_and_membership() {
        let expected = [
            (AlgebraTag::Sl3C, 8),
            (AlgebraTag::QG2, 6),
            (AlgebraTag::G2C, 14),
            (AlgebraTag::Spin7C, 21),
            (AlgebraTag::So7C, 21),
            (AlgebraTag::So8C, 28),
            (AlgebraTag::Su3, 8),
            (AlgebraTag::G2Compact, 14),
            (AlgebraTag::Spin7Compact, 21),
            (AlgebraTag::So7Compact, 21),
            (AlgebraTag::So8Compact, 28),
        ];
        for (tag, n) in expected {
            let b = basis(tag);
            assert_eq!(b.len(), n, "{tag}");
            assert_eq!(b.rank(), n, "{tag}");
            for (k, e) in b.elements.iter().enumerate() {
                assert!(algebra_residual(tag, e) < 1e-12, "{tag}[{k}]: {}", algebra_residual(tag, e));
            }
        }
    }

    #[test]
    fn g2_sits_inside_spin7() {
        let spin = basis(AlgebraTag::Spin7C);
        for e in &basis(AlgebraTag::G2C).elements {
            assert!(spin7_algebra_residual(e) < 1e-12);
            let c = coordinates(spin, e);
            let back = spin.elements.iter().zip(c.iter()).fold(CMatrix::zero(), |acc, (b, &w)| acc + b.scale(w));
            assert!(back.dist(e) < 1e-12);
        }
    }

    #[test]
    fn trace_form_values() {
        let tau = one_param(OneParamKind::A1, 1.0).algebra_matrix;
        // Oracle: explicit sum of entry products.
        let mut oracle = ZERO;
        for i in 0..8 {
            for j in 0..8 {
                oracle += tau.get(i, j) * tau.get(j, i);
            }
        }
        assert!((trace_form(&tau, &tau) - oracle).norm() < 1e-15);
        assert!((oracle - Complex64::new(3.0, 0.0)).norm() < 1e-15);
        for b in &basis(AlgebraTag::Sl3C).elements {
            assert!(trace_form(&tau, b).norm() <= 1e-12);
        }
        let alpha = one_param(OneParamKind::A0Tilde, 1.0).algebra_matrix;
        for b in &basis(AlgebraTag::G2C).elements {
            assert!(trace_form(&alpha, b).norm() <= 1e-12);
        }
    }

    #[test]
    fn complements() {
        let q = orthogonal_complement(basis(AlgebraTag::G2C), basis(AlgebraTag::Sl3C)).unwrap();
        assert_eq!(q.len(), 6);
        let mut both = q.elements.clone();
        both.extend(basis(AlgebraTag::QG2).elements.iter().copied());
        let joint = SubalgebraBasis { tag: BasisKind::Complement, elements: both, span_field: SpanField::Complex };
        assert_eq!(joint.rank(), 6);

        let p = orthogonal_complement(basis(AlgebraTag::Spin7C), basis(AlgebraTag::G2C)).unwrap();
        assert_eq!(p.len(), 7);
        let alpha = one_param(OneParamKind::A0Tilde, 1.0).algebra_matrix;
        let mut with_alpha = p.elements.clone();
        with_alpha.push(alpha);
        let joint =
            SubalgebraBasis { tag: BasisKind::Complement, elements: with_alpha, span_field: SpanField::Complex };
        assert_eq!(joint.rank(), 7);

        let g2 = basis(AlgebraTag::G2C);
        assert!(orthogonal_complement(g2, g2).unwrap().is_empty());
    }

    #[test]
    fn complement_rejects_inconsistent_rank() {
        // alpha~ is trace-orthogonal to all of g2, so it removes no dimension.
        let alpha = one_param(OneParamKind::A0Tilde, 1.0).algebra_matrix;
        let sub = SubalgebraBasis { tag: BasisKind::Complement, elements: vec![alpha], span_field: SpanField::Complex };
        let err = orthogonal_complement(basis(AlgebraTag::G2C), &sub).unwrap_err();
        assert!(matches!(err, Error::ComplementRank { got: 14, expected: 13 }));
        let err = orthogonal_complement(basis(AlgebraTag::QG2), basis(AlgebraTag::G2C)).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn killing_form_is_proportional_to_trace_form() {
        let b = basis(AlgebraTag::G2C);
        let k00 = killing_form(b, &b.elements[0], &b.elements[0]);
        let t00 = trace_form(&b.elements[0], &b.elements[0]);
        let c = k00 / t00;
        for x in &b.elements {
            for y in &b.elements {
                let k = killing_form(b, x, y);
                let t = trace_form(x, y);
                assert!((k - c * t).norm() <= 1e-8 * k00.norm(), "{k} vs {}", c * t);
            }
        }
    }
}
