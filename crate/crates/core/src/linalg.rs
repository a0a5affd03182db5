//! Dense complex 8x8 numerics.
//!
//! [`CMatrix`] acts on octonion coefficient vectors by the column
//! convention `(g x)_i = sum_j g[i][j] x_j`. Larger rectangular systems
//! (the triality constraints, Gram systems) go through [`nullspace`] and
//! [`real_nullspace`], which sit on nalgebra's SVD.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{ComplexField, DMatrix, DVector, SMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::cayley::Octonion;
use crate::error::{Error, Result};

pub type Mat8 = SMatrix<Complex64, 8, 8>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Default relative threshold for rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Largest Frobenius norm accepted by [`expm`].
pub const EXPM_MAX_NORM: f64 = 50.0;

#[derive(Clone, Copy, PartialEq)]
pub struct CMatrix(Mat8);

impl CMatrix {
    pub fn identity() -> Self {
        CMatrix(Mat8::identity())
    }

    pub fn zero() -> Self {
        CMatrix(Mat8::zeros())
    }

    pub fn from_fn(f: impl FnMut(usize, usize) -> Complex64) -> Self {
        CMatrix(Mat8::from_fn(f))
    }

    /// Builds from row arrays, rejecting NaN/Inf.
    pub fn from_rows(rows: [[Complex64; 8]; 8]) -> Result<Self> {
        let m = CMatrix::from_fn(|i, j| rows[i][j]);
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn from_real(f: impl Fn(usize, usize) -> f64) -> Self {
        CMatrix::from_fn(|i, j| Complex64::new(f(i, j), 0.0))
    }

    pub fn diag(d: [Complex64; 8]) -> Self {
        CMatrix::from_fn(|i, j| if i == j { d[i] } else { ZERO })
    }

    /// Matrix whose `j`-th column holds the coefficients of `cols[j]`.
    pub fn from_columns(cols: &[Octonion; 8]) -> Self {
        CMatrix::from_fn(|i, j| cols[j].0[i])
    }

    pub fn from_inner(m: Mat8) -> Self {
        CMatrix(m)
    }

    pub fn inner(&self) -> &Mat8 {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.0[(i, j)] = v;
    }

    pub fn rows(&self) -> [[Complex64; 8]; 8] {
        let mut out = [[ZERO; 8]; 8];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.0[(i, j)];
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Octonion {
        let mut c = [ZERO; 8];
        for (i, v) in c.iter_mut().enumerate() {
            *v = self.0[(i, j)];
        }
        Octonion(c)
    }

    pub fn apply(&self, x: &Octonion) -> Octonion {
        mat_apply(self, x)
    }

    pub fn transpose(&self) -> Self {
        CMatrix(self.0.transpose())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        CMatrix(self.0.map(|c| c.conj()))
    }

    pub fn adjoint(&self) -> Self {
        CMatrix(self.0.adjoint())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMatrix(self.0 * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        CMatrix(self.0.map(|c| c * s))
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn determinant(&self) -> Complex64 {
        self.0.determinant()
    }

    pub fn inverse(&self) -> Option<Self> {
        self.0.try_inverse().map(CMatrix)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        (0..8).map(|j| (0..8).map(|i| self.0[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn dist(&self, other: &CMatrix) -> f64 {
        (*self - *other).frobenius_norm()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|c| c.im == 0.0)
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &CMatrix) -> CMatrix {
        *self * *other - *other * *self
    }

    /// Column-major flattening into 64 coordinates.
    pub fn to_vec64(&self) -> DVector<Complex64> {
        DVector::from_iterator(64, self.0.iter().copied())
    }

    pub fn from_vec64(v: &[Complex64]) -> Self {
        assert_eq!(v.len(), 64, "expected 64 coordinates");
        CMatrix(Mat8::from_column_slice(v))
    }

    /// Embeds 2x2 blocks along the diagonal.
    pub fn block_diag2(blocks: [[[Complex64; 2]; 2]; 4]) -> Self {
        let mut m = CMatrix::zero();
        for (b, block) in blocks.iter().enumerate() {
            for r in 0..2 {
                for c in 0..2 {
                    m.set(2 * b + r, 2 * b + c, block[r][c]);
                }
            }
        }
        m
    }

    /// Embeds two 4x4 blocks along the diagonal.
    pub fn block_diag4(blocks: [[[Complex64; 4]; 4]; 2]) -> Self {
        let mut m = CMatrix::zero();
        for (b, block) in blocks.iter().enumerate() {
            for r in 0..4 {
                for c in 0..4 {
                    m.set(4 * b + r, 4 * b + c, block[r][c]);
                }
            }
        }
        m
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<(f64, f64)>> =
            (0..8).map(|i| (0..8).map(|j| (self.get(i, j).re, self.get(i, j).im)).collect()).collect();
        f.debug_struct("CMatrix").field("rows", &rows).finish()
    }
}

impl Mul for CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: CMatrix) -> CMatrix {
        CMatrix(self.0 * rhs.0)
    }
}

impl Add for CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: CMatrix) -> CMatrix {
        CMatrix(self.0 + rhs.0)
    }
}

impl Sub for CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: CMatrix) -> CMatrix {
        CMatrix(self.0 - rhs.0)
    }
}

impl Neg for CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        CMatrix(-self.0)
    }
}

pub fn mat_apply(g: &CMatrix, x: &Octonion) -> Octonion {
    let mut out = [ZERO; 8];
    for (i, v) in out.iter_mut().enumerate() {
        for j in 0..8 {
            *v += g.0[(i, j)] * x.0[j];
        }
    }
    Octonion(out)
}

/// Matrix of `y -> a*y`.
pub fn left_mul_matrix(a: &Octonion) -> CMatrix {
    let cols: [Octonion; 8] = std::array::from_fn(|j| *a * Octonion::basis(j));
    CMatrix::from_columns(&cols)
}

// Padé [13/13] coefficients and the scaling threshold for the 1-norm
// (Higham, "The scaling and squaring method for the matrix exponential
// revisited", 2005).
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential by scaling and squaring around a Padé [13/13] core.
pub fn expm(x: &CMatrix) -> Result<CMatrix> {
    if !x.is_finite() {
        return Err(Error::NonFinite);
    }
    let norm = x.frobenius_norm();
    if norm > EXPM_MAX_NORM {
        return Err(Error::ExpmOverflow { norm, limit: EXPM_MAX_NORM });
    }
    if norm == 0.0 {
        return Ok(CMatrix::identity());
    }
    let one_norm = x.one_norm();
    let squarings = if one_norm > THETA13 { (one_norm / THETA13).log2().ceil() as i32 } else { 0 };
    let a = x.0 * Complex64::new(0.5f64.powi(squarings), 0.0);
    let id = Mat8::identity();
    let a2 = a * a;
    let a4 = a2 * a2;
    let a6 = a4 * a2;
    let b = |k: usize| Complex64::new(PADE13[k], 0.0);

    let u_inner = a6 * (a6 * b(13) + a4 * b(11) + a2 * b(9)) + a6 * b(7) + a4 * b(5) + a2 * b(3) + id * b(1);
    let u = a * u_inner;
    let v = a6 * (a6 * b(12) + a4 * b(10) + a2 * b(8)) + a6 * b(6) + a4 * b(4) + a2 * b(2) + id * b(0);

    let p = v + u;
    let q = v - u;
    let mut r = q.lu().solve(&p).ok_or(Error::NonFinite)?;
    for _ in 0..squarings {
        r = r * r;
    }
    let out = CMatrix(r);
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::NonFinite)
    }
}

fn pad_rows<T: ComplexField>(a: &DMatrix<T>) -> DMatrix<T> {
    let (m, n) = a.shape();
    if m >= n {
        return a.clone();
    }
    let mut out = DMatrix::zeros(n, n);
    out.view_mut((0, 0), (m, n)).copy_from(a);
    out
}

/// Orthonormal basis of the right nullspace of `a`.
///
/// Singular values at or below `tol * sigma_max` count as zero. An all-zero
/// matrix has the whole space as nullspace.
pub fn nullspace(a: &DMatrix<Complex64>, tol: f64) -> Vec<DVector<Complex64>> {
    let n = a.ncols();
    let padded = pad_rows(a);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("SVD was asked for V^H");
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = tol * sigma_max;
    (0..n).filter(|&k| sigma_max == 0.0 || svd.singular_values[k] <= cutoff).map(|k| v_t.row(k).adjoint()).collect()
}

/// Real counterpart of [`nullspace`].
pub fn real_nullspace(a: &DMatrix<f64>, tol: f64) -> Vec<DVector<f64>> {
    let n = a.ncols();
    let padded = pad_rows(a);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("SVD was asked for V^T");
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = tol * sigma_max;
    (0..n).filter(|&k| sigma_max == 0.0 || svd.singular_values[k] <= cutoff).map(|k| v_t.row(k).transpose()).collect()
}

/// Numerical rank with a relative singular-value threshold.
pub fn real_rank(a: &DMatrix<f64>, tol: f64) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let sv = a.clone().singular_values();
    let sigma_max = sv.iter().copied().fold(0.0, f64::max);
    if sigma_max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * sigma_max).count()
}

/// Complex counterpart of [`real_rank`].
pub fn complex_rank(a: &DMatrix<Complex64>, tol: f64) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let sv = a.clone().singular_values();
    let sigma_max = sv.iter().copied().fold(0.0, f64::max);
    if sigma_max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * sigma_max).count()
}

/// Inertia of a real symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Signature {
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

/// Eigenvalue sign counts; `|lambda| <= tol * max|lambda|` counts as zero.
pub fn sym_signature(m: &DMatrix<f64>, tol: f64) -> Result<Signature> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::InvalidArgument(format!("matrix is {}x{}, not square", n, m.ncols())));
    }
    let scale = m.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let asymmetry = (m - m.transpose()).iter().map(|v| v.abs()).fold(0.0, f64::max);
    if asymmetry > tol * scale.max(1.0) {
        return Err(Error::NotSymmetric { asymmetry });
    }
    if n == 0 {
        return Ok(Signature { n_pos: 0, n_neg: 0, n_zero: 0 });
    }
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym).eigenvalues;
    let lmax = eig.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let cutoff = tol * lmax;
    let mut sig = Signature { n_pos: 0, n_neg: 0, n_zero: 0 };
    for &l in eig.iter() {
        if lmax == 0.0 || l.abs() <= cutoff {
            sig.n_zero += 1;
        } else if l > 0.0 {
            sig.n_pos += 1;
        } else {
            sig.n_neg += 1;
        }
    }
    Ok(sig)
}
