//! Octonion arithmetic over complex coefficients.
//!
//! The basis `e0, ..., e7` has `e0` as the unit and the imaginary units
//! multiply along seven quaternionic triples. An [`Octonion`] stores the
//! coefficient of `e_i` at index `i`; all products are bilinear extensions
//! of the fixed [`MultTable`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Oriented quaternionic triples `(i, j, k)` with `e_i e_j = e_k`.
///
/// Each triple also gives the cyclic products `e_j e_k = e_i`,
/// `e_k e_i = e_j`, and the reversed products pick up a minus sign.
pub const FANO_TRIPLES: [[usize; 3]; 7] = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 5, 7], [2, 6, 4], [3, 5, 6], [3, 4, 7]];

/// The generating relations `e_i e_j = e_k`, each with `e_j e_i = -e_k`.
pub const GENERATING_RELATIONS: [[usize; 3]; 7] = FANO_TRIPLES;

/// `e_i * e_j = sign * e_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Product {
    pub sign: i8,
    #[serde(rename = "e")]
    pub index: usize,
}

impl Product {
    const fn new(sign: i8, index: usize) -> Self {
        Product { sign, index }
    }
}

/// Full 8x8 table of basis products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultTable {
    entries: [[Product; 8]; 8],
}

impl MultTable {
    pub fn entry(&self, i: usize, j: usize) -> Product {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[[Product; 8]; 8] {
        &self.entries
    }

    /// Rebuilds a table from raw entries, checking every structural invariant.
    pub fn from_entries(entries: [[Product; 8]; 8]) -> Result<Self> {
        let table = MultTable { entries };
        table.validate()?;
        Ok(table)
    }

    fn validate(&self) -> Result<()> {
        for i in 0..8 {
            for j in 0..8 {
                let p = self.entries[i][j];
                if p.index > 7 || (p.sign != 1 && p.sign != -1) {
                    return Err(Error::TableConflict { i, j });
                }
            }
        }
        for j in 0..8 {
            if self.entries[0][j] != Product::new(1, j) || self.entries[j][0] != Product::new(1, j) {
                return Err(Error::TableConflict { i: 0, j });
            }
        }
        for i in 1..8 {
            if self.entries[i][i] != Product::new(-1, 0) {
                return Err(Error::TableConflict { i, j: i });
            }
            for j in 1..8 {
                if i != j {
                    let (a, b) = (self.entries[i][j], self.entries[j][i]);
                    if a.index != b.index || a.sign != -b.sign {
                        return Err(Error::TableConflict { i, j });
                    }
                }
            }
        }
        for &[i, j, k] in GENERATING_RELATIONS.iter() {
            if self.entries[i][j] != Product::new(1, k) || self.entries[j][i] != Product::new(-1, k) {
                return Err(Error::TableConflict { i, j });
            }
        }
        Ok(())
    }
}

/// Completes the multiplication table from [`FANO_TRIPLES`].
///
/// Fails if two triples would assign different products to the same pair.
pub fn build_mult_table() -> Result<MultTable> {
    let mut slots: [[Option<Product>; 8]; 8] = [[None; 8]; 8];
    let mut set = |i: usize, j: usize, p: Product| -> Result<()> {
        match slots[i][j] {
            Some(q) if q != p => Err(Error::TableConflict { i, j }),
            _ => {
                slots[i][j] = Some(p);
                Ok(())
            }
        }
    };
    for j in 0..8 {
        set(0, j, Product::new(1, j))?;
        set(j, 0, Product::new(1, j))?;
    }
    for i in 1..8 {
        set(i, i, Product::new(-1, 0))?;
    }
    for &[a, b, c] in FANO_TRIPLES.iter() {
        for (p, q, r) in [(a, b, c), (b, c, a), (c, a, b)] {
            set(p, q, Product::new(1, r))?;
            set(q, p, Product::new(-1, r))?;
        }
    }
    let mut entries = [[Product::new(1, 0); 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            entries[i][j] = slots[i][j].ok_or(Error::TableConflict { i, j })?;
        }
    }
    MultTable::from_entries(entries)
}

/// The process-wide table, built once.
pub fn mult_table() -> &'static MultTable {
    static TABLE: OnceLock<MultTable> = OnceLock::new();
    TABLE.get_or_init(|| build_mult_table().expect("octonion multiplication table is inconsistent"))
}

/// Element of the complexified Cayley algebra.
#[derive(Clone, Copy, PartialEq)]
pub struct Octonion(pub [Complex64; 8]);

impl Octonion {
    pub const fn zero() -> Self {
        Octonion([Complex64::new(0.0, 0.0); 8])
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    /// Standard basis vector `e_i`.
    pub fn basis(i: usize) -> Self {
        let mut c = [Complex64::new(0.0, 0.0); 8];
        c[i] = Complex64::new(1.0, 0.0);
        Octonion(c)
    }

    pub fn from_real(x: [f64; 8]) -> Self {
        Octonion(x.map(|v| Complex64::new(v, 0.0)))
    }

    /// `x + i*y` for real coefficient vectors.
    pub fn from_parts(x: [f64; 8], y: [f64; 8]) -> Self {
        let mut c = [Complex64::new(0.0, 0.0); 8];
        for i in 0..8 {
            c[i] = Complex64::new(x[i], y[i]);
        }
        Octonion(c)
    }

    pub fn coeffs(&self) -> &[Complex64; 8] {
        &self.0
    }

    /// Component along `e0`.
    pub fn real_part(&self) -> Octonion {
        let mut out = Octonion::zero();
        out.0[0] = self.0[0];
        out
    }

    /// Components along `e1..e7`.
    pub fn imag_octonion_part(&self) -> Octonion {
        let mut out = *self;
        out.0[0] = Complex64::new(0.0, 0.0);
        out
    }

    /// Real parts of the complex coefficients.
    pub fn re(&self) -> [f64; 8] {
        self.0.map(|c| c.re)
    }

    /// Imaginary parts of the complex coefficients.
    pub fn im(&self) -> [f64; 8] {
        self.0.map(|c| c.im)
    }

    pub fn conj(&self) -> Octonion {
        oct_conj(self)
    }

    pub fn form(&self, other: &Octonion) -> Complex64 {
        bilinear_form(self, other)
    }

    pub fn scale(&self, s: Complex64) -> Octonion {
        Octonion(self.0.map(|c| c * s))
    }

    /// Euclidean length of the coefficient vector in C^8 (Hermitian).
    pub fn magnitude(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|c| c.im == 0.0)
    }
}

impl fmt::Debug for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter().map(|c| (c.re, c.im))).finish()
    }
}

impl Default for Octonion {
    fn default() -> Self {
        Octonion::zero()
    }
}

/// Bilinear product through the multiplication table. No normalization.
pub fn oct_mul(a: &Octonion, b: &Octonion) -> Octonion {
    let table = mult_table();
    let mut out = [Complex64::new(0.0, 0.0); 8];
    for i in 0..8 {
        if a.0[i] == Complex64::new(0.0, 0.0) {
            continue;
        }
        for j in 0..8 {
            let p = table.entries[i][j];
            let term = a.0[i] * b.0[j];
            if p.sign > 0 {
                out[p.index] += term;
            } else {
                out[p.index] -= term;
            }
        }
    }
    Octonion(out)
}

/// Complex-symmetric form `sum a_i b_i`; not Hermitian.
pub fn bilinear_form(a: &Octonion, b: &Octonion) -> Complex64 {
    a.0.iter().zip(b.0.iter()).map(|(x, y)| x * y).sum()
}

/// Negates the imaginary octonion part.
pub fn oct_conj(a: &Octonion) -> Octonion {
    let mut out = a.0.map(|c| -c);
    out[0] = a.0[0];
    Octonion(out)
}

impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        oct_mul(&self, &rhs)
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, rhs: Octonion) -> Octonion {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(rhs.0.iter()) {
            *x += y;
        }
        Octonion(c)
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, rhs: Octonion) -> Octonion {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(rhs.0.iter()) {
            *x -= y;
        }
        Octonion(c)
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion(self.0.map(|c| -c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn table_examples() {
        let t = build_mult_table().unwrap();
        assert_eq!(t.entry(1, 2), Product::new(1, 3));
        assert_eq!(t.entry(0, 5), Product::new(1, 5));
        assert_eq!(t.entry(6, 2), Product::new(-1, 4));
        assert_eq!(t.entry(4, 4), Product::new(-1, 0));
    }

    #[test]
    fn generating_relations_hold_verbatim() {
        let t = mult_table();
        let rel = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 5, 7), (2, 6, 4), (3, 5, 6), (3, 4, 7)];
        for (i, j, k) in rel {
            assert_eq!(t.entry(i, j), Product::new(1, k));
            assert_eq!(t.entry(j, i), Product::new(-1, k));
        }
        assert_eq!(t.entry(0, 0), Product::new(1, 0));
        for i in 1..8 {
            assert_eq!(t.entry(i, i), Product::new(-1, 0));
        }
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let mut e = *mult_table().entries();
        e[2][5] = Product::new(-1, 7);
        e[5][2] = Product::new(1, 7);
        assert!(matches!(MultTable::from_entries(e), Err(Error::TableConflict { .. })));
    }

    #[test]
    fn products_of_basis_vectors() {
        let e = Octonion::basis;
        assert_eq!(e(2) * e(5), e(7));
        let x = Octonion::from_parts([0.3, -1.0, 2.0, 0.0, 0.5, 0.1, -0.2, 4.0], [1.0; 8]);
        assert_eq!(e(0) * x, x);
        assert_eq!(x * e(0), x);
    }

    #[test]
    fn complexified_zero_divisor() {
        let i = c(0.0, 1.0);
        let a = Octonion::basis(1) + Octonion::basis(2).scale(i);
        assert_eq!(a * a, Octonion::zero());
        assert_eq!(bilinear_form(&a, &a), c(0.0, 0.0));
        // The product with the conjugate direction is not zero: -2 e0 - 2i e3.
        let b = Octonion::basis(1) - Octonion::basis(2).scale(i);
        let expected = Octonion::basis(0).scale(c(-2.0, 0.0)) + Octonion::basis(3).scale(c(0.0, -2.0));
        assert_eq!(a * b, expected);
    }

    #[test]
    fn form_is_bilinear_not_hermitian() {
        for i in 0..8 {
            for j in 0..8 {
                let v = bilinear_form(&Octonion::basis(i), &Octonion::basis(j));
                assert_eq!(v, c(if i == j { 1.0 } else { 0.0 }, 0.0));
            }
        }
        let x = Octonion::basis(1).scale(c(1f64.cosh(), 0.0)) + Octonion::basis(2).scale(c(0.0, 1f64.sinh()));
        assert!((bilinear_form(&x, &x) - c(1.0, 0.0)).norm() < 1e-14);
        let y = Octonion::basis(4).scale(c(0.0, 1.0));
        assert_eq!(bilinear_form(&y, &y), c(-1.0, 0.0));
    }

    #[test]
    fn conjugation() {
        assert_eq!(oct_conj(&Octonion::basis(0)), Octonion::basis(0));
        assert_eq!(oct_conj(&Octonion::basis(3)), -Octonion::basis(3));
        let x = Octonion::basis(0).scale(c(2.0, 0.0)) + Octonion::basis(5).scale(c(3.0, 0.0));
        assert_eq!(x * x.conj(), Octonion::basis(0).scale(c(13.0, 0.0)));
    }

    #[test]
    fn real_imag_split_reconstructs() {
        let x = Octonion::from_parts([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0], [-1.0; 8]);
        assert_eq!(x.real_part() + x.imag_octonion_part(), x);
        assert_eq!(x.imag_octonion_part().0[0], c(0.0, 0.0));
    }
}
