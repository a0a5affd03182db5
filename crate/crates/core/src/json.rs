//! JSON forms of matrices and octonions.
//!
//! A matrix is `{"rows": [[[re, im], ...8], ...8]}` and an octonion is an
//! array of 8 `[re, im]` pairs. Floats use serde_json's shortest
//! round-trip representation, so parsing what was printed gives back the
//! same bits.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use num_complex::Complex64;

use crate::cayley::Octonion;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

fn pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

fn unpair(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

#[derive(Serialize, Deserialize)]
struct RowsRepr {
    rows: Vec<Vec<[f64; 2]>>,
}

impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = self.rows().iter().map(|r| r.iter().map(|&c| pair(c)).collect()).collect();
        RowsRepr { rows }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = RowsRepr::deserialize(d)?;
        if repr.rows.len() != 8 || repr.rows.iter().any(|r| r.len() != 8) {
            return Err(D::Error::custom("matrix must be 8x8"));
        }
        let mut rows = [[Complex64::new(0.0, 0.0); 8]; 8];
        for (dst, src) in rows.iter_mut().zip(&repr.rows) {
            for (d, &p) in dst.iter_mut().zip(src) {
                *d = unpair(p);
            }
        }
        CMatrix::from_rows(rows).map_err(D::Error::custom)
    }
}

impl Serialize for Octonion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.map(pair).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Octonion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coeffs = <[[f64; 2]; 8]>::deserialize(d)?;
        if coeffs.iter().flatten().any(|x| !x.is_finite()) {
            return Err(D::Error::custom(Error::NonFinite));
        }
        Ok(Octonion(coeffs.map(unpair)))
    }
}

pub fn matrix_from_json(text: &str) -> Result<CMatrix> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn matrix_to_json(m: &CMatrix) -> String {
    serde_json::to_string(m).expect("matrices always serialize")
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report types always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::{one_param, OneParamKind};

    #[test]
    fn identity_form() {
        let text = matrix_to_json(&CMatrix::identity());
        assert!(text.starts_with(r#"{"rows":[[[1.0,0.0],[0.0,0.0],"#));
        assert_eq!(matrix_from_json(&text).unwrap(), CMatrix::identity());
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let m = one_param(OneParamKind::A0Tilde, 0.7312345678901234).matrix.scale(Complex64::new(1.0 / 3.0, 1e-300));
        let back = matrix_from_json(&matrix_to_json(&m)).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(m.get(i, j).re.to_bits(), back.get(i, j).re.to_bits());
                assert_eq!(m.get(i, j).im.to_bits(), back.get(i, j).im.to_bits());
            }
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(matrix_from_json(r#"{"rows":[[[1,0]]]}"#), Err(Error::Parse(_))));
        assert!(matches!(matrix_from_json("[1,2]"), Err(Error::Parse(_))));
        assert!(matches!(matrix_from_json("not json"), Err(Error::Parse(_))));
    }

    #[test]
    fn octonion_form() {
        let o = Octonion::basis(3).scale(Complex64::new(0.5, -2.0));
        let text = serde_json::to_string(&o).unwrap();
        assert_eq!(text, "[[0.0,0.0],[0.0,0.0],[0.0,0.0],[0.5,-2.0],[0.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]]");
        assert_eq!(serde_json::from_str::<Octonion>(&text).unwrap(), o);
    }
}
