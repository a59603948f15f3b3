//! JSON dump format: a matrix is an array of rows, each entry a `[re, im]`
//! pair of doubles; a vector is a flat array of `[re, im]` pairs.

use num_complex::Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::ComplexMatrix;
use super::vector::ComplexVector;
use crate::scalar::{lit, to_f64, Real};

fn pair<T: Real>(z: &Complex<T>) -> [f64; 2] {
    [to_f64(z.re), to_f64(z.im)]
}

fn unpair<T: Real>(p: [f64; 2]) -> Complex<T> {
    Complex::new(lit(p[0]), lit(p[1]))
}

impl<T: Real> Serialize for ComplexMatrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.rows()).map(|i| (0..self.cols()).map(|j| pair(&self[(i, j)])).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for ComplexMatrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(d)?;
        let rows: Vec<Vec<Complex<T>>> = rows.into_iter().map(|r| r.into_iter().map(unpair).collect()).collect();
        ComplexMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

impl<T: Real> Serialize for ComplexVector<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.iter().map(pair).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for ComplexVector<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let entries: Vec<[f64; 2]> = Vec::deserialize(d)?;
        ComplexVector::new(entries.into_iter().map(unpair).collect()).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn matrix_layout_is_rows_of_pairs() {
        let m = ComplexMatrix::<f64>::from_rows(&[vec![c(1.0, 0.5), c(0.0, -2.0)]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[[[1.0,0.5],[0.0,-2.0]]]");
        let back: ComplexMatrix<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<ComplexMatrix<f64>>("[[[1.0,0.0]],[]]").is_err());
    }
}
