//! Points on the affine hyperplane `Σ x_i = 1`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::perm::Permutation;
use crate::scalar::{exact_to_f64, format_exact, format_f64, Exact, Scalar};

/// Tolerance on `|Σ x_i − 1|` for float-mode points.
pub const FLOAT_SUM_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum Coordinates {
    Exact(Vec<Exact>),
    Float(Vec<f64>),
}

/// A probability (or pseudoprobability) vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PointVector {
    coords: Coordinates,
}

impl PointVector {
    pub fn exact(coords: Vec<Exact>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("a point needs at least one coordinate".into()));
        }
        let sum: Exact = coords.iter().sum();
        if !sum.is_one() {
            return Err(Error::NotOnHyperplane { sum: format_exact(&sum) });
        }
        Ok(PointVector { coords: Coordinates::Exact(coords) })
    }

    pub fn float(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("a point needs at least one coordinate".into()));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite coordinate in {coords:?}")));
        }
        let sum: f64 = coords.iter().sum();
        if (sum - 1.0).abs() > FLOAT_SUM_TOLERANCE {
            return Err(Error::NotOnHyperplane { sum: format_f64(sum) });
        }
        Ok(PointVector { coords: Coordinates::Float(coords) })
    }

    /// The centroid `(1/d, ..., 1/d)` in exact mode.
    pub fn centroid(d: usize) -> Self {
        let c = Exact::new(1.into(), (d as i64).into());
        PointVector { coords: Coordinates::Exact(vec![c; d]) }
    }

    pub fn dim(&self) -> usize {
        match &self.coords {
            Coordinates::Exact(v) => v.len(),
            Coordinates::Float(v) => v.len(),
        }
    }

    pub fn coordinates(&self) -> &Coordinates {
        &self.coords
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coords, Coordinates::Exact(_))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match &self.coords {
            Coordinates::Exact(v) => v.iter().map(exact_to_f64).collect(),
            Coordinates::Float(v) => v.clone(),
        }
    }

    pub fn to_float(&self) -> PointVector {
        PointVector { coords: Coordinates::Float(self.to_f64()) }
    }

    pub fn coordinate(&self, i: usize) -> Scalar {
        match &self.coords {
            Coordinates::Exact(v) => Scalar::Exact(v[i].clone()),
            Coordinates::Float(v) => Scalar::Float(v[i]),
        }
    }

    /// All coordinates non-negative: a point of the simplex proper.
    pub fn is_proper(&self) -> bool {
        match &self.coords {
            Coordinates::Exact(v) => v.iter().all(|x| !x.is_negative()),
            Coordinates::Float(v) => v.iter().all(|&x| x >= 0.0),
        }
    }

    pub fn permuted(&self, p: &Permutation) -> Result<PointVector> {
        let coords = match &self.coords {
            Coordinates::Exact(v) => Coordinates::Exact(p.permute(v)?),
            Coordinates::Float(v) => Coordinates::Float(p.permute(v)?),
        };
        Ok(PointVector { coords })
    }

    /// `∏ x_i^{k_i}`.
    pub fn monomial(&self, k: &MultiIndex) -> Result<Scalar> {
        if k.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: k.dim() });
        }
        Ok(match &self.coords {
            Coordinates::Exact(v) => {
                let mut acc = Exact::one();
                for (x, &e) in v.iter().zip(k.exponents()) {
                    if e > 0 {
                        acc *= num_traits::pow(x.clone(), e as usize);
                    }
                }
                Scalar::Exact(acc)
            }
            Coordinates::Float(v) => Scalar::Float(v.iter().zip(k.exponents()).map(|(x, &e)| x.powi(e as i32)).product()),
        })
    }

    /// `Σ_i x_i^k`.
    pub fn power_sum(&self, k: u32) -> Scalar {
        match &self.coords {
            Coordinates::Exact(v) => Scalar::Exact(v.iter().map(|x| num_traits::pow(x.clone(), k as usize)).fold(Exact::zero(), |a, b| a + b)),
            Coordinates::Float(v) => Scalar::Float(v.iter().map(|x| x.powi(k as i32)).sum()),
        }
    }

    /// Equality up to `tol` (relative to magnitude, absolute near zero).
    pub fn approx_eq(&self, other: &PointVector, tol: f64) -> bool {
        match (&self.coords, &other.coords) {
            (Coordinates::Exact(a), Coordinates::Exact(b)) => a == b,
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0))
            }
        }
    }

    pub fn render(&self) -> Vec<String> {
        match &self.coords {
            Coordinates::Exact(v) => v.iter().map(format_exact).collect(),
            Coordinates::Float(v) => v.iter().map(|&x| format_f64(x)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::exact;

    #[test]
    fn exact_points_must_sum_to_one() {
        assert!(PointVector::exact(vec![exact(1, 2), exact(1, 3), exact(1, 6)]).is_ok());
        assert!(matches!(
            PointVector::exact(vec![exact(1, 2), exact(1, 3), exact(1, 5)]),
            Err(Error::NotOnHyperplane { .. })
        ));
    }

    #[test]
    fn float_points_tolerate_rounding() {
        assert!(PointVector::float(vec![0.1, 0.2, 0.7]).is_ok());
        assert!(PointVector::float(vec![0.1, 0.2, 0.7 + 1e-9]).is_err());
        assert!(PointVector::float(vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn properness() {
        assert!(PointVector::centroid(3).is_proper());
        let p = PointVector::exact(vec![exact(3, 2), exact(-1, 2)]).unwrap();
        assert!(!p.is_proper());
    }

    #[test]
    fn permutation_preserves_exact_sum() {
        let p = PointVector::exact(vec![exact(1, 2), exact(1, 3), exact(1, 6)]).unwrap();
        let q = p.permuted(&Permutation::from_one_based(&[3, 1, 2]).unwrap()).unwrap();
        assert_eq!(q.render(), ["1/6", "1/2", "1/3"]);
        assert!(PointVector::exact(match q.coordinates() {
            Coordinates::Exact(v) => v.clone(),
            _ => unreachable!(),
        })
        .is_ok());
    }

    #[test]
    fn monomials_and_power_sums() {
        let c = PointVector::centroid(3);
        assert_eq!(c.monomial(&MultiIndex::new(vec![2, 0, 0])).unwrap(), Scalar::Exact(exact(1, 9)));
        assert_eq!(c.power_sum(2), Scalar::Exact(exact(1, 3)));
        assert!(c.monomial(&MultiIndex::new(vec![1, 0])).is_err());
    }
}
