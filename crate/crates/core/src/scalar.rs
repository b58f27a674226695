//! Exact rationals and the dual exact/float scalar used throughout the crate.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational. Always reduced with a positive denominator.
pub type Exact = BigRational;

pub fn exact(numer: i64, denom: i64) -> Exact {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn exact_int(n: i64) -> Exact {
    BigRational::from_integer(BigInt::from(n))
}

pub fn checked_div(a: &Exact, b: &Exact) -> Result<Exact> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn exact_to_f64(x: &Exact) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Very large numerator/denominator: fall back to a ratio of floats.
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` into a reduced rational.
pub fn parse_exact(s: &str) -> Result<Exact> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let den = BigInt::from_str(den).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn format_exact(x: &Exact) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Fixed 17-significant-digit rendering used by CSV and text output.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A value that is either exact or an IEEE double.
///
/// Arithmetic between two exact values stays exact; anything touching a
/// float is carried out in floating point.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Exact),
    Float(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(Exact::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(Exact::one())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(x) => exact_to_f64(x),
            Scalar::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Exact> {
        match self {
            Scalar::Exact(x) => Some(x),
            Scalar::Float(_) => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Exact(x) => x.is_negative(),
            Scalar::Float(x) => *x < 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(x) => x.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(x) => Scalar::Exact(x.abs()),
            Scalar::Float(x) => Scalar::Float(x.abs()),
        }
    }

    pub fn powi(&self, k: u32) -> Scalar {
        match self {
            Scalar::Exact(x) => Scalar::Exact(num_traits::pow(x.clone(), k as usize)),
            Scalar::Float(x) => Scalar::Float(x.powi(k as i32)),
        }
    }

    /// Division by a positive integer count (used for averaging).
    pub fn div_count(&self, n: usize) -> Result<Scalar> {
        if n == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Exact(x) => Scalar::Exact(x / BigInt::from(n)),
            Scalar::Float(x) => Scalar::Float(x / n as f64),
        })
    }

    pub fn render(&self) -> String {
        match self {
            Scalar::Exact(x) => format_exact(x),
            Scalar::Float(x) => format_f64(*x),
        }
    }
}

impl From<Exact> for Scalar {
    fn from(x: Exact) -> Self {
        Scalar::Exact(x)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Float(x)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (a, b) => Scalar::Float(a.to_f64() $op b.to_f64()),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                &self $op &rhs
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
