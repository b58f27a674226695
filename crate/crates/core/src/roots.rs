//! Real roots of univariate polynomials by two independent routes.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{exact_to_f64, Exact};

/// Agreement required between the two root finders.
pub const ROUTE_AGREEMENT: f64 = 1e-10;

/// Polynomial with exact coefficients in ascending order of degree.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactPoly(pub Vec<Exact>);

impl ExactPoly {
    pub fn constant(c: Exact) -> Self {
        ExactPoly(vec![c]).trimmed()
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: Exact, c1: Exact) -> Self {
        ExactPoly(vec![c0, c1]).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[Exact] {
        &self.0
    }

    pub fn add(&self, other: &ExactPoly) -> ExactPoly {
        let n = self.0.len().max(other.0.len());
        let get = |p: &ExactPoly, i: usize| p.0.get(i).cloned().unwrap_or_else(Exact::zero);
        ExactPoly((0..n).map(|i| get(self, i) + get(other, i)).collect()).trimmed()
    }

    pub fn sub(&self, other: &ExactPoly) -> ExactPoly {
        self.add(&other.scale(&Exact::from_integer((-1).into())))
    }

    pub fn mul(&self, other: &ExactPoly) -> ExactPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return ExactPoly(Vec::new());
        }
        let mut out = vec![Exact::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPoly(out).trimmed()
    }

    pub fn scale(&self, c: &Exact) -> ExactPoly {
        ExactPoly(self.0.iter().map(|v| v * c).collect()).trimmed()
    }

    pub fn pow(&self, k: u32) -> ExactPoly {
        (0..k).fold(ExactPoly::constant(Exact::from_integer(1.into())), |acc, _| acc.mul(self))
    }

    /// Scaled to coprime integer coefficients with a positive leading term.
    pub fn primitive(&self) -> ExactPoly {
        if self.0.is_empty() {
            return self.clone();
        }
        let lcm = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * Exact::from_integer(lcm.clone())).to_integer()).collect();
        let mut gcd = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            gcd = -gcd;
        }
        ExactPoly(ints.into_iter().map(|c| Exact::from_integer(c / &gcd)).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(exact_to_f64).collect()
    }

    pub fn eval(&self, x: &Exact) -> Exact {
        self.0.iter().rev().fold(Exact::zero(), |acc, c| acc * x + c)
    }
}

/// Horner evaluation of ascending coefficients.
pub fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn eval_with_derivative(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

fn normalized(coeffs: &[f64]) -> Result<Vec<f64>> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|&v| v == 0.0) {
        c.pop();
    }
    if c.len() < 2 {
        return Err(Error::InvalidArgument("polynomial has no roots to find (degree < 1)".into()));
    }
    Ok(c)
}

/// Real eigenvalues of the companion matrix, ascending.
pub fn real_roots_companion(coeffs: &[f64]) -> Result<Vec<f64>> {
    let c = normalized(coeffs)?;
    let n = c.len() - 1;
    let lead = c[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    let scale = c.iter().map(|v| (v / lead).abs()).fold(1.0, f64::max);
    let mut roots: Vec<f64> = m
        .complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() <= 1e-7 * scale)
        .map(|z| polish(&c, z.re))
        .collect();
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

fn polish(c: &[f64], mut x: f64) -> f64 {
    for _ in 0..8 {
        let (p, dp) = eval_with_derivative(c, x);
        if dp == 0.0 {
            break;
        }
        let step = p / dp;
        x -= step;
        if step.abs() <= 1e-16 * x.abs().max(1.0) {
            break;
        }
    }
    x
}

/// Roots in `[lo, hi]` located by sign changes on a uniform grid, refined by
/// bisection and finished with Newton steps. Ascending.
pub fn real_roots_bracketed(coeffs: &[f64], lo: f64, hi: f64, samples: usize) -> Result<Vec<f64>> {
    let c = normalized(coeffs)?;
    if !(lo < hi) || samples < 2 {
        return Err(Error::InvalidArgument(format!("bad bracket [{lo}, {hi}] with {samples} samples")));
    }
    let step = (hi - lo) / samples as f64;
    let mut roots = Vec::new();
    let mut a = lo;
    let mut fa = eval(&c, a);
    for i in 1..=samples {
        let b = if i == samples { hi } else { lo + step * i as f64 };
        let fb = eval(&c, b);
        if fa == 0.0 {
            roots.push(a);
        } else if fa.signum() != fb.signum() && fb != 0.0 {
            roots.push(bisect(&c, a, b, fa));
        }
        a = b;
        fa = fb;
    }
    if fa == 0.0 {
        roots.push(a);
    }
    Ok(roots.into_iter().map(|r| polish(&c, r)).collect())
}

fn bisect(c: &[f64], mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = eval(c, m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Real roots in `[lo, hi]` found by both routes, which must agree to
/// [`ROUTE_AGREEMENT`]. Ascending.
pub fn real_roots(coeffs: &[f64], lo: f64, hi: f64) -> Result<Vec<f64>> {
    let bracketed = real_roots_bracketed(coeffs, lo, hi, 4096)?;
    let companion: Vec<f64> =
        real_roots_companion(coeffs)?.into_iter().filter(|&r| r >= lo && r <= hi).collect();
    if bracketed.len() != companion.len() {
        return Err(Error::RootMismatch(format!("bracketing found {bracketed:?}, companion matrix found {companion:?}")));
    }
    for (a, b) in bracketed.iter().zip(&companion) {
        if (a - b).abs() > ROUTE_AGREEMENT * a.abs().max(1.0) {
            return Err(Error::RootMismatch(format!("{a} vs {b}")));
        }
    }
    Ok(bracketed)
}
