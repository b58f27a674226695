//! Exact flat-measure moments on the simplex and their design averages.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::design::{DesignSet, DEFAULT_EXPANSION_CAP};
use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::perm::PermGroup;
use crate::point::PointVector;
use crate::scalar::{exact_to_f64, factorial, format_exact, Exact, Scalar};

/// `B(α) = ∏ Γ(α_i) / Γ(Σ α_i)` for positive integer arguments.
pub fn generalized_beta(alphas: &[u64]) -> Result<Exact> {
    if alphas.is_empty() {
        return Err(Error::InvalidArgument("generalized Beta needs at least one argument".into()));
    }
    if alphas.contains(&0) {
        return Err(Error::InvalidArgument("generalized Beta arguments must be positive".into()));
    }
    let numer = alphas.iter().fold(num_bigint::BigUint::from(1u32), |acc, &a| acc * factorial(a - 1));
    let denom = factorial(alphas.iter().sum::<u64>() - 1);
    Ok(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
}

/// `⟨M(k)⟩ = (d−1)! · B((k_i + 1)_i)` over the flat simplex measure.
pub fn simplex_moment(k: &MultiIndex) -> Exact {
    let d = k.dim() as u64;
    assert!(d >= 1, "moment of an empty index");
    let alphas: Vec<u64> = k.exponents().iter().map(|&e| e as u64 + 1).collect();
    let beta = generalized_beta(&alphas).expect("alphas are positive");
    beta * BigInt::from(factorial(d - 1))
}

/// `Γ(n)Γ(k+1)/Γ(n+k)`: the per-coordinate power-sum average of a `t`-design.
pub fn power_sum_target(n: u64, k: u64) -> Exact {
    let numer = factorial(n - 1) * factorial(k);
    BigRational::new(BigInt::from(numer), BigInt::from(factorial(n + k - 1)))
}

/// Arithmetic mean of `∏ x_i^{k_i}` over a multiset of points.
pub fn average_over(points: &[PointVector], k: &MultiIndex) -> Result<Scalar> {
    if points.is_empty() {
        return Err(Error::EmptyDesign);
    }
    let mut acc = Scalar::zero();
    for p in points {
        acc = &acc + &p.monomial(k)?;
    }
    acc.div_count(points.len())
}

/// `⟨M(k)⟩_X` over the expanded multiset.
pub fn monomial_average(x: &DesignSet, k: &MultiIndex) -> Result<Scalar> {
    check_dim(x, k)?;
    average_over(&x.expand_with_cap(DEFAULT_EXPANSION_CAP)?, k)
}

/// `Σ_{π∈G} ⟨M(π(k))⟩` over a pre-expanded multiset.
pub fn symmetrized_average_over(points: &[PointVector], k: &MultiIndex, g: &PermGroup) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for p in g.elements()? {
        acc = &acc + &average_over(points, &p.apply(k)?)?;
    }
    Ok(acc)
}

/// `⟨F_G(k)⟩_X`; its simplex counterpart is `|G| · simplex_moment(k)`.
pub fn symmetrized_average(x: &DesignSet, k: &MultiIndex, g: &PermGroup) -> Result<Scalar> {
    check_dim(x, k)?;
    symmetrized_average_over(&x.expand_with_cap(DEFAULT_EXPANSION_CAP)?, k, g)
}

fn check_dim(x: &DesignSet, k: &MultiIndex) -> Result<()> {
    if x.dim() != k.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: k.dim() });
    }
    Ok(())
}

/// One moment comparison between a design and the flat measure.
#[derive(Clone, Debug, Serialize)]
pub struct MomentReport {
    pub index: MultiIndex,
    #[serde(serialize_with = "ser_exact")]
    pub target: Exact,
    #[serde(serialize_with = "ser_scalar")]
    pub observed: Scalar,
    #[serde(serialize_with = "ser_scalar")]
    pub residual: Scalar,
    pub abs_residual: f64,
    /// `|residual / target|`; absent when the target is zero.
    pub rel_residual: Option<f64>,
    pub symmetrization: String,
}

impl MomentReport {
    pub fn new(index: MultiIndex, target: Exact, observed: Scalar, symmetrization: impl Into<String>) -> Self {
        let residual = &observed - &Scalar::Exact(target.clone());
        let abs_residual = residual.to_f64().abs();
        let rel_residual = (!target.is_zero()).then(|| abs_residual / exact_to_f64(&target).abs());
        MomentReport { index, target, observed, residual, abs_residual, rel_residual, symmetrization: symmetrization.into() }
    }

    pub const CSV_HEADER: &'static str = "index,target,observed,residual,symmetrization";

    /// CSV row keyed by the canonical form of the index.
    pub fn csv_row(&self) -> String {
        let k = self.index.canonicalize();
        let parts: Vec<String> = k.exponents().iter().map(|e| e.to_string()).collect();
        format!(
            "\"({})\",{},{},{},{}",
            parts.join(" "),
            format_exact(&self.target),
            self.observed.render(),
            self.residual.render(),
            self.symmetrization
        )
    }
}

pub(crate) fn ser_exact<S: serde::Serializer>(x: &Exact, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_exact(x))
}

pub(crate) fn ser_scalar<S: serde::Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Scalar::Exact(q) => s.serialize_str(&format_exact(q)),
        Scalar::Float(f) => s.serialize_f64(*f),
    }
}
