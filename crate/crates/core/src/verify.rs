//! Design verification: brute-force moments, the power-sum criterion for
//! full-symmetric orbits, and symmetry-restricted checks.

use serde::Serialize;

use crate::design::{DesignSet, DEFAULT_EXPANSION_CAP};
use crate::error::{Error, Result};
use crate::index::{enumerate_multi_indices, MultiIndex};
use crate::moments::{average_over, power_sum_target, simplex_moment, symmetrized_average_over, MomentReport};
use crate::perm::PermGroup;
use crate::point::PointVector;
use crate::scalar::Scalar;

/// Default absolute tolerance for float-mode residuals.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Largest `n` for which [`cross_validate`] expands the `S_n` orbit.
pub const CROSS_VALIDATE_MAX_DIM: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    BruteForce,
    PowerSumCriterion,
    GRestricted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    ProperDesign,
    Pseudodesign,
    NotADesign,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::ProperDesign => "proper-design",
            Classification::Pseudodesign => "pseudodesign",
            Classification::NotADesign => "not-a-design",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationResult {
    pub method: Method,
    pub t: u32,
    pub is_design: bool,
    pub classification: Classification,
    pub max_abs_residual: f64,
    /// Tolerance actually applied; zero when every residual is exact.
    pub tolerance: f64,
    pub reports: Vec<MomentReport>,
}

impl VerificationResult {
    fn assemble(method: Method, t: u32, tolerance: f64, proper: bool, reports: Vec<MomentReport>) -> Self {
        let exact = reports.iter().all(|r| r.residual.is_exact());
        let tolerance = if exact { 0.0 } else { tolerance };
        let max_abs_residual = reports.iter().map(|r| r.abs_residual).fold(0.0, f64::max);
        let is_design = if exact {
            reports.iter().all(|r| r.residual.is_zero())
        } else {
            max_abs_residual <= tolerance
        };
        let classification = match (is_design, proper) {
            (true, true) => Classification::ProperDesign,
            (true, false) => Classification::Pseudodesign,
            (false, _) => Classification::NotADesign,
        };
        VerificationResult { method, t, is_design, classification, max_abs_residual, tolerance, reports }
    }

    /// Reports sorted by descending absolute residual.
    pub fn worst(&self, n: usize) -> Vec<&MomentReport> {
        let mut r: Vec<&MomentReport> = self.reports.iter().collect();
        r.sort_by(|a, b| b.abs_residual.total_cmp(&a.abs_residual));
        r.truncate(n);
        r
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("verification results serialize")
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BruteForceOptions {
    pub tolerance: f64,
    /// Check only non-increasing indices; sound for `S_d`-symmetric designs.
    pub canonical_only: bool,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        BruteForceOptions { tolerance: DEFAULT_TOLERANCE, canonical_only: false }
    }
}

fn check_t(t: u32) -> Result<()> {
    if t == 0 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    Ok(())
}

fn indices_up_to(d: usize, t: u32) -> impl Iterator<Item = MultiIndex> {
    (1..=t).flat_map(move |deg| enumerate_multi_indices(d, deg, true))
}

/// Compares `⟨M(k)⟩_X` with the simplex moment for every `k`, `1 ≤ |k| ≤ t`.
pub fn verify_brute_force(x: &DesignSet, t: u32, opts: BruteForceOptions) -> Result<VerificationResult> {
    check_t(t)?;
    let points = x.expand_with_cap(DEFAULT_EXPANSION_CAP)?;
    let reports = indices_up_to(x.dim(), t)
        .filter(|k| !opts.canonical_only || k.is_canonical())
        .map(|k| {
            let observed = average_over(&points, &k)?;
            Ok(MomentReport::new(k.clone(), simplex_moment(&k), observed, "none"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationResult::assemble(Method::BruteForce, t, opts.tolerance, x.is_proper(), reports))
}

/// The `S_n`-orbit criterion: `1/(sn) Σ_i Σ_j x_ij^k = Γ(n)Γ(k+1)/Γ(n+k)`
/// for `1 ≤ k ≤ t`. The orbit is never expanded.
///
/// Equivalent to the brute-force check on the full orbit for `t ≤ 3`; for
/// `t ≥ 4` and `n ≥ 4` it is necessary but not sufficient, because degree-4
/// symmetric polynomials such as `Σ x_i² x_j²` are not linear in the power sums.
pub fn verify_power_sum_criterion(base: &[PointVector], t: u32, tolerance: f64) -> Result<VerificationResult> {
    check_t(t)?;
    let n = base.first().ok_or(Error::EmptyDesign)?.dim();
    for p in base {
        if p.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
        }
    }
    let count = base.len() * n;
    let reports = (1..=t)
        .map(|k| {
            let total = base.iter().fold(Scalar::zero(), |acc, p| &acc + &p.power_sum(k));
            let observed = total.div_count(count)?;
            Ok(MomentReport::new(MultiIndex::leading(n, k), power_sum_target(n as u64, k as u64), observed, "power-sum"))
        })
        .collect::<Result<Vec<_>>>()?;
    let proper = base.iter().all(PointVector::is_proper);
    Ok(VerificationResult::assemble(Method::PowerSumCriterion, t, tolerance, proper, reports))
}

/// `G`-restricted check: for each canonical `G`-invariant `k` with
/// `1 ≤ |k| ≤ t`, compares `⟨F_G(k)⟩_X / |G|` with the simplex moment of `k`.
///
/// One report per partition suffices: for invariant `k`, `F_G(k)` is the same
/// polynomial for every rearrangement of `k`.
pub fn verify_g_restricted(x: &DesignSet, t: u32, g: &PermGroup, tolerance: f64) -> Result<VerificationResult> {
    check_t(t)?;
    if g.degree() != x.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: g.degree() });
    }
    let points = x.expand_with_cap(DEFAULT_EXPANSION_CAP)?;
    let order = g.order() as usize;
    let mut reports = Vec::new();
    for k in indices_up_to(x.dim(), t).filter(MultiIndex::is_canonical) {
        if !g.is_invariant(&k)? {
            continue;
        }
        let observed = symmetrized_average_over(&points, &k, g)?.div_count(order)?;
        reports.push(MomentReport::new(k.clone(), simplex_moment(&k), observed, g.tag()));
    }
    Ok(VerificationResult::assemble(Method::GRestricted, t, tolerance, x.is_proper(), reports))
}

/// Indices checked by [`verify_g_restricted`] at a single degree.
pub fn g_invariant_indices(g: &PermGroup, degree: u32) -> Result<Vec<MultiIndex>> {
    let mut out = Vec::new();
    for k in enumerate_multi_indices(g.degree(), degree, true).into_iter().filter(MultiIndex::is_canonical) {
        if g.is_invariant(&k)? {
            out.push(k);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossValidation {
    pub agree: bool,
    pub criterion: VerificationResult,
    pub brute_force: VerificationResult,
}

/// Runs the power-sum criterion and brute force on the expanded `S_n` orbit.
pub fn cross_validate(base: &[PointVector], t: u32, tolerance: f64) -> Result<CrossValidation> {
    let n = base.first().ok_or(Error::EmptyDesign)?.dim();
    if n > CROSS_VALIDATE_MAX_DIM {
        return Err(Error::CapExceeded { what: "cross-validation dimension", size: n as u128, cap: CROSS_VALIDATE_MAX_DIM as u128 });
    }
    let criterion = verify_power_sum_criterion(base, t, tolerance)?;
    let design = DesignSet::orbit(base.to_vec(), PermGroup::symmetric(n))?;
    let brute_force = verify_brute_force(&design, t, BruteForceOptions { tolerance, canonical_only: false })?;
    Ok(CrossValidation { agree: criterion.is_design == brute_force.is_design, criterion, brute_force })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::exact;

    #[test]
    fn centroid_is_a_one_design_only() {
        let c = PointVector::centroid(3);
        let x = DesignSet::explicit(vec![c.clone()]).unwrap();
        let r = verify_brute_force(&x, 1, BruteForceOptions::default()).unwrap();
        assert!(r.is_design);
        assert_eq!(r.classification, Classification::ProperDesign);
        assert_eq!(r.tolerance, 0.0);
        assert!(verify_power_sum_criterion(&[c.clone()], 1, DEFAULT_TOLERANCE).unwrap().is_design);
        let r2 = verify_power_sum_criterion(&[c], 2, DEFAULT_TOLERANCE).unwrap();
        assert!(!r2.is_design);
        assert_eq!(r2.reports[1].observed, Scalar::Exact(exact(1, 9)));
        assert_eq!(r2.reports[1].target, exact(1, 6));
    }

    #[test]
    fn report_counts() {
        let x = DesignSet::explicit(vec![PointVector::centroid(3)]).unwrap();
        let all = verify_brute_force(&x, 3, BruteForceOptions::default()).unwrap();
        assert_eq!(all.reports.len(), 3 + 6 + 10);
        let canon = verify_brute_force(&x, 3, BruteForceOptions { canonical_only: true, ..Default::default() }).unwrap();
        assert_eq!(canon.reports.len(), 1 + 2 + 3);
    }

    #[test]
    fn exact_pseudodesign_classification() {
        // (3/2, -1/2) and its mirror: first moments are 1/2 each.
        let p = PointVector::exact(vec![exact(3, 2), exact(-1, 2)]).unwrap();
        let x = DesignSet::orbit(vec![p], PermGroup::symmetric(2)).unwrap();
        let r = verify_brute_force(&x, 1, BruteForceOptions::default()).unwrap();
        assert!(r.is_design);
        assert_eq!(r.classification, Classification::Pseudodesign);
    }

    #[test]
    fn cyclic_invariant_indices_at_degree_three() {
        let idx = g_invariant_indices(&PermGroup::cyclic(3), 3).unwrap();
        assert_eq!(idx, vec![MultiIndex::new(vec![3, 0, 0]), MultiIndex::new(vec![1, 1, 1])]);
    }

    #[test]
    fn errors() {
        let x = DesignSet::explicit(vec![PointVector::centroid(3)]).unwrap();
        assert!(verify_brute_force(&x, 0, BruteForceOptions::default()).is_err());
        assert!(matches!(verify_power_sum_criterion(&[], 2, 1e-9), Err(Error::EmptyDesign)));
        assert!(verify_g_restricted(&x, 2, &PermGroup::cyclic(4), 1e-9).is_err());
        assert!(cross_validate(&[PointVector::centroid(9)], 2, 1e-9).is_err());
    }
}
