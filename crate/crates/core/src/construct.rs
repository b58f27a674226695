//! Candidate designs: the triangle cubic, the `(a, b, ..., b)` family and the
//! three-value family `(a/(d−2), ..., a/(d−2), b, 1−a−b)` with `d(d−1)` orbit points.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::design::DesignSet;
use crate::error::{Error, Result};
use crate::moments::power_sum_target;
use crate::perm::PermGroup;
use crate::point::PointVector;
use crate::roots::{eval, real_roots, ExactPoly};
use crate::scalar::{exact, exact_int, exact_to_f64, format_f64, Exact};
use crate::verify::{verify_power_sum_criterion, DEFAULT_TOLERANCE};

/// Coefficients (ascending) of `60x³ − 60x² + 15x − 1`.
pub const TRIANGLE_CUBIC: [f64; 4] = [-1.0, 15.0, -60.0, 60.0];

/// Search interval for roots of the family cubic.
const ROOT_BRACKET: (f64, f64) = (-1.0, 2.0);

/// Values closer than this are treated as equal when counting orbit points.
const VALUE_MERGE_TOLERANCE: f64 = 1e-9;

/// The three real roots of `60x³ − 60x² + 15x − 1`, descending, as a point of `Δ²`.
pub fn triangle_cubic_roots() -> Result<PointVector> {
    // Sign changes on (0, 1/5), (1/5, 1/2), (1/2, 1) certify three real roots in (0, 1).
    let signs = [0.0, 0.2, 0.5, 1.0].map(|x| eval(&TRIANGLE_CUBIC, x).signum());
    if signs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::NoRealSolution("triangle cubic lost a sign change".into()));
    }
    let mut roots = real_roots(&TRIANGLE_CUBIC, 0.0, 1.0)?;
    if roots.len() != 3 {
        return Err(Error::NoRealSolution(format!("expected three roots, found {roots:?}")));
    }
    roots.reverse();
    PointVector::float(roots)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

/// A solution of the three-value family.
#[derive(Clone, Debug, Serialize)]
pub struct FamilySolution {
    pub d: usize,
    /// Total mass of the `d − 2` equal leading coordinates.
    pub a: f64,
    pub b: f64,
    /// `1 − a − b`.
    pub c: f64,
    pub branch: Branch,
    pub satisfies_restriction: bool,
    pub proper: bool,
    #[serde(serialize_with = "ser_point")]
    pub base_point: PointVector,
    /// Number of distinct points in the `S_d` orbit.
    pub orbit_size: u128,
    /// Largest power-sum residual for `k = 1, 2, 3`.
    pub max_power_sum_residual: f64,
}

fn ser_point<S: serde::Serializer>(p: &PointVector, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&p.to_f64(), s)
}

/// A solution of the uniform-excess family `(a, b, ..., b)`.
#[derive(Clone, Debug, Serialize)]
pub struct UniformExcessSolution {
    pub d: usize,
    pub a: f64,
    pub b: f64,
    pub proper: bool,
    #[serde(serialize_with = "ser_point")]
    pub base_point: PointVector,
}

/// Both solutions of `a + (d−1)b = 1`, `a² + (d−1)b² = 2/(d+1)`: the
/// power-sum criterion at `t = 2`. Each gives a `d`-point 2-design.
pub fn uniform_excess_family(d: usize, t: u32) -> Result<Vec<UniformExcessSolution>> {
    if d < 2 {
        return Err(Error::InvalidArgument("uniform-excess family needs d ≥ 2".into()));
    }
    if t != 2 {
        return Err(Error::InvalidArgument(format!("uniform-excess family is solved for t = 2 only, got t = {t}")));
    }
    let df = d as f64;
    // d a² − 2a + (3 − d)/(d + 1) = 0  ⇒  a = (1 ± (d − 1)/√(d + 1)) / d
    let root = (df - 1.0) / (df + 1.0).sqrt();
    [1.0, -1.0]
        .into_iter()
        .map(|sign| {
            let a = (1.0 + sign * root) / df;
            let b = (1.0 - a) / (df - 1.0);
            let mut coords = vec![b; d];
            coords[0] = a;
            let base_point = PointVector::float(coords)?;
            Ok(UniformExcessSolution { d, a, b, proper: base_point.is_proper(), base_point })
        })
        .collect()
}

fn check_family_dim(d: usize) -> Result<()> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!("the three-value family needs d ≥ 3, got {d}")));
    }
    Ok(())
}

fn exact_from_f64(a: f64) -> Result<Exact> {
    BigRational::from_float(a).ok_or_else(|| Error::InvalidArgument(format!("{a} is not finite")))
}

/// `−(d/(d−2)) a² + 2a − (d−3)/(d+1)`, evaluated exactly at the float `a`.
pub fn discriminant_exact(d: usize, a: f64) -> Result<Exact> {
    check_family_dim(d)?;
    let a = exact_from_f64(a)?;
    let d = d as i64;
    Ok(-exact(d, d - 2) * &a * &a + exact_int(2) * &a - exact(d - 3, d + 1))
}

pub fn discriminant(d: usize, a: f64) -> Result<f64> {
    Ok(exact_to_f64(&discriminant_exact(d, a)?))
}

/// `b± = ½((1 − a) ± √disc)`, the roots of the `k = 2` power-sum condition.
pub fn branch_b(d: usize, a: f64, sign: Branch) -> Result<f64> {
    let disc = discriminant_exact(d, a)?;
    if disc.is_negative() {
        return Err(Error::NoRealSolution(format!(
            "discriminant {} < 0 at d = {d}, a = {a}",
            format_f64(exact_to_f64(&disc))
        )));
    }
    let root = exact_to_f64(&disc).max(0.0).sqrt();
    Ok(match sign {
        Branch::Plus => 0.5 * ((1.0 - a) + root),
        Branch::Minus => 0.5 * ((1.0 - a) - root),
    })
}

/// `|d(a − 1) + 2| ≤ √(2(d−1)(d−2)/(d+1))`, compared exactly after squaring.
pub fn restriction_bound(d: usize, a: f64) -> Result<bool> {
    check_family_dim(d)?;
    let a = exact_from_f64(a)?;
    let di = d as i64;
    let lhs = exact_int(di) * (a - exact_int(1)) + exact_int(2);
    let rhs = exact(2 * (di - 1) * (di - 2), di + 1);
    Ok(&lhs * &lhs <= rhs)
}

/// Total power-sum target `d / C(d+k−1, k)` of one base point.
fn total_target(d: usize, k: u64) -> Exact {
    power_sum_target(d as u64, k) * exact_int(d as i64)
}

/// The univariate cubic in `a` obtained by eliminating `b` and `c` from the
/// `k = 2, 3` power-sum conditions, in primitive integer form.
///
/// With `S = b + c = 1 − a` and `P = bc`, the `k = 2` condition fixes
/// `2P = S² − T₂ + a²/(d−2)`, and `b³ + c³ = S³ − 3PS` turns the `k = 3`
/// condition into a cubic in `a`.
pub fn derived_cubic(d: usize) -> Result<ExactPoly> {
    check_family_dim(d)?;
    let one = exact_int(1);
    let a = ExactPoly::linear(Exact::zero(), one.clone());
    let s = ExactPoly::linear(one.clone(), -one);
    let inv_lead = exact(1, d as i64 - 2);
    let a2_term = a.pow(2).scale(&inv_lead);
    let two_p = s.pow(2).sub(&ExactPoly::constant(total_target(d, 2))).add(&a2_term);
    let p = two_p.scale(&exact(1, 2));
    let cubic = a
        .pow(3)
        .scale(&(&inv_lead * &inv_lead))
        .add(&s.pow(3))
        .sub(&p.mul(&s).scale(&exact_int(3)))
        .sub(&ExactPoly::constant(total_target(d, 3)));
    Ok(cubic.primitive())
}

/// A commonly quoted form of the family cubic,
/// `d(d²−1)a³ − 3(d+2)(d²−1)a² + 3(d²−4)(d−1)a − (d−2)²(d+1)`.
///
/// Kept for comparison only; it does not vanish at the family solutions.
pub fn quoted_cubic(d: usize) -> ExactPoly {
    let d = d as i64;
    ExactPoly(vec![
        exact_int(-(d - 2) * (d - 2) * (d + 1)),
        exact_int(3 * (d * d - 4) * (d - 1)),
        exact_int(-3 * (d + 2) * (d * d - 1)),
        exact_int(d * (d * d - 1)),
    ])
}

/// Number of distinct rearrangements of `values` (merged within tolerance).
fn distinct_arrangements(values: &[f64]) -> u128 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut size: u128 = 1;
    let mut run: u128 = 0;
    for (i, v) in sorted.iter().enumerate() {
        let same = i > 0 && (v - sorted[i - 1]).abs() <= VALUE_MERGE_TOLERANCE * v.abs().max(1.0);
        run = if same { run + 1 } else { 1 };
        size = size * (i as u128 + 1) / run;
    }
    size
}

fn family_point(d: usize, a: f64, b: f64, c: f64) -> Result<PointVector> {
    let mut coords = vec![a / (d as f64 - 2.0); d - 2];
    coords.push(b);
    coords.push(c);
    PointVector::float(coords)
}

fn finish(d: usize, a: f64, b: f64, c: f64, branch: Branch, satisfies_restriction: bool, base_point: PointVector) -> Result<FamilySolution> {
    let check = verify_power_sum_criterion(std::slice::from_ref(&base_point), 3, DEFAULT_TOLERANCE)?;
    let orbit_size = distinct_arrangements(&base_point.to_f64());
    Ok(FamilySolution {
        d,
        a,
        b,
        c,
        branch,
        satisfies_restriction,
        proper: base_point.is_proper(),
        base_point,
        orbit_size,
        max_power_sum_residual: check.max_abs_residual,
    })
}

/// The two-point 3-design on `Δ¹`, `((1 ± 1/√3)/2)`, solved from the power sums directly.
fn two_point_solution() -> Result<FamilySolution> {
    // b + c = 1 and b² + c² = 2/3 give bc = 1/6.
    let root = (1.0f64 / 3.0).sqrt();
    let (b, c) = (0.5 * (1.0 + root), 0.5 * (1.0 - root));
    let sol = finish(2, 0.0, b, c, Branch::Plus, true, PointVector::float(vec![b, c])?)?;
    if sol.max_power_sum_residual > DEFAULT_TOLERANCE {
        return Err(Error::NoRealSolution(format!("d = 2 pair fails k = 3 by {}", sol.max_power_sum_residual)));
    }
    Ok(sol)
}

/// All solutions of the three-value family for dimension `d`, ordered by
/// descending `a`. The `b ↔ c` swap gives the same orbit, so only the plus
/// branch is reported, and solutions with equal coordinate multisets are merged.
pub fn solve_three_value_family(d: usize) -> Result<Vec<FamilySolution>> {
    if d == 2 {
        return Ok(vec![two_point_solution()?]);
    }
    check_family_dim(d)?;
    let cubic = derived_cubic(d)?;
    let mut roots = real_roots(&cubic.to_f64(), ROOT_BRACKET.0, ROOT_BRACKET.1)?;
    roots.reverse();

    let mut out: Vec<FamilySolution> = Vec::new();
    for a in roots {
        if !restriction_bound(d, a)? {
            continue;
        }
        let b = branch_b(d, a, Branch::Plus)?;
        let c = 1.0 - a - b;
        let point = family_point(d, a, b, c)?;
        let mut key = point.to_f64();
        key.sort_by(f64::total_cmp);
        let duplicate = out.iter().any(|s| {
            let mut other = s.base_point.to_f64();
            other.sort_by(f64::total_cmp);
            other.iter().zip(&key).all(|(x, y)| (x - y).abs() <= 1e-9)
        });
        if !duplicate {
            out.push(finish(d, a, b, c, Branch::Plus, true, point)?);
        }
    }
    if out.is_empty() {
        return Err(Error::NoRealSolution(format!("three-value family has no real solution at d = {d}")));
    }
    Ok(out)
}

/// One real root of the derived cubic.
#[derive(Clone, Debug, Serialize)]
pub struct CubicRoot {
    pub a: f64,
    pub discriminant: f64,
    pub satisfies_restriction: bool,
}

/// Diagnostic view of the family solve at one `d`.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub d: usize,
    /// Ascending integer coefficients of the derived cubic.
    pub derived_cubic: Vec<String>,
    pub quoted_cubic: Vec<String>,
    pub roots: Vec<CubicRoot>,
    pub solutions: Vec<FamilySolution>,
    /// Derived cubic evaluated at each solution's `a` (relative to its coefficient scale).
    pub derived_cubic_residuals: Vec<f64>,
    /// Quoted cubic evaluated at each solution's `a` (same scaling).
    pub quoted_cubic_residuals: Vec<f64>,
}

pub fn three_value_report(d: usize) -> Result<FamilyReport> {
    check_family_dim(d)?;
    let derived = derived_cubic(d)?;
    let quoted = quoted_cubic(d);
    let roots = real_roots(&derived.to_f64(), ROOT_BRACKET.0, ROOT_BRACKET.1)?
        .into_iter()
        .map(|a| {
            Ok(CubicRoot { a, discriminant: discriminant(d, a)?, satisfies_restriction: restriction_bound(d, a)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let solutions = solve_three_value_family(d)?;
    let scaled = |p: &ExactPoly, a: f64| {
        let c = p.to_f64();
        let scale = c.iter().map(|v| v.abs()).fold(0.0, f64::max);
        eval(&c, a) / scale
    };
    let render = |p: &ExactPoly| p.coefficients().iter().map(crate::scalar::format_exact).collect();
    Ok(FamilyReport {
        d,
        derived_cubic: render(&derived),
        quoted_cubic: render(&quoted),
        roots,
        derived_cubic_residuals: solutions.iter().map(|s| scaled(&derived, s.a)).collect(),
        quoted_cubic_residuals: solutions.iter().map(|s| scaled(&quoted, s.a)).collect(),
        solutions,
    })
}

/// The `G`-orbit design of a family solution.
pub fn build_design(sol: &FamilySolution, group: PermGroup) -> Result<DesignSet> {
    DesignSet::orbit(vec![sol.base_point.clone()], group)
}

/// Dimensions listed in the proper-solution table.
pub const PROPER_TABLE_DIMS: [usize; 7] = [3, 4, 5, 6, 7, 8, 9];
/// Dimensions listed in the improper-solution table.
pub const IMPROPER_TABLE_DIMS: [usize; 7] = [6, 7, 8, 9, 16, 25, 100];

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    /// 1 for proper solutions, 2 for pseudoprobability solutions.
    pub table: u8,
    /// Column label, `d` or `d_i` when a dimension has several solutions.
    pub label: String,
    pub d: usize,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub proper: bool,
}

fn rows_for(table: u8, dims: &[usize], want_proper: bool) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for &d in dims {
        let sols: Vec<FamilySolution> =
            solve_three_value_family(d)?.into_iter().filter(|s| s.proper == want_proper).collect();
        let many = sols.len() > 1;
        for (i, s) in sols.iter().enumerate() {
            let label = if many { format!("{d}_{}", i + 1) } else { d.to_string() };
            rows.push(TableRow { table, label, d, a: s.a, b: s.b, c: s.c, proper: s.proper });
        }
    }
    Ok(rows)
}

/// Regenerates both solution tables.
pub fn table_rows() -> Result<Vec<TableRow>> {
    let mut rows = rows_for(1, &PROPER_TABLE_DIMS, true)?;
    rows.extend(rows_for(2, &IMPROPER_TABLE_DIMS, false)?);
    Ok(rows)
}

/// CSV with header `table,d,a,b,1-a-b,proper`; `decimals` rounds the values.
pub fn tables_csv(rows: &[TableRow], decimals: Option<usize>) -> String {
    let fmt = |x: f64| match decimals {
        Some(n) => format!("{x:.n$}"),
        None => format_f64(x),
    };
    let mut out = String::from("table,d,a,b,1-a-b,proper\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{},{},{}\n", r.table, r.label, fmt(r.a), fmt(r.b), fmt(r.c), r.proper));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_roots() {
        let p = triangle_cubic_roots().unwrap();
        let x = p.to_f64();
        assert!((x[0] - 0.659).abs() < 5e-4 && (x[1] - 0.232).abs() < 5e-4 && (x[2] - 0.109).abs() < 5e-4);
        assert!((x.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!((x[0] * x[1] * x[2] - 1.0 / 60.0).abs() < 1e-12);
        for r in &x {
            assert!(eval(&TRIANGLE_CUBIC, *r).abs() < 1e-12);
        }
    }

    #[test]
    fn uniform_excess_two_point_values() {
        let sols = uniform_excess_family(2, 2).unwrap();
        let r3 = 1.0 / 3.0f64.sqrt();
        assert!((sols[0].a - 0.5 * (1.0 + r3)).abs() < 1e-15);
        assert!((sols[1].a - 0.5 * (1.0 - r3)).abs() < 1e-15);
        assert!(uniform_excess_family(3, 3).is_err());
        assert!(uniform_excess_family(1, 2).is_err());
    }

    #[test]
    fn uniform_excess_is_a_two_design_not_three() {
        for d in 2..9 {
            for s in uniform_excess_family(d, 2).unwrap() {
                assert!((s.a - 1.0 / d as f64).abs() > 1e-6, "centroid returned");
                let base = [s.base_point.clone()];
                assert!(verify_power_sum_criterion(&base, 2, 1e-12).unwrap().is_design);
                // At d = 2 the two points form the Gauss rule, exact through degree 3.
                assert_eq!(verify_power_sum_criterion(&base, 3, 1e-9).unwrap().is_design, d == 2);
            }
        }
    }

    #[test]
    fn branch_examples() {
        let bp = branch_b(3, 0.659, Branch::Plus).unwrap();
        let bm = branch_b(3, 0.659, Branch::Minus).unwrap();
        assert!((bp - 0.232).abs() < 2e-3 && (bm - 0.109).abs() < 2e-3);
        assert!(matches!(branch_b(3, 0.9, Branch::Plus), Err(Error::NoRealSolution(_))));
        assert!(branch_b(2, 0.5, Branch::Plus).is_err());
    }

    #[test]
    fn zero_discriminant_gives_double_point() {
        // d = 3: disc = −3a² + 2a vanishes at a = 0.
        let b = branch_b(3, 0.0, Branch::Plus).unwrap();
        let c = branch_b(3, 0.0, Branch::Minus).unwrap();
        assert_eq!(b, 0.5);
        assert_eq!(c, 0.5);
    }

    #[test]
    fn restriction_examples() {
        assert!(restriction_bound(3, 0.659).unwrap());
        assert!(restriction_bound(3, 2.0 / 3.0).unwrap());
        assert!(!restriction_bound(16, 0.303).unwrap());
        assert!(!restriction_bound(3, 0.9).unwrap());
    }

    #[test]
    fn derived_cubic_at_three_is_the_triangle_cubic() {
        let c = derived_cubic(3).unwrap();
        assert_eq!(c.to_f64(), TRIANGLE_CUBIC.to_vec());
    }

    #[test]
    fn derived_cubic_matches_hand_elimination() {
        // d(d+1)(d+2)a³ − 3(d+1)(d−2)(d+2)a² + 3(d−2)²(d+2)a − (d−2)³, up to a constant.
        for d in 3..40i64 {
            let hand = ExactPoly(vec![
                exact_int(-(d - 2).pow(3)),
                exact_int(3 * (d - 2).pow(2) * (d + 2)),
                exact_int(-3 * (d + 1) * (d - 2) * (d + 2)),
                exact_int(d * (d + 1) * (d + 2)),
            ]);
            assert_eq!(derived_cubic(d as usize).unwrap(), hand.primitive(), "d = {d}");
        }
    }

    #[test]
    fn quoted_cubic_misses_the_solutions() {
        let r = three_value_report(4).unwrap();
        assert!(r.derived_cubic_residuals.iter().all(|v| v.abs() < 1e-12));
        assert!(r.quoted_cubic_residuals.iter().all(|v| v.abs() > 1e-2));
    }

    #[test]
    fn d3_solution_and_orbit() {
        let sols = solve_three_value_family(3).unwrap();
        assert_eq!(sols.len(), 1);
        let s = &sols[0];
        assert!(s.proper);
        assert_eq!(s.orbit_size, 6);
        assert!((s.a - 0.659).abs() < 5e-4 && (s.b - 0.232).abs() < 5e-4 && (s.c - 0.109).abs() < 5e-4);
        let x = build_design(s, PermGroup::symmetric(3)).unwrap();
        assert_eq!(x.dedup().unwrap().len(), 6);
    }

    #[test]
    fn d4_orbits_have_twelve_points() {
        for s in solve_three_value_family(4).unwrap() {
            assert_eq!(s.orbit_size, 12);
            let x = build_design(&s, PermGroup::symmetric(4)).unwrap();
            assert_eq!(x.dedup().unwrap().len(), 12);
        }
    }

    #[test]
    fn arrangement_counts() {
        assert_eq!(distinct_arrangements(&[0.25, 0.25, 0.25, 0.25]), 1);
        assert_eq!(distinct_arrangements(&[0.5, 0.25, 0.25]), 3);
        assert_eq!(distinct_arrangements(&[0.1, 0.1, 0.3, 0.5]), 12);
    }

    #[test]
    fn two_point_special_case() {
        let s = solve_three_value_family(2).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].orbit_size, 2);
        assert!(s[0].max_power_sum_residual < 1e-12);
    }
}
