//! Symmetrized monomials as exact homogeneous polynomials, and span tests in
//! the quotient ring `R[x] / (Σ x_i − 1)`.
//!
//! Polynomials of different degree are compared after multiplying the lower
//! degree ones by powers of `Σ x_i`, which is the identity in the quotient.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::{partitions, MultiIndex};
use crate::linalg::{solve_columns, RationalMatrix};
use crate::perm::PermGroup;
use crate::scalar::{exact_to_f64, format_exact, Exact};

/// Homogeneous polynomial with exact coefficients, keyed by exponent vector.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoly {
    d: usize,
    degree: u32,
    terms: BTreeMap<MultiIndex, Exact>,
}

impl SymPoly {
    pub fn zero(d: usize, degree: u32) -> Self {
        SymPoly { d, degree, terms: BTreeMap::new() }
    }

    pub fn constant(d: usize, c: Exact) -> Self {
        let mut p = SymPoly::zero(d, 0);
        p.add_term(MultiIndex::zeros(d), c);
        p
    }

    pub fn monomial(k: &MultiIndex) -> Self {
        let mut p = SymPoly::zero(k.dim(), k.degree());
        p.add_term(k.clone(), Exact::one());
        p
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Exact> {
        &self.terms
    }

    pub fn coefficient(&self, e: &MultiIndex) -> Exact {
        self.terms.get(e).cloned().unwrap_or_else(Exact::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: MultiIndex, c: Exact) {
        debug_assert_eq!(e.degree(), self.degree);
        let entry = self.terms.entry(e).or_insert_with(Exact::zero);
        *entry += c;
        // Keep the map free of zero coefficients.
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn scaled(&self, c: &Exact) -> SymPoly {
        let mut p = SymPoly::zero(self.d, self.degree);
        if !c.is_zero() {
            p.terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        }
        p
    }

    /// Sum of two polynomials of equal dimension, homogenizing the lower one.
    pub fn add(&self, other: &SymPoly) -> Result<SymPoly> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: other.d });
        }
        let deg = self.degree.max(other.degree);
        let mut out = self.homogenize_to(deg)?;
        for (e, c) in other.homogenize_to(deg)?.terms {
            *out.terms.entry(e).or_insert_with(Exact::zero) += c;
        }
        out.terms.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// `p · (x_1 + ... + x_d)^(target − deg p)`.
    pub fn homogenize_to(&self, target: u32) -> Result<SymPoly> {
        if target < self.degree {
            return Err(Error::InvalidArgument(format!(
                "cannot homogenize a degree-{} polynomial down to degree {target}",
                self.degree
            )));
        }
        let mut p = self.clone();
        for _ in self.degree..target {
            let mut next: BTreeMap<MultiIndex, Exact> = BTreeMap::new();
            for (e, c) in &p.terms {
                for j in 0..self.d {
                    *next.entry(e.bumped(j)).or_insert_with(Exact::zero) += c;
                }
            }
            p = SymPoly { d: self.d, degree: p.degree + 1, terms: next };
        }
        Ok(p)
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| exact_to_f64(c) * x.iter().zip(e.exponents()).map(|(v, &k)| v.powi(k as i32)).product::<f64>())
            .sum()
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let vars: Vec<String> = e
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                .collect();
            match (c.is_one(), vars.is_empty()) {
                (true, false) => write!(f, "{}", vars.join("*"))?,
                (_, true) => write!(f, "{}", format_exact(c))?,
                (false, false) => write!(f, "{}*{}", format_exact(c), vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// `F_G(k) = Σ_{π∈G} M(π(k))`; the coefficient of `x^e` counts the `π` with `π(k) = e`.
pub fn symmetrized_monomial(g: &PermGroup, k: &MultiIndex) -> Result<SymPoly> {
    if g.degree() != k.dim() {
        return Err(Error::DimensionMismatch { expected: g.degree(), found: k.dim() });
    }
    let mut counts: BTreeMap<MultiIndex, u64> = BTreeMap::new();
    for p in g.elements()? {
        *counts.entry(p.apply(k)?).or_default() += 1;
    }
    let mut poly = SymPoly::zero(k.dim(), k.degree());
    poly.terms = counts.into_iter().map(|(e, n)| (e, Exact::from_integer(n.into()))).collect();
    Ok(poly)
}

pub fn homogenize_to(p: &SymPoly, target: u32) -> Result<SymPoly> {
    p.homogenize_to(target)
}

/// Outcome of a span-membership test.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanResult {
    pub in_span: bool,
    /// Coefficients on the basis when `in_span` holds.
    pub coefficients: Option<Vec<Exact>>,
    /// Common degree all polynomials were homogenized to.
    pub degree: u32,
}

/// Exact test of `candidate ∈ span(basis)` in the quotient by `Σ x − 1`.
pub fn in_span(candidate: &SymPoly, basis: &[SymPoly]) -> Result<SpanResult> {
    for b in basis {
        if b.dim() != candidate.dim() {
            return Err(Error::DimensionMismatch { expected: candidate.dim(), found: b.dim() });
        }
    }
    let degree = basis.iter().map(SymPoly::degree).chain([candidate.degree()]).max().unwrap_or(0);
    let cand = candidate.homogenize_to(degree)?;
    let homog: Vec<SymPoly> = basis.iter().map(|b| b.homogenize_to(degree)).collect::<Result<_>>()?;

    let mut monomials: Vec<&MultiIndex> = cand.terms.keys().collect();
    for b in &homog {
        monomials.extend(b.terms.keys());
    }
    monomials.sort();
    monomials.dedup();

    let columns: Vec<Vec<Exact>> = homog.iter().map(|b| monomials.iter().map(|e| b.coefficient(e)).collect()).collect();
    let rhs: Vec<Exact> = monomials.iter().map(|e| cand.coefficient(e)).collect();
    let coefficients = solve_columns(&columns, &rhs);
    Ok(SpanResult { in_span: coefficients.is_some(), coefficients, degree })
}

/// The subspace `V_t`: the constant `(Σ x)^0` together with `F_G(j, 0, ..., 0)`
/// for `1 ≤ j ≤ t`. The constant carries the subtracted Beta-function term.
pub fn power_sum_basis(g: &PermGroup, t: u32) -> Result<Vec<SymPoly>> {
    let d = g.degree();
    let mut basis = vec![SymPoly::constant(d, Exact::one())];
    for j in 1..=t {
        basis.push(symmetrized_monomial(g, &MultiIndex::leading(d, j))?);
    }
    Ok(basis)
}

/// Rows of homogenized `F_G(λ)` expressed in the `F_G(μ)` basis, `|μ| = t`.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionTable {
    pub d: usize,
    pub t: u32,
    pub group: String,
    pub rows: Vec<MultiIndex>,
    pub columns: Vec<MultiIndex>,
    /// `None` for a row that is not a combination of the column polynomials
    /// (possible for proper subgroups).
    #[serde(serialize_with = "ser_coeff_rows")]
    pub coefficients: Vec<Option<Vec<Exact>>>,
    /// Rank of all rows as polynomials.
    pub rank: usize,
    /// Rank of the rows of degree below `t`.
    pub lower_rank: usize,
}

fn ser_coeff_rows<S: serde::Serializer>(rows: &[Option<Vec<Exact>>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rendered: Vec<Option<Vec<String>>> =
        rows.iter().map(|r| r.as_ref().map(|v| v.iter().map(format_exact).collect())).collect();
    serde::Serialize::serialize(&rendered, s)
}

/// Every partition of every degree `1..=t` (at most `d` parts) as a row.
pub fn decomposition_table(d: usize, t: u32, g: &PermGroup) -> Result<DecompositionTable> {
    let rows: Vec<MultiIndex> = (1..=t).flat_map(|deg| partitions(deg, d)).collect();
    decomposition_table_for(&rows, t, g)
}

/// Decomposition table over an explicit list of row indices.
pub fn decomposition_table_for(rows: &[MultiIndex], t: u32, g: &PermGroup) -> Result<DecompositionTable> {
    let d = g.degree();
    for r in rows {
        if r.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: r.dim() });
        }
        if r.degree() > t {
            return Err(Error::InvalidArgument(format!("row {r} has degree above {t}")));
        }
    }
    let columns = partitions(t, d);
    let basis: Vec<SymPoly> = columns.iter().map(|c| symmetrized_monomial(g, c)).collect::<Result<_>>()?;
    let homog: Vec<SymPoly> =
        rows.iter().map(|r| symmetrized_monomial(g, r)?.homogenize_to(t)).collect::<Result<_>>()?;

    let coefficients = homog
        .iter()
        .map(|p| in_span(p, &basis).map(|s| s.coefficients))
        .collect::<Result<Vec<_>>>()?;

    let rank_of = |polys: &[&SymPoly]| {
        let mut keys: Vec<&MultiIndex> = polys.iter().flat_map(|p| p.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        let m = RationalMatrix::from_rows(polys.iter().map(|p| keys.iter().map(|e| p.coefficient(e)).collect()).collect());
        if keys.is_empty() {
            0
        } else {
            m.rank()
        }
    };
    let all: Vec<&SymPoly> = homog.iter().collect();
    let lower: Vec<&SymPoly> = homog.iter().zip(rows).filter(|(_, r)| r.degree() < t).map(|(p, _)| p).collect();

    Ok(DecompositionTable {
        d,
        t,
        group: g.tag(),
        rows: rows.to_vec(),
        columns,
        coefficients,
        rank: rank_of(&all),
        lower_rank: rank_of(&lower),
    })
}

impl DecompositionTable {
    /// Coefficients of the row labelled by `partition` (e.g. `[1]`).
    pub fn row_for(&self, partition: &[u32]) -> Option<&Option<Vec<Exact>>> {
        let i = self.rows.iter().position(|r| r.partition() == partition)?;
        self.coefficients.get(i)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("source");
        for c in &self.columns {
            out.push_str(&format!(",\"{}\"", c.partition_label()));
        }
        out.push('\n');
        for (r, coeffs) in self.rows.iter().zip(&self.coefficients) {
            out.push_str(&format!("\"{}\"", r.partition_label()));
            match coeffs {
                Some(v) => v.iter().for_each(|c| out.push_str(&format!(",{}", format_exact(c)))),
                None => self.columns.iter().for_each(|_| out.push_str(",NA")),
            }
            out.push('\n');
        }
        out.push_str(&format!("rank,{}\n", self.rank));
        out.push_str(&format!("lower_rank,{}\n", self.lower_rank));
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("F_{} decomposition, d={}, homogenized to degree {}\n", self.group, self.d, self.t);
        for (r, coeffs) in self.rows.iter().zip(&self.coefficients) {
            let rhs = match coeffs {
                Some(v) => {
                    let terms: Vec<String> = v
                        .iter()
                        .zip(&self.columns)
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(c, col)| {
                            if c.is_one() {
                                format!("F{}", col.partition_label())
                            } else {
                                format!("{} F{}", format_exact(c), col.partition_label())
                            }
                        })
                        .collect();
                    if terms.is_empty() {
                        "0".to_string()
                    } else {
                        terms.join(" + ")
                    }
                }
                None => "(not a combination of the degree-t basis)".to_string(),
            };
            out.push_str(&format!("F{} = {}\n", r.partition_label(), rhs));
        }
        out.push_str(&format!("rank = {} (rows below degree {}: {})\n", self.rank, self.t, self.lower_rank));
        out
    }
}
