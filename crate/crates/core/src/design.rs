//! Finite multisets of points, given explicitly or as group orbits.

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::point::PointVector;

/// Default cap on the number of points produced by [`DesignSet::expand`].
pub const DEFAULT_EXPANSION_CAP: u128 = 1_000_000;

/// Tolerance used when collapsing float points into a deduplicated view.
pub const DEDUP_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub enum DesignForm {
    Explicit(Vec<PointVector>),
    Orbit { base: Vec<PointVector>, group: PermGroup },
}

/// A design candidate `X`. Duplicates count: averages divide by the multiset size.
#[derive(Clone, Debug)]
pub struct DesignSet {
    d: usize,
    form: DesignForm,
}

/// An expanded point together with the group element that produced it.
#[derive(Clone, Debug)]
pub struct Labelled {
    pub point: PointVector,
    pub base_index: usize,
    pub permutation: Permutation,
}

impl DesignSet {
    pub fn explicit(points: Vec<PointVector>) -> Result<Self> {
        let d = common_dim(&points)?;
        Ok(DesignSet { d, form: DesignForm::Explicit(points) })
    }

    pub fn orbit(base: Vec<PointVector>, group: PermGroup) -> Result<Self> {
        let d = common_dim(&base)?;
        if group.degree() != d {
            return Err(Error::DimensionMismatch { expected: d, found: group.degree() });
        }
        Ok(DesignSet { d, form: DesignForm::Orbit { base, group } })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn form(&self) -> &DesignForm {
        &self.form
    }

    pub fn base_points(&self) -> &[PointVector] {
        match &self.form {
            DesignForm::Explicit(p) => p,
            DesignForm::Orbit { base, .. } => base,
        }
    }

    pub fn group(&self) -> Option<&PermGroup> {
        match &self.form {
            DesignForm::Explicit(_) => None,
            DesignForm::Orbit { group, .. } => Some(group),
        }
    }

    /// Multiset size `|X|`, counting multiplicity.
    pub fn size(&self) -> u128 {
        match &self.form {
            DesignForm::Explicit(p) => p.len() as u128,
            DesignForm::Orbit { base, group } => (base.len() as u128).saturating_mul(group.order()),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    /// Properness depends only on coordinate values, so the base points decide it.
    pub fn is_proper(&self) -> bool {
        self.base_points().iter().all(PointVector::is_proper)
    }

    pub fn is_exact(&self) -> bool {
        self.base_points().iter().all(PointVector::is_exact)
    }

    pub fn expand(&self) -> Result<Vec<PointVector>> {
        self.expand_with_cap(DEFAULT_EXPANSION_CAP)
    }

    pub fn expand_with_cap(&self, cap: u128) -> Result<Vec<PointVector>> {
        Ok(self.expand_labelled(cap)?.into_iter().map(|l| l.point).collect())
    }

    /// The full multiset `{π(p) : p ∈ base, π ∈ G}` with provenance.
    pub fn expand_labelled(&self, cap: u128) -> Result<Vec<Labelled>> {
        let size = self.size();
        if size > cap {
            return Err(Error::CapExceeded { what: "design expansion", size, cap });
        }
        match &self.form {
            DesignForm::Explicit(points) => Ok(points
                .iter()
                .enumerate()
                .map(|(i, p)| Labelled { point: p.clone(), base_index: i, permutation: Permutation::identity(self.d) })
                .collect()),
            DesignForm::Orbit { base, group } => {
                let elements: Vec<Permutation> = group.elements_with_cap(cap)?.collect();
                let mut out = Vec::with_capacity(size as usize);
                for (i, p) in base.iter().enumerate() {
                    for g in &elements {
                        out.push(Labelled { point: p.permuted(g)?, base_index: i, permutation: g.clone() });
                    }
                }
                Ok(out)
            }
        }
    }

    /// Distinct points with their multiplicities, in first-seen order.
    pub fn dedup(&self) -> Result<Vec<(PointVector, usize)>> {
        let mut out: Vec<(PointVector, usize)> = Vec::new();
        for p in self.expand()? {
            match out.iter_mut().find(|(q, _)| q.approx_eq(&p, DEDUP_TOLERANCE)) {
                Some((_, m)) => *m += 1,
                None => out.push((p, 1)),
            }
        }
        Ok(out)
    }
}

fn common_dim(points: &[PointVector]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyDesign)?.dim();
    for p in points {
        if p.dim() != first {
            return Err(Error::DimensionMismatch { expected: first, found: p.dim() });
        }
    }
    Ok(first)
}
