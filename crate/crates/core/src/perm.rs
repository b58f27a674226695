//! Permutation subgroups of `S_d`, orbits and coset representatives.
//!
//! Permutations are stored 0-indexed as image arrays: `p[i] = π(i)`. They are
//! read and written 1-indexed at the I/O boundary. Acting on a sequence,
//! `apply(π, k)[i] = k[π(i)]`, and composition is `(π∘ρ)(i) = π(ρ(i))`, which
//! makes `apply(π∘ρ, k) = apply(ρ, apply(π, k))`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::index::MultiIndex;

/// Largest `d` for which `S_d` is enumerated element by element.
pub const MAX_SYMMETRIC_DEGREE: usize = 10;
/// Default cap on enumerated group elements (10!).
pub const DEFAULT_ELEMENT_CAP: u128 = 3_628_800;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation((0..d).collect())
    }

    /// Builds from a 0-indexed image array.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &i in &images {
            if i >= d || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a permutation of 0..{d}")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds from a 1-indexed image array such as `[2, 3, 1]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(format!("{images:?}: images are 1-indexed")));
        }
        Permutation::from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// The cyclic shift `i ↦ i + s (mod d)`.
    pub fn shift(d: usize, s: usize) -> Self {
        Permutation((0..d).map(|i| (i + s) % d).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Permutation(inv)
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        let mut transpositions = 0;
        for start in 0..self.0.len() {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        transpositions % 2 == 0
    }

    /// `out[i] = items[π(i)]`.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Result<Vec<T>> {
        if items.len() != self.0.len() {
            return Err(Error::DimensionMismatch { expected: self.0.len(), found: items.len() });
        }
        Ok(self.0.iter().map(|&i| items[i].clone()).collect())
    }

    pub fn apply(&self, k: &MultiIndex) -> Result<MultiIndex> {
        Ok(MultiIndex::new(self.permute(k.exponents())?))
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, 1-indexed; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push((i + 1).to_string());
                i = self.0[i];
            }
            write!(f, "({})", cycle.join(" "))?;
            any = true;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Symmetric,
    Cyclic,
    Generated(Vec<Permutation>),
}

/// A subgroup `G ⊆ S_d`.
#[derive(Clone, Debug)]
pub struct PermGroup {
    d: usize,
    kind: GroupKind,
    order: u128,
    /// Closure of the generators; only populated for generated groups.
    closure: Vec<Permutation>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.kind == other.kind
    }
}

impl PermGroup {
    pub fn symmetric(d: usize) -> Self {
        let order = (1..=d as u128).fold(1u128, u128::saturating_mul);
        PermGroup { d, kind: GroupKind::Symmetric, order, closure: Vec::new() }
    }

    pub fn cyclic(d: usize) -> Self {
        PermGroup { d, kind: GroupKind::Cyclic, order: d.max(1) as u128, closure: Vec::new() }
    }

    pub fn trivial(d: usize) -> Self {
        PermGroup::generated(d, Vec::new()).expect("trivial group")
    }

    /// Closes the generators under composition (breadth first), refusing
    /// groups larger than [`DEFAULT_ELEMENT_CAP`].
    pub fn generated(d: usize, generators: Vec<Permutation>) -> Result<Self> {
        PermGroup::generated_with_cap(d, generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn generated_with_cap(d: usize, generators: Vec<Permutation>, cap: u128) -> Result<Self> {
        for g in &generators {
            if g.degree() != d {
                return Err(Error::DimensionMismatch { expected: d, found: g.degree() });
            }
        }
        let id = Permutation::identity(d);
        let mut closure = vec![id.clone()];
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &generators {
                let q = g.compose(&p);
                if seen.insert(q.clone()) {
                    if closure.len() as u128 >= cap {
                        return Err(Error::CapExceeded { what: "generated group", size: closure.len() as u128 + 1, cap });
                    }
                    closure.push(q.clone());
                    queue.push_back(q);
                }
            }
        }
        let order = closure.len() as u128;
        Ok(PermGroup { d, kind: GroupKind::Generated(generators), order, closure })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    /// Saturates at `u128::MAX` (from `S_35` on).
    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self.kind, GroupKind::Symmetric) || self.order == PermGroup::symmetric(self.d).order
    }

    /// Short tag used in reports: `sym`, `cyc` or `gen`.
    pub fn tag(&self) -> String {
        match &self.kind {
            GroupKind::Symmetric => format!("S{}", self.d),
            GroupKind::Cyclic => format!("C{}", self.d),
            GroupKind::Generated(g) => {
                let gens: Vec<String> = g.iter().map(|p| p.to_string()).collect();
                format!("<{}>", gens.join(","))
            }
        }
    }

    /// Each element exactly once, identity first, in a fixed order.
    pub fn elements(&self) -> Result<Elements<'_>> {
        self.elements_with_cap(DEFAULT_ELEMENT_CAP)
    }

    pub fn elements_with_cap(&self, cap: u128) -> Result<Elements<'_>> {
        if self.order > cap || (matches!(self.kind, GroupKind::Symmetric) && self.d > MAX_SYMMETRIC_DEGREE) {
            return Err(Error::CapExceeded { what: "group enumeration", size: self.order, cap });
        }
        Ok(match &self.kind {
            GroupKind::Symmetric => Elements::Lex(Some(Permutation::identity(self.d))),
            GroupKind::Cyclic => Elements::Shift { d: self.d, next: 0 },
            GroupKind::Generated(_) => Elements::Listed(self.closure.iter()),
        })
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.d {
            return false;
        }
        match &self.kind {
            GroupKind::Symmetric => true,
            GroupKind::Cyclic => (0..self.d.max(1)).any(|s| *p == Permutation::shift(self.d, s)),
            GroupKind::Generated(_) => self.closure.contains(p),
        }
    }

    fn check_dim(&self, d: usize) -> Result<()> {
        if d != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: d });
        }
        Ok(())
    }

    /// `{π(k) : π ∈ G}` without duplicates, sorted descending.
    pub fn orbit(&self, k: &MultiIndex) -> Result<Vec<MultiIndex>> {
        self.check_dim(k.dim())?;
        if matches!(self.kind, GroupKind::Symmetric) {
            return Ok(distinct_permutations(k));
        }
        let mut set = BTreeSet::new();
        for p in self.elements()? {
            set.insert(p.apply(k)?);
        }
        Ok(set.into_iter().rev().collect())
    }

    /// True iff the `G`-orbit of `k` is its whole `S_d`-orbit, which is the
    /// same as `F_G(k) = F_G(π(k))` for every `π ∈ S_d`.
    pub fn is_invariant(&self, k: &MultiIndex) -> Result<bool> {
        self.check_dim(k.dim())?;
        let full = symmetric_orbit_size(k);
        Ok(self.orbit(k)?.len() as u128 == full)
    }

    /// One representative per left coset `πG` of `G` in `S_d`, identity first.
    pub fn coset_representatives(&self) -> Result<Vec<Permutation>> {
        let sym = PermGroup::symmetric(self.d);
        let members: Vec<Permutation> = self.elements()?.collect();
        let mut covered: HashSet<Permutation> = HashSet::new();
        let mut reps = Vec::new();
        for p in sym.elements()? {
            if covered.contains(&p) {
                continue;
            }
            for g in &members {
                covered.insert(p.compose(g));
            }
            reps.push(p);
        }
        Ok(reps)
    }
}

/// Iterator over group elements.
pub enum Elements<'a> {
    Lex(Option<Permutation>),
    Shift { d: usize, next: usize },
    Listed(std::slice::Iter<'a, Permutation>),
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        match self {
            Elements::Lex(cur) => {
                let out = cur.take()?;
                let mut next = out.0.clone();
                if next_lex_permutation(&mut next) {
                    *cur = Some(Permutation(next));
                }
                Some(out)
            }
            Elements::Shift { d, next } => {
                if *next >= (*d).max(1) {
                    return None;
                }
                let p = Permutation::shift(*d, *next);
                *next += 1;
                Some(p)
            }
            Elements::Listed(it) => it.next().cloned(),
        }
    }
}

fn next_lex_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All distinct rearrangements of `k`, in descending lexicographic order.
fn distinct_permutations(k: &MultiIndex) -> Vec<MultiIndex> {
    let mut e: Vec<u32> = k.exponents().to_vec();
    e.sort_unstable();
    let mut out = vec![MultiIndex::new(e.clone())];
    while next_lex_permutation(&mut e) {
        out.push(MultiIndex::new(e.clone()));
    }
    out.reverse();
    out
}

/// `d! / ∏ m_v!` where `m_v` counts repeated entries of `k`.
pub fn symmetric_orbit_size(k: &MultiIndex) -> u128 {
    let mut sorted = k.exponents().to_vec();
    sorted.sort_unstable();
    let mut size: u128 = 1;
    let mut run = 0u128;
    for (i, v) in sorted.iter().enumerate() {
        run = if i > 0 && sorted[i - 1] == *v { run + 1 } else { 1 };
        // Incremental multinomial: multiply by position, divide by run length.
        size = size * (i as u128 + 1) / run;
    }
    size
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    fn p1(images: &[usize]) -> Permutation {
        Permutation::from_one_based(images).unwrap()
    }

    #[test]
    fn element_counts() {
        let c3: Vec<_> = PermGroup::cyclic(3).elements().unwrap().collect();
        assert_eq!(c3.len(), 3);
        assert!(c3[0].is_identity());
        let s3: Vec<_> = PermGroup::symmetric(3).elements().unwrap().collect();
        assert_eq!(s3.len(), 6);
        assert!(s3[0].is_identity());
        let g = PermGroup::generated(3, vec![p1(&[2, 1, 3])]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.elements().unwrap().count(), 2);
    }

    #[test]
    fn symmetric_enumeration_is_capped() {
        assert!(PermGroup::symmetric(11).elements().is_err());
        assert_eq!(PermGroup::symmetric(11).order(), 39_916_800);
        assert_eq!(PermGroup::symmetric(100).order(), u128::MAX);
        assert!(PermGroup::symmetric(4).elements_with_cap(10).is_err());
    }

    #[test]
    fn apply_examples() {
        // The 3-cycle 1→2→3→1.
        assert_eq!(p1(&[2, 3, 1]).apply(&mi(&[2, 1, 0])).unwrap(), mi(&[1, 0, 2]));
        assert_eq!(Permutation::identity(3).apply(&mi(&[4, 0, 1])).unwrap(), mi(&[4, 0, 1]));
        assert_eq!(p1(&[2, 1, 3]).permute(&['a', 'b', 'c']).unwrap(), vec!['b', 'a', 'c']);
        assert!(p1(&[2, 1, 3]).apply(&mi(&[1, 0])).is_err());
    }

    #[test]
    fn invalid_permutations_rejected() {
        assert!(Permutation::from_one_based(&[1, 1, 3]).is_err());
        assert!(Permutation::from_one_based(&[0, 1, 2]).is_err());
        assert!(Permutation::from_one_based(&[1, 2, 4]).is_err());
        assert!(PermGroup::generated(3, vec![Permutation::identity(4)]).is_err());
    }

    #[test]
    fn orbit_examples() {
        let c3 = PermGroup::cyclic(3);
        let o = c3.orbit(&mi(&[2, 1, 0])).unwrap();
        assert_eq!(o.len(), 3);
        for e in [[2, 1, 0], [1, 0, 2], [0, 2, 1]] {
            assert!(o.contains(&mi(&e)));
        }
        assert_eq!(PermGroup::symmetric(3).orbit(&mi(&[2, 1, 0])).unwrap().len(), 6);
        let o4 = PermGroup::cyclic(4).orbit(&mi(&[1, 0, 1, 0])).unwrap();
        assert_eq!(o4, vec![mi(&[1, 0, 1, 0]), mi(&[0, 1, 0, 1])]);
    }

    #[test]
    fn cyclic_invariance() {
        let c3 = PermGroup::cyclic(3);
        assert!(c3.is_invariant(&mi(&[3, 0, 0])).unwrap());
        assert!(c3.is_invariant(&mi(&[1, 1, 1])).unwrap());
        assert!(!c3.is_invariant(&mi(&[2, 1, 0])).unwrap());
        assert!(!c3.is_invariant(&mi(&[1, 2, 0])).unwrap());
    }

    #[test]
    fn coset_representative_counts() {
        let r = PermGroup::symmetric(3).coset_representatives().unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].is_identity());
        assert_eq!(PermGroup::cyclic(3).coset_representatives().unwrap().len(), 2);
        assert_eq!(PermGroup::cyclic(4).coset_representatives().unwrap().len(), 6);
    }

    #[test]
    fn parity_and_display() {
        assert!(p1(&[2, 3, 1]).is_even());
        assert!(!p1(&[2, 1, 3]).is_even());
        assert_eq!(p1(&[2, 3, 1]).to_string(), "(1 2 3)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn multinomial_orbit_size() {
        assert_eq!(symmetric_orbit_size(&mi(&[2, 1, 0])), 6);
        assert_eq!(symmetric_orbit_size(&mi(&[1, 0, 1, 0])), 6);
        assert_eq!(symmetric_orbit_size(&mi(&[2, 0, 0, 0])), 4);
        assert_eq!(symmetric_orbit_size(&mi(&[1, 1, 1])), 1);
    }
}
