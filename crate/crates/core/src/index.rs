//! Exponent vectors of monomials and their enumeration.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector `k = (k_1, ..., k_d)` of the monomial `x_1^k_1 ... x_d^k_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct MultiIndex {
    exponents: Vec<u32>,
    degree: u32,
}

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().sum();
        MultiIndex { exponents, degree }
    }

    pub fn zeros(d: usize) -> Self {
        MultiIndex::new(vec![0; d])
    }

    /// `(j, 0, ..., 0)` in dimension `d`.
    pub fn leading(d: usize, j: u32) -> Self {
        let mut e = vec![0; d];
        if d > 0 {
            e[0] = j;
        }
        MultiIndex::new(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `k + e_j`.
    pub fn bumped(&self, j: usize) -> MultiIndex {
        let mut e = self.exponents.clone();
        e[j] += 1;
        MultiIndex::new(e)
    }

    pub fn is_canonical(&self) -> bool {
        self.exponents.windows(2).all(|w| w[0] >= w[1])
    }

    /// Non-increasing sort; the partition labelling the index's `S_d` orbit.
    pub fn canonicalize(&self) -> MultiIndex {
        let mut e = self.exponents.clone();
        e.sort_unstable_by(|a, b| b.cmp(a));
        MultiIndex { exponents: e, degree: self.degree }
    }

    /// Non-zero parts of the canonical form, e.g. `[2, 1, 1]`.
    pub fn partition(&self) -> Vec<u32> {
        self.canonicalize().exponents.into_iter().filter(|&k| k > 0).collect()
    }

    /// Partition label such as `[2,1,1]`.
    pub fn partition_label(&self) -> String {
        let parts: Vec<String> = self.partition().iter().map(|k| k.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(e: Vec<u32>) -> Self {
        MultiIndex::new(e)
    }
}

impl From<MultiIndex> for Vec<u32> {
    fn from(k: MultiIndex) -> Self {
        k.exponents
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn canonicalize(k: &MultiIndex) -> MultiIndex {
    k.canonicalize()
}

/// All exponent vectors of length `d` with total degree `t` (or at most `t`).
///
/// Within a degree the order is lexicographically descending; with
/// `exact_degree == false` the degrees are listed in ascending order.
pub fn enumerate_multi_indices(d: usize, t: u32, exact_degree: bool) -> Vec<MultiIndex> {
    let degrees = if exact_degree { t..=t } else { 0..=t };
    let mut out = Vec::new();
    for deg in degrees {
        let mut buf = vec![0u32; d];
        compositions(&mut buf, 0, deg, &mut out);
    }
    out
}

fn compositions(buf: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if buf.is_empty() {
        if remaining == 0 {
            out.push(MultiIndex::new(Vec::new()));
        }
        return;
    }
    if pos == buf.len() - 1 {
        buf[pos] = remaining;
        out.push(MultiIndex::new(buf.clone()));
        return;
    }
    for k in (0..=remaining).rev() {
        buf[pos] = k;
        compositions(buf, pos + 1, remaining - k, out);
    }
    buf[pos] = 0;
}

/// Partitions of `n` with at most `max_parts` parts, padded with zeros to
/// length `d = max_parts`, in lexicographically descending order.
pub fn partitions(n: u32, max_parts: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut parts = Vec::new();
    partitions_rec(n, n, max_parts, &mut parts, &mut out);
    out.into_iter()
        .map(|mut p: Vec<u32>| {
            p.resize(max_parts, 0);
            MultiIndex::new(p)
        })
        .collect()
}

fn partitions_rec(rem: u32, max: u32, slots: usize, parts: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if rem == 0 {
        out.push(parts.clone());
        return;
    }
    if slots == 0 {
        return;
    }
    for p in (1..=rem.min(max)).rev() {
        parts.push(p);
        partitions_rec(rem - p, p, slots - 1, parts, out);
        parts.pop();
    }
}
