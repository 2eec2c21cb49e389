//! The Veldkamp space of an incidence structure: hyperplanes as points,
//! size-three lines `{A, B, complement(A Δ B)}`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperplanes::HyperplaneCatalog;

/// Sorted triple of hyperplane indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VeldkampLine(pub [usize; 3]);

impl VeldkampLine {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        let mut m = [a, b, c];
        m.sort_unstable();
        Self(m)
    }

    pub fn members(&self) -> [usize; 3] {
        self.0
    }

    pub fn contains(&self, h: usize) -> bool {
        self.0.contains(&h)
    }
}

#[derive(Clone, Debug)]
pub struct VeldkampSpace {
    catalog: HyperplaneCatalog,
    lines3: Vec<VeldkampLine>,
    degree: Vec<usize>,
}

/// Index of the hyperplane `complement(A Δ B)`, if it is one.
///
/// Complements compose by XOR: `c(third) = c(A) ^ c(B)`.
pub fn third_point(catalog: &HyperplaneCatalog, a: usize, b: usize) -> Result<Option<usize>> {
    if a == b {
        return Err(Error::InvalidParameter("third_point needs two distinct hyperplanes".into()));
    }
    if a >= catalog.len() || b >= catalog.len() {
        return Err(Error::InvalidParameter(format!("hyperplane index out of range 0..{}", catalog.len())));
    }
    let full = catalog.structure().all_points().bits();
    let third = full & !(catalog.points(a).bits() ^ catalog.points(b).bits());
    Ok(catalog.lookup_bits(third))
}

pub fn build_veldkamp_space(catalog: HyperplaneCatalog) -> VeldkampSpace {
    let n = catalog.len();
    let full = catalog.structure().all_points().bits();
    let mut lines3: Vec<VeldkampLine> = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let catalog = &catalog;
            (a + 1..n).filter_map(move |b| {
                let third = full & !(catalog.points(a).bits() ^ catalog.points(b).bits());
                // emit each triple once, from its two smallest members
                catalog.lookup_bits(third).filter(|&c| c > b).map(|c| VeldkampLine([a, b, c]))
            })
        })
        .collect();
    lines3.sort_unstable();
    lines3.dedup();

    let mut degree = vec![0; n];
    for l in &lines3 {
        for m in l.members() {
            degree[m] += 1;
        }
    }
    VeldkampSpace { catalog, lines3, degree }
}

/// Number of hyperplanes on the full Veldkamp line through `a` and `b`:
/// `a`, `b`, and every `H` with `H∩a = H∩b = a∩b`.
pub fn full_line_size(catalog: &HyperplaneCatalog, a: usize, b: usize) -> Result<usize> {
    Ok(full_line_members(catalog, a, b)?.len())
}

pub fn full_line_members(catalog: &HyperplaneCatalog, a: usize, b: usize) -> Result<Vec<usize>> {
    if a == b {
        return Err(Error::InvalidParameter("a Veldkamp line needs two distinct hyperplanes".into()));
    }
    let (pa, pb) = (catalog.points(a).bits(), catalog.points(b).bits());
    let meet = pa & pb;
    Ok(catalog
        .hyperplanes()
        .iter()
        .filter(|h| h.index == a || h.index == b || (h.points.bits() & pa == meet && h.points.bits() & pb == meet))
        .map(|h| h.index)
        .collect())
}

impl VeldkampSpace {
    pub fn catalog(&self) -> &HyperplaneCatalog {
        &self.catalog
    }

    pub fn point_count(&self) -> usize {
        self.catalog.len()
    }

    pub fn lines3(&self) -> &[VeldkampLine] {
        &self.lines3
    }

    pub fn degree(&self, h: usize) -> usize {
        self.degree[h]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    pub fn contains_line(&self, line: &VeldkampLine) -> bool {
        self.lines3.binary_search(line).is_ok()
    }

    pub fn lines_through(&self, h: usize) -> impl Iterator<Item = &VeldkampLine> + '_ {
        self.lines3.iter().filter(move |l| l.contains(h))
    }

    /// Histogram of distinct full Veldkamp lines by size. A full line is
    /// generated by a pair, and different pairs on it may generate different
    /// lines, so lines are deduplicated by member set. Quadratic in the
    /// number of pairs; only computed on request.
    pub fn full_line_size_histogram(&self) -> BTreeMap<usize, usize> {
        self.distinct_full_lines().into_iter().fold(BTreeMap::new(), |mut acc, members| {
            *acc.entry(members.len()).or_insert(0) += 1;
            acc
        })
    }

    fn distinct_full_lines(&self) -> BTreeSet<Vec<usize>> {
        let n = self.catalog.len();
        (0..n)
            .into_par_iter()
            .flat_map_iter(|a| (a + 1..n).map(move |b| full_line_members(&self.catalog, a, b).expect("a != b")))
            .collect()
    }

    /// Compares the XOR construction with full Veldkamp lines of size
    /// three. The two notions need not agree; the report says by how much.
    pub fn agreement(&self) -> LineAgreement {
        let full = self.distinct_full_lines();
        let size3: Vec<&Vec<usize>> = full.iter().filter(|m| m.len() == 3).collect();
        let size3_in_lines3 = size3.iter().filter(|m| self.contains_line(&VeldkampLine([m[0], m[1], m[2]]))).count();
        let lines3_exact = self
            .lines3
            .iter()
            .filter(|l| {
                let [a, b, c] = l.members();
                [(a, b), (a, c), (b, c)]
                    .iter()
                    .all(|&(x, y)| full_line_size(&self.catalog, x, y).expect("distinct") == 3)
            })
            .count();
        LineAgreement {
            lines3: self.lines3.len(),
            full_size3: size3.len(),
            full_size3_in_lines3: size3_in_lines3,
            lines3_exact,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineAgreement {
    pub lines3: usize,
    pub full_size3: usize,
    pub full_size3_in_lines3: usize,
    /// Triples that are the whole full line through each of their pairs.
    pub lines3_exact: usize,
}

impl LineAgreement {
    pub fn agrees(&self) -> bool {
        self.full_size3 == self.lines3 && self.lines3_exact == self.lines3
    }
}

/// Per-Veldkamp-point record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDiagnostics {
    pub hyperplane: usize,
    pub degree: usize,
    /// Indices into the maximal-subspace list.
    pub memberships: Vec<usize>,
}

/// Degree and maximal-subspace memberships of every Veldkamp point.
/// `memberships` are left empty when no hierarchy is supplied.
pub fn exceptional_diagnostics(
    space: &VeldkampSpace,
    maximal: Option<&[crate::gf2space::ProjectiveSubspace]>,
) -> Vec<PointDiagnostics> {
    (0..space.point_count())
        .map(|h| PointDiagnostics {
            hyperplane: h,
            degree: space.degree(h),
            memberships: maximal
                .map(|subs| subs.iter().enumerate().filter(|(_, s)| s.contains(h)).map(|(i, _)| i).collect())
                .unwrap_or_default(),
        })
        .collect()
}

/// Points lying on at most one size-three line.
pub fn low_degree_points(space: &VeldkampSpace) -> Vec<usize> {
    (0..space.point_count()).filter(|&h| space.degree(h) <= 1).collect()
}
