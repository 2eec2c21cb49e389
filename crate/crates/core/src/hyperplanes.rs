//! Geometric hyperplanes: proper point subsets meeting every line in one or
//! two points.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use crate::pointset::PointSet;

pub const DEFAULT_MAX_POINTS: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub index: usize,
    pub points: PointSet,
}

/// Tunables for [`enumerate_hyperplanes_with`].
#[derive(Clone, Copy, Debug)]
pub struct EnumerationOptions {
    pub max_points: usize,
    /// Number of leading points whose in/out choices form one parallel
    /// work unit. `None` picks a default.
    pub chunk_bits: Option<usize>,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self { max_points: DEFAULT_MAX_POINTS, chunk_bits: None }
    }
}

pub fn is_hyperplane(s: &IncidenceStructure, candidate: &PointSet) -> bool {
    candidate.width() == s.point_count() && !candidate.is_full() && s.line_masks().all(|m| candidate.bits() & m != 0)
}

/// All hyperplanes of `s`, in canonical order.
#[derive(Clone, Debug)]
pub struct HyperplaneCatalog {
    structure: IncidenceStructure,
    hyperplanes: Vec<Hyperplane>,
    by_bits: HashMap<u64, usize>,
}

impl HyperplaneCatalog {
    /// Sorts and indexes an arbitrary list of hyperplane point sets.
    pub fn from_point_sets(structure: IncidenceStructure, mut sets: Vec<PointSet>) -> Result<Self> {
        for s in &sets {
            if !is_hyperplane(&structure, s) {
                return Err(Error::NotAHyperplane(s.to_string()));
            }
        }
        sets.sort_by(|a, b| a.canonical_cmp(b));
        sets.dedup();
        let hyperplanes: Vec<Hyperplane> =
            sets.into_iter().enumerate().map(|(index, points)| Hyperplane { index, points }).collect();
        let by_bits = hyperplanes.iter().map(|h| (h.points.bits(), h.index)).collect();
        Ok(Self { structure, hyperplanes, by_bits })
    }

    pub fn structure(&self) -> &IncidenceStructure {
        &self.structure
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn points(&self, index: usize) -> PointSet {
        self.hyperplanes[index].points
    }

    /// Complement of hyperplane `index` as a GF(2) vector.
    pub fn complement_bits(&self, index: usize) -> u64 {
        self.hyperplanes[index].points.complement().bits()
    }

    pub fn lookup_bits(&self, bits: u64) -> Option<usize> {
        self.by_bits.get(&bits).copied()
    }

    pub fn canonical_index_of(&self, points: &PointSet) -> Result<usize> {
        if points.width() != self.structure.point_count() {
            return Err(Error::WidthMismatch { left: points.width(), right: self.structure.point_count() });
        }
        self.lookup_bits(points.bits()).ok_or_else(|| Error::NotAHyperplane(points.to_string()))
    }

    /// Convenience lookup by point list.
    pub fn index_of_points(&self, points: &[usize]) -> Result<usize> {
        let set = PointSet::from_points(self.structure.point_count(), points.iter().copied())?;
        self.canonical_index_of(&set)
    }

    /// For each hyperplane, the indices of the other hyperplanes that
    /// properly contain it.
    pub fn containment_poset(&self) -> ContainmentPoset {
        let above = self
            .hyperplanes
            .iter()
            .map(|h| {
                self.hyperplanes
                    .iter()
                    .filter(|g| g.index != h.index && h.points.is_subset(&g.points))
                    .map(|g| g.index)
                    .collect()
            })
            .collect();
        ContainmentPoset { above }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentPoset {
    above: Vec<Vec<usize>>,
}

impl ContainmentPoset {
    pub fn containing(&self, index: usize) -> &[usize] {
        &self.above[index]
    }

    /// True when hyperplane `a` is a subset of `b` (reflexive).
    pub fn is_contained(&self, a: usize, b: usize) -> bool {
        a == b || self.above[a].binary_search(&b).is_ok()
    }
}

pub fn enumerate_hyperplanes(s: &IncidenceStructure) -> Result<HyperplaneCatalog> {
    enumerate_hyperplanes_with(s, EnumerationOptions::default())
}

/// Exhaustive sweep over all subsets, walked point by point so that a
/// partial assignment is dropped as soon as some line has both endpoints
/// outside. The first `chunk_bits` points split the sweep into independent
/// ranges processed in parallel; the merged result is canonically sorted.
pub fn enumerate_hyperplanes_with(s: &IncidenceStructure, opts: EnumerationOptions) -> Result<HyperplaneCatalog> {
    let p = s.point_count();
    if p > opts.max_points {
        return Err(Error::Capacity { points: p, cap: opts.max_points });
    }
    // lower_nbrs[q]: neighbours of q with smaller index
    let mut lower_nbrs = vec![0u64; p];
    for &(a, b) in s.lines() {
        lower_nbrs[b] |= 1 << a;
    }
    let chunk_bits = opts.chunk_bits.unwrap_or(8).min(p);
    let full = PointSet::full(p).bits();

    let found: Vec<u64> = (0..1u64 << chunk_bits)
        .into_par_iter()
        .flat_map_iter(|prefix| {
            let mut out_sets = Vec::new();
            // prefix bit q set = point q is outside the candidate
            let mut out = 0u64;
            for (q, &nbrs) in lower_nbrs.iter().enumerate().take(chunk_bits) {
                if (prefix >> q) & 1 == 1 {
                    if nbrs & out != 0 {
                        return out_sets.into_iter();
                    }
                    out |= 1 << q;
                }
            }
            sweep(&lower_nbrs, chunk_bits, p, out, &mut out_sets);
            out_sets.retain(|&o| o != 0);
            for o in out_sets.iter_mut() {
                *o = full & !*o;
            }
            out_sets.into_iter()
        })
        .collect();

    let sets = found.into_iter().map(|bits| PointSet::from_bits(p, bits).expect("within width")).collect();
    HyperplaneCatalog::from_point_sets(s.clone(), sets)
}

/// Emits every extension of the partial "outside" mask over points
/// `next..p` in which no line has both endpoints outside.
fn sweep(lower_nbrs: &[u64], next: usize, p: usize, out: u64, acc: &mut Vec<u64>) {
    if next == p {
        acc.push(out);
        return;
    }
    sweep(lower_nbrs, next + 1, p, out, acc);
    if lower_nbrs[next] & out == 0 {
        sweep(lower_nbrs, next + 1, p, out | (1 << next), acc);
    }
}
