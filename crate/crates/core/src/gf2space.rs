//! Binary projective subgeometries of a Veldkamp space.
//!
//! Hyperplane complements compose by XOR along size-three Veldkamp lines,
//! so a family of Veldkamp points forms a PG(d,2) exactly when its
//! complements, together with zero, make up a (d+1)-dimensional GF(2)
//! subspace. All searches here work on those complement vectors.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperplanes::ContainmentPoset;
use crate::veldkamp::{VeldkampLine, VeldkampSpace};

/// Number of lines of PG(d,2).
pub fn pg_line_count(d: usize) -> usize {
    ((1usize << (d + 1)) - 1) * ((1usize << d) - 1) / 3
}

pub fn pg_point_count(d: usize) -> usize {
    (1usize << (d + 1)) - 1
}

/// `Some(d)` when `size == 2^(d+1) - 1`.
pub fn dimension_for_size(size: usize) -> Option<usize> {
    let n = size + 1;
    (size > 0 && n.is_power_of_two()).then(|| n.trailing_zeros() as usize - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjectiveSubspace {
    members: Vec<usize>,
    dimension: usize,
    representative: Option<usize>,
}

impl ProjectiveSubspace {
    /// Checks that `members` (hyperplane indices of `space`) is a PG(d,2)
    /// under the complement coordinatization.
    pub fn certify(space: &VeldkampSpace, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        let cat = space.catalog();
        if let Some(&bad) = members.iter().find(|&&m| m >= cat.len()) {
            return Err(Error::InvalidParameter(format!("hyperplane index {bad} out of range")));
        }
        let dimension = dimension_for_size(members.len())
            .ok_or_else(|| Error::Structural(format!("{} points is not the size of a PG(d,2)", members.len())))?;
        let vectors: HashSet<u64> = members.iter().map(|&m| cat.complement_bits(m)).collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                let x = cat.complement_bits(a) ^ cat.complement_bits(b);
                if !vectors.contains(&x) {
                    return Err(Error::Structural(format!(
                        "hyperplanes {a} and {b} have no third point inside the family"
                    )));
                }
            }
        }
        let representative = common_subset_member(space, &members);
        Ok(Self { members, dimension, representative })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, h: usize) -> bool {
        self.members.binary_search(&h).is_ok()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// The member contained, as a point set, in every other member.
    pub fn representative(&self) -> Option<usize> {
        self.representative
    }

    /// Size-three lines with all three points inside this subspace.
    pub fn induced_lines(&self, space: &VeldkampSpace) -> Vec<VeldkampLine> {
        space.lines3().iter().filter(|l| l.members().iter().all(|&m| self.contains(m))).copied().collect()
    }
}

fn common_subset_member(space: &VeldkampSpace, members: &[usize]) -> Option<usize> {
    let cat = space.catalog();
    members.iter().copied().find(|&r| {
        let pr = cat.points(r);
        members.iter().all(|&m| pr.is_subset(&cat.points(m)))
    })
}

/// Representative hyperplane computed from the containment poset.
pub fn representative_hyperplane(sub: &ProjectiveSubspace, poset: &ContainmentPoset) -> Option<usize> {
    sub.members.iter().copied().find(|&r| sub.members.iter().all(|&m| poset.is_contained(r, m)))
}

/// Common members of two subspaces. Intersections of linear subspaces are
/// linear, so the result is XOR-closed (possibly empty).
pub fn intersect(a: &ProjectiveSubspace, b: &ProjectiveSubspace) -> Vec<usize> {
    a.members.iter().copied().filter(|&m| b.contains(m)).collect()
}

pub fn shared_lines(space: &VeldkampSpace, a: &ProjectiveSubspace, b: &ProjectiveSubspace) -> Vec<VeldkampLine> {
    space.lines3().iter().filter(|l| l.members().iter().all(|&m| a.contains(m) && b.contains(m))).copied().collect()
}

/// XOR-closure search over a set of nonzero GF(2) vectors.
///
/// `collinear[i]` holds every `j` with `v[i] ^ v[j]` also in the set; a
/// vector extends a span S exactly when it is collinear with every member
/// of S.
pub struct XorClosureSearch {
    vectors: Vec<u64>,
    lookup: HashMap<u64, usize>,
    collinear: Vec<FixedBitSet>,
}

impl XorClosureSearch {
    pub fn new(vectors: Vec<u64>) -> Self {
        let lookup: HashMap<u64, usize> = vectors.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = vectors.len();
        let mut collinear = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if lookup.contains_key(&(vectors[i] ^ vectors[j])) {
                    collinear[i].insert(j);
                    collinear[j].insert(i);
                }
            }
        }
        Self { vectors, lookup, collinear }
    }

    pub fn from_space(space: &VeldkampSpace) -> Self {
        let cat = space.catalog();
        Self::new((0..cat.len()).map(|h| cat.complement_bits(h)).collect())
    }

    fn candidates(&self, span: &[usize]) -> FixedBitSet {
        let mut c = self.collinear[span[0]].clone();
        for &s in &span[1..] {
            c.intersect_with(&self.collinear[s]);
        }
        for &s in span {
            c.set(s, false);
        }
        c
    }

    fn extend(&self, span: &[usize], v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = span.to_vec();
        out.push(v);
        out.extend(span.iter().map(|&s| self.lookup[&(self.vectors[s] ^ self.vectors[v])]));
        out.sort_unstable();
        out
    }

    /// Smallest XOR-closed family containing `seed`, or `None` if some
    /// required XOR is missing from the vector set.
    pub fn closure(&self, seed: &[usize]) -> Option<Vec<usize>> {
        let mut span: Vec<usize> = Vec::new();
        for &v in seed {
            if span.contains(&v) {
                continue;
            }
            if span.is_empty() {
                span.push(v);
                continue;
            }
            if !self.candidates(&span).contains(v) {
                return None;
            }
            span = self.extend(&span, v);
        }
        Some(span)
    }

    /// Every XOR-closed family (every embedded PG(d,2), d >= 0), each
    /// reported once. Also returns which of them admit no extension.
    pub fn all_spans(&self) -> Vec<(Vec<usize>, bool)> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..self.vectors.len()).map(|i| vec![i]).collect();
        for s in &stack {
            seen.insert(s.clone());
        }
        while let Some(span) = stack.pop() {
            let cands = self.candidates(&span);
            let maximal = cands.count_ones(..) == 0;
            for v in cands.ones() {
                let next = self.extend(&span, v);
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
            out.push((span, maximal));
        }
        out.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
        out
    }

    /// Inclusion-maximal XOR-closed families.
    pub fn maximal_spans(&self) -> Vec<Vec<usize>> {
        self.all_spans().into_iter().filter(|(_, m)| *m).map(|(s, _)| s).collect()
    }

    /// XOR-closed families of exactly `size` vectors that contain `required`.
    pub fn spans_containing(&self, required: &[usize], size: usize) -> Vec<Vec<usize>> {
        let starts: Vec<Vec<usize>> = if required.is_empty() {
            (0..self.vectors.len()).map(|i| vec![i]).collect()
        } else {
            match self.closure(required) {
                Some(span) => vec![span],
                None => return Vec::new(),
            }
        };
        let mut seen = HashSet::new();
        let mut found = Vec::new();
        for s in &starts {
            if s.len() == size {
                found.push(s.clone());
            }
            seen.insert(s.clone());
        }
        let mut stack = starts;
        while let Some(span) = stack.pop() {
            if span.len() >= size {
                continue;
            }
            for v in self.candidates(&span).ones() {
                let next = self.extend(&span, v);
                if seen.insert(next.clone()) {
                    if next.len() == size {
                        found.push(next);
                    } else {
                        stack.push(next);
                    }
                }
            }
        }
        found.sort();
        found
    }
}

/// Every projective subspace (d >= 0) of the size-three subgeometry.
pub fn all_subspaces(space: &VeldkampSpace) -> Vec<ProjectiveSubspace> {
    XorClosureSearch::from_space(space)
        .all_spans()
        .into_iter()
        .map(|(s, _)| ProjectiveSubspace::certify(space, s).expect("closed by construction"))
        .collect()
}

/// Inclusion-maximal subspaces of dimension at least one, largest first.
/// Isolated Veldkamp points (degree zero) are not reported here.
pub fn maximal_subspaces(space: &VeldkampSpace) -> Vec<ProjectiveSubspace> {
    XorClosureSearch::from_space(space)
        .maximal_spans()
        .into_iter()
        .filter(|s| s.len() >= 3)
        .map(|s| ProjectiveSubspace::certify(space, s).expect("closed by construction"))
        .collect()
}

/// All Fano planes (maximal or embedded) containing every point of `required`.
pub fn find_fano_planes_with_points(space: &VeldkampSpace, required: &[usize]) -> Vec<ProjectiveSubspace> {
    if required.iter().any(|&r| r >= space.point_count()) {
        return Vec::new();
    }
    XorClosureSearch::from_space(space)
        .spans_containing(required, 7)
        .into_iter()
        .map(|s| ProjectiveSubspace::certify(space, s).expect("closed by construction"))
        .collect()
}

/// A Fano plane with one point and its three lines removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaschConfiguration {
    pub removed: usize,
    pub points: Vec<usize>,
    pub lines: Vec<VeldkampLine>,
}

impl PaschConfiguration {
    /// Six points, four lines, every point on exactly two lines.
    pub fn is_valid(&self) -> bool {
        self.points.len() == 6
            && self.lines.len() == 4
            && self.points.iter().all(|&p| self.lines.iter().filter(|l| l.contains(p)).count() == 2)
    }
}

pub fn pasch_from_fano(
    space: &VeldkampSpace,
    plane: &ProjectiveSubspace,
    removed: usize,
) -> Result<PaschConfiguration> {
    if plane.dimension() != 2 {
        return Err(Error::InvalidParameter(format!("expected a Fano plane, got a PG({},2)", plane.dimension())));
    }
    if !plane.contains(removed) {
        return Err(Error::InvalidParameter(format!("hyperplane {removed} is not on the plane")));
    }
    let induced = plane.induced_lines(space);
    if induced.len() != 7 {
        return Err(Error::Structural(format!("plane has {} induced lines, not 7", induced.len())));
    }
    let pasch = PaschConfiguration {
        removed,
        points: plane.members().iter().copied().filter(|&m| m != removed).collect(),
        lines: induced.into_iter().filter(|l| !l.contains(removed)).collect(),
    };
    if !pasch.is_valid() {
        return Err(Error::Structural("residual configuration is not a Pasch configuration".into()));
    }
    Ok(pasch)
}

/// The family of hyperplanes containing every point of order at least two,
/// when that family is a PG(3,2). For D̃ₙ this is the distinguished PG(3,2)
/// shared by every n.
pub fn distinguished_subspace(space: &VeldkampSpace) -> Option<ProjectiveSubspace> {
    let cat = space.catalog();
    let s = cat.structure();
    let core: Vec<usize> =
        (0..s.point_count()).filter(|&p| s.point_order(p).map(|o| o >= 2).unwrap_or(false)).collect();
    let core_set = crate::pointset::PointSet::from_points(s.point_count(), core).ok()?;
    cat.lookup_bits(core_set.bits())?;
    let members = cat.hyperplanes().iter().filter(|h| core_set.is_subset(&h.points)).map(|h| h.index);
    ProjectiveSubspace::certify(space, members).ok().filter(|sub| sub.dimension() == 3)
}

/// Lines of `sub` that form the whole intersection of `sub` with some
/// subspace in `others` not containing it.
pub fn shared_lines_with_others(
    space: &VeldkampSpace,
    sub: &ProjectiveSubspace,
    others: &[ProjectiveSubspace],
) -> Vec<VeldkampLine> {
    let mut lines: Vec<VeldkampLine> = others
        .iter()
        .filter(|m| !sub.is_subspace_of(m))
        .filter_map(|m| {
            let common = intersect(sub, m);
            (common.len() == 3).then(|| VeldkampLine::new(common[0], common[1], common[2]))
        })
        .filter(|l| space.contains_line(l))
        .collect();
    lines.sort_unstable();
    lines.dedup();
    lines
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceIntersection {
    pub a: usize,
    pub b: usize,
    pub members: Vec<usize>,
    /// `None` for the empty intersection.
    pub dimension: Option<usize>,
}

/// Maximal subspaces, their pairwise intersections, and which maximal
/// subspaces hold each Veldkamp point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceHierarchy {
    pub maximal: Vec<ProjectiveSubspace>,
    pub intersections: Vec<SubspaceIntersection>,
    pub membership: Vec<Vec<usize>>,
    pub distinguished: Option<ProjectiveSubspace>,
}

impl SubspaceHierarchy {
    pub fn build(space: &VeldkampSpace) -> Self {
        let maximal = maximal_subspaces(space);
        let mut intersections = Vec::new();
        for i in 0..maximal.len() {
            for j in i + 1..maximal.len() {
                let members = intersect(&maximal[i], &maximal[j]);
                let dimension = dimension_for_size(members.len());
                intersections.push(SubspaceIntersection { a: i, b: j, members, dimension });
            }
        }
        let membership = (0..space.point_count())
            .map(|h| (0..maximal.len()).filter(|&i| maximal[i].contains(h)).collect())
            .collect();
        let distinguished = distinguished_subspace(space);
        Self { maximal, intersections, membership, distinguished }
    }

    /// Lines of the distinguished subspace shared with maximal subspaces
    /// that do not contain it.
    pub fn distinguished_shared_lines(&self, space: &VeldkampSpace) -> Vec<VeldkampLine> {
        self.distinguished.as_ref().map(|d| shared_lines_with_others(space, d, &self.maximal)).unwrap_or_default()
    }

    pub fn count_by_dimension(&self, d: usize) -> usize {
        self.maximal.iter().filter(|s| s.dimension() == d).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperplanes::enumerate_hyperplanes;
    use crate::incidence::build_extended_dynkin_d;
    use crate::veldkamp::build_veldkamp_space;

    fn space(n: usize) -> VeldkampSpace {
        build_veldkamp_space(enumerate_hyperplanes(&build_extended_dynkin_d(n).unwrap()).unwrap())
    }

    fn dims(subs: &[ProjectiveSubspace]) -> Vec<usize> {
        subs.iter().map(|s| s.dimension()).collect()
    }

    #[test]
    fn pg_laws() {
        assert_eq!([2, 3, 4, 5].map(pg_line_count), [7, 35, 155, 651]);
        assert_eq!(dimension_for_size(7), Some(2));
        assert_eq!(dimension_for_size(1), Some(0));
        assert_eq!(dimension_for_size(6), None);
        assert_eq!(dimension_for_size(0), None);
    }

    #[test]
    fn rank3_vectors_form_one_fano_plane() {
        let search = XorClosureSearch::new((1..8).collect());
        assert_eq!(search.maximal_spans(), vec![(0..7).collect::<Vec<_>>()]);
        // 7 points + 7 lines + the plane itself
        assert_eq!(search.all_spans().len(), 15);
    }

    #[test]
    fn closure_rejects_missing_xor() {
        let search = XorClosureSearch::new(vec![0b001, 0b010, 0b100]);
        assert_eq!(search.closure(&[0]), Some(vec![0]));
        assert_eq!(search.closure(&[0, 1]), None);
    }

    #[test]
    fn d4_single_pg32() {
        let sp = space(4);
        let max = maximal_subspaces(&sp);
        assert_eq!(dims(&max), vec![3]);
        assert_eq!(max[0].len(), 15);
        assert_eq!(max[0].induced_lines(&sp).len(), 35);
        let isolated = sp.catalog().index_of_points(&[0, 1, 3, 4]).unwrap();
        assert!(!max[0].contains(isolated));
        assert_eq!(max[0].representative(), Some(sp.catalog().index_of_points(&[2]).unwrap()));
        let poset = sp.catalog().containment_poset();
        assert_eq!(representative_hyperplane(&max[0], &poset), max[0].representative());
    }

    #[test]
    fn d5_pg32_and_two_fano_planes() {
        let sp = space(5);
        let max = maximal_subspaces(&sp);
        assert_eq!(dims(&max), vec![3, 2, 2]);
        assert!(intersect(&max[1], &max[2]).is_empty());
        assert_eq!(shared_lines(&sp, &max[0], &max[1]).len(), 1);
        assert_eq!(shared_lines(&sp, &max[0], &max[2]).len(), 1);
        assert!(shared_lines(&sp, &max[1], &max[2]).is_empty());
    }

    #[test]
    fn d6_hierarchy() {
        let sp = space(6);
        let h = SubspaceHierarchy::build(&sp);
        assert_eq!(dims(&h.maximal), vec![4, 2, 2, 1]);
        assert_eq!(h.maximal[0].induced_lines(&sp).len(), 155);
        assert_eq!(h.maximal[0].representative(), Some(0));
        let dist = h.distinguished.as_ref().unwrap();
        assert!(dist.is_subspace_of(&h.maximal[0]));
        assert_eq!(h.distinguished_shared_lines(&sp).len(), 2);
    }

    #[test]
    fn d7_and_d8_big_intersections() {
        let sp7 = space(7);
        let max7 = maximal_subspaces(&sp7);
        assert_eq!(dims(&max7), vec![4, 4, 3, 3, 1]);
        assert_eq!(intersect(&max7[0], &max7[1]).len(), 15);
        assert!(intersect(&max7[2], &max7[3]).is_empty());

        let sp8 = space(8);
        let max8 = maximal_subspaces(&sp8);
        assert_eq!(dims(&max8), vec![5, 4, 3, 3, 3, 3, 2]);
        assert_eq!(intersect(&max8[0], &max8[1]).len(), 15);
    }

    #[test]
    fn d8_exceptional_fano_and_pasch() {
        let sp = space(8);
        let planes = find_fano_planes_with_points(&sp, &[41, 80]);
        assert_eq!(planes.len(), 1);
        assert!(planes[0].contains(100));
        let pasch = pasch_from_fano(&sp, &planes[0], 100).unwrap();
        assert!(pasch.is_valid());
        assert!(matches!(pasch_from_fano(&sp, &planes[0], 0), Err(Error::InvalidParameter(_))));
        assert!(find_fano_planes_with_points(&sp, &[0, 41, 80]).is_empty());
    }

    #[test]
    fn certify_rejects_non_subspaces() {
        let sp = space(4);
        assert!(ProjectiveSubspace::certify(&sp, [0, 1]).is_err());
        let max = maximal_subspaces(&sp);
        let line = max[0].induced_lines(&sp)[0].members();
        let sub = ProjectiveSubspace::certify(&sp, line).unwrap();
        assert_eq!(sub.dimension(), 1);
        assert!(ProjectiveSubspace::certify(&sp, [line[0], line[1], 13]).is_err());
    }

    #[test]
    fn every_subspace_obeys_line_law() {
        for n in 4..=6 {
            let sp = space(n);
            for sub in all_subspaces(&sp) {
                assert_eq!(sub.induced_lines(&sp).len(), pg_line_count(sub.dimension()));
            }
        }
    }
}
