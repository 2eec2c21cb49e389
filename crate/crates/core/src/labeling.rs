//! Pauli labelings of diagram vertices and the labels they induce on
//! Veldkamp points.
//!
//! A hyperplane's label is the factor-group product of its points' labels.
//! That product is XOR, so the order of the points does not matter; signs
//! only enter through [`crate::pauli::verify_magic_square`].

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2space::{find_fano_planes_with_points, shared_lines_with_others, ProjectiveSubspace};
use crate::hyperplanes::HyperplaneCatalog;
use crate::pauli::{check_generalized_quadrangle, check_gq22, verify_magic_square, MagicSquareVerdict, PauliElement};
use crate::veldkamp::{VeldkampLine, VeldkampSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLabeling {
    name: String,
    labels: Vec<PauliElement>,
}

impl VertexLabeling {
    pub fn new(name: impl Into<String>, labels: Vec<PauliElement>) -> Result<Self> {
        let Some(first) = labels.first() else {
            return Err(Error::InvalidParameter("labeling has no vertices".into()));
        };
        if let Some(bad) = labels.iter().find(|l| l.width() != first.width()) {
            return Err(Error::WidthMismatch { left: first.width(), right: bad.width() });
        }
        Ok(Self { name: name.into(), labels })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn width(&self) -> usize {
        self.labels[0].width()
    }

    pub fn labels(&self) -> &[PauliElement] {
        &self.labels
    }

    pub fn label(&self, vertex: usize) -> PauliElement {
        self.labels[vertex]
    }

    pub fn total_product(&self) -> PauliElement {
        self.labels.iter().fold(PauliElement::identity(self.width()), |acc, l| acc.mul(l).expect("same width"))
    }
}

fn parse_all(name: &str, labels: &[&str]) -> VertexLabeling {
    let labels = labels.iter().map(|s| s.parse().expect("valid builtin")).collect();
    VertexLabeling::new(name, labels).expect("valid builtin")
}

/// The vertex labelings used for D̃₄..D̃₈. Variant 2 exists for n = 6, 7.
pub fn builtin_labeling(n: usize, variant: u8) -> Result<VertexLabeling> {
    let labels: &[&str] = match (n, variant) {
        (4, 1) => &["XI", "IX", "YY", "ZI", "IZ"],
        (5, 1) => &["ZI", "XI", "YI", "IY", "IZ", "IX"],
        (6, 1) => &["ZI", "XI", "YI", "II", "IY", "IZ", "IX"],
        (6, 2) => &["ZI", "XI", "II", "YY", "II", "IZ", "IX"],
        (7, 1) => &["ZI", "XI", "YI", "II", "II", "IY", "IZ", "IX"],
        (7, 2) => &["ZI", "XI", "II", "YI", "IY", "II", "IZ", "IX"],
        (8, 1) => &["XII", "ZII", "YII", "IXI", "IYI", "IZI", "IIY", "IIX", "IIZ"],
        _ => return Err(Error::InvalidParameter(format!("no builtin labeling for n={n} variant {variant}"))),
    };
    Ok(parse_all(&format!("builtin-d{n}-v{variant}"), labels))
}

#[derive(Clone, Debug)]
pub struct LoadedLabeling {
    pub labeling: VertexLabeling,
    pub warnings: Vec<String>,
}

/// Reads `vertex PAULI` pairs (one per line, `#` comments). Every vertex
/// `0..point_count` needs exactly one label. A total product other than the
/// identity is an error unless `allow_nonidentity` is set, in which case it
/// becomes a warning.
pub fn load_labeling(text: &str, point_count: usize, allow_nonidentity: bool) -> Result<LoadedLabeling> {
    let mut slots: Vec<Option<PauliElement>> = vec![None; point_count];
    let mut width: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse { line, message: "expected 'vertex PAULI'".into() });
        }
        let vertex: usize = fields[0]
            .parse()
            .map_err(|_| Error::Parse { line, message: format!("'{}' is not a vertex id", fields[0]) })?;
        let label: PauliElement = fields[1].parse().map_err(|e| match e {
            Error::Parse { message, .. } => Error::Parse { line, message },
            other => other,
        })?;
        match width {
            None => width = Some(label.width()),
            Some(w) if w != label.width() => {
                return Err(Error::Parse {
                    line,
                    message: format!("label {label} has width {}, expected {w}", label.width()),
                })
            }
            _ => {}
        }
        let slot = slots.get_mut(vertex).ok_or_else(|| Error::Parse {
            line,
            message: format!("unknown vertex {vertex} (structure has {point_count} points)"),
        })?;
        if slot.is_some() {
            return Err(Error::Parse { line, message: format!("vertex {vertex} labeled twice") });
        }
        *slot = Some(label);
    }
    let missing: Vec<usize> = (0..point_count).filter(|&v| slots[v].is_none()).collect();
    if !missing.is_empty() {
        return Err(Error::Constraint(format!("vertices without a label: {missing:?}")));
    }
    let labeling = VertexLabeling::new("file", slots.into_iter().map(Option::unwrap).collect())?;
    let mut warnings = Vec::new();
    let total = labeling.total_product();
    if !total.is_identity() {
        let msg = format!("product of all vertex labels is {total}, not the identity");
        if allow_nonidentity {
            warnings.push(msg);
        } else {
            return Err(Error::Constraint(msg));
        }
    }
    Ok(LoadedLabeling { labeling, warnings })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedLabeling {
    labels: Vec<PauliElement>,
}

impl InducedLabeling {
    pub fn label(&self, h: usize) -> PauliElement {
        self.labels[h]
    }

    pub fn labels(&self) -> &[PauliElement] {
        &self.labels
    }

    pub fn width(&self) -> usize {
        self.labels.first().map(|l| l.width()).unwrap_or(0)
    }
}

pub fn induce(labeling: &VertexLabeling, catalog: &HyperplaneCatalog) -> Result<InducedLabeling> {
    let p = catalog.structure().point_count();
    if labeling.labels().len() != p {
        return Err(Error::InvalidParameter(format!(
            "labeling covers {} vertices, structure has {p}",
            labeling.labels().len()
        )));
    }
    let identity = PauliElement::identity(labeling.width());
    let labels = catalog
        .hyperplanes()
        .iter()
        .map(|h| h.points.iter().fold(identity, |acc, v| acc.mul(&labeling.label(v)).expect("same width")))
        .collect();
    Ok(InducedLabeling { labels })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineProductViolation {
    pub line: VeldkampLine,
    pub product: PauliElement,
}

/// Lines whose three labels do not multiply to the identity.
pub fn check_line_products(induced: &InducedLabeling, lines3: &[VeldkampLine]) -> Vec<LineProductViolation> {
    lines3
        .iter()
        .filter_map(|l| {
            let [a, b, c] = l.members();
            let product =
                induced.label(a).mul(&induced.label(b)).and_then(|ab| ab.mul(&induced.label(c))).expect("same width");
            (!product.is_identity()).then_some(LineProductViolation { line: *l, product })
        })
        .collect()
}

/// True when the labels of `members` are pairwise distinct and none is the
/// identity.
pub fn check_bijection(induced: &InducedLabeling, members: &[usize]) -> bool {
    let mut seen = HashSet::new();
    members.iter().all(|&m| {
        let l = induced.label(m);
        !l.is_identity() && seen.insert(l)
    })
}

/// Size-three lines inside `sub` whose labels pairwise commute.
pub fn isotropic_subspace_lines(
    space: &VeldkampSpace,
    induced: &InducedLabeling,
    sub: &ProjectiveSubspace,
) -> Vec<VeldkampLine> {
    let lines = sub.induced_lines(space);
    let triples: Vec<[PauliElement; 3]> = lines.iter().map(|l| l.members().map(|m| induced.label(m))).collect();
    crate::pauli::isotropic_lines(&triples).into_iter().map(|i| lines[i]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticVerdict {
    pub isotropic_lines: usize,
    pub is_gq22: bool,
}

/// Commuting-triple lines of a PG(3,2) and whether they form a GQ(2,2).
pub fn check_w32(
    space: &VeldkampSpace,
    induced: &InducedLabeling,
    sub: &ProjectiveSubspace,
) -> Result<SymplecticVerdict> {
    let iso = isotropic_subspace_lines(space, induced, sub);
    let triples: Vec<[usize; 3]> = iso.iter().map(|l| l.members()).collect();
    let is_gq22 = if triples.len() == 15 && sub.len() == 15 { check_gq22(sub.members(), &triples)? } else { false };
    Ok(SymplecticVerdict { isotropic_lines: iso.len(), is_gq22 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MerminPeresGrid {
    /// Hyperplane indices, `cells[row][column]`.
    pub cells: [[usize; 3]; 3],
    pub labels: [[PauliElement; 3]; 3],
    pub removed_lines: Vec<VeldkampLine>,
    pub verdict: MagicSquareVerdict,
}

/// Drops the two lines that `distinguished` shares with other maximal
/// subspaces from its commuting-line structure, checks that the remaining
/// nine points form a 3x3 grid, lays it out, and evaluates the signs.
///
/// Layout: the anchor is the grid point with the smallest label string;
/// of its two grid lines, the one with the smaller sorted label list is
/// row 0. Remaining rows and columns follow by smallest label.
pub fn extract_mermin_peres(
    space: &VeldkampSpace,
    induced: &InducedLabeling,
    distinguished: &ProjectiveSubspace,
    maximal: &[ProjectiveSubspace],
) -> Result<MerminPeresGrid> {
    if distinguished.dimension() != 3 {
        return Err(Error::Structural(format!("expected a PG(3,2), got a PG({},2)", distinguished.dimension())));
    }
    let shared = shared_lines_with_others(space, distinguished, maximal);
    if shared.len() != 2 {
        return Err(Error::Structural(format!("expected two shared lines, found {}", shared.len())));
    }
    let removed: HashSet<usize> = shared.iter().flat_map(|l| l.members()).collect();
    if removed.len() != 6 {
        return Err(Error::Structural("shared lines are not disjoint".into()));
    }
    let iso = isotropic_subspace_lines(space, induced, distinguished);
    if iso.len() != 15 {
        return Err(Error::Structural(format!("{} commuting lines, expected 15", iso.len())));
    }
    let remaining: Vec<usize> = distinguished.members().iter().copied().filter(|m| !removed.contains(m)).collect();
    let grid_lines: Vec<VeldkampLine> =
        iso.iter().filter(|l| l.members().iter().all(|m| !removed.contains(m))).copied().collect();
    let as_vecs: Vec<Vec<usize>> = grid_lines.iter().map(|l| l.members().to_vec()).collect();
    if grid_lines.len() != 6 || !check_generalized_quadrangle(&remaining, &as_vecs, 2, 1) {
        return Err(Error::Structural("remaining points do not form a 3x3 grid".into()));
    }

    let label_str = |h: usize| induced.label(h).to_string();
    let line_key = |l: &VeldkampLine| {
        let mut k: Vec<String> = l.members().iter().map(|&m| label_str(m)).collect();
        k.sort();
        k
    };
    let anchor = *remaining.iter().min_by_key(|&&h| (label_str(h), h)).expect("nine points");
    let mut through: Vec<VeldkampLine> = grid_lines.iter().filter(|l| l.contains(anchor)).copied().collect();
    through.sort_by_key(line_key);
    let (row0, col0) = (through[0], through[1]);
    let disjoint = |a: &VeldkampLine, b: &VeldkampLine| a.members().iter().all(|m| !b.contains(*m));
    let order = |first: VeldkampLine| {
        let mut rest: Vec<VeldkampLine> = grid_lines.iter().filter(|l| disjoint(l, &first)).copied().collect();
        rest.sort_by_key(line_key);
        [first, rest[0], rest[1]]
    };
    let rows = order(row0);
    let cols = order(col0);
    let mut cells = [[0usize; 3]; 3];
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in cols.iter().enumerate() {
            cells[i][j] = *r
                .members()
                .iter()
                .find(|m| c.contains(**m))
                .ok_or_else(|| Error::Structural("row and column do not meet".into()))?;
        }
    }
    let labels = cells.map(|row| row.map(|h| induced.label(h)));
    let verdict = verify_magic_square(&labels)?;
    Ok(MerminPeresGrid { cells, labels, removed_lines: shared, verdict })
}

fn is_y_only(induced: &InducedLabeling, plane: &ProjectiveSubspace) -> bool {
    plane.members().iter().all(|&m| induced.label(m).uses_only(&['Y']))
}

/// Maximal Fano planes whose labels use only `I` and `Y`.
pub fn find_y_only_fano(induced: &InducedLabeling, maximal: &[ProjectiveSubspace]) -> Vec<ProjectiveSubspace> {
    maximal.iter().filter(|s| s.dimension() == 2 && is_y_only(induced, s)).cloned().collect()
}

/// Every Fano plane, maximal or embedded, whose labels use only `I` and `Y`.
pub fn all_y_only_planes(space: &VeldkampSpace, induced: &InducedLabeling) -> Vec<ProjectiveSubspace> {
    find_fano_planes_with_points(space, &[]).into_iter().filter(|p| is_y_only(induced, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperplanes::enumerate_hyperplanes;
    use crate::incidence::build_extended_dynkin_d;
    use crate::veldkamp::build_veldkamp_space;

    fn labeled(n: usize, variant: u8) -> (VeldkampSpace, InducedLabeling) {
        let cat = enumerate_hyperplanes(&build_extended_dynkin_d(n).unwrap()).unwrap();
        let induced = induce(&builtin_labeling(n, variant).unwrap(), &cat).unwrap();
        (build_veldkamp_space(cat), induced)
    }

    #[test]
    fn builtins_multiply_to_identity() {
        for (n, v) in [(4, 1), (5, 1), (6, 1), (6, 2), (7, 1), (7, 2), (8, 1)] {
            let l = builtin_labeling(n, v).unwrap();
            assert_eq!(l.labels().len(), n + 1);
            assert!(l.total_product().is_identity(), "n={n} v={v}");
        }
        assert!(builtin_labeling(4, 2).is_err());
        assert!(builtin_labeling(9, 1).is_err());
    }

    #[test]
    fn builtin_spot_checks() {
        let l4 = builtin_labeling(4, 1).unwrap();
        assert_eq!(l4.label(0).to_string(), "XI");
        assert_eq!(l4.label(2).to_string(), "YY");
        let l8 = builtin_labeling(8, 1).unwrap();
        assert_eq!(l8.label(1).to_string(), "ZII");
        assert_eq!(l8.label(8).to_string(), "IIZ");
        let l6 = builtin_labeling(6, 2).unwrap();
        assert_eq!(l6.label(3).to_string(), "YY");
        assert!(l6.label(4).is_identity());
    }

    #[test]
    fn induced_d4_examples() {
        let (sp, induced) = labeled(4, 1);
        let cat = sp.catalog();
        let h02 = cat.index_of_points(&[0, 2]).unwrap();
        assert_eq!(induced.label(h02).to_string(), "ZY");
        let h2 = cat.index_of_points(&[2]).unwrap();
        let h0134 = cat.index_of_points(&[0, 1, 3, 4]).unwrap();
        assert_eq!(induced.label(h2), induced.label(h0134));
        assert_eq!(induced.label(h2).to_string(), "YY");
    }

    #[test]
    fn perturbed_labeling_breaks_line_products() {
        let cat = enumerate_hyperplanes(&build_extended_dynkin_d(4).unwrap()).unwrap();
        let mut labels = builtin_labeling(4, 1).unwrap().labels().to_vec();
        labels[0] = "ZI".parse().unwrap();
        let bad = VertexLabeling::new("bad", labels).unwrap();
        let induced = induce(&bad, &cat).unwrap();
        let sp = build_veldkamp_space(cat);
        assert!(!check_line_products(&induced, sp.lines3()).is_empty());
    }

    #[test]
    fn d6_variant2_collisions() {
        let (sp, induced) = labeled(6, 2);
        let all: Vec<usize> = (0..sp.point_count()).collect();
        assert!(!check_bijection(&induced, &all));
        let low = crate::veldkamp::low_degree_points(&sp);
        let line = sp.lines_through(low[0]).next().unwrap();
        assert!(line.members().iter().all(|&m| induced.label(m).is_identity()));
    }

    #[test]
    fn load_labeling_roundtrip_and_errors() {
        let loaded = load_labeling("0 XI\n1 IX\n2 YY\n3 ZI\n4 IZ", 5, false).unwrap();
        assert_eq!(loaded.labeling.labels(), builtin_labeling(4, 1).unwrap().labels());
        assert!(loaded.warnings.is_empty());

        assert!(matches!(load_labeling("0 XI\n1 XII", 2, false), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(load_labeling("0 XI\n7 IX", 2, false), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(load_labeling("0 XI\n1 IQ", 2, false), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(load_labeling("0 XI", 2, false), Err(Error::Constraint(_))));

        let off = "0 XI\n1 IX\n2 YY\n3 ZI\n4 IX";
        assert!(matches!(load_labeling(off, 5, false), Err(Error::Constraint(_))));
        let relaxed = load_labeling(off, 5, true).unwrap();
        assert_eq!(relaxed.warnings.len(), 1);
    }

    #[test]
    fn grid_layout_is_consistent() {
        let (sp, induced) = labeled(5, 1);
        let max = crate::gf2space::maximal_subspaces(&sp);
        let grid = extract_mermin_peres(&sp, &induced, &max[0], &max).unwrap();
        assert!(grid.verdict.is_magic);
        let cells: HashSet<usize> = grid.cells.iter().flatten().copied().collect();
        assert_eq!(cells.len(), 9);
        for l in &grid.removed_lines {
            assert!(l.members().iter().all(|m| !cells.contains(m)));
        }
        // anchor holds the smallest label
        let min = grid.labels.iter().flatten().map(|l| l.to_string()).min().unwrap();
        assert_eq!(grid.labels[0][0].to_string(), min);
    }

    #[test]
    fn extraction_rejects_wrong_inputs() {
        let (sp, induced) = labeled(4, 1);
        let max = crate::gf2space::maximal_subspaces(&sp);
        // D4's PG(3,2) shares no lines with anything
        assert!(matches!(extract_mermin_peres(&sp, &induced, &max[0], &max), Err(Error::Structural(_))));
        let (sp5, ind5) = labeled(5, 1);
        let max5 = crate::gf2space::maximal_subspaces(&sp5);
        assert!(extract_mermin_peres(&sp5, &ind5, &max5[1], &max5).is_err());
    }
}
