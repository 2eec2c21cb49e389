//! Reference tables for D̃₄ and D̃₅ and a set-wise comparison against
//! computed results.
//!
//! Hyperplanes are keyed by the reference numbering (1-based). For D̃₄ the
//! point sets are read straight off the incidence table. For D̃₅ only the
//! labels are tabulated; the point sets below are the unique hyperplanes
//! with those labels under the builtin D̃₅ labeling that also respect the
//! family split (1-4 avoid point 2, 5-8 avoid point 3, 9-23 contain both).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::Result;
use crate::hyperplanes::enumerate_hyperplanes;
use crate::incidence::build_extended_dynkin_d;
use crate::labeling::{builtin_labeling, induce};
use crate::veldkamp::{build_veldkamp_space, VeldkampLine};

#[derive(Clone, Debug)]
pub struct LineTable {
    pub name: &'static str,
    pub lines: Vec<[usize; 3]>,
    /// Computed lines this table should cover: those touching any of these
    /// reference indices (`None` = every line).
    pub touching: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct TableFixtures {
    pub n: usize,
    pub hyperplanes: BTreeMap<usize, Vec<usize>>,
    pub line_tables: Vec<LineTable>,
    pub labels: BTreeMap<usize, String>,
    pub label_table: &'static str,
    pub hyperplane_table: &'static str,
}

fn hyperplane_map(entries: &[(usize, &[usize])]) -> BTreeMap<usize, Vec<usize>> {
    entries.iter().map(|&(k, pts)| (k, pts.to_vec())).collect()
}

fn label_map(entries: &[(usize, &str)]) -> BTreeMap<usize, String> {
    entries.iter().map(|&(k, l)| (k, l.to_string())).collect()
}

pub fn d4_fixtures() -> TableFixtures {
    let hyperplanes = hyperplane_map(&[
        (1, &[0, 2]),
        (2, &[1, 2]),
        (3, &[2, 4]),
        (4, &[2, 3]),
        (5, &[1, 2, 3, 4]),
        (6, &[0, 2, 3, 4]),
        (7, &[0, 1, 2, 3]),
        (8, &[0, 1, 2, 4]),
        (9, &[0, 2, 3]),
        (10, &[0, 2, 4]),
        (11, &[0, 1, 2]),
        (12, &[2, 3, 4]),
        (13, &[1, 2, 3]),
        (14, &[1, 2, 4]),
        (15, &[2]),
        (16, &[0, 1, 3, 4]),
    ]);
    let lines = vec![
        [1, 2, 12],
        [1, 3, 13],
        [1, 4, 14],
        [1, 5, 15],
        [1, 6, 11],
        [1, 7, 10],
        [1, 8, 9],
        [2, 3, 9],
        [2, 4, 10],
        [2, 5, 11],
        [2, 6, 15],
        [2, 7, 14],
        [2, 8, 13],
        [3, 4, 11],
        [3, 5, 10],
        [3, 6, 14],
        [3, 7, 15],
        [3, 8, 12],
        [4, 5, 9],
        [4, 6, 13],
        [4, 7, 12],
        [4, 8, 15],
        [5, 6, 12],
        [5, 7, 13],
        [5, 8, 14],
        [6, 7, 9],
        [6, 8, 10],
        [7, 8, 11],
        [9, 10, 11],
        [9, 12, 13],
        [9, 14, 15],
        [10, 12, 14],
        [10, 13, 15],
        [11, 12, 15],
        [11, 13, 14],
    ];
    let labels = label_map(&[
        (1, "ZY"),
        (2, "YZ"),
        (3, "YX"),
        (4, "XY"),
        (5, "XI"),
        (6, "IX"),
        (7, "IZ"),
        (8, "ZI"),
        (9, "IY"),
        (10, "ZX"),
        (11, "ZZ"),
        (12, "XX"),
        (13, "XZ"),
        (14, "YI"),
        (15, "YY"),
        (16, "YY"),
    ]);
    TableFixtures {
        n: 4,
        hyperplanes,
        line_tables: vec![LineTable { name: "lines", lines, touching: None }],
        labels,
        label_table: "labels",
        hyperplane_table: "hyperplanes",
    }
}

pub fn d5_fixtures() -> TableFixtures {
    let hyperplanes = hyperplane_map(&[
        (1, &[0, 1, 3]),
        (2, &[0, 1, 3, 4]),
        (3, &[0, 1, 3, 5]),
        (4, &[0, 1, 3, 4, 5]),
        (5, &[2, 4, 5]),
        (6, &[0, 2, 4, 5]),
        (7, &[1, 2, 4, 5]),
        (8, &[0, 1, 2, 4, 5]),
        (9, &[0, 2, 3]),
        (10, &[2, 3, 4]),
        (11, &[1, 2, 3]),
        (12, &[2, 3, 5]),
        (13, &[1, 2, 3, 4, 5]),
        (14, &[0, 1, 2, 3, 5]),
        (15, &[0, 2, 3, 4, 5]),
        (16, &[0, 1, 2, 3, 4]),
        (17, &[2, 3]),
        (18, &[0, 2, 3, 4]),
        (19, &[1, 2, 3, 5]),
        (20, &[0, 1, 2, 3]),
        (21, &[2, 3, 4, 5]),
        (22, &[0, 2, 3, 5]),
        (23, &[1, 2, 3, 4]),
    ]);
    let double_six = vec![
        [1, 2, 14],
        [1, 3, 16],
        [1, 4, 20],
        [2, 3, 20],
        [2, 4, 16],
        [3, 4, 14],
        [5, 6, 13],
        [5, 7, 15],
        [5, 8, 21],
        [6, 7, 21],
        [6, 8, 15],
        [7, 8, 13],
    ];
    let second_family = vec![
        [9, 10, 19],
        [9, 11, 21],
        [9, 12, 23],
        [9, 13, 17],
        [9, 14, 18],
        [9, 15, 20],
        [9, 16, 22],
        [10, 11, 22],
        [10, 12, 20],
        [10, 13, 18],
        [10, 14, 17],
        [10, 15, 23],
        [10, 16, 21],
        [11, 12, 18],
        [11, 13, 20],
        [11, 14, 23],
        [11, 15, 17],
        [11, 16, 19],
        [12, 13, 22],
        [12, 14, 21],
        [12, 15, 19],
        [12, 16, 17],
        [13, 14, 19],
        [13, 15, 21],
        [13, 16, 23],
        [14, 15, 22],
        [14, 16, 20],
        [15, 16, 18],
        [17, 18, 19],
        [17, 20, 21],
        [17, 22, 23],
        [18, 20, 22],
        [18, 21, 23],
        [19, 20, 23],
        [19, 21, 22],
    ];
    let labels = label_map(&[
        (9, "XY"),
        (10, "YX"),
        (11, "ZY"),
        (12, "YZ"),
        (13, "ZI"),
        (14, "IZ"),
        (15, "XI"),
        (16, "IX"),
        (17, "YY"),
        (18, "XX"),
        (19, "ZZ"),
        (20, "IY"),
        (21, "YI"),
        (22, "XZ"),
        (23, "ZX"),
        (1, "YY"),
        (2, "YX"),
        (3, "YZ"),
        (4, "YI"),
        (5, "YY"),
        (6, "XY"),
        (7, "ZY"),
        (8, "IY"),
    ]);
    TableFixtures {
        n: 5,
        hyperplanes,
        line_tables: vec![
            LineTable { name: "double-six lines", lines: double_six, touching: Some((1..=8).collect()) },
            LineTable { name: "second-family lines", lines: second_family, touching: None },
        ],
        labels,
        label_table: "labels",
        hyperplane_table: "hyperplanes",
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SectionDiff {
    pub name: String,
    pub missing: Vec<String>,
    pub unexpected: Vec<String>,
}

impl SectionDiff {
    pub fn is_match(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableComparison {
    pub n: usize,
    pub sections: Vec<SectionDiff>,
}

impl TableComparison {
    pub fn is_match(&self) -> bool {
        self.sections.iter().all(SectionDiff::is_match)
    }
}

impl fmt::Display for TableComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sections {
            let status = if s.is_match() { "match" } else { "MISMATCH" };
            writeln!(f, "D~{} {}: {status}", self.n, s.name)?;
            for m in &s.missing {
                writeln!(f, "  - {m}")?;
            }
            for u in &s.unexpected {
                writeln!(f, "  + {u}")?;
            }
        }
        Ok(())
    }
}

fn set_diff(name: &str, expected: BTreeSet<String>, actual: BTreeSet<String>) -> SectionDiff {
    SectionDiff {
        name: name.to_string(),
        missing: expected.difference(&actual).cloned().collect(),
        unexpected: actual.difference(&expected).cloned().collect(),
    }
}

fn fmt_points(p: &[usize]) -> String {
    let inner: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Recomputes D̃ₙ and diffs it against `fixtures`. Lines and hyperplanes are
/// compared as point sets, so the reference numbering only matters for
/// resolving table entries.
pub fn compare_tables(fixtures: &TableFixtures) -> Result<TableComparison> {
    let n = fixtures.n;
    let catalog = enumerate_hyperplanes(&build_extended_dynkin_d(n)?)?;
    let induced = induce(&builtin_labeling(n, 1)?, &catalog)?;
    let space = build_veldkamp_space(catalog);
    let cat = space.catalog();
    let mut sections = Vec::new();

    let expected: BTreeSet<String> = fixtures.hyperplanes.values().map(|p| fmt_points(p)).collect();
    let actual: BTreeSet<String> = cat.hyperplanes().iter().map(|h| h.points.to_string()).collect();
    sections.push(set_diff(fixtures.hyperplane_table, expected, actual));

    // reference index -> computed index, for entries that exist
    let resolve: BTreeMap<usize, usize> =
        fixtures.hyperplanes.iter().filter_map(|(&k, pts)| cat.index_of_points(pts).ok().map(|i| (k, i))).collect();
    let line_str = |l: &VeldkampLine| {
        let mut sets: Vec<String> = l.members().iter().map(|&m| cat.points(m).to_string()).collect();
        sets.sort();
        sets.join(" ")
    };
    let mut claimed: BTreeSet<VeldkampLine> = BTreeSet::new();
    for table in &fixtures.line_tables {
        let mut expected = BTreeSet::new();
        for t in &table.lines {
            match t.iter().map(|k| resolve.get(k).copied()).collect::<Option<Vec<usize>>>() {
                Some(m) => {
                    expected.insert(line_str(&VeldkampLine::new(m[0], m[1], m[2])));
                }
                None => {
                    expected.insert(format!("H{}, H{}, H{} (unresolved)", t[0], t[1], t[2]));
                }
            }
        }
        let touching: Option<BTreeSet<usize>> =
            table.touching.as_ref().map(|ks| ks.iter().filter_map(|k| resolve.get(k).copied()).collect());
        let picked: Vec<VeldkampLine> = space
            .lines3()
            .iter()
            .filter(|l| match &touching {
                Some(ts) => l.members().iter().any(|m| ts.contains(m)),
                None => !claimed.contains(l),
            })
            .copied()
            .collect();
        claimed.extend(picked.iter().copied());
        let actual: BTreeSet<String> = picked.iter().map(line_str).collect();
        sections.push(set_diff(table.name, expected, actual));
    }

    let mut label_diff = SectionDiff { name: fixtures.label_table.to_string(), ..Default::default() };
    for (&k, want) in &fixtures.labels {
        match resolve.get(&k) {
            Some(&i) => {
                let got = induced.label(i).to_string();
                if &got != want {
                    label_diff.missing.push(format!("H{k} -> {want}"));
                    label_diff.unexpected.push(format!("H{k} -> {got}"));
                }
            }
            None => label_diff.missing.push(format!("H{k} -> {want} (unresolved hyperplane)")),
        }
    }
    sections.push(label_diff);
    Ok(TableComparison { n, sections })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d4_tables_match() {
        let cmp = compare_tables(&d4_fixtures()).unwrap();
        assert!(cmp.is_match(), "{cmp}");
        assert_eq!(cmp.sections.len(), 3);
    }

    #[test]
    fn d5_tables_match() {
        let cmp = compare_tables(&d5_fixtures()).unwrap();
        assert!(cmp.is_match(), "{cmp}");
        assert_eq!(cmp.sections.len(), 4);
    }

    #[test]
    fn corrupted_fixture_yields_diff() {
        let mut fx = d4_fixtures();
        fx.hyperplanes.insert(16, vec![0, 1, 3]);
        fx.labels.insert(1, "XX".into());
        fx.line_tables[0].lines[0] = [1, 2, 13];
        let cmp = compare_tables(&fx).unwrap();
        assert!(!cmp.is_match());
        let text = cmp.to_string();
        assert!(text.contains("MISMATCH"));
        assert!(text.contains("- {0,1,3}"), "{text}");
        assert!(text.contains("+ {0,1,3,4}"), "{text}");
        assert!(text.contains("H1 -> XX"), "{text}");
    }
}
