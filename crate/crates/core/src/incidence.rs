//! Point-line incidence structures whose lines carry exactly two points.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pointset::{PointSet, MAX_WIDTH};

/// A finite graph viewed as an incidence structure: vertices are points,
/// edges are two-point lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    point_count: usize,
    /// Sorted, each pair stored as `(low, high)`.
    lines: Vec<(usize, usize)>,
}

impl IncidenceStructure {
    /// Validates and normalizes a line list. Lines may be given in any
    /// orientation and order.
    pub fn new(point_count: usize, lines: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if point_count == 0 {
            return Err(Error::InvalidParameter("structure needs at least one point".into()));
        }
        if point_count > MAX_WIDTH {
            return Err(Error::InvalidParameter(format!(
                "{point_count} points exceeds the supported maximum of {MAX_WIDTH}"
            )));
        }
        let mut seen = BTreeSet::new();
        for (a, b) in lines {
            if a == b {
                return Err(Error::InvalidParameter(format!("line {{{a},{b}}} is a self-loop")));
            }
            if a >= point_count || b >= point_count {
                return Err(Error::InvalidParameter(format!(
                    "line {{{a},{b}}} references a point outside 0..{point_count}"
                )));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidParameter(format!("duplicate line {{{a},{b}}}")));
            }
        }
        if seen.is_empty() {
            return Err(Error::InvalidParameter("structure has no lines".into()));
        }
        Ok(Self { point_count, lines: seen.into_iter().collect() })
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn lines(&self) -> &[(usize, usize)] {
        &self.lines
    }

    pub fn line_masks(&self) -> impl Iterator<Item = u64> + '_ {
        self.lines.iter().map(|&(a, b)| (1u64 << a) | (1u64 << b))
    }

    /// Number of lines through `p`.
    pub fn point_order(&self, p: usize) -> Result<usize> {
        if p >= self.point_count {
            return Err(Error::InvalidParameter(format!("point {p} out of range 0..{}", self.point_count)));
        }
        Ok(self.lines.iter().filter(|&&(a, b)| a == p || b == p).count())
    }

    pub fn isolated_points(&self) -> Vec<usize> {
        let mut touched = vec![false; self.point_count];
        for &(a, b) in &self.lines {
            touched[a] = true;
            touched[b] = true;
        }
        (0..self.point_count).filter(|&p| !touched[p]).collect()
    }

    pub fn all_points(&self) -> PointSet {
        PointSet::full(self.point_count)
    }

    /// Serializes to the edge-list text format, one `a b` pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(a, b) in &self.lines {
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }
}

/// The extended Dynkin diagram D̃ₙ: a path `2 - 3 - ... - (n-2)` with leaves
/// `0, 1` forked off vertex 2 and leaves `n-1, n` forked off vertex `n-2`.
pub fn build_extended_dynkin_d(n: usize) -> Result<IncidenceStructure> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("D~n needs n >= 4, got {n}")));
    }
    if n + 1 > MAX_WIDTH {
        return Err(Error::InvalidParameter(format!("D~{n} has too many vertices")));
    }
    let mut lines = vec![(0, 2), (1, 2), (n - 1, n - 2), (n, n - 2)];
    lines.extend((2..n - 2).map(|k| (k, k + 1)));
    IncidenceStructure::new(n + 1, lines)
}

/// Result of parsing an edge-list file.
#[derive(Clone, Debug)]
pub struct ParsedGraph {
    pub structure: IncidenceStructure,
    /// `original_ids[k]` is the file's id for point `k`. Identity when the
    /// file already used dense ids.
    pub original_ids: Vec<u64>,
    pub warnings: Vec<String>,
}

impl ParsedGraph {
    pub fn was_compacted(&self) -> bool {
        self.original_ids.iter().enumerate().any(|(k, &id)| id != k as u64)
    }
}

/// Parses the edge-list format: two whitespace-separated nonnegative
/// integers per line, `#` comments, blank lines ignored. Sparse vertex ids
/// are compacted to `0..P` in ascending order.
pub fn parse_edge_list(text: &str) -> Result<ParsedGraph> {
    let mut edges: Vec<(u64, u64)> = Vec::new();
    let mut first_seen: BTreeMap<(u64, u64), usize> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected two vertex ids, found {} fields", fields.len()),
            });
        }
        let parse = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| Error::Parse { line: line_no, message: format!("'{s}' is not a nonnegative integer") })
        };
        let (a, b) = (parse(fields[0])?, parse(fields[1])?);
        if a == b {
            return Err(Error::Parse { line: line_no, message: format!("self-loop on vertex {a}") });
        }
        let key = (a.min(b), a.max(b));
        if let Some(prev) = first_seen.insert(key, line_no) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("duplicate edge {{{},{}}} (first on line {prev})", key.0, key.1),
            });
        }
        edges.push((a, b));
    }
    if edges.is_empty() {
        return Err(Error::Parse { line: 0, message: "no edges found".into() });
    }

    let ids: BTreeSet<u64> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let original_ids: Vec<u64> = ids.into_iter().collect();
    let max_id = *original_ids.last().expect("nonempty");
    let mut warnings = Vec::new();
    let dense = max_id + 1 == original_ids.len() as u64;
    if !dense {
        let mapping = original_ids
            .iter()
            .enumerate()
            .filter(|&(k, &id)| id != k as u64)
            .map(|(k, id)| format!("{id}->{k}"))
            .collect::<Vec<_>>()
            .join(", ");
        warnings.push(format!("sparse vertex ids compacted: {mapping}"));
    }
    if original_ids.len() > MAX_WIDTH {
        return Err(Error::Parse {
            line: 0,
            message: format!("{} vertices exceeds the maximum of {MAX_WIDTH}", original_ids.len()),
        });
    }
    let index: BTreeMap<u64, usize> = original_ids.iter().enumerate().map(|(k, &id)| (id, k)).collect();
    let structure = IncidenceStructure::new(original_ids.len(), edges.iter().map(|(a, b)| (index[a], index[b])))
        .map_err(|e| Error::Parse { line: 0, message: e.to_string() })?;
    Ok(ParsedGraph { structure, original_ids, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dynkin_small_cases() {
        let d4 = build_extended_dynkin_d(4).unwrap();
        assert_eq!(d4.point_count(), 5);
        assert_eq!(d4.lines(), &[(0, 2), (1, 2), (2, 3), (2, 4)]);

        let d5 = build_extended_dynkin_d(5).unwrap();
        assert_eq!(d5.lines(), &[(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)]);

        let d7 = build_extended_dynkin_d(7).unwrap();
        assert_eq!(d7.lines(), &[(0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (5, 7)]);
    }

    #[test]
    fn dynkin_rejects_small_n() {
        assert!(matches!(build_extended_dynkin_d(3), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn dynkin_point_orders() {
        let d4 = build_extended_dynkin_d(4).unwrap();
        assert_eq!(d4.point_order(2).unwrap(), 4);
        let d6 = build_extended_dynkin_d(6).unwrap();
        assert_eq!(d6.point_order(3).unwrap(), 2);
        let d5 = build_extended_dynkin_d(5).unwrap();
        assert_eq!(d5.point_order(0).unwrap(), 1);
        assert!(d5.point_order(6).is_err());
    }

    #[test]
    fn dynkin_order_census() {
        for n in 5..=12 {
            let s = build_extended_dynkin_d(n).unwrap();
            assert_eq!(s.point_count(), n + 1);
            assert_eq!(s.lines().len(), n);
            let orders: Vec<usize> = (0..=n).map(|p| s.point_order(p).unwrap()).collect();
            assert_eq!(orders.iter().filter(|&&o| o == 1).count(), 4, "n={n}");
            assert_eq!(orders.iter().filter(|&&o| o == 3).count(), 2, "n={n}");
            assert_eq!(orders.iter().filter(|&&o| o == 2).count(), n - 5, "n={n}");
        }
        let d4 = build_extended_dynkin_d(4).unwrap();
        assert_eq!((d4.point_count(), d4.lines().len()), (5, 4));
    }

    #[test]
    fn parse_d4() {
        let g = parse_edge_list("0 2\n1 2\n2 3\n2 4").unwrap();
        assert_eq!(g.structure, build_extended_dynkin_d(4).unwrap());
        assert!(g.warnings.is_empty());
        assert!(!g.was_compacted());
    }

    #[test]
    fn parse_comments_and_blanks() {
        let g = parse_edge_list("# comment\n\n0 1   # trailing\n").unwrap();
        assert_eq!(g.structure.point_count(), 2);
        assert_eq!(g.structure.lines(), &[(0, 1)]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_edge_list("0 0") {
            Err(Error::Parse { line: 1, message }) => assert!(message.contains("self-loop")),
            other => panic!("{other:?}"),
        }
        match parse_edge_list("0 1\n# x\n1 0") {
            Err(Error::Parse { line: 3, message }) => assert!(message.contains("duplicate")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_edge_list("0 1 2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 -1"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("# nothing\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn parse_compacts_sparse_ids() {
        let g = parse_edge_list("10 20\n20 30").unwrap();
        assert_eq!(g.structure.point_count(), 3);
        assert_eq!(g.original_ids, vec![10, 20, 30]);
        assert_eq!(g.structure.lines(), &[(0, 1), (1, 2)]);
        assert!(g.was_compacted());
        assert_eq!(g.warnings.len(), 1);
    }

    #[test]
    fn constructor_invariants() {
        assert!(IncidenceStructure::new(3, []).is_err());
        assert!(IncidenceStructure::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(IncidenceStructure::new(3, [(0, 3)]).is_err());
        let s = IncidenceStructure::new(4, [(1, 0)]).unwrap();
        assert_eq!(s.lines(), &[(0, 1)]);
        assert_eq!(s.isolated_points(), vec![2, 3]);
    }
}
