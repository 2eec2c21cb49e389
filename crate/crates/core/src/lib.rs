//! Veldkamp spaces of graphs viewed as point-line incidence structures
//! with two points per line.
//!
//! The pipeline runs [`incidence`] → [`hyperplanes`] → [`veldkamp`] →
//! [`gf2space`], with [`pauli`] and [`labeling`] attaching Pauli-group
//! labels to Veldkamp points. [`report`] assembles everything into text,
//! JSON and DOT output; [`tables`] holds reference fixtures for D̃₄ and D̃₅.
//!
//! ```
//! use veldkamp::{build_extended_dynkin_d, enumerate_hyperplanes, build_veldkamp_space, maximal_subspaces};
//!
//! let d4 = build_extended_dynkin_d(4).unwrap();
//! let space = build_veldkamp_space(enumerate_hyperplanes(&d4).unwrap());
//! assert_eq!(space.point_count(), 16);
//! assert_eq!(space.lines3().len(), 35);
//! assert_eq!(maximal_subspaces(&space)[0].dimension(), 3);
//! ```

pub mod error;
pub mod gf2space;
pub mod hyperplanes;
pub mod incidence;
pub mod labeling;
pub mod pauli;
pub mod pointset;
pub mod report;
pub mod tables;
pub mod veldkamp;

pub use error::{Error, Result};
pub use gf2space::{
    distinguished_subspace, find_fano_planes_with_points, intersect, maximal_subspaces, pasch_from_fano,
    representative_hyperplane, shared_lines, PaschConfiguration, ProjectiveSubspace, SubspaceHierarchy,
};
pub use hyperplanes::{
    enumerate_hyperplanes, enumerate_hyperplanes_with, is_hyperplane, EnumerationOptions, Hyperplane, HyperplaneCatalog,
};
pub use incidence::{build_extended_dynkin_d, parse_edge_list, IncidenceStructure, ParsedGraph};
pub use labeling::{builtin_labeling, induce, load_labeling, InducedLabeling, VertexLabeling};
pub use pauli::{PauliElement, SignedPauli};
pub use pointset::PointSet;
pub use report::{emit_dot, reference_expectations, AnalysisReport, DotView, Expectation};
pub use tables::{compare_tables, d4_fixtures, d5_fixtures, TableComparison};
pub use veldkamp::{build_veldkamp_space, full_line_size, third_point, VeldkampLine, VeldkampSpace};
