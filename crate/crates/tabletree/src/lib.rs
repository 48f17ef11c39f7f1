//! Profiling for a single data table: minimal unique column combinations,
//! (approximate) functional dependencies, schema trees, and automated
//! feature plans.
//!
//! The pipeline, bottom to top:
//!
//! - [`table`] loads delimited text into an immutable, dictionary-encoded
//!   [`Table`]; [`measure`] provides the distinct-row count `r(C)` and the
//!   two dependency error measures (g3 and ratio).
//! - [`search`] runs one forward-addition sweep search over a column
//!   permutation — [`fa_minimal_unique`] for keys, [`fa_fd`] for
//!   (approximate) functional dependencies — next to the backward-elimination
//!   baseline. Each run costs `O(D log N)` distinct-count evaluations.
//! - [`best`] repeats the search over random permutations to find the
//!   shortest solution under an error bound, or the shortest at the minimal
//!   achievable error.
//! - [`tree`] recursively splits the hypothetical rowid column into a schema
//!   tree and attaches the remaining columns as leaves; [`features`] turns a
//!   tree plus an anchor column into direct features and aggregation paths,
//!   then materializes the per-anchor feature table.
//! - [`oracle`] holds brute-force ground truth for small tables plus
//!   Monte-Carlo checks of the randomized-search distribution claims, and
//!   [`synth`] generates the structured tables the test suites and the
//!   benchmark use.
//!
//! ```
//! use tabletree::{best, synth, SearchConfig};
//!
//! let table = synth::order_table(200, 7);
//! let found = best::shortest_minimal_unique(&table, &SearchConfig::default())
//!     .unwrap()
//!     .expect("a small key exists");
//! assert!(found.columns.len() <= 3);
//! ```

pub mod best;
pub mod cli;
pub mod colset;
pub mod error;
pub mod features;
pub mod measure;
pub mod oracle;
pub mod search;
pub mod synth;
pub mod table;
pub mod tree;

pub use best::{BestSolution, Optimize, SearchConfig};
pub use colset::{ColumnId, ColumnSet};
pub use error::{Error, Result};
pub use features::{
    aggregation_path, classify_relation, materialize_features, plan_features, AggFn,
    AggregationConfig, AggregationFeature, AggregationPath, FeatureColumn, FeaturePlan,
    FeatureTable, FeatureValue, RelationKind,
};
pub use measure::{
    descendants, distinct_count, fd_error, g3_error, is_fd, ratio_error, ErrorMeasure, EvalCounter,
};
pub use search::{
    be_minimal_unique, fa_fd, fa_minimal_unique, random_permutation, sweep_select, FaOutcome,
    Permutation,
};
pub use table::{detect_decimal, Column, LoadOptions, Table};
pub use tree::{
    attach_leaves, build_schema_tree, build_skeleton, NodeKind, SchemaNode, SchemaTree,
};
