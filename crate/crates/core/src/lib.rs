//! Closed directed walks of prescribed length in oriented graphs of high
//! minimum semidegree.
//!
//! * [`graph`]: oriented graphs, degree statistics, girth and bipartition.
//! * [`arith`]: the divisibility condition on the target length and the
//!   integer combinations used to reach it.
//! * [`walks`]: walk types, validation and winding.
//! * [`skew`]: layered search for skew closed walks.
//! * [`pipeline`]: the staged search for a walk of exact length.
//! * [`generators`]: extremal and test-bed constructions.
//! * [`oracle`]: independent existence checks by matrix powers and cycle
//!   enumeration.

pub mod arith;
mod decimal;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod pipeline;
pub mod skew;
pub mod walks;

pub use arith::{minimal_nondivisor, StarCondition};
pub use graph::{OrientedGraph, parse_edge_list, read_edge_list, write_edge_list};
pub use pipeline::{find_closed_walk_of_length, PipelineFailure, PipelineReport};
pub use walks::{DirectedWalk, WalkExpression};
