//! Exact minimum orientable genus of graphs.
//!
//! Faces are chosen among simple cycles: for each face count, from the most
//! faces downwards, the engine looks for a multiset of cycle lengths summing
//! to `2m` that some set of oriented cycles realizes with a valid rotation at
//! every vertex. Results come with a face-list certificate that can be
//! checked independently.

pub mod blocks;
pub mod bounds;
pub mod census;
pub mod certificate;
pub mod cycles;
pub mod distribution;
pub mod engine;
pub mod error;
pub mod formulas;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod parse;
pub mod search;

pub use bounds::{heuristic_upper_bound, initial_bounds, BoundsSession, BoundsState, RefineOutcome};
pub use certificate::{
    deserialize_certificate, genus_from_face_count, serialize_certificate, verify_certificate,
    CertificateError, Condition, EmbeddingCertificate, Face, GraphFingerprint, VerificationReport,
    Violation,
};
pub use cycles::{build_cycle_index, count_cycles_up_to, CycleIndex, SimpleCycle};
pub use distribution::{generate_distributions, order_by_face_count, CycleDistribution};
pub use engine::{compute_genus, EngineConfig, EngineError, GenusReport};
pub use error::{CapacityExceeded, GraphError};
pub use generators::{generate, Family};
pub use graph::{Dart, Graph};
pub use oracle::{brute_force_genus, trace_faces, OracleError, RotationSystem};
pub use parse::{encode_graph6, parse_edge_list, parse_graph6};
pub use search::{search, Budget, PruneConfig, SearchResult};
