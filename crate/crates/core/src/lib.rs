//! Exact and heuristic tools for saturation numbers of complete multipartite
//! graphs, with emphasis on `K_{3,3}`.

pub mod canon;
pub mod constructions;
pub mod discharging;
pub mod formulas;
pub mod graph;
pub mod graph6;
pub mod pattern;
pub mod saturation;
pub mod search;

pub use canon::{canonical_code, canonical_form, is_isomorphic, CanonicalCode, CanonicalForm};
pub use constructions::{ConstructionError, LabeledConstruction};
pub use discharging::{analyze, AnalysisReport, HalfInt, SaturationPartition};
pub use formulas::{known_sat, SatFormulaAnswer};
pub use graph::{Edge, Graph, GraphError, VertexSet, MAX_VERTICES};
pub use graph6::{emit_graph6, parse_graph6, Graph6Error};
pub use pattern::{MultipartitePattern, PatternError, Witness};
pub use saturation::{check_saturated, is_saturated, SaturationVerdict};
pub use search::{exact_sat, SatResult, SatStatus, SearchBudget, SearchOptions};
