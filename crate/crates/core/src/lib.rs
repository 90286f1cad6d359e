//! Pursuit-evasion laboratory for the game of Cops and Robbers.
//!
//! The crate provides immutable graph/digraph types with metric queries, a
//! turn-based referee with pluggable strategies, an exact cop-number solver
//! used as the adversarial oracle, cover-set strategies for graphs of
//! bounded diameter and girth, a sqrt(2n) strategy for digraphs of small
//! diameter, and closed-form bound evaluation.

pub mod bounds;
pub mod cover;
pub mod digraph;
pub mod digraph_pursuit;
pub mod distance;
pub mod engine;
pub mod error;
pub mod escalation;
pub mod formats;
pub mod generate;
pub mod graph;
pub mod guard;
pub mod matching;
pub mod solver;
pub mod strategies;
pub mod verify;

pub use digraph::{Digraph, SubDigraph};
pub use engine::{Board, CopStrategy, Outcome, RobberStrategy, Transcript};
pub use error::{
    BoundsError, FormatError, GenerateError, GraphError, MatchingError, SolverError, StrategyError,
};
pub use graph::{Graph, Vertex};
