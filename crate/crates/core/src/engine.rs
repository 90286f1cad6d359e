//! Turn-based referee: enforces placement and movement rules, validates
//! multiset cop moves, and records replayable transcripts.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::StrategyError;
use crate::formats;
use crate::graph::{Graph, Vertex};
use crate::matching::max_bipartite_matching;

/// Shared playing field: movement is along edges (undirected) or out-arcs
/// (directed), for both players.
#[derive(Clone)]
pub enum Board {
    Undirected(Arc<Graph>),
    Directed(Arc<Digraph>),
}

impl Board {
    pub fn n(&self) -> usize {
        match self {
            Board::Undirected(g) => g.n(),
            Board::Directed(d) => d.n(),
        }
    }

    pub fn is_directed(&self) -> bool {
        matches!(self, Board::Directed(_))
    }

    /// Legal destinations from `v`: stay or step to an (out-)neighbor. Sorted.
    pub fn options_from(&self, v: Vertex) -> Vec<Vertex> {
        match self {
            Board::Undirected(g) => g.closed_neighborhood(v),
            Board::Directed(d) => d.closed_out_neighborhood(v),
        }
    }

    pub fn step_allowed(&self, from: Vertex, to: Vertex) -> bool {
        if from == to {
            return true;
        }
        match self {
            Board::Undirected(g) => g.has_edge(from, to),
            Board::Directed(d) => d.has_arc(from, to),
        }
    }

    pub fn graph(&self) -> Option<&Arc<Graph>> {
        match self {
            Board::Undirected(g) => Some(g),
            Board::Directed(_) => None,
        }
    }

    pub fn digraph(&self) -> Option<&Arc<Digraph>> {
        match self {
            Board::Directed(d) => Some(d),
            Board::Undirected(_) => None,
        }
    }

    /// Serialize as graph6 (undirected) or the arc-list format (directed).
    pub fn encode(&self) -> String {
        match self {
            Board::Undirected(g) => formats::write_graph6(g).expect("board fits graph6"),
            Board::Directed(d) => formats::write_digraph_arcs(d),
        }
    }

    pub fn decode(text: &str, directed: bool) -> Result<Board, crate::error::FormatError> {
        if directed {
            Ok(Board::Directed(Arc::new(formats::parse_digraph_arcs(text, true)?)))
        } else {
            Ok(Board::Undirected(Arc::new(formats::parse_graph6(text)?)))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Cops,
    Robber,
}

/// Snapshot passed to strategies. Cop positions are the sorted multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameState {
    pub cops: Vec<Vertex>,
    pub robber: Option<Vertex>,
    pub to_move: Side,
    pub round: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Half {
    Placement,
    CopMove,
    RobberMove,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FaultKind {
    IllegalMove,
    StrategyFailure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Outcome {
    Captured { round: usize, half: Half },
    Survived { rounds: usize },
    Fault { side: Side, round: usize, fault: FaultKind, reason: String },
}

impl Outcome {
    pub fn is_captured(&self) -> bool {
        matches!(self, Outcome::Captured { .. })
    }
}

/// Per-stage diagnostics emitted by the cover strategy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageDiag {
    pub round: usize,
    pub densify_round: usize,
    pub stage: usize,
    pub ell: usize,
    pub frontier_size: usize,
    pub team_size: usize,
    pub right_size: usize,
    pub matching_size: usize,
    pub perfect: bool,
    pub violator_size: Option<usize>,
    pub team_budget_left: usize,
    pub gamma: f64,
}

/// Decomposition diagnostics emitted by the digraph strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDiag {
    pub centers: Vec<Vertex>,
    pub residual_sizes: Vec<usize>,
    pub thresholds: Vec<usize>,
    pub squad_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacementRecord {
    pub cops: Vec<Vertex>,
    pub robber: Option<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub cops: Vec<Vertex>,
    pub robber: Option<Vertex>,
}

/// Replayable record of one game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub graph: String,
    pub directed: bool,
    pub k: usize,
    pub seed: u64,
    pub cop_strategy: String,
    pub robber_strategy: String,
    pub placement: PlacementRecord,
    pub rounds: Vec<RoundRecord>,
    pub outcome: Outcome,
    pub stages: Vec<StageDiag>,
    pub decomposition: Option<DecompositionDiag>,
}

impl Transcript {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcript serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

pub trait CopStrategy {
    fn name(&self) -> &str;
    /// Initial positions; must return exactly `k` vertices.
    fn place(&mut self, board: &Board, k: usize) -> Result<Vec<Vertex>, StrategyError>;
    /// New positions after a cop move. The returned multiset must admit a
    /// perfect matching to the previous one with every pair at distance ≤ 1.
    fn step(&mut self, board: &Board, state: &GameState) -> Result<Vec<Vertex>, StrategyError>;
    fn stage_diagnostics(&self) -> Vec<StageDiag> {
        Vec::new()
    }
    fn decomposition_diagnostics(&self) -> Option<DecompositionDiag> {
        None
    }
}

pub trait RobberStrategy {
    fn name(&self) -> &str;
    fn place(&mut self, board: &Board, cops: &[Vertex]) -> Vertex;
    fn step(&mut self, board: &Board, state: &GameState) -> Vertex;
}

/// True iff a perfect matching pairs `old` with `new` such that every pair
/// is a legal single step (stay or one edge/arc).
pub fn validate_move(old: &[Vertex], new: &[Vertex], board: &Board) -> bool {
    if old.len() != new.len() {
        return false;
    }
    let adj: Vec<Vec<usize>> = old
        .iter()
        .map(|&u| {
            new.iter()
                .enumerate()
                .filter(|(_, &v)| board.step_allowed(u, v))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let (match_left, _) = max_bipartite_matching(&adj, new.len());
    match_left.iter().all(|m| m.is_some())
}

/// Default horizon: comfortably past any forced-capture time at desk scale.
pub fn default_max_rounds(n: usize, k: usize) -> usize {
    4 * n * n * (k + 1)
}

fn canonical(mut positions: Vec<Vertex>) -> Vec<Vertex> {
    positions.sort_unstable();
    positions
}

/// Run one game: cops place, robber places, then rounds of cop move /
/// capture check / robber move / capture check. Co-location at placement is
/// an immediate capture; illegal moves or strategy failures end the game
/// with a fault verdict attributing the side.
pub fn play(
    board: &Board,
    cops: &mut dyn CopStrategy,
    robber: &mut dyn RobberStrategy,
    k: usize,
    max_rounds: usize,
    seed: u64,
) -> Transcript {
    let n = board.n();
    let mut transcript = Transcript {
        graph: board.encode(),
        directed: board.is_directed(),
        k,
        seed,
        cop_strategy: cops.name().to_string(),
        robber_strategy: robber.name().to_string(),
        placement: PlacementRecord { cops: Vec::new(), robber: None },
        rounds: Vec::new(),
        outcome: Outcome::Survived { rounds: 0 },
        stages: Vec::new(),
        decomposition: None,
    };
    let finish = |mut t: Transcript, outcome: Outcome, cops: &dyn CopStrategy| {
        t.outcome = outcome;
        t.stages = cops.stage_diagnostics();
        t.decomposition = cops.decomposition_diagnostics();
        t
    };

    // Placement phase.
    let cop_pos = match cops.place(board, k) {
        Ok(p) => p,
        Err(e) => {
            return finish(
                transcript,
                Outcome::Fault {
                    side: Side::Cops,
                    round: 0,
                    fault: FaultKind::StrategyFailure,
                    reason: e.to_string(),
                },
                cops,
            );
        }
    };
    if cop_pos.len() != k || cop_pos.iter().any(|&v| v >= n) {
        return finish(
            transcript,
            Outcome::Fault {
                side: Side::Cops,
                round: 0,
                fault: FaultKind::IllegalMove,
                reason: format!("placement must be {k} in-range vertices"),
            },
            cops,
        );
    }
    let mut cop_pos = canonical(cop_pos);
    transcript.placement.cops = cop_pos.clone();

    let robber_pos = robber.place(board, &cop_pos);
    if robber_pos >= n {
        return finish(
            transcript,
            Outcome::Fault {
                side: Side::Robber,
                round: 0,
                fault: FaultKind::IllegalMove,
                reason: format!("robber placement {robber_pos} out of range"),
            },
            cops,
        );
    }
    let mut robber_pos = robber_pos;
    transcript.placement.robber = Some(robber_pos);
    if cop_pos.binary_search(&robber_pos).is_ok() {
        return finish(
            transcript,
            Outcome::Captured { round: 0, half: Half::Placement },
            cops,
        );
    }

    for round in 1..=max_rounds {
        // Cops move first.
        let state = GameState {
            cops: cop_pos.clone(),
            robber: Some(robber_pos),
            to_move: Side::Cops,
            round,
        };
        let new_cops = match cops.step(board, &state) {
            Ok(p) => p,
            Err(e) => {
                return finish(
                    transcript,
                    Outcome::Fault {
                        side: Side::Cops,
                        round,
                        fault: FaultKind::StrategyFailure,
                        reason: e.to_string(),
                    },
                    cops,
                );
            }
        };
        if new_cops.iter().any(|&v| v >= n) || !validate_move(&cop_pos, &new_cops, board) {
            return finish(
                transcript,
                Outcome::Fault {
                    side: Side::Cops,
                    round,
                    fault: FaultKind::IllegalMove,
                    reason: "cop multiset move admits no distance-1 matching".into(),
                },
                cops,
            );
        }
        cop_pos = canonical(new_cops);
        if cop_pos.binary_search(&robber_pos).is_ok() {
            transcript.rounds.push(RoundRecord { cops: cop_pos.clone(), robber: None });
            return finish(
                transcript,
                Outcome::Captured { round, half: Half::CopMove },
                cops,
            );
        }

        // Robber moves (stay or step).
        let state = GameState {
            cops: cop_pos.clone(),
            robber: Some(robber_pos),
            to_move: Side::Robber,
            round,
        };
        let new_robber = robber.step(board, &state);
        if new_robber >= n || !board.step_allowed(robber_pos, new_robber) {
            transcript.rounds.push(RoundRecord { cops: cop_pos.clone(), robber: None });
            return finish(
                transcript,
                Outcome::Fault {
                    side: Side::Robber,
                    round,
                    fault: FaultKind::IllegalMove,
                    reason: format!("robber step {robber_pos}->{new_robber} not allowed"),
                },
                cops,
            );
        }
        robber_pos = new_robber;
        transcript.rounds.push(RoundRecord { cops: cop_pos.clone(), robber: Some(robber_pos) });
        if cop_pos.binary_search(&robber_pos).is_ok() {
            return finish(
                transcript,
                Outcome::Captured { round, half: Half::RobberMove },
                cops,
            );
        }
    }
    finish(transcript, Outcome::Survived { rounds: max_rounds }, cops)
}

/// Errors raised when a transcript fails consistency validation.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ReplayError {
    #[error("transcript graph failed to parse: {0}")]
    BadGraph(String),
    #[error("round {0}: illegal cop multiset move")]
    IllegalCops(usize),
    #[error("round {0}: illegal robber step")]
    IllegalRobber(usize),
    #[error("round {round}: capture flag inconsistent with positions")]
    CaptureMismatch { round: usize },
    #[error("recorded outcome disagrees with replay: {0}")]
    OutcomeMismatch(String),
}

/// Re-run the recorded moves through the referee rules and verify that the
/// recorded outcome is reproduced.
pub fn replay(t: &Transcript) -> Result<Outcome, ReplayError> {
    let board = Board::decode(&t.graph, t.directed).map_err(|e| ReplayError::BadGraph(e.to_string()))?;
    let mut cop_pos = t.placement.cops.clone();
    if let Some(r) = t.placement.robber {
        if cop_pos.binary_search(&r).is_ok() {
            let expect = Outcome::Captured { round: 0, half: Half::Placement };
            return if t.outcome == expect {
                Ok(expect)
            } else {
                Err(ReplayError::OutcomeMismatch(format!("{:?}", t.outcome)))
            };
        }
    }
    let mut robber_pos = t.placement.robber;
    for (i, rec) in t.rounds.iter().enumerate() {
        let round = i + 1;
        if !validate_move(&cop_pos, &rec.cops, &board) {
            return Err(ReplayError::IllegalCops(round));
        }
        cop_pos = rec.cops.clone();
        let r = robber_pos.expect("rounds imply a placed robber");
        if cop_pos.binary_search(&r).is_ok() {
            // Capture at the cop half-move must close the transcript.
            let expect = Outcome::Captured { round, half: Half::CopMove };
            if rec.robber.is_some() || i + 1 != t.rounds.len() {
                return Err(ReplayError::CaptureMismatch { round });
            }
            return if t.outcome == expect {
                Ok(expect)
            } else {
                Err(ReplayError::OutcomeMismatch(format!("{:?}", t.outcome)))
            };
        }
        match rec.robber {
            Some(new_r) => {
                if !board.step_allowed(r, new_r) {
                    return Err(ReplayError::IllegalRobber(round));
                }
                robber_pos = Some(new_r);
                if cop_pos.binary_search(&new_r).is_ok() {
                    let expect = Outcome::Captured { round, half: Half::RobberMove };
                    if i + 1 != t.rounds.len() {
                        return Err(ReplayError::CaptureMismatch { round });
                    }
                    return if t.outcome == expect {
                        Ok(expect)
                    } else {
                        Err(ReplayError::OutcomeMismatch(format!("{:?}", t.outcome)))
                    };
                }
            }
            None => {
                // Robber half-move missing: only legal on a fault record.
                if !matches!(t.outcome, Outcome::Fault { .. }) {
                    return Err(ReplayError::CaptureMismatch { round });
                }
                return Ok(t.outcome.clone());
            }
        }
    }
    match &t.outcome {
        Outcome::Survived { rounds } if *rounds == t.rounds.len() => Ok(t.outcome.clone()),
        Outcome::Fault { .. } => Ok(t.outcome.clone()),
        other => Err(ReplayError::OutcomeMismatch(format!("{other:?}"))),
    }
}
