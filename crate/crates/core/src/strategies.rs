//! Baseline strategies: greedy chasers, random movers, and distance-greedy
//! evasion. The stronger strategies live in their own modules.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{Board, CopStrategy, GameState, RobberStrategy};
use crate::error::StrategyError;
use crate::graph::Vertex;

/// Multi-source distance from a set along the board's movement relation
/// (how long cops need to reach each vertex).
fn dist_from_set(board: &Board, sources: &[Vertex]) -> Vec<u32> {
    let n = board.n();
    let mut dist = vec![u32::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for &s in sources {
        if dist[s] == u32::MAX {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        let nexts: Vec<Vertex> = match board {
            Board::Undirected(g) => g.neighbors(u).to_vec(),
            Board::Directed(d) => d.out_neighbors(u).to_vec(),
        };
        for v in nexts {
            if dist[v] == u32::MAX {
                dist[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Step `from` one vertex closer to `target` along a shortest path in the
/// movement relation, lowest next id on ties. Stays put when unreachable.
pub fn step_toward(board: &Board, from: Vertex, target: Vertex) -> Vertex {
    if from == target {
        return from;
    }
    // Distance of every vertex TO the target, via reversed arcs.
    let n = board.n();
    let mut dist = vec![u32::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    dist[target] = 0;
    queue.push_back(target);
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        let preds: Vec<Vertex> = match board {
            Board::Undirected(g) => g.neighbors(u).to_vec(),
            Board::Directed(d) => d.in_neighbors(u).to_vec(),
        };
        for v in preds {
            if dist[v] == u32::MAX {
                dist[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
    if dist[from] == u32::MAX {
        return from;
    }
    let need = dist[from] - 1;
    board
        .options_from(from)
        .into_iter()
        .find(|&w| w != from && dist[w] == need)
        .unwrap_or(from)
}

/// All cops start at vertex 0 and chase along shortest paths.
pub struct GreedyChaser {
    positions: Vec<Vertex>,
}

impl GreedyChaser {
    #[allow(clippy::new_without_default)]
    pub fn new() -> Self {
        GreedyChaser { positions: Vec::new() }
    }
}

impl CopStrategy for GreedyChaser {
    fn name(&self) -> &str {
        "trivial"
    }

    fn place(&mut self, _board: &Board, k: usize) -> Result<Vec<Vertex>, StrategyError> {
        self.positions = vec![0; k];
        Ok(self.positions.clone())
    }

    fn step(&mut self, board: &Board, state: &GameState) -> Result<Vec<Vertex>, StrategyError> {
        let robber = state.robber.expect("robber placed before cop steps");
        for p in self.positions.iter_mut() {
            *p = step_toward(board, *p, robber);
        }
        Ok(self.positions.clone())
    }
}

/// Chaser with a fixed initial placement (test harness building block).
pub struct FixedPlacementChaser {
    placement: Vec<Vertex>,
    positions: Vec<Vertex>,
}

impl FixedPlacementChaser {
    pub fn new(placement: Vec<Vertex>) -> Self {
        FixedPlacementChaser { placement, positions: Vec::new() }
    }
}

impl CopStrategy for FixedPlacementChaser {
    fn name(&self) -> &str {
        "fixed-chaser"
    }

    fn place(&mut self, _board: &Board, k: usize) -> Result<Vec<Vertex>, StrategyError> {
        if self.placement.len() != k {
            return Err(StrategyError::Precondition(format!(
                "fixed placement has {} cops, game wants {k}",
                self.placement.len()
            )));
        }
        self.positions = self.placement.clone();
        Ok(self.positions.clone())
    }

    fn step(&mut self, board: &Board, state: &GameState) -> Result<Vec<Vertex>, StrategyError> {
        let robber = state.robber.expect("robber placed before cop steps");
        for p in self.positions.iter_mut() {
            *p = step_toward(board, *p, robber);
        }
        Ok(self.positions.clone())
    }
}

/// Uniformly random legal cop play (adversarial-noise opponent for tests).
pub struct RandomCops {
    rng: ChaCha8Rng,
    positions: Vec<Vertex>,
}

impl RandomCops {
    pub fn new(seed: u64) -> Self {
        RandomCops { rng: ChaCha8Rng::seed_from_u64(seed), positions: Vec::new() }
    }
}

impl CopStrategy for RandomCops {
    fn name(&self) -> &str {
        "random"
    }

    fn place(&mut self, board: &Board, k: usize) -> Result<Vec<Vertex>, StrategyError> {
        let n = board.n();
        self.positions = (0..k).map(|_| self.rng.random_range(0..n)).collect();
        Ok(self.positions.clone())
    }

    fn step(&mut self, board: &Board, _state: &GameState) -> Result<Vec<Vertex>, StrategyError> {
        for p in self.positions.iter_mut() {
            let opts = board.options_from(*p);
            *p = opts[self.rng.random_range(0..opts.len())];
        }
        Ok(self.positions.clone())
    }
}

/// Places on a random cop-free vertex, then takes uniformly random safe steps.
pub struct RandomRobber {
    rng: ChaCha8Rng,
}

impl RandomRobber {
    pub fn new(seed: u64) -> Self {
        RandomRobber { rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl RobberStrategy for RandomRobber {
    fn name(&self) -> &str {
        "random"
    }

    fn place(&mut self, board: &Board, cops: &[Vertex]) -> Vertex {
        let free: Vec<Vertex> = (0..board.n())
            .filter(|v| cops.binary_search(v).is_err())
            .collect();
        if free.is_empty() {
            return self.rng.random_range(0..board.n());
        }
        free[self.rng.random_range(0..free.len())]
    }

    fn step(&mut self, board: &Board, state: &GameState) -> Vertex {
        let cur = state.robber.expect("robber is placed");
        let safe: Vec<Vertex> = board
            .options_from(cur)
            .into_iter()
            .filter(|v| state.cops.binary_search(v).is_err())
            .collect();
        if safe.is_empty() {
            return cur;
        }
        safe[self.rng.random_range(0..safe.len())]
    }
}

/// Places at the vertex farthest from the cops and never moves.
#[derive(Default)]
pub struct StationaryRobber;

impl RobberStrategy for StationaryRobber {
    fn name(&self) -> &str {
        "stationary"
    }

    fn place(&mut self, board: &Board, cops: &[Vertex]) -> Vertex {
        let dist = dist_from_set(board, cops);
        (0..board.n()).max_by_key(|&v| (dist[v], std::cmp::Reverse(v))).unwrap_or(0)
    }

    fn step(&mut self, _board: &Board, state: &GameState) -> Vertex {
        state.robber.expect("robber is placed")
    }
}

/// Flees to the option maximizing the distance the nearest cop needs to
/// travel; suicide steps are excluded, lowest id on ties.
#[derive(Default)]
pub struct GreedyDistanceRobber;

impl RobberStrategy for GreedyDistanceRobber {
    fn name(&self) -> &str {
        "greedy-distance"
    }

    fn place(&mut self, board: &Board, cops: &[Vertex]) -> Vertex {
        let dist = dist_from_set(board, cops);
        (0..board.n())
            .filter(|v| cops.binary_search(v).is_err())
            .max_by_key(|&v| (dist[v], std::cmp::Reverse(v)))
            .unwrap_or(0)
    }

    fn step(&mut self, board: &Board, state: &GameState) -> Vertex {
        let cur = state.robber.expect("robber is placed");
        let dist = dist_from_set(board, &state.cops);
        board
            .options_from(cur)
            .into_iter()
            .filter(|v| state.cops.binary_search(v).is_err())
            .max_by_key(|&v| (dist[v], std::cmp::Reverse(v)))
            .unwrap_or(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn step_toward_respects_arcs() {
        let d = crate::digraph::Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let b = Board::Directed(Arc::new(d));
        // Going "back" from 2 to 1 must loop forward through 0.
        assert_eq!(step_toward(&b, 2, 1), 0);
        assert_eq!(step_toward(&b, 0, 1), 1);
    }

    #[test]
    fn greedy_robber_avoids_suicide() {
        let g = crate::generate::path(3).unwrap();
        let b = Board::Undirected(Arc::new(g));
        let mut robber = GreedyDistanceRobber;
        let state = GameState {
            cops: vec![1],
            robber: Some(0),
            to_move: crate::engine::Side::Robber,
            round: 1,
        };
        // Only options are stay (0) or step onto the cop (1).
        assert_eq!(robber.step(&b, &state), 0);
    }

    #[test]
    fn stationary_robber_picks_far_vertex() {
        let g = crate::generate::path(5).unwrap();
        let b = Board::Undirected(Arc::new(g));
        let mut robber = StationaryRobber;
        assert_eq!(robber.place(&b, &[0]), 4);
    }
}
