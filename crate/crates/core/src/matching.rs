//! Bipartite maximum matching (Hopcroft–Karp) and Hall-violator
//! extraction over distance-bounded reach graphs.

use crate::distance::DistanceOracle;
use crate::error::{GraphError, MatchingError};
use crate::graph::{Graph, Vertex};

/// Bipartite graph joining robber-side vertices (left) to cop positions
/// (right) whenever their graph distance is at most `radius`.
#[derive(Debug, Clone)]
pub struct ReachGraph {
    left: Vec<Vertex>,
    right: Vec<Vertex>,
    radius: usize,
    /// Left index -> sorted right indices.
    adj: Vec<Vec<usize>>,
}

impl ReachGraph {
    /// Assemble from explicit sides and index adjacency (mainly for tests).
    pub fn from_parts(left: Vec<Vertex>, right: Vec<Vertex>, radius: usize, adj: Vec<Vec<usize>>) -> Self {
        assert_eq!(left.len(), adj.len());
        ReachGraph { left, right, radius, adj }
    }

    pub fn left(&self) -> &[Vertex] {
        &self.left
    }

    pub fn right(&self) -> &[Vertex] {
        &self.right
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum()
    }

    pub fn has_edge(&self, left_idx: usize, right_idx: usize) -> bool {
        self.adj[left_idx].binary_search(&right_idx).is_ok()
    }

    /// Right neighborhood N_H(S) of a set of left indices, as right indices.
    pub fn neighborhood(&self, left_idxs: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.right.len()];
        for &l in left_idxs {
            for &r in &self.adj[l] {
                seen[r] = true;
            }
        }
        (0..self.right.len()).filter(|&r| seen[r]).collect()
    }
}

/// Build the reach graph. Vertices appearing on both sides are removed from
/// the left so the sides are disjoint; edge (l, r) exists iff d(l, r) ≤ radius.
pub fn build_reach_graph(
    g: &Graph,
    oracle: &DistanceOracle,
    left: &[Vertex],
    right: &[Vertex],
    radius: usize,
) -> Result<ReachGraph, GraphError> {
    for &v in left.iter().chain(right.iter()) {
        g.check_vertex(v)?;
    }
    let mut right_sorted: Vec<Vertex> = right.to_vec();
    right_sorted.sort_unstable();
    right_sorted.dedup();
    let mut left_sorted: Vec<Vertex> = left.to_vec();
    left_sorted.sort_unstable();
    left_sorted.dedup();
    left_sorted.retain(|v| right_sorted.binary_search(v).is_err());

    let mut adj = Vec::with_capacity(left_sorted.len());
    for &l in &left_sorted {
        let row = oracle.row(l);
        let nbrs: Vec<usize> = right_sorted
            .iter()
            .enumerate()
            .filter(|(_, &r)| (row[r] as usize) <= radius && row[r] != crate::distance::UNREACHABLE)
            .map(|(i, _)| i)
            .collect();
        adj.push(nbrs);
    }
    Ok(ReachGraph {
        left: left_sorted,
        right: right_sorted,
        radius,
        adj,
    })
}

/// Maximum-matching outcome. `violator` is present exactly when some left
/// vertex is unmatched; it is the maximal deficiency set, so the matching
/// restricted to left∖violator covers it completely.
#[derive(Debug, Clone)]
pub struct MatchingResult {
    /// Matched (left vertex, right vertex) pairs, ascending by left vertex.
    pub pairs: Vec<(Vertex, Vertex)>,
    pub unmatched_left: Vec<Vertex>,
    pub violator: Option<Vec<Vertex>>,
    match_left: Vec<Option<usize>>,
    match_right: Vec<Option<usize>>,
}

impl MatchingResult {
    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_left_perfect(&self) -> bool {
        self.unmatched_left.is_empty()
    }

    /// Matched right vertex for a left index, if any.
    pub fn right_of(&self, left_idx: usize) -> Option<usize> {
        self.match_left[left_idx]
    }
}

/// Hopcroft–Karp maximum matching on index adjacency. Deterministic for a
/// fixed input ordering: layers expand in index order and augmenting paths
/// prefer lower right indices.
pub fn max_bipartite_matching(adj: &[Vec<usize>], n_right: usize) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let n_left = adj.len();
    let mut match_left: Vec<Option<usize>> = vec![None; n_left];
    let mut match_right: Vec<Option<usize>> = vec![None; n_right];
    const INF: u32 = u32::MAX;
    let mut layer = vec![INF; n_left];

    loop {
        // BFS phase: layer unmatched left vertices and expand through
        // matched right vertices.
        let mut queue = std::collections::VecDeque::new();
        for l in 0..n_left {
            if match_left[l].is_none() {
                layer[l] = 0;
                queue.push_back(l);
            } else {
                layer[l] = INF;
            }
        }
        let mut found_free = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                match match_right[r] {
                    None => found_free = true,
                    Some(l2) => {
                        if layer[l2] == INF {
                            layer[l2] = layer[l] + 1;
                            queue.push_back(l2);
                        }
                    }
                }
            }
        }
        if !found_free {
            break;
        }
        // DFS phase along layered alternating paths.
        fn try_augment(
            l: usize,
            adj: &[Vec<usize>],
            layer: &mut [u32],
            match_left: &mut [Option<usize>],
            match_right: &mut [Option<usize>],
        ) -> bool {
            for &r in &adj[l] {
                let ok = match match_right[r] {
                    None => true,
                    Some(l2) => {
                        layer[l2] == layer[l] + 1
                            && try_augment(l2, adj, layer, match_left, match_right)
                    }
                };
                if ok {
                    match_left[l] = Some(r);
                    match_right[r] = Some(l);
                    return true;
                }
            }
            layer[l] = u32::MAX;
            false
        }
        let mut augmented = false;
        for l in 0..n_left {
            if match_left[l].is_none()
                && try_augment(l, adj, &mut layer, &mut match_left, &mut match_right)
            {
                augmented = true;
            }
        }
        if !augmented {
            break;
        }
    }
    (match_left, match_right)
}

/// Maximum matching of a reach graph, with the Hall violator attached
/// whenever the left side is not fully covered.
pub fn max_matching(h: &ReachGraph) -> MatchingResult {
    let (match_left, match_right) = max_bipartite_matching(&h.adj, h.right.len());
    let pairs: Vec<(Vertex, Vertex)> = match_left
        .iter()
        .enumerate()
        .filter_map(|(l, r)| r.map(|r| (h.left[l], h.right[r])))
        .collect();
    let unmatched_left: Vec<Vertex> = match_left
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_none())
        .map(|(l, _)| h.left[l])
        .collect();
    let violator = if unmatched_left.is_empty() {
        None
    } else {
        Some(deficiency_set(h, &match_left, &match_right))
    };
    MatchingResult {
        pairs,
        unmatched_left,
        violator,
        match_left,
        match_right,
    }
}

/// Left vertices reachable from the unmatched left vertices by alternating
/// paths (non-matching edge right, matching edge back left). Because the
/// matching is maximum this set S satisfies |S| > |N_H(S)| and every left
/// vertex outside S stays matched.
fn deficiency_set(h: &ReachGraph, match_left: &[Option<usize>], match_right: &[Option<usize>]) -> Vec<Vertex> {
    let mut in_s = vec![false; h.left.len()];
    let mut queue = std::collections::VecDeque::new();
    for l in 0..h.left.len() {
        if match_left[l].is_none() {
            in_s[l] = true;
            queue.push_back(l);
        }
    }
    while let Some(l) = queue.pop_front() {
        for &r in &h.adj[l] {
            if let Some(l2) = match_right[r] {
                if !in_s[l2] {
                    in_s[l2] = true;
                    queue.push_back(l2);
                }
            }
        }
    }
    (0..h.left.len()).filter(|&l| in_s[l]).map(|l| h.left[l]).collect()
}

/// The Hall violator of a deficient matching. Errors if the matching
/// already covers the left side.
pub fn hall_violator(h: &ReachGraph, m: &MatchingResult) -> Result<Vec<Vertex>, MatchingError> {
    if m.is_left_perfect() {
        return Err(MatchingError::LeftPerfect);
    }
    Ok(deficiency_set(h, &m.match_left, &m.match_right))
}
