//! Breadth-first metric queries: distance oracle, balls, spheres,
//! diameter, girth, shortest-path routing.

use std::collections::VecDeque;
use std::sync::Mutex;

use crate::digraph::Digraph;
use crate::error::GraphError;
use crate::graph::{Graph, Vertex};

/// Distance value for unreachable pairs.
pub const UNREACHABLE: u32 = u32::MAX;

/// Full-table cutoff: below this the oracle precomputes all pairs.
pub const DEFAULT_FULL_TABLE_CUTOFF: usize = 2048;
const ON_DEMAND_CACHE_ROWS: usize = 256;

fn bfs_row(adj: &[Vec<Vertex>], source: Vertex) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; adj.len()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        for &v in &adj[u] {
            if dist[v] == UNREACHABLE {
                dist[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

enum OracleStore {
    Full(Vec<Vec<u32>>),
    OnDemand {
        adj: Vec<Vec<Vertex>>,
        cache: Mutex<RowCache>,
    },
}

struct RowCache {
    rows: std::collections::HashMap<Vertex, (u64, Vec<u32>)>,
    stamp: u64,
    capacity: usize,
}

impl RowCache {
    fn get_or_insert(&mut self, adj: &[Vec<Vertex>], source: Vertex) -> Vec<u32> {
        self.stamp += 1;
        let stamp = self.stamp;
        if let Some(entry) = self.rows.get_mut(&source) {
            entry.0 = stamp;
            return entry.1.clone();
        }
        let row = bfs_row(adj, source);
        if self.rows.len() >= self.capacity {
            // Evict the least-recently-used row.
            if let Some((&old, _)) = self.rows.iter().min_by_key(|(_, (s, _))| *s) {
                self.rows.remove(&old);
            }
        }
        self.rows.insert(source, (stamp, row.clone()));
        row
    }
}

/// All-pairs shortest-path oracle. Stores the full table for small graphs,
/// otherwise computes per-source rows on demand behind an LRU cache.
/// Immutable after construction and safe to share across threads.
pub struct DistanceOracle {
    store: OracleStore,
    n: usize,
}

impl DistanceOracle {
    pub fn new(g: &Graph) -> Self {
        Self::with_cutoff(g, DEFAULT_FULL_TABLE_CUTOFF)
    }

    pub fn with_cutoff(g: &Graph, cutoff: usize) -> Self {
        let n = g.n();
        let adj: Vec<Vec<Vertex>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
        Self::from_adj(adj, cutoff)
    }

    /// Oracle over directed distances (out-arcs).
    pub fn new_directed(d: &Digraph) -> Self {
        let n = d.n();
        let adj: Vec<Vec<Vertex>> = (0..n).map(|v| d.out_neighbors(v).to_vec()).collect();
        Self::from_adj(adj, DEFAULT_FULL_TABLE_CUTOFF)
    }

    fn from_adj(adj: Vec<Vec<Vertex>>, cutoff: usize) -> Self {
        let n = adj.len();
        let store = if n <= cutoff {
            OracleStore::Full((0..n).map(|v| bfs_row(&adj, v)).collect())
        } else {
            OracleStore::OnDemand {
                adj,
                cache: Mutex::new(RowCache {
                    rows: std::collections::HashMap::new(),
                    stamp: 0,
                    capacity: ON_DEMAND_CACHE_ROWS,
                }),
            }
        };
        DistanceOracle { store, n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, u: Vertex, v: Vertex) -> u32 {
        match &self.store {
            OracleStore::Full(table) => table[u][v],
            OracleStore::OnDemand { adj, cache } => {
                let row = cache.lock().unwrap().get_or_insert(adj, u);
                row[v]
            }
        }
    }

    pub fn row(&self, u: Vertex) -> Vec<u32> {
        match &self.store {
            OracleStore::Full(table) => table[u].clone(),
            OracleStore::OnDemand { adj, cache } => cache.lock().unwrap().get_or_insert(adj, u),
        }
    }
}

fn multi_source_dist(adj: &[Vec<Vertex>], sources: &[Vertex]) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; adj.len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s] == UNREACHABLE {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        for &v in &adj[u] {
            if dist[v] == UNREACHABLE {
                dist[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

fn check_set(n: usize, set: &[Vertex]) -> Result<(), GraphError> {
    for &v in set {
        if v >= n {
            return Err(GraphError::VertexOutOfRange(v, n));
        }
    }
    Ok(())
}

/// Ball B(A, i): all vertices within distance i of some vertex of A. Sorted.
pub fn ball(g: &Graph, set: &[Vertex], radius: usize) -> Result<Vec<Vertex>, GraphError> {
    check_set(g.n(), set)?;
    let adj: Vec<Vec<Vertex>> = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
    let dist = multi_source_dist(&adj, set);
    Ok((0..g.n())
        .filter(|&v| dist[v] != UNREACHABLE && dist[v] as usize <= radius)
        .collect())
}

/// Sphere B'(A, i) = B(A, i) \ B(A, i−1): vertices at distance exactly i. Sorted.
pub fn sphere(g: &Graph, set: &[Vertex], radius: usize) -> Result<Vec<Vertex>, GraphError> {
    check_set(g.n(), set)?;
    let adj: Vec<Vec<Vertex>> = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
    let dist = multi_source_dist(&adj, set);
    Ok((0..g.n())
        .filter(|&v| dist[v] != UNREACHABLE && dist[v] as usize == radius)
        .collect())
}

/// Directed out-ball: vertices reachable from A by directed paths of length ≤ i.
pub fn out_ball(d: &Digraph, set: &[Vertex], radius: usize) -> Result<Vec<Vertex>, GraphError> {
    check_set(d.n(), set)?;
    let adj: Vec<Vec<Vertex>> = (0..d.n()).map(|v| d.out_neighbors(v).to_vec()).collect();
    let dist = multi_source_dist(&adj, set);
    Ok((0..d.n())
        .filter(|&v| dist[v] != UNREACHABLE && dist[v] as usize <= radius)
        .collect())
}

/// Exact diameter by BFS sweep. Errors on disconnected input.
pub fn diameter(g: &Graph) -> Result<usize, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    if g.n() == 0 {
        return Ok(0);
    }
    let adj: Vec<Vec<Vertex>> = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
    let mut best = 0u32;
    for v in 0..g.n() {
        let row = bfs_row(&adj, v);
        for &d in &row {
            if d != UNREACHABLE && d > best {
                best = d;
            }
        }
    }
    Ok(best as usize)
}

/// Directed diameter (max over ordered pairs). Errors unless strongly connected.
pub fn directed_diameter(d: &Digraph) -> Result<usize, GraphError> {
    if !d.is_strongly_connected() {
        return Err(GraphError::NotStronglyConnected);
    }
    if d.n() == 0 {
        return Ok(0);
    }
    let adj: Vec<Vec<Vertex>> = (0..d.n()).map(|v| d.out_neighbors(v).to_vec()).collect();
    let mut best = 0u32;
    for v in 0..d.n() {
        let row = bfs_row(&adj, v);
        for &x in &row {
            if x != UNREACHABLE && x > best {
                best = x;
            }
        }
    }
    Ok(best as usize)
}

/// Girth: length of a shortest cycle, `None` for forests.
///
/// Per-root BFS: the BFS rooted at a vertex of a shortest cycle finds it,
/// so the minimum over all roots is exact.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![UNREACHABLE; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = UNREACHABLE);
        let mut queue = VecDeque::new();
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if dist[v] == UNREACHABLE {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    // Non-tree edge closes a cycle through the root region.
                    let len = (dist[u] + dist[v] + 1) as usize;
                    if len < best {
                        best = len;
                    }
                }
            }
        }
    }
    if best == usize::MAX {
        None
    } else {
        Some(best)
    }
}

/// Shortest path from `from` to `to` (inclusive), ties broken by lowest
/// next-vertex id. `None` if unreachable.
pub fn shortest_path(g: &Graph, from: Vertex, to: Vertex) -> Option<Vec<Vertex>> {
    let adj: Vec<Vec<Vertex>> = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
    path_via_dist_to_target(&adj, &adj, from, to)
}

/// Shortest directed path in `d` from `from` to `to`, lowest-id ties.
pub fn shortest_directed_path(d: &Digraph, from: Vertex, to: Vertex) -> Option<Vec<Vertex>> {
    let out: Vec<Vec<Vertex>> = (0..d.n()).map(|v| d.out_neighbors(v).to_vec()).collect();
    let inn: Vec<Vec<Vertex>> = (0..d.n()).map(|v| d.in_neighbors(v).to_vec()).collect();
    path_via_dist_to_target(&out, &inn, from, to)
}

fn path_via_dist_to_target(
    out: &[Vec<Vertex>],
    into: &[Vec<Vertex>],
    from: Vertex,
    to: Vertex,
) -> Option<Vec<Vertex>> {
    // dist_to_target[v] = directed distance v -> to, via BFS on reversed arcs.
    let dist_to_target = bfs_row(into, to);
    if dist_to_target[from] == UNREACHABLE {
        return None;
    }
    let mut path = vec![from];
    let mut cur = from;
    while cur != to {
        let need = dist_to_target[cur] - 1;
        // Adjacency is sorted, so the first qualifying neighbor is lowest-id.
        let next = out[cur]
            .iter()
            .copied()
            .find(|&w| dist_to_target[w] == need)
            .expect("reachable vertex must have a descending neighbor");
        path.push(next);
        cur = next;
    }
    Some(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::cycle;

    fn petersen() -> Graph {
        crate::generate::petersen()
    }

    #[test]
    fn ball_on_c5() {
        let g = cycle(5).unwrap();
        assert_eq!(ball(&g, &[0], 1).unwrap(), vec![0, 1, 4]);
        assert_eq!(ball(&g, &[0], 2).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(ball(&g, &[0], 0).unwrap(), vec![0]);
    }

    #[test]
    fn ball_rejects_out_of_range() {
        let g = cycle(5).unwrap();
        assert!(ball(&g, &[5], 1).is_err());
    }

    #[test]
    fn sphere_on_c5() {
        let g = cycle(5).unwrap();
        assert_eq!(sphere(&g, &[0], 1).unwrap(), vec![1, 4]);
        assert_eq!(sphere(&g, &[0], 2).unwrap(), vec![2, 3]);
        let all: Vec<Vertex> = (0..5).collect();
        assert!(sphere(&g, &all, 1).unwrap().is_empty());
    }

    #[test]
    fn petersen_balls_are_closed_neighborhoods() {
        // 3-regular, so |B(v,1)| = 4 everywhere; brute-force BFS agrees.
        let g = petersen();
        let oracle = DistanceOracle::new(&g);
        for v in 0..10 {
            let b = ball(&g, &[v], 1).unwrap();
            assert_eq!(b.len(), 4);
            for w in 0..10 {
                let in_ball = b.contains(&w);
                assert_eq!(in_ball, oracle.dist(v, w) <= 1);
            }
        }
    }

    #[test]
    fn diameter_and_girth_known_values() {
        assert_eq!(diameter(&cycle(5).unwrap()).unwrap(), 2);
        assert_eq!(girth(&cycle(5).unwrap()), Some(5));
        let p = petersen();
        assert_eq!(diameter(&p).unwrap(), 2);
        assert_eq!(girth(&p), Some(5));
    }

    #[test]
    fn girth_on_forest_is_infinite() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(girth(&g), None);
    }

    #[test]
    fn diameter_rejects_disconnected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(diameter(&g), Err(GraphError::Disconnected));
    }

    #[test]
    fn oracle_full_and_on_demand_agree() {
        let g = petersen();
        let full = DistanceOracle::with_cutoff(&g, 2048);
        let lazy = DistanceOracle::with_cutoff(&g, 0);
        for u in 0..10 {
            for v in 0..10 {
                assert_eq!(full.dist(u, v), lazy.dist(u, v));
            }
        }
    }

    #[test]
    fn oracle_metric_properties() {
        let g = petersen();
        let oracle = DistanceOracle::new(&g);
        for u in 0..10 {
            assert_eq!(oracle.dist(u, u), 0);
            for v in 0..10 {
                assert_eq!(oracle.dist(u, v), oracle.dist(v, u));
                for w in 0..10 {
                    assert!(oracle.dist(u, w) <= oracle.dist(u, v) + oracle.dist(v, w));
                }
            }
        }
    }

    #[test]
    fn shortest_path_prefers_low_ids() {
        let g = cycle(4).unwrap();
        // Both 0-1-2 and 0-3-2 have length 2; lowest-id tie-break picks 1.
        assert_eq!(shortest_path(&g, 0, 2).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn directed_path_follows_arcs() {
        let d = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(shortest_directed_path(&d, 0, 2).unwrap(), vec![0, 1, 2]);
        assert_eq!(shortest_directed_path(&d, 2, 1).unwrap(), vec![2, 0, 1]);
        assert_eq!(directed_diameter(&d).unwrap(), 2);
    }
}
