//! Immutable simple digraphs with out- and in-adjacency lists.

use crate::error::GraphError;
use crate::graph::Vertex;

/// Directed simple graph. In-lists are the exact transpose of out-lists;
/// no self-loops, no parallel arcs (u->v and v->u may both exist).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
}

impl Digraph {
    pub fn from_arcs(n: usize, arcs: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::with_capacity(arcs.len());
        for &(u, v) in arcs {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateArc(u, v));
            }
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
        }
        Ok(Digraph { out_adj, in_adj })
    }

    pub fn n(&self) -> usize {
        self.out_adj.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out_adj.iter().map(|l| l.len()).sum()
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n()
    }

    /// Arcs as (u, v) pairs in lexicographic order.
    pub fn arcs(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.arc_count());
        for u in 0..self.n() {
            for &v in &self.out_adj[u] {
                out.push((u, v));
            }
        }
        out
    }

    /// Closed out-neighborhood N⁺[v] = {v} ∪ N⁺(v), sorted.
    pub fn closed_out_neighborhood(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.out_degree(v) + 1);
        let mut inserted = false;
        for &w in &self.out_adj[v] {
            if !inserted && v < w {
                out.push(v);
                inserted = true;
            }
            out.push(w);
        }
        if !inserted {
            out.push(v);
        }
        out
    }

    pub fn is_strongly_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        reach_count(&self.out_adj, 0) == n && reach_count(&self.in_adj, 0) == n
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(v, self.n()))
        }
    }
}

/// A sub-digraph of a parent digraph: a vertex subset plus a subset of the
/// parent's arcs among those vertices. Used for games where the robber is
/// confined to the sub-digraph while cops roam the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubDigraph {
    parent_n: usize,
    vertices: Vec<Vertex>,
    /// Index-based adjacency within `vertices`, sorted.
    out_adj: Vec<Vec<usize>>,
}

impl SubDigraph {
    /// Sub-digraph induced by `vertices` in `d` (all arcs among them).
    pub fn induced(d: &Digraph, vertices: &[Vertex]) -> Result<Self, GraphError> {
        let mut vs: Vec<Vertex> = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        for &v in &vs {
            d.check_vertex(v)?;
        }
        let out_adj = vs
            .iter()
            .map(|&u| {
                d.out_neighbors(u)
                    .iter()
                    .filter_map(|w| vs.binary_search(w).ok())
                    .collect()
            })
            .collect();
        Ok(SubDigraph { parent_n: d.n(), vertices: vs, out_adj })
    }

    /// Explicit arc subset; every arc must exist in `d` and join members.
    pub fn new(d: &Digraph, vertices: &[Vertex], arcs: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut vs: Vec<Vertex> = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        for &v in &vs {
            d.check_vertex(v)?;
        }
        let mut out_adj = vec![Vec::new(); vs.len()];
        for &(u, v) in arcs {
            let ui = vs
                .binary_search(&u)
                .map_err(|_| GraphError::BadSubDigraph(format!("arc tail {u} not a member")))?;
            let vi = vs
                .binary_search(&v)
                .map_err(|_| GraphError::BadSubDigraph(format!("arc head {v} not a member")))?;
            if !d.has_arc(u, v) {
                return Err(GraphError::BadSubDigraph(format!("arc {u}->{v} not in parent")));
            }
            out_adj[ui].push(vi);
        }
        for list in &mut out_adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(SubDigraph { parent_n: d.n(), vertices: vs, out_adj })
    }

    pub fn parent_n(&self) -> usize {
        self.parent_n
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Member vertices by parent id, sorted.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Out-neighbors of the i-th member, as member indices.
    pub fn out_neighbors_idx(&self, i: usize) -> &[usize] {
        &self.out_adj[i]
    }

    pub fn out_degree_idx(&self, i: usize) -> usize {
        self.out_adj[i].len()
    }

    pub fn max_out_degree(&self) -> usize {
        self.out_adj.iter().map(|l| l.len()).max().unwrap_or(0)
    }
}

fn reach_count(adj: &[Vec<Vertex>], start: Vertex) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn in_lists_are_transpose() {
        let d = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(d.out_neighbors(0), &[1]);
        assert_eq!(d.in_neighbors(0), &[2]);
        assert_eq!(d.arc_count(), 3);
        assert!(d.is_strongly_connected());
    }

    #[test]
    fn antiparallel_arcs_allowed_duplicates_not() {
        let d = Digraph::from_arcs(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(d.has_arc(0, 1) && d.has_arc(1, 0));
        assert_eq!(
            Digraph::from_arcs(2, &[(0, 1), (0, 1)]),
            Err(GraphError::DuplicateArc(0, 1))
        );
    }

    #[test]
    fn strong_connectivity_detects_sink() {
        let d = Digraph::from_arcs(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(!d.is_strongly_connected());
    }

    #[test]
    fn induced_subdigraph_keeps_internal_arcs() {
        let d = Digraph::from_arcs(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 0)]).unwrap();
        let h = SubDigraph::induced(&d, &[0, 1, 2]).unwrap();
        assert_eq!(h.vertices(), &[0, 1, 2]);
        assert_eq!(h.out_neighbors_idx(0), &[1]);
        assert_eq!(h.out_neighbors_idx(2), &[0]);
        assert_eq!(h.max_out_degree(), 1);
    }

    #[test]
    fn explicit_subdigraph_validates_arcs() {
        let d = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(SubDigraph::new(&d, &[0, 1], &[(0, 1)]).is_ok());
        assert!(SubDigraph::new(&d, &[0, 1], &[(1, 0)]).is_err()); // not in parent
        assert!(SubDigraph::new(&d, &[0, 1], &[(1, 2)]).is_err()); // head not a member
    }
}
