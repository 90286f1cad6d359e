//! Graph and digraph generators: fixed families plus seeded random models
//! with post-generation constraint checks and rejection resampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::Digraph;
use crate::distance::{diameter, directed_diameter};
use crate::error::GenerateError;
use crate::graph::Graph;

/// Retry limit for rejection-resampled random models.
pub const DEFAULT_RETRIES: usize = 512;

pub fn path(n: usize) -> Result<Graph, GenerateError> {
    require(n >= 1, "path needs n >= 1")?;
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Ok(Graph::from_edges(n, &edges).expect("path edges are valid"))
}

pub fn cycle(n: usize) -> Result<Graph, GenerateError> {
    require(n >= 3, "cycle needs n >= 3")?;
    let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n - 1, 0));
    Ok(Graph::from_edges(n, &edges).expect("cycle edges are valid"))
}

pub fn complete(n: usize) -> Result<Graph, GenerateError> {
    require(n >= 1, "complete needs n >= 1")?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("complete edges are valid"))
}

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges_dedup(10, &edges).expect("petersen edges are valid")
}

/// Cubic graph from an LCF notation: Hamiltonian cycle plus chords.
fn lcf(n: usize, pattern: &[i64]) -> Graph {
    let mut edges = std::collections::BTreeSet::new();
    for i in 0..n {
        edges.insert((i.min((i + 1) % n), i.max((i + 1) % n)));
        let off = pattern[i % pattern.len()];
        let j = ((i as i64 + off).rem_euclid(n as i64)) as usize;
        edges.insert((i.min(j), i.max(j)));
    }
    let edges: Vec<_> = edges.into_iter().collect();
    Graph::from_edges(n, &edges).expect("lcf edges are valid")
}

/// The Heawood graph (14 vertices, 3-regular, girth 6).
pub fn heawood() -> Graph {
    lcf(14, &[5, -5])
}

/// The McGee graph (24 vertices, 3-regular, girth 7).
pub fn mcgee() -> Graph {
    lcf(24, &[12, 7, -7])
}

/// Uniform random tree via Prüfer decoding.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GenerateError> {
    require(n >= 1, "tree needs n >= 1")?;
    if n == 1 {
        return Ok(Graph::from_edges(1, &[]).unwrap());
    }
    if n == 2 {
        return Ok(Graph::from_edges(2, &[(0, 1)]).unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let prufer: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &prufer {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    for &v in &prufer {
        let leaf = *leaves.iter().next().expect("prufer decoding has a leaf");
        leaves.remove(&leaf);
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let mut it = leaves.iter();
    let a = *it.next().unwrap();
    let b = *it.next().unwrap();
    edges.push((a, b));
    Ok(Graph::from_edges(n, &edges).expect("prufer edges form a tree"))
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("gnp edges are valid")
}

/// Connected random graph with diameter ≤ `diam_bound`. If `p` is `None` a
/// density heuristic is used, and the density is raised after repeated
/// rejections so the loop terminates (at p = 1 the graph is complete).
pub fn random_with_diameter_bound(
    n: usize,
    diam_bound: usize,
    p: Option<f64>,
    seed: u64,
    retries: usize,
) -> Result<Graph, GenerateError> {
    require(n >= 1, "random graph needs n >= 1")?;
    require(diam_bound >= 1 || n == 1, "diameter bound must be >= 1")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut prob = p.unwrap_or_else(|| heuristic_p_for_diameter(n, diam_bound));
    for attempt in 0..retries {
        let g = gnp(n, prob, &mut rng);
        if g.is_connected() && diameter(&g).map(|d| d <= diam_bound).unwrap_or(false) {
            return Ok(g);
        }
        if p.is_none() && attempt % 16 == 15 {
            prob = (prob * 1.3).min(1.0);
        }
    }
    Err(GenerateError::RetriesExhausted {
        family: "random-diam".into(),
        retries,
    })
}

fn heuristic_p_for_diameter(n: usize, d: usize) -> f64 {
    if n <= 2 {
        return 1.0;
    }
    let nf = n as f64;
    // Rough G(n,p) diameter-d threshold: p^d n^(d-1) ≈ 2 ln n.
    let p = (2.0 * nf.ln() / nf.powi(d as i32 - 1)).powf(1.0 / d as f64);
    (1.2 * p).clamp(0.05, 1.0)
}

fn random_digraph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::from_arcs(n, &arcs).expect("random arcs are valid")
}

/// Strongly connected random digraph with directed diameter ≤ 2.
pub fn random_diam2_digraph(
    n: usize,
    p: Option<f64>,
    seed: u64,
    retries: usize,
) -> Result<Digraph, GenerateError> {
    require(n >= 2, "diameter-2 digraph needs n >= 2")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nf = n as f64;
    let mut prob = p.unwrap_or_else(|| (1.6 * (2.0 * nf.ln() / nf).sqrt()).clamp(0.3, 1.0));
    for attempt in 0..retries {
        let d = random_digraph(n, prob, &mut rng);
        if d.is_strongly_connected() && directed_diameter(&d).map(|x| x <= 2).unwrap_or(false) {
            return Ok(d);
        }
        if p.is_none() && attempt % 16 == 15 {
            prob = (prob * 1.2).min(1.0);
        }
    }
    Err(GenerateError::RetriesExhausted {
        family: "random-diam2".into(),
        retries,
    })
}

/// Bipartite digraph (all arcs crossing the bipartition) that is strongly
/// connected with directed diameter ≤ 3. Sides are 0..⌈n/2⌉ and the rest.
pub fn random_bipartite_diam3_digraph(
    n: usize,
    p: Option<f64>,
    seed: u64,
    retries: usize,
) -> Result<Digraph, GenerateError> {
    require(n >= 2, "bipartite digraph needs n >= 2")?;
    let left = n.div_ceil(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = left.max(n - left) as f64;
    let mut prob = p.unwrap_or_else(|| (1.6 * (2.0 * half.ln().max(1.0) / half).sqrt()).clamp(0.4, 1.0));
    for attempt in 0..retries {
        let mut arcs = Vec::new();
        for u in 0..left {
            for v in left..n {
                if rng.random_bool(prob) {
                    arcs.push((u, v));
                }
                if rng.random_bool(prob) {
                    arcs.push((v, u));
                }
            }
        }
        let d = Digraph::from_arcs(n, &arcs).expect("bipartite arcs are valid");
        if d.is_strongly_connected() && directed_diameter(&d).map(|x| x <= 3).unwrap_or(false) {
            return Ok(d);
        }
        if p.is_none() && attempt % 16 == 15 {
            prob = (prob * 1.2).min(1.0);
        }
    }
    Err(GenerateError::RetriesExhausted {
        family: "random-bipartite-diam3".into(),
        retries,
    })
}

/// Output of the family dispatcher.
#[derive(Debug, Clone)]
pub enum Generated {
    Graph(Graph),
    Digraph(Digraph),
}

impl Generated {
    pub fn n(&self) -> usize {
        match self {
            Generated::Graph(g) => g.n(),
            Generated::Digraph(d) => d.n(),
        }
    }

    pub fn as_graph(&self) -> Option<&Graph> {
        match self {
            Generated::Graph(g) => Some(g),
            Generated::Digraph(_) => None,
        }
    }

    pub fn as_digraph(&self) -> Option<&Digraph> {
        match self {
            Generated::Digraph(d) => Some(d),
            Generated::Graph(_) => None,
        }
    }
}

/// Parsed `family:key=value,...` generator spec, e.g. `cycle:n=5` or
/// `random-diam2:n=8`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub family: String,
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub p: Option<f64>,
}

impl FamilySpec {
    pub fn parse(spec: &str) -> Result<Self, GenerateError> {
        let (family, rest) = match spec.split_once(':') {
            Some((f, r)) => (f, r),
            None => (spec, ""),
        };
        let mut out = FamilySpec {
            family: family.to_string(),
            n: None,
            d: None,
            p: None,
        };
        if !rest.is_empty() {
            for kv in rest.split(',') {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| GenerateError::BadParams(format!("expected key=value in {kv:?}")))?;
                match k {
                    "n" => out.n = Some(parse_num(v)?),
                    "d" => out.d = Some(parse_num(v)?),
                    "p" => {
                        let p: f64 = v
                            .parse()
                            .map_err(|_| GenerateError::BadParams(format!("bad p value {v:?}")))?;
                        out.p = Some(p);
                    }
                    other => {
                        return Err(GenerateError::BadParams(format!("unknown key {other:?}")));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Generate the graph or digraph this spec names.
    pub fn generate(&self, seed: u64) -> Result<Generated, GenerateError> {
        let n = self.n;
        let need_n = |what: &str| {
            n.ok_or_else(|| GenerateError::BadParams(format!("{what} requires n")))
        };
        match self.family.as_str() {
            "path" => Ok(Generated::Graph(path(need_n("path")?)?)),
            "cycle" => Ok(Generated::Graph(cycle(need_n("cycle")?)?)),
            "complete" => Ok(Generated::Graph(complete(need_n("complete")?)?)),
            "petersen" => Ok(Generated::Graph(petersen())),
            "heawood" => Ok(Generated::Graph(heawood())),
            "mcgee" => Ok(Generated::Graph(mcgee())),
            "random-tree" => Ok(Generated::Graph(random_tree(need_n("random-tree")?, seed)?)),
            "random-diam" => {
                let d = self
                    .d
                    .ok_or_else(|| GenerateError::BadParams("random-diam requires d".into()))?;
                Ok(Generated::Graph(random_with_diameter_bound(
                    need_n("random-diam")?,
                    d,
                    self.p,
                    seed,
                    DEFAULT_RETRIES,
                )?))
            }
            "random-diam2" => Ok(Generated::Digraph(random_diam2_digraph(
                need_n("random-diam2")?,
                self.p,
                seed,
                DEFAULT_RETRIES,
            )?)),
            "random-bipartite-diam3" => Ok(Generated::Digraph(random_bipartite_diam3_digraph(
                need_n("random-bipartite-diam3")?,
                self.p,
                seed,
                DEFAULT_RETRIES,
            )?)),
            other => Err(GenerateError::UnknownFamily(other.to_string())),
        }
    }
}

fn parse_num(v: &str) -> Result<usize, GenerateError> {
    v.parse()
        .map_err(|_| GenerateError::BadParams(format!("bad integer {v:?}")))
}

fn require(cond: bool, msg: &str) -> Result<(), GenerateError> {
    if cond {
        Ok(())
    } else {
        Err(GenerateError::BadParams(msg.into()))
    }
}

/// Random connected graph without a diameter constraint (test ensembles).
pub fn random_connected(n: usize, p: f64, seed: u64, retries: usize) -> Result<Graph, GenerateError> {
    require(n >= 1, "random graph needs n >= 1")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut prob = p;
    for attempt in 0..retries {
        let g = gnp(n, prob, &mut rng);
        if g.is_connected() {
            return Ok(g);
        }
        if attempt % 16 == 15 {
            prob = (prob * 1.3).min(1.0);
        }
    }
    Err(GenerateError::RetriesExhausted {
        family: "random-connected".into(),
        retries,
    })
}
