//! Instance generation: the clique-attachment gadget that lifts minimum
//! degree while preserving stable cutsets, the extremal two-cliques-plus-
//! stable-set construction, and seeded random families for test corpora.

use crate::error::{Error, Result};
use crate::graph::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Standard small families.
pub mod named {
    use crate::graph::Graph;

    pub fn path(n: usize) -> Graph {
        assert!(n >= 1, "path needs at least one vertex");
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least three vertices");
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn clique(n: usize) -> Graph {
        assert!(n >= 1, "clique needs at least one vertex");
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        assert!(a >= 1 && b >= 1, "both sides need at least one vertex");
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::from_edges(a + b, &edges).unwrap()
    }

    /// Two triangles sharing vertex 2.
    pub fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    /// Outer cycle 0..5, inner pentagram 5..10, spokes between them.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }
}

/// Named-family selector used by the CLI; validates parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Clique(usize),
    CompleteBipartite(usize, usize),
    Bowtie,
    Petersen,
}

impl Family {
    pub fn build(self) -> Result<Graph> {
        match self {
            Family::Path(n) if n >= 1 => Ok(named::path(n)),
            Family::Cycle(n) if n >= 3 => Ok(named::cycle(n)),
            Family::Clique(n) if n >= 1 => Ok(named::clique(n)),
            Family::CompleteBipartite(a, b) if a >= 1 && b >= 1 => {
                Ok(named::complete_bipartite(a, b))
            }
            Family::Bowtie => Ok(named::bowtie()),
            Family::Petersen => Ok(named::petersen()),
            other => Err(Error::InvalidParameter(format!(
                "invalid size for family {other:?}"
            ))),
        }
    }
}

/// Bookkeeping for the gadget construction: which fresh vertices form the
/// clique attached to each original edge.
#[derive(Debug, Clone)]
pub struct GadgetSpec {
    pub c: usize,
    /// Original edge (lexicographic) to the ids of its attached clique.
    pub clique_map: Vec<((usize, usize), Vec<usize>)>,
}

/// Attaches a `(c-1)`-clique to both endpoints of every edge, so each
/// original edge becomes part of an induced `(c+1)`-clique. The output has
/// `m(c-1) + n` vertices, `m * c(c+1)/2` edges and minimum degree at least
/// `c` (originals keep their ids).
pub fn gadget(g: &Graph, c: usize) -> Result<(Graph, GadgetSpec)> {
    if c < 2 {
        return Err(Error::InvalidParameter(
            "gadget needs a target degree c >= 2".into(),
        ));
    }
    if g.m() == 0 {
        return Err(Error::InvalidParameter(
            "gadget needs a graph with at least one edge".into(),
        ));
    }
    let mut edges = g.edges();
    edges.sort_unstable();
    let mut out_edges: Vec<(usize, usize)> = edges.clone();
    let mut clique_map = Vec::with_capacity(edges.len());
    let mut next = g.n();
    for &(u, v) in &edges {
        let fresh: Vec<usize> = (next..next + c - 1).collect();
        next += c - 1;
        for (i, &x) in fresh.iter().enumerate() {
            out_edges.push((u, x));
            out_edges.push((v, x));
            for &y in &fresh[i + 1..] {
                out_edges.push((x, y));
            }
        }
        clique_map.push(((u, v), fresh));
    }
    let out = Graph::from_edges(next, &out_edges)?;
    debug_assert_eq!(out.n(), g.m() * (c - 1) + g.n());
    debug_assert_eq!(out.m(), g.m() * c * (c + 1) / 2);
    Ok((out, GadgetSpec { c, clique_map }))
}

/// Clique `A` (ids `0..a`), clique `B` (ids `a..a+b`), stable set `S`
/// (ids `a+b..a+b+s`) complete to `A` and `B`; `S` is a stable cutset and
/// every degree is at its partition-imposed maximum.
pub fn extremal(a: usize, b: usize, s: usize) -> Graph {
    assert!(a >= 1 && b >= 1 && s >= 1, "all three sets must be nonempty");
    let n = a + b + s;
    let mut edges = Vec::new();
    for u in 0..a {
        for v in u + 1..a {
            edges.push((u, v));
        }
    }
    for u in a..a + b {
        for v in u + 1..a + b {
            edges.push((u, v));
        }
    }
    for w in a + b..n {
        for u in 0..a + b {
            edges.push((u, w));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Profile for `random_connected`: either an exact edge count or a minimum
/// degree to reach.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomProfile {
    EdgeBudget(usize),
    MinDegree(usize),
}

/// Seeded connected graph: a uniform random spanning tree (random Prüfer
/// sequence) plus either uniformly chosen extra edges up to the edge budget
/// or greedy degree repair up to the target minimum degree. ChaCha-based
/// seeding keeps corpora identical across platforms.
pub fn random_connected(n: usize, profile: RandomProfile, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InfeasibleProfile("graph needs vertices".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = random_tree(n, &mut rng);
    match profile {
        RandomProfile::EdgeBudget(m) => {
            let max = n * (n - 1) / 2;
            if m + 1 < n || m > max {
                return Err(Error::InfeasibleProfile(format!(
                    "edge budget {m} infeasible for n = {n}"
                )));
            }
            let present: std::collections::BTreeSet<(usize, usize)> =
                edges.iter().copied().collect();
            let mut candidates: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|e| !present.contains(e))
                .collect();
            candidates.shuffle(&mut rng);
            edges.extend(candidates.into_iter().take(m - edges.len()));
        }
        RandomProfile::MinDegree(d) => {
            if d >= n {
                return Err(Error::InfeasibleProfile(format!(
                    "minimum degree {d} infeasible for n = {n}"
                )));
            }
            let mut adj = vec![vec![false; n]; n];
            let mut deg = vec![0usize; n];
            for &(u, v) in &edges {
                adj[u][v] = true;
                adj[v][u] = true;
                deg[u] += 1;
                deg[v] += 1;
            }
            while let Some(v) = (0..n).find(|&v| deg[v] < d) {
                let candidates: Vec<usize> =
                    (0..n).filter(|&u| u != v && !adj[v][u]).collect();
                let &u = candidates
                    .get(rng.gen_range(0..candidates.len()))
                    .expect("deficient vertex has a non-neighbour");
                adj[v][u] = true;
                adj[u][v] = true;
                deg[v] += 1;
                deg[u] += 1;
                edges.push((v.min(u), v.max(u)));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Seeded connected graph where every vertex lies in a triangle: a random
/// connected base, then deterministic edge additions until the invariant
/// holds. Feedstock for the decomposition tests.
pub fn random_triangle_rich(n: usize, extra_edges: usize, seed: u64) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InfeasibleProfile(
            "triangle-rich graphs need at least three vertices".into(),
        ));
    }
    let max = n * (n - 1) / 2;
    let budget = (n - 1 + extra_edges).min(max);
    let g = random_connected(n, RandomProfile::EdgeBudget(budget), seed)?;
    let mut edges: std::collections::BTreeSet<(usize, usize)> =
        g.edges().into_iter().collect();
    loop {
        let g = Graph::from_edges(n, &edges.iter().copied().collect::<Vec<_>>())?;
        let Some(v) = (0..n).find(|&v| g.triangles_through(v).is_empty()) else {
            return Ok(g);
        };
        let u = g.neighbors(v).next().expect("connected graph");
        let partner = g.neighbors(u).find(|&w| w != v);
        match partner {
            Some(w) => {
                edges.insert((v.min(w), v.max(w)));
            }
            None => {
                let w = (0..n).find(|&w| w != u && w != v).unwrap();
                edges.insert((u.min(w), u.max(w)));
                edges.insert((v.min(w), v.max(w)));
            }
        }
    }
}

fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    if n == 1 {
        return Vec::new();
    }
    if n == 2 {
        return vec![(0, 1)];
    }
    // decode a random Pruefer sequence: uniform over labelled trees
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(std::cmp::Reverse)
        .collect();
    for &v in &seq {
        let std::cmp::Reverse(leaf) = leaves.pop().unwrap();
        edges.push((leaf.min(v), leaf.max(v)));
        degree[leaf] -= 1;
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(std::cmp::Reverse(v));
        }
    }
    let std::cmp::Reverse(u) = leaves.pop().unwrap();
    let std::cmp::Reverse(v) = leaves.pop().unwrap();
    edges.push((u.min(v), u.max(v)));
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn gadget_small_counts() {
        // a single edge with c = 2 becomes a triangle
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let (g, spec) = gadget(&edge, 2).unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert_eq!(spec.clique_map.len(), 1);

        // P3 with c = 3: 2*2+3 = 7 vertices, 2*6 = 12 edges
        let (g, _) = gadget(&named::path(3), 3).unwrap();
        assert_eq!((g.n(), g.m()), (7, 12));
        assert!(g.min_degree().unwrap() >= 3);

        assert!(gadget(&edge, 1).is_err());
        assert!(gadget(&Graph::from_edges(2, &[]).unwrap(), 2).is_err());
    }

    #[test]
    fn gadget_preserves_verdict_on_samples() {
        for base in [named::path(4), named::cycle(4), named::clique(3)] {
            let before = oracle::brute_scs(&base).unwrap().is_some();
            for c in [2, 3] {
                let (lifted, _) = gadget(&base, c).unwrap();
                assert!(lifted.is_connected());
                let after = oracle::brute_scs(&lifted).unwrap().is_some();
                assert_eq!(before, after, "base {base:?} c={c}");
            }
        }
    }

    #[test]
    fn extremal_examples() {
        let p3ish = extremal(1, 1, 1);
        assert_eq!((p3ish.n(), p3ish.m()), (3, 2));

        let g = extremal(2, 2, 2);
        assert_eq!((g.n(), g.m()), (6, 10));
        assert_eq!(g.min_degree().unwrap(), 3);
        assert!(g.verify_stable_cutset(&[4, 5]));

        for t in 1..=4 {
            let g = extremal(t, t, t);
            assert_eq!(g.min_degree().unwrap(), 2 * t - 1);
            let s: Vec<usize> = (2 * t..3 * t).collect();
            assert!(g.verify_stable_cutset(&s));
        }
    }

    #[test]
    fn random_connected_profiles() {
        let g = random_connected(8, RandomProfile::EdgeBudget(12), 1).unwrap();
        assert!(g.is_connected());
        assert_eq!(g.m(), 12);

        let g = random_connected(10, RandomProfile::MinDegree(5), 7).unwrap();
        assert!(g.is_connected());
        assert!(g.min_degree().unwrap() >= 5);

        let a = random_connected(9, RandomProfile::EdgeBudget(14), 42).unwrap();
        let b = random_connected(9, RandomProfile::EdgeBudget(14), 42).unwrap();
        assert_eq!(a, b);

        assert!(random_connected(5, RandomProfile::EdgeBudget(3), 0).is_err());
        assert!(random_connected(5, RandomProfile::MinDegree(5), 0).is_err());
    }

    #[test]
    fn triangle_rich_invariant() {
        for seed in 0..20 {
            let g = random_triangle_rich(12, 8, seed).unwrap();
            assert!(g.is_connected());
            for v in 0..g.n() {
                assert!(!g.triangles_through(v).is_empty(), "vertex {v} seed {seed}");
            }
        }
    }

    #[test]
    fn family_validation() {
        assert!(Family::Cycle(2).build().is_err());
        assert!(Family::Path(0).build().is_err());
        assert_eq!(Family::Cycle(5).build().unwrap().n(), 5);
        assert_eq!(Family::CompleteBipartite(2, 3).build().unwrap().m(), 6);
        assert_eq!(Family::Petersen.build().unwrap().m(), 15);
    }
}
