//! Simple undirected graphs with the structural queries the solvers need:
//! connectivity, stable sets, cutset verification, triangle queries.
//!
//! Vertices are dense ids `0..n`. Graphs are immutable after construction;
//! deleting vertices produces a new graph together with an id-remap table.

use crate::error::{Error, Result};
use std::fmt;

const WORD_BITS: usize = 64;

fn word_count(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// A set of vertex ids backed by a bitmask, iterated in ascending order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
    capacity: usize,
}

impl VertexSet {
    pub fn empty(capacity: usize) -> Self {
        VertexSet {
            words: vec![0; word_count(capacity)],
            capacity,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::empty(capacity);
        for v in 0..capacity {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(capacity: usize, iter: I) -> Self {
        let mut s = Self::empty(capacity);
        for v in iter {
            s.insert(v);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.capacity);
        self.words[v / WORD_BITS] |= 1 << (v % WORD_BITS);
    }

    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < self.capacity);
        self.words[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.capacity && self.words[v / WORD_BITS] & (1 << (v % WORD_BITS)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn subtract(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        !self.intersects(other)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        BitIter {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

struct BitIter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD_BITS + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

/// The three-way vertex partition behind a stable cutset: the separated
/// sides `A` and `B` and the cutset `S` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub s: Vec<usize>,
}

impl Partition {
    pub fn new(mut a: Vec<usize>, mut b: Vec<usize>, mut s: Vec<usize>) -> Self {
        a.sort_unstable();
        b.sort_unstable();
        s.sort_unstable();
        Partition { a, b, s }
    }
}

/// Simple undirected graph: no self-loops, no parallel edges.
///
/// Adjacency is a symmetric bit matrix, one row of words per vertex, so
/// common-neighbourhood queries are word-parallel AND operations.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    degrees: Vec<usize>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicate
    /// edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let words = word_count(n).max(1);
        let mut g = Graph {
            n,
            words,
            rows: vec![0; n * words],
            degrees: vec![0; n],
            m: 0,
        };
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(Error::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if g.adjacent(u, v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.rows[u * words + v / WORD_BITS] |= 1 << (v % WORD_BITS);
            g.rows[v * words + u / WORD_BITS] |= 1 << (u % WORD_BITS);
            g.degrees[u] += 1;
            g.degrees[v] += 1;
            g.m += 1;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.rows[u * self.words + v / WORD_BITS] & (1 << (v % WORD_BITS)) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter {
            words: self.row(v),
            word_idx: 0,
            current: self.row(v).first().copied().unwrap_or(0),
        }
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet {
            words: self.row(v).to_vec(),
            capacity: self.n,
        }
    }

    /// All unordered edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn min_degree(&self) -> Result<usize> {
        self.degrees.iter().copied().min().ok_or(Error::EmptyGraph)
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = VertexSet::empty(self.n);
        let mut stack = vec![0];
        seen.insert(0);
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen.contains(v) {
                    seen.insert(v);
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// True iff no two members of `s` are adjacent.
    pub fn is_stable_set(&self, s: &[usize]) -> Result<bool> {
        for &v in s {
            if v >= self.n {
                return Err(Error::VertexOutOfRange(v, self.n));
            }
        }
        for (i, &u) in s.iter().enumerate() {
            for &v in &s[i + 1..] {
                if u != v && self.adjacent(u, v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Connected components of the graph restricted to vertices outside
    /// `removed`, each sorted, ordered by smallest member.
    pub fn components_without(&self, removed: &VertexSet) -> Vec<Vec<usize>> {
        let mut seen = removed.clone();
        let mut components = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if !seen.contains(v) {
                        seen.insert(v);
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    /// True iff `s` is stable, proper, and its removal disconnects the graph.
    pub fn verify_stable_cutset(&self, s: &[usize]) -> bool {
        if s.iter().any(|&v| v >= self.n) {
            return false;
        }
        if !self.is_stable_set(s).unwrap_or(false) {
            return false;
        }
        let removed = VertexSet::from_iter(self.n, s.iter().copied());
        if removed.len() >= self.n {
            return false;
        }
        self.components_without(&removed).len() >= 2
    }

    /// Checks the adjacency and non-emptiness constraints of a candidate
    /// partition: `S` stable, no edge between `A` and `B`, all three sets
    /// nonempty. Errors when the sets do not partition the vertex set.
    pub fn verify_partition(&self, part: &Partition) -> Result<bool> {
        let mut owner = vec![0u8; self.n];
        for (label, set) in [(1u8, &part.a), (2, &part.b), (3, &part.s)] {
            for &v in set {
                if v >= self.n {
                    return Err(Error::VertexOutOfRange(v, self.n));
                }
                if owner[v] != 0 {
                    return Err(Error::BadPartition(v, "assigned twice"));
                }
                owner[v] = label;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == 0) {
            return Err(Error::BadPartition(v, "unassigned"));
        }
        if part.a.is_empty() || part.b.is_empty() || part.s.is_empty() {
            return Ok(false);
        }
        if !self.is_stable_set(&part.s)? {
            return Ok(false);
        }
        for &u in &part.a {
            for &v in &part.b {
                if self.adjacent(u, v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Some vertex `v` whose open neighbourhood is stable while vertices
    /// outside `N[v]` remain: `N(v)` then separates `v` from the rest.
    pub fn stable_neighbourhood_vertex(&self) -> Option<usize> {
        (0..self.n).find(|&v| {
            self.degree(v) < self.n - 1 && {
                let nbrs: Vec<usize> = self.neighbors(v).collect();
                self.is_stable_set(&nbrs).unwrap_or(false)
            }
        })
    }

    /// All triangles containing `v`, as sorted triples in lexicographic order.
    pub fn triangles_through(&self, v: usize) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        let nbrs: Vec<usize> = self.neighbors(v).collect();
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                if self.adjacent(x, y) {
                    let mut t = [v, x, y];
                    t.sort_unstable();
                    out.push(t);
                }
            }
        }
        out
    }

    /// True iff `v` lies in a triangle whose vertices are all in `alive`.
    pub(crate) fn in_triangle_within(&self, v: usize, alive: &VertexSet) -> bool {
        let row_v = self.row(v);
        for x in self.neighbors(v) {
            if x == v || !alive.contains(x) {
                continue;
            }
            let row_x = self.row(x);
            for ((&a, &b), &c) in row_v.iter().zip(row_x).zip(alive.words()) {
                if a & b & c != 0 {
                    return true;
                }
            }
        }
        false
    }

    /// Lexicographically smallest triangle with all vertices in `alive`.
    pub(crate) fn first_triangle_within(&self, alive: &VertexSet) -> Option<[usize; 3]> {
        for a in alive.iter() {
            for b in self.neighbors(a) {
                if b <= a || !alive.contains(b) {
                    continue;
                }
                let c = self
                    .common_neighbors_within(a, b, alive)
                    .into_iter()
                    .find(|&c| c > b);
                if let Some(c) = c {
                    return Some([a, b, c]);
                }
            }
        }
        None
    }

    pub(crate) fn common_neighbors_within(
        &self,
        u: usize,
        v: usize,
        alive: &VertexSet,
    ) -> Vec<usize> {
        let words: Vec<u64> = self
            .row(u)
            .iter()
            .zip(self.row(v))
            .zip(alive.words())
            .map(|((&a, &b), &c)| a & b & c)
            .collect();
        VertexSet {
            words,
            capacity: self.n,
        }
        .to_vec()
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        self.common_neighbors_within(u, v, &VertexSet::full(self.n))
    }

    /// New graph without the vertices of `removed`, plus the map from new
    /// ids back to the original ids.
    pub fn remove_vertices(&self, removed: &VertexSet) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|&v| !removed.contains(v)).collect();
        let mut old_to_new = vec![usize::MAX; self.n];
        for (new, &old) in keep.iter().enumerate() {
            old_to_new[old] = new;
        }
        let mut edges = Vec::new();
        for &u in &keep {
            for v in self.neighbors(u) {
                if v > u && !removed.contains(v) {
                    edges.push((old_to_new[u], old_to_new[v]));
                }
            }
        }
        let g = Graph::from_edges(keep.len(), &edges).expect("induced subgraph is simple");
        (g, keep)
    }

    /// Some vertex whose removal disconnects the graph, if any.
    pub fn cut_vertex(&self) -> Option<usize> {
        if self.n < 3 {
            return None;
        }
        (0..self.n).find(|&v| {
            let mut removed = VertexSet::empty(self.n);
            removed.insert(v);
            self.components_without(&removed).len() >= 2
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.m, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn rejects_self_loops_and_duplicates() {
        assert_eq!(
            Graph::from_edges(2, &[(0, 0)]).unwrap_err(),
            Error::SelfLoop(0)
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap_err(),
            Error::DuplicateEdge(0, 1)
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 3)]).unwrap_err(),
            Error::VertexOutOfRange(3, 2)
        );
    }

    #[test]
    fn min_degree_examples() {
        assert_eq!(named::clique(4).min_degree().unwrap(), 3);
        assert_eq!(path3().min_degree().unwrap(), 1);
        assert_eq!(named::cycle(5).min_degree().unwrap(), 2);
        assert_eq!(
            Graph::from_edges(0, &[]).unwrap().min_degree().unwrap_err(),
            Error::EmptyGraph
        );
    }

    #[test]
    fn connectivity_examples() {
        assert!(path3().is_connected());
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected());
        assert!(Graph::from_edges(1, &[]).unwrap().is_connected());
    }

    #[test]
    fn stable_set_examples() {
        let c4 = named::cycle(4);
        assert!(c4.is_stable_set(&[0, 2]).unwrap());
        let k3 = named::clique(3);
        assert!(!k3.is_stable_set(&[0, 1]).unwrap());
        assert!(k3.is_stable_set(&[]).unwrap());
        assert_eq!(
            k3.is_stable_set(&[5]).unwrap_err(),
            Error::VertexOutOfRange(5, 3)
        );
    }

    #[test]
    fn stable_cutset_examples() {
        assert!(path3().verify_stable_cutset(&[1]));
        assert!(!named::clique(4).verify_stable_cutset(&[0]));
        let c5 = named::cycle(5);
        assert!(c5.verify_stable_cutset(&[0, 2]));
        let comps =
            c5.components_without(&VertexSet::from_iter(5, [0, 2]));
        assert_eq!(comps, vec![vec![1], vec![3, 4]]);
        // removing everything is not a cutset
        assert!(!path3().verify_stable_cutset(&[0, 1, 2]));
    }

    #[test]
    fn partition_examples() {
        let c4 = named::cycle(4);
        let good = Partition::new(vec![0], vec![2], vec![1, 3]);
        assert!(c4.verify_partition(&good).unwrap());

        let k3 = named::clique(3);
        let bad = Partition::new(vec![0], vec![1], vec![2]);
        assert!(!k3.verify_partition(&bad).unwrap());

        let p3 = path3();
        let ok = Partition::new(vec![0], vec![2], vec![1]);
        assert!(p3.verify_partition(&ok).unwrap());

        let overlap = Partition::new(vec![0, 1], vec![1], vec![2]);
        assert!(p3.verify_partition(&overlap).is_err());
        let missing = Partition::new(vec![0], vec![2], vec![]);
        assert!(p3.verify_partition(&missing).is_err());
    }

    #[test]
    fn stable_neighbourhood_examples() {
        assert_eq!(named::cycle(4).stable_neighbourhood_vertex(), Some(0));
        assert_eq!(named::clique(4).stable_neighbourhood_vertex(), None);
        // star K1,3 with center 0: every leaf qualifies, leaf 1 comes first
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.stable_neighbourhood_vertex(), Some(1));
    }

    #[test]
    fn triangles_through_examples() {
        let k4 = named::clique(4);
        assert_eq!(
            k4.triangles_through(0),
            vec![[0, 1, 2], [0, 1, 3], [0, 2, 3]]
        );
        assert!(named::cycle(5).triangles_through(2).is_empty());
        let bowtie = named::bowtie();
        assert_eq!(bowtie.triangles_through(2), vec![[0, 1, 2], [2, 3, 4]]);
    }

    #[test]
    fn remove_vertices_remaps() {
        let c5 = named::cycle(5);
        let (g, map) = c5.remove_vertices(&VertexSet::from_iter(5, [1]));
        assert_eq!(g.n(), 4);
        assert_eq!(map, vec![0, 2, 3, 4]);
        assert_eq!(g.m(), 3);
        assert!(!g.is_connected() || g.m() == 3);
    }

    #[test]
    fn cut_vertex_detection() {
        assert_eq!(path3().cut_vertex(), Some(1));
        assert_eq!(named::cycle(5).cut_vertex(), None);
        assert_eq!(named::bowtie().cut_vertex(), Some(2));
    }

    #[test]
    fn cutset_iff_partition_exists_small() {
        // verify_stable_cutset(g, s) agrees with "some (A, B, s) partition
        // verifies", checked by splitting the components of g - s.
        for (n, edges) in [
            (4usize, vec![(0, 1), (1, 2), (2, 3), (3, 0)]),
            (5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]),
            (4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
        ] {
            let g = Graph::from_edges(n, &edges).unwrap();
            for mask in 1u32..(1 << n) {
                let s: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
                let is_cutset = g.verify_stable_cutset(&s);
                let removed = VertexSet::from_iter(n, s.iter().copied());
                let comps = g.components_without(&removed);
                let partition_exists = comps.len() >= 2 && {
                    let a = comps[0].clone();
                    let b: Vec<usize> =
                        comps[1..].iter().flatten().copied().collect();
                    g.verify_partition(&Partition::new(a, b, s.clone()))
                        .unwrap_or(false)
                };
                assert_eq!(is_cutset, partition_exists, "s = {s:?}");
            }
        }
    }
}
