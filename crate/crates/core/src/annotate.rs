//! Annotated graphs: each vertex carries the set of labels from
//! `{A, B, S}` that are still possible, and singleton labels propagate
//! exclusions to neighbours until a fixpoint is reached.

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

/// One of the three vertex roles: the separated sides `A` and `B`, or the
/// stable cutset `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    A,
    B,
    S,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::A, Label::B, Label::S];

    fn bit(self) -> u8 {
        match self {
            Label::A => 1,
            Label::B => 2,
            Label::S => 4,
        }
    }

    /// The label a singleton neighbour forbids: `A` excludes `B`, `B`
    /// excludes `A`, and `S` excludes `S`.
    pub fn excludes(self) -> Label {
        match self {
            Label::A => Label::B,
            Label::B => Label::A,
            Label::S => Label::S,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::A => write!(f, "A"),
            Label::B => write!(f, "B"),
            Label::S => write!(f, "S"),
        }
    }
}

/// A subset of `{A, B, S}`, stored as three bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabelSet(u8);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);
    pub const FULL: LabelSet = LabelSet(7);

    pub fn singleton(label: Label) -> Self {
        LabelSet(label.bit())
    }

    pub fn from_labels<I: IntoIterator<Item = Label>>(labels: I) -> Self {
        let mut s = LabelSet::EMPTY;
        for l in labels {
            s.0 |= l.bit();
        }
        s
    }

    pub fn contains(self, label: Label) -> bool {
        self.0 & label.bit() != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: LabelSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[must_use]
    pub fn without(self, label: Label) -> Self {
        LabelSet(self.0 & !label.bit())
    }

    #[must_use]
    pub fn intersect(self, other: LabelSet) -> Self {
        LabelSet(self.0 & other.0)
    }

    /// The only member, if this is a singleton.
    pub fn only(self) -> Option<Label> {
        match self.0 {
            1 => Some(Label::A),
            2 => Some(Label::B),
            4 => Some(Label::S),
            _ => None,
        }
    }

    pub fn iter(self) -> impl Iterator<Item = Label> {
        Label::ALL.into_iter().filter(move |l| self.contains(*l))
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// A graph together with the per-vertex sets of still-possible labels.
///
/// Values are immutable snapshots: narrowing a label set produces a new
/// annotated graph, so branch children can be fanned out safely.
#[derive(Clone, PartialEq, Eq)]
pub struct AnnotatedGraph {
    graph: Arc<Graph>,
    labels: Vec<LabelSet>,
}

impl AnnotatedGraph {
    /// Fresh annotation: every vertex still allows all of `{A, B, S}`.
    pub fn fresh(graph: Arc<Graph>) -> Self {
        let labels = vec![LabelSet::FULL; graph.n()];
        AnnotatedGraph { graph, labels }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> Arc<Graph> {
        Arc::clone(&self.graph)
    }

    pub fn labels(&self, v: usize) -> LabelSet {
        self.labels[v]
    }

    /// Narrows `v` to exactly `ls` without propagating. A branch may only
    /// narrow: `ls` must be a subset of the current labels.
    pub fn assign(&self, v: usize, ls: LabelSet) -> Result<AnnotatedGraph> {
        if v >= self.graph.n() {
            return Err(Error::VertexOutOfRange(v, self.graph.n()));
        }
        if !ls.is_subset_of(self.labels[v]) {
            return Err(Error::NotNarrowing {
                got: format!("{ls:?}"),
                have: format!("{:?}", self.labels[v]),
            });
        }
        let mut next = self.clone();
        next.labels[v] = ls;
        Ok(next)
    }

    /// Clamps `v` to the intersection of its labels with `ls`; the result
    /// may have an empty set at `v` (a failed branch, not an error).
    #[must_use]
    pub fn intersect(&self, v: usize, ls: LabelSet) -> AnnotatedGraph {
        let mut next = self.clone();
        next.labels[v] = next.labels[v].intersect(ls);
        next
    }

    /// Applies the singleton exclusion rules along every edge until
    /// nothing changes. The rules are monotone removals, so the fixpoint
    /// is unique regardless of processing order.
    #[must_use]
    pub fn propagate(&self) -> AnnotatedGraph {
        let mut next = self.clone();
        let mut queue: VecDeque<usize> = (0..next.graph.n())
            .filter(|&v| next.labels[v].len() == 1)
            .collect();
        let mut queued = vec![false; next.graph.n()];
        for &v in &queue {
            queued[v] = true;
        }
        while let Some(u) = queue.pop_front() {
            queued[u] = false;
            let Some(label) = next.labels[u].only() else {
                continue;
            };
            let excluded = label.excludes();
            for v in next.graph.neighbors(u) {
                if next.labels[v].contains(excluded) {
                    next.labels[v] = next.labels[v].without(excluded);
                    if next.labels[v].len() == 1 && !queued[v] {
                        queued[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        next
    }

    /// True iff some vertex has no possible label left.
    pub fn is_failed(&self) -> bool {
        self.labels.iter().any(|ls| ls.is_empty())
    }

    /// Counts of vertices with exactly 1, 2 and 3 possible labels.
    pub fn label_counts(&self) -> (usize, usize, usize) {
        let mut counts = (0, 0, 0);
        for ls in &self.labels {
            match ls.len() {
                1 => counts.0 += 1,
                2 => counts.1 += 1,
                3 => counts.2 += 1,
                _ => {}
            }
        }
        counts
    }

    /// Lowest-id vertex that still has all three labels.
    pub fn first_full_vertex(&self) -> Option<usize> {
        self.labels.iter().position(|ls| ls.len() == 3)
    }

    /// Reads a partition off an all-singleton annotation.
    pub fn to_partition(&self) -> Option<Partition> {
        let (mut a, mut b, mut s) = (Vec::new(), Vec::new(), Vec::new());
        for (v, ls) in self.labels.iter().enumerate() {
            match ls.only()? {
                Label::A => a.push(v),
                Label::B => b.push(v),
                Label::S => s.push(v),
            }
        }
        Some(Partition::new(a, b, s))
    }
}

impl fmt::Debug for AnnotatedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.labels.iter().enumerate())
            .finish()
    }
}
