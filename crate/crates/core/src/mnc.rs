//! Branching on three-labelled vertices: propagate, branch a full vertex
//! into its three labels, finish with the CSP base case once every vertex
//! has at most two labels. The same skeleton solves 3-colouring, with
//! colour propagation instead of the cutset rules.

use crate::annotate::{AnnotatedGraph, Label, LabelSet};
use crate::branching::{self, InstanceStats, LeafSolver, ScsVerdict};
use crate::csp::CspInstance;
use crate::error::Result;
use crate::graph::{Graph, Partition};

pub(crate) fn mnc_core(ag: AnnotatedGraph, stats: &mut InstanceStats) -> Option<Partition> {
    branch_rec(&ag, stats)
}

fn branch_rec(ag: &AnnotatedGraph, stats: &mut InstanceStats) -> Option<Partition> {
    stats.nodes += 1;
    let ag = ag.propagate();
    if ag.is_failed() {
        return None;
    }
    if let Some(v) = ag.first_full_vertex() {
        for label in Label::ALL {
            let child = ag.intersect(v, LabelSet::singleton(label));
            if let Some(partition) = branch_rec(&child, stats) {
                return Some(partition);
            }
        }
        return None;
    }
    // every vertex has one or two labels left: polynomial CSP endgame
    stats.leaf_csps += 1;
    let n = ag.graph().n();
    let inst = CspInstance::from_annotated(&ag);
    inst.solve()
        .map(|sol| branching::solution_to_partition(&sol, n))
}

/// Branch-for-stable-cutset on an already-annotated graph: first valid
/// partition respecting the adjacency rules, or none. Non-emptiness is the
/// pinning wrapper's job.
pub fn branch_for_scs(ag: &AnnotatedGraph) -> Option<Partition> {
    let mut stats = InstanceStats::default();
    branch_rec(ag, &mut stats)
}

/// Stable cutset via the pinning wrapper around [`branch_for_scs`].
pub fn solve_mnc(g: &Graph) -> Result<ScsVerdict> {
    branching::solve_scs(g, LeafSolver::Mnc)
}

/// Per-vertex colour sets for the 3-colouring twin.
#[derive(Clone)]
struct ColourState {
    domains: Vec<u8>,
}

impl ColourState {
    fn fresh(n: usize) -> Self {
        ColourState {
            domains: vec![0b111; n],
        }
    }

    fn len(&self, v: usize) -> u32 {
        self.domains[v].count_ones()
    }

    /// Singleton colours exclude themselves at every neighbour, to fixpoint.
    fn propagate(&mut self, g: &Graph) -> bool {
        let mut queue: Vec<usize> =
            (0..g.n()).filter(|&v| self.len(v) == 1).collect();
        let mut queued = vec![false; g.n()];
        for &v in &queue {
            queued[v] = true;
        }
        while let Some(u) = queue.pop() {
            let colour = self.domains[u];
            for v in g.neighbors(u) {
                if self.domains[v] & colour != 0 {
                    self.domains[v] &= !colour;
                    match self.domains[v].count_ones() {
                        0 => return false,
                        1 if !queued[v] => {
                            queued[v] = true;
                            queue.push(v);
                        }
                        _ => {}
                    }
                }
            }
        }
        self.domains.iter().all(|&d| d != 0)
    }
}

fn colour_branch(g: &Graph, mut state: ColourState) -> Option<Vec<u8>> {
    if !state.propagate(g) {
        return None;
    }
    if let Some(v) = (0..g.n()).find(|&v| state.len(v) == 3) {
        for colour in 0..3u8 {
            let mut child = state.clone();
            child.domains[v] = 1 << colour;
            if let Some(colouring) = colour_branch(g, child) {
                return Some(colouring);
            }
        }
        return None;
    }
    // all domains have at most two colours: decide via the CSP endgame
    let domains: Vec<Vec<u8>> = (0..g.n())
        .map(|v| (0..3).filter(|&c| state.domains[v] & (1 << c) != 0).collect())
        .collect();
    let mut inst = CspInstance::with_domains(domains).expect("colours in range");
    for (u, v) in g.edges() {
        for c in 0..3u8 {
            if state.domains[u] & (1 << c) != 0 && state.domains[v] & (1 << c) != 0 {
                inst.add_forbidden((u, c), (v, c)).expect("literals live");
            }
        }
    }
    let sol = inst.solve()?;
    Some((0..g.n()).map(|v| sol.get(v).unwrap()).collect())
}

/// Exact 3-colouring with the same branching skeleton: branch on a vertex
/// with all three colours, propagate exclusions, finish with the CSP base
/// case. Vertex 0's colour is fixed to break the global colour symmetry.
pub fn solve_3colouring(g: &Graph) -> Option<Vec<u8>> {
    if g.n() == 0 {
        return Some(Vec::new());
    }
    let mut state = ColourState::fresh(g.n());
    state.domains[0] = 0b001;
    let colouring = colour_branch(g, state)?;
    debug_assert!(g
        .edges()
        .iter()
        .all(|&(u, v)| colouring[u] != colouring[v]));
    Some(colouring)
}
