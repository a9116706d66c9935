//! Top-level stable cutset drivers.
//!
//! The non-emptiness pinning wrapper fixes vertex 0 (and, in a second
//! phase, one of its neighbours) to concrete labels and sweeps the
//! remaining choices; each pinned instance goes to a core solver. On top
//! of that sit the structural early exits and the general algorithm that
//! branches over a triangle decomposition before handing leaves to the
//! CSP solver.

use crate::annotate::{AnnotatedGraph, Label, LabelSet};
use crate::csp::{value_label, CspInstance, CspSolution};
use crate::decompose::{self, FamilySet};
use crate::error::{Error, Result};
use crate::exec;
use crate::graph::{Graph, Partition, VertexSet};
use crate::mindeg;
use crate::mnc;
use std::sync::Arc;

/// Which structural shortcut settled the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EarlyExit {
    /// Some vertex has a stable neighbourhood separating it from the rest.
    StableNeighbourhood,
    /// A single vertex disconnects the graph.
    CutVertex,
    /// Sparse graphs (m <= 2n - 4) always have a stable cutset; the
    /// certificate still comes from a full solve.
    SparseEdges,
    /// Minimum degree above two thirds of n - 1 rules a cutset out.
    DegreeBound,
}

/// Work counters for a solver run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Branch-tree nodes explored (pinned instances count their roots).
    pub nodes: u64,
    /// Leaf CSP instances solved.
    pub leaf_csps: u64,
    pub early_exit: Option<EarlyExit>,
}

/// Outcome of a stable cutset decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScsVerdict {
    pub has_cutset: bool,
    /// Present exactly when the answer is yes; always passes
    /// `verify_partition`.
    pub certificate: Option<Partition>,
    pub stats: SolveStats,
}

impl ScsVerdict {
    fn no(stats: SolveStats) -> Self {
        ScsVerdict {
            has_cutset: false,
            certificate: None,
            stats,
        }
    }

    fn yes(certificate: Partition, stats: SolveStats) -> Self {
        ScsVerdict {
            has_cutset: true,
            certificate: Some(certificate),
            stats,
        }
    }
}

/// Core algorithm run inside the pinning wrapper.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafSolver {
    /// Convert each pinned instance straight to a (3,2)-CSP and solve.
    Csp,
    /// Branch on three-labelled vertices first (measure-and-conquer style).
    Mnc,
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct InstanceStats {
    pub nodes: u64,
    pub leaf_csps: u64,
}

pub(crate) fn solution_to_partition(solution: &CspSolution, n: usize) -> Partition {
    let (mut a, mut b, mut s) = (Vec::new(), Vec::new(), Vec::new());
    for v in 0..n {
        match solution.get(v).map(value_label) {
            Some(Label::A) => a.push(v),
            Some(Label::B) => b.push(v),
            Some(Label::S) => s.push(v),
            None => unreachable!("solution covers every vertex"),
        }
    }
    Partition::new(a, b, s)
}

fn check_preconditions(g: &Graph) -> Result<()> {
    if g.n() < 3 {
        return Err(Error::TooFewVertices(3));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Sweeps the pinned instances of the non-emptiness wrapper through `core`.
///
/// Phase 1 fixes `p(0) = {A}` and tries `p(v) = {B}` for every other `v`;
/// if all fail, phase 2 fixes `p(0) = {S}`, `p(x) = {A}` for each neighbour
/// `x` of 0, and again sweeps `v` over `{B}`-pins. Yes iff any pinned
/// instance admits a valid labelling.
pub(crate) fn run_pinning_wrapper<F>(
    graph: &Arc<Graph>,
    core: F,
) -> (Option<Partition>, SolveStats)
where
    F: Fn(AnnotatedGraph, &mut InstanceStats) -> Option<Partition> + Sync + Send,
{
    let n = graph.n();
    let u = 0usize;
    let phase1: Vec<Vec<(usize, Label)>> = (0..n)
        .filter(|&v| v != u)
        .map(|v| vec![(u, Label::A), (v, Label::B)])
        .collect();
    let run = |pins: Vec<(usize, Label)>| -> (Option<Partition>, InstanceStats) {
        let mut ag = AnnotatedGraph::fresh(Arc::clone(graph));
        for (v, label) in pins {
            ag = ag
                .assign(v, LabelSet::singleton(label))
                .expect("pins narrow fresh labels");
        }
        let mut stats = InstanceStats::default();
        let found = core(ag, &mut stats);
        (found, stats)
    };

    let mut total = SolveStats::default();
    let mut fold = |outcomes: Vec<(Option<Partition>, InstanceStats)>| {
        let mut hit = None;
        for (found, stats) in outcomes {
            total.nodes += stats.nodes;
            total.leaf_csps += stats.leaf_csps;
            if found.is_some() {
                hit = found;
            }
        }
        hit
    };

    let outcomes = exec::prefix_until_hit(phase1, run, |r| r.0.is_some());
    if let Some(partition) = fold(outcomes) {
        return (Some(partition), total);
    }

    let phase2: Vec<Vec<(usize, Label)>> = graph
        .neighbors(u)
        .flat_map(|x| {
            (0..n)
                .filter(move |&v| v != u && v != x)
                .map(move |v| vec![(u, Label::S), (x, Label::A), (v, Label::B)])
        })
        .collect();
    let outcomes = exec::prefix_until_hit(phase2, run, |r| r.0.is_some());
    let hit = fold(outcomes);
    (hit, total)
}

fn csp_core(ag: AnnotatedGraph, stats: &mut InstanceStats) -> Option<Partition> {
    stats.nodes += 1;
    stats.leaf_csps += 1;
    let n = ag.graph().n();
    let inst = CspInstance::from_annotated(&ag);
    inst.solve().map(|sol| solution_to_partition(&sol, n))
}

/// The pinning-wrapper driver: decides stable cutset existence by sweeping
/// pinned instances through the chosen core solver.
pub fn solve_scs(g: &Graph, leaf: LeafSolver) -> Result<ScsVerdict> {
    check_preconditions(g)?;
    let graph = Arc::new(g.clone());
    let (found, stats) = match leaf {
        LeafSolver::Csp => run_pinning_wrapper(&graph, csp_core),
        LeafSolver::Mnc => run_pinning_wrapper(&graph, mnc::mnc_core),
    };
    Ok(match found {
        Some(partition) => {
            debug_assert!(g.verify_partition(&partition).unwrap_or(false));
            ScsVerdict::yes(partition, stats)
        }
        None => ScsVerdict::no(stats),
    })
}

/// Structural shortcuts checked before any branching:
/// a stable-neighbourhood vertex or a cut vertex gives an immediate yes
/// with certificate, `m <= 2n - 4` guarantees yes (certificate found by a
/// full solve), and minimum degree above `2(n-1)/3` gives no.
pub fn early_exit(g: &Graph) -> Option<ScsVerdict> {
    if let Some(v) = g.stable_neighbourhood_vertex() {
        let s: Vec<usize> = g.neighbors(v).collect();
        let removed = VertexSet::from_iter(g.n(), s.iter().copied().chain([v]));
        let b: Vec<usize> = (0..g.n()).filter(|&w| !removed.contains(w)).collect();
        let partition = Partition::new(vec![v], b, s);
        debug_assert!(g.verify_partition(&partition).unwrap_or(false));
        let stats = SolveStats {
            early_exit: Some(EarlyExit::StableNeighbourhood),
            ..SolveStats::default()
        };
        return Some(ScsVerdict::yes(partition, stats));
    }
    if let Some(v) = g.cut_vertex() {
        let mut removed = VertexSet::empty(g.n());
        removed.insert(v);
        let comps = g.components_without(&removed);
        let a = comps[0].clone();
        let b: Vec<usize> = comps[1..].iter().flatten().copied().collect();
        let partition = Partition::new(a, b, vec![v]);
        debug_assert!(g.verify_partition(&partition).unwrap_or(false));
        let stats = SolveStats {
            early_exit: Some(EarlyExit::CutVertex),
            ..SolveStats::default()
        };
        return Some(ScsVerdict::yes(partition, stats));
    }
    if g.m() + 4 <= 2 * g.n() {
        // sparse graphs always admit a stable cutset; fall through to a
        // full solve for the certificate
        if let Ok(mut verdict) = solve_scs(g, LeafSolver::Csp) {
            verdict.stats.early_exit = Some(EarlyExit::SparseEdges);
            return Some(verdict);
        }
    }
    if mindeg::no_scs_by_degree(g) {
        let stats = SolveStats {
            early_exit: Some(EarlyExit::DegreeBound),
            ..SolveStats::default()
        };
        return Some(ScsVerdict::no(stats));
    }
    None
}

/// Picks the triangle vertex with the most neighbours outside the triangle
/// but inside the set, when that count reaches two (the closed-
/// neighbourhood rule's applicability condition).
pub fn rule1_vertex(g: &Graph, set: &FamilySet) -> Option<usize> {
    let outside = set.outside();
    let mut best: Option<(usize, usize)> = None;
    for &t in &set.triangle {
        let count = outside.iter().filter(|&&w| g.adjacent(t, w)).count();
        if best.is_none_or(|(_, c)| count > c) {
            best = Some((t, count));
        }
    }
    match best {
        Some((v, c)) if c >= 2 => Some(v),
        _ => None,
    }
}

/// Closed-neighbourhood branching: three children fixing the chosen
/// triangle vertex to each label, followed by propagation.
pub fn branch_rule_1(
    ag: &AnnotatedGraph,
    set: &FamilySet,
) -> Result<[AnnotatedGraph; 3]> {
    let v = rule1_vertex(ag.graph(), set).ok_or_else(|| {
        Error::InvalidParameter(
            "branching rule 1 needs a triangle vertex with two outside neighbours".into(),
        )
    })?;
    Ok(Label::ALL
        .map(|label| ag.intersect(v, LabelSet::singleton(label)).propagate()))
}

/// Triangle branching: two children clamping every triangle vertex to
/// `{A, S}` or `{B, S}`, followed by propagation. Applies when rule 1 does
/// not; already-narrowed domains are intersected.
pub fn branch_rule_2(ag: &AnnotatedGraph, triangle: [usize; 3]) -> [AnnotatedGraph; 2] {
    let sides = [
        LabelSet::from_labels([Label::A, Label::S]),
        LabelSet::from_labels([Label::B, Label::S]),
    ];
    sides.map(|side| {
        let mut child = ag.clone();
        for &t in &triangle {
            child = child.intersect(t, side);
        }
        child.propagate()
    })
}

fn branch_over_sets(
    ag: &AnnotatedGraph,
    sets: &[FamilySet],
    idx: usize,
    stats: &mut InstanceStats,
) -> Option<Partition> {
    stats.nodes += 1;
    if idx == sets.len() {
        stats.leaf_csps += 1;
        let n = ag.graph().n();
        let inst = CspInstance::from_annotated(ag);
        return inst.solve().map(|sol| solution_to_partition(&sol, n));
    }
    let set = &sets[idx];
    let children: Vec<AnnotatedGraph> = if rule1_vertex(ag.graph(), set).is_some() {
        branch_rule_1(ag, set).expect("applicability just checked").to_vec()
    } else {
        branch_rule_2(ag, set.triangle).to_vec()
    };
    for child in children {
        if child.is_failed() {
            continue;
        }
        if let Some(partition) = branch_over_sets(&child, sets, idx + 1, stats) {
            return Some(partition);
        }
    }
    None
}

/// The general algorithm: early exits, then branch over the sets of the
/// triangle decomposition inside the pinning wrapper, solving leaves as
/// (3,2)-CSP instances.
pub fn solve_general(g: &Graph) -> Result<ScsVerdict> {
    check_preconditions(g)?;
    if let Some(verdict) = early_exit(g) {
        return Ok(verdict);
    }
    // no stable-neighbourhood vertex: every vertex must lie in a triangle
    for v in 0..g.n() {
        if g.triangles_through(v).is_empty() {
            return Err(Error::Internal(format!(
                "vertex {v} outside every triangle despite no early exit"
            )));
        }
    }
    let family = decompose::smart_family(g)?;
    let graph = Arc::new(g.clone());
    let sets = family.sets;
    let (found, stats) = run_pinning_wrapper(&graph, |ag, stats| {
        let ag = ag.propagate();
        if ag.is_failed() {
            stats.nodes += 1;
            return None;
        }
        branch_over_sets(&ag, &sets, 0, stats)
    });
    Ok(match found {
        Some(partition) => {
            debug_assert!(g.verify_partition(&partition).unwrap_or(false));
            ScsVerdict::yes(partition, stats)
        }
        None => ScsVerdict::no(stats),
    })
}
