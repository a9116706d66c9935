//! Minimum-degree specializations: the two-thirds impossibility bound, the
//! polynomial algorithm for minimum degree at least n/2 (pin a non-adjacent
//! pair, force their common neighbours into the cutset, propagate, finish
//! with the two-valued CSP endgame), and the kernelisation for minimum
//! degree n/2 - k which either resolves a pair polynomially or leaves a
//! residual CSP with at most 4k - 3 three-valued variables.

use crate::annotate::{AnnotatedGraph, Label, LabelSet};
use crate::branching::{solution_to_partition, ScsVerdict, SolveStats};
use crate::csp::CspInstance;
use crate::error::{Error, Result};
use crate::exec;
use crate::graph::Graph;
use std::sync::Arc;

/// The vertex sets around a pinned non-adjacent pair.
#[derive(Debug, Clone)]
pub struct PairContext {
    pub u: usize,
    pub v: usize,
    /// Common neighbours of the pair (forced into the cutset).
    pub common: Vec<usize>,
    /// Private neighbours of `u`.
    pub x_side: Vec<usize>,
    /// Private neighbours of `v`.
    pub y_side: Vec<usize>,
    /// Everything else.
    pub rest: Vec<usize>,
}

impl PairContext {
    pub fn new(g: &Graph, u: usize, v: usize) -> Self {
        debug_assert!(!g.adjacent(u, v) && u != v);
        let common = g.common_neighbors(u, v);
        let is_common = |w: usize| common.binary_search(&w).is_ok();
        let x_side: Vec<usize> = g.neighbors(u).filter(|&w| !is_common(w)).collect();
        let y_side: Vec<usize> = g.neighbors(v).filter(|&w| !is_common(w)).collect();
        let rest: Vec<usize> = (0..g.n())
            .filter(|&w| {
                w != u
                    && w != v
                    && !is_common(w)
                    && !g.adjacent(w, u)
                    && !g.adjacent(w, v)
            })
            .collect();
        PairContext {
            u,
            v,
            common,
            x_side,
            y_side,
            rest,
        }
    }
}

/// True iff the minimum degree exceeds two thirds of n - 1 (exact rational
/// comparison), which rules out any stable cutset.
pub fn no_scs_by_degree(g: &Graph) -> bool {
    match g.min_degree() {
        Ok(delta) => 3 * delta > 2 * (g.n() - 1),
        Err(_) => false,
    }
}

fn require_min_degree(g: &Graph, twice_needed: isize, what: &str) -> Result<usize> {
    let delta = g.min_degree()?;
    if ((2 * delta) as isize) < twice_needed {
        return Err(Error::DegreeTooSmall {
            delta,
            requirement: what.to_string(),
        });
    }
    Ok(delta)
}

/// Pins `u = A`, `v = B`, all common neighbours to `S`, and propagates.
fn pinned_pair(graph: &Arc<Graph>, ctx: &PairContext) -> AnnotatedGraph {
    let mut ag = AnnotatedGraph::fresh(Arc::clone(graph));
    ag = ag
        .assign(ctx.u, LabelSet::singleton(Label::A))
        .expect("fresh labels");
    ag = ag
        .assign(ctx.v, LabelSet::singleton(Label::B))
        .expect("fresh labels");
    for &s in &ctx.common {
        ag = ag
            .assign(s, LabelSet::singleton(Label::S))
            .expect("fresh labels");
    }
    ag.propagate()
}

fn check_pair_sizes(
    g: &Graph,
    ctx: &PairContext,
    slack: usize, // k in the kernel setting, 0 for the polynomial algorithm
) -> Result<()> {
    let n = g.n();
    let r = ctx.common.len();
    if 2 * ctx.x_side.len() + 2 * slack + 2 * r < n || 2 * ctx.y_side.len() + 2 * slack + 2 * r < n
    {
        return Err(Error::Internal(format!(
            "private neighbourhood of pair ({}, {}) smaller than the degree bound allows",
            ctx.u, ctx.v
        )));
    }
    if ctx.rest.len() + 2 > 2 * slack + r {
        return Err(Error::Internal(format!(
            "leftover set of pair ({}, {}) larger than the degree bound allows",
            ctx.u, ctx.v
        )));
    }
    Ok(())
}

fn non_adjacent_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.adjacent(u, v))
        .collect()
}

enum PairOutcome {
    /// Pin propagated to a contradiction or decided unsatisfiable; the flag
    /// records whether a CSP endgame ran.
    No { used_csp: bool },
    Yes(crate::graph::Partition),
    Residual(CspInstance),
}

/// Handles one pinned pair under minimum degree n/2 - slack; `threshold`
/// decides whether the polynomial endgame is guaranteed (always for the
/// half-degree algorithm).
fn process_pair(
    graph: &Arc<Graph>,
    pair: (usize, usize),
    slack: usize,
) -> Result<PairOutcome> {
    let g = graph.as_ref();
    let ctx = PairContext::new(g, pair.0, pair.1);
    check_pair_sizes(g, &ctx, slack)?;
    let ag = pinned_pair(graph, &ctx);
    if ag.is_failed() {
        return Ok(PairOutcome::No { used_csp: false });
    }
    let (n1, _, n3) = ag.label_counts();
    if slack == 0 {
        // claims backing the polynomial algorithm: most vertices are fixed
        // and nothing keeps three labels
        if 2 * n1 < g.n() + 4 {
            return Err(Error::Internal(format!(
                "pair ({}, {}) fixed only {n1} vertices",
                ctx.u, ctx.v
            )));
        }
        if n3 != 0 {
            return Err(Error::Internal(format!(
                "pair ({}, {}) left {n3} three-labelled vertices",
                ctx.u, ctx.v
            )));
        }
    }
    // witness: the common neighbour with the fewest non-neighbours in the
    // leftover set, maximizing the chance of the polynomial path
    let t = ctx
        .common
        .iter()
        .map(|&s| ctx.rest.iter().filter(|&&f| !g.adjacent(f, s)).count())
        .min()
        .unwrap_or(0);
    let poly = 4 * (slack as isize) - 3;
    if (t as isize) > poly || slack == 0 {
        if n3 != 0 {
            return Err(Error::Internal(format!(
                "pair ({}, {}) kept {n3} three-labelled vertices past the threshold",
                ctx.u, ctx.v
            )));
        }
        let inst = CspInstance::from_annotated(&ag);
        return Ok(match inst.solve() {
            Some(sol) => PairOutcome::Yes(solution_to_partition(&sol, g.n())),
            None => PairOutcome::No { used_csp: true },
        });
    }
    // residual path: reduce away everything except the three-valued core
    if n3 > t {
        return Err(Error::Internal(format!(
            "pair ({}, {}) has {n3} three-labelled vertices but witness bound {t}",
            ctx.u, ctx.v
        )));
    }
    let residual = CspInstance::from_annotated(&ag).reduced();
    if residual.has_empty_domain() {
        return Ok(PairOutcome::No { used_csp: true });
    }
    if residual.live_vars().is_empty() {
        // reduction collapsed the instance: satisfiable, recover the
        // certificate from the full pinned instance
        let sol = CspInstance::from_annotated(&ag)
            .solve()
            .ok_or_else(|| Error::Internal("collapsed residual must be satisfiable".into()))?;
        return Ok(PairOutcome::Yes(solution_to_partition(&sol, g.n())));
    }
    debug_assert!(residual.three_valued_count() <= t);
    Ok(PairOutcome::Residual(residual))
}

/// Polynomial decision for graphs with minimum degree at least n/2: sweep
/// the non-adjacent pairs; each pin either fails fast or leaves every
/// vertex with at most two labels, decided by the two-valued CSP endgame.
pub fn solve_half_degree(g: &Graph) -> Result<ScsVerdict> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    require_min_degree(g, g.n() as isize, "minimum degree at least n/2")?;
    let graph = Arc::new(g.clone());
    let pairs = non_adjacent_pairs(g);
    let outcomes = exec::prefix_until_hit(
        pairs,
        |pair| process_pair(&graph, pair, 0),
        |r| matches!(r, Ok(PairOutcome::Yes(_)) | Err(_)),
    );
    let mut stats = SolveStats::default();
    for outcome in outcomes {
        stats.nodes += 1;
        match outcome? {
            PairOutcome::Yes(partition) => {
                debug_assert!(g.verify_partition(&partition).unwrap_or(false));
                stats.leaf_csps += 1;
                return Ok(ScsVerdict {
                    has_cutset: true,
                    certificate: Some(partition),
                    stats,
                });
            }
            PairOutcome::No { used_csp } => {
                stats.leaf_csps += u64::from(used_csp);
            }
            PairOutcome::Residual(_) => {
                return Err(Error::Internal(
                    "half-degree algorithm cannot leave residuals".into(),
                ));
            }
        }
    }
    Ok(ScsVerdict {
        has_cutset: false,
        certificate: None,
        stats,
    })
}

/// Result of the kernelisation: either a full verdict, or the residual
/// (3,2)-CSP instances of the pairs that could not be decided polynomially,
/// ordered smallest first (three-valued count, then live variables).
#[derive(Debug)]
pub enum KernelOutcome {
    Decided(ScsVerdict),
    Reduced {
        residuals: Vec<CspInstance>,
        stats: SolveStats,
    },
}

impl KernelOutcome {
    /// The designated kernel: the smallest residual instance.
    pub fn smallest_residual(&self) -> Option<&CspInstance> {
        match self {
            KernelOutcome::Decided(_) => None,
            KernelOutcome::Reduced { residuals, .. } => residuals.first(),
        }
    }

    /// Final answer: a decided verdict, or satisfiability of any residual
    /// (every polynomially-resolved pair already said no).
    pub fn decide(&self) -> bool {
        match self {
            KernelOutcome::Decided(v) => v.has_cutset,
            KernelOutcome::Reduced { residuals, .. } => {
                residuals.iter().any(|r| r.solve().is_some())
            }
        }
    }
}

/// Kernelisation for minimum degree n/2 - k: iterate the non-adjacent
/// pairs at distance exactly two; a pair whose witness leaves more than
/// 4k - 3 leftover vertices resolves polynomially, otherwise its reduced
/// CSP (at most 4k - 3 three-valued variables) is emitted.
pub fn kernelize(g: &Graph, k: usize) -> Result<KernelOutcome> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    require_min_degree(
        g,
        g.n() as isize - 2 * k as isize,
        &format!("minimum degree at least n/2 - {k}"),
    )?;
    let graph = Arc::new(g.clone());
    let pairs: Vec<(usize, usize)> = non_adjacent_pairs(g)
        .into_iter()
        .filter(|&(u, v)| !g.common_neighbors(u, v).is_empty())
        .collect();
    let outcomes = exec::prefix_until_hit(
        pairs,
        |pair| process_pair(&graph, pair, k),
        |r| matches!(r, Ok(PairOutcome::Yes(_)) | Err(_)),
    );
    let mut stats = SolveStats::default();
    let mut residuals: Vec<CspInstance> = Vec::new();
    for outcome in outcomes {
        stats.nodes += 1;
        match outcome? {
            PairOutcome::Yes(partition) => {
                debug_assert!(g.verify_partition(&partition).unwrap_or(false));
                stats.leaf_csps += 1;
                return Ok(KernelOutcome::Decided(ScsVerdict {
                    has_cutset: true,
                    certificate: Some(partition),
                    stats,
                }));
            }
            PairOutcome::No { used_csp } => {
                stats.leaf_csps += u64::from(used_csp);
            }
            PairOutcome::Residual(inst) => residuals.push(inst),
        }
    }
    if residuals.is_empty() {
        return Ok(KernelOutcome::Decided(ScsVerdict {
            has_cutset: false,
            certificate: None,
            stats,
        }));
    }
    residuals.sort_by_key(|r| (r.three_valued_count(), r.live_vars().len()));
    Ok(KernelOutcome::Reduced { residuals, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{extremal, named};
    use crate::oracle;

    #[test]
    fn degree_bound_examples() {
        assert!(no_scs_by_degree(&named::clique(5)));
        assert!(!no_scs_by_degree(&named::cycle(4)));
        assert!(!no_scs_by_degree(&extremal(2, 2, 2)));
    }

    #[test]
    fn half_degree_examples() {
        let c4 = named::cycle(4);
        let verdict = solve_half_degree(&c4).unwrap();
        assert!(verdict.has_cutset);
        let cert = verdict.certificate.unwrap();
        assert!(c4.verify_partition(&cert).unwrap());

        assert!(!solve_half_degree(&named::clique(4)).unwrap().has_cutset);

        let verdict = solve_half_degree(&extremal(3, 3, 3)).unwrap();
        assert!(verdict.has_cutset);

        // precondition: delta >= n/2
        assert!(matches!(
            solve_half_degree(&named::cycle(5)).unwrap_err(),
            Error::DegreeTooSmall { .. }
        ));
    }

    #[test]
    fn half_degree_matches_oracle_on_dense_families() {
        for (a, b, s) in [(1, 1, 1), (2, 2, 2), (2, 3, 2), (3, 3, 3), (4, 3, 4)] {
            let g = extremal(a, b, s);
            if 2 * g.min_degree().unwrap() < g.n() {
                continue;
            }
            let expected = oracle::brute_scs(&g).unwrap().is_some();
            assert_eq!(
                solve_half_degree(&g).unwrap().has_cutset,
                expected,
                "extremal({a},{b},{s})"
            );
        }
    }

    /// With minimum degree at least n/2, any two non-adjacent vertices
    /// share a neighbour.
    #[test]
    fn half_degree_forces_common_neighbours() {
        use crate::generators::{random_connected, RandomProfile};
        for n in [6usize, 11, 20, 33, 40] {
            for seed in 0..10u64 {
                let g = random_connected(
                    n,
                    RandomProfile::MinDegree(n.div_ceil(2)),
                    seed.wrapping_add(n as u64),
                )
                .unwrap();
                for u in 0..n {
                    for v in u + 1..n {
                        if !g.adjacent(u, v) {
                            assert!(
                                !g.common_neighbors(u, v).is_empty(),
                                "n={n} seed={seed} pair=({u},{v})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pair_context_partitions_vertices() {
        let g = extremal(2, 2, 2);
        let ctx = PairContext::new(&g, 0, 2);
        let mut all: Vec<usize> = vec![ctx.u, ctx.v];
        all.extend(&ctx.common);
        all.extend(&ctx.x_side);
        all.extend(&ctx.y_side);
        all.extend(&ctx.rest);
        all.sort_unstable();
        assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
    }

    #[test]
    fn kernelize_at_zero_matches_half_degree() {
        for g in [named::cycle(4), named::clique(4), extremal(2, 2, 2)] {
            let direct = solve_half_degree(&g).unwrap();
            match kernelize(&g, 0).unwrap() {
                KernelOutcome::Decided(v) => {
                    assert_eq!(v.has_cutset, direct.has_cutset)
                }
                KernelOutcome::Reduced { .. } => panic!("k = 0 always resolves"),
            }
        }
    }

    #[test]
    fn kernelize_c6_leaves_one_three_valued_variable() {
        // C6 has delta = 2 = n/2 - 1; the pair (0,2) pins 1 to S and leaves
        // exactly vertex 4 three-valued, within the 4k - 3 = 1 bound
        let c6 = named::cycle(6);
        let outcome = kernelize(&c6, 1).unwrap();
        match &outcome {
            KernelOutcome::Reduced { residuals, .. } => {
                for r in residuals {
                    assert!(r.three_valued_count() <= 1);
                }
                assert!(outcome.decide());
                assert!(oracle::brute_scs(&c6).unwrap().is_some());
            }
            KernelOutcome::Decided(v) => {
                // allowed if some earlier pair already resolved to yes
                assert!(v.has_cutset);
            }
        }
    }

    #[test]
    fn kernelize_respects_residual_bound() {
        for (g, k) in [
            (named::cycle(6), 1),
            (named::cycle(8), 2),
            (named::petersen(), 2),
        ] {
            match kernelize(&g, k).unwrap() {
                KernelOutcome::Decided(v) => {
                    let expected = oracle::brute_scs(&g).unwrap().is_some();
                    assert_eq!(v.has_cutset, expected);
                }
                outcome @ KernelOutcome::Reduced { .. } => {
                    let bound = (4 * k).saturating_sub(3);
                    if let KernelOutcome::Reduced { residuals, .. } = &outcome {
                        for r in residuals {
                            assert!(r.three_valued_count() <= bound);
                        }
                    }
                    let expected = oracle::brute_scs(&g).unwrap().is_some();
                    assert_eq!(outcome.decide(), expected);
                }
            }
        }
    }
}
