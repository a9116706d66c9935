//! Brute-force ground truth for the solvers: subset enumeration for stable
//! cutsets, exhaustive colouring, and full domain-product CSP search. Kept
//! independent of the solver code paths it validates.

use crate::csp::{CspInstance, CspSolution};
use crate::error::{Error, Result};
use crate::exec;
use crate::graph::{Graph, Partition, VertexSet};

const SCS_GUARD: usize = 22;
const COL_GUARD: usize = 18;
const CSP_GUARD: u64 = 10_000_000;

/// First stable cutset by increasing size then lexicographic order, split
/// into a partition: `A` is the first component of `g - S`, `B` the rest.
pub fn brute_scs(g: &Graph) -> Result<Option<Partition>> {
    if g.n() > SCS_GUARD {
        return Err(Error::GuardExceeded(format!(
            "brute_scs handles at most {SCS_GUARD} vertices"
        )));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    if n < 3 {
        return Ok(None);
    }
    for size in 1..=n.saturating_sub(2) {
        let hit = exec::find_map_first((0..n).collect(), |first| {
            let mut chosen = vec![first];
            let mut blocked = g.neighbor_set(first);
            blocked.insert(first);
            extend_stable(g, &mut chosen, &mut blocked, size)
        });
        if let Some(s) = hit {
            let removed = VertexSet::from_iter(n, s.iter().copied());
            let comps = g.components_without(&removed);
            debug_assert!(comps.len() >= 2);
            let a = comps[0].clone();
            let b = comps[1..].iter().flatten().copied().collect();
            return Ok(Some(Partition::new(a, b, s)));
        }
    }
    Ok(None)
}

/// Depth-first lexicographic extension of a stable set to `size` members;
/// returns the first extension that is a cutset.
fn extend_stable(
    g: &Graph,
    chosen: &mut Vec<usize>,
    blocked: &mut VertexSet,
    size: usize,
) -> Option<Vec<usize>> {
    if chosen.len() == size {
        if g.components_without(&VertexSet::from_iter(g.n(), chosen.iter().copied())).len() >= 2
        {
            return Some(chosen.clone());
        }
        return None;
    }
    let last = *chosen.last().unwrap();
    for v in last + 1..g.n() {
        if blocked.contains(v) {
            continue;
        }
        chosen.push(v);
        let saved = blocked.clone();
        blocked.insert(v);
        blocked.union_with(&g.neighbor_set(v));
        if let Some(found) = extend_stable(g, chosen, blocked, size) {
            return Some(found);
        }
        chosen.pop();
        *blocked = saved;
    }
    None
}

/// First proper 3-colouring in lexicographic assignment order, colours
/// `0..3` per vertex.
pub fn brute_3col(g: &Graph) -> Result<Option<Vec<u8>>> {
    if g.n() > COL_GUARD {
        return Err(Error::GuardExceeded(format!(
            "brute_3col handles at most {COL_GUARD} vertices"
        )));
    }
    let mut colours = vec![0u8; g.n()];
    if colour_from(g, 0, &mut colours) {
        Ok(Some(colours))
    } else {
        Ok(None)
    }
}

fn colour_from(g: &Graph, v: usize, colours: &mut Vec<u8>) -> bool {
    if v == g.n() {
        return true;
    }
    'next: for c in 0..3u8 {
        for u in g.neighbors(v) {
            if u < v && colours[u] == c {
                continue 'next;
            }
        }
        colours[v] = c;
        if colour_from(g, v + 1, colours) {
            return true;
        }
    }
    false
}

/// Exhaustive check over the product of the live domains.
pub fn brute_csp(inst: &CspInstance) -> Result<Option<CspSolution>> {
    let live = inst.live_vars();
    let mut product: u64 = 1;
    for &v in &live {
        product = product.saturating_mul(inst.domain_size(v).max(1) as u64);
        if product > CSP_GUARD {
            return Err(Error::GuardExceeded(format!(
                "domain product exceeds {CSP_GUARD}"
            )));
        }
    }
    if inst.has_empty_domain() {
        return Ok(None);
    }
    // constraints indexed by the later variable in `live` order
    let pos: std::collections::BTreeMap<usize, usize> =
        live.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut incoming: Vec<Vec<(u8, usize, u8)>> = vec![Vec::new(); live.len()];
    for ((u, x), (v, y)) in inst.constraints() {
        let (pu, pv) = (pos[&u], pos[&v]);
        if pu < pv {
            incoming[pv].push((y, pu, x));
        } else {
            incoming[pu].push((x, pv, y));
        }
    }
    let mut assigned: Vec<u8> = vec![0; live.len()];
    if assign_from(inst, &live, &incoming, 0, &mut assigned) {
        Ok(Some(CspSolution::from_pairs(
            live.iter().copied().zip(assigned.iter().copied()),
        )))
    } else {
        Ok(None)
    }
}

fn assign_from(
    inst: &CspInstance,
    live: &[usize],
    incoming: &[Vec<(u8, usize, u8)>],
    idx: usize,
    assigned: &mut Vec<u8>,
) -> bool {
    if idx == live.len() {
        return true;
    }
    'next: for value in inst.domain_values(live[idx]) {
        for &(my_val, earlier, earlier_val) in &incoming[idx] {
            if my_val == value && assigned[earlier] == earlier_val {
                continue 'next;
            }
        }
        assigned[idx] = value;
        if assign_from(inst, live, incoming, idx + 1, assigned) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn brute_scs_examples() {
        let p3 = named::path(3);
        let part = brute_scs(&p3).unwrap().unwrap();
        assert_eq!(part.s, vec![1]);
        assert!(p3.verify_partition(&part).unwrap());

        assert_eq!(brute_scs(&named::clique(4)).unwrap(), None);

        let c5 = named::cycle(5);
        let part = brute_scs(&c5).unwrap().unwrap();
        assert_eq!(part.s.len(), 2);
        assert!(c5.verify_stable_cutset(&part.s));
        assert!(c5.verify_partition(&part).unwrap());
    }

    #[test]
    fn brute_scs_guards() {
        let big = named::path(23);
        assert!(matches!(
            brute_scs(&big).unwrap_err(),
            Error::GuardExceeded(_)
        ));
        let disconnected = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(brute_scs(&disconnected).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn brute_3col_examples() {
        assert!(brute_3col(&named::clique(3)).unwrap().is_some());
        assert_eq!(brute_3col(&named::clique(4)).unwrap(), None);
        let col = brute_3col(&named::petersen()).unwrap().unwrap();
        for (u, v) in named::petersen().edges() {
            assert_ne!(col[u], col[v]);
        }
    }

    #[test]
    fn brute_csp_examples() {
        let empty = CspInstance::with_domains(vec![]).unwrap();
        assert!(brute_csp(&empty).unwrap().is_some());

        let hollow = CspInstance::with_domains(vec![vec![]]).unwrap();
        assert_eq!(brute_csp(&hollow).unwrap(), None);
    }

    #[test]
    fn verdict_is_invariant_under_relabelling() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(4..8);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.45) {
                        edges.push((u, v));
                    }
                }
            }
            let Ok(g) = Graph::from_edges(n, &edges) else {
                continue;
            };
            if !g.is_connected() {
                continue;
            }
            let base = brute_scs(&g).unwrap().is_some();
            // random permutation of vertex ids
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let relabelled: Vec<(usize, usize)> =
                edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
            let h = Graph::from_edges(n, &relabelled).unwrap();
            assert_eq!(base, brute_scs(&h).unwrap().is_some());
        }
    }
}
