//! (3,2)-CSP instances: variables with at most three values, constraints
//! forbidding value pairs on variable pairs.
//!
//! The solver pipeline is unit propagation, resolution-style elimination of
//! every two-valued variable, then a 2-SAT base case; three-valued variables
//! that survive are branched on. Eliminations are recorded so a solution of
//! the reduced instance can be replayed into one for the original.

use crate::annotate::{AnnotatedGraph, Label};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

/// A variable/value literal.
pub type Lit = (usize, u8);

/// A normalized forbidden pair: the two literals sorted, distinct variables.
pub type Constraint = (Lit, Lit);

pub const VALUE_NAMES: [char; 3] = ['A', 'B', 'S'];

pub fn label_value(label: Label) -> u8 {
    match label {
        Label::A => 0,
        Label::B => 1,
        Label::S => 2,
    }
}

pub fn value_label(value: u8) -> Label {
    match value {
        0 => Label::A,
        1 => Label::B,
        _ => Label::S,
    }
}

fn normalize(a: Lit, b: Lit) -> Constraint {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone)]
enum ReplayStep {
    /// Unit propagation removed `var`; it must take `value`.
    Forced { var: usize, value: u8 },
    /// Elimination removed `var` with two values; each value's conflict
    /// list holds the literals that would forbid it.
    Eliminated {
        var: usize,
        value_a: u8,
        conflicts_a: Vec<Lit>,
        value_b: u8,
        conflicts_b: Vec<Lit>,
    },
}

/// A satisfying assignment over the live variables of an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspSolution {
    assignment: BTreeMap<usize, u8>,
}

impl CspSolution {
    pub fn get(&self, var: usize) -> Option<u8> {
        self.assignment.get(&var).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.assignment.iter().map(|(&v, &x)| (v, x))
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, u8)>>(pairs: I) -> Self {
        CspSolution {
            assignment: pairs.into_iter().collect(),
        }
    }
}

/// A (3,2)-CSP instance. Eliminated variables stay addressable (their slot
/// is `None`) so ids remain stable across reductions.
#[derive(Debug, Clone)]
pub struct CspInstance {
    /// Domain bitmask per variable; `None` once removed.
    domains: Vec<Option<u8>>,
    constraints: BTreeSet<Constraint>,
    /// Variable id to the vertex it came from.
    origin: Vec<usize>,
    replay: Vec<ReplayStep>,
}

impl CspInstance {
    /// Builds an instance from explicit per-variable value lists.
    pub fn with_domains(domains: Vec<Vec<u8>>) -> Result<Self> {
        let mut masks = Vec::with_capacity(domains.len());
        for (var, values) in domains.iter().enumerate() {
            let mut mask = 0u8;
            for &val in values {
                if val > 2 {
                    return Err(Error::InvalidParameter(format!(
                        "value {val} out of range for variable {var}"
                    )));
                }
                mask |= 1 << val;
            }
            masks.push(Some(mask));
        }
        let n = masks.len();
        Ok(CspInstance {
            domains: masks,
            constraints: BTreeSet::new(),
            origin: (0..n).collect(),
            replay: Vec::new(),
        })
    }

    /// One variable per vertex with domain `p(v)`; per edge, the stable
    /// cutset pairs `(A,B)`, `(B,A)` and `(S,S)` restricted to values still
    /// in both domains.
    pub fn from_annotated(ag: &AnnotatedGraph) -> Self {
        let g = ag.graph();
        let domains: Vec<Option<u8>> = (0..g.n())
            .map(|v| {
                let ls = ag.labels(v);
                let mut mask = 0u8;
                for label in ls.iter() {
                    mask |= 1 << label_value(label);
                }
                Some(mask)
            })
            .collect();
        let mut inst = CspInstance {
            domains,
            constraints: BTreeSet::new(),
            origin: (0..g.n()).collect(),
            replay: Vec::new(),
        };
        let pairs = [
            (label_value(Label::A), label_value(Label::B)),
            (label_value(Label::B), label_value(Label::A)),
            (label_value(Label::S), label_value(Label::S)),
        ];
        for (u, v) in g.edges() {
            for (x, y) in pairs {
                if inst.allows(u, x) && inst.allows(v, y) {
                    inst.constraints.insert(normalize((u, x), (v, y)));
                }
            }
        }
        inst
    }

    pub fn var_count(&self) -> usize {
        self.domains.len()
    }

    pub fn live_vars(&self) -> Vec<usize> {
        (0..self.domains.len())
            .filter(|&v| self.domains[v].is_some())
            .collect()
    }

    pub fn is_live(&self, var: usize) -> bool {
        self.domains.get(var).is_some_and(|d| d.is_some())
    }

    /// Values still allowed at `var`, ascending; empty when removed.
    pub fn domain_values(&self, var: usize) -> Vec<u8> {
        match self.domains.get(var).copied().flatten() {
            Some(mask) => (0..3).filter(|&v| mask & (1 << v) != 0).collect(),
            None => Vec::new(),
        }
    }

    pub fn domain_size(&self, var: usize) -> usize {
        self.domains
            .get(var)
            .copied()
            .flatten()
            .map_or(0, |m| m.count_ones() as usize)
    }

    fn allows(&self, var: usize, value: u8) -> bool {
        self.domains
            .get(var)
            .copied()
            .flatten()
            .is_some_and(|m| m & (1 << value) != 0)
    }

    pub fn constraints(&self) -> impl Iterator<Item = Constraint> + '_ {
        self.constraints.iter().copied()
    }

    pub fn constraint_count(&self) -> usize {
        self.constraints.len()
    }

    pub fn origin_of(&self, var: usize) -> usize {
        self.origin[var]
    }

    pub fn set_origins(&mut self, origin: Vec<usize>) {
        assert_eq!(origin.len(), self.domains.len());
        self.origin = origin;
    }

    pub fn add_forbidden(&mut self, a: Lit, b: Lit) -> Result<()> {
        if a.0 == b.0 {
            return Err(Error::InvalidParameter(
                "constraint must involve two distinct variables".into(),
            ));
        }
        for (var, val) in [a, b] {
            if !self.allows(var, val) {
                return Err(Error::InvalidParameter(format!(
                    "literal ({var},{val}) is not live and in-domain"
                )));
            }
        }
        self.constraints.insert(normalize(a, b));
        Ok(())
    }

    pub fn has_empty_domain(&self) -> bool {
        self.domains.contains(&Some(0))
    }

    pub fn three_valued_count(&self) -> usize {
        self.domains.iter().filter(|d| **d == Some(7)).count()
    }

    /// Checks an assignment against the live variables: every live variable
    /// assigned an in-domain value, no forbidden pair realized.
    pub fn check(&self, solution: &CspSolution) -> bool {
        for var in self.live_vars() {
            match solution.get(var) {
                Some(val) if self.allows(var, val) => {}
                _ => return false,
            }
        }
        for ((u, x), (v, y)) in self.constraints() {
            if solution.get(u) == Some(x) && solution.get(v) == Some(y) {
                return false;
            }
        }
        true
    }

    fn remove_value(&mut self, var: usize, value: u8) {
        if let Some(Some(mask)) = self.domains.get_mut(var) {
            *mask &= !(1 << value);
        }
        self.constraints
            .retain(|&((u, x), (v, y))| (u, x) != (var, value) && (v, y) != (var, value));
    }

    fn remove_var(&mut self, var: usize) {
        self.domains[var] = None;
        self.constraints
            .retain(|&((u, _), (v, _))| u != var && v != var);
    }

    fn constraints_on(&self, var: usize, value: u8) -> Vec<Lit> {
        self.constraints
            .iter()
            .filter_map(|&(a, b)| {
                if a == (var, value) {
                    Some(b)
                } else if b == (var, value) {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    fn lowest_singleton(&self) -> Option<usize> {
        (0..self.domains.len()).find(|&v| self.domain_size(v) == 1)
    }

    fn lowest_two_valued(&self) -> Option<usize> {
        (0..self.domains.len()).find(|&v| self.domain_size(v) == 2)
    }

    fn propagate_singletons_in_place(&mut self) {
        while let Some(var) = self.lowest_singleton() {
            let value = self.domain_values(var)[0];
            for (w, y) in self.constraints_on(var, value) {
                self.remove_value(w, y);
            }
            self.remove_var(var);
            self.replay.push(ReplayStep::Forced { var, value });
        }
    }

    /// Unit rule: while some variable has a single value, delete the values
    /// it forbids at its neighbours and remove it, recording the forced
    /// assignment. Empty domains produced along the way are kept and
    /// reported by `solve`.
    #[must_use]
    pub fn propagate_singletons(&self) -> CspInstance {
        let mut next = self.clone();
        next.propagate_singletons_in_place();
        next
    }

    fn eliminate_in_place(&mut self, var: usize) -> Result<()> {
        let values = self.domain_values(var);
        if values.len() != 2 {
            return Err(Error::NotTwoValued(var));
        }
        let (a, b) = (values[0], values[1]);
        let conflicts_a = self.constraints_on(var, a);
        let conflicts_b = self.constraints_on(var, b);
        self.remove_var(var);
        // same literal conflicting with both values can never be taken
        for &(w, x) in &conflicts_a {
            if conflicts_b.contains(&(w, x)) {
                self.remove_value(w, x);
            }
        }
        // resolvents across distinct variables
        for &(w, x) in &conflicts_a {
            for &(u, y) in &conflicts_b {
                if w != u && self.allows(w, x) && self.allows(u, y) {
                    self.constraints.insert(normalize((w, x), (u, y)));
                }
            }
        }
        self.replay.push(ReplayStep::Eliminated {
            var,
            value_a: a,
            conflicts_a,
            value_b: b,
            conflicts_b,
        });
        Ok(())
    }

    /// Removes a two-valued variable, preserving satisfiability: any
    /// solution of the result extends to `var` via the recorded conflict
    /// lists.
    pub fn eliminate_two_valued(&self, var: usize) -> Result<CspInstance> {
        let mut next = self.clone();
        next.eliminate_in_place(var)?;
        Ok(next)
    }

    /// Unit propagation and two-valued elimination to a fixpoint: the
    /// result has only three-valued variables left (or an empty domain
    /// signalling unsatisfiability). Satisfiability is preserved.
    #[must_use]
    pub fn reduced(&self) -> CspInstance {
        let mut next = self.clone();
        loop {
            next.propagate_singletons_in_place();
            if next.has_empty_domain() {
                return next;
            }
            match next.lowest_two_valued() {
                Some(v) => next.eliminate_in_place(v).expect("checked two-valued"),
                None => return next,
            }
        }
    }

    /// Walks the replay log backwards, extending `assignment` to every
    /// variable the reductions removed.
    fn replay_into(&self, assignment: &mut BTreeMap<usize, u8>) {
        for step in self.replay.iter().rev() {
            match step {
                ReplayStep::Forced { var, value } => {
                    assignment.insert(*var, *value);
                }
                ReplayStep::Eliminated {
                    var,
                    value_a,
                    conflicts_a,
                    value_b,
                    conflicts_b,
                } => {
                    let realized = |lits: &[Lit]| {
                        lits.iter().any(|&(w, x)| assignment.get(&w) == Some(&x))
                    };
                    let value = if realized(conflicts_a) {
                        debug_assert!(
                            !realized(conflicts_b),
                            "elimination left no viable value for {var}"
                        );
                        *value_b
                    } else {
                        *value_a
                    };
                    assignment.insert(*var, value);
                }
            }
        }
    }

    /// Live three-valued variable with the most distinct constraint-graph
    /// neighbours, lowest id on ties.
    fn branch_var(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for v in 0..self.domains.len() {
            if self.domain_size(v) != 3 {
                continue;
            }
            let mut nbrs = BTreeSet::new();
            for ((a, _), (b, _)) in self.constraints() {
                if a == v {
                    nbrs.insert(b);
                } else if b == v {
                    nbrs.insert(a);
                }
            }
            let deg = nbrs.len();
            if best.is_none_or(|(_, d)| deg > d) {
                best = Some((v, deg));
            }
        }
        best.map(|(v, _)| v)
    }

    fn solve_rec(mut self) -> Option<BTreeMap<usize, u8>> {
        loop {
            self.propagate_singletons_in_place();
            if self.has_empty_domain() {
                return None;
            }
            match self.lowest_two_valued() {
                Some(v) => self.eliminate_in_place(v).expect("checked two-valued"),
                None => break,
            }
        }
        // every live variable now has all three values
        if let Some(v) = self.branch_var() {
            for value in self.domain_values(v) {
                let mut child = self.clone();
                child.domains[v] = Some(1 << value);
                if let Some(sol) = child.solve_rec() {
                    return Some(sol);
                }
            }
            return None;
        }
        debug_assert!(self.live_vars().is_empty());
        let base = self
            .solve_two_sat()
            .expect("no three-valued variables remain");
        let mut assignment: BTreeMap<usize, u8> =
            base?.assignment.into_iter().collect();
        self.replay_into(&mut assignment);
        Some(assignment)
    }

    /// Deterministic exact solve: unit propagation, elimination of every
    /// two-valued variable, 2-SAT base case, and 3-way branching on a
    /// remaining three-valued variable. Returns an assignment for the
    /// variables live in `self`, with reductions replayed.
    pub fn solve(&self) -> Option<CspSolution> {
        let mut work = self.clone();
        work.replay.clear();
        let assignment = work.solve_rec()?;
        let solution = CspSolution { assignment };
        debug_assert!(self.check(&solution));
        Some(solution)
    }

    /// Polynomial decision for instances where every domain has at most two
    /// values, via the implication graph of the forbidden pairs.
    pub fn solve_two_sat(&self) -> Result<Option<CspSolution>> {
        let live = self.live_vars();
        for &v in &live {
            if self.domain_size(v) > 2 {
                return Err(Error::DomainTooLarge(v));
            }
        }
        if self.has_empty_domain() {
            return Ok(None);
        }
        // boolean x_v <=> "v takes the smaller of its two values";
        // singleton domains become forced clauses.
        let index: BTreeMap<usize, usize> =
            live.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let node = |slot: usize, truth: bool| 2 * slot + usize::from(truth);
        let mut graph = ImplicationGraph::new(2 * live.len());
        let lit_node = |var: usize, value: u8, truth_for: bool| -> usize {
            // node asserting (var == value) when truth_for, else its negation
            let slot = index[&var];
            let values = self.domain_values(var);
            let is_first = values[0] == value;
            node(slot, is_first == truth_for)
        };
        for &v in &live {
            if self.domain_size(v) == 1 {
                let value = self.domain_values(v)[0];
                // force: not(v==value) implies (v==value)
                graph.add_edge(lit_node(v, value, false), lit_node(v, value, true));
            }
        }
        for ((u, x), (v, y)) in self.constraints() {
            // forbid (u==x and v==y): u==x implies not(v==y), and symmetric
            graph.add_edge(lit_node(u, x, true), lit_node(v, y, false));
            graph.add_edge(lit_node(v, y, true), lit_node(u, x, false));
        }
        let comp = graph.tarjan_scc();
        let mut assignment = BTreeMap::new();
        for &v in &live {
            let slot = index[&v];
            let (c_true, c_false) = (comp[node(slot, true)], comp[node(slot, false)]);
            if c_true == c_false {
                return Ok(None);
            }
            let values = self.domain_values(v);
            // Tarjan numbers components in reverse topological order, so the
            // smaller id lies later along implications and is safe to assert.
            let first = c_true < c_false;
            let value = if first {
                values[0]
            } else {
                *values.last().unwrap()
            };
            assignment.insert(v, value);
        }
        let solution = CspSolution { assignment };
        debug_assert!(self.check(&solution));
        Ok(Some(solution))
    }

    /// Debug dump: one `var` line per live variable, one `ban` line per
    /// constraint, deterministic order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for v in self.live_vars() {
            let values: Vec<String> = self
                .domain_values(v)
                .iter()
                .map(|&x| VALUE_NAMES[x as usize].to_string())
                .collect();
            let _ = writeln!(out, "var {v} : {}", values.join(" "));
        }
        for ((u, x), (v, y)) in self.constraints() {
            let _ = writeln!(
                out,
                "ban ({u},{}) ({v},{})",
                VALUE_NAMES[x as usize], VALUE_NAMES[y as usize]
            );
        }
        out
    }
}

struct ImplicationGraph {
    adj: Vec<Vec<usize>>,
}

impl ImplicationGraph {
    fn new(nodes: usize) -> Self {
        ImplicationGraph {
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize) {
        self.adj[from].push(to);
    }

    /// Iterative Tarjan; component ids come out in reverse topological order.
    fn tarjan_scc(&self) -> Vec<usize> {
        let n = self.adj.len();
        const UNSET: usize = usize::MAX;
        let mut comp = vec![UNSET; n];
        let mut index = vec![UNSET; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut next_index = 0;
        let mut next_comp = 0;
        let mut call_stack: Vec<(usize, usize)> = Vec::new();

        for root in 0..n {
            if index[root] != UNSET {
                continue;
            }
            call_stack.push((root, 0));
            while let Some(&(v, edge)) = call_stack.last() {
                if edge == 0 {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                }
                if let Some(&w) = self.adj[v].get(edge) {
                    call_stack.last_mut().unwrap().1 += 1;
                    if index[w] == UNSET {
                        call_stack.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    if low[v] == index[v] {
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp[w] = next_comp;
                            if w == v {
                                break;
                            }
                        }
                        next_comp += 1;
                    }
                    call_stack.pop();
                    if let Some(&(parent, _)) = call_stack.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                }
            }
        }
        comp
    }
}
