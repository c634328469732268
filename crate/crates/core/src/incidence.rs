//! The variable–clause incidence graph, its matching number, expansion
//! tests, deficient-set extraction and autarky decomposition.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bipartite::{BipartiteGraph, MatchState};
use crate::formula::{Assignment, CnfFormula, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IncidenceError {
    #[error("expansion is only tested for q in 0..=2, got {0}")]
    UnsupportedQ(usize),
    #[error("graph is not 1-expanding")]
    NotOneExpanding,
}

/// B_F: live variables on the left, clause indices on the right.
#[derive(Clone, Debug)]
pub struct IncidenceGraph {
    vars: Vec<Var>,
    num_clauses: usize,
    graph: BipartiteGraph,
}

impl IncidenceGraph {
    /// Live variables in ascending order.
    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn num_clauses(&self) -> usize {
        self.num_clauses
    }

    /// Clause indices containing `var` in either polarity.
    pub fn clauses_of(&self, var: Var) -> &[usize] {
        match self.position(var) {
            Some(i) => self.graph.neighbors(i),
            None => &[],
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (Var, usize)> + '_ {
        self.vars
            .iter()
            .enumerate()
            .flat_map(move |(i, &v)| self.graph.neighbors(i).iter().map(move |&c| (v, c)))
    }

    /// N(X) for a set of variables.
    pub fn neighborhood(&self, xs: &BTreeSet<Var>) -> BTreeSet<usize> {
        xs.iter()
            .flat_map(|&v| self.clauses_of(v).iter().copied())
            .collect()
    }

    fn position(&self, var: Var) -> Option<usize> {
        self.vars.binary_search(&var).ok()
    }

    fn state(&self) -> MatchState {
        self.graph.maximum_matching()
    }
}

pub fn build_incidence(f: &CnfFormula) -> IncidenceGraph {
    let vars = f.live_vars();
    let mut adj = vec![Vec::new(); vars.len()];
    for (ci, c) in f.clauses().iter().enumerate() {
        for v in c.vars() {
            let pos = vars.binary_search(&v).expect("live variable");
            adj[pos].push(ci);
        }
    }
    IncidenceGraph {
        vars,
        num_clauses: f.num_clauses(),
        graph: BipartiteGraph::new(f.num_clauses(), adj),
    }
}

/// A set of (variable, clause index) edges, no endpoint repeated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(Var, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn clause_of(&self, var: Var) -> Option<usize> {
        self.pairs.iter().find(|p| p.0 == var).map(|p| p.1)
    }
}

pub fn maximum_matching(g: &IncidenceGraph) -> Matching {
    let state = g.state();
    Matching {
        pairs: state.pairs().map(|(u, c)| (g.vars[u], c)).collect(),
    }
}

/// ν(F).
pub fn matching_number(f: &CnfFormula) -> usize {
    build_incidence(f).state().size()
}

/// Whether every nonempty variable set X has |N(X)| ≥ |X| + q. For q ≥ 1
/// each variable is duplicated q times in turn and the copied graph must
/// still saturate its left side.
pub fn is_q_expanding(g: &IncidenceGraph, q: usize) -> Result<bool, IncidenceError> {
    if q > 2 {
        return Err(IncidenceError::UnsupportedQ(q));
    }
    let state = g.state();
    if state.size() < g.vars.len() {
        return Ok(false);
    }
    if q == 0 {
        return Ok(true);
    }
    let mut graph = g.graph.clone();
    Ok((0..g.vars.len()).all(|x| graph.duplicate_test(x, q, &state).is_none()))
}

/// For a 1-expanding graph, `None` if it is 2-expanding, otherwise a nonempty
/// S with |N(S)| = |S| + 1. The first variable (by index) whose doubled graph
/// fails to saturate determines S.
pub fn find_deficient_set(g: &IncidenceGraph) -> Result<Option<BTreeSet<Var>>, IncidenceError> {
    if !is_q_expanding(g, 1)? {
        return Err(IncidenceError::NotOneExpanding);
    }
    let state = g.state();
    let mut graph = g.graph.clone();
    for y in 0..g.vars.len() {
        if let Some(reached) = graph.duplicate_test(y, 2, &state) {
            let s: BTreeSet<Var> = reached.into_iter().map(|u| g.vars[u]).collect();
            debug_assert_eq!(g.neighborhood(&s).len(), s.len() + 1);
            return Ok(Some(s));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutarkyResult {
    /// U
    pub domain: BTreeSet<Var>,
    /// π, defined exactly on U.
    pub assignment: Assignment,
    /// F_U as clause indices of the input formula.
    pub satisfied_clauses: BTreeSet<usize>,
}

impl AutarkyResult {
    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }
}

/// Finds an autarky π on U such that F \ F_U is 1-expanding.
///
/// Variables left unsaturated by a maximum matching, together with their
/// alternating-path closure, are absorbed first; after that the remainder is
/// variable-matched and tight sets (|N(X)| = |X|) are peeled off one by one.
/// Each absorbed variable is set to satisfy the clause it is matched to.
pub fn find_autarky(f: &CnfFormula) -> AutarkyResult {
    let mut assignment = Assignment::empty(f.num_vars());
    let mut domain = BTreeSet::new();
    let mut satisfied = BTreeSet::new();
    let mut remaining: Vec<usize> = (0..f.num_clauses()).collect();

    loop {
        let sub = CnfFormula::from_parts(
            f.num_vars(),
            remaining.iter().map(|&i| f.clauses()[i].clone()).collect(),
        );
        let g = build_incidence(&sub);
        let state = g.state();
        let n = g.vars.len();

        let absorbed: Vec<usize> = if state.size() < n {
            let free: Vec<usize> = (0..n).filter(|&u| state.left_mate(u).is_none()).collect();
            let (seen, _) = g.graph.alternating_reach(&free, &state);
            (0..n).filter(|&u| seen[u]).collect()
        } else {
            let mut graph = g.graph.clone();
            match (0..n).find_map(|y| graph.duplicate_test(y, 1, &state)) {
                Some(tight) => tight,
                None => break,
            }
        };

        let mut touched = BTreeSet::new();
        for &u in &absorbed {
            let var = g.vars[u];
            let value = match state.left_mate(u) {
                Some(c) => {
                    sub.clauses()[c]
                        .literal_of(var)
                        .expect("matched along an incidence edge")
                        .positive
                }
                None => false,
            };
            assignment.set(var, value);
            domain.insert(var);
            touched.extend(g.graph.neighbors(u).iter().copied());
        }
        debug_assert!(touched
            .iter()
            .all(|&c| state.right_mate(c).is_some_and(|u| absorbed.contains(&u))));
        satisfied.extend(touched.iter().map(|&c| remaining[c]));
        remaining = remaining
            .iter()
            .enumerate()
            .filter(|(i, _)| !touched.contains(i))
            .map(|(_, &c)| c)
            .collect();
    }

    AutarkyResult {
        domain,
        assignment,
        satisfied_clauses: satisfied,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Deficiency {
    /// δ(F) = |F| − |V(F)|
    pub delta: i64,
    /// δ*(F) = max over subformulas, equal to |F| − ν(F).
    pub max_delta: i64,
}

pub fn max_deficiency(f: &CnfFormula) -> Deficiency {
    let m = f.num_clauses() as i64;
    Deficiency {
        delta: m - f.live_vars().len() as i64,
        max_delta: m - matching_number(f) as i64,
    }
}
