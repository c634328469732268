//! Special instances and their reduction to (m − k)-Hitting Set.
//!
//! A formula is special when every variable x occurs positively exactly once,
//! in the clause c(x), negatively at least twice, and no clause holds two
//! positive literals. The transformation shrinks every c(x) to the unit (x)
//! by moving c(x) − x into each clause containing x̄. The unmatched clauses
//! of the result are all-negative and form the hypergraph H*.

use thiserror::Error;

use crate::formula::{Clause, ClauseError, CnfFormula, Instance, Literal, Step, Var};
use crate::hitset::{Hypergraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecialError {
    #[error("x{var} occurs positively {count} times, expected 1")]
    PositiveCount { var: Var, count: usize },
    #[error("x{var} occurs negatively {count} times, expected at least 2")]
    NegativeCount { var: Var, count: usize },
    #[error("clause {clause} has more than one positive literal")]
    TooManyPositives { clause: usize },
    #[error("clause holding x{var} is not the unit (x{var})")]
    NotTransformed { var: Var },
}

/// Checks the special-instance conditions on every live variable.
pub fn check_special(f: &CnfFormula) -> Result<(), SpecialError> {
    if let Some(clause) = f.clauses().iter().position(|c| c.positive_count() > 1) {
        return Err(SpecialError::TooManyPositives { clause });
    }
    let table = f.occurrence_table();
    for var in f.live_vars() {
        let (p, n) = table[var as usize];
        if p != 1 {
            return Err(SpecialError::PositiveCount { var, count: p });
        }
        if n < 2 {
            return Err(SpecialError::NegativeCount { var, count: n });
        }
    }
    Ok(())
}

pub fn is_special(f: &CnfFormula) -> bool {
    check_special(f).is_ok()
}

/// Every live variable occurs positively exactly once, as the unit (x), and
/// every other clause is all-negative. The negative-count condition of
/// special instances is not required here.
pub fn check_transformed(f: &CnfFormula) -> Result<(), SpecialError> {
    let table = f.occurrence_table();
    for var in f.live_vars() {
        let (p, _) = table[var as usize];
        if p != 1 {
            return Err(SpecialError::PositiveCount { var, count: p });
        }
    }
    for (i, c) in f.clauses().iter().enumerate() {
        if c.positive_count() > 1 {
            return Err(SpecialError::TooManyPositives { clause: i });
        }
        if c.len() > 1 {
            if let Some(l) = c.literals().iter().find(|l| l.positive) {
                return Err(SpecialError::NotTransformed { var: l.var });
            }
        }
    }
    Ok(())
}

/// The index of c(x) per variable (index 0 unused).
fn positive_clauses(f: &CnfFormula) -> Vec<Option<usize>> {
    let mut out = vec![None; f.num_vars() as usize + 1];
    for (i, c) in f.clauses().iter().enumerate() {
        for l in c.literals().iter().filter(|l| l.positive) {
            out[l.var as usize] = Some(i);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformOutcome {
    pub instance: Instance,
    /// Clauses that became tautologies and were dropped (alpha lowered by one
    /// each).
    pub tautologies: usize,
}

impl TransformOutcome {
    /// Whether the result is special with every c(x) a unit.
    pub fn is_transformed(&self) -> bool {
        check_special(&self.instance.formula).is_ok()
            && check_transformed(&self.instance.formula).is_ok()
    }
}

/// Processes variables in increasing order. A clause that picks up ¬y while
/// holding y is dropped; a variable whose c(x) was dropped is skipped.
pub fn transform_special(inst: &Instance) -> Result<TransformOutcome, SpecialError> {
    check_special(&inst.formula)?;
    let f = &inst.formula;
    let mut clauses: Vec<Option<Clause>> = f.clauses().iter().cloned().map(Some).collect();
    let mut owner = positive_clauses(f);
    let mut dropped = 0usize;
    let mut out = inst.clone();

    for x in f.live_vars() {
        let Some(ci) = owner[x as usize] else {
            continue;
        };
        let cx = clauses[ci].as_ref().expect("owner points at a live clause");
        if cx.len() == 1 {
            continue;
        }
        let rest = cx
            .without_vars(|v| v == x)
            .expect("c(x) has a literal besides x");
        let neg = Literal::neg(x);
        for slot in clauses.iter_mut() {
            let Some(cj) = slot.as_ref() else {
                continue;
            };
            if !cj.contains(neg) {
                continue;
            }
            match cj.union(&rest) {
                Ok(merged) => *slot = Some(merged),
                Err(ClauseError::Tautology(_)) => {
                    if let Some(y) = cj.literals().iter().find(|l| l.positive) {
                        owner[y.var as usize] = None;
                    }
                    *slot = None;
                    dropped += 1;
                    out = out.rewritten(out.formula.clone(), Step::TransformTautology, 1);
                }
                Err(e) => unreachable!("union of nonempty clauses: {e}"),
            }
        }
        clauses[ci] = Some(Clause::unit(Literal::pos(x)));
    }

    out.formula = CnfFormula::from_parts(f.num_vars(), clauses.into_iter().flatten().collect());
    Ok(TransformOutcome {
        instance: out,
        tautologies: dropped,
    })
}

/// H* with its parameter. Vertex `i` stands for variable `vertex_vars[i - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingInstance {
    pub hypergraph: Hypergraph,
    /// k = alpha − |V(F)|.
    pub k: i64,
    pub vertex_vars: Vec<Var>,
}

impl HittingInstance {
    /// The answer when it needs no search: yes for k ≤ 0, no for k > |E(H*)|.
    pub fn trivial_answer(&self) -> Option<bool> {
        if self.k <= 0 {
            Some(true)
        } else if self.k > self.hypergraph.num_edges() as i64 {
            Some(false)
        } else {
            None
        }
    }
}

/// Builds H* from a transformed special instance: one edge V(c) for every
/// clause other than the units (x).
pub fn build_hitting_instance(inst: &Instance) -> Result<HittingInstance, SpecialError> {
    let f = &inst.formula;
    check_transformed(f)?;
    let vertex_vars = f.live_vars();
    let mut vertex_of = vec![0 as Vertex; f.num_vars() as usize + 1];
    for (i, &v) in vertex_vars.iter().enumerate() {
        vertex_of[v as usize] = i as Vertex + 1;
    }
    let edges: Vec<Vec<Vertex>> = f
        .clauses()
        .iter()
        .filter(|c| c.positive_count() == 0)
        .map(|c| c.vars().map(|v| vertex_of[v as usize]).collect())
        .collect();
    let hypergraph = Hypergraph::new(vertex_vars.len() as u32, edges)
        .expect("clauses are nonempty and mention live variables");
    Ok(HittingInstance {
        hypergraph,
        k: inst.alpha - vertex_vars.len() as i64,
        vertex_vars,
    })
}
