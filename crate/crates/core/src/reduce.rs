//! The four reduction rules, assignment simplification, polarity
//! normalization and a small complete satisfiability check.
//!
//! Every rule rewrites `(F, alpha)` into `(F', alpha - offset)` with
//! `sat(F) = sat(F') + offset`, so the yes/no answer is preserved.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{Clause, ClauseError, CnfFormula, Instance, Literal, Step, Var};
use crate::incidence::{build_incidence, find_autarky, find_deficient_set, IncidenceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error("x{0} occurs at least twice in each polarity")]
    BothPolaritiesRepeated(Var),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleId {
    PureLiteral,
    ResolveSingletons,
    Autarky,
    Expansion,
}

impl RuleId {
    pub const ALL: [RuleId; 4] = [
        RuleId::PureLiteral,
        RuleId::ResolveSingletons,
        RuleId::Autarky,
        RuleId::Expansion,
    ];

    fn step(self) -> Step {
        match self {
            RuleId::PureLiteral => Step::PureLiteral,
            RuleId::ResolveSingletons => Step::ResolveSingletons,
            RuleId::Autarky => Step::Autarky,
            RuleId::Expansion => Step::Expansion,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleOutcome {
    pub instance: Instance,
    pub applied: RuleId,
    pub alpha_offset: i64,
}

fn outcome(inst: &Instance, formula: CnfFormula, rule: RuleId, offset: i64) -> RuleOutcome {
    RuleOutcome {
        instance: inst.rewritten(formula, rule.step(), offset),
        applied: rule,
        alpha_offset: offset,
    }
}

/// Rule 1: a variable occurring in one polarity only is set to make all its
/// occurrences true and those clauses are removed.
pub fn rule_pure_literal(inst: &Instance) -> Option<RuleOutcome> {
    let table = inst.formula.occurrence_table();
    let var = (1..table.len()).find(|&v| {
        let (p, n) = table[v];
        p + n > 0 && (p == 0 || n == 0)
    })? as Var;
    let (p, n) = table[var as usize];
    let touched: BTreeSet<usize> = inst.formula.clauses_touching(&[var].into_iter().collect());
    let formula = inst.formula.without_clauses(&touched);
    Some(outcome(inst, formula, RuleId::PureLiteral, (p + n) as i64))
}

/// Rule 2: x occurs once in each polarity, in c' and c''; both are replaced
/// by c* = (c' − x) ∪ (c'' − x̄).
///
/// An empty c* is dropped (offset 1). A tautological c* is always satisfied,
/// so it is dropped as well and counted in the offset (offset 2).
pub fn rule_resolve_singletons(inst: &Instance) -> Option<RuleOutcome> {
    let f = &inst.formula;
    let table = f.occurrence_table();
    let var = (1..table.len()).find(|&v| table[v] == (1, 1))? as Var;
    let pos_idx = f
        .clauses()
        .iter()
        .position(|c| c.contains(Literal::pos(var)))?;
    let neg_idx = f
        .clauses()
        .iter()
        .position(|c| c.contains(Literal::neg(var)))?;
    let removed: BTreeSet<usize> = [pos_idx, neg_idx].into_iter().collect();
    let mut formula = f.without_clauses(&removed);

    let resolvent: Vec<Literal> = f.clauses()[pos_idx]
        .literals()
        .iter()
        .chain(f.clauses()[neg_idx].literals())
        .copied()
        .filter(|l| l.var != var)
        .collect();
    let offset = match Clause::new(resolvent) {
        Ok(c) => {
            formula.push(c);
            1
        }
        Err(ClauseError::Empty) => 1,
        Err(ClauseError::Tautology(_)) => 2,
        Err(ClauseError::ZeroVariable) => unreachable!("variables are 1-based"),
    };
    Some(outcome(inst, formula, RuleId::ResolveSingletons, offset))
}

/// Rule 3: remove F_U for an autarky π on U that leaves F \ F_U 1-expanding.
pub fn rule_autarky(inst: &Instance) -> Option<RuleOutcome> {
    let aut = find_autarky(&inst.formula);
    if aut.is_empty() {
        return None;
    }
    let formula = inst.formula.without_clauses(&aut.satisfied_clauses);
    let offset = aut.satisfied_clauses.len() as i64;
    Some(outcome(inst, formula, RuleId::Autarky, offset))
}

/// Rule 4 on a 1-expanding formula: `Ok(None)` when it is 2-expanding.
pub fn rule_expansion(inst: &Instance) -> Result<Option<RuleOutcome>, ReduceError> {
    let g = build_incidence(&inst.formula);
    match find_deficient_set(&g)? {
        None => Ok(None),
        Some(s) => Ok(Some(apply_expansion(inst, &s))),
    }
}

/// Rule 4 for a given S with |N(S)| = |S| + 1.
///
/// F[S] satisfiable: N(S) is removed, offset |N(S)|. Otherwise N(S) is
/// replaced by c', the union of N(S) with S deleted, offset |S|. An empty c'
/// is simply left out; a tautological c' is always satisfied, so it is left
/// out and the offset grows by one.
pub fn apply_expansion(inst: &Instance, s: &BTreeSet<Var>) -> RuleOutcome {
    let f = &inst.formula;
    let neighborhood = f.clauses_touching(s);
    let projection = f.project(s);
    let mut formula = f.without_clauses(&neighborhood);

    if projection.dropped == 0 && sat_oracle_small(&projection.formula) {
        let offset = neighborhood.len() as i64;
        return outcome(inst, formula, RuleId::Expansion, offset);
    }
    let merged: Vec<Literal> = neighborhood
        .iter()
        .flat_map(|&i| f.clauses()[i].literals().iter().copied())
        .filter(|l| !s.contains(&l.var))
        .collect();
    let offset = match Clause::new(merged) {
        Ok(c) => {
            formula.push(c);
            s.len() as i64
        }
        Err(ClauseError::Empty) => s.len() as i64,
        Err(ClauseError::Tautology(_)) => s.len() as i64 + 1,
        Err(ClauseError::ZeroVariable) => unreachable!("variables are 1-based"),
    };
    outcome(inst, formula, RuleId::Expansion, offset)
}

/// First applicable rule in the order 1, 2, 3, 4.
pub fn apply_first_rule(inst: &Instance) -> Result<Option<RuleOutcome>, ReduceError> {
    if let Some(o) = rule_pure_literal(inst) {
        return Ok(Some(o));
    }
    if let Some(o) = rule_resolve_singletons(inst) {
        return Ok(Some(o));
    }
    if let Some(o) = rule_autarky(inst) {
        return Ok(Some(o));
    }
    rule_expansion(inst)
}

/// Applies rules 1–4 until none applies.
pub fn reduce_exhaustively(inst: &Instance) -> Result<Instance, ReduceError> {
    let mut current = inst.clone();
    while let Some(o) = apply_first_rule(&current)? {
        current = o.instance;
    }
    Ok(current)
}

/// Complete satisfiability check: backtracking with unit propagation.
pub fn sat_oracle_small(f: &CnfFormula) -> bool {
    let mut values = vec![None; f.num_vars() as usize + 1];
    dpll(f.clauses(), &mut values)
}

enum ClauseState {
    Satisfied,
    Conflict,
    Unit(Literal),
    Open(Literal),
}

fn clause_state(c: &Clause, values: &[Option<bool>]) -> ClauseState {
    let mut free = None;
    let mut free_count = 0;
    for &l in c.literals() {
        match values[l.var as usize] {
            Some(v) if l.is_true_under(v) => return ClauseState::Satisfied,
            Some(_) => {}
            None => {
                free_count += 1;
                free.get_or_insert(l);
            }
        }
    }
    match (free_count, free) {
        (0, _) => ClauseState::Conflict,
        (1, Some(l)) => ClauseState::Unit(l),
        (_, Some(l)) => ClauseState::Open(l),
        _ => unreachable!(),
    }
}

fn dpll(clauses: &[Clause], values: &mut Vec<Option<bool>>) -> bool {
    let mut trail = Vec::new();
    let result = 'search: {
        loop {
            let mut changed = false;
            for c in clauses {
                match clause_state(c, values) {
                    ClauseState::Conflict => break 'search false,
                    ClauseState::Unit(l) => {
                        values[l.var as usize] = Some(l.positive);
                        trail.push(l.var);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        let branch = clauses.iter().find_map(|c| match clause_state(c, values) {
            ClauseState::Open(l) => Some(l),
            _ => None,
        });
        let Some(lit) = branch else {
            break 'search true;
        };
        for value in [lit.positive, !lit.positive] {
            values[lit.var as usize] = Some(value);
            if dpll(clauses, values) {
                break 'search true;
            }
        }
        values[lit.var as usize] = None;
        false
    };
    if !result {
        for v in trail {
            values[v as usize] = None;
        }
    }
    result
}

/// Substitutes `var = value`: satisfied clauses go (alpha drops by one per
/// clause), the false literal is deleted elsewhere, and a clause left with
/// nothing but the false literal is removed without touching alpha.
pub fn simplify(inst: &Instance, var: Var, value: bool) -> Instance {
    let mut clauses = Vec::with_capacity(inst.formula.num_clauses());
    let mut satisfied = 0i64;
    for c in inst.formula.clauses() {
        match c.literal_of(var) {
            Some(l) if l.is_true_under(value) => satisfied += 1,
            Some(_) => {
                if let Some(rest) = c.without_vars(|v| v == var) {
                    clauses.push(rest);
                }
            }
            None => clauses.push(c.clone()),
        }
    }
    inst.rewritten(
        CnfFormula::from_parts(inst.formula.num_vars(), clauses),
        Step::Assign { var, value },
        satisfied,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub formula: CnfFormula,
    pub flipped: BTreeSet<Var>,
}

/// Swaps x and x̄ for every variable with n(x̄) = 1 and n(x) ≥ 2, so that
/// (once rules 1–2 are exhausted) every variable has n(x) = 1, n(x̄) ≥ 2.
/// Requires that no variable occurs twice in both polarities.
pub fn normalize_polarity(f: &CnfFormula) -> Result<Normalized, ReduceError> {
    let table = f.occurrence_table();
    let mut flipped = BTreeSet::new();
    for (v, &(p, n)) in table.iter().enumerate().skip(1) {
        if p >= 2 && n >= 2 {
            return Err(ReduceError::BothPolaritiesRepeated(v as Var));
        }
        if n == 1 && p >= 2 {
            flipped.insert(v as Var);
        }
    }
    Ok(Normalized {
        formula: f.flip_variables(&flipped),
        flipped,
    })
}
