//! Branching rules and the complete decision procedure.
//!
//! Each search node recomputes k = alpha − ν(F), answers yes once k ≤ 0,
//! exhausts the reduction rules, and then branches. When neither branching
//! rule applies the instance is special and is decided through H*.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;
use thiserror::Error;

use crate::formula::{CnfFormula, Instance, Var};
use crate::hitset::{solve_m_minus_k, trial_seed, HitConfig, HitMode, DEFAULT_TRIAL_CAP};
use crate::incidence::matching_number;
use crate::reduce::{apply_first_rule, normalize_polarity, simplify, ReduceError, RuleId};
use crate::special::{build_hitting_instance, is_special, transform_special, SpecialError};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

/// μ = alpha − ν(F).
pub fn measure(inst: &Instance) -> i64 {
    inst.alpha - matching_number(&inst.formula) as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchRule {
    /// x occurs at least twice in each polarity; branch on its value.
    BothPolarities,
    /// A clause holds positive x and y; one of them is false.
    TwoPositives,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub rule: BranchRule,
    pub vars: (Var, Var),
    /// Explored in this order.
    pub children: [Instance; 2],
}

/// Lowest x with n(x) ≥ 2 and n(x̄) ≥ 2; children x = true, x = false.
pub fn branch_rule1(inst: &Instance) -> Option<Branch> {
    let table = inst.formula.occurrence_table();
    let x = (1..table.len()).find(|&v| table[v].0 >= 2 && table[v].1 >= 2)? as Var;
    Some(Branch {
        rule: BranchRule::BothPolarities,
        vars: (x, x),
        children: [simplify(inst, x, true), simplify(inst, x, false)],
    })
}

/// Lowest x sharing a clause with another positive literal y (the next one
/// in that clause); children x = false, y = false.
pub fn branch_rule2(inst: &Instance) -> Option<Branch> {
    let (x, y) = inst
        .formula
        .clauses()
        .iter()
        .filter_map(|c| {
            let mut pos = c.literals().iter().filter(|l| l.positive);
            Some((pos.next()?.var, pos.next()?.var))
        })
        .min()?;
    Some(Branch {
        rule: BranchRule::TwoPositives,
        vars: (x, y),
        children: [simplify(inst, x, false), simplify(inst, y, false)],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub mode: HitMode,
    pub seed: u64,
    pub trial_cap: u64,
    pub node_budget: u64,
    /// Explore both children of a branch on the rayon pool.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            mode: HitMode::Randomized,
            seed: 0,
            trial_cap: DEFAULT_TRIAL_CAP,
            node_budget: DEFAULT_NODE_BUDGET,
            parallel: false,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub max_depth: u64,
    pub leaf_special_instances: u64,
    pub hitting_set_searches: u64,
    pub exact_fallbacks: u64,
    pub transform_tautologies: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RuleCounts {
    pub pure_literal: u64,
    pub resolve_singletons: u64,
    pub autarky: u64,
    pub expansion: u64,
    pub branch_both_polarities: u64,
    pub branch_two_positives: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub answer: bool,
    /// alpha − ν(F) at the root.
    pub k: i64,
    pub nu: usize,
    pub stats: SearchStats,
    pub rule_counts: RuleCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search exceeded the node budget of {budget}")]
    NodeBudgetExceeded { budget: u64 },
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    Rule(RuleId),
    TransformTautology,
}

/// Hooks into the search, called from worker threads in parallel mode.
pub trait SearchObserver: Sync {
    fn on_reduction(&self, _kind: Reduction, _mu_before: i64, _mu_after: i64) {}
    fn on_branch(&self, _rule: BranchRule, _parent_mu: i64, _child_mu: [i64; 2]) {}
    fn on_special_leaf(&self, _formula: &CnfFormula) {}
}

pub struct NoObserver;

impl SearchObserver for NoObserver {}

#[derive(Default)]
struct Counters {
    nodes: AtomicU64,
    max_depth: AtomicU64,
    leaves: AtomicU64,
    searches: AtomicU64,
    fallbacks: AtomicU64,
    tautologies: AtomicU64,
    rules: [AtomicU64; 6],
}

impl Counters {
    fn bump(c: &AtomicU64) {
        c.fetch_add(1, Ordering::Relaxed);
    }

    fn stats(&self) -> SearchStats {
        let get = |c: &AtomicU64| c.load(Ordering::Relaxed);
        SearchStats {
            nodes_expanded: get(&self.nodes),
            max_depth: get(&self.max_depth),
            leaf_special_instances: get(&self.leaves),
            hitting_set_searches: get(&self.searches),
            exact_fallbacks: get(&self.fallbacks),
            transform_tautologies: get(&self.tautologies),
        }
    }

    fn rule_counts(&self) -> RuleCounts {
        let get = |i: usize| self.rules[i].load(Ordering::Relaxed);
        RuleCounts {
            pure_literal: get(0),
            resolve_singletons: get(1),
            autarky: get(2),
            expansion: get(3),
            branch_both_polarities: get(4),
            branch_two_positives: get(5),
        }
    }
}

fn rule_slot(rule: RuleId) -> usize {
    match rule {
        RuleId::PureLiteral => 0,
        RuleId::ResolveSingletons => 1,
        RuleId::Autarky => 2,
        RuleId::Expansion => 3,
    }
}

struct Search<'a> {
    cfg: &'a SolverConfig,
    obs: &'a dyn SearchObserver,
    counters: Counters,
}

impl Search<'_> {
    fn node(&self, mut inst: Instance, depth: u64, seed: u64) -> Result<bool, SolveError> {
        let nodes = self.counters.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if nodes > self.cfg.node_budget {
            return Err(SolveError::NodeBudgetExceeded {
                budget: self.cfg.node_budget,
            });
        }
        self.counters.max_depth.fetch_max(depth, Ordering::Relaxed);

        loop {
            let mu = measure(&inst);
            if mu <= 0 {
                return Ok(true);
            }
            if let Some(out) = apply_first_rule(&inst)? {
                Counters::bump(&self.counters.rules[rule_slot(out.applied)]);
                self.obs
                    .on_reduction(Reduction::Rule(out.applied), mu, measure(&out.instance));
                inst = out.instance;
                continue;
            }
            if let Some(b) = branch_rule1(&inst) {
                return self.branch(b, mu, depth, seed);
            }
            let normalized = normalize_polarity(&inst.formula)?;
            inst.formula = normalized.formula;
            if let Some(b) = branch_rule2(&inst) {
                return self.branch(b, mu, depth, seed);
            }

            debug_assert!(is_special(&inst.formula), "{}", inst.formula);
            Counters::bump(&self.counters.leaves);
            self.obs.on_special_leaf(&inst.formula);
            let t = transform_special(&inst)?;
            if t.tautologies > 0 {
                self.counters
                    .tautologies
                    .fetch_add(t.tautologies as u64, Ordering::Relaxed);
                self.obs
                    .on_reduction(Reduction::TransformTautology, mu, measure(&t.instance));
            }
            let Ok(h) = build_hitting_instance(&t.instance) else {
                // a dropped tautology can leave a variable without c(x)
                inst = t.instance;
                continue;
            };
            if let Some(answer) = h.trivial_answer() {
                return Ok(answer);
            }
            Counters::bump(&self.counters.searches);
            let hit = HitConfig {
                mode: self.cfg.mode,
                seed,
                trial_cap: self.cfg.trial_cap,
            };
            let ans = solve_m_minus_k(&h.hypergraph, h.k, &hit);
            if ans.exact_fallback {
                Counters::bump(&self.counters.fallbacks);
            }
            return Ok(ans.exists);
        }
    }

    fn branch(&self, b: Branch, mu: i64, depth: u64, seed: u64) -> Result<bool, SolveError> {
        let slot = match b.rule {
            BranchRule::BothPolarities => 4,
            BranchRule::TwoPositives => 5,
        };
        Counters::bump(&self.counters.rules[slot]);
        self.obs.on_branch(
            b.rule,
            mu,
            [measure(&b.children[0]), measure(&b.children[1])],
        );
        let [first, second] = b.children;
        let (s0, s1) = (trial_seed(seed, 0, 0), trial_seed(seed, 0, 1));
        if self.cfg.parallel {
            let (r0, r1) = rayon::join(
                || self.node(first, depth + 1, s0),
                || self.node(second, depth + 1, s1),
            );
            Ok(r0? || r1?)
        } else {
            Ok(self.node(first, depth + 1, s0)? || self.node(second, depth + 1, s1)?)
        }
    }
}

/// Decides sat(F) ≥ alpha.
pub fn solve(inst: &Instance, cfg: &SolverConfig) -> Result<SolveReport, SolveError> {
    solve_observed(inst, cfg, &NoObserver)
}

pub fn solve_observed(
    inst: &Instance,
    cfg: &SolverConfig,
    obs: &dyn SearchObserver,
) -> Result<SolveReport, SolveError> {
    let nu = matching_number(&inst.formula);
    let search = Search {
        cfg,
        obs,
        counters: Counters::default(),
    };
    let answer = search.node(inst.clone(), 0, cfg.seed)?;
    Ok(SolveReport {
        answer,
        k: inst.alpha - nu as i64,
        nu,
        stats: search.counters.stats(),
        rule_counts: search.counters.rule_counts(),
    })
}

/// Shorthand for `solve` with the default configuration.
pub fn decide(formula: &CnfFormula, alpha: i64) -> Result<bool, SolveError> {
    Ok(solve(
        &Instance::new(formula.clone(), alpha),
        &SolverConfig::default(),
    )?
    .answer)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::from_dimacs_clauses(clauses)
    }

    fn inst(clauses: &[&[i64]], alpha: i64) -> Instance {
        Instance::new(f(clauses), alpha)
    }

    #[test]
    fn measure_examples() {
        assert_eq!(measure(&inst(&[&[1], &[-1]], 2)), 1);
        assert_eq!(measure(&inst(&[&[1]], 1)), 0);
        assert_eq!(measure(&Instance::new(CnfFormula::default(), 0)), 0);
    }

    #[test]
    fn rule1_example() {
        let i = inst(&[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2], &[2], &[-2]], 5);
        let b = branch_rule1(&i).unwrap();
        assert_eq!(b.vars, (1, 1));
        for c in &b.children {
            assert_eq!(c.formula.live_vars(), vec![2]);
        }
        assert_eq!(b.children[0].alpha, 3);
        assert!(branch_rule1(&inst(&[&[1], &[-1, 2], &[-2]], 2)).is_none());
    }

    #[test]
    fn rule2_example() {
        let i = inst(&[&[1, 2, -3], &[-1, -2], &[-1, -3], &[-2, -3], &[3]], 5);
        let b = branch_rule2(&i).unwrap();
        assert_eq!(b.vars, (1, 2));
        assert!(b.children[0]
            .formula
            .clauses()
            .iter()
            .all(|c| !c.contains_var(1)));
        assert!(b.children[1]
            .formula
            .clauses()
            .iter()
            .all(|c| !c.contains_var(2)));
        let special = inst(&[&[1], &[-1], &[-1]], 2);
        assert!(branch_rule2(&special).is_none());
    }

    #[test]
    fn solve_examples() {
        let cfg = SolverConfig::default();
        assert!(solve(&inst(&[&[1], &[-1]], 1), &cfg).unwrap().answer);
        assert!(!solve(&inst(&[&[1], &[-1]], 2), &cfg).unwrap().answer);
        let r = solve(&inst(&[&[1], &[-1], &[1, 2], &[-2]], 3), &cfg).unwrap();
        assert!(r.answer);
        assert_eq!((r.nu, r.k), (2, 1));
        assert!(
            !solve(&inst(&[&[1], &[-1], &[1, 2], &[-2]], 4), &cfg)
                .unwrap()
                .answer
        );
    }

    #[test]
    fn empty_formula() {
        let cfg = SolverConfig::default();
        assert!(
            solve(&Instance::new(CnfFormula::default(), 0), &cfg)
                .unwrap()
                .answer
        );
        assert!(
            !solve(&Instance::new(CnfFormula::default(), 1), &cfg)
                .unwrap()
                .answer
        );
    }

    #[test]
    fn node_budget_aborts() {
        let cfg = SolverConfig {
            node_budget: 0,
            ..SolverConfig::default()
        };
        assert_eq!(
            solve(&inst(&[&[1], &[-1]], 2), &cfg),
            Err(SolveError::NodeBudgetExceeded { budget: 0 })
        );
    }

    #[test]
    fn parallel_matches_sequential() {
        let i = inst(
            &[
                &[1, 2],
                &[1, -2],
                &[-1, 2],
                &[-1, -2],
                &[2, 3],
                &[-3],
                &[-2, 3],
                &[1, 3],
            ],
            8,
        );
        let seq = solve(&i, &SolverConfig::default()).unwrap();
        let par = solve(
            &i,
            &SolverConfig {
                parallel: true,
                ..SolverConfig::default()
            },
        )
        .unwrap();
        assert_eq!(seq.answer, par.answer);
    }
}
