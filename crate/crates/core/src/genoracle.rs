//! Brute-force MaxSat, the hypergraph to CNF reduction and seeded instance
//! generators.
//!
//! All generators draw from `ChaCha8Rng::seed_from_u64(seed)`, so a seed
//! names the same instance on every platform.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::formula::{Clause, CnfFormula, Literal, Var};
use crate::hitset::{Hypergraph, Vertex};

pub const BRUTE_FORCE_MAX_VARS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("brute force limited to {limit} variables, formula has {vars}")]
    TooManyVariables { vars: usize, limit: usize },
}

/// sat(F) by enumerating assignments of the live variables.
pub fn brute_maxsat(f: &CnfFormula) -> Result<usize, OracleError> {
    let live = f.live_vars();
    if live.len() > BRUTE_FORCE_MAX_VARS {
        return Err(OracleError::TooManyVariables {
            vars: live.len(),
            limit: BRUTE_FORCE_MAX_VARS,
        });
    }
    let mut index = vec![0u32; f.num_vars() as usize + 1];
    for (i, &v) in live.iter().enumerate() {
        index[v as usize] = i as u32;
    }
    let masks: Vec<(u32, u32)> = f
        .clauses()
        .iter()
        .map(|c| {
            c.literals().iter().fold((0, 0), |(p, n), l| {
                let bit = 1u32 << index[l.var as usize];
                if l.positive {
                    (p | bit, n)
                } else {
                    (p, n | bit)
                }
            })
        })
        .collect();
    let mut best = 0;
    for a in 0u32..(1u32 << live.len()) {
        let sat = masks
            .iter()
            .filter(|&&(p, n)| a & p != 0 || !a & n != 0)
            .count();
        best = best.max(sat);
        if best == masks.len() {
            break;
        }
    }
    Ok(best)
}

/// Whether sat(F) ≥ alpha, by brute force.
pub fn brute_decide(f: &CnfFormula, alpha: i64) -> Result<bool, OracleError> {
    Ok(brute_maxsat(f)? as i64 >= alpha)
}

/// A unit clause (x) for every vertex and an all-negative clause over each
/// edge. H has a hitting set of size m − k iff sat(F) ≥ n + k.
pub fn hypergraph_to_cnf(h: &Hypergraph) -> CnfFormula {
    let n = h.num_vertices();
    let mut clauses: Vec<Clause> = (1..=n).map(|v| Clause::unit(Literal::pos(v))).collect();
    for e in h.edges() {
        clauses.push(Clause::new(e.iter().map(|&v| Literal::neg(v))).expect("edges are nonempty"));
    }
    CnfFormula::new(n, clauses).expect("vertices are in range")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Family {
    #[default]
    Uniform,
    Special,
    HypergraphReduction,
    Hypergraph,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(Family::Uniform),
            "special" => Ok(Family::Special),
            "hypergraph-reduction" => Ok(Family::HypergraphReduction),
            "hypergraph" => Ok(Family::Hypergraph),
            other => Err(format!(
                "unknown family `{other}` (expected uniform|special|hypergraph-reduction|hypergraph)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    /// Variables, or vertices for the hypergraph families.
    pub num_vars: u32,
    /// Clauses, or edges for the hypergraph families.
    pub num_clauses: usize,
    /// Inclusive clause (edge) length bounds.
    pub clause_len: (usize, usize),
    pub family: Family,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            num_vars: 8,
            num_clauses: 16,
            clause_len: (1, 4),
            family: Family::Uniform,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("clause length range ({0}, {1}) is empty or starts at 0")]
    BadLengthRange(usize, usize),
    #[error("need at least one variable to build {0} clauses")]
    NoVariables(usize),
    #[error("infeasible configuration: {0}")]
    Infeasible(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generated {
    Cnf(CnfFormula),
    Hypergraph(Hypergraph),
}

impl Generated {
    pub fn into_cnf(self) -> Option<CnfFormula> {
        match self {
            Generated::Cnf(f) => Some(f),
            Generated::Hypergraph(_) => None,
        }
    }

    pub fn into_hypergraph(self) -> Option<Hypergraph> {
        match self {
            Generated::Hypergraph(h) => Some(h),
            Generated::Cnf(_) => None,
        }
    }

    /// DIMACS or hypergraph text.
    pub fn to_text(&self) -> String {
        match self {
            Generated::Cnf(f) => f.to_dimacs(),
            Generated::Hypergraph(h) => h.to_text(),
        }
    }
}

pub fn gen_random(cfg: &GenConfig) -> Result<Generated, GenError> {
    let (lo, hi) = cfg.clause_len;
    if lo == 0 || lo > hi {
        return Err(GenError::BadLengthRange(lo, hi));
    }
    if cfg.num_vars == 0 && cfg.num_clauses > 0 {
        return Err(GenError::NoVariables(cfg.num_clauses));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    match cfg.family {
        Family::Uniform => gen_uniform(cfg, &mut rng).map(Generated::Cnf),
        Family::Special => gen_special(cfg, &mut rng).map(Generated::Cnf),
        Family::Hypergraph => gen_hypergraph(cfg, &mut rng).map(Generated::Hypergraph),
        Family::HypergraphReduction => {
            gen_hypergraph(cfg, &mut rng).map(|h| Generated::Cnf(hypergraph_to_cnf(&h)))
        }
    }
}

fn too_long(cfg: &GenConfig) -> GenError {
    GenError::Infeasible(format!(
        "clauses of length {} need that many distinct variables, have {}",
        cfg.clause_len.0, cfg.num_vars
    ))
}

fn pick_vars(rng: &mut ChaCha8Rng, n: u32, lo: usize, hi: usize) -> Vec<Var> {
    let len = rng.gen_range(lo..=hi.min(n as usize));
    let pool: Vec<Var> = (1..=n).collect();
    let mut vars: Vec<Var> = pool.choose_multiple(rng, len).copied().collect();
    vars.sort_unstable();
    vars
}

fn gen_uniform(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Result<CnfFormula, GenError> {
    if cfg.num_clauses > 0 && cfg.clause_len.0 > cfg.num_vars as usize {
        return Err(too_long(cfg));
    }
    let clauses = (0..cfg.num_clauses)
        .map(|_| {
            let vars = pick_vars(rng, cfg.num_vars, cfg.clause_len.0, cfg.clause_len.1);
            Clause::new(vars.into_iter().map(|v| Literal {
                var: v,
                positive: rng.gen_bool(0.5),
            }))
            .expect("distinct variables")
        })
        .collect();
    Ok(CnfFormula::new(cfg.num_vars, clauses).expect("variables in range"))
}

fn gen_hypergraph(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Result<Hypergraph, GenError> {
    if cfg.num_clauses > 0 && cfg.clause_len.0 > cfg.num_vars as usize {
        return Err(too_long(cfg));
    }
    let edges: Vec<Vec<Vertex>> = (0..cfg.num_clauses)
        .map(|_| pick_vars(rng, cfg.num_vars, cfg.clause_len.0, cfg.clause_len.1))
        .collect();
    Ok(Hypergraph::new(cfg.num_vars, edges).expect("vertices in range"))
}

/// Builds c(x) for every variable, then all-negative clauses, then tops up
/// any variable with fewer than two negative occurrences.
fn gen_special(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Result<CnfFormula, GenError> {
    let n = cfg.num_vars as usize;
    let m = cfg.num_clauses;
    let (lo, hi) = cfg.clause_len;
    if m < n {
        return Err(GenError::Infeasible(format!(
            "special instances need a clause per variable: {m} clauses for {n} variables"
        )));
    }
    if lo > n {
        return Err(too_long(cfg));
    }
    // each clause as (positive var or 0, negative vars)
    let mut clauses: Vec<(Var, Vec<Var>)> = Vec::with_capacity(m);
    for x in 1..=cfg.num_vars {
        let len = rng.gen_range(lo..=hi.min(n));
        let others: Vec<Var> = (1..=cfg.num_vars).filter(|&v| v != x).collect();
        let negs: Vec<Var> = others.choose_multiple(rng, len - 1).copied().collect();
        clauses.push((x, negs));
    }
    for _ in n..m {
        clauses.push((0, pick_vars(rng, cfg.num_vars, lo, hi)));
    }

    let mut negatives = vec![0usize; n + 1];
    for (_, negs) in &clauses {
        for &v in negs {
            negatives[v as usize] += 1;
        }
    }
    for x in 1..=cfg.num_vars {
        while negatives[x as usize] < 2 {
            let room: Vec<usize> = (0..clauses.len())
                .filter(|&i| {
                    let (p, negs) = &clauses[i];
                    *p != x && negs.len() + usize::from(*p != 0) < hi && !negs.contains(&x)
                })
                .collect();
            let Some(&i) = room.choose(rng) else {
                return Err(GenError::Infeasible(format!(
                    "no room to give x{x} two negative occurrences"
                )));
            };
            clauses[i].1.push(x);
            negatives[x as usize] += 1;
        }
    }

    clauses.shuffle(rng);
    let built = clauses
        .into_iter()
        .map(|(p, negs)| {
            let pos = (p != 0).then(|| Literal::pos(p));
            Clause::new(pos.into_iter().chain(negs.into_iter().map(Literal::neg)))
                .expect("distinct variables")
        })
        .collect();
    Ok(CnfFormula::new(cfg.num_vars, built).expect("variables in range"))
}
