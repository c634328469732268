//! Max-SAT parameterized above the matching number of the clause-variable
//! incidence graph.
//!
//! Given a CNF formula F and a target alpha, [`solve`] decides whether some
//! assignment satisfies at least alpha clauses. The running time is
//! exponential only in k = alpha − ν(F), where ν(F) is the size of a maximum
//! matching between variables and clauses.

pub mod bipartite;
pub mod branch;
pub mod bush;
pub mod dimacs;
pub mod formula;
pub mod genoracle;
pub mod hitset;
pub mod incidence;
pub mod reduce;
pub mod special;

pub use branch::{decide, measure, solve, solve_observed, SolveError, SolveReport, SolverConfig};
pub use dimacs::{parse_dimacs, parse_dimacs_bytes, ParseError};
pub use formula::{Assignment, Clause, CnfFormula, Instance, Literal, Step, Var};
pub use genoracle::{brute_maxsat, gen_random, hypergraph_to_cnf, Family, GenConfig, Generated};
pub use hitset::{parse_hypergraph, solve_m_minus_k, HitConfig, HitMode, Hypergraph};
pub use incidence::{build_incidence, matching_number};
