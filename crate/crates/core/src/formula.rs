//! CNF data model: literals, clauses, formulas, assignments and the
//! `(formula, alpha)` instance the solver rewrites.
//!
//! Variables are 1-based and never renumbered. A variable that no longer
//! occurs in any clause is simply dead; `num_vars` keeps counting it so that
//! traces and assignments stay interpretable across rule applications.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

/// Variable index, 1-based.
pub type Var = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: Var,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: Var) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: Var) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    /// Builds a literal from a signed DIMACS integer. Zero has no literal.
    pub fn from_dimacs(value: i64) -> Option<Self> {
        if value == 0 || value.unsigned_abs() > Var::MAX as u64 {
            return None;
        }
        Some(Literal {
            var: value.unsigned_abs() as Var,
            positive: value > 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }

    pub fn negated(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    /// True iff `value` for this literal's variable makes the literal true.
    pub fn is_true_under(self, value: bool) -> bool {
        value == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "¬x{}", self.var)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum ClauseError {
    #[error("clause is empty")]
    Empty,
    #[error("clause contains x{0} in both polarities")]
    Tautology(Var),
    #[error("variable index 0 is not allowed")]
    ZeroVariable,
}

/// A nonempty, non-tautological set of literals kept sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    /// Duplicate literals collapse; complementary pairs and empty input are
    /// rejected.
    pub fn new<I: IntoIterator<Item = Literal>>(literals: I) -> Result<Self, ClauseError> {
        let mut lits: Vec<Literal> = literals.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.is_empty() {
            return Err(ClauseError::Empty);
        }
        if lits[0].var == 0 {
            return Err(ClauseError::ZeroVariable);
        }
        if let Some(w) = lits.windows(2).find(|w| w[0].var == w[1].var) {
            return Err(ClauseError::Tautology(w[0].var));
        }
        Ok(Clause { literals: lits })
    }

    /// Convenience constructor from signed integers, mostly for tests.
    pub fn from_dimacs(values: &[i64]) -> Result<Self, ClauseError> {
        let lits = values
            .iter()
            .map(|&v| Literal::from_dimacs(v).ok_or(ClauseError::ZeroVariable))
            .collect::<Result<Vec<_>, _>>()?;
        Clause::new(lits)
    }

    pub fn unit(lit: Literal) -> Self {
        Clause {
            literals: vec![lit],
        }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.literals.iter().map(|l| l.var)
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.literals.binary_search(&lit).is_ok()
    }

    pub fn contains_var(&self, var: Var) -> bool {
        self.literal_of(var).is_some()
    }

    /// The literal of `var` in this clause, if any.
    pub fn literal_of(&self, var: Var) -> Option<Literal> {
        self.literals
            .binary_search_by_key(&var, |l| l.var)
            .ok()
            .map(|i| self.literals[i])
    }

    pub fn positive_count(&self) -> usize {
        self.literals.iter().filter(|l| l.positive).count()
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.literals
            .iter()
            .any(|l| a.get(l.var).is_some_and(|v| l.is_true_under(v)))
    }

    /// Literal-set union; a complementary pair yields `Tautology`.
    pub fn union(&self, other: &Clause) -> Result<Clause, ClauseError> {
        Clause::new(self.literals.iter().chain(other.literals.iter()).copied())
    }

    /// Drops every literal whose variable satisfies `pred`; `None` if nothing
    /// remains.
    pub fn without_vars(&self, mut pred: impl FnMut(Var) -> bool) -> Option<Clause> {
        let lits: Vec<Literal> = self
            .literals
            .iter()
            .copied()
            .filter(|l| !pred(l.var))
            .collect();
        if lits.is_empty() {
            None
        } else {
            Some(Clause { literals: lits })
        }
    }

    pub(crate) fn flip_vars(&self, flip: impl Fn(Var) -> bool) -> Clause {
        Clause {
            literals: self
                .literals
                .iter()
                .map(|&l| if flip(l.var) { l.negated() } else { l })
                .collect(),
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                write!(f, " ∨ ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("clause {clause} mentions x{var} but the formula has {num_vars} variables")]
    VarOutOfRange {
        clause: usize,
        var: Var,
        num_vars: u32,
    },
    #[error("assignment leaves x{0} unassigned")]
    PartialAssignment(Var),
    #[error("assignment covers {assignment} variables, formula has {formula}")]
    AssignmentSize { assignment: u32, formula: u32 },
    #[error("variable x{var} out of range 1..={num_vars}")]
    NoSuchVariable { var: Var, num_vars: u32 },
}

/// A multiset of clauses over variables `1..=num_vars`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: u32, clauses: Vec<Clause>) -> Result<Self, FormulaError> {
        for (i, c) in clauses.iter().enumerate() {
            if let Some(v) = c.vars().find(|&v| v > num_vars) {
                return Err(FormulaError::VarOutOfRange {
                    clause: i,
                    var: v,
                    num_vars,
                });
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Builds a formula from signed-integer clauses; `num_vars` is the largest
    /// variable mentioned. Panics on malformed clauses, so keep it to tests
    /// and literals written inline.
    pub fn from_dimacs_clauses(clauses: &[&[i64]]) -> Self {
        let clauses: Vec<Clause> = clauses
            .iter()
            .map(|c| Clause::from_dimacs(c).expect("well-formed clause"))
            .collect();
        let num_vars = clauses.iter().flat_map(|c| c.vars()).max().unwrap_or(0);
        CnfFormula { num_vars, clauses }
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// V(F): variables occurring in at least one clause, ascending.
    pub fn live_vars(&self) -> Vec<Var> {
        let set: BTreeSet<Var> = self.clauses.iter().flat_map(|c| c.vars()).collect();
        set.into_iter().collect()
    }

    /// Number of clauses satisfied by a total assignment.
    pub fn count_satisfied(&self, a: &Assignment) -> Result<usize, FormulaError> {
        if a.num_vars() != self.num_vars {
            return Err(FormulaError::AssignmentSize {
                assignment: a.num_vars(),
                formula: self.num_vars,
            });
        }
        if let Some(v) = (1..=self.num_vars).find(|&v| a.get(v).is_none()) {
            return Err(FormulaError::PartialAssignment(v));
        }
        Ok(self.clauses.iter().filter(|c| c.is_satisfied_by(a)).count())
    }

    /// `(n(x), n(x̄))` counting duplicate clauses.
    pub fn occurrence_counts(&self, var: Var) -> Result<(usize, usize), FormulaError> {
        if var == 0 || var > self.num_vars {
            return Err(FormulaError::NoSuchVariable {
                var,
                num_vars: self.num_vars,
            });
        }
        Ok(self.occurrences_unchecked(var))
    }

    pub(crate) fn occurrences_unchecked(&self, var: Var) -> (usize, usize) {
        let mut pos = 0;
        let mut neg = 0;
        for c in &self.clauses {
            match c.literal_of(var) {
                Some(l) if l.positive => pos += 1,
                Some(_) => neg += 1,
                None => {}
            }
        }
        (pos, neg)
    }

    /// Occurrence counts for every variable, indexed by variable (index 0
    /// unused).
    pub fn occurrence_table(&self) -> Vec<(usize, usize)> {
        let mut table = vec![(0, 0); self.num_vars as usize + 1];
        for c in &self.clauses {
            for l in c.literals() {
                let e = &mut table[l.var as usize];
                if l.positive {
                    e.0 += 1;
                } else {
                    e.1 += 1;
                }
            }
        }
        table
    }

    /// Indices of clauses `c` with `V(c) ∩ xs ≠ ∅` (the subformula F_X).
    pub fn clauses_touching(&self, xs: &BTreeSet<Var>) -> BTreeSet<usize> {
        self.clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| c.vars().any(|v| xs.contains(&v)))
            .map(|(i, _)| i)
            .collect()
    }

    /// F[S]: the clauses touching `s`, restricted to the variables of `s`.
    pub fn project(&self, s: &BTreeSet<Var>) -> Projection {
        let mut clauses = Vec::new();
        let mut dropped = 0;
        for c in &self.clauses {
            if !c.vars().any(|v| s.contains(&v)) {
                continue;
            }
            match c.without_vars(|v| !s.contains(&v)) {
                Some(p) => clauses.push(p),
                None => dropped += 1,
            }
        }
        Projection {
            formula: CnfFormula {
                num_vars: self.num_vars,
                clauses,
            },
            dropped,
        }
    }

    /// The formula without the clauses at `indices`.
    pub fn without_clauses(&self, indices: &BTreeSet<usize>) -> CnfFormula {
        CnfFormula {
            num_vars: self.num_vars,
            clauses: self
                .clauses
                .iter()
                .enumerate()
                .filter(|(i, _)| !indices.contains(i))
                .map(|(_, c)| c.clone())
                .collect(),
        }
    }

    pub(crate) fn from_parts(num_vars: u32, clauses: Vec<Clause>) -> Self {
        debug_assert!(clauses.iter().flat_map(|c| c.vars()).all(|v| v <= num_vars));
        CnfFormula { num_vars, clauses }
    }

    pub(crate) fn push(&mut self, clause: Clause) {
        debug_assert!(clause.vars().all(|v| v <= self.num_vars));
        self.clauses.push(clause);
    }

    /// Swaps `x` and `x̄` for every variable in `vars`.
    pub fn flip_variables(&self, vars: &BTreeSet<Var>) -> CnfFormula {
        CnfFormula {
            num_vars: self.num_vars,
            clauses: self
                .clauses
                .iter()
                .map(|c| c.flip_vars(|v| vars.contains(&v)))
                .collect(),
        }
    }

    /// Canonical DIMACS: header, then one clause per line with literals
    /// sorted by variable.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c.literals() {
                let _ = write!(out, "{} ", l.to_dimacs());
            }
            out.push_str("0\n");
        }
        out
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub formula: CnfFormula,
    /// Projected clauses that came out empty and were left out.
    pub dropped: usize,
}

/// Possibly partial truth assignment over `1..=num_vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<Option<bool>>,
}

impl Assignment {
    pub fn empty(num_vars: u32) -> Self {
        Assignment {
            values: vec![None; num_vars as usize + 1],
        }
    }

    /// Total assignment from a slice where `values[i]` is the value of x_{i+1}.
    pub fn total(values: &[bool]) -> Self {
        let mut a = Assignment::empty(values.len() as u32);
        for (i, &v) in values.iter().enumerate() {
            a.values[i + 1] = Some(v);
        }
        a
    }

    pub fn num_vars(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.values.get(var as usize).copied().flatten()
    }

    pub fn set(&mut self, var: Var, value: bool) {
        assert!(
            var >= 1 && (var as usize) < self.values.len(),
            "x{var} out of range"
        );
        self.values[var as usize] = Some(value);
    }

    pub fn domain(&self) -> impl Iterator<Item = Var> + '_ {
        self.values
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, v)| v.is_some())
            .map(|(i, _)| i as Var)
    }
}

/// What rewrote an instance. Offsets live next to the step in the trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    PureLiteral,
    ResolveSingletons,
    Autarky,
    Expansion,
    Assign { var: Var, value: bool },
    TransformTautology,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub step: Step,
    /// Amount subtracted from alpha by this step.
    pub alpha_offset: i64,
}

/// A formula with its target `alpha`; the unit every rule rewrites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub formula: CnfFormula,
    pub alpha: i64,
    pub trace: Vec<TraceEntry>,
}

impl Instance {
    pub fn new(formula: CnfFormula, alpha: i64) -> Self {
        Instance {
            formula,
            alpha,
            trace: Vec::new(),
        }
    }

    /// Alpha before any recorded step.
    pub fn original_alpha(&self) -> i64 {
        self.alpha + self.trace.iter().map(|t| t.alpha_offset).sum::<i64>()
    }

    /// Successor instance with `alpha` lowered by `offset` and the step logged.
    pub fn rewritten(&self, formula: CnfFormula, step: Step, offset: i64) -> Instance {
        let mut trace = self.trace.clone();
        trace.push(TraceEntry {
            step,
            alpha_offset: offset,
        });
        Instance {
            formula,
            alpha: self.alpha - offset,
            trace,
        }
    }
}
