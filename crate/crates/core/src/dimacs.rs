//! DIMACS CNF reader. Emission lives on [`CnfFormula::to_dimacs`].

use thiserror::Error;

use crate::formula::{Clause, ClauseError, CnfFormula, Literal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("input is not valid UTF-8")]
    NotUtf8,
    #[error("missing `p cnf <vars> <clauses>` header")]
    MissingHeader,
    #[error("line {line}: malformed header `{text}`")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: unexpected token `{token}`")]
    BadToken { line: usize, token: String },
    #[error("line {line}: clause contains both {var} and -{var}")]
    Tautology { line: usize, var: u32 },
    #[error("line {line}: empty clause")]
    EmptyClause { line: usize },
    #[error("line {line}: variable {var} exceeds declared count {num_vars}")]
    VarOutOfRange {
        line: usize,
        var: u32,
        num_vars: u32,
    },
    #[error("line {line}: clause is not terminated by 0")]
    Unterminated { line: usize },
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCount { declared: usize, found: usize },
}

pub fn parse_dimacs_bytes(bytes: &[u8]) -> Result<CnfFormula, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|_| ParseError::NotUtf8)?;
    parse_dimacs(text)
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    // line where the clause under construction started
    let mut clause_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            // SATLIB trailer
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::MalformedHeader {
                    line,
                    text: trimmed.to_string(),
                });
            }
            header = Some(parse_header(line, trimmed)?);
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(ParseError::MissingHeader);
        };
        for token in trimmed.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| ParseError::BadToken {
                line,
                token: token.to_string(),
            })?;
            if value == 0 {
                if current.is_empty() {
                    return Err(ParseError::EmptyClause { line });
                }
                let clause = Clause::new(current.drain(..)).map_err(|e| match e {
                    ClauseError::Tautology(var) => ParseError::Tautology {
                        line: clause_line,
                        var,
                    },
                    ClauseError::Empty | ClauseError::ZeroVariable => {
                        ParseError::EmptyClause { line: clause_line }
                    }
                })?;
                clauses.push(clause);
                continue;
            }
            if current.is_empty() {
                clause_line = line;
            }
            let lit = Literal::from_dimacs(value).ok_or_else(|| ParseError::BadToken {
                line,
                token: token.to_string(),
            })?;
            if lit.var > num_vars {
                return Err(ParseError::VarOutOfRange {
                    line,
                    var: lit.var,
                    num_vars,
                });
            }
            current.push(lit);
        }
    }

    let Some((num_vars, declared)) = header else {
        return Err(ParseError::MissingHeader);
    };
    if !current.is_empty() {
        return Err(ParseError::Unterminated { line: clause_line });
    }
    if clauses.len() != declared {
        return Err(ParseError::ClauseCount {
            declared,
            found: clauses.len(),
        });
    }
    Ok(CnfFormula::from_parts(num_vars, clauses))
}

fn parse_header(line: usize, text: &str) -> Result<(u32, usize), ParseError> {
    let malformed = || ParseError::MalformedHeader {
        line,
        text: text.to_string(),
    };
    let mut parts = text.split_whitespace();
    if parts.next() != Some("p") || parts.next() != Some("cnf") {
        return Err(malformed());
    }
    let n: u32 = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(malformed)?;
    let m: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(malformed)?;
    if parts.next().is_some() {
        return Err(malformed());
    }
    Ok((n, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_formula() {
        let f = parse_dimacs("c hello\np cnf 2 2\n1 -2 0\n2 0\n").unwrap();
        assert_eq!(f, CnfFormula::from_dimacs_clauses(&[&[1, -2], &[2]]));
    }

    #[test]
    fn clause_may_span_lines() {
        let f = parse_dimacs("p cnf 3 1\n1 2\n-3 0\n").unwrap();
        assert_eq!(f.clauses()[0].len(), 3);
    }

    #[test]
    fn tautology_is_rejected() {
        assert_eq!(
            parse_dimacs("p cnf 1 1\n1 -1 0\n"),
            Err(ParseError::Tautology { line: 2, var: 1 })
        );
    }

    #[test]
    fn empty_clause_is_rejected() {
        assert_eq!(
            parse_dimacs("p cnf 3 1\n0\n"),
            Err(ParseError::EmptyClause { line: 2 })
        );
    }

    #[test]
    fn out_of_range_variable() {
        assert_eq!(
            parse_dimacs("p cnf 2 1\n1 3 0\n"),
            Err(ParseError::VarOutOfRange {
                line: 2,
                var: 3,
                num_vars: 2
            })
        );
    }

    #[test]
    fn header_errors() {
        assert!(matches!(
            parse_dimacs("p dnf 2 1\n1 0\n"),
            Err(ParseError::MalformedHeader { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs("p cnf x 1\n1 0\n"),
            Err(ParseError::MalformedHeader { .. })
        ));
        assert_eq!(parse_dimacs("1 0\n"), Err(ParseError::MissingHeader));
        assert_eq!(parse_dimacs(""), Err(ParseError::MissingHeader));
    }

    #[test]
    fn count_mismatch_and_unterminated() {
        assert_eq!(
            parse_dimacs("p cnf 2 2\n1 0\n"),
            Err(ParseError::ClauseCount {
                declared: 2,
                found: 1
            })
        );
        assert_eq!(
            parse_dimacs("p cnf 2 1\n1 2\n"),
            Err(ParseError::Unterminated { line: 2 })
        );
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 a 0\n"),
            Err(ParseError::BadToken { line: 2, .. })
        ));
    }

    #[test]
    fn duplicate_clauses_are_kept() {
        let f = parse_dimacs("p cnf 1 3\n-1 0\n-1 0\n1 0\n").unwrap();
        assert_eq!(f.num_clauses(), 3);
    }
}
