//! DIMACS CNF reading and writing.
//!
//! The accepted dialect is the solver-competition one: an optional run of
//! `c` comment lines, a `p cnf <vars> <clauses>` header, then whitespace
//! separated signed integers where `0` terminates a clause. Clauses may span
//! lines. Comment lines may also appear after the header.

use std::fmt::Write as _;

use thiserror::Error;

use crate::cnf::{Clause, CnfError, CnfFormula, Lit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct DimacsError {
    pub line: usize,
    pub kind: DimacsErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsErrorKind {
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("malformed header `{0}`")]
    MalformedHeader(String),
    #[error("duplicate header")]
    DuplicateHeader,
    #[error("invalid token `{0}`")]
    InvalidToken(String),
    #[error("variable {var} exceeds declared count {num_vars}")]
    VariableOutOfRange { var: u64, num_vars: u32 },
    #[error("clause contains complementary literals over variable {0}")]
    ComplementaryLiterals(u32),
    #[error("last clause is not terminated by 0")]
    UnterminatedClause,
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
}

fn err(line: usize, kind: DimacsErrorKind) -> DimacsError {
    DimacsError { line, kind }
}

/// Parses DIMACS CNF text.
///
/// The clause count is checked against the clauses as written, before
/// duplicates collapse.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut clause_line = 0;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(err(line_no, DimacsErrorKind::DuplicateHeader));
            }
            header = Some(parse_header(line).ok_or_else(|| {
                err(line_no, DimacsErrorKind::MalformedHeader(line.to_owned()))
            })?);
            continue;
        }
        // Some generators end files with a `%` line.
        if line.starts_with('%') {
            break;
        }
        let (num_vars, _) =
            header.ok_or_else(|| err(line_no, DimacsErrorKind::MissingHeader))?;
        for token in line.split_whitespace() {
            let value: i64 = token
                .parse()
                .map_err(|_| err(line_no, DimacsErrorKind::InvalidToken(token.to_owned())))?;
            if value == 0 {
                let clause = Clause::new(current.drain(..)).map_err(|e| match e {
                    CnfError::ComplementaryLiterals(v) => {
                        err(line_no, DimacsErrorKind::ComplementaryLiterals(v.get()))
                    }
                    other => unreachable!("clause construction only rejects complements: {other}"),
                })?;
                clauses.push(clause);
                continue;
            }
            if value.unsigned_abs() > u64::from(num_vars) {
                return Err(err(
                    line_no,
                    DimacsErrorKind::VariableOutOfRange {
                        var: value.unsigned_abs(),
                        num_vars,
                    },
                ));
            }
            if current.is_empty() {
                clause_line = line_no;
            }
            current.push(Lit::from_dimacs(value).expect("nonzero and in range"));
        }
    }

    let (num_vars, declared) =
        header.ok_or_else(|| err(last_line.max(1), DimacsErrorKind::MissingHeader))?;
    if !current.is_empty() {
        return Err(err(clause_line, DimacsErrorKind::UnterminatedClause));
    }
    if clauses.len() != declared {
        return Err(err(
            last_line.max(1),
            DimacsErrorKind::ClauseCountMismatch {
                declared,
                found: clauses.len(),
            },
        ));
    }
    Ok(CnfFormula::new(num_vars, clauses).expect("literals were range checked"))
}

fn parse_header(line: &str) -> Option<(u32, usize)> {
    let mut parts = line.split_whitespace();
    if parts.next()? != "p" || parts.next()? != "cnf" {
        return None;
    }
    let n = parts.next()?.parse().ok()?;
    let m = parts.next()?.parse().ok()?;
    if parts.next().is_some() {
        return None;
    }
    Some((n, m))
}

/// Writes `formula` in canonical (sorted) clause order.
pub fn emit_dimacs(formula: &CnfFormula) -> String {
    let mut out = String::new();
    writeln!(out, "p cnf {} {}", formula.num_vars(), formula.len()).unwrap();
    for clause in formula.clauses() {
        for lit in clause.lits() {
            write!(out, "{} ", lit.to_dimacs()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}
