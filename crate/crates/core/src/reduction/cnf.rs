//! CNF formulas, truth assignments, and DIMACS input.

use std::fmt;
use std::str::FromStr;

use crate::error::{contract, Error, Result};

/// A disjunction of literals: `+i` is `xᵢ`, `-i` is `¬xᵢ` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause(Vec<i32>);

impl Clause {
    /// Sorts by variable (positive first) and drops repeats.
    pub fn new(mut literals: Vec<i32>) -> Result<Self> {
        if literals.is_empty() {
            return Err(contract("empty clause"));
        }
        if literals.contains(&0) {
            return Err(contract("literal 0 names no variable"));
        }
        literals.sort_by_key(|&l| (l.unsigned_abs(), l < 0));
        literals.dedup();
        Ok(Clause(literals))
    }

    pub fn literals(&self) -> &[i32] {
        &self.0
    }

    pub fn has_positive(&self, var: usize) -> bool {
        self.0.contains(&(var as i32))
    }

    pub fn has_negative(&self, var: usize) -> bool {
        self.0.contains(&-(var as i32))
    }

    pub fn max_variable(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Contains some `xᵢ` together with `¬xᵢ`.
    pub fn is_tautology(&self) -> bool {
        self.0.iter().any(|&l| l > 0 && self.0.contains(&-l))
    }

    pub fn satisfied_by(&self, x: &TruthAssignment) -> bool {
        self.0
            .iter()
            .any(|&l| x.value(l.unsigned_abs() as usize) == (l > 0))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l} ")?;
        }
        f.write_str("0")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self> {
        if let Some(c) = clauses.iter().find(|c| c.max_variable() > num_vars) {
            return Err(contract(format!(
                "clause {c} mentions a variable beyond x{num_vars}"
            )));
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Shorthand for tests and examples: each inner slice is one clause.
    pub fn from_literals(num_vars: usize, clauses: &[&[i32]]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| Clause::new(c.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        CnfFormula::new(num_vars, clauses)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn satisfied_by(&self, x: &TruthAssignment) -> bool {
        x.len() == self.num_vars && self.clauses.iter().all(|c| c.satisfied_by(x))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out
    }
}

/// `true` is ⊤.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthAssignment(Vec<bool>);

impl TruthAssignment {
    pub fn new(bits: Vec<bool>) -> Self {
        TruthAssignment(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Value of the 1-based variable `var`.
    pub fn value(&self, var: usize) -> bool {
        self.0[var - 1]
    }

    pub fn negated(&self) -> TruthAssignment {
        TruthAssignment(self.0.iter().map(|b| !b).collect())
    }

    /// All `2ⁿ` assignments, ⊤ before ⊥ position by position.
    pub fn all(n: usize) -> impl Iterator<Item = TruthAssignment> {
        (0u64..1 << n).map(move |code| {
            TruthAssignment((0..n).map(|i| code >> (n - 1 - i) & 1 == 0).collect())
        })
    }
}

/// A DIMACS-style model line: `1 -2 3`.
impl fmt::Display for TruthAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let v = i + 1;
            if b {
                write!(f, "{v}")?;
            } else {
                write!(f, "-{v}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for TruthAssignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::new();
        for (i, tok) in s.split_whitespace().enumerate() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| Error::MalformedWord(format!("not a literal: {tok:?}")))?;
            if lit.unsigned_abs() as usize != i + 1 {
                return Err(Error::MalformedWord(format!(
                    "expected literal for x{} at position {}, found {lit}",
                    i + 1,
                    i + 1
                )));
            }
            bits.push(lit > 0);
        }
        Ok(TruthAssignment(bits))
    }
}

/// Reads DIMACS CNF: `c` comment lines, one `p cnf n m` header, then
/// zero-terminated clauses that may span lines. A `%` line ends the input.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut pending: Vec<i32> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(err(line, "second problem line".into()));
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["p", "cnf", n, m] => n.parse::<usize>().ok().zip(m.parse::<usize>().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or_else(|| {
                err(line, format!("expected `p cnf <vars> <clauses>`, found {trimmed:?}"))
            })?);
            continue;
        }
        let Some((n, _)) = header else {
            return Err(err(line, "clause before the `p cnf` line".into()));
        };
        for tok in trimmed.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| err(line, format!("not a literal: {tok:?}")))?;
            if lit == 0 {
                if pending.is_empty() {
                    return Err(err(line, "empty clause".into()));
                }
                clauses.push(Clause::new(std::mem::take(&mut pending)).unwrap());
            } else {
                if lit.unsigned_abs() as usize > n {
                    return Err(err(line, format!("literal {lit} outside 1..={n}")));
                }
                pending.push(lit);
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(err(last_line.max(1), "missing `p cnf` line".into()));
    };
    if !pending.is_empty() {
        return Err(err(last_line, "last clause is not terminated by 0".into()));
    }
    if clauses.len() != m {
        return Err(err(
            last_line.max(1),
            format!("header declares {m} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(n, clauses)
}
