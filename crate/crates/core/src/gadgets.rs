//! The fixed gadget words and the profiles built from them.
//!
//! Every gadget is designed against chains whose first round is the key
//! word `ẍ = qqqqss`, so the composed chain is a sequence of six-beat
//! measures, one per pile of the second round.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{contract, Error, Result};
use crate::perm::{Change, ChangeProfile};
use crate::reduction::{Clause, CnfFormula};
use crate::shuffle::{PileType, TypeWord};

pub use crate::reduction::TruthAssignment;

/// Beat aliases within a six-beat measure.
pub mod beat {
    pub const START: usize = 0;
    pub const CHAIN_DISQ: usize = 1;
    pub const ACTIVATED: usize = 2;
    pub const NOT_ACTIVATED: usize = 3;
    pub const CLAUSE_DISQ: usize = 5;
    pub const END: usize = 5;
    pub const WIDTH: usize = 6;
}

pub const KEY_WORD: &str = "qqqqss";

pub const START_CLAUSE: &str = "daaaadda";
pub const POS: &str = "aaddddadaaadad";
pub const NEG: &str = "daddddadaaadad";
pub const DK: &str = "adadddadaaadad";
pub const END_POS: &str = "aaddddaddddaaaaddaaaadddda";
pub const END_NEG: &str = "daddddaddddadaaadaaaadaaaadddda";
pub const END_DK: &str = "daaddddaddddaaaaddaaaadddda";
pub const NEXT: &str = "a";
pub const FORCE_Q: &str = "dadaaaadaaaaddddaaaa";
pub const PASS: &str = "daaaadadadadddda";

/// Run-length form of `align`.
pub const ALIGN_RUNS: &[(char, usize)] = &[
    ('a', 24),
    ('d', 1),
    ('a', 18),
    ('d', 1),
    ('a', 18),
    ('d', 1),
    ('a', 18),
    ('d', 21),
    ('a', 1),
    ('d', 5),
    ('a', 17),
    ('d', 1),
    ('a', 5),
    ('d', 11),
    ('a', 1),
    ('d', 5),
    ('a', 1),
    ('d', 4),
    ('a', 1),
    ('d', 4),
    ('a', 4),
];

pub fn key_word() -> TypeWord {
    KEY_WORD.parse().expect("constant")
}

pub fn align() -> &'static ChangeProfile {
    static ALIGN: OnceLock<ChangeProfile> = OnceLock::new();
    ALIGN.get_or_init(|| {
        let mut out = Vec::new();
        for &(c, k) in ALIGN_RUNS {
            let symbol = if c == 'a' {
                Change::Ascent
            } else {
                Change::Descent
            };
            out.extend(std::iter::repeat(symbol).take(k));
        }
        ChangeProfile::new(out)
    })
}

fn word(text: &str) -> ChangeProfile {
    text.parse().expect("constant")
}

/// Lexicon lookup by the names the CLI accepts.
pub fn gadget(name: &str) -> Option<ChangeProfile> {
    Some(match name {
        "start-clause" | "start" => word(START_CLAUSE),
        "pos" => word(POS),
        "neg" => word(NEG),
        "dk" => word(DK),
        "endpos" => word(END_POS),
        "endneg" => word(END_NEG),
        "enddk" => word(END_DK),
        "next" => word(NEXT),
        "force-q" => word(FORCE_Q),
        "align" => align().clone(),
        "pass" => word(PASS),
        _ => return None,
    })
}

pub const GADGET_NAMES: &[&str] = &[
    "start-clause",
    "pos",
    "neg",
    "dk",
    "endpos",
    "endneg",
    "enddk",
    "next",
    "force-q",
    "align",
    "pass",
];

/// `Ψ`: ⊤ ↦ q, ⊥ ↦ s.
pub fn embed_assignment(x: &TruthAssignment) -> TypeWord {
    x.bits()
        .iter()
        .map(|&b| if b { PileType::Queue } else { PileType::Stack })
        .collect()
}

/// `Ψ⁻¹`.
pub fn extract_assignment(w: &TypeWord) -> TruthAssignment {
    TruthAssignment::new(w.types().iter().map(|&t| t == PileType::Queue).collect())
}

/// The test word for one variable of a clause.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Test {
    Pos,
    Neg,
    DontCare,
}

impl Test {
    /// Positive membership is checked first.
    pub fn of(clause: &Clause, var: usize) -> Test {
        if clause.has_positive(var) {
            Test::Pos
        } else if clause.has_negative(var) {
            Test::Neg
        } else {
            Test::DontCare
        }
    }

    pub fn word(self) -> ChangeProfile {
        word(match self {
            Test::Pos => POS,
            Test::Neg => NEG,
            Test::DontCare => DK,
        })
    }

    pub fn end_word(self) -> ChangeProfile {
        word(match self {
            Test::Pos => END_POS,
            Test::Neg => END_NEG,
            Test::DontCare => END_DK,
        })
    }
}

/// `start-clause · test₁ … test_{n−1} · endtest_n`, with `k − 1` extra
/// repetitions of `dk` before each test and of `pass` after the end test.
fn clause_word_repeated(clause: &Clause, n: usize, k: usize) -> Result<ChangeProfile> {
    if n == 0 {
        return Err(contract("clauses need at least one variable"));
    }
    if clause.max_variable() > n {
        return Err(contract(format!(
            "clause {clause} mentions a variable beyond x{n}"
        )));
    }
    let pad = word(DK).repeat(k - 1);
    let mut out = word(START_CLAUSE);
    for var in 1..n {
        out.push_word(&pad);
        out.push_word(&Test::of(clause, var).word());
    }
    out.push_word(&pad);
    out.push_word(&Test::of(clause, n).end_word());
    out.push_word(&word(PASS).repeat(k - 1));
    Ok(out)
}

pub fn clause_word(clause: &Clause, n: usize) -> Result<ChangeProfile> {
    clause_word_repeated(clause, n, 1)
}

/// Which reduction a formula profile is built for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    I,
    II,
    III,
    V,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::I => "I",
            Variant::II => "II",
            Variant::III => "III",
            Variant::V => "V",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(Variant::I),
            "II" | "2" => Ok(Variant::II),
            "III" | "3" => Ok(Variant::III),
            "V" | "5" => Ok(Variant::V),
            other => Err(Error::MalformedWord(format!("unknown variant {other:?}"))),
        }
    }
}

/// The profile a formula is embedded as. `k` only matters for variant V.
pub fn build_formula(variant: Variant, formula: &CnfFormula, k: usize) -> Result<ChangeProfile> {
    if formula.num_clauses() == 0 {
        return Err(contract("formula has no clauses"));
    }
    if variant == Variant::V && k == 0 {
        return Err(contract("variant V needs k >= 1"));
    }
    let n = formula.num_vars();
    let k = if variant == Variant::V { k } else { 1 };
    let prefix = match variant {
        Variant::I => ChangeProfile::default(),
        Variant::II => word(FORCE_Q),
        Variant::III => align().repeat(6 * n + 7),
        Variant::V => {
            let mut p = word(FORCE_Q);
            p.push_word(&word(PASS).repeat(k - 1));
            p
        }
    };
    let mut out = ChangeProfile::default();
    for (j, clause) in formula.clauses().iter().enumerate() {
        if j > 0 {
            out.push_word(&word(NEXT));
        }
        out.push_word(&prefix);
        out.push_word(&clause_word_repeated(clause, n, k)?);
    }
    Ok(out)
}
