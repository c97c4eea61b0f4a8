//! SAT instances in, sort-feasibility questions out, and back again.

mod cnf;
mod family;

use std::fmt;
use std::str::FromStr;

pub use cnf::{parse_dimacs, Clause, CnfFormula, TruthAssignment};
pub use family::{FactoredFamily, RoundSpec};

use crate::algebra::{dual_word, invert_word};
use crate::error::{contract, Error, Result};
use crate::gadgets::{build_formula, extract_assignment, key_word, Variant};
use crate::perm::{change_profile, parse_permutation, realize_permutation, ChangeProfile, Convention, Permutation};
use crate::shuffle::{PileType, TypeSchedule, TypeWord};

/// Is there a schedule in `family` whose chain accepts `profile`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainQuestion {
    pub profile: ChangeProfile,
    pub family: FactoredFamily,
}

/// Is there a schedule in `family` that sorts `permutation`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortQuestion {
    pub permutation: Permutation,
    pub family: FactoredFamily,
}

/// `family <spec>` then `profile <word>`.
impl fmt::Display for ChainQuestion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family {}", self.family)?;
        write!(f, "profile {}", self.profile)
    }
}

/// `family <spec>` then `perm <images>` (embedding convention).
impl fmt::Display for SortQuestion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family {}", self.family)?;
        write!(f, "perm {}", self.permutation)
    }
}

fn keyed_lines<'a>(text: &'a str, keys: [&str; 2]) -> Result<[&'a str; 2]> {
    let mut found: [Option<&str>; 2] = [None, None];
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let slot = keys.iter().position(|k| *k == key).ok_or(Error::Parse {
            line: idx + 1,
            message: format!("unexpected key {key:?}"),
        })?;
        if found[slot].replace(value.trim()).is_some() {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("repeated key {key:?}"),
            });
        }
    }
    match found {
        [Some(a), Some(b)] => Ok([a, b]),
        _ => Err(Error::Parse {
            line: text.lines().count().max(1),
            message: format!("need both `{}` and `{}` lines", keys[0], keys[1]),
        }),
    }
}

impl FromStr for ChainQuestion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let [family, profile] = keyed_lines(s, ["family", "profile"])?;
        Ok(ChainQuestion {
            family: family.parse()?,
            profile: profile.parse()?,
        })
    }
}

impl FromStr for SortQuestion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let [family, perm] = keyed_lines(s, ["family", "perm"])?;
        Ok(SortQuestion {
            family: family.parse()?,
            permutation: parse_permutation(perm, Convention::Embedding)?,
        })
    }
}

/// Drops clauses containing both `xᵢ` and `¬xᵢ`. If nothing is left the
/// formula was valid, and `(x₁)` stands in for it.
pub fn drop_tautologies(formula: &CnfFormula) -> CnfFormula {
    let kept: Vec<Clause> = formula
        .clauses()
        .iter()
        .filter(|c| !c.is_tautology())
        .cloned()
        .collect();
    if kept.is_empty() && formula.num_clauses() > 0 {
        let one = Clause::new(vec![1]).expect("nonempty");
        return CnfFormula::new(formula.num_vars().max(1), vec![one]).expect("in range");
    }
    CnfFormula::new(formula.num_vars(), kept).expect("subset of a valid formula")
}

/// Smallest `k` whose `6k`-wide rounds fit the formula.
pub fn minimal_repetition(formula: &CnfFormula) -> usize {
    let by_vars = (formula.num_vars() + 2).div_ceil(6);
    let by_clauses = formula.num_clauses().div_ceil(6);
    by_vars.max(by_clauses).max(1)
}

/// Pads to `6k − 2` variables with unused dummies and to `6k` clauses by
/// repeating clauses cyclically. Satisfiability is unchanged.
pub fn pad_for_repetition(formula: &CnfFormula, k: usize) -> Result<CnfFormula> {
    let (n, m) = (formula.num_vars(), formula.num_clauses());
    if k == 0 || n + 2 > 6 * k || m > 6 * k || m == 0 {
        return Err(contract(format!(
            "{n} variables and {m} clauses do not fit rounds of width {}",
            6 * k
        )));
    }
    let clauses = (0..6 * k)
        .map(|j| formula.clauses()[j % m].clone())
        .collect();
    CnfFormula::new(6 * k - 2, clauses)
}

fn check_reducible(formula: &CnfFormula) -> Result<()> {
    if formula.num_vars() == 0 || formula.num_clauses() == 0 {
        return Err(contract("reductions need n >= 1 variables and m >= 1 clauses"));
    }
    Ok(())
}

/// Builds the chain question of one reduction. `k` picks the repetition
/// for variant V (`None` for the smallest that fits) and is ignored otherwise.
pub fn reduce(variant: Variant, formula: &CnfFormula, k: Option<usize>) -> Result<ChainQuestion> {
    check_reducible(formula)?;
    let formula = drop_tautologies(formula);
    let (n, m) = (formula.num_vars(), formula.num_clauses());
    let key = RoundSpec::Fixed(key_word());
    Ok(match variant {
        Variant::I => ChainQuestion {
            profile: build_formula(Variant::I, &formula, 1)?,
            family: FactoredFamily::new(vec![
                key,
                RoundSpec::Free(n + 1),
                RoundSpec::Fixed(TypeWord::queues(m)),
            ]),
        },
        Variant::II => ChainQuestion {
            profile: build_formula(Variant::II, &formula, 1)?,
            family: FactoredFamily::new(vec![key, RoundSpec::Free(n + 2), RoundSpec::Free(m)]),
        },
        Variant::III => ChainQuestion {
            profile: build_formula(Variant::III, &formula, 1)?,
            family: FactoredFamily::new(vec![
                RoundSpec::Free(6),
                RoundSpec::Free(13 * n + 15),
                RoundSpec::Free(m),
            ]),
        },
        Variant::V => {
            let k = k.unwrap_or_else(|| minimal_repetition(&formula));
            let padded = pad_for_repetition(&formula, k)?;
            ChainQuestion {
                profile: build_formula(Variant::V, &padded, k)?,
                family: FactoredFamily::new(vec![
                    RoundSpec::Power(key_word(), k),
                    RoundSpec::Free(6 * k),
                    RoundSpec::Free(6 * k),
                ]),
            }
        }
    })
}

pub fn reduce_to_sort(question: &ChainQuestion) -> SortQuestion {
    SortQuestion {
        permutation: realize_permutation(&question.profile),
        family: question.family.clone(),
    }
}

/// The chain question a sort question is equivalent to.
pub fn sort_to_chain(question: &SortQuestion) -> ChainQuestion {
    ChainQuestion {
        profile: change_profile(&question.permutation),
        family: question.family.clone(),
    }
}

/// The guard `(qs)^{6n+7}` in front of each payload of variant III.
pub fn guard(n: usize) -> TypeWord {
    "qs".parse::<TypeWord>().expect("constant").repeat(6 * n + 7)
}

/// Reads the assignment back out of an accepting three-round schedule for
/// a formula on `n` variables.
pub fn decode_assignment(variant: Variant, witness: &TypeSchedule, n: usize) -> Result<TruthAssignment> {
    let fail = |why: &str| Error::Decode(format!("{why} in {witness}"));
    let [y, a, b] = witness.rounds() else {
        return Err(fail("expected three rounds"));
    };
    let (mut y, mut a, mut b) = (y.clone(), a.clone(), b.clone());
    if variant == Variant::III && y == dual_word(&key_word()) {
        y = key_word();
        a = invert_word(&a);
    }
    if variant != Variant::I && b.types().first() == Some(&PileType::Stack) {
        a = dual_word(&a);
        b = invert_word(&b);
    }
    let key = match variant {
        Variant::V => key_word().repeat(y.len() / 6),
        _ => key_word(),
    };
    if y.is_empty() || y != key {
        return Err(fail("first round is not the key word"));
    }
    if b != TypeWord::queues(b.len()) {
        return Err(fail("last round is not all queues"));
    }
    let body: &[PileType] = match variant {
        Variant::I => a.types(),
        Variant::II | Variant::V => a.types().strip_prefix(&[PileType::Queue][..]).ok_or_else(|| fail("payload does not open with q"))?,
        Variant::III => a
            .types()
            .strip_prefix(guard(n).types())
            .ok_or_else(|| fail("payload does not open with the guard"))?,
    };
    let payload = body
        .strip_suffix(&[PileType::Queue][..])
        .ok_or_else(|| fail("payload does not close with q"))?;
    let expected = match variant {
        Variant::V => a.len() - 2,
        _ => n,
    };
    if payload.len() != expected || payload.len() < n {
        return Err(fail("payload has the wrong width"));
    }
    Ok(extract_assignment(&TypeWord::new(payload[..n].to_vec())))
}

/// The schedule the reductions' correctness argument says accepts the
/// formula profile under assignment `x`.
pub fn witness_schedule(variant: Variant, formula: &CnfFormula, x: &TruthAssignment, k: Option<usize>) -> Result<TypeSchedule> {
    check_reducible(formula)?;
    let formula = drop_tautologies(formula);
    let psi = crate::gadgets::embed_assignment(x);
    let q = TypeWord::queues(1);
    let m = formula.num_clauses();
    let rounds = match variant {
        Variant::I => vec![key_word(), psi.concat(&q), TypeWord::queues(m)],
        Variant::II => vec![key_word(), q.concat(&psi).concat(&q), TypeWord::queues(m)],
        Variant::III => vec![
            key_word(),
            guard(formula.num_vars()).concat(&psi).concat(&q),
            TypeWord::queues(m),
        ],
        Variant::V => {
            let k = k.unwrap_or_else(|| minimal_repetition(&formula));
            let pad = TypeWord::queues((6 * k - 2).saturating_sub(psi.len()));
            vec![
                key_word().repeat(k),
                q.concat(&psi).concat(&pad).concat(&q),
                TypeWord::queues(6 * k),
            ]
        }
    };
    TypeSchedule::new(rounds)
}
