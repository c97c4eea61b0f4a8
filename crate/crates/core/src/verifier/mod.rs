//! Brute-force oracles and the machine checks of the gadget claims.

mod decide;
pub mod lemmas;
mod sat;

pub use decide::{decide_feasibility, last_round_witness, Strategy, DEFAULT_SCHEDULE_CAP};
pub use lemmas::{verify_gadget_lemmas, verify_lemma, LemmaBounds, LemmaReport, DEFAULT_LEMMA_CAP, LEMMA_NAMES};
pub use sat::{sat_brute_force, DEFAULT_SAT_LIMIT};

use std::fmt;

use crate::algebra::compose_fold;
use crate::chain::build_chain;
use crate::error::Result;
use crate::gadgets::{key_word, Variant};
use crate::reduction::{
    decode_assignment, drop_tautologies, guard, reduce, witness_schedule, ChainQuestion, CnfFormula,
    FactoredFamily, RoundSpec, TruthAssignment,
};
use crate::shuffle::TypeSchedule;

/// Which schedules an equivalence check searched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// The reduction's whole family.
    Full,
    /// Only schedules whose first two rounds carry the key word and the
    /// guard; the rest of the family is covered by the alignment claims.
    AlignedPrefixes,
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Full => "full",
            Scope::AlignedPrefixes => "aligned-prefixes",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub variant: Variant,
    pub scope: Scope,
    /// First satisfying assignment, if any.
    pub satisfying: Option<TruthAssignment>,
    /// Accepting schedule found by the decider, if any.
    pub witness: Option<TypeSchedule>,
    pub decoded: Option<TruthAssignment>,
    pub passed: bool,
    /// Why the check failed; empty when it passed.
    pub detail: String,
}

/// Variant III's family cut down to key-word first rounds and guarded
/// second rounds: `ẍ \ (qs)^{6n+7}+A^{n+1} \ A^m`.
pub fn aligned_family(n: usize, m: usize) -> FactoredFamily {
    FactoredFamily::new(vec![
        RoundSpec::Fixed(key_word()),
        RoundSpec::Concat(vec![RoundSpec::Fixed(guard(n)), RoundSpec::Free(n + 1)]),
        RoundSpec::Free(m),
    ])
}

/// Checks that the reduced question is feasible exactly when the formula
/// is satisfiable, and that accepting schedules decode to satisfying
/// assignments. Variant III searches only [`aligned_family`]; variant V
/// uses the smallest repetition that fits.
pub fn check_reduction_equivalence(
    variant: Variant,
    formula: &CnfFormula,
    strategy: Strategy,
    cap: u128,
) -> Result<ReductionReport> {
    let satisfying = sat_brute_force(formula, DEFAULT_SAT_LIMIT)?;
    let mut question = reduce(variant, formula, None)?;
    let scope = if variant == Variant::III {
        let reduced = drop_tautologies(formula);
        question = ChainQuestion {
            profile: question.profile,
            family: aligned_family(reduced.num_vars(), reduced.num_clauses()),
        };
        Scope::AlignedPrefixes
    } else {
        Scope::Full
    };
    let witness = decide_feasibility(&question, strategy, cap)?;
    let mut problems = Vec::new();
    if satisfying.is_some() != witness.is_some() {
        problems.push(format!(
            "formula is {}satisfiable but the question is {}feasible",
            if satisfying.is_some() { "" } else { "un" },
            if witness.is_some() { "" } else { "in" },
        ));
    }
    let mut decoded = None;
    if let Some(w) = &witness {
        match decode_assignment(variant, w, formula.num_vars()) {
            Ok(x) => {
                if !formula.satisfied_by(&x) {
                    problems.push(format!("decoded assignment {x} does not satisfy the formula"));
                }
                decoded = Some(x);
            }
            Err(e) => problems.push(e.to_string()),
        }
    }
    if let Some(x) = &satisfying {
        // the schedule the correctness argument names must accept too
        let named = witness_schedule(variant, formula, x, None)?;
        let accepts = build_chain(&compose_fold(&named))
            .expect("nonempty rounds")
            .accepts(&question.profile);
        if !accepts {
            problems.push(format!("named witness {named} rejects the profile"));
        }
    }
    Ok(ReductionReport {
        variant,
        scope,
        satisfying,
        witness,
        decoded,
        passed: problems.is_empty(),
        detail: problems.join("; "),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_variable_clauses() {
        for clauses in [vec![vec![1]], vec![vec![-1]], vec![vec![1], vec![-1]]] {
            let refs: Vec<&[i32]> = clauses.iter().map(Vec::as_slice).collect();
            let f = CnfFormula::from_literals(1, &refs).unwrap();
            for variant in [Variant::I, Variant::II] {
                for strategy in [Strategy::Naive, Strategy::Structured] {
                    let r = check_reduction_equivalence(variant, &f, strategy, 1 << 20).unwrap();
                    assert!(r.passed, "{variant} {strategy} {:?}: {}", refs, r.detail);
                }
            }
        }
    }

    #[test]
    fn positive_unit_clause_witness() {
        let f = CnfFormula::from_literals(1, &[&[1]]).unwrap();
        let q = reduce(Variant::I, &f, None).unwrap();
        let w = decide_feasibility(&q, Strategy::Naive, 16).unwrap().unwrap();
        assert_eq!(w.to_string(), "qqqqss\\qq\\q");
    }
}
