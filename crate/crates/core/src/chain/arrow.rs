//! Exhaustive checking of arrow claims `W ∈ k₁ → k₂` / `W ∈ k₁ → ≥k₂` over
//! every chain of a factored family.

use std::fmt;

use rayon::prelude::*;

use crate::algebra::compose_fold;
use crate::chain::build_chain;
use crate::error::{Error, Result};
use crate::perm::ChangeProfile;
use crate::reduction::FactoredFamily;
use crate::shuffle::TypeSchedule;

/// Where a trajectory is claimed to end, as a flat state index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EndPredicate {
    Exactly(usize),
    AtLeast(usize),
    /// The claim says nothing about this case.
    Unclaimed,
}

impl EndPredicate {
    pub fn holds(self, end: usize) -> bool {
        match self {
            EndPredicate::Exactly(k) => end == k,
            EndPredicate::AtLeast(k) => end >= k,
            EndPredicate::Unclaimed => true,
        }
    }

    pub fn is_claimed(self) -> bool {
        self != EndPredicate::Unclaimed
    }
}

impl fmt::Display for EndPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndPredicate::Exactly(k) => write!(f, "={k}"),
            EndPredicate::AtLeast(k) => write!(f, ">={k}"),
            EndPredicate::Unclaimed => f.write_str("unclaimed"),
        }
    }
}

/// One start state and its claimed end, for one chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowCase {
    pub start: usize,
    pub expected: EndPredicate,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub schedule: TypeSchedule,
    pub start: usize,
    pub end: usize,
    pub expected: EndPredicate,
    pub label: String,
    /// States visited from `start`, one per word symbol plus the start.
    pub trace: Vec<usize>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] chain {} from {} ended at {}, expected {}",
            self.label, self.schedule, self.start, self.end, self.expected
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowReport {
    /// Claimed (chain, start) pairs checked.
    pub cases: u128,
    pub counterexample: Option<Counterexample>,
}

impl ArrowReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Runs `word` on every chain of `family` from every start `claims` lists
/// for it. Refuses outright when the family has more than `cap` chains.
pub fn verify_arrow<F>(
    family: &FactoredFamily,
    word: &ChangeProfile,
    claims: F,
    cap: u128,
) -> Result<ArrowReport>
where
    F: Fn(&TypeSchedule) -> Vec<ArrowCase> + Sync,
{
    let total = family.count();
    match total {
        Some(t) if t <= cap => {}
        _ => {
            return Err(Error::CapExceeded {
                required: total.unwrap_or(u128::MAX),
                cap,
            })
        }
    }
    let total = total.unwrap();
    let (cases, counterexample) = (0..total as u64)
        .into_par_iter()
        .map(|i| {
            let schedule = family.schedule_at(i as u128);
            let chain = build_chain(&compose_fold(&schedule)).expect("family rounds are nonempty");
            let mut cases = 0u128;
            for case in claims(&schedule) {
                if !case.expected.is_claimed() {
                    continue;
                }
                cases += 1;
                let end = chain
                    .run_word(case.start, word)
                    .expect("claimed start is a chain state");
                if !case.expected.holds(end) {
                    return (
                        cases,
                        Some(Counterexample {
                            trace: chain.trace(case.start, word).unwrap(),
                            schedule,
                            start: case.start,
                            end,
                            expected: case.expected,
                            label: case.label,
                        }),
                    );
                }
            }
            (cases, None)
        })
        .reduce(|| (0, None), |a, b| (a.0 + b.0, a.1.or(b.1)));
    Ok(ArrowReport {
        cases,
        counterexample,
    })
}
