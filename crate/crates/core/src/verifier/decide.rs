//! Deciding whether some schedule of a factored family accepts a profile.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::algebra::{compose_fold, dual_word};
use crate::chain::build_chain;
use crate::error::{Error, Result};
use crate::perm::ChangeProfile;
use crate::reduction::{ChainQuestion, FactoredFamily, RoundSpec};
use crate::shuffle::{PileType, TypeSchedule, TypeWord};

pub const DEFAULT_SCHEDULE_CAP: u128 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Try every schedule.
    Naive,
    /// Try every choice of the earlier rounds and solve the last round with
    /// a reachability table over its piles.
    Structured,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Naive => "naive",
            Strategy::Structured => "structured",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Strategy::Naive),
            "structured" => Ok(Strategy::Structured),
            other => Err(Error::MalformedWord(format!("unknown strategy {other:?}"))),
        }
    }
}

fn refuse(required: Option<u128>, cap: u128) -> Error {
    Error::CapExceeded {
        required: required.unwrap_or(u128::MAX),
        cap,
    }
}

/// A schedule of the question's family whose chain accepts its profile.
/// Refuses when more than `cap` cases would have to be enumerated.
pub fn decide_feasibility(
    question: &ChainQuestion,
    strategy: Strategy,
    cap: u128,
) -> Result<Option<TypeSchedule>> {
    match strategy {
        Strategy::Naive => decide_naive(&question.family, &question.profile, cap),
        Strategy::Structured => decide_structured(&question.family, &question.profile, cap),
    }
}

fn decide_naive(
    family: &FactoredFamily,
    profile: &ChangeProfile,
    cap: u128,
) -> Result<Option<TypeSchedule>> {
    let total = match family.count() {
        Some(t) if t <= cap => t,
        other => return Err(refuse(other, cap)),
    };
    let found = (0..total as u64).into_par_iter().find_first(|&i| {
        let schedule = family.schedule_at(i as u128);
        build_chain(&compose_fold(&schedule))
            .expect("nonempty rounds")
            .accepts(profile)
    });
    Ok(found.map(|i| family.schedule_at(i as u128)))
}

fn decide_structured(
    family: &FactoredFamily,
    profile: &ChangeProfile,
    cap: u128,
) -> Result<Option<TypeSchedule>> {
    let Some((last, earlier)) = family.rounds().split_last() else {
        return decide_naive(family, profile, cap);
    };
    let prefixes = FactoredFamily::new(earlier.to_vec());
    let total = match prefixes.count() {
        Some(t) if t <= cap => t,
        other => return Err(refuse(other, cap)),
    };
    let found = (0..total as u64).into_par_iter().find_map_first(|i| {
        let prefix = prefixes.schedule_at(i as u128);
        let phrase = compose_fold(&prefix);
        last_round_witness(&phrase, last, profile).map(|w| {
            let mut rounds = prefix.rounds().to_vec();
            rounds.push(w);
            TypeSchedule::new(rounds).expect("nonempty rounds")
        })
    });
    Ok(found)
}

/// A last-round word `z` allowed by `spec` with `phrase\z` accepting
/// `profile`, if any.
///
/// Each pile of the last round contributes one phrase, `phrase` or its
/// dual, and a trajectory enters every phrase after the first at its first
/// state. So it is enough to track which profile positions a trajectory
/// can be at when it enters each phrase.
pub fn last_round_witness(
    phrase: &TypeWord,
    spec: &RoundSpec,
    profile: &ChangeProfile,
) -> Option<TypeWord> {
    let pattern = spec.pattern();
    let blocks = [phrase.types().to_vec(), dual_word(phrase).types().to_vec()];
    let word = profile.symbols();
    let width = phrase.len();
    // entry position -> (previous entry position, symbol chosen there)
    let mut parents: Vec<BTreeMap<usize, Option<(usize, PileType)>>> = Vec::with_capacity(pattern.len());
    let mut layer: BTreeMap<usize, Option<(usize, PileType)>> = BTreeMap::from([(0, None)]);
    for (j, allowed) in pattern.iter().enumerate() {
        let choices: &[PileType] = match allowed {
            Some(PileType::Queue) => &[PileType::Queue],
            Some(PileType::Stack) => &[PileType::Stack],
            None => &[PileType::Queue, PileType::Stack],
        };
        let mut next = BTreeMap::new();
        let mut accepted: Option<(usize, PileType)> = None;
        'entries: for &pos in layer.keys() {
            for &symbol in choices {
                if pos == word.len() {
                    accepted = Some((pos, symbol));
                    break 'entries;
                }
                let block = &blocks[usize::from(symbol == PileType::Stack)];
                let (mut b, mut i) = (0, pos);
                while i < word.len() && b < width {
                    if block[b].absorbs() != word[i] {
                        b += 1;
                    }
                    i += 1;
                }
                if b < width {
                    accepted = Some((pos, symbol));
                    break 'entries;
                }
                next.entry(i).or_insert(Some((pos, symbol)));
            }
        }
        parents.push(std::mem::take(&mut layer));
        if let Some((pos, symbol)) = accepted {
            let mut z = vec![PileType::Queue; pattern.len()];
            z[j] = symbol;
            for (k, p) in pattern.iter().enumerate().skip(j + 1) {
                z[k] = p.unwrap_or(PileType::Queue);
            }
            let mut at = pos;
            for k in (0..j).rev() {
                let (prev, sym) = parents[k + 1][&at].expect("entries after the first have parents");
                z[k] = sym;
                at = prev;
            }
            return Some(TypeWord::new(z));
        }
        layer = next;
    }
    None
}
