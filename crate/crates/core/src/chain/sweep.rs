//! Exact arrow checking on two-round families `y\A^W` too large to enumerate.
//!
//! Every measure of `y\Z` is `y` or `dual(y)`, picked by one symbol of `Z`,
//! and a trajectory enters each later measure at beat 0. So the run is a
//! walk over nodes (word position, measure, entry beat) that branches on one
//! symbol of `Z` per measure. What the claim expects is carried along as the
//! state of a small automaton over `Z`, and each node is expanded once.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::algebra::{compose_fold, dual_word};
use crate::chain::{build_chain, ArrowReport, Counterexample, EndPredicate};
use crate::error::{contract, Result};
use crate::perm::{Change, ChangeProfile};
use crate::shuffle::{PileType, TypeSchedule, TypeWord};

/// A claim about `y\Z` that depends on `Z` through a finite automaton read
/// one measure at a time.
pub trait MeasureCondition: Sync {
    fn initial(&self) -> u32;
    fn step(&self, state: u32, measure: usize, symbol: PileType) -> u32;
    /// The claimed end once every measure has been read.
    fn expect(&self, state: u32) -> EndPredicate;
}

/// The same claim for every chain.
pub struct ConstantClaim(pub EndPredicate);

impl MeasureCondition for ConstantClaim {
    fn initial(&self) -> u32 {
        0
    }

    fn step(&self, _: u32, _: usize, _: PileType) -> u32 {
        0
    }

    fn expect(&self, _: u32) -> EndPredicate {
        self.0
    }
}

/// Reads every symbol of `Z` inverted, for chains on `dual(y)`:
/// `dual(y)\Z = y\invert(Z)`.
pub struct Inverted<C>(pub C);

impl<C: MeasureCondition> MeasureCondition for Inverted<C> {
    fn initial(&self) -> u32 {
        self.0.initial()
    }

    fn step(&self, state: u32, measure: usize, symbol: PileType) -> u32 {
        self.0.step(state, measure, symbol.inverted())
    }

    fn expect(&self, state: u32) -> EndPredicate {
        self.0.expect(state)
    }
}

/// Final condition states reachable from a node, with one suffix each.
type Finals = BTreeMap<u32, Vec<PileType>>;

struct Sweep<'a, C> {
    blocks: [Vec<PileType>; 2],
    width: usize,
    measures: usize,
    word: &'a [Change],
    condition: &'a C,
    visited: HashSet<(usize, usize, usize, u32)>,
    reach: HashMap<(u32, usize), Finals>,
    path: Vec<PileType>,
    nodes: u64,
}

struct Failure {
    suffix: Vec<PileType>,
    end: usize,
    expected: EndPredicate,
}

fn block_index(symbol: PileType) -> usize {
    match symbol {
        PileType::Queue => 0,
        PileType::Stack => 1,
    }
}

impl<C: MeasureCondition> Sweep<'_, C> {
    fn finals(&mut self, state: u32, measure: usize) -> Finals {
        if measure >= self.measures {
            return BTreeMap::from([(state, Vec::new())]);
        }
        if let Some(f) = self.reach.get(&(state, measure)) {
            return f.clone();
        }
        let mut out = Finals::new();
        for symbol in [PileType::Queue, PileType::Stack] {
            let next = self.condition.step(state, measure, symbol);
            for (f, tail) in self.finals(next, measure + 1) {
                out.entry(f).or_insert_with(|| {
                    let mut v = Vec::with_capacity(tail.len() + 1);
                    v.push(symbol);
                    v.extend(tail);
                    v
                });
            }
        }
        self.reach.insert((state, measure), out.clone());
        out
    }

    fn check_end(&mut self, end: usize, state: u32, measure: usize) -> Option<Failure> {
        for (f, suffix) in self.finals(state, measure) {
            let expected = self.condition.expect(f);
            if !expected.holds(end) {
                return Some(Failure {
                    suffix,
                    end,
                    expected,
                });
            }
        }
        None
    }

    fn visit(&mut self, pos: usize, measure: usize, beat: usize, state: u32) -> Option<Failure> {
        if !self.visited.insert((pos, measure, beat, state)) {
            return None;
        }
        self.nodes += 1;
        if measure >= self.measures {
            return self.check_end(self.width * self.measures, state, measure);
        }
        if pos == self.word.len() {
            return self.check_end(beat + self.width * measure, state, measure);
        }
        for symbol in [PileType::Queue, PileType::Stack] {
            let next_state = self.condition.step(state, measure, symbol);
            let block = &self.blocks[block_index(symbol)];
            let mut b = beat;
            let mut i = pos;
            while i < self.word.len() && b < self.width {
                if block[b].absorbs() != self.word[i] {
                    b += 1;
                }
                i += 1;
            }
            self.path.push(symbol);
            let failure = if b == self.width {
                self.visit(i, measure + 1, 0, next_state)
            } else {
                self.check_end(b + self.width * measure, next_state, measure + 1)
            };
            if failure.is_some() {
                return failure;
            }
            self.path.pop();
        }
        None
    }
}

/// Summary of one sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub report: ArrowReport,
    /// Distinct trajectory nodes expanded.
    pub nodes: u64,
}

/// Checks `word` from `start` on every chain `y\Z`, `Z ∈ {q,s}^measures`,
/// against `condition`.
pub fn sweep_arrow<C: MeasureCondition>(
    y: &TypeWord,
    measures: usize,
    word: &ChangeProfile,
    start: usize,
    condition: &C,
    label: &str,
) -> Result<SweepReport> {
    let width = y.len();
    if width == 0 || measures == 0 {
        return Err(contract("sweeps need a nonempty measure word and at least one measure"));
    }
    if start > width * measures {
        return Err(contract(format!(
            "start {start} outside 0..={}",
            width * measures
        )));
    }
    let mut sweep = Sweep {
        blocks: [y.types().to_vec(), dual_word(y).types().to_vec()],
        width,
        measures,
        word: word.symbols(),
        condition,
        visited: HashSet::new(),
        reach: HashMap::new(),
        path: Vec::new(),
        nodes: 0,
    };
    let (start_beat, start_measure) = (start % width, start / width);

    // condition states after the measures before the start, one prefix each
    let mut prefixes: BTreeMap<u32, Vec<PileType>> =
        BTreeMap::from([(condition.initial(), Vec::new())]);
    for k in 0..start_measure.min(measures) {
        let mut next = BTreeMap::new();
        for (state, prefix) in &prefixes {
            for symbol in [PileType::Queue, PileType::Stack] {
                next.entry(condition.step(*state, k, symbol))
                    .or_insert_with(|| {
                        let mut p = prefix.clone();
                        p.push(symbol);
                        p
                    });
            }
        }
        prefixes = next;
    }

    let mut failure = None;
    for (state, prefix) in &prefixes {
        sweep.path.clear();
        if let Some(f) = sweep.visit(0, start_measure, start_beat, *state) {
            failure = Some((prefix.clone(), f));
            break;
        }
    }

    let counterexample = failure.map(|(prefix, f)| {
        let mut z = prefix;
        z.extend(sweep.path.iter().copied());
        z.extend(f.suffix);
        let schedule = TypeSchedule::new(vec![y.clone(), TypeWord::new(z)])
            .expect("both rounds are nonempty");
        let chain = build_chain(&compose_fold(&schedule)).expect("nonempty");
        let trace = chain.trace(start, word).expect("start is a state");
        debug_assert_eq!(*trace.last().unwrap(), f.end);
        Counterexample {
            schedule,
            start,
            end: f.end,
            expected: f.expected,
            label: label.to_string(),
            trace,
        }
    });

    Ok(SweepReport {
        report: ArrowReport {
            cases: claimed_chains(condition, measures),
            counterexample,
        },
        nodes: sweep.nodes,
    })
}

/// How many `Z` the condition makes a claim about.
fn claimed_chains<C: MeasureCondition>(condition: &C, measures: usize) -> u128 {
    let mut counts: BTreeMap<u32, u128> = BTreeMap::from([(condition.initial(), 1)]);
    for k in 0..measures {
        let mut next = BTreeMap::new();
        for (&state, &n) in &counts {
            for symbol in [PileType::Queue, PileType::Stack] {
                let e = next.entry(condition.step(state, k, symbol)).or_insert(0u128);
                *e = e.saturating_add(n);
            }
        }
        counts = next;
    }
    counts
        .into_iter()
        .filter(|&(s, _)| condition.expect(s).is_claimed())
        .fold(0u128, |acc, (_, n)| acc.saturating_add(n))
}
