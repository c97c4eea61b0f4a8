//! Chain automata: the DFA `Π(x)` that accepts exactly the change profiles
//! of the decks sortable on the type word `x`.
//!
//! States are `0..=m`, with `0` the start and `m` the non-accepting sink.
//! State `k` corresponds to real pile `k + 1`.

mod arrow;
pub mod sweep;

use std::fmt;
use std::str::FromStr;

use crate::error::{contract, Error, Result};
use crate::perm::{Change, ChangeProfile};
use crate::shuffle::{PileType, TypeWord};

pub use arrow::{verify_arrow, ArrowCase, ArrowReport, Counterexample, EndPredicate};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainAutomaton {
    types: TypeWord,
}

pub fn build_chain(types: &TypeWord) -> Result<ChainAutomaton> {
    if types.is_empty() {
        return Err(contract("a chain needs at least one pile"));
    }
    Ok(ChainAutomaton {
        types: types.clone(),
    })
}

impl ChainAutomaton {
    pub fn types(&self) -> &TypeWord {
        &self.types
    }

    /// Number of non-sink states, `m`.
    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn sink(&self) -> usize {
        self.types.len()
    }

    pub fn state_count(&self) -> usize {
        self.types.len() + 1
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        state < self.sink()
    }

    /// One transition. Queue states hold on `a` and advance on `d`; stack
    /// states do the reverse; the sink holds.
    pub fn step(&self, state: usize, symbol: Change) -> usize {
        match self.types.types().get(state) {
            Some(&t) if t.absorbs() != symbol => state + 1,
            _ => state,
        }
    }

    /// `f_Π(start, word)`.
    pub fn run_word(&self, start: usize, word: &ChangeProfile) -> Result<usize> {
        self.check_state(start)?;
        Ok(word
            .symbols()
            .iter()
            .fold(start, |k, &c| self.step(k, c)))
    }

    pub fn accepts(&self, profile: &ChangeProfile) -> bool {
        self.is_accepting(self.run_word(0, profile).expect("0 is a state"))
    }

    /// Every state visited, starting with `start`.
    pub fn trace(&self, start: usize, word: &ChangeProfile) -> Result<Vec<usize>> {
        self.check_state(start)?;
        let mut states = Vec::with_capacity(word.len() + 1);
        let mut k = start;
        states.push(k);
        for &c in word.symbols() {
            k = self.step(k, c);
            states.push(k);
        }
        Ok(states)
    }

    fn check_state(&self, state: usize) -> Result<()> {
        if state > self.sink() {
            return Err(contract(format!(
                "state {state} outside 0..={}",
                self.sink()
            )));
        }
        Ok(())
    }
}

/// One line per state: `k type on_a on_d accepting`.
impl fmt::Display for ChainAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.types.types().iter().enumerate() {
            let (on_a, on_d) = match t {
                PileType::Queue => (k, k + 1),
                PileType::Stack => (k + 1, k),
            };
            writeln!(f, "{k} {} {on_a} {on_d} accepting", t.as_char())?;
        }
        let sink = self.sink();
        write!(f, "{sink} sink {sink} {sink} rejecting")
    }
}

/// A hierarchical position `k₁\k₂\…` whose flat index is
/// `k₁ + w₁·(k₂ + w₂·(k₃ + …))`, all zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BeatCoordinate(Vec<usize>);

impl BeatCoordinate {
    pub fn new(components: Vec<usize>) -> Self {
        BeatCoordinate(components)
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    pub fn to_flat(&self, widths: &[usize]) -> Result<usize> {
        if self.0.len() != widths.len() {
            return Err(contract(format!(
                "{} components against {} widths",
                self.0.len(),
                widths.len()
            )));
        }
        let mut flat = 0;
        for (&k, &w) in self.0.iter().zip(widths).rev() {
            if k >= w {
                return Err(contract(format!("component {k} outside 0..{w}")));
            }
            flat = flat * w + k;
        }
        Ok(flat)
    }

    pub fn from_flat(mut flat: usize, widths: &[usize]) -> Result<Self> {
        let total: usize = widths.iter().product();
        if flat >= total {
            return Err(contract(format!("state {flat} outside 0..{total}")));
        }
        let mut out = Vec::with_capacity(widths.len());
        for &w in widths {
            out.push(flat % w);
            flat /= w;
        }
        Ok(BeatCoordinate(out))
    }
}

impl fmt::Display for BeatCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("\\")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl FromStr for BeatCoordinate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .split('\\')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::MalformedWord(format!("bad coordinate component {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(BeatCoordinate)
    }
}

/// `beat\measure` for a two-level chain with measure width `beat_width`.
pub fn beat_measure(beat: usize, measure: usize, beat_width: usize) -> usize {
    beat + beat_width * measure
}
