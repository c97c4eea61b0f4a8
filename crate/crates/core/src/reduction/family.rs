//! Factored schedule families: a per-round product of fixed and free words.
//!
//! Text grammar, rounds separated by `\`:
//!
//! ```text
//! family := round ( '\' round )*
//! round  := part ( '+' part )*
//! part   := word | word '^' k | 'A' k | 'A^' k
//! word   := [qs]+
//! ```
//!
//! `A^k` is a free round of width `k`, `word^k` the word repeated `k` times,
//! and `+` concatenates parts within one round (`qsqs+A^2`).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::shuffle::{PileType, TypeSchedule, TypeWord};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RoundSpec {
    Fixed(TypeWord),
    Free(usize),
    Power(TypeWord, usize),
    /// Parts laid side by side within one round.
    Concat(Vec<RoundSpec>),
}

impl RoundSpec {
    pub fn width(&self) -> usize {
        match self {
            RoundSpec::Fixed(w) => w.len(),
            RoundSpec::Free(k) => *k,
            RoundSpec::Power(w, k) => w.len() * k,
            RoundSpec::Concat(parts) => parts.iter().map(RoundSpec::width).sum(),
        }
    }

    /// Number of words, or `None` past `u128`.
    pub fn count(&self) -> Option<u128> {
        match self {
            RoundSpec::Fixed(_) | RoundSpec::Power(..) => Some(1),
            RoundSpec::Free(k) => 1u128.checked_shl(*k as u32).filter(|_| *k < 128),
            RoundSpec::Concat(parts) => parts
                .iter()
                .try_fold(1u128, |acc, p| acc.checked_mul(p.count()?)),
        }
    }

    /// Per position, the forced type or `None` when free.
    pub fn pattern(&self) -> Vec<Option<PileType>> {
        match self {
            RoundSpec::Fixed(w) => w.types().iter().copied().map(Some).collect(),
            RoundSpec::Free(k) => vec![None; *k],
            RoundSpec::Power(w, k) => w.repeat(*k).types().iter().copied().map(Some).collect(),
            RoundSpec::Concat(parts) => parts.iter().flat_map(RoundSpec::pattern).collect(),
        }
    }

    /// The `index`-th word in lexicographic order (`q < s`).
    pub fn word_at(&self, index: u128) -> TypeWord {
        let pattern = self.pattern();
        let free = pattern.iter().filter(|p| p.is_none()).count();
        let mut bit = free;
        pattern
            .into_iter()
            .map(|p| {
                p.unwrap_or_else(|| {
                    bit -= 1;
                    if index >> bit & 1 == 0 {
                        PileType::Queue
                    } else {
                        PileType::Stack
                    }
                })
            })
            .collect()
    }

    pub fn contains(&self, word: &TypeWord) -> bool {
        let pattern = self.pattern();
        pattern.len() == word.len()
            && pattern
                .iter()
                .zip(word.types())
                .all(|(p, t)| p.map_or(true, |p| p == *t))
    }
}

impl fmt::Display for RoundSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoundSpec::Fixed(w) => write!(f, "{w}"),
            RoundSpec::Free(k) => write!(f, "A^{k}"),
            RoundSpec::Power(w, k) => write!(f, "{w}^{k}"),
            RoundSpec::Concat(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_part(text: &str) -> Result<RoundSpec> {
    let bad = || Error::MalformedFamily(format!("cannot read round part {text:?}"));
    let count = |digits: &str| -> Result<usize> {
        match digits.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k),
            _ => Err(bad()),
        }
    };
    if let Some(rest) = text.strip_prefix('A') {
        return Ok(RoundSpec::Free(count(rest.strip_prefix('^').unwrap_or(rest))?));
    }
    let (word, power) = match text.split_once('^') {
        Some((w, k)) => (w, Some(count(k)?)),
        None => (text, None),
    };
    if word.is_empty() {
        return Err(bad());
    }
    let word: TypeWord = word.parse().map_err(|_| bad())?;
    Ok(match power {
        Some(k) => RoundSpec::Power(word, k),
        None => RoundSpec::Fixed(word),
    })
}

impl FromStr for RoundSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .trim()
            .split('+')
            .map(|p| parse_part(p.trim()))
            .collect::<Result<Vec<_>>>()?;
        Ok(if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            RoundSpec::Concat(parts)
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FactoredFamily {
    rounds: Vec<RoundSpec>,
}

impl FactoredFamily {
    pub fn new(rounds: Vec<RoundSpec>) -> Self {
        FactoredFamily { rounds }
    }

    pub fn rounds(&self) -> &[RoundSpec] {
        &self.rounds
    }

    pub fn widths(&self) -> Vec<usize> {
        self.rounds.iter().map(RoundSpec::width).collect()
    }

    /// Number of schedules, or `None` past `u128`.
    pub fn count(&self) -> Option<u128> {
        self.rounds
            .iter()
            .try_fold(1u128, |acc, r| acc.checked_mul(r.count()?))
    }

    /// The `index`-th schedule, rounds compared left to right.
    pub fn schedule_at(&self, mut index: u128) -> TypeSchedule {
        let mut words = Vec::with_capacity(self.rounds.len());
        for r in self.rounds.iter().rev() {
            let c = r.count().expect("enumerated families fit in u128");
            words.push(r.word_at(index % c));
            index /= c;
        }
        words.reverse();
        TypeSchedule::new(words).expect("round widths are positive")
    }

    pub fn contains(&self, schedule: &TypeSchedule) -> bool {
        schedule.len() == self.rounds.len()
            && self
                .rounds
                .iter()
                .zip(schedule.rounds())
                .all(|(r, w)| r.contains(w))
    }
}

impl fmt::Display for FactoredFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rounds.iter().enumerate() {
            if i > 0 {
                f.write_str("\\")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl FromStr for FactoredFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(FactoredFamily::default());
        }
        s.split('\\')
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(FactoredFamily::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let f: FactoredFamily = "qqqqss\\A3\\q".parse().unwrap();
        assert_eq!(f.widths(), vec![6, 3, 1]);
        assert_eq!(f.to_string(), "qqqqss\\A^3\\q");
        assert_eq!(f.count(), Some(8));
        let g: FactoredFamily = "qqqqss^2\\qs^3+A^2\\A^1".parse().unwrap();
        assert_eq!(g.widths(), vec![12, 8, 1]);
        assert_eq!(g.to_string().parse::<FactoredFamily>().unwrap(), g);
        for bad in ["A0", "x", "qq\\\\q", "A^", "^2", "q^0", "q+"] {
            assert!(bad.parse::<FactoredFamily>().is_err(), "{bad}");
        }
    }

    #[test]
    fn enumeration_order_and_membership() {
        let f: FactoredFamily = "q+A^1\\A^2".parse().unwrap();
        let all: Vec<String> = (0..8).map(|i| f.schedule_at(i).to_string()).collect();
        assert_eq!(
            all,
            ["qq\\qq", "qq\\qs", "qq\\sq", "qq\\ss", "qs\\qq", "qs\\qs", "qs\\sq", "qs\\ss"]
        );
        for i in 0..8 {
            assert!(f.contains(&f.schedule_at(i)));
        }
        assert!(!f.contains(&"sq\\qq".parse().unwrap()));
        assert!(!f.contains(&"qq".parse().unwrap()));
    }

    #[test]
    fn huge_counts_do_not_overflow() {
        assert_eq!(RoundSpec::Free(200).count(), None);
        assert_eq!("A^100\\A^100".parse::<FactoredFamily>().unwrap().count(), None);
        assert_eq!(RoundSpec::Free(127).count(), Some(1 << 127));
    }
}
