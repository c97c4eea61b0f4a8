//! Deck orders and their change profiles.
//!
//! A deck of `n` labelled cards is a [`Permutation`] in the *embedding*
//! convention: label `s` sits at position `π(s)`. The more common one-line
//! *sequence* convention (the label found at each position) is the inverse,
//! and is accepted by [`parse_permutation`] with [`Convention::Sequence`].
//!
//! All public indices here are 1-based.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `[n]` in the embedding convention.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    /// `images[s - 1] = π(s)`, 1-based values.
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its images `π(1), …, π(n)`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n {
                return Err(Error::MalformedPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::MalformedPermutation(format!("duplicate value {v}")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `π(s)` for a 1-based label `s`.
    pub fn image(&self, label: usize) -> usize {
        self.images[label - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Labels in deck order, top first (the sequence convention `π⁻¹`).
    pub fn deck_order(&self) -> Vec<usize> {
        self.inverse().images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Every permutation of `[n]` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.images {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// How a textual permutation should be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// The text lists `π(1) … π(n)`.
    Embedding,
    /// The text lists the deck top to bottom, i.e. `π⁻¹`.
    Sequence,
}

/// Parses whitespace-separated labels. A single token made only of digits,
/// with at most nine of them, is read one digit per label (`456123`).
pub fn parse_permutation(text: &str, convention: Convention) -> Result<Permutation> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let values: Vec<usize> = if tokens.len() == 1
        && tokens[0].len() > 1
        && tokens[0].len() <= 9
        && tokens[0].bytes().all(|b| b.is_ascii_digit())
    {
        tokens[0].bytes().map(|b| (b - b'0') as usize).collect()
    } else {
        tokens
            .iter()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::MalformedPermutation(format!("not a label: {t:?}")))
            })
            .collect::<Result<_>>()?
    };
    let perm = Permutation::from_images(values)?;
    Ok(match convention {
        Convention::Embedding => perm,
        Convention::Sequence => perm.inverse(),
    })
}

/// One symbol of a change profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Change {
    Ascent,
    Descent,
}

impl Change {
    pub fn swapped(self) -> Change {
        match self {
            Change::Ascent => Change::Descent,
            Change::Descent => Change::Ascent,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Change::Ascent => 'a',
            Change::Descent => 'd',
        }
    }
}

/// A word over `{a, d}`: ascents and descents of consecutive images.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChangeProfile(Vec<Change>);

impl ChangeProfile {
    pub fn new(symbols: Vec<Change>) -> Self {
        ChangeProfile(symbols)
    }

    pub fn symbols(&self) -> &[Change] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push_word(&mut self, other: &ChangeProfile) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a ChangeProfile>) -> ChangeProfile {
        let mut out = ChangeProfile::default();
        for p in parts {
            out.push_word(p);
        }
        out
    }

    pub fn repeat(&self, times: usize) -> ChangeProfile {
        ChangeProfile(self.0.repeat(times))
    }

    /// All profiles of length `len`, in lexicographic order (`a < d`).
    pub fn all_of_length(len: usize) -> impl Iterator<Item = ChangeProfile> {
        (0u64..1 << len).map(move |bits| {
            ChangeProfile(
                (0..len)
                    .map(|i| {
                        if bits >> (len - 1 - i) & 1 == 0 {
                            Change::Ascent
                        } else {
                            Change::Descent
                        }
                    })
                    .collect(),
            )
        })
    }
}

impl FromStr for ChangeProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                'a' => Ok(Change::Ascent),
                'd' => Ok(Change::Descent),
                other => Err(Error::MalformedWord(format!(
                    "profile symbol {other:?} is not 'a' or 'd'"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(ChangeProfile)
    }
}

impl fmt::Display for ChangeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{}", c.as_char())?;
        }
        Ok(())
    }
}

/// `δ(s) = a` iff `π(s+1) > π(s)`.
pub fn change_profile(perm: &Permutation) -> ChangeProfile {
    ChangeProfile(
        perm.images
            .windows(2)
            .map(|w| {
                if w[1] > w[0] {
                    Change::Ascent
                } else {
                    Change::Descent
                }
            })
            .collect(),
    )
}

/// A canonical permutation whose change profile is `profile`: the identity
/// with every maximal run of descents reversed in place.
pub fn realize_permutation(profile: &ChangeProfile) -> Permutation {
    let n = profile.len() + 1;
    let mut images: Vec<usize> = (1..=n).collect();
    let symbols = profile.symbols();
    let mut s = 0;
    while s < symbols.len() {
        if symbols[s] == Change::Descent {
            let start = s;
            while s < symbols.len() && symbols[s] == Change::Descent {
                s += 1;
            }
            images[start..=s].reverse();
        } else {
            s += 1;
        }
    }
    Permutation { images }
}
