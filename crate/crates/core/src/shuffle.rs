//! Single- and multi-round pile shuffles.
//!
//! Cards are dealt in deck order onto piles chosen by a [`PileAssignment`]
//! (1-based pile indices here), then the piles are picked up whole in index
//! order. A queue returns its cards in the order dealt, a stack reverses them.

use std::fmt;
use std::str::FromStr;

use crate::error::{contract, Error, Result};
use crate::perm::{change_profile, Change, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PileType {
    Queue,
    Stack,
}

impl PileType {
    pub fn inverted(self) -> PileType {
        match self {
            PileType::Queue => PileType::Stack,
            PileType::Stack => PileType::Queue,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PileType::Queue => 'q',
            PileType::Stack => 's',
        }
    }

    /// The profile symbol a pile of this type absorbs without advancing.
    pub fn absorbs(self) -> Change {
        match self {
            PileType::Queue => Change::Ascent,
            PileType::Stack => Change::Descent,
        }
    }

    /// `a ≺_x b` for this pile type: `<` on queues, `>` on stacks.
    fn precedes(self, a: usize, b: usize) -> bool {
        match self {
            PileType::Queue => a < b,
            PileType::Stack => a > b,
        }
    }
}

/// A word over `{q, s}` giving the type of each pile.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeWord(Vec<PileType>);

impl TypeWord {
    pub fn new(types: Vec<PileType>) -> Self {
        TypeWord(types)
    }

    pub fn queues(m: usize) -> Self {
        TypeWord(vec![PileType::Queue; m])
    }

    pub fn stacks(m: usize) -> Self {
        TypeWord(vec![PileType::Stack; m])
    }

    pub fn types(&self) -> &[PileType] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Type of the 1-based pile `p`.
    pub fn pile(&self, p: usize) -> PileType {
        self.0[p - 1]
    }

    pub fn repeat(&self, times: usize) -> TypeWord {
        TypeWord(self.0.repeat(times))
    }

    pub fn concat(&self, other: &TypeWord) -> TypeWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        TypeWord(v)
    }

    /// All words of length `len` in lexicographic order (`q < s`).
    pub fn all_of_length(len: usize) -> impl Iterator<Item = TypeWord> {
        (0u64..1 << len).map(move |bits| TypeWord::from_bits(bits as u128, len))
    }

    /// Bit `len - 1 - i` of `bits` is the type of position `i` (1 = stack).
    pub fn from_bits(bits: u128, len: usize) -> TypeWord {
        TypeWord(
            (0..len)
                .map(|i| {
                    if bits >> (len - 1 - i) & 1 == 0 {
                        PileType::Queue
                    } else {
                        PileType::Stack
                    }
                })
                .collect(),
        )
    }
}

impl FromIterator<PileType> for TypeWord {
    fn from_iter<I: IntoIterator<Item = PileType>>(iter: I) -> Self {
        TypeWord(iter.into_iter().collect())
    }
}

impl FromStr for TypeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                'q' => Ok(PileType::Queue),
                's' => Ok(PileType::Stack),
                other => Err(Error::MalformedWord(format!(
                    "type symbol {other:?} is not 'q' or 's'"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(TypeWord)
    }
}

impl fmt::Display for TypeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.0 {
            write!(f, "{}", t.as_char())?;
        }
        Ok(())
    }
}

/// `p(s)` for every label `s`, as 1-based pile indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PileAssignment(Vec<usize>);

impl PileAssignment {
    pub fn new(piles: Vec<usize>) -> Self {
        PileAssignment(piles)
    }

    pub fn constant(n: usize, pile: usize) -> Self {
        PileAssignment(vec![pile; n])
    }

    pub fn piles(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Pile of the 1-based label `s`.
    pub fn pile(&self, label: usize) -> usize {
        self.0[label - 1]
    }

    /// Every assignment of `n` labels into piles `1..=m`.
    pub fn all(n: usize, m: usize) -> impl Iterator<Item = PileAssignment> {
        let total = (m as u64).checked_pow(n as u32).unwrap_or(0);
        (0..total).map(move |mut code| {
            let mut piles = vec![0; n];
            for slot in piles.iter_mut().rev() {
                *slot = (code % m as u64) as usize + 1;
                code /= m as u64;
            }
            PileAssignment(piles)
        })
    }

    fn check_range(&self, n: usize, m: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(contract(format!(
                "assignment covers {} labels, deck has {n}",
                self.0.len()
            )));
        }
        if let Some(&bad) = self.0.iter().find(|&&p| p == 0 || p > m) {
            return Err(contract(format!("pile {bad} outside 1..={m}")));
        }
        Ok(())
    }
}

impl fmt::Display for PileAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

/// The pile types used in each of `T ≥ 0` rounds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeSchedule(Vec<TypeWord>);

impl TypeSchedule {
    pub fn new(rounds: Vec<TypeWord>) -> Result<Self> {
        if rounds.iter().any(TypeWord::is_empty) {
            return Err(contract("every round of a schedule needs at least one pile"));
        }
        Ok(TypeSchedule(rounds))
    }

    pub fn rounds(&self) -> &[TypeWord] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn widths(&self) -> Vec<usize> {
        self.0.iter().map(TypeWord::len).collect()
    }
}

/// Rounds joined by backslashes, e.g. `qqqqss\qq\q`.
impl fmt::Display for TypeSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("\\")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for TypeSchedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(TypeSchedule::default());
        }
        let rounds = s
            .split('\\')
            .map(str::parse)
            .collect::<Result<Vec<TypeWord>>>()?;
        TypeSchedule::new(rounds)
    }
}

/// Deals `perm` onto piles of the given types and collects them.
pub fn shuffle_once(
    perm: &Permutation,
    types: &TypeWord,
    piles: &PileAssignment,
) -> Result<Permutation> {
    let m = types.len();
    piles.check_range(perm.len(), m)?;
    let mut table: Vec<Vec<usize>> = vec![Vec::new(); m];
    for label in perm.deck_order() {
        table[piles.pile(label) - 1].push(label);
    }
    let mut deck = Vec::with_capacity(perm.len());
    for (pile, cards) in types.types().iter().zip(table) {
        match pile {
            PileType::Queue => deck.extend(cards),
            PileType::Stack => deck.extend(cards.into_iter().rev()),
        }
    }
    Ok(Permutation::from_images(deck)
        .expect("collected deck is a permutation")
        .inverse())
}

/// Whether `(types, piles)` sorts `perm`, by the adjacent-label condition
/// `p(s+1) ≥ p(s) + [π(s+1) ≺_{x(p(s))} π(s)]`.
pub fn check_sort(types: &TypeWord, piles: &PileAssignment, perm: &Permutation) -> bool {
    let n = perm.len();
    if piles.check_range(n, types.len()).is_err() {
        return false;
    }
    (1..n).all(|s| {
        let here = piles.pile(s);
        let forced = types
            .pile(here)
            .precedes(perm.image(s + 1), perm.image(s));
        piles.pile(s + 1) >= here + usize::from(forced)
    })
}

/// The minimal sort `p*` of `perm` on `types`, or `None` when the greedy
/// recurrence runs past the last pile (no sort on `types` exists).
pub fn minimal_sort(perm: &Permutation, types: &TypeWord) -> Option<PileAssignment> {
    let n = perm.len();
    let m = types.len();
    if n == 0 {
        return Some(PileAssignment(Vec::new()));
    }
    if m == 0 {
        return None;
    }
    let mut piles = Vec::with_capacity(n);
    let mut current = 1;
    piles.push(current);
    for s in 1..n {
        if types
            .pile(current)
            .precedes(perm.image(s + 1), perm.image(s))
        {
            current += 1;
            if current > m {
                return None;
            }
        }
        piles.push(current);
    }
    Some(PileAssignment(piles))
}

/// Runs one round per schedule entry, feeding each output into the next.
pub fn shuffle_multi(
    perm: &Permutation,
    schedule: &TypeSchedule,
    assignments: &[PileAssignment],
) -> Result<Permutation> {
    if assignments.len() != schedule.len() {
        return Err(contract(format!(
            "{} assignments for a {}-round schedule",
            assignments.len(),
            schedule.len()
        )));
    }
    schedule
        .rounds()
        .iter()
        .zip(assignments)
        .try_fold(perm.clone(), |deck, (types, piles)| {
            shuffle_once(&deck, types, piles)
        })
}

/// Dealer's choice in one round: picks pile types as it deals, using as few
/// piles as possible, and gives up if more than `max_piles` are needed.
///
/// Each pile's type is fixed by the first comparison dealt into it, so the
/// pile absorbs the longest possible run of the profile.
pub fn dealer_choice_single(
    perm: &Permutation,
    max_piles: usize,
) -> Option<(TypeWord, PileAssignment)> {
    let n = perm.len();
    if n == 0 {
        return Some((TypeWord::queues(1), PileAssignment(Vec::new())));
    }
    let profile = change_profile(perm);
    let mut types = Vec::new();
    let mut piles = Vec::with_capacity(n);
    // type of the open pile, once committed
    let mut open: Option<PileType> = None;
    piles.push(1);
    for &change in profile.symbols() {
        match open {
            None => {
                open = Some(match change {
                    Change::Ascent => PileType::Queue,
                    Change::Descent => PileType::Stack,
                });
            }
            Some(t) if t.absorbs() == change => {}
            Some(t) => {
                types.push(t);
                open = None;
            }
        }
        piles.push(types.len() + 1);
    }
    types.push(open.unwrap_or(PileType::Queue));
    if types.len() > max_piles {
        return None;
    }
    Some((TypeWord(types), PileAssignment(piles)))
}
