//! The type-word algebra and the single-round "virtual" view of a
//! multi-round shuffle.
//!
//! `x1\x2` is the virtual type word of the two-round schedule `(x1, x2)`:
//! one copy of `x1` per pile of `x2`, dualized under every stack. Virtual
//! piles are 0-based; real piles (see [`crate::shuffle`]) are 1-based.

use std::fmt;

use crate::error::{contract, Result};
use crate::perm::Permutation;
use crate::shuffle::{minimal_sort, PileAssignment, PileType, TypeSchedule, TypeWord};

/// Symbol-wise `q ↔ s`.
pub fn invert_word(x: &TypeWord) -> TypeWord {
    x.types().iter().map(|t| t.inverted()).collect()
}

/// Reversal composed with inversion.
pub fn dual_word(x: &TypeWord) -> TypeWord {
    x.types().iter().rev().map(|t| t.inverted()).collect()
}

/// `x1\x2`.
pub fn compose_pair(x1: &TypeWord, x2: &TypeWord) -> TypeWord {
    let dual = dual_word(x1);
    let mut out = Vec::with_capacity(x1.len() * x2.len());
    for t in x2.types() {
        match t {
            PileType::Queue => out.extend_from_slice(x1.types()),
            PileType::Stack => out.extend_from_slice(dual.types()),
        }
    }
    TypeWord::new(out)
}

/// Left fold of [`compose_pair`]; the empty schedule composes to `q`.
pub fn compose_fold(schedule: &TypeSchedule) -> TypeWord {
    let mut rounds = schedule.rounds().iter();
    let Some(first) = rounds.next() else {
        return TypeWord::queues(1);
    };
    rounds.fold(first.clone(), |acc, x| compose_pair(&acc, x))
}

/// A schedule together with its virtual type indicators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleComposition {
    schedule: TypeSchedule,
    /// `indicators[t]` is `X̂_{t+1}` (0-based round `t`), `indicators[T]` is `[q]`.
    indicators: Vec<TypeWord>,
}

impl ScheduleComposition {
    pub fn schedule(&self) -> &TypeSchedule {
        &self.schedule
    }

    /// The composed word `x̂₁` of length `∏ m_t`.
    pub fn virtual_types(&self) -> &TypeWord {
        &self.indicators[0]
    }

    /// `m̂_t = ∏_{t' ≥ t} m_{t'}` for every round, ending with `m̂_{T+1} = 1`.
    pub fn virtual_widths(&self) -> Vec<usize> {
        self.indicators.iter().map(TypeWord::len).collect()
    }

    /// `X̂_t` for a 0-based round `t ≤ T`.
    pub fn indicator(&self, t: usize) -> &TypeWord {
        &self.indicators[t]
    }
}

fn rev_if(flip: PileType, m: usize, y: usize) -> usize {
    match flip {
        PileType::Queue => y,
        PileType::Stack => m - 1 - y,
    }
}

fn xor(a: PileType, b: PileType) -> PileType {
    if a == b {
        PileType::Queue
    } else {
        PileType::Stack
    }
}

/// Composes by the backward indicator recurrence
/// `X̂_t(r + m_t·q) = X_t(rev^{X̂_{t+1}(q)}(r)) ⊕ X̂_{t+1}(q)`.
pub fn compose_schedule(schedule: &TypeSchedule) -> ScheduleComposition {
    let rounds = schedule.rounds();
    let mut indicators = vec![TypeWord::queues(1)];
    for x in rounds.iter().rev() {
        let next = indicators.last().unwrap();
        let m = x.len();
        let mut word = Vec::with_capacity(m * next.len());
        for &outer in next.types() {
            for r in 0..m {
                word.push(xor(x.types()[rev_if(outer, m, r)], outer));
            }
        }
        indicators.push(TypeWord::new(word));
    }
    indicators.reverse();
    ScheduleComposition {
        schedule: schedule.clone(),
        indicators,
    }
}

/// A 0-based assignment of labels to virtual piles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VirtualAssignment(Vec<usize>);

impl VirtualAssignment {
    pub fn new(piles: Vec<usize>) -> Self {
        VirtualAssignment(piles)
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

    /// Shifts to the 1-based indices of a real single-round shuffle.
    pub fn to_real(&self) -> PileAssignment {
        PileAssignment::new(self.0.iter().map(|p| p + 1).collect())
    }

    pub fn from_real(piles: &PileAssignment) -> Result<Self> {
        if piles.piles().contains(&0) {
            return Err(contract("real pile indices start at 1"));
        }
        Ok(VirtualAssignment(
            piles.piles().iter().map(|p| p - 1).collect(),
        ))
    }
}

impl fmt::Display for VirtualAssignment {
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

/// Folds per-round real assignments into one virtual assignment:
/// `p̂_T = p_T`, `p̂_t = rev^{X̂_{t+1}(p̂_{t+1})}(p_t) + m_t·p̂_{t+1}`.
pub fn virtualize_assignments(
    composition: &ScheduleComposition,
    assignments: &[PileAssignment],
) -> Result<VirtualAssignment> {
    let rounds = composition.schedule.rounds();
    if assignments.len() != rounds.len() {
        return Err(contract(format!(
            "{} assignments for a {}-round schedule",
            assignments.len(),
            rounds.len()
        )));
    }
    let Some(last) = assignments.last() else {
        return Err(contract("an empty schedule has no per-label assignments"));
    };
    let n = last.len();
    for (t, (x, p)) in rounds.iter().zip(assignments).enumerate() {
        if p.len() != n {
            return Err(contract(format!("round {} covers {} labels, not {n}", t + 1, p.len())));
        }
        if let Some(&bad) = p.piles().iter().find(|&&v| v == 0 || v > x.len()) {
            return Err(contract(format!(
                "round {} pile {bad} outside 1..={}",
                t + 1,
                x.len()
            )));
        }
    }
    let mut hat: Vec<usize> = last.piles().iter().map(|p| p - 1).collect();
    for t in (0..rounds.len() - 1).rev() {
        let m = rounds[t].len();
        let outer = composition.indicator(t + 1);
        for (s, h) in hat.iter_mut().enumerate() {
            let local = assignments[t].piles()[s] - 1;
            *h = rev_if(outer.types()[*h], m, local) + m * *h;
        }
    }
    Ok(VirtualAssignment(hat))
}

/// Splits a virtual assignment back into per-round real assignments.
pub fn devirtualize_assignments(
    composition: &ScheduleComposition,
    virtual_piles: &VirtualAssignment,
) -> Result<Vec<PileAssignment>> {
    let rounds = composition.schedule.rounds();
    let width = composition.virtual_types().len();
    if rounds.is_empty() {
        return if virtual_piles.0.iter().all(|&p| p == 0) {
            Ok(Vec::new())
        } else {
            Err(contract("an empty schedule has only virtual pile 0"))
        };
    }
    if let Some(&bad) = virtual_piles.0.iter().find(|&&p| p >= width) {
        return Err(contract(format!("virtual pile {bad} outside 0..{width}")));
    }
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(rounds.len());
    let mut hat = virtual_piles.0.clone();
    for (t, x) in rounds.iter().enumerate() {
        let m = x.len();
        let outer = composition.indicator(t + 1);
        let mut real = Vec::with_capacity(hat.len());
        for h in hat.iter_mut() {
            let up = *h / m;
            real.push(rev_if(outer.types()[up], m, *h % m) + 1);
            *h = up;
        }
        out.push(real);
    }
    Ok(out.into_iter().map(PileAssignment::new).collect())
}

/// Sorts `perm` over the rounds of `schedule` if possible: a minimal sort
/// on the composed word, split back into rounds.
pub fn multi_round_sort(perm: &Permutation, schedule: &TypeSchedule) -> Option<Vec<PileAssignment>> {
    let composition = compose_schedule(schedule);
    let real = minimal_sort(perm, composition.virtual_types())?;
    let virtual_piles = VirtualAssignment::from_real(&real).expect("minimal sorts are 1-based");
    Some(
        devirtualize_assignments(&composition, &virtual_piles)
            .expect("minimal sort stays within the virtual width"),
    )
}
