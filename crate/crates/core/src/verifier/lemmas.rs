//! Machine checks of the gadget trajectory claims.
//!
//! Every claim has the shape "on every chain `y\Z` with `Z ∈ {q,s}^W`, the
//! word run from this start ends here", where "here" depends on whether a
//! window of `Z` has a given form. Each case is checked exactly by a sweep
//! over trajectory nodes, and, when `2^W` is within the cross-check cap, a
//! second time by running the word on every chain. The two routes must
//! agree on the verdict and on the number of cases.

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{dual_word, invert_word};
use crate::chain::sweep::{sweep_arrow, Inverted, MeasureCondition};
use crate::chain::{build_chain, verify_arrow, ArrowCase, ArrowReport, Counterexample, EndPredicate};
use crate::error::Result;
use crate::gadgets::{align, build_formula, clause_word, extract_assignment, gadget, key_word, Test, Variant};
use crate::perm::ChangeProfile;
use crate::reduction::{Clause, CnfFormula, FactoredFamily, RoundSpec};
use crate::shuffle::{PileType, TypeWord};

use EndPredicate::{AtLeast, Exactly, Unclaimed};

/// Largest `2^W` for which a case is also checked chain by chain.
pub const DEFAULT_LEMMA_CAP: u128 = 1 << 14;

const W6: usize = 6;

/// Flat state of beat `b` in measure `k`.
fn at(b: usize, k: usize) -> usize {
    b + W6 * k
}

pub const LEMMA_NAMES: &[&str] = &[
    "non-backtracking",
    "clause",
    "start-clause",
    "variable-test",
    "end-test",
    "next",
    "clause-next",
    "formula",
    "force-q",
    "formula-forced",
    "align",
    "aligned-word",
    "force-align-block",
    "pass",
];

/// Parameter ranges the claims are instantiated over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaBounds {
    /// Variables per clause, and measures for the per-measure gadgets.
    pub max_vars: usize,
    /// Free measures before the window, `0..=max_prefix`.
    pub max_prefix: usize,
    /// Free measures after the window, `1..=max_suffix`.
    pub max_suffix: usize,
    /// Clauses per formula in the formula claims.
    pub max_clauses: usize,
    /// Variables for the formula claims, which range over every formula.
    pub formula_vars: usize,
    /// The `n` of the guard claim, `align^{6n+1}`.
    pub guard_vars: usize,
    /// Clause variables behind the guard in the guarded clause claim.
    pub block_vars: usize,
    /// Chain and word length for the monotonicity check.
    pub monotone_len: usize,
    pub cross_check_cap: u128,
}

impl Default for LemmaBounds {
    fn default() -> Self {
        LemmaBounds {
            max_vars: 4,
            max_prefix: 1,
            max_suffix: 2,
            max_clauses: 2,
            formula_vars: 3,
            guard_vars: 4,
            block_vars: 2,
            monotone_len: 6,
            cross_check_cap: DEFAULT_LEMMA_CAP,
        }
    }
}

impl LemmaBounds {
    /// Every per-variable bound set to `n`, except that the formula claims
    /// stop at three variables and the guarded clause at two.
    pub fn uniform(n: usize) -> Self {
        LemmaBounds {
            max_vars: n,
            formula_vars: n.min(3),
            guard_vars: n,
            block_vars: n.min(2),
            ..LemmaBounds::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub name: String,
    /// The parameter ranges used, as `key=range` pairs.
    pub bounds: String,
    /// Claimed (chain, start) pairs checked.
    pub cases: u128,
    /// How many of those were also checked chain by chain.
    pub cross_checked: u128,
    /// Trajectory nodes expanded by the sweeps.
    pub nodes: u64,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    /// Why the claim failed or was not checked; empty on a pass.
    pub detail: String,
}

/// One piece of the window a claim inspects.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Segment {
    Fixed(TypeWord),
    /// `Ψ(x)` for some `x` on `n` variables satisfying the clause.
    Satisfying(Clause, usize),
}

impl Segment {
    fn len(&self) -> usize {
        match self {
            Segment::Fixed(w) => w.len(),
            Segment::Satisfying(_, n) => *n,
        }
    }
}

/// `matched` if `Z` has the segments laid out from measure `offset`,
/// `otherwise` if not.
#[derive(Clone, Debug, PartialEq, Eq)]
struct WindowClaim {
    offset: usize,
    segments: Vec<Segment>,
    matched: EndPredicate,
    otherwise: EndPredicate,
}

impl WindowClaim {
    fn always(p: EndPredicate) -> Self {
        WindowClaim {
            offset: 0,
            segments: Vec::new(),
            matched: p,
            otherwise: p,
        }
    }

    fn window(offset: usize, segments: Vec<Segment>, matched: EndPredicate, otherwise: EndPredicate) -> Self {
        WindowClaim {
            offset,
            segments,
            matched,
            otherwise,
        }
    }

    fn width(&self) -> usize {
        self.segments.iter().map(Segment::len).sum()
    }

    /// The claim for one concrete `Z`, read directly.
    fn evaluate(&self, z: &[PileType]) -> EndPredicate {
        let mut at = self.offset;
        for seg in &self.segments {
            let part = &z[at..at + seg.len()];
            let ok = match seg {
                Segment::Fixed(w) => part == w.types(),
                Segment::Satisfying(clause, _) => {
                    clause.satisfied_by(&extract_assignment(&TypeWord::new(part.to_vec())))
                }
            };
            if !ok {
                return self.otherwise;
            }
            at += seg.len();
        }
        self.matched
    }

    fn condition(&self) -> WindowCondition {
        let mut rules = Vec::with_capacity(self.width());
        for seg in &self.segments {
            match seg {
                Segment::Fixed(w) => rules.extend(w.types().iter().map(|&t| Rule::Must(t))),
                Segment::Satisfying(clause, n) => {
                    for var in 1..=*n {
                        rules.push(Rule::Literal {
                            satisfied_by: [clause.has_positive(var), clause.has_negative(var)],
                            first: var == 1,
                            last: var == *n,
                        });
                    }
                }
            }
        }
        WindowCondition {
            offset: self.offset,
            rules,
            matched: self.matched,
            otherwise: self.otherwise,
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Rule {
    Must(PileType),
    Literal {
        /// Indexed by queue, stack.
        satisfied_by: [bool; 2],
        first: bool,
        last: bool,
    },
}

/// The same claim as an automaton over `Z`.
struct WindowCondition {
    offset: usize,
    rules: Vec<Rule>,
    matched: EndPredicate,
    otherwise: EndPredicate,
}

const ALIVE: u32 = 0;
const SATISFIED: u32 = 1;
const DEAD: u32 = 2;

impl MeasureCondition for WindowCondition {
    fn initial(&self) -> u32 {
        ALIVE
    }

    fn step(&self, state: u32, measure: usize, symbol: PileType) -> u32 {
        if state == DEAD || measure < self.offset || measure >= self.offset + self.rules.len() {
            return state;
        }
        match self.rules[measure - self.offset] {
            Rule::Must(t) => {
                if t == symbol {
                    state
                } else {
                    DEAD
                }
            }
            Rule::Literal {
                satisfied_by,
                first,
                last,
            } => {
                let mut s = if first { ALIVE } else { state };
                if satisfied_by[usize::from(symbol == PileType::Stack)] {
                    s = SATISFIED;
                }
                match (last, s) {
                    (false, _) => s,
                    (true, SATISFIED) => ALIVE,
                    (true, _) => DEAD,
                }
            }
        }
    }

    fn expect(&self, state: u32) -> EndPredicate {
        if state == DEAD {
            self.otherwise
        } else {
            self.matched
        }
    }
}

struct Case {
    label: String,
    y: TypeWord,
    measures: usize,
    word: Arc<ChangeProfile>,
    start: usize,
    claim: WindowClaim,
    /// The claim is about `invert(Z)`: the chain is `dual(ẍ)\Z = ẍ\invert(Z)`.
    inverted: bool,
}

struct CaseOutcome {
    cases: u128,
    cross_checked: u128,
    nodes: u64,
    counterexample: Option<Counterexample>,
    disagreement: Option<String>,
}

fn run_case(case: &Case, cross_check_cap: u128) -> Result<CaseOutcome> {
    let condition = case.claim.condition();
    let swept = if case.inverted {
        sweep_arrow(&case.y, case.measures, &case.word, case.start, &Inverted(condition), &case.label)?
    } else {
        sweep_arrow(&case.y, case.measures, &case.word, case.start, &condition, &case.label)?
    };
    let mut outcome = CaseOutcome {
        cases: swept.report.cases,
        cross_checked: 0,
        nodes: swept.nodes,
        counterexample: swept.report.counterexample.clone(),
        disagreement: None,
    };
    let within = case.measures < 128 && (1u128 << case.measures) <= cross_check_cap;
    if within {
        let brute = brute_case(case, cross_check_cap)?;
        if brute.passed() != swept.report.passed() || brute.cases != swept.report.cases {
            outcome.disagreement = Some(format!(
                "[{}] sweep says passed={} over {} cases, enumeration says passed={} over {}",
                case.label,
                swept.report.passed(),
                swept.report.cases,
                brute.passed(),
                brute.cases
            ));
            if outcome.counterexample.is_none() {
                outcome.counterexample = brute.counterexample;
            }
        }
        outcome.cross_checked = brute.cases;
    }
    Ok(outcome)
}

fn brute_case(case: &Case, cap: u128) -> Result<ArrowReport> {
    let family = FactoredFamily::new(vec![RoundSpec::Fixed(case.y.clone()), RoundSpec::Free(case.measures)]);
    verify_arrow(
        &family,
        &case.word,
        |schedule| {
            let z = &schedule.rounds()[1];
            let read = if case.inverted { invert_word(z) } else { z.clone() };
            vec![ArrowCase {
                start: case.start,
                expected: case.claim.evaluate(read.types()),
                label: case.label.clone(),
            }]
        },
        cap,
    )
}

fn report_from_cases(name: &str, bounds: String, cases: Vec<Case>, cross_check_cap: u128) -> LemmaReport {
    let outcomes: Vec<Result<CaseOutcome>> = cases.par_iter().map(|c| run_case(c, cross_check_cap)).collect();
    let mut report = LemmaReport {
        name: name.to_string(),
        bounds,
        cases: 0,
        cross_checked: 0,
        nodes: 0,
        passed: true,
        counterexample: None,
        detail: String::new(),
    };
    for outcome in outcomes {
        let outcome = match outcome {
            Ok(o) => o,
            Err(e) => {
                report.passed = false;
                report.detail = format!("refused: {e}");
                return report;
            }
        };
        report.cases += outcome.cases;
        report.cross_checked += outcome.cross_checked;
        report.nodes += outcome.nodes;
        if report.passed {
            if let Some(d) = outcome.disagreement {
                report.passed = false;
                report.detail = d;
                report.counterexample = outcome.counterexample;
            } else if let Some(cx) = outcome.counterexample {
                report.passed = false;
                report.detail = cx.to_string();
                report.counterexample = Some(cx);
            }
        }
    }
    if report.cases == 0 && report.passed {
        report.passed = false;
        report.detail = "no cases were claimed; the bounds leave the claim vacuous".into();
    }
    report
}

fn tw(s: &str) -> TypeWord {
    s.parse().expect("valid type word")
}

fn fixed(s: &str) -> Segment {
    Segment::Fixed(tw(s))
}

/// Every clause on `n` variables with each variable positive, negative or
/// absent, except the empty clause.
fn clause_shapes(n: usize) -> Vec<Clause> {
    let mut out = Vec::new();
    for code in 1..3usize.pow(n as u32) {
        let mut lits = Vec::new();
        let mut c = code;
        for var in 1..=n as i32 {
            match c % 3 {
                1 => lits.push(var),
                2 => lits.push(-var),
                _ => {}
            }
            c /= 3;
        }
        out.push(Clause::new(lits).expect("nonempty"));
    }
    out
}

/// Every formula of `m` clauses drawn from [`clause_shapes`].
fn formulas(n: usize, m: usize) -> Vec<CnfFormula> {
    let shapes = clause_shapes(n);
    let mut out = Vec::new();
    let total = shapes.len().pow(m as u32);
    for code in 0..total {
        let mut c = code;
        let clauses = (0..m)
            .map(|_| {
                let cl = shapes[c % shapes.len()].clone();
                c /= shapes.len();
                cl
            })
            .collect();
        out.push(CnfFormula::new(n, clauses).expect("clauses fit"));
    }
    out
}

/// First-round words and whether the claim reads `Z` inverted; `None`
/// marks an unaligned first round.
fn first_rounds() -> Vec<(TypeWord, Option<bool>)> {
    let key = key_word();
    let dual = dual_word(&key);
    TypeWord::all_of_length(W6)
        .map(|y| {
            let aligned = if y == key {
                Some(false)
            } else if y == dual {
                Some(true)
            } else {
                None
            };
            (y, aligned)
        })
        .collect()
}

fn named(name: &str) -> Arc<ChangeProfile> {
    Arc::new(gadget(name).expect("lexicon word"))
}

fn key_case(label: String, measures: usize, word: &Arc<ChangeProfile>, start: usize, claim: WindowClaim) -> Case {
    Case {
        label,
        y: key_word(),
        measures,
        word: Arc::clone(word),
        start,
        claim,
        inverted: false,
    }
}

fn prefixes_and_suffixes(b: &LemmaBounds) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k1 in 0..=b.max_prefix {
        for k2 in 1..=b.max_suffix.max(1) {
            out.push((k1, k2));
        }
    }
    out
}

fn clause_cases(b: &LemmaBounds, with_next: bool) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for n in 1..=b.max_vars {
        for clause in clause_shapes(n) {
            let mut w = clause_word(&clause, n)?;
            if with_next {
                w.push_word(&gadget("next").expect("lexicon word"));
            }
            let w = Arc::new(w);
            for (k1, k2) in prefixes_and_suffixes(b) {
                let measures = k1 + n + 1 + k2;
                let satisfied = if with_next {
                    Exactly(at(0, k1 + n + 1))
                } else {
                    Exactly(at(5, k1 + n))
                };
                let fail = AtLeast(at(1, k1 + n + 1));
                let label = format!("clause ({clause}) n={n} k1={k1} k2={k2}");
                let window = vec![Segment::Satisfying(clause.clone(), n), fixed("q")];
                cases.push(key_case(
                    format!("{label} from 0\\k1"),
                    measures,
                    &w,
                    at(0, k1),
                    WindowClaim::window(k1, window, satisfied, fail),
                ));
                cases.push(key_case(
                    format!("{label} from 1\\k1"),
                    measures,
                    &w,
                    at(1, k1),
                    WindowClaim::always(fail),
                ));
            }
        }
    }
    Ok(cases)
}

fn start_clause_cases(b: &LemmaBounds) -> Vec<Case> {
    let w = named("start-clause");
    let mut cases = Vec::new();
    for n in 1..=b.max_vars {
        for k in 0..n {
            cases.push(key_case(
                format!("start-clause n={n} from 0\\{k}"),
                n,
                &w,
                at(0, k),
                WindowClaim::always(Exactly(at(3, k))),
            ));
            // every state from 1\k up to the sink
            for start in at(1, k)..=at(0, n) {
                cases.push(key_case(
                    format!("start-clause n={n} k={k} from {start}"),
                    n,
                    &w,
                    start,
                    WindowClaim::always(AtLeast(at(5, k))),
                ));
            }
        }
    }
    cases
}

fn variable_test_cases(b: &LemmaBounds) -> Vec<Case> {
    let mut cases = Vec::new();
    for test in [Test::Pos, Test::Neg, Test::DontCare] {
        let w = Arc::new(test.word());
        let name = format!("{test:?}").to_lowercase();
        for n in 1..=b.max_vars {
            let measures = n + 1;
            for k in 0..n {
                let next_act = Exactly(at(2, k + 1));
                let next_not = Exactly(at(3, k + 1));
                let from_not = match test {
                    Test::Pos => WindowClaim::window(k, vec![fixed("q")], next_act, next_not),
                    Test::Neg => WindowClaim::window(k, vec![fixed("s")], next_act, next_not),
                    Test::DontCare => WindowClaim::always(next_not),
                };
                let label = format!("{name} n={n} k={k}");
                cases.push(key_case(format!("{label} from 3\\k"), measures, &w, at(3, k), from_not));
                cases.push(key_case(
                    format!("{label} from 2\\k"),
                    measures,
                    &w,
                    at(2, k),
                    WindowClaim::always(next_act),
                ));
                cases.push(key_case(
                    format!("{label} from 5\\k"),
                    measures,
                    &w,
                    at(5, k),
                    WindowClaim::always(AtLeast(at(5, k + 1))),
                ));
            }
        }
    }
    cases
}

fn end_test_cases(b: &LemmaBounds) -> Vec<Case> {
    let mut cases = Vec::new();
    for test in [Test::Pos, Test::Neg, Test::DontCare] {
        let w = Arc::new(test.end_word());
        let name = format!("end-{test:?}").to_lowercase();
        for n in 1..=b.max_vars {
            let measures = n + 2;
            for k in 0..n {
                let end = Exactly(at(5, k + 1));
                let disq = AtLeast(at(1, k + 2));
                let label = format!("{name} n={n} k={k}");
                cases.push(key_case(
                    format!("{label} from 2\\k"),
                    measures,
                    &w,
                    at(2, k),
                    WindowClaim::window(k + 1, vec![fixed("q")], end, disq),
                ));
                let from_not = match test {
                    Test::Pos => WindowClaim::window(k, vec![fixed("qq")], end, disq),
                    Test::Neg => WindowClaim::window(k, vec![fixed("sq")], end, disq),
                    Test::DontCare => WindowClaim::always(disq),
                };
                cases.push(key_case(format!("{label} from 3\\k"), measures, &w, at(3, k), from_not));
                cases.push(key_case(
                    format!("{label} from 5\\k"),
                    measures,
                    &w,
                    at(5, k),
                    WindowClaim::always(disq),
                ));
            }
        }
    }
    cases
}

fn next_cases(b: &LemmaBounds) -> Vec<Case> {
    let w = named("next");
    let mut cases = Vec::new();
    for n in 1..=b.max_vars {
        for k in 0..n {
            // nothing is claimed when x_k = s
            cases.push(key_case(
                format!("next n={n} from 5\\{k}"),
                n + 1,
                &w,
                at(5, k),
                WindowClaim::window(k, vec![fixed("q")], Exactly(at(0, k + 1)), Unclaimed),
            ));
        }
    }
    cases
}

fn formula_cases(b: &LemmaBounds, variant: Variant) -> Result<Vec<Case>> {
    let forced = variant == Variant::II;
    let mut cases = Vec::new();
    for n in 1..=b.formula_vars {
        let span = if forced { n + 2 } else { n + 1 };
        for m in 1..=b.max_clauses {
            for formula in formulas(n, m) {
                let w = Arc::new(build_formula(variant, &formula, 1)?);
                let mut window = Vec::new();
                for clause in formula.clauses() {
                    if forced {
                        window.push(fixed("q"));
                    }
                    window.push(Segment::Satisfying(clause.clone(), n));
                    window.push(fixed("q"));
                }
                let clauses: Vec<String> = formula.clauses().iter().map(|c| format!("({c})")).collect();
                cases.push(key_case(
                    format!("formula {} n={n}", clauses.join("")),
                    m * span + 1,
                    &w,
                    0,
                    WindowClaim::window(0, window, Exactly(at(5, m * span - 1)), AtLeast(at(1, m * span))),
                ));
            }
        }
    }
    Ok(cases)
}

fn force_q_cases(b: &LemmaBounds) -> Vec<Case> {
    let w = named("force-q");
    let mut cases = Vec::new();
    for n in 1..=b.max_vars {
        for k in 0..n {
            let disq = AtLeast(at(1, k + 1));
            cases.push(key_case(
                format!("force-q n={n} from 0\\{k}"),
                n + 1,
                &w,
                at(0, k),
                WindowClaim::window(k, vec![fixed("q")], Exactly(at(0, k + 1)), disq),
            ));
            cases.push(key_case(
                format!("force-q n={n} from 1\\{k}"),
                n + 1,
                &w,
                at(1, k),
                WindowClaim::always(disq),
            ));
        }
    }
    cases
}

fn pass_cases(b: &LemmaBounds) -> Vec<Case> {
    let w = named("pass");
    let mut cases = Vec::new();
    for n in 1..=b.max_vars {
        for k in 0..n {
            for (beat, claim) in [
                (0, Exactly(at(0, k + 1))),
                (1, AtLeast(at(1, k + 1))),
                (5, Exactly(at(5, k + 1))),
            ] {
                cases.push(key_case(
                    format!("pass n={n} from {beat}\\{k}"),
                    n + 1,
                    &w,
                    at(beat, k),
                    WindowClaim::always(claim),
                ));
            }
        }
    }
    cases
}

fn align_cases(b: &LemmaBounds) -> Vec<Case> {
    let w = Arc::new(align().clone());
    let mut cases = Vec::new();
    for (y, aligned) in first_rounds() {
        for n in 1..=b.max_vars {
            let measures = n + 2;
            for k in 0..n {
                let label = format!("align y={y} n={n} k={k}");
                let mut push = |start: usize, claim: WindowClaim, inverted: bool| {
                    cases.push(Case {
                        label: format!("{label} from {start}"),
                        y: y.clone(),
                        measures,
                        word: Arc::clone(&w),
                        start,
                        claim,
                        inverted,
                    })
                };
                match aligned {
                    Some(inverted) => {
                        let disq = AtLeast(at(1, k + 2));
                        push(
                            at(0, k),
                            WindowClaim::window(k, vec![fixed("qs")], Exactly(at(0, k + 2)), disq),
                            inverted,
                        );
                        push(at(1, k), WindowClaim::always(disq), inverted);
                    }
                    None => {
                        for beat in 0..W6 {
                            push(at(beat, k), WindowClaim::always(AtLeast(at(beat + 1, k + 2))), false);
                        }
                    }
                }
            }
        }
    }
    cases
}

type Claims = Vec<(usize, WindowClaim)>;

/// Cases over every first round and every prefix and suffix width, for a
/// word whose claims split on whether the first round is aligned.
fn over_first_rounds(
    b: &LemmaBounds,
    label: &str,
    word: ChangeProfile,
    middle: usize,
    aligned: impl Fn(usize) -> Claims,
    unaligned: impl Fn(usize) -> Claims,
) -> Vec<Case> {
    let word = Arc::new(word);
    let mut cases = Vec::new();
    for (y, reading) in first_rounds() {
        for (k1, k2) in prefixes_and_suffixes(b) {
            let (claims, inverted) = match reading {
                Some(inverted) => (aligned(k1), inverted),
                None => (unaligned(k1), false),
            };
            for (start, claim) in claims {
                cases.push(Case {
                    label: format!("{label} y={y} k1={k1} k2={k2} from {start}"),
                    y: y.clone(),
                    measures: k1 + middle + k2,
                    word: Arc::clone(&word),
                    start,
                    claim,
                    inverted,
                });
            }
        }
    }
    cases
}

fn aligned_word_cases(b: &LemmaBounds) -> Vec<Case> {
    let mut cases = Vec::new();
    for n in 1..=b.guard_vars {
        let reps = 6 * n + 1;
        let guard = 2 * reps;
        let qs = tw("qs").repeat(reps);
        cases.extend(over_first_rounds(
            b,
            &format!("aligned-word n={n}"),
            align().repeat(reps),
            guard + n,
            |k1| {
                let disq = AtLeast(at(1, k1 + guard));
                vec![
                    (
                        at(0, k1),
                        WindowClaim::window(k1, vec![Segment::Fixed(qs.clone())], Exactly(at(0, k1 + guard)), disq),
                    ),
                    (at(1, k1), WindowClaim::always(disq)),
                ]
            },
            |k1| vec![(at(0, k1), WindowClaim::always(AtLeast(at(1, k1 + guard + n))))],
        ));
    }
    cases
}

fn force_align_block_cases(b: &LemmaBounds) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for n in 1..=b.block_vars {
        let n1 = n + 1;
        let reps = 6 * n1 + 1;
        let span = 2 * reps + n1;
        let qs = tw("qs").repeat(reps);
        for clause in clause_shapes(n) {
            let mut word = align().repeat(reps);
            word.push_word(&clause_word(&clause, n)?);
            let window = vec![
                Segment::Fixed(qs.clone()),
                Segment::Satisfying(clause.clone(), n),
                fixed("q"),
            ];
            cases.extend(over_first_rounds(
                b,
                &format!("force-align-block ({clause}) n={n}"),
                word,
                span,
                |k1| {
                    let disq = AtLeast(at(1, k1 + span));
                    vec![
                        (
                            at(0, k1),
                            WindowClaim::window(k1, window.clone(), Exactly(at(5, k1 + span - 1)), disq),
                        ),
                        (at(1, k1), WindowClaim::always(disq)),
                    ]
                },
                |k1| vec![(at(0, k1), WindowClaim::always(AtLeast(at(1, k1 + span))))],
            ));
        }
    }
    Ok(cases)
}

/// End states never decrease as the start state increases, on every chain
/// and word up to `len`.
fn monotone_report(b: &LemmaBounds) -> Result<LemmaReport> {
    let len = b.monotone_len;
    let mut report = LemmaReport {
        name: "non-backtracking".into(),
        bounds: format!("chain_len=1..={len} word_len=0..={len}"),
        cases: 0,
        cross_checked: 0,
        nodes: 0,
        passed: true,
        counterexample: None,
        detail: String::new(),
    };
    'outer: for m in 1..=len {
        let family = FactoredFamily::new(vec![RoundSpec::Free(m)]);
        for wl in 0..=len {
            for word in ChangeProfile::all_of_length(wl) {
                let r = verify_arrow(
                    &family,
                    &word,
                    |schedule| {
                        let chain = build_chain(&schedule.rounds()[0]).expect("nonempty");
                        (1..=m)
                            .map(|start| ArrowCase {
                                start,
                                expected: AtLeast(chain.run_word(start - 1, &word).expect("state")),
                                label: format!("from {start} vs {}", start - 1),
                            })
                            .collect()
                    },
                    u128::MAX,
                )?;
                report.cases += r.cases;
                if let Some(cx) = r.counterexample {
                    report.passed = false;
                    report.detail = format!("{cx} on word {word}");
                    report.counterexample = Some(cx);
                    break 'outer;
                }
            }
        }
    }
    Ok(report)
}

/// Checks one claim by name; see [`LEMMA_NAMES`].
pub fn verify_lemma(name: &str, bounds: &LemmaBounds) -> Result<LemmaReport> {
    let b = bounds;
    let ranges = |extra: &str| {
        let mut s = format!("n=1..={}", b.max_vars);
        if !extra.is_empty() {
            s.push(' ');
            s.push_str(extra);
        }
        s
    };
    let k1k2 = format!("k1=0..={} k2=1..={}", b.max_prefix, b.max_suffix.max(1));
    let (bounds_text, cases) = match name {
        "non-backtracking" => return monotone_report(b),
        "clause" => (ranges(&k1k2), clause_cases(b, false)?),
        "clause-next" => (ranges(&k1k2), clause_cases(b, true)?),
        "start-clause" => (ranges("k=0..n-1"), start_clause_cases(b)),
        "variable-test" => (ranges("k=0..n-1"), variable_test_cases(b)),
        "end-test" => (ranges("k=0..n-1"), end_test_cases(b)),
        "next" => (ranges("k=0..n-1"), next_cases(b)),
        "formula" => (
            format!("n=1..={} m=1..={}", b.formula_vars, b.max_clauses),
            formula_cases(b, Variant::I)?,
        ),
        "formula-forced" => (
            format!("n=1..={} m=1..={}", b.formula_vars, b.max_clauses),
            formula_cases(b, Variant::II)?,
        ),
        "force-q" => (ranges("k=0..n-1"), force_q_cases(b)),
        "pass" => (ranges("k=0..n-1"), pass_cases(b)),
        "align" => (ranges("k=0..n-1 y=all 64"), align_cases(b)),
        "aligned-word" => (format!("n=1..={} {k1k2} y=all 64", b.guard_vars), aligned_word_cases(b)),
        "force-align-block" => (
            format!("n=1..={} {k1k2} y=all 64", b.block_vars),
            force_align_block_cases(b)?,
        ),
        other => {
            return Err(crate::error::contract(format!(
                "unknown claim {other:?}; expected one of {}",
                LEMMA_NAMES.join(", ")
            )))
        }
    };
    Ok(report_from_cases(name, bounds_text, cases, b.cross_check_cap))
}

/// One report per claim in [`LEMMA_NAMES`]. A claim that cannot be checked
/// is reported as failed with the reason, and the others still run.
pub fn verify_gadget_lemmas(bounds: &LemmaBounds) -> Vec<LemmaReport> {
    LEMMA_NAMES
        .iter()
        .map(|name| {
            verify_lemma(name, bounds).unwrap_or_else(|e| LemmaReport {
                name: name.to_string(),
                bounds: String::new(),
                cases: 0,
                cross_checked: 0,
                nodes: 0,
                passed: false,
                counterexample: None,
                detail: format!("refused: {e}"),
            })
        })
        .collect()
}
