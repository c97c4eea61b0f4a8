use std::fs;
use std::io::{self, Read as _};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pileshuffle::chain::BeatCoordinate;
use pileshuffle::gadgets::{key_word, GADGET_NAMES};
use pileshuffle::reduction::sort_to_chain;
use pileshuffle::verifier::{
    verify_lemma, DEFAULT_LEMMA_CAP, DEFAULT_SAT_LIMIT, DEFAULT_SCHEDULE_CAP, LEMMA_NAMES,
};
use pileshuffle::{
    check_reduction_equivalence, compose_fold, compose_schedule, dealer_choice_single,
    decide_feasibility, decode_assignment, gadget, minimal_sort, multi_round_sort, parse_dimacs,
    parse_permutation, reduce, reduce_to_sort, sat_brute_force, shuffle_once, ChainQuestion, ChangeProfile,
    CnfFormula, Convention, Error, FactoredFamily, LemmaBounds, PileAssignment, SortQuestion, Strategy,
    TypeSchedule, TypeWord, Variant,
};

const GRAMMARS: &str = "\
Text grammars:
  permutation  labels 1..n separated by whitespace, e.g. \"4 8 7 5 3 1 2 6\".
               A single token of 2 to 9 digits is read one digit per label
               (\"48753126\"). By default the list is pi(1) .. pi(n), the
               position of each label; --deck reads it as the deck from top
               to bottom instead.
  typeword     contiguous string over {q,s}: q = queue, s = stack, e.g. qsq.
  schedule     typewords separated by '\\', one per round, e.g. qqqqss\\qsq\\q.
  profile      contiguous string over {a,d}, the ascents and descents
               between consecutive labels, e.g. addddaa. May be empty.
  family       round specs separated by '\\'. A round spec is one of
                 <typeword>        that exact word
                 A^<k>             any typeword of length k (A<k> also accepted)
                 <typeword>^<k>    the word repeated k times
               or several of these joined by '+', concatenated within the
               round. Example: qqqqss\\A^3\\A^2.
  coordinate   zero-based components separated by '\\', innermost first,
               e.g. 5\\2 on widths (6, w) is flat state 5 + 6*2.
  DIMACS       'c' comment lines, one 'p cnf <vars> <clauses>' header, then
               clauses as nonzero literals ending in 0, possibly spanning
               lines. A line starting with '%' ends the input. Empty
               clauses are rejected. '-' as a file name reads stdin.
  question     two lines, 'family <family>' and 'profile <profile>' (chain
               question) or 'family <family>' and 'perm <permutation>'
               (sort question, embedding convention). Blank lines and '#'
               comments are ignored.

Output is one key=value pair per line. Exit status: 0 on success, feasible
or pass; 1 on infeasible, rejected, unsatisfiable or fail; 2 on usage or
input errors and when an enumeration would exceed its cap.";

#[derive(Parser)]
#[command(name = "pileshuffle", version, about = "Sorting with queue and stack piles, chain automata, and SAT reductions")]
#[command(after_long_help = GRAMMARS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Deal a permutation onto typed piles and collect them once.
    Shuffle {
        #[command(flatten)]
        perm: PermArg,
        #[arg(long)]
        types: TypeWord,
        /// 1-based pile of each label, in label order.
        #[arg(long)]
        piles: String,
    },
    /// Minimal sort on fixed pile types, or fewest piles when types are free.
    Sort {
        #[command(flatten)]
        perm: PermArg,
        /// Pile types, or a schedule of several rounds; omit to let the
        /// dealer choose them.
        #[arg(long)]
        types: Option<TypeSchedule>,
        /// Pile limit for the dealer's choice (default: the deck size).
        #[arg(long, conflicts_with = "types")]
        max_piles: Option<usize>,
    },
    /// Compose the rounds of a schedule into one virtual typeword.
    Compose {
        /// Typewords, or one schedule with '\' between rounds.
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Run the chain automaton of a typeword or schedule.
    Chain {
        #[command(subcommand)]
        action: ChainAction,
    },
    /// Print a word of the gadget lexicon.
    Gadget {
        /// Lexicon name; `key` prints the key typeword.
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Print the formula profile of a DIMACS formula.
    Formula {
        #[command(flatten)]
        input: ReductionInput,
    },
    /// Reduce a DIMACS formula to a chain (or sort) question.
    Reduce {
        #[command(flatten)]
        input: ReductionInput,
        #[arg(long)]
        to_sort: bool,
    },
    /// Read the assignment back out of an accepting schedule.
    Decode {
        #[arg(long)]
        variant: Variant,
        #[arg(long)]
        witness: TypeSchedule,
        /// Number of variables of the formula.
        #[arg(long)]
        vars: usize,
    },
    /// Search a family of schedules for one that sorts.
    Decide {
        #[arg(long, required_unless_present = "question", conflicts_with = "question")]
        profile: Option<ChangeProfile>,
        #[arg(long, required_unless_present = "question", conflicts_with = "question")]
        family: Option<FactoredFamily>,
        /// A question file as printed by `reduce`.
        #[arg(long)]
        question: Option<String>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Machine checks of the gadget claims and the reductions.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Brute-force satisfiability of a DIMACS formula.
    Sat {
        #[arg(long)]
        cnf: String,
        #[arg(long, default_value_t = DEFAULT_SAT_LIMIT)]
        max_vars: usize,
    },
}

#[derive(Args)]
struct PermArg {
    #[arg(long)]
    perm: String,
    /// Read --perm as the deck from top to bottom.
    #[arg(long)]
    deck: bool,
}

impl PermArg {
    fn parse(&self) -> Result<pileshuffle::Permutation, Error> {
        let convention = if self.deck { Convention::Sequence } else { Convention::Embedding };
        parse_permutation(&self.perm, convention)
    }
}

#[derive(Args)]
struct ReductionInput {
    #[arg(long)]
    variant: Variant,
    #[arg(long)]
    cnf: String,
    /// Key word repetitions for variant V (default: the smallest that fits).
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value = "structured")]
    strategy: Strategy,
    /// Most schedules (naive) or prefixes (structured) to enumerate.
    #[arg(long, default_value_t = DEFAULT_SCHEDULE_CAP)]
    cap: u128,
}

#[derive(Subcommand)]
enum ChainAction {
    /// Whether the chain accepts a profile.
    Accept { word: TypeSchedule, profile: ChangeProfile },
    /// The state after every profile symbol.
    Trace {
        word: TypeSchedule,
        profile: ChangeProfile,
        /// Start state, flat or as a coordinate.
        #[arg(long, default_value = "0")]
        start: BeatCoordinate,
    },
    /// The transition table.
    Table { word: TypeSchedule },
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// Check the gadget claims over bounded parameter ranges.
    Lemmas {
        /// Use N for every per-variable bound.
        #[arg(long)]
        bound: Option<usize>,
        /// Check only these claims (repeatable).
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(LEMMA_NAMES))]
        only: Vec<String>,
        /// Cases with at most this many chains are also checked chain by chain.
        #[arg(long, default_value_t = DEFAULT_LEMMA_CAP)]
        cross_check_cap: u128,
    },
    /// Check that a reduction preserves satisfiability on one formula.
    Reduction {
        #[arg(long)]
        variant: Variant,
        #[arg(long)]
        cnf: String,
        #[command(flatten)]
        search: SearchArgs,
    },
}

/// How a successful run ended.
enum Verdict {
    Yes,
    No,
}

fn flag(b: bool) -> Verdict {
    if b {
        Verdict::Yes
    } else {
        Verdict::No
    }
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn read_cnf(path: &str) -> Result<CnfFormula, String> {
    parse_dimacs(&read_input(path)?).map_err(|e| format!("{path}: {e}"))
}

fn schedule_of(words: &[String]) -> Result<TypeSchedule, Error> {
    words.join("\\").parse()
}

fn coordinate(state: usize, widths: &[usize]) -> String {
    match BeatCoordinate::from_flat(state, widths) {
        Ok(c) => c.to_string(),
        Err(_) => "sink".to_string(),
    }
}

fn run(command: Command) -> Result<Verdict, String> {
    let e = |e: Error| e.to_string();
    match command {
        Command::Shuffle { perm, types, piles } => {
            let perm = perm.parse().map_err(e)?;
            let piles = parse_piles(&piles)?;
            let out = shuffle_once(&perm, &types, &piles).map_err(e)?;
            println!("result={out}");
            println!("deck={}", join(&out.deck_order()));
            println!("sorted={}", out.is_identity());
            Ok(Verdict::Yes)
        }
        Command::Sort { perm, types, max_piles } => {
            let perm = perm.parse().map_err(e)?;
            match types {
                Some(schedule) if schedule.len() > 1 => {
                    let found = multi_round_sort(&perm, &schedule);
                    println!("sortable={}", found.is_some());
                    for (t, p) in found.iter().flatten().enumerate() {
                        println!("round{}={}", t + 1, join(p.piles()));
                    }
                    Ok(flag(found.is_some()))
                }
                Some(schedule) => {
                    let found = minimal_sort(&perm, &schedule.rounds()[0]);
                    println!("sortable={}", found.is_some());
                    if let Some(p) = &found {
                        println!("minimal_sort={}", join(p.piles()));
                        println!("piles_used={}", p.piles().last().copied().unwrap_or(0));
                    }
                    Ok(flag(found.is_some()))
                }
                None => {
                    let limit = max_piles.unwrap_or(perm.len().max(1));
                    let found = dealer_choice_single(&perm, limit);
                    println!("sortable={}", found.is_some());
                    if let Some((x, p)) = &found {
                        println!("types={x}");
                        println!("piles={}", join(p.piles()));
                        println!("piles_used={}", x.len());
                    }
                    Ok(flag(found.is_some()))
                }
            }
        }
        Command::Compose { words } => {
            let schedule = schedule_of(&words).map_err(e)?;
            let comp = compose_schedule(&schedule);
            println!("rounds={}", schedule.len());
            println!("widths={}", join(&schedule.widths()));
            println!("virtual={}", comp.virtual_types());
            println!("virtual_piles={}", comp.virtual_types().len());
            Ok(Verdict::Yes)
        }
        Command::Chain { action } => run_chain(action),
        Command::Gadget { name, list } => {
            if list {
                println!("key");
                for n in GADGET_NAMES {
                    println!("{n}");
                }
                return Ok(Verdict::Yes);
            }
            let name = name.expect("required unless --list");
            let word = if name == "key" {
                key_word().to_string()
            } else {
                gadget(&name)
                    .ok_or_else(|| format!("unknown gadget {name:?}; try --list"))?
                    .to_string()
            };
            println!("name={name}");
            println!("length={}", word.len());
            println!("word={word}");
            Ok(Verdict::Yes)
        }
        Command::Formula { input } => {
            let f = read_cnf(&input.cnf)?;
            let q = reduce(input.variant, &f, input.k).map_err(e)?;
            println!("variant={}", input.variant);
            println!("vars={}", f.num_vars());
            println!("clauses={}", f.num_clauses());
            println!("length={}", q.profile.len());
            println!("profile={}", q.profile);
            Ok(Verdict::Yes)
        }
        Command::Reduce { input, to_sort } => {
            let f = read_cnf(&input.cnf)?;
            let q = reduce(input.variant, &f, input.k).map_err(e)?;
            if to_sort {
                println!("{}", reduce_to_sort(&q));
            } else {
                println!("{q}");
            }
            Ok(Verdict::Yes)
        }
        Command::Decode { variant, witness, vars } => {
            let x = decode_assignment(variant, &witness, vars).map_err(e)?;
            println!("assignment={x}");
            Ok(Verdict::Yes)
        }
        Command::Decide { profile, family, question, search } => {
            let (question, perm) = match question {
                Some(path) => read_question(&path)?,
                None => (
                    ChainQuestion {
                        profile: profile.expect("required without --question"),
                        family: family.expect("required without --question"),
                    },
                    None,
                ),
            };
            let found = decide_feasibility(&question, search.strategy, search.cap).map_err(e)?;
            println!("strategy={}", search.strategy);
            println!("feasible={}", found.is_some());
            if let Some(w) = &found {
                println!("witness={w}");
                println!("virtual={}", compose_fold(w));
                if let Some(perm) = perm {
                    // replay the witness on the realized deck
                    let sorted = multi_round_sort(&perm, w).is_some();
                    println!("replayed={sorted}");
                    if !sorted {
                        return Err(format!("witness {w} does not sort the permutation"));
                    }
                }
            }
            Ok(flag(found.is_some()))
        }
        Command::Verify { target } => run_verify(target),
        Command::Sat { cnf, max_vars } => {
            let f = read_cnf(&cnf)?;
            let found = sat_brute_force(&f, max_vars).map_err(e)?;
            println!("vars={}", f.num_vars());
            println!("clauses={}", f.num_clauses());
            println!("satisfiable={}", found.is_some());
            if let Some(x) = &found {
                println!("assignment={x}");
            }
            Ok(flag(found.is_some()))
        }
    }
}

fn run_chain(action: ChainAction) -> Result<Verdict, String> {
    let e = |e: Error| e.to_string();
    match action {
        ChainAction::Accept { word, profile } => {
            let x = compose_fold(&word);
            let chain = pileshuffle::build_chain(&x).map_err(e)?;
            let end = chain.run_word(0, &profile).map_err(e)?;
            println!("states={}", chain.state_count());
            println!("end={end}");
            println!("end_coordinate={}", coordinate(end, &word.widths()));
            println!("accepted={}", chain.is_accepting(end));
            Ok(flag(chain.is_accepting(end)))
        }
        ChainAction::Trace { word, profile, start } => {
            let widths = word.widths();
            let chain = pileshuffle::build_chain(&compose_fold(&word)).map_err(e)?;
            let start = if start.components().len() == 1 {
                start.components()[0]
            } else {
                start.to_flat(&widths).map_err(e)?
            };
            let states = chain.trace(start, &profile).map_err(e)?;
            println!("step symbol state coordinate");
            for (t, &k) in states.iter().enumerate() {
                let symbol = if t == 0 { '-' } else { profile.symbols()[t - 1].as_char() };
                println!("{t} {symbol} {k} {}", coordinate(k, &widths));
            }
            let end = *states.last().expect("trace has the start");
            println!("end={end}");
            println!("accepted={}", chain.is_accepting(end));
            Ok(Verdict::Yes)
        }
        ChainAction::Table { word } => {
            let chain = pileshuffle::build_chain(&compose_fold(&word)).map_err(e)?;
            let widths = word.widths();
            println!("state type on_a on_d accepting coordinate");
            for line in chain.to_string().lines() {
                let k: usize = line.split(' ').next().and_then(|t| t.parse().ok()).unwrap_or(0);
                println!("{line} {}", coordinate(k, &widths));
            }
            Ok(Verdict::Yes)
        }
    }
}

fn run_verify(target: VerifyTarget) -> Result<Verdict, String> {
    match target {
        VerifyTarget::Lemmas { bound, only, cross_check_cap } => {
            let mut bounds = bound.map(LemmaBounds::uniform).unwrap_or_default();
            bounds.cross_check_cap = cross_check_cap;
            let names: Vec<&str> = if only.is_empty() {
                LEMMA_NAMES.to_vec()
            } else {
                LEMMA_NAMES.iter().copied().filter(|n| only.iter().any(|o| o == n)).collect()
            };
            let mut failed = 0;
            for name in &names {
                let r = verify_lemma(name, &bounds).map_err(|e| format!("{name}: {e}"))?;
                let result = if r.passed { "pass" } else { "fail" };
                println!(
                    "lemma={} result={result} cases={} cross_checked={} nodes={} bounds={}",
                    r.name, r.cases, r.cross_checked, r.nodes, r.bounds
                );
                if !r.passed {
                    failed += 1;
                    if let Some(c) = &r.counterexample {
                        println!("counterexample={c}");
                    }
                    if !r.detail.is_empty() {
                        println!("detail={}", r.detail);
                    }
                }
            }
            println!("checked={}", names.len());
            println!("failed={failed}");
            Ok(flag(failed == 0))
        }
        VerifyTarget::Reduction { variant, cnf, search } => {
            let f = read_cnf(&cnf)?;
            let r = check_reduction_equivalence(variant, &f, search.strategy, search.cap)
                .map_err(|e| e.to_string())?;
            println!("variant={}", r.variant);
            println!("scope={}", r.scope);
            println!("strategy={}", search.strategy);
            println!("satisfiable={}", r.satisfying.is_some());
            if let Some(x) = &r.satisfying {
                println!("assignment={x}");
            }
            println!("feasible={}", r.witness.is_some());
            if let Some(w) = &r.witness {
                println!("witness={w}");
            }
            if let Some(x) = &r.decoded {
                println!("decoded={x}");
            }
            println!("result={}", if r.passed { "pass" } else { "fail" });
            if !r.detail.is_empty() {
                println!("detail={}", r.detail);
            }
            Ok(flag(r.passed))
        }
    }
}

fn read_question(path: &str) -> Result<(ChainQuestion, Option<pileshuffle::Permutation>), String> {
    let text = read_input(path)?;
    if text.lines().any(|l| l.trim_start().starts_with("perm")) {
        let q: SortQuestion = text.parse().map_err(|e: Error| format!("{path}: {e}"))?;
        Ok((sort_to_chain(&q), Some(q.permutation)))
    } else {
        let q: ChainQuestion = text.parse().map_err(|e: Error| format!("{path}: {e}"))?;
        Ok((q, None))
    }
}

fn parse_piles(text: &str) -> Result<PileAssignment, String> {
    text.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| format!("not a pile index: {t:?}")))
        .collect::<Result<Vec<_>, _>>()
        .map(PileAssignment::new)
}

fn join(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error={message}");
            ExitCode::from(2)
        }
    }
}
