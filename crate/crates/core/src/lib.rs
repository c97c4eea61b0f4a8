//! Pile-shuffle sorting on queues and stacks, the chain automata that
//! certify sortability, and reductions from SAT to sort feasibility.

pub mod algebra;
pub mod chain;
pub mod error;
pub mod gadgets;
pub mod perm;
pub mod reduction;
pub mod shuffle;
pub mod verifier;

pub use algebra::{
    compose_fold, compose_pair, compose_schedule, devirtualize_assignments, dual_word, invert_word,
    multi_round_sort, virtualize_assignments, ScheduleComposition, VirtualAssignment,
};
pub use chain::{build_chain, verify_arrow, BeatCoordinate, ChainAutomaton, EndPredicate};
pub use error::{Error, Result};
pub use gadgets::{build_formula, clause_word, gadget, Variant};
pub use perm::{
    change_profile, parse_permutation, realize_permutation, Change, ChangeProfile, Convention,
    Permutation,
};
pub use shuffle::{
    check_sort, dealer_choice_single, minimal_sort, shuffle_multi, shuffle_once, PileAssignment,
    PileType, TypeSchedule, TypeWord,
};
pub use reduction::{
    decode_assignment, parse_dimacs, reduce, reduce_to_sort, witness_schedule, ChainQuestion, CnfFormula,
    FactoredFamily, RoundSpec, SortQuestion, TruthAssignment,
};
pub use verifier::{
    check_reduction_equivalence, decide_feasibility, sat_brute_force, verify_gadget_lemmas, LemmaBounds,
    LemmaReport, Strategy,
};
