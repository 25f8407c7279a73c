//! Computation in free lattices and finite lattices.

pub mod bhom;
pub mod enumerate;
pub mod error;
pub mod finlat;
pub mod idealdm;
pub mod parse;
pub mod random;
pub mod term;
pub mod verifier;
pub mod whitman;

pub use bhom::{
    alpha, beta, class_of, classify_element, coherent_sequence, compare_coherent, eval_hom, is_lower_bounded,
    is_upper_bounded, kernel_table, ClassTable, CoherentSequence, Comparison, Hom, Tower,
};
pub use enumerate::{canonical_terms, canonical_terms_of_size, enumerate_terms};
pub use error::{Error, Result};
pub use finlat::{FiniteLattice, FinitePoset, JoinCover, LawCheck};
pub use parse::{parse_term, print_term};
pub use term::{GeneratorSet, Node, Op, Term};
pub use verifier::{
    check_pi3_in_f3, search_pi3_in_f4, separate_terms, verify_figure1, verify_figure2, verify_figure3,
    Report, Status,
};
pub use whitman::{
    canonical_form, ci_check, equal, fixed_point_search, generates_free, in_interval, is_doubly_prime, leq,
    ni_predicate, Interval, TripleIntervals,
};
