//! Clones of pigmented words and their quotients.
//!
//! A pigmented word is a sequence of letters `i^α` where `i` is an input
//! position and `α` an element of a pigment monoid. Words form a clone under
//! superposition; quotients of that clone by the congruences built from
//! sorting and from keeping the first `k` occurrences of each value give
//! normal-form solutions to the word problem of several varieties of monoids
//! (left-regular bands, regular bands, bounded semilattices, ...).

pub mod clone;
pub mod error;
pub mod monoid;
pub mod normalize;
pub mod suite;
pub mod term;
pub mod word;

pub use clone::{
    clone_superpose, dims, enumerate_classes, equiv, equiv_by_key, fiber_key, normal_form,
    term_equiv, CloneId, Dim, Variety,
};
pub use error::{Error, Result};
pub use monoid::{MonoidElement, MonoidMorphism, MonoidSpec, MorphismRule};
pub use suite::{check_congruence_with, check_suite, Budget, Report, Suite};
pub use term::{compose, frontier, right_comb, Node, Term};
pub use word::{act, map_pigments, projection, reverse, superpose, Letter, Word};
