//! Regular languages and density languages of automata collections.
//!
//! Finite collections of DFAs get an exact regular construction: the
//! [majority product](majority_product) recognizes the strings accepted by
//! more than half of the components. Infinite collections are handled per
//! string through [`LanguageFamily`] certificates; the built-in cumulative
//! `0ⁿ1ⁿ` family has a density language that is not regular, which
//! [`nerode_evidence`] exhibits at desk scale.

mod dfa;
mod family;
mod nerode;
mod nfa;
mod product;
mod regex;

pub use dfa::Dfa;
pub use family::{
    density_language_membership, strings_up_to, DensityMembership, LanguageFamily,
    LanguageFamilyKind,
};
pub use nerode::{nerode_evidence, NerodeEvidence};
pub use product::{intersection_language, majority_product, product_automaton, DEFAULT_MAX_STATES};
pub use regex::{regex_parse, regex_to_dfa, Regex};
