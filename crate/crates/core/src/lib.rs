//! Finite groups and the cut property of their integral group rings.
//!
//! A finite group `G` has the *cut* property when the only central units of
//! the integral group ring `Z[G]` are the trivial ones, `±g` with `g` in the
//! center of `G`. This holds exactly when every element `x` and every `j`
//! coprime to the order of `x` satisfy `x^j ∼ x` or `x^j ∼ x⁻¹`, which is a
//! finite check on conjugacy classes.
//!
//! ```
//! use cutlab::{construct, decide_cut, GroupSpec};
//!
//! // ⟨a, b | a^12, b^2, b⁻¹ab = a^5⟩
//! let g = construct(&GroupSpec::metacyclic(12, 2, 5)).unwrap();
//! assert_eq!(g.order(), 24);
//! assert!(decide_cut(&g).has_cut);
//! ```
//!
//! The crate is organized as follows:
//!
//! * [`group`]: indexed finite groups, conjugacy classes, subgroups,
//!   quotients and direct products.
//! * [`structure`]: derived and lower central series, solvability,
//!   nilpotency, Sylow subgroups of nilpotent groups.
//! * [`constructors`]: [`GroupSpec`] recipes and the families they build.
//! * [`cut`]: the cut decision, its brute-force oracle, and classification
//!   labels.
//! * [`characterizations`]: closed-form criteria for the cut property on
//!   special classes of groups, each checked against the decider.
//! * [`corpus`]: a built-in corpus and the batch runner.
//! * [`io`]: spec-file parsing and report rendering.

pub mod arith;
pub mod characterizations;
pub mod constructors;
pub mod corpus;
pub mod cut;
pub mod error;
pub mod group;
pub mod io;
pub mod structure;

pub use constructors::{construct, construct_with, GroupSpec};
pub use cut::{classify, decide_cut, decide_cut_bruteforce, Classification, CutVerdict, Witness};
pub use error::{Error, Result};
pub use group::{ConjugacyPartition, FiniteGroup, Limits, Subgroup};
pub use structure::{structural_profile, StructuralProfile};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/groups.md")]
    struct Groups;
    #[doc = include_str!("../../../book/src/cut-criterion.md")]
    struct CutCriterion;
    #[doc = include_str!("../../../book/src/characterizations.md")]
    struct Characterizations;
    #[doc = include_str!("../../../book/src/corpus-and-cli.md")]
    struct CorpusAndCli;
}
