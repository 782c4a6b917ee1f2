//! Set-theoretic solutions of the Yang-Baxter equation and the Garside
//! structure of their structure monoids.
//!
//! A solution on `{x1, .., xn}` is given by two families of permutations,
//! `S(i,j) = (g_i(j), f_j(i))`. For involutive braided solutions the
//! structure monoid is Garside: this crate computes its complements by word
//! reversing, its Garside element and simples, Δ-purity and the exponent, and
//! goes back from a tableau presentation to the solution.

pub mod cli;
pub mod converse;
pub mod enumeration;
pub mod error;
pub mod examples;
pub mod format;
pub mod garside;
pub mod perm;
pub mod permutation_solution;
pub mod presentation;
pub mod reversing;
pub mod solution;
pub mod word;

pub use converse::{is_square_free_presentation, solution_from_presentation};
pub use enumeration::{classify, enumerate_solutions, CensusRow};
pub use error::{ConditionViolation, Error, Result};
pub use garside::{check_garside_conditions, garside_element, GarsideConditions, GarsideMonoid, GarsideReport};
pub use perm::Permutation;
pub use permutation_solution::{
    permutation_delta, quotient, quotient_group_consistency, s_power, PermutationSolution, Quotient,
};
pub use presentation::{presentation_of, t_isomorphic, Relation, RelationKind, TableauPresentation};
pub use reversing::{reverse, right_lcm_words, word_equal, Reversal};
pub use solution::{solutions_isomorphic, SetSolution, ValidationReport};
pub use word::Word;
