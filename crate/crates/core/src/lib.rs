//! Cellular automata over groups.
//!
//! A cellular automaton over a group `G` with alphabet `A` can be given
//! two ways: as a global map `T: A^G → A^G` determined by a finite memory
//! set and a local defining function, or as a uniformly continuous local
//! function `f: A^G → A` composed with the ∗-operation
//! `(f1∗f2)(x) = f1((f2(g⁻¹·x))_g)`. The two descriptions form isomorphic
//! monoids, and this crate implements both sides concretely enough that
//! the isomorphism, the minimal-memory-set construction, the
//! entourage-level proof steps behind it, and the subshift-restricted
//! variant can all be checked mechanically at desk scale.
//!
//! ```
//! use gca::{builtin, minimize};
//!
//! // Composing xor with itself symbolically gives the second
//! // difference; its middle coordinate is dead and minimization
//! // removes it.
//! let xor = builtin("xor")?;
//! let square = xor.star(&xor)?;
//! let canonical = minimize(&square)?;
//! assert_eq!(canonical.rule().memory().to_string(), "[0],[2]");
//! assert_eq!(canonical.rule().table(), &[0, 1, 1, 0]);
//!
//! // The same composite computed by composing the global maps.
//! let global = xor.compose_global(&xor)?;
//! assert!(square.equals(&global)?);
//! # Ok::<(), gca::Error>(())
//! ```
//!
//! Modules:
//! - [`group`]: finite (Cayley table), free abelian and free groups with
//!   exact arithmetic, canonical element orders and ball enumeration.
//! - [`config`]: configurations `x: G → A` in three finite presentations
//!   with the shift action and restriction to patterns.
//! - [`automaton`]: rule tables, global/local evaluation, the symbolic
//!   ∗-composition and the global-composition oracle.
//! - [`memory`]: dependence analysis, minimal memory sets, canonical
//!   forms.
//! - [`uniform`]: entourage calculus over finite groups and the
//!   continuity-based inference of rules from black-box local maps.
//! - [`subshift`]: subshifts of finite type, exact membership, and
//!   composition restricted to a subshift.
//! - [`sample`]: seeded random rules and configurations for the
//!   verification suites.
//! - [`json`]: serde-friendly file forms for groups, rules,
//!   configurations and subshifts.

pub mod automaton;
pub mod config;
mod error;
pub mod group;
pub mod json;
pub mod memory;
pub mod sample;
pub mod subshift;
pub mod uniform;

pub use automaton::{builtin, constant_rule, identity_rule, wolfram, RuleTable, DEFAULT_TABLE_CAP};
pub use config::{
    all_configurations, Alphabet, Configuration, Pattern, Symbol, DEFAULT_CONFIG_CAP,
};
pub use error::{Error, Result};
pub use group::{Family, FiniteSubset, GroupContext, GroupElement};
pub use memory::{depends_on, is_memory_subset, minimize, restrict_rule, CanonicalForm};
