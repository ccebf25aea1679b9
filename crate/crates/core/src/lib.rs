//! String-rewriting workbench.
//!
//! The crate works with finite string-rewriting systems over small
//! alphabets and bundles the tools needed to study the monoid they present:
//!
//! - [`rewriting`]: rules, normal forms, critical pairs and a completeness
//!   certificate (shortlex termination plus joinability).
//! - [`automata`]: regex and factor-avoidance DFAs, products, Hopcroft
//!   minimization, equivalence with counterexamples, counting, enumeration.
//! - [`greens`]: bounded searches for one-sided inverses, J-witnesses
//!   `p · w · q = 1`, and product-avoidance probes.
//! - [`congruence`]: congruence closure on the ball of short normal forms.
//! - [`coset`]: Todd–Coxeter enumeration of the maximal group image.
//! - [`cli`]: the `rws-lab` command line.
//!
//! [`builtin`] embeds the case study `cm-monoid`, presented by
//! `e³ → e, xey → y, xe²y → x, xy → 1`.
//!
//! ```
//! use rws_lab::builtin;
//!
//! let m = builtin::cm_monoid();
//! let w = m.parse_word("x e e y y").unwrap();
//! assert!(m.normalize(&w).is_empty());
//! assert!(m.check_complete().complete());
//! ```

pub mod alphabet;
pub mod automata;
pub mod builtin;
pub mod cli;
pub mod congruence;
pub mod coset;
pub mod greens;
pub mod rewriting;

pub use alphabet::{Alphabet, Symbol, Word};
pub use rewriting::{parse_system, CompleteSystem, RewritingSystem, Rule};
