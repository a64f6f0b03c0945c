//! Three-valued propositional logics built from *normal monotonic* connective
//! tables, mixed strict/tolerant consequence, and split interpolation.
//!
//! The crate provides, in layers:
//!
//! * [`truth`] — the value space `{0, 1/2, 1}`, the sixteen connective
//!   [`Scheme`](truth::Scheme)s obtained by independently choosing one of four
//!   admissible conjunction tables and one of four admissible disjunction
//!   tables (negation is forced);
//! * [`syntax`] — formulas, parsing, canonical printing, and exhaustive
//!   enumeration by depth;
//! * [`semantics`] — valuations, the mixed satisfaction
//!   [`Standard`](semantics::Standard)s (`ss`, `tt`, `st`, `ts`, `ss∩tt`),
//!   validity, and classical validity;
//! * [`clones`] — the clone of truth functions definable from a scheme's
//!   connectives, with definability witnesses, and an exact decision procedure
//!   for the existence of a split interpolant over a fixed shared-atom set;
//! * [`interpolation`] — synthesis and verification of split interpolants for
//!   classically valid single-premise inferences, with blocking-valuation
//!   analysis and machine-checkable failure certificates;
//! * [`classification`] — the full map of which (scheme, standard pair) cells
//!   admit split interpolation, rendered as text/markdown/CSV tables and
//!   backed per cell by either an exhaustive corpus sweep or a certified
//!   counterexample.

pub mod classification;
pub mod clones;
pub mod interpolation;
pub mod semantics;
pub mod syntax;
pub mod truth;

pub use semantics::{Inference, Standard, Valuation};
pub use syntax::{Atom, Formula};
pub use truth::{ConnChoice, Scheme, TruthValue};
