//! Finite and symbolic effect algebras.
//!
//! The crate validates partial sum tables against the effect algebra axioms,
//! decides orthoalgebra / orthomodular / lattice structure, and studies state
//! spaces with exact rational linear programming. The [`symbolic`] module
//! carries a handful of infinite set-system algebras with self-certifying
//! refutation witnesses, and [`enumerate`] produces every small algebra up to
//! isomorphism for exhaustive implication checks.

pub mod algebra;
pub mod classify;
pub mod concrete;
pub mod dot;
pub mod enumerate;
pub mod format;
pub mod harness;
pub mod lp;
pub mod rational;
pub mod states;
pub mod symbolic;

pub use algebra::{validate, Axiom, EffectAlgebra, ElementId, SumTable, Violation};
pub use classify::{classify, ClassificationReport, Property};
pub use concrete::SetSystem;
pub use rational::Rational;
pub use states::{State, StateSpace};

/// Outcome of a property check: either it holds, or it fails with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(w) => Verdict::Fails(f(w)),
        }
    }
}
