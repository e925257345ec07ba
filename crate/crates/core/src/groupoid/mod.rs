//! Discrete groupoids: the structure-map contract, action groupoids, and
//! checkers for the groupoid axioms and for 1- and 2-cocycles.

mod action;
mod check;
mod cocycle;

use std::fmt::Debug;
use std::hash::Hash;

pub use action::{translate, ActionArrow, Point, RestrictedActionGroupoid, Shift};
pub use check::{
    check_groupoid_axioms, check_left_translation, composable_pairs, composable_triples, AxiomReport, Violation,
};
pub use cocycle::{
    check_cocycle1, check_cocycle2, check_integer_cocycle1, Cocycle1, Cocycle2, CocycleReport, IntegerCocycle1,
    TrivialCocycle,
};

use crate::ext_int::Overflow;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GroupoidError {
    #[error("invalid arrow in input: {0}")]
    InvalidArrow(String),
    #[error("pair is not composable: {0}")]
    NotComposable(String),
    #[error("cocycle value {value} is off the unit circle at {at}")]
    OffCircle { value: f64, at: String },
    #[error(transparent)]
    Overflow(#[from] Overflow),
}

/// A groupoid whose units and arrows are exact value objects.
///
/// `target`, `inverse` and `is_identity` assume their argument satisfies
/// `is_arrow`; validity includes representability of the target and of the
/// inverse, so they never overflow on valid input. Composition of two valid
/// arrows can still leave the integer range, hence the `Result`.
pub trait DiscreteGroupoid {
    type Unit: Clone + Eq + Hash + Ord + Debug + Send + Sync;
    type Arrow: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn is_unit(&self, x: &Self::Unit) -> bool;
    fn is_arrow(&self, g: &Self::Arrow) -> bool;
    fn source(&self, g: &Self::Arrow) -> Self::Unit;
    fn target(&self, g: &Self::Arrow) -> Self::Unit;

    /// `Ok(None)` when `target(a) != source(b)`.
    fn compose(&self, a: &Self::Arrow, b: &Self::Arrow) -> Result<Option<Self::Arrow>, GroupoidError>;

    fn inverse(&self, g: &Self::Arrow) -> Self::Arrow;
    fn identity(&self, x: &Self::Unit) -> Self::Arrow;

    fn is_identity(&self, g: &Self::Arrow) -> bool {
        *g == self.identity(&self.source(g))
    }
}

/// Full subgroupoid on the units accepted by `keep`. The predicate must be
/// invariant under arrows; `is_arrow` requires both ends to satisfy it, so a
/// non-invariant predicate shows up as a closure failure in the checkers.
pub struct Restricted<'a, G, P> {
    pub inner: &'a G,
    pub keep: P,
}

impl<'a, G, P> Restricted<'a, G, P>
where
    G: DiscreteGroupoid,
    P: Fn(&G::Unit) -> bool,
{
    pub fn new(inner: &'a G, keep: P) -> Self {
        Restricted { inner, keep }
    }
}

impl<G, P> DiscreteGroupoid for Restricted<'_, G, P>
where
    G: DiscreteGroupoid,
    P: Fn(&G::Unit) -> bool,
{
    type Unit = G::Unit;
    type Arrow = G::Arrow;

    fn is_unit(&self, x: &G::Unit) -> bool {
        self.inner.is_unit(x) && (self.keep)(x)
    }

    fn is_arrow(&self, g: &G::Arrow) -> bool {
        self.inner.is_arrow(g) && (self.keep)(&self.inner.source(g)) && (self.keep)(&self.inner.target(g))
    }

    fn source(&self, g: &G::Arrow) -> G::Unit {
        self.inner.source(g)
    }

    fn target(&self, g: &G::Arrow) -> G::Unit {
        self.inner.target(g)
    }

    fn compose(&self, a: &G::Arrow, b: &G::Arrow) -> Result<Option<G::Arrow>, GroupoidError> {
        self.inner.compose(a, b)
    }

    fn inverse(&self, g: &G::Arrow) -> G::Arrow {
        self.inner.inverse(g)
    }

    fn identity(&self, x: &G::Unit) -> G::Arrow {
        self.inner.identity(x)
    }
}
