//! Sheu's groupoids for quantum projective spaces, quantum 2-spheres and odd
//! quantum spheres, and explicit isomorphisms onto them from the
//! Bohr-Sommerfeld groupoids.

mod elements;
mod maps;
mod verify;

use std::fmt::Debug;
use std::hash::Hash;
use std::marker::PhantomData;

pub use elements::{canonical_tail, SheuF, SheuG, SheuT};
pub use maps::{phi_cp1, phi_cp1_inv, phi_spheres, phi_spheres_inv, phi_standard, phi_standard_inv};
pub use verify::{check_round_trip, image_set, t_window, verify_morphism, MorphismReport};

use crate::ext_int::{ExtInt, Overflow};
use crate::groupoid::{translate, ActionArrow, DiscreteGroupoid, GroupoidError, Point, RestrictedActionGroupoid};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SheuError {
    #[error("outside the domain of the map: {0}")]
    Domain(String),
    #[error("not a member of the target groupoid: {0}")]
    Membership(String),
    #[error(transparent)]
    Overflow(#[from] Overflow),
}

type Space = fn(&[ExtInt]) -> bool;
type Act = fn(&[ExtInt], &[i64]) -> Result<Point, Overflow>;
type Allowed = fn(&[ExtInt], &[i64]) -> bool;
type FnActionGroupoid = RestrictedActionGroupoid<Space, Act, Allowed>;

/// An element type of one of the three families, realized as an arrow of a
/// restricted action groupoid.
pub trait SheuElement: Clone + Eq + Hash + Ord + Debug + Send + Sync {
    fn to_action(&self) -> ActionArrow;
    fn from_action(a: ActionArrow) -> Self;
    /// Dimension of the unit space for parameter `dim`.
    fn unit_dim(dim: usize) -> usize;
    fn build(dim: usize) -> FnActionGroupoid;
}

impl SheuElement for SheuT {
    fn to_action(&self) -> ActionArrow {
        self.into()
    }
    fn from_action(a: ActionArrow) -> Self {
        a.into()
    }
    fn unit_dim(n: usize) -> usize {
        n
    }
    fn build(n: usize) -> FnActionGroupoid {
        FnActionGroupoid::new(n, elements::t_space, translate, elements::t_member)
    }
}

impl SheuElement for SheuG {
    fn to_action(&self) -> ActionArrow {
        self.into()
    }
    fn from_action(a: ActionArrow) -> Self {
        a.into()
    }
    fn unit_dim(_: usize) -> usize {
        2
    }
    fn build(_: usize) -> FnActionGroupoid {
        FnActionGroupoid::new(1, elements::g_space, elements::g_act, elements::g_member)
    }
}

impl SheuElement for SheuF {
    fn to_action(&self) -> ActionArrow {
        self.into()
    }
    fn from_action(a: ActionArrow) -> Self {
        a.into()
    }
    /// `dim` is `n`, the sphere being `S^{2n−1}`.
    fn unit_dim(n: usize) -> usize {
        n - 1
    }
    fn build(n: usize) -> FnActionGroupoid {
        FnActionGroupoid::new(n, elements::f_space, elements::f_act, elements::f_member)
    }
}

/// The groupoid of `E`-elements. For `SheuT` and `SheuF` the parameter is
/// `n`; `SheuG` ignores it.
pub struct SheuGroupoid<E> {
    dim: usize,
    inner: FnActionGroupoid,
    _e: PhantomData<fn() -> E>,
}

impl<E: SheuElement> SheuGroupoid<E> {
    pub fn new(dim: usize) -> Self {
        SheuGroupoid { dim, inner: E::build(dim), _e: PhantomData }
    }
}

impl<E: SheuElement> DiscreteGroupoid for SheuGroupoid<E> {
    type Unit = Point;
    type Arrow = E;

    fn is_unit(&self, x: &Point) -> bool {
        x.len() == E::unit_dim(self.dim) && self.inner.is_unit(x)
    }

    fn is_arrow(&self, g: &E) -> bool {
        let a = g.to_action();
        a.x.len() == E::unit_dim(self.dim) && self.inner.is_arrow(&a)
    }

    fn source(&self, g: &E) -> Point {
        g.to_action().x
    }

    fn target(&self, g: &E) -> Point {
        self.inner.target(&g.to_action())
    }

    fn compose(&self, a: &E, b: &E) -> Result<Option<E>, GroupoidError> {
        Ok(self.inner.compose(&a.to_action(), &b.to_action())?.map(E::from_action))
    }

    fn inverse(&self, g: &E) -> E {
        E::from_action(self.inner.inverse(&g.to_action()))
    }

    fn identity(&self, x: &Point) -> E {
        E::from_action(self.inner.identity(x))
    }
}
