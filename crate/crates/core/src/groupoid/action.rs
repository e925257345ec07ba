use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::{DiscreteGroupoid, GroupoidError};
use crate::ext_int::{ExtInt, Overflow};

pub type Point = SmallVec<[ExtInt; 6]>;
pub type Shift = SmallVec<[i64; 6]>;

/// Arrow `(x, g)` of an action groupoid, from `x` to `x·g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ActionArrow {
    pub x: Point,
    pub g: Shift,
}

/// Coordinatewise translation of `Z̄^n` by `Z^n`, fixing `∞`.
pub fn translate(x: &[ExtInt], g: &[i64]) -> Result<Point, Overflow> {
    x.iter().zip(g).map(|(xi, gi)| xi.checked_add(*gi)).collect()
}

type TranslateFn = fn(&[ExtInt], &[i64]) -> Result<Point, Overflow>;

/// Action groupoid of `Z^d` acting on a predicate-defined subset of `Z̄^n`,
/// cut down to the arrows accepted by `allowed`.
///
/// The closures are: `space(x)` for units, `act(x, g)` for the action and
/// `allowed(x, g)` for arrows. Whether `allowed` is closed under composition
/// and inversion is not checked here; the axiom checker finds out.
pub struct RestrictedActionGroupoid<S, A, R> {
    group_dim: usize,
    space: S,
    act: A,
    allowed: R,
}

impl<S, A, R> RestrictedActionGroupoid<S, A, R>
where
    S: Fn(&[ExtInt]) -> bool,
    A: Fn(&[ExtInt], &[i64]) -> Result<Point, Overflow>,
    R: Fn(&[ExtInt], &[i64]) -> bool,
{
    pub fn new(group_dim: usize, space: S, act: A, allowed: R) -> Self {
        RestrictedActionGroupoid { group_dim, space, act, allowed }
    }

    pub fn group_dim(&self) -> usize {
        self.group_dim
    }

    pub fn act(&self, x: &[ExtInt], g: &[i64]) -> Result<Point, Overflow> {
        (self.act)(x, g)
    }

    pub fn allows(&self, x: &[ExtInt], g: &[i64]) -> bool {
        (self.allowed)(x, g)
    }
}

impl<S, R> RestrictedActionGroupoid<S, TranslateFn, R>
where
    S: Fn(&[ExtInt]) -> bool,
    R: Fn(&[ExtInt], &[i64]) -> bool,
{
    /// `Z^n` translating `Z̄^n`.
    pub fn translation(dim: usize, space: S, allowed: R) -> Self {
        RestrictedActionGroupoid { group_dim: dim, space, act: translate, allowed }
    }
}

impl<S, A, R> DiscreteGroupoid for RestrictedActionGroupoid<S, A, R>
where
    S: Fn(&[ExtInt]) -> bool,
    A: Fn(&[ExtInt], &[i64]) -> Result<Point, Overflow>,
    R: Fn(&[ExtInt], &[i64]) -> bool,
{
    type Unit = Point;
    type Arrow = ActionArrow;

    fn is_unit(&self, x: &Point) -> bool {
        (self.space)(x)
    }

    fn is_arrow(&self, a: &ActionArrow) -> bool {
        a.g.len() == self.group_dim
            && a.g.iter().all(|v| *v != i64::MIN)
            && (self.space)(&a.x)
            && (self.allowed)(&a.x, &a.g)
            && matches!((self.act)(&a.x, &a.g), Ok(y) if (self.space)(&y))
    }

    fn source(&self, a: &ActionArrow) -> Point {
        a.x.clone()
    }

    fn target(&self, a: &ActionArrow) -> Point {
        (self.act)(&a.x, &a.g).expect("target of a valid arrow is representable")
    }

    fn compose(&self, a: &ActionArrow, b: &ActionArrow) -> Result<Option<ActionArrow>, GroupoidError> {
        if (self.act)(&a.x, &a.g)? != b.x {
            return Ok(None);
        }
        let g = a.g.iter().zip(&b.g).map(|(p, q)| p.checked_add(*q).ok_or(Overflow)).collect::<Result<Shift, _>>()?;
        Ok(Some(ActionArrow { x: a.x.clone(), g }))
    }

    fn inverse(&self, a: &ActionArrow) -> ActionArrow {
        ActionArrow { x: self.target(a), g: a.g.iter().map(|v| -v).collect() }
    }

    fn identity(&self, x: &Point) -> ActionArrow {
        ActionArrow { x: x.clone(), g: smallvec::smallvec![0; self.group_dim] }
    }
}
