use serde::{Deserialize, Serialize};
use smallvec::smallvec;

use crate::ext_int::{ExtInt, Overflow};
use crate::groupoid::{ActionArrow, Point, Shift};

/// Forces every coordinate after the first `∞` to `∞`.
pub fn canonical_tail(k: &mut [ExtInt]) {
    if let Some(i) = k.iter().position(|v| !v.is_finite()) {
        k[i..].fill(ExtInt::Infinity);
    }
}

fn first_infinite(k: &[ExtInt]) -> Option<usize> {
    k.iter().position(|v| !v.is_finite())
}

fn nonnegative(k: &[ExtInt]) -> bool {
    k.iter().all(|v| *v >= ExtInt::Fin(0))
}

pub(crate) fn is_canonical(k: &[ExtInt]) -> bool {
    match first_infinite(k) {
        Some(i) => k[i..].iter().all(|v| !v.is_finite()),
        None => true,
    }
}

/// Translation `k ↦ k + j` of the first `k.len()` coordinates.
pub(crate) fn add(k: &[ExtInt], j: &[i64]) -> Result<Point, Overflow> {
    k.iter().zip(j).map(|(a, b)| a.checked_add(*b)).collect()
}

/// Element `(j; k)` of Sheu's groupoid for `CP_n` at `t = 0`: an arrow from
/// `k` to `k + j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SheuT {
    pub j: Shift,
    pub k: Point,
}

impl SheuT {
    pub fn canonical(mut self) -> Self {
        canonical_tail(&mut self.k);
        self
    }

    /// Membership of this representative, canonical or not.
    pub fn is_member(&self) -> bool {
        t_member(&self.k, &self.j)
    }
}

pub(crate) fn t_space(k: &[ExtInt]) -> bool {
    nonnegative(k) && is_canonical(k)
}

pub(crate) fn t_member(k: &[ExtInt], j: &[i64]) -> bool {
    if k.len() != j.len() || !nonnegative(k) {
        return false;
    }
    match add(k, j) {
        Ok(tgt) if nonnegative(&tgt) => {}
        _ => return false,
    }
    for (i, ki) in k.iter().enumerate() {
        if !ki.is_finite() {
            let head: Option<i64> = j[..=i].iter().try_fold(0i64, |s, v| s.checked_add(*v));
            if head != Some(0) || j[i + 1..].iter().any(|v| *v != 0) {
                return false;
            }
        }
    }
    true
}

impl From<&SheuT> for ActionArrow {
    fn from(e: &SheuT) -> Self {
        ActionArrow { x: e.k.clone(), g: e.j.clone() }
    }
}

impl From<ActionArrow> for SheuT {
    fn from(a: ActionArrow) -> Self {
        SheuT { j: a.g, k: a.x }
    }
}

/// Element `(j, j, k_1, k_2)` of the quantum-sphere groupoid; at least one
/// of `k_1, k_2` is infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SheuG {
    pub j: i64,
    pub k1: ExtInt,
    pub k2: ExtInt,
}

impl SheuG {
    pub fn is_member(&self) -> bool {
        g_member(&[self.k1, self.k2], &[self.j])
    }
}

pub(crate) fn g_space(k: &[ExtInt]) -> bool {
    k.len() == 2 && nonnegative(k) && (!k[0].is_finite() || !k[1].is_finite())
}

pub(crate) fn g_act(k: &[ExtInt], j: &[i64]) -> Result<Point, Overflow> {
    Ok(smallvec![k[0].checked_add(j[0])?, k[1].checked_add(j[0])?])
}

pub(crate) fn g_member(k: &[ExtInt], j: &[i64]) -> bool {
    j.len() == 1 && g_space(k) && matches!(g_act(k, j), Ok(t) if g_space(&t))
}

impl From<&SheuG> for ActionArrow {
    fn from(e: &SheuG) -> Self {
        ActionArrow { x: smallvec![e.k1, e.k2], g: smallvec![e.j] }
    }
}

impl From<ActionArrow> for SheuG {
    fn from(a: ActionArrow) -> Self {
        SheuG { j: a.g[0], k1: a.x[0], k2: a.x[1] }
    }
}

/// Element `(z; x; w)` of Sheu's groupoid for the odd sphere `S^{2n−1}`:
/// an arrow from `w` to `w + x`, with the extra circle winding `z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SheuF {
    pub z: i64,
    pub x: Shift,
    pub w: Point,
}

impl SheuF {
    pub fn canonical(mut self) -> Self {
        canonical_tail(&mut self.w);
        self
    }

    pub fn is_member(&self) -> bool {
        let mut g: Shift = smallvec![self.z];
        g.extend_from_slice(&self.x);
        f_member(&self.w, &g)
    }
}

pub(crate) fn f_space(w: &[ExtInt]) -> bool {
    nonnegative(w) && is_canonical(w)
}

/// The group element packs `(z, x_1, …, x_{n−1})`; `z` does not move `w`.
pub(crate) fn f_act(w: &[ExtInt], g: &[i64]) -> Result<Point, Overflow> {
    add(w, &g[1..])
}

pub(crate) fn f_member(w: &[ExtInt], g: &[i64]) -> bool {
    if g.len() != w.len() + 1 || !nonnegative(w) {
        return false;
    }
    let (z, x) = (g[0], &g[1..]);
    match f_act(w, g) {
        Ok(t) if nonnegative(&t) => {}
        _ => return false,
    }
    if let Some(i) = first_infinite(w) {
        let total = x.iter().try_fold(0i64, |s, v| s.checked_add(*v));
        if total.and_then(|s| s.checked_add(z)) != Some(0) || x[i + 1..].iter().any(|v| *v != 0) {
            return false;
        }
    }
    true
}

impl From<&SheuF> for ActionArrow {
    fn from(e: &SheuF) -> Self {
        let mut g: Shift = smallvec![e.z];
        g.extend_from_slice(&e.x);
        ActionArrow { x: e.w.clone(), g }
    }
}

impl From<ActionArrow> for SheuF {
    fn from(a: ActionArrow) -> Self {
        SheuF { z: a.g[0], x: Shift::from_slice(&a.g[1..]), w: a.x }
    }
}
