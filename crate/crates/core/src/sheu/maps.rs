//! The isomorphisms onto Sheu's groupoids. Levels `q` read `Below(m)` as `m`
//! and `At` as `∞`; shifts `p` are taken verbatim.

use smallvec::smallvec;

use super::elements::canonical_tail;
use super::{SheuError, SheuF, SheuG, SheuT};
use crate::bs::{ArrowLeaf, BranchCoord, Params, Shifts, UnitLeaf};
use crate::ext_int::{ExtInt, Overflow};
use crate::groupoid::{Point, Shift};

fn diff(v: &[i64]) -> Result<Shift, Overflow> {
    let mut prev = 0i64;
    v.iter()
        .map(|x| {
            let d = x.checked_sub(prev).ok_or(Overflow);
            prev = *x;
            d
        })
        .collect()
}

fn partial_sums(v: &[i64]) -> Result<Shifts, Overflow> {
    let mut acc = 0i64;
    v.iter()
        .map(|x| {
            acc = acc.checked_add(*x).ok_or(Overflow)?;
            Ok(acc)
        })
        .collect()
}

/// Differences of extended levels, shifted so the first starts at `base`.
fn level_diff(q: &[ExtInt], base: i64) -> Result<Point, Overflow> {
    let mut prev = ExtInt::Fin(base);
    let mut out = Point::with_capacity(q.len());
    for v in q {
        out.push(match (*v, prev) {
            (ExtInt::Fin(a), ExtInt::Fin(b)) => ExtInt::Fin(a.checked_sub(b).ok_or(Overflow)?),
            _ => ExtInt::Infinity,
        });
        prev = *v;
    }
    canonical_tail(&mut out);
    Ok(out)
}

fn level_sums(k: &[ExtInt], base: i64) -> Result<Point, Overflow> {
    let mut acc = ExtInt::Fin(base);
    k.iter()
        .map(|v| {
            acc = acc.checked_add_ext(*v)?;
            Ok(acc)
        })
        .collect()
}

fn below_levels(u: &UnitLeaf) -> Result<Point, SheuError> {
    u.coords
        .iter()
        .map(|c| match c {
            BranchCoord::Below(m) => Ok(ExtInt::Fin(*m)),
            BranchCoord::At => Ok(ExtInt::Infinity),
            BranchCoord::Above(_) => Err(SheuError::Domain(format!("{u:?} has a coordinate above 1 - t"))),
        })
        .collect()
}

fn below_unit(q: &[ExtInt]) -> UnitLeaf {
    UnitLeaf::new(q.iter().map(|v| match v {
        ExtInt::Fin(m) => BranchCoord::Below(*m),
        ExtInt::Infinity => BranchCoord::At,
    }))
}

/// `(q, p) ↦ (p_1, p_2 − p_1, …; q_1, q_2 − q_1, …)` at `t = 0`.
pub fn phi_standard(params: &Params, a: &ArrowLeaf) -> Result<SheuT, SheuError> {
    if params.t != 0.0 {
        return Err(SheuError::Domain(format!("needs t = 0, got {}", params.t)));
    }
    let q = below_levels(&a.src)?;
    Ok(SheuT { j: diff(&a.p)?, k: level_diff(&q, 0)? })
}

pub fn phi_standard_inv(params: &Params, e: &SheuT) -> Result<ArrowLeaf, SheuError> {
    if params.t != 0.0 {
        return Err(SheuError::Domain(format!("needs t = 0, got {}", params.t)));
    }
    let q = level_sums(&e.k, 0)?;
    Ok(ArrowLeaf { src: below_unit(&q), p: partial_sums(&e.j)? })
}

fn cp1_domain(params: &Params) -> Result<(i64, i64), SheuError> {
    if params.n != 1 || !(params.t > 0.0 && params.t < 1.0) {
        return Err(SheuError::Domain(format!("needs n = 1 and 0 < t < 1, got n = {}, t = {}", params.n, params.t)));
    }
    Ok((params.m_min_below().unwrap_or(0), params.m_min_above().unwrap_or(0)))
}

/// Below ↦ `(p, p, ∞, q − q_b)`, Above ↦ `(p, p, q − q_a, ∞)`, At ↦ `(p, p, ∞, ∞)`,
/// with `q_b, q_a` the smallest admissible levels on each side.
pub fn phi_cp1(params: &Params, a: &ArrowLeaf) -> Result<SheuG, SheuError> {
    let (qb, qa) = cp1_domain(params)?;
    let j = a.p[0];
    let (k1, k2) = match a.src.coords[0] {
        BranchCoord::Below(m) => (ExtInt::Infinity, ExtInt::Fin(m.checked_sub(qb).ok_or(Overflow)?)),
        BranchCoord::Above(m) => (ExtInt::Fin(m.checked_sub(qa).ok_or(Overflow)?), ExtInt::Infinity),
        BranchCoord::At => (ExtInt::Infinity, ExtInt::Infinity),
    };
    Ok(SheuG { j, k1, k2 })
}

pub fn phi_cp1_inv(params: &Params, e: &SheuG) -> Result<ArrowLeaf, SheuError> {
    let (qb, qa) = cp1_domain(params)?;
    let c = match (e.k1, e.k2) {
        (ExtInt::Infinity, ExtInt::Infinity) => BranchCoord::At,
        (ExtInt::Infinity, ExtInt::Fin(k)) => BranchCoord::Below(k.checked_add(qb).ok_or(Overflow)?),
        (ExtInt::Fin(k), ExtInt::Infinity) => BranchCoord::Above(k.checked_add(qa).ok_or(Overflow)?),
        _ => return Err(SheuError::Membership(format!("{e:?}: one of k1, k2 must be infinite"))),
    };
    Ok(ArrowLeaf { src: UnitLeaf::new([c]), p: smallvec![e.j] })
}

fn spheres_domain(params: &Params) -> Result<i64, SheuError> {
    if !(params.t > 0.0 && params.t < 1.0) {
        return Err(SheuError::Domain(format!("needs 0 < t < 1, got {}", params.t)));
    }
    Ok(params.m_min_below().unwrap_or(0))
}

/// On the subgroupoid where `c_n = 1 − t`:
/// `(−p_n; p_1, p_2 − p_1, …, p_{n−1} − p_{n−2}; q_1 − q_b, q_2 − q_1, …)`.
pub fn phi_spheres(params: &Params, a: &ArrowLeaf) -> Result<SheuF, SheuError> {
    let qb = spheres_domain(params)?;
    let n = a.src.n();
    if a.src.coords.last() != Some(&BranchCoord::At) {
        return Err(SheuError::Domain(format!("{a:?}: last coordinate is not At")));
    }
    let q = below_levels(&a.src)?;
    let z = a.p[n - 1].checked_neg().ok_or(Overflow)?;
    Ok(SheuF { z, x: diff(&a.p[..n - 1])?, w: level_diff(&q[..n - 1], qb)? })
}

pub fn phi_spheres_inv(params: &Params, e: &SheuF) -> Result<ArrowLeaf, SheuError> {
    let qb = spheres_domain(params)?;
    let mut q = level_sums(&e.w, qb)?;
    q.push(ExtInt::Infinity);
    let mut p = partial_sums(&e.x)?;
    p.push(e.z.checked_neg().ok_or(Overflow)?);
    Ok(ArrowLeaf { src: below_unit(&q), p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;
    use BranchCoord::*;
    use ExtInt::{Fin, Infinity as Inf};

    #[test]
    fn standard_examples() {
        let p = Params::new(2, 0.0, 1.0).unwrap();
        let a = ArrowLeaf::new(UnitLeaf::new([Below(1), Below(3)]), [2, 2]);
        let e = phi_standard(&p, &a).unwrap();
        assert_eq!(e, SheuT { j: smallvec![2, 0], k: smallvec![Fin(1), Fin(2)] });
        let a2 = ArrowLeaf::new(UnitLeaf::new([Below(2), At]), [1, 0]);
        let e2 = phi_standard(&p, &a2).unwrap();
        assert_eq!(e2, SheuT { j: smallvec![1, -1], k: smallvec![Fin(2), Inf] });
        assert!(e2.is_member());
        assert_eq!(phi_standard_inv(&p, &e).unwrap(), a);
        assert_eq!(phi_standard_inv(&p, &e2).unwrap(), a2);
        let p5 = Params::new(2, 0.5, 1.0).unwrap();
        assert!(matches!(phi_standard(&p5, &a), Err(SheuError::Domain(_))));
    }

    #[test]
    fn cp1_examples() {
        let p = Params::new(1, 0.5, LN_2).unwrap();
        let a = ArrowLeaf::new(UnitLeaf::new([Below(2)]), [3]);
        let e = phi_cp1(&p, &a).unwrap();
        assert_eq!(e, SheuG { j: 3, k1: Inf, k2: Fin(1) });
        let at = ArrowLeaf::new(UnitLeaf::new([At]), [-1]);
        assert_eq!(phi_cp1(&p, &at).unwrap(), SheuG { j: -1, k1: Inf, k2: Inf });
        assert_eq!(phi_cp1_inv(&p, &e).unwrap(), a);
        let hi = ArrowLeaf::new(UnitLeaf::new([Above(3)]), [-1]);
        assert_eq!(phi_cp1_inv(&p, &phi_cp1(&p, &hi).unwrap()).unwrap(), hi);
        assert!(phi_cp1(&Params::new(2, 0.5, 1.0).unwrap(), &a).is_err());
        assert!(phi_cp1(&Params::new(1, 0.0, 1.0).unwrap(), &a).is_err());
    }

    #[test]
    fn spheres_examples() {
        let p = Params::new(2, 0.5, LN_2).unwrap();
        let a = ArrowLeaf::new(UnitLeaf::new([Below(1), At]), [2, 5]);
        let e = phi_spheres(&p, &a).unwrap();
        assert_eq!(e, SheuF { z: -5, x: smallvec![2], w: smallvec![Fin(0)] });
        let b = ArrowLeaf::new(UnitLeaf::new([At, At]), [4, 4]);
        let f = phi_spheres(&p, &b).unwrap();
        assert_eq!(f, SheuF { z: -4, x: smallvec![4], w: smallvec![Inf] });
        assert!(f.is_member());
        assert_eq!(phi_spheres_inv(&p, &e).unwrap(), a);
        assert_eq!(phi_spheres_inv(&p, &f).unwrap(), b);
        let off = ArrowLeaf::new(UnitLeaf::new([Below(1), Above(1)]), [0, 0]);
        assert!(matches!(phi_spheres(&p, &off), Err(SheuError::Domain(_))));
    }
}
