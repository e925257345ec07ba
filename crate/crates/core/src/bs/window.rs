use serde::Serialize;

use super::groupoid::BsGroupoid;
use super::leaf::{ArrowLeaf, BranchCoord, Coords, Shifts, UnitLeaf};
use super::Params;

/// Units with every finite level at most `max_level`, and the arrows between
/// them with `|p_i| ≤ max_shift`, both in lexicographic order.
#[derive(Debug, Clone, Serialize)]
pub struct Window {
    pub params: Params,
    pub max_level: i64,
    pub max_shift: i64,
    pub units: Vec<UnitLeaf>,
    pub arrows: Vec<ArrowLeaf>,
}

fn candidates(g: &BsGroupoid, max_level: i64) -> Vec<BranchCoord> {
    let mut out = Vec::new();
    if let Some(lo) = g.m_min_below() {
        out.extend((lo..=max_level).map(BranchCoord::Below));
    }
    out.push(BranchCoord::At);
    if let Some(lo) = g.m_min_above() {
        out.extend((lo..=max_level).map(BranchCoord::Above));
    }
    out
}

fn follows(prev: BranchCoord, next: BranchCoord) -> bool {
    match (prev, next) {
        (BranchCoord::Below(a), BranchCoord::Below(b)) => a <= b,
        (BranchCoord::Above(a), BranchCoord::Above(b)) => a >= b,
        (x, y) => x.block() <= y.block(),
    }
}

pub fn enumerate_units(params: &Params, max_level: i64) -> Vec<UnitLeaf> {
    let Ok(g) = BsGroupoid::new(*params) else {
        return Vec::new();
    };
    let cand = candidates(&g, max_level);
    let mut out = Vec::new();
    let mut stack = Coords::new();
    fn rec(cand: &[BranchCoord], n: usize, stack: &mut Coords, out: &mut Vec<UnitLeaf>) {
        if stack.len() == n {
            out.push(UnitLeaf { coords: stack.clone() });
            return;
        }
        for &c in cand {
            if stack.last().is_none_or(|p| follows(*p, c)) {
                stack.push(c);
                rec(cand, n, stack, out);
                stack.pop();
            }
        }
    }
    rec(&cand, params.n, &mut stack, &mut out);
    out
}

pub fn enumerate(params: &Params, max_level: i64, max_shift: i64) -> Window {
    let units = enumerate_units(params, max_level);
    let mut arrows = Vec::new();
    if let Ok(g) = BsGroupoid::new(*params) {
        let in_window = |c: BranchCoord| match c {
            BranchCoord::Below(m) => g.m_min_below().is_some_and(|lo| lo <= m && m <= max_level),
            BranchCoord::Above(m) => g.m_min_above().is_some_and(|lo| lo <= m && m <= max_level),
            BranchCoord::At => true,
        };
        for u in &units {
            let mut p = Shifts::new();
            let mut tgt = Coords::new();
            shifts(&g, u, max_shift, &in_window, &mut p, &mut tgt, &mut arrows);
        }
    }
    Window { params: *params, max_level, max_shift, units, arrows }
}

fn shifts(
    g: &BsGroupoid,
    u: &UnitLeaf,
    max_shift: i64,
    in_window: &dyn Fn(BranchCoord) -> bool,
    p: &mut Shifts,
    tgt: &mut Coords,
    out: &mut Vec<ArrowLeaf>,
) {
    let i = p.len();
    if i == u.n() {
        let a = ArrowLeaf { src: u.clone(), p: p.clone() };
        debug_assert!(g.validate_arrow(&a).is_ok());
        out.push(a);
        return;
    }
    let c = u.coords[i];
    let range: Vec<i64> = match c {
        BranchCoord::At if g.params().is_endpoint() => vec![0],
        BranchCoord::At => match (0..i).rev().find(|&j| u.coords[j] == BranchCoord::At) {
            Some(j) => vec![p[j]],
            None => (-max_shift..=max_shift).collect(),
        },
        _ => (-max_shift..=max_shift).collect(),
    };
    for v in range {
        let Some(d) = c.shifted(v) else { continue };
        if !in_window(d) || tgt.last().is_some_and(|prev| !follows(*prev, d)) {
            continue;
        }
        p.push(v);
        tgt.push(d);
        shifts(g, u, max_shift, in_window, p, tgt, out);
        p.pop();
        tgt.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::DiscreteGroupoid;
    use std::f64::consts::LN_2;
    use BranchCoord::*;

    #[test]
    fn documented_counts() {
        let p = Params::new(1, 0.5, LN_2).unwrap();
        let u = enumerate_units(&p, 3);
        assert_eq!(u, [Below(1), Below(2), Below(3), At, Above(1), Above(2), Above(3)].map(|c| UnitLeaf::new([c])));
        assert_eq!(enumerate_units(&Params::new(2, 0.5, LN_2).unwrap(), 2).len(), 15);
        assert_eq!(enumerate_units(&Params::new(1, 0.0, LN_2).unwrap(), 2).len(), 4);
        let u = enumerate_units(&Params::new(2, 0.0, 1.0).unwrap(), 0);
        assert_eq!(
            u,
            vec![UnitLeaf::new([Below(0), Below(0)]), UnitLeaf::new([Below(0), At]), UnitLeaf::new([At, At]),]
        );
    }

    #[test]
    fn sorted_and_valid() {
        for t in [0.0, 0.3, 0.5, 1.0] {
            let p = Params::new(3, t, 1.0).unwrap();
            let w = enumerate(&p, 2, 2);
            let g = BsGroupoid::new(p).unwrap();
            assert!(w.units.windows(2).all(|x| x[0] < x[1]));
            assert!(w.arrows.windows(2).all(|x| x[0] < x[1]));
            assert!(w.units.iter().all(|u| g.is_unit(u)));
            assert!(w.arrows.iter().all(|a| g.is_arrow(a)));
        }
    }

    /// Brute force over the full shift box agrees with the pruned search.
    #[test]
    fn arrows_match_brute_force() {
        for t in [0.0, 0.25, 0.5, 1.0] {
            let p = Params::new(2, t, LN_2).unwrap();
            let g = BsGroupoid::new(p).unwrap();
            let w = enumerate(&p, 3, 2);
            let units: std::collections::HashSet<_> = w.units.iter().cloned().collect();
            let mut brute = Vec::new();
            for u in &w.units {
                for a in -2..=2 {
                    for b in -2..=2 {
                        let arr = ArrowLeaf::new(u.clone(), [a, b]);
                        if g.is_arrow(&arr) && units.contains(&g.target(&arr)) {
                            brute.push(arr);
                        }
                    }
                }
            }
            assert_eq!(brute, w.arrows, "t = {t}");
        }
    }

    #[test]
    fn too_small_window_is_empty() {
        let p = Params::new(2, 0.75, LN_2).unwrap();
        // Below needs level 2, Above level 1: only At-led units survive.
        let u = enumerate_units(&p, 0);
        assert_eq!(u, vec![UnitLeaf::all_at(2)]);
    }
}
