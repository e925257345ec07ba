use std::collections::{HashMap, HashSet};
use std::fmt::Debug;

use serde::Serialize;

use super::elements::{is_canonical, t_member};
use super::{SheuError, SheuT};
use crate::ext_int::ExtInt;
use crate::groupoid::{DiscreteGroupoid, Point, Shift};

const MAX_WITNESSES: usize = 100;

#[derive(Debug, Clone, Default, Serialize)]
pub struct MorphismReport {
    pub arrows: usize,
    pub pairs: usize,
    pub failure_count: usize,
    /// Debug renderings of the first failing instances.
    pub failures: Vec<String>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn fail(&mut self, what: &str, at: impl Debug) {
        self.failure_count += 1;
        if self.failures.len() < MAX_WITNESSES {
            self.failures.push(format!("{what}: {at:?}"));
        }
    }
}

/// Checks that `map` sends identities to identities, intertwines source,
/// target, composition and inversion, is injective on `window`, and lands in
/// `h`.
pub fn verify_morphism<G, H, F>(map: F, g: &G, h: &H, window: &[G::Arrow]) -> MorphismReport
where
    G: DiscreteGroupoid,
    H: DiscreteGroupoid,
    F: Fn(&G::Arrow) -> Result<H::Arrow, SheuError>,
{
    let mut rep = MorphismReport { arrows: window.len(), ..Default::default() };
    let mut images: HashMap<H::Arrow, &G::Arrow> = HashMap::new();
    let mut by_source: HashMap<G::Unit, Vec<&G::Arrow>> = HashMap::new();

    for a in window {
        if !g.is_arrow(a) {
            rep.fail("window arrow is invalid", a);
            continue;
        }
        let fa = match map(a) {
            Ok(fa) => fa,
            Err(e) => {
                rep.fail(&format!("map failed ({e})"), a);
                continue;
            }
        };
        if !h.is_arrow(&fa) {
            rep.fail("image is not a member", (a, &fa));
            continue;
        }
        if g.is_identity(a) && !h.is_identity(&fa) {
            rep.fail("identity not sent to identity", a);
        }
        let ends = [(g.identity(&g.source(a)), h.source(&fa)), (g.identity(&g.target(a)), h.target(&fa))];
        for (e, x) in ends {
            match map(&e) {
                Ok(fe) if fe == h.identity(&x) => {}
                _ => rep.fail("source or target not intertwined", a),
            }
        }
        match map(&g.inverse(a)) {
            Ok(fi) if fi == h.inverse(&fa) => {}
            _ => rep.fail("inverse not intertwined", a),
        }
        if let Some(prev) = images.insert(fa.clone(), a) {
            if prev != a {
                rep.fail("not injective", (prev, a));
            }
        }
        by_source.entry(g.source(a)).or_default().push(a);
    }

    for a in window {
        let Ok(fa) = map(a) else { continue };
        for b in by_source.get(&g.target(a)).into_iter().flatten() {
            rep.pairs += 1;
            let Ok(fb) = map(b) else { continue };
            let lhs = g.compose(a, b).ok().flatten().map(|ab| map(&ab));
            let rhs = h.compose(&fa, &fb).ok().flatten();
            match (lhs, rhs) {
                (Some(Ok(l)), Some(r)) if l == r => {}
                _ => rep.fail("product not preserved", (a, *b)),
            }
        }
    }
    rep
}

/// `inv(map(a)) = a` on every window arrow.
pub fn check_round_trip<A, B, F, I>(map: F, inv: I, window: &[A]) -> MorphismReport
where
    A: PartialEq + Debug,
    F: Fn(&A) -> Result<B, SheuError>,
    I: Fn(&B) -> Result<A, SheuError>,
{
    let mut rep = MorphismReport { arrows: window.len(), ..Default::default() };
    for a in window {
        match map(a).and_then(|b| inv(&b)) {
            Ok(back) if back == *a => {}
            _ => rep.fail("round trip", a),
        }
    }
    rep
}

/// Elements of the `t = 0` groupoid whose preimage lies in the lattice window
/// with levels `≤ max_level` and shifts `|p_i| ≤ max_shift`, enumerated from
/// the membership conditions alone.
pub fn t_window(n: usize, max_level: i64, max_shift: i64) -> Vec<SheuT> {
    let ks = product(n, &{
        let mut v: Vec<ExtInt> = (0..=max_level).map(ExtInt::Fin).collect();
        v.push(ExtInt::Infinity);
        v
    });
    let js = product(n, &(-2 * max_shift..=2 * max_shift).collect::<Vec<_>>());
    let mut out = Vec::new();
    for k in ks.iter().filter(|k| is_canonical(k)) {
        let Some(q) = bounded_sums(k.iter().map(|v| v.finite()), max_level) else { continue };
        for j in &js {
            if !t_member(k, j) {
                continue;
            }
            let p = j.iter().scan(0i64, |s, v| {
                *s += v;
                Some(*s)
            });
            if p.clone().any(|v| v.abs() > max_shift) {
                continue;
            }
            let fits = q.iter().zip(p).all(|(qi, pi)| qi.is_none_or(|m| m + pi <= max_level));
            if fits {
                out.push(SheuT { j: Shift::from_slice(j), k: Point::from_slice(k) });
            }
        }
    }
    out
}

/// Partial sums of the finite prefix, each at most `cap`; `None` once over.
fn bounded_sums(v: impl Iterator<Item = Option<i64>>, cap: i64) -> Option<Vec<Option<i64>>> {
    let mut acc = 0i64;
    let mut out = Vec::new();
    for x in v {
        match x {
            Some(x) => {
                acc += x;
                if acc > cap {
                    return None;
                }
                out.push(Some(acc));
            }
            None => out.push(None),
        }
    }
    Some(out)
}

fn product<T: Copy>(n: usize, vals: &[T]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                vals.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(*v);
                    q
                })
            })
            .collect();
    }
    out
}

/// Images of a window under `map`, as a set.
pub fn image_set<A, B: Eq + std::hash::Hash>(window: &[A], map: impl Fn(&A) -> Result<B, SheuError>) -> HashSet<B> {
    window.iter().filter_map(|a| map(a).ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bs::{enumerate, BsGroupoid, Params};
    use crate::sheu::{phi_standard, phi_standard_inv, SheuGroupoid};

    #[test]
    fn identity_map_passes() {
        let p = Params::new(2, 0.3, 1.0).unwrap();
        let g = BsGroupoid::new(p).unwrap();
        let w = enumerate(&p, 2, 2);
        let rep = verify_morphism(|a| Ok(a.clone()), &g, &g, &w.arrows);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(rep.pairs > 0);
    }

    #[test]
    fn standard_map_is_an_isomorphism_onto_window() {
        for n in 1..=3 {
            let p = Params::new(n, 0.0, 1.0).unwrap();
            let g = BsGroupoid::new(p).unwrap();
            let h = SheuGroupoid::<SheuT>::new(n);
            let w = enumerate(&p, 3, 2);
            let map = |a: &_| phi_standard(&p, a);
            let rep = verify_morphism(map, &g, &h, &w.arrows);
            assert!(rep.passed(), "n = {n}: {:?}", rep.failures);
            assert!(check_round_trip(map, |e| phi_standard_inv(&p, e), &w.arrows).passed());
            let image = image_set(&w.arrows, map);
            let direct: HashSet<_> = t_window(n, 3, 2).into_iter().collect();
            assert_eq!(image, direct, "n = {n}");
        }
    }

    #[test]
    fn sign_flip_is_detected() {
        let p = Params::new(2, 0.0, 1.0).unwrap();
        let g = BsGroupoid::new(p).unwrap();
        let h = SheuGroupoid::<SheuT>::new(2);
        let w = enumerate(&p, 3, 2);
        let flipped = |a: &_| {
            let mut e = phi_standard(&p, a)?;
            e.j[1] = -e.j[1];
            Ok(e)
        };
        let rep = verify_morphism(flipped, &g, &h, &w.arrows);
        assert!(!rep.passed());
        assert!(!rep.failures.is_empty());
    }
}
