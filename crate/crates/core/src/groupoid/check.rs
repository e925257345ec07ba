use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{DiscreteGroupoid, GroupoidError};

/// Witnesses kept per report; the count is always exact.
const MAX_WITNESSES: usize = 10_000;

/// Non-composable partners probed per arrow to confirm `compose` refuses them.
const REFUSAL_PROBES: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation<A> {
    Unit { arrow: A, what: &'static str },
    Inverse { arrow: A, what: &'static str },
    Composite { pair: (A, A), what: &'static str },
    Associativity { triple: (A, A, A) },
    Translation { arrow: A, what: &'static str },
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport<A> {
    pub arrows: usize,
    pub pairs: u64,
    pub triples: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation<A>>,
}

impl<A> AxiomReport<A> {
    fn empty(arrows: usize) -> Self {
        AxiomReport { arrows, pairs: 0, triples: 0, violation_count: 0, violations: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    fn push(&mut self, v: Violation<A>) {
        self.violation_count += 1;
        if self.violations.len() < MAX_WITNESSES {
            self.violations.push(v);
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.pairs += other.pairs;
        self.triples += other.triples;
        self.violation_count += other.violation_count;
        let room = MAX_WITNESSES.saturating_sub(self.violations.len());
        self.violations.extend(other.violations.into_iter().take(room));
        self
    }
}

struct Indexed<'a, G: DiscreteGroupoid> {
    g: &'a G,
    arrows: &'a [G::Arrow],
    sources: Vec<G::Unit>,
    targets: Vec<G::Unit>,
    by_source: HashMap<G::Unit, Vec<usize>>,
    by_target: HashMap<G::Unit, Vec<usize>>,
}

impl<'a, G: DiscreteGroupoid + Sync> Indexed<'a, G> {
    fn new(g: &'a G, arrows: &'a [G::Arrow]) -> Result<Self, GroupoidError> {
        if let Some(bad) = arrows.iter().find(|a| !g.is_arrow(a)) {
            return Err(GroupoidError::InvalidArrow(format!("{bad:?}")));
        }
        let sources: Vec<_> = arrows.par_iter().map(|a| g.source(a)).collect();
        let targets: Vec<_> = arrows.par_iter().map(|a| g.target(a)).collect();
        let mut by_source: HashMap<G::Unit, Vec<usize>> = HashMap::new();
        let mut by_target: HashMap<G::Unit, Vec<usize>> = HashMap::new();
        for (i, (s, t)) in sources.iter().zip(&targets).enumerate() {
            by_source.entry(s.clone()).or_default().push(i);
            by_target.entry(t.clone()).or_default().push(i);
        }
        Ok(Indexed { g, arrows, sources, targets, by_source, by_target })
    }

    fn fiber(&self, x: &G::Unit) -> &[usize] {
        self.by_source.get(x).map_or(&[], Vec::as_slice)
    }

    fn cofiber(&self, x: &G::Unit) -> &[usize] {
        self.by_target.get(x).map_or(&[], Vec::as_slice)
    }
}

/// Exhaustively checks unit, inverse, composition and associativity laws on
/// every composable pair and triple inside `sample`.
pub fn check_groupoid_axioms<G>(g: &G, sample: &[G::Arrow]) -> Result<AxiomReport<G::Arrow>, GroupoidError>
where
    G: DiscreteGroupoid + Sync,
{
    let ix = Indexed::new(g, sample)?;
    (0..sample.len())
        .into_par_iter()
        .map(|i| check_from(&ix, i))
        .try_reduce(|| AxiomReport::empty(0), |a, b| Ok(a.merge(b)))
        .map(|mut r| {
            r.arrows = sample.len();
            r
        })
}

fn check_from<G>(ix: &Indexed<'_, G>, i: usize) -> Result<AxiomReport<G::Arrow>, GroupoidError>
where
    G: DiscreteGroupoid + Sync,
{
    let g = ix.g;
    let a = &ix.arrows[i];
    let (src, tgt) = (&ix.sources[i], &ix.targets[i]);
    let mut rep = AxiomReport::empty(0);

    if !g.is_unit(src) || !g.is_unit(tgt) {
        rep.push(Violation::Unit { arrow: a.clone(), what: "end is not a unit" });
    }
    let e_src = g.identity(src);
    let e_tgt = g.identity(tgt);
    if !g.is_arrow(&e_src) || g.source(&e_src) != *src || g.target(&e_src) != *src {
        rep.push(Violation::Unit { arrow: a.clone(), what: "identity ends" });
    }
    if g.compose(&e_src, a)?.as_ref() != Some(a) || g.compose(a, &e_tgt)?.as_ref() != Some(a) {
        rep.push(Violation::Unit { arrow: a.clone(), what: "identity is not neutral" });
    }

    let inv = g.inverse(a);
    if !g.is_arrow(&inv) {
        rep.push(Violation::Inverse { arrow: a.clone(), what: "inverse is not an arrow" });
    } else {
        if g.source(&inv) != *tgt || g.target(&inv) != *src {
            rep.push(Violation::Inverse { arrow: a.clone(), what: "inverse does not swap ends" });
        }
        if g.inverse(&inv) != *a {
            rep.push(Violation::Inverse { arrow: a.clone(), what: "inverse is not involutive" });
        }
        if g.compose(a, &inv)? != Some(e_src) || g.compose(&inv, a)? != Some(e_tgt) {
            rep.push(Violation::Inverse { arrow: a.clone(), what: "product with inverse" });
        }
    }

    let mut probes = 0;
    for step in 1..ix.arrows.len().min(64) {
        if probes == REFUSAL_PROBES {
            break;
        }
        let j = (i + step * 7919) % ix.arrows.len();
        if ix.sources[j] == *tgt {
            continue;
        }
        probes += 1;
        if g.compose(a, &ix.arrows[j])?.is_some() {
            rep.push(Violation::Composite {
                pair: (a.clone(), ix.arrows[j].clone()),
                what: "non-composable pair composed",
            });
        }
    }

    let right: Vec<_> =
        ix.fiber(tgt).iter().map(|&k| Ok((k, g.compose(a, &ix.arrows[k])?))).collect::<Result<_, GroupoidError>>()?;
    for (j, ab) in &right {
        let b = &ix.arrows[*j];
        rep.pairs += 1;
        let what = match ab {
            None => "composable pair refused",
            Some(ab) if !g.is_arrow(ab) => "composite is not an arrow",
            Some(ab) if g.source(ab) != *src || g.target(ab) != ix.targets[*j] => "composite ends",
            Some(_) => continue,
        };
        rep.push(Violation::Composite { pair: (a.clone(), b.clone()), what });
    }

    // Triples with `a` in the middle, so each side composite is formed once.
    let left: Vec<_> =
        ix.cofiber(src).iter().map(|&k| Ok((k, g.compose(&ix.arrows[k], a)?))).collect::<Result<_, GroupoidError>>()?;
    for (x, xa) in &left {
        let x_arrow = &ix.arrows[*x];
        for (z, az) in &right {
            rep.triples += 1;
            let z_arrow = &ix.arrows[*z];
            let lhs = match xa {
                Some(xa) => g.compose(xa, z_arrow)?,
                None => None,
            };
            let rhs = match az {
                Some(az) => g.compose(x_arrow, az)?,
                None => None,
            };
            if lhs.is_none() || lhs != rhs {
                rep.push(Violation::Associativity { triple: (x_arrow.clone(), a.clone(), z_arrow.clone()) });
            }
        }
    }
    Ok(rep)
}

/// For each `γ`, left translation `γ' ↦ γγ'` must map the in-sample part of
/// `l⁻¹(r(γ))` injectively into `l⁻¹(l(γ))`, be undone by `ι(γ)`, and hit every
/// in-sample arrow of `l⁻¹(l(γ))` whose preimage is also in the sample.
pub fn check_left_translation<G>(g: &G, sample: &[G::Arrow]) -> Result<AxiomReport<G::Arrow>, GroupoidError>
where
    G: DiscreteGroupoid + Sync,
{
    let ix = Indexed::new(g, sample)?;
    let members: HashSet<&G::Arrow> = sample.iter().collect();
    (0..sample.len())
        .into_par_iter()
        .map(|i| {
            let a = &sample[i];
            let inv = g.inverse(a);
            let mut rep = AxiomReport::empty(0);
            let mut images = HashSet::new();
            for &j in ix.fiber(&ix.targets[i]) {
                rep.pairs += 1;
                let b = &sample[j];
                let Some(ab) = g.compose(a, b)? else {
                    rep.push(Violation::Translation { arrow: a.clone(), what: "refused" });
                    continue;
                };
                if g.source(&ab) != ix.sources[i] {
                    rep.push(Violation::Translation { arrow: a.clone(), what: "leaves fiber" });
                }
                if g.compose(&inv, &ab)?.as_ref() != Some(b) {
                    rep.push(Violation::Translation { arrow: a.clone(), what: "not undone" });
                }
                if !images.insert(ab) {
                    rep.push(Violation::Translation { arrow: a.clone(), what: "not injective" });
                }
            }
            for &j in ix.fiber(&ix.sources[i]) {
                let c = &sample[j];
                if let Some(pre) = g.compose(&inv, c)? {
                    if members.contains(&pre) && !images.contains(c) {
                        rep.push(Violation::Translation { arrow: a.clone(), what: "not onto" });
                    }
                }
            }
            Ok(rep)
        })
        .try_reduce(|| AxiomReport::empty(0), |a, b| Ok(a.merge(b)))
        .map(|mut r| {
            r.arrows = sample.len();
            r
        })
}

/// All composable pairs inside `sample`, in sample order.
pub fn composable_pairs<G>(g: &G, sample: &[G::Arrow]) -> Vec<(G::Arrow, G::Arrow)>
where
    G: DiscreteGroupoid,
{
    let mut by_source: HashMap<G::Unit, Vec<&G::Arrow>> = HashMap::new();
    for a in sample {
        by_source.entry(g.source(a)).or_default().push(a);
    }
    let mut out = Vec::new();
    for a in sample {
        for b in by_source.get(&g.target(a)).into_iter().flatten() {
            out.push((a.clone(), (*b).clone()));
        }
    }
    out
}

/// Composable triples inside `sample`, at most `limit` of them, in sample order.
pub fn composable_triples<G>(g: &G, sample: &[G::Arrow], limit: usize) -> Vec<(G::Arrow, G::Arrow, G::Arrow)>
where
    G: DiscreteGroupoid,
{
    let mut by_source: HashMap<G::Unit, Vec<&G::Arrow>> = HashMap::new();
    for a in sample {
        by_source.entry(g.source(a)).or_default().push(a);
    }
    let mut out = Vec::new();
    for a in sample {
        for b in by_source.get(&g.target(a)).into_iter().flatten() {
            for c in by_source.get(&g.target(b)).into_iter().flatten() {
                if out.len() == limit {
                    return out;
                }
                out.push((a.clone(), (*b).clone(), (*c).clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext_int::ExtInt;
    use crate::groupoid::{ActionArrow, Point, RestrictedActionGroupoid};
    use smallvec::smallvec;

    fn line() -> impl DiscreteGroupoid<Unit = Point, Arrow = ActionArrow> + Sync {
        RestrictedActionGroupoid::translation(1, |_: &[ExtInt]| true, |_: &[ExtInt], _: &[i64]| true)
    }

    fn arrow(x: i64, g: i64) -> ActionArrow {
        ActionArrow { x: smallvec![ExtInt::Fin(x)], g: smallvec![g] }
    }

    fn window() -> Vec<ActionArrow> {
        (-2..=2).flat_map(|x| (-2..=2).map(move |g| arrow(x, g))).collect()
    }

    /// Sends the product of two specific arrows to the wrong place.
    struct Corrupt<G>(G);

    impl<G: DiscreteGroupoid<Unit = Point, Arrow = ActionArrow>> DiscreteGroupoid for Corrupt<G> {
        type Unit = Point;
        type Arrow = ActionArrow;
        fn is_unit(&self, x: &Point) -> bool {
            self.0.is_unit(x)
        }
        fn is_arrow(&self, a: &ActionArrow) -> bool {
            self.0.is_arrow(a)
        }
        fn source(&self, a: &ActionArrow) -> Point {
            self.0.source(a)
        }
        fn target(&self, a: &ActionArrow) -> Point {
            self.0.target(a)
        }
        fn compose(&self, a: &ActionArrow, b: &ActionArrow) -> Result<Option<ActionArrow>, GroupoidError> {
            let out = self.0.compose(a, b)?;
            if *a == arrow(0, 1) && *b == arrow(1, 1) {
                return Ok(Some(arrow(0, 1)));
            }
            Ok(out)
        }
        fn inverse(&self, a: &ActionArrow) -> ActionArrow {
            self.0.inverse(a)
        }
        fn identity(&self, x: &Point) -> ActionArrow {
            self.0.identity(x)
        }
    }

    #[test]
    fn single_identity_passes() {
        let g = line();
        let e = g.identity(&smallvec![ExtInt::Fin(4)]);
        let rep = check_groupoid_axioms(&g, &[e]).unwrap();
        assert!(rep.passed());
        assert_eq!((rep.pairs, rep.triples), (1, 1));
    }

    #[test]
    fn full_window_passes() {
        let rep = check_groupoid_axioms(&line(), &window()).unwrap();
        assert!(rep.passed());
        assert!(rep.triples > 100);
    }

    #[test]
    fn corrupted_compose_yields_witness_triple() {
        let rep = check_groupoid_axioms(&Corrupt(line()), &window()).unwrap();
        assert!(!rep.passed());
        assert!(rep.violations.iter().any(|v| matches!(
            v,
            Violation::Composite { pair, what: "composite ends" } if *pair == (arrow(0, 1), arrow(1, 1))
        )));
        assert!(rep.violations.iter().any(|v| matches!(
            v,
            Violation::Associativity { triple } if triple.0 == arrow(0, 1) && triple.1 == arrow(1, 1)
        )));
    }

    #[test]
    fn pair_and_triple_enumeration() {
        let g = line();
        let w = window();
        let pairs = composable_pairs(&g, &w);
        assert!(pairs.iter().all(|(a, b)| g.target(a) == g.source(b)));
        let triples = composable_triples(&g, &w, 50);
        assert_eq!(triples.len(), 50);
    }
}
