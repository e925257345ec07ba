//! Twisted convolution `*`-algebras of finitely supported functions on a
//! discrete groupoid with counting Haar system.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::groupoid::{Cocycle1, Cocycle2, DiscreteGroupoid, GroupoidError};

/// Finitely supported complex function on arrows.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement<A: Ord> {
    terms: BTreeMap<A, Complex64>,
}

impl<A: Ord> Default for AlgebraElement<A> {
    fn default() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }
}

impl<A: Ord + Clone> AlgebraElement<A> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn delta(a: A) -> Self {
        Self::from_terms([(a, Complex64::new(1.0, 0.0))])
    }

    /// Repeated arrows are summed.
    pub fn from_terms(terms: impl IntoIterator<Item = (A, Complex64)>) -> Self {
        let mut out = Self::zero();
        for (a, v) in terms {
            out.add(a, v);
        }
        out
    }

    pub fn add(&mut self, a: A, v: Complex64) {
        *self.terms.entry(a).or_default() += v;
    }

    pub fn get(&self, a: &A) -> Complex64 {
        self.terms.get(a).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&A, &Complex64)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map_values(&self, f: impl Fn(&A, Complex64) -> Complex64) -> Self {
        AlgebraElement { terms: self.terms.iter().map(|(a, v)| (a.clone(), f(a, *v))).collect() }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map_values(|_, v| v * s)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, v) in &other.terms {
            out.add(a.clone(), *v);
        }
        out
    }

    /// Largest pointwise difference over the union of supports.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let left = self.terms.iter().map(|(a, v)| (v - other.get(a)).norm());
        let right = other.terms.iter().filter(|(a, _)| !self.terms.contains_key(a)).map(|(_, v)| v.norm());
        left.chain(right).fold(0.0, f64::max)
    }

    /// Largest absolute value, or zero.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

#[derive(Serialize, Deserialize)]
struct Entry<A> {
    arrow: A,
    re: f64,
    im: f64,
}

impl<A: Ord + Clone + Serialize> Serialize for AlgebraElement<A> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(a, v)| Entry { arrow: a.clone(), re: v.re, im: v.im }))
    }
}

impl<'de, A: Ord + Clone + Deserialize<'de>> Deserialize<'de> for AlgebraElement<A> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let entries = Vec::<Entry<A>>::deserialize(d)?;
        Ok(Self::from_terms(entries.into_iter().map(|e| (e.arrow, Complex64::new(e.re, e.im)))))
    }
}

fn validate<G: DiscreteGroupoid>(g: &G, a: &AlgebraElement<G::Arrow>) -> Result<(), GroupoidError> {
    match a.terms.keys().find(|k| !g.is_arrow(k)) {
        Some(bad) => Err(GroupoidError::InvalidArrow(format!("{bad:?}"))),
        None => Ok(()),
    }
}

/// `(a*b)(γ) = Σ_{γ1γ2 = γ} a(γ1) b(γ2) ζ(γ1, γ2)`, summed over the support of
/// `a` with `b` looked up by source, so the result is exact and total.
pub fn convolve<G, Z>(
    g: &G,
    a: &AlgebraElement<G::Arrow>,
    b: &AlgebraElement<G::Arrow>,
    zeta: &Z,
) -> Result<AlgebraElement<G::Arrow>, GroupoidError>
where
    G: DiscreteGroupoid,
    Z: Cocycle2<G::Arrow> + ?Sized,
{
    validate(g, a)?;
    validate(g, b)?;
    let mut by_source: HashMap<G::Unit, Vec<(&G::Arrow, Complex64)>> = HashMap::new();
    for (y, v) in &b.terms {
        by_source.entry(g.source(y)).or_default().push((y, *v));
    }
    let mut out = AlgebraElement::zero();
    for (x, u) in &a.terms {
        for (y, v) in by_source.get(&g.target(x)).into_iter().flatten() {
            let xy = g.compose(x, y)?.ok_or_else(|| GroupoidError::NotComposable(format!("{x:?} . {y:?}")))?;
            out.add(xy, u * v * zeta.eval(x, y));
        }
    }
    Ok(out)
}

/// `a*(γ) = conj(a(ι(γ)))`.
pub fn involution<G: DiscreteGroupoid>(
    g: &G,
    a: &AlgebraElement<G::Arrow>,
) -> Result<AlgebraElement<G::Arrow>, GroupoidError> {
    validate(g, a)?;
    Ok(AlgebraElement::from_terms(a.terms.iter().map(|(x, v)| (g.inverse(x), v.conj()))))
}

/// `φ(a) = Σ_x a(ε(x)) μ(x)`.
pub fn weight_phi<G: DiscreteGroupoid>(g: &G, a: &AlgebraElement<G::Arrow>, mu: impl Fn(&G::Unit) -> f64) -> Complex64 {
    a.terms.iter().filter(|(x, _)| g.is_identity(x)).map(|(x, v)| v * mu(&g.source(x))).sum()
}

/// `σ(a)(γ) = e^{f(γ)} a(γ)`.
pub fn modular_flow<A, F>(a: &AlgebraElement<A>, f: &F) -> AlgebraElement<A>
where
    A: Ord + Clone,
    F: Cocycle1<A> + ?Sized,
{
    a.map_values(|x, v| v * f.eval(x).exp())
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct KmsResult {
    pub phi_ab: Complex64,
    pub phi_b_sigma_a: Complex64,
    pub residual: f64,
}

/// Compares `φ(a*b)` with `φ(b*σ(a))` for untwisted convolution.
pub fn kms_check<G, F>(
    g: &G,
    a: &AlgebraElement<G::Arrow>,
    b: &AlgebraElement<G::Arrow>,
    mu: impl Fn(&G::Unit) -> f64,
    f: &F,
) -> Result<KmsResult, GroupoidError>
where
    G: DiscreteGroupoid,
    F: Cocycle1<G::Arrow> + ?Sized,
{
    let trivial = crate::groupoid::TrivialCocycle;
    let phi_ab = weight_phi(g, &convolve(g, a, b, &trivial)?, &mu);
    let phi_b_sigma_a = weight_phi(g, &convolve(g, b, &modular_flow(a, f), &trivial)?, &mu);
    Ok(KmsResult { phi_ab, phi_b_sigma_a, residual: (phi_ab - phi_b_sigma_a).norm() })
}

/// Keeps the arrows whose source satisfies `keep`. For an invariant
/// predicate this is the quotient map onto the restricted algebra.
pub fn restrict<A, G, P>(g: &G, a: &AlgebraElement<A>, keep: P) -> AlgebraElement<A>
where
    A: Ord + Clone,
    G: DiscreteGroupoid<Arrow = A>,
    P: Fn(&G::Unit) -> bool,
{
    AlgebraElement { terms: a.terms.iter().filter(|(x, _)| keep(&g.source(x))).map(|(x, v)| (x.clone(), *v)).collect() }
}

/// Matrix of `ξ ↦ a*ξ` on the span of `δ_γ` for the window arrows ending at
/// the chosen unit.
#[derive(Debug, Clone)]
pub struct RegularRep<A> {
    pub basis: Vec<A>,
    pub matrix: DMatrix<Complex64>,
    /// False when some product left the window; the matrix then drops those terms.
    pub closed: bool,
}

pub fn regular_rep<G, Z>(
    g: &G,
    a: &AlgebraElement<G::Arrow>,
    x: &G::Unit,
    window: &[G::Arrow],
    zeta: &Z,
) -> Result<RegularRep<G::Arrow>, GroupoidError>
where
    G: DiscreteGroupoid,
    Z: Cocycle2<G::Arrow> + ?Sized,
{
    validate(g, a)?;
    let mut basis: Vec<G::Arrow> = window.iter().filter(|w| g.target(w) == *x).cloned().collect();
    basis.sort();
    basis.dedup();
    let index: HashMap<&G::Arrow, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut matrix = DMatrix::zeros(basis.len(), basis.len());
    let mut closed = true;
    for (j, y) in basis.iter().enumerate() {
        let src = g.source(y);
        for (z, u) in a.terms.iter().filter(|(z, _)| g.target(z) == src) {
            let zy = g.compose(z, y)?.ok_or_else(|| GroupoidError::NotComposable(format!("{z:?} . {y:?}")))?;
            match index.get(&zy) {
                Some(&i) => matrix[(i, j)] += u * zeta.eval(z, y),
                None => closed = false,
            }
        }
    }
    Ok(RegularRep { basis, matrix, closed })
}

/// Random element with `size` distinct arrows drawn from `pool` and values
/// uniform in the unit square.
pub fn random_element<A: Ord + Clone, R: Rng + ?Sized>(pool: &[A], size: usize, rng: &mut R) -> AlgebraElement<A> {
    AlgebraElement::from_terms(
        pool.choose_multiple(rng, size.min(pool.len()))
            .map(|a| (a.clone(), Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
            .collect::<Vec<_>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bs::{enumerate, modular_data, pk_predicate, BsGroupoid, Params, UnitLeaf};
    use crate::groupoid::TrivialCocycle;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::LN_2;

    fn setup(t: f64) -> (BsGroupoid, Vec<crate::bs::ArrowLeaf>) {
        let p = Params::new(2, t, LN_2).unwrap();
        (BsGroupoid::new(p).unwrap(), enumerate(&p, 3, 2).arrows)
    }

    #[test]
    fn deltas() {
        let (g, w) = setup(0.5);
        let a = &w[10];
        let b = w.iter().find(|b| b.src == g.target(a) && !g.is_identity(b)).unwrap();
        let ab = convolve(&g, &AlgebraElement::delta(a.clone()), &AlgebraElement::delta(b.clone()), &TrivialCocycle)
            .unwrap();
        assert_eq!(ab, AlgebraElement::delta(g.compose(a, b).unwrap().unwrap()));
        let c = w.iter().find(|c| c.src != g.target(a)).unwrap();
        let ac = convolve(&g, &AlgebraElement::delta(a.clone()), &AlgebraElement::delta(c.clone()), &TrivialCocycle)
            .unwrap();
        assert!(ac.is_empty());
    }

    #[test]
    fn unit_delta_restricts_to_fiber() {
        let (g, w) = setup(0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_element(&w, 40, &mut rng);
        let x = w[0].src.clone();
        let out = convolve(&g, &AlgebraElement::delta(g.identity(&x)), &a, &TrivialCocycle).unwrap();
        let expect = restrict(&g, &a, |u: &UnitLeaf| *u == x);
        assert_eq!(out.max_abs_diff(&expect), 0.0);
    }

    #[test]
    fn star_identities() {
        let (g, w) = setup(0.3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let gamma = w[7].clone();
        assert_eq!(
            involution(&g, &AlgebraElement::delta(gamma.clone())).unwrap(),
            AlgebraElement::delta(g.inverse(&gamma))
        );
        let units = AlgebraElement::from_terms(
            w.iter().filter(|a| g.is_identity(a)).map(|a| (a.clone(), Complex64::new(1.5, 0.0))),
        );
        assert_eq!(involution(&g, &units).unwrap(), units);
        for _ in 0..20 {
            let a = random_element(&w, 30, &mut rng);
            let b = random_element(&w, 30, &mut rng);
            let aa = involution(&g, &involution(&g, &a).unwrap()).unwrap();
            assert_eq!(aa, a);
            let lhs = involution(&g, &convolve(&g, &a, &b, &TrivialCocycle).unwrap()).unwrap();
            let rhs =
                convolve(&g, &involution(&g, &b).unwrap(), &involution(&g, &a).unwrap(), &TrivialCocycle).unwrap();
            assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
        }
    }

    #[test]
    fn weight_examples() {
        let (g, w) = setup(0.5);
        let mu = |u: &UnitLeaf| g.measure_mu(u);
        let x = w.iter().find(|a| g.is_identity(a) && g.measure_mu(&a.src) > 0.0).unwrap().src.clone();
        assert_eq!(weight_phi(&g, &AlgebraElement::delta(g.identity(&x)), mu), Complex64::new(g.measure_mu(&x), 0.0));
        let gamma = w.iter().find(|a| !g.is_identity(a) && a.src == x).unwrap().clone();
        assert_eq!(weight_phi(&g, &AlgebraElement::delta(gamma.clone()), mu), Complex64::default());
        let prod = convolve(
            &g,
            &AlgebraElement::delta(gamma.clone()),
            &AlgebraElement::delta(g.inverse(&gamma)),
            &TrivialCocycle,
        )
        .unwrap();
        assert_eq!(weight_phi(&g, &prod, mu).re, g.measure_mu(&x));
    }

    #[test]
    fn kms_on_deltas_and_random_pairs() {
        let (g, w) = setup(0.5);
        let p = *g.params();
        let f = |a: &crate::bs::ArrowLeaf| modular_data(&p, a).f_fs;
        let mu = |u: &UnitLeaf| g.measure_mu(u);
        for gamma in &w {
            let a = AlgebraElement::delta(gamma.clone());
            let b = AlgebraElement::delta(g.inverse(gamma));
            let k = kms_check(&g, &a, &b, mu, &f).unwrap();
            assert!((k.phi_ab.re - g.measure_mu(&gamma.src)).abs() < 1e-15);
            assert!(k.residual <= 1e-12);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = random_element(&w, 50, &mut rng);
            let b = random_element(&w, 50, &mut rng);
            assert!(kms_check(&g, &a, &b, mu, &f).unwrap().residual <= 1e-12);
        }
    }

    #[test]
    fn restriction_is_a_homomorphism_with_ideal_kernel() {
        let (g, w) = setup(0.5);
        let keep = pk_predicate(2);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..30 {
            let a = random_element(&w, 40, &mut rng);
            let b = random_element(&w, 40, &mut rng);
            let ab = convolve(&g, &a, &b, &TrivialCocycle).unwrap();
            let ra = restrict(&g, &a, &keep);
            let rb = restrict(&g, &b, &keep);
            let lhs = restrict(&g, &ab, &keep);
            let rhs = convolve(&g, &ra, &rb, &TrivialCocycle).unwrap();
            assert_eq!(lhs.max_abs_diff(&rhs), 0.0);
            let off = a.plus(&ra.scale(Complex64::new(-1.0, 0.0)));
            let off_b = convolve(&g, &off, &b, &TrivialCocycle).unwrap();
            let b_off = convolve(&g, &b, &off, &TrivialCocycle).unwrap();
            assert_eq!(restrict(&g, &off_b, &keep).max_abs(), 0.0);
            assert_eq!(restrict(&g, &b_off, &keep).max_abs(), 0.0);
        }
    }

    #[test]
    fn regular_representation() {
        let (g, w) = setup(0.5);
        let x = UnitLeaf::all_at(2);
        let idx = regular_rep(&g, &AlgebraElement::delta(g.identity(&x)), &x, &w, &TrivialCocycle).unwrap();
        assert!(idx.closed);
        assert_eq!(idx.matrix, DMatrix::identity(idx.basis.len(), idx.basis.len()));
        // A delta at a loop on the At point shifts the fiber like a partial permutation.
        let loop_arrow = g.make_arrow(x.clone(), [1, 1]).unwrap();
        let r = regular_rep(&g, &AlgebraElement::delta(loop_arrow), &x, &w, &TrivialCocycle).unwrap();
        for col in r.matrix.column_iter() {
            let nz: Vec<_> = col.iter().filter(|v| v.norm() > 0.0).collect();
            assert!(nz.len() <= 1 && nz.iter().all(|v| **v == Complex64::new(1.0, 0.0)));
        }
    }

    #[test]
    fn json_roundtrip() {
        let (_, w) = setup(0.5);
        let a = AlgebraElement::from_terms([
            (w[0].clone(), Complex64::new(1.0, -2.0)),
            (w[3].clone(), Complex64::new(0.5, 0.0)),
        ]);
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.starts_with(r#"[{"arrow":{"src":"#));
        let back: AlgebraElement<crate::bs::ArrowLeaf> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
