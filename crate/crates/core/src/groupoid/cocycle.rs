use num_complex::Complex64;
use serde::Serialize;

use super::{DiscreteGroupoid, GroupoidError};

/// Real-valued function on arrows, tested for additivity.
pub trait Cocycle1<A> {
    fn eval(&self, g: &A) -> f64;
}

impl<A, F: Fn(&A) -> f64> Cocycle1<A> for F {
    fn eval(&self, g: &A) -> f64 {
        self(g)
    }
}

/// Integer-valued function on arrows, tested for exact additivity.
pub trait IntegerCocycle1<A> {
    fn eval(&self, g: &A) -> i64;
}

impl<A, F: Fn(&A) -> i64> IntegerCocycle1<A> for F {
    fn eval(&self, g: &A) -> i64 {
        self(g)
    }
}

/// Circle-valued function on composable pairs.
pub trait Cocycle2<A> {
    fn eval(&self, a: &A, b: &A) -> Complex64;
}

impl<A, F: Fn(&A, &A) -> Complex64> Cocycle2<A> for F {
    fn eval(&self, a: &A, b: &A) -> Complex64 {
        self(a, b)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct TrivialCocycle;

impl<A> Cocycle2<A> for TrivialCocycle {
    fn eval(&self, _: &A, _: &A) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CocycleReport<W> {
    pub checked: usize,
    pub max_residual: f64,
    pub failures: usize,
    /// First failing instance, if any.
    pub witness: Option<W>,
}

impl<W> CocycleReport<W> {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, residual: f64, tol: f64, w: impl FnOnce() -> W) {
        self.checked += 1;
        self.max_residual = self.max_residual.max(residual);
        if !(residual <= tol) {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(w());
            }
        }
    }
}

fn composite<G: DiscreteGroupoid>(g: &G, a: &G::Arrow, b: &G::Arrow) -> Result<G::Arrow, GroupoidError> {
    g.compose(a, b)?.ok_or_else(|| GroupoidError::NotComposable(format!("{a:?} . {b:?}")))
}

/// `f(γ1γ2) = f(γ1) + f(γ2)` within `tol` on every pair.
pub fn check_cocycle1<G, F>(
    g: &G,
    f: &F,
    pairs: &[(G::Arrow, G::Arrow)],
    tol: f64,
) -> Result<CocycleReport<(G::Arrow, G::Arrow)>, GroupoidError>
where
    G: DiscreteGroupoid,
    F: Cocycle1<G::Arrow> + ?Sized,
{
    let mut rep = CocycleReport { checked: 0, max_residual: 0.0, failures: 0, witness: None };
    for (a, b) in pairs {
        let ab = composite(g, a, b)?;
        let r = (f.eval(&ab) - f.eval(a) - f.eval(b)).abs();
        rep.record(r, tol, || (a.clone(), b.clone()));
    }
    Ok(rep)
}

/// Exact additivity of an integer-valued function.
pub fn check_integer_cocycle1<G, F>(
    g: &G,
    f: &F,
    pairs: &[(G::Arrow, G::Arrow)],
) -> Result<CocycleReport<(G::Arrow, G::Arrow)>, GroupoidError>
where
    G: DiscreteGroupoid,
    F: IntegerCocycle1<G::Arrow> + ?Sized,
{
    let mut rep = CocycleReport { checked: 0, max_residual: 0.0, failures: 0, witness: None };
    for (a, b) in pairs {
        let ab = composite(g, a, b)?;
        let lhs = f.eval(&ab);
        let rhs = f.eval(a).checked_add(f.eval(b)).ok_or(crate::ext_int::Overflow)?;
        let r = if lhs == rhs { 0.0 } else { (lhs as f64 - rhs as f64).abs().max(1.0) };
        rep.record(r, 0.0, || (a.clone(), b.clone()));
    }
    Ok(rep)
}

/// `ζ(γ1,γ2γ3) ζ(γ2,γ3) = ζ(γ1,γ2) ζ(γ1γ2,γ3)` within `tol` on every triple.
/// Values off the unit circle are an input error rather than a failure.
pub fn check_cocycle2<G, Z>(
    g: &G,
    zeta: &Z,
    triples: &[(G::Arrow, G::Arrow, G::Arrow)],
    tol: f64,
) -> Result<CocycleReport<(G::Arrow, G::Arrow, G::Arrow)>, GroupoidError>
where
    G: DiscreteGroupoid,
    Z: Cocycle2<G::Arrow> + ?Sized,
{
    let on_circle = |a: &G::Arrow, b: &G::Arrow| -> Result<Complex64, GroupoidError> {
        let v = zeta.eval(a, b);
        if (v.norm() - 1.0).abs() > tol {
            return Err(GroupoidError::OffCircle { value: v.norm(), at: format!("{a:?} . {b:?}") });
        }
        Ok(v)
    };
    let mut rep = CocycleReport { checked: 0, max_residual: 0.0, failures: 0, witness: None };
    for (a, b, c) in triples {
        let ab = composite(g, a, b)?;
        let bc = composite(g, b, c)?;
        let lhs = on_circle(a, &bc)? * on_circle(b, c)?;
        let rhs = on_circle(a, b)? * on_circle(&ab, c)?;
        rep.record((lhs - rhs).norm(), tol, || (a.clone(), b.clone(), c.clone()));
    }
    Ok(rep)
}
