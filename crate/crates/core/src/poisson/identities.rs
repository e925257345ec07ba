//! Pointwise residuals of the bihamiltonian identities of the pencil.

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::chart::{c_of_x, ChartPoint};
use super::dual::{gradient, seed, Dual, Real};
use super::schouten::{bracket_norm, schouten};
use super::tensors::{hamiltonian, invariant, momentum_residual, PencilModel};
use super::PoissonError;

/// Below this distance from `1 − t` the local hamiltonian `log|c_k − 1 + t|` is skipped.
pub const SINGULAR_GAP: f64 = 1e-6;

/// Standard deviation of random chart points.
pub const SAMPLE_SCALE: f64 = 0.7;

#[derive(Debug, Clone, Default, Serialize)]
pub struct IdentityReport {
    /// `|J σ_{H_k} − (c_k − 1) σ_{H_k}|`
    pub recursion: f64,
    /// `|Π_t db_k − σ_{H_k}|` over the non-skipped `k`.
    pub hamiltonian: f64,
    /// Indices `k` (1-based) skipped near the singular locus.
    pub hamiltonian_skipped: Vec<usize>,
    /// `|dI_{k+1} − Jᵀ dI_k|`
    pub lenard: f64,
    /// `|div_ρ Π_t − Σ σ_{H_k}|`
    pub modular: f64,
    /// `|{c_i, c_j}_{Π_t}|`
    pub involution: f64,
    /// `|Π_λ dc_k − σ_{H_k}|`, the condition that pinned the sign.
    pub momentum: f64,
    pub schouten_00: f64,
    pub schouten_0l: f64,
    pub schouten_ll: f64,
    pub schouten_tt: f64,
}

fn max_abs(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Modular field `(div_ρ Π)^j = ρ⁻¹ Σ_i ∂_i(ρ Π^{ij})` with `ρ = |Pf Ω_λ|`.
pub fn modular_field(model: &PencilModel, x: &[f64], t: f64) -> Result<Vec<f64>, PoissonError> {
    let m = x.len();
    let mut div = vec![0.0; m];
    let mut rho0 = 0.0;
    for i in 0..m {
        let xd = seed(x, i);
        let omega = super::tensors::omega_lambda(&xd);
        let rho = omega.det().abs().sqrt();
        let field = model.pi_t(&xd, t)?.scale(rho);
        rho0 = rho.re;
        for (j, d) in div.iter_mut().enumerate() {
            *d += field[(i, j)].eps;
        }
    }
    Ok(div.into_iter().map(|d| d / rho0).collect())
}

pub fn identity_suite(model: &PencilModel, p: &ChartPoint, t: f64) -> Result<IdentityReport, PoissonError> {
    let n = model.n;
    let x = p.x();
    let ten = model.tensors_at(p, t)?;
    let sig: Vec<DVector<f64>> = ten.sigma.iter().map(|s| DVector::from_column_slice(s)).collect();
    let dc: Vec<Vec<f64>> = (0..n).map(|k| gradient(|v| c_of_x(v)[k], &x)).collect();
    let mut rep = IdentityReport {
        recursion: max_abs((0..n).flat_map(|k| {
            let r = &ten.j * &sig[k] - &sig[k] * (ten.c[k] - 1.0);
            r.iter().copied().collect::<Vec<_>>()
        })),
        ..Default::default()
    };

    let mut ham = Vec::new();
    for k in 0..n {
        if (ten.c[k] - (1.0 - t)).abs() < SINGULAR_GAP {
            rep.hamiltonian_skipped.push(k + 1);
            continue;
        }
        let db = gradient(|v| (c_of_x(v)[k] - Dual::cst(1.0 - t)).abs().ln(), &x);
        ham.extend((hamiltonian(&ten.pi_t, &db) - &sig[k]).iter().copied());
    }
    rep.hamiltonian = max_abs(ham);

    let di: Vec<DVector<f64>> = (1..=n + 1).map(|k| DVector::from_vec(gradient(|v| invariant(v, k), &x))).collect();
    rep.lenard = max_abs((0..n).flat_map(|k| {
        let r = &di[k + 1] - ten.j.transpose() * &di[k];
        r.iter().copied().collect::<Vec<_>>()
    }));

    let chi: Vec<f64> = (0..2 * n).map(|j| ten.sigma.iter().map(|s| s[j]).sum()).collect();
    let div = modular_field(model, &x, t)?;
    rep.modular = max_abs(div.iter().zip(&chi).map(|(a, b)| a - b));

    let mut inv = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let a = DVector::from_column_slice(&dc[i]);
            let b = DVector::from_column_slice(&dc[j]);
            inv.push((a.transpose() * &ten.pi_t * b)[(0, 0)]);
        }
    }
    rep.involution = max_abs(inv);
    rep.momentum = momentum_residual(&ten.pi_lambda, &x);

    let j0 = model.pi0_jet(&x);
    let jl = model.pi_lambda_jet(&x)?;
    let jt = j0.combine(1.0, &jl, t);
    rep.schouten_00 = schouten(&j0);
    rep.schouten_0l = bracket_norm(&j0, &jl);
    rep.schouten_ll = schouten(&jl);
    rep.schouten_tt = schouten(&jt);
    Ok(rep)
}

/// Worst residuals over seeded random points; point `i` uses stream `i`.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityBatch {
    pub n: usize,
    pub t: f64,
    pub samples: usize,
    pub seed: u64,
    pub worst: IdentityReport,
    /// Points where some hamiltonian check was skipped.
    pub skipped_points: usize,
}

pub fn sample_point(n: usize, seed: u64, index: u64) -> ChartPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    ChartPoint::random(n, SAMPLE_SCALE, &mut rng)
}

pub fn identity_batch(n: usize, t: f64, samples: usize, seed: u64) -> Result<IdentityBatch, PoissonError> {
    let model = PencilModel::new(n)?;
    let reports: Vec<IdentityReport> = (0..samples as u64)
        .into_par_iter()
        .map(|i| identity_suite(&model, &sample_point(n, seed, i), t))
        .collect::<Result<_, _>>()?;
    let mut worst = IdentityReport::default();
    let mut skipped_points = 0;
    for r in &reports {
        worst.recursion = worst.recursion.max(r.recursion);
        worst.hamiltonian = worst.hamiltonian.max(r.hamiltonian);
        worst.lenard = worst.lenard.max(r.lenard);
        worst.modular = worst.modular.max(r.modular);
        worst.involution = worst.involution.max(r.involution);
        worst.momentum = worst.momentum.max(r.momentum);
        worst.schouten_00 = worst.schouten_00.max(r.schouten_00);
        worst.schouten_0l = worst.schouten_0l.max(r.schouten_0l);
        worst.schouten_ll = worst.schouten_ll.max(r.schouten_ll);
        worst.schouten_tt = worst.schouten_tt.max(r.schouten_tt);
        if !r.hamiltonian_skipped.is_empty() {
            skipped_points += 1;
        }
    }
    Ok(IdentityBatch { n, t, samples, seed, worst, skipped_points })
}

/// Tolerances by derivative order.
pub mod tol {
    pub const ALGEBRAIC: f64 = 1e-10;
    pub const FIRST: f64 = 1e-8;
    pub const SECOND: f64 = 1e-6;
}

impl IdentityReport {
    /// Names and values of residuals above their tolerance.
    pub fn violations(&self) -> Vec<(&'static str, f64)> {
        let checks = [
            ("recursion", self.recursion, tol::FIRST),
            ("hamiltonian", self.hamiltonian, tol::FIRST),
            ("lenard", self.lenard, tol::SECOND),
            ("modular", self.modular, tol::SECOND),
            ("involution", self.involution, tol::FIRST),
            ("momentum", self.momentum, tol::FIRST),
            ("schouten_00", self.schouten_00, tol::FIRST),
            ("schouten_0l", self.schouten_0l, tol::FIRST),
            ("schouten_ll", self.schouten_ll, tol::FIRST),
            ("schouten_tt", self.schouten_tt, tol::FIRST),
        ];
        checks.into_iter().filter(|(_, v, t)| !(v <= t)).map(|(k, v, _)| (k, v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn origin_is_a_fixed_point() {
        for n in 1..=3 {
            let m = PencilModel::new(n).unwrap();
            let p = ChartPoint::new(vec![Complex64::default(); n]);
            let t = m.tensors_at(&p, 0.3).unwrap();
            assert!(t.sigma.iter().all(|s| s.iter().all(|v| *v == 0.0)));
            let r = identity_suite(&m, &p, 0.3).unwrap();
            assert!(r.violations().is_empty(), "{r:?}");
            assert!(r.recursion == 0.0 && r.modular < 1e-12);
        }
    }

    #[test]
    fn random_points_small_batch() {
        for n in 1..=2 {
            for t in [0.0, 0.5, 1.0] {
                let b = identity_batch(n, t, 8, 42).unwrap();
                assert!(b.worst.violations().is_empty(), "n={n} t={t}: {:?}", b.worst);
            }
        }
    }

    #[test]
    fn modular_field_does_not_depend_on_t() {
        let m = PencilModel::new(2).unwrap();
        let x = sample_point(2, 9, 0).x();
        let a = modular_field(&m, &x, 0.0).unwrap();
        let b = modular_field(&m, &x, 0.7).unwrap();
        for (u, v) in a.iter().zip(&b) {
            assert!((u - v).abs() < 1e-6);
        }
    }

    #[test]
    fn hamiltonian_is_skipped_on_singular_locus() {
        // c_1 = 1 − t at t = 0.5 needs |y_1| = 1
        let m = PencilModel::new(1).unwrap();
        let p = ChartPoint::new(vec![Complex64::new(0.6, 0.8)]);
        let r = identity_suite(&m, &p, 0.5).unwrap();
        assert_eq!(r.hamiltonian_skipped, vec![1]);
    }
}
