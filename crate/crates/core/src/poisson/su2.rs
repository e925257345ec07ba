//! `CP_1 = SU(2)/T` in Lu coordinates: the Poisson–Lie tensor pushed down
//! from `SU(2)` against the closed form.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::lie::{su_sb_split, CMat};
use super::tensors::{omega_lambda, pi0};

fn cm(a: [[Complex64; 2]; 2]) -> CMat {
    CMat::from_fn(2, 2, |i, j| a[i][j])
}

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `iσ_1, iσ_2, iσ_3`
pub fn su2_basis() -> [CMat; 3] {
    [cm([[ZERO, I], [I, ZERO]]), cm([[ZERO, ONE], [-ONE, ZERO]]), cm([[I, ZERO], [ZERO, -I]])]
}

pub fn sb2_basis() -> [CMat; 3] {
    [cm([[ONE, ZERO], [ZERO, -ONE]]), cm([[ZERO, ONE], [ZERO, ZERO]]), cm([[ZERO, I], [ZERO, ZERO]])]
}

pub fn pairing(x: &CMat, xi: &CMat) -> f64 {
    (x * xi).trace().im
}

/// `ξ^a ∈ sb(2)` with `⟨X_a, ξ^b⟩ = δ_ab`.
pub fn dual_basis() -> [CMat; 3] {
    let xs = su2_basis();
    let es = sb2_basis();
    let gram = DMatrix::from_fn(3, 3, |a, b| pairing(&xs[a], &es[b]));
    let inv = gram.try_inverse().expect("pairing is nondegenerate");
    std::array::from_fn(|a| (0..3).fold(CMat::zeros(2, 2), |acc, b| acc + &es[b] * Complex64::new(inv[(b, a)], 0.0)))
}

/// The big-cell section `y ↦ g(y)` with `g_00/g_10 = y`.
pub fn g_of_y(y: Complex64) -> CMat {
    let e = (1.0 + y.norm_sqr()).sqrt();
    cm([[-y, ONE], [-ONE, -y.conj()]]) / Complex64::new(e, 0.0)
}

/// `(∂u, ∂v)` of `y = g_00/g_10` along the right-invariant field `X g`.
fn dy(x: &CMat, g: &CMat) -> [f64; 2] {
    let v = x * g;
    let d = v[(0, 0)] / g[(1, 0)] - g[(0, 0)] * v[(1, 0)] / (g[(1, 0)] * g[(1, 0)]);
    [d.re, d.im]
}

#[derive(Debug, Clone, Serialize)]
pub struct Su2Report {
    /// `Π^{uv}` pushed down from `SU(2)` before normalisation.
    pub projected: f64,
    /// `Π_0^{uv} = −(1+|y|²)/2`
    pub closed_form: f64,
    /// `projected / closed_form`
    pub raw_ratio: f64,
    /// `|−½·projected − closed_form|` over all entries.
    pub residual: f64,
    /// `|Ω_λ^{uv} + 2/(1+|y|²)²|`
    pub kk_residual: f64,
    /// `max |⟨X_a, ξ^b⟩ − δ_ab|`
    pub gram_residual: f64,
}

/// Normalisation between the pushed-down tensor and the chart convention.
pub const SU2_SCALE: f64 = -0.5;

pub fn su2_check(y: Complex64) -> Su2Report {
    let xs = su2_basis();
    let xis = dual_basis();
    let g = g_of_y(y);
    let gi = g.adjoint();
    let parts: Vec<(CMat, CMat)> =
        xis.iter().map(|xi| su_sb_split(&(&gi * xi * &g)).expect("conjugate of a traceless matrix")).collect();
    let p = DMatrix::from_fn(3, 3, |a, b| -(&parts[a].0 * &parts[b].1).trace().im);
    let d = DMatrix::from_fn(3, 2, |a, i| dy(&xs[a], &g)[i]);
    let proj = d.transpose() * p * d;
    let x = [y.re, y.im];
    let closed = pi0(&x).values();
    let residual = (&proj * SU2_SCALE - &closed).amax();
    let q = 1.0 + y.norm_sqr();
    let omega = omega_lambda(&x).values();
    let gram_residual = (0..3)
        .flat_map(|a| (0..3).map(move |b| (a, b)))
        .map(|(a, b)| (pairing(&xs[a], &xis[b]) - if a == b { 1.0 } else { 0.0 }).abs())
        .fold(0.0, f64::max);
    Su2Report {
        projected: proj[(0, 1)],
        closed_form: closed[(0, 1)],
        raw_ratio: proj[(0, 1)] / closed[(0, 1)],
        residual,
        kk_residual: (omega[(0, 1)] + 2.0 / (q * q)).abs(),
        gram_residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn section_lands_in_su2() {
        let g = g_of_y(Complex64::new(0.3, -1.1));
        assert!((g.determinant() - ONE).norm() < 1e-15);
        assert!(super::super::lie::dist(&(g.adjoint() * &g), &CMat::identity(2, 2)) < 1e-15);
        assert!((g[(0, 0)] / g[(1, 0)] - Complex64::new(0.3, -1.1)).norm() < 1e-15);
    }

    #[test]
    fn origin() {
        let r = su2_check(ZERO);
        assert!(r.residual < 1e-12 && r.kk_residual < 1e-12, "{r:?}");
        assert!((r.closed_form + 0.5).abs() < 1e-15);
    }

    #[test]
    fn random_and_far_points() {
        for y in
            [Complex64::new(0.4, 0.9), Complex64::new(-1.3, 0.2), Complex64::new(10.0, 0.0), Complex64::new(6.0, -8.0)]
        {
            let r = su2_check(y);
            assert!(r.residual <= 1e-8 * (1.0 + y.norm_sqr()), "{y}: {r:?}");
            assert!((r.raw_ratio + 2.0).abs() < 1e-10);
            assert!(r.kk_residual < 1e-10);
        }
    }

    #[test]
    fn dual_bases_pair_to_identity() {
        assert!(su2_check(Complex64::new(0.2, 0.1)).gram_residual < 1e-15);
    }
}
