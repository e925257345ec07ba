//! Schouten brackets of bivector fields from their first jets.

use super::tensors::BivectorJet;

/// `Σ_l (A^{li} ∂_l B^{jk} + A^{lj} ∂_l B^{ki} + A^{lk} ∂_l B^{ij})`.
fn cyclic(a: &BivectorJet, b: &BivectorJet, i: usize, j: usize, k: usize) -> f64 {
    (0..a.partials.len())
        .map(|l| {
            a.value[(l, i)] * b.partials[l][(j, k)]
                + a.value[(l, j)] * b.partials[l][(k, i)]
                + a.value[(l, k)] * b.partials[l][(i, j)]
        })
        .sum()
}

/// The Jacobiator `{{x_i,x_j},x_k} + cyclic`, half of `[Π,Π]^{ijk}`.
pub fn jacobiator(p: &BivectorJet, i: usize, j: usize, k: usize) -> f64 {
    cyclic(p, p, i, j, k)
}

/// `[A,B]^{ijk}`, symmetric in `A, B`; `[Π,Π]` is the case `A = B`.
pub fn bracket_component(a: &BivectorJet, b: &BivectorJet, i: usize, j: usize, k: usize) -> f64 {
    cyclic(a, b, i, j, k) + cyclic(b, a, i, j, k)
}

/// Max-norm of `[A,B]` over `i < j < k` (the bracket is totally antisymmetric).
pub fn bracket_norm(a: &BivectorJet, b: &BivectorJet) -> f64 {
    let m = a.value.nrows();
    let mut worst = 0.0f64;
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                worst = worst.max(bracket_component(a, b, i, j, k).abs());
            }
        }
    }
    worst
}

/// Max-norm of `[Π,Π]`.
pub fn schouten(p: &BivectorJet) -> f64 {
    bracket_norm(p, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::dual::{Dual, Real};
    use crate::poisson::mat::Mat;

    /// `{x1,x2} = x3`, `{x3,x4} = x1` on `R^4`.
    fn bad<T: Real>(x: &[T]) -> Mat<T> {
        let mut p = Mat::zeros(4, 4);
        p[(0, 1)] = x[2];
        p[(1, 0)] = -x[2];
        p[(2, 3)] = x[0];
        p[(3, 2)] = -x[0];
        p
    }

    /// Linear Poisson structure of `so(3)`.
    fn so3<T: Real>(x: &[T]) -> Mat<T> {
        let mut p = Mat::zeros(3, 3);
        p[(0, 1)] = x[2];
        p[(1, 0)] = -x[2];
        p[(1, 2)] = x[0];
        p[(2, 1)] = -x[0];
        p[(2, 0)] = x[1];
        p[(0, 2)] = -x[1];
        p
    }

    #[test]
    fn negative_control_jacobiator() {
        let x = [0.8, -0.3, 1.7, 0.4];
        let jet = BivectorJet::of(|v: &[Dual<f64>]| bad(v), &x);
        assert!((jacobiator(&jet, 0, 1, 3) - x[0]).abs() < 1e-15);
        assert!(schouten(&jet) >= 2.0 * x[0].abs() - 1e-15);
    }

    #[test]
    fn lie_poisson_is_poisson() {
        let jet = BivectorJet::of(|v: &[Dual<f64>]| so3(v), &[0.3, 1.2, -0.7]);
        assert!(schouten(&jet) < 1e-15);
    }
}
