//! `SL(n+1,ℂ) = SU(n+1)·SB(n+1,ℂ)`, the momentum maps, and the dressing
//! construction of groupoid arrows.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use super::PoissonError;

pub type CMat = DMatrix<Complex64>;

const ALG_TOL: f64 = 1e-10;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Max-norm of `a − b`.
pub fn dist(a: &CMat, b: &CMat) -> f64 {
    (a - b).iter().fold(0.0, |m, z| m.max(z.norm()))
}

/// Rotation in the `(e_1, e_{n+1})` plane carrying `e_1` to `√(1−t)e_1 + √t e_{n+1}`
/// under the row action.
pub fn sigma_t(n: usize, t: f64) -> CMat {
    let mut s = CMat::identity(n + 1, n + 1);
    if n == 0 {
        return s;
    }
    let (a, b) = ((1.0 - t).sqrt(), t.sqrt());
    s[(0, 0)] = c(a);
    s[(0, n)] = c(b);
    s[(n, 0)] = c(-b);
    s[(n, n)] = c(a);
    s
}

pub fn is_special_unitary(u: &CMat, tol: f64) -> bool {
    let id = CMat::identity(u.nrows(), u.ncols());
    dist(&(u.adjoint() * u), &id) <= tol && (u.determinant() - c(1.0)).norm() <= tol
}

pub fn is_sb(b: &CMat, tol: f64) -> bool {
    let n = b.nrows();
    let lower = (0..n).all(|i| (0..i).all(|j| b[(i, j)].norm() <= tol));
    let diag = (0..n).all(|i| b[(i, i)].re > 0.0 && b[(i, i)].im.abs() <= tol);
    lower && diag && (b.determinant() - c(1.0)).norm() <= tol
}

/// `d = q·r` with `r` upper triangular with positive diagonal.
pub fn qr_pos(d: &CMat) -> (CMat, CMat) {
    let qr = d.clone().qr();
    let (mut q, mut r) = (qr.q(), qr.r());
    for i in 0..r.nrows() {
        let z = r[(i, i)];
        let ph = if z.norm() > 0.0 { z / z.norm() } else { c(1.0) };
        q.column_mut(i).iter_mut().for_each(|v| *v *= ph);
        r.row_mut(i).iter_mut().for_each(|v| *v *= ph.conj());
    }
    (q, r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    /// `d = u·b`
    SuSb,
    /// `d = b·u`
    SbSu,
}

/// Iwasawa factors in the requested order.
pub fn iwasawa(d: &CMat, order: Order) -> Result<(CMat, CMat), PoissonError> {
    if !d.is_square() || (d.determinant() - c(1.0)).norm() > ALG_TOL {
        return Err(PoissonError::NotSl);
    }
    match order {
        Order::SuSb => Ok(qr_pos(d)),
        Order::SbSu => {
            // d⁻¹ = u'·b' gives d = b'⁻¹·u'⁻¹
            let inv = d.clone().try_inverse().ok_or(PoissonError::Singular)?;
            let (u, b) = qr_pos(&inv);
            let bi = b.try_inverse().ok_or(PoissonError::Singular)?;
            Ok((bi, u.adjoint()))
        }
    }
}

/// `X = p_1 X + p_2 X` with `p_1 X ∈ su`, `p_2 X ∈ sb`.
pub fn su_sb_split(x: &CMat) -> Result<(CMat, CMat), PoissonError> {
    if x.trace().norm() > ALG_TOL {
        return Err(PoissonError::NotTraceless);
    }
    let n = x.nrows();
    let mut su = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..i {
            su[(i, j)] = x[(i, j)];
            su[(j, i)] = -x[(i, j)].conj();
        }
        su[(i, i)] = Complex64::new(0.0, x[(i, i)].im);
    }
    let sb = x - &su;
    Ok((su, sb))
}

/// `h_k = log det_k γ`, the logs of the leading principal minors.
pub fn momentum_h(gamma: &CMat) -> Result<Vec<f64>, PoissonError> {
    if !is_sb(gamma, ALG_TOL) {
        return Err(PoissonError::NotSb("expected upper triangular, positive diagonal, det 1".into()));
    }
    let n = gamma.nrows() - 1;
    let mut acc = 0.0;
    Ok((0..n)
        .map(|i| {
            acc += gamma[(i, i)].re.ln();
            acc
        })
        .collect())
}

/// `c_k = Σ_{j≤k}|X_j|² / |X|²` for `X = e_1ᵀ σ_t⁻¹ g`.
pub fn momentum_c(g: &CMat, t: f64) -> Vec<f64> {
    let n = g.nrows() - 1;
    let x = sigma_t(n, t).adjoint().row(0) * g;
    let total: f64 = x.iter().map(|z| z.norm_sqr()).sum();
    let mut acc = 0.0;
    (0..n)
        .map(|j| {
            acc += x[j].norm_sqr();
            acc / total
        })
        .collect()
}

/// An arrow `(g, γ)` of the double groupoid with its dressing data.
#[derive(Debug, Clone)]
pub struct Element {
    pub g: CMat,
    pub gamma: CMat,
    /// `g^γ`, the target in `SU(n+1)`.
    pub u0: CMat,
    /// `{}^gγ ∈ U_t(n)^⊥`
    pub lambda: CMat,
}

impl Element {
    /// `‖gγ − λ u0‖`
    pub fn reconstruction_residual(&self) -> f64 {
        dist(&(&self.g * &self.gamma), &(&self.lambda * &self.u0))
    }
}

/// `ξ` may only be nonzero in the first row, columns `2..n+1`.
pub fn check_xi(xi: &CMat) -> Result<(), PoissonError> {
    let off = xi
        .iter()
        .enumerate()
        .filter(|(idx, _)| {
            let (i, j) = (idx % xi.nrows(), idx / xi.nrows());
            !(i == 0 && j > 0)
        })
        .any(|(_, z)| z.norm() > 0.0);
    if off || !xi.is_square() {
        return Err(PoissonError::Domain("ξ must live in the first row off the diagonal".into()));
    }
    Ok(())
}

pub fn build_element(g: &CMat, xi: &CMat, t: f64) -> Result<Element, PoissonError> {
    check_xi(xi)?;
    let n = g.nrows() - 1;
    let s = sigma_t(n, t);
    let (_, p2) = su_sb_split(&(&s * xi * s.adjoint()))?;
    let lambda = p2.exp();
    let li = lambda.clone().try_inverse().ok_or(PoissonError::Singular)?;
    let (u0, b) = qr_pos(&(li * g));
    let gamma = b.try_inverse().ok_or(PoissonError::Singular)?;
    Ok(Element { g: g.clone(), gamma, u0, lambda })
}

/// Residuals of the leaf-level action formula along one arrow.
#[derive(Debug, Clone, Serialize)]
pub struct CrossReport {
    pub c_src: Vec<f64>,
    pub c_tgt: Vec<f64>,
    /// `h_k = log det_k γ`
    pub h: Vec<f64>,
    /// Residual with the leaf shift `−2h`.
    pub residual: f64,
    /// Residual with the shift `h` as is.
    pub literal_residual: f64,
    pub reconstruction: f64,
    /// Indices `k` (1-based) with `c_src,k = 1−t` but `c_tgt,k ≠ 1−t`.
    pub pk_violations: Vec<usize>,
}

/// Shift on the leaf space induced by `γ`; `log det_k` is in units of half a leaf step.
pub const LEAF_SCALE: f64 = -2.0;

fn formula(t: f64, c: f64, h: f64) -> f64 {
    1.0 - t + (-h).exp() * (c + t - 1.0)
}

pub fn raction_crosscheck(g: &CMat, xi: &CMat, t: f64) -> Result<CrossReport, PoissonError> {
    let e = build_element(g, xi, t)?;
    let c_src = momentum_c(g, t);
    let c_tgt = momentum_c(&e.u0, t);
    let h = momentum_h(&e.gamma)?;
    let mut residual = 0.0f64;
    let mut literal = 0.0f64;
    let mut pk = Vec::new();
    for k in 0..c_src.len() {
        residual = residual.max((c_tgt[k] - formula(t, c_src[k], LEAF_SCALE * h[k])).abs());
        literal = literal.max((c_tgt[k] - formula(t, c_src[k], h[k])).abs());
        if (c_src[k] - (1.0 - t)).abs() < 1e-9 && (c_tgt[k] - (1.0 - t)).abs() > 1e-8 {
            pk.push(k + 1);
        }
    }
    Ok(CrossReport {
        c_src,
        c_tgt,
        h,
        residual,
        literal_residual: literal,
        reconstruction: e.reconstruction_residual(),
        pk_violations: pk,
    })
}

fn gaussian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    CMat::from_fn(n, n, |_, _| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
}

/// Haar-distributed `SU(m)`.
pub fn random_su<R: Rng + ?Sized>(m: usize, rng: &mut R) -> CMat {
    let (mut q, _) = qr_pos(&gaussian(m, rng));
    let ph = q.determinant();
    let fix = (ph / ph.norm()).conj();
    for k in 0..m {
        q[(k, 0)] *= fix;
    }
    q
}

pub fn random_sl<R: Rng + ?Sized>(m: usize, rng: &mut R) -> CMat {
    let d = gaussian(m, rng);
    let root = d.determinant().powf(1.0 / m as f64);
    d / root
}

/// Gaussian `ξ` in the first row, columns `2..n+1`.
pub fn random_xi<R: Rng + ?Sized>(n: usize, scale: f64, rng: &mut R) -> CMat {
    let mut xi = CMat::zeros(n + 1, n + 1);
    for j in 1..=n {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        xi[(0, j)] = Complex64::new(re, im) * scale;
    }
    xi
}

/// Random element of `S(U(k) × U(n+1−k))`, which sits on `c_k = 1 − t`.
pub fn random_block_su<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> CMat {
    let a = random_su(k, rng);
    let b = random_su(n + 1 - k, rng);
    let mut g = CMat::zeros(n + 1, n + 1);
    g.view_mut((0, 0), (k, k)).copy_from(&a);
    g.view_mut((k, k), (n + 1 - k, n + 1 - k)).copy_from(&b);
    g
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossBatch {
    pub n: usize,
    pub t: f64,
    pub samples: usize,
    pub seed: u64,
    pub max_residual: f64,
    pub max_literal_residual: f64,
    pub max_reconstruction: f64,
    /// Samples drawn on some `c_k = 1 − t`.
    pub pk_samples: usize,
    pub pk_violations: usize,
}

impl CrossBatch {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_residual <= tol && self.max_reconstruction <= ALG_TOL && self.pk_violations == 0
    }
}

/// Scale of random `ξ`.
pub const XI_SCALE: f64 = 0.6;

/// Every fourth sample is drawn from a block subgroup to exercise `P_k` invariance.
pub fn crosscheck_batch(n: usize, t: f64, samples: usize, seed: u64) -> Result<CrossBatch, PoissonError> {
    if n == 0 || !(0.0..=1.0).contains(&t) {
        return Err(PoissonError::Domain("need n ≥ 1 and t ∈ [0,1]".into()));
    }
    let reports: Vec<(bool, CrossReport)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let block = i % 4 == 3;
            let g =
                if block { random_block_su(n, 1 + (i as usize / 4) % n, &mut rng) } else { random_su(n + 1, &mut rng) };
            let xi = random_xi(n, XI_SCALE, &mut rng);
            raction_crosscheck(&g, &xi, t).map(|r| (block, r))
        })
        .collect::<Result<_, _>>()?;
    let mut b = CrossBatch {
        n,
        t,
        samples,
        seed,
        max_residual: 0.0,
        max_literal_residual: 0.0,
        max_reconstruction: 0.0,
        pk_samples: 0,
        pk_violations: 0,
    };
    for (block, r) in &reports {
        b.max_residual = b.max_residual.max(r.residual);
        b.max_literal_residual = b.max_literal_residual.max(r.literal_residual);
        b.max_reconstruction = b.max_reconstruction.max(r.reconstruction);
        b.pk_samples += *block as usize;
        b.pk_violations += r.pk_violations.len();
    }
    Ok(b)
}
