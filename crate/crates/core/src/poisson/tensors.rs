//! The Poisson pencil `π_t = π_0 + t π_λ` in real Lu coordinates.

use nalgebra::{DMatrix, DVector};

use super::chart::{c_of_x, z_of_x, ChartPoint};
use super::dual::{seed, Dual, Real};
use super::mat::Mat;
use super::PoissonError;

/// `π_0 = i Σ (1+|y_j|²) ∂_{y_j}∧∂_{ȳ_j}`, i.e. `Π^{u_j v_j} = −(1+|y_j|²)/2`.
pub fn pi0<T: Real>(x: &[T]) -> Mat<T> {
    let mut p = Mat::zeros(x.len(), x.len());
    for j in 0..x.len() / 2 {
        let (u, v) = (x[2 * j], x[2 * j + 1]);
        let w = (T::one() + u * u + v * v) * T::cst(0.5);
        p[(2 * j, 2 * j + 1)] = -w;
        p[(2 * j + 1, 2 * j)] = w;
    }
    p
}

/// Liouville form `Σ (v_i du_i − u_i dv_i) / (1 + |z|²)` in the `z`-chart.
fn liouville<T: Real>(z: &[T]) -> Vec<T> {
    let d = z.iter().fold(T::one(), |s, v| s + *v * *v);
    let mut th = vec![T::zero(); z.len()];
    for i in 0..z.len() / 2 {
        th[2 * i] = z[2 * i + 1] / d;
        th[2 * i + 1] = -z[2 * i] / d;
    }
    th
}

/// `Ω[a][b] = ∂_a θ_b − ∂_b θ_a` in the `z`-chart.
fn omega_z<T: Real>(z: &[T]) -> Mat<T> {
    let m = z.len();
    let mut d = Mat::zeros(m, m);
    for a in 0..m {
        let th = liouville(&seed(z, a));
        for b in 0..m {
            d[(a, b)] = th[b].eps;
        }
    }
    Mat::from_fn(m, m, |a, b| d[(a, b)] - d[(b, a)])
}

/// `∂z/∂x` with rows indexed by `z` coordinates.
fn jac_z<T: Real>(x: &[T]) -> Mat<T> {
    let m = x.len();
    let mut j = Mat::zeros(m, m);
    for i in 0..m {
        let z = z_of_x(&seed(x, i));
        for a in 0..m {
            j[(a, i)] = z[a].eps;
        }
    }
    j
}

/// The Kirillov-Kostant form `ω_λ` pulled back to Lu coordinates.
pub fn omega_lambda<T: Real>(x: &[T]) -> Mat<T> {
    let jz = jac_z(x);
    jz.transpose().mul(&omega_z(&z_of_x(x))).mul(&jz)
}

/// Fundamental field of the torus generator `H_k`: `Σ_{j≤k} (−v_j ∂_{u_j} + u_j ∂_{v_j})`.
pub fn sigma_h<T: Real>(x: &[T], k: usize) -> Vec<T> {
    let mut s = vec![T::zero(); x.len()];
    for j in 0..k {
        s[2 * j] = -x[2 * j + 1];
        s[2 * j + 1] = x[2 * j];
    }
    s
}

/// Hamiltonian field of `df`, contracting the first slot: `X^j = Σ_i Π^{ij} ∂_i f`.
pub fn hamiltonian(p: &DMatrix<f64>, df: &[f64]) -> DVector<f64> {
    p.transpose() * DVector::from_column_slice(df)
}

#[derive(Debug, Clone)]
pub struct TensorsAtPoint {
    pub pi0: DMatrix<f64>,
    pub omega: DMatrix<f64>,
    pub pi_lambda: DMatrix<f64>,
    pub pi_t: DMatrix<f64>,
    /// Recursion operator `J = Π_0 Ω_λ`.
    pub j: DMatrix<f64>,
    pub c: Vec<f64>,
    /// `σ_{H_k}` for `k = 1..n`.
    pub sigma: Vec<Vec<f64>>,
    /// `I_k = Tr(J^k)/k` for `k = 1..n`.
    pub invariants: Vec<f64>,
}

/// The pencil on `CP_n` with the sign of `π_λ = ±ω_λ^{−1}` pinned once.
#[derive(Debug, Clone, Copy)]
pub struct PencilModel {
    pub n: usize,
    /// `+1` or `−1`.
    pub sign: f64,
}

fn reference_point(n: usize) -> Vec<f64> {
    (0..2 * n).map(|i| 0.35 - 0.17 * i as f64 + 0.05 * (i * i) as f64).collect()
}

impl PencilModel {
    /// Fixes the sign by the momentum condition `σ_{H_k} = X_{c_k}` for
    /// `π_λ` at a generic reference point.
    pub fn new(n: usize) -> Result<Self, PoissonError> {
        if n == 0 {
            return Err(PoissonError::Domain("n must be at least 1".into()));
        }
        let x = reference_point(n);
        let inv = omega_lambda(&x).values().try_inverse().ok_or(PoissonError::Singular)?;
        let fit = |s: f64| momentum_residual(&(&inv * s), &x);
        let sign = if fit(1.0) <= fit(-1.0) { 1.0 } else { -1.0 };
        if fit(sign) > 1e-8 {
            return Err(PoissonError::Sign(fit(sign)));
        }
        Ok(PencilModel { n, sign })
    }

    pub fn pi_lambda<T: Real>(&self, x: &[T]) -> Result<Mat<T>, PoissonError> {
        let inv = omega_lambda(x).inverse().ok_or(PoissonError::Singular)?;
        Ok(inv.scale(T::cst(self.sign)))
    }

    pub fn pi_t<T: Real>(&self, x: &[T], t: f64) -> Result<Mat<T>, PoissonError> {
        Ok(pi0(x).add(&self.pi_lambda(x)?.scale(T::cst(t))))
    }

    /// `J = Π_0 Ω_λ` over any scalar.
    pub fn recursion<T: Real>(x: &[T]) -> Mat<T> {
        pi0(x).mul(&omega_lambda(x))
    }

    pub fn tensors_at(&self, p: &ChartPoint, t: f64) -> Result<TensorsAtPoint, PoissonError> {
        let x = p.x();
        if x.len() != 2 * self.n {
            return Err(PoissonError::Domain(format!("expected {} coordinates", self.n)));
        }
        let pi0 = pi0(&x).values();
        let omega = omega_lambda(&x).values();
        let pi_lambda = omega.clone().try_inverse().ok_or(PoissonError::Singular)? * self.sign;
        let pi_t = &pi0 + &pi_lambda * t;
        let j = &pi0 * &omega;
        let mut power = DMatrix::identity(2 * self.n, 2 * self.n);
        let invariants = (1..=self.n)
            .map(|k| {
                power = &power * &j;
                power.trace() / k as f64
            })
            .collect();
        Ok(TensorsAtPoint {
            c: c_of_x(&x),
            sigma: (1..=self.n).map(|k| sigma_h(&x, k)).collect(),
            pi0,
            omega,
            pi_lambda,
            pi_t,
            j,
            invariants,
        })
    }
}

/// `max_k |X_{c_k} − σ_{H_k}|` for the bivector `p` at `x`.
pub fn momentum_residual(p: &DMatrix<f64>, x: &[f64]) -> f64 {
    let n = x.len() / 2;
    (1..=n)
        .map(|k| {
            let dc = super::dual::gradient(|v| c_of_x(v)[k - 1], x);
            let xf = hamiltonian(p, &dc);
            xf.iter().zip(sigma_h(x, k)).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

/// `I_k(x) = Tr(J(x)^k)/k` over any scalar, for derivative passes.
pub fn invariant<T: Real>(x: &[T], k: usize) -> T {
    let j = PencilModel::recursion(x);
    let mut power = j.clone();
    for _ in 1..k {
        power = power.mul(&j);
    }
    power.trace() / T::cst(k as f64)
}

/// Values and first partials `∂_l` of a bivector field at a point.
#[derive(Debug, Clone)]
pub struct BivectorJet {
    pub value: DMatrix<f64>,
    pub partials: Vec<DMatrix<f64>>,
}

impl BivectorJet {
    /// Jet of any field written over dual numbers.
    pub fn of<F>(field: F, x: &[f64]) -> Self
    where
        F: Fn(&[Dual<f64>]) -> Mat<Dual<f64>>,
    {
        let mut value = None;
        let partials = (0..x.len())
            .map(|l| {
                let m = field(&seed(x, l));
                value.get_or_insert_with(|| m.map(|v| v.re).values());
                m.map(|v| v.eps).values()
            })
            .collect();
        BivectorJet { value: value.unwrap_or_else(|| DMatrix::zeros(0, 0)), partials }
    }

    pub fn combine(&self, s: f64, other: &Self, t: f64) -> Self {
        BivectorJet {
            value: &self.value * s + &other.value * t,
            partials: self.partials.iter().zip(&other.partials).map(|(a, b)| a * s + b * t).collect(),
        }
    }
}

impl PencilModel {
    pub fn pi0_jet(&self, x: &[f64]) -> BivectorJet {
        BivectorJet::of(pi0, x)
    }

    /// `∂_l Π_λ = −Π_λ (∂_l Ω_λ) Π_λ / s` with `s = ±1` the sign.
    pub fn pi_lambda_jet(&self, x: &[f64]) -> Result<BivectorJet, PoissonError> {
        let omega = BivectorJet::of(omega_lambda, x);
        let value = omega.value.clone().try_inverse().ok_or(PoissonError::Singular)? * self.sign;
        let partials = omega.partials.iter().map(|d| -(&value * d * &value) * self.sign).collect();
        Ok(BivectorJet { value, partials })
    }

    pub fn pi_t_jet(&self, x: &[f64], t: f64) -> Result<BivectorJet, PoissonError> {
        Ok(self.pi0_jet(x).combine(1.0, &self.pi_lambda_jet(x)?, t))
    }
}
