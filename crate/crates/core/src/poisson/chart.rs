//! Lu coordinates on the big cell of `CP_n` and the affine `z`-chart.
//!
//! Complex coordinates are stored as `y_j = x_{2j} + i·x_{2j+1}` (0-based),
//! i.e. `u_j = Re y_j` then `v_j = Im y_j`.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::dual::Real;

/// A point of the maximal cell in Lu coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPoint {
    pub y: Vec<Complex64>,
}

impl ChartPoint {
    pub fn new(y: Vec<Complex64>) -> Self {
        ChartPoint { y }
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    /// Real view `(u_1, v_1, …, u_n, v_n)`.
    pub fn x(&self) -> Vec<f64> {
        self.y.iter().flat_map(|c| [c.re, c.im]).collect()
    }

    pub fn from_x(x: &[f64]) -> Self {
        ChartPoint { y: x.chunks(2).map(|p| Complex64::new(p[0], p[1])).collect() }
    }

    /// Independent Gaussian real and imaginary parts with standard deviation `scale`.
    pub fn random<R: Rng + ?Sized>(n: usize, scale: f64, rng: &mut R) -> Self {
        let d = Normal::new(0.0, scale).expect("positive scale");
        ChartPoint { y: (0..n).map(|_| Complex64::new(d.sample(rng), d.sample(rng))).collect() }
    }
}

/// `z_i = y_i · Π_{j>i} (1 + |y_j|²)^{1/2}`.
pub fn y_to_z(y: &[Complex64]) -> Vec<Complex64> {
    let mut z = vec![Complex64::default(); y.len()];
    let mut acc = 1.0;
    for i in (0..y.len()).rev() {
        z[i] = y[i] * acc.sqrt();
        acc *= 1.0 + y[i].norm_sqr();
    }
    z
}

/// `y_i = z_i (1 + Σ_{j>i} |z_j|²)^{−1/2}`.
pub fn z_to_y(z: &[Complex64]) -> Vec<Complex64> {
    let mut y = vec![Complex64::default(); z.len()];
    let mut tail = 0.0;
    for i in (0..z.len()).rev() {
        y[i] = z[i] / (1.0 + tail).sqrt();
        tail += z[i].norm_sqr();
    }
    y
}

/// [`y_to_z`] on real views, over any scalar.
pub fn z_of_x<T: Real>(x: &[T]) -> Vec<T> {
    let n = x.len() / 2;
    let mut z = vec![T::zero(); x.len()];
    let mut acc = T::one();
    for i in (0..n).rev() {
        let (u, v) = (x[2 * i], x[2 * i + 1]);
        let s = acc.sqrt();
        z[2 * i] = u * s;
        z[2 * i + 1] = v * s;
        acc *= T::one() + u * u + v * v;
    }
    z
}

/// `c_k = 1 − Π_{i≤k} 1/(1 + |y_i|²)`.
pub fn c_of_x<T: Real>(x: &[T]) -> Vec<T> {
    let mut prod = T::one();
    x.chunks(2)
        .map(|p| {
            prod = prod / (T::one() + p[0] * p[0] + p[1] * p[1]);
            T::one() - prod
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn origin_and_single_coordinate() {
        assert_eq!(y_to_z(&[Complex64::default(); 3]), vec![Complex64::default(); 3]);
        let y = [Complex64::new(0.4, -2.0)];
        assert_eq!(y_to_z(&y), y.to_vec());
        assert_eq!(z_to_y(&y), y.to_vec());
    }

    #[test]
    fn round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=4 {
            for _ in 0..50 {
                let p = ChartPoint::random(n, 1.5, &mut rng);
                let back = z_to_y(&y_to_z(&p.y));
                for (a, b) in back.iter().zip(&p.y) {
                    assert!((a - b).norm() <= 1e-12);
                }
                let zx = z_of_x(&p.x());
                let z = y_to_z(&p.y);
                for (i, zi) in z.iter().enumerate() {
                    assert!((zx[2 * i] - zi.re).abs() < 1e-12 && (zx[2 * i + 1] - zi.im).abs() < 1e-12);
                }
                assert_eq!(ChartPoint::from_x(&p.x()), p);
            }
        }
    }

    #[test]
    fn moment_coordinates() {
        assert_eq!(c_of_x(&[0.0, 0.0, 0.0, 0.0]), vec![0.0, 0.0]);
        let c = c_of_x(&[1.0, 0.0]);
        assert!((c[0] - 0.5).abs() < 1e-15);
        let c = c_of_x(&[0.3, 1.2, -0.5, 0.1, 2.0, 0.0]);
        assert!(c.windows(2).all(|w| w[0] <= w[1]) && c[2] < 1.0);
    }
}
