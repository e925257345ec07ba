//! Fixed inputs shared by the benchmarks.

use gq_core::bs::{enumerate, ArrowLeaf, BsGroupoid, Params, Window};
use gq_core::convolution::{random_element, AlgebraElement};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 20240611;

/// Dyadic window at `t = 1/2`.
pub fn dyadic_window(n: usize, max_level: i64, max_shift: i64) -> (BsGroupoid, Window) {
    let p = Params::new(n, 0.5, std::f64::consts::LN_2).expect("valid parameters");
    (BsGroupoid::new(p).expect("valid parameters"), enumerate(&p, max_level, max_shift))
}

pub fn random_pair(w: &Window, support: usize) -> (AlgebraElement<ArrowLeaf>, AlgebraElement<ArrowLeaf>) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (random_element(&w.arrows, support, &mut rng), random_element(&w.arrows, support, &mut rng))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_nonempty() {
        let (_, w) = dyadic_window(2, 2, 1);
        assert_eq!(w.units.len(), 15);
        let (a, b) = random_pair(&w, 10);
        assert_eq!((a.support_len(), b.support_len()), (10, 10));
    }
}
