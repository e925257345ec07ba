use serde::{Deserialize, Serialize};

use super::groupoid::BsGroupoid;
use super::leaf::{ArrowLeaf, BranchCoord, UnitLeaf};
use super::Params;
use crate::groupoid::Restricted;

/// Numbers of coordinates below and above `1 − t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StratumLabel {
    pub r: usize,
    pub s: usize,
}

pub fn stratum(u: &UnitLeaf) -> StratumLabel {
    let count = |f: fn(&BranchCoord) -> bool| u.coords.iter().filter(|c| f(c)).count();
    StratumLabel { r: count(|c| matches!(c, BranchCoord::Below(_))), s: count(|c| matches!(c, BranchCoord::Above(_))) }
}

/// Modular cocycle `f = ħ Σ p_i` and Radon-Nikodym derivative `D = e^f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModularData {
    pub f_fs: f64,
    pub d: f64,
}

/// `Σ p_i`, the integer shadow of the modular cocycle.
pub fn shift_sum(a: &ArrowLeaf) -> i64 {
    a.p.iter().sum()
}

pub fn modular_data(params: &Params, a: &ArrowLeaf) -> ModularData {
    let f_fs = params.hbar * shift_sum(a) as f64;
    ModularData { f_fs, d: f_fs.exp() }
}

impl BsGroupoid {
    /// `Π_k |c_k − 1 + t| = e^{−ħ Σ m_k}`, and zero when some coordinate is `At`.
    pub fn measure_mu(&self, u: &UnitLeaf) -> f64 {
        measure_mu(self.params(), u)
    }

    /// Full subgroupoid over units whose `k`-th coordinate (1-based) is `At`.
    pub fn pk_subgroupoid(&self, k: usize) -> Restricted<'_, Self, impl Fn(&UnitLeaf) -> bool + Sync> {
        Restricted::new(self, pk_predicate(k))
    }
}

pub fn measure_mu(params: &Params, u: &UnitLeaf) -> f64 {
    let mut levels = 0i64;
    for c in &u.coords {
        match c {
            BranchCoord::Below(m) | BranchCoord::Above(m) => levels += m,
            BranchCoord::At => return 0.0,
        }
    }
    (-params.hbar * levels as f64).exp()
}

/// `c_k = 1 − t`, with `k` counted from 1.
pub fn pk_predicate(k: usize) -> impl Fn(&UnitLeaf) -> bool + Clone + Send + Sync {
    move |u: &UnitLeaf| k >= 1 && u.coords.get(k - 1) == Some(&BranchCoord::At)
}
