use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::ext_int::ExtInt;

/// One coordinate of a unit: `c = 1 − t ∓ e^{−ħm}` or exactly `1 − t`.
///
/// The derived order (`Below < At < Above`, then by level) is the
/// lexicographic order used for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Tagged", into = "Tagged")]
pub enum BranchCoord {
    Below(i64),
    At,
    Above(i64),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "b", rename_all = "lowercase")]
enum Tagged {
    Lo { m: i64 },
    At,
    Hi { m: i64 },
}

impl From<Tagged> for BranchCoord {
    fn from(t: Tagged) -> Self {
        match t {
            Tagged::Lo { m } => BranchCoord::Below(m),
            Tagged::At => BranchCoord::At,
            Tagged::Hi { m } => BranchCoord::Above(m),
        }
    }
}

impl From<BranchCoord> for Tagged {
    fn from(b: BranchCoord) -> Self {
        match b {
            BranchCoord::Below(m) => Tagged::Lo { m },
            BranchCoord::At => Tagged::At,
            BranchCoord::Above(m) => Tagged::Hi { m },
        }
    }
}

impl BranchCoord {
    /// Finite level, or infinity for `At`.
    pub fn level(self) -> ExtInt {
        match self {
            BranchCoord::Below(m) | BranchCoord::Above(m) => ExtInt::Fin(m),
            BranchCoord::At => ExtInt::Infinity,
        }
    }

    pub(crate) fn block(self) -> u8 {
        match self {
            BranchCoord::Below(_) => 0,
            BranchCoord::At => 1,
            BranchCoord::Above(_) => 2,
        }
    }

    /// Real coordinate `c` at parameters `(t, ħ)`.
    pub fn c(self, t: f64, hbar: f64) -> f64 {
        match self {
            BranchCoord::Below(m) => 1.0 - t - (-hbar * m as f64).exp(),
            BranchCoord::At => 1.0 - t,
            BranchCoord::Above(m) => 1.0 - t + (-hbar * m as f64).exp(),
        }
    }

    /// Level moved by `p`; `At` is fixed.
    pub fn shifted(self, p: i64) -> Option<BranchCoord> {
        Some(match self {
            BranchCoord::Below(m) => BranchCoord::Below(m.checked_add(p)?),
            BranchCoord::At => BranchCoord::At,
            BranchCoord::Above(m) => BranchCoord::Above(m.checked_add(p)?),
        })
    }
}

pub type Coords = SmallVec<[BranchCoord; 6]>;
pub type Shifts = SmallVec<[i64; 6]>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitLeaf {
    pub coords: Coords,
}

impl UnitLeaf {
    pub fn new(coords: impl IntoIterator<Item = BranchCoord>) -> Self {
        UnitLeaf { coords: coords.into_iter().collect() }
    }

    pub fn all_at(n: usize) -> Self {
        UnitLeaf { coords: smallvec::smallvec![BranchCoord::At; n] }
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }
}

/// Arrow from `src` shifting levels by `p` (`h = ħp`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArrowLeaf {
    pub src: UnitLeaf,
    pub p: Shifts,
}

impl ArrowLeaf {
    pub fn new(src: UnitLeaf, p: impl IntoIterator<Item = i64>) -> Self {
        ArrowLeaf { src, p: p.into_iter().collect() }
    }
}
