//! The Bohr-Sommerfeld groupoid of `(CP_n, π_t)` at Planck constant `ħ`.
//!
//! Units are lattice points `c` of the moment polytope with
//! `log|c_k − 1 + t| ∈ ħZ`, encoded per coordinate as a branch below, at or
//! above the singular value `1 − t`. Arrows shift the integer levels.

mod dual;
mod groupoid;
mod leaf;
mod modular;
mod window;

pub use dual::{psi_dual, psi_dual_unit};
pub use groupoid::{action_formula, BsGroupoid};
pub use leaf::{ArrowLeaf, BranchCoord, Coords, Shifts, UnitLeaf};
pub use modular::{modular_data, pk_predicate, shift_sum, stratum, ModularData, StratumLabel};
pub use window::{enumerate, enumerate_units, Window};

use serde::{Deserialize, Serialize};

use crate::ext_int::Overflow;

pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BsError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("expected {expected} coordinates, got {got}")]
    Length { expected: usize, got: usize },
    #[error("coordinate {index}: {reason}")]
    Branch { index: usize, reason: &'static str },
    #[error("coordinates {index} and {next} are out of order")]
    Order { index: usize, next: usize },
    #[error("shift: {0}")]
    Shift(&'static str),
    #[error(transparent)]
    Overflow(#[from] Overflow),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub t: f64,
    pub hbar: f64,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

impl Params {
    pub fn new(n: usize, t: f64, hbar: f64) -> Result<Self, BsError> {
        Params { n, t, hbar, tol: DEFAULT_TOL }.validated()
    }

    pub fn with_tol(self, tol: f64) -> Result<Self, BsError> {
        Params { tol, ..self }.validated()
    }

    pub fn validated(self) -> Result<Self, BsError> {
        if self.n == 0 {
            return Err(BsError::Params("n must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.t) {
            return Err(BsError::Params(format!("t = {} is outside [0, 1]", self.t)));
        }
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(BsError::Params(format!("hbar = {} must be positive", self.hbar)));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(BsError::Params(format!("tol = {} must be positive", self.tol)));
        }
        Ok(self)
    }

    /// Parameters of the mirror pencil `π_{1−t}`.
    pub fn dual(&self) -> Params {
        Params { t: 1.0 - self.t, ..*self }
    }

    /// Whether `t` is an endpoint, where shifts on `At` coordinates vanish.
    pub fn is_endpoint(&self) -> bool {
        self.t == 0.0 || self.t == 1.0
    }

    /// Smallest level `m` with `ħm ≥ −ln(1 − t)`; `None` at `t = 1`.
    pub fn m_min_below(&self) -> Option<i64> {
        threshold(1.0 - self.t, self.hbar, self.tol)
    }

    /// Smallest level `m` with `ħm ≥ −ln t`; `None` at `t = 0`.
    pub fn m_min_above(&self) -> Option<i64> {
        threshold(self.t, self.hbar, self.tol)
    }
}

// Levels within `tol` of the exact bound count as reaching it.
fn threshold(gap: f64, hbar: f64, tol: f64) -> Option<i64> {
    if gap <= 0.0 {
        return None;
    }
    let x = -gap.ln() / hbar;
    Some((x - tol).ceil().max(0.0) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn thresholds() {
        let p = Params::new(2, 0.5, LN_2).unwrap();
        assert_eq!(p.m_min_below(), Some(1));
        assert_eq!(p.m_min_above(), Some(1));
        let p = Params::new(1, 0.0, 1.0).unwrap();
        assert_eq!((p.m_min_below(), p.m_min_above()), (Some(0), None));
        let p = Params::new(1, 1.0, 1.0).unwrap();
        assert_eq!((p.m_min_below(), p.m_min_above()), (None, Some(0)));
        // −ln 0.7 ≈ 0.357, −ln 0.3 ≈ 1.204
        let p = Params::new(1, 0.3, 1.0).unwrap();
        assert_eq!((p.m_min_below(), p.m_min_above()), (Some(1), Some(2)));
        let p = Params::new(1, 0.75, LN_2).unwrap();
        assert_eq!((p.m_min_below(), p.m_min_above()), (Some(2), Some(1)));
    }

    #[test]
    fn rejects_bad_params() {
        assert!(Params::new(0, 0.5, 1.0).is_err());
        assert!(Params::new(1, 1.5, 1.0).is_err());
        assert!(Params::new(1, 0.5, 0.0).is_err());
        assert!(Params::new(1, f64::NAN, 1.0).is_err());
        assert!(Params::new(1, 0.5, 1.0).unwrap().with_tol(-1.0).is_err());
    }

    #[test]
    fn json_form() {
        let p = Params::new(2, 0.5, LN_2).unwrap();
        let v = serde_json::to_value(p).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["tol"], 1e-12);
        let back: Params = serde_json::from_str(r#"{"n":2,"t":0.5,"hbar":0.5}"#).unwrap();
        assert_eq!(back.tol, DEFAULT_TOL);
    }
}
