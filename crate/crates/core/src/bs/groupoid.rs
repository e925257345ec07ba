use super::leaf::{ArrowLeaf, BranchCoord, Coords, Shifts, UnitLeaf};
use super::{BsError, Params};
use crate::ext_int::Overflow;
use crate::groupoid::{DiscreteGroupoid, GroupoidError};

/// Structure maps of the Bohr-Sommerfeld groupoid for fixed parameters.
#[derive(Debug, Clone)]
pub struct BsGroupoid {
    params: Params,
    m_below: Option<i64>,
    m_above: Option<i64>,
}

impl BsGroupoid {
    pub fn new(params: Params) -> Result<Self, BsError> {
        let params = params.validated()?;
        Ok(BsGroupoid { params, m_below: params.m_min_below(), m_above: params.m_min_above() })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn m_min_below(&self) -> Option<i64> {
        self.m_below
    }

    pub fn m_min_above(&self) -> Option<i64> {
        self.m_above
    }

    pub fn validate_unit(&self, u: &UnitLeaf) -> Result<(), BsError> {
        self.validate_coords(&u.coords)
    }

    fn validate_coords(&self, coords: &[BranchCoord]) -> Result<(), BsError> {
        if coords.len() != self.params.n {
            return Err(BsError::Length { expected: self.params.n, got: coords.len() });
        }
        for (index, c) in coords.iter().enumerate() {
            let (m, bound, side) = match *c {
                BranchCoord::Below(m) => (m, self.m_below, "below"),
                BranchCoord::Above(m) => (m, self.m_above, "above"),
                BranchCoord::At => continue,
            };
            match bound {
                None if side == "below" => {
                    return Err(BsError::Branch { index, reason: "no level lies below 1 - t at t = 1" })
                }
                None => return Err(BsError::Branch { index, reason: "no level lies above 1 - t at t = 0" }),
                Some(b) if m < b => return Err(BsError::Branch { index, reason: "level is outside [0, 1]" }),
                Some(_) => {}
            }
        }
        for (index, w) in coords.windows(2).enumerate() {
            let ordered = match (w[0], w[1]) {
                (BranchCoord::Below(a), BranchCoord::Below(b)) => a <= b,
                (BranchCoord::Above(a), BranchCoord::Above(b)) => a >= b,
                (x, y) => x.block() <= y.block(),
            };
            if !ordered {
                return Err(BsError::Order { index, next: index + 1 });
            }
        }
        Ok(())
    }

    /// Checks a unit and returns it.
    pub fn make_unit(&self, coords: impl IntoIterator<Item = BranchCoord>) -> Result<UnitLeaf, BsError> {
        let u = UnitLeaf::new(coords);
        self.validate_unit(&u)?;
        Ok(u)
    }

    pub fn c_values(&self, u: &UnitLeaf) -> Vec<f64> {
        u.coords.iter().map(|c| c.c(self.params.t, self.params.hbar)).collect()
    }

    fn shifted(src: &[BranchCoord], p: &[i64]) -> Result<Coords, Overflow> {
        src.iter().zip(p).map(|(c, v)| c.shifted(*v).ok_or(Overflow)).collect()
    }

    pub fn validate_arrow(&self, a: &ArrowLeaf) -> Result<(), BsError> {
        self.validate_unit(&a.src)?;
        if a.p.len() != self.params.n {
            return Err(BsError::Length { expected: self.params.n, got: a.p.len() });
        }
        if a.p.contains(&i64::MIN) {
            return Err(BsError::Overflow(Overflow));
        }
        let mut at = a.src.coords.iter().zip(&a.p).filter(|(c, _)| **c == BranchCoord::At);
        if self.params.is_endpoint() {
            if at.any(|(_, p)| *p != 0) {
                return Err(BsError::Shift("shifts on At coordinates must vanish at t = 0, 1"));
            }
        } else if let Some((_, first)) = at.next() {
            if at.any(|(_, p)| p != first) {
                return Err(BsError::Shift("shift must be constant across the At block"));
            }
        }
        self.validate_coords(&Self::shifted(&a.src.coords, &a.p)?)
    }

    pub fn make_arrow(&self, src: UnitLeaf, p: impl IntoIterator<Item = i64>) -> Result<ArrowLeaf, BsError> {
        let a = ArrowLeaf::new(src, p);
        self.validate_arrow(&a)?;
        Ok(a)
    }

    /// `r(c, h)_i = 1 − t + e^{−h_i}(c_i + t − 1)` evaluated on the real side.
    pub fn target_c(&self, a: &ArrowLeaf) -> Vec<f64> {
        action_formula(&self.params, &self.c_values(&a.src), &a.p)
    }
}

/// The real action `c_i ↦ 1 − t + e^{−ħp_i}(c_i + t − 1)` of shifts on `Δ_n`.
pub fn action_formula(params: &Params, c: &[f64], p: &[i64]) -> Vec<f64> {
    let t = params.t;
    c.iter().zip(p).map(|(ci, pi)| 1.0 - t + (-params.hbar * *pi as f64).exp() * (ci + t - 1.0)).collect()
}

impl DiscreteGroupoid for BsGroupoid {
    type Unit = UnitLeaf;
    type Arrow = ArrowLeaf;

    fn is_unit(&self, x: &UnitLeaf) -> bool {
        self.validate_unit(x).is_ok()
    }

    fn is_arrow(&self, g: &ArrowLeaf) -> bool {
        self.validate_arrow(g).is_ok()
    }

    fn source(&self, g: &ArrowLeaf) -> UnitLeaf {
        g.src.clone()
    }

    fn target(&self, g: &ArrowLeaf) -> UnitLeaf {
        let coords = Self::shifted(&g.src.coords, &g.p).expect("valid arrows have representable targets");
        UnitLeaf { coords }
    }

    fn compose(&self, a: &ArrowLeaf, b: &ArrowLeaf) -> Result<Option<ArrowLeaf>, GroupoidError> {
        if a.p.len() != b.src.coords.len() || a.src.coords.len() != a.p.len() {
            return Ok(None);
        }
        for ((c, p), d) in a.src.coords.iter().zip(&a.p).zip(&b.src.coords) {
            if c.shifted(*p) != Some(*d) {
                return Ok(None);
            }
        }
        let p = a.p.iter().zip(&b.p).map(|(x, y)| x.checked_add(*y).ok_or(Overflow)).collect::<Result<Shifts, _>>()?;
        Ok(Some(ArrowLeaf { src: a.src.clone(), p }))
    }

    fn inverse(&self, g: &ArrowLeaf) -> ArrowLeaf {
        ArrowLeaf { src: self.target(g), p: g.p.iter().map(|v| -v).collect() }
    }

    fn identity(&self, x: &UnitLeaf) -> ArrowLeaf {
        ArrowLeaf { src: x.clone(), p: smallvec::smallvec![0; x.n()] }
    }

    fn is_identity(&self, g: &ArrowLeaf) -> bool {
        g.p.iter().all(|v| *v == 0)
    }
}
