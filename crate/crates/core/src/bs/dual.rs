use super::leaf::{ArrowLeaf, BranchCoord, UnitLeaf};

fn mirror(c: BranchCoord) -> BranchCoord {
    match c {
        BranchCoord::Below(m) => BranchCoord::Above(m),
        BranchCoord::At => BranchCoord::At,
        BranchCoord::Above(m) => BranchCoord::Below(m),
    }
}

/// Unit of the `t ↦ 1 − t` mirror: coordinates reversed, branches swapped.
pub fn psi_dual_unit(u: &UnitLeaf) -> UnitLeaf {
    UnitLeaf { coords: u.coords.iter().rev().map(|c| mirror(*c)).collect() }
}

/// Arrow of the groupoid at `1 − t` corresponding to `a`.
pub fn psi_dual(a: &ArrowLeaf) -> ArrowLeaf {
    ArrowLeaf { src: psi_dual_unit(&a.src), p: a.p.iter().rev().copied().collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bs::{enumerate, BsGroupoid, Params};
    use crate::groupoid::DiscreteGroupoid;
    use std::f64::consts::LN_2;
    use BranchCoord::*;

    #[test]
    fn examples() {
        assert_eq!(psi_dual_unit(&UnitLeaf::new([Below(1), Above(2)])), UnitLeaf::new([Below(2), Above(1)]));
        assert_eq!(psi_dual_unit(&UnitLeaf::all_at(3)), UnitLeaf::all_at(3));
    }

    #[test]
    fn lands_in_mirror_groupoid() {
        for t in [0.0, 0.3, 0.5] {
            let p = Params::new(2, t, LN_2).unwrap();
            let (g, h) = (BsGroupoid::new(p).unwrap(), BsGroupoid::new(p.dual()).unwrap());
            for a in enumerate(&p, 3, 2).arrows {
                let b = psi_dual(&a);
                assert!(h.is_arrow(&b), "{a:?}");
                assert_eq!(h.target(&b), psi_dual_unit(&g.target(&a)));
                assert_eq!(psi_dual(&b), a);
            }
        }
    }
}
