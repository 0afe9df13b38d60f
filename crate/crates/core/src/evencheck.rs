//! Even Khovanov homology on the same cube, for comparison over `F_2`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::{assemble_with, BigradedComplex, EdgeMaps};
use crate::cube::Cube;
use crate::diagram::MarkedDiagram;
use crate::homology::Homology;

/// The even complex: `x² = 0` merge and split maps with the Koszul signs
/// `(-1)^{number of 1s before the changed bit}`.
pub fn even_complex(d: &MarkedDiagram) -> BigradedComplex {
    even_complex_of(&Cube::full(d))
}

pub fn even_complex_of(cube: &Cube) -> BigradedComplex {
    assemble_with(cube, EdgeMaps::Even)
}

/// `dim H^{h,q}(C ⊗ F_2)` from integral homology by universal coefficients:
/// the free rank, the even divisors in `(h, q)`, and the even divisors in
/// `(h + 1, q)` (the differential raises `h`).
pub fn mod2_dims(hom: &Homology) -> BTreeMap<(i64, i64), usize> {
    let mut out: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for (&(h, q), g) in &hom.groups {
        let even = g.shape.torsion.iter().filter(|t| t.is_even()).count();
        *out.entry((h, q)).or_insert(0) += g.shape.free + even;
        if even > 0 {
            *out.entry((h - 1, q)).or_insert(0) += even;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mod2Mismatch {
    pub h: i64,
    pub q: i64,
    pub odd: usize,
    pub even: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mod2Report {
    pub matches: bool,
    pub mismatches: Vec<Mod2Mismatch>,
}

pub fn mod2_compare(odd: &Homology, even: &Homology) -> Mod2Report {
    let (a, b) = (mod2_dims(odd), mod2_dims(even));
    let mut keys: Vec<(i64, i64)> = a.keys().chain(b.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    let mismatches: Vec<Mod2Mismatch> = keys
        .into_iter()
        .filter_map(|k| {
            let (o, e) = (a.get(&k).copied().unwrap_or(0), b.get(&k).copied().unwrap_or(0));
            (o != e).then_some(Mod2Mismatch { h: k.0, q: k.1, odd: o, even: e })
        })
        .collect();
    Mod2Report { matches: mismatches.is_empty(), mismatches }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::check_d_squared;
    use crate::diagram::parse_pd;
    use crate::homology::homology_groups;

    #[test]
    fn even_unknot() {
        let d = parse_pd("unknots 1\n").unwrap();
        let cx = even_complex(&d);
        let h = homology_groups(&cx).unwrap();
        let qs: Vec<(i64, i64)> = h.shapes().keys().copied().collect();
        assert_eq!(qs, vec![(0, -1), (0, 1)]);
    }

    #[test]
    fn even_trefoil_has_two_torsion() {
        let d = parse_pd("X[1,5,2,4]\nX[3,1,4,6]\nX[5,3,6,2]\n").unwrap();
        let cx = even_complex(&d);
        assert!(check_d_squared(&cx).ok);
        let h = homology_groups(&cx).unwrap();
        assert_eq!(h.total_rank(), 4);
        assert_eq!(h.all_torsion(), vec![crate::int::Int::from(2)]);
    }
}
