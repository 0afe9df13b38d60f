//! Homology of small diagrams against values known independently of this
//! code: standard even Khovanov tables (with `q` negated to match the
//! grading used here), determinants of alternating knots, and Jones
//! polynomials through the Euler characteristic.

mod common;

use std::collections::BTreeMap;

use oddkh_core::complex::gaussian_eliminate;
use oddkh_core::cube::Cube;
use oddkh_core::evencheck::even_complex;
use oddkh_core::homology::{homology_groups, Homology};
use oddkh_core::int::Int;
use oddkh_core::pipeline::{analyze, prepare, pretzel_report, run_cube, Faults, Options};
use oddkh_core::signs::Flavor;

use common::{corpus, pd, FIGURE_EIGHT, HOPF, TREFOIL, UNKNOT};

fn odd(text: &str, flavor: Flavor) -> Homology {
    let d = pd(text);
    let run = run_cube(Cube::full(&d), flavor, Faults::default()).unwrap();
    analyze(&prepare(&run, &Options { flavor, ..Options::default() }), false).unwrap().homology
}

fn even(text: &str) -> Homology {
    let cx = even_complex(&pd(text));
    homology_groups(&gaussian_eliminate(&cx, &[]).complex).unwrap()
}

fn free_table(h: &Homology) -> Vec<((i64, i64), usize)> {
    h.shapes().into_iter().filter(|(_, s)| s.free > 0).map(|(k, s)| (k, s.free)).collect()
}

fn euler(h: &Homology) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    for ((hd, q), s) in h.shapes() {
        *out.entry(q).or_insert(0) += if hd % 2 == 0 { s.free as i64 } else { -(s.free as i64) };
    }
    out.retain(|_, v| *v != 0);
    out
}

#[test]
fn even_trefoil_matches_table() {
    let h = even(TREFOIL);
    assert_eq!(free_table(&h), vec![((0, -3), 1), ((0, -1), 1), ((2, -5), 1), ((3, -9), 1)]);
    assert_eq!(h.get(3, -7).unwrap().torsion(), &[Int::from(2)]);
    assert_eq!(h.all_torsion(), vec![Int::from(2)]);
}

#[test]
fn even_figure_eight_matches_table() {
    let h = even(FIGURE_EIGHT);
    let expected = vec![
        ((-2, 5), 1),
        ((-1, 1), 1),
        ((0, -1), 1),
        ((0, 1), 1),
        ((1, -1), 1),
        ((2, -5), 1),
    ];
    assert_eq!(free_table(&h), expected);
    assert_eq!(h.get(-1, 3).unwrap().torsion(), &[Int::from(2)]);
    assert_eq!(h.get(2, -3).unwrap().torsion(), &[Int::from(2)]);
}

#[test]
fn even_hopf_matches_table() {
    let h = even(HOPF);
    assert_eq!(h.total_rank(), 4);
    assert!(h.all_torsion().is_empty());
}

#[test]
fn odd_unknot_is_two_copies_of_z() {
    for flavor in [Flavor::X, Flavor::Y] {
        let h = odd(UNKNOT, flavor);
        assert_eq!(free_table(&h), vec![((0, -1), 1), ((0, 1), 1)]);
    }
}

#[test]
fn odd_alternating_knots_are_torsion_free_with_rank_twice_the_determinant() {
    for (text, det) in [(TREFOIL, 3), (FIGURE_EIGHT, 5)] {
        for flavor in [Flavor::X, Flavor::Y] {
            let h = odd(text, flavor);
            assert!(h.all_torsion().is_empty());
            assert_eq!(h.total_rank(), 2 * det);
        }
    }
}

#[test]
fn odd_trefoil_table() {
    let h = odd(TREFOIL, Flavor::Y);
    let expected = vec![((0, -3), 1), ((0, -1), 1), ((2, -7), 1), ((2, -5), 1), ((3, -9), 1), ((3, -7), 1)];
    assert_eq!(free_table(&h), expected);
}

#[test]
fn odd_and_even_share_the_jones_polynomial() {
    for (name, d) in corpus() {
        let text = d.to_pd_string();
        assert_eq!(euler(&odd(&text, Flavor::Y)), euler(&even(&text)), "{name}");
    }
}

#[test]
fn pretzel_torsion_is_cyclic_of_order_n() {
    for n in 2..=4usize {
        for flavor in [Flavor::X, Flavor::Y] {
            let r = pretzel_report(n, flavor, None, false).unwrap();
            assert_eq!(r.torsion, vec![Int::from(n as i64)], "n = {n}, flavor {flavor}");
        }
    }
}
