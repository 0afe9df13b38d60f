//! Property tests for the algebraic layers.

mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use oddkh_core::cube::Cube;
use oddkh_core::diagram::Marking;
use oddkh_core::int::Int;
use oddkh_core::pipeline::{chain_checks, run_cube, Faults};
use oddkh_core::signs::Flavor;
use oddkh_core::snf::{smith, Dense, Track};
use oddkh_core::statespace::{check_gl11, RepData};
use proptest::prelude::*;

use common::{pd, HOPF, TREFOIL};

fn rational() -> impl Strategy<Value = BigRational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn flavor() -> impl Strategy<Value = Flavor> {
    prop_oneof![Just(Flavor::X), Just(Flavor::Y)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gl11_holds_on_every_state_space(nu in rational(), z in prop::collection::vec(rational(), 0..=5)) {
        prop_assert_eq!(check_gl11(&RepData { nu, z }).unwrap(), None);
    }

    #[test]
    fn relations_hold_with_random_markings(
        fl in flavor(),
        hopf in any::<bool>(),
        marks in prop::collection::vec((0usize..6, rational(), rational()), 1..=3),
    ) {
        let d = pd(if hopf { HOPF } else { TREFOIL });
        let mut per_arc = vec![0; d.num_arcs()];
        let markings: Vec<Marking> = marks
            .into_iter()
            .map(|(arc, beta1, beta2)| {
                let arc = arc % d.num_arcs();
                per_arc[arc] += 1;
                Marking { arc, position: per_arc[arc] - 1, alpha: &beta1 + &beta2, beta1, beta2 }
            })
            .collect();
        let run = run_cube(Cube::full(&d.with_markings(markings)), fl, Faults::default()).unwrap();
        let checks = chain_checks(&run);
        prop_assert!(checks.d_squared);
        prop_assert!(checks.relations_failed.is_empty(), "{:?}", checks.relations_failed);
    }

    #[test]
    fn int_arithmetic_agrees_with_bigint(a in any::<i64>(), b in any::<i64>()) {
        let (x, y) = (Int::from(a), Int::from(b));
        let (ba, bb) = (BigInt::from(a), BigInt::from(b));
        prop_assert_eq!((&x * &y).to_bigint(), &ba * &bb);
        prop_assert_eq!((&x + &y).to_bigint(), &ba + &bb);
        prop_assert_eq!((&x - &y).to_bigint(), &ba - &bb);
    }

    #[test]
    fn smith_form_is_verified(rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(-20i64..=20, 36)) {
        let m: Dense = (0..rows).map(|i| (0..cols).map(|j| Int::from(seed[i * 6 + j])).collect()).collect();
        let s = smith(&m, rows, cols, Track::all());
        prop_assert!(s.verify(&m).is_ok());
        for w in s.diag.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
    }
}
