//! Diagrams and helpers shared by the integration tests.

#![allow(dead_code)]

use num_rational::BigRational;
use oddkh_core::diagram::{parse_pd, MarkedDiagram, Marking};
use oddkh_core::pretzel::pretzel_pd;
use rand::Rng;

pub const UNKNOT: &str = "unknots 1\n";
pub const KINK: &str = "X[1,2,2,1]\n";
pub const HOPF: &str = "X[1,3,2,4]\nX[3,1,4,2]\n";
pub const TREFOIL: &str = "X[1,5,2,4]\nX[3,1,4,6]\nX[5,3,6,2]\n";
pub const FIGURE_EIGHT: &str = "X[4,2,5,1]\nX[8,6,1,5]\nX[6,3,7,4]\nX[2,7,3,8]\n";

pub fn pd(text: &str) -> MarkedDiagram {
    parse_pd(text).expect("corpus diagram parses")
}

/// The test corpus: small knots and links plus `P(n,n,-n)` for `n <= 3`,
/// without markings.
pub fn corpus() -> Vec<(String, MarkedDiagram)> {
    let hopf = pd(HOPF);
    let hopf_rev = hopf.reverse_component(0).expect("reversible");
    let trefoil = pd(TREFOIL);
    let left = trefoil.mirror().expect("mirror");
    let mut out = vec![
        ("unknot".to_string(), pd(UNKNOT)),
        ("kink".to_string(), pd(KINK)),
        ("hopf".to_string(), hopf),
        ("hopf reversed".to_string(), hopf_rev),
        ("right trefoil".to_string(), trefoil),
        ("left trefoil".to_string(), left),
        ("figure-eight".to_string(), pd(FIGURE_EIGHT)),
    ];
    for n in 1..=3i64 {
        let d = pretzel_pd(n, n, -n, None).expect("pretzel");
        out.push((format!("P({n},{n},-{n})"), d.with_markings(vec![])));
    }
    out
}

pub fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    let num: i64 = rng.gen_range(-6..=6);
    let den: i64 = rng.gen_range(1..=4);
    BigRational::new(num.into(), den.into())
}

/// Up to three markings on random arcs with `α = β₁ + β₂`.
pub fn random_markings<R: Rng>(d: &MarkedDiagram, rng: &mut R) -> Vec<Marking> {
    let arcs = d.num_arcs();
    let mut per_arc = vec![0usize; arcs];
    (0..rng.gen_range(1..=3))
        .map(|_| {
            let arc = rng.gen_range(0..arcs);
            let (beta1, beta2) = (random_rational(rng), random_rational(rng));
            let position = per_arc[arc];
            per_arc[arc] += 1;
            Marking { arc, position, alpha: &beta1 + &beta2, beta1, beta2 }
        })
        .collect()
}
