//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use num_rational::BigRational;
use oddkh_core::cube::Cube;
use oddkh_core::diagram::{MarkedDiagram, Marking};
use oddkh_core::homology::{GroupShape, MapProfile};
use oddkh_core::int::{rat, Int};
use oddkh_core::pipeline::{analyze, chain_checks, compute, prepare, pretzel_report, run_cube, Analysis, Faults, Options};
use oddkh_core::signs::Flavor;
use oddkh_core::statespace::{check_gl11, check_inner_product, RepData};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{corpus, pd, random_markings, random_rational, TREFOIL};

const FLAVORS: [Flavor; 2] = [Flavor::X, Flavor::Y];

type Outcome = Result<String, String>;

type Criterion = (&'static str, fn() -> Outcome);

type Fingerprint = (BTreeMap<(i64, i64), GroupShape>, Vec<MapProfile>, Vec<MapProfile>);

fn fingerprint(an: &Analysis) -> Fingerprint {
    (an.homology.shapes(), an.f_profile.clone(), an.e_profile.clone())
}

fn unreduced(d: &MarkedDiagram, flavor: Flavor, eliminate: bool) -> Result<Fingerprint, String> {
    let run = run_cube(Cube::full(d), flavor, Faults::default()).map_err(|e| e.to_string())?;
    let opts = Options { flavor, reduced: false, action: true, eliminate };
    let an = analyze(&prepare(&run, &opts), true).map_err(|e| e.to_string())?;
    Ok(fingerprint(&an))
}

fn d_squared() -> Outcome {
    let mut n = 0;
    for (name, d) in corpus() {
        for flavor in FLAVORS {
            let run = run_cube(Cube::full(&d), flavor, Faults::default()).map_err(|e| format!("{name} {flavor}: {e}"))?;
            if !chain_checks(&run).d_squared {
                return Err(format!("{name}, flavor {flavor}: d∘d ≠ 0"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} complexes"))
}

fn relations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut n = 0;
    for (name, d) in corpus() {
        for flavor in FLAVORS {
            for _ in 0..3 {
                let marks = random_markings(&d, &mut rng);
                let md = d.with_markings(marks);
                let run = run_cube(Cube::full(&md), flavor, Faults::default()).map_err(|e| format!("{name}: {e}"))?;
                let failed = chain_checks(&run).relations_failed;
                if !failed.is_empty() {
                    return Err(format!("{name}, flavor {flavor}, markings {:?}: {}", md.markings, failed.join(", ")));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} marked complexes"))
}

fn exterior_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for n in 0..=6 {
        if let Some(bad) = check_inner_product(n).map_err(|e| e.to_string())? {
            return Err(format!("{n} circles: {bad}"));
        }
        for _ in 0..20 {
            let rep = RepData { nu: random_rational(&mut rng), z: (0..n).map(|_| random_rational(&mut rng)).collect() };
            if let Some(bad) = check_gl11(&rep).map_err(|e| e.to_string())? {
                return Err(format!("{n} circles, {rep:?}: {bad}"));
            }
        }
    }
    Ok("n = 0..6, 20 representations each".into())
}

fn pretzel_torsion() -> Outcome {
    let mut failures = Vec::new();
    for flavor in FLAVORS {
        for n in 2..=6usize {
            let r = pretzel_report(n, flavor, None, false).map_err(|e| e.to_string())?;
            let exact = r.torsion == vec![Int::from(n as i64)];
            let in_image = !r.witness.is_empty() && r.witness.iter().all(|w| w.in_image);
            if !exact {
                failures.push(format!("{flavor} n={n}: torsion {:?}", r.torsion));
            } else if !in_image {
                let at: Vec<String> = r.witness.iter().map(|w| format!("({},{})", w.h, w.q)).collect();
                failures.push(format!("{flavor} n={n}: Z/{n} at {} not in image of f★", at.join(" ")));
            }
        }
    }
    if failures.is_empty() {
        Ok("torsion Z/n in the image of f★ for n = 2..6".into())
    } else {
        Err(failures.join("; "))
    }
}

fn reduced_vs_full() -> Outcome {
    for flavor in FLAVORS {
        for n in 1..=3usize {
            let r = pretzel_report(n, flavor, None, true).map_err(|e| e.to_string())?;
            let c = r.crosscheck.as_ref().ok_or("crosscheck missing")?;
            if !c.ok() {
                return Err(format!(
                    "{flavor} n={n}: homology {} f★ profile {}",
                    if c.homology_match { "match" } else { "differ" },
                    if c.f_profile_match { "match" } else { "differ" }
                ));
            }
        }
    }
    Ok("n = 1..3, both flavors".into())
}

fn mod2() -> Outcome {
    let mut n = 0;
    for (name, d) in corpus() {
        for flavor in FLAVORS {
            let opts = Options { flavor, ..Options::default() };
            let r = compute(&d, &opts, true, Faults::default()).map_err(|e| format!("{name}: {e}"))?;
            let m = r.mod2.ok_or("no mod-2 report")?;
            if !m.matches {
                return Err(format!("{name}, flavor {flavor}: {:?}", m.mismatches));
            }
            n += 1;
        }
    }
    Ok(format!("{n} diagrams"))
}

fn mark(arc: usize, position: usize, w: &(BigRational, BigRational), scale: i64) -> Marking {
    let s = rat(scale, 1);
    let (b1, b2) = (&w.0 * &s, &w.1 * &s);
    Marking { arc, position, alpha: &b1 + &b2, beta1: b1, beta2: b2 }
}

fn marking_slides() -> Outcome {
    let base = pd(TREFOIL);
    let weights = [(rat(1, 2), rat(1, 2)), (rat(1, 3), rat(-5, 4))];
    let mut cases = 0;
    for w in &weights {
        for c in &base.crossings {
            let [a, b, cc, dd] = c.arcs;
            let check = |flavor: Flavor, lhs: Vec<Marking>, rhs: Vec<Marking>, what: &str| -> Result<(), String> {
                let l = unreduced(&base.with_markings(lhs), flavor, true)?;
                let r = unreduced(&base.with_markings(rhs), flavor, true)?;
                if l != r {
                    return Err(format!("{what} at crossing {}, weight {w:?}, flavor {flavor}", c.id));
                }
                Ok(())
            };
            // (a) position along the arc, next to a second marking
            let other = mark(a, 0, &(rat(2, 1), rat(-1, 2)), 1);
            check(
                Flavor::Y,
                vec![other.clone(), mark(a, 1, w, 1)],
                vec![Marking { position: 1, ..other }, mark(a, 0, w, 1)],
                "moving along the arc",
            )?;
            // (b) across the over-strand
            check(Flavor::Y, vec![mark(dd, 0, w, 1)], vec![mark(b, 0, w, 1)], "over-slide")?;
            // (c) across the under-strand with the correction term
            check(Flavor::Y, vec![mark(a, 0, w, 1)], vec![mark(cc, 0, w, -1), mark(b, 0, w, 2)], "under-slide")?;
            cases += 3;
        }
    }
    Ok(format!("{cases} slides on the trefoil"))
}

fn elimination() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut n = 0;
    for (name, d) in corpus() {
        let md = d.with_markings(random_markings(&d, &mut rng));
        for flavor in FLAVORS {
            let with = unreduced(&md, flavor, true)?;
            let without = unreduced(&md, flavor, false)?;
            if with != without {
                return Err(format!("{name}, flavor {flavor}"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} complexes"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("d∘d = 0 on the corpus", d_squared),
        ("chain-level relations with random markings", relations),
        ("exterior algebra and gl(1|1) identities", exterior_oracles),
        ("P(n,n,-n) torsion Z/n in the image of f★", pretzel_torsion),
        ("reduced cube agrees with the full hypercube", reduced_vs_full),
        ("F2 dimensions of odd and even homology agree", mod2),
        ("marking slides preserve homology and action profiles", marking_slides),
        ("Gaussian elimination preserves homology and profiles", elimination),
    ];
    let mut passed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => {
                passed += 1;
                println!("PASS {} {name} ({detail}; {ms} ms)", i + 1);
            }
            Err(detail) => println!("FAIL {} {name} ({detail}; {ms} ms)", i + 1),
        }
    }
    println!("{passed}/{} criteria passed", criteria.len());
}
