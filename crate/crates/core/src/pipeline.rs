//! End-to-end runs: diagram → cube → signs → complex → homology, and the
//! pretzel torsion check.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::complex::{
    assemble_complex, assemble_full_action, check_d_squared, check_relations, gaussian_eliminate, Action, BigradedComplex,
    ChainMap,
};
use crate::cube::Cube;
use crate::diagram::MarkedDiagram;
use crate::error::{Error, Result};
use crate::evencheck::{even_complex_of, mod2_compare, Mod2Report};
use crate::homology::{
    check_induced_bracket, homology_groups, induced_on_homology, map_profile, reduced_from_states, torsion_witness, Homology,
    HomologyRow, InducedMap, MapProfile, WitnessEntry,
};
use crate::int::Int;
use crate::pretzel::{pretzel_pd, reduced_cube, Triple};
use crate::signs::{classify_all, fix_action_signs, solve_edge_signs, ActionSigns, EdgeSigns, FaceType, Flavor};

/// A cube with its signs, complex and chain-level action.
#[derive(Clone, Debug)]
pub struct CubeRun {
    pub cube: Cube,
    pub faces: Vec<FaceType>,
    pub signs: EdgeSigns,
    pub sigma: ActionSigns,
    pub complex: BigradedComplex,
    pub action: Action,
}

/// Test hook: flips the sign of one cube edge after solving.
#[derive(Clone, Copy, Debug, Default)]
pub struct Faults {
    pub flip_edge: Option<usize>,
}

pub fn run_cube(cube: Cube, flavor: Flavor, faults: Faults) -> Result<CubeRun> {
    let faces = classify_all(&cube)?;
    let mut signs = solve_edge_signs(&cube, &faces, flavor)?;
    if let Some(e) = faults.flip_edge {
        if e < signs.sign.len() {
            signs.sign[e] = -signs.sign[e];
        }
    }
    let complex = assemble_complex(&cube, &signs);
    let sigma = fix_action_signs(&cube)?;
    let action = assemble_full_action(&complex, &cube, &sigma);
    Ok(CubeRun { cube, faces, signs, sigma, complex, action })
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub flavor: Flavor,
    pub reduced: bool,
    pub action: bool,
    pub eliminate: bool,
}

impl Default for Options {
    fn default() -> Options {
        Options { flavor: Flavor::Y, reduced: false, action: false, eliminate: true }
    }
}

/// The complex actually fed to homology, with `f` and `e` when available.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub complex: BigradedComplex,
    pub f: Option<ChainMap>,
    pub e: Option<ChainMap>,
    pub eps: BigRational,
    pub cancellations: usize,
}

/// Reduces (on `ker e`) and eliminates as requested. On the reduced complex
/// `f` survives only when `ε(f) = 0`, and `e` vanishes.
pub fn prepare(run: &CubeRun, opts: &Options) -> Prepared {
    let eps = run.action.eps.clone();
    let (cx, mut maps, has_f, has_e) = if opts.reduced {
        let keep_f = eps.is_zero();
        let ms: Vec<&ChainMap> = if keep_f { vec![&run.action.f] } else { vec![] };
        let (cx, maps) = reduced_from_states(&run.complex, &run.cube, &ms);
        (cx, maps, keep_f, false)
    } else {
        (run.complex.clone(), vec![run.action.f.clone(), run.action.e.clone()], true, true)
    };
    let mut cancellations = 0;
    let cx = if opts.eliminate {
        let el = gaussian_eliminate(&cx, &maps);
        maps = el.maps;
        cancellations = el.cancellations;
        el.complex
    } else {
        cx
    };
    let mut it = maps.into_iter();
    let f = if has_f { it.next() } else { None };
    let e = if has_e { it.next() } else { None };
    Prepared { complex: cx, f, e, eps, cancellations }
}

/// Homology together with the induced action data.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub homology: Homology,
    pub fstar: Option<BTreeMap<(i64, i64), InducedMap>>,
    pub estar: Option<BTreeMap<(i64, i64), InducedMap>>,
    pub f_profile: Vec<MapProfile>,
    pub e_profile: Vec<MapProfile>,
    /// `e★f★ + f★e★ = ε·id` on homology, when both maps are present.
    pub bracket_ok: Option<bool>,
}

pub fn analyze(p: &Prepared, with_action: bool) -> Result<Analysis> {
    let homology = homology_groups(&p.complex)?;
    let integral = |m: &ChainMap| m.mat.to_integer().is_some();
    let mut out = Analysis { homology, fstar: None, estar: None, f_profile: vec![], e_profile: vec![], bracket_ok: None };
    if !with_action {
        return Ok(out);
    }
    if let Some(f) = p.f.as_ref().filter(|m| integral(m)) {
        let fs = induced_on_homology(&p.complex, f, &out.homology)?;
        out.f_profile = map_profile(&out.homology, &fs)?;
        out.fstar = Some(fs);
    }
    if let Some(e) = p.e.as_ref().filter(|m| integral(m)) {
        let es = induced_on_homology(&p.complex, e, &out.homology)?;
        out.e_profile = map_profile(&out.homology, &es)?;
        out.estar = Some(es);
    }
    if let (Some(fs), Some(es)) = (&out.fstar, &out.estar) {
        if p.eps.is_integer() {
            out.bracket_ok = Some(check_induced_bracket(&out.homology, es, fs, &p.eps)?);
        }
    }
    Ok(out)
}

/// Chain-level checks on a cube run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub d_squared: bool,
    /// Names of failed identities among the gl(1|1) relations.
    pub relations_failed: Vec<String>,
    pub fallback_faces: usize,
}

pub fn chain_checks(run: &CubeRun) -> Checks {
    Checks {
        d_squared: check_d_squared(&run.complex).ok,
        relations_failed: check_relations(&run.complex, &run.action),
        fallback_faces: run.signs.fallback_faces.len(),
    }
}

/// The serializable result of a `compute` run.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub diagram: DiagramInfo,
    pub flavor: Flavor,
    pub reduced: bool,
    pub homology: Vec<HomologyRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionReport>,
    pub checks: Checks,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mod2: Option<Mod2Report>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramInfo {
    pub crossings: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub components: usize,
    pub markings: Vec<MarkingInfo>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MarkingInfo {
    pub arc: String,
    pub alpha: String,
    pub beta1: String,
    pub beta2: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ActionReport {
    pub epsilon_f: String,
    pub f: Vec<MapBlock>,
    pub e: Vec<MapBlock>,
    pub f_profile: Vec<MapProfile>,
    pub e_profile: Vec<MapProfile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket_ok: Option<bool>,
    /// `(h1, h2)` weights of the generators of each chain bidegree, sorted.
    pub weights: Vec<WeightBlock>,
}

/// Presentation matrix of an induced map between two bidegrees.
#[derive(Clone, Debug, Serialize)]
pub struct MapBlock {
    pub source: (i64, i64),
    pub target: (i64, i64),
    pub source_orders: Vec<Option<Int>>,
    pub target_orders: Vec<Option<Int>>,
    pub matrix: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightBlock {
    pub h: i64,
    pub q: i64,
    pub weights: Vec<(String, String)>,
}

pub fn diagram_info(d: &MarkedDiagram) -> DiagramInfo {
    use crate::int::rat_to_string;
    DiagramInfo {
        crossings: d.num_crossings(),
        n_plus: d.n_plus,
        n_minus: d.n_minus,
        components: d.num_components(),
        markings: d
            .markings
            .iter()
            .map(|m| MarkingInfo {
                arc: d.arc_labels[m.arc].clone(),
                alpha: rat_to_string(&m.alpha),
                beta1: rat_to_string(&m.beta1),
                beta2: rat_to_string(&m.beta2),
            })
            .collect(),
    }
}

fn map_blocks(hom: &Homology, maps: Option<&BTreeMap<(i64, i64), InducedMap>>) -> Vec<MapBlock> {
    let Some(maps) = maps else { return vec![] };
    maps.values()
        .filter(|m| m.matrix.iter().flatten().any(|x| !x.is_zero()))
        .map(|m| MapBlock {
            source: m.source,
            target: m.target,
            source_orders: hom.groups[&m.source].orders.clone(),
            target_orders: hom.groups[&m.target].orders.clone(),
            matrix: m.matrix.clone(),
        })
        .collect()
}

fn weight_blocks(run: &CubeRun) -> Vec<WeightBlock> {
    use crate::int::rat_to_string;
    let cx = &run.complex;
    let mut out = Vec::new();
    for ((h, q), idx) in cx.blocks() {
        let mut w: Vec<(String, String)> = idx
            .iter()
            .map(|&i| {
                let h1 = run.action.h1.mat.get(i, i).cloned().unwrap_or_else(BigRational::zero);
                let h2 = run.action.h2.mat.get(i, i).cloned().unwrap_or_else(BigRational::zero);
                (rat_to_string(&h1), rat_to_string(&h2))
            })
            .collect();
        w.sort();
        w.dedup();
        out.push(WeightBlock { h, q, weights: w });
    }
    out
}

/// Everything `compute` reports for a diagram.
pub fn compute(d: &MarkedDiagram, opts: &Options, crosscheck_even: bool, faults: Faults) -> Result<Report> {
    let run = run_cube(Cube::full(d), opts.flavor, faults)?;
    let checks = chain_checks(&run);
    if !checks.d_squared {
        return Err(Error::Internal("d∘d ≠ 0 after sign assignment".into()));
    }
    let prep = prepare(&run, opts);
    let an = analyze(&prep, opts.action)?;
    let action = opts.action.then(|| ActionReport {
        epsilon_f: crate::int::rat_to_string(&prep.eps),
        f: map_blocks(&an.homology, an.fstar.as_ref()),
        e: map_blocks(&an.homology, an.estar.as_ref()),
        f_profile: an.f_profile.clone(),
        e_profile: an.e_profile.clone(),
        bracket_ok: an.bracket_ok,
        weights: weight_blocks(&run),
    });
    let mod2 = if crosscheck_even {
        let odd = if opts.reduced { analyze(&prepare(&run, &Options { reduced: false, ..*opts }), false)?.homology } else { an.homology.clone() };
        let even_cx = gaussian_eliminate(&even_complex_of(&run.cube), &[]).complex;
        Some(mod2_compare(&odd, &homology_groups(&even_cx)?))
    } else {
        None
    };
    Ok(Report {
        diagram: diagram_info(d),
        flavor: opts.flavor,
        reduced: opts.reduced,
        homology: an.homology.table(),
        action,
        checks,
        mod2,
    })
}

/// Result of the reduced-cube computation for `P(n, n, -n)`.
#[derive(Clone, Debug, Serialize)]
pub struct PretzelReport {
    pub n: usize,
    pub flavor: Flavor,
    pub homology: Vec<HomologyRow>,
    pub torsion: Vec<Int>,
    pub witness: Vec<WitnessEntry>,
    pub f_profile: Vec<MapProfile>,
    pub cube_vertices: usize,
    pub reduced_generators: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crosscheck: Option<Crosscheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Crosscheck {
    pub homology_match: bool,
    pub f_profile_match: bool,
    pub full_homology: Vec<HomologyRow>,
    pub full_f_profile: Vec<MapProfile>,
}

impl Crosscheck {
    pub fn ok(&self) -> bool {
        self.homology_match && self.f_profile_match
    }
}

/// Reduced homology of `P(n,n,-n)` and its `f★` data from a run.
pub fn reduced_analysis(run: &CubeRun) -> Result<(Prepared, Analysis)> {
    let prep = prepare(run, &Options { flavor: run.signs.flavor, reduced: true, action: true, eliminate: true });
    let an = analyze(&prep, true)?;
    Ok((prep, an))
}

pub fn pretzel_reduced(n: usize, flavor: Flavor, markings: Option<[Triple; 2]>) -> Result<(CubeRun, Analysis)> {
    let pc = reduced_cube(n, markings)?;
    let run = run_cube(pc.cube, flavor, Faults::default())?;
    if !check_d_squared(&run.complex).ok {
        return Err(Error::Internal("d∘d ≠ 0 on the pretzel cube".into()));
    }
    let (_, an) = reduced_analysis(&run)?;
    Ok((run, an))
}

pub fn pretzel_full(n: usize, flavor: Flavor, markings: Option<[Triple; 2]>) -> Result<Analysis> {
    let ni = n as i64;
    let d = pretzel_pd(ni, ni, -ni, markings)?;
    let run = run_cube(Cube::full(&d), flavor, Faults::default())?;
    if !check_d_squared(&run.complex).ok {
        return Err(Error::Internal("d∘d ≠ 0 on the full pretzel cube".into()));
    }
    Ok(reduced_analysis(&run)?.1)
}

pub fn pretzel_report(n: usize, flavor: Flavor, markings: Option<[Triple; 2]>, full_crosscheck: bool) -> Result<PretzelReport> {
    let (run, an) = pretzel_reduced(n, flavor, markings.clone())?;
    let fstar = an.fstar.clone().unwrap_or_default();
    let witness = torsion_witness(&an.homology, &fstar, &Int::from(n as i64))?;
    let crosscheck = if full_crosscheck {
        let full = pretzel_full(n, flavor, markings)?;
        Some(Crosscheck {
            homology_match: full.homology.shapes() == an.homology.shapes(),
            f_profile_match: full.f_profile == an.f_profile,
            full_homology: full.homology.table(),
            full_f_profile: full.f_profile,
        })
    } else {
        None
    };
    Ok(PretzelReport {
        n,
        flavor,
        homology: an.homology.table(),
        torsion: an.homology.all_torsion(),
        witness,
        f_profile: an.f_profile.clone(),
        cube_vertices: run.cube.vertices.len(),
        reduced_generators: run.complex.len() / 2,
        crosscheck,
    })
}

/// One named self-check and its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub ok: bool,
}

/// Runs every structural check on a diagram, in a fixed order: sign
/// equations, `d∘d = 0`, the chain-level relations, then the contraction
/// identities and gl(1|1) relations on each distinct state space.
pub fn self_check(d: &MarkedDiagram, flavor: Flavor, faults: Faults) -> Result<Vec<CheckResult>> {
    use crate::signs::verify_edge_signs;
    use crate::statespace::{check_gl11, check_inner_product, RepData};
    let run = run_cube(Cube::full(d), flavor, faults)?;
    let named = |name: &str, bad: Option<String>| CheckResult {
        ok: bad.is_none(),
        name: match bad {
            Some(b) => format!("{name}: {b}"),
            None => name.to_string(),
        },
    };
    let mut out = vec![
        CheckResult {
            name: "edge signs satisfy every face".into(),
            ok: verify_edge_signs(&run.cube, &run.faces, &run.signs).is_none(),
        },
        CheckResult { name: "d∘d = 0".into(), ok: check_d_squared(&run.complex).ok },
    ];
    let failed = check_relations(&run.complex, &run.action);
    for name in [
        "d∘f = f∘d",
        "d∘e = e∘d",
        "f∘f = 0",
        "e∘e = 0",
        "e∘f + f∘e = ε(f)·id",
        "[h1,e] = e",
        "[h1,f] = -f",
        "[h2,e] = -e",
        "[h2,f] = f",
        "h1 + h2 = ε(f)·id",
    ] {
        out.push(CheckResult { name: name.to_string(), ok: !failed.iter().any(|f| f == name) });
    }
    let mut sizes: Vec<usize> = run.cube.vertices.iter().map(|v| v.circles()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    for c in sizes {
        out.push(named(&format!("inner-product identities on {c} circles"), check_inner_product(c)?));
    }
    let mut reps: Vec<RepData> = run.cube.vertices.iter().map(|v| RepData { nu: v.nu.clone(), z: v.state.eps_f.clone() }).collect();
    reps.sort_by_cached_key(|r| format!("{r:?}"));
    reps.dedup();
    let mut gl_failure = None;
    for rep in &reps {
        if let Some(b) = check_gl11(rep)? {
            gl_failure = Some(b);
            break;
        }
    }
    out.push(named(&format!("gl(1|1) relations on {} state spaces", reps.len()), gl_failure));
    Ok(out)
}
