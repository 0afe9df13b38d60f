//! Edge signs making every square of the cube anticommute, and the per-state
//! signs that turn `e` and `f` into chain maps.

use std::collections::{BTreeMap, VecDeque};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::cube::{Cube, Face};
use crate::diagram::{ladybug_class, MarkedDiagram, Resolution};
use crate::error::{Error, Result};
use crate::gf2::System;
use crate::statespace::{basis, EdgeKind, EdgeMap, Word};

/// Sign conventions for faces whose two compositions both vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, serde::Serialize)]
pub enum Flavor {
    X,
    #[default]
    Y,
}

impl std::str::FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Flavor> {
        match s {
            "X" | "x" => Ok(Flavor::X),
            "Y" | "y" => Ok(Flavor::Y),
            other => Err(Error::Invalid(format!("unknown flavor {other:?}"))),
        }
    }
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", if *self == Flavor::X { "X" } else { "Y" })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeFace {
    /// One circle split two ways and merged back; `class` is the relative
    /// position of the two crossing arrows (see `ladybug_class`).
    Ladybug { class: bool },
    /// Both paths vanish for another reason (a dot map between two arcs of
    /// one circle); `lambda` is the super-commutation sign of the two maps.
    Degenerate { lambda: i8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceType {
    /// Path A equals `λ` times path B, path B nonzero.
    Forced(i8),
    Free(FreeFace),
}

type Image = BTreeMap<Word, i64>;

fn compose(first: &EdgeMap, second: &EdgeMap, w: Word) -> Image {
    let mut out = Image::new();
    for (c1, w1) in first.apply(w).iter() {
        for (c2, w2) in second.apply(w1).iter() {
            *out.entry(w2).or_insert(0) += c1 * c2;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Classifies one square from its four unsigned maps.
pub fn classify_maps(
    circles: usize,
    first_a: &EdgeMap,
    then_b: &EdgeMap,
    first_b: &EdgeMap,
    then_a: &EdgeMap,
    ladybug: impl FnOnce() -> Option<bool>,
) -> Result<FaceType> {
    let mut lambda: Option<i8> = None;
    for w in basis(circles) {
        let pa = compose(first_a, then_b, w);
        let pb = compose(first_b, then_a, w);
        if pa.is_empty() && pb.is_empty() {
            continue;
        }
        let l = if pa == pb {
            1
        } else if pa.len() == pb.len() && pa.iter().all(|(k, v)| pb.get(k) == Some(&-v)) {
            -1
        } else {
            return Err(Error::Internal(format!("square compositions are not proportional on {w:?}")));
        };
        match lambda {
            None => lambda = Some(l),
            Some(prev) if prev != l => {
                return Err(Error::Internal("square compositions change ratio across the basis".into()))
            }
            _ => {}
        }
    }
    if let Some(l) = lambda {
        return Ok(FaceType::Forced(l));
    }
    let splits = matches!(first_a.kind, EdgeKind::Split { .. }) && matches!(first_b.kind, EdgeKind::Split { .. });
    if splits {
        if let Some(class) = ladybug() {
            return Ok(FaceType::Free(FreeFace::Ladybug { class }));
        }
    }
    let odd = first_a.is_odd() && first_b.is_odd();
    Ok(FaceType::Free(FreeFace::Degenerate { lambda: if odd { -1 } else { 1 } }))
}

pub fn classify_face(cube: &Cube, face: &Face) -> Result<FaceType> {
    let e = &cube.edges;
    let v = &cube.vertices[face.v];
    classify_maps(v.circles(), &e[face.first_a].map, &e[face.then_b].map, &e[face.first_b].map, &e[face.then_a].map, || {
        match (e[face.first_a].crossing, e[face.first_b].crossing) {
            (Some(j), Some(k)) => ladybug_class(&cube.diagram, v.resolution, j, k),
            _ => None,
        }
    })
}

/// Classification of the square of a diagram's full cube at `r` spanned by
/// crossings `j` and `k`.
pub fn classify_diagram_face(d: &MarkedDiagram, r: Resolution, j: usize, k: usize) -> Result<FaceType> {
    use crate::diagram::saddle_info;
    if j == k || r.bit(j) != 0 || r.bit(k) != 0 {
        return Err(Error::Invalid("face needs two distinct 0-smoothed crossings".into()));
    }
    let (j, k) = if j < k { (j, k) } else { (k, j) };
    let circles = crate::diagram::resolve_state(d, r).c;
    classify_maps(
        circles,
        &saddle_info(d, r, j)?,
        &saddle_info(d, r.flip(j), k)?,
        &saddle_info(d, r, k)?,
        &saddle_info(d, r.flip(k), j)?,
        || ladybug_class(d, r, j, k),
    )
}

pub fn classify_all(cube: &Cube) -> Result<Vec<FaceType>> {
    cube.faces.par_iter().map(|f| classify_face(cube, f)).collect()
}

/// The product of the four edge signs a face must carry.
pub fn required_product(face: FaceType, flavor: Flavor) -> i8 {
    match face {
        FaceType::Forced(l) => -l,
        FaceType::Free(FreeFace::Degenerate { lambda }) => -lambda,
        FaceType::Free(FreeFace::Ladybug { class }) => {
            let reference = if class { 1 } else { -1 };
            match flavor {
                Flavor::Y => -reference,
                Flavor::X => reference,
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSigns {
    pub sign: Vec<i8>,
    pub flavor: Flavor,
    /// Ladybug faces whose parity had to be taken from the other flavor.
    pub fallback_faces: Vec<usize>,
}

/// Edges of the breadth-first spanning tree from vertex 0, scanning outgoing
/// edges by axis.
pub fn spanning_tree(cube: &Cube) -> Vec<usize> {
    let mut seen = vec![false; cube.vertices.len()];
    let mut tree = Vec::new();
    let mut queue = VecDeque::new();
    if cube.vertices.is_empty() {
        return tree;
    }
    seen[0] = true;
    queue.push_back(0);
    while let Some(v) = queue.pop_front() {
        for &(_, e) in &cube.out[v] {
            let dst = cube.edges[e].dst;
            if !seen[dst] {
                seen[dst] = true;
                tree.push(e);
                queue.push_back(dst);
            }
        }
    }
    tree
}

pub fn solve_edge_signs(cube: &Cube, faces: &[FaceType], flavor: Flavor) -> Result<EdgeSigns> {
    let mut flipped: Vec<usize> = Vec::new();
    let tree = spanning_tree(cube);
    loop {
        let mut sys = System::new(cube.edges.len());
        for &e in &tree {
            sys.push(vec![e], false);
        }
        for (i, (face, ft)) in cube.faces.iter().zip(faces).enumerate() {
            let mut want = required_product(*ft, flavor);
            if flipped.contains(&i) {
                want = -want;
            }
            sys.push(face.edges().to_vec(), want < 0);
        }
        match sys.solve() {
            Ok(bits) => {
                return Ok(EdgeSigns {
                    sign: bits.iter().map(|&b| if b { -1 } else { 1 }).collect(),
                    flavor,
                    fallback_faces: flipped,
                })
            }
            Err(rows) => {
                let bad: Vec<usize> = rows.into_iter().filter(|&r| r >= tree.len()).map(|r| r - tree.len()).collect();
                let candidate = bad
                    .iter()
                    .copied()
                    .find(|&f| matches!(faces[f], FaceType::Free(FreeFace::Ladybug { .. })) && !flipped.contains(&f));
                match candidate {
                    Some(f) if flipped.len() < faces.len() => {
                        log::warn!("ladybug face {f} falls back to the other flavor parity");
                        flipped.push(f);
                    }
                    _ => return Err(Error::InfeasibleSigns { faces: bad }),
                }
            }
        }
    }
}

/// Checks the face equations directly; returns the first violated face.
pub fn verify_edge_signs(cube: &Cube, faces: &[FaceType], signs: &EdgeSigns) -> Option<usize> {
    cube.faces.iter().zip(faces).enumerate().find_map(|(i, (face, ft))| {
        let mut want = required_product(*ft, signs.flavor);
        if signs.fallback_faces.contains(&i) {
            want = -want;
        }
        let prod: i8 = face.edges().iter().map(|&e| signs.sign[e]).product();
        (prod != want).then_some(i)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSigns {
    pub sigma: Vec<i8>,
}

/// `z ∧ w` for a linear form `z`.
fn apply_linear(z: &[BigRational], w: Word) -> Vec<(Word, BigRational)> {
    z.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .filter_map(|(i, c)| w.wedge_var(i).map(|(s, nw)| (nw, c * BigRational::from_integer(s.into()))))
        .collect()
}

fn apply_e(circles: usize, w: Word) -> Vec<(Word, BigRational)> {
    (0..circles)
        .filter_map(|i| w.contract_var(i).map(|(s, nw)| (nw, BigRational::from_integer(s.into()))))
        .collect()
}

fn edge_image(map: &EdgeMap, v: &[(Word, BigRational)]) -> BTreeMap<Word, BigRational> {
    let mut out = BTreeMap::new();
    for (w, c) in v {
        for (s, nw) in map.apply(*w).iter() {
            *out.entry(nw).or_insert_with(BigRational::zero) += c * BigRational::from_integer(s.into());
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Ratio `τ` with `E∘g = τ·g∘E` on the source basis, `None` if both vanish.
fn edge_ratio(
    map: &EdgeMap,
    src_circles: usize,
    g_src: &dyn Fn(Word) -> Vec<(Word, BigRational)>,
    g_dst: &dyn Fn(Word) -> Vec<(Word, BigRational)>,
) -> Result<Option<i8>> {
    let mut tau = None;
    for w in basis(src_circles) {
        let left = edge_image(map, &g_src(w));
        let mut right = BTreeMap::new();
        for (s, nw) in map.apply(w).iter() {
            for (w2, c) in g_dst(nw) {
                *right.entry(w2).or_insert_with(BigRational::zero) += c * BigRational::from_integer(s.into());
            }
        }
        right.retain(|_, c: &mut BigRational| !c.is_zero());
        if left.is_empty() && right.is_empty() {
            continue;
        }
        let t = if left == right {
            1
        } else if left.len() == right.len() && left.iter().all(|(k, v)| right.get(k).is_some_and(|r| *r == -v)) {
            -1
        } else {
            return Err(Error::Internal(format!("edge map neither commutes nor anticommutes on {w:?}")));
        };
        if tau.is_some_and(|p| p != t) {
            return Err(Error::Internal("edge commutation sign varies across the basis".into()));
        }
        tau = Some(t);
    }
    Ok(tau)
}

/// Per-edge commutation sign of the saddle/dot map with `f` (and `e`).
pub fn edge_taus(cube: &Cube) -> Result<Vec<i8>> {
    cube.edges
        .par_iter()
        .map(|edge| {
            let src = &cube.vertices[edge.src];
            let dst = &cube.vertices[edge.dst];
            let (zs, zd) = (&src.state.eps_f, &dst.state.eps_f);
            let tf = edge_ratio(&edge.map, src.circles(), &|w| apply_linear(zs, w), &|w| apply_linear(zd, w))?;
            let (cs, cd) = (src.circles(), dst.circles());
            let te = edge_ratio(&edge.map, cs, &|w| apply_e(cs, w), &|w| apply_e(cd, w))?;
            match (tf, te) {
                (Some(a), Some(b)) if a != b => Err(Error::Internal("e and f disagree on an edge sign".into())),
                (Some(a), _) | (None, Some(a)) => Ok(a),
                (None, None) => Ok(if edge.map.is_odd() { -1 } else { 1 }),
            }
        })
        .collect()
}

/// Solves `σ(dst)·σ(src) = τ(edge)` along a spanning tree with `σ(0) = +1`.
pub fn fix_action_signs(cube: &Cube) -> Result<ActionSigns> {
    let taus = edge_taus(cube)?;
    fix_action_signs_with(cube, &taus, &spanning_tree(cube))
}

pub fn fix_action_signs_with(cube: &Cube, taus: &[i8], tree: &[usize]) -> Result<ActionSigns> {
    let nv = cube.vertices.len();
    let mut sigma = vec![0i8; nv];
    if nv == 0 {
        return Ok(ActionSigns { sigma });
    }
    sigma[0] = 1;
    // Tree edges may be listed in any order; sweep until settled.
    let mut remaining: Vec<usize> = tree.to_vec();
    while !remaining.is_empty() {
        let before = remaining.len();
        remaining.retain(|&e| {
            let edge = &cube.edges[e];
            match (sigma[edge.src], sigma[edge.dst]) {
                (0, 0) => true,
                (s, 0) => {
                    sigma[edge.dst] = s * taus[e];
                    false
                }
                (0, t) => {
                    sigma[edge.src] = t * taus[e];
                    false
                }
                _ => false,
            }
        });
        if remaining.len() == before {
            return Err(Error::Internal("spanning tree does not reach every vertex".into()));
        }
    }
    for (i, edge) in cube.edges.iter().enumerate() {
        if sigma[edge.src] * sigma[edge.dst] != taus[i] {
            return Err(Error::Internal(format!("action signs inconsistent at edge {i}")));
        }
    }
    Ok(ActionSigns { sigma })
}

/// Depth-first spanning tree, for comparing tree choices.
pub fn depth_first_tree(cube: &Cube) -> Vec<usize> {
    let nv = cube.vertices.len();
    let mut adj = vec![Vec::new(); nv];
    for (i, e) in cube.edges.iter().enumerate() {
        adj[e.src].push((e.dst, i));
        adj[e.dst].push((e.src, i));
    }
    let mut seen = vec![false; nv];
    let mut tree = Vec::new();
    let mut stack = vec![nv.saturating_sub(1)];
    if nv == 0 {
        return tree;
    }
    seen[nv - 1] = true;
    while let Some(v) = stack.pop() {
        for &(u, e) in adj[v].iter().rev() {
            if !seen[u] {
                seen[u] = true;
                tree.push(e);
                stack.push(u);
            }
        }
    }
    tree
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    const HOPF: &str = "X[1,3,2,4]\nX[3,1,4,2]\n";

    #[test]
    fn hopf_face_is_forced() {
        let d = parse_pd(HOPF).unwrap();
        let ft = classify_diagram_face(&d, Resolution(0), 0, 1).unwrap();
        assert!(matches!(ft, FaceType::Forced(_)));
        let cube = Cube::full(&d);
        let faces = classify_all(&cube).unwrap();
        let s = solve_edge_signs(&cube, &faces, Flavor::Y).unwrap();
        let tree = spanning_tree(&cube);
        assert_eq!(tree.len(), 3);
        for e in tree {
            assert_eq!(s.sign[e], 1);
        }
        assert_eq!(verify_edge_signs(&cube, &faces, &s), None);
    }

    #[test]
    fn single_kink_has_no_faces() {
        let d = parse_pd("X[1,2,2,1]\n").unwrap();
        let cube = Cube::full(&d);
        let s = solve_edge_signs(&cube, &[], Flavor::X).unwrap();
        assert_eq!(s.sign, vec![1]);
        let sigma = fix_action_signs(&cube).unwrap();
        assert_eq!(sigma.sigma[0], 1);
    }

    #[test]
    fn ladybugs_in_small_pretzel() {
        let d = crate::pretzel::pretzel_pd(1, 1, -1, None).unwrap();
        let cube = Cube::full(&d);
        let faces = classify_all(&cube).unwrap();
        let ladybugs = faces.iter().filter(|f| matches!(f, FaceType::Free(FreeFace::Ladybug { .. }))).count();
        assert_eq!(ladybugs, 2);
        for flavor in [Flavor::X, Flavor::Y] {
            let s = solve_edge_signs(&cube, &faces, flavor).unwrap();
            assert_eq!(verify_edge_signs(&cube, &faces, &s), None);
            assert!(s.fallback_faces.is_empty());
        }
    }
}
