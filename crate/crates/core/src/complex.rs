//! Bigraded chain complexes over the integers, chain-level gl(1|1) maps, and
//! algebraic Gaussian elimination.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cube::Cube;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::signs::{ActionSigns, EdgeSigns};
use crate::sparse::SparseMat;
use crate::statespace::{Gen, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub h: i64,
    pub q: i64,
    /// Cube vertex and state-space word this generator came from. For
    /// reduced complexes the word `w` stands for `e(x_0 ∧ w)`.
    pub vertex: usize,
    pub word: Word,
}

#[derive(Clone, Debug)]
pub struct BigradedComplex {
    /// Generators sorted by `(h, q, vertex, word)`.
    pub gens: Vec<Generator>,
    /// `d[i][j]`: coefficient of generator `i` in `d(generator j)`.
    pub d: SparseMat<Int>,
    pub reduced: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    pub dh: i64,
    pub dq: i64,
    pub mat: SparseMat<BigRational>,
}

impl ChainMap {
    pub fn zero(cx: &BigradedComplex, dh: i64, dq: i64) -> ChainMap {
        ChainMap { dh, dq, mat: SparseMat::new(cx.len(), cx.len()) }
    }

    pub fn identity(cx: &BigradedComplex) -> ChainMap {
        ChainMap { dh: 0, dq: 0, mat: SparseMat::identity(cx.len()) }
    }

    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        ChainMap { dh: self.dh + other.dh, dq: self.dq + other.dq, mat: self.mat.mul(&other.mat) }
    }
}

/// The gl(1|1) maps on a complex.
#[derive(Clone, Debug)]
pub struct Action {
    pub e: ChainMap,
    pub f: ChainMap,
    pub h1: ChainMap,
    pub h2: ChainMap,
    /// `ε(f)`: the total α of the markings.
    pub eps: BigRational,
}

impl Action {
    pub fn get(&self, g: Gen) -> &ChainMap {
        match g {
            Gen::E => &self.e,
            Gen::F => &self.f,
            Gen::H1 => &self.h1,
            Gen::H2 => &self.h2,
        }
    }
}

impl BigradedComplex {
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generators in each bidegree, in global order.
    pub fn blocks(&self) -> BTreeMap<(i64, i64), Vec<usize>> {
        let mut out: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
        for (i, g) in self.gens.iter().enumerate() {
            out.entry((g.h, g.q)).or_default().push(i);
        }
        out
    }

    /// Euler characteristic per quantum degree.
    pub fn euler(&self) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        for g in &self.gens {
            *out.entry(g.q).or_insert(0) += if g.h.rem_euclid(2) == 0 { 1 } else { -1 };
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Builds a complex from unsorted generators and a differential given as
    /// triplets in that numbering.
    pub fn from_parts(gens: Vec<Generator>, triplets: Vec<(usize, usize, Int)>, reduced: bool) -> BigradedComplex {
        let mut order: Vec<usize> = (0..gens.len()).collect();
        order.sort_by_key(|&i| gens[i]);
        let mut pos = vec![0; gens.len()];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let sorted: Vec<Generator> = order.iter().map(|&i| gens[i]).collect();
        let d = SparseMat::from_triplets(sorted.len(), sorted.len(), triplets.into_iter().map(|(r, c, v)| (pos[r], pos[c], v)));
        BigradedComplex { gens: sorted, d, reduced }
    }

    /// Index of each `(vertex, word)` generator.
    pub fn index(&self) -> std::collections::HashMap<(usize, Word), usize> {
        self.gens.iter().enumerate().map(|(i, g)| ((g.vertex, g.word), i)).collect()
    }

    /// Line-based dump `h q row col value` of the differential, with row and
    /// column positions local to the bidegree blocks.
    pub fn dump_triplets(&self) -> String {
        let blocks = self.blocks();
        let mut local = vec![0usize; self.len()];
        for idx in blocks.values() {
            for (i, &g) in idx.iter().enumerate() {
                local[g] = i;
            }
        }
        let mut entries: Vec<(i64, i64, usize, usize, String)> = self
            .d
            .triplets()
            .map(|(r, c, v)| (self.gens[c].h, self.gens[c].q, local[r], local[c], v.to_string()))
            .collect();
        entries.sort();
        let mut out = String::new();
        for (h, q, r, c, v) in entries {
            let _ = writeln!(out, "{h} {q} {r} {c} {v}");
        }
        out
    }
}

/// `q` of a word of degree `deg` at a vertex with `2ν = two_nu`.
fn qdeg(deg: usize, two_nu: i64, shift: i64) -> i64 {
    2 * deg as i64 + two_nu + shift
}

pub(crate) fn two_nu(nu: &BigRational) -> i64 {
    let t = nu * BigRational::from_integer(2.into());
    assert!(t.is_integer(), "2ν must be an integer");
    Int::from(t.to_integer()).to_i64().expect("grading fits in i64")
}

/// Signed edge maps of a cube, as per-edge sign vectors.
#[derive(Clone, Copy)]
pub enum EdgeMaps<'a> {
    Odd(&'a EdgeSigns),
    /// The even theory with the standard Koszul signs.
    Even,
}

/// The full (unreduced) complex of a cube.
pub fn assemble_complex(cube: &Cube, signs: &EdgeSigns) -> BigradedComplex {
    assemble_with(cube, EdgeMaps::Odd(signs))
}

pub fn assemble_with(cube: &Cube, maps: EdgeMaps<'_>) -> BigradedComplex {
    let mut gens = Vec::new();
    let mut offset = Vec::with_capacity(cube.vertices.len());
    for (vi, v) in cube.vertices.iter().enumerate() {
        offset.push(gens.len());
        let tn = two_nu(&v.nu);
        for w in 0..1u64 << v.circles() {
            let word = Word(w);
            gens.push(Generator {
                h: v.weight as i64 + cube.h_shift,
                q: qdeg(word.degree(), tn, cube.q_shift),
                vertex: vi,
                word,
            });
        }
    }
    let triplets: Vec<(usize, usize, Int)> = cube
        .edges
        .par_iter()
        .enumerate()
        .flat_map_iter(|(ei, edge)| {
            let sign = match maps {
                EdgeMaps::Odd(s) => s.sign[ei] as i64,
                EdgeMaps::Even => koszul_sign(&cube.vertices[edge.src].coords, edge.axis),
            };
            let src_n = cube.vertices[edge.src].circles();
            let (so, to) = (offset[edge.src], offset[edge.dst]);
            let even = matches!(maps, EdgeMaps::Even);
            (0..1u64 << src_n).flat_map(move |w| {
                let terms = if even { edge.map.apply_even(Word(w)) } else { edge.map.apply(Word(w)) };
                terms
                    .iter()
                    .map(move |(c, nw)| (to + nw.0 as usize, so + w as usize, Int::from(sign * c)))
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    BigradedComplex::from_parts(gens, triplets, false)
}

/// `(-1)^{Σ_{i<axis} coords[i]}`.
pub fn koszul_sign(coords: &[u32], axis: usize) -> i64 {
    if coords[..axis].iter().sum::<u32>() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// The chain-level action of `g` on the full complex of a cube.
pub fn assemble_action(cx: &BigradedComplex, cube: &Cube, g: Gen, sigma: &ActionSigns) -> ChainMap {
    let index = cx.index();
    let eps: BigRational = cube.diagram.total_alpha();
    let mut triplets = Vec::new();
    let (dh, dq) = match g {
        Gen::E => (0, -2),
        Gen::F => (0, 2),
        Gen::H1 | Gen::H2 => (0, 0),
    };
    for (i, gen) in cx.gens.iter().enumerate() {
        let v = &cube.vertices[gen.vertex];
        let s = rational(sigma.sigma[gen.vertex] as i64);
        let w = gen.word;
        match g {
            Gen::F => {
                for (k, z) in v.state.eps_f.iter().enumerate() {
                    if let (false, Some((t, nw))) = (z.is_zero(), w.wedge_var(k)) {
                        triplets.push((index[&(gen.vertex, nw)], i, z * &s * rational(t)));
                    }
                }
            }
            Gen::E => {
                for k in 0..v.circles() {
                    if let Some((t, nw)) = w.contract_var(k) {
                        triplets.push((index[&(gen.vertex, nw)], i, &s * rational(t)));
                    }
                }
            }
            Gen::H1 | Gen::H2 => {
                let b2: BigRational = v.state.eps_h2.iter().fold(BigRational::zero(), |a, b| a + b);
                let h2 = rational(w.degree() as i64) + &v.nu + b2;
                let val = if g == Gen::H2 { h2 } else { &eps - h2 };
                triplets.push((i, i, val));
            }
        }
    }
    ChainMap { dh, dq, mat: SparseMat::from_triplets(cx.len(), cx.len(), triplets) }
}

pub fn assemble_full_action(cx: &BigradedComplex, cube: &Cube, sigma: &ActionSigns) -> Action {
    Action {
        e: assemble_action(cx, cube, Gen::E, sigma),
        f: assemble_action(cx, cube, Gen::F, sigma),
        h1: assemble_action(cx, cube, Gen::H1, sigma),
        h2: assemble_action(cx, cube, Gen::H2, sigma),
        eps: cube.diagram.total_alpha(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSquaredReport {
    pub ok: bool,
    /// First nonzero entry `(row generator, column generator, value)`.
    pub first: Option<(Generator, Generator, Int)>,
}

pub fn check_d_squared(cx: &BigradedComplex) -> DSquaredReport {
    let dd = cx.d.mul(&cx.d);
    let first = dd.triplets().next().map(|(r, c, v)| (cx.gens[r], cx.gens[c], v.clone()));
    DSquaredReport { ok: first.is_none(), first }
}

/// Checks that each entry of `φ` respects the declared bidegree shift.
pub fn check_degrees(cx: &BigradedComplex, phi: &ChainMap) -> bool {
    phi.mat.triplets().all(|(r, c, _)| {
        cx.gens[r].h == cx.gens[c].h + phi.dh && cx.gens[r].q == cx.gens[c].q + phi.dq
    })
}

/// `d∘φ − (−1)^{?}φ∘d`; maps here all commute with `d`.
pub fn commutator_with_d(cx: &BigradedComplex, phi: &ChainMap) -> SparseMat<BigRational> {
    let d = cx.d.to_rational();
    d.mul(&phi.mat).sub(&phi.mat.mul(&d))
}

/// Named identity that failed, if any, among the chain-level relations.
pub fn check_relations(cx: &BigradedComplex, action: &Action) -> Vec<String> {
    let mut failures = Vec::new();
    let mut check = |name: &str, m: SparseMat<BigRational>| {
        if !m.is_zero() {
            failures.push(name.to_string());
        }
    };
    check("d∘f = f∘d", commutator_with_d(cx, &action.f));
    check("d∘e = e∘d", commutator_with_d(cx, &action.e));
    check("f∘f = 0", action.f.mat.mul(&action.f.mat));
    check("e∘e = 0", action.e.mat.mul(&action.e.mat));
    let ef = action.e.mat.mul(&action.f.mat).add(&action.f.mat.mul(&action.e.mat));
    check("e∘f + f∘e = ε(f)·id", ef.sub(&SparseMat::identity(cx.len()).scale(&action.eps)));
    let h1 = &action.h1.mat;
    let h2 = &action.h2.mat;
    let (e, f) = (&action.e.mat, &action.f.mat);
    check("[h1,e] = e", h1.mul(e).sub(&e.mul(h1)).sub(e));
    check("[h1,f] = -f", h1.mul(f).sub(&f.mul(h1)).add(f));
    check("[h2,e] = -e", h2.mul(e).sub(&e.mul(h2)).add(e));
    check("[h2,f] = f", h2.mul(f).sub(&f.mul(h2)).sub(f));
    check("h1 + h2 = ε(f)·id", h1.add(h2).sub(&SparseMat::identity(cx.len()).scale(&action.eps)));
    failures
}

/// Result of Gaussian elimination with the transported maps.
#[derive(Clone, Debug)]
pub struct Eliminated {
    pub complex: BigradedComplex,
    pub maps: Vec<ChainMap>,
    pub cancellations: usize,
}

/// Cancels invertible differential entries until none remain, transporting
/// each chain map `φ` to `π∘φ∘ι` along the deformation retraction.
pub fn gaussian_eliminate(cx: &BigradedComplex, maps: &[ChainMap]) -> Eliminated {
    let n = cx.len();
    let mut d = cx.d.clone();
    let mut phis: Vec<SparseMat<BigRational>> = maps.iter().map(|m| m.mat.clone()).collect();
    let mut alive = vec![true; n];
    let mut cancellations = 0;
    loop {
        let mut progress = false;
        for x in 0..n {
            if !alive[x] {
                continue;
            }
            let Some((y, u)) = d.col(x).iter().find(|(_, v)| v.is_unit()).map(|(y, v)| (*y, v.clone())) else {
                continue;
            };
            cancel(&mut d, &mut phis, x, y, &u);
            alive[x] = false;
            alive[y] = false;
            cancellations += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    let complex = BigradedComplex {
        gens: keep.iter().map(|&i| cx.gens[i]).collect(),
        d: d.restrict(&keep, &keep),
        reduced: cx.reduced,
    };
    let maps = maps
        .iter()
        .zip(phis)
        .map(|(m, p)| ChainMap { dh: m.dh, dq: m.dq, mat: p.restrict(&keep, &keep) })
        .collect();
    Eliminated { complex, maps, cancellations }
}

/// Cancels the entry `d(x) = u·y + γ` with `u = ±1`.
fn cancel(d: &mut SparseMat<Int>, phis: &mut [SparseMat<BigRational>], x: usize, y: usize, u: &Int) {
    // u⁻¹ = u for units.
    let row_y: Vec<(usize, Int)> = d.row(y).iter().filter(|(a, _)| **a != x).map(|(a, v)| (*a, v.clone())).collect();
    let col_x: Vec<(usize, Int)> = d.col(x).iter().filter(|(b, _)| **b != y).map(|(b, v)| (*b, v.clone())).collect();
    for (a, dya) in &row_y {
        let t = u * dya;
        for (b, dbx) in &col_x {
            d.add_to(*b, *a, &-(dbx * &t));
        }
    }
    let uq = u.to_rational();
    for phi in phis.iter_mut() {
        // ι(a) = a − u⁻¹ d_{ya} x
        let phi_x: Vec<(usize, BigRational)> = phi.col(x).iter().map(|(r, v)| (*r, v.clone())).collect();
        for (a, dya) in &row_y {
            let t = &uq * dya.to_rational();
            for (r, v) in &phi_x {
                phi.add_to(*r, *a, &-(v * &t));
            }
        }
        // π(y) = −u⁻¹ γ, π(x) = 0
        let phi_y: Vec<(usize, BigRational)> = phi.row(y).iter().map(|(c, v)| (*c, v.clone())).collect();
        for (g, c) in &phi_y {
            let t = &uq * c;
            for (b, dbx) in &col_x {
                phi.add_to(*b, *g, &-(&t * dbx.to_rational()));
            }
        }
        phi.clear_row(x);
        phi.clear_row(y);
        phi.clear_col(x);
        phi.clear_col(y);
    }
    d.clear_row(x);
    d.clear_col(x);
    d.clear_row(y);
    d.clear_col(y);
}

/// A two-term complex `Z → Z` with differential `n`, in degrees 0 and 1.
pub fn two_term(n: i64) -> BigradedComplex {
    let gens = vec![
        Generator { h: 0, q: 0, vertex: 0, word: Word(0) },
        Generator { h: 1, q: 0, vertex: 1, word: Word(0) },
    ];
    BigradedComplex::from_parts(gens, vec![(1, 0, Int::from(n))], false)
}

pub fn check_chain_map(cx: &BigradedComplex, phi: &ChainMap) -> Result<()> {
    if !commutator_with_d(cx, phi).is_zero() {
        return Err(Error::Invalid("map does not commute with the differential".into()));
    }
    Ok(())
}

pub fn unit() -> BigRational {
    BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::Cube;
    use crate::diagram::parse_pd;
    use crate::signs::{classify_all, fix_action_signs, solve_edge_signs, Flavor};

    fn build(text: &str, flavor: Flavor) -> (Cube, BigradedComplex, Action) {
        let d = parse_pd(text).unwrap();
        let cube = Cube::full(&d);
        let faces = classify_all(&cube).unwrap();
        let signs = solve_edge_signs(&cube, &faces, flavor).unwrap();
        let cx = assemble_complex(&cube, &signs);
        let sigma = fix_action_signs(&cube).unwrap();
        let action = assemble_full_action(&cx, &cube, &sigma);
        (cube, cx, action)
    }

    #[test]
    fn unknot_complex() {
        let (_, cx, _) = build("unknots 1\n", Flavor::Y);
        assert_eq!(cx.len(), 2);
        assert!(cx.d.is_zero());
        let qs: Vec<i64> = cx.gens.iter().map(|g| g.q).collect();
        assert_eq!(qs, vec![-1, 1]);
        assert!(check_d_squared(&cx).ok);
    }

    #[test]
    fn marked_unknot_action() {
        let (_, cx, a) = build("unknots 1\nmark U1 1 1/2 1/2\n", Flavor::Y);
        // basis order: 1 (q=-1), x1 (q=1)
        assert_eq!(a.f.mat.get(1, 0), Some(&unit()));
        assert_eq!(a.f.mat.col(1).len(), 0);
        assert_eq!(a.e.mat.get(0, 1), Some(&unit()));
        assert!(check_relations(&cx, &a).is_empty());
    }

    #[test]
    fn hopf_dimension_and_d_squared() {
        for flavor in [Flavor::X, Flavor::Y] {
            let (_, cx, a) = build("X[1,3,2,4]\nX[3,1,4,2]\n", flavor);
            assert_eq!(cx.len(), 12);
            assert!(check_d_squared(&cx).ok);
            assert!(a.f.mat.is_zero());
            for (r, c, _) in cx.d.triplets() {
                assert_eq!(cx.gens[r].h, cx.gens[c].h + 1);
                assert_eq!(cx.gens[r].q, cx.gens[c].q);
            }
        }
    }

    #[test]
    fn corrupted_sign_breaks_d_squared() {
        let d = parse_pd("X[1,5,2,4]\nX[3,1,4,6]\nX[5,3,6,2]\n").unwrap();
        let cube = Cube::full(&d);
        let faces = classify_all(&cube).unwrap();
        let mut signs = solve_edge_signs(&cube, &faces, Flavor::Y).unwrap();
        assert!(check_d_squared(&assemble_complex(&cube, &signs)).ok);
        signs.sign[5] = -signs.sign[5];
        let rep = check_d_squared(&assemble_complex(&cube, &signs));
        assert!(!rep.ok && rep.first.is_some());
    }

    #[test]
    fn elimination_examples() {
        let e = gaussian_eliminate(&two_term(1), &[]);
        assert!(e.complex.is_empty());
        let e = gaussian_eliminate(&two_term(-1), &[]);
        assert_eq!(e.cancellations, 1);
        for n in 2..5 {
            let e = gaussian_eliminate(&two_term(n), &[]);
            assert_eq!(e.complex.len(), 2);
            assert_eq!(e.cancellations, 0);
        }
    }

    #[test]
    fn elimination_keeps_euler_and_chain_maps() {
        let text = "X[1,5,2,4]\nX[3,1,4,6]\nX[5,3,6,2]\nmark 1 1 1/2 1/2\n";
        let (_, cx, a) = build(text, Flavor::Y);
        let out = gaussian_eliminate(&cx, &[a.f.clone(), a.e.clone()]);
        assert_eq!(cx.euler(), out.complex.euler());
        assert!(check_d_squared(&out.complex).ok);
        for m in &out.maps {
            assert!(commutator_with_d(&out.complex, m).is_zero());
            assert!(check_degrees(&out.complex, m));
        }
    }
}
