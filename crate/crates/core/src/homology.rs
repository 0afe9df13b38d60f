//! Integer homology per bidegree, reduced complexes, and maps induced on
//! homology.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{check_d_squared, BigradedComplex, ChainMap, Generator};
use crate::cube::Cube;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::snf::{smith_checked, zeros, Dense, Track};
use crate::sparse::SparseMat;
use crate::statespace::Word;

/// Isomorphism type `Z^free ⊕ ⊕ Z/t_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GroupShape {
    pub free: usize,
    pub torsion: Vec<Int>,
}

impl GroupShape {
    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    /// Dimension of the group tensored with `F_2`.
    pub fn mod2_dim(&self) -> usize {
        self.free + self.torsion.iter().filter(|t| t.is_even()).count()
    }
}

impl std::fmt::Display for GroupShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.free > 0 {
            parts.push(if self.free == 1 { "Z".to_string() } else { format!("Z^{}", self.free) });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology in one bidegree, presented on explicit generators.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    pub h: i64,
    pub q: i64,
    pub shape: GroupShape,
    /// Global indices of the block's chain generators.
    pub block: Vec<usize>,
    /// Cycle representatives in block coordinates: torsion generators first
    /// (in divisor order), then free ones.
    pub gens: Vec<Vec<Int>>,
    /// Order of each generator, `None` when free.
    pub orders: Vec<Option<Int>>,
    /// `coords · z` gives the generator coefficients of a cycle `z`.
    coords: Dense,
}

impl HomologyGroup {
    pub fn free_rank(&self) -> usize {
        self.shape.free
    }

    pub fn torsion(&self) -> &[Int] {
        &self.shape.torsion
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    /// Coefficients of the class of the cycle `z` (block coordinates), with
    /// torsion coefficients reduced into `[0, order)`.
    pub fn class_of(&self, z: &[Int]) -> Vec<Int> {
        let mut out: Vec<Int> = self
            .coords
            .iter()
            .map(|row| row.iter().zip(z).fold(Int::zero(), |a, (x, y)| if x.is_zero() || y.is_zero() { a } else { a + x * y }))
            .collect();
        self.reduce(&mut out);
        out
    }

    fn reduce(&self, v: &mut [Int]) {
        for (x, o) in v.iter_mut().zip(&self.orders) {
            if let Some(o) = o {
                let q = x.div_floor(o);
                *x = &*x - &(&q * o);
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Homology {
    pub groups: BTreeMap<(i64, i64), HomologyGroup>,
}

/// One line of a homology table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct HomologyRow {
    pub h: i64,
    pub q: i64,
    pub rank: usize,
    pub torsion: Vec<Int>,
}

impl Homology {
    pub fn get(&self, h: i64, q: i64) -> Option<&HomologyGroup> {
        self.groups.get(&(h, q))
    }

    /// Nonzero groups as table rows.
    pub fn table(&self) -> Vec<HomologyRow> {
        self.groups
            .values()
            .filter(|g| !g.shape.is_zero())
            .map(|g| HomologyRow { h: g.h, q: g.q, rank: g.shape.free, torsion: g.shape.torsion.clone() })
            .collect()
    }

    pub fn shapes(&self) -> BTreeMap<(i64, i64), GroupShape> {
        self.groups.iter().filter(|(_, g)| !g.shape.is_zero()).map(|(k, g)| (*k, g.shape.clone())).collect()
    }

    /// All elementary divisors, over every bidegree.
    pub fn all_torsion(&self) -> Vec<Int> {
        let mut t: Vec<Int> = self.groups.values().flat_map(|g| g.shape.torsion.iter().cloned()).collect();
        t.sort();
        t
    }

    pub fn total_rank(&self) -> usize {
        self.groups.values().map(|g| g.shape.free).sum()
    }
}

/// Submatrix of `m` on the given rows and columns, dense.
fn dense_block(m: &SparseMat<Int>, rows: &[usize], cols: &[usize]) -> Dense {
    m.restrict(rows, cols).to_dense()
}

fn block_homology(cx: &BigradedComplex, blocks: &BTreeMap<(i64, i64), Vec<usize>>, key: (i64, i64)) -> Result<HomologyGroup> {
    let (h, q) = key;
    let here = &blocks[&key];
    let k = here.len();
    let empty = Vec::new();
    let next = blocks.get(&(h + 1, q)).unwrap_or(&empty);
    let prev = blocks.get(&(h - 1, q)).unwrap_or(&empty);

    // Kernel of the outgoing differential: columns r.. of V.
    let out_m = dense_block(&cx.d, next, here);
    let s_out = smith_checked(&out_m, next.len(), k, Track { u: true, v: true, v_inv: true, ..Track::default() })?;
    let r = s_out.rank();
    let v = s_out.v.expect("tracked");
    let v_inv = s_out.v_inv.expect("tracked");
    let z = k - r;

    // Incoming boundaries in kernel coordinates.
    let in_m = dense_block(&cx.d, here, prev);
    let mut m = zeros(z, prev.len());
    for i in 0..z {
        for j in 0..prev.len() {
            let mut acc = Int::zero();
            for t in 0..k {
                let (a, b) = (&v_inv[r + i][t], &in_m[t][j]);
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            m[i][j] = acc;
        }
    }
    let s_in = smith_checked(&m, z, prev.len(), Track { u: true, u_inv: true, ..Track::default() })?;
    let rho = s_in.rank();
    let u = s_in.u.expect("tracked");
    let u_inv = s_in.u_inv.expect("tracked");
    let diag = s_in.diag;

    let mut gens = Vec::new();
    let mut orders = Vec::new();
    let mut coords = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..z {
        let order = if i < rho { Some(diag[i].clone()) } else { None };
        if order.as_ref().is_some_and(|o| o.is_one()) {
            continue;
        }
        // generator: K · U⁻¹[:, i]
        let mut g = vec![Int::zero(); k];
        for (t, gt) in g.iter_mut().enumerate() {
            let mut acc = Int::zero();
            for l in 0..z {
                let (a, b) = (&v[t][r + l], &u_inv[l][i]);
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            *gt = acc;
        }
        // coordinate row: (U · P)[i, :]
        let mut c = vec![Int::zero(); k];
        for (t, ct) in c.iter_mut().enumerate() {
            let mut acc = Int::zero();
            for l in 0..z {
                let (a, b) = (&u[i][l], &v_inv[r + l][t]);
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            *ct = acc;
        }
        if let Some(o) = &order {
            torsion.push(o.clone());
        }
        gens.push(g);
        orders.push(order);
        coords.push(c);
    }
    let shape = GroupShape { free: z - rho, torsion };
    Ok(HomologyGroup { h, q, shape, block: here.clone(), gens, orders, coords })
}

/// Homology of every bidegree block; refuses complexes with `d² ≠ 0`.
pub fn homology_groups(cx: &BigradedComplex) -> Result<Homology> {
    if !check_d_squared(cx).ok {
        return Err(Error::Invalid("differential does not square to zero".into()));
    }
    let blocks = cx.blocks();
    let keys: Vec<(i64, i64)> = blocks.keys().copied().collect();
    let groups: Result<Vec<HomologyGroup>> = keys.par_iter().map(|&key| block_homology(cx, &blocks, key)).collect();
    Ok(Homology { groups: groups?.into_iter().map(|g| ((g.h, g.q), g)).collect() })
}

/// Reduced complex on `ker e` for a complex assembled from a cube: the
/// elements `e(x_0 ∧ w)` for words `w` avoiding the lowest circle form an
/// integral basis, with coordinates read off on those words. Also restricts
/// the given maps, which must preserve `ker e`.
pub fn reduced_from_states(cx: &BigradedComplex, cube: &Cube, maps: &[&ChainMap]) -> (BigradedComplex, Vec<ChainMap>) {
    let index = cx.index();
    let keep: Vec<usize> = (0..cx.len())
        .filter(|&i| cube.vertices[cx.gens[i].vertex].circles() > 0 && !cx.gens[i].word.contains(0))
        .collect();
    let mut pos = vec![usize::MAX; cx.len()];
    for (j, &i) in keep.iter().enumerate() {
        pos[i] = j;
    }
    // basis vectors in full coordinates
    let basis: Vec<BTreeMap<usize, Int>> = keep
        .par_iter()
        .map(|&i| {
            let g = cx.gens[i];
            let mut v = BTreeMap::new();
            v.insert(i, Int::one());
            let n = cube.vertices[g.vertex].circles();
            for k in 1..n {
                if let Some((t, nw)) = g.word.contract_var(k) {
                    if let Some((s, nw2)) = nw.wedge_var(0) {
                        v.insert(index[&(g.vertex, nw2)], Int::from(-t * s));
                    }
                }
            }
            v
        })
        .collect();
    let project = |img: BTreeMap<usize, Int>| -> Vec<(usize, Int)> {
        img.into_iter().filter(|(r, _)| pos[*r] != usize::MAX).map(|(r, v)| (pos[r], v)).collect()
    };
    let triplets: Vec<(usize, usize, Int)> = basis
        .par_iter()
        .enumerate()
        .flat_map_iter(|(j, b)| project(cx.d.apply(b)).into_iter().map(move |(r, v)| (r, j, v)))
        .collect();
    let gens: Vec<Generator> = keep.iter().map(|&i| cx.gens[i]).collect();
    // keep is already in generator order, so from_parts keeps the numbering
    let red = BigradedComplex::from_parts(gens, triplets, true);
    let rat_basis: Vec<BTreeMap<usize, BigRational>> =
        basis.iter().map(|b| b.iter().map(|(k, v)| (*k, v.to_rational())).collect()).collect();
    let out = maps
        .iter()
        .map(|m| {
            let mut t = Vec::new();
            for (j, b) in rat_basis.iter().enumerate() {
                for (r, v) in m.mat.apply(b) {
                    if pos[r] != usize::MAX {
                        t.push((pos[r], j, v));
                    }
                }
            }
            ChainMap { dh: m.dh, dq: m.dq, mat: SparseMat::from_triplets(keep.len(), keep.len(), t) }
        })
        .collect();
    (red, out)
}

/// Reduced complex on `ker e` for an arbitrary complex, via an integral
/// kernel basis of each block of `e`. Maps are restricted as well.
pub fn reduced_complex(cx: &BigradedComplex, e: &ChainMap, maps: &[&ChainMap]) -> Result<(BigradedComplex, Vec<ChainMap>)> {
    if !crate::complex::commutator_with_d(cx, e).is_zero() {
        return Err(Error::Invalid("e is not a chain map".into()));
    }
    let e_int = e.mat.to_integer().ok_or_else(|| Error::Invalid("e has non-integral entries".into()))?;
    let blocks = cx.blocks();
    // per block: kernel basis K (columns, block coords) and left inverse P
    struct Ker {
        block: Vec<usize>,
        k: Vec<Vec<Int>>,
        p: Vec<Vec<Int>>,
    }
    let empty = Vec::new();
    let kers: Result<Vec<((i64, i64), Ker)>> = blocks
        .par_iter()
        .map(|(&(h, q), here)| {
            let tgt = blocks.get(&(h + e.dh, q + e.dq)).unwrap_or(&empty);
            let m = dense_block(&e_int, tgt, here);
            let s = smith_checked(&m, tgt.len(), here.len(), Track { v: true, v_inv: true, ..Track::default() })?;
            let r = s.rank();
            let v = s.v.expect("tracked");
            let vi = s.v_inv.expect("tracked");
            let k = (r..here.len()).map(|c| v.iter().map(|row| row[c].clone()).collect()).collect();
            let p = vi[r..].to_vec();
            Ok(((h, q), Ker { block: here.clone(), k, p }))
        })
        .collect();
    let kers: BTreeMap<(i64, i64), Ker> = kers?.into_iter().collect();
    let mut gens = Vec::new();
    let mut start = BTreeMap::new();
    for (&(h, q), ker) in &kers {
        start.insert((h, q), gens.len());
        for i in 0..ker.k.len() {
            gens.push(Generator { h, q, vertex: i, word: Word(0) });
        }
    }
    let restrict = |mat: &SparseMat<BigRational>, dh: i64, dq: i64| -> Vec<(usize, usize, BigRational)> {
        let mut t = Vec::new();
        for (&(h, q), ker) in &kers {
            let Some(tk) = kers.get(&(h + dh, q + dq)) else { continue };
            let mut tpos = HashMap::new();
            for (i, &g) in tk.block.iter().enumerate() {
                tpos.insert(g, i);
            }
            for (j, col) in ker.k.iter().enumerate() {
                let v: BTreeMap<usize, BigRational> = col
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (ker.block[i], x.to_rational()))
                    .collect();
                let img = mat.apply(&v);
                for (r, prow) in tk.p.iter().enumerate() {
                    let mut acc = BigRational::zero();
                    for (g, x) in &img {
                        if let Some(&i) = tpos.get(g) {
                            if !prow[i].is_zero() {
                                acc += x * prow[i].to_rational();
                            }
                        }
                    }
                    if !acc.is_zero() {
                        t.push((start[&(h + dh, q + dq)] + r, start[&(h, q)] + j, acc));
                    }
                }
            }
        }
        t
    };
    let d_rat = cx.d.to_rational();
    let dt: Vec<(usize, usize, Int)> = restrict(&d_rat, 1, 0)
        .into_iter()
        .map(|(r, c, v)| Int::from_rational(&v).map(|x| (r, c, x)).ok_or_else(|| Error::Internal("non-integral reduced differential".into())))
        .collect::<Result<_>>()?;
    let n = gens.len();
    let red = BigradedComplex::from_parts(gens, dt, true);
    let out = maps
        .iter()
        .map(|m| ChainMap { dh: m.dh, dq: m.dq, mat: SparseMat::from_triplets(n, n, restrict(&m.mat, m.dh, m.dq)) })
        .collect();
    Ok((red, out))
}

/// Matrix of an induced map between two homology presentations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub source: (i64, i64),
    pub target: (i64, i64),
    /// `matrix[i][j]`: coefficient of target generator `i` in the image of
    /// source generator `j`.
    pub matrix: Dense,
}

/// The map `φ★` on every nonzero source group.
pub fn induced_on_homology(cx: &BigradedComplex, phi: &ChainMap, hom: &Homology) -> Result<BTreeMap<(i64, i64), InducedMap>> {
    let mut out = BTreeMap::new();
    let d_rat = cx.d.to_rational();
    for (&(h, q), g) in &hom.groups {
        if g.num_gens() == 0 {
            continue;
        }
        let target = (h + phi.dh, q + phi.dq);
        let tg = hom.groups.get(&target);
        let mut matrix = zeros(tg.map_or(0, |t| t.num_gens()), g.num_gens());
        for (j, gen) in g.gens.iter().enumerate() {
            let v: BTreeMap<usize, BigRational> =
                gen.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (g.block[i], x.to_rational())).collect();
            let img = phi.mat.apply(&v);
            if !d_rat.apply(&img).is_empty() {
                return Err(Error::Internal(format!("image of a cycle at ({h},{q}) is not a cycle")));
            }
            let Some(t) = tg else {
                if !img.is_empty() {
                    return Err(Error::Internal("map lands outside the complex's bidegrees".into()));
                }
                continue;
            };
            let mut local = vec![Int::zero(); t.block.len()];
            for (gi, x) in img {
                let i = t.block.binary_search(&gi).map_err(|_| Error::Internal("map changes bidegree inconsistently".into()))?;
                local[i] = Int::from_rational(&x).ok_or_else(|| Error::Invalid("induced map needs integral entries".into()))?;
            }
            for (i, c) in t.class_of(&local).into_iter().enumerate() {
                matrix[i][j] = c;
            }
        }
        out.insert((h, q), InducedMap { source: (h, q), target, matrix });
    }
    Ok(out)
}

/// `U`, diagonal and rank of `[C | R]` where `R` holds the torsion relations.
fn relation_snf(group: &HomologyGroup, columns: &[Vec<Int>]) -> Result<crate::snf::Snf> {
    let k = group.num_gens();
    let rel: Vec<(usize, Int)> = group.orders.iter().enumerate().filter_map(|(i, o)| o.clone().map(|o| (i, o))).collect();
    let ncols = columns.len() + rel.len();
    let mut m = zeros(k, ncols);
    for (j, c) in columns.iter().enumerate() {
        for i in 0..k {
            m[i][j] = c[i].clone();
        }
    }
    for (t, (i, o)) in rel.iter().enumerate() {
        m[*i][columns.len() + t] = o.clone();
    }
    smith_checked(&m, k, ncols, Track { u: true, ..Track::default() })
}

/// Image and cokernel shapes of a subgroup generated by `columns`.
pub fn subgroup_shapes(group: &HomologyGroup, columns: &[Vec<Int>]) -> Result<(GroupShape, GroupShape)> {
    let k = group.num_gens();
    let s = relation_snf(group, columns)?;
    let rho = s.rank();
    let coker = GroupShape { free: k - rho, torsion: s.nontrivial() };
    // relations in the basis of the lattice C + R
    let u = s.u.as_ref().expect("tracked");
    let rel: Vec<(usize, Int)> = group.orders.iter().enumerate().filter_map(|(i, o)| o.clone().map(|o| (i, o))).collect();
    let mut y = zeros(rho, rel.len());
    for (t, (i, o)) in rel.iter().enumerate() {
        for (l, row) in y.iter_mut().enumerate() {
            let val = &u[l][*i] * o;
            let (qt, rem) = (val.div_floor(&s.diag[l]), &val - &(&val.div_floor(&s.diag[l]) * &s.diag[l]));
            if !rem.is_zero() {
                return Err(Error::Internal("relation outside the generated lattice".into()));
            }
            row[t] = qt;
        }
    }
    let sy = smith_checked(&y, rho, rel.len(), Track::default())?;
    let image = GroupShape { free: rho - sy.rank(), torsion: sy.nontrivial() };
    Ok((image, coker))
}

/// Whether `x` lies in the subgroup generated by `columns`.
pub fn in_subgroup(group: &HomologyGroup, columns: &[Vec<Int>], x: &[Int]) -> Result<bool> {
    let s = relation_snf(group, columns)?;
    let u = s.u.as_ref().expect("tracked");
    for (i, row) in u.iter().enumerate() {
        let val = row.iter().zip(x).fold(Int::zero(), |a, (p, q)| a + p * q);
        let ok = match s.diag.get(i) {
            Some(d) => d.divides(&val),
            None => val.is_zero(),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Image and cokernel shape of `φ★` out of each bidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapProfile {
    pub source: (i64, i64),
    pub target: (i64, i64),
    pub image: GroupShape,
    pub cokernel: GroupShape,
}

pub fn map_profile(hom: &Homology, induced: &BTreeMap<(i64, i64), InducedMap>) -> Result<Vec<MapProfile>> {
    let mut out = Vec::new();
    for m in induced.values() {
        let Some(t) = hom.groups.get(&m.target) else { continue };
        if t.num_gens() == 0 {
            continue;
        }
        let cols: Vec<Vec<Int>> = (0..m.matrix.first().map_or(0, |r| r.len()))
            .map(|j| m.matrix.iter().map(|row| row[j].clone()).collect())
            .collect();
        let (image, cokernel) = subgroup_shapes(t, &cols)?;
        if image.is_zero() {
            continue;
        }
        out.push(MapProfile { source: m.source, target: m.target, image, cokernel });
    }
    Ok(out)
}

/// One `Z/n` summand and whether it lies in the image of `f★`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub h: i64,
    pub q: i64,
    pub divisor: Int,
    pub in_image: bool,
}

/// Locates torsion summands divisible by `n` and tests whether their order-`n`
/// elements lie in the image of `f★`.
pub fn torsion_witness(hom: &Homology, fstar: &BTreeMap<(i64, i64), InducedMap>, n: &Int) -> Result<Vec<WitnessEntry>> {
    let mut out = Vec::new();
    for (&(h, q), g) in &hom.groups {
        let incoming: Vec<&InducedMap> = fstar.values().filter(|m| m.target == (h, q)).collect();
        let mut cols: Vec<Vec<Int>> = Vec::new();
        for m in incoming {
            for j in 0..m.matrix.first().map_or(0, |r| r.len()) {
                cols.push(m.matrix.iter().map(|row| row[j].clone()).collect());
            }
        }
        for (i, o) in g.orders.iter().enumerate() {
            let Some(d) = o else { continue };
            if !n.divides(d) {
                continue;
            }
            let mut x = vec![Int::zero(); g.num_gens()];
            x[i] = d.div_floor(n);
            out.push(WitnessEntry { h, q, divisor: d.clone(), in_image: in_subgroup(g, &cols, &x)? });
        }
    }
    Ok(out)
}

/// `ψ★ ∘ φ★` on the source presentation of `φ★`, reduced in the target.
pub fn compose_induced(hom: &Homology, phi: &InducedMap, psi: &InducedMap) -> Dense {
    let t = &hom.groups[&psi.target];
    let inner = phi.matrix.len();
    let cols = phi.matrix.first().map_or(0, |r| r.len());
    let mut out = crate::snf::mul(&psi.matrix, &phi.matrix, inner, cols);
    for j in 0..cols {
        let mut col: Vec<Int> = out.iter().map(|r| r[j].clone()).collect();
        t.reduce(&mut col);
        for (i, x) in col.into_iter().enumerate() {
            out[i][j] = x;
        }
    }
    out
}

/// Checks `e★f★ + f★e★ = ε·id` on every homology group.
pub fn check_induced_bracket(
    hom: &Homology,
    estar: &BTreeMap<(i64, i64), InducedMap>,
    fstar: &BTreeMap<(i64, i64), InducedMap>,
    eps: &BigRational,
) -> Result<bool> {
    let eps = Int::from_rational(eps).ok_or_else(|| Error::Invalid("ε(f) must be an integer".into()))?;
    for (key, g) in &hom.groups {
        let k = g.num_gens();
        if k == 0 {
            continue;
        }
        let mut total = zeros(k, k);
        for (first, second) in [(fstar, estar), (estar, fstar)] {
            let Some(a) = first.get(key) else { continue };
            let Some(b) = second.get(&a.target) else { continue };
            if a.matrix.is_empty() || b.matrix.is_empty() {
                continue;
            }
            let c = compose_induced(hom, a, b);
            for i in 0..k {
                for j in 0..k {
                    total[i][j] += &c[i][j];
                }
            }
        }
        for (i, row) in total.iter_mut().enumerate() {
            row[i] -= &eps;
        }
        for j in 0..k {
            let mut col: Vec<Int> = total.iter().map(|r| r[j].clone()).collect();
            g.reduce(&mut col);
            if col.iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::two_term;

    #[test]
    fn two_term_cokernel() {
        for n in 2..6 {
            let cx = two_term(n);
            let h = homology_groups(&cx).unwrap();
            assert!(h.get(0, 0).unwrap().shape.is_zero());
            assert_eq!(h.get(1, 0).unwrap().shape, GroupShape { free: 0, torsion: vec![Int::from(n)] });
        }
        let h = homology_groups(&two_term(0)).unwrap();
        assert_eq!(h.total_rank(), 2);
    }

    #[test]
    fn torsion_witness_with_identity() {
        let cx = two_term(3);
        let h = homology_groups(&cx).unwrap();
        let id = ChainMap::identity(&cx);
        let ind = induced_on_homology(&cx, &id, &h).unwrap();
        let w = torsion_witness(&h, &ind, &Int::from(3)).unwrap();
        assert_eq!(w, vec![WitnessEntry { h: 1, q: 0, divisor: Int::from(3), in_image: true }]);
        let zero = ChainMap::zero(&cx, 0, 0);
        let ind0 = induced_on_homology(&cx, &zero, &h).unwrap();
        assert!(ind0.values().all(|m| m.matrix.iter().flatten().all(|x| x.is_zero())));
        let w0 = torsion_witness(&h, &ind0, &Int::from(3)).unwrap();
        assert!(!w0[0].in_image);
        assert!(torsion_witness(&homology_groups(&two_term(1)).unwrap(), &ind0, &Int::from(2)).unwrap().is_empty());
    }

    #[test]
    fn shapes_of_subgroups() {
        // Z/6 with the subgroup generated by 2: image Z/3, cokernel Z/2
        let cx = two_term(6);
        let h = homology_groups(&cx).unwrap();
        let g = h.get(1, 0).unwrap();
        let (img, cok) = subgroup_shapes(g, &[vec![Int::from(2)]]).unwrap();
        assert_eq!(img, GroupShape { free: 0, torsion: vec![Int::from(3)] });
        assert_eq!(cok, GroupShape { free: 0, torsion: vec![Int::from(2)] });
        assert!(in_subgroup(g, &[vec![Int::from(2)]], &[Int::from(4)]).unwrap());
        assert!(!in_subgroup(g, &[vec![Int::from(2)]], &[Int::from(3)]).unwrap());
    }
}
