//! Exterior algebras over circle variables, the gl(1|1) representation
//! `V^{ν;z}`, and the unsigned saddle maps between state spaces.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Maximum number of circles a state may carry.
pub const MAX_CIRCLES: usize = 64;

/// A canonical exterior word `x_{i1} ∧ … ∧ x_{ik}` with `i1 < … < ik`,
/// stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub u64);

impl Word {
    pub const EMPTY: Word = Word(0);

    pub fn from_indices(indices: &[usize]) -> Result<(i64, Word)> {
        // Any order accepted; the returned sign reorders into canonical form.
        let mut w = Word::EMPTY;
        let mut sign = 1i64;
        for &i in indices.iter().rev() {
            match w.wedge_var(i) {
                Some((s, nw)) => {
                    sign *= s;
                    w = nw;
                }
                None => return Ok((0, Word::EMPTY)),
            }
        }
        Ok((sign, w))
    }

    pub fn var(i: usize) -> Word {
        Word(1u64 << i)
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn indices(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        let mut m = self.0;
        while m != 0 {
            out.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }

    fn below(self, i: usize) -> u32 {
        (self.0 & ((1u64 << i) - 1)).count_ones()
    }

    /// `x_i ∧ self`, or `None` when `x_i` already occurs.
    pub fn wedge_var(self, i: usize) -> Option<(i64, Word)> {
        if self.contains(i) {
            return None;
        }
        let s = if self.below(i).is_multiple_of(2) { 1 } else { -1 };
        Some((s, Word(self.0 | 1u64 << i)))
    }

    /// `x_i ⌟ self`, or `None` when `x_i` does not occur.
    pub fn contract_var(self, i: usize) -> Option<(i64, Word)> {
        if !self.contains(i) {
            return None;
        }
        let s = if self.below(i).is_multiple_of(2) { 1 } else { -1 };
        Some((s, Word(self.0 & !(1u64 << i))))
    }

    /// `self ∧ other` on words.
    pub fn wedge(self, other: Word) -> Option<(i64, Word)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // Each letter of `other` moves past the letters of `self` above it.
        let mut swaps = 0u32;
        let mut m = other.0;
        while m != 0 {
            let j = m.trailing_zeros();
            swaps += (self.0 >> j).count_ones();
            m &= m - 1;
        }
        Some((if swaps.is_multiple_of(2) { 1 } else { -1 }, Word(self.0 | other.0)))
    }

    /// Substitutes `x_i ↦ x_{map[i]}` and reorders. `None` if two letters
    /// collide.
    pub fn relabel(self, map: &[u8]) -> Option<(i64, Word)> {
        let mut out = 0u64;
        let mut inversions = 0u32;
        let mut m = self.0;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            let t = map[i] as u32;
            if out >> t & 1 == 1 {
                return None;
            }
            // Letters already placed with a larger target index are passed.
            inversions += (out >> t).count_ones();
            out |= 1u64 << t;
            m &= m - 1;
        }
        Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, Word(out)))
    }

    /// Commutative substitution, as in the even theory.
    pub fn relabel_even(self, map: &[u8]) -> Option<Word> {
        let mut out = 0u64;
        let mut m = self.0;
        while m != 0 {
            let t = map[m.trailing_zeros() as usize];
            if out >> t & 1 == 1 {
                return None;
            }
            out |= 1u64 << t;
            m &= m - 1;
        }
        Some(Word(out))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices().iter().map(|i| format!("x{i}")).collect();
        write!(f, "{}", parts.join("^"))
    }
}

/// A sparse rational combination of words in an exterior algebra on `n`
/// generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtElement {
    pub n: usize,
    pub terms: BTreeMap<Word, BigRational>,
}

impl ExtElement {
    pub fn zero(n: usize) -> ExtElement {
        ExtElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> ExtElement {
        ExtElement::word(n, Word::EMPTY)
    }

    pub fn word(n: usize, w: Word) -> ExtElement {
        let mut e = ExtElement::zero(n);
        e.add_term(w, BigRational::one());
        e
    }

    pub fn var(n: usize, i: usize) -> ExtElement {
        ExtElement::word(n, Word::var(i))
    }

    /// `Σ λ_i x_i`.
    pub fn linear(coeffs: &[BigRational]) -> ExtElement {
        let mut e = ExtElement::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            e.add_term(Word::var(i), c.clone());
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &ExtElement) -> ExtElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &BigRational) -> ExtElement {
        let mut out = ExtElement::zero(self.n);
        for (w, c) in &self.terms {
            out.add_term(*w, c * s);
        }
        out
    }

    pub fn sub(&self, other: &ExtElement) -> ExtElement {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Word-degree if every term has the same degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

pub fn wedge(u: &ExtElement, v: &ExtElement) -> Result<ExtElement> {
    if u.n != v.n {
        return Err(Error::Dimension(format!("wedge of ambient {} and {}", u.n, v.n)));
    }
    let mut out = ExtElement::zero(u.n);
    for (a, ca) in &u.terms {
        for (b, cb) in &v.terms {
            if let Some((s, w)) = a.wedge(*b) {
                out.add_term(w, ca * cb * BigRational::from_integer(s.into()));
            }
        }
    }
    Ok(out)
}

pub fn contract(i: usize, v: &ExtElement) -> Result<ExtElement> {
    if i >= v.n {
        return Err(Error::Dimension(format!("contraction by x{i} in ambient {}", v.n)));
    }
    let mut out = ExtElement::zero(v.n);
    for (w, c) in &v.terms {
        if let Some((s, nw)) = w.contract_var(i) {
            out.add_term(nw, c * BigRational::from_integer(s.into()));
        }
    }
    Ok(out)
}

/// Generators of gl(1|1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    E,
    F,
    H1,
    H2,
}

impl std::str::FromStr for Gen {
    type Err = Error;
    fn from_str(s: &str) -> Result<Gen> {
        match s {
            "e" => Ok(Gen::E),
            "f" => Ok(Gen::F),
            "h1" => Ok(Gen::H1),
            "h2" => Ok(Gen::H2),
            other => Err(Error::Invalid(format!("unknown generator {other:?}"))),
        }
    }
}

/// Data of `V^{ν;z}`: the weight shift `ν` and `z = Σ λ_j x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepData {
    pub nu: BigRational,
    pub z: Vec<BigRational>,
}

impl RepData {
    pub fn epsilon(&self) -> BigRational {
        self.z.iter().fold(BigRational::zero(), |a, b| a + b)
    }

    /// `(h1, h2)` eigenvalues on words of the given degree.
    pub fn weight(&self, degree: usize) -> (BigRational, BigRational) {
        let d = BigRational::from_integer((degree as i64).into());
        let h2 = &d + &self.nu;
        (self.epsilon() - &h2, h2)
    }
}

pub fn act(g: Gen, rep: &RepData, v: &ExtElement) -> Result<ExtElement> {
    let n = rep.z.len();
    if v.n != n {
        return Err(Error::Dimension(format!("element of ambient {} acted on by rep of {}", v.n, n)));
    }
    match g {
        Gen::F => wedge(&ExtElement::linear(&rep.z), v),
        Gen::E => {
            let mut out = ExtElement::zero(n);
            for i in 0..n {
                out = out.add(&contract(i, v)?);
            }
            Ok(out)
        }
        Gen::H1 | Gen::H2 => {
            if v.is_zero() {
                return Ok(v.clone());
            }
            let deg = v
                .homogeneous_degree()
                .ok_or_else(|| Error::Invalid("h-action on an inhomogeneous element".into()))?;
            let (h1, h2) = rep.weight(deg);
            Ok(v.scale(if g == Gen::H1 { &h1 } else { &h2 }))
        }
    }
}

/// Shape of an unsigned cube-edge map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Source circles `a ≠ b` fuse.
    Merge { a: u8, b: u8 },
    /// The source circle relabelled to `y1` splits off `y2`.
    Split { y1: u8, y2: u8 },
    /// `(x_a − x_b) ∧ ·` inside one state; the zero map when `a == b`.
    Dot { a: u8, b: u8 },
}

/// An unsigned edge map between two state spaces, together with the circle
/// correspondence `relabel[source] = target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeMap {
    pub kind: EdgeKind,
    pub relabel: Vec<u8>,
    pub target_circles: usize,
}

impl EdgeMap {
    /// Merge of `y1, y2` into `y` on `n` circles; the other circles keep their
    /// relative order in the remaining target slots.
    pub fn merge(n: usize, y1: usize, y2: usize, y: usize) -> EdgeMap {
        assert!(y1 != y2 && y1 < n && y2 < n && y < n - 1);
        let mut relabel = vec![0u8; n];
        let mut slot = (0..n - 1).filter(|&t| t != y);
        for (i, r) in relabel.iter_mut().enumerate() {
            *r = if i == y1 || i == y2 { y as u8 } else { slot.next().unwrap() as u8 };
        }
        EdgeMap { kind: EdgeKind::Merge { a: y1 as u8, b: y2 as u8 }, relabel, target_circles: n - 1 }
    }

    /// Split of `y` into `y1, y2` on `n` circles.
    pub fn split(n: usize, y: usize, y1: usize, y2: usize) -> EdgeMap {
        assert!(y < n && y1 != y2 && y1 <= n && y2 <= n);
        let mut relabel = vec![0u8; n];
        let mut slot = (0..=n).filter(|&t| t != y1 && t != y2);
        for (i, r) in relabel.iter_mut().enumerate() {
            *r = if i == y { y1 as u8 } else { slot.next().unwrap() as u8 };
        }
        EdgeMap { kind: EdgeKind::Split { y1: y1 as u8, y2: y2 as u8 }, relabel, target_circles: n + 1 }
    }

    pub fn dot(n: usize, a: usize, b: usize) -> EdgeMap {
        EdgeMap {
            kind: EdgeKind::Dot { a: a as u8, b: b as u8 },
            relabel: (0..n as u8).collect(),
            target_circles: n,
        }
    }

    /// Odd maps anticommute with `e` and `f`.
    pub fn is_odd(&self) -> bool {
        !matches!(self.kind, EdgeKind::Merge { .. })
    }

    pub fn is_zero_map(&self) -> bool {
        matches!(self.kind, EdgeKind::Dot { a, b } if a == b)
    }

    /// Image of a basis word, as at most two signed words.
    pub fn apply(&self, w: Word) -> Terms {
        let mut out = Terms::new();
        match self.kind {
            EdgeKind::Merge { .. } => {
                if let Some((s, nw)) = w.relabel(&self.relabel) {
                    out.push(s, nw);
                }
            }
            EdgeKind::Split { y1, y2 } => {
                if let Some((s, nw)) = w.relabel(&self.relabel) {
                    if let Some((t, a)) = nw.wedge_var(y1 as usize) {
                        out.push(s * t, a);
                    }
                    if let Some((t, b)) = nw.wedge_var(y2 as usize) {
                        out.push(-s * t, b);
                    }
                }
            }
            EdgeKind::Dot { a, b } => {
                if a != b {
                    if let Some((t, x)) = w.wedge_var(a as usize) {
                        out.push(t, x);
                    }
                    if let Some((t, y)) = w.wedge_var(b as usize) {
                        out.push(-t, y);
                    }
                }
            }
        }
        out
    }

    /// The even-theory counterpart: `m` on merges, `Δ(v) = (x_{y1}+x_{y2})·v`
    /// on splits, all coefficients non-negative.
    pub fn apply_even(&self, w: Word) -> Terms {
        let mut out = Terms::new();
        match self.kind {
            EdgeKind::Merge { .. } => {
                if let Some(nw) = w.relabel_even(&self.relabel) {
                    out.push(1, nw);
                }
            }
            EdgeKind::Split { y1, y2 } => {
                if let Some(nw) = w.relabel_even(&self.relabel) {
                    for y in [y1, y2] {
                        if !nw.contains(y as usize) {
                            out.push(1, Word(nw.0 | 1u64 << y));
                        }
                    }
                }
            }
            EdgeKind::Dot { a, b } => {
                if a != b {
                    for (c, y) in [(1, a), (-1, b)] {
                        if !w.contains(y as usize) {
                            out.push(c, Word(w.0 | 1u64 << y));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn apply_element(&self, v: &ExtElement) -> ExtElement {
        let mut out = ExtElement::zero(self.target_circles);
        for (w, c) in &v.terms {
            for (s, nw) in self.apply(*w).iter() {
                out.add_term(nw, c * BigRational::from_integer(s.into()));
            }
        }
        out
    }
}

/// `x̄ ↦ x̄|_{y1,y2 ↦ y}` on an element of the `n`-circle algebra.
pub fn merge_map(y1: usize, y2: usize, y: usize, v: &ExtElement) -> ExtElement {
    EdgeMap::merge(v.n, y1, y2, y).apply_element(v)
}

/// `x̄ ↦ (x_{y1} − x_{y2}) ∧ x̄|_{y ↦ y1}` on an element of the `n`-circle
/// algebra.
pub fn split_map(y: usize, y1: usize, y2: usize, v: &ExtElement) -> ExtElement {
    EdgeMap::split(v.n, y, y1, y2).apply_element(v)
}

/// Up to two signed words: the image of a basis word under an edge map.
#[derive(Clone, Copy, Debug, Default)]
pub struct Terms {
    len: u8,
    items: [(i64, Word); 2],
}

impl Terms {
    pub fn new() -> Terms {
        Terms::default()
    }

    pub fn push(&mut self, c: i64, w: Word) {
        if self.len > 0 && self.items[0].1 == w {
            self.items[0].0 += c;
            if self.items[0].0 == 0 {
                self.items[0] = self.items[1];
                self.len -= 1;
            }
            return;
        }
        self.items[self.len as usize] = (c, w);
        self.len += 1;
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Word)> + '_ {
        self.items[..self.len as usize].iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// First failing contraction identity on `Λ(x_0..x_{n-1})`, checked on all
/// words (and all pairs of words for the Leibniz rule).
pub fn check_inner_product(n: usize) -> Result<Option<String>> {
    let sign = |k: usize| BigRational::from_integer(if k.is_multiple_of(2) { 1.into() } else { (-1).into() });
    for v in basis(n) {
        let ve = ExtElement::word(n, v);
        for i in 0..n {
            let xi = ExtElement::var(n, i);
            if !contract(i, &contract(i, &ve)?)?.is_zero() {
                return Ok(Some(format!("x{i}⌟(x{i}⌟{v:?}) = 0")));
            }
            if contract(i, &wedge(&xi, &ve)?)?.add(&wedge(&xi, &contract(i, &ve)?)?) != ve {
                return Ok(Some(format!("x{i}⌟(x{i}∧{v:?}) + x{i}∧(x{i}⌟{v:?}) = {v:?}")));
            }
            for j in (0..n).filter(|&j| j != i) {
                let xj = ExtElement::var(n, j);
                let lhs = contract(i, &contract(j, &ve)?)?;
                let rhs = contract(j, &contract(i, &ve)?)?;
                if !lhs.add(&rhs).is_zero() {
                    return Ok(Some(format!("x{i}⌟(x{j}⌟{v:?}) = −x{j}⌟(x{i}⌟{v:?})")));
                }
                if !contract(i, &wedge(&xj, &ve)?)?.add(&wedge(&xj, &contract(i, &ve)?)?).is_zero() {
                    return Ok(Some(format!("x{i}⌟(x{j}∧{v:?}) + x{j}∧(x{i}⌟{v:?}) = 0")));
                }
            }
            for w in basis(n) {
                let we = ExtElement::word(n, w);
                let lhs = contract(i, &wedge(&ve, &we)?)?;
                let rhs = wedge(&contract(i, &ve)?, &we)?.add(&wedge(&ve, &contract(i, &we)?)?.scale(&sign(v.degree())));
                if lhs != rhs {
                    return Ok(Some(format!("x{i}⌟({v:?}∧{w:?}) Leibniz rule")));
                }
            }
        }
    }
    Ok(None)
}

/// First failing gl(1|1) relation on `V^{ν;z}`, checked on every word.
/// Images of words are homogeneous, so the h-actions apply directly.
pub fn check_gl11(rep: &RepData) -> Result<Option<String>> {
    let n = rep.z.len();
    for v in basis(n) {
        let ve = ExtElement::word(n, v);
        let a = |g: Gen, x: &ExtElement| act(g, rep, x);
        let (e, f) = (a(Gen::E, &ve)?, a(Gen::F, &ve)?);
        let (h1, h2) = (a(Gen::H1, &ve)?, a(Gen::H2, &ve)?);
        let bracket = |x: Gen, y: Gen, xv: &ExtElement, yv: &ExtElement, odd: bool| -> Result<ExtElement> {
            let (xy, yx) = (a(y, xv)?, a(x, yv)?);
            Ok(if odd { yx.add(&xy) } else { yx.sub(&xy) })
        };
        let checks: [(&str, ExtElement, ExtElement); 8] = [
            ("[e,f] = h1 + h2", bracket(Gen::E, Gen::F, &e, &f, true)?, h1.add(&h2)),
            ("[e,e] = 0", a(Gen::E, &e)?.scale(&BigRational::from_integer(2.into())), ExtElement::zero(n)),
            ("[f,f] = 0", a(Gen::F, &f)?.scale(&BigRational::from_integer(2.into())), ExtElement::zero(n)),
            ("[h1,h2] = 0", bracket(Gen::H1, Gen::H2, &h1, &h2, false)?, ExtElement::zero(n)),
            ("[h1,e] = e", bracket(Gen::H1, Gen::E, &h1, &e, false)?, e.clone()),
            ("[h1,f] = -f", bracket(Gen::H1, Gen::F, &h1, &f, false)?, f.scale(&-BigRational::one())),
            ("[h2,e] = -e", bracket(Gen::H2, Gen::E, &h2, &e, false)?, e.scale(&-BigRational::one())),
            ("[h2,f] = f", bracket(Gen::H2, Gen::F, &h2, &f, false)?, f.clone()),
        ];
        for (name, lhs, rhs) in checks {
            if lhs != rhs {
                return Ok(Some(format!("{name} on {v:?}")));
            }
        }
    }
    Ok(None)
}

/// All words on `n` letters, ordered by bitmask.
pub fn basis(n: usize) -> impl Iterator<Item = Word> {
    (0..1u64 << n).map(Word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::rat;

    fn x(n: usize, i: usize) -> ExtElement {
        ExtElement::var(n, i)
    }

    #[test]
    fn wedge_examples() {
        let n = 3;
        let w = wedge(&x(n, 2), &x(n, 1)).unwrap();
        let expected = ExtElement::word(n, Word(0b110)).scale(&rat(-1, 1));
        assert_eq!(w, expected);
        assert!(wedge(&x(n, 1), &x(n, 1)).unwrap().is_zero());
        let a = x(n, 1).add(&x(n, 2));
        let b = x(n, 1).sub(&x(n, 2));
        assert_eq!(wedge(&a, &b).unwrap(), ExtElement::word(n, Word(0b110)).scale(&rat(-2, 1)));
        assert!(wedge(&x(2, 0), &x(3, 0)).is_err());
    }

    #[test]
    fn contract_examples() {
        let n = 3;
        let x12 = ExtElement::word(n, Word(0b011));
        assert_eq!(contract(0, &x12).unwrap(), x(n, 1));
        assert_eq!(contract(1, &x12).unwrap(), x(n, 0).scale(&rat(-1, 1)));
        assert!(contract(2, &x12).unwrap().is_zero());
        assert!(contract(3, &x12).is_err());
    }

    #[test]
    fn action_examples() {
        let rep = RepData { nu: rat(0, 1), z: vec![rat(1, 1)] };
        assert_eq!(act(Gen::F, &rep, &ExtElement::one(1)).unwrap(), x(1, 0));
        let rep2 = RepData { nu: rat(0, 1), z: vec![rat(0, 1); 2] };
        let v = ExtElement::word(2, Word(0b11));
        assert_eq!(act(Gen::E, &rep2, &v).unwrap(), x(2, 1).sub(&x(2, 0)));
        let rep3 = RepData { nu: rat(1, 2), z: vec![rat(0, 1); 2] };
        assert_eq!(act(Gen::H2, &rep3, &x(2, 0)).unwrap(), x(2, 0).scale(&rat(3, 2)));
        let mixed = ExtElement::one(2).add(&x(2, 0));
        assert!(act(Gen::H1, &rep3, &mixed).is_err());
    }

    #[test]
    fn merge_examples() {
        // Circles 0 and 1 fuse into circle 0 of a two-circle target.
        assert_eq!(merge_map(0, 1, 0, &x(3, 0)), x(2, 0));
        assert!(merge_map(0, 1, 0, &ExtElement::word(3, Word(0b011))).is_zero());
        assert_eq!(merge_map(0, 1, 0, &ExtElement::one(3)), ExtElement::one(2));
        // The bystander circle 2 becomes circle 1.
        assert_eq!(merge_map(0, 1, 0, &x(3, 2)), x(2, 1));
    }

    #[test]
    fn split_examples() {
        let s = split_map(0, 0, 1, &ExtElement::one(1));
        assert_eq!(s, x(2, 0).sub(&x(2, 1)));
        // (x1 - x2) ^ x1 = -x2 ^ x1 = x1 ^ x2
        let s = split_map(0, 0, 1, &x(1, 0));
        assert_eq!(s, ExtElement::word(2, Word(0b11)));
        let direct = wedge(&x(2, 0).sub(&x(2, 1)), &x(2, 0)).unwrap();
        assert_eq!(s, direct);
    }

    #[test]
    fn split_is_independent_of_substitution_side() {
        for n in 1..5 {
            for y in 0..n {
                let m = EdgeMap::split(n, y, 0, n);
                let mut other = m.clone();
                other.relabel[y] = n as u8;
                let diff = ExtElement::var(n + 1, 0).sub(&ExtElement::var(n + 1, n));
                for w in basis(n) {
                    let v = ExtElement::word(n, w);
                    let a = m.apply_element(&v);
                    let sub = |map: &EdgeMap| {
                        let mut e = ExtElement::zero(n + 1);
                        if let Some((s, nw)) = w.relabel(&map.relabel) {
                            e.add_term(nw, BigRational::from_integer(s.into()));
                        }
                        e
                    };
                    assert_eq!(a, wedge(&diff, &sub(&m)).unwrap());
                    assert_eq!(a, wedge(&diff, &sub(&other)).unwrap());
                }
            }
        }
    }

    #[test]
    fn relabel_sign_matches_wedge_product() {
        let map = [2u8, 0, 1];
        for w in basis(3) {
            let letters: Vec<usize> = w.indices().iter().map(|&i| map[i] as usize).collect();
            let (s, nw) = Word::from_indices(&letters).unwrap();
            assert_eq!(w.relabel(&map), Some((s, nw)));
        }
    }
}
