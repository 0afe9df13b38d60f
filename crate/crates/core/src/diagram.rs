//! Marked oriented link diagrams in PD notation, their resolutions, and the
//! circle bookkeeping of each hypercube vertex.
//!
//! Conventions. A crossing `X[a,b,c,d]` lists its four arcs counter-clockwise
//! starting at the incoming under-strand, so the under-strand runs `a → c`.
//! The crossing is positive when the over-strand runs `d → b`. The
//! 0-smoothing joins `(a,b)` and `(c,d)`, the 1-smoothing joins `(a,d)` and
//! `(b,c)`; for a positive crossing the 0-smoothing is the oriented one.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::int::{parse_rational, rat_to_string};
use crate::statespace::{EdgeMap, MAX_CIRCLES};

/// Corner pairs joined by the 0- and 1-smoothing.
const SMOOTHING: [[(usize, usize); 2]; 2] = [[(0, 1), (2, 3)], [(0, 3), (1, 2)]];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub id: usize,
    /// Arc indices in PD order.
    pub arcs: [usize; 4],
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marking {
    pub arc: usize,
    pub position: usize,
    pub alpha: BigRational,
    pub beta1: BigRational,
    pub beta2: BigRational,
}

#[derive(Clone, Debug)]
pub struct MarkedDiagram {
    /// Arc labels in canonical order; arc `i` is `arc_labels[i]`.
    pub arc_labels: Vec<String>,
    pub crossings: Vec<Crossing>,
    pub markings: Vec<Marking>,
    pub n_plus: usize,
    pub n_minus: usize,
    /// Crossing corners `(crossing, position)` where each arc ends.
    occurrences: Vec<Vec<(usize, usize)>>,
}

/// A vertex of the resolution cube, bit `k` for crossing `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Resolution(pub u64);

impl Resolution {
    pub fn bit(self, k: usize) -> u8 {
        (self.0 >> k & 1) as u8
    }

    pub fn weight(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn flip(self, k: usize) -> Resolution {
        Resolution(self.0 ^ 1u64 << k)
    }

    pub fn from_bits(bits: &[u8]) -> Resolution {
        Resolution(bits.iter().enumerate().fold(0, |m, (k, &b)| m | (b as u64 & 1) << k))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateCircles {
    pub circle_of_arc: Vec<usize>,
    pub c: usize,
    pub eps_f: Vec<BigRational>,
    pub eps_h1: Vec<BigRational>,
    pub eps_h2: Vec<BigRational>,
}

impl StateCircles {
    /// Smallest arc on each circle.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.c];
        for (arc, &circ) in self.circle_of_arc.iter().enumerate() {
            if reps[circ] == usize::MAX {
                reps[circ] = arc;
            }
        }
        reps
    }
}

/// Ordering on arc labels: numeric labels first by value, then the rest
/// lexicographically.
fn label_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<i128>(), b.parse::<i128>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        _ => a.cmp(b),
    }
}

fn is_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

struct RawCrossing {
    labels: [String; 4],
    sign: Option<i8>,
    line: usize,
}

struct RawMark {
    label: String,
    values: [BigRational; 3],
    position: Option<usize>,
    line: usize,
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Parses the line-oriented PD format.
///
/// ```text
/// # right-handed trefoil
/// X[1,5,2,4] sign=+
/// X[3,1,4,6]
/// X[5,3,6,2]
/// mark 1 1 1/2 1/2
/// unknots 0
/// ```
pub fn parse_pd(text: &str) -> Result<MarkedDiagram> {
    let mut crossings = Vec::new();
    let mut marks = Vec::new();
    let mut unknots = 0usize;
    for (ln, raw_line) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        let indent = content.len() - content.trim_start().len();
        let body = content.trim();
        if body.is_empty() {
            continue;
        }
        let col0 = indent + 1;
        if let Some(rest) = body.strip_prefix("X[") {
            let close = rest.find(']').ok_or_else(|| perr(line, col0, "missing ']'"))?;
            let inner = &rest[..close];
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if parts.len() != 4 {
                return Err(perr(line, col0 + 2, format!("expected 4 arc labels, found {}", parts.len())));
            }
            let mut labels: [String; 4] = Default::default();
            let mut offset = col0 + 2;
            for (i, p) in parts.iter().enumerate() {
                if !is_label(p) {
                    return Err(perr(line, offset, format!("bad arc label {p:?}")));
                }
                labels[i] = p.to_string();
                offset += inner.split(',').nth(i).map_or(0, |s| s.len()) + 1;
            }
            let tail = &rest[close + 1..];
            let mut sign = None;
            let mut col = col0 + 2 + close + 1;
            for tok in tail.split_whitespace() {
                col = col0 + 2 + close + 1 + tail.find(tok).unwrap_or(0);
                sign = Some(match tok {
                    "sign=+" | "sign=+1" => 1,
                    "sign=-" | "sign=-1" => -1,
                    _ => return Err(perr(line, col, format!("unexpected token {tok:?}"))),
                });
            }
            let _ = col;
            crossings.push(RawCrossing { labels, sign, line });
            continue;
        }
        let toks: Vec<(usize, &str)> = body
            .split_whitespace()
            .map(|t| (col0 + body.find(t).unwrap_or(0), t))
            .collect();
        match toks[0].1 {
            "mark" => {
                if toks.len() != 5 && toks.len() != 6 {
                    return Err(perr(line, toks[0].0, "mark expects: mark <arc> <alpha> <beta1> <beta2> [at=<k>]"));
                }
                if !is_label(toks[1].1) {
                    return Err(perr(line, toks[1].0, format!("bad arc label {:?}", toks[1].1)));
                }
                let mut values: [BigRational; 3] = Default::default();
                for i in 0..3 {
                    let (c, t) = toks[2 + i];
                    values[i] = parse_rational(t).ok_or_else(|| perr(line, c, format!("bad rational {t:?}")))?;
                }
                let position = match toks.get(5) {
                    Some(&(c, t)) => Some(
                        t.strip_prefix("at=")
                            .and_then(|v| v.parse().ok())
                            .ok_or_else(|| perr(line, c, format!("bad position {t:?}")))?,
                    ),
                    None => None,
                };
                marks.push(RawMark { label: toks[1].1.to_string(), values, position, line });
            }
            "unknots" => {
                if toks.len() != 2 {
                    return Err(perr(line, toks[0].0, "unknots expects one count"));
                }
                unknots += toks[1]
                    .1
                    .parse::<usize>()
                    .map_err(|_| perr(line, toks[1].0, format!("bad count {:?}", toks[1].1)))?;
            }
            other => return Err(perr(line, toks[0].0, format!("unknown directive {other:?}"))),
        }
    }
    build(crossings, marks, unknots)
}

fn build(raw: Vec<RawCrossing>, marks: Vec<RawMark>, unknots: usize) -> Result<MarkedDiagram> {
    let mut labels: Vec<String> = raw.iter().flat_map(|c| c.labels.iter().cloned()).collect();
    for i in 1..=unknots {
        let l = format!("U{i}");
        if labels.contains(&l) {
            return Err(Error::Validation(format!("label {l} is reserved for crossingless components")));
        }
        labels.push(l.clone());
        labels.push(l);
    }
    labels.sort_by(|a, b| label_cmp(a, b));
    labels.dedup();
    let index: HashMap<String, usize> = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
    let mut occurrences = vec![Vec::new(); labels.len()];
    let mut crossings = Vec::with_capacity(raw.len());
    for (k, rc) in raw.iter().enumerate() {
        let mut arcs = [0usize; 4];
        for p in 0..4 {
            arcs[p] = index[rc.labels[p].as_str()];
            occurrences[arcs[p]].push((k, p));
        }
        crossings.push(Crossing { id: k, arcs, sign: 0 });
    }
    for (a, occ) in occurrences.iter().enumerate() {
        let crossingless = labels[a].starts_with('U') && labels[a][1..].parse::<usize>().is_ok_and(|i| i >= 1 && i <= unknots);
        if crossingless {
            continue;
        }
        if occ.len() != 2 {
            return Err(Error::Validation(format!("arc {} is used {} times, expected 2", labels[a], occ.len())));
        }
    }
    if crossings.len() > 63 {
        return Err(Error::Validation("at most 63 crossings are supported".into()));
    }
    let mut d = MarkedDiagram { arc_labels: labels, crossings, markings: Vec::new(), n_plus: 0, n_minus: 0, occurrences };
    let declared: Vec<Option<i8>> = raw.iter().map(|c| c.sign).collect();
    d.orient(&declared)?;
    let mut per_arc = vec![0usize; d.arc_labels.len()];
    for m in marks {
        let arc = *index
            .get(m.label.as_str())
            .ok_or_else(|| Error::Validation(format!("line {}: marking on unknown arc {}", m.line, m.label)))?;
        let [alpha, beta1, beta2] = m.values;
        if alpha != &beta1 + &beta2 {
            return Err(Error::Validation(format!(
                "line {}: marking requires alpha = beta1 + beta2, got {} vs {} + {}",
                m.line,
                rat_to_string(&alpha),
                rat_to_string(&beta1),
                rat_to_string(&beta2)
            )));
        }
        let position = m.position.unwrap_or(per_arc[arc]);
        per_arc[arc] = per_arc[arc].max(position + 1);
        d.markings.push(Marking { arc, position, alpha, beta1, beta2 });
    }
    let _ = raw.iter().map(|c| c.line);
    Ok(d)
}

impl MarkedDiagram {
    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.arc_labels.len()
    }

    pub fn arc_index(&self, label: &str) -> Option<usize> {
        self.arc_labels.iter().position(|l| l == label)
    }

    /// Other end of the arc leaving corner `(k, p)`.
    fn across_arc(&self, k: usize, p: usize) -> (usize, usize) {
        let arc = self.crossings[k].arcs[p];
        let occ = &self.occurrences[arc];
        if occ[0] == (k, p) {
            occ[1]
        } else {
            occ[0]
        }
    }

    /// Assigns orientations from the under-strands and computes crossing
    /// signs, consulting the declared signs only for components that never
    /// pass under.
    fn orient(&mut self, declared: &[Option<i8>]) -> Result<()> {
        let n = self.crossings.len();
        // head[k][p]: whether the arc at corner (k,p) flows into crossing k.
        let mut head: Vec<[Option<bool>; 4]> = vec![[None; 4]; n];
        let mut component_of = vec![[usize::MAX; 4]; n];
        let mut components: Vec<Vec<(usize, usize)>> = Vec::new();
        for k in 0..n {
            for p in 0..4 {
                if component_of[k][p] != usize::MAX {
                    continue;
                }
                // Walk the strand: along an arc, then straight through.
                let id = components.len();
                let mut corners = Vec::new();
                let (mut ck, mut cp) = (k, p);
                loop {
                    component_of[ck][cp] = id;
                    corners.push((ck, cp));
                    let (nk, np) = self.across_arc(ck, cp);
                    component_of[nk][np] = id;
                    corners.push((nk, np));
                    ck = nk;
                    cp = (np + 2) % 4;
                    if (ck, cp) == (k, p) {
                        break;
                    }
                }
                components.push(corners);
            }
        }
        // corners alternate: leaving-crossing corner, then arriving corner.
        let set_dir = |head: &mut Vec<[Option<bool>; 4]>, corners: &[(usize, usize)], forward: bool| {
            for (i, &(k, p)) in corners.iter().enumerate() {
                head[k][p] = Some((i % 2 == 1) == forward);
            }
        };
        for corners in &components {
            let mut dir = None;
            for (i, &(k, p)) in corners.iter().enumerate() {
                if p == 0 || p == 2 {
                    let arriving = i % 2 == 1;
                    let forward = arriving == (p == 0);
                    match dir {
                        None => dir = Some(forward),
                        Some(f) if f != forward => {
                            return Err(Error::Validation(format!(
                                "inconsistent orientation at crossing {k}: under-strand direction conflicts"
                            )))
                        }
                        _ => {}
                    }
                }
            }
            if dir.is_none() {
                for (i, &(k, p)) in corners.iter().enumerate() {
                    if let Some(s) = declared[k] {
                        // positive: over-strand enters at d (position 3)
                        let arriving = i % 2 == 1;
                        let enters = (p == 3) == (s > 0);
                        dir = Some(arriving == enters);
                        break;
                    }
                }
            }
            let forward = dir.ok_or_else(|| {
                let (k, _) = corners[0];
                Error::Validation(format!(
                    "orientation of the component through crossing {k} is undetermined; declare sign=+ or sign=-"
                ))
            })?;
            set_dir(&mut head, corners, forward);
        }
        self.n_plus = 0;
        self.n_minus = 0;
        for k in 0..n {
            let sign = if head[k][3] == Some(true) { 1 } else { -1 };
            if let Some(s) = declared[k] {
                if s != sign {
                    return Err(Error::Validation(format!(
                        "crossing {k} declared sign {s:+} but orientation gives {sign:+}"
                    )));
                }
            }
            self.crossings[k].sign = sign;
            if sign > 0 {
                self.n_plus += 1;
            } else {
                self.n_minus += 1;
            }
        }
        Ok(())
    }

    pub fn total_alpha(&self) -> BigRational {
        self.markings.iter().fold(BigRational::zero(), |a, m| a + &m.alpha)
    }

    /// Cube vertices where crossing `k` carries the oriented smoothing.
    pub fn oriented_resolution(&self) -> Resolution {
        Resolution(
            self.crossings
                .iter()
                .enumerate()
                .filter(|(_, c)| c.sign < 0)
                .fold(0, |m, (k, _)| m | 1u64 << k),
        )
    }

    pub fn to_pd_string(&self) -> String {
        let mut out = String::new();
        for c in &self.crossings {
            let l: Vec<&str> = c.arcs.iter().map(|&a| self.arc_labels[a].as_str()).collect();
            let _ = writeln!(out, "X[{},{},{},{}] sign={}", l[0], l[1], l[2], l[3], if c.sign > 0 { '+' } else { '-' });
        }
        let unknots = self.occurrences.iter().filter(|o| o.is_empty()).count();
        if unknots > 0 {
            let _ = writeln!(out, "unknots {unknots}");
        }
        for m in &self.markings {
            let _ = writeln!(
                out,
                "mark {} {} {} {} at={}",
                self.arc_labels[m.arc],
                rat_to_string(&m.alpha),
                rat_to_string(&m.beta1),
                rat_to_string(&m.beta2),
                m.position
            );
        }
        out
    }

    /// Mirror image: every crossing changes from over to under.
    pub fn mirror(&self) -> Result<MarkedDiagram> {
        let mut text = String::new();
        for c in &self.crossings {
            let l: Vec<&str> = c.arcs.iter().map(|&a| self.arc_labels[a].as_str()).collect();
            // The old over-strand becomes the under-strand; its incoming end
            // is d for positive crossings and b for negative ones.
            let rot = if c.sign > 0 { [3, 0, 1, 2] } else { [1, 2, 3, 0] };
            let _ = writeln!(text, "X[{},{},{},{}] sign={}", l[rot[0]], l[rot[1]], l[rot[2]], l[rot[3]], if c.sign > 0 { '-' } else { '+' });
        }
        self.rebuild_with(text)
    }

    /// Reverses the orientation of the component containing `arc`.
    pub fn reverse_component(&self, arc: usize) -> Result<MarkedDiagram> {
        let target = self.component_arcs(arc);
        let mut text = String::new();
        for c in &self.crossings {
            let l: Vec<&str> = c.arcs.iter().map(|&a| self.arc_labels[a].as_str()).collect();
            let under_rev = target.contains(&c.arcs[0]);
            let over_rev = target.contains(&c.arcs[1]);
            let new = if under_rev { [l[2], l[3], l[0], l[1]] } else { [l[0], l[1], l[2], l[3]] };
            let sign = if under_rev != over_rev { -c.sign } else { c.sign };
            let _ = writeln!(text, "X[{},{},{},{}] sign={}", new[0], new[1], new[2], new[3], if sign > 0 { '+' } else { '-' });
        }
        self.rebuild_with(text)
    }

    fn rebuild_with(&self, crossings_text: String) -> Result<MarkedDiagram> {
        let mut text = crossings_text;
        let unknots = self.occurrences.iter().filter(|o| o.is_empty()).count();
        if unknots > 0 {
            let _ = writeln!(text, "unknots {unknots}");
        }
        for m in &self.markings {
            let _ = writeln!(
                text,
                "mark {} {} {} {} at={}",
                self.arc_labels[m.arc],
                rat_to_string(&m.alpha),
                rat_to_string(&m.beta1),
                rat_to_string(&m.beta2),
                m.position
            );
        }
        parse_pd(&text)
    }

    /// Arcs on the same link component as `arc`.
    pub fn component_arcs(&self, arc: usize) -> Vec<usize> {
        if self.occurrences[arc].is_empty() {
            return vec![arc];
        }
        let (k0, p0) = self.occurrences[arc][0];
        let mut arcs = Vec::new();
        let (mut k, mut p) = (k0, p0);
        loop {
            arcs.push(self.crossings[k].arcs[p]);
            let (nk, np) = self.across_arc(k, p);
            k = nk;
            p = (np + 2) % 4;
            if (k, p) == (k0, p0) {
                break;
            }
        }
        arcs.sort_unstable();
        arcs.dedup();
        arcs
    }

    /// Number of link components.
    pub fn num_components(&self) -> usize {
        let mut seen = vec![false; self.num_arcs()];
        let mut count = 0;
        for a in 0..self.num_arcs() {
            if !seen[a] {
                count += 1;
                for b in self.component_arcs(a) {
                    seen[b] = true;
                }
            }
        }
        count
    }

    /// Returns a copy with the markings replaced.
    pub fn with_markings(&self, markings: Vec<Marking>) -> MarkedDiagram {
        let mut d = self.clone();
        d.markings = markings;
        d
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root so roots are minimal arcs
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

pub fn resolve_state(d: &MarkedDiagram, r: Resolution) -> StateCircles {
    let mut uf = UnionFind::new(d.num_arcs());
    for (k, c) in d.crossings.iter().enumerate() {
        for &(p, q) in &SMOOTHING[r.bit(k) as usize] {
            uf.union(c.arcs[p], c.arcs[q]);
        }
    }
    // Roots are minimal arcs, so numbering roots in arc order is canonical.
    let mut circle_of_root = vec![usize::MAX; d.num_arcs()];
    let mut circle_of_arc = vec![0; d.num_arcs()];
    let mut c = 0;
    for (a, slot) in circle_of_arc.iter_mut().enumerate() {
        let root = uf.find(a);
        if circle_of_root[root] == usize::MAX {
            circle_of_root[root] = c;
            c += 1;
        }
        *slot = circle_of_root[root];
    }
    assert!(c <= MAX_CIRCLES, "too many circles in one state");
    let mut eps_f = vec![BigRational::zero(); c];
    let mut eps_h1 = vec![BigRational::zero(); c];
    let mut eps_h2 = vec![BigRational::zero(); c];
    for m in &d.markings {
        let i = circle_of_arc[m.arc];
        eps_f[i] += &m.alpha;
        eps_h1[i] += &m.beta1;
        eps_h2[i] += &m.beta2;
    }
    StateCircles { circle_of_arc, c, eps_f, eps_h1, eps_h2 }
}

/// The unsigned saddle map for the edge `r → r + e_k`, with the circle
/// correspondence between canonical labelings.
///
/// Splits are oriented by the crossing: `y1` is the target circle through
/// corner `a`, `y2` the one through corner `b`. For merges `a` is the source
/// circle through corner `a`.
pub fn saddle_info(d: &MarkedDiagram, r: Resolution, k: usize) -> Result<EdgeMap> {
    if k >= d.num_crossings() {
        return Err(Error::Invalid(format!("crossing {k} out of range")));
    }
    if r.bit(k) != 0 {
        return Err(Error::Invalid(format!("crossing {k} is already 1-smoothed")));
    }
    let src = resolve_state(d, r);
    let dst = resolve_state(d, r.flip(k));
    Ok(saddle_between(d, k, &src, &dst))
}

pub(crate) fn saddle_between(d: &MarkedDiagram, k: usize, src: &StateCircles, dst: &StateCircles) -> EdgeMap {
    let arcs = d.crossings[k].arcs;
    let reps = src.representatives();
    let mut relabel: Vec<u8> = reps.iter().map(|&a| dst.circle_of_arc[a] as u8).collect();
    let (sa, sc) = (src.circle_of_arc[arcs[0]], src.circle_of_arc[arcs[2]]);
    let kind = if sa != sc {
        crate::statespace::EdgeKind::Merge { a: sa as u8, b: sc as u8 }
    } else {
        let y1 = dst.circle_of_arc[arcs[0]];
        let y2 = dst.circle_of_arc[arcs[1]];
        relabel[sa] = y1 as u8;
        crate::statespace::EdgeKind::Split { y1: y1 as u8, y2: y2 as u8 }
    };
    EdgeMap { kind, relabel, target_circles: dst.c }
}

pub fn nu_of_state(d: &MarkedDiagram, r: Resolution) -> BigRational {
    let c = resolve_state(d, r).c as i64;
    nu_value(d.num_crossings(), r.weight(), c as usize)
}

pub fn nu_value(n: usize, weight: usize, c: usize) -> BigRational {
    BigRational::new((n as i64 - weight as i64 - c as i64).into(), 2.into())
}

/// For a face at `r` spanned by crossings `j, k` that forms a ladybug (one
/// circle met by both crossings), decides on which side of the arrow of `j`
/// the tail of the arrow of `k` lies.
///
/// Each crossing carries an arrow from its `(a,b)` piece to its `(c,d)` piece
/// in the 0-smoothing. Walk the circle so that the chord of `j` lies on the
/// left; the result is whether the first piece of `k` met after the tail of
/// `j` is the tail of `k`. The answer is symmetric in `j` and `k` and flips
/// when either arrow is reversed.
pub fn ladybug_class(d: &MarkedDiagram, r: Resolution, j: usize, k: usize) -> Option<bool> {
    if r.bit(j) != 0 || r.bit(k) != 0 || j == k {
        return None;
    }
    let st = resolve_state(d, r);
    let circ = st.circle_of_arc[d.crossings[j].arcs[0]];
    for x in [j, k] {
        for p in 0..4 {
            if st.circle_of_arc[d.crossings[x].arcs[p]] != circ {
                return None;
            }
        }
    }
    // events: (crossing, is_ab_piece, forward)
    let mut events = Vec::new();
    let (k0, p0) = (j, 0usize);
    let (mut ck, mut cp) = (k0, p0);
    // Leave crossing j through corner a, travel, and record each piece entered.
    loop {
        let (nk, np) = d.across_arc(ck, cp);
        let bit = r.bit(nk) as usize;
        let partner = SMOOTHING[bit]
            .iter()
            .find_map(|&(p, q)| if p == np { Some(q) } else if q == np { Some(p) } else { None })
            .expect("every corner is paired");
        if nk == j || nk == k {
            let ab = np <= 1;
            let forward = np % 2 == 0;
            events.push((nk, ab, forward));
        }
        ck = nk;
        cp = partner;
        if (ck, cp) == (k0, p0) {
            break;
        }
        if events.len() > 8 {
            return None;
        }
    }
    if events.len() != 4 {
        return None;
    }
    let j_forward = events.iter().find(|e| e.0 == j).map(|e| e.2)?;
    if !j_forward {
        events.reverse();
        for e in &mut events {
            e.2 = !e.2;
        }
    }
    let start = events.iter().position(|e| e.0 == j && e.1)?;
    (1..4).map(|i| events[(start + i) % 4]).find(|e| e.0 == k).map(|e| e.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::rat;

    pub const RIGHT_TREFOIL: &str = "X[1,5,2,4]\nX[3,1,4,6]\nX[5,3,6,2]\n";
    pub const HOPF: &str = "X[1,3,2,4]\nX[3,1,4,2]\n";

    #[test]
    fn parse_empty_and_unknot() {
        let d = parse_pd("").unwrap();
        assert_eq!(d.num_crossings(), 0);
        assert_eq!(d.num_arcs(), 0);
        let u = parse_pd("unknots 1\nmark U1 1 1/2 1/2\n").unwrap();
        assert_eq!(u.num_crossings(), 0);
        let st = resolve_state(&u, Resolution(0));
        assert_eq!(st.c, 1);
        assert_eq!(st.eps_f, vec![rat(1, 1)]);
        assert_eq!(nu_of_state(&u, Resolution(0)), rat(-1, 2));
    }

    #[test]
    fn trefoil_signs() {
        // Following arcs 1→2→…→6: crossing X[1,5,2,4] has over-strand 4→5,
        // i.e. entering at d, so it is positive; likewise the other two.
        let d = parse_pd(RIGHT_TREFOIL).unwrap();
        assert_eq!((d.n_plus, d.n_minus), (3, 0));
        let m = d.mirror().unwrap();
        assert_eq!((m.n_plus, m.n_minus), (0, 3));
        assert!(parse_pd("X[1,5,2,4] sign=-\nX[3,1,4,6]\nX[5,3,6,2]\n").is_err());
    }

    #[test]
    fn trefoil_marking_passthrough() {
        let d = parse_pd(&format!("{RIGHT_TREFOIL}mark 1 1 1/2 1/2\n")).unwrap();
        assert_eq!(d.markings.len(), 1);
        let m = &d.markings[0];
        assert_eq!((m.alpha.clone(), m.beta1.clone(), m.beta2.clone()), (rat(1, 1), rat(1, 2), rat(1, 2)));
        assert!(parse_pd(&format!("{RIGHT_TREFOIL}mark 1 1 1/2 1/4\n")).is_err());
        assert!(parse_pd(&format!("{RIGHT_TREFOIL}mark 9 1 1/2 1/2\n")).is_err());
    }

    #[test]
    fn parse_errors_are_located() {
        match parse_pd("X[1,2,3,4]\n  bogus 3\n") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("{other:?}"),
        }
        match parse_pd("X[1,2,3]\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_pd("X[1,2,3,4]\n"), Err(Error::Validation(_))));
        match parse_pd("mark 1 x 1 1\n") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (1, 8)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn hopf_circles() {
        let d = parse_pd(HOPF).unwrap();
        assert_eq!((d.n_plus, d.n_minus), (2, 0));
        assert_eq!(d.num_components(), 2);
        assert_eq!(resolve_state(&d, Resolution(0b00)).c, 2);
        assert_eq!(resolve_state(&d, Resolution(0b01)).c, 1);
        assert_eq!(resolve_state(&d, Resolution(0b11)).c, 2);
        assert_eq!(nu_of_state(&d, Resolution(0)), rat(0, 1));
        assert_eq!(nu_of_state(&d, Resolution(0b11)), rat(-1, 1));
        let m = saddle_info(&d, Resolution(0), 0).unwrap();
        assert!(matches!(m.kind, crate::statespace::EdgeKind::Merge { .. }));
        let s = saddle_info(&d, Resolution(0b01), 1).unwrap();
        assert!(matches!(s.kind, crate::statespace::EdgeKind::Split { .. }));
        assert!(saddle_info(&d, Resolution(0b01), 0).is_err());
        let r = d.reverse_component(0).unwrap();
        assert_eq!((r.n_plus, r.n_minus), (0, 2));
    }

    #[test]
    fn kink_circles() {
        // one positive kink
        let d = parse_pd("X[1,2,2,1]\n").unwrap();
        let or = d.oriented_resolution();
        let other = or.flip(0);
        assert_eq!(resolve_state(&d, or).c, 2);
        assert_eq!(resolve_state(&d, other).c, 1);
    }

    #[test]
    fn relabeling_preserves_circles() {
        let d = parse_pd(RIGHT_TREFOIL).unwrap();
        let shifted = RIGHT_TREFOIL
            .replace('6', "60")
            .replace('5', "50")
            .replace('4', "40")
            .replace('3', "30")
            .replace('2', "20")
            .replace('1', "10");
        let e = parse_pd(&shifted).unwrap();
        for r in 0..8 {
            assert_eq!(resolve_state(&d, Resolution(r)), resolve_state(&e, Resolution(r)));
        }
    }
}
