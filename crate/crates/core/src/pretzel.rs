//! Pretzel links `P(p,q,r)` drawn as three horizontal twist rows, and the
//! `(n+1)^3` cube for `P(n,n,-n)` obtained by collapsing each row to its
//! zig-zag complex.
//!
//! Row 0 is at the bottom and row 2 at the top. Crossing `i` (from 1) of a
//! row sits between the segments `x = i-1` and `x = i` of its bottom and top
//! strands. The rows are closed up on both sides by the arcs
//! `bot0–top2`, `top0–bot1`, `top1–bot2`. For a positive parameter the
//! under-strand runs SW–NE, so the 0-smoothing is the pass-through; for a
//! negative parameter it runs NW–SE and the 0-smoothing is the turnback.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::Zero;

use crate::cube::{shifts, Cube, CubeEdge, CubeVertex};
use crate::diagram::{parse_pd, resolve_state, saddle_between, MarkedDiagram, Resolution, StateCircles};
use crate::error::{Error, Result};
use crate::int::{rat, rat_to_string};
use crate::statespace::EdgeMap;

/// A marking triple `(α, β₁, β₂)`.
pub type Triple = (BigRational, BigRational, BigRational);

/// The default pair: `(1, 1/2, 1/2)` on the left outer arc and
/// `(-1, -1/2, -1/2)` on the right one.
pub fn default_markings() -> [Triple; 2] {
    [(rat(1, 1), rat(1, 2), rat(1, 2)), (rat(-1, 1), rat(-1, 2), rat(-1, 2))]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Level {
    Bot,
    Top,
}

type Segment = (usize, Level, usize);

/// A pretzel diagram with the bookkeeping needed to read off twist rows.
#[derive(Clone, Debug)]
pub struct PretzelDiagram {
    pub diagram: MarkedDiagram,
    pub params: [i64; 3],
    /// Crossing indices of each row, left to right.
    pub rows: [Vec<usize>; 3],
    seg_arc: HashMap<Segment, usize>,
}

impl PretzelDiagram {
    /// Arc carrying the end segment of `row` on the left (`right = false`)
    /// or right side, at the bottom strand.
    pub fn end_arc(&self, row: usize, right: bool) -> usize {
        let x = if right { self.params[row].unsigned_abs() as usize } else { 0 };
        self.seg_arc[&(row, Level::Bot, x)]
    }
}

/// `P(p, q, r)` with the given markings on the left and right outer arcs.
pub fn pretzel_pd(p: i64, q: i64, r: i64, markings: Option<[Triple; 2]>) -> Result<MarkedDiagram> {
    Ok(pretzel(p, q, r, markings)?.diagram)
}

pub fn pretzel(p: i64, q: i64, r: i64, markings: Option<[Triple; 2]>) -> Result<PretzelDiagram> {
    let params = [p, q, r];
    if params.contains(&0) {
        return Err(Error::Invalid("pretzel parameters must be nonzero".into()));
    }
    let markings = markings.unwrap_or_else(default_markings);
    let len = |t: usize| params[t].unsigned_abs() as usize;

    // Segments are glued into arcs by the closing strands.
    let mut seg_id: HashMap<Segment, usize> = HashMap::new();
    let mut segs: Vec<Segment> = Vec::new();
    for t in 0..3 {
        for lvl in [Level::Bot, Level::Top] {
            for x in 0..=len(t) {
                seg_id.insert((t, lvl, x), segs.len());
                segs.push((t, lvl, x));
            }
        }
    }
    let mut parent: Vec<usize> = (0..segs.len()).collect();
    let glue = |parent: &mut Vec<usize>, a: Segment, b: Segment| {
        let (ia, ib) = (seg_id[&a], seg_id[&b]);
        let (lo, hi) = (ia.min(ib), ia.max(ib));
        parent[hi] = lo;
    };
    for right in [false, true] {
        let x = |t: usize| if right { len(t) } else { 0 };
        glue(&mut parent, (0, Level::Bot, x(0)), (2, Level::Top, x(2)));
        glue(&mut parent, (0, Level::Top, x(0)), (1, Level::Bot, x(1)));
        glue(&mut parent, (1, Level::Top, x(1)), (2, Level::Bot, x(2)));
    }
    let root = |mut i: usize| {
        while parent[i] != i {
            i = parent[i];
        }
        i
    };

    // Crossing corners counter-clockwise with the under-strand at 0 and 2.
    let mut corners: Vec<[usize; 4]> = Vec::new();
    let mut rows: [Vec<usize>; 3] = Default::default();
    for t in 0..3 {
        for i in 1..=len(t) {
            let sw = root(seg_id[&(t, Level::Bot, i - 1)]);
            let se = root(seg_id[&(t, Level::Bot, i)]);
            let ne = root(seg_id[&(t, Level::Top, i)]);
            let nw = root(seg_id[&(t, Level::Top, i - 1)]);
            rows[t].push(corners.len());
            corners.push(if params[t] > 0 { [sw, se, ne, nw] } else { [nw, sw, se, ne] });
        }
    }

    // Orient each component by walking it, then rotate every crossing so
    // that its under-strand enters at position 0.
    let mut ends: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (k, c) in corners.iter().enumerate() {
        for (pos, &a) in c.iter().enumerate() {
            ends.entry(a).or_default().push((k, pos));
        }
    }
    let other_end = |k: usize, pos: usize| -> (usize, usize) {
        let e = &ends[&corners[k][pos]];
        if e[0] == (k, pos) {
            e[1]
        } else {
            e[0]
        }
    };
    let n = corners.len();
    // entering[k][pos]: the strand enters crossing k at corner pos.
    let mut entering = vec![[None::<bool>; 4]; n];
    let mut arc_order: Vec<usize> = Vec::new();
    for k0 in 0..n {
        for p0 in 0..4 {
            if entering[k0][p0].is_some() {
                continue;
            }
            let (mut k, mut pos) = (k0, p0);
            loop {
                entering[k][pos] = Some(false);
                arc_order.push(corners[k][pos]);
                let (nk, np) = other_end(k, pos);
                entering[nk][np] = Some(true);
                k = nk;
                pos = (np + 2) % 4;
                if (k, pos) == (k0, p0) {
                    break;
                }
            }
        }
    }
    // Arcs are numbered 1, 2, ... in walk order.
    let mut label: HashMap<usize, usize> = HashMap::new();
    for a in arc_order {
        let next = label.len() + 1;
        label.entry(a).or_insert(next);
    }
    let mut text = String::new();
    for k in 0..n {
        let c = corners[k];
        let rot = if entering[k][0] == Some(true) { c } else { [c[2], c[3], c[0], c[1]] };
        // positive iff the over-strand enters at d
        let over_enters_d = if entering[k][0] == Some(true) { entering[k][3] } else { entering[k][1] };
        let sign = if over_enters_d == Some(true) { '+' } else { '-' };
        let l: Vec<usize> = rot.iter().map(|a| label[a]).collect();
        let _ = writeln!(text, "X[{},{},{},{}] sign={sign}", l[0], l[1], l[2], l[3]);
    }
    let left = label[&root(seg_id[&(0, Level::Bot, 0)])];
    let right = label[&root(seg_id[&(0, Level::Bot, len(0))])];
    for (arc, m) in [(left, &markings[0]), (right, &markings[1])] {
        let _ = writeln!(text, "mark {arc} {} {} {}", rat_to_string(&m.0), rat_to_string(&m.1), rat_to_string(&m.2));
    }
    let diagram = parse_pd(&text)?;
    let seg_arc = seg_id
        .iter()
        .map(|(s, &i)| (*s, diagram.arc_index(&label[&root(i)].to_string()).expect("arc label exists")))
        .collect();
    Ok(PretzelDiagram { diagram, params, rows, seg_arc })
}

/// Edge of a twist-row zig-zag complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BridgeMap {
    /// The saddle between the pass-through and the turnback.
    Saddle,
    /// `x_L − x_R`: left-piece dot minus right-piece dot.
    DotDifference,
}

/// The zig-zag complex of a row of `n` crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeComplex {
    pub n: usize,
    pub positive: bool,
    /// Object `t` is the turnback (`true`) or the pass-through.
    pub turnback: Vec<bool>,
    /// Map from object `t` to `t + 1`.
    pub maps: Vec<BridgeMap>,
    /// Object sitting in homological degree zero.
    pub degree_zero: usize,
}

impl BridgeComplex {
    /// Bit of the one-crossing template diagram realizing object `t`.
    pub fn template_bit(&self, t: usize) -> u8 {
        // the template's 0-smoothing is the pass-through for positive rows
        (self.turnback[t] == self.positive) as u8
    }

    /// Number of small circles collapsed into object `t`, counted
    /// with the sign they contribute to `2ν`.
    pub fn nu_correction(&self, t: usize) -> i64 {
        if self.positive {
            if t >= 1 {
                -(t as i64 - 1)
            } else {
                0
            }
        } else if t < self.n {
            self.n as i64 - 1 - t as i64
        } else {
            0
        }
    }
}

pub fn bridge_complex(n: usize, positive: bool) -> Result<BridgeComplex> {
    if n < 1 {
        return Err(Error::Invalid("a twist row needs at least one crossing".into()));
    }
    let (turnback, maps) = if positive {
        let turnback = (0..=n).map(|t| t >= 1).collect();
        let maps = (0..n).map(|t| if t == 0 { BridgeMap::Saddle } else { BridgeMap::DotDifference }).collect();
        (turnback, maps)
    } else {
        let turnback = (0..=n).map(|t| t < n).collect();
        let maps = (0..n).map(|t| if t + 1 == n { BridgeMap::Saddle } else { BridgeMap::DotDifference }).collect();
        (turnback, maps)
    };
    Ok(BridgeComplex { n, positive, turnback, maps, degree_zero: n })
}

/// The `(n+1)^3` cube of `P(n, n, -n)`, built over the one-crossing-per-row
/// template `P(1, 1, -1)`.
#[derive(Clone, Debug)]
pub struct PretzelCube {
    pub n: usize,
    pub cube: Cube,
    pub bridges: [BridgeComplex; 3],
    pub template: PretzelDiagram,
    /// The full diagram (for its crossing counts).
    pub full: MarkedDiagram,
}

impl PretzelCube {
    pub fn vertex_index(&self, c: [usize; 3]) -> usize {
        let m = self.n + 1;
        c[0] + m * c[1] + m * m * c[2]
    }
}

pub fn reduced_cube(n: usize, markings: Option<[Triple; 2]>) -> Result<PretzelCube> {
    if n < 1 {
        return Err(Error::Invalid("pretzel size must be at least 1".into()));
    }
    let ni = n as i64;
    let full = pretzel_pd(ni, ni, -ni, markings.clone())?;
    let template = pretzel(1, 1, -1, markings)?;
    let td = &template.diagram;
    let bridges = [bridge_complex(n, true)?, bridge_complex(n, true)?, bridge_complex(n, false)?];
    let m = n + 1;
    let index = |c: [usize; 3]| c[0] + m * c[1] + m * m * c[2];

    let mut states: HashMap<u64, StateCircles> = HashMap::new();
    let mut vertices = Vec::with_capacity(m * m * m);
    for v in 0..m * m * m {
        let c = [v % m, v / m % m, v / (m * m)];
        let mut r = 0u64;
        for b in 0..3 {
            let k = template.rows[b][0];
            r |= (bridges[b].template_bit(c[b]) as u64) << k;
        }
        let state = states.entry(r).or_insert_with(|| resolve_state(td, Resolution(r))).clone();
        let weight = c.iter().sum::<usize>();
        let corr: i64 = (0..3).map(|b| bridges[b].nu_correction(c[b])).sum();
        let two_nu = 3 * ni - weight as i64 - state.c as i64 + corr;
        vertices.push(CubeVertex {
            coords: c.iter().map(|&x| x as u32).collect(),
            weight,
            nu: BigRational::new(two_nu.into(), 2.into()),
            state,
            resolution: Resolution(r),
        });
    }
    let mut edges = Vec::new();
    for v in 0..m * m * m {
        let c = [v % m, v / m % m, v / (m * m)];
        for b in 0..3 {
            if c[b] == n {
                continue;
            }
            let mut d = c;
            d[b] += 1;
            let dst = index(d);
            let (src_st, dst_st) = (&vertices[v].state, &vertices[dst].state);
            let k = template.rows[b][0];
            let (map, crossing) = match bridges[b].maps[c[b]] {
                BridgeMap::Saddle => (saddle_between(td, k, src_st, dst_st), Some(k)),
                BridgeMap::DotDifference => {
                    let l = src_st.circle_of_arc[template.end_arc(b, false)];
                    let r = src_st.circle_of_arc[template.end_arc(b, true)];
                    (EdgeMap::dot(src_st.c, l, r), None)
                }
            };
            edges.push(CubeEdge { src: v, dst, axis: b, map, crossing });
        }
    }
    let (h_shift, q_shift) = shifts(&full);
    let cube = Cube::assemble(vertices, edges, td.clone(), h_shift, q_shift);
    Ok(PretzelCube { n, cube, bridges, template, full })
}

/// Components of the graph on reduced basis elements whose edges are the
/// `±1` entries of the differential, as `(vertex count, size)` pairs sorted.
pub fn unit_components(cx: &crate::complex::BigradedComplex) -> Vec<usize> {
    let n = cx.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (r, c, v) in cx.d.triplets() {
        if v.is_unit() {
            let (a, b) = (find(&mut parent, r), find(&mut parent, c));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut size: HashMap<usize, usize> = HashMap::new();
    for i in 0..n {
        *size.entry(find(&mut parent, i)).or_insert(0) += 1;
    }
    let mut out: Vec<usize> = size.into_values().collect();
    out.sort_unstable();
    out
}

/// Total α of a marking pair.
pub fn marking_sum(m: &[Triple; 2]) -> BigRational {
    m.iter().fold(BigRational::zero(), |a, t| a + &t.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pretzels() {
        let d = pretzel_pd(1, 1, -1, None).unwrap();
        assert_eq!(d.num_crossings(), 3);
        assert_eq!(d.markings.len(), 2);
        for n in 1..=4 {
            let d = pretzel_pd(n, n, -n, None).unwrap();
            assert_eq!(d.num_crossings(), 3 * n as usize);
            assert_eq!(d.n_plus + d.n_minus, 3 * n as usize);
        }
        // odd parameters give a knot
        assert_eq!(pretzel_pd(3, 3, -3, None).unwrap().num_components(), 1);
        assert_eq!(pretzel_pd(2, 2, -2, None).unwrap().num_components(), 3);
        assert!(pretzel_pd(0, 1, 1, None).is_err());
    }

    #[test]
    fn odd_pretzel_crossing_signs() {
        // In an odd pretzel knot both strands of a row run in opposite
        // directions, so rows of one twist direction share a sign.
        for n in [1i64, 3, 5] {
            let p = pretzel(n, n, -n, None).unwrap();
            let signs: Vec<Vec<i8>> =
                p.rows.iter().map(|r| r.iter().map(|&k| p.diagram.crossings[k].sign).collect()).collect();
            for row in &signs {
                assert!(row.iter().all(|&s| s == row[0]));
            }
            assert_eq!(signs[0][0], signs[1][0]);
            assert_eq!(signs[0][0], -signs[2][0]);
        }
    }

    #[test]
    fn bridge_shapes() {
        let neg = bridge_complex(1, false).unwrap();
        assert_eq!(neg.turnback, vec![true, false]);
        assert_eq!(neg.maps, vec![BridgeMap::Saddle]);
        let pos = bridge_complex(2, true).unwrap();
        assert_eq!(pos.turnback, vec![false, true, true]);
        assert_eq!(pos.maps, vec![BridgeMap::Saddle, BridgeMap::DotDifference]);
        assert_eq!(pos.degree_zero, 2);
        assert!(bridge_complex(0, true).is_err());
    }

    #[test]
    fn cube_shape() {
        let pc = reduced_cube(2, None).unwrap();
        assert_eq!(pc.cube.vertices.len(), 27);
        assert_eq!(pc.cube.edges.len(), 3 * 2 * 9);
        assert_eq!(pc.cube.faces.len(), 3 * 4 * 3);
    }
}
