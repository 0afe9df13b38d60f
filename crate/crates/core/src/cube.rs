//! Cubes of resolutions: vertices carrying state circles, edges carrying
//! unsigned saddle or dot maps, and the 2-faces between them.
//!
//! The full hypercube of a diagram and the `(n+1)^3` pretzel grid share this
//! shape, so sign fixing and assembly are written once against it.

use num_rational::BigRational;
use rayon::prelude::*;

use crate::diagram::{nu_value, resolve_state, saddle_between, MarkedDiagram, Resolution, StateCircles};
use crate::statespace::EdgeMap;

#[derive(Clone, Debug)]
pub struct CubeVertex {
    /// Coordinates along each axis.
    pub coords: Vec<u32>,
    /// Homological position before the `-n_minus` shift.
    pub weight: usize,
    pub nu: BigRational,
    pub state: StateCircles,
    /// Resolution of the underlying (template) diagram.
    pub resolution: Resolution,
}

impl CubeVertex {
    pub fn circles(&self) -> usize {
        self.state.c
    }
}

#[derive(Clone, Debug)]
pub struct CubeEdge {
    pub src: usize,
    pub dst: usize,
    pub axis: usize,
    pub map: EdgeMap,
    /// Crossing of the underlying diagram smoothed differently along a saddle.
    pub crossing: Option<usize>,
}

/// A square `v → v+a → v+a+b` and `v → v+b → v+a+b` with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Face {
    pub v: usize,
    pub a: usize,
    pub b: usize,
    /// Path A: `first_a` then `then_b`; path B: `first_b` then `then_a`.
    pub first_a: usize,
    pub then_b: usize,
    pub first_b: usize,
    pub then_a: usize,
}

impl Face {
    pub fn edges(&self) -> [usize; 4] {
        [self.first_a, self.then_b, self.first_b, self.then_a]
    }
}

#[derive(Clone, Debug)]
pub struct Cube {
    pub vertices: Vec<CubeVertex>,
    pub edges: Vec<CubeEdge>,
    /// Outgoing edges of each vertex, sorted by axis.
    pub out: Vec<Vec<(usize, usize)>>,
    pub faces: Vec<Face>,
    /// Diagram whose crossings label saddle edges (the link itself or the
    /// pretzel template).
    pub diagram: MarkedDiagram,
    pub h_shift: i64,
    pub q_shift: i64,
}

impl Cube {
    /// The full `{0,1}^N` cube of a diagram; vertex index = resolution bits.
    pub fn full(d: &MarkedDiagram) -> Cube {
        let n = d.num_crossings();
        let states: Vec<StateCircles> = (0..1u64 << n).into_par_iter().map(|r| resolve_state(d, Resolution(r))).collect();
        let vertices: Vec<CubeVertex> = states
            .into_iter()
            .enumerate()
            .map(|(r, state)| {
                let res = Resolution(r as u64);
                CubeVertex {
                    coords: (0..n).map(|k| res.bit(k) as u32).collect(),
                    weight: res.weight(),
                    nu: nu_value(n, res.weight(), state.c),
                    state,
                    resolution: res,
                }
            })
            .collect();
        let mut pending = Vec::new();
        for r in 0..1usize << n {
            for k in 0..n {
                if r >> k & 1 == 0 {
                    pending.push((r, k));
                }
            }
        }
        let edges: Vec<CubeEdge> = pending
            .par_iter()
            .map(|&(r, k)| {
                let dst = r | 1 << k;
                CubeEdge {
                    src: r,
                    dst,
                    axis: k,
                    map: saddle_between(d, k, &vertices[r].state, &vertices[dst].state),
                    crossing: Some(k),
                }
            })
            .collect();
        let (h_shift, q_shift) = shifts(d);
        Cube::assemble(vertices, edges, d.clone(), h_shift, q_shift)
    }

    /// Indexes outgoing edges and enumerates faces.
    pub fn assemble(vertices: Vec<CubeVertex>, edges: Vec<CubeEdge>, diagram: MarkedDiagram, h_shift: i64, q_shift: i64) -> Cube {
        let mut out = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.src].push((e.axis, i));
        }
        for o in &mut out {
            o.sort_unstable();
        }
        let find = |out: &Vec<Vec<(usize, usize)>>, v: usize, axis: usize| {
            out[v].binary_search_by_key(&axis, |&(a, _)| a).ok().map(|i| out[v][i].1)
        };
        let mut faces = Vec::new();
        for v in 0..vertices.len() {
            for (i, &(a, ea)) in out[v].iter().enumerate() {
                for &(b, eb) in &out[v][i + 1..] {
                    let (Some(eab), Some(eba)) = (find(&out, edges[ea].dst, b), find(&out, edges[eb].dst, a)) else {
                        continue;
                    };
                    if edges[eab].dst != edges[eba].dst {
                        continue;
                    }
                    faces.push(Face { v, a, b, first_a: ea, then_b: eab, first_b: eb, then_a: eba });
                }
            }
        }
        Cube { vertices, edges, out, faces, diagram, h_shift, q_shift }
    }

    pub fn num_axes(&self) -> usize {
        self.vertices.first().map_or(0, |v| v.coords.len())
    }

    /// Total dimension of all state spaces.
    pub fn total_dim(&self) -> usize {
        self.vertices.iter().map(|v| 1usize << v.circles()).sum()
    }
}

/// `(h, q)` shifts: `h = |r| - n_-`, and `q = 2(|w| + ν) - 2 n_+ + n_-`,
/// which places the unmarked unknot in `q = ±1`.
pub fn shifts(d: &MarkedDiagram) -> (i64, i64) {
    (-(d.n_minus as i64), -2 * d.n_plus as i64 + d.n_minus as i64)
}
