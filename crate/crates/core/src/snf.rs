//! Smith normal form of dense integer matrices with optional tracking of the
//! unimodular transforms.

use crate::error::{Error, Result};
use crate::int::Int;
use crate::sparse::SparseMat;

pub type Dense = Vec<Vec<Int>>;

pub fn identity(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect()).collect()
}

pub fn zeros(r: usize, c: usize) -> Dense {
    vec![vec![Int::zero(); c]; r]
}

pub fn from_sparse(m: &SparseMat<Int>) -> Dense {
    m.to_dense()
}

pub fn mul(a: &Dense, b: &Dense, inner: usize, cols: usize) -> Dense {
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate().take(inner) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[k].iter().enumerate() {
                if !y.is_zero() {
                    out[i][j] += &(x * y);
                }
            }
        }
    }
    out
}

/// Which transforms to record.
#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    pub fn all() -> Track {
        Track { u: true, u_inv: true, v: true, v_inv: true }
    }
}

/// `U·M·V = D` with `D` diagonal, `d_1 | d_2 | …`, all positive.
#[derive(Clone, Debug)]
pub struct Snf {
    pub rows: usize,
    pub cols: usize,
    pub diag: Vec<Int>,
    pub u: Option<Dense>,
    pub u_inv: Option<Dense>,
    pub v: Option<Dense>,
    pub v_inv: Option<Dense>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Diagonal entries different from one.
    pub fn nontrivial(&self) -> Vec<Int> {
        self.diag.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn d_matrix(&self) -> Dense {
        let mut d = zeros(self.rows, self.cols);
        for (i, x) in self.diag.iter().enumerate() {
            d[i][i] = x.clone();
        }
        d
    }

    /// Re-checks `U·M·V = D` and the inverse pairs by exact multiplication.
    pub fn verify(&self, m: &Dense) -> Result<()> {
        let (r, c) = (self.rows, self.cols);
        let fail = |what: &str| Err(Error::Internal(format!("Smith normal form check failed: {what}")));
        if let (Some(u), Some(v)) = (&self.u, &self.v) {
            if mul(&mul(u, m, r, c), v, c, c) != self.d_matrix() {
                return fail("U·M·V ≠ D");
            }
        }
        if let (Some(u), Some(ui)) = (&self.u, &self.u_inv) {
            if mul(u, ui, r, r) != identity(r) {
                return fail("U·U⁻¹ ≠ 1");
            }
        }
        if let (Some(v), Some(vi)) = (&self.v, &self.v_inv) {
            if mul(v, vi, c, c) != identity(c) {
                return fail("V·V⁻¹ ≠ 1");
            }
        }
        Ok(())
    }
}

struct Work {
    a: Dense,
    u: Option<Dense>,
    u_inv: Option<Dense>,
    v: Option<Dense>,
    v_inv: Option<Dense>,
}

fn row_axpy(m: &mut Dense, dst: usize, src: usize, q: &Int) {
    let (s, d) = if src < dst {
        let (lo, hi) = m.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x += &(q * y);
        }
    }
}

fn col_axpy(m: &mut Dense, dst: usize, src: usize, q: &Int) {
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let t = q * &row[src];
            row[dst] += &t;
        }
    }
}

impl Work {
    /// `row_i += q·row_t`.
    fn row_add(&mut self, i: usize, t: usize, q: &Int) {
        row_axpy(&mut self.a, i, t, q);
        if let Some(u) = &mut self.u {
            row_axpy(u, i, t, q);
        }
        if let Some(ui) = &mut self.u_inv {
            col_axpy(ui, t, i, &-q);
        }
    }

    /// `col_j += q·col_t`.
    fn col_add(&mut self, j: usize, t: usize, q: &Int) {
        col_axpy(&mut self.a, j, t, q);
        if let Some(v) = &mut self.v {
            col_axpy(v, j, t, q);
        }
        if let Some(vi) = &mut self.v_inv {
            row_axpy(vi, t, j, &-q);
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap(i, j);
        }
    }

    fn row_negate(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in u[i].iter_mut() {
                *x = -&*x;
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row[i] = -&row[i];
            }
        }
    }
}

/// Smith normal form with smallest-absolute-value pivoting.
pub fn smith(m: &Dense, rows: usize, cols: usize, track: Track) -> Snf {
    let mut w = Work {
        a: m.clone(),
        u: track.u.then(|| identity(rows)),
        u_inv: track.u_inv.then(|| identity(rows)),
        v: track.v.then(|| identity(cols)),
        v_inv: track.v_inv.then(|| identity(cols)),
    };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &w.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.cmp_abs(&w.a[bi][bj]).is_lt()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_round(&w.a[t][t]);
                    w.row_add(i, t, &-q);
                    if !w.a[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_round(&w.a[t][t]);
                    w.col_add(j, t, &-q);
                    if !w.a[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // move the smallest remainder in row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !w.a[i][t].is_zero() && w.a[i][t].cmp_abs(&w.a[best.0][best.1]).is_lt() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !w.a[t][j].is_zero() && w.a[t][j].cmp_abs(&w.a[best.0][best.1]).is_lt() {
                        best = (t, j);
                    }
                }
                w.row_swap(t, best.0);
                w.col_swap(t, best.1);
                continue;
            }
            // divisibility of the remaining block
            let p = w.a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !p.divides(&w.a[i][j])));
            match bad {
                Some(i) => w.row_add(t, i, &Int::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.row_negate(t);
        }
        diag.push(w.a[t][t].clone());
        t += 1;
    }
    Snf { rows, cols, diag, u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv }
}

/// Smith form that also re-verifies itself.
pub fn smith_checked(m: &Dense, rows: usize, cols: usize, track: Track) -> Result<Snf> {
    let s = smith(m, rows, cols, track);
    s.verify(m)?;
    Ok(s)
}

/// The invariant factors of a sparse integer matrix, as `(U, D, V)`.
pub fn smith_normal_form(m: &SparseMat<Int>) -> Result<(Dense, Dense, Dense)> {
    let s = smith_checked(&m.to_dense(), m.nrows, m.ncols, Track { u: true, v: true, ..Track::default() })?;
    let d = s.d_matrix();
    Ok((s.u.expect("tracked"), d, s.v.expect("tracked")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> Dense {
        rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect()
    }

    #[test]
    fn diag_two_three() {
        let m = dense(&[&[2, 0], &[0, 3]]);
        let s = smith_checked(&m, 2, 2, Track::all()).unwrap();
        assert_eq!(s.diag, vec![Int::from(1), Int::from(6)]);
    }

    #[test]
    fn zero_and_identity() {
        let z = zeros(2, 3);
        let s = smith_checked(&z, 2, 3, Track::all()).unwrap();
        assert!(s.diag.is_empty());
        assert_eq!(s.u.unwrap(), identity(2));
        assert_eq!(s.v.unwrap(), identity(3));
        let s = smith_checked(&identity(3), 3, 3, Track::all()).unwrap();
        assert_eq!(s.diag, vec![Int::one(); 3]);
    }

    #[test]
    fn rank_deficient_with_torsion() {
        // entries have gcd 1, the 2x2 minors gcd 2, and the determinant is 0
        let m = dense(&[&[4, 6, 2], &[6, 9, 3], &[2, 4, 8]]);
        let s = smith_checked(&m, 3, 3, Track::all()).unwrap();
        assert_eq!(s.diag, vec![Int::from(1), Int::from(2)]);
    }

    #[test]
    fn wide_matrix() {
        let m = dense(&[&[6, 10, 15]]);
        let s = smith_checked(&m, 1, 3, Track::all()).unwrap();
        assert_eq!(s.diag, vec![Int::from(1)]);
    }
}
