//! Dense linear systems over GF(2) on packed bit rows.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(n: usize) -> BitRow {
        BitRow { words: vec![0; n.div_ceil(64)] }
    }

    pub fn toggle(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn xor(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn first_set(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &w) in self.words.iter().enumerate() {
            let mut m = w;
            while m != 0 {
                out.push(i * 64 + m.trailing_zeros() as usize);
                m &= m - 1;
            }
        }
        out
    }

    fn and_parity(&self, other: &BitRow) -> bool {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }
}

/// Equations `Σ_{i ∈ row} x_i = rhs`.
#[derive(Clone, Debug, Default)]
pub struct System {
    pub nvars: usize,
    pub rows: Vec<(Vec<usize>, bool)>,
}

impl System {
    pub fn new(nvars: usize) -> System {
        System { nvars, rows: Vec::new() }
    }

    pub fn push(&mut self, vars: Vec<usize>, rhs: bool) {
        self.rows.push((vars, rhs));
    }

    /// A solution with every free variable zero, or the indices of a set of
    /// equations whose sum reads `0 = 1`.
    pub fn solve(&self) -> std::result::Result<Vec<bool>, Vec<usize>> {
        match self.eliminate(false) {
            Ok(sol) => Ok(sol),
            Err(_) => Err(self.eliminate(true).err().unwrap_or_default()),
        }
    }

    fn eliminate(&self, track: bool) -> std::result::Result<Vec<bool>, Vec<usize>> {
        let n = self.nvars;
        let m = self.rows.len();
        let mut pivots: Vec<Option<(BitRow, bool, BitRow)>> = vec![None; n];
        for (idx, (vars, rhs)) in self.rows.iter().enumerate() {
            let mut row = BitRow::zeros(n);
            for &v in vars {
                row.toggle(v);
            }
            let mut rhs = *rhs;
            let mut origin = BitRow::zeros(if track { m } else { 0 });
            if track {
                origin.toggle(idx);
            }
            loop {
                match row.first_set() {
                    None => {
                        if rhs {
                            return Err(if track { origin.ones() } else { Vec::new() });
                        }
                        break;
                    }
                    Some(c) => match &pivots[c] {
                        Some((prow, prhs, porigin)) => {
                            row.xor(prow);
                            rhs ^= prhs;
                            if track {
                                origin.xor(porigin);
                            }
                        }
                        None => {
                            pivots[c] = Some((row, rhs, origin));
                            break;
                        }
                    },
                }
            }
        }
        let mut value = BitRow::zeros(n);
        for c in (0..n).rev() {
            if let Some((row, rhs, _)) = &pivots[c] {
                // bits above c are already final
                let v = rhs ^ row.and_parity(&value);
                if v {
                    value.toggle(c);
                }
            }
        }
        Ok((0..n).map(|i| value.get(i)).collect())
    }
}
