//! Exact maximum-weight bipartite matching on nonnegative integer weights.

use serde::{Deserialize, Serialize};

/// Dense row-major `rows × cols` matrix of nonnegative weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl WeightMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged weight matrix");
        Self { rows: r, cols: c, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, w: u32) {
        self.data[i * self.cols + j] = w;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }
}

/// Optimal value and a matching achieving it; zero-weight pairs are omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub value: u64,
    pub pairs: Vec<(usize, usize)>,
}

pub fn max_weight_matching(w: &WeightMatrix) -> Matching {
    let mut solver = AssignmentSolver::default();
    let mut pairs = Vec::new();
    let value = solver.solve(w.rows, w.cols, |i, j| w.get(i, j), Some(&mut pairs));
    Matching { value, pairs }
}

/// Shortest-augmenting-path assignment (Hungarian method with potentials)
/// keeping its scratch buffers between calls.
#[derive(Debug, Default, Clone)]
pub struct AssignmentSolver {
    u: Vec<i64>,
    v: Vec<i64>,
    p: Vec<usize>,
    way: Vec<usize>,
    minv: Vec<i64>,
    used: Vec<bool>,
    cost: Vec<i64>,
    weights: Vec<u32>,
    matched: Vec<(usize, usize)>,
}

impl AssignmentSolver {
    /// Maximum over partial matchings of the summed weight `weight(i, j)`,
    /// `i < rows`, `j < cols`. When `pairs` is given it receives the matched
    /// pairs with positive weight, sorted.
    pub fn solve<F>(
        &mut self,
        rows: usize,
        cols: usize,
        weight: F,
        pairs: Option<&mut Vec<(usize, usize)>>,
    ) -> u64
    where
        F: Fn(usize, usize) -> u32,
    {
        let mut pairs = pairs;
        if let Some(p) = pairs.as_deref_mut() {
            p.clear();
        }
        if rows == 0 || cols == 0 {
            return 0;
        }
        // Work with n ≤ m; the copy is transposed when needed.
        let transposed = rows > cols;
        let (n, m) = if transposed { (cols, rows) } else { (rows, cols) };
        self.weights.clear();
        for i in 0..n {
            for j in 0..m {
                self.weights.push(if transposed { weight(j, i) } else { weight(i, j) });
            }
        }
        let value = if n == 1 {
            let (best_j, best) = self
                .weights
                .iter()
                .enumerate()
                .fold((0, 0), |acc, (j, &w)| if w > acc.1 { (j, w) } else { acc });
            self.matched.clear();
            if best > 0 {
                self.matched.push((0, best_j));
            }
            best as u64
        } else {
            self.hungarian(n, m)
        };
        if let Some(p) = pairs {
            p.extend(
                self.matched
                    .iter()
                    .map(|&(i, j)| if transposed { (j, i) } else { (i, j) }),
            );
            p.sort_unstable();
        }
        value
    }

    fn hungarian(&mut self, n: usize, m: usize) -> u64 {
        let maxw = self.weights.iter().copied().max().unwrap_or(0) as i64;
        self.cost.clear();
        self.cost.extend(self.weights.iter().map(|&w| maxw - w as i64));
        let reset = |buf: &mut Vec<i64>, len: usize| {
            buf.clear();
            buf.resize(len, 0);
        };
        reset(&mut self.u, n + 1);
        reset(&mut self.v, m + 1);
        reset(&mut self.minv, m + 1);
        self.p.clear();
        self.p.resize(m + 1, 0);
        self.way.clear();
        self.way.resize(m + 1, 0);

        // 1-indexed; column 0 is the virtual source.
        for i in 1..=n {
            self.p[0] = i;
            let mut j0 = 0usize;
            self.minv.iter_mut().for_each(|x| *x = i64::MAX);
            self.used.clear();
            self.used.resize(m + 1, false);
            loop {
                self.used[j0] = true;
                let i0 = self.p[j0];
                let mut delta = i64::MAX;
                let mut j1 = 0usize;
                let row = &self.cost[(i0 - 1) * m..i0 * m];
                for j in 1..=m {
                    if !self.used[j] {
                        let cur = row[j - 1] - self.u[i0] - self.v[j];
                        if cur < self.minv[j] {
                            self.minv[j] = cur;
                            self.way[j] = j0;
                        }
                        if self.minv[j] < delta {
                            delta = self.minv[j];
                            j1 = j;
                        }
                    }
                }
                for j in 0..=m {
                    if self.used[j] {
                        self.u[self.p[j]] += delta;
                        self.v[j] -= delta;
                    } else {
                        self.minv[j] -= delta;
                    }
                }
                j0 = j1;
                if self.p[j0] == 0 {
                    break;
                }
            }
            loop {
                let j1 = self.way[j0];
                self.p[j0] = self.p[j1];
                j0 = j1;
                if j0 == 0 {
                    break;
                }
            }
        }

        let mut value = 0u64;
        self.matched.clear();
        for j in 1..=m {
            let i = self.p[j];
            if i != 0 {
                let w = self.weights[(i - 1) * m + j - 1];
                value += w as u64;
                if w > 0 {
                    self.matched.push((i - 1, j - 1));
                }
            }
        }
        value
    }
}

/// Maximum over injections by exhaustive search; exponential, test oracle only.
pub fn brute_force_matching_value(w: &WeightMatrix) -> u64 {
    let w = if w.rows() > w.cols() { w.transpose() } else { w.clone() };
    fn go(w: &WeightMatrix, i: usize, used: &mut Vec<bool>) -> u64 {
        if i == w.rows() {
            return 0;
        }
        let mut best = go(w, i + 1, used);
        for j in 0..w.cols() {
            if !used[j] {
                used[j] = true;
                best = best.max(w.get(i, j) as u64 + go(w, i + 1, used));
                used[j] = false;
            }
        }
        best
    }
    let mut used = vec![false; w.cols()];
    go(&w, 0, &mut used)
}
