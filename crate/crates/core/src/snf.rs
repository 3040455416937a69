//! Integer Smith normal form with transforms.

use std::fmt;

/// A dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = IntMatrix::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[i64]>::to_vec).collect()
    }

    /// Matrix product. Accumulates in `i128`, so only the final entries
    /// need to fit (`u · a · v` cancels down from much larger terms).
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let sum: i128 = (0..self.cols)
                    .map(|k| i128::from(self[(i, k)]) * i128::from(other[(k, j)]))
                    .sum();
                out[(i, j)] = i64::try_from(sum).expect("matrix product entry exceeds i64");
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: i64) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += factor * v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: i64) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += factor * v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_rows() {
            writeln!(f, "{row:?}")?;
        }
        Ok(())
    }
}

/// `u · a · v = d` with `u`, `v` unimodular and `d` diagonal, its nonzero
/// entries positive and each dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The diagonal of `d`, including zeros, of length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)]).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&x| x != 0).count()
    }
}

/// Quotient rounded to nearest, so the remainder `x - q * p` is as small as
/// possible in absolute value. Keeps transform entries from growing.
fn nearest_quotient(x: i64, p: i64) -> i64 {
    let q = x.div_euclid(p);
    let r = x - q * p;
    if 2 * r.abs() > p.abs() {
        q + p.signum()
    } else {
        q
    }
}

/// Smallest nonzero entry (by absolute value) of the trailing block starting
/// at `(t, t)`.
fn smallest_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = d[(i, j)];
            if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);

    for t in 0..a.rows.min(a.cols) {
        let Some((pi, pj)) = smallest_entry(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let pivot = d[(t, t)];
            let mut clean = true;
            for i in t + 1..d.rows {
                let q = nearest_quotient(d[(i, t)], pivot);
                if q != 0 {
                    d.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
                clean &= d[(i, t)] == 0;
            }
            for j in t + 1..d.cols {
                let q = nearest_quotient(d[(t, j)], pivot);
                if q != 0 {
                    d.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
                clean &= d[(t, j)] == 0;
            }
            if clean {
                // The pivot must divide the rest of the block; if not, fold
                // an offending row into the pivot row and go again.
                let offender = (t + 1..d.rows).find(|&i| (t + 1..d.cols).any(|j| d[(i, j)] % pivot != 0));
                match offender {
                    None => break,
                    Some(i) => {
                        d.add_row(t, i, 1);
                        u.add_row(t, i, 1);
                    }
                }
            }
            // A smaller remainder now sits in row or column t; move the
            // smallest entry of the row/column into the pivot.
            let mut best = (t, t);
            for i in t..d.rows {
                let x = d[(i, t)];
                if x != 0 && x.abs() < d[best].abs() {
                    best = (i, t);
                }
            }
            for j in t..d.cols {
                let x = d[(t, j)];
                if x != 0 && x.abs() < d[best].abs() {
                    best = (t, j);
                }
            }
            d.swap_rows(t, best.0);
            u.swap_rows(t, best.0);
            d.swap_cols(t, best.1);
            v.swap_cols(t, best.1);
        }
        if d[(t, t)] < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d, "recomposition failed for\n{a}");
        let diag = s.diagonal();
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert_eq!(s.d[(i, j)], 0);
                }
            }
        }
        for w in diag.windows(2) {
            assert!(w[0] >= 0 && w[1] >= 0);
            if w[0] == 0 {
                assert_eq!(w[1], 0);
            } else {
                assert_eq!(w[1] % w[0], 0);
            }
        }
        s
    }

    #[test]
    fn single_relator() {
        let s = check(&IntMatrix::from_rows(&[vec![2]]));
        assert_eq!(s.diagonal(), vec![2]);
    }

    #[test]
    fn classic_example() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(check(&a).diagonal(), vec![2, 6, 12]);
    }

    #[test]
    fn coprime_entries_need_the_divisibility_fixup() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(check(&a).diagonal(), vec![1, 6]);
    }

    #[test]
    fn empty_and_zero_matrices() {
        let s = check(&IntMatrix::zeros(0, 3));
        assert!(s.diagonal().is_empty());
        let s = check(&IntMatrix::zeros(2, 3));
        assert_eq!(s.diagonal(), vec![0, 0]);
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn rectangular() {
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![1, -1], vec![0, 2]]);
        assert_eq!(check(&a).diagonal(), vec![1, 2]);
    }
}
