//! Exact rational dense linear algebra: just enough for kernels, ranks and
//! matrix products at desk scale. No floating point anywhere.

use num::{BigRational, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    a: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            a: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = rat(1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = &self[(i, k)];
                if v.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let w = &other[(k, j)];
                    if w.is_zero() {
                        continue;
                    }
                    let prod = v * w;
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(&other.a) {
            *x += y;
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(&other.a) {
            *x -= y;
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Mat {
        let mut out = self.clone();
        for x in out.a.iter_mut() {
            *x *= c;
        }
        out
    }

    pub fn commutator(&self, other: &Mat) -> Mat {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    /// `Some(c)` when the matrix equals `c` times the identity.
    pub fn as_scalar(&self) -> Option<Rat> {
        assert_eq!(self.rows, self.cols);
        if self.rows == 0 {
            return Some(Rat::zero());
        }
        let c = self[(0, 0)].clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expect = if i == j { &c } else { &Rat::zero() };
                if &self[(i, j)] != expect {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn flatten(&self) -> Vec<Rat> {
        self.a.clone()
    }

    /// Inverse by Gauss-Jordan; the matrix must be square and invertible.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !work[(r, col)].is_zero())?;
            for j in 0..n {
                work.a.swap(col * n + j, pivot * n + j);
                inv.a.swap(col * n + j, pivot * n + j);
            }
            let p = work[(col, col)].clone();
            for j in 0..n {
                work[(col, j)] /= &p;
                inv[(col, j)] /= &p;
            }
            for r in 0..n {
                if r == col || work[(r, col)].is_zero() {
                    continue;
                }
                let f = work[(r, col)].clone();
                for j in 0..n {
                    let w = &work[(col, j)] * &f;
                    work[(r, j)] -= w;
                    let v = &inv[(col, j)] * &f;
                    inv[(r, j)] -= v;
                }
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.a[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.a[i * self.cols + j]
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x /= &pv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in 0..ncols {
                let v = &rows[r][j] * &f;
                rows[i][j] -= v;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    pivots
}

pub fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    rref(&mut rows).len()
}

/// Basis of the right kernel of the matrix given by `rows` (each of length
/// `ncols`).
pub fn nullspace(mut rows: Vec<Vec<Rat>>, ncols: usize) -> Vec<Vec<Rat>> {
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    let pivots = rref(&mut rows);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = rat(1);
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Whether two row spans coincide.
pub fn same_span(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> bool {
    let ra = rank(a.to_vec());
    let rb = rank(b.to_vec());
    if ra != rb {
        return false;
    }
    let mut both: Vec<Vec<Rat>> = a.to_vec();
    both.extend(b.iter().cloned());
    rank(both) == ra
}

/// Whether `v` lies in the row span of `basis`.
pub fn in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    let r0 = rank(basis.to_vec());
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    rank(rows) == r0
}
