//! Dense integer matrices: Smith/Hermite normal forms, kernels, determinants.
//!
//! Sizes here are desk-scale (rank <= 24), so the classical elementary-operation
//! algorithms with pivot-size reduction are used throughout. Smith normal form
//! tracks all four transforms U, U^-1, V, V^-1 with U*A*V = D.

use crate::scalar::{LatticeInt, Rational};
use num_traits::{Zero};
use std::fmt;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Mat {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<I: LatticeInt> Mat<I> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![I::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = I::one();
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = self[(i, k)].clone() * other[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + t;
                }
            }
        }
        out
    }

    /// Matrix-vector product A x.
    pub fn mul_vec(&self, x: &[I]) -> Vec<I> {
        assert_eq!(self.cols, x.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(I::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Fraction-free determinant (Bareiss).
    pub fn det(&self) -> I {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return I::one();
        }
        let mut a = self.clone();
        let mut sign = I::one();
        let mut prev = I::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            let t = a[(k, j)].clone();
                            a[(k, j)] = a[(i, j)].clone();
                            a[(i, j)] = t;
                        }
                        sign = -sign;
                    }
                    None => return I::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[(k, k)].clone() * a[(i, j)].clone()
                        - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = num.div_floor(&prev);
                }
                a[(i, k)] = I::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    /// Signature of a symmetric matrix over Q: (positive, negative, zero) pivot counts.
    pub fn signature(&self) -> (usize, usize, usize) {
        assert!(self.is_symmetric(), "signature of non-symmetric matrix");
        let n = self.rows;
        let mut a: Vec<Vec<Rational<I>>> = (0..n)
            .map(|i| (0..n).map(|j| Rational::from_integer(self[(i, j)].clone())).collect())
            .collect();
        let (mut pos, mut neg, mut zer) = (0, 0, 0);
        let mut used = vec![false; n];
        loop {
            let piv = match (0..n).find(|&i| !used[i] && !a[i][i].is_zero()) {
                Some(p) => p,
                None => {
                    // all active diagonals zero: expose one via e_i <- e_i + e_j
                    let pair = (0..n)
                        .filter(|&i| !used[i])
                        .flat_map(|i| (0..n).filter(move |&j| !(j == i)).map(move |j| (i, j)))
                        .find(|&(i, j)| !used[j] && !a[i][j].is_zero());
                    match pair {
                        Some((i, j)) => {
                            for k in 0..n {
                                let t = a[j][k].clone();
                                a[i][k] = a[i][k].clone() + t;
                            }
                            for k in 0..n {
                                let t = a[k][j].clone();
                                a[k][i] = a[k][i].clone() + t;
                            }
                            i
                        }
                        None => {
                            zer += (0..n).filter(|&i| !used[i]).count();
                            break;
                        }
                    }
                }
            };
            used[piv] = true;
            if a[piv][piv].numer().is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            let d = a[piv][piv].clone();
            let others: Vec<usize> = (0..n).filter(|&i| !used[i]).collect();
            for &i in &others {
                if a[i][piv].is_zero() {
                    continue;
                }
                let f = a[i][piv].clone() / d.clone();
                for k in 0..n {
                    let t = f.clone() * a[piv][k].clone();
                    a[i][k] = a[i][k].clone() - t;
                }
                for k in 0..n {
                    let t = f.clone() * a[k][piv].clone();
                    a[k][i] = a[k][i].clone() - t;
                }
            }
            if used.iter().all(|&u| u) {
                break;
            }
        }
        (pos, neg, zer)
    }

    /// Solve A x = b over Q. Returns None if inconsistent or underdetermined
    /// along the needed coordinates.
    pub fn solve_rational(&self, b: &[Rational<I>]) -> Option<Vec<Rational<I>>> {
        assert_eq!(self.rows, b.len());
        let (m, n) = (self.rows, self.cols);
        let mut a: Vec<Vec<Rational<I>>> = (0..m)
            .map(|i| {
                (0..n)
                    .map(|j| Rational::from_integer(self[(i, j)].clone()))
                    .chain(std::iter::once(b[i].clone()))
                    .collect()
            })
            .collect();
        let mut pivot_col = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let piv = (r..m).find(|&i| !a[i][c].is_zero());
            let piv = match piv {
                Some(p) => p,
                None => continue,
            };
            a.swap(r, piv);
            let d = a[r][c].clone();
            for x in a[r].iter_mut() {
                *x = x.clone() / d.clone();
            }
            for i in 0..m {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for k in 0..=n {
                        let t = f.clone() * a[r][k].clone();
                        a[i][k] = a[i][k].clone() - t;
                    }
                }
            }
            pivot_col.push(c);
            r += 1;
            if r == m {
                break;
            }
        }
        // consistency: zero rows must have zero rhs
        for i in r..m {
            if !a[i][n].is_zero() {
                return None;
            }
        }
        if pivot_col.len() < n {
            return None; // underdetermined
        }
        let mut x = vec![Rational::zero(); n];
        for (row, &c) in pivot_col.iter().enumerate() {
            x[c] = a[row][n].clone();
        }
        Some(x)
    }
}

/// Smith normal form result: U * A * V = D with all transforms unimodular.
#[derive(Clone, Debug)]
pub struct Snf<I> {
    /// Diagonal entries d_1 | d_2 | ... (nonnegative; zeros trail).
    pub diag: Vec<I>,
    pub u: Mat<I>,
    pub u_inv: Mat<I>,
    pub v: Mat<I>,
    pub v_inv: Mat<I>,
}

impl<I: LatticeInt> Snf<I> {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form with transforms, by elementary operations.
pub fn smith_normal_form<I: LatticeInt>(a: &Mat<I>) -> Snf<I> {
    let (m, n) = (a.rows, a.cols);
    let mut b = a.clone();
    let mut u = Mat::identity(m);
    let mut u_inv = Mat::identity(m);
    let mut v = Mat::identity(n);
    let mut v_inv = Mat::identity(n);

    // row i -= q * row j on b and u; inverse op on u_inv columns
    let row_sub = |b: &mut Mat<I>, u: &mut Mat<I>, u_inv: &mut Mat<I>, i: usize, j: usize, q: &I| {
        for k in 0..b.cols {
            let t = q.clone() * b[(j, k)].clone();
            b[(i, k)] = b[(i, k)].clone() - t;
        }
        for k in 0..u.cols {
            let t = q.clone() * u[(j, k)].clone();
            u[(i, k)] = u[(i, k)].clone() - t;
        }
        for k in 0..u_inv.rows {
            let t = q.clone() * u_inv[(k, i)].clone();
            u_inv[(k, j)] = u_inv[(k, j)].clone() + t;
        }
    };
    let col_sub = |b: &mut Mat<I>, v: &mut Mat<I>, v_inv: &mut Mat<I>, i: usize, j: usize, q: &I| {
        // col i -= q * col j
        for k in 0..b.rows {
            let t = q.clone() * b[(k, j)].clone();
            b[(k, i)] = b[(k, i)].clone() - t;
        }
        for k in 0..v.rows {
            let t = q.clone() * v[(k, j)].clone();
            v[(k, i)] = v[(k, i)].clone() - t;
        }
        for k in 0..v_inv.cols {
            let t = q.clone() * v_inv[(i, k)].clone();
            v_inv[(j, k)] = v_inv[(j, k)].clone() + t;
        }
    };
    let row_swap = |b: &mut Mat<I>, u: &mut Mat<I>, u_inv: &mut Mat<I>, i: usize, j: usize| {
        for k in 0..b.cols {
            let t = b[(i, k)].clone();
            b[(i, k)] = b[(j, k)].clone();
            b[(j, k)] = t;
        }
        for k in 0..u.cols {
            let t = u[(i, k)].clone();
            u[(i, k)] = u[(j, k)].clone();
            u[(j, k)] = t;
        }
        for k in 0..u_inv.rows {
            let t = u_inv[(k, i)].clone();
            u_inv[(k, i)] = u_inv[(k, j)].clone();
            u_inv[(k, j)] = t;
        }
    };
    let col_swap = |b: &mut Mat<I>, v: &mut Mat<I>, v_inv: &mut Mat<I>, i: usize, j: usize| {
        for k in 0..b.rows {
            let t = b[(k, i)].clone();
            b[(k, i)] = b[(k, j)].clone();
            b[(k, j)] = t;
        }
        for k in 0..v.rows {
            let t = v[(k, i)].clone();
            v[(k, i)] = v[(k, j)].clone();
            v[(k, j)] = t;
        }
        for k in 0..v_inv.cols {
            let t = v_inv[(i, k)].clone();
            v_inv[(i, k)] = v_inv[(j, k)].clone();
            v_inv[(j, k)] = t;
        }
    };

    let dim = m.min(n);
    for t in 0..dim {
        // find the smallest nonzero pivot in the remaining block
        let pivot = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !b[(i, j)].is_zero())
            .min_by(|&x, &y| b[x].abs().cmp(&b[y].abs()));
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        if pi != t {
            row_swap(&mut b, &mut u, &mut u_inv, t, pi);
        }
        if pj != t {
            col_swap(&mut b, &mut v, &mut v_inv, t, pj);
        }
        loop {
            // clear column t
            let mut dirty = false;
            for i in t + 1..m {
                if b[(i, t)].is_zero() {
                    continue;
                }
                let q = b[(i, t)].div_floor(&b[(t, t)]);
                if !q.is_zero() {
                    row_sub(&mut b, &mut u, &mut u_inv, i, t, &q);
                }
                if !b[(i, t)].is_zero() {
                    row_swap(&mut b, &mut u, &mut u_inv, t, i);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // clear row t
            for j in t + 1..n {
                if b[(t, j)].is_zero() {
                    continue;
                }
                let q = b[(t, j)].div_floor(&b[(t, t)]);
                if !q.is_zero() {
                    col_sub(&mut b, &mut v, &mut v_inv, j, t, &q);
                }
                if !b[(t, j)].is_zero() {
                    col_swap(&mut b, &mut v, &mut v_inv, t, j);
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide every remaining entry
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&p| !b[p].mod_floor(&b[(t, t)]).is_zero());
            match bad {
                Some((i, _)) => {
                    // fold row i into row t and restart elimination at this pivot
                    let one = I::one();
                    let minus_one = -one.clone();
                    row_sub(&mut b, &mut u, &mut u_inv, t, i, &minus_one);
                }
                None => break,
            }
        }
        if b[(t, t)].is_negative() {
            // negate row t
            for k in 0..n {
                b[(t, k)] = -b[(t, k)].clone();
            }
            for k in 0..m {
                u[(t, k)] = -u[(t, k)].clone();
                u_inv[(k, t)] = -u_inv[(k, t)].clone();
            }
        }
    }
    let diag = (0..dim).map(|i| b[(i, i)].clone()).collect();
    Snf {
        diag,
        u,
        u_inv,
        v,
        v_inv,
    }
}

/// Row Hermite normal form with zero rows dropped: canonical basis of the row space.
pub fn hermite_normal_form<I: LatticeInt>(a: &Mat<I>) -> Mat<I> {
    let mut rows = a.to_rows();
    let n = a.cols;
    let mut r = 0;
    for c in 0..n {
        // gcd-reduce column c among rows r..
        loop {
            let mut idx: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if idx.is_empty() {
                break;
            }
            idx.sort_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let p = idx[0];
            rows.swap(r, p);
            let mut again = false;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                for k in 0..n {
                    let t = q.clone() * rows[r][k].clone();
                    rows[i][k] = rows[i][k].clone() - t;
                }
                if !rows[i][c].is_zero() {
                    again = true;
                }
            }
            if !again {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for k in 0..n {
                    rows[r][k] = -rows[r][k].clone();
                }
            }
            // reduce entries above the pivot into [0, pivot)
            for i in 0..r {
                let q = rows[i][c].div_floor(&rows[r][c]);
                if !q.is_zero() {
                    for k in 0..n {
                        let t = q.clone() * rows[r][k].clone();
                        rows[i][k] = rows[i][k].clone() - t;
                    }
                }
            }
            r += 1;
        }
    }
    rows.truncate(r);
    Mat::from_rows(if rows.is_empty() {
        return Mat::zero(0, n);
    } else {
        rows
    })
}

/// Basis of the integer kernel {x : A x = 0}, as rows, HNF-canonical.
pub fn integer_kernel<I: LatticeInt>(a: &Mat<I>) -> Mat<I> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let n = a.cols;
    let cols: Vec<Vec<I>> = (rank..n)
        .map(|j| (0..n).map(|i| snf.v[(i, j)].clone()).collect())
        .collect();
    if cols.is_empty() {
        return Mat::zero(0, n);
    }
    hermite_normal_form(&Mat::from_rows(cols))
}

/// Deterministic pseudo-random unimodular matrices for tests and property
/// suites (tiny xorshift; not cryptographic).
pub mod testsupport {
    use super::*;

    pub struct XorShift(pub u64);

    impl XorShift {
        pub fn next_u64(&mut self) -> u64 {
            let mut x = self.0;
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            self.0 = x;
            x
        }

        pub fn below(&mut self, n: u64) -> u64 {
            self.next_u64() % n
        }

        pub fn small(&mut self, bound: i64) -> i64 {
            (self.next_u64() % (2 * bound as u64 + 1)) as i64 - bound
        }
    }

    /// Random unimodular n x n matrix as a product of elementary operations.
    pub fn random_unimodular<I: LatticeInt>(n: usize, seed: u64, steps: usize) -> Mat<I> {
        let mut rng = XorShift(seed | 1);
        let mut m = Mat::<I>::identity(n);
        for _ in 0..steps {
            let i = rng.below(n as u64) as usize;
            let mut j = rng.below(n as u64) as usize;
            if n > 1 {
                while j == i {
                    j = rng.below(n as u64) as usize;
                }
            }
            match rng.below(3) {
                0 if n > 1 => {
                    // row i += k * row j
                    let k: I = crate::scalar::int(rng.small(2));
                    for c in 0..n {
                        let t = k.clone() * m[(j, c)].clone();
                        m[(i, c)] = m[(i, c)].clone() + t;
                    }
                }
                1 => {
                    for c in 0..n {
                        m[(i, c)] = -m[(i, c)].clone();
                    }
                }
                _ if n > 1 => {
                    for c in 0..n {
                        let t = m[(i, c)].clone();
                        m[(i, c)] = m[(j, c)].clone();
                        m[(j, c)] = t;
                    }
                }
                _ => {}
            }
        }
        m
    }
}
