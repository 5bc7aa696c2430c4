//! Dense exact linear algebra over the rationals.

use crate::modp;
use crate::rational::{q, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let rs: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Self::from_rows(&rs)
    }

    pub fn from_cols(cols: &[Vec<Q>]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn row(&self, r: usize) -> Vec<Q> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    /// The principal submatrix on `idx`.
    pub fn principal(&self, idx: &[usize]) -> Matrix {
        let rows: Vec<Vec<Q>> = idx.iter().map(|&i| idx.iter().map(|&j| self[(i, j)].clone()).collect()).collect();
        Matrix::from_rows(&rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Q::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = &self[(i, k)];
                    if !a.is_zero() && !x.is_zero() {
                        s += a * x;
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &Q, other: &Matrix) {
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += s * b;
            }
        }
    }

    /// Commutator `[self, other]`.
    pub fn bracket(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Entries in row-major order.
    pub fn flat(&self) -> &[Q] {
        &self.data
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &f * &self[(r, j)];
                    self[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : self x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self x = b`, if one exists.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug[(i, self.cols)].clone();
        }
        Some(x)
    }

    /// Solves `self X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        let mut aug = Matrix::zeros(self.rows, self.cols + b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..b.cols {
                aug[(i, self.cols + j)] = b[(i, j)].clone();
            }
        }
        let pivots = aug.rref_in_place();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = aug[(i, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let x = self.solve_matrix(&Matrix::identity(self.rows))?;
        if self.rank() == self.rows {
            Some(x)
        } else {
            None
        }
    }

    pub fn det(&self) -> Q {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Q::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..n {
                    let v = &f * &m[(c, j)];
                    m[(i, j)] -= v;
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(x I - self)`, coefficients from the
    /// constant term upwards. The matrix is scaled to an integer one, whose
    /// characteristic polynomial is found modulo enough primes to pass a
    /// Hadamard bound on its coefficients.
    pub fn charpoly(&self) -> Vec<Q> {
        assert!(self.is_square());
        let n = self.rows;
        let den = self.data.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<BigInt> = self.data.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        // every principal minor is at most the product of the row 1-norms
        let bits: u64 = (0..n)
            .map(|r| ints[r * n..(r + 1) * n].iter().map(|x| x.abs()).sum::<BigInt>().max(BigInt::one()).bits())
            .sum::<u64>()
            + n as u64
            + 2;
        let mut crt = modp::Crt::new(n + 1);
        for p in modp::primes() {
            if crt.modulus.bits() > bits {
                break;
            }
            let m: Vec<u64> = ints.iter().map(|x| modp::reduce(x, p)).collect();
            crt.push(&charpoly_mod(m, n, p), p);
        }
        // det(x I - M) = den^-n det(y I - den M) at y = den x
        crt.symmetric()
            .into_iter()
            .enumerate()
            .map(|(k, c)| Q::new(c, den.pow((n - k) as u32)))
            .collect()
    }
}

/// Characteristic polynomial over `F_p` of a row-major `n x n` matrix, via
/// reduction to Hessenberg form.
fn charpoly_mod(mut h: Vec<u64>, n: usize, p: u64) -> Vec<u64> {
    for c in 0..n.saturating_sub(2) {
        let Some(piv_row) = (c + 1..n).find(|&i| h[i * n + c] != 0) else {
            continue;
        };
        let r = c + 1;
        if piv_row != r {
            for j in 0..n {
                h.swap(piv_row * n + j, r * n + j);
            }
            for i in 0..n {
                h.swap(i * n + piv_row, i * n + r);
            }
        }
        let pinv = modp::inv(h[r * n + c], p);
        for i in c + 2..n {
            if h[i * n + c] == 0 {
                continue;
            }
            let f = modp::mul(h[i * n + c], pinv, p);
            for j in 0..n {
                h[i * n + j] = modp::sub(h[i * n + j], modp::mul(f, h[r * n + j], p), p);
            }
            for k in 0..n {
                h[k * n + r] = modp::add(h[k * n + r], modp::mul(f, h[k * n + i], p), p);
            }
        }
    }
    // p_{k+1} = (x - h_kk) p_k - sum_{i<k} h_{i,k} prod_{j=i+1..k} h_{j,j-1} p_i
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let mut next = vec![0u64; k + 2];
        for (d, &c) in polys[k].iter().enumerate() {
            next[d + 1] = modp::add(next[d + 1], c, p);
            next[d] = modp::sub(next[d], modp::mul(h[k * n + k], c, p), p);
        }
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = modp::mul(prod, h[(i + 1) * n + i], p);
            if prod == 0 {
                break;
            }
            let coef = modp::mul(h[i * n + k], prod, p);
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = modp::sub(next[d], modp::mul(coef, c, p), p);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Rank of a list of vectors.
pub fn rank_of(vectors: &[Vec<Q>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors).rank()
}

/// Indices of a greedy maximal linearly independent subfamily, in order.
pub fn independent_subset(vectors: &[Vec<Q>]) -> Vec<usize> {
    if vectors.is_empty() {
        return vec![];
    }
    let m = Matrix::from_cols(vectors);
    m.rref().1
}

/// Whether the span of `a` equals the span of `b`.
pub fn same_span(a: &[Vec<Q>], b: &[Vec<Q>]) -> bool {
    let ra = rank_of(a);
    let rb = rank_of(b);
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    ra == rb && rank_of(&all) == ra
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    #[test]
    fn kernel_and_rank() {
        let m = Matrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn det_and_inverse() {
        let m = Matrix::from_i64(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(m.det(), q(4));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        assert_eq!(inv[(0, 0)], qf(3, 4));
    }

    #[test]
    fn charpoly_matches_companion() {
        // companion matrix of x^3 - 2x^2 + 5x - 7
        let m = Matrix::from_i64(&[vec![0, 0, 7], vec![1, 0, -5], vec![0, 1, 2]]);
        assert_eq!(m.charpoly(), vec![q(-7), q(5), q(-2), q(1)]);
    }

    #[test]
    fn charpoly_against_determinant_expansion() {
        let m = Matrix::from_i64(&[
            vec![1, 2, 0, 3],
            vec![-1, 0, 4, 1],
            vec![2, 2, 1, 0],
            vec![0, 5, -3, 2],
        ]);
        let cp = m.charpoly();
        for x in -3i64..=3 {
            let shifted = Matrix::identity(4).scale(&q(x)).sub(&m);
            let val: Q = cp.iter().enumerate().map(|(d, c)| c * q(x.pow(d as u32))).sum();
            assert_eq!(val, shifted.det());
        }
    }

    #[test]
    fn solve_inconsistent() {
        let m = Matrix::from_i64(&[vec![1, 1], vec![2, 2]]);
        assert!(m.solve(&[q(1), q(3)]).is_none());
        assert!(m.solve(&[q(1), q(2)]).is_some());
    }
}
