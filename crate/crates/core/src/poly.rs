//! Sparse multivariate polynomials with exact rational coefficients.

use crate::linalg::Matrix;
use crate::rational::{q, Q};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector, one entry per variable.
pub type Mono = Vec<u8>;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Mono, Q>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(m, Q::one());
        p
    }

    pub fn linear(coeffs: &[Q]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut m = vec![0; n];
                m[i] = 1;
                p.terms.insert(m, c.clone());
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.iter().map(|&e| e as usize).sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut d = None;
        for m in self.terms.keys() {
            let k: usize = m.iter().map(|&e| e as usize).sum();
            if *d.get_or_insert(k) != k {
                return false;
            }
        }
        true
    }

    pub fn constant_term(&self) -> Q {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn add_assign_scaled(&mut self, o: &Poly, s: &Q) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_assign_scaled(o, &-Q::one());
        r
    }

    pub fn scale(&self, s: &Q) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                r.add_term(m, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut r = Poly::constant(self.nvars, Q::one());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn partial(&self, i: usize) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut m2 = m.clone();
                m2[i] -= 1;
                r.add_term(m2, c * q(m[i] as i64));
            }
        }
        r
    }

    /// `sum_i v_i d/dx_i`.
    pub fn directional(&self, v: &[Q]) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (i, vi) in v.iter().enumerate() {
            if !vi.is_zero() {
                r.add_assign_scaled(&self.partial(i), vi);
            }
        }
        r
    }

    /// Directional derivative along a vector field with polynomial components.
    pub fn along_field(&self, field: &[Poly]) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (i, fi) in field.iter().enumerate() {
            if !fi.is_zero() {
                let d = self.partial(i);
                if !d.is_zero() {
                    r = r.add(&d.mul(fi));
                }
            }
        }
        r
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        let mut s = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t *= &x[i];
                }
            }
            s += t;
        }
        s
    }

    /// Replaces variable `i` by `images[i]`, all polynomials in a common ring.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let nv = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: BTreeMap<(usize, u8), Poly> = BTreeMap::new();
        let mut r = Poly::zero(nv);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(nv, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache.entry((i, e)).or_insert_with(|| images[i].pow(e as usize)).clone();
                t = t.mul(&p);
            }
            r = r.add(&t);
        }
        r
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: usize) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().map(|&e| e as usize).sum::<usize>() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `x_i^k` viewed as a polynomial in the remaining variables.
    pub fn coefficient_of_power(&self, i: usize, k: u8) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] == k {
                let mut m2 = m.clone();
                m2[i] = 0;
                r.add_term(m2, c.clone());
            }
        }
        r
    }

    /// Drops trailing variables, which must not occur.
    pub fn truncate_vars(&self, nvars: usize) -> Poly {
        let mut r = Poly::zero(nvars);
        for (m, c) in &self.terms {
            debug_assert!(m[nvars..].iter().all(|&e| e == 0));
            r.add_term(m[..nvars].to_vec(), c.clone());
        }
        r
    }

    /// Linear part as a coefficient vector, if the polynomial is linear homogeneous.
    pub fn as_linear(&self) -> Option<Vec<Q>> {
        let mut v = vec![Q::zero(); self.nvars];
        for (m, c) in &self.terms {
            let d: usize = m.iter().map(|&e| e as usize).sum();
            if d != 1 {
                return None;
            }
            let i = m.iter().position(|&e| e == 1).unwrap();
            v[i] = c.clone();
        }
        Some(v)
    }

    /// Symmetric matrix `Q` with `p(x) = x^T Q x`, if `p` is a quadratic form.
    pub fn as_quadratic(&self) -> Option<Matrix> {
        let n = self.nvars;
        let mut m = Matrix::zeros(n, n);
        for (mono, c) in &self.terms {
            let idx: Vec<usize> = mono.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect();
            match idx.as_slice() {
                [i, j] if i == j => m[(*i, *i)] = c.clone(),
                [i, j] => {
                    let h = c / q(2);
                    m[(*i, *j)] = h.clone();
                    m[(*j, *i)] = h;
                }
                _ => return None,
            }
        }
        Some(m)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    coeff: c.to_string(),
                    monomial: m.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| [i, e as usize]).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TermJson {
    pub coeff: String,
    /// `[variable, exponent]` pairs.
    pub monomial: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

/// Determinant of a square matrix of polynomials by cofactor expansion over
/// column subsets (memoized minors).
pub fn det(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let n = m.len();
    let mut memo: BTreeMap<(usize, u64), Poly> = BTreeMap::new();
    fn minor(m: &[Vec<Poly>], row: usize, cols: u64, nvars: usize, memo: &mut BTreeMap<(usize, u64), Poly>) -> Poly {
        let n = m.len();
        if row == n {
            return Poly::constant(nvars, Q::one());
        }
        if let Some(p) = memo.get(&(row, cols)) {
            return p.clone();
        }
        let mut r = Poly::zero(nvars);
        let mut sign = 1i64;
        for j in 0..n {
            if cols & (1 << j) == 0 {
                continue;
            }
            if !m[row][j].is_zero() {
                let sub = minor(m, row + 1, cols & !(1 << j), nvars, memo);
                if !sub.is_zero() {
                    r.add_assign_scaled(&m[row][j].mul(&sub), &q(sign));
                }
            }
            sign = -sign;
        }
        memo.insert((row, cols), r.clone());
        r
    }
    minor(m, 0, (1u64 << n) - 1, nvars, &mut memo)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_derivatives() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.mul(&x).mul(&y).add(&y.scale(&q(3)));
        assert_eq!(p.partial(0), x.mul(&y).scale(&q(2)));
        assert_eq!(p.eval(&[q(2), q(5)]), q(35));
        assert_eq!(p.degree(), Some(3));
        let d = p.directional(&[q(1), q(1)]);
        assert_eq!(d.eval(&[q(2), q(5)]), q(20 + 4 + 3));
        let s = p.substitute(&[y.clone(), x.clone()]);
        assert_eq!(s.eval(&[q(2), q(5)]), q(25 * 2 + 6));
    }

    #[test]
    fn determinant_of_generic_2x2() {
        let v = |i| Poly::var(4, i);
        let m = vec![vec![v(0), v(1)], vec![v(2), v(3)]];
        let d = det(&m, 4);
        assert_eq!(d, v(0).mul(&v(3)).sub(&v(1).mul(&v(2))));
    }

    #[test]
    fn quadratic_form_roundtrip() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.mul(&y).scale(&q(4)).add(&y.mul(&y));
        let m = p.as_quadratic().unwrap();
        assert_eq!(m[(0, 1)], q(2));
        assert_eq!(m[(1, 1)], q(1));
    }
}
