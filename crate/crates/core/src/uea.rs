//! The universal enveloping algebra in PBW normal form.
//!
//! Words are nondecreasing sequences of basis indices; the basis order of a
//! realization (Cartan, positive roots, negative roots) is the PBW order.

use crate::linalg::Matrix;
use crate::rational::Q;
use crate::realization::MatrixRealization;
use num_traits::{One, Zero};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

pub type Word = Vec<usize>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UEAElement {
    pub terms: BTreeMap<Word, Q>,
}

impl UEAElement {
    pub fn zero() -> Self {
        UEAElement::default()
    }

    pub fn one() -> Self {
        UEAElement::monomial(vec![], Q::one())
    }

    pub fn monomial(w: Word, c: Q) -> Self {
        let mut x = UEAElement::zero();
        x.add_term(w, c);
        x
    }

    pub fn generator(a: usize) -> Self {
        UEAElement::monomial(vec![a], Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, o: &UEAElement, c: &Q) {
        for (w, x) in &o.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn add(&self, o: &UEAElement) -> UEAElement {
        let mut r = self.clone();
        r.add_scaled(o, &Q::one());
        r
    }

    pub fn sub(&self, o: &UEAElement) -> UEAElement {
        let mut r = self.clone();
        r.add_scaled(o, &-Q::one());
        r
    }

    pub fn scale(&self, c: &Q) -> UEAElement {
        let mut r = UEAElement::zero();
        r.add_scaled(self, c);
        r
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }
}

/// PBW straightening for one realization, with memoized normal forms of words.
pub struct Pbw<'a> {
    pub g: &'a MatrixRealization,
    memo: RefCell<HashMap<Word, UEAElement>>,
}

impl<'a> Pbw<'a> {
    pub fn new(g: &'a MatrixRealization) -> Self {
        Pbw { g, memo: RefCell::new(HashMap::new()) }
    }

    /// Normal form of the product `B_{w_1} ... B_{w_k}`.
    pub fn normal_form(&self, w: &[usize]) -> UEAElement {
        let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) else {
            return UEAElement::monomial(w.to_vec(), Q::one());
        };
        if let Some(x) = self.memo.borrow().get(w) {
            return x.clone();
        }
        // B_a B_b = B_b B_a + [B_a, B_b]
        let mut swapped = w.to_vec();
        swapped.swap(i, i + 1);
        let mut out = self.normal_form(&swapped);
        for (c, x) in self.g.brackets[w[i]][w[i + 1]].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mut shorter = w[..i].to_vec();
            shorter.push(c);
            shorter.extend_from_slice(&w[i + 2..]);
            out.add_scaled(&self.normal_form(&shorter), x);
        }
        self.memo.borrow_mut().insert(w.to_vec(), out.clone());
        out
    }

    pub fn mul(&self, x: &UEAElement, y: &UEAElement) -> UEAElement {
        let mut out = UEAElement::zero();
        for (u, a) in &x.terms {
            for (v, b) in &y.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_scaled(&self.normal_form(&w), &(a * b));
            }
        }
        out
    }

    pub fn commutator(&self, x: &UEAElement, y: &UEAElement) -> UEAElement {
        self.mul(x, y).sub(&self.mul(y, x))
    }

    /// `sum_{c,d} t_{cd} B_c B_d` in normal form.
    pub fn quadratic(&self, t: &Matrix) -> UEAElement {
        let mut out = UEAElement::zero();
        for c in 0..t.rows {
            for d in 0..t.cols {
                let x = &t[(c, d)];
                if !x.is_zero() {
                    out.add_scaled(&self.normal_form(&[c, d]), x);
                }
            }
        }
        out
    }

    pub fn linear(&self, v: &[Q]) -> UEAElement {
        let mut out = UEAElement::zero();
        for (a, x) in v.iter().enumerate() {
            out.add_term(vec![a], x.clone());
        }
        out
    }

    /// Applies the automorphism with matrix `sigma` (basis coordinates) to `x`.
    pub fn apply_automorphism(&self, sigma: &Matrix, x: &UEAElement) -> UEAElement {
        let images: Vec<UEAElement> = (0..sigma.cols).map(|a| self.linear(&sigma.col(a))).collect();
        let mut out = UEAElement::zero();
        for (w, c) in &x.terms {
            let mut p = UEAElement::one();
            for &a in w {
                p = self.mul(&p, &images[a]);
            }
            out.add_scaled(&p, c);
        }
        out
    }
}

/// Image of `x` in a representation given by the images of the basis.
pub fn represent(x: &UEAElement, images: &[Matrix]) -> Matrix {
    let n = images[0].rows;
    let mut out = Matrix::zeros(n, n);
    for (w, c) in &x.terms {
        let mut m = Matrix::identity(n);
        for &a in w {
            m = m.mul(&images[a]);
        }
        out.add_scaled(c, &m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::realization::realization;

    #[test]
    fn straightening_in_sl2() {
        let g = realization("sl2").unwrap();
        let p = Pbw::new(&g);
        // basis [h, e, f]: f e = e f - h
        let fe = p.normal_form(&[2, 1]);
        let want = UEAElement::monomial(vec![1, 2], Q::one()).sub(&UEAElement::generator(0));
        assert_eq!(fe, want);
        // e h = h e - 2 e
        let eh = p.normal_form(&[1, 0]);
        let want = UEAElement::monomial(vec![0, 1], Q::one()).sub(&UEAElement::generator(1).scale(&q(2)));
        assert_eq!(eh, want);
    }

    #[test]
    fn product_is_associative_and_matches_matrices() {
        let g = realization("sl3").unwrap();
        let p = Pbw::new(&g);
        let x = p.normal_form(&[7, 3, 1]);
        let y = p.normal_form(&[5, 0]);
        let z = p.normal_form(&[6, 2]);
        assert_eq!(p.mul(&p.mul(&x, &y), &z), p.mul(&x, &p.mul(&y, &z)));
        let lhs = represent(&p.mul(&x, &y), &g.basis);
        let rhs = represent(&x, &g.basis).mul(&represent(&y, &g.basis));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn casimir_is_central() {
        let g = realization("sp4").unwrap();
        let p = Pbw::new(&g);
        let c = p.quadratic(&g.kappa_inv);
        for a in 0..g.dim() {
            assert!(p.commutator(&c, &UEAElement::generator(a)).is_zero());
        }
    }
}
