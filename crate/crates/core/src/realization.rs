//! Classical Lie algebras as explicit matrix algebras with a Chevalley basis.
//!
//! `sl_n` uses `e_i = E_{i,i+1}`. The diagram automorphism is
//! `sigma(X) = -J X^T J^{-1}` with `J` antidiagonal, `J_{k,n+1-k} = (-1)^{k+1}`,
//! which fixes the pinning. The folded algebras `so_3`, `so_5`, `sp_4`, ...
//! are the fixed subalgebras, generated by `f_eta = sum f_i` and
//! `e_eta = c_eta sum e_i` (`c_eta = 2` for an orbit of two adjacent nodes).

use crate::error::{Error, Result};
use crate::folding::{validate_automorphism, DiagramAutomorphism};
use crate::linalg::{independent_subset, Matrix};
use crate::rational::{as_i64, q, Q};
use crate::rootdata::{build_root_datum, positive_roots_of, CartanMatrix, Isogeny, RootDatum, Series};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct SigmaData {
    pub automorphism: DiagramAutomorphism,
    /// Matrix of sigma in basis coordinates.
    pub matrix: Matrix,
}

#[derive(Clone, Debug)]
pub struct MatrixRealization {
    pub name: String,
    /// Size of the defining matrices.
    pub n: usize,
    pub rank: usize,
    pub cartan: CartanMatrix,
    /// `[h_1..h_l, x_beta (beta > 0, by height), y_beta (same order)]`.
    pub basis: Vec<Matrix>,
    /// `x_beta = [e_{w_1}, [e_{w_2}, ... e_{w_k}]]` and likewise for `y_beta` with `f`.
    pub root_words: Vec<Vec<usize>>,
    /// Positive roots in simple-root coordinates.
    pub roots: Vec<Vec<i64>>,
    /// Trace form of the defining representation.
    pub kappa: Matrix,
    pub kappa_inv: Matrix,
    /// `brackets[a][b]` = coordinates of `[B_a, B_b]`.
    pub brackets: Vec<Vec<Vec<Q>>>,
    pub sigma: Option<SigmaData>,
    /// Columns: coordinates of this basis inside the parent algebra.
    pub embedding: Option<(String, Matrix)>,
    coord_rows: Vec<usize>,
    coord_inv: Matrix,
}

pub const ALGEBRAS: &[&str] = &["sl2", "sl3", "sl4", "sl5", "sl6", "sl7", "so3", "so5", "so7", "sp4", "sp6"];

fn unit_matrix(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = Q::one();
    m
}

fn ratio(a: &Matrix, b: &Matrix) -> Option<Q> {
    // a = r b
    let k = b.flat().iter().position(|x| !x.is_zero())?;
    let r = &a.flat()[k] / &b.flat()[k];
    (b.scale(&r) == *a).then_some(r)
}

impl MatrixRealization {
    /// Builds the algebra generated by the given Chevalley generators.
    pub fn from_chevalley(name: &str, e: Vec<Matrix>, f: Vec<Matrix>) -> Result<Self> {
        let l = e.len();
        let n = e[0].rows;
        let h: Vec<Matrix> = (0..l).map(|i| e[i].bracket(&f[i])).collect();
        let mut a = vec![vec![0i64; l]; l];
        for i in 0..l {
            for j in 0..l {
                let r = ratio(&h[i].bracket(&e[j]), &e[j]).ok_or_else(|| Error::failed("generators are not a Chevalley system"))?;
                a[i][j] = as_i64(&r).ok_or_else(|| Error::failed("non-integral Cartan entry"))?;
                if ratio(&h[i].bracket(&f[j]), &f[j]) != Some(q(-a[i][j])) {
                    return Err(Error::failed("generators are not a Chevalley system"));
                }
            }
        }
        let cartan = CartanMatrix::new(a)?;
        let expected = positive_roots_of(&cartan);
        // bracket words by height
        let mut found: BTreeMap<Vec<i64>, (Vec<usize>, Matrix, Matrix)> = BTreeMap::new();
        let mut level: Vec<Vec<i64>> = vec![];
        for i in 0..l {
            let r: Vec<i64> = (0..l).map(|k| i64::from(k == i)).collect();
            found.insert(r.clone(), (vec![i], e[i].clone(), f[i].clone()));
            level.push(r);
        }
        while !level.is_empty() {
            let mut next = vec![];
            for r in &level {
                for i in 0..l {
                    let mut r2 = r.clone();
                    r2[i] += 1;
                    if found.contains_key(&r2) {
                        continue;
                    }
                    let (w, x, y) = &found[r];
                    let x2 = e[i].bracket(x);
                    if x2.is_zero() {
                        continue;
                    }
                    let mut w2 = vec![i];
                    w2.extend(w);
                    let y2 = f[i].bracket(y);
                    found.insert(r2.clone(), (w2, x2, y2));
                    next.push(r2);
                }
            }
            level = next;
        }
        if found.len() != expected.len() || expected.iter().any(|r| !found.contains_key(r)) {
            return Err(Error::failed("root system of the generated algebra is not the expected one"));
        }
        let mut basis = h.clone();
        let mut root_words = vec![];
        let mut negs = vec![];
        for r in &expected {
            let (w, x, y) = &found[r];
            basis.push(x.clone());
            negs.push(y.clone());
            root_words.push(w.clone());
        }
        basis.extend(negs);
        let dim = basis.len();
        let flats: Vec<Vec<Q>> = basis.iter().map(|b| b.flat().to_vec()).collect();
        if independent_subset(&flats).len() != dim {
            return Err(Error::failed("basis is linearly dependent"));
        }
        // dim independent coordinate rows of the n^2 x dim matrix
        let m = Matrix::from_cols(&flats);
        let coord_rows = independent_subset(&m.to_rows());
        let sub = Matrix::from_rows(&coord_rows.iter().map(|&r| m.row(r)).collect::<Vec<_>>());
        let coord_inv = sub.inverse().ok_or_else(|| Error::failed("coordinate system is singular"))?;
        let kappa = Matrix::from_rows(&basis.iter().map(|x| basis.iter().map(|y| x.mul(y).trace()).collect()).collect::<Vec<_>>());
        let kappa_inv = kappa.inverse().ok_or_else(|| Error::failed("trace form is degenerate"))?;
        let mut g = MatrixRealization {
            name: name.to_string(),
            n,
            rank: l,
            cartan,
            basis,
            root_words,
            roots: expected,
            kappa,
            kappa_inv,
            brackets: vec![],
            sigma: None,
            embedding: None,
            coord_rows,
            coord_inv,
        };
        let mut brackets = vec![vec![vec![]; dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let c = g.basis[a].bracket(&g.basis[b]);
                brackets[a][b] = g.coords_checked(&c).ok_or_else(|| Error::failed("basis is not closed under brackets"))?;
            }
        }
        g.brackets = brackets;
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn npos(&self) -> usize {
        self.roots.len()
    }

    pub fn dim_b(&self) -> usize {
        self.rank + self.npos()
    }

    pub fn e_index(&self, i: usize) -> usize {
        self.rank + i
    }

    pub fn f_index(&self, i: usize) -> usize {
        self.rank + self.npos() + i
    }

    /// ad rho^vee degree of a basis element.
    pub fn degree(&self, a: usize) -> i64 {
        let l = self.rank;
        let p = self.npos();
        if a < l {
            0
        } else if a < l + p {
            self.roots[a - l].iter().sum()
        } else {
            -self.roots[a - l - p].iter().sum::<i64>()
        }
    }

    pub fn coords(&self, x: &Matrix) -> Vec<Q> {
        let v: Vec<Q> = self.coord_rows.iter().map(|&r| x.flat()[r].clone()).collect();
        self.coord_inv.mul_vec(&v)
    }

    /// Coordinates, or `None` if `x` is not in the algebra.
    pub fn coords_checked(&self, x: &Matrix) -> Option<Vec<Q>> {
        let c = self.coords(x);
        (self.element(&c) == *x).then_some(c)
    }

    pub fn element(&self, c: &[Q]) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for (b, x) in self.basis.iter().zip(c) {
            if !x.is_zero() {
                m.add_scaled(x, b);
            }
        }
        m
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let d = self.dim();
        let mut out = vec![Q::zero(); d];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let s = xa * yb;
                for (k, c) in self.brackets[a][b].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &s * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad x` in basis coordinates.
    pub fn ad(&self, x: &[Q]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for b in 0..d {
            let mut e = vec![Q::zero(); d];
            e[b] = Q::one();
            let col = self.bracket(x, &e);
            for (k, v) in col.into_iter().enumerate() {
                m[(k, b)] = v;
            }
        }
        m
    }

    pub fn kappa_pair(&self, x: &[Q], y: &[Q]) -> Q {
        self.kappa.mul_vec(y).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// Regular means the centralizer has dimension equal to the rank.
    pub fn is_regular(&self, x: &[Q]) -> bool {
        self.ad(x).rank() == self.dim() - self.rank
    }

    /// Images of all basis elements in a representation given by the
    /// images of the Chevalley generators.
    pub fn represent(&self, e: &[Matrix], f: &[Matrix]) -> Vec<Matrix> {
        let l = self.rank;
        let mut out: Vec<Matrix> = (0..l).map(|i| e[i].bracket(&f[i])).collect();
        let word = |gens: &[Matrix], w: &[usize]| {
            let mut m = gens[*w.last().unwrap()].clone();
            for &i in w.iter().rev().skip(1) {
                m = gens[i].bracket(&m);
            }
            m
        };
        for w in &self.root_words {
            out.push(word(e, w));
        }
        for w in &self.root_words {
            out.push(word(f, w));
        }
        out
    }

    /// Root datum (simply connected) with this Cartan matrix.
    pub fn datum(&self) -> RootDatum {
        let l = self.rank;
        let id: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| i64::from(i == j)).collect()).collect();
        let mut d = RootDatum {
            label: self.cartan.label(),
            cartan: self.cartan.clone(),
            roots: (0..l).map(|i| (0..l).map(|j| self.cartan.get(j, i)).collect()).collect(),
            coroots: id.clone(),
            pairing: id,
            isogeny: Isogeny::SimplyConnected,
            x_basis: crate::rootdata::LatticeBasis::Fundamental,
            xv_basis: crate::rootdata::LatticeBasis::SimpleRoot,
        };
        if let Some(t) = d.label {
            if let Ok(std) = build_root_datum(t.series, t.rank, Isogeny::SimplyConnected) {
                if std.cartan == d.cartan {
                    d = std;
                }
            }
        }
        d
    }

    /// Element `sum_i c_i h_i` of the Cartan subalgebra.
    pub fn cartan_element(&self, c: &[Q]) -> Vec<Q> {
        let mut x = vec![Q::zero(); self.dim()];
        x[..self.rank].clone_from_slice(c);
        x
    }

    /// Parses an element: full coordinates, Cartan coordinates, or a diagonal matrix.
    pub fn parse_element(&self, v: &[Q]) -> Result<Vec<Q>> {
        if v.len() == self.dim() {
            Ok(v.to_vec())
        } else if v.len() == self.rank {
            Ok(self.cartan_element(v))
        } else if v.len() == self.n {
            let mut m = Matrix::zeros(self.n, self.n);
            for (i, x) in v.iter().enumerate() {
                m[(i, i)] = x.clone();
            }
            self.coords_checked(&m).ok_or_else(|| Error::invalid(format!("diag{v:?} is not in {}", self.name)))
        } else {
            Err(Error::invalid(format!(
                "element of {} needs {} (full), {} (Cartan) or {} (diagonal) coordinates",
                self.name,
                self.dim(),
                self.rank,
                self.n
            )))
        }
    }
}

fn antidiagonal_j(n: usize) -> Matrix {
    let mut j = Matrix::zeros(n, n);
    for k in 0..n {
        j[(k, n - 1 - k)] = if k % 2 == 0 { Q::one() } else { -Q::one() };
    }
    j
}

/// `X |-> -J X^T J^{-1}`.
pub fn sigma_matrix_action(n: usize, x: &Matrix) -> Matrix {
    let j = antidiagonal_j(n);
    let jinv = j.inverse().unwrap();
    j.mul(&x.transpose()).mul(&jinv).scale(&-Q::one())
}

pub fn sl(n: usize) -> Result<MatrixRealization> {
    if n < 2 {
        return Err(Error::invalid("sl_n needs n >= 2"));
    }
    let e: Vec<Matrix> = (0..n - 1).map(|i| unit_matrix(n, i, i + 1)).collect();
    let f: Vec<Matrix> = (0..n - 1).map(|i| unit_matrix(n, i + 1, i)).collect();
    let mut g = MatrixRealization::from_chevalley(&format!("sl{n}"), e, f)?;
    let datum = build_root_datum(Series::A, n - 1, Isogeny::SimplyConnected)?;
    let flip: Vec<usize> = (0..n - 1).rev().collect();
    let automorphism = validate_automorphism(&flip, &datum)?;
    let cols: Vec<Vec<Q>> = g.basis.iter().map(|b| g.coords(&sigma_matrix_action(n, b))).collect();
    let matrix = Matrix::from_cols(&cols);
    for i in 0..n - 1 {
        let j = flip[i];
        if sigma_matrix_action(n, &g.basis[g.e_index(i)]) != g.basis[g.e_index(j)]
            || sigma_matrix_action(n, &g.basis[g.f_index(i)]) != g.basis[g.f_index(j)]
        {
            return Err(Error::failed("sigma does not preserve the pinning"));
        }
    }
    g.sigma = Some(SigmaData { automorphism, matrix });
    Ok(g)
}

/// The sigma-fixed subalgebra of `parent` with its folded Chevalley generators.
pub fn fold_realization(parent: &MatrixRealization, name: &str) -> Result<MatrixRealization> {
    let sigma = parent.sigma.as_ref().ok_or_else(|| Error::invalid(format!("{} has no automorphism", parent.name)))?;
    let orbits = sigma.automorphism.orbits(&parent.cartan);
    let mut e = vec![];
    let mut f = vec![];
    for o in &orbits {
        let c = if o.adjacent_pair { q(2) } else { Q::one() };
        let mut eo = Matrix::zeros(parent.n, parent.n);
        let mut fo = Matrix::zeros(parent.n, parent.n);
        for &i in &o.nodes {
            eo = eo.add(&parent.basis[parent.e_index(i)]);
            fo = fo.add(&parent.basis[parent.f_index(i)]);
        }
        e.push(eo.scale(&c));
        f.push(fo);
    }
    let mut g = MatrixRealization::from_chevalley(name, e, f)?;
    let cols: Vec<Vec<Q>> = g.basis.iter().map(|b| parent.coords_checked(b).expect("subalgebra")).collect();
    g.embedding = Some((parent.name.clone(), Matrix::from_cols(&cols)));
    Ok(g)
}

/// Looks up a shipped realization by name.
pub fn realization(name: &str) -> Result<MatrixRealization> {
    let name = name.trim().to_ascii_lowercase();
    let folded = |n: usize| -> Result<MatrixRealization> { fold_realization(&sl(n)?, &name) };
    match name.as_str() {
        "sl2" | "sl3" | "sl4" | "sl5" | "sl6" | "sl7" => sl(name[2..].parse().unwrap()),
        "so3" => folded(3),
        "so5" => folded(5),
        "so7" => folded(7),
        "sp4" => folded(4),
        "sp6" => folded(6),
        _ => Err(Error::unsupported(format!("unknown algebra {name:?}; supported: {}", ALGEBRAS.join(", ")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::CartanType;

    #[test]
    fn dimensions_and_types() {
        for (name, dim, t) in [
            ("sl2", 3, "A1"),
            ("sl3", 8, "A2"),
            ("sl4", 15, "A3"),
            ("sl5", 24, "A4"),
            ("so3", 3, "A1"),
            ("sp4", 10, "C2"),
            ("so5", 10, "B2"),
            ("sp6", 21, "C3"),
            ("so7", 21, "B3"),
        ] {
            let g = realization(name).unwrap();
            assert_eq!(g.dim(), dim, "{name}");
            let ids: Vec<String> = g.cartan.identify().iter().map(CartanType::to_string).collect();
            assert!(ids.contains(&t.to_string()), "{name}: {ids:?}");
        }
        assert_eq!(realization("sp4").unwrap().cartan.entries(), &[vec![2, -2], vec![-1, 2]]);
        assert_eq!(realization("so5").unwrap().cartan.entries(), &[vec![2, -1], vec![-2, 2]]);
    }

    #[test]
    fn trace_form_is_invariant() {
        for name in ["sl3", "sp4", "so5"] {
            let g = realization(name).unwrap();
            let d = g.dim();
            let unit = |a: usize| (0..d).map(|k| if k == a { Q::one() } else { Q::zero() }).collect::<Vec<_>>();
            for x in 0..d {
                for y in 0..d {
                    for z in 0..d {
                        let lhs = g.kappa_pair(&g.bracket(&unit(x), &unit(y)), &unit(z)) + g.kappa_pair(&unit(y), &g.bracket(&unit(x), &unit(z)));
                        assert!(lhs.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_is_an_automorphism() {
        let g = realization("sl4").unwrap();
        let s = &g.sigma.as_ref().unwrap().matrix;
        let d = g.dim();
        for a in 0..d {
            for b in 0..d {
                let sa = s.col(a);
                let sb = s.col(b);
                let lhs = g.bracket(&sa, &sb);
                let rhs = s.mul_vec(&g.brackets[a][b]);
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(s.transpose().mul(&g.kappa).mul(s), g.kappa);
    }

    #[test]
    fn fixed_subalgebra_is_folded_basis() {
        for (p, c) in [("sl3", "so3"), ("sl4", "sp4"), ("sl5", "so5")] {
            let parent = realization(p).unwrap();
            let child = realization(c).unwrap();
            let s = &parent.sigma.as_ref().unwrap().matrix;
            let fixed = s.sub(&Matrix::identity(parent.dim())).kernel();
            let emb = &child.embedding.as_ref().unwrap().1;
            let cols: Vec<Vec<Q>> = (0..emb.cols).map(|k| emb.col(k)).collect();
            assert!(crate::linalg::same_span(&fixed, &cols), "{p}");
        }
    }
}
