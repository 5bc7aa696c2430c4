//! Root data of finite type, Weyl group actions and dominant weights.
//!
//! Conventions: nodes use Bourbaki numbering (0-based in code), and the
//! Cartan matrix is `a_ij = <alpha_i^vee, alpha_j>`, so that
//! `<alpha_i, alpha_j^vee> = a_ji`. A root datum stores the simple roots in
//! coordinates of a chosen basis of `X`, the simple coroots in coordinates of
//! a basis of `X^vee`, and the integer pairing matrix between the two bases.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{q, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn parse(s: &str) -> Result<Series> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "E" => Ok(Series::E),
            "F" => Ok(Series::F),
            "G" => Ok(Series::G),
            other => Err(Error::invalid(format!("unknown series {other:?}"))),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
    Other,
}

impl Isogeny {
    pub fn parse(s: &str) -> Result<Isogeny> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sc" | "simply_connected" | "simply-connected" => Ok(Isogeny::SimplyConnected),
            "ad" | "adj" | "adjoint" => Ok(Isogeny::Adjoint),
            "other" => Ok(Isogeny::Other),
            other => Err(Error::invalid(format!("unknown isogeny {other:?}"))),
        }
    }
}

/// How the integer coordinates of a lattice element are to be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeBasis {
    /// Fundamental (co)weights.
    Fundamental,
    /// Simple (co)roots.
    SimpleRoot,
    /// A basis attached to the construction, e.g. orbit classes after folding.
    Lattice,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let m = CartanMatrix { entries };
        m.validate()?;
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn transpose(&self) -> CartanMatrix {
        let n = self.rank();
        CartanMatrix { entries: (0..n).map(|i| (0..n).map(|j| self.entries[j][i]).collect()).collect() }
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_i64(&self.entries)
    }

    pub fn det(&self) -> i64 {
        crate::rational::as_i64(&self.to_matrix().det()).expect("integral determinant")
    }

    fn validate(&self) -> Result<()> {
        let n = self.rank();
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid("Cartan matrix is not square"));
            }
            for (j, &a) in row.iter().enumerate() {
                if i == j && a != 2 {
                    return Err(Error::invalid(format!("diagonal entry ({i},{j}) is {a}, expected 2")));
                }
                if i != j && a > 0 {
                    return Err(Error::invalid(format!("off-diagonal entry ({i},{j}) is positive")));
                }
                if i != j && (a == 0) != (self.entries[j][i] == 0) {
                    return Err(Error::invalid(format!("zero pattern not symmetric at ({i},{j})")));
                }
            }
        }
        if self.symmetrizer().is_none() {
            return Err(Error::invalid("Cartan matrix is not symmetrizable"));
        }
        Ok(())
    }

    /// Positive rationals `d_i` with `d_i a_ij = d_j a_ji`, normalized so the
    /// smallest value in each connected component is 1.
    pub fn symmetrizer(&self) -> Option<Vec<Q>> {
        let n = self.rank();
        let mut d: Vec<Option<Q>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            let mut comp = vec![start];
            d[start] = Some(Q::one());
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                k += 1;
                for j in 0..n {
                    if i == j || self.entries[i][j] == 0 {
                        continue;
                    }
                    // d_j = d_i a_ij / a_ji
                    let dj = d[i].clone().unwrap() * q(self.entries[i][j]) / q(self.entries[j][i]);
                    match &d[j] {
                        None => {
                            d[j] = Some(dj);
                            comp.push(j);
                        }
                        Some(x) if *x != dj => return None,
                        _ => {}
                    }
                }
            }
            let min = comp.iter().map(|&i| d[i].clone().unwrap()).min().unwrap();
            for &i in &comp {
                d[i] = Some(d[i].clone().unwrap() / &min);
            }
        }
        Some(d.into_iter().map(|x| x.unwrap()).collect())
    }

    /// The standard Cartan matrix in Bourbaki numbering.
    pub fn standard(t: CartanType) -> Result<Self> {
        let CartanType { series, rank: l } = t;
        let ok = match series {
            Series::A => l >= 1,
            Series::B | Series::C => l >= 2,
            Series::D => l >= 4,
            Series::E => (6..=8).contains(&l),
            Series::F => l == 4,
            Series::G => l == 2,
        };
        if !ok {
            return Err(Error::invalid(format!("{series}{l} is not a finite type")));
        }
        let mut a = vec![vec![0i64; l]; l];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut edge = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match series {
            Series::A => (0..l - 1).for_each(|i| edge(i, i + 1, -1, -1)),
            Series::B => {
                (0..l - 2).for_each(|i| edge(i, i + 1, -1, -1));
                edge(l - 2, l - 1, -1, -2);
            }
            Series::C => {
                (0..l - 2).for_each(|i| edge(i, i + 1, -1, -1));
                edge(l - 2, l - 1, -2, -1);
            }
            Series::D => {
                (0..l - 2).for_each(|i| edge(i, i + 1, -1, -1));
                edge(l - 3, l - 1, -1, -1);
            }
            Series::E => {
                edge(0, 2, -1, -1);
                edge(1, 3, -1, -1);
                (2..l - 1).for_each(|i| edge(i, i + 1, -1, -1));
            }
            Series::F => {
                edge(0, 1, -1, -1);
                edge(1, 2, -1, -2);
                edge(2, 3, -1, -1);
            }
            Series::G => edge(0, 1, -3, -1),
        }
        Ok(CartanMatrix { entries: a })
    }

    /// All finite types whose standard matrix is this one up to relabeling
    /// (B2 and C2 both match the same matrices).
    pub fn identify(&self) -> Vec<CartanType> {
        let l = self.rank();
        let mut out = Vec::new();
        for series in [Series::A, Series::B, Series::C, Series::D, Series::E, Series::F, Series::G] {
            let t = CartanType { series, rank: l };
            if let Ok(std) = CartanMatrix::standard(t) {
                if self.relabeling_to(&std).is_some() {
                    out.push(t);
                }
            }
        }
        out
    }

    /// The preferred label: an exact match in Bourbaki order if there is
    /// one, otherwise the first match up to relabeling.
    pub fn label(&self) -> Option<CartanType> {
        let all = self.identify();
        all.iter()
            .copied()
            .find(|t| CartanMatrix::standard(*t).map(|s| s == *self).unwrap_or(false))
            .or_else(|| all.first().copied())
    }

    /// A permutation `p` with `self[i][j] = other[p(i)][p(j)]`.
    pub fn relabeling_to(&self, other: &CartanMatrix) -> Option<Vec<usize>> {
        let n = self.rank();
        if other.rank() != n {
            return None;
        }
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn rec(a: &CartanMatrix, b: &CartanMatrix, k: usize, perm: &mut [usize], used: &mut [bool]) -> bool {
            let n = a.rank();
            if k == n {
                return true;
            }
            for c in 0..n {
                if used[c] {
                    continue;
                }
                if (0..k).all(|i| a.entries[k][i] == b.entries[c][perm[i]] && a.entries[i][k] == b.entries[perm[i]][c]) {
                    perm[k] = c;
                    used[c] = true;
                    if rec(a, b, k + 1, perm, used) {
                        return true;
                    }
                    used[c] = false;
                }
            }
            false
        }
        rec(self, other, 0, &mut perm, &mut used).then_some(perm)
    }
}

/// An element of a lattice with an explicit basis tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub coords: Vec<i64>,
    pub basis: LatticeBasis,
}

impl Weight {
    pub fn new(coords: Vec<i64>, basis: LatticeBasis) -> Self {
        Weight { coords, basis }
    }

    pub fn zero(rank: usize, basis: LatticeBasis) -> Self {
        Weight { coords: vec![0; rank], basis }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub label: Option<CartanType>,
    pub cartan: CartanMatrix,
    /// Row `i` is `alpha_i` in coordinates of the basis of `X`.
    pub roots: Vec<Vec<i64>>,
    /// Row `i` is `alpha_i^vee` in coordinates of the basis of `X^vee`.
    pub coroots: Vec<Vec<i64>>,
    /// `<x, y> = x^T P y` for coordinate vectors.
    pub pairing: Vec<Vec<i64>>,
    pub isogeny: Isogeny,
    pub x_basis: LatticeBasis,
    pub xv_basis: LatticeBasis,
}

/// Builds the root datum of the given finite type; the lattice `X` is the
/// weight lattice (simply connected) or the root lattice (adjoint).
pub fn build_root_datum(series: Series, rank: usize, isogeny: Isogeny) -> Result<RootDatum> {
    let t = CartanType { series, rank };
    let a = CartanMatrix::standard(t)?;
    let l = rank;
    let id: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| i64::from(i == j)).collect()).collect();
    let (roots, coroots, xb, xvb) = match isogeny {
        // X = P with basis omega_i; alpha_i = sum_j a_ji omega_j
        Isogeny::SimplyConnected => {
            let roots = (0..l).map(|i| (0..l).map(|j| a.get(j, i)).collect()).collect();
            (roots, id.clone(), LatticeBasis::Fundamental, LatticeBasis::SimpleRoot)
        }
        // X = Q with basis alpha_i; alpha_i^vee = sum_j a_ij omega_j^vee
        Isogeny::Adjoint => {
            let coroots = a.entries().to_vec();
            (id.clone(), coroots, LatticeBasis::SimpleRoot, LatticeBasis::Fundamental)
        }
        Isogeny::Other => {
            return Err(Error::invalid("build_root_datum expects simply_connected or adjoint"));
        }
    };
    let d = RootDatum {
        label: Some(t),
        cartan: a,
        roots,
        coroots,
        pairing: id,
        isogeny,
        x_basis: xb,
        xv_basis: xvb,
    };
    debug_assert!(d.pairing_cartan() == d.cartan);
    Ok(d)
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                s += xi * self.pairing[i][j] * yj;
            }
        }
        s
    }

    /// Cartan matrix recomputed from the pairing: `a_ij = <alpha_j, alpha_i^vee>`.
    pub fn pairing_cartan(&self) -> CartanMatrix {
        let l = self.rank();
        let entries = (0..l)
            .map(|i| (0..l).map(|j| self.pair(&self.roots[j], &self.coroots[i])).collect())
            .collect();
        CartanMatrix { entries }
    }

    /// `<x, alpha_i^vee>` for all `i`.
    pub fn fundamental_coords(&self, x: &[i64]) -> Vec<i64> {
        self.coroots.iter().map(|c| self.pair(x, c)).collect()
    }

    /// The element of `X` with the given fundamental coordinates, if it lies in `X`.
    pub fn from_fundamental(&self, m: &[i64]) -> Option<Vec<i64>> {
        let x = self.from_fundamental_rational(&m.iter().map(|&v| q(v)).collect::<Vec<_>>());
        x.iter().map(crate::rational::as_i64).collect()
    }

    /// Coordinates in `X (x) Q` of the element with the given fundamental coordinates.
    pub fn from_fundamental_rational(&self, m: &[Q]) -> Vec<Q> {
        // rows: coroot_i^T P^T so that row_i . x = <x, alpha_i^vee>
        let l = self.rank();
        let rows: Vec<Vec<Q>> = (0..l)
            .map(|i| (0..l).map(|k| q((0..l).map(|j| self.pairing[k][j] * self.coroots[i][j]).sum())).collect())
            .collect();
        Matrix::from_rows(&rows).solve(m).expect("coroots are independent")
    }

    pub fn reflect(&self, i: usize, x: &[i64]) -> Vec<i64> {
        let c = self.pair(x, &self.coroots[i]);
        x.iter().zip(&self.roots[i]).map(|(a, r)| a - c * r).collect()
    }

    pub fn reflect_coweight(&self, i: usize, y: &[i64]) -> Vec<i64> {
        let c = self.pair(&self.roots[i], y);
        y.iter().zip(&self.coroots[i]).map(|(a, r)| a - c * r).collect()
    }

    pub fn is_dominant(&self, x: &[i64]) -> bool {
        self.fundamental_coords(x).iter().all(|&v| v >= 0)
    }

    pub fn weight(&self, coords: Vec<i64>) -> Weight {
        Weight::new(coords, self.x_basis)
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.coords.len() != self.rank() {
            return Err(Error::invalid(format!("weight has {} coordinates, rank is {}", w.coords.len(), self.rank())));
        }
        if w.basis != self.x_basis {
            return Err(Error::invalid(format!("weight basis {:?} does not match lattice basis {:?}", w.basis, self.x_basis)));
        }
        Ok(())
    }

    /// Index `[P : X]`-style data: returns (`[X : Q]`, `[P : Q]`).
    pub fn lattice_indices(&self) -> (i64, i64) {
        let root_det = Matrix::from_i64(&self.roots).det();
        let x_over_q = crate::rational::as_i64(&root_det).unwrap().abs();
        (x_over_q, self.cartan.det().abs())
    }

    /// `[X^vee : Z<alpha_i^vee>]`.
    pub fn coroot_index(&self) -> i64 {
        crate::rational::as_i64(&Matrix::from_i64(&self.coroots).det()).unwrap().abs()
    }
}

/// Wire form of a root datum; simple roots are listed under `weights`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumJson {
    pub series: Option<Series>,
    pub rank: usize,
    pub isogeny: Isogeny,
    pub cartan: Vec<Vec<i64>>,
    pub weights: Vec<Weight>,
    pub coroots: Vec<Weight>,
    pub pairing: Vec<Vec<i64>>,
    /// Every finite type matching the Cartan matrix up to relabeling.
    pub types: Vec<String>,
}

impl From<&RootDatum> for RootDatumJson {
    fn from(d: &RootDatum) -> Self {
        RootDatumJson {
            series: d.label.map(|t| t.series),
            rank: d.rank(),
            isogeny: d.isogeny,
            cartan: d.cartan.entries().to_vec(),
            weights: d.roots.iter().map(|r| Weight::new(r.clone(), d.x_basis)).collect(),
            coroots: d.coroots.iter().map(|r| Weight::new(r.clone(), d.xv_basis)).collect(),
            pairing: d.pairing.clone(),
            types: d.cartan.identify().iter().map(|t| t.to_string()).collect(),
        }
    }
}

impl TryFrom<RootDatumJson> for RootDatum {
    type Error = Error;

    fn try_from(j: RootDatumJson) -> Result<RootDatum> {
        let l = j.rank;
        let square = |m: &Vec<Vec<i64>>| m.len() == l && m.iter().all(|r| r.len() == l);
        let roots: Vec<Vec<i64>> = j.weights.iter().map(|w| w.coords.clone()).collect();
        let coroots: Vec<Vec<i64>> = j.coroots.iter().map(|w| w.coords.clone()).collect();
        if !square(&j.cartan) || !square(&roots) || !square(&coroots) || !square(&j.pairing) {
            return Err(Error::invalid("root datum fields have inconsistent sizes"));
        }
        let x_basis = j.weights.first().map(|w| w.basis).unwrap_or(LatticeBasis::Lattice);
        let xv_basis = j.coroots.first().map(|w| w.basis).unwrap_or(LatticeBasis::Lattice);
        let cartan = CartanMatrix::new(j.cartan)?;
        let d = RootDatum {
            label: match j.series {
                Some(series) => Some(CartanType { series, rank: l }),
                None => cartan.label(),
            },
            cartan,
            roots,
            coroots,
            pairing: j.pairing,
            isogeny: j.isogeny,
            x_basis,
            xv_basis,
        };
        if d.pairing_cartan() != d.cartan {
            return Err(Error::invalid("pairing does not reproduce the Cartan matrix"));
        }
        Ok(d)
    }
}

impl Serialize for RootDatum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RootDatumJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootDatum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        RootDatum::try_from(RootDatumJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Positive roots in simple-root coordinates, ordered by height and then
/// lexicographically (descending coefficient vectors).
pub fn positive_roots_of(cartan: &CartanMatrix) -> Vec<Vec<i64>> {
    let l = cartan.rank();
    let mut levels: Vec<Vec<Vec<i64>>> = vec![(0..l).map(|i| (0..l).map(|j| i64::from(i == j)).collect()).collect()];
    let mut all: HashSet<Vec<i64>> = levels[0].iter().cloned().collect();
    loop {
        let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
        for beta in levels.last().unwrap() {
            for i in 0..l {
                // <beta, alpha_i^vee> = sum_j beta_j a_ij
                let pairing: i64 = (0..l).map(|j| beta[j] * cartan.get(i, j)).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let qv = p - pairing;
                if qv > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !all.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        let lvl: Vec<Vec<i64>> = next.into_iter().rev().collect();
        all.extend(lvl.iter().cloned());
        levels.push(lvl);
    }
    let mut out = Vec::new();
    for mut lvl in levels {
        lvl.sort_by(|a, b| b.cmp(a));
        out.extend(lvl);
    }
    out
}

pub fn positive_roots(datum: &RootDatum) -> Vec<Vec<i64>> {
    positive_roots_of(&datum.cartan)
}

/// A positive root given in simple-root coordinates, re-expressed in `X`.
pub fn root_in_lattice(datum: &RootDatum, beta: &[i64]) -> Vec<i64> {
    let l = datum.rank();
    (0..l).map(|k| (0..l).map(|j| beta[j] * datum.roots[j][k]).sum()).collect()
}

/// The unique dominant element of the Weyl orbit of `lambda`.
pub fn weyl_orbit_dominant_rep(datum: &RootDatum, lambda: &Weight) -> Result<Weight> {
    datum.check_weight(lambda)?;
    let mut x = lambda.coords.clone();
    while let Some(i) = datum.fundamental_coords(&x).iter().position(|&v| v < 0) {
        x = datum.reflect(i, &x);
    }
    Ok(datum.weight(x))
}

/// An element of `X (x) Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalWeight {
    pub coords: Vec<Q>,
    pub basis: LatticeBasis,
    /// Pairings with the simple coroots.
    pub fundamental: Vec<i64>,
}

/// `rho = sum of fundamental weights`, returned in `X (x) Q`.
pub fn weyl_vector(datum: &RootDatum) -> RationalWeight {
    let l = datum.rank();
    RationalWeight {
        coords: datum.from_fundamental_rational(&vec![Q::one(); l]),
        basis: datum.x_basis,
        fundamental: vec![1; l],
    }
}

/// `rho^vee = sum of fundamental coweights`, returned in `X^vee (x) Q`.
pub fn coweyl_vector(datum: &RootDatum) -> RationalWeight {
    weyl_vector(&crate::folding::langlands_dual(datum))
}

/// Half the sum of the positive roots, in `X (x) Q`.
pub fn half_sum_positive_roots(datum: &RootDatum) -> Vec<Q> {
    let l = datum.rank();
    let mut s = vec![Q::zero(); l];
    for beta in positive_roots(datum) {
        for (k, v) in root_in_lattice(datum, &beta).into_iter().enumerate() {
            s[k] += q(v);
        }
    }
    s.into_iter().map(|x| x / q(2)).collect()
}

/// Type A weights as partitions: `(a_1, ..., a_n)` modulo the all-ones vector.
pub mod type_a {
    use super::*;

    /// Subtracts the minimum entry and drops trailing zeros.
    pub fn normalize(parts: &[i64]) -> Vec<i64> {
        let Some(&m) = parts.iter().min() else { return vec![] };
        let mut v: Vec<i64> = parts.iter().map(|a| a - m).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// The weight of `A_{n-1}` with the given epsilon coordinates (length `n`).
    pub fn weight_from_parts(datum: &RootDatum, parts: &[i64]) -> Result<Weight> {
        let n = datum.rank() + 1;
        if datum.label.map(|t| t.series) != Some(Series::A) || parts.len() > n {
            return Err(Error::invalid("expected at most n parts for a type A datum of rank n-1"));
        }
        let mut p = parts.to_vec();
        p.resize(n, 0);
        let m: Vec<i64> = (0..n - 1).map(|i| p[i] - p[i + 1]).collect();
        let x = datum
            .from_fundamental(&m)
            .ok_or_else(|| Error::invalid(format!("{parts:?} is not in the lattice of this datum")))?;
        Ok(datum.weight(x))
    }

    /// Normalized epsilon coordinates of a type A weight.
    pub fn parts_from_weight(datum: &RootDatum, w: &Weight) -> Vec<i64> {
        let m = datum.fundamental_coords(&w.coords);
        let n = m.len() + 1;
        let mut p = vec![0i64; n];
        for i in (0..n - 1).rev() {
            p[i] = p[i + 1] + m[i];
        }
        normalize(&p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn sc(s: Series, l: usize) -> RootDatum {
        build_root_datum(s, l, Isogeny::SimplyConnected).unwrap()
    }

    #[test]
    fn a1_simply_connected() {
        let d = sc(Series::A, 1);
        assert_eq!(d.roots, vec![vec![2]]);
        assert_eq!(d.x_basis, LatticeBasis::Fundamental);
    }

    #[test]
    fn a3_adjoint_recovers_cartan() {
        let d = build_root_datum(Series::A, 3, Isogeny::Adjoint).unwrap();
        // independent check: <alpha_i, alpha_j^vee> = a_ji entry by entry
        for i in 0..3 {
            for j in 0..3 {
                let expected = match (i as i64 - j as i64).abs() {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                };
                assert_eq!(d.pair(&d.roots[i], &d.coroots[j]), expected);
            }
        }
        assert_eq!(d.lattice_indices(), (1, 4));
    }

    #[test]
    fn d4_center_has_valence_three() {
        let d = sc(Series::D, 4);
        let valence: Vec<usize> = (0..4).map(|i| (0..4).filter(|&j| j != i && d.cartan.get(i, j) != 0).count()).collect();
        assert_eq!(valence, vec![1, 3, 1, 1]);
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(build_root_datum(Series::D, 3, Isogeny::SimplyConnected).is_err());
        assert!(build_root_datum(Series::E, 9, Isogeny::Adjoint).is_err());
        assert!(build_root_datum(Series::A, 0, Isogeny::Adjoint).is_err());
        assert!(CartanMatrix::new(vec![vec![2, -1], vec![0, 2]]).is_err());
    }

    #[test]
    fn positive_root_counts() {
        let count = |s, l| positive_roots(&sc(s, l)).len();
        assert_eq!(count(Series::A, 1), 1);
        assert_eq!(count(Series::A, 2), 3);
        assert_eq!(count(Series::B, 2), 4);
        for l in 1..=6 {
            assert_eq!(count(Series::A, l), l * (l + 1) / 2);
        }
        assert_eq!(count(Series::B, 3), 9);
        assert_eq!(count(Series::C, 3), 9);
        assert_eq!(count(Series::D, 4), 12);
        assert_eq!(count(Series::D, 5), 20);
        assert_eq!(count(Series::G, 2), 6);
        assert_eq!(count(Series::F, 4), 24);
        assert_eq!(count(Series::E, 6), 36);
        assert_eq!(count(Series::E, 7), 63);
        assert_eq!(count(Series::E, 8), 120);
    }

    #[test]
    fn weyl_vector_properties() {
        let d = sc(Series::A, 3);
        let rho = weyl_vector(&d);
        assert_eq!(rho.coords, vec![q(1), q(1), q(1)]);
        assert_eq!(half_sum_positive_roots(&d), rho.coords);
        let d = sc(Series::A, 1);
        assert_eq!(weyl_vector(&d).coords, vec![q(1)]);
        // B2: rho^vee is half the sum of positive coroots
        let b2 = sc(Series::B, 2);
        let dual = crate::folding::langlands_dual(&b2);
        let rv = coweyl_vector(&b2);
        assert_eq!(rv.coords, half_sum_positive_roots(&dual));
        assert_eq!(rv.fundamental, vec![1, 1]);
        // adjoint A2: rho = alpha_1 + alpha_2 in root coordinates
        let a2 = build_root_datum(Series::A, 2, Isogeny::Adjoint).unwrap();
        assert_eq!(weyl_vector(&a2).coords, vec![q(1), q(1)]);
        let b2a = build_root_datum(Series::B, 2, Isogeny::Adjoint).unwrap();
        assert_eq!(weyl_vector(&b2a).coords, vec![qf(3, 2), q(2)]);
    }

    #[test]
    fn dominant_rep_examples() {
        let a2 = sc(Series::A, 2);
        let s1w1 = a2.reflect(0, &[1, 0]);
        assert_eq!(s1w1, vec![-1, 1]);
        assert_eq!(weyl_orbit_dominant_rep(&a2, &a2.weight(s1w1)).unwrap().coords, vec![1, 0]);
        let pgl4 = build_root_datum(Series::A, 3, Isogeny::Adjoint).unwrap();
        let w = type_a::weight_from_parts(&pgl4, &[-1, -2, -3, -6]).unwrap();
        let dom = weyl_orbit_dominant_rep(&pgl4, &w).unwrap();
        assert_eq!(type_a::parts_from_weight(&pgl4, &dom), vec![5, 4, 3]);
        // a non-dominant PGL4 weight with the same parts, permuted
        let w = type_a::weight_from_parts(&pgl4, &[-6, -1, -3, -2]).unwrap();
        let dom = weyl_orbit_dominant_rep(&pgl4, &w).unwrap();
        assert_eq!(type_a::parts_from_weight(&pgl4, &dom), vec![5, 4, 3]);
    }

    #[test]
    fn json_roundtrip() {
        for (s, l) in [(Series::A, 3), (Series::B, 2), (Series::E, 6), (Series::G, 2)] {
            for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
                let d = build_root_datum(s, l, iso).unwrap();
                let text = serde_json::to_string(&d).unwrap();
                let back: RootDatum = serde_json::from_str(&text).unwrap();
                assert_eq!(back, d);
            }
        }
        let mut j = RootDatumJson::from(&sc(Series::A, 2));
        j.pairing[0][1] = 1;
        assert!(RootDatum::try_from(j).is_err());
    }

    #[test]
    fn identification() {
        let b2 = CartanMatrix::standard(CartanType { series: Series::B, rank: 2 }).unwrap();
        let ids = b2.identify();
        assert!(ids.contains(&CartanType { series: Series::B, rank: 2 }));
        assert!(ids.contains(&CartanType { series: Series::C, rank: 2 }));
        assert_eq!(b2.label().unwrap().series, Series::B);
        let b3 = CartanMatrix::standard(CartanType { series: Series::B, rank: 3 }).unwrap();
        assert_eq!(b3.identify(), vec![CartanType { series: Series::B, rank: 3 }]);
        assert_eq!(b3.transpose().identify(), vec![CartanType { series: Series::C, rank: 3 }]);
    }
}
