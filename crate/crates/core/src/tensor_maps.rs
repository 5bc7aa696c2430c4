//! Partitions for type A and D weights, the folded-to-unfolded weight maps,
//! and Littlewood-Richardson coefficients.

use crate::error::{Error, Result};
use crate::rational::{as_i64, q, Q};
use crate::reps::{multiplicities, WeightForm};
use crate::rootdata::{build_root_datum, type_a, Isogeny, Series, Weight};
use num_traits::One;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// A weakly decreasing list of nonnegative parts without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(pub Vec<i64>);

impl Partition {
    pub fn new(parts: &[i64]) -> Result<Self> {
        if parts.iter().any(|&p| p < 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!("{parts:?} is not a partition")));
        }
        let mut v = parts.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        Ok(Partition(v))
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn padded(&self, n: usize) -> Vec<i64> {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    /// The canonical representative for `SL_n`/`PGL_n`: full columns removed.
    pub fn normalized(&self, n: usize) -> Partition {
        Partition(type_a::normalize(&self.padded(n)))
    }
}

pub fn parse_parts(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::invalid(format!("bad integer {t:?}"))))
        .collect()
}

/// `(a_1, ..., a_n) |-> (a_1 + a_1, ..., a_1 + a_n, a_1 - a_n, ..., a_1 - a_2, 0)`.
pub fn weight_map_a(a: &Partition, n: usize) -> Result<Vec<i64>> {
    if a.len() > n {
        return Err(Error::invalid(format!("{:?} has more than {n} parts", a.0)));
    }
    let p = a.padded(n);
    let a1 = p.first().copied().unwrap_or(0);
    let mut out: Vec<i64> = p.iter().map(|x| a1 + x).collect();
    out.extend(p.iter().rev().map(|x| a1 - x));
    Ok(out)
}

/// Negate and reverse, then subtract the minimum.
pub fn dualize_a(parts: &Partition, n: usize) -> Result<Partition> {
    if parts.len() > n {
        return Err(Error::invalid(format!("{:?} has more than {n} parts", parts.0)));
    }
    let p = parts.padded(n);
    let dual: Vec<i64> = p.iter().rev().map(|x| -x).collect();
    Ok(Partition(type_a::normalize(&dual)))
}

/// Dimension of the `GL_n` irreducible with highest weight `lambda`.
pub fn dim_gl(lambda: &Partition, n: usize) -> u64 {
    let p = lambda.padded(n);
    let mut v = Q::one();
    for i in 0..n {
        for j in i + 1..n {
            v *= q(p[i] - p[j] + (j - i) as i64) / q((j - i) as i64);
        }
    }
    as_i64(&v).expect("integral dimension") as u64
}

/// `c^nu_{lambda mu}` for all `nu` with at most `n` rows, by adding `mu`
/// as successive horizontal strips subject to the lattice word condition.
pub fn lr_coefficients(lambda: &Partition, mu: &Partition, n: usize) -> Result<BTreeMap<Partition, u64>> {
    if lambda.len() > n || mu.len() > n {
        return Err(Error::invalid(format!("partitions must have at most {n} parts")));
    }
    let mut out = BTreeMap::new();
    // counts[i][k]: number of label k in row i
    let start = lambda.padded(n);
    let mut counts = vec![vec![0i64; mu.len()]; n];
    lr_rec(&start, mu.parts(), 0, &mut counts, &mut out);
    Ok(out)
}

fn lr_rec(shape: &[i64], mu: &[i64], k: usize, counts: &mut Vec<Vec<i64>>, out: &mut BTreeMap<Partition, u64>) {
    if k == mu.len() {
        *out.entry(Partition::new(shape).unwrap()).or_insert(0) += 1;
        return;
    }
    let mut new = shape.to_vec();
    strip(shape, mu, k, 0, mu[k], &mut new, counts, out, 0, 0);
    #[allow(clippy::too_many_arguments)]
    fn strip(
        old: &[i64],
        mu: &[i64],
        k: usize,
        row: usize,
        left: i64,
        new: &mut Vec<i64>,
        counts: &mut Vec<Vec<i64>>,
        out: &mut BTreeMap<Partition, u64>,
        cum_k: i64,
        cum_prev: i64,
    ) {
        let n = old.len();
        if row == n {
            if left == 0 {
                lr_rec(&new.clone(), mu, k + 1, counts, out);
            }
            return;
        }
        let cap_col = if row == 0 { i64::MAX } else { old[row - 1] - old[row] };
        // label k may only appear in rows >= k
        let max_here = if row < k { 0 } else { left.min(cap_col) };
        for c in (0..=max_here).rev() {
            let ck = cum_k + c;
            // lattice: #k in rows <= row must not exceed #(k-1) in rows < row
            if k > 0 && ck > cum_prev {
                continue;
            }
            new[row] = old[row] + c;
            counts[row][k] = c;
            let prev_here = if k > 0 { counts[row][k - 1] } else { 0 };
            strip(old, mu, k, row + 1, left - c, new, counts, out, ck, cum_prev + prev_here);
            counts[row][k] = 0;
        }
        new[row] = old[row];
    }
}

/// Tensor product decomposition by multiplying Weyl characters of
/// `A_{n-1}` and peeling off highest weights; an independent oracle for LR.
pub fn character_product(lambda: &Partition, mu: &Partition, n: usize) -> Result<BTreeMap<Partition, u64>> {
    let d = build_root_datum(Series::A, n - 1, Isogeny::SimplyConnected)?;
    let form = WeightForm::new(&d);
    let fund = |p: &Partition| -> Vec<i64> {
        let v = p.padded(n);
        (0..n - 1).map(|i| v[i] - v[i + 1]).collect()
    };
    let ca = multiplicities(&form, &fund(lambda));
    let cb = multiplicities(&form, &fund(mu));
    let mut prod: HashMap<Vec<i64>, i64> = HashMap::new();
    for (a, x) in &ca {
        for (b, y) in &cb {
            let s: Vec<i64> = a.iter().zip(b).map(|(u, v)| u + v).collect();
            *prod.entry(s).or_insert(0) += (*x * *y) as i64;
        }
    }
    let mut out = BTreeMap::new();
    let size = lambda.size() + mu.size();
    loop {
        prod.retain(|_, v| *v != 0);
        // the dominant weight of greatest height is maximal for the dominance order
        let Some(top) = prod
            .iter()
            .filter(|(w, _)| w.iter().all(|&x| x >= 0))
            .max_by_key(|(w, _)| {
                let c = form.root_coords(w);
                (c.iter().fold(Q::from_integer(0.into()), |s, x| s + x), (*w).clone())
            })
            .map(|(w, &m)| (w.clone(), m))
        else {
            break;
        };
        let (w, m) = top;
        if m < 0 {
            return Err(Error::failed("negative multiplicity while peeling characters"));
        }
        for (nu, k) in multiplicities(&form, &w) {
            *prod.entry(nu).or_insert(0) -= m * k as i64;
        }
        // back to a partition of the right size: parts from fundamental coordinates plus full columns
        let mut parts = vec![0i64; n];
        for i in (0..n - 1).rev() {
            parts[i] = parts[i + 1] + w[i];
        }
        let extra = size - parts.iter().sum::<i64>();
        if extra % n as i64 != 0 {
            return Err(Error::failed("constituent size is inconsistent"));
        }
        for p in parts.iter_mut() {
            *p += extra / n as i64;
        }
        out.insert(Partition::new(&parts)?, m as u64);
    }
    if !prod.is_empty() {
        return Err(Error::failed("character did not decompose"));
    }
    Ok(out)
}

/// Highest weight `a_1 L_1 + ... + a_{n-1} L_{n-1}` of `D_n` in fundamental coordinates.
pub fn weight_map_d(a: &Partition, n: usize) -> Result<Weight> {
    if n < 4 || a.len() > n - 1 {
        return Err(Error::invalid(format!("need n >= 4 and at most {} parts", n.saturating_sub(1))));
    }
    let x = a.padded(n - 1);
    let mut m: Vec<i64> = (0..n - 2).map(|i| x[i] - x[i + 1]).collect();
    m.push(x[n - 2]);
    m.push(x[n - 2]);
    let d = build_root_datum(Series::D, n, Isogeny::SimplyConnected)?;
    Ok(d.weight(d.from_fundamental(&m).expect("simply connected")))
}

#[derive(Clone, Debug, Serialize)]
pub struct Constituent {
    pub partition: Partition,
    pub normalized: Partition,
    pub coefficient: u64,
    pub dual: Partition,
    pub self_dual: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonmonoidalityWitness {
    pub n: usize,
    pub lhs: Partition,
    pub rhs: Partition,
    /// Preimages under the type A weight map (n = 2 on the folded side).
    pub lhs_preimage: Partition,
    pub rhs_preimage: Partition,
    pub lhs_self_dual: bool,
    pub rhs_self_dual: bool,
    pub constituents: Vec<Constituent>,
    pub witness: Option<Constituent>,
    pub dimension_identity: bool,
    pub duals_balanced: bool,
    pub pass: bool,
}

/// Reruns the example showing that the embedding of representation
/// categories is not monoidal: `(4,2,2) (x) (2,2)` in `PGL_4` contains
/// `(6,3,2,1) ~ (5,2,1)`, whose dual `(5,4,3)` differs from it.
pub fn nonmonoidality_witness() -> Result<NonmonoidalityWitness> {
    let n = 4;
    let lhs_pre = Partition::new(&[2])?;
    let rhs_pre = Partition::new(&[1, 1])?;
    let lhs = Partition::new(&weight_map_a(&lhs_pre, 2)?)?;
    let rhs = Partition::new(&weight_map_a(&rhs_pre, 2)?)?;
    debug_assert_eq!(lhs.0, vec![4, 2, 2]);
    let lr = lr_coefficients(&lhs, &rhs, n)?;
    let constituents: Vec<Constituent> = lr
        .iter()
        .map(|(nu, &c)| {
            let normalized = nu.normalized(n);
            let dual = dualize_a(nu, n).unwrap();
            Constituent { partition: nu.clone(), self_dual: dual == normalized, normalized, coefficient: c, dual }
        })
        .collect();
    let total: u64 = lr.iter().map(|(nu, c)| c * dim_gl(nu, n)).sum();
    let dimension_identity = total == dim_gl(&lhs, n) * dim_gl(&rhs, n);
    let by_norm: HashMap<Partition, u64> = constituents.iter().map(|c| (c.normalized.clone(), c.coefficient)).collect();
    let duals_balanced = constituents.iter().all(|c| by_norm.get(&c.dual) == Some(&c.coefficient));
    let target = Partition::new(&[6, 3, 2, 1])?;
    let witness = constituents.iter().find(|c| c.partition == target && !c.self_dual).cloned();
    let lhs_self_dual = dualize_a(&lhs, n)? == lhs.normalized(n);
    let rhs_self_dual = dualize_a(&rhs, n)? == rhs.normalized(n);
    let pass = witness.as_ref().is_some_and(|w| w.coefficient >= 1 && w.dual.0 == vec![5, 4, 3] && w.normalized.0 == vec![5, 2, 1])
        && dimension_identity
        && lhs_self_dual
        && rhs_self_dual;
    Ok(NonmonoidalityWitness {
        n,
        lhs,
        rhs,
        lhs_preimage: lhs_pre,
        rhs_preimage: rhs_pre,
        lhs_self_dual,
        rhs_self_dual,
        constituents,
        witness,
        dimension_identity,
        duals_balanced,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Partition {
        Partition::new(v).unwrap()
    }

    #[test]
    fn weight_map_examples() {
        assert_eq!(weight_map_a(&p(&[]), 3).unwrap(), vec![0; 6]);
        assert_eq!(weight_map_a(&p(&[1, 1]), 2).unwrap(), vec![2, 2, 0, 0]);
        assert_eq!(weight_map_a(&p(&[4, 2, 1]), 3).unwrap(), vec![8, 6, 5, 3, 2, 0]);
        assert_eq!(weight_map_a(&p(&[2]), 2).unwrap(), vec![4, 2, 2, 0]);
        assert!(Partition::new(&[1, 2]).is_err());
    }

    #[test]
    fn dualize_examples() {
        assert_eq!(dualize_a(&p(&[2, 1, 1]), 4).unwrap(), p(&[2, 1, 1]));
        assert_eq!(dualize_a(&p(&[6, 3, 2, 1]), 4).unwrap(), p(&[5, 4, 3]));
        assert_eq!(dualize_a(&p(&[]), 1).unwrap(), p(&[]));
    }

    #[test]
    fn lr_small() {
        let r = lr_coefficients(&p(&[1]), &p(&[1]), 2).unwrap();
        assert_eq!(r.into_iter().collect::<Vec<_>>(), vec![(p(&[1, 1]), 1), (p(&[2]), 1)]);
        let r = lr_coefficients(&p(&[3, 1]), &p(&[]), 3).unwrap();
        assert_eq!(r.into_iter().collect::<Vec<_>>(), vec![(p(&[3, 1]), 1)]);
        // c^{(3,2,1)}_{(2,1),(2,1)} = 2
        let r = lr_coefficients(&p(&[2, 1]), &p(&[2, 1]), 3).unwrap();
        assert_eq!(r[&p(&[3, 2, 1])], 2);
    }

    #[test]
    fn lr_matches_characters() {
        for (a, b, n) in [(vec![2, 1], vec![2, 1], 3), (vec![4, 2, 2], vec![2, 2], 4), (vec![3, 1], vec![2], 3), (vec![2, 2], vec![1, 1], 4)] {
            let lr = lr_coefficients(&p(&a), &p(&b), n).unwrap();
            let ch = character_product(&p(&a), &p(&b), n).unwrap();
            assert_eq!(lr, ch, "{a:?} {b:?}");
        }
    }

    #[test]
    fn type_d_map() {
        let w = weight_map_d(&p(&[1]), 5).unwrap();
        assert_eq!(w.coords, vec![1, 0, 0, 0, 0]);
        let w = weight_map_d(&p(&[1, 1]), 5).unwrap();
        assert_eq!(w.coords, vec![0, 1, 0, 0, 0]);
        assert_eq!(weight_map_d(&p(&[]), 5).unwrap().coords, vec![0; 5]);
    }

    #[test]
    fn witness() {
        let w = nonmonoidality_witness().unwrap();
        assert!(w.pass);
        assert!(w.duals_balanced);
        let c = w.witness.unwrap();
        assert_eq!(c.normalized, p(&[5, 2, 1]));
        assert_eq!(c.dual, p(&[5, 4, 3]));
    }
}
