//! Chevalley invariants, the principal triple and Kostant section,
//! sigma-fixed sections, Mishchenko-Fomenko families and the quadratic
//! Harish-Chandra restriction, all over the rationals.

use crate::error::{Error, Result};
use crate::folding::jantzen_partner;
use crate::linalg::{rank_of, same_span, Matrix};
use crate::poly::{det, Poly, PolyJson};
use crate::rational::{self, q, Q};
use crate::realization::{realization, MatrixRealization, ALGEBRAS};
use crate::reps::construct_module;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 20240917;

#[derive(Clone, Debug)]
pub struct InvariantPoly {
    pub degree: usize,
    pub poly: Poly,
}

/// Degrees of the basic invariants from the height distribution of positive roots.
pub fn classical_degrees(g: &MatrixRealization) -> Vec<usize> {
    let max_h = g.roots.iter().map(|r| r.iter().sum::<i64>()).max().unwrap_or(0) as usize;
    let count = |k: usize| g.roots.iter().filter(|r| r.iter().sum::<i64>() as usize == k).count();
    let mut out = vec![];
    for k in 1..=max_h {
        for _ in 0..count(k) - count(k + 1) {
            out.push(k + 1);
        }
    }
    out.sort_unstable();
    out
}

/// Coefficients of `det(t - X)` for the generic element `X = sum x_a B_a`,
/// keeping the nonzero ones of degree at least two.
pub fn chevalley_generators(g: &MatrixRealization) -> Result<Vec<InvariantPoly>> {
    let dim = g.dim();
    let nv = dim + 1;
    let n = g.n;
    if n > 63 {
        return Err(Error::unsupported("matrix size too large"));
    }
    let mut m = vec![vec![Poly::zero(nv); n]; n];
    for (a, b) in g.basis.iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                let x = &b[(r, c)];
                if !x.is_zero() {
                    let mut mono = vec![0u8; nv];
                    mono[a] = 1;
                    m[r][c].add_term(mono, -x.clone());
                }
            }
        }
    }
    for (r, row) in m.iter_mut().enumerate() {
        row[r] = row[r].add(&Poly::var(nv, dim));
    }
    let d = det(&m, nv);
    let mut out = vec![];
    for k in 2..=n {
        let c = d.coefficient_of_power(dim, (n - k) as u8).truncate_vars(dim);
        if !c.is_zero() {
            let c = if k % 2 == 1 { c.scale(&-Q::one()) } else { c };
            out.push(InvariantPoly { degree: k, poly: c });
        }
    }
    if out.len() != g.rank {
        return Err(Error::unsupported(format!("{}: characteristic polynomial does not give {} generators", g.name, g.rank)));
    }
    Ok(out)
}

/// Derivative of `p` along the vector field `x |-> [B_a, x]`, for every basis element.
pub fn is_invariant(g: &MatrixRealization, p: &Poly) -> bool {
    let dim = g.dim();
    (0..dim).all(|a| {
        let field: Vec<Poly> = (0..dim)
            .map(|c| {
                let coeffs: Vec<Q> = (0..dim).map(|b| g.brackets[a][b][c].clone()).collect();
                Poly::linear(&coeffs)
            })
            .collect();
        p.along_field(&field).is_zero()
    })
}

#[derive(Clone, Debug)]
pub struct KostantSection {
    pub p_minus1: Vec<Q>,
    pub two_rho_vee: Vec<Q>,
    pub p_1: Vec<Q>,
    /// Basis of `g^{p_1}` with its `ad rho^vee` degree, sorted by degree.
    pub slodowy: Vec<(i64, Vec<Q>)>,
}

impl KostantSection {
    pub fn degrees(&self) -> Vec<i64> {
        self.slodowy.iter().map(|(d, _)| *d).collect()
    }

    pub fn point(&self, c: &[Q]) -> Vec<Q> {
        let mut x = self.p_minus1.clone();
        for ((_, v), ck) in self.slodowy.iter().zip(c) {
            for (xa, va) in x.iter_mut().zip(v) {
                *xa += ck * va;
            }
        }
        x
    }

    /// Coordinates of `p_{-1} + sum c_k v_k` as polynomials in `c`.
    pub fn coordinate_polys(&self) -> Vec<Poly> {
        let l = self.slodowy.len();
        (0..self.p_minus1.len())
            .map(|a| {
                let lin: Vec<Q> = self.slodowy.iter().map(|(_, v)| v[a].clone()).collect();
                Poly::linear(&lin).add(&Poly::constant(l, self.p_minus1[a].clone()))
            })
            .collect()
    }
}

/// The principal sl_2 triple `{p_{-1}, 2 rho^vee, p_1}` and `V_can = g^{p_1}`.
pub fn principal_triple(g: &MatrixRealization) -> Result<KostantSection> {
    let l = g.rank;
    let dim = g.dim();
    let mut p_minus1 = vec![Q::zero(); dim];
    for i in 0..l {
        p_minus1[g.f_index(i)] = Q::one();
    }
    // sum_i c_i a_ij = 2
    let at = g.cartan.to_matrix().transpose();
    let c = at.solve(&vec![q(2); l]).ok_or_else(|| Error::failed("singular Cartan matrix"))?;
    let two_rho_vee = g.cartan_element(&c);
    // p_1 = sum d_i e_i with [p_1, p_{-1}] = 2 rho^vee
    let cols: Vec<Vec<Q>> = (0..l)
        .map(|i| {
            let mut e = vec![Q::zero(); dim];
            e[g.e_index(i)] = Q::one();
            g.bracket(&e, &p_minus1)
        })
        .collect();
    let d = Matrix::from_cols(&cols).solve(&two_rho_vee).ok_or_else(|| Error::failed("no degree-one p_1"))?;
    let mut p_1 = vec![Q::zero(); dim];
    for i in 0..l {
        p_1[g.e_index(i)] = d[i].clone();
    }
    let h = &two_rho_vee;
    let scaled = |v: &[Q], s: i64| v.iter().map(|x| x * q(s)).collect::<Vec<_>>();
    if g.bracket(h, &p_1) != scaled(&p_1, 2) || g.bracket(h, &p_minus1) != scaled(&p_minus1, -2) || g.bracket(&p_1, &p_minus1) != *h {
        return Err(Error::failed("principal triple relations fail"));
    }
    let ad = g.ad(&p_1);
    let mut slodowy = vec![];
    let max_deg = (0..dim).map(|a| g.degree(a)).max().unwrap_or(0);
    for deg in 1..=max_deg {
        let idx: Vec<usize> = (0..dim).filter(|&a| g.degree(a) == deg).collect();
        let sub = Matrix::from_cols(&idx.iter().map(|&a| ad.col(a)).collect::<Vec<_>>());
        for k in sub.kernel() {
            let mut v = vec![Q::zero(); dim];
            for (&a, x) in idx.iter().zip(&k) {
                v[a] = x.clone();
            }
            slodowy.push((deg, v));
        }
    }
    if ad.rank() != dim - l || slodowy.len() != l {
        return Err(Error::failed("centralizer of p_1 is not of dimension l"));
    }
    Ok(KostantSection { p_minus1, two_rho_vee, p_1, slodowy })
}

pub fn restrict_to_section(p: &Poly, s: &KostantSection) -> Poly {
    p.substitute(&s.coordinate_polys())
}

pub fn jacobian_determinant(polys: &[Poly]) -> Poly {
    let nv = polys.first().map(|p| p.nvars).unwrap_or(0);
    let m: Vec<Vec<Poly>> = polys.iter().map(|p| (0..nv).map(|k| p.partial(k)).collect()).collect();
    det(&m, nv)
}

/// Solves `R_j(c) = values_j` by triangular substitution: `R_j` is affine in
/// `c_j` once `c_1..c_{j-1}` are known. `None` if that shape fails.
pub fn invert_section(restricted: &[Poly], values: &[Q]) -> Option<Vec<Q>> {
    let l = restricted.len();
    let mut c: Vec<Q> = vec![];
    for (j, r) in restricted.iter().enumerate() {
        let images: Vec<Poly> = (0..l)
            .map(|k| if k < j { Poly::constant(l, c[k].clone()) } else { Poly::var(l, k) })
            .collect();
        let p = r.substitute(&images);
        if p.terms.keys().any(|m| m[j + 1..].iter().any(|&e| e > 0) || m[j] > 1) {
            return None;
        }
        let a = p.coefficient_of_power(j, 1).constant_term();
        if a.is_zero() {
            return None;
        }
        let b = p.coefficient_of_power(j, 0).constant_term();
        c.push((&values[j] - b) / a);
    }
    Some(c)
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantEntry {
    pub degree: usize,
    pub invariant: bool,
    pub terms: usize,
    pub polynomial: PolyJson,
    pub on_section: PolyJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantsReport {
    pub algebra: String,
    pub dim: usize,
    pub rank: usize,
    pub dim_b: usize,
    pub degrees: Vec<usize>,
    pub classical_degrees: Vec<usize>,
    pub degree_sum: usize,
    pub generators: Vec<InvariantEntry>,
    #[serde(with = "rational::vec")]
    pub p_minus1: Vec<Q>,
    #[serde(with = "rational::vec")]
    pub two_rho_vee: Vec<Q>,
    #[serde(with = "rational::vec")]
    pub p_1: Vec<Q>,
    pub vcan_degrees: Vec<i64>,
    pub section_jacobian: String,
    pub section_jacobian_constant: bool,
    pub pass: bool,
}

pub fn invariants_report(g: &MatrixRealization) -> Result<InvariantsReport> {
    let gens = chevalley_generators(g)?;
    let s = principal_triple(g)?;
    let restricted: Vec<Poly> = gens.iter().map(|p| restrict_to_section(&p.poly, &s)).collect();
    let jac = jacobian_determinant(&restricted);
    let jac_const = jac.degree().unwrap_or(0) == 0 && !jac.is_zero();
    let generators: Vec<InvariantEntry> = gens
        .iter()
        .zip(&restricted)
        .map(|(p, r)| InvariantEntry {
            degree: p.degree,
            invariant: is_invariant(g, &p.poly),
            terms: p.poly.terms.len(),
            polynomial: p.poly.to_json(),
            on_section: r.to_json(),
        })
        .collect();
    let degrees: Vec<usize> = gens.iter().map(|p| p.degree).collect();
    let classical = classical_degrees(g);
    let exps: Vec<i64> = degrees.iter().map(|&d| d as i64 - 1).collect();
    let pass = generators.iter().all(|e| e.invariant)
        && degrees == classical
        && degrees.iter().sum::<usize>() == g.dim_b()
        && jac_const
        && s.degrees() == exps;
    Ok(InvariantsReport {
        algebra: g.name.clone(),
        dim: g.dim(),
        rank: g.rank,
        dim_b: g.dim_b(),
        degree_sum: degrees.iter().sum(),
        degrees,
        classical_degrees: classical,
        generators,
        p_minus1: s.p_minus1.clone(),
        two_rho_vee: s.two_rho_vee.clone(),
        p_1: s.p_1.clone(),
        vcan_degrees: s.degrees(),
        section_jacobian: jac.to_string(),
        section_jacobian_constant: jac_const,
        pass,
    })
}

/// A realization with its diagram automorphism and a realization of the
/// fixed subalgebra inside it.
#[derive(Clone, Debug)]
pub struct FoldedPair {
    pub parent: MatrixRealization,
    pub child: MatrixRealization,
    /// sigma in parent basis coordinates.
    pub sigma: Matrix,
    /// Columns: parent coordinates of the child basis.
    pub embedding: Matrix,
}

impl FoldedPair {
    pub fn embed(&self, x: &[Q]) -> Vec<Q> {
        self.embedding.mul_vec(x)
    }
}

pub const PAIRS: &[(&str, &str)] = &[("sl2", "sl2"), ("sl3", "so3"), ("sl4", "sp4"), ("sl5", "so5"), ("sl6", "sp6"), ("sl7", "so7")];

/// Parses `parent:child`; the trivial pair `sl2:sl2` uses the identity.
pub fn folded_pair(pair_name: &str) -> Result<FoldedPair> {
    let (p, c) = pair_name.split_once(':').ok_or_else(|| Error::invalid(format!("pair {pair_name:?} must look like sl4:sp4")))?;
    let (p, c) = (p.trim().to_ascii_lowercase(), c.trim().to_ascii_lowercase());
    if !PAIRS.iter().any(|(a, b)| *a == p && *b == c) {
        let known: Vec<String> = PAIRS.iter().map(|(a, b)| format!("{a}:{b}")).collect();
        return Err(Error::unsupported(format!("unsupported folded pair {p}:{c}; supported: {}", known.join(", "))));
    }
    let parent = realization(&p)?;
    if p == c {
        let d = parent.dim();
        return Ok(FoldedPair { child: parent.clone(), parent, sigma: Matrix::identity(d), embedding: Matrix::identity(d) });
    }
    let child = realization(&c)?;
    let sigma = parent.sigma.as_ref().expect("sl_n carries sigma").matrix.clone();
    let (name, embedding) = child.embedding.clone().expect("folded realization");
    debug_assert_eq!(name, parent.name);
    Ok(FoldedPair { parent, child, sigma, embedding })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChangeTerm {
    #[serde(with = "rational")]
    pub coefficient: Q,
    /// Exponent of each child coordinate.
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoordinateChange {
    pub parent_degree: usize,
    pub terms: Vec<ChangeTerm>,
}

impl CoordinateChange {
    pub fn eval(&self, child_values: &[Q]) -> Q {
        self.terms
            .iter()
            .map(|t| {
                let mut v = t.coefficient.clone();
                for (x, &e) in child_values.iter().zip(&t.exponents) {
                    for _ in 0..e {
                        v *= x;
                    }
                }
                v
            })
            .sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionCheckReport {
    pub parent: String,
    pub child: String,
    pub fixed_subalgebra_equal: bool,
    pub p_minus1_equal: bool,
    pub two_rho_vee_equal: bool,
    pub p_1_equal: bool,
    pub vcan_fixed_equal: bool,
    pub vcan_fixed_degrees: Vec<i64>,
    pub child_vcan_degrees: Vec<i64>,
    pub parent_degrees: Vec<usize>,
    pub vanishing_degrees: Vec<usize>,
    pub child_degrees: Vec<usize>,
    pub change: Vec<CoordinateChange>,
    #[serde(with = "rational")]
    pub jacobian_at_origin: Q,
    pub pass: bool,
}

fn weighted_exponents(weights: &[usize], target: usize) -> Vec<Vec<u32>> {
    fn go(weights: &[usize], k: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e * weights[k] <= left {
            cur.push(e as u32);
            go(weights, k + 1, left - e * weights[k], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = vec![];
    go(weights, 0, target, &mut vec![], &mut out);
    out
}

/// Writes `target` as a polynomial in `basics` with weighted degree `degree`.
fn express(target: &Poly, basics: &[(usize, Poly)], degree: usize) -> Option<Vec<ChangeTerm>> {
    let weights: Vec<usize> = basics.iter().map(|(d, _)| *d).collect();
    let cands = weighted_exponents(&weights, degree);
    let nv = target.nvars;
    let polys: Vec<Poly> = cands
        .iter()
        .map(|e| {
            let mut p = Poly::constant(nv, Q::one());
            for ((_, b), &k) in basics.iter().zip(e) {
                p = p.mul(&b.pow(k as usize));
            }
            p
        })
        .collect();
    let mut monos: Vec<&Vec<u8>> = target.terms.keys().collect();
    for p in &polys {
        monos.extend(p.terms.keys());
    }
    monos.sort();
    monos.dedup();
    let get = |p: &Poly, m: &Vec<u8>| p.terms.get(m).cloned().unwrap_or_else(Q::zero);
    let a = Matrix::from_rows(&monos.iter().map(|m| polys.iter().map(|p| get(p, m)).collect()).collect::<Vec<_>>());
    let b: Vec<Q> = monos.iter().map(|m| get(target, m)).collect();
    if cands.is_empty() {
        return target.is_zero().then(Vec::new);
    }
    let x = a.solve(&b)?;
    Some(
        cands
            .into_iter()
            .zip(x)
            .filter(|(_, c)| !c.is_zero())
            .map(|(exponents, coefficient)| ChangeTerm { coefficient, exponents })
            .collect(),
    )
}

/// Everything the sigma-fixed section check computes.
pub struct SectionData {
    pub report: SectionCheckReport,
    pub parent_gens: Vec<InvariantPoly>,
    pub child_gens: Vec<InvariantPoly>,
}

pub fn sigma_section_check(pair: &FoldedPair) -> Result<SectionData> {
    let (g, gs) = (&pair.parent, &pair.child);
    let dim = g.dim();
    let sp = principal_triple(g)?;
    let sc = principal_triple(gs)?;
    let fixed = pair.sigma.sub(&Matrix::identity(dim)).kernel();
    let emb_cols: Vec<Vec<Q>> = (0..pair.embedding.cols).map(|k| pair.embedding.col(k)).collect();
    let fixed_subalgebra_equal = same_span(&fixed, &emb_cols);
    let p_minus1_equal = pair.embed(&sc.p_minus1) == sp.p_minus1;
    let two_rho_vee_equal = pair.embed(&sc.two_rho_vee) == sp.two_rho_vee;
    let p_1_equal = pair.embed(&sc.p_1) == sp.p_1;
    // sigma-fixed part of V_can(g), degree by degree
    let mut fixed_vcan = vec![];
    let mut vcan_fixed_degrees = vec![];
    let max_deg = sp.slodowy.iter().map(|(d, _)| *d).max().unwrap_or(0);
    for deg in 1..=max_deg {
        let vs: Vec<&Vec<Q>> = sp.slodowy.iter().filter(|(d, _)| *d == deg).map(|(_, v)| v).collect();
        if vs.is_empty() {
            continue;
        }
        let cols: Vec<Vec<Q>> = vs.iter().map(|v| pair.sigma.mul_vec(v).iter().zip(v.iter()).map(|(a, b)| a - b).collect()).collect();
        for k in Matrix::from_cols(&cols).kernel() {
            let mut w = vec![Q::zero(); dim];
            for (v, c) in vs.iter().zip(&k) {
                for (wa, va) in w.iter_mut().zip(v.iter()) {
                    *wa += c * va;
                }
            }
            fixed_vcan.push(w);
            vcan_fixed_degrees.push(deg);
        }
    }
    let child_vcan: Vec<Vec<Q>> = sc.slodowy.iter().map(|(_, v)| pair.embed(v)).collect();
    let vcan_fixed_equal = same_span(&fixed_vcan, &child_vcan) && vcan_fixed_degrees == sc.degrees();

    let parent_gens = chevalley_generators(g)?;
    let child_gens = chevalley_generators(gs)?;
    // parent invariants on the child's section, embedded
    let child_coords = sc.coordinate_polys();
    let lc = gs.rank;
    let embedded: Vec<Poly> = (0..dim)
        .map(|a| {
            let mut p = Poly::zero(lc);
            for (b, cp) in child_coords.iter().enumerate() {
                let e = &pair.embedding[(a, b)];
                if !e.is_zero() {
                    p.add_assign_scaled(cp, e);
                }
            }
            p
        })
        .collect();
    let basics: Vec<(usize, Poly)> = child_gens.iter().map(|p| (p.degree, p.poly.substitute(&child_coords))).collect();
    let mut change = vec![];
    let mut vanishing_degrees = vec![];
    let mut expressible = true;
    for p in &parent_gens {
        let r = p.poly.substitute(&embedded);
        if r.is_zero() {
            vanishing_degrees.push(p.degree);
            continue;
        }
        match express(&r, &basics, p.degree) {
            Some(terms) => change.push(CoordinateChange { parent_degree: p.degree, terms }),
            None => expressible = false,
        }
    }
    // linear part of the change at the origin
    let lin = Matrix::from_rows(
        &change
            .iter()
            .map(|c| {
                (0..lc)
                    .map(|k| {
                        c.terms
                            .iter()
                            .filter(|t| t.exponents.iter().enumerate().all(|(i, &e)| e == u32::from(i == k)))
                            .map(|t| t.coefficient.clone())
                            .sum()
                    })
                    .collect()
            })
            .collect::<Vec<_>>(),
    );
    let jacobian_at_origin = if lin.rows == lc && lc > 0 { lin.det() } else { Q::zero() };
    let pass = fixed_subalgebra_equal
        && p_minus1_equal
        && two_rho_vee_equal
        && p_1_equal
        && vcan_fixed_equal
        && expressible
        && !jacobian_at_origin.is_zero();
    let report = SectionCheckReport {
        parent: g.name.clone(),
        child: gs.name.clone(),
        fixed_subalgebra_equal,
        p_minus1_equal,
        two_rho_vee_equal,
        p_1_equal,
        vcan_fixed_equal,
        vcan_fixed_degrees,
        child_vcan_degrees: sc.degrees(),
        parent_degrees: parent_gens.iter().map(|p| p.degree).collect(),
        vanishing_degrees,
        child_degrees: child_gens.iter().map(|p| p.degree).collect(),
        change,
        jacobian_at_origin,
        pass,
    };
    Ok(SectionData { report, parent_gens, child_gens })
}

#[derive(Clone, Debug, Serialize)]
pub struct MfMember {
    pub generator_degree: usize,
    pub order: usize,
    pub polynomial: PolyJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct MfReport {
    pub algebra: String,
    #[serde(with = "rational::vec")]
    pub chi: Vec<Q>,
    pub chi_regular: bool,
    pub count: usize,
    pub dim_b: usize,
    pub jacobian_rank: usize,
    #[serde(with = "rational::vec")]
    pub sample_point: Vec<Q>,
    pub seed: u64,
    pub members: Vec<MfMember>,
}

pub fn sample_point(dim: usize, rng: &mut ChaCha8Rng) -> Vec<Q> {
    (0..dim).map(|_| q(rng.gen_range(-9..=9))).collect()
}

/// `d^i_chi P_j` for `0 <= i < deg P_j`.
pub fn mf_family(gens: &[InvariantPoly], chi: &[Q]) -> Vec<(usize, usize, Poly)> {
    let mut out = vec![];
    for p in gens {
        let mut cur = p.poly.clone();
        for i in 0..p.degree {
            out.push((p.degree, i, cur.clone()));
            cur = cur.directional(chi);
        }
    }
    debug_assert_eq!(out.len(), gens.iter().map(|p| p.degree).sum::<usize>());
    out
}

pub fn jacobian_rank_at(polys: &[Poly], x: &[Q]) -> usize {
    if polys.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Q>> = polys.iter().map(|p| (0..x.len()).map(|k| p.partial(k).eval(x)).collect()).collect();
    rank_of(&rows)
}

/// Jacobian rank of the family, maximized over up to three seeded sample points.
pub fn mf_report(g: &MatrixRealization, chi: &[Q], seed: u64) -> Result<MfReport> {
    let gens = chevalley_generators(g)?;
    let fam = mf_family(&gens, chi);
    let polys: Vec<Poly> = fam.iter().map(|(_, _, p)| p.clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = (0, vec![]);
    for _ in 0..3 {
        let x = sample_point(g.dim(), &mut rng);
        let r = jacobian_rank_at(&polys, &x);
        if r > best.0 || best.1.is_empty() {
            best = (r, x);
        }
        if best.0 == polys.len() {
            break;
        }
    }
    Ok(MfReport {
        algebra: g.name.clone(),
        chi: chi.to_vec(),
        chi_regular: g.is_regular(chi),
        count: fam.len(),
        dim_b: g.dim_b(),
        jacobian_rank: best.0,
        sample_point: best.1,
        seed,
        members: fam.into_iter().map(|(d, i, p)| MfMember { generator_degree: d, order: i, polynomial: p.to_json() }).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CompatiblePair {
    pub parent: String,
    pub child: String,
    #[serde(with = "rational::vec")]
    pub chi: Vec<Q>,
    #[serde(with = "rational::vec")]
    pub chi_prime: Vec<Q>,
    pub regular: bool,
    #[serde(with = "rational::vec")]
    pub parent_values: Vec<Q>,
    #[serde(with = "rational::vec")]
    pub child_values: Vec<Q>,
    /// `P_j(chi)` recomputed from the child values through the coordinate change.
    #[serde(with = "rational::vec")]
    pub predicted_values: Vec<Q>,
    pub matched: bool,
    pub attempts: usize,
}

/// Every positive root is nonzero on the Cartan element `sum c_i h_i`.
pub fn cartan_regular(g: &MatrixRealization, x: &[Q]) -> bool {
    let l = g.rank;
    if x[l..].iter().any(|v| !v.is_zero()) {
        return false;
    }
    g.roots.iter().all(|r| {
        let v: Q = (0..l).map(|i| &x[i] * q((0..l).map(|j| r[j] * g.cartan.get(i, j)).sum::<i64>())).sum();
        !v.is_zero()
    })
}

/// Checks a proposed pair: `chi` must be sigma-fixed and equal to the image of `chi_prime`.
pub fn check_compatible(pair: &FoldedPair, data: &SectionData, chi: &[Q], chi_prime: &[Q]) -> Result<CompatiblePair> {
    if pair.sigma.mul_vec(chi) != chi {
        return Err(Error::invalid("chi is not sigma-fixed"));
    }
    if pair.embed(chi_prime) != chi {
        return Err(Error::invalid("chi_prime does not map to chi"));
    }
    let parent_values: Vec<Q> = data.parent_gens.iter().map(|p| p.poly.eval(chi)).collect();
    let child_values: Vec<Q> = data.child_gens.iter().map(|p| p.poly.eval(chi_prime)).collect();
    let predicted_values: Vec<Q> = data
        .parent_gens
        .iter()
        .map(|p| match data.report.change.iter().find(|c| c.parent_degree == p.degree) {
            Some(c) => c.eval(&child_values),
            None => Q::zero(),
        })
        .collect();
    Ok(CompatiblePair {
        parent: pair.parent.name.clone(),
        child: pair.child.name.clone(),
        chi: chi.to_vec(),
        chi_prime: chi_prime.to_vec(),
        regular: pair.parent.is_regular(chi),
        matched: parent_values == predicted_values,
        parent_values,
        child_values,
        predicted_values,
        attempts: 0,
    })
}

/// Samples a regular chi in the sigma-fixed Cartan subalgebra.
pub fn compatible_pair(pair: &FoldedPair, data: &SectionData, seed: u64, max_attempts: usize) -> Result<CompatiblePair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lc = pair.child.rank;
    for attempt in 1..=max_attempts {
        let c: Vec<Q> = (0..lc).map(|_| q(rng.gen_range(-9..=9))).collect();
        let chi_prime = pair.child.cartan_element(&c);
        let chi = pair.embed(&chi_prime);
        if !cartan_regular(&pair.parent, &chi) {
            continue;
        }
        let mut out = check_compatible(pair, data, &chi, &chi_prime)?;
        out.attempts = attempt;
        return Ok(out);
    }
    Err(Error::inconclusive(format!("no regular sigma-fixed element in {max_attempts} attempts")))
}

/// `(lambda, mu)` in the form on `h^*` induced by the trace form, fundamental coordinates.
pub fn induced_form(g: &MatrixRealization, m: &[i64], n: &[i64]) -> Q {
    let l = g.rank;
    let k = Matrix::from_rows(&(0..l).map(|i| (0..l).map(|j| g.kappa[(i, j)].clone()).collect()).collect::<Vec<_>>());
    let kinv = k.inverse().expect("trace form nondegenerate on h");
    let mq: Vec<Q> = m.iter().map(|&x| q(x)).collect();
    let nq: Vec<Q> = n.iter().map(|&x| q(x)).collect();
    kinv.mul_vec(&nq).iter().zip(&mq).map(|(a, b)| a * b).sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct HcValue {
    pub lambda: Vec<i64>,
    #[serde(with = "rational")]
    pub by_module: Q,
    #[serde(with = "rational")]
    pub by_form: Q,
    pub equal: bool,
}

/// Scalar of the Casimir `sum kappa^{ab} B_a B_b` on `V(lambda)`, lambda in fundamental coordinates.
pub fn hc_quadratic(g: &MatrixRealization, lambda: &[i64], cap: usize) -> Result<HcValue> {
    let datum = g.datum();
    let w = datum.weight(datum.from_fundamental(lambda).ok_or_else(|| Error::invalid("weight not in the lattice"))?);
    let m = construct_module(&datum, &w, cap)?;
    let e: Vec<Matrix> = m.e.iter().map(|x| x.to_dense()).collect();
    let f: Vec<Matrix> = m.f.iter().map(|x| x.to_dense()).collect();
    let images = g.represent(&e, &f);
    let n = m.dim();
    let mut v0 = vec![Q::zero(); n];
    v0[0] = Q::one();
    let mut out = vec![Q::zero(); n];
    let dim = g.dim();
    let xv: Vec<Vec<Q>> = images.iter().map(|x| x.mul_vec(&v0)).collect();
    for a in 0..dim {
        for b in 0..dim {
            let c = &g.kappa_inv[(a, b)];
            if c.is_zero() {
                continue;
            }
            let y = images[a].mul_vec(&xv[b]);
            for (o, yi) in out.iter_mut().zip(y) {
                *o += c * yi;
            }
        }
    }
    let by_module = out[0].clone();
    let eigen = out[1..].iter().all(|x| x.is_zero());
    let two_rho_plus: Vec<i64> = lambda.iter().map(|x| x + 2).collect();
    let by_form = induced_form(g, lambda, &two_rho_plus);
    Ok(HcValue { lambda: lambda.to_vec(), equal: eigen && by_module == by_form, by_module, by_form })
}

#[derive(Clone, Debug, Serialize)]
pub struct HcPartnerPoint {
    pub lambda: Vec<i64>,
    pub partner_lambda: Vec<i64>,
    pub parent: HcValue,
    pub partner: HcValue,
}

#[derive(Clone, Debug, Serialize)]
pub struct HcPartnerReport {
    pub parent: String,
    pub partner: String,
    pub points: Vec<HcPartnerPoint>,
    #[serde(with = "rational")]
    pub scale: Q,
    #[serde(with = "rational")]
    pub constant: Q,
    pub pass: bool,
}

/// Realization whose Cartan matrix equals the Jantzen partner of `sl_n` with its flip.
pub fn hc_partner_realization(parent: &MatrixRealization) -> Result<(MatrixRealization, crate::folding::FoldedDatum)> {
    let sigma = parent.sigma.as_ref().ok_or_else(|| Error::unsupported(format!("{} has no automorphism", parent.name)))?;
    let partner = jantzen_partner(&parent.datum(), &sigma.automorphism)?;
    for name in ALGEBRAS {
        let r = realization(name)?;
        if r.cartan == partner.datum.cartan {
            return Ok((r, partner));
        }
    }
    Err(Error::unsupported(format!("no shipped realization for the partner {}", partner.datum.cartan.label().map(|t| t.to_string()).unwrap_or_default())))
}

/// Fits `C_g(lambda) = c C_partner(lambda') + const` on the first two
/// sigma-invariant weights and verifies it on the rest.
pub fn hc_partner_check(parent: &MatrixRealization, weights: &[Vec<i64>], cap: usize) -> Result<HcPartnerReport> {
    if weights.len() < 3 {
        return Err(Error::invalid("need at least three weights"));
    }
    let (partner_g, partner) = hc_partner_realization(parent)?;
    let mut points = vec![];
    for lam in weights {
        let orbit = partner.restrict_fixed(lam).ok_or_else(|| Error::invalid(format!("{lam:?} is not sigma-invariant")))?;
        let pl = partner.datum.fundamental_coords(&orbit);
        points.push(HcPartnerPoint {
            lambda: lam.clone(),
            partner_lambda: pl.clone(),
            parent: hc_quadratic(parent, lam, cap)?,
            partner: hc_quadratic(&partner_g, &pl, cap)?,
        });
    }
    let (a0, b0) = (&points[0].parent.by_form, &points[0].partner.by_form);
    let (a1, b1) = (&points[1].parent.by_form, &points[1].partner.by_form);
    if b0 == b1 {
        return Err(Error::invalid("first two weights give equal partner values"));
    }
    let scale = (a1 - a0) / (b1 - b0);
    let constant = a0 - &scale * b0;
    let pass = points.iter().all(|p| p.parent.equal && p.partner.equal && p.parent.by_form == &scale * &p.partner.by_form + &constant);
    Ok(HcPartnerReport { parent: parent.name.clone(), partner: partner_g.name.clone(), points, scale, constant, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chevalley_degrees() {
        for (name, degs) in [("sl2", vec![2]), ("sl3", vec![2, 3]), ("sp4", vec![2, 4]), ("so5", vec![2, 4]), ("sl4", vec![2, 3, 4])] {
            let g = realization(name).unwrap();
            let gens = chevalley_generators(&g).unwrap();
            let d: Vec<usize> = gens.iter().map(|p| p.degree).collect();
            assert_eq!(d, degs, "{name}");
            assert_eq!(classical_degrees(&g), degs);
            assert_eq!(d.iter().sum::<usize>(), g.dim_b());
            for p in &gens {
                assert!(p.poly.is_homogeneous());
                assert!(is_invariant(&g, &p.poly), "{name} degree {}", p.degree);
            }
        }
    }

    #[test]
    fn non_invariant_detected() {
        let g = realization("sl2").unwrap();
        let p = Poly::var(3, 0);
        assert!(!is_invariant(&g, &p));
    }

    #[test]
    fn sl2_triple_and_section() {
        let g = realization("sl2").unwrap();
        let s = principal_triple(&g).unwrap();
        assert_eq!(s.p_minus1, vec![q(0), q(0), q(1)]);
        assert_eq!(s.two_rho_vee, vec![q(1), q(0), q(0)]);
        assert_eq!(s.p_1, vec![q(0), q(1), q(0)]);
        assert_eq!(s.degrees(), vec![1]);
        let gens = chevalley_generators(&g).unwrap();
        let r = restrict_to_section(&gens[0].poly, &s);
        assert_eq!(r.degree(), Some(1));
        assert!(!r.partial(0).is_zero());
    }

    #[test]
    fn sl3_section_jacobian_constant() {
        let g = realization("sl3").unwrap();
        let rep = invariants_report(&g).unwrap();
        assert!(rep.pass);
        assert!(rep.section_jacobian_constant);
        let s = principal_triple(&g).unwrap();
        let gens = chevalley_generators(&g).unwrap();
        let r: Vec<Poly> = gens.iter().map(|p| restrict_to_section(&p.poly, &s)).collect();
        let c = vec![q(3), q(-2)];
        let x = s.point(&c);
        let vals: Vec<Q> = gens.iter().map(|p| p.poly.eval(&x)).collect();
        assert_eq!(invert_section(&r, &vals).unwrap(), c);
    }

    #[test]
    fn sl4_vcan_and_sigma_fixed_triple() {
        let g = realization("sl4").unwrap();
        let s = principal_triple(&g).unwrap();
        assert_eq!(s.degrees(), vec![1, 2, 3]);
        let sig = &g.sigma.as_ref().unwrap().matrix;
        assert_eq!(sig.mul_vec(&s.p_1), s.p_1);
        assert_eq!(sig.mul_vec(&s.p_minus1), s.p_minus1);
    }

    #[test]
    fn section_checks() {
        for pair_name in ["sl2:sl2", "sl3:so3", "sl4:sp4"] {
            let pair = folded_pair(pair_name).unwrap();
            let data = sigma_section_check(&pair).unwrap();
            assert!(data.report.pass, "{pair_name}: {:?}", data.report);
        }
        let data = sigma_section_check(&folded_pair("sl4:sp4").unwrap()).unwrap();
        assert_eq!(data.report.vcan_fixed_degrees, vec![1, 3]);
        assert_eq!(data.report.vanishing_degrees, vec![3]);
        let triv = sigma_section_check(&folded_pair("sl2:sl2").unwrap()).unwrap();
        assert_eq!(triv.report.change.len(), 1);
        assert_eq!(triv.report.change[0].terms.len(), 1);
        assert_eq!(triv.report.change[0].terms[0].coefficient, Q::one());
        assert!(folded_pair("sl4:so5").is_err());
    }

    #[test]
    fn mf_ranks() {
        let g = realization("sl2").unwrap();
        let h = g.cartan_element(&[q(1)]);
        let r = mf_report(&g, &h, DEFAULT_SEED).unwrap();
        assert_eq!((r.count, r.jacobian_rank), (2, 2));
        let g = realization("sl3").unwrap();
        let chi = g.parse_element(&[q(1), q(2), q(-3)]).unwrap();
        let r = mf_report(&g, &chi, DEFAULT_SEED).unwrap();
        assert!(r.chi_regular);
        assert_eq!((r.count, r.jacobian_rank), (5, 5));
        let zero = vec![Q::zero(); g.dim()];
        let r = mf_report(&g, &zero, DEFAULT_SEED).unwrap();
        assert_eq!(r.jacobian_rank, 2);
    }

    #[test]
    fn compatible_pairs() {
        let pair = folded_pair("sl4:sp4").unwrap();
        let data = sigma_section_check(&pair).unwrap();
        let cp = compatible_pair(&pair, &data, DEFAULT_SEED, 20).unwrap();
        assert!(cp.regular && cp.matched);
        let zero = vec![Q::zero(); pair.child.dim()];
        let cp0 = check_compatible(&pair, &data, &vec![Q::zero(); pair.parent.dim()], &zero).unwrap();
        assert!(cp0.matched);
        let mut bad = vec![Q::zero(); pair.parent.dim()];
        bad[0] = Q::one();
        assert!(check_compatible(&pair, &data, &bad, &zero).is_err());
    }

    #[test]
    fn casimir_scalars() {
        let g = realization("sl2").unwrap();
        assert!(hc_quadratic(&g, &[0], 100).unwrap().by_module.is_zero());
        let v = hc_quadratic(&g, &[1], 100).unwrap();
        assert!(v.equal);
        assert_eq!(v.by_module, rational::parse("3/2").unwrap());
        let g = realization("sp4").unwrap();
        assert!(hc_quadratic(&g, &[1, 1], 100).unwrap().equal);
    }

    #[test]
    fn larger_pairs() {
        let data = sigma_section_check(&folded_pair("sl5:so5").unwrap()).unwrap();
        assert!(data.report.pass, "{:?}", data.report);
        assert_eq!(data.report.vanishing_degrees, vec![3, 5]);
        for (name, ws) in [("sl4", vec![vec![1, 0, 1], vec![0, 1, 0], vec![1, 1, 1]]), ("sl5", vec![vec![1, 0, 0, 1], vec![0, 1, 1, 0], vec![2, 0, 0, 2]])] {
            let g = realization(name).unwrap();
            let r = hc_partner_check(&g, &ws, 400).unwrap();
            assert!(r.pass, "{r:?}");
            assert!(r.constant.is_zero());
        }
    }

    #[test]
    fn casimir_partner_fit() {
        let g = realization("sl3").unwrap();
        let r = hc_partner_check(&g, &[vec![1, 1], vec![2, 2], vec![3, 3]], 200).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.constant.is_zero());
    }
}
