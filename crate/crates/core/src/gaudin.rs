//! The evaluation map on loop monomials, quadratic shift-of-argument
//! Hamiltonians, their spectra on highest-weight modules and the action of a
//! diagram automorphism on joint eigenlines.

use crate::error::{Error, Result};
use crate::folding::jantzen_partner;
use crate::invariants::{chevalley_generators, InvariantPoly};
use crate::linalg::{rank_of, Matrix};
use crate::rational::{self, q, Q};
use crate::realization::MatrixRealization;
use crate::reps::{construct_module, sigma_on_module, weyl_dim, HWModule};
use crate::uea::{represent, Pbw, UEAElement, Word};
use crate::upoly::{self, RealRoot};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

/// Product of `X_a[r]` factors in `U(g[t^{-1}] t^{-1})`, all `r <= -1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopMonomial(pub Vec<(usize, i64)>);

/// `(U-word, sorted S-word, power of z^{-1})`.
pub type TensorKey = (Word, Word, u32);

/// An element of `U(g) (x) S(g)` with coefficients polynomial in `z^{-1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement {
    pub terms: BTreeMap<TensorKey, Q>,
}

impl TensorElement {
    fn add_term(&mut self, k: TensorKey, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn one() -> Self {
        let mut t = TensorElement::default();
        t.add_term((vec![], vec![], 0), Q::one());
        t
    }

    pub fn mul(&self, o: &TensorElement, pbw: &Pbw) -> TensorElement {
        let mut out = TensorElement::default();
        for ((u1, s1, p1), a) in &self.terms {
            for ((u2, s2, p2), b) in &o.terms {
                let mut s = s1.clone();
                s.extend_from_slice(s2);
                s.sort_unstable();
                let mut w = u1.clone();
                w.extend_from_slice(u2);
                for (u, c) in pbw.normal_form(&w).terms {
                    out.add_term((u, s.clone(), p1 + p2), &c * a * b);
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, o: &TensorElement, c: &Q) {
        for (k, x) in &o.terms {
            self.add_term(k.clone(), x * c);
        }
    }

    /// Coefficients of the powers of `z^{-1}`, lowest first.
    pub fn coefficients(&self) -> BTreeMap<u32, TensorElement> {
        let mut out: BTreeMap<u32, TensorElement> = BTreeMap::new();
        for ((u, s, p), c) in &self.terms {
            out.entry(*p).or_default().add_term((u.clone(), s.clone(), 0), c.clone());
        }
        out
    }

    /// Substitutes a nonzero value for `z`.
    pub fn evaluate(&self, z: &Q) -> TensorElement {
        let zi = Q::one() / z;
        let mut out = TensorElement::default();
        for ((u, s, p), c) in &self.terms {
            let mut v = c.clone();
            for _ in 0..*p {
                v *= &zi;
            }
            out.add_term((u.clone(), s.clone(), 0), v);
        }
        out
    }
}

/// `Psi(X[r]) = z^r X (x) 1 + delta_{r,-1} 1 (x) X`, extended as an
/// anti-homomorphism, with `z` kept symbolic.
pub fn psi_eval_symbolic(pbw: &Pbw, m: &LoopMonomial) -> Result<TensorElement> {
    let mut out = TensorElement::one();
    for &(a, r) in m.0.iter().rev() {
        if r > -1 {
            return Err(Error::invalid(format!("loop degree {r} is not negative")));
        }
        if a >= pbw.g.dim() {
            return Err(Error::invalid(format!("basis index {a} out of range")));
        }
        let mut f = TensorElement::default();
        f.add_term((vec![a], vec![], (-r) as u32), Q::one());
        if r == -1 {
            f.add_term((vec![], vec![a], 0), Q::one());
        }
        out = out.mul(&f, pbw);
    }
    Ok(out)
}

pub fn psi_eval(pbw: &Pbw, m: &LoopMonomial, z: &Q) -> Result<TensorElement> {
    if z.is_zero() {
        return Err(Error::invalid("z must be nonzero"));
    }
    Ok(psi_eval_symbolic(pbw, m)?.evaluate(z))
}

/// The quadratic Segal-Sugawara symbol `sum kappa^{ab} X_a[-1] X_b[-1]`, term by term.
pub fn sugawara_symbol(g: &MatrixRealization) -> Vec<(Q, LoopMonomial)> {
    let mut out = vec![];
    for a in 0..g.dim() {
        for b in 0..g.dim() {
            let c = &g.kappa_inv[(a, b)];
            if !c.is_zero() {
                out.push((c.clone(), LoopMonomial(vec![(a, -1), (b, -1)])));
            }
        }
    }
    out
}

pub fn psi_eval_sum(pbw: &Pbw, terms: &[(Q, LoopMonomial)]) -> Result<TensorElement> {
    let mut out = TensorElement::default();
    for (c, m) in terms {
        out.add_scaled(&psi_eval_symbolic(pbw, m)?, c);
    }
    Ok(out)
}

/// The `z`-coefficients of a family, as generators.
pub fn coefficient_span(x: &TensorElement) -> Vec<TensorElement> {
    x.coefficients().into_values().collect()
}

fn tensor_rank(xs: &[TensorElement]) -> usize {
    let mut keys: Vec<&TensorKey> = xs.iter().flat_map(|x| x.terms.keys()).collect();
    keys.sort();
    keys.dedup();
    let rows: Vec<Vec<Q>> = xs.iter().map(|x| keys.iter().map(|k| x.terms.get(*k).cloned().unwrap_or_else(Q::zero)).collect()).collect();
    rank_of(&rows)
}

/// Rank of the coefficients and of the values at the given points.
pub fn span_ranks(x: &TensorElement, zs: &[Q]) -> (usize, usize) {
    let coeffs = coefficient_span(x);
    let values: Vec<TensorElement> = zs.iter().map(|z| x.evaluate(z)).collect();
    (tensor_rank(&coeffs), tensor_rank(&values))
}

#[derive(Clone, Debug)]
pub struct Hamiltonian {
    pub label: String,
    pub element: UEAElement,
}

/// Symmetrized quadratic and linear members of the shift-of-argument family, plus the Casimir.
pub fn quad_hamiltonians(pbw: &Pbw, gens: &[InvariantPoly], chi: &[Q]) -> Result<Vec<Hamiltonian>> {
    let g = pbw.g;
    if !g.is_regular(chi) {
        return Err(Error::invalid("chi is not regular"));
    }
    let kinv = &g.kappa_inv;
    let mut out = vec![];
    for p in gens {
        let mut cur = p.poly.clone();
        for i in 0..p.degree {
            if i + 2 == p.degree {
                // x_a x_b -> sym(B^a B^b), B^a = sum_b kappa^{ab} B_b
                let qm = cur.as_quadratic().ok_or_else(|| Error::failed("expected a quadratic form"))?;
                let t = kinv.mul(&qm).mul(kinv);
                out.push(Hamiltonian { label: format!("d^{i} P{}", p.degree), element: pbw.quadratic(&t) });
            } else if i + 1 == p.degree {
                let v = cur.as_linear().ok_or_else(|| Error::failed("expected a linear form"))?;
                out.push(Hamiltonian { label: format!("d^{i} P{}", p.degree), element: pbw.linear(&kinv.mul_vec(&v)) });
            }
            cur = cur.directional(chi);
        }
    }
    out.push(Hamiltonian { label: "casimir".into(), element: pbw.quadratic(kinv) });
    Ok(out)
}

/// Pairs `(i, j)` whose commutator is nonzero in normal form.
pub fn noncommuting_pairs(pbw: &Pbw, fam: &[Hamiltonian]) -> Vec<(usize, usize)> {
    let mut bad = vec![];
    for i in 0..fam.len() {
        for j in i + 1..fam.len() {
            if !pbw.commutator(&fam[i].element, &fam[j].element).is_zero() {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// A seeded regular element of the Cartan subalgebra, fixed by `sigma` if given.
pub fn sample_regular_cartan(g: &MatrixRealization, sigma: Option<&crate::folding::DiagramAutomorphism>, rng: &mut ChaCha8Rng, tries: usize) -> Option<Vec<Q>> {
    for _ in 0..tries {
        let mut c: Vec<i64> = (0..g.rank).map(|_| rng.gen_range(-9..=9)).collect();
        if let Some(s) = sigma {
            for i in 0..g.rank {
                c[s.apply(i)] = c[i.min(s.apply(i))];
            }
            for i in 0..g.rank {
                c[i] = c[i.min(s.apply(i))];
            }
        }
        let x = g.cartan_element(&c.iter().map(|&v| q(v)).collect::<Vec<_>>());
        if crate::invariants::cartan_regular(g, &x) {
            return Some(x);
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumStatus {
    Simple,
    NotSimple,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenLine {
    pub eigenvalue: RealRoot,
    /// Joint eigenvalues of the family on the line, when the line is rational.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub joint: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub algebra: String,
    pub highest: Vec<i64>,
    pub module_dim: usize,
    #[serde(with = "rational::vec")]
    pub chi: Vec<Q>,
    pub family: Vec<String>,
    pub commuting: bool,
    pub seed: u64,
    pub combination: Vec<i64>,
    #[serde(with = "rational::vec")]
    pub charpoly: Vec<Q>,
    pub squarefree: bool,
    /// Sizes of the coordinate blocks left invariant by the family.
    pub blocks: Vec<usize>,
    /// Dimension of the algebra generated by the family, capped at the
    /// module dimension; computed only when the characteristic polynomial
    /// is not square-free.
    pub generated_algebra_dim: usize,
    pub status: SpectrumStatus,
    pub lines: Vec<EigenLine>,
    pub tolerance: String,
}

/// The family as matrices on a module.
pub struct FamilyOnModule {
    pub module: HWModule,
    pub images: Vec<Matrix>,
    pub family: Vec<Matrix>,
}

pub fn family_on_module(g: &MatrixRealization, fam: &[Hamiltonian], lambda: &[i64], cap: usize) -> Result<FamilyOnModule> {
    let datum = g.datum();
    let w = datum.weight(datum.from_fundamental(lambda).ok_or_else(|| Error::invalid("weight not in the lattice"))?);
    let module = construct_module(&datum, &w, cap)?;
    let e: Vec<Matrix> = module.e.iter().map(|x| x.to_dense()).collect();
    let f: Vec<Matrix> = module.f.iter().map(|x| x.to_dense()).collect();
    let images = g.represent(&e, &f);
    let family = fam.iter().map(|h| represent(&h.element, &images)).collect();
    Ok(FamilyOnModule { module, images, family })
}

/// Dimension of the unital algebra generated by block-diagonal matrices,
/// each given by its diagonal blocks, capped at `stop`.
fn generated_dim(ms: &[Vec<Matrix>], stop: usize) -> usize {
    let flat = |m: &[Matrix]| -> Vec<Q> { m.iter().flat_map(|b| b.flat().iter().cloned()).collect() };
    // echelon rows as (pivot, row) with row[pivot] = 1
    let mut echelon: Vec<(usize, Vec<Q>)> = vec![];
    let mut queue: Vec<Vec<Matrix>> = vec![ms[0].iter().map(|b| Matrix::identity(b.rows)).collect()];
    while let Some(m) = queue.pop() {
        let mut v = flat(&m);
        for (p, row) in &echelon {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &c * r;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let inv = Q::one() / &v[p];
        for x in v.iter_mut() {
            *x *= &inv;
        }
        echelon.push((p, v));
        if echelon.len() >= stop {
            break;
        }
        for h in ms {
            queue.push(m.iter().zip(h).map(|(a, b)| a.mul(b)).collect());
        }
    }
    echelon.len()
}

pub const TOLERANCE_EXP: u32 = 20;
const COMBINATION_RANGE: i64 = 1_000_000;

/// Coordinate blocks left invariant by every matrix in `ms`: the connected
/// components of their joint support.
pub fn invariant_blocks(ms: &[Matrix]) -> Vec<Vec<usize>> {
    let n = ms.first().map_or(0, |m| m.rows);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for m in ms {
        for i in 0..n {
            for j in 0..n {
                if i != j && !m[(i, j)].is_zero() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        blocks.entry(r).or_default().push(i);
    }
    blocks.into_values().collect()
}

pub fn spectrum(g: &MatrixRealization, fam: &[Hamiltonian], on: &FamilyOnModule, chi: &[Q], seed: u64) -> SpectrumReport {
    let n = on.module.dim();
    let hs = &on.family;
    let commuting = hs.iter().enumerate().all(|(i, a)| hs[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)));
    let blocks = invariant_blocks(hs);
    let restricted: Vec<Vec<Matrix>> = blocks.iter().map(|b| hs.iter().map(|h| h.principal(b)).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut combination = vec![];
    let mut cp = vec![];
    let mut block_cps = vec![];
    let mut squarefree = false;
    let mut ms = vec![];
    for _ in 0..4 {
        // wide enough to avoid the hyperplanes where two joint eigenvalues meet
        combination = (0..hs.len()).map(|_| rng.gen_range(-COMBINATION_RANGE..=COMBINATION_RANGE)).collect();
        ms = restricted
            .iter()
            .map(|rs| {
                let mut m = Matrix::zeros(rs[0].rows, rs[0].rows);
                for (c, h) in combination.iter().zip(rs) {
                    m.add_scaled(&q(*c), h);
                }
                m
            })
            .collect();
        block_cps = ms.iter().map(|m| m.charpoly()).collect::<Vec<_>>();
        cp = block_cps.iter().fold(vec![Q::one()], |acc, p| upoly::product(&acc, p));
        squarefree = upoly::is_squarefree(&cp);
        if squarefree {
            break;
        }
    }
    // only needed to tell "not simple" from "inconclusive"
    let generated_algebra_dim = if commuting && !squarefree {
        let per_member: Vec<Vec<Matrix>> = (0..hs.len()).map(|j| restricted.iter().map(|rs| rs[j].clone()).collect()).collect();
        generated_dim(&per_member, n)
    } else {
        n
    };
    let tol = Q::new(1.into(), num_bigint::BigInt::from(10).pow(TOLERANCE_EXP));
    let mut lines = vec![];
    let mut status = if !commuting {
        SpectrumStatus::Inconclusive
    } else if squarefree {
        SpectrumStatus::Simple
    } else if generated_algebra_dim < n {
        SpectrumStatus::NotSimple
    } else {
        SpectrumStatus::Inconclusive
    };
    if squarefree && commuting {
        let roots = upoly::isolate_union(&block_cps, &tol);
        if roots.len() != n {
            status = SpectrumStatus::Inconclusive;
        }
        for (b, r) in roots {
            let joint = match &r {
                RealRoot::Exact(x) => {
                    let m = &ms[b];
                    let k = m.sub(&Matrix::identity(m.rows).scale(x)).kernel();
                    if k.len() != 1 {
                        status = SpectrumStatus::Inconclusive;
                        None
                    } else {
                        let v = &k[0];
                        let p = v.iter().position(|x| !x.is_zero()).unwrap();
                        let vals: Option<Vec<Q>> = restricted[b]
                            .iter()
                            .map(|h| {
                                let hv = h.mul_vec(v);
                                let c = &hv[p] / &v[p];
                                (hv == v.iter().map(|x| x * &c).collect::<Vec<_>>()).then_some(c)
                            })
                            .collect();
                        if vals.is_none() {
                            status = SpectrumStatus::Inconclusive;
                        }
                        vals.map(|v| rational::strings(&v))
                    }
                }
                RealRoot::Interval(..) => None,
            };
            lines.push(EigenLine { eigenvalue: r, joint });
        }
    }
    SpectrumReport {
        algebra: g.name.clone(),
        highest: on.module.datum.fundamental_coords(&on.module.highest.coords),
        module_dim: n,
        chi: chi.to_vec(),
        family: fam.iter().map(|h| h.label.clone()).collect(),
        commuting,
        seed,
        combination,
        charpoly: cp,
        squarefree,
        blocks: blocks.iter().map(Vec::len).collect(),
        generated_algebra_dim,
        status,
        lines,
        tolerance: format!("1e-{TOLERANCE_EXP}"),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaEigenlineReport {
    pub algebra: String,
    pub highest: Vec<i64>,
    pub spectrum_status: SpectrumStatus,
    pub family_sigma_stable: bool,
    /// Sign of `sigma` on each family member (`0` if neither).
    pub family_signs: Vec<i32>,
    pub module_dim: usize,
    pub fixed_lines: usize,
    pub plus_lines: usize,
    pub minus_lines: usize,
    pub two_cycles: usize,
    pub partner: String,
    pub partner_highest: Vec<i64>,
    pub expected_fixed: u64,
    pub pass: bool,
}

fn stack(ms: &[Matrix]) -> Matrix {
    let rows: Vec<Vec<Q>> = ms.iter().flat_map(|m| m.to_rows()).collect();
    Matrix::from_rows(&rows)
}

/// Counts sigma-fixed joint eigenlines and their signs. With a simple spectrum,
/// the fixed lines span `K = cap_j ker(H_j - S H_j S^{-1})`.
pub fn sigma_eigenline_analysis(
    g: &MatrixRealization,
    fam: &[Hamiltonian],
    pbw: &Pbw,
    on: &FamilyOnModule,
    report: &SpectrumReport,
) -> Result<SigmaEigenlineReport> {
    let sigma = g.sigma.as_ref().ok_or_else(|| Error::invalid(format!("{} has no automorphism", g.name)))?;
    let n = on.module.dim();
    let s = sigma_on_module(&on.module, &sigma.automorphism)?.to_dense();
    let sinv = s.inverse().ok_or_else(|| Error::failed("S is not invertible"))?;
    // sigma on the family, in U(g)
    let mut family_signs = vec![];
    let mut stable = true;
    let elems: Vec<&UEAElement> = fam.iter().map(|h| &h.element).collect();
    for h in &elems {
        let sh = pbw.apply_automorphism(&sigma.matrix, h);
        let sign = if sh == **h {
            1
        } else if sh == h.scale(&-Q::one()) {
            -1
        } else {
            0
        };
        family_signs.push(sign);
        if sign == 0 {
            // membership in the span of the family
            let mut keys: Vec<&Word> = elems.iter().flat_map(|e| e.terms.keys()).chain(sh.terms.keys()).collect();
            keys.sort();
            keys.dedup();
            let cols: Vec<Vec<Q>> = elems.iter().map(|e| keys.iter().map(|k| e.terms.get(*k).cloned().unwrap_or_else(Q::zero)).collect()).collect();
            let target: Vec<Q> = keys.iter().map(|k| sh.terms.get(*k).cloned().unwrap_or_else(Q::zero)).collect();
            if Matrix::from_cols(&cols).solve(&target).is_none() {
                stable = false;
            }
        }
    }
    // the module operator realizes sigma on the family
    for (h, sign) in on.family.iter().zip(&family_signs) {
        if *sign != 0 && s.mul(h).mul(&sinv) != h.scale(&q(*sign as i64)) {
            stable = false;
        }
    }
    let diffs: Vec<Matrix> = on.family.iter().map(|h| h.sub(&s.mul(h).mul(&sinv))).collect();
    let k = stack(&diffs).kernel();
    let fixed_lines = k.len();
    let id = Matrix::identity(n);
    let mut plus = diffs.clone();
    plus.push(s.sub(&id));
    let mut minus = diffs;
    minus.push(s.add(&id));
    let plus_lines = stack(&plus).kernel().len();
    let minus_lines = stack(&minus).kernel().len();
    let partner = jantzen_partner(&on.module.datum, &sigma.automorphism)?;
    let lam = on.module.datum.fundamental_coords(&on.module.highest.coords);
    let restricted = partner.restrict_fixed(&lam).ok_or_else(|| Error::invalid("highest weight is not sigma-invariant"))?;
    let pw = partner.datum.weight(restricted);
    let expected_fixed = weyl_dim(&partner.datum, &pw)?;
    let simple = matches!(report.status, SpectrumStatus::Simple);
    let pass = simple
        && stable
        && plus_lines + minus_lines == fixed_lines
        && minus_lines == 0
        && fixed_lines as u64 == expected_fixed;
    Ok(SigmaEigenlineReport {
        algebra: g.name.clone(),
        highest: lam,
        spectrum_status: report.status.clone(),
        family_sigma_stable: stable,
        family_signs,
        module_dim: n,
        fixed_lines,
        plus_lines,
        minus_lines,
        two_cycles: (n - fixed_lines) / 2,
        partner: partner.datum.cartan.label().map(|t| t.to_string()).unwrap_or_default(),
        partner_highest: partner.datum.fundamental_coords(&pw.coords),
        expected_fixed,
        pass,
    })
}

/// Spectrum and sigma analysis for `lambda` at a seeded regular sigma-fixed `chi`.
pub struct EigenlineRun {
    pub spectrum: SpectrumReport,
    pub sigma: Option<SigmaEigenlineReport>,
}

pub fn run_spectrum(g: &MatrixRealization, lambda: &[i64], chi: Option<Vec<Q>>, with_sigma: bool, seed: u64, cap: usize) -> Result<EigenlineRun> {
    let gens = chevalley_generators(g)?;
    let pbw = Pbw::new(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma_aut = if with_sigma { Some(g.sigma.as_ref().ok_or_else(|| Error::invalid(format!("{} has no automorphism", g.name)))?.automorphism.clone()) } else { None };
    let chi = match chi {
        Some(c) => c,
        None => sample_regular_cartan(g, sigma_aut.as_ref(), &mut rng, 50).ok_or_else(|| Error::inconclusive("no regular chi found"))?,
    };
    let fam = quad_hamiltonians(&pbw, &gens, &chi)?;
    let on = family_on_module(g, &fam, lambda, cap)?;
    let spectrum = spectrum(g, &fam, &on, &chi, seed);
    let sigma = if with_sigma {
        let sm = &g.sigma.as_ref().unwrap().matrix;
        if sm.mul_vec(&chi) != chi {
            return Err(Error::invalid("chi is not sigma-fixed"));
        }
        Some(sigma_eigenline_analysis(g, &fam, &pbw, &on, &spectrum)?)
    } else {
        None
    };
    Ok(EigenlineRun { spectrum, sigma })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::realization;

    #[test]
    fn psi_on_single_factors() {
        let g = realization("sl2").unwrap();
        let pbw = Pbw::new(&g);
        let two = psi_eval_symbolic(&pbw, &LoopMonomial(vec![(1, -2)])).unwrap();
        assert_eq!(two.terms.len(), 1);
        assert_eq!(two.terms.get(&(vec![1], vec![], 2)), Some(&Q::one()));
        let one = psi_eval(&pbw, &LoopMonomial(vec![(1, -1)]), &q(2)).unwrap();
        assert_eq!(one.terms.get(&(vec![1], vec![], 0)), Some(&rational::parse("1/2").unwrap()));
        assert_eq!(one.terms.get(&(vec![], vec![1], 0)), Some(&Q::one()));
        assert!(psi_eval(&pbw, &LoopMonomial(vec![(1, -1)]), &Q::zero()).is_err());
        assert!(psi_eval_symbolic(&pbw, &LoopMonomial(vec![(1, 0)])).is_err());
    }

    #[test]
    fn psi_is_an_antihomomorphism() {
        let g = realization("sl3").unwrap();
        let pbw = Pbw::new(&g);
        let m1 = LoopMonomial(vec![(3, -1), (6, -2)]);
        let m2 = LoopMonomial(vec![(7, -1), (0, -1)]);
        let mut m12 = m1.0.clone();
        m12.extend(m2.0.clone());
        let lhs = psi_eval_symbolic(&pbw, &LoopMonomial(m12)).unwrap();
        let rhs = psi_eval_symbolic(&pbw, &m2).unwrap().mul(&psi_eval_symbolic(&pbw, &m1).unwrap(), &pbw);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sugawara_coefficients() {
        let g = realization("sl2").unwrap();
        let pbw = Pbw::new(&g);
        let x = psi_eval_sum(&pbw, &sugawara_symbol(&g)).unwrap();
        let co = x.coefficients();
        assert_eq!(co.keys().copied().collect::<Vec<_>>(), vec![0, 1, 2]);
        let cas = pbw.quadratic(&g.kappa_inv);
        let mut want = TensorElement::default();
        for (u, c) in &cas.terms {
            want.add_term((u.clone(), vec![], 0), c.clone());
        }
        assert_eq!(co[&2], want);
        assert!(co[&0].terms.keys().all(|(u, s, _)| u.is_empty() && s.len() == 2));
        assert!(co[&1].terms.keys().all(|(u, s, _)| u.len() == 1 && s.len() == 1));
        let (rc, rv) = span_ranks(&x, &[q(1), q(2), q(-3)]);
        assert_eq!((rc, rv), (3, 3));
        assert_eq!(coefficient_span(&TensorElement::one()).len(), 1);
    }

    #[test]
    fn families_commute() {
        for name in ["sl2", "sl3"] {
            let g = realization(name).unwrap();
            let pbw = Pbw::new(&g);
            let gens = chevalley_generators(&g).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            let chi = sample_regular_cartan(&g, None, &mut rng, 20).unwrap();
            let fam = quad_hamiltonians(&pbw, &gens, &chi).unwrap();
            assert!(noncommuting_pairs(&pbw, &fam).is_empty(), "{name}");
        }
        let g = realization("sl2").unwrap();
        let pbw = Pbw::new(&g);
        let gens = chevalley_generators(&g).unwrap();
        assert!(quad_hamiltonians(&pbw, &gens, &vec![Q::zero(); 3]).is_err());
    }

    #[test]
    fn sl2_spectrum() {
        let g = realization("sl2").unwrap();
        let chi = g.cartan_element(&[rational::parse("1/2").unwrap()]);
        let run = run_spectrum(&g, &[1], Some(chi.clone()), false, 1, 100).unwrap();
        assert!(matches!(run.spectrum.status, SpectrumStatus::Simple));
        assert_eq!(run.spectrum.lines.len(), 2);
        let triv = run_spectrum(&g, &[0], Some(chi), false, 1, 100).unwrap();
        assert!(matches!(triv.spectrum.status, SpectrumStatus::Simple));
        assert_eq!(triv.spectrum.lines.len(), 1);
    }

    #[test]
    fn sl3_adjoint_eigenlines() {
        let g = realization("sl3").unwrap();
        let run = run_spectrum(&g, &[1, 1], None, true, 7, 100).unwrap();
        assert!(matches!(run.spectrum.status, SpectrumStatus::Simple), "{:?}", run.spectrum);
        let s = run.sigma.unwrap();
        assert!(s.pass, "{s:?}");
        assert_eq!(s.fixed_lines, 2);
    }
}
