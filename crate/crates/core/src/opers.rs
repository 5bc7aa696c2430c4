//! Opers on the formal disc: connections `d/dt + t^{-k} A(t)` with `A` valued
//! in `sum psi_i f_i + b`, gauge action of unipotent series, reduction to the
//! canonical form `p_{-1} + V_can[[t]]`, the diagram automorphism and residues.
//!
//! Gauge convention: `g . (d + A) = d + g A g^{-1} - (dg) g^{-1}`.
//! Input connections are exact polynomials in `t`. Canonical forms are
//! infinite series; they are computed at a working order large enough that
//! the requested `order` coefficients are exact despite the one order lost
//! to every derivative.

use crate::error::{Error, Result};
use crate::invariants::{chevalley_generators, invert_section, principal_triple, restrict_to_section, FoldedPair, InvariantPoly, KostantSection};
use crate::linalg::Matrix;
use crate::rational::{self, q, Q};
use crate::realization::MatrixRealization;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const DEFAULT_ORDER: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperConnection {
    pub algebra: String,
    #[serde(default)]
    pub pole_order: usize,
    /// `A(t) = sum_k t^k coeffs[k]` in basis coordinates.
    #[serde(with = "rational::vecvec")]
    pub coeffs: Vec<Vec<Q>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalOper {
    pub algebra: String,
    /// `ad rho^vee` degree of each `V_can` basis vector.
    pub degrees: Vec<i64>,
    /// `coeffs[k][j]`: coefficient of `t^j` on the `k`-th `V_can` vector.
    #[serde(with = "rational::vecvec")]
    pub coeffs: Vec<Vec<Q>>,
    pub order: usize,
}

impl CanonicalOper {
    pub fn zero(g: &MatrixRealization, s: &KostantSection, order: usize) -> Self {
        CanonicalOper { algebra: g.name.clone(), degrees: s.degrees(), coeffs: vec![vec![Q::zero(); order]; s.slodowy.len()], order }
    }

    pub fn truncate(&self, order: usize) -> CanonicalOper {
        let order = order.min(self.order);
        CanonicalOper {
            algebra: self.algebra.clone(),
            degrees: self.degrees.clone(),
            coeffs: self.coeffs.iter().map(|c| c[..order].to_vec()).collect(),
            order,
        }
    }

    /// The connection `p_{-1} + sum_k c_k(t) v_k`.
    pub fn to_connection(&self, s: &KostantSection) -> OperConnection {
        let dim = s.p_minus1.len();
        let mut coeffs = vec![vec![Q::zero(); dim]; self.order.max(1)];
        coeffs[0] = s.p_minus1.clone();
        for (c, (_, v)) in self.coeffs.iter().zip(&s.slodowy) {
            for (j, cj) in c.iter().enumerate() {
                if !cj.is_zero() {
                    for (x, va) in coeffs[j].iter_mut().zip(v) {
                        *x += cj * va;
                    }
                }
            }
        }
        OperConnection { algebra: self.algebra.clone(), pole_order: 0, coeffs }
    }
}

type MatSeries = Vec<Matrix>;

fn ms_mul(a: &MatSeries, b: &MatSeries, len: usize) -> MatSeries {
    let n = a[0].rows;
    let mut out = vec![Matrix::zeros(n, n); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

fn ms_deriv(a: &MatSeries) -> MatSeries {
    let n = a[0].rows;
    let mut out: MatSeries = (1..a.len()).map(|k| a[k].scale(&q(k as i64))).collect();
    out.push(Matrix::zeros(n, n));
    out
}

/// `exp(x)` for a nilpotent series `x` of `n x n` matrices with `x(0)` nilpotent.
fn ms_exp(x: &MatSeries, len: usize) -> MatSeries {
    let n = x[0].rows;
    let mut out = vec![Matrix::zeros(n, n); len];
    out[0] = Matrix::identity(n);
    let mut pow = out.clone();
    let mut fact = Q::one();
    for k in 1..=n {
        pow = ms_mul(&pow, x, len);
        fact *= q(k as i64);
        let inv = Q::one() / &fact;
        for (o, p) in out.iter_mut().zip(&pow) {
            o.add_scaled(&inv, p);
        }
    }
    out
}

fn to_series(g: &MatrixRealization, coeffs: &[Vec<Q>], len: usize) -> MatSeries {
    (0..len).map(|k| coeffs.get(k).map(|c| g.element(c)).unwrap_or_else(|| Matrix::zeros(g.n, g.n))).collect()
}

fn from_series(g: &MatrixRealization, a: &MatSeries) -> Result<Vec<Vec<Q>>> {
    a.iter().map(|m| g.coords_checked(m).ok_or_else(|| Error::failed("gauge action left the algebra"))).collect()
}

fn scalar_inv(s: &[Q], len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    out[0] = Q::one() / &s[0];
    for k in 1..len {
        let mut acc = Q::zero();
        for j in 1..=k.min(s.len() - 1) {
            acc += &s[j] * &out[k - j];
        }
        out[k] = -acc / &s[0];
    }
    out
}

fn scalar_mul(a: &[Q], b: &[Q], len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Trims trailing zero coefficients.
fn trim(mut c: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    while c.len() > 1 && c.last().is_some_and(|v| v.iter().all(Zero::is_zero)) {
        c.pop();
    }
    c
}

/// The `psi_i(t)` series and a check that `A` lies in `sum f_i + b`.
pub fn check_oper(g: &MatrixRealization, c: &OperConnection) -> Result<Vec<Vec<Q>>> {
    if c.coeffs.is_empty() {
        return Err(Error::invalid("connection has no coefficients"));
    }
    let dim = g.dim();
    let l = g.rank;
    for (k, v) in c.coeffs.iter().enumerate() {
        if v.len() != dim {
            return Err(Error::invalid(format!("coefficient {k} has length {}, expected {dim}", v.len())));
        }
        for a in g.f_index(0)..dim {
            if a >= g.f_index(l) && !v[a].is_zero() {
                return Err(Error::invalid(format!("coefficient {k} has a component on a non-simple negative root")));
            }
        }
    }
    let psi: Vec<Vec<Q>> = (0..l).map(|i| c.coeffs.iter().map(|v| v[g.f_index(i)].clone()).collect()).collect();
    if let Some(i) = psi.iter().position(|p| p[0].is_zero()) {
        return Err(Error::invalid(format!("psi_{}(0) = 0: not an oper", i + 1)));
    }
    Ok(psi)
}

/// `exp(x) . c` for an `n`-valued polynomial `x`. The result is again an exact polynomial.
pub fn gauge_transform(g: &MatrixRealization, c: &OperConnection, x: &[Vec<Q>]) -> Result<OperConnection> {
    for (k, v) in x.iter().enumerate() {
        if (0..g.dim()).any(|a| g.degree(a) <= 0 && !v[a].is_zero()) {
            return Err(Error::invalid(format!("gauge coefficient {k} is not in n")));
        }
    }
    let n = g.n;
    let len = c.coeffs.len() + 2 * n * x.len().max(1) + 1;
    let a = to_series(g, &c.coeffs, len);
    let xs = to_series(g, x, len);
    let minus: MatSeries = xs.iter().map(|m| m.scale(&-Q::one())).collect();
    let e = ms_exp(&xs, len);
    let einv = ms_exp(&minus, len);
    let conj = ms_mul(&ms_mul(&e, &a, len), &einv, len);
    // t^{-k} A with k > 0: the gauge term is regular, so it lands k orders up
    let dg = ms_mul(&ms_deriv(&e), &einv, len);
    let mut out = conj;
    let shift = c.pole_order;
    for (j, m) in dg.into_iter().enumerate() {
        if j + shift < len {
            out[j + shift] = out[j + shift].sub(&m);
        }
    }
    Ok(OperConnection { algebra: c.algebra.clone(), pole_order: c.pole_order, coeffs: trim(from_series(g, &out)?) })
}

/// Canonical form of a regular (`pole_order = 0`) oper, exact to `order` coefficients.
pub fn gauge_reduce(g: &MatrixRealization, s: &KostantSection, c: &OperConnection, order: usize) -> Result<CanonicalOper> {
    if c.pole_order != 0 {
        return Err(Error::invalid("gauge_reduce needs pole order 0"));
    }
    let psi = check_oper(g, c)?;
    let dim = g.dim();
    let n = g.n;
    let max_deg = s.slodowy.iter().map(|(d, _)| *d).max().unwrap_or(0);
    let steps = 1 + max_deg as usize + 1;
    let work = order + steps;
    let mut valid = work;
    let mut a = to_series(g, &c.coeffs, work);

    // H[[t]]: diagonal D with D_{r} / D_{c} = 1 / psi_i on the support of f_i
    let mut d: Vec<Option<Vec<Q>>> = vec![None; n];
    d[0] = Some({
        let mut one = vec![Q::zero(); work];
        one[0] = Q::one();
        one
    });
    let inv_psi: Vec<Vec<Q>> = psi.iter().map(|p| scalar_inv(p, work)).collect();
    for col in 0..n - 1 {
        let i = (0..g.rank)
            .find(|&i| !g.basis[g.f_index(i)][(col + 1, col)].is_zero())
            .ok_or_else(|| Error::unsupported(format!("{}: f_i are not subdiagonal", g.name)))?;
        let prev = d[col].clone().unwrap();
        d[col + 1] = Some(scalar_mul(&prev, &inv_psi[i], work));
    }
    let d: Vec<Vec<Q>> = d.into_iter().map(Option::unwrap).collect();
    let diag = |ser: &Vec<Vec<Q>>| -> MatSeries {
        (0..work)
            .map(|k| {
                let mut m = Matrix::zeros(n, n);
                for r in 0..n {
                    m[(r, r)] = ser[r][k].clone();
                }
                m
            })
            .collect()
    };
    let dinv: Vec<Vec<Q>> = d.iter().map(|x| scalar_inv(x, work)).collect();
    let dm = diag(&d);
    let dinvm = diag(&dinv);
    a = ms_mul(&ms_mul(&dm, &a, work), &dinvm, work);
    let mut log = ms_mul(&ms_deriv(&dm), &dinvm, work);
    for m in log.iter_mut() {
        let tr = m.trace() / q(n as i64);
        for r in 0..n {
            m[(r, r)] -= &tr;
        }
    }
    for (x, y) in a.iter_mut().zip(&log) {
        *x = x.sub(y);
    }
    valid -= 1;
    a.truncate(valid);
    let mut coords = from_series(g, &a).map_err(|_| Error::unsupported(format!("{}: torus normalization leaves the algebra", g.name)))?;
    for (k, v) in coords.iter().enumerate().take(valid) {
        for i in 0..g.rank {
            let want = if k == 0 { Q::one() } else { Q::zero() };
            if v[g.f_index(i)] != want {
                return Err(Error::unsupported(format!("{}: torus normalization failed", g.name)));
            }
        }
    }

    // degree by degree: v_m = [p_{-1}, y] + w, w in V_can_m, then gauge by exp(y)
    for m in 0..=max_deg {
        let up: Vec<usize> = (0..dim).filter(|&b| g.degree(b) == m + 1).collect();
        let here: Vec<usize> = (0..dim).filter(|&b| g.degree(b) == m).collect();
        let vc: Vec<&Vec<Q>> = s.slodowy.iter().filter(|(dg, _)| *dg == m).map(|(_, v)| v).collect();
        let mut cols: Vec<Vec<Q>> = up
            .iter()
            .map(|&b| {
                let mut e = vec![Q::zero(); dim];
                e[b] = Q::one();
                let br = g.bracket(&s.p_minus1, &e);
                here.iter().map(|&h| br[h].clone()).collect()
            })
            .collect();
        cols.extend(vc.iter().map(|v| here.iter().map(|&h| v[h].clone()).collect()));
        let sys = Matrix::from_cols(&cols);
        let mut y = vec![vec![Q::zero(); dim]; valid];
        let mut nonzero = false;
        for (k, v) in coords.iter().enumerate().take(valid) {
            let rhs: Vec<Q> = here.iter().map(|&h| v[h].clone()).collect();
            let sol = sys.solve(&rhs).ok_or_else(|| Error::failed(format!("degree {m} does not split along [p_-1, g] + V_can")))?;
            for (j, &b) in up.iter().enumerate() {
                if !sol[j].is_zero() {
                    y[k][b] = sol[j].clone();
                    nonzero = true;
                }
            }
        }
        // the gauge parameter is only known to `valid` terms; its derivative to one fewer
        valid -= 1;
        if nonzero {
            let ys = to_series(g, &y, valid + 1);
            let minus: MatSeries = ys.iter().map(|x| x.scale(&-Q::one())).collect();
            let e = ms_exp(&ys, valid + 1);
            let einv = ms_exp(&minus, valid + 1);
            let mut b = ms_mul(&ms_mul(&e, &a, valid), &einv, valid);
            let dg = ms_mul(&ms_deriv(&e), &einv, valid);
            for (x, z) in b.iter_mut().zip(&dg) {
                *x = x.sub(z);
            }
            a = b;
        } else {
            a.truncate(valid);
        }
        coords = from_series(g, &a)?;
    }
    if valid < order {
        return Err(Error::failed("working order too small"));
    }
    // read off V_can coordinates
    let vmat = Matrix::from_cols(&s.slodowy.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>());
    let mut out = vec![vec![Q::zero(); order]; s.slodowy.len()];
    for (k, v) in coords.iter().enumerate().take(order) {
        let mut rest = v.clone();
        if k == 0 {
            for (r, p) in rest.iter_mut().zip(&s.p_minus1) {
                *r -= p;
            }
        }
        let c = vmat.solve(&rest).ok_or_else(|| Error::failed(format!("coefficient {k} is not in V_can after reduction")))?;
        if vmat.mul_vec(&c) != rest {
            return Err(Error::failed("reduction residual is nonzero"));
        }
        for (j, cj) in c.into_iter().enumerate() {
            out[j][k] = cj;
        }
    }
    Ok(CanonicalOper { algebra: g.name.clone(), degrees: s.degrees(), coeffs: out, order })
}

/// `sigma(d + A) = d + sigma^{-1}(A)`, coefficientwise.
pub fn sigma_on_oper(sigma: &Matrix, c: &OperConnection) -> Result<OperConnection> {
    let inv = sigma.inverse().ok_or_else(|| Error::invalid("sigma is not invertible"))?;
    Ok(OperConnection { algebra: c.algebra.clone(), pole_order: c.pole_order, coeffs: c.coeffs.iter().map(|v| inv.mul_vec(v)).collect() })
}

/// Coordinates of an element of `V_can` in the basis of `s`, if it lies there.
fn vcan_coords(s: &KostantSection, x: &[Q]) -> Option<Vec<Q>> {
    let vmat = Matrix::from_cols(&s.slodowy.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>());
    let c = vmat.solve(x)?;
    (vmat.mul_vec(&c) == x).then_some(c)
}

pub fn sigma_on_canonical(sigma: &Matrix, s: &KostantSection, c: &CanonicalOper) -> Result<CanonicalOper> {
    let inv = sigma.inverse().ok_or_else(|| Error::invalid("sigma is not invertible"))?;
    let mut out = c.clone();
    for j in 0..c.order {
        let mut x = vec![Q::zero(); s.p_minus1.len()];
        for (ck, (_, v)) in c.coeffs.iter().zip(&s.slodowy) {
            for (xa, va) in x.iter_mut().zip(v) {
                *xa += &ck[j] * va;
            }
        }
        let y = vcan_coords(s, &inv.mul_vec(&x)).ok_or_else(|| Error::failed("sigma does not preserve V_can"))?;
        for (k, yk) in y.into_iter().enumerate() {
            out.coeffs[k][j] = yk;
        }
    }
    Ok(out)
}

/// The canonical oper over the fixed subalgebra, when `c` is sigma-fixed.
pub fn fixed_oper_match(pair: &FoldedPair, sp: &KostantSection, sc: &KostantSection, c: &CanonicalOper) -> Result<CanonicalOper> {
    let dim = pair.parent.dim();
    let emb_vcan = Matrix::from_cols(&sc.slodowy.iter().map(|(_, v)| pair.embed(v)).collect::<Vec<_>>());
    let mut out = CanonicalOper::zero(&pair.child, sc, c.order);
    for j in 0..c.order {
        let mut x = vec![Q::zero(); dim];
        for (ck, (_, v)) in c.coeffs.iter().zip(&sp.slodowy) {
            for (xa, va) in x.iter_mut().zip(v) {
                *xa += &ck[j] * va;
            }
        }
        let sx = pair.sigma.mul_vec(&x);
        if sx != x {
            let bad = (0..c.coeffs.len())
                .filter(|&k| {
                    let mut comp = vec![Q::zero(); dim];
                    for (a, va) in comp.iter_mut().zip(&sp.slodowy[k].1) {
                        *a = &c.coeffs[k][j] * va;
                    }
                    !c.coeffs[k][j].is_zero() && pair.sigma.mul_vec(&comp) != comp
                })
                .map(|k| sp.slodowy[k].0)
                .min();
            return Err(Error::failed(format!(
                "oper is not sigma-fixed: degree {} component at t^{j}",
                bad.map(|d| d.to_string()).unwrap_or_else(|| "?".into())
            )));
        }
        let y = emb_vcan.solve(&x).filter(|y| emb_vcan.mul_vec(y) == x).ok_or_else(|| Error::failed("fixed component outside V_can of the fixed subalgebra"))?;
        for (k, yk) in y.into_iter().enumerate() {
            out.coeffs[k][j] = yk;
        }
    }
    Ok(out)
}

/// The inverse of `fixed_oper_match`: a canonical oper over `g_sigma` viewed over `g`.
pub fn extend_oper(pair: &FoldedPair, sp: &KostantSection, sc: &KostantSection, c: &CanonicalOper) -> Result<CanonicalOper> {
    let dim = pair.parent.dim();
    let mut out = CanonicalOper::zero(&pair.parent, sp, c.order);
    for j in 0..c.order {
        let mut x = vec![Q::zero(); dim];
        for (ck, (_, v)) in c.coeffs.iter().zip(&sc.slodowy) {
            for (xa, va) in x.iter_mut().zip(pair.embed(v)) {
                *xa += &ck[j] * va;
            }
        }
        let y = vcan_coords(sp, &x).ok_or_else(|| Error::failed("embedded V_can leaves V_can of the parent"))?;
        for (k, yk) in y.into_iter().enumerate() {
            out.coeffs[k][j] = yk;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueReport {
    pub algebra: String,
    pub pole_order: usize,
    pub degrees: Vec<usize>,
    #[serde(with = "rational::vec")]
    pub values: Vec<Q>,
}

/// Invariants of the leading coefficient `A(0)`, i.e. the image of
/// `sum_i f_i + v(0)` in `g // G`. The coordinate twist for `m > 1` is not applied.
pub fn residue(g: &MatrixRealization, gens: &[InvariantPoly], c: &OperConnection) -> Result<ResidueReport> {
    if c.pole_order == 0 {
        return Err(Error::invalid("a regular oper has no residue"));
    }
    check_oper(g, c)?;
    Ok(ResidueReport {
        algebra: g.name.clone(),
        pole_order: c.pole_order,
        degrees: gens.iter().map(|p| p.degree).collect(),
        values: gens.iter().map(|p| p.poly.eval(&c.coeffs[0])).collect(),
    })
}

/// The Cartan element identified with `mu` (fundamental coordinates) through the trace form.
pub fn cartan_from_weight(g: &MatrixRealization, mu: &[Q]) -> Vec<Q> {
    let l = g.rank;
    let k = Matrix::from_rows(&(0..l).map(|i| (0..l).map(|j| g.kappa[(i, j)].clone()).collect()).collect::<Vec<_>>());
    let c = k.inverse().expect("trace form nondegenerate on h").mul_vec(mu);
    g.cartan_element(&c)
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaResidueReport {
    pub algebra: String,
    pub lambda: Vec<i64>,
    /// `pi(-lambda - rho)`.
    #[serde(with = "rational::vec")]
    pub target: Vec<Q>,
    #[serde(with = "rational::vec")]
    pub section_coords: Vec<Q>,
    /// Residue of `t^{-1}(p_{-1} + v(0) + t x)` with `p_{-1} + v(0)` on the Kostant section.
    #[serde(with = "rational::vec")]
    pub section_residue: Vec<Q>,
    /// Residue of `t^{-1}(p_{-1} + h)` with `h` the Cartan element of `-lambda - rho`.
    #[serde(with = "rational::vec")]
    pub cartan_residue: Vec<Q>,
    pub pass: bool,
}

/// The residue convention `pi(-lambda - rho)` checked on two independent constructions.
pub fn lambda_residue_check(g: &MatrixRealization, lambda: &[i64]) -> Result<LambdaResidueReport> {
    let gens = chevalley_generators(g)?;
    let s = principal_triple(g)?;
    let mu: Vec<Q> = lambda.iter().map(|&x| q(-x - 1)).collect();
    let h = cartan_from_weight(g, &mu);
    let target: Vec<Q> = gens.iter().map(|p| p.poly.eval(&h)).collect();
    let restricted: Vec<_> = gens.iter().map(|p| restrict_to_section(&p.poly, &s)).collect();
    let c = invert_section(&restricted, &target).ok_or_else(|| Error::failed("section inversion failed"))?;
    let x0 = s.point(&c);
    let dim = g.dim();
    // a higher-order term in b, which must not affect the residue
    let mut x1 = vec![Q::zero(); dim];
    x1[0] = Q::one();
    x1[g.e_index(0)] = q(3);
    let conn = OperConnection { algebra: g.name.clone(), pole_order: 1, coeffs: vec![x0, x1] };
    let section_residue = residue(g, &gens, &conn)?.values;
    let mut y0 = s.p_minus1.clone();
    for (a, b) in y0.iter_mut().zip(&h) {
        *a += b;
    }
    let conn2 = OperConnection { algebra: g.name.clone(), pole_order: 1, coeffs: vec![y0] };
    let cartan_residue = residue(g, &gens, &conn2)?.values;
    let pass = section_residue == target && cartan_residue == target;
    Ok(LambdaResidueReport { algebra: g.name.clone(), lambda: lambda.to_vec(), target, section_coords: c, section_residue, cartan_residue, pass })
}

/// A random regular oper with polynomial coefficients of degree `< deg`.
pub fn random_connection(g: &MatrixRealization, rng: &mut ChaCha8Rng, deg: usize) -> OperConnection {
    let dim = g.dim();
    let coeffs = (0..deg)
        .map(|k| {
            let mut v = vec![Q::zero(); dim];
            for (a, x) in v.iter_mut().enumerate() {
                if g.degree(a) >= 0 {
                    *x = q(rng.gen_range(-3..=3));
                }
            }
            for i in 0..g.rank {
                let mut p = rng.gen_range(-2..=2);
                if k == 0 && p == 0 {
                    p = 1;
                }
                v[g.f_index(i)] = q(p);
            }
            v
        })
        .collect();
    OperConnection { algebra: g.name.clone(), pole_order: 0, coeffs }
}

/// A random `n`-valued polynomial of degree `< deg`.
pub fn random_gauge(g: &MatrixRealization, rng: &mut ChaCha8Rng, deg: usize) -> Vec<Vec<Q>> {
    (0..deg)
        .map(|_| (0..g.dim()).map(|a| if g.degree(a) > 0 { q(rng.gen_range(-2..=2)) } else { Q::zero() }).collect())
        .collect()
}

/// A random sigma-fixed canonical oper.
pub fn random_fixed_canonical(pair: &FoldedPair, sp: &KostantSection, sc: &KostantSection, rng: &mut ChaCha8Rng, order: usize) -> Result<CanonicalOper> {
    let mut child = CanonicalOper::zero(&pair.child, sc, order);
    for c in child.coeffs.iter_mut() {
        for x in c.iter_mut() {
            *x = q(rng.gen_range(-5..=5));
        }
    }
    extend_oper(pair, sp, sc, &child)
}
