//! Univariate polynomials over the rationals: gcd, square-free tests,
//! real root isolation by Sturm sequences and interval evaluation.
//!
//! Coefficient vectors are stored from the constant term upwards.

use crate::modp;
use crate::rational::{q, Q};
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub fn trim(p: &mut Vec<Q>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[Q]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[Q], x: &Q) -> Q {
    let mut acc = Q::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn product(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

pub fn derivative(p: &[Q]) -> Vec<Q> {
    p.iter().enumerate().skip(1).map(|(d, c)| c * q(d as i64)).collect()
}

/// Remainder of `a` modulo `b` (b nonzero).
pub fn rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    divrem(a, b).1
}

pub fn divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    let mut quot = vec![Q::zero(); r.len().saturating_sub(db).max(1)];
    let lead = b[db].clone();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let f = &r[dr] / &lead;
        let shift = dr - db;
        for (i, c) in b.iter().enumerate().take(db + 1) {
            r[i + shift] -= &f * c;
        }
        quot[shift] += f;
        trim(&mut r);
    }
    trim(&mut r);
    trim(&mut quot);
    (quot, r)
}

pub fn monic(p: &[Q]) -> Vec<Q> {
    match degree(p) {
        None => vec![],
        Some(d) => {
            let l = p[d].clone();
            p[..=d].iter().map(|c| c / &l).collect()
        }
    }
}

/// Integer polynomial with coprime coefficients and the same sign as a
/// positive multiple of `p`.
fn primitive(p: &[Q]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in p {
        l = l.lcm(c.denom());
    }
    let mut v: Vec<BigInt> = p.iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    make_primitive(v)
}

fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    v
}

fn ideg(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// `lc(b)^(deg a - deg b + 1) a mod b`, over the integers.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = ideg(b).expect("division by zero polynomial");
    let lb = &b[db];
    let mut r = a.to_vec();
    while let Some(dr) = ideg(&r) {
        if dr < db {
            break;
        }
        let f = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        let shift = dr - db;
        for (i, c) in b.iter().enumerate().take(db + 1) {
            r[i + shift] -= &f * c;
        }
        r.truncate(dr);
    }
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    r
}

/// Monic gcd, via the primitive remainder sequence.
pub fn gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (mut x, mut y) = (primitive(a), primitive(b));
    while ideg(&y).is_some() {
        let r = make_primitive(prem(&x, &y));
        x = std::mem::replace(&mut y, r);
    }
    match ideg(&x) {
        None => vec![],
        Some(d) => x[..=d].iter().map(|c| Q::new(c.clone(), x[d].clone())).collect(),
    }
}

/// True when `p` has no repeated complex roots.
pub fn is_squarefree(p: &[Q]) -> bool {
    let ip = primitive(p);
    if ideg(&ip).is_none() {
        return false;
    }
    // a repeated factor survives reduction modulo a prime not dividing the leading coefficient
    if modp::primes().take(4).any(|l| squarefree_mod(&ip, l) == Some(true)) {
        return true;
    }
    let g = gcd(p, &derivative(p));
    degree(&g) == Some(0)
}

pub fn squarefree_part(p: &[Q]) -> Vec<Q> {
    if is_squarefree(p) {
        return monic(p);
    }
    let g = gcd(p, &derivative(p));
    monic(&divrem(p, &g).0)
}

fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, l: u64) -> Option<usize> {
    let deg = |v: &Vec<u64>| v.iter().rposition(|&c| c != 0);
    while let Some(db) = deg(&b) {
        let inv = modp::inv(b[db], l);
        while let Some(da) = deg(&a) {
            if da < db {
                break;
            }
            let f = modp::mul(a[da], inv, l);
            for i in 0..=db {
                a[i + da - db] = modp::sub(a[i + da - db], modp::mul(f, b[i], l), l);
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    deg(&a)
}

/// `Some(true)` if `p mod l` keeps its degree and is square-free; `None` if `l` divides the leading coefficient.
fn squarefree_mod(p: &[BigInt], l: u64) -> Option<bool> {
    let d = ideg(p)?;
    let r: Vec<u64> = p.iter().map(|c| modp::reduce(c, l)).collect();
    if r[d] == 0 {
        return None;
    }
    let dr: Vec<u64> = (1..=d).map(|k| modp::mul(r[k], k as u64, l)).collect();
    Some(gcd_degree_mod(r, dr, l) == Some(0))
}

/// Sign of `p(x)`, by Horner's rule on the numerator of `x` scaled by powers of its denominator.
fn sign_at(p: &[BigInt], x: &Q) -> i8 {
    let Some(d) = ideg(p) else { return 0 };
    let (n, den) = (x.numer(), x.denom());
    let mut acc = p[d].clone();
    let mut pw = BigInt::one();
    for c in p[..d].iter().rev() {
        pw *= den;
        acc = acc * n + c * &pw;
    }
    match acc.sign() {
        Sign::Plus => 1,
        Sign::Minus => -1,
        Sign::NoSign => 0,
    }
}

/// Cauchy bound on the absolute value of every root.
pub fn root_bound(p: &[Q]) -> Q {
    let d = degree(p).expect("zero polynomial");
    let lead = p[d].abs();
    let m = p[..d].iter().map(|c| c.abs() / &lead).fold(Q::zero(), |a, b| if b > a { b } else { a });
    m + Q::one()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RealRoot {
    /// An exact rational root.
    Exact(#[serde(with = "crate::rational")] Q),
    /// Exactly one irrational root in the open interval, endpoints are not roots.
    Interval(
        #[serde(with = "crate::rational")] Q,
        #[serde(with = "crate::rational")] Q,
    ),
}

impl RealRoot {
    pub fn lower(&self) -> &Q {
        match self {
            RealRoot::Exact(x) | RealRoot::Interval(x, _) => x,
        }
    }

    pub fn upper(&self) -> &Q {
        match self {
            RealRoot::Exact(x) | RealRoot::Interval(_, x) => x,
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            RealRoot::Exact(r) => crate::rational::to_f64(r),
            RealRoot::Interval(a, b) => crate::rational::to_f64(&((a + b) / q(2))),
        }
    }
}

/// Smallest power of two at least `x`.
fn dyadic_ceil(x: &Q) -> Q {
    let mut b = Q::one();
    while &b < x {
        b *= q(2);
    }
    b
}

/// Isolates the real roots of a polynomial, increasing order, by Descartes'
/// rule of signs with bisection. Rational roots are reported exactly.
pub fn isolate_real_roots(p: &[Q]) -> Vec<RealRoot> {
    let p = squarefree_part(p);
    let Some(d) = degree(&p) else { return vec![] };
    if d == 0 {
        return vec![];
    }
    let mut ip = primitive(&p);
    let mut out = Vec::new();
    if ip[0].is_zero() {
        out.push(RealRoot::Exact(Q::zero()));
        ip.remove(0);
    }
    let b = dyadic_ceil(&root_bound(&p));
    let neg: Vec<BigInt> = ip.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect();
    for r in isolate_unit(&neg, &b) {
        out.push(match r {
            RealRoot::Exact(x) => RealRoot::Exact(-x),
            RealRoot::Interval(lo, hi) => RealRoot::Interval(-hi, -lo),
        });
    }
    out.extend(isolate_unit(&ip, &b));
    out.sort_by(|x, y| x.lower().cmp(y.lower()));
    let lead = Q::from_integer(ip[ideg(&ip).expect("nonzero")].abs());
    out.into_iter()
        .map(|r| match r {
            RealRoot::Interval(lo, hi) => find_rational_in(&primitive(&p), lo, hi, &lead),
            e => e,
        })
        .collect()
}

fn sign_variations(p: &[BigInt]) -> usize {
    let signs: Vec<bool> = p.iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `p(x + 1)`.
fn taylor_shift1(p: &[BigInt]) -> Vec<BigInt> {
    let mut a = p.to_vec();
    let n = a.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            let t = a[j + 1].clone();
            a[j] += t;
        }
    }
    a
}

/// Upper bound on the number of roots in `(0, 1)`, exact when it is 0 or 1.
fn descartes_unit(p: &[BigInt]) -> usize {
    let rev: Vec<BigInt> = p.iter().rev().cloned().collect();
    sign_variations(&taylor_shift1(&rev))
}

/// Roots of `p` in `(0, b)`, with `b` a power of two that bounds every root.
fn isolate_unit(p: &[BigInt], b: &Q) -> Vec<RealRoot> {
    let d = p.len() - 1;
    // q(x) = p(b x); b is a power of two, possibly fractional
    let (bn, bd) = (b.numer().clone(), b.denom().clone());
    let q0: Vec<BigInt> = p.iter().enumerate().map(|(k, c)| c * bn.pow(k as u32) * bd.pow((d - k) as u32)).collect();
    let mut out = vec![];
    // (poly on (0,1), c, k): the interval (c / 2^k, (c + 1) / 2^k) scaled by b
    // the flag marks a left endpoint that is a root, already divided out of the local polynomial
    let mut stack = vec![(q0, BigInt::zero(), 0u32, false)];
    let at = |c: &BigInt, k: u32| b * Q::new(c.clone(), BigInt::one() << k);
    while let Some((q, c, k, root_left)) = stack.pop() {
        let root_right = q.iter().sum::<BigInt>().is_zero();
        match descartes_unit(&q) {
            0 => continue,
            // isolating intervals must not end on a root; keep splitting
            1 if !root_left && !root_right => {
                out.push(RealRoot::Interval(at(&c, k), at(&(&c + 1), k)));
                continue;
            }
            _ => {}
        }
        let n = q.len() - 1;
        let left: Vec<BigInt> = q.iter().enumerate().map(|(i, a)| a << (n - i)).collect();
        let mut right = taylor_shift1(&left);
        let (cl, cr) = (&c * 2, &c * 2 + 1);
        let mid_root = right[0].is_zero();
        if mid_root {
            out.push(RealRoot::Exact(at(&cr, k + 1)));
            right.remove(0);
        }
        stack.push((left, cl, k + 1, root_left));
        stack.push((right, cr, k + 1, mid_root));
    }
    out
}

/// Every candidate rational root is `k / lead`; bisects until at most one
/// candidate remains and tests it.
fn find_rational_in(p: &[BigInt], a: Q, b: Q, lead: &Q) -> RealRoot {
    let target = Q::one() / (q(4) * lead);
    let (a, b) = match bisect(p, a, b, &target) {
        RealRoot::Exact(r) => return RealRoot::Exact(r),
        RealRoot::Interval(a, b) => (a, b),
    };
    let lo = (&a * lead).ceil();
    let hi = (&b * lead).floor();
    let mut k = lo;
    while k <= hi {
        let r = &k / lead;
        if sign_at(p, &r) == 0 {
            return RealRoot::Exact(r);
        }
        k += Q::one();
    }
    RealRoot::Interval(a, b)
}

fn bisect(p: &[BigInt], mut a: Q, mut b: Q, w: &Q) -> RealRoot {
    let sa = sign_at(p, &a);
    while &b - &a > *w {
        let m = (&a + &b) / q(2);
        let s = sign_at(p, &m);
        if s == 0 {
            return RealRoot::Exact(m);
        }
        if s == sa {
            a = m;
        } else {
            b = m;
        }
    }
    RealRoot::Interval(a, b)
}

/// Shrinks an isolating interval of a square-free polynomial to width `w`.
pub fn refine(p: &[Q], root: &RealRoot, w: &Q) -> RealRoot {
    match root {
        RealRoot::Exact(_) => root.clone(),
        RealRoot::Interval(a, b) => bisect(&primitive(p), a.clone(), b.clone(), w),
    }
}

/// Real roots of several polynomials whose product is square-free, each
/// tagged with the index of its polynomial, refined to width `w` and then
/// until no two overlap. Increasing order.
pub fn isolate_union(polys: &[Vec<Q>], w: &Q) -> Vec<(usize, RealRoot)> {
    let mut roots: Vec<(usize, RealRoot)> = polys
        .iter()
        .enumerate()
        .flat_map(|(i, p)| isolate_real_roots(p).into_iter().map(move |r| (i, refine(p, &r, w))))
        .collect();
    loop {
        roots.sort_by(|a, b| a.1.lower().cmp(b.1.lower()));
        let Some(k) = (1..roots.len()).find(|&k| roots[k - 1].1.upper() >= roots[k].1.lower()) else {
            return roots;
        };
        for j in [k - 1, k] {
            let (i, r) = &roots[j];
            let half = (r.upper() - r.lower()) / q(2);
            roots[j].1 = refine(&polys[*i], r, &half);
        }
    }
}

/// A closed rational interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    #[serde(with = "crate::rational")]
    pub lo: Q,
    #[serde(with = "crate::rational")]
    pub hi: Q,
}

impl Interval {
    pub fn point(x: Q) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn contains(&self, x: &Q) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn disjoint(&self, o: &Interval) -> bool {
        self.hi < o.lo || o.hi < self.lo
    }
}

/// Enclosure of `p` over the interval (Horner form).
pub fn eval_interval(p: &[Q], x: &Interval) -> Interval {
    let mut acc = Interval::point(Q::zero());
    for c in p.iter().rev() {
        acc = acc.mul(x).add(&Interval::point(c.clone()));
    }
    acc
}

/// Certified enclosure of `f(r)` of width at most `tol`, where `r` is a root
/// of the square-free polynomial `p`. Gives up after `max_iter` refinements.
pub fn certified_value(p: &[Q], root: &RealRoot, f: &[Q], tol: &Q, max_iter: usize) -> Option<Interval> {
    let mut r = root.clone();
    let mut w = match &r {
        RealRoot::Exact(x) => return Some(Interval::point(eval(f, x))),
        RealRoot::Interval(a, b) => b - a,
    };
    for _ in 0..max_iter {
        let (a, b) = match &r {
            RealRoot::Exact(x) => return Some(Interval::point(eval(f, x))),
            RealRoot::Interval(a, b) => (a.clone(), b.clone()),
        };
        let iv = eval_interval(f, &Interval { lo: a, hi: b });
        if iv.width() <= *tol {
            return Some(iv);
        }
        w /= q(1 << 16);
        r = refine(p, &r, &w);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn poly(c: &[i64]) -> Vec<Q> {
        c.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn gcd_detects_repeated_roots() {
        // (x-1)^2 (x+2)
        let p = poly(&[2, -3, 0, 1]);
        assert!(!is_squarefree(&p));
        assert_eq!(squarefree_part(&p), poly(&[-2, 1, 1]));
        assert!(is_squarefree(&poly(&[-2, 0, 1])));
    }

    #[test]
    fn union_of_close_roots() {
        // x^2 - 2 and x - 1414213/1000000 have roots 1e-7 apart
        let polys = vec![poly(&[-2, 0, 1]), vec![qf(-1414213, 1000000), q(1)], poly(&[0, 1])];
        let roots = isolate_union(&polys, &qf(1, 10));
        let tags: Vec<usize> = roots.iter().map(|r| r.0).collect();
        assert_eq!(tags, vec![0, 2, 1, 0]);
        assert!(roots.windows(2).all(|w| w[0].1.upper() < w[1].1.lower()));
    }

    #[test]
    fn roots_on_bisection_points() {
        // x (x - 1)(x + 1)(4x - 1)(x^2 - 3): roots at zero and at dyadic midpoints
        let p = [[0, 1], [-1, 1], [1, 1], [-1, 4]].iter().fold(poly(&[-3, 0, 1]), |acc, f| {
            let f = poly(f);
            let mut r = vec![Q::zero(); acc.len() + 1];
            for (i, u) in acc.iter().enumerate() {
                for (j, v) in f.iter().enumerate() {
                    r[i + j] += u * v;
                }
            }
            r
        });
        let roots = isolate_real_roots(&p);
        let exact: Vec<Q> = roots.iter().filter_map(|r| if let RealRoot::Exact(x) = r { Some(x.clone()) } else { None }).collect();
        assert_eq!(exact, vec![q(-1), q(0), qf(1, 4), q(1)]);
        assert_eq!(roots.len(), 6);
        assert!(matches!(roots[0], RealRoot::Interval(..)) && matches!(roots[5], RealRoot::Interval(..)));
    }

    #[test]
    fn isolates_rational_and_irrational() {
        // (x^2 - 2)(2x - 1)(x + 3)
        let a = poly(&[-2, 0, 1]);
        let b = poly(&[-1, 2]);
        let c = poly(&[3, 1]);
        let mul = |x: &[Q], y: &[Q]| {
            let mut r = vec![Q::zero(); x.len() + y.len() - 1];
            for (i, u) in x.iter().enumerate() {
                for (j, v) in y.iter().enumerate() {
                    r[i + j] += u * v;
                }
            }
            r
        };
        let p = mul(&mul(&a, &b), &c);
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 4);
        assert_eq!(roots[0], RealRoot::Exact(q(-3)));
        assert!(matches!(roots[1], RealRoot::Interval(..)));
        assert_eq!(roots[2], RealRoot::Exact(qf(1, 2)));
        let tol = qf(1, 1_000_000_000);
        let v = certified_value(&p, &roots[3], &poly(&[0, 1]), &tol, 200).unwrap();
        assert!(&v.lo * &v.lo <= q(2) + qf(1, 100000) && v.width() <= tol);
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&poly(&[1, 0, 1])).is_empty());
    }
}
