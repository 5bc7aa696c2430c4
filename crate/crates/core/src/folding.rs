//! Diagram automorphisms and the folded root datum.
//!
//! For a datum `(X, X^vee, alpha_i, alpha_i^vee)` and a diagram automorphism
//! `sigma` the folded datum is `(X_sigma, (X^vee)^sigma, alpha_eta, alpha_eta^vee)`
//! with one simple root per orbit `eta`. Coinvariants are stored in the basis
//! of orbit classes, invariants in the basis of orbit sums.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::as_i64;
use crate::rootdata::{build_root_datum, CartanMatrix, Isogeny, LatticeBasis, RootDatum, Series, Weight};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramAutomorphism {
    /// `perm[i] = sigma(i)`, 0-based node labels.
    pub perm: Vec<usize>,
    pub order: usize,
}

impl DiagramAutomorphism {
    pub fn identity(rank: usize) -> Self {
        DiagramAutomorphism { perm: (0..rank).collect(), order: 1 }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn inverse(&self) -> DiagramAutomorphism {
        let mut inv = vec![0; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            inv[j] = i;
        }
        DiagramAutomorphism { perm: inv, order: self.order }
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// 1-based labels as printed in tables.
    pub fn labels(&self) -> Vec<usize> {
        self.perm.iter().map(|i| i + 1).collect()
    }

    /// Orbits on node labels, each sorted, ordered by smallest member.
    pub fn orbits(&self, cartan: &CartanMatrix) -> Vec<Orbit> {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut nodes = vec![];
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                nodes.push(i);
                i = self.perm[i];
            }
            nodes.sort_unstable();
            let adjacent_pair = nodes.len() == 2 && cartan.get(nodes[0], nodes[1]) != 0;
            out.push(Orbit { nodes, adjacent_pair });
        }
        out
    }
}

/// Parses 1-based labels such as `"3,2,1"` into a permutation.
pub fn parse_perm(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            let v: usize = t.trim().parse().map_err(|_| Error::invalid(format!("bad permutation entry {t:?}")))?;
            v.checked_sub(1).ok_or_else(|| Error::invalid("permutation labels start at 1"))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub nodes: Vec<usize>,
    pub adjacent_pair: bool,
}

/// Checks that `perm` (0-based) is a bijection preserving the Cartan matrix.
pub fn validate_automorphism(perm: &[usize], datum: &RootDatum) -> Result<DiagramAutomorphism> {
    let n = datum.rank();
    if perm.len() != n {
        return Err(Error::invalid(format!("permutation has {} entries, rank is {n}", perm.len())));
    }
    let mut hit = vec![false; n];
    for &p in perm {
        if p >= n || hit[p] {
            return Err(Error::invalid(format!("{:?} is not a permutation of the nodes", perm.iter().map(|i| i + 1).collect::<Vec<_>>())));
        }
        hit[p] = true;
    }
    for i in 0..n {
        for j in 0..n {
            if datum.cartan.get(perm[i], perm[j]) != datum.cartan.get(i, j) {
                return Err(Error::invalid(format!(
                    "not a diagram automorphism: a_({},{}) = {} but a_({},{}) = {}",
                    i + 1,
                    j + 1,
                    datum.cartan.get(i, j),
                    perm[i] + 1,
                    perm[j] + 1,
                    datum.cartan.get(perm[i], perm[j])
                )));
            }
        }
    }
    let mut order = 1;
    let mut cur: Vec<usize> = perm.to_vec();
    while cur.iter().enumerate().any(|(i, &c)| i != c) {
        cur = cur.iter().map(|&c| perm[c]).collect();
        order += 1;
    }
    Ok(DiagramAutomorphism { perm: perm.to_vec(), order })
}

/// Requires that `sigma` acts on `X` and `X^vee` by the same permutation of
/// basis vectors, which holds for the simply connected and adjoint data.
fn check_lattice_action(datum: &RootDatum, sigma: &DiagramAutomorphism) -> Result<()> {
    let p = &sigma.perm;
    let n = datum.rank();
    let permute = |v: &[i64]| {
        let mut w = vec![0; n];
        for k in 0..n {
            w[p[k]] = v[k];
        }
        w
    };
    for i in 0..n {
        if permute(&datum.roots[i]) != datum.roots[p[i]] || permute(&datum.coroots[i]) != datum.coroots[p[i]] {
            return Err(Error::unsupported("sigma does not act on this lattice by permuting basis vectors"));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if datum.pairing[p[a]][p[b]] != datum.pairing[a][b] {
                return Err(Error::unsupported("sigma does not preserve the pairing matrix"));
            }
        }
    }
    Ok(())
}

/// Which side of the duality the folded datum sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FoldSide {
    /// `X_sigma` and `(X^vee)^sigma`.
    Group,
    /// The Langlands dual of the folding of the dual: `X^sigma` and `(X^vee)_sigma`.
    Dual,
}

#[derive(Clone, Debug)]
pub struct FoldedDatum {
    pub datum: RootDatum,
    pub parent: RootDatum,
    pub sigma: DiagramAutomorphism,
    pub orbits: Vec<Orbit>,
    pub side: FoldSide,
}

impl FoldedDatum {
    /// Folded node index of parent node `i`.
    pub fn orbit_of(&self, i: usize) -> usize {
        self.orbits.iter().position(|o| o.nodes.contains(&i)).expect("every node lies in an orbit")
    }

    /// Coinvariant projection `X -> X_sigma` (group side only).
    pub fn project(&self, x: &[i64]) -> Vec<i64> {
        self.orbits.iter().map(|o| o.nodes.iter().map(|&k| x[k]).sum()).collect()
    }

    /// Coordinates of a sigma-fixed element of the parent lattice in the
    /// orbit-sum basis, for the dual side. `None` if `x` is not fixed.
    pub fn restrict_fixed(&self, x: &[i64]) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.orbits.len());
        for o in &self.orbits {
            let v = x[o.nodes[0]];
            if o.nodes.iter().any(|&k| x[k] != v) {
                return None;
            }
            out.push(v);
        }
        Some(out)
    }

    /// The inclusion of orbit sums into the parent lattice.
    pub fn include(&self, y: &[i64]) -> Vec<i64> {
        let mut x = vec![0; self.parent.rank()];
        for (c, o) in self.orbits.iter().enumerate() {
            for &k in &o.nodes {
                x[k] = y[c];
            }
        }
        x
    }
}

/// Folds `datum` along `sigma`: `Y = X_sigma`, `Y^vee = (X^vee)^sigma`.
pub fn fold(datum: &RootDatum, sigma: &DiagramAutomorphism) -> Result<FoldedDatum> {
    validate_automorphism(&sigma.perm, datum)?;
    check_lattice_action(datum, sigma)?;
    let orbits = sigma.orbits(&datum.cartan);
    let r = orbits.len();
    // basis orbits coincide with node orbits since sigma permutes basis vectors by perm
    let roots: Vec<Vec<i64>> = orbits
        .iter()
        .map(|o| orbits.iter().map(|c| c.nodes.iter().map(|&k| datum.roots[o.nodes[0]][k]).sum()).collect())
        .collect();
    let coroots: Vec<Vec<i64>> = orbits
        .iter()
        .map(|o| {
            let factor = if o.adjacent_pair { 2 } else { 1 };
            // invariant vector: the coefficient on an orbit sum is any coordinate in that orbit
            orbits
                .iter()
                .map(|c| factor * o.nodes.iter().map(|&i| datum.coroots[i][c.nodes[0]]).sum::<i64>())
                .collect()
        })
        .collect();
    let pairing: Vec<Vec<i64>> = orbits
        .iter()
        .map(|c| orbits.iter().map(|d| d.nodes.iter().map(|&k| datum.pairing[c.nodes[0]][k]).sum()).collect())
        .collect();
    let pair = |x: &[i64], y: &[i64]| -> i64 {
        (0..r).map(|a| (0..r).map(|b| x[a] * pairing[a][b] * y[b]).sum::<i64>()).sum()
    };
    let entries = (0..r).map(|i| (0..r).map(|j| pair(&roots[j], &coroots[i])).collect()).collect();
    let cartan = CartanMatrix::new(entries).map_err(|e| Error::failed(format!("folded Cartan matrix invalid: {e}")))?;
    let mut folded = RootDatum {
        label: None,
        cartan,
        roots,
        coroots,
        pairing,
        isogeny: Isogeny::Other,
        x_basis: if sigma.is_identity() { datum.x_basis } else { LatticeBasis::Lattice },
        xv_basis: if sigma.is_identity() { datum.xv_basis } else { LatticeBasis::Lattice },
    };
    folded.label = folded.cartan.label();
    folded.isogeny = classify_isogeny(&folded).label;
    Ok(FoldedDatum { datum: folded, parent: datum.clone(), sigma: sigma.clone(), orbits, side: FoldSide::Group })
}

/// The datum whose weight lattice is `X^sigma`: the dual of the folding of
/// the dual. For `datum` the root datum of `G^vee` this is the datum of
/// `G_sigma^vee`, whose irreducible representations appear in the twining formula.
pub fn jantzen_partner(datum: &RootDatum, sigma: &DiagramAutomorphism) -> Result<FoldedDatum> {
    let f = fold(&langlands_dual(datum), sigma)?;
    Ok(FoldedDatum { datum: langlands_dual(&f.datum), parent: datum.clone(), sigma: f.sigma, orbits: f.orbits, side: FoldSide::Dual })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsogenyReport {
    pub label: Isogeny,
    pub simply_connected: bool,
    pub adjoint: bool,
    /// `[X : Z<alpha>]`.
    pub root_index: i64,
    /// `[P : Z<alpha>]`, the determinant of the Cartan matrix.
    pub weight_index: i64,
    /// `[X^vee : Z<alpha^vee>]`.
    pub coroot_index: i64,
}

/// Compares `X` with the root and weight lattices.
pub fn classify_isogeny(datum: &RootDatum) -> IsogenyReport {
    let (root_index, weight_index) = datum.lattice_indices();
    let coroot_index = datum.coroot_index();
    let adjoint = root_index == 1;
    let simply_connected = root_index == weight_index;
    let label = if adjoint {
        Isogeny::Adjoint
    } else if simply_connected {
        Isogeny::SimplyConnected
    } else {
        Isogeny::Other
    };
    IsogenyReport { label, simply_connected, adjoint, root_index, weight_index, coroot_index }
}

/// Swaps `X` with `X^vee` and roots with coroots.
pub fn langlands_dual(datum: &RootDatum) -> RootDatum {
    let l = datum.rank();
    let pairing = (0..l).map(|i| (0..l).map(|j| datum.pairing[j][i]).collect()).collect();
    let cartan = datum.cartan.transpose();
    let isogeny = match datum.isogeny {
        Isogeny::SimplyConnected => Isogeny::Adjoint,
        Isogeny::Adjoint => Isogeny::SimplyConnected,
        Isogeny::Other => Isogeny::Other,
    };
    let label = if cartan == datum.cartan { datum.label } else { cartan.label() };
    RootDatum {
        label,
        cartan,
        roots: datum.coroots.clone(),
        coroots: datum.roots.clone(),
        pairing,
        isogeny,
        x_basis: datum.xv_basis,
        xv_basis: datum.x_basis,
    }
}

/// The sigma-invariant dominant weight of the parent whose pairing with
/// `alpha_i^vee` is the folded coordinate `a_eta` for `i` in `eta`.
///
/// On the dual side this is the inclusion `X^sigma -> X`, i.e.
/// `sum_eta a_eta omega_eta |-> sum_eta a_eta sum_{i in eta} omega_i`.
pub fn embed_dominant(folded: &FoldedDatum, lambda: &Weight) -> Result<Weight> {
    folded.datum.check_weight(lambda)?;
    let a = folded.datum.fundamental_coords(&lambda.coords);
    if let Some(eta) = a.iter().position(|&v| v < 0) {
        return Err(Error::invalid(format!("weight is not dominant: coordinate {} is {}", eta + 1, a[eta])));
    }
    let parent = &folded.parent;
    let m: Vec<i64> = (0..parent.rank()).map(|i| a[folded.orbit_of(i)]).collect();
    let x = parent
        .from_fundamental(&m)
        .ok_or_else(|| Error::invalid("the embedded weight is not in the parent lattice"))?;
    Ok(parent.weight(x))
}

/// The 2^r index of the Corollary on isogeny types: `[Z<sum_eta alpha_i^vee> : Z<alpha_eta^vee>]`.
pub fn coroot_doubling_index(folded: &FoldedDatum) -> i64 {
    let r = folded.orbits.iter().filter(|o| o.adjacent_pair).count() as u32;
    // exact check from the lattices themselves
    let sums: Vec<Vec<i64>> = folded
        .orbits
        .iter()
        .map(|o| {
            folded.orbits.iter().map(|c| o.nodes.iter().map(|&i| folded.parent.coroots[i][c.nodes[0]]).sum()).collect()
        })
        .collect();
    let d_sums = Matrix::from_i64(&sums).det();
    let d_coroots = Matrix::from_i64(&folded.datum.coroots).det();
    let idx = as_i64(&(d_coroots / d_sums)).expect("integral index").abs();
    debug_assert_eq!(idx, 1 << r);
    idx
}

/// The golden table of `(G, G_sigma)` and `(G^vee, G_sigma^vee)` pairs.
pub const FOLDING_TABLE: &str = include_str!("../fixtures/folding_table.json");

#[derive(Clone, Debug, Serialize, serde::Deserialize)]
pub struct ExpectedFold {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub isogeny: Vec<Isogeny>,
}

#[derive(Clone, Debug, Serialize, serde::Deserialize)]
pub struct TableRow {
    pub name: String,
    pub series: Series,
    pub rank: usize,
    /// 1-based.
    pub perm: Vec<usize>,
    pub isogeny: Isogeny,
    pub groups: String,
    pub folded: ExpectedFold,
    pub dual_folded: ExpectedFold,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowCheck {
    pub name: String,
    pub isogeny: Isogeny,
    pub folded_types: Vec<String>,
    pub folded_isogeny: Vec<Isogeny>,
    pub dual_folded_types: Vec<String>,
    pub dual_folded_isogeny: Vec<Isogeny>,
    pub pass: bool,
}

pub fn load_table() -> Result<Vec<TableRow>> {
    #[derive(serde::Deserialize)]
    struct Table {
        rows: Vec<TableRow>,
    }
    let t: Table = serde_json::from_str(FOLDING_TABLE).map_err(|e| Error::failed(format!("folding table: {e}")))?;
    Ok(t.rows)
}

fn isogeny_set(d: &RootDatum) -> Vec<Isogeny> {
    let r = classify_isogeny(d);
    let mut v = vec![];
    if r.simply_connected {
        v.push(Isogeny::SimplyConnected);
    }
    if r.adjoint {
        v.push(Isogeny::Adjoint);
    }
    if v.is_empty() {
        v.push(Isogeny::Other);
    }
    v
}

/// Folds the row's datum and compares Cartan types and isogeny labels on both sides.
pub fn check_row(row: &TableRow) -> Result<RowCheck> {
    let d = build_root_datum(row.series, row.rank, row.isogeny)?;
    let perm: Vec<usize> = row.perm.iter().map(|i| i - 1).collect();
    let sigma = validate_automorphism(&perm, &d)?;
    let f = fold(&d, &sigma)?;
    let dual = langlands_dual(&f.datum);
    let types = |c: &CartanMatrix| c.identify().iter().map(|t| t.to_string()).collect::<Vec<_>>();
    let same = |a: &[Isogeny], b: &[Isogeny]| a.len() == b.len() && a.iter().all(|x| b.contains(x));
    let mut out = RowCheck {
        name: row.name.clone(),
        isogeny: row.isogeny,
        folded_types: types(&f.datum.cartan),
        folded_isogeny: isogeny_set(&f.datum),
        dual_folded_types: types(&dual.cartan),
        dual_folded_isogeny: isogeny_set(&dual),
        pass: false,
    };
    out.pass = out.folded_types.contains(&row.folded.cartan_type)
        && out.dual_folded_types.contains(&row.dual_folded.cartan_type)
        && same(&out.folded_isogeny, &row.folded.isogeny)
        && same(&out.dual_folded_isogeny, &row.dual_folded.isogeny);
    Ok(out)
}
