//! Seed mutation and exhaustive exchange-graph search: the reference oracle
//! every combinatorial model is compared against.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{crossing_number, Triangulation};
use crate::laurent::{LaurentPoly, Monomial};
use crate::quiver::{Quiver, Vertex};

/// Default cap on the number of seeds visited.
pub const SEED_LIMIT: usize = 100_000;

/// A seed: a quiver and one Laurent polynomial per vertex, in the initial
/// variables `x_1, ..., x_n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Seed {
    pub quiver: Quiver,
    pub cluster: Vec<LaurentPoly>,
}

impl Seed {
    pub fn initial(q: &Quiver) -> Seed {
        Seed { quiver: q.clone(), cluster: q.vertices().map(LaurentPoly::var).collect() }
    }

    /// Mutation at `v`: `u'_v = (prod_{j -> v} u_j + prod_{v -> j} u_j) / u_v`
    /// with the division checked exact.
    pub fn mutate(&self, v: Vertex) -> Result<Seed> {
        let quiver = self.quiver.mutate(v)?;
        let mut incoming = LaurentPoly::one();
        let mut outgoing = LaurentPoly::one();
        for j in self.quiver.vertices() {
            let b = self.quiver.b(j, v);
            let u = &self.cluster[j as usize - 1];
            for _ in 0..b.max(0) {
                incoming *= u;
            }
            for _ in 0..(-b).max(0) {
                outgoing *= u;
            }
        }
        let numer = incoming + outgoing;
        let new = numer.div_exact(&self.cluster[v as usize - 1])?;
        let mut cluster = self.cluster.clone();
        cluster[v as usize - 1] = new;
        Ok(Seed { quiver, cluster })
    }

    /// Permutation-insensitive key: the sorted mutable cluster variables.
    fn key(&self) -> Vec<LaurentPoly> {
        let mut k: Vec<LaurentPoly> =
            self.quiver.mutable_vertices().iter().map(|&v| self.cluster[v as usize - 1].clone()).collect();
        k.sort();
        k
    }
}

/// d-vector of a cluster variable over the mutable vertices: `-e_i` for the
/// initial `x_i`, otherwise the exponents of the least common denominator.
pub fn d_vector(q: &Quiver, u: &LaurentPoly) -> Vec<i64> {
    let mutable = q.mutable_vertices();
    if let Some(m) = u.as_monomial() {
        let init: Vec<(u32, i32)> = m.iter().collect();
        if init.len() == 1 && init[0].1 == 1 && mutable.contains(&init[0].0) {
            let mut d = vec![0; q.n()];
            d[init[0].0 as usize - 1] = -1;
            return mutable.iter().map(|&v| d[v as usize - 1]).collect();
        }
    }
    mutable.iter().map(|&v| -(u.min_exponent(v) as i64)).collect()
}

/// All cluster variables and clusters reachable from the initial seed.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub quiver: Quiver,
    /// Cluster variables sorted by d-vector.
    pub variables: Vec<(Vec<i64>, LaurentPoly)>,
    /// Clusters as sorted indices into `variables`.
    pub clusters: Vec<Vec<usize>>,
    index: BTreeMap<Vec<i64>, usize>,
}

/// Breadth-first search over the exchange graph, deduplicating seeds by
/// their cluster. Fails with [`Error::ExplosionGuard`] past `limit` seeds.
pub fn enumerate(q: &Quiver, limit: usize) -> Result<Catalog> {
    let mut seen: BTreeSet<Vec<LaurentPoly>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let start = Seed::initial(q);
    seen.insert(start.key());
    queue.push_back(start);
    let mut vars: BTreeSet<LaurentPoly> = BTreeSet::new();
    let mut raw_clusters: Vec<Vec<LaurentPoly>> = Vec::new();
    let mutable = q.mutable_vertices();
    while let Some(seed) = queue.pop_front() {
        let key = seed.key();
        vars.extend(key.iter().cloned());
        raw_clusters.push(key);
        for &v in &mutable {
            let next = seed.mutate(v)?;
            if seen.insert(next.key()) {
                if seen.len() > limit {
                    return Err(Error::ExplosionGuard(limit));
                }
                queue.push_back(next);
            }
        }
    }
    let mut variables: Vec<(Vec<i64>, LaurentPoly)> = vars.into_iter().map(|u| (d_vector(q, &u), u)).collect();
    variables.sort();
    let mut index = BTreeMap::new();
    for (k, (d, _)) in variables.iter().enumerate() {
        if index.insert(d.clone(), k).is_some() {
            return Err(Error::AssumptionViolated(format!("two cluster variables share the d-vector {d:?}")));
        }
    }
    let by_poly: BTreeMap<&LaurentPoly, usize> = variables.iter().enumerate().map(|(k, (_, u))| (u, k)).collect();
    let mut clusters: Vec<Vec<usize>> =
        raw_clusters.iter().map(|c| c.iter().map(|u| by_poly[u]).collect::<Vec<_>>()).collect();
    for c in &mut clusters {
        c.sort_unstable();
    }
    clusters.sort();
    Ok(Catalog { quiver: q.clone(), variables, clusters, index })
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    /// Cluster variable with d-vector `d` (over the mutable vertices).
    pub fn variable(&self, d: &[i64]) -> Option<&LaurentPoly> {
        self.index.get(d).map(|&k| &self.variables[k].1)
    }

    pub fn index_of(&self, d: &[i64]) -> Option<usize> {
        self.index.get(d).copied()
    }

    /// Whether the listed variables lie in a common cluster.
    pub fn compatible(&self, vars: &[usize]) -> bool {
        self.clusters.iter().any(|c| vars.iter().all(|v| c.binary_search(v).is_ok()))
    }

    /// Cluster monomial with d-vector `a`, found by writing `a` as a
    /// nonnegative integer combination of the d-vectors of some cluster.
    pub fn cluster_monomial(&self, a: &[i64]) -> Option<LaurentPoly> {
        for c in &self.clusters {
            let ds: Vec<&Vec<i64>> = c.iter().map(|&k| &self.variables[k].0).collect();
            if let Some(coef) = solve_nonneg(&ds, a) {
                let mut out = LaurentPoly::one();
                for (&k, &e) in c.iter().zip(&coef) {
                    out = &out * &self.variables[k].1.pow(e as u32);
                }
                return Some(out);
            }
        }
        None
    }
}

/// Solves `sum_j c_j cols[j] = target` exactly, returning the coefficients
/// if they are nonnegative integers.
fn solve_nonneg(cols: &[&Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    let n = target.len();
    let m = cols.len();
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut r: Vec<BigRational> = cols.iter().map(|c| BigRational::from_integer(c[i].into())).collect();
            r.push(BigRational::from_integer(target[i].into()));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m {
        let Some(p) = (row..n).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(row, p);
        let inv = rows[row][col].clone();
        for x in rows[row].iter_mut() {
            *x = &*x / &inv;
        }
        for r in 0..n {
            if r != row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for k in 0..=m {
                    let sub = &f * &rows[row][k];
                    rows[r][k] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if rows[row..].iter().any(|r| !r[m].is_zero()) {
        return None;
    }
    let mut out = vec![0i64; m];
    for (r, &col) in pivots.iter().enumerate() {
        let v = &rows[r][m];
        if !v.is_integer() || v.is_negative() {
            return None;
        }
        out[col] = num_traits::ToPrimitive::to_i64(&v.to_integer())?;
    }
    Some(out)
}

/// Cluster variable `x[a]` over `q` for a single d-vector, by search.
pub fn cluster_variable(q: &Quiver, a: &[i64]) -> Result<LaurentPoly> {
    let cat = enumerate(q, SEED_LIMIT)?;
    cat.variable(a).cloned().ok_or_else(|| Error::NotInW(format!("{a:?} is not the d-vector of a cluster variable")))
}

/// Cluster variable `x[a]` over a type-A quiver reached by a single flip
/// sequence: realize `q` as a triangulation, find the diagonal crossing the
/// labeled diagonals `a_i` times, and mutate along flips that bring it in.
pub fn variable_by_flips(q: &Quiver, a: &[i64]) -> Result<LaurentPoly> {
    if let Some(i) = a.iter().position(|&x| x != 0) {
        if a[i] == -1 && a.iter().filter(|&&x| x != 0).count() == 1 {
            return Ok(LaurentPoly::var(i as Vertex + 1));
        }
    }
    let mut t = Triangulation::from_quiver(q)?;
    let size = t.size();
    let target = (0..size)
        .flat_map(|x| (x + 2..size).map(move |y| (x, y)))
        .filter(|&d| !t.is_boundary(d))
        .find(|&d| t.d_vector(&[(d, 1)]) == a)
        .ok_or_else(|| Error::NotInW(format!("{a:?} is not the d-vector of a cluster variable")))?;
    let mut seed = Seed::initial(q);
    loop {
        if let Some(v) = t.label_of(target) {
            return Ok(seed.cluster[v as usize - 1].clone());
        }
        let crossing = |t: &Triangulation| t.labels().filter(|&v| crossing_number(target, t.edge(v)) == 1).count();
        let before = crossing(&t);
        let mut progressed = false;
        for v in t.labels().collect::<Vec<_>>() {
            if crossing_number(target, t.edge(v)) != 1 {
                continue;
            }
            let mut next = t.clone();
            next.flip(v)?;
            if crossing(&next) < before {
                if q.is_frozen(v) {
                    return Err(Error::FrozenVertex(v));
                }
                seed = seed.mutate(v)?;
                t = next;
                progressed = true;
                break;
            }
        }
        if !progressed {
            return Err(Error::AssumptionViolated("no flip reduces the crossings".into()));
        }
    }
}

/// Principal-coefficient lift of `x[a]`: the same variable computed over
/// the framed quiver, in variables `x_1, ..., x_{2n}`.
pub fn principal_lift(q: &Quiver, a: &[i64]) -> Result<LaurentPoly> {
    cluster_variable(&q.with_principal_coefficients(), a)
}

/// g-vector of a homogeneous element of a principal-coefficient cluster
/// algebra on `n` mutable vertices, with `deg x_i = e_i` and
/// `deg x_{n+i} = -(column i of B)`.
pub fn g_vector(q: &Quiver, u: &LaurentPoly) -> Result<Vec<i64>> {
    let n = q.n();
    let degree = |m: &Monomial| -> Vec<i64> {
        let mut g = vec![0i64; n];
        for (v, e) in m.iter() {
            let v = v as usize;
            if v <= n {
                g[v - 1] += e as i64;
            } else if v <= 2 * n {
                let i = (v - n) as Vertex;
                for (j, gj) in g.iter_mut().enumerate() {
                    *gj -= e as i64 * q.b(j as Vertex + 1, i) as i64;
                }
            }
        }
        g
    };
    let mut degs = u.terms().map(|(m, _)| degree(m));
    let first = degs.next().ok_or_else(|| Error::AssumptionViolated("zero polynomial".into()))?;
    if degs.any(|g| g != first) {
        return Err(Error::AssumptionViolated("element is not homogeneous".into()));
    }
    Ok(first)
}
