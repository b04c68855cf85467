//! Broken lines for cluster variables of type-A quivers.
//!
//! For a linear full subquiver `Q` with path positions `1..n` and a
//! compatible vector `s`, the w-sequence flips the smallest adjustable
//! position of `s` back to `1` until all entries are `1`. The broken line
//! of `s` starts in direction `-m_0`, bends on the initial wall
//! `e_{w_i}^perp` from `m_{i-1}` to `m_i = g_Q(s^(i))`, and ends at a
//! fixed generic point. All arithmetic is exact.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::formulas::enumerate_variable_gcs;
use crate::laurent::{LaurentPoly, Monomial, Var};
use crate::quiver::{LinearSubquiver, Quiver, Vertex};

/// Backward flip sequence of a compatible vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WSequence {
    /// `w[i - 1] = w_i`, as path positions.
    pub w: Vec<usize>,
    /// `states[i] = s^(i)`; `states[0]` is all ones.
    pub states: Vec<Vec<bool>>,
}

/// Positions holding `0` whose flip to `1` keeps `s` compatible: the sinks
/// of the subquiver on the zero positions. 1-based, ascending.
pub fn adjustable_positions(q: &Quiver, path: &LinearSubquiver, s: &[bool]) -> Vec<usize> {
    let vs = path.vertices();
    (1..=vs.len())
        .filter(|&p| !s[p - 1])
        .filter(|&p| q.out_neighbors(vs[p - 1]).iter().all(|&j| path.position(j).is_none_or(|r| s[r - 1])))
        .collect()
}

fn check_compatible(q: &Quiver, path: &LinearSubquiver, s: &[bool]) -> Result<()> {
    if s.len() != path.len() {
        return Err(Error::AssumptionViolated(format!("vector has length {}, path has {}", s.len(), path.len())));
    }
    for (i, j) in q.arrows() {
        if let (Some(a), Some(b)) = (path.position(i), path.position(j)) {
            if s[a - 1] && !s[b - 1] {
                return Err(Error::AssumptionViolated(format!("arrow {i}->{j} carries (1, 0)")));
            }
        }
    }
    Ok(())
}

pub fn w_sequence(q: &Quiver, path: &LinearSubquiver, s: &[bool]) -> Result<WSequence> {
    check_compatible(q, path, s)?;
    let mut cur = s.to_vec();
    let mut w = Vec::new();
    let mut states = vec![cur.clone()];
    while cur.iter().any(|&b| !b) {
        let p = *adjustable_positions(q, path, &cur)
            .first()
            .ok_or_else(|| Error::AssumptionViolated("no adjustable position".into()))?;
        cur[p - 1] = true;
        w.push(p);
        states.push(cur.clone());
    }
    w.reverse();
    states.reverse();
    Ok(WSequence { w, states })
}

/// `g_Q(s)` over all vertices of `q`.
pub fn g_map(q: &Quiver, path: &LinearSubquiver, s: &[bool]) -> Result<Vec<i64>> {
    let on = |j: Vertex, val: bool| path.position(j).is_some_and(|p| s[p - 1] == val);
    let cycles = q.three_cycles();
    q.vertices()
        .map(|r| {
            let ones_in = q.in_neighbors(r).into_iter().filter(|&j| on(j, true)).count() as i64;
            let zeros_out = q.out_neighbors(r).into_iter().filter(|&j| on(j, false)).count() as i64;
            let special = path.contains(r)
                || cycles.iter().any(|c| c.contains(&r) && c.iter().filter(|&&v| v != r && path.contains(v)).count() == 2);
            let g = ones_in + zeros_out - special as i64;
            if !(-1..=1).contains(&g) {
                return Err(Error::NotTypeA(format!("direction coordinate {g} at vertex {r}")));
            }
            Ok(g)
        })
        .collect()
}

/// g-vector `m_0` of the cluster variable of `path`.
pub fn initial_direction(q: &Quiver, path: &LinearSubquiver) -> Result<Vec<i64>> {
    g_map(q, path, &vec![true; path.len()])
}

/// Rank of the exchange matrix.
pub fn exchange_rank(q: &Quiver) -> usize {
    let mut rows: Vec<Vec<BigRational>> = q
        .exchange_matrix()
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let (n, m) = (rows.len(), rows.first().map_or(0, Vec::len));
    let mut rank = 0;
    for col in 0..m {
        let Some(p) = (rank..n).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        for r in rank + 1..n {
            if !rows[r][col].is_zero() {
                let f = &rows[r][col] / &rows[rank][col];
                for k in col..m {
                    let sub = &f * &rows[rank][k];
                    rows[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Endpoint of the broken lines with its separation parameter.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Endpoint {
    pub eps: BigRational,
    pub q: Vec<BigRational>,
}

impl Endpoint {
    /// `eps = 1/(2n)`, `q` at path position `k` is `eps^(n-k)`, every other
    /// coordinate `eps^(n+1)`, and `1` on any coefficient coordinates.
    pub fn default_for(q: &Quiver, path: &LinearSubquiver, principal: bool) -> Endpoint {
        let n = path.len();
        let eps = BigRational::new(BigInt::one(), BigInt::from(2 * n));
        let pow = |k: usize| (0..k).fold(BigRational::one(), |acc, _| acc * &eps);
        let mut coords: Vec<BigRational> = q
            .vertices()
            .map(|v| match path.position(v) {
                Some(k) => pow(n - k),
                None => pow(n + 1),
            })
            .collect();
        if principal {
            coords.extend((0..q.n()).map(|_| BigRational::one()));
        }
        Endpoint { eps, q: coords }
    }

    /// Checks `0 < q_frozen <= eps q_1`, `q_k <= eps q_{k+1}` along the
    /// path, and `(1 + eps)^n < 2`.
    pub fn validate(&self, q: &Quiver, path: &LinearSubquiver) -> Result<()> {
        let n = path.len();
        let nq = q.n();
        if self.q.len() != nq && self.q.len() != 2 * nq {
            return Err(Error::InvalidEndpoint(format!("expected {nq} or {} coordinates", 2 * nq)));
        }
        if !self.eps.is_positive() {
            return Err(Error::InvalidEndpoint("eps must be positive".into()));
        }
        let grow = (0..n).fold(BigRational::one(), |acc, _| acc * (BigRational::one() + &self.eps));
        if grow >= BigRational::from_integer(2.into()) {
            return Err(Error::InvalidEndpoint("(1 + eps)^n must be below 2".into()));
        }
        let at = |v: Vertex| &self.q[v as usize - 1];
        let vs = path.vertices();
        for v in q.vertices() {
            if !at(v).is_positive() {
                return Err(Error::InvalidEndpoint(format!("coordinate {v} is not positive")));
            }
            if !path.contains(v) && at(v) / at(vs[0]) > self.eps {
                return Err(Error::InvalidEndpoint(format!("coordinate {v} is not small against the path")));
            }
        }
        for k in 1..n {
            if at(vs[k - 1]) / at(vs[k]) > self.eps {
                return Err(Error::InvalidEndpoint(format!("path coordinates {k} and {} are not separated", k + 1)));
            }
        }
        Ok(())
    }
}

/// A broken line with its domains of linearity `L_0..L_l`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BrokenLine {
    pub s: Vec<bool>,
    /// Vertices `w_1..w_l` whose walls are crossed, in order.
    pub walls: Vec<Vertex>,
    /// Exponent vectors `m_0..m_l`; the line moves along `-m_i` on `L_i`.
    pub directions: Vec<Vec<i64>>,
    /// Bend points `Q_1..Q_l`.
    pub bends: Vec<Vec<BigRational>>,
    pub endpoint: Vec<BigRational>,
}

impl BrokenLine {
    /// Monomial attached to the final domain.
    pub fn mono(&self) -> Monomial {
        Monomial::from_dense(self.directions.last().expect("at least one domain"))
    }

    /// Monomials attached to `L_0..L_l`.
    pub fn monomials(&self) -> Vec<Monomial> {
        self.directions.iter().map(|m| Monomial::from_dense(m)).collect()
    }
}

fn build(q: &Quiver, path: &LinearSubquiver, s: &[bool], endpoint: &Endpoint, principal: bool) -> Result<BrokenLine> {
    endpoint.validate(q, path)?;
    let nq = q.n();
    let dim = if principal { 2 * nq } else { nq };
    if endpoint.q.len() != dim {
        return Err(Error::InvalidEndpoint(format!("expected {dim} coordinates")));
    }
    let ws = w_sequence(q, path, s)?;
    let ell = ws.w.len();
    let walls: Vec<Vertex> = ws.w.iter().map(|&p| path.vertices()[p - 1]).collect();
    let mut directions = Vec::with_capacity(ell + 1);
    let mut lift = vec![0i64; nq];
    for (i, state) in ws.states.iter().enumerate() {
        let mut m = g_map(q, path, state)?;
        if i > 0 {
            let w = walls[i - 1];
            let prev: &Vec<i64> = &directions[i - 1];
            if prev[w as usize - 1].abs() != 1 || m[w as usize - 1] != -1 {
                return Err(Error::AssumptionViolated(format!("bend {i} does not cross wall {w} transversally")));
            }
            for r in q.vertices() {
                if m[r as usize - 1] - prev[r as usize - 1] != q.b(r, w) as i64 {
                    return Err(Error::AssumptionViolated(format!("bend {i} is not along the wall function")));
                }
            }
            lift[w as usize - 1] += 1;
        }
        if principal {
            m.extend_from_slice(&lift);
        }
        directions.push(m);
    }
    let mut bends = vec![Vec::new(); ell];
    let mut cur = endpoint.q.clone();
    for i in (1..=ell).rev() {
        let w = walls[i - 1] as usize - 1;
        let lambda = cur[w].clone();
        if !lambda.is_positive() {
            return Err(Error::AssumptionViolated(format!("bend {i} would run backwards")));
        }
        let next: Vec<BigRational> =
            cur.iter().zip(&directions[i]).map(|(c, &m)| c + &lambda * BigRational::from_integer(m.into())).collect();
        if !next[w].is_zero() {
            return Err(Error::AssumptionViolated(format!("bend {i} misses its wall")));
        }
        for v in 0..nq {
            if v != w && next[v].is_zero() {
                return Err(Error::InvalidEndpoint(format!("bend {i} lies on two walls")));
            }
        }
        bends[i - 1] = next.clone();
        cur = next;
    }
    let line = BrokenLine { s: s.to_vec(), walls, directions, bends, endpoint: endpoint.q.clone() };
    certify(&line, endpoint)?;
    Ok(line)
}

/// Checks `Q_{i'}[w_i] / q[w_i]` against `[2 - r, r]` with
/// `r = (1 + eps)^(l + 1 - i')` for all `i < i'`.
fn certify(line: &BrokenLine, endpoint: &Endpoint) -> Result<()> {
    let ell = line.walls.len();
    let one_eps = BigRational::one() + &endpoint.eps;
    let two = BigRational::from_integer(2.into());
    for i in 1..=ell {
        let w = line.walls[i - 1] as usize - 1;
        for ip in i + 1..=ell + 1 {
            let point = if ip == ell + 1 { &line.endpoint } else { &line.bends[ip - 1] };
            let ratio = &point[w] / &endpoint.q[w];
            let r = (0..ell + 1 - ip).fold(BigRational::one(), |acc, _| acc * &one_eps);
            if ratio > r || ratio < &two - &r {
                return Err(Error::AssumptionViolated(format!("bend point {ip} leaves the approximation window at wall {}", w + 1)));
            }
        }
    }
    Ok(())
}

/// Broken line of `s`; requires a full-rank exchange matrix.
pub fn broken_line(q: &Quiver, path: &LinearSubquiver, s: &[bool], endpoint: &Endpoint) -> Result<BrokenLine> {
    if exchange_rank(q) != q.n() {
        return Err(Error::AssumptionViolated("exchange matrix is singular; use principal coefficients".into()));
    }
    build(q, path, s, endpoint, false)
}

/// Broken line of `s` for principal coefficients, over `2n` coordinates.
pub fn principal_broken_line(q: &Quiver, path: &LinearSubquiver, s: &[bool], endpoint: &Endpoint) -> Result<BrokenLine> {
    build(q, path, s, endpoint, true)
}

/// One broken line per compatible vector, at the default endpoint. Singular
/// exchange matrices force principal coefficients.
pub fn broken_lines(q: &Quiver, path: &LinearSubquiver, principal: bool) -> Result<Vec<BrokenLine>> {
    q.require_type_a()?;
    let principal = principal || exchange_rank(q) != q.n();
    let endpoint = Endpoint::default_for(q, path, principal);
    enumerate_variable_gcs(q, path)?.iter().map(|s| build(q, path, s, &endpoint, principal)).collect()
}

/// Theta function: the sum of final monomials, with coefficient variables
/// specialized to `1`.
pub fn theta(q: &Quiver, path: &LinearSubquiver) -> Result<LaurentPoly> {
    let nq = q.n() as Var;
    let extra: Vec<Var> = (nq + 1..=2 * nq).collect();
    let mut out = LaurentPoly::zero();
    for line in broken_lines(q, path, false)? {
        out.add_term(line.mono().without(&extra), 1.into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine;
    use crate::formulas::variable_gcs_monomial;

    fn example() -> (Quiver, LinearSubquiver) {
        let q = Quiver::new(4, &[(2, 1), (1, 4), (4, 2), (2, 3)], &[]).unwrap();
        let path = q.linear_subquiver(&[1, 2, 3]).unwrap();
        (q, path)
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn four_vertex_example() {
        let (q, path) = example();
        assert_eq!(enumerate_variable_gcs(&q, &path).unwrap().len(), 5);
        assert_eq!(initial_direction(&q, &path).unwrap(), [0, -1, 0, 0]);
        let s = [false, false, false];
        let ws = w_sequence(&q, &path, &s).unwrap();
        assert_eq!(ws.w, [2, 3, 1]);
        assert_eq!(ws.states[2], [true, false, false]);
        assert_eq!(ws.states[1], [true, false, true]);
        let e = Endpoint::default_for(&q, &path, false);
        let line = broken_line(&q, &path, &s, &e).unwrap();
        assert_eq!(line.walls, [2, 3, 1]);
        assert_eq!(line.directions[1], [-1, -1, -1, 1]);
        assert_eq!(line.directions[2], [-1, 0, -1, 1]);
        assert_eq!(line.directions[3], [-1, 1, -1, 0]);
        assert_eq!(line.mono(), Monomial::from_dense(&[-1, 1, -1, 0]));
        let [q1, q2, q3, q4] = [0, 1, 2, 3].map(|k| e.q[k].clone());
        let zero = BigRational::zero();
        assert_eq!(line.bends[2], [zero.clone(), &q2 + &q1, &q3 - &q1, q4.clone()]);
        assert_eq!(line.bends[1], [&q1 - &q3, &q2 + &q1, zero.clone(), &q4 + &q3 - &q1]);
        assert_eq!(line.bends[0], [-&q3 - &q2, zero, -&q2 - &q1, &q4 + &q3 + &q2]);
    }

    #[test]
    fn default_endpoint_values() {
        let q = crate::quiver::a_n(4);
        let path = q.linear_subquiver(&[1, 2, 3]).unwrap();
        let e = Endpoint::default_for(&q, &path, false);
        assert_eq!(e.eps, r(1, 6));
        assert_eq!(e.q, [r(1, 36), r(1, 6), r(1, 1), r(1, 1296)]);
        e.validate(&q, &path).unwrap();
        let mut bad = e.clone();
        bad.q.swap(0, 1);
        assert!(matches!(bad.validate(&q, &path), Err(Error::InvalidEndpoint(_))));
    }

    #[test]
    fn all_ones_is_a_straight_line() {
        let (q, path) = example();
        let e = Endpoint::default_for(&q, &path, false);
        let line = broken_line(&q, &path, &[true; 3], &e).unwrap();
        assert!(line.bends.is_empty());
        assert_eq!(line.directions, [initial_direction(&q, &path).unwrap()]);
    }

    fn quivers() -> Vec<Quiver> {
        vec![
            crate::quiver::a_n(3),
            crate::quiver::a_n(4),
            example().0,
            Quiver::new(5, &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3)], &[]).unwrap(),
            Quiver::new(6, &[(2, 1), (3, 2), (2, 4), (4, 3), (4, 5), (6, 5)], &[]).unwrap(),
        ]
    }

    #[test]
    fn theta_equals_cluster_variable() {
        for q in quivers() {
            let cat = engine::enumerate(&q, engine::SEED_LIMIT).unwrap();
            for path in q.linear_subquivers() {
                let a = path.indicator(&q);
                assert_eq!(&theta(&q, &path).unwrap(), cat.variable(&a).unwrap(), "{:?}", path.vertices());
                let lines = broken_lines(&q, &path, false).unwrap();
                let mut walls: Vec<&Vec<Vertex>> = lines.iter().map(|l| &l.walls).collect();
                walls.sort();
                walls.dedup();
                assert_eq!(walls.len(), lines.len());
                for line in &lines {
                    let nq = q.n() as Var;
                    let extra: Vec<Var> = (nq + 1..=2 * nq).collect();
                    assert_eq!(line.mono().without(&extra), variable_gcs_monomial(&q, &path, &line.s));
                }
            }
        }
    }

    #[test]
    fn principal_lines_sum_to_principal_variable() {
        for q in quivers() {
            let framed = q.with_principal_coefficients();
            let cat = engine::enumerate(&framed, engine::SEED_LIMIT).unwrap();
            for path in q.linear_subquivers() {
                let a = path.indicator(&q);
                let want = cat.variable(&a).unwrap();
                let mut sum = LaurentPoly::zero();
                for line in broken_lines(&q, &path, true).unwrap() {
                    assert_eq!(line.directions[0][q.n()..], vec![0; q.n()][..]);
                    sum.add_term(line.mono(), 1.into());
                }
                assert_eq!(&sum, want, "{:?}", path.vertices());
                assert_eq!(engine::g_vector(&q, want).unwrap(), initial_direction(&q, &path).unwrap());
            }
        }
    }

    #[test]
    fn rank_parity() {
        assert_eq!(exchange_rank(&crate::quiver::a_n(3)), 2);
        assert_eq!(exchange_rank(&crate::quiver::a_n(4)), 4);
        let (q, path) = example();
        let odd = crate::quiver::a_n(3);
        let p3 = odd.linear_subquiver(&[1, 2]).unwrap();
        let e = Endpoint::default_for(&odd, &p3, false);
        assert!(broken_line(&odd, &p3, &[true, true], &e).is_err());
        assert!(broken_line(&q, &path, &[true; 3], &Endpoint::default_for(&q, &path, false)).is_ok());
    }
}
