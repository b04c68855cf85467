//! Generalized compatible sequences.
//!
//! For a quiver in which every edge lies on an oriented 3-cycle, a sequence
//! assigns a 0-1 string `s_i` of length `a_i` to each vertex. Fix a base
//! vertex `i0` of degree 2 and let `d` be the directed distance from it.
//! Each 3-cycle is entered at a unique vertex, and for each of its arrows
//! `i -> j` (third vertex `k`) the pairs below must avoid `(1, 0)` for
//! `t <= sigma(a_i, a_j, a_k)`:
//!
//! | order              | pair                                   |
//! |--------------------|----------------------------------------|
//! | `d(i) < d(j) < d(k)` | `(s_{i,t}, s_{j,t})`                 |
//! | `d(j) < d(k) < d(i)` | `(s_{i,a_i+1-t}, s_{j,a_j+1-t})`     |
//! | `d(k) < d(i) < d(j)` | `(s_{i,a_i+1-t}, s_{j,t})`           |

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{check_in_w, sigma_int};
use crate::laurent::{LaurentPoly, Monomial, Var};
use crate::quiver::{Quiver, Vertex};
use crate::twosat::TwoSat;

/// A compatible sequence: `bits[i - 1][t - 1] = s_{i,t}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Gcs {
    pub bits: Vec<Vec<bool>>,
}

impl Gcs {
    /// `|s_i|`, the number of ones in `s_i`.
    pub fn weight(&self, i: Vertex) -> i64 {
        self.bits[i as usize - 1].iter().filter(|&&b| b).count() as i64
    }

    /// Strings such as `"10,01,11"`.
    pub fn render(&self) -> alloc::string::String {
        let parts: Vec<alloc::string::String> =
            self.bits.iter().map(|s| s.iter().map(|&b| if b { '1' } else { '0' }).collect()).collect();
        parts.join(",")
    }
}

/// Smallest vertex of degree 2.
pub fn default_base_vertex(q: &Quiver) -> Result<Vertex> {
    q.vertices()
        .find(|&v| q.degree(v) == 2)
        .ok_or_else(|| Error::AssumptionViolated("no vertex of degree 2".into()))
}

fn check_assumptions(q: &Quiver, a: &[i64], i0: Vertex) -> Result<Vec<usize>> {
    q.require_type_a()?;
    if !q.every_edge_on_three_cycle() {
        return Err(Error::AssumptionViolated("an edge lies on no 3-cycle".into()));
    }
    check_in_w(q, a)?;
    if a.iter().any(|&x| x < 0) {
        return Err(Error::AssumptionViolated("negative entries must be split off first".into()));
    }
    if q.n() == 1 {
        return Ok(vec![0]);
    }
    if i0 == 0 || i0 as usize > q.n() {
        return Err(Error::InvalidVertex(i0));
    }
    if q.degree(i0) != 2 {
        return Err(Error::AssumptionViolated(format!("base vertex {i0} does not have degree 2")));
    }
    let dist = q.directed_distances(i0);
    q.vertices().map(|v| dist[v as usize].ok_or(Error::Unreachable(v))).collect()
}

/// 3-cycle through arrow `i -> j`, as its third vertex.
fn third(q: &Quiver, i: Vertex, j: Vertex) -> Option<Vertex> {
    q.vertices().find(|&k| q.has_arrow(j, k) && q.has_arrow(k, i))
}

/// Enumerates compatible sequences for `a >= 0` in lexicographic order of
/// the concatenated strings.
pub fn enumerate_gcs(q: &Quiver, a: &[i64], i0: Vertex) -> Result<Vec<Gcs>> {
    let d = check_assumptions(q, a, i0)?;
    let mut offset = vec![0usize; q.n() + 1];
    for i in 0..q.n() {
        offset[i + 1] = offset[i] + a[i] as usize;
    }
    let var = |i: Vertex, t: i64| offset[i as usize - 1] + t as usize - 1;
    let mut sat = TwoSat::new(offset[q.n()]);
    for (i, j) in q.arrows() {
        let k = third(q, i, j).ok_or_else(|| Error::AssumptionViolated(format!("arrow {i}->{j} on no 3-cycle")))?;
        let (ai, aj) = (a[i as usize - 1], a[j as usize - 1]);
        let s = sigma_int(ai, aj, a[k as usize - 1]);
        let (di, dj, dk) = (d[i as usize - 1], d[j as usize - 1], d[k as usize - 1]);
        for t in 1..=s {
            let (x, y) = if di < dj && dj < dk {
                (var(i, t), var(j, t))
            } else if dj < dk && dk < di {
                (var(i, ai + 1 - t), var(j, aj + 1 - t))
            } else if dk < di && di < dj {
                (var(i, ai + 1 - t), var(j, t))
            } else {
                return Err(Error::AssumptionViolated(format!("3-cycle ({i}, {j}, {k}) has no distance order")));
            };
            sat.forbid(x, true, y, false);
        }
    }
    let mut out = Vec::new();
    sat.for_each_solution(|sol| {
        let bits = (0..q.n()).map(|i| sol[offset[i]..offset[i + 1]].to_vec()).collect();
        out.push(Gcs { bits });
    });
    Ok(out)
}

/// Monomial of a compatible sequence, including the denominator
/// `prod x_l^{-a_l}`:
/// `e_i = sum_{i -> j} |s_bar_j| + sum_{k -> i} |s_k| - sum sigma_jki`.
pub fn gcs_monomial(q: &Quiver, a: &[i64], s: &Gcs) -> Monomial {
    let mut e: Vec<i64> = a.iter().map(|&x| -x).collect();
    for (i, j) in q.arrows() {
        e[i as usize - 1] += a[j as usize - 1] - s.weight(j);
        e[j as usize - 1] += s.weight(i);
    }
    for [x, y, z] in q.three_cycles() {
        for (i, j, k) in [(x, y, z), (y, z, x), (z, x, y)] {
            e[i as usize - 1] -= sigma_int(a[j as usize - 1], a[k as usize - 1], a[i as usize - 1]);
        }
    }
    Monomial::from_pairs(e.iter().enumerate().map(|(i, &x)| (i as Var + 1, x as i32)))
}

/// `x[a]` as the sum of compatible-sequence monomials.
pub fn formula_gcs(q: &Quiver, a: &[i64], i0: Vertex) -> Result<LaurentPoly> {
    let (pos, neg) = super::split_negative(a);
    let mut out = LaurentPoly::zero();
    for s in enumerate_gcs(q, &pos, i0)? {
        out.add_term(gcs_monomial(q, &pos, &s), 1.into());
    }
    Ok(&out * &neg)
}
