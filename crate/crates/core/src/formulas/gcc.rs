//! Generalized compatible collections.
//!
//! Each arrow `i -> j` carries a pair `(S1, S2)`: `S1` a subset of the
//! horizontal edges `u_1..u_{a_i}` and `S2` of the vertical edges
//! `v_1..v_{a_j}` of the maximal Dyck path `D^{a_i x a_j}`, labeled corners
//! first. For every path `k -> i -> j`:
//!
//! * if `j -> k` closes a 3-cycle, `(S1, S2)` on `i -> j` is
//!   `sigma(a_i, a_j, a_k)`-compatible and `v_r` lies in `S2` of `k -> i`
//!   exactly when `u_{a_i+1-r}` is missing from `S1` of `i -> j`;
//! * otherwise `v_r` lies in `S2` of `k -> i` exactly when `u_r` is missing
//!   from `S1` of `i -> j`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::gcs::{default_base_vertex, Gcs};
use crate::error::{Error, Result};
use crate::geometry::{check_in_w, sigma_int};
use crate::laurent::{LaurentPoly, Monomial, Var};
use crate::quiver::{Quiver, Vertex};
use crate::twosat::TwoSat;

/// A compatible collection. `s1[e][r - 1]` says whether `u_r` lies in `S1`
/// of arrow `arrows[e]`; `s2[e][r - 1]` likewise for `v_r` in `S2`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Gcc {
    pub arrows: Vec<(Vertex, Vertex)>,
    pub s1: Vec<Vec<bool>>,
    pub s2: Vec<Vec<bool>>,
}

impl Gcc {
    pub fn arrow_index(&self, i: Vertex, j: Vertex) -> Option<usize> {
        self.arrows.iter().position(|&e| e == (i, j))
    }

    pub fn sizes(&self, e: usize) -> (usize, usize) {
        (self.s1[e].iter().filter(|&&b| b).count(), self.s2[e].iter().filter(|&&b| b).count())
    }
}

pub(crate) struct Layout {
    pub arrows: Vec<(Vertex, Vertex)>,
    /// `(s1 offset, s2 offset)` per arrow.
    pub off: Vec<(usize, usize)>,
    pub a: Vec<i64>,
}

impl Layout {
    pub fn u(&self, e: usize, r: i64) -> usize {
        self.off[e].0 + r as usize - 1
    }
    pub fn v(&self, e: usize, r: i64) -> usize {
        self.off[e].1 + r as usize - 1
    }
    fn decode(&self, sol: &[bool]) -> Gcc {
        let mut s1 = Vec::new();
        let mut s2 = Vec::new();
        for (e, &(i, j)) in self.arrows.iter().enumerate() {
            let (o1, o2) = self.off[e];
            s1.push(sol[o1..o1 + self.a[i as usize - 1] as usize].to_vec());
            s2.push(sol[o2..o2 + self.a[j as usize - 1] as usize].to_vec());
        }
        Gcc { arrows: self.arrows.clone(), s1, s2 }
    }
}

pub(crate) fn system(q: &Quiver, a: &[i64]) -> Result<(TwoSat, Layout)> {
    q.require_type_a()?;
    if q.n() < 2 {
        return Err(Error::AssumptionViolated("compatible collections need at least two vertices".into()));
    }
    if !q.every_edge_on_three_cycle() {
        return Err(Error::AssumptionViolated("an edge lies on no 3-cycle".into()));
    }
    check_in_w(q, a)?;
    if a.iter().any(|&x| x < 0) {
        return Err(Error::AssumptionViolated("negative entries must be split off first".into()));
    }
    let arrows = q.arrows();
    let mut off = Vec::new();
    let mut total = 0usize;
    for &(i, j) in &arrows {
        let o1 = total;
        total += a[i as usize - 1] as usize;
        let o2 = total;
        total += a[j as usize - 1] as usize;
        off.push((o1, o2));
    }
    let layout = Layout { arrows: arrows.clone(), off, a: a.to_vec() };
    let index: BTreeMap<(Vertex, Vertex), usize> = arrows.iter().enumerate().map(|(e, &x)| (x, e)).collect();
    let mut sat = TwoSat::new(total);
    for (&(k, i), &ein) in &index {
        for (&(i2, j), &eout) in &index {
            if i2 != i {
                continue;
            }
            let ai = a[i as usize - 1];
            if q.has_arrow(j, k) {
                let s = sigma_int(ai, a[j as usize - 1], a[k as usize - 1]);
                for r in 1..=s {
                    sat.forbid(layout.u(eout, r), true, layout.v(eout, r), true);
                }
                for r in 1..=ai {
                    sat.unequal(layout.v(ein, r), layout.u(eout, ai + 1 - r));
                }
            } else {
                for r in 1..=ai {
                    sat.unequal(layout.v(ein, r), layout.u(eout, r));
                }
            }
        }
    }
    Ok((sat, layout))
}

pub(crate) fn solve(sat: &TwoSat, layout: &Layout) -> Vec<Gcc> {
    let mut out = Vec::new();
    sat.for_each_solution(|sol| out.push(layout.decode(sol)));
    out
}

/// Enumerates compatible collections for `a >= 0`.
pub fn enumerate_gcc(q: &Quiver, a: &[i64]) -> Result<Vec<Gcc>> {
    let (sat, layout) = system(q, a)?;
    Ok(solve(&sat, &layout))
}

/// `prod_{i -> j} x_i^{|S2|} x_j^{|S1|} * prod x_i^{-sigma_jki} * prod x_l^{-a_l}`.
pub fn gcc_monomial(q: &Quiver, a: &[i64], g: &Gcc) -> Monomial {
    let mut e: Vec<i64> = a.iter().map(|&x| -x).collect();
    for (idx, &(i, j)) in g.arrows.iter().enumerate() {
        let (n1, n2) = g.sizes(idx);
        e[i as usize - 1] += n2 as i64;
        e[j as usize - 1] += n1 as i64;
    }
    for [x, y, z] in q.three_cycles() {
        for (i, j, k) in [(x, y, z), (y, z, x), (z, x, y)] {
            e[i as usize - 1] -= sigma_int(a[j as usize - 1], a[k as usize - 1], a[i as usize - 1]);
        }
    }
    Monomial::from_pairs(e.iter().enumerate().map(|(i, &x)| (i as Var + 1, x as i32)))
}

/// `x[a]` as the sum of compatible-collection monomials.
pub fn formula_gcc(q: &Quiver, a: &[i64]) -> Result<LaurentPoly> {
    let (pos, neg) = super::split_negative(a);
    let mut out = LaurentPoly::zero();
    for g in enumerate_gcc(q, &pos)? {
        out.add_term(gcc_monomial(q, &pos, &g), 1.into());
    }
    Ok(&out * &neg)
}

/// Each 3-cycle as `(k, i, j)` with `k -> i -> j -> k` and `k` its vertex
/// nearest to the base vertex.
fn entered_cycles(q: &Quiver, i0: Vertex) -> Result<Vec<[Vertex; 3]>> {
    let dist = q.directed_distances(i0);
    q.three_cycles()
        .into_iter()
        .map(|c| {
            let d = |v: Vertex| dist[v as usize].ok_or(Error::Unreachable(v));
            let r = (0..3).min_by_key(|&r| d(c[r]).unwrap_or(usize::MAX)).unwrap();
            for &v in &c {
                d(v)?;
            }
            Ok([c[r], c[(r + 1) % 3], c[(r + 2) % 3]])
        })
        .collect()
}

fn base(q: &Quiver, i0: Option<Vertex>) -> Result<Vertex> {
    match i0 {
        Some(v) => Ok(v),
        None => default_base_vertex(q),
    }
}

/// Maps a compatible sequence to the compatible collection with the same
/// monomial.
pub fn gcs_to_gcc(q: &Quiver, a: &[i64], i0: Option<Vertex>, s: &Gcs) -> Result<Gcc> {
    let i0 = base(q, i0)?;
    let arrows = q.arrows();
    let mut s1: Vec<Vec<bool>> = arrows.iter().map(|&(i, _)| vec![false; a[i as usize - 1] as usize]).collect();
    let mut s2: Vec<Vec<bool>> = arrows.iter().map(|&(_, j)| vec![false; a[j as usize - 1] as usize]).collect();
    let bit = |v: Vertex, t: usize| s.bits[v as usize - 1][t - 1];
    let len = |v: Vertex| a[v as usize - 1] as usize;
    let find = |x: Vertex, y: Vertex| {
        arrows.iter().position(|&e| e == (x, y)).ok_or_else(|| Error::AssumptionViolated(format!("missing arrow {x}->{y}")))
    };
    for [k, i, j] in entered_cycles(q, i0)? {
        let (eki, eij, ejk) = (find(k, i)?, find(i, j)?, find(j, k)?);
        for r in 1..=len(k) {
            s1[eki][r - 1] = bit(k, r);
            s2[ejk][r - 1] = !bit(k, len(k) + 1 - r);
        }
        for r in 1..=len(i) {
            s2[eki][r - 1] = !bit(i, r);
            s1[eij][r - 1] = bit(i, len(i) + 1 - r);
        }
        for r in 1..=len(j) {
            s2[eij][r - 1] = !bit(j, r);
            s1[ejk][r - 1] = bit(j, len(j) + 1 - r);
        }
    }
    Ok(Gcc { arrows, s1, s2 })
}

/// Inverse of [`gcs_to_gcc`].
pub fn gcc_to_gcs(q: &Quiver, a: &[i64], i0: Option<Vertex>, g: &Gcc) -> Result<Gcs> {
    let i0 = base(q, i0)?;
    let mut bits: Vec<Vec<bool>> = a.iter().map(|&x| vec![false; x.max(0) as usize]).collect();
    for [k, i, j] in entered_cycles(q, i0)? {
        let eki = g.arrow_index(k, i).ok_or_else(|| Error::AssumptionViolated("missing arrow".into()))?;
        let eij = g.arrow_index(i, j).ok_or_else(|| Error::AssumptionViolated("missing arrow".into()))?;
        for r in 0..bits[k as usize - 1].len() {
            bits[k as usize - 1][r] = g.s1[eki][r];
        }
        for r in 0..bits[i as usize - 1].len() {
            bits[i as usize - 1][r] = !g.s2[eki][r];
        }
        for r in 0..bits[j as usize - 1].len() {
            bits[j as usize - 1][r] = !g.s2[eij][r];
        }
    }
    let s = Gcs { bits };
    if &gcs_to_gcc(q, a, Some(i0), &s)? != g {
        return Err(Error::AssumptionViolated("collection is not in the image of a sequence".into()));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::gcs::{enumerate_gcs, gcs_monomial};

    fn cycle3() -> Quiver {
        Quiver::new(3, &[(1, 2), (2, 3), (3, 1)], &[]).unwrap()
    }

    #[test]
    fn three_cycle_collections() {
        let q = cycle3();
        let gccs = enumerate_gcc(&q, &[2, 2, 2]).unwrap();
        assert_eq!(gccs.len(), 27);
        let want = LaurentPoly::parse("(x1 + x2 + x3)^3/(x1^2 x2^2 x3^2)").unwrap();
        assert_eq!(formula_gcc(&q, &[2, 2, 2]).unwrap(), want);
    }

    #[test]
    fn bijection_preserves_monomials() {
        let q = cycle3();
        for a in [[2, 2, 2], [3, 1, 2], [1, 1, 0], [4, 2, 2]] {
            let seqs = enumerate_gcs(&q, &a, 1).unwrap();
            let mut images: Vec<Gcc> = Vec::new();
            for s in &seqs {
                let g = gcs_to_gcc(&q, &a, Some(1), s).unwrap();
                assert_eq!(gcc_monomial(&q, &a, &g), gcs_monomial(&q, &a, s));
                assert_eq!(&gcc_to_gcs(&q, &a, Some(1), &g).unwrap(), s);
                images.push(g);
            }
            let mut all = enumerate_gcc(&q, &a).unwrap();
            all.sort();
            images.sort();
            assert_eq!(images, all, "{a:?}");
        }
    }
}
