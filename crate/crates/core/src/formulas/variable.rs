//! Compatible 0-1 vectors for a single cluster variable.
//!
//! For a linear full subquiver `Q` of a type-A quiver, `s` ranges over
//! `{0,1}^{Q_0}` with `(s_i, s_j) != (1, 0)` on every arrow of `Q`, and
//! contributes
//! `z_s = prod_{i -> j} x_i^{a_j - s_j} x_j^{s_i} / prod_{r in Q_0 + K} x_r`,
//! where `K` holds the vertices off `Q` with exactly one arrow from `Q` and
//! one arrow to `Q`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::laurent::{LaurentPoly, Monomial, Var};
use crate::quiver::{LinearSubquiver, Quiver, Vertex};
use crate::twosat::TwoSat;

/// All compatible vectors, indexed by path position, in lexicographic order.
pub fn enumerate_variable_gcs(q: &Quiver, path: &LinearSubquiver) -> Result<Vec<Vec<bool>>> {
    q.require_type_a()?;
    q.linear_subquiver(path.vertices())?;
    let mut sat = TwoSat::new(path.len());
    for (i, j) in q.arrows() {
        if let (Some(x), Some(y)) = (path.position(i), path.position(j)) {
            sat.forbid(x - 1, true, y - 1, false);
        }
    }
    let mut out = Vec::new();
    sat.for_each_solution(|s| out.push(s.to_vec()));
    Ok(out)
}

fn k_set(q: &Quiver, path: &LinearSubquiver) -> Vec<Vertex> {
    q.vertices()
        .filter(|&k| !path.contains(k))
        .filter(|&k| {
            let from = q.in_neighbors(k).iter().filter(|&&v| path.contains(v)).count();
            let to = q.out_neighbors(k).iter().filter(|&&v| path.contains(v)).count();
            from == 1 && to == 1
        })
        .collect()
}

pub fn variable_gcs_monomial(q: &Quiver, path: &LinearSubquiver, s: &[bool]) -> Monomial {
    let mut e = vec![0i64; q.n()];
    let bit = |v: Vertex| path.position(v).map_or(0, |p| s[p - 1] as i64);
    let a = |v: Vertex| path.contains(v) as i64;
    for (i, j) in q.arrows() {
        e[i as usize - 1] += a(j) - bit(j);
        e[j as usize - 1] += bit(i);
    }
    for &r in path.vertices().iter().chain(k_set(q, path).iter()) {
        e[r as usize - 1] -= 1;
    }
    Monomial::from_pairs(e.iter().enumerate().map(|(i, &x)| (i as Var + 1, x as i32)))
}

/// Cluster variable of a linear full subquiver.
pub fn formula_gcs_variable(q: &Quiver, path: &LinearSubquiver) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for s in enumerate_variable_gcs(q, path)? {
        out.add_term(variable_gcs_monomial(q, path, &s), 1.into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine;

    #[test]
    fn agrees_with_oracle_with_three_cycles() {
        let q = Quiver::new(5, &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3)], &[]).unwrap();
        let cat = engine::enumerate(&q, engine::SEED_LIMIT).unwrap();
        for path in q.linear_subquivers() {
            let want = cat.variable(&path.indicator(&q)).unwrap();
            assert_eq!(&formula_gcs_variable(&q, &path).unwrap(), want, "{:?}", path.vertices());
        }
    }
}
