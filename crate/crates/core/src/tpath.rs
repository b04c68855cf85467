//! T-paths in the initial triangulation of a completely extended linear
//! quiver, complete T-paths, and their correspondence with perfect
//! matchings.
//!
//! A T-path runs from the start corner to the end corner of the
//! distinguished diagonal `M` along labeled edges, uses each label at most
//! once, has odd length, crosses `M` at every even step, and crosses the
//! path diagonals in increasing order. A complete T-path has length
//! `2n + 1` with the path diagonal `T_j` at step `2j`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{crossing_number, Triangulation};
use crate::laurent::{LaurentPoly, Monomial};
use crate::quiver::{LinearExtension, Site, Vertex};
use crate::snake::{PerfectMatching, SnakeDiagram};

/// A walk in the triangulation: corners `w_0..w_l` and the labels of the
/// edges between them.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TPath {
    pub corners: Vec<usize>,
    pub labels: Vec<Vertex>,
}

impl TPath {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// `x(alpha)`: odd steps over even steps.
pub fn tpath_monomial(labels: &[Vertex]) -> Monomial {
    let mut m = Monomial::one();
    for (k, &l) in labels.iter().enumerate() {
        let e = if k % 2 == 0 { 1 } else { -1 };
        m = m.mul(&Monomial::pow(l, e));
    }
    m
}

fn ends(t: &Triangulation) -> Result<(usize, usize)> {
    t.ends().ok_or_else(|| Error::AssumptionViolated("triangulation has no distinguished diagonal".into()))
}

/// All T-paths, sorted.
pub fn tpaths(ext: &LinearExtension) -> Result<Vec<TPath>> {
    let t = Triangulation::initial(ext);
    let (v, w) = ends(&t)?;
    let labels: Vec<Vertex> = t.labels().collect();
    let crosses = |l: Vertex| crossing_number((v, w), t.edge(l)) == 1;
    // Crossing diagonals are the path diagonals, met in label order.
    let mut out = Vec::new();
    let mut corners = vec![v];
    let mut path: Vec<Vertex> = Vec::new();
    let mut used = vec![false; labels.len() + 1];
    #[allow(clippy::too_many_arguments)]
    fn go(
        t: &Triangulation,
        labels: &[Vertex],
        crosses: &dyn Fn(Vertex) -> bool,
        w: usize,
        last_cross: Vertex,
        corners: &mut Vec<usize>,
        path: &mut Vec<Vertex>,
        used: &mut Vec<bool>,
        out: &mut Vec<TPath>,
    ) {
        let at = *corners.last().unwrap();
        if at == w && path.len() % 2 == 1 {
            out.push(TPath { corners: corners.clone(), labels: path.clone() });
        }
        let step = path.len() + 1;
        for &l in labels {
            if used[l as usize] {
                continue;
            }
            let (a, b) = t.edge(l);
            let next = if a == at { b } else if b == at { a } else { continue };
            let c = crosses(l);
            if step.is_multiple_of(2) && !c {
                continue;
            }
            if c && l <= last_cross {
                continue;
            }
            used[l as usize] = true;
            corners.push(next);
            path.push(l);
            go(t, labels, crosses, w, if c { l } else { last_cross }, corners, path, used, out);
            path.pop();
            corners.pop();
            used[l as usize] = false;
        }
    }
    go(&t, &labels, &crosses, w, 0, &mut corners, &mut path, &mut used, &mut out);
    out.sort();
    Ok(out)
}

/// Cluster variable of the path indicator as a sum over T-paths.
pub fn formula_tpath(ext: &LinearExtension) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for p in tpaths(ext)? {
        out.add_term(tpath_monomial(&p.labels), 1.into());
    }
    Ok(out)
}

/// Position of a site in the order
/// `Start0 < Start1 < T_1 < Edge(1) < T_2 < ... < T_n < End0 < End1`.
pub fn site_rank(site: Site) -> usize {
    match site {
        Site::Start0 => 0,
        Site::Start1 => 1,
        Site::Base(i) => 2 * i,
        Site::Edge(i) => 2 * i + 1,
        Site::End0 => usize::MAX - 1,
        Site::End1 => usize::MAX,
    }
}

/// Checks that a label sequence is a walk from the start corner to the end
/// corner, returning its corners.
pub fn walk(ext: &LinearExtension, labels: &[Vertex]) -> Result<Vec<usize>> {
    let t = Triangulation::initial(ext);
    let (v, w) = ends(&t)?;
    let mut corners = vec![v];
    for &l in labels {
        if l == 0 || l as usize > ext.total_vertices() {
            return Err(Error::InvalidVertex(l));
        }
        let at = *corners.last().unwrap();
        let (a, b) = t.edge(l);
        let next = if a == at { b } else if b == at { a } else { return Err(Error::AssumptionViolated("labels do not form a walk".into())) };
        corners.push(next);
    }
    if *corners.last().unwrap() != w {
        return Err(Error::AssumptionViolated("walk does not end at the end corner".into()));
    }
    Ok(corners)
}

/// The complete T-path of a matching: `T_j` at step `2j` and the projection
/// of `gamma_j` at step `2j + 1`.
pub fn fold_matching(d: &SnakeDiagram, m: &PerfectMatching) -> Vec<Vertex> {
    let ext = d.extension();
    let mut out = Vec::with_capacity(2 * ext.n() + 1);
    for (j, &e) in m.edges.iter().enumerate() {
        if j > 0 {
            out.push(ext.label(Site::Base(j)));
        }
        out.push(ext.label(d.label(e).site()));
    }
    out
}

/// Inverse of [`fold_matching`].
pub fn unfold_matching(d: &SnakeDiagram, complete: &[Vertex]) -> Result<PerfectMatching> {
    let ext = d.extension();
    let n = ext.n();
    if complete.len() != 2 * n + 1 {
        return Err(Error::AssumptionViolated("complete T-path has the wrong length".into()));
    }
    for j in 1..=n {
        if complete[2 * j - 1] != ext.label(Site::Base(j)) {
            return Err(Error::AssumptionViolated("even steps must be the path diagonals".into()));
        }
    }
    let edges = (0..=n)
        .map(|j| {
            d.edge_over(j, ext.site(complete[2 * j]))
                .ok_or_else(|| Error::AssumptionViolated("odd step matches no edge of its parallelogram".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let m = PerfectMatching { edges };
    if !d.is_perfect(&m) {
        return Err(Error::AssumptionViolated("complete T-path unfolds to no matching".into()));
    }
    Ok(m)
}

/// Cancels adjacent equal labels.
pub fn reduce_path(complete: &[Vertex]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = Vec::with_capacity(complete.len());
    for &l in complete {
        if out.last() == Some(&l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Inverse of [`reduce_path`] on complete T-paths: reinserts the pairs
/// `T_j T_j` that keep the sequence nondecreasing.
pub fn complete_path(ext: &LinearExtension, labels: &[Vertex]) -> Result<Vec<Vertex>> {
    let n = ext.n();
    let bad = || Error::AssumptionViolated("not the reduction of a complete T-path".into());
    let has = |s: Site| labels.contains(&ext.label(s));
    let first = *labels.first().ok_or_else(bad)?;
    let last = *labels.last().ok_or_else(bad)?;
    if !matches!(ext.site(first), Site::Start0 | Site::Start1) || !matches!(ext.site(last), Site::End0 | Site::End1) {
        return Err(bad());
    }
    let mut out = vec![first];
    let mut prev_is_tj = false;
    for j in 1..=n {
        let tj = ext.label(Site::Base(j));
        out.push(tj);
        if j == n {
            out.push(last);
            break;
        }
        let next = if has(Site::Edge(j)) {
            ext.label(Site::Edge(j))
        } else {
            let odd_run = has(Site::Base(j));
            // Run of T_j so far: 2 if the previous odd step was T_j, else 1.
            let extend = if prev_is_tj { odd_run } else { !odd_run };
            if extend { tj } else { ext.label(Site::Base(j + 1)) }
        };
        prev_is_tj = next == ext.label(Site::Base(j + 1));
        out.push(next);
    }
    if reduce_path(&out) != labels {
        return Err(bad());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine;
    use crate::formulas::{enumerate_linear_gcc, linear_gcc_monomial};

    fn all_deltas(max: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        for len in 0..=max {
            for bits in 0..(1u32 << len) {
                out.push((0..len).map(|k| ((bits >> k) & 1) as u8).collect());
            }
        }
        out
    }

    #[test]
    fn heptagon_example() {
        let ext = LinearExtension::new(&[0, 0, 1]).unwrap();
        let paths = tpaths(&ext).unwrap();
        assert!(paths.iter().any(|p| p.labels == [5, 1, 9, 4, 11]));
        let complete = complete_path(&ext, &[5, 1, 9, 4, 11]).unwrap();
        assert_eq!(complete, [5, 1, 2, 2, 3, 3, 9, 4, 11]);
        let d = SnakeDiagram::new(&ext);
        let m = unfold_matching(&d, &complete).unwrap();
        assert_eq!(d.to_gcc(&m).unwrap().c, [(1, 0), (1, 0), (0, 0)]);
    }

    #[test]
    fn tpaths_give_the_cluster_variable() {
        for delta in all_deltas(5) {
            let ext = LinearExtension::new(&delta).unwrap();
            let ps = tpaths(&ext).unwrap();
            for p in &ps {
                assert_eq!(p.len() % 2, 1);
                let mut ls = p.labels.clone();
                ls.sort_unstable();
                ls.dedup();
                assert_eq!(ls.len(), p.len());
            }
            let want = engine::variable_by_flips(&ext.quiver(), &ext.path_indicator()).unwrap();
            assert_eq!(formula_tpath(&ext).unwrap(), want, "{delta:?}");
            assert_eq!(ps.len(), SnakeDiagram::new(&ext).matchings().unwrap().len());
        }
    }

    #[test]
    fn folding_chain_is_bijective() {
        for delta in all_deltas(5).into_iter().filter(|d| !d.is_empty()) {
            let ext = LinearExtension::new(&delta).unwrap();
            let d = SnakeDiagram::new(&ext);
            let mut images = Vec::new();
            for g in enumerate_linear_gcc(&ext).unwrap() {
                let m = d.from_gcc(&g).unwrap();
                let complete = fold_matching(&d, &m);
                walk(&ext, &complete).unwrap();
                let ranks: Vec<usize> = complete.iter().map(|&l| site_rank(ext.site(l))).collect();
                assert!(ranks.windows(2).all(|w| w[0] <= w[1]), "{delta:?}");
                assert_eq!(unfold_matching(&d, &complete).unwrap(), m);
                let reduced = reduce_path(&complete);
                assert_eq!(complete_path(&ext, &reduced).unwrap(), complete);
                assert_eq!(tpath_monomial(&reduced), linear_gcc_monomial(&ext, &g));
                images.push(reduced);
            }
            images.sort();
            let mut all: Vec<Vec<Vertex>> = tpaths(&ext).unwrap().into_iter().map(|p| p.labels).collect();
            all.sort();
            assert_eq!(images, all, "{delta:?}");
        }
    }
}
