use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::triangulation::Triangulation;
use super::{check_in_w, sigma};
use crate::error::{Error, Result};
use crate::quiver::{Quiver, Vertex};

/// A chain of pipes between two polygon corners.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pipeline {
    /// Corners joined by the pipeline, ascending.
    pub ends: (usize, usize),
    /// Labels of the crossed diagonals, in order along the pipeline.
    pub crossed: Vec<Vertex>,
}

impl Pipeline {
    /// Indicator vector over `n` labels.
    pub fn indicator(&self, n: usize) -> Vec<i64> {
        let mut b = vec![0; n];
        for &c in &self.crossed {
            b[c as usize - 1] += 1;
        }
        b
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Link {
    Point(usize),
    Corner(usize),
}

/// Builds the pipelines for `a` (indexed by edge label, nonnegative, zero
/// on boundary edges): `a_i` marked points on each diagonal; inside each
/// triangle the `r`-th points from a shared corner are joined for
/// `r <= sigma`, and leftover points run to the opposite corner.
pub fn pipelines(t: &Triangulation, a: &[i64]) -> Result<Vec<Pipeline>> {
    let m = t.labels().count();
    if a.len() != m || a.iter().any(|&x| x < 0) {
        return Err(Error::NotInW("pipelines need a nonnegative vector over the edge labels".into()));
    }
    for l in t.labels() {
        if t.is_boundary(t.edge(l)) && a[l as usize - 1] != 0 {
            return Err(Error::NotInW(format!("boundary edge {l} has a nonzero entry")));
        }
    }
    let mut offset = vec![0usize; m + 1];
    for i in 0..m {
        offset[i + 1] = offset[i] + a[i] as usize;
    }
    let total = offset[m];
    let mut links: Vec<Vec<Link>> = vec![Vec::new(); total];
    // Node id of the r-th point (1-based) from corner `from` on side `e`.
    let node = |e: (usize, usize), label: Vertex, from: usize, r: usize| -> usize {
        let len = a[label as usize - 1] as usize;
        let idx = if from == e.0 { r } else { len + 1 - r };
        offset[label as usize - 1] + idx - 1
    };
    for tri in t.triangles() {
        let sides: Vec<((usize, usize), Option<Vertex>)> = [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])]
            .iter()
            .map(|&e| (e, t.label_of(e)))
            .collect();
        let len = |k: usize| sides[k].1.map_or(0, |l| a[l as usize - 1]);
        // Pipes at each corner c between the two sides through c.
        let mut used = [[0usize; 2]; 3];
        for &c in tri.iter() {
            let through: Vec<usize> = (0..3).filter(|&k| sides[k].0 .0 == c || sides[k].0 .1 == c).collect();
            let opposite = (0..3).find(|k| !through.contains(k)).unwrap();
            let (x, y) = (through[0], through[1]);
            let s = sigma(len(x), len(y), len(opposite))
                .ok_or_else(|| Error::NotInW(format!("half-integral pipe count at triangle {tri:?}")))?;
            for r in 1..=s as usize {
                let (lx, ly) = (sides[x].1.unwrap(), sides[y].1.unwrap());
                let (u, v) = (node(sides[x].0, lx, c, r), node(sides[y].0, ly, c, r));
                links[u].push(Link::Point(v));
                links[v].push(Link::Point(u));
            }
            for &k in &[x, y] {
                let end = if sides[k].0 .0 == c { 0 } else { 1 };
                used[k][end] = s as usize;
            }
        }
        for k in 0..3 {
            let Some(l) = sides[k].1 else { continue };
            let e = sides[k].0;
            let len_k = a[l as usize - 1] as usize;
            let (from_lo, from_hi) = (used[k][0], used[k][1]);
            if from_lo + from_hi > len_k {
                return Err(Error::NotInW(format!("pipes overflow side {l}")));
            }
            let corner = tri.iter().copied().find(|&c| c != e.0 && c != e.1).unwrap();
            for idx in from_lo + 1..=len_k - from_hi {
                links[offset[l as usize - 1] + idx - 1].push(Link::Corner(corner));
            }
        }
    }
    let mut seen = vec![false; total];
    let label_of_node = |id: usize| -> Vertex { (offset.partition_point(|&o| o <= id)) as Vertex };
    let mut out = Vec::new();
    for startnode in 0..total {
        if seen[startnode] {
            continue;
        }
        let Some(Link::Corner(c0)) = links[startnode].iter().copied().find(|l| matches!(l, Link::Corner(_))) else {
            continue;
        };
        let mut crossed = Vec::new();
        let mut prev = Link::Corner(c0);
        let mut cur = startnode;
        let end = loop {
            seen[cur] = true;
            crossed.push(label_of_node(cur));
            let mut nexts = links[cur].iter().copied();
            let (l1, l2) = (nexts.next(), nexts.next());
            let nxt = if Some(prev) == l1 && l1 != l2 { l2 } else { l1 };
            match nxt {
                Some(Link::Corner(c)) => break c,
                Some(Link::Point(p)) => {
                    prev = Link::Point(cur);
                    cur = p;
                }
                None => return Err(Error::NotInW("dangling pipe".into())),
            }
        };
        out.push(Pipeline { ends: (c0.min(end), c0.max(end)), crossed });
    }
    if seen.iter().any(|s| !s) || links.iter().any(|l| l.len() != 2) {
        return Err(Error::NotInW("pipes do not form simple chains".into()));
    }
    Ok(out)
}

/// Decomposition of a realizable d-vector into compatible cluster-variable
/// d-vectors: one 0-1 vector per pipeline of `[a]_+`, plus the negative part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    /// 0-1 vectors, sorted, with repetition.
    pub parts: Vec<Vec<i64>>,
    /// `[-a]_+`: exponents of initial variables.
    pub negative: Vec<i64>,
    pub pipelines: Vec<Pipeline>,
}

impl Decomposition {
    /// Sum of the parts minus the negative part.
    pub fn total(&self) -> Vec<i64> {
        let mut s: Vec<i64> = self.negative.iter().map(|&x| -x).collect();
        for p in &self.parts {
            for (x, y) in s.iter_mut().zip(p) {
                *x += y;
            }
        }
        s
    }

    /// Distinct parts with multiplicities.
    pub fn grouped(&self) -> Vec<(Vec<i64>, usize)> {
        let mut out: Vec<(Vec<i64>, usize)> = Vec::new();
        for p in &self.parts {
            match out.last_mut() {
                Some((q, k)) if q == p => *k += 1,
                _ => out.push((p.clone(), 1)),
            }
        }
        out
    }
}

/// Decomposes `a` over a connected type-A quiver into cluster-variable
/// d-vectors.
pub fn decompose(q: &Quiver, a: &[i64]) -> Result<Decomposition> {
    check_in_w(q, a)?;
    let t = Triangulation::from_quiver(q)?;
    let pos: Vec<i64> = a.iter().map(|&x| x.max(0)).collect();
    let pipes = pipelines(&t, &pos)?;
    let mut parts: Vec<Vec<i64>> = pipes.iter().map(|p| p.indicator(q.n())).collect();
    if parts.iter().any(|p| p.iter().any(|&x| x > 1)) {
        return Err(Error::NotInW("a pipeline crosses a diagonal twice".into()));
    }
    parts.sort();
    let negative = a.iter().map(|&x| (-x).max(0)).collect();
    Ok(Decomposition { parts, negative, pipelines: pipes })
}
