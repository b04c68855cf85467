//! Completely extended linear quivers and completion of linear subquivers.
//!
//! A completely extended linear quiver on a path `1 - ... - n` carries an
//! oriented 3-cycle on every path edge and one extra 3-cycle at each end,
//! for `2n + 3` vertices. Local labels are fixed:
//!
//! | site            | label         |
//! |-----------------|---------------|
//! | path vertex `i` | `i`           |
//! | `Start0`        | `n + 1`       |
//! | `Start1`        | `n + 2`       |
//! | `Edge(j)`       | `n + 2 + j`   |
//! | `End0`          | `2n + 2`      |
//! | `End1`          | `2n + 3`      |

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{linear_quiver, LinearSubquiver, Quiver, Vertex};
use crate::error::{Error, Result};

/// A vertex of a completely extended linear quiver.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Site {
    /// Path vertex `i`, 1-based.
    Base(usize),
    /// Head of the arrow leaving the first path vertex in its end 3-cycle.
    Start0,
    /// Tail of the arrow entering the first path vertex in its end 3-cycle.
    Start1,
    /// Third vertex of the 3-cycle on path edge `(j, j + 1)`.
    Edge(usize),
    End0,
    End1,
}

/// A completely extended linear quiver, determined by its orientation
/// sequence.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearExtension {
    delta: Vec<u8>,
}

impl LinearExtension {
    pub fn new(delta: &[u8]) -> Result<Self> {
        if let Some(&d) = delta.iter().find(|&&d| d > 1) {
            return Err(Error::InvalidDelta(format!("entry {d} is not 0 or 1")));
        }
        Ok(LinearExtension { delta: delta.to_vec() })
    }

    /// Number of path vertices.
    pub fn n(&self) -> usize {
        self.delta.len() + 1
    }

    pub fn delta(&self) -> &[u8] {
        &self.delta
    }

    /// `delta_i` for `i` in `1..n`.
    pub fn d(&self, i: usize) -> u8 {
        self.delta[i - 1]
    }

    pub fn total_vertices(&self) -> usize {
        2 * self.n() + 3
    }

    pub fn label(&self, site: Site) -> Vertex {
        let n = self.n();
        (match site {
            Site::Base(i) => i,
            Site::Start0 => n + 1,
            Site::Start1 => n + 2,
            Site::Edge(j) => n + 2 + j,
            Site::End0 => 2 * n + 2,
            Site::End1 => 2 * n + 3,
        }) as Vertex
    }

    pub fn site(&self, v: Vertex) -> Site {
        let n = self.n();
        let v = v as usize;
        match v {
            _ if v <= n => Site::Base(v),
            _ if v == n + 1 => Site::Start0,
            _ if v == n + 2 => Site::Start1,
            _ if v == 2 * n + 2 => Site::End0,
            _ if v == 2 * n + 3 => Site::End1,
            _ => Site::Edge(v - n - 2),
        }
    }

    /// All sites in label order.
    pub fn sites(&self) -> Vec<Site> {
        (1..=self.total_vertices() as Vertex).map(|v| self.site(v)).collect()
    }

    /// The quiver on local labels, all vertices mutable.
    pub fn quiver(&self) -> Quiver {
        let n = self.n();
        let base = linear_quiver(&self.delta).expect("validated orientation");
        let mut q = base.with_extra_vertices(n + 3, false);
        for j in 1..n {
            let (a, b) = (j as Vertex, j as Vertex + 1);
            let w = self.label(Site::Edge(j));
            if self.d(j) == 0 {
                q.add_arrow(b, w);
                q.add_arrow(w, a);
            } else {
                q.add_arrow(a, w);
                q.add_arrow(w, b);
            }
        }
        let (first, last) = (1 as Vertex, n as Vertex);
        let (s0, s1) = (self.label(Site::Start0), self.label(Site::Start1));
        q.add_arrow(first, s0);
        q.add_arrow(s0, s1);
        q.add_arrow(s1, first);
        let (e0, e1) = (self.label(Site::End0), self.label(Site::End1));
        q.add_arrow(last, e0);
        q.add_arrow(e0, e1);
        q.add_arrow(e1, last);
        q
    }

    /// Indicator of the path vertices over all `2n + 3` labels.
    pub fn path_indicator(&self) -> Vec<i64> {
        let mut a = vec![0; self.total_vertices()];
        a[..self.n()].fill(1);
        a
    }
}

/// A linear subquiver completed to a completely extended linear quiver.
#[derive(Clone, Debug)]
pub struct Completion {
    pub extension: LinearExtension,
    /// `to_global[local - 1]` is the label in the ambient numbering: an
    /// existing vertex, or `n_old + k` for the `k`-th invented vertex.
    pub to_global: Vec<Vertex>,
    /// Invented vertices, in ambient labels. They are frozen and later
    /// specialized to `1`.
    pub invented: Vec<Vertex>,
}

impl Completion {
    pub fn global(&self, local: Vertex) -> Vertex {
        self.to_global[local as usize - 1]
    }

    /// Local quiver with the invented vertices frozen.
    pub fn quiver(&self) -> Quiver {
        let q = self.extension.quiver();
        let frozen: Vec<Vertex> = (1..=q.n() as Vertex).filter(|&v| self.invented.contains(&self.global(v))).collect();
        Quiver::from_exchange_matrix(&q.exchange_matrix(), &frozen).expect("valid extension")
    }
}

/// Completes a linear full subquiver of a type-A quiver: restricts to the
/// subquiver and its neighbors, then attaches the missing 3-cycles.
///
/// Invented vertices are numbered `q.n() + 1, ...` in the site order
/// `Start0, Start1, Edge(1), ..., Edge(n - 1), End0, End1`.
pub fn complete_extension(q: &Quiver, path: &LinearSubquiver) -> Result<Completion> {
    let vs = path.vertices();
    let n = vs.len();
    let delta = path.delta(q);
    for w in vs.windows(2) {
        if !q.adjacent(w[0], w[1]) {
            return Err(Error::NotLinear(format!("{} and {} are not adjacent", w[0], w[1])));
        }
    }
    let on_path: BTreeSet<Vertex> = vs.iter().copied().collect();
    let ext = LinearExtension::new(&delta)?;
    let mut slot: Vec<Option<Vertex>> = vec![None; ext.total_vertices()];
    for (i, &v) in vs.iter().enumerate() {
        slot[i] = Some(v);
    }
    for j in 1..n {
        let (a, b) = (vs[j - 1], vs[j]);
        let third = q.vertices().find(|&w| {
            !on_path.contains(&w)
                && ((q.has_arrow(a, b) && q.has_arrow(b, w) && q.has_arrow(w, a))
                    || (q.has_arrow(b, a) && q.has_arrow(a, w) && q.has_arrow(w, b)))
        });
        slot[ext.label(Site::Edge(j)) as usize - 1] = third;
    }
    let used_edges: BTreeSet<Vertex> = (1..n).filter_map(|j| slot[ext.label(Site::Edge(j)) as usize - 1]).collect();
    let blocks_at = |v: Vertex| -> Result<Vec<(Option<Vertex>, Option<Vertex>)>> {
        let free: Vec<Vertex> =
            q.neighbors(v).into_iter().filter(|w| !on_path.contains(w) && !used_edges.contains(w)).collect();
        let mut blocks = Vec::new();
        let mut seen: BTreeSet<Vertex> = BTreeSet::new();
        for &w in &free {
            if seen.contains(&w) {
                continue;
            }
            let partner = free.iter().copied().find(|&u| u != w && q.adjacent(u, w));
            seen.insert(w);
            let mut members = vec![w];
            if let Some(u) = partner {
                seen.insert(u);
                members.push(u);
            }
            let out = members.iter().copied().find(|&m| q.has_arrow(v, m));
            let inn = members.iter().copied().find(|&m| q.has_arrow(m, v));
            if let (Some(o), Some(i)) = (out, inn) {
                if !q.has_arrow(o, i) {
                    return Err(Error::NotTypeA(format!("unoriented cycle at vertex {v}")));
                }
            }
            blocks.push((out, inn));
        }
        Ok(blocks)
    };
    let first = vs[0];
    let last = vs[n - 1];
    let mut start_blocks = blocks_at(first)?;
    let end_blocks = if n == 1 {
        if start_blocks.len() > 2 {
            return Err(Error::NotTypeA(format!("vertex {first} lies on more than two blocks")));
        }
        if start_blocks.len() == 2 {
            vec![start_blocks.pop().unwrap()]
        } else {
            Vec::new()
        }
    } else {
        blocks_at(last)?
    };
    if start_blocks.len() > 1 || end_blocks.len() > 1 {
        return Err(Error::NotTypeA("path end lies on more than two blocks".into()));
    }
    if let Some(&(o, i)) = start_blocks.first() {
        slot[ext.label(Site::Start0) as usize - 1] = o;
        slot[ext.label(Site::Start1) as usize - 1] = i;
    }
    if let Some(&(o, i)) = end_blocks.first() {
        slot[ext.label(Site::End0) as usize - 1] = o;
        slot[ext.label(Site::End1) as usize - 1] = i;
    }
    let order: Vec<Site> = [Site::Start0, Site::Start1]
        .into_iter()
        .chain((1..n).map(Site::Edge))
        .chain([Site::End0, Site::End1])
        .collect();
    let mut next = q.n() as Vertex;
    let mut invented = Vec::new();
    for site in order {
        let k = ext.label(site) as usize - 1;
        if slot[k].is_none() {
            next += 1;
            slot[k] = Some(next);
            invented.push(next);
        }
    }
    let to_global: Vec<Vertex> = slot.into_iter().map(|s| s.expect("every site assigned")).collect();
    let local = ext.quiver();
    for a in 1..=local.n() as Vertex {
        for b in 1..=local.n() as Vertex {
            let (ga, gb) = (to_global[a as usize - 1], to_global[b as usize - 1]);
            if ga as usize <= q.n() && gb as usize <= q.n() && local.b(a, b) != q.b(ga, gb) {
                return Err(Error::NotTypeA(format!(
                    "neighborhood of {:?} is not an extended linear quiver",
                    path.vertices()
                )));
            }
        }
    }
    Ok(Completion { extension: ext, to_global, invented })
}

/// Adds a frozen vertex `k` with arrows `j -> k -> i` for every arrow
/// `i -> j` not on a 3-cycle, so that every edge lies on one.
///
/// Returns the closed quiver and the added vertices.
pub fn close_triangles(q: &Quiver) -> (Quiver, Vec<Vertex>) {
    let cycles = q.three_cycles();
    let lone: Vec<(Vertex, Vertex)> = q
        .arrows()
        .into_iter()
        .filter(|&(i, j)| !cycles.iter().any(|c| c.contains(&i) && c.contains(&j)))
        .collect();
    let mut out = q.with_extra_vertices(lone.len(), true);
    let mut added = Vec::new();
    for (k, &(i, j)) in lone.iter().enumerate() {
        let w = (q.n() + k + 1) as Vertex;
        out.add_arrow(j, w);
        out.add_arrow(w, i);
        added.push(w);
    }
    (out, added)
}
