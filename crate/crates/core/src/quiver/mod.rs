//! Quivers without loops or 2-cycles, their mutation, and the type-A
//! recognition and linear-subquiver machinery built on top.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

mod extension;

pub use extension::{close_triangles, complete_extension, Completion, LinearExtension, Site};

/// Vertex label, 1-based.
pub type Vertex = u32;

/// A quiver stored through its skew-symmetric exchange matrix
/// `b[i][j] = #(i -> j) - #(j -> i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Quiver {
    n: usize,
    b: Vec<i32>,
    frozen: BTreeSet<Vertex>,
}

impl Quiver {
    /// Builds a quiver on vertices `1..=n`. Repeated arrows add up; a pair of
    /// opposite arrows is rejected.
    pub fn new(n: usize, arrows: &[(Vertex, Vertex)], frozen: &[Vertex]) -> Result<Quiver> {
        let mut q = Quiver { n, b: vec![0; n * n], frozen: BTreeSet::new() };
        let mut seen: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
        for &(i, j) in arrows {
            q.check(i)?;
            q.check(j)?;
            if i == j {
                return Err(Error::InvalidQuiver(format!("loop at vertex {i}")));
            }
            if seen.contains(&(j, i)) {
                return Err(Error::InvalidQuiver(format!("2-cycle between {i} and {j}")));
            }
            seen.insert((i, j));
            let (a, c) = (q.idx(i, j), q.idx(j, i));
            q.b[a] += 1;
            q.b[c] -= 1;
        }
        for &f in frozen {
            q.check(f)?;
            q.frozen.insert(f);
        }
        Ok(q)
    }

    /// Builds a quiver from a skew-symmetric matrix given row by row.
    pub fn from_exchange_matrix(b: &[Vec<i32>], frozen: &[Vertex]) -> Result<Quiver> {
        let n = b.len();
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in b.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidQuiver("exchange matrix is not square".into()));
            }
            for (j, &x) in row.iter().enumerate() {
                if b[j][i] != -x || (i == j && x != 0) {
                    return Err(Error::InvalidQuiver("exchange matrix is not skew-symmetric".into()));
                }
                flat.push(x);
            }
        }
        let mut q = Quiver { n, b: flat, frozen: BTreeSet::new() };
        for &f in frozen {
            q.check(f)?;
            q.frozen.insert(f);
        }
        Ok(q)
    }

    fn idx(&self, i: Vertex, j: Vertex) -> usize {
        (i as usize - 1) * self.n + (j as usize - 1)
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if v == 0 || v as usize > self.n {
            Err(Error::InvalidVertex(v))
        } else {
            Ok(())
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n as Vertex
    }

    pub fn frozen(&self) -> &BTreeSet<Vertex> {
        &self.frozen
    }

    pub fn is_frozen(&self, v: Vertex) -> bool {
        self.frozen.contains(&v)
    }

    pub fn mutable_vertices(&self) -> Vec<Vertex> {
        self.vertices().filter(|v| !self.is_frozen(*v)).collect()
    }

    /// Exchange-matrix entry `b_ij`.
    pub fn b(&self, i: Vertex, j: Vertex) -> i32 {
        self.b[self.idx(i, j)]
    }

    pub fn exchange_matrix(&self) -> Vec<Vec<i32>> {
        (0..self.n).map(|i| self.b[i * self.n..(i + 1) * self.n].to_vec()).collect()
    }

    /// Arrows with multiplicity, sorted.
    pub fn arrows(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for i in self.vertices() {
            for j in self.vertices() {
                for _ in 0..self.b(i, j).max(0) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn has_arrow(&self, i: Vertex, j: Vertex) -> bool {
        self.b(i, j) > 0
    }

    pub fn adjacent(&self, i: Vertex, j: Vertex) -> bool {
        self.b(i, j) != 0
    }

    /// Heads of arrows leaving `v`, each listed once.
    pub fn out_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.vertices().filter(|&j| self.b(v, j) > 0).collect()
    }

    /// Tails of arrows entering `v`, each listed once.
    pub fn in_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.vertices().filter(|&j| self.b(j, v) > 0).collect()
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.vertices().filter(|&j| self.b(v, j) != 0).collect()
    }

    /// Number of arrows incident to `v`, with multiplicity.
    pub fn degree(&self, v: Vertex) -> usize {
        self.vertices().map(|j| self.b(v, j).unsigned_abs() as usize).sum()
    }

    /// Mutation at a mutable vertex.
    pub fn mutate(&self, k: Vertex) -> Result<Quiver> {
        self.check(k)?;
        if self.is_frozen(k) {
            return Err(Error::FrozenVertex(k));
        }
        let mut out = self.clone();
        for i in self.vertices() {
            for j in self.vertices() {
                let v = if i == k || j == k {
                    -self.b(i, j)
                } else {
                    let (bik, bkj) = (self.b(i, k), self.b(k, j));
                    self.b(i, j) + (bik.max(0) * bkj.max(0)) - ((-bik).max(0) * (-bkj).max(0))
                };
                let at = out.idx(i, j);
                out.b[at] = v;
            }
        }
        Ok(out)
    }

    /// Oriented 3-cycles `i -> j -> k -> i`, each listed once starting at its
    /// smallest vertex.
    pub fn three_cycles(&self) -> Vec<[Vertex; 3]> {
        let mut out = Vec::new();
        for i in self.vertices() {
            for j in self.out_neighbors(i) {
                if j < i {
                    continue;
                }
                for k in self.out_neighbors(j) {
                    if k > i && self.has_arrow(k, i) {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n + 1];
        let mut queue = VecDeque::from([1 as Vertex]);
        seen[1] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// Type-A test: connected, simple, every cycle of the underlying graph
    /// is an oriented 3-cycle, degrees at most 4, a degree-4 vertex lies on
    /// two 3-cycles and a degree-3 vertex on one.
    pub fn is_type_a(&self) -> bool {
        self.type_a_violation().is_none()
    }

    /// Reason the quiver fails the type-A test, if it does.
    pub fn type_a_violation(&self) -> Option<alloc::string::String> {
        if self.n == 0 {
            return Some("empty quiver".into());
        }
        if !self.is_connected() {
            return Some("not connected".into());
        }
        let mut edges = 0usize;
        for i in self.vertices() {
            for j in self.vertices() {
                if i < j && self.adjacent(i, j) {
                    if self.b(i, j).abs() > 1 {
                        return Some(format!("multiple arrows between {i} and {j}"));
                    }
                    edges += 1;
                }
            }
        }
        let mut triangles: Vec<[Vertex; 3]> = Vec::new();
        for i in self.vertices() {
            for j in (i + 1)..=self.n as Vertex {
                if !self.adjacent(i, j) {
                    continue;
                }
                for k in (j + 1)..=self.n as Vertex {
                    if self.adjacent(j, k) && self.adjacent(i, k) {
                        let oriented = (self.has_arrow(i, j) && self.has_arrow(j, k) && self.has_arrow(k, i))
                            || (self.has_arrow(j, i) && self.has_arrow(k, j) && self.has_arrow(i, k));
                        if !oriented {
                            return Some(format!("unoriented triangle {i} {j} {k}"));
                        }
                        triangles.push([i, j, k]);
                    }
                }
            }
        }
        let mut used: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
        for t in &triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                if !used.insert((a, b)) {
                    return Some(format!("triangles share the edge {a} {b}"));
                }
            }
        }
        if triangles.len() + self.n != edges + 1 {
            return Some("underlying graph has a cycle that is not a triangle".into());
        }
        for v in self.vertices() {
            let on = triangles.iter().filter(|t| t.contains(&v)).count();
            match self.degree(v) {
                0..=2 => {}
                3 if on == 1 => {}
                4 if on == 2 => {}
                d => return Some(format!("vertex {v} has degree {d} on {on} triangles")),
            }
        }
        None
    }

    pub fn require_type_a(&self) -> Result<()> {
        match self.type_a_violation() {
            None => Ok(()),
            Some(m) => Err(Error::NotTypeA(m)),
        }
    }

    /// Full subquiver on `vertices`, relabeled `1..` in the given order.
    pub fn full_subquiver(&self, vertices: &[Vertex]) -> Result<Quiver> {
        let m = vertices.len();
        let mut b = vec![vec![0; m]; m];
        for (a, &i) in vertices.iter().enumerate() {
            self.check(i)?;
            for (c, &j) in vertices.iter().enumerate() {
                b[a][c] = self.b(i, j);
            }
        }
        let frozen: Vec<Vertex> = vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| self.is_frozen(**v))
            .map(|(a, _)| a as Vertex + 1)
            .collect();
        Quiver::from_exchange_matrix(&b, &frozen)
    }

    /// Same quiver with extra isolated vertices, optionally frozen.
    pub fn with_extra_vertices(&self, extra: usize, frozen: bool) -> Quiver {
        let n = self.n + extra;
        let mut b = vec![vec![0; n]; n];
        for i in 0..self.n {
            for j in 0..self.n {
                b[i][j] = self.b[i * self.n + j];
            }
        }
        let mut fr: Vec<Vertex> = self.frozen.iter().copied().collect();
        if frozen {
            fr.extend((self.n + 1..=n).map(|v| v as Vertex));
        }
        Quiver::from_exchange_matrix(&b, &fr).expect("extension of a valid quiver")
    }

    /// Adds an arrow `i -> j`, cancelling against an opposite arrow.
    pub fn add_arrow(&mut self, i: Vertex, j: Vertex) {
        let (a, c) = (self.idx(i, j), self.idx(j, i));
        self.b[a] += 1;
        self.b[c] -= 1;
    }

    /// Principal-coefficient framing: frozen vertex `n + i` with an arrow
    /// `n + i -> i` for each vertex `i`.
    pub fn with_principal_coefficients(&self) -> Quiver {
        let n = self.n;
        let mut q = self.with_extra_vertices(n, true);
        for i in 1..=n as Vertex {
            q.add_arrow(i + n as Vertex, i);
        }
        q
    }

    /// All linear full subquivers: vertex sets inducing a path in the
    /// underlying graph. Sorted by size, then by vertex sequence.
    pub fn linear_subquivers(&self) -> Vec<LinearSubquiver> {
        let mut out: BTreeSet<(usize, Vec<Vertex>)> = BTreeSet::new();
        for v in self.vertices() {
            let mut path = vec![v];
            self.grow_paths(&mut path, &mut out);
        }
        out.into_iter().map(|(_, vertices)| LinearSubquiver { vertices }).collect()
    }

    fn grow_paths(&self, path: &mut Vec<Vertex>, out: &mut BTreeSet<(usize, Vec<Vertex>)>) {
        if path.len() == 1 || path[0] < *path.last().unwrap() {
            out.insert((path.len(), path.clone()));
        }
        let last = *path.last().unwrap();
        for w in self.neighbors(last) {
            if path.contains(&w) {
                continue;
            }
            let chord = path[..path.len() - 1].iter().any(|&u| self.adjacent(u, w));
            if chord {
                continue;
            }
            path.push(w);
            self.grow_paths(path, out);
            path.pop();
        }
    }

    /// Interprets a vertex set as a linear full subquiver, ordering it along
    /// the path starting from the end with the smaller label.
    pub fn linear_subquiver(&self, vertices: &[Vertex]) -> Result<LinearSubquiver> {
        let set: BTreeSet<Vertex> = vertices.iter().copied().collect();
        if set.is_empty() || set.len() != vertices.len() {
            return Err(Error::NotLinear("empty or repeated vertices".into()));
        }
        for &v in &set {
            self.check(v)?;
        }
        let inner_deg = |v: Vertex| set.iter().filter(|&&w| self.adjacent(v, w)).count();
        let ends: Vec<Vertex> = set.iter().copied().filter(|&v| inner_deg(v) <= 1).collect();
        if set.len() == 1 {
            return Ok(LinearSubquiver { vertices: vec![vertices[0]] });
        }
        if ends.len() != 2 || set.iter().any(|&v| inner_deg(v) > 2) {
            return Err(Error::NotLinear(format!("{vertices:?} does not induce a path")));
        }
        let mut order = vec![ends[0]];
        while order.len() < set.len() {
            let last = *order.last().unwrap();
            let next = set
                .iter()
                .copied()
                .find(|&w| self.adjacent(last, w) && !order.contains(&w))
                .ok_or_else(|| Error::NotLinear(format!("{vertices:?} is not connected")))?;
            order.push(next);
        }
        Ok(LinearSubquiver { vertices: order })
    }

    /// Shortest directed distances from `from`; `None` for unreachable.
    pub fn directed_distances(&self, from: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n + 1];
        dist[from as usize] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize].unwrap();
            for w in self.out_neighbors(v) {
                if dist[w as usize].is_none() {
                    dist[w as usize] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Whether each edge of the underlying graph lies on an oriented 3-cycle.
    pub fn every_edge_on_three_cycle(&self) -> bool {
        let cycles = self.three_cycles();
        self.arrows().iter().all(|&(i, j)| cycles.iter().any(|c| c.contains(&i) && c.contains(&j)))
    }

    /// Relabels vertices through a permutation given as `perm[v - 1]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Quiver> {
        if perm.len() != self.n {
            return Err(Error::InvalidQuiver("permutation length mismatch".into()));
        }
        let mut b = vec![vec![0; self.n]; self.n];
        for i in self.vertices() {
            for j in self.vertices() {
                b[perm[i as usize - 1] as usize - 1][perm[j as usize - 1] as usize - 1] = self.b(i, j);
            }
        }
        let frozen: Vec<Vertex> = self.frozen.iter().map(|&f| perm[f as usize - 1]).collect();
        Quiver::from_exchange_matrix(&b, &frozen)
    }
}

/// A linear full subquiver, stored along its path.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LinearSubquiver {
    vertices: Vec<Vertex>,
}

impl LinearSubquiver {
    /// Vertices in path order.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    /// Path position (1-based) of a vertex.
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v).map(|p| p + 1)
    }

    /// Orientation sequence: `0` when the arrow runs forward along the path.
    pub fn delta(&self, q: &Quiver) -> Vec<u8> {
        self.vertices.windows(2).map(|w| if q.has_arrow(w[0], w[1]) { 0 } else { 1 }).collect()
    }

    /// Indicator d-vector over the vertices of `q`.
    pub fn indicator(&self, q: &Quiver) -> Vec<i64> {
        let mut a = vec![0; q.n()];
        for &v in &self.vertices {
            a[v as usize - 1] = 1;
        }
        a
    }

    /// Sorted vertex set.
    pub fn vertex_set(&self) -> Vec<Vertex> {
        let mut v = self.vertices.clone();
        v.sort_unstable();
        v
    }
}

/// Quiver of a path `1 - 2 - ... - n` with orientation sequence `delta`.
pub fn linear_quiver(delta: &[u8]) -> Result<Quiver> {
    let n = delta.len() + 1;
    let mut arrows = Vec::new();
    for (i, &d) in delta.iter().enumerate() {
        let (a, b) = (i as Vertex + 1, i as Vertex + 2);
        match d {
            0 => arrows.push((a, b)),
            1 => arrows.push((b, a)),
            _ => return Err(Error::InvalidDelta(format!("entry {d} is not 0 or 1"))),
        }
    }
    Quiver::new(n, &arrows, &[])
}

/// Dynkin type A_n: linearly oriented path.
pub fn a_n(n: usize) -> Quiver {
    linear_quiver(&vec![0; n.saturating_sub(1)]).expect("valid orientation")
}
