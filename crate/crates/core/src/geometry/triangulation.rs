use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::quiver::{LinearExtension, Quiver, Site, Vertex};

/// A triangulation of a convex polygon with corners `0..size` in
/// counterclockwise order. Some edges carry labels `1..=m`: the diagonals,
/// and for completely extended linear quivers also the boundary edges.
///
/// Within a triangle `a < b < c` the induced quiver has arrows
/// `(a, b) -> (a, c) -> (b, c) -> (a, b)`: each side points to its
/// counterclockwise rotation about their common corner.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Triangulation {
    size: usize,
    /// `edges[label - 1]`, endpoints ascending.
    edges: Vec<(usize, usize)>,
    /// Start and end corners of the distinguished diagonal, when the
    /// triangulation comes from a linear extension.
    ends: Option<(usize, usize)>,
}

/// Intersection number: `-1` for equal diagonals, `1` for crossing ones,
/// `0` otherwise.
pub fn crossing_number(d: (usize, usize), t: (usize, usize)) -> i64 {
    let (a, b) = (d.0.min(d.1), d.0.max(d.1));
    let (c, e) = (t.0.min(t.1), t.0.max(t.1));
    if (a, b) == (c, e) {
        return -1;
    }
    if a == c || a == e || b == c || b == e {
        return 0;
    }
    let inside = |x: usize| a < x && x < b;
    (inside(c) != inside(e)) as i64
}

#[derive(Clone, Copy)]
enum Side {
    Diag(usize),
    Bound(usize),
}

impl Triangulation {
    /// The triangulation whose diagonals realize a connected type-A quiver,
    /// one diagonal per vertex.
    pub fn from_quiver(q: &Quiver) -> Result<Triangulation> {
        q.require_type_a()?;
        let n = q.n();
        let cycles = q.three_cycles();
        let mut tris: Vec<[Side; 3]> = Vec::new();
        let mut nb = 0usize;
        for c in &cycles {
            tris.push([Side::Diag(c[0] as usize - 1), Side::Diag(c[1] as usize - 1), Side::Diag(c[2] as usize - 1)]);
        }
        for (i, j) in q.arrows() {
            if !cycles.iter().any(|c| c.contains(&i) && c.contains(&j)) {
                tris.push([Side::Diag(i as usize - 1), Side::Diag(j as usize - 1), Side::Bound(nb)]);
                nb += 1;
            }
        }
        let mut count = vec![0usize; n];
        for t in &tris {
            for s in t {
                if let Side::Diag(i) = s {
                    count[*i] += 1;
                }
            }
        }
        for i in 0..n {
            if count[i] > 2 {
                return Err(Error::NotTypeA(format!("vertex {} lies on {} triangles", i + 1, count[i])));
            }
            for _ in count[i]..2 {
                tris.push([Side::Diag(i), Side::Bound(nb), Side::Bound(nb + 1)]);
                nb += 2;
            }
        }
        let slots = 2 * n + 2 * nb;
        let mut parent: Vec<usize> = (0..slots).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let mut first_tri = vec![usize::MAX; n];
        for (k, t) in tris.iter().enumerate() {
            for s in t {
                if let Side::Diag(i) = s {
                    if first_tri[*i] == usize::MAX {
                        first_tri[*i] = k;
                    }
                }
            }
        }
        // Endpoint slots of a side inside triangle `k`: (out, in), where the
        // out-endpoint is shared with the side it points to.
        let ends_of = |s: Side, k: usize| -> (usize, usize) {
            match s {
                Side::Diag(i) if first_tri[i] == k => (2 * i, 2 * i + 1),
                Side::Diag(i) => (2 * i + 1, 2 * i),
                Side::Bound(b) => (2 * n + 2 * b, 2 * n + 2 * b + 1),
            }
        };
        for (k, t) in tris.iter().enumerate() {
            for r in 0..3 {
                let (x, y) = (t[r], t[(r + 1) % 3]);
                let (xo, _) = ends_of(x, k);
                let (_, yi) = ends_of(y, k);
                let (a, b) = (find(&mut parent, xo), find(&mut parent, yi));
                parent[a] = b;
            }
        }
        let size = n + 3;
        let mut next: BTreeMap<usize, usize> = BTreeMap::new();
        for (k, t) in tris.iter().enumerate() {
            for &s in t {
                if let Side::Bound(_) = s {
                    let (o, i) = ends_of(s, k);
                    let (o, i) = (find(&mut parent, o), find(&mut parent, i));
                    if next.insert(o, i).is_some() {
                        return Err(Error::NotTypeA("boundary is not a single cycle".into()));
                    }
                }
            }
        }
        if next.len() != size {
            return Err(Error::NotTypeA("triangles do not glue to a polygon".into()));
        }
        let start = find(&mut parent, 0);
        let mut corner: BTreeMap<usize, usize> = BTreeMap::new();
        let mut cur = start;
        for k in 0..size {
            if corner.insert(cur, k).is_some() {
                return Err(Error::NotTypeA("boundary is not a single cycle".into()));
            }
            cur = *next.get(&cur).ok_or_else(|| Error::NotTypeA("open boundary".into()))?;
        }
        let edges = (0..n)
            .map(|i| {
                let a = corner[&find(&mut parent, 2 * i)];
                let b = corner[&find(&mut parent, 2 * i + 1)];
                (a.min(b), a.max(b))
            })
            .collect();
        let t = Triangulation { size, edges, ends: None };
        let plain = Quiver::from_exchange_matrix(&q.exchange_matrix(), &[]).expect("valid matrix");
        if t.quiver() != plain {
            return Err(Error::NotTypeA("quiver is not realized by a triangulation".into()));
        }
        Ok(t)
    }

    /// Triangulation of a `size`-gon from its diagonals; diagonal `k` gets
    /// label `k + 1`.
    pub fn from_diagonals(size: usize, diagonals: &[(usize, usize)]) -> Result<Triangulation> {
        if size < 3 || diagonals.len() != size - 3 {
            return Err(Error::InvalidQuiver(format!("a {size}-gon needs {} diagonals", size.saturating_sub(3))));
        }
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(diagonals.len());
        for &(a, b) in diagonals {
            let e = (a.min(b), a.max(b));
            let boundary = e.1 == e.0 + 1 || (e.0 == 0 && e.1 == size - 1);
            if e.1 >= size || boundary || edges.iter().any(|&f| f == e || crossing_number(e, f) == 1) {
                return Err(Error::InvalidQuiver(format!("({a}, {b}) is not a free diagonal")));
            }
            edges.push(e);
        }
        Ok(Triangulation { size, edges, ends: None })
    }

    /// Initial triangulation of a completely extended linear quiver, with
    /// every edge labeled by its local vertex label. The first triangle has
    /// corners `0, 1, size - 1`; each later diagonal rotates the previous one
    /// counterclockwise when `delta_i = 0` and clockwise otherwise.
    pub fn initial(ext: &LinearExtension) -> Triangulation {
        let n = ext.n();
        let size = n + 3;
        let mut edges = vec![(0, 0); ext.total_vertices()];
        let mut set = |site: Site, a: usize, b: usize| edges[ext.label(site) as usize - 1] = (a.min(b), a.max(b));
        set(Site::Start0, 0, 1);
        set(Site::Start1, 0, size - 1);
        let (mut p, mut q) = (1, size - 1);
        set(Site::Base(1), p, q);
        for i in 1..n {
            if ext.d(i) == 0 {
                set(Site::Edge(i), p, p + 1);
                p += 1;
            } else {
                set(Site::Edge(i), q - 1, q);
                q -= 1;
            }
            set(Site::Base(i + 1), p, q);
        }
        set(Site::End0, p + 1, q);
        set(Site::End1, p, p + 1);
        Triangulation { size, edges, ends: Some((0, p + 1)) }
    }

    /// Number of polygon corners.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Endpoints of a labeled edge.
    pub fn edge(&self, label: Vertex) -> (usize, usize) {
        self.edges[label as usize - 1]
    }

    pub fn labels(&self) -> impl Iterator<Item = Vertex> {
        1..=self.edges.len() as Vertex
    }

    pub fn label_of(&self, e: (usize, usize)) -> Option<Vertex> {
        let e = (e.0.min(e.1), e.0.max(e.1));
        self.edges.iter().position(|&f| f == e).map(|p| p as Vertex + 1)
    }

    pub fn is_boundary(&self, e: (usize, usize)) -> bool {
        let (a, b) = (e.0.min(e.1), e.0.max(e.1));
        b == a + 1 || (a == 0 && b == self.size - 1)
    }

    /// Start and end corners for a linear extension's triangulation.
    pub fn ends(&self) -> Option<(usize, usize)> {
        self.ends
    }

    fn all_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self.edges.clone();
        for k in 0..self.size {
            let e = (k.min((k + 1) % self.size), k.max((k + 1) % self.size));
            if !out.contains(&e) {
                out.push(e);
            }
        }
        out
    }

    /// Triangles as ascending corner triples.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let all = self.all_edges();
        let has = |a: usize, b: usize| all.contains(&(a.min(b), a.max(b)));
        let mut out = Vec::new();
        for a in 0..self.size {
            for b in a + 1..self.size {
                if !has(a, b) {
                    continue;
                }
                for c in b + 1..self.size {
                    if has(b, c) && has(a, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// Quiver induced on the labeled edges.
    pub fn quiver(&self) -> Quiver {
        let m = self.edges.len();
        let mut b = vec![vec![0i32; m]; m];
        for [a, bb, c] in self.triangles() {
            let sides = [self.label_of((a, bb)), self.label_of((a, c)), self.label_of((bb, c))];
            for r in 0..3 {
                if let (Some(x), Some(y)) = (sides[r], sides[(r + 1) % 3]) {
                    b[x as usize - 1][y as usize - 1] += 1;
                    b[y as usize - 1][x as usize - 1] -= 1;
                }
            }
        }
        Quiver::from_exchange_matrix(&b, &[]).expect("skew-symmetric by construction")
    }

    /// Flips the labeled diagonal `label` inside its quadrilateral and
    /// returns the new endpoints.
    pub fn flip(&mut self, label: Vertex) -> Result<(usize, usize)> {
        let (a, b) = self.edge(label);
        if self.is_boundary((a, b)) {
            return Err(Error::InvalidVertex(label));
        }
        let apex: Vec<usize> = self
            .triangles()
            .into_iter()
            .filter(|t| t.contains(&a) && t.contains(&b))
            .map(|t| t.into_iter().find(|&c| c != a && c != b).expect("three corners"))
            .collect();
        if apex.len() != 2 {
            return Err(Error::InvalidVertex(label));
        }
        let e = (apex[0].min(apex[1]), apex[0].max(apex[1]));
        self.edges[label as usize - 1] = e;
        Ok(e)
    }

    /// d-vector of a multiset of diagonals over the labeled edges:
    /// `a_i = sum_j mult_j * crossing_number(D_j, T_i)`.
    pub fn d_vector(&self, diagonals: &[((usize, usize), i64)]) -> Vec<i64> {
        self.edges
            .iter()
            .map(|&t| diagonals.iter().map(|&(d, m)| m * crossing_number(d, t)).sum())
            .collect()
    }
}
