//! Snake diagrams of completely extended linear quivers and their perfect
//! matchings.
//!
//! Tiles are unit squares on the integer grid. Tile 1 sits at the origin,
//! tile 2 to its right, and tile `i + 1` continues in the direction of the
//! previous step exactly when `delta_{i-1} != delta_i`, turning otherwise.
//! Each tile's anti-diagonal splits it into a lower-left and an upper-right
//! triangle; the parallelogram `Pl(i)` is the upper-right half of tile `i`
//! glued to the lower-left half of tile `i + 1`, and `Pl(0)`, `Pl(n)` are
//! the remaining halves of the end tiles.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::formulas::LinearGcc;
use crate::laurent::{LaurentPoly, Monomial};
use crate::quiver::{LinearExtension, Site, Vertex};

pub type Point = (i64, i64);

/// Label of a snake edge.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SnakeLabel {
    /// `T_j^(i)` inside `Pl(i)`, weighted by the path vertex `j`.
    Diagonal(usize),
    /// Edge shared by tiles `i` and `i + 1`.
    Shared(usize),
    Start0,
    Start1,
    End0,
    End1,
}

impl SnakeLabel {
    /// Site of the extension whose variable weights this edge; also the
    /// image of the edge in the initial triangulation.
    pub fn site(self) -> Site {
        match self {
            SnakeLabel::Diagonal(j) => Site::Base(j),
            SnakeLabel::Shared(i) => Site::Edge(i),
            SnakeLabel::Start0 => Site::Start0,
            SnakeLabel::Start1 => Site::Start1,
            SnakeLabel::End0 => Site::End0,
            SnakeLabel::End1 => Site::End1,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SnakeEdge {
    pub ends: (Point, Point),
    /// Index `i` of the parallelogram `Pl(i)` containing the edge.
    pub pl: usize,
    pub label: SnakeLabel,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SnakeDiagram {
    ext: LinearExtension,
    /// Lower-left corners of tiles `1..=n`.
    tiles: Vec<Point>,
    edges: Vec<SnakeEdge>,
}

/// A perfect matching as one edge index per parallelogram.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PerfectMatching {
    pub edges: Vec<usize>,
}

fn seg(a: Point, b: Point) -> (Point, Point) {
    (a.min(b), a.max(b))
}

fn bottom(t: Point) -> (Point, Point) {
    seg(t, (t.0 + 1, t.1))
}
fn left(t: Point) -> (Point, Point) {
    seg(t, (t.0, t.1 + 1))
}
fn top(t: Point) -> (Point, Point) {
    seg((t.0, t.1 + 1), (t.0 + 1, t.1 + 1))
}
fn right(t: Point) -> (Point, Point) {
    seg((t.0 + 1, t.1), (t.0 + 1, t.1 + 1))
}

impl SnakeDiagram {
    pub fn new(ext: &LinearExtension) -> SnakeDiagram {
        let n = ext.n();
        let mut tiles = vec![(0i64, 0i64)];
        // `true` when tile `i + 1` lies to the right of tile `i`.
        let mut rightward: Vec<bool> = Vec::with_capacity(n.saturating_sub(1));
        for i in 1..n {
            let dir = if i == 1 { true } else if ext.d(i - 1) != ext.d(i) { rightward[i - 2] } else { !rightward[i - 2] };
            rightward.push(dir);
            let (x, y) = tiles[i - 1];
            tiles.push(if dir { (x + 1, y) } else { (x, y + 1) });
        }
        let mut edges = Vec::new();
        let mut push = |ends, pl, label| edges.push(SnakeEdge { ends, pl, label });
        let t1 = tiles[0];
        if n == 1 {
            push(bottom(t1), 0, SnakeLabel::Start0);
            push(left(t1), 0, SnakeLabel::Start1);
            push(top(t1), 1, SnakeLabel::End0);
            push(right(t1), 1, SnakeLabel::End1);
        } else {
            let d1 = ext.d(1);
            let (b, l) = if d1 == 0 { (SnakeLabel::Start0, SnakeLabel::Start1) } else { (SnakeLabel::Start1, SnakeLabel::Start0) };
            push(bottom(t1), 0, b);
            push(left(t1), 0, l);
            for i in 1..n {
                let (a, c) = (tiles[i - 1], tiles[i]);
                if rightward[i - 1] {
                    push(top(a), i, SnakeLabel::Diagonal(i + 1));
                    push(right(a), i, SnakeLabel::Shared(i));
                    push(bottom(c), i, SnakeLabel::Diagonal(i));
                } else {
                    push(right(a), i, SnakeLabel::Diagonal(i + 1));
                    push(top(a), i, SnakeLabel::Shared(i));
                    push(left(c), i, SnakeLabel::Diagonal(i));
                }
            }
            let tn = tiles[n - 1];
            let dl = ext.d(n - 1);
            let (e_d, e_nd) = if dl == 0 { (SnakeLabel::End0, SnakeLabel::End1) } else { (SnakeLabel::End1, SnakeLabel::End0) };
            if rightward[n - 2] {
                push(right(tn), n, e_d);
                push(top(tn), n, e_nd);
            } else {
                push(right(tn), n, e_nd);
                push(top(tn), n, e_d);
            }
        }
        SnakeDiagram { ext: ext.clone(), tiles, edges }
    }

    pub fn extension(&self) -> &LinearExtension {
        &self.ext
    }

    pub fn tiles(&self) -> &[Point] {
        &self.tiles
    }

    pub fn edges(&self) -> &[SnakeEdge] {
        &self.edges
    }

    pub fn n(&self) -> usize {
        self.ext.n()
    }

    /// Whether tile `i + 1` lies to the right of tile `i`.
    pub fn rightward(&self, i: usize) -> bool {
        self.tiles[i].0 > self.tiles[i - 1].0
    }

    pub fn vertices(&self) -> BTreeSet<Point> {
        self.edges.iter().flat_map(|e| [e.ends.0, e.ends.1]).collect()
    }

    /// Edges of `Pl(i)`.
    pub fn parallelogram(&self, i: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].pl == i).collect()
    }

    /// All perfect matchings, found by matching the smallest uncovered
    /// vertex in every possible way, each sorted by parallelogram.
    pub fn matchings(&self) -> Result<Vec<PerfectMatching>> {
        let verts: Vec<Point> = self.vertices().into_iter().collect();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        let mut covered = BTreeSet::new();
        self.match_from(&verts, &mut covered, &mut chosen, &mut out);
        let mut result = Vec::with_capacity(out.len());
        for m in out {
            result.push(self.by_parallelogram(&m)?);
        }
        result.sort();
        Ok(result)
    }

    fn match_from(&self, verts: &[Point], covered: &mut BTreeSet<Point>, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(&v) = verts.iter().find(|v| !covered.contains(*v)) else {
            out.push(chosen.clone());
            return;
        };
        for (k, e) in self.edges.iter().enumerate() {
            let (a, b) = e.ends;
            let other = if a == v { b } else if b == v { a } else { continue };
            if covered.contains(&other) {
                continue;
            }
            covered.insert(v);
            covered.insert(other);
            chosen.push(k);
            self.match_from(verts, covered, chosen, out);
            chosen.pop();
            covered.remove(&v);
            covered.remove(&other);
        }
    }

    /// Arranges a matching as `(gamma_0, ..., gamma_n)`, failing unless each
    /// parallelogram holds exactly one of its edges.
    pub fn by_parallelogram(&self, edges: &[usize]) -> Result<PerfectMatching> {
        let mut slots = vec![None; self.n() + 1];
        for &e in edges {
            let pl = self.edges[e].pl;
            if slots[pl].replace(e).is_some() {
                return Err(Error::AssumptionViolated(format!("two matching edges in parallelogram {pl}")));
            }
        }
        let edges = slots
            .into_iter()
            .enumerate()
            .map(|(i, e)| e.ok_or_else(|| Error::AssumptionViolated(format!("no matching edge in parallelogram {i}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(PerfectMatching { edges })
    }

    /// Whether the edges cover every vertex exactly once.
    pub fn is_perfect(&self, m: &PerfectMatching) -> bool {
        let mut seen = BTreeSet::new();
        for &e in &m.edges {
            let (a, b) = self.edges[e].ends;
            if !seen.insert(a) || !seen.insert(b) {
                return false;
            }
        }
        seen.len() == self.vertices().len()
    }

    pub fn label(&self, e: usize) -> SnakeLabel {
        self.edges[e].label
    }

    /// `w(gamma)`: product of edge weights, in local labels.
    pub fn weight(&self, m: &PerfectMatching) -> Monomial {
        let mut w = Monomial::one();
        for &e in &m.edges {
            w = w.mul(&Monomial::var(self.ext.label(self.edges[e].label.site())));
        }
        w
    }

    /// `w(gamma) / prod_{i <= n} x_i`.
    pub fn term(&self, m: &PerfectMatching) -> Monomial {
        let denom = Monomial::from_pairs((1..=self.n() as Vertex).map(|v| (v, -1)));
        self.weight(m).mul(&denom)
    }

    /// Cluster variable of the path indicator as a sum over matchings.
    pub fn formula(&self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for m in self.matchings()? {
            out.add_term(self.term(&m), 1.into());
        }
        Ok(out)
    }

    fn find(&self, pl: usize, label: SnakeLabel) -> usize {
        self.edges.iter().position(|e| e.pl == pl && e.label == label).expect("label present in parallelogram")
    }

    /// Sends a matching to its linear compatible collection.
    pub fn to_gcc(&self, m: &PerfectMatching) -> Result<LinearGcc> {
        let n = self.n();
        if n < 2 {
            return Err(Error::AssumptionViolated("the linear model needs at least two path vertices".into()));
        }
        let c = (1..n)
            .map(|i| {
                let d = self.ext.d(i);
                match self.edges[m.edges[i]].label {
                    SnakeLabel::Diagonal(j) if j == i => (d, 1 - d),
                    SnakeLabel::Diagonal(_) => (1 - d, d),
                    _ => (0, 0),
                }
            })
            .collect();
        Ok(LinearGcc { c })
    }

    /// Sends a linear compatible collection to its matching.
    pub fn from_gcc(&self, g: &LinearGcc) -> Result<PerfectMatching> {
        let n = self.n();
        if n < 2 || g.c.len() != n - 1 {
            return Err(Error::AssumptionViolated("collection does not fit the diagram".into()));
        }
        let comp = |c: (u8, u8), k: u8| if k == 0 { c.0 } else { c.1 };
        let d1 = self.ext.d(1);
        let mut edges = Vec::with_capacity(n + 1);
        let first = if comp(g.c[0], d1) == 1 - d1 { SnakeLabel::Start0 } else { SnakeLabel::Start1 };
        edges.push(self.find(0, first));
        for i in 1..n {
            let d = self.ext.d(i);
            let c = g.c[i - 1];
            let label = if c == (d, 1 - d) {
                SnakeLabel::Diagonal(i)
            } else if c == (1 - d, d) {
                SnakeLabel::Diagonal(i + 1)
            } else if c == (0, 0) {
                SnakeLabel::Shared(i)
            } else {
                return Err(Error::AssumptionViolated(format!("entry {i} of the collection is (1, 1)")));
            };
            edges.push(self.find(i, label));
        }
        let dl = self.ext.d(n - 1);
        let last = if comp(g.c[n - 2], 1 - dl) == dl { SnakeLabel::End0 } else { SnakeLabel::End1 };
        edges.push(self.find(n, last));
        Ok(PerfectMatching { edges })
    }

    /// The edge of `Pl(i)` projecting to `site`.
    pub fn edge_over(&self, i: usize, site: Site) -> Option<usize> {
        self.parallelogram(i).into_iter().find(|&e| self.edges[e].label.site() == site)
    }

    /// SVG drawing with the matching, if any, in bold.
    pub fn to_svg(&self, m: Option<&PerfectMatching>) -> String {
        let scale = 60i64;
        let pad = 20i64;
        let maxx = self.tiles.iter().map(|t| t.0).max().unwrap_or(0) + 1;
        let maxy = self.tiles.iter().map(|t| t.1).max().unwrap_or(0) + 1;
        let (w, h) = (maxx * scale + 2 * pad, maxy * scale + 2 * pad);
        let px = |p: Point| (pad + p.0 * scale, h - pad - p.1 * scale);
        let mut s = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\">\n");
        for (k, t) in self.tiles.iter().enumerate() {
            let (x, y) = px((t.0, t.1 + 1));
            s += &format!(
                "<rect x=\"{x}\" y=\"{y}\" width=\"{scale}\" height=\"{scale}\" fill=\"#eee\"/><text x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n",
                x + scale / 2 - 4,
                y + scale / 2 + 4,
                k + 1
            );
        }
        let bold: BTreeSet<usize> = m.map(|m| m.edges.iter().copied().collect()).unwrap_or_default();
        for (k, e) in self.edges.iter().enumerate() {
            let (a, b) = (px(e.ends.0), px(e.ends.1));
            let width = if bold.contains(&k) { 5 } else { 1 };
            s += &format!(
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"{width}\"/>\n",
                a.0, a.1, b.0, b.1
            );
            let label = self.ext.label(e.label.site());
            s += &format!(
                "<text x=\"{}\" y=\"{}\" font-size=\"10\" fill=\"#a00\">{label}</text>\n",
                (a.0 + b.0) / 2 + 3,
                (a.1 + b.1) / 2 - 3
            );
        }
        s += "</svg>\n";
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine;
    use crate::formulas::{enumerate_linear_gcc, formula_linear_gcc, y_sites};

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
    fn placement_follows_collinearity_rule() {
        let ext = LinearExtension::new(&[0, 0]).unwrap();
        assert_eq!(SnakeDiagram::new(&ext).tiles(), &[(0, 0), (1, 0), (1, 1)]);
        let stair = SnakeDiagram::new(&LinearExtension::new(&[0, 0, 0, 0, 0]).unwrap());
        assert_eq!(stair.tiles(), &[(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2)]);
        for delta in all_deltas(5) {
            let d = SnakeDiagram::new(&LinearExtension::new(&delta).unwrap());
            for i in 2..d.n() {
                let straight = d.rightward(i - 1) == d.rightward(i);
                assert_eq!(straight, delta[i - 2] != delta[i - 1]);
            }
        }
    }

    #[test]
    fn single_tile_has_two_matchings() {
        let d = SnakeDiagram::new(&LinearExtension::new(&[]).unwrap());
        assert_eq!(d.matchings().unwrap().len(), 2);
        let ext = LinearExtension::new(&[]).unwrap();
        let want = engine::variable_by_flips(&ext.quiver(), &ext.path_indicator()).unwrap();
        assert_eq!(d.formula().unwrap(), want);
    }

    #[test]
    fn matchings_give_the_cluster_variable() {
        for delta in all_deltas(5) {
            let ext = LinearExtension::new(&delta).unwrap();
            let d = SnakeDiagram::new(&ext);
            assert_eq!(d.edges().len(), 3 * d.n() + 1);
            let want = engine::variable_by_flips(&ext.quiver(), &ext.path_indicator()).unwrap();
            assert_eq!(d.formula().unwrap(), want, "{delta:?}");
        }
    }

    #[test]
    fn matchings_biject_with_collections() {
        for delta in all_deltas(5).into_iter().filter(|d| !d.is_empty()) {
            let ext = LinearExtension::new(&delta).unwrap();
            let d = SnakeDiagram::new(&ext);
            let ms = d.matchings().unwrap();
            let gs = enumerate_linear_gcc(&ext).unwrap();
            assert_eq!(ms.len(), gs.len());
            for m in &ms {
                assert!(d.is_perfect(m));
                let g = d.to_gcc(m).unwrap();
                assert_eq!(&d.from_gcc(&g).unwrap(), m);
                let ys: Vec<Site> = m.edges.iter().map(|&e| d.label(e).site()).collect();
                assert_eq!(ys, y_sites(&ext, &g));
            }
            for g in &gs {
                assert_eq!(&d.to_gcc(&d.from_gcc(g).unwrap()).unwrap(), g);
            }
            assert_eq!(d.formula().unwrap(), formula_linear_gcc(&ext).unwrap());
        }
    }

    #[test]
    fn three_tile_example() {
        // Path 1 -> 2 -> 3: the middle edge T_{1,2}, T_3^(2) and T_{1,0}
        // matching maps to ((0, 0), (1, 0)).
        let ext = LinearExtension::new(&[0, 0]).unwrap();
        let d = SnakeDiagram::new(&ext);
        let g = LinearGcc { c: vec![(0, 0), (1, 0)] };
        let m = d.from_gcc(&g).unwrap();
        assert!(d.is_perfect(&m));
        assert_eq!(d.label(m.edges[1]), SnakeLabel::Shared(1));
        assert_eq!(d.label(m.edges[2]), SnakeLabel::Diagonal(3));
    }
}
