//! Compatible collections on a completely extended linear quiver with
//! `d`-vector the path indicator.
//!
//! Every path arrow `(i + delta_i) -> (i + 1 - delta_i)` carries a `1 x 1`
//! Dyck path, so a collection reduces to the sizes
//! `c_i = (|S_{i,1}|, |S_{i,2}|)`, none equal to `(1, 1)`, subject to one
//! rule per consecutive pair `(delta_{i-1}, delta_i)`:
//!
//! | pair     | rule                         |
//! |----------|------------------------------|
//! | `(0, 0)` | `c_{i-1}.1 != c_i.0`         |
//! | `(1, 1)` | `c_{i-1}.0 != c_i.1`         |
//! | `(0, 1)` | `c_{i-1}.1 == c_i.1`         |
//! | `(1, 0)` | `c_{i-1}.0 == c_i.0`         |

use alloc::vec::Vec;

use super::gcc::{self, Gcc};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial};
use crate::quiver::{LinearExtension, Site, Vertex};

/// `c[i - 1] = (|S_{i,1}|, |S_{i,2}|)` for `i` in `1..n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LinearGcc {
    pub c: Vec<(u8, u8)>,
}

const CHOICES: [(u8, u8); 3] = [(0, 0), (0, 1), (1, 0)];

fn allowed(prev: (u8, u8), cur: (u8, u8), pair: (u8, u8)) -> bool {
    match pair {
        (0, 0) => prev.1 != cur.0,
        (1, 1) => prev.0 != cur.1,
        (0, 1) => prev.1 == cur.1,
        _ => prev.0 == cur.0,
    }
}

fn require_long(ext: &LinearExtension) -> Result<()> {
    if ext.n() < 2 {
        return Err(Error::AssumptionViolated("the linear model needs at least two path vertices".into()));
    }
    Ok(())
}

/// All collections, in lexicographic order of `c`.
pub fn enumerate_linear_gcc(ext: &LinearExtension) -> Result<Vec<LinearGcc>> {
    require_long(ext)?;
    let len = ext.n() - 1;
    let mut out = Vec::new();
    let mut cur: Vec<(u8, u8)> = Vec::with_capacity(len);
    fn go(ext: &LinearExtension, len: usize, cur: &mut Vec<(u8, u8)>, out: &mut Vec<LinearGcc>) {
        if cur.len() == len {
            out.push(LinearGcc { c: cur.clone() });
            return;
        }
        let i = cur.len() + 1;
        for c in CHOICES {
            if i > 1 && !allowed(cur[i - 2], c, (ext.d(i - 1), ext.d(i))) {
                continue;
            }
            cur.push(c);
            go(ext, len, cur, out);
            cur.pop();
        }
    }
    go(ext, len, &mut cur, &mut out);
    Ok(out)
}

/// Sites `y_0, ..., y_n` of a collection.
pub fn y_sites(ext: &LinearExtension, g: &LinearGcc) -> Vec<Site> {
    let n = ext.n();
    let mut out = Vec::with_capacity(n + 1);
    let comp = |c: (u8, u8), k: u8| if k == 0 { c.0 } else { c.1 };
    let d1 = ext.d(1);
    out.push(if comp(g.c[0], d1) == 1 - d1 { Site::Start0 } else { Site::Start1 });
    for i in 1..n {
        let d = ext.d(i);
        let c = g.c[i - 1];
        out.push(if c == (d, 1 - d) {
            Site::Base(i)
        } else if c == (1 - d, d) {
            Site::Base(i + 1)
        } else {
            Site::Edge(i)
        });
    }
    let dl = ext.d(n - 1);
    out.push(if comp(g.c[n - 2], 1 - dl) == dl { Site::End0 } else { Site::End1 });
    out
}

/// `prod y_i / prod_{i <= n} x_i` in local labels.
pub fn linear_gcc_monomial(ext: &LinearExtension, g: &LinearGcc) -> Monomial {
    let mut m = Monomial::from_pairs((1..=ext.n() as Vertex).map(|v| (v, -1)));
    for s in y_sites(ext, g) {
        m = m.mul(&Monomial::var(ext.label(s)));
    }
    m
}

/// Cluster variable of the path indicator, in local labels.
pub fn formula_linear_gcc(ext: &LinearExtension) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for g in enumerate_linear_gcc(ext)? {
        out.add_term(linear_gcc_monomial(ext, &g), 1.into());
    }
    Ok(out)
}

fn path_arrow(ext: &LinearExtension, i: usize) -> (Vertex, Vertex) {
    let d = ext.d(i) as usize;
    ((i + d) as Vertex, (i + 1 - d) as Vertex)
}

/// Restricts a full collection on the extension to the path arrows.
pub fn fold(ext: &LinearExtension, g: &Gcc) -> Result<LinearGcc> {
    require_long(ext)?;
    let c = (1..ext.n())
        .map(|i| {
            let (s, t) = path_arrow(ext, i);
            let e = g.arrow_index(s, t).ok_or_else(|| Error::AssumptionViolated("missing path arrow".into()))?;
            let (a, b) = g.sizes(e);
            Ok((a as u8, b as u8))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearGcc { c })
}

/// The unique full collection on the extension restricting to `g`.
pub fn unfold(ext: &LinearExtension, g: &LinearGcc) -> Result<Gcc> {
    require_long(ext)?;
    let (mut sat, layout) = gcc::system(&ext.quiver(), &ext.path_indicator())?;
    for i in 1..ext.n() {
        let e = layout.arrows.iter().position(|&x| x == path_arrow(ext, i)).expect("path arrow present");
        let (a, b) = g.c[i - 1];
        sat.fix(layout.u(e, 1), a == 1);
        sat.fix(layout.v(e, 1), b == 1);
    }
    let mut sols = gcc::solve(&sat, &layout);
    if sols.len() != 1 {
        return Err(Error::AssumptionViolated("collection does not extend uniquely".into()));
    }
    Ok(sols.pop().unwrap())
}
