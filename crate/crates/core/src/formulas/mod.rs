//! Expansion formulas for cluster monomials.
//!
//! * [`gcs`]: generalized compatible sequences, one 0-1 string per vertex,
//! * [`gcc`]: generalized compatible collections of edge subsets of maximal
//!   Dyck paths, one pair per arrow,
//! * [`linear`]: the compact collection model for cluster variables on a
//!   completely extended linear quiver,
//! * [`variable`]: compatible 0-1 vectors for a single cluster variable.
//!
//! The `*_any` wrappers run a model on an arbitrary connected type-A quiver
//! by adding frozen vertices and specializing them to `1` afterwards.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Var};
use crate::quiver::{close_triangles, complete_extension, LinearExtension, LinearSubquiver, Quiver, Vertex};

pub mod gcc;
pub mod gcs;
pub mod linear;
pub mod variable;

pub use gcc::{enumerate_gcc, formula_gcc, gcc_monomial, gcc_to_gcs, gcs_to_gcc, Gcc};
pub use gcs::{default_base_vertex, enumerate_gcs, formula_gcs, gcs_monomial, Gcs};
pub use linear::{enumerate_linear_gcc, fold, formula_linear_gcc, linear_gcc_monomial, unfold, y_sites, LinearGcc};
pub use variable::{enumerate_variable_gcs, formula_gcs_variable, variable_gcs_monomial};

/// Splits `a` into `[a]_+` and the monomial `prod x_i^{[-a_i]_+}`.
pub(crate) fn split_negative(a: &[i64]) -> (Vec<i64>, LaurentPoly) {
    let pos = a.iter().map(|&x| x.max(0)).collect();
    let neg = crate::laurent::Monomial::from_pairs(
        a.iter().enumerate().filter(|(_, &x)| x < 0).map(|(i, &x)| (i as Var + 1, (-x) as i32)),
    );
    (pos, LaurentPoly::monomial(neg))
}

fn closed(q: &Quiver, a: &[i64]) -> (Quiver, Vec<i64>, Vec<Vertex>) {
    if q.every_edge_on_three_cycle() {
        return (q.clone(), a.to_vec(), Vec::new());
    }
    let (c, added) = close_triangles(q);
    let mut ext = a.to_vec();
    ext.resize(c.n(), 0);
    (c, ext, added)
}

/// Compatible-sequence model on any connected type-A quiver.
pub fn formula_gcs_any(q: &Quiver, a: &[i64]) -> Result<LaurentPoly> {
    let (c, ext, added) = closed(q, a);
    let i0 = if c.n() == 1 { 1 } else { default_base_vertex(&c)? };
    Ok(formula_gcs(&c, &ext, i0)?.substitute_one(&added))
}

/// Number of compatible sequences behind [`formula_gcs_any`].
pub fn count_gcs_any(q: &Quiver, a: &[i64]) -> Result<usize> {
    let (c, ext, _) = closed(q, a);
    let i0 = if c.n() == 1 { 1 } else { default_base_vertex(&c)? };
    Ok(enumerate_gcs(&c, &ext.iter().map(|&x| x.max(0)).collect::<Vec<_>>(), i0)?.len())
}

/// Compatible-collection model on any connected type-A quiver with at
/// least two vertices.
pub fn formula_gcc_any(q: &Quiver, a: &[i64]) -> Result<LaurentPoly> {
    let (c, ext, added) = closed(q, a);
    Ok(formula_gcc(&c, &ext)?.substitute_one(&added))
}

pub fn count_gcc_any(q: &Quiver, a: &[i64]) -> Result<usize> {
    let (c, ext, _) = closed(q, a);
    Ok(enumerate_gcc(&c, &ext.iter().map(|&x| x.max(0)).collect::<Vec<_>>())?.len())
}

/// Runs a model on the completed extension of a linear subquiver and maps
/// the result back: local labels become ambient labels and invented
/// vertices are specialized to `1`.
pub fn via_completion<F>(q: &Quiver, path: &LinearSubquiver, model: F) -> Result<LaurentPoly>
where
    F: FnOnce(&LinearExtension) -> Result<LaurentPoly>,
{
    let c = complete_extension(q, path)?;
    let local = model(&c.extension)?;
    Ok(local.rename(|v| c.global(v)).substitute_one(&c.invented))
}

/// Linear compatible-collection model for the cluster variable of a linear
/// subquiver with at least two vertices.
pub fn formula_linear_gcc_any(q: &Quiver, path: &LinearSubquiver) -> Result<LaurentPoly> {
    if path.len() < 2 {
        return Err(Error::AssumptionViolated("the linear model needs at least two path vertices".into()));
    }
    via_completion(q, path, formula_linear_gcc)
}
