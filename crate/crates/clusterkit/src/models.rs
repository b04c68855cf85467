//! Dispatch from a model name to the corresponding expansion.
//!
//! `gcs` and `gcc` expand any realizable d-vector directly. The other
//! combinatorial models expand cluster variables; for a general d-vector
//! they multiply the variables of its decomposition with the initial
//! variables of its negative part. `mutation` reads cluster variables off a
//! flip sequence and cluster monomials off the exchange graph.

use clap::ValueEnum;
use clusterkit_core::formulas::{
    self, enumerate_linear_gcc, enumerate_variable_gcs, linear_gcc_monomial, variable_gcs_monomial,
};
use clusterkit_core::geometry::{check_in_w, decompose};
use clusterkit_core::quiver::{close_triangles, complete_extension, Completion};
use clusterkit_core::snake::SnakeDiagram;
use clusterkit_core::{engine, scattering, tpath};
use clusterkit_core::{Error, LaurentPoly, LinearSubquiver, Monomial, Quiver, Result, Var, Vertex};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Mutation,
    Gcs,
    Gcc,
    LinearGcc,
    GcsVariable,
    Matching,
    Tpath,
    BrokenLine,
}

impl Model {
    pub const ALL: [Model; 8] = [
        Model::Mutation,
        Model::Gcs,
        Model::Gcc,
        Model::LinearGcc,
        Model::GcsVariable,
        Model::Matching,
        Model::Tpath,
        Model::BrokenLine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Model::Mutation => "mutation",
            Model::Gcs => "gcs",
            Model::Gcc => "gcc",
            Model::LinearGcc => "linear-gcc",
            Model::GcsVariable => "gcs-variable",
            Model::Matching => "matching",
            Model::Tpath => "tpath",
            Model::BrokenLine => "broken-line",
        }
    }

    /// Whether the model accepts quivers of this size.
    pub fn applies_to(self, q: &Quiver) -> bool {
        self != Model::Gcc || q.n() >= 2
    }

    /// Whether the model only expands cluster variables natively.
    pub fn per_variable(self) -> bool {
        !matches!(self, Model::Mutation | Model::Gcs | Model::Gcc)
    }
}

fn check_input(q: &Quiver, a: &[i64]) -> Result<()> {
    if !q.frozen().is_empty() {
        return Err(Error::AssumptionViolated("frozen vertices are not supported here".into()));
    }
    q.require_type_a()?;
    check_in_w(q, a)
}

/// The linear subquiver whose indicator is `a`, if any.
pub fn as_path(q: &Quiver, a: &[i64]) -> Option<LinearSubquiver> {
    if a.len() != q.n() || a.iter().any(|&x| x != 0 && x != 1) || a.iter().all(|&x| x == 0) {
        return None;
    }
    let support: Vec<Vertex> = (1..=q.n() as Vertex).filter(|&v| a[v as usize - 1] == 1).collect();
    q.linear_subquiver(&support).ok()
}

fn require_path(q: &Quiver, a: &[i64]) -> Result<LinearSubquiver> {
    as_path(q, a).ok_or_else(|| Error::NotLinear("the d-vector is not the indicator of a linear full subquiver".into()))
}

fn local_term(c: &Completion, m: &Monomial) -> Monomial {
    m.rename(|v| c.global(v)).without(&c.invented)
}

/// Cluster variable of a linear subquiver in a per-variable model.
pub fn expand_variable(model: Model, q: &Quiver, path: &LinearSubquiver) -> Result<LaurentPoly> {
    match model {
        Model::Mutation => engine::variable_by_flips(q, &path.indicator(q)),
        Model::Gcs => formulas::formula_gcs_any(q, &path.indicator(q)),
        Model::Gcc => formulas::formula_gcc_any(q, &path.indicator(q)),
        Model::LinearGcc if path.len() >= 2 => formulas::formula_linear_gcc_any(q, path),
        Model::LinearGcc | Model::GcsVariable => formulas::formula_gcs_variable(q, path),
        Model::Matching => formulas::via_completion(q, path, |ext| SnakeDiagram::new(ext).formula()),
        Model::Tpath => formulas::via_completion(q, path, tpath::formula_tpath),
        Model::BrokenLine => scattering::theta(q, path),
    }
}

fn negative_part(a: &[i64]) -> LaurentPoly {
    LaurentPoly::monomial(Monomial::from_pairs(
        a.iter().enumerate().filter(|(_, &x)| x < 0).map(|(i, &x)| (i as Var + 1, (-x) as i32)),
    ))
}

/// Cluster monomial `x[a]` in the given model.
pub fn expand(model: Model, q: &Quiver, a: &[i64]) -> Result<LaurentPoly> {
    check_input(q, a)?;
    if a.iter().all(|&x| x == 0) {
        return Ok(LaurentPoly::one());
    }
    match model {
        Model::Gcs => formulas::formula_gcs_any(q, a),
        Model::Gcc => formulas::formula_gcc_any(q, a),
        Model::Mutation => match as_path(q, a) {
            Some(_) => engine::variable_by_flips(q, a),
            None => engine::enumerate(q, engine::SEED_LIMIT)?
                .cluster_monomial(a)
                .ok_or_else(|| Error::NotInW("no cluster monomial has this d-vector".into())),
        },
        _ => {
            let d = decompose(q, a)?;
            let mut out = negative_part(a);
            for part in &d.parts {
                out = &out * &expand_variable(model, q, &require_path(q, part)?)?;
            }
            Ok(out)
        }
    }
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

fn count_variable(model: Model, q: &Quiver, path: &LinearSubquiver) -> Result<usize> {
    Ok(match model {
        Model::Mutation => return Err(Error::AssumptionViolated("the mutation model has no witnesses".into())),
        Model::Gcs => formulas::count_gcs_any(q, &path.indicator(q))?,
        Model::Gcc => formulas::count_gcc_any(q, &path.indicator(q))?,
        Model::LinearGcc if path.len() >= 2 => enumerate_linear_gcc(&complete_extension(q, path)?.extension)?.len(),
        Model::LinearGcc | Model::GcsVariable => enumerate_variable_gcs(q, path)?.len(),
        Model::Matching => SnakeDiagram::new(&complete_extension(q, path)?.extension).matchings()?.len(),
        Model::Tpath => tpath::tpaths(&complete_extension(q, path)?.extension)?.len(),
        Model::BrokenLine => scattering::broken_lines(q, path, false)?.len(),
    })
}

/// Number of witnesses behind [`expand`].
pub fn count(model: Model, q: &Quiver, a: &[i64]) -> Result<usize> {
    check_input(q, a)?;
    match model {
        Model::Mutation => Err(Error::AssumptionViolated("the mutation model has no witnesses".into())),
        _ if a.iter().all(|&x| x <= 0) => Ok(1),
        Model::Gcs => formulas::count_gcs_any(q, a),
        Model::Gcc => formulas::count_gcc_any(q, a),
        _ => {
            let d = decompose(q, a)?;
            d.parts.iter().try_fold(1usize, |acc, part| Ok(acc * count_variable(model, q, &require_path(q, part)?)?))
        }
    }
}

fn bits(s: &[bool]) -> String {
    s.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn members(s: &[bool]) -> Vec<usize> {
    (1..=s.len()).filter(|&r| s[r - 1]).collect()
}

/// Witnesses as JSON objects, each with its term. Per-variable models need
/// the d-vector of a cluster variable.
pub fn witnesses(model: Model, q: &Quiver, a: &[i64]) -> Result<Vec<Value>> {
    check_input(q, a)?;
    if a.iter().any(|&x| x < 0) {
        return Err(Error::AssumptionViolated("witness listing needs a nonnegative d-vector".into()));
    }
    match model {
        Model::Mutation => Err(Error::AssumptionViolated("the mutation model has no witnesses".into())),
        Model::Gcs => {
            let (c, ext, added) = closed(q, a);
            let i0 = if c.n() == 1 { 1 } else { formulas::default_base_vertex(&c)? };
            Ok(formulas::enumerate_gcs(&c, &ext, i0)?
                .iter()
                .map(|s| {
                    let strings: Vec<String> = s.bits.iter().take(q.n()).map(|b| bits(b)).collect();
                    let term = formulas::gcs_monomial(&c, &ext, s).without(&added);
                    json!({ "strings": strings, "term": LaurentPoly::monomial(term).canonical_string() })
                })
                .collect())
        }
        Model::Gcc => {
            let (c, ext, added) = closed(q, a);
            Ok(formulas::enumerate_gcc(&c, &ext)?
                .iter()
                .map(|g| {
                    let arrows: Vec<Value> = g
                        .arrows
                        .iter()
                        .enumerate()
                        .map(|(e, &(i, j))| json!({ "arrow": [i, j], "s1": members(&g.s1[e]), "s2": members(&g.s2[e]) }))
                        .collect();
                    let term = formulas::gcc_monomial(&c, &ext, g).without(&added);
                    json!({ "arrows": arrows, "term": LaurentPoly::monomial(term).canonical_string() })
                })
                .collect())
        }
        _ => {
            let path = require_path(q, a)?;
            variable_witnesses(model, q, &path)
        }
    }
}

fn variable_witnesses(model: Model, q: &Quiver, path: &LinearSubquiver) -> Result<Vec<Value>> {
    let show = |m: Monomial| LaurentPoly::monomial(m).canonical_string();
    let gcs_variable = || -> Result<Vec<Value>> {
        Ok(enumerate_variable_gcs(q, path)?
            .iter()
            .map(|s| json!({ "s": bits(s), "term": show(variable_gcs_monomial(q, path, s)) }))
            .collect())
    };
    match model {
        Model::LinearGcc if path.len() >= 2 => {
            let c = complete_extension(q, path)?;
            Ok(enumerate_linear_gcc(&c.extension)?
                .iter()
                .map(|g| {
                    let pairs: Vec<[u8; 2]> = g.c.iter().map(|&(x, y)| [x, y]).collect();
                    json!({ "c": pairs, "term": show(local_term(&c, &linear_gcc_monomial(&c.extension, g))) })
                })
                .collect())
        }
        Model::LinearGcc | Model::GcsVariable => gcs_variable(),
        Model::Matching => {
            let c = complete_extension(q, path)?;
            let d = SnakeDiagram::new(&c.extension);
            Ok(d.matchings()?
                .iter()
                .map(|m| {
                    let labels: Vec<Vertex> =
                        m.edges.iter().map(|&e| c.global(c.extension.label(d.label(e).site()))).collect();
                    json!({ "labels": labels, "term": show(local_term(&c, &d.term(m))) })
                })
                .collect())
        }
        Model::Tpath => {
            let c = complete_extension(q, path)?;
            Ok(tpath::tpaths(&c.extension)?
                .iter()
                .map(|p| {
                    let labels: Vec<Vertex> = p.labels.iter().map(|&l| c.global(l)).collect();
                    json!({ "labels": labels, "term": show(local_term(&c, &tpath::tpath_monomial(&p.labels))) })
                })
                .collect())
        }
        Model::BrokenLine => Ok(scattering::broken_lines(q, path, false)?
            .iter()
            .map(|l| {
                let extra: Vec<Var> = (q.n() as Var + 1..=2 * q.n() as Var).collect();
                json!({ "s": bits(&l.s), "walls": l.walls, "term": show(l.mono().without(&extra)) })
            })
            .collect()),
        Model::Mutation | Model::Gcs | Model::Gcc => unreachable!("handled by the caller"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clusterkit_core::quiver::a_n;

    fn three_cycle() -> Quiver {
        Quiver::new(3, &[(1, 2), (2, 3), (3, 1)], &[]).unwrap()
    }

    #[test]
    fn all_models_agree_on_a_variable() {
        let q = a_n(4);
        let a = [0, 1, 1, 1];
        let want = expand(Model::Mutation, &q, &a).unwrap();
        for m in Model::ALL {
            assert_eq!(expand(m, &q, &a).unwrap(), want, "{}", m.name());
            if m != Model::Mutation {
                let k = count(m, &q, &a).unwrap();
                assert_eq!(k, witnesses(m, &q, &a).unwrap().len(), "{}", m.name());
                assert_eq!(k, 4, "{}", m.name());
            }
        }
    }

    #[test]
    fn monomials_multiply_their_parts() {
        let q = three_cycle();
        let want = LaurentPoly::parse("(x1+x2+x3)^3/(x1^2 x2^2 x3^2)").unwrap();
        for m in Model::ALL {
            assert_eq!(expand(m, &q, &[2, 2, 2]).unwrap(), want, "{}", m.name());
        }
        for m in [Model::Gcs, Model::Gcc, Model::Matching] {
            assert_eq!(count(m, &q, &[2, 2, 2]).unwrap(), 27);
        }
    }

    #[test]
    fn zero_and_negative_vectors() {
        let q = a_n(3);
        for m in Model::ALL {
            assert_eq!(expand(m, &q, &[0, 0, 0]).unwrap(), LaurentPoly::one());
            assert_eq!(expand(m, &q, &[-1, 0, 0]).unwrap(), LaurentPoly::var(1), "{}", m.name());
        }
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        let q = three_cycle();
        assert!(matches!(expand(Model::Gcs, &q, &[1, 1, 1]), Err(Error::NotInW(_))));
        assert!(matches!(witnesses(Model::Tpath, &q, &[2, 2, 2]), Err(Error::NotLinear(_))));
        assert!(count(Model::Mutation, &q, &[1, 0, 0]).is_err());
        let square = Quiver::new(4, &[(1, 2), (2, 3), (3, 4), (4, 1)], &[]).unwrap();
        assert!(matches!(expand(Model::Gcs, &square, &[1, 0, 0, 0]), Err(Error::NotTypeA(_))));
    }
}
