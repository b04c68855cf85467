//! Differential harness: runs several models on the same d-vectors and
//! compares canonical forms and witness counts.

use std::time::Instant;

use clusterkit_core::geometry::in_w;
use clusterkit_core::{LaurentPoly, Quiver};
use rayon::prelude::*;
use serde::Serialize;

use crate::io::tuple;
use crate::models::{self, Model};

/// Outcome of one model on one d-vector.
#[derive(Clone, Debug, Serialize)]
pub struct ModelResult {
    pub model: Model,
    pub polynomial: Option<String>,
    pub count: Option<usize>,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub quiver: usize,
    pub dvector: Vec<i64>,
    pub results: Vec<ModelResult>,
    /// All models produced the same canonical form.
    pub forms_agree: bool,
    /// All models with witnesses report the same count.
    pub counts_agree: bool,
    pub polynomial: Option<String>,
}

impl Row {
    pub fn pass(&self) -> bool {
        self.forms_agree && self.counts_agree
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub rows: Vec<Row>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(Row::pass)
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.pass()).count()
    }

    /// One line per row, then a summary line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let counts: Vec<String> = r
                .results
                .iter()
                .filter_map(|m| m.count.map(|c| format!("{}={c}", m.model.name())))
                .collect();
            s.push_str(&format!(
                "{} quiver={} d={} counts[{}] {}\n",
                if r.pass() { "PASS" } else { "FAIL" },
                r.quiver,
                tuple(&r.dvector),
                counts.join(" "),
                r.polynomial.as_deref().unwrap_or("-"),
            ));
            for m in r.results.iter().filter(|m| m.error.is_some()) {
                s.push_str(&format!("  {}: {}\n", m.model.name(), m.error.as_deref().unwrap_or("")));
            }
        }
        s.push_str(&format!(
            "{} rows={} failures={}\n",
            if self.pass() { "PASS" } else { "FAIL" },
            self.rows.len(),
            self.failures()
        ));
        s
    }
}

/// Indicators of the linear subquivers. A quiver without arrows has none.
pub fn variable_scope(q: &Quiver) -> Vec<Vec<i64>> {
    if q.arrows().is_empty() {
        return Vec::new();
    }
    q.linear_subquivers().iter().map(|p| p.indicator(q)).collect()
}

/// Realizable d-vectors in the box `[lo, hi]^n`, in lexicographic order.
pub fn box_scope(q: &Quiver, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let n = q.n();
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    let mut a = vec![lo; n];
    loop {
        if in_w(q, &a) {
            out.push(a.clone());
        }
        let Some(k) = (0..n).rev().find(|&k| a[k] < hi) else { break };
        a[k] += 1;
        for x in &mut a[k + 1..] {
            *x = lo;
        }
    }
    out
}

fn run_model(model: Model, q: &Quiver, a: &[i64], timings: bool) -> (ModelResult, Option<LaurentPoly>) {
    let start = Instant::now();
    let poly = models::expand(model, q, a);
    let count = if model == Model::Mutation { None } else { models::count(model, q, a).ok() };
    let millis = timings.then(|| start.elapsed().as_secs_f64() * 1e3);
    match poly {
        Ok(p) => (
            ModelResult { model, polynomial: Some(p.canonical_string()), count, error: None, millis },
            Some(p),
        ),
        Err(e) => (ModelResult { model, polynomial: None, count, error: Some(e.to_string()), millis }, None),
    }
}

/// Compares the `models` that apply to `q` on one d-vector.
pub fn check(quiver: usize, q: &Quiver, a: &[i64], models: &[Model], timings: bool) -> Row {
    let (results, polys): (Vec<ModelResult>, Vec<Option<LaurentPoly>>) =
        models.iter().filter(|m| m.applies_to(q)).map(|&m| run_model(m, q, a, timings)).unzip();
    let forms_agree = polys.iter().all(|p| p.is_some()) && polys.windows(2).all(|w| w[0] == w[1]);
    let counts: Vec<Option<usize>> =
        results.iter().filter(|r| r.model != Model::Mutation).map(|r| r.count).collect();
    let counts_agree = counts.iter().all(|c| c.is_some()) && counts.windows(2).all(|w| w[0] == w[1]);
    let polynomial = if forms_agree { polys.first().cloned().flatten().map(|p| p.canonical_string()) } else { None };
    Row { quiver, dvector: a.to_vec(), results, forms_agree, counts_agree, polynomial }
}

/// Checks every `(quiver index, d-vector)` item, in parallel, keeping the
/// input order.
pub fn run(quivers: &[Quiver], items: &[(usize, Vec<i64>)], models: &[Model], timings: bool) -> Report {
    let rows = items.par_iter().map(|(k, a)| check(*k, &quivers[*k], a, models, timings)).collect();
    Report { rows }
}
