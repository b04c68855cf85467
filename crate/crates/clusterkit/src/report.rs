//! Tables of cluster variables.

use clusterkit_core::engine::{self, Catalog};
use clusterkit_core::{Quiver, Result};
use serde_json::{json, Value};

use crate::io::{laurent_to_json, tuple};

/// Non-initial cluster variables, ordered by total degree of the d-vector
/// and then lexicographically.
pub fn variable_rows(cat: &Catalog) -> Vec<(Vec<i64>, String)> {
    let mut rows: Vec<(Vec<i64>, String)> = cat
        .variables
        .iter()
        .filter(|(d, _)| d.iter().all(|&x| x >= 0))
        .map(|(d, u)| (d.clone(), u.canonical_string()))
        .collect();
    rows.sort_by(|a, b| a.0.iter().sum::<i64>().cmp(&b.0.iter().sum::<i64>()).then_with(|| a.0.cmp(&b.0)));
    rows
}

/// Markdown table of the non-initial cluster variables.
pub fn report_table(q: &Quiver) -> Result<String> {
    let cat = engine::enumerate(q, engine::SEED_LIMIT)?;
    let mut s = String::from("| d-vector | cluster variable |\n|---|---|\n");
    for (d, u) in variable_rows(&cat) {
        s.push_str(&format!("| {} | {} |\n", tuple(&d), u));
    }
    Ok(s)
}

/// Every cluster variable, initial ones included, with its d-vector.
pub fn variable_table(q: &Quiver) -> Result<Value> {
    let cat = engine::enumerate(q, engine::SEED_LIMIT)?;
    let vars: Vec<Value> = cat
        .variables
        .iter()
        .map(|(d, u)| json!({ "dvector": d, "polynomial": u.canonical_string(), "laurent": laurent_to_json(u) }))
        .collect();
    Ok(json!({ "count": cat.len(), "clusters": cat.clusters.len(), "variables": vars }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_table_has_one_row() {
        let t = report_table(&Quiver::new(1, &[], &[]).unwrap()).unwrap();
        assert_eq!(t.lines().count(), 3);
        assert!(t.contains("| (1) | (2)/(x1) |"), "{t}");
    }

    #[test]
    fn tables_are_stable() {
        let q = Quiver::new(3, &[(1, 2), (3, 2)], &[]).unwrap();
        assert_eq!(report_table(&q).unwrap(), report_table(&q).unwrap());
        assert_eq!(variable_table(&q).unwrap()["count"], 9);
    }
}
