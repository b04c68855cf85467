//! Triangle-inequality arithmetic, realizable d-vectors, maximal Dyck paths,
//! polygon triangulations and the pipeline decomposition of a d-vector.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::quiver::Quiver;

mod dyck;
mod pipelines;
mod triangulation;

pub use dyck::{DyckPath, Step};
pub use pipelines::{decompose, pipelines, Decomposition, Pipeline};
pub use triangulation::{crossing_number, Triangulation};

/// Twice the pipe count `sigma(x, y, z)` between two sides of lengths `x`
/// and `y` of a triangle whose third side has length `z`:
/// `[x + y - z]_+ - [x - y - z]_+ - [y - x - z]_+`.
pub fn sigma2(x: i64, y: i64, z: i64) -> i64 {
    (x + y - z).max(0) - (x - y - z).max(0) - (y - x - z).max(0)
}

/// `sigma(x, y, z)`, or `None` when it is a half-integer.
pub fn sigma(x: i64, y: i64, z: i64) -> Option<i64> {
    let s = sigma2(x, y, z);
    (s % 2 == 0).then_some(s / 2)
}

/// `sigma` with the result floored, for callers that already know `a` is
/// realizable.
pub(crate) fn sigma_int(x: i64, y: i64, z: i64) -> i64 {
    sigma2(x, y, z).div_euclid(2)
}

/// Checks the parity condition: on every oriented 3-cycle whose three
/// entries are positive and satisfy strict triangle inequalities, their sum
/// is even.
pub fn check_in_w(q: &Quiver, a: &[i64]) -> Result<()> {
    if a.len() != q.n() {
        return Err(Error::NotInW(format!("vector has {} entries for {} vertices", a.len(), q.n())));
    }
    for [i, j, k] in q.three_cycles() {
        let (x, y, z) = (a[i as usize - 1], a[j as usize - 1], a[k as usize - 1]);
        let strict = x > 0 && y > 0 && z > 0 && x < y + z && y < x + z && z < x + y;
        if strict && (x + y + z) % 2 != 0 {
            return Err(Error::NotInW(format!("odd sum {} on 3-cycle ({i}, {j}, {k})", x + y + z)));
        }
    }
    Ok(())
}

pub fn in_w(q: &Quiver, a: &[i64]) -> bool {
    check_in_w(q, a).is_ok()
}

/// Positive part `[a]_+`.
pub fn positive_part(a: &[i64]) -> Vec<i64> {
    a.iter().map(|&x| x.max(0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Case-split reference for `sigma`.
    fn sigma_cases(x: i64, y: i64, z: i64) -> (i64, bool) {
        if y > x + z {
            (2 * x, true)
        } else if x > y + z {
            (2 * y, true)
        } else if z > x + y {
            (0, true)
        } else {
            (x + y - z, false)
        }
    }

    #[test]
    fn sigma_matches_case_split() {
        for x in 0..8 {
            for y in 0..8 {
                for z in 0..8 {
                    assert_eq!(sigma2(x, y, z), sigma_cases(x, y, z).0, "({x},{y},{z})");
                    assert_eq!(sigma2(x, y, z), sigma2(y, x, z));
                }
            }
        }
        assert_eq!(sigma(2, 2, 2), Some(1));
        assert_eq!(sigma(1, 1, 1), None);
    }

    #[test]
    fn parity_condition() {
        let c = Quiver::new(3, &[(1, 2), (2, 3), (3, 1)], &[]).unwrap();
        assert!(!in_w(&c, &[1, 1, 1]));
        assert!(in_w(&c, &[2, 2, 2]));
        assert!(in_w(&c, &[1, 1, 2]));
        assert!(in_w(&c, &[1, 1, 0]));
        assert!(in_w(&c, &[-1, 1, 1]));
        let path = crate::quiver::a_n(3);
        assert!(in_w(&path, &[1, 1, 1]));
    }
}
