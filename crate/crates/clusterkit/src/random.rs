//! Random type-A quivers from uniformly random polygon triangulations.

use clusterkit_core::geometry::Triangulation;
use clusterkit_core::Quiver;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest vertex count the Catalan weights support without overflow.
pub const MAX_VERTICES: usize = 60;

fn catalan(k: usize) -> u128 {
    (0..k).fold(1u128, |c, i| c * 2 * (2 * i as u128 + 1) / (i as u128 + 2))
}

/// Diagonals of a uniformly random triangulation of the polygon on corners
/// `lo..=hi`, excluding the side `(lo, hi)`.
fn triangulate<R: Rng>(lo: usize, hi: usize, rng: &mut R, out: &mut Vec<(usize, usize)>) {
    if hi - lo < 2 {
        return;
    }
    // The triangle on side (lo, hi) has apex c; weight by the triangulations
    // of both remaining sub-polygons.
    let weights: Vec<u128> = (lo + 1..hi).map(|c| catalan(c - lo - 1) * catalan(hi - c - 1)).collect();
    let mut pick = rng.gen_range(0..weights.iter().sum::<u128>());
    let mut c = lo + 1;
    for (k, &w) in weights.iter().enumerate() {
        if pick < w {
            c = lo + 1 + k;
            break;
        }
        pick -= w;
    }
    for (a, b) in [(lo, c), (c, hi)] {
        if b - a >= 2 {
            out.push((a, b));
        }
        triangulate(a, b, rng, out);
    }
}

/// Connected type-A quiver on `n` vertices from a uniform triangulation of
/// the `(n + 3)`-gon, with diagonal labels shuffled.
pub fn random_type_a<R: Rng>(n: usize, rng: &mut R) -> Quiver {
    assert!((1..=MAX_VERTICES).contains(&n), "vertex count out of range");
    let size = n + 3;
    let mut diagonals = Vec::with_capacity(n);
    triangulate(0, size - 1, rng, &mut diagonals);
    diagonals.shuffle(rng);
    Triangulation::from_diagonals(size, &diagonals).expect("valid triangulation").quiver()
}

/// `count` quivers with vertex counts uniform in `min..=max`, determined by
/// `seed`.
pub fn sample(seed: u64, count: usize, min: usize, max: usize) -> Vec<Quiver> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(min..=max);
            random_type_a(n, &mut rng)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn catalan_numbers() {
        assert_eq!((0..8).map(catalan).collect::<Vec<_>>(), [1, 1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn samples_are_type_a_and_reproducible() {
        let a = sample(7, 50, 1, 9);
        assert_eq!(a, sample(7, 50, 1, 9));
        for q in &a {
            assert!(q.is_type_a() && q.is_connected());
        }
    }

    #[test]
    fn hexagon_triangulations_are_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut hist: BTreeMap<Vec<(usize, usize)>, usize> = BTreeMap::new();
        let trials = 14_000;
        for _ in 0..trials {
            let mut d = Vec::new();
            triangulate(0, 5, &mut rng, &mut d);
            d.sort();
            *hist.entry(d).or_default() += 1;
        }
        assert_eq!(hist.len(), 14);
        for &c in hist.values() {
            assert!((800..1200).contains(&c), "{c}");
        }
    }
}
