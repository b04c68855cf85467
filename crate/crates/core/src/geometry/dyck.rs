use alloc::vec::Vec;

/// A unit step of a lattice path, carrying its corner-first label index.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Step {
    /// Horizontal edge `u_r`.
    H(usize),
    /// Vertical edge `v_r`.
    V(usize),
}

/// The maximal Dyck path from `(0, 0)` to `(a1, a2)`: the lattice path
/// closest to the diagonal that never rises above it.
///
/// Horizontal edges are labeled `u_1, ..., u_c` on the `c = min(a1, a2)`
/// corners (a horizontal step followed by a vertical one), left to right,
/// then `u_{c+1}, ...` on the remaining horizontals left to right. Vertical
/// edges are labeled the same way, counted bottom to top.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DyckPath {
    pub a1: usize,
    pub a2: usize,
    pub steps: Vec<Step>,
}

impl DyckPath {
    pub fn maximal(a1: usize, a2: usize) -> DyckPath {
        let mut raw: Vec<bool> = Vec::with_capacity(a1 + a2);
        let mut height = 0;
        if a1 == 0 {
            raw.extend(core::iter::repeat_n(false, a2));
        }
        for x in 1..=a1 {
            raw.push(true);
            let target = x * a2 / a1;
            while height < target {
                raw.push(false);
                height += 1;
            }
        }
        let corner_h: Vec<bool> =
            (0..raw.len()).map(|k| raw[k] && k + 1 < raw.len() && !raw[k + 1]).collect();
        let corner_v: Vec<bool> = (0..raw.len()).map(|k| !raw[k] && k > 0 && raw[k - 1]).collect();
        let c = corner_h.iter().filter(|&&b| b).count();
        let (mut hc, mut hr, mut vc, mut vr) = (0, c, 0, c);
        let steps = raw
            .iter()
            .enumerate()
            .map(|(k, &h)| {
                if h {
                    if corner_h[k] {
                        hc += 1;
                        Step::H(hc)
                    } else {
                        hr += 1;
                        Step::H(hr)
                    }
                } else if corner_v[k] {
                    vc += 1;
                    Step::V(vc)
                } else {
                    vr += 1;
                    Step::V(vr)
                }
            })
            .collect();
        DyckPath { a1, a2, steps }
    }

    pub fn corners(&self) -> usize {
        self.a1.min(self.a2)
    }

    /// `true` when no `r <= s` has both `u_r` in `s1` and `v_r` in `s2`;
    /// membership is given by index sets.
    pub fn compatible(s: usize, s1: &[bool], s2: &[bool]) -> bool {
        (1..=s).all(|r| !(s1.get(r - 1) == Some(&true) && s2.get(r - 1) == Some(&true)))
    }
}
