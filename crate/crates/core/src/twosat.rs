//! Enumeration of all solutions of a 2-SAT instance by decision plus unit
//! propagation. On a satisfiable 2-CNF a conflict-free propagation never
//! leads to a dead end, so solutions are produced without backtracking
//! over failed branches, in lexicographic order (0 before 1).

use alloc::vec;
use alloc::vec::Vec;

/// Literal: variable index and required value.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Lit {
    pub var: usize,
    pub val: bool,
}

pub(crate) struct TwoSat {
    n: usize,
    /// `implications[2 * var + val]`: literals forced when `var == val`.
    implications: Vec<Vec<Lit>>,
    units: Vec<Lit>,
}

impl TwoSat {
    pub fn new(n: usize) -> Self {
        TwoSat { n, implications: vec![Vec::new(); 2 * n], units: Vec::new() }
    }

    fn slot(l: Lit) -> usize {
        2 * l.var + l.val as usize
    }

    /// Clause `a or b`.
    pub fn clause(&mut self, a: Lit, b: Lit) {
        let na = Lit { var: a.var, val: !a.val };
        let nb = Lit { var: b.var, val: !b.val };
        self.implications[Self::slot(na)].push(b);
        self.implications[Self::slot(nb)].push(a);
    }

    /// Forbids `x == vx and y == vy`.
    pub fn forbid(&mut self, x: usize, vx: bool, y: usize, vy: bool) {
        self.clause(Lit { var: x, val: !vx }, Lit { var: y, val: !vy });
    }

    #[cfg(test)]
    pub fn equal(&mut self, x: usize, y: usize) {
        self.forbid(x, true, y, false);
        self.forbid(x, false, y, true);
    }

    pub fn unequal(&mut self, x: usize, y: usize) {
        self.forbid(x, true, y, true);
        self.forbid(x, false, y, false);
    }

    pub fn fix(&mut self, x: usize, v: bool) {
        self.units.push(Lit { var: x, val: v });
    }

    fn propagate(&self, assign: &mut [Option<bool>], trail: &mut Vec<usize>, start: Lit) -> bool {
        let mut stack = vec![start];
        while let Some(l) = stack.pop() {
            match assign[l.var] {
                Some(v) if v == l.val => continue,
                Some(_) => return false,
                None => {
                    assign[l.var] = Some(l.val);
                    trail.push(l.var);
                    stack.extend(self.implications[Self::slot(l)].iter().copied());
                }
            }
        }
        true
    }

    /// Calls `visit` on every solution.
    pub fn for_each_solution<F: FnMut(&[bool])>(&self, mut visit: F) {
        let mut assign = vec![None; self.n];
        let mut trail = Vec::new();
        for &u in &self.units {
            if !self.propagate(&mut assign, &mut trail, u) {
                return;
            }
        }
        let mut buf = vec![false; self.n];
        self.search(0, &mut assign, &mut buf, &mut visit);
    }

    fn search<F: FnMut(&[bool])>(&self, from: usize, assign: &mut Vec<Option<bool>>, buf: &mut Vec<bool>, visit: &mut F) {
        let mut var = from;
        while var < self.n && assign[var].is_some() {
            var += 1;
        }
        if var == self.n {
            for (b, a) in buf.iter_mut().zip(assign.iter()) {
                *b = a.expect("complete assignment");
            }
            visit(buf);
            return;
        }
        for val in [false, true] {
            let mut trail = Vec::new();
            if self.propagate(assign, &mut trail, Lit { var, val }) {
                self.search(var + 1, assign, buf, visit);
            }
            for v in trail {
                assign[v] = None;
            }
        }
    }

    #[cfg(test)]
    pub fn solutions(&self) -> Vec<Vec<bool>> {
        let mut out = Vec::new();
        self.for_each_solution(|s| out.push(s.to_vec()));
        out
    }
}
