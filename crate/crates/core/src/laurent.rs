//! Sparse multivariate Laurent polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Variables are positive integers: `x3` is [`Var`] `3`. Monomials are kept
//! sorted by variable with zero exponents removed, and compare by the dense
//! lexicographic order on exponent vectors. That order is compatible with
//! multiplication, so the last term of a polynomial is its leading term and
//! exact division can run leading-term elimination.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient ring. Only this alias needs to change to swap the backend.
pub type Coeff = BigInt;

/// Variable index, 1-based.
pub type Var = u32;

/// A Laurent monomial `x_{v1}^{e1} ... x_{vk}^{ek}`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial::pow(v, 1)
    }

    pub fn pow(v: Var, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(alloc::vec![(v, e)])
        }
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs, merging repeats.
    pub fn from_pairs<I: IntoIterator<Item = (Var, i32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<Var, i32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    /// Monomial with exponent `exps[i]` on variable `i + 1`.
    pub fn from_dense(exps: &[i64]) -> Self {
        Monomial::from_pairs(exps.iter().enumerate().map(|(i, &e)| (i as Var + 1, e as i32)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> i32 {
        match self.0.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.0.iter().copied()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn max_var(&self) -> Var {
        self.0.last().map_or(0, |&(v, _)| v)
    }

    /// Dense exponent vector over variables `1..=n`.
    pub fn to_dense(&self, n: usize) -> Vec<i64> {
        let mut out = alloc::vec![0i64; n];
        for &(v, e) in &self.0 {
            if (v as usize) >= 1 && (v as usize) <= n {
                out[v as usize - 1] = e as i64;
            }
        }
        out
    }

    pub fn inv(&self) -> Self {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn div(&self, other: &Monomial) -> Self {
        self.mul(&other.inv())
    }

    pub fn powi(&self, k: i32) -> Self {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    /// Drops the listed variables (sets them to 1).
    pub fn without(&self, vars: &[Var]) -> Self {
        Monomial(self.0.iter().copied().filter(|(v, _)| !vars.contains(v)).collect())
    }

    /// Renames variables through `f`; collisions multiply.
    pub fn rename<F: Fn(Var) -> Var>(&self, f: F) -> Self {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)))
    }

    /// Negative part as a positive monomial.
    pub fn denominator(&self) -> Self {
        Monomial(self.0.iter().filter(|&&(_, e)| e < 0).map(|&(v, e)| (v, -e)).collect())
    }

    /// Space-separated product such as `x1^2 x3`; `1` for the empty monomial.
    pub fn render(&self) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| if e == 1 { format!("x{v}") } else { format!("x{v}^{e}") })
            .collect();
        parts.join(" ")
    }
}

impl Ord for Monomial {
    /// Lexicographic order on dense exponent vectors.
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, e))) => return 0.cmp(&e),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A Laurent polynomial: finite map from monomials to nonzero coefficients.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Coeff>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Coeff::one())
    }

    pub fn constant<C: Into<Coeff>>(c: C) -> Self {
        LaurentPoly::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        LaurentPoly::term(1, Monomial::var(v))
    }

    pub fn monomial(m: Monomial) -> Self {
        LaurentPoly::term(1, m)
    }

    pub fn term<C: Into<Coeff>>(c: C, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Sum of coefficients, i.e. the value at `x = (1, ..., 1)`.
    pub fn coefficient_sum(&self) -> Coeff {
        self.terms.values().sum()
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.is_one())
    }

    pub fn as_monomial(&self) -> Option<&Monomial> {
        if self.is_monomial() {
            self.terms.keys().next()
        } else {
            None
        }
    }

    pub fn max_var(&self) -> Var {
        self.terms.keys().map(Monomial::max_var).max().unwrap_or(0)
    }

    /// Smallest exponent of `v` over all terms (0 for the zero polynomial).
    pub fn min_exponent(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exponent(v)).min().unwrap_or(0)
    }

    /// Least common denominator: the monomial `x^d` with `d_v` the largest
    /// negative exponent of `v`, as a positive monomial.
    pub fn denominator(&self) -> Monomial {
        let mut map: BTreeMap<Var, i32> = BTreeMap::new();
        for m in self.terms.keys() {
            for (v, e) in m.iter() {
                if e < 0 {
                    let slot = map.entry(v).or_insert(0);
                    *slot = (*slot).max(-e);
                }
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Substitutes `1` for every listed variable.
    pub fn substitute_one(&self, vars: &[Var]) -> Self {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.without(vars), c.clone());
        }
        out
    }

    /// Renames variables through `f`; merged terms are summed.
    pub fn rename<F: Fn(Var) -> Var>(&self, f: F) -> Self {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.rename(&f), c.clone());
        }
        out
    }

    /// Exact quotient `self / d` by leading-term elimination.
    ///
    /// Fails with [`Error::InexactDivision`] when no Laurent polynomial `q`
    /// with `q * d == self` exists.
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        let (dlead, dcoef) = d.leading_term().ok_or(Error::InexactDivision)?;
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        if let Some(m) = d.as_monomial() {
            return Ok(self.mul_monomial(&m.inv()));
        }
        let dlow = d.terms.keys().next().expect("nonzero divisor");
        let nlow = self.terms.keys().next().expect("nonzero dividend");
        // Every quotient term lies at or above low(self)/low(d).
        let floor = nlow.div(dlow);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let mut steps = 0usize;
        while let Some((rlead, rcoef)) = rem.leading_term() {
            steps += 1;
            if steps > 1 << 22 {
                return Err(Error::InexactDivision);
            }
            let t = rlead.div(dlead);
            if t < floor {
                return Err(Error::InexactDivision);
            }
            let (q, r) = num_integer::Integer::div_rem(rcoef, dcoef);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            let tq = LaurentPoly::term(q, t);
            rem = &rem - &(&tq * d);
            quot = &quot + &tq;
        }
        if &(&quot * d) != self {
            return Err(Error::InexactDivision);
        }
        Ok(quot)
    }

    /// Canonical rational rendering `(N)/(D)` over the least common
    /// denominator `D`; `N` lists terms by total degree, then by decreasing
    /// exponent vector.
    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let den = self.denominator();
        let mut num: Vec<(Monomial, &Coeff)> =
            self.terms.iter().map(|(m, c)| (m.mul(&den), c)).collect();
        num.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
        let mut s = String::new();
        for (k, (m, c)) in num.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push(' ');
                }
                s.push_str(&m.render());
            }
        }
        if den.is_one() {
            s
        } else {
            format!("({})/({})", s, den.render())
        }
    }

    /// Parses expressions such as `(x1 x3 + x5*x6)/(x2)` or
    /// `(x1+x2+x3)^3/(x1^2 x2^2 x3^2)`.
    ///
    /// Products may be written with `*` or juxtaposition. Division is only
    /// allowed by monomials.
    pub fn parse(s: &str) -> Result<LaurentPoly> {
        let mut p = Parser { s: s.as_bytes(), i: 0 };
        let out = p.expr()?;
        p.ws();
        if p.i != p.s.len() {
            return Err(Error::Parse(format!("unexpected input at byte {}", p.i)));
        }
        Ok(out)
    }

    /// Coefficient as `i64` when it fits, mainly for serialization.
    pub fn coefficient_i64(c: &Coeff) -> Option<i64> {
        c.to_i64()
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl From<Monomial> for LaurentPoly {
    fn from(m: Monomial) -> Self {
        LaurentPoly::monomial(m)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl core::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut out = LaurentPoly::zero();
        for p in iter {
            out += p;
        }
        out
    }
}

impl core::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut out = LaurentPoly::one();
        for p in iter {
            out *= &p;
        }
        out
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.i < self.s.len() && (self.s[self.i] as char).is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.i))
    }

    fn int(&mut self) -> Result<BigInt> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected integer"));
        }
        let text = core::str::from_utf8(&self.s[start..self.i]).map_err(|_| self.err("bad utf8"))?;
        text.parse::<BigInt>().map_err(|_| self.err("bad integer"))
    }

    fn small_int(&mut self) -> Result<i32> {
        self.int()?.to_i32().ok_or_else(|| self.err("exponent out of range"))
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut sign = 1;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.i += 1;
            }
            Some(b'+') => self.i += 1,
            _ => {}
        }
        let mut out = self.term()?;
        if sign < 0 {
            out = -out;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    out += self.term()?;
                }
                Some(b'-') => {
                    self.i += 1;
                    out -= &self.term()?;
                }
                _ => return Ok(out),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut out = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    out = &out * &self.factor()?;
                }
                Some(b'/') => {
                    self.i += 1;
                    let d = self.factor()?;
                    out = match d.terms.iter().next() {
                        Some((m, c)) if d.num_terms() == 1 && c.abs().is_one() => {
                            out.mul_monomial(&m.inv()).scale(c)
                        }
                        _ => return Err(self.err("division by a non-monomial")),
                    };
                }
                Some(c) if c == b'x' || c == b'(' || c.is_ascii_digit() => {
                    out = &out * &self.factor()?;
                }
                _ => return Ok(out),
            }
        }
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            let neg = if self.peek() == Some(b'-') {
                self.i += 1;
                true
            } else {
                false
            };
            let e = self.small_int()?;
            if neg {
                let m = base.as_monomial().ok_or_else(|| self.err("negative power of a non-monomial"))?;
                return Ok(LaurentPoly::monomial(m.powi(-e)));
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(b'x') => {
                self.i += 1;
                if self.peek() == Some(b'_') {
                    self.i += 1;
                }
                let v = self.int()?.to_u32().filter(|&v| v > 0).ok_or_else(|| self.err("bad variable index"))?;
                Ok(LaurentPoly::var(v))
            }
            Some(c) if c.is_ascii_digit() => Ok(LaurentPoly::constant(self.int()?)),
            _ => Err(self.err("expected term")),
        }
    }
}
