//! Exact multivariate Laurent polynomials over the rationals.
//!
//! Invariants: no stored zero coefficient; every exponent vector has length
//! equal to the number of variables; arithmetic is exact and equality is
//! term-wise.

use super::mpoly::MPoly;
use super::num::{denominator_lcm, Q, Z};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    pub vars: Vec<String>,
    pub terms: BTreeMap<Vec<i32>, Q>,
}

impl LaurentPoly {
    pub fn zero(vars: &[&str]) -> Self {
        LaurentPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_n(nvars: usize) -> Self {
        let names = ["x", "y", "z"];
        let vars: Vec<String> = (0..nvars)
            .map(|i| {
                names
                    .get(i)
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| format!("x{}", i + 1))
            })
            .collect();
        LaurentPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant_n(nvars: usize, c: Q) -> Self {
        let mut p = LaurentPoly::zero_n(nvars);
        p.set(vec![0; nvars], c);
        p
    }

    pub fn one_n(nvars: usize) -> Self {
        LaurentPoly::constant_n(nvars, Q::one())
    }

    pub fn monomial_n(nvars: usize, exps: Vec<i32>, c: Q) -> Self {
        let mut p = LaurentPoly::zero_n(nvars);
        p.set(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn set(&mut self, exps: Vec<i32>, c: Q) {
        debug_assert_eq!(exps.len(), self.nvars());
        if c.is_zero() {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, c);
        }
    }

    pub fn coeff(&self, exps: &[i32]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, exps: Vec<i32>, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = LaurentPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                r.add_term(e, ca * cb);
            }
        }
        r
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return LaurentPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, exps: &[i32], c: &Q) -> Self {
        if c.is_zero() {
            return LaurentPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, v)| {
                    (e.iter().zip(exps).map(|(a, b)| a + b).collect(), v * c)
                })
                .collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = LaurentPoly::one_n(self.nvars());
        acc.vars = self.vars.clone();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `v`.
    pub fn diff(&self, v: usize) -> Self {
        let mut r = LaurentPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            if e[v] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[v] -= 1;
            r.add_term(e2, c * Q::from_integer(Z::from(e[v])));
        }
        r
    }

    /// Smallest exponent of variable `v` (0 for the zero polynomial).
    pub fn min_exp(&self, v: usize) -> i32 {
        self.terms.keys().map(|e| e[v]).min().unwrap_or(0)
    }

    pub fn max_exp(&self, v: usize) -> i32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    /// Evaluate at rational points (all nonzero when negative exponents occur).
    pub fn eval_q(&self, pt: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k >= 0 {
                    for _ in 0..k {
                        t = t * &pt[i];
                    }
                } else {
                    assert!(!pt[i].is_zero(), "evaluation at zero with negative exponent");
                    for _ in 0..(-k) {
                        t = t / &pt[i];
                    }
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, pt: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = super::num::q_to_f64(c);
            for (i, &k) in e.iter().enumerate() {
                t *= pt[i].powi(k);
            }
            acc += t;
        }
        acc
    }

    /// Numerator as a polynomial with integer coefficients: multiplies by
    /// x_i^{m_i} to clear negative exponents and by the denominator lcm, then
    /// strips the integer content. Vanishes exactly where `self` does away
    /// from coordinate hyperplanes.
    pub fn numerator(&self) -> MPoly {
        let n = self.nvars();
        let shifts: Vec<i32> = (0..n).map(|v| -self.min_exp(v).min(0)).collect();
        let cs: Vec<Q> = self.terms.values().cloned().collect();
        let l = denominator_lcm(&cs);
        let mut p = MPoly::zero(n);
        for (e, c) in &self.terms {
            let exps: Vec<u16> = e
                .iter()
                .zip(&shifts)
                .map(|(a, s)| u16::try_from(a + s).expect("exponent fits"))
                .collect();
            let z = c.numer() * (&l / c.denom());
            p = p.add(&MPoly::monomial(n, exps, z));
        }
        let c = p.content_z();
        if !c.is_zero() && !c.is_one() {
            p = p.exact_div(&MPoly::constant(n, c));
        }
        p
    }

    /// Keep only terms whose exponents are all >= 0 (`strict` = all > 0).
    pub fn nonnegative_part(&self, strict: bool) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().all(|&k| if strict { k > 0 } else { k >= 0 }))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Swap the two variables of a bivariate Laurent polynomial.
    pub fn swap_xy(&self) -> Self {
        assert_eq!(self.nvars(), 2);
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (vec![e[1], e[0]], c.clone())).collect(),
        }
    }

    /// Substitute x_v -> 1/x_v.
    pub fn invert_var(&self, v: usize) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2[v] = -e2[v];
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Terms with exponent `k` of variable `v`, kept in the same variable
    /// space with that exponent zeroed.
    pub fn slice_nd(&self, v: usize, k: i32) -> LaurentPoly {
        let mut r = LaurentPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            if e[v] == k {
                let mut e2 = e.clone();
                e2[v] = 0;
                r.add_term(e2, c.clone());
            }
        }
        r
    }

    /// Restrict a bivariate Laurent polynomial to the terms with a given
    /// exponent of variable `v`, as a Laurent polynomial in the other
    /// variable (helper for Hadamard detection).
    pub fn slice(&self, v: usize, k: i32) -> LaurentPoly {
        assert_eq!(self.nvars(), 2);
        let o = 1 - v;
        let mut r = LaurentPoly::zero_n(1);
        r.vars = vec![self.vars[o].clone()];
        for (e, c) in &self.terms {
            if e[v] == k {
                r.add_term(vec![e[o]], c.clone());
            }
        }
        r
    }

    /// Interpret a 1-variable Laurent polynomial as a 2-variable one in
    /// variable `v` of the (x, y) space.
    pub fn embed_1to2(&self, v: usize) -> LaurentPoly {
        assert_eq!(self.nvars(), 1);
        let mut r = LaurentPoly::zero_n(2);
        for (e, c) in &self.terms {
            let mut exps = vec![0, 0];
            exps[v] = e[0];
            r.add_term(exps, c.clone());
        }
        r
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = vec![];
        for (e, c) in self.terms.iter().rev() {
            let mut s = if c.is_one() && e.iter().any(|&k| k != 0) {
                String::new()
            } else {
                format!("{}", c)
            };
            for (i, &k) in e.iter().enumerate() {
                if k == 1 {
                    s += &self.vars[i];
                } else if k != 0 {
                    s += &format!("{}^{}", self.vars[i], k);
                }
            }
            parts.push(if s.is_empty() { "1".into() } else { s });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::num::q;

    #[test]
    fn numerator_clears_negatives() {
        // S = x^-2 + x^-1 y + y^2 + x y^-1 (Example D step polynomial)
        let mut s = LaurentPoly::zero_n(2);
        s.set(vec![-2, 0], q(1));
        s.set(vec![-1, 1], q(1));
        s.set(vec![0, 2], q(1));
        s.set(vec![1, -1], q(1));
        let n = s.numerator();
        // multiplied by x^2 y: y + x y^2 + x^2 y^3 + x^3
        assert_eq!(n.degree(0), 3);
        assert_eq!(n.degree(1), 3);
        assert_eq!(n.eval_q(&[q(2), q(3)]), s.eval_q(&[q(2), q(3)]) * q(4) * q(3));
    }

    #[test]
    fn diff_and_eval() {
        let mut s = LaurentPoly::zero_n(2);
        s.set(vec![-1, 0], q(5));
        s.set(vec![2, 1], q(1));
        let sx = s.diff(0);
        // d/dx (5/x + x^2 y) = -5/x^2 + 2 x y
        assert_eq!(sx.coeff(&[-2, 0]), q(-5));
        assert_eq!(sx.coeff(&[1, 1]), q(2));
        assert_eq!(sx.eval_q(&[q(1), q(1)]), q(-3));
    }
}
