//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending degree order; the vector is empty for
//! the zero polynomial and otherwise ends with a nonzero coefficient.
//! Resultants and gcds run on integer primitive parts through the
//! subresultant (fraction-free) remainder sequence.

use super::num::{content, denominator_lcm, q, Q, Z};
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    pub coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn x() -> Self {
        UniPoly::new(vec![Q::zero(), Q::one()])
    }

    pub fn monomial(c: Q, d: usize) -> Self {
        let mut v = vec![Q::zero(); d + 1];
        v[d] = c;
        UniPoly::new(v)
    }

    pub fn from_int_coeffs(cs: &[i64]) -> Self {
        UniPoly::new(cs.iter().map(|&c| q(c)).collect())
    }

    pub fn from_z_coeffs(cs: Vec<Z>) -> Self {
        UniPoly::new(cs.into_iter().map(Q::from_integer).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn coeff(&self, d: usize) -> Q {
        self.coeffs.get(d).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + o.coeff(i));
        }
        UniPoly::new(v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) - o.coeff(i));
        }
        UniPoly::new(v)
    }

    pub fn neg(&self) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        UniPoly::new(v)
    }

    pub fn scale(&self, c: &Q) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * q(i as i64 + 1))
                .collect(),
        )
    }

    /// Quotient and remainder over the rationals.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        if self.deg() < dd || self.is_zero() {
            return (UniPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Q::zero(); rem.len() - dd];
        let lc = d.leading().unwrap().clone();
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let f = &rem[i] / &lc;
            quo[i - dd] = f.clone();
            rem[i] = Q::zero();
            for (j, c) in d.coeffs.iter().enumerate().take(dd) {
                let t = &f * c;
                rem[i - dd + j] -= t;
            }
        }
        (UniPoly::new(quo), UniPoly::new(rem))
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// True iff `d` divides `self` exactly.
    pub fn divisible_by(&self, d: &Self) -> bool {
        self.div_rem(d).1.is_zero()
    }

    pub fn eval_q(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + super::num::q_to_f64(c);
        }
        acc
    }

    /// Integer primitive part: clears denominators, divides by the integer
    /// content, and makes the leading coefficient positive.
    pub fn primitive_z(&self) -> Vec<Z> {
        if self.is_zero() {
            return vec![];
        }
        let l = denominator_lcm(&self.coeffs);
        let mut v: Vec<Z> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let mut g = content(&v);
        if g.is_zero() {
            g = Z::one();
        }
        if v.last().unwrap().is_negative() {
            g = -g;
        }
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
        v
    }

    /// Monic associate.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&(Q::one() / l)),
        }
    }

    /// Primitive-integer associate (content-free, positive leading coefficient).
    pub fn primitive(&self) -> Self {
        UniPoly::from_z_coeffs(self.primitive_z())
    }

    /// gcd, returned primitive with positive leading coefficient. Small
    /// inputs run the primitive PRS; large ones the modular CRT engine.
    pub fn gcd(&self, o: &Self) -> Self {
        let a = self.primitive_z();
        let b = o.primitive_z();
        let big = a.len().min(b.len()) > 12
            || a.iter().chain(&b).any(|z| z.bits() > 512);
        if big {
            UniPoly::from_z_coeffs(super::modres::zgcd_modular(&a, &b))
        } else {
            UniPoly::from_z_coeffs(zgcd_poly(a, b))
        }
    }

    /// Squarefree part `self / gcd(self, self')`, monic-normalized.
    pub fn squarefree_part(&self) -> Self {
        assert!(!self.is_zero(), "squarefree part of zero");
        if self.deg() == 0 {
            return UniPoly::one();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    /// Resultant of `self` and `o` (both over Q) with respect to the variable.
    pub fn resultant(&self, o: &Self) -> Q {
        if self.is_zero() || o.is_zero() {
            return Q::zero();
        }
        if self.deg() == 0 {
            return self.leading().unwrap().pow(o.deg() as i32);
        }
        if o.deg() == 0 {
            return o.leading().unwrap().pow(self.deg() as i32);
        }
        // scale to integer polynomials: Res(c*A, B) = c^deg(B) * Res(A, B)
        let la = denominator_lcm(&self.coeffs);
        let lb = denominator_lcm(&o.coeffs);
        let ai: Vec<Z> = self.coeffs.iter().map(|c| c.numer() * (&la / c.denom())).collect();
        let bi: Vec<Z> = o.coeffs.iter().map(|c| c.numer() * (&lb / c.denom())).collect();
        let r = super::prs::resultant(&ai, &bi);
        let scale = Q::new(Z::one(), la.pow(o.deg() as u32))
            * Q::new(Z::one(), lb.pow(self.deg() as u32));
        Q::from_integer(r) * scale
    }

    /// Reverse the coefficient order: x^deg * p(1/x).
    pub fn reversed(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        UniPoly::new(v)
    }

    /// Substitute x -> x^k.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Q::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        UniPoly::new(v)
    }

    /// Compose self(g).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&UniPoly::constant(c.clone()));
        }
        acc
    }
}

/// Integer polynomial gcd via the primitive PRS; output primitive with
/// positive leading coefficient.
fn zgcd_poly(mut a: Vec<Z>, mut b: Vec<Z>) -> Vec<Z> {
    use super::prs::{pseudo_rem, trim};
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_empty() {
            let mut g = content(&a);
            if a.last().unwrap().is_negative() {
                g = -g;
            }
            for c in a.iter_mut() {
                *c = &*c / &g;
            }
            return a;
        }
        if b.len() == 1 {
            return vec![Z::one()];
        }
        let mut r = pseudo_rem(&a, &b);
        a = b;
        // primitive part each round keeps coefficients small
        if !r.is_empty() {
            let g = content(&r);
            if !g.is_one() {
                for c in r.iter_mut() {
                    *c = &*c / &g;
                }
            }
        }
        b = r;
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("z"))
    }
}

impl UniPoly {
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = vec![];
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = if c.is_one() && i > 0 {
                String::new()
            } else if (-c.clone()).is_one() && i > 0 {
                "-".into()
            } else {
                format!("{}", c)
            };
            let vs = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            let sep = if !cs.is_empty() && !vs.is_empty() { "*" } else { "" };
            parts.push(format!("{}{}{}", cs, sep, vs));
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_int_coeffs(cs)
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = p(&[1, 0, -3, 2, 5]);
        let b = p(&[2, 1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn gcd_of_common_factor() {
        let f = p(&[-1, 1]); // x - 1
        let a = f.mul(&p(&[3, 0, 1]));
        let b = f.mul(&p(&[5, 2]));
        let g = a.gcd(&b);
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn squarefree_part_examples() {
        // (z-1)^2 -> z-1
        let a = p(&[-1, 1]).mul(&p(&[-1, 1]));
        assert_eq!(a.squarefree_part(), p(&[-1, 1]).monic());
        // z^3 - z is already squarefree
        let b = p(&[0, -1, 0, 1]);
        assert_eq!(b.squarefree_part(), b.monic());
        // (z^2+1)^3 -> z^2 + 1
        let c = p(&[1, 0, 1]).pow(3);
        assert_eq!(c.squarefree_part(), p(&[1, 0, 1]).monic());
    }

    #[test]
    fn resultant_small_cases() {
        // Res_X(X-2, X^2-u) at u symbolic is handled by mpoly; here u = 9 -> 4-9
        let a = p(&[-2, 1]);
        let b = p(&[-9, 0, 1]);
        assert_eq!(a.resultant(&b), q(-5)); // 4 - 9
        // Res(X^2+1, X+1) = 2
        assert_eq!(p(&[1, 0, 1]).resultant(&p(&[1, 1])), q(2));
    }

    #[test]
    fn resultant_multiplicative() {
        let a = p(&[1, 2, 0, 1]);
        let b = p(&[-3, 1, 4]);
        let c = p(&[2, -1, 0, 0, 1]);
        let lhs = a.mul(&b).resultant(&c);
        let rhs = a.resultant(&c) * b.resultant(&c);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_vs_roots() {
        // Res(x^2-4, x-1) = (1-2)(1+2) * 1 = -3
        assert_eq!(p(&[-4, 0, 1]).resultant(&p(&[-1, 1])), q(-3));
    }
}
