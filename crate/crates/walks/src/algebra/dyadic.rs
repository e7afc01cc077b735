//! Dyadic big-floats: exact values `man * 2^exp` with explicit rounding.
//!
//! Addition and multiplication of dyadics are exact; rounding is a separate
//! step that reports the discarded error, which ball arithmetic folds into
//! its radii. Division and square root return a result within one unit in
//! the last place of the requested precision.

use super::num::Z;
use num_bigint::Sign;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

#[derive(Clone, Debug)]
pub struct Dyadic {
    pub man: Z,
    pub exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { man: Z::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { man: Z::one(), exp: 0 }
    }

    pub fn from_i64(v: i64) -> Self {
        Dyadic { man: Z::from(v), exp: 0 }
    }

    pub fn from_z(v: Z) -> Self {
        Dyadic { man: v, exp: 0 }
    }

    /// 2^e.
    pub fn pow2(e: i64) -> Self {
        Dyadic { man: Z::one(), exp: e }
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    /// Position of the leading bit: value has magnitude in [2^(b-1), 2^b).
    pub fn mag2(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.man.bits() as i64 + self.exp
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic { man: -&self.man, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { man: self.man.abs(), exp: self.exp }
    }

    pub fn shift(&self, k: i64) -> Self {
        Dyadic { man: self.man.clone(), exp: self.exp + k }
    }

    /// Exact addition.
    pub fn add_exact(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.man << (self.exp - e) as u64;
        let b = &o.man << (o.exp - e) as u64;
        Dyadic { man: a + b, exp: e }
    }

    pub fn sub_exact(&self, o: &Self) -> Self {
        self.add_exact(&o.neg())
    }

    /// Exact multiplication.
    pub fn mul_exact(&self, o: &Self) -> Self {
        Dyadic { man: &self.man * &o.man, exp: self.exp + o.exp }
    }

    /// Truncate the mantissa to `prec` bits; returns the rounded value and a
    /// non-negative bound on the discarded amount.
    pub fn round(&self, prec: u32) -> (Self, Self) {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return (self.clone(), Dyadic::zero());
        }
        let cut = (bits - prec as u64) as i64;
        let man = &self.man >> cut as u64;
        let rounded = Dyadic { man, exp: self.exp + cut };
        // truncation toward zero discards less than 2^(exp + cut)
        let err = Dyadic::pow2(self.exp + cut);
        (rounded, err)
    }

    /// Rounded addition: result plus an error bound. Degenerate exponent
    /// gaps are absorbed into the error instead of materializing huge
    /// mantissas.
    pub fn add_round(&self, o: &Self, prec: u32) -> (Self, Self) {
        let gap_guard = prec as i64 + 64;
        if !self.is_zero() && !o.is_zero() {
            let (big, small) = if self.mag2() >= o.mag2() { (self, o) } else { (o, self) };
            if big.mag2() - small.mag2() > gap_guard {
                // |small| < 2^(small.mag2()) <= ulp of the sum at prec
                let (r, e1) = big.round(prec);
                let e2 = Dyadic::pow2(small.mag2() + 1);
                return (r, e1.add_exact(&e2));
            }
        }
        let s = self.add_exact(o);
        s.round(prec)
    }

    pub fn mul_round(&self, o: &Self, prec: u32) -> (Self, Self) {
        self.mul_exact(o).round(prec)
    }

    /// Quotient with |error| < 2^(result ulp); panics on zero divisor.
    pub fn div_round(&self, o: &Self, prec: u32) -> (Self, Self) {
        assert!(!o.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return (Dyadic::zero(), Dyadic::zero());
        }
        // scale numerator so the integer quotient has >= prec+2 bits
        let want = prec as i64 + 2;
        let s = (want - (self.man.bits() as i64 - o.man.bits() as i64)).max(0);
        let num = &self.man << s as u64;
        let q = num / &o.man;
        let exp = self.exp - o.exp - s;
        let err = Dyadic::pow2(exp); // truncation toward zero: < 1 ulp
        (Dyadic { man: q, exp }, err)
    }

    /// Square root (self >= 0) with error below one ulp at `prec` bits.
    pub fn sqrt_round(&self, prec: u32) -> (Self, Self) {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return (Dyadic::zero(), Dyadic::zero());
        }
        // make exponent even and mantissa long enough
        let want_bits = 2 * (prec as i64 + 2);
        let mut s = (want_bits - self.man.bits() as i64).max(0);
        if (self.exp - s) % 2 != 0 {
            s += 1;
        }
        let m = &self.man << s as u64;
        let root = m.sqrt();
        let exp = (self.exp - s) / 2;
        let err = Dyadic::pow2(exp);
        (Dyadic { man: root, exp }, err)
    }

    pub fn cmp_dy(&self, o: &Self) -> Ordering {
        let ds = self.man.sign();
        let os = o.man.sign();
        let sgn = |s: Sign| match s {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        };
        if sgn(ds) != sgn(os) {
            return sgn(ds).cmp(&sgn(os));
        }
        if self.is_zero() {
            return Ordering::Equal;
        }
        // same sign: decide fast with magnitudes when possible
        let (m1, m2) = (self.mag2(), o.mag2());
        if (m1 - m2).abs() > 2 {
            let c = m1.cmp(&m2);
            return if sgn(ds) > 0 { c } else { c.reverse() };
        }
        let d = self.sub_exact(o);
        if d.is_zero() {
            Ordering::Equal
        } else if d.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits() as i64;
        let cut = (bits - 53).max(0);
        let top: Z = &self.man >> cut as u64;
        let f = top.to_f64().unwrap_or(f64::NAN);
        let e = (self.exp + cut).clamp(-2100, 2100) as i32;
        f * 2f64.powi(e)
    }

    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite());
        if v == 0.0 {
            return Dyadic::zero();
        }
        let (m, e) = frexp(v);
        // m in [0.5, 1): scale to 53-bit integer
        let man = (m * 2f64.powi(53)) as i64;
        Dyadic { man: Z::from(man), exp: e as i64 - 53 }
    }

    /// Exact value of a rational is generally impossible; round to prec bits
    /// with the reported error bound.
    pub fn from_q(x: &super::num::Q, prec: u32) -> (Self, Self) {
        let num = Dyadic::from_z(x.numer().clone());
        let den = Dyadic::from_z(x.denom().clone());
        num.div_round(&den, prec)
    }
}

fn frexp(v: f64) -> (f64, i32) {
    let mut e = 0;
    let mut m = v;
    while m.abs() >= 1.0 {
        m /= 2.0;
        e += 1;
    }
    while m.abs() < 0.5 {
        m *= 2.0;
        e -= 1;
    }
    (m, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::num::qq;

    #[test]
    fn arithmetic_round_trips() {
        let a = Dyadic::from_f64(1.375);
        let b = Dyadic::from_f64(-0.5);
        assert_eq!(a.add_exact(&b).to_f64(), 0.875);
        assert_eq!(a.mul_exact(&b).to_f64(), -0.6875);
    }

    #[test]
    fn division_accuracy() {
        let (q, err) = Dyadic::one().div_round(&Dyadic::from_i64(3), 128);
        let back = q.mul_exact(&Dyadic::from_i64(3)).sub_exact(&Dyadic::one());
        assert!(back.abs().mag2() < -120);
        assert!(err.mag2() < -120);
    }

    #[test]
    fn sqrt_accuracy() {
        let (r, err) = Dyadic::from_i64(2).sqrt_round(256);
        let back = r.mul_exact(&r).sub_exact(&Dyadic::from_i64(2));
        // r^2 differs from 2 by about 2 r ulp
        assert!(back.abs().mag2() < -250);
        assert!(err.mag2() < -250);
    }

    #[test]
    fn rational_conversion() {
        let (v, err) = Dyadic::from_q(&qq(1, 7), 200);
        assert!((v.to_f64() - 1.0 / 7.0).abs() < 1e-15);
        assert!(err.mag2() < -190);
    }
}
