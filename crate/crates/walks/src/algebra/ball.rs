//! Real and complex ball arithmetic with conservative (outward) rounding.

use super::dyadic::Dyadic;
use super::num::Q;
use std::cmp::Ordering;

/// A real interval `center +- radius`. Radii stay small: every operation
/// rounds its center and folds the rounding slack into the radius.
#[derive(Clone, Debug)]
pub struct RBall {
    pub c: Dyadic,
    pub r: Dyadic,
}

impl RBall {
    pub fn exact(c: Dyadic) -> Self {
        RBall { c, r: Dyadic::zero() }
    }

    pub fn zero() -> Self {
        RBall::exact(Dyadic::zero())
    }

    pub fn from_i64(v: i64) -> Self {
        RBall::exact(Dyadic::from_i64(v))
    }

    pub fn from_q(x: &Q, prec: u32) -> Self {
        let (c, r) = Dyadic::from_q(x, prec);
        RBall { c, r }
    }

    pub fn from_f64(v: f64) -> Self {
        RBall::exact(Dyadic::from_f64(v))
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        let (c, e) = self.c.add_round(&o.c, prec);
        let r = self.r.add_exact(&o.r).add_exact(&e);
        RBall { c, r: round_up(r, prec) }
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        self.add(&o.neg(), prec)
    }

    pub fn neg(&self) -> Self {
        RBall { c: self.c.neg(), r: self.r.clone() }
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        let (c, e) = self.c.mul_round(&o.c, prec);
        // |ab - (c1+d1)(c2+d2)| <= |c1| r2 + |c2| r1 + r1 r2 (+ rounding)
        let t1 = self.c.abs().mul_exact(&o.r);
        let t2 = o.c.abs().mul_exact(&self.r);
        let t3 = self.r.mul_exact(&o.r);
        let r = t1.add_exact(&t2).add_exact(&t3).add_exact(&e);
        RBall { c, r: round_up(r, prec) }
    }

    pub fn mul_i64(&self, k: i64, prec: u32) -> Self {
        self.mul(&RBall::from_i64(k), prec)
    }

    /// Reciprocal; requires the ball to exclude zero.
    pub fn inv(&self, prec: u32) -> Self {
        let lo = self.abs_lower();
        assert!(lo.is_positive(), "inversion of ball containing zero");
        let (c, e) = Dyadic::one().div_round(&self.c, prec);
        // |1/x - 1/c| <= r / (|c| lo)
        let denom = self.c.abs().mul_exact(&lo);
        let (t, e2) = self.r.div_round(&denom, prec);
        let r = t.add_exact(&e).add_exact(&e2);
        RBall { c, r: round_up(r, prec) }
    }

    pub fn div(&self, o: &Self, prec: u32) -> Self {
        self.mul(&o.inv(prec), prec)
    }

    /// Square root; requires a non-negative lower bound unless the whole
    /// ball is below the working precision, in which case the result is a
    /// small ball around zero.
    pub fn sqrt(&self, prec: u32) -> Self {
        if self.c.is_negative() || !self.abs_lower().is_positive() {
            // ball touches zero: enclose [0, sqrt(upper)]
            let up = self.upper();
            assert!(
                !up.is_negative(),
                "sqrt of a ball entirely below zero"
            );
            let (s, e) = up.sqrt_round(prec);
            let half = s.add_exact(&e).shift(-1);
            return RBall { c: half.clone(), r: round_up(half, prec) };
        }
        let (s, e) = self.c.sqrt_round(prec);
        // |sqrt(x) - sqrt(c)| <= r / (2 sqrt(lo))
        let (slo, selo) = self.abs_lower().sqrt_round(prec);
        let denom = slo.sub_exact(&selo).shift(1);
        assert!(denom.is_positive());
        let (t, e2) = self.r.div_round(&denom, prec);
        let r = t.add_exact(&e).add_exact(&e2);
        RBall { c: s, r: round_up(r, prec) }
    }

    /// Lower bound of |x| over the ball (clamped at zero).
    pub fn abs_lower(&self) -> Dyadic {
        let v = self.c.abs().sub_exact(&self.r);
        if v.is_negative() {
            Dyadic::zero()
        } else {
            v
        }
    }

    /// Upper bound of |x| over the ball.
    pub fn abs_upper(&self) -> Dyadic {
        self.c.abs().add_exact(&self.r)
    }

    pub fn upper(&self) -> Dyadic {
        self.c.add_exact(&self.r)
    }

    pub fn lower(&self) -> Dyadic {
        self.c.sub_exact(&self.r)
    }

    pub fn contains_zero(&self) -> bool {
        self.c.abs().cmp_dy(&self.r) != Ordering::Greater
    }

    pub fn is_positive_strict(&self) -> bool {
        self.c.is_positive() && self.lower().is_positive()
    }

    pub fn is_negative_strict(&self) -> bool {
        self.c.is_negative() && !self.upper().is_positive() && !self.upper().is_zero()
    }

    pub fn mid_f64(&self) -> f64 {
        self.c.to_f64()
    }

    pub fn rad_f64(&self) -> f64 {
        self.r.to_f64()
    }

    /// True if the two balls intersect.
    pub fn overlaps(&self, o: &Self) -> bool {
        let d = self.c.sub_exact(&o.c).abs();
        let rr = self.r.add_exact(&o.r);
        d.cmp_dy(&rr) != Ordering::Greater
    }
}

fn round_up(r: Dyadic, prec: u32) -> Dyadic {
    let (v, e) = r.round(prec.min(64));
    v.add_exact(&e)
}

/// Rectangular complex ball.
#[derive(Clone, Debug)]
pub struct CBall {
    pub re: RBall,
    pub im: RBall,
}

impl CBall {
    pub fn new(re: RBall, im: RBall) -> Self {
        CBall { re, im }
    }

    pub fn real(re: RBall) -> Self {
        CBall { re, im: RBall::zero() }
    }

    pub fn from_q(x: &Q, prec: u32) -> Self {
        CBall::real(RBall::from_q(x, prec))
    }

    pub fn from_f64s(re: f64, im: f64) -> Self {
        CBall { re: RBall::from_f64(re), im: RBall::from_f64(im) }
    }

    pub fn zero() -> Self {
        CBall { re: RBall::zero(), im: RBall::zero() }
    }

    pub fn one() -> Self {
        CBall::real(RBall::from_i64(1))
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        CBall { re: self.re.add(&o.re, prec), im: self.im.add(&o.im, prec) }
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        CBall { re: self.re.sub(&o.re, prec), im: self.im.sub(&o.im, prec) }
    }

    pub fn neg(&self) -> Self {
        CBall { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        let ac = self.re.mul(&o.re, prec);
        let bd = self.im.mul(&o.im, prec);
        let ad = self.re.mul(&o.im, prec);
        let bc = self.im.mul(&o.re, prec);
        CBall { re: ac.sub(&bd, prec), im: ad.add(&bc, prec) }
    }

    /// Squared modulus as a real ball.
    pub fn norm2(&self, prec: u32) -> RBall {
        let a = self.re.mul(&self.re, prec);
        let b = self.im.mul(&self.im, prec);
        a.add(&b, prec)
    }

    pub fn inv(&self, prec: u32) -> Self {
        let n = self.norm2(prec);
        let ni = n.inv(prec);
        CBall { re: self.re.mul(&ni, prec), im: self.im.neg().mul(&ni, prec) }
    }

    pub fn div(&self, o: &Self, prec: u32) -> Self {
        self.mul(&o.inv(prec), prec)
    }

    pub fn abs_upper(&self, prec: u32) -> Dyadic {
        let n = self.norm2(prec);
        let (s, e) = n.abs_upper().sqrt_round(prec);
        s.add_exact(&e)
    }

    pub fn abs_lower(&self, prec: u32) -> Dyadic {
        let n = self.norm2(prec);
        let lo = n.abs_lower();
        if !n.is_positive_strict() && n.contains_zero() {
            return Dyadic::zero();
        }
        let (s, e) = lo.sqrt_round(prec);
        let v = s.sub_exact(&e);
        if v.is_negative() {
            Dyadic::zero()
        } else {
            v
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// Upper bound on the distance between the two centers plus radii
    /// (conservative separation measure).
    pub fn overlaps(&self, o: &Self) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    /// Euclidean distance between centers, as f64 (diagnostic).
    pub fn center_dist_f64(&self, o: &Self) -> f64 {
        let dr = self.re.mid_f64() - o.re.mid_f64();
        let di = self.im.mid_f64() - o.im.mid_f64();
        (dr * dr + di * di).sqrt()
    }

    pub fn max_rad_f64(&self) -> f64 {
        self.re.rad_f64().max(self.im.rad_f64())
    }

    pub fn mid_f64(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }

    /// Scale radii up to at least `r` (used to enforce clustering floors).
    pub fn inflate(&self, r: &Dyadic) -> Self {
        let mut b = self.clone();
        if b.re.r.cmp_dy(r) == Ordering::Less {
            b.re.r = r.clone();
        }
        if b.im.r.cmp_dy(r) == Ordering::Less {
            b.im.r = r.clone();
        }
        b
    }
}

/// Horner evaluation of a polynomial with complex-ball coefficients.
pub fn eval_cball_poly(coeffs: &[CBall], z: &CBall, prec: u32) -> CBall {
    let mut acc = CBall::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, prec).add(c, prec);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::num::qq;

    #[test]
    fn interval_newton_style_bounds() {
        let third = RBall::from_q(&qq(1, 3), 128);
        assert!(third.contains_zero() == false);
        let nine = third.mul(&third, 128).mul(&RBall::from_i64(9), 128);
        // 9 * (1/3)^2 = 1 within tiny radius
        let one = nine.sub(&RBall::from_i64(1), 128);
        assert!(one.contains_zero());
        assert!(one.r.mag2() < -100);
    }

    #[test]
    fn complex_mul_div() {
        let z = CBall::from_f64s(1.5, -2.0);
        let w = CBall::from_f64s(-0.25, 0.75);
        let p = z.mul(&w, 128);
        let back = p.div(&w, 128);
        assert!(back.sub(&z, 128).contains_zero());
    }

    #[test]
    fn sqrt_ball() {
        let two = RBall::from_i64(2);
        let r = two.sqrt(128);
        let sq = r.mul(&r, 128).sub(&two, 128);
        assert!(sq.contains_zero());
        assert!(r.rad_f64() < 1e-30);
    }
}
