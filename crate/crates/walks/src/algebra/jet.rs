//! Truncated bivariate jets (power series in two deviation variables cut at
//! a total degree), generic over the coefficient scalar: exact rationals,
//! elements of a dynamically-refined number field, or complex balls.

use super::algnum::{AlgElem, FieldHandle};
use super::ball::CBall;
use super::num::Q;
use std::collections::BTreeMap;

/// Coefficient interface for jets. `is_zero` may refine shared context (for
/// algebraic numbers); for balls it means structural zero, so stored
/// near-zero balls survive as information.
pub trait Scalar: Clone + std::fmt::Debug {
    const EXACT: bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_q_like(&self, v: &Q) -> Self;
}

impl Scalar for Q {
    const EXACT: bool = true;
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn inv(&self) -> Self {
        use num_traits::One;
        Q::one() / self.clone()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        use num_traits::Zero;
        Q::zero()
    }
    fn one_like(&self) -> Self {
        use num_traits::One;
        Q::one()
    }
    fn from_q_like(&self, v: &Q) -> Self {
        v.clone()
    }
}

impl Scalar for AlgElem {
    const EXACT: bool = true;
    fn add(&self, o: &Self) -> Self {
        AlgElem::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        AlgElem::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        AlgElem::mul(self, o)
    }
    fn neg(&self) -> Self {
        AlgElem::neg(self)
    }
    fn inv(&self) -> Self {
        AlgElem::inv(self)
    }
    fn is_zero(&self) -> bool {
        AlgElem::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        self.field().constant(Q::from_integer(0.into()))
    }
    fn one_like(&self) -> Self {
        self.field().constant(Q::from_integer(1.into()))
    }
    fn from_q_like(&self, v: &Q) -> Self {
        self.field().constant(v.clone())
    }
}

/// Complex ball carrying its working precision, so jets can thread the
/// precision through scalar operations.
#[derive(Clone, Debug)]
pub struct PrecBall {
    pub b: CBall,
    pub prec: u32,
}

impl Scalar for PrecBall {
    const EXACT: bool = false;
    fn add(&self, o: &Self) -> Self {
        PrecBall { b: self.b.add(&o.b, self.prec), prec: self.prec }
    }
    fn sub(&self, o: &Self) -> Self {
        PrecBall { b: self.b.sub(&o.b, self.prec), prec: self.prec }
    }
    fn mul(&self, o: &Self) -> Self {
        PrecBall { b: self.b.mul(&o.b, self.prec), prec: self.prec }
    }
    fn neg(&self) -> Self {
        PrecBall { b: self.b.neg(), prec: self.prec }
    }
    fn inv(&self) -> Self {
        PrecBall { b: self.b.inv(self.prec), prec: self.prec }
    }
    fn is_zero(&self) -> bool {
        self.b.re.c.is_zero() && self.b.im.c.is_zero() && self.b.max_rad_f64() == 0.0
    }
    fn zero_like(&self) -> Self {
        PrecBall { b: CBall::zero(), prec: self.prec }
    }
    fn one_like(&self) -> Self {
        PrecBall { b: CBall::one(), prec: self.prec }
    }
    fn from_q_like(&self, v: &Q) -> Self {
        PrecBall { b: CBall::from_q(v, self.prec), prec: self.prec }
    }
}

/// Bivariate jet truncated at total degree `order`; keys `(i, j)` with
/// `i + j <= order`; exact-tag coefficients never store zeros.
#[derive(Clone, Debug)]
pub struct Jet2<T: Scalar> {
    pub order: usize,
    pub c: BTreeMap<(u8, u8), T>,
}

impl<T: Scalar> Jet2<T> {
    pub fn zero(order: usize) -> Self {
        Jet2 { order, c: BTreeMap::new() }
    }

    pub fn constant(order: usize, v: T) -> Self {
        let mut j = Jet2::zero(order);
        j.set(0, 0, v);
        j
    }

    /// The deviation variable u (k = 0) or v (k = 1).
    pub fn var(order: usize, k: usize, one: T) -> Self {
        let mut j = Jet2::zero(order);
        if k == 0 {
            j.set(1, 0, one);
        } else {
            j.set(0, 1, one);
        }
        j
    }

    pub fn set(&mut self, i: u8, j: u8, v: T) {
        if (i as usize + j as usize) > self.order {
            return;
        }
        if v.is_zero() {
            self.c.remove(&(i, j));
        } else {
            self.c.insert((i, j), v);
        }
    }

    pub fn get(&self, i: u8, j: u8) -> Option<&T> {
        self.c.get(&(i, j))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for ((i, j), v) in &o.c {
            let nv = match r.c.get(&(*i, *j)) {
                Some(w) => w.add(v),
                None => v.clone(),
            };
            if nv.is_zero() {
                r.c.remove(&(*i, *j));
            } else {
                r.c.insert((*i, *j), nv);
            }
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Jet2 {
            order: self.order,
            c: self.c.iter().map(|(k, v)| (*k, v.neg())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r: Jet2<T> = Jet2::zero(self.order);
        for ((ia, ja), va) in &self.c {
            for ((ib, jb), vb) in &o.c {
                let i = *ia as usize + *ib as usize;
                let j = *ja as usize + *jb as usize;
                if i + j > self.order {
                    continue;
                }
                let t = va.mul(vb);
                let key = (i as u8, j as u8);
                let nv = match r.c.get(&key) {
                    Some(w) => w.add(&t),
                    None => t,
                };
                if nv.is_zero() {
                    r.c.remove(&key);
                } else {
                    r.c.insert(key, nv);
                }
            }
        }
        r
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Jet2::zero(self.order);
        }
        let mut r = Jet2::zero(self.order);
        for (k, v) in &self.c {
            let nv = v.mul(s);
            if !nv.is_zero() {
                r.c.insert(*k, nv);
            }
        }
        r
    }

    pub fn pow(&self, e: usize) -> Self {
        let proto = self.any_scalar();
        let mut acc = Jet2::constant(self.order, proto.one_like());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn any_scalar(&self) -> T {
        self.c
            .values()
            .next()
            .cloned()
            .expect("cannot mint constants from an empty jet")
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn inv_jet(&self) -> Self {
        let c0 = self.get(0, 0).expect("inverse of jet with zero constant term").clone();
        let c0inv = c0.inv();
        let mut inv = Jet2::constant(self.order, c0inv);
        // Newton on 1/x: inv <- inv (2 - self * inv)
        let two = Jet2::constant(self.order, c0.one_like().add(&c0.one_like()));
        let steps = (self.order as f64 + 1.0).log2().ceil() as usize + 1;
        for _ in 0..steps {
            let t = two.sub(&self.mul(&inv));
            inv = inv.mul(&t);
        }
        inv
    }

    /// Substitute (u, v) -> (a(u,v), b(u,v)); both substituted jets must have
    /// zero constant term for the truncation to be exact.
    pub fn compose(&self, a: &Jet2<T>, b: &Jet2<T>) -> Self {
        debug_assert!(a.get(0, 0).is_none() && b.get(0, 0).is_none());
        let n = self.order;
        // power tables
        let proto = match self.c.values().next() {
            Some(v) => v.clone(),
            None => return Jet2::zero(n),
        };
        let one = Jet2::constant(n, proto.one_like());
        let mut pa = vec![one.clone()];
        let mut pb = vec![one.clone()];
        for k in 1..=n {
            pa.push(pa[k - 1].mul(a));
            pb.push(pb[k - 1].mul(b));
        }
        let mut r = Jet2::zero(n);
        for ((i, j), v) in &self.c {
            let t = pa[*i as usize].mul(&pb[*j as usize]);
            r = r.add(&t.scale(v));
        }
        r
    }

    /// Truncate to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        Jet2 {
            order,
            c: self
                .c
                .iter()
                .filter(|((i, j), _)| (*i as usize + *j as usize) <= order)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Coefficients of total degree exactly d.
    pub fn homogeneous(&self, d: usize) -> Vec<((u8, u8), T)> {
        self.c
            .iter()
            .filter(|((i, j), _)| (*i as usize + *j as usize) == d)
            .map(|(k, v)| (*k, v.clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::num::{q, qq};

    #[test]
    fn geometric_inverse() {
        // 1/(1 - u) = 1 + u + u^2 + u^3
        let one = Jet2::constant(3, q(1));
        let u = Jet2::var(3, 0, q(1));
        let j = one.sub(&u);
        let inv = j.inv_jet();
        for k in 0..=3u8 {
            assert_eq!(inv.get(k, 0), Some(&q(1)));
        }
    }

    #[test]
    fn compose_truncates() {
        // f(u,v) = u + v^2; substitute u -> v + v^2*3/2, v -> u
        let mut f = Jet2::zero(3);
        f.set(1, 0, q(1));
        f.set(0, 2, q(1));
        let mut a = Jet2::zero(3);
        a.set(0, 1, q(1));
        a.set(0, 2, qq(3, 2));
        let b = Jet2::var(3, 0, q(1));
        let g = f.compose(&a, &b);
        assert_eq!(g.get(0, 1), Some(&q(1)));
        assert_eq!(g.get(0, 2), Some(&qq(3, 2)));
        assert_eq!(g.get(2, 0), Some(&q(1)));
    }
}
