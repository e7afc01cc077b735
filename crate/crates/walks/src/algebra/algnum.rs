//! Exact arithmetic in Q[z]/(m(z)) with dynamic refinement ("D5"-style
//! evaluation): the modulus is any squarefree polynomial with the number of
//! interest among its roots, tracked by a certified complex ball. When a
//! zero test or inversion meets a zero divisor, the modulus splits and the
//! ball decides which factor carries our root.

use super::ball::{eval_cball_poly, CBall};
use super::num::Q;
use super::roots::complex_roots_tight;
use super::unipoly::UniPoly;
use num_traits::One;
use std::cell::{Cell, RefCell};
use std::rc::Rc;

pub struct NumberField {
    modulus: RefCell<UniPoly>,
    root: RefCell<CBall>,
    prec: Cell<u32>,
}

impl NumberField {
    /// `modulus` squarefree with exactly one root inside `root`'s enclosure.
    pub fn new(modulus: UniPoly, root: CBall, prec: u32) -> Rc<Self> {
        let m = modulus.monic();
        Rc::new(NumberField {
            modulus: RefCell::new(m),
            root: RefCell::new(root),
            prec: Cell::new(prec),
        })
    }

    /// The rationals as a degenerate field (modulus z - 0; every element is
    /// a constant).
    pub fn rationals(prec: u32) -> Rc<Self> {
        NumberField::new(UniPoly::x(), CBall::zero(), prec)
    }

    pub fn degree(&self) -> usize {
        self.modulus.borrow().deg()
    }

    pub fn modulus_poly(&self) -> UniPoly {
        self.modulus.borrow().clone()
    }

    pub fn root_ball(&self) -> CBall {
        self.root.borrow().clone()
    }

    pub fn prec(&self) -> u32 {
        self.prec.get()
    }
}

#[derive(Clone)]
pub struct AlgElem {
    field: Rc<NumberField>,
    rep: UniPoly,
}

impl std::fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let b = self.to_ball();
        write!(f, "alg({}, ~{:+.6}{:+.6}i)", self.rep.display("z"), b.re.mid_f64(), b.im.mid_f64())
    }
}

pub trait FieldHandle {
    fn constant(&self, v: Q) -> AlgElem;
    fn generator(&self) -> AlgElem;
}

impl FieldHandle for Rc<NumberField> {
    fn constant(&self, v: Q) -> AlgElem {
        AlgElem { field: self.clone(), rep: UniPoly::constant(v) }
    }

    fn generator(&self) -> AlgElem {
        AlgElem { field: self.clone(), rep: UniPoly::x() }
    }
}

impl AlgElem {
    pub fn field(&self) -> Rc<NumberField> {
        self.field.clone()
    }

    pub fn rep(&self) -> &UniPoly {
        &self.rep
    }

    fn reduced(&self) -> UniPoly {
        let m = self.field.modulus.borrow();
        if self.rep.deg() >= m.deg() && !self.rep.is_zero() {
            self.rep.div_rem(&m).1
        } else {
            self.rep.clone()
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        AlgElem { field: self.field.clone(), rep: self.reduced().add(&o.reduced()) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        AlgElem { field: self.field.clone(), rep: self.reduced().sub(&o.reduced()) }
    }

    pub fn neg(&self) -> Self {
        AlgElem { field: self.field.clone(), rep: self.rep.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = self.field.modulus.borrow().clone();
        let p = self.reduced().mul(&o.reduced()).div_rem(&m).1;
        AlgElem { field: self.field.clone(), rep: p }
    }

    pub fn mul_q(&self, c: &Q) -> Self {
        AlgElem { field: self.field.clone(), rep: self.rep.scale(c) }
    }

    /// Certified zero test at the tracked root; may split the modulus.
    pub fn is_zero(&self) -> bool {
        let rep = self.reduced();
        if rep.is_zero() {
            return true;
        }
        if rep.deg() == 0 {
            return false;
        }
        let g = {
            let m = self.field.modulus.borrow();
            rep.gcd(&m)
        };
        if g.deg() == 0 {
            return false;
        }
        // rep vanishes on the roots of g; decide whether ours is among them
        let m = self.field.modulus.borrow().clone();
        let h = m.exact_div(&g).monic();
        let root_in_g = self.field_pick_factor(&g.monic(), &h);
        if root_in_g {
            *self.field.modulus.borrow_mut() = g.monic();
            true
        } else {
            *self.field.modulus.borrow_mut() = h;
            false
        }
    }

    /// Decide whether the tracked root is a root of `g` (vs its cofactor
    /// `h`), escalating precision until the enclosure separates them.
    fn field_pick_factor(&self, g: &UniPoly, h: &UniPoly) -> bool {
        loop {
            let prec = self.field.prec.get();
            let ball = self.field.root.borrow().clone();
            let gv = eval_poly_ball(g, &ball, prec);
            let hv = eval_poly_ball(h, &ball, prec);
            let g_nonzero = !gv.contains_zero();
            let h_nonzero = !hv.contains_zero();
            if g_nonzero && !h_nonzero {
                return false;
            }
            if h_nonzero && !g_nonzero {
                return true;
            }
            if g_nonzero && h_nonzero {
                // the enclosure contains a root of the product but neither
                // factor vanishes: the ball is stale; refine below
            }
            self.refine_root();
        }
    }

    /// Tighten the root enclosure against the current modulus.
    fn refine_root(&self) {
        let prec = self.field.prec.get().saturating_mul(2).min(4096);
        if prec == self.field.prec.get() {
            panic!(
                "algebraic root refinement exhausted at {} bits (radius {:e})",
                prec,
                self.field.root.borrow().max_rad_f64()
            );
        }
        self.field.prec.set(prec);
        let m = self.field.modulus.borrow().clone();
        let min_bits = (prec / 2) as i64;
        let roots = complex_roots_tight(&m, prec, min_bits)
            .expect("root refinement failed to certify");
        let cur = self.field.root.borrow().clone();
        let mut hits: Vec<&CBall> = roots.iter().filter(|z| z.overlaps(&cur)).collect();
        if hits.is_empty() {
            // fall back to the nearest center: the enclosure invariant says
            // one root lies inside; numeric drift may need the closest match
            let mut best = (f64::INFINITY, 0usize);
            for (k, z) in roots.iter().enumerate() {
                let d = z.center_dist_f64(&cur);
                if d < best.0 {
                    best = (d, k);
                }
            }
            hits = vec![&roots[best.1]];
        }
        // pick the hit closest to the current center
        let mut best = (f64::INFINITY, 0usize);
        for (k, z) in hits.iter().enumerate() {
            let d = z.center_dist_f64(&cur);
            if d < best.0 {
                best = (d, k);
            }
        }
        *self.field.root.borrow_mut() = hits[best.1].clone();
    }

    /// Multiplicative inverse; panics on (certified) zero.
    pub fn inv(&self) -> Self {
        loop {
            let rep = self.reduced();
            assert!(!rep.is_zero(), "inversion of zero algebraic number");
            if rep.deg() == 0 {
                return AlgElem {
                    field: self.field.clone(),
                    rep: UniPoly::constant(Q::one() / rep.coeff(0)),
                };
            }
            let m = self.field.modulus.borrow().clone();
            let (g, s, _t) = xgcd(&rep, &m);
            if g.deg() == 0 {
                let c = g.coeff(0);
                let inv = s.scale(&(Q::one() / c)).div_rem(&m).1;
                return AlgElem { field: self.field.clone(), rep: inv };
            }
            // zero divisor: split the modulus and retry
            let h = m.exact_div(&g).monic();
            let root_in_g = self.field_pick_factor(&g.monic(), &h);
            if root_in_g {
                *self.field.modulus.borrow_mut() = g.monic();
                // rep is a multiple of ... no: rep and g share a root; if our
                // root is that shared one, rep vanishes there
                if self.is_zero() {
                    panic!("inversion of zero algebraic number (after split)");
                }
            } else {
                *self.field.modulus.borrow_mut() = h;
            }
        }
    }

    /// Enclosure of the value at the tracked root.
    pub fn to_ball(&self) -> CBall {
        let prec = self.field.prec.get();
        let ball = self.field.root.borrow().clone();
        eval_poly_ball(&self.reduced(), &ball, prec)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        self.to_ball().mid_f64()
    }
}

fn eval_poly_ball(p: &UniPoly, z: &CBall, prec: u32) -> CBall {
    let coeffs: Vec<CBall> = p.coeffs.iter().map(|c| CBall::from_q(c, prec)).collect();
    if coeffs.is_empty() {
        return CBall::zero();
    }
    eval_cball_poly(&coeffs, z, prec)
}

/// Extended gcd over Q[x]: returns (g, s, t) with s a + t b = g.
pub fn xgcd(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = UniPoly::one();
    let mut s1 = UniPoly::zero();
    let mut t0 = UniPoly::zero();
    let mut t1 = UniPoly::one();
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    (r0, s0, t0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::num::{q, qq};

    fn sqrt2_field() -> Rc<NumberField> {
        // modulus z^2 - 2, tracked root +sqrt(2)
        let m = UniPoly::from_int_coeffs(&[-2, 0, 1]);
        let root = CBall::from_f64s(1.4142135623730951, 0.0)
            .inflate(&super::super::dyadic::Dyadic::pow2(-40));
        NumberField::new(m, root, 256)
    }

    #[test]
    fn quadratic_field_arithmetic() {
        let f = sqrt2_field();
        let r = f.generator();
        // (sqrt2)^2 = 2
        let two = r.mul(&r);
        assert!(two.sub(&f.constant(q(2))).is_zero());
        // 1/sqrt2 = sqrt2/2
        let inv = r.inv();
        assert!(inv.sub(&r.mul_q(&qq(1, 2))).is_zero());
    }

    #[test]
    fn splitting_on_zero_divisor() {
        // modulus (z^2-2)(z-3), track root 3; z - 3 is a zero divisor
        let m = UniPoly::from_int_coeffs(&[-2, 0, 1]).mul(&UniPoly::from_int_coeffs(&[-3, 1]));
        let root = CBall::from_f64s(3.0, 0.0).inflate(&super::super::dyadic::Dyadic::pow2(-40));
        let f = NumberField::new(m, root, 256);
        let z = f.generator();
        let e = z.sub(&f.constant(q(3)));
        assert!(e.is_zero());
        assert_eq!(f.degree(), 1);
        // after the split, arithmetic continues in Q(3) = Q
        let w = f.generator().mul(&f.generator());
        assert!(w.sub(&f.constant(q(9))).is_zero());
    }

    #[test]
    fn nonzero_survives_split() {
        // track sqrt(2) in the same composite modulus; z - 3 is nonzero there
        let m = UniPoly::from_int_coeffs(&[-2, 0, 1]).mul(&UniPoly::from_int_coeffs(&[-3, 1]));
        let root = CBall::from_f64s(1.4142135623730951, 0.0)
            .inflate(&super::super::dyadic::Dyadic::pow2(-40));
        let f = NumberField::new(m, root, 256);
        let z = f.generator();
        let e = z.sub(&f.constant(q(3)));
        assert!(!e.is_zero());
        assert_eq!(f.degree(), 2);
        let sq = f.generator().mul(&f.generator());
        assert!(sq.sub(&f.constant(q(2))).is_zero());
    }
}
