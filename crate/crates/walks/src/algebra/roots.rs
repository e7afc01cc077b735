//! Certified complex root isolation.
//!
//! Approximations come from Aberth–Ehrlich iteration (f64, then dyadic
//! Newton polishing); inclusion radii use the Weierstrass bound: the disks
//! `D(z_i, n |p(z_i)| / |lc prod_{j!=i} (z_i - z_j)|)` jointly contain all
//! roots, one per disk when pairwise disjoint (Smith's theorem). Radii are
//! evaluated in ball arithmetic, so interval coefficient inputs are handled
//! conservatively.

use super::ball::{eval_cball_poly, CBall, RBall};
use super::dyadic::Dyadic;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootStatus {
    Isolated,
    Cluster,
}

#[derive(Clone, Debug)]
pub struct RootBall {
    pub z: CBall,
    pub status: RootStatus,
}

// ---- f64 complex helpers ----

type C64 = (f64, f64);

fn cadd(a: C64, b: C64) -> C64 {
    (a.0 + b.0, a.1 + b.1)
}
fn csub(a: C64, b: C64) -> C64 {
    (a.0 - b.0, a.1 - b.1)
}
fn cmul(a: C64, b: C64) -> C64 {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}
fn cdiv(a: C64, b: C64) -> C64 {
    let n = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n)
}
fn cabs(a: C64) -> f64 {
    (a.0 * a.0 + a.1 * a.1).sqrt()
}

fn eval_c64(coeffs: &[C64], z: C64) -> (C64, C64) {
    // value and derivative by Horner
    let mut v = (0.0, 0.0);
    let mut d = (0.0, 0.0);
    for c in coeffs.iter().rev() {
        d = cadd(cmul(d, z), v);
        v = cadd(cmul(v, z), *c);
    }
    (v, d)
}

/// Aberth–Ehrlich in f64. Coefficients in ascending order, lc != 0.
fn aberth_f64(coeffs: &[C64], iters: usize) -> Vec<C64> {
    let n = coeffs.len() - 1;
    let lc = cabs(coeffs[n]);
    let mut radius = 0.0f64;
    for c in &coeffs[..n] {
        radius = radius.max(cabs(*c) / lc);
    }
    let radius = 1.0 + radius;
    let mut zs: Vec<C64> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.41;
            (radius * th.cos(), radius * th.sin())
        })
        .collect();
    for _ in 0..iters {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval_c64(coeffs, zs[i]);
            if cabs(v) == 0.0 {
                continue;
            }
            let newton = if cabs(d) > 0.0 { cdiv(v, d) } else { (1e-12, 1e-12) };
            let mut s = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let diff = csub(zs[i], zs[j]);
                    if cabs(diff) > 1e-300 {
                        s = cadd(s, cdiv((1.0, 0.0), diff));
                    }
                }
            }
            let denom = csub((1.0, 0.0), cmul(newton, s));
            let w = if cabs(denom) > 1e-300 { cdiv(newton, denom) } else { newton };
            zs[i] = csub(zs[i], w);
            moved = moved.max(cabs(w));
        }
        if moved < 1e-14 {
            break;
        }
    }
    zs
}

// ---- dyadic complex Newton polish ----

#[derive(Clone)]
struct CDy {
    re: Dyadic,
    im: Dyadic,
}

impl CDy {
    fn from_c64(z: C64) -> Self {
        CDy { re: Dyadic::from_f64(z.0), im: Dyadic::from_f64(z.1) }
    }
    fn add(&self, o: &Self, p: u32) -> Self {
        CDy { re: self.re.add_round(&o.re, p).0, im: self.im.add_round(&o.im, p).0 }
    }
    fn sub(&self, o: &Self, p: u32) -> Self {
        CDy {
            re: self.re.add_round(&o.re.neg(), p).0,
            im: self.im.add_round(&o.im.neg(), p).0,
        }
    }
    fn mul(&self, o: &Self, p: u32) -> Self {
        let ac = self.re.mul_round(&o.re, p).0;
        let bd = self.im.mul_round(&o.im, p).0;
        let ad = self.re.mul_round(&o.im, p).0;
        let bc = self.im.mul_round(&o.re, p).0;
        CDy { re: ac.add_round(&bd.neg(), p).0, im: ad.add_round(&bc, p).0 }
    }
    fn div(&self, o: &Self, p: u32) -> Self {
        let n = o.re.mul_round(&o.re, p).0.add_round(&o.im.mul_round(&o.im, p).0, p).0;
        let conj = CDy { re: o.re.clone(), im: o.im.neg() };
        let t = self.mul(&conj, p);
        CDy { re: t.re.div_round(&n, p).0, im: t.im.div_round(&n, p).0 }
    }
}

fn eval_cdy(coeffs: &[CDy], z: &CDy, p: u32) -> (CDy, CDy) {
    let mut v = CDy { re: Dyadic::zero(), im: Dyadic::zero() };
    let mut d = v.clone();
    for c in coeffs.iter().rev() {
        d = d.mul(z, p).add(&v, p);
        v = v.mul(z, p).add(c, p);
    }
    (v, d)
}

/// Certified roots of a rational-coefficient polynomial. Returns `deg p`
/// balls; overlapping disks are flagged as clusters rather than split.
pub fn complex_roots(p: &UniPoly, prec: u32) -> Result<Vec<RootBall>> {
    let cb: Vec<CBall> = p
        .coeffs
        .iter()
        .map(|c| CBall::from_q(c, prec + 32))
        .collect();
    complex_roots_cball(&cb, prec)
}

/// Certified roots of a complex-ball-coefficient polynomial. The inclusion
/// radii account for the coefficient intervals, so they are valid for every
/// polynomial inside the balls (in particular the exact one).
pub fn complex_roots_cball(coeffs: &[CBall], prec: u32) -> Result<Vec<RootBall>> {
    let mut coeffs: Vec<CBall> = coeffs.to_vec();
    // drop zero leading coefficients when certified zero (exact balls only)
    while coeffs.len() > 1 {
        let lc = coeffs.last().unwrap();
        if lc.contains_zero() {
            if lc.max_rad_f64() == 0.0 {
                coeffs.pop();
                continue;
            }
            return Err(Error::NumericAmbiguity { radius: lc.max_rad_f64() });
        }
        break;
    }
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(vec![]);
    }
    let work = prec + 64;
    let c64: Vec<C64> = coeffs.iter().map(|c| c.mid_f64()).collect();
    let approx = aberth_f64(&c64, 400);
    // dyadic Newton polishing against the center polynomial
    let centers: Vec<CDy> = {
        let cc: Vec<CDy> = coeffs
            .iter()
            .map(|c| CDy { re: c.re.c.clone(), im: c.im.c.clone() })
            .collect();
        let mut zs: Vec<CDy> = approx.iter().map(|&z| CDy::from_c64(z)).collect();
        let rounds = (work as f64 / 40.0).log2().ceil().max(1.0) as usize + 3;
        for z in zs.iter_mut() {
            for _ in 0..rounds {
                let (v, d) = eval_cdy(&cc, z, work);
                if d.re.is_zero() && d.im.is_zero() {
                    break;
                }
                let step = v.div(&d, work);
                *z = z.sub(&step, work);
            }
        }
        zs
    };
    // Weierstrass inclusion radii in ball arithmetic
    let zb: Vec<CBall> = centers
        .iter()
        .map(|z| CBall::new(RBall::exact(z.re.clone()), RBall::exact(z.im.clone())))
        .collect();
    let mut out = vec![];
    for i in 0..n {
        let v = eval_cball_poly(&coeffs, &zb[i], work);
        let mut denom = coeffs[n].clone();
        for j in 0..n {
            if j != i {
                denom = denom.mul(&zb[i].sub(&zb[j], work), work);
            }
        }
        let d_lo = denom.abs_lower(work);
        if !d_lo.is_positive() {
            // coincident approximations: flag and assign a crude radius
            out.push(RootBall {
                z: zb[i].clone().inflate(&Dyadic::pow2(0)),
                status: RootStatus::Cluster,
            });
            continue;
        }
        let (w, werr) = v.abs_upper(work).div_round(&d_lo, work);
        let r = w
            .add_exact(&werr)
            .mul_exact(&Dyadic::from_i64(n as i64))
            .add_exact(&Dyadic::pow2(-(2 * work as i64)));
        let mut z = zb[i].clone();
        z.re.r = r.clone();
        z.im.r = r;
        out.push(RootBall { z, status: RootStatus::Isolated });
    }
    // pairwise disjointness check
    for i in 0..n {
        for j in (i + 1)..n {
            if out[i].z.overlaps(&out[j].z) {
                out[i].status = RootStatus::Cluster;
                out[j].status = RootStatus::Cluster;
            }
        }
    }
    Ok(out)
}

/// Convenience: certified roots with all radii below `2^-min_bits`, or an
/// error carrying the best radius achieved.
pub fn complex_roots_tight(p: &UniPoly, prec: u32, min_bits: i64) -> Result<Vec<CBall>> {
    let mut prec = prec;
    loop {
        let rb = complex_roots(p, prec)?;
        let worst = rb
            .iter()
            .map(|r| r.z.max_rad_f64())
            .fold(0.0f64, f64::max);
        let ok = rb.iter().all(|r| r.status == RootStatus::Isolated)
            && worst < 2f64.powi(-(min_bits as i32));
        if ok {
            return Ok(rb.into_iter().map(|r| r.z).collect());
        }
        if prec >= 4096 {
            return Err(Error::PrecisionExhausted { radius: worst });
        }
        prec *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_roots() {
        let p = UniPoly::from_int_coeffs(&[-2, 0, 1]);
        let roots = complex_roots_tight(&p, 256, 80).unwrap();
        assert_eq!(roots.len(), 2);
        let mut mids: Vec<f64> = roots.iter().map(|z| z.re.mid_f64()).collect();
        mids.sort_by(f64::total_cmp);
        assert!((mids[0] + 1.4142135623730951).abs() < 1e-12);
        assert!((mids[1] - 1.4142135623730951).abs() < 1e-12);
    }

    #[test]
    fn unit_circle_roots() {
        // z^2 + z + 1: roots on the unit circle
        let p = UniPoly::from_int_coeffs(&[1, 1, 1]);
        let roots = complex_roots_tight(&p, 256, 80).unwrap();
        for z in &roots {
            let m = z.norm2(256);
            let one = m.sub(&RBall::from_i64(1), 256);
            assert!(one.contains_zero());
        }
    }

    #[test]
    fn quartic_positive_root() {
        // 3y^4 + y^3 - 1 has a unique positive real root ~ 0.6886
        let p = UniPoly::from_int_coeffs(&[-1, 0, 0, 1, 3]);
        let roots = complex_roots_tight(&p, 256, 80).unwrap();
        let pos: Vec<&CBall> = roots
            .iter()
            .filter(|z| z.im.contains_zero() && z.re.is_positive_strict())
            .collect();
        assert_eq!(pos.len(), 1);
        assert!((pos[0].re.mid_f64() - 0.6886).abs() < 1e-3);
    }

    #[test]
    fn product_reexpands() {
        // sum of roots = -a_{n-1}/a_n within radii
        let p = UniPoly::from_int_coeffs(&[5, -4, 3, 2]);
        let roots = complex_roots_tight(&p, 256, 60).unwrap();
        let mut s = CBall::zero();
        for z in &roots {
            s = s.add(z, 256);
        }
        let target = CBall::from_q(&crate::algebra::num::qq(-3, 2), 256);
        assert!(s.sub(&target, 256).contains_zero());
    }
}
