//! Modular engines for large exact computations: univariate integer gcd by
//! CRT with divisibility verification, and bivariate resultants by
//! evaluation-interpolation mod word-size primes with a Hadamard-style
//! prime budget. Outputs are primitive parts (exact up to a nonzero
//! scalar), which is all the root-set bookkeeping downstream consumes.

use super::linalg::modp;
use super::mpoly::MPoly;
use super::num::{content, Z};
use super::unipoly::UniPoly;
use num_traits::{One, Signed, Zero};

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = modp::pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = modp::mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Stream of 62-bit primes, descending.
pub struct Primes {
    next: u64,
}

impl Primes {
    pub fn new() -> Self {
        Primes { next: (1u64 << 62) - 1 }
    }
}

impl Default for Primes {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            let c = self.next;
            self.next -= 2;
            if is_prime_u64(c) {
                return Some(c);
            }
        }
    }
}

fn z_mod(z: &Z, p: u64) -> u64 {
    let r = num_integer::Integer::mod_floor(z, &Z::from(p));
    r.try_into().unwrap()
}

fn reduce_vec(v: &[Z], p: u64) -> Vec<u64> {
    v.iter().map(|z| z_mod(z, p)).collect()
}

/// Symmetric representative in (-p/2, p/2].
fn symmetric(r: u64, p: u64) -> Z {
    if r > p / 2 {
        Z::from(r) - Z::from(p)
    } else {
        Z::from(r)
    }
}

/// CRT combine a (mod m) with b (mod p); the result is reduced symmetrically
/// modulo m*p.
fn crt_sym(a: &Z, m: &Z, b: u64, p: u64) -> Z {
    let am = z_mod(a, p);
    let mm = z_mod(m, p);
    let minv = modp::inv(mm, p);
    let diff = modp::mul(modp::sub(b, am, p), minv, p);
    let x = a + m * Z::from(diff);
    let m2 = m * Z::from(p);
    let half = &m2 >> 1;
    if x > half {
        x - m2
    } else {
        x
    }
}

fn trim_u64(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Exact divisibility test of integer polynomials (d | a).
fn divides_z(d: &[Z], a: &[Z]) -> bool {
    if d.is_empty() {
        return false;
    }
    let mut rem: Vec<Z> = a.to_vec();
    let dd = d.len() - 1;
    let lc = d.last().unwrap();
    while rem.len() > dd {
        let r = rem.last().unwrap().clone();
        if r.is_zero() {
            rem.pop();
            continue;
        }
        let (q, rr) = num_integer::Integer::div_rem(&r, lc);
        if !rr.is_zero() {
            return false;
        }
        let off = rem.len() - 1 - dd;
        for (i, dc) in d.iter().enumerate() {
            let t = &q * dc;
            rem[off + i] -= t;
        }
        while rem.last().map_or(false, |z| z.is_zero()) {
            rem.pop();
        }
        if rem.len() <= dd {
            break;
        }
    }
    rem.iter().all(|z| z.is_zero())
}

/// gcd of two integer polynomials by modular images with divisibility
/// verification; result primitive with positive leading coefficient.
pub fn zgcd_modular(a: &[Z], b: &[Z]) -> Vec<Z> {
    if a.is_empty() {
        return b.to_vec();
    }
    if b.is_empty() {
        return a.to_vec();
    }
    let ca = content(a);
    let cb = content(b);
    let cg = num_integer::Integer::gcd(&ca, &cb);
    let ap: Vec<Z> = a.iter().map(|z| z / &ca).collect();
    let bp: Vec<Z> = b.iter().map(|z| z / &cb).collect();
    let gamma = num_integer::Integer::gcd(ap.last().unwrap(), bp.last().unwrap());
    let mut primes = Primes::new();
    let mut best_deg = usize::MAX;
    let mut acc: Vec<Z> = vec![];
    let mut modulus = Z::one();
    loop {
        let p = primes.next().unwrap();
        if z_mod(ap.last().unwrap(), p) == 0 || z_mod(bp.last().unwrap(), p) == 0 {
            continue;
        }
        let amod = reduce_vec(&ap, p);
        let bmod = reduce_vec(&bp, p);
        let mut g = modp::poly_gcd(amod, bmod, p);
        trim_u64(&mut g);
        if g.len() == 1 {
            return vec![cg]; // coprime mod a good prime -> coprime over Z
        }
        let d = g.len() - 1;
        if d > best_deg {
            continue; // unlucky prime
        }
        let lcinv = modp::inv(*g.last().unwrap(), p);
        let scale = modp::mul(lcinv, z_mod(&gamma, p), p);
        let gn: Vec<u64> = g.iter().map(|&c| modp::mul(c, scale, p)).collect();
        if d < best_deg {
            best_deg = d;
            acc = gn.iter().map(|&c| symmetric(c, p)).collect();
            modulus = Z::from(p);
            continue;
        }
        let mut changed = false;
        for (i, &c) in gn.iter().enumerate() {
            let x = crt_sym(&acc[i], &modulus, c, p);
            if x != acc[i] {
                changed = true;
                acc[i] = x;
            }
        }
        modulus *= Z::from(p);
        if !changed {
            let mut cand = acc.clone();
            let cc = content(&cand);
            if !cc.is_zero() && !cc.is_one() {
                for z in cand.iter_mut() {
                    *z = &*z / &cc;
                }
            }
            if cand.last().map_or(false, |z| z.is_negative()) {
                for z in cand.iter_mut() {
                    *z = -&*z;
                }
            }
            if divides_z(&cand, &ap) && divides_z(&cand, &bp) {
                let mut out: Vec<Z> = cand.iter().map(|z| z * &cg).collect();
                if out.last().map_or(false, |z| z.is_negative()) {
                    for z in out.iter_mut() {
                        *z = -&*z;
                    }
                }
                return out;
            }
        }
    }
}

/// Resultant of `a` (univariate in variable `v` of the 2-variable space,
/// large coefficients allowed) against the small bivariate `b`, eliminating
/// `v`. The result is the primitive integer polynomial in the other
/// variable, exact up to a nonzero scalar (callers only use its root set).
pub fn resultant_bivar_modular(a: &UniPoly, b: &MPoly, v: usize) -> UniPoly {
    assert!(b.nvars == 2);
    let other = 1 - v;
    let az: Vec<Z> = a.primitive_z();
    if az.len() <= 1 {
        return UniPoly::one();
    }
    let da = az.len() - 1;
    let db_v = b.degree(v);
    let db_o = b.degree(other);
    if db_v == 0 {
        return UniPoly::one();
    }
    let npoints = da * db_o + db_o + 1;
    let abits: u64 = az.iter().map(|z| z.bits()).max().unwrap_or(1);
    let bbits: u64 = b.terms.values().map(|z| z.bits()).max().unwrap_or(1);
    let bound_bits = (db_v as u64) * (abits + 16)
        + (da as u64) * (bbits + 16)
        + 64
        + 2 * (da as u64 + db_v as u64);
    let nprimes = (bound_bits / 61 + 2) as usize;
    // leading v-coefficient of b as a polynomial in the other variable
    let lc_b: Vec<Z> = {
        let mut cs = vec![Z::zero(); db_o + 1];
        for (e, c) in &b.terms {
            if e[v] as usize == db_v {
                cs[e[other] as usize] += c;
            }
        }
        cs
    };
    let mut primes = Primes::new();
    let mut acc: Vec<Z> = vec![Z::zero(); npoints];
    let mut modulus = Z::one();
    let mut used = 0usize;
    while used < nprimes {
        let p = primes.next().unwrap();
        if z_mod(az.last().unwrap(), p) == 0 {
            continue;
        }
        let amod = reduce_vec(&az, p);
        let lcb_mod = reduce_vec(&lc_b, p);
        let eval_poly = |cs: &[u64], x: u64| -> u64 {
            let mut acc = 0u64;
            for c in cs.iter().rev() {
                acc = modp::add(modp::mul(acc, x, p), *c, p);
            }
            acc
        };
        let mut xs = Vec::with_capacity(npoints);
        let mut vals = Vec::with_capacity(npoints);
        let mut x = 1u64;
        while xs.len() < npoints {
            if eval_poly(&lcb_mod, x) != 0 {
                let mut bx = vec![0u64; db_v + 1];
                for (e, c) in &b.terms {
                    let k = e[v] as usize;
                    let xo = e[other] as u64;
                    let cm = z_mod(c, p);
                    bx[k] = modp::add(bx[k], modp::mul(cm, modp::pow(x, xo, p), p), p);
                }
                vals.push(resultant_gfp(&amod, &bx, p));
                xs.push(x);
            }
            x += 1;
        }
        let coeffs = interpolate_gfp(&xs, &vals, p);
        if used == 0 {
            acc = coeffs.iter().map(|&c| symmetric(c, p)).collect();
            modulus = Z::from(p);
        } else {
            for (i, &c) in coeffs.iter().enumerate() {
                acc[i] = crt_sym(&acc[i], &modulus, c, p);
            }
            modulus *= Z::from(p);
        }
        used += 1;
    }
    let mut out = acc;
    while out.last().map_or(false, |z| z.is_zero()) {
        out.pop();
    }
    if out.is_empty() {
        return UniPoly::zero();
    }
    let c = content(&out);
    if !c.is_one() {
        for z in out.iter_mut() {
            *z = &*z / &c;
        }
    }
    if out.last().map_or(false, |z| z.is_negative()) {
        for z in out.iter_mut() {
            *z = -&*z;
        }
    }
    UniPoly::from_z_coeffs(out)
}

/// Resultant of univariate polynomials over GF(p) by the Euclidean scheme.
fn resultant_gfp(a: &[u64], b: &[u64], p: u64) -> u64 {
    let mut a: Vec<u64> = a.to_vec();
    let mut b: Vec<u64> = b.to_vec();
    trim_u64(&mut a);
    trim_u64(&mut b);
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut res = 1u64;
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            res = modp::sub(0, res, p);
        }
    }
    loop {
        if b.len() == 1 {
            return modp::mul(res, modp::pow(b[0], (a.len() - 1) as u64, p), p);
        }
        let da = a.len() - 1;
        let db = b.len() - 1;
        let r = modp::poly_rem(&a, &b, p);
        if r.is_empty() {
            return 0;
        }
        let lb = *b.last().unwrap();
        let dr = r.len() - 1;
        res = modp::mul(res, modp::pow(lb, (da - dr) as u64, p), p);
        if da % 2 == 1 && db % 2 == 1 {
            res = modp::sub(0, res, p);
        }
        a = b;
        b = r;
    }
}

fn interpolate_gfp(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = modp::sub(coef[i], coef[i - 1], p);
            let den = modp::sub(xs[i], xs[i - j], p);
            coef[i] = modp::mul(num, modp::inv(den, p), p);
        }
    }
    let mut out = vec![0u64; n];
    let mut basis = vec![0u64; n + 1];
    basis[0] = 1;
    let mut blen = 1usize;
    for (i, &c) in coef.iter().enumerate() {
        for k in 0..blen {
            out[k] = modp::add(out[k], modp::mul(c, basis[k], p), p);
        }
        if i + 1 < n {
            // basis *= (x - xs[i])
            let snapshot: Vec<u64> = basis[..blen].to_vec();
            for k in 0..=blen {
                let from_shift = if k >= 1 { snapshot[k - 1] } else { 0 };
                let from_scale = if k < blen {
                    modp::mul(snapshot[k], xs[i], p)
                } else {
                    0
                };
                basis[k] = modp::sub(from_shift, from_scale, p);
            }
            blen += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_stream() {
        let mut it = Primes::new();
        let p = it.next().unwrap();
        assert!(is_prime_u64(p) && p > 1 << 61);
    }

    #[test]
    fn modular_gcd_matches_prs() {
        let f = UniPoly::from_int_coeffs(&[-1, 0, 3, 1]);
        let a = f.mul(&UniPoly::from_int_coeffs(&[7, -2, 1, 0, 4]));
        let b = f.mul(&UniPoly::from_int_coeffs(&[1, 1, -5]));
        let g1 = a.gcd(&b);
        let g2 = UniPoly::from_z_coeffs(zgcd_modular(&a.primitive_z(), &b.primitive_z()));
        assert_eq!(g1, g2);
        // coprime case
        let c = UniPoly::from_int_coeffs(&[1, 0, 1]);
        let d = UniPoly::from_int_coeffs(&[2, 1]);
        let g = UniPoly::from_z_coeffs(zgcd_modular(&c.primitive_z(), &d.primitive_z()));
        assert_eq!(g.deg(), 0);
    }

    #[test]
    fn interpolation_round_trip() {
        let p = Primes::new().next().unwrap();
        // f(x) = 3x^3 + 2x + 7
        let f = |x: u64| -> u64 {
            modp::add(
                modp::add(modp::mul(3, modp::pow(x, 3, p), p), modp::mul(2, x, p), p),
                7,
                p,
            )
        };
        let xs: Vec<u64> = (1..=4).collect();
        let ys: Vec<u64> = xs.iter().map(|&x| f(x)).collect();
        let c = interpolate_gfp(&xs, &ys, p);
        assert_eq!(c[0], 7);
        assert_eq!(c[1], 2);
        assert_eq!(c[2], 0);
        assert_eq!(c[3], 3);
    }

    #[test]
    fn modular_resultant_matches_prs() {
        let a = UniPoly::from_int_coeffs(&[3, -1, 0, 2, 1]);
        // b = X^2 Y^2 - 3X + Y - 5 with vars (X = 0, Y = 1)
        let b = MPoly::monomial(2, vec![2, 2], 1.into())
            .add(&MPoly::monomial(2, vec![1, 0], (-3).into()))
            .add(&MPoly::monomial(2, vec![0, 1], 1.into()))
            .add(&MPoly::monomial(2, vec![0, 0], (-5).into()));
        let lifted = MPoly::from_unipoly_primitive(&a, 2, 1);
        let exact = crate::algebra::mpoly::resultant_in(&lifted, &b, 1)
            .to_unipoly()
            .primitive();
        let modular = resultant_bivar_modular(&a, &b, 1).primitive();
        assert_eq!(exact, modular);
    }
}
