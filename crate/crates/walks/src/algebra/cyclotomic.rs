//! Cyclotomic polynomials and cyclotomic-factor detection.

use super::num::Q;
use super::unipoly::UniPoly;
use num_traits::One;
use std::sync::{Mutex, OnceLock};

const BANK_CAP: usize = 400;

fn bank() -> &'static Mutex<Vec<Option<UniPoly>>> {
    static BANK: OnceLock<Mutex<Vec<Option<UniPoly>>>> = OnceLock::new();
    BANK.get_or_init(|| Mutex::new(vec![None; BANK_CAP + 1]))
}

/// Euler totient.
pub fn phi(k: usize) -> usize {
    let mut n = k;
    let mut r = k;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

/// The k-th cyclotomic polynomial, computed by dividing z^k - 1 by the
/// product of the earlier cyclotomics at divisors of k. Memoized up to
/// k = 400; larger k are computed on the fly.
pub fn cyclotomic(k: usize) -> UniPoly {
    assert!(k >= 1);
    if k <= BANK_CAP {
        if let Some(p) = &bank().lock().unwrap()[k] {
            return p.clone();
        }
    }
    let p = compute_cyclotomic(k);
    if k <= BANK_CAP {
        bank().lock().unwrap()[k] = Some(p.clone());
    }
    p
}

fn compute_cyclotomic(k: usize) -> UniPoly {
    // z^k - 1
    let mut num = UniPoly::monomial(Q::one(), k);
    num = num.sub(&UniPoly::one());
    if k == 1 {
        return num;
    }
    let mut den = UniPoly::one();
    for d in 1..k {
        if k % d == 0 {
            den = den.mul(&cyclotomic(d));
        }
    }
    num.exact_div(&den)
}

/// Smallest k <= kmax with cyclotomic(k) dividing P (up to units), or None.
/// `kmax = None` uses the smallest bound guaranteeing phi(k) > deg P beyond
/// it, never below 349.
pub fn has_cyclotomic_factor(p: &UniPoly, kmax: Option<usize>) -> Option<usize> {
    let d = p.degree()?;
    if d == 0 {
        return None;
    }
    let kmax = kmax.unwrap_or_else(|| phi_bound(d));
    let pm = p.primitive();
    for k in 1..=kmax {
        if phi(k) > d {
            continue;
        }
        if pm.divisible_by(&cyclotomic(k)) {
            return Some(k);
        }
    }
    None
}

/// Largest k with phi(k) <= d (so any cyclotomic factor of a degree-d
/// polynomial has index at most this), floored at 349.
pub fn phi_bound(d: usize) -> usize {
    let mut best = 349;
    // phi(k) >= sqrt(k/2), so k <= 2 d^2 + 1 is a safe scan range
    let cap = 2 * d * d + 2;
    for k in 350..=cap {
        if phi(k) <= d {
            best = k;
        }
    }
    best
}

/// Minimal polynomial of 2cos(2*pi/k) halves... precisely: the squarefree
/// polynomial in C whose roots are cos(2*pi*j/k) over j coprime to k.
/// Derived as the squarefree part of Res_z(cyclotomic_k(z), z^2 - 2Cz + 1).
pub fn cosine_minimal(k: usize) -> UniPoly {
    use super::mpoly::{resultant_in, MPoly};
    use super::num::Z;
    // variables: z = 0, C = 1
    let phi_k = cyclotomic(k);
    let a = MPoly::from_unipoly_primitive(&phi_k, 2, 0);
    // z^2 - 2 C z + 1
    let b = MPoly::monomial(2, vec![2, 0], Z::from(1))
        .add(&MPoly::monomial(2, vec![1, 1], Z::from(-2)))
        .add(&MPoly::monomial(2, vec![0, 0], Z::from(1)));
    let r = resultant_in(&a, &b, 0);
    r.to_unipoly().squarefree_part()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::num::q;

    #[test]
    fn first_cyclotomics() {
        assert_eq!(cyclotomic(1), UniPoly::from_int_coeffs(&[-1, 1]));
        // k=3 derived by dividing (z^3-1)/(z-1)
        assert_eq!(cyclotomic(3), UniPoly::from_int_coeffs(&[1, 1, 1]));
        // k=12 derived by dividing z^12-1 by phi_1 phi_2 phi_3 phi_4 phi_6
        assert_eq!(cyclotomic(12), UniPoly::from_int_coeffs(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn product_identity() {
        // prod_{d | k} phi_d = z^k - 1 for k <= 60
        for k in 1..=60usize {
            let mut prod = UniPoly::one();
            for d in 1..=k {
                if k % d == 0 {
                    prod = prod.mul(&cyclotomic(d));
                }
            }
            let mut target = UniPoly::monomial(Q::one(), k);
            target = target.sub(&UniPoly::one());
            assert_eq!(prod, target, "k = {}", k);
        }
    }

    #[test]
    fn factor_detection() {
        // z^2+z+1 = phi_3
        let p = UniPoly::from_int_coeffs(&[1, 1, 1]);
        assert_eq!(has_cyclotomic_factor(&p, Some(349)), Some(3));
        // scaled by 5: divisibility up to units
        let p5 = p.scale(&q(5));
        assert_eq!(has_cyclotomic_factor(&p5, Some(349)), Some(3));
        // z^4 + (4/3) z^2 + 1 is not cyclotomic
        let mut v = vec![q(1), q(0), crate::algebra::num::qq(4, 3), q(0), q(1)];
        let p = UniPoly::new(std::mem::take(&mut v));
        assert_eq!(has_cyclotomic_factor(&p, Some(349)), None);
    }

    #[test]
    fn cosine_minimal_small() {
        // k=3: cos(2pi/3) = -1/2 -> root of the result
        let p = cosine_minimal(3);
        let r = p.eval_q(&crate::algebra::num::qq(-1, 2));
        assert!(num_traits::Zero::is_zero(&r));
        // k=4: cos(pi/2) = 0 -> C
        let p4 = cosine_minimal(4);
        assert!(num_traits::Zero::is_zero(&p4.eval_q(&q(0))));
        // k=8: roots +-sqrt(2)/2 -> 2C^2 - 1
        let p8 = cosine_minimal(8);
        assert_eq!(p8.deg(), 2);
    }

    #[test]
    fn phi_bound_spec() {
        // 349 suffices for degrees < 72
        assert_eq!(phi_bound(71), 349);
        assert!(phi_bound(144) >= 349);
    }
}
