//! Scalar aliases and small helpers for arbitrary-precision arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Z = BigInt;
pub type Q = BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

/// Fraction `n/d` as a reduced rational.
pub fn qq(n: i64, d: i64) -> Q {
    Q::new(Z::from(n), Z::from(d))
}

/// gcd of two integers, non-negative.
pub fn zgcd(a: &Z, b: &Z) -> Z {
    num_integer::Integer::gcd(a, b)
}

/// lcm of the denominators of a slice of rationals (1 for the empty slice).
pub fn denominator_lcm(cs: &[Q]) -> Z {
    let mut l = Z::one();
    for c in cs {
        l = num_integer::Integer::lcm(&l, c.denom());
    }
    l
}

/// gcd of a slice of integers, non-negative.
pub fn content(cs: &[Z]) -> Z {
    let mut g = Z::zero();
    for c in cs {
        g = zgcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Round a rational to the nearest integer (ties toward +inf).
pub fn round_to_z(x: &Q) -> Z {
    let two = Z::from(2);
    let n = x.numer() * &two + x.denom();
    num_integer::Integer::div_floor(&n, &(x.denom() * &two))
}

fn z_to_f64_scaled(z: &Z) -> (f64, i64) {
    // value = f * 2^e with f representable
    let bits = z.bits() as i64;
    let shift = (bits - 53).max(0);
    let top: Z = z >> shift;
    (top.to_f64().unwrap_or(f64::NAN), shift)
}

/// f64 value of a rational, for diagnostics and numeric seeds only.
pub fn q_to_f64(x: &Q) -> f64 {
    if x.numer().is_zero() {
        return 0.0;
    }
    let (nf, ne) = z_to_f64_scaled(x.numer());
    let (df, de) = z_to_f64_scaled(x.denom());
    let e = (ne - de).clamp(-2000, 2000) as i32;
    nf / df * 2f64.powi(e)
}

pub fn is_zero_q(x: &Q) -> bool {
    x.numer().is_zero()
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}
