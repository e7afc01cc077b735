//! Fraction-free subresultant polynomial remainder sequences, generic over
//! the coefficient ring. Follows Cohen, "A Course in Computational Algebraic
//! Number Theory", Algorithm 3.3.7.

/// Minimal ring interface for PRS coefficients (an integral domain in which
/// the algorithm's internal divisions are exact). Method names are prefixed
/// to stay out of the way of inherent and num-traits methods.
pub trait PrsRing: Clone {
    fn r_is_zero(&self) -> bool;
    fn r_one() -> Self;
    fn r_neg(&self) -> Self;
    fn r_mul(&self, o: &Self) -> Self;
    fn r_sub(&self, o: &Self) -> Self;
    /// Exact division; panics on inexact input.
    fn r_exact_div(&self, o: &Self) -> Self;
    fn r_pow(&self, e: usize) -> Self {
        let mut acc = Self::r_one();
        for _ in 0..e {
            acc = acc.r_mul(self);
        }
        acc
    }
}

pub fn trim<R: PrsRing>(v: &mut Vec<R>) {
    while v.last().map_or(false, |c| c.r_is_zero()) {
        v.pop();
    }
}

/// Canonical pseudo-remainder: lc(b)^(deg a - deg b + 1) * a  mod  b.
pub fn pseudo_rem<R: PrsRing>(a: &[R], b: &[R]) -> Vec<R> {
    let da = a.len() - 1;
    let db = b.len() - 1;
    assert!(da >= db);
    let lc = b[db].clone();
    let mut r: Vec<R> = a.to_vec();
    let mut e = (da - db) as i64 + 1;
    while !r.is_empty() && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        for x in r.iter_mut() {
            *x = x.r_mul(&lc);
        }
        for j in 0..=db {
            let t = c.r_mul(&b[j]);
            r[dr - db + j] = r[dr - db + j].r_sub(&t);
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lc.r_pow(e as usize);
        for x in r.iter_mut() {
            *x = x.r_mul(&f);
        }
    }
    r
}

/// Resultant of `a` and `b` by the subresultant PRS. Inputs are coefficient
/// vectors in ascending degree order.
pub fn resultant<R: PrsRing>(a: &[R], b: &[R]) -> R {
    let mut a: Vec<R> = a.to_vec();
    let mut b: Vec<R> = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return R::r_one().r_sub(&R::r_one());
    }
    if a.len() == 1 {
        return a[0].r_pow(b.len() - 1);
    }
    if b.len() == 1 {
        return b[0].r_pow(a.len() - 1);
    }
    let mut negate = false;
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            negate = !negate;
        }
    }
    let mut g = R::r_one();
    let mut h = R::r_one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        let d = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        let div = g.r_mul(&h.r_pow(d));
        b = r.iter().map(|c| c.r_exact_div(&div)).collect();
        trim(&mut b);
        g = a.last().unwrap().clone();
        if d > 0 {
            // h = g^d / h^(d-1)
            h = g.r_pow(d).r_exact_div(&h.r_pow(d - 1));
        }
        if b.is_empty() {
            return R::r_one().r_sub(&R::r_one());
        }
        if b.len() == 1 {
            let da = a.len() - 1;
            // res = lc(b)^da / h^(da-1), up to the accumulated sign
            let res = b[0].r_pow(da).r_exact_div(&h.r_pow(da - 1));
            return if negate { res.r_neg() } else { res };
        }
    }
}

impl PrsRing for num_bigint::BigInt {
    fn r_is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn r_one() -> Self {
        num_traits::One::one()
    }
    fn r_neg(&self) -> Self {
        -self
    }
    fn r_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn r_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn r_exact_div(&self, o: &Self) -> Self {
        use num_integer::Integer;
        let (q, r) = self.div_rem(o);
        assert!(num_traits::Zero::is_zero(&r), "inexact integer division in PRS");
        q
    }
    fn r_pow(&self, e: usize) -> Self {
        num_traits::Pow::pow(self, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn v(cs: &[i64]) -> Vec<BigInt> {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn matches_sylvester_small() {
        // Res(x^2 - 4, x - 1) = -3
        assert_eq!(resultant(&v(&[-4, 0, 1]), &v(&[-1, 1])), BigInt::from(-3));
        // Res(x^2+1, x+1) = 2
        assert_eq!(resultant(&v(&[1, 0, 1]), &v(&[1, 1])), BigInt::from(2));
        // swap order: Res(B,A) = (-1)^(da db) Res(A,B)
        assert_eq!(resultant(&v(&[1, 1]), &v(&[1, 0, 1])), BigInt::from(2));
    }

    #[test]
    fn discriminant_style() {
        // product of 2x over the roots of x^2 - 2 is -8
        assert_eq!(resultant(&v(&[-2, 0, 1]), &v(&[0, 2])), BigInt::from(-8));
    }

    #[test]
    fn degree_five_vs_three() {
        // a = x^5 - 3x^3 + 2x - 1, b = 2x^3 + x^2 - 4; value from an
        // independent Sylvester-determinant evaluation.
        let a = v(&[-1, 2, 0, -3, 0, 1]);
        let b = v(&[-4, 0, 1, 2]);
        assert_eq!(resultant(&a, &b), BigInt::from(3973));
    }
}
