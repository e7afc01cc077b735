//! Exact dense linear algebra over Q and over prime fields.

use super::num::{Q, Z};
use num_traits::{One, Zero};

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        let mut sel = None;
        for i in r..rows {
            if !m[i][c].is_zero() {
                sel = Some(i);
                break;
            }
        }
        let Some(i) = sel else { continue };
        m.swap(r, i);
        let inv = Q::one() / m[r][c].clone();
        for j in c..cols {
            let v = std::mem::replace(&mut m[r][j], Q::zero());
            m[r][j] = v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Basis of the right nullspace of `m` (rows of the returned vectors are
/// coordinate vectors of length = number of columns). Deterministic: reduced
/// echelon pivots, free columns in ascending order.
pub fn nullspace_exact(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    if m.is_empty() {
        return vec![];
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let pivots = rref(&mut a);
    let mut basis = vec![];
    let piv_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    for free in 0..cols {
        if piv_set.contains(&free) {
            continue;
        }
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Clear denominators and integer content of a rational vector, first
/// nonzero entry positive.
pub fn primitive_int_vector(v: &[Q]) -> Vec<Z> {
    use super::num::{content, denominator_lcm};
    use num_traits::Signed;
    let l = denominator_lcm(v);
    let mut ints: Vec<Z> = v.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let mut g = content(&ints);
    if g.is_zero() {
        return ints;
    }
    if let Some(first) = ints.iter().find(|z| !z.is_zero()) {
        if first.is_negative() {
            g = -g;
        }
    }
    for z in ints.iter_mut() {
        *z = &*z / &g;
    }
    ints
}

pub mod modp {
    //! Arithmetic and nullspaces over Z/pZ for a u64 prime p < 2^62.

    pub fn add(a: u64, b: u64, p: u64) -> u64 {
        let s = a + b;
        if s >= p {
            s - p
        } else {
            s
        }
    }

    pub fn sub(a: u64, b: u64, p: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + p - b
        }
    }

    pub fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1u64;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a, p);
            }
            a = mul(a, a, p);
            e >>= 1;
        }
        r
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    /// Reduce a big rational mod p; panics if the denominator vanishes mod p.
    pub fn q_mod(x: &crate::algebra::num::Q, p: u64) -> u64 {
        let pz = num_bigint::BigInt::from(p);
        let n = num_integer::Integer::mod_floor(x.numer(), &pz);
        let d = num_integer::Integer::mod_floor(x.denom(), &pz);
        let n: u64 = n.try_into().unwrap();
        let d: u64 = d.try_into().unwrap();
        assert!(d != 0, "denominator vanishes mod p");
        mul(n, inv(d, p), p)
    }

    /// Right nullspace basis over Z/pZ (same conventions as the exact one).
    pub fn nullspace(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
        if m.is_empty() {
            return vec![];
        }
        let cols = m[0].len();
        let rows = m.len();
        let mut a: Vec<Vec<u64>> = m.to_vec();
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..cols {
            let mut sel = None;
            for i in r..rows {
                if a[i][c] != 0 {
                    sel = Some(i);
                    break;
                }
            }
            let Some(i) = sel else { continue };
            a.swap(r, i);
            let invv = inv(a[r][c], p);
            for j in c..cols {
                a[r][j] = mul(a[r][j], invv, p);
            }
            for i in 0..rows {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in c..cols {
                        let t = mul(a[r][j], f, p);
                        a[i][j] = sub(a[i][j], t, p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let piv_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = vec![];
        for free in 0..cols {
            if piv_set.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = sub(0, a[r][free], p);
            }
            basis.push(v);
        }
        basis
    }

    /// Dense polynomial remainder a mod b over Z/pZ (ascending coefficients).
    pub fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = a.to_vec();
        while r.last() == Some(&0) {
            r.pop();
        }
        let db = b.len() - 1;
        let lci = inv(b[db], p);
        while r.len() > db {
            let dr = r.len() - 1;
            let f = mul(r[dr], lci, p);
            if f != 0 {
                for j in 0..=db {
                    let t = mul(f, b[j], p);
                    r[dr - db + j] = sub(r[dr - db + j], t, p);
                }
            }
            while r.last() == Some(&0) {
                r.pop();
            }
            if r.len() <= db {
                break;
            }
        }
        r
    }

    pub fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
        let trim = |v: &mut Vec<u64>| {
            while v.last() == Some(&0) {
                v.pop();
            }
        };
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = poly_rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// (a*b) mod m over Z/pZ.
    pub fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = add(prod[i + j], mul(x, y, p), p);
                }
            }
        }
        poly_rem(&prod, m, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::num::q;

    #[test]
    fn identity_has_empty_nullspace() {
        let m = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        assert!(nullspace_exact(&m).is_empty());
    }

    #[test]
    fn rank_one_two_by_two() {
        let m = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        let b = nullspace_exact(&m);
        assert_eq!(b.len(), 1);
        // span{(1,-1)} normalized with free var = 1: (-1, 1)
        assert_eq!(b[0], vec![q(-1), q(1)]);
    }

    #[test]
    fn vandermonde_3x4() {
        // rows (1, x, x^2, x^3) at nodes 0,1,2: nullspace dim 1 (cubic with
        // roots at the nodes). Direct elimination oracle gives dim 1.
        let nodes = [q(0), q(1), q(2)];
        let m: Vec<Vec<Q>> = nodes
            .iter()
            .map(|x| (0..4).map(|k| x.clone().pow(k as i32)).collect())
            .collect();
        let b = nullspace_exact(&m);
        assert_eq!(b.len(), 1);
        // the basis vector encodes x(x-1)(x-2) = -0 + 2x - 3x^2 + x^3 up to scale
        let v = &b[0];
        for x in nodes.iter() {
            let mut acc = Q::zero();
            for k in 0..4 {
                acc += v[k].clone() * x.clone().pow(k as i32);
            }
            assert!(acc.is_zero());
        }
    }

    proptest::proptest! {
        #[test]
        fn nullspace_annihilates(rows in 1usize..5, cols in 1usize..6, seed in 0u64..1000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m: Vec<Vec<Q>> = (0..rows)
                .map(|_| (0..cols).map(|_| q(rng.gen_range(-5..=5))).collect())
                .collect();
            for v in nullspace_exact(&m) {
                for row in &m {
                    let mut acc = Q::zero();
                    for (a, b) in row.iter().zip(&v) {
                        acc += a * b;
                    }
                    proptest::prop_assert!(acc.is_zero());
                }
            }
        }
    }
}
