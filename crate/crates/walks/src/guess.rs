//! Fitting and verification of linear recurrences with polynomial
//! coefficients, over the rationals or mod p.

use crate::algebra::linalg::{modp, nullspace_exact, primitive_int_vector};
use crate::algebra::num::{q, Q, Z};
use crate::algebra::UniPoly;
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};

pub const HELD_OUT: usize = 30;

/// sum_k p_k(n) u_{n+k} = 0 with integer polynomial coefficients,
/// content-free and with the leading polynomial's leading coefficient
/// positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub order: usize,
    pub degree: usize,
    /// coeffs[k] = p_k as integer coefficients in ascending powers of n.
    pub coeffs: Vec<Vec<Z>>,
}

impl Recurrence {
    pub fn p(&self, k: usize, n: i64) -> Z {
        let mut acc = Z::zero();
        for c in self.coeffs[k].iter().rev() {
            acc = acc * Z::from(n) + c;
        }
        acc
    }

    /// Check sum_k p_k(n) u_{n+k} = 0 for all n with n + order < len.
    pub fn annihilates(&self, seq: &[Q]) -> bool {
        if seq.len() <= self.order {
            return false;
        }
        for n in 0..(seq.len() - self.order) {
            let mut acc = Q::zero();
            for k in 0..=self.order {
                acc += Q::from_integer(self.p(k, n as i64)) * &seq[n + k];
            }
            if !acc.is_zero() {
                return false;
            }
        }
        true
    }

    pub fn display(&self) -> String {
        let terms: Vec<String> = (0..=self.order)
            .rev()
            .map(|k| {
                let p = UniPoly::new(
                    self.coeffs[k].iter().map(|z| Q::from_integer(z.clone())).collect(),
                );
                format!("({}) u(n+{})", p.display("n"), k)
            })
            .collect();
        format!("{} = 0", terms.join(" + "))
    }
}

fn total_bits(v: &[Z]) -> u64 {
    v.iter().map(|z| z.bits()).sum()
}

/// Minimal (order, then degree) recurrence fitted by an exact nullspace and
/// verified on the held-out tail; None when nothing survives.
pub fn guess_recurrence(
    seq: &[Q],
    max_order: usize,
    max_degree: usize,
) -> Result<Option<Recurrence>> {
    let needed = (max_order + 1) * (max_degree + 1) + HELD_OUT;
    if seq.len() <= needed {
        return Err(Error::InsufficientTerms { needed: needed + 1, got: seq.len() });
    }
    for r in 1..=max_order {
        for d in 0..=max_degree {
            let unknowns = (r + 1) * (d + 1);
            let rows_avail = seq.len() - r;
            if rows_avail < unknowns + HELD_OUT {
                continue;
            }
            let fit_rows = rows_avail - HELD_OUT;
            let mut m: Vec<Vec<Q>> = Vec::with_capacity(fit_rows);
            for n in 0..fit_rows {
                let mut row = Vec::with_capacity(unknowns);
                for k in 0..=r {
                    let mut np = Q::one();
                    for _e in 0..=d {
                        row.push(&np * &seq[n + k]);
                        np *= q(n as i64);
                    }
                }
                m.push(row);
            }
            let basis = nullspace_exact(&m);
            let mut best: Option<Recurrence> = None;
            for v in basis {
                let ints = primitive_int_vector(&v);
                let coeffs: Vec<Vec<Z>> = (0..=r)
                    .map(|k| ints[k * (d + 1)..(k + 1) * (d + 1)].to_vec())
                    .collect();
                if coeffs[r].iter().all(|c| c.is_zero()) {
                    continue; // p_r must be nonzero
                }
                let rec = normalize(Recurrence { order: r, degree: d, coeffs });
                if rec.annihilates(seq) {
                    let better = match &best {
                        None => true,
                        Some(b) => {
                            total_bits(&rec.coeffs.concat()) < total_bits(&b.coeffs.concat())
                        }
                    };
                    if better {
                        best = Some(rec);
                    }
                }
            }
            if let Some(rec) = best {
                return Ok(Some(rec));
            }
        }
    }
    Ok(None)
}

fn normalize(mut rec: Recurrence) -> Recurrence {
    // trim trailing zero coefficients of each p_k and the joint degree
    let mut deg = 0usize;
    for p in &mut rec.coeffs {
        while p.last().map_or(false, |c| c.is_zero()) {
            p.pop();
        }
        deg = deg.max(p.len().saturating_sub(1));
    }
    rec.degree = deg;
    // sign: leading coefficient of p_r positive
    let flip = rec.coeffs[rec.order]
        .last()
        .map_or(false, |c| c.is_negative());
    if flip {
        for p in &mut rec.coeffs {
            for c in p.iter_mut() {
                *c = -&*c;
            }
        }
    }
    rec
}

/// Extend a sequence with a recurrence from seed terms (indices 0..order).
pub fn verify_and_extend(rec: &Recurrence, seed: &[Q], n: usize) -> Result<Vec<Q>> {
    if seed.len() < rec.order {
        return Err(Error::InsufficientTerms { needed: rec.order, got: seed.len() });
    }
    let mut out: Vec<Q> = seed.to_vec();
    while out.len() <= n {
        let idx = out.len() - rec.order; // recurrence index n
        let lead = rec.p(rec.order, idx as i64);
        if lead.is_zero() {
            return Err(Error::LeadingCoefficientZero(idx as i64));
        }
        let mut acc = Q::zero();
        for k in 0..rec.order {
            acc += Q::from_integer(rec.p(k, idx as i64)) * &out[idx + k];
        }
        out.push(-acc / Q::from_integer(lead));
    }
    Ok(out)
}

/// Ratio-test screen for hypergeometric sequences: true iff u_{n+1}/u_n is a
/// fixed rational function of n of degree <= 4 across the whole prefix.
/// Needs at least 20 nonzero terms; any interior zero fails the screen.
pub fn is_hypergeometric(seq: &[Q]) -> Result<bool> {
    let nz = seq.iter().filter(|v| !v.is_zero()).count();
    if nz < 20 {
        return Err(Error::InsufficientTerms { needed: 20, got: nz });
    }
    if seq.iter().any(|v| v.is_zero()) {
        return Ok(false);
    }
    // fit B(n) u_{n+1} - A(n) u_n = 0 with deg <= 4; no held-out split here,
    // the contract is exact agreement on all supplied terms
    for d in 0..=4usize {
        let unknowns = 2 * (d + 1);
        if seq.len() - 1 < unknowns + 4 {
            continue;
        }
        let mut m = Vec::with_capacity(seq.len() - 1);
        for n in 0..(seq.len() - 1) {
            let mut row = Vec::with_capacity(unknowns);
            let mut np = Q::one();
            for _ in 0..=d {
                row.push(&np * &seq[n]);
                np *= q(n as i64);
            }
            let mut np = Q::one();
            for _ in 0..=d {
                row.push(&np * &seq[n + 1]);
                np *= q(n as i64);
            }
            m.push(row);
        }
        for v in nullspace_exact(&m) {
            let b_part = &v[d + 1..];
            if b_part.iter().any(|c| !c.is_zero()) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Mod-p variant of the guesser (same search order and normalization

/// conventions; coefficients live in Z/pZ).
pub fn guess_recurrence_modp(
    seq: &[u64],
    max_order: usize,
    max_degree: usize,
    p: u64,
) -> Result<Option<Vec<Vec<u64>>>> {
    let needed = (max_order + 1) * (max_degree + 1) + HELD_OUT;
    if seq.len() <= needed {
        return Err(Error::InsufficientTerms { needed: needed + 1, got: seq.len() });
    }
    for r in 1..=max_order {
        for d in 0..=max_degree {
            let unknowns = (r + 1) * (d + 1);
            let rows_avail = seq.len() - r;
            if rows_avail < unknowns + HELD_OUT {
                continue;
            }
            let fit_rows = rows_avail - HELD_OUT;
            let mut m: Vec<Vec<u64>> = Vec::with_capacity(fit_rows);
            for n in 0..fit_rows {
                let mut row = Vec::with_capacity(unknowns);
                for k in 0..=r {
                    let mut np = 1u64;
                    for _e in 0..=d {
                        row.push(modp::mul(np, seq[n + k], p));
                        np = modp::mul(np, (n as u64) % p, p);
                    }
                }
                m.push(row);
            }
            for v in modp::nullspace(&m, p) {
                let coeffs: Vec<Vec<u64>> = (0..=r)
                    .map(|k| v[k * (d + 1)..(k + 1) * (d + 1)].to_vec())
                    .collect();
                if coeffs[r].iter().all(|&c| c == 0) {
                    continue;
                }
                // verify on everything
                let ok = (0..(seq.len() - r)).all(|n| {
                    let mut acc = 0u64;
                    for (k, pk) in coeffs.iter().enumerate() {
                        let mut np = 1u64;
                        let mut pv = 0u64;
                        for c in pk {
                            pv = modp::add(pv, modp::mul(*c, np, p), p);
                            np = modp::mul(np, (n as u64) % p, p);
                        }
                        acc = modp::add(acc, modp::mul(pv, seq[n + k], p), p);
                    }
                    acc == 0
                });
                if ok {
                    return Ok(Some(coeffs));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sequence() {
        let seq: Vec<Q> = (0..80).map(|_| q(1)).collect();
        let rec = guess_recurrence(&seq, 3, 3).unwrap().unwrap();
        assert_eq!(rec.order, 1);
        assert_eq!(rec.degree, 0);
        // u_{n+1} - u_n = 0
        assert_eq!(rec.coeffs, vec![vec![Z::from(-1)], vec![Z::from(1)]]);
    }

    #[test]
    fn catalan_recurrence_and_extension() {
        // (n+2) C_{n+1} = (4n+2) C_n
        let mut cat: Vec<Q> = vec![q(1)];
        for n in 0..70i64 {
            let next = cat[n as usize].clone() * q(4 * n + 2) / q(n + 2);
            cat.push(next);
        }
        let rec = guess_recurrence(&cat, 2, 2).unwrap().unwrap();
        assert_eq!(rec.order, 1);
        assert_eq!(rec.degree, 1);
        let ext = verify_and_extend(&rec, &cat[..1], 4).unwrap();
        assert_eq!(ext, vec![q(1), q(1), q(2), q(5), q(14)]);
        assert!(is_hypergeometric(&cat).unwrap());
    }

    #[test]
    fn central_binomials_are_hypergeometric() {
        let mut u = vec![q(1)];
        for n in 0..40i64 {
            let next = u[n as usize].clone() * q(4 * n + 2) / q(n + 1);
            u.push(next);
        }
        assert!(is_hypergeometric(&u).unwrap());
        // and a non-hypergeometric one: Motzkin-ish mixture
        let mut v = vec![q(1), q(1)];
        for n in 2..60usize {
            let a = v[n - 1].clone() * q(2 * n as i64 + 1);
            let b = v[n - 2].clone() * q(3 * n as i64 - 3);
            v.push((a + b) / q(n as i64 + 2));
        }
        assert!(!is_hypergeometric(&v).unwrap());
    }

    #[test]
    fn insufficient_terms_error() {
        let seq: Vec<Q> = (0..10).map(|_| q(1)).collect();
        match guess_recurrence(&seq, 2, 2) {
            Err(Error::InsufficientTerms { needed, got }) => {
                assert_eq!(got, 10);
                assert!(needed > 10);
            }
            other => panic!("expected error, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn modp_consistency() {
        // reduce Catalan's recurrence mod p and re-guess
        let p = crate::enumerate::DEFAULT_PRIME;
        let mut cat: Vec<Q> = vec![q(1)];
        for n in 0..90i64 {
            let next = cat[n as usize].clone() * q(4 * n + 2) / q(n + 2);
            cat.push(next);
        }
        let seqp: Vec<u64> = cat.iter().map(|v| modp::q_mod(v, p)).collect();
        let rec = guess_recurrence(&cat, 2, 2).unwrap().unwrap();
        let recp = guess_recurrence_modp(&seqp, 2, 2, p).unwrap().unwrap();
        assert_eq!(recp.len(), rec.coeffs.len());
        // same recurrence after reduction, up to a scalar mod p; normalize by
        // the first nonzero entry of each
        let flat: Vec<Z> = rec.coeffs.concat();
        let flatp: Vec<u64> = recp.concat();
        let first = flat.iter().position(|z| !z.is_zero()).unwrap();
        let scale = modp::inv(flatp[first], p);
        let fz = modp::q_mod(&Q::from_integer(flat[first].clone()), p);
        for (a, b) in flat.iter().zip(&flatp) {
            let am = modp::q_mod(&Q::from_integer(a.clone()), p);
            let bm = modp::mul(modp::mul(*b, scale, p), fz, p);
            assert_eq!(am, bm);
        }
    }

    #[test]
    fn anti_overfit_contract() {
        // a sequence that satisfies no small recurrence: factorial digits
        let seq: Vec<Q> = (0..90i64).map(|n| q((n * n * n + 7) % 1000)).collect();
        assert!(guess_recurrence(&seq, 2, 1).unwrap().is_none());
    }
}
