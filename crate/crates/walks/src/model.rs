//! Step-set models: parsing, canonicalization, structural predicates, the
//! step-set census, Hadamard decomposition, and the period.

use crate::algebra::num::{q, Q};
use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A weighted finite step set in Z^d.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct StepModel {
    pub dim: usize,
    pub steps: BTreeMap<Vec<i32>, Q>,
}

impl fmt::Debug for StepModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl StepModel {
    pub fn new(dim: usize, steps: BTreeMap<Vec<i32>, Q>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Parse("empty step set".into()));
        }
        for (s, w) in &steps {
            if s.len() != dim {
                return Err(Error::Parse("step arity mismatch".into()));
            }
            if s.iter().all(|&c| c == 0) {
                return Err(Error::Parse("zero step not allowed".into()));
            }
            if !w.is_positive() {
                return Err(Error::Parse("non-positive weight".into()));
            }
        }
        Ok(StepModel { dim, steps })
    }

    pub fn from_steps(steps: &[&[i32]]) -> Self {
        let dim = steps[0].len();
        let map = steps.iter().map(|s| (s.to_vec(), Q::one())).collect();
        StepModel::new(dim, map).expect("valid step list")
    }

    /// Parse "i,j[:w];i,j;..." (1D steps are bare integers, e.g. "2;-1").
    pub fn parse(text: &str) -> Result<Self> {
        let mut steps: BTreeMap<Vec<i32>, Q> = BTreeMap::new();
        let mut dim = None;
        for part in text.split(';') {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::Parse("empty step".into()));
            }
            let (coords, w) = match part.split_once(':') {
                Some((c, w)) => (c, parse_weight(w)?),
                None => (part, Q::one()),
            };
            let step: Vec<i32> = coords
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<i32>()
                        .map_err(|_| Error::Parse(format!("bad coordinate `{}`", c)))
                })
                .collect::<Result<_>>()?;
            match dim {
                None => dim = Some(step.len()),
                Some(d) if d != step.len() => {
                    return Err(Error::Parse("inconsistent step arity".into()))
                }
                _ => {}
            }
            if steps.insert(step, w).is_some() {
                return Err(Error::Parse("duplicate step".into()));
            }
        }
        StepModel::new(dim.unwrap(), steps)
    }

    /// Canonical text: steps in sorted order, weights only when != 1.
    pub fn format(&self) -> String {
        self.steps
            .iter()
            .map(|(s, w)| {
                let c = s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                if w.is_one() {
                    c
                } else {
                    format!("{}:{}", c, w)
                }
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Step polynomial S(x) as an exact Laurent polynomial.
    pub fn step_poly(&self) -> LaurentPoly {
        let mut s = LaurentPoly::zero_n(self.dim);
        for (st, w) in &self.steps {
            s.add_term(st.clone(), w.clone());
        }
        s
    }

    /// Largest forward move along `axis` (M_i).
    pub fn max_move(&self, axis: usize) -> i32 {
        self.steps.keys().map(|s| s[axis]).max().unwrap()
    }

    /// Smallest move along `axis` (-m_i).
    pub fn min_move(&self, axis: usize) -> i32 {
        self.steps.keys().map(|s| s[axis]).min().unwrap()
    }

    /// Sum of all step weights (the number of steps when unweighted).
    pub fn total_weight(&self) -> Q {
        let mut t = Q::zero();
        for w in self.steps.values() {
            t += w;
        }
        t
    }

    /// Mirror image in the main diagonal (2D): swaps the two coordinates.
    pub fn mirror(&self) -> Self {
        assert_eq!(self.dim, 2);
        let steps = self
            .steps
            .iter()
            .map(|(s, w)| (vec![s[1], s[0]], w.clone()))
            .collect();
        StepModel { dim: 2, steps }
    }

    /// Reflect in the x-axis: (i, j) -> (i, -j).
    pub fn reflect_y(&self) -> Self {
        assert_eq!(self.dim, 2);
        let steps = self
            .steps
            .iter()
            .map(|(s, w)| (vec![s[0], -s[1]], w.clone()))
            .collect();
        StepModel { dim: 2, steps }
    }

    /// Reverse all steps.
    pub fn reversed(&self) -> Self {
        let steps = self
            .steps
            .iter()
            .map(|(s, w)| (s.iter().map(|&c| -c).collect(), w.clone()))
            .collect();
        StepModel { dim: self.dim, steps }
    }

    /// Lexicographically least of the model and its diagonal mirror.
    pub fn canonical(&self) -> Self {
        if self.dim != 2 {
            return self.clone();
        }
        let m = self.mirror();
        if m < *self {
            m
        } else {
            self.clone()
        }
    }

    pub fn structural_flags(&self) -> Flags {
        assert_eq!(self.dim, 2, "flags are defined for 2D models");
        let steps: Vec<&Vec<i32>> = self.steps.keys().collect();
        let all_four = steps.iter().any(|s| s[0] > 0)
            && steps.iter().any(|s| s[0] < 0)
            && steps.iter().any(|s| s[1] > 0)
            && steps.iter().any(|s| s[1] < 0);
        let in_nn = steps.iter().any(|s| s[0] >= 0 && s[1] >= 0);
        let upper = steps.iter().all(|s| s[1] >= s[0]);
        let lower = steps.iter().all(|s| s[1] <= s[0]);
        let sym = *self == self.mirror();
        let small = steps.iter().all(|s| s.iter().all(|c| c.abs() <= 1));
        let large_backward = steps.iter().any(|s| s.iter().any(|&c| c <= -2));
        Flags {
            all_four_directions: all_four,
            has_step_in_nn: in_nn,
            upper_diagonal: upper,
            lower_diagonal: lower,
            diagonal_symmetric: sym,
            small_step: small,
            has_large_backward: large_backward,
            half_plane_confined: half_plane_confined(&steps),
        }
    }

    /// The period: gcd of lengths of unconstrained excursions.
    ///
    /// Computed from return counts on a bounded window; the horizon doubles
    /// from 24 until at least two nonzero return lengths are seen (hard cap
    /// 200, after which a single observed length is returned as the gcd of
    /// the semigroup it generates).
    pub fn period(&self) -> Result<usize> {
        let mut cap = 24usize;
        loop {
            let lengths = self.return_lengths(cap);
            if lengths.len() >= 2 {
                let mut g = 0usize;
                for n in lengths {
                    g = num_integer::gcd(g, n);
                }
                return Ok(g);
            }
            if cap >= 200 {
                if let Some(&n) = lengths.first() {
                    return Ok(n);
                }
                return Err(Error::NoExcursion(cap));
            }
            cap = (cap * 2).min(200);
        }
    }

    /// Lengths n <= cap with a positive unconstrained return count
    /// (saturating counters: positivity is exact).
    pub fn return_lengths(&self, cap: usize) -> Vec<usize> {
        let d = self.dim;
        let m: i64 = (0..d)
            .map(|a| self.max_move(a).abs().max(self.min_move(a).abs()) as i64)
            .max()
            .unwrap();
        let half = (cap as i64) * m;
        let width = (2 * half + 1) as usize;
        let size = width.pow(d as u32);
        assert!(size <= 1 << 26, "period window too large");
        let index = |pos: &[i64]| -> usize {
            let mut idx = 0usize;
            for &p in pos {
                idx = idx * width + (p + half) as usize;
            }
            idx
        };
        let origin = vec![0i64; d];
        let mut cur = vec![0u64; size];
        cur[index(&origin)] = 1;
        let mut next = vec![0u64; size];
        let steps: Vec<Vec<i64>> = self
            .steps
            .keys()
            .map(|s| s.iter().map(|&c| c as i64).collect())
            .collect();
        let mut found = vec![];
        for n in 1..=cap {
            for v in next.iter_mut() {
                *v = 0;
            }
            let bound = (n as i64) * m;
            let mut pos = vec![-bound; d];
            'sweep: loop {
                let v = cur[index(&pos)];
                if v > 0 {
                    for s in &steps {
                        let mut tgt = pos.clone();
                        let mut ok = true;
                        for (t, c) in tgt.iter_mut().zip(s) {
                            *t += c;
                            if t.abs() > half {
                                ok = false;
                                break;
                            }
                        }
                        if ok {
                            let j = index(&tgt);
                            next[j] = next[j].saturating_add(v);
                        }
                    }
                }
                for k in (0..d).rev() {
                    pos[k] += 1;
                    if pos[k] <= bound {
                        continue 'sweep;
                    }
                    pos[k] = -bound;
                }
                break;
            }
            std::mem::swap(&mut cur, &mut next);
            if cur[index(&origin)] > 0 {
                found.push(n);
            }
        }
        found
    }

    /// Hadamard decomposition S = U(x) + V(x) T(y) with T nonconstant and
    /// V != 0, trying the model itself and then its diagonal mirror.
    /// Returns (U, V, T, mirrored).
    pub fn hadamard_decompose(&self) -> Option<(LaurentPoly, LaurentPoly, LaurentPoly, bool)> {
        assert_eq!(self.dim, 2);
        if let Some((u, v, t)) = hadamard_try(&self.step_poly()) {
            return Some((u, v, t, false));
        }
        if let Some((u, v, t)) = hadamard_try(&self.mirror().step_poly()) {
            return Some((u, v, t, true));
        }
        None
    }
}

fn parse_weight(w: &str) -> Result<Q> {
    let w = w.trim();
    let v = if let Some((n, d)) = w.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| Error::Parse("bad weight".into()))?;
        let d: i64 = d.trim().parse().map_err(|_| Error::Parse("bad weight".into()))?;
        if d == 0 {
            return Err(Error::Parse("bad weight".into()));
        }
        Q::new(n.into(), d.into())
    } else {
        q(w.parse::<i64>().map_err(|_| Error::Parse("bad weight".into()))?)
    };
    if !v.is_positive() {
        return Err(Error::Parse("non-positive weight".into()));
    }
    Ok(v)
}

/// True iff all steps lie in a closed half-plane through the origin
/// (equivalently, the origin is not strictly inside the convex hull).
fn half_plane_confined(steps: &[&Vec<i32>]) -> bool {
    let mut dirs: Vec<(i64, i64)> = vec![];
    for s in steps {
        let (x, y) = (s[0] as i64, s[1] as i64);
        let g = num_integer::gcd(x.abs(), y.abs()).max(1);
        let d = (x / g, y / g);
        if !dirs.contains(&d) {
            dirs.push(d);
        }
    }
    if dirs.len() == 1 {
        return true;
    }
    let half = |(x, y): (i64, i64)| -> u8 {
        if y > 0 || (y == 0 && x > 0) {
            0
        } else {
            1
        }
    };
    // counterclockwise angular order starting in the upper half-plane
    dirs.sort_by(|&a, &b| {
        half(a)
            .cmp(&half(b))
            .then_with(|| (b.0 * a.1 - b.1 * a.0).cmp(&0))
    });
    let n = dirs.len();
    for i in 0..n {
        let a = dirs[i];
        let b = dirs[(i + 1) % n];
        let cross = a.0 * b.1 - a.1 * b.0;
        let dot = a.0 * b.0 + a.1 * b.1;
        // the gap from a to the next direction spans at least pi
        if cross < 0 || (cross == 0 && dot < 0) {
            return true;
        }
        if n == 2 {
            // both cyclic gaps are checked by the two iterations
            continue;
        }
    }
    false
}

fn hadamard_try(s: &LaurentPoly) -> Option<(LaurentPoly, LaurentPoly, LaurentPoly)> {
    // group terms by x-exponent; the y-dependent parts of all groups must be
    // pairwise proportional
    let xmin = s.min_exp(0);
    let xmax = s.max_exp(0);
    let mut u = LaurentPoly::zero_n(1);
    let mut rows: Vec<(i32, LaurentPoly)> = vec![];
    for k in xmin..=xmax {
        let row = s.slice(0, k);
        if row.is_zero() {
            continue;
        }
        let c = row.coeff(&[0]);
        if !c.is_zero() {
            u.add_term(vec![k], c.clone());
        }
        let mut yp = row;
        yp.set(vec![0], Q::zero());
        if !yp.is_zero() {
            rows.push((k, yp));
        }
    }
    if rows.is_empty() {
        return None; // T would be constant
    }
    let (_, base) = rows[0].clone();
    let base_key = base.terms.keys().next().unwrap().clone();
    let base_lead = base.coeff(&base_key);
    let mut v = LaurentPoly::zero_n(1);
    for (k, yp) in &rows {
        let c = yp.coeff(&base_key);
        if c.is_zero() {
            return None;
        }
        let lambda = c / &base_lead;
        if yp != &base.scale(&lambda) {
            return None;
        }
        v.add_term(vec![*k], lambda);
    }
    Some((u, v, base))
}

// ---- census ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub all_four_directions: bool,
    pub has_step_in_nn: bool,
    pub upper_diagonal: bool,
    pub lower_diagonal: bool,
    pub diagonal_symmetric: bool,
    pub small_step: bool,
    pub has_large_backward: bool,
    pub half_plane_confined: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusRecord {
    pub model: String,
    pub cardinality: usize,
    pub flags: Flags,
}

/// Inclusive per-axis bounds of the candidate step box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepBox {
    pub lo: i32,
    pub hi: i32,
}

impl StepBox {
    pub const BACKWARD2: StepBox = StepBox { lo: -2, hi: 1 };
    pub const FORWARD2: StepBox = StepBox { lo: -1, hi: 2 };
    pub const SMALL: StepBox = StepBox { lo: -1, hi: 1 };

    pub fn parse(text: &str) -> Result<StepBox> {
        match text {
            "-2..1" | "backward" => Ok(StepBox::BACKWARD2),
            "-1..2" | "forward" => Ok(StepBox::FORWARD2),
            "-1..1" | "small" => Ok(StepBox::SMALL),
            _ => Err(Error::Parse(format!("unknown step box `{}`", text))),
        }
    }
}

/// All models in the box surviving the census filters: steps in all four
/// axis directions, at least one step in N^2, not upper- or lower-diagonal,
/// one representative per diagonal-symmetry class. Canonical order.
pub fn census(bx: StepBox) -> Vec<CensusRecord> {
    let cells: Vec<(i32, i32)> = (bx.lo..=bx.hi)
        .flat_map(|i| (bx.lo..=bx.hi).map(move |j| (i, j)))
        .filter(|&(i, j)| (i, j) != (0, 0))
        .collect();
    let n = cells.len();
    assert!(n <= 24);
    let mut out = vec![];
    for mask in 1u32..(1u32 << n) {
        let steps: BTreeMap<Vec<i32>, Q> = (0..n)
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| (vec![cells[k].0, cells[k].1], Q::one()))
            .collect();
        let model = StepModel { dim: 2, steps };
        let flags = model.structural_flags();
        if !flags.all_four_directions
            || !flags.has_step_in_nn
            || flags.upper_diagonal
            || flags.lower_diagonal
        {
            continue;
        }
        if model.canonical() != model {
            continue; // the mirror representative is kept instead
        }
        out.push(CensusRecord {
            model: model.format(),
            cardinality: model.steps.len(),
            flags,
        });
    }
    out.sort_by(|a, b| a.model.cmp(&b.model));
    out
}

/// Counts per cardinality (index = number of steps).
pub fn cardinality_counts(records: &[CensusRecord]) -> Vec<usize> {
    let maxc = records.iter().map(|r| r.cardinality).max().unwrap_or(0);
    let mut v = vec![0usize; maxc + 1];
    for r in records {
        v[r.cardinality] += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let m = StepModel::parse("1,0;-1,0;0,-1;-2,1").unwrap();
        assert_eq!(m.format(), "-2,1;-1,0;0,-1;1,0");
        let again = StepModel::parse(&m.format()).unwrap();
        assert_eq!(m, again);
        let m1 = StepModel::parse("2;-1").unwrap();
        assert_eq!(m1.dim, 1);
        assert_eq!(m1.format(), "-1;2");
        let mw = StepModel::parse("1,1:1/2;-1,-1").unwrap();
        assert_eq!(mw.format(), "-1,-1;1,1:1/2");
        assert!(StepModel::parse("0,0").is_err());
        assert!(StepModel::parse("1,0;1,0").is_err());
        assert!(StepModel::parse("1,0:-1").is_err());
    }

    #[test]
    fn flags_examples() {
        let g = StepModel::parse("1,0;1,1;-1,0;-1,-1").unwrap();
        let f = g.structural_flags();
        assert!(f.small_step && !f.has_large_backward);
        // {11,-11,01}: y-negative absent -> half-plane confined
        let m = StepModel::parse("1,1;-1,1;0,1").unwrap();
        assert!(m.structural_flags().half_plane_confined);
        // {11,01,-10}: every step satisfies j >= i -> upper diagonal
        let m = StepModel::parse("1,1;0,1;-1,0").unwrap();
        assert!(m.structural_flags().upper_diagonal);
        // NE+NW+SE is confined to the half-plane x+y >= 0
        let m = StepModel::parse("1,1;-1,1;1,-1").unwrap();
        assert!(m.structural_flags().half_plane_confined);
        let k = StepModel::parse("1,1;-1,0;0,-1").unwrap();
        assert!(!k.structural_flags().half_plane_confined);
    }

    #[test]
    fn census_totals_match() {
        let recs = census(StepBox::BACKWARD2);
        assert_eq!(recs.len(), 13_189);
        let counts = cardinality_counts(&recs);
        assert_eq!(
            counts[3..=15].to_vec(),
            vec![35, 248, 826, 1749, 2610, 2872, 2374, 1481, 691, 236, 57, 9, 1]
        );
        let small: Vec<CensusRecord> =
            recs.iter().filter(|r| r.flags.small_step).cloned().collect();
        assert_eq!(small.len(), 79);
        assert_eq!(recs.len() - small.len(), 13_110);
        let large: Vec<CensusRecord> =
            recs.iter().filter(|r| !r.flags.small_step).cloned().collect();
        let lc = cardinality_counts(&large);
        assert_eq!(
            lc[3..=15].to_vec(),
            vec![28, 225, 799, 1733, 2605, 2871, 2374, 1481, 691, 236, 57, 9, 1]
        );
        let sc = cardinality_counts(&small);
        assert_eq!(sc[3..=8].to_vec(), vec![7, 23, 27, 16, 5, 1]);
        // no large-backward census model is confined to a half-plane
        assert!(large.iter().all(|r| !r.flags.half_plane_confined));
    }

    #[test]
    fn census_small_box() {
        assert_eq!(census(StepBox::SMALL).len(), 79);
    }

    #[test]
    fn reverse_census_halfplane_split() {
        let recs = census(StepBox::FORWARD2);
        let fwd: Vec<&CensusRecord> = recs
            .iter()
            .filter(|r| {
                let m = StepModel::parse(&r.model).unwrap();
                m.steps.keys().any(|s| s.iter().any(|&c| c >= 2))
            })
            .collect();
        let confined = fwd.iter().filter(|r| r.flags.half_plane_confined).count();
        assert_eq!(fwd.len(), 14_268);
        assert_eq!(confined, 1_189);
        assert_eq!(fwd.len() - confined, 13_079);
    }

    #[test]
    fn periods_table() {
        let kreweras = StepModel::parse("1,1;-1,0;0,-1").unwrap();
        assert_eq!(kreweras.period().unwrap(), 3);
        let f = StepModel::parse("1,0;-1,0;0,-1;-2,1").unwrap();
        assert_eq!(f.period().unwrap(), 2);
        let g2 = StepModel::parse("-2,-1;-1,1;0,-1;1,1").unwrap();
        assert_eq!(g2.period().unwrap(), 4);
        let k1 = StepModel::parse("-2,-1;-1,-2;0,1;1,0").unwrap();
        assert_eq!(k1.period().unwrap(), 4);
        let k2 = StepModel::parse("-2,0;-1,-1;0,-2;1,1").unwrap();
        assert_eq!(k2.period().unwrap(), 2);
        let g4 = StepModel::parse("-2,-1;-2,0;1,0;1,1").unwrap();
        assert_eq!(g4.period().unwrap(), 3);
    }

    #[test]
    fn period_divides_all_return_lengths() {
        for text in ["1,1;-1,0;0,-1", "1,0;-1,0;0,-1;-2,1", "-2,-1;-2,0;1,0;1,1"] {
            let m = StepModel::parse(text).unwrap();
            let p = m.period().unwrap();
            for n in m.return_lengths(72) {
                assert_eq!(n % p, 0, "{} at {}", text, n);
            }
        }
    }

    #[test]
    fn hadamard_examples() {
        // S = x + xbar(y + ybar^2)
        let m = StepModel::parse("1,0;-1,1;-1,-2").unwrap();
        let (u, v, t, mirrored) = m.hadamard_decompose().unwrap();
        assert!(!mirrored);
        assert_eq!(u.coeff(&[1]), q(1));
        assert_eq!(v.coeff(&[-1]), q(1));
        assert_eq!(t.coeff(&[1]), q(1));
        assert_eq!(t.coeff(&[-2]), q(1));
        // Gessel is not Hadamard: rows 1+y and 1+ybar are not proportional
        let g = StepModel::parse("1,0;1,1;-1,0;-1,-1").unwrap();
        assert!(g.hadamard_decompose().is_none());
        // decomposition identity S = U + V T
        let s = m.step_poly();
        let rebuilt = u.embed_1to2(0).add(&v.embed_1to2(0).mul(&t.embed_1to2(1)));
        assert_eq!(s, rebuilt);
    }

    #[test]
    fn canonicalization_idempotent_and_mirror_stable() {
        let m = StepModel::parse("0,1;1,-1;-1,-1;-2,1").unwrap();
        let c = m.canonical();
        assert_eq!(c.canonical(), c);
        assert_eq!(m.mirror().canonical(), c);
    }
}
