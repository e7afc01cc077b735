//! Closed-form machinery: 1D kernel solutions via quadratic Hensel lifting
//! (standard and positive-part forms), 2D Hadamard solutions, the
//! positive-part extraction engine, and the solved large-step models whose
//! rational functions are stored as data and validated against enumeration.

use crate::algebra::num::{q, Q};
use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};
use crate::model::StepModel;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Power series in t with Laurent-polynomial coefficients in the spatial
/// variables: levels[n] is the coefficient of t^n.
#[derive(Clone, Debug)]
pub struct TSeriesLaurent {
    pub horizon: usize,
    pub levels: Vec<LaurentPoly>,
}

impl TSeriesLaurent {
    pub fn coeff(&self, n: usize, exps: &[i32]) -> Q {
        self.levels[n].coeff(exps)
    }
}

/// Extraction mode for positive parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtractMode {
    NonNegative,
    StrictlyPositive,
}

/// Coefficient-wise non-negative (or positive) part of numerator / K, where
/// K = 1 - t S: the t^n coefficient is the filtered numerator * S^n.
pub fn positive_part_extract(
    numerator: &LaurentPoly,
    model: &StepModel,
    n: usize,
    mode: ExtractMode,
) -> TSeriesLaurent {
    let s = model.step_poly();
    let strict = mode == ExtractMode::StrictlyPositive;
    let mut levels = Vec::with_capacity(n + 1);
    let mut power = numerator.clone();
    levels.push(power.nonnegative_part(strict));
    for _ in 1..=n {
        power = power.mul(&s);
        levels.push(power.nonnegative_part(strict));
    }
    TSeriesLaurent { horizon: n, levels }
}

// ---- truncated power series over Q and polynomials over them ----

#[derive(Clone, Debug, PartialEq)]
struct Series {
    c: Vec<Q>, // fixed length = truncation order + 1
}

impl Series {
    fn zero(len: usize) -> Self {
        Series { c: vec![Q::zero(); len] }
    }
    fn constant(len: usize, v: Q) -> Self {
        let mut s = Series::zero(len);
        s.c[0] = v;
        s
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn add(&self, o: &Self) -> Self {
        Series { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
    fn sub(&self, o: &Self) -> Self {
        Series { c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        let len = self.c.len();
        let mut r = Series::zero(len);
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    r.c[i + j] += a * b;
                }
            }
        }
        r
    }
    fn neg(&self) -> Self {
        Series { c: self.c.iter().map(|a| -a.clone()).collect() }
    }
    /// Truncate everything at and above t^k (mod t^k).
    fn cut(&self, k: usize) -> Self {
        let mut r = self.clone();
        for i in k..r.c.len() {
            r.c[i] = Q::zero();
        }
        r
    }
    fn inv_unit(&self) -> Self {
        assert!(!self.c[0].is_zero(), "series inverse of non-unit");
        let len = self.c.len();
        let mut r = Series::zero(len);
        r.c[0] = Q::one() / self.c[0].clone();
        for k in 1..len {
            let mut acc = Q::zero();
            for j in 1..=k {
                if !self.c[j].is_zero() {
                    acc += &self.c[j] * &r.c[k - j];
                }
            }
            r.c[k] = -acc / self.c[0].clone();
        }
        r
    }
}

/// Polynomial in one variable with truncated-series coefficients.
#[derive(Clone, Debug, PartialEq)]
struct SPoly {
    c: Vec<Series>, // ascending degree
}

impl SPoly {
    fn zero() -> Self {
        SPoly { c: vec![] }
    }
    fn trim(&mut self) {
        while self.c.last().map_or(false, |s| s.is_zero()) {
            self.c.pop();
        }
    }
    fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }
    fn add(&self, o: &Self) -> Self {
        let len = self.c.len().max(o.c.len());
        let slen = self
            .c
            .first()
            .or_else(|| o.c.first())
            .map(|s| s.c.len())
            .unwrap_or(1);
        let mut r = SPoly { c: vec![Series::zero(slen); len] };
        for (i, s) in self.c.iter().enumerate() {
            r.c[i] = r.c[i].add(s);
        }
        for (i, s) in o.c.iter().enumerate() {
            r.c[i] = r.c[i].add(s);
        }
        r.trim();
        r
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&SPoly { c: o.c.iter().map(|s| s.neg()).collect() })
    }
    fn mul(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return SPoly::zero();
        }
        let slen = self.c[0].c.len();
        let mut r = SPoly { c: vec![Series::zero(slen); self.c.len() + o.c.len() - 1] };
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    r.c[i + j] = r.c[i + j].add(&a.mul(b));
                }
            }
        }
        r.trim();
        r
    }
    fn cut(&self, k: usize) -> Self {
        let mut r = SPoly { c: self.c.iter().map(|s| s.cut(k)).collect() };
        r.trim();
        r
    }
    /// Division by a monic polynomial: (quotient, remainder).
    fn div_rem_monic(&self, d: &SPoly) -> (SPoly, SPoly) {
        let dd = d.deg();
        debug_assert!(d.c[dd].c[0].is_one() && d.c[dd].c[1..].iter().all(|x| x.is_zero()));
        let mut rem = self.clone();
        rem.trim();
        if rem.c.len() <= dd {
            return (SPoly::zero(), rem);
        }
        let slen = self.c[0].c.len();
        let mut quo = SPoly { c: vec![Series::zero(slen); rem.c.len() - dd] };
        for i in (dd..rem.c.len()).rev() {
            let f = rem.c[i].clone();
            if f.is_zero() {
                continue;
            }
            quo.c[i - dd] = f.clone();
            for (j, b) in d.c.iter().enumerate() {
                let t = f.mul(b);
                rem.c[i - dd + j] = rem.c[i - dd + j].sub(&t);
            }
        }
        rem.trim();
        quo.trim();
        (quo, rem)
    }
}

/// Quadratic Hensel lifting of x^m K(x) = F * G over Q[[t]] with F monic of
/// degree m, F = x^m at t = 0. The same routine runs the mirrored lift in
/// xbar for the positive-part form. Returns (F, G).
fn hensel_lift(h: &SPoly, m: usize, order: usize) -> (SPoly, SPoly) {
    let slen = order + 1;
    let one = Series::constant(slen, Q::one());
    // initial factorization mod t: F0 = x^m, G0 = H(x;0) / x^m
    let mut f = SPoly { c: vec![Series::zero(slen); m + 1] };
    f.c[m] = one.clone();
    let mut g = SPoly {
        c: h.c[m..]
            .iter()
            .map(|s| Series::constant(slen, s.c[0].clone()))
            .collect(),
    };
    g.trim();
    // sanity: H(x;0) must equal F0 * G0 and G0(0) must be a unit
    debug_assert!(!g.c[0].c[0].is_zero(), "cofactor not a unit at x = 0");
    // Bezout: s*G + t*F = 1 mod t, computed by the extended Euclid over Q
    // on the t = 0 polynomials
    let g0: Vec<Q> = g.c.iter().map(|s| s.c[0].clone()).collect();
    let f0: Vec<Q> = f.c.iter().map(|s| s.c[0].clone()).collect();
    let (gg, sbez, tbez) = crate::algebra::algnum::xgcd(
        &crate::algebra::UniPoly::new(g0),
        &crate::algebra::UniPoly::new(f0),
    );
    assert_eq!(gg.deg(), 0, "t=0 factors not coprime");
    let scale = Q::one() / gg.coeff(0);
    let lift_poly = |p: &crate::algebra::UniPoly| -> SPoly {
        let mut r = SPoly {
            c: p.coeffs
                .iter()
                .map(|c| Series::constant(slen, c * &scale))
                .collect(),
        };
        r.trim();
        r
    };
    let mut s = lift_poly(&sbez);
    let mut t = lift_poly(&tbez);
    // lift to t^(2^k) until the full order is reached
    let mut k = 1usize;
    while k <= order {
        let k2 = (2 * k).min(order + 1);
        // e = H - G F mod t^k2
        let e = h.sub(&g.mul(&f)).cut(k2);
        // (qd, r) = (s e) divided by F
        let (qd, r) = s.mul(&e).cut(k2).div_rem_monic(&f);
        let f_new = f.add(&r).cut(k2);
        let g_new = g.add(&t.mul(&e).cut(k2)).add(&qd.mul(&g)).cut(k2);
        // Bezout update: b = s g* + t f* - 1
        let minus_one = {
            let mut p = SPoly { c: vec![Series::constant(slen, -Q::one())] };
            p.trim();
            p
        };
        let b = s.mul(&g_new).add(&t.mul(&f_new)).add(&minus_one).cut(k2);
        let (c, d) = s.mul(&b).cut(k2).div_rem_monic(&f_new);
        let s_new = s.sub(&d).cut(k2);
        let t_new = t.sub(&t.mul(&b)).sub(&c.mul(&g_new)).cut(k2);
        f = f_new;
        g = g_new;
        s = s_new;
        t = t_new;
        if k2 == order + 1 {
            break;
        }
        k = k2;
    }
    (f, g)
}

/// Monic degree-m factor F(x;t) of x^m K(x) over Q[[t]], F = x^m mod t,
/// lifted to t-order N, together with its cofactor. The identity
/// x^m K = F * G holds exactly mod t^(N+1).
pub fn hensel_kernel_factor(model: &StepModel, n: usize) -> Result<(Vec<Vec<Q>>, Vec<Vec<Q>>)> {
    assert_eq!(model.dim, 1);
    let m = (-model.min_move(0)).max(0) as usize;
    let mm = model.max_move(0).max(0) as usize;
    if m == 0 || mm == 0 {
        return Err(Error::TrivialModel);
    }
    let slen = n + 1;
    // H = x^m - t * sum_i w_i x^(m+i)
    let mut h = SPoly { c: vec![Series::zero(slen); m + mm + 1] };
    h.c[m].c[0] = Q::one();
    for (s, w) in &model.steps {
        let d = (s[0] + m as i32) as usize;
        h.c[d].c[1] -= w;
    }
    let (f, g) = hensel_lift(&h, m, n);
    // residual check: x^m K - F G = 0 mod t^(N+1)
    let resid = h.sub(&f.mul(&g)).cut(n + 1);
    assert!(resid.c.is_empty(), "Hensel lifting failed to certify");
    let to_vecs = |p: &SPoly| p.c.iter().map(|s| s.c.clone()).collect();
    Ok((to_vecs(&f), to_vecs(&g)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form1D {
    Standard,
    PositivePart,
}

/// Half-line generating series Q(x;t) to t-order N.
pub fn solve_1d(model: &StepModel, n: usize, form: Form1D) -> Result<TSeriesLaurent> {
    assert_eq!(model.dim, 1);
    let m = (-model.min_move(0)).max(0) as usize;
    let mm = model.max_move(0).max(0) as usize;
    if mm == 0 {
        return Err(Error::TrivialModel);
    }
    let s = model.step_poly();
    match form {
        Form1D::Standard => {
            // Q = x^-m F(x;t) / K(x): t^n coefficient = x^-m sum_k F_k S^(n-k)
            if m == 0 {
                // no backward steps: Q = 1/K directly
                let mut levels = vec![];
                let mut power = LaurentPoly::one_n(1);
                for k in 0..=n {
                    levels.push(power.clone());
                    if k < n {
                        power = power.mul(&s);
                    }
                }
                return Ok(TSeriesLaurent { horizon: n, levels });
            }
            let (f, _g) = hensel_kernel_factor(model, n)?;
            // f[d][k]: coefficient of x^d t^k
            let mut spow = vec![LaurentPoly::one_n(1)];
            for k in 1..=n {
                spow.push(spow[k - 1].mul(&s));
            }
            let mut levels = vec![];
            for lvl in 0..=n {
                let mut acc = LaurentPoly::zero_n(1);
                for (d, series) in f.iter().enumerate() {
                    for k in 0..=lvl {
                        if series[k].is_zero() {
                            continue;
                        }
                        // x^(d-m) t^k * S^(lvl-k)
                        let term = spow[lvl - k]
                            .mul_monomial(&[d as i32 - m as i32], &series[k]);
                        acc = acc.add(&term);
                    }
                }
                // a genuine power series in x: no negative exponents survive
                assert!(acc.min_exp(0) >= 0, "standard form produced negative powers");
                levels.push(acc);
            }
            Ok(TSeriesLaurent { horizon: n, levels })
        }
        Form1D::PositivePart => {
            if m == 0 {
                return solve_1d(model, n, Form1D::Standard);
            }
            // Mirrored lift: factor the kernel-equation polynomial over
            // Q[[xbar]]; A(xbar) = xbar^m F~(1/xbar) collects the elementary
            // symmetric functions of the small roots.
            let order = n * mm + m + 1;
            let slen = order + 1;
            let mut h = SPoly { c: vec![Series::zero(slen); m + mm + 1] };
            // H(X; xbar) = xbar^M sum_i w_i X^(m+i) - X^m sum_i w_i xbar^(M-i)
            for (st, w) in &model.steps {
                let d = (st[0] + m as i32) as usize;
                h.c[d].c[mm] += w;
                let e = (mm as i32 - st[0]) as usize;
                h.c[m].c[e] -= w;
            }
            let (f, _g) = hensel_lift(&h, m, order);
            // A(xbar) = sum_k f_k(xbar) xbar^(m-k)
            let mut a = vec![Q::zero(); slen];
            for (d, series) in f.c.iter().enumerate() {
                if d > m {
                    continue;
                }
                let shift = m - d;
                for (k, v) in series.c.iter().enumerate() {
                    if k + shift <= order && !v.is_zero() {
                        a[k + shift] += v;
                    }
                }
            }
            // Q(x) = [x>=] A(xbar) / K(x): t^n coefficient = [x>=] A * S^n
            let mut levels = vec![];
            let mut power = LaurentPoly::one_n(1);
            for lvl in 0..=n {
                if lvl > 0 {
                    power = power.mul(&s);
                }
                let mut acc = LaurentPoly::zero_n(1);
                for (e, c) in &power.terms {
                    let x_exp = e[0];
                    // pair with A terms xbar^j, j <= x_exp
                    let top = x_exp.min(order as i32);
                    for j in 0..=top.max(-1) {
                        if a[j as usize].is_zero() {
                            continue;
                        }
                        acc.add_term(vec![x_exp - j], c * &a[j as usize]);
                    }
                }
                levels.push(acc);
            }
            Ok(TSeriesLaurent { horizon: n, levels })
        }
    }
}

/// The elementary-symmetric series A(xbar) for a 1D model (used by tests to
/// check the M = 1 reduction A = S'(x)/w_1).
pub fn small_root_symmetric_series(model: &StepModel, order: usize) -> Result<Vec<Q>> {
    assert_eq!(model.dim, 1);
    let m = (-model.min_move(0)).max(0) as usize;
    let mm = model.max_move(0).max(0) as usize;
    if m == 0 || mm == 0 {
        return Err(Error::TrivialModel);
    }
    let slen = order + 1;
    let mut h = SPoly { c: vec![Series::zero(slen); m + mm + 1] };
    for (st, w) in &model.steps {
        let d = (st[0] + m as i32) as usize;
        h.c[d].c[mm] += w;
        let e = (mm as i32 - st[0]) as usize;
        h.c[m].c[e] -= w;
    }
    let (f, _g) = hensel_lift(&h, m, order);
    let mut a = vec![Q::zero(); slen];
    for (d, series) in f.c.iter().enumerate() {
        if d > m {
            continue;
        }
        let shift = m - d;
        for (k, v) in series.c.iter().enumerate() {
            if k + shift < slen && !v.is_zero() {
                a[k + shift] += v;
            }
        }
    }
    Ok(a)
}

// ---- solved models (stored rational functions) ----

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolvedModelId {
    F,
    P12a,
    P12b,
    P18,
    Tandem,
}

impl SolvedModelId {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "F" | "f" => Ok(SolvedModelId::F),
            "P12a" | "p12a" => Ok(SolvedModelId::P12a),
            "P12b" | "p12b" => Ok(SolvedModelId::P12b),
            "P18" | "p18" => Ok(SolvedModelId::P18),
            "tandem" => Ok(SolvedModelId::Tandem),
            _ => Err(Error::UnknownModelId(s.into())),
        }
    }

    pub fn all() -> [SolvedModelId; 5] {
        [
            SolvedModelId::F,
            SolvedModelId::P12a,
            SolvedModelId::P12b,
            SolvedModelId::P18,
            SolvedModelId::Tandem,
        ]
    }
}

#[derive(Clone, Debug)]
pub struct SolvedModel {
    pub id: SolvedModelId,
    pub model: StepModel,
    /// Numerator with the monomial denominator folded in as negative powers.
    pub numerator: LaurentPoly,
    pub mode: ExtractMode,
}

fn poly2(terms: &[(i32, i32, i64)]) -> LaurentPoly {
    let mut p = LaurentPoly::zero_n(2);
    for &(i, j, c) in terms {
        p.add_term(vec![i, j], q(c));
    }
    p
}

/// The stored rational function of a solved model.
pub fn solved_model(id: SolvedModelId) -> SolvedModel {
    match id {
        SolvedModelId::Tandem => {
            // (1 - xbar ybar)(1 - xbar^2 y)(1 - x ybar^2)
            let n = poly2(&[(0, 0, 1), (-1, -1, -1)])
                .mul(&poly2(&[(0, 0, 1), (-2, 1, -1)]))
                .mul(&poly2(&[(0, 0, 1), (1, -2, -1)]));
            SolvedModel {
                id,
                model: StepModel::parse("1,-1;-1,0;0,1").unwrap(),
                numerator: n,
                mode: ExtractMode::NonNegative,
            }
        }
        SolvedModelId::F => {
            // (x^2+1)(x+y)(y-x)(x^2 y - 2x - y)(x^3 - x - 2y) / (x^7 y^3)
            let n = poly2(&[(2, 0, 1), (0, 0, 1)])
                .mul(&poly2(&[(1, 0, 1), (0, 1, 1)]))
                .mul(&poly2(&[(0, 1, 1), (1, 0, -1)]))
                .mul(&poly2(&[(2, 1, 1), (1, 0, -2), (0, 1, -1)]))
                .mul(&poly2(&[(3, 0, 1), (1, 0, -1), (0, 1, -2)]))
                .mul_monomial(&[-7, -3], &q(1));
            SolvedModel {
                id,
                model: StepModel::parse("1,0;-1,0;0,-1;-2,1").unwrap(),
                numerator: n,
                mode: ExtractMode::NonNegative,
            }
        }
        SolvedModelId::P12a => {
            // (x^3 - 2y^2 - x)(y^2 - x)(x^2 y^2 - y^2 - 2x) / (x^5 y^4)
            let n = poly2(&[(3, 0, 1), (0, 2, -2), (1, 0, -1)])
                .mul(&poly2(&[(0, 2, 1), (1, 0, -1)]))
                .mul(&poly2(&[(2, 2, 1), (0, 2, -1), (1, 0, -2)]))
                .mul_monomial(&[-5, -4], &q(1));
            SolvedModel {
                id,
                model: StepModel::parse("0,1;1,-1;-1,-1;-2,1").unwrap(),
                numerator: n,
                mode: ExtractMode::NonNegative,
            }
        }
        SolvedModelId::P12b => {
            // (y^2 - x)(x^2 y^2 - x y - y^2 - 2x)(x^3 - x y - 2y^2 - x) / (x^5 y^4)
            let n = poly2(&[(0, 2, 1), (1, 0, -1)])
                .mul(&poly2(&[(2, 2, 1), (1, 1, -1), (0, 2, -1), (1, 0, -2)]))
                .mul(&poly2(&[(3, 0, 1), (1, 1, -1), (0, 2, -2), (1, 0, -1)]))
                .mul_monomial(&[-5, -4], &q(1));
            SolvedModel {
                id,
                model: StepModel::parse("0,1;1,-1;-1,-1;-2,1;-1,0").unwrap(),
                numerator: n,
                mode: ExtractMode::NonNegative,
            }
        }
        SolvedModelId::P18 => {
            // (2-y)(x^3-y^2)(x^6 y - 3x^3 y - x^3 - y^2)(x^3 - 2y) / (x^9 y^4)
            let n = poly2(&[(0, 0, 2), (0, 1, -1)])
                .mul(&poly2(&[(3, 0, 1), (0, 2, -1)]))
                .mul(&poly2(&[(6, 1, 1), (3, 1, -3), (3, 0, -1), (0, 2, -1)]))
                .mul(&poly2(&[(3, 0, 1), (0, 1, -2)]))
                .mul_monomial(&[-9, -4], &q(1));
            SolvedModel {
                id,
                model: StepModel::parse("1,0;1,-1;-2,1;-2,0").unwrap(),
                numerator: n,
                mode: ExtractMode::NonNegative,
            }
        }
    }
}

/// Extraction of a solved model's series to t-order N.
pub fn extract_solved(id: SolvedModelId, n: usize) -> TSeriesLaurent {
    let sm = solved_model(id);
    positive_part_extract(&sm.numerator, &sm.model, n, sm.mode)
}

// ---- Hadamard solving ----

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HadamardPath {
    /// all forward steps small: non-negative part of S_x T_y / (B_1 K)
    Extraction,
    /// general: 1D projection and Hadamard product
    Projection,
}

#[derive(Clone, Debug)]
pub struct HadamardSolution {
    pub path: HadamardPath,
    /// levels[n]: map (i, j) -> q(i, j; n)
    pub levels: Vec<BTreeMap<(i32, i32), Q>>,
}

impl HadamardSolution {
    pub fn excursions(&self) -> Vec<Q> {
        self.levels
            .iter()
            .map(|t| t.get(&(0, 0)).cloned().unwrap_or_else(Q::zero))
            .collect()
    }
    pub fn totals(&self) -> Vec<Q> {
        self.levels
            .iter()
            .map(|t| {
                let mut s = Q::zero();
                for v in t.values() {
                    s += v;
                }
                s
            })
            .collect()
    }
}

/// Solve a Hadamard model to t-order N, by rational extraction when all
/// forward steps are small and by the projection otherwise.
pub fn solve_hadamard(model: &StepModel, n: usize) -> Result<HadamardSolution> {
    let Some((_u, _v, t_poly, mirrored)) = model.hadamard_decompose() else {
        return Err(Error::Unsupported("model is not Hadamard".into()));
    };
    let work = if mirrored { model.mirror() } else { model.clone() };
    let small_forward = work.max_move(0) == 1 && work.max_move(1) == 1;
    if !small_forward {
        let levels = crate::enumerate::hadamard_projection_table(model, n)?;
        return Ok(HadamardSolution { path: HadamardPath::Projection, levels });
    }
    // numerator S_x(x,y) T_y(y); divide by B_1(y) in descending y powers
    let s = work.step_poly();
    let sx = s.diff(0);
    let ty = t_poly.diff(0).embed_1to2(1);
    let b1 = s.slice(0, 1); // coefficient of x^1, Laurent in y
    assert!(!b1.is_zero());
    let numer = sx.mul(&ty);
    let mut levels = vec![];
    let mut power = numer.clone();
    for lvl in 0..=n {
        if lvl > 0 {
            power = power.mul(&s.clone());
        }
        let filtered = divide_by_y_poly_keep_nonneg(&power, &b1);
        let mut table = BTreeMap::new();
        for (e, c) in &filtered.terms {
            if e[0] >= 0 && e[1] >= 0 {
                let key = if mirrored { (e[1], e[0]) } else { (e[0], e[1]) };
                table.insert(key, c.clone());
            }
        }
        levels.push(table);
    }
    Ok(HadamardSolution { path: HadamardPath::Extraction, levels })
}

/// Laurent series division by a univariate Laurent polynomial in y,
/// expanded in descending powers of y, keeping exponents >= 0. The quotient
/// is exact down to y^0; everything below is discarded.
fn divide_by_y_poly_keep_nonneg(w: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    assert_eq!(b.nvars(), 1);
    let d = b.max_exp(0);
    let lead = b.coeff(&[d]);
    assert!(!lead.is_zero());
    let mut rem = w.clone();
    let mut quo = LaurentPoly::zero_n(2);
    loop {
        let ymax = rem.max_exp(0.max(1));
        if rem.is_zero() || ymax - d < 0 {
            break;
        }
        // collect the top y-slice
        let k = ymax;
        let slice: Vec<(Vec<i32>, Q)> = rem
            .terms
            .iter()
            .filter(|(e, _)| e[1] == k)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        if slice.is_empty() {
            // no terms at the top; find the true max below d and bail if low
            break;
        }
        for (e, c) in slice {
            let f = &c / &lead;
            let qe = vec![e[0], e[1] - d];
            quo.add_term(qe.clone(), f.clone());
            // rem -= f * x^e0 y^(e1-d) * b(y)
            for (be, bc) in &b.terms {
                rem.add_term(vec![qe[0], qe[1] + be[0]], -(&f * bc));
            }
        }
    }
    quo
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{count_orthant, CountOptions};

    fn model_1d(text: &str) -> StepModel {
        StepModel::parse(text).unwrap()
    }

    #[test]
    fn hensel_factor_identity_and_examples() {
        // S = {-1, 2}: F = x - X1(t), X1 = t + t^4 + 3t^7 + ...
        let m = model_1d("-1;2");
        let (f, _g) = hensel_kernel_factor(&m, 9).unwrap();
        assert_eq!(f.len(), 2); // monic degree 1
        // X1 = -f[0]
        let x1: Vec<Q> = f[0].iter().map(|c| -c.clone()).collect();
        assert_eq!(x1[1], q(1));
        assert_eq!(x1[4], q(1));
        assert_eq!(x1[7], q(3));
        assert!(x1[2].is_zero() && x1[3].is_zero() && x1[5].is_zero());
        // S = {-2, 1}: F degree 2
        let m = model_1d("-2;1");
        let (f, _) = hensel_kernel_factor(&m, 8).unwrap();
        assert_eq!(f.len(), 3);
        // S = {-1, 1}: X1 = (1 - sqrt(1-4t^2))/(2t) = t + t^3 + 2t^5 (Catalan)
        let m = model_1d("-1;1");
        let (f, _) = hensel_kernel_factor(&m, 7).unwrap();
        let x1: Vec<Q> = f[0].iter().map(|c| -c.clone()).collect();
        assert_eq!(x1[1], q(1));
        assert_eq!(x1[3], q(1));
        assert_eq!(x1[5], q(2));
        assert_eq!(x1[7], q(5));
    }

    #[test]
    fn solve_1d_matches_dp() {
        for text in ["-1;2", "-2;1", "-1;1", "-2;-1;1", "-1;1;2"] {
            let m = model_1d(text);
            let n = 40;
            let dp = count_orthant(&m, n, &CountOptions::exact(1)).unwrap();
            let std_form = solve_1d(&m, n, Form1D::Standard).unwrap();
            let pos_form = solve_1d(&m, n, Form1D::PositivePart).unwrap();
            for lvl in 0..=n {
                for (pos, v) in dp.level_exact(lvl) {
                    assert_eq!(&std_form.coeff(lvl, &[pos[0]]), v, "{} std {:?} {}", text, pos, lvl);
                    assert_eq!(&pos_form.coeff(lvl, &[pos[0]]), v, "{} pos {:?} {}", text, pos, lvl);
                }
                // and the two forms agree everywhere
                assert_eq!(std_form.levels[lvl], pos_form.levels[lvl], "{} lvl {}", text, lvl);
            }
        }
    }

    #[test]
    fn excursion_prefixes() {
        // S = {-1,2}: Q(0;t) = 1 + t^3 + 3t^6 + ...
        let m = model_1d("-1;2");
        let sol = solve_1d(&m, 9, Form1D::Standard).unwrap();
        let e: Vec<Q> = (0..=9).map(|n| sol.coeff(n, &[0])).collect();
        assert_eq!(e[0], q(1));
        assert_eq!(e[3], q(1));
        assert_eq!(e[6], q(3));
        // S = {-2,1}: Q(0;t) prefix 1 + t^3 + 3t^6
        let m = model_1d("-2;1");
        let sol = solve_1d(&m, 6, Form1D::Standard).unwrap();
        assert_eq!(sol.coeff(0, &[0]), q(1));
        assert_eq!(sol.coeff(3, &[0]), q(1));
        assert_eq!(sol.coeff(6, &[0]), q(3));
    }

    #[test]
    fn m1_reduction_is_s_prime() {
        // for M = 1 the symmetric series A(xbar) equals S'(x)/w_1 exactly
        let m = model_1d("-2;1");
        let a = small_root_symmetric_series(&m, 12).unwrap();
        // S = xbar^2 + x, S' = 1 - 2 xbar^3, w_1 = 1
        assert_eq!(a[0], q(1));
        assert_eq!(a[3], q(-2));
        for (k, v) in a.iter().enumerate() {
            if k != 0 && k != 3 {
                assert!(v.is_zero(), "A has unexpected term at xbar^{}", k);
            }
        }
    }

    #[test]
    fn lagrange_identity() {
        // sum_i u_i^d / prod_{j != i} (u_i - u_j) = [d = m] for m <= 4
        use crate::algebra::num::qq;
        let nodess: Vec<Vec<Q>> = vec![
            vec![q(2), q(5)],
            vec![q(1), q(-3), qq(7, 2)],
            vec![q(2), q(3), q(5), qq(-1, 4)],
            vec![q(1), q(2), q(3), q(4), qq(9, 7)],
        ];
        for nodes in nodess {
            let m = nodes.len() - 1;
            for d in 0..=m {
                let mut acc = Q::zero();
                for i in 0..nodes.len() {
                    let mut num = Q::one();
                    for _ in 0..d {
                        num *= &nodes[i];
                    }
                    let mut den = Q::one();
                    for j in 0..nodes.len() {
                        if j != i {
                            den *= nodes[i].clone() - nodes[j].clone();
                        }
                    }
                    acc += num / den;
                }
                let expect = if d == m { q(1) } else { q(0) };
                assert_eq!(acc, expect, "m={} d={}", m, d);
            }
        }
    }

    #[test]
    fn tandem_extraction_matches_dp() {
        let sol = extract_solved(SolvedModelId::Tandem, 12);
        let m = StepModel::parse("1,-1;-1,0;0,1").unwrap();
        let dp = count_orthant(&m, 12, &CountOptions::exact(2)).unwrap();
        for n in 0..=12usize {
            for (pos, v) in dp.level_exact(n) {
                assert_eq!(&sol.coeff(n, pos), v, "tandem {:?} {}", pos, n);
            }
            // and nothing extra
            for (e, c) in &sol.levels[n].terms {
                assert_eq!(&dp.value(e, n), c);
            }
        }
    }

    #[test]
    fn model_f_extraction_prefix() {
        let sol = extract_solved(SolvedModelId::F, 10);
        // e_0 = e_1 = 1 in the t^2-indexed excursion series: q(0,0;2)=1
        assert_eq!(sol.coeff(0, &[0, 0]), q(1));
        assert_eq!(sol.coeff(2, &[0, 0]), q(1));
        let m = solved_model(SolvedModelId::F).model;
        let dp = count_orthant(&m, 10, &CountOptions::exact(2)).unwrap();
        for n in 0..=10usize {
            for (pos, v) in dp.level_exact(n) {
                assert_eq!(&sol.coeff(n, pos), v, "F {:?} {}", pos, n);
            }
        }
    }

    #[test]
    fn zero_numerator_gives_zero_series() {
        let m = StepModel::parse("1,-1;-1,0;0,1").unwrap();
        let z = LaurentPoly::zero_n(2);
        let sol = positive_part_extract(&z, &m, 5, ExtractMode::NonNegative);
        assert!(sol.levels.iter().all(|l| l.is_zero()));
    }

    #[test]
    fn hadamard_extraction_and_projection() {
        // the two-sided example: S = x + xbar(y + ybar^2) and its reverse
        let m = StepModel::parse("1,0;-1,1;-1,-2").unwrap();
        let sol = solve_hadamard(&m, 14).unwrap();
        assert_eq!(sol.path, HadamardPath::Extraction);
        let dp = count_orthant(&m, 14, &CountOptions::exact(2)).unwrap();
        for n in 0..=14usize {
            for (pos, v) in dp.level_exact(n) {
                assert_eq!(
                    sol.levels[n].get(&(pos[0], pos[1])).cloned().unwrap_or_else(Q::zero),
                    v.clone(),
                    "extraction {:?} {}",
                    pos,
                    n
                );
            }
            for ((i, j), v) in &sol.levels[n] {
                assert_eq!(dp.value(&[*i, *j], n), *v);
            }
        }
        let r = m.reversed();
        let sol_r = solve_hadamard(&r, 12).unwrap();
        assert_eq!(sol_r.path, HadamardPath::Projection);
        let dp_r = count_orthant(&r, 12, &CountOptions::exact(2)).unwrap();
        for n in 0..=12usize {
            for (pos, v) in dp_r.level_exact(n) {
                assert_eq!(
                    sol_r.levels[n].get(&(pos[0], pos[1])).cloned().unwrap_or_else(Q::zero),
                    v.clone()
                );
            }
        }
        // degenerate symmetric T: S = x + xbar(y + ybar)
        let sym = StepModel::parse("1,0;-1,1;-1,-1").unwrap();
        let sol_s = solve_hadamard(&sym, 10).unwrap();
        let dp_s = count_orthant(&sym, 10, &CountOptions::exact(2)).unwrap();
        for n in 0..=10usize {
            for (pos, v) in dp_s.level_exact(n) {
                assert_eq!(
                    sol_s.levels[n].get(&(pos[0], pos[1])).cloned().unwrap_or_else(Q::zero),
                    v.clone()
                );
            }
        }
    }

    #[test]
    fn hadamard_example_numerator_display() {
        // the stored extraction numerator for S = x + xbar(y+ybar^2) is
        // (1 - xbar^2(y + ybar^2)) (1 - 2 ybar^3)
        let m = StepModel::parse("1,0;-1,1;-1,-2").unwrap();
        let s = m.step_poly();
        let sx = s.diff(0);
        let (_, _, t, _) = m.hadamard_decompose().unwrap();
        let ty = t.diff(0).embed_1to2(1);
        let numer = sx.mul(&ty);
        let expect = super::poly2(&[(0, 0, 1), (-2, 1, -1), (-2, -2, -1)])
            .mul(&super::poly2(&[(0, 0, 1), (0, -3, -2)]));
        assert_eq!(numer, expect);
    }
}
