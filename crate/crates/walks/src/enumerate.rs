//! Dynamic-programming enumeration of orthant-confined and unconstrained
//! walks, with exact, mod-p, and normalized-floating backends, plus the
//! closed-form coefficient formulas of the solved models.

use crate::algebra::num::{q, Q, Z};
use crate::error::{Error, Result};
use crate::model::StepModel;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

pub const DEFAULT_PRIME: u64 = 2_147_483_647;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Exact,
    ModP(u64),
    Float,
}

#[derive(Clone, Debug)]
pub struct CountOptions {
    pub start: Vec<i32>,
    pub unconstrained: bool,
    pub backend: Backend,
}

impl CountOptions {
    pub fn exact(dim: usize) -> Self {
        CountOptions { start: vec![0; dim], unconstrained: false, backend: Backend::Exact }
    }
}

#[derive(Clone, Debug)]
pub enum TableData {
    Exact(Vec<BTreeMap<Vec<i32>, Q>>),
    ModP { p: u64, levels: Vec<BTreeMap<Vec<i32>, u64>> },
    Float { levels: Vec<BTreeMap<Vec<i32>, f64>>, log_scales: Vec<f64> },
}

/// Walk counts q(P; n) for 0 <= n <= horizon over the reachable window.
#[derive(Clone, Debug)]
pub struct SeriesTable {
    pub model: StepModel,
    pub start: Vec<i32>,
    pub horizon: usize,
    pub unconstrained: bool,
    pub data: TableData,
}

impl SeriesTable {
    pub fn value(&self, pos: &[i32], n: usize) -> Q {
        match &self.data {
            TableData::Exact(levels) => levels[n].get(pos).cloned().unwrap_or_else(Q::zero),
            TableData::ModP { levels, .. } => {
                q(levels[n].get(pos).copied().unwrap_or(0) as i64)
            }
            TableData::Float { levels, log_scales } => {
                let v = levels[n].get(pos).copied().unwrap_or(0.0);
                q(((v * log_scales[n].exp()) as i64).max(0))
            }
        }
    }

    /// e_n = q(start; n).
    pub fn excursions(&self) -> Vec<Q> {
        let start = self.start.clone();
        (0..=self.horizon).map(|n| self.value(&start, n)).collect()
    }

    /// q_n = sum over endpoints.
    pub fn totals(&self) -> Vec<Q> {
        match &self.data {
            TableData::Exact(levels) => levels
                .iter()
                .map(|lv| {
                    let mut s = Q::zero();
                    for v in lv.values() {
                        s += v;
                    }
                    s
                })
                .collect(),
            TableData::ModP { p, levels } => levels
                .iter()
                .map(|lv| {
                    let mut s = 0u64;
                    for v in lv.values() {
                        s = (s + v) % p;
                    }
                    q(s as i64)
                })
                .collect(),
            TableData::Float { .. } => panic!("use float_log_marginals for float totals"),
        }
    }

    pub fn level_exact(&self, n: usize) -> &BTreeMap<Vec<i32>, Q> {
        match &self.data {
            TableData::Exact(levels) => &levels[n],
            _ => panic!("exact backend required"),
        }
    }
}

/// Orthant-confined (or unconstrained) walk counts up to horizon `n`.
pub fn count_orthant(model: &StepModel, n: usize, opts: &CountOptions) -> Result<SeriesTable> {
    let d = model.dim;
    if d > 3 {
        return Err(Error::BadDimension(d));
    }
    if matches!(opts.backend, Backend::Exact) {
        let cells = (0..d)
            .map(|a| n * model.max_move(a).max(1) as usize + 1)
            .product::<usize>();
        if cells.saturating_mul(n) > 200_000_000 {
            return Err(Error::ExactBudget);
        }
    }
    let steps: Vec<(Vec<i32>, Q)> =
        model.steps.iter().map(|(s, w)| (s.clone(), w.clone())).collect();
    let inside = |pos: &[i32]| -> bool {
        opts.unconstrained || pos.iter().all(|&c| c >= 0)
    };
    match opts.backend {
        Backend::Exact => {
            let mut levels: Vec<BTreeMap<Vec<i32>, Q>> = Vec::with_capacity(n + 1);
            let mut cur = BTreeMap::new();
            cur.insert(opts.start.clone(), Q::one());
            levels.push(cur);
            for k in 1..=n {
                let mut next: BTreeMap<Vec<i32>, Q> = BTreeMap::new();
                for (pos, v) in &levels[k - 1] {
                    for (s, w) in &steps {
                        let tgt: Vec<i32> = pos.iter().zip(s).map(|(a, b)| a + b).collect();
                        if inside(&tgt) {
                            *next.entry(tgt).or_insert_with(Q::zero) += v * w;
                        }
                    }
                }
                levels.push(next);
            }
            Ok(SeriesTable {
                model: model.clone(),
                start: opts.start.clone(),
                horizon: n,
                unconstrained: opts.unconstrained,
                data: TableData::Exact(levels),
            })
        }
        Backend::ModP(p) => {
            let wmod: Vec<(Vec<i32>, u64)> = steps
                .iter()
                .map(|(s, w)| (s.clone(), crate::algebra::linalg::modp::q_mod(w, p)))
                .collect();
            let mut levels: Vec<BTreeMap<Vec<i32>, u64>> = Vec::with_capacity(n + 1);
            let mut cur = BTreeMap::new();
            cur.insert(opts.start.clone(), 1u64);
            levels.push(cur);
            for k in 1..=n {
                let mut next: BTreeMap<Vec<i32>, u64> = BTreeMap::new();
                for (pos, v) in &levels[k - 1] {
                    for (s, w) in &wmod {
                        let tgt: Vec<i32> = pos.iter().zip(s).map(|(a, b)| a + b).collect();
                        if inside(&tgt) {
                            let e = next.entry(tgt).or_insert(0);
                            *e = (*e + crate::algebra::linalg::modp::mul(*v, *w, p)) % p;
                        }
                    }
                }
                levels.push(next);
            }
            Ok(SeriesTable {
                model: model.clone(),
                start: opts.start.clone(),
                horizon: n,
                unconstrained: opts.unconstrained,
                data: TableData::ModP { p, levels },
            })
        }
        Backend::Float => {
            let wf: Vec<(Vec<i32>, f64)> = steps
                .iter()
                .map(|(s, w)| (s.clone(), crate::algebra::num::q_to_f64(w)))
                .collect();
            let mut levels: Vec<BTreeMap<Vec<i32>, f64>> = Vec::with_capacity(n + 1);
            let mut log_scales = vec![0.0f64];
            let mut cur = BTreeMap::new();
            cur.insert(opts.start.clone(), 1.0f64);
            levels.push(cur);
            for k in 1..=n {
                let mut next: BTreeMap<Vec<i32>, f64> = BTreeMap::new();
                for (pos, v) in &levels[k - 1] {
                    for (s, w) in &wf {
                        let tgt: Vec<i32> = pos.iter().zip(s).map(|(a, b)| a + b).collect();
                        if inside(&tgt) {
                            *next.entry(tgt).or_insert(0.0) += v * w;
                        }
                    }
                }
                let max = next.values().cloned().fold(0.0f64, f64::max);
                let scale = if max > 0.0 { max } else { 1.0 };
                for v in next.values_mut() {
                    *v /= scale;
                }
                log_scales.push(log_scales[k - 1] + scale.ln());
                levels.push(next);
            }
            Ok(SeriesTable {
                model: model.clone(),
                start: opts.start.clone(),
                horizon: n,
                unconstrained: opts.unconstrained,
                data: TableData::Float { levels, log_scales },
            })
        }
    }
}

// ---- dense marginal streams (2D) ----

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Marginal {
    /// q(0,0;n)
    Excursions,
    /// sum of q(i,j;n)
    Totals,
}

struct Grid2 {
    wy: usize,
}

impl Grid2 {
    fn idx(&self, x: usize, y: usize) -> usize {
        x * self.wy + y
    }
}

fn integer_weights(model: &StepModel) -> Result<Vec<(i32, i32, u64)>> {
    model
        .steps
        .iter()
        .map(|(s, w)| {
            if !w.denom().is_one() || !w.numer().is_positive() {
                return Err(Error::Unsupported(
                    "integer weights required for the dense exact stream".into(),
                ));
            }
            Ok((s[0], s[1], w.numer().to_u64().ok_or(Error::ExactBudget)?))
        })
        .collect()
}

/// Exact 2D marginal sequence out to large horizons. Excursion streams clip
/// cells that can no longer return to the origin in the remaining steps.
pub fn marginal_exact(model: &StepModel, n_max: usize, target: Marginal) -> Result<Vec<Z>> {
    assert_eq!(model.dim, 2);
    let steps = integer_weights(model)?;
    let mx = model.max_move(0).max(0) as usize;
    let my = model.max_move(1).max(0) as usize;
    let bx = (-model.min_move(0)).max(0) as usize;
    let by = (-model.min_move(1)).max(0) as usize;
    let reach = move |n: usize, fwd: usize, bwd: usize| -> usize {
        let f = n * fwd;
        if target == Marginal::Excursions {
            f.min((n_max - n) * bwd)
        } else {
            f
        }
    };
    let wx = n_max * mx.max(1) + 1;
    let wy = n_max * my.max(1) + 1;
    let g = Grid2 { wy };
    if wx * wy > 64_000_000 {
        return Err(Error::ExactBudget);
    }
    let mut cur: Vec<Z> = vec![Z::zero(); wx * wy];
    let mut next: Vec<Z> = vec![Z::zero(); wx * wy];
    cur[g.idx(0, 0)] = Z::one();
    let read_out = |lvl: &Vec<Z>, n: usize| -> Z {
        match target {
            Marginal::Excursions => lvl[g.idx(0, 0)].clone(),
            Marginal::Totals => {
                let mut s = Z::zero();
                let (rx, ry) = (reach(n, mx, bx), reach(n, my, by));
                for x in 0..=rx.min(wx - 1) {
                    for y in 0..=ry.min(wy - 1) {
                        s += &lvl[g.idx(x, y)];
                    }
                }
                s
            }
        }
    };
    let mut out = vec![read_out(&cur, 0)];
    for n in 1..=n_max {
        let (rx_prev, ry_prev) = (reach(n - 1, mx, bx), reach(n - 1, my, by));
        let (rx, ry) = (reach(n, mx, bx), reach(n, my, by));
        for x in 0..=rx.min(wx - 1) {
            for y in 0..=ry.min(wy - 1) {
                next[g.idx(x, y)] = Z::zero();
            }
        }
        for x in 0..=rx_prev.min(wx - 1) {
            for y in 0..=ry_prev.min(wy - 1) {
                let v = cur[g.idx(x, y)].clone();
                if v.is_zero() {
                    continue;
                }
                for &(sx, sy, w) in &steps {
                    let tx = x as i64 + sx as i64;
                    let ty = y as i64 + sy as i64;
                    if tx < 0 || ty < 0 || tx as usize > rx || ty as usize > ry {
                        continue;
                    }
                    let j = g.idx(tx as usize, ty as usize);
                    if w == 1 {
                        next[j] += &v;
                    } else {
                        next[j] += &v * Z::from(w);
                    }
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
        out.push(read_out(&cur, n));
    }
    Ok(out)
}

/// Mod-p marginal stream (2D).
pub fn marginal_modp(model: &StepModel, n_max: usize, target: Marginal, p: u64) -> Vec<u64> {
    assert_eq!(model.dim, 2);
    use crate::algebra::linalg::modp;
    let steps: Vec<(i32, i32, u64)> = model
        .steps
        .iter()
        .map(|(s, w)| (s[0], s[1], modp::q_mod(w, p)))
        .collect();
    let mx = model.max_move(0).max(0) as usize;
    let my = model.max_move(1).max(0) as usize;
    let bx = (-model.min_move(0)).max(0) as usize;
    let by = (-model.min_move(1)).max(0) as usize;
    let reach = move |n: usize, fwd: usize, bwd: usize| -> usize {
        let f = n * fwd;
        if target == Marginal::Excursions {
            f.min((n_max - n) * bwd)
        } else {
            f
        }
    };
    let wx = n_max * mx.max(1) + 1;
    let wy = n_max * my.max(1) + 1;
    let g = Grid2 { wy };
    let mut cur = vec![0u64; wx * wy];
    let mut next = vec![0u64; wx * wy];
    cur[g.idx(0, 0)] = 1;
    let read_out = |lvl: &Vec<u64>, n: usize| -> u64 {
        match target {
            Marginal::Excursions => lvl[g.idx(0, 0)],
            Marginal::Totals => {
                let mut s = 0u64;
                let (rx, ry) = (reach(n, mx, bx), reach(n, my, by));
                for x in 0..=rx.min(wx - 1) {
                    for y in 0..=ry.min(wy - 1) {
                        s = (s + lvl[g.idx(x, y)]) % p;
                    }
                }
                s
            }
        }
    };
    let mut out = vec![read_out(&cur, 0)];
    for n in 1..=n_max {
        let (rx_prev, ry_prev) = (reach(n - 1, mx, bx), reach(n - 1, my, by));
        let (rx, ry) = (reach(n, mx, bx), reach(n, my, by));
        for x in 0..=rx.min(wx - 1) {
            for y in 0..=ry.min(wy - 1) {
                next[g.idx(x, y)] = 0;
            }
        }
        for x in 0..=rx_prev.min(wx - 1) {
            for y in 0..=ry_prev.min(wy - 1) {
                let v = cur[g.idx(x, y)];
                if v == 0 {
                    continue;
                }
                for &(sx, sy, w) in &steps {
                    let tx = x as i64 + sx as i64;
                    let ty = y as i64 + sy as i64;
                    if tx < 0 || ty < 0 || tx as usize > rx || ty as usize > ry {
                        continue;
                    }
                    let j = g.idx(tx as usize, ty as usize);
                    next[j] = (next[j] + modp::mul(v, w, p)) % p;
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
        out.push(read_out(&cur, n));
    }
    out
}

/// Float stream: returns ln q(0,0;n) or ln q_n (NaN where the count is 0).
/// A per-level rescale keeps values in range; cells below 1e-40 of the level
/// maximum are dropped, which keeps the active window near the diffusive
/// scale for models with sub-maximal growth.
pub fn float_log_marginals(model: &StepModel, n_max: usize, target: Marginal) -> Vec<f64> {
    assert_eq!(model.dim, 2);
    let steps: Vec<(i32, i32, f64)> = model
        .steps
        .iter()
        .map(|(s, w)| (s[0], s[1], crate::algebra::num::q_to_f64(w)))
        .collect();
    let mx = model.max_move(0).max(0) as usize;
    let my = model.max_move(1).max(0) as usize;
    let threshold = 1e-40;
    let gx = n_max * mx.max(1) + 1;
    let gy = n_max * my.max(1) + 1;
    let g = Grid2 { wy: gy };
    let mut cur = vec![0.0f64; gx * gy];
    let mut next = vec![0.0f64; gx * gy];
    cur[g.idx(0, 0)] = 1.0;
    let (mut x_hi, mut y_hi) = (0usize, 0usize);
    let mut log_scale = 0.0f64;
    let read_out = |lvl: &Vec<f64>, xh: usize, yh: usize, ls: f64| -> f64 {
        match target {
            Marginal::Excursions => {
                let v = lvl[g.idx(0, 0)];
                if v > 0.0 {
                    v.ln() + ls
                } else {
                    f64::NAN
                }
            }
            Marginal::Totals => {
                let mut s = 0.0f64;
                for x in 0..=xh {
                    for y in 0..=yh {
                        s += lvl[g.idx(x, y)];
                    }
                }
                if s > 0.0 {
                    s.ln() + ls
                } else {
                    f64::NAN
                }
            }
        }
    };
    let mut out = vec![read_out(&cur, x_hi, y_hi, log_scale)];
    for _n in 1..=n_max {
        let nx_hi = (x_hi + mx).min(gx - 1);
        let ny_hi = (y_hi + my).min(gy - 1);
        for x in 0..=nx_hi {
            for y in 0..=ny_hi {
                next[g.idx(x, y)] = 0.0;
            }
        }
        for x in 0..=x_hi {
            for y in 0..=y_hi {
                let v = cur[g.idx(x, y)];
                if v <= 0.0 {
                    continue;
                }
                for &(sx, sy, w) in &steps {
                    let tx = x as i64 + sx as i64;
                    let ty = y as i64 + sy as i64;
                    if tx < 0 || ty < 0 || tx as usize > nx_hi || ty as usize > ny_hi {
                        continue;
                    }
                    next[g.idx(tx as usize, ty as usize)] += v * w;
                }
            }
        }
        let mut max = 0.0f64;
        for x in 0..=nx_hi {
            for y in 0..=ny_hi {
                max = max.max(next[g.idx(x, y)]);
            }
        }
        let scale = if max > 0.0 { max } else { 1.0 };
        let (mut bx_hi, mut by_hi) = (0usize, 0usize);
        for x in 0..=nx_hi {
            for y in 0..=ny_hi {
                let j = g.idx(x, y);
                let v = next[j] / scale;
                next[j] = if v < threshold { 0.0 } else { v };
                if next[j] > 0.0 {
                    bx_hi = bx_hi.max(x);
                    by_hi = by_hi.max(y);
                }
            }
        }
        log_scale += scale.ln();
        x_hi = bx_hi;
        y_hi = by_hi;
        std::mem::swap(&mut cur, &mut next);
        out.push(read_out(&cur, x_hi, y_hi, log_scale));
    }
    out
}

// ---- closed forms ----

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedFormId {
    Tandem,
    HadamardExample,
    P12a,
    P18,
}

impl ClosedFormId {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "tandem" => Ok(ClosedFormId::Tandem),
            "hadamard-example" => Ok(ClosedFormId::HadamardExample),
            "P12a" | "p12a" => Ok(ClosedFormId::P12a),
            "P18" | "p18" => Ok(ClosedFormId::P18),
            _ => Err(Error::UnknownModelId(s.into())),
        }
    }

    pub fn model(&self) -> StepModel {
        match self {
            ClosedFormId::Tandem => StepModel::parse("1,-1;-1,0;0,1").unwrap(),
            ClosedFormId::HadamardExample => StepModel::parse("1,0;-1,1;-1,-2").unwrap(),
            ClosedFormId::P12a => StepModel::parse("0,1;1,-1;-1,-1;-2,1").unwrap(),
            ClosedFormId::P18 => StepModel::parse("1,0;1,-1;-2,1;-2,0").unwrap(),
        }
    }
}

fn fact(n: i64) -> Z {
    assert!(n >= 0);
    let mut f = Z::one();
    for k in 2..=n {
        f *= Z::from(k);
    }
    f
}

/// Exact coefficient by the closed-form factorial formula; 0 off the
/// residue lattice.
pub fn closed_form(id: ClosedFormId, i: i64, j: i64, n: i64) -> Q {
    assert!(i >= 0 && j >= 0 && n >= 0);
    let zero = Q::zero();
    let qz = Q::from_integer;
    match id {
        ClosedFormId::Tandem => {
            let r = n - 2 * i - j;
            if r < 0 || r % 3 != 0 {
                return zero;
            }
            let m = r / 3;
            let num = Z::from((i + 1) * (j + 1) * (i + j + 2)) * fact(n);
            let den = fact(m) * fact(m + i + 1) * fact(m + i + j + 2);
            qz(num) / qz(den)
        }
        ClosedFormId::HadamardExample => {
            let r = n - i - 2 * j;
            if r < 0 || r % 6 != 0 {
                return zero;
            }
            let m = r / 6;
            let num = Z::from((i + 1) * (j + 1)) * fact(n);
            let den = fact(m) * fact(2 * m + j + 1) * fact(3 * m + i + j + 1);
            qz(num) / qz(den)
        }
        ClosedFormId::P12a => {
            let r = n - 2 * i - j;
            if r < 0 || r % 4 != 0 {
                return zero;
            }
            let m = r / 4;
            let num = Z::from((i + 1) * (j + 1) * (i + j + 2)) * fact(n) * fact(n + 2);
            let den = fact(m)
                * fact(3 * m + 2 * i + j + 2)
                * fact(2 * m + i + 1)
                * fact(2 * m + i + j + 2);
            qz(num) / qz(den)
        }
        ClosedFormId::P18 => {
            let r = n - i - 3 * j;
            if r < 0 || r % 3 != 0 {
                return zero;
            }
            let m = r / 3;
            let pre = Z::from((i + 1) * (j + 1) * (i + 3 * j + 4))
                * Z::from((i + 2 * j + 2) * (i + 2 * j + 3) + m * (2 * i + 3 * j + 4));
            let num = pre * fact(n) * fact(n + 3);
            let den = fact(m)
                * fact(m + j + 1)
                * fact(2 * m + i + 2 * j + 3)
                * fact(2 * m + i + 3 * j + 4);
            qz(num) / qz(den)
        }
    }
}

// ---- Hadamard projection counts ----

/// Endpoint-resolved quadrant counts of a Hadamard model via 1D projections:
/// q(i,j;n) = sum_k c1(i,k;n) c2(j,k), where c1 counts half-line walks with
/// steps from U and V (V-steps marked) and c2 counts half-line walks with
/// steps from T. Returns levels n = 0..=n of maps (i,j) -> count.
pub fn hadamard_projection_table(
    model: &StepModel,
    n: usize,
) -> Result<Vec<BTreeMap<(i32, i32), Q>>> {
    let Some((u, v, t, mirrored)) = model.hadamard_decompose() else {
        return Err(Error::Unsupported("model is not Hadamard".into()));
    };
    let steps_u: Vec<(i32, Q)> = u.terms.iter().map(|(e, c)| (e[0], c.clone())).collect();
    let steps_v: Vec<(i32, Q)> = v.terms.iter().map(|(e, c)| (e[0], c.clone())).collect();
    let steps_t: Vec<(i32, Q)> = t.terms.iter().map(|(e, c)| (e[0], c.clone())).collect();
    let mut c1: Vec<BTreeMap<(i32, usize), Q>> = vec![BTreeMap::new(); n + 1];
    c1[0].insert((0, 0), Q::one());
    for k in 1..=n {
        let mut next: BTreeMap<(i32, usize), Q> = BTreeMap::new();
        let prev = c1[k - 1].clone();
        for ((x, nv), c) in prev {
            for (s, w) in &steps_u {
                let tx = x + s;
                if tx >= 0 {
                    *next.entry((tx, nv)).or_insert_with(Q::zero) += &c * w;
                }
            }
            for (s, w) in &steps_v {
                let tx = x + s;
                if tx >= 0 {
                    *next.entry((tx, nv + 1)).or_insert_with(Q::zero) += &c * w;
                }
            }
        }
        c1[k] = next;
    }
    let mut c2: Vec<BTreeMap<i32, Q>> = vec![BTreeMap::new(); n + 1];
    c2[0].insert(0, Q::one());
    for k in 1..=n {
        let mut next: BTreeMap<i32, Q> = BTreeMap::new();
        let prev = c2[k - 1].clone();
        for (y, c) in prev {
            for (s, w) in &steps_t {
                let ty = y + s;
                if ty >= 0 {
                    *next.entry(ty).or_insert_with(Q::zero) += &c * w;
                }
            }
        }
        c2[k] = next;
    }
    let mut out = vec![];
    for lvl in 0..=n {
        let mut table: BTreeMap<(i32, i32), Q> = BTreeMap::new();
        for ((x, nv), c) in &c1[lvl] {
            for (y, c2v) in &c2[*nv] {
                let key = if mirrored { (*y, *x) } else { (*x, *y) };
                *table.entry(key).or_insert_with(Q::zero) += c * c2v;
            }
        }
        out.push(table);
    }
    Ok(out)
}

/// q_n sequence of a Hadamard model via the projection.
pub fn hadamard_cross_count(model: &StepModel, n: usize) -> Result<Vec<Q>> {
    let tables = hadamard_projection_table(model, n)?;
    Ok(tables
        .iter()
        .map(|t| {
            let mut s = Q::zero();
            for v in t.values() {
                s += v;
            }
            s
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact_table(text: &str, n: usize) -> SeriesTable {
        let m = StepModel::parse(text).unwrap();
        count_orthant(&m, n, &CountOptions::exact(m.dim)).unwrap()
    }

    #[test]
    fn tandem_first_values() {
        let t = exact_table("1,-1;-1,0;0,1", 6);
        assert_eq!(t.value(&[0, 0], 0), q(1));
        assert_eq!(t.value(&[0, 0], 3), q(1));
        for n in 0..=6usize {
            for (pos, v) in t.level_exact(n) {
                let cf = closed_form(ClosedFormId::Tandem, pos[0] as i64, pos[1] as i64, n as i64);
                assert_eq!(&cf, v, "tandem ({},{};{})", pos[0], pos[1], n);
            }
        }
    }

    #[test]
    fn unconstrained_total_is_power() {
        let m = StepModel::parse("1,-1;-1,0;0,1").unwrap();
        let opts = CountOptions { start: vec![0, 0], unconstrained: true, backend: Backend::Exact };
        let t = count_orthant(&m, 8, &opts).unwrap();
        for (n, v) in t.totals().iter().enumerate() {
            assert_eq!(v, &q(3).pow(n as i32));
        }
    }

    #[test]
    fn monotone_vs_unconstrained() {
        let m = StepModel::parse("1,0;-1,0;0,-1;-2,1").unwrap();
        let con = count_orthant(&m, 8, &CountOptions::exact(2)).unwrap();
        let unc = count_orthant(
            &m,
            8,
            &CountOptions { start: vec![0, 0], unconstrained: true, backend: Backend::Exact },
        )
        .unwrap();
        for n in 0..=8usize {
            for (pos, v) in con.level_exact(n) {
                assert!(v <= &unc.value(pos, n));
            }
        }
    }

    #[test]
    fn modp_matches_exact() {
        let m = StepModel::parse("-2,0;-1,-1;0,-2;1,1").unwrap();
        let p = DEFAULT_PRIME;
        let ex = count_orthant(&m, 12, &CountOptions::exact(2)).unwrap();
        let md = count_orthant(
            &m,
            12,
            &CountOptions { start: vec![0, 0], unconstrained: false, backend: Backend::ModP(p) },
        )
        .unwrap();
        for n in 0..=12usize {
            for (pos, v) in ex.level_exact(n) {
                let vm = crate::algebra::linalg::modp::q_mod(v, p);
                assert_eq!(q(vm as i64), md.value(pos, n));
            }
        }
    }

    #[test]
    fn kreweras_type_series() {
        // K1 e-series 1 + 6 t^4 + 236 t^8 + 14988 t^12
        let k1 = StepModel::parse("-2,-1;-1,-2;0,1;1,0").unwrap();
        let e = marginal_exact(&k1, 12, Marginal::Excursions).unwrap();
        assert_eq!(e[0], Z::one());
        assert_eq!(e[4], Z::from(6));
        assert_eq!(e[8], Z::from(236));
        assert_eq!(e[12], Z::from(14988));
        assert!(e[1].is_zero() && e[2].is_zero() && e[3].is_zero());
        // K2 walks: q_n prefix 1,1,2,5,12,32,86
        let k2 = StepModel::parse("-2,0;-1,-1;0,-2;1,1").unwrap();
        let qn = marginal_exact(&k2, 6, Marginal::Totals).unwrap();
        let expect = [1i64, 1, 2, 5, 12, 32, 86];
        for (n, &v) in expect.iter().enumerate() {
            assert_eq!(qn[n], Z::from(v));
        }
    }

    #[test]
    fn streams_match_tables() {
        let m = StepModel::parse("1,0;-1,0;0,-1;-2,1").unwrap();
        let t = count_orthant(&m, 14, &CountOptions::exact(2)).unwrap();
        let e = marginal_exact(&m, 14, Marginal::Excursions).unwrap();
        let s = marginal_exact(&m, 14, Marginal::Totals).unwrap();
        let excs = t.excursions();
        let tots = t.totals();
        for n in 0..=14usize {
            assert_eq!(Q::from_integer(e[n].clone()), excs[n]);
            assert_eq!(Q::from_integer(s[n].clone()), tots[n]);
        }
        let em = marginal_modp(&m, 14, Marginal::Excursions, DEFAULT_PRIME);
        for n in 0..=14usize {
            assert_eq!(Z::from(em[n]), &e[n] % Z::from(DEFAULT_PRIME));
        }
    }

    #[test]
    fn float_stream_accuracy() {
        let m = StepModel::parse("1,0;-1,0;0,-1;-2,1").unwrap();
        let logs = float_log_marginals(&m, 60, Marginal::Totals);
        let exact = marginal_exact(&m, 60, Marginal::Totals).unwrap();
        for n in 1..=60usize {
            let le = crate::algebra::num::q_to_f64(&Q::from_integer(exact[n].clone())).ln();
            let rel = (logs[n] - le).abs();
            assert!(rel < 1e-10, "n={} drift {}", n, rel);
        }
    }

    #[test]
    fn closed_form_spot_values() {
        assert_eq!(closed_form(ClosedFormId::Tandem, 0, 0, 3), q(1));
        assert_eq!(closed_form(ClosedFormId::P12a, 0, 0, 4), q(2));
        assert_eq!(closed_form(ClosedFormId::P18, 0, 0, 3), q(1));
        assert_eq!(closed_form(ClosedFormId::HadamardExample, 0, 0, 6), q(5));
        assert_eq!(closed_form(ClosedFormId::P18, 0, 0, 4), q(0));
    }

    #[test]
    fn closed_forms_equal_dp() {
        for id in [
            ClosedFormId::Tandem,
            ClosedFormId::HadamardExample,
            ClosedFormId::P12a,
            ClosedFormId::P18,
        ] {
            let m = id.model();
            let t = count_orthant(&m, 18, &CountOptions::exact(2)).unwrap();
            for n in 0..=18usize {
                for (pos, v) in t.level_exact(n) {
                    let cf = closed_form(id, pos[0] as i64, pos[1] as i64, n as i64);
                    assert_eq!(&cf, v, "{:?} ({},{};{})", id, pos[0], pos[1], n);
                }
            }
        }
    }

    #[test]
    fn reversal_duality_excursions() {
        let m = StepModel::parse("1,0;1,-1;-2,1;-2,0").unwrap();
        let r = m.reversed();
        let a = marginal_exact(&m, 15, Marginal::Excursions).unwrap();
        let b = marginal_exact(&r, 15, Marginal::Excursions).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn hadamard_cross_count_matches_dp() {
        // S = x + xbar(y + ybar^2): q(0,0;6) = 5 and the full tables agree
        let m = StepModel::parse("1,0;-1,1;-1,-2").unwrap();
        let tables = hadamard_projection_table(&m, 12).unwrap();
        assert_eq!(tables[6].get(&(0, 0)), Some(&q(5)));
        let dp = count_orthant(&m, 12, &CountOptions::exact(2)).unwrap();
        for n in 0..=12usize {
            for (pos, v) in dp.level_exact(n) {
                assert_eq!(
                    tables[n].get(&(pos[0], pos[1])).cloned().unwrap_or_else(Q::zero),
                    *v
                );
            }
            for ((i, j), v) in &tables[n] {
                assert_eq!(dp.value(&[*i, *j], n), *v);
            }
        }
        // the reversed model has a large forward step: projection again
        let r = m.reversed();
        if r.hadamard_decompose().is_some() {
            let qt = hadamard_cross_count(&r, 10).unwrap();
            let dp = count_orthant(&r, 10, &CountOptions::exact(2)).unwrap();
            assert_eq!(qt, dp.totals());
        }
    }
}
