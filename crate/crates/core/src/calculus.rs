//! Idempotent analysis on uniform one-dimensional grids.
//!
//! Functions are sampled at `origin + i·step`. Max-plus functions take
//! `−∞` as their zero, min-plus functions take `+∞`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    MaxPlus,
    MinPlus,
}

impl Orientation {
    pub fn token(self) -> &'static str {
        match self {
            Orientation::MaxPlus => "max_plus",
            Orientation::MinPlus => "min_plus",
        }
    }

    /// The additive zero.
    pub fn zero(self) -> f64 {
        match self {
            Orientation::MaxPlus => f64::NEG_INFINITY,
            Orientation::MinPlus => f64::INFINITY,
        }
    }

    /// Idempotent sum of two samples.
    pub fn plus(self, a: f64, b: f64) -> f64 {
        match self {
            Orientation::MaxPlus => a.max(b),
            Orientation::MinPlus => a.min(b),
        }
    }

    /// Ordinary sum with the zero absorbing.
    pub fn times(self, a: f64, b: f64) -> f64 {
        let z = self.zero();
        if a == z || b == z {
            z
        } else {
            a + b
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "max_plus" | "max-plus" | "maxplus" => Ok(Orientation::MaxPlus),
            "min_plus" | "min-plus" | "minplus" => Ok(Orientation::MinPlus),
            other => Err(Error::Domain(format!("unknown orientation {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction {
    origin: f64,
    step: f64,
    values: Vec<f64>,
    orientation: Orientation,
}

impl SampledFunction {
    pub fn new(origin: f64, step: f64, values: Vec<f64>, orientation: Orientation) -> Result<Self> {
        if !origin.is_finite() {
            return Err(Error::Domain(format!("origin must be finite, got {origin}")));
        }
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::Domain(format!("step must be positive, got {step}")));
        }
        if values.len() < 2 {
            return Err(Error::Domain(format!("need at least 2 samples, got {}", values.len())));
        }
        if let Some(i) = values.iter().position(|v| v.is_nan()) {
            return Err(Error::Domain(format!("sample {i} is NaN")));
        }
        Ok(SampledFunction { origin, step, values, orientation })
    }

    pub fn from_fn(
        origin: f64,
        step: f64,
        count: usize,
        orientation: Orientation,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        let values = (0..count).map(|i| f(origin + i as f64 * step)).collect();
        Self::new(origin, step, values, orientation)
    }

    /// Samples `f` on `[a, b]` with the given step.
    pub fn on_interval(a: f64, b: f64, step: f64, orientation: Orientation, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_fn(a, step, grid_count(a, b, step)?, orientation, f)
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn x(&self, i: usize) -> f64 {
        self.origin + i as f64 * self.step
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.x(i)).collect()
    }

    pub fn end(&self) -> f64 {
        self.x(self.len() - 1)
    }

    /// Nearest sample index to `x`, if `x` lies on the grid's span.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let r = ((x - self.origin) / self.step).round();
        (r >= 0.0 && (r as usize) < self.len()).then_some(r as usize)
    }

    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Self::new(self.origin, self.step, values, self.orientation)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        self.with_values(self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.len() == other.len()
            && steps_match(self.step, other.step)
            && (self.origin - other.origin).abs() <= 1e-9 * self.step
            && self.orientation == other.orientation
    }

    fn check_grid(&self, other: &Self) -> Result<()> {
        if !self.same_grid(other) {
            return Err(Error::Shape(format!(
                "grid mismatch: ({}, {}, {}, {}) vs ({}, {}, {}, {})",
                self.origin,
                self.step,
                self.len(),
                self.orientation,
                other.origin,
                other.step,
                other.len(),
                other.orientation
            )));
        }
        Ok(())
    }
}

fn steps_match(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

/// Number of points of `a, a+step, …` up to `b` inclusive.
pub fn grid_count(a: f64, b: f64, step: f64) -> Result<usize> {
    if !a.is_finite() || !b.is_finite() || !(step > 0.0) || !step.is_finite() {
        return Err(Error::Domain(format!("bad grid {a}:{b}:{step}")));
    }
    if b < a {
        return Err(Error::Domain(format!("empty grid {a}:{b}:{step}")));
    }
    Ok(((b - a) / step + 1e-9).floor() as usize + 1)
}

/// A uniform grid of slopes `start, start+step, …, stop`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XiGrid {
    pub start: f64,
    pub step: f64,
    pub count: usize,
}

impl XiGrid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        let count = grid_count(start, stop, step)?;
        if count < 2 {
            return Err(Error::Domain(format!("slope grid {start}:{stop}:{step} has fewer than 2 points")));
        }
        Ok(XiGrid { start, step, count })
    }

    pub fn xi(&self, j: usize) -> f64 {
        self.start + j as f64 * self.step
    }
}

impl FromStr for XiGrid {
    type Err = Error;

    /// `a:b:step`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, st] = parts.as_slice() else {
            return Err(Error::Domain(format!("expected a:b:step, got {s:?}")));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Domain(format!("bad number {t:?} in {s:?}")))
        };
        XiGrid::new(num(a)?, num(b)?, num(st)?)
    }
}

/// `∫⊕ φ`: the sup of the samples, or the inf for min-plus functions.
pub fn idem_integral(phi: &SampledFunction) -> f64 {
    let o = phi.orientation;
    phi.values.iter().fold(o.zero(), |acc, &v| o.plus(acc, v))
}

/// `m_ψ(Y)`, the idempotent sum of `ψ` over the index set `Y`.
pub fn idem_measure(psi: &SampledFunction, y: &[usize]) -> Result<f64> {
    let o = psi.orientation;
    y.iter().try_fold(o.zero(), |acc, &i| {
        let v = psi
            .values
            .get(i)
            .ok_or_else(|| Error::Domain(format!("index {i} outside {} samples", psi.len())))?;
        Ok(o.plus(acc, *v))
    })
}

/// `∫⊕ φ ⊙ ψ` on a shared grid.
pub fn idem_integral_wrt(phi: &SampledFunction, psi: &SampledFunction) -> Result<f64> {
    phi.check_grid(psi)?;
    let o = phi.orientation;
    Ok(phi
        .values
        .iter()
        .zip(&psi.values)
        .fold(o.zero(), |acc, (&a, &b)| o.plus(acc, o.times(a, b))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LegendreMode {
    Brute,
    Fast,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LegendreResult {
    pub transform: SampledFunction,
    /// Mode actually used.
    pub mode: LegendreMode,
    pub note: Option<String>,
}

/// `φ̃(ξ) = sup_x (ξx + φ(x))`, or `sup_x (ξx − φ(x))` with `fenchel`.
///
/// Fast mode is a monotone two-pointer scan valid for concave effective
/// input; anything else is computed by brute force and noted.
pub fn legendre(phi: &SampledFunction, xi: &XiGrid, fenchel: bool, mode: LegendreMode) -> Result<LegendreResult> {
    let values: Vec<f64> = if fenchel {
        phi.values.iter().map(|v| -v).collect()
    } else {
        phi.values.clone()
    };
    let xs = phi.xs();
    let (out, used, note) = match mode {
        LegendreMode::Brute => (legendre_brute(&xs, &values, xi), LegendreMode::Brute, None),
        LegendreMode::Fast => match finite_concave_block(&values) {
            Ok(Some((lo, hi))) => (legendre_scan(&xs[lo..hi], &values[lo..hi], xi), LegendreMode::Fast, None),
            Ok(None) => (vec![f64::NEG_INFINITY; xi.count], LegendreMode::Fast, None),
            Err(why) => (
                legendre_brute(&xs, &values, xi),
                LegendreMode::Brute,
                Some(format!("fast mode needs concave input ({why}); used brute force")),
            ),
        },
    };
    let transform = SampledFunction::new(xi.start, xi.step, out, Orientation::MaxPlus)?;
    Ok(LegendreResult { transform, mode: used, note })
}

fn legendre_brute(xs: &[f64], values: &[f64], xi: &XiGrid) -> Vec<f64> {
    par::map_indices(xi.count, |j| {
        let s = xi.xi(j);
        xs.iter()
            .zip(values)
            .filter(|(_, &v)| v != f64::NEG_INFINITY)
            .map(|(&x, &v)| s * x + v)
            .fold(f64::NEG_INFINITY, f64::max)
    })
}

fn legendre_scan(xs: &[f64], values: &[f64], xi: &XiGrid) -> Vec<f64> {
    let mut k = 0;
    (0..xi.count)
        .map(|j| {
            let s = xi.xi(j);
            let at = |i: usize| s * xs[i] + values[i];
            while k + 1 < xs.len() && at(k + 1) >= at(k) {
                k += 1;
            }
            // slope grids may decrease the optimum index only through ties
            while k > 0 && at(k - 1) > at(k) {
                k -= 1;
            }
            at(k)
        })
        .collect()
}

/// Range of finite samples, provided they are contiguous and concave.
fn finite_concave_block(values: &[f64]) -> std::result::Result<Option<(usize, usize)>, String> {
    let finite: Vec<usize> = (0..values.len()).filter(|&i| values[i].is_finite()).collect();
    let (Some(&lo), Some(&hi)) = (finite.first(), finite.last()) else {
        if values.iter().any(|&v| v == f64::INFINITY) {
            return Err("+inf sample".into());
        }
        return Ok(None);
    };
    if hi - lo + 1 != finite.len() {
        return Err("finite samples are not contiguous".into());
    }
    if values.iter().any(|&v| v == f64::INFINITY) {
        return Err("+inf sample".into());
    }
    let block = &values[lo..=hi];
    for i in 1..block.len().saturating_sub(1) {
        let d2 = block[i + 1] - 2.0 * block[i] + block[i - 1];
        let scale = block[i - 1].abs().max(block[i].abs()).max(block[i + 1].abs()).max(1.0);
        if d2 > 1e-12 * scale {
            return Err(format!("second difference {d2:e} at sample {}", lo + i));
        }
    }
    Ok(Some((lo, hi + 1)))
}

/// Inverse transform for concave data: `φ(x) = inf_ξ (φ̃(ξ) − ξx)`,
/// sampled on `xs`.
pub fn legendre_inverse(transform: &SampledFunction, xs: &[f64]) -> Vec<f64> {
    par::map_indices(xs.len(), |i| {
        let x = xs[i];
        (0..transform.len())
            .map(|j| transform.values[j] - transform.x(j) * x)
            .fold(f64::INFINITY, f64::min)
    })
}

fn convolution(a: &SampledFunction, b: &SampledFunction, o: Orientation) -> Result<SampledFunction> {
    if !steps_match(a.step, b.step) {
        return Err(Error::Shape(format!("step mismatch: {} vs {}", a.step, b.step)));
    }
    let (n, m) = (a.len(), b.len());
    let values = par::map_indices(n + m - 1, |k| {
        let lo = k.saturating_sub(m - 1);
        let hi = k.min(n - 1);
        (lo..=hi).fold(o.zero(), |acc, i| o.plus(acc, o.times(a.values[i], b.values[k - i])))
    });
    SampledFunction::new(a.origin + b.origin, a.step, values, o)
}

/// `(φ₁ ⋆ φ₂)(x) = sup_y (φ₁(y) + φ₂(x − y))` over the full output grid.
pub fn sup_convolution(a: &SampledFunction, b: &SampledFunction) -> Result<SampledFunction> {
    convolution(a, b, Orientation::MaxPlus)
}

/// `(φ₁ □ φ₂)(x) = inf_y (φ₁(y) + φ₂(x − y))` over the full output grid.
pub fn inf_convolution(a: &SampledFunction, b: &SampledFunction) -> Result<SampledFunction> {
    convolution(a, b, Orientation::MinPlus)
}

/// Action values of a free particle at time `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct HJState {
    pub s: SampledFunction,
    pub t: f64,
    pub mass: f64,
    /// Samples whose minimizer sat on the grid edge at some step.
    pub boundary: Vec<bool>,
}

impl HJState {
    pub fn new(s: SampledFunction, mass: f64) -> Result<Self> {
        if s.orientation != Orientation::MinPlus {
            return Err(Error::Domain("action values must be min_plus".into()));
        }
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::Domain(format!("mass must be positive, got {mass}")));
        }
        let boundary = vec![false; s.len()];
        Ok(HJState { s, t: 0.0, mass, boundary })
    }

    /// Indices not flagged as boundary-affected.
    pub fn interior(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.s.len()).filter(|&i| !self.boundary[i])
    }
}

/// `S(x, t+dt) = inf_y [S(y, t) + m (x − y)² / (2 dt)]` on the state's grid.
pub fn hopf_lax_step(state: &HJState, dt: f64) -> Result<HJState> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::Domain(format!("time step must be positive, got {dt}")));
    }
    let s = &state.s;
    let n = s.len();
    let c = state.mass / (2.0 * dt);
    let rows = par::map_indices(n, |i| {
        let x = s.x(i);
        let mut best = (f64::INFINITY, i);
        for j in 0..n {
            let v = s.values[j];
            if v == f64::INFINITY {
                continue;
            }
            let d = x - s.x(j);
            let cand = v + c * d * d;
            if cand < best.0 {
                best = (cand, j);
            }
        }
        best
    });
    let boundary = rows
        .iter()
        .enumerate()
        .map(|(i, &(_, j))| state.boundary[i] || state.boundary[j] || j == 0 || j == n - 1)
        .collect();
    Ok(HJState {
        s: s.with_values(rows.iter().map(|r| r.0).collect())?,
        t: state.t + dt,
        mass: state.mass,
        boundary,
    })
}

/// Trapezoid weight of sample `j` among `n`.
fn trapezoid(step: f64, j: usize, n: usize) -> f64 {
    if j == 0 || j == n - 1 {
        0.5 * step
    } else {
        step
    }
}

fn check_heat_params(t: f64, h: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("time must be positive, got {t}")));
    }
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Domain(format!("h must be positive, got {h}")));
    }
    Ok(())
}

/// Heat semigroup `u(x,t) = ∫ (2πht)^{−1/2} e^{−(x−y)²/(2ht)} u₀(y) dy` on the
/// grid of `u0`, with trapezoid weights.
pub fn heat_evolve_u(u0: &SampledFunction, t: f64, h: f64) -> Result<SampledFunction> {
    check_heat_params(t, h)?;
    let n = u0.len();
    let norm = (2.0 * std::f64::consts::PI * h * t).sqrt();
    let values = par::map_indices(n, |i| {
        let x = u0.x(i);
        (0..n)
            .map(|j| {
                let d = x - u0.x(j);
                trapezoid(u0.step, j, n) * (-d * d / (2.0 * h * t)).exp() * u0.values[j]
            })
            .sum::<f64>()
            / norm
    });
    u0.with_values(values)
}

/// `S_h(·, t) = −h ln u(·, t)` where `u` solves the heat equation from
/// `u₀ = e^{−S₀/h}`, evaluated in the log domain.
pub fn cole_hopf_evolve(s0: &SampledFunction, t: f64, h: f64) -> Result<SampledFunction> {
    check_heat_params(t, h)?;
    if s0.orientation != Orientation::MinPlus {
        return Err(Error::Domain("action values must be min_plus".into()));
    }
    if s0.values.iter().all(|&v| v == f64::INFINITY) {
        return Err(Error::Domain("initial action is +inf everywhere".into()));
    }
    let n = s0.len();
    let offset = 0.5 * h * (2.0 * std::f64::consts::PI * h * t).ln();
    let values = par::map_indices(n, |i| {
        let x = s0.x(i);
        let exps: Vec<f64> = (0..n)
            .map(|j| {
                let d = x - s0.x(j);
                -(s0.values[j] + d * d / (2.0 * t)) / h + trapezoid(s0.step, j, n).ln()
            })
            .collect();
        -h * log_sum_exp(&exps) + offset
    });
    s0.with_values(values)
}

/// `ln Σ eᵃⁱ` with the maximum shifted out; `−∞` terms contribute nothing.
pub fn log_sum_exp(a: &[f64]) -> f64 {
    let m = a.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + a.iter().map(|&v| (v - m).exp()).sum::<f64>().ln()
}

/// Built-in initial data for the dequantization demo.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorpusFunction {
    Quad,
    Abs,
    DoubleWell,
}

impl CorpusFunction {
    pub const ALL: [CorpusFunction; 3] = [CorpusFunction::Quad, CorpusFunction::Abs, CorpusFunction::DoubleWell];

    pub fn name(self) -> &'static str {
        match self {
            CorpusFunction::Quad => "quad",
            CorpusFunction::Abs => "abs",
            CorpusFunction::DoubleWell => "double_well",
        }
    }

    pub fn eval(self, y: f64) -> f64 {
        match self {
            CorpusFunction::Quad => 0.5 * y * y,
            CorpusFunction::Abs => y.abs(),
            CorpusFunction::DoubleWell => (y * y - 1.0).powi(2),
        }
    }

    /// Sampled on `[−6, 6]` with step `0.01`.
    pub fn sampled(self) -> SampledFunction {
        SampledFunction::from_fn(-6.0, 0.01, 1201, Orientation::MinPlus, |y| self.eval(y)).expect("valid corpus grid")
    }
}

impl FromStr for CorpusFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quad" => Ok(CorpusFunction::Quad),
            "abs" => Ok(CorpusFunction::Abs),
            "double_well" | "double-well" => Ok(CorpusFunction::DoubleWell),
            other => Err(Error::Domain(format!("unknown initial function {other:?}"))),
        }
    }
}

/// Default deformation parameters for the gap table.
pub const DEFAULT_HS: [f64; 4] = [0.2, 0.1, 0.05, 0.025];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapRow {
    pub h: f64,
    /// Sup-norm distance between the Cole–Hopf and Hopf–Lax solutions.
    pub gap: f64,
    /// Where the sup is attained.
    pub at: f64,
}

/// Sup-norm gap between `cole_hopf_evolve(s0, t, h)` and the Hopf–Lax
/// solution over non-boundary samples in `[window.0, window.1]`.
pub fn gap_table(s0: &SampledFunction, t: f64, hs: &[f64], window: (f64, f64)) -> Result<Vec<GapRow>> {
    let hl = hopf_lax_step(&HJState::new(s0.clone(), 1.0)?, t)?;
    let idx: Vec<usize> = hl
        .interior()
        .filter(|&i| (window.0..=window.1).contains(&s0.x(i)))
        .collect();
    if idx.is_empty() {
        return Err(Error::Domain("window holds no interior samples".into()));
    }
    hs.iter()
        .map(|&h| {
            let ch = cole_hopf_evolve(s0, t, h)?;
            let (gap, at) = idx
                .iter()
                .map(|&i| ((ch.values[i] - hl.s.values[i]).abs(), s0.x(i)))
                .fold((0.0, s0.x(idx[0])), |a, b| if b.0 > a.0 { b } else { a });
            Ok(GapRow { h, gap, at })
        })
        .collect()
}
