//! Residuation duality on free finite semimodules over the completed
//! max-plus semifield.
//!
//! For a vector `x` the functional `x*` sends `y` to the least scalar `k`
//! with `y ≼ k ⊙ x`. Every sup-preserving linear functional on a free
//! module has this form, and also the coefficient form
//! `f(y) = ⊕ᵢ cᵢ ⊙ yᵢ`; the two are related by `cᵢ = xᵢ⁻¹` with the
//! completion conventions `(−∞)⁻¹ = +∞` and `(+∞)⁻¹ = −∞`.
//!
//! Plain `rmax` input is promoted to `rmaxhat`. Boolean vectors are
//! accepted by [`xstar_eval`], [`functional_apply`] and
//! [`recover_generator`] only.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::TropVector;
use crate::semiring::{SemiringDescriptor, SemiringKind, SemiringValue};

const HAT: SemiringDescriptor = SemiringDescriptor::RMAX_HAT;

/// Lifts `rmax` vectors into `rmaxhat`; other carriers are rejected unless
/// `allow_bool` is set and the vector is Boolean.
fn promote(x: &TropVector, allow_bool: bool) -> Result<TropVector> {
    match x.descriptor().kind() {
        SemiringKind::RMax => x.recast(HAT),
        SemiringKind::RMaxHat => Ok(x.clone()),
        SemiringKind::Boolean if allow_bool => Ok(x.clone()),
        _ => Err(Error::Unsupported(format!(
            "duality works over rmaxhat, got {}",
            x.descriptor()
        ))),
    }
}

fn promote_hat(x: &TropVector) -> Result<TropVector> {
    promote(x, false)
}

fn same_len(x: &TropVector, y: &TropVector) -> Result<()> {
    if x.len() != y.len() || x.descriptor() != y.descriptor() {
        return Err(Error::Shape(format!(
            "dimension mismatch: {} ({}) vs {} ({})",
            x.len(),
            x.descriptor(),
            y.len(),
            y.descriptor()
        )));
    }
    Ok(())
}

/// Inverse in the completed carrier: `−x` for finite `x`, with the two
/// infinities exchanged. Boolean complement for bits.
pub fn hat_inv(v: SemiringValue) -> SemiringValue {
    match v {
        SemiringValue::Real(x) => SemiringValue::Real(0.0 - x),
        SemiringValue::Bit(b) => SemiringValue::Bit(!b),
        other => other,
    }
}

fn hat_inv_vec(x: &TropVector) -> TropVector {
    TropVector::new(x.descriptor(), x.values().iter().map(|&v| hat_inv(v)).collect())
        .expect("inverse stays in the carrier")
}

fn is_all_zero(x: &TropVector) -> bool {
    let d = x.descriptor();
    x.values().iter().all(|&v| d.is_zero(v))
}

fn is_all_top(x: &TropVector) -> bool {
    let d = x.descriptor();
    x.values().iter().all(|&v| d.is_top(v))
}

/// A linear functional `f(y) = ⊕ᵢ cᵢ ⊙ yᵢ`.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionalRep {
    coeffs: TropVector,
}

impl FunctionalRep {
    pub fn new(coeffs: TropVector) -> Result<Self> {
        Ok(FunctionalRep { coeffs: promote(&coeffs, true)? })
    }

    pub fn from_f64(coeffs: &[f64]) -> Result<Self> {
        Self::new(TropVector::from_f64(HAT, coeffs)?)
    }

    pub fn coeffs(&self) -> &TropVector {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        is_all_zero(&self.coeffs)
    }

    pub fn apply(&self, y: &TropVector) -> Result<SemiringValue> {
        functional_apply(self, y)
    }
}

/// `x*` viewed as an element of the dual space. The dual order is the
/// reverse of the order on the underlying vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct DualVector {
    x: TropVector,
}

impl DualVector {
    pub fn new(x: &TropVector) -> Result<Self> {
        let x = promote_hat(x)?;
        if is_all_top(&x) {
            return Err(Error::Domain("the all-top vector has the zero functional".into()));
        }
        Ok(DualVector { x })
    }

    pub fn vector(&self) -> &TropVector {
        &self.x
    }

    pub fn eval(&self, y: &TropVector) -> Result<SemiringValue> {
        xstar_eval(&self.x, y)
    }

    /// Coefficient form of the functional.
    pub fn functional(&self) -> FunctionalRep {
        FunctionalRep { coeffs: hat_inv_vec(&self.x) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureKind {
    /// All finite sums of scalar multiples.
    SupSpan,
    /// All infima of scalar multiples.
    InfClosure,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    generators: Vec<TropVector>,
    kind: ClosureKind,
}

impl GeneratorSet {
    /// Rejects an empty list, mixed shapes and all-zero generators.
    pub fn new(kind: ClosureKind, generators: Vec<TropVector>) -> Result<Self> {
        Self::build(kind, generators, false)
    }

    /// As [`GeneratorSet::new`] but keeps all-zero generators.
    pub fn with_zero_generators(kind: ClosureKind, generators: Vec<TropVector>) -> Result<Self> {
        Self::build(kind, generators, true)
    }

    fn build(kind: ClosureKind, generators: Vec<TropVector>, allow_zero: bool) -> Result<Self> {
        let generators = generators.iter().map(promote_hat).collect::<Result<Vec<_>>>()?;
        let first = generators
            .first()
            .ok_or_else(|| Error::Domain("empty generator set".into()))?;
        for g in &generators {
            same_len(first, g)?;
            if !allow_zero && is_all_zero(g) {
                return Err(Error::Domain("all-zero generator".into()));
            }
        }
        Ok(GeneratorSet { generators, kind })
    }

    pub fn generators(&self) -> &[TropVector] {
        &self.generators
    }

    pub fn kind(&self) -> ClosureKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.generators[0].len()
    }
}

/// `x*(y) = ⊕ᵢ residual(xᵢ, yᵢ)`; over `rmaxhat` this is `maxᵢ (yᵢ − xᵢ)`.
pub fn xstar_eval(x: &TropVector, y: &TropVector) -> Result<SemiringValue> {
    let x = promote(x, true)?;
    let y = promote(y, true)?;
    same_len(&x, &y)?;
    let d = x.descriptor();
    x.values()
        .iter()
        .zip(y.values())
        .try_fold(d.zero(), |acc, (&a, &b)| Ok(d.plus(acc, d.residual(a, b)?)))
}

pub fn functional_apply(f: &FunctionalRep, y: &TropVector) -> Result<SemiringValue> {
    let y = promote(y, true)?;
    same_len(&f.coeffs, &y)?;
    Ok(f.coeffs.hadamard(&y)?.total())
}

/// The vector `x` whose functional `x*` is `f`.
///
/// Over `rmaxhat`, `xᵢ = cᵢ⁻¹`. For Boolean coefficients the returned
/// vector is the complement of `c`, the largest `y` with `f(y) = 0`.
pub fn recover_generator(f: &FunctionalRep) -> Result<TropVector> {
    if f.is_zero() {
        return Err(Error::ZeroFunctional);
    }
    Ok(hat_inv_vec(&f.coeffs))
}

/// Least extension to the whole space of a functional prescribed on the
/// generators of a sup-span.
///
/// The extension is `x*` with `x = ⊕ⱼ vⱼ⁻¹ ⊙ gⱼ`, raised to `+∞` on
/// coordinates where every generator vanishes. The prescription is
/// consistent exactly when `x*(gⱼ) = vⱼ` for every `j`.
pub fn hahn_banach_extend(values: &[SemiringValue], w: &GeneratorSet, dim: usize) -> Result<FunctionalRep> {
    if w.dim() != dim {
        return Err(Error::Shape(format!("generators have dimension {}, expected {dim}", w.dim())));
    }
    if values.len() != w.generators.len() {
        return Err(Error::Shape(format!(
            "{} values for {} generators",
            values.len(),
            w.generators.len()
        )));
    }
    for &v in values {
        HAT.check(v)?;
    }
    if values.iter().all(|&v| HAT.is_zero(v)) {
        return Err(Error::ZeroFunctional);
    }
    let mut x = TropVector::zeros(HAT, dim);
    for (g, &v) in w.generators.iter().zip(values) {
        x = x.add(&g.scale(hat_inv(v))?)?;
    }
    let top = SemiringValue::POS_INF;
    let raised: Vec<SemiringValue> = (0..dim)
        .map(|i| {
            if w.generators.iter().all(|g| HAT.is_zero(g.get(i))) {
                top
            } else {
                x.get(i)
            }
        })
        .collect();
    let x = TropVector::new(HAT, raised)?;
    for (j, (g, &v)) in w.generators.iter().zip(values).enumerate() {
        let got = xstar_eval(&x, g)?;
        if got != v {
            return Err(Error::Inconsistent(format!(
                "generator {j} ({g}) is prescribed {v} but the span forces {got}"
            )));
        }
    }
    Ok(FunctionalRep { coeffs: hat_inv_vec(&x) })
}

/// A functional taking different values at `x` and `y`: `y*` when
/// `y ≺ x`, otherwise `x*`.
pub fn separate(x: &TropVector, y: &TropVector) -> Result<FunctionalRep> {
    let x = promote_hat(x)?;
    let y = promote_hat(y)?;
    same_len(&x, &y)?;
    if x == y {
        return Err(Error::NotSeparable);
    }
    let (first, second) = if y.leq(&x) { (&y, &x) } else { (&x, &y) };
    for cand in [first, second] {
        let f = FunctionalRep { coeffs: hat_inv_vec(cand) };
        if functional_apply(&f, &x)? != functional_apply(&f, &y)? {
            return Ok(f);
        }
    }
    Err(Error::NotSeparable)
}

/// `⟨φ₁, φ₂⟩ = ⊕ᵢ φ₁ᵢ ⊙ φ₂ᵢ`.
pub fn scalar_product(p1: &TropVector, p2: &TropVector) -> Result<SemiringValue> {
    let p1 = promote_hat(p1)?;
    let p2 = promote_hat(p2)?;
    same_len(&p1, &p2)?;
    Ok(p1.hadamard(&p2)?.total())
}

/// `[x, y] = x*(y)`.
pub fn skew_product(x: &TropVector, y: &TropVector) -> Result<SemiringValue> {
    xstar_eval(&promote_hat(x)?, &promote_hat(y)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    pub vector: TropVector,
    /// Generators none of whose multiples dominate the input; each was
    /// replaced by the all-top vector.
    pub undominated: Vec<usize>,
}

/// Least element of the inf-closure of the generators that dominates `x`:
/// `∧ⱼ wⱼ*(x) ⊙ wⱼ`.
pub fn project_upper(x: &TropVector, w: &GeneratorSet) -> Result<Projection> {
    let x = promote_hat(x)?;
    let mut out = TropVector::new(HAT, vec![SemiringValue::POS_INF; x.len()])?;
    let mut undominated = Vec::new();
    for (j, g) in w.generators.iter().enumerate() {
        same_len(&x, g)?;
        let cand = g.scale(xstar_eval(g, &x)?)?;
        if x.leq(&cand) {
            out = out.meet(&cand)?;
        } else {
            undominated.push(j);
        }
    }
    Ok(Projection { vector: out, undominated })
}

/// Whether `x` lies in the inf-closure of the generators.
pub fn in_inf_closure(x: &TropVector, w: &GeneratorSet) -> Result<bool> {
    let p = project_upper(x, w)?;
    Ok(p.vector == promote_hat(x)?)
}

/// Largest `k` with `k ⊙ w ≼ x` in one coordinate.
fn lower_coefficient(w: SemiringValue, x: SemiringValue) -> SemiringValue {
    let (w, x) = (w.as_real().expect("real"), x.as_real().expect("real"));
    let v = if w == f64::NEG_INFINITY || x == f64::INFINITY {
        f64::INFINITY
    } else if w == f64::INFINITY || x == f64::NEG_INFINITY {
        f64::NEG_INFINITY
    } else {
        x - w
    };
    SemiringValue::Real(v)
}

/// Greatest element of the sup-span of the generators below `x`:
/// `⊕ⱼ λⱼ ⊙ wⱼ` with `λⱼ = minᵢ (xᵢ − wⱼᵢ)`.
pub fn project_lower(x: &TropVector, w: &GeneratorSet) -> Result<TropVector> {
    let x = promote_hat(x)?;
    let mut out = TropVector::zeros(HAT, x.len());
    for g in &w.generators {
        same_len(&x, g)?;
        let lambda = g
            .values()
            .iter()
            .zip(x.values())
            .map(|(&gi, &xi)| lower_coefficient(gi, xi))
            .fold(SemiringValue::POS_INF, |m, k| HAT.meet(m, k));
        out = out.add(&g.scale(lambda)?)?;
    }
    Ok(out)
}

/// `x₁* ⊕ x₂* = (x₁ ∧ x₂)*`.
pub fn dual_add(a: &DualVector, b: &DualVector) -> Result<DualVector> {
    DualVector::new(&a.x.meet(&b.x)?)
}

/// `k ⊙ x* = (k⁻¹ ⊙ x)*` for invertible `k`.
pub fn dual_scale(k: SemiringValue, a: &DualVector) -> Result<DualVector> {
    let inv = HAT.inv(k)?;
    DualVector::new(&a.x.scale(inv)?)
}

/// Canonical image of `x` in the second dual, read back as a vector: the
/// `i`-th entry is the value of `x**` at the coordinate functional
/// `δᵢ*(y) = yᵢ`, where `δᵢ` is `0` at `i` and `+∞` elsewhere.
pub fn double_dual(x: &TropVector) -> Result<TropVector> {
    let x = promote_hat(x)?;
    let n = x.len();
    let values = (0..n)
        .map(|i| {
            let mut delta = vec![SemiringValue::POS_INF; n];
            delta[i] = SemiringValue::Real(0.0);
            xstar_eval(&TropVector::new(HAT, delta)?, &x)
        })
        .collect::<Result<Vec<_>>>()?;
    TropVector::new(HAT, values)
}

/// The vector `ψ` with `f(y) = ⟨ψ, y⟩`, i.e. the coefficient vector.
pub fn riesz_fischer(f: &FunctionalRep) -> Result<TropVector> {
    if f.is_zero() {
        return Err(Error::ZeroFunctional);
    }
    promote_hat(&f.coeffs)
}

/// Outcome of one randomized identity suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Random `rmaxhat` vector with integer payloads in `[−5, 5]`, `−∞` and,
/// when `tops` is set, `+∞`.
pub fn random_vector(rng: &mut impl Rng, dim: usize, tops: bool) -> TropVector {
    let values = (0..dim)
        .map(|_| {
            let r = rng.gen_range(0..14);
            SemiringValue::Real(match r {
                0 => f64::NEG_INFINITY,
                1 if tops => f64::INFINITY,
                _ => f64::from(rng.gen_range(-5i32..=5)),
            })
        })
        .collect();
    TropVector::new(HAT, values).expect("admissible")
}

fn random_scalar(rng: &mut impl Rng) -> SemiringValue {
    SemiringValue::Real(f64::from(rng.gen_range(-5i32..=5)))
}

struct Tally {
    name: &'static str,
    trials: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, trials: 0, failures: 0, first_failure: None }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(witness());
            }
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            trials: self.trials,
            failures: self.failures,
            first_failure: self.first_failure,
        }
    }
}

/// Randomized checks of the duality theorems, seeded for reproducibility.
///
/// * `thm5.1`: `x*` preserves finite sums and is homogeneous.
/// * `thm5.2`: every coefficient functional equals `x*` for the recovered `x`.
/// * `thm5.6`: `(x₁ ∧ x₂)* = x₁* ⊕ x₂*` and `(k⁻¹ ⊙ x)* = k ⊙ x*`.
/// * `thm5.7`: the second dual returns the vector.
pub fn run_suite(dim: usize, trials: usize, seed: u64) -> Result<Vec<SuiteResult>> {
    if dim == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t1 = Tally::new("thm5.1");
    let mut t2 = Tally::new("thm5.2");
    let mut t6 = Tally::new("thm5.6");
    let mut t7 = Tally::new("thm5.7");
    for _ in 0..trials {
        let x = random_vector(&mut rng, dim, true);
        let y1 = random_vector(&mut rng, dim, true);
        let y2 = random_vector(&mut rng, dim, true);
        let k = random_scalar(&mut rng);

        let sum = xstar_eval(&x, &y1.add(&y2)?)?;
        let parts = HAT.plus(xstar_eval(&x, &y1)?, xstar_eval(&x, &y2)?);
        let scaled = xstar_eval(&x, &y1.scale(k)?)?;
        let hom = HAT.times(k, xstar_eval(&x, &y1)?);
        t1.check(sum == parts && scaled == hom, || format!("x=({x}) y1=({y1}) y2=({y2}) k={k}"));

        let c = random_vector(&mut rng, dim, true);
        let f = FunctionalRep { coeffs: c.clone() };
        if !f.is_zero() {
            let g = recover_generator(&f)?;
            let ok = functional_apply(&f, &y1)? == xstar_eval(&g, &y1)?;
            t2.check(ok, || format!("c=({c}) y=({y1})"));
        }

        let x2 = random_vector(&mut rng, dim, true);
        let meet = xstar_eval(&x.meet(&x2)?, &y1)?;
        let joined = HAT.plus(xstar_eval(&x, &y1)?, xstar_eval(&x2, &y1)?);
        let shifted = xstar_eval(&x.scale(HAT.inv(k)?)?, &y1)?;
        let ok = meet == joined && shifted == HAT.times(k, xstar_eval(&x, &y1)?);
        t6.check(ok, || format!("x1=({x}) x2=({x2}) y=({y1}) k={k}"));

        t7.check(double_dual(&x)? == x, || format!("x=({x})"));
    }
    Ok(vec![t1.finish(), t2.finish(), t6.finish(), t7.finish()])
}
