//! Built-in idempotent semirings, their standard order, scalar residuation
//! and the deformed (log-sum-exp) addition whose small-`h` limit is `max`.
//!
//! Every semiring here is idempotent: `a ⊕ a = a`. The standard order is the
//! one induced by addition, `a ≼ b` iff `a ⊕ b = b`, so the zero sits below
//! every element. For `rmin` this order is the reverse of the usual order on
//! the reals.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemiringKind {
    /// `ℝ ∪ {−∞}` with `max` and `+`.
    RMax,
    /// `rmax` completed with a top element `+∞`.
    RMaxHat,
    /// `ℝ ∪ {+∞}` with `min` and `+`.
    RMin,
    /// `rmin` completed with a top element `−∞`.
    RMinHat,
    /// `{0, 1}` with `or` and `and`.
    Boolean,
    /// `ℝ ∪ {±∞}` with `max` and `min`; zero `−∞`, unit `+∞`.
    MinMax,
    /// `ℤ ∪ {−∞}` with `max` and `+`.
    ZMax,
}

impl SemiringKind {
    pub const ALL: [SemiringKind; 7] = [
        SemiringKind::RMax,
        SemiringKind::RMaxHat,
        SemiringKind::RMin,
        SemiringKind::RMinHat,
        SemiringKind::Boolean,
        SemiringKind::MinMax,
        SemiringKind::ZMax,
    ];

    pub fn token(self) -> &'static str {
        match self {
            SemiringKind::RMax => "rmax",
            SemiringKind::RMaxHat => "rmaxhat",
            SemiringKind::RMin => "rmin",
            SemiringKind::RMinHat => "rminhat",
            SemiringKind::Boolean => "bool",
            SemiringKind::MinMax => "minmax",
            SemiringKind::ZMax => "zmax",
        }
    }
}

/// A value of one of the built-in semirings. Which variant is admissible is
/// decided by the owning [`SemiringDescriptor`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SemiringValue {
    /// Extended real payload; never NaN.
    Real(f64),
    Bit(bool),
    /// Integer payload, `None` is `−∞`.
    Int(Option<i64>),
}

impl SemiringValue {
    pub const NEG_INF: SemiringValue = SemiringValue::Real(f64::NEG_INFINITY);
    pub const POS_INF: SemiringValue = SemiringValue::Real(f64::INFINITY);

    /// Extended real value; NaN is rejected here so that every operation
    /// downstream is total.
    pub fn real(x: f64) -> Result<Self> {
        if x.is_nan() {
            return Err(Error::Domain("NaN is not a semiring value".into()));
        }
        Ok(SemiringValue::Real(x))
    }

    pub fn as_real(&self) -> Option<f64> {
        match *self {
            SemiringValue::Real(x) => Some(x),
            _ => None,
        }
    }
}

impl fmt::Display for SemiringValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SemiringValue::Real(x) => f.write_str(&fmt_extended(x)),
            SemiringValue::Bit(b) => f.write_str(if b { "1" } else { "0" }),
            SemiringValue::Int(Some(n)) => write!(f, "{n}"),
            SemiringValue::Int(None) => f.write_str("-inf"),
        }
    }
}

/// Round-trip exact decimal text, with `-inf` / `+inf` literals.
pub fn fmt_extended(x: f64) -> String {
    if x == f64::INFINITY {
        "+inf".to_string()
    } else if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{x}")
    }
}

pub fn parse_extended(token: &str) -> Result<f64> {
    let t = token.trim();
    match t {
        "-inf" => Ok(f64::NEG_INFINITY),
        "+inf" | "inf" => Ok(f64::INFINITY),
        _ => {
            let x: f64 = t
                .parse()
                .map_err(|_| Error::Domain(format!("not an extended real: {t:?}")))?;
            if x.is_nan() {
                return Err(Error::Domain("NaN is not a semiring value".into()));
            }
            Ok(x)
        }
    }
}

/// The closed set of built-in idempotent semirings together with their
/// completion flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SemiringDescriptor {
    kind: SemiringKind,
    has_zero: bool,
    has_top: bool,
    invertible_nonzero: bool,
}

impl SemiringDescriptor {
    pub const RMAX: Self = Self::new(SemiringKind::RMax);
    pub const RMAX_HAT: Self = Self::new(SemiringKind::RMaxHat);
    pub const RMIN: Self = Self::new(SemiringKind::RMin);
    pub const RMIN_HAT: Self = Self::new(SemiringKind::RMinHat);
    pub const BOOLEAN: Self = Self::new(SemiringKind::Boolean);
    pub const MIN_MAX: Self = Self::new(SemiringKind::MinMax);
    pub const ZMAX: Self = Self::new(SemiringKind::ZMax);

    pub const fn new(kind: SemiringKind) -> Self {
        use SemiringKind::*;
        let has_top = matches!(kind, RMaxHat | RMinHat | Boolean | MinMax);
        let invertible_nonzero = !matches!(kind, MinMax);
        SemiringDescriptor {
            kind,
            has_zero: true,
            has_top,
            invertible_nonzero,
        }
    }

    pub fn all() -> [Self; 7] {
        SemiringKind::ALL.map(Self::new)
    }

    pub fn kind(&self) -> SemiringKind {
        self.kind
    }

    pub fn has_zero(&self) -> bool {
        self.has_zero
    }

    pub fn has_top(&self) -> bool {
        self.has_top
    }

    pub fn invertible_nonzero(&self) -> bool {
        self.invertible_nonzero
    }

    pub fn name(&self) -> &'static str {
        self.kind.token()
    }

    /// The completed descriptor in which residuals and x-functionals take
    /// their values. `zmax` has no built-in completion and maps to itself.
    pub fn completion(&self) -> Self {
        match self.kind {
            SemiringKind::RMax => Self::RMAX_HAT,
            SemiringKind::RMin => Self::RMIN_HAT,
            _ => *self,
        }
    }

    fn is_max_real(&self) -> bool {
        matches!(self.kind, SemiringKind::RMax | SemiringKind::RMaxHat)
    }

    fn is_min_real(&self) -> bool {
        matches!(self.kind, SemiringKind::RMin | SemiringKind::RMinHat)
    }

    pub fn zero(&self) -> SemiringValue {
        use SemiringKind::*;
        match self.kind {
            RMax | RMaxHat | MinMax => SemiringValue::NEG_INF,
            RMin | RMinHat => SemiringValue::POS_INF,
            Boolean => SemiringValue::Bit(false),
            ZMax => SemiringValue::Int(None),
        }
    }

    pub fn one(&self) -> SemiringValue {
        use SemiringKind::*;
        match self.kind {
            RMax | RMaxHat | RMin | RMinHat => SemiringValue::Real(0.0),
            MinMax => SemiringValue::POS_INF,
            Boolean => SemiringValue::Bit(true),
            ZMax => SemiringValue::Int(Some(0)),
        }
    }

    /// The greatest element, when the carrier has one.
    pub fn top(&self) -> Option<SemiringValue> {
        use SemiringKind::*;
        match self.kind {
            RMaxHat | MinMax => Some(SemiringValue::POS_INF),
            RMinHat => Some(SemiringValue::NEG_INF),
            Boolean => Some(SemiringValue::Bit(true)),
            RMax | RMin | ZMax => None,
        }
    }

    pub fn is_zero(&self, a: SemiringValue) -> bool {
        a == self.zero()
    }

    pub fn is_top(&self, a: SemiringValue) -> bool {
        self.top() == Some(a)
    }

    pub fn is_admissible(&self, a: SemiringValue) -> bool {
        use SemiringKind::*;
        match (self.kind, a) {
            (_, SemiringValue::Real(x)) if x.is_nan() => false,
            (RMax, SemiringValue::Real(x)) => x != f64::INFINITY,
            (RMin, SemiringValue::Real(x)) => x != f64::NEG_INFINITY,
            (RMaxHat | RMinHat | MinMax, SemiringValue::Real(_)) => true,
            (Boolean, SemiringValue::Bit(_)) => true,
            (ZMax, SemiringValue::Int(_)) => true,
            _ => false,
        }
    }

    pub fn check(&self, a: SemiringValue) -> Result<SemiringValue> {
        if self.is_admissible(a) {
            Ok(a)
        } else {
            Err(Error::Inadmissible {
                semiring: self.name(),
                value: format!("{a}"),
            })
        }
    }

    /// Builds an admissible value from a number. Booleans accept 0 and 1,
    /// `zmax` accepts integral numbers and `−∞`.
    pub fn from_f64(&self, x: f64) -> Result<SemiringValue> {
        let v = match self.kind {
            SemiringKind::Boolean if x == 0.0 => SemiringValue::Bit(false),
            SemiringKind::Boolean if x == 1.0 => SemiringValue::Bit(true),
            SemiringKind::Boolean => {
                return Err(Error::Domain(format!("{x} is not a boolean")));
            }
            SemiringKind::ZMax if x == f64::NEG_INFINITY => SemiringValue::Int(None),
            SemiringKind::ZMax if x.fract() == 0.0 && x.abs() < 9.0e15 => {
                SemiringValue::Int(Some(x as i64))
            }
            SemiringKind::ZMax => {
                return Err(Error::Domain(format!("{x} is not an integer")));
            }
            _ => SemiringValue::real(x)?,
        };
        self.check(v)
    }

    /// Parses one value token as written by the CLI and file formats.
    pub fn parse(&self, token: &str) -> Result<SemiringValue> {
        let t = token.trim();
        match self.kind {
            SemiringKind::Boolean => match t {
                "0" | "false" => Ok(SemiringValue::Bit(false)),
                "1" | "true" => Ok(SemiringValue::Bit(true)),
                _ => Err(Error::Domain(format!("not a boolean: {t:?}"))),
            },
            SemiringKind::ZMax => {
                if t == "-inf" {
                    return Ok(SemiringValue::Int(None));
                }
                t.parse::<i64>()
                    .map(|n| SemiringValue::Int(Some(n)))
                    .map_err(|_| Error::Domain(format!("not an integer: {t:?}")))
            }
            _ => self.check(SemiringValue::Real(parse_extended(t)?)),
        }
    }

    /// Semiring sum without admissibility checks.
    pub fn plus(&self, a: SemiringValue, b: SemiringValue) -> SemiringValue {
        use SemiringValue::*;
        match (a, b) {
            (Real(x), Real(y)) => {
                let keep_x = if self.is_min_real() { x <= y } else { x >= y };
                Real(if keep_x { x } else { y })
            }
            (Bit(x), Bit(y)) => Bit(x || y),
            (Int(x), Int(y)) => Int(x.max(y)),
            _ => panic!("mixed payloads {a:?} and {b:?} in {}", self.name()),
        }
    }

    /// Semiring product without admissibility checks.
    pub fn times(&self, a: SemiringValue, b: SemiringValue) -> SemiringValue {
        self.try_times(a, b)
            .unwrap_or_else(|e| panic!("{} product: {e}", self.name()))
    }

    fn try_times(&self, a: SemiringValue, b: SemiringValue) -> Result<SemiringValue> {
        use SemiringValue::*;
        let zero = self.zero();
        if a == zero || b == zero {
            return Ok(zero);
        }
        Ok(match (a, b) {
            (Real(x), Real(y)) => match self.kind {
                SemiringKind::MinMax => Real(x.min(y)),
                // ZERO is handled above; the only remaining infinity is the top
                _ => {
                    if let Some(top) = self.top() {
                        if a == top || b == top {
                            return Ok(top);
                        }
                    }
                    Real(x + y)
                }
            },
            (Bit(x), Bit(y)) => Bit(x && y),
            (Int(Some(x)), Int(Some(y))) => Int(Some(
                x.checked_add(y)
                    .ok_or_else(|| Error::Domain("zmax payload overflow".into()))?,
            )),
            _ => panic!("mixed payloads {a:?} and {b:?} in {}", self.name()),
        })
    }

    pub fn add(&self, a: SemiringValue, b: SemiringValue) -> Result<SemiringValue> {
        Ok(self.plus(self.check(a)?, self.check(b)?))
    }

    pub fn mul(&self, a: SemiringValue, b: SemiringValue) -> Result<SemiringValue> {
        self.try_times(self.check(a)?, self.check(b)?)
    }

    /// Standard order: `a ≼ b` iff `a ⊕ b = b`.
    pub fn leq(&self, a: SemiringValue, b: SemiringValue) -> bool {
        self.plus(a, b) == b
    }

    /// Greatest lower bound of two elements. All built-in carriers are
    /// chains, so this is the smaller of the two.
    pub fn meet(&self, a: SemiringValue, b: SemiringValue) -> SemiringValue {
        if self.leq(a, b) {
            a
        } else {
            b
        }
    }

    pub fn inv(&self, a: SemiringValue) -> Result<SemiringValue> {
        let a = self.check(a)?;
        if !self.invertible_nonzero {
            return Err(Error::Unsupported(format!(
                "{} is not a division semiring",
                self.name()
            )));
        }
        if self.is_zero(a) {
            return Err(Error::NotInvertible(format!("zero of {}", self.name())));
        }
        if self.kind != SemiringKind::Boolean && self.is_top(a) {
            return Err(Error::NotInvertible(format!("top of {}", self.name())));
        }
        Ok(match a {
            SemiringValue::Real(x) => SemiringValue::Real(0.0 - x),
            SemiringValue::Bit(b) => SemiringValue::Bit(b),
            SemiringValue::Int(Some(n)) => SemiringValue::Int(Some(
                n.checked_neg()
                    .ok_or_else(|| Error::Domain("zmax payload overflow".into()))?,
            )),
            SemiringValue::Int(None) => unreachable!("zero handled above"),
        })
    }

    /// Least upper bound of a finite family; the empty sup is the zero.
    pub fn sup(&self, xs: &[SemiringValue]) -> Result<SemiringValue> {
        xs.iter()
            .try_fold(self.zero(), |acc, &x| Ok(self.plus(acc, self.check(x)?)))
    }

    /// Greatest lower bound of a finite family; the empty inf is the top,
    /// which only completed carriers have.
    pub fn inf(&self, xs: &[SemiringValue]) -> Result<SemiringValue> {
        let (first, rest) = match xs.split_first() {
            Some(split) => split,
            None => return self.top().ok_or(Error::NoBound("infimum")),
        };
        rest.iter()
            .try_fold(self.check(*first)?, |acc, &x| Ok(self.meet(acc, self.check(x)?)))
    }

    /// `inf { k : b ≼ k ⊙ a }`, evaluated in the completed carrier.
    ///
    /// Over `rmaxhat` this is `b − a` with `(ZERO, y ≠ ZERO) ↦ +∞`,
    /// `(ZERO, ZERO) ↦ ZERO` and `(+∞, y) ↦ ZERO`.
    pub fn residual(&self, a: SemiringValue, b: SemiringValue) -> Result<SemiringValue> {
        let a = self.check(a)?;
        let b = self.check(b)?;
        use SemiringValue::*;
        Ok(match (a, b) {
            (Real(x), Real(y)) if self.is_max_real() => Real(residual_max_plus(x, y)),
            (Real(x), Real(y)) if self.is_min_real() => Real(-residual_max_plus(-x, -y)),
            (Real(x), Real(y)) => {
                // minmax: b ≤ min(k, a) holds for k = b exactly when b ≤ a
                if y <= x {
                    Real(y)
                } else {
                    Real(f64::INFINITY)
                }
            }
            // no k helps when b = 1 and a = 0, and the empty inf is the top 1
            (Bit(_), Bit(y)) => Bit(y),
            (Int(_), Int(None)) => Int(None),
            (Int(None), Int(Some(_))) => return Err(Error::NoBound("infimum")),
            (Int(Some(x)), Int(Some(y))) => Int(Some(
                y.checked_sub(x)
                    .ok_or_else(|| Error::Domain("zmax payload overflow".into()))?,
            )),
            _ => unreachable!("admissibility checked"),
        })
    }
}

/// Residual over the completed max-plus carrier.
pub(crate) fn residual_max_plus(a: f64, b: f64) -> f64 {
    if b == f64::NEG_INFINITY || a == f64::INFINITY {
        f64::NEG_INFINITY
    } else if a == f64::NEG_INFINITY || b == f64::INFINITY {
        f64::INFINITY
    } else {
        b - a
    }
}

impl fmt::Display for SemiringDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemiringDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SemiringKind::ALL
            .into_iter()
            .find(|k| k.token() == s)
            .map(Self::new)
            .ok_or_else(|| Error::Unsupported(format!("unknown semiring {s:?}")))
    }
}

/// Payload negation, the isomorphism between `rmax` and `rmin` (and
/// between their completions).
pub fn negate(a: SemiringValue) -> SemiringValue {
    match a {
        SemiringValue::Real(x) => SemiringValue::Real(0.0 - x),
        other => other,
    }
}

/// `h ln(e^{u/h} + e^{v/h})`, evaluated as `max(u, v) + h ln(1 + e^{−|u−v|/h})`.
pub fn deformed_add(u: f64, v: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Domain(format!("deformation parameter must be positive, got {h}")));
    }
    if !u.is_finite() || !v.is_finite() {
        return Err(Error::Domain("deformed addition needs finite arguments".into()));
    }
    let m = u.max(v);
    Ok(m + h * (-(u - v).abs() / h).exp().ln_1p())
}

/// Min-plus counterpart, `−h ln(e^{−u/h} + e^{−v/h})`.
pub fn deformed_min(u: f64, v: f64, h: f64) -> Result<f64> {
    Ok(-deformed_add(-u, -v, h)?)
}

/// A lattice-ordered group, the raw material for [`adjoin_bottom`].
pub trait LatticeGroup {
    type Elem: Copy + PartialEq + fmt::Debug;

    fn op(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn identity(&self) -> Self::Elem;
    fn inverse(&self, a: Self::Elem) -> Self::Elem;
    /// Least upper bound in the group order.
    fn join(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;

    /// The built-in semiring obtained by adjoining a zero, if there is one.
    fn builtin(&self) -> Option<SemiringKind> {
        None
    }
}

/// `(ℝ, +, ≤)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct AdditiveReals;

impl LatticeGroup for AdditiveReals {
    type Elem = f64;

    fn op(&self, a: f64, b: f64) -> f64 {
        a + b
    }
    fn identity(&self) -> f64 {
        0.0
    }
    fn inverse(&self, a: f64) -> f64 {
        0.0 - a
    }
    fn join(&self, a: f64, b: f64) -> f64 {
        a.max(b)
    }
    fn builtin(&self) -> Option<SemiringKind> {
        Some(SemiringKind::RMax)
    }
}

/// `(ℤ, +, ≤)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct AdditiveIntegers;

impl LatticeGroup for AdditiveIntegers {
    type Elem = i64;

    fn op(&self, a: i64, b: i64) -> i64 {
        a + b
    }
    fn identity(&self) -> i64 {
        0
    }
    fn inverse(&self, a: i64) -> i64 {
        -a
    }
    fn join(&self, a: i64, b: i64) -> i64 {
        a.max(b)
    }
    fn builtin(&self) -> Option<SemiringKind> {
        Some(SemiringKind::ZMax)
    }
}

/// A lattice-ordered group with an absorbing zero adjoined below every
/// element; `None` is the zero.
#[derive(Clone, Copy, Debug)]
pub struct WithZero<G> {
    group: G,
}

pub fn adjoin_bottom<G: LatticeGroup>(group: G) -> WithZero<G> {
    WithZero { group }
}

impl<G: LatticeGroup> WithZero<G> {
    pub fn zero(&self) -> Option<G::Elem> {
        None
    }

    pub fn one(&self) -> Option<G::Elem> {
        Some(self.group.identity())
    }

    pub fn add(&self, a: Option<G::Elem>, b: Option<G::Elem>) -> Option<G::Elem> {
        match (a, b) {
            (Some(x), Some(y)) => Some(self.group.join(x, y)),
            (None, x) | (x, None) => x,
        }
    }

    pub fn mul(&self, a: Option<G::Elem>, b: Option<G::Elem>) -> Option<G::Elem> {
        Some(self.group.op(a?, b?))
    }

    pub fn inv(&self, a: Option<G::Elem>) -> Result<Option<G::Elem>> {
        a.map(|x| Some(self.group.inverse(x)))
            .ok_or_else(|| Error::NotInvertible("adjoined zero".into()))
    }

    pub fn leq(&self, a: Option<G::Elem>, b: Option<G::Elem>) -> bool {
        self.add(a, b) == b
    }

    /// The matching built-in descriptor.
    pub fn descriptor(&self) -> Result<SemiringDescriptor> {
        self.group
            .builtin()
            .map(SemiringDescriptor::new)
            .ok_or_else(|| Error::Unsupported("group has no built-in semiring carrier".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use SemiringValue::*;

    const D: SemiringDescriptor = SemiringDescriptor::RMAX;

    #[test]
    fn rmax_basics() {
        assert_eq!(D.add(Real(3.0), Real(5.0)).unwrap(), Real(5.0));
        assert_eq!(D.add(Real(7.0), D.zero()).unwrap(), Real(7.0));
        assert_eq!(D.mul(Real(3.0), Real(5.0)).unwrap(), Real(8.0));
        assert!(D.leq(Real(3.0), Real(5.0)));
        assert_eq!(D.inv(Real(4.0)).unwrap(), Real(-4.0));
        assert!(matches!(D.inv(D.zero()), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn pos_inf_is_inadmissible_in_plain_rmax() {
        assert!(matches!(
            D.add(SemiringValue::POS_INF, Real(1.0)),
            Err(Error::Inadmissible { .. })
        ));
        assert!(SemiringDescriptor::RMIN
            .check(SemiringValue::NEG_INF)
            .is_err());
        assert!(SemiringValue::real(f64::NAN).is_err());
    }

    #[test]
    fn minmax_top_absorbs() {
        let d = SemiringDescriptor::MIN_MAX;
        assert_eq!(d.add(Real(2.0), d.one()).unwrap(), SemiringValue::POS_INF);
        assert!(matches!(d.inv(Real(1.0)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn hat_products_with_top() {
        let d = SemiringDescriptor::RMAX_HAT;
        let top = SemiringValue::POS_INF;
        assert_eq!(d.mul(d.zero(), top).unwrap(), d.zero());
        assert_eq!(d.mul(Real(-3.0), top).unwrap(), top);
        assert_eq!(d.mul(top, top).unwrap(), top);
        assert!(matches!(d.inv(top), Err(Error::NotInvertible(_))));
        let m = SemiringDescriptor::RMIN_HAT;
        assert_eq!(m.mul(m.zero(), SemiringValue::NEG_INF).unwrap(), m.zero());
    }

    #[test]
    fn rmin_order_is_reversed() {
        let d = SemiringDescriptor::RMIN;
        assert!(!d.leq(Real(3.0), Real(5.0)));
        assert!(d.leq(Real(5.0), Real(3.0)));
        for d in SemiringDescriptor::all() {
            assert!(d.leq(d.zero(), d.one()));
        }
    }

    #[test]
    fn boolean_inverse_of_one() {
        let d = SemiringDescriptor::BOOLEAN;
        assert_eq!(d.mul(Bit(true), Bit(true)).unwrap(), Bit(true));
        assert_eq!(d.inv(Bit(true)).unwrap(), Bit(true));
    }

    #[test]
    fn sup_and_inf() {
        let xs = [Real(1.0), Real(4.0), Real(-2.0)];
        assert_eq!(D.sup(&xs).unwrap(), Real(4.0));
        assert_eq!(D.inf(&xs).unwrap(), Real(-2.0));
        assert_eq!(D.sup(&[]).unwrap(), D.zero());
        assert_eq!(D.inf(&[]), Err(Error::NoBound("infimum")));
        assert_eq!(
            SemiringDescriptor::RMAX_HAT.inf(&[]).unwrap(),
            SemiringValue::POS_INF
        );
    }

    #[test]
    fn residual_conventions() {
        let d = SemiringDescriptor::RMAX_HAT;
        assert_eq!(d.residual(Real(2.0), Real(5.0)).unwrap(), Real(3.0));
        assert_eq!(d.residual(d.zero(), Real(1.0)).unwrap(), SemiringValue::POS_INF);
        assert_eq!(d.residual(d.zero(), d.zero()).unwrap(), d.zero());
        assert_eq!(d.residual(SemiringValue::POS_INF, Real(9.0)).unwrap(), d.zero());
        assert!(SemiringDescriptor::ZMAX
            .residual(Int(None), Int(Some(1)))
            .is_err());
    }

    #[test]
    fn residual_matches_grid_search() {
        // inf over k on a fine grid with b ≼ k ⊙ a
        let d = SemiringDescriptor::RMAX_HAT;
        let (a, b) = (2.0, 5.0);
        let k = (-4000..=4000)
            .map(|i| i as f64 * 0.005)
            .filter(|k| b <= k + a)
            .fold(f64::INFINITY, f64::min);
        assert_eq!(d.residual(Real(a), Real(b)).unwrap(), Real(k));
    }

    #[test]
    fn deformed_add_examples() {
        assert!((deformed_add(0.0, 0.0, 1.0).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
        let gap = deformed_add(3.0, 5.0, 1e-3).unwrap() - 5.0;
        assert!((0.0..1e-12).contains(&gap));
        let gap = deformed_add(1.2, 0.7, 0.5).unwrap() - 1.2;
        assert!(gap >= 0.0 && gap <= 0.5 * std::f64::consts::LN_2);
        // naive form would overflow here
        assert!(deformed_add(800.0, 799.0, 1.0).unwrap().is_finite());
        assert!(deformed_add(0.0, 0.0, 0.0).is_err());
        assert!(deformed_add(0.0, 0.0, -1.0).is_err());
    }

    #[test]
    fn deformed_add_brute_force() {
        let (u, v, h) = (1.2_f64, 0.7_f64, 0.5_f64);
        let naive = h * ((u / h).exp() + (v / h).exp()).ln();
        assert!((deformed_add(u, v, h).unwrap() - naive).abs() < 1e-14);
        let naive_min = -h * ((-u / h).exp() + (-v / h).exp()).ln();
        assert!((deformed_min(u, v, h).unwrap() - naive_min).abs() < 1e-14);
    }

    #[test]
    fn tokens_round_trip() {
        for d in SemiringDescriptor::all() {
            assert_eq!(d.name().parse::<SemiringDescriptor>().unwrap(), d);
        }
        assert!("tropical".parse::<SemiringDescriptor>().is_err());
        assert_eq!(D.parse("-inf").unwrap(), SemiringValue::NEG_INF);
        assert_eq!(format!("{}", SemiringValue::POS_INF), "+inf");
        assert_eq!(format!("{}", Real(0.1)), "0.1");
    }

    #[test]
    fn adjoined_reals_behave_like_rmax() {
        let s = adjoin_bottom(AdditiveReals);
        assert_eq!(s.descriptor().unwrap(), SemiringDescriptor::RMAX);
        assert_eq!(s.one(), Some(0.0));
        let lift = |x: Option<f64>| Real(x.unwrap_or(f64::NEG_INFINITY));
        let samples = [None, Some(-2.5), Some(0.0), Some(1.0), Some(3.5)];
        for &a in &samples {
            for &b in &samples {
                assert_eq!(lift(s.add(a, b)), D.plus(lift(a), lift(b)));
                assert_eq!(lift(s.mul(a, b)), D.times(lift(a), lift(b)));
            }
        }
        assert!(s.inv(None).is_err());
    }

    #[test]
    fn adjoined_integers_is_zmax() {
        let s = adjoin_bottom(AdditiveIntegers);
        assert_eq!(s.descriptor().unwrap(), SemiringDescriptor::ZMAX);
        assert_eq!(s.mul(Some(3), None), None);
        assert_eq!(s.mul(Some(3), Some(-5)), Some(-2));
        assert!(s.leq(None, Some(-100)));
    }

    #[derive(Clone, Copy)]
    struct Lattice2;

    impl LatticeGroup for Lattice2 {
        type Elem = (i64, i64);
        fn op(&self, a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
            (a.0 + b.0, a.1 + b.1)
        }
        fn identity(&self) -> (i64, i64) {
            (0, 0)
        }
        fn inverse(&self, a: (i64, i64)) -> (i64, i64) {
            (-a.0, -a.1)
        }
        fn join(&self, a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
            (a.0.max(b.0), a.1.max(b.1))
        }
    }

    #[test]
    fn non_builtin_group_is_unsupported_as_descriptor() {
        let s = adjoin_bottom(Lattice2);
        assert!(matches!(s.descriptor(), Err(Error::Unsupported(_))));
        // still a semiring with incomparable elements
        assert!(!s.leq(Some((1, 0)), Some((0, 1))));
        assert_eq!(s.add(Some((1, 0)), Some((0, 1))), Some((1, 1)));
    }

    fn payload(d: SemiringDescriptor) -> impl Strategy<Value = SemiringValue> {
        // half-integers keep ⊙ = + exact; specials appear often
        let real = prop_oneof![
            4 => (-40i32..40).prop_map(|k| Real(k as f64 / 2.0)),
            1 => Just(Real(f64::NEG_INFINITY)),
            1 => Just(Real(f64::INFINITY)),
        ];
        match d.kind() {
            SemiringKind::Boolean => any::<bool>().prop_map(Bit).boxed(),
            SemiringKind::ZMax => prop_oneof![
                4 => (-1000i64..1000).prop_map(|n| Int(Some(n))),
                1 => Just(Int(None)),
            ]
            .boxed(),
            _ => real.prop_filter("admissible", move |&v| d.is_admissible(v)).boxed(),
        }
    }

    fn descriptor() -> impl Strategy<Value = SemiringDescriptor> {
        prop::sample::select(SemiringDescriptor::all().to_vec())
    }

    fn triple() -> impl Strategy<Value = (SemiringDescriptor, SemiringValue, SemiringValue, SemiringValue)> {
        descriptor().prop_flat_map(|d| (Just(d), payload(d), payload(d), payload(d)))
    }

    proptest! {
        #[test]
        fn semiring_laws((d, a, b, c) in triple()) {
            let (p, m) = (|x, y| d.plus(x, y), |x, y| d.times(x, y));
            prop_assert_eq!(p(a, a), a);
            prop_assert_eq!(p(a, b), p(b, a));
            prop_assert_eq!(p(p(a, b), c), p(a, p(b, c)));
            prop_assert_eq!(m(m(a, b), c), m(a, m(b, c)));
            prop_assert_eq!(m(a, p(b, c)), p(m(a, b), m(a, c)));
            prop_assert_eq!(m(p(a, b), c), p(m(a, c), m(b, c)));
            prop_assert_eq!(m(d.zero(), a), d.zero());
            prop_assert_eq!(m(a, d.zero()), d.zero());
            prop_assert_eq!(m(d.one(), a), a);
            prop_assert_eq!(m(a, d.one()), a);
            prop_assert_eq!(p(d.zero(), a), a);
        }

        #[test]
        fn order_laws((d, a, b, k) in triple()) {
            prop_assert!(d.leq(a, a));
            if d.leq(a, b) && d.leq(b, a) { prop_assert_eq!(a, b); }
            if d.leq(a, b) { prop_assert!(d.leq(d.times(k, a), d.times(k, b))); }
            prop_assert!(d.leq(d.zero(), a));
        }

        #[test]
        fn inverse_cancels((d, a, _b, _c) in triple()) {
            if let Ok(i) = d.inv(a) {
                prop_assert_eq!(d.times(a, i), d.one());
            }
        }

        #[test]
        fn residual_galois((d, a, b, k) in triple()) {
            prop_assume!(d.kind() != SemiringKind::ZMax || a != Int(None) || b == Int(None));
            // the inf need not be attained at the zero or the top
            let c = d.completion();
            prop_assume!(!c.is_zero(k) && !c.is_top(k));
            let r = d.residual(a, b).unwrap();
            prop_assert_eq!(c.leq(b, c.times(k, a)), c.leq(r, k));
        }

        #[test]
        fn dequantization_bound(u in -50.0f64..50.0, v in -50.0f64..50.0) {
            let mut prev = f64::INFINITY;
            for h in [1.0, 0.1, 0.01] {
                let gap = deformed_add(u, v, h).unwrap() - u.max(v);
                prop_assert!(gap >= -1e-12 && gap <= h * std::f64::consts::LN_2 + 1e-12);
                prop_assert!(gap <= prev + 1e-12);
                prev = gap;
            }
        }

        #[test]
        fn negation_exchanges_rmax_and_rmin(x in -40i32..40, y in -40i32..40) {
            let (a, b) = (Real(x as f64), Real(y as f64));
            let (max, min) = (SemiringDescriptor::RMAX, SemiringDescriptor::RMIN);
            prop_assert_eq!(negate(max.plus(a, b)), min.plus(negate(a), negate(b)));
            prop_assert_eq!(negate(max.times(a, b)), min.times(negate(a), negate(b)));
        }
    }
}
