//! Exact tropical scalars and the two semiring conventions.
//!
//! Finite values are arbitrary-precision rationals, so every tie test
//! ("the maximum is attained twice") is decided exactly.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// An element of `R ∪ {−∞, +∞}`.
///
/// Which infinity is the semiring zero depends on the [`Convention`];
/// the other one never appears in well-formed data. Under max-plus every
/// finite value is a unit with inverse `−x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TropScalar {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl TropScalar {
    pub const NEG_INF: TropScalar = TropScalar::NegInf;

    pub fn int(n: i64) -> Self {
        TropScalar::Finite(rat(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        TropScalar::Finite(ratio(n, d))
    }

    /// The multiplicative identity, shared by both conventions.
    pub fn one() -> Self {
        TropScalar::Finite(Rational::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, TropScalar::Finite(_))
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, TropScalar::NegInf)
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            TropScalar::Finite(q) => Some(q),
            _ => None,
        }
    }

    /// Classical negation, extended by `−(−∞) = +∞`. This is the order
    /// duality between max-plus and min-plus.
    pub fn negated(&self) -> Self {
        match self {
            TropScalar::NegInf => TropScalar::PosInf,
            TropScalar::PosInf => TropScalar::NegInf,
            TropScalar::Finite(q) => TropScalar::Finite(-q),
        }
    }

    /// Max-plus `⊕`.
    pub fn oplus(&self, other: &Self) -> Self {
        Convention::MaxPlus.add(self, other)
    }

    /// Max-plus `⊙`.
    pub fn otimes(&self, other: &Self) -> Self {
        Convention::MaxPlus.mul(self, other)
    }

    /// Max-plus `⊙` by a finite rational.
    pub fn shifted(&self, by: &Rational) -> Self {
        match self {
            TropScalar::Finite(q) => TropScalar::Finite(q + by),
            other => other.clone(),
        }
    }
}

impl From<Rational> for TropScalar {
    fn from(q: Rational) -> Self {
        TropScalar::Finite(q)
    }
}

impl From<i64> for TropScalar {
    fn from(n: i64) -> Self {
        TropScalar::int(n)
    }
}

impl PartialOrd for TropScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TropScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        use TropScalar::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

/// Which tropical semiring the data lives in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `(R ∪ {−∞}, max, +)`.
    #[default]
    #[serde(rename = "max")]
    MaxPlus,
    /// `(R ∪ {+∞}, min, +)`.
    #[serde(rename = "min")]
    MinPlus,
}

impl Convention {
    pub fn zero(self) -> TropScalar {
        match self {
            Convention::MaxPlus => TropScalar::NegInf,
            Convention::MinPlus => TropScalar::PosInf,
        }
    }

    pub fn one(self) -> TropScalar {
        TropScalar::one()
    }

    pub fn is_zero(self, x: &TropScalar) -> bool {
        *x == self.zero()
    }

    /// True when `x` is finite or this convention's zero.
    pub fn contains(self, x: &TropScalar) -> bool {
        x.is_finite() || self.is_zero(x)
    }

    pub fn check(self, x: &TropScalar) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::ConventionMismatch(x.to_string()))
        }
    }

    pub fn add(self, x: &TropScalar, y: &TropScalar) -> TropScalar {
        let pick = match self {
            Convention::MaxPlus => x >= y,
            Convention::MinPlus => x <= y,
        };
        if pick {
            x.clone()
        } else {
            y.clone()
        }
    }

    pub fn mul(self, x: &TropScalar, y: &TropScalar) -> TropScalar {
        match (x, y) {
            (TropScalar::Finite(a), TropScalar::Finite(b)) => TropScalar::Finite(a + b),
            _ => self.zero(),
        }
    }

    /// `x ⊘ y`, the classical difference. Fails when `y` is the zero.
    pub fn div(self, x: &TropScalar, y: &TropScalar) -> Result<TropScalar> {
        match (x, y) {
            (_, TropScalar::NegInf | TropScalar::PosInf) => Err(Error::DivisionByZero),
            (TropScalar::Finite(a), TropScalar::Finite(b)) => Ok(TropScalar::Finite(a - b)),
            (other, _) => Ok(other.clone()),
        }
    }

    /// Maps a value of this convention onto the max-plus side of the duality.
    pub fn to_max_plus(self, x: &TropScalar) -> TropScalar {
        match self {
            Convention::MaxPlus => x.clone(),
            Convention::MinPlus => x.negated(),
        }
    }

    /// Inverse of [`Convention::to_max_plus`].
    pub fn from_max_plus(self, x: &TropScalar) -> TropScalar {
        self.to_max_plus(x)
    }

    /// Certifies that `u ⊕ v = 1` forces a unit among `u`, `v`.
    pub fn check_semilinear_condition(self, u: &TropScalar, v: &TropScalar) -> Result<UnitWitness> {
        self.check(u)?;
        self.check(v)?;
        if self.add(u, v) != self.one() {
            return Err(Error::PreconditionViolated(format!("{u} ⊕ {v} is not the tropical one")));
        }
        let inverse = |x: &TropScalar| x.as_finite().map(|q| -q);
        let witness = UnitWitness { u_inverse: inverse(u), v_inverse: inverse(v) };
        // u ⊕ v = 0 selects a finite summand, so one of the two is always present.
        debug_assert!(witness.u_inverse.is_some() || witness.v_inverse.is_some());
        Ok(witness)
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::MaxPlus => "max",
            Convention::MinPlus => "min",
        }
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" | "max-plus" | "maxplus" => Ok(Convention::MaxPlus),
            "min" | "min-plus" | "minplus" => Ok(Convention::MinPlus),
            other => Err(Error::Parse(format!("unknown convention `{other}`"))),
        }
    }
}

/// Which of `u`, `v` is a unit, with inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitWitness {
    pub u_inverse: Option<Rational>,
    pub v_inverse: Option<Rational>,
}

impl UnitWitness {
    pub fn u_is_unit(&self) -> bool {
        self.u_inverse.is_some()
    }

    pub fn v_is_unit(&self) -> bool {
        self.v_inverse.is_some()
    }
}

/// Max-plus `x ⊕ y`.
pub fn trop_add(x: &TropScalar, y: &TropScalar) -> TropScalar {
    Convention::MaxPlus.add(x, y)
}

/// Max-plus `x ⊙ y`.
pub fn trop_mul(x: &TropScalar, y: &TropScalar) -> TropScalar {
    Convention::MaxPlus.mul(x, y)
}

/// Max-plus `x ⊘ y`.
pub fn trop_div(x: &TropScalar, y: &TropScalar) -> Result<TropScalar> {
    Convention::MaxPlus.div(x, y)
}

pub fn check_semilinear_condition(u: &TropScalar, v: &TropScalar) -> Result<UnitWitness> {
    Convention::MaxPlus.check_semilinear_condition(u, v)
}

/// Formats a rational as `n` or `n/d` in lowest terms.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"n"`, `"n/d"` or a plain decimal such as `"-1.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.starts_with('-');
        let digits = int_part.trim_start_matches(['-', '+']);
        if frac_part.is_empty()
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
            || !digits.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let whole: BigInt = format!("{}{}", if digits.is_empty() { "0" } else { digits }, frac_part)
            .parse()
            .map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac_part.len());
        let q = Rational::new(whole, scale);
        return Ok(if negative { -q } else { q });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Rounds `q` to `places` decimal digits, ties to even.
pub fn format_decimal(q: &Rational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = q * Rational::from_integer(scale.clone());
    let floor = scaled.floor().to_integer();
    let frac = &scaled - Rational::from_integer(floor.clone());
    let half = ratio(1, 2);
    let rounded = match frac.cmp(&half) {
        Ordering::Less => floor,
        Ordering::Greater => floor + 1,
        Ordering::Equal => {
            if floor.is_even() {
                floor
            } else {
                floor + 1
            }
        }
    };
    let negative = rounded.is_negative();
    let (int_part, frac_part) = rounded.abs().div_rem(&scale);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if places > 0 {
        out.push('.');
        out.push_str(&format!("{:0>width$}", frac_part.to_string(), width = places));
    }
    out
}

impl fmt::Display for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropScalar::NegInf => f.write_str("-inf"),
            TropScalar::PosInf => f.write_str("inf"),
            TropScalar::Finite(q) => f.write_str(&format_rational(q)),
        }
    }
}

impl FromStr for TropScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-inf" => Ok(TropScalar::NegInf),
            "inf" | "+inf" => Ok(TropScalar::PosInf),
            other => parse_rational(other).map(TropScalar::Finite),
        }
    }
}

impl Serialize for TropScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TropScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ScalarVisitor;

        impl Visitor<'_> for ScalarVisitor {
            type Value = TropScalar;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string such as \"3/4\", \"-inf\", \"inf\", or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<TropScalar, E> {
                v.parse().map_err(|e: Error| E::custom(e.to_string()))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<TropScalar, E> {
                Ok(TropScalar::int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<TropScalar, E> {
                Ok(TropScalar::Finite(Rational::from_integer(BigInt::from(v))))
            }
        }

        deserializer.deserialize_any(ScalarVisitor)
    }
}

/// Serde adapter for plain rationals using the same string encoding.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Rational, D::Error> {
        match TropScalar::deserialize(deserializer)? {
            TropScalar::Finite(q) => Ok(q),
            other => Err(de::Error::custom(format!("expected a finite rational, found {other}"))),
        }
    }
}
