//! Exact bookkeeping for ρ, α, w, β and w_cs.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Renders a rational as `p/q`, or `p` when integral.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.125`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: `{s}`"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in `{s}`")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        let joined = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac);
        let mut num: BigInt = joined.parse().map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(num, den));
    }
    Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?))
}

/// An exact rational together with its class in ℚ/2ℤ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mod2Rational {
    value: BigRational,
    residue: BigRational,
}

impl Mod2Rational {
    pub fn new(value: BigRational) -> Self {
        let two = BigRational::from_integer(BigInt::from(2));
        let residue = &value - &two * (&value / &two).floor();
        Self { value, residue }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(Self::new(ratio(p, q)))
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    /// Representative in [0, 2).
    pub fn residue(&self) -> &BigRational {
        &self.residue
    }

    pub fn congruent(&self, other: &Self) -> bool {
        self.residue == other.residue
    }

    /// The residue as a bit when it is 0 or 1.
    pub fn as_bit(&self) -> Option<u8> {
        if self.residue.is_zero() {
            Some(0)
        } else if self.residue == BigRational::from_integer(BigInt::from(1)) {
            Some(1)
        } else {
            None
        }
    }
}

impl fmt::Display for Mod2Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod 2)", format_rational(&self.residue))
    }
}

impl FromStr for Mod2Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(Self::new)
    }
}

impl Serialize for Mod2Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Mod2Rational", 2)?;
        st.serialize_field("value", &format_rational(&self.value))?;
        st.serialize_field("residue", &format_rational(&self.residue))?;
        st.end()
    }
}

/// Coefficient groups KO_n for n mod 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KOGroup {
    Integers,
    Z2,
    Trivial,
}

pub fn ko_group(n: u32) -> KOGroup {
    match n % 8 {
        0 | 4 => KOGroup::Integers,
        1 | 2 => KOGroup::Z2,
        _ => KOGroup::Trivial,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum KOValue {
    Integer(i64),
    Bit(u8),
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KOElement {
    /// Dimension, stored unreduced; the group depends on it mod 8.
    pub n: u32,
    pub value: KOValue,
}

impl KOElement {
    pub fn new(n: u32, value: KOValue) -> Result<Self> {
        let ok = matches!(
            (ko_group(n), &value),
            (KOGroup::Integers, KOValue::Integer(_))
                | (KOGroup::Z2, KOValue::Bit(0 | 1))
                | (KOGroup::Trivial, KOValue::Trivial)
        );
        if !ok {
            return Err(Error::InvalidInput(format!(
                "{value:?} is not an element of KO_{n} ({:?})",
                ko_group(n)
            )));
        }
        Ok(Self { n, value })
    }

    pub fn zero(n: u32) -> Self {
        let value = match ko_group(n) {
            KOGroup::Integers => KOValue::Integer(0),
            KOGroup::Z2 => KOValue::Bit(0),
            KOGroup::Trivial => KOValue::Trivial,
        };
        Self { n, value }
    }

    pub fn group(&self) -> KOGroup {
        ko_group(self.n)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.value, KOValue::Integer(0) | KOValue::Bit(0) | KOValue::Trivial)
    }
}

/// Analytic input to α_n; which variant is meaningful depends on n mod 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaData {
    IndPlus(i64),
    DimKer(u64),
    DimKerPlus(u64),
    Sign(i64),
    None,
}

pub fn alpha_n(n: u32, data: AlphaData) -> Result<KOElement> {
    let mismatch = || {
        Error::InvalidInput(format!("{data:?} does not determine α in dimension {n} (n mod 8 = {})", n % 8))
    };
    let value = match (n % 8, data) {
        (0, AlphaData::IndPlus(k)) => KOValue::Integer(k),
        (4, AlphaData::IndPlus(k)) => {
            if k % 2 != 0 {
                return Err(Error::Divisibility(format!(
                    "index {k} must be even in dimension 4 mod 8"
                )));
            }
            KOValue::Integer(k / 2)
        }
        (4, AlphaData::Sign(s)) => {
            if s % 16 != 0 {
                return Err(Error::Divisibility(format!("signature {s} is not divisible by 16")));
            }
            KOValue::Integer(-s / 16)
        }
        (1, AlphaData::DimKer(k)) => KOValue::Bit((k % 2) as u8),
        (2, AlphaData::DimKerPlus(k)) => KOValue::Bit((k % 2) as u8),
        (3 | 5 | 6 | 7, _) => KOValue::Trivial,
        _ => return Err(mismatch()),
    };
    KOElement::new(n, value)
}

/// α of a manifold fibred over S¹: (α_n(X), α_{n−1}(fiber)).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaS1 {
    pub top: KOElement,
    pub fiber: KOElement,
}

impl AlphaS1 {
    pub fn is_zero(&self) -> bool {
        self.top.is_zero() && self.fiber.is_zero()
    }
}

pub fn alpha_s1(n: u32, top: KOElement, fiber: KOElement) -> Result<AlphaS1> {
    if n == 0 || top.n != n || fiber.n + 1 != n {
        return Err(Error::Dimension(format!(
            "expected dimensions ({n}, {}), got ({}, {})",
            n.saturating_sub(1),
            top.n,
            fiber.n
        )));
    }
    Ok(AlphaS1 { top, fiber })
}

/// ρ = sig_W / 8 mod 2.
pub fn rohlin(sig_w: i64, strict: bool) -> Result<Mod2Rational> {
    if strict && sig_w % 8 != 0 {
        return Err(Error::Divisibility(format!(
            "signature {sig_w} is not divisible by 8; the bounding manifold cannot be spin"
        )));
    }
    Ok(Mod2Rational::new(ratio(sig_w, 8)))
}

/// w = ind + sig_W / 8.
pub fn w_invariant(ind_plus: i64, sig_w: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(ind_plus)) + ratio(sig_w, 8)
}

pub fn w_mod2_equals_rohlin(ind_plus: i64, sig_w: i64) -> Result<bool> {
    if ind_plus % 2 != 0 {
        return Err(Error::Contract(format!(
            "index {ind_plus} is odd; a quaternionic-linear operator has even complex index"
        )));
    }
    let w = Mod2Rational::new(w_invariant(ind_plus, sig_w));
    Ok(w.congruent(&rohlin(sig_w, false)?))
}

/// Index jump between two choices of W: (sig_W − sig_W') / 8.
pub fn w_welldefined_delta(sig_w: i64, sig_w_prime: i64) -> BigRational {
    ratio(sig_w - sig_w_prime, 8)
}

/// Signature of −W ∪ W'.
pub fn novikov_glue_signature(sig_w: i64, sig_w_prime: i64) -> i64 {
    sig_w_prime - sig_w
}

/// β = ρ − sig_V / 16 mod 2. With `strict`, sig_V must be divisible by 16.
pub fn beta(rho: &Mod2Rational, sig_v: i64, strict: bool) -> Result<Mod2Rational> {
    if strict && sig_v % 16 != 0 {
        return Err(Error::Divisibility(format!("signature {sig_v} is not divisible by 16")));
    }
    Ok(Mod2Rational::new(rho.value() - ratio(sig_v, 16)))
}

/// Moves (ρ, V) across a cobordism W and compares β before and after.
pub fn beta_welldefined_check(rho0: &Mod2Rational, sig_v0: i64, sig_w: i64) -> bool {
    let rho1 = Mod2Rational::new(rho0.value() + ratio(sig_w, 8));
    let sig_v1 = sig_v0 + 2 * sig_w;
    let b0 = Mod2Rational::new(rho0.value() - ratio(sig_v0, 16));
    let b1 = Mod2Rational::new(rho1.value() - ratio(sig_v1, 16));
    b0 == b1
}

/// w_cs = ind + sig_W / 8 − sig_V / 16.
pub fn w_cs(ind_plus: i64, sig_w: i64, sig_v: i64) -> BigRational {
    w_invariant(ind_plus, sig_w) - ratio(sig_v, 16)
}

/// Checks w_cs ≡ β(ρ(W), V) mod 2; the index must be even.
pub fn w_cs_matches_beta(ind_plus: i64, sig_w: i64, sig_v: i64) -> Result<bool> {
    if ind_plus % 2 != 0 {
        return Err(Error::Contract(format!("index {ind_plus} is odd")));
    }
    let lhs = Mod2Rational::new(w_cs(ind_plus, sig_w, sig_v));
    let rhs = beta(&rohlin(sig_w, false)?, sig_v, false)?;
    Ok(lhs.congruent(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        ratio(p, q)
    }

    #[test]
    fn residues() {
        assert_eq!(Mod2Rational::from_integer(-1).residue(), &r(1, 1));
        assert_eq!(Mod2Rational::from_ratio(-1, 2).unwrap().residue(), &r(3, 2));
        assert_eq!(Mod2Rational::from_integer(4).residue(), &r(0, 1));
        assert_eq!("7/3".parse::<Mod2Rational>().unwrap().residue(), &r(1, 3));
        assert_eq!(parse_rational("-0.125").unwrap(), r(-1, 8));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rohlin_values() {
        assert_eq!(rohlin(8, true).unwrap().as_bit(), Some(1));
        assert_eq!(rohlin(0, true).unwrap().as_bit(), Some(0));
        assert_eq!(rohlin(32, true).unwrap().as_bit(), Some(0));
        assert!(rohlin(4, true).is_err());
        assert_eq!(rohlin(4, false).unwrap().residue(), &r(1, 2));
    }

    #[test]
    fn alpha_table() {
        assert_eq!(alpha_n(4, AlphaData::Sign(-16)).unwrap().value, KOValue::Integer(1));
        assert_eq!(alpha_n(3, AlphaData::None).unwrap().value, KOValue::Trivial);
        assert_eq!(alpha_n(9, AlphaData::DimKer(3)).unwrap().value, KOValue::Bit(1));
        assert_eq!(alpha_n(10, AlphaData::DimKerPlus(4)).unwrap().value, KOValue::Bit(0));
        assert_eq!(alpha_n(8, AlphaData::IndPlus(-3)).unwrap().value, KOValue::Integer(-3));
        assert_eq!(alpha_n(12, AlphaData::IndPlus(6)).unwrap().value, KOValue::Integer(3));
        assert!(alpha_n(4, AlphaData::Sign(8)).is_err());
        assert!(alpha_n(4, AlphaData::IndPlus(3)).is_err());
        assert!(alpha_n(1, AlphaData::Sign(16)).is_err());
        assert!(alpha_n(0, AlphaData::None).is_err());
    }

    #[test]
    fn alpha_over_circle() {
        let a = alpha_s1(4, alpha_n(4, AlphaData::Sign(0)).unwrap(), alpha_n(3, AlphaData::None).unwrap())
            .unwrap();
        assert!(a.is_zero());
        let b = alpha_s1(5, alpha_n(5, AlphaData::None).unwrap(), alpha_n(4, AlphaData::Sign(-32)).unwrap())
            .unwrap();
        assert_eq!(b.top.value, KOValue::Trivial);
        assert_eq!(b.fiber.value, KOValue::Integer(2));
        assert!(!b.is_zero());
        assert!(alpha_s1(5, KOElement::zero(5), KOElement::zero(3)).is_err());
    }

    #[test]
    fn w_and_beta() {
        assert_eq!(w_invariant(0, 8), r(1, 1));
        assert_eq!(w_invariant(-2, -16), r(-4, 1));
        assert!(w_mod2_equals_rohlin(0, 8).unwrap());
        assert!(w_mod2_equals_rohlin(4, -8).unwrap());
        assert!(w_mod2_equals_rohlin(1, 8).is_err());
        assert_eq!(w_welldefined_delta(8, 24), r(-2, 1));
        assert_eq!(w_invariant(5, 8), w_invariant(5 - 2, 24));
        assert_eq!(w_welldefined_delta(0, -16), r(2, 1));
        assert_eq!(novikov_glue_signature(8, 0), -8);
        assert_eq!(r(-novikov_glue_signature(8, 24), 8), w_welldefined_delta(8, 24));

        let one = Mod2Rational::from_integer(1);
        let zero = Mod2Rational::from_integer(0);
        assert_eq!(beta(&one, -16, true).unwrap().as_bit(), Some(0));
        assert_eq!(beta(&zero, 0, true).unwrap().as_bit(), Some(0));
        assert_eq!(beta(&zero, -16, true).unwrap().as_bit(), Some(1));
        assert!(beta(&zero, 8, true).is_err());

        assert!(beta_welldefined_check(&one, -16, 8));
        assert!(beta_welldefined_check(&zero, 0, -24));
        assert!(beta_welldefined_check(&Mod2Rational::from_ratio(1, 2).unwrap(), 4, 16));

        assert_eq!(w_cs(0, 0, 0), r(0, 1));
        assert_eq!(w_cs(0, 8, -16), r(2, 1));
        assert_eq!(w_cs(-2, 0, -16), r(-1, 1));
        assert!(w_cs_matches_beta(0, 8, -16).unwrap());
        assert!(w_cs_matches_beta(-2, 0, -16).unwrap());
    }
}
