//! Exact scalars.
//!
//! Real scalars are arbitrary-precision fractions ([`Rational`]); complex
//! scalars are pairs of them ([`GaussRational`]). Both are always stored in
//! canonical form (reduced, positive denominator), so structural equality is
//! value equality.
//!
//! The small trait stack [`Ring`] / [`Field`] / [`OrderedField`] lets the
//! matrix and orbit code run unchanged over `Rational`, `GaussRational`, and
//! (for witness materialization only) `f64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, canonical by construction.
pub type Rational = BigRational;

/// Commutative ring with unit. Blanket-implemented.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self {
        let mut acc = Self::zero();
        let unit = if n < 0 { -Self::one() } else { Self::one() };
        for _ in 0..n.unsigned_abs() {
            acc = acc + unit.clone();
        }
        acc
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

pub trait Field: Ring {
    fn checked_inv(&self) -> Option<Self>;

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        rhs.checked_inv()
            .map(|inv| self.clone() * inv)
            .ok_or(Error::DivisionByZero)
    }
}

/// A field with a sign and a (possibly partial) square root.
///
/// `sqrt_opt` returns `None` for negative inputs and, on `Rational`, for
/// inputs that are not squares of rationals.
pub trait OrderedField: Field + PartialOrd {
    fn sign(&self) -> i8;
    fn sqrt_opt(&self) -> Option<Self>;
    fn to_f64(&self) -> f64;
}

impl Field for Rational {
    fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl OrderedField for Rational {
    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    fn sqrt_opt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(Rational::new(n, d))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Field for f64 {
    fn checked_inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
}

impl OrderedField for f64 {
    fn sign(&self) -> i8 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }

    fn sqrt_opt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d`; panics on `d == 0`, so only use with literal denominators.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    Rational::from_str(t).map_err(|e| Error::Parse(format!("invalid rational {t:?}: {e}")))
}

/// `"n/d"`, with the denominator omitted when it is 1.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn sign_of(q: &Rational) -> i8 {
    OrderedField::sign(q)
}

/// Serde adapter storing a [`Rational`] as its `"n/d"` string.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(de::Error::custom)
    }
}

/// JSON rendering used for matrices and reports.
pub trait ToJson {
    fn to_json(&self) -> serde_json::Value;
}

impl ToJson for Rational {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }
}

impl ToJson for f64 {
    fn to_json(&self) -> serde_json::Value {
        // renders -0.0 as 0.0
        serde_json::json!(self + 0.0)
    }
}

impl ToJson for GaussRational {
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "re": format_rational(&self.re), "im": format_rational(&self.im) })
    }
}

/// Complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussRational { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        GaussRational::new(Rational::zero(), Rational::one())
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRational::new(int(re), int(im))
    }

    pub fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2`, exact.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        GaussRational::new(&self.re * k, &self.im * k)
    }

    pub fn pow(&self, exp: i32) -> Result<Self> {
        let base = if exp < 0 {
            self.checked_inv().ok_or(Error::DivisionByZero)?
        } else {
            self.clone()
        };
        let mut acc = GaussRational::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc * base.clone();
        }
        Ok(acc)
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, -self.im.clone())
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

impl Add for GaussRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussRational::new(re, im)
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussRational::new(-self.re, -self.im)
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        GaussRational::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        GaussRational::real(Rational::one())
    }
}

impl Field for GaussRational {
    fn checked_inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(GaussRational::new(&self.re / &n, -(&self.im / &n)))
    }
}

impl From<Rational> for GaussRational {
    fn from(q: Rational) -> Self {
        GaussRational::real(q)
    }
}

impl Serialize for GaussRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GaussRational", 2)?;
        st.serialize_field("re", &format_rational(&self.re))?;
        st.serialize_field("im", &format_rational(&self.im))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for GaussRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        // A bare string is accepted as a real value.
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Real(String),
            Pair {
                re: String,
                #[serde(default)]
                im: Option<String>,
            },
        }
        let (re, im) = match Repr::deserialize(d)? {
            Repr::Real(re) => (re, None),
            Repr::Pair { re, im } => (re, im),
        };
        let re = parse_rational(&re).map_err(de::Error::custom)?;
        let im = match im {
            Some(im) => parse_rational(&im).map_err(de::Error::custom)?,
            None => Rational::zero(),
        };
        Ok(GaussRational::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (-50i64..=50, 1i64..=20).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_gauss() -> impl Strategy<Value = GaussRational> {
        (arb_rat(), arb_rat()).prop_map(|(re, im)| GaussRational::new(re, im))
    }

    #[test]
    fn fraction_sum() {
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
    }

    #[test]
    fn conjugate_product_is_real() {
        let z = GaussRational::from_ints(1, 2);
        assert_eq!(z.clone() * z.conj(), GaussRational::from_ints(5, 0));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(int(1).checked_div(&int(0)), Err(Error::DivisionByZero));
        assert_eq!(
            GaussRational::one().checked_div(&GaussRational::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn canonical_form() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert_eq!(parse_rational(" 10/4 ").unwrap(), rat(5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn rational_sqrt() {
        assert_eq!(rat(9, 4).sqrt_opt(), Some(rat(3, 2)));
        assert_eq!(int(2).sqrt_opt(), None);
        assert_eq!(int(-4).sqrt_opt(), None);
        assert_eq!(int(0).sqrt_opt(), Some(int(0)));
    }

    #[test]
    fn gauss_json() {
        let z = GaussRational::new(rat(1, 2), int(-3));
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"re":"1/2","im":"-3"}"#);
        let back: GaussRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
        let real: GaussRational = serde_json::from_str(r#""4/6""#).unwrap();
        assert_eq!(real, GaussRational::real(rat(2, 3)));
    }

    #[test]
    fn gauss_pow() {
        let i = GaussRational::i();
        assert_eq!(i.pow(2).unwrap(), -GaussRational::one());
        assert_eq!(i.pow(-1).unwrap(), -GaussRational::i());
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            if !b.is_zero() {
                prop_assert_eq!(a.checked_div(&b).unwrap() * b, a);
            }
        }

        #[test]
        fn gauss_field_axioms(a in arb_gauss(), b in arb_gauss(), c in arb_gauss()) {
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            if !b.is_zero() {
                prop_assert_eq!(a.checked_div(&b).unwrap() * b, a);
            }
        }

        #[test]
        fn rational_string_round_trip(a in arb_rat()) {
            prop_assert_eq!(parse_rational(&format_rational(&a)).unwrap(), a);
        }
    }
}
