use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::json;

use crate::error::{Error, Result};
use crate::matrix::{Mat2, Mat4};
use crate::scalar::{format_rational, rational_serde, Field, OrderedField, Rational, Ring, ToJson};

/// `(M, (lambda, mu, kappa))` with `M = [[a, b], [c, d]]`.
///
/// Over `Rational` the constructor enforces `ad - bc = 1` exactly. The `f64`
/// instantiation only appears in materialized witnesses and is not checked.
#[derive(Clone, PartialEq, Debug)]
pub struct JacobiGroupElem<T = Rational> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub lambda: T,
    pub mu: T,
    pub kappa: T,
}

impl JacobiGroupElem<Rational> {
    pub fn new(
        a: Rational,
        b: Rational,
        c: Rational,
        d: Rational,
        lambda: Rational,
        mu: Rational,
        kappa: Rational,
    ) -> Result<Self> {
        let g = JacobiGroupElem { a, b, c, d, lambda, mu, kappa };
        let det = g.det();
        if det != Rational::from_integer(1.into()) {
            return Err(Error::NotUnimodular(format_rational(&det)));
        }
        Ok(g)
    }

    pub fn to_f64(&self) -> JacobiGroupElem<f64> {
        self.map(OrderedField::to_f64)
    }
}

impl<T: Ring> JacobiGroupElem<T> {
    /// Builds an element without checking the determinant.
    pub fn from_parts(a: T, b: T, c: T, d: T, lambda: T, mu: T, kappa: T) -> Self {
        JacobiGroupElem { a, b, c, d, lambda, mu, kappa }
    }

    pub fn identity() -> Self {
        Self::sl2(T::one(), T::zero(), T::zero(), T::one())
    }

    /// Pure `SL(2)` element `(M, (0, 0, 0))`.
    pub fn sl2(a: T, b: T, c: T, d: T) -> Self {
        Self::from_parts(a, b, c, d, T::zero(), T::zero(), T::zero())
    }

    /// Pure Heisenberg element `(I, (lambda, mu, kappa))`.
    pub fn heisenberg(lambda: T, mu: T, kappa: T) -> Self {
        Self::from_parts(T::one(), T::zero(), T::zero(), T::one(), lambda, mu, kappa)
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn sl2_part(&self) -> Mat2<T> {
        Mat2::new([
            [self.a.clone(), self.b.clone()],
            [self.c.clone(), self.d.clone()],
        ])
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> JacobiGroupElem<U> {
        JacobiGroupElem {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
            d: f(&self.d),
            lambda: f(&self.lambda),
            mu: f(&self.mu),
            kappa: f(&self.kappa),
        }
    }

    /// Group law
    /// `(M,(l,m,k)) . (M',(l',m',k')) = (MM', (l~+l', m~+m', k+k'+l~ m' - l' m~))`
    /// with `(l~, m~) = (l, m) M'`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let lt = self.lambda.clone() * rhs.a.clone() + self.mu.clone() * rhs.c.clone();
        let mt = self.lambda.clone() * rhs.b.clone() + self.mu.clone() * rhs.d.clone();
        let kappa = self.kappa.clone() + rhs.kappa.clone() + lt.clone() * rhs.mu.clone()
            - rhs.lambda.clone() * mt.clone();
        JacobiGroupElem {
            a: self.a.clone() * rhs.a.clone() + self.b.clone() * rhs.c.clone(),
            b: self.a.clone() * rhs.b.clone() + self.b.clone() * rhs.d.clone(),
            c: self.c.clone() * rhs.a.clone() + self.d.clone() * rhs.c.clone(),
            d: self.c.clone() * rhs.b.clone() + self.d.clone() * rhs.d.clone(),
            lambda: lt + rhs.lambda.clone(),
            mu: mt + rhs.mu.clone(),
            kappa,
        }
    }

    /// The 4x4 symplectic matrix
    ///
    /// ```text
    /// [ a  0  b  a mu - b lambda ]
    /// [ l  1  m  kappa           ]
    /// [ c  0  d  c mu - d lambda ]
    /// [ 0  0  0  1               ]
    /// ```
    pub fn embed(&self) -> Mat4<T> {
        let (o, i) = (T::zero(), T::one());
        let JacobiGroupElem { a, b, c, d, lambda, mu, kappa } = self.clone();
        let top = a.clone() * mu.clone() - b.clone() * lambda.clone();
        let third = c.clone() * mu.clone() - d.clone() * lambda.clone();
        Mat4::new([
            [a, o.clone(), b, top],
            [lambda, i.clone(), mu, kappa],
            [c, o.clone(), d, third],
            [o.clone(), o.clone(), o, i],
        ])
    }

    pub fn to_json(&self) -> serde_json::Value
    where
        T: ToJson,
    {
        json!({
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "c": self.c.to_json(),
            "d": self.d.to_json(),
            "lambda": self.lambda.to_json(),
            "mu": self.mu.to_json(),
            "kappa": self.kappa.to_json(),
        })
    }
}

impl<T: Field> JacobiGroupElem<T> {
    /// `(M^-1, -(l, m) M^-1, -kappa)`.
    pub fn inverse(&self) -> Result<Self> {
        let det_inv = self.det().checked_inv().ok_or(Error::Singular)?;
        let a = self.d.clone() * det_inv.clone();
        let b = -self.b.clone() * det_inv.clone();
        let c = -self.c.clone() * det_inv.clone();
        let d = self.a.clone() * det_inv;
        let lambda = -(self.lambda.clone() * a.clone() + self.mu.clone() * c.clone());
        let mu = -(self.lambda.clone() * b.clone() + self.mu.clone() * d.clone());
        Ok(JacobiGroupElem { a, b, c, d, lambda, mu, kappa: -self.kappa.clone() })
    }
}

impl JacobiGroupElem<Rational> {
    /// Infallible inverse; the determinant is 1 by construction.
    pub fn inv(&self) -> Self {
        self.inverse().expect("unimodular element is invertible")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupRepr {
    #[serde(with = "rational_serde")]
    a: Rational,
    #[serde(with = "rational_serde")]
    b: Rational,
    #[serde(with = "rational_serde")]
    c: Rational,
    #[serde(with = "rational_serde")]
    d: Rational,
    #[serde(with = "rational_serde")]
    lambda: Rational,
    #[serde(with = "rational_serde")]
    mu: Rational,
    #[serde(with = "rational_serde")]
    kappa: Rational,
}

impl Serialize for JacobiGroupElem<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let g = self.clone();
        GroupRepr {
            a: g.a,
            b: g.b,
            c: g.c,
            d: g.d,
            lambda: g.lambda,
            mu: g.mu,
            kappa: g.kappa,
        }
        .serialize(s)
    }
}

impl JacobiGroupElem<Rational> {
    /// Like the `Deserialize` impl, but keeps the typed error.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let r = GroupRepr::deserialize(v).map_err(|e| Error::Parse(e.to_string()))?;
        JacobiGroupElem::new(r.a, r.b, r.c, r.d, r.lambda, r.mu, r.kappa)
    }
}

impl<'de> Deserialize<'de> for JacobiGroupElem<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GroupRepr::deserialize(d)?;
        JacobiGroupElem::new(r.a, r.b, r.c, r.d, r.lambda, r.mu, r.kappa).map_err(de::Error::custom)
    }
}
