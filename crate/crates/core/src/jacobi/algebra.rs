use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::de::Deserializer;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::json;

use super::group::JacobiGroupElem;
use crate::error::{Error, Result};
use crate::matrix::{rank, Mat4};
use crate::scalar::{rational_serde, Field, OrderedField, Rational, Ring, ToJson};

/// `G(x, y, z, p, q, r)`: the sl2 block is `[[x, y+z], [y-z, -x]]` (cone
/// coordinates) and `(p, q, r)` is the Heisenberg part.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct JacobiAlgElem<T = Rational> {
    pub x: T,
    pub y: T,
    pub z: T,
    pub p: T,
    pub q: T,
    pub r: T,
}

fn two<T: Ring>() -> T {
    T::one() + T::one()
}

impl<T: Field> JacobiAlgElem<T> {
    pub fn new(x: T, y: T, z: T, p: T, q: T, r: T) -> Self {
        JacobiAlgElem { x, y, z, p, q, r }
    }

    pub fn zero() -> Self {
        let o = T::zero();
        Self::new(o.clone(), o.clone(), o.clone(), o.clone(), o.clone(), o)
    }

    pub fn coords(&self) -> [T; 6] {
        [
            self.x.clone(),
            self.y.clone(),
            self.z.clone(),
            self.p.clone(),
            self.q.clone(),
            self.r.clone(),
        ]
    }

    pub fn from_coords(c: [T; 6]) -> Self {
        let [x, y, z, p, q, r] = c;
        Self::new(x, y, z, p, q, r)
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> JacobiAlgElem<U> {
        JacobiAlgElem::new(f(&self.x), f(&self.y), f(&self.z), f(&self.p), f(&self.q), f(&self.r))
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|e| k.clone() * e.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(Zero::is_zero)
    }

    /// `(1,2)` entry of the sl2 block.
    pub fn upper(&self) -> T {
        self.y.clone() + self.z.clone()
    }

    /// `(2,1)` entry of the sl2 block.
    pub fn lower(&self) -> T {
        self.y.clone() - self.z.clone()
    }

    pub fn sl2_is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// ```text
    /// [ x    0  y+z  q ]
    /// [ p    0  q    r ]
    /// [ y-z  0  -x  -p ]
    /// [ 0    0  0    0 ]
    /// ```
    pub fn embed(&self) -> Mat4<T> {
        let o = T::zero();
        Mat4::new([
            [self.x.clone(), o.clone(), self.upper(), self.q.clone()],
            [self.p.clone(), o.clone(), self.q.clone(), self.r.clone()],
            [self.lower(), o.clone(), -self.x.clone(), -self.p.clone()],
            [o.clone(), o.clone(), o.clone(), o],
        ])
    }

    /// `x^2 + y^2 - z^2`
    pub fn c1(&self) -> T {
        self.x.square() + self.y.square() - self.z.square()
    }

    /// `2pqx - p^2 (y+z) + q^2 (y-z)`
    pub fn f(&self) -> T {
        two::<T>() * self.p.clone() * self.q.clone() * self.x.clone()
            - self.p.square() * self.upper()
            + self.q.square() * self.lower()
    }

    /// `f - c1 r`, constant along adjoint orbits.
    pub fn i_invariant(&self) -> T {
        self.f() - self.c1() * self.r.clone()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.c1().is_zero()
    }

    /// Bracket as the commutator of the 4x4 embeddings.
    pub fn bracket(&self, other: &Self) -> Self {
        Self::from_matrix(&self.embed().commutator(&other.embed()))
            .expect("the embedded algebra is closed under commutators")
    }

    /// The coordinate bracket in entry coordinates `(x, Y, Z) = (x, y+z, y-z)`:
    ///
    /// ```text
    /// p~ = p1 x2 + q1 Z2 - p2 x1 - q2 Z1
    /// q~ = q2 x1 + p1 Y2 - q1 x2 - p2 Y1
    /// r~ = 2 (p1 q2 - p2 q1)
    /// ```
    ///
    /// with the sl2 part given by the 2x2 commutator. Kept as an independent
    /// route to [`JacobiAlgElem::bracket`].
    pub fn bracket_closed_form(&self, other: &Self) -> Self {
        let (x1, y1, z1) = (self.x.clone(), self.upper(), self.lower());
        let (x2, y2, z2) = (other.x.clone(), other.upper(), other.lower());
        let (p1, q1, p2, q2) = (self.p.clone(), self.q.clone(), other.p.clone(), other.q.clone());

        // [[x1, y1], [z1, -x1]] * [[x2, y2], [z2, -x2]] - (swap)
        let tx = y1.clone() * z2.clone() - z1.clone() * y2.clone();
        let ty = two::<T>() * (x1.clone() * y2.clone() - y1.clone() * x2.clone());
        let tz = two::<T>() * (z1.clone() * x2.clone() - x1.clone() * z2.clone());

        let p = p1.clone() * x2.clone() + q1.clone() * z2 - p2.clone() * x1.clone() - q2.clone() * z1;
        let q = q2.clone() * x1 + p1.clone() * y2 - q1.clone() * x2 - p2.clone() * y1;
        let r = two::<T>() * (p1 * q2 - p2 * q1);

        Self::from_entry_coords(tx, ty, tz, p, q, r)
    }

    /// Converts entry coordinates (`upper = y+z`, `lower = y-z`) to cone
    /// coordinates.
    fn from_entry_coords(x: T, upper: T, lower: T, p: T, q: T, r: T) -> Self {
        let half = half::<T>();
        let y = (upper.clone() + lower.clone()) * half.clone();
        let z = (upper - lower) * half;
        Self::new(x, y, z, p, q, r)
    }

    /// Pulls a 4x4 matrix back to coordinates, checking that it has the
    /// embedded shape.
    pub fn from_matrix(m: &Mat4<T>) -> Result<Self> {
        let g = |i: usize, j: usize| m.get(i, j).clone();
        let v = Self::from_entry_coords(g(0, 0), g(0, 2), g(2, 0), g(1, 0), g(0, 3), g(1, 3));
        if &v.embed() == m {
            Ok(v)
        } else {
            Err(Error::NotInAlgebra)
        }
    }

    /// Adjoint action by the closed form
    ///
    /// ```text
    /// x~     = (ad+bc) x - ac (y+z) + bd (y-z)
    /// y~+z~  = -2ab x + a^2 (y+z) - b^2 (y-z)
    /// y~-z~  = 2cd x - c^2 (y+z) + d^2 (y-z)
    /// p~     = d (l x + m (y-z) + p) + c (m x - l (y+z) - q)
    /// q~     = -b (l x + m (y-z) + p) - a (m x - l (y+z) - q)
    /// r~     = -2 l m x + l^2 (y+z) - m^2 (y-z) - 2 p m + 2 q l + r
    /// ```
    pub fn adjoint(&self, g: &JacobiGroupElem<T>) -> Self {
        let JacobiGroupElem { a, b, c, d, lambda: l, mu: m, .. } = g.clone();
        let (x, u, w) = (self.x.clone(), self.upper(), self.lower());
        let (p, q, r) = (self.p.clone(), self.q.clone(), self.r.clone());
        let t = two::<T>();

        let xt = (a.clone() * d.clone() + b.clone() * c.clone()) * x.clone()
            - a.clone() * c.clone() * u.clone()
            + b.clone() * d.clone() * w.clone();
        let ut = -(t.clone() * a.clone() * b.clone() * x.clone()) + a.square() * u.clone() - b.square() * w.clone();
        let wt = t.clone() * c.clone() * d.clone() * x.clone() - c.square() * u.clone() + d.square() * w.clone();

        let s1 = l.clone() * x.clone() + m.clone() * w.clone() + p.clone();
        let s2 = m.clone() * x.clone() - l.clone() * u.clone() - q.clone();
        let pt = d * s1.clone() + c * s2.clone();
        let qt = -(b * s1) - a * s2;
        let rt = -(t.clone() * l.clone() * m.clone() * x) + l.square() * u - m.square() * w
            - t.clone() * p * m
            + t * q * l
            + r;

        Self::from_entry_coords(xt, ut, wt, pt, qt, rt)
    }

    pub fn to_json(&self) -> serde_json::Value
    where
        T: ToJson,
    {
        json!({
            "x": self.x.to_json(),
            "y": self.y.to_json(),
            "z": self.z.to_json(),
            "p": self.p.to_json(),
            "q": self.q.to_json(),
            "r": self.r.to_json(),
        })
    }
}

fn half<T: Field>() -> T {
    two::<T>().checked_inv().expect("2 is invertible")
}

impl<T: Field> Add for JacobiAlgElem<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let [a, b] = [self.coords(), rhs.coords()];
        let mut it = a.into_iter().zip(b).map(|(u, v)| u + v);
        Self::from_coords(std::array::from_fn(|_| it.next().unwrap()))
    }
}

impl<T: Field> Sub for JacobiAlgElem<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Field> Neg for JacobiAlgElem<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|e| -e.clone())
    }
}

/// Orbit invariants of an element of the Jacobi algebra.
#[derive(Clone, PartialEq, Debug)]
pub struct Invariants {
    pub c1: Rational,
    pub f: Rational,
    /// `f - c1 r`
    pub i: Rational,
    /// Defined only on the nonzero nilpotent locus with `f = 0`.
    pub rho: Option<Rational>,
}

impl Invariants {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "c1": self.c1.to_json(),
            "f": self.f.to_json(),
            "I": self.i.to_json(),
            "rho": self.rho.as_ref().map(ToJson::to_json),
        })
    }
}

impl JacobiAlgElem<Rational> {
    /// `r - q^2/(y+z)`, or `r + p^2/(y-z)` when `y+z = 0`, on the locus
    /// `c1 = 0, (x,y,z) != 0, f = 0`; `None` elsewhere.
    pub fn rho(&self) -> Option<Rational> {
        if !self.is_nilpotent() || self.sl2_is_zero() || !self.f().is_zero() {
            return None;
        }
        let (u, w) = (self.upper(), self.lower());
        let via_upper = (!u.is_zero()).then(|| &self.r - self.q.square() / &u);
        let via_lower = (!w.is_zero()).then(|| &self.r + self.p.square() / &w);
        if let (Some(a), Some(b)) = (&via_upper, &via_lower) {
            assert_eq!(a, b, "both expressions for rho must agree on the locus f = 0");
        }
        via_upper.or(via_lower)
    }

    pub fn invariants(&self) -> Invariants {
        Invariants {
            c1: self.c1(),
            f: self.f(),
            i: self.i_invariant(),
            rho: self.rho(),
        }
    }

    /// Checks `G^(2k) = c1^(k-1) G^2` on the embedded matrix.
    pub fn power_identity_check(&self, k: u32) -> bool {
        assert!(k >= 1, "exponent must be positive");
        let m = self.embed();
        let sq = m.pow(2);
        let lhs = m.pow(2 * k);
        let c1 = self.c1();
        let mut coeff = Rational::one();
        for _ in 1..k {
            coeff *= &c1;
        }
        lhs == sq.scale(&coeff)
    }

    /// `embed(v)^4 = 0`; independent of the `c1` test.
    pub fn is_nilpotent_by_matrix(&self) -> bool {
        self.embed().pow(4).is_zero()
    }

    /// Rank of `w -> [w, v]` on the basis `{X, Y, Z, P, Q, R}`.
    pub fn orbit_dimension(&self) -> usize {
        let rows: Vec<Vec<Rational>> = basis::all()
            .iter()
            .map(|w| w.bracket(self).coords().to_vec())
            .collect();
        rank(&rows)
    }

    pub fn to_f64(&self) -> JacobiAlgElem<f64> {
        self.map(OrderedField::to_f64)
    }
}

/// The basis `X^J, Y^J, Z^J, P^J, Q^J, R^J` and the nilpotents `S^J, T^J`.
pub mod basis {
    use super::JacobiAlgElem;
    use crate::scalar::{int, rat};

    fn g(c: [i64; 6]) -> JacobiAlgElem {
        JacobiAlgElem::from_coords(c.map(int))
    }

    pub fn x() -> JacobiAlgElem {
        g([1, 0, 0, 0, 0, 0])
    }
    pub fn y() -> JacobiAlgElem {
        g([0, 1, 0, 0, 0, 0])
    }
    pub fn z() -> JacobiAlgElem {
        g([0, 0, 1, 0, 0, 0])
    }
    pub fn p() -> JacobiAlgElem {
        g([0, 0, 0, 1, 0, 0])
    }
    pub fn q() -> JacobiAlgElem {
        g([0, 0, 0, 0, 1, 0])
    }
    pub fn r() -> JacobiAlgElem {
        g([0, 0, 0, 0, 0, 1])
    }
    /// `(Y + Z)/2`, sl2 block `[[0, 1], [0, 0]]`.
    pub fn s() -> JacobiAlgElem {
        JacobiAlgElem::new(int(0), rat(1, 2), rat(1, 2), int(0), int(0), int(0))
    }
    /// `(Y - Z)/2`, sl2 block `[[0, 0], [1, 0]]`.
    pub fn t() -> JacobiAlgElem {
        JacobiAlgElem::new(int(0), rat(1, 2), rat(-1, 2), int(0), int(0), int(0))
    }

    pub fn all() -> [JacobiAlgElem; 6] {
        [x(), y(), z(), p(), q(), r()]
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgRepr {
    #[serde(with = "rational_serde")]
    x: Rational,
    #[serde(with = "rational_serde")]
    y: Rational,
    #[serde(with = "rational_serde")]
    z: Rational,
    #[serde(with = "rational_serde")]
    p: Rational,
    #[serde(with = "rational_serde")]
    q: Rational,
    #[serde(with = "rational_serde")]
    r: Rational,
}

impl Serialize for JacobiAlgElem<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let [x, y, z, p, q, r] = self.coords();
        AlgRepr { x, y, z, p, q, r }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for JacobiAlgElem<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let AlgRepr { x, y, z, p, q, r } = AlgRepr::deserialize(d)?;
        Ok(JacobiAlgElem::new(x, y, z, p, q, r))
    }
}
