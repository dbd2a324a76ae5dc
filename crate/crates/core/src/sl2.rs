//! `sl(2, R)`: orbit labels, sl2-triples and KS-triples, the Cayley map
//! into the complexification, and the orbit-level Kostant-Sekiguchi map.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::scalar::{format_rational, int, rat, rational_serde, sign_of, GaussRational, Rational, Ring, ToJson};

/// `F(x, y, z) = xX + yY + zZ`, matrix `[[x, y+z], [y-z, -x]]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sl2Elem {
    #[serde(with = "rational_serde")]
    pub x: Rational,
    #[serde(with = "rational_serde")]
    pub y: Rational,
    #[serde(with = "rational_serde")]
    pub z: Rational,
}

impl Sl2Elem {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Sl2Elem { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Sl2Elem::new(int(x), int(y), int(z))
    }

    pub fn matrix(&self) -> Mat2<Rational> {
        Mat2::new([
            [self.x.clone(), &self.y + &self.z],
            [&self.y - &self.z, -self.x.clone()],
        ])
    }

    /// Inverse of [`Sl2Elem::matrix`]; `None` unless traceless.
    pub fn from_matrix(m: &Mat2<Rational>) -> Option<Self> {
        let [[a, b], [c, d]] = &m.rows;
        if !(a + d).is_zero() {
            return None;
        }
        let half = rat(1, 2);
        Some(Sl2Elem::new(a.clone(), (b + c) * &half, (b - c) * half))
    }

    pub fn c1(&self) -> Rational {
        &self.x * &self.x + &self.y * &self.y - &self.z * &self.z
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Sl2Elem::new(&self.x * k, &self.y * k, &self.z * k)
    }

    /// `m v m^-1`.
    pub fn conjugate(&self, m: &Mat2<Rational>) -> Result<Self> {
        let inv = m.inverse()?;
        Sl2Elem::from_matrix(&(&(m * &self.matrix()) * &inv)).ok_or(Error::NotInAlgebra)
    }

    pub fn to_json(&self) -> Value {
        json!({ "x": self.x.to_json(), "y": self.y.to_json(), "z": self.z.to_json() })
    }
}

pub mod mats {
    //! The named matrices of the worked example.
    use super::*;

    fn m(rows: [[i64; 2]; 2]) -> Mat2<Rational> {
        Mat2::from_fn(|i, j| Rational::from_integer(rows[i][j].into()))
    }

    pub fn x() -> Mat2<Rational> {
        m([[1, 0], [0, -1]])
    }
    pub fn y() -> Mat2<Rational> {
        m([[0, 1], [1, 0]])
    }
    pub fn z() -> Mat2<Rational> {
        m([[0, 1], [-1, 0]])
    }
    pub fn s() -> Mat2<Rational> {
        m([[0, 1], [0, 0]])
    }
    pub fn t() -> Mat2<Rational> {
        m([[0, 0], [1, 0]])
    }

    fn g(re: i64, im: i64) -> GaussRational {
        GaussRational::from_ints(re, im)
    }

    /// `i(S - T)`
    pub fn h_theta() -> Mat2<GaussRational> {
        Mat2::new([[g(0, 0), g(0, 1)], [g(0, -1), g(0, 0)]])
    }

    /// `(S + T - iX) / 2`
    pub fn x_theta() -> Mat2<GaussRational> {
        Mat2::new([[g(0, -1), g(1, 0)], [g(1, 0), g(0, 1)]]).scale(&GaussRational::real(rat(1, 2)))
    }

    /// `(S + T + iX) / 2`
    pub fn y_theta() -> Mat2<GaussRational> {
        Mat2::new([[g(0, 1), g(1, 0)], [g(1, 0), g(0, -1)]]).scale(&GaussRational::real(rat(1, 2)))
    }
}

pub fn complexify(m: &Mat2<Rational>) -> Mat2<GaussRational> {
    m.map(|q| GaussRational::real(q.clone()))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sl2OrbitLabel {
    Zero,
    NPlus,
    NMinus,
    Hyperbolic { c1: Rational },
    Elliptic { c1: Rational, sheet: i8 },
}

impl Sl2OrbitLabel {
    pub fn family(&self) -> &'static str {
        match self {
            Sl2OrbitLabel::Zero => "Zero",
            Sl2OrbitLabel::NPlus => "NPlus",
            Sl2OrbitLabel::NMinus => "NMinus",
            Sl2OrbitLabel::Hyperbolic { .. } => "Hyperbolic",
            Sl2OrbitLabel::Elliptic { .. } => "Elliptic",
        }
    }

    pub fn to_json(&self) -> Value {
        let params = match self {
            Sl2OrbitLabel::Hyperbolic { c1 } => json!({ "c1": format_rational(c1) }),
            Sl2OrbitLabel::Elliptic { c1, sheet } => json!({ "c1": format_rational(c1), "sheet": sheet }),
            _ => json!({}),
        };
        json!({ "family": self.family(), "params": params })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let family = v
            .get("family")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("label needs a string \"family\"".into()))?;
        let param = |k: &str| v.get("params").and_then(|p| p.get(k));
        let c1 = || -> Result<Rational> {
            let s = param("c1")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse(format!("{family} label needs string param \"c1\"")))?;
            crate::scalar::parse_rational(s)
        };
        Ok(match family {
            "Zero" => Sl2OrbitLabel::Zero,
            "NPlus" => Sl2OrbitLabel::NPlus,
            "NMinus" => Sl2OrbitLabel::NMinus,
            "Hyperbolic" => {
                let c1 = c1()?;
                if !c1.is_positive() {
                    return Err(Error::Parse("Hyperbolic needs c1 > 0".into()));
                }
                Sl2OrbitLabel::Hyperbolic { c1 }
            }
            "Elliptic" => {
                let c1 = c1()?;
                let sheet = param("sheet")
                    .and_then(Value::as_i64)
                    .filter(|s| s.abs() == 1)
                    .ok_or_else(|| Error::Parse("Elliptic needs sheet = 1 or -1".into()))?;
                if !c1.is_negative() {
                    return Err(Error::Parse("Elliptic needs c1 < 0".into()));
                }
                Sl2OrbitLabel::Elliptic { c1, sheet: sheet as i8 }
            }
            other => return Err(Error::Parse(format!("unknown sl2 orbit family {other:?}"))),
        })
    }

    pub fn is_nilpotent(&self) -> bool {
        matches!(self, Sl2OrbitLabel::Zero | Sl2OrbitLabel::NPlus | Sl2OrbitLabel::NMinus)
    }
}

impl fmt::Display for Sl2OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sl2OrbitLabel::Zero => write!(f, "{{0}}"),
            Sl2OrbitLabel::NPlus => write!(f, "N^+ = G·S"),
            Sl2OrbitLabel::NMinus => write!(f, "N^- = G·T"),
            Sl2OrbitLabel::Hyperbolic { c1 } => write!(f, "G·αX, α² = {c1}"),
            Sl2OrbitLabel::Elliptic { c1, sheet } => {
                let s = if *sheet > 0 { "" } else { "-" };
                write!(f, "G·{s}αZ, α² = {}", -c1.clone())
            }
        }
    }
}

pub fn classify_sl2(v: &Sl2Elem) -> Sl2OrbitLabel {
    let c1 = v.c1();
    if c1.is_positive() {
        Sl2OrbitLabel::Hyperbolic { c1 }
    } else if c1.is_negative() {
        Sl2OrbitLabel::Elliptic { c1, sheet: sign_of(&v.z) }
    } else if v.is_zero() {
        Sl2OrbitLabel::Zero
    } else if v.z.is_positive() {
        Sl2OrbitLabel::NPlus
    } else {
        Sl2OrbitLabel::NMinus
    }
}

/// Ordered `(Z1, Z2, Z3)`, conventionally `(H, E, F)`.
#[derive(Clone, PartialEq, Debug)]
pub struct Sl2Triple<T> {
    pub h: Mat2<T>,
    pub e: Mat2<T>,
    pub f: Mat2<T>,
}

impl<T: Ring> Sl2Triple<T> {
    pub fn new(h: Mat2<T>, e: Mat2<T>, f: Mat2<T>) -> Self {
        Sl2Triple { h, e, f }
    }

    pub fn map<U: Ring>(&self, g: impl Fn(&Mat2<T>) -> Mat2<U>) -> Sl2Triple<U> {
        Sl2Triple { h: g(&self.h), e: g(&self.e), f: g(&self.f) }
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|m| m.scale(k))
    }
}

impl Sl2Triple<Rational> {
    pub fn complexify(&self) -> Sl2Triple<GaussRational> {
        self.map(complexify)
    }

    pub fn to_json(&self) -> Value {
        self.complexify().to_json()
    }
}

impl Sl2Triple<GaussRational> {
    /// Array of three 2x2 matrices with `{"re","im"}` entries.
    pub fn to_json(&self) -> Value {
        json!([self.h.to_json(), self.e.to_json(), self.f.to_json()])
    }

    /// Accepts entries as `{"re","im"}` objects or bare rational strings.
    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Error::Parse("triple must be an array of three 2x2 matrices".into()))?;
        let mat = |m: &Value| -> Result<Mat2<GaussRational>> {
            let rows: [[GaussRational; 2]; 2] = serde_json::from_value(m.clone())
                .map_err(|e| Error::Parse(format!("bad 2x2 matrix: {e}")))?;
            Ok(Mat2::new(rows))
        };
        Ok(Sl2Triple::new(mat(&arr[0])?, mat(&arr[1])?, mat(&arr[2])?))
    }

    /// The real triple, if every entry is real.
    pub fn real_part(&self) -> Option<Sl2Triple<Rational>> {
        let real = |m: &Mat2<GaussRational>| m.rows.iter().flatten().all(GaussRational::is_real);
        if !(real(&self.h) && real(&self.e) && real(&self.f)) {
            return None;
        }
        Some(self.map(|m| m.map(|g| g.re.clone())))
    }

    pub fn conj(&self) -> Self {
        self.map(|m| m.map(GaussRational::conj))
    }
}

/// `[Z1,Z2] = 2Z2`, `[Z1,Z3] = -2Z3`, `[Z2,Z3] = Z1`, exactly.
pub fn validate_sl2_triple<T: Ring>(t: &Sl2Triple<T>) -> bool {
    let two = T::one() + T::one();
    t.h.commutator(&t.e) == t.e.scale(&two)
        && t.h.commutator(&t.f) == -t.f.scale(&two)
        && t.e.commutator(&t.f) == t.h
}

/// Real KS condition `theta(E) = -F` with `theta(A) = -A^T`; false for
/// non-triples.
pub fn is_ks_real(t: &Sl2Triple<Rational>) -> bool {
    ks_real_checked(t).unwrap_or(false)
}

/// As [`is_ks_real`], but a non-triple is an error.
pub fn ks_real_checked(t: &Sl2Triple<Rational>) -> Result<bool> {
    if !validate_sl2_triple(t) {
        return Err(Error::NotATriple);
    }
    Ok(t.f == t.e.transpose())
}

fn is_antisymmetric(m: &Mat2<GaussRational>) -> bool {
    (m.clone() + m.transpose()).is_zero()
}

fn is_symmetric_traceless(m: &Mat2<GaussRational>) -> bool {
    *m == m.transpose() && m.trace().is_zero()
}

/// Complex KS condition: `x` in the rotation algebra, `e, f` symmetric
/// traceless, `f` the entrywise conjugate of `e`. False for non-triples.
pub fn is_ks_complex(t: &Sl2Triple<GaussRational>) -> bool {
    ks_complex_checked(t).unwrap_or(false)
}

pub fn ks_complex_checked(t: &Sl2Triple<GaussRational>) -> Result<bool> {
    if !validate_sl2_triple(t) {
        return Err(Error::NotATriple);
    }
    Ok(is_antisymmetric(&t.h)
        && is_symmetric_traceless(&t.e)
        && is_symmetric_traceless(&t.f)
        && t.e.map(GaussRational::conj) == t.f)
}

/// `{(2/l) H0, E, (2/l) E^T}` with `H0 = [E, E^T]` and `[H0, E] = l E`.
/// The result is KS iff `l = 2`.
pub fn sl2_triple_through(e: &Sl2Elem) -> Result<Sl2Triple<Rational>> {
    if e.is_zero() {
        return Err(Error::ZeroElement);
    }
    if !e.c1().is_zero() {
        return Err(Error::NotNilpotent);
    }
    let em = e.matrix();
    let et = em.transpose();
    let h0 = em.commutator(&et);
    let he = h0.commutator(&em);
    let (i, j) = (0..4)
        .map(|k| (k / 2, k % 2))
        .find(|&(i, j)| !em.get(i, j).is_zero())
        .expect("nonzero element has a nonzero entry");
    let lambda = he.get(i, j) / em.get(i, j);
    debug_assert_eq!(he, em.scale(&lambda));
    let k = Rational::from_integer(2.into()) / lambda;
    Ok(Sl2Triple::new(h0.scale(&k), em, et.scale(&k)))
}

/// `E / (2|z|)`: the positive multiple of a nonzero nilpotent `E` whose
/// triple from [`sl2_triple_through`] is KS. On the cone `l = 8 z^2`.
pub fn ks_rescale(e: &Sl2Elem) -> Result<Sl2Elem> {
    if e.is_zero() {
        return Err(Error::ZeroElement);
    }
    if !e.c1().is_zero() {
        return Err(Error::NotNilpotent);
    }
    let two_abs_z = e.z.abs() * Rational::from_integer(2.into());
    Ok(e.scale(&two_abs_z.recip()))
}

/// `x = i(E - F)`, `e = (E + F + iH)/2`, `f = (E + F - iH)/2`.
pub fn cayley(t: &Sl2Triple<Rational>) -> Result<Sl2Triple<GaussRational>> {
    if !is_ks_real(t) {
        return Err(Error::NotKsReal);
    }
    let c = t.complexify();
    let i = GaussRational::i();
    let half = GaussRational::real(rat(1, 2));
    let sum = c.e.clone() + c.f.clone();
    let ih = c.h.scale(&i);
    Ok(Sl2Triple::new(
        (c.e - c.f).scale(&i),
        (sum.clone() + ih.clone()).scale(&half),
        (sum - ih).scale(&half),
    ))
}

/// Nilpotent classes in the complex symmetric-traceless space
/// `xX + yY`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PcSl2Label {
    Zero,
    NThetaPlus,
    NThetaMinus,
    NonNilpotent { x2_plus_y2: GaussRational },
}

impl PcSl2Label {
    pub fn family(&self) -> &'static str {
        match self {
            PcSl2Label::Zero => "Zero",
            PcSl2Label::NThetaPlus => "NThetaPlus",
            PcSl2Label::NThetaMinus => "NThetaMinus",
            PcSl2Label::NonNilpotent { .. } => "NonNilpotent",
        }
    }

    pub fn to_json(&self) -> Value {
        let params = match self {
            PcSl2Label::NonNilpotent { x2_plus_y2 } => json!({ "x2_plus_y2": x2_plus_y2.to_json() }),
            _ => json!({}),
        };
        json!({ "family": self.family(), "params": params })
    }
}

impl fmt::Display for PcSl2Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PcSl2Label::Zero => write!(f, "{{0}}"),
            PcSl2Label::NThetaPlus => write!(f, "N_θ^+ (y = ix)"),
            PcSl2Label::NThetaMinus => write!(f, "N_θ^- (y = -ix)"),
            PcSl2Label::NonNilpotent { x2_plus_y2 } => write!(f, "non-nilpotent, x² + y² = {x2_plus_y2}"),
        }
    }
}

pub fn classify_pc(x: &GaussRational, y: &GaussRational) -> PcSl2Label {
    let ix = GaussRational::i() * x.clone();
    if x.is_zero() && y.is_zero() {
        PcSl2Label::Zero
    } else if *y == ix {
        PcSl2Label::NThetaPlus
    } else if *y == -ix {
        PcSl2Label::NThetaMinus
    } else {
        PcSl2Label::NonNilpotent { x2_plus_y2: x.square() + y.square() }
    }
}

/// `(x, y)` with `m = xX + yY`; `None` unless symmetric traceless.
pub fn pc_coords(m: &Mat2<GaussRational>) -> Option<(GaussRational, GaussRational)> {
    is_symmetric_traceless(m).then(|| (m.get(0, 0).clone(), m.get(0, 1).clone()))
}

pub fn ks_map(l: &Sl2OrbitLabel) -> Result<PcSl2Label> {
    match l {
        Sl2OrbitLabel::Zero => Ok(PcSl2Label::Zero),
        Sl2OrbitLabel::NPlus => Ok(PcSl2Label::NThetaMinus),
        Sl2OrbitLabel::NMinus => Ok(PcSl2Label::NThetaPlus),
        other => Err(Error::NotNilpotentLabel(other.family().into())),
    }
}

/// Label of the `e` component of the Cayley transform of the KS triple
/// through a positive multiple of `E`; `Zero` for `E = 0`.
pub fn ks_image_of(e: &Sl2Elem) -> Result<PcSl2Label> {
    if e.is_zero() {
        return Ok(PcSl2Label::Zero);
    }
    let t = sl2_triple_through(&ks_rescale(e)?)?;
    let c = cayley(&t)?;
    let (x, y) = pc_coords(&c.e).ok_or(Error::NotInAlgebra)?;
    Ok(classify_pc(&x, &y))
}
