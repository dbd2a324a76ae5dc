//! The complexified side: `H(x, y, p, q)` in `p_C^J`, the `K_C^J` action,
//! and exact orbit equality in weight coordinates.
//!
//! With `u = a + ib` (so `u^-1 = a - ib` when `a^2 + b^2 = 1`) the action is
//! diagonal on `(xi+, xi-, pi+, pi-) = (x + iy, x - iy, p + iq, p - iq)` with
//! weights `(-2, 2, -1, 1)`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::Mat4;
use crate::scalar::{parse_rational, rat, GaussRational, Field, Ring, ToJson};

type G = GaussRational;

const WEIGHTS: [i32; 4] = [-2, 2, -1, 1];

/// `H(x, y, p, q)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PcElem {
    pub x: G,
    pub y: G,
    pub p: G,
    pub q: G,
}

impl PcElem {
    pub fn new(x: G, y: G, p: G, q: G) -> Self {
        PcElem { x, y, p, q }
    }

    pub fn zero() -> Self {
        PcElem::new(G::zero(), G::zero(), G::zero(), G::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.p.is_zero() && self.q.is_zero()
    }

    pub fn scale(&self, k: &G) -> Self {
        PcElem::new(
            k.clone() * self.x.clone(),
            k.clone() * self.y.clone(),
            k.clone() * self.p.clone(),
            k.clone() * self.q.clone(),
        )
    }

    /// ```text
    /// [ x 0  y  q ]
    /// [ p 0  q  0 ]
    /// [ y 0 -x -p ]
    /// [ 0 0  0  0 ]
    /// ```
    pub fn embed(&self) -> Mat4<G> {
        let o = G::zero;
        let PcElem { x, y, p, q } = self.clone();
        Mat4::new([
            [x.clone(), o(), y.clone(), q.clone()],
            [p.clone(), o(), q, o()],
            [y, o(), -x, -p],
            [o(), o(), o(), o()],
        ])
    }

    /// `x^2 + y^2`
    pub fn c(&self) -> G {
        self.x.square() + self.y.square()
    }

    pub fn to_json(&self) -> Value {
        json!({ "x": self.x.to_json(), "y": self.y.to_json(), "p": self.p.to_json(), "q": self.q.to_json() })
    }
}

impl fmt::Display for PcElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({}, {}, {}, {})", self.x, self.y, self.p, self.q)
    }
}

/// `(a, b, kappa)` with `a^2 + b^2 = 1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct KcElem {
    pub a: G,
    pub b: G,
    pub kappa: G,
}

impl KcElem {
    pub fn new(a: G, b: G, kappa: G) -> Result<Self> {
        let norm = a.square() + b.square();
        if !norm.is_one() {
            return Err(Error::NotUnitNorm(norm.to_string()));
        }
        Ok(KcElem { a, b, kappa })
    }

    pub fn identity() -> Self {
        KcElem { a: G::one(), b: G::zero(), kappa: G::zero() }
    }

    /// `a = (u + 1/u)/2`, `b = (u - 1/u)/(2i)`.
    pub fn from_u(u: &G, kappa: G) -> Result<Self> {
        let inv = u.checked_inv().ok_or(Error::DivisionByZero)?;
        let half = G::real(rat(1, 2));
        let a = (u.clone() + inv.clone()) * half.clone();
        let b = (u.clone() - inv) * half * -G::i();
        KcElem::new(a, b, kappa)
    }

    pub fn u(&self) -> G {
        self.a.clone() + G::i() * self.b.clone()
    }

    /// ```text
    /// [  a 0 b 0     ]
    /// [  0 1 0 kappa ]
    /// [ -b 0 a 0     ]
    /// [  0 0 0 1     ]
    /// ```
    pub fn embed(&self) -> Mat4<G> {
        let (o, i) = (G::zero, G::one);
        Mat4::new([
            [self.a.clone(), o(), self.b.clone(), o()],
            [o(), i(), o(), self.kappa.clone()],
            [-self.b.clone(), o(), self.a.clone(), o()],
            [o(), o(), o(), i()],
        ])
    }

    pub fn to_json(&self) -> Value {
        json!({ "a": self.a.to_json(), "b": self.b.to_json(), "kappa": self.kappa.to_json() })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KcRepr {
    a: G,
    b: G,
    #[serde(default)]
    kappa: Option<G>,
}

impl KcElem {
    /// Like the `Deserialize` impl, but keeps the typed error.
    pub fn from_json(v: &Value) -> Result<Self> {
        let r = KcRepr::deserialize(v).map_err(|e| Error::Parse(e.to_string()))?;
        KcElem::new(r.a, r.b, r.kappa.unwrap_or_else(G::zero))
    }
}

impl<'de> Deserialize<'de> for KcElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = KcRepr::deserialize(d)?;
        KcElem::new(r.a, r.b, r.kappa.unwrap_or_else(G::zero)).map_err(serde::de::Error::custom)
    }
}

/// `x* = (a^2-b^2)x + 2ab y`, `y* = -2ab x + (a^2-b^2) y`, `p* = ap + bq`,
/// `q* = aq - bp`; kappa acts trivially.
pub fn kc_action(k: &KcElem, h: &PcElem) -> PcElem {
    let (a, b) = (&k.a, &k.b);
    let c = a.square() - b.square();
    let two_ab = G::from_i64(2) * a.clone() * b.clone();
    PcElem::new(
        c.clone() * h.x.clone() + two_ab.clone() * h.y.clone(),
        -(two_ab * h.x.clone()) + c * h.y.clone(),
        a.clone() * h.p.clone() + b.clone() * h.q.clone(),
        a.clone() * h.q.clone() - b.clone() * h.p.clone(),
    )
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeightCoords {
    pub xi_plus: G,
    pub xi_minus: G,
    pub pi_plus: G,
    pub pi_minus: G,
}

impl WeightCoords {
    pub fn as_array(&self) -> [G; 4] {
        [self.xi_plus.clone(), self.xi_minus.clone(), self.pi_plus.clone(), self.pi_minus.clone()]
    }

    pub fn from_array([xi_plus, xi_minus, pi_plus, pi_minus]: [G; 4]) -> Self {
        WeightCoords { xi_plus, xi_minus, pi_plus, pi_minus }
    }

    pub fn zero_pattern(&self) -> [bool; 4] {
        self.as_array().map(|c| c.is_zero())
    }

    /// `(u^-2 xi+, u^2 xi-, u^-1 pi+, u pi-)`
    pub fn scale_by(&self, u: &G) -> Result<Self> {
        let mut out = self.as_array();
        for (c, w) in out.iter_mut().zip(WEIGHTS) {
            *c = c.clone() * u.pow(w)?;
        }
        Ok(WeightCoords::from_array(out))
    }

    pub fn to_pc(&self) -> PcElem {
        let half = G::real(rat(1, 2));
        let minus_half_i = G::new(rat(0, 1), rat(-1, 2));
        PcElem::new(
            (self.xi_plus.clone() + self.xi_minus.clone()) * half.clone(),
            (self.xi_plus.clone() - self.xi_minus.clone()) * minus_half_i.clone(),
            (self.pi_plus.clone() + self.pi_minus.clone()) * half,
            (self.pi_plus.clone() - self.pi_minus.clone()) * minus_half_i,
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "xi_plus": self.xi_plus.to_json(),
            "xi_minus": self.xi_minus.to_json(),
            "pi_plus": self.pi_plus.to_json(),
            "pi_minus": self.pi_minus.to_json(),
        })
    }
}

pub fn weight_coords(h: &PcElem) -> WeightCoords {
    let i = G::i();
    WeightCoords {
        xi_plus: h.x.clone() + i.clone() * h.y.clone(),
        xi_minus: h.x.clone() - i.clone() * h.y.clone(),
        pi_plus: h.p.clone() + i.clone() * h.q.clone(),
        pi_minus: h.p.clone() - i * h.q.clone(),
    }
}

/// How the scaling parameter of an orbit match is pinned down.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum KcWitness {
    /// A weight-one coordinate is nonzero, so `u` itself is determined.
    U(G),
    /// Only weight-two coordinates are nonzero; any square root of this works.
    USquared(G),
    /// Both elements are zero.
    Any,
}

impl KcWitness {
    pub fn to_json(&self) -> Value {
        match self {
            KcWitness::U(u) => json!({ "u": u.to_json() }),
            KcWitness::USquared(s) => json!({ "u_squared": s.to_json() }),
            KcWitness::Any => json!({ "u": G::one().to_json() }),
        }
    }

    /// A concrete group element when `u` is a Gaussian rational.
    pub fn element(&self) -> Option<KcElem> {
        match self {
            KcWitness::U(u) => KcElem::from_u(u, G::zero()).ok(),
            KcWitness::Any => Some(KcElem::identity()),
            KcWitness::USquared(s) => {
                if s.is_one() {
                    Some(KcElem::identity())
                } else if *s == -G::one() {
                    KcElem::from_u(&G::i(), G::zero()).ok()
                } else {
                    None
                }
            }
        }
    }
}

/// Decides `h2 in K_C^J . h1` exactly; returns the scaling witness when it
/// holds.
pub fn same_kc_orbit(h1: &PcElem, h2: &PcElem) -> Option<KcWitness> {
    let w1 = weight_coords(h1).as_array();
    let w2 = weight_coords(h2).as_array();
    if w1.iter().zip(&w2).any(|(a, b)| a.is_zero() != b.is_zero()) {
        return None;
    }
    let ratio = |k: usize| w2[k].checked_div(&w1[k]).ok();
    // ratios in the order (u^-2, u^2, u^-1, u)
    let (r_xp, r_xm, r_pp, r_pm) = (ratio(0), ratio(1), ratio(2), ratio(3));
    let u = match (&r_pm, &r_pp) {
        (Some(u), _) => Some(u.clone()),
        (None, Some(inv)) => Some(inv.checked_inv()?),
        (None, None) => None,
    };
    match u {
        Some(u) => {
            let ok = w1.iter().zip(&w2).zip(WEIGHTS).all(|((a, b), w)| {
                a.is_zero() || u.pow(w).map(|s| s * a.clone() == *b).unwrap_or(false)
            });
            ok.then_some(KcWitness::U(u))
        }
        None => match (r_xm, r_xp) {
            (Some(s), Some(s_inv)) => (s.clone() * s_inv).is_one().then_some(KcWitness::USquared(s)),
            (Some(s), None) => Some(KcWitness::USquared(s)),
            (None, Some(s_inv)) => Some(KcWitness::USquared(s_inv.checked_inv()?)),
            (None, None) => Some(KcWitness::Any),
        },
    }
}

/// Which of `xi+`, `xi-` is the nonzero one in a mixed isotropic label.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum XiSide {
    XiPlus,
    XiMinus,
}

impl XiSide {
    fn as_str(self) -> &'static str {
        match self {
            XiSide::XiPlus => "xi_plus",
            XiSide::XiMinus => "xi_minus",
        }
    }
}

/// `K_C^J`-orbit label: zero pattern of the weight coordinates plus
/// weight-zero invariants.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum KcOrbitLabel {
    Zero,
    /// `xi+ = 0`, `xi- != 0`, `pi = 0`: the orbit of `X_theta^J`.
    NJPlus,
    /// `xi- = 0`, `xi+ != 0`, `pi = 0`: the orbit of `Y_theta^J`.
    NJMinus,
    /// `xi = 0`, `pi+ pi- = delta^2 != 0`.
    NJP { delta_sq: G },
    /// `xi = 0`, `(p, q) != 0`, `q = sign * i * p`.
    PIsotropic { sign: i8 },
    /// `xi+ = 0`, `xi- != 0`, `pi+ pi- = delta^2 != 0`, `w0 = xi- pi+^2`.
    MixedPlus { delta_sq: G, w0: G },
    /// `xi- = 0`, `xi+ != 0`, `pi+ pi- = delta^2 != 0`, `w0 = xi+ pi-^2`.
    MixedMinus { delta_sq: G, w0: G },
    /// One xi and one pi nonzero with `q = sign * i * p`; `w0` is the nonzero
    /// xi normalized by the nonzero pi to weight zero.
    MixedIsotropic { sign: i8, side: XiSide, w0: G },
    /// `x^2 + y^2 = xi+ xi- != 0`, with the pi shape and pivot-normalized
    /// invariants `[xi+ pi-^2, xi- / pi-^2, pi+ pi-]` (pivot `pi-`), or
    /// `[xi+ / pi+^2, xi- pi+^2]` (pivot `pi+`), or `[]` when `pi = 0`.
    NonNilpotent { xi_prod: G, pi_shape: i8, invariants: Vec<G> },
}

impl KcOrbitLabel {
    pub fn family(&self) -> &'static str {
        match self {
            KcOrbitLabel::Zero => "Zero",
            KcOrbitLabel::NJPlus => "NJPlus",
            KcOrbitLabel::NJMinus => "NJMinus",
            KcOrbitLabel::NJP { .. } => "NJP",
            KcOrbitLabel::PIsotropic { .. } => "PIsotropic",
            KcOrbitLabel::MixedPlus { .. } => "MixedPlus",
            KcOrbitLabel::MixedMinus { .. } => "MixedMinus",
            KcOrbitLabel::MixedIsotropic { .. } => "MixedIsotropic",
            KcOrbitLabel::NonNilpotent { .. } => "NonNilpotent",
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        !matches!(self, KcOrbitLabel::NonNilpotent { .. })
    }

    /// Whether the family appears in the final disjoint union (as opposed to
    /// the isotropic extensions).
    pub fn is_listed_family(&self) -> bool {
        matches!(
            self,
            KcOrbitLabel::Zero
                | KcOrbitLabel::NJPlus
                | KcOrbitLabel::NJMinus
                | KcOrbitLabel::NJP { .. }
                | KcOrbitLabel::MixedPlus { .. }
                | KcOrbitLabel::MixedMinus { .. }
        )
    }

    pub fn to_json(&self) -> Value {
        let params = match self {
            KcOrbitLabel::NJP { delta_sq } => json!({ "delta_sq": delta_sq.to_json() }),
            KcOrbitLabel::PIsotropic { sign } => json!({ "sign": sign }),
            KcOrbitLabel::MixedPlus { delta_sq, w0 } | KcOrbitLabel::MixedMinus { delta_sq, w0 } => {
                json!({ "delta_sq": delta_sq.to_json(), "w0": w0.to_json() })
            }
            KcOrbitLabel::MixedIsotropic { sign, side, w0 } => {
                json!({ "sign": sign, "side": side.as_str(), "w0": w0.to_json() })
            }
            KcOrbitLabel::NonNilpotent { xi_prod, pi_shape, invariants } => json!({
                "xi_prod": xi_prod.to_json(),
                "pi_shape": pi_shape,
                "invariants": invariants.iter().map(ToJson::to_json).collect::<Vec<_>>(),
            }),
            _ => json!({}),
        };
        json!({ "family": self.family(), "params": params })
    }
}

impl fmt::Display for KcOrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KcOrbitLabel::Zero => write!(f, "{{0}}"),
            KcOrbitLabel::NJPlus => write!(f, "N_θ^{{J,+}}"),
            KcOrbitLabel::NJMinus => write!(f, "N_θ^{{J,-}}"),
            KcOrbitLabel::NJP { delta_sq } => write!(f, "N_θ^{{J,P}}(δ), δ² = {delta_sq}"),
            KcOrbitLabel::PIsotropic { sign } => write!(f, "isotropic (p, q), q = {}ip", sign_str(*sign)),
            KcOrbitLabel::MixedPlus { delta_sq, w0 } => {
                write!(f, "N_θ^{{J,+}}(x, δ), δ² = {delta_sq}, ξ₋π₊² = {w0}")
            }
            KcOrbitLabel::MixedMinus { delta_sq, w0 } => {
                write!(f, "N_θ^{{J,-}}(x, δ), δ² = {delta_sq}, ξ₊π₋² = {w0}")
            }
            KcOrbitLabel::MixedIsotropic { sign, side, w0 } => write!(
                f,
                "mixed isotropic, q = {}ip, {} ≠ 0, w0 = {w0}",
                sign_str(*sign),
                side.as_str()
            ),
            KcOrbitLabel::NonNilpotent { xi_prod, .. } => write!(f, "non-nilpotent, x² + y² = {xi_prod}"),
        }
    }
}

fn sign_str(s: i8) -> &'static str {
    if s > 0 {
        ""
    } else {
        "-"
    }
}

pub fn classify_kc(h: &PcElem) -> KcOrbitLabel {
    let w = weight_coords(h);
    let WeightCoords { xi_plus: xp, xi_minus: xm, pi_plus: pp, pi_minus: pm } = w.clone();
    let inv_sq = |c: &G| c.checked_inv().expect("nonzero").square();
    let (xp0, xm0, pp0, pm0) = (xp.is_zero(), xm.is_zero(), pp.is_zero(), pm.is_zero());
    // q = +ip  <=>  pi+ = 0
    let iso_sign = if pp0 { 1 } else { -1 };
    match (xp0, xm0) {
        (false, false) => {
            let (pi_shape, invariants) = match (pp0, pm0) {
                (true, true) => (0, vec![]),
                (_, false) => (
                    if pp0 { 1 } else { 2 },
                    [xp * pm.square(), xm * inv_sq(&pm)]
                        .into_iter()
                        .chain((!pp0).then(|| pp.clone() * pm.clone()))
                        .collect(),
                ),
                (false, true) => (-1, vec![xp * inv_sq(&pp), xm * pp.square()]),
            };
            KcOrbitLabel::NonNilpotent { xi_prod: h.c(), pi_shape, invariants }
        }
        (true, true) => match (pp0, pm0) {
            (true, true) => KcOrbitLabel::Zero,
            (false, false) => KcOrbitLabel::NJP { delta_sq: pp * pm },
            _ => KcOrbitLabel::PIsotropic { sign: iso_sign },
        },
        (true, false) => match (pp0, pm0) {
            (true, true) => KcOrbitLabel::NJPlus,
            (false, false) => KcOrbitLabel::MixedPlus { delta_sq: pp.clone() * pm, w0: xm * pp.square() },
            (true, false) => KcOrbitLabel::MixedIsotropic { sign: 1, side: XiSide::XiMinus, w0: xm * inv_sq(&pm) },
            (false, true) => KcOrbitLabel::MixedIsotropic { sign: -1, side: XiSide::XiMinus, w0: xm * pp.square() },
        },
        (false, true) => match (pp0, pm0) {
            (true, true) => KcOrbitLabel::NJMinus,
            (false, false) => KcOrbitLabel::MixedMinus { delta_sq: pp * pm.clone(), w0: xp * pm.square() },
            (true, false) => KcOrbitLabel::MixedIsotropic { sign: 1, side: XiSide::XiPlus, w0: xp * pm.square() },
            (false, true) => KcOrbitLabel::MixedIsotropic { sign: -1, side: XiSide::XiPlus, w0: xp * inv_sq(&pp) },
        },
    }
}

/// `x^2 + y^2 = 0`, checked against `H^4 = 0` for the embedded matrix.
pub fn is_nilpotent_pc(h: &PcElem) -> bool {
    let by_invariant = h.c().is_zero();
    debug_assert_eq!(by_invariant, is_nilpotent_pc_by_matrix(h));
    by_invariant
}

pub fn is_nilpotent_pc_by_matrix(h: &PcElem) -> bool {
    h.embed().pow(4).is_zero()
}

/// The displayed set descriptions on the complex side, as literal
/// predicates.
#[derive(Clone, PartialEq, Debug)]
pub enum PcSet {
    /// `{H(x, ix, 0, 0) | x != 0}`
    NJPlus,
    /// `{H(x, -ix, 0, 0) | x != 0}`
    NJMinus,
    /// `{H(0, 0, p, q) | p^2 + q^2 = delta^2}`
    NJP { delta: G },
    /// `{H(z, iz, p, q) | p^2 + q^2 = delta^2}` (no condition on `z`).
    NJPlusXDelta { x: G, delta: G },
    /// `{H(z, -iz, p, q) | p^2 + q^2 = delta^2}`
    NJMinusXDelta { x: G, delta: G },
}

impl PcSet {
    pub fn id(&self) -> &'static str {
        match self {
            PcSet::NJPlus => "NJ-plus",
            PcSet::NJMinus => "NJ-minus",
            PcSet::NJP { .. } => "NJP",
            PcSet::NJPlusXDelta { .. } => "L-last-plus",
            PcSet::NJMinusXDelta { .. } => "L-last-minus",
        }
    }

    /// Parses `{"set": id, "x": .., "delta": ..}` with Gaussian-rational
    /// parameters (objects or bare rational strings).
    pub fn from_json(v: &Value) -> Result<Self> {
        let id = v
            .get("set")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("set needs a string \"set\" id".into()))?;
        let g = |key: &str| -> Result<G> {
            let raw = v.get(key).ok_or_else(|| Error::Parse(format!("set {id} needs param {key:?}")))?;
            let val = match raw {
                Value::String(s) => G::real(parse_rational(s)?),
                other => serde_json::from_value(other.clone()).map_err(|e| Error::Parse(e.to_string()))?,
            };
            if val.is_zero() {
                return Err(Error::Parse(format!("set {id}: {key} must be nonzero")));
            }
            Ok(val)
        };
        Ok(match id {
            "NJ-plus" => PcSet::NJPlus,
            "NJ-minus" => PcSet::NJMinus,
            "NJP" => PcSet::NJP { delta: g("delta")? },
            "L-last-plus" => PcSet::NJPlusXDelta { x: g("x")?, delta: g("delta")? },
            "L-last-minus" => PcSet::NJMinusXDelta { x: g("x")?, delta: g("delta")? },
            other => return Err(Error::UnknownSetId(other.into())),
        })
    }
}

pub fn display_set_membership_pc(h: &PcElem, set: &PcSet) -> bool {
    let i = G::i();
    let pq_circle = |delta: &G| h.p.square() + h.q.square() == delta.square();
    match set {
        PcSet::NJPlus => !h.x.is_zero() && h.y == i * h.x.clone() && h.p.is_zero() && h.q.is_zero(),
        PcSet::NJMinus => !h.x.is_zero() && h.y == -(i * h.x.clone()) && h.p.is_zero() && h.q.is_zero(),
        PcSet::NJP { delta } => h.x.is_zero() && h.y.is_zero() && pq_circle(delta),
        PcSet::NJPlusXDelta { delta, .. } => h.y == i * h.x.clone() && pq_circle(delta),
        PcSet::NJMinusXDelta { delta, .. } => h.y == -(i * h.x.clone()) && pq_circle(delta),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> G {
        G::from_ints(re, im)
    }

    fn h(x: G, y: G, p: G, q: G) -> PcElem {
        PcElem::new(x, y, p, q)
    }

    #[test]
    fn action_examples() {
        let k = KcElem::new(G::real(rat(3, 5)), G::real(rat(4, 5)), g(0, 0)).unwrap();
        let out = kc_action(&k, &h(g(0, 0), g(0, 0), g(1, 0), g(0, 0)));
        assert_eq!(out, h(g(0, 0), g(0, 0), G::real(rat(3, 5)), G::real(rat(-4, 5))));
        let v = h(g(1, 2), g(0, -3), g(5, 1), g(2, 2));
        assert_eq!(kc_action(&KcElem::identity(), &v), v);
        assert!(KcElem::new(g(1, 0), g(1, 0), g(0, 0)).is_err());
    }

    #[test]
    fn action_is_conjugation() {
        let k = KcElem::new(G::real(rat(3, 5)), G::real(rat(4, 5)), g(2, 1)).unwrap();
        let v = h(g(1, 2), g(0, -3), g(5, 1), g(2, 2));
        let m = k.embed();
        let conj = &(&m * &v.embed()) * &m.inverse().unwrap();
        assert_eq!(conj, kc_action(&k, &v).embed());
    }

    #[test]
    fn weight_examples() {
        let w = weight_coords(&h(g(1, 0), g(0, 1), g(0, 0), g(0, 0)));
        assert_eq!(w.as_array(), [g(0, 0), g(2, 0), g(0, 0), g(0, 0)]);
        let w = weight_coords(&h(g(0, 0), g(0, 0), g(1, 0), g(0, 0)));
        assert_eq!(w.as_array(), [g(0, 0), g(0, 0), g(1, 0), g(1, 0)]);
    }

    #[test]
    fn orbit_examples() {
        let a = h(g(1, 0), g(0, 1), g(1, 0), g(0, 0));
        let b = h(g(1, 0), g(0, 1), g(-1, 0), g(0, 0));
        assert_eq!(same_kc_orbit(&a, &b), Some(KcWitness::U(g(-1, 0))));
        let c = h(g(2, 0), g(0, 2), g(1, 0), g(0, 0));
        assert_eq!(same_kc_orbit(&a, &c), None);
        assert!(display_set_membership_pc(
            &c,
            &PcSet::NJPlusXDelta { x: g(1, 0), delta: g(1, 0) }
        ));
        assert!(display_set_membership_pc(&a, &PcSet::NJPlusXDelta { x: g(1, 0), delta: g(1, 0) }));
        // weight-two only: u^2 = 4
        let d = h(g(1, 0), g(0, 1), g(0, 0), g(0, 0));
        let e = h(g(4, 0), g(0, 4), g(0, 0), g(0, 0));
        assert_eq!(same_kc_orbit(&d, &e), Some(KcWitness::USquared(g(4, 0))));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_kc(&h(g(3, 1), g(-1, 3), g(0, 0), g(0, 0))), KcOrbitLabel::NJPlus);
        assert_eq!(classify_kc(&h(g(3, 1), g(1, -3), g(0, 0), g(0, 0))), KcOrbitLabel::NJMinus);
        let two = classify_kc(&h(g(0, 0), g(0, 0), g(2, 0), g(0, 0)));
        assert_eq!(two, KcOrbitLabel::NJP { delta_sq: g(4, 0) });
        assert_eq!(classify_kc(&h(g(0, 0), g(0, 0), G::real(rat(6, 5)), G::real(rat(8, 5)))), two);
        assert_eq!(classify_kc(&h(g(0, 0), g(0, 0), g(1, 0), g(0, 1))), KcOrbitLabel::PIsotropic { sign: 1 });
        assert_eq!(classify_kc(&PcElem::zero()), KcOrbitLabel::Zero);
        assert!(!classify_kc(&h(g(1, 0), g(0, 0), g(0, 0), g(0, 0))).is_nilpotent());
    }

    #[test]
    fn nilpotency() {
        assert!(is_nilpotent_pc(&h(g(1, 0), g(0, 1), g(5, 0), g(7, 0))));
        assert!(!is_nilpotent_pc(&h(g(1, 0), g(0, 0), g(0, 0), g(0, 0))));
    }

    #[test]
    fn set_ids() {
        assert_eq!(
            PcSet::from_json(&json!({"set": "NJP", "delta": "2"})).unwrap(),
            PcSet::NJP { delta: g(2, 0) }
        );
        assert!(matches!(PcSet::from_json(&json!({"set": "nope"})), Err(Error::UnknownSetId(_))));
        assert!(display_set_membership_pc(&h(g(0, 0), g(0, 0), g(2, 0), g(0, 0)), &PcSet::NJP { delta: g(2, 0) }));
    }

    #[test]
    fn json_round_trip() {
        let v = h(g(1, 2), G::real(rat(-1, 3)), g(0, 0), g(0, 1));
        let back: PcElem = serde_json::from_value(v.to_json()).unwrap();
        assert_eq!(back, v);
        let k = KcElem::new(G::real(rat(3, 5)), G::real(rat(4, 5)), g(0, 0)).unwrap();
        let back: KcElem = serde_json::from_value(k.to_json()).unwrap();
        assert_eq!(back, k);
        let bad = json!({"a": "1", "b": "1", "kappa": "0"});
        assert!(serde_json::from_value::<KcElem>(bad).is_err());
    }

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_g() -> impl Strategy<Value = G> {
        (arb_rat(), arb_rat()).prop_map(|(a, b)| G::new(a, b))
    }

    /// Mostly sparse so that every zero pattern shows up.
    fn arb_sparse_g() -> impl Strategy<Value = G> {
        prop_oneof![Just(G::zero()), arb_g()]
    }

    fn arb_pc() -> impl Strategy<Value = PcElem> {
        (arb_sparse_g(), arb_sparse_g(), arb_sparse_g(), arb_sparse_g()).prop_map(|(a, b, c, d)| {
            WeightCoords::from_array([a, b, c, d]).to_pc()
        })
    }

    fn arb_u() -> impl Strategy<Value = G> {
        arb_g().prop_filter("u != 0", |u| !u.is_zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn equivariance(v in arb_pc(), u in arb_u(), kappa in arb_g()) {
            let k = KcElem::from_u(&u, kappa).unwrap();
            let lhs = weight_coords(&kc_action(&k, &v));
            prop_assert_eq!(lhs, weight_coords(&v).scale_by(&u).unwrap());
            prop_assert_eq!(weight_coords(&v).to_pc(), v.clone());
            let k0 = KcElem::from_u(&u, G::zero()).unwrap();
            prop_assert_eq!(kc_action(&k, &v), kc_action(&k0, &v));
            prop_assert_eq!(is_nilpotent_pc(&v), is_nilpotent_pc_by_matrix(&v));
        }

        #[test]
        fn orbit_decision_matches_labels(v in arb_pc(), w in arb_pc(), u in arb_u()) {
            let k = KcElem::from_u(&u, G::zero()).unwrap();
            let moved = kc_action(&k, &v);
            prop_assert!(same_kc_orbit(&v, &moved).is_some());
            prop_assert_eq!(classify_kc(&moved), classify_kc(&v));
            prop_assert_eq!(same_kc_orbit(&v, &w).is_some(), classify_kc(&v) == classify_kc(&w));
            if let Some(el) = same_kc_orbit(&v, &moved).and_then(|wit| wit.element()) {
                prop_assert_eq!(kc_action(&el, &v), moved);
            }
        }
    }
}
