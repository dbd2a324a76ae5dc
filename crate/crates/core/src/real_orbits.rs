//! Adjoint `G^J`-orbits in the Jacobi algebra.
//!
//! Every element is sorted into an [`OrbitLabel`] by exact sign and zero
//! tests on its invariants (`c1`, `f`, `I = f - c1 r`, `rho`, `sign z`). No
//! radicals are taken while labeling; they only appear when a representative
//! or a conjugating witness has to be materialized, and then only if the
//! radicand is not a rational square.
//!
//! Witnesses are built by normalization: the sl2 block is moved onto `S`,
//! `T`, `-S`, `X` or `Z` by an `SL(2)` element, and the Heisenberg part is then
//! cleared by explicit `(lambda, mu)` translations.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::jacobi::{basis, JacobiAlgElem, JacobiGroupElem};
use crate::scalar::{format_rational, int, parse_rational, rat, sign_of, OrderedField, Rational, ToJson};

/// Default residual bound for floating-point witnesses.
pub const WITNESS_TOL: f64 = 1e-9;

/// Identifier of an adjoint orbit. Parameters are exact invariants.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum OrbitLabel {
    Zero,
    /// `{alpha R^J}`, alpha != 0.
    PiR { alpha: Rational },
    PiP,
    PiS,
    PiT,
    /// Orbit of `S^J + rho R^J`, rho != 0.
    PiSR { rho: Rational },
    /// Orbit of `T^J + rho R^J`, rho != 0.
    PiTR { rho: Rational },
    /// Generic nilpotent orbit on the cone sheet `sign z`, with `f != 0` and
    /// `sign_z * f < 0`.
    Cone { sign_z: i8, f: Rational },
    /// `c1 > 0`; orbit of `sqrt(c1) X^J + c R^J`.
    Hyperbolic { c1: Rational, c: Rational },
    /// `c1 < 0`; orbit of `sheet * sqrt(-c1) Z^J + c R^J`.
    Elliptic { c1: Rational, sheet: i8, c: Rational },
}

impl OrbitLabel {
    pub fn family(&self) -> &'static str {
        match self {
            OrbitLabel::Zero => "Zero",
            OrbitLabel::PiR { .. } => "PiR",
            OrbitLabel::PiP => "PiP",
            OrbitLabel::PiS => "PiS",
            OrbitLabel::PiT => "PiT",
            OrbitLabel::PiSR { .. } => "PiS_R",
            OrbitLabel::PiTR { .. } => "PiT_R",
            OrbitLabel::Cone { .. } => "Cone",
            OrbitLabel::Hyperbolic { .. } => "Hyperbolic",
            OrbitLabel::Elliptic { .. } => "Elliptic",
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        !matches!(self, OrbitLabel::Hyperbolic { .. } | OrbitLabel::Elliptic { .. })
    }

    /// Checks the parameter constraints of each family.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Parse(format!("invalid {} label: {m}", self.family())));
        match self {
            OrbitLabel::PiR { alpha } if alpha.is_zero() => bad("alpha must be nonzero"),
            OrbitLabel::PiSR { rho } | OrbitLabel::PiTR { rho } if rho.is_zero() => {
                bad("rho must be nonzero")
            }
            OrbitLabel::Cone { sign_z, f } => {
                if sign_z.abs() != 1 {
                    bad("sign_z must be +1 or -1")
                } else if i16::from(*sign_z) * i16::from(sign_of(f)) >= 0 {
                    bad("need f != 0 with sign opposite to sign_z")
                } else {
                    Ok(())
                }
            }
            OrbitLabel::Hyperbolic { c1, .. } if !c1.is_positive() => bad("c1 must be positive"),
            OrbitLabel::Elliptic { c1, sheet, .. } => {
                if !c1.is_negative() {
                    bad("c1 must be negative")
                } else if sheet.abs() != 1 {
                    bad("sheet must be +1 or -1")
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Dimension of the orbit, read off from the family.
    pub fn expected_dimension(&self) -> usize {
        match self {
            OrbitLabel::Zero | OrbitLabel::PiR { .. } => 0,
            OrbitLabel::PiP
            | OrbitLabel::PiS
            | OrbitLabel::PiT
            | OrbitLabel::PiSR { .. }
            | OrbitLabel::PiTR { .. } => 3,
            OrbitLabel::Cone { .. } | OrbitLabel::Hyperbolic { .. } | OrbitLabel::Elliptic { .. } => 4,
        }
    }

    pub fn to_json(&self) -> Value {
        let r = |q: &Rational| Value::String(format_rational(q));
        let params = match self {
            OrbitLabel::Zero | OrbitLabel::PiP | OrbitLabel::PiS | OrbitLabel::PiT => json!({}),
            OrbitLabel::PiR { alpha } => json!({ "alpha": r(alpha) }),
            OrbitLabel::PiSR { rho } | OrbitLabel::PiTR { rho } => json!({ "rho": r(rho) }),
            OrbitLabel::Cone { sign_z, f } => json!({ "sign_z": sign_z, "f": r(f) }),
            OrbitLabel::Hyperbolic { c1, c } => json!({ "c1": r(c1), "c": r(c) }),
            OrbitLabel::Elliptic { c1, sheet, c } => json!({ "c1": r(c1), "sheet": sheet, "c": r(c) }),
        };
        json!({ "family": self.family(), "params": params })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let family = v
            .get("family")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("label needs a string \"family\"".into()))?;
        let empty = Map::new();
        let params = v.get("params").and_then(Value::as_object).unwrap_or(&empty);
        let q = |key: &str| -> Result<Rational> {
            let s = params
                .get(key)
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse(format!("{family} label needs string param {key:?}")))?;
            parse_rational(s)
        };
        let sign = |key: &str| -> Result<i8> {
            params
                .get(key)
                .and_then(Value::as_i64)
                .filter(|s| s.abs() == 1)
                .map(|s| s as i8)
                .ok_or_else(|| Error::Parse(format!("{family} label needs param {key:?} = 1 or -1")))
        };
        let label = match family {
            "Zero" => OrbitLabel::Zero,
            "PiR" => OrbitLabel::PiR { alpha: q("alpha")? },
            "PiP" => OrbitLabel::PiP,
            "PiS" => OrbitLabel::PiS,
            "PiT" => OrbitLabel::PiT,
            "PiS_R" => OrbitLabel::PiSR { rho: q("rho")? },
            "PiT_R" => OrbitLabel::PiTR { rho: q("rho")? },
            "Cone" => OrbitLabel::Cone { sign_z: sign("sign_z")?, f: q("f")? },
            "Hyperbolic" => OrbitLabel::Hyperbolic { c1: q("c1")?, c: q("c")? },
            "Elliptic" => OrbitLabel::Elliptic { c1: q("c1")?, sheet: sign("sheet")?, c: q("c")? },
            other => return Err(Error::Parse(format!("unknown orbit family {other:?}"))),
        };
        label.validate()?;
        Ok(label)
    }
}

/// Renders labels in the `Π(...)` notation, e.g. `Π(S^J + 3R^J)`.
impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitLabel::Zero => write!(f, "{{0}}"),
            OrbitLabel::PiR { alpha } => write!(f, "Π({}R^J)", coeff(alpha)),
            OrbitLabel::PiP => write!(f, "Π(P^J)"),
            OrbitLabel::PiS => write!(f, "Π(S^J)"),
            OrbitLabel::PiT => write!(f, "Π(T^J)"),
            OrbitLabel::PiSR { rho } => write!(f, "Π(S^J {})", signed_term(rho, "R^J")),
            OrbitLabel::PiTR { rho } => write!(f, "Π(T^J {})", signed_term(rho, "R^J")),
            OrbitLabel::Cone { sign_z, f: fv } if *sign_z > 0 => {
                write!(f, "Π(S^J + βP^J), β² = {}", -fv.clone())
            }
            OrbitLabel::Cone { f: fv, .. } => write!(f, "Π(-S^J - βP^J), β² = {fv}"),
            OrbitLabel::Hyperbolic { c1, c } => {
                write!(f, "Π(αX^J {}), α² = {c1}", signed_term(c, "R^J"))
            }
            OrbitLabel::Elliptic { c1, sheet, c } => {
                let s = if *sheet > 0 { "" } else { "-" };
                write!(f, "Π({s}αZ^J {}), α² = {}", signed_term(c, "R^J"), -c1.clone())
            }
        }
    }
}

fn coeff(q: &Rational) -> String {
    if q.is_one() {
        String::new()
    } else if *q == -Rational::one() {
        "-".into()
    } else if q.is_integer() {
        q.to_string()
    } else {
        format!("({q})")
    }
}

fn signed_term(q: &Rational, basis: &str) -> String {
    if q.is_negative() {
        format!("- {}{basis}", coeff(&-q.clone()))
    } else {
        format!("+ {}{basis}", coeff(q))
    }
}

/// Total classification by exact sign tests.
pub fn classify(v: &JacobiAlgElem) -> OrbitLabel {
    let c1 = v.c1();
    if !c1.is_zero() {
        let c = -v.i_invariant() / &c1;
        return if c1.is_positive() {
            OrbitLabel::Hyperbolic { c1, c }
        } else {
            OrbitLabel::Elliptic { c1, sheet: sign_of(&v.z), c }
        };
    }
    if v.sl2_is_zero() {
        return if !v.p.is_zero() || !v.q.is_zero() {
            OrbitLabel::PiP
        } else if v.r.is_zero() {
            OrbitLabel::Zero
        } else {
            OrbitLabel::PiR { alpha: v.r.clone() }
        };
    }
    // On the nonzero cone z cannot vanish.
    let sign_z = sign_of(&v.z);
    let f = v.f();
    if !f.is_zero() {
        return OrbitLabel::Cone { sign_z, f };
    }
    let rho = v.rho().expect("rho is defined on the nonzero cone with f = 0");
    match (sign_z > 0, rho.is_zero()) {
        (true, true) => OrbitLabel::PiS,
        (false, true) => OrbitLabel::PiT,
        (true, false) => OrbitLabel::PiSR { rho },
        (false, false) => OrbitLabel::PiTR { rho },
    }
}

/// A representative, exact when no irrational square root is needed.
#[derive(Clone, PartialEq, Debug)]
pub enum Representative {
    Exact(JacobiAlgElem),
    Approx(JacobiAlgElem<f64>),
}

impl Representative {
    pub fn is_exact(&self) -> bool {
        matches!(self, Representative::Exact(_))
    }

    pub fn to_f64(&self) -> JacobiAlgElem<f64> {
        match self {
            Representative::Exact(v) => v.to_f64(),
            Representative::Approx(v) => v.clone(),
        }
    }

    pub fn exact(&self) -> Option<&JacobiAlgElem> {
        match self {
            Representative::Exact(v) => Some(v),
            Representative::Approx(_) => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Representative::Exact(v) => v.to_json(),
            Representative::Approx(v) => v.to_json(),
        }
    }
}

/// The named representative of each family, computed in `T`. Returns `None`
/// only when `T` lacks a needed square root.
fn rep_in<T: OrderedField>(label: &OrbitLabel, lift: &impl Fn(&Rational) -> T) -> Option<JacobiAlgElem<T>> {
    let g = |v: JacobiAlgElem| v.map(lift);
    let r_times = |k: &Rational| g(basis::r()).scale(&lift(k));
    Some(match label {
        OrbitLabel::Zero => JacobiAlgElem::zero(),
        OrbitLabel::PiR { alpha } => r_times(alpha),
        OrbitLabel::PiP => g(basis::p()),
        OrbitLabel::PiS => g(basis::s()),
        OrbitLabel::PiT => g(basis::t()),
        OrbitLabel::PiSR { rho } => g(basis::s()) + r_times(rho),
        OrbitLabel::PiTR { rho } => g(basis::t()) + r_times(rho),
        OrbitLabel::Cone { sign_z, f } => {
            let beta = lift(&(-f * Rational::from(int(i64::from(*sign_z))))).sqrt_opt()?;
            let v = g(basis::s()) + g(basis::p()).scale(&beta);
            if *sign_z > 0 {
                v
            } else {
                -v
            }
        }
        OrbitLabel::Hyperbolic { c1, c } => {
            let alpha = lift(c1).sqrt_opt()?;
            g(basis::x()).scale(&alpha) + r_times(c)
        }
        OrbitLabel::Elliptic { c1, sheet, c } => {
            let alpha = lift(&-c1.clone()).sqrt_opt()?;
            let alpha = if *sheet > 0 { alpha } else { -alpha };
            g(basis::z()).scale(&alpha) + r_times(c)
        }
    })
}

/// `0, alpha R, P, S, T, S + rho R, T + rho R, +-(S + beta P), alpha X + c R,
/// +-alpha Z + c R`; exact iff the needed square root is rational.
pub fn canonical_rep(label: &OrbitLabel) -> Representative {
    match rep_in(label, &|q: &Rational| q.clone()) {
        Some(v) => Representative::Exact(v),
        None => Representative::Approx(
            rep_in(label, &|q: &Rational| q.to_f64()).expect("f64 square roots of nonnegative values exist"),
        ),
    }
}

/// A representative with rational coordinates for every label, using
/// rescaled forms where [`canonical_rep`] would need a square root:
/// `(-f) S + P` for `Cone(+1, f)`, `-(f S + P)` for `Cone(-1, f)`, and the
/// hyperboloid point `G(0, s(1+c1)/2, s(1-c1)/2, 0, 0, c)` for the
/// semisimple families.
pub fn exact_rep(label: &OrbitLabel) -> JacobiAlgElem {
    if let Representative::Exact(v) = canonical_rep(label) {
        return v;
    }
    let half = rat(1, 2);
    match label {
        OrbitLabel::Cone { sign_z, f } if *sign_z > 0 => basis::s().scale(&-f.clone()) + basis::p(),
        OrbitLabel::Cone { f, .. } => -(basis::s().scale(f) + basis::p()),
        OrbitLabel::Hyperbolic { c1, c } => hyperboloid_point(c1, 1, c, &half),
        OrbitLabel::Elliptic { c1, sheet, c } => hyperboloid_point(c1, *sheet, c, &half),
        _ => unreachable!("other families always have exact canonical representatives"),
    }
}

fn hyperboloid_point(c1: &Rational, s: i8, c: &Rational, half: &Rational) -> JacobiAlgElem {
    let s = int(i64::from(s));
    let one = Rational::one();
    JacobiAlgElem::new(
        Rational::zero(),
        &s * (&one + c1) * half,
        &s * (&one - c1) * half,
        Rational::zero(),
        Rational::zero(),
        c.clone(),
    )
}

/// A group element `g` with `adjoint(g, canonical_rep(label)) = v`.
#[derive(Clone, PartialEq, Debug)]
pub enum WitnessGroup {
    Exact(JacobiGroupElem),
    Approx(JacobiGroupElem<f64>),
}

#[derive(Clone, PartialEq, Debug)]
pub struct Witness {
    pub label: OrbitLabel,
    pub rep: Representative,
    pub group: WitnessGroup,
    /// Max-abs coordinate residual divided by `max(1, |v|_inf)`; 0 for
    /// exact witnesses.
    pub residual: f64,
}

impl Witness {
    pub fn is_exact(&self) -> bool {
        matches!(self.group, WitnessGroup::Exact(_))
    }

    pub fn exact_group(&self) -> Option<&JacobiGroupElem> {
        match &self.group {
            WitnessGroup::Exact(g) => Some(g),
            WitnessGroup::Approx(_) => None,
        }
    }

    /// Group-element JSON plus `exact` and `residual`.
    pub fn to_json(&self) -> Value {
        let mut obj = match &self.group {
            WitnessGroup::Exact(g) => g.to_json(),
            WitnessGroup::Approx(g) => g.to_json(),
        };
        let map = obj.as_object_mut().expect("group JSON is an object");
        map.insert("exact".into(), Value::Bool(self.is_exact()));
        map.insert("residual".into(), json!(self.residual));
        obj
    }
}

pub fn witness(v: &JacobiAlgElem) -> Result<Witness> {
    witness_with_tol(v, WITNESS_TOL)
}

/// Builds a conjugating witness; exact when every square root taken along
/// the way is rational, otherwise in `f64` with the relative residual checked
/// against `tol`.
pub fn witness_with_tol(v: &JacobiAlgElem, tol: f64) -> Result<Witness> {
    let label = classify(v);
    let rep = canonical_rep(&label);
    if let Representative::Exact(rep_exact) = &rep {
        if let Some(g) = solve(v, &label, &|q: &Rational| q.clone()) {
            if &rep_exact.adjoint(&g) != v {
                return Err(Error::InternalInconsistency(f64::INFINITY));
            }
            return Ok(Witness { label, rep, group: WitnessGroup::Exact(g), residual: 0.0 });
        }
    }
    let g = solve(v, &label, &|q: &Rational| q.to_f64()).ok_or(Error::InternalInconsistency(f64::NAN))?;
    let vf = v.to_f64();
    let scale = vf.coords().iter().fold(1.0_f64, |m, c| m.max(c.abs()));
    let residual = max_abs_diff(&rep.to_f64().adjoint(&g), &vf) / scale;
    if !(residual <= tol) {
        return Err(Error::InternalInconsistency(residual));
    }
    Ok(Witness { label, rep, group: WitnessGroup::Approx(g), residual })
}

pub fn max_abs_diff(a: &JacobiAlgElem<f64>, b: &JacobiAlgElem<f64>) -> f64 {
    a.coords()
        .iter()
        .zip(b.coords().iter())
        .map(|(u, w)| (u - w).abs())
        .fold(0.0, f64::max)
}

/// Finds `g` (in `T`) with `adjoint(g, rep_in(label)) = v`. All branch
/// decisions are taken on the exact input.
fn solve<T: OrderedField>(
    v: &JacobiAlgElem,
    label: &OrbitLabel,
    lift: &impl Fn(&Rational) -> T,
) -> Option<JacobiGroupElem<T>> {
    let vt = v.map(lift);
    let o = || T::zero();
    let i = || T::one();
    match label {
        OrbitLabel::Zero | OrbitLabel::PiR { .. } => Some(JacobiGroupElem::identity()),
        OrbitLabel::PiP => {
            // adjoint(g, P) = (0,0,0, d, -b, -2 mu); fix a, c by ad - bc = ap + cq = 1.
            let (a, c) = if !v.p.is_zero() {
                (vt.p.checked_inv()?, o())
            } else {
                (o(), vt.q.checked_inv()?)
            };
            let mu = -vt.r.clone() * T::one().checked_div(&(i() + i())).ok()?;
            Some(JacobiGroupElem::from_parts(a, -vt.q.clone(), c, vt.p.clone(), o(), mu, o()))
        }
        OrbitLabel::PiS | OrbitLabel::PiSR { .. } | OrbitLabel::Cone { sign_z: 1, .. } => {
            normalize_nilpotent(v, &vt, NilBase::S).and_then(|n| n.inverse().ok())
        }
        OrbitLabel::PiT | OrbitLabel::PiTR { .. } => {
            normalize_nilpotent(v, &vt, NilBase::T).and_then(|n| n.inverse().ok())
        }
        OrbitLabel::Cone { .. } => normalize_nilpotent(v, &vt, NilBase::MinusS).and_then(|n| n.inverse().ok()),
        OrbitLabel::Hyperbolic { c1, .. } => {
            let alpha = lift(c1).sqrt_opt()?;
            let m = hyperbolic_frame(v, &vt, alpha)?;
            Some(clear_heisenberg(&vt, m))
        }
        OrbitLabel::Elliptic { c1, sheet, .. } => {
            let alpha = lift(&-c1.clone()).sqrt_opt()?;
            let s_alpha = if *sheet > 0 { alpha } else { -alpha };
            let m = elliptic_frame(&vt, s_alpha)?;
            Some(clear_heisenberg(&vt, m))
        }
    }
}

#[derive(Clone, Copy)]
enum NilBase {
    S,
    T,
    MinusS,
}

/// Returns `n` with `adjoint(n, v)` equal to the family representative.
fn normalize_nilpotent<T: OrderedField>(
    v: &JacobiAlgElem,
    vt: &JacobiAlgElem<T>,
    base: NilBase,
) -> Option<JacobiGroupElem<T>> {
    let o = || T::zero();
    let (x, u, w) = (vt.x.clone(), vt.upper(), vt.lower());
    // m with m . base . m^-1 = sl2 block of v
    let m = match base {
        // m S m^-1 = [[-ac, a^2], [-c^2, ac]]
        NilBase::S if !v.upper().is_zero() => {
            let a = u.sqrt_opt()?;
            let c = -x.checked_div(&a).ok()?;
            let d = a.checked_inv()?;
            JacobiGroupElem::sl2(a, o(), c, d)
        }
        NilBase::S => {
            let c = (-w).sqrt_opt()?;
            let b = -c.checked_inv()?;
            JacobiGroupElem::sl2(o(), b, c, o())
        }
        // m T m^-1 = [[bd, -b^2], [d^2, -bd]]
        NilBase::T if !v.lower().is_zero() => {
            let d = w.sqrt_opt()?;
            let b = x.checked_div(&d).ok()?;
            let a = d.checked_inv()?;
            JacobiGroupElem::sl2(a, b, o(), d)
        }
        NilBase::T => {
            let b = (-u).sqrt_opt()?;
            let c = -b.checked_inv()?;
            JacobiGroupElem::sl2(o(), b, c, o())
        }
        // m (-S) m^-1 = [[ac, -a^2], [c^2, -ac]]
        NilBase::MinusS if !v.upper().is_zero() => {
            let a = (-u).sqrt_opt()?;
            let c = x.checked_div(&a).ok()?;
            let d = a.checked_inv()?;
            JacobiGroupElem::sl2(a, o(), c, d)
        }
        NilBase::MinusS => {
            let c = w.sqrt_opt()?;
            let b = -c.checked_inv()?;
            JacobiGroupElem::sl2(o(), b, c, o())
        }
    };
    let mut n = m.inverse().ok()?;
    let v1 = vt.adjoint(&n);
    let two = T::one() + T::one();

    // Clear the coordinate that the base's sl2 block lets a translation reach.
    let h = match base {
        // q -> q + lambda
        NilBase::S => JacobiGroupElem::heisenberg(-v1.q.clone(), o(), o()),
        // p -> p + mu
        NilBase::T => JacobiGroupElem::heisenberg(o(), -v1.p.clone(), o()),
        // q -> q - lambda
        NilBase::MinusS => JacobiGroupElem::heisenberg(v1.q.clone(), o(), o()),
    };
    n = h.mul(&n);
    let v2 = vt.adjoint(&n);

    let (lead, wanted_sign) = match base {
        NilBase::S => (v2.p.clone(), 1),
        NilBase::MinusS => (v2.p.clone(), -1),
        NilBase::T => return Some(n),
    };
    if lead.sign() == 0 {
        return Some(n);
    }
    if lead.sign() != wanted_sign {
        let minus_one = JacobiGroupElem::sl2(-T::one(), o(), o(), -T::one());
        n = minus_one.mul(&n);
    }
    // With p != 0 the translation by mu moves r by -2 p mu.
    let v3 = vt.adjoint(&n);
    let mu = v3.r.checked_div(&(two * v3.p.clone())).ok()?;
    n = JacobiGroupElem::heisenberg(o(), mu, o()).mul(&n);
    Some(n)
}

/// `m` in `SL(2)` with `m (alpha X) m^-1` equal to the sl2 block of `v`.
fn hyperbolic_frame<T: OrderedField>(
    v: &JacobiAlgElem,
    vt: &JacobiAlgElem<T>,
    alpha: T,
) -> Option<JacobiGroupElem<T>> {
    let (x, u, w) = (vt.x.clone(), vt.upper(), vt.lower());
    let u_zero = v.upper().is_zero();
    // Eigenvectors for +alpha and -alpha; the second candidate is used when
    // the first one vanishes (u = 0 and x = +-alpha).
    let plus = if u_zero && v.x.is_positive() {
        (alpha.clone() + x.clone(), w.clone())
    } else {
        (u.clone(), alpha.clone() - x.clone())
    };
    let minus = if u_zero && v.x.is_negative() {
        (x.clone() - alpha.clone(), w)
    } else {
        (u, -alpha - x)
    };
    let det = plus.0.clone() * minus.1.clone() - plus.1.clone() * minus.0.clone();
    let k = det.checked_inv()?;
    Some(JacobiGroupElem::sl2(
        plus.0 * k.clone(),
        minus.0,
        plus.1 * k,
        minus.1,
    ))
}

/// `m` in `SL(2)` with `m (s_alpha Z) m^-1` equal to the sl2 block of `v`.
fn elliptic_frame<T: OrderedField>(vt: &JacobiAlgElem<T>, s_alpha: T) -> Option<JacobiGroupElem<T>> {
    // J = X / s_alpha squares to -1; columns e1 and -J e1, rescaled to det 1.
    let j11 = vt.x.checked_div(&s_alpha).ok()?;
    let j21 = vt.lower().checked_div(&s_alpha).ok()?;
    let det = -j21.clone();
    let k = det.sqrt_opt()?.checked_inv()?;
    Some(JacobiGroupElem::sl2(k.clone(), -j11 * k.clone(), T::zero(), -j21 * k))
}

/// Given `m` placing the sl2 block, appends the translation that produces
/// the `(p, q)` of `v`. Requires `c1 != 0`.
fn clear_heisenberg<T: OrderedField>(vt: &JacobiAlgElem<T>, m: JacobiGroupElem<T>) -> JacobiGroupElem<T> {
    let (x, u, w) = (vt.x.clone(), vt.upper(), vt.lower());
    let (p, q) = (vt.p.clone(), vt.q.clone());
    // [[x, w], [u, -x]] (lambda, mu) = (p, q); determinant -c1.
    let det = -(x.clone() * x.clone()) - u.clone() * w.clone();
    let lambda = (-(p.clone() * x.clone()) - w * q.clone())
        .checked_div(&det)
        .expect("semisimple elements have c1 != 0");
    let mu = (x * q - u * p).checked_div(&det).expect("semisimple elements have c1 != 0");
    JacobiGroupElem::heisenberg(lambda, mu, T::zero()).mul(&m)
}

/// Displayed orbit-set descriptions, evaluated as
/// literal predicates on coordinates.
#[derive(Clone, PartialEq, Debug)]
pub enum DisplaySet {
    /// `x^2 + y^2 - z^2 = 0`
    NilpotentCone,
    /// `c1 = alpha^2, f = alpha^2 r`
    PiX { alpha: Rational },
    /// `c1 = -alpha^2, f = -alpha^2 r`
    PiZ { alpha: Rational },
    /// `G(0,0,0,p,q,r)` with `pq != 0`
    PiP,
    /// `{alpha R^J}`
    PiR { alpha: Rational },
    /// `c1 = 0, z/alpha > 0, f = 0`, with `r` determined by the rest
    /// (read as `rho = 0`).
    PiS { alpha: Rational },
    /// `c1 = 0, z/alpha < 0, f = 0`, `rho = 0`.
    PiT { alpha: Rational },
    /// `c1 = 0, z/alpha > 0, f = -alpha^3 beta^2`
    PiSP { alpha: Rational, beta: Rational },
}

impl DisplaySet {
    pub fn id(&self) -> &'static str {
        match self {
            DisplaySet::NilpotentCone => "nilpotent-cone",
            DisplaySet::PiX { .. } => "L3.3-PiX",
            DisplaySet::PiZ { .. } => "L3.3-PiZ",
            DisplaySet::PiP => "L3.3-PiP",
            DisplaySet::PiR { .. } => "L3.3-PiR",
            DisplaySet::PiS { .. } => "L3.5-PiS",
            DisplaySet::PiT { .. } => "L3.5-PiT",
            DisplaySet::PiSP { .. } => "L3.5-PiSP",
        }
    }

    /// Parses `{"set": id, "alpha": .., "beta": ..}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let id = v
            .get("set")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("set needs a string \"set\" id".into()))?;
        let q = |key: &str| -> Result<Rational> {
            let s = v
                .get(key)
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse(format!("set {id} needs string param {key:?}")))?;
            let q = parse_rational(s)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("set {id}: {key} must be nonzero")));
            }
            Ok(q)
        };
        Ok(match id {
            "nilpotent-cone" => DisplaySet::NilpotentCone,
            "L3.3-PiX" => DisplaySet::PiX { alpha: q("alpha")? },
            "L3.3-PiZ" => DisplaySet::PiZ { alpha: q("alpha")? },
            "L3.3-PiP" => DisplaySet::PiP,
            "L3.3-PiR" => DisplaySet::PiR { alpha: q("alpha")? },
            "L3.5-PiS" => DisplaySet::PiS { alpha: q("alpha")? },
            "L3.5-PiT" => DisplaySet::PiT { alpha: q("alpha")? },
            "L3.5-PiSP" => DisplaySet::PiSP { alpha: q("alpha")?, beta: q("beta")? },
            other => return Err(Error::UnknownSetId(other.into())),
        })
    }
}

pub fn display_set_membership(v: &JacobiAlgElem, set: &DisplaySet) -> bool {
    let c1 = v.c1();
    let f = v.f();
    let z_over = |alpha: &Rational| sign_of(&v.z) * sign_of(alpha);
    match set {
        DisplaySet::NilpotentCone => c1.is_zero(),
        DisplaySet::PiX { alpha } => {
            let a2 = alpha * alpha;
            c1 == a2 && f == &a2 * &v.r
        }
        DisplaySet::PiZ { alpha } => {
            let a2 = alpha * alpha;
            c1 == -a2.clone() && f == -(&a2 * &v.r)
        }
        DisplaySet::PiP => v.sl2_is_zero() && !(&v.p * &v.q).is_zero(),
        DisplaySet::PiR { alpha } => *v == basis::r().scale(alpha),
        DisplaySet::PiS { alpha } => {
            c1.is_zero() && z_over(alpha) > 0 && f.is_zero() && v.rho() == Some(Rational::zero())
        }
        DisplaySet::PiT { alpha } => {
            c1.is_zero() && z_over(alpha) < 0 && f.is_zero() && v.rho() == Some(Rational::zero())
        }
        DisplaySet::PiSP { alpha, beta } => {
            c1.is_zero() && z_over(alpha) > 0 && f == -(alpha * alpha * alpha * beta * beta)
        }
    }
}

/// The invariant tuple that separates labels: `(c1, I, f, sign z, rho)`.
pub fn invariant_key(v: &JacobiAlgElem) -> (Rational, Rational, Rational, i8, Option<Rational>) {
    (v.c1(), v.i_invariant(), v.f(), sign_of(&v.z), v.rho())
}

impl ToJson for OrbitLabel {
    fn to_json(&self) -> Value {
        OrbitLabel::to_json(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g6(c: [i64; 6]) -> JacobiAlgElem {
        JacobiAlgElem::from_coords(c.map(int))
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&g6([0, 0, 0, 0, 0, 5])), OrbitLabel::PiR { alpha: int(5) });
        let sp = JacobiAlgElem::new(int(0), rat(1, 2), rat(1, 2), int(1), int(0), int(0));
        assert_eq!(classify(&sp), OrbitLabel::Cone { sign_z: 1, f: int(-1) });
        let s3r = JacobiAlgElem::new(int(0), rat(1, 2), rat(1, 2), int(0), int(0), int(3));
        assert_eq!(classify(&s3r), OrbitLabel::PiSR { rho: int(3) });
        let t1r = JacobiAlgElem::new(int(0), rat(1, 2), rat(-1, 2), int(0), int(0), int(1));
        assert_eq!(classify(&t1r), OrbitLabel::PiTR { rho: int(1) });
        assert_eq!(classify(&(basis::x() + basis::r())), OrbitLabel::Hyperbolic { c1: int(1), c: int(1) });
        assert_eq!(classify(&basis::z()), OrbitLabel::Elliptic { c1: int(-1), sheet: 1, c: int(0) });
        assert_eq!(classify(&-basis::z()), OrbitLabel::Elliptic { c1: int(-1), sheet: -1, c: int(0) });
        assert_eq!(classify(&JacobiAlgElem::zero()), OrbitLabel::Zero);
        assert_eq!(classify(&basis::q()), OrbitLabel::PiP);
        assert_eq!(classify(&basis::s()), OrbitLabel::PiS);
        assert_eq!(classify(&basis::t()), OrbitLabel::PiT);
    }

    #[test]
    fn canonical_reps() {
        assert_eq!(canonical_rep(&OrbitLabel::PiS), Representative::Exact(basis::s()));
        let cone = OrbitLabel::Cone { sign_z: 1, f: int(-1) };
        let sp = JacobiAlgElem::new(int(0), rat(1, 2), rat(1, 2), int(1), int(0), int(0));
        assert_eq!(canonical_rep(&cone), Representative::Exact(sp));
        let irr = OrbitLabel::Cone { sign_z: 1, f: int(-2) };
        match canonical_rep(&irr) {
            Representative::Approx(v) => {
                assert!((v.p - 2f64.sqrt()).abs() < 1e-15);
                assert_eq!(v.y, 0.5);
            }
            other => panic!("expected float representative, got {other:?}"),
        }
    }

    #[test]
    fn exact_reps_classify_back() {
        let labels = [
            OrbitLabel::Cone { sign_z: 1, f: int(-2) },
            OrbitLabel::Cone { sign_z: -1, f: rat(3, 7) },
            OrbitLabel::Hyperbolic { c1: int(2), c: rat(-1, 3) },
            OrbitLabel::Elliptic { c1: int(-3), sheet: 1, c: int(4) },
            OrbitLabel::Elliptic { c1: rat(-1, 5), sheet: -1, c: int(0) },
        ];
        for l in labels {
            assert_eq!(classify(&exact_rep(&l)), l);
        }
    }

    #[test]
    fn witnesses() {
        let w = witness(&basis::q()).unwrap();
        let g = w.exact_group().unwrap();
        assert_eq!((g.a.clone(), g.b.clone(), g.c.clone(), g.d.clone()), (int(0), int(-1), int(1), int(0)));
        assert_eq!((g.lambda.clone(), g.mu.clone()), (int(0), int(0)));

        let w = witness(&basis::s()).unwrap();
        assert_eq!(w.exact_group().unwrap(), &JacobiGroupElem::identity());

        let v = g6([0, 2, 2, 1, 3, -2]);
        let w = witness(&v).unwrap();
        assert!(w.is_exact());
        assert_eq!(w.rep.exact().unwrap().adjoint(w.exact_group().unwrap()), v);
    }

    #[test]
    fn float_witness_for_irrational_radicand() {
        // y + z = 2 forces a = sqrt 2.
        let v = JacobiAlgElem::new(int(0), int(1), int(1), int(0), int(0), int(0));
        let w = witness(&v).unwrap();
        assert_eq!(w.label, OrbitLabel::PiS);
        assert!(!w.is_exact());
        assert!(w.residual <= WITNESS_TOL);
    }

    #[test]
    fn witness_json_shape() {
        let w = witness(&basis::q()).unwrap();
        let j = w.to_json();
        assert_eq!(j["exact"], Value::Bool(true));
        assert_eq!(j["b"], Value::String("-1".into()));
        assert_eq!(j["residual"], json!(0.0));
    }

    #[test]
    fn display_sets() {
        assert!(!display_set_membership(&basis::q(), &DisplaySet::PiP));
        assert_eq!(classify(&basis::q()), classify(&basis::p()));
        assert!(display_set_membership(&basis::s(), &DisplaySet::PiS { alpha: int(1) }));
        assert!(!display_set_membership(&basis::s(), &DisplaySet::PiT { alpha: int(1) }));
        assert!(display_set_membership(&basis::s(), &DisplaySet::PiT { alpha: int(-1) }));
        assert!(display_set_membership(&basis::z(), &DisplaySet::PiZ { alpha: int(1) }));
        assert!(display_set_membership(&-basis::z(), &DisplaySet::PiZ { alpha: int(1) }));
        let err = DisplaySet::from_json(&json!({"set": "L9.9-nope"})).unwrap_err();
        assert_eq!(err, Error::UnknownSetId("L9.9-nope".into()));
        assert_eq!(
            DisplaySet::from_json(&json!({"set": "L3.5-PiSP", "alpha": "1", "beta": "2"})).unwrap(),
            DisplaySet::PiSP { alpha: int(1), beta: int(2) }
        );
    }

    #[test]
    fn label_json_round_trip_and_text() {
        let l = OrbitLabel::PiSR { rho: int(3) };
        assert_eq!(l.to_json(), json!({"family": "PiS_R", "params": {"rho": "3"}}));
        assert_eq!(OrbitLabel::from_json(&l.to_json()).unwrap(), l);
        assert_eq!(l.to_string(), "Π(S^J + 3R^J)");
        assert_eq!(OrbitLabel::PiTR { rho: rat(-1, 2) }.to_string(), "Π(T^J - (1/2)R^J)");
        assert_eq!(OrbitLabel::PiR { alpha: int(5) }.to_string(), "Π(5R^J)");
        let bad = json!({"family": "Cone", "params": {"sign_z": 1, "f": "2"}});
        assert!(OrbitLabel::from_json(&bad).is_err());
        let e = OrbitLabel::Elliptic { c1: int(-1), sheet: -1, c: int(0) };
        assert_eq!(OrbitLabel::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn dimensions_match_families() {
        let labels = [
            OrbitLabel::Zero,
            OrbitLabel::PiR { alpha: int(2) },
            OrbitLabel::PiP,
            OrbitLabel::PiS,
            OrbitLabel::PiT,
            OrbitLabel::PiSR { rho: int(1) },
            OrbitLabel::PiTR { rho: int(-1) },
            OrbitLabel::Cone { sign_z: 1, f: int(-2) },
            OrbitLabel::Cone { sign_z: -1, f: int(5) },
            OrbitLabel::Hyperbolic { c1: int(3), c: int(1) },
            OrbitLabel::Elliptic { c1: int(-2), sheet: -1, c: int(1) },
        ];
        for l in labels {
            assert_eq!(exact_rep(&l).orbit_dimension(), l.expected_dimension(), "{l}");
        }
    }
}
