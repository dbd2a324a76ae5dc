use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::group::JacobiGroupElem;
use crate::error::{Error, Result};
use crate::scalar::{Field, GaussRational, OrderedField, Rational};

/// A point `(tau, zeta)` of the Siegel-Jacobi space `H x C`, in floating
/// point. `Im(tau) > 0`.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct SiegelJacobiPoint {
    #[serde(with = "complex_serde")]
    pub tau: Complex64,
    #[serde(with = "complex_serde")]
    pub zeta: Complex64,
}

impl SiegelJacobiPoint {
    pub fn new(tau: Complex64, zeta: Complex64) -> Option<Self> {
        (tau.im > 0.0).then_some(SiegelJacobiPoint { tau, zeta })
    }

    /// The base point `(i, 0)`.
    pub fn base() -> Self {
        SiegelJacobiPoint { tau: Complex64::i(), zeta: Complex64::new(0.0, 0.0) }
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (self.tau - other.tau).norm().max((self.zeta - other.zeta).norm())
    }
}

/// `(M, (l, m, k)) . (tau, zeta) = (M<tau>, (zeta + l tau + m) / (c tau + d))`.
pub fn sj_action<T: OrderedField>(g: &JacobiGroupElem<T>, pt: &SiegelJacobiPoint) -> SiegelJacobiPoint {
    let f = g.map(|e| e.to_f64());
    let tau = pt.tau;
    let denom = tau * f.c + f.d;
    SiegelJacobiPoint {
        tau: (tau * f.a + f.b) / denom,
        zeta: (pt.zeta + tau * f.lambda + f.mu) / denom,
    }
}

/// Exact-input convenience wrapper.
pub fn sj_action_exact(g: &JacobiGroupElem<Rational>, pt: &SiegelJacobiPoint) -> SiegelJacobiPoint {
    sj_action(g, pt)
}

/// Exact action on a point with Gaussian-rational coordinates, returned as
/// `(tau, zeta)`. Fails only when `c tau + d = 0`, which cannot happen for
/// `Im(tau) > 0`.
pub fn sj_action_gauss(
    g: &JacobiGroupElem<Rational>,
    tau: &GaussRational,
    zeta: &GaussRational,
) -> Result<(GaussRational, GaussRational)> {
    let e = |q: &Rational| GaussRational::real(q.clone());
    let denom = tau.clone() * e(&g.c) + e(&g.d);
    let inv = denom.checked_inv().ok_or(Error::DivisionByZero)?;
    Ok((
        (tau.clone() * e(&g.a) + e(&g.b)) * inv.clone(),
        (zeta.clone() + tau.clone() * e(&g.lambda) + e(&g.mu)) * inv,
    ))
}

mod complex_serde {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        Repr { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let r = Repr::deserialize(d)?;
        Ok(Complex64::new(r.re, r.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn identity_fixes_everything() {
        let pt = SiegelJacobiPoint::base();
        assert_eq!(sj_action(&JacobiGroupElem::<Rational>::identity(), &pt), pt);
    }

    #[test]
    fn heisenberg_translates_zeta() {
        let g = JacobiGroupElem::heisenberg(int(2), rat(-1, 2), int(7));
        let out = sj_action(&g, &SiegelJacobiPoint::base());
        assert!(out.distance(&SiegelJacobiPoint { tau: Complex64::i(), zeta: Complex64::new(-0.5, 2.0) }) < 1e-12);
    }

    #[test]
    fn rotations_with_center_fix_base_point() {
        // (3/5, 4/5; -4/5, 3/5) lies in SO(2).
        let k = JacobiGroupElem::new(rat(3, 5), rat(4, 5), rat(-4, 5), rat(3, 5), int(0), int(0), int(11)).unwrap();
        let out = sj_action(&k, &SiegelJacobiPoint::base());
        assert!(out.distance(&SiegelJacobiPoint::base()) < 1e-12);
    }

    #[test]
    fn action_is_compatible_with_group_law() {
        let g1 = JacobiGroupElem::new(int(2), int(1), int(1), int(1), int(1), int(-2), int(0)).unwrap();
        let g2 = JacobiGroupElem::new(int(1), int(3), int(0), int(1), rat(1, 2), int(1), int(5)).unwrap();
        let pt = SiegelJacobiPoint::new(Complex64::new(0.3, 1.7), Complex64::new(-1.0, 0.25)).unwrap();
        let lhs = sj_action(&g1, &sj_action(&g2, &pt));
        let rhs = sj_action(&g1.mul(&g2), &pt);
        assert!(lhs.distance(&rhs) < 1e-12);
        assert!(lhs.tau.im > 0.0);
    }
}
