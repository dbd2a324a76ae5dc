//! Seeded, height-bounded exact samplers.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex_orbits::{weight_coords, KcElem, PcElem, WeightCoords};
use crate::error::{Error, Result};
use crate::jacobi::{JacobiAlgElem, JacobiGroupElem};
use crate::real_orbits::OrbitLabel;
use crate::scalar::{int, rat, GaussRational, Rational};
use crate::sl2::Sl2Elem;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub trials: usize,
    /// Max numerator / denominator magnitude.
    pub height_bound: u32,
}

impl SamplerConfig {
    pub fn new(seed: u64, trials: usize, height_bound: u32) -> Result<Self> {
        if trials < 1 {
            return Err(Error::Parse("trials must be at least 1".into()));
        }
        if height_bound < 2 {
            return Err(Error::Parse("height bound must be at least 2".into()));
        }
        Ok(SamplerConfig { seed, trials, height_bound })
    }
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { seed: 42, trials: 1000, height_bound: 10 }
    }
}

/// FNV-1a, used to derive a per-claim stream from its id.
pub fn stream_id(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

pub struct Sampler {
    rng: ChaCha8Rng,
    h: i64,
}

impl Sampler {
    /// Independent stream for `(seed, stream, trial)`.
    pub fn new(cfg: &SamplerConfig, stream: u64, trial: u64) -> Self {
        let mut seed = [0u8; 32];
        seed[..8].copy_from_slice(&cfg.seed.to_le_bytes());
        seed[8..16].copy_from_slice(&stream.to_le_bytes());
        seed[16..24].copy_from_slice(&trial.to_le_bytes());
        Sampler { rng: ChaCha8Rng::from_seed(seed), h: i64::from(cfg.height_bound) }
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[self.rng.gen_range(0..xs.len())]
    }

    pub fn sign(&mut self) -> i8 {
        if self.rng.gen_bool(0.5) {
            1
        } else {
            -1
        }
    }

    pub fn rational(&mut self) -> Rational {
        let n = self.int_in(-self.h, self.h);
        let d = self.int_in(1, self.h);
        rat(n, d)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let q = self.rational();
            if !q.is_zero() {
                return q;
            }
        }
    }

    pub fn positive_rational(&mut self) -> Rational {
        self.nonzero_rational().abs()
    }

    /// Zero with probability `p`, else uniform.
    pub fn sparse_rational(&mut self, p: f64) -> Rational {
        if self.chance(p) {
            Rational::zero()
        } else {
            self.rational()
        }
    }

    /// `[[1,u],[0,1]] diag(t, 1/t) [[1,0],[l,1]]` with bounded `(lambda, mu, kappa)`.
    pub fn group(&mut self) -> JacobiGroupElem {
        let u = self.sparse_rational(0.1);
        let l = self.sparse_rational(0.1);
        let t = self.nonzero_rational() * Rational::from_integer(self.sign().into());
        let a = &t + &u * &l / &t;
        let b = &u / &t;
        let c = &l / &t;
        let d = t.recip();
        let (lambda, mu, kappa) = (self.sparse_rational(0.1), self.sparse_rational(0.1), self.rational());
        JacobiGroupElem::new(a, b, c, d, lambda, mu, kappa).expect("triangular product is unimodular")
    }

    /// Each coordinate zero with probability 1/4.
    pub fn alg(&mut self) -> JacobiAlgElem {
        JacobiAlgElem::from_coords(std::array::from_fn(|_| self.sparse_rational(0.25)))
    }

    /// Cone point `t (2ab, a^2 - b^2, s (a^2 + b^2))` with sign `s`; nonzero.
    pub fn cone_point(&mut self, s: i8) -> (Rational, Rational, Rational) {
        loop {
            let (a, b) = (self.sparse_rational(0.2), self.sparse_rational(0.2));
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let t = self.positive_rational();
            let z = (&a * &a + &b * &b) * int(i64::from(s));
            return (&t * int(2) * &a * &b, &t * (&a * &a - &b * &b), t * z);
        }
    }

    /// Nilpotent elements spread over all strata: `sl2 = 0`, `f = 0` with
    /// and without `rho = 0`, and generic cone points.
    pub fn nilpotent_alg(&mut self) -> JacobiAlgElem {
        match self.int_in(0, 5) {
            0 => {
                let (p, q, r) = (self.sparse_rational(0.4), self.sparse_rational(0.4), self.sparse_rational(0.3));
                JacobiAlgElem::new(int(0), int(0), int(0), p, q, r)
            }
            1 | 2 => {
                let s = self.sign();
                let rho = if self.chance(0.5) { Rational::zero() } else { self.nonzero_rational() };
                self.cone_f0(s, rho)
            }
            _ => {
                let s = self.sign();
                let (x, y, z) = self.cone_point(s);
                let (p, q, r) = (self.sparse_rational(0.2), self.sparse_rational(0.2), self.rational());
                JacobiAlgElem::new(x, y, z, p, q, r)
            }
        }
    }

    /// A cone point on sheet `s` with `f = 0` and the given `rho`.
    pub fn cone_f0(&mut self, s: i8, rho: Rational) -> JacobiAlgElem {
        let (x, y, z) = self.cone_point(s);
        let (u, w) = (&y + &z, &y - &z);
        // f = -(p u - q x)^2 / u when u != 0; f = q^2 w when u = 0
        let (p, q) = if !u.is_zero() {
            let q = self.sparse_rational(0.3);
            (&q * &x / &u, q)
        } else {
            (self.rational(), Rational::zero())
        };
        let r = if !u.is_zero() { &rho + &q * &q / &u } else { &rho - &p * &p / &w };
        JacobiAlgElem::new(x, y, z, p, q, r)
    }

    /// A random label of family `k mod 10` with exact parameters.
    pub fn orbit_label(&mut self, k: usize) -> OrbitLabel {
        match k % 10 {
            0 => OrbitLabel::Zero,
            1 => OrbitLabel::PiR { alpha: self.nonzero_rational() },
            2 => OrbitLabel::PiP,
            3 => OrbitLabel::PiS,
            4 => OrbitLabel::PiT,
            5 => OrbitLabel::PiSR { rho: self.nonzero_rational() },
            6 => OrbitLabel::PiTR { rho: self.nonzero_rational() },
            7 => {
                let s = self.sign();
                OrbitLabel::Cone { sign_z: s, f: -self.positive_rational() * int(i64::from(s)) }
            }
            8 => OrbitLabel::Hyperbolic { c1: self.positive_rational(), c: self.rational() },
            _ => OrbitLabel::Elliptic { c1: -self.positive_rational(), sheet: self.sign(), c: self.rational() },
        }
    }

    /// Nonzero nilpotent sl2 element on a random sheet.
    pub fn nilpotent_sl2(&mut self) -> Sl2Elem {
        let s = self.sign();
        let (x, y, z) = self.cone_point(s);
        Sl2Elem::new(x, y, z)
    }

    pub fn sl2_elem(&mut self) -> Sl2Elem {
        Sl2Elem::new(self.sparse_rational(0.2), self.sparse_rational(0.2), self.sparse_rational(0.2))
    }

    pub fn gauss(&mut self) -> GaussRational {
        GaussRational::new(self.sparse_rational(0.2), self.sparse_rational(0.2))
    }

    pub fn nonzero_gauss(&mut self) -> GaussRational {
        loop {
            let g = self.gauss();
            if !g.is_zero() {
                return g;
            }
        }
    }

    /// Gaussian rational with positive imaginary part.
    pub fn upper_half(&mut self) -> GaussRational {
        GaussRational::new(self.rational(), self.positive_rational())
    }

    /// Weight coordinates zero with probability 1/3 each.
    pub fn pc(&mut self) -> PcElem {
        let mut w = || if self.chance(1.0 / 3.0) { GaussRational::zero() } else { self.nonzero_gauss() };
        WeightCoords::from_array([w(), w(), w(), w()]).to_pc()
    }

    /// Nilpotent: one of `xi+`, `xi-` forced to zero.
    pub fn nilpotent_pc(&mut self) -> PcElem {
        let mut c = weight_coords(&self.pc()).as_array();
        let k = if self.chance(0.5) { 0 } else { 1 };
        c[k] = GaussRational::zero();
        WeightCoords::from_array(c).to_pc()
    }

    pub fn kc(&mut self) -> KcElem {
        let u = self.nonzero_gauss();
        let kappa = self.gauss();
        KcElem::from_u(&u, kappa).expect("u != 0 gives a unit-norm pair")
    }
}

/// The `stream_id`-th group element for this configuration.
pub fn sample_group(cfg: &SamplerConfig, stream_id: u64) -> JacobiGroupElem {
    Sampler::new(cfg, stream_id, 0).group()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular_and_deterministic() {
        let cfg = SamplerConfig::default();
        for s in 0..200 {
            let g = sample_group(&cfg, s);
            assert_eq!(g.det(), int(1));
            assert_eq!(g, sample_group(&cfg, s));
        }
    }

    #[test]
    fn sign_patterns_of_a_and_d() {
        let cfg = SamplerConfig::default();
        let mut seen = [0usize; 4];
        for s in 0..1000 {
            let g = sample_group(&cfg, s);
            if g.a.is_zero() || g.d.is_zero() {
                continue;
            }
            seen[usize::from(g.a.is_positive()) * 2 + usize::from(g.d.is_positive())] += 1;
        }
        assert!(seen.iter().all(|&n| n >= 1), "{seen:?}");
    }

    #[test]
    fn config_validation() {
        assert!(SamplerConfig::new(1, 0, 10).is_err());
        assert!(SamplerConfig::new(1, 10, 1).is_err());
    }

    #[test]
    fn f0_sampler_hits_rho() {
        let cfg = SamplerConfig::default();
        for t in 0..100 {
            let mut s = Sampler::new(&cfg, 7, t);
            let rho = s.rational();
            let v = s.cone_f0(if t % 2 == 0 { 1 } else { -1 }, rho.clone());
            assert!(v.f().is_zero());
            assert_eq!(v.rho(), Some(rho));
        }
    }
}
