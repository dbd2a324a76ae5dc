use jacobi_orbits::audit::{Sampler, SamplerConfig};
use jacobi_orbits::jacobi::{basis, JacobiAlgElem, JacobiGroupElem};
use jacobi_orbits::real_orbits::{
    canonical_rep, classify, display_set_membership, exact_rep, witness, DisplaySet, OrbitLabel, WitnessGroup,
};
use jacobi_orbits::scalar::{int, rat, Rational};
use proptest::prelude::*;

fn g(c: [Rational; 6]) -> JacobiAlgElem {
    JacobiAlgElem::from_coords(c)
}

fn gi(c: [i64; 6]) -> JacobiAlgElem {
    g(c.map(int))
}

#[test]
fn classify_examples() {
    assert_eq!(classify(&gi([0, 0, 0, 0, 0, 5])), OrbitLabel::PiR { alpha: int(5) });
    let sp = g([int(0), rat(1, 2), rat(1, 2), int(1), int(0), int(0)]);
    assert_eq!(classify(&sp), OrbitLabel::Cone { sign_z: 1, f: int(-1) });
    let sr = g([int(0), rat(1, 2), rat(1, 2), int(0), int(0), int(3)]);
    assert_eq!(classify(&sr), OrbitLabel::PiSR { rho: int(3) });
    let tr = g([int(0), rat(1, 2), rat(-1, 2), int(0), int(0), int(1)]);
    assert_eq!(classify(&tr), OrbitLabel::PiTR { rho: int(1) });
    let xr = basis::x() + basis::r();
    assert_eq!(classify(&xr), OrbitLabel::Hyperbolic { c1: int(1), c: int(1) });
    assert_eq!(classify(&basis::p()), OrbitLabel::PiP);
    assert_eq!(classify(&basis::q()), OrbitLabel::PiP);
    assert_eq!(classify(&JacobiAlgElem::zero()), OrbitLabel::Zero);
    assert_eq!(classify(&basis::z()), OrbitLabel::Elliptic { c1: int(-1), sheet: 1, c: int(0) });
}

#[test]
fn canonical_representatives() {
    assert_eq!(exact_rep(&OrbitLabel::PiS), basis::s());
    assert_eq!(exact_rep(&OrbitLabel::Cone { sign_z: 1, f: int(-1) }), basis::s() + basis::p());
    let irrational = canonical_rep(&OrbitLabel::Cone { sign_z: 1, f: int(-2) });
    assert!(!irrational.is_exact());
    let beta = irrational.to_f64().p;
    assert!((beta - 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn witness_examples() {
    let w = witness(&basis::q()).unwrap();
    assert_eq!(w.group, WitnessGroup::Exact(JacobiGroupElem::sl2(int(0), int(-1), int(1), int(0))));
    assert_eq!(witness(&basis::s()).unwrap().group, WitnessGroup::Exact(JacobiGroupElem::identity()));

    let v = gi([0, 1, 1, 1, 0, -2]);
    let w = witness(&v).unwrap();
    assert_eq!(w.label, OrbitLabel::Cone { sign_z: 1, f: int(-2) });
    assert!(!w.is_exact());
    assert!(w.residual <= 1e-9);
}

#[test]
fn shift_in_q_stays_in_orbit() {
    let g0 = JacobiGroupElem::heisenberg(int(-1), int(0), int(0));
    let v = gi([0, 1, 1, 1, 2, 0]);
    assert_eq!(v.adjoint(&g0), gi([0, 1, 1, 1, 0, -2]));
    assert_eq!(classify(&v), classify(&v.adjoint(&g0)));
}

#[test]
fn display_memberships() {
    assert!(!display_set_membership(&basis::q(), &DisplaySet::PiP));
    assert!(display_set_membership(&(basis::p() + basis::q()), &DisplaySet::PiP));
    assert!(display_set_membership(&basis::s(), &DisplaySet::PiS { alpha: int(1) }));
    assert!(display_set_membership(&gi([3, 4, 5, 7, -2, 9]), &DisplaySet::NilpotentCone));
}

#[test]
fn label_json_round_trip() {
    let labels = [
        OrbitLabel::Zero,
        OrbitLabel::PiR { alpha: rat(-3, 2) },
        OrbitLabel::PiP,
        OrbitLabel::PiS,
        OrbitLabel::PiT,
        OrbitLabel::PiSR { rho: int(3) },
        OrbitLabel::PiTR { rho: rat(1, 7) },
        OrbitLabel::Cone { sign_z: -1, f: int(5) },
        OrbitLabel::Hyperbolic { c1: int(2), c: rat(-1, 3) },
        OrbitLabel::Elliptic { c1: int(-4), sheet: -1, c: int(0) },
    ];
    for l in labels {
        assert_eq!(OrbitLabel::from_json(&l.to_json()).unwrap(), l);
        l.validate().unwrap();
    }
    assert!(OrbitLabel::from_json(&serde_json::json!({"family": "Cone", "params": {"sign_z": 1, "f": "2"}})).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn label_is_conjugation_invariant(seed in any::<u64>()) {
        let cfg = SamplerConfig::new(seed, 1, 6).unwrap();
        let mut s = Sampler::new(&cfg, 1, 0);
        let v = s.alg();
        let h = s.group();
        prop_assert_eq!(classify(&v.adjoint(&h)), classify(&v));
    }

    #[test]
    fn witness_reproduces_input(seed in any::<u64>()) {
        let cfg = SamplerConfig::new(seed, 1, 6).unwrap();
        let mut s = Sampler::new(&cfg, 2, 0);
        let label = s.orbit_label(seed as usize);
        let v = canonical_rep(&label);
        if let Some(rep) = v.exact() {
            let v = rep.adjoint(&s.group());
            let w = witness(&v).unwrap();
            prop_assert_eq!(&w.label, &label);
            if let WitnessGroup::Exact(g0) = &w.group {
                prop_assert_eq!(w.rep.exact().unwrap().adjoint(g0), v);
            } else {
                prop_assert!(w.residual <= 1e-9);
            }
        }
    }

    #[test]
    fn orbit_dimension_matches_label(seed in any::<u64>()) {
        let cfg = SamplerConfig::new(seed, 1, 6).unwrap();
        let mut s = Sampler::new(&cfg, 3, 0);
        let v = s.nilpotent_alg();
        prop_assert_eq!(v.orbit_dimension(), classify(&v).expected_dimension());
    }
}
