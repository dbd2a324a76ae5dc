use jacobi_orbits::audit::{Sampler, SamplerConfig};
use jacobi_orbits::complex_orbits::{
    classify_kc, display_set_membership_pc, is_nilpotent_pc, kc_action, same_kc_orbit, weight_coords, KcElem,
    KcOrbitLabel, PcElem, PcSet,
};
use jacobi_orbits::scalar::{int, rat, GaussRational as G, Rational};
use jacobi_orbits::sl2::{
    cayley, classify_pc, classify_sl2, is_ks_complex, is_ks_real, ks_image_of, ks_map, sl2_triple_through,
    mats as basis, validate_sl2_triple, PcSl2Label, Sl2Elem, Sl2OrbitLabel, Sl2Triple,
};
use proptest::prelude::*;

fn g(re: i64, im: i64) -> G {
    G::from_ints(re, im)
}

fn h(x: G, y: G, p: G, q: G) -> PcElem {
    PcElem::new(x, y, p, q)
}

fn xst() -> Sl2Triple<Rational> {
    Sl2Triple::new(basis::x(), basis::s(), basis::t())
}

#[test]
fn sl2_classification() {
    let s = Sl2Elem::new(int(0), rat(1, 2), rat(1, 2));
    assert_eq!(classify_sl2(&s), Sl2OrbitLabel::NPlus);
    assert_eq!(classify_sl2(&Sl2Elem::from_ints(0, 0, 1)), Sl2OrbitLabel::Elliptic { c1: int(-1), sheet: 1 });
    assert_eq!(classify_sl2(&Sl2Elem::from_ints(1, 0, 0)), Sl2OrbitLabel::Hyperbolic { c1: int(1) });
}

#[test]
fn triples() {
    assert!(validate_sl2_triple(&xst()));
    assert!(is_ks_real(&xst()));
    assert!(!validate_sl2_triple(&Sl2Triple::new(basis::x(), basis::s(), basis::s())));
    assert!(!is_ks_real(&xst().scale(&int(2))));
    let theta = Sl2Triple::new(basis::h_theta(), basis::y_theta(), basis::x_theta());
    assert!(validate_sl2_triple(&theta) && is_ks_complex(&theta));
    assert_eq!(cayley(&xst()).unwrap(), theta);
    let negated = xst().scale(&int(-1));
    assert!(!validate_sl2_triple(&negated));
    assert!(cayley(&negated).is_err());
    assert!(!validate_sl2_triple(&theta.scale(&g(-1, 0))));
}

#[test]
fn triple_through_nilpotents() {
    let s = Sl2Elem::new(int(0), rat(1, 2), rat(1, 2));
    assert_eq!(sl2_triple_through(&s).unwrap(), xst());
    let t = Sl2Elem::new(int(0), rat(1, 2), rat(-1, 2));
    let want = Sl2Triple::new(basis::x().scale(&int(-1)), basis::t(), basis::s());
    assert_eq!(sl2_triple_through(&t).unwrap(), want);
    let two_s = Sl2Triple::new(basis::x(), basis::s().scale(&int(2)), basis::t().scale(&rat(1, 2)));
    assert_eq!(sl2_triple_through(&s.scale(&int(2))).unwrap(), two_s);
    assert!(sl2_triple_through(&Sl2Elem::from_ints(1, 0, 0)).is_err());
}

#[test]
fn ks_correspondence() {
    assert_eq!(classify_pc(&g(1, 0), &g(0, 1)), PcSl2Label::NThetaPlus);
    assert_eq!(classify_pc(&g(1, 0), &g(0, -1)), PcSl2Label::NThetaMinus);
    assert_eq!(classify_pc(&g(0, 0), &g(0, 0)), PcSl2Label::Zero);
    assert_eq!(ks_map(&Sl2OrbitLabel::NPlus).unwrap(), PcSl2Label::NThetaMinus);
    assert_eq!(ks_map(&Sl2OrbitLabel::NMinus).unwrap(), PcSl2Label::NThetaPlus);
    assert_eq!(ks_map(&Sl2OrbitLabel::Zero).unwrap(), PcSl2Label::Zero);
    assert!(ks_map(&Sl2OrbitLabel::Hyperbolic { c1: int(1) }).is_err());
}

#[test]
fn kc_examples() {
    let k = KcElem::new(G::real(rat(3, 5)), G::real(rat(4, 5)), g(0, 0)).unwrap();
    let moved = kc_action(&k, &h(g(0, 0), g(0, 0), g(1, 0), g(0, 0)));
    assert_eq!(moved, h(g(0, 0), g(0, 0), G::real(rat(3, 5)), G::real(rat(-4, 5))));
    assert_eq!(weight_coords(&h(g(1, 0), g(0, 1), g(0, 0), g(0, 0))).as_array(), [g(0, 0), g(2, 0), g(0, 0), g(0, 0)]);
    assert!(is_nilpotent_pc(&h(g(1, 0), g(0, 1), g(5, 0), g(7, 0))));
    assert!(!is_nilpotent_pc(&h(g(1, 0), g(0, 0), g(0, 0), g(0, 0))));
}

#[test]
fn kc_orbits() {
    let a = h(g(1, 0), g(0, 1), g(1, 0), g(0, 0));
    assert!(same_kc_orbit(&a, &h(g(1, 0), g(0, 1), g(-1, 0), g(0, 0))).is_some());
    let b = h(g(2, 0), g(0, 2), g(1, 0), g(0, 0));
    assert!(same_kc_orbit(&a, &b).is_none());
    let set = PcSet::NJPlusXDelta { x: g(1, 0), delta: g(1, 0) };
    assert!(display_set_membership_pc(&a, &set) && display_set_membership_pc(&b, &set));
    assert!(display_set_membership_pc(&h(g(0, 0), g(0, 0), g(3, 0), g(0, 0)), &PcSet::NJP { delta: g(3, 0) }));

    assert_eq!(classify_kc(&h(g(2, 0), g(0, 2), g(0, 0), g(0, 0))), KcOrbitLabel::NJPlus);
    assert_eq!(classify_kc(&h(g(0, 0), g(0, 0), g(0, 0), g(2, 0))), KcOrbitLabel::NJP { delta_sq: g(4, 0) });
    assert_eq!(classify_kc(&h(g(0, 0), g(0, 0), g(1, 0), g(0, 1))), KcOrbitLabel::PIsotropic { sign: 1 });
}

fn sampler(seed: u64) -> Sampler {
    Sampler::new(&SamplerConfig::new(seed, 1, 6).unwrap(), 11, 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ks_map_commutes_with_cayley(seed in any::<u64>()) {
        let e = sampler(seed).nilpotent_sl2();
        prop_assert_eq!(ks_image_of(&e).unwrap(), ks_map(&classify_sl2(&e)).unwrap());
    }

    #[test]
    fn weight_coords_are_equivariant(seed in any::<u64>()) {
        let mut s = sampler(seed);
        let (k, v) = (s.kc(), s.pc());
        let lhs = weight_coords(&kc_action(&k, &v));
        prop_assert_eq!(lhs, weight_coords(&v).scale_by(&k.u()).unwrap());
        prop_assert_eq!(weight_coords(&v).to_pc(), v);
    }

    #[test]
    fn kc_label_and_orbit_test_agree(seed in any::<u64>()) {
        let mut s = sampler(seed);
        let (k, v) = (s.kc(), s.nilpotent_pc());
        let w = kc_action(&k, &v);
        prop_assert_eq!(classify_kc(&w), classify_kc(&v));
        prop_assert!(same_kc_orbit(&v, &w).is_some());
        prop_assert_eq!(is_nilpotent_pc(&v), true);
    }
}
