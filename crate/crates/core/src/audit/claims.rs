//! Real-side and sl2 claim checks.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::{Claim, Ctx};
use crate::jacobi::{basis, sj_action_gauss, JacobiAlgElem, JacobiGroupElem};
use crate::real_orbits::{
    classify, display_set_membership, exact_rep, invariant_key, witness, DisplaySet, OrbitLabel, WitnessGroup,
    WITNESS_TOL,
};
use crate::scalar::{int, sign_of, Rational, ToJson};
use crate::sl2::{
    cayley, classify_sl2, is_ks_real, ks_image_of, ks_map, mats, sl2_triple_through, validate_sl2_triple, Sl2Elem,
    Sl2OrbitLabel, Sl2Triple,
};

/// Sampled counterexamples decide the status.
pub(super) fn verdict(ce: Vec<Value>) -> (Vec<Value>, bool) {
    let flagged = !ce.is_empty();
    (ce, flagged)
}

/// Constructed evidence always flags; sampled counterexamples are appended.
pub(super) fn flag_with(mut fixed: Vec<Value>, sampled: Vec<Value>) -> (Vec<Value>, bool) {
    fixed.extend(sampled);
    let flagged = !fixed.is_empty();
    (fixed, flagged)
}

fn el(v: &JacobiAlgElem) -> Value {
    v.to_json()
}

fn conj_json(g: &JacobiGroupElem, v: &JacobiAlgElem) -> Value {
    json!({ "g": g.to_json(), "v": el(v) })
}

fn listed_nilpotent(l: &OrbitLabel) -> bool {
    matches!(
        l,
        OrbitLabel::Zero
            | OrbitLabel::PiR { .. }
            | OrbitLabel::PiP
            | OrbitLabel::PiS
            | OrbitLabel::PiT
            | OrbitLabel::PiSR { .. }
            | OrbitLabel::Cone { .. }
    )
}

type OrbitKey = ((Rational, Rational, Rational, i8, Option<Rational>), usize, Option<Rational>);

fn orbit_key(v: &JacobiAlgElem) -> OrbitKey {
    let dim = v.orbit_dimension();
    (invariant_key(v), dim, (dim == 0).then(|| v.r.clone()))
}

fn embedding_homomorphism(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, _| {
        let (g1, g2) = (s.group(), s.group());
        let mul_ok = g1.mul(&g2).embed() == &g1.embed() * &g2.embed();
        let inv_ok = g1.embed().inverse().map(|m| m == g1.inv().embed()).unwrap_or(false);
        (!(mul_ok && inv_ok)).then(|| json!({ "g1": g1.to_json(), "g2": g2.to_json() }))
    }))
}

fn siegel_jacobi_action(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, _| {
        let (g1, g2) = (s.group(), s.group());
        let (tau, zeta) = (s.upper_half(), s.gauss());
        let direct = sj_action_gauss(&g1.mul(&g2), &tau, &zeta).ok()?;
        let (t2, z2) = sj_action_gauss(&g2, &tau, &zeta).ok()?;
        let nested = sj_action_gauss(&g1, &t2, &z2).ok()?;
        let ok = direct == nested && direct.0.im.is_positive();
        (!ok).then(|| json!({ "g1": g1.to_json(), "g2": g2.to_json(), "tau": tau.to_json(), "zeta": zeta.to_json() }))
    }))
}

fn power_identity(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, _| {
        let v = if s.chance(0.3) { s.nilpotent_alg() } else { s.alg() };
        let bad = (1..=4).find(|&k| !v.power_identity_check(k))?;
        Some(json!({ "v": el(&v), "k": bad }))
    }))
}

fn adjoint_closed_form(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, _| {
        let (g, v) = (s.group(), s.alg());
        let m = g.embed();
        let conj = m.inverse().map(|mi| &(&m * &v.embed()) * &mi).ok();
        (conj.as_ref() != Some(&v.adjoint(&g).embed())).then(|| conj_json(&g, &v))
    }))
}

fn nilpotent_stable(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, _| {
        let (g, v) = (s.group(), s.nilpotent_alg());
        let w = v.adjoint(&g);
        (!(w.is_nilpotent() && w.is_nilpotent_by_matrix())).then(|| conj_json(&g, &v))
    }))
}

fn orbit_invariants(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, _| {
        let v = if s.chance(0.5) { s.nilpotent_alg() } else { s.alg() };
        let g = s.group();
        let w = v.adjoint(&g);
        let c1 = v.c1();
        let mut ok = c1 == w.c1() && v.i_invariant() == w.i_invariant() && v.rho() == w.rho();
        if c1.is_zero() {
            ok &= v.f() == w.f();
        }
        if !c1.is_positive() && !v.sl2_is_zero() {
            ok &= sign_of(&v.z) == sign_of(&w.z);
        }
        (!ok).then(|| conj_json(&g, &v))
    }))
}

fn cone_sign_law(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, _| {
        let v = s.nilpotent_alg();
        let ok = v.sl2_is_zero() || sign_of(&v.z) * sign_of(&v.f()) <= 0;
        (!ok).then(|| el(&v))
    }))
}

fn bracket_closed_form(ctx: &Ctx) -> (Vec<Value>, bool) {
    let mut fixed = Vec::new();
    if basis::x().bracket(&basis::y()) != basis::z().scale(&int(2)) {
        fixed.push(json!({ "pair": ["X", "Y"] }));
    }
    if basis::p().bracket(&basis::q()) != basis::r().scale(&int(2)) {
        fixed.push(json!({ "pair": ["P", "Q"] }));
    }
    let sampled = ctx.search(|s, _| {
        let (a, b) = (s.alg(), s.alg());
        (a.bracket(&b) != a.bracket_closed_form(&b)).then(|| json!({ "v1": el(&a), "v2": el(&b) }))
    });
    verdict(fixed.into_iter().chain(sampled).collect())
}

fn pi_x_display(ctx: &Ctx) -> (Vec<Value>, bool) {
    let mut fixed = Vec::new();
    if classify(&basis::x()) != classify(&basis::y()) {
        fixed.push(json!({ "X": el(&basis::x()), "Y": el(&basis::y()) }));
    }
    let sampled = ctx.search(|s, _| {
        let alpha = s.nonzero_rational();
        let a2 = &alpha * &alpha;
        let set = DisplaySet::PiX { alpha: alpha.clone() };
        let g = s.group();
        let orbit_pt = basis::x().scale(&alpha).adjoint(&g);
        if !display_set_membership(&orbit_pt, &set) {
            return Some(json!({ "alpha": alpha.to_json(), "orbit_point": el(&orbit_pt) }));
        }
        // display member: c1 = x^2 + uw = alpha^2, r = f / alpha^2
        let x = s.rational();
        let u = s.nonzero_rational();
        let w = (&a2 - &x * &x) / &u;
        let mut m = JacobiAlgElem::new(x, (&u + &w) / int(2), (&u - &w) / int(2), s.rational(), s.rational(), int(0));
        m.r = m.f() / &a2;
        let want = OrbitLabel::Hyperbolic { c1: a2, c: int(0) };
        (!display_set_membership(&m, &set) || classify(&m) != want)
            .then(|| json!({ "alpha": alpha.to_json(), "display_member": el(&m) }))
    });
    verdict(fixed.into_iter().chain(sampled).collect())
}

fn pi_z_sheet(ctx: &Ctx) -> (Vec<Value>, bool) {
    let minus_z = basis::z().scale(&int(-1));
    let fixed = vec![json!({
        "alpha": "1",
        "element": el(&minus_z),
        "in_display": display_set_membership(&minus_z, &DisplaySet::PiZ { alpha: int(1) }),
        "label": classify(&minus_z).to_json(),
        "orbit_label": classify(&basis::z()).to_json(),
    })];
    let sampled = ctx.search(|s, _| {
        let alpha = s.nonzero_rational();
        let set = DisplaySet::PiZ { alpha: alpha.clone() };
        let base = basis::z().scale(&alpha);
        let g = s.group();
        let orbit_pt = base.adjoint(&g);
        if !display_set_membership(&orbit_pt, &set) {
            return Some(json!({ "alpha": alpha.to_json(), "orbit_point": el(&orbit_pt) }));
        }
        let other = base.scale(&int(-1)).adjoint(&g);
        (display_set_membership(&other, &set) && classify(&other) != classify(&base))
            .then(|| json!({ "alpha": alpha.to_json(), "display_member": el(&other), "label": classify(&other).to_json() }))
    });
    flag_with(fixed, sampled)
}

fn pi_p_display(ctx: &Ctx) -> (Vec<Value>, bool) {
    let g = JacobiGroupElem::sl2(int(0), int(-1), int(1), int(0));
    let q = basis::p().adjoint(&g);
    let fixed = vec![json!({
        "g": g.to_json(),
        "v": el(&basis::p()),
        "image": el(&q),
        "image_label": classify(&q).to_json(),
        "in_display": display_set_membership(&q, &DisplaySet::PiP),
    })];
    let sampled = ctx.search(|s, _| {
        let alpha = s.nonzero_rational();
        let g = s.group();
        let w = basis::p().scale(&alpha).adjoint(&g);
        (!display_set_membership(&w, &DisplaySet::PiP))
            .then(|| json!({ "g": g.to_json(), "v": el(&basis::p().scale(&alpha)), "image": el(&w) }))
    });
    flag_with(fixed, sampled)
}

fn pi_r_fixed(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, _| {
        let alpha = s.nonzero_rational();
        let g = s.group();
        let v = basis::r().scale(&alpha);
        let ok = v.adjoint(&g) == v && display_set_membership(&v.adjoint(&g), &DisplaySet::PiR { alpha });
        (!ok).then(|| conj_json(&g, &v))
    }))
}

fn q_elimination(ctx: &Ctx) -> (Vec<Value>, bool) {
    let check = |p: Rational, q: Rational, r: Rational| -> Option<Value> {
        let v = JacobiAlgElem::new(int(0), int(1), int(1), p.clone(), q.clone(), r.clone());
        let g = JacobiGroupElem::heisenberg(-q.clone() / int(2), int(0), int(0));
        let want = JacobiAlgElem::new(int(0), int(1), int(1), p, int(0), &r - &q * &q / int(2));
        (v.adjoint(&g) != want).then(|| conj_json(&g, &v))
    };
    let fixed = check(int(3), int(2), int(5));
    let sampled = ctx.search(|s, _| check(s.rational(), s.rational(), s.rational()));
    verdict(fixed.into_iter().chain(sampled).collect())
}

/// Orbit points of `alpha * base` lie in the display, and display members
/// built with `rho = 0` on sheet `sheet * sign(alpha)` lie in the orbit.
fn nil_display(ctx: &Ctx, base: fn() -> JacobiAlgElem, sheet: i8, set: fn(Rational) -> DisplaySet) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, _| {
        let alpha = s.nonzero_rational();
        let d = set(alpha.clone());
        let b = base().scale(&alpha);
        let g = s.group();
        let orbit_pt = b.adjoint(&g);
        if !display_set_membership(&orbit_pt, &d) {
            return Some(json!({ "alpha": alpha.to_json(), "orbit_point": el(&orbit_pt) }));
        }
        let m = s.cone_f0(sheet * sign_of(&alpha), int(0));
        (!display_set_membership(&m, &d) || classify(&m) != classify(&b))
            .then(|| json!({ "alpha": alpha.to_json(), "display_member": el(&m) }))
    }))
}

fn pi_s_display(ctx: &Ctx) -> (Vec<Value>, bool) {
    nil_display(ctx, basis::s, 1, |alpha| DisplaySet::PiS { alpha })
}

fn pi_t_display(ctx: &Ctx) -> (Vec<Value>, bool) {
    nil_display(ctx, basis::t, -1, |alpha| DisplaySet::PiT { alpha })
}

fn s_plus_beta_p(alpha: &Rational, beta: &Rational) -> JacobiAlgElem {
    let mut v = basis::s();
    v.p = beta.clone();
    v.scale(alpha)
}

fn pi_sp_display(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, _| {
        let (alpha, beta) = (s.nonzero_rational(), s.nonzero_rational());
        let d = DisplaySet::PiSP { alpha: alpha.clone(), beta: beta.clone() };
        let b = s_plus_beta_p(&alpha, &beta);
        let g = s.group();
        let orbit_pt = b.adjoint(&g);
        let tag = json!({ "alpha": alpha.to_json(), "beta": beta.to_json() });
        if !display_set_membership(&orbit_pt, &d) {
            return Some(json!({ "params": tag, "orbit_point": el(&orbit_pt) }));
        }
        // u = alpha s^2, w = -x^2/u, (pu - qx)^2 = alpha^4 beta^2 s^2
        let (x, k) = (s.rational(), s.nonzero_rational());
        let u = &alpha * &k * &k;
        let w = -(&x * &x) / &u;
        let q = s.rational();
        let a2bk = &alpha * &alpha * &beta * &k * int(i64::from(s.sign()));
        let p = (&q * &x + a2bk) / &u;
        let m = JacobiAlgElem::new(x, (&u + &w) / int(2), (&u - &w) / int(2), p, q, s.rational());
        if !display_set_membership(&m, &d) || classify(&m) != classify(&b) {
            return Some(json!({ "params": tag, "display_member": el(&m) }));
        }
        // beta = t^3 gives the same orbit as alpha t^2 (S + P)
        let t = s.nonzero_rational();
        let cube = &t * &t * &t;
        let lhs = s_plus_beta_p(&alpha, &cube);
        let rhs = s_plus_beta_p(&(&alpha * &t * &t), &int(1));
        (classify(&lhs) != classify(&rhs)).then(|| json!({ "alpha": alpha.to_json(), "t": t.to_json() }))
    }))
}

fn completeness(ctx: &Ctx) -> (Vec<Value>, bool) {
    let v = basis::t() + basis::r();
    let fixed = if listed_nilpotent(&classify(&v)) {
        Vec::new()
    } else {
        vec![json!({ "element": el(&v), "label": classify(&v).to_json(), "invariants": v.invariants().to_json() })]
    };
    let sampled = ctx.search(|s, _| {
        let v = s.nilpotent_alg();
        let l = classify(&v);
        (!listed_nilpotent(&l)).then(|| json!({ "element": el(&v), "label": l.to_json() }))
    });
    flag_with(fixed, sampled)
}

const NILPOTENT_FAMILIES: [usize; 8] = [0, 1, 2, 3, 4, 5, 6, 7];

fn disjointness(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, _| {
        let k1 = *s.pick(&NILPOTENT_FAMILIES);
        let l1 = s.orbit_label(k1);
        let k2 = *s.pick(&NILPOTENT_FAMILIES);
        let l2 = if s.chance(0.3) { l1.clone() } else { s.orbit_label(k2) };
        let v1 = exact_rep(&l1).adjoint(&s.group());
        let v2 = exact_rep(&l2).adjoint(&s.group());
        ((orbit_key(&v1) == orbit_key(&v2)) != (l1 == l2)).then(|| json!({ "v1": el(&v1), "v2": el(&v2) }))
    }))
}

fn infinitely_many_real(_ctx: &Ctx) -> (Vec<Value>, bool) {
    let labels: Vec<OrbitLabel> = (1..=100)
        .map(|a| OrbitLabel::PiR { alpha: int(a) })
        .chain((1..=100).map(|r| OrbitLabel::PiSR { rho: int(r) }))
        .collect();
    let keys: BTreeSet<OrbitKey> = labels.iter().map(|l| orbit_key(&exact_rep(l))).collect();
    let roundtrip = labels.iter().all(|l| classify(&exact_rep(l)) == *l);
    if keys.len() == labels.len() && roundtrip {
        (vec![json!({ "families": ["PiR", "PiS_R"], "labels": labels.len(), "distinct_invariant_keys": keys.len() })], false)
    } else {
        (vec![json!({ "labels": labels.len(), "distinct_invariant_keys": keys.len(), "round_trip": roundtrip })], true)
    }
}

fn classifier_round_trip(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, t| {
        let l = s.orbit_label(t);
        let g = s.group();
        let v = exact_rep(&l).adjoint(&g);
        (classify(&v) != l).then(|| json!({ "label": l.to_json(), "g": g.to_json() }))
    }))
}

fn witness_soundness(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, t| {
        let l = s.orbit_label(t);
        let v = exact_rep(&l).adjoint(&s.group());
        let ok = match witness(&v) {
            Ok(w) => {
                w.label == l
                    && match (&w.group, w.rep.exact()) {
                        (WitnessGroup::Exact(g), Some(rep)) => rep.adjoint(g) == v,
                        _ => w.residual <= WITNESS_TOL,
                    }
            }
            Err(_) => false,
        };
        (!ok).then(|| el(&v))
    }))
}

fn orbit_dimensions(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, t| {
        let l = s.orbit_label(t);
        let v = exact_rep(&l).adjoint(&s.group());
        (v.orbit_dimension() != l.expected_dimension()).then(|| json!({ "label": l.to_json(), "v": el(&v) }))
    }))
}

pub(super) fn real_claims() -> Vec<Claim> {
    vec![
        Claim { id: "E-embedding-homomorphism", description: "embed(g1 g2) = embed(g1) embed(g2), embed(g^-1) = embed(g)^-1", run: embedding_homomorphism },
        Claim { id: "E-siegel-jacobi-action", description: "(g1 g2).(tau, zeta) = g1.(g2.(tau, zeta)), Im tau' > 0", run: siegel_jacobi_action },
        Claim { id: "L3.1-power-identity", description: "G^(2k) = (x^2+y^2-z^2)^(k-1) G^2, k = 1..4", run: power_identity },
        Claim { id: "L3.2-adjoint-closed-form", description: "closed-form Ad(g) v = g v g^-1", run: adjoint_closed_form },
        Claim { id: "L3.2-nilpotent-stable", description: "x^2+y^2-z^2 = 0 is stable under Ad", run: nilpotent_stable },
        Claim { id: "I-orbit-invariants", description: "c1, I = f - c1 r, rho invariant; f on c1 = 0; sign z on c1 <= 0", run: orbit_invariants },
        Claim { id: "R-cone-sign-law", description: "nilpotent, (x,y,z) != 0: sign(z) f <= 0", run: cone_sign_law },
        Claim { id: "S3-bracket-closed-form", description: "coordinate bracket = 4x4 commutator; [X,Y] = 2Z, [P,Q] = 2R", run: bracket_closed_form },
        Claim { id: "L3.3-PiX-display", description: "Pi(aX) = Pi(aY) = {c1 = a^2, f = a^2 r}", run: pi_x_display },
        Claim { id: "L3.3-PiZ-sheet", description: "Pi(aZ) = {c1 = -a^2, f = -a^2 r}", run: pi_z_sheet },
        Claim { id: "L3.3-PiP-display", description: "Pi(aP) = {G(0,0,0,p,q,r) : pq != 0}", run: pi_p_display },
        Claim { id: "L3.3-PiR-fixed", description: "Pi(aR) = {aR}", run: pi_r_fixed },
        Claim { id: "L3.4-q-elimination", description: "(I,(-q/2,0,0)) maps G(0,1,1,p,q,r) to G(0,1,1,p,0,r-q^2/2)", run: q_elimination },
        Claim { id: "L3.5-PiS-display", description: "Pi(aS) = {c1 = 0, z/a > 0, f = 0, rho = 0}", run: pi_s_display },
        Claim { id: "L3.5-PiT-display", description: "Pi(aT) = {c1 = 0, z/a < 0, f = 0, rho = 0}", run: pi_t_display },
        Claim { id: "L3.5-PiSP-display", description: "Pi(a(S+bP)) = {c1 = 0, z/a > 0, f = -a^3 b^2} = Pi(a|b|^(2/3)(S+P))", run: pi_sp_display },
        Claim { id: "T3.6-completeness", description: "nilpotents = {0} u Pi(S) u Pi(T) u Pi(P) u Pi(aR) u Pi(S+aR) u Pi(a(S+P))", run: completeness },
        Claim { id: "T3.6-disjointness", description: "distinct labels have distinct invariants (c1, I, f, sign z, rho, dim, r)", run: disjointness },
        Claim { id: "T3.6-infinitely-many", description: "PiR(a), PiS_R(rho) for a, rho = 1..100 pairwise non-conjugate", run: infinitely_many_real },
        Claim { id: "R-classifier-round-trip", description: "classify(Ad(g) rep(L)) = L", run: classifier_round_trip },
        Claim { id: "R-witness-soundness", description: "Ad(witness) rep = v exactly, or residual <= 1e-9", run: witness_soundness },
        Claim { id: "D-orbit-dimensions", description: "rank ad(v) = 0, 0, 3, 3, 3, 3, 3, 4, 4, 4 by family", run: orbit_dimensions },
    ]
}

fn xst() -> Sl2Triple<Rational> {
    Sl2Triple::new(mats::x(), mats::s(), mats::t())
}

fn s2_relations(ctx: &Ctx) -> (Vec<Value>, bool) {
    let mut fixed = Vec::new();
    let t = xst();
    if !(validate_sl2_triple(&t) && is_ks_real(&t)) {
        fixed.push(json!({ "triple": t.to_json() }));
    }
    let want = Sl2Triple::new(mats::h_theta(), mats::y_theta(), mats::x_theta());
    if cayley(&t).as_ref() != Ok(&want) {
        fixed.push(json!({ "cayley_of": t.to_json() }));
    }
    let sampled = ctx.search(|s, _| {
        let e = s.nilpotent_sl2();
        let ok = sl2_triple_through(&e).map(|t| validate_sl2_triple(&t)).unwrap_or(false);
        (!ok).then(|| e.to_json())
    });
    verdict(fixed.into_iter().chain(sampled).collect())
}

fn s2_ks_map(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, _| {
        let e = s.nilpotent_sl2();
        let label = classify_sl2(&e);
        (ks_image_of(&e).ok() != ks_map(&label).ok()).then(|| e.to_json())
    }))
}

fn three_nilpotent_orbits(ctx: &Ctx) -> (Vec<Value>, bool) {
    let labels = ctx.map_trials(ctx.cfg.trials, |s, _| {
        let e = if s.chance(0.05) {
            Sl2Elem::from_ints(0, 0, 0)
        } else {
            s.nilpotent_sl2()
        };
        (classify_sl2(&e), e)
    });
    let bad: Vec<Value> = labels
        .iter()
        .filter(|(l, _)| !matches!(l, Sl2OrbitLabel::Zero | Sl2OrbitLabel::NPlus | Sl2OrbitLabel::NMinus))
        .take(3)
        .map(|(_, e)| e.to_json())
        .collect();
    if !bad.is_empty() {
        return (bad, true);
    }
    let seen: BTreeSet<&str> = labels.iter().map(|(l, _)| l.family()).collect();
    let seen: Vec<&str> = seen.into_iter().collect();
    (vec![json!({ "labels_seen": seen })], false)
}

fn negated_triple(_ctx: &Ctx) -> (Vec<Value>, bool) {
    let minus = xst().scale(&int(-1));
    let image = Sl2Triple::new(mats::h_theta(), mats::y_theta(), mats::x_theta()).scale(&crate::scalar::GaussRational::from_ints(-1, 0));
    let mut ev = Vec::new();
    if !validate_sl2_triple(&minus) {
        ev.push(json!({
            "triple": minus.to_json(),
            "is_sl2_triple": false,
            "h_e_bracket": minus.h.commutator(&minus.e).to_json(),
            "two_e": minus.e.scale(&int(2)).to_json(),
        }));
    }
    if !validate_sl2_triple(&image) {
        ev.push(json!({ "triple": image.to_json(), "is_sl2_triple": false }));
    }
    let flagged = !ev.is_empty();
    (ev, flagged)
}

fn elliptic_sheets(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, _| {
        let e = s.sl2_elem();
        if !e.c1().is_negative() {
            return None;
        }
        let m = s.group().sl2_part();
        let e2 = e.conjugate(&m).ok()?;
        let ok = classify_sl2(&e) == classify_sl2(&e2)
            && matches!(classify_sl2(&e), Sl2OrbitLabel::Elliptic { sheet, .. } if sheet == sign_of(&e.z));
        (!ok).then(|| json!({ "e": e.to_json(), "m": m.to_json() }))
    }))
}

pub(super) fn sl2_claims() -> Vec<Claim> {
    vec![
        Claim { id: "S2-relations", description: "{X,S,T} real KS triple; cayley = {H_t, Y_t, X_t}; triples through nilpotents", run: s2_relations },
        Claim { id: "S2-ks-map", description: "N+ -> N_t^-, N- -> N_t^+ via cayley of KS triples", run: s2_ks_map },
        Claim { id: "S2-three-nilpotent-orbits", description: "nilpotent sl2(R) labels are {0}, N+, N-", run: three_nilpotent_orbits },
        Claim { id: "S2-negated-triple", description: "{-X,-S,-T} and {-H_t,-Y_t,-X_t} as sl2 triples", run: negated_triple },
        Claim { id: "S2-elliptic-sheets", description: "c1 < 0: sign z is a conjugation invariant", run: elliptic_sheets },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::{run_claim_by_id, SamplerConfig, Status};

    fn quick() -> SamplerConfig {
        SamplerConfig::new(7, 60, 10).unwrap()
    }

    #[test]
    fn pass_claims_pass() {
        for c in real_claims().iter().chain(&sl2_claims()) {
            let rec = run_claim_by_id(&quick(), c.id).unwrap();
            let expect_flag = ["L3.3-PiZ-sheet", "L3.3-PiP-display", "T3.6-completeness", "S2-negated-triple"];
            let want = if expect_flag.contains(&c.id) { Status::Flag } else { Status::Pass };
            assert_eq!(rec.status, want, "{} {:?}", c.id, rec.evidence);
            if rec.status == Status::Flag {
                assert!(!rec.evidence.is_empty());
            }
        }
    }

    #[test]
    fn pi_p_fixed_evidence_is_q() {
        let rec = run_claim_by_id(&quick(), "L3.3-PiP-display").unwrap();
        assert_eq!(rec.evidence[0]["image"], el(&basis::q()));
        assert_eq!(rec.evidence[0]["in_display"], json!(false));
    }
}
