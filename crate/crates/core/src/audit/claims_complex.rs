//! Complexified-side claim checks.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::claims::{flag_with, verdict};
use super::{Claim, Ctx};
use crate::complex_orbits::{
    classify_kc, display_set_membership_pc, is_nilpotent_pc, is_nilpotent_pc_by_matrix, kc_action, same_kc_orbit,
    weight_coords, KcElem, PcElem, PcSet,
};
use crate::scalar::{int, GaussRational as G, Rational, ToJson};

fn pair(h1: &PcElem, h2: &PcElem) -> Value {
    json!([h1.to_json(), h2.to_json()])
}

fn kh(k: &KcElem, h: &PcElem) -> Value {
    json!({ "k": k.to_json(), "h": h.to_json() })
}

/// `H(x, eps i x, p, q)` with `eps = +-1`.
fn on_line(x: G, eps: i8, p: G, q: G) -> PcElem {
    let y = G::i() * x.clone() * G::real(int(i64::from(eps)));
    PcElem::new(x, y, p, q)
}

fn preservation(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, _| {
        let (k, h) = (s.kc(), if s.chance(0.5) { s.nilpotent_pc() } else { s.pc() });
        let w = kc_action(&k, &h);
        let ok = w.c() == h.c()
            && is_nilpotent_pc(&w) == is_nilpotent_pc(&h)
            && is_nilpotent_pc_by_matrix(&w) == is_nilpotent_pc_by_matrix(&h)
            && classify_kc(&w) == classify_kc(&h)
            && same_kc_orbit(&h, &w).is_some();
        (!ok).then(|| kh(&k, &h))
    }))
}

fn weight_equivariance(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, _| {
        let (k, h) = (s.kc(), s.pc());
        let scaled = weight_coords(&h).scale_by(&k.u()).ok();
        let mut k2 = k.clone();
        k2.kappa = s.gauss();
        let ok = scaled.as_ref() == Some(&weight_coords(&kc_action(&k, &h))) && kc_action(&k, &h) == kc_action(&k2, &h);
        (!ok).then(|| kh(&k, &h))
    }))
}

fn rigidity(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, _| {
        let delta = s.nonzero_gauss();
        let eps = s.sign();
        let x = s.gauss();
        let x2 = if s.chance(0.5) { x.clone() } else { s.gauss() };
        let eps2 = if s.chance(0.8) { eps } else { -eps };
        let h1 = on_line(x, eps, delta.clone(), G::zero());
        let h2 = on_line(x2, eps2, delta, G::zero());
        let same = same_kc_orbit(&h1, &h2).is_some();
        (same != (h1 == h2)).then(|| pair(&h1, &h2))
    }))
}

fn delta_sign(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, _| {
        let (x, eps) = (s.gauss(), s.sign());
        let delta = s.nonzero_gauss();
        let d2 = match s.int_in(0, 2) {
            0 => delta.clone(),
            1 => -delta.clone(),
            _ => s.nonzero_gauss(),
        };
        let h1 = on_line(x.clone(), eps, delta.clone(), G::zero());
        let h2 = on_line(x, eps, d2.clone(), G::zero());
        let want = d2 == delta || d2 == -delta;
        (same_kc_orbit(&h1, &h2).is_some() != want).then(|| pair(&h1, &h2))
    }))
}

fn line_preservation(ctx: &Ctx) -> (Vec<Value>, bool) {
    verdict(ctx.search(|s, _| {
        let (k, eps) = (s.kc(), s.sign());
        let h = on_line(s.gauss(), eps, s.gauss(), s.gauss());
        let w = kc_action(&k, &h);
        let ok = w.y == G::i() * w.x.clone() * G::real(int(i64::from(eps)));
        (!ok).then(|| kh(&k, &h))
    }))
}

/// `delta ((1 - t^2), 2t) / (1 + t^2)` lies on `p^2 + q^2 = delta^2`.
fn circle_point(delta: &G, t: &Rational) -> (G, G) {
    let d = int(1) + t * t;
    let p = delta.scale(&((int(1) - t * t) / &d));
    let q = delta.scale(&(int(2) * t / d));
    (p, q)
}

fn orbit_vs_display(ctx: &Ctx) -> (Vec<Value>, bool) {
    let (h1, h2) = (
        PcElem::new(G::from_ints(1, 0), G::from_ints(0, 1), G::from_ints(1, 0), G::zero()),
        PcElem::new(G::from_ints(2, 0), G::from_ints(0, 2), G::from_ints(1, 0), G::zero()),
    );
    let set = PcSet::NJPlusXDelta { x: G::one(), delta: G::one() };
    let fixed = vec![json!({
        "set": set.id(),
        "delta": G::one().to_json(),
        "pair": pair(&h1, &h2),
        "in_display": [display_set_membership_pc(&h1, &set), display_set_membership_pc(&h2, &set)],
        "same_orbit": same_kc_orbit(&h1, &h2).is_some(),
    })];
    let sampled = ctx.search(|s, _| {
        let (delta, eps) = (s.nonzero_gauss(), s.sign());
        let set = if eps > 0 {
            PcSet::NJPlusXDelta { x: G::one(), delta: delta.clone() }
        } else {
            PcSet::NJMinusXDelta { x: G::one(), delta: delta.clone() }
        };
        let (p1, q1) = circle_point(&delta, &s.rational());
        let (p2, q2) = circle_point(&delta, &s.rational());
        let h1 = on_line(s.nonzero_gauss(), eps, p1, q1);
        let h2 = on_line(s.nonzero_gauss(), eps, p2, q2);
        let in_display = display_set_membership_pc(&h1, &set) && display_set_membership_pc(&h2, &set);
        (in_display && same_kc_orbit(&h1, &h2).is_none())
            .then(|| json!({ "set": set.id(), "delta": delta.to_json(), "pair": pair(&h1, &h2) }))
    });
    flag_with(fixed, sampled)
}

fn isotropic_coverage(ctx: &Ctx) -> (Vec<Value>, bool) {
    let h = PcElem::new(G::zero(), G::zero(), G::one(), G::i());
    let l = classify_kc(&h);
    let fixed = if l.is_listed_family() {
        Vec::new()
    } else {
        vec![json!({ "element": h.to_json(), "weights": weight_coords(&h).to_json(), "label": l.to_json() })]
    };
    let sampled = ctx.search(|s, _| {
        let h = s.nilpotent_pc();
        let l = classify_kc(&h);
        (!l.is_listed_family()).then(|| json!({ "element": h.to_json(), "label": l.to_json() }))
    });
    flag_with(fixed, sampled)
}

fn infinitely_many_complex(_ctx: &Ctx) -> (Vec<Value>, bool) {
    let hs: Vec<PcElem> = (1..=100).map(|d| PcElem::new(G::zero(), G::zero(), G::from_ints(d, 0), G::zero())).collect();
    let mut clash = Vec::new();
    for (i, a) in hs.iter().enumerate() {
        for b in &hs[i + 1..] {
            if same_kc_orbit(a, b).is_some() {
                clash.push(pair(a, b));
            }
        }
    }
    let labels: BTreeSet<String> = hs.iter().map(|h| classify_kc(h).to_json().to_string()).collect();
    if clash.is_empty() && labels.len() == hs.len() {
        (vec![json!({ "family": "NJP", "labels": hs.len(), "pairwise_distinct_orbits": true })], false)
    } else {
        clash.truncate(3);
        (clash, true)
    }
}

pub(super) fn complex_claims() -> Vec<Claim> {
    vec![
        Claim { id: "P3.7-kc-preservation", description: "k.H preserves x^2+y^2 and the nilpotent cone", run: preservation },
        Claim { id: "KC-weight-equivariance", description: "(xi+, xi-, pi+, pi-) -> (u^-2 xi+, u^2 xi-, u^-1 pi+, u pi-); kappa acts trivially", run: weight_equivariance },
        Claim { id: "KC-rigidity", description: "H(x,y,d,0) ~ H(x',y',d,0) iff x' = x, y' = y", run: rigidity },
        Claim { id: "KC-delta-sign", description: "H(x,+-ix,d,0) ~ H(x,+-ix,d',0) iff d' = +-d", run: delta_sign },
        Claim { id: "KC-line-preservation", description: "y = +-ix is preserved by k.H", run: line_preservation },
        Claim { id: "B1-orbit-vs-display", description: "N(x,d) = {H(z,+-iz,p,q) : p^2+q^2 = d^2} is one orbit", run: orbit_vs_display },
        Claim { id: "B2-isotropic-coverage", description: "nilpotent p_C = {0} u N+ u N- u N^P(d) u N+(x,d) u N-(x,d)", run: isotropic_coverage },
        Claim { id: "KC-infinitely-many", description: "N^P(d), d = 1..100 pairwise distinct orbits", run: infinitely_many_complex },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::{run_claim_by_id, SamplerConfig, Status};

    #[test]
    fn complex_claim_statuses() {
        let cfg = SamplerConfig::new(11, 60, 10).unwrap();
        for c in complex_claims() {
            let rec = run_claim_by_id(&cfg, c.id).unwrap();
            let flag = matches!(c.id, "B1-orbit-vs-display" | "B2-isotropic-coverage");
            assert_eq!(rec.status == Status::Flag, flag, "{} {:?}", c.id, rec.evidence);
        }
    }

    #[test]
    fn b1_fixed_pair() {
        let cfg = SamplerConfig::new(1, 5, 10).unwrap();
        let rec = run_claim_by_id(&cfg, "B1-orbit-vs-display").unwrap();
        assert_eq!(rec.evidence[0]["in_display"], json!([true, true]));
        assert_eq!(rec.evidence[0]["same_orbit"], json!(false));
    }
}
