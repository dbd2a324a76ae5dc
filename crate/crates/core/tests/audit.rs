use jacobi_orbits::audit::{
    claim_ids, run_audit_with, run_claim_by_id, sample_group, Execution, SamplerConfig, Status,
};
use jacobi_orbits::jacobi::basis;
use proptest::prelude::*;

#[test]
fn config_validation() {
    assert!(SamplerConfig::new(1, 0, 10).is_err());
    assert!(SamplerConfig::new(1, 10, 1).is_err());
    assert_eq!(SamplerConfig::default(), SamplerConfig::new(42, 1000, 10).unwrap());
}

#[test]
fn small_audit_report() {
    let cfg = SamplerConfig::new(3, 25, 8).unwrap();
    let seq = run_audit_with(&cfg, Execution::Sequential);
    let par = run_audit_with(&cfg, Execution::default());
    assert_eq!(seq.to_json(), par.to_json());

    let ids: Vec<_> = seq.claims.iter().map(|c| c.claim_id.as_str()).collect();
    let mut sorted = claim_ids();
    sorted.sort();
    assert_eq!(ids, sorted);

    let json = seq.to_json();
    assert_eq!(json["summary"]["pass"], seq.count(Status::Pass));
    assert_eq!(json["summary"]["flag"], seq.count(Status::Flag));
    for c in &seq.claims {
        if c.status == Status::Flag {
            assert!(!c.evidence.is_empty(), "{} flagged without evidence", c.claim_id);
        }
    }
    assert_eq!(seq.get("L3.1-power-identity").unwrap().status, Status::Pass);
    assert_eq!(seq.get("L3.3-PiP-display").unwrap().status, Status::Flag);
    assert_eq!(seq.get("B1-orbit-vs-display").unwrap().status, Status::Flag);
    assert!(seq.has_flags());
    assert!(seq.to_text().contains("FLAG"));
}

#[test]
fn single_claim_matches_full_run() {
    let cfg = SamplerConfig::new(5, 20, 6).unwrap();
    let full = run_audit_with(&cfg, Execution::Sequential);
    let one = run_claim_by_id(&cfg, "R-cone-sign-law").unwrap();
    assert_eq!(&one, full.get("R-cone-sign-law").unwrap());
    assert!(run_claim_by_id(&cfg, "no-such-claim").is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sampled_groups_are_reproducible(seed in any::<u64>(), stream in any::<u64>()) {
        let cfg = SamplerConfig::new(seed, 1, 10).unwrap();
        let g = sample_group(&cfg, stream);
        prop_assert_eq!(&g, &sample_group(&cfg, stream));
        prop_assert!(g.det() == jacobi_orbits::scalar::int(1));
        prop_assert_eq!(basis::r().adjoint(&g), basis::r());
    }
}
