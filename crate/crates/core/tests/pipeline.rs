//! Cross-module checks through the public API.

use std::sync::Arc;

use coulomb_core::gauge::{parse_spec, FlavorCoweight, Preset, TheorySpec};
use coulomb_core::klein::{character_from_semiinvariants, map_element, sqed_ring, DominantGLWeight, SemiInvariantPoly};
use coulomb_core::monopole::{klein_costalk_character, monopole_series, sn_ring_character, sqed_to_plane_grading};
use coulomb_core::ring::expr::ExprContext;
use coulomb_core::ring::two_node::{sl3_cross_check, TwoNode};
use coulomb_core::ring::{AbelianRing, ClassIndex, RingElement};
use coulomb_core::suites::{run_suite, Suite, SuiteParams};
use coulomb_core::{Error, TruncatedSeries};

#[test]
fn preset_and_json_specs_agree() {
    let preset = parse_spec("sqed:2").unwrap();
    assert_eq!(preset.preset, Some(Preset::Sqed(2)));
    let json = serde_json::to_string(&preset.theory.to_json()).unwrap();
    let reparsed = parse_spec(&json).unwrap();
    assert_eq!(reparsed.theory, preset.theory);
    assert_eq!(reparsed.preset, None);
    let a = monopole_series(&preset.theory, &FlavorCoweight::zero(2), 10, true).unwrap();
    let b = monopole_series(&reparsed.theory, &FlavorCoweight::zero(2), 10, true).unwrap();
    assert_eq!(a, b);
}

#[test]
fn inline_json_spec() {
    let spec = parse_spec(r#"{"factors":[2],"flavor_rank":1,"matter":[{"gauge":[[1,0]],"flavor":[1]}]}"#);
    assert!(spec.is_ok());
    assert!(parse_spec(r#"{"factors":[2],"flavor_rank":1,"matter":[{"gauge":[[1]],"flavor":[1]}]}"#).is_err());
    assert!(parse_spec("sqed:0").is_err());
    assert!(parse_spec("hexagon:3").is_err());
}

#[test]
fn series_json_round_trip_of_a_character() {
    let s = klein_costalk_character(3, &[2, 1, 0], 12, true).unwrap();
    let text = serde_json::to_string(&s.to_json()).unwrap();
    assert_eq!(TruncatedSeries::from_json_str(&text).unwrap(), s);
}

#[test]
fn monopole_semi_invariant_and_ring_characters_meet() {
    for n in 2..=4 {
        let order = 14;
        let graded = monopole_series(&TheorySpec::sqed(n).unwrap(), &FlavorCoweight::zero(n), order, true).unwrap();
        let ring = sn_ring_character(n, order).unwrap();
        let invariants = character_from_semiinvariants(&DominantGLWeight::zero(n), order).unwrap();
        assert_eq!(sqed_to_plane_grading(&graded, n).unwrap(), ring);
        assert_eq!(ring, invariants);
    }
}

#[test]
fn ring_relation_zy_maps_to_w_power() {
    let n = 3;
    let ring = sqed_ring(n).unwrap();
    let ctx = ExprContext::new(ring.clone());
    let zy = ctx.parse("r[-1;0]*r[1;0]").unwrap();
    let wn = ctx.parse("w^3").unwrap();
    assert_eq!(zy, wn);
    assert_eq!(map_element(n, &zy).unwrap(), SemiInvariantPoly::w(n).unwrap().pow(3));
}

#[test]
fn expression_matches_direct_multiplication() {
    let model = TwoNode::new(2, 1).unwrap();
    let ctx = ExprContext::two_node(model.clone());
    let parsed = ctx.parse("z_{j,i} * y_j[1]").unwrap();
    let direct = ctx.parse("w_j * z_i * z_j[1]").unwrap();
    assert_eq!(parsed, direct);
}

#[test]
fn theory_mismatch_is_an_error() {
    let a = RingElement::one(&Arc::new(AbelianRing::new(TheorySpec::sqed(1).unwrap(), false).unwrap()));
    let b = RingElement::one(TwoNode::new(1, 1).unwrap().ring());
    assert_eq!(a.multiply(&b), Err(Error::TheoryMismatch));
    let bad = RingElement::basis(a.ring(), ClassIndex::new(vec![0, 0], vec![0]));
    assert!(matches!(bad, Err(Error::Shape(_))));
}

#[test]
fn sl3_cross_check_passes() {
    let cases = sl3_cross_check().unwrap();
    assert!(cases.iter().all(|c| c.pass));
    assert!(cases.iter().any(|c| c.id.contains("z_j^1 = a3")));
}

#[test]
fn suites_are_deterministic() {
    let params = SuiteParams {
        rank: Some(2..=3),
        lambda_max: Some(2),
        ..Default::default()
    };
    for suite in [Suite::KleinSurjectivity, Suite::RingRmn] {
        let a = run_suite(suite, &params).unwrap();
        let b = run_suite(suite, &params).unwrap();
        assert_eq!(a.cases, b.cases);
        assert!(a.passed());
    }
}
