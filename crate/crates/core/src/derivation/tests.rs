use super::*;
use crate::presentation::{cable_presentation, CableMode};

fn pres() -> GroupPresentation {
    cable_presentation(2, 3, 2, 11, CableMode::Theorem).unwrap()
}

fn t(s: &str) -> Term {
    s.parse().unwrap()
}

fn script(context: &str, axiom: Axiom, steps: Vec<StepKind>, lhs: &str, rhs: &str) -> DerivationScript {
    DerivationScript {
        id: "test".into(),
        context: context.parse().unwrap(),
        axiom,
        steps: steps.into_iter().map(|kind| Step { kind, by: String::new() }).collect(),
        claim: Claim { lhs: t(lhs), rhs: t(rhs) },
    }
}

fn step_error(r: Result<ProvenEquation, Error>) -> (usize, String) {
    match r {
        Err(Error::Script { source: StepError::AtStep { index, reason }, .. }) => (index, reason),
        other => panic!("expected a step failure, got {other:?}"),
    }
}

#[test]
fn string_forms() {
    assert_eq!("H(43/2)".parse::<Context>().unwrap().to_string(), "H(43/2)");
    assert_eq!("G".parse::<Context>().unwrap(), Context::KnotGroup);
    assert!("H(43/2".parse::<Context>().is_err());
    assert_eq!("lemma:eq10".parse::<RelationRef>().unwrap(), RelationRef::Lemma("eq10".into()));
    assert!("lemma:".parse::<RelationRef>().is_err());
    let step: Step = serde_json::from_str(
        r#"{"kind":"substitute_relation","side":"lhs","position":0,"len":1,"relation":"cable","direction":"backward","result":"t","by":"x"}"#,
    )
    .unwrap();
    assert!(matches!(step.kind, StepKind::SubstituteRelation { power: 1, .. }));
    let back: Step = serde_json::from_str(&serde_json::to_string(&step).unwrap()).unwrap();
    assert_eq!(back, step);
}

#[test]
fn relation_axiom_and_claim() {
    let s = script("G", Axiom::Relation { id: RelationRef::Torus, flip: true }, vec![], "b^3", "a^2");
    let eq = check_script(&s, &pres(), &LemmaSet::new()).unwrap();
    assert_eq!(eq.lhs.to_string(), "b^3");
    let s = script("G", Axiom::Relation { id: RelationRef::Torus, flip: false }, vec![], "b^3", "a^2");
    assert!(matches!(
        check_script(&s, &pres(), &LemmaSet::new()),
        Err(Error::Script { source: StepError::ClaimMismatch(_), .. })
    ));
}

#[test]
fn surgery_only_in_surgered_context() {
    let ax = Axiom::Relation { id: RelationRef::Surgery, flip: false };
    let s = script("G", ax.clone(), vec![], "muC^21 lambdaC", "1");
    assert!(matches!(check_script(&s, &pres(), &LemmaSet::new()), Err(Error::Script { source: StepError::Axiom(_), .. })));
    let s = script("H(21/1)", ax, vec![], "muC^21 lambdaC", "1");
    assert!(check_script(&s, &pres(), &LemmaSet::new()).is_ok());
}

#[test]
fn substitution_must_match() {
    let ax = Axiom::Reflexive(t("mu^11 lambda^2"));
    let good = StepKind::SubstituteRelation {
        side: Side::Rhs,
        position: 0,
        len: 2,
        relation: RelationRef::Cable,
        direction: Direction::Forward,
        power: 1,
        result: t("t^2"),
    };
    let s = script("G", ax.clone(), vec![good], "mu^11 lambda^2", "t^2");
    assert!(check_script(&s, &pres(), &LemmaSet::new()).is_ok());
    let bad = StepKind::SubstituteRelation {
        side: Side::Rhs,
        position: 0,
        len: 2,
        relation: RelationRef::Cable,
        direction: Direction::Forward,
        power: 1,
        result: t("t^3"),
    };
    let s = script("G", ax, vec![bad], "mu^11 lambda^2", "t^3");
    assert_eq!(step_error(check_script(&s, &pres(), &LemmaSet::new())).0, 0);
}

#[test]
fn commute_needs_whitelist() {
    let ax = Axiom::Reflexive(t("a b"));
    let swap = |pair: [&str; 2]| StepKind::CommuteSwap {
        side: Side::Rhs,
        position: 0,
        len: 2,
        pair: [pair[0].into(), pair[1].into()],
        result: t("b a"),
    };
    let s = script("G", ax.clone(), vec![swap(["a", "b"])], "a b", "b a");
    let (_, reason) = step_error(check_script(&s, &pres(), &LemmaSet::new()));
    assert!(reason.contains("not a whitelisted"), "{reason}");
    let ax = Axiom::Reflexive(t("a^4 b"));
    let s = script(
        "G",
        ax,
        vec![StepKind::CommuteSwap {
            side: Side::Rhs,
            position: 0,
            len: 2,
            pair: ["a^2".into(), "b".into()],
            result: t("b a^4"),
        }],
        "a^4 b",
        "b a^4",
    );
    assert!(check_script(&s, &pres(), &LemmaSet::new()).is_ok());
    // a multiple of a whitelisted pair commutes too, but is not the citation
    let mut s = s;
    if let StepKind::CommuteSwap { pair, .. } = &mut s.steps[0].kind {
        pair[0] = "a^4".into();
    }
    assert!(step_error(check_script(&s, &pres(), &LemmaSet::new())).1.contains("not a whitelisted"));
}

#[test]
fn commute_checks_periods_and_sums() {
    let swap = |result: &str| StepKind::CommuteSwap {
        side: Side::Rhs,
        position: 0,
        len: 2,
        pair: ["a^2".into(), "b".into()],
        result: t(result),
    };
    let s = script("G", Axiom::Reflexive(t("a^3 b")), vec![swap("b a^3")], "a^3 b", "b a^3");
    assert!(step_error(check_script(&s, &pres(), &LemmaSet::new())).1.contains("not a power"));
    let s = script("G", Axiom::Reflexive(t("a^4 b")), vec![swap("b a^2")], "a^4 b", "b a^2");
    assert!(step_error(check_script(&s, &pres(), &LemmaSet::new())).1.contains("sums differ"));
}

#[test]
fn lemma_contexts() {
    let p = pres();
    let mut lemmas = LemmaSet::new();
    let h = script("H(21/1)", Axiom::Relation { id: RelationRef::Surgery, flip: false }, vec![], "muC^21 lambdaC", "1");
    let mut eq = check_script(&h, &p, &lemmas).unwrap();
    eq.id = "s".into();
    lemmas.push(eq);
    let use_it = |ctx: &str| script(ctx, Axiom::Relation { id: RelationRef::Lemma("s".into()), flip: false }, vec![], "muC^21 lambdaC", "1");
    assert!(check_script(&use_it("H(21/1)"), &p, &lemmas).is_ok());
    assert!(check_script(&use_it("H(22/1)"), &p, &lemmas).is_err());
    assert!(check_script(&use_it("G"), &p, &lemmas).is_err());
}

#[test]
fn both_side_steps() {
    let p = pres();
    let ax = Axiom::Relation { id: RelationRef::Torus, flip: false };
    let steps = vec![
        StepKind::PowerBothSides { n: 2 },
        StepKind::InvertBothSides,
        StepKind::SwapSides,
        StepKind::MultiplyBothSides { side: Hand::Right, factor: Multiplier::Term(t("t")) },
    ];
    let s = script("G", ax, steps, "(b^3)^-2 t", "(a^2)^-2 t");
    let (_, trace) = check_script_traced(&s, &p, &LemmaSet::new()).unwrap();
    assert_eq!(trace.len(), 5);
    assert_eq!(trace[4].to_string(), "(b^3)^-2 t = (a^2)^-2 t");
}

#[test]
fn collect_powers_drops_zero() {
    let s = script(
        "G",
        Axiom::Reflexive(t("t^2 t^-2 a")),
        vec![StepKind::CollectPowers { side: Side::Rhs, position: 0 }],
        "t^2 t^-2 a",
        "a",
    );
    let (_, trace) = check_script_traced(&s, &pres(), &LemmaSet::new()).unwrap();
    assert_eq!(trace[1].rhs.to_string(), "a");
    let s = script("G", Axiom::Reflexive(t("t a")), vec![StepKind::CollectPowers { side: Side::Rhs, position: 0 }], "t a", "t a");
    assert!(step_error(check_script(&s, &pres(), &LemmaSet::new())).1.contains("different bases"));
}

#[test]
fn ranges_are_checked() {
    let s = script(
        "G",
        Axiom::Reflexive(t("a")),
        vec![StepKind::FreeReduce { side: Side::Lhs, position: 0, len: 2, result: t("a") }],
        "a",
        "a",
    );
    assert!(step_error(check_script(&s, &pres(), &LemmaSet::new())).1.contains("out of bounds"));
}

#[test]
fn claim_must_match_exactly() {
    // equal as words but written differently
    let s = script("G", Axiom::Reflexive(t("a a")), vec![], "a^2", "a^2");
    assert!(matches!(
        check_script(&s, &pres(), &LemmaSet::new()),
        Err(Error::Script { source: StepError::ClaimMismatch(_), .. })
    ));
}

#[test]
fn definition_name_is_checked() {
    // muC^22 lambdaC = t^2 unfolds lambdaC; citing muC instead must fail
    let step = |name: &str| StepKind::SubstituteDefinition {
        side: Side::Rhs,
        position: 0,
        len: 2,
        name: name.into(),
        direction: Direction::Forward,
        result: t("t^2"),
    };
    let s = script("G", Axiom::Reflexive(t("muC^22 lambdaC")), vec![step("lambdaC")], "muC^22 lambdaC", "t^2");
    assert!(check_script(&s, &pres(), &LemmaSet::new()).is_ok());
    let s = script("G", Axiom::Reflexive(t("muC^22 lambdaC")), vec![step("muC")], "muC^22 lambdaC", "t^2");
    assert!(step_error(check_script(&s, &pres(), &LemmaSet::new())).1.contains("lambdaC vanishes"));
}
