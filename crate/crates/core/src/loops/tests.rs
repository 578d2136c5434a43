use super::*;
use crate::diagram::PlanarDiagram;
use crate::jonesq::delta_prime;

fn disk(d: PlanarDiagram) -> Presentation {
    Presentation::Disk(d)
}

fn braid(s: &str) -> Presentation {
    Presentation::Annulus(s.parse::<BraidWord>().unwrap())
}

fn conway() -> PotentialSpec {
    PotentialSpec::conway(Variant::Oriented)
}

fn bases() -> Vec<Presentation> {
    vec![
        disk(PlanarDiagram::unknot()),
        disk(PlanarDiagram::hopf_positive()),
        disk(PlanarDiagram::trefoil_right()),
        disk(PlanarDiagram::figure_eight()),
        braid("B1: "),
        braid("B2: s1 s1"),
        braid("B2: s1 s1 s1"),
        braid("B3: s1 -s2 s1 -s2"),
    ]
}

fn assert_consistent(l: &TransversalLoop) {
    let e = l.skein_consistency(&conway()).unwrap();
    assert!(e.is_zero(), "loop {} leaves {}", l.to_json(), e);
}

#[test]
fn kink_loops_are_closed_and_carry_the_marked_kink() {
    for b in bases() {
        for sign in [1i8, -1] {
            let l = make_canonical_loop(&b, &LoopKind::Kink { sign, component: 0 }).unwrap();
            assert_eq!(delta_prime(&l).unwrap(), sign as i64);
            let mu = l.mu().unwrap();
            assert_eq!(mu.len(), 1);
            let (c, x) = mu.terms().next().unwrap();
            assert_eq!(
                c,
                &ReesElement::q_pow(Variant::Oriented, 0).scale(&(sign as i64).into())
            );
            assert_eq!(x.singular_count(), 1);
            assert_consistent(&l);
        }
    }
}

#[test]
fn stabilized_kinks_are_consistent_in_the_ball() {
    for s in ["B1: ", "B2: s1 s1", "B2: s1 -s1"] {
        for sign in [1i8, -1] {
            let l = make_canonical_loop(&braid(s), &LoopKind::StabilizedKink { sign }).unwrap();
            assert_eq!(l.mu().unwrap().len(), 1);
            assert_consistent(&l);
        }
    }
}

#[test]
fn differentiability_loop_has_four_terms_and_no_monodromy() {
    let b = disk(PlanarDiagram::trefoil_right());
    let ids: Vec<usize> = regular_sites(&b);
    let l = make_canonical_loop(
        &b,
        &LoopKind::Differentiability {
            a: ids[0],
            b: ids[1],
        },
    )
    .unwrap();
    assert_eq!(delta_prime(&l).unwrap(), 0);
    let mu = l.mu().unwrap();
    let total: i64 = mu.terms().count() as i64;
    assert!(total <= 4);
    assert_consistent(&l);
    let w = braid("B2: s1 s1 s1");
    let l = make_canonical_loop(&w, &LoopKind::Differentiability { a: 0, b: 2 }).unwrap();
    assert_consistent(&l);
}

#[test]
fn differentiability_sign_pattern() {
    // Both crossings negative: K_(*+) - K_(*-) - K_(+*) + K_(-*).
    let b = braid("B2: -s1 -s1 -s1");
    let l = make_canonical_loop(&b, &LoopKind::Differentiability { a: 0, b: 1 }).unwrap();
    let terms = l.switch_terms().unwrap();
    let signs: Vec<(usize, i8, i8)> = terms
        .iter()
        .map(|t| {
            let other = if t.site == 0 { 1 } else { 0 };
            (t.site, t.sign, skein::site_sign(&t.before, other).unwrap())
        })
        .collect();
    assert_eq!(signs, vec![(1, 1, -1), (0, 1, 1), (1, -1, 1), (0, -1, -1)]);
}

#[test]
fn commutators_have_zero_mu_and_delta() {
    for (k, b) in bases().into_iter().enumerate() {
        for seed in 0..4 {
            let l = make_canonical_loop(
                &b,
                &LoopKind::Commutator {
                    seed: seed + 10 * k as u64,
                    length: 4,
                },
            )
            .unwrap();
            assert_eq!(delta_prime(&l).unwrap(), 0);
            assert!(l.mu().unwrap().is_empty());
            assert_consistent(&l);
        }
    }
}

#[test]
fn random_loops_are_consistent_and_lin_agrees() {
    for (k, b) in bases().into_iter().enumerate() {
        for seed in 0..6u64 {
            let l = random_loop(&b, seed * 31 + k as u64).unwrap();
            l.validate().unwrap();
            assert!(l.events.len() <= 40, "{}", l.events.len());
            assert_consistent(&l);
            let r = l.lin_and_j().unwrap();
            assert!(r.agree, "{:?} vs {:?}", r.j, r.j_direct);
        }
    }
}

#[test]
fn reversed_loop_negates_mu() {
    let engine = Engine::new(conway()).unwrap();
    for (k, b) in bases()
        .into_iter()
        .enumerate()
        .filter(|(_, b)| b.as_disk().is_some())
    {
        let l = random_loop(&b, 7 + k as u64).unwrap();
        let r = l.reversed().unwrap();
        r.validate().unwrap();
        assert_eq!(delta_prime(&r).unwrap(), -delta_prime(&l).unwrap());
        let a = engine.expand_expression(&l.mu().unwrap()).unwrap();
        let c = engine.expand_expression(&r.mu().unwrap()).unwrap();
        assert!(a.plus(&c).is_zero(), "{} + {}", a, c);
    }
}

#[test]
fn json_round_trip() {
    for b in bases() {
        let l = random_loop(&b, 3).unwrap();
        let text = l.to_json().to_string();
        let back = TransversalLoop::from_json(&text).unwrap();
        assert_eq!(back, l);
    }
}

#[test]
fn faults_name_the_event() {
    let b = disk(PlanarDiagram::trefoil_right());
    let site = regular_sites(&b)[0];
    let l = TransversalLoop::new(b.clone(), vec![Event::Switch { site, sign: 1 }]);
    assert!(matches!(
        l.validate(),
        Err(LoopError::Fault { index: 0, .. })
    ));
    let l = TransversalLoop::new(b, vec![Event::Switch { site, sign: -1 }]);
    assert_eq!(l.validate(), Err(LoopError::NotClosed));
    let w = braid("B2: s1");
    let l = TransversalLoop::new(
        w,
        vec![
            Event::Markov(MarkovMove::Rotate),
            Event::CurlRemove { pos: 0 },
        ],
    );
    assert!(matches!(
        l.validate(),
        Err(LoopError::Fault { index: 1, .. })
    ));
}

#[test]
fn event_json_shape() {
    let e = Event::Switch { site: 3, sign: -1 };
    assert_eq!(
        serde_json::to_value(&e).unwrap(),
        serde_json::json!({"kind": "switch", "site": 3, "sign": -1})
    );
    let e: Event =
        serde_json::from_str(r#"{"kind":"curl_insert","pos":0,"strand":1,"sign":1}"#).unwrap();
    assert_eq!(
        e,
        Event::CurlInsert {
            pos: 0,
            strand: 1,
            sign: 1
        }
    );
}

#[test]
fn framed_weights_follow_the_writhe() {
    let b = braid("B2: s1 s1");
    let l = make_canonical_loop(
        &b,
        &LoopKind::Kink {
            sign: 1,
            component: 0,
        },
    )
    .unwrap();
    assert_eq!(l.framed_monodromy().unwrap(), 0);
    // The curl of sign -1 lowers the writhe before the switch.
    let first = |s: SingularSum| s.terms().next().unwrap().0.clone();
    assert_eq!(
        first(l.mu_framed().unwrap()),
        ReesElement::q_pow(Variant::Oriented, 0)
    );
    assert_eq!(
        first(l.mu_tilde().unwrap()),
        ReesElement::q_pow(Variant::Oriented, 1)
    );
}
