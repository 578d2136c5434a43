use super::*;
use crate::diagram::PlanarDiagram;
use crate::skein::iota_beta;

fn disk(d: PlanarDiagram) -> Presentation {
    Presentation::Disk(d)
}

fn braid(s: &str) -> Presentation {
    Presentation::Annulus(s.parse::<BraidWord>().unwrap())
}

fn framed(s: &str) -> ReesElement {
    ReesElement::parse(Variant::Framed, s).unwrap()
}

fn links() -> Vec<Presentation> {
    vec![
        disk(PlanarDiagram::unknot()),
        disk(PlanarDiagram::hopf_positive()),
        disk(PlanarDiagram::trefoil_right()),
        disk(PlanarDiagram::figure_eight()),
        braid("B2: s1 s1"),
        braid("B2: -s1"),
        braid("B3: s1 s2 s1"),
    ]
}

#[test]
fn normal_form_moves_powers_into_framing() {
    let k = TotallyFramedLink::blackboard(disk(PlanarDiagram::trefoil_right()));
    let n = framing_normal_form(3, &k);
    assert_eq!(n.framing, vec![3]);
    assert_eq!(n.total(), k.total() + 3);
    assert_eq!(framing_normal_form(0, &n), n);
    assert_eq!(framing_normal_form(-1, &k.plus()), k);
    assert_eq!(
        framing_normal_form(2, &framing_normal_form(-5, &k)),
        framing_normal_form(-3, &k)
    );
}

#[test]
fn kinked_unknot_picks_up_the_framing_factor() {
    let k = TotallyFramedLink::blackboard(disk(PlanarDiagram::kink(1)));
    let e = framed_expand(&k).unwrap();
    assert_eq!(
        iota_beta(&e, &ModelMonomial::trivial(), Variant::Framed),
        framed("q*v^-1*u")
    );
}

#[test]
fn plus_multiplies_by_q_over_v() {
    let f = framed("q*v^-1");
    for l in links() {
        let k = TotallyFramedLink::blackboard(l);
        let a = framed_expand(&k).unwrap();
        let b = framed_expand(&k.plus()).unwrap();
        assert_eq!(b, a.scaled(&f), "{}", k);
        assert_eq!(
            specialize_v_to_one(&b.scaled(&framed("q^-1"))),
            specialize_v_to_one(&a)
        );
    }
}

#[test]
fn v_equal_q_recovers_the_oriented_value() {
    let oriented = Engine::new(PotentialSpec::default()).unwrap();
    for l in links() {
        let k = TotallyFramedLink::blackboard(l.clone());
        assert_eq!(
            specialize_v_to_q(&framed_expand(&k).unwrap()),
            oriented.expand(&l).unwrap()
        );
    }
}

#[test]
fn realized_framing_matches_total() {
    for l in links() {
        let k = TotallyFramedLink::blackboard(l).twisted(-2);
        let r = TotallyFramedLink::blackboard(k.realize());
        assert_eq!(r.total(), k.total());
    }
    assert!(TotallyFramedLink::new(disk(PlanarDiagram::unknot()), vec![0, 1]).is_err());
}

#[test]
fn torus_gcds() {
    let data = TorusData::from_json(
        r#"{"classes":[{"monomial":[1],"intersections":[4,6]},{"monomial":[2],"intersections":[]},
        {"monomial":[1,1],"intersections":[0]},{"monomial":[3],"intersections":[-9,6],"epsilon0":6}]}"#,
    )
    .unwrap();
    let s = torus_decomposition(&data).unwrap();
    let q: Vec<String> = s.iter().map(|x| x.quotient()).collect();
    assert_eq!(q, ["R/(q^4-1)", "R", "R", "R/(q^6-1)"]);
    let bad =
        TorusData::from_json(r#"{"classes":[{"monomial":[1],"intersections":[4],"epsilon0":6}]}"#)
            .unwrap();
    assert!(matches!(
        torus_decomposition(&bad),
        Err(FramedError::Divisibility(..))
    ));
    assert!(torus_decomposition(&TorusData::default())
        .unwrap()
        .is_empty());
}
