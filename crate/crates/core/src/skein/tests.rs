use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::braid::{BraidWord, MarkovMove};
use crate::coeff::Var;
use crate::diagram::PlanarDiagram;
use crate::homotopy::{model_link, ModelMonomial};

fn rees(s: &str) -> ReesElement {
    ReesElement::parse(Variant::Oriented, s).unwrap()
}

fn mono(s: &str) -> ModelMonomial {
    s.parse().unwrap()
}

fn disk(d: PlanarDiagram) -> Presentation {
    Presentation::Disk(d)
}

fn braid(s: &str) -> Presentation {
    Presentation::Annulus(s.parse::<BraidWord>().unwrap())
}

fn exact(x: &Presentation) -> ExactExpansion {
    Engine::new(PotentialSpec::default())
        .unwrap()
        .expand(x)
        .unwrap()
}

fn at_trivial(x: &Presentation) -> ReesElement {
    iota_beta(&exact(x), &ModelMonomial::trivial(), Variant::Oriented)
}

fn naive(x: &Presentation, seed: u64) -> ExactExpansion {
    match naive_resolve(x, &PotentialSpec::default(), Mode::Exact, seed).unwrap() {
        Expanded::Exact(e) => e,
        _ => unreachable!(),
    }
}

#[test]
fn hand_values_disk() {
    assert_eq!(at_trivial(&disk(PlanarDiagram::unknot())), rees("u"));
    assert_eq!(at_trivial(&disk(PlanarDiagram::empty())), rees("1"));
    assert_eq!(
        at_trivial(&disk(PlanarDiagram::hopf_positive())),
        rees("q^2*u^2 + q*z*u")
    );
    let t = at_trivial(&disk(PlanarDiagram::trefoil_right()));
    assert_eq!(t, rees("q^2*u + q^3*h*u^2 + q^2*h*z*u"));
    // After z -> h the value is u times a polynomial in q and h.
    let zh = ReesElement::normalize(Variant::Oriented, &t.poly().substitute(Var::Z, &Poly::h()));
    assert_eq!(zh, rees("2*q^2 - q^4 + q^2*h^2") * rees("u"));
}

#[test]
fn hand_values_annulus() {
    let e = exact(&braid("B2: -s1"));
    assert_eq!(e.get(&mono("[2]")), Some(&rees("q^-2")));
    assert_eq!(e.get(&mono("[1,1]")), Some(&rees("-q^-1*h")));
    assert_eq!(e.len(), 2);
    let e = exact(&braid("B2: s1 s1"));
    assert_eq!(e.get(&mono("[1,1]")), Some(&rees("q^2")));
    assert_eq!(e.get(&mono("[2]")), Some(&rees("q*z")));
    assert_eq!(e.len(), 2);
}

#[test]
fn skein_relation_at_sample_sites() {
    let pot = PotentialSpec::default();
    let k = disk(PlanarDiagram::kink(1));
    let r = apply_relation(&k, 0, &pot, Direction::PlusToRest).unwrap();
    let mut want = SkeinExpression::new();
    want.add(rees("q^2"), disk(PlanarDiagram::kink(1).switch(0).unwrap()));
    want.add(rees("q*h"), disk(PlanarDiagram::unlink(2)));
    assert_eq!(r, want);

    let r = apply_relation(&braid("B2: -s1"), 0, &pot, Direction::MinusToRest).unwrap();
    let mut want = SkeinExpression::new();
    want.add(rees("q^-2"), braid("B2: s1"));
    want.add(rees("-q^-1*h"), braid("B2:"));
    assert_eq!(r, want);

    let v = apply_relation(&k, 0, &PotentialSpec::vassiliev(), Direction::PlusToRest).unwrap();
    let star: Vec<_> = v.terms().filter(|(_, x)| x.singular_count() == 1).collect();
    assert_eq!(star.len(), 1);
    assert_eq!(star[0].0, &rees("q*h"));

    let s = disk(PlanarDiagram::kink(1).mark_singular(0).unwrap());
    assert_eq!(
        apply_relation(&s, 0, &pot, Direction::PlusToRest),
        Err(SkeinError::SingularSite(0))
    );
    assert!(apply_relation(&k, 0, &pot, Direction::MinusToRest).is_err());
}

#[test]
fn oracle_agrees_on_small_links() {
    let samples = [
        disk(PlanarDiagram::trefoil_right()),
        disk(PlanarDiagram::figure_eight()),
        disk(PlanarDiagram::hopf_negative()),
        disk(PlanarDiagram::braid_closure(
            3,
            &[(1, 1), (2, -1), (1, 1), (2, 1), (1, -1)],
            &[],
        )),
        braid("B3: s1 -s2 s1 -s2"),
        braid("B3: s2 s1 s1 s2 s1"),
        braid("B4: s1 s2 s3 s1 s2 s3"),
    ];
    for x in &samples {
        let e = exact(x);
        for seed in 0..12 {
            assert_eq!(naive(x, seed), e, "seed {} on {:?}", seed, x);
        }
    }
}

#[test]
fn conjugation_is_invisible() {
    assert_eq!(exact(&braid("B3: s2 s1 -s2")), exact(&braid("B3: s1")));
    assert_eq!(naive(&braid("B3: s2 s1 -s2"), 3), exact(&braid("B3: s1")));
}

#[test]
fn models_are_fixed_points() {
    let all = ModelMonomial::enumerate(4, 3);
    for b in &all {
        let x = model_link(b).unwrap();
        let e = exact(&x);
        assert_eq!(
            e,
            Expansion::single(b.clone(), ReesElement::one(Variant::Oriented))
        );
        for b2 in &all {
            let want = if b == b2 { rees("1") } else { rees("0") };
            assert_eq!(iota_beta(&e, b2, Variant::Oriented), want);
        }
    }
    assert!(iota_beta(&Expansion::zero(), &mono("[2]"), Variant::Oriented).is_zero());
}

#[test]
fn skein_identity_at_every_crossing() {
    let pot = PotentialSpec::default();
    for d in [
        PlanarDiagram::trefoil_right(),
        PlanarDiagram::figure_eight(),
        PlanarDiagram::hopf_positive(),
        PlanarDiagram::braid_closure(3, &[(1, 1), (2, 1), (1, -1), (2, 1)], &[]),
    ] {
        for c in d.crossings() {
            let r = d.resolve(c.id).unwrap();
            let self_site = d.is_self_crossing(c.id).unwrap();
            let lhs = exact(&disk(r.plus)).scaled(&rees("q^-1"));
            let rhs = exact(&disk(r.minus))
                .scaled(&rees("q"))
                .plus(&exact(&disk(r.zero)).scaled(&pot.coefficient(self_site)));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn isotopy_invariance_under_random_moves() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let eng = Engine::new(PotentialSpec::default()).unwrap();
    for d in [
        PlanarDiagram::trefoil_right(),
        PlanarDiagram::figure_eight(),
        PlanarDiagram::hopf_negative(),
    ] {
        let want = eng.expand(&disk(d.clone())).unwrap();
        let mut e = d;
        for _ in 0..6 {
            let ms = e.applicable_moves();
            let m = ms.choose(&mut rng).unwrap().clone();
            let next = e.apply_move(&m).unwrap();
            if next.crossing_count() <= 9 {
                e = next;
            }
        }
        assert_eq!(eng.expand(&disk(e)).unwrap(), want);
    }
}

#[test]
fn markov_moves_preserve_annular_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let eng = Engine::new(PotentialSpec::default()).unwrap();
    for _ in 0..25 {
        let n = rng.gen_range(2..=4);
        let len = rng.gen_range(1..=7);
        let letters: Vec<i32> = (0..len)
            .map(|_| rng.gen_range(1..n as i32) * if rng.gen_bool(0.7) { 1 } else { -1 })
            .collect();
        let w = BraidWord::from_signed(n, &letters).unwrap();
        let want = eng.expand(&Presentation::Annulus(w.clone())).unwrap();
        let moves: Vec<MarkovMove> = w
            .closure_preserving_moves()
            .into_iter()
            .filter(|m| !matches!(m, MarkovMove::InsertPair { .. }))
            .collect();
        let m = *moves.choose(&mut rng).unwrap();
        let v = w.markov_move(m).unwrap();
        assert_eq!(
            eng.expand(&Presentation::Annulus(v)).unwrap(),
            want,
            "{} then {:?}",
            w,
            m
        );
        // Stabilization changes the class in the solid torus; in the 3-ball
        // it is an isotopy.
        let s = w.markov_move(MarkovMove::Stabilize { sign: -1 }).unwrap();
        assert_eq!(
            eng.expand(&disk(s.to_diagram())).unwrap(),
            eng.expand(&disk(w.to_diagram())).unwrap()
        );
    }
}

#[test]
fn permutation_conjugates_reduce_to_cycle_type() {
    let eng = Engine::new(PotentialSpec::default()).unwrap();
    for (w, u) in [
        ("B3: s1 s2", "B3: s2"),
        ("B4: s1 s2 s3", "B4: s2 s3"),
        ("B4: s1 s3", "B4: s2 s1"),
    ] {
        let w: BraidWord = w.parse().unwrap();
        let u: BraidWord = u.parse().unwrap();
        let mut letters = u.letters.clone();
        letters.extend(w.letters.iter().copied());
        letters.extend(u.letters.iter().rev().map(|l| l.inverse()));
        let x = BraidWord::new(w.strands, letters).unwrap();
        let ct = ModelMonomial::from_cycle_type(&w.closure_structure().cycle_type);
        assert_eq!(
            eng.expand(&Presentation::Annulus(x)).unwrap(),
            Expansion::single(ct, ReesElement::one(Variant::Oriented))
        );
    }
}

#[test]
fn disjoint_unions() {
    let a = exact(&braid("B2: -s1"));
    let u = exact(&disk(PlanarDiagram::unknot()));
    assert_eq!(disjoint_union_action(&a, &u), a.scaled(&rees("u")));
    let empty = exact(&disk(PlanarDiagram::empty()));
    assert_eq!(disjoint_union_action(&a, &empty), a);
    let h = exact(&disk(PlanarDiagram::hopf_positive()));
    assert_eq!(
        disjoint_union_action(&a, &h),
        a.scaled(&rees("q^2*u^2 + q*z*u"))
    );
    // Union with a diagram in the 3-ball matches the engine on the union.
    let t = PlanarDiagram::trefoil_right();
    assert_eq!(
        exact(&disk(t.disjoint_union(&PlanarDiagram::hopf_positive()))),
        disjoint_union_action(&exact(&disk(t)), &h)
    );
}

#[test]
fn sigma_and_partial_commute() {
    let pot = PotentialSpec::default();
    let d = PlanarDiagram::braid_closure(3, &[(1, 1), (1, 1), (2, -1), (1, 1), (2, 1)], &[0, 2]);
    let x = disk(d);
    let lhs = partial_i(&x, 1, Variant::Oriented)
        .unwrap()
        .try_map(|y| sigma_i(y, 1, &pot))
        .unwrap();
    let rhs = sigma_i(&x, 2, &pot)
        .unwrap()
        .try_map(|y| partial_i(y, 1, Variant::Oriented))
        .unwrap();
    assert_eq!(lhs, rhs);
    assert!(sigma_i(&x, 3, &pot).is_err());

    // Smoothing both double points in either order gives one value.
    let a = sigma_i(&x, 1, &pot)
        .unwrap()
        .try_map(|y| sigma_i(y, 1, &pot))
        .unwrap();
    let b = sigma_i(&x, 2, &pot)
        .unwrap()
        .try_map(|y| sigma_i(y, 1, &pot))
        .unwrap();
    assert_eq!(a, b);
    let eng = Engine::new(pot.clone()).unwrap();
    assert_eq!(
        eng.expand_expression(&a).unwrap(),
        eng.expand_expression(&b).unwrap()
    );

    let k = disk(PlanarDiagram::kink(1).mark_singular(0).unwrap());
    let p = partial_i(&k, 1, Variant::Oriented).unwrap();
    assert_eq!(p.len(), 2);
}

#[test]
fn truncated_mode() {
    let pot = PotentialSpec::default();
    let e = expand(&braid("B2: -s1"), &pot, Mode::Truncated(2)).unwrap();
    assert!(matches!(e, Expanded::Truncated(_)));
    assert!(expand(&disk(PlanarDiagram::unknot()), &pot, Mode::Truncated(2)).is_err());
    assert_eq!("trunc4".parse::<Mode>(), Ok(Mode::Truncated(4)));
    assert_eq!("trunc".parse::<Mode>(), Ok(Mode::Truncated(8)));
}

#[test]
fn potential_checks() {
    assert!(PotentialSpec::default().check().is_ok());
    let p = PotentialSpec {
        mixed_coeff: Poly::h(),
        ..Default::default()
    };
    assert!(p.check().is_err());
    let p = PotentialSpec {
        self_coeff: Poly::z(),
        ..Default::default()
    };
    assert!(p.check().is_err());
}

#[test]
fn framed_kinks() {
    let pot = PotentialSpec::conway(Variant::Framed);
    let eng = Engine::new(pot).unwrap();
    let v = eng.expand(&disk(PlanarDiagram::kink(1))).unwrap();
    let want = ReesElement::parse(Variant::Framed, "q*v^-1*u").unwrap();
    assert_eq!(v.get(&ModelMonomial::trivial()), Some(&want));
    // At v = q the kink factor is 1 and the vacua agree.
    for d in [
        PlanarDiagram::trefoil_right(),
        PlanarDiagram::figure_eight(),
        PlanarDiagram::hopf_negative(),
    ] {
        let f = eng.expand(&disk(d.clone())).unwrap();
        let at_q = f.map_values(|x| {
            ReesElement::normalize(
                Variant::Oriented,
                &x.poly().substitute(Var::V, &Poly::q_pow(1)),
            )
        });
        assert_eq!(at_q, exact(&disk(d)));
    }
}

#[test]
fn vassiliev_values() {
    let (e, _) =
        expand_vassiliev(&disk(PlanarDiagram::unknot()), 2, VassilievForm::Conway).unwrap();
    let empty = crate::homotopy::ChordDiagram::empty(0);
    assert_eq!(e.len(), 1);
    assert_eq!(e.get(&empty).unwrap().coeff(0), &Poly::u());

    let s = PlanarDiagram::figure_eight().mark_singular(0).unwrap();
    let (e, _) = expand_vassiliev(&disk(s), 1, VassilievForm::Conway).unwrap();
    assert!(e.keys().all(|k| k.chord_count() <= 2));
    assert!(e.keys().any(|k| k.chord_count() == 1));
    assert!(expand_vassiliev(&braid("B2: s1"), 1, VassilievForm::Conway).is_err());
}

fn vass_consistency(d: &PlanarDiagram, id: usize, form: VassilievForm, n: usize) -> bool {
    let r = d.resolve(id).unwrap();
    let eng = VassilievEngine::new(n, form);
    let (p, m, s) = (
        eng.expand(&r.plus),
        eng.expand(&r.minus),
        eng.expand(&r.star),
    );
    let hs = s.map_values(|x| x.shift_h(1));
    match form {
        VassilievForm::Conway => p.minus(&m) == hs,
        VassilievForm::Jones => {
            p.map_values(|x| x.scale_poly(&Poly::q_pow(-1)))
                .minus(&m.map_values(|x| x.scale_poly(&Poly::q_pow(1))))
                == hs
        }
    }
}

#[test]
fn vassiliev_consistency() {
    for d in [
        PlanarDiagram::trefoil_right(),
        PlanarDiagram::figure_eight(),
        PlanarDiagram::hopf_positive(),
        PlanarDiagram::braid_closure(3, &[(1, 1), (2, 1), (1, -1), (2, 1)], &[]),
        PlanarDiagram::figure_eight().mark_singular(1).unwrap(),
    ] {
        for c in d.crossings() {
            if d.is_singular(c.id) {
                continue;
            }
            for form in [VassilievForm::Conway, VassilievForm::Jones] {
                assert!(
                    vass_consistency(&d, c.id, form, 4),
                    "{:?} at {} ({:?})",
                    d,
                    c.id,
                    form
                );
            }
        }
    }
}
