use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skein_core::braid::{BraidWord, MarkovMove};
use skein_core::coeff::{Exponent, Poly, ReesElement, Variant};
use skein_core::formal::GroupoidPresentation;
use skein_core::framed::{torus_decomposition, TorusClass, TorusData};
use skein_core::jonesq::{a_q_functorial, a_q_running, i_q, p_q, random_word, Normalization};
use skein_core::skein::{naive_resolve, Engine, Mode, PotentialSpec};
use skein_core::Presentation;

fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-3i64..=3, -3i32..=3, 0i32..=2, 0i32..=2, 0i32..=2), 0..5).prop_map(
        |ts| {
            Poly::from_terms(ts.into_iter().map(|(c, q, z, h, u)| {
                (
                    BigInt::from(c),
                    Exponent::q(q) + Exponent::z(z) + Exponent::h(h) + Exponent::u(u),
                )
            }))
        },
    )
}

fn arb_braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=4).prop_flat_map(|n| {
        let g = n as i32 - 1;
        prop::collection::vec(
            (1..=g, any::<bool>()).prop_map(|(i, s)| if s { i } else { -i }),
            0..8,
        )
        .prop_map(move |w| BraidWord::from_signed(n, &w).unwrap())
    })
}

fn rees(p: &Poly) -> ReesElement {
    ReesElement::normalize(Variant::Oriented, p)
}

fn corpus_groupoid(name: &str) -> GroupoidPresentation {
    let path = format!(
        "{}/../../corpus/groupoids/{}.json",
        env!("CARGO_MANIFEST_DIR"),
        name
    );
    GroupoidPresentation::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_a_ring_map(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(rees(&(a.clone() + b.clone())), rees(&a) + rees(&b));
        prop_assert_eq!(rees(&(a.clone() * b.clone())), rees(&a) * rees(&b));
        prop_assert_eq!(rees(&a) * rees(&b), rees(&b) * rees(&a));
    }

    #[test]
    fn normal_form_is_idempotent_and_prints_losslessly(a in arb_poly()) {
        let x = rees(&a);
        prop_assert_eq!(rees(x.poly()), x.clone());
        prop_assert_eq!(ReesElement::parse(Variant::Oriented, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn vacuum_relation_vanishes(a in arb_poly()) {
        let rel = Poly::h() * Poly::u() - (Poly::q_pow(-1) - Poly::q_pow(1));
        prop_assert!(rees(&(a * rel)).is_zero());
    }

    #[test]
    fn annulus_values_survive_closure_preserving_moves(w in arb_braid(), pick in any::<prop::sample::Index>()) {
        let engine = Engine::new(PotentialSpec::default()).unwrap();
        let moves = w.closure_preserving_moves();
        let m = moves[pick.index(moves.len())];
        let v = w.markov_move(m).unwrap();
        prop_assert_eq!(
            engine.expand(&Presentation::Annulus(w)).unwrap(),
            engine.expand(&Presentation::Annulus(v)).unwrap()
        );
    }

    #[test]
    fn ball_values_survive_stabilization(w in arb_braid(), sign in prop::sample::select(vec![1i8, -1])) {
        let engine = Engine::new(PotentialSpec::default()).unwrap();
        let v = w.markov_move(MarkovMove::Stabilize { sign }).unwrap();
        prop_assert_eq!(
            engine.expand(&Presentation::Disk(w.to_diagram())).unwrap(),
            engine.expand(&Presentation::Disk(v.to_diagram())).unwrap()
        );
    }

    #[test]
    fn resolution_order_does_not_matter(w in arb_braid(), seed in any::<u64>()) {
        let pot = PotentialSpec::default();
        let engine = Engine::new(pot.clone()).unwrap();
        for x in [Presentation::Annulus(w.clone()), Presentation::Disk(w.to_diagram())] {
            let naive = naive_resolve(&x, &pot, Mode::Exact, seed).unwrap();
            prop_assert_eq!(naive.exact().unwrap(), &engine.expand(&x).unwrap());
        }
    }

    #[test]
    fn deformation_forgets_back(seed in any::<u64>(), len in 1usize..8, which in 0usize..3) {
        let p = corpus_groupoid(["three", "chain", "kinked"][which]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = p.objects[seed as usize % p.objects.len()].clone();
        let w = random_word(&p, &start, len, &mut rng);
        prop_assert_eq!(p_q(&i_q(&p, &w).unwrap()), w.clone());
        prop_assert_eq!(
            a_q_running(&p, &w),
            a_q_functorial(&p, &w, Normalization::Midpoint).unwrap()
        );
    }

    #[test]
    fn torsion_orders_divide_every_intersection(xs in prop::collection::vec(-30i64..30, 0..5)) {
        let data = TorusData {
            classes: vec![TorusClass { monomial: vec![1], intersections: xs.clone(), epsilon0: None }],
        };
        let s = torus_decomposition(&data).unwrap();
        let e = s[0].epsilon as i64;
        let divides = xs.iter().all(|x| if e == 0 { *x == 0 } else { x % e == 0 });
        prop_assert!(divides);
    }
}
