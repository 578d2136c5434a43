use proptest::prelude::*;

use super::*;
use crate::coeff::{Exponent, Poly, TruncatedSeries};

fn gen(g: &str) -> NestedWord {
    NestedWord::generator(g)
}

fn word(text: &str) -> NestedWord {
    NestedWord::parse(text, &|_| true).unwrap()
}

fn toy(text: &str) -> GroupoidPresentation {
    GroupoidPresentation::from_json(text).unwrap()
}

const THREE: &str = r#"{
  "objects": ["x", "y", "m"],
  "models": ["m"],
  "morphisms": [
    {"name": "s", "source": "x", "target": "y", "potential": "m"},
    {"name": "t", "source": "y", "target": "m", "potential": ""},
    {"name": "r", "source": "x", "target": "m", "potential": "y"}
  ]
}"#;

#[test]
fn d_and_potential() {
    let p = toy(THREE);
    let u = p.parse_path("s").unwrap();
    assert_eq!(p.d_of("x", &u).unwrap(), word("y x^-1"));
    assert!(p
        .d_of("x", &MorphismWord::identity())
        .unwrap()
        .is_identity());
    // Traversing s then t: 𝔞(t ∘ s) = 𝔞(s) 𝔞(t).
    let st = p.parse_path("s t").unwrap();
    assert_eq!(p.potential_extend(&st), word("m"));
    let rs = p.parse_path("r s").unwrap();
    assert!(p.d_of("x", &rs).is_err());
    let inv = p.parse_path("s^-1").unwrap();
    assert_eq!(p.potential_extend(&inv), word("m^-1"));
}

#[test]
fn contravariance_on_two_letters() {
    let p = toy(r#"{"objects":["a","b","c"],"models":["c"],"morphisms":[
        {"name":"u","source":"a","target":"b","potential":"a b"},
        {"name":"v","source":"b","target":"c","potential":"c^-1"}]}"#);
    let vu = p.parse_path("u v").unwrap();
    let au = p.potential_extend(&p.parse_path("u").unwrap());
    let av = p.potential_extend(&p.parse_path("v").unwrap());
    assert_eq!(p.potential_extend(&vu), au.mul(&av));
}

#[test]
fn collapse_of_nested_letter() {
    let ab = NestedWord::letter(word("a b"));
    let w = NestedWord::letter(ab.clone());
    assert_eq!(w.level(), 2);
    assert_eq!(w.collapse(), word("a b"));
    let split = NestedWord::letter(NestedWord::letter(gen("a")).mul(&NestedWord::letter(gen("b"))));
    assert_eq!(split.collapse(), word("a b"));
    let x = TowerElement::new(2).with(2, w).unwrap();
    assert_eq!(x.collapse().levels[2], word("a b"));
}

#[test]
fn unit_of_second_product() {
    let x = TowerElement::new(2)
        .with(0, word("a b^-1"))
        .unwrap()
        .with(1, NestedWord::letter(gen("b")))
        .unwrap();
    let one = TowerElement::unit(2);
    assert_eq!(x.second_product(&one).unwrap(), x);
    assert_eq!(one.second_product(&x).unwrap(), x);
}

#[test]
fn second_product_degree_two() {
    let a = TowerElement::new(2)
        .with(1, NestedWord::letter(gen("a")))
        .unwrap();
    let b = TowerElement::new(2)
        .with(1, NestedWord::letter(gen("b")))
        .unwrap();
    let c = a.second_product(&b).unwrap();
    assert_eq!(c.get(1), None);
    let expect = NestedWord::letter(NestedWord::letter(gen("a")))
        .mul(&NestedWord::letter(NestedWord::letter(gen("b"))));
    assert_eq!(c.get(2), Some(&expect));
}

#[test]
fn star_is_product_with_shift() {
    let a = TowerElement::new(2)
        .with(1, NestedWord::letter(gen("a")))
        .unwrap();
    let b = TowerElement::new(2).with(0, gen("b")).unwrap();
    let s = a.star(&b).unwrap();
    let expect = NestedWord::letter(gen("a")).mul(&NestedWord::letter(gen("b")));
    assert_eq!(s.get(1), Some(&expect));
    assert!(matches!(
        tower_op(&a, None, TowerOp::Star),
        Err(FormalError::Parse(_))
    ));
}

#[test]
fn linearize_examples() {
    let order = 3;
    let h = |k: i32, n: i64| {
        TruncatedSeries::from_h_poly(order, &Poly::monomial(n, Exponent::h(k))).unwrap()
    };
    let lin = linearize(
        &Collapsed {
            levels: vec![word("a b")],
        },
        order,
    )
    .unwrap();
    assert_eq!(lin.get(&"a".to_string()), Some(&h(0, 1)));
    assert_eq!(lin.get(&"b".to_string()), Some(&h(0, 1)));
    let lin = linearize(
        &Collapsed {
            levels: vec![NestedWord::identity(0), gen("x")],
        },
        order,
    )
    .unwrap();
    assert_eq!(lin.get(&"x".to_string()), Some(&h(1, 1)));
    let lin = linearize(
        &Collapsed {
            levels: vec![word("a a^-1")],
        },
        order,
    )
    .unwrap();
    assert!(lin.is_zero());
    assert!(linearize(&Collapsed::identity(5), 3).is_err());
}

#[test]
fn distinct_integers_give_distinct_letters() {
    let star = |n: i32| {
        let w = (0..n.unsigned_abs()).fold(NestedWord::identity(0), |acc, _| acc.mul(&gen("*")));
        if n < 0 {
            w.inverse()
        } else {
            w
        }
    };
    let letters: Vec<NestedWord> = (-3..=3).map(|n| NestedWord::letter(star(n))).collect();
    for (i, a) in letters.iter().enumerate() {
        for b in &letters[i + 1..] {
            assert_ne!(a, b);
            assert!(!a.mul(&b.inverse()).is_identity());
        }
    }
    // Collapse is a homomorphism, so distinct letters may agree after it.
    let two = NestedWord::letter(star(2));
    let one_one = NestedWord::letter(star(1)).mul(&NestedWord::letter(star(1)));
    assert_ne!(two, one_one);
    assert_eq!(two.collapse(), one_one.collapse());
}

#[test]
fn trivial_expansion() {
    let p = toy(r#"{"objects":["x","m"],"models":["m"],"morphisms":[
        {"name":"u","source":"x","target":"m","potential":""}]}"#);
    let e = expand_formal(&p, "x", 3, 4, 1).unwrap();
    assert_eq!(e.model, "m");
    assert_eq!(e.representative.at(0), gen("m"));
    for j in 1..=3 {
        assert!(e.representative.at(j).is_identity());
        assert!(e.generators[j].skein.is_empty() && e.generators[j].shift.is_empty());
    }
    assert!(e.well_defined());
}

#[test]
fn two_paths_generate_the_model_letter() {
    let p = toy(r#"{"objects":["x","m"],"models":["m"],"morphisms":[
        {"name":"u","source":"x","target":"m","potential":""},
        {"name":"v","source":"x","target":"m","potential":"m"}]}"#);
    let e = expand_formal(&p, "x", 2, 4, 7).unwrap();
    let m1 = NestedWord::letter(gen("m"));
    let g1 = &e.generators[1].skein;
    assert!(g1.contains(&m1) || g1.contains(&m1.inverse()));
    assert!(e.well_defined());
}

#[test]
fn missing_model_names_object() {
    let p = toy(r#"{"objects":["x","y","m"],"models":["m"],"morphisms":[
        {"name":"u","source":"x","target":"m","potential":""}]}"#);
    match expand_formal(&p, "x", 1, 3, 0) {
        Err(FormalError::NoModel(x)) => assert_eq!(x, "y"),
        other => panic!("{:?}", other.map(|e| e.object)),
    }
}

#[test]
fn several_models_rejected() {
    let p = toy(r#"{"objects":["x","m","n"],"models":["m","n"],"morphisms":[
        {"name":"u","source":"x","target":"m"},{"name":"v","source":"x","target":"n"}]}"#);
    assert!(matches!(
        FormalCalculus::new(&p, 1, 3),
        Err(FormalError::SeveralModels(..))
    ));
}

#[test]
fn formal_skein_relation_on_toy() {
    let p = toy(THREE);
    let calc = FormalCalculus::new(&p, 3, 4).unwrap();
    for (name, j, status) in calc.skein_relation_report() {
        assert_eq!(status, Membership::Proven, "{} at level {}", name, j);
    }
    assert_eq!(calc.rep(1, "x"), &NestedWord::letter(gen("m")));
}

#[test]
fn insensitive_examples() {
    let p = toy(r#"{"objects":["m","x"],"models":["m"],"morphisms":[
        {"name":"a","source":"m","target":"m","potential":""},
        {"name":"b","source":"m","target":"m","potential":"m m^-1"},
        {"name":"c","source":"m","target":"m","potential":"m"},
        {"name":"e","source":"x","target":"m","potential":""}],
        "relations":[["a","1"],["b","1"],["c","1"]]}"#);
    let check = |u: &str| insensitive_check(&p, "m", &p.parse_path(u).unwrap(), 3).unwrap();
    assert_eq!(
        check("a"),
        Insensitivity::Witnessed {
            w: MorphismWord::identity()
        }
    );
    assert!(matches!(check("b"), Insensitivity::Witnessed { .. }));
    assert_eq!(
        check("c"),
        Insensitivity::NoWitness {
            reason: "(i) violated".into()
        }
    );
    assert!(matches!(
        insensitive_check(&p, "x", &p.parse_path("e").unwrap(), 3),
        Err(FormalError::NotClosed(_))
    ));
}

#[test]
fn witness_search_finds_nontrivial_word() {
    // 𝔞(u) = x m^-1 and ρ0 sends x to m; the witness is e itself.
    let p = toy(r#"{"objects":["m","x"],"models":["m"],"morphisms":[
        {"name":"u","source":"m","target":"m","potential":"x m^-1"},
        {"name":"e","source":"m","target":"x","potential":""}],
        "relations":[["u","1"]]}"#);
    match insensitive_check(&p, "m", &p.parse_path("u").unwrap(), 3).unwrap() {
        Insensitivity::Witnessed { w } => {
            assert_eq!(p.d_formal(&w), word("x m^-1"));
            assert!(p.potential_extend(&w).is_identity());
        }
        other => panic!("{:?}", other),
    }
}

#[test]
fn unrelated_loop_rejected() {
    let p = toy(r#"{"objects":["m"],"models":["m"],"morphisms":[
        {"name":"a","source":"m","target":"m","potential":""}]}"#);
    assert!(matches!(
        insensitive_check(&p, "m", &p.parse_path("a").unwrap(), 2),
        Err(FormalError::NotRelated(_))
    ));
}

#[test]
fn gamma_groups_loops() {
    let p = toy(r#"{"objects":["m"],"models":["m"],"morphisms":[
        {"name":"a","source":"m","target":"m","potential":"m"},
        {"name":"b","source":"m","target":"m","potential":"m"}],
        "relations":[["a","b"]]}"#);
    let classes = gamma(&p, 1, 3).unwrap();
    // Identity, then a and b share the class of m, then the inverses.
    let of = |l: &str| {
        classes
            .iter()
            .position(|c| c.loops.iter().any(|x| x == l))
            .unwrap()
    };
    assert_eq!(of("a"), of("b"));
    assert_ne!(of("1"), of("a"));
    assert_eq!(of("a^-1"), of("b^-1"));
}

#[test]
fn phi_reaches_order() {
    for i in 0..4 {
        for l in 0..3 {
            for k in 0..5 {
                let n = passes_needed(i, l, k);
                assert!(phi(i, l, n) >= k as f64 - 1e-12);
                if n > 0 {
                    assert!(phi(i, l, n - 1) < k as f64);
                }
            }
        }
    }
}

#[test]
fn presentation_round_trip() {
    let p = toy(THREE);
    assert_eq!(GroupoidPresentation::from_json(&p.to_json()).unwrap(), p);
    assert!(
        GroupoidPresentation::from_json(r#"{"objects":["x"],"models":["y"],"morphisms":[]}"#)
            .is_err()
    );
}

fn arb_word(level: usize) -> BoxedStrategy<NestedWord> {
    let letters = prop::collection::vec((0..3u8, any::<bool>()), 0..6);
    if level == 0 {
        letters
            .prop_map(|ls| {
                let ls = ls
                    .into_iter()
                    .map(|(g, e)| (Symbol::Gen(format!("g{}", g)), if e { 1 } else { -1 }))
                    .collect();
                NestedWord::from_letters(0, ls).unwrap()
            })
            .boxed()
    } else {
        prop::collection::vec((arb_word(level - 1), any::<bool>()), 0..4)
            .prop_map(move |ls| {
                let ls = ls
                    .into_iter()
                    .map(|(w, e)| (Symbol::Word(Box::new(w)), if e { 1 } else { -1 }))
                    .collect();
                NestedWord::from_letters(level, ls).unwrap()
            })
            .boxed()
    }
}

fn arb_tower() -> impl Strategy<Value = TowerElement> {
    (arb_word(0), arb_word(1), arb_word(2), any::<u8>()).prop_map(|(a, b, c, mask)| {
        let mut t = TowerElement::new(2);
        for (j, w) in [(0, a), (1, b), (2, c)] {
            if mask & (1 << j) != 0 {
                t = t.with(j, w).unwrap();
            }
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reduction_is_confluent(w in arb_word(1), ins in prop::collection::vec((0..8usize, arb_word(0)), 0..4)) {
        // Insert cancelling pairs x x^-1 at arbitrary positions, then renormalize.
        let mut letters: Vec<(Symbol, i8)> = w.letters().to_vec();
        for (pos, x) in ins {
            let at = pos.min(letters.len());
            let s = Symbol::Word(Box::new(x));
            letters.insert(at, (s.clone(), -1));
            letters.insert(at, (s, 1));
        }
        prop_assert_eq!(NestedWord::from_letters(1, letters).unwrap(), w.clone());
        prop_assert!(w.mul(&w.inverse()).is_identity());
    }

    #[test]
    fn collapse_commutes_with_shift(x in arb_tower()) {
        prop_assert_eq!(x.shift().collapse(), x.collapse().shift());
    }

    #[test]
    fn shift_twice(x in arb_tower()) {
        let twice = x.shift().shift();
        for (&j, w) in x.support() {
            if j + 2 <= 2 {
                prop_assert_eq!(twice.get(j + 2), Some(&w.include(2)));
            }
        }
        prop_assert!(twice.get(0).is_none() && twice.get(1).is_none());
    }

    #[test]
    fn collapse_is_a_homomorphism(x in arb_tower(), y in arb_tower()) {
        prop_assert_eq!(x.mul(&y).unwrap().collapse(), x.collapse().mul(&y.collapse()));
    }
}
