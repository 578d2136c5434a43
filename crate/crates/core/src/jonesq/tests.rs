use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::diagram::PlanarDiagram;
use crate::link::Presentation;
use crate::loops::{make_canonical_loop, random_loop, LoopKind};

const TWISTED: &str = r#"{
  "objects": ["x", "y", "m"],
  "models": ["m"],
  "morphisms": [
    {"name": "s", "source": "x", "target": "y", "potential": "m", "twist": 1},
    {"name": "t", "source": "y", "target": "m", "potential": "", "twist": 1},
    {"name": "r", "source": "x", "target": "m", "potential": "y", "twist": -1},
    {"name": "k", "source": "m", "target": "m", "potential": "m", "twist": 1}
  ]
}"#;

fn toy() -> GroupoidPresentation {
    GroupoidPresentation::from_json(TWISTED).unwrap()
}

fn sym(name: &str, c: i64, e: i32) -> QValue {
    QValue::single(name.to_string(), Poly::monomial(c, Exponent::q(e)))
}

#[test]
fn twist_is_additive() {
    let p = toy();
    assert_eq!(eps_of(&p, &p.parse_path("s s^-1").unwrap()), 0);
    assert_eq!(eps_of(&p, &p.parse_path("s t").unwrap()), 2);
    assert_eq!(eps_of(&p, &MorphismWord::identity()), 0);
    assert_eq!(eps_of(&p, &p.parse_path("r^-1").unwrap()), 1);
}

#[test]
fn target_power_and_equivariance() {
    let p = toy();
    let s = deform(&p, &p.parse_path("s").unwrap(), "x", 0).unwrap();
    assert_eq!(s.target_power(&p), -2);
    let w = p.parse_path("s t k").unwrap();
    let a = deform(&p, &w, "x", 3).unwrap();
    assert_eq!(deform(&p, &w, "x", 5).unwrap(), a.shifted(2));
    assert_eq!(a.shifted(2).target_power(&p), a.target_power(&p) + 2);
}

#[test]
fn parity_and_mismatch_are_rejected() {
    let p = toy();
    let s = QWord {
        start: 0,
        word: p.parse_path("s").unwrap(),
    };
    let t = QWord {
        start: 1,
        word: p.parse_path("t").unwrap(),
    };
    assert_eq!(compose(&p, &t, &s), Err(JonesqError::Parity(-2, 1)));
    assert_eq!(
        compose(&p, &t.shifted(1), &s),
        Err(JonesqError::Mismatch(-2, 2))
    );
    assert!(compose(&p, &t.shifted(-3), &s).is_ok());
}

#[test]
fn forgetting_powers_undoes_i_q() {
    let p = toy();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..100 {
        let start = ["x", "y", "m"][k % 3];
        let w = random_word(&p, start, 1 + k % 6, &mut rng);
        let q = i_q(&p, &w).unwrap();
        assert_eq!(p_q(&q), w);
        assert_eq!(q.start, 0);
        assert_eq!(q.target_power(&p), -2 * eps_of(&p, &w));
    }
}

#[test]
fn closed_formula_single_letters() {
    let p = toy();
    let s = p.parse_path("s").unwrap();
    let s_inv = p.parse_path("s^-1").unwrap();
    assert_eq!(a_q_eval(&p, &s), sym("s", 1, -1));
    assert_eq!(a_q_eval(&p, &s_inv), sym("s", -1, 1));
    // At r = 1 the midpoint normalization matches the formula; the source
    // normalization does not.
    assert_eq!(
        a_q_functorial(&p, &s, Normalization::Midpoint).unwrap(),
        sym("s", 1, -1)
    );
    assert_eq!(
        a_q_functorial(&p, &s_inv, Normalization::Midpoint).unwrap(),
        sym("s", -1, 1)
    );
    assert_eq!(
        a_q_functorial(&p, &s, Normalization::Source).unwrap(),
        sym("s", 1, 0)
    );
}

#[test]
fn closed_formula_two_letters() {
    let p = toy();
    let w = p.parse_path("s t^-1").unwrap();
    assert_eq!(a_q_eval(&p, &w), sym("s", 1, -1).plus(&sym("t", -1, 1)));
    // Functorial evaluation sees t^-1 at power -2.
    let f = a_q_functorial(&p, &w, Normalization::Midpoint).unwrap();
    assert_eq!(f, sym("s", 1, -1).plus(&sym("t", -1, -1)));
    assert_ne!(f, a_q_eval(&p, &w));
}

#[test]
fn running_formula_is_functorial() {
    let p = toy();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..200 {
        let w = random_word(&p, ["x", "y", "m"][k % 3], 1 + k % 6, &mut rng);
        assert_eq!(
            a_q_running(&p, &w),
            a_q_functorial(&p, &w, Normalization::Midpoint).unwrap()
        );
    }
}

#[test]
fn functorial_values_are_additive() {
    let p = toy();
    let u = p.parse_path("s t").unwrap();
    let v = p.parse_path("k k^-1 k").unwrap();
    let uv = u.then(&v);
    let a = a_q_functorial(&p, &u, Normalization::Source).unwrap();
    // The second half starts at power -2 ε(u).
    let shift = Poly::monomial(1, Exponent::q((-2 * eps_of(&p, &u)) as i32));
    let b = a_q_functorial(&p, &v, Normalization::Source)
        .unwrap()
        .scaled(&shift);
    assert_eq!(
        a_q_functorial(&p, &uv, Normalization::Source).unwrap(),
        a.plus(&b)
    );
}

#[test]
fn kinks_normalize_powers() {
    for eps in -3..=3 {
        for i in -5..=5 {
            let k = kink_normalize(eps, i);
            let end = i - 2 * (eps + k);
            assert!(end == 0 || end == 1, "eps {} i {} -> {}", eps, i, end);
        }
    }
}

#[test]
fn delta_prime_counts_switches() {
    let trefoil = Presentation::Disk(PlanarDiagram::trefoil_right());
    for sign in [1i8, -1] {
        let l = make_canonical_loop(&trefoil, &LoopKind::Kink { sign, component: 0 }).unwrap();
        assert_eq!(delta_prime(&l).unwrap(), sign as i64);
        assert_eq!(jones_monodromy(&l).unwrap(), Poly::q_pow(-2 * sign as i32));
    }
    let c = make_canonical_loop(&trefoil, &LoopKind::Commutator { seed: 2, length: 5 }).unwrap();
    assert_eq!(delta_prime(&c).unwrap(), 0);
    let a = random_loop(&trefoil, 1).unwrap();
    let end = a.states().unwrap().pop().unwrap();
    let b = random_loop(&end, 2).unwrap();
    let ab = a.then(&b).unwrap();
    assert_eq!(
        delta_prime(&ab).unwrap(),
        delta_prime(&a).unwrap() + delta_prime(&b).unwrap()
    );
    let broken = crate::loops::TransversalLoop::new(
        trefoil,
        vec![crate::loops::Event::CurlRemove { pos: 0 }],
    );
    assert!(matches!(delta_prime(&broken), Err(JonesqError::Loop(_))));
}
