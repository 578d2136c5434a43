use std::collections::{HashSet, VecDeque};

use super::groupoid::{GroupoidPresentation, MorphismWord};
use super::word::{in_normal_closure, NestedWord, Symbol};
use super::FormalError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insensitivity {
    /// Both conditions hold; `w` satisfies `𝔡(w) = 𝔞(u)` and `𝔞(w) = 1`.
    Witnessed {
        w: MorphismWord,
    },
    NoWitness {
        reason: String,
    },
}

/// A morphism word as a level-0 word over morphism names.
fn as_word(p: &GroupoidPresentation, w: &MorphismWord) -> NestedWord {
    let letters = w
        .letters
        .iter()
        .map(|&(s, e)| (Symbol::Gen(p.morphisms[s].name.clone()), e))
        .collect();
    NestedWord::from_letters(0, letters).expect("level 0")
}

fn relation_words(
    p: &GroupoidPresentation,
) -> Result<Vec<(MorphismWord, MorphismWord)>, FormalError> {
    p.relations
        .iter()
        .map(|(a, b)| Ok((p.parse_path(a)?, p.parse_path(b)?)))
        .collect()
}

/// Replaces each object by its model.
pub fn rho0(
    p: &GroupoidPresentation,
    w: &NestedWord,
    bound: usize,
) -> Result<NestedWord, FormalError> {
    let models = p.model_paths(bound)?;
    Ok(w.substitute(0, &|s| match s {
        Symbol::Gen(y) => NestedWord::generator(&models[y].0),
        Symbol::Word(_) => unreachable!("level 0"),
    }))
}

/// Checks both insensitivity conditions for the closed word `u` at the model
/// `m`, searching witnesses of length at most `bound`.
pub fn insensitive_check(
    p: &GroupoidPresentation,
    m: &str,
    u: &MorphismWord,
    bound: usize,
) -> Result<Insensitivity, FormalError> {
    if !p.is_model(m) || p.target_from(m, u)? != m {
        return Err(FormalError::NotClosed(format!(
            "{} at {}",
            p.format_path(u),
            m
        )));
    }
    let rels: Vec<NestedWord> = relation_words(p)?
        .iter()
        .map(|(a, b)| as_word(p, &a.then(&b.inverse())))
        .collect();
    if !in_normal_closure(&as_word(p, u), &rels, 4) {
        return Err(FormalError::NotRelated(p.format_path(u)));
    }
    let a = p.potential_extend(u);
    if !rho0(p, &a, bound.max(p.objects.len()))?.is_identity() {
        return Ok(Insensitivity::NoWitness {
            reason: "(i) violated".into(),
        });
    }
    // Breadth-first over reduced words in the free group on elementary
    // morphisms.
    let n = p.morphisms.len();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([MorphismWord::identity()]);
    seen.insert(MorphismWord::identity());
    while let Some(w) = queue.pop_front() {
        if p.d_formal(&w) == a && p.potential_extend(&w).is_identity() {
            return Ok(Insensitivity::Witnessed { w });
        }
        if w.len() == bound {
            continue;
        }
        for s in 0..n {
            for e in [1i8, -1] {
                let v = w.then(&MorphismWord {
                    letters: vec![(s, e)],
                });
                if v.len() > w.len() && seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    Ok(Insensitivity::NoWitness {
        reason: format!("(ii) no witness within length {}", bound),
    })
}

/// One class of the γ map: closed loops at a model whose potentials agree
/// modulo the normal closure of the relation images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaClass {
    pub model: String,
    pub value: NestedWord,
    pub loops: Vec<String>,
}

/// Sends each closed loop of length at most `bound` at each model to its
/// potential modulo the normal closure of `d(h) = 𝔞(u v^-1)` over the
/// relation pairs, grouping loops by class.
pub fn gamma(
    p: &GroupoidPresentation,
    bound: usize,
    depth: usize,
) -> Result<Vec<GammaClass>, FormalError> {
    let d: Vec<NestedWord> = relation_words(p)?
        .iter()
        .map(|(a, b)| p.potential_extend(&a.then(&b.inverse())))
        .collect();
    let mut out: Vec<GammaClass> = Vec::new();
    for m in &p.models {
        for (u, t) in p.paths_from(m, bound) {
            if &t != m {
                continue;
            }
            let a = p.potential_extend(&u);
            let name = p.format_path(&u);
            match out
                .iter_mut()
                .find(|c| &c.model == m && in_normal_closure(&a.mul(&c.value.inverse()), &d, depth))
            {
                Some(c) => c.loops.push(name),
                None => out.push(GammaClass {
                    model: m.clone(),
                    value: a,
                    loops: vec![name],
                }),
            }
        }
    }
    Ok(out)
}
