use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::expansion::{ExactExpansion, Expanded, Expansion};
use super::{apply_potential, Mode, PotentialKind, PotentialSpec, SkeinError, SkeinExpression};
use crate::braid::{perm, BraidWord, Letter};
use crate::coeff::ReesElement;
use crate::diagram::{CanonicalCode, Crossing, PlanarDiagram};
use crate::homotopy::ModelMonomial;
use crate::link::Presentation;

/// Memoized expansion for one potential.
pub struct Engine {
    pot: PotentialSpec,
    disk: Mutex<HashMap<CanonicalCode, ExactExpansion>>,
    words: Mutex<HashMap<(usize, Vec<Letter>), ExactExpansion>>,
    perms: Mutex<HashMap<Vec<usize>, ExactExpansion>>,
}

const PARALLEL_CROSSINGS: usize = 10;

impl Engine {
    pub fn new(pot: PotentialSpec) -> Result<Self, SkeinError> {
        if pot.kind != PotentialKind::ConwaySplit {
            return Err(SkeinError::Unsupported(
                "expand takes a conway_split potential".into(),
            ));
        }
        pot.check()?;
        Ok(Engine {
            pot,
            disk: Mutex::new(HashMap::new()),
            words: Mutex::new(HashMap::new()),
            perms: Mutex::new(HashMap::new()),
        })
    }

    pub fn potential(&self) -> &PotentialSpec {
        &self.pot
    }

    /// Exact expansion. Double points are first resolved by the potential.
    pub fn expand(&self, x: &Presentation) -> Result<ExactExpansion, SkeinError> {
        if x.singular_count() > 0 {
            return self.expand_expression(&apply_potential(x, &self.pot)?);
        }
        Ok(match x {
            Presentation::Disk(d) => self.disk_value(d),
            Presentation::Annulus(w) => self.word_value(w),
        })
    }

    pub fn expand_mode(&self, x: &Presentation, mode: Mode) -> Result<Expanded, SkeinError> {
        let e = self.expand(x)?;
        finish(e, mode)
    }

    pub fn expand_expression(&self, e: &SkeinExpression) -> Result<ExactExpansion, SkeinError> {
        let mut out = Expansion::zero();
        for (c, x) in e.terms() {
            out.add_assign(&self.expand(x)?.scaled(c));
        }
        Ok(out)
    }

    pub fn expand_batch(&self, xs: &[Presentation]) -> Vec<Result<ExactExpansion, SkeinError>> {
        xs.par_iter().map(|x| self.expand(x)).collect()
    }

    fn disk_value(&self, d: &PlanarDiagram) -> ExactExpansion {
        let key = d.canonical_code();
        if let Some(v) = self.disk.lock().unwrap().get(&key) {
            return v.clone();
        }
        let v = match first_bad_crossing(d) {
            None => unlink_value(&self.pot, d),
            Some(id) => {
                let (sw, sm, lead, tail) = skein_step(&self.pot, d, id);
                let (a, b) = if d.crossing_count() >= PARALLEL_CROSSINGS {
                    rayon::join(|| self.disk_value(&sw), || self.disk_value(&sm))
                } else {
                    (self.disk_value(&sw), self.disk_value(&sm))
                };
                a.scaled(&lead).plus(&b.scaled(&tail))
            }
        };
        self.disk.lock().unwrap().insert(key, v.clone());
        v
    }

    fn word_value(&self, w: &BraidWord) -> ExactExpansion {
        let key = (w.strands, w.letters.clone());
        if let Some(v) = self.words.lock().unwrap().get(&key) {
            return v.clone();
        }
        let v = match annulus_step(&self.pot, w) {
            Step::Curl(p, f) => self.word_value(&w.deleted(p)).scaled(&f),
            Step::Rewrite(terms) => {
                let mut out = Expansion::zero();
                for (c, x) in terms {
                    out.add_assign(&self.word_value(&x).scaled(&c));
                }
                out
            }
            Step::Reduced(arr) => self.perm_value(&arr),
        };
        self.words.lock().unwrap().insert(key, v.clone());
        v
    }

    fn perm_value(&self, arr: &[usize]) -> ExactExpansion {
        if let Some(v) = self.perms.lock().unwrap().get(arr) {
            return v.clone();
        }
        let v = match minimal_or_shrink(arr, &mut |c| c[0]) {
            Shrink::Minimal(m) => Expansion::single(m, ReesElement::one(self.pot.variant)),
            Shrink::Square { s, rest } => {
                let (k, c) = square_terms(&self.pot, s, &rest);
                self.perm_value(&rest)
                    .scaled(&self.pot.q(2))
                    .plus(&self.perm_value(&k).scaled(&c))
            }
        };
        self.perms.lock().unwrap().insert(arr.to_vec(), v.clone());
        v
    }
}

fn finish(e: ExactExpansion, mode: Mode) -> Result<Expanded, SkeinError> {
    Ok(match mode {
        Mode::Exact => Expanded::Exact(e),
        Mode::Truncated(n) => Expanded::Truncated(e.truncated(n)?),
    })
}

/// Expands with a fresh engine.
pub fn expand(x: &Presentation, pot: &PotentialSpec, mode: Mode) -> Result<Expanded, SkeinError> {
    Engine::new(pot.clone())?.expand_mode(x, mode)
}

/// First crossing met on its under-strand when walking the components in
/// order from their basepoints.
pub(crate) fn first_bad_crossing(d: &PlanarDiagram) -> Option<usize> {
    walk_bad(d, d.components().iter().map(|c| c.as_slice()), true)
        .into_iter()
        .next()
}

fn walk_bad<'a>(
    d: &PlanarDiagram,
    order: impl Iterator<Item = &'a [usize]>,
    first_only: bool,
) -> Vec<usize> {
    let heads = head_map(d);
    let mut seen = HashSet::new();
    let mut bad = Vec::new();
    for comp in order {
        for e in comp {
            let Some(&(ci, s)) = heads.get(e) else {
                continue;
            };
            let c = &d.crossings()[ci];
            if seen.insert(ci) && !Crossing::is_over(s) && !d.is_singular(c.id) {
                bad.push(c.id);
                if first_only {
                    return bad;
                }
            }
        }
    }
    bad
}

fn head_map(d: &PlanarDiagram) -> HashMap<usize, (usize, usize)> {
    let mut m = HashMap::new();
    for (ci, c) in d.crossings().iter().enumerate() {
        for s in 0..4 {
            if c.is_incoming(s) {
                m.insert(c.ends[s], (ci, s));
            }
        }
    }
    m
}

fn unlink_value(pot: &PotentialSpec, d: &PlanarDiagram) -> ExactExpansion {
    let f = pot.framing_factor(d.writhe() + d.total_decoration());
    let c = &f * &pot.u().pow(d.component_count() as u32);
    Expansion::single(ModelMonomial::trivial(), c)
}

/// Switched and smoothed diagrams at a crossing with their coefficients.
fn skein_step(
    pot: &PotentialSpec,
    d: &PlanarDiagram,
    id: usize,
) -> (PlanarDiagram, PlanarDiagram, ReesElement, ReesElement) {
    let sign = d.crossing(id).expect("crossing exists").sign;
    let self_site = d.is_self_crossing(id).expect("crossing exists");
    let sw = d.switch(id).expect("regular crossing");
    let sm = d.smooth(id).expect("crossing exists");
    let c = pot.coefficient(self_site);
    if sign > 0 {
        (sw, sm, pot.q(2), &pot.q(1) * &c)
    } else {
        (sw, sm, pot.q(-2), -(&pot.q(-1) * &c))
    }
}

enum Step {
    Curl(usize, ReesElement),
    Rewrite(Vec<(ReesElement, BraidWord)>),
    Reduced(Vec<usize>),
}

/// One reduction step on a regular braid word: remove a curl, eliminate the
/// leftmost negative letter, or apply the square rule at the first letter
/// undoing a crossing of its prefix.
fn annulus_step(pot: &PotentialSpec, w: &BraidWord) -> Step {
    annulus_step_at(pot, w, |cands| cands[0])
}

fn annulus_step_at(
    pot: &PotentialSpec,
    w: &BraidWord,
    mut pick: impl FnMut(&[usize]) -> usize,
) -> Step {
    if let Some(p) = w.letters.iter().position(Letter::is_curl) {
        return Step::Curl(p, pot.framing_factor(w.letters[p].sign() as i64));
    }
    let negs: Vec<usize> = (0..w.len()).filter(|&p| w.letters[p].sign() < 0).collect();
    if !negs.is_empty() {
        let p = pick(&negs);
        let self_site = w.closure_structure().self_letters[p];
        let c = -(&pot.q(-1) * &pot.coefficient(self_site));
        return Step::Rewrite(vec![
            (pot.q(-2), w.replaced(p, &[w.letters[p].inverse()])),
            (c, w.deleted(p)),
        ]);
    }
    let gens = w.generators();
    let mut a = perm::identity(w.strands);
    for (p, &i) in gens.iter().enumerate() {
        if perm::is_descent(&a, i) {
            let mut shorter = a.clone();
            shorter.swap(i - 1, i);
            let mut word = perm::reduced_word(&shorter);
            word.extend([i, i]);
            word.extend_from_slice(&gens[p + 1..]);
            let second = word.len() - (gens.len() - p - 1) - 1;
            let x = positive_word(w.strands, &word);
            let self_site = x.closure_structure().self_letters[second];
            return Step::Rewrite(vec![
                (pot.q(2), x.deleted(second).deleted(second - 1)),
                (&pot.q(1) * &pot.coefficient(self_site), x.deleted(second)),
            ]);
        }
        a.swap(i - 1, i);
    }
    Step::Reduced(a)
}

fn positive_word(strands: usize, gens: &[usize]) -> BraidWord {
    BraidWord {
        strands,
        letters: gens.iter().map(|&i| Letter::Sigma(i, 1)).collect(),
        singular: Vec::new(),
    }
}

enum Shrink {
    Minimal(ModelMonomial),
    /// The permutation is `s · rest · s` with `ℓ(rest) = ℓ - 2`, up to
    /// length-preserving cyclic shifts.
    Square {
        s: usize,
        rest: Vec<usize>,
    },
}

/// Searches the length-preserving conjugates `x -> s x s` for one that
/// shrinks by two. Minimal permutations are reported with their cycle type.
fn minimal_or_shrink(arr: &[usize], pick: &mut dyn FnMut(&[usize]) -> usize) -> Shrink {
    let n = arr.len();
    let len = perm::inversions(arr);
    let cycles = perm::cycles(arr).len();
    if len == n - cycles {
        return Shrink::Minimal(ModelMonomial::from_cycle_type(&perm::cycle_type(arr)));
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::from([arr.to_vec()]);
    let mut queue = VecDeque::from([arr.to_vec()]);
    while let Some(y) = queue.pop_front() {
        let mut shrinking = Vec::new();
        let mut level = Vec::new();
        for s in 1..n {
            let z = perm::conjugate(&y, s);
            let l = perm::inversions(&z);
            if l + 2 == len {
                shrinking.push(s);
            } else if l == len {
                level.push(z);
            }
        }
        if !shrinking.is_empty() {
            let s = pick(&shrinking);
            return Shrink::Square {
                s,
                rest: perm::conjugate(&y, s),
            };
        }
        for z in level {
            if seen.insert(z.clone()) {
                queue.push_back(z);
            }
        }
    }
    panic!("no shrinking conjugate for a non-minimal permutation");
}

/// For `σ_s σ_s β_rest`: the smoothed term's permutation and coefficient.
fn square_terms(pot: &PotentialSpec, s: usize, rest: &[usize]) -> (Vec<usize>, ReesElement) {
    let mut gens = vec![s, s];
    gens.extend(perm::reduced_word(rest));
    let w = positive_word(rest.len(), &gens);
    let self_site = w.closure_structure().self_letters[1];
    let k = perm::apply(perm::identity(rest.len()), &gens[1..]);
    (k, &pot.q(1) * &pot.coefficient(self_site))
}

/// Independent oracle: no memo, random choices at every step.
pub fn naive_resolve(
    x: &Presentation,
    pot: &PotentialSpec,
    mode: Mode,
    seed: u64,
) -> Result<Expanded, SkeinError> {
    if pot.kind != PotentialKind::ConwaySplit {
        return Err(SkeinError::Unsupported(
            "expand takes a conway_split potential".into(),
        ));
    }
    pot.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let expr = apply_potential(x, pot)?;
    let mut out = Expansion::zero();
    for (c, y) in expr.terms() {
        let v = match y {
            Presentation::Disk(d) => naive_disk(pot, d, seed, &mut rng),
            Presentation::Annulus(w) => naive_word(pot, w, &mut rng),
        };
        out.add_assign(&v.scaled(c));
    }
    finish(out, mode)
}

fn priority(seed: u64, e: usize) -> u64 {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ e as u64).gen()
}

fn naive_disk(
    pot: &PotentialSpec,
    d: &PlanarDiagram,
    seed: u64,
    rng: &mut ChaCha8Rng,
) -> ExactExpansion {
    let mut comps: Vec<Vec<usize>> = d
        .components()
        .iter()
        .map(|c| {
            let k = (0..c.len()).min_by_key(|&i| priority(seed, c[i])).unwrap();
            let mut r = c.clone();
            r.rotate_left(k);
            r
        })
        .collect();
    comps.sort_by_key(|c| priority(seed, c[0]));
    let bad = walk_bad(d, comps.iter().map(|c| c.as_slice()), false);
    if bad.is_empty() {
        return unlink_value(pot, d);
    }
    let id = bad[rng.gen_range(0..bad.len())];
    let (sw, sm, lead, tail) = skein_step(pot, d, id);
    naive_disk(pot, &sw, seed, rng)
        .scaled(&lead)
        .plus(&naive_disk(pot, &sm, seed, rng).scaled(&tail))
}

fn naive_word(pot: &PotentialSpec, w: &BraidWord, rng: &mut ChaCha8Rng) -> ExactExpansion {
    // A random rotation first; closures do not see it.
    let mut w = w.clone();
    if !w.is_empty() {
        let r = rng.gen_range(0..w.len());
        w.letters.rotate_left(r);
    }
    let step = annulus_step_at(pot, &w, |c| c[rng.gen_range(0..c.len())]);
    match step {
        Step::Curl(p, f) => naive_word(pot, &w.deleted(p), rng).scaled(&f),
        Step::Rewrite(terms) => {
            let mut out = Expansion::zero();
            for (c, x) in terms {
                out.add_assign(&naive_word(pot, &x, rng).scaled(&c));
            }
            out
        }
        Step::Reduced(arr) => naive_perm(pot, &arr, rng),
    }
}

fn naive_perm(pot: &PotentialSpec, arr: &[usize], rng: &mut ChaCha8Rng) -> ExactExpansion {
    // Wander through length-preserving conjugates before searching.
    let mut x = arr.to_vec();
    for _ in 0..rng.gen_range(0..8) {
        let len = perm::inversions(&x);
        let level: Vec<Vec<usize>> = (1..x.len())
            .map(|s| perm::conjugate(&x, s))
            .filter(|z| perm::inversions(z) == len)
            .collect();
        if level.is_empty() {
            break;
        }
        x = level[rng.gen_range(0..level.len())].clone();
    }
    match minimal_or_shrink(&x, &mut |c| c[rng.gen_range(0..c.len())]) {
        Shrink::Minimal(m) => Expansion::single(m, ReesElement::one(pot.variant)),
        Shrink::Square { s, rest } => {
            let (k, c) = square_terms(pot, s, &rest);
            naive_perm(pot, &rest, rng)
                .scaled(&pot.q(2))
                .plus(&naive_perm(pot, &k, rng).scaled(&c))
        }
    }
}
