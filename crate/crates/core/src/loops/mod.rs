//! Transversal loops of links as event words, and the singular-link sums
//! they carry.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{BraidWord, Letter, MarkovMove};
use crate::coeff::{ReesElement, Variant};
use crate::diagram::Move;
use crate::homotopy::{homotopy_class, ModelMonomial};
use crate::link::Presentation;
use crate::skein::{
    self, presentation_key, Engine, ExactExpansion, PotentialSpec, PresentationKey, SkeinError,
    SkeinExpression,
};

#[cfg(test)]
mod tests;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error("fault at event {index}: {reason}")]
    Fault { index: usize, reason: String },
    #[error("fault at end: the final state differs from the base")]
    NotClosed,
    #[error("inapplicable: {0}")]
    Inapplicable(String),
    #[error("malformed loop: {0}")]
    Parse(String),
    #[error(transparent)]
    Skein(#[from] SkeinError),
}

/// One step of a loop. Isotopy events carry no weight; a switch changes the
/// sign of one regular crossing, `sign = +1` meaning negative to positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Event {
    Reidemeister(Move),
    Markov(MarkovMove),
    /// Inserts a curl letter on `strand` before position `pos`.
    CurlInsert {
        pos: usize,
        strand: usize,
        sign: i8,
    },
    CurlRemove {
        pos: usize,
    },
    Switch {
        site: usize,
        sign: i8,
    },
}

impl Event {
    pub fn is_switch(&self) -> bool {
        matches!(self, Event::Switch { .. })
    }
}

/// A formal sum of singular links, deduplicated up to relabeling.
pub type SingularSum = SkeinExpression;

fn shift_marks(w: &BraidWord, pos: usize, by: isize) -> Vec<usize> {
    w.singular
        .iter()
        .map(|&m| {
            if m >= pos {
                (m as isize + by) as usize
            } else {
                m
            }
        })
        .collect()
}

/// Applies one event, or says why it does not apply.
pub fn apply_event(x: &Presentation, e: &Event) -> Result<Presentation, String> {
    match (e, x) {
        (Event::Reidemeister(m), Presentation::Disk(d)) => d
            .apply_move(m)
            .map(Presentation::Disk)
            .map_err(|e| e.to_string()),
        (Event::Markov(m), Presentation::Annulus(w)) => w
            .markov_move(*m)
            .map(Presentation::Annulus)
            .map_err(|e| e.to_string()),
        (&Event::CurlInsert { pos, strand, sign }, Presentation::Annulus(w)) => {
            if pos > w.len() || strand >= w.strands || sign.abs() != 1 {
                return Err(format!("no curl position {} on strand {}", pos, strand));
            }
            let mut letters = w.letters.clone();
            letters.insert(pos, Letter::Curl { curl: strand, sign });
            Ok(Presentation::Annulus(BraidWord {
                strands: w.strands,
                letters,
                singular: shift_marks(w, pos, 1),
            }))
        }
        (&Event::CurlRemove { pos }, Presentation::Annulus(w)) => {
            if pos >= w.len() || !w.letters[pos].is_curl() || w.is_singular(pos) {
                return Err(format!("no regular curl at {}", pos));
            }
            Ok(Presentation::Annulus(w.deleted(pos)))
        }
        (&Event::Switch { site, sign }, _) => {
            if sign.abs() != 1 {
                return Err(format!("switch sign {}", sign));
            }
            if skein::is_singular_site(x, site) {
                return Err(format!("site {} is singular", site));
            }
            let now = skein::site_sign(x, site).map_err(|e| e.to_string())?;
            if now != -sign {
                return Err(format!("site {} already has sign {}", site, now));
            }
            skein::with_sign(x, site, sign).map_err(|e| e.to_string())
        }
        (e, x) => Err(format!(
            "event {:?} does not apply in the {}",
            e,
            x.ambient()
        )),
    }
}

/// One switch of a replayed loop.
#[derive(Clone, Debug)]
pub struct SwitchTerm {
    pub index: usize,
    pub site: usize,
    pub sign: i8,
    /// The state just before the switch.
    pub before: Presentation,
    /// Signed count of earlier switches.
    pub running: i64,
    /// Writhe change since the base.
    pub writhe_shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalLoop {
    pub base: Presentation,
    pub events: Vec<Event>,
}

impl TransversalLoop {
    pub fn new(base: Presentation, events: Vec<Event>) -> Self {
        TransversalLoop { base, events }
    }

    pub fn from_json(text: &str) -> Result<Self, LoopError> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| LoopError::Parse(e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self, LoopError> {
        let base = v
            .get("base")
            .ok_or_else(|| LoopError::Parse("missing base".into()))?;
        let base = Presentation::from_json_value(base).map_err(LoopError::Parse)?;
        let events = v
            .get("events")
            .cloned()
            .unwrap_or(serde_json::Value::Array(Vec::new()));
        let events: Vec<Event> =
            serde_json::from_value(events).map_err(|e| LoopError::Parse(e.to_string()))?;
        Ok(TransversalLoop { base, events })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "base": self.base.to_json_value(),
            "events": serde_json::to_value(&self.events).expect("events serialize"),
        })
    }

    /// All intermediate states, base first.
    pub fn states(&self) -> Result<Vec<Presentation>, LoopError> {
        let mut out = vec![self.base.clone()];
        for (index, e) in self.events.iter().enumerate() {
            let next = apply_event(out.last().expect("nonempty"), e)
                .map_err(|reason| LoopError::Fault { index, reason })?;
            out.push(next);
        }
        Ok(out)
    }

    /// Replays every event and checks that the loop closes up.
    pub fn validate(&self) -> Result<(), LoopError> {
        let s = self.states()?;
        if presentation_key(s.last().expect("nonempty")) != presentation_key(&self.base) {
            return Err(LoopError::NotClosed);
        }
        Ok(())
    }

    pub fn switch_terms(&self) -> Result<Vec<SwitchTerm>, LoopError> {
        let states = self.states()?;
        if presentation_key(states.last().expect("nonempty")) != presentation_key(&self.base) {
            return Err(LoopError::NotClosed);
        }
        let w0 = self.base.writhe();
        let mut running = 0;
        let mut out = Vec::new();
        for (index, e) in self.events.iter().enumerate() {
            if let Event::Switch { site, sign } = *e {
                out.push(SwitchTerm {
                    index,
                    site,
                    sign,
                    before: states[index].clone(),
                    running,
                    writhe_shift: states[index].writhe() - w0,
                });
                running += sign as i64;
            }
        }
        Ok(out)
    }

    pub fn switch_count(&self) -> i64 {
        self.events
            .iter()
            .map(|e| {
                if let Event::Switch { sign, .. } = e {
                    *sign as i64
                } else {
                    0
                }
            })
            .sum()
    }

    /// Follows `self` by `o`. The second loop must start where the first
    /// one ends, including labels.
    pub fn then(&self, o: &TransversalLoop) -> Result<TransversalLoop, LoopError> {
        let end = self.states()?.pop().expect("nonempty");
        if end != o.base {
            return Err(LoopError::Inapplicable(
                "second loop starts elsewhere".into(),
            ));
        }
        let mut events = self.events.clone();
        events.extend(o.events.iter().cloned());
        Ok(TransversalLoop {
            base: self.base.clone(),
            events,
        })
    }

    /// Whether the loop uses moves that are isotopies only in the 3-ball.
    fn leaves_annulus(&self) -> bool {
        self.events.iter().any(|e| {
            matches!(
                e,
                Event::Markov(MarkovMove::Stabilize { .. } | MarkovMove::Destabilize)
            )
        })
    }

    /// The presentation in which the loop is an isotopy away from its
    /// switches.
    fn view(&self, x: &Presentation) -> Presentation {
        match x {
            Presentation::Annulus(w) if self.leaves_annulus() => Presentation::Disk(w.to_diagram()),
            _ => x.clone(),
        }
    }

    fn weighted(
        &self,
        weight: impl Fn(&SwitchTerm) -> ReesElement,
    ) -> Result<SingularSum, LoopError> {
        let mut out = SingularSum::new();
        for t in self.switch_terms()? {
            out.add(weight(&t), skein::marked(&t.before, t.site)?);
        }
        Ok(out)
    }

    /// `Σ ε_i K_(*,i)`.
    pub fn mu(&self) -> Result<SingularSum, LoopError> {
        self.weighted(|t| ReesElement::q_pow(Variant::Oriented, 0).scale(&(t.sign as i64).into()))
    }

    /// `Σ ε_i q^(2(ε_1 + ... + ε_(i-1)) + ε_i) K_(*,i)`.
    pub fn mu_tilde(&self) -> Result<SingularSum, LoopError> {
        self.weighted(|t| {
            ReesElement::q_pow(Variant::Oriented, (2 * t.running + t.sign as i64) as i32)
                .scale(&(t.sign as i64).into())
        })
    }

    /// As `mu_tilde`, with the running exponent read off the writhe so that
    /// each curl insertion or removal moves it by its sign.
    pub fn mu_framed(&self) -> Result<SingularSum, LoopError> {
        self.weighted(|t| {
            ReesElement::q_pow(Variant::Oriented, (t.writhe_shift + t.sign as i64) as i32)
                .scale(&(t.sign as i64).into())
        })
    }

    /// Net exponent of the framed running weight around the loop.
    pub fn framed_monodromy(&self) -> Result<i64, LoopError> {
        let s = self.states()?;
        Ok(s.last().expect("nonempty").writhe() - self.base.writhe())
    }

    /// Expands every smoothed switch with the weights that make the loop
    /// consistent with `K_+ = q^2 K_- + q c K_0`:
    /// `Σ ε_i q^-(2S_(i-1)+ε_i) c_i K_(0,i) - (q^(-2δ') - 1) K`.
    /// The result is zero whenever the expansion is well defined.
    pub fn skein_consistency(&self, pot: &PotentialSpec) -> Result<ExactExpansion, LoopError> {
        if self.base.singular_count() > 0 {
            return Err(LoopError::Inapplicable(
                "consistency needs a regular base".into(),
            ));
        }
        let v = pot.variant;
        let mut e = SkeinExpression::new();
        for t in self.switch_terms()? {
            let x = self.view(&t.before);
            let c = pot.coefficient(skein::site_class(&x, t.site)?);
            let (sm, circles) = skein::smoothing(&x, t.site)?;
            let w = ReesElement::q_pow(v, -(2 * t.running + t.sign as i64) as i32)
                .scale(&(t.sign as i64).into());
            e.add(&(&w * &c) * &pot.u().pow(circles), sm);
        }
        let d = self.switch_count();
        let jump = &ReesElement::q_pow(v, (-2 * d) as i32) - &ReesElement::one(v);
        e.add(-jump, self.view(&self.base));
        Ok(Engine::new(pot.clone())?.expand_expression(&e)?)
    }

    /// Conway smoothing of `μ` split into self and mixed parts, and the
    /// componentwise homotopy classes, computed two ways.
    pub fn lin_and_j(&self) -> Result<LinReport, LoopError> {
        let terms = self.switch_terms()?;
        let mut parts = [BTreeMap::new(), BTreeMap::new()];
        let mut direct = [BTreeMap::new(), BTreeMap::new()];
        for t in &terms {
            let x = self.view(&t.before);
            let (sm, circles) = skein::smoothing(&x, t.site)?;
            // Smooth, then classify by counting components.
            let grew = sm.component_count() + circles as usize > x.component_count();
            *direct[usize::from(!grew)]
                .entry(LinClass::of(&sm, circles))
                .or_insert(0i64) += t.sign as i64;
            // Classify at the crossing, then smooth.
            let k = usize::from(!skein::site_class(&x, t.site)?);
            let slot = parts[k]
                .entry((presentation_key(&sm), circles))
                .or_insert((0i64, sm.clone()));
            slot.0 += t.sign as i64;
        }
        let to_sum = |m: BTreeMap<(PresentationKey, u32), (i64, Presentation)>| -> Vec<LinTerm> {
            m.into_iter()
                .filter(|(_, (c, _))| *c != 0)
                .map(|((_, circles), (coeff, link))| LinTerm {
                    coeff,
                    link,
                    circles,
                })
                .collect()
        };
        let [s, m] = parts;
        let (self_part, mixed_part) = (to_sum(s), to_sum(m));
        let classes = |p: &[LinTerm]| {
            let mut out: BTreeMap<LinClass, i64> = BTreeMap::new();
            for t in p {
                *out.entry(LinClass::of(&t.link, t.circles)).or_insert(0) += t.coeff;
            }
            out.retain(|_, c| *c != 0);
            out
        };
        let j = (classes(&self_part), classes(&mixed_part));
        let [mut ds, mut dm] = direct;
        ds.retain(|_, c| *c != 0);
        dm.retain(|_, c| *c != 0);
        let agree = j == (ds.clone(), dm.clone());
        Ok(LinReport {
            self_part,
            mixed_part,
            j,
            j_direct: (ds, dm),
            agree,
        })
    }

    /// The loop traversed backwards, starting from the base.
    pub fn reversed(&self) -> Result<TransversalLoop, LoopError> {
        let states = self.states()?;
        let mut cur = self.base.clone();
        let mut events = Vec::new();
        for k in (0..self.events.len()).rev() {
            let (evs, next) = step_back(&cur, &self.events[k], &states[k + 1], &states[k])?;
            events.extend(evs);
            cur = next;
        }
        Ok(TransversalLoop {
            base: self.base.clone(),
            events,
        })
    }
}

/// Events taking `cur` (a relabeling of `after`) to a relabeling of
/// `before`, where `e` took `before` to `after`.
fn step_back(
    cur: &Presentation,
    e: &Event,
    after: &Presentation,
    before: &Presentation,
) -> Result<(Vec<Event>, Presentation), LoopError> {
    if cur == after {
        if let Some(evs) = exact_inverse(before, after, e) {
            let mut x = cur.clone();
            for ev in &evs {
                x = apply_event(&x, ev).map_err(LoopError::Inapplicable)?;
            }
            if presentation_key(&x) == presentation_key(before) {
                return Ok((evs, x));
            }
        }
    }
    let target = presentation_key(before);
    for ev in candidate_events(cur) {
        if let Ok(x) = apply_event(cur, &ev) {
            if presentation_key(&x) == target {
                return Ok((vec![ev], x));
            }
        }
    }
    Err(LoopError::Inapplicable(format!("no inverse for {:?}", e)))
}

/// Inverse events when labels are known to match.
fn exact_inverse(before: &Presentation, after: &Presentation, e: &Event) -> Option<Vec<Event>> {
    let letter = |pos: usize| {
        before
            .as_annulus()
            .and_then(|w| w.letters.get(pos).copied())
    };
    Some(match (e, after) {
        (&Event::Switch { site, sign }, _) => vec![Event::Switch { site, sign: -sign }],
        (&Event::CurlInsert { pos, .. }, _) => vec![Event::CurlRemove { pos }],
        (&Event::CurlRemove { pos }, _) => match letter(pos)? {
            Letter::Curl { curl, sign } => vec![Event::CurlInsert {
                pos,
                strand: curl,
                sign,
            }],
            _ => return None,
        },
        (Event::Markov(MarkovMove::CancelPair { pos }), _) => match letter(*pos)? {
            Letter::Sigma(generator, sign) => {
                vec![Event::Markov(MarkovMove::InsertPair {
                    pos: *pos,
                    generator,
                    sign,
                })]
            }
            _ => return None,
        },
        (Event::Markov(MarkovMove::Destabilize), _) => {
            let w = before.as_annulus()?;
            vec![Event::Markov(MarkovMove::Stabilize {
                sign: w.letters.last()?.sign(),
            })]
        }
        (Event::Markov(m), Presentation::Annulus(w)) => match *m {
            MarkovMove::Rotate => {
                vec![Event::Markov(MarkovMove::Rotate); w.len().saturating_sub(1)]
            }
            MarkovMove::BraidRelation { site } => {
                vec![Event::Markov(MarkovMove::BraidRelation { site })]
            }
            MarkovMove::InsertPair { pos, .. } => {
                vec![Event::Markov(MarkovMove::CancelPair { pos })]
            }
            MarkovMove::Conjugate { .. } => vec![
                Event::Markov(MarkovMove::Rotate),
                Event::Markov(MarkovMove::CancelPair {
                    pos: w.len().saturating_sub(2),
                }),
            ],
            MarkovMove::Stabilize { .. } => vec![Event::Markov(MarkovMove::Destabilize)],
            MarkovMove::Destabilize | MarkovMove::CancelPair { .. } => {
                unreachable!("handled above")
            }
        },
        _ => return None,
    })
}

/// Single events worth trying when searching for a way back.
fn candidate_events(x: &Presentation) -> Vec<Event> {
    let mut out = Vec::new();
    match x {
        Presentation::Disk(d) => {
            let mut moves = d.applicable_moves();
            // Removals first: they are the usual inverses and are cheap.
            moves.sort_by_key(|m| matches!(m, Move::R1Insert { .. } | Move::R2Insert { .. }));
            out.extend(moves.into_iter().map(Event::Reidemeister));
            for c in d.crossings() {
                if !d.is_singular(c.id) {
                    out.push(Event::Switch {
                        site: c.id,
                        sign: -c.sign,
                    });
                }
            }
        }
        Presentation::Annulus(w) => {
            out.extend(w.closure_preserving_moves().into_iter().map(Event::Markov));
            out.push(Event::Markov(MarkovMove::Destabilize));
            for (pos, l) in w.letters.iter().enumerate() {
                if !w.is_singular(pos) {
                    out.push(Event::Switch {
                        site: pos,
                        sign: -l.sign(),
                    });
                    if l.is_curl() {
                        out.push(Event::CurlRemove { pos });
                    }
                }
            }
        }
    }
    out
}

/// Componentwise homotopy data of a smoothed link: windings around the
/// core, and the number of contractible components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinClass {
    pub windings: ModelMonomial,
    pub contractible: usize,
}

impl LinClass {
    pub fn of(x: &Presentation, extra_circles: u32) -> LinClass {
        match x {
            Presentation::Disk(d) => LinClass {
                windings: ModelMonomial::trivial(),
                contractible: d.component_count() + extra_circles as usize,
            },
            Presentation::Annulus(_) => LinClass {
                windings: homotopy_class(x),
                contractible: extra_circles as usize,
            },
        }
    }
}

impl std::fmt::Display for LinClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}+{}o", self.windings, self.contractible)
    }
}

#[derive(Clone, Debug)]
pub struct LinTerm {
    pub coeff: i64,
    pub link: Presentation,
    /// Split trivial circles left by smoothing a curl.
    pub circles: u32,
}

#[derive(Clone, Debug)]
pub struct LinReport {
    pub self_part: Vec<LinTerm>,
    pub mixed_part: Vec<LinTerm>,
    /// Classes of the smoothing sums.
    pub j: (BTreeMap<LinClass, i64>, BTreeMap<LinClass, i64>),
    /// Classes computed switch by switch, classifying after smoothing.
    pub j_direct: (BTreeMap<LinClass, i64>, BTreeMap<LinClass, i64>),
    pub agree: bool,
}

/// Recipes for loops with known invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoopKind {
    /// Curl of sign `-sign` inserted on `component`, switched, and removed.
    /// `μ` is `sign` times the base with the curl marked.
    Kink { sign: i8, component: usize },
    /// The same through a stabilization; closed braids only.
    StabilizedKink { sign: i8 },
    /// Four switches around two regular crossings `a`, `b`.
    Differentiability { a: usize, b: usize },
    /// A random isotopy path followed by its inverse.
    Commutator { seed: u64, length: usize },
}

pub fn make_canonical_loop(
    base: &Presentation,
    kind: &LoopKind,
) -> Result<TransversalLoop, LoopError> {
    let events = match (kind, base) {
        (&LoopKind::Kink { sign, component }, Presentation::Disk(d)) => {
            let edge = *d
                .components()
                .get(component)
                .ok_or_else(|| LoopError::Inapplicable(format!("no component {}", component)))?
                .first()
                .expect("components are nonempty");
            let id = d.next_crossing_id();
            vec![
                Event::Reidemeister(Move::R1Insert {
                    edge,
                    sign: -sign,
                    over_first: false,
                }),
                Event::Switch { site: id, sign },
                Event::Reidemeister(Move::R1Remove { crossing: id }),
            ]
        }
        (&LoopKind::Kink { sign, component }, Presentation::Annulus(w)) => {
            let cs = w.closure_structure();
            let strand = *cs
                .cycles
                .get(component)
                .ok_or_else(|| LoopError::Inapplicable(format!("no component {}", component)))?
                .first()
                .expect("cycles are nonempty");
            vec![
                Event::CurlInsert {
                    pos: 0,
                    strand,
                    sign: -sign,
                },
                Event::Switch { site: 0, sign },
                Event::CurlRemove { pos: 0 },
            ]
        }
        (&LoopKind::StabilizedKink { sign }, Presentation::Annulus(w)) => vec![
            Event::Markov(MarkovMove::Stabilize { sign: -sign }),
            Event::Switch {
                site: w.len(),
                sign,
            },
            Event::Markov(MarkovMove::Destabilize),
        ],
        (&LoopKind::Differentiability { a, b }, _) => {
            if a == b {
                return Err(LoopError::Inapplicable("sites must differ".into()));
            }
            let sa = skein::site_sign(base, a)?;
            let sb = skein::site_sign(base, b)?;
            vec![
                Event::Switch { site: b, sign: -sb },
                Event::Switch { site: a, sign: -sa },
                Event::Switch { site: b, sign: sb },
                Event::Switch { site: a, sign: sa },
            ]
        }
        (&LoopKind::Commutator { seed, length }, _) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (path, end) = random_isotopy(base, length, &mut rng);
            let back = path_back(base, &path, &end)?;
            path.into_iter().chain(back).collect()
        }
        _ => return Err(LoopError::Inapplicable(format!("{:?} on this base", kind))),
    };
    let l = TransversalLoop::new(base.clone(), events);
    l.validate()?;
    Ok(l)
}

fn grows(e: &Event) -> bool {
    matches!(
        e,
        Event::Reidemeister(Move::R1Insert { .. } | Move::R2Insert { .. })
            | Event::Markov(MarkovMove::InsertPair { .. } | MarkovMove::Conjugate { .. })
    )
}

fn size(x: &Presentation) -> usize {
    match x {
        Presentation::Disk(d) => d.crossing_count(),
        Presentation::Annulus(w) => w.len(),
    }
}

/// A random walk of isotopy events, growing by at most four crossings.
pub fn random_isotopy(
    base: &Presentation,
    length: usize,
    rng: &mut ChaCha8Rng,
) -> (Vec<Event>, Presentation) {
    let cap = size(base) + 4;
    let mut cur = base.clone();
    let mut path = Vec::new();
    for _ in 0..length {
        let mut cands: Vec<Event> = candidate_events(&cur)
            .into_iter()
            .filter(|e| !e.is_switch() && !matches!(e, Event::CurlRemove { .. }))
            .collect();
        cands.retain(|e| !matches!(e, Event::Markov(MarkovMove::Destabilize)));
        if size(&cur) >= cap {
            cands.retain(|e| !grows(e));
        }
        // Keep the walk from drowning in insertions.
        if cands.len() > 24 {
            let (mut grow, mut keep): (Vec<Event>, Vec<Event>) = cands.into_iter().partition(grows);
            grow.shuffle(rng);
            grow.truncate(8);
            keep.extend(grow);
            cands = keep;
        }
        cands.shuffle(rng);
        if let Some((e, x)) = cands
            .into_iter()
            .find_map(|e| apply_event(&cur, &e).ok().map(|x| (e, x)))
        {
            path.push(e);
            cur = x;
        }
    }
    (path, cur)
}

/// Events leading from `end` back to a relabeling of `base` along `path`.
fn path_back(
    base: &Presentation,
    path: &[Event],
    end: &Presentation,
) -> Result<Vec<Event>, LoopError> {
    let mut states = vec![base.clone()];
    for e in path {
        let x =
            apply_event(states.last().expect("nonempty"), e).map_err(LoopError::Inapplicable)?;
        states.push(x);
    }
    let mut cur = end.clone();
    let mut out = Vec::new();
    for k in (0..path.len()).rev() {
        let (evs, next) = step_back(&cur, &path[k], &states[k + 1], &states[k])?;
        out.extend(evs);
        cur = next;
    }
    Ok(out)
}

/// A loop at `base`: an isotopy path, a kink or differentiability loop at
/// its end, and the path back. Falls back to a commutator when nothing else
/// applies.
pub fn random_loop(base: &Presentation, seed: u64) -> Result<TransversalLoop, LoopError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let len = rng.gen_range(0..=2);
        let (path, end) = random_isotopy(base, len, &mut rng);
        let regular: Vec<usize> = regular_sites(&end);
        let choice = rng.gen_range(0..3);
        let inner = if choice == 1 && regular.len() >= 2 {
            let pick: Vec<&usize> = regular.choose_multiple(&mut rng, 2).collect();
            make_canonical_loop(
                &end,
                &LoopKind::Differentiability {
                    a: *pick[0],
                    b: *pick[1],
                },
            )
        } else if choice == 2 {
            // Two kinks of opposite sign.
            let k1 = kink_at(&end, &mut rng)?;
            let mid = k1.states()?.pop().expect("nonempty");
            let k2 = make_canonical_loop(
                &mid,
                &LoopKind::Kink {
                    sign: -kink_sign(&k1),
                    component: 0,
                },
            )?;
            Ok(TransversalLoop::new(
                end.clone(),
                k1.events.iter().chain(&k2.events).cloned().collect(),
            ))
        } else {
            kink_at(&end, &mut rng)
        };
        let Ok(inner) = inner else { continue };
        let mid = inner.states()?.pop().expect("nonempty");
        let Ok(back) = path_back(base, &path, &mid) else {
            continue;
        };
        let events: Vec<Event> = path.into_iter().chain(inner.events).chain(back).collect();
        let l = TransversalLoop::new(base.clone(), events);
        if l.validate().is_ok() {
            return Ok(l);
        }
    }
    make_canonical_loop(base, &LoopKind::Commutator { seed, length: 2 })
}

fn kink_sign(l: &TransversalLoop) -> i8 {
    l.events
        .iter()
        .find_map(|e| {
            if let Event::Switch { sign, .. } = e {
                Some(*sign)
            } else {
                None
            }
        })
        .unwrap_or(1)
}

fn kink_at(x: &Presentation, rng: &mut ChaCha8Rng) -> Result<TransversalLoop, LoopError> {
    let comps = x.component_count().max(1);
    let kind = LoopKind::Kink {
        sign: if rng.gen_bool(0.5) { 1 } else { -1 },
        component: rng.gen_range(0..comps),
    };
    make_canonical_loop(x, &kind)
}

fn regular_sites(x: &Presentation) -> Vec<usize> {
    match x {
        Presentation::Disk(d) => d
            .crossings()
            .iter()
            .map(|c| c.id)
            .filter(|&i| !d.is_singular(i))
            .collect(),
        Presentation::Annulus(w) => (0..w.len()).filter(|&p| !w.is_singular(p)).collect(),
    }
}
