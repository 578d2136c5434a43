//! Homotopy classes of links, their standard models, and chord diagrams of
//! singular links.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::braid::{perm, BraidWord, Letter, MarkovMove};
use crate::diagram::PlanarDiagram;
use crate::link::{Ambient, Presentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error("malformed monomial: {0}")]
    Parse(String),
    #[error("chord classes implemented for disk ambient only")]
    AnnulusChords,
    #[error("no model link for {0}")]
    NoModel(String),
    #[error("blocks {0} and {1} are not equal neighbours")]
    NotExchangeable(usize, usize),
}

/// A homotopy class of links without null-homotopic components. In the
/// annulus it is the multiset of winding numbers, largest first; in the disk
/// only the trivial monomial exists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelMonomial {
    entries: Vec<i64>,
}

impl ModelMonomial {
    pub fn trivial() -> Self {
        ModelMonomial {
            entries: Vec::new(),
        }
    }

    pub fn new(mut entries: Vec<i64>) -> Self {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        ModelMonomial { entries }
    }

    pub fn from_cycle_type(ct: &[usize]) -> Self {
        Self::new(ct.iter().map(|&c| c as i64).collect())
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.is_empty()
    }

    /// The ambient a monomial lives in: nonempty monomials are annular.
    pub fn ambient(&self) -> Ambient {
        if self.entries.is_empty() {
            Ambient::Disk
        } else {
            Ambient::Annulus
        }
    }

    /// Multiset union.
    pub fn union(&self, other: &ModelMonomial) -> ModelMonomial {
        let mut e = self.entries.clone();
        e.extend_from_slice(&other.entries);
        Self::new(e)
    }

    /// Orientation reversal: winding `n` becomes `-n`.
    pub fn reversed(&self) -> ModelMonomial {
        Self::new(self.entries.iter().map(|e| -e).collect())
    }

    /// Model complexity: the number of components.
    pub fn complexity(&self) -> usize {
        self.entries.len()
    }

    /// All monomials with entries in `1..=max_entry` and at most
    /// `max_components` entries, the trivial one included.
    pub fn enumerate(max_entry: i64, max_components: usize) -> Vec<ModelMonomial> {
        let mut out = vec![ModelMonomial::trivial()];
        let mut layer: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..max_components {
            let mut next = Vec::new();
            for e in &layer {
                let top = e.last().copied().unwrap_or(max_entry);
                for k in 1..=top {
                    let mut f = e.clone();
                    f.push(k);
                    next.push(f);
                }
            }
            out.extend(next.iter().cloned().map(ModelMonomial::new));
            layer = next;
        }
        out
    }
}

impl fmt::Display for ModelMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for ModelMonomial {
    type Err = HomotopyError;

    fn from_str(s: &str) -> Result<Self, HomotopyError> {
        let bad = || HomotopyError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        if inner.trim().is_empty() {
            return Ok(Self::trivial());
        }
        let entries = inner
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        if entries.contains(&0) {
            return Err(bad());
        }
        Ok(Self::new(entries))
    }
}

impl Serialize for ModelMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ModelMonomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The standard link of a class. Annular models are block sums of the
/// cycle braids `σ_a σ_{a+1} ... σ_{a+λ-2}`, blocks in monomial order.
pub fn model_link(m: &ModelMonomial) -> Result<Presentation, HomotopyError> {
    if m.is_trivial() {
        return Ok(Presentation::Disk(PlanarDiagram::empty()));
    }
    if m.entries.iter().any(|&e| e < 1) {
        return Err(HomotopyError::NoModel(m.to_string()));
    }
    let strands: usize = m.entries.iter().map(|&e| e as usize).sum();
    let mut letters = Vec::new();
    let mut start = 1;
    for &e in &m.entries {
        let e = e as usize;
        letters.extend((start..start + e - 1).map(|i| Letter::Sigma(i, 1)));
        start += e;
    }
    let w = BraidWord::new(strands, letters).map_err(|e| HomotopyError::NoModel(e.to_string()))?;
    Ok(Presentation::Annulus(w))
}

pub fn homotopy_class(x: &Presentation) -> ModelMonomial {
    match x {
        Presentation::Disk(_) => ModelMonomial::trivial(),
        Presentation::Annulus(w) => {
            ModelMonomial::from_cycle_type(&w.closure_structure().cycle_type)
        }
    }
}

pub fn complexity(m: &ModelMonomial) -> usize {
    m.complexity()
}

/// A move sequence exchanging two equal neighbouring blocks of a model
/// braid, ending on the original word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockExchange {
    pub moves: Vec<MarkovMove>,
    /// Where each strand position is carried by the exchange.
    pub carried: Vec<usize>,
}

/// Conjugates the model braid by the permutation braid swapping blocks `k`
/// and `k + 1`, slides the generators through it and cancels, then
/// commutes back. Every move preserves the closed braid in the solid torus.
pub fn block_exchange(m: &ModelMonomial, k: usize) -> Result<BlockExchange, HomotopyError> {
    let e = m.entries();
    if k + 1 >= e.len() || e[k] != e[k + 1] || e[k] < 1 {
        return Err(HomotopyError::NotExchangeable(k, k + 1));
    }
    let w = match model_link(m)? {
        Presentation::Annulus(w) => w,
        Presentation::Disk(_) => unreachable!("nonempty monomial"),
    };
    let lam = e[k] as usize;
    let a: usize = e[..k].iter().map(|&x| x as usize).sum();
    let mut target = perm::identity(w.strands);
    for i in 0..lam {
        target[a + i] = a + lam + i;
        target[a + lam + i] = a + i;
    }
    let delta = perm::reduced_word(&target);
    let mut moves: Vec<MarkovMove> = delta
        .iter()
        .rev()
        .map(|&g| MarkovMove::Conjugate {
            generator: g,
            sign: 1,
        })
        .collect();
    let mut cur = replay(&w, &moves).expect("conjugations apply");

    // Slide each letter of the model word left through the swap braid.
    let d = delta.len();
    for t in 0..w.len() {
        let seg: Vec<usize> = cur.letters[t..t + d + 1]
            .iter()
            .map(|l| l.generator().unwrap())
            .collect();
        let sites = relation_path(&seg, |s| s[1..] == delta[..])
            .expect("swap braid absorbs a block letter");
        for s in sites {
            let mv = MarkovMove::BraidRelation { site: t + s };
            cur = cur.markov_move(mv).expect("relation applies");
            moves.push(mv);
        }
    }
    for r in 0..d {
        let mv = MarkovMove::CancelPair {
            pos: w.len() + d - 1 - r,
        };
        cur = cur.markov_move(mv).expect("pair cancels");
        moves.push(mv);
    }
    let goal = w.generators();
    let seg = cur.generators();
    let sites = relation_path(&seg, |s| s == &goal[..]).expect("blocks commute back");
    moves.extend(
        sites
            .into_iter()
            .map(|site| MarkovMove::BraidRelation { site }),
    );
    Ok(BlockExchange {
        moves,
        carried: perm::destination(&target),
    })
}

pub fn replay(w: &BraidWord, moves: &[MarkovMove]) -> Result<BraidWord, crate::braid::BraidError> {
    moves
        .iter()
        .try_fold(w.clone(), |acc, &m| acc.markov_move(m))
}

/// Breadth-first search over positive braid relations from `start` to a
/// word satisfying `done`, returning relation sites.
fn relation_path(start: &[usize], done: impl Fn(&[usize]) -> bool) -> Option<Vec<usize>> {
    if done(start) {
        return Some(Vec::new());
    }
    let mut parent: HashMap<Vec<usize>, (Vec<usize>, usize)> = HashMap::new();
    let mut queue = VecDeque::from([start.to_vec()]);
    parent.insert(start.to_vec(), (Vec::new(), usize::MAX));
    while let Some(x) = queue.pop_front() {
        for site in 0..x.len().saturating_sub(1) {
            let Some(y) = relate(&x, site) else { continue };
            if parent.contains_key(&y) {
                continue;
            }
            parent.insert(y.clone(), (x.clone(), site));
            if done(&y) {
                let mut sites = Vec::new();
                let mut cur = y;
                while let Some((p, s)) = parent.get(&cur).cloned() {
                    if s == usize::MAX {
                        break;
                    }
                    sites.push(s);
                    cur = p;
                }
                sites.reverse();
                return Some(sites);
            }
            queue.push_back(y);
        }
    }
    None
}

/// The positive braid relation at `site`, matching `BraidWord`'s rules.
fn relate(x: &[usize], site: usize) -> Option<Vec<usize>> {
    let (i, j) = (x[site], x[site + 1]);
    let mut y = x.to_vec();
    if i.abs_diff(j) >= 2 {
        y.swap(site, site + 1);
        return Some(y);
    }
    if site + 2 < x.len() && x[site + 2] == i && i.abs_diff(j) == 1 {
        y[site] = j;
        y[site + 1] = i;
        y[site + 2] = j;
        return Some(y);
    }
    None
}

/// Chord diagram of a singular link in the 3-ball: per circle, the cyclic
/// sequence of chord indices (mark order) met along it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChordDiagram {
    circles: Vec<Vec<usize>>,
}

impl ChordDiagram {
    /// Rotates each circle to its least rotation and sorts the circles.
    pub fn new(circles: Vec<Vec<usize>>) -> Self {
        let mut circles: Vec<Vec<usize>> = circles.into_iter().map(least_rotation).collect();
        circles.sort();
        ChordDiagram { circles }
    }

    pub fn empty(circles: usize) -> Self {
        Self::new(vec![Vec::new(); circles])
    }

    pub fn circles(&self) -> &[Vec<usize>] {
        &self.circles
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn chord_count(&self) -> usize {
        self.circles.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Endpoints `(circle, position)` of each chord, in chord order.
    pub fn chords(&self) -> Vec<[(usize, usize); 2]> {
        let mut ends: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.chord_count()];
        for (c, seq) in self.circles.iter().enumerate() {
            for (p, &k) in seq.iter().enumerate() {
                ends[k].push((c, p));
            }
        }
        ends.into_iter().map(|v| [v[0], v[1]]).collect()
    }

    /// Relabels chords by `f` (old index to new).
    pub fn relabeled(&self, f: impl Fn(usize) -> usize) -> ChordDiagram {
        Self::new(
            self.circles
                .iter()
                .map(|c| c.iter().map(|&k| f(k)).collect())
                .collect(),
        )
    }

    /// Adds `n` chordless circles.
    pub fn with_circles(&self, n: usize) -> ChordDiagram {
        let mut c = self.circles.clone();
        c.extend(std::iter::repeat_with(Vec::new).take(n));
        Self::new(c)
    }

    /// Number of circles carrying no chord.
    pub fn bare_circles(&self) -> usize {
        self.circles.iter().filter(|c| c.is_empty()).count()
    }

    /// The same diagram without its chordless circles.
    pub fn core(&self) -> ChordDiagram {
        Self::new(
            self.circles
                .iter()
                .filter(|c| !c.is_empty())
                .cloned()
                .collect(),
        )
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.circles.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self
            .circles
            .iter()
            .map(|c| {
                format!(
                    "({})",
                    c.iter()
                        .map(|k| k.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                )
            })
            .collect();
        write!(f, "{}", parts.join(""))
    }
}

fn least_rotation(seq: Vec<usize>) -> Vec<usize> {
    (0..seq.len().max(1))
        .map(|r| {
            let mut s = seq.clone();
            s.rotate_left(r.min(seq.len()));
            s
        })
        .min()
        .unwrap_or_default()
}

pub fn chord_class(x: &Presentation) -> Result<ChordDiagram, HomotopyError> {
    match x {
        Presentation::Disk(d) => Ok(diagram_chords(d)),
        Presentation::Annulus(_) => Err(HomotopyError::AnnulusChords),
    }
}

pub fn diagram_chords(d: &PlanarDiagram) -> ChordDiagram {
    let mark: HashMap<usize, usize> = d
        .singular()
        .iter()
        .enumerate()
        .map(|(k, &id)| (id, k))
        .collect();
    // Chord index met at the head of each edge, if that crossing is singular.
    let mut at_head: HashMap<usize, usize> = HashMap::new();
    for c in d.crossings() {
        if let Some(&k) = mark.get(&c.id) {
            for slot in 0..4 {
                if c.is_incoming(slot) {
                    at_head.insert(c.ends[slot], k);
                }
            }
        }
    }
    let circles = d
        .components()
        .iter()
        .map(|comp| {
            comp.iter()
                .filter_map(|e| at_head.get(e).copied())
                .collect()
        })
        .collect();
    ChordDiagram::new(circles)
}
