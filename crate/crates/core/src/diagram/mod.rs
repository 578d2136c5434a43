//! Oriented planar link diagrams in PD form, with ordered singular marks and
//! per-edge framing twists.
//!
//! Each crossing lists its four incident edges counterclockwise, starting at
//! the incoming under-strand. The under-strand runs slot 0 to slot 2. At a
//! positive crossing the over-strand enters at slot 3 and leaves at slot 1; at
//! a negative crossing it enters at slot 1. Singular crossings are stored in
//! positive form.

mod build;
mod code;
mod faces;
mod moves;
mod ops;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use build::ClosureLetter;
pub use code::CanonicalCode;
pub use faces::{Dart, Face};
pub use moves::Move;
pub use ops::Resolution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("invalid diagram: {}", .0.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Fault>),
    #[error("no crossing with id {0}")]
    NoSuchCrossing(usize),
    #[error("no edge with id {0}")]
    NoSuchEdge(usize),
    #[error("crossing {0} is singular")]
    SingularSite(usize),
    #[error("crossing {0} is not singular")]
    RegularSite(usize),
    #[error("move not applicable: {0}")]
    Inapplicable(String),
}

/// A violated invariant together with the place it was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fault {
    pub kind: &'static str,
    pub site: String,
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.kind, self.site)
    }
}

fn fault(kind: &'static str, site: impl Into<String>) -> Fault {
    Fault {
        kind,
        site: site.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub id: usize,
    pub ends: [usize; 4],
    pub sign: i8,
}

impl Crossing {
    pub fn is_incoming(&self, slot: usize) -> bool {
        slot_incoming(self.sign, slot)
    }

    /// The slot on the same strand.
    pub fn partner(slot: usize) -> usize {
        (slot + 2) % 4
    }

    pub fn is_over(slot: usize) -> bool {
        slot % 2 == 1
    }

    /// Incoming and outgoing edge of the under-strand, then of the over-strand.
    pub fn strands(&self) -> [(usize, usize); 2] {
        let [a, b, c, d] = self.ends;
        if self.sign > 0 {
            [(a, c), (d, b)]
        } else {
            [(a, c), (b, d)]
        }
    }

    /// Edge pairs joined by the orientation-respecting smoothing.
    pub fn smoothing_pairs(&self) -> [(usize, usize); 2] {
        let [a, b, c, d] = self.ends;
        if self.sign > 0 {
            [(a, b), (d, c)]
        } else {
            [(a, d), (b, c)]
        }
    }

    /// The same geometric crossing with the other strand on top.
    pub fn switched(&self) -> Crossing {
        let [a, b, c, d] = self.ends;
        let ends = if self.sign > 0 {
            [d, a, b, c]
        } else {
            [b, c, d, a]
        };
        Crossing {
            id: self.id,
            ends,
            sign: -self.sign,
        }
    }
}

fn slot_incoming(sign: i8, slot: usize) -> bool {
    match slot {
        0 => true,
        2 => false,
        3 => sign > 0,
        _ => sign < 0,
    }
}

/// JSON shape of a diagram, validated on conversion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDiagram {
    pub crossings: Vec<Crossing>,
    pub components: Vec<Vec<usize>>,
    #[serde(default)]
    pub singular: Vec<usize>,
    #[serde(default)]
    pub framing: BTreeMap<usize, i64>,
}

/// Head and tail of an edge as (crossing index, slot).
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct EdgeEnds {
    pub head: Option<(usize, usize)>,
    pub tail: Option<(usize, usize)>,
}

/// A validated oriented link diagram.
///
/// Components are derived from the crossings: each is the cyclic edge
/// sequence starting at its lowest edge id, and components are ordered by
/// that id. Free circles are components with a single crossing-free edge.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    components: Vec<Vec<usize>>,
    singular: Vec<usize>,
    twists: BTreeMap<usize, i64>,
}

impl PlanarDiagram {
    pub fn empty() -> Self {
        PlanarDiagram {
            crossings: Vec::new(),
            components: Vec::new(),
            singular: Vec::new(),
            twists: BTreeMap::new(),
        }
    }

    /// Assembles a diagram from crossings and free circles, tracing the
    /// components. Fails with the full fault list if anything is off.
    pub fn from_parts(
        crossings: Vec<Crossing>,
        free_circles: Vec<usize>,
        singular: Vec<usize>,
        twists: BTreeMap<usize, i64>,
    ) -> Result<Self, DiagramError> {
        let mut faults = Vec::new();
        check_crossings(&crossings, &singular, &mut faults);
        let ends = edge_ends(&crossings);
        for &e in &free_circles {
            if ends.contains_key(&e) {
                faults.push(fault(
                    "edge multiplicity",
                    format!("free circle {} meets a crossing", e),
                ));
            }
        }
        let distinct: BTreeSet<_> = free_circles.iter().collect();
        if distinct.len() != free_circles.len() {
            faults.push(fault("edge multiplicity", "repeated free circle"));
        }
        if !faults.is_empty() {
            return Err(DiagramError::Invalid(faults));
        }
        let mut components = trace_components(&crossings, &ends);
        components.extend(free_circles.into_iter().map(|e| vec![e]));
        components.sort_by_key(|c| c[0]);
        let twists = twists.into_iter().filter(|&(_, t)| t != 0).collect();
        let d = PlanarDiagram {
            crossings,
            components,
            singular,
            twists,
        };
        let mut faults = Vec::new();
        faces::check_planarity(&d, &mut faults);
        if !faults.is_empty() {
            return Err(DiagramError::Invalid(faults));
        }
        Ok(d)
    }

    pub fn from_raw(raw: &RawDiagram) -> Result<Self, DiagramError> {
        validate(raw)?;
        let in_crossings: BTreeSet<usize> = raw.crossings.iter().flat_map(|c| c.ends).collect();
        let free: Vec<usize> = raw
            .components
            .iter()
            .filter(|c| c.len() == 1 && !in_crossings.contains(&c[0]))
            .map(|c| c[0])
            .collect();
        let mut twists = BTreeMap::new();
        for (&i, &f) in &raw.framing {
            twists.insert(raw.components[i][0], f);
        }
        Self::from_parts(raw.crossings.clone(), free, raw.singular.clone(), twists)
    }

    pub fn to_raw(&self) -> RawDiagram {
        let framing = (0..self.components.len())
            .filter_map(|i| {
                let f = self.component_framing(i);
                (f != 0).then_some((i, f))
            })
            .collect();
        RawDiagram {
            crossings: self.crossings.clone(),
            components: self.components.clone(),
            singular: self.singular.clone(),
            framing,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let raw: RawDiagram = serde_json::from_str(text)
            .map_err(|e| DiagramError::Invalid(vec![fault("json", e.to_string())]))?;
        Self::from_raw(&raw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("diagram serializes")
    }

    /// Re-checks every invariant. Diagrams built by this crate always pass.
    pub fn validate(&self) -> Result<(), DiagramError> {
        validate(&self.to_raw())
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn singular(&self) -> &[usize] {
        &self.singular
    }

    pub fn twists(&self) -> &BTreeMap<usize, i64> {
        &self.twists
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_singular(&self, id: usize) -> bool {
        self.singular.contains(&id)
    }

    pub fn crossing(&self, id: usize) -> Result<&Crossing, DiagramError> {
        self.crossings
            .iter()
            .find(|c| c.id == id)
            .ok_or(DiagramError::NoSuchCrossing(id))
    }

    pub(crate) fn crossing_index(&self, id: usize) -> Result<usize, DiagramError> {
        self.crossings
            .iter()
            .position(|c| c.id == id)
            .ok_or(DiagramError::NoSuchCrossing(id))
    }

    /// Sum of the signs of the regular crossings.
    pub fn writhe(&self) -> i64 {
        self.crossings
            .iter()
            .filter(|c| !self.is_singular(c.id))
            .map(|c| c.sign as i64)
            .sum()
    }

    pub fn component_framing(&self, i: usize) -> i64 {
        self.components[i]
            .iter()
            .map(|e| self.twists.get(e).copied().unwrap_or(0))
            .sum()
    }

    pub fn total_decoration(&self) -> i64 {
        self.twists.values().sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.components.iter().flatten().copied()
    }

    pub fn max_edge(&self) -> usize {
        self.edges().max().unwrap_or(0)
    }

    pub fn next_crossing_id(&self) -> usize {
        self.crossings.iter().map(|c| c.id + 1).max().unwrap_or(0)
    }

    /// Component index of every edge.
    pub fn edge_components(&self) -> HashMap<usize, usize> {
        let mut m = HashMap::new();
        for (i, comp) in self.components.iter().enumerate() {
            for &e in comp {
                m.insert(e, i);
            }
        }
        m
    }

    pub(crate) fn edge_ends(&self) -> HashMap<usize, EdgeEnds> {
        edge_ends(&self.crossings)
    }

    /// Whether the two strands at a crossing belong to the same component.
    pub fn is_self_crossing(&self, id: usize) -> Result<bool, DiagramError> {
        let c = self.crossing(id)?;
        let comp = self.edge_components();
        Ok(comp[&c.ends[0]] == comp[&c.ends[1]])
    }

    /// Free circles, i.e. components that meet no crossing.
    pub fn free_circles(&self) -> Vec<usize> {
        let used: BTreeSet<usize> = self.crossings.iter().flat_map(|c| c.ends).collect();
        self.components
            .iter()
            .filter(|c| c.len() == 1 && !used.contains(&c[0]))
            .map(|c| c[0])
            .collect()
    }

    /// Renumbers edges `base, base+1, ...` and crossings `0, 1, ...` in
    /// traversal order.
    pub fn relabeled(&self, edge_base: usize) -> PlanarDiagram {
        let mut emap = HashMap::new();
        for e in self.edges() {
            let n = emap.len();
            emap.entry(e).or_insert(edge_base + n);
        }
        let cmap: HashMap<usize, usize> = self
            .crossings
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id, i))
            .collect();
        self.renamed(&emap, &cmap)
    }

    pub(crate) fn renamed(
        &self,
        emap: &HashMap<usize, usize>,
        cmap: &HashMap<usize, usize>,
    ) -> PlanarDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                id: cmap[&c.id],
                ends: c.ends.map(|e| emap[&e]),
                sign: c.sign,
            })
            .collect();
        let free = self.free_circles().iter().map(|e| emap[e]).collect();
        let singular = self.singular.iter().map(|s| cmap[s]).collect();
        let twists = self.twists.iter().map(|(e, t)| (emap[e], *t)).collect();
        PlanarDiagram::from_parts(crossings, free, singular, twists)
            .expect("renaming keeps validity")
    }
}

fn edge_ends(crossings: &[Crossing]) -> HashMap<usize, EdgeEnds> {
    let mut m: HashMap<usize, EdgeEnds> = HashMap::new();
    for (ci, c) in crossings.iter().enumerate() {
        for (s, &e) in c.ends.iter().enumerate() {
            let entry = m.entry(e).or_default();
            if c.is_incoming(s) {
                entry.head = Some((ci, s));
            } else {
                entry.tail = Some((ci, s));
            }
        }
    }
    m
}

fn check_crossings(crossings: &[Crossing], singular: &[usize], faults: &mut Vec<Fault>) {
    let mut ids = BTreeSet::new();
    for c in crossings {
        if !ids.insert(c.id) {
            faults.push(fault("crossing id", format!("duplicate id {}", c.id)));
        }
        if c.sign != 1 && c.sign != -1 {
            faults.push(fault("sign", format!("crossing {}", c.id)));
        }
    }
    let mut heads: HashMap<usize, usize> = HashMap::new();
    let mut tails: HashMap<usize, usize> = HashMap::new();
    let mut count: HashMap<usize, usize> = HashMap::new();
    for c in crossings {
        for (s, &e) in c.ends.iter().enumerate() {
            *count.entry(e).or_default() += 1;
            if c.is_incoming(s) {
                *heads.entry(e).or_default() += 1;
            } else {
                *tails.entry(e).or_default() += 1;
            }
        }
    }
    for (&e, &n) in &count {
        if n != 2 {
            faults.push(fault(
                "edge multiplicity",
                format!("edge {} referenced {} times", e, n),
            ));
        } else if heads.get(&e) != Some(&1) || tails.get(&e) != Some(&1) {
            faults.push(fault("orientation", format!("edge {}", e)));
        }
    }
    let mut seen = BTreeSet::new();
    for &s in singular {
        if !seen.insert(s) {
            faults.push(fault(
                "singular order",
                format!("crossing {} marked twice", s),
            ));
        }
        match crossings.iter().find(|c| c.id == s) {
            None => faults.push(fault("singular mark", format!("unknown crossing {}", s))),
            Some(c) if c.sign < 0 => faults.push(fault(
                "singular mark",
                format!("crossing {} not in positive form", s),
            )),
            _ => {}
        }
    }
}

fn trace_components(crossings: &[Crossing], ends: &HashMap<usize, EdgeEnds>) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut all: Vec<usize> = ends.keys().copied().collect();
    all.sort_unstable();
    for start in all {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = Vec::new();
        let mut e = start;
        loop {
            seen.insert(e);
            comp.push(e);
            let (ci, s) = ends[&e].head.expect("edge has a head");
            e = crossings[ci].ends[Crossing::partner(s)];
            if e == start {
                break;
            }
        }
        out.push(comp);
    }
    out
}

/// Checks a raw diagram against every invariant.
pub fn validate(raw: &RawDiagram) -> Result<(), DiagramError> {
    let mut faults = Vec::new();
    check_crossings(&raw.crossings, &raw.singular, &mut faults);
    if !faults.is_empty() {
        return Err(DiagramError::Invalid(faults));
    }
    let ends = edge_ends(&raw.crossings);
    let traced = trace_components(&raw.crossings, &ends);
    let mut listed = BTreeSet::new();
    for (i, comp) in raw.components.iter().enumerate() {
        if comp.is_empty() {
            faults.push(fault("component", format!("component {} is empty", i)));
            continue;
        }
        for &e in comp {
            if !listed.insert(e) {
                faults.push(fault(
                    "edge multiplicity",
                    format!("edge {} in two components", e),
                ));
            }
        }
        if comp.len() == 1 && !ends.contains_key(&comp[0]) {
            continue;
        }
        let matches = traced.iter().any(|t| {
            t.len() == comp.len()
                && (0..t.len()).any(|r| t.iter().cycle().skip(r).take(t.len()).eq(comp.iter()))
        });
        if !matches {
            faults.push(fault(
                "orientation",
                format!("component {} does not follow the crossings", i),
            ));
        }
    }
    for e in ends.keys() {
        if !listed.contains(e) {
            faults.push(fault("component", format!("edge {} in no component", e)));
        }
    }
    for &i in raw.framing.keys() {
        if i >= raw.components.len() {
            faults.push(fault("framing", format!("no component {}", i)));
        }
    }
    if !faults.is_empty() {
        return Err(DiagramError::Invalid(faults));
    }
    let free: Vec<usize> = raw
        .components
        .iter()
        .filter(|c| c.len() == 1 && !ends.contains_key(&c[0]))
        .map(|c| c[0])
        .collect();
    let probe = PlanarDiagram {
        crossings: raw.crossings.clone(),
        components: traced
            .into_iter()
            .chain(free.into_iter().map(|e| vec![e]))
            .collect(),
        singular: raw.singular.clone(),
        twists: BTreeMap::new(),
    };
    faces::check_planarity(&probe, &mut faults);
    if faults.is_empty() {
        Ok(())
    } else {
        Err(DiagramError::Invalid(faults))
    }
}

impl fmt::Debug for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PD[")?;
        for (i, c) in self.crossings.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let tag = if self.is_singular(c.id) {
                "*"
            } else if c.sign > 0 {
                "+"
            } else {
                "-"
            };
            write!(f, "{}{}{:?}", c.id, tag, c.ends)?;
        }
        write!(f, "; circles {:?}", self.free_circles())?;
        if !self.twists.is_empty() {
            write!(f, "; twists {:?}", self.twists)?;
        }
        write!(f, "]")
    }
}
