use std::collections::HashMap;

use super::{fault, Fault, PlanarDiagram};

/// A crossing index (position in the crossing list) and a slot.
pub type Dart = (usize, usize);

/// A face of the diagram, traversed with the face on the right.
///
/// `arrivals[i]` is the dart through which the walk enters a crossing; it
/// then leaves along the next slot counterclockwise, traversing
/// `edges[i] = (edge, direction)` where direction is +1 along the
/// orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub arrivals: Vec<Dart>,
    pub edges: Vec<(usize, i8)>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.arrivals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrivals.is_empty()
    }
}

/// Other end of the edge attached at a dart.
fn involution(d: &PlanarDiagram) -> HashMap<Dart, Dart> {
    let mut by_edge: HashMap<usize, Vec<Dart>> = HashMap::new();
    for (ci, c) in d.crossings.iter().enumerate() {
        for (s, &e) in c.ends.iter().enumerate() {
            by_edge.entry(e).or_default().push((ci, s));
        }
    }
    let mut m = HashMap::new();
    for darts in by_edge.values() {
        if let [a, b] = darts[..] {
            m.insert(a, b);
            m.insert(b, a);
        }
    }
    m
}

pub(crate) fn faces(d: &PlanarDiagram) -> Vec<Face> {
    let inv = involution(d);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for ci in 0..d.crossings.len() {
        for s in 0..4 {
            if seen.contains(&(ci, s)) {
                continue;
            }
            let mut face = Face {
                arrivals: Vec::new(),
                edges: Vec::new(),
            };
            let mut cur = (ci, s);
            while seen.insert(cur) {
                face.arrivals.push(cur);
                let leave = (cur.0, (cur.1 + 1) % 4);
                let c = &d.crossings[leave.0];
                let dir = if c.is_incoming(leave.1) { -1 } else { 1 };
                face.edges.push((c.ends[leave.1], dir));
                cur = inv[&leave];
            }
            out.push(face);
        }
    }
    out
}

/// Connected pieces of the crossing graph, as lists of crossing indices.
pub(crate) fn pieces(d: &PlanarDiagram) -> Vec<Vec<usize>> {
    let n = d.crossings.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    let mut at: HashMap<usize, usize> = HashMap::new();
    for (ci, c) in d.crossings.iter().enumerate() {
        for &e in &c.ends {
            if let Some(&other) = at.get(&e) {
                let (a, b) = (find(&mut parent, ci), find(&mut parent, other));
                parent[a.max(b)] = a.min(b);
            } else {
                at.insert(e, ci);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for ci in 0..n {
        let r = find(&mut parent, ci);
        groups.entry(r).or_default().push(ci);
    }
    groups.into_values().collect()
}

/// Euler count per connected piece: a planar piece with `n` crossings has
/// exactly `n + 2` faces.
pub(crate) fn check_planarity(d: &PlanarDiagram, faults: &mut Vec<Fault>) {
    let fs = faces(d);
    let pieces = pieces(d);
    let mut piece_of = vec![0; d.crossings.len()];
    for (i, p) in pieces.iter().enumerate() {
        for &ci in p {
            piece_of[ci] = i;
        }
    }
    let mut count = vec![0usize; pieces.len()];
    for f in &fs {
        count[piece_of[f.arrivals[0].0]] += 1;
    }
    for (i, p) in pieces.iter().enumerate() {
        if count[i] != p.len() + 2 {
            faults.push(fault(
                "planarity",
                format!("piece with {} crossings has {} faces", p.len(), count[i]),
            ));
        }
    }
}

impl PlanarDiagram {
    pub fn faces(&self) -> Vec<Face> {
        faces(self)
    }
}
