use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::faces::pieces;
use super::{Crossing, PlanarDiagram};

/// Relabeling-invariant code of a diagram. Equal codes mean the diagrams
/// agree up to renaming edges and crossings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalCode(pub Vec<i64>);

const COMPONENT: i64 = -1;
const PIECE: i64 = -2;
const CIRCLES: i64 = -3;

struct Walker<'a> {
    d: &'a PlanarDiagram,
    head: HashMap<usize, (usize, usize)>,
    comp_of: HashMap<usize, usize>,
    mark_index: HashMap<usize, i64>,
}

impl<'a> Walker<'a> {
    fn new(d: &'a PlanarDiagram) -> Self {
        let head = d
            .edge_ends()
            .into_iter()
            .filter_map(|(e, ends)| ends.head.map(|h| (e, h)))
            .collect();
        let mark_index = d
            .singular
            .iter()
            .enumerate()
            .map(|(i, &s)| (s, i as i64))
            .collect();
        Walker {
            d,
            head,
            comp_of: d.edge_components(),
            mark_index,
        }
    }

    fn kind(&self, ci: usize) -> i64 {
        let c = &self.d.crossings[ci];
        match self.mark_index.get(&c.id) {
            Some(&i) => 2 + i,
            None => (c.sign > 0) as i64,
        }
    }

    /// Traversal code of the piece containing `start`, starting there.
    fn code_from(&self, start: usize) -> Vec<i64> {
        let mut label: HashMap<usize, i64> = HashMap::new();
        let mut order: Vec<usize> = Vec::new();
        let mut done = vec![false; self.d.components.len()];
        let mut out = Vec::new();
        let mut next_start = Some(start);
        while let Some(e0) = next_start {
            let comp = self.comp_of[&e0];
            done[comp] = true;
            out.push(COMPONENT);
            let mut e = e0;
            let mut framing = 0;
            loop {
                framing += self.d.twists.get(&e).copied().unwrap_or(0);
                let (ci, s) = self.head[&e];
                let n = label.len() as i64;
                let l = *label.entry(ci).or_insert_with(|| {
                    order.push(ci);
                    n
                });
                out.extend([l, Crossing::is_over(s) as i64, self.kind(ci)]);
                e = self.d.crossings[ci].ends[Crossing::partner(s)];
                if e == e0 {
                    break;
                }
            }
            out.push(framing);
            next_start = None;
            'scan: for &ci in &order {
                let c = &self.d.crossings[ci];
                for (s, &x) in c.ends.iter().enumerate() {
                    if !c.is_incoming(s) && !done[self.comp_of[&x]] {
                        next_start = Some(x);
                        break 'scan;
                    }
                }
            }
        }
        out
    }
}

impl PlanarDiagram {
    pub fn canonical_code(&self) -> CanonicalCode {
        let w = Walker::new(self);
        let mut piece_codes: Vec<Vec<i64>> = pieces(self)
            .into_iter()
            .map(|p| {
                p.iter()
                    .flat_map(|&ci| self.crossings[ci].ends)
                    .map(|e| w.code_from(e))
                    .min()
                    .expect("pieces are nonempty")
            })
            .collect();
        piece_codes.sort();
        let mut out = Vec::new();
        for pc in piece_codes {
            out.push(PIECE);
            out.extend(pc);
        }
        out.push(CIRCLES);
        let mut circles: Vec<i64> = self
            .free_circles()
            .iter()
            .map(|e| self.twists.get(e).copied().unwrap_or(0))
            .collect();
        circles.sort_unstable();
        out.extend(circles);
        CanonicalCode(out)
    }
}

impl PlanarDiagram {
    /// Traversal code from the fixed basepoints: components in order, each
    /// from its lowest edge, crossings labeled by first visit. Unlike the
    /// canonical code it depends on the labeling through the basepoints.
    pub fn walk_code(&self) -> Vec<i64> {
        let w = Walker::new(self);
        let mut label: HashMap<usize, i64> = HashMap::new();
        let mut out = Vec::new();
        for comp in &self.components {
            out.push(COMPONENT);
            let mut framing = 0;
            for &e in comp {
                framing += self.twists.get(&e).copied().unwrap_or(0);
                if let Some(&(ci, s)) = w.head.get(&e) {
                    let n = label.len() as i64;
                    let l = *label.entry(ci).or_insert(n);
                    out.extend([l, Crossing::is_over(s) as i64, w.kind(ci)]);
                }
            }
            out.push(framing);
        }
        out
    }
}
