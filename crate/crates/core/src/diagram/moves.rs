use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::faces::{faces, Face};
use super::{Crossing, DiagramError, PlanarDiagram};

/// A Reidemeister move together with its site.
///
/// Sites name crossings by id and edges by id. Face-based sites are given
/// by one crossing id and the slot through which the face walk enters it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// Adds a curl on `edge` with the given crossing sign; `over_first`
    /// says whether the strand meets the new crossing first on top.
    R1Insert {
        edge: usize,
        sign: i8,
        over_first: bool,
    },
    /// Removes a curl whose loop edge bounds a monogon.
    R1Remove { crossing: usize },
    /// Pushes one edge over another across a common face. Each edge comes
    /// with the direction (+1 along the orientation) in which the face walk
    /// traverses it; free circles may take either direction.
    R2Insert {
        over: (usize, i8),
        under: (usize, i8),
    },
    /// Removes a bigon whose upper edge is over at both ends.
    R2Remove { crossing: usize, slot: usize },
    /// Slides a strand across the crossing opposite it in a triangle face.
    R3 { crossing: usize, slot: usize },
}

impl Move {
    pub fn is_r1(&self) -> bool {
        matches!(self, Move::R1Insert { .. } | Move::R1Remove { .. })
    }
}

impl PlanarDiagram {
    pub fn apply_move(&self, m: &Move) -> Result<PlanarDiagram, DiagramError> {
        match *m {
            Move::R1Insert {
                edge,
                sign,
                over_first,
            } => self.r1_insert(edge, sign, over_first),
            Move::R1Remove { crossing } => self.r1_remove(crossing),
            Move::R2Insert { over, under } => self.r2_insert(over, under),
            Move::R2Remove { crossing, slot } => self.r2_remove(crossing, slot),
            Move::R3 { crossing, slot } => self.r3(crossing, slot),
        }
    }

    fn face_at(&self, crossing: usize, slot: usize) -> Result<Face, DiagramError> {
        let ci = self.crossing_index(crossing)?;
        if slot > 3 {
            return Err(DiagramError::Inapplicable(format!("slot {}", slot)));
        }
        Ok(faces(self)
            .into_iter()
            .find(|f| f.arrivals.contains(&(ci, slot)))
            .expect("every dart lies on a face"))
    }

    fn r1_insert(
        &self,
        e: usize,
        sign: i8,
        over_first: bool,
    ) -> Result<PlanarDiagram, DiagramError> {
        if sign != 1 && sign != -1 {
            return Err(DiagramError::Inapplicable(format!("sign {}", sign)));
        }
        let ends = self.edge_ends();
        let free = !ends.contains_key(&e);
        if free && !self.free_circles().contains(&e) {
            return Err(DiagramError::NoSuchEdge(e));
        }
        let f = self.max_edge() + 1;
        let g = if free { e } else { f + 1 };
        let mut d = self.clone();
        if let Some((ci, s)) = ends.get(&e).and_then(|x| x.head) {
            d.crossings[ci].ends[s] = g;
        }
        let c = match (over_first, sign > 0) {
            (false, true) => [e, g, f, f],
            (false, false) => [e, f, f, g],
            (true, true) => [f, f, g, e],
            (true, false) => [f, e, g, f],
        };
        d.crossings.push(Crossing {
            id: self.next_crossing_id(),
            ends: c,
            sign,
        });
        let free_circles = d.free_circles_excluding(e);
        PlanarDiagram::from_parts(d.crossings, free_circles, d.singular, d.twists)
    }

    fn free_circles_excluding(&self, e: usize) -> Vec<usize> {
        self.free_circles()
            .into_iter()
            .filter(|&x| x != e)
            .collect()
    }

    /// Loop edge of a curl at this crossing, if its monogon is a face.
    fn curl_loop(&self, ci: usize) -> Option<usize> {
        let c = &self.crossings[ci];
        (0..4).find_map(|s| {
            let t = (s + 1) % 4;
            if c.ends[s] != c.ends[t] {
                return None;
            }
            let mono = faces(self).into_iter().any(|f| f.arrivals == vec![(ci, s)]);
            mono.then_some(c.ends[s])
        })
    }

    fn r1_remove(&self, id: usize) -> Result<PlanarDiagram, DiagramError> {
        let ci = self.crossing_index(id)?;
        if self.is_singular(id) {
            return Err(DiagramError::SingularSite(id));
        }
        if self.curl_loop(ci).is_none() {
            return Err(DiagramError::Inapplicable(format!(
                "crossing {} is not a curl",
                id
            )));
        }
        Ok(self.splice(&[ci], &self.crossings[ci].strands()))
    }

    fn r2_insert(
        &self,
        over: (usize, i8),
        under: (usize, i8),
    ) -> Result<PlanarDiagram, DiagramError> {
        let (e1, s1) = over;
        let (e2, s2) = under;
        if e1 == e2 {
            return Err(DiagramError::Inapplicable(
                "R2 needs two distinct edges".into(),
            ));
        }
        if s1.abs() != 1 || s2.abs() != 1 {
            return Err(DiagramError::Inapplicable("direction must be ±1".into()));
        }
        let circles = self.free_circles();
        let free1 = circles.contains(&e1);
        let free2 = circles.contains(&e2);
        for (e, free) in [(e1, free1), (e2, free2)] {
            if !free && !self.edges().any(|x| x == e) {
                return Err(DiagramError::NoSuchEdge(e));
            }
        }
        if !free1 && !free2 {
            let fs = faces(self);
            let same = fs
                .iter()
                .any(|f| f.edges.contains(&(e1, s1)) && f.edges.contains(&(e2, s2)));
            if !same {
                return Err(DiagramError::Inapplicable(format!(
                    "edges {} and {} do not share a face",
                    e1, e2
                )));
            }
        }
        // Local picture: the face is the strip between y = 0 (e1, walked
        // towards +x) and y = -1 (e2, walked towards -x). e1 dips under the
        // strip through crossings L (x = -1) and R (x = +1).
        let base = self.max_edge() + 1;
        let e1b = base;
        let e2b = base + 1;
        let e1_new = if free1 { e1 } else { base + 2 };
        let e2_new = if free2 { e2 } else { base + 3 };
        // e1 pieces in walk order: before L, after R.
        let (e1a, e1c) = if s1 > 0 { (e1, e1_new) } else { (e1_new, e1) };
        // e2 pieces in walk order: before R (the +x side), after L.
        let (e2a, e2c) = if s2 > 0 { (e2, e2_new) } else { (e2_new, e2) };
        let ends = self.edge_ends();
        let mut d = self.clone();
        if !free1 {
            let (ci, s) = ends[&e1].head.expect("edge head");
            d.crossings[ci].ends[s] = e1_new;
        }
        if !free2 {
            let (ci, s) = ends[&e2].head.expect("edge head");
            d.crossings[ci].ends[s] = e2_new;
        }
        // Arms at L: E = e2b, N = e1a, W = e2c, S = e1b.
        // Arms at R: E = e2a, N = e1c, W = e2b, S = e1b.
        let arrange =
            |east: usize, north: usize, west: usize, south: usize, over_in_north: bool| {
                let ends = if s2 > 0 {
                    [east, north, west, south]
                } else {
                    [west, south, east, north]
                };
                let over_in = if over_in_north { north } else { south };
                let pos = ends.iter().position(|&x| x == over_in).unwrap();
                let sign = if pos == 3 { 1 } else { -1 };
                (ends, sign)
            };
        let (l_ends, l_sign) = arrange(e2b, e1a, e2c, e1b, s1 > 0);
        let (r_ends, r_sign) = arrange(e2a, e1c, e2b, e1b, s1 < 0);
        let id = self.next_crossing_id();
        d.crossings.push(Crossing {
            id,
            ends: l_ends,
            sign: l_sign,
        });
        d.crossings.push(Crossing {
            id: id + 1,
            ends: r_ends,
            sign: r_sign,
        });
        let free: Vec<usize> = circles
            .into_iter()
            .filter(|&x| x != e1 && x != e2)
            .collect();
        PlanarDiagram::from_parts(d.crossings, free, d.singular, d.twists)
    }

    fn r2_remove(&self, id: usize, slot: usize) -> Result<PlanarDiagram, DiagramError> {
        let face = self.face_at(id, slot)?;
        if face.len() != 2 {
            return Err(DiagramError::Inapplicable("face is not a bigon".into()));
        }
        let (x, sx) = face.arrivals[0];
        let (y, sy) = face.arrivals[1];
        if x == y {
            return Err(DiagramError::Inapplicable(
                "bigon meets one crossing twice".into(),
            ));
        }
        for ci in [x, y] {
            if self.is_singular(self.crossings[ci].id) {
                return Err(DiagramError::SingularSite(self.crossings[ci].id));
            }
        }
        // Leaving x through slot sx+1 reaches y at slot sy; leaving y through
        // sy+1 reaches x at slot sx.
        let first = (Crossing::is_over((sx + 1) % 4), Crossing::is_over(sy));
        let second = (Crossing::is_over((sy + 1) % 4), Crossing::is_over(sx));
        if first.0 != first.1 || second.0 != second.1 || first.0 == second.0 {
            return Err(DiagramError::Inapplicable("bigon strands alternate".into()));
        }
        let mut pairs = self.crossings[x].strands().to_vec();
        pairs.extend(self.crossings[y].strands());
        Ok(self.splice(&[x, y], &pairs))
    }

    fn r3(&self, id: usize, slot: usize) -> Result<PlanarDiagram, DiagramError> {
        let face = self.face_at(id, slot)?;
        if face.len() != 3 {
            return Err(DiagramError::Inapplicable("face is not a triangle".into()));
        }
        let cs: BTreeSet<usize> = face.arrivals.iter().map(|a| a.0).collect();
        if cs.len() != 3 {
            return Err(DiagramError::Inapplicable(
                "triangle meets a crossing twice".into(),
            ));
        }
        for &ci in &cs {
            if self.is_singular(self.crossings[ci].id) {
                return Err(DiagramError::SingularSite(self.crossings[ci].id));
            }
        }
        // Side i runs from arrivals[i] (leaving through the next slot) to
        // arrivals[i + 1].
        let sides: Vec<((usize, usize), (usize, usize))> = (0..3)
            .map(|i| {
                let (c, s) = face.arrivals[i];
                ((c, (s + 1) % 4), face.arrivals[(i + 1) % 3])
            })
            .collect();
        let top = sides
            .iter()
            .any(|&((_, a), (_, b))| Crossing::is_over(a) && Crossing::is_over(b));
        if !top {
            return Err(DiagramError::Inapplicable(
                "no strand is over at both of its crossings".into(),
            ));
        }
        let mut d = self.clone();
        for &(a, b) in &sides {
            // Orient the side: tail end is the outgoing slot.
            let (p, q) = if self.crossings[a.0].is_incoming(a.1) {
                (b, a)
            } else {
                (a, b)
            };
            let mid = self.crossings[p.0].ends[p.1];
            let p_in = Crossing::partner(p.1);
            let q_out = Crossing::partner(q.1);
            let e_in = self.crossings[p.0].ends[p_in];
            let e_out = self.crossings[q.0].ends[q_out];
            d.crossings[p.0].ends[p_in] = mid;
            d.crossings[p.0].ends[p.1] = e_out;
            d.crossings[q.0].ends[q.1] = e_in;
            d.crossings[q.0].ends[q_out] = mid;
        }
        PlanarDiagram::from_parts(d.crossings, self.free_circles(), d.singular, d.twists)
    }

    /// Every move applicable to this diagram. R1 and R2 insertions are
    /// listed for each edge (and each pair of edges on a common face).
    pub fn applicable_moves(&self) -> Vec<Move> {
        let mut out = Vec::new();
        let mut edges: Vec<usize> = self.edges().collect();
        edges.sort_unstable();
        for &e in &edges {
            for sign in [1, -1] {
                for over_first in [false, true] {
                    out.push(Move::R1Insert {
                        edge: e,
                        sign,
                        over_first,
                    });
                }
            }
        }
        for (ci, c) in self.crossings.iter().enumerate() {
            if !self.is_singular(c.id) && self.curl_loop(ci).is_some() {
                out.push(Move::R1Remove { crossing: c.id });
            }
        }
        let fs = faces(self);
        for f in &fs {
            for (i, &a) in f.edges.iter().enumerate() {
                for (j, &b) in f.edges.iter().enumerate() {
                    if i != j && a.0 != b.0 {
                        out.push(Move::R2Insert { over: a, under: b });
                    }
                }
            }
        }
        let circles = self.free_circles();
        for &c in &circles {
            for &e in &edges {
                if e != c {
                    out.push(Move::R2Insert {
                        over: (c, 1),
                        under: (e, 1),
                    });
                    out.push(Move::R2Insert {
                        over: (e, 1),
                        under: (c, -1),
                    });
                }
            }
        }
        for f in &fs {
            let (ci, s) = f.arrivals[0];
            let m2 = Move::R2Remove {
                crossing: self.crossings[ci].id,
                slot: s,
            };
            let m3 = Move::R3 {
                crossing: self.crossings[ci].id,
                slot: s,
            };
            if f.len() == 2 && self.apply_move(&m2).is_ok() {
                out.push(m2);
            }
            if f.len() == 3 && self.apply_move(&m3).is_ok() {
                out.push(m3);
            }
        }
        out.dedup();
        out
    }
}
