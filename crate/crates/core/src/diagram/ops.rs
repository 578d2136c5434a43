use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Crossing, DiagramError, PlanarDiagram};

/// The four diagrams of a Conway resolution at one crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub plus: PlanarDiagram,
    pub minus: PlanarDiagram,
    pub zero: PlanarDiagram,
    pub star: PlanarDiagram,
}

/// Union-find over edge ids whose roots are the smallest member.
#[derive(Default)]
struct EdgeClasses {
    parent: HashMap<usize, usize>,
}

impl EdgeClasses {
    fn find(&mut self, e: usize) -> usize {
        let p = *self.parent.get(&e).unwrap_or(&e);
        if p == e {
            return e;
        }
        let r = self.find(p);
        self.parent.insert(e, r);
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent.insert(ra.max(rb), ra.min(rb));
        }
    }
}

impl PlanarDiagram {
    /// Deletes crossings and joins the listed (incoming, outgoing) edge pairs
    /// through them. Chains that no longer meet any crossing become free
    /// circles.
    pub(crate) fn splice(&self, delete: &[usize], pairs: &[(usize, usize)]) -> PlanarDiagram {
        let mut uf = EdgeClasses::default();
        for &(a, b) in pairs {
            uf.union(a, b);
        }
        let gone: BTreeSet<usize> = delete.iter().map(|&ci| self.crossings[ci].id).collect();
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .filter(|c| !gone.contains(&c.id))
            .map(|c| Crossing {
                id: c.id,
                ends: c.ends.map(|e| uf.find(e)),
                sign: c.sign,
            })
            .collect();
        let used: BTreeSet<usize> = crossings.iter().flat_map(|c| c.ends).collect();
        let mut free = BTreeSet::new();
        for e in self.edges() {
            let r = uf.find(e);
            if !used.contains(&r) {
                free.insert(r);
            }
        }
        let mut twists = BTreeMap::new();
        for (&e, &t) in &self.twists {
            *twists.entry(uf.find(e)).or_insert(0) += t;
        }
        let singular = self
            .singular
            .iter()
            .copied()
            .filter(|s| !gone.contains(s))
            .collect();
        PlanarDiagram::from_parts(crossings, free.into_iter().collect(), singular, twists)
            .expect("splicing keeps validity")
    }

    /// Replaces the crossing with its switch. Singular crossings are rejected.
    pub fn switch(&self, id: usize) -> Result<PlanarDiagram, DiagramError> {
        let ci = self.crossing_index(id)?;
        if self.is_singular(id) {
            return Err(DiagramError::SingularSite(id));
        }
        let mut d = self.clone();
        d.crossings[ci] = d.crossings[ci].switched();
        Ok(d)
    }

    /// Sets the sign at a regular crossing, switching if needed.
    pub fn with_sign(&self, id: usize, sign: i8) -> Result<PlanarDiagram, DiagramError> {
        if self.crossing(id)?.sign == sign {
            if self.is_singular(id) {
                return Err(DiagramError::SingularSite(id));
            }
            Ok(self.clone())
        } else {
            self.switch(id)
        }
    }

    /// Oriented smoothing at a crossing (regular or singular).
    pub fn smooth(&self, id: usize) -> Result<PlanarDiagram, DiagramError> {
        let ci = self.crossing_index(id)?;
        let pairs = self.crossings[ci].smoothing_pairs();
        Ok(self.splice(&[ci], &pairs))
    }

    /// Appends the crossing to the singular marks, in positive form.
    pub fn mark_singular(&self, id: usize) -> Result<PlanarDiagram, DiagramError> {
        let ci = self.crossing_index(id)?;
        if self.is_singular(id) {
            return Err(DiagramError::SingularSite(id));
        }
        let mut d = self.clone();
        if d.crossings[ci].sign < 0 {
            d.crossings[ci] = d.crossings[ci].switched();
        }
        d.singular.push(id);
        Ok(d)
    }

    /// Turns a singular crossing back into a regular crossing of the given
    /// sign, dropping it from the marks.
    pub fn unmark(&self, id: usize, sign: i8) -> Result<PlanarDiagram, DiagramError> {
        let ci = self.crossing_index(id)?;
        if !self.is_singular(id) {
            return Err(DiagramError::RegularSite(id));
        }
        let mut d = self.clone();
        d.singular.retain(|&s| s != id);
        if sign < 0 {
            d.crossings[ci] = d.crossings[ci].switched();
        }
        Ok(d)
    }

    pub fn resolve(&self, id: usize) -> Result<Resolution, DiagramError> {
        if self.is_singular(id) {
            return Err(DiagramError::SingularSite(id));
        }
        let plus = self.with_sign(id, 1)?;
        let minus = self.with_sign(id, -1)?;
        let zero = self.smooth(id)?;
        let star = plus.mark_singular(id)?;
        Ok(Resolution {
            plus,
            minus,
            zero,
            star,
        })
    }

    /// Side-by-side union; the second diagram is relabeled past the first.
    pub fn disjoint_union(&self, other: &PlanarDiagram) -> PlanarDiagram {
        let other = other.relabeled(self.max_edge() + 1);
        let off = self.next_crossing_id();
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|c| Crossing {
            id: c.id + off,
            ..c.clone()
        }));
        let mut free = self.free_circles();
        free.extend(other.free_circles());
        let mut singular = self.singular.clone();
        singular.extend(other.singular.iter().map(|s| s + off));
        let mut twists = self.twists.clone();
        twists.extend(other.twists.iter().map(|(&e, &t)| (e, t)));
        PlanarDiagram::from_parts(crossings, free, singular, twists)
            .expect("union of valid diagrams")
    }

    /// Reverses the orientation of every component.
    pub fn reversed(&self) -> PlanarDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.ends;
                // The old outgoing under-strand end becomes the incoming one.
                Crossing {
                    id: c.id,
                    ends: [cc, d, a, b],
                    sign: c.sign,
                }
            })
            .collect();
        PlanarDiagram::from_parts(
            crossings,
            self.free_circles(),
            self.singular.clone(),
            self.twists.clone(),
        )
        .expect("reversal keeps validity")
    }

    /// Adds `k` framing twists to the component containing `edge`.
    pub fn add_twist(&self, edge: usize, k: i64) -> Result<PlanarDiagram, DiagramError> {
        if !self.edges().any(|e| e == edge) {
            return Err(DiagramError::NoSuchEdge(edge));
        }
        let mut d = self.clone();
        *d.twists.entry(edge).or_insert(0) += k;
        d.twists.retain(|_, t| *t != 0);
        Ok(d)
    }
}
