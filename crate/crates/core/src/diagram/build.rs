use std::collections::{BTreeMap, HashMap};

use super::{Crossing, PlanarDiagram};

/// A letter of a braid word read in the 3-ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureLetter {
    /// Generator `σ_i^sign`, 1-based.
    Cross(usize, i8),
    /// Curl on the strand at a 0-based position.
    Curl(usize, i8),
}

impl PlanarDiagram {
    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn unlink(n: usize) -> Self {
        PlanarDiagram::from_parts(Vec::new(), (1..=n).collect(), Vec::new(), BTreeMap::new())
            .expect("unlink is valid")
    }

    /// Planar closure of a braid with strands running upward. Letters are
    /// `(i, sign)` with `1 <= i < strands`; `singular` lists letter positions
    /// to mark, in mark order.
    pub fn braid_closure(strands: usize, letters: &[(usize, i8)], singular: &[usize]) -> Self {
        let ls: Vec<ClosureLetter> = letters
            .iter()
            .map(|&(i, s)| ClosureLetter::Cross(i, s))
            .collect();
        Self::closure_of(strands, &ls, singular)
    }

    /// Like [`PlanarDiagram::braid_closure`], also allowing curls. Crossing
    /// ids are letter positions.
    pub fn closure_of(strands: usize, letters: &[ClosureLetter], singular: &[usize]) -> Self {
        let mut next = 1usize;
        let mut fresh = || {
            let e = next;
            next += 1;
            e
        };
        let initial: Vec<usize> = (0..strands).map(|_| fresh()).collect();
        let mut current = initial.clone();
        let mut crossings = Vec::new();
        for (k, &l) in letters.iter().enumerate() {
            match l {
                ClosureLetter::Cross(i, sign) => {
                    let (sw, se) = (current[i - 1], current[i]);
                    let (nw, ne) = (fresh(), fresh());
                    let ends = if sign > 0 {
                        [se, ne, nw, sw]
                    } else {
                        [sw, se, ne, nw]
                    };
                    crossings.push(Crossing { id: k, ends, sign });
                    current[i - 1] = nw;
                    current[i] = ne;
                }
                ClosureLetter::Curl(p, sign) => {
                    let e = current[p];
                    let (f, g) = (fresh(), fresh());
                    let ends = if sign > 0 { [e, g, f, f] } else { [e, f, f, g] };
                    crossings.push(Crossing { id: k, ends, sign });
                    current[p] = g;
                }
            }
        }
        // Closing arcs identify the top of each position with its bottom.
        let rename: HashMap<usize, usize> = current
            .iter()
            .zip(&initial)
            .filter(|(a, b)| a != b)
            .map(|(&a, &b)| (a, b))
            .collect();
        for c in &mut crossings {
            for e in &mut c.ends {
                if let Some(&r) = rename.get(e) {
                    *e = r;
                }
            }
        }
        let used: std::collections::BTreeSet<usize> =
            crossings.iter().flat_map(|c| c.ends).collect();
        let free = initial.into_iter().filter(|e| !used.contains(e)).collect();
        let mut d = PlanarDiagram::from_parts(crossings, free, Vec::new(), BTreeMap::new())
            .expect("braid closures are valid");
        for &p in singular {
            d = d.mark_singular(p).expect("singular position in range");
        }
        d
    }

    pub fn hopf_positive() -> Self {
        Self::braid_closure(2, &[(1, 1), (1, 1)], &[])
    }

    pub fn hopf_negative() -> Self {
        Self::braid_closure(2, &[(1, -1), (1, -1)], &[])
    }

    pub fn trefoil_right() -> Self {
        Self::braid_closure(2, &[(1, 1), (1, 1), (1, 1)], &[])
    }

    pub fn trefoil_left() -> Self {
        Self::braid_closure(2, &[(1, -1), (1, -1), (1, -1)], &[])
    }

    pub fn figure_eight() -> Self {
        Self::braid_closure(3, &[(1, 1), (2, -1), (1, 1), (2, -1)], &[])
    }

    /// Unknot with one curl of the given sign.
    pub fn kink(sign: i8) -> Self {
        Self::braid_closure(1, &[], &[])
            .apply_move(&super::Move::R1Insert {
                edge: 1,
                sign,
                over_first: false,
            })
            .expect("curl on a circle")
    }
}
