use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::perm;
use super::{BraidError, BraidWord, Letter};

/// Moves on braid words. All but the (de)stabilizations preserve the closed
/// braid in the solid torus; (de)stabilizations preserve only the link in
/// the 3-ball, changing the winding of one component by one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum MarkovMove {
    /// Moves the first letter to the end.
    Rotate,
    /// Far commutation at `site, site+1`, or a braid relation at
    /// `site, site+1, site+2`.
    BraidRelation { site: usize },
    /// Appends `σ_n^sign` on a new strand.
    Stabilize { sign: i8 },
    /// Removes a final `σ_{n-1}^±` whose generator occurs once.
    Destabilize,
    /// `w -> σ_i^sign w σ_i^-sign`.
    Conjugate { generator: usize, sign: i8 },
    /// Inserts `σ_i^sign σ_i^-sign` before position `pos`.
    InsertPair {
        pos: usize,
        generator: usize,
        sign: i8,
    },
    /// Cancels an adjacent inverse pair at `pos, pos+1`.
    CancelPair { pos: usize },
}

impl MarkovMove {
    pub fn preserves_annular_closure(&self) -> bool {
        !matches!(self, MarkovMove::Stabilize { .. } | MarkovMove::Destabilize)
    }
}

/// Where the annular reduction stands on a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalStatus {
    PositivePermutation,
    /// Leftmost negative letter.
    HasNegative(usize),
    /// Two strands crossing twice (0-based starting positions), plus a
    /// sequence of braid-relation sites bringing the crossings together, or
    /// `None` if the bounded search gave up.
    PositiveReducible {
        strands: (usize, usize),
        moves: Option<Vec<usize>>,
    },
}

fn shifted_marks(w: &BraidWord, f: impl Fn(usize) -> usize) -> Vec<usize> {
    w.singular.iter().map(|&m| f(m)).collect()
}

impl BraidWord {
    pub fn markov_move(&self, m: MarkovMove) -> Result<BraidWord, BraidError> {
        let n = self.letters.len();
        let out = match m {
            MarkovMove::Rotate => {
                if n == 0 {
                    return Ok(self.clone());
                }
                let mut letters = self.letters[1..].to_vec();
                letters.push(self.letters[0]);
                let singular = shifted_marks(self, |p| (p + n - 1) % n);
                BraidWord {
                    strands: self.strands,
                    letters,
                    singular,
                }
            }
            MarkovMove::BraidRelation { site } => self.braid_relation(site)?,
            MarkovMove::Stabilize { sign } => {
                if sign.abs() != 1 {
                    return Err(BraidError::Inapplicable("sign must be ±1".into()));
                }
                let mut letters = self.letters.clone();
                letters.push(Letter::Sigma(self.strands, sign));
                BraidWord {
                    strands: self.strands + 1,
                    letters,
                    singular: self.singular.clone(),
                }
            }
            MarkovMove::Destabilize => {
                let k = self.strands.checked_sub(1).filter(|&k| k >= 1);
                let last = self.letters.last().and_then(Letter::generator);
                let uses = self.generators().iter().filter(|&&g| Some(g) == k).count();
                let curls_on_top = self
                    .letters
                    .iter()
                    .any(|l| matches!(*l, Letter::Curl { curl, .. } if Some(curl) == k));
                if k.is_none() || last != k || uses != 1 || curls_on_top || self.is_singular(n - 1)
                {
                    return Err(BraidError::Inapplicable("no final lone σ_{n-1}".into()));
                }
                BraidWord {
                    strands: self.strands - 1,
                    letters: self.letters[..n - 1].to_vec(),
                    singular: self.singular.clone(),
                }
            }
            MarkovMove::Conjugate { generator, sign } => {
                let mut letters = vec![Letter::Sigma(generator, sign)];
                letters.extend_from_slice(&self.letters);
                letters.push(Letter::Sigma(generator, -sign));
                BraidWord {
                    strands: self.strands,
                    letters,
                    singular: shifted_marks(self, |p| p + 1),
                }
            }
            MarkovMove::InsertPair {
                pos,
                generator,
                sign,
            } => {
                if pos > n {
                    return Err(BraidError::Inapplicable(format!("position {}", pos)));
                }
                let mut letters = self.letters[..pos].to_vec();
                letters.push(Letter::Sigma(generator, sign));
                letters.push(Letter::Sigma(generator, -sign));
                letters.extend_from_slice(&self.letters[pos..]);
                BraidWord {
                    strands: self.strands,
                    letters,
                    singular: shifted_marks(self, |p| if p >= pos { p + 2 } else { p }),
                }
            }
            MarkovMove::CancelPair { pos } => {
                let ok = pos + 1 < n
                    && self.letters[pos] == self.letters[pos + 1].inverse()
                    && !self.is_singular(pos)
                    && !self.is_singular(pos + 1);
                if !ok {
                    return Err(BraidError::Inapplicable(format!(
                        "no inverse pair at {}",
                        pos
                    )));
                }
                let mut letters = self.letters[..pos].to_vec();
                letters.extend_from_slice(&self.letters[pos + 2..]);
                BraidWord {
                    strands: self.strands,
                    letters,
                    singular: shifted_marks(self, |p| if p > pos { p - 2 } else { p }),
                }
            }
        };
        out.check()?;
        Ok(out)
    }

    pub(crate) fn braid_relation(&self, site: usize) -> Result<BraidWord, BraidError> {
        let l = &self.letters;
        let inapplicable = || BraidError::Inapplicable(format!("no braid relation at {}", site));
        if site + 1 >= l.len() {
            return Err(inapplicable());
        }
        let (a, b) = (l[site], l[site + 1]);
        let far = match (a, b) {
            (Letter::Sigma(i, _), Letter::Sigma(j, _)) => i.abs_diff(j) >= 2,
            (Letter::Sigma(i, _), Letter::Curl { curl, .. })
            | (Letter::Curl { curl, .. }, Letter::Sigma(i, _)) => curl + 1 < i || curl > i,
            (Letter::Curl { curl: p, .. }, Letter::Curl { curl: q, .. }) => p != q,
        };
        if far {
            let mut w = self.clone();
            w.letters.swap(site, site + 1);
            w.singular = shifted_marks(self, |p| {
                if p == site {
                    site + 1
                } else if p == site + 1 {
                    site
                } else {
                    p
                }
            });
            return Ok(w);
        }
        if site + 2 >= l.len() || (site..site + 3).any(|p| self.is_singular(p)) {
            return Err(inapplicable());
        }
        match (l[site], l[site + 1], l[site + 2]) {
            (Letter::Sigma(i, s1), Letter::Sigma(j, s2), Letter::Sigma(k, s3))
                if i == k && i.abs_diff(j) == 1 && s1 == s2 && s2 == s3 =>
            {
                let mut w = self.clone();
                w.letters[site] = Letter::Sigma(j, s1);
                w.letters[site + 1] = Letter::Sigma(i, s1);
                w.letters[site + 2] = Letter::Sigma(j, s1);
                Ok(w)
            }
            _ => Err(inapplicable()),
        }
    }

    /// Every move that applies, excluding stabilizations.
    pub fn closure_preserving_moves(&self) -> Vec<MarkovMove> {
        let mut out = vec![MarkovMove::Rotate];
        for site in 0..self.letters.len() {
            if self.braid_relation(site).is_ok() {
                out.push(MarkovMove::BraidRelation { site });
            }
            if self
                .markov_move(MarkovMove::CancelPair { pos: site })
                .is_ok()
            {
                out.push(MarkovMove::CancelPair { pos: site });
            }
        }
        for g in 1..self.strands {
            for sign in [1, -1] {
                out.push(MarkovMove::Conjugate { generator: g, sign });
                out.push(MarkovMove::InsertPair {
                    pos: self.letters.len() / 2,
                    generator: g,
                    sign,
                });
            }
        }
        out
    }

    pub fn permutation_normal(&self) -> NormalStatus {
        if let Some(p) = self.letters.iter().position(|l| l.sign() < 0) {
            return NormalStatus::HasNegative(p);
        }
        let word = self.generators();
        let arr = perm::apply(perm::identity(self.strands), &word);
        if word.len() == perm::inversions(&arr) && !self.letters.iter().any(Letter::is_curl) {
            return NormalStatus::PositivePermutation;
        }
        // Two strands cross twice: the first letter that is a descent of its
        // prefix closes such a pair.
        let mut a = perm::identity(self.strands);
        for &i in &word {
            if perm::is_descent(&a, i) {
                let pair = (a[i].min(a[i - 1]), a[i].max(a[i - 1]));
                return NormalStatus::PositiveReducible {
                    strands: pair,
                    moves: self.adjacency_witness(),
                };
            }
            a.swap(i - 1, i);
        }
        // Only curls are left to remove.
        NormalStatus::PositiveReducible {
            strands: (0, 0),
            moves: Some(Vec::new()),
        }
    }

    /// Breadth-first search over braid-relation sites for a word with two
    /// equal adjacent letters. The depth is bounded by length times strands.
    pub fn adjacency_witness(&self) -> Option<Vec<usize>> {
        let bound = self.letters.len() * self.strands;
        let has_square = |w: &BraidWord| {
            w.letters
                .windows(2)
                .any(|p| p[0] == p[1] && p[0].sign() > 0)
        };
        if has_square(self) {
            return Some(Vec::new());
        }
        let mut seen: HashMap<Vec<Letter>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(self.letters.clone(), ());
        queue.push_back((self.clone(), Vec::new()));
        while let Some((w, path)) = queue.pop_front() {
            if path.len() >= bound || seen.len() > 50_000 {
                continue;
            }
            for site in 0..w.letters.len() {
                if let Ok(next) = w.braid_relation(site) {
                    if seen.insert(next.letters.clone(), ()).is_some() {
                        continue;
                    }
                    let mut p = path.clone();
                    p.push(site);
                    if has_square(&next) {
                        return Some(p);
                    }
                    queue.push_back((next, p));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn moves_from_examples() {
        assert_eq!(
            w("B3: s1 s2").markov_move(MarkovMove::Rotate).unwrap(),
            w("B3: s2 s1")
        );
        assert_eq!(
            w("B2: s1")
                .markov_move(MarkovMove::Stabilize { sign: 1 })
                .unwrap(),
            w("B3: s1 s2")
        );
        assert_eq!(
            w("B4: s1 s3")
                .markov_move(MarkovMove::BraidRelation { site: 0 })
                .unwrap(),
            w("B4: s3 s1")
        );
        assert_eq!(
            w("B3: s1 s2 s1")
                .markov_move(MarkovMove::BraidRelation { site: 0 })
                .unwrap(),
            w("B3: s2 s1 s2")
        );
        assert!(w("B3: s1 s2")
            .markov_move(MarkovMove::BraidRelation { site: 0 })
            .is_err());
        assert_eq!(
            w("B3: s1 s2").markov_move(MarkovMove::Destabilize).unwrap(),
            w("B2: s1")
        );
        assert!(w("B3: s2 s1 s2")
            .markov_move(MarkovMove::Destabilize)
            .is_err());
    }

    #[test]
    fn closure_preserving_moves_keep_cycle_type() {
        let x = w("B4: s1 -s2 s3 s1 s2");
        let t = x.closure_structure().cycle_type;
        for m in x.closure_preserving_moves() {
            assert_eq!(
                x.markov_move(m).unwrap().closure_structure().cycle_type,
                t,
                "{m:?}"
            );
        }
    }

    #[test]
    fn stabilization_merges_a_fixed_point() {
        let x = w("B3: s1 s1");
        let y = x.markov_move(MarkovMove::Stabilize { sign: -1 }).unwrap();
        assert_eq!(x.closure_structure().cycle_type, vec![1, 1, 1]);
        assert_eq!(y.closure_structure().cycle_type, vec![2, 1, 1]);
    }

    #[test]
    fn normal_status() {
        assert_eq!(
            w("B3: s1 s2").permutation_normal(),
            NormalStatus::PositivePermutation
        );
        assert_eq!(
            w("B2: -s1").permutation_normal(),
            NormalStatus::HasNegative(0)
        );
        assert_eq!(
            w("B2: s1 s1").permutation_normal(),
            NormalStatus::PositiveReducible {
                strands: (0, 1),
                moves: Some(vec![])
            }
        );
        match w("B3: s1 s2 s1 s2").permutation_normal() {
            NormalStatus::PositiveReducible { moves: Some(m), .. } => {
                let mut x = w("B3: s1 s2 s1 s2");
                for site in m {
                    x = x.markov_move(MarkovMove::BraidRelation { site }).unwrap();
                }
                assert!(x.letters.windows(2).any(|p| p[0] == p[1]));
            }
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn length_bounds_inversions() {
        for s in ["B3: s1 s2 s1 s2", "B4: s1 s3 s2 s3 s1 s3", "B3: s2 s2"] {
            let x = w(s);
            let arr = perm::apply(perm::identity(x.strands), &x.generators());
            assert!(x.len() > perm::inversions(&arr));
        }
    }
}
