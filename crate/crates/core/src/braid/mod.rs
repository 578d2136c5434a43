//! Closed braids around the solid-torus axis.

mod markov;
pub mod perm;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use markov::{MarkovMove, NormalStatus};

use crate::diagram::{ClosureLetter, PlanarDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("malformed braid: {0}")]
    Parse(String),
    #[error("invalid braid: {0}")]
    Invalid(String),
    #[error("move not applicable: {0}")]
    Inapplicable(String),
}

/// One letter: a generator `σ_i^±` (1-based `i`), or a curl on the strand
/// at a position (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Letter {
    Sigma(usize, i8),
    Curl { curl: usize, sign: i8 },
}

impl Letter {
    pub fn sign(&self) -> i8 {
        match *self {
            Letter::Sigma(_, s) | Letter::Curl { sign: s, .. } => s,
        }
    }

    pub fn with_sign(&self, sign: i8) -> Letter {
        match *self {
            Letter::Sigma(i, _) => Letter::Sigma(i, sign),
            Letter::Curl { curl, .. } => Letter::Curl { curl, sign },
        }
    }

    pub fn inverse(&self) -> Letter {
        self.with_sign(-self.sign())
    }

    pub fn is_curl(&self) -> bool {
        matches!(self, Letter::Curl { .. })
    }

    pub fn generator(&self) -> Option<usize> {
        match *self {
            Letter::Sigma(i, _) => Some(i),
            Letter::Curl { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    #[serde(rename = "word")]
    pub letters: Vec<Letter>,
    #[serde(default)]
    pub singular: Vec<usize>,
}

/// Permutation data of a closed braid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureStructure {
    /// `permutation[p]` is the starting position of the strand ending at `p`.
    pub permutation: Vec<usize>,
    pub cycles: Vec<Vec<usize>>,
    /// Cycle lengths, largest first.
    pub cycle_type: Vec<usize>,
    /// Per letter: true for a self crossing, false for a mixed one.
    pub self_letters: Vec<bool>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        let w = BraidWord {
            strands,
            letters,
            singular: Vec::new(),
        };
        w.check()?;
        Ok(w)
    }

    /// Shorthand for a word of generators given as signed indices.
    pub fn from_signed(strands: usize, word: &[i32]) -> Result<Self, BraidError> {
        let letters = word
            .iter()
            .map(|&x| Letter::Sigma(x.unsigned_abs() as usize, x.signum() as i8))
            .collect();
        Self::new(strands, letters)
    }

    pub fn with_singular(mut self, marks: Vec<usize>) -> Result<Self, BraidError> {
        self.singular = marks;
        self.check()?;
        Ok(self)
    }

    pub fn check(&self) -> Result<(), BraidError> {
        if self.strands == 0 {
            return Err(BraidError::Invalid(
                "a braid needs at least one strand".into(),
            ));
        }
        for (p, l) in self.letters.iter().enumerate() {
            let ok = match *l {
                Letter::Sigma(i, s) => i >= 1 && i < self.strands && s.abs() == 1,
                Letter::Curl { curl, sign } => curl < self.strands && sign.abs() == 1,
            };
            if !ok {
                return Err(BraidError::Invalid(format!("letter {} out of range", p)));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for &m in &self.singular {
            if m >= self.letters.len() || !seen.insert(m) {
                return Err(BraidError::Invalid(format!("singular mark {}", m)));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn generators(&self) -> Vec<usize> {
        self.letters.iter().filter_map(Letter::generator).collect()
    }

    pub fn is_singular(&self, pos: usize) -> bool {
        self.singular.contains(&pos)
    }

    pub fn writhe(&self) -> i64 {
        (0..self.letters.len())
            .filter(|p| !self.is_singular(*p))
            .map(|p| self.letters[p].sign() as i64)
            .sum()
    }

    pub fn closure_structure(&self) -> ClosureStructure {
        let n = self.strands;
        let mut arr = perm::identity(n);
        let mut pairs = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            match *l {
                Letter::Sigma(i, _) => {
                    pairs.push((arr[i - 1], arr[i]));
                    arr.swap(i - 1, i);
                }
                Letter::Curl { curl, .. } => pairs.push((arr[curl], arr[curl])),
            }
        }
        let cycles = perm::cycles(&arr);
        let mut cycle_of = vec![0; n];
        for (k, c) in cycles.iter().enumerate() {
            for &x in c {
                cycle_of[x] = k;
            }
        }
        let self_letters = pairs
            .iter()
            .map(|&(a, b)| cycle_of[a] == cycle_of[b])
            .collect();
        let cycle_type = perm::cycle_type(&arr);
        ClosureStructure {
            permutation: arr,
            cycles,
            cycle_type,
            self_letters,
        }
    }

    /// Replaces the letter at `pos`, shifting marks past it.
    pub fn replaced(&self, pos: usize, with: &[Letter]) -> BraidWord {
        let mut letters = self.letters[..pos].to_vec();
        letters.extend_from_slice(with);
        letters.extend_from_slice(&self.letters[pos + 1..]);
        let shift = with.len() as isize - 1;
        let singular = self
            .singular
            .iter()
            .filter(|&&m| m != pos)
            .map(|&m| {
                if m > pos {
                    (m as isize + shift) as usize
                } else {
                    m
                }
            })
            .collect();
        BraidWord {
            strands: self.strands,
            letters,
            singular,
        }
    }

    pub fn deleted(&self, pos: usize) -> BraidWord {
        self.replaced(pos, &[])
    }

    /// Planar closure, used to read the braid as a link in the 3-ball.
    /// Crossing ids are letter positions.
    pub fn to_diagram(&self) -> PlanarDiagram {
        let letters: Vec<ClosureLetter> = self
            .letters
            .iter()
            .map(|l| match *l {
                Letter::Sigma(i, s) => ClosureLetter::Cross(i, s),
                Letter::Curl { curl, sign } => ClosureLetter::Curl(curl, sign),
            })
            .collect();
        PlanarDiagram::closure_of(self.strands, &letters, &self.singular)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for (p, l) in self.letters.iter().enumerate() {
            let neg = if l.sign() < 0 { "-" } else { "" };
            let mark = if self.is_singular(p) { "*" } else { "" };
            match *l {
                Letter::Sigma(i, _) => write!(f, " {}s{}{}", neg, i, mark)?,
                Letter::Curl { curl, .. } => write!(f, " {}k{}{}", neg, curl, mark)?,
            }
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    /// Parses `"B<n>: s1 s2 -s1 ..."`. Curls are written `k<pos>`, and a
    /// trailing `*` marks a letter singular, marks taken left to right.
    fn from_str(s: &str) -> Result<Self, BraidError> {
        let s = s.trim();
        let (head, body) = s
            .split_once(':')
            .ok_or_else(|| BraidError::Parse(format!("missing ':' in {:?}", s)))?;
        let strands: usize = head
            .trim()
            .strip_prefix('B')
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| BraidError::Parse(format!("bad strand count {:?}", head)))?;
        let mut letters = Vec::new();
        let mut singular = Vec::new();
        for tok in body.split_whitespace() {
            let (tok, star) = match tok.strip_suffix('*') {
                Some(t) => (t, true),
                None => (tok, false),
            };
            let (sign, rest) = match tok.strip_prefix('-') {
                Some(r) => (-1, r),
                None => (1, tok),
            };
            let bad = || BraidError::Parse(format!("bad letter {:?}", tok));
            let letter = if let Some(i) = rest.strip_prefix('s') {
                Letter::Sigma(i.parse().map_err(|_| bad())?, sign)
            } else if let Some(p) = rest.strip_prefix('k') {
                Letter::Curl {
                    curl: p.parse().map_err(|_| bad())?,
                    sign,
                }
            } else {
                return Err(bad());
            };
            if star {
                singular.push(letters.len());
            }
            letters.push(letter);
        }
        BraidWord::new(strands, letters)?.with_singular(singular)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn closure_examples() {
        let c = w("B3: s1 s2").closure_structure();
        assert_eq!(c.cycle_type, vec![3]);
        let c = w("B2: s1 s1").closure_structure();
        assert_eq!(c.cycle_type, vec![1, 1]);
        assert_eq!(c.self_letters, vec![false, false]);
        let c = w("B2: s1").closure_structure();
        assert_eq!(c.cycle_type, vec![2]);
        assert_eq!(c.self_letters, vec![true]);
    }

    #[test]
    fn text_round_trip() {
        let x = w("B4: s1 -s3* k2 s2");
        assert_eq!(x.singular, vec![1]);
        assert_eq!(x.to_string(), "B4: s1 -s3* k2 s2");
        assert_eq!(w(&x.to_string()), x);
        assert!("B2: s2".parse::<BraidWord>().is_err());
        assert!("B2 s1".parse::<BraidWord>().is_err());
    }

    #[test]
    fn json_shape() {
        let x = w("B2: -s1");
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"strands":2,"word":[[1,-1]],"singular":[]}"#);
        let back: BraidWord = serde_json::from_str(r#"{"strands":2,"word":[[1,-1]]}"#).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn diagrams_of_closures() {
        for s in [
            "B2: s1 s1 s1",
            "B3: s1 -s2 s1 -s2",
            "B3: s1 k0 s2",
            "B2: k1 -k1",
            "B3: s1 s1*",
        ] {
            let d = w(s).to_diagram();
            d.validate().unwrap();
            assert_eq!(d.crossing_count(), w(s).len());
        }
        let d = w("B3: s1 k2* s2").to_diagram();
        assert_eq!(d.singular().len(), 1);
        assert!(d.is_self_crossing(d.singular()[0]).unwrap());
    }
}
