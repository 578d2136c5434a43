use std::fmt;

use super::FormalError;

/// A basis letter of `F^(j)(X)`: a generator at level 0, an element of the
/// level below otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Gen(String),
    Word(Box<NestedWord>),
}

/// A freely reduced element of `F^(j)(X)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NestedWord {
    level: usize,
    letters: Vec<(Symbol, i8)>,
}

impl NestedWord {
    pub fn identity(level: usize) -> Self {
        NestedWord {
            level,
            letters: Vec::new(),
        }
    }

    pub fn generator(name: &str) -> Self {
        NestedWord {
            level: 0,
            letters: vec![(Symbol::Gen(name.to_string()), 1)],
        }
    }

    /// `w` as a single basis letter one level up.
    pub fn letter(w: NestedWord) -> Self {
        NestedWord {
            level: w.level + 1,
            letters: vec![(Symbol::Word(Box::new(w)), 1)],
        }
    }

    /// Builds and freely reduces a word, checking level tags.
    pub fn from_letters(level: usize, letters: Vec<(Symbol, i8)>) -> Result<Self, FormalError> {
        for (s, e) in &letters {
            let ok = match s {
                Symbol::Gen(_) => level == 0,
                Symbol::Word(w) => level > 0 && w.level + 1 == level,
            };
            if !ok || (*e != 1 && *e != -1) {
                return Err(FormalError::Level(format!(
                    "letter {} does not fit level {}",
                    s, level
                )));
            }
        }
        Ok(Self::reduced(level, letters))
    }

    fn reduced(level: usize, letters: impl IntoIterator<Item = (Symbol, i8)>) -> Self {
        let mut out: Vec<(Symbol, i8)> = Vec::new();
        for (s, e) in letters {
            match out.last() {
                Some((t, f)) if *t == s && *f == -e => {
                    out.pop();
                }
                _ => out.push((s, e)),
            }
        }
        NestedWord {
            level,
            letters: out,
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn letters(&self) -> &[(Symbol, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, o: &NestedWord) -> NestedWord {
        assert_eq!(self.level, o.level, "product across levels");
        Self::reduced(self.level, self.letters.iter().chain(&o.letters).cloned())
    }

    pub fn inverse(&self) -> NestedWord {
        NestedWord {
            level: self.level,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|(s, e)| (s.clone(), -e))
                .collect(),
        }
    }

    pub fn product<'a>(level: usize, ws: impl IntoIterator<Item = &'a NestedWord>) -> NestedWord {
        ws.into_iter()
            .fold(Self::identity(level), |acc, w| acc.mul(w))
    }

    /// Iterated basis inclusion into `F^(level+k)`.
    pub fn include(&self, k: usize) -> NestedWord {
        (0..k).fold(self.clone(), |w, _| NestedWord::letter(w))
    }

    /// The iterated identity-extension homomorphism `F^(j)(X) -> F(X)`.
    pub fn collapse(&self) -> NestedWord {
        if self.level == 0 {
            return self.clone();
        }
        let parts = self.letters.iter().map(|(s, e)| match s {
            Symbol::Word(w) => {
                let c = w.collapse();
                if *e > 0 {
                    c
                } else {
                    c.inverse()
                }
            }
            Symbol::Gen(_) => unreachable!("generator above level 0"),
        });
        parts.fold(Self::identity(0), |acc, w| acc.mul(&w))
    }

    /// Applies a map on letters and extends it to a homomorphism.
    pub fn substitute(&self, level: usize, f: &impl Fn(&Symbol) -> NestedWord) -> NestedWord {
        let mut out = Self::identity(level);
        for (s, e) in &self.letters {
            let w = f(s);
            out = out.mul(&if *e > 0 { w } else { w.inverse() });
        }
        out
    }

    /// Exponent sum of each level-0 generator.
    pub fn abelianized(&self) -> std::collections::BTreeMap<String, i64> {
        let mut out = std::collections::BTreeMap::new();
        for (s, e) in &self.collapse().letters {
            if let Symbol::Gen(g) = s {
                *out.entry(g.clone()).or_insert(0) += *e as i64;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Cyclically reduced form: conjugate with no cancellation between the
    /// ends.
    pub fn cyclically_reduced(&self) -> NestedWord {
        let l = &self.letters;
        let mut a = 0;
        let mut b = l.len();
        while b - a >= 2 && l[a].0 == l[b - 1].0 && l[a].1 == -l[b - 1].1 {
            a += 1;
            b -= 1;
        }
        NestedWord {
            level: self.level,
            letters: l[a..b].to_vec(),
        }
    }

    pub fn rotated(&self, k: usize) -> NestedWord {
        let mut l = self.letters.clone();
        let n = l.len();
        if n > 0 {
            l.rotate_left(k % n);
        }
        Self::reduced(self.level, l)
    }

    /// Parses a level-0 word such as `"a b^-1 c"`; `"1"` or `""` is the
    /// identity.
    pub fn parse(text: &str, known: &impl Fn(&str) -> bool) -> Result<NestedWord, FormalError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, e) = match tok.strip_suffix("^-1") {
                Some(n) => (n, -1),
                None => (tok, 1),
            };
            if !known(name) {
                return Err(FormalError::Parse(format!("unknown generator {:?}", name)));
            }
            letters.push((Symbol::Gen(name.to_string()), e));
        }
        Ok(Self::reduced(0, letters))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Gen(g) => write!(f, "{}", g),
            Symbol::Word(w) => write!(f, "[{}]", w),
        }
    }
}

impl fmt::Display for NestedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, (s, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", s)?;
            if *e < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// Semi-decides membership of `w` in the normal closure of `gens` by a
/// bounded search over products with conjugates of generators.
pub fn in_normal_closure(w: &NestedWord, gens: &[NestedWord], depth: usize) -> bool {
    use std::collections::{HashSet, VecDeque};
    let start = w.cyclically_reduced();
    if start.is_empty() {
        return true;
    }
    let mut pool: Vec<NestedWord> = Vec::new();
    for g in gens {
        let g = g.cyclically_reduced();
        if g.is_empty() || g.level != w.level {
            continue;
        }
        for k in 0..g.len() {
            for h in [g.rotated(k), g.rotated(k).inverse()] {
                if !pool.contains(&h) {
                    pool.push(h);
                }
            }
        }
    }
    let limit = start.len() + pool.iter().map(|g| g.len()).max().unwrap_or(0);
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([(start.clone(), 0usize)]);
    seen.insert(start);
    while let Some((s, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for k in 0..s.len().max(1) {
            let r = s.rotated(k);
            for g in &pool {
                let next = r.mul(g).cyclically_reduced();
                if next.is_empty() {
                    return true;
                }
                if next.len() <= limit && seen.len() < 50_000 && seen.insert(next.clone()) {
                    queue.push_back((next, d + 1));
                }
            }
        }
    }
    false
}
