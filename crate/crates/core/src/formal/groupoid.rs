use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::NestedWord;
use super::FormalError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementaryMorphism {
    pub name: String,
    pub source: String,
    pub target: String,
    /// Potential value, a word in the objects such as `"y m^-1"`.
    #[serde(default)]
    pub potential: String,
    #[serde(default)]
    pub twist: i64,
}

/// A finitely presented 2-groupoid with models and a potential, free on its
/// elementary morphisms. Relation pairs stand for 2-morphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidPresentation {
    pub objects: Vec<String>,
    pub models: Vec<String>,
    pub morphisms: Vec<ElementaryMorphism>,
    #[serde(default)]
    pub relations: Vec<(String, String)>,
}

/// A word in elementary morphisms and their inverses, listed in the order
/// they are traversed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorphismWord {
    pub letters: Vec<(usize, i8)>,
}

impl MorphismWord {
    pub fn identity() -> Self {
        MorphismWord {
            letters: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> MorphismWord {
        MorphismWord {
            letters: self.letters.iter().rev().map(|&(s, e)| (s, -e)).collect(),
        }
    }

    /// Traverse `self`, then `o`, cancelling adjacent inverse pairs.
    pub fn then(&self, o: &MorphismWord) -> MorphismWord {
        let mut out: Vec<(usize, i8)> = Vec::new();
        for &(s, e) in self.letters.iter().chain(&o.letters) {
            match out.last() {
                Some(&(t, f)) if t == s && f == -e => {
                    out.pop();
                }
                _ => out.push((s, e)),
            }
        }
        MorphismWord { letters: out }
    }
}

impl GroupoidPresentation {
    pub fn from_json(text: &str) -> Result<Self, FormalError> {
        let p: GroupoidPresentation =
            serde_json::from_str(text).map_err(|e| FormalError::Parse(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn validate(&self) -> Result<(), FormalError> {
        let objs: BTreeSet<&String> = self.objects.iter().collect();
        if objs.len() != self.objects.len() {
            return Err(FormalError::Parse("duplicate object".into()));
        }
        for m in &self.models {
            if !objs.contains(m) {
                return Err(FormalError::UnknownObject(m.clone()));
            }
        }
        let mut names = BTreeSet::new();
        for s in &self.morphisms {
            if !names.insert(&s.name) {
                return Err(FormalError::Parse(format!("duplicate morphism {}", s.name)));
            }
            for o in [&s.source, &s.target] {
                if !objs.contains(o) {
                    return Err(FormalError::UnknownObject(o.clone()));
                }
            }
            self.parse_objects(&s.potential)?;
        }
        for (a, b) in &self.relations {
            let (a, b) = (self.parse_path(a)?, self.parse_path(b)?);
            let ea = self.endpoints_any(&a)?;
            let eb = self.endpoints_any(&b)?;
            let parallel = match (ea, eb) {
                (Some(x), Some(y)) => x == y,
                (Some((s, t)), None) | (None, Some((s, t))) => s == t,
                (None, None) => true,
            };
            if !parallel {
                return Err(FormalError::Composable(
                    "relation pair is not parallel".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn is_model(&self, name: &str) -> bool {
        self.models.iter().any(|m| m == name)
    }

    pub fn parse_objects(&self, text: &str) -> Result<NestedWord, FormalError> {
        NestedWord::parse(text, &|n| self.object_index(n).is_some())
    }

    /// Parses `"s t^-1"` into a word of elementary morphisms; `""` and `"1"`
    /// are the identity.
    pub fn parse_path(&self, text: &str) -> Result<MorphismWord, FormalError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, e) = match tok.strip_suffix("^-1") {
                Some(n) => (n, -1),
                None => (tok, 1),
            };
            let i = self
                .morphism_index(name)
                .ok_or_else(|| FormalError::UnknownMorphism(name.to_string()))?;
            letters.push((i, e));
        }
        Ok(MorphismWord::identity().then(&MorphismWord { letters }))
    }

    pub fn format_path(&self, w: &MorphismWord) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = w
            .letters
            .iter()
            .map(|&(s, e)| {
                let n = &self.morphisms[s].name;
                if e < 0 {
                    format!("{}^-1", n)
                } else {
                    n.clone()
                }
            })
            .collect();
        parts.join(" ")
    }

    fn letter_ends(&self, (s, e): (usize, i8)) -> (&str, &str) {
        let m = &self.morphisms[s];
        if e > 0 {
            (&m.source, &m.target)
        } else {
            (&m.target, &m.source)
        }
    }

    /// Source and target of a composable word, `None` for the identity.
    fn endpoints_any(&self, w: &MorphismWord) -> Result<Option<(String, String)>, FormalError> {
        let Some(&first) = w.letters.first() else {
            return Ok(None);
        };
        let start = self.letter_ends(first).0.to_string();
        let mut at = start.clone();
        for &l in &w.letters {
            let (s, t) = self.letter_ends(l);
            if s != at {
                return Err(FormalError::Composable(format!(
                    "{} does not start at {}",
                    self.format_path(w),
                    at
                )));
            }
            at = t.to_string();
        }
        Ok(Some((start, at)))
    }

    /// Target of `w` read from `start`.
    pub fn target_from(&self, start: &str, w: &MorphismWord) -> Result<String, FormalError> {
        match self.endpoints_any(w)? {
            None => Ok(start.to_string()),
            Some((s, t)) if s == start => Ok(t),
            Some(_) => Err(FormalError::Composable(format!(
                "{} does not start at {}",
                self.format_path(w),
                start
            ))),
        }
    }

    /// `𝔡` of a composable word: target times source inverse.
    pub fn d_of(&self, start: &str, w: &MorphismWord) -> Result<NestedWord, FormalError> {
        let t = self.target_from(start, w)?;
        Ok(NestedWord::generator(&t).mul(&NestedWord::generator(start).inverse()))
    }

    /// `𝔡` on the free group on elementary morphisms, composable or not.
    pub fn d_formal(&self, w: &MorphismWord) -> NestedWord {
        let mut out = NestedWord::identity(0);
        for &(s, e) in &w.letters {
            let m = &self.morphisms[s];
            let d =
                NestedWord::generator(&m.target).mul(&NestedWord::generator(&m.source).inverse());
            out = out.mul(&if e > 0 { d } else { d.inverse() });
        }
        out
    }

    /// The potential extended contravariantly: traversing `u` then `v` gives
    /// `𝔞(u) 𝔞(v)`, and inverse letters give inverse values.
    pub fn potential_extend(&self, w: &MorphismWord) -> NestedWord {
        let mut out = NestedWord::identity(0);
        for &(s, e) in &w.letters {
            let a = self
                .parse_objects(&self.morphisms[s].potential)
                .expect("validated");
            out = out.mul(&if e > 0 { a } else { a.inverse() });
        }
        out
    }

    /// Twist of a word: signed sum of letter twists.
    pub fn twist_of(&self, w: &MorphismWord) -> i64 {
        w.letters
            .iter()
            .map(|&(s, e)| e as i64 * self.morphisms[s].twist)
            .sum()
    }

    /// Reduced composable words from `start` of length at most `bound`,
    /// shortest first.
    pub fn paths_from(&self, start: &str, bound: usize) -> Vec<(MorphismWord, String)> {
        let mut out = vec![(MorphismWord::identity(), start.to_string())];
        let mut queue = VecDeque::from([(MorphismWord::identity(), start.to_string())]);
        while let Some((w, at)) = queue.pop_front() {
            if w.len() == bound {
                continue;
            }
            for s in 0..self.morphisms.len() {
                for e in [1i8, -1] {
                    if w.letters.last() == Some(&(s, -e)) {
                        continue;
                    }
                    let (from, to) = self.letter_ends((s, e));
                    if from != at {
                        continue;
                    }
                    let mut v = w.clone();
                    v.letters.push((s, e));
                    out.push((v.clone(), to.to_string()));
                    queue.push_back((v, to.to_string()));
                }
            }
        }
        out
    }

    /// The model reached from each object, with every path of length at
    /// most `bound` into it. Objects reaching two models are rejected.
    pub fn model_paths(
        &self,
        bound: usize,
    ) -> Result<BTreeMap<String, (String, Vec<MorphismWord>)>, FormalError> {
        let mut out = BTreeMap::new();
        for x in &self.objects {
            let mut found: BTreeMap<String, Vec<MorphismWord>> = BTreeMap::new();
            for (w, t) in self.paths_from(x, bound) {
                if self.is_model(&t) {
                    found.entry(t).or_default().push(w);
                }
            }
            match found.len() {
                0 => return Err(FormalError::NoModel(x.clone())),
                1 => {
                    let (m, ws) = found.into_iter().next().expect("one model");
                    out.insert(x.clone(), (m, ws));
                }
                _ => {
                    return Err(FormalError::SeveralModels(
                        x.clone(),
                        found.keys().cloned().collect::<Vec<_>>().join(", "),
                    ))
                }
            }
        }
        Ok(out)
    }

    /// Checks linearity with respect to `(h)` for a model complexity: every
    /// object in `𝔞(s)` has complexity below that of `s`, or at most `ell`.
    pub fn is_linear_wrt(
        &self,
        complexity: &BTreeMap<String, usize>,
        ell: usize,
    ) -> Result<bool, FormalError> {
        let models = self.model_paths(self.objects.len().max(1))?;
        let c = |x: &str| {
            models
                .get(x)
                .and_then(|(m, _)| complexity.get(m))
                .copied()
                .unwrap_or(0)
        };
        Ok(self.morphisms.iter().all(|s| {
            let j = c(&s.source);
            let a = self.parse_objects(&s.potential).expect("validated");
            a.abelianized().keys().all(|y| c(y) < j || c(y) <= ell)
        }))
    }
}

impl fmt::Display for MorphismWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(s, e)| {
                if e < 0 {
                    format!("#{}^-1", s)
                } else {
                    format!("#{}", s)
                }
            })
            .collect();
        write!(
            f,
            "{}",
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join(" ")
            }
        )
    }
}
