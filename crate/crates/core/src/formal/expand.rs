use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::groupoid::{GroupoidPresentation, MorphismWord};
use super::tower::TowerElement;
use super::word::{in_normal_closure, NestedWord, Symbol};
use super::FormalError;

/// Outcome of a bounded membership search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Proven,
    Unknown,
}

impl Membership {
    pub fn as_str(self) -> &'static str {
        match self {
            Membership::Proven => "proven",
            Membership::Unknown => "unknown",
        }
    }
}

/// Generators of the indeterminacy subgroup at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelGenerators {
    pub level: usize,
    /// `λ(u) λ(u0)^-1` over the enumerated paths.
    pub skein: Vec<NestedWord>,
    /// `[r0]^-1 [r]` for alternative lower representatives.
    pub shift: Vec<NestedWord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub level: usize,
    pub choice: String,
    pub status: Membership,
}

#[derive(Clone, Debug)]
pub struct FormalExpansion {
    pub object: String,
    pub model: String,
    pub representative: TowerElement,
    pub generators: Vec<LevelGenerators>,
    pub verification: Vec<Verification>,
}

impl FormalExpansion {
    pub fn well_defined(&self) -> bool {
        self.verification
            .iter()
            .all(|v| v.status == Membership::Proven)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let levels: Vec<String> = (0..=self.representative.truncation())
            .map(|j| self.representative.at(j).to_string())
            .collect();
        json!({
            "object": self.object,
            "model": self.model,
            "representative": levels,
            "generators": self.generators.iter().map(|g| json!({
                "level": g.level,
                "skein": g.skein.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "shift": g.shift.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "verification": self.verification.iter().map(|v| json!({
                "level": v.level, "choice": v.choice, "status": v.status.as_str(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// The level-by-level expansion of objects in terms of models.
pub struct FormalCalculus<'a> {
    pres: &'a GroupoidPresentation,
    level: usize,
    depth: usize,
    models: BTreeMap<String, (String, Vec<MorphismWord>)>,
    /// `reps[j][y]`: the canonical representative of `y` at level `j`.
    reps: Vec<BTreeMap<String, NestedWord>>,
    /// `alts[j][y]`: representatives of `y` along every enumerated path.
    alts: Vec<BTreeMap<String, Vec<NestedWord>>>,
    /// Alternative representative to the canonical one of its class.
    class: Vec<HashMap<NestedWord, NestedWord>>,
    skein_gens: Vec<Vec<NestedWord>>,
    shift_gens: Vec<Vec<NestedWord>>,
}

impl<'a> FormalCalculus<'a> {
    pub fn new(
        pres: &'a GroupoidPresentation,
        level: usize,
        bound: usize,
    ) -> Result<Self, FormalError> {
        pres.validate()?;
        let models = pres.model_paths(bound)?;
        let mut calc = FormalCalculus {
            pres,
            level,
            depth: 3,
            models,
            reps: Vec::new(),
            alts: Vec::new(),
            class: Vec::new(),
            skein_gens: Vec::new(),
            shift_gens: Vec::new(),
        };
        let base: BTreeMap<String, NestedWord> = calc
            .models
            .iter()
            .map(|(x, (m, _))| (x.clone(), NestedWord::generator(m)))
            .collect();
        calc.alts.push(
            base.iter()
                .map(|(x, w)| (x.clone(), vec![w.clone()]))
                .collect(),
        );
        calc.class
            .push(base.values().map(|w| (w.clone(), w.clone())).collect());
        calc.reps.push(base);
        calc.skein_gens.push(Vec::new());
        calc.shift_gens.push(Vec::new());
        for j in 1..=level {
            calc.build_level(j);
        }
        Ok(calc)
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn model_of(&self, x: &str) -> Result<&str, FormalError> {
        self.models
            .get(x)
            .map(|(m, _)| m.as_str())
            .ok_or_else(|| FormalError::UnknownObject(x.to_string()))
    }

    pub fn paths(&self, x: &str) -> Result<&[MorphismWord], FormalError> {
        self.models
            .get(x)
            .map(|(_, p)| p.as_slice())
            .ok_or_else(|| FormalError::UnknownObject(x.to_string()))
    }

    pub fn rep(&self, j: usize, x: &str) -> &NestedWord {
        &self.reps[j][x]
    }

    pub fn skein_generators(&self, j: usize) -> &[NestedWord] {
        &self.skein_gens[j]
    }

    pub fn shift_generators(&self, j: usize) -> &[NestedWord] {
        &self.shift_gens[j]
    }

    /// `F(lift)(𝔞(u))` at level `j`: every object of the potential becomes
    /// the basis letter of its lift.
    pub fn lambda(
        &self,
        j: usize,
        u: &MorphismWord,
        lift: &impl Fn(&str) -> NestedWord,
    ) -> NestedWord {
        self.pres.potential_extend(u).substitute(j, &|s| match s {
            Symbol::Gen(y) => NestedWord::letter(lift(y)),
            Symbol::Word(_) => unreachable!("potential lives at level 0"),
        })
    }

    fn canonical_lambda(&self, j: usize, u: &MorphismWord) -> NestedWord {
        self.lambda(j, u, &|y| self.reps[j - 1][y].clone())
    }

    fn build_level(&mut self, j: usize) {
        let objects: Vec<String> = self.models.keys().cloned().collect();
        let alts: Vec<(String, Vec<NestedWord>)> = objects
            .par_iter()
            .map(|x| {
                let mut ws: Vec<NestedWord> = Vec::new();
                for u in &self.models[x].1 {
                    let w = self.canonical_lambda(j, u);
                    if !ws.contains(&w) {
                        ws.push(w);
                    }
                }
                (x.clone(), ws)
            })
            .collect();
        let mut reps = BTreeMap::new();
        let mut skein = Vec::new();
        for (x, ws) in &alts {
            let r0 = ws[0].clone();
            for w in &ws[1..] {
                let g = w.mul(&r0.inverse());
                if !g.is_identity() && !skein.contains(&g) {
                    skein.push(g);
                }
            }
            reps.insert(x.clone(), r0);
        }
        // Representatives equal modulo the skein generators share one class,
        // headed by a model's representative when there is one.
        let mut order: Vec<&(String, Vec<NestedWord>)> = alts.iter().collect();
        order.sort_by_key(|(x, _)| !self.pres.is_model(x));
        let mut heads: Vec<NestedWord> = Vec::new();
        let mut class = HashMap::new();
        for (x, ws) in order {
            let r = &reps[x];
            let joined = ws.iter().find_map(|w| class.get(w).cloned()).or_else(|| {
                heads
                    .iter()
                    .find(|h| in_normal_closure(&r.mul(&h.inverse()), &skein, self.depth))
                    .cloned()
            });
            let head = joined.unwrap_or_else(|| {
                heads.push(r.clone());
                r.clone()
            });
            for w in ws {
                class.entry(w.clone()).or_insert_with(|| head.clone());
            }
        }
        let mut shift = Vec::new();
        for (x, ws) in &self.alts[j - 1] {
            let r0 = NestedWord::letter(self.reps[j - 1][x].clone());
            for w in ws {
                let g = r0.inverse().mul(&NestedWord::letter(w.clone()));
                if !g.is_identity() && !shift.contains(&g) {
                    shift.push(g);
                }
            }
        }
        self.reps.push(reps);
        self.alts.push(alts.into_iter().collect());
        self.class.push(class);
        self.skein_gens.push(skein);
        self.shift_gens.push(shift);
    }

    /// Replaces every basis letter by the canonical representative of its
    /// class, working from the bottom level up. Letters equal modulo the
    /// level below are equal modulo the shift terms.
    pub fn canonical(&self, j: usize, w: &NestedWord) -> NestedWord {
        if j == 0 {
            return w.clone();
        }
        w.substitute(j, &|s| match s {
            Symbol::Word(v) => NestedWord::letter(self.class_rep(j - 1, &self.canonical(j - 1, v))),
            Symbol::Gen(_) => unreachable!("generator above level 0"),
        })
    }

    fn class_rep(&self, j: usize, v: &NestedWord) -> NestedWord {
        if let Some(r) = self.class[j].get(v) {
            return r.clone();
        }
        if j > 0 {
            for r in self.class[j].values().unique() {
                let d = v.mul(&r.inverse());
                if in_normal_closure(&d, &self.skein_gens[j], self.depth) {
                    return r.clone();
                }
            }
        }
        v.clone()
    }

    /// Semi-decides `w ∈ 𝒜_j`.
    pub fn member(&self, j: usize, w: &NestedWord) -> Membership {
        let c = self.canonical(j, w);
        if in_normal_closure(&c, &self.skein_gens[j], self.depth) {
            Membership::Proven
        } else {
            Membership::Unknown
        }
    }

    /// Semi-decides membership of a level-0 word in `c(𝒜_j)`, which is the
    /// normal closure of the collapsed skein generators of levels `<= j`.
    pub fn member_collapsed(&self, j: usize, w: &NestedWord) -> Membership {
        let gens: Vec<NestedWord> = self.skein_gens[..=j]
            .iter()
            .flatten()
            .map(|g| g.collapse())
            .collect();
        if in_normal_closure(w, &gens, self.depth) {
            Membership::Proven
        } else {
            Membership::Unknown
        }
    }

    /// A representative built from random path choices at every level.
    pub fn random_rep(&self, j: usize, x: &str, rng: &mut ChaCha8Rng) -> NestedWord {
        if j == 0 {
            return self.reps[0][x].clone();
        }
        let u = self.models[x].1.choose(rng).expect("nonempty").clone();
        let mut lifts: BTreeMap<String, NestedWord> = BTreeMap::new();
        for (s, _) in self.pres.potential_extend(&u).letters() {
            if let Symbol::Gen(y) = s {
                if !lifts.contains_key(y) {
                    let r = self.random_rep(j - 1, y, rng);
                    lifts.insert(y.clone(), r);
                }
            }
        }
        self.lambda(j, &u, &|y| lifts[y].clone())
    }

    /// Checks the representative of `x` against every enumerated path and
    /// `random` fully random recomputations.
    pub fn verify(
        &self,
        x: &str,
        random: usize,
        seed: u64,
    ) -> Result<Vec<Verification>, FormalError> {
        let paths = self.paths(x)?;
        let mut out = Vec::new();
        for j in 1..=self.level {
            let r = &self.reps[j][x];
            for u in paths {
                let w = self.canonical_lambda(j, u).mul(&r.inverse());
                out.push(Verification {
                    level: j,
                    choice: self.pres.format_path(u),
                    status: self.member(j, &w),
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (j as u64).wrapping_mul(0x9e37_79b9));
            for k in 0..random {
                let w = self.random_rep(j, x, &mut rng).mul(&r.inverse());
                out.push(Verification {
                    level: j,
                    choice: format!("random #{}", k),
                    status: self.member(j, &w),
                });
            }
        }
        Ok(out)
    }

    pub fn expand(&self, x: &str, seed: u64) -> Result<FormalExpansion, FormalError> {
        let model = self.model_of(x)?.to_string();
        let mut representative = TowerElement::new(self.level);
        for j in 0..=self.level {
            representative = representative.with(j, self.reps[j][x].clone())?;
        }
        let generators = (0..=self.level)
            .map(|j| LevelGenerators {
                level: j,
                skein: self.skein_gens[j].clone(),
                shift: self.shift_gens[j].clone(),
            })
            .collect();
        let verification = self.verify(x, 3, seed)?;
        Ok(FormalExpansion {
            object: x.to_string(),
            model,
            representative,
            generators,
            verification,
        })
    }

    /// The formal skein relation for the elementary morphism `s` at level
    /// `j`, compared after collapse: `c(ρ(targ)) c(ρ(sour))^-1` against
    /// `c(ŝh(ρ(𝔞(s^-1))))`.
    pub fn skein_relation(&self, j: usize, s: usize) -> Membership {
        let m = &self.pres.morphisms[s];
        let lhs = self.reps[j][&m.target]
            .collapse()
            .mul(&self.reps[j][&m.source].collapse().inverse());
        let rhs = if j == 0 {
            NestedWord::identity(0)
        } else {
            let u = MorphismWord {
                letters: vec![(s, 1)],
            };
            self.canonical_lambda(j, &u).collapse().inverse()
        };
        self.member_collapsed(j, &lhs.mul(&rhs.inverse()))
    }

    /// The relation for every elementary morphism and level.
    pub fn skein_relation_report(&self) -> Vec<(String, usize, Membership)> {
        let mut out = Vec::new();
        for (s, m) in self.pres.morphisms.iter().enumerate() {
            for j in 0..=self.level {
                out.push((m.name.clone(), j, self.skein_relation(j, s)));
            }
        }
        out
    }
}

/// Expands `x` to level `level`, enumerating paths of length at most
/// `bound`.
pub fn expand_formal(
    p: &GroupoidPresentation,
    x: &str,
    level: usize,
    bound: usize,
    seed: u64,
) -> Result<FormalExpansion, FormalError> {
    if p.object_index(x).is_none() {
        return Err(FormalError::UnknownObject(x.to_string()));
    }
    FormalCalculus::new(p, level, bound)?.expand(x, seed)
}
