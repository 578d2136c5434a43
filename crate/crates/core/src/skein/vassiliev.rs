use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use itertools::Itertools;
use serde::Serialize;

use super::engine::first_bad_crossing;
use super::expansion::Expansion;
use super::SkeinError;
use crate::coeff::{Exponent, Poly, TruncatedSeries};
use crate::diagram::{CanonicalCode, PlanarDiagram};
use crate::homotopy::{diagram_chords, ChordDiagram};
use crate::link::Presentation;

pub type VassilievExpansion = Expansion<ChordDiagram, TruncatedSeries>;

/// Which boundary the singular expansion realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VassilievForm {
    /// `K_+ = K_- + h K_*`.
    Conway,
    /// `K_+ = q^2 K_- + q h K_*`.
    Jones,
}

impl std::str::FromStr for VassilievForm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "conway" => Ok(VassilievForm::Conway),
            "jones" => Ok(VassilievForm::Jones),
            _ => Err(format!("unknown form {:?}", s)),
        }
    }
}

/// `K_{*+} - K_{*-} - K_{+*} + K_{-*}` at a two-point singular diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentiabilityGenerator {
    pub base: CanonicalCode,
    pub terms: Vec<(i64, CanonicalCode)>,
}

/// Four chord diagrams differing in where one chord end sits next to the
/// ends of another.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FourTerm {
    pub terms: Vec<(i64, String)>,
}

/// Two chord diagrams differing only in the order of two chords.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Tangency {
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RelationReport {
    pub differentiability: Vec<DifferentiabilityGenerator>,
    pub four_term: Vec<FourTerm>,
    pub tangency: Vec<Tangency>,
}

/// Memoized singular expansion at a fixed order.
pub struct VassilievEngine {
    order: usize,
    form: VassilievForm,
    memo: Mutex<HashMap<(Vec<i64>, usize), VassilievExpansion>>,
    doubles: Mutex<BTreeMap<CanonicalCode, DifferentiabilityGenerator>>,
}

impl VassilievEngine {
    pub fn new(order: usize, form: VassilievForm) -> Self {
        VassilievEngine {
            order,
            form,
            memo: Mutex::new(HashMap::new()),
            doubles: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn expand(&self, d: &PlanarDiagram) -> VassilievExpansion {
        self.value(d, self.order)
    }

    /// Differentiability generators met so far.
    pub fn differentiability(&self) -> Vec<DifferentiabilityGenerator> {
        self.doubles.lock().unwrap().values().cloned().collect()
    }

    fn value(&self, d: &PlanarDiagram, budget: usize) -> VassilievExpansion {
        if d.singular().len() == 2 {
            self.record_double(d);
        }
        let key = (d.walk_code(), budget);
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return v.clone();
        }
        let v = match first_bad_crossing(d) {
            None => {
                let cd = diagram_chords(d);
                let c = Poly::monomial(1, Exponent::u(cd.bare_circles() as i32));
                Expansion::single(cd.core(), TruncatedSeries::constant(budget, c))
            }
            Some(id) => {
                let sign = d.crossing(id).expect("crossing exists").sign;
                let sw = d.switch(id).expect("regular crossing");
                let (lead, tail) = match (self.form, sign > 0) {
                    (VassilievForm::Conway, true) => (Poly::one(), Poly::one()),
                    (VassilievForm::Conway, false) => (Poly::one(), -Poly::one()),
                    (VassilievForm::Jones, true) => (Poly::q_pow(2), Poly::q_pow(1)),
                    (VassilievForm::Jones, false) => (Poly::q_pow(-2), -Poly::q_pow(-1)),
                };
                let mut out = self.value(&sw, budget).map_values(|s| s.scale_poly(&lead));
                if budget > 0 {
                    let star = d.mark_singular(id).expect("regular crossing");
                    let deeper = self.value(&star, budget - 1).map_values(|s| {
                        let p = s.to_h_poly().shift(Exponent::h(1));
                        TruncatedSeries::from_h_poly(budget, &p)
                            .expect("nonnegative h")
                            .scale_poly(&tail)
                    });
                    out.add_assign(&deeper);
                }
                out
            }
        };
        self.memo.lock().unwrap().insert(key, v.clone());
        v
    }

    fn record_double(&self, d: &PlanarDiagram) {
        let code = d.canonical_code();
        if self.doubles.lock().unwrap().contains_key(&code) {
            return;
        }
        let (a, b) = (d.singular()[0], d.singular()[1]);
        let c = |x: PlanarDiagram| x.canonical_code();
        let terms = vec![
            (1, c(d.unmark(b, 1).expect("marked"))),
            (-1, c(d.unmark(b, -1).expect("marked"))),
            (-1, c(d.unmark(a, 1).expect("marked"))),
            (1, c(d.unmark(a, -1).expect("marked"))),
        ];
        self.doubles.lock().unwrap().insert(
            code.clone(),
            DifferentiabilityGenerator { base: code, terms },
        );
    }
}

/// Raw singular expansion of a disk diagram, plus the relation generators
/// the quotient would need.
pub fn expand_vassiliev(
    x: &Presentation,
    order: usize,
    form: VassilievForm,
) -> Result<(VassilievExpansion, RelationReport), SkeinError> {
    let d = x
        .as_disk()
        .ok_or_else(|| SkeinError::Unsupported("singular expansion needs a disk diagram".into()))?;
    let eng = VassilievEngine::new(order, form);
    let e = eng.expand(d);
    let mut four = BTreeSet::new();
    let mut tang = BTreeSet::new();
    for cd in e.keys() {
        four.extend(four_terms(cd));
        tang.extend(tangencies(cd));
    }
    let report = RelationReport {
        differentiability: eng.differentiability(),
        four_term: four.into_iter().collect(),
        tangency: tang.into_iter().collect(),
    };
    Ok((e, report))
}

fn tangencies(cd: &ChordDiagram) -> Vec<Tangency> {
    let k = cd.chord_count();
    (0..k.saturating_sub(1))
        .filter_map(|i| {
            let sw = cd.relabeled(|c| {
                if c == i {
                    i + 1
                } else if c == i + 1 {
                    i
                } else {
                    c
                }
            });
            (sw != *cd).then(|| Tangency {
                left: cd.to_string(),
                right: sw.to_string(),
            })
        })
        .collect()
}

fn four_terms(cd: &ChordDiagram) -> Vec<FourTerm> {
    let k = cd.chord_count();
    let mut out = Vec::new();
    for (a, b) in (0..k).cartesian_product(0..k).filter(|(a, b)| a != b) {
        for end in 0..2 {
            let mut circles = cd.circles().to_vec();
            let (bc, bp) = cd.chords()[b][end];
            circles[bc].remove(bp);
            let mut terms = Vec::new();
            let a_ends: Vec<(usize, usize)> = circles
                .iter()
                .enumerate()
                .flat_map(|(ci, c)| {
                    c.iter()
                        .enumerate()
                        .filter(|(_, &x)| x == a)
                        .map(move |(p, _)| (ci, p))
                })
                .collect();
            for &(ci, p) in &a_ends {
                for (after, sign) in [(false, 1), (true, -1)] {
                    let mut c = circles.clone();
                    c[ci].insert(p + after as usize, b);
                    terms.push((sign, ChordDiagram::new(c).to_string()));
                }
            }
            if terms.iter().map(|t| &t.1).all_unique() {
                out.push(FourTerm { terms });
            }
        }
    }
    out
}

/// The chord diagram up to reordering of its chords.
pub fn unordered(cd: &ChordDiagram) -> ChordDiagram {
    let k = cd.chord_count();
    (0..k)
        .permutations(k)
        .map(|p| cd.relabeled(|c| p[c]))
        .min()
        .unwrap_or_else(|| cd.clone())
}
