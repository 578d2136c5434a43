//! Totally framed links, the framing normal form, framed expansions and the
//! torsion decomposition read off torus intersection data.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{BraidWord, Letter};
use crate::coeff::{Poly, ReesElement, Var, Variant};
use crate::homotopy::ModelMonomial;
use crate::link::Presentation;
use crate::skein::{Engine, ExactExpansion, PotentialSpec, SkeinError};

#[cfg(test)]
mod tests;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FramedError {
    #[error("framing has {0} entries for {1} components")]
    Components(usize, usize),
    #[error("class {0}: self-intersection number {1} is not a multiple of {2}")]
    Divisibility(String, u64, u64),
    #[error("malformed torus data: {0}")]
    Parse(String),
    #[error(transparent)]
    Skein(#[from] SkeinError),
}

/// A link together with one framing per component. Only the total, framing
/// plus writhe, is an invariant of the framed class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotallyFramedLink {
    pub link: Presentation,
    pub framing: Vec<i64>,
}

impl TotallyFramedLink {
    /// The blackboard framing, with diagram decorations counted.
    pub fn blackboard(link: Presentation) -> Self {
        let framing = match &link {
            Presentation::Disk(d) => (0..d.components().len())
                .map(|i| d.component_framing(i))
                .collect(),
            Presentation::Annulus(w) => vec![0; w.closure_structure().cycles.len()],
        };
        TotallyFramedLink { link, framing }
    }

    pub fn new(link: Presentation, framing: Vec<i64>) -> Result<Self, FramedError> {
        let n = component_count(&link);
        if framing.len() != n {
            return Err(FramedError::Components(framing.len(), n));
        }
        Ok(TotallyFramedLink { link, framing })
    }

    pub fn total(&self) -> i64 {
        self.framing.iter().sum::<i64>() + self.link.writhe()
    }

    /// `K^(+)`: one more twist on the first component.
    pub fn plus(&self) -> Self {
        self.twisted(1)
    }

    pub fn twisted(&self, k: i64) -> Self {
        let mut out = self.clone();
        if let Some(f) = out.framing.first_mut() {
            *f += k;
        }
        out
    }

    /// The link with framings realized as decorations or curls, so that its
    /// blackboard framing is `self`.
    pub fn realize(&self) -> Presentation {
        match &self.link {
            Presentation::Disk(d) => {
                let comps = d.components();
                let mut out = d.clone();
                for (i, c) in comps.iter().enumerate() {
                    let k = self.framing[i] - d.component_framing(i);
                    if k != 0 {
                        out = out.add_twist(c[0], k).expect("edge of the diagram");
                    }
                }
                Presentation::Disk(out)
            }
            Presentation::Annulus(w) => {
                let cycles = w.closure_structure().cycles;
                let mut letters = w.letters.clone();
                for (i, c) in cycles.iter().enumerate() {
                    let f = self.framing[i];
                    let sign = if f > 0 { 1 } else { -1 };
                    letters
                        .extend((0..f.unsigned_abs()).map(|_| Letter::Curl { curl: c[0], sign }));
                }
                Presentation::Annulus(BraidWord {
                    strands: w.strands,
                    letters,
                    singular: w.singular.clone(),
                })
            }
        }
    }
}

fn component_count(x: &Presentation) -> usize {
    match x {
        Presentation::Disk(d) => d.components().len(),
        Presentation::Annulus(w) => w.closure_structure().cycles.len(),
    }
}

impl fmt::Display for TotallyFramedLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} framed {:?}", self.link, self.framing)
    }
}

/// `q^a K` rewritten with `q K = K^(+)` as a link with coefficient `q^0`.
pub fn framing_normal_form(a: i64, k: &TotallyFramedLink) -> TotallyFramedLink {
    k.twisted(a)
}

/// Expansion in the framed ring. Curls and decorations contribute
/// `(q v^-1)` per unit of framing.
pub fn framed_expand(k: &TotallyFramedLink) -> Result<ExactExpansion, FramedError> {
    let engine = Engine::new(PotentialSpec::conway(Variant::Framed))?;
    Ok(engine.expand(&k.realize())?)
}

/// `v = q`: the framing factor becomes `1` and the vacuum becomes the
/// oriented one.
pub fn specialize_v_to_q(e: &ExactExpansion) -> ExactExpansion {
    let q = Poly::q_pow(1);
    let mut out = ExactExpansion::zero();
    for (m, c) in e.iter() {
        let p = c.substitute(Var::V, &q);
        out.add_term(
            m.clone(),
            ReesElement::normalize(Variant::Oriented, p.poly()),
        );
    }
    out
}

/// Specialization `v = 1`.
pub fn specialize_v_to_one(e: &ExactExpansion) -> ExactExpansion {
    let mut out = ExactExpansion::zero();
    for (m, c) in e.iter() {
        out.add_term(
            m.clone(),
            ReesElement::from_poly(Variant::Framed, c.at_v_one()),
        );
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusClass {
    pub monomial: Vec<i64>,
    #[serde(default)]
    pub intersections: Vec<i64>,
    /// Self-intersection datum; must be a multiple of the gcd.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon0: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TorusData {
    pub classes: Vec<TorusClass>,
}

impl TorusData {
    pub fn from_json(text: &str) -> Result<Self, FramedError> {
        serde_json::from_str(text).map_err(|e| FramedError::Parse(e.to_string()))
    }
}

/// One summand `R/(q^(2ε) - 1)`, free when `ε = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub monomial: ModelMonomial,
    pub epsilon: u64,
}

impl Summand {
    pub fn is_free(&self) -> bool {
        self.epsilon == 0
    }

    pub fn quotient(&self) -> String {
        if self.is_free() {
            "R".into()
        } else {
            format!("R/(q^{}-1)", 2 * self.epsilon)
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.monomial, self.quotient())
    }
}

pub fn torus_decomposition(data: &TorusData) -> Result<Vec<Summand>, FramedError> {
    data.classes
        .iter()
        .map(|c| {
            let monomial = ModelMonomial::new(c.monomial.clone());
            let epsilon = c
                .intersections
                .iter()
                .fold(0u64, |g, &x| g.gcd(&x.unsigned_abs()));
            if let Some(e0) = c.epsilon0 {
                let ok = if epsilon == 0 {
                    e0 == 0
                } else {
                    e0 % epsilon == 0
                };
                if !ok {
                    return Err(FramedError::Divisibility(monomial.to_string(), e0, epsilon));
                }
            }
            Ok(Summand { monomial, epsilon })
        })
        .collect()
}

pub fn decomposition_json(s: &[Summand]) -> serde_json::Value {
    serde_json::Value::Array(
        s.iter()
            .map(|x| {
                serde_json::json!({
                    "monomial": x.monomial.entries(),
                    "epsilon": x.epsilon,
                    "summand": x.quotient(),
                })
            })
            .collect(),
    )
}
