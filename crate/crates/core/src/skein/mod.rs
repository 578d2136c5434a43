//! Skein potentials and the expansion of links into model bases.

mod engine;
mod expansion;
mod vassiliev;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::braid::{BraidError, Letter};
use crate::coeff::{CoeffError, Exponent, Poly, ReesElement, Variant};
use crate::diagram::{CanonicalCode, DiagramError};
use crate::homotopy::HomotopyError;
use crate::link::Presentation;

pub use engine::{expand, naive_resolve, Engine};
pub use expansion::{
    disjoint_union_action, iota_beta, Coefficient, ExactExpansion, Expanded, Expansion,
};
pub use vassiliev::{
    expand_vassiliev, unordered, DifferentiabilityGenerator, FourTerm, RelationReport, Tangency,
    VassilievEngine, VassilievExpansion, VassilievForm,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid potential: {0}")]
    Potential(String),
    #[error("site {0} is singular")]
    SingularSite(usize),
    #[error("mark index {0} out of range")]
    MarkIndex(usize),
    #[error("contract violation: {0}")]
    Contract(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PotentialKind {
    /// `σ(K_*) = c K_0`, with `c` the self or mixed coefficient.
    ConwaySplit,
    /// `σ(K_*) = h K_*`.
    Vassiliev,
    /// A fixed local target for every double point.
    LocalTable(LocalTarget),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalTarget {
    Identity,
    Smoothing,
    Singular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Truncated(usize),
}

impl Mode {
    pub const DEFAULT_ORDER: usize = 8;
}

impl std::str::FromStr for Mode {
    type Err = String;

    /// `exact`, `trunc` (default order) or `trunc<N>`.
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(Mode::Exact),
            "trunc" => Ok(Mode::Truncated(Mode::DEFAULT_ORDER)),
            _ => s
                .strip_prefix("trunc")
                .and_then(|n| n.parse().ok())
                .map(Mode::Truncated)
                .ok_or_else(|| format!("unknown mode {:?}", s)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    PlusToRest,
    MinusToRest,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PotentialSpec {
    pub kind: PotentialKind,
    pub self_coeff: Poly,
    pub mixed_coeff: Poly,
    pub ideal_i: Vec<Poly>,
    pub ideal_j: Vec<Poly>,
    pub variant: Variant,
}

impl Default for PotentialSpec {
    fn default() -> Self {
        Self::conway(Variant::Oriented)
    }
}

impl PotentialSpec {
    pub fn conway(variant: Variant) -> Self {
        PotentialSpec {
            kind: PotentialKind::ConwaySplit,
            self_coeff: Poly::h(),
            mixed_coeff: Poly::z(),
            ideal_i: vec![Poly::h()],
            ideal_j: vec![Poly::h(), Poly::z()],
            variant,
        }
    }

    pub fn vassiliev() -> Self {
        PotentialSpec {
            kind: PotentialKind::Vassiliev,
            ..Self::conway(Variant::Oriented)
        }
    }

    /// Checks the coefficients against the declared ideals: a self
    /// smoothing coefficient must lie in `I`, a mixed one in `J` but not `I`.
    pub fn check(&self) -> Result<(), SkeinError> {
        let gens = |g: &[Poly]| -> Result<Vec<Exponent>, SkeinError> {
            g.iter()
                .map(|p| match p.iter().collect::<Vec<_>>().as_slice() {
                    [(e, c)] if **c == BigInt::from(1) => Ok(**e),
                    _ => Err(SkeinError::Potential(format!(
                        "ideal generator {} is not a monomial",
                        p
                    ))),
                })
                .collect()
        };
        let (i, j) = (gens(&self.ideal_i)?, gens(&self.ideal_j)?);
        if !i.iter().all(|g| in_ideal(&Poly::monomial(1, *g), &j)) {
            return Err(SkeinError::Potential("I is not contained in J".into()));
        }
        if self.kind == PotentialKind::ConwaySplit {
            if !in_ideal(&self.self_coeff, &i) {
                return Err(SkeinError::Potential(format!(
                    "self coefficient {} not in I",
                    self.self_coeff
                )));
            }
            if !in_ideal(&self.mixed_coeff, &j) || in_ideal(&self.mixed_coeff, &i) {
                return Err(SkeinError::Potential(format!(
                    "mixed coefficient {} not in J minus I",
                    self.mixed_coeff
                )));
            }
        }
        Ok(())
    }

    pub fn coefficient(&self, self_crossing: bool) -> ReesElement {
        let p = if self_crossing {
            &self.self_coeff
        } else {
            &self.mixed_coeff
        };
        ReesElement::from_poly(self.variant, p.clone())
    }

    /// `(q v^-1)^k` in the framed ring, `1` in the oriented one.
    pub fn framing_factor(&self, k: i64) -> ReesElement {
        match self.variant {
            Variant::Oriented => ReesElement::one(self.variant),
            Variant::Framed => ReesElement::from_poly(
                self.variant,
                Poly::monomial(
                    1,
                    Exponent {
                        q: k as i32,
                        v: -k as i32,
                        ..Exponent::ONE
                    },
                ),
            ),
        }
    }

    pub fn u(&self) -> ReesElement {
        ReesElement::from_poly(self.variant, Poly::u())
    }

    pub fn q(&self, e: i32) -> ReesElement {
        ReesElement::q_pow(self.variant, e)
    }
}

/// Monomial-ideal membership: every term divisible by some generator.
fn in_ideal(p: &Poly, gens: &[Exponent]) -> bool {
    !p.is_zero()
        && p.iter().all(|(e, _)| {
            gens.iter()
                .any(|g| e.z >= g.z && e.h >= g.h && e.u >= g.u && (g.q, g.v) == (0, 0))
        })
}

/// Key identifying a presentation up to relabeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PresentationKey {
    Disk(CanonicalCode),
    Annulus(usize, Vec<Letter>, Vec<usize>),
}

pub fn presentation_key(x: &Presentation) -> PresentationKey {
    match x {
        Presentation::Disk(d) => PresentationKey::Disk(d.canonical_code()),
        Presentation::Annulus(w) => {
            PresentationKey::Annulus(w.strands, w.letters.clone(), w.singular.clone())
        }
    }
}

/// A finite combination of links, deduplicated up to relabeling.
#[derive(Clone, Debug, Default)]
pub struct SkeinExpression {
    terms: BTreeMap<PresentationKey, (ReesElement, Presentation)>,
}

impl PartialEq for SkeinExpression {
    fn eq(&self, o: &Self) -> bool {
        self.terms.len() == o.terms.len()
            && self
                .terms
                .iter()
                .all(|(k, (c, _))| o.terms.get(k).map(|(d, _)| d == c).unwrap_or(false))
    }
}

impl SkeinExpression {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(c: ReesElement, x: Presentation) -> Self {
        let mut e = Self::new();
        e.add(c, x);
        e
    }

    pub fn add(&mut self, c: ReesElement, x: Presentation) {
        if c.is_zero() {
            return;
        }
        let k = presentation_key(&x);
        match self.terms.get_mut(&k) {
            Some((d, _)) => {
                *d = &*d + &c;
                if d.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, (c, x));
            }
        }
    }

    pub fn extend(&mut self, other: SkeinExpression) {
        for (_, (c, x)) in other.terms {
            self.add(c, x);
        }
    }

    pub fn scaled(&self, c: &ReesElement) -> SkeinExpression {
        let mut out = Self::new();
        for (d, x) in self.terms.values() {
            out.add(c * d, x.clone());
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ReesElement, &Presentation)> {
        self.terms.values().map(|(c, x)| (c, x))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies a linear map term by term.
    pub fn try_map(
        &self,
        f: impl Fn(&Presentation) -> Result<SkeinExpression, SkeinError>,
    ) -> Result<SkeinExpression, SkeinError> {
        let mut out = Self::new();
        for (c, x) in self.terms() {
            out.extend(f(x)?.scaled(c));
        }
        Ok(out)
    }
}

pub(crate) fn site_class(x: &Presentation, site: usize) -> Result<bool, SkeinError> {
    match x {
        Presentation::Disk(d) => Ok(d.is_self_crossing(site)?),
        Presentation::Annulus(w) => {
            if site >= w.len() {
                return Err(BraidError::Inapplicable(format!("no letter at {}", site)).into());
            }
            Ok(w.closure_structure().self_letters[site])
        }
    }
}

pub(crate) fn is_singular_site(x: &Presentation, site: usize) -> bool {
    match x {
        Presentation::Disk(d) => d.is_singular(site),
        Presentation::Annulus(w) => w.is_singular(site),
    }
}

pub(crate) fn site_sign(x: &Presentation, site: usize) -> Result<i8, SkeinError> {
    match x {
        Presentation::Disk(d) => Ok(d.crossing(site)?.sign),
        Presentation::Annulus(w) => w
            .letters
            .get(site)
            .map(Letter::sign)
            .ok_or_else(|| BraidError::Inapplicable(format!("no letter at {}", site)).into()),
    }
}

pub(crate) fn with_sign(
    x: &Presentation,
    site: usize,
    sign: i8,
) -> Result<Presentation, SkeinError> {
    Ok(match x {
        Presentation::Disk(d) => Presentation::Disk(d.with_sign(site, sign)?),
        Presentation::Annulus(w) => {
            let mut v = w.clone();
            v.letters[site] = v.letters[site].with_sign(sign);
            Presentation::Annulus(v)
        }
    })
}

/// Oriented smoothing at a site. In the annulus a curl smooths to the strand
/// plus a split circle, returned as the extra factor count.
pub(crate) fn smoothing(x: &Presentation, site: usize) -> Result<(Presentation, u32), SkeinError> {
    Ok(match x {
        Presentation::Disk(d) => (Presentation::Disk(d.smooth(site)?), 0),
        Presentation::Annulus(w) => (
            Presentation::Annulus(w.deleted(site)),
            w.letters[site].is_curl() as u32,
        ),
    })
}

pub(crate) fn marked(x: &Presentation, site: usize) -> Result<Presentation, SkeinError> {
    Ok(match x {
        Presentation::Disk(d) => Presentation::Disk(d.mark_singular(site)?),
        Presentation::Annulus(w) => {
            let mut v = w.clone();
            v.letters[site] = v.letters[site].with_sign(1);
            v.singular.push(site);
            Presentation::Annulus(v)
        }
    })
}

/// One skein rewrite at a regular site.
pub fn apply_relation(
    x: &Presentation,
    site: usize,
    pot: &PotentialSpec,
    dir: Direction,
) -> Result<SkeinExpression, SkeinError> {
    if is_singular_site(x, site) {
        return Err(SkeinError::SingularSite(site));
    }
    let self_site = site_class(x, site)?;
    let v = pot.variant;
    let q = |e| ReesElement::q_pow(v, e);
    let mut out = SkeinExpression::new();
    let (from, to, lead, tail_sign) = match dir {
        Direction::PlusToRest => (1, -1, 2, 1),
        Direction::MinusToRest => (-1, 1, -2, -1),
    };
    if site_sign(x, site)? != from {
        return Err(SkeinError::Unsupported(format!(
            "site {} has the other sign",
            site
        )));
    }
    out.add(q(lead), with_sign(x, site, to)?);
    let tail = match pot.kind {
        PotentialKind::ConwaySplit | PotentialKind::LocalTable(LocalTarget::Smoothing) => {
            let (sm, circles) = smoothing(x, site)?;
            let c = &pot.coefficient(self_site) * &pot.u().pow(circles);
            (c, sm)
        }
        PotentialKind::Vassiliev | PotentialKind::LocalTable(LocalTarget::Singular) => {
            (ReesElement::from_poly(v, Poly::h()), marked(x, site)?)
        }
        PotentialKind::LocalTable(LocalTarget::Identity) => {
            (ReesElement::one(v), with_sign(x, site, 1)?)
        }
    };
    out.add(
        &q(tail_sign) * &tail.0.scale(&BigInt::from(tail_sign)),
        tail.1,
    );
    Ok(out)
}

fn mark_site(x: &Presentation, i: usize) -> Result<usize, SkeinError> {
    let marks = match x {
        Presentation::Disk(d) => d.singular(),
        Presentation::Annulus(w) => &w.singular[..],
    };
    if i == 0 || i > marks.len() {
        return Err(SkeinError::MarkIndex(i));
    }
    Ok(marks[i - 1])
}

/// `σ_i`: smooths the `i`-th double point (1-based) with its classified
/// coefficient; later marks move down by one.
pub fn sigma_i(
    x: &Presentation,
    i: usize,
    pot: &PotentialSpec,
) -> Result<SkeinExpression, SkeinError> {
    let site = mark_site(x, i)?;
    let c = pot.coefficient(site_class(x, site)?);
    let (sm, circles) = smoothing(x, site)?;
    Ok(SkeinExpression::single(&c * &pot.u().pow(circles), sm))
}

/// `∂_i`: `K_+ - K_-` at the `i`-th double point.
pub fn partial_i(
    x: &Presentation,
    i: usize,
    variant: Variant,
) -> Result<SkeinExpression, SkeinError> {
    let site = mark_site(x, i)?;
    let (plus, minus) = match x {
        Presentation::Disk(d) => (
            Presentation::Disk(d.unmark(site, 1)?),
            Presentation::Disk(d.unmark(site, -1)?),
        ),
        Presentation::Annulus(w) => {
            let mut p = w.clone();
            p.singular.retain(|&s| s != site);
            let mut m = p.clone();
            m.letters[site] = m.letters[site].with_sign(-1);
            (Presentation::Annulus(p), Presentation::Annulus(m))
        }
    };
    let mut out = SkeinExpression::new();
    out.add(ReesElement::one(variant), plus);
    out.add(-ReesElement::one(variant), minus);
    Ok(out)
}

/// Applies `σ` to every double point, leaving a combination of regular links.
pub fn apply_potential(
    x: &Presentation,
    pot: &PotentialSpec,
) -> Result<SkeinExpression, SkeinError> {
    let mut e = SkeinExpression::single(ReesElement::one(pot.variant), x.clone());
    for _ in 0..x.singular_count() {
        e = e.try_map(|y| sigma_i(y, 1, pot))?;
    }
    Ok(e)
}

#[cfg(test)]
mod tests;
