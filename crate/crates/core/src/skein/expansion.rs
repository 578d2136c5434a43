use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::coeff::{truncate_h, CoeffError, ReesElement, TruncatedSeries, Variant};
use crate::homotopy::ModelMonomial;

/// Coefficient types an expansion can carry.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn json(&self) -> serde_json::Value;
}

impl Coefficient for ReesElement {
    fn is_zero(&self) -> bool {
        ReesElement::is_zero(self)
    }

    fn add(&self, o: &Self) -> Self {
        self + o
    }

    fn mul(&self, o: &Self) -> Self {
        self * o
    }

    fn neg(&self) -> Self {
        -self
    }

    fn json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

impl Coefficient for TruncatedSeries {
    fn is_zero(&self) -> bool {
        TruncatedSeries::is_zero(self)
    }

    fn add(&self, o: &Self) -> Self {
        TruncatedSeries::add(self, o).expect("series of one order")
    }

    fn mul(&self, o: &Self) -> Self {
        TruncatedSeries::mul(self, o).expect("series of one order")
    }

    fn neg(&self) -> Self {
        TruncatedSeries::neg(self)
    }

    fn json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs()
                .iter()
                .map(|c| serde_json::Value::String(c.to_string()))
                .collect(),
        )
    }
}

/// A finite map from basis elements to nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Expansion<K: Ord, V> {
    values: BTreeMap<K, V>,
}

pub type ExactExpansion = Expansion<ModelMonomial, ReesElement>;

impl<K: Ord + Clone + fmt::Display, V: Coefficient> Expansion<K, V> {
    pub fn zero() -> Self {
        Expansion {
            values: BTreeMap::new(),
        }
    }

    pub fn single(k: K, v: V) -> Self {
        let mut e = Self::zero();
        e.add_term(k, v);
        e
    }

    pub fn add_term(&mut self, k: K, v: V) {
        if v.is_zero() {
            return;
        }
        match self.values.get_mut(&k) {
            Some(x) => {
                *x = x.add(&v);
                if x.is_zero() {
                    self.values.remove(&k);
                }
            }
            None => {
                self.values.insert(k, v);
            }
        }
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (k, v) in &o.values {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut e = self.clone();
        e.add_assign(o);
        e
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }

    pub fn negated(&self) -> Self {
        self.map_values(|v| v.neg())
    }

    pub fn scaled(&self, c: &V) -> Self {
        self.map_values(|v| c.mul(v))
    }

    pub fn map_values(&self, f: impl Fn(&V) -> V) -> Self {
        let mut e = Self::zero();
        for (k, v) in &self.values {
            e.add_term(k.clone(), f(v));
        }
        e
    }

    pub fn try_map_values<W: Coefficient, E>(
        &self,
        f: impl Fn(&V) -> Result<W, E>,
    ) -> Result<Expansion<K, W>, E> {
        let mut e = Expansion::zero();
        for (k, v) in &self.values {
            e.add_term(k.clone(), f(v)?);
        }
        Ok(e)
    }

    pub fn map_keys<L: Ord + Clone + fmt::Display>(&self, f: impl Fn(&K) -> L) -> Expansion<L, V> {
        let mut e = Expansion::zero();
        for (k, v) in &self.values {
            e.add_term(f(k), v.clone());
        }
        e
    }

    pub fn get(&self, k: &K) -> Option<&V> {
        self.values.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &V)> {
        self.values.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.values.keys()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.values
                .iter()
                .map(|(k, v)| (k.to_string(), v.json()))
                .collect(),
        )
    }
}

impl<K: Ord + Clone + fmt::Display, V: Coefficient> Serialize for Expansion<K, V> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.values.len()))?;
        for (k, v) in &self.values {
            m.serialize_entry(&k.to_string(), &v.json())?;
        }
        m.end()
    }
}

impl<K: Ord + fmt::Display, V: fmt::Display> fmt::Debug for Expansion<K, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} ↦ {}", k, v)?;
        }
        write!(f, "}}")
    }
}

impl<K: Ord + fmt::Display, V: fmt::Display> fmt::Display for Expansion<K, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl ExactExpansion {
    /// Parses the JSON map written by [`Expansion::to_json`].
    pub fn from_json(variant: Variant, v: &serde_json::Value) -> Result<Self, String> {
        let obj = v.as_object().ok_or("expansion must be a JSON object")?;
        let mut e = Self::zero();
        for (k, c) in obj {
            let m: ModelMonomial = k.parse().map_err(|x| format!("{}", x))?;
            let text = c.as_str().ok_or("coefficients must be strings")?;
            e.add_term(
                m,
                ReesElement::parse(variant, text).map_err(|x| x.to_string())?,
            );
        }
        Ok(e)
    }

    pub fn truncated(
        &self,
        n: usize,
    ) -> Result<Expansion<ModelMonomial, TruncatedSeries>, CoeffError> {
        self.try_map_values(|v| truncate_h(v, n))
    }
}

/// Result of `expand` in either mode.
#[derive(Clone, Debug, PartialEq)]
pub enum Expanded {
    Exact(ExactExpansion),
    Truncated(Expansion<ModelMonomial, TruncatedSeries>),
}

impl Expanded {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Expanded::Exact(e) => e.to_json(),
            Expanded::Truncated(e) => e.to_json(),
        }
    }

    pub fn exact(&self) -> Option<&ExactExpansion> {
        match self {
            Expanded::Exact(e) => Some(e),
            Expanded::Truncated(_) => None,
        }
    }
}

/// Coefficient of `beta`, zero if absent.
pub fn iota_beta(e: &ExactExpansion, beta: &ModelMonomial, variant: Variant) -> ReesElement {
    e.get(beta)
        .cloned()
        .unwrap_or_else(|| ReesElement::zero(variant))
}

/// Action of links in a 3-ball by disjoint union: bilinear, with monomials
/// multiplied by multiset union.
pub fn disjoint_union_action(a: &ExactExpansion, b: &ExactExpansion) -> ExactExpansion {
    let mut out = Expansion::zero();
    for (ka, va) in a.iter() {
        for (kb, vb) in b.iter() {
            out.add_term(ka.union(kb), va * vb);
        }
    }
    out
}

impl Coefficient for crate::coeff::Poly {
    fn is_zero(&self) -> bool {
        crate::coeff::Poly::is_zero(self)
    }

    fn add(&self, o: &Self) -> Self {
        self + o
    }

    fn mul(&self, o: &Self) -> Self {
        self * o
    }

    fn neg(&self) -> Self {
        -self
    }

    fn json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}
