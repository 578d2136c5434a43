use std::collections::BTreeMap;
use std::fmt;

use super::word::NestedWord;
use super::FormalError;
use crate::coeff::{Exponent, Poly, TruncatedSeries};
use crate::skein::Expansion;

/// A finitely supported element of `F^(0) x F^(1) x ... x F^(J)`.
///
/// Absent entries are identities for the usual product and zeros for the
/// second product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TowerElement {
    truncation: usize,
    entries: BTreeMap<usize, NestedWord>,
}

/// An element of `F(X) x ... x F(X)` (the image of the collapse).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Collapsed {
    pub levels: Vec<NestedWord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TowerOp {
    Shift,
    Collapse,
    SecondProduct,
    Star,
}

impl std::str::FromStr for TowerOp {
    type Err = FormalError;

    fn from_str(s: &str) -> Result<Self, FormalError> {
        match s {
            "shift" => Ok(TowerOp::Shift),
            "collapse" => Ok(TowerOp::Collapse),
            "second_product" => Ok(TowerOp::SecondProduct),
            "star" => Ok(TowerOp::Star),
            _ => Err(FormalError::Parse(format!("unknown tower op {:?}", s))),
        }
    }
}

/// Result of a tower operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerValue {
    Tower(TowerElement),
    Collapsed(Collapsed),
}

impl TowerElement {
    pub fn new(truncation: usize) -> Self {
        TowerElement {
            truncation,
            entries: BTreeMap::new(),
        }
    }

    /// The unit of the second product: identity at level 0, nothing else.
    pub fn unit(truncation: usize) -> Self {
        Self::new(truncation)
            .with(0, NestedWord::identity(0))
            .expect("level 0")
    }

    pub fn with(mut self, j: usize, w: NestedWord) -> Result<Self, FormalError> {
        if w.level() != j {
            return Err(FormalError::Level(format!(
                "entry {} has level {}",
                j,
                w.level()
            )));
        }
        if j <= self.truncation {
            self.entries.insert(j, w);
        }
        Ok(self)
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn get(&self, j: usize) -> Option<&NestedWord> {
        self.entries.get(&j)
    }

    /// Entry `j`, identity when absent.
    pub fn at(&self, j: usize) -> NestedWord {
        self.entries
            .get(&j)
            .cloned()
            .unwrap_or_else(|| NestedWord::identity(j))
    }

    pub fn support(&self) -> impl Iterator<Item = (&usize, &NestedWord)> {
        self.entries.iter()
    }

    fn check(&self, o: &TowerElement) -> Result<(), FormalError> {
        if self.truncation != o.truncation {
            return Err(FormalError::Level(format!(
                "truncations {} and {}",
                self.truncation, o.truncation
            )));
        }
        Ok(())
    }

    /// Level-wise product.
    pub fn mul(&self, o: &TowerElement) -> Result<TowerElement, FormalError> {
        self.check(o)?;
        let mut out = self.clone();
        for (&j, w) in &o.entries {
            let v = out.at(j).mul(w);
            out.entries.insert(j, v);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> TowerElement {
        TowerElement {
            truncation: self.truncation,
            entries: self
                .entries
                .iter()
                .map(|(&j, w)| (j, w.inverse()))
                .collect(),
        }
    }

    /// Each `a_j` becomes the basis letter `[a_j]` at level `j+1`.
    pub fn shift(&self) -> TowerElement {
        TowerElement {
            truncation: self.truncation,
            entries: self
                .entries
                .iter()
                .filter(|(&j, _)| j < self.truncation)
                .map(|(&j, w)| (j + 1, NestedWord::letter(w.clone())))
                .collect(),
        }
    }

    pub fn collapse(&self) -> Collapsed {
        Collapsed {
            levels: (0..=self.truncation)
                .map(|j| self.at(j).collapse())
                .collect(),
        }
    }

    /// `c_k = prod_{i+j=k} a_i b_j`, factors included into level `k` and
    /// multiplied in increasing `i`.
    pub fn second_product(&self, o: &TowerElement) -> Result<TowerElement, FormalError> {
        self.check(o)?;
        let mut out = TowerElement::new(self.truncation);
        for k in 0..=self.truncation {
            let mut c: Option<NestedWord> = None;
            for i in 0..=k {
                if let (Some(a), Some(b)) = (self.entries.get(&i), o.entries.get(&(k - i))) {
                    // Identity factors are left out, so the unit acts trivially.
                    let lift = |w: &NestedWord, n: usize| {
                        if w.is_identity() {
                            NestedWord::identity(k)
                        } else {
                            w.include(n)
                        }
                    };
                    let t = lift(a, k - i).mul(&lift(b, i));
                    c = Some(match c {
                        None => t,
                        Some(x) => x.mul(&t),
                    });
                }
            }
            if let Some(c) = c {
                out.entries.insert(k, c);
            }
        }
        Ok(out)
    }

    /// `a * sh(b)`.
    pub fn star(&self, o: &TowerElement) -> Result<TowerElement, FormalError> {
        self.mul(&o.shift())
    }
}

impl Collapsed {
    pub fn identity(truncation: usize) -> Self {
        Collapsed {
            levels: vec![NestedWord::identity(0); truncation + 1],
        }
    }

    pub fn shift(&self) -> Collapsed {
        let mut levels = vec![NestedWord::identity(0)];
        levels.extend(self.levels[..self.levels.len() - 1].iter().cloned());
        Collapsed { levels }
    }

    pub fn mul(&self, o: &Collapsed) -> Collapsed {
        Collapsed {
            levels: self
                .levels
                .iter()
                .zip(&o.levels)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }
}

pub fn tower_op(
    x: &TowerElement,
    y: Option<&TowerElement>,
    op: TowerOp,
) -> Result<TowerValue, FormalError> {
    let need = || y.ok_or_else(|| FormalError::Parse("operation needs a second operand".into()));
    Ok(match op {
        TowerOp::Shift => TowerValue::Tower(x.shift()),
        TowerOp::Collapse => TowerValue::Collapsed(x.collapse()),
        TowerOp::SecondProduct => TowerValue::Tower(x.second_product(need()?)?),
        TowerOp::Star => TowerValue::Tower(x.star(need()?)?),
    })
}

/// Sends a generator at level `i` to `h^i` times itself and abelianizes.
pub fn linearize(
    x: &Collapsed,
    order: usize,
) -> Result<Expansion<String, TruncatedSeries>, FormalError> {
    if x.levels.len() > order + 1 {
        return Err(FormalError::Level(format!(
            "{} levels exceed series order {}",
            x.levels.len(),
            order
        )));
    }
    let mut out = Expansion::zero();
    for (i, w) in x.levels.iter().enumerate() {
        for (g, n) in w.abelianized() {
            let s = TruncatedSeries::from_h_poly(order, &Poly::monomial(n, Exponent::h(i as i32)))
                .expect("nonnegative h");
            out.add_term(g, s);
        }
    }
    Ok(out)
}

/// Lower bound `(k - i)/(l + 1)` on the order reached after `k` passes of
/// the skein relation, starting from complexity `i` with potential
/// overshoot `l`.
pub fn phi(i: u32, l: u32, k: u32) -> f64 {
    k as f64 - (i as f64 + k as f64 * l as f64) / (l as f64 + 1.0)
}

/// Least number of passes `k'` with `phi(i, l, k') >= k`.
pub fn passes_needed(i: u32, l: u32, k: u32) -> u32 {
    k * (l + 1) + i
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for j in 0..=self.truncation {
            if j > 0 {
                write!(f, "; ")?;
            }
            match self.entries.get(&j) {
                Some(w) => write!(f, "{}", w)?,
                None => write!(f, "-")?,
            }
        }
        write!(f, ")")
    }
}

impl fmt::Display for Collapsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.levels.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join("; "))
    }
}
