//! The twisted deformation of a presented groupoid: powers of `q` on
//! objects, the functors `i_q` and `p_q`, and the deformed potential.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::coeff::{Exponent, Poly};
use crate::formal::{FormalError, GroupoidPresentation, MorphismWord};
use crate::loops::{Event, TransversalLoop};
use crate::skein::Expansion;

#[cfg(test)]
mod tests;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JonesqError {
    #[error(transparent)]
    Formal(#[from] FormalError),
    #[error("powers {0} and {1} differ by an odd amount")]
    Parity(i64, i64),
    #[error("target power {0} does not match source power {1}")]
    Mismatch(i64, i64),
    #[error("invalid loop: {0}")]
    Loop(String),
}

/// Twist of a word: additive, with `ε(u^-1) = -ε(u)`.
pub fn eps_of(p: &GroupoidPresentation, w: &MorphismWord) -> i64 {
    p.twist_of(w)
}

/// A morphism of the deformed groupoid: `q^start u` from `q^start x` to
/// `q^(start - 2ε(u)) y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QWord {
    pub start: i64,
    pub word: MorphismWord,
}

impl QWord {
    pub fn target_power(&self, p: &GroupoidPresentation) -> i64 {
        self.start - 2 * eps_of(p, &self.word)
    }

    /// The `Z`-action on powers.
    pub fn shifted(&self, k: i64) -> QWord {
        QWord {
            start: self.start + k,
            word: self.word.clone(),
        }
    }

    /// Running powers: the source power of each letter.
    pub fn running_powers(&self, p: &GroupoidPresentation) -> Vec<i64> {
        let mut at = self.start;
        let mut out = Vec::with_capacity(self.word.len());
        for &(s, e) in &self.word.letters {
            out.push(at);
            at -= 2 * e as i64 * p.morphisms[s].twist;
        }
        out
    }

    pub fn inverse(&self, p: &GroupoidPresentation) -> QWord {
        QWord {
            start: self.target_power(p),
            word: self.word.inverse(),
        }
    }
}

/// `q^i w` in the deformed groupoid.
pub fn deform(
    p: &GroupoidPresentation,
    w: &MorphismWord,
    start_object: &str,
    i: i64,
) -> Result<QWord, JonesqError> {
    p.target_from(start_object, w)?;
    Ok(QWord {
        start: i,
        word: w.clone(),
    })
}

/// `u ◇ v`: traverse `v`, then `u`. The power at the target of `v` must
/// equal the source power of `u`.
pub fn compose(p: &GroupoidPresentation, u: &QWord, v: &QWord) -> Result<QWord, JonesqError> {
    let t = v.target_power(p);
    if t != u.start {
        return Err(if (t - u.start).rem_euclid(2) == 1 {
            JonesqError::Parity(t, u.start)
        } else {
            JonesqError::Mismatch(t, u.start)
        });
    }
    let word = v.word.then(&u.word);
    Ok(QWord {
        start: v.start,
        word,
    })
}

/// `i_q`, built letter by letter from `i_q(u ∘ v) = q^(-2ε(v)) u ◇ q^0 v`.
pub fn i_q(p: &GroupoidPresentation, w: &MorphismWord) -> Result<QWord, JonesqError> {
    let mut acc = QWord {
        start: 0,
        word: MorphismWord::identity(),
    };
    for &(s, e) in &w.letters {
        let letter = QWord {
            start: 0,
            word: MorphismWord {
                letters: vec![(s, e)],
            },
        };
        let k = -2 * eps_of(p, &acc.word);
        acc = compose(p, &letter.shifted(k), &acc)?;
    }
    Ok(acc)
}

/// `p_q`: forget the powers.
pub fn p_q(w: &QWord) -> MorphismWord {
    w.word.clone()
}

/// Normalization of `𝔞_q(q^0 s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `𝔞_q(q^0 s) = 𝔞(s)`.
    Source,
    /// `𝔞_q(q^0 s) = q^(-ε(s)) 𝔞(s)`, the value halfway between source
    /// and target powers.
    Midpoint,
}

/// Linear combinations of the symbols `𝔞(s)`, keyed by morphism name.
pub type QValue = Expansion<String, Poly>;

fn term(p: &GroupoidPresentation, s: usize, c: Poly) -> QValue {
    QValue::single(p.morphisms[s].name.clone(), c)
}

/// The closed formula `Σ ε_j q^(-ε_j ε(s_j)) 𝔞(s_j)`.
pub fn a_q_eval(p: &GroupoidPresentation, w: &MorphismWord) -> QValue {
    let mut out = QValue::zero();
    for &(s, e) in &w.letters {
        let t = p.morphisms[s].twist;
        out.add_assign(&term(
            p,
            s,
            Poly::monomial(e as i64, Exponent::q(-(e as i64 * t) as i32)),
        ));
    }
    out
}

/// `𝔞_q` on a single deformed letter `q^k s^e`, by equivariance and
/// `(q^0 s)^-1 = q^(-2ε(s)) s^-1`.
fn a_q_letter(p: &GroupoidPresentation, k: i64, s: usize, e: i8, norm: Normalization) -> QValue {
    let t = p.morphisms[s].twist;
    let base = match norm {
        Normalization::Source => 0,
        Normalization::Midpoint => -t,
    };
    // q^0 (s^-1) = q^(2ε(s)) (q^0 s)^-1 and a functor sends inverses to negatives.
    let (sign, power) = if e > 0 {
        (1, k + base)
    } else {
        (-1, k + 2 * t + base)
    };
    term(p, s, Poly::monomial(sign, Exponent::q(power as i32)))
}

/// Step-by-step evaluation of `𝔞_q(i_q(w))` along the running powers.
pub fn a_q_functorial(
    p: &GroupoidPresentation,
    w: &MorphismWord,
    norm: Normalization,
) -> Result<QValue, JonesqError> {
    let qw = i_q(p, w)?;
    let mut out = QValue::zero();
    for (k, &(s, e)) in qw.running_powers(p).into_iter().zip(&qw.word.letters) {
        out.add_assign(&a_q_letter(p, k, s, e, norm));
    }
    Ok(out)
}

/// The closed formula with running powers restored:
/// `Σ ε_j q^(P_(j-1) - ε_j ε(s_j)) 𝔞(s_j)` with `P_j = -2 Σ_(k<=j) ε_k ε(s_k)`.
pub fn a_q_running(p: &GroupoidPresentation, w: &MorphismWord) -> QValue {
    let mut out = QValue::zero();
    let mut running = 0i64;
    for &(s, e) in &w.letters {
        let t = p.morphisms[s].twist;
        let te = e as i64 * t;
        out.add_assign(&term(
            p,
            s,
            Poly::monomial(e as i64, Exponent::q((running - te) as i32)),
        ));
        running -= 2 * te;
    }
    out
}

/// A random reduced composable word of length at most `len` from `start`.
pub fn random_word(
    p: &GroupoidPresentation,
    start: &str,
    len: usize,
    rng: &mut impl Rng,
) -> MorphismWord {
    let mut at = start.to_string();
    let mut w = MorphismWord::identity();
    for _ in 0..len {
        let steps: Vec<(usize, i8)> = p
            .morphisms
            .iter()
            .enumerate()
            .flat_map(|(k, m)| {
                let mut v = Vec::new();
                if m.source == at {
                    v.push((k, 1));
                }
                if m.target == at {
                    v.push((k, -1));
                }
                v
            })
            .filter(|&(k, e)| w.letters.last() != Some(&(k, -e)))
            .collect();
        let Some(&(k, e)) = steps.choose(rng) else {
            break;
        };
        at = if e > 0 {
            p.morphisms[k].target.clone()
        } else {
            p.morphisms[k].source.clone()
        };
        w.letters.push((k, e));
    }
    w
}

/// Number of kinks (signed) to append to `u` so that `q^i u` ends at a
/// power in `{0, 1}`, given kinks of twist `1`.
pub fn kink_normalize(eps_u: i64, i: i64) -> i64 {
    (i - 2 * eps_u).div_euclid(2)
}

/// Signed count of crossing switches: `+1` for a switch from negative to
/// positive.
pub fn delta_prime(l: &TransversalLoop) -> Result<i64, JonesqError> {
    l.validate().map_err(|e| JonesqError::Loop(e.to_string()))?;
    Ok(l.events
        .iter()
        .map(|e| {
            if let Event::Switch { sign, .. } = e {
                *sign as i64
            } else {
                0
            }
        })
        .sum())
}

/// Monodromy `q^(-2δ')` of the Jones local system.
pub fn jones_monodromy(l: &TransversalLoop) -> Result<Poly, JonesqError> {
    Ok(Poly::q_pow(-2 * delta_prime(l)? as i32))
}

impl fmt::Display for QWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{} {}", self.start, self.word)
    }
}
