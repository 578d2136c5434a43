use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::poly::{Exponent, Poly};
use super::rees::{EmbedTarget, ReesElement};
use super::CoeffError;

/// Truncated power series `c_0 + c_1 h + ... + c_N h^N`.
///
/// Truncations of Rees elements have `h`- and `u`-free coefficients. Series
/// built by the singular expansion keep `u` as a formal split-unknot symbol.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedSeries {
    order: usize,
    #[serde(with = "poly_vec")]
    coeffs: Vec<Poly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            order,
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    pub fn constant(order: usize, c: Poly) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Builds a series from a polynomial whose `h` exponents are the series
    /// degrees. Terms above `order` are dropped.
    pub fn from_h_poly(order: usize, p: &Poly) -> Result<Self, CoeffError> {
        let mut s = Self::zero(order);
        for (e, c) in p.iter() {
            if e.h < 0 {
                return Err(CoeffError::NotTruncatable);
            }
            let d = e.h as usize;
            if d <= order {
                s.coeffs[d].add_term(c.clone(), Exponent { h: 0, ..*e });
            }
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// The series as a polynomial in `h`.
    pub fn to_h_poly(&self) -> Poly {
        let mut out = Poly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            out += &c.shift(Exponent::h(i as i32));
        }
        out
    }

    fn same_order(&self, o: &Self) -> Result<(), CoeffError> {
        if self.order == o.order {
            Ok(())
        } else {
            Err(CoeffError::OrderMismatch(self.order, o.order))
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, CoeffError> {
        self.same_order(o)?;
        Ok(TruncatedSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, CoeffError> {
        self.same_order(o)?;
        Ok(TruncatedSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self, CoeffError> {
        self.same_order(o)?;
        let mut out = Self::zero(self.order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(self.order + 1 - i) {
                out.coeffs[i + j] += &(a * b);
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by an `h`-free polynomial.
    pub fn scale_poly(&self, c: &Poly) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Multiplies by `h^k`, dropping what falls off the end.
    pub fn shift_h(&self, k: usize) -> Self {
        let mut out = Self::zero(self.order);
        for i in 0..=self.order {
            if i + k <= self.order {
                out.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        out
    }

    /// Drops degrees above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let mut out = Self::zero(order);
        for (i, c) in self.coeffs.iter().enumerate().take(order + 1) {
            out.coeffs[i] = c.clone();
        }
        out
    }
}

/// Embeds `x` into the ring with `h` inverted and keeps degrees `0..=n`.
pub fn truncate_h(x: &ReesElement, n: usize) -> Result<TruncatedSeries, CoeffError> {
    TruncatedSeries::from_h_poly(n, &x.embed(EmbedTarget::LaurentHInverted))
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series{:?}", self.coeffs)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

mod poly_vec {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::super::text::{format_poly, parse_poly};
    use super::Poly;

    pub fn serialize<S: Serializer>(v: &[Poly], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_poly))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Poly>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|t| parse_poly(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::rees::Variant;
    use super::super::text::parse_poly;
    use super::*;

    fn r(s: &str) -> ReesElement {
        ReesElement::parse(Variant::Oriented, s).unwrap()
    }

    #[test]
    fn degree_filter() {
        let s = truncate_h(&r("q + h^2*z"), 1).unwrap();
        assert_eq!(s.coeffs(), &[parse_poly("q").unwrap(), Poly::zero()]);
    }

    #[test]
    fn u_times_h_truncates() {
        let s = truncate_h(&(&r("u") * &r("h")), 2).unwrap();
        assert_eq!(
            s.coeffs(),
            &[parse_poly("q^-1 - q").unwrap(), Poly::zero(), Poly::zero()]
        );
    }

    #[test]
    fn bare_u_is_not_truncatable() {
        assert_eq!(truncate_h(&r("u"), 2), Err(CoeffError::NotTruncatable));
    }

    #[test]
    fn truncation_is_multiplicative() {
        let a = r("q + h + z*h^2");
        let b = r("q^-2 - h*z + 3*h^3");
        let n = 3;
        let lhs = truncate_h(&(&a * &b), n).unwrap();
        let rhs = truncate_h(&a, n)
            .unwrap()
            .mul(&truncate_h(&b, n).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn serde_round_trip() {
        let s = truncate_h(&r("q + h*z - 2*h^2"), 2).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        let back: TruncatedSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(s, back);
    }
}
