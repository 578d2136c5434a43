use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::poly::{Exponent, Poly, Var};
use super::CoeffError;

/// Which coefficient ring an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `Z[q^±, z, h, u] / (hu - (q^-1 - q))`
    Oriented,
    /// `Z[q^±, v^±, z, h, u] / (hu - (v^-1 - v))`
    Framed,
}

impl Variant {
    /// The value of `h*u`.
    pub fn vacuum(self) -> Poly {
        match self {
            Variant::Oriented => &Poly::q_pow(-1) - &Poly::q_pow(1),
            Variant::Framed => &Poly::v_pow(-1) - &Poly::v_pow(1),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Oriented => "oriented",
            Variant::Framed => "framed",
        })
    }
}

/// Target of [`ReesElement::embed`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbedTarget {
    /// `u -> vacuum * h^-1` in the Laurent ring with `h` inverted.
    LaurentHInverted,
    /// `z -> h`, other variables untouched, no reduction.
    ZToH,
}

/// Element of the Rees ring in normal form: no term carries both `h` and `u`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReesElement {
    variant: Variant,
    poly: Poly,
}

impl ReesElement {
    pub fn zero(variant: Variant) -> Self {
        ReesElement {
            variant,
            poly: Poly::zero(),
        }
    }

    pub fn one(variant: Variant) -> Self {
        ReesElement {
            variant,
            poly: Poly::one(),
        }
    }

    /// Rewrites `h^a u^b` to `vacuum^m h^(a-m) u^(b-m)` with `m = min(a, b)`.
    ///
    /// The input must have nonnegative `z, h, u` exponents, and no `v` in the
    /// oriented variant; see [`ReesElement::try_new`] for the checked form.
    pub fn normalize(variant: Variant, raw: &Poly) -> Self {
        let vac = variant.vacuum();
        let mut out = Poly::zero();
        for (e, c) in raw.iter() {
            let m = e.h.min(e.u);
            if m <= 0 {
                out.add_term(c.clone(), *e);
                continue;
            }
            let rest = Exponent {
                h: e.h - m,
                u: e.u - m,
                ..*e
            };
            out += &vac.pow(m as u32).shift(rest).scale(c);
        }
        ReesElement { variant, poly: out }
    }

    pub fn try_new(variant: Variant, raw: Poly) -> Result<Self, CoeffError> {
        for (e, _) in raw.iter() {
            if e.z < 0 || e.h < 0 || e.u < 0 {
                return Err(CoeffError::NegativeExponent(super::text::format_poly(&raw)));
            }
            if variant == Variant::Oriented && e.v != 0 {
                return Err(CoeffError::VariantMismatch);
            }
        }
        Ok(Self::normalize(variant, &raw))
    }

    pub fn parse(variant: Variant, text: &str) -> Result<Self, CoeffError> {
        Self::try_new(variant, super::text::parse_poly(text)?)
    }

    pub fn from_poly(variant: Variant, raw: Poly) -> Self {
        Self::try_new(variant, raw).expect("polynomial outside the Rees ring")
    }

    pub fn q_pow(variant: Variant, e: i32) -> Self {
        ReesElement {
            variant,
            poly: Poly::q_pow(e),
        }
    }

    pub fn monomial(variant: Variant, c: impl Into<BigInt>, exp: Exponent) -> Self {
        Self::from_poly(variant, Poly::monomial(c, exp))
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.poly.is_one()
    }

    fn check(&self, other: &ReesElement) -> Result<(), CoeffError> {
        if self.variant == other.variant {
            Ok(())
        } else {
            Err(CoeffError::VariantMismatch)
        }
    }

    pub fn checked_add(&self, other: &ReesElement) -> Result<ReesElement, CoeffError> {
        self.check(other)?;
        Ok(ReesElement {
            variant: self.variant,
            poly: &self.poly + &other.poly,
        })
    }

    pub fn checked_sub(&self, other: &ReesElement) -> Result<ReesElement, CoeffError> {
        self.check(other)?;
        Ok(ReesElement {
            variant: self.variant,
            poly: &self.poly - &other.poly,
        })
    }

    pub fn checked_mul(&self, other: &ReesElement) -> Result<ReesElement, CoeffError> {
        self.check(other)?;
        Ok(Self::normalize(self.variant, &(&self.poly * &other.poly)))
    }

    pub fn arith(a: &ReesElement, b: &ReesElement, op: ArithOp) -> Result<ReesElement, CoeffError> {
        match op {
            ArithOp::Add => a.checked_add(b),
            ArithOp::Mul => a.checked_mul(b),
            ArithOp::Neg => Ok(-a),
        }
    }

    pub fn scale(&self, c: &BigInt) -> ReesElement {
        ReesElement {
            variant: self.variant,
            poly: self.poly.scale(c),
        }
    }

    /// Multiplies by `q^e`.
    pub fn shift_q(&self, e: i32) -> ReesElement {
        ReesElement {
            variant: self.variant,
            poly: self.poly.shift(Exponent::q(e)),
        }
    }

    pub fn pow(&self, n: u32) -> ReesElement {
        let mut acc = Self::one(self.variant);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn embed(&self, target: EmbedTarget) -> Poly {
        match target {
            EmbedTarget::LaurentHInverted => {
                let u = self.variant.vacuum().shift(Exponent::h(-1));
                self.poly.substitute(Var::U, &u)
            }
            EmbedTarget::ZToH => self.poly.substitute(Var::Z, &Poly::h()),
        }
    }

    /// Substitutes a polynomial (in the same ring) for one variable and
    /// renormalizes.
    pub fn substitute(&self, var: Var, value: &Poly) -> ReesElement {
        Self::normalize(self.variant, &self.poly.substitute(var, value))
    }

    /// Sets `v = 1`. The image satisfies `hu = 0`.
    pub fn at_v_one(&self) -> Poly {
        self.poly.substitute(Var::V, &Poly::one())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
}

impl<'b> Add<&'b ReesElement> for &ReesElement {
    type Output = ReesElement;

    fn add(self, o: &'b ReesElement) -> ReesElement {
        self.checked_add(o).expect("Rees variant mismatch")
    }
}

impl<'b> Sub<&'b ReesElement> for &ReesElement {
    type Output = ReesElement;

    fn sub(self, o: &'b ReesElement) -> ReesElement {
        self.checked_sub(o).expect("Rees variant mismatch")
    }
}

impl<'b> Mul<&'b ReesElement> for &ReesElement {
    type Output = ReesElement;

    fn mul(self, o: &'b ReesElement) -> ReesElement {
        self.checked_mul(o).expect("Rees variant mismatch")
    }
}

impl Neg for &ReesElement {
    type Output = ReesElement;

    fn neg(self) -> ReesElement {
        ReesElement {
            variant: self.variant,
            poly: -&self.poly,
        }
    }
}

impl Add for ReesElement {
    type Output = ReesElement;

    fn add(self, o: ReesElement) -> ReesElement {
        &self + &o
    }
}

impl Sub for ReesElement {
    type Output = ReesElement;

    fn sub(self, o: ReesElement) -> ReesElement {
        &self - &o
    }
}

impl Mul for ReesElement {
    type Output = ReesElement;

    fn mul(self, o: ReesElement) -> ReesElement {
        &self * &o
    }
}

impl Neg for ReesElement {
    type Output = ReesElement;

    fn neg(self) -> ReesElement {
        -&self
    }
}

impl fmt::Debug for ReesElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rees[{}]({})", self.variant, self.poly)
    }
}

impl fmt::Display for ReesElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.poly, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        super::super::text::parse_poly(s).unwrap()
    }

    fn r(s: &str) -> ReesElement {
        ReesElement::parse(Variant::Oriented, s).unwrap()
    }

    #[test]
    fn h_times_u_is_vacuum() {
        let hu = &r("h") * &r("u");
        assert_eq!(hu.poly(), &p("q^-1 - q"));
        let h2u = &(&r("h") * &r("h")) * &r("u");
        assert_eq!(h2u.poly(), &p("q^-1*h - q*h"));
    }

    #[test]
    fn normalize_examples() {
        let x = ReesElement::normalize(Variant::Oriented, &p("3*h*u"));
        assert_eq!(x.poly(), &p("3*q^-1 - 3*q"));
        let x = ReesElement::normalize(Variant::Oriented, &p("2*z"));
        assert_eq!(x.poly(), &p("2*z"));
        let x = ReesElement::normalize(Variant::Framed, &p("h*u"));
        assert_eq!(x.poly(), &p("v^-1 - v"));
    }

    #[test]
    fn additive_inverse_is_empty() {
        let x = r("q^2*u + 3*z*h");
        assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn variant_mismatch_rejected() {
        let a = ReesElement::one(Variant::Oriented);
        let b = ReesElement::one(Variant::Framed);
        assert_eq!(
            ReesElement::arith(&a, &b, ArithOp::Add),
            Err(CoeffError::VariantMismatch)
        );
        assert!(ReesElement::parse(Variant::Oriented, "v").is_err());
        assert!(ReesElement::parse(Variant::Oriented, "h^-1").is_err());
    }

    #[test]
    fn embedding() {
        assert_eq!(
            r("u").embed(EmbedTarget::LaurentHInverted),
            p("q^-1*h^-1 - q*h^-1")
        );
        assert_eq!(r("z*u").embed(EmbedTarget::ZToH), p("h*u"));
        let h = r("h");
        let u = r("u");
        assert_eq!(
            (&h * &u).embed(EmbedTarget::LaurentHInverted),
            &h.embed(EmbedTarget::LaurentHInverted) * &u.embed(EmbedTarget::LaurentHInverted)
        );
    }

    #[test]
    fn relation_vanishes() {
        let x = &(&r("h") * &r("u")) - &r("q^-1 - q");
        assert!(x.is_zero());
    }
}
