use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exponent vector of a monomial `q^q v^v z^z h^h u^u`.
///
/// Field order fixes the term order: lexicographic on `(h, u, z, q, v)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    pub h: i32,
    pub u: i32,
    pub z: i32,
    pub q: i32,
    pub v: i32,
}

impl Exponent {
    pub const ONE: Exponent = Exponent {
        h: 0,
        u: 0,
        z: 0,
        q: 0,
        v: 0,
    };

    pub fn q(e: i32) -> Self {
        Exponent { q: e, ..Self::ONE }
    }

    pub fn v(e: i32) -> Self {
        Exponent { v: e, ..Self::ONE }
    }

    pub fn z(e: i32) -> Self {
        Exponent { z: e, ..Self::ONE }
    }

    pub fn h(e: i32) -> Self {
        Exponent { h: e, ..Self::ONE }
    }

    pub fn u(e: i32) -> Self {
        Exponent { u: e, ..Self::ONE }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }
}

impl Add for Exponent {
    type Output = Exponent;

    fn add(self, o: Exponent) -> Exponent {
        Exponent {
            h: self.h + o.h,
            u: self.u + o.u,
            z: self.z + o.z,
            q: self.q + o.q,
            v: self.v + o.v,
        }
    }
}

impl Sub for Exponent {
    type Output = Exponent;

    fn sub(self, o: Exponent) -> Exponent {
        Exponent {
            h: self.h - o.h,
            u: self.u - o.u,
            z: self.z - o.z,
            q: self.q - o.q,
            v: self.v - o.v,
        }
    }
}

/// One signed term of a Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTerm {
    pub coeff: BigInt,
    pub exp: Exponent,
}

/// Sparse Laurent polynomial in `q, v, z, h, u` with arbitrary precision
/// integer coefficients. No relations are imposed; see [`super::ReesElement`]
/// for the quotient ring.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Exponent, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(1, Exponent::ONE)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, Exponent::ONE)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: Exponent) -> Self {
        let mut p = Poly::zero();
        p.add_term(c.into(), exp);
        p
    }

    pub fn q_pow(e: i32) -> Self {
        Self::monomial(1, Exponent::q(e))
    }

    pub fn v_pow(e: i32) -> Self {
        Self::monomial(1, Exponent::v(e))
    }

    pub fn z() -> Self {
        Self::monomial(1, Exponent::z(1))
    }

    pub fn h() -> Self {
        Self::monomial(1, Exponent::h(1))
    }

    pub fn u() -> Self {
        Self::monomial(1, Exponent::u(1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Exponent::ONE)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, c: BigInt, exp: Exponent) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: &Exponent) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> impl Iterator<Item = LaurentTerm> + '_ {
        self.terms.iter().map(|(e, c)| LaurentTerm {
            coeff: c.clone(),
            exp: *e,
        })
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigInt, Exponent)>) -> Self {
        let mut p = Poly::zero();
        for (c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Multiplies by a monomial.
    pub fn shift(&self, by: Exponent) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (*e + by, k.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Minimum exponent of `h` over all terms, or `None` for zero.
    pub fn min_h(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.h).min()
    }

    pub fn max_abs_exponent(&self) -> i32 {
        self.terms
            .keys()
            .map(|e| {
                e.q.abs()
                    .max(e.v.abs())
                    .max(e.z.abs())
                    .max(e.h.abs())
                    .max(e.u.abs())
            })
            .max()
            .unwrap_or(0)
    }

    /// Substitutes a polynomial for every occurrence of one variable.
    /// Negative powers of the variable are only allowed when `value` is a
    /// unit monomial.
    pub fn substitute(&self, var: Var, value: &Poly) -> Poly {
        let mut out = Poly::zero();
        let inverse = unit_inverse(value);
        for (e, c) in &self.terms {
            let k = var.get(e);
            let mut rest = *e;
            var.set(&mut rest, 0);
            let factor = if k >= 0 {
                value.pow(k as u32)
            } else {
                inverse
                    .as_ref()
                    .expect("negative power substituted by a non-unit")
                    .pow((-k) as u32)
            };
            out += &factor.shift(rest).scale(c);
        }
        out
    }

    /// Sets `q = 1` (and leaves the other variables alone).
    pub fn at_q_one(&self) -> Poly {
        self.substitute(Var::Q, &Poly::one())
    }
}

fn unit_inverse(p: &Poly) -> Option<Poly> {
    if p.terms.len() != 1 {
        return None;
    }
    let (e, c) = p.terms.iter().next().unwrap();
    if c.abs() != BigInt::one() {
        return None;
    }
    Some(Poly::monomial(c.clone(), Exponent::ONE - *e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Q,
    V,
    Z,
    H,
    U,
}

impl Var {
    fn get(self, e: &Exponent) -> i32 {
        match self {
            Var::Q => e.q,
            Var::V => e.v,
            Var::Z => e.z,
            Var::H => e.h,
            Var::U => e.u,
        }
    }

    fn set(self, e: &mut Exponent, k: i32) {
        match self {
            Var::Q => e.q = k,
            Var::V => e.v = k,
            Var::Z => e.z = k,
            Var::H => e.h = k,
            Var::U => e.u = k,
        }
    }
}

impl<'a> AddAssign<&'a Poly> for Poly {
    fn add_assign(&mut self, o: &'a Poly) {
        for (e, c) in &o.terms {
            self.add_term(c.clone(), *e);
        }
    }
}

impl<'b> Add<&'b Poly> for &Poly {
    type Output = Poly;

    fn add(self, o: &'b Poly) -> Poly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl<'b> Sub<&'b Poly> for &Poly {
    type Output = Poly;

    fn sub(self, o: &'b Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(-c, *e);
        }
        r
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl<'b> Mul<&'b Poly> for &Poly {
    type Output = Poly;

    fn mul(self, o: &'b Poly) -> Poly {
        let mut r = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(c1 * c2, *e1 + *e2);
            }
        }
        r
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;

    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;

    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_poly(self))
    }
}
