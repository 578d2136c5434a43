//! Text form of polynomials: `c*q^a*v^b*z^c*h^d*u^e`, unit exponents and
//! unit coefficients omitted, terms in the fixed exponent order.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{Exponent, Poly};
use super::CoeffError;

fn format_factors(e: &Exponent) -> Vec<String> {
    let mut out = Vec::new();
    for (name, k) in [("q", e.q), ("v", e.v), ("z", e.z), ("h", e.h), ("u", e.u)] {
        match k {
            0 => {}
            1 => out.push(name.to_string()),
            _ => out.push(format!("{}^{}", name, k)),
        }
    }
    out
}

fn format_unsigned_term(c: &BigInt, e: &Exponent) -> String {
    let factors = format_factors(e);
    let mag = c.abs();
    if factors.is_empty() {
        mag.to_string()
    } else if mag.is_one() {
        factors.join("*")
    } else {
        format!("{}*{}", mag, factors.join("*"))
    }
}

pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (e, c)) in p.iter().enumerate() {
        let body = format_unsigned_term(c, e);
        match (i, c.is_negative()) {
            (0, false) => s.push_str(&body),
            (0, true) => {
                s.push('-');
                s.push_str(&body);
            }
            (_, false) => {
                s.push_str(" + ");
                s.push_str(&body);
            }
            (_, true) => {
                s.push_str(" - ");
                s.push_str(&body);
            }
        }
    }
    s
}

pub fn parse_poly(text: &str) -> Result<Poly, CoeffError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(CoeffError::Parse("empty polynomial".into()));
    }
    let bytes: Vec<char> = compact.chars().collect();
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut negative = false;
    let mut cur = String::new();
    for (i, &ch) in bytes.iter().enumerate() {
        let is_sep = (ch == '+' || ch == '-') && (i == 0 || bytes[i - 1] != '^');
        if is_sep {
            if !cur.is_empty() {
                pieces.push((negative, std::mem::take(&mut cur)));
            } else if i != 0 {
                return Err(CoeffError::Parse(format!(
                    "dangling sign at {} in {:?}",
                    i, text
                )));
            }
            negative = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(CoeffError::Parse(format!("trailing sign in {:?}", text)));
    }
    pieces.push((negative, cur));

    let mut p = Poly::zero();
    for (neg, body) in pieces {
        let (c, e) = parse_term(&body)?;
        p.add_term(if neg { -c } else { c }, e);
    }
    Ok(p)
}

fn parse_term(body: &str) -> Result<(BigInt, Exponent), CoeffError> {
    let mut coeff = BigInt::one();
    let mut exp = Exponent::ONE;
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(CoeffError::Parse(format!("empty factor in {:?}", body)));
        }
        let first = factor.chars().next().unwrap();
        if first.is_ascii_digit() {
            let n: BigInt = factor
                .parse()
                .map_err(|_| CoeffError::Parse(format!("bad integer {:?}", factor)))?;
            coeff *= n;
            continue;
        }
        let (name, power) = match factor.split_once('^') {
            Some((n, k)) => (
                n,
                k.parse::<i32>()
                    .map_err(|_| CoeffError::Parse(format!("bad exponent in {:?}", factor)))?,
            ),
            None => (factor, 1),
        };
        match name {
            "q" => exp.q += power,
            "v" => exp.v += power,
            "z" => exp.z += power,
            "h" => exp.h += power,
            "u" => exp.u += power,
            _ => return Err(CoeffError::Parse(format!("unknown variable {:?}", name))),
        }
    }
    if coeff.is_zero() {
        return Ok((coeff, Exponent::ONE));
    }
    Ok((coeff, exp))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_in_term_order() {
        let p = parse_poly("q^3*h*u^2 + q^2*u + q^2*h*z*u").unwrap();
        assert_eq!(format_poly(&p), "q^2*u + q^2*z*h*u + q^3*h*u^2");
    }

    #[test]
    fn negative_exponents_and_coefficients() {
        let p = parse_poly("-q^-1*h + q^-2").unwrap();
        assert_eq!(format_poly(&p), "q^-2 - q^-1*h");
        assert_eq!(parse_poly(&format_poly(&p)).unwrap(), p);
        let p = parse_poly("-3*q - 2").unwrap();
        assert_eq!(format_poly(&p), "-2 - 3*q");
    }

    #[test]
    fn zero_and_errors() {
        assert!(parse_poly("0").unwrap().is_zero());
        assert_eq!(format_poly(&Poly::zero()), "0");
        assert!(parse_poly("q +").is_err());
        assert!(parse_poly("w^2").is_err());
        assert!(parse_poly("").is_err());
    }
}
