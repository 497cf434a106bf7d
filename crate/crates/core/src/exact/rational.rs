//! Rational scalars and vectors.
//!
//! Scalars are `num_rational::BigRational`. Text form is `p/q`, or `p` when
//! `q = 1`; decimal and exponent notation are rejected so that scene files
//! never smuggle in floats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

/// Parse `p`, `-p` or `p/q`. Whitespace around the literal is tolerated.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let ok = !t.is_empty()
        && t.chars().all(|c| c.is_ascii_digit() || c == '-' || c == '+' || c == '/');
    if !ok {
        return Err(Error::BadRational(s.to_string()));
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (t, None),
    };
    let parse_int = |x: &str| -> Result<BigInt> {
        x.parse::<BigInt>().map_err(|_| Error::BadRational(s.to_string()))
    };
    let n = parse_int(num)?;
    let d = match den {
        Some(b) => parse_int(b)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::BadRational(s.to_string()));
    }
    Ok(Rational::new(n, d))
}

pub fn fmt_rational(x: &Rational) -> String {
    // Ratio's Display already omits a unit denominator.
    x.to_string()
}

pub fn fmt_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn sign(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Scale so the first nonzero entry is `1`. Zero vectors are returned as is.
pub fn normalize_leading(v: &[Rational]) -> Vec<Rational> {
    match v.iter().find(|x| !x.is_zero()) {
        None => v.to_vec(),
        Some(lead) => {
            let lead = lead.clone();
            v.iter().map(|x| x / &lead).collect()
        }
    }
}

/// Scale by a positive factor to a primitive integer vector.
pub fn primitive_positive(v: &[Rational]) -> Vec<Rational> {
    use num_integer::Integer;
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

pub fn scale(v: &[Rational], c: &Rational) -> Vec<Rational> {
    v.iter().map(|x| x * c).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "3", "-7", "1/2", "-3/4", "10/5"] {
            let x = parse_rational(s).unwrap();
            let back = parse_rational(&fmt_rational(&x)).unwrap();
            assert_eq!(x, back);
        }
        assert_eq!(fmt_rational(&parse_rational("10/5").unwrap()), "2");
        assert_eq!(fmt_rational(&parse_rational("-6/4").unwrap()), "-3/2");
    }

    #[test]
    fn floats_and_junk_are_rejected() {
        for s in ["0.5", "1e3", "", "1/0", "a", "1/2/3"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn primitive_vector() {
        let v = vec![qf(1, 2), qf(-3, 4), q(0)];
        assert_eq!(primitive_positive(&v), qvec(&[2, -3, 0]));
    }
}
