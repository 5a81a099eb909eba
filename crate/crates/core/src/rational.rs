//! Exact rationals used for state values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `p/q` or an integer `p`.
pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            (!q.is_zero()).then(|| Rational::new(p, q))
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// `p/q`, or just `p` for integers.
pub fn format(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("2/4"), Some(ratio(1, 2)));
        assert_eq!(parse(" 1 "), Some(one()));
        assert_eq!(parse("-3/6"), Some(ratio(-1, 2)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
        assert_eq!(format(&ratio(2, 6)), "1/3");
        assert_eq!(format(&int(0)), "0");
    }
}
