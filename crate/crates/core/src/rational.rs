use num::BigInt;

/// Exact rational number: arbitrary-precision, always in lowest terms with a
/// positive denominator. Displays as `p/q`, with `/q` omitted when `q == 1`,
/// and parses the same format back.
pub type Rational = num::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_omits_unit_denominator() {
        assert_eq!(rat(5).to_string(), "5");
        assert_eq!(rat(-3).to_string(), "-3");
        assert_eq!(ratio(3, 2).to_string(), "3/2");
        assert_eq!(ratio(-4, 6).to_string(), "-2/3");
    }

    #[test]
    fn parses_own_format() {
        for s in ["0", "7", "-7", "3/2", "-11/4"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
    }

    #[test]
    fn always_reduced_with_positive_denominator() {
        let r = ratio(6, -4);
        assert_eq!(r, ratio(-3, 2));
        assert!(r.denom() > &BigInt::from(0));
    }
}
