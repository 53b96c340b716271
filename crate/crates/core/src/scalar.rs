//! Exact rational scalars used for coefficients and exponents.
//!
//! Irrational reals (values of `ln`, `exp`, `sin`, `cos` at rational points)
//! are rounded to the nearest rational with a bounded denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Scalar = BigRational;

/// Relative tolerance used when rounding an `f64` to a rational.
const ROUNDING_TOLERANCE: f64 = 1e-15;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(s: &Scalar) -> f64 {
    if let Some(v) = s.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Fallback for huge numerators/denominators.
    let n = s.numer().to_f64().unwrap_or(f64::NAN);
    let d = s.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Closest rational to `x` found by continued-fraction expansion, stopping
/// once the relative error drops below [`ROUNDING_TOLERANCE`].
pub fn approx_f64(x: f64) -> Option<Scalar> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some(Scalar::zero());
    }
    if x.abs() >= 1e15 || x.fract() == 0.0 {
        return Scalar::from_float(x);
    }
    let target = x.abs();
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    let mut rest = target;
    let mut best = Scalar::from_float(target)?;
    for _ in 0..64 {
        let a = rest.floor();
        let a_big = BigInt::from(a as i64);
        let h_next = &a_big * &h + &h_prev;
        let k_next = &a_big * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        let candidate = Scalar::new(h.clone(), k.clone());
        let err = (to_f64(&candidate) - target).abs();
        best = candidate;
        if err <= ROUNDING_TOLERANCE * target {
            break;
        }
        let frac = rest - a;
        if frac <= 0.0 {
            break;
        }
        rest = 1.0 / frac;
        if !rest.is_finite() {
            break;
        }
    }
    Some(if x < 0.0 { -best } else { best })
}

/// Parse a decimal literal (`12`, `0.001`, `2.5e-3`) exactly.
pub fn parse_decimal(src: &str) -> Option<Scalar> {
    let src = src.trim();
    let (mantissa, exponent) = match src.find(['e', 'E']) {
        Some(i) => (&src[..i], src[i + 1..].parse::<i32>().ok()?),
        None => (src, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Scalar::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Scalar::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(if negative { -value } else { value })
}

/// True when the denominator has no prime factors other than 2 and 5.
fn terminates_in_decimal(s: &Scalar) -> bool {
    let mut d = s.denom().clone();
    for p in [2u32, 5] {
        let p = BigInt::from(p);
        while d.is_multiple_of(&p) {
            d /= &p;
        }
    }
    d.is_one()
}

/// Render a rational as a short decimal when exact, otherwise as `p/q`.
pub fn render(s: &Scalar) -> String {
    if s.is_integer() {
        return s.numer().to_string();
    }
    if terminates_in_decimal(s) && s.denom().bits() <= 40 {
        let mut d = s.denom().clone();
        let mut places = 0usize;
        let ten = BigInt::from(10);
        while !(num_traits::pow(ten.clone(), places) % &d).is_zero() {
            places += 1;
        }
        d = num_traits::pow(ten, places) / d;
        let scaled = (s.numer() * d).abs().to_string();
        let (int_part, frac) = if scaled.len() > places {
            scaled.split_at(scaled.len() - places)
        } else {
            ("", scaled.as_str())
        };
        let frac = format!("{frac:0>places$}");
        let int_part = if int_part.is_empty() { "0" } else { int_part };
        let sign = if s.is_negative() { "-" } else { "" };
        return format!("{sign}{int_part}.{frac}");
    }
    format!("{}/{}", s.numer(), s.denom())
}

pub fn is_positive(s: &Scalar) -> bool {
    s.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(parse_decimal("0.001"), Some(ratio(1, 1000)));
        assert_eq!(parse_decimal("-2.5"), Some(ratio(-5, 2)));
        assert_eq!(parse_decimal("1e3"), Some(int(1000)));
        assert_eq!(parse_decimal("2.5e-1"), Some(ratio(1, 4)));
        assert_eq!(parse_decimal("."), None);
        assert_eq!(parse_decimal("1x"), None);
    }

    #[test]
    fn rendering() {
        assert_eq!(render(&int(3)), "3");
        assert_eq!(render(&ratio(1, 2)), "0.5");
        assert_eq!(render(&ratio(-1, 1000)), "-0.001");
        assert_eq!(render(&ratio(1, 3)), "1/3");
    }

    #[test]
    fn rounding_recovers_simple_fractions() {
        assert_eq!(approx_f64(0.5), Some(ratio(1, 2)));
        assert_eq!(approx_f64(1.0 / 3.0), Some(ratio(1, 3)));
        let e = approx_f64(std::f64::consts::E).unwrap();
        assert!((to_f64(&e) - std::f64::consts::E).abs() < 1e-14);
        assert!(approx_f64(f64::NAN).is_none());
    }
}
