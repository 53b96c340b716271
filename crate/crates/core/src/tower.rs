//! Signed magnitudes of the form `±exp^h(m)`.
//!
//! Height 0 holds ordinary doubles below `1e15`; each extra level stores the
//! value through one more logarithm, with the mantissa kept in
//! `[ln 1e15, 1e15)`. Ordering is decided by height first, then mantissa.

use std::cmp::Ordering;
use std::fmt;

const RAISE_AT: f64 = 1e15;
/// `ln(1e15)`; mantissas of raised values never drop below this.
const LOWER_BELOW: f64 = 34.538_776_394_910_684;
/// Relative tolerance for equality of mantissas at equal height.
pub const EQUAL_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TowerValue {
    negative: bool,
    height: u32,
    mantissa: f64,
}

impl TowerValue {
    pub fn zero() -> Self {
        TowerValue { negative: false, height: 0, mantissa: 0.0 }
    }

    /// `None` for NaN and infinities.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        Some(Self::normalized(x < 0.0, 0, x.abs()))
    }

    /// `exp^height(mantissa)`, renormalized.
    pub fn tower(height: u32, mantissa: f64) -> Self {
        Self::normalized(false, height, mantissa)
    }

    fn normalized(negative: bool, mut height: u32, mut m: f64) -> Self {
        while m >= RAISE_AT {
            m = m.ln();
            height += 1;
        }
        while height > 0 && m < LOWER_BELOW {
            m = m.exp();
            height -= 1;
        }
        let negative = negative && m != 0.0;
        TowerValue { negative, height, mantissa: m }
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn is_zero(&self) -> bool {
        self.height == 0 && self.mantissa == 0.0
    }

    /// The value as a double; infinite when out of range.
    pub fn to_f64(&self) -> f64 {
        let mut m = self.mantissa;
        for _ in 0..self.height {
            m = m.exp();
        }
        if self.negative {
            -m
        } else {
            m
        }
    }

    pub fn neg(&self) -> Self {
        Self::normalized(!self.negative, self.height, self.mantissa)
    }

    pub fn abs(&self) -> Self {
        TowerValue { negative: false, ..*self }
    }

    fn compare_magnitude(&self, other: &Self) -> Ordering {
        match self.height.cmp(&other.height) {
            Ordering::Equal => {
                let (a, b) = (self.mantissa, other.mantissa);
                if (a - b).abs() <= EQUAL_TOLERANCE * a.max(b) {
                    Ordering::Equal
                } else {
                    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
                }
            }
            o => o,
        }
    }

    /// Order with equality up to [`EQUAL_TOLERANCE`] at equal height.
    pub fn compare(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return if other.negative { Ordering::Greater } else { Ordering::Less },
            (false, true) => return if self.negative { Ordering::Less } else { Ordering::Greater },
            _ => {}
        }
        match (self.negative, other.negative) {
            (false, true) => Ordering::Greater,
            (true, false) => Ordering::Less,
            (false, false) => self.compare_magnitude(other),
            (true, true) => other.compare_magnitude(self),
        }
    }

    /// Natural log; `None` unless positive.
    pub fn ln(&self) -> Option<Self> {
        if self.negative || self.is_zero() {
            return None;
        }
        if self.height == 0 {
            return Self::from_f64(self.mantissa.ln());
        }
        Some(Self::normalized(false, self.height - 1, self.mantissa))
    }

    pub fn exp(&self) -> Self {
        if self.negative {
            return if self.height == 0 { Self::normalized(false, 0, (-self.mantissa).exp()) } else { Self::zero() };
        }
        Self::normalized(false, self.height + 1, self.mantissa)
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return *self;
        }
        if self.is_zero() {
            return *other;
        }
        if self.height == 0 && other.height == 0 {
            return Self::from_f64(self.to_f64() + other.to_f64()).unwrap_or(*self);
        }
        let (big, small) = if self.compare_magnitude(other) == Ordering::Less { (other, self) } else { (self, other) };
        let same_sign = big.negative == small.negative;
        let (lb, ls) = (big.abs().ln().expect("nonzero"), small.abs().ln().expect("nonzero"));
        if lb.height == 0 && ls.height == 0 {
            let r = (ls.to_f64() - lb.to_f64()).exp();
            let shift = if same_sign {
                r.ln_1p()
            } else if r >= 1.0 - f64::EPSILON {
                return Self::zero();
            } else {
                (-r).ln_1p()
            };
            let mag = Self::from_f64(lb.to_f64() + shift).expect("finite").exp();
            return if big.negative { mag.neg() } else { mag };
        }
        if !same_sign && big.compare_magnitude(small) == Ordering::Equal {
            return Self::zero();
        }
        *big
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.height == 0 && other.height == 0 {
            if let Some(v) = Self::from_f64(self.to_f64() * other.to_f64()) {
                return v;
            }
        }
        let l = self.abs().ln().expect("nonzero").add(&other.abs().ln().expect("nonzero"));
        let mag = l.exp();
        if self.negative != other.negative {
            mag.neg()
        } else {
            mag
        }
    }

    /// `None` when dividing by zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.height == 0 && other.height == 0 {
            if let Some(v) = Self::from_f64(self.to_f64() / other.to_f64()) {
                if v.mantissa != 0.0 {
                    return Some(v);
                }
            }
        }
        let l = self.abs().ln()?.sub(&other.abs().ln()?);
        let mag = l.exp();
        Some(if self.negative != other.negative { mag.neg() } else { mag })
    }

    pub fn scale(&self, c: f64) -> Self {
        match Self::from_f64(c) {
            Some(c) => self.mul(&c),
            None => *self,
        }
    }

    /// `|self|^r` for positive values; `None` otherwise.
    pub fn powf(&self, r: f64) -> Option<Self> {
        if self.negative {
            return None;
        }
        if self.is_zero() {
            return (r > 0.0).then(Self::zero);
        }
        if self.height == 0 {
            if let Some(v) = Self::from_f64(self.mantissa.powf(r)) {
                if v.mantissa != 0.0 {
                    return Some(v);
                }
            }
        }
        Some(self.ln()?.scale(r).exp())
    }
}

impl fmt::Display for TowerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { "-" } else { "" };
        match self.height {
            0 => write!(f, "{sign}{}", self.mantissa),
            1 => write!(f, "{sign}exp({})", self.mantissa),
            h => write!(f, "{sign}exp^{h}({})", self.mantissa),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(x: f64) -> TowerValue {
        TowerValue::from_f64(x).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(tv(10000.0), TowerValue::tower(0, 10000.0));
        let e100 = tv(100.0).exp();
        assert_eq!((e100.height(), e100.mantissa()), (1, 100.0));
        let small = tv(3.0).exp();
        assert_eq!(small.height(), 0);
        assert!((small.mantissa() - 3f64.exp()).abs() < 1e-12);
        let raised = tv(1e20);
        assert_eq!(raised.height(), 1);
        assert!((raised.to_f64() / 1e20 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ordering_across_heights() {
        let a = TowerValue::tower(2, 40.0);
        let b = TowerValue::tower(1, 1e14);
        assert_eq!(a.compare(&b), Ordering::Greater);
        assert_eq!(b.neg().compare(&a.neg()), Ordering::Greater);
        assert_eq!(TowerValue::zero().compare(&b.neg()), Ordering::Greater);
    }

    #[test]
    fn arithmetic_in_log_domain() {
        let big = TowerValue::tower(1, 1000.0);
        let prod = big.mul(&big);
        assert_eq!(prod.height(), 1);
        assert!((prod.mantissa() - 2000.0).abs() < 1e-9);
        let q = prod.div(&big).unwrap();
        assert_eq!(q.compare(&big), Ordering::Equal);
        let s = big.sub(&TowerValue::tower(1, 999.0));
        let expected = 1000.0 + (-(-1f64).exp()).ln_1p();
        assert!((s.mantissa() - expected).abs() < 1e-9);
        assert!(big.sub(&big).is_zero());
        assert_eq!(big.add(&tv(5.0)).compare(&big), Ordering::Equal);
    }

    #[test]
    fn logs_and_powers() {
        let x = TowerValue::tower(3, 50.0);
        assert_eq!(x.ln().unwrap().exp(), x);
        assert!(tv(-1.0).ln().is_none());
        assert!((tv(9.0).powf(0.5).unwrap().to_f64() - 3.0).abs() < 1e-12);
        let p = TowerValue::tower(1, 100.0).powf(2.0).unwrap();
        assert!((p.mantissa() - 200.0).abs() < 1e-9);
    }
}
