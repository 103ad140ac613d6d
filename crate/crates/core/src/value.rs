//! Exact rationals in the unit interval.
//!
//! Every quantale computation in this crate runs on [`Value`], a reduced
//! fraction `num/den` with `0 <= num <= den`. Intermediate arithmetic is
//! carried out in `i128` so that products of two `u64` fractions never
//! overflow before reduction.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValueError {
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("value {0} lies outside [0,1]")]
    OutOfRange(String),
}

/// An exact rational number in `[0,1]` in canonical reduced form.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Value {
    num: u64,
    den: u64,
}

impl Value {
    pub const ZERO: Value = Value { num: 0, den: 1 };
    pub const ONE: Value = Value { num: 1, den: 1 };
    pub const HALF: Value = Value { num: 1, den: 2 };

    pub fn new(num: u64, den: u64) -> Result<Value, ValueError> {
        if den == 0 {
            return Err(ValueError::ZeroDenominator(format!("{num}/{den}")));
        }
        if num > den {
            return Err(ValueError::OutOfRange(format!("{num}/{den}")));
        }
        let g = num.gcd(&den);
        Ok(Value {
            num: num / g,
            den: den / g,
        })
    }

    /// The grid point `k/n`. Panics if `k > n` or `n == 0`.
    pub fn grid(k: u32, n: u32) -> Value {
        Value::new(k as u64, n as u64).expect("grid point outside [0,1]")
    }

    pub fn numer(self) -> u64 {
        self.num
    }

    pub fn denom(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn is_one(self) -> bool {
        self.num == self.den
    }

    pub fn meet(self, other: Value) -> Value {
        self.min(other)
    }

    pub fn join(self, other: Value) -> Value {
        self.max(other)
    }

    /// `max(self - other, 0)`.
    pub fn truncated_minus(self, other: Value) -> Value {
        Frac::from(self).sub(Frac::from(other)).clamp_unit()
    }

    pub fn product(self, other: Value) -> Value {
        Frac::from(self).mul(Frac::from(other)).into_value()
    }

    /// `min(self / other, 1)`, with the convention `x / 0 = 1`.
    pub fn div_capped(self, other: Value) -> Value {
        if other.is_zero() || self >= other {
            return Value::ONE;
        }
        Frac::from(self).div(Frac::from(other)).into_value()
    }

    /// `max(0, self + other - 1)`.
    pub fn lukasiewicz(self, other: Value) -> Value {
        Frac::from(self)
            .add(Frac::from(other))
            .sub(Frac::ONE)
            .clamp_unit()
    }

    /// `min(1, 1 - self + other)`.
    pub fn lukasiewicz_residual(self, other: Value) -> Value {
        Frac::ONE
            .sub(Frac::from(self))
            .add(Frac::from(other))
            .clamp_unit()
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else if self.num == self.den {
            write!(f, "1")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Value {
    type Err = ValueError;

    fn from_str(s: &str) -> Result<Value, ValueError> {
        let t = s.trim();
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (t, "1"),
        };
        let parse = |part: &str| {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                Err(ValueError::Malformed(s.to_string()))
            } else {
                part.parse::<u64>()
                    .map_err(|_| ValueError::Malformed(s.to_string()))
            }
        };
        let num = parse(p)?;
        let den = parse(q)?;
        if den == 0 {
            return Err(ValueError::ZeroDenominator(s.to_string()));
        }
        if num > den {
            return Err(ValueError::OutOfRange(s.to_string()));
        }
        Value::new(num, den)
    }
}

/// Signed intermediate fraction; only lives inside a single arithmetic step.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    pub(crate) const ONE: Frac = Frac { num: 1, den: 1 };

    fn reduce(num: i128, den: i128) -> Frac {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        Frac { num: n, den: d }
    }

    pub(crate) fn add(self, o: Frac) -> Frac {
        Frac::reduce(self.num * o.den + o.num * self.den, self.den * o.den)
    }

    pub(crate) fn sub(self, o: Frac) -> Frac {
        Frac::reduce(self.num * o.den - o.num * self.den, self.den * o.den)
    }

    pub(crate) fn mul(self, o: Frac) -> Frac {
        Frac::reduce(self.num * o.num, self.den * o.den)
    }

    pub(crate) fn div(self, o: Frac) -> Frac {
        Frac::reduce(self.num * o.den, self.den * o.num)
    }

    pub(crate) fn clamp_unit(self) -> Value {
        if self.num <= 0 {
            Value::ZERO
        } else if self.num >= self.den {
            Value::ONE
        } else {
            self.into_value()
        }
    }

    pub(crate) fn into_value(self) -> Value {
        let num = u64::try_from(self.num).expect("rational numerator overflow");
        let den = u64::try_from(self.den).expect("rational denominator overflow");
        Value::new(num, den).expect("intermediate left [0,1]")
    }
}

impl From<Value> for Frac {
    fn from(v: Value) -> Frac {
        Frac {
            num: v.num as i128,
            den: v.den as i128,
        }
    }
}

/// The finite chain `Q_n = {0, 1/n, ..., n/n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridChain {
    n: u32,
}

impl GridChain {
    pub fn new(n: u32) -> GridChain {
        assert!(n >= 1, "grid needs n >= 1");
        GridChain { n }
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn len(self) -> usize {
        self.n as usize + 1
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn value(self, k: u32) -> Value {
        Value::grid(k, self.n)
    }

    pub fn values(self) -> impl Iterator<Item = Value> {
        (0..=self.n).map(move |k| Value::grid(k, self.n))
    }

    /// Grid index of `v`, if `v` lies on the grid.
    pub fn index_of(self, v: Value) -> Option<u32> {
        let scaled = v.num as u128 * self.n as u128;
        if scaled.is_multiple_of(v.den as u128) {
            Some((scaled / v.den as u128) as u32)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Value {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(Value::new(2, 4).unwrap(), Value::HALF);
        assert_eq!(Value::new(0, 7).unwrap(), Value::ZERO);
        assert_eq!(Value::new(3, 3).unwrap(), Value::ONE);
        assert_eq!(v("6/8").numer(), 3);
        assert_eq!(v("6/8").denom(), 4);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("3/0".parse::<Value>(), Err(ValueError::ZeroDenominator(_))));
        assert!(matches!("5/4".parse::<Value>(), Err(ValueError::OutOfRange(_))));
        assert!(matches!("a/4".parse::<Value>(), Err(ValueError::Malformed(_))));
        assert!(matches!("-1/4".parse::<Value>(), Err(ValueError::Malformed(_))));
        assert!(matches!("".parse::<Value>(), Err(ValueError::Malformed(_))));
        assert_eq!(v("1"), Value::ONE);
        assert_eq!(v(" 0 "), Value::ZERO);
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "1", "1/2", "3/10", "7/9"] {
            assert_eq!(v(s).to_string(), s);
        }
    }

    #[test]
    fn arithmetic() {
        assert_eq!(v("8/10").truncated_minus(v("5/10")), v("3/10"));
        assert_eq!(v("3/10").truncated_minus(v("5/10")), Value::ZERO);
        assert_eq!(v("7/10").lukasiewicz(v("6/10")), v("3/10"));
        assert_eq!(v("1/2").lukasiewicz_residual(v("1/4")), v("3/4"));
        assert_eq!(v("1/4").div_capped(v("1/2")), v("1/2"));
        assert_eq!(Value::ZERO.div_capped(Value::ZERO), Value::ONE);
        assert_eq!(v("2/3").product(v("3/4")), Value::HALF);
    }

    #[test]
    fn ordering() {
        assert!(v("1/3") < v("1/2"));
        assert!(v("2/4") == v("1/2"));
        assert_eq!(v("1/3").max(v("2/7")), v("1/3"));
    }

    #[test]
    fn grid_index() {
        let g = GridChain::new(4);
        assert_eq!(g.index_of(v("1/2")), Some(2));
        assert_eq!(g.index_of(v("1/3")), None);
        assert_eq!(g.values().count(), 5);
        assert_eq!(g.value(3), v("3/4"));
    }
}
