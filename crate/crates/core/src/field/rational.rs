use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// An exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in an `i64` are kept inline;
/// everything else falls back to [`BigRational`]. The representation is
/// canonical, so structural equality is value equality.
#[derive(Clone)]
pub struct Rational(Repr);

#[derive(Clone)]
enum Repr {
    Small { num: i64, den: i64 },
    Big(BigRational),
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Rational(Repr::Small { num: 1, den: 1 })
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(Repr::Small { num: n, den: 1 })
    }

    /// Builds `num / den`, reducing to lowest terms. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let (mut n, mut d) = (num, den);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n == 0 {
            return Self::zero();
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(num), Ok(den)) => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(num), Some(den)) => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    /// The value as an `i64` if it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small { num, den: 1 } => Some(*num),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if b == d {
                    return Self::from_i128(*a as i128 + *c as i128, *b as i128);
                }
                let num = (*a as i128)
                    .checked_mul(*d as i128)
                    .zip((*c as i128).checked_mul(*b as i128))
                    .and_then(|(x, y)| x.checked_add(y));
                match num {
                    Some(n) => Self::from_i128(n, *b as i128 * *d as i128),
                    None => Self::from_big(self.to_big() + other.to_big()),
                }
            }
            _ => Self::from_big(self.to_big() + other.to_big()),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        match &self.0 {
            Repr::Small { num, den } if *num != i64::MIN => Rational(Repr::Small { num: -num, den: *den }),
            _ => Self::from_big(-self.to_big()),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if *a == 0 || *c == 0 {
                    return Self::zero();
                }
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * other.to_big()),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        match &self.0 {
            Repr::Small { num: 0, .. } => None,
            Repr::Small { num, den } => Some(Self::from_i128(*den as i128, *num as i128)),
            Repr::Big(r) => Some(Self::from_big(r.recip())),
        }
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Bit length of numerator plus denominator; used to rank pivot candidates.
    pub fn bit_size(&self) -> u64 {
        match &self.0 {
            Repr::Small { num, den } => {
                (64 - num.unsigned_abs().leading_zeros() as u64) + (64 - den.leading_zeros() as u64)
            }
            Repr::Big(r) => r.numer().bits() + r.denom().bits(),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::ops::Add<&Rational> for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational::add(self, rhs)
    }
}

impl std::ops::Sub<&Rational> for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational::sub(self, rhs)
    }
}

impl std::ops::Mul<&Rational> for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational::mul(self, rhs)
    }
}

impl std::ops::Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational::neg(self)
    }
}

/// Wire form: `[num, den]`, with integers that do not fit an `i64` written as strings.
impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = s.serialize_tuple(2)?;
        match &self.0 {
            Repr::Small { num, den } => {
                t.serialize_element(num)?;
                t.serialize_element(den)?;
            }
            Repr::Big(r) => {
                t.serialize_element(&r.numer().to_string())?;
                t.serialize_element(&r.denom().to_string())?;
            }
        }
        t.end()
    }
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum WireInt {
    Int(i64),
    Text(String),
}

impl WireInt {
    fn to_bigint(&self) -> Result<BigInt, String> {
        match self {
            WireInt::Int(n) => Ok(BigInt::from(*n)),
            WireInt::Text(s) => s.parse().map_err(|_| format!("invalid integer literal {s:?}")),
        }
    }
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum WireRational {
    Pair(WireInt, WireInt),
    Int(i64),
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match WireRational::deserialize(d)? {
            WireRational::Int(n) => Ok(Rational::from_integer(n)),
            WireRational::Pair(n, den) => {
                let n = n.to_bigint().map_err(D::Error::custom)?;
                let den = den.to_bigint().map_err(D::Error::custom)?;
                if den.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(Rational::from_bigints(n, den))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let a = Rational::new(6, -4);
        assert_eq!(a, Rational::new(-3, 2));
        assert_eq!(a.to_string(), "-3/2");
        assert!(Rational::new(0, 7).is_zero());
        assert_eq!(Rational::new(0, 7), Rational::zero());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_integer(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq.0, Repr::Big(_)));
        let back = sq.div(&big).unwrap();
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small { .. }));
        let m = Rational::from_integer(i64::MIN);
        assert_eq!(m.neg().neg(), m);
    }

    #[test]
    fn arithmetic() {
        let a = Rational::new(1, 3);
        let b = Rational::new(1, 6);
        assert_eq!(a.add(&b), Rational::new(1, 2));
        assert_eq!(a.sub(&b), Rational::new(1, 6));
        assert_eq!(a.mul(&b), Rational::new(1, 18));
        assert_eq!(a.div(&b), Some(Rational::from_integer(2)));
        assert_eq!(Rational::zero().inv(), None);
        assert!(Rational::new(-1, 2) < Rational::new(1, 3));
    }

    #[test]
    fn wire_round_trip() {
        let a = Rational::new(-5, 12);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[-5,12]");
        let b: Rational = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        let c: Rational = serde_json::from_str("7").unwrap();
        assert_eq!(c, Rational::from_integer(7));
        let huge: Rational = serde_json::from_str(r#"["100000000000000000000", "4"]"#).unwrap();
        assert_eq!(huge.to_string(), "25000000000000000000");
        assert!(serde_json::from_str::<Rational>("[1,0]").is_err());
    }
}
