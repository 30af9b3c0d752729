use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use super::rational::Rational;
use crate::error::{Error, Result};

/// Largest conductor accepted unless a caller raises the limit.
pub const DEFAULT_CONDUCTOR_LIMIT: u32 = 64;

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
///
/// Computed by exact division of `x^n - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u32) -> Result<Vec<i64>> {
    cyclotomic_polynomial_with_limit(n, DEFAULT_CONDUCTOR_LIMIT)
}

pub fn cyclotomic_polynomial_with_limit(n: u32, limit: u32) -> Result<Vec<i64>> {
    if n == 0 {
        return Err(Error::invalid("cyclotomic polynomial index must be positive"));
    }
    if n > limit {
        return Err(Error::limit(format!("conductor {n} exceeds limit {limit}")));
    }
    Ok(cyclotomic_unchecked(n))
}

fn cyclotomic_unchecked(n: u32) -> Vec<i64> {
    let n = n as usize;
    // x^n - 1
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = divide_monic(&num, &cyclotomic_unchecked(d as u32));
        }
    }
    num
}

/// Exact quotient by a monic divisor; the remainder is asserted to vanish.
fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &b) in den.iter().enumerate() {
                rem[k + j] -= c * b;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// The field ℚ(ζ_N) in the power basis `1, ζ, …, ζ^{φ(N)-1}` modulo `Φ_N`.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u32,
    phi: usize,
    modulus: Vec<i64>,
    // x^j mod Φ_N for 0 <= j < max(N, 2φ-1)
    powers: Vec<Vec<i64>>,
}

impl CyclotomicField {
    pub fn new(conductor: u32) -> Result<Arc<Self>> {
        Self::with_limit(conductor, DEFAULT_CONDUCTOR_LIMIT)
    }

    pub fn with_limit(conductor: u32, limit: u32) -> Result<Arc<Self>> {
        let modulus = cyclotomic_polynomial_with_limit(conductor, limit)?;
        let phi = modulus.len() - 1;
        let count = (conductor as usize).max(2 * phi).max(1);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x and reduce the overflow coefficient
            let top = cur[phi - 1];
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..phi {
                    cur[j] -= top * modulus[j];
                }
            }
        }
        Ok(Arc::new(CyclotomicField { conductor, phi, modulus, powers }))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Reduces a coefficient list of any length `< powers.len()` modulo `Φ_N`.
    fn reduce(&self, raw: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.phi];
        for (j, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j < self.phi {
                out[j] = out[j].add(c);
            } else {
                for (k, &w) in self.powers[j].iter().enumerate() {
                    if w != 0 {
                        out[k] = out[k].add(&c.mul(&Rational::from_integer(w)));
                    }
                }
            }
        }
        out
    }

    fn power(&self, k: usize) -> &[i64] {
        &self.powers[k % self.conductor as usize]
    }
}

/// An exact element of ℚ(ζ_N).
///
/// Elements whose value is rational are always stored with conductor 1, so
/// values of one fixed field have a unique representation. Combining elements
/// of different conductors lifts both to the lcm conductor.
#[derive(Clone)]
pub struct Cyclotomic(Repr);

#[derive(Clone)]
enum Repr {
    Rat(Rational),
    Ext { field: Arc<CyclotomicField>, coeffs: Vec<Rational> },
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic(Repr::Rat(Rational::zero()))
    }

    pub fn one() -> Self {
        Cyclotomic(Repr::Rat(Rational::one()))
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic(Repr::Rat(q))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    /// Builds an element from power-basis coordinates; `coeffs.len()` must equal φ(N).
    pub fn from_coeffs(field: Arc<CyclotomicField>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != field.phi {
            return Err(Error::invalid(format!(
                "conductor {} needs {} coefficients, got {}",
                field.conductor,
                field.phi,
                coeffs.len()
            )));
        }
        Ok(Self::normalized(field, coeffs))
    }

    fn normalized(field: Arc<CyclotomicField>, coeffs: Vec<Rational>) -> Self {
        if coeffs.iter().skip(1).all(Rational::is_zero) {
            let q = coeffs.into_iter().next().unwrap_or_else(Rational::zero);
            Cyclotomic(Repr::Rat(q))
        } else {
            Cyclotomic(Repr::Ext { field, coeffs })
        }
    }

    /// `ζ_N^k` in the field `field` (whose conductor is N).
    pub fn root_of_unity(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let n = field.conductor as i64;
        let e = k.rem_euclid(n) as usize;
        let coeffs = field.power(e).iter().map(|&w| Rational::from_integer(w)).collect();
        Self::normalized(field.clone(), coeffs)
    }

    pub fn conductor(&self) -> u32 {
        match &self.0 {
            Repr::Rat(_) => 1,
            Repr::Ext { field, .. } => field.conductor,
        }
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        match &self.0 {
            Repr::Rat(q) => vec![q.clone()],
            Repr::Ext { coeffs, .. } => coeffs.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Rat(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Rat(q) if q.is_one())
    }

    /// The rational value, or `None` if the element is irrational.
    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.0 {
            Repr::Rat(q) => Some(q),
            Repr::Ext { .. } => None,
        }
    }

    /// Power-basis coordinates after lifting into `field`, whose conductor must
    /// be a multiple of this element's conductor.
    pub fn lift_coeffs(&self, field: &Arc<CyclotomicField>) -> Vec<Rational> {
        match &self.0 {
            Repr::Rat(q) => {
                let mut v = vec![Rational::zero(); field.phi];
                v[0] = q.clone();
                v
            }
            Repr::Ext { field: own, coeffs } => {
                assert_eq!(field.conductor % own.conductor, 0, "lift to a non-multiple conductor");
                if own.conductor == field.conductor {
                    return coeffs.clone();
                }
                let step = (field.conductor / own.conductor) as usize;
                let mut out = vec![Rational::zero(); field.phi];
                for (i, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (k, &w) in field.power(i * step).iter().enumerate() {
                        if w != 0 {
                            out[k] = out[k].add(&c.mul(&Rational::from_integer(w)));
                        }
                    }
                }
                out
            }
        }
    }

    fn common_field(a: &Arc<CyclotomicField>, b: &Arc<CyclotomicField>) -> Arc<CyclotomicField> {
        if a.conductor == b.conductor {
            return a.clone();
        }
        let l = a.conductor.lcm(&b.conductor);
        if l == a.conductor {
            a.clone()
        } else if l == b.conductor {
            b.clone()
        } else {
            CyclotomicField::with_limit(l, u32::MAX).expect("lcm field")
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Cyclotomic(Repr::Rat(a.add(b))),
            (Repr::Rat(q), Repr::Ext { field, coeffs }) | (Repr::Ext { field, coeffs }, Repr::Rat(q)) => {
                let mut c = coeffs.clone();
                c[0] = c[0].add(q);
                Cyclotomic(Repr::Ext { field: field.clone(), coeffs: c })
            }
            (Repr::Ext { field: fa, coeffs: ca }, Repr::Ext { field: fb, coeffs: cb }) => {
                if fa.conductor == fb.conductor {
                    let c = ca.iter().zip(cb).map(|(x, y)| x.add(y)).collect();
                    Self::normalized(fa.clone(), c)
                } else {
                    let f = Self::common_field(fa, fb);
                    let (x, y) = (self.lift_coeffs(&f), other.lift_coeffs(&f));
                    Self::normalized(f, x.iter().zip(&y).map(|(x, y)| x.add(y)).collect())
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        match &self.0 {
            Repr::Rat(q) => Cyclotomic(Repr::Rat(q.neg())),
            Repr::Ext { field, coeffs } => {
                Cyclotomic(Repr::Ext { field: field.clone(), coeffs: coeffs.iter().map(Rational::neg).collect() })
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Cyclotomic(Repr::Rat(a.mul(b))),
            (Repr::Rat(q), Repr::Ext { field, coeffs }) | (Repr::Ext { field, coeffs }, Repr::Rat(q)) => {
                if q.is_zero() {
                    return Self::zero();
                }
                Cyclotomic(Repr::Ext { field: field.clone(), coeffs: coeffs.iter().map(|c| c.mul(q)).collect() })
            }
            (Repr::Ext { field: fa, coeffs: ca }, Repr::Ext { field: fb, coeffs: cb }) => {
                let f = Self::common_field(fa, fb);
                let (x, y) = if fa.conductor == fb.conductor {
                    (ca.clone(), cb.clone())
                } else {
                    (self.lift_coeffs(&f), other.lift_coeffs(&f))
                };
                let mut raw = vec![Rational::zero(); 2 * f.phi - 1];
                for (i, a) in x.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in y.iter().enumerate() {
                        if !b.is_zero() {
                            raw[i + j] = raw[i + j].add(&a.mul(b));
                        }
                    }
                }
                let reduced = f.reduce(&raw);
                Self::normalized(f, reduced)
            }
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_N`.
    pub fn inv(&self) -> Option<Self> {
        match &self.0 {
            Repr::Rat(q) => q.inv().map(|i| Cyclotomic(Repr::Rat(i))),
            Repr::Ext { field, coeffs } => {
                let modulus: Vec<Rational> = field.modulus.iter().map(|&c| Rational::from_integer(c)).collect();
                let s = poly_inverse_mod(coeffs, &modulus)?;
                let mut padded = s;
                padded.resize(field.phi, Rational::zero());
                Some(Self::normalized(field.clone(), padded))
            }
        }
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Complex conjugation, the Galois automorphism ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        match &self.0 {
            Repr::Rat(_) => self.clone(),
            Repr::Ext { field, coeffs } => {
                let n = field.conductor as usize;
                let mut raw = vec![Rational::zero(); field.phi];
                for (i, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (k, &w) in field.power((n - i) % n).iter().enumerate() {
                        if w != 0 {
                            raw[k] = raw[k].add(&c.mul(&Rational::from_integer(w)));
                        }
                    }
                }
                Self::normalized(field.clone(), raw)
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn bit_size(&self) -> u64 {
        match &self.0 {
            Repr::Rat(q) => q.bit_size(),
            Repr::Ext { coeffs, .. } => coeffs.iter().map(Rational::bit_size).sum(),
        }
    }
}

fn trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    if rem.len() <= db {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db].mul(&lead_inv);
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(bj));
            }
        }
        quot[k] = c;
    }
    rem.truncate(db.max(1));
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x.sub(&y)
        })
        .collect();
    trim(&mut out);
    out
}

/// Returns `s` with `a·s ≡ 1 (mod m)`, or `None` if `a` is zero modulo `m`.
fn poly_inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    if r1.iter().all(Rational::is_zero) {
        return None;
    }
    let mut s0 = vec![Rational::zero()];
    let mut s1 = vec![Rational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is the gcd; Φ_N is irreducible so it is a nonzero constant.
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].inv()?;
    let (_, s) = poly_divrem(&s0.iter().map(|x| x.mul(&c)).collect::<Vec<_>>(), m);
    Some(s)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => a == b,
            (Repr::Ext { field: fa, coeffs: ca }, Repr::Ext { field: fb, coeffs: cb }) => {
                if fa.conductor == fb.conductor {
                    ca == cb
                } else {
                    self.sub(other).is_zero()
                }
            }
            _ => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rat(q) => write!(f, "{q}"),
            Repr::Ext { field, coeffs } => {
                let mut first = true;
                for (i, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match i {
                        0 => write!(f, "{c}")?,
                        1 => write!(f, "({c})·ζ{}", field.conductor)?,
                        _ => write!(f, "({c})·ζ{}^{i}", field.conductor)?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct WireCyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum WireScalar {
    Field(WireCyclotomic),
    Rational(Rational),
}

/// Wire form: a bare `[num, den]` pair for rationals, otherwise
/// `{"conductor": N, "coeffs": [[num, den], ...]}`.
impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.0 {
            Repr::Rat(q) => q.serialize(s),
            Repr::Ext { field, coeffs } => {
                WireCyclotomic { conductor: field.conductor, coeffs: coeffs.clone() }.serialize(s)
            }
        }
    }
}

impl<'de> serde::Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match WireScalar::deserialize(d)? {
            WireScalar::Rational(q) => Ok(Cyclotomic::from_rational(q)),
            WireScalar::Field(w) => {
                let field = CyclotomicField::new(w.conductor).map_err(D::Error::custom)?;
                Cyclotomic::from_coeffs(field, w.coeffs).map_err(D::Error::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(n: u32) -> Arc<CyclotomicField> {
        CyclotomicField::new(n).unwrap()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4).unwrap(), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6).unwrap(), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12).unwrap(), vec![1, 0, -1, 0, 1]);
        assert!(matches!(cyclotomic_polynomial(65), Err(Error::Limit(_))));
        assert!(cyclotomic_polynomial(0).is_err());
    }

    #[test]
    fn degree_is_phi_and_divides() {
        for n in 1..=30u32 {
            let p = cyclotomic_polynomial(n).unwrap();
            assert_eq!(p.len() - 1, euler_phi(n), "deg Φ_{n}");
            let mut xn = vec![0i64; n as usize + 1];
            xn[0] = -1;
            xn[n as usize] = 1;
            let mut rem = xn.clone();
            let dd = p.len() - 1;
            for k in (0..=n as usize - dd).rev() {
                let c = rem[k + dd];
                for (j, &b) in p.iter().enumerate() {
                    rem[k + j] -= c * b;
                }
            }
            assert!(rem.iter().all(|&r| r == 0), "Φ_{n} ∤ x^{n}-1");
        }
    }

    #[test]
    fn multiplication_examples() {
        let f4 = field(4);
        let i = Cyclotomic::root_of_unity(&f4, 1);
        assert_eq!(i.mul(&i), Cyclotomic::from_integer(-1));
        let f3 = field(3);
        let w = Cyclotomic::root_of_unity(&f3, 1);
        let expected = Cyclotomic::from_coeffs(f3.clone(), vec![Rational::from_integer(-1), Rational::from_integer(-1)]).unwrap();
        assert_eq!(w.mul(&w), expected);
        assert_eq!(w.mul(&Cyclotomic::one()), w);
    }

    #[test]
    fn rational_detection() {
        let f4 = field(4);
        let i = Cyclotomic::root_of_unity(&f4, 1);
        assert_eq!(i.mul(&i).add(&Cyclotomic::one()).as_rational(), Some(&Rational::zero()));
        let f3 = field(3);
        assert!(Cyclotomic::root_of_unity(&f3, 1).as_rational().is_none());
        let f6 = field(6);
        let z = Cyclotomic::root_of_unity(&f6, 1);
        let s = z.add(&z.inv().unwrap());
        assert_eq!(s.as_rational(), Some(&Rational::one()));
    }

    #[test]
    fn lifting_between_conductors() {
        let i = Cyclotomic::root_of_unity(&field(4), 1);
        let w = Cyclotomic::root_of_unity(&field(3), 1);
        let z12 = Cyclotomic::root_of_unity(&field(12), 1);
        // ζ_12^3 = i, ζ_12^4 = ω
        assert_eq!(z12.pow(3), i);
        assert_eq!(z12.pow(4), w);
        assert_eq!(i.mul(&w), z12.pow(7));
        assert_eq!(i.conductor(), 4);
    }

    #[test]
    fn conjugation() {
        let f5 = field(5);
        let z = Cyclotomic::root_of_unity(&f5, 2);
        assert_eq!(z.conj(), Cyclotomic::root_of_unity(&f5, 3));
        assert!(z.mul(&z.conj()).is_one());
    }

    #[test]
    fn wire_encoding() {
        let w = Cyclotomic::root_of_unity(&field(3), 1);
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"conductor":3,"coeffs":[[0,1],[1,1]]}"#);
        let back: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        let q: Cyclotomic = serde_json::from_str("[3,4]").unwrap();
        assert_eq!(q, Cyclotomic::from_rational(Rational::new(3, 4)));
        assert!(serde_json::from_str::<Cyclotomic>(r#"{"conductor":3,"coeffs":[[1,1]]}"#).is_err());
    }
}
