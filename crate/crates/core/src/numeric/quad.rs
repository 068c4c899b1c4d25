use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::arith::squarefree_decompose;
use super::Rational;
use crate::error::{Error, Result};

/// Element `a + b·√m` of a real quadratic field, `m` squarefree.
///
/// Rational values are stored with `b = 0` and `m = 1`, so equality is
/// componentwise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadNumber {
    a: Rational,
    b: Rational,
    m: BigUint,
}

impl QuadNumber {
    /// Builds `a + b·√m`, pulling square factors out of `m`.
    pub fn new(a: Rational, b: Rational, m: impl Into<BigUint>) -> Result<Self> {
        let m = m.into();
        if m.is_zero() {
            return Ok(Self::rational(a));
        }
        let (root, core) = squarefree_decompose(&m);
        let b = b * Rational::integer(BigInt::from(root));
        if b.is_zero() {
            return Ok(Self::rational(a));
        }
        if core.is_one() {
            return Ok(Self::rational(a + b));
        }
        Ok(QuadNumber { a, b, m: core })
    }

    pub fn rational(a: Rational) -> Self {
        QuadNumber {
            a,
            b: Rational::zero(),
            m: BigUint::one(),
        }
    }

    /// Exact nonnegative square root of a rational as `0 + b·√m`.
    pub fn sqrt(r: &Rational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::NegativeRadicand(r.to_string()));
        }
        if r.is_zero() {
            return Ok(Self::rational(Rational::zero()));
        }
        // sqrt(p/q) = sqrt(p·q) / q
        let p = r.numer().magnitude().clone();
        let q = r.denom().magnitude().clone();
        let b = Rational::new(BigInt::one(), BigInt::from(q.clone()))?;
        Self::new(Rational::zero(), b, p * q)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn m(&self) -> &BigUint {
        &self.m
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    fn common_radical(&self, other: &Self) -> Result<BigUint> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.m.clone()),
            (_, true) => Ok(self.m.clone()),
            _ if self.m == other.m => Ok(self.m.clone()),
            _ => Err(Error::MixedRadicals(self.m.to_string(), other.m.to_string())),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let m = self.common_radical(other)?;
        Self::new(&self.a + &other.a, &self.b + &other.b, m)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let m = self.common_radical(other)?;
        let mr = Rational::integer(BigInt::from(m.clone()));
        let a = &self.a * &other.a + &self.b * &other.b * mr;
        let b = &self.a * &other.b + &self.b * &other.a;
        Self::new(a, b, m)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let b = &self.b * k;
        if b.is_zero() {
            return Self::rational(&self.a * k);
        }
        QuadNumber {
            a: &self.a * k,
            b,
            m: self.m.clone(),
        }
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        QuadNumber {
            a: &self.a + r,
            b: self.b.clone(),
            m: self.m.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::integer(-1))
    }

    pub fn signum(&self) -> i32 {
        sign_with_radical(&self.a, &self.b, &self.m)
    }

    /// Exact ordering, also across different radicals.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        let x = &self.a - &other.a;
        let neg_b = -&other.b;
        match sign_three_terms(&x, &self.b, &self.m, &neg_b, &other.m) {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let m = self.m.to_string().parse::<f64>().unwrap_or(f64::NAN);
        self.a.to_f64() + self.b.to_f64() * m.sqrt()
    }

    /// Decimal approximation rounded to 12 significant digits.
    pub fn approx(&self) -> f64 {
        round_sig(self.to_f64(), 12)
    }
}

pub(crate) fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

fn big(n: &BigUint) -> Rational {
    Rational::integer(BigInt::from_biguint(Sign::Plus, n.clone()))
}

/// Sign of `p + q·√r` for a nonnegative integer `r`.
fn sign_with_radical(p: &Rational, q: &Rational, r: &BigUint) -> i32 {
    let sp = p.signum();
    let sq = if r.is_zero() { 0 } else { q.signum() };
    if sq == 0 {
        return sp;
    }
    if sp == 0 || sp == sq {
        return sq;
    }
    // opposite signs: compare p^2 with q^2 r
    match (p * p).cmp(&(q * q * big(r))) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => 0,
    }
}

/// Sign of `x + y·√m + z·√n` by squaring away one radical at a time.
pub(crate) fn sign_three_terms(
    x: &Rational,
    y: &Rational,
    m: &BigUint,
    z: &Rational,
    n: &BigUint,
) -> i32 {
    if m == n {
        return sign_with_radical(x, &(y + z), m);
    }
    // sign of u = y√m + z√n
    let su = {
        let sy = y.signum();
        let sz = z.signum();
        if sy == 0 {
            sz
        } else if sz == 0 || sy == sz {
            sy
        } else {
            match (y * y * big(m)).cmp(&(z * z * big(n))) {
                Ordering::Greater => sy,
                Ordering::Less => sz,
                Ordering::Equal => 0,
            }
        }
    };
    let sx = x.signum();
    if su == 0 || sx == 0 || sx == su {
        return if su == 0 { sx } else if sx == 0 { su } else { sx };
    }
    // opposite signs: sign(x^2 - u^2), u^2 = y^2 m + z^2 n + 2yz√(mn)
    let p = x * x - y * y * big(m) - z * z * big(n);
    let q = -(Rational::integer(2) * y * z);
    let s = sign_with_radical(&p, &q, &(m * n));
    if s > 0 {
        sx
    } else if s < 0 {
        su
    } else {
        0
    }
}

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})*sqrt({})", self.b, self.m)
        } else {
            write!(f, "{} + ({})*sqrt({})", self.a, self.b, self.m)
        }
    }
}

impl fmt::Debug for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Rational> for QuadNumber {
    fn from(r: Rational) -> Self {
        QuadNumber::rational(r)
    }
}

#[derive(Serialize, Deserialize)]
struct QuadRepr {
    a: Rational,
    b: Rational,
    m: serde_json::Value,
    #[serde(default, skip_deserializing)]
    approx: f64,
}

impl Serialize for QuadNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let m = match super::arith::biguint_to_u64(&self.m) {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::from(self.m.to_string()),
        };
        QuadRepr {
            a: self.a.clone(),
            b: self.b.clone(),
            m,
            approx: self.approx(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = QuadRepr::deserialize(deserializer)?;
        let m: BigUint = match &repr.m {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(BigUint::from)
                .ok_or_else(|| D::Error::custom("m must be a positive integer"))?,
            serde_json::Value::String(s) => s.parse().map_err(D::Error::custom)?,
            _ => return Err(D::Error::custom("m must be an integer")),
        };
        if m.is_zero() {
            return Err(D::Error::custom("m must be positive"));
        }
        QuadNumber::new(repr.a, repr.b, m).map_err(D::Error::custom)
    }
}
