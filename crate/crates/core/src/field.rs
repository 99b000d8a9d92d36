//! Coefficient fields: exact rationals and a word-sized prime field.
//!
//! Everything above this module is generic over [`Field`], so the same
//! polynomial, tensor and operator code runs over `Q` for golden values and
//! over `F_p` for fast identity testing.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// A commutative field with exact arithmetic.
pub trait Field:
    Clone + PartialEq + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Short name used in reports ("rational", "mod-p").
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }
    fn mul_assign(&mut self, other: &Self) {
        *self = self.mul(other);
    }

    fn from_i64(v: i64) -> Self;
    /// Image of a rational number; `None` when the denominator vanishes in the field.
    fn from_rational(q: &BigRational) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc.mul_assign(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    fn powi(&self, e: i32) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            self.inv().map(|i| i.pow(e.unsigned_abs()))
        }
    }
}

/// Exact rational in lowest terms with positive denominator. Values whose
/// numerator and denominator fit in `i64` are stored inline; the rest as a
/// `BigRational`, so the representation is unique.
#[derive(Clone)]
pub struct Rat(Repr);

#[derive(Clone)]
enum Repr {
    Small(i64, i64),
    Big(rug::Rational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn big_to_rug(x: &BigInt) -> rug::Integer {
    rug::Integer::from_str_radix(&x.to_str_radix(16), 16).expect("hex digits")
}

fn rug_to_big(x: &rug::Integer) -> BigInt {
    BigInt::parse_bytes(x.to_string_radix(16).as_bytes(), 16).expect("hex digits")
}

impl Rat {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat::reduced(num as i128, den as i128)
    }

    /// `num/den` from 128-bit parts, `den != 0`.
    fn reduced(num: i128, den: i128) -> Self {
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd_u128(n.unsigned_abs(), d as u128);
        if g > 1 {
            n /= g as i128;
            d /= g as i128;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rat(Repr::Small(a, b)),
            _ => Rat(Repr::Big(rug::Rational::from((rug::Integer::from(n), rug::Integer::from(d))))),
        }
    }

    /// Canonical value of a GMP rational (already in lowest terms).
    fn from_rug(q: rug::Rational) -> Self {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(a), Some(b)) => Rat(Repr::Small(a, b)),
            _ => Rat(Repr::Big(q)),
        }
    }

    fn to_rug(&self) -> rug::Rational {
        match &self.0 {
            // Small values are stored in lowest terms with a positive denominator.
            Repr::Small(a, b) => unsafe { rug::Rational::from_canonical(rug::Integer::from(*a), rug::Integer::from(*b)) },
            Repr::Big(q) => q.clone(),
        }
    }

    pub fn from_big(q: BigRational) -> Self {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(a), Some(b)) => Rat(Repr::Small(a, b)),
            _ => Rat::from_rug(rug::Rational::from((big_to_rug(q.numer()), big_to_rug(q.denom())))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        BigRational::new_raw(self.numer(), self.denom())
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(a, _) => BigInt::from(*a),
            Repr::Big(q) => rug_to_big(q.numer()),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, b) => BigInt::from(*b),
            Repr::Big(q) => rug_to_big(q.denom()),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, b) => *b == 1,
            Repr::Big(q) => *q.denom() == 1,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(a, b) => *a as f64 / *b as f64,
            Repr::Big(q) => q.to_f64(),
        }
    }

    pub fn abs(&self) -> Rat {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(a, _) => a.signum() as i32,
            Repr::Big(q) => q.cmp0() as i32,
        }
    }

    fn big_op(&self, o: &Self, f: impl Fn(&rug::Rational, &rug::Rational) -> rug::Rational) -> Self {
        let q = match (&self.0, &o.0) {
            (Repr::Big(x), Repr::Big(y)) => f(x, y),
            (Repr::Big(x), _) => f(x, &o.to_rug()),
            (_, Repr::Big(y)) => f(&self.to_rug(), y),
            _ => f(&self.to_rug(), &o.to_rug()),
        };
        Rat::from_rug(q)
    }

    /// Parses `p`, `p/q` or a finite decimal like `-1.25`.
    pub fn parse(s: &str) -> Option<Rat> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            return Some(Rat::from_big(BigRational::new(p, q)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            let neg = int.starts_with('-');
            let int_part: BigInt = if int.is_empty() || int == "-" || int == "+" {
                BigInt::zero()
            } else {
                int.parse().ok()?
            };
            if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
                return None;
            }
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let f: BigInt = frac.parse().ok()?;
            let mag = int_part.abs() * &scale + f;
            let num = if neg { -mag } else { mag };
            return Some(Rat::from_big(BigRational::new(num, scale)));
        }
        let p: BigInt = s.parse().ok()?;
        Some(Rat::from_big(BigRational::from_integer(p)))
    }
}

impl PartialEq for Rat {
    fn eq(&self, o: &Self) -> bool {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(p), Repr::Big(q)) => p == q,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl std::hash::Hash for Rat {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        match &self.0 {
            Repr::Small(a, b) => (0u8, a, b).hash(h),
            Repr::Big(q) => (1u8, q).hash(h),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Rat {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            (Repr::Big(x), Repr::Big(y)) => x.cmp(y),
            (Repr::Big(x), _) => x.cmp(&o.to_rug()),
            _ => self.to_rug().cmp(&o.to_rug()),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rat({self})")
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(a, 1) => write!(f, "{a}"),
            Repr::Small(a, b) => write!(f, "{a}/{b}"),
            Repr::Big(q) if *q.denom() == 1 => write!(f, "{}", q.numer()),
            Repr::Big(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Rat::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("not a rational: {s}")))
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Self {
        Rat(Repr::Small(v, 1))
    }
}

impl Field for Rat {
    const NAME: &'static str = "rational";

    fn zero() -> Self {
        Rat(Repr::Small(0, 1))
    }
    fn one() -> Self {
        Rat(Repr::Small(1, 1))
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }
    fn add(&self, o: &Self) -> Self {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rat::reduced(a + c, b)
                } else {
                    Rat::reduced(a * d + c * b, b * d)
                }
            }
            _ => self.big_op(o, |x, y| rug::Rational::from(x + y)),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rat::reduced(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => self.big_op(o, |x, y| rug::Rational::from(x * y)),
        }
    }
    fn neg(&self) -> Self {
        match &self.0 {
            Repr::Small(a, b) if *a != i64::MIN => Rat(Repr::Small(-a, *b)),
            Repr::Big(q) => Rat::from_rug(rug::Rational::from(-q)),
            _ => Rat::from_rug(-self.to_rug()),
        }
    }
    fn inv(&self) -> Option<Self> {
        match &self.0 {
            Repr::Small(0, _) => None,
            Repr::Small(a, b) => Some(Rat::reduced(*b as i128, *a as i128)),
            Repr::Big(q) => Some(Rat::from_rug(q.clone().recip())),
        }
    }
    fn from_i64(v: i64) -> Self {
        Rat::from(v)
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(Rat::from_big(q.clone()))
    }
}

/// 2^62 - 57, the default modulus for prime-field mode.
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_847;
/// 2^61 - 1, offered as an alternative modulus.
pub const MERSENNE_61: u64 = 2_305_843_009_213_693_951;

/// Element of `F_P`, stored reduced in `[0, P)`. `P` must be an odd prime below 2^63.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Fp<const P: u64>(u64);

/// Prime field with [`DEFAULT_PRIME`].
pub type Fp62 = Fp<DEFAULT_PRIME>;
/// Prime field with [`MERSENNE_61`].
pub type Fp61 = Fp<MERSENNE_61>;

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(&self) -> u64 {
        self.0
    }

    fn from_bigint(v: &BigInt) -> Self {
        let m = BigInt::from(P);
        let r = v.mod_floor(&m);
        Fp(r.to_u64().expect("reduced residue fits in u64"))
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Show small negatives symmetrically, which keeps witnesses readable.
        if self.0 > P / 2 {
            write!(f, "-{}", P - self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl<const P: u64> Field for Fp<P> {
    const NAME: &'static str = "mod-p";

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    fn add(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        Fp(if s >= P { s - P } else { s })
    }
    fn sub(&self, other: &Self) -> Self {
        Fp(if self.0 >= other.0 {
            self.0 - other.0
        } else {
            self.0 + P - other.0
        })
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u128 * other.0 as u128) % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat: a^(p-2).
        let mut base = *self;
        let mut e = P - 2;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Some(acc)
    }
    fn add_assign(&mut self, other: &Self) {
        *self = Field::add(self, other);
    }
    fn mul_assign(&mut self, other: &Self) {
        *self = Field::mul(self, other);
    }
    fn from_i64(v: i64) -> Self {
        if v >= 0 {
            Fp(v as u64 % P)
        } else {
            Fp(v.unsigned_abs() % P).neg()
        }
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        let n = Self::from_bigint(q.numer());
        let d = Self::from_bigint(q.denom());
        d.inv().map(|di| n.mul(&di))
    }
}
