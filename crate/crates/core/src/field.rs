//! Exact scalars over ℚ, GF(p) and GF(p²).
//!
//! GF(p²) elements are stored as coordinate pairs `(a, b)` meaning `a·t + b`,
//! where `t` is a root of a fixed minimal polynomial per prime:
//!
//! | p            | minimal polynomial                         |
//! |--------------|--------------------------------------------|
//! | 2            | t² + t + 1                                 |
//! | p ≡ 3 mod 4  | t² + 1                                     |
//! | p ≡ 1 mod 4  | t² − s, s the least quadratic non-residue  |

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest supported characteristic.
pub const MAX_PRIME: u8 = 97;

const fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

const fn pow_mod(mut base: u32, mut exp: u32, m: u32) -> u32 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

const fn least_nonresidue(p: u32) -> u32 {
    let mut s = 2;
    while s < p {
        if pow_mod(s, (p - 1) / 2, p) == p - 1 {
            return s;
        }
        s += 1;
    }
    0
}

/// `t² = c1·t + c0` for the fixed minimal polynomial of GF(p²).
const fn quad_reduction(p: u32) -> (u32, u32) {
    if p == 2 {
        (1, 1)
    } else if p % 4 == 3 {
        (0, p - 1)
    } else {
        (0, least_nonresidue(p))
    }
}

const REDUCTION: [(u8, u8); 98] = {
    let mut table = [(0u8, 0u8); 98];
    let mut p = 2;
    while p < 98 {
        if is_prime(p) {
            let (c1, c0) = quad_reduction(p);
            table[p as usize] = (c1 as u8, c0 as u8);
        }
        p += 1;
    }
    table
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u8),
    Quadratic(u8),
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        Self::check_prime(p).map(FieldSpec::Prime)
    }

    pub fn quadratic(p: u32) -> Result<Self> {
        Self::check_prime(p).map(FieldSpec::Quadratic)
    }

    fn check_prime(p: u32) -> Result<u8> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p > MAX_PRIME as u32 {
            return Err(Error::InvalidField(format!(
                "p = {p} exceeds the supported maximum {MAX_PRIME}"
            )));
        }
        Ok(p as u8)
    }

    pub fn characteristic(&self) -> u32 {
        match *self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) | FieldSpec::Quadratic(p) => p as u32,
        }
    }

    /// Number of elements, `None` for ℚ.
    pub fn order(&self) -> Option<u64> {
        match *self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(p as u64),
            FieldSpec::Quadratic(p) => Some(p as u64 * p as u64),
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, FieldSpec::Rationals)
    }

    pub fn zero(&self) -> FieldScalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldScalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldScalar {
        match *self {
            FieldSpec::Rationals => FieldScalar::Rational(BigRational::from_integer(v.into())),
            FieldSpec::Prime(p) => FieldScalar::Prime {
                p,
                v: v.rem_euclid(p as i64) as u8,
            },
            FieldSpec::Quadratic(p) => FieldScalar::Quadratic {
                p,
                a: 0,
                b: v.rem_euclid(p as i64) as u8,
            },
        }
    }

    /// Rational `num/den` over ℚ, or its image in a finite field.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldScalar> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    /// The generator `t` of GF(p²) as the coordinate pair (1, 0).
    pub fn generator(&self) -> Option<FieldScalar> {
        match *self {
            FieldSpec::Quadratic(p) => Some(FieldScalar::Quadratic { p, a: 1, b: 0 }),
            _ => None,
        }
    }

    /// All elements in canonical order; `None` for ℚ.
    pub fn elements(&self) -> Option<Vec<FieldScalar>> {
        match *self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some((0..p).map(|v| FieldScalar::Prime { p, v }).collect()),
            FieldSpec::Quadratic(p) => Some(
                (0..p)
                    .flat_map(|a| (0..p).map(move |b| FieldScalar::Quadratic { p, a, b }))
                    .collect(),
            ),
        }
    }

    /// Element with the given index in the canonical enumeration order.
    pub fn element(&self, index: u64) -> FieldScalar {
        match *self {
            FieldSpec::Rationals => panic!("ℚ has no element enumeration"),
            FieldSpec::Prime(p) => FieldScalar::Prime { p, v: index as u8 },
            FieldSpec::Quadratic(p) => FieldScalar::Quadratic {
                p,
                a: (index / p as u64) as u8,
                b: (index % p as u64) as u8,
            },
        }
    }

    pub fn extend_to_quadratic(&self) -> Result<FieldSpec> {
        match *self {
            FieldSpec::Prime(p) => Ok(FieldSpec::Quadratic(p)),
            other => Err(Error::Unsupported(format!(
                "quadratic extension is only defined for prime fields, not {other}"
            ))),
        }
    }

    /// Minimal polynomial of the GF(p²) generator, rendered as text.
    pub fn minimal_polynomial(p: u8) -> Result<String> {
        FieldSpec::quadratic(p as u32)?;
        Ok(if p == 2 {
            "t^2+t+1".to_string()
        } else if p % 4 == 3 {
            "t^2+1".to_string()
        } else {
            format!("t^2-{}", REDUCTION[p as usize].1)
        })
    }

    pub fn parse_scalar(&self, text: &str) -> Result<FieldScalar> {
        let bad = || Error::ParseScalar {
            text: text.to_string(),
            field: *self,
        };
        let s = text.trim();
        match *self {
            FieldSpec::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let num: BigInt = num.parse().map_err(|_| bad())?;
                let den: BigInt = den.parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(FieldScalar::Rational(BigRational::new(num, den)))
            }
            FieldSpec::Prime(p) => {
                let v: i64 = s.parse().map_err(|_| bad())?;
                if !(0..p as i64).contains(&v) {
                    return Err(bad());
                }
                Ok(FieldScalar::Prime { p, v: v as u8 })
            }
            FieldSpec::Quadratic(p) => {
                let inner = s
                    .strip_prefix('[')
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(bad)?;
                let (a, b) = inner.split_once(',').ok_or_else(bad)?;
                let a: i64 = a.trim().parse().map_err(|_| bad())?;
                let b: i64 = b.trim().parse().map_err(|_| bad())?;
                if !(0..p as i64).contains(&a) || !(0..p as i64).contains(&b) {
                    return Err(bad());
                }
                Ok(FieldScalar::Quadratic {
                    p,
                    a: a as u8,
                    b: b as u8,
                })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Quadratic(p) => write!(f, "GF({p}^2)"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t, "Q" | "QQ" | "rationals") {
            return Ok(FieldSpec::Rationals);
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidField(s.to_string()))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidField(s.to_string()))
        };
        match inner.split_once('^') {
            Some((p, "2")) => FieldSpec::quadratic(parse(p)?),
            Some(_) => Err(Error::InvalidField(s.to_string())),
            None => FieldSpec::prime(parse(inner)?),
        }
    }
}

/// An exact field element. Values are always normalized: fractions in lowest
/// terms with positive denominator, residues in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Rational(BigRational),
    Prime { p: u8, v: u8 },
    Quadratic { p: u8, a: u8, b: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuadRoots {
    /// Both roots, `r1 <= r2` in canonical order; equal for a double root.
    Split(FieldScalar, FieldScalar),
    NotSplit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldScalar {
    pub fn spec(&self) -> FieldSpec {
        match *self {
            FieldScalar::Rational(_) => FieldSpec::Rationals,
            FieldScalar::Prime { p, .. } => FieldSpec::Prime(p),
            FieldScalar::Quadratic { p, .. } => FieldSpec::Quadratic(p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_zero(),
            FieldScalar::Prime { v, .. } => *v == 0,
            FieldScalar::Quadratic { a, b, .. } => *a == 0 && *b == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_one(),
            FieldScalar::Prime { v, .. } => *v == 1,
            FieldScalar::Quadratic { a, b, .. } => *a == 0 && *b == 1,
        }
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::FieldMismatch {
            left: self.spec(),
            right: other.spec(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        use FieldScalar::*;
        match (self, other) {
            (Rational(x), Rational(y)) => Ok(Rational(x + y)),
            (Prime { p, v }, Prime { p: q, v: w }) if p == q => Ok(Prime {
                p: *p,
                v: ((*v as u16 + *w as u16) % *p as u16) as u8,
            }),
            (Quadratic { p, a, b }, Quadratic { p: q, a: c, b: d }) if p == q => {
                let m = *p as u16;
                Ok(Quadratic {
                    p: *p,
                    a: ((*a as u16 + *c as u16) % m) as u8,
                    b: ((*b as u16 + *d as u16) % m) as u8,
                })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        if self.spec() != other.spec() {
            return Err(self.mismatch(other));
        }
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        use FieldScalar::*;
        match (self, other) {
            (Rational(x), Rational(y)) => Ok(Rational(x * y)),
            (Prime { p, v }, Prime { p: q, v: w }) if p == q => Ok(Prime {
                p: *p,
                v: ((*v as u16 * *w as u16) % *p as u16) as u8,
            }),
            (Quadratic { p, a, b }, Quadratic { p: q, a: c, b: d }) if p == q => {
                let m = *p as u32;
                let (c1, c0) = REDUCTION[*p as usize];
                let (a, b, c, d) = (*a as u32, *b as u32, *c as u32, *d as u32);
                // (a t + b)(c t + d) = ac t² + (ad + bc) t + bd, with t² = c1 t + c0
                let ac = a * c % m;
                let lin = (ac * c1 as u32 + a * d + b * c) % m;
                let cst = (ac * c0 as u32 + b * d) % m;
                Ok(Quadratic {
                    p: *p,
                    a: lin as u8,
                    b: cst as u8,
                })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if self.spec() != other.spec() {
            return Err(self.mismatch(other));
        }
        self.checked_mul(&other.inv()?)
    }

    /// Exact `a op b`.
    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        match op {
            ArithOp::Add => self.checked_add(other),
            ArithOp::Sub => self.checked_sub(other),
            ArithOp::Mul => self.checked_mul(other),
            ArithOp::Div => self.checked_div(other),
        }
    }

    fn neg_ref(&self) -> Self {
        use FieldScalar::*;
        match self {
            Rational(x) => Rational(-x),
            Prime { p, v } => Prime {
                p: *p,
                v: ((*p - *v) % *p),
            },
            Quadratic { p, a, b } => Quadratic {
                p: *p,
                a: (*p - *a) % *p,
                b: (*p - *b) % *p,
            },
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldScalar::Rational(x) => FieldScalar::Rational(x.recip()),
            FieldScalar::Prime { p, v } => FieldScalar::Prime {
                p: *p,
                v: pow_mod(*v as u32, *p as u32 - 2, *p as u32) as u8,
            },
            FieldScalar::Quadratic { p, .. } => {
                let q = *p as u64 * *p as u64;
                self.pow(q - 2)
            }
        })
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = self.spec().one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Canonical total order: ℚ numerically, GF(p) by residue, GF(p²)
    /// lexicographically on the `(a, b)` coordinates.
    pub fn order(&self, other: &Self) -> Result<Ordering> {
        if self.spec() != other.spec() {
            return Err(self.mismatch(other));
        }
        Ok(self.cmp(other))
    }

    /// Image of a GF(p) element in GF(p²): `r ↦ (0, r)`.
    pub fn embed(&self) -> Result<Self> {
        match *self {
            FieldScalar::Prime { p, v } => Ok(FieldScalar::Quadratic { p, a: 0, b: v }),
            _ => Err(Error::Unsupported(format!(
                "cannot embed an element of {} into a quadratic extension",
                self.spec()
            ))),
        }
    }

    /// Whether the element lies in the prime subfield (always true outside GF(p²)).
    pub fn in_prime_subfield(&self) -> bool {
        !matches!(self, FieldScalar::Quadratic { a, .. } if *a != 0)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldScalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Index in the canonical element enumeration (finite fields only).
    pub fn index(&self) -> Option<u64> {
        match *self {
            FieldScalar::Rational(_) => None,
            FieldScalar::Prime { v, .. } => Some(v as u64),
            FieldScalar::Quadratic { p, a, b } => Some(a as u64 * p as u64 + b as u64),
        }
    }
}

impl Ord for FieldScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        use FieldScalar::*;
        match (self, other) {
            (Rational(x), Rational(y)) => x.cmp(y),
            (Prime { p, v }, Prime { p: q, v: w }) => (p, v).cmp(&(q, w)),
            (Quadratic { p, a, b }, Quadratic { p: q, a: c, b: d }) => (p, a, b).cmp(&(q, c, d)),
            _ => self.spec().cmp(&other.spec()),
        }
    }
}

impl PartialOrd for FieldScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldScalar::Prime { v, .. } => write!(f, "{v}"),
            FieldScalar::Quadratic { a, b, .. } => write!(f, "[{a},{b}]"),
        }
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Operator impls panic on mixed fields; use the `checked_*` methods when the
// operands are not known to share a field.
macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&FieldScalar> for &FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: &FieldScalar) -> FieldScalar {
                self.$checked(rhs).expect(concat!("FieldScalar::", stringify!($m)))
            }
        }
        impl $tr<FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: FieldScalar) -> FieldScalar {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        self.neg_ref()
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        self.neg_ref()
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// Roots of the monic quadratic `t² + b·t + c`.
pub fn quadratic_roots(b: &FieldScalar, c: &FieldScalar) -> Result<QuadRoots> {
    let spec = b.spec();
    if spec != c.spec() {
        return Err(b.mismatch(c));
    }
    let first = match spec {
        FieldSpec::Rationals => {
            let (bq, cq) = (b.as_rational().unwrap(), c.as_rational().unwrap());
            let four = BigRational::from_integer(4.into());
            let disc = bq * bq - four * cq;
            rational_sqrt(&disc).map(|s| {
                FieldScalar::Rational((-bq - s) / BigRational::from_integer(2.into()))
            })
        }
        // Exhaustive scan; valid in characteristic 2 where the quadratic formula is not.
        _ => spec
            .elements()
            .unwrap()
            .into_iter()
            .find(|x| (&(x * x) + &(b * x) + c.clone()).is_zero()),
    };
    Ok(match first {
        None => QuadRoots::NotSplit,
        Some(r1) => {
            let r2 = &(-b) - &r1;
            if r1 <= r2 {
                QuadRoots::Split(r1, r2)
            } else {
                QuadRoots::Split(r2, r1)
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> FieldScalar {
        FieldSpec::Rationals.from_ratio(n, d).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        assert_eq!(q(5, 6).to_string(), "5/6");
        assert_eq!(q(-4, 2).to_string(), "-2");
    }

    #[test]
    fn characteristic_two() {
        let f = FieldSpec::prime(2).unwrap();
        assert!((&f.one() + &f.one()).is_zero());
    }

    #[test]
    fn gf4_square_of_t_plus_one() {
        let f = FieldSpec::quadratic(2).unwrap();
        let t = f.generator().unwrap();
        let t1 = &t + &f.one();
        // (t+1)² = t² + 1 = (t + 1) + 1 = t
        assert_eq!(&t1 * &t1, t);
    }

    #[test]
    fn division_errors() {
        let f = FieldSpec::prime(5).unwrap();
        assert!(matches!(
            f.one().checked_div(&f.zero()),
            Err(Error::DivisionByZero)
        ));
        let g = FieldSpec::prime(3).unwrap();
        assert!(matches!(
            f.one().checked_add(&g.one()),
            Err(Error::FieldMismatch { .. })
        ));
        assert!(f.one().arith(&f.from_i64(2), ArithOp::Div).is_ok());
    }

    #[test]
    fn roots_over_q() {
        let f = FieldSpec::Rationals;
        assert_eq!(
            quadratic_roots(&f.from_i64(-3), &f.from_i64(2)).unwrap(),
            QuadRoots::Split(f.from_i64(1), f.from_i64(2))
        );
        assert_eq!(
            quadratic_roots(&f.from_i64(0), &f.from_i64(1)).unwrap(),
            QuadRoots::NotSplit
        );
        // t² - 1/4
        assert_eq!(
            quadratic_roots(&f.zero(), &q(-1, 4)).unwrap(),
            QuadRoots::Split(q(-1, 2), q(1, 2))
        );
        // t² - 2 has irrational roots
        assert_eq!(
            quadratic_roots(&f.zero(), &f.from_i64(-2)).unwrap(),
            QuadRoots::NotSplit
        );
    }

    #[test]
    fn roots_over_gf2_and_gf4() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(
            quadratic_roots(&f2.one(), &f2.one()).unwrap(),
            QuadRoots::NotSplit
        );
        let f4 = f2.extend_to_quadratic().unwrap();
        let t = f4.generator().unwrap();
        let t1 = &t + &f4.one();
        assert_eq!(
            quadratic_roots(&f4.one(), &f4.one()).unwrap(),
            QuadRoots::Split(t, t1)
        );
        // double root: t² over GF(2)
        assert_eq!(
            quadratic_roots(&f2.zero(), &f2.zero()).unwrap(),
            QuadRoots::Split(f2.zero(), f2.zero())
        );
    }

    #[test]
    fn scalar_order_examples() {
        assert_eq!(q(1, 3).order(&q(1, 2)).unwrap(), Ordering::Less);
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(
            f5.from_i64(2).order(&f5.from_i64(2)).unwrap(),
            Ordering::Equal
        );
        let f4 = FieldSpec::quadratic(2).unwrap();
        assert_eq!(
            f4.generator().unwrap().order(&f4.one()).unwrap(),
            Ordering::Greater
        );
        assert!(q(1, 3).order(&f5.one()).is_err());
    }

    #[test]
    fn extension_and_embedding() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(f2.extend_to_quadratic().unwrap(), FieldSpec::Quadratic(2));
        assert_eq!(
            f2.one().embed().unwrap(),
            FieldScalar::Quadratic { p: 2, a: 0, b: 1 }
        );
        assert!(FieldSpec::Rationals.extend_to_quadratic().is_err());
        assert!(FieldSpec::Quadratic(3).extend_to_quadratic().is_err());
        let f3 = FieldSpec::prime(3).unwrap();
        for x in f3.elements().unwrap() {
            for y in f3.elements().unwrap() {
                assert_eq!(
                    &x.embed().unwrap() * &y.embed().unwrap(),
                    (&x * &y).embed().unwrap()
                );
                assert_eq!(
                    &x.embed().unwrap() + &y.embed().unwrap(),
                    (&x + &y).embed().unwrap()
                );
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let f4 = FieldSpec::quadratic(2).unwrap();
        assert_eq!(f4.parse_scalar("[1,0]").unwrap(), f4.generator().unwrap());
        assert_eq!(f4.generator().unwrap().to_string(), "[1,0]");
        assert!(f4.parse_scalar("[2,0]").is_err());
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.parse_scalar("6").unwrap(), f7.from_i64(-1));
        assert!(f7.parse_scalar("7").is_err());
        assert_eq!(FieldSpec::Rationals.parse_scalar("-6/4").unwrap(), q(-3, 2));
        assert!(FieldSpec::Rationals.parse_scalar("1/0").is_err());
        for s in ["Q", "GF(2)", "GF(97^2)"] {
            assert_eq!(s.parse::<FieldSpec>().unwrap().to_string(), s);
        }
        assert!("GF(4)".parse::<FieldSpec>().is_err());
        assert!("GF(101)".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn minimal_polynomials_are_irreducible() {
        for p in (2..=MAX_PRIME).filter(|&p| is_prime(p as u32)) {
            let f = FieldSpec::prime(p as u32).unwrap();
            let (c1, c0) = REDUCTION[p as usize];
            // t² - c1 t - c0 has no root in GF(p)
            let b = -f.from_i64(c1 as i64);
            let c = -f.from_i64(c0 as i64);
            assert_eq!(quadratic_roots(&b, &c).unwrap(), QuadRoots::NotSplit, "p={p}");
        }
        assert_eq!(FieldSpec::minimal_polynomial(2).unwrap(), "t^2+t+1");
        assert_eq!(FieldSpec::minimal_polynomial(3).unwrap(), "t^2+1");
        assert_eq!(FieldSpec::minimal_polynomial(5).unwrap(), "t^2-2");
        assert_eq!(FieldSpec::minimal_polynomial(13).unwrap(), "t^2-2");
        assert_eq!(FieldSpec::minimal_polynomial(17).unwrap(), "t^2-3");
    }

    #[test]
    fn inverses_in_gf9() {
        let f9 = FieldSpec::quadratic(3).unwrap();
        for x in f9.elements().unwrap().into_iter().filter(|x| !x.is_zero()) {
            assert!((&x * &x.inv().unwrap()).is_one());
        }
    }
}
