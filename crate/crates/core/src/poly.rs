//! Dense univariate polynomials over a [`FieldSpec`].

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::field::{FieldScalar, FieldSpec};

/// Largest integer the rational root search will factor by trial division.
const FACTOR_LIMIT: u64 = 1 << 40;

/// Coefficients in ascending degree, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    spec: FieldSpec,
    coeffs: Vec<FieldScalar>,
}

impl Poly {
    pub fn new(spec: FieldSpec, mut coeffs: Vec<FieldScalar>) -> Self {
        while coeffs.last().is_some_and(FieldScalar::is_zero) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.spec() == spec));
        Poly { spec, coeffs }
    }

    pub fn from_ints(spec: FieldSpec, ascending: &[i64]) -> Self {
        Poly::new(spec, ascending.iter().map(|&c| spec.from_i64(c)).collect())
    }

    pub fn zero(spec: FieldSpec) -> Self {
        Poly::new(spec, Vec::new())
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.spec.zero())
    }

    pub fn leading(&self) -> Option<&FieldScalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &FieldScalar) -> FieldScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.spec.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            self.spec,
            (0..len).map(|k| &self.coeff(k) + &other.coeff(k)).collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            self.spec,
            (0..len).map(|k| &self.coeff(k) - &other.coeff(k)).collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.spec);
        }
        let mut out = vec![self.spec.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(self.spec, out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[d].inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.spec.zero(); rem.len().saturating_sub(d).max(1)];
        while rem.len() > d && !rem.is_empty() {
            let k = rem.len() - 1;
            let factor = &rem[k] * &lead_inv;
            if !factor.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    let idx = k - d + j;
                    rem[idx] = &rem[idx] - &(&factor * c);
                }
                quot[k - d] = factor;
            }
            rem.pop();
        }
        (Poly::new(self.spec, quot), Poly::new(self.spec, rem))
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().unwrap();
                Poly::new(self.spec, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.spec,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &self.spec.from_i64(k as i64))
                .collect(),
        )
    }

    /// Product of the distinct irreducible factors (characteristic 0 only).
    pub fn squarefree_part(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Distinct roots in the field, in canonical order.
    ///
    /// Finite fields are scanned exhaustively. Over ℚ the rational root
    /// theorem is applied; `None` means the coefficients were too large to
    /// factor.
    pub fn roots(&self) -> Option<Vec<FieldScalar>> {
        if self.is_zero() {
            return None;
        }
        let mut out = match self.spec.elements() {
            Some(all) => all.into_iter().filter(|x| self.eval(x).is_zero()).collect(),
            None => self.rational_roots()?,
        };
        out.sort();
        out.dedup();
        Some(out)
    }

    fn rational_roots(&self) -> Option<Vec<FieldScalar>> {
        let rats: Vec<&BigRational> = self.coeffs.iter().map(|c| c.as_rational().unwrap()).collect();
        let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let mut ints: Vec<BigInt> = rats
            .iter()
            .map(|r| (*r * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut roots = Vec::new();
        if ints[0].is_zero() {
            roots.push(self.spec.zero());
            while ints.first().is_some_and(Zero::is_zero) {
                ints.remove(0);
            }
        }
        if ints.len() <= 1 {
            return Some(roots);
        }
        let small = |x: &BigInt| x.abs().to_u64().filter(|&v| v <= FACTOR_LIMIT);
        let c0 = small(&ints[0])?;
        let cd = small(ints.last().unwrap())?;
        let reduced = Poly::new(
            self.spec,
            ints.iter()
                .map(|i| FieldScalar::Rational(BigRational::from_integer(i.clone())))
                .collect(),
        );
        for p in divisors(c0) {
            for q in divisors(cd) {
                for sign in [-1i64, 1] {
                    let cand = FieldScalar::Rational(BigRational::new(
                        BigInt::from(p) * sign,
                        BigInt::from(q),
                    ));
                    if reduced.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        Some(roots)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut text = c.to_string();
            let negative = text.starts_with('-');
            if negative {
                text.remove(0);
            }
            if negative {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let unit = text == "1" || (matches!(c, FieldScalar::Quadratic { .. }) && c.is_one());
            if k == 0 {
                write!(f, "{text}")?;
                continue;
            }
            if !unit {
                if text.contains('/') {
                    write!(f, "({text})")?;
                } else {
                    write!(f, "{text}")?;
                }
            }
            if k == 1 {
                write!(f, "t")?;
            } else {
                write!(f, "t^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self} over {})", self.spec)
    }
}
