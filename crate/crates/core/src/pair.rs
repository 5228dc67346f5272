use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::SqMatrix;

/// A commuting pair of nilpotent matrices over one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixPair {
    a: SqMatrix,
    b: SqMatrix,
}

impl MatrixPair {
    pub fn new(a: SqMatrix, b: SqMatrix) -> Result<Self> {
        if a.spec() != b.spec() {
            return Err(Error::FieldMismatch {
                left: a.spec(),
                right: b.spec(),
            });
        }
        if a.n() != b.n() {
            return Err(Error::ShapeMismatch(format!(
                "A is {0}x{0}, B is {1}x{1}",
                a.n(),
                b.n()
            )));
        }
        if !a.is_nilpotent() {
            return Err(Error::NotNilpotent("A".into()));
        }
        if !b.is_nilpotent() {
            return Err(Error::NotNilpotent("B".into()));
        }
        if !a.commutes_with(&b) {
            return Err(Error::NotCommuting);
        }
        Ok(MatrixPair { a, b })
    }

    pub fn a(&self) -> &SqMatrix {
        &self.a
    }

    pub fn b(&self) -> &SqMatrix {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn spec(&self) -> FieldSpec {
        self.a.spec()
    }

    /// `(x⁻¹ a x, x⁻¹ b x)`.
    pub fn conjugate_by(&self, x: &SqMatrix) -> Result<MatrixPair> {
        let xi = x.inverse()?;
        Ok(self.conjugate_with_inverse(x, &xi))
    }

    pub(crate) fn conjugate_with_inverse(&self, x: &SqMatrix, xi: &SqMatrix) -> MatrixPair {
        MatrixPair {
            a: &(xi * &self.a) * x,
            b: &(xi * &self.b) * x,
        }
    }

    pub fn submatrix(&self, idx: &[usize]) -> Result<MatrixPair> {
        Ok(MatrixPair {
            a: self.a.submatrix(idx)?,
            b: self.b.submatrix(idx)?,
        })
    }

    /// The same pair over the quadratic extension of its prime field.
    pub fn embed(&self) -> Result<MatrixPair> {
        Ok(MatrixPair {
            a: self.a.embed()?,
            b: self.b.embed()?,
        })
    }

    /// True when both matrices are block diagonal for consecutive blocks of the given sizes.
    pub fn is_block_diagonal(&self, sizes: &[usize]) -> bool {
        let mut owner = Vec::with_capacity(self.n());
        for (k, &s) in sizes.iter().enumerate() {
            owner.extend(std::iter::repeat(k).take(s));
        }
        if owner.len() != self.n() {
            return false;
        }
        [&self.a, &self.b].iter().all(|m| {
            (0..self.n()).all(|i| (0..self.n()).all(|j| owner[i] == owner[j] || m[(i, j)].is_zero()))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn validation_errors() {
        let j = SqMatrix::jordan_block(4, Q);
        let e = SqMatrix::unit(4, Q, 3, 0);
        assert!(matches!(MatrixPair::new(j.clone(), e), Err(Error::NotCommuting)));
        assert!(matches!(
            MatrixPair::new(j.clone(), SqMatrix::identity(4, Q)),
            Err(Error::NotNilpotent(_))
        ));
        assert!(matches!(
            MatrixPair::new(j.clone(), SqMatrix::zeros(3, Q)),
            Err(Error::ShapeMismatch(_))
        ));
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(matches!(
            MatrixPair::new(j.clone(), SqMatrix::zeros(4, f2)),
            Err(Error::FieldMismatch { .. })
        ));
        assert!(MatrixPair::new(j.clone(), j.pow(2)).is_ok());
    }

    #[test]
    fn block_diagonal_detection() {
        let a = SqMatrix::unit(4, Q, 0, 1);
        let p = MatrixPair::new(a, SqMatrix::unit(4, Q, 2, 3)).unwrap();
        assert!(p.is_block_diagonal(&[2, 2]));
        assert!(!p.is_block_diagonal(&[1, 3]));
    }
}
