//! Random scalars, matrices, canonical forms and pairs for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::canon::{build_canonical, BlockLabel, CanonForm, IndecBlock};
use crate::commutant::commutant;
use crate::field::{FieldScalar, FieldSpec};
use crate::matrix::SqMatrix;
use crate::pair::MatrixPair;

/// Uniform over a finite field; over ℚ an integer in `-2..=2`.
pub fn random_scalar<R: Rng + ?Sized>(spec: FieldSpec, rng: &mut R) -> FieldScalar {
    match spec.order() {
        Some(q) => spec.element(rng.gen_range(0..q)),
        None => spec.from_i64(rng.gen_range(-2..=2)),
    }
}

pub fn random_matrix<R: Rng + ?Sized>(n: usize, spec: FieldSpec, rng: &mut R) -> SqMatrix {
    let v = (0..n * n).map(|_| random_scalar(spec, rng)).collect();
    SqMatrix::from_vector(n, spec, v).expect("n at most 4")
}

/// Rejection-sampled invertible matrix with entries from [`random_scalar`].
pub fn random_invertible<R: Rng + ?Sized>(n: usize, spec: FieldSpec, rng: &mut R) -> SqMatrix {
    loop {
        let m = random_matrix(n, spec, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn labels_of_size(size: usize) -> Vec<BlockLabel> {
    BlockLabel::ALL
        .into_iter()
        .filter(|l| l.size() == size)
        .collect()
}

pub fn random_block<R: Rng + ?Sized>(size: usize, spec: FieldSpec, rng: &mut R) -> IndecBlock {
    let label = *labels_of_size(size).choose(rng).expect("sizes 1 to 4");
    let params = (0..label.param_count())
        .map(|_| random_scalar(spec, rng))
        .collect();
    IndecBlock::new(label, params).expect("parameter count")
}

/// A canonical form on `n` points with random block sizes.
pub fn random_form<R: Rng + ?Sized>(n: usize, spec: FieldSpec, rng: &mut R) -> CanonForm {
    let mut left = n;
    let mut blocks = Vec::new();
    while left > 0 {
        let size = rng.gen_range(1..=left);
        blocks.push(random_block(size, spec, rng));
        left -= size;
    }
    CanonForm::new(blocks)
}

/// A random canonical pair conjugated by a random invertible matrix,
/// with the form it came from.
pub fn random_pair<R: Rng + ?Sized>(n: usize, spec: FieldSpec, rng: &mut R) -> (MatrixPair, CanonForm) {
    let cf = random_form(n, spec, rng);
    let p = build_canonical(&cf, spec).expect("canonical pairs are valid");
    let x = random_invertible(n, spec, rng);
    (p.conjugate_by(&x).expect("invertible"), cf)
}

/// A commuting nilpotent pair over ℚ with every entry in `-2..=2`, found by
/// sampling `A` and then `B` from the commutant of `A`.
pub fn small_entry_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> MatrixPair {
    let spec = FieldSpec::Rationals;
    let in_range = |m: &SqMatrix| {
        m.entries().iter().all(|x| {
            let r = x.as_rational().unwrap();
            r.is_integer() && r.to_integer() >= (-2).into() && r.to_integer() <= 2.into()
        })
    };
    loop {
        let a = loop {
            let m = if rng.gen_bool(0.5) {
                random_matrix(n, spec, rng)
            } else {
                // strictly upper triangular, conjugated by a permutation
                let mut m = random_matrix(n, spec, rng);
                for i in 0..n {
                    for j in 0..=i {
                        m.set(i, j, spec.zero());
                    }
                }
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(rng);
                m.submatrix(&perm).unwrap()
            };
            if m.is_nilpotent() {
                break m;
            }
        };
        let c = commutant(&a);
        for _ in 0..50 {
            let coeffs: Vec<FieldScalar> = (0..c.dim())
                .map(|_| spec.from_i64(rng.gen_range(-1..=1)))
                .collect();
            let b = c.combine(&coeffs);
            if in_range(&b) && b.is_nilpotent() {
                return MatrixPair::new(a, b).expect("commutes by construction");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for spec in [FieldSpec::Rationals, FieldSpec::prime(3).unwrap()] {
            for n in 1..=4 {
                let (p, cf) = random_pair(n, spec, &mut rng);
                assert_eq!(p.n(), n);
                assert_eq!(cf.n(), n);
            }
        }
        for n in 1..=3 {
            assert_eq!(small_entry_pair(n, &mut rng).n(), n);
        }
    }
}
