//! Decomposability of a pair decided from its commutant algebra, without
//! using the case analysis of the canonicalizer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::commutant::pair_commutant;
use crate::error::{Error, Result};
use crate::field::{FieldScalar, FieldSpec};
use crate::matrix::{echelon, LinSpace, SqMatrix, Vector};
use crate::pair::MatrixPair;

/// Largest commutant (in elements) scanned exhaustively.
pub const SCAN_BUDGET: u64 = 1 << 20;

const SEED: u64 = 0x6e69_6c70_6169_72;
const RANDOM_TRIALS: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    IdempotentFound,
    LocalAlgebra,
    ExhaustiveScan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Indecomposable,
    /// Conjugating by `p` block-diagonalizes both matrices with these block sizes.
    Decomposable { p: SqMatrix, sizes: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndecCertificate {
    pub verdict: Verdict,
    pub method: Method,
}

impl IndecCertificate {
    pub fn is_indecomposable(&self) -> bool {
        self.verdict == Verdict::Indecomposable
    }
}

/// Fitting decomposition `ker eⁿ ⊕ im eⁿ` for `e` in the pair commutant.
///
/// Returns the basis (kernel first) and the kernel dimension, or `None`
/// when `e` is nilpotent or invertible.
pub fn fitting_split(p: &MatrixPair, e: &SqMatrix) -> Option<(SqMatrix, usize)> {
    let n = p.n();
    let en = e.pow(n as u32);
    let rank = en.rank();
    if rank == 0 || rank == n {
        return None;
    }
    let mut cols = en.kernel_basis();
    let k = cols.len();
    cols.extend(en.column_space_basis());
    let basis = SqMatrix::from_columns(p.spec(), &cols).ok()?;
    Some((basis, k))
}

fn split_verdict(p: &MatrixPair, basis: SqMatrix, k: usize) -> Result<IndecCertificate> {
    let sizes = vec![k, p.n() - k];
    let conj = p.conjugate_by(&basis)?;
    if !conj.is_block_diagonal(&sizes) {
        return Err(Error::Internal(
            "Fitting basis does not block-diagonalize the pair".into(),
        ));
    }
    Ok(IndecCertificate {
        verdict: Verdict::Decomposable { p: basis, sizes },
        method: Method::IdempotentFound,
    })
}

/// Tries `e − cI` for every root `c` of the characteristic polynomial of `e`,
/// and `e` itself.
fn try_element(p: &MatrixPair, e: &SqMatrix) -> Option<(SqMatrix, usize)> {
    if let Some(found) = fitting_split(p, e) {
        return Some(found);
    }
    let id = SqMatrix::identity(p.n(), p.spec());
    for c in e.char_poly().roots().unwrap_or_default() {
        if let Some(found) = fitting_split(p, &(e - &id.scale(&c).unwrap())) {
            return Some(found);
        }
    }
    None
}

fn random_scalar(spec: FieldSpec, rng: &mut ChaCha8Rng) -> FieldScalar {
    match spec.order() {
        Some(q) => spec.element(rng.gen_range(0..q)),
        None => spec.from_i64(rng.gen_range(-3..=3)),
    }
}

fn random_element(space: &LinSpace, rng: &mut ChaCha8Rng) -> SqMatrix {
    let coeffs: Vec<FieldScalar> = (0..space.dim())
        .map(|_| random_scalar(space.spec(), rng))
        .collect();
    space.combine(&coeffs)
}

/// Radical of the commutant as the kernel of the trace form.
///
/// Only valid when the characteristic is 0 or exceeds `n`.
fn trace_radical(space: &LinSpace) -> Result<LinSpace> {
    let spec = space.spec();
    let basis = space.basis();
    let trace = |m: &SqMatrix| (0..m.n()).fold(spec.zero(), |acc, i| &acc + &m[(i, i)]);
    let gram: Vec<Vector> = basis
        .iter()
        .map(|x| basis.iter().map(|y| trace(&(x * y))).collect())
        .collect();
    let kernel = echelon::kernel(&gram, basis.len(), spec);
    LinSpace::new(
        space.n(),
        spec,
        kernel.iter().map(|c| space.combine(c)).collect(),
    )
}

fn trace_form_valid(spec: FieldSpec, n: usize) -> bool {
    let ch = spec.characteristic();
    ch == 0 || ch as usize > n
}

/// Decides whether the pair is indecomposable over its own field.
///
/// Over finite fields with a commutant of at most [`SCAN_BUDGET`] elements
/// the scan is exhaustive. Otherwise, when the characteristic is 0 or larger
/// than `n`, the radical is the trace-form kernel and the verdict follows
/// from the semisimple quotient. `Inconclusive` is returned when neither
/// applies and no split was found.
pub fn is_indecomposable(p: &MatrixPair) -> Result<IndecCertificate> {
    let n = p.n();
    let spec = p.spec();
    let space = pair_commutant(p);
    if n == 1 {
        return Ok(IndecCertificate {
            verdict: Verdict::Indecomposable,
            method: Method::LocalAlgebra,
        });
    }
    for e in space.basis() {
        if let Some((basis, k)) = try_element(p, e) {
            return split_verdict(p, basis, k);
        }
    }
    for (i, x) in space.basis().iter().enumerate() {
        for y in &space.basis()[i..] {
            if let Some((basis, k)) = try_element(p, &(x * y)) {
                return split_verdict(p, basis, k);
            }
        }
    }

    if let Some(total) = space.cardinality().filter(|&c| c <= SCAN_BUDGET) {
        let found = (0..total)
            .into_par_iter()
            .find_map_first(|i| fitting_split(p, &space.element(i)));
        return match found {
            Some((basis, k)) => split_verdict(p, basis, k),
            None => Ok(IndecCertificate {
                verdict: Verdict::Indecomposable,
                method: Method::ExhaustiveScan,
            }),
        };
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    if trace_form_valid(spec, n) {
        let radical = trace_radical(&space)?;
        let quotient_dim = space.dim() - radical.dim();
        if quotient_dim == 1 {
            return Ok(IndecCertificate {
                verdict: Verdict::Indecomposable,
                method: Method::LocalAlgebra,
            });
        }
        let commutative = space.basis().iter().all(|x| {
            space
                .basis()
                .iter()
                .all(|y| radical.contains(&(&(x * y) - &(y * x))))
        });
        if commutative {
            // a generic element generates the quotient, a product of fields
            for _ in 0..RANDOM_TRIALS {
                let e = random_element(&space, &mut rng);
                let sqf = e.char_poly().squarefree_part();
                if sqf.degree() != Some(quotient_dim) {
                    continue;
                }
                let Some(roots) = sqf.roots() else { continue };
                if let Some(c) = roots.first() {
                    let id = SqMatrix::identity(n, spec);
                    if let Some((basis, k)) = fitting_split(p, &(&e - &id.scale(c)?)) {
                        return split_verdict(p, basis, k);
                    }
                } else if quotient_dim <= 3 {
                    // no roots and degree at most 3: irreducible, so the quotient is a field
                    return Ok(IndecCertificate {
                        verdict: Verdict::Indecomposable,
                        method: Method::LocalAlgebra,
                    });
                }
            }
        }
    }
    for _ in 0..RANDOM_TRIALS {
        let e = random_element(&space, &mut rng);
        if let Some((basis, k)) = try_element(p, &e) {
            return split_verdict(p, basis, k);
        }
    }
    Err(Error::Inconclusive(format!(
        "no split found in a commutant of dimension {} over {spec}",
        space.dim()
    )))
}
