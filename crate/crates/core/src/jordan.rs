//! Nilpotent Jordan normal forms and the complete 2x2 Jordan form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{quadratic_roots, FieldScalar, QuadRoots};
use crate::matrix::{echelon, SqMatrix, Vector};
use crate::poly::Poly;

/// Jordan block sizes of a nilpotent matrix, weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JordanType {
    partition: Vec<usize>,
}

impl JordanType {
    pub fn new(mut partition: Vec<usize>) -> Result<Self> {
        if partition.contains(&0) || partition.is_empty() {
            return Err(Error::ShapeMismatch("partition parts must be positive".into()));
        }
        partition.sort_unstable_by(|a, b| b.cmp(a));
        Ok(JordanType { partition })
    }

    pub fn parts(&self) -> &[usize] {
        &self.partition
    }

    pub fn n(&self) -> usize {
        self.partition.iter().sum()
    }

    /// Largest block size, i.e. the nilpotency index.
    pub fn index(&self) -> usize {
        self.partition[0]
    }

    /// Σᵢⱼ min(λᵢ, λⱼ), the dimension of the commutant.
    pub fn commutant_dim(&self) -> usize {
        let p = &self.partition;
        p.iter()
            .flat_map(|a| p.iter().map(move |b| (*a).min(*b)))
            .sum()
    }

    /// The Jordan matrix with these block sizes in order.
    pub fn jordan_matrix(&self, spec: crate::field::FieldSpec) -> SqMatrix {
        let blocks: Vec<SqMatrix> = self
            .partition
            .iter()
            .map(|&k| SqMatrix::jordan_block(k, spec))
            .collect();
        SqMatrix::block_diag(spec, &blocks).expect("partition of at most 4")
    }

    /// Partition recovered from the rank sequence of powers of `a`:
    /// the number of blocks of size ≥ k is rank(aᵏ⁻¹) − rank(aᵏ).
    pub fn from_rank_sequence(a: &SqMatrix) -> Result<Self> {
        if !a.is_nilpotent() {
            return Err(Error::NotNilpotent(format!("{a:?}")));
        }
        let n = a.n();
        let ranks: Vec<usize> = (0..=n as u32).map(|k| a.pow(k).rank()).collect();
        let at_least: Vec<usize> = (1..=n).map(|k| ranks[k - 1] - ranks[k]).collect();
        let mut parts = Vec::new();
        for k in (1..=n).rev() {
            let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
            parts.extend(std::iter::repeat(k).take(exactly));
        }
        JordanType::new(parts)
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.partition.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn in_span(span: &[Vector], v: &Vector, n: usize) -> bool {
    let mut rows = span.to_vec();
    rows.push(v.clone());
    echelon::rank(&rows, n) == echelon::rank(span, n)
}

/// Returns `(P, jt)` with `P⁻¹ a P` the Jordan matrix of type `jt`.
///
/// Chain tops are taken from the kernel bases of the powers of `a`, in the
/// order [`SqMatrix::kernel_basis`] produces them, from the longest chain
/// down. The columns of `P` for a chain with top `w` of length `L` are
/// `a^{L-1}w, …, aw, w`, so an input already in Jordan form gives `P = I`.
pub fn nilpotent_jnf(a: &SqMatrix) -> Result<(SqMatrix, JordanType)> {
    if !a.is_nilpotent() {
        return Err(Error::NotNilpotent(format!("{a:?}")));
    }
    let n = a.n();
    let spec = a.spec();
    let powers: Vec<SqMatrix> = (0..=n as u32).map(|k| a.pow(k)).collect();
    let index = (0..=n).find(|&k| powers[k].is_zero()).unwrap();
    let mut tops: Vec<(usize, Vector)> = Vec::new();
    for level in (1..=index).rev() {
        // everything below this level plus what longer chains already cover
        let mut used = powers[level - 1].kernel_basis();
        for (len, w) in &tops {
            used.push(powers[len - level].mul_vec(w));
        }
        for v in powers[level].kernel_basis() {
            if !in_span(&used, &v, n) {
                used.push(v.clone());
                tops.push((level, v));
            }
        }
    }
    let mut cols = Vec::with_capacity(n);
    let mut parts = Vec::with_capacity(tops.len());
    for (len, w) in &tops {
        for k in (0..*len).rev() {
            cols.push(powers[k].mul_vec(w));
        }
        parts.push(*len);
    }
    let p = SqMatrix::from_columns(spec, &cols)?;
    Ok((p, JordanType::new(parts)?))
}

/// Jordan form of a 2x2 matrix that splits over its field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Form2 {
    /// `diag(λ, α)` with `λ ≤ α`.
    Diagonal(FieldScalar, FieldScalar),
    /// `[[λ, 1], [0, λ]]`.
    JordanBlock(FieldScalar),
}

impl Form2 {
    pub fn matrix(&self) -> SqMatrix {
        match self {
            Form2::Diagonal(l, a) => {
                let spec = l.spec();
                SqMatrix::from_rows(spec, vec![vec![l.clone(), spec.zero()], vec![spec.zero(), a.clone()]])
                    .unwrap()
            }
            Form2::JordanBlock(l) => {
                let spec = l.spec();
                SqMatrix::from_rows(spec, vec![vec![l.clone(), spec.one()], vec![spec.zero(), l.clone()]])
                    .unwrap()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Jnf2 {
    Split { form: Form2, p: SqMatrix },
    NotSplit { charpoly: Poly },
}

pub fn jnf_2x2(m: &SqMatrix) -> Result<Jnf2> {
    if m.n() != 2 {
        return Err(Error::ShapeMismatch(format!("expected 2x2, got {}x{}", m.n(), m.n())));
    }
    let spec = m.spec();
    let charpoly = m.char_poly();
    let roots = quadratic_roots(&charpoly.coeff(1), &charpoly.coeff(0))?;
    let (r1, r2) = match roots {
        QuadRoots::NotSplit => return Ok(Jnf2::NotSplit { charpoly }),
        QuadRoots::Split(r1, r2) => (r1, r2),
    };
    let id = SqMatrix::identity(2, spec);
    let shifted = |r: &FieldScalar| m - &id.scale(r).unwrap();
    if r1 != r2 {
        let v1 = shifted(&r1).kernel_basis().remove(0);
        let v2 = shifted(&r2).kernel_basis().remove(0);
        let p = SqMatrix::from_columns(spec, &[v1, v2])?;
        return Ok(Jnf2::Split {
            form: Form2::Diagonal(r1, r2),
            p,
        });
    }
    let nil = shifted(&r1);
    if nil.is_zero() {
        return Ok(Jnf2::Split {
            form: Form2::Diagonal(r1.clone(), r1),
            p: id,
        });
    }
    let (p, _) = nilpotent_jnf(&nil)?;
    Ok(Jnf2::Split {
        form: Form2::JordanBlock(r1),
        p,
    })
}
