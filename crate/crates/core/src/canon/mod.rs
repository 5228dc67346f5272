//! Canonical forms of commuting nilpotent pairs under simultaneous similarity.

pub mod formulas;
mod reduce;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, NotSplit, Result};
use crate::field::{FieldScalar, FieldSpec};
use crate::jordan::nilpotent_jnf;
use crate::matrix::{SqMatrix, Vector};
use crate::pair::MatrixPair;

pub use reduce::{
    reduce_case1, reduce_case2, reduce_case3, reduce_case4, reduce_case5, DecomposeHint,
    Reduction,
};

/// Family of an indecomposable block.
///
/// Size-4 families carry their table numbers; the smaller ones are named
/// `size:letter`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockLabel {
    F11,
    F21,
    F22,
    F31,
    F32,
    F41,
    F42,
    F43,
    F51,
    /// `(J₃, λJ₃ + μJ₃²)`
    J3,
    /// `(E₁₂, E₁₃ + δE₃₂)`
    S3,
    /// `(E₁₂, E₃₂)`
    T3,
    /// `(0, J₃)`
    Z3,
    /// `(J₂, λJ₂)`
    J2,
    /// `(0, J₂)`
    Z2,
    /// `(0, 0)` of size 1
    Z1,
}

impl BlockLabel {
    pub const ALL: [BlockLabel; 16] = [
        BlockLabel::F11,
        BlockLabel::F21,
        BlockLabel::F22,
        BlockLabel::F31,
        BlockLabel::F32,
        BlockLabel::F41,
        BlockLabel::F42,
        BlockLabel::F43,
        BlockLabel::F51,
        BlockLabel::J3,
        BlockLabel::S3,
        BlockLabel::T3,
        BlockLabel::Z3,
        BlockLabel::J2,
        BlockLabel::Z2,
        BlockLabel::Z1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BlockLabel::F11 => "1.1",
            BlockLabel::F21 => "2.1",
            BlockLabel::F22 => "2.2",
            BlockLabel::F31 => "3.1",
            BlockLabel::F32 => "3.2",
            BlockLabel::F41 => "4.1",
            BlockLabel::F42 => "4.2",
            BlockLabel::F43 => "4.3",
            BlockLabel::F51 => "5.1",
            BlockLabel::J3 => "3:J",
            BlockLabel::S3 => "3:S",
            BlockLabel::T3 => "3:T",
            BlockLabel::Z3 => "3:Z",
            BlockLabel::J2 => "2:J",
            BlockLabel::Z2 => "2:Z",
            BlockLabel::Z1 => "1:Z",
        }
    }

    pub fn size(self) -> usize {
        match self {
            BlockLabel::J3 | BlockLabel::S3 | BlockLabel::T3 | BlockLabel::Z3 => 3,
            BlockLabel::J2 | BlockLabel::Z2 => 2,
            BlockLabel::Z1 => 1,
            _ => 4,
        }
    }

    pub fn param_count(self) -> usize {
        match self {
            BlockLabel::F11 => 3,
            BlockLabel::F21 | BlockLabel::F31 | BlockLabel::J3 => 2,
            BlockLabel::F22 | BlockLabel::F32 | BlockLabel::F41 | BlockLabel::S3 | BlockLabel::J2 => 1,
            _ => 0,
        }
    }

    /// The block pair with the given parameters.
    pub fn build(self, spec: FieldSpec, params: &[FieldScalar]) -> Result<MatrixPair> {
        if params.len() != self.param_count() {
            return Err(Error::ShapeMismatch(format!(
                "family {} takes {} parameters, got {}",
                self,
                self.param_count(),
                params.len()
            )));
        }
        if let Some(bad) = params.iter().find(|x| x.spec() != spec) {
            return Err(Error::FieldMismatch {
                left: spec,
                right: bad.spec(),
            });
        }
        let n = self.size();
        let e = |i, j| SqMatrix::unit(n, spec, i, j);
        let sc = |m: SqMatrix, k: usize| m.scale(&params[k]).expect("same field");
        let j = SqMatrix::jordan_block(n, spec);
        let zero = SqMatrix::zeros(n, spec);
        let sum = |ms: Vec<SqMatrix>| ms.iter().fold(zero.clone(), |acc, m| &acc + m);
        let (a, b) = match self {
            BlockLabel::F11 => (
                j.clone(),
                sum(vec![sc(j.clone(), 0), sc(j.pow(2), 1), sc(j.pow(3), 2)]),
            ),
            BlockLabel::F21 => {
                let a = &e(0, 1) + &e(1, 2);
                let b = sum(vec![sc(a.clone(), 0), sc(e(0, 3), 1), e(3, 2)]);
                (a, b)
            }
            BlockLabel::F22 => {
                let a = &e(0, 1) + &e(1, 2);
                let b = sum(vec![sc(a.clone(), 0), e(0, 3)]);
                (a, b)
            }
            BlockLabel::F31 => {
                let a = &e(0, 1) + &e(2, 3);
                let b = sum(vec![e(0, 2), e(1, 3), sc(e(2, 1), 0), sc(e(2, 3), 1)]);
                (a, b)
            }
            BlockLabel::F32 => {
                let a = &e(0, 1) + &e(2, 3);
                let b = sum(vec![sc(e(0, 1), 0), e(0, 3), sc(e(2, 3), 0)]);
                (a, b)
            }
            BlockLabel::F41 => (e(0, 1), sum(vec![sc(e(0, 2), 0), e(2, 3), e(3, 1)])),
            BlockLabel::F42 => (e(0, 1), &e(0, 2) + &e(2, 3)),
            BlockLabel::F43 => (e(0, 1), &e(0, 2) + &e(3, 1)),
            BlockLabel::F51 | BlockLabel::Z3 | BlockLabel::Z2 => (zero.clone(), j.clone()),
            BlockLabel::J3 => (j.clone(), &sc(j.clone(), 0) + &sc(j.pow(2), 1)),
            BlockLabel::S3 => (e(0, 1), &e(0, 2) + &sc(e(2, 1), 0)),
            BlockLabel::T3 => (e(0, 1), e(2, 1)),
            BlockLabel::J2 => (j.clone(), sc(j.clone(), 0)),
            BlockLabel::Z1 => (zero.clone(), zero.clone()),
        };
        MatrixPair::new(a, b).map_err(|e| Error::Internal(format!("family {self}: {e}")))
    }
}

impl Ord for BlockLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_str().cmp(other.as_str())
    }
}

impl PartialOrd for BlockLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BlockLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BlockLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::Document(format!("unknown block label {s:?}")))
    }
}

impl Serialize for BlockLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// A labeled indecomposable summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndecBlock {
    pub label: BlockLabel,
    pub params: Vec<FieldScalar>,
}

impl IndecBlock {
    pub fn new(label: BlockLabel, params: Vec<FieldScalar>) -> Result<Self> {
        if params.len() != label.param_count() {
            return Err(Error::ShapeMismatch(format!(
                "family {label} takes {} parameters, got {}",
                label.param_count(),
                params.len()
            )));
        }
        Ok(IndecBlock { label, params })
    }

    pub fn size(&self) -> usize {
        self.label.size()
    }

    pub fn build(&self, spec: FieldSpec) -> Result<MatrixPair> {
        self.label.build(spec, &self.params)
    }

    fn sort_key_cmp(&self, other: &Self) -> Ordering {
        other
            .size()
            .cmp(&self.size())
            .then(self.label.cmp(&other.label))
            .then_with(|| self.params.cmp(&other.params))
    }
}

impl Ord for IndecBlock {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key_cmp(other)
    }
}

impl PartialOrd for IndecBlock {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndecBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(ToString::to_string).collect();
            write!(f, "({})", ps.join(","))?;
        }
        Ok(())
    }
}

impl Serialize for IndecBlock {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IndecBlock", 3)?;
        st.serialize_field("size", &self.size())?;
        st.serialize_field("label", &self.label)?;
        let params: Vec<String> = self.params.iter().map(ToString::to_string).collect();
        st.serialize_field("params", &params)?;
        st.end()
    }
}

/// Sorts by size descending, then label, then parameters.
pub fn normalize_block_order(mut blocks: Vec<IndecBlock>) -> Vec<IndecBlock> {
    blocks.sort();
    blocks
}

/// An ordered direct sum of indecomposable blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CanonForm {
    blocks: Vec<IndecBlock>,
}

impl CanonForm {
    /// Normalizes the block order.
    pub fn new(blocks: Vec<IndecBlock>) -> Self {
        CanonForm {
            blocks: normalize_block_order(blocks),
        }
    }

    pub fn blocks(&self) -> &[IndecBlock] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(IndecBlock::size).sum()
    }

    pub fn is_indecomposable(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(IndecBlock::size).collect()
    }
}

impl fmt::Display for CanonForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Block-diagonal pair assembled from the family displays.
pub fn build_canonical(cf: &CanonForm, spec: FieldSpec) -> Result<MatrixPair> {
    let n = cf.n();
    if !(1..=4).contains(&n) {
        return Err(Error::DimensionOutOfRange(n));
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for block in cf.blocks() {
        let p = block.build(spec)?;
        a.push(p.a().clone());
        b.push(p.b().clone());
    }
    MatrixPair::new(
        SqMatrix::block_diag(spec, &a)?,
        SqMatrix::block_diag(spec, &b)?,
    )
}

/// A canonical form together with its conjugating witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub form: CanonForm,
    /// `X` with `X⁻¹AX`, `X⁻¹BX` equal to `build_canonical(form)`.
    pub witness: SqMatrix,
}

impl Canonical {
    pub fn spec(&self) -> FieldSpec {
        self.witness.spec()
    }

    /// Exact re-verification against the input pair.
    pub fn verify(&self, p: &MatrixPair) -> Result<()> {
        let target = build_canonical(&self.form, p.spec())?;
        let got = p.conjugate_by(&self.witness)?;
        if got != target {
            return Err(Error::Internal(format!(
                "witness does not conjugate the pair to {}",
                self.form
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CanonOptions {
    /// Over GF(p), resolve non-split pairs over GF(p²) and attach the result to the error.
    pub allow_extension: bool,
}

/// Canonical form and witness of a validated pair.
pub fn canonicalize(p: &MatrixPair) -> Result<Canonical> {
    canonicalize_with(p, CanonOptions::default())
}

pub fn canonicalize_with(p: &MatrixPair, opts: CanonOptions) -> Result<Canonical> {
    match canonicalize_verified(p) {
        Err(Error::NotSplit(mut ns)) => {
            if opts.allow_extension && matches!(p.spec(), FieldSpec::Prime(_)) {
                let lifted = p.embed()?;
                ns.extension = Some(Box::new(canonicalize_verified(&lifted)?));
            }
            Err(Error::NotSplit(ns))
        }
        other => other,
    }
}

fn canonicalize_verified(p: &MatrixPair) -> Result<Canonical> {
    let (blocks, witness) = canon_rec(p)?;
    let out = Canonical {
        form: CanonForm { blocks },
        witness,
    };
    out.verify(p)?;
    Ok(out)
}

pub(crate) fn not_split(charpoly: String, field: FieldSpec) -> Error {
    Error::NotSplit(Box::new(NotSplit {
        charpoly,
        field,
        extension: None,
    }))
}

/// Sorted blocks and the witness, without the final verification.
fn canon_rec(p: &MatrixPair) -> Result<(Vec<IndecBlock>, SqMatrix)> {
    let spec = p.spec();
    let n = p.n();
    let (pa, jt) = nilpotent_jnf(p.a())?;
    let p1 = p.conjugate_by(&pa)?;
    match reduce::reduce(&p1, &jt)? {
        Reduction::Block { block, x } => Ok((vec![block], &pa * &x)),
        Reduction::Split(DecomposeHint { x, groups }) => {
            let p2 = p1.conjugate_by(&x)?;
            if !splits_along(&p2, &groups) {
                return Err(Error::Internal(format!(
                    "decomposition {groups:?} does not block-diagonalize the pair"
                )));
            }
            let mut parts: Vec<(IndecBlock, Vec<Vector>)> = Vec::new();
            for g in &groups {
                let (sub_blocks, w) = canon_rec(&p2.submatrix(g)?)?;
                let mut col = 0;
                for blk in sub_blocks {
                    let cols = (col..col + blk.size())
                        .map(|j| {
                            let mut v = vec![spec.zero(); n];
                            for (r, &gi) in g.iter().enumerate() {
                                v[gi] = w[(r, j)].clone();
                            }
                            v
                        })
                        .collect();
                    col += blk.size();
                    parts.push((blk, cols));
                }
            }
            parts.sort_by(|a, b| a.0.cmp(&b.0));
            let cols: Vec<Vector> = parts.iter().flat_map(|(_, c)| c.iter().cloned()).collect();
            let q = SqMatrix::from_columns(spec, &cols)?;
            let blocks = parts.into_iter().map(|(b, _)| b).collect();
            Ok((blocks, &(&pa * &x) * &q))
        }
    }
}

fn splits_along(p: &MatrixPair, groups: &[Vec<usize>]) -> bool {
    let n = p.n();
    let mut owner = vec![usize::MAX; n];
    for (k, g) in groups.iter().enumerate() {
        for &i in g {
            owner[i] = k;
        }
    }
    if owner.contains(&usize::MAX) {
        return false;
    }
    [p.a(), p.b()].iter().all(|m| {
        (0..n).all(|i| (0..n).all(|j| owner[i] == owner[j] || m[(i, j)].is_zero()))
    })
}

/// A witness `X` with `X⁻¹A₁X = A₂` and `X⁻¹B₁X = B₂`, if the pairs are similar.
pub fn similar(p1: &MatrixPair, p2: &MatrixPair) -> Result<Option<SqMatrix>> {
    if p1.spec() != p2.spec() {
        return Err(Error::FieldMismatch {
            left: p1.spec(),
            right: p2.spec(),
        });
    }
    if p1.n() != p2.n() {
        return Err(Error::ShapeMismatch(format!(
            "{0}x{0} vs {1}x{1}",
            p1.n(),
            p2.n()
        )));
    }
    let c1 = canonicalize(p1)?;
    let c2 = canonicalize(p2)?;
    if c1.form != c2.form {
        return Ok(None);
    }
    let x = &c1.witness * &c2.witness.inverse()?;
    if p1.conjugate_by(&x)? != *p2 {
        return Err(Error::Internal("similarity witness failed verification".into()));
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn s(v: i64) -> FieldScalar {
        Q.from_i64(v)
    }

    fn block(label: BlockLabel, params: &[i64]) -> IndecBlock {
        IndecBlock::new(label, params.iter().map(|&v| s(v)).collect()).unwrap()
    }

    #[test]
    fn case1_example() {
        let j = SqMatrix::jordan_block(4, Q);
        let b = &(&j.scale(&s(2)).unwrap() + &j.pow(2).scale(&s(5)).unwrap())
            + &j.pow(3).scale(&s(7)).unwrap();
        let c = canonicalize(&MatrixPair::new(j, b).unwrap()).unwrap();
        assert_eq!(c.form.blocks(), &[block(BlockLabel::F11, &[2, 5, 7])]);
        assert!(c.witness.is_identity());
    }

    #[test]
    fn zero_and_case5() {
        let z = SqMatrix::zeros(4, Q);
        let c = canonicalize(&MatrixPair::new(z.clone(), z.clone()).unwrap()).unwrap();
        assert_eq!(c.form.blocks(), vec![block(BlockLabel::Z1, &[]); 4].as_slice());
        let n = SqMatrix::from_array(Q, [[0, 1, 2, 3], [0, 0, 1, 5], [0, 0, 0, 1], [0, 0, 0, 0]])
            .unwrap();
        let c = canonicalize(&MatrixPair::new(z.clone(), n).unwrap()).unwrap();
        assert_eq!(c.form.blocks(), &[block(BlockLabel::F51, &[])]);
        let jj = &SqMatrix::unit(4, Q, 0, 1) + &SqMatrix::unit(4, Q, 2, 3);
        let c = canonicalize(&MatrixPair::new(z, jj).unwrap()).unwrap();
        assert_eq!(c.form.blocks(), vec![block(BlockLabel::Z2, &[]); 2].as_slice());
    }

    #[test]
    fn case2_examples() {
        let a = &SqMatrix::unit(4, Q, 0, 1) + &SqMatrix::unit(4, Q, 1, 2);
        let b = |alpha, beta, sigma, tau| {
            crate::commutant::CaseCoordinates::Case2 {
                alpha: s(alpha),
                beta: s(beta),
                sigma: s(sigma),
                tau: s(tau),
            }
            .reconstruct(Q)
        };
        let run = |bm| canonicalize(&MatrixPair::new(a.clone(), bm).unwrap()).unwrap().form;
        assert_eq!(run(b(1, 5, 2, 3)).blocks(), &[block(BlockLabel::F21, &[1, 6])]);
        assert_eq!(run(b(0, 7, 1, 0)).blocks(), &[block(BlockLabel::F22, &[0])]);
        assert_eq!(
            run(b(1, 1, 0, 0)).blocks(),
            &[block(BlockLabel::J3, &[1, 1]), block(BlockLabel::Z1, &[])]
        );
    }

    #[test]
    fn block_order() {
        let z1 = block(BlockLabel::Z1, &[]);
        let f21 = block(BlockLabel::F21, &[0, 1]);
        assert_eq!(normalize_block_order(vec![z1.clone(), f21.clone()]), vec![f21, z1]);
        let j0 = block(BlockLabel::J2, &[0]);
        let j1 = block(BlockLabel::J2, &[1]);
        assert_eq!(normalize_block_order(vec![j1.clone(), j0.clone()]), vec![j0.clone(), j1.clone()]);
        assert_eq!(
            normalize_block_order(vec![j0.clone(), j1.clone()]),
            normalize_block_order(vec![j1, j0])
        );
    }

    #[test]
    fn build_examples() {
        let p = block(BlockLabel::F42, &[]).build(Q).unwrap();
        assert_eq!(*p.b(), &SqMatrix::unit(4, Q, 0, 2) + &SqMatrix::unit(4, Q, 2, 3));
        let p = block(BlockLabel::F11, &[1, 2, 3]).build(Q).unwrap();
        assert_eq!(p.b()[(0, 1)], s(1));
        assert_eq!(p.b()[(1, 3)], s(2));
        assert!(matches!(
            IndecBlock::new(BlockLabel::F11, vec![s(1)]),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn similar_examples() {
        let j = SqMatrix::jordan_block(4, Q);
        let z = SqMatrix::zeros(4, Q);
        let p1 = MatrixPair::new(j.clone(), z.clone()).unwrap();
        let p2 = MatrixPair::new(z, j).unwrap();
        assert_eq!(similar(&p1, &p2).unwrap(), None);
        let f21 = build_canonical(&CanonForm::new(vec![block(BlockLabel::F21, &[0, 1])]), Q).unwrap();
        let f22 = build_canonical(&CanonForm::new(vec![block(BlockLabel::F22, &[0])]), Q).unwrap();
        assert_eq!(similar(&f21, &f22).unwrap(), None);
        let x = SqMatrix::from_array(Q, [[1, 2, 0, 1], [0, 1, 3, 0], [1, 0, 1, 0], [0, 0, 2, 1]])
            .unwrap();
        let moved = f21.conjugate_by(&x).unwrap();
        let w = similar(&f21, &moved).unwrap().unwrap();
        assert_eq!(f21.conjugate_by(&w).unwrap(), moved);
    }
}
