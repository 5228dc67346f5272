//! Exhaustive ground truth over GF(2) and GF(3): every commuting nilpotent
//! pair, its conjugation orbit, and a cross-check of the classifier.
//!
//! Pairs are coded as base-p integers over the entries of `A` then `B` in
//! row-major order, most significant first, so numeric order is the
//! lexicographic entry order.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonicalize, canonicalize_with, CanonForm, CanonOptions};
use crate::decompose::is_indecomposable;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::SqMatrix;
use crate::pair::MatrixPair;

/// Row-major residues; only the first `n * n` cells are used.
pub type Mat = [u8; 16];

const MAX_REPORTED: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairCodec {
    p: u8,
    n: usize,
}

impl PairCodec {
    pub fn new(p: u32, n: usize) -> Result<Self> {
        if p != 2 && p != 3 {
            return Err(Error::Unsupported(format!(
                "exhaustive enumeration needs p in {{2, 3}}, got {p}"
            )));
        }
        if !(1..=4).contains(&n) {
            return Err(Error::DimensionOutOfRange(n));
        }
        Ok(PairCodec { p: p as u8, n })
    }

    pub fn p(&self) -> u32 {
        self.p as u32
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec::prime(self.p()).expect("2 and 3 are prime")
    }

    fn cells(&self) -> usize {
        self.n * self.n
    }

    /// Number of matrices, `p^(n²)`.
    pub fn matrix_count(&self) -> u64 {
        (self.p as u64).pow(self.cells() as u32)
    }

    pub fn encode_matrix(&self, m: &Mat) -> u64 {
        m[..self.cells()]
            .iter()
            .fold(0, |acc, &d| acc * self.p as u64 + d as u64)
    }

    pub fn decode_matrix(&self, mut code: u64) -> Mat {
        let mut m = [0u8; 16];
        for i in (0..self.cells()).rev() {
            m[i] = (code % self.p as u64) as u8;
            code /= self.p as u64;
        }
        m
    }

    pub fn encode(&self, a: &Mat, b: &Mat) -> u64 {
        self.encode_matrix(a) * self.matrix_count() + self.encode_matrix(b)
    }

    pub fn decode(&self, code: u64) -> (Mat, Mat) {
        let q = self.matrix_count();
        (self.decode_matrix(code / q), self.decode_matrix(code % q))
    }

    fn to_matrix(&self, m: &Mat) -> SqMatrix {
        let spec = self.spec();
        let v = m[..self.cells()]
            .iter()
            .map(|&d| spec.from_i64(d as i64))
            .collect();
        SqMatrix::from_vector(self.n, spec, v).expect("n at most 4")
    }

    fn from_matrix(&self, m: &SqMatrix) -> Result<Mat> {
        if m.spec() != self.spec() {
            return Err(Error::FieldMismatch {
                left: m.spec(),
                right: self.spec(),
            });
        }
        if m.n() != self.n {
            return Err(Error::DimensionOutOfRange(m.n()));
        }
        let mut out = [0u8; 16];
        for (slot, x) in out.iter_mut().zip(m.entries()) {
            *slot = x.index().expect("prime field residue") as u8;
        }
        Ok(out)
    }

    /// Both matrices of a code as rows of residues.
    pub fn residue_pair(&self, code: u64) -> ResiduePair {
        let (a, b) = self.decode(code);
        ResiduePair {
            a: residue_rows(self, &a),
            b: residue_rows(self, &b),
        }
    }

    pub fn to_pair(&self, code: u64) -> Result<MatrixPair> {
        let (a, b) = self.decode(code);
        MatrixPair::new(self.to_matrix(&a), self.to_matrix(&b))
    }

    pub fn from_pair(&self, pair: &MatrixPair) -> Result<u64> {
        Ok(self.encode(&self.from_matrix(pair.a())?, &self.from_matrix(pair.b())?))
    }

    fn mul(&self, x: &Mat, y: &Mat) -> Mat {
        let n = self.n;
        let p = self.p as u32;
        let mut out = [0u8; 16];
        for i in 0..n {
            for j in 0..n {
                let s: u32 = (0..n)
                    .map(|k| x[i * n + k] as u32 * y[k * n + j] as u32)
                    .sum();
                out[i * n + j] = (s % p) as u8;
            }
        }
        out
    }

    fn is_nilpotent(&self, m: &Mat) -> bool {
        let m2 = self.mul(m, m);
        let top = match self.n {
            1 => *m,
            2 => m2,
            3 => self.mul(&m2, m),
            _ => self.mul(&m2, &m2),
        };
        top.iter().all(|&d| d == 0)
    }

    fn rank(&self, m: &Mat) -> usize {
        let n = self.n;
        let rows = (0..n)
            .map(|i| m[i * n..(i + 1) * n].iter().map(|&d| d as u32).collect())
            .collect();
        rank_mod(rows, n, self.p as u32)
    }

    fn is_invertible(&self, m: &Mat) -> bool {
        self.rank(m) == self.n
    }

    /// Basis of the matrices commuting with every matrix in `mats`.
    fn commutant_basis(&self, mats: &[&Mat]) -> Vec<Mat> {
        let n = self.n;
        let p = self.p as u32;
        let mut rows = Vec::new();
        for m in mats {
            for i in 0..n {
                for j in 0..n {
                    // (MX − XM)_{ij}
                    let mut row = vec![0u32; n * n];
                    for k in 0..n {
                        row[k * n + j] = (row[k * n + j] + m[i * n + k] as u32) % p;
                        row[i * n + k] = (row[i * n + k] + p - m[k * n + j] as u32) % p;
                    }
                    rows.push(row);
                }
            }
        }
        kernel_mod(rows, n * n, p)
            .into_iter()
            .map(|v| {
                let mut out = [0u8; 16];
                for (slot, x) in out.iter_mut().zip(v) {
                    *slot = x as u8;
                }
                out
            })
            .collect()
    }

    /// The element of the span with base-p coefficient digits of `index`,
    /// first basis vector most significant.
    fn span_element(&self, basis: &[Mat], mut index: u64) -> Mat {
        let p = self.p as u64;
        let mut out = [0u8; 16];
        for v in basis.iter().rev() {
            let c = (index % p) as u32;
            index /= p;
            for (slot, &x) in out.iter_mut().zip(v.iter()) {
                *slot = ((*slot as u32 + c * x as u32) % p as u32) as u8;
            }
        }
        out
    }
}

fn inv_mod(x: u32, p: u32) -> u32 {
    (1..p).find(|y| x * y % p == 1).expect("nonzero residue")
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref_mod(rows: &mut [Vec<u32>], cols: usize, p: u32) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..cols {
                    rows[k][j] = (rows[k][j] + p * p - f * rows[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

fn rank_mod(mut rows: Vec<Vec<u32>>, cols: usize, p: u32) -> usize {
    rref_mod(&mut rows, cols, p).len()
}

fn kernel_mod(mut rows: Vec<Vec<u32>>, cols: usize, p: u32) -> Vec<Vec<u32>> {
    let pivots = rref_mod(&mut rows, cols, p);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u32; cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[r][free]) % p;
            }
            v
        })
        .collect()
}

/// All nilpotent `n × n` matrices over GF(p), in increasing code order.
pub fn nilpotent_matrices(codec: &PairCodec) -> Vec<Mat> {
    (0..codec.matrix_count())
        .into_par_iter()
        .map(|c| codec.decode_matrix(c))
        .filter(|m| codec.is_nilpotent(m))
        .collect()
}

/// Codes of every commuting nilpotent pair, sorted.
///
/// For each nilpotent `A` the commutant is spanned and filtered for
/// nilpotent `B`.
pub fn enumerate_pair_codes(codec: &PairCodec) -> Vec<u64> {
    nilpotent_matrices(codec)
        .into_par_iter()
        .flat_map_iter(|a| {
            let basis = codec.commutant_basis(&[&a]);
            let total = (codec.p as u64).pow(basis.len() as u32);
            let mut codes: Vec<u64> = (0..total)
                .map(|i| codec.span_element(&basis, i))
                .filter(|b| codec.is_nilpotent(b))
                .map(|b| codec.encode(&a, &b))
                .collect();
            codes.sort_unstable();
            codes
        })
        .collect()
}

/// Every commuting nilpotent pair over GF(p) exactly once.
pub fn enumerate_pairs(p: u32, n: usize) -> Result<impl Iterator<Item = MatrixPair>> {
    let codec = PairCodec::new(p, n)?;
    Ok(enumerate_pair_codes(&codec)
        .into_iter()
        .map(move |c| codec.to_pair(c).expect("enumerated pairs are valid")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `I + E_ij`.
    Transvection { i: usize, j: usize },
    /// The identity with `w` at `(k, k)`.
    Scale { k: usize, w: u8 },
    /// Permutation matrix sending `e_j` to `e_σ(j)`.
    Permutation(Vec<usize>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GeneratorSet {
    /// n-cycle, the swap of the first two basis vectors, `I + E₀₁` and a scaling.
    #[default]
    Compact,
    /// All transvections `I + E_ij` and a scaling.
    Elementary,
}

fn primitive_root(p: u32) -> u8 {
    (1..p)
        .find(|&g| (1..p - 1).all(|k| (g as u64).pow(k) % p as u64 != 1))
        .expect("prime") as u8
}

pub fn generators(codec: &PairCodec, set: GeneratorSet) -> Vec<Generator> {
    let n = codec.n;
    let mut out = Vec::new();
    match set {
        GeneratorSet::Compact => {
            if n > 1 {
                out.push(Generator::Permutation((0..n).map(|i| (i + 1) % n).collect()));
                let mut swap: Vec<usize> = (0..n).collect();
                swap.swap(0, 1);
                out.push(Generator::Permutation(swap));
                out.push(Generator::Transvection { i: 0, j: 1 });
            }
        }
        GeneratorSet::Elementary => {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        out.push(Generator::Transvection { i, j });
                    }
                }
            }
        }
    }
    out.push(Generator::Scale {
        k: 0,
        w: primitive_root(codec.p()),
    });
    out
}

impl Generator {
    pub fn matrix(&self, codec: &PairCodec) -> Mat {
        let n = codec.n;
        let mut m = [0u8; 16];
        match self {
            Generator::Permutation(sigma) => {
                for (j, &s) in sigma.iter().enumerate() {
                    m[s * n + j] = 1;
                }
            }
            _ => {
                for i in 0..n {
                    m[i * n + i] = 1;
                }
                match *self {
                    Generator::Transvection { i, j } => m[i * n + j] = 1,
                    Generator::Scale { k, w } => m[k * n + k] = w,
                    Generator::Permutation(_) => unreachable!(),
                }
            }
        }
        m
    }

    /// `X⁻¹ M X` for this generator `X`.
    pub fn conjugate(&self, codec: &PairCodec, m: &Mat) -> Mat {
        let n = codec.n;
        let p = codec.p as u32;
        let mut out = *m;
        match self {
            Generator::Transvection { i, j } => {
                // column j += column i, then row i -= row j
                for r in 0..n {
                    out[r * n + j] = ((out[r * n + j] as u32 + out[r * n + i] as u32) % p) as u8;
                }
                for c in 0..n {
                    out[i * n + c] =
                        ((out[i * n + c] as u32 + p - out[j * n + c] as u32) % p) as u8;
                }
            }
            Generator::Scale { k, w } => {
                let wi = inv_mod(*w as u32, p);
                for r in 0..n {
                    out[r * n + k] = (out[r * n + k] as u32 * *w as u32 % p) as u8;
                }
                for c in 0..n {
                    out[k * n + c] = (out[k * n + c] as u32 * wi % p) as u8;
                }
            }
            Generator::Permutation(sigma) => {
                for i in 0..n {
                    for j in 0..n {
                        out[i * n + j] = m[sigma[i] * n + sigma[j]];
                    }
                }
            }
        }
        out
    }
}

/// `|GL(n, p)| = ∏ᵢ (pⁿ − pⁱ)`.
pub fn gl_order(p: u32, n: usize) -> u64 {
    let q = (p as u64).pow(n as u32);
    (0..n as u32).map(|i| q - (p as u64).pow(i)).product()
}

/// Size of the group generated by the set, by closure from the identity.
pub fn gl_closure_count(codec: &PairCodec, set: GeneratorSet) -> u64 {
    let gens: Vec<Mat> = generators(codec, set)
        .iter()
        .map(|g| g.matrix(codec))
        .collect();
    let mut seen = vec![false; codec.matrix_count() as usize];
    let mut id = [0u8; 16];
    for i in 0..codec.n {
        id[i * codec.n + i] = 1;
    }
    seen[codec.encode_matrix(&id) as usize] = true;
    let mut queue = vec![id];
    let mut count = 1;
    while let Some(x) = queue.pop() {
        for g in &gens {
            let y = codec.mul(&x, g);
            let c = codec.encode_matrix(&y) as usize;
            if !seen[c] {
                seen[c] = true;
                count += 1;
                queue.push(y);
            }
        }
    }
    count
}

/// Invertible matrices commuting with both matrices of the pair.
pub fn pair_stabilizer_count(codec: &PairCodec, code: u64) -> u64 {
    let (a, b) = codec.decode(code);
    let basis = codec.commutant_basis(&[&a, &b]);
    let total = (codec.p as u64).pow(basis.len() as u32);
    (0..total)
        .into_par_iter()
        .filter(|&i| codec.is_invertible(&codec.span_element(&basis, i)))
        .count() as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Smallest code in the orbit.
    pub representative: u64,
    pub size: u64,
}

/// Partition of all pair codes into conjugation orbits.
#[derive(Clone, Debug)]
pub struct OrbitTable {
    codec: PairCodec,
    codes: Vec<u64>,
    orbit_of: Vec<u32>,
    orbits: Vec<Orbit>,
}

impl OrbitTable {
    pub fn codec(&self) -> &PairCodec {
        &self.codec
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    /// Orbit index of the pair at position `i` of [`codes`](Self::codes).
    pub fn orbit_of(&self, i: usize) -> usize {
        self.orbit_of[i] as usize
    }

    pub fn index_of(&self, code: u64) -> Option<usize> {
        self.codes.binary_search(&code).ok()
    }

    pub fn total_pairs(&self) -> u64 {
        self.codes.len() as u64
    }
}

pub fn orbit_partition(p: u32, n: usize) -> Result<OrbitTable> {
    orbit_partition_with(p, n, GeneratorSet::default())
}

/// Breadth-first closure of each unassigned pair under the generators.
///
/// Codes are scanned in increasing order, so every orbit's first pair is
/// its minimum.
pub fn orbit_partition_with(p: u32, n: usize, set: GeneratorSet) -> Result<OrbitTable> {
    let codec = PairCodec::new(p, n)?;
    let codes = enumerate_pair_codes(&codec);
    let gens = generators(&codec, set);
    let mut orbit_of = vec![u32::MAX; codes.len()];
    let mut orbits = Vec::new();
    let mut queue = Vec::new();
    for start in 0..codes.len() {
        if orbit_of[start] != u32::MAX {
            continue;
        }
        let id = orbits.len() as u32;
        orbit_of[start] = id;
        queue.push(start);
        let mut size = 0;
        while let Some(i) = queue.pop() {
            size += 1;
            let (a, b) = codec.decode(codes[i]);
            for g in &gens {
                let c = codec.encode(&g.conjugate(&codec, &a), &g.conjugate(&codec, &b));
                let j = codes.binary_search(&c).map_err(|_| {
                    Error::Internal(format!("conjugate {c} of pair {} not enumerated", codes[i]))
                })?;
                if orbit_of[j] == u32::MAX {
                    orbit_of[j] = id;
                    queue.push(j);
                }
            }
        }
        orbits.push(Orbit {
            representative: codes[start],
            size,
        });
    }
    Ok(OrbitTable {
        codec,
        codes,
        orbit_of,
        orbits,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CrosscheckOptions {
    /// Allow GF(3) with n = 4.
    pub deep: bool,
}

/// Representative matrices as residues.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResiduePair {
    #[serde(rename = "A")]
    pub a: Vec<Vec<u8>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    pub representative: ResiduePair,
    pub size: u64,
    pub stabilizer: u64,
    pub canon_form: String,
    /// Field the form lives over.
    pub field: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub field: String,
    pub n: usize,
    pub total_pairs: u64,
    pub orbit_count: u64,
    pub orbits_matched: u64,
    pub orbits_extension: u64,
    pub mismatches: Vec<String>,
    pub orbit_size_checksum: u64,
    pub group_order: u64,
    pub orbits: Vec<OrbitSummary>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
            && self.orbit_size_checksum == self.total_pairs
            && self.orbits_matched + self.orbits_extension == self.orbit_count
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Class {
    InField(CanonForm),
    Extension(CanonForm),
    Failed(String),
}

impl Class {
    fn describe(&self) -> String {
        match self {
            Class::InField(cf) => cf.to_string(),
            Class::Extension(cf) => format!("{cf} (extension)"),
            Class::Failed(e) => format!("error: {e}"),
        }
    }
}

fn classify(pair: &MatrixPair) -> Class {
    let opts = CanonOptions {
        allow_extension: true,
    };
    match canonicalize_with(pair, opts) {
        Ok(c) => Class::InField(c.form),
        Err(Error::NotSplit(ns)) => match ns.extension {
            Some(c) => Class::Extension(c.form),
            None => Class::Failed(format!("{} not resolved over an extension", ns.charpoly)),
        },
        Err(e) => Class::Failed(e.to_string()),
    }
}

fn residue_rows(codec: &PairCodec, m: &Mat) -> Vec<Vec<u8>> {
    let n = codec.n;
    (0..n).map(|i| m[i * n..(i + 1) * n].to_vec()).collect()
}

fn cap(mut messages: Vec<String>) -> Vec<String> {
    if messages.len() > MAX_REPORTED {
        let rest = messages.len() - MAX_REPORTED;
        messages.truncate(MAX_REPORTED);
        messages.push(format!("{rest} further mismatches omitted"));
    }
    messages
}

/// Whether the default crosscheck covers every pair of size `n` over `spec`,
/// so that distinct canonical forms there are known to be non-similar.
/// Elsewhere uniqueness of the parameter list is unverified.
pub fn exhaustively_checked(spec: FieldSpec, n: usize) -> bool {
    let max_n = match spec {
        s if FieldSpec::prime(2).ok() == Some(s) => 4,
        s if FieldSpec::prime(3).ok() == Some(s) => 3,
        _ => 0,
    };
    (1..=max_n).contains(&n)
}

/// Canonicalizes every pair and checks the forms against the orbit partition.
pub fn crosscheck(p: u32, n: usize, opts: CrosscheckOptions) -> Result<CrosscheckReport> {
    if p == 3 && n == 4 && !opts.deep {
        return Err(Error::Unsupported(
            "GF(3) with n = 4 takes hours; pass --deep".into(),
        ));
    }
    let table = orbit_partition(p, n)?;
    let codec = table.codec;
    let spec = codec.spec();
    let ext = spec.extend_to_quadratic()?;
    let group_order = gl_order(p, n);

    let rep_classes: Vec<Class> = table
        .orbits
        .par_iter()
        .map(|o| match codec.to_pair(o.representative) {
            Ok(pair) => classify(&pair),
            Err(e) => Class::Failed(e.to_string()),
        })
        .collect();
    let stabilizers: Vec<u64> = table
        .orbits
        .iter()
        .map(|o| pair_stabilizer_count(&codec, o.representative))
        .collect();

    let mut mismatches = Vec::new();
    let mut first_with: HashMap<&Class, usize> = HashMap::new();
    for (k, class) in rep_classes.iter().enumerate() {
        if let Class::Failed(e) = class {
            mismatches.push(format!("orbit {k}: {e}"));
            continue;
        }
        if let Some(&other) = first_with.get(class) {
            mismatches.push(format!(
                "orbits {other} and {k} share the form {}",
                class.describe()
            ));
        } else {
            first_with.insert(class, k);
        }
        let o = &table.orbits[k];
        if o.size * stabilizers[k] != group_order {
            mismatches.push(format!(
                "orbit {k}: size {} times stabilizer {} is not {group_order}",
                o.size, stabilizers[k]
            ));
        }
    }

    let member_mismatches: Vec<String> = (0..table.codes.len())
        .into_par_iter()
        .filter_map(|i| {
            let k = table.orbit_of(i);
            if table.codes[i] == table.orbits[k].representative {
                return None;
            }
            let class = match codec.to_pair(table.codes[i]) {
                Ok(pair) => classify(&pair),
                Err(e) => Class::Failed(e.to_string()),
            };
            (class != rep_classes[k]).then(|| {
                format!(
                    "orbit {k}: member {} gives {}, representative gives {}",
                    table.codes[i],
                    class.describe(),
                    rep_classes[k].describe()
                )
            })
        })
        .collect();
    mismatches.extend(member_mismatches);

    let count = |f: fn(&Class) -> bool| rep_classes.iter().filter(|c| f(c)).count() as u64;
    let orbits = table
        .orbits
        .iter()
        .zip(&rep_classes)
        .zip(&stabilizers)
        .map(|((o, class), &stabilizer)| {
            let (canon_form, field) = match class {
                Class::InField(cf) => (cf.to_string(), spec.to_string()),
                Class::Extension(cf) => (cf.to_string(), ext.to_string()),
                Class::Failed(e) => (format!("error: {e}"), spec.to_string()),
            };
            OrbitSummary {
                representative: codec.residue_pair(o.representative),
                size: o.size,
                stabilizer,
                canon_form,
                field,
            }
        })
        .collect();

    Ok(CrosscheckReport {
        field: spec.to_string(),
        n,
        total_pairs: table.total_pairs(),
        orbit_count: table.orbits.len() as u64,
        orbits_matched: if mismatches.is_empty() {
            count(|c| matches!(c, Class::InField(_)))
        } else {
            0
        },
        orbits_extension: count(|c| matches!(c, Class::Extension(_))),
        mismatches: cap(mismatches),
        orbit_size_checksum: table.orbits.iter().map(|o| o.size).sum(),
        group_order,
        orbits,
    })
}

/// Outcome of comparing the canonicalizer's block count with the
/// commutant-based decomposability verdict on one pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Agreement {
    pub engine_blocks: usize,
    pub checker_indecomposable: bool,
    /// The engine reported a non-split polynomial, counted as one block.
    pub not_split: bool,
}

impl Agreement {
    pub fn agrees(&self) -> bool {
        (self.engine_blocks == 1) == self.checker_indecomposable
    }
}

/// A pair whose characteristic polynomial does not split over its field
/// has Jordan type (2,2) and could only split as 2 + 2, which would make
/// the polynomial split; so it counts as one in-field block.
pub fn agreement_on(pair: &MatrixPair) -> Result<Agreement> {
    let (engine_blocks, not_split) = match canonicalize(pair) {
        Ok(c) => (c.form.blocks().len(), false),
        Err(Error::NotSplit(_)) => (1, true),
        Err(e) => return Err(e),
    };
    let cert = is_indecomposable(pair)?;
    Ok(Agreement {
        engine_blocks,
        checker_indecomposable: cert.is_indecomposable(),
        not_split,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub field: String,
    pub n: usize,
    pub total_pairs: u64,
    pub agreed: u64,
    pub not_split_pairs: u64,
    pub disagreements: Vec<String>,
}

impl AgreementReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.agreed == self.total_pairs
    }
}

/// [`agreement_on`] for every commuting nilpotent pair over GF(p).
pub fn agreement_check(p: u32, n: usize) -> Result<AgreementReport> {
    let codec = PairCodec::new(p, n)?;
    let codes = enumerate_pair_codes(&codec);
    let results: Vec<std::result::Result<Agreement, String>> = codes
        .par_iter()
        .map(|&c| {
            let pair = codec.to_pair(c).map_err(|e| e.to_string())?;
            agreement_on(&pair).map_err(|e| e.to_string())
        })
        .collect();
    let mut disagreements = Vec::new();
    let mut agreed = 0;
    let mut not_split_pairs = 0;
    for (code, r) in codes.iter().zip(&results) {
        match r {
            Ok(a) if a.agrees() => {
                agreed += 1;
                not_split_pairs += a.not_split as u64;
            }
            Ok(a) => disagreements.push(format!(
                "pair {code}: engine {} blocks, checker says indecomposable = {}",
                a.engine_blocks, a.checker_indecomposable
            )),
            Err(e) => disagreements.push(format!("pair {code}: {e}")),
        }
    }
    Ok(AgreementReport {
        field: codec.spec().to_string(),
        n,
        total_pairs: codes.len() as u64,
        agreed,
        not_split_pairs,
        disagreements: cap(disagreements),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn codec(p: u32, n: usize) -> PairCodec {
        PairCodec::new(p, n).unwrap()
    }

    #[test]
    fn codec_round_trip_and_order() {
        let c = codec(3, 2);
        let a = [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0];
        let b = [0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0];
        let code = c.encode(&a, &b);
        assert_eq!(c.decode(code), (a, b));
        assert!(c.encode(&a, &[0; 16]) < code);
        let pair = c.to_pair(code).unwrap();
        assert_eq!(c.from_pair(&pair).unwrap(), code);
        assert!(PairCodec::new(5, 2).is_err());
        assert!(PairCodec::new(2, 5).is_err());
    }

    #[test]
    fn nilpotent_counts() {
        // q^(n² − n)
        for (p, n) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)] {
            let c = codec(p, n);
            assert_eq!(
                nilpotent_matrices(&c).len() as u64,
                (p as u64).pow((n * n - n) as u32)
            );
        }
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_pairs(2, 1).unwrap().count(), 1);
        assert_eq!(enumerate_pairs(2, 2).unwrap().count(), 10);
        let pairs: Vec<MatrixPair> = enumerate_pairs(3, 2).unwrap().collect();
        assert!(pairs.iter().all(|p| p.a().commutes_with(p.b())));
    }

    #[test]
    fn jordan_nilc_has_eight_elements() {
        let c = codec(2, 4);
        let mut j4 = [0u8; 16];
        for i in 0..3 {
            j4[i * 4 + i + 1] = 1;
        }
        let basis = c.commutant_basis(&[&j4]);
        assert_eq!(basis.len(), 4);
        let nil = (0..16)
            .map(|i| c.span_element(&basis, i))
            .filter(|b| c.is_nilpotent(b))
            .count();
        assert_eq!(nil, 8);
    }

    #[test]
    fn generator_conjugation_matches_matrices() {
        let c = codec(3, 3);
        let m: Mat = [1, 2, 0, 0, 1, 2, 2, 0, 1, 0, 0, 0, 0, 0, 0, 0];
        for set in [GeneratorSet::Compact, GeneratorSet::Elementary] {
            for g in generators(&c, set) {
                let x = c.to_matrix(&g.matrix(&c));
                let expected = c.to_matrix(&m).conjugate_by(&x).unwrap();
                assert_eq!(c.to_matrix(&g.conjugate(&c, &m)), expected, "{g:?}");
            }
        }
    }

    #[test]
    fn coverage() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(exhaustively_checked(f2, 4));
        assert!(!exhaustively_checked(FieldSpec::prime(3).unwrap(), 4));
        assert!(!exhaustively_checked(FieldSpec::quadratic(2).unwrap(), 2));
        assert!(!exhaustively_checked(FieldSpec::Rationals, 2));
    }

    #[test]
    fn group_orders() {
        assert_eq!(gl_order(2, 4), 20160);
        assert_eq!(gl_order(3, 4), 24261120);
        for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 2), (2, 4)] {
            let c = codec(p, n);
            for set in [GeneratorSet::Compact, GeneratorSet::Elementary] {
                assert_eq!(gl_closure_count(&c, set), gl_order(p, n));
            }
        }
    }

    #[test]
    fn two_by_two_orbits() {
        let t = orbit_partition(2, 2).unwrap();
        assert_eq!(t.orbits().len(), 4);
        assert_eq!(t.total_pairs(), 10);
        assert_eq!(t.orbits().iter().map(|o| o.size).sum::<u64>(), 10);
        assert_eq!(t.orbits()[0].representative, 0);
    }

    #[test]
    fn partitions_agree_across_generator_sets() {
        for (p, n) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            let a = orbit_partition_with(p, n, GeneratorSet::Compact).unwrap();
            let b = orbit_partition_with(p, n, GeneratorSet::Elementary).unwrap();
            assert_eq!(a.orbits(), b.orbits());
            assert_eq!(a.orbit_of, b.orbit_of);
        }
    }

    #[test]
    fn jordan_orbit_stabilizer() {
        let c = codec(2, 4);
        let mut j4 = [0u8; 16];
        for i in 0..3 {
            j4[i * 4 + i + 1] = 1;
        }
        let code = c.encode(&j4, &[0; 16]);
        // Stab(J₄) = invertible polynomials in J₄: 2³
        assert_eq!(pair_stabilizer_count(&c, code), 8);
        let t = orbit_partition(2, 4).unwrap();
        let k = t.orbit_of(t.index_of(code).unwrap());
        assert_eq!(t.orbits()[k].size, 20160 / 8);
    }

    #[test]
    fn small_crosschecks() {
        for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3)] {
            let r = crosscheck(p, n, CrosscheckOptions::default()).unwrap();
            assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
            assert_eq!(r.orbits_matched, r.orbit_count);
            assert_eq!(r.orbit_size_checksum, r.total_pairs);
        }
        assert!(crosscheck(3, 4, CrosscheckOptions::default()).is_err());
    }

    #[test]
    fn small_agreement() {
        for (p, n) in [(2, 2), (2, 3), (3, 2)] {
            let r = agreement_check(p, n).unwrap();
            assert!(r.passed(), "{:?}", r.disagreements);
        }
    }
}
