//! Dense exact square matrices of size at most 4 and the linear-algebra
//! kernel shared by every other module.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldScalar, FieldSpec};
use crate::poly::Poly;

/// Largest matrix dimension exposed by the public API.
pub const MAX_DIM: usize = 4;

/// A coordinate vector.
pub type Vector = Vec<FieldScalar>;

/// Row echelon routines over row lists of arbitrary shape.
pub mod echelon {
    use super::*;

    /// Reduces `rows` in place to reduced row echelon form and returns the
    /// pivot columns. Zero rows are moved to the bottom.
    pub fn rref(rows: &mut [Vector], cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows.len() {
                break;
            }
            let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = rows[r][c].inv().expect("nonzero pivot");
            if !inv.is_one() {
                for x in rows[r].iter_mut() {
                    *x = &*x * &inv;
                }
            }
            for i in 0..rows.len() {
                if i != r && !rows[i][c].is_zero() {
                    let factor = rows[i][c].clone();
                    for j in c..cols {
                        if !rows[r][j].is_zero() {
                            let t = &factor * &rows[r][j];
                            rows[i][j] = &rows[i][j] - &t;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(rows: &[Vector], cols: usize) -> usize {
        let mut work = rows.to_vec();
        rref(&mut work, cols).len()
    }

    /// Basis of `{v : M v = 0}` where `rows` are the rows of `M`.
    ///
    /// One vector per free column, in increasing column order, with a 1 in its
    /// free column and zeros in the other free columns.
    pub fn kernel(rows: &[Vector], cols: usize, spec: FieldSpec) -> Vec<Vector> {
        let mut work = rows.to_vec();
        let pivots = rref(&mut work, cols);
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![spec.zero(); cols];
            v[free] = spec.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&work[r][free];
            }
            basis.push(v);
        }
        basis
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SqMatrix {
    n: usize,
    spec: FieldSpec,
    entries: Vec<FieldScalar>,
}

fn check_dim(n: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::DimensionOutOfRange(n))
    }
}

impl SqMatrix {
    pub fn zeros(n: usize, spec: FieldSpec) -> Self {
        check_dim(n).expect("matrix dimension");
        SqMatrix {
            n,
            spec,
            entries: vec![spec.zero(); n * n],
        }
    }

    pub fn identity(n: usize, spec: FieldSpec) -> Self {
        let mut m = Self::zeros(n, spec);
        for i in 0..n {
            m.entries[i * n + i] = spec.one();
        }
        m
    }

    /// Matrix unit `E_ij` (zero-based indices).
    pub fn unit(n: usize, spec: FieldSpec, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, spec);
        m.set(i, j, spec.one());
        m
    }

    /// Single nilpotent Jordan block: ones on the superdiagonal.
    pub fn jordan_block(n: usize, spec: FieldSpec) -> Self {
        let mut m = Self::zeros(n, spec);
        for i in 0..n.saturating_sub(1) {
            m.set(i, i + 1, spec.one());
        }
        m
    }

    pub fn from_rows(spec: FieldSpec, rows: Vec<Vec<FieldScalar>>) -> Result<Self> {
        let n = rows.len();
        check_dim(n)?;
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::ShapeMismatch(format!(
                    "row of length {} in a {n}x{n} matrix",
                    row.len()
                )));
            }
            for x in row {
                if x.spec() != spec {
                    return Err(Error::FieldMismatch {
                        left: spec,
                        right: x.spec(),
                    });
                }
                entries.push(x);
            }
        }
        Ok(SqMatrix { n, spec, entries })
    }

    /// Integer entries mapped into `spec`.
    pub fn from_array<const N: usize>(spec: FieldSpec, rows: [[i64; N]; N]) -> Result<Self> {
        check_dim(N)?;
        Ok(SqMatrix {
            n: N,
            spec,
            entries: rows.iter().flatten().map(|&v| spec.from_i64(v)).collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(spec: FieldSpec, cols: &[Vector]) -> Result<Self> {
        let n = cols.len();
        check_dim(n)?;
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::ShapeMismatch("columns must have length n".into()));
        }
        let mut m = Self::zeros(n, spec);
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    /// Row-major vectorization inverse.
    pub fn from_vector(n: usize, spec: FieldSpec, v: Vector) -> Result<Self> {
        check_dim(n)?;
        if v.len() != n * n {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for a {n}x{n} matrix",
                v.len()
            )));
        }
        Ok(SqMatrix {
            n,
            spec,
            entries: v,
        })
    }

    /// Block-diagonal matrix from the given square blocks.
    pub fn block_diag(spec: FieldSpec, blocks: &[SqMatrix]) -> Result<Self> {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        check_dim(n)?;
        let mut m = Self::zeros(n, spec);
        let mut off = 0;
        for b in blocks {
            if b.spec != spec {
                return Err(Error::FieldMismatch {
                    left: spec,
                    right: b.spec,
                });
            }
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(off + i, off + j, b[(i, j)].clone());
                }
            }
            off += b.n;
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldScalar {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldScalar) {
        assert_eq!(v.spec(), self.spec, "entry field");
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[FieldScalar] {
        &self.entries
    }

    /// Row-major vectorization.
    pub fn vectorize(&self) -> Vector {
        self.entries.clone()
    }

    pub fn rows(&self) -> Vec<Vector> {
        self.entries.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.n).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldScalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n, self.spec)
    }

    fn check_compatible(&self, other: &SqMatrix) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch {
                left: self.spec,
                right: other.spec,
            });
        }
        if self.n != other.n {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.n, self.n, other.n, other.n
            )));
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &SqMatrix) -> Result<SqMatrix> {
        self.check_compatible(other)?;
        let n = self.n;
        let mut out = Self::zeros(n, self.spec);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * n + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &SqMatrix) -> Result<SqMatrix> {
        self.check_compatible(other)?;
        Ok(SqMatrix {
            n: self.n,
            spec: self.spec,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &SqMatrix) -> Result<SqMatrix> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, c: &FieldScalar) -> Result<SqMatrix> {
        if c.spec() != self.spec {
            return Err(Error::FieldMismatch {
                left: self.spec,
                right: c.spec(),
            });
        }
        Ok(SqMatrix {
            n: self.n,
            spec: self.spec,
            entries: self.entries.iter().map(|a| a * c).collect(),
        })
    }

    pub fn mul_vec(&self, v: &[FieldScalar]) -> Vector {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(self.spec.zero(), |acc, j| &acc + &(self.get(i, j) * &v[j]))
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> SqMatrix {
        (0..k).fold(Self::identity(self.n, self.spec), |acc, _| &acc * self)
    }

    pub fn transpose(&self) -> SqMatrix {
        let mut m = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                m.entries[j * self.n + i] = self.get(i, j).clone();
            }
        }
        m
    }

    /// Principal submatrix on the given index set.
    pub fn submatrix(&self, idx: &[usize]) -> Result<SqMatrix> {
        check_dim(idx.len())?;
        let mut m = Self::zeros(idx.len(), self.spec);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        echelon::rank(&self.rows(), self.n)
    }

    /// Basis of the null space; see [`echelon::kernel`] for the normalization.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        echelon::kernel(&self.rows(), self.n, self.spec)
    }

    /// Columns of `self` at the pivot positions of its echelon form.
    pub fn column_space_basis(&self) -> Vec<Vector> {
        let mut rows = self.rows();
        let pivots = echelon::rref(&mut rows, self.n);
        pivots.into_iter().map(|c| self.column(c)).collect()
    }

    pub fn det(&self) -> FieldScalar {
        let n = self.n;
        let mut rows = self.rows();
        let mut det = self.spec.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
                return self.spec.zero();
            };
            if pr != c {
                rows.swap(pr, c);
                det = -det;
            }
            det = &det * &rows[c][c];
            let inv = rows[c][c].inv().unwrap();
            for i in c + 1..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let f = &rows[i][c] * &inv;
                for j in c..n {
                    let t = &f * &rows[c][j];
                    rows[i][j] = &rows[i][j] - &t;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    pub fn inverse(&self) -> Result<SqMatrix> {
        let n = self.n;
        let mut rows: Vec<Vector> = self
            .rows()
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.extend((0..n).map(|j| {
                    if i == j {
                        self.spec.one()
                    } else {
                        self.spec.zero()
                    }
                }));
                r
            })
            .collect();
        let pivots = echelon::rref(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(SqMatrix {
            n,
            spec: self.spec,
            entries: rows.into_iter().flat_map(|r| r[n..].to_vec()).collect(),
        })
    }

    /// Monic characteristic polynomial `det(tI - self)` by Berkowitz's
    /// division-free algorithm.
    pub fn char_poly(&self) -> Poly {
        let spec = self.spec;
        let a = |i: usize, j: usize| self.get(i, j);
        // descending coefficients of the leading k x k block
        let mut v: Vec<FieldScalar> = vec![spec.one(), -a(0, 0)];
        for k in 1..self.n {
            // q_0 = 1, q_1 = -a_kk, q_i = -C M^{i-2} R
            let mut q = vec![spec.one(), -a(k, k)];
            let mut cur: Vector = (0..k).map(|i| a(i, k).clone()).collect(); // M^j R
            for _ in 0..k {
                let cr = (0..k).fold(spec.zero(), |acc, j| &acc + &(a(k, j) * &cur[j]));
                q.push(-cr);
                cur = (0..k)
                    .map(|i| (0..k).fold(spec.zero(), |acc, j| &acc + &(a(i, j) * &cur[j])))
                    .collect();
            }
            let mut next = vec![spec.zero(); k + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for j in 0..=i.min(k) {
                    *slot = &*slot + &(&q[i - j] * &v[j]);
                }
            }
            v = next;
        }
        v.reverse();
        Poly::new(spec, v)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.n as u32).is_zero()
    }

    pub fn commutes_with(&self, other: &SqMatrix) -> bool {
        &(self * other) == &(other * self)
    }

    /// `x⁻¹ · self · x`.
    pub fn conjugate_by(&self, x: &SqMatrix) -> Result<SqMatrix> {
        self.check_compatible(x)?;
        let xi = x.inverse()?;
        Ok(&(&xi * self) * x)
    }

    /// Entrywise image in another field (GF(p) into GF(p²)).
    pub fn embed(&self) -> Result<SqMatrix> {
        let target = self.spec.extend_to_quadratic()?;
        Ok(SqMatrix {
            n: self.n,
            spec: target,
            entries: self
                .entries
                .iter()
                .map(FieldScalar::embed)
                .collect::<Result<_>>()?,
        })
    }
}

impl Index<(usize, usize)> for SqMatrix {
    type Output = FieldScalar;
    fn index(&self, (i, j): (usize, usize)) -> &FieldScalar {
        self.get(i, j)
    }
}

impl Mul for &SqMatrix {
    type Output = SqMatrix;
    fn mul(self, rhs: &SqMatrix) -> SqMatrix {
        self.checked_mul(rhs).expect("SqMatrix::mul")
    }
}

impl Add for &SqMatrix {
    type Output = SqMatrix;
    fn add(self, rhs: &SqMatrix) -> SqMatrix {
        self.checked_add(rhs).expect("SqMatrix::add")
    }
}

impl Sub for &SqMatrix {
    type Output = SqMatrix;
    fn sub(self, rhs: &SqMatrix) -> SqMatrix {
        self.checked_sub(rhs).expect("SqMatrix::sub")
    }
}

impl Neg for &SqMatrix {
    type Output = SqMatrix;
    fn neg(self) -> SqMatrix {
        SqMatrix {
            n: self.n,
            spec: self.spec,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for SqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "] over {}", self.spec)
    }
}

pub fn mat_mul(a: &SqMatrix, b: &SqMatrix) -> Result<SqMatrix> {
    a.checked_mul(b)
}

pub fn mat_add(a: &SqMatrix, b: &SqMatrix) -> Result<SqMatrix> {
    a.checked_add(b)
}

pub fn mat_scale(a: &SqMatrix, c: &FieldScalar) -> Result<SqMatrix> {
    a.scale(c)
}

/// `x⁻¹ a x`.
pub fn conjugate(x: &SqMatrix, a: &SqMatrix) -> Result<SqMatrix> {
    a.conjugate_by(x)
}

/// A linear space of `n x n` matrices given by an independent basis.
#[derive(Clone, PartialEq, Eq)]
pub struct LinSpace {
    n: usize,
    spec: FieldSpec,
    basis: Vec<SqMatrix>,
}

impl LinSpace {
    pub fn new(n: usize, spec: FieldSpec, basis: Vec<SqMatrix>) -> Result<Self> {
        check_dim(n)?;
        if basis.iter().any(|b| b.n != n || b.spec != spec) {
            return Err(Error::ShapeMismatch("basis element of wrong shape".into()));
        }
        let rows: Vec<Vector> = basis.iter().map(SqMatrix::vectorize).collect();
        if echelon::rank(&rows, n * n) != basis.len() {
            return Err(Error::ShapeMismatch("basis is not linearly independent".into()));
        }
        Ok(LinSpace { n, spec, basis })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SqMatrix] {
        &self.basis
    }

    pub fn contains(&self, m: &SqMatrix) -> bool {
        if m.n != self.n || m.spec != self.spec {
            return false;
        }
        let mut rows: Vec<Vector> = self.basis.iter().map(SqMatrix::vectorize).collect();
        rows.push(m.vectorize());
        echelon::rank(&rows, self.n * self.n) == self.basis.len()
    }

    pub fn combine(&self, coeffs: &[FieldScalar]) -> SqMatrix {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut acc = SqMatrix::zeros(self.n, self.spec);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = &acc + &b.scale(c).unwrap();
            }
        }
        acc
    }

    /// Number of elements over a finite field, `None` for ℚ or on overflow.
    pub fn cardinality(&self) -> Option<u64> {
        self.spec.order()?.checked_pow(self.dim() as u32)
    }

    /// Element with the given index, reading the index as base-q digits
    /// (first basis coefficient most significant).
    pub fn element(&self, mut index: u64) -> SqMatrix {
        let q = self.spec.order().expect("finite field");
        let mut coeffs = vec![self.spec.zero(); self.dim()];
        for c in coeffs.iter_mut().rev() {
            *c = self.spec.element(index % q);
            index /= q;
        }
        self.combine(&coeffs)
    }

    /// Every element of the space over a finite field.
    pub fn elements(&self) -> impl Iterator<Item = SqMatrix> + '_ {
        let total = self.cardinality().expect("finite enumeration");
        (0..total).map(move |i| self.element(i))
    }
}

impl fmt::Debug for LinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinSpace")
            .field("n", &self.n)
            .field("dim", &self.dim())
            .field("basis", &self.basis)
            .finish()
    }
}

/// The linear condition `Σ Lᵢ · X · Rᵢ = 0` on an unknown matrix `X`.
#[derive(Debug, Clone)]
pub struct LinearConstraint {
    pub terms: Vec<(SqMatrix, SqMatrix)>,
}

impl LinearConstraint {
    /// `X·M − M·X = 0`.
    pub fn commutes_with(m: &SqMatrix) -> Self {
        let id = SqMatrix::identity(m.n, m.spec);
        LinearConstraint {
            terms: vec![(id.clone(), m.clone()), (-m, id)],
        }
    }

    pub fn apply(&self, x: &SqMatrix) -> SqMatrix {
        self.terms
            .iter()
            .fold(SqMatrix::zeros(x.n, x.spec), |acc, (l, r)| {
                &acc + &(&(l * x) * r)
            })
    }
}

/// Solution space of a system of linear matrix equations, vectorized in
/// row-major order (`X_ij` is unknown `i·n + j`).
pub fn solve_matrix_equations(
    n: usize,
    spec: FieldSpec,
    constraints: &[LinearConstraint],
) -> Result<LinSpace> {
    check_dim(n)?;
    let nn = n * n;
    let mut rows: Vec<Vector> = Vec::new();
    for con in constraints {
        for (l, r) in &con.terms {
            if l.n != n || r.n != n || l.spec != spec || r.spec != spec {
                return Err(Error::ShapeMismatch("constraint term of wrong shape".into()));
            }
        }
        // (L X R)_ab = Σ_ij L_ai X_ij R_jb
        for a in 0..n {
            for b in 0..n {
                let mut row = vec![spec.zero(); nn];
                for (l, r) in &con.terms {
                    for i in 0..n {
                        if l[(a, i)].is_zero() {
                            continue;
                        }
                        for j in 0..n {
                            if !r[(j, b)].is_zero() {
                                row[i * n + j] = &row[i * n + j] + &(&l[(a, i)] * &r[(j, b)]);
                            }
                        }
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = echelon::kernel(&rows, nn, spec)
        .into_iter()
        .map(|v| SqMatrix::from_vector(n, spec, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(LinSpace { n, spec, basis })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn j4() -> SqMatrix {
        SqMatrix::jordan_block(4, q())
    }

    #[test]
    fn shift_squared() {
        let j2 = &j4() * &j4();
        let mut expect = SqMatrix::zeros(4, q());
        expect.set(0, 2, q().one());
        expect.set(1, 3, q().one());
        assert_eq!(j2, expect);
        assert_eq!(&j4() * &SqMatrix::identity(4, q()), j4());
    }

    #[test]
    fn case3_basis_change_is_an_involution() {
        let t = SqMatrix::from_array(q(), [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
            .unwrap();
        assert!((&t * &t).is_identity());
    }

    #[test]
    fn mismatches_are_errors() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(matches!(
            mat_mul(&j4(), &SqMatrix::identity(4, f2)),
            Err(Error::FieldMismatch { .. })
        ));
        assert!(matches!(
            mat_add(&j4(), &SqMatrix::identity(3, q())),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            SqMatrix::from_array(q(), [[0; 5]; 5]),
            Err(Error::DimensionOutOfRange(5))
        ));
    }

    #[test]
    fn rank_and_kernel() {
        assert_eq!(j4().rank(), 3);
        assert_eq!(
            j4().kernel_basis(),
            vec![vec![q().one(), q().zero(), q().zero(), q().zero()]]
        );
        assert_eq!(SqMatrix::zeros(4, q()).rank(), 0);
        // Case 2 canonical B with λ = 1, μ = 0: rows (0 1 0 0), (0 0 1 0), 0, (0 0 1 0)
        let b = SqMatrix::from_array(q(), [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 1, 0]])
            .unwrap();
        assert_eq!(b.rank(), 2);
        let k = b.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(b.mul_vec(&v).iter().all(FieldScalar::is_zero));
        }
    }

    #[test]
    fn inverse_examples() {
        let id = SqMatrix::identity(4, q());
        assert_eq!(id.inverse().unwrap(), id);
        assert!(matches!(j4().inverse(), Err(Error::Singular)));
    }

    #[test]
    fn inverse_matches_case2_display() {
        // X from the (3,1) stabilizer with x, y, z, w, s, t = 2, 3, 5, 7, 11, 13
        let x = SqMatrix::from_array(q(), [[2, 3, 5, 11], [0, 2, 3, 0], [0, 0, 2, 0], [0, 0, 13, 7]])
            .unwrap();
        let xi = x.inverse().unwrap();
        let s = |n, d| q().from_ratio(n, d).unwrap();
        assert_eq!(xi[(0, 3)], s(-11, 14)); // -(xw)^-1 s
        assert_eq!(xi[(3, 2)], s(-13, 14)); // -(xw)^-1 t
        assert_eq!(xi[(0, 1)], s(-3, 4)); // -x^-2 y
        assert_eq!(xi[(3, 3)], s(1, 7));
    }

    #[test]
    fn inverse_matches_case3_display() {
        // x = 1, s, y, t, v, w = 2, 3, 5, 7, 11
        let x = SqMatrix::from_array(q(), [[1, 2, 3, 5], [0, 1, 7, 11], [0, 0, 1, 2], [0, 0, 0, 1]])
            .unwrap();
        let xi = x.inverse().unwrap();
        assert_eq!(xi[(1, 2)], q().from_i64(-7)); // -v
        assert_eq!(xi[(0, 2)], q().from_i64(-3 + 7 * 2)); // -y + vs
        assert_eq!(xi[(1, 3)], q().from_i64(-11 + 7 * 2)); // -w + vs
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(j4().char_poly().to_string(), "t^4");
        let d = SqMatrix::from_array(q(), [[1, 0], [0, 2]]).unwrap();
        assert_eq!(d.char_poly().to_string(), "t^2-3t+2");
        let f2 = FieldSpec::prime(2).unwrap();
        let m = SqMatrix::from_array(f2, [[0, 1], [1, 1]]).unwrap();
        assert_eq!(m.char_poly().to_string(), "t^2+t+1");
    }

    #[test]
    fn nilpotency() {
        assert!(j4().is_nilpotent());
        assert!(!SqMatrix::identity(4, q()).is_nilpotent());
        // Case 4 NilC member with the lower 2x2 block [[1,1],[-1,-1]] (square zero)
        let b = SqMatrix::from_array(q(), [[0, 2, 3, 4], [0, 0, 0, 0], [0, 5, 1, 1], [0, 6, -1, -1]])
            .unwrap();
        assert!(b.is_nilpotent());
    }

    #[test]
    fn conjugation_examples() {
        let a = SqMatrix::from_array(q(), [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
            .unwrap();
        assert_eq!(conjugate(&SqMatrix::identity(4, q()), &a).unwrap(), a);
        let t = SqMatrix::from_array(q(), [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
            .unwrap();
        let a2 = conjugate(&t, &a).unwrap();
        let expect =
            SqMatrix::from_array(q(), [[0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0]])
                .unwrap();
        assert_eq!(a2, expect);
    }

    #[test]
    fn conjugation_scales_case2_tau() {
        // X with x = 3, w = 5 maps the τ entry at (4,3) to x w⁻¹ τ
        let x = SqMatrix::from_array(q(), [[3, 0, 0, 0], [0, 3, 0, 0], [0, 0, 3, 0], [0, 0, 0, 5]])
            .unwrap();
        let b = SqMatrix::from_array(q(), [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 7, 0]])
            .unwrap();
        let c = conjugate(&x, &b).unwrap();
        assert_eq!(c[(3, 2)], q().from_ratio(21, 5).unwrap());
    }

    #[test]
    fn solve_commutants() {
        let s = solve_matrix_equations(4, q(), &[LinearConstraint::commutes_with(&j4())]).unwrap();
        assert_eq!(s.dim(), 4);
        for k in 0..4 {
            assert!(s.contains(&j4().pow(k)));
        }
        let z = SqMatrix::zeros(4, q());
        let full = solve_matrix_equations(4, q(), &[LinearConstraint::commutes_with(&z)]).unwrap();
        assert_eq!(full.dim(), 16);
        let a4 = SqMatrix::unit(4, q(), 0, 1);
        let s4 = solve_matrix_equations(4, q(), &[LinearConstraint::commutes_with(&a4)]).unwrap();
        assert_eq!(s4.dim(), 10);
        for b in s4.basis() {
            assert!(LinearConstraint::commutes_with(&a4).apply(b).is_zero());
        }
    }

    #[test]
    fn det_matches_rank() {
        let f3 = FieldSpec::prime(3).unwrap();
        let m = SqMatrix::from_array(f3, [[1, 2, 0], [2, 1, 1], [0, 1, 1]]).unwrap();
        // 1(1-1) - 2(2-0) + 0 = -4 = 2 mod 3
        assert_eq!(m.det(), f3.from_i64(2));
        assert!(m.is_invertible());
        assert!((&m * &m.inverse().unwrap()).is_identity());
    }
}
