//! Commutants, stabilizers and the named coordinates of the nilpotent
//! commutator for each 4x4 Jordan type.

use serde::Serialize;

use crate::document::render_matrix;
use crate::error::{Error, Result};
use crate::field::{FieldScalar, FieldSpec};
use crate::jordan::JordanType;
use crate::matrix::{solve_matrix_equations, LinSpace, LinearConstraint, SqMatrix};
use crate::pair::MatrixPair;

/// Basis of `{X : XA = AX}`.
pub fn commutant(a: &SqMatrix) -> LinSpace {
    solve_matrix_equations(a.n(), a.spec(), &[LinearConstraint::commutes_with(a)])
        .expect("shapes agree")
}

/// Basis of `{X : XA = AX, XB = BX}`.
pub fn pair_commutant(p: &MatrixPair) -> LinSpace {
    solve_matrix_equations(
        p.n(),
        p.spec(),
        &[
            LinearConstraint::commutes_with(p.a()),
            LinearConstraint::commutes_with(p.b()),
        ],
    )
    .expect("shapes agree")
}

pub fn stab_contains(a: &SqMatrix, x: &SqMatrix) -> bool {
    a.n() == x.n() && a.spec() == x.spec() && x.is_invertible() && a.commutes_with(x)
}

pub fn nilc_contains(a: &SqMatrix, b: &SqMatrix) -> bool {
    a.n() == b.n() && a.spec() == b.spec() && b.is_nilpotent() && a.commutes_with(b)
}

/// The permutation swapping the middle two basis vectors; an involution.
pub fn case3_basis_change(spec: FieldSpec) -> SqMatrix {
    SqMatrix::from_array(spec, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
        .expect("4x4")
}

/// The representative of `A` whose commutator the coordinates describe:
/// the Jordan matrix, except for type (2,2) where it is `T⁻¹ J T`.
pub fn case_matrix(jt: &JordanType, spec: FieldSpec) -> SqMatrix {
    let j = jt.jordan_matrix(spec);
    if jt.parts() == [2, 2] {
        let t = case3_basis_change(spec);
        &(&t * &j) * &t
    } else {
        j
    }
}

/// Named entries of a nilpotent matrix commuting with the case matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseCoordinates {
    Case1 {
        lambda: FieldScalar,
        mu: FieldScalar,
        nu: FieldScalar,
    },
    Case2 {
        alpha: FieldScalar,
        beta: FieldScalar,
        sigma: FieldScalar,
        tau: FieldScalar,
    },
    /// In the transformed basis.
    Case3 {
        alpha: FieldScalar,
        lambda: FieldScalar,
        sigma: FieldScalar,
        gamma: FieldScalar,
        beta: FieldScalar,
        mu: FieldScalar,
        tau: FieldScalar,
        delta: FieldScalar,
    },
    Case4 {
        alpha: FieldScalar,
        sigma: FieldScalar,
        tau: FieldScalar,
        lambda: FieldScalar,
        mu: FieldScalar,
        beta: FieldScalar,
        gamma: FieldScalar,
        delta: FieldScalar,
        eta: FieldScalar,
    },
    Case5 {
        b: SqMatrix,
    },
}

impl CaseCoordinates {
    /// Rebuilds the matrix; inverse of [`case_coordinates`].
    pub fn reconstruct(&self, spec: FieldSpec) -> SqMatrix {
        let z = spec.zero();
        let m = |rows: [[&FieldScalar; 4]; 4]| {
            SqMatrix::from_rows(
                spec,
                rows.iter().map(|r| r.iter().map(|&x| x.clone()).collect()).collect(),
            )
            .expect("coordinates share the field")
        };
        match self {
            CaseCoordinates::Case1 { lambda, mu, nu } => m([
                [&z, lambda, mu, nu],
                [&z, &z, lambda, mu],
                [&z, &z, &z, lambda],
                [&z, &z, &z, &z],
            ]),
            CaseCoordinates::Case2 {
                alpha,
                beta,
                sigma,
                tau,
            } => m([
                [&z, alpha, beta, sigma],
                [&z, &z, alpha, &z],
                [&z, &z, &z, &z],
                [&z, &z, tau, &z],
            ]),
            CaseCoordinates::Case3 {
                alpha,
                lambda,
                sigma,
                gamma,
                beta,
                mu,
                tau,
                delta,
            } => m([
                [alpha, lambda, beta, mu],
                [sigma, gamma, tau, delta],
                [&z, &z, alpha, lambda],
                [&z, &z, sigma, gamma],
            ]),
            CaseCoordinates::Case4 {
                alpha,
                sigma,
                tau,
                lambda,
                mu,
                beta,
                gamma,
                delta,
                eta,
            } => m([
                [&z, alpha, sigma, tau],
                [&z, &z, &z, &z],
                [&z, lambda, beta, gamma],
                [&z, mu, delta, eta],
            ]),
            CaseCoordinates::Case5 { b } => b.clone(),
        }
    }
}

/// Reads the named coordinates of `b`, which must lie in the nilpotent
/// commutator of [`case_matrix`] for `jt`.
pub fn case_coordinates(jt: &JordanType, b: &SqMatrix) -> Result<CaseCoordinates> {
    if jt.n() != 4 || b.n() != 4 {
        return Err(Error::Unsupported(format!(
            "case coordinates are defined for 4x4 matrices, got type {jt}"
        )));
    }
    let spec = b.spec();
    if !nilc_contains(&case_matrix(jt, spec), b) {
        return Err(Error::NotInNilC);
    }
    let e = |i: usize, j: usize| b[(i, j)].clone();
    let coords = match jt.parts() {
        [4] => CaseCoordinates::Case1 {
            lambda: e(0, 1),
            mu: e(0, 2),
            nu: e(0, 3),
        },
        [3, 1] => CaseCoordinates::Case2 {
            alpha: e(0, 1),
            beta: e(0, 2),
            sigma: e(0, 3),
            tau: e(3, 2),
        },
        [2, 2] => CaseCoordinates::Case3 {
            alpha: e(0, 0),
            lambda: e(0, 1),
            sigma: e(1, 0),
            gamma: e(1, 1),
            beta: e(0, 2),
            mu: e(0, 3),
            tau: e(1, 2),
            delta: e(1, 3),
        },
        [2, 1, 1] => CaseCoordinates::Case4 {
            alpha: e(0, 1),
            sigma: e(0, 2),
            tau: e(0, 3),
            lambda: e(2, 1),
            mu: e(3, 1),
            beta: e(2, 2),
            gamma: e(2, 3),
            delta: e(3, 2),
            eta: e(3, 3),
        },
        _ => CaseCoordinates::Case5 { b: b.clone() },
    };
    if coords.reconstruct(spec) != *b {
        return Err(Error::NotInNilC);
    }
    Ok(coords)
}

/// Named entries of a stabilizer element of the case matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabParams {
    Case1 {
        x: FieldScalar,
        y: FieldScalar,
        z: FieldScalar,
        w: FieldScalar,
    },
    Case2 {
        x: FieldScalar,
        y: FieldScalar,
        z: FieldScalar,
        w: FieldScalar,
        s: FieldScalar,
        t: FieldScalar,
    },
    /// In the transformed basis: diagonal blocks `[[x,s],[u,z]]`, corner `[[y,t],[v,w]]`.
    Case3 {
        x: FieldScalar,
        s: FieldScalar,
        u: FieldScalar,
        z: FieldScalar,
        y: FieldScalar,
        t: FieldScalar,
        v: FieldScalar,
        w: FieldScalar,
    },
    Case4 {
        x: FieldScalar,
        y: FieldScalar,
        s: FieldScalar,
        t: FieldScalar,
        p: FieldScalar,
        q: FieldScalar,
        z: FieldScalar,
        u: FieldScalar,
        v: FieldScalar,
        w: FieldScalar,
    },
    Case5 {
        x: SqMatrix,
    },
}

impl StabParams {
    pub fn matrix(&self, spec: FieldSpec) -> SqMatrix {
        let o = spec.zero();
        let m = |rows: [[&FieldScalar; 4]; 4]| {
            SqMatrix::from_rows(
                spec,
                rows.iter().map(|r| r.iter().map(|&x| x.clone()).collect()).collect(),
            )
            .expect("parameters share the field")
        };
        match self {
            StabParams::Case1 { x, y, z, w } => m([
                [x, y, z, w],
                [&o, x, y, z],
                [&o, &o, x, y],
                [&o, &o, &o, x],
            ]),
            StabParams::Case2 { x, y, z, w, s, t } => m([
                [x, y, z, s],
                [&o, x, y, &o],
                [&o, &o, x, &o],
                [&o, &o, t, w],
            ]),
            StabParams::Case3 {
                x,
                s,
                u,
                z,
                y,
                t,
                v,
                w,
            } => m([[x, s, y, t], [u, z, v, w], [&o, &o, x, s], [&o, &o, u, z]]),
            StabParams::Case4 {
                x,
                y,
                s,
                t,
                p,
                q,
                z,
                u,
                v,
                w,
            } => m([[x, y, s, t], [&o, x, &o, &o], [&o, p, z, u], [&o, q, v, w]]),
            StabParams::Case5 { x } => x.clone(),
        }
    }

    /// The invertibility side conditions of each parametrization.
    pub fn is_admissible(&self) -> bool {
        let det2 = |a: &FieldScalar, b: &FieldScalar, c: &FieldScalar, d: &FieldScalar| {
            !(&(a * d) - &(b * c)).is_zero()
        };
        match self {
            StabParams::Case1 { x, .. } => !x.is_zero(),
            StabParams::Case2 { x, w, .. } => !x.is_zero() && !w.is_zero(),
            StabParams::Case3 { x, s, u, z, .. } => det2(x, s, u, z),
            StabParams::Case4 { x, z, u, v, w, .. } => !x.is_zero() && det2(z, u, v, w),
            StabParams::Case5 { x } => x.is_invertible(),
        }
    }
}

/// JSON view of a commutant.
#[derive(Debug, Clone, Serialize)]
pub struct CommutantReport {
    pub field: String,
    pub n: usize,
    pub jordan_type: JordanType,
    pub dimension: usize,
    pub expected_dimension: usize,
    pub pair_dimension: usize,
    pub basis: Vec<Vec<Vec<String>>>,
    pub pair_basis: Vec<Vec<Vec<String>>>,
}

pub fn commutant_report(p: &MatrixPair) -> Result<CommutantReport> {
    let jt = JordanType::from_rank_sequence(p.a())?;
    let c = commutant(p.a());
    let pc = pair_commutant(p);
    Ok(CommutantReport {
        field: p.spec().to_string(),
        n: p.n(),
        expected_dimension: jt.commutant_dim(),
        jordan_type: jt,
        dimension: c.dim(),
        pair_dimension: pc.dim(),
        basis: c.basis().iter().map(render_matrix).collect(),
        pair_basis: pc.basis().iter().map(render_matrix).collect(),
    })
}
