//! Per-Jordan-type reductions. Every function works in the basis where `A`
//! is already in Jordan form and returns a conjugating matrix relative to it.

use crate::commutant::{case3_basis_change, case_coordinates, CaseCoordinates, StabParams};
use crate::error::{Error, Result};
use crate::field::{FieldScalar, FieldSpec};
use crate::jordan::{jnf_2x2, nilpotent_jnf, Form2, JordanType, Jnf2};
use crate::matrix::SqMatrix;
use crate::pair::MatrixPair;

use super::formulas;
use super::{not_split, BlockLabel, IndecBlock};

/// Coordinate groups whose spans reduce the pair after conjugating by `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposeHint {
    pub x: SqMatrix,
    pub groups: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    Block { block: IndecBlock, x: SqMatrix },
    Split(DecomposeHint),
}

fn block(label: BlockLabel, params: Vec<FieldScalar>, x: SqMatrix) -> Result<Reduction> {
    Ok(Reduction::Block {
        block: IndecBlock::new(label, params)?,
        x,
    })
}

fn split(x: SqMatrix, groups: &[&[usize]]) -> Reduction {
    Reduction::Split(DecomposeHint {
        x,
        groups: groups.iter().map(|g| g.to_vec()).collect(),
    })
}

fn m2(spec: FieldSpec, a: FieldScalar, b: FieldScalar, c: FieldScalar, d: FieldScalar) -> SqMatrix {
    SqMatrix::from_rows(spec, vec![vec![a, b], vec![c, d]]).expect("2x2")
}

fn check_formula(name: &str, predicted: FieldScalar, actual: &FieldScalar) -> Result<()> {
    if predicted != *actual {
        return Err(Error::Internal(format!(
            "{name}: predicted {predicted}, conjugate has {actual}"
        )));
    }
    Ok(())
}

/// Dispatch on the Jordan type of `A` (already in Jordan form).
pub(crate) fn reduce(p: &MatrixPair, jt: &JordanType) -> Result<Reduction> {
    let spec = p.spec();
    let n = p.n();
    if p.a().is_zero() {
        return reduce_case5(p);
    }
    let id = SqMatrix::identity(n, spec);
    let b = p.b();
    match jt.parts() {
        [4] => reduce_case1(&case_coordinates(jt, b)?),
        [3, 1] => reduce_case2(&case_coordinates(jt, b)?),
        [2, 2] => {
            let t = case3_basis_change(spec);
            reduce_case3(&case_coordinates(jt, &(&(&t * b) * &t))?)
        }
        [2, 1, 1] => reduce_case4(&case_coordinates(jt, b)?),
        [3] => block(BlockLabel::J3, vec![b[(0, 1)].clone(), b[(0, 2)].clone()], id),
        [2, 1] => reduce_size3_mixed(b),
        [2] => block(BlockLabel::J2, vec![b[(0, 1)].clone()], id),
        _ => Err(Error::Internal(format!("no reduction for Jordan type {jt}"))),
    }
}

/// Jordan type (4): the stabilizer fixes every member, so the parameters are read off.
pub fn reduce_case1(coords: &CaseCoordinates) -> Result<Reduction> {
    let CaseCoordinates::Case1 { lambda, mu, nu } = coords else {
        return Err(Error::Internal("case 1 expects case 1 coordinates".into()));
    };
    let spec = lambda.spec();
    block(
        BlockLabel::F11,
        vec![lambda.clone(), mu.clone(), nu.clone()],
        SqMatrix::identity(4, spec),
    )
}

/// Jordan type (3,1).
pub fn reduce_case2(coords: &CaseCoordinates) -> Result<Reduction> {
    let CaseCoordinates::Case2 {
        alpha,
        beta,
        sigma,
        tau,
    } = coords
    else {
        return Err(Error::Internal("case 2 expects case 2 coordinates".into()));
    };
    let spec = alpha.spec();
    let (o, one) = (spec.zero(), spec.one());
    let stab = |w: FieldScalar, s: FieldScalar, t: FieldScalar| StabParams::Case2 {
        x: one.clone(),
        y: o.clone(),
        z: o.clone(),
        w,
        s,
        t,
    };
    let (sp, label, params) = if !tau.is_zero() {
        (
            stab(tau.clone(), beta.clone(), o.clone()),
            BlockLabel::F21,
            vec![alpha.clone(), sigma * tau],
        )
    } else if !sigma.is_zero() {
        let w = sigma.inv()?;
        let t = -&(beta * &w);
        (stab(w, o.clone(), t), BlockLabel::F22, vec![alpha.clone()])
    } else {
        return Ok(split(SqMatrix::identity(4, spec), &[&[0, 1, 2], &[3]]));
    };
    let x = sp.matrix(spec);
    let conj = coords.reconstruct(spec).conjugate_by(&x)?;
    check_formula("beta'", formulas::case2_beta_prime(coords, &sp)?, &conj[(0, 2)])?;
    block(label, params, x)
}

/// Jordan type (2,2), coordinates in the transformed basis. The returned
/// matrix is expressed in the untransformed Jordan basis.
pub fn reduce_case3(coords: &CaseCoordinates) -> Result<Reduction> {
    let CaseCoordinates::Case3 {
        alpha,
        lambda,
        sigma,
        gamma,
        beta,
        mu,
        tau,
        delta,
    } = coords
    else {
        return Err(Error::Internal("case 3 expects case 3 coordinates".into()));
    };
    let spec = alpha.spec();
    let (o, one) = (spec.zero(), spec.one());
    let t = case3_basis_change(spec);
    let untransform = |x: &SqMatrix| &(&t * x) * &t;
    let nil = m2(spec, alpha.clone(), lambda.clone(), sigma.clone(), gamma.clone());
    let corner = m2(spec, beta.clone(), mu.clone(), tau.clone(), delta.clone());
    if !nil.is_zero() {
        let (q, _) = nilpotent_jnf(&nil)?;
        let y = SqMatrix::block_diag(spec, &[q.clone(), q])?;
        let b1 = coords.reconstruct(spec).conjugate_by(&y)?;
        let jt = JordanType::new(vec![2, 2])?;
        let CaseCoordinates::Case3 {
            beta, mu, tau, delta, ..
        } = case_coordinates(&jt, &b1)?
        else {
            unreachable!()
        };
        let sp = StabParams::Case3 {
            x: one.clone(),
            s: o.clone(),
            u: o.clone(),
            z: one.clone(),
            y: mu.clone(),
            t: o.clone(),
            v: -&beta,
            w: o.clone(),
        };
        let xs = sp.matrix(spec);
        let b2 = b1.conjugate_by(&xs)?;
        let c1 = case_coordinates(&jt, &b1)?;
        check_formula("mu'", formulas::case3_mu_prime(&c1, &sp)?, &b2[(0, 3)])?;
        return block(
            BlockLabel::F31,
            vec![tau, &beta + &delta],
            untransform(&(&y * &xs)),
        );
    }
    match jnf_2x2(&corner)? {
        Jnf2::NotSplit { charpoly } => Err(not_split(charpoly.to_string(), spec)),
        Jnf2::Split { form, p } => {
            let y = untransform(&SqMatrix::block_diag(spec, &[p.clone(), p])?);
            match form {
                Form2::JordanBlock(l) => block(BlockLabel::F32, vec![l], y),
                Form2::Diagonal(..) => Ok(split(y, &[&[0, 1], &[2, 3]])),
            }
        }
    }
}

/// Jordan type (2,1,1).
pub fn reduce_case4(coords: &CaseCoordinates) -> Result<Reduction> {
    let CaseCoordinates::Case4 {
        alpha,
        sigma,
        tau,
        lambda,
        mu,
        beta,
        gamma,
        delta,
        eta,
    } = coords
    else {
        return Err(Error::Internal("case 4 expects case 4 coordinates".into()));
    };
    let spec = alpha.spec();
    let (o, one) = (spec.zero(), spec.one());
    let id2 = SqMatrix::identity(2, spec);
    let jt = JordanType::new(vec![2, 1, 1])?;
    let b0 = coords.reconstruct(spec);
    let lower = m2(spec, beta.clone(), gamma.clone(), delta.clone(), eta.clone());
    let stab = |y: &FieldScalar, s, t, p, q, z: &SqMatrix| StabParams::Case4 {
        x: one.clone(),
        y: y.clone(),
        s,
        t,
        p,
        q,
        z: z[(0, 0)].clone(),
        u: z[(0, 1)].clone(),
        v: z[(1, 0)].clone(),
        w: z[(1, 1)].clone(),
    };

    if !lower.is_zero() {
        let (ql, _) = nilpotent_jnf(&lower)?;
        let y = SqMatrix::block_diag(spec, &[id2.clone(), ql])?;
        let b1 = b0.conjugate_by(&y)?;
        let c1 = case_coordinates(&jt, &b1)?;
        let CaseCoordinates::Case4 {
            alpha,
            sigma,
            tau,
            lambda,
            mu,
            ..
        } = &c1
        else {
            unreachable!()
        };
        let (sp, outcome) = if !mu.is_zero() {
            let zb = m2(spec, mu.clone(), o.clone(), o.clone(), mu.clone());
            let sp = stab(&o, tau * mu, alpha - &(tau * lambda), o.clone(), -lambda, &zb);
            (sp, Some((BlockLabel::F41, vec![sigma * mu])))
        } else if !sigma.is_zero() {
            let zi = sigma.inv()?;
            let zb = m2(spec, zi.clone(), o.clone(), o.clone(), zi.clone());
            let p = &(&(tau * lambda) - alpha) * &zi;
            let sp = stab(&o, tau * &zi, o.clone(), p, -lambda, &zb);
            (sp, Some((BlockLabel::F42, vec![])))
        } else {
            let sp = stab(&o, tau.clone(), o.clone(), o.clone(), -lambda, &id2);
            (sp, None)
        };
        let xs = sp.matrix(spec);
        let b2 = b1.conjugate_by(&xs)?;
        check_formula("alpha'", formulas::case4_alpha_prime_jordan(&c1, &sp)?, &b2[(0, 1)])?;
        let x = &y * &xs;
        return match outcome {
            Some((label, params)) => block(label, params, x),
            None => Ok(split(x, &[&[0, 1], &[2, 3]])),
        };
    }

    if !sigma.is_zero() || !tau.is_zero() {
        let r = if !sigma.is_zero() {
            m2(spec, sigma.clone(), tau.clone(), o.clone(), one.clone())
        } else {
            m2(spec, sigma.clone(), tau.clone(), one.clone(), o.clone())
        };
        let l1 = &(&r[(0, 0)] * lambda) + &(&r[(0, 1)] * mu);
        let m1 = &(&r[(1, 0)] * lambda) + &(&r[(1, 1)] * mu);
        let (zfix, four_three) = if !l1.is_zero() {
            (m2(spec, one.clone(), o.clone(), &m1 / &l1, one.clone()), false)
        } else if !m1.is_zero() {
            (m2(spec, one.clone(), o.clone(), o.clone(), m1.clone()), true)
        } else {
            (id2.clone(), false)
        };
        let zb = &r.inverse()? * &zfix;
        let sp = stab(&o, o.clone(), o.clone(), o.clone(), o.clone(), &zb);
        let x1 = sp.matrix(spec);
        let b1 = b0.conjugate_by(&x1)?;
        check_formula("alpha'", formulas::case4_alpha_prime_zero(coords, &sp)?, &b1[(0, 1)])?;
        if !four_three {
            return Ok(split(x1, &[&[0, 1, 2], &[3]]));
        }
        let c1 = case_coordinates(&jt, &b1)?;
        let CaseCoordinates::Case4 { alpha: a1, .. } = &c1 else {
            unreachable!()
        };
        let sp2 = stab(&o, o.clone(), o.clone(), -a1, o.clone(), &id2);
        let x2 = sp2.matrix(spec);
        let b2 = b1.conjugate_by(&x2)?;
        check_formula("alpha'", formulas::case4_alpha_prime_zero(&c1, &sp2)?, &b2[(0, 1)])?;
        return block(BlockLabel::F43, vec![], &x1 * &x2);
    }

    if !lambda.is_zero() || !mu.is_zero() {
        let zb = if !lambda.is_zero() {
            m2(spec, lambda.clone(), o.clone(), mu.clone(), one.clone())
        } else {
            m2(spec, lambda.clone(), one.clone(), mu.clone(), o.clone())
        };
        let sp = stab(&o, alpha.clone(), o.clone(), o.clone(), o.clone(), &zb);
        let x = sp.matrix(spec);
        let b1 = b0.conjugate_by(&x)?;
        check_formula("alpha'", formulas::case4_alpha_prime_zero(coords, &sp)?, &b1[(0, 1)])?;
        return Ok(split(x, &[&[0, 1, 2], &[3]]));
    }
    Ok(split(SqMatrix::identity(4, spec), &[&[0, 1], &[2], &[3]]))
}

/// `A = 0`: the Jordan form of `B` decides everything.
pub fn reduce_case5(p: &MatrixPair) -> Result<Reduction> {
    let n = p.n();
    if !p.a().is_zero() {
        return Err(Error::Internal("case 5 expects A = 0".into()));
    }
    let (q, jt) = nilpotent_jnf(p.b())?;
    if jt.parts().len() == 1 {
        let label = match n {
            4 => BlockLabel::F51,
            3 => BlockLabel::Z3,
            2 => BlockLabel::Z2,
            _ => BlockLabel::Z1,
        };
        return block(label, vec![], q);
    }
    let mut groups = Vec::new();
    let mut start = 0;
    for &k in jt.parts() {
        groups.push((start..start + k).collect());
        start += k;
    }
    Ok(Reduction::Split(DecomposeHint { x: q, groups }))
}

/// Size 3 with `A = E₁₂`: `B = αE₁₂ + σE₁₃ + λE₃₂`.
fn reduce_size3_mixed(b: &SqMatrix) -> Result<Reduction> {
    let spec = b.spec();
    let (o, one) = (spec.zero(), spec.one());
    let (alpha, sigma, lambda) = (&b[(0, 1)], &b[(0, 2)], &b[(2, 1)]);
    // stabilizer [[1, 0, s], [0, 1, 0], [0, p, z]]
    let x = |s: FieldScalar, p: FieldScalar, z: FieldScalar| {
        SqMatrix::from_rows(
            spec,
            vec![
                vec![one.clone(), o.clone(), s],
                vec![o.clone(), one.clone(), o.clone()],
                vec![o.clone(), p, z],
            ],
        )
        .expect("3x3")
    };
    if !sigma.is_zero() {
        let zi = sigma.inv()?;
        let p = -&(alpha * &zi);
        block(BlockLabel::S3, vec![sigma * lambda], x(o.clone(), p, zi))
    } else if !lambda.is_zero() {
        block(BlockLabel::T3, vec![], x(alpha.clone(), o.clone(), lambda.clone()))
    } else {
        Ok(split(SqMatrix::identity(3, spec), &[&[0, 1], &[2]]))
    }
}
