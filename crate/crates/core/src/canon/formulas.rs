//! Closed-form predictions of the entries the reductions drive to zero.
//!
//! Each function returns the entry of `X⁻¹BX` named after it, with `B` and
//! `X` given by their case coordinates. The engine checks every prediction
//! against the conjugate it actually computes.

use crate::commutant::{CaseCoordinates, StabParams};
use crate::error::{Error, Result};
use crate::field::FieldScalar;

fn shape(what: &str) -> Error {
    Error::Unsupported(format!("{what} is defined only for its documented shape"))
}

/// Jordan type (3,1): entry (1,3) is `β − w⁻¹sτ + x⁻¹tσ`.
pub fn case2_beta_prime(b: &CaseCoordinates, x: &StabParams) -> Result<FieldScalar> {
    let (
        CaseCoordinates::Case2 {
            beta, sigma, tau, ..
        },
        StabParams::Case2 { x, w, s, t, .. },
    ) = (b, x)
    else {
        return Err(shape("beta'"));
    };
    let wi = w.inv()?;
    let xi = x.inv()?;
    Ok(&(beta - &(&(&wi * s) * tau)) + &(&(&xi * t) * sigma))
}

/// Jordan type (2,2), transformed basis, with the nilpotent part equal to
/// `J₂` and `X` restricted to `x = z = 1`, `u = 0`: entry (1,4) is
/// `w + s(β − sτ) + μ − sδ − y + vs`.
pub fn case3_mu_prime(b: &CaseCoordinates, x: &StabParams) -> Result<FieldScalar> {
    let (
        CaseCoordinates::Case3 {
            alpha,
            lambda,
            sigma,
            gamma,
            beta,
            mu,
            tau,
            delta,
        },
        StabParams::Case3 {
            x: x11,
            s,
            u,
            z,
            y,
            w,
            v,
            ..
        },
    ) = (b, x)
    else {
        return Err(shape("mu'"));
    };
    if !(alpha.is_zero() && lambda.is_one() && sigma.is_zero() && gamma.is_zero())
        || !(x11.is_one() && z == x11 && u.is_zero())
    {
        return Err(shape("mu'"));
    }
    let inner = beta - &(s * tau);
    Ok(&(&(&(&(w + &(s * &inner)) + mu) - &(s * delta)) - y) + &(v * s))
}

/// Jordan type (2,1,1) with the lower block equal to `J₂` and `X`
/// restricted to `x = 1`, `v = 0`, `w = z`: entry (1,2) is
/// `α − sz⁻¹λ + (sz⁻²u − tz⁻¹)μ + σp + (τ − sz⁻¹)q`.
pub fn case4_alpha_prime_jordan(b: &CaseCoordinates, x: &StabParams) -> Result<FieldScalar> {
    let (
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
        },
        StabParams::Case4 {
            x: x11,
            s,
            t,
            p,
            q,
            z,
            u,
            v,
            w,
            ..
        },
    ) = (b, x)
    else {
        return Err(shape("alpha'"));
    };
    if !(beta.is_zero() && gamma.is_one() && delta.is_zero() && eta.is_zero())
        || !(x11.is_one() && v.is_zero() && w == z)
    {
        return Err(shape("alpha'"));
    }
    let zi = z.inv()?;
    let szi = s * &zi;
    let coeff_mu = &(&(&szi * &zi) * u) - &(t * &zi);
    Ok(&(&(&(alpha - &(&szi * lambda)) + &(&coeff_mu * mu)) + &(sigma * p)) + &(&(tau - &szi) * q))
}

/// Jordan type (2,1,1) with zero lower block and `x = 1`:
/// `α' = α − (s, t) Z⁻¹ (λ, μ)ᵀ + σp + τq` where `Z = [[z, u], [v, w]]`.
pub fn case4_alpha_prime_zero(b: &CaseCoordinates, x: &StabParams) -> Result<FieldScalar> {
    let (
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
        },
        StabParams::Case4 {
            x: x11,
            s,
            t,
            p,
            q,
            z,
            u,
            v,
            w,
            ..
        },
    ) = (b, x)
    else {
        return Err(shape("alpha'"));
    };
    if !(beta.is_zero() && gamma.is_zero() && delta.is_zero() && eta.is_zero()) || !x11.is_one() {
        return Err(shape("alpha'"));
    }
    let det = &(z * w) - &(u * v);
    let di = det.inv()?;
    // Z⁻¹ (λ, μ) = det⁻¹ (wλ − uμ, −vλ + zμ)
    let c0 = &(&(w * lambda) - &(u * mu)) * &di;
    let c1 = &(&(z * mu) - &(v * lambda)) * &di;
    let through = &(s * &c0) + &(t * &c1);
    Ok(&(&(alpha - &through) + &(sigma * p)) + &(tau * q))
}
