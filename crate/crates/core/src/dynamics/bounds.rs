//! A-priori distance-to-limit bounds for Picard iterates.
//!
//! With `k_i = d(a_i, a_{i+1})`:
//! * quad_perimetric, constant `α`: `d(a_n, a*) <= α^n λ_0 / (1 - α)`, where
//!   `λ_0` is the perimeter of `a_0 a_1 a_2 a_3`;
//! * quad_kannan, constant `δ`: `k λ^(n/3 - 1) / (1 - λ^(1/3))` with
//!   `λ = 3δ / (2 - δ)` and `k = max(k_1, k_2, k_3)`, for `n >= 4`;
//! * quad_chatterjea, constant `λ_c`: the same shape with
//!   `δ = 6λ_c / (1 - λ_c)` in place of `λ`.
//!
//! Cube roots force floating point here; everything upstream stays exact.

use num_traits::One;

use crate::certifier::ContractionClass;
use crate::error::{Error, Result};
use crate::rational::{int, to_f64, Rational};

/// Relative slack applied when comparing an exact distance to a float bound.
pub const BOUND_SLACK: f64 = 1e-9;

/// Orbit quantities the bounds are built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preamble {
    /// Perimeter of the first four iterates.
    pub lambda0: Rational,
    /// `max(k_1, k_2, k_3)`; `k_0` is deliberately left out.
    pub k: Rational,
}

/// Exact per-step contraction factor: `α`, `3δ/(2-δ)` or `6λ/(1-λ)`.
pub fn step_factor(class: ContractionClass, constant: &Rational) -> Result<Rational> {
    let one = Rational::one();
    let factor = match class {
        ContractionClass::QuadPerimetric => constant.clone(),
        ContractionClass::QuadKannan => int(3) * constant / (int(2) - constant),
        ContractionClass::QuadChatterjea => int(6) * constant / (&one - constant),
        other => return Err(Error::NoBound(other.id())),
    };
    Ok(factor)
}

/// First index at which the bound is claimed.
pub fn first_index(class: ContractionClass) -> usize {
    match class {
        ContractionClass::QuadPerimetric => 1,
        _ => 4,
    }
}

pub fn apriori_bound(
    class: ContractionClass,
    constant: &Rational,
    preamble: &Preamble,
    n: usize,
) -> Result<f64> {
    if !class.is_quad() {
        return Err(Error::NoBound(class.id()));
    }
    let threshold = class.threshold();
    if constant < &Rational::from_integer(0.into()) || constant >= &threshold {
        return Err(Error::BoundUndefined {
            class: class.id(),
            constant: constant.to_string(),
            threshold,
        });
    }
    let min = first_index(class);
    if n < min {
        return Err(Error::BoundIndex {
            class: class.id(),
            min,
            n,
        });
    }
    let factor = to_f64(&step_factor(class, constant)?);
    let bound = match class {
        ContractionClass::QuadPerimetric => {
            factor.powi(n as i32) * to_f64(&preamble.lambda0) / (1.0 - factor)
        }
        _ => {
            to_f64(&preamble.k) * factor.powf(n as f64 / 3.0 - 1.0) / (1.0 - factor.cbrt())
        }
    };
    Ok(bound)
}

/// `actual <= bound · (1 + BOUND_SLACK)`.
pub fn within_bound(actual: &Rational, bound: f64) -> bool {
    to_f64(actual) <= bound * (1.0 + BOUND_SLACK)
}
