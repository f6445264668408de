//! Helmholtz/Hodge splitting on the torus: `X = grad θ + Y + mean`,
//! with `Y` divergence-free and mean-zero, `θ` in the mean-zero gauge,
//! and the constant (harmonic) component tracked exactly.
//!
//! The projections `P_e X = Y (+ mean)` and `Q X = grad θ` are
//! L²-orthogonal; constants are divergence-free on the torus, so when a
//! projected field is used as a velocity the harmonic part rides along
//! with the solenoidal side. This keeps momentum bookkeeping exact.

use crate::field::{DivFreeField, ScalarField, VectorField};

#[derive(Debug, Clone)]
pub struct HodgeParts {
    /// `Y = P_e X` minus its constant part.
    pub solenoidal: DivFreeField,
    /// `Q X = grad θ`.
    pub gradient: VectorField,
    /// Potential `θ = Δ⁻¹ div X`, mean-zero gauge.
    pub potential: ScalarField,
    /// Constant component of each input component, kept exactly.
    pub harmonic_mean: [f64; 2],
}

impl HodgeParts {
    /// `solenoidal + gradient + harmonic_mean`, which must reproduce the
    /// decomposed field to round-off.
    pub fn reconstruct(&self) -> VectorField {
        (self.solenoidal.field() + &self.gradient).plus_constant(self.harmonic_mean)
    }
}

pub fn decompose(x: &VectorField) -> HodgeParts {
    let mean = x.mean();
    let s = x.to_spectrum();
    let mut div_spec = s.x.derivative(0);
    div_spec.add_in_place(&s.y.derivative(1));
    // div has exactly zero mean (the DC derivative is zero), so the
    // Poisson solve cannot be rejected.
    let theta_spec = div_spec
        .inverse_laplacian()
        .expect("divergence has zero mean by construction");
    let gradient = theta_spec.gradient().to_field();
    let potential = theta_spec.to_field();
    let solenoidal = (x - &gradient).plus_constant([-mean[0], -mean[1]]);
    HodgeParts {
        solenoidal: DivFreeField::trusted(solenoidal),
        gradient,
        potential,
        harmonic_mean: mean,
    }
}

/// Leray projection `P_e`: the divergence-free part of `X`, harmonic
/// component included.
pub fn leray(x: &VectorField) -> DivFreeField {
    let parts = decompose(x);
    DivFreeField::trusted(
        parts
            .solenoidal
            .field()
            .plus_constant(parts.harmonic_mean),
    )
}
