//! Advection calculus on the flat torus and the observable library.
//!
//! The connection is flat, so covariant advection is the componentwise
//! directional derivative `∇_X Y = (X·∇)Y`, the vector-field Lie bracket
//! is `[X, Y] = ∇_X Y − ∇_Y X`, and the adjoint of advection with
//! respect to the L² pairing, `⟨Z, ∇_Y W⟩ = ⟨B(Z, W), Y⟩`, reduces to
//! `B(Z, W) = P_e[(DW)ᵀ Z]`.
//!
//! An [`Observable`] is a functional of divergence-free fields carrying
//! its value, its differential `df(v)` (the L²-Riesz representative,
//! always Leray-projected so it is unique within divergence-free
//! fields), and the action of its second differential `Ddf(v)·u`. The
//! built-in set {linear, energy, enstrophy, mode moment} covers constant
//! differentials, the flow Hamiltonian, a Casimir candidate, and
//! spectrally localized probes; custom observables can be registered
//! with closures.

use crate::field::{
    curl_of_stream, DivFreeField, ScalarSpectrum, VectorField,
};
use crate::field::mul_spectra;
use crate::hodge::leray;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::sync::Arc;

/// `∇_X Y = (X·∇)Y`, with exact (padded) products.
pub fn advect(x: &VectorField, y: &VectorField) -> VectorField {
    let xs = x.to_spectrum();
    let ys = y.to_spectrum();
    let dyx = [ys.x.derivative(0), ys.x.derivative(1)];
    let dyy = [ys.y.derivative(0), ys.y.derivative(1)];

    let mut out_x = mul_spectra(&xs.x, &dyx[0]);
    out_x.add_in_place(&mul_spectra(&xs.y, &dyx[1]));
    let mut out_y = mul_spectra(&xs.x, &dyy[0]);
    out_y.add_in_place(&mul_spectra(&xs.y, &dyy[1]));

    VectorField::from_scalars(out_x.to_field(), out_y.to_field()).expect("same grid")
}

/// `[X, Y] = ∇_X Y − ∇_Y X`; divergence-free whenever both arguments are.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> VectorField {
    &advect(x, y) - &advect(y, x)
}

/// `B(Z, W) = P_e[(DW)ᵀ Z]`, the divergence-free-valued adjoint of
/// advection: `⟨Z, ∇_Y W⟩ = ⟨B(Z, W), Y⟩` for all divergence-free `Y`.
pub fn advect_adjoint(z: &DivFreeField, w: &VectorField) -> DivFreeField {
    let zs = z.field().to_spectrum();
    let ws = w.to_spectrum();
    // V_m = Z_i ∂W_i/∂x_m
    let mut vx = mul_spectra(&zs.x, &ws.x.derivative(0));
    vx.add_in_place(&mul_spectra(&zs.y, &ws.y.derivative(0)));
    let mut vy = mul_spectra(&zs.x, &ws.x.derivative(1));
    vy.add_in_place(&mul_spectra(&zs.y, &ws.y.derivative(1)));
    let v = VectorField::from_scalars(vx.to_field(), vy.to_field()).expect("same grid");
    leray(&v)
}

// ---------------------------------------------------------------------
// Observables
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MomentPart {
    Re,
    Im,
}

/// A functional on divergence-free fields with first and second
/// differentials.
#[derive(Clone)]
pub enum Observable {
    /// `f(v) = ⟨a, v⟩` for a fixed divergence-free `a`; `df = a`, `Ddf = 0`.
    Linear(Arc<DivFreeField>),
    /// `f(v) = ½⟨v, v⟩`; `df(v) = v`, `Ddf(v)·u = u`.
    Energy,
    /// `f(v) = ½⟨ω, ω⟩` with `ω = curl v`; `df(v) = (∂y ω, −∂x ω)`.
    Enstrophy,
    /// Real or imaginary part of one velocity Fourier coefficient
    /// `û_c(k)`; a spectrally localized linear probe.
    ModeMoment {
        k: [i64; 2],
        part: MomentPart,
        component: usize,
    },
    /// User-supplied value/differential closures.
    Custom(Arc<CustomObservable>),
}

pub struct CustomObservable {
    pub name: String,
    pub value: Box<dyn Fn(&DivFreeField) -> f64 + Send + Sync>,
    pub differential: Box<dyn Fn(&DivFreeField) -> DivFreeField + Send + Sync>,
    pub second_differential:
        Box<dyn Fn(&DivFreeField, &DivFreeField) -> DivFreeField + Send + Sync>,
}

impl std::fmt::Debug for Observable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl Observable {
    pub fn linear(a: DivFreeField) -> Self {
        Observable::Linear(Arc::new(a))
    }

    pub fn name(&self) -> String {
        match self {
            Observable::Linear(_) => "linear".into(),
            Observable::Energy => "energy".into(),
            Observable::Enstrophy => "enstrophy".into(),
            Observable::ModeMoment { k, part, component } => format!(
                "mode_moment[{},{}].{}{}",
                k[0],
                k[1],
                if *component == 0 { "ux" } else { "uy" },
                match part {
                    MomentPart::Re => ".re",
                    MomentPart::Im => ".im",
                }
            ),
            Observable::Custom(c) => c.name.clone(),
        }
    }

    pub fn value(&self, v: &DivFreeField) -> f64 {
        match self {
            Observable::Linear(a) => a.inner(v.field()).expect("same grid"),
            Observable::Energy => 0.5 * v.inner(v.field()).expect("same grid"),
            Observable::Enstrophy => {
                let omega = v.curl();
                0.5 * omega.inner(&omega).expect("same grid")
            }
            Observable::ModeMoment { k, part, component } => {
                let c = v.component(*component).to_spectrum().coef(*k);
                match part {
                    MomentPart::Re => c.re,
                    MomentPart::Im => c.im,
                }
            }
            Observable::Custom(c) => (c.value)(v),
        }
    }

    /// Riesz representative of the differential with respect to the L²
    /// metric, Leray-projected: `f(v + tu) = f(v) + t⟨df(v), u⟩ + O(t²)`
    /// for all divergence-free `u`.
    pub fn differential(&self, v: &DivFreeField) -> DivFreeField {
        match self {
            Observable::Linear(a) => (**a).clone(),
            Observable::Energy => v.clone(),
            Observable::Enstrophy => curl_of_stream(&v.curl().to_spectrum()),
            Observable::ModeMoment { k, part, component } => {
                moment_representative(v, *k, *part, *component)
            }
            Observable::Custom(c) => (c.differential)(v),
        }
    }

    /// Action of the second differential, `Ddf(v)·u`. Symmetric:
    /// `⟨Ddf(v)·u, w⟩ = ⟨Ddf(v)·w, u⟩`.
    pub fn second_differential(&self, v: &DivFreeField, u: &DivFreeField) -> DivFreeField {
        match self {
            Observable::Linear(_) | Observable::ModeMoment { .. } => {
                DivFreeField::trusted(VectorField::zeros(v.grid()))
            }
            Observable::Energy => u.clone(),
            Observable::Enstrophy => curl_of_stream(&u.curl().to_spectrum()),
            Observable::Custom(c) => (c.second_differential)(v, u),
        }
    }

    /// Pointwise product of two observables (Leibniz differentials);
    /// used by the bracket derivation-property suite.
    pub fn product(f: Observable, g: Observable) -> Observable {
        let name = format!("{}*{}", f.name(), g.name());
        let (f2, g2) = (f.clone(), g.clone());
        let (f3, g3) = (f.clone(), g.clone());
        Observable::Custom(Arc::new(CustomObservable {
            name,
            value: Box::new(move |v| f.value(v) * g.value(v)),
            differential: Box::new(move |v| {
                let df = f2.differential(v).field().scaled(g2.value(v));
                let dg = g2.differential(v).field().scaled(f2.value(v));
                DivFreeField::trusted(&df + &dg)
            }),
            second_differential: Box::new(move |v, u| {
                let fv = f3.value(v);
                let gv = g3.value(v);
                let df = f3.differential(v);
                let dg = g3.differential(v);
                let df_u = df.inner(u.field()).expect("same grid");
                let dg_u = dg.inner(u.field()).expect("same grid");
                let mut out = f3.second_differential(v, u).field().scaled(gv);
                out = &out + &g3.second_differential(v, u).field().scaled(fv);
                out = &out + &df.field().scaled(dg_u);
                out = &out + &dg.field().scaled(df_u);
                DivFreeField::trusted(out)
            }),
        }))
    }

    /// Stable fingerprint of the observable for report digests.
    pub fn digest_bytes(&self) -> Vec<u8> {
        let mut bytes = self.name().into_bytes();
        if let Observable::Linear(a) = self {
            for v in a.ux().iter().chain(a.uy().iter()) {
                bytes.extend_from_slice(&v.to_le_bytes());
            }
        }
        bytes
    }
}

fn moment_representative(
    v: &DivFreeField,
    k: [i64; 2],
    part: MomentPart,
    component: usize,
) -> DivFreeField {
    let grid = v.grid();
    let mut spec = ScalarSpectrum::zeros(grid);
    // Re û_c(k) = ⟨cos(k·x) e_c, u⟩/(2π)²; Im picks −sin(k·x).
    let coef = match part {
        MomentPart::Re => Complex64::new(0.5, 0.0),
        MomentPart::Im => Complex64::new(0.0, 0.5),
    };
    if k == [0, 0] {
        let c = match part {
            MomentPart::Re => 1.0,
            MomentPart::Im => 0.0,
        };
        let mut w = VectorField::zeros(grid);
        let mut constant = [0.0, 0.0];
        constant[component] = c / (TAU * TAU);
        w = w.plus_constant(constant);
        return DivFreeField::trusted(w);
    }
    spec.set_coef(k, coef / (TAU * TAU));
    let probe = spec.to_field();
    let zero = crate::field::ScalarField::zeros(grid);
    let w = if component == 0 {
        VectorField::from_scalars(probe, zero)
    } else {
        VectorField::from_scalars(zero, probe)
    }
    .expect("same grid");
    leray(&w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{random_divfree, taylor_green, Grid, ScalarField};
    use crate::measure::{fd_sweep, FdOutcome};
    use std::f64::consts::PI;

    fn grid() -> Grid {
        Grid::new(64, 8).unwrap()
    }

    fn perturbed(v: &DivFreeField, u: &DivFreeField, t: f64) -> DivFreeField {
        DivFreeField::trusted(&v.field().scaled(1.0) + &u.field().scaled(t))
    }

    #[test]
    fn advect_constant_wind() {
        let x = VectorField::from_fn(grid(), |_, _| [1.0, 0.0]);
        let y = VectorField::from_fn(grid(), |x, _| [x.sin(), 0.0]);
        let a = advect(&x, &y);
        let expect = VectorField::from_fn(grid(), |x, _| [x.cos(), 0.0]);
        assert!((&a - &expect).l2_norm() < 1e-12);
    }

    #[test]
    fn advect_constant_target_is_zero() {
        let x = taylor_green(grid());
        let y = VectorField::from_fn(grid(), |_, _| [0.7, -0.2]);
        assert!(advect(x.field(), &y).l2_norm() < 1e-13);
    }

    #[test]
    fn advect_taylor_green_closed_form() {
        let u = taylor_green(grid());
        let a = advect(u.field(), u.field());
        let expect = VectorField::from_fn(grid(), |x, y| {
            [0.5 * (2.0 * x).sin(), 0.5 * (2.0 * y).sin()]
        });
        assert!((&a - &expect).l2_norm() < 1e-12);
    }

    #[test]
    fn advect_is_bilinear() {
        let x = random_divfree(1, grid(), 6, 1.0).unwrap();
        let y = random_divfree(2, grid(), 6, 1.0).unwrap();
        let z = random_divfree(3, grid(), 6, 1.0).unwrap();
        let combo = &y.field().scaled(2.0) + &z.field().scaled(-3.0);
        let lhs = advect(x.field(), &combo);
        let rhs = &advect(x.field(), y.field()).scaled(2.0)
            - &advect(x.field(), z.field()).scaled(3.0);
        assert!((&lhs - &rhs).l2_norm() <= 1e-12 * lhs.l2_norm().max(1.0));
    }

    #[test]
    fn lie_bracket_antisymmetry_and_closure() {
        let x = random_divfree(5, grid(), 8, 1.0).unwrap();
        let y = random_divfree(6, grid(), 8, 1.0).unwrap();
        assert!(lie_bracket(x.field(), x.field()).l2_norm() < 1e-12);

        let xy = lie_bracket(x.field(), y.field());
        let yx = lie_bracket(y.field(), x.field());
        assert!((&xy + &yx).l2_norm() < 1e-12 * xy.l2_norm().max(1.0));

        // Lie bracket of divergence-free fields is divergence-free.
        assert!(xy.divergence().l2_norm() <= 1e-10 * xy.l2_norm());
    }

    #[test]
    fn lie_bracket_constant_wind() {
        let x = VectorField::from_fn(grid(), |_, _| [1.0, 0.0]);
        let y = VectorField::from_fn(grid(), |x, _| [x.sin(), 0.0]);
        let b = lie_bracket(&x, &y);
        let expect = VectorField::from_fn(grid(), |x, _| [x.cos(), 0.0]);
        assert!((&b - &expect).l2_norm() < 1e-12);
    }

    #[test]
    fn advection_antisymmetry_under_divfree_wind() {
        // ⟨Y, ∇_X W⟩ = −⟨∇_X Y, W⟩ for div-free X.
        for seed in 0..10u64 {
            let x = random_divfree(seed + 10, grid(), 8, 1.0).unwrap();
            let y = random_divfree(seed + 20, grid(), 8, 1.0).unwrap();
            let w = random_divfree(seed + 30, grid(), 8, 1.0).unwrap();
            let lhs = y.inner(&advect(x.field(), w.field())).unwrap();
            let rhs = -advect(x.field(), y.field()).inner(w.field()).unwrap();
            let scale = x.l2_norm() * y.l2_norm() * w.l2_norm();
            assert!((lhs - rhs).abs() <= 1e-11 * scale.max(1.0));
        }
    }

    #[test]
    fn adjoint_identity_of_b() {
        for seed in 0..10u64 {
            let z = random_divfree(seed + 40, grid(), 8, 1.0).unwrap();
            let w = random_divfree(seed + 50, grid(), 8, 1.0).unwrap();
            let y = random_divfree(seed + 60, grid(), 8, 1.0).unwrap();
            let lhs = z.inner(&advect(y.field(), w.field())).unwrap();
            let rhs = advect_adjoint(&z, w.field()).inner(y.field()).unwrap();
            let scale = (z.l2_norm() * w.l2_norm() * y.l2_norm()).max(1.0);
            assert!((lhs - rhs).abs() <= 1e-11 * scale);
        }
    }

    #[test]
    fn b_of_constant_target_is_zero() {
        let z = random_divfree(70, grid(), 8, 1.0).unwrap();
        let w = VectorField::from_fn(grid(), |_, _| [0.4, 1.1]);
        assert!(advect_adjoint(&z, &w).l2_norm() < 1e-13);
    }

    #[test]
    fn b_is_bilinear() {
        let z = random_divfree(71, grid(), 8, 1.0).unwrap();
        let w = random_divfree(72, grid(), 8, 1.0).unwrap();
        let z2 = DivFreeField::trusted(z.field().scaled(2.0));
        let lhs = advect_adjoint(&z2, w.field());
        let rhs = advect_adjoint(&z, w.field()).field().scaled(2.0);
        assert!((lhs.field() - &rhs).l2_norm() <= 1e-13 * rhs.l2_norm().max(1.0));
    }

    #[test]
    fn closed_form_values() {
        let tg = taylor_green(grid());
        let energy = Observable::Energy.value(&tg);
        assert!((energy - PI * PI).abs() < 1e-12 * PI * PI);

        let enstrophy = Observable::Enstrophy.value(&tg);
        assert!((enstrophy - 2.0 * PI * PI).abs() < 1e-12 * PI * PI);

        let a = random_divfree(80, grid(), 8, 1.0).unwrap();
        let zero = DivFreeField::trusted(VectorField::zeros(grid()));
        assert_eq!(Observable::linear(a).value(&zero), 0.0);
    }

    #[test]
    fn energy_differential_is_identity() {
        let v = random_divfree(81, grid(), 8, 1.0).unwrap();
        let df = Observable::Energy.differential(&v);
        assert!((df.field() - v.field()).l2_norm() == 0.0);
    }

    #[test]
    fn enstrophy_differential_at_taylor_green() {
        // ω = 2 sin x sin y, df = (∂y ω, −∂x ω) = 2·(sin x cos y, −cos x sin y).
        let tg = taylor_green(grid());
        let df = Observable::Enstrophy.differential(&tg);
        let expect = tg.field().scaled(2.0);
        assert!((df.field() - &expect).l2_norm() < 1e-12);
    }

    #[test]
    fn differentials_pass_fd_check() {
        let v = random_divfree(90, grid(), 6, 0.9).unwrap();
        let u = random_divfree(91, grid(), 6, 0.7).unwrap();
        let a = random_divfree(92, grid(), 6, 1.0).unwrap();
        let observables = [
            Observable::linear(a),
            Observable::Energy,
            Observable::Enstrophy,
            Observable::ModeMoment {
                k: [1, 0],
                part: MomentPart::Re,
                component: 0,
            },
            Observable::product(Observable::Energy, Observable::Enstrophy),
        ];
        for f in observables {
            let exact = f.differential(&v).inner(u.field()).unwrap();
            let scale = f.value(&v).abs().max(exact.abs()).max(1.0);
            let outcome = fd_sweep(|t| f.value(&perturbed(&v, &u, t)), exact, scale);
            assert!(
                outcome.passes(crate::tol::FD_ORDER),
                "{}: {outcome:?}",
                f.name()
            );
            // The cubic product observable must produce a genuine slope.
            if f.name().contains('*') {
                assert!(matches!(outcome, FdOutcome::Order(_)));
            }
        }
    }

    #[test]
    fn second_differential_symmetry() {
        let v = random_divfree(100, grid(), 8, 1.0).unwrap();
        let u = random_divfree(101, grid(), 8, 1.0).unwrap();
        let w = random_divfree(102, grid(), 8, 1.0).unwrap();
        for f in [
            Observable::Energy,
            Observable::Enstrophy,
            Observable::product(Observable::Energy, Observable::Enstrophy),
        ] {
            let a = f.second_differential(&v, &u).inner(w.field()).unwrap();
            let b = f.second_differential(&v, &w).inner(u.field()).unwrap();
            let scale = u.l2_norm() * w.l2_norm() * (1.0 + v.l2_norm().powi(2));
            assert!((a - b).abs() <= 1e-12 * scale, "{}", f.name());
        }
    }

    #[test]
    fn second_differential_trivial_cases() {
        let v = random_divfree(110, grid(), 8, 1.0).unwrap();
        let u = random_divfree(111, grid(), 8, 1.0).unwrap();
        let a = random_divfree(112, grid(), 8, 1.0).unwrap();
        assert_eq!(
            Observable::linear(a).second_differential(&v, &u).l2_norm(),
            0.0
        );
        let energy_dd = Observable::Energy.second_differential(&v, &u);
        assert!((energy_dd.field() - u.field()).l2_norm() == 0.0);
    }

    #[test]
    fn mode_moment_value_matches_pairing() {
        let v = random_divfree(120, grid(), 8, 1.0).unwrap();
        for part in [MomentPart::Re, MomentPart::Im] {
            for component in [0usize, 1] {
                let f = Observable::ModeMoment {
                    k: [2, -1],
                    part,
                    component,
                };
                let df = f.differential(&v);
                let paired = df.inner(v.field()).unwrap();
                let direct = f.value(&v);
                assert!(
                    (paired - direct).abs() <= 1e-12 * direct.abs().max(1e-3),
                    "part {part:?} component {component}"
                );
            }
        }
    }

    #[test]
    fn mode_moment_mean_probe() {
        let g = grid();
        let base = random_divfree(130, g, 8, 1.0).unwrap();
        let v = DivFreeField::trusted(base.field().plus_constant([0.25, -0.5]));
        let f = Observable::ModeMoment {
            k: [0, 0],
            part: MomentPart::Re,
            component: 1,
        };
        assert!((f.value(&v) - (-0.5)).abs() < 1e-13);
        let df = f.differential(&v);
        assert!((df.inner(v.field()).unwrap() - (-0.5)).abs() < 1e-12);
    }

    #[test]
    fn enstrophy_differential_is_divfree_and_consistent() {
        let v = random_divfree(140, grid(), 8, 1.0).unwrap();
        let df = Observable::Enstrophy.differential(&v);
        assert!(df.divergence().l2_norm() <= 1e-11 * df.l2_norm());
        // ⟨df, u⟩ = ⟨ω_v, ω_u⟩ for any div-free u.
        let u = random_divfree(141, grid(), 8, 1.0).unwrap();
        let lhs = df.inner(u.field()).unwrap();
        let rhs = v.curl().inner(&u.curl()).unwrap();
        assert!((lhs - rhs).abs() <= 1e-11 * rhs.abs().max(1.0));
    }

    #[test]
    fn taylor_green_energy_identity_with_skew_gradient() {
        // The energy differential pairs to zero with the advection term:
        // ⟨v, ∇_v v⟩ = 0 for div-free v.
        let v = taylor_green(grid());
        let adv = advect(v.field(), v.field());
        let ip = v.inner(&adv).unwrap();
        assert!(ip.abs() < 1e-12);
        let _ = ScalarField::zeros(grid());
    }
}
