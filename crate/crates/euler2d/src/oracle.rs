//! Independent brute-force Galerkin implementation on a tiny mode set.
//!
//! Ground truth for advection, brackets, and bracket differentials: all
//! arithmetic happens directly on Fourier coefficients through dense
//! convolution sums and Parseval pairings. Nothing here touches the
//! transforms, quadrature, padding, or projection code of the rest of
//! the crate — agreement between the two paths is evidence, not
//! tautology. Grids only appear at the boundary, where a mode set is
//! rendered to point values by direct trigonometric summation.
//!
//! Mode sets are kept tiny (|k|∞ ≤ 4) so the O(K⁴) convolutions stay
//! trivial; bands grow freely under products, so no truncation error
//! enters unless a caller truncates explicitly.

use crate::field::{Grid, VectorField};
use num_complex::Complex64;

/// Velocity Fourier coefficients on the band `|k|∞ ≤ kmax`, with the
/// reality constraint `û(−k) = conj û(k)` maintained by construction.
#[derive(Debug, Clone)]
pub struct ModeSet {
    kmax: i64,
    coef: Vec<[Complex64; 2]>,
}

impl ModeSet {
    pub fn new(kmax: usize) -> Self {
        let k = kmax as i64;
        let side = (2 * k + 1) as usize;
        ModeSet {
            kmax: k,
            coef: vec![[Complex64::new(0.0, 0.0); 2]; side * side],
        }
    }

    pub fn kmax(&self) -> usize {
        self.kmax as usize
    }

    #[inline]
    fn idx(&self, k: [i64; 2]) -> usize {
        let side = 2 * self.kmax + 1;
        ((k[0] + self.kmax) * side + (k[1] + self.kmax)) as usize
    }

    /// Coefficient at `k`, zero outside the stored band.
    #[inline]
    pub fn get(&self, k: [i64; 2]) -> [Complex64; 2] {
        if k[0].abs() > self.kmax || k[1].abs() > self.kmax {
            [Complex64::new(0.0, 0.0); 2]
        } else {
            self.coef[self.idx(k)]
        }
    }

    /// Sets `û(k)` and the conjugate partner `û(−k)`.
    pub fn set_pair(&mut self, k: [i64; 2], c: [Complex64; 2]) {
        let i = self.idx(k);
        self.coef[i] = c;
        let j = self.idx([-k[0], -k[1]]);
        self.coef[j] = [c[0].conj(), c[1].conj()];
    }

    /// Random divergence-free mode set from a streamfunction with
    /// coefficients `amplitude (a+ib)/|k|²`, matching the generator
    /// conventions used elsewhere but computed from scratch.
    pub fn random_divfree(seed: u64, kmax: usize, amplitude: f64) -> Self {
        let mut rng = crate::rng::SplitMix64::new(seed);
        let mut m = ModeSet::new(kmax);
        let kk = kmax as i64;
        let mut draw = |m: &mut ModeSet, kx: i64, ky: i64| {
            let a = rng.next_signed();
            let b = rng.next_signed();
            let psi = Complex64::new(a, b) * (amplitude / (kx * kx + ky * ky) as f64);
            // u = (∂y ψ, −∂x ψ)
            let i = Complex64::new(0.0, 1.0);
            m.set_pair([kx, ky], [i * ky as f64 * psi, -i * kx as f64 * psi]);
        };
        for ky in 1..=kk {
            for kx in -kk..=kk {
                draw(&mut m, kx, ky);
            }
        }
        for kx in 1..=kk {
            draw(&mut m, kx, 0);
        }
        m
    }

    /// Render to grid values by direct trigonometric summation (no FFT).
    pub fn to_grid(&self, grid: Grid) -> VectorField {
        VectorField::from_fn(grid, |x, y| {
            let mut ux = 0.0;
            let mut uy = 0.0;
            for kx in -self.kmax..=self.kmax {
                for ky in -self.kmax..=self.kmax {
                    let c = self.get([kx, ky]);
                    let phase = kx as f64 * x + ky as f64 * y;
                    let e = Complex64::new(phase.cos(), phase.sin());
                    ux += (c[0] * e).re;
                    uy += (c[1] * e).re;
                }
            }
            [ux, uy]
        })
    }

    /// Parseval pairing `⟨X, Y⟩ = (2π)² Σ_k X̂(k)·conj Ŷ(k)`.
    pub fn inner(&self, other: &ModeSet) -> f64 {
        let k = self.kmax.max(other.kmax);
        let mut sum = 0.0;
        for kx in -k..=k {
            for ky in -k..=k {
                let a = self.get([kx, ky]);
                let b = other.get([kx, ky]);
                sum += (a[0] * b[0].conj()).re + (a[1] * b[1].conj()).re;
            }
        }
        std::f64::consts::TAU.powi(2) * sum
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    /// Leray projection in coefficient space:
    /// `û ← û − k (k·û)/|k|²` for `k ≠ 0`.
    pub fn leray(&self) -> ModeSet {
        let mut out = self.clone();
        for kx in -self.kmax..=self.kmax {
            for ky in -self.kmax..=self.kmax {
                if kx == 0 && ky == 0 {
                    continue;
                }
                let c = self.get([kx, ky]);
                let k2 = (kx * kx + ky * ky) as f64;
                let dot = kx as f64 * c[0] + ky as f64 * c[1];
                let i = out.idx([kx, ky]);
                out.coef[i] = [c[0] - kx as f64 * dot / k2, c[1] - ky as f64 * dot / k2];
            }
        }
        out
    }

    /// `(X·∇)Y` as a dense convolution: the result lives on the doubled
    /// band; any truncation back to a comparison band is the caller's
    /// explicit choice.
    pub fn advect(&self, other: &ModeSet) -> ModeSet {
        let kout = self.kmax + other.kmax;
        let mut out = ModeSet::new(kout as usize);
        for px in -self.kmax..=self.kmax {
            for py in -self.kmax..=self.kmax {
                let x = self.get([px, py]);
                if x[0].norm_sqr() + x[1].norm_sqr() == 0.0 {
                    continue;
                }
                for qx in -other.kmax..=other.kmax {
                    for qy in -other.kmax..=other.kmax {
                        let y = other.get([qx, qy]);
                        // i (X̂(p)·q) Ŷ(q) at k = p + q
                        let dot = Complex64::new(0.0, 1.0)
                            * (x[0] * qx as f64 + x[1] * qy as f64);
                        let i = out.idx([px + qx, py + qy]);
                        out.coef[i][0] += dot * y[0];
                        out.coef[i][1] += dot * y[1];
                    }
                }
            }
        }
        out
    }

    /// Advection transpose `B(Z, W) = P_e V`, `V_m(k) = Σ Ẑ_i(p) i q_m Ŵ_i(q)`.
    pub fn advect_adjoint(&self, w: &ModeSet) -> ModeSet {
        let kout = self.kmax + w.kmax;
        let mut v = ModeSet::new(kout as usize);
        for px in -self.kmax..=self.kmax {
            for py in -self.kmax..=self.kmax {
                let z = self.get([px, py]);
                if z[0].norm_sqr() + z[1].norm_sqr() == 0.0 {
                    continue;
                }
                for qx in -w.kmax..=w.kmax {
                    for qy in -w.kmax..=w.kmax {
                        let wc = w.get([qx, qy]);
                        let zi_wi = z[0] * wc[0] + z[1] * wc[1];
                        let i = v.idx([px + qx, py + qy]);
                        let iq = Complex64::new(0.0, 1.0);
                        v.coef[i][0] += iq * qx as f64 * zi_wi;
                        v.coef[i][1] += iq * qy as f64 * zi_wi;
                    }
                }
            }
        }
        v.leray()
    }

    pub fn truncate(&self, kmax: usize) -> ModeSet {
        let mut out = ModeSet::new(kmax);
        let k = out.kmax.min(self.kmax);
        for kx in -k..=k {
            for ky in -k..=k {
                let i = out.idx([kx, ky]);
                out.coef[i] = self.get([kx, ky]);
            }
        }
        out
    }

    pub fn scaled(&self, c: f64) -> ModeSet {
        ModeSet {
            kmax: self.kmax,
            coef: self.coef.iter().map(|v| [v[0] * c, v[1] * c]).collect(),
        }
    }

    pub fn add(&self, other: &ModeSet) -> ModeSet {
        let k = self.kmax.max(other.kmax);
        let mut out = ModeSet::new(k as usize);
        for kx in -k..=k {
            for ky in -k..=k {
                let a = self.get([kx, ky]);
                let b = other.get([kx, ky]);
                let i = out.idx([kx, ky]);
                out.coef[i] = [a[0] + b[0], a[1] + b[1]];
            }
        }
        out
    }

    pub fn sub(&self, other: &ModeSet) -> ModeSet {
        self.add(&other.scaled(-1.0))
    }

    /// Vorticity coefficients `ω̂(k) = i(kx û_y − ky û_x)`.
    fn vorticity(&self, k: [i64; 2]) -> Complex64 {
        let c = self.get(k);
        Complex64::new(0.0, 1.0) * (k[0] as f64 * c[1] - k[1] as f64 * c[0])
    }

    /// `(∂y ω, −∂x ω)` of this set's vorticity — the enstrophy
    /// differential applied in coefficient space.
    fn skew_gradient_of_vorticity(&self) -> ModeSet {
        let mut out = ModeSet::new(self.kmax as usize);
        for kx in -self.kmax..=self.kmax {
            for ky in -self.kmax..=self.kmax {
                let w = self.vorticity([kx, ky]);
                let i = out.idx([kx, ky]);
                let iq = Complex64::new(0.0, 1.0);
                out.coef[i] = [iq * ky as f64 * w, -iq * kx as f64 * w];
            }
        }
        out
    }
}

/// Linear and quadratic functionals mirrored in coefficient space.
#[derive(Debug, Clone)]
pub enum OracleObservable {
    Linear(ModeSet),
    Energy,
    Enstrophy,
}

impl OracleObservable {
    pub fn value(&self, v: &ModeSet) -> f64 {
        match self {
            OracleObservable::Linear(a) => a.inner(v),
            OracleObservable::Energy => 0.5 * v.inner(v),
            OracleObservable::Enstrophy => {
                let mut sum = 0.0;
                for kx in -v.kmax..=v.kmax {
                    for ky in -v.kmax..=v.kmax {
                        sum += v.vorticity([kx, ky]).norm_sqr();
                    }
                }
                0.5 * std::f64::consts::TAU.powi(2) * sum
            }
        }
    }

    pub fn differential(&self, v: &ModeSet) -> ModeSet {
        match self {
            OracleObservable::Linear(a) => a.clone(),
            OracleObservable::Energy => v.clone(),
            OracleObservable::Enstrophy => v.skew_gradient_of_vorticity(),
        }
    }

    pub fn second_differential(&self, v: &ModeSet, u: &ModeSet) -> ModeSet {
        match self {
            OracleObservable::Linear(_) => ModeSet::new(v.kmax as usize),
            OracleObservable::Energy => u.clone(),
            OracleObservable::Enstrophy => u.skew_gradient_of_vorticity(),
        }
    }
}

/// `{f,g}(v) = ⟨dg, ∇_{df} v⟩ − ⟨df, ∇_{dg} v⟩` by dense sums.
pub fn oracle_bracket(f: &OracleObservable, g: &OracleObservable, v: &ModeSet) -> f64 {
    let df = f.differential(v);
    let dg = g.differential(v);
    dg.inner(&df.advect(v)) - df.inner(&dg.advect(v))
}

/// Closed-form differential of the bracket, all terms by convolution.
pub fn oracle_bracket_differential(
    f: &OracleObservable,
    g: &OracleObservable,
    v: &ModeSet,
) -> ModeSet {
    let df = f.differential(v);
    let dg = g.differential(v);
    let mut out = dg.advect(&df).sub(&df.advect(&dg)).leray();
    out = out.add(&f.second_differential(v, &dg.advect_adjoint(v)));
    out = out.sub(&g.second_differential(v, &df.advect_adjoint(v)));
    out = out.add(&g.second_differential(v, &df.advect(v).leray()));
    out = out.sub(&f.second_differential(v, &dg.advect(v).leray()));
    out
}

/// Jacobi cycle `{f,{g,h}} + {h,{f,g}} + {g,{h,f}}` with every nested
/// bracket evaluated through the closed-form differential. Returns the
/// raw value and the scale `‖df‖‖dg‖‖dh‖‖v‖`.
pub fn oracle_jacobi(
    f: &OracleObservable,
    g: &OracleObservable,
    h: &OracleObservable,
    v: &ModeSet,
) -> (f64, f64) {
    let nested = |a: &OracleObservable, b: &OracleObservable, c: &OracleObservable| {
        let da = a.differential(v);
        let dbc = oracle_bracket_differential(b, c, v);
        dbc.inner(&da.advect(v)) - da.inner(&dbc.advect(v))
    };
    let cycle = nested(f, g, h) + nested(h, f, g) + nested(g, h, f);
    let scale = f.differential(v).norm()
        * g.differential(v).norm()
        * h.differential(v).norm()
        * v.norm();
    (cycle, scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{DivFreeField, Grid};
    use crate::observables::{advect, Observable};

    fn cmp_grid() -> Grid {
        Grid::new(32, 4).unwrap()
    }

    /// The dual-path bridge: render the mode set and certify it.
    fn to_field(v: &ModeSet, grid: Grid) -> DivFreeField {
        DivFreeField::certify(v.to_grid(grid)).expect("mode set is divergence-free")
    }

    #[test]
    fn advect_matches_grid_path_after_identical_truncation() {
        let grid = cmp_grid();
        for seed in 0..5u64 {
            let x = ModeSet::random_divfree(seed * 2 + 1, 3, 1.0);
            let y = ModeSet::random_divfree(seed * 2 + 2, 3, 1.0);
            let oracle = x.advect(&y).truncate(3);

            let grid_result = advect(&x.to_grid(grid), &y.to_grid(grid));
            let mut spec = grid_result.to_spectrum();
            spec.band_limit(3);
            let truncated = spec.to_field();

            let diff = (&oracle.to_grid(grid) - &truncated).l2_norm();
            let scale = x.norm() * y.norm();
            assert!(diff <= 1e-12 * scale.max(1.0), "seed {seed}: {diff:.2e}");
        }
    }

    #[test]
    fn advect_of_constant_is_zero() {
        let x = ModeSet::random_divfree(9, 3, 1.0);
        let mut c = ModeSet::new(0);
        c.set_pair([0, 0], [Complex64::new(0.7, 0.0), Complex64::new(-0.2, 0.0)]);
        assert!(x.advect(&c).norm() < 1e-15);
    }

    #[test]
    fn advect_is_bilinear() {
        let x = ModeSet::random_divfree(11, 3, 1.0);
        let y = ModeSet::random_divfree(12, 3, 1.0);
        let z = ModeSet::random_divfree(13, 3, 1.0);
        let lhs = x.advect(&y.scaled(2.0).add(&z.scaled(-0.5)));
        let rhs = x.advect(&y).scaled(2.0).sub(&x.advect(&z).scaled(0.5));
        assert!(lhs.sub(&rhs).norm() <= 1e-13 * lhs.norm().max(1.0));
    }

    #[test]
    fn parseval_inner_matches_grid_inner() {
        let grid = cmp_grid();
        let x = ModeSet::random_divfree(21, 4, 1.0);
        let y = ModeSet::random_divfree(22, 4, 1.0);
        let a = x.inner(&y);
        let b = x.to_grid(grid).inner(&y.to_grid(grid)).unwrap();
        assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn bracket_agrees_with_grid_path() {
        let grid = cmp_grid();
        for seed in 0..6u64 {
            let v = ModeSet::random_divfree(seed + 100, 3, 1.0);
            let a = ModeSet::random_divfree(seed + 200, 3, 1.0);
            let b = ModeSet::random_divfree(seed + 300, 3, 1.0);

            let pairs: Vec<(OracleObservable, Observable)> = vec![
                (
                    OracleObservable::Linear(a.clone()),
                    Observable::linear(to_field(&a, grid)),
                ),
                (
                    OracleObservable::Linear(b.clone()),
                    Observable::linear(to_field(&b, grid)),
                ),
                (OracleObservable::Energy, Observable::Energy),
                (OracleObservable::Enstrophy, Observable::Enstrophy),
            ];
            let vf = to_field(&v, grid);
            for (of, gf) in &pairs {
                for (og, gg) in &pairs {
                    let oracle = oracle_bracket(of, og, &v);
                    let grid_val = crate::bracket::bracket(gf, gg, &vf);
                    let scale = of.differential(&v).norm()
                        * og.differential(&v).norm()
                        * v.norm();
                    assert!(
                        (oracle - grid_val).abs() <= crate::tol::ORACLE_GAP * scale.max(1.0),
                        "gap {:.2e} for {:?}/{:?}",
                        (oracle - grid_val).abs(),
                        of,
                        og
                    );
                }
            }
        }
    }

    #[test]
    fn bracket_antisymmetry_exact() {
        let v = ModeSet::random_divfree(400, 3, 1.0);
        let f = OracleObservable::Linear(ModeSet::random_divfree(401, 3, 1.0));
        let g = OracleObservable::Energy;
        let fg = oracle_bracket(&f, &g, &v);
        let gf = oracle_bracket(&g, &f, &v);
        assert_eq!(fg, -gf);
        assert_eq!(oracle_bracket(&f, &f, &v), 0.0);
    }

    #[test]
    fn bracket_of_zero_velocity() {
        let v = ModeSet::new(3);
        let f = OracleObservable::Linear(ModeSet::random_divfree(501, 3, 1.0));
        assert_eq!(oracle_bracket(&f, &OracleObservable::Energy, &v), 0.0);
    }

    #[test]
    fn jacobi_cycle_vanishes() {
        for seed in 0..8u64 {
            let v = ModeSet::random_divfree(seed + 600, 3, 1.0);
            let f = OracleObservable::Linear(ModeSet::random_divfree(seed + 700, 3, 1.0));
            let g = OracleObservable::Linear(ModeSet::random_divfree(seed + 800, 3, 1.0));
            let h = if seed % 2 == 0 {
                OracleObservable::Energy
            } else {
                OracleObservable::Enstrophy
            };
            let (cycle, scale) = oracle_jacobi(&f, &g, &h, &v);
            assert!(
                cycle.abs() <= 1e-12 * scale.max(1.0),
                "seed {seed}: {:.2e}",
                cycle.abs() / scale
            );
        }
    }

    #[test]
    fn leray_is_idempotent_and_kills_gradients() {
        let mut grad = ModeSet::new(2);
        // grad of sin(x+y): û = (i, i)/…, a pure gradient mode.
        grad.set_pair(
            [1, 1],
            [Complex64::new(0.0, 0.5), Complex64::new(0.0, 0.5)],
        );
        assert!(grad.leray().norm() < 1e-15);
        let v = ModeSet::random_divfree(900, 3, 1.0);
        assert!(v.leray().sub(&v).norm() <= 1e-14 * v.norm());
    }
}
