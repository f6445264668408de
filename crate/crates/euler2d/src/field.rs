//! Grids, periodic scalar/vector fields on `[0, 2π)²`, their spectral
//! representations and differential operators, L² inner products, and the
//! deterministic random field generator.
//!
//! Conventions: real values live on the uniform grid `x_{ij} = (ih, jh)`,
//! `h = 2π/n`, first array axis is `x`, second is `y`. Spectra hold the
//! coefficients of `u(x) = Σ_k û(k) e^{ik·x}` in FFT bin order, so a real
//! field has `û(−k) = conj(û(k))`. Products of fields are formed through
//! zero-padded transforms ([`mul_dealiased`]), which together with the
//! `kmax ≤ n/8` band limit makes double and triple products and their
//! integrals exact up to round-off.

use crate::error::{Error, Result};
use crate::fft::{bin, fft2, wavenumber};
use crate::rng::SplitMix64;
use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::io::{BufRead, Write};

/// Uniform `n × n` grid over `[0, 2π)²` with an active band limit.
///
/// `kmax ≤ n/8` guarantees that products of up to three band-limited
/// fields are exactly representable and exactly integrated by the
/// trapezoid sum, which is what turns the structural identities into
/// round-off-level checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    n: usize,
    kmax: usize,
}

impl Grid {
    pub fn new(n: usize, kmax: usize) -> Result<Self> {
        if n < 16 || n % 2 != 0 {
            return Err(Error::InvalidGrid(format!(
                "n must be even and at least 16, got {n}"
            )));
        }
        if kmax == 0 || kmax > n / 8 {
            return Err(Error::InvalidGrid(format!(
                "kmax must satisfy 1 ≤ kmax ≤ n/8 = {}, got {kmax}",
                n / 8
            )));
        }
        Ok(Self { n, kmax })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Grid spacing `2π/n`.
    #[inline]
    pub fn h(&self) -> f64 {
        TAU / self.n as f64
    }

    #[inline]
    pub fn kmax(&self) -> usize {
        self.kmax
    }

    /// Grid nodes in row-major order (`i` over x, then `j` over y).
    pub fn points(&self) -> Vec<[f64; 2]> {
        let h = self.h();
        let mut pts = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                pts.push([i as f64 * h, j as f64 * h]);
            }
        }
        pts
    }

    fn check_same(&self, other: &Grid) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GridMismatch(self.n, other.n));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------
// Scalar fields
// ---------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ScalarField {
    grid: Grid,
    values: Array2<f64>,
}

impl ScalarField {
    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: Array2::zeros((grid.n, grid.n)),
        }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> f64) -> Self {
        let h = grid.h();
        Self {
            grid,
            values: Array2::from_shape_fn((grid.n, grid.n), |(i, j)| {
                f(i as f64 * h, j as f64 * h)
            }),
        }
    }

    pub fn from_values(grid: Grid, values: Array2<f64>) -> Result<Self> {
        if values.dim() != (grid.n, grid.n) {
            return Err(Error::GridMismatch(values.nrows(), grid.n));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::Format("non-finite value in field".into()));
        }
        Ok(Self { grid, values })
    }

    #[inline]
    pub fn grid(&self) -> Grid {
        self.grid
    }

    #[inline]
    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn to_spectrum(&self) -> ScalarSpectrum {
        let mut coef = self.values.mapv(|v| Complex64::new(v, 0.0));
        fft2(&mut coef, false);
        let scale = 1.0 / (self.grid.n * self.grid.n) as f64;
        coef.mapv_inplace(|c| c * scale);
        ScalarSpectrum {
            grid: self.grid,
            coef,
        }
    }

    pub fn mean(&self) -> f64 {
        self.values.sum() / (self.grid.n * self.grid.n) as f64
    }

    /// Trapezoid L² inner product `h² Σ f g`; exact for band-limited
    /// integrands resolved by the grid.
    pub fn inner(&self, other: &ScalarField) -> Result<f64> {
        self.grid.check_same(&other.grid)?;
        let h2 = self.grid.h() * self.grid.h();
        let mut sum = 0.0;
        for (a, b) in self.values.iter().zip(other.values.iter()) {
            sum += a * b;
        }
        Ok(h2 * sum)
    }

    pub fn l2_norm(&self) -> f64 {
        self.inner(self).expect("same grid").sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn gradient(&self) -> VectorField {
        self.to_spectrum().gradient().to_field()
    }

    /// Solves `Δθ = f` in the mean-zero gauge. Rejects input whose mean
    /// is not zero (no solution exists on the torus).
    pub fn inverse_laplacian(&self) -> Result<ScalarField> {
        self.to_spectrum().inverse_laplacian().map(|s| s.to_field())
    }

    pub fn scaled(&self, c: f64) -> ScalarField {
        ScalarField {
            grid: self.grid,
            values: self.values.mapv(|v| c * v),
        }
    }

    /// Serialize in the versioned text format
    /// (`VFIELD2 v1 n=<n> kind=scalar`, then `i j val` rows).
    pub fn write_text(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "VFIELD2 v1 n={} kind=scalar", self.grid.n)?;
        for i in 0..self.grid.n {
            for j in 0..self.grid.n {
                writeln!(w, "{} {} {:.16e}", i, j, self.values[[i, j]])?;
            }
        }
        Ok(())
    }

    pub fn read_text(r: &mut impl BufRead, kmax: usize) -> Result<ScalarField> {
        let (n, kind) = read_field_header(r)?;
        if kind != "scalar" {
            return Err(Error::Format(format!("expected kind=scalar, got {kind}")));
        }
        let grid = Grid::new(n, kmax)?;
        let mut values = Array2::zeros((n, n));
        read_rows(r, n, |i, j, cols: &[f64]| {
            values[[i, j]] = cols[0];
        })?;
        ScalarField::from_values(grid, values)
    }
}

impl std::ops::Add for &ScalarField {
    type Output = ScalarField;
    fn add(self, rhs: &ScalarField) -> ScalarField {
        ScalarField {
            grid: self.grid,
            values: &self.values + &rhs.values,
        }
    }
}

impl std::ops::Sub for &ScalarField {
    type Output = ScalarField;
    fn sub(self, rhs: &ScalarField) -> ScalarField {
        ScalarField {
            grid: self.grid,
            values: &self.values - &rhs.values,
        }
    }
}

// ---------------------------------------------------------------------
// Scalar spectra
// ---------------------------------------------------------------------

/// Fourier coefficients of a real scalar field, `k ∈ [−n/2, n/2)²` in
/// FFT bin order.
#[derive(Debug, Clone)]
pub struct ScalarSpectrum {
    grid: Grid,
    coef: Array2<Complex64>,
}

impl ScalarSpectrum {
    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            coef: Array2::zeros((grid.n, grid.n)),
        }
    }

    #[inline]
    pub fn grid(&self) -> Grid {
        self.grid
    }

    #[inline]
    pub fn coefficients(&self) -> &Array2<Complex64> {
        &self.coef
    }

    pub fn coef(&self, k: [i64; 2]) -> Complex64 {
        self.coef[[bin(k[0], self.grid.n), bin(k[1], self.grid.n)]]
    }

    /// Sets `û(k)` and its conjugate partner so the field stays real.
    pub fn set_coef(&mut self, k: [i64; 2], value: Complex64) {
        let n = self.grid.n;
        self.coef[[bin(k[0], n), bin(k[1], n)]] = value;
        self.coef[[bin(-k[0], n), bin(-k[1], n)]] = value.conj();
    }

    pub fn to_field(&self) -> ScalarField {
        let mut work = self.coef.clone();
        fft2(&mut work, true);
        ScalarField {
            grid: self.grid,
            values: work.mapv(|c| c.re),
        }
    }

    pub fn add_in_place(&mut self, other: &ScalarSpectrum) {
        self.coef += &other.coef;
    }

    pub fn scale_in_place(&mut self, c: f64) {
        self.coef.mapv_inplace(|v| v * c);
    }

    /// Zeroes every coefficient with `|k|∞ > kmax`.
    pub fn band_limit(&mut self, kmax: usize) {
        let n = self.grid.n;
        for ((i, j), c) in self.coef.indexed_iter_mut() {
            let kx = wavenumber(i, n);
            let ky = wavenumber(j, n);
            if kx.unsigned_abs() as usize > kmax || ky.unsigned_abs() as usize > kmax {
                *c = Complex64::new(0.0, 0.0);
            }
        }
    }

    /// Largest `|k|∞` carrying a coefficient above `threshold`.
    pub fn active_band(&self, threshold: f64) -> usize {
        let n = self.grid.n;
        let mut band = 0usize;
        for ((i, j), c) in self.coef.indexed_iter() {
            if c.norm_sqr() > threshold * threshold {
                let kx = wavenumber(i, n).unsigned_abs() as usize;
                let ky = wavenumber(j, n).unsigned_abs() as usize;
                band = band.max(kx).max(ky);
            }
        }
        band
    }

    fn map_wavenumbers(&self, f: impl Fn(i64, i64, Complex64) -> Complex64) -> ScalarSpectrum {
        let n = self.grid.n;
        let coef = Array2::from_shape_fn((n, n), |(i, j)| {
            f(wavenumber(i, n), wavenumber(j, n), self.coef[[i, j]])
        });
        ScalarSpectrum {
            grid: self.grid,
            coef,
        }
    }

    /// Spectral partial derivative. The Nyquist line carries no signed
    /// partner and is dropped, as usual for odd-order derivatives.
    pub fn derivative(&self, axis: usize) -> ScalarSpectrum {
        let n = self.grid.n as i64;
        self.map_wavenumbers(|kx, ky, c| {
            let k = if axis == 0 { kx } else { ky };
            if kx == -n / 2 || ky == -n / 2 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(0.0, k as f64) * c
            }
        })
    }

    pub fn gradient(&self) -> VectorSpectrum {
        VectorSpectrum {
            x: self.derivative(0),
            y: self.derivative(1),
        }
    }

    pub fn inverse_laplacian(&self) -> Result<ScalarSpectrum> {
        let scale = self
            .coef
            .iter()
            .fold(0.0f64, |m, c| m.max(c.norm()))
            .max(1.0);
        let mean = self.coef[[0, 0]].norm();
        if mean > 1e-12 * scale {
            return Err(Error::NonZeroMean(mean / scale));
        }
        Ok(self.map_wavenumbers(|kx, ky, c| {
            let k2 = (kx * kx + ky * ky) as f64;
            if k2 == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                c / -k2
            }
        }))
    }
}

// ---------------------------------------------------------------------
// Vector fields
// ---------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct VectorField {
    grid: Grid,
    ux: Array2<f64>,
    uy: Array2<f64>,
}

impl VectorField {
    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            ux: Array2::zeros((grid.n, grid.n)),
            uy: Array2::zeros((grid.n, grid.n)),
        }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> [f64; 2]) -> Self {
        let h = grid.h();
        let mut ux = Array2::zeros((grid.n, grid.n));
        let mut uy = Array2::zeros((grid.n, grid.n));
        for i in 0..grid.n {
            for j in 0..grid.n {
                let [a, b] = f(i as f64 * h, j as f64 * h);
                ux[[i, j]] = a;
                uy[[i, j]] = b;
            }
        }
        Self { grid, ux, uy }
    }

    pub fn from_components(grid: Grid, ux: Array2<f64>, uy: Array2<f64>) -> Result<Self> {
        if ux.dim() != (grid.n, grid.n) || uy.dim() != (grid.n, grid.n) {
            return Err(Error::GridMismatch(ux.nrows(), grid.n));
        }
        if !ux.iter().chain(uy.iter()).all(|v| v.is_finite()) {
            return Err(Error::Format("non-finite value in field".into()));
        }
        Ok(Self { grid, ux, uy })
    }

    pub fn from_scalars(x: ScalarField, y: ScalarField) -> Result<Self> {
        x.grid.check_same(&y.grid)?;
        Ok(Self {
            grid: x.grid,
            ux: x.values,
            uy: y.values,
        })
    }

    #[inline]
    pub fn grid(&self) -> Grid {
        self.grid
    }

    #[inline]
    pub fn ux(&self) -> &Array2<f64> {
        &self.ux
    }

    #[inline]
    pub fn uy(&self) -> &Array2<f64> {
        &self.uy
    }

    pub fn component(&self, axis: usize) -> ScalarField {
        ScalarField {
            grid: self.grid,
            values: if axis == 0 {
                self.ux.clone()
            } else {
                self.uy.clone()
            },
        }
    }

    pub fn to_spectrum(&self) -> VectorSpectrum {
        VectorSpectrum {
            x: self.component(0).to_spectrum(),
            y: self.component(1).to_spectrum(),
        }
    }

    pub fn divergence(&self) -> ScalarField {
        let s = self.to_spectrum();
        let mut d = s.x.derivative(0);
        d.coef += &s.y.derivative(1).coef;
        d.to_field()
    }

    /// Scalar vorticity `∂x uy − ∂y ux`.
    pub fn curl(&self) -> ScalarField {
        let s = self.to_spectrum();
        let mut c = s.y.derivative(0);
        c.coef -= &s.x.derivative(1).coef;
        c.to_field()
    }

    pub fn mean(&self) -> [f64; 2] {
        let m = (self.grid.n * self.grid.n) as f64;
        [self.ux.sum() / m, self.uy.sum() / m]
    }

    pub fn inner(&self, other: &VectorField) -> Result<f64> {
        self.grid.check_same(&other.grid)?;
        let h2 = self.grid.h() * self.grid.h();
        let mut sum = 0.0;
        for (a, b) in self.ux.iter().zip(other.ux.iter()) {
            sum += a * b;
        }
        for (a, b) in self.uy.iter().zip(other.uy.iter()) {
            sum += a * b;
        }
        Ok(h2 * sum)
    }

    pub fn l2_norm(&self) -> f64 {
        self.inner(self).expect("same grid").sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.ux
            .iter()
            .chain(self.uy.iter())
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.ux.iter().chain(self.uy.iter()).all(|v| v.is_finite())
    }

    pub fn scaled(&self, c: f64) -> VectorField {
        VectorField {
            grid: self.grid,
            ux: self.ux.mapv(|v| c * v),
            uy: self.uy.mapv(|v| c * v),
        }
    }

    /// Subtracts the constant (mean) part.
    pub fn without_mean(&self) -> VectorField {
        let [mx, my] = self.mean();
        VectorField {
            grid: self.grid,
            ux: self.ux.mapv(|v| v - mx),
            uy: self.uy.mapv(|v| v - my),
        }
    }

    pub fn plus_constant(&self, c: [f64; 2]) -> VectorField {
        VectorField {
            grid: self.grid,
            ux: self.ux.mapv(|v| v + c[0]),
            uy: self.uy.mapv(|v| v + c[1]),
        }
    }

    pub fn write_text(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "VFIELD2 v1 n={} kind=vector", self.grid.n)?;
        for i in 0..self.grid.n {
            for j in 0..self.grid.n {
                writeln!(
                    w,
                    "{} {} {:.16e} {:.16e}",
                    i,
                    j,
                    self.ux[[i, j]],
                    self.uy[[i, j]]
                )?;
            }
        }
        Ok(())
    }

    pub fn read_text(r: &mut impl BufRead, kmax: usize) -> Result<VectorField> {
        let (n, kind) = read_field_header(r)?;
        if kind != "vector" {
            return Err(Error::Format(format!("expected kind=vector, got {kind}")));
        }
        let grid = Grid::new(n, kmax)?;
        let mut ux = Array2::zeros((n, n));
        let mut uy = Array2::zeros((n, n));
        read_rows(r, n, |i, j, cols: &[f64]| {
            ux[[i, j]] = cols[0];
            uy[[i, j]] = cols[1];
        })?;
        VectorField::from_components(grid, ux, uy)
    }
}

impl std::ops::Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField {
            grid: self.grid,
            ux: &self.ux + &rhs.ux,
            uy: &self.uy + &rhs.uy,
        }
    }
}

impl std::ops::Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField {
            grid: self.grid,
            ux: &self.ux - &rhs.ux,
            uy: &self.uy - &rhs.uy,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VectorSpectrum {
    pub x: ScalarSpectrum,
    pub y: ScalarSpectrum,
}

impl VectorSpectrum {
    pub fn grid(&self) -> Grid {
        self.x.grid
    }

    pub fn to_field(&self) -> VectorField {
        VectorField {
            grid: self.x.grid,
            ux: self.x.to_field().values,
            uy: self.y.to_field().values,
        }
    }

    pub fn band_limit(&mut self, kmax: usize) {
        self.x.band_limit(kmax);
        self.y.band_limit(kmax);
    }
}

// ---------------------------------------------------------------------
// Exact products
// ---------------------------------------------------------------------

/// Pointwise product through zero-padded (length-2n) transforms.
///
/// Exact (up to round-off) for any two fields representable on the grid:
/// the padded grid resolves the full product band, and the result is
/// folded back onto the coarse spectrum.
pub fn mul_dealiased(a: &ScalarField, b: &ScalarField) -> ScalarField {
    mul_spectra(&a.to_spectrum(), &b.to_spectrum()).to_field()
}

/// Spectrum-level form of [`mul_dealiased`]; lets callers reuse
/// transforms when one factor enters several products.
pub fn mul_spectra(a: &ScalarSpectrum, b: &ScalarSpectrum) -> ScalarSpectrum {
    let n = a.grid.n;
    debug_assert_eq!(n, b.grid.n);
    let m = 2 * n;

    let mut fa = pad_spectrum(a, m);
    let mut fb = pad_spectrum(b, m);
    fft2(&mut fa, true);
    fft2(&mut fb, true);
    let mut prod = Array2::from_shape_fn((m, m), |(i, j)| fa[[i, j]] * fb[[i, j]]);
    fft2(&mut prod, false);
    let scale = 1.0 / (m * m) as f64;

    // Fold back: coarse bins take the fine coefficient, with the pair of
    // fine ±n/2 lines folded onto the coarse Nyquist line.
    let mut coarse = Array2::zeros((n, n));
    let half = (n / 2) as i64;
    for i in 0..n {
        let kx = wavenumber(i, n);
        for j in 0..n {
            let ky = wavenumber(j, n);
            let mut c = Complex64::new(0.0, 0.0);
            let xs: &[i64] = if kx == -half { &[-half, half] } else { &[kx] };
            let ys: &[i64] = if ky == -half { &[-half, half] } else { &[ky] };
            for &fx in xs {
                for &fy in ys {
                    c += prod[[bin(fx, m), bin(fy, m)]] * scale;
                }
            }
            coarse[[i, j]] = c;
        }
    }
    ScalarSpectrum {
        grid: a.grid,
        coef: coarse,
    }
}

fn pad_spectrum(s: &ScalarSpectrum, m: usize) -> Array2<Complex64> {
    let n = s.grid.n;
    let mut out = Array2::zeros((m, m));
    for i in 0..n {
        let kx = wavenumber(i, n);
        for j in 0..n {
            let ky = wavenumber(j, n);
            out[[bin(kx, m), bin(ky, m)]] = s.coef[[i, j]];
        }
    }
    out
}

// ---------------------------------------------------------------------
// Divergence-free fields
// ---------------------------------------------------------------------

/// A vector field certified divergence-free, with the constant (harmonic)
/// component of each velocity component recorded exactly.
#[derive(Debug, Clone)]
pub struct DivFreeField {
    field: VectorField,
    mean: [f64; 2],
}

impl DivFreeField {
    /// Checks the spectral divergence against `1e-10 · ‖u‖₂`.
    pub fn certify(field: VectorField) -> Result<Self> {
        let div_norm = field.divergence().l2_norm();
        let field_norm = field.l2_norm();
        if div_norm > crate::tol::DIVFREE_REL * field_norm.max(f64::MIN_POSITIVE) {
            return Err(Error::NotDivergenceFree {
                div_norm,
                field_norm,
            });
        }
        Ok(Self::trusted(field))
    }

    /// For constructions that are divergence-free by design (curl of a
    /// streamfunction, Leray output).
    pub(crate) fn trusted(field: VectorField) -> Self {
        let mean = field.mean();
        Self { field, mean }
    }

    #[inline]
    pub fn field(&self) -> &VectorField {
        &self.field
    }

    pub fn into_field(self) -> VectorField {
        self.field
    }

    #[inline]
    pub fn mean(&self) -> [f64; 2] {
        self.mean
    }
}

impl std::ops::Deref for DivFreeField {
    type Target = VectorField;
    fn deref(&self) -> &VectorField {
        &self.field
    }
}

impl AsRef<VectorField> for DivFreeField {
    fn as_ref(&self) -> &VectorField {
        &self.field
    }
}

/// Velocity field of a streamfunction: `u = (∂y ψ, −∂x ψ)`, so
/// `curl u = −Δψ` and `div u = 0` identically.
pub fn curl_of_stream(psi: &ScalarSpectrum) -> DivFreeField {
    let ux = psi.derivative(1);
    let uy = psi.derivative(0);
    let field = VectorField {
        grid: psi.grid,
        ux: ux.to_field().values,
        uy: uy.to_field().values.mapv(|v| -v),
    };
    DivFreeField::trusted(field)
}

/// Mean-zero divergence-free field with `curl u = omega` (so
/// `ψ = −Δ⁻¹ ω`), plus the given constant part.
pub fn velocity_from_vorticity(omega: &ScalarSpectrum, mean: [f64; 2]) -> Result<DivFreeField> {
    let psi = omega.inverse_laplacian()?;
    let psi = ScalarSpectrum {
        grid: psi.grid,
        coef: psi.coef.mapv(|c| -c),
    };
    let u = curl_of_stream(&psi);
    Ok(DivFreeField::trusted(u.field().plus_constant(mean)))
}

/// Deterministic random divergence-free field: the curl of a random
/// band-limited streamfunction.
///
/// For each wavevector `k` with `|k|∞ ≤ kmax` in the fixed half-plane
/// order (`ky = 1..kmax` with `kx = −kmax..kmax`, then `ky = 0` with
/// `kx = 1..kmax`) two uniform draws `a, b ∈ [−1, 1)` set
/// `ψ̂(k) = amplitude (a + ib)/|k|²`; conjugate partners keep the field
/// real. Same seed, same bits.
pub fn random_divfree(seed: u64, grid: Grid, kmax: usize, amplitude: f64) -> Result<DivFreeField> {
    if kmax > grid.kmax {
        return Err(Error::InvalidConfig(format!(
            "requested band {kmax} exceeds grid band limit {}",
            grid.kmax
        )));
    }
    let psi = random_stream(seed, grid, kmax, amplitude);
    Ok(curl_of_stream(&psi))
}

pub(crate) fn random_stream(seed: u64, grid: Grid, kmax: usize, amplitude: f64) -> ScalarSpectrum {
    let mut rng = SplitMix64::new(seed);
    let mut psi = ScalarSpectrum::zeros(grid);
    let k = kmax as i64;
    let mut draw = |psi: &mut ScalarSpectrum, kx: i64, ky: i64| {
        let a = rng.next_signed();
        let b = rng.next_signed();
        let k2 = (kx * kx + ky * ky) as f64;
        psi.set_coef([kx, ky], Complex64::new(a, b) * (amplitude / k2));
    };
    for ky in 1..=k {
        for kx in -k..=k {
            draw(&mut psi, kx, ky);
        }
    }
    for kx in 1..=k {
        draw(&mut psi, kx, 0);
    }
    psi
}

/// Deterministic random mean-zero scalar field over the same half-plane
/// ordering; coefficients `amplitude (a+ib)/|k|`.
pub fn random_scalar(seed: u64, grid: Grid, kmax: usize, amplitude: f64) -> ScalarField {
    let mut rng = SplitMix64::new(seed);
    let mut s = ScalarSpectrum::zeros(grid);
    let k = kmax as i64;
    let mut draw = |s: &mut ScalarSpectrum, kx: i64, ky: i64| {
        let a = rng.next_signed();
        let b = rng.next_signed();
        let norm = ((kx * kx + ky * ky) as f64).sqrt();
        s.set_coef([kx, ky], Complex64::new(a, b) * (amplitude / norm));
    };
    for ky in 1..=k {
        for kx in -k..=k {
            draw(&mut s, kx, ky);
        }
    }
    for kx in 1..=k {
        draw(&mut s, kx, 0);
    }
    s.to_field()
}

/// The Taylor-Green vortex `u = (sin x cos y, −cos x sin y)`, a steady
/// solution of 2-D Euler; streamfunction `sin x sin y`, vorticity
/// `2 sin x sin y`.
pub fn taylor_green(grid: Grid) -> DivFreeField {
    DivFreeField::trusted(VectorField::from_fn(grid, |x, y| {
        [x.sin() * y.cos(), -(x.cos()) * y.sin()]
    }))
}

// ---------------------------------------------------------------------
// Text format helpers
// ---------------------------------------------------------------------

fn read_field_header(r: &mut impl BufRead) -> Result<(usize, String)> {
    let mut line = String::new();
    r.read_line(&mut line)?;
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 4 || parts[0] != "VFIELD2" || parts[1] != "v1" {
        return Err(Error::Format(format!("bad header: {}", line.trim())));
    }
    let n = parts[2]
        .strip_prefix("n=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Format(format!("bad n field: {}", parts[2])))?;
    let kind = parts[3]
        .strip_prefix("kind=")
        .ok_or_else(|| Error::Format(format!("bad kind field: {}", parts[3])))?;
    Ok((n, kind.to_string()))
}

fn read_rows(
    r: &mut impl BufRead,
    n: usize,
    mut sink: impl FnMut(usize, usize, &[f64]),
) -> Result<()> {
    let mut count = 0usize;
    for line in r.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let i: usize = parse_col(it.next(), &line)?;
        let j: usize = parse_col(it.next(), &line)?;
        let vals: Vec<f64> = it
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| Error::Format(format!("bad value in row: {line}")))
            })
            .collect::<Result<_>>()?;
        if i >= n || j >= n || vals.is_empty() {
            return Err(Error::Format(format!("bad row: {line}")));
        }
        sink(i, j, &vals);
        count += 1;
    }
    if count != n * n {
        return Err(Error::Format(format!(
            "expected {} rows, found {count}",
            n * n
        )));
    }
    Ok(())
}

fn parse_col<T: std::str::FromStr>(tok: Option<&str>, line: &str) -> Result<T> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Format(format!("bad row: {line}")))
}
