//! Default tolerances for the verification suites.
//!
//! Every threshold used by the checks is named here, with the reasoning
//! behind it, so no suite carries ad-hoc magic numbers. All values can be
//! overridden per run through `tolerances` in the experiment config.

/// Spectral round trip (grid → coefficients → grid), relative.
///
/// Two FFT passes accumulate a few ulps per mode; 1e-13 leaves roughly
/// two decades of headroom over the observed ~1e-15.
pub const ROUNDTRIP_REL: f64 = 1e-13;

/// Identities that are exact in exact arithmetic and involve only a few
/// spectral operations (Parseval, integration by parts, projector
/// idempotence), relative.
pub const EXACT_REL: f64 = 1e-12;

/// Advection-calculus identities (antisymmetry of `∇` under a
/// divergence-free advecting field, symmetry of second differentials,
/// adjointness of the advection transpose), normalized.
///
/// These chain padded products, projections, and quadrature; one extra
/// decade over `EXACT_REL` absorbs the longer floating-point paths.
pub const CALCULUS_REL: f64 = 1e-11;

/// Divergence certificate for fields produced by the Leray projection,
/// relative to the field norm.
pub const DIVFREE_REL: f64 = 1e-10;

/// Normalized Jacobi-cycle residual |O(v)| / S.
///
/// The cyclic sum cancels terms that are individually O(S·kmax²), so the
/// residual floor is round-off amplified by the cancelled magnitude;
/// 1e-9 is three decades above the observed floor at n = 64, kmax = 8.
pub const JACOBI_NORM: f64 = 1e-9;

/// Normalized bracket of enstrophy against any library observable
/// (empirical Casimir suite).
pub const CASIMIR_NORM: f64 = 1e-10;

/// Gap between the group-side bracket and the algebra bracket at the
/// identity map, normalized. Pure round-off: no interpolation involved.
pub const REDUCTION_IDENTITY: f64 = 1e-10;

/// Same gap at generated volume-preserving maps at n = 64 with spectral
/// interpolation. Limited by the spectral tail of composed (no longer
/// band-limited) integrands and by the map inversion tolerance.
pub const REDUCTION_MAP: f64 = 1e-6;

/// Right-invariance residual ‖π(η∘ξ, v∘ξ) − π(η, v)‖ / ‖·‖ for generic
/// volume-preserving ξ at n = 64, spectral interpolation.
pub const RIGHT_INVARIANCE: f64 = 1e-8;

/// Flow-map inversion: fixed-point iteration stops when the max update
/// drops below this (absolute, in displacement units).
pub const INVERSION_STEP: f64 = 1e-12;

/// Two-sided inversion residual ‖η∘η⁻¹ − id‖∞ for converged inversions.
pub const INVERSION_RESIDUAL: f64 = 1e-10;

/// Taylor-Green steadiness ‖u(1) − u(0)‖₂/‖u(0)‖₂ at n = 64, dt = 1e-3.
pub const TG_STEADY: f64 = 1e-8;

/// Relative energy / enstrophy drift of both integrators over t ∈ [0, 1]
/// at n = 64, dt = 1e-3 (RK4: O(dt⁴) per unit time).
pub const CONSERVATION_DRIFT: f64 = 1e-8;

/// Momentum components are carried exactly; drift is pure round-off.
pub const MOMENTUM_ABS: f64 = 1e-13;

/// Commutative-diagram residual on Taylor-Green at n = 64, dt = 1e-3,
/// t = 0.5.
pub const COMMUTE_TG: f64 = 1e-6;

/// Required fitted dt-order of the commutation residual in the
/// RK4-dominated regime.
pub const COMMUTE_ORDER: f64 = 3.5;

/// Required fitted grid-refinement order for the reduction gap.
pub const REDUCTION_ORDER: f64 = 2.0;

/// Normalized Poisson-flow residual on the truncated system at
/// dt = 1e-3, t = 0.25.
pub const POISSON_RESIDUAL: f64 = 1e-7;

/// Required decrease factor of the Poisson-flow residual under dt → dt/2
/// (RK4 would give 16; 8 allows a mixed-term slice).
pub const POISSON_DECREASE: f64 = 8.0;

/// Oracle cross-check: dual-path bracket agreement on K ≤ 3 data,
/// normalized. Both paths are exact; the gap is round-off.
pub const ORACLE_GAP: f64 = 1e-12;

/// Hodge suite (idempotence, orthogonality, reconstruction), relative.
pub const HODGE_REL: f64 = 1e-11;

/// Minimum measured order for the bicubic interpolation refinement sweep
/// (the scheme is O(h⁴); 3.7 tolerates pre-asymptotic wobble).
pub const BICUBIC_ORDER: f64 = 3.7;

/// Central finite differences of a C³ functional converge at order 2;
/// 1.9 tolerates the same wobble.
pub const FD_ORDER: f64 = 1.9;

/// Below this (relative to scale), finite-difference gaps are treated as
/// sitting on the round-off floor and slope fits are not meaningful:
/// central differences of linear or quadratic functionals are exact.
pub const FD_FLOOR: f64 = 1e-12;
