//! Energy-based quasi-statics: crease elastic energy, virtual-work
//! equilibrium between internal pressure and rotation, output torque, and
//! the derived rigidity/efficiency metrics.
//!
//! The module under pressure `p` (kPa, gauge) carries the potential
//! `Π(θ) = W_s(θ) − p·V_C(θ)` in µJ (1 kPa·mm³ = 1 µJ), where `W_s` is the
//! crease elastic energy and `V_C` the chamber volume. Stationarity gives
//! the equilibrium pressure `p(θ) = W_s′(θ)/V_C′(θ)` and the output torque
//! `τ(θ; p) = −Π′(θ) = p·V_C′ − W_s′`, converted to N·mm by 10⁻³.
//!
//! Sign convention (the positive rotation sense is folding): `p(rest) = 0`;
//! vacuum (`p < 0`) folds the module toward larger θ_u, inflation unfolds
//! it; `τ > 0` drives folding. With this choice the torque vanishes
//! identically on the equilibrium curve.
//!
//! All θ-derivatives are adaptive five-point central differences with a
//! Richardson step-agreement check (see [`crate::numerics`]); the closed
//! volume form is never differentiated symbolically. Both `W_s` and `V_C`
//! are even in θ (a mirrored module is congruent), so evaluation closures
//! work on |θ| and the θ = 0 deployed endpoint stays differentiable.

use crate::angle::Angle;
use crate::geometry::{FoldAngles, GeometryError, ModulePattern};
use crate::kinematics::{ActuatorSpec, KinematicsError};
use crate::numerics::{self, DerivOptions, NumericsError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuasistaticsError {
    #[error("crease stiffnesses must be finite and non-negative, got k_c1 = {k_c1}, k_c2 = {k_c2}")]
    BadStiffness { k_c1: f64, k_c2: f64 },
    #[error("volume slope |dV_C/dθ| < {tol} mm³/rad at θ_u = {theta_deg:.4}°; equilibrium pressure is singular there")]
    SingularEquilibrium { theta_deg: f64, tol: f64 },
    #[error("no equilibrium at {pressure_kpa} kPa: scanned θ_u ∈ [{lo_deg:.2}°, {hi_deg:.2}°], where pressures span [{p_min:.3}, {p_max:.3}] kPa")]
    NoEquilibrium {
        pressure_kpa: f64,
        lo_deg: f64,
        hi_deg: f64,
        p_min: f64,
        p_max: f64,
    },
    #[error("equilibrium branch around the rest angle is empty (rest pressure not evaluable)")]
    EmptyBranch,
    #[error("operating length {length_mm} mm is unreachable; lengths must lie in (0, {max_mm}] mm")]
    UnreachableLength { length_mm: f64, max_mm: f64 },
    #[error("torsional rigidity needs a nonzero twist-angle difference")]
    ZeroAngleDifference,
    #[error("efficiency needs a nonzero, finite pressure·volume product, got {product}")]
    ZeroPressureVolume { product: f64 },
    #[error("grid of evaluation points is empty")]
    EmptyGrid,
    #[error("pressure grid contains a non-finite entry {value}")]
    NonFinitePressure { value: f64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Below this |dV_C/dθ| (mm³/rad) the pressure `W_s′/V_C′` is reported as
/// singular instead of exploding.
const VOLUME_SLOPE_TOL: f64 = 1e-6;
/// Grid resolution of the equilibrium-branch scan.
const BRANCH_SCAN_POINTS: usize = 1024;
/// Bisection tolerance (radians) for equilibrium rotations. Zero lets the
/// bracket shrink to adjacent floats; the equilibrium map is steep where a
/// fold family reflects, and anything coarser leaves a visible torque
/// residual there.
const ROTATION_XTOL: f64 = 0.0;
/// The pressure residual jitters by a few parts in 1e9 between adjacent
/// floats, so the final bisection midpoint is not always the representable
/// angle with the smallest residual. Scanning this many float spacings to
/// each side and keeping the best knocks the leftover equilibrium torque
/// down by another order of magnitude.
const ROOT_POLISH_SPAN: i32 = 16;

/// Energy bookkeeping of one module at a pressurized configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyState {
    /// Stored crease energy `W_s` (µJ); ≥ 0, zero exactly at rest.
    pub w_s: f64,
    /// Pressure work term `p·V_C` (µJ).
    pub w_p: f64,
    /// Configuration the energies are evaluated at.
    pub theta_u: Angle,
}

/// One module's stored crease energy (µJ) at rotation `theta_u`.
///
/// Deviations of the three fold families from their as-molded rest values
/// (taken stress-free at `theta_u0`) are penalized per crease length:
/// `W_s = (k_c1/2)·Σ[2a·Δθ_QR² + 2b·Δθ_QM²] + (k_c2/2)·Σ[c·Δθ_RM²]`,
/// summed over the `n_sides` congruent repeats, in radians; the resulting
/// N·mm are returned as µJ.
pub fn crease_energy(
    pattern: &ModulePattern,
    k_c1: f64,
    k_c2: f64,
    theta_u: Angle,
) -> Result<f64, QuasistaticsError> {
    let model = EnergyModel::new(pattern.clone(), k_c1, k_c2)?;
    model.stored_energy(theta_u.radians())
}

/// `W_s`, `p·V_C`, and θ_u bundled for one configuration.
pub fn energy_state(
    spec: &ActuatorSpec,
    pressure_kpa: f64,
    theta_u: Angle,
) -> Result<EnergyState, QuasistaticsError> {
    let model = EnergyModel::from_spec(spec)?;
    Ok(EnergyState {
        w_s: model.stored_energy(theta_u.radians())?,
        w_p: pressure_kpa * model.pattern.chamber_volume(theta_u)?,
        theta_u,
    })
}

/// The pressure (kPa) holding one module of the stack in equilibrium at
/// `theta_u`: `p = W_s′/V_C′`, both derivatives numerical.
pub fn equilibrium_pressure(
    spec: &ActuatorSpec,
    theta_u: Angle,
) -> Result<f64, QuasistaticsError> {
    EnergyModel::from_spec(spec)?.pressure_at(theta_u.radians())
}

/// Maximal θ-interval around the rest angle on which the equilibrium
/// pressure is strictly decreasing (hence invertible).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumBranch {
    lo: Angle,
    hi: Angle,
    p_at_lo: f64,
    p_at_hi: f64,
}

impl EquilibriumBranch {
    pub fn lo(&self) -> Angle {
        self.lo
    }

    pub fn hi(&self) -> Angle {
        self.hi
    }

    /// Pressures spanned, as `(min, max)`; the minimum (most negative,
    /// deepest vacuum) occurs at `hi`, the maximum at `lo`.
    pub fn pressure_range(&self) -> (f64, f64) {
        (self.p_at_hi, self.p_at_lo)
    }

    pub fn contains_pressure(&self, pressure_kpa: f64) -> bool {
        pressure_kpa >= self.p_at_hi && pressure_kpa <= self.p_at_lo
    }
}

/// Scans `p(θ)` on a dense grid outward from the rest angle and returns the
/// maximal interval on which it stays strictly decreasing and evaluable
/// (fold-angle kinks and singular volume slopes end the branch).
pub fn default_branch(spec: &ActuatorSpec) -> Result<EquilibriumBranch, QuasistaticsError> {
    let model = EnergyModel::from_spec(spec)?;
    scan_branch(&model)
}

/// Inverts the equilibrium map on the default branch: the θ_u at which the
/// stack balances `pressure_kpa`, by bisection down to float resolution.
pub fn equilibrium_rotation(
    spec: &ActuatorSpec,
    pressure_kpa: f64,
) -> Result<Angle, QuasistaticsError> {
    let model = EnergyModel::from_spec(spec)?;
    let branch = scan_branch(&model)?;
    rotation_on(&model, &branch, pressure_kpa)?.ok_or(QuasistaticsError::NoEquilibrium {
        pressure_kpa,
        lo_deg: branch.lo.degrees(),
        hi_deg: branch.hi.degrees(),
        p_min: branch.p_at_hi,
        p_max: branch.p_at_lo,
    })
}

/// Output torque (N·mm) of the stack held at `theta_u` under `pressure_kpa`:
/// `τ = 10⁻³·(p·V_C′ − W_s′)`, positive in the folding sense. Zero exactly
/// on the equilibrium curve.
pub fn output_torque(
    spec: &ActuatorSpec,
    pressure_kpa: f64,
    theta_u: Angle,
) -> Result<f64, QuasistaticsError> {
    EnergyModel::from_spec(spec)?.torque_at(pressure_kpa, theta_u.radians())
}

/// Torsional rigidity `K = T·l/(φ′ − φ₀)` in N·mm²/deg; pure arithmetic on
/// the supplied torque (N·mm), lever length (mm), and twist angles.
pub fn torsional_rigidity(
    torque_nmm: f64,
    length_mm: f64,
    phi_prime: Angle,
    phi_0: Angle,
) -> Result<f64, QuasistaticsError> {
    let dphi_deg = (phi_prime - phi_0).degrees();
    if dphi_deg.abs() < 1e-12 || !dphi_deg.is_finite() {
        return Err(QuasistaticsError::ZeroAngleDifference);
    }
    Ok(torque_nmm * length_mm / dphi_deg)
}

/// Energy-conversion efficiency `ξ = T·θ/(P·V_c)`: output work over
/// pneumatic input, both in µJ (`T` N·mm, `θ` the twist change, `P` kPa,
/// `V_c` mm³).
pub fn efficiency(
    torque_nmm: f64,
    theta: Angle,
    pressure_kpa: f64,
    volume_mm3: f64,
) -> Result<f64, QuasistaticsError> {
    let product = pressure_kpa * volume_mm3;
    if product == 0.0 || !product.is_finite() {
        return Err(QuasistaticsError::ZeroPressureVolume { product });
    }
    Ok(1000.0 * torque_nmm * theta.radians() / product)
}

/// One solved point of an [`EquilibriumCurve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumPoint {
    pub theta_u: Angle,
    pub volume_mm3: f64,
    /// `output_torque` re-evaluated at the solution — a residual that should
    /// sit at numerical zero.
    pub torque_residual_nmm: f64,
}

/// One pressure sample; `solution` is `None` where the pressure falls
/// outside the default branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub pressure_kpa: f64,
    pub solution: Option<EquilibriumPoint>,
}

/// Pressure → equilibrium rotation samples, ordered by pressure.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumCurve {
    samples: Vec<CurveSample>,
    branch: EquilibriumBranch,
}

impl EquilibriumCurve {
    pub fn samples(&self) -> &[CurveSample] {
        &self.samples
    }

    /// The monotone branch the curve was solved on.
    pub fn branch(&self) -> EquilibriumBranch {
        self.branch
    }
}

/// Solves the equilibrium rotation for every pressure in `pressures_kpa`
/// (sorted ascending in the output); unsolvable pressures are kept as
/// samples with an empty solution.
pub fn pressure_angle_curve(
    spec: &ActuatorSpec,
    pressures_kpa: &[f64],
) -> Result<EquilibriumCurve, QuasistaticsError> {
    if pressures_kpa.is_empty() {
        return Err(QuasistaticsError::EmptyGrid);
    }
    if let Some(&value) = pressures_kpa.iter().find(|p| !p.is_finite()) {
        return Err(QuasistaticsError::NonFinitePressure { value });
    }
    let model = EnergyModel::from_spec(spec)?;
    let branch = scan_branch(&model)?;
    let mut sorted = pressures_kpa.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut samples = Vec::with_capacity(sorted.len());
    for pressure_kpa in sorted {
        let solution = match rotation_on(&model, &branch, pressure_kpa)? {
            Some(theta_u) => Some(EquilibriumPoint {
                theta_u,
                volume_mm3: model.pattern.chamber_volume(theta_u)?,
                torque_residual_nmm: model.torque_at(pressure_kpa, theta_u.radians())?,
            }),
            None => None,
        };
        samples.push(CurveSample {
            pressure_kpa,
            solution,
        });
    }
    Ok(EquilibriumCurve { samples, branch })
}

/// Torque and rigidity of the stack compressed to one operating length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthTorqueSample {
    pub length_mm: f64,
    pub theta_u: Angle,
    pub torque_nmm: f64,
    /// `τ·l` over the accumulated twist from rest; `None` at the rest length
    /// where the twist difference vanishes.
    pub rigidity_nmm2_per_deg: Option<f64>,
}

/// Evaluates torque across operating lengths `l = count·h(θ_u)` of the
/// uniform stack held at `pressure_kpa`. Each length must satisfy
/// `0 < l ≤ count·b` (and reach a valid rotation for patterns with
/// `b < 2a`); rigidity is taken relative to the rest pose.
pub fn torque_vs_operating_length(
    spec: &ActuatorSpec,
    pressure_kpa: f64,
    lengths_mm: &[f64],
) -> Result<Vec<LengthTorqueSample>, QuasistaticsError> {
    if lengths_mm.is_empty() {
        return Err(QuasistaticsError::EmptyGrid);
    }
    let model = EnergyModel::from_spec(spec)?;
    let count = spec.module_count() as f64;
    let max_mm = count * model.pattern.b();
    let rest = model.pattern.rest_rotation();
    let mut samples = Vec::with_capacity(lengths_mm.len());
    for &length_mm in lengths_mm {
        if !(length_mm > 0.0) || length_mm > max_mm * (1.0 + 1e-12) {
            return Err(QuasistaticsError::UnreachableLength { length_mm, max_mm });
        }
        let theta_u = model
            .pattern
            .rotation_from_height((length_mm / count).min(model.pattern.b()))?;
        let torque_nmm = model.torque_at(pressure_kpa, theta_u.radians())?;
        let dphi_deg = count * (theta_u - rest).degrees();
        let rigidity_nmm2_per_deg =
            (dphi_deg.abs() >= 1e-9).then(|| torque_nmm * length_mm / dphi_deg);
        samples.push(LengthTorqueSample {
            length_mm,
            theta_u,
            torque_nmm,
            rigidity_nmm2_per_deg,
        });
    }
    Ok(samples)
}

/// Cached per-module energy evaluator: pattern, stiffnesses, and the
/// stress-free rest fold angles.
struct EnergyModel {
    pattern: ModulePattern,
    k_c1: f64,
    k_c2: f64,
    rest_folds: FoldAngles,
    theta_max_rad: f64,
}

impl EnergyModel {
    fn new(pattern: ModulePattern, k_c1: f64, k_c2: f64) -> Result<Self, QuasistaticsError> {
        if !(k_c1 >= 0.0 && k_c2 >= 0.0 && k_c1.is_finite() && k_c2.is_finite()) {
            return Err(QuasistaticsError::BadStiffness { k_c1, k_c2 });
        }
        let rest_folds = pattern.fold_angles(pattern.rest_rotation())?;
        let theta_max_rad = pattern.theta_max().radians();
        Ok(EnergyModel {
            pattern,
            k_c1,
            k_c2,
            rest_folds,
            theta_max_rad,
        })
    }

    fn from_spec(spec: &ActuatorSpec) -> Result<Self, QuasistaticsError> {
        Self::new(spec.uniform_pattern()?.clone(), spec.k_c1(), spec.k_c2())
    }

    /// `W_s` in µJ at a signed rotation (even extension through θ = 0).
    fn stored_energy(&self, theta_rad: f64) -> Result<f64, QuasistaticsError> {
        let folds = self
            .pattern
            .fold_angles(Angle::from_radians(theta_rad.abs()))?;
        let d_qm = (folds.theta_qm - self.rest_folds.theta_qm).radians();
        let d_qr = (folds.theta_qr - self.rest_folds.theta_qr).radians();
        let d_rm = (folds.theta_rm - self.rest_folds.theta_rm).radians();
        let n = f64::from(self.pattern.n_sides());
        let thick = 0.5
            * self.k_c1
            * n
            * (2.0 * self.pattern.a() * d_qr * d_qr + 2.0 * self.pattern.b() * d_qm * d_qm);
        let thin = 0.5 * self.k_c2 * n * self.pattern.c() * d_rm * d_rm;
        Ok(1000.0 * (thick + thin))
    }

    fn energy_closure(&self) -> impl Fn(f64) -> Option<f64> + '_ {
        move |t: f64| self.stored_energy(t).ok()
    }

    fn volume_closure(&self) -> impl Fn(f64) -> Option<f64> + '_ {
        move |t: f64| {
            self.pattern
                .chamber_volume(Angle::from_radians(t.abs()))
                .ok()
        }
    }

    fn derivative_domain(&self) -> (f64, f64) {
        (-self.theta_max_rad, self.theta_max_rad)
    }

    fn d_energy(&self, theta_rad: f64) -> Result<f64, NumericsError> {
        numerics::derivative(
            self.energy_closure(),
            theta_rad,
            self.derivative_domain(),
            DerivOptions::default(),
        )
        .map(|d| d.value)
    }

    fn d_volume(&self, theta_rad: f64) -> Result<f64, NumericsError> {
        numerics::derivative(
            self.volume_closure(),
            theta_rad,
            self.derivative_domain(),
            DerivOptions::default(),
        )
        .map(|d| d.value)
    }

    fn pressure_at(&self, theta_rad: f64) -> Result<f64, QuasistaticsError> {
        let dv = self.d_volume(theta_rad)?;
        if dv.abs() < VOLUME_SLOPE_TOL {
            return Err(QuasistaticsError::SingularEquilibrium {
                theta_deg: theta_rad.to_degrees(),
                tol: VOLUME_SLOPE_TOL,
            });
        }
        Ok(self.d_energy(theta_rad)? / dv)
    }

    fn torque_at(&self, pressure_kpa: f64, theta_rad: f64) -> Result<f64, QuasistaticsError> {
        let dv = self.d_volume(theta_rad)?;
        let dw = self.d_energy(theta_rad)?;
        Ok(1e-3 * (pressure_kpa * dv - dw))
    }
}

/// Dense outward scan from the rest angle for the maximal strictly
/// decreasing stretch of `p(θ)`.
fn scan_branch(model: &EnergyModel) -> Result<EquilibriumBranch, QuasistaticsError> {
    let t_max = model.theta_max_rad;
    let lo_lim = 1e-3 * t_max;
    let hi_lim = (1.0 - 1e-3) * t_max;
    let step = (hi_lim - lo_lim) / (BRANCH_SCAN_POINTS - 1) as f64;
    let at = |i: usize| lo_lim + i as f64 * step;
    let rest = model.pattern.rest_rotation().radians();
    let i_rest = (((rest - lo_lim) / step).round() as usize).min(BRANCH_SCAN_POINTS - 1);

    let p_rest = model.pressure_at(at(i_rest)).map_err(|_| QuasistaticsError::EmptyBranch)?;
    let (mut i_lo, mut p_lo) = (i_rest, p_rest);
    while i_lo > 0 {
        match model.pressure_at(at(i_lo - 1)) {
            Ok(p) if p > p_lo => {
                i_lo -= 1;
                p_lo = p;
            }
            _ => break,
        }
    }
    let (mut i_hi, mut p_hi) = (i_rest, p_rest);
    while i_hi < BRANCH_SCAN_POINTS - 1 {
        match model.pressure_at(at(i_hi + 1)) {
            Ok(p) if p < p_hi => {
                i_hi += 1;
                p_hi = p;
            }
            _ => break,
        }
    }
    Ok(EquilibriumBranch {
        lo: Angle::from_radians(at(i_lo)),
        hi: Angle::from_radians(at(i_hi)),
        p_at_lo: p_lo,
        p_at_hi: p_hi,
    })
}

/// Bisection inside the branch; `Ok(None)` when the pressure lies outside
/// the branch's span.
fn rotation_on(
    model: &EnergyModel,
    branch: &EquilibriumBranch,
    pressure_kpa: f64,
) -> Result<Option<Angle>, QuasistaticsError> {
    if !branch.contains_pressure(pressure_kpa) {
        return Ok(None);
    }
    let f = |t: f64| model.pressure_at(t).ok().map(|p| p - pressure_kpa);
    let root = numerics::bisect(
        f,
        branch.lo.radians(),
        branch.hi.radians(),
        ROTATION_XTOL,
        200,
    )?;
    let spacing = root.abs().max(1e-6) * f64::EPSILON;
    let mut best_abs = f(root).map_or(f64::INFINITY, f64::abs);
    let mut best = root;
    for k in 1..=ROOT_POLISH_SPAN {
        for cand in [root - k as f64 * spacing, root + k as f64 * spacing] {
            if cand <= branch.lo.radians() || cand >= branch.hi.radians() {
                continue;
            }
            if let Some(residual) = f(cand) {
                if residual.abs() < best_abs {
                    best_abs = residual.abs();
                    best = cand;
                }
            }
        }
    }
    Ok(Some(Angle::from_radians(best)))
}
