//! Closed-form rotation formulas and serial-chain pose composition.
//!
//! Single-module closed forms (all angles measured as relative rotation of
//! the top polygon against the bottom one):
//!
//! * unfold rotation `θ_u = 2·arcsin(b·cos δ / 2a)` — rest-state twist,
//! * folding rotation `θ_f = 2·arcsin(b/2a) − θ_u` — twist still available
//!   between rest and flat-folded,
//! * maximum rotation `θ_max = 2·arcsin(b/2a)` — independent of δ,
//! * skeleton-limited maximum `θ_ts = 2·arcsin((b/2a)·(1 − k/sin δ0))` for a
//!   module with an internal support skeleton of thickness ratio `k = t_s/b`.
//!
//! Serial chains compose per-module rigid transforms. Every module rotates
//! about and translates along the same axis, so the transforms commute and a
//! chain pose is simply the accumulated signed rotation plus the summed
//! heights; [`Pose`] keeps the accumulated angle explicitly because a bare
//! rotation matrix cannot represent net turns beyond 360°.

use crate::angle::Angle;
use crate::geometry::{GeometryError, Handedness, ModulePattern};
use nalgebra::{Matrix4, Rotation3, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum KinematicsError {
    #[error("rest fold angle delta must lie in (0°, 90°], got {delta_deg}°")]
    DeltaOutOfRange { delta_deg: f64 },
    #[error("crease aspect ratio b/a must lie in (0, 2], got {b_over_a}")]
    RatioOutOfRange { b_over_a: f64 },
    #[error("arcsin argument {argument:.6} falls outside [-1, 1]; parameters leave the formula's domain")]
    ArcsinDomain { argument: f64 },
    #[error("skeleton thickness ratio k must be nonnegative, got {k}")]
    NegativeSkeletonRatio { k: f64 },
    #[error("crease stiffness constants must be nonnegative, got k_c1 = {k_c1}, k_c2 = {k_c2}")]
    NegativeStiffness { k_c1: f64, k_c2: f64 },
    #[error("rotation magnitude {theta_deg:.4}° exceeds this module's maximum {max_deg:.4}°")]
    ThetaBeyondMax { theta_deg: f64, max_deg: f64 },
    #[error("chain was given {got} rotation angles for {expected} modules")]
    ChainLengthMismatch { expected: usize, got: usize },
    #[error("actuator needs at least one module")]
    EmptyModuleList,
    #[error("a type-ii arrangement needs an even module count, got {count}")]
    OddTypeTwo { count: usize },
    #[error("handedness sequence does not match the {label} arrangement at module {index}")]
    HandednessMismatch { label: TypeLabel, index: usize },
    #[error("modules are not geometrically identical (module {index} differs from module 0); this operation assumes a uniform stack")]
    NonUniformModules { index: usize },
    #[error("rotation magnitude must be nonnegative, got {theta_deg}°")]
    NegativeMagnitude { theta_deg: f64 },
    #[error("sweep grids must be nonempty")]
    EmptyGrid,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn checked_asin2(argument: f64) -> Result<Angle, KinematicsError> {
    if !(-1.0..=1.0).contains(&argument) {
        return Err(KinematicsError::ArcsinDomain { argument });
    }
    Ok(Angle::from_radians(2.0 * argument.asin()))
}

fn check_delta(delta: Angle) -> Result<(), KinematicsError> {
    let d = delta.degrees();
    if !(d > 0.0 && d <= 90.0) {
        return Err(KinematicsError::DeltaOutOfRange { delta_deg: d });
    }
    Ok(())
}

fn check_ratio(b_over_a: f64) -> Result<(), KinematicsError> {
    if !(b_over_a > 0.0 && b_over_a <= 2.0) {
        return Err(KinematicsError::RatioOutOfRange { b_over_a });
    }
    Ok(())
}

/// Rest-state relative rotation `θ_u = 2·arcsin(b·cos δ / 2a)`.
///
/// This is the twist a module acquires while unfolding from flat-deployed to
/// its rest fold angle `δ`.
pub fn unfold_rotation(delta: Angle, b_over_a: f64) -> Result<Angle, KinematicsError> {
    check_delta(delta)?;
    check_ratio(b_over_a)?;
    checked_asin2(b_over_a * delta.cos() / 2.0)
}

/// Folding rotation `θ_f = θ_max − θ_u`: the twist still available between
/// the rest state and the flat-folded state. Nonnegative on the whole domain.
pub fn folding_rotation(delta: Angle, b_over_a: f64) -> Result<Angle, KinematicsError> {
    Ok(max_rotation(b_over_a)? - unfold_rotation(delta, b_over_a)?)
}

/// Maximum relative rotation `θ_max = 2·arcsin(b/2a)`. Depends on the crease
/// aspect ratio only, not on the rest fold angle.
pub fn max_rotation(b_over_a: f64) -> Result<Angle, KinematicsError> {
    check_ratio(b_over_a)?;
    checked_asin2(b_over_a / 2.0)
}

/// Maximum rotation with an internal support skeleton of thickness ratio
/// `k = t_s/b`: `θ_ts = 2·arcsin((b/2a)·(1 − k/sin δ0))`. Reduces to
/// [`max_rotation`] at `k = 0` and is non-increasing in `k`.
pub fn skeleton_max_rotation(
    b_over_a: f64,
    k: f64,
    delta0: Angle,
) -> Result<Angle, KinematicsError> {
    check_ratio(b_over_a)?;
    check_delta(delta0)?;
    if !(k >= 0.0) {
        return Err(KinematicsError::NegativeSkeletonRatio { k });
    }
    checked_asin2(b_over_a / 2.0 * (1.0 - k / delta0.sin()))
}

/// Handedness arrangement of a module stack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TypeLabel {
    /// All modules share one handedness: the free end rotates and shrinks.
    #[serde(rename = "type-i")]
    TypeI,
    /// First half one handedness, second half the opposite: linear output,
    /// largest internal rotation at the middle joint.
    #[serde(rename = "type-ii")]
    TypeII,
    /// Handedness alternates module-by-module (each module mirrors its
    /// neighbor): linear output, alternating joint rotations.
    #[serde(rename = "type-iii")]
    TypeIII,
    /// Any explicit handedness sequence.
    #[serde(rename = "custom")]
    Custom,
}

impl std::fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TypeLabel::TypeI => "type-i",
            TypeLabel::TypeII => "type-ii",
            TypeLabel::TypeIII => "type-iii",
            TypeLabel::Custom => "custom",
        })
    }
}

/// An ordered stack of modules plus the stack-level constants.
#[derive(Debug, Clone, PartialEq)]
pub struct ActuatorSpec {
    modules: Vec<ModulePattern>,
    type_label: TypeLabel,
    skeleton_ratio: f64,
    k_c1: f64,
    k_c2: f64,
}

impl ActuatorSpec {
    /// Validates an explicit module list against its type label.
    ///
    /// `k_c1` and `k_c2` are the torsional crease stiffnesses (N/rad, per
    /// unit crease length) of the thick and thin crease families;
    /// `skeleton_ratio` is `k = t_s/b` (0 when no skeleton is present).
    pub fn new(
        modules: Vec<ModulePattern>,
        type_label: TypeLabel,
        skeleton_ratio: f64,
        k_c1: f64,
        k_c2: f64,
    ) -> Result<Self, KinematicsError> {
        if modules.is_empty() {
            return Err(KinematicsError::EmptyModuleList);
        }
        if !(k_c1 >= 0.0 && k_c2 >= 0.0) {
            return Err(KinematicsError::NegativeStiffness { k_c1, k_c2 });
        }
        if !(skeleton_ratio >= 0.0) {
            return Err(KinematicsError::NegativeSkeletonRatio { k: skeleton_ratio });
        }
        let lead = modules[0].handedness();
        let expect = |index: usize| -> Option<Handedness> {
            match type_label {
                TypeLabel::TypeI => Some(lead),
                TypeLabel::TypeII => {
                    if index < modules.len() / 2 {
                        Some(lead)
                    } else {
                        Some(lead.mirrored())
                    }
                }
                TypeLabel::TypeIII => {
                    if index % 2 == 0 {
                        Some(lead)
                    } else {
                        Some(lead.mirrored())
                    }
                }
                TypeLabel::Custom => None,
            }
        };
        if type_label == TypeLabel::TypeII && modules.len() % 2 != 0 {
            return Err(KinematicsError::OddTypeTwo {
                count: modules.len(),
            });
        }
        for (index, module) in modules.iter().enumerate() {
            if let Some(want) = expect(index)
                && module.handedness() != want
            {
                return Err(KinematicsError::HandednessMismatch {
                    label: type_label,
                    index,
                });
            }
        }
        Ok(ActuatorSpec {
            modules,
            type_label,
            skeleton_ratio,
            k_c1,
            k_c2,
        })
    }

    /// Builds a uniform stack of `count` copies of `pattern`, with the
    /// handedness sequence implied by `type_label` (the pattern's own
    /// handedness leads).
    pub fn uniform(
        pattern: &ModulePattern,
        count: usize,
        type_label: TypeLabel,
        skeleton_ratio: f64,
        k_c1: f64,
        k_c2: f64,
    ) -> Result<Self, KinematicsError> {
        if count == 0 {
            return Err(KinematicsError::EmptyModuleList);
        }
        if type_label == TypeLabel::TypeII && count % 2 != 0 {
            return Err(KinematicsError::OddTypeTwo { count });
        }
        let lead = pattern.handedness();
        let modules = (0..count)
            .map(|i| {
                let h = match type_label {
                    TypeLabel::TypeI | TypeLabel::Custom => lead,
                    TypeLabel::TypeII => {
                        if i < count / 2 {
                            lead
                        } else {
                            lead.mirrored()
                        }
                    }
                    TypeLabel::TypeIII => {
                        if i % 2 == 0 {
                            lead
                        } else {
                            lead.mirrored()
                        }
                    }
                };
                pattern.with_handedness(h)
            })
            .collect();
        Self::new(modules, type_label, skeleton_ratio, k_c1, k_c2)
    }

    pub fn modules(&self) -> &[ModulePattern] {
        &self.modules
    }

    pub fn module_count(&self) -> usize {
        self.modules.len()
    }

    pub fn type_label(&self) -> TypeLabel {
        self.type_label
    }

    pub fn skeleton_ratio(&self) -> f64 {
        self.skeleton_ratio
    }

    pub fn k_c1(&self) -> f64 {
        self.k_c1
    }

    pub fn k_c2(&self) -> f64 {
        self.k_c2
    }

    /// The shared geometry of a uniform stack (handedness aside). Errors if
    /// any module's geometry differs from module 0.
    pub fn uniform_pattern(&self) -> Result<&ModulePattern, KinematicsError> {
        let first = &self.modules[0];
        for (index, m) in self.modules.iter().enumerate().skip(1) {
            if !m.same_geometry(first) {
                return Err(KinematicsError::NonUniformModules { index });
            }
        }
        Ok(first)
    }

    /// Maps a shared rotation magnitude onto per-module signed rotations
    /// using each module's handedness (CW positive).
    pub fn signed_rotations(&self, magnitude: Angle) -> Result<Vec<Angle>, KinematicsError> {
        if magnitude.radians() < 0.0 {
            return Err(KinematicsError::NegativeMagnitude {
                theta_deg: magnitude.degrees(),
            });
        }
        Ok(self
            .modules
            .iter()
            .map(|m| magnitude * m.handedness().sign())
            .collect())
    }
}

/// Rigid pose of a free end relative to the fixed end: accumulated signed
/// rotation about the stack axis plus axial translation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    rotation: Angle,
    translation: f64,
}

impl Pose {
    pub fn identity() -> Self {
        Pose {
            rotation: Angle::ZERO,
            translation: 0.0,
        }
    }

    pub fn new(rotation: Angle, translation_mm: f64) -> Self {
        Pose {
            rotation,
            translation: translation_mm,
        }
    }

    /// Accumulated signed rotation about the axis. Unlike the matrix form,
    /// this is not wrapped modulo 360°.
    pub fn rotation(&self) -> Angle {
        self.rotation
    }

    /// Axial translation in mm.
    pub fn translation(&self) -> f64 {
        self.translation
    }

    /// Composition. Axial rotations and translations commute, so both
    /// components simply add.
    pub fn then(&self, next: &Pose) -> Pose {
        Pose {
            rotation: self.rotation + next.rotation,
            translation: self.translation + next.translation,
        }
    }

    pub fn inverse(&self) -> Pose {
        Pose {
            rotation: -self.rotation,
            translation: -self.translation,
        }
    }

    /// Homogeneous 4×4 transform: elemental rotation about `y` composed with
    /// translation along `y`.
    pub fn matrix(&self) -> Matrix4<f64> {
        let mut m =
            Rotation3::from_axis_angle(&Vector3::y_axis(), self.rotation.radians())
                .to_homogeneous();
        m[(1, 3)] = self.translation;
        m
    }
}

/// Axial translation model used by [`module_transform`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeightModel {
    /// Truss height `h(θ) = √(b² − 4a²·sin²(θ/2))`.
    Exact,
    /// Linear profile `b − (b/60°)·|θ|`; calibrated for geometries whose
    /// maximum rotation is 60° and only a rough approximation elsewhere.
    Linear,
}

/// A warning attached to an otherwise valid result.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelWarning {
    /// The linear height model was used on a pattern whose maximum rotation
    /// is not 60°.
    LinearHeightMismatch { theta_max_deg: f64 },
}

impl std::fmt::Display for ModelWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModelWarning::LinearHeightMismatch { theta_max_deg } => write!(
                f,
                "linear height model assumes theta_max = 60°, but this pattern has theta_max = {theta_max_deg:.2}°"
            ),
        }
    }
}

/// A pose plus any model-mismatch warnings picked up while computing it.
#[derive(Debug, Clone, PartialEq)]
pub struct PoseResult {
    pub pose: Pose,
    pub warnings: Vec<ModelWarning>,
}

/// Rigid transform of a module's top polygon for a signed rotation `theta`
/// (sign encodes handedness; magnitude must not exceed the module's
/// maximum). Rotation is about `y` by `theta`; translation along `y` is the
/// module height under the chosen model.
pub fn module_transform(
    pattern: &ModulePattern,
    theta: Angle,
    height_model: HeightModel,
) -> Result<PoseResult, KinematicsError> {
    let magnitude = theta.abs();
    let max = pattern.theta_max();
    if magnitude.radians() > max.radians() * (1.0 + 1e-12) + 1e-15 {
        return Err(KinematicsError::ThetaBeyondMax {
            theta_deg: theta.degrees(),
            max_deg: max.degrees(),
        });
    }
    let mut warnings = Vec::new();
    let translation = match height_model {
        HeightModel::Exact => pattern.height_from_rotation(magnitude)?,
        HeightModel::Linear => {
            if (max.degrees() - 60.0).abs() > 1e-9 {
                warnings.push(ModelWarning::LinearHeightMismatch {
                    theta_max_deg: max.degrees(),
                });
            }
            pattern.b() * (1.0 - magnitude.degrees() / 60.0)
        }
    };
    Ok(PoseResult {
        pose: Pose::new(theta, translation),
        warnings,
    })
}

/// Cumulative poses after each module of a chain: element `i` is the pose of
/// the free end of module `i` relative to the fixed base. The last element
/// is the full chain pose.
pub fn chain_partial_poses(
    spec: &ActuatorSpec,
    thetas: &[Angle],
    height_model: HeightModel,
) -> Result<(Vec<Pose>, Vec<ModelWarning>), KinematicsError> {
    if thetas.len() != spec.module_count() {
        return Err(KinematicsError::ChainLengthMismatch {
            expected: spec.module_count(),
            got: thetas.len(),
        });
    }
    let mut poses = Vec::with_capacity(thetas.len());
    let mut warnings: Vec<ModelWarning> = Vec::new();
    let mut acc = Pose::identity();
    for (pattern, &theta) in spec.modules().iter().zip(thetas) {
        let step = module_transform(pattern, theta, height_model)?;
        for w in step.warnings {
            if !warnings.contains(&w) {
                warnings.push(w);
            }
        }
        acc = acc.then(&step.pose);
        poses.push(acc);
    }
    Ok((poses, warnings))
}

/// Pose of the chain's free end: the ordered product of per-module
/// transforms. Net rotation is the sum of the signed per-module rotations;
/// net translation the sum of module heights.
pub fn chain_pose(
    spec: &ActuatorSpec,
    thetas: &[Angle],
    height_model: HeightModel,
) -> Result<PoseResult, KinematicsError> {
    let (poses, warnings) = chain_partial_poses(spec, thetas, height_model)?;
    Ok(PoseResult {
        pose: *poses.last().expect("spec guarantees at least one module"),
        warnings,
    })
}

/// Which closed-form angle a parametric sweep tabulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepQuantity {
    ThetaU,
    ThetaF,
    ThetaMax,
    ThetaTs,
}

impl SweepQuantity {
    /// Column-name stem used in reports.
    pub fn column(&self) -> &'static str {
        match self {
            SweepQuantity::ThetaU => "theta_u_deg",
            SweepQuantity::ThetaF => "theta_f_deg",
            SweepQuantity::ThetaMax => "theta_max_deg",
            SweepQuantity::ThetaTs => "theta_ts_deg",
        }
    }
}

/// Dense tabulation of a closed-form angle over a (δ, b/a) grid.
/// Out-of-domain grid points carry `None`.
#[derive(Debug, Clone)]
pub struct SweepGrid {
    deltas: Vec<Angle>,
    ratios: Vec<f64>,
    values: Vec<Option<Angle>>,
}

impl SweepGrid {
    pub fn deltas(&self) -> &[Angle] {
        &self.deltas
    }

    pub fn ratios(&self) -> &[f64] {
        &self.ratios
    }

    /// Value at (delta index, ratio index).
    pub fn value(&self, i_delta: usize, i_ratio: usize) -> Option<Angle> {
        self.values[i_delta * self.ratios.len() + i_ratio]
    }
}

/// Tabulates `quantity` over the cartesian product of the two grids.
/// `k` is the skeleton thickness ratio, used only for [`SweepQuantity::ThetaTs`]
/// (treated as 0 when absent).
pub fn parametric_sweep(
    quantity: SweepQuantity,
    delta_grid: &[Angle],
    ratio_grid: &[f64],
    k: Option<f64>,
) -> Result<SweepGrid, KinematicsError> {
    if delta_grid.is_empty() || ratio_grid.is_empty() {
        return Err(KinematicsError::EmptyGrid);
    }
    let k = k.unwrap_or(0.0);
    let mut values = Vec::with_capacity(delta_grid.len() * ratio_grid.len());
    for &delta in delta_grid {
        for &ratio in ratio_grid {
            let v = match quantity {
                SweepQuantity::ThetaU => unfold_rotation(delta, ratio),
                SweepQuantity::ThetaF => folding_rotation(delta, ratio),
                SweepQuantity::ThetaMax => max_rotation(ratio),
                SweepQuantity::ThetaTs => skeleton_max_rotation(ratio, k, delta),
            };
            values.push(v.ok());
        }
    }
    Ok(SweepGrid {
        deltas: delta_grid.to_vec(),
        ratios: ratio_grid.to_vec(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ia_pattern() -> ModulePattern {
        ModulePattern::new(
            18.0,
            18.0,
            27.6,
            Angle::from_degrees(45.0),
            6,
            Handedness::Cw,
        )
        .unwrap()
    }

    fn ib_pattern() -> ModulePattern {
        ModulePattern::new(
            20.0,
            40.0,
            44.7,
            Angle::from_degrees(53.0),
            6,
            Handedness::Cw,
        )
        .unwrap()
    }

    #[test]
    fn closed_forms_match_frozen_values() {
        let u1 = unfold_rotation(Angle::from_degrees(45.0), 1.0).unwrap();
        assert_relative_eq!(u1.degrees(), 41.4096221093, max_relative = 1e-9);
        let u2 = unfold_rotation(Angle::from_degrees(53.0), 2.0).unwrap();
        assert_abs_diff_eq!(u2.degrees(), 74.0, epsilon = 1e-10);
        let f1 = folding_rotation(Angle::from_degrees(45.0), 1.0).unwrap();
        assert_relative_eq!(f1.degrees(), 60.0 - 41.4096221093, max_relative = 1e-9);
        let f2 = folding_rotation(Angle::from_degrees(53.0), 2.0).unwrap();
        assert_abs_diff_eq!(f2.degrees(), 106.0, epsilon = 1e-10);
        assert_abs_diff_eq!(max_rotation(1.0).unwrap().degrees(), 60.0, epsilon = 1e-12);
        assert_abs_diff_eq!(max_rotation(2.0).unwrap().degrees(), 180.0, epsilon = 1e-12);
    }

    #[test]
    fn unfold_rotation_vanishes_at_vertical_creases() {
        let u = unfold_rotation(Angle::from_degrees(90.0), 1.7).unwrap();
        assert!(u.radians().abs() < 1e-14);
        let f = folding_rotation(Angle::from_degrees(90.0), 2.0).unwrap();
        assert_abs_diff_eq!(f.degrees(), 180.0, epsilon = 1e-12);
    }

    #[test]
    fn domain_errors_are_reported() {
        assert!(matches!(
            unfold_rotation(Angle::from_degrees(0.0), 1.0),
            Err(KinematicsError::DeltaOutOfRange { .. })
        ));
        assert!(matches!(
            max_rotation(2.5),
            Err(KinematicsError::RatioOutOfRange { .. })
        ));
        assert!(matches!(
            skeleton_max_rotation(1.0, -0.1, Angle::from_degrees(45.0)),
            Err(KinematicsError::NegativeSkeletonRatio { .. })
        ));
    }

    #[test]
    fn rotation_decomposition_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let delta = Angle::from_degrees(rng.random_range(1.0..90.0));
            let ratio = rng.random_range(0.05..2.0);
            let u = unfold_rotation(delta, ratio).unwrap();
            let f = folding_rotation(delta, ratio).unwrap();
            let m = max_rotation(ratio).unwrap();
            assert_abs_diff_eq!(u.radians() + f.radians(), m.radians(), epsilon = 1e-12);
            assert!(f.radians() >= 0.0);
        }
    }

    #[test]
    fn max_rotation_ignores_delta() {
        let m = max_rotation(1.6).unwrap();
        for d in [10.0, 30.0, 60.0, 89.0] {
            let u = unfold_rotation(Angle::from_degrees(d), 1.6).unwrap();
            let f = folding_rotation(Angle::from_degrees(d), 1.6).unwrap();
            assert_abs_diff_eq!((u + f).radians(), m.radians(), epsilon = 1e-12);
        }
    }

    #[test]
    fn skeleton_limit_matches_frozen_values() {
        // k = 0 reduces exactly to the unconstrained maximum.
        assert_eq!(
            skeleton_max_rotation(1.3, 0.0, Angle::from_degrees(50.0)).unwrap(),
            max_rotation(1.3).unwrap()
        );
        let ts = skeleton_max_rotation(1.0, 0.05, Angle::from_degrees(45.0)).unwrap();
        assert_relative_eq!(ts.degrees(), 55.3744550829, max_relative = 1e-9);
        // Thick-skeleton reduction for the b/a = 2 pattern: a modest bite
        // out of the 180° bound.
        let ts2 = skeleton_max_rotation(2.0, 0.05, Angle::from_degrees(53.0)).unwrap();
        assert_relative_eq!(180.0 - ts2.degrees(), 40.7634187044, max_relative = 1e-9);
    }

    #[test]
    fn skeleton_limit_non_increasing_in_k() {
        let mut prev = f64::INFINITY;
        for i in 0..40 {
            let k = i as f64 * 0.01;
            let ts = skeleton_max_rotation(1.5, k, Angle::from_degrees(40.0))
                .unwrap()
                .degrees();
            assert!(ts <= prev + 1e-12);
            prev = ts;
        }
    }

    #[test]
    fn module_transform_boundary_cases() {
        let p = ia_pattern();
        let at_zero = module_transform(&p, Angle::ZERO, HeightModel::Exact).unwrap();
        assert_eq!(at_zero.pose.rotation(), Angle::ZERO);
        assert_relative_eq!(at_zero.pose.translation(), p.b());
        assert!(at_zero.warnings.is_empty());

        let linear_full =
            module_transform(&p, Angle::from_degrees(60.0), HeightModel::Linear).unwrap();
        assert_abs_diff_eq!(linear_full.pose.translation(), 0.0, epsilon = 1e-12);
        assert!(linear_full.warnings.is_empty(), "theta_max = 60° fits the linear model");

        let exact_rest = module_transform(&p, p.rest_rotation(), HeightModel::Exact).unwrap();
        assert_relative_eq!(exact_rest.pose.translation(), 12.7279220614, max_relative = 1e-9);

        assert!(matches!(
            module_transform(&p, Angle::from_degrees(61.0), HeightModel::Exact),
            Err(KinematicsError::ThetaBeyondMax { .. })
        ));
    }

    #[test]
    fn linear_height_warns_off_its_calibration() {
        let p = ib_pattern(); // theta_max = 180°
        let r = module_transform(&p, Angle::from_degrees(30.0), HeightModel::Linear).unwrap();
        assert_eq!(
            r.warnings,
            vec![ModelWarning::LinearHeightMismatch {
                theta_max_deg: 180.0
            }]
        );
    }

    #[test]
    fn exact_and_linear_heights_agree_at_calibration_points() {
        let p = ia_pattern();
        let mut max_gap: f64 = 0.0;
        for i in 0..=60 {
            let theta = Angle::from_degrees(i as f64);
            let exact = module_transform(&p, theta, HeightModel::Exact).unwrap();
            let linear = module_transform(&p, theta, HeightModel::Linear).unwrap();
            max_gap = max_gap.max((exact.pose.translation() - linear.pose.translation()).abs());
            if i == 0 || i == 60 {
                assert_abs_diff_eq!(
                    exact.pose.translation(),
                    linear.pose.translation(),
                    epsilon = 1e-5
                );
            }
        }
        // Bounded interior sag; for b/a = 1 the worst gap stays below b/2.
        assert!(max_gap > 0.0 && max_gap < p.b() / 2.0, "max gap {max_gap}");
    }

    #[test]
    fn uniform_stack_handedness_arrangements() {
        let p = ib_pattern();
        let t1 = ActuatorSpec::uniform(&p, 4, TypeLabel::TypeI, 0.0, 2.0, 0.25).unwrap();
        assert!(t1.modules().iter().all(|m| m.handedness() == Handedness::Cw));
        let t2 = ActuatorSpec::uniform(&p, 8, TypeLabel::TypeII, 0.0, 2.0, 0.25).unwrap();
        let hs: Vec<_> = t2.modules().iter().map(|m| m.handedness()).collect();
        assert_eq!(hs[..4], [Handedness::Cw; 4]);
        assert_eq!(hs[4..], [Handedness::Ccw; 4]);
        let t3 = ActuatorSpec::uniform(&p, 5, TypeLabel::TypeIII, 0.0, 2.0, 0.25).unwrap();
        let hs: Vec<_> = t3.modules().iter().map(|m| m.handedness()).collect();
        assert_eq!(
            hs,
            [
                Handedness::Cw,
                Handedness::Ccw,
                Handedness::Cw,
                Handedness::Ccw,
                Handedness::Cw
            ]
        );
        assert!(matches!(
            ActuatorSpec::uniform(&p, 5, TypeLabel::TypeII, 0.0, 2.0, 0.25),
            Err(KinematicsError::OddTypeTwo { count: 5 })
        ));
        // Explicit list with a wrong sequence is rejected.
        let bad = vec![p.clone(), p.clone()];
        assert!(matches!(
            ActuatorSpec::new(bad, TypeLabel::TypeIII, 0.0, 2.0, 0.25),
            Err(KinematicsError::HandednessMismatch { index: 1, .. })
        ));
    }

    #[test]
    fn type_two_chain_cancels_rotation() {
        let p = ia_pattern();
        let spec = ActuatorSpec::uniform(&p, 8, TypeLabel::TypeII, 0.0, 2.0, 0.25).unwrap();
        let thetas = spec.signed_rotations(Angle::from_degrees(25.0)).unwrap();
        let result = chain_pose(&spec, &thetas, HeightModel::Exact).unwrap();
        assert!(result.pose.rotation().radians().abs() < 1e-12);
        let h = p.height_from_rotation(Angle::from_degrees(25.0)).unwrap();
        assert_relative_eq!(result.pose.translation(), 8.0 * h, max_relative = 1e-12);
    }

    #[test]
    fn type_one_full_fold_rotation_gain() {
        let p = ib_pattern();
        let spec = ActuatorSpec::uniform(&p, 4, TypeLabel::TypeI, 0.0, 2.0, 0.25).unwrap();
        let at = |theta: Angle| {
            let thetas = spec.signed_rotations(theta).unwrap();
            chain_pose(&spec, &thetas, HeightModel::Exact)
                .unwrap()
                .pose
                .rotation()
        };
        let gain = at(p.theta_max()) - at(p.rest_rotation());
        assert_abs_diff_eq!(gain.degrees(), 424.0, epsilon = 1e-9);
        // The accumulated angle survives past 360°, where a bare matrix
        // would wrap.
        assert_abs_diff_eq!(at(p.theta_max()).degrees(), 720.0, epsilon = 1e-9);
    }

    #[test]
    fn single_module_chain_equals_module_transform() {
        let p = ib_pattern();
        let spec = ActuatorSpec::uniform(&p, 1, TypeLabel::TypeI, 0.0, 2.0, 0.25).unwrap();
        let theta = Angle::from_degrees(100.0);
        let chain = chain_pose(&spec, &[theta], HeightModel::Exact).unwrap();
        let single = module_transform(&p, theta, HeightModel::Exact).unwrap();
        assert_eq!(chain.pose, single.pose);
    }

    #[test]
    fn pose_group_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let a = Pose::new(Angle::from_degrees(rng.random_range(-400.0..400.0)), rng.random_range(-50.0..50.0));
            let b = Pose::new(Angle::from_degrees(rng.random_range(-400.0..400.0)), rng.random_range(-50.0..50.0));
            let c = Pose::new(Angle::from_degrees(rng.random_range(-400.0..400.0)), rng.random_range(-50.0..50.0));
            let left = a.then(&b).then(&c);
            let right = a.then(&b.then(&c));
            assert_abs_diff_eq!(left.rotation().radians(), right.rotation().radians(), epsilon = 1e-12);
            assert_abs_diff_eq!(left.translation(), right.translation(), epsilon = 1e-12);
            let undo = a.then(&a.inverse());
            assert_abs_diff_eq!(undo.rotation().radians(), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(undo.translation(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn pose_matrix_is_a_homogeneous_rigid_transform() {
        let pose = Pose::new(Angle::from_degrees(73.0), 12.5);
        let m = pose.matrix();
        let r = m.fixed_view::<3, 3>(0, 0);
        assert_relative_eq!(r.determinant(), 1.0, max_relative = 1e-12);
        let should_be_identity = r * r.transpose();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(should_be_identity[(i, j)], expect, epsilon = 1e-12);
            }
        }
        assert_eq!(m[(3, 0)], 0.0);
        assert_eq!(m[(3, 1)], 0.0);
        assert_eq!(m[(3, 2)], 0.0);
        assert_eq!(m[(3, 3)], 1.0);
        assert_relative_eq!(m[(1, 3)], 12.5);
    }

    #[test]
    fn net_rotation_additivity() {
        let p = ia_pattern();
        let spec = ActuatorSpec::uniform(&p, 6, TypeLabel::TypeIII, 0.0, 2.0, 0.25).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let thetas: Vec<Angle> = (0..6)
                .map(|_| Angle::from_degrees(rng.random_range(-59.0..59.0)))
                .collect();
            let pose = chain_pose(&spec, &thetas, HeightModel::Exact).unwrap().pose;
            let sum: f64 = thetas.iter().map(|t| t.radians()).sum();
            assert_abs_diff_eq!(pose.rotation().radians(), sum, epsilon = 1e-12);
        }
    }

    #[test]
    fn chain_rejects_wrong_length() {
        let p = ia_pattern();
        let spec = ActuatorSpec::uniform(&p, 4, TypeLabel::TypeI, 0.0, 2.0, 0.25).unwrap();
        assert!(matches!(
            chain_pose(&spec, &[Angle::ZERO; 3], HeightModel::Exact),
            Err(KinematicsError::ChainLengthMismatch {
                expected: 4,
                got: 3
            })
        ));
    }

    #[test]
    fn sweep_grids_behave() {
        let deltas: Vec<Angle> = (1..=8).map(|i| Angle::from_degrees(10.0 * i as f64)).collect();
        let ratios: Vec<f64> = vec![0.5, 1.0, 1.5, 2.0, 2.5];

        // theta_max is constant along the delta axis (and missing at 2.5).
        let g = parametric_sweep(SweepQuantity::ThetaMax, &deltas, &ratios, None).unwrap();
        for j in 0..ratios.len() - 1 {
            let first = g.value(0, j).unwrap();
            for i in 1..deltas.len() {
                assert_eq!(g.value(i, j).unwrap(), first);
            }
        }
        assert!(g.value(0, 4).is_none(), "ratio 2.5 is out of domain");

        // theta_u decreases in delta at fixed ratio, increases in ratio at
        // fixed delta.
        let g = parametric_sweep(SweepQuantity::ThetaU, &deltas, &ratios[..4], None).unwrap();
        for j in 0..4 {
            for i in 1..deltas.len() {
                assert!(g.value(i, j).unwrap() < g.value(i - 1, j).unwrap());
            }
        }
        for i in 0..deltas.len() {
            for j in 1..4 {
                assert!(g.value(i, j).unwrap() > g.value(i, j - 1).unwrap());
            }
        }

        // A 1×1 grid equals the scalar call.
        let one = parametric_sweep(
            SweepQuantity::ThetaF,
            &[Angle::from_degrees(53.0)],
            &[2.0],
            None,
        )
        .unwrap();
        assert_eq!(
            one.value(0, 0).unwrap(),
            folding_rotation(Angle::from_degrees(53.0), 2.0).unwrap()
        );

        assert!(matches!(
            parametric_sweep(SweepQuantity::ThetaU, &[], &ratios, None),
            Err(KinematicsError::EmptyGrid)
        ));
    }

    #[test]
    fn signed_rotations_follow_handedness() {
        let p = ib_pattern();
        let spec = ActuatorSpec::uniform(&p, 4, TypeLabel::TypeIII, 0.0, 2.0, 0.25).unwrap();
        let thetas = spec.signed_rotations(Angle::from_degrees(30.0)).unwrap();
        let degs: Vec<f64> = thetas.iter().map(|t| t.degrees()).collect();
        assert_relative_eq!(degs[0], 30.0);
        assert_relative_eq!(degs[1], -30.0);
        assert_relative_eq!(degs[2], 30.0);
        assert_relative_eq!(degs[3], -30.0);
        assert!(spec.signed_rotations(Angle::from_degrees(-1.0)).is_err());
    }
}
