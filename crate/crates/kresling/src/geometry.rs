//! Exact 3D truss model of a single Kresling module.
//!
//! A module is two parallel regular polygons (circumradius `a`) joined by
//! `2·n_sides` triangular wall panels. The relative rotation `theta_u` of the
//! top polygon against the bottom one couples to the axial height through the
//! wall crease of length `b`: `(2a·sin(theta_u/2))² + h² = b²`. This module
//! provides vertex coordinates, the closed wall triangulation, the chamber
//! volume, and the three fold dihedral angles, all as functions of `theta_u`.
//!
//! Axes: the module axis is `y`; the bottom polygon lies in the `y = 0`
//! plane, the top polygon in `y = h`. Lengths are millimetres.

use crate::angle::Angle;
use nalgebra::{Point3, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Rotation sense of a module's free end under deflation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Handedness {
    Cw,
    Ccw,
}

impl Handedness {
    /// Sign convention: CW modules take positive rotation under deflation.
    pub fn sign(self) -> f64 {
        match self {
            Handedness::Cw => 1.0,
            Handedness::Ccw => -1.0,
        }
    }

    pub fn mirrored(self) -> Self {
        match self {
            Handedness::Cw => Handedness::Ccw,
            Handedness::Ccw => Handedness::Cw,
        }
    }
}

impl std::fmt::Display for Handedness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Handedness::Cw => "cw",
            Handedness::Ccw => "ccw",
        })
    }
}

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("pattern length {name} must be positive, got {value} mm")]
    NonPositiveLength { name: &'static str, value: f64 },
    #[error("polygon order n_sides must be at least 4, got {n_sides}")]
    PolygonOrder { n_sides: u32 },
    #[error("rest fold angle delta0 must lie strictly between 0° and 90°, got {delta0_deg}°")]
    RestAngleOutOfRange { delta0_deg: f64 },
    #[error(
        "crease length b = {b} mm exceeds the polygon diameter 2a = {diameter} mm; \
         the maximum-rotation bound 2·arcsin(b/2a) would be undefined"
    )]
    HypotenuseTooLong { b: f64, diameter: f64 },
    #[error("rotation theta_u = {theta_deg:.6}° outside the valid range [0°, {max_deg:.6}°]")]
    RotationOutOfRange { theta_deg: f64, max_deg: f64 },
    #[error("height h = {h} mm outside the valid range [0, {b}] mm")]
    HeightOutOfRange { h: f64, b: f64 },
    #[error(
        "chord {chord:.6} mm exceeds the polygon diameter {diameter:.6} mm; \
         the pattern cannot close at this height"
    )]
    ChordTooLong { chord: f64, diameter: f64 },
    #[error("degenerate wall panel at theta_u = {theta_deg:.6}° (zero-area cross product)")]
    DegeneratePanel { theta_deg: f64 },
}

/// Geometric definition of one Kresling module.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulePattern {
    a: f64,
    b: f64,
    c: f64,
    delta0: Angle,
    n_sides: u32,
    handedness: Handedness,
}

impl ModulePattern {
    /// Validates and builds a pattern.
    ///
    /// * `a` — circumradius of the top/bottom polygon (also the edge length
    ///   for hexagons), mm.
    /// * `b` — wall crease length between a bottom vertex and its top
    ///   partner, mm. Must satisfy `b ≤ 2a`.
    /// * `c` — third crease length, used as an energy weight only (the truss
    ///   model does not hold it constant), mm.
    /// * `delta0` — rest fold angle between crease `b` and the horizontal.
    /// * `n_sides` — polygon order, at least 4.
    pub fn new(
        a: f64,
        b: f64,
        c: f64,
        delta0: Angle,
        n_sides: u32,
        handedness: Handedness,
    ) -> Result<Self, GeometryError> {
        for (name, value) in [("a", a), ("b", b), ("c", c)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(GeometryError::NonPositiveLength { name, value });
            }
        }
        if n_sides < 4 {
            return Err(GeometryError::PolygonOrder { n_sides });
        }
        let delta0_deg = delta0.degrees();
        if !(delta0_deg > 0.0 && delta0_deg < 90.0) {
            return Err(GeometryError::RestAngleOutOfRange { delta0_deg });
        }
        if b > 2.0 * a {
            return Err(GeometryError::HypotenuseTooLong { b, diameter: 2.0 * a });
        }
        Ok(ModulePattern {
            a,
            b,
            c,
            delta0,
            n_sides,
            handedness,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn delta0(&self) -> Angle {
        self.delta0
    }

    pub fn n_sides(&self) -> u32 {
        self.n_sides
    }

    pub fn handedness(&self) -> Handedness {
        self.handedness
    }

    /// Crease aspect ratio b/a.
    pub fn ratio(&self) -> f64 {
        self.b / self.a
    }

    /// Copy of this pattern with a different handedness.
    pub fn with_handedness(&self, handedness: Handedness) -> Self {
        ModulePattern {
            handedness,
            ..self.clone()
        }
    }

    /// True if all geometric fields match (handedness may differ).
    pub fn same_geometry(&self, other: &Self) -> bool {
        self.a == other.a
            && self.b == other.b
            && self.c == other.c
            && self.delta0 == other.delta0
            && self.n_sides == other.n_sides
    }

    /// Largest achievable relative rotation, `2·arcsin(b/2a)`.
    /// In-domain by the construction invariant `b ≤ 2a`.
    pub fn theta_max(&self) -> Angle {
        Angle::from_radians(2.0 * (self.b / (2.0 * self.a)).asin())
    }

    /// Rest-state relative rotation, `2·arcsin(b·cos(delta0)/2a)`.
    pub fn rest_rotation(&self) -> Angle {
        let arg = self.b * self.delta0.cos() / (2.0 * self.a);
        Angle::from_radians(2.0 * arg.asin())
    }

    /// Rest-state height, `b·sin(delta0)`.
    pub fn rest_height(&self) -> f64 {
        self.b * self.delta0.sin()
    }

    fn check_rotation(&self, theta_u: Angle) -> Result<(), GeometryError> {
        let t = theta_u.radians();
        let max = self.theta_max().radians();
        // Tiny slack so values computed *at* theta_max survive rounding.
        if !t.is_finite() || t < -1e-12 || t > max * (1.0 + 1e-12) + 1e-15 {
            return Err(GeometryError::RotationOutOfRange {
                theta_deg: theta_u.degrees(),
                max_deg: self.theta_max().degrees(),
            });
        }
        Ok(())
    }

    /// Height from rotation: `h = √(b² − 4a²·sin²(theta_u/2))`.
    pub fn height_from_rotation(&self, theta_u: Angle) -> Result<f64, GeometryError> {
        self.check_rotation(theta_u)?;
        let chord = 2.0 * self.a * (theta_u.radians() / 2.0).sin();
        let d = self.b * self.b - chord * chord;
        if d < 0.0 {
            // Only roundoff at theta_max can land here; the range check above
            // rejects genuinely out-of-range rotations.
            return Ok(0.0);
        }
        Ok(d.sqrt())
    }

    /// Rotation from height: `theta_u = 2·arcsin(√(b² − h²)/2a)`.
    pub fn rotation_from_height(&self, h: f64) -> Result<Angle, GeometryError> {
        if !h.is_finite() || h < 0.0 || h > self.b * (1.0 + 1e-12) {
            return Err(GeometryError::HeightOutOfRange { h, b: self.b });
        }
        let chord = (self.b * self.b - h * h).max(0.0).sqrt();
        let diameter = 2.0 * self.a;
        let arg = chord / diameter;
        if arg > 1.0 + 1e-12 {
            return Err(GeometryError::ChordTooLong { chord, diameter });
        }
        Ok(Angle::from_radians(2.0 * arg.min(1.0).asin()))
    }

    /// Validated instantaneous configuration at `theta_u`.
    pub fn state_at(&self, theta_u: Angle) -> Result<ModuleState, GeometryError> {
        let h = self.height_from_rotation(theta_u)?;
        Ok(ModuleState { theta_u, h })
    }

    /// All `2·n_sides` polygon vertices plus the geometric center.
    ///
    /// Bottom vertex `j` sits at `(a·sin(j·α), 0, a·cos(j·α))` with
    /// `α = 2π/n_sides`; top vertex `j` at the same phase shifted by
    /// `theta_u`, height `h`. The labeled wall points are `M = bottom[0]`,
    /// `P = bottom[1]`, `Q = top[0]`, `R = top[1]`.
    pub fn vertex_positions(&self, theta_u: Angle) -> Result<VertexSet, GeometryError> {
        let h = self.height_from_rotation(theta_u)?;
        let n = self.n_sides as usize;
        let alpha = 2.0 * std::f64::consts::PI / n as f64;
        let t = theta_u.radians();
        let mut bottom = Vec::with_capacity(n);
        let mut top = Vec::with_capacity(n);
        for j in 0..n {
            let phi = j as f64 * alpha;
            bottom.push(Point3::new(self.a * phi.sin(), 0.0, self.a * phi.cos()));
            let psi = t + phi;
            top.push(Point3::new(self.a * psi.sin(), h, self.a * psi.cos()));
        }
        Ok(VertexSet {
            bottom,
            top,
            center: Point3::new(0.0, h / 2.0, 0.0),
        })
    }

    /// Closed, outward-oriented triangulation of the chamber boundary:
    /// two polygon cap fans plus `2·n_sides` wall triangles. Each wall bay
    /// `j` splits along its `bottom[j] → top[j+1]` diagonal (the third
    /// crease) into a lower and an upper triangle.
    pub fn surface_triangles(&self, theta_u: Angle) -> Result<Vec<Triangle>, GeometryError> {
        let vs = self.vertex_positions(theta_u)?;
        let n = self.n_sides as usize;
        let (b, t) = (&vs.bottom, &vs.top);
        let mut tris = Vec::with_capacity(4 * n - 4);
        for j in 1..n - 1 {
            // Bottom cap winds against +y (outward is -y), top cap with +y.
            tris.push([b[0], b[j + 1], b[j]]);
            tris.push([t[0], t[j], t[j + 1]]);
        }
        for j in 0..n {
            let k = (j + 1) % n;
            tris.push([b[j], b[k], t[k]]);
            tris.push([b[j], t[k], t[j]]);
        }
        Ok(tris)
    }

    /// Chamber volume by signed pyramid decomposition from the geometric
    /// center `G = (0, h/2, 0)`: `Σ (v0−G)·((v1−G)×(v2−G))/6` over the
    /// outward-oriented boundary triangles. For a closed oriented surface
    /// this sum is independent of the reference point, and when the chamber
    /// is star-shaped from `G` every term is an honest pyramid volume.
    pub fn chamber_volume(&self, theta_u: Angle) -> Result<f64, GeometryError> {
        let g = Point3::new(0.0, self.height_from_rotation(theta_u)? / 2.0, 0.0);
        Ok(signed_volume(&self.surface_triangles(theta_u)?, &g))
    }

    /// Dihedral rotation angles at the three fold families, from cross
    /// products of wall edge vectors (unsigned angle between panel normals,
    /// so each lies in [0, π/2]).
    pub fn fold_angles(&self, theta_u: Angle) -> Result<FoldAngles, GeometryError> {
        let vs = self.vertex_positions(theta_u)?;
        let n = self.n_sides as usize;
        fold_angles_from_labeled(
            vs.bottom[0],
            vs.bottom[1],
            vs.top[0],
            vs.top[1],
            vs.bottom[n - 1],
        )
        .ok_or(GeometryError::DegeneratePanel {
            theta_deg: theta_u.degrees(),
        })
    }
}

/// A module's instantaneous configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModuleState {
    theta_u: Angle,
    h: f64,
}

impl ModuleState {
    pub fn theta_u(&self) -> Angle {
        self.theta_u
    }

    pub fn height(&self) -> f64 {
        self.h
    }
}

/// One oriented boundary triangle.
pub type Triangle = [Point3<f64>; 3];

/// Vertices of a module at some rotation.
#[derive(Debug, Clone)]
pub struct VertexSet {
    bottom: Vec<Point3<f64>>,
    top: Vec<Point3<f64>>,
    center: Point3<f64>,
}

impl VertexSet {
    pub fn bottom(&self) -> &[Point3<f64>] {
        &self.bottom
    }

    pub fn top(&self) -> &[Point3<f64>] {
        &self.top
    }

    /// Geometric center `G = (0, h/2, 0)`.
    pub fn center(&self) -> Point3<f64> {
        self.center
    }

    /// First bottom vertex (labeled M).
    pub fn m(&self) -> Point3<f64> {
        self.bottom[0]
    }

    /// Second bottom vertex (labeled P).
    pub fn p(&self) -> Point3<f64> {
        self.bottom[1]
    }

    /// First top vertex (labeled Q).
    pub fn q(&self) -> Point3<f64> {
        self.top[0]
    }

    /// Second top vertex (labeled R).
    pub fn r(&self) -> Point3<f64> {
        self.top[1]
    }
}

/// Dihedral rotation angles of the three fold families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoldAngles {
    /// Fold along the `b` crease Q–M.
    pub theta_qm: Angle,
    /// Fold along the top polygon edge Q–R (measured against the polygon
    /// plane with normal `[0, 1, 0]`).
    pub theta_qr: Angle,
    /// Fold along the wall diagonal R–M (the third crease).
    pub theta_rm: Angle,
}

/// Signed volume enclosed by an oriented triangle soup, measured from an
/// arbitrary reference point.
pub fn signed_volume(tris: &[Triangle], reference: &Point3<f64>) -> f64 {
    let mut six_v = 0.0;
    for tri in tris {
        let u = tri[0] - reference;
        let v = tri[1] - reference;
        let w = tri[2] - reference;
        six_v += u.dot(&v.cross(&w));
    }
    six_v / 6.0
}

/// Fold angles from the five labeled wall points: `m`, `p` (bottom ring),
/// `q`, `r` (top ring), and `t_prev` (the bottom vertex preceding `m`).
/// Returns `None` when a panel degenerates (zero-area cross product).
pub(crate) fn fold_angles_from_labeled(
    m: Point3<f64>,
    p: Point3<f64>,
    q: Point3<f64>,
    r: Point3<f64>,
    t_prev: Point3<f64>,
) -> Option<FoldAngles> {
    let qm = m - q;
    let qr = r - q;
    let mt = t_prev - m;
    let rm = m - r;
    let mp = p - m;
    let n_wall = qm.cross(&qr);
    let n_qm = qm.cross(&mt);
    let n_rm = rm.cross(&mp);
    let n_s = Vector3::new(0.0, 1.0, 0.0);

    let angle_between = |u: &Vector3<f64>, v: &Vector3<f64>| -> Option<Angle> {
        let denom = u.norm() * v.norm();
        if denom < 1e-12 {
            return None;
        }
        // atan2(‖u×v‖, |u·v|) ∈ [0, π/2]: same angle as acos of the
        // normalized absolute dot, but well-conditioned near 0, where acos
        // amplifies rounding by 1/sin and wrecks energy derivatives.
        let cross = u.cross(v).norm();
        let dot = u.dot(v).abs();
        Some(Angle::from_radians(cross.atan2(dot)))
    };

    Some(FoldAngles {
        theta_qm: angle_between(&n_wall, &n_qm)?,
        theta_qr: angle_between(&n_wall, &n_s)?,
        theta_rm: angle_between(&n_wall, &n_rm)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use nalgebra::Rotation3;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ia() -> ModulePattern {
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

    fn ib() -> ModulePattern {
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
    fn construction_rejects_invalid_fields() {
        let d45 = Angle::from_degrees(45.0);
        assert!(matches!(
            ModulePattern::new(-1.0, 1.0, 1.0, d45, 6, Handedness::Cw),
            Err(GeometryError::NonPositiveLength { name: "a", .. })
        ));
        assert!(matches!(
            ModulePattern::new(1.0, 3.0, 1.0, d45, 6, Handedness::Cw),
            Err(GeometryError::HypotenuseTooLong { .. })
        ));
        assert!(matches!(
            ModulePattern::new(1.0, 1.0, 1.0, d45, 3, Handedness::Cw),
            Err(GeometryError::PolygonOrder { n_sides: 3 })
        ));
        assert!(matches!(
            ModulePattern::new(1.0, 1.0, 1.0, Angle::from_degrees(90.0), 6, Handedness::Cw),
            Err(GeometryError::RestAngleOutOfRange { .. })
        ));
        // b = 2a is the boundary case and must be accepted.
        assert!(ModulePattern::new(1.0, 2.0, 1.0, d45, 6, Handedness::Cw).is_ok());
    }

    #[test]
    fn rest_heights_match_known_patterns() {
        assert_relative_eq!(ia().rest_height(), 12.7279220614, max_relative = 1e-9);
        assert_relative_eq!(ib().rest_height(), 31.9454204019, max_relative = 1e-9);
    }

    #[test]
    fn rest_rotations_match_known_patterns() {
        assert_relative_eq!(ia().rest_rotation().degrees(), 41.4096221093, max_relative = 1e-9);
        assert_relative_eq!(ib().rest_rotation().degrees(), 74.0, max_relative = 1e-12);
    }

    #[test]
    fn height_rotation_inverses_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for pattern in [ia(), ib()] {
            let max = pattern.theta_max().radians();
            for _ in 0..200 {
                let t = Angle::from_radians(rng.random_range(0.0..max * 0.999));
                let h = pattern.height_from_rotation(t).unwrap();
                let back = pattern.rotation_from_height(h).unwrap();
                assert_abs_diff_eq!(back.radians(), t.radians(), epsilon = 1e-9);
                // Crease-preservation identity.
                let chord = 2.0 * pattern.a() * (t.radians() / 2.0).sin();
                assert_relative_eq!(
                    chord * chord + h * h,
                    pattern.b() * pattern.b(),
                    max_relative = 1e-9
                );
            }
        }
    }

    #[test]
    fn boundary_heights() {
        let p = ib();
        assert_relative_eq!(p.height_from_rotation(Angle::ZERO).unwrap(), 40.0);
        // b = 2a: flat fold at 180°.
        assert_abs_diff_eq!(
            p.rotation_from_height(0.0).unwrap().degrees(),
            180.0,
            epsilon = 1e-9
        );
        // b = a: flat fold at 60°, height 0 at theta_max.
        let q = ia();
        assert!(q.height_from_rotation(q.theta_max()).unwrap() < 1e-5);
        assert!(
            q.height_from_rotation(Angle::from_degrees(61.0)).is_err(),
            "rotation beyond theta_max must be rejected"
        );
        assert!(q.rotation_from_height(19.0).is_err());
    }

    #[test]
    fn rotation_from_height_ignores_polygon_order() {
        let d = Angle::from_degrees(50.0);
        let reference = ModulePattern::new(15.0, 24.0, 20.0, d, 6, Handedness::Cw)
            .unwrap()
            .rotation_from_height(17.0)
            .unwrap();
        for n in [4, 5, 8] {
            let p = ModulePattern::new(15.0, 24.0, 20.0, d, n, Handedness::Cw).unwrap();
            assert_eq!(p.rotation_from_height(17.0).unwrap(), reference);
        }
    }

    #[test]
    fn labeled_vertices_sit_where_stated() {
        let p = ia();
        let rest = p.rest_rotation();
        let vs = p.vertex_positions(rest).unwrap();
        assert_relative_eq!(vs.m().x, 0.0);
        assert_relative_eq!(vs.m().z, 18.0);
        assert_relative_eq!(vs.p().x, 18.0 * (3.0_f64).sqrt() / 2.0, max_relative = 1e-12);
        assert_relative_eq!(vs.p().z, 9.0, max_relative = 1e-12);
        // The wall crease M–Q has length b at every valid rotation.
        assert_relative_eq!((vs.q() - vs.m()).norm(), 18.0, max_relative = 1e-9);
        let h = p.height_from_rotation(rest).unwrap();
        assert_relative_eq!(vs.q().y, h);
        assert_relative_eq!(vs.center().y, h / 2.0);
    }

    #[test]
    fn chamber_volume_matches_frozen_values() {
        // Rest-state volumes computed independently by explicit pyramid
        // summation over the same triangulation.
        let via = ia().chamber_volume(ia().rest_rotation()).unwrap();
        assert_relative_eq!(via, 8457.395006210047, max_relative = 1e-9);
        let vib = ib().chamber_volume(ib().rest_rotation()).unwrap();
        assert_relative_eq!(vib, 19041.117818347946, max_relative = 1e-9);
    }

    #[test]
    fn untwisted_chamber_is_a_prism() {
        // theta_u = 0 gives a hexagonal prism of height b.
        let p = ib();
        let v = p.chamber_volume(Angle::ZERO).unwrap();
        let hexagon_area = 1.5 * 3.0_f64.sqrt() * p.a() * p.a();
        assert_relative_eq!(v, hexagon_area * p.b(), max_relative = 1e-12);
        assert_relative_eq!(v, 41569.219382, max_relative = 1e-9);
    }

    #[test]
    fn chamber_volume_vanishes_when_flat() {
        for p in [ia(), ib()] {
            let v = p.chamber_volume(p.theta_max()).unwrap();
            assert!(v.abs() < 1e-3, "flat-fold volume should vanish, got {v}");
        }
    }

    #[test]
    fn chamber_volume_positive_on_open_interval() {
        for p in [ia(), ib()] {
            let max = p.theta_max().radians();
            for i in 1..60 {
                let t = Angle::from_radians(max * i as f64 / 60.0 * 0.999);
                assert!(p.chamber_volume(t).unwrap() > 0.0);
            }
        }
    }

    #[test]
    fn fold_angles_match_frozen_rest_values() {
        let fa = ia().fold_angles(ia().rest_rotation()).unwrap();
        assert_abs_diff_eq!(fa.theta_qm.radians(), 1.0491626055394376, epsilon = 1e-12);
        assert_abs_diff_eq!(fa.theta_qr.radians(), 0.9121779894248998, epsilon = 1e-12);
        assert_abs_diff_eq!(fa.theta_rm.radians(), 1.4761601761245873, epsilon = 1e-12);
        let fb = ib().fold_angles(ib().rest_rotation()).unwrap();
        assert_abs_diff_eq!(fb.theta_qm.radians(), 0.6536848965923987, epsilon = 1e-12);
        assert_abs_diff_eq!(fb.theta_qr.radians(), 0.9643447247757091, epsilon = 1e-12);
        assert_abs_diff_eq!(fb.theta_rm.radians(), 1.4315948118548145, epsilon = 1e-12);
    }

    #[test]
    fn fold_angle_reaches_zero_at_coplanar_configuration() {
        // For the b/a = 2 pattern the Q–M fold angle touches zero near 120°
        // (the two panels pass through a coplanar arrangement) and the
        // formula stays continuous through it.
        let p = ib();
        let at = |deg: f64| p.fold_angles(Angle::from_degrees(deg)).unwrap();
        assert!(at(120.0).theta_qm.radians() < 1e-6);
        assert!(at(119.99).theta_qm.radians() < 1e-3);
        assert!(at(120.01).theta_qm.radians() < 1e-3);
    }

    #[test]
    fn fold_angle_trends_over_the_fold_branch() {
        // Between the rest rotation and full fold, theta_qr and theta_rm
        // decrease monotonically; theta_qm decreases until its coplanar
        // touch near 120°.
        let p = ib();
        let grid = |from: f64, to: f64, n: usize| {
            (0..=n).map(move |i| from + (to - from) * i as f64 / n as f64)
        };
        let mut prev = p.fold_angles(Angle::from_degrees(74.0)).unwrap();
        for deg in grid(74.5, 179.5, 210) {
            let fa = p.fold_angles(Angle::from_degrees(deg)).unwrap();
            assert!(fa.theta_qr < prev.theta_qr, "theta_qr must decrease at {deg}°");
            assert!(fa.theta_rm < prev.theta_rm, "theta_rm must decrease at {deg}°");
            if deg < 119.5 {
                assert!(fa.theta_qm < prev.theta_qm, "theta_qm must decrease at {deg}°");
            }
            prev = fa;
        }
    }

    #[test]
    fn volume_and_fold_angles_are_gauge_invariant() {
        let p = ib();
        let theta = Angle::from_degrees(95.0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let tris = p.surface_triangles(theta).unwrap();
        let vs = p.vertex_positions(theta).unwrap();
        let baseline_v = p.chamber_volume(theta).unwrap();
        let baseline_fa = p.fold_angles(theta).unwrap();
        let n = p.n_sides() as usize;
        for _ in 0..10 {
            let rot = Rotation3::from_axis_angle(
                &Vector3::y_axis(),
                rng.random_range(0.0..std::f64::consts::TAU),
            );
            let spun: Vec<Triangle> = tris
                .iter()
                .map(|t| [rot * t[0], rot * t[1], rot * t[2]])
                .collect();
            let g = Point3::new(0.0, vs.center().y, 0.0);
            assert_relative_eq!(signed_volume(&spun, &g), baseline_v, max_relative = 1e-9);
            let fa = fold_angles_from_labeled(
                rot * vs.m(),
                rot * vs.p(),
                rot * vs.q(),
                rot * vs.r(),
                rot * vs.bottom()[n - 1],
            )
            .unwrap();
            assert_abs_diff_eq!(
                fa.theta_qm.radians(),
                baseline_fa.theta_qm.radians(),
                epsilon = 1e-9
            );
            assert_abs_diff_eq!(
                fa.theta_qr.radians(),
                baseline_fa.theta_qr.radians(),
                epsilon = 1e-9
            );
            assert_abs_diff_eq!(
                fa.theta_rm.radians(),
                baseline_fa.theta_rm.radians(),
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn volume_reference_point_is_immaterial() {
        // The signed pyramid sum over a closed oriented surface does not
        // depend on the reference point.
        let p = ia();
        let theta = Angle::from_degrees(30.0);
        let tris = p.surface_triangles(theta).unwrap();
        let from_g = p.chamber_volume(theta).unwrap();
        let from_origin = signed_volume(&tris, &Point3::origin());
        let from_far = signed_volume(&tris, &Point3::new(100.0, -50.0, 7.0));
        assert_relative_eq!(from_origin, from_g, max_relative = 1e-9);
        assert_relative_eq!(from_far, from_g, max_relative = 1e-9);
    }
}
