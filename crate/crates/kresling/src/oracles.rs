//! Independent verification oracles.
//!
//! Everything here re-derives a production quantity through a *different*
//! algorithm: chamber volume via an origin-referenced divergence sum and via
//! winding-number Monte-Carlo ray casting, plus a suite of cross-module
//! identity checks ([`run_all`]) behind the `check` subcommand. All sampling
//! is seeded, so every report is reproducible bit for bit.

use crate::angle::Angle;
use crate::geometry::{GeometryError, Handedness, ModulePattern, Triangle};
use crate::kinematics::{self, ActuatorSpec, TypeLabel};
use crate::materials::{StressStrainCurve, fit_yeoh};
use crate::numerics::{self, DerivOptions};
use crate::quasistatics;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Enclosed volume by the divergence theorem about the origin:
/// `V = Σ (v0 · (v1 × v2))/6` over the oriented boundary triangles.
/// Deliberately written in raw component arithmetic, and referenced to the
/// origin rather than the chamber center, so it shares no code with the
/// production pyramid decomposition.
pub fn divergence_volume(tris: &[Triangle]) -> f64 {
    let mut six_v = 0.0;
    for t in tris {
        let (x0, y0, z0) = (t[0].x, t[0].y, t[0].z);
        let (x1, y1, z1) = (t[1].x, t[1].y, t[1].z);
        let (x2, y2, z2) = (t[2].x, t[2].y, t[2].z);
        six_v += x0 * (y1 * z2 - z1 * y2) - y0 * (x1 * z2 - z1 * x2)
            + z0 * (x1 * y2 - y1 * x2);
    }
    six_v / 6.0
}

/// Monte-Carlo estimate of a signed enclosed volume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McVolume {
    pub estimate_mm3: f64,
    /// One standard error of the estimate.
    pub std_error_mm3: f64,
    pub samples: u64,
}

/// Per-triangle constants for rays in the fixed `+x` direction.
struct RayTriangle {
    v0: [f64; 3],
    e1: [f64; 3],
    e2: [f64; 3],
    inv_det: f64,
    /// +1 where the ray exits (normal has positive x), −1 where it enters.
    sign: i64,
    y_min: f64,
    y_max: f64,
    z_min: f64,
    z_max: f64,
}

/// Signed chamber volume by winding numbers: uniform points in the bounding
/// box, each assigned the signed count of `+x`-ray crossings through the
/// oriented boundary. Unlike inside/outside tests this remains correct when
/// a deeply folded wall self-intersects — the estimate converges to the same
/// signed volume the triangulation sums to.
pub fn monte_carlo_volume(
    pattern: &ModulePattern,
    theta_u: Angle,
    samples: u64,
    seed: u64,
) -> Result<McVolume, GeometryError> {
    let tris = pattern.surface_triangles(theta_u)?;
    let h = pattern.height_from_rotation(theta_u)?;
    let a = pattern.a();

    let ray_tris: Vec<RayTriangle> = tris
        .iter()
        .filter_map(|t| {
            let v0 = [t[0].x, t[0].y, t[0].z];
            let e1 = [t[1].x - t[0].x, t[1].y - t[0].y, t[1].z - t[0].z];
            let e2 = [t[2].x - t[0].x, t[2].y - t[0].y, t[2].z - t[0].z];
            // det = −n_x; triangles parallel to the ray (the horizontal
            // polygon caps, or walls seen exactly edge-on) never produce a
            // transversal crossing and are skipped.
            let det = e1[2] * e2[1] - e1[1] * e2[2];
            if det.abs() < 1e-12 {
                return None;
            }
            let ys = [t[0].y, t[1].y, t[2].y];
            let zs = [t[0].z, t[1].z, t[2].z];
            Some(RayTriangle {
                v0,
                e1,
                e2,
                inv_det: 1.0 / det,
                sign: if det < 0.0 { 1 } else { -1 },
                y_min: ys.iter().copied().fold(f64::INFINITY, f64::min),
                y_max: ys.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                z_min: zs.iter().copied().fold(f64::INFINITY, f64::min),
                z_max: zs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            })
        })
        .collect();

    // All vertices sit on radius-a rings at heights 0 and h, so the chamber
    // lies inside this box.
    let box_volume = (2.0 * a) * (2.0 * a) * h;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum_w: i64 = 0;
    let mut sum_w2: i64 = 0;
    for _ in 0..samples {
        let px = rng.random_range(-a..a);
        let py = rng.random_range(0.0..h);
        let pz = rng.random_range(-a..a);
        let mut winding: i64 = 0;
        for rt in &ray_tris {
            if py < rt.y_min || py > rt.y_max || pz < rt.z_min || pz > rt.z_max {
                continue;
            }
            // Möller–Trumbore specialized to direction (1, 0, 0):
            // pvec = (0, −e2_z, e2_y).
            let tv = [px - rt.v0[0], py - rt.v0[1], pz - rt.v0[2]];
            let u = (tv[2] * rt.e2[1] - tv[1] * rt.e2[2]) * rt.inv_det;
            if !(0.0..=1.0).contains(&u) {
                continue;
            }
            // qvec = tvec × e1; v = qvec_x/det, t = (e2 · qvec)/det.
            let q = [
                tv[1] * rt.e1[2] - tv[2] * rt.e1[1],
                tv[2] * rt.e1[0] - tv[0] * rt.e1[2],
                tv[0] * rt.e1[1] - tv[1] * rt.e1[0],
            ];
            let v = q[0] * rt.inv_det;
            if v < 0.0 || u + v > 1.0 {
                continue;
            }
            let t_hit = (rt.e2[0] * q[0] + rt.e2[1] * q[1] + rt.e2[2] * q[2]) * rt.inv_det;
            if t_hit > 0.0 {
                winding += rt.sign;
            }
        }
        sum_w += winding;
        sum_w2 += winding * winding;
    }

    let n = samples as f64;
    let mean = sum_w as f64 / n;
    let variance = (sum_w2 as f64 / n - mean * mean).max(0.0);
    Ok(McVolume {
        estimate_mm3: box_volume * mean,
        std_error_mm3: box_volume * (variance / n).sqrt(),
        samples,
    })
}

/// Seeded random `(pattern, θ_u)` instances spanning the valid design space:
/// 4–8 sides, b/a ∈ [0.5, 2), δ0 ∈ [20°, 85°), θ_u ∈ [0.02, 0.98]·θ_max.
pub fn random_instances(count: usize, seed: u64) -> Vec<(ModulePattern, Angle)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n_sides = rng.random_range(4..=8u32);
            let a = rng.random_range(5.0..30.0);
            let b = a * rng.random_range(0.5..2.0);
            let delta0 = Angle::from_degrees(rng.random_range(20.0..85.0));
            let pattern =
                ModulePattern::new(a, b, b, delta0, n_sides, Handedness::Cw).expect("valid draw");
            let theta_u = pattern.theta_max() * rng.random_range(0.02..0.98);
            (pattern, theta_u)
        })
        .collect()
}

/// Outcome of one oracle check.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn report(name: &'static str, passed: bool, detail: String) -> OracleReport {
    OracleReport {
        name,
        passed,
        detail,
    }
}

fn reference_spec() -> ActuatorSpec {
    let pattern = ModulePattern::new(
        20.0,
        40.0,
        44.7,
        Angle::from_degrees(53.0),
        6,
        Handedness::Cw,
    )
    .unwrap();
    ActuatorSpec::uniform(&pattern, 4, TypeLabel::TypeI, 0.0, 2.0, 0.25).unwrap()
}

/// Runs the cross-module identity suite; `heavy` adds the 20-instance
/// Monte-Carlo volume gauntlet (10⁷ rays per instance). Deterministic:
/// fixed seeds throughout.
pub fn run_all(heavy: bool) -> Vec<OracleReport> {
    let mut out = Vec::new();

    // Pyramid decomposition vs. origin-referenced divergence sum.
    let instances = random_instances(100, 11);
    let mut worst = 0.0_f64;
    for (pattern, theta) in &instances {
        let v = pattern.chamber_volume(*theta).unwrap();
        let d = divergence_volume(&pattern.surface_triangles(*theta).unwrap());
        worst = worst.max((v - d).abs() / d.abs().max(1.0));
    }
    out.push(report(
        "volume-identity",
        worst < 1e-9,
        format!("max relative gap {worst:.3e} over {} instances", instances.len()),
    ));

    // Rigid b-crease: (2a·sin(θ_u/2))² + h² = b².
    let mut worst = 0.0_f64;
    for (pattern, theta) in &instances {
        let h = pattern.height_from_rotation(*theta).unwrap();
        let chord = 2.0 * pattern.a() * (theta.radians() / 2.0).sin();
        let lhs = chord * chord + h * h;
        let b2 = pattern.b() * pattern.b();
        worst = worst.max((lhs - b2).abs() / b2);
    }
    out.push(report(
        "crease-preservation",
        worst < 1e-9,
        format!("max relative gap {worst:.3e}"),
    ));

    // Unfold + fold rotations assemble the full range.
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let delta = Angle::from_degrees(rng.random_range(5.0..89.0));
        let ratio = rng.random_range(0.2..2.0);
        let total = kinematics::unfold_rotation(delta, ratio).unwrap()
            + kinematics::folding_rotation(delta, ratio).unwrap();
        let max = kinematics::max_rotation(ratio).unwrap();
        worst = worst.max((total - max).radians().abs());
    }
    out.push(report(
        "rotation-decomposition",
        worst < 1e-12,
        format!("max |θ_u + θ_f − θ_max| = {worst:.3e} rad"),
    ));

    // Step-halving agreement of the quasi-static derivatives, away from the
    // fold-angle kinks.
    let spec = reference_spec();
    let pattern = spec.modules()[0].clone();
    let mut worst = 0.0_f64;
    let mut all_ok = true;
    for deg in [76.0, 80.0, 85.0, 90.0, 95.0, 100.0, 105.0, 110.0] {
        let theta = Angle::from_degrees(deg).radians();
        let domain = (-pattern.theta_max().radians(), pattern.theta_max().radians());
        for f in [
            Box::new(|t: f64| pattern.chamber_volume(Angle::from_radians(t.abs())).ok())
                as Box<dyn Fn(f64) -> Option<f64>>,
            Box::new(|t: f64| {
                quasistatics::crease_energy(&pattern, 2.0, 0.25, Angle::from_radians(t.abs()))
                    .ok()
            }),
        ] {
            match numerics::derivative(f, theta, domain, DerivOptions::default()) {
                Ok(d) => worst = worst.max(d.spread),
                Err(_) => all_ok = false,
            }
        }
    }
    out.push(report(
        "derivative-agreement",
        all_ok && worst < 1e-6,
        format!("max h vs h/2 spread {worst:.3e}"),
    ));

    // Torque residual on the equilibrium curve.
    let curve = quasistatics::pressure_angle_curve(&spec, &[-30.0, -20.0, -10.0, -5.0, 0.0]);
    let (passed, detail) = match curve {
        Ok(curve) => {
            let worst = curve
                .samples()
                .iter()
                .filter_map(|s| s.solution.map(|p| p.torque_residual_nmm.abs()))
                .fold(0.0_f64, f64::max);
            (worst < 1e-9, format!("max |τ| at equilibrium {worst:.3e} N·mm"))
        }
        Err(e) => (false, format!("curve failed: {e}")),
    };
    out.push(report("equilibrium-residual", passed, detail));

    // Fitting model-generated data returns the generator, and refitting the
    // fit's own curve changes nothing.
    let truth = crate::materials::YeohCoefficients::new(0.0727207, 0.00527073, -7.73102e-5)
        .unwrap();
    let first = fit_yeoh(&StressStrainCurve::synthetic(&truth, 2.0, 40).unwrap()).unwrap();
    let again = fit_yeoh(
        &StressStrainCurve::synthetic(&first.coefficients, 2.0, 40).unwrap(),
    )
    .unwrap();
    let rel = |x: f64, y: f64| (x - y).abs() / y.abs();
    let recover = rel(first.coefficients.c10(), truth.c10())
        .max(rel(first.coefficients.c20(), truth.c20()))
        .max(rel(first.coefficients.c30(), truth.c30()));
    let stable = rel(again.coefficients.c10(), first.coefficients.c10())
        .max(rel(again.coefficients.c20(), first.coefficients.c20()))
        .max(rel(again.coefficients.c30(), first.coefficients.c30()));
    out.push(report(
        "fit-idempotence",
        recover < 1e-8 && stable < 1e-10,
        format!("recovery {recover:.3e}, refit drift {stable:.3e}"),
    ));

    if heavy {
        let gauntlet = random_instances(20, 2024);
        let mut worst = 0.0_f64;
        let mut detail_at = 0usize;
        for (index, (pattern, theta)) in gauntlet.iter().enumerate() {
            let v = pattern.chamber_volume(*theta).unwrap();
            let mc = monte_carlo_volume(pattern, *theta, 10_000_000, 7 + index as u64).unwrap();
            let rel = (mc.estimate_mm3 - v).abs() / v.abs();
            if rel > worst {
                worst = rel;
                detail_at = index;
            }
        }
        out.push(report(
            "volume-monte-carlo",
            worst < 0.01,
            format!("worst relative gap {worst:.3e} (instance {detail_at}; 1e7 rays each)"),
        ));
    }

    out
}
