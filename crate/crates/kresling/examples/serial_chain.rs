//! Serial-chain pose composition: how the handedness layout (type I, II,
//! III) turns one shared fold magnitude into different end-effector poses.

use kresling::angle::Angle;
use kresling::cli::config::ResolvedConfig;
use kresling::kinematics::{HeightModel, Pose, chain_partial_poses, chain_pose};
use kresling::quasistatics::equilibrium_rotation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ResolvedConfig::bundled();

    // One vacuum level drives every layout; each module folds by the same
    // magnitude, signed by its own handedness.
    let pressure = -5.0;
    println!("shared drive: {pressure} kPa");
    for name in ["ia", "ii", "iii"] {
        let spec = cfg.actuator(name)?.spec().clone();
        let magnitude = equilibrium_rotation(&spec, pressure)?;
        let thetas = spec.signed_rotations(magnitude)?;
        let (partials, warnings) = chain_partial_poses(&spec, &thetas, HeightModel::Exact)?;
        assert!(warnings.is_empty());

        let signs: String = thetas
            .iter()
            .map(|t| if t.radians() >= 0.0 { '+' } else { '-' })
            .collect();
        let end = partials.last().unwrap();
        println!(
            "  {name:<4} ({}) signs {signs}  net rotation {:>8.2} deg  length {:>6.2} mm",
            spec.type_label(),
            end.rotation().degrees(),
            end.translation()
        );

        // Cumulative rotation along the stack shows where each layout parks
        // its twist even when the ends agree.
        let profile: Vec<String> = partials
            .iter()
            .map(|p| format!("{:.1}", p.rotation().degrees()))
            .collect();
        println!("       cumulative rotation: {}", profile.join(", "));

        match name {
            "ia" => assert!(
                (end.rotation().degrees().abs()
                    - spec.module_count() as f64 * magnitude.degrees())
                .abs()
                    < 1e-9
            ),
            // Mirrored halves (II) and alternating modules (III) cancel.
            _ => assert!(end.rotation().degrees().abs() < 1e-9),
        }
    }

    // Poses compose like rigid transforms: the chain pose matrix equals the
    // ordered product of per-module matrices, and inverses round-trip.
    let spec = cfg.actuator("ia")?.spec().clone();
    let thetas = spec.signed_rotations(Angle::from_degrees(20.0))?;
    let (partials, _) = chain_partial_poses(&spec, &thetas, HeightModel::Exact)?;
    let end = *partials.last().unwrap();
    let mut product = Pose::identity().matrix();
    let mut step = Pose::identity();
    for (i, pose) in partials.iter().enumerate() {
        let module = step.inverse().then(pose);
        product *= module.matrix();
        step = *pose;
        assert!(
            (module.rotation().degrees() - thetas[i].degrees()).abs() < 1e-12,
            "partial poses decompose back into module rotations"
        );
    }
    let gap = (product - end.matrix()).abs().max();
    println!("\nmatrix product vs composed pose: max element gap {gap:.3e}");
    assert!(gap < 1e-12);
    let back = end.then(&end.inverse());
    assert!(back.rotation().radians().abs() < 1e-15 && back.translation().abs() < 1e-15);
    println!("free end of 8×20° type-i chain:\n{:.4}", end.matrix());

    // The linear height shortcut assumes a 60°-max geometry; on other molds
    // it still answers, but flags the mismatch.
    let ib = cfg.actuator("ib")?.spec().clone();
    let rest = ib.uniform_pattern()?.rest_rotation();
    let result = chain_pose(&ib, &ib.signed_rotations(rest)?, HeightModel::Linear)?;
    for w in &result.warnings {
        println!("warning: {w}");
    }
    assert!(!result.warnings.is_empty());
    Ok(())
}
