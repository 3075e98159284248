//! Quasi-static equilibrium: the zero-load pressure–rotation curve of a
//! four-module stack, its invertible default branch, and the sign
//! convention (vacuum folds, pressure unfolds).

use kresling::Angle;
use kresling::geometry::{Handedness, ModulePattern};
use kresling::kinematics::{ActuatorSpec, TypeLabel};
use kresling::quasistatics::{
    default_branch, equilibrium_pressure, equilibrium_rotation, pressure_angle_curve,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pattern = ModulePattern::new(20.0, 40.0, 44.7, Angle::from_degrees(53.0), 6, Handedness::Cw)?;
    let spec = ActuatorSpec::uniform(&pattern, 4, TypeLabel::TypeI, 0.0, 2.0, 0.25)?;
    let rest = pattern.rest_rotation();

    let branch = default_branch(&spec)?;
    let (p_min, p_max) = branch.pressure_range();
    println!(
        "default branch: theta_u in [{:.2}°, {:.2}°], pressures [{p_min:.2}, {p_max:.2}] kPa",
        branch.lo().degrees(),
        branch.hi().degrees()
    );
    println!("rest angle {:.2}° balances p = {:+.6} kPa\n", rest.degrees(), equilibrium_pressure(&spec, rest)?);

    let pressures: Vec<f64> = (0..=10).map(|i| -45.0 + 5.0 * i as f64).collect();
    let curve = pressure_angle_curve(&spec, &pressures)?;
    println!("{:>10} {:>10} {:>12}", "p_kPa", "theta_u", "volume_mm3");
    for sample in curve.samples() {
        match sample.solution {
            Some(point) => println!(
                "{:>10.1} {:>9.2}° {:>12.1}",
                sample.pressure_kpa,
                point.theta_u.degrees(),
                point.volume_mm3
            ),
            None => println!("{:>10.1} {:>10} {:>12}", sample.pressure_kpa, "-", "-"),
        }
    }

    // Sign convention: a vacuum (negative differential pressure) folds the
    // stack, twisting past the rest angle; positive pressure unfolds it.
    let under_vacuum = equilibrium_rotation(&spec, -20.0)?;
    let under_pressure = equilibrium_rotation(&spec, 3.0)?;
    assert!(under_vacuum.radians() > rest.radians());
    assert!(under_pressure.radians() < rest.radians());
    println!(
        "\n-20 kPa folds to {:.2}°; +3 kPa unfolds to {:.2}° (rest {:.2}°)",
        under_vacuum.degrees(),
        under_pressure.degrees(),
        rest.degrees()
    );

    // The map is involutive on the branch: p -> theta -> p returns home.
    let p = equilibrium_pressure(&spec, under_vacuum)?;
    assert!((p + 20.0).abs() < 1e-6);
    println!("round trip through the curve reproduces the pressure to {:.1e} kPa", (p + 20.0).abs());
    Ok(())
}
