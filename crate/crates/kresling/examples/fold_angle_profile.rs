//! Fold (dihedral) angles of the three crease families across the fold
//! range, and the crease energy they store away from the as-molded state.

use kresling::Angle;
use kresling::geometry::{Handedness, ModulePattern};
use kresling::quasistatics::crease_energy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pattern = ModulePattern::new(20.0, 40.0, 44.7, Angle::from_degrees(53.0), 6, Handedness::Cw)?;
    let (k_c1, k_c2) = (2.0, 0.25);
    let rest = pattern.rest_rotation();
    let rest_folds = pattern.fold_angles(rest)?;

    println!(
        "as-molded fold angles at theta_u0 = {:.2}°: QM {:.2}°, QR {:.2}°, RM {:.2}°",
        rest.degrees(),
        rest_folds.theta_qm.degrees(),
        rest_folds.theta_qr.degrees(),
        rest_folds.theta_rm.degrees()
    );
    println!(
        "\n{:>9} {:>9} {:>9} {:>9} {:>14}",
        "theta_u", "QM_deg", "QR_deg", "RM_deg", "energy_uJ"
    );
    for step in 0..=12 {
        let theta = Angle::from_degrees(15.0 * step as f64 * 0.99 + 1.0);
        if theta.radians() >= pattern.theta_max().radians() {
            break;
        }
        let folds = pattern.fold_angles(theta)?;
        let energy = crease_energy(&pattern, k_c1, k_c2, theta)?;
        println!(
            "{:>8.2}° {:>9.2} {:>9.2} {:>9.2} {:>14.1}",
            theta.degrees(),
            folds.theta_qm.degrees(),
            folds.theta_qr.degrees(),
            folds.theta_rm.degrees(),
            energy
        );
    }

    // The mold defines the stress-free shape: stored energy vanishes at the
    // rest rotation and grows in both directions away from it.
    let at_rest = crease_energy(&pattern, k_c1, k_c2, rest)?;
    let folded = crease_energy(&pattern, k_c1, k_c2, rest + Angle::from_degrees(10.0))?;
    let unfolded = crease_energy(&pattern, k_c1, k_c2, rest - Angle::from_degrees(10.0))?;
    println!("\nenergy at rest {at_rest:.3} µJ; +10° stores {folded:.1} µJ; -10° stores {unfolded:.1} µJ");
    assert!(at_rest.abs() < 1e-9);
    assert!(folded > 0.0 && unfolded > 0.0);
    Ok(())
}
