//! Yeoh hyperelastic fitting: recover coefficients from the bundled
//! uniaxial curves, then from noisy synthetic data.

use kresling::cli::config::ResolvedConfig;
use kresling::materials::{StressStrainCurve, YeohCoefficients, fit_yeoh, uniaxial_first_invariant};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ResolvedConfig::bundled();

    println!("{:<15} {:>13} {:>13} {:>13} {:>11}", "material", "C10_MPa", "C20_MPa", "C30_MPa", "residual");
    for name in ["ecoflex_00_30", "e615", "mixture"] {
        let curve = cfg.material_curve(name)?;
        let fit = fit_yeoh(&curve)?;
        let c = fit.coefficients;
        println!(
            "{name:<15} {:>13.6e} {:>13.6e} {:>13.6e} {:>11.3e}",
            c.c10(),
            c.c20(),
            c.c30(),
            fit.residual_norm
        );
    }

    // The fitted model is a strain-energy density; its uniaxial stress is
    // the derivative of the energy along the incompressible loading path.
    let curve = cfg.material_curve("e615")?;
    let c = fit_yeoh(&curve)?.coefficients;
    let lambda = 1.6;
    let h = 1e-6;
    let energy = |l: f64| c.energy_density(uniaxial_first_invariant(l));
    let gradient = (energy(lambda + h)? - energy(lambda - h)?) / (2.0 * h);
    let stress = c.uniaxial_nominal_stress(lambda)?;
    println!(
        "\nstress at λ={lambda}: closed form {stress:.6} MPa, energy gradient {gradient:.6} MPa"
    );
    assert!((stress - gradient).abs() < 1e-6 * stress.abs());

    // Re-fitting data synthesized from known coefficients round-trips even
    // under multiplicative noise.
    let truth = YeohCoefficients::new(0.0727207, 0.00527073, -7.73102e-5)?;
    let clean = StressStrainCurve::synthetic(&truth, 2.0, 60)?;
    let noisy: Vec<(f64, f64)> = clean
        .samples()
        .iter()
        .enumerate()
        .map(|(i, &(l, s))| {
            // Deterministic ±1% ripple stands in for measurement noise.
            let ripple = 0.01 * ((i as f64) * 2.399_963).sin();
            (l, s * (1.0 + ripple))
        })
        .collect();
    let refit = fit_yeoh(&StressStrainCurve::from_samples(noisy)?)?.coefficients;
    let c10_gap = (refit.c10() - truth.c10()).abs() / truth.c10();
    println!("refit after 1% ripple: C10 off by {:.2}%", 100.0 * c10_gap);
    assert!(c10_gap < 0.05);
    Ok(())
}
