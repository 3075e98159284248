//! Design-space sweep: how the rest rotation, folding margin, and rotation
//! limit move with the mold parameters (delta0, b/a).

use kresling::Angle;
use kresling::kinematics::{SweepQuantity, parametric_sweep};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let deltas: Vec<Angle> = (1..=8).map(|i| Angle::from_degrees(10.0 * i as f64)).collect();
    let ratios: Vec<f64> = (1..=4).map(|i| 0.5 * i as f64).collect();

    let theta_u = parametric_sweep(SweepQuantity::ThetaU, &deltas, &ratios, None)?;
    let theta_f = parametric_sweep(SweepQuantity::ThetaF, &deltas, &ratios, None)?;
    let theta_max = parametric_sweep(SweepQuantity::ThetaMax, &deltas, &ratios, None)?;

    println!("folding margin theta_f (deg); '-' marks an unbuildable combination");
    print!("{:>10}", "delta0");
    for ratio in theta_f.ratios() {
        print!("  b/a={ratio:<5.2}");
    }
    println!();
    for (i, delta) in theta_f.deltas().iter().enumerate() {
        print!("{:>9.0}°", delta.degrees());
        for j in 0..theta_f.ratios().len() {
            match theta_f.value(i, j) {
                Some(v) => print!("  {:>9.2}", v.degrees()),
                None => print!("  {:>9}", "-"),
            }
        }
        println!();
    }

    // The largest folding margin sits at steep delta0 and wide b/a: the
    // rest state unfolds little, leaving most of the limit available.
    let mut best = None;
    for (i, delta) in theta_f.deltas().iter().enumerate() {
        for (j, ratio) in theta_f.ratios().iter().enumerate() {
            if let Some(v) = theta_f.value(i, j) {
                let current = best.map(|(_, _, b): (f64, f64, Angle)| b.degrees());
                if current.is_none_or(|b| v.degrees() > b) {
                    best = Some((delta.degrees(), *ratio, v));
                }
            }
        }
    }
    let (delta, ratio, margin) = best.expect("grid has buildable cells");
    println!("\nwidest folding margin: {:.2}° at delta0 = {delta:.0}°, b/a = {ratio:.1}", margin.degrees());

    // Identity on the whole buildable grid: theta_u + theta_f = theta_max.
    for i in 0..theta_u.deltas().len() {
        for j in 0..theta_u.ratios().len() {
            if let (Some(u), Some(f), Some(m)) =
                (theta_u.value(i, j), theta_f.value(i, j), theta_max.value(i, j))
            {
                assert!((u + f - m).radians().abs() < 1e-12);
            }
        }
    }
    println!("checked: theta_u + theta_f = theta_max on every buildable cell");
    Ok(())
}
