//! Survey of published twisting actuators: rotation per unit aspect ratio,
//! recomputed from the bundled comparison table.

use kresling::cli::config::ResolvedConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ResolvedConfig::bundled();
    let mut rows = cfg.comparison_rows()?;

    // Rank by rotation normalised against slenderness: tall, skinny devices
    // twist a lot in absolute terms, so degrees alone overstate them.
    rows.sort_by(|x, y| y.rotation_ratio_deg().total_cmp(&x.rotation_ratio_deg()));

    println!(
        "{:<15} {:>12} {:>8} {:>14} {:>12}",
        "design", "rotation", "aspect", "Δp (kPa)", "deg per AR"
    );
    for row in &rows {
        let rot = format!("{}{:.0}", qual_mark(&row.rotation_qualifier), row.rotation_deg);
        let asp = format!("{}{:.2}", qual_mark(&row.aspect_qualifier), row.aspect_ratio);
        let dp = match row.pressure_change_kpa {
            Some(p) => format!("{}{:.0}", qual_mark(&row.pressure_qualifier), p),
            None => "-".to_string(),
        };
        println!(
            "{:<15} {rot:>12} {asp:>8} {dp:>14} {:>12.1}",
            row.name,
            row.rotation_ratio_deg()
        );
    }

    let best = &rows[0];
    println!(
        "\nhighest rotation per aspect ratio: {} at {:.1} deg",
        best.name,
        best.rotation_ratio_deg()
    );
    assert_eq!(best.name, "Kresling OSPA");
    for row in &rows[1..] {
        assert!(best.rotation_ratio_deg() > row.rotation_ratio_deg());
    }

    // The leader also runs near the bottom of the pressure range — large
    // twist does not require large drive.
    let best_dp = best.pressure_change_kpa.unwrap().abs();
    let smaller = rows[1..]
        .iter()
        .filter_map(|r| r.pressure_change_kpa)
        .filter(|p| p.abs() < best_dp)
        .count();
    println!(
        "its pressure change: {best_dp:.0} kPa; only {smaller} other design reports less"
    );
    assert!(smaller <= 1);
    Ok(())
}

fn qual_mark(qualifier: &str) -> &'static str {
    match qualifier {
        "approx" => "~",
        "min" => ">",
        _ => "",
    }
}
