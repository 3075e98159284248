//! Closed-form summary of a single Kresling module: rotation limits, rest
//! configuration, and the 3D vertices that realize it.

use kresling::Angle;
use kresling::geometry::{Handedness, ModulePattern};
use kresling::kinematics::{folding_rotation, max_rotation, skeleton_max_rotation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let molds = [
        (
            "slender hexagonal cell (a=18, b=18, c=27.6, delta0=45°)",
            ModulePattern::new(18.0, 18.0, 27.6, Angle::from_degrees(45.0), 6, Handedness::Cw)?,
        ),
        (
            "wide hexagonal cell    (a=20, b=40, c=44.7, delta0=53°)",
            ModulePattern::new(20.0, 40.0, 44.7, Angle::from_degrees(53.0), 6, Handedness::Cw)?,
        ),
    ];

    for (label, pattern) in &molds {
        let theta_u0 = pattern.rest_rotation();
        let theta_f = folding_rotation(pattern.delta0(), pattern.ratio())?;
        let theta_max = max_rotation(pattern.ratio())?;

        println!("{label}");
        println!("  rest rotation   theta_u0 = {:7.2}°", theta_u0.degrees());
        println!("  folding margin  theta_f  = {:7.2}°", theta_f.degrees());
        println!("  rotation limit  theta_max= {:7.2}°", theta_max.degrees());
        println!("  rest height     h0       = {:7.2} mm", pattern.rest_height());
        println!(
            "  rest volume     V0       = {:9.2} mm³",
            pattern.chamber_volume(theta_u0)?
        );

        // A thin internal skeleton (t_s = 5% of b) trims the rotation limit.
        let theta_ts = skeleton_max_rotation(pattern.ratio(), 0.05, pattern.delta0())?;
        println!(
            "  with 5% skeleton         = {:7.2}° (was {:.2}°)",
            theta_ts.degrees(),
            theta_max.degrees()
        );

        // The rest rotation, folding margin and limit tile the fold range.
        assert!((theta_u0 + theta_f - theta_max).radians().abs() < 1e-12);

        // The vertex construction realizes the closed forms: every wall
        // crease between a bottom vertex and its top partner has length b.
        let vertices = pattern.vertex_positions(theta_u0)?;
        for (bottom, top) in vertices.bottom().iter().zip(vertices.top()) {
            let crease = (top - bottom).norm();
            assert!((crease - pattern.b()).abs() < 1e-9);
        }
        println!(
            "  vertex check: all {} wall creases measure b = {} mm\n",
            pattern.n_sides(),
            pattern.b()
        );
    }
    Ok(())
}
