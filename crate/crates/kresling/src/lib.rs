//! Modeling toolkit for Kresling-pattern pneumatic twisting actuators.
//!
//! A Kresling module is a cylindrical origami cell: two parallel regular
//! polygons joined by triangulated walls whose creases couple axial
//! compression to twist. This crate models such modules and serial stacks of
//! them:
//!
//! * [`geometry`] — exact truss model of one module: vertices, chamber
//!   volume, fold dihedral angles.
//! * [`kinematics`] — closed-form rotation limits, the skeleton-constrained
//!   variant, and serial-chain pose composition for Type I/II/III stacks.
//! * [`materials`] — Yeoh hyperelastic evaluation and least-squares fitting
//!   from uniaxial stress–strain data.
//! * [`quasistatics`] — crease elastic energy, virtual-work equilibrium
//!   pressure↔rotation maps, output torque, torsional rigidity, efficiency.
//! * [`cli`] — the `kresling` command-line front end (sweeps, curves,
//!   reports) over the same public API.
//!
//! Units: millimetres, kilopascals, microjoules (1 kPa·mm³ = 1 µJ), torque
//! in N·mm. Angles are radians internally and degrees at every interface;
//! see [`angle::Angle`].
//!
//! The `examples/` directory contains one runnable program per capability;
//! start there.

pub mod angle;
pub mod cli;
pub mod geometry;
pub mod kinematics;
pub mod materials;
pub mod numerics;
pub mod oracles;
pub mod quasistatics;

pub use angle::Angle;
pub use geometry::{FoldAngles, GeometryError, Handedness, ModulePattern, ModuleState};
pub use kinematics::{
    ActuatorSpec, HeightModel, KinematicsError, Pose, PoseResult, TypeLabel,
};
pub use materials::{
    FitReport, MaterialsError, StressStrainCurve, YeohCoefficients, fit_yeoh, read_curve_csv,
};
pub use quasistatics::{
    EnergyState, EquilibriumBranch, EquilibriumCurve, QuasistaticsError, crease_energy,
    default_branch, efficiency, equilibrium_pressure, equilibrium_rotation, output_torque,
    pressure_angle_curve, torque_vs_operating_length, torsional_rigidity,
};
