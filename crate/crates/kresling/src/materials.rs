//! Yeoh hyperelastic model: evaluation and least-squares fitting.
//!
//! The strain-energy density is `W(I1) = Σ_{i=1..3} C_i0·(I1 − 3)^i` with
//! `I1 = λ1² + λ2² + λ3²`. The material is treated as exactly incompressible,
//! so a uniaxial stretch `λ` implies `λ2 = λ3 = λ^(−1/2)` and the nominal
//! (first Piola–Kirchhoff) stress along the pull is
//! `σ(λ) = 2·(λ − λ⁻²)·(C10 + 2·C20·(I1−3) + 3·C30·(I1−3)²)`,
//! which is what a uniaxial tensile machine reports against stretch.
//!
//! The model is linear in `(C10, C20, C30)`, so fitting measured
//! stress–stretch samples is an exactly solvable linear least-squares
//! problem; [`fit_yeoh`] solves it by SVD and reports the residual.
//!
//! Units: stresses and coefficients in MPa; stretches dimensionless.

use csv::Trim;
use serde::Deserialize;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MaterialsError {
    #[error("leading coefficient C10 must be positive, got {c10}")]
    NonPositiveC10 { c10: f64 },
    #[error("stretch ratio must be positive, got {stretch}")]
    NonPositiveStretch { stretch: f64 },
    #[error("first invariant I1 = {i1} is below 3, unreachable for real stretches")]
    InvariantBelowThree { i1: f64 },
    #[error("curve samples must have strictly increasing stretch; sample {index} does not")]
    NotMonotone { index: usize },
    #[error("curve must start at the undeformed state (λ = 1, stress ≈ 0); first sample is (λ = {lambda}, stress = {stress} MPa)")]
    BadStart { lambda: f64, stress: f64 },
    #[error("curve is empty")]
    Empty,
    #[error("fit needs at least 4 samples, got {n}")]
    TooFewSamples { n: usize },
    #[error("fit needs samples spanning stretches up to at least 1.5, got max λ = {max_lambda}")]
    InsufficientSpan { max_lambda: f64 },
    #[error("design matrix is rank-deficient (singular value ratio {ratio:.3e}); samples do not determine the coefficients")]
    RankDeficient { ratio: f64 },
    #[error("least-squares solve failed: {reason}")]
    SolveFailed { reason: &'static str },
    #[error("cannot read {path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },
    #[error("material data must have header `lambda,stress_mpa`, found `{found}`")]
    BadHeader { found: String },
}

/// The three material constants of the strain-energy function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YeohCoefficients {
    c10: f64,
    c20: f64,
    c30: f64,
}

impl YeohCoefficients {
    /// Validates `C10 > 0` (the leading stiffness must be positive; the
    /// higher-order constants may take either sign).
    pub fn new(c10: f64, c20: f64, c30: f64) -> Result<Self, MaterialsError> {
        if !(c10 > 0.0) || !c10.is_finite() {
            return Err(MaterialsError::NonPositiveC10 { c10 });
        }
        Ok(YeohCoefficients { c10, c20, c30 })
    }

    pub fn c10(&self) -> f64 {
        self.c10
    }

    pub fn c20(&self) -> f64 {
        self.c20
    }

    pub fn c30(&self) -> f64 {
        self.c30
    }

    /// Strain-energy density `W = Σ C_i0·(I1 − 3)^i` in MPa.
    pub fn energy_density(&self, i1: f64) -> Result<f64, MaterialsError> {
        // Tolerate roundoff just below the undeformed value.
        if i1 < 3.0 - 1e-12 {
            return Err(MaterialsError::InvariantBelowThree { i1 });
        }
        let x = (i1 - 3.0).max(0.0);
        Ok(((self.c30 * x + self.c20) * x + self.c10) * x)
    }

    /// Uniaxial nominal stress `σ(λ) = dW/dλ` along the incompressible
    /// uniaxial path, in MPa.
    pub fn uniaxial_nominal_stress(&self, lambda: f64) -> Result<f64, MaterialsError> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(MaterialsError::NonPositiveStretch { stretch: lambda });
        }
        let x = uniaxial_first_invariant(lambda) - 3.0;
        let dw_di1 = self.c10 + 2.0 * self.c20 * x + 3.0 * self.c30 * x * x;
        Ok(2.0 * (lambda - lambda.powi(-2)) * dw_di1)
    }
}

/// First invariant of the left Cauchy–Green tensor for the given principal
/// stretches: `I1 = λ1² + λ2² + λ3²`.
pub fn first_invariant(l1: f64, l2: f64, l3: f64) -> Result<f64, MaterialsError> {
    for stretch in [l1, l2, l3] {
        if !(stretch > 0.0) || !stretch.is_finite() {
            return Err(MaterialsError::NonPositiveStretch { stretch });
        }
    }
    Ok(l1 * l1 + l2 * l2 + l3 * l3)
}

/// `I1` along the incompressible uniaxial path: `λ² + 2/λ`.
pub fn uniaxial_first_invariant(lambda: f64) -> f64 {
    lambda * lambda + 2.0 / lambda
}

/// Ordered uniaxial tensile samples `(stretch λ, nominal stress MPa)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StressStrainCurve {
    samples: Vec<(f64, f64)>,
}

impl StressStrainCurve {
    /// Validates strictly increasing stretches starting from the undeformed
    /// state `(λ = 1, stress ≈ 0)`.
    pub fn from_samples(samples: Vec<(f64, f64)>) -> Result<Self, MaterialsError> {
        let Some(&(l0, s0)) = samples.first() else {
            return Err(MaterialsError::Empty);
        };
        if (l0 - 1.0).abs() > 1e-6 || s0.abs() > 1e-3 {
            return Err(MaterialsError::BadStart {
                lambda: l0,
                stress: s0,
            });
        }
        for (index, pair) in samples.windows(2).enumerate() {
            if !(pair[1].0 > pair[0].0) {
                return Err(MaterialsError::NotMonotone { index: index + 1 });
            }
        }
        Ok(StressStrainCurve { samples })
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Noise-free synthetic curve sampled from known coefficients on an
    /// evenly spaced stretch grid.
    pub fn synthetic(
        coeffs: &YeohCoefficients,
        lambda_max: f64,
        points: usize,
    ) -> Result<Self, MaterialsError> {
        if points < 2 || !(lambda_max > 1.0) {
            return Err(MaterialsError::TooFewSamples { n: points });
        }
        let mut samples = Vec::with_capacity(points);
        for i in 0..points {
            let lambda = 1.0 + (lambda_max - 1.0) * i as f64 / (points - 1) as f64;
            samples.push((lambda, coeffs.uniaxial_nominal_stress(lambda)?));
        }
        Self::from_samples(samples)
    }
}

/// Outcome of a least-squares fit.
#[derive(Debug, Clone)]
pub struct FitReport {
    pub coefficients: YeohCoefficients,
    /// Euclidean norm of the stress residuals, MPa.
    pub residual_norm: f64,
    /// Per-sample `model − measured` stress, MPa.
    pub per_point_errors: Vec<f64>,
}

/// Fits `(C10, C20, C30)` to a uniaxial stress–strain curve.
///
/// The model stress is linear in the coefficients, so this is a plain linear
/// least-squares problem, solved by SVD. Requires at least 4 samples
/// covering stretches up to 1.5.
pub fn fit_yeoh(curve: &StressStrainCurve) -> Result<FitReport, MaterialsError> {
    let n = curve.len();
    if n < 4 {
        return Err(MaterialsError::TooFewSamples { n });
    }
    let max_lambda = curve.samples()[n - 1].0;
    if max_lambda < 1.5 - 1e-9 {
        return Err(MaterialsError::InsufficientSpan { max_lambda });
    }

    let mut design = nalgebra::DMatrix::<f64>::zeros(n, 3);
    let mut rhs = nalgebra::DVector::<f64>::zeros(n);
    for (row, &(lambda, stress)) in curve.samples().iter().enumerate() {
        let factor = 2.0 * (lambda - lambda.powi(-2));
        let x = uniaxial_first_invariant(lambda) - 3.0;
        design[(row, 0)] = factor;
        design[(row, 1)] = factor * 2.0 * x;
        design[(row, 2)] = factor * 3.0 * x * x;
        rhs[row] = stress;
    }

    let svd = design.clone().svd(true, true);
    let s_max = svd.singular_values.max();
    let s_min = svd.singular_values.min();
    let ratio = if s_max > 0.0 { s_min / s_max } else { 0.0 };
    if ratio < 1e-12 {
        return Err(MaterialsError::RankDeficient { ratio });
    }
    let solution = svd
        .solve(&rhs, 0.0)
        .map_err(|reason| MaterialsError::SolveFailed { reason })?;
    let coefficients = YeohCoefficients::new(solution[0], solution[1], solution[2])?;

    let residual = &design * &solution - &rhs;
    Ok(FitReport {
        residual_norm: residual.norm(),
        per_point_errors: residual.iter().copied().collect(),
        coefficients,
    })
}

#[derive(Debug, Deserialize)]
struct CurveRow {
    lambda: f64,
    stress_mpa: f64,
}

/// Reads a two-column delimited curve with header `lambda,stress_mpa`.
pub fn read_curve_csv(path: &Path) -> Result<StressStrainCurve, MaterialsError> {
    let display = path.display().to_string();
    let file = std::fs::File::open(path).map_err(|source| MaterialsError::Csv {
        path: display.clone(),
        source: csv::Error::from(source),
    })?;
    read_curve_from(file, &display)
}

/// Reads a curve with header `lambda,stress_mpa` from any reader; `label`
/// names the source in errors.
pub fn read_curve_from(
    reader: impl std::io::Read,
    label: &str,
) -> Result<StressStrainCurve, MaterialsError> {
    let mut reader = csv::ReaderBuilder::new().trim(Trim::All).from_reader(reader);
    {
        let headers = reader.headers().map_err(|source| MaterialsError::Csv {
            path: label.to_owned(),
            source,
        })?;
        let found: Vec<&str> = headers.iter().collect();
        if found != ["lambda", "stress_mpa"] {
            return Err(MaterialsError::BadHeader {
                found: found.join(","),
            });
        }
    }
    let mut samples = Vec::new();
    for row in reader.deserialize::<CurveRow>() {
        let row = row.map_err(|source| MaterialsError::Csv {
            path: label.to_owned(),
            source,
        })?;
        samples.push((row.lambda, row.stress_mpa));
    }
    StressStrainCurve::from_samples(samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn ecoflex() -> YeohCoefficients {
        YeohCoefficients::new(0.00364188, 0.000573251, -3.93058e-6).unwrap()
    }

    pub(crate) fn e615() -> YeohCoefficients {
        YeohCoefficients::new(0.0727207, 0.00527073, -7.73102e-5).unwrap()
    }

    pub(crate) fn mixture() -> YeohCoefficients {
        YeohCoefficients::new(0.0683405, 0.00958809, -0.000363852).unwrap()
    }

    #[test]
    fn first_invariant_basics() {
        assert_eq!(first_invariant(1.0, 1.0, 1.0).unwrap(), 3.0);
        // Uniaxial incompressible at λ = 2: 4 + 1/2 + 1/2 = 5.
        let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
        assert_relative_eq!(
            first_invariant(2.0, inv_sqrt2, inv_sqrt2).unwrap(),
            5.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(uniaxial_first_invariant(2.0), 5.0, max_relative = 1e-15);
        assert!(first_invariant(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn first_invariant_matches_re_summation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let (l1, l2, l3) = (
                rng.random_range(0.2..3.0),
                rng.random_range(0.2..3.0),
                rng.random_range(0.2..3.0),
            );
            let direct = first_invariant(l1, l2, l3).unwrap();
            let re_summed: f64 = [l1, l2, l3].iter().map(|l| l.powi(2)).sum();
            assert_relative_eq!(direct, re_summed, max_relative = 1e-15);
        }
    }

    #[test]
    fn energy_density_values() {
        let m = e615();
        assert_eq!(m.energy_density(3.0).unwrap(), 0.0);
        // At I1 = 4 every power term is its coefficient.
        let w = m.energy_density(4.0).unwrap();
        assert_relative_eq!(w, 0.0727207 + 0.00527073 - 7.73102e-5, max_relative = 1e-12);
        assert_abs_diff_eq!(w, 0.0779, epsilon = 5e-5);
        assert!(m.energy_density(2.9).is_err());
        // Term-by-term re-summation at I1 = 3.5.
        let eco = ecoflex();
        let x: f64 = 0.5;
        let by_terms = eco.c10() * x + eco.c20() * x.powi(2) + eco.c30() * x.powi(3);
        assert_relative_eq!(eco.energy_density(3.5).unwrap(), by_terms, max_relative = 1e-15);
    }

    #[test]
    fn stress_vanishes_undeformed_and_rejects_bad_stretch() {
        for m in [ecoflex(), e615(), mixture()] {
            assert_eq!(m.uniaxial_nominal_stress(1.0).unwrap(), 0.0);
            assert!(m.uniaxial_nominal_stress(0.0).is_err());
            assert!(m.uniaxial_nominal_stress(-1.0).is_err());
        }
    }

    #[test]
    fn stress_matches_energy_gradient() {
        // σ(λ) must equal dW/dλ along the incompressible uniaxial path;
        // checked by central finite differences with step 1e-6.
        let h = 1e-6;
        for m in [ecoflex(), e615(), mixture()] {
            let w = |lambda: f64| m.energy_density(uniaxial_first_invariant(lambda)).unwrap();
            let mut lambda = 1.01;
            while lambda <= 2.0 {
                let fd = (w(lambda + h) - w(lambda - h)) / (2.0 * h);
                let sigma = m.uniaxial_nominal_stress(lambda).unwrap();
                assert_relative_eq!(sigma, fd, max_relative = 1e-6);
                lambda += 0.01;
            }
        }
    }

    #[test]
    fn mixture_curve_is_nearly_linear() {
        // Straight-line regression of the mixture's stress–stretch curve
        // over λ ∈ [1, 2] explains more than 98% of the variance.
        let m = mixture();
        let samples: Vec<(f64, f64)> = (0..=100)
            .map(|i| {
                let l = 1.0 + i as f64 / 100.0;
                (l, m.uniaxial_nominal_stress(l).unwrap())
            })
            .collect();
        let n = samples.len() as f64;
        let mean_x = samples.iter().map(|s| s.0).sum::<f64>() / n;
        let mean_y = samples.iter().map(|s| s.1).sum::<f64>() / n;
        let sxy: f64 = samples.iter().map(|s| (s.0 - mean_x) * (s.1 - mean_y)).sum();
        let sxx: f64 = samples.iter().map(|s| (s.0 - mean_x).powi(2)).sum();
        let syy: f64 = samples.iter().map(|s| (s.1 - mean_y).powi(2)).sum();
        let r2 = sxy * sxy / (sxx * syy);
        assert!(r2 > 0.98, "R² = {r2}");
    }

    #[test]
    fn curve_validation() {
        assert!(matches!(
            StressStrainCurve::from_samples(vec![]),
            Err(MaterialsError::Empty)
        ));
        assert!(matches!(
            StressStrainCurve::from_samples(vec![(1.2, 0.0), (1.4, 0.1)]),
            Err(MaterialsError::BadStart { .. })
        ));
        assert!(matches!(
            StressStrainCurve::from_samples(vec![(1.0, 0.0), (1.5, 0.1), (1.5, 0.2)]),
            Err(MaterialsError::NotMonotone { index: 2 })
        ));
    }

    #[test]
    fn fit_recovers_noise_free_coefficients() {
        for truth in [ecoflex(), e615(), mixture()] {
            let curve = StressStrainCurve::synthetic(&truth, 2.0, 50).unwrap();
            let fit = fit_yeoh(&curve).unwrap();
            let got = fit.coefficients;
            assert_relative_eq!(got.c10(), truth.c10(), max_relative = 1e-8);
            assert_relative_eq!(got.c20(), truth.c20(), max_relative = 1e-8);
            assert_relative_eq!(got.c30(), truth.c30(), max_relative = 1e-8);
            assert!(fit.residual_norm < 1e-12);
            assert!(fit.per_point_errors.iter().all(|e| e.abs() < 1e-12));
        }
    }

    #[test]
    fn fit_tolerates_multiplicative_noise() {
        let truth = e615();
        let clean = StressStrainCurve::synthetic(&truth, 2.0, 50).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let noisy: Vec<(f64, f64)> = clean
            .samples()
            .iter()
            .map(|&(l, s)| (l, s * (1.0 + 0.01 * rng.random_range(-1.0..1.0))))
            .collect();
        let fit = fit_yeoh(&StressStrainCurve::from_samples(noisy).unwrap()).unwrap();
        assert_relative_eq!(fit.coefficients.c10(), truth.c10(), max_relative = 0.05);
    }

    #[test]
    fn fit_preconditions() {
        let m = e615();
        let short = StressStrainCurve::synthetic(&m, 2.0, 3).unwrap();
        assert!(matches!(
            fit_yeoh(&short),
            Err(MaterialsError::TooFewSamples { n: 3 })
        ));
        let narrow = StressStrainCurve::synthetic(&m, 1.2, 10).unwrap();
        assert!(matches!(
            fit_yeoh(&narrow),
            Err(MaterialsError::InsufficientSpan { .. })
        ));
        // A degenerate constant-stress "curve" cannot even be constructed:
        // repeated stretches violate monotonicity.
        assert!(StressStrainCurve::from_samples(vec![(1.0, 0.0); 5]).is_err());
    }

    #[test]
    fn three_term_fit_never_beats_two_terms_backwards() {
        // Adding the cubic term cannot increase the least-squares residual.
        let truth = mixture();
        let clean = StressStrainCurve::synthetic(&truth, 2.0, 30).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let noisy: Vec<(f64, f64)> = clean
            .samples()
            .iter()
            .map(|&(l, s)| (l, s * (1.0 + 0.02 * rng.random_range(-1.0..1.0))))
            .collect();
        let curve = StressStrainCurve::from_samples(noisy).unwrap();
        let three = fit_yeoh(&curve).unwrap();

        // Two-term fit: same design without the cubic column.
        let n = curve.len();
        let mut design = nalgebra::DMatrix::<f64>::zeros(n, 2);
        let mut rhs = nalgebra::DVector::<f64>::zeros(n);
        for (row, &(lambda, stress)) in curve.samples().iter().enumerate() {
            let factor = 2.0 * (lambda - lambda.powi(-2));
            let x = uniaxial_first_invariant(lambda) - 3.0;
            design[(row, 0)] = factor;
            design[(row, 1)] = factor * 2.0 * x;
            rhs[row] = stress;
        }
        let svd = design.clone().svd(true, true);
        let sol = svd.solve(&rhs, 0.0).unwrap();
        let two_residual = (&design * &sol - &rhs).norm();
        assert!(three.residual_norm <= two_residual + 1e-12);
    }

    #[test]
    fn csv_round_trip(){
        use std::io::Write;
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("curve.csv");
        let truth = ecoflex();
        let curve = StressStrainCurve::synthetic(&truth, 2.0, 20).unwrap();
        let mut file = std::fs::File::create(&path).unwrap();
        writeln!(file, "lambda,stress_mpa").unwrap();
        for (l, s) in curve.samples() {
            writeln!(file, "{l},{s}").unwrap();
        }
        drop(file);
        let read = read_curve_csv(&path).unwrap();
        assert_eq!(read, curve);

        let bad = dir.path().join("bad.csv");
        std::fs::write(&bad, "stretch,stress\n1.0,0.0\n").unwrap();
        assert!(matches!(
            read_curve_csv(&bad),
            Err(MaterialsError::BadHeader { .. })
        ));
    }
}
