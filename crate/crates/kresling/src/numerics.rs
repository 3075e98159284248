//! Numerical differentiation and root bracketing for 1-D scalar functions.
//!
//! Differentiation uses a five-point central stencil with an adaptive step:
//! the step is clamped to the stated domain and walked down a halving
//! ladder; each adjacent pair of estimates is scored by its disagreement,
//! and the returned value is the Richardson extrapolation of the pair at
//! the bottom of the truncation-vs-roundoff valley (the smallest
//! disagreement). Functions are passed as `Fn(f64) -> Option<f64>` so a
//! caller can mark out-of-domain points with `None` instead of inventing
//! values there.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("function not evaluable in a neighborhood of x = {x}")]
    Evaluation { x: f64 },
    #[error(
        "derivative estimates at x = {x} do not stabilize (relative spread {spread:.3e} after step refinement); the function may be non-smooth here"
    )]
    NotSmooth { x: f64, spread: f64 },
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo:.6e}, f(hi) = {f_hi:.6e}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
}

/// A verified derivative estimate.
#[derive(Debug, Clone, Copy)]
pub struct Derivative {
    /// Richardson extrapolation of the best-agreeing stencil pair.
    pub value: f64,
    /// Coarser of the two step sizes of that pair.
    pub step: f64,
    /// Relative disagreement between the pair's `h` and `h/2` estimates.
    pub spread: f64,
}

/// Options for [`derivative`].
#[derive(Debug, Clone, Copy)]
pub struct DerivOptions {
    /// Initial step size.
    pub h0: f64,
    /// Relative agreement demanded between the `h` and `h/2` estimates.
    pub rel_tol: f64,
    /// Absolute agreement floor (covers derivatives near zero).
    pub abs_tol: f64,
    /// Maximum number of step halvings.
    pub max_shrink: u32,
}

impl Default for DerivOptions {
    fn default() -> Self {
        DerivOptions {
            h0: 1e-3,
            rel_tol: 1e-6,
            abs_tol: 1e-6,
            max_shrink: 10,
        }
    }
}

/// Five-point central difference, `O(h^4)` accurate. `None` if any stencil
/// point is not evaluable.
pub fn five_point_derivative(f: &dyn Fn(f64) -> Option<f64>, x: f64, h: f64) -> Option<f64> {
    let fp2 = f(x + 2.0 * h)?;
    let fp1 = f(x + h)?;
    let fm1 = f(x - h)?;
    let fm2 = f(x - 2.0 * h)?;
    Some((-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h))
}

/// Adaptive, step-verified derivative of `f` at `x`.
///
/// The stencil is kept strictly inside `(domain.0, domain.1)`. Estimates at
/// steps `h, h/2, h/4, …` are compared pairwise; a pair qualifies once it
/// agrees to `rel_tol` (or `abs_tol` absolutely), and the ladder continues
/// until the pairwise disagreement — truncation-dominated for large steps,
/// roundoff-dominated for small ones — has clearly passed its minimum. The
/// best pair wins, which keeps the absolute error near the floor set by
/// evaluation noise rather than at the first step that merely qualifies.
pub fn derivative(
    f: impl Fn(f64) -> Option<f64>,
    x: f64,
    domain: (f64, f64),
    opts: DerivOptions,
) -> Result<Derivative, NumericsError> {
    let (lo, hi) = domain;
    if !(lo < hi) || x <= lo || x >= hi {
        return Err(NumericsError::Evaluation { x });
    }
    // Keep x ± 2h strictly interior, with a small safety margin.
    let room = (hi - x).min(x - lo) / 2.0 * 0.99;
    let mut h = opts.h0.min(room);
    if h <= 0.0 || !h.is_finite() {
        return Err(NumericsError::Evaluation { x });
    }

    let fref: &dyn Fn(f64) -> Option<f64> = &f;
    let mut coarse = five_point_derivative(fref, x, h);
    let mut best: Option<(f64, Derivative)> = None;
    let mut tightest_spread = f64::INFINITY;
    let mut evaluated = false;
    for _ in 0..=opts.max_shrink {
        let fine = five_point_derivative(fref, x, h / 2.0);
        if let (Some(d1), Some(d2)) = (coarse, fine) {
            evaluated = true;
            let diff = (d1 - d2).abs();
            let scale = d1.abs().max(d2.abs());
            let spread = if scale > 0.0 { diff / scale } else { 0.0 };
            tightest_spread = tightest_spread.min(spread);
            if diff <= opts.abs_tol || diff <= opts.rel_tol * scale {
                let candidate = Derivative {
                    value: (16.0 * d2 - d1) / 15.0,
                    step: h,
                    spread,
                };
                match &best {
                    Some((best_diff, _)) if diff >= *best_diff => {
                        // Well past the valley bottom: disagreement is now
                        // growing with roundoff, so stop refining.
                        if *best_diff > 0.0 && diff > 8.0 * best_diff {
                            break;
                        }
                    }
                    _ => best = Some((diff, candidate)),
                }
            }
        }
        coarse = fine;
        h /= 2.0;
    }
    if let Some((_, d)) = best {
        return Ok(d);
    }
    if evaluated {
        Err(NumericsError::NotSmooth {
            x,
            spread: tightest_spread,
        })
    } else {
        Err(NumericsError::Evaluation { x })
    }
}

/// Bracketed bisection for a root of `f` on `[lo, hi]`.
///
/// Requires a sign change across the bracket. Iterates until the bracket is
/// narrower than `xtol` (or an exact zero is hit) and returns the midpoint.
pub fn bisect(
    f: impl Fn(f64) -> Option<f64>,
    lo: f64,
    hi: f64,
    xtol: f64,
    max_iter: u32,
) -> Result<f64, NumericsError> {
    if !(lo < hi) {
        return Err(NumericsError::InvalidInterval { lo, hi });
    }
    let f_lo = f(lo).ok_or(NumericsError::Evaluation { x: lo })?;
    let f_hi = f(hi).ok_or(NumericsError::Evaluation { x: hi })?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(NumericsError::NoSignChange { lo, hi, f_lo, f_hi });
    }
    let (mut a, mut b) = (lo, hi);
    let mut f_a = f_lo;
    for _ in 0..max_iter {
        let mid = 0.5 * (a + b);
        if b - a < xtol || mid <= a || mid >= b {
            return Ok(mid);
        }
        let f_mid = f(mid).ok_or(NumericsError::Evaluation { x: mid })?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_a.signum() {
            a = mid;
            f_a = f_mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
