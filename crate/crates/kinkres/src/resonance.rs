//! Complex-plane root finding for the spectral equations: deterministic
//! grid seeding, Muller iteration, deduplication, and argument-principle
//! certification via rationalized (single-valued) companion functions.

use crate::kink::{
    decay_ok, energy_equation_residual, linear_branch_check, linear_closed_form,
    mu_exponent, Method, PhysicalParams, ResonanceResult,
};
use num_complex::Complex64;
use std::ops::RangeInclusive;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResonanceError {
    #[error("degenerate interpolation triple")]
    DegenerateTriple,
    #[error("zero or non-integer winding on the contour after {retries} boundary shifts")]
    BoundaryZero { retries: u32 },
    #[error("invalid search configuration: {0}")]
    Invalid(String),
}

/// Rectangle in the complex energy plane with a deterministic seed grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBox {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub grid_n: usize,
}

impl SearchBox {
    pub fn new(
        re_min: f64,
        re_max: f64,
        im_min: f64,
        im_max: f64,
        grid_n: usize,
    ) -> Result<Self, ResonanceError> {
        if !(re_min < re_max && im_min < im_max) {
            return Err(ResonanceError::Invalid(format!(
                "box bounds must be ordered: [{re_min}, {re_max}] x [{im_min}, {im_max}]"
            )));
        }
        if grid_n < 4 {
            return Err(ResonanceError::Invalid(format!(
                "grid_n must be at least 4, got {grid_n}"
            )));
        }
        Ok(SearchBox {
            re_min,
            re_max,
            im_min,
            im_max,
            grid_n,
        })
    }

    /// Physical default: resonances perturb the bound spectrum |E| < m
    /// shifted by the field strength.
    pub fn default_for(p: &PhysicalParams) -> Self {
        let r = 1.5 * (p.m + p.lambda.abs());
        SearchBox {
            re_min: -r,
            re_max: r,
            im_min: -p.m,
            im_max: p.m,
            grid_n: 24,
        }
    }

    /// Closed containment with a small tolerance so roots landing exactly
    /// on an edge are kept.
    pub fn contains(&self, e: Complex64) -> bool {
        let eps = 1e-12 * (1.0 + self.diagonal());
        e.re >= self.re_min - eps
            && e.re <= self.re_max + eps
            && e.im >= self.im_min - eps
            && e.im <= self.im_max + eps
    }

    pub fn diagonal(&self) -> f64 {
        (self.re_max - self.re_min).hypot(self.im_max - self.im_min)
    }

    fn expanded(&self, factor: f64) -> SearchBox {
        let (cre, cim) = (
            0.5 * (self.re_min + self.re_max),
            0.5 * (self.im_min + self.im_max),
        );
        let (hre, him) = (
            0.5 * (self.re_max - self.re_min) * factor,
            0.5 * (self.im_max - self.im_min) * factor,
        );
        SearchBox {
            re_min: cre - hre,
            re_max: cre + hre,
            im_min: cim - him,
            im_max: cim + him,
            grid_n: self.grid_n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub dedup_radius: f64,
}

impl SolverConfig {
    pub fn validated(self) -> Result<Self, ResonanceError> {
        if !(self.tol > 0.0) {
            return Err(ResonanceError::Invalid("tol must be positive".into()));
        }
        if self.dedup_radius <= self.tol {
            return Err(ResonanceError::Invalid(
                "dedup_radius must exceed tol".into(),
            ));
        }
        Ok(self)
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-12,
            max_iter: 100,
            dedup_radius: 1e-8,
        }
    }
}

/// One Muller quadratic-interpolation step through three labeled points.
/// The denominator sign is chosen to maximize magnitude.
pub fn muller_step(
    triple: &[(Complex64, Complex64); 3],
) -> Result<Complex64, ResonanceError> {
    let [(x0, f0), (x1, f1), (x2, f2)] = *triple;
    let h1 = x1 - x0;
    let h2 = x2 - x1;
    if h1.norm() == 0.0 || h2.norm() == 0.0 {
        return Err(ResonanceError::DegenerateTriple);
    }
    let d1 = (f1 - f0) / h1;
    let d2 = (f2 - f1) / h2;
    let a = (d2 - d1) / (h2 + h1);
    let b = a * h2 + d2;
    let disc = (b * b - 4.0 * a * f2).sqrt();
    let den = if (b + disc).norm() >= (b - disc).norm() {
        b + disc
    } else {
        b - disc
    };
    if den.norm() == 0.0 {
        return Err(ResonanceError::DegenerateTriple);
    }
    Ok(x2 - 2.0 * f2 / den)
}

/// All zeros of `f` inside the box: deterministic grid of Muller starts,
/// local deflation of already-found roots, dedup, sorted by (Re, Im).
pub fn find_roots<F>(f: &F, bx: &SearchBox, cfg: &SolverConfig) -> Vec<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    let diag = bx.diagonal();
    let h = 1e-3 * diag;
    let defl_r = (1e-6 * diag).max(cfg.dedup_radius);
    let mut roots: Vec<Complex64> = Vec::new();
    let mut residuals: Vec<f64> = Vec::new();
    let nseed = bx.grid_n;
    for i in 0..nseed {
        for j in 0..nseed {
            let seed = Complex64::new(
                bx.re_min + (bx.re_max - bx.re_min) * (i as f64 + 0.5) / nseed as f64,
                bx.im_min + (bx.im_max - bx.im_min) * (j as f64 + 0.5) / nseed as f64,
            );
            // Deflate only in a small neighborhood of known roots; global
            // deflation would distort the branch-cut structure.
            let g = |e: Complex64| {
                let mut v = f(e);
                for r in &roots {
                    if (e - r).norm() < defl_r {
                        v /= e - r;
                    }
                }
                v
            };
            let mut tr = [
                (seed + h, g(seed + h)),
                (seed + Complex64::new(0.0, h), g(seed + Complex64::new(0.0, h))),
                (seed, g(seed)),
            ];
            let mut accepted: Option<Complex64> = None;
            for _ in 0..cfg.max_iter {
                let next = match muller_step(&tr) {
                    Ok(x) => x,
                    Err(_) => break,
                };
                if !next.re.is_finite() || !next.im.is_finite() {
                    break;
                }
                if (next - seed).norm() > 3.0 * diag {
                    break;
                }
                let dx = (next - tr[2].0).norm();
                tr = [tr[1], tr[2], (next, g(next))];
                // Acceptance uses the raw residual, independent of the
                // deflated iterate history.
                if f(next).norm() < cfg.tol {
                    accepted = Some(next);
                    break;
                }
                if dx < 1e-15 * (1.0 + next.norm()) {
                    break;
                }
            }
            if let Some(root) = accepted {
                if !bx.contains(root) {
                    continue;
                }
                let res = f(root).norm();
                if let Some(idx) = roots
                    .iter()
                    .position(|r| (root - r).norm() < cfg.dedup_radius)
                {
                    if res < residuals[idx] {
                        roots[idx] = root;
                        residuals[idx] = res;
                    }
                } else {
                    roots.push(root);
                    residuals.push(res);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&a, &b| {
        (roots[a].re, roots[a].im)
            .partial_cmp(&(roots[b].re, roots[b].im))
            .unwrap()
    });
    order.into_iter().map(|i| roots[i]).collect()
}

/// Search the selected spectral equation for every n in the range.
pub fn find_resonances(
    p: &PhysicalParams,
    n_range: RangeInclusive<u32>,
    method: Method,
    bx: &SearchBox,
    cfg: &SolverConfig,
) -> Vec<ResonanceResult> {
    let mut out = Vec::new();
    for n in n_range {
        let f = |e: Complex64| energy_equation_residual(p, e, n, method);
        let mut roots = find_roots(&f, bx, cfg);
        if method == Method::Linear {
            // The squared closed form is a seed/cross-check only: admit it
            // as a root of the unsquared equation just when the substitution
            // check confirms the principal branch.
            let cand = linear_closed_form(p, n);
            if bx.contains(cand)
                && linear_branch_check(p, cand, n, cfg.tol) == Some(false)
                && !roots.iter().any(|r| (cand - r).norm() < cfg.dedup_radius)
            {
                roots.push(cand);
            }
        }
        for e in roots {
            out.push(ResonanceResult {
                n,
                energy: e,
                residual: f(e).norm(),
                method,
                decay_ok: decay_ok(p, e, method),
            });
        }
    }
    out.sort_by(|a, b| {
        (a.n, a.energy.re, a.energy.im)
            .partial_cmp(&(b.n, b.energy.re, b.energy.im))
            .unwrap()
    });
    out
}

/// Branch-verified closed-form candidates of the linear-limit equation
/// inside the box. The boolean records whether the verifying square-root
/// branch was the flipped one.
pub fn linear_candidates(
    p: &PhysicalParams,
    n_range: RangeInclusive<u32>,
    bx: &SearchBox,
    tol: f64,
) -> Vec<(u32, Complex64, bool)> {
    let mut out = Vec::new();
    for n in n_range {
        let cand = linear_closed_form(p, n);
        if !bx.contains(cand) {
            continue;
        }
        if let Some(flipped) = linear_branch_check(p, cand, n, tol) {
            out.push((n, cand, flipped));
        }
    }
    out
}

/// Argument-principle winding number of `f` over the box boundary. The
/// boundary is expanded slightly and resampled up to three times when a
/// sample sits on a zero or the phase total fails to round to an integer.
pub fn count_roots_in_box<F>(
    f: &F,
    bx: &SearchBox,
    samples_per_edge: usize,
) -> Result<i64, ResonanceError>
where
    F: Fn(Complex64) -> Complex64,
{
    let samples = samples_per_edge.max(16);
    for retry in 0..=3u32 {
        let b = bx.expanded(1.0 + 0.004 * f64::from(retry));
        if let Some(w) = winding(f, &b, samples) {
            return Ok(w);
        }
    }
    Err(ResonanceError::BoundaryZero { retries: 3 })
}

fn winding<F>(f: &F, b: &SearchBox, samples: usize) -> Option<i64>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut pts = Vec::with_capacity(4 * samples);
    let t = |a: f64, bb: f64, i: usize| a + (bb - a) * i as f64 / samples as f64;
    for i in 0..samples {
        pts.push(Complex64::new(t(b.re_min, b.re_max, i), b.im_min));
    }
    for i in 0..samples {
        pts.push(Complex64::new(b.re_max, t(b.im_min, b.im_max, i)));
    }
    for i in 0..samples {
        pts.push(Complex64::new(t(b.re_max, b.re_min, i), b.im_max));
    }
    for i in 0..samples {
        pts.push(Complex64::new(b.re_min, t(b.im_max, b.im_min, i)));
    }
    let mut total = 0.0;
    let mut min_mod = f64::INFINITY;
    let mut max_mod: f64 = 0.0;
    let mut max_step: f64 = 0.0;
    let first = f(pts[0]);
    if !first.is_finite() {
        return None;
    }
    let mut prev = first.arg();
    let wrap = |mut d: f64| {
        while d > std::f64::consts::PI {
            d -= 2.0 * std::f64::consts::PI;
        }
        while d < -std::f64::consts::PI {
            d += 2.0 * std::f64::consts::PI;
        }
        d
    };
    for p in pts.iter().chain(std::iter::once(&pts[0])) {
        let v = f(*p);
        if !v.is_finite() {
            return None;
        }
        min_mod = min_mod.min(v.norm());
        max_mod = max_mod.max(v.norm());
        let a = v.arg();
        let d = wrap(a - prev);
        max_step = max_step.max(d.abs());
        total += d;
        prev = a;
    }
    // A zero on or too close to the contour shows up as a near-pi phase
    // jump between adjacent samples (sign-ambiguous after wrapping) or as
    // a vanishing modulus; either makes the total unreliable even when it
    // happens to round cleanly.
    if !(min_mod > 1e-9 * max_mod) || max_step > std::f64::consts::FRAC_PI_2 {
        return None;
    }
    let w = total / (2.0 * std::f64::consts::PI);
    if (w - w.round()).abs() > 0.05 {
        return None;
    }
    Some(w.round() as i64)
}

/// The three feasible sign resolutions of the rationalized exact spectral
/// condition c = s1 sqrt(A) + s2 sqrt(a), with A, a the two quotient roots
/// (the all-plus combination can never vanish).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignVariant {
    /// sqrt(A) - sqrt(a) = c: the difference form posed on x > 0.
    Difference,
    /// sqrt(A) + sqrt(a) = c: the sum form posed on x < 0.
    Sum,
    /// sqrt(a) - sqrt(A) = c: the remaining feasible combination.
    SwappedDifference,
}

fn quotient_roots(p: &PhysicalParams, e: Complex64) -> (Complex64, Complex64) {
    let k2 = p.k * p.k;
    let m2 = Complex64::new(p.m * p.m, 0.0);
    let big_a = ((m2 - (e + p.lambda) * (e + p.lambda)) / k2).sqrt();
    let small_a = ((m2 - (e - p.lambda) * (e - p.lambda)) / k2).sqrt();
    (big_a, small_a)
}

pub fn variant_residual(
    p: &PhysicalParams,
    e: Complex64,
    n: u32,
    variant: SignVariant,
) -> Complex64 {
    let (big_a, small_a) = quotient_roots(p, e);
    let c = mu_exponent(p) + (2.0 * f64::from(n) + 1.0);
    match variant {
        SignVariant::Difference => big_a - small_a - c,
        SignVariant::Sum => big_a + small_a - c,
        SignVariant::SwappedDifference => small_a - big_a - c,
    }
}

/// Single-valued companion whose zero set is the union of the feasible
/// sign variants: squaring removes both square roots, leaving a function
/// analytic on the whole box and suitable for the argument principle.
pub fn rationalized_residual(
    p: &PhysicalParams,
    e: Complex64,
    n: u32,
    method: Method,
) -> Complex64 {
    match method {
        Method::ExactPos | Method::ExactNeg => {
            let k2 = p.k * p.k;
            let m2 = Complex64::new(p.m * p.m, 0.0);
            let big = (m2 - (e + p.lambda) * (e + p.lambda)) / k2;
            let small = (m2 - (e - p.lambda) * (e - p.lambda)) / k2;
            let c = mu_exponent(p) + (2.0 * f64::from(n) + 1.0);
            let t = c * c + small - big;
            t * t - 4.0 * small * c * c
        }
        Method::Linear => {
            let q = Complex64::new(1.0 + 2.0 * f64::from(n), 0.0);
            let lhs = Complex64::new(0.0, 2.0) * e - q;
            lhs * lhs
                - (Complex64::new(1.0 + 4.0 * p.m * p.m, -4.0 * p.k * p.lambda)
                    - 4.0 * e * e)
        }
    }
}

/// Number of zeros of the rationalized companion inside the box, certified
/// by the argument principle.
pub fn certified_count(
    p: &PhysicalParams,
    n: u32,
    method: Method,
    bx: &SearchBox,
    samples_per_edge: usize,
) -> Result<i64, ResonanceError> {
    count_roots_in_box(
        &|e| rationalized_residual(p, e, n, method),
        bx,
        samples_per_edge,
    )
}
