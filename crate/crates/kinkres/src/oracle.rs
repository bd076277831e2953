//! Independent verification engine: adaptive Runge-Kutta integration of
//! the coupled first-order system phi' = i(E - V) phi - i m theta,
//! theta' = i m phi - i(E - V) theta, inward from the far asymptotic
//! region, plus the point-interaction jump matrix and the two-sided
//! matching determinant whose zeros are global resonances.

use crate::kink::{kappa_minus, kappa_plus, potential, HalfLine, PhysicalParams, SpinorSample};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("no decaying seed on the {side:?} side: Re kappa = {re_kappa} <= 0")]
    DecayCondition { side: HalfLine, re_kappa: f64 },
    #[error("step size underflow at x = {x}")]
    StepUnderflow { x: f64 },
    #[error("invalid integrator request: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    /// Truncation radius; `None` selects max(10/|k|, 10/Re kappa).
    pub x_max: Option<f64>,
    pub step_init: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            x_max: None,
            step_init: 1e-3,
            rel_tol: 1e-10,
            abs_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchResult {
    pub e: Complex64,
    /// phi_R (J theta)_L - theta_R (J phi)_L at x = 0.
    pub wronskian: Complex64,
    pub right_state: SpinorSample,
    pub left_state: SpinorSample,
}

/// Truncation radius covering both the potential saturation length and the
/// asymptotic decay length.
pub fn default_x_max(p: &PhysicalParams, re_kappa: f64) -> f64 {
    let by_k = 10.0 / p.k.abs();
    if re_kappa > 0.0 {
        by_k.max(10.0 / re_kappa)
    } else {
        by_k
    }
}

/// Diagonal spinor jump diag(e^{ig}, e^{-ig}) across the point interaction.
pub fn delta_jump(g: f64) -> [Complex64; 2] {
    [
        Complex64::new(0.0, g).exp(),
        Complex64::new(0.0, -g).exp(),
    ]
}

type State = [Complex64; 2];

fn rhs(p: &PhysicalParams, e: Complex64, x: f64, y: &State) -> State {
    let w = Complex64::new(0.0, 1.0) * (e - potential(p, x));
    let im_m = Complex64::new(0.0, p.m);
    [w * y[0] - im_m * y[1], im_m * y[0] - w * y[1]]
}

// Dormand-Prince 5(4) coefficients.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

struct Integrator<'a> {
    p: &'a PhysicalParams,
    e: Complex64,
    cfg: IntegratorConfig,
}

impl Integrator<'_> {
    /// One accepted adaptive step from (x, y); returns (new_x, new_y, new_h).
    fn step(
        &self,
        x: f64,
        y: &State,
        mut h: f64,
        target: f64,
    ) -> Result<(f64, State, f64), OracleError> {
        let dir = (target - x).signum();
        loop {
            if h.abs() < 1e-14 * (1.0 + x.abs()) {
                return Err(OracleError::StepUnderflow { x });
            }
            let mut hh = h;
            if (x + hh - target) * dir > 0.0 {
                hh = target - x;
            }
            let mut k = [[Complex64::new(0.0, 0.0); 2]; 7];
            k[0] = rhs(self.p, self.e, x, y);
            for s in 0..6 {
                let mut ys = *y;
                for (j, yk) in k.iter().enumerate().take(s + 1) {
                    ys[0] += hh * A[s][j] * yk[0];
                    ys[1] += hh * A[s][j] * yk[1];
                }
                k[s + 1] = rhs(self.p, self.e, x + C[s] * hh, &ys);
            }
            let mut y5 = *y;
            let mut y4 = *y;
            for (j, yk) in k.iter().enumerate() {
                y5[0] += hh * B5[j] * yk[0];
                y5[1] += hh * B5[j] * yk[1];
                y4[0] += hh * B4[j] * yk[0];
                y4[1] += hh * B4[j] * yk[1];
            }
            let mut err: f64 = 0.0;
            for i in 0..2 {
                let scale =
                    self.cfg.abs_tol + self.cfg.rel_tol * y[i].norm().max(y5[i].norm());
                err = err.max((y5[i] - y4[i]).norm() / scale);
            }
            if err <= 1.0 {
                let grow = if err > 0.0 {
                    (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                } else {
                    5.0
                };
                return Ok((x + hh, y5, h * grow));
            }
            h *= (0.9 * err.powf(-0.2)).clamp(0.2, 0.9);
        }
    }
}

/// Integrate one half-line inward, recording the state at each requested
/// position (ascending magnitudes, strictly inside the half-line) and at
/// the origin. All returned samples share one gauge; the overall scale is
/// arbitrary. The last element is the x = 0 state.
pub fn integrate_halfline_sampled(
    p: &PhysicalParams,
    e: Complex64,
    side: HalfLine,
    cfg: &IntegratorConfig,
    xs: &[f64],
) -> Result<Vec<SpinorSample>, OracleError> {
    let (kappa, _) = match side {
        HalfLine::Positive => kappa_plus(p, e),
        HalfLine::Negative => kappa_minus(p, e),
    };
    if !(kappa.re > 0.0) {
        return Err(OracleError::DecayCondition {
            side,
            re_kappa: kappa.re,
        });
    }
    let x_max = cfg.x_max.unwrap_or_else(|| default_x_max(p, kappa.re));
    if !(x_max > 0.0) || !cfg.step_init.is_finite() || cfg.step_init <= 0.0 {
        return Err(OracleError::Invalid(
            "x_max and step_init must be positive".into(),
        ));
    }
    let sgn = match side {
        HalfLine::Positive => 1.0,
        HalfLine::Negative => -1.0,
    };
    for &x in xs {
        if !(x * sgn > 0.0 && x * sgn <= x_max) {
            return Err(OracleError::Invalid(format!(
                "sample position {x} outside the integrated half-line"
            )));
        }
    }
    let mut stops: Vec<f64> = xs.iter().map(|&x| x * sgn).collect();
    stops.sort_by(|a, b| b.partial_cmp(a).unwrap());
    // Quarter marks trigger renormalization to unit norm.
    let quarters = [0.75 * x_max, 0.5 * x_max, 0.25 * x_max];
    // Asymptotic constant-potential seed: theta/phi from the first-order
    // system with V = +-Lambda at the far end.
    let v_inf = sgn * p.lambda;
    let ratio = (Complex64::new(0.0, -1.0) * sgn * kappa + (e - v_inf)) / p.m;
    let mut y: State = [Complex64::new(1.0, 0.0), ratio];
    let mut x = x_max;
    let mut h = -cfg.step_init;
    let mut log_scale: f64 = 0.0;
    let integ = Integrator { p, e, cfg: *cfg };
    let mut out: Vec<(f64, State, f64)> = Vec::with_capacity(stops.len() + 1);
    let mut next_quarter = 0usize;
    let mut next_stop = 0usize;
    let map_x = |t: f64| sgn * t; // path coordinate -> physical x
    while next_stop < stops.len() && stops[next_stop] >= x - 1e-12 * (1.0 + x) {
        out.push((map_x(x), y, log_scale));
        next_stop += 1;
    }
    while x > 0.0 {
        let mut target = 0.0f64;
        if next_quarter < quarters.len() {
            target = target.max(quarters[next_quarter]);
        }
        if next_stop < stops.len() {
            target = target.max(stops[next_stop]);
        }
        // In path coordinates the system reads d/dt y(t) with x = sgn t and
        // the chain rule absorbed into rhs evaluated at the physical x.
        let (nx, ny, nh) = {
            // Integrate in the physical coordinate directly: for the
            // negative side the path runs from -x_max up to 0.
            let (px, pt) = (map_x(x), map_x(target));
            let (rx, ry, rh) = integ.step(px, &y, sgn * h, pt)?;
            (sgn * rx, ry, sgn * rh)
        };
        x = nx;
        y = ny;
        h = nh;
        if next_stop < stops.len() && (x - stops[next_stop]).abs() < 1e-12 * (1.0 + x) {
            out.push((map_x(x), y, log_scale));
            next_stop += 1;
        }
        if next_quarter < quarters.len()
            && x <= quarters[next_quarter] + 1e-12 * (1.0 + x)
        {
            let norm = (y[0].norm_sqr() + y[1].norm_sqr()).sqrt();
            if norm > 0.0 {
                y[0] /= norm;
                y[1] /= norm;
                log_scale += norm.ln();
            }
            next_quarter += 1;
        }
        if x <= 0.0 {
            break;
        }
    }
    out.push((map_x(0.0), y, log_scale));
    // Re-express every sample in the gauge of the final (x = 0) state.
    let ls_ref = out.last().unwrap().2;
    let result = out
        .into_iter()
        .map(|(px, s, ls)| {
            let f = (ls - ls_ref).exp();
            SpinorSample {
                x: px,
                phi: s[0] * f,
                theta: s[1] * f,
            }
        })
        .collect();
    Ok(result)
}

/// State at the origin approached from the far side of the half-line.
pub fn integrate_halfline(
    p: &PhysicalParams,
    e: Complex64,
    side: HalfLine,
    cfg: &IntegratorConfig,
) -> Result<SpinorSample, OracleError> {
    let states = integrate_halfline_sampled(p, e, side, cfg, &[])?;
    Ok(*states.last().unwrap())
}

/// Join the two inward solutions at x = 0 with the point-interaction jump
/// applied to the left state. The determinant vanishes exactly when the
/// half-line solutions combine into one global resonance state.
pub fn matching_determinant(
    p: &PhysicalParams,
    e: Complex64,
    cfg: &IntegratorConfig,
) -> Result<MatchResult, OracleError> {
    let right = integrate_halfline(p, e, HalfLine::Positive, cfg)?;
    let raw_left = integrate_halfline(p, e, HalfLine::Negative, cfg)?;
    let j = delta_jump(p.g);
    let left = SpinorSample {
        x: raw_left.x,
        phi: j[0] * raw_left.phi,
        theta: j[1] * raw_left.theta,
    };
    Ok(MatchResult {
        e,
        wronskian: right.phi * left.theta - right.theta * left.phi,
        right_state: right,
        left_state: left,
    })
}

/// Largest relative drift of the pointwise ratio between the integrated
/// upper component and the closed-form one over the given positions
/// (x > 0 side). Zero drift means exact proportionality.
pub fn proportionality_deviation(
    p: &PhysicalParams,
    e: Complex64,
    n: u32,
    cfg: &IntegratorConfig,
    xs: &[f64],
) -> Result<f64, OracleError> {
    if xs.is_empty() {
        return Err(OracleError::Invalid("no comparison positions".into()));
    }
    let states = integrate_halfline_sampled(p, e, HalfLine::Positive, cfg, xs)?;
    let mut ratio0: Option<Complex64> = None;
    let mut worst = 0.0f64;
    for s in states.iter().take(xs.len()) {
        let closed = crate::kink::spinor_pos(p, e, n, s.x)
            .map_err(|err| OracleError::Invalid(err.to_string()))?
            .phi;
        let r = s.phi / closed;
        let r0 = *ratio0.get_or_insert(r);
        worst = worst.max((r - r0).norm() / r0.norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kink::spinor_pos;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(m: f64, lambda: f64, k: f64) -> PhysicalParams {
        PhysicalParams::new(m, lambda, k, 0.0).unwrap()
    }

    const ROOT_N0: Complex64 =
        Complex64::new(-0.999_058_749_171_628_1, -0.451_012_751_419_998_01);

    #[test]
    fn jump_matrix_examples() {
        let id = delta_jump(0.0);
        assert!((id[0] - 1.0).norm() < 1e-15 && (id[1] - 1.0).norm() < 1e-15);
        let pi = delta_jump(std::f64::consts::PI);
        assert!((pi[0] + 1.0).norm() < 1e-15 && (pi[1] + 1.0).norm() < 1e-15);
        let half = delta_jump(std::f64::consts::FRAC_PI_2);
        assert!((half[0] - c64(0.0, 1.0)).norm() < 1e-15);
        assert!((half[1] - c64(0.0, -1.0)).norm() < 1e-15);
        assert!((half[0] * half[0] - pi[0]).norm() < 1e-15);
        assert!((half[1] * half[1] - pi[1]).norm() < 1e-15);
    }

    #[test]
    fn field_free_exponential_decay() {
        // V = 0, real |E| < m: phi ~ exp(-sqrt(m^2 - E^2) x).
        let p = params(1.0, 0.0, 0.5);
        let e = c64(0.3, 0.0);
        let kappa = (1.0f64 - 0.09).sqrt();
        let cfg = IntegratorConfig::default();
        let s = integrate_halfline_sampled(&p, e, HalfLine::Positive, &cfg, &[1.0, 2.0])
            .unwrap();
        let ratio = s[1].phi / s[0].phi; // phi(1)/phi(2): stops descend
        let expect = (kappa * 1.0).exp();
        assert!(
            (ratio.norm() - expect).abs() < 1e-8 * expect,
            "ratio = {ratio}, expect = {expect}"
        );
    }

    #[test]
    fn seed_ratio_holds_at_far_end() {
        let p = params(1.0, 0.2, 0.1);
        let cfg = IntegratorConfig {
            x_max: Some(40.0),
            ..Default::default()
        };
        let s =
            integrate_halfline_sampled(&p, ROOT_N0, HalfLine::Positive, &cfg, &[40.0])
                .unwrap();
        let (kappa, _) = kappa_plus(&p, ROOT_N0);
        let expect = (c64(0.0, -1.0) * kappa + (ROOT_N0 - p.lambda)) / p.m;
        let got = s[0].theta / s[0].phi;
        assert!((got - expect).norm() < 1e-10, "got {got}, expect {expect}");
    }

    #[test]
    fn constant_potential_ratio_invariant() {
        // With V identically 0 the decaying solution keeps theta/phi fixed
        // along the entire path.
        let p = params(1.0, 0.0, 0.5);
        let e = c64(0.3, 0.0);
        let cfg = IntegratorConfig::default();
        let kappa = c64((1.0f64 - 0.09).sqrt(), 0.0);
        let expect = (c64(0.0, -1.0) * kappa + e) / p.m;
        let s = integrate_halfline(&p, e, HalfLine::Positive, &cfg).unwrap();
        let got = s.theta / s.phi;
        assert!((got - expect).norm() < 100.0 * cfg.rel_tol);
    }

    #[test]
    fn proportional_to_closed_form_at_root() {
        let p = params(1.0, 0.2, 0.1);
        let cfg = IntegratorConfig::default();
        let xs: Vec<f64> = (0..20).map(|i| 2.0 + 28.0 * f64::from(i) / 19.0).collect();
        let states =
            integrate_halfline_sampled(&p, ROOT_N0, HalfLine::Positive, &cfg, &xs)
                .unwrap();
        let mut ratio0 = None;
        for s in states.iter().take(xs.len()) {
            let closed = spinor_pos(&p, ROOT_N0, 0, s.x).unwrap().phi;
            let r = s.phi / closed;
            let r0 = *ratio0.get_or_insert(r);
            assert!(
                (r - r0).norm() < 1e-6 * r0.norm(),
                "x = {}, drift = {:.3e}",
                s.x,
                (r - r0).norm() / r0.norm()
            );
        }
    }

    #[test]
    fn self_convergence_under_tolerance_halving() {
        let p = params(1.0, 0.2, 0.1);
        let loose = IntegratorConfig {
            x_max: Some(60.0),
            rel_tol: 2e-10,
            abs_tol: 2e-12,
            ..Default::default()
        };
        let tight = IntegratorConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            ..loose
        };
        let a = integrate_halfline(&p, ROOT_N0, HalfLine::Positive, &loose).unwrap();
        let b = integrate_halfline(&p, ROOT_N0, HalfLine::Positive, &tight).unwrap();
        // Compare in the gauge-free ratio.
        let d = (a.theta / a.phi - b.theta / b.phi).norm();
        assert!(d < 10.0 * loose.rel_tol * (b.theta / b.phi).norm(), "d = {d:.3e}");
    }

    #[test]
    fn decay_condition_rejected() {
        let p = params(1.0, 0.2, 0.1);
        // E real with |E - Lambda| > m: kappa_+ purely imaginary.
        let r = integrate_halfline(
            &p,
            c64(2.0, 0.0),
            HalfLine::Positive,
            &IntegratorConfig::default(),
        );
        assert!(matches!(r, Err(OracleError::DecayCondition { .. })));
    }

    #[test]
    fn free_matching_determinant_never_vanishes() {
        let p = params(1.0, 0.0, 0.5);
        let cfg = IntegratorConfig::default();
        let mut min_w = f64::INFINITY;
        for i in 0..50 {
            let e = c64(-0.95 + 1.9 * f64::from(i) / 49.0, 0.0);
            let w = matching_determinant(&p, e, &cfg).unwrap().wronskian.norm();
            min_w = min_w.min(w);
        }
        assert!(min_w > 0.1, "min |W| = {min_w}");
    }

    #[test]
    fn full_phase_jump_flips_determinant_sign() {
        let pm = PhysicalParams::new(1.0, 0.2, 0.1, std::f64::consts::PI).unwrap();
        let p0 = params(1.0, 0.2, 0.1);
        let cfg = IntegratorConfig {
            x_max: Some(60.0),
            ..Default::default()
        };
        let e = c64(0.4, -0.1);
        let w0 = matching_determinant(&p0, e, &cfg).unwrap().wronskian;
        let wpi = matching_determinant(&pm, e, &cfg).unwrap().wronskian;
        assert!((w0 + wpi).norm() < 1e-8 * w0.norm());
    }
}
