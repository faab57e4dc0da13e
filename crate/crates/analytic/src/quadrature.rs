//! Separability-probability integrals by tensor Gauss-Legendre quadrature.
//!
//! The integral lives on the triangle -1 <= y <= x <= 1 with weight
//! (1-x^2)^e (1-y^2)^e (x-y)^d and the singular-value-ratio argument
//! eps^2 = (1-x)(1+y)/((1+x)(1-y)). Two substitutions make the integrand
//! polynomially smooth for the half-integer exponents used here: the
//! triangle map y = -1 + (1+x)t, then x = -cos(pi s), t = sin^2(pi tau / 2).
//! In those variables the weight is a product of powers of sines and
//! cosines, so plain Gauss-Legendre converges geometrically even for the
//! negative exponent of the sqrt(x) operator-monotone rule.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum QuadError {
    NonConvergence { last: f64, previous: f64 },
    InvalidExponent(f64),
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadError::NonConvergence { last, previous } => {
                write!(f, "quadrature did not settle: {previous} -> {last}")
            }
            QuadError::InvalidExponent(e) => {
                write!(f, "weight exponent {e} <= -1 is not integrable")
            }
        }
    }
}

impl std::error::Error for QuadError {}

/// Exponent rule for the (1-x^2)(1-y^2) weight factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExponentRule {
    /// Induced measure of order k: exponent d + k.
    Induced(u32),
    /// Operator-monotone sqrt(x) measure: exponent -d/4 + k.
    OpMonotoneSqrt(u32),
    /// Arbitrary exponent (the u(eta) interpolation).
    Free(f64),
}

impl ExponentRule {
    pub fn exponent(&self, d: u32) -> f64 {
        match *self {
            ExponentRule::Induced(k) => (d + k) as f64,
            ExponentRule::OpMonotoneSqrt(k) => -(d as f64) / 4.0 + k as f64,
            ExponentRule::Free(e) => e,
        }
    }
}

/// Gauss-Legendre nodes and weights on [0, 1].
pub fn gauss_legendre_01(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_pair(n, t);
            let dt = p / dp;
            t -= dt;
            if dt.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_pair(n, t);
        let weight = 2.0 / ((1.0 - t * t) * dp * dp);
        x[i] = 0.5 * (1.0 - t);
        w[i] = 0.5 * weight;
        x[n - 1 - i] = 0.5 * (1.0 + t);
        w[n - 1 - i] = 0.5 * weight;
    }
    (x, w)
}

fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

/// Numerator and denominator of the probability integral at a fixed tensor
/// order, with the substitution constants included (so `den` is the true
/// value of the weight integral over the triangle).
pub fn ratio_integrals(
    chi: &dyn Fn(f64) -> f64,
    d: u32,
    e: f64,
    order: usize,
) -> (f64, f64) {
    let (nodes, weights) = gauss_legendre_01(order);
    let half_pi = 0.5 * std::f64::consts::PI;
    // tau-dependent factors
    let mut tau_w = vec![0.0; order];
    let mut sig_t2 = vec![0.0; order];
    for (j, (&tau, &wt)) in nodes.iter().zip(&weights).enumerate() {
        let st = (half_pi * tau).sin();
        let ct = (half_pi * tau).cos();
        tau_w[j] = st.powf(2.0 * e + 1.0) * ct.powi(2 * d as i32 + 1) * wt;
        sig_t2[j] = st * st;
    }
    let constant = std::f64::consts::PI.powi(2) * 2f64.powf(3.0 * e + d as f64 + 2.0);
    let mut num = 0.0;
    let mut den = 0.0;
    for (&s, &ws) in nodes.iter().zip(&weights) {
        let cs = (half_pi * s).cos();
        let ss = (half_pi * s).sin();
        let s_factor =
            cs.powf(2.0 * e + 1.0) * ss.powf(4.0 * e + 2.0 * d as f64 + 3.0) * ws;
        if s_factor == 0.0 {
            continue;
        }
        let cs2 = cs * cs;
        let ss2 = ss * ss;
        for j in 0..order {
            let dfac = 1.0 - ss2 * sig_t2[j];
            let eps2 = sig_t2[j] * cs2 / dfac;
            let w = s_factor * tau_w[j] * (2.0 * dfac).powf(e);
            den += w;
            num += w * chi(eps2);
        }
    }
    (num * constant, den * constant)
}

/// Separability/PPT probability for an evaluable chi(z = eps^2) under the
/// given exponent rule: tensor order doubles until two successive estimates
/// agree to 1e-10.
pub fn sep_prob_quadrature(
    chi: impl Fn(f64) -> f64,
    d: u32,
    rule: ExponentRule,
) -> Result<f64, QuadError> {
    let e = rule.exponent(d);
    if e <= -0.999 {
        return Err(QuadError::InvalidExponent(e));
    }
    let mut prev = f64::NAN;
    for order in [32usize, 64, 128, 256, 512, 1024, 2048] {
        let (num, den) = ratio_integrals(&chi, d, e, order);
        let p = num / den;
        if (p - prev).abs() <= 1e-10 * p.abs().max(1.0) {
            return Ok(p);
        }
        prev = p;
    }
    let (num, den) = ratio_integrals(&chi, d, e, 2048);
    Err(QuadError::NonConvergence { last: num / den, previous: prev })
}
