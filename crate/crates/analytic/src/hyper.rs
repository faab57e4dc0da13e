//! Hypergeometric evaluation: exact rational terminating series, float
//! series with convergence policing, unit-argument series with an
//! Euler-Maclaurin tail (the 6F5 below converges only like n^{-3/2}, so a
//! fitted algebraic tail is required for 1e-10 accuracy), and the
//! equal-upper-parameter 2F1 used by the t-integral route.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum HyperError {
    NonConvergence { terms: usize, last_ratio: f64 },
    InvalidParameters(String),
}

impl fmt::Display for HyperError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HyperError::NonConvergence { terms, last_ratio } => {
                write!(f, "series did not converge after {terms} terms (ratio {last_ratio})")
            }
            HyperError::InvalidParameters(m) => write!(f, "invalid parameters: {m}"),
        }
    }
}

impl std::error::Error for HyperError {}

/// Terminating pFq at a rational argument, summed exactly. One upper
/// parameter must be a non-positive integer.
pub fn pfq_terminating(uppers: &[BigRational], lowers: &[BigRational], z: &BigRational) -> BigRational {
    let n_terms = uppers
        .iter()
        .filter(|a| a.is_integer() && !a.is_positive())
        .map(|a| (-a.to_integer()).try_into().unwrap_or(usize::MAX))
        .min()
        .expect("a terminating series needs a non-positive integer upper parameter");
    let mut term = BigRational::from_integer(1.into());
    let mut sum = term.clone();
    for n in 0..n_terms {
        let nf = BigRational::from_integer(n.into());
        for a in uppers {
            term *= a + &nf;
        }
        for b in lowers {
            let d = b + &nf;
            assert!(!d.is_zero(), "lower parameter hits a non-positive integer");
            term /= d;
        }
        term = term * z / (&nf + BigRational::from_integer(1.into()));
        sum += &term;
    }
    sum
}

/// Generic float pFq at |z| < 1 (or terminating): relative tolerance with
/// three consecutive confirmations, capped; the cap turns a stall into an
/// error instead of a silently wrong value.
pub fn pfq_f64(
    uppers: &[f64],
    lowers: &[f64],
    z: f64,
    tol: f64,
    cap: usize,
) -> Result<f64, HyperError> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut comp = 0.0f64; // Kahan compensation
    let mut confirmations = 0;
    for n in 0..cap {
        let nf = n as f64;
        let mut ratio = z / (nf + 1.0);
        for &a in uppers {
            ratio *= a + nf;
        }
        for &b in lowers {
            ratio /= b + nf;
        }
        term *= ratio;
        if term == 0.0 {
            return Ok(sum + comp);
        }
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        comp = -comp;
        sum = t;
        if term.abs() < tol * sum.abs().max(f64::MIN_POSITIVE) {
            confirmations += 1;
            if confirmations >= 3 {
                return Ok(sum + comp);
            }
        } else {
            confirmations = 0;
        }
    }
    // algebraically-decaying series at z ~ 1: attach a fitted tail estimate
    if (z - 1.0).abs() < 1e-12 {
        return Err(HyperError::NonConvergence { terms: cap, last_ratio: term });
    }
    Err(HyperError::NonConvergence { terms: cap, last_ratio: term })
}

/// Hurwitz zeta tail sum_{m >= x} m^{-p} by Euler-Maclaurin (x large).
fn hurwitz_tail(p: f64, x: f64) -> f64 {
    x.powf(1.0 - p) / (p - 1.0) + 0.5 * x.powf(-p) + p * x.powf(-p - 1.0) / 12.0
        - p * (p + 1.0) * (p + 2.0) * x.powf(-p - 3.0) / 720.0
}

/// pFq at exactly z = 1 for series with algebraic term decay t_n ~ C n^{-p},
/// p = 1 + sum(lowers) - sum(uppers) > 1. Sums a fixed block and attaches a
/// two-parameter fitted Euler-Maclaurin tail, which is what makes the
/// n^{-3/2} 6F5 reachable at 1e-10.
pub fn pfq_at_unity(uppers: &[f64], lowers: &[f64]) -> Result<f64, HyperError> {
    let p: f64 = lowers.iter().sum::<f64>() + 1.0 - uppers.iter().sum::<f64>();
    if p <= 1.0 {
        return Err(HyperError::InvalidParameters(format!(
            "series at unity diverges: decay exponent {p} <= 1"
        )));
    }
    const N: usize = 2_000_000;
    const M: usize = N / 2;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut comp = 0.0f64;
    let mut t_mid = 0.0f64;
    for n in 0..N {
        let nf = n as f64;
        let mut ratio = 1.0 / (nf + 1.0);
        for &a in uppers {
            ratio *= a + nf;
        }
        for &b in lowers {
            ratio /= b + nf;
        }
        term *= ratio;
        if n + 1 == M {
            t_mid = term;
        }
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        comp = -comp;
        sum = t;
        if term == 0.0 {
            return Ok(sum); // terminated exactly
        }
        if term.abs() < 1e-18 * sum.abs() {
            return Ok(sum);
        }
    }
    // fit t_n = C n^{-p} (1 + c1/n) at n = M and n = N
    let t_n = term;
    let (nf, mf) = (N as f64, M as f64);
    let r_n = t_n * nf.powf(p);
    let r_m = t_mid * mf.powf(p);
    let c1 = (r_m - r_n) / (r_n * (1.0 / mf - 1.0 / nf));
    let c = r_n / (1.0 + c1 / nf);
    let tail = c * (hurwitz_tail(p, nf + 1.0) + c1 * hurwitz_tail(p + 1.0, nf + 1.0));
    Ok(sum + tail)
}

/// 2F1(alpha, alpha; 2 alpha; w) for a positive integer alpha, needed on
/// all of [0, 1). Three regimes keep every evaluation cancellation-free:
/// the all-positive direct series for w <= 1/2, the (positive) Euler
/// integral under Gauss-Legendre for moderate 1 - w, and the logarithmic
/// connection series once 1 - w is small enough that its brackets
/// 2(H_n - H_{n+alpha-1}) - ln(1-w) are all positive.
pub fn hyp2f1_equal_ab(alpha: u32, w: f64) -> Result<f64, HyperError> {
    assert!(alpha >= 1);
    if !(0.0..1.0).contains(&w) {
        return Err(HyperError::InvalidParameters(format!("argument {w} outside [0, 1)")));
    }
    if w <= 0.5 {
        let a = alpha as f64;
        return pfq_f64(&[a, a], &[2.0 * a], w, 1e-17, 200_000);
    }
    // the log series is safe (all brackets positive) once
    // ln(1/(1-w)) clears 2 H_{alpha-1} with margin
    let h2: f64 = 2.0 * (1..alpha as i64).map(|k| 1.0 / k as f64).sum::<f64>();
    if -(1.0 - w).ln() > h2 + 1.39 {
        hyp2f1_equal_ab_log(alpha, w)
    } else {
        hyp2f1_equal_ab_euler(alpha, w)
    }
}

/// Euler integral Gamma(2a)/Gamma(a)^2 int_0^1 [t(1-t)]^{a-1} (1-wt)^{-a} dt
/// with node doubling; the integrand is a positive bump of width ~1/sqrt(a).
fn hyp2f1_equal_ab_euler(alpha: u32, w: f64) -> Result<f64, HyperError> {
    let a = alpha as f64;
    let ln_pref = crate::special::ln_gamma(2.0 * a) - 2.0 * crate::special::ln_gamma(a);
    let mut prev = f64::NAN;
    for order in [128usize, 256, 512, 1024] {
        let (nodes, weights) = crate::quadrature::gauss_legendre_01(order);
        let mut acc = 0.0f64;
        // cluster nodes toward t = 1 where the integrand bunches when w is
        // close to 1: t = 1 - (1-s)^3
        for (&si, &wi) in nodes.iter().zip(&weights) {
            let om = 1.0 - si;
            let omt = om * om * om; // 1 - t
            let t = 1.0 - omt;
            let jac = 3.0 * om * om;
            let lnf = (a - 1.0) * (t.ln() + omt.ln()) - a * (1.0 - w * t).ln();
            acc += wi * jac * (ln_pref + lnf).exp();
        }
        if (acc - prev).abs() <= 1e-13 * acc.abs() {
            return Ok(acc);
        }
        prev = acc;
    }
    Err(HyperError::NonConvergence { terms: 1024, last_ratio: prev })
}

/// Logarithmic connection series at 1 - w small; with
/// ln(1/(1-w)) > 2 H_{alpha-1} every term is positive.
fn hyp2f1_equal_ab_log(alpha: u32, w: f64) -> Result<f64, HyperError> {
    let one_minus = 1.0 - w;
    let log_term = -(one_minus).ln();
    let a = alpha as i64;
    let max_n = 2000usize;
    let mut h_small = 0.0f64; // H_n
    let mut h_big = (1..a).map(|k| 1.0 / k as f64).sum::<f64>(); // H_{n+a-1}
    debug_assert!(log_term > 2.0 * h_big, "log branch used outside its positive region");
    let mut coeff = 1.0f64; // [(a)_n]^2/(n!)^2 (1-w)^n
    let mut sum = 0.0f64;
    for n in 0..max_n {
        let nf = n as f64;
        if n > 0 {
            let r = (a as f64 + nf - 1.0) / nf;
            coeff *= r * r * one_minus;
            h_small += 1.0 / nf;
            h_big += 1.0 / (nf + a as f64 - 1.0);
        }
        let term = coeff * (2.0 * (h_small - h_big) + log_term);
        sum += term;
        if n > 4 && term < 1e-17 * sum {
            let ln_prefactor = crate::special::ln_gamma(2.0 * a as f64)
                - 2.0 * crate::special::ln_gamma(a as f64);
            return Ok(ln_prefactor.exp() * sum);
        }
    }
    Err(HyperError::NonConvergence { terms: max_n, last_ratio: coeff })
}
