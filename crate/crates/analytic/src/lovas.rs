//! Master separability-function evaluations: the chi_{d,0} master formula,
//! its induced-measure extension split into the J/I halves, the 6F5
//! determinantal-split function Q(k, alpha), and the closed-form
//! HS/operator-monotone interpolation u(eta).

use crate::hyper::{pfq_at_unity, pfq_f64, HyperError};
use crate::rational::{gamma_half_ratio, rat, to_f64};
use crate::special::ln_gamma;
use num_rational::BigRational;

/// chi_{d,0}(eps) for any d >= 1 via the regularized 3F2; terminating for
/// even d, convergent series otherwise (tail-corrected at eps = 1).
pub fn master_chi(d: u32, eps: f64) -> Result<f64, HyperError> {
    assert!(d >= 1);
    let df = d as f64;
    let z = eps * eps;
    let uppers = [-df / 2.0, df / 2.0, df];
    let lowers = [df / 2.0 + 1.0, 1.5 * df + 1.0];
    let f = if d % 2 == 0 || z < 1.0 {
        pfq_f64(&uppers, &lowers, z, 1e-16, 400_000)?
    } else {
        pfq_at_unity(&uppers, &lowers)?
    };
    let ln_pref = 3.0 * ln_gamma(df + 1.0)
        - 3.0 * ln_gamma(df / 2.0 + 1.0)
        - ln_gamma(1.5 * df + 1.0);
    Ok(eps.powi(d as i32) * ln_pref.exp() * f)
}

/// J half of the extended master formula (the det(rho^PT) >= det(rho) part).
pub fn half_j(d: u32, k: u32, eps: f64) -> Result<f64, HyperError> {
    let (df, kf) = (d as f64, k as f64);
    let z = eps * eps;
    let f = pfq_f64(
        &[df / 2.0, df, -df / 2.0 - kf],
        &[df / 2.0 + 1.0, 1.5 * df + kf + 1.0],
        z,
        1e-16,
        400_000,
    )?;
    let ln_pref = ln_gamma(df + 1.0) + 2.0 * ln_gamma(df + kf + 1.0)
        - df.ln()
        - ln_gamma(df / 2.0)
        - ln_gamma(df / 2.0 + kf + 1.0)
        - ln_gamma(df / 2.0 + 1.0)
        - ln_gamma(1.5 * df + kf + 1.0);
    Ok(eps.powi(d as i32) * ln_pref.exp() * f)
}

/// I half: the complementary part, a j-sum of 3F2 terms.
pub fn half_i(d: u32, k: u32, eps: f64) -> Result<f64, HyperError> {
    let (df, kf) = (d as f64, k as f64);
    let z = eps * eps;
    let mut sum = 0.0;
    for j in 0..=k {
        let jf = j as f64;
        let f = pfq_f64(
            &[-df / 2.0 - jf, df / 2.0, df + kf - jf],
            &[1.0 + df / 2.0 + kf - jf, 1.0 + kf + 1.5 * df],
            z,
            1e-16,
            400_000,
        )?;
        // (d)_{k-j} / (d/2+1)_{k-j}
        let m = k - j;
        let ln_ratio = ln_gamma(df + m as f64) - ln_gamma(df)
            - (ln_gamma(df / 2.0 + 1.0 + m as f64) - ln_gamma(df / 2.0 + 1.0));
        sum += ln_ratio.exp() * (1.0 - z).powi(m as i32) * f;
    }
    // 2 Gamma(1+d+k)^2 Gamma(d/2) Gamma(d) k! /
    //   (d Gamma(d/2)^3 Gamma(1+d/2+k) Gamma(1+k) Gamma(3d/2+1+k))
    let ln_pref = std::f64::consts::LN_2 + 2.0 * ln_gamma(1.0 + df + kf) + ln_gamma(df)
        - df.ln()
        - 2.0 * ln_gamma(df / 2.0)
        - ln_gamma(1.0 + df / 2.0 + kf)
        - ln_gamma(1.5 * df + 1.0 + kf);
    Ok(eps.powi(d as i32) * ln_pref.exp() * sum)
}

/// Q(k, alpha): the det(rho^PT) > det(rho) share of the induced-measure
/// separability probability, via the 6F5 at unit argument. alpha is the
/// field half-Dyson label: 1/2 (real), 1 (complex), 2 (quaternionic).
pub fn q_split(k: u32, alpha: f64) -> Result<f64, HyperError> {
    let a2 = (2.0 * alpha).round() as i64;
    if (2.0 * alpha - a2 as f64).abs() > 1e-12 || a2 < 1 {
        return Err(HyperError::InvalidParameters(format!(
            "alpha = {alpha} is not a positive half-integer"
        )));
    }
    let kf = k as f64;
    let af = alpha;
    let uppers = [
        1.0,
        2.5 * af + kf + 1.0,
        2.5 * af + kf + 1.5,
        2.0 * af + kf + 1.5,
        3.0 * af + kf + 1.5,
        2.5 * af + kf + 19.0 / 8.0,
    ];
    let lowers = [
        af + kf + 2.0,
        4.0 * af + kf + 2.0,
        2.5 * af + kf + 1.75,
        2.5 * af + kf + 2.25,
        2.5 * af + kf + 11.0 / 8.0,
    ];
    let f = pfq_at_unity(&uppers, &lowers)?;
    // exact rational prefactor: alpha (20 alpha + 8k + 11) / 4 times the
    // Gamma ratio, whose sqrt(pi) factors cancel (Gamma(1/2) supplies the
    // explicit 1/sqrt(pi))
    let ki = k as i64;
    let gamma_ratio = gamma_half_ratio(
        &[10 * a2 / 2 + 4 * ki + 4, 3 * a2 + 2 * ki + 3, 2 * a2 + 2 * ki + 3],
        &[5 * a2 + 4 * ki + 7, a2 + 2 * ki + 4, 4 * a2 + 2 * ki + 4, 1],
    );
    let pref = rat(a2, 2) * rat(20 * a2 / 2 + 8 * ki + 11, 4) * gamma_ratio;
    Ok(0.5 - to_f64(&pref) * f)
}

/// Closed-form interpolation between the Hilbert-Schmidt (eta = 2) and
/// operator-monotone sqrt(x) (eta = -1/2) two-qubit separability
/// probabilities; u(-1) = 0. The removable singularities at eta in {0, 1}
/// are evaluated through the quadrature route.
pub fn u_eta(eta: f64) -> f64 {
    assert!(eta > -1.0, "u(eta) needs eta > -1");
    if (eta - 1.0).abs() < 1e-4 || eta.abs() < 1e-4 {
        // removable singularity: take the value from the integral form
        let chi = crate::chi::chi_closed(2, 0).unwrap();
        return crate::quadrature::sep_prob_quadrature(
            |z| chi.eval_f64(z),
            2,
            crate::quadrature::ExponentRule::Free(eta),
        )
        .expect("interpolation integral converges");
    }
    let a = -3.0 * eta * (eta + 4.0) * ((eta - 6.0) * eta - 15.0);
    // 16^{2 eta + 3} ((eta-10) eta - 5) Gamma(eta+3/2) Gamma(eta+5/2)^3 /
    //   (pi^2 (2 eta + 3) Gamma(4 eta + 5))
    let poly = (eta - 10.0) * eta - 5.0;
    let ln_mag = (2.0 * eta + 3.0) * 16f64.ln() + poly.abs().ln() + ln_gamma(eta + 1.5)
        + 3.0 * ln_gamma(eta + 2.5)
        - 2.0 * std::f64::consts::PI.ln()
        - (2.0 * eta + 3.0).ln()
        - ln_gamma(4.0 * eta + 5.0);
    let b = poly.signum() * ln_mag.exp();
    -(a + b + 60.0) / (3.0 * (eta - 1.0).powi(2) * eta * eta)
}

/// Exact rational prefactor variant of q_split for tests.
pub fn q_split_prefactor(k: u32, alpha2x: i64) -> BigRational {
    let ki = k as i64;
    let a2 = alpha2x;
    let gamma_ratio = gamma_half_ratio(
        &[5 * a2 + 4 * ki + 4, 3 * a2 + 2 * ki + 3, 2 * a2 + 2 * ki + 3],
        &[5 * a2 + 4 * ki + 7, a2 + 2 * ki + 4, 4 * a2 + 2 * ki + 4, 1],
    );
    rat(a2, 2) * rat(10 * a2 + 8 * ki + 11, 4) * gamma_ratio
}
