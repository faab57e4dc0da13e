//! Exact rational separability probabilities.
//!
//! The main pipeline integrates z^{2a+k} chi_{2a,k}(z) (1-z)^{2a} against
//! the t-kernel (1 - (1-z)t)^{-(6a+2k+2)} entirely in rationals: a
//! coefficient recursion produces the antiderivative in z, the boundary
//! terms collapse to a polynomial h(t) of degree a + k over (1-t)^{3a+k+1},
//! and a Beta-integral sum with the terminating 3F2 normalization S_{d,k}
//! plus a Gamma prefactor yields the probability. A second, numerical
//! t-route goes through the equal-parameter 2F1 kernel and serves as an
//! independent check (it also covers odd d).

use crate::chi::{chi_general, ChiPoly};
use crate::hyper::{hyp2f1_equal_ab, HyperError};
use crate::poly::Poly;
use crate::quadrature::gauss_legendre_01;
use crate::rational::{gamma_half_ratio, gamma_int, int, poch_int, to_f64};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Laurent polynomial in 1/t: coefficient of t^{-i} at index i (index 0 =
/// constant term, which the recursion clears by construction).
#[derive(Debug, Clone)]
struct InvTPoly {
    g: Vec<BigRational>,
}

impl InvTPoly {
    fn zero() -> Self {
        InvTPoly { g: vec![] }
    }

    fn coeff(&self, i: usize) -> BigRational {
        self.g.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// (1 - t) * self: t * t^{-i} = t^{-(i-1)}.
    fn one_minus_t_mul(&self) -> InvTPoly {
        let n = self.g.len();
        let mut g = vec![BigRational::zero(); n];
        for i in 0..n {
            g[i] += &self.g[i];
        }
        for i in 1..n {
            let v = self.g[i].clone();
            g[i - 1] -= v;
        }
        InvTPoly { g }
    }

    fn sub_constant(&self, c: &BigRational) -> InvTPoly {
        let mut g = self.g.clone();
        if g.is_empty() {
            g.push(BigRational::zero());
        }
        g[0] -= c;
        InvTPoly { g }
    }

    /// self / (t * s) = shift-up then scale.
    fn div_t_scale(&self, s: &BigRational) -> InvTPoly {
        let mut g = vec![BigRational::zero()];
        g.extend(self.g.iter().map(|v| v / s));
        InvTPoly { g }
    }

    fn add_assign(&mut self, other: &InvTPoly) {
        if self.g.len() < other.g.len() {
            self.g.resize(other.g.len(), BigRational::zero());
        }
        for (i, v) in other.g.iter().enumerate() {
            self.g[i] += v;
        }
    }
}

/// Exact rational separability/PPT probability for Dyson index d = 2a and
/// induced order k.
pub fn sep_prob_exact(a: u32, k: u32) -> BigRational {
    let chi = chi_general(a, k);
    sep_prob_exact_from_chi(&chi)
}

/// Same pipeline, but starting from a caller-supplied ChiPoly (so the
/// closed-form and general-formula routes can be cross-checked).
pub fn sep_prob_exact_from_chi(chi: &ChiPoly) -> BigRational {
    let a = chi.d / 2;
    let k = chi.k;
    let (ai, ki) = (a as i64, k as i64);
    let d = 2 * ai;
    // p(z) = z^{2a+k} chi(z) (1-z)^{2a}, degree m - 2 with m = 6a + 2k + 2
    let p = Poly::monomial((2 * a + k) as usize)
        .mul(&chi.expanded())
        .mul(&Poly::one_minus_x().pow(2 * a));
    let m = (6 * ai + 2 * ki + 2) as usize;
    assert_eq!(p.degree(), m - 2, "kernel degree mismatch");

    // antiderivative coefficients: gamma_j solves
    //   beta_j = t (j - m + 1) gamma_j + (1 - t)(j + 1) gamma_{j+1}
    // downward from gamma_{m-2} = -beta_{m-2}/t; each gamma_j is a pure
    // 1/t-polynomial
    let mut gammas: Vec<InvTPoly> = vec![InvTPoly::zero(); m - 1];
    for j in (0..=(m - 2)).rev() {
        let upper = if j == m - 2 {
            InvTPoly::zero()
        } else {
            gammas[j + 1].one_minus_t_mul().div_t_scale(&BigRational::one())
        };
        // gamma_j = [ (1-t)(j+1) gamma_{j+1} - beta_j ] / (t (m - 1 - j))
        let scaled = if j == m - 2 {
            InvTPoly::zero()
        } else {
            let mut s = upper;
            for v in s.g.iter_mut() {
                *v *= int(j as i64 + 1);
            }
            s
        };
        // note: the shift by 1/t was already applied inside div_t_scale for
        // the (1-t) gamma_{j+1} part; restructure: do it in one pass below
        let _ = scaled;
        let mut rhs = if j == m - 2 {
            InvTPoly::zero()
        } else {
            let mut s = gammas[j + 1].one_minus_t_mul();
            for v in s.g.iter_mut() {
                *v *= int(j as i64 + 1);
            }
            s
        };
        rhs = rhs.sub_constant(&p.coeff(j));
        gammas[j] = rhs.div_t_scale(&int((m - 1 - j) as i64));
        assert!(gammas[j].coeff(0).is_zero());
    }

    // q(1; t) = sum_j gamma_j; q(0; t) = gamma_0
    let mut q1 = InvTPoly::zero();
    for g in &gammas {
        q1.add_assign(g);
    }
    let q0 = gammas[0].clone();
    // gt(t) = t^{m-1} q(1;t), g0(t) = t^{m-1} q(0;t): t-coefficient of
    // power (m-1-i) is the 1/t coefficient at i
    let to_t_poly = |g: &InvTPoly| {
        let mut c = vec![BigRational::zero(); m - 1];
        for i in 1..g.g.len() {
            c[m - 1 - i] = g.g[i].clone();
        }
        Poly::from_coeffs(c)
    };
    let gt = to_t_poly(&q1);
    let g0 = to_t_poly(&q0);
    // I(t) = [gt (1-t)^{m-1} - g0] / (t^{m-1} (1-t)^{m-1}) = h(t)/(1-t)^{3a+k+1}
    let numer = gt.mul(&Poly::one_minus_x().pow(m as u32 - 1)).sub(&g0);
    let mut h = numer.div_xpow_exact(m - 1);
    for _ in 0..(3 * ai + ki) {
        h = h.div_one_minus_x_exact();
    }
    assert_eq!(h.degree() as i64, ai + ki, "h degree");

    // Beta sum: I_{d,k} = Gamma(6a+2k+2) Gamma(3a+k+1)/Gamma(9a+3k+3)
    //                     sum_i b_i (6a+2k+2)_i / (9a+3k+3)_i
    let mut beta_sum = BigRational::zero();
    for i in 0..=(ai + ki) as usize {
        beta_sum += h.coeff(i) * poch_int(6 * ai + 2 * ki + 2, i as u64)
            / poch_int(9 * ai + 3 * ki + 3, i as u64);
    }
    let i_dk = gamma_int(6 * ai + 2 * ki + 2) * gamma_int(3 * ai + ki + 1)
        / gamma_int(9 * ai + 3 * ki + 3)
        * beta_sum;

    // probability = Gamma(2+2d+k) Gamma(3+5d+4k) /
    //   (Gamma(2+3d+2k) Gamma(1+d+k) Gamma(1+2d+2k) d!) * I / S
    let pref = gamma_int(2 + 2 * d + ki) * gamma_int(3 + 5 * d + 4 * ki)
        / (gamma_int(2 + 3 * d + 2 * ki)
            * gamma_int(1 + d + ki)
            * gamma_int(1 + 2 * d + 2 * ki)
            * gamma_int(d + 1));
    pref * i_dk / s_dk(2 * a, k)
}

/// Terminating normalization sum S_{d,k} =
/// 3F2(-d-k, 2+3d+2k, 1+d; 2+2d+k, -2d-2k; 1), exactly.
pub fn s_dk(d: u32, k: u32) -> BigRational {
    let (di, ki) = (d as i64, k as i64);
    let n = (di + ki) as u64;
    let mut sum = BigRational::zero();
    for j in 0..=n {
        sum += poch_int(-di - ki, j) * poch_int(2 + 3 * di + 2 * ki, j) * poch_int(1 + di, j)
            / (poch_int(2 + 2 * di + ki, j)
                * poch_int(-2 * di - 2 * ki, j)
                * gamma_int(j as i64 + 1));
    }
    sum
}

/// Exact normalization constant of the t-integral route; the regularized
/// 3F2-at-1 collapses to S_{d,k} through a terminating transformation, so
/// the whole constant is rational.
pub fn t_route_normalization(d: u32, k: u32) -> BigRational {
    let (di, ki) = (d as i64, k as i64);
    // 2^{5d+4k+2} Gamma(d+1) Gamma(d+k+1) Gamma(3d+2k+2) Gamma(2d+2k+1)
    //   S_{d,k} / (Gamma(5d+4k+3) Gamma(2d+k+2))
    let two_pow =
        BigRational::from_integer(num_bigint::BigInt::from(2u32).pow(5 * d + 4 * k + 2));
    two_pow * gamma_int(di + 1) * gamma_int(di + ki + 1) * gamma_int(3 * di + 2 * ki + 2)
        * gamma_int(2 * di + 2 * ki + 1)
        * s_dk(d, k)
        / (gamma_int(5 * di + 4 * ki + 3) * gamma_int(2 * di + ki + 2))
}

/// Numerical t-integral route for the probability: the z-integral against
/// the equal-parameter 2F1 kernel, divided by S_{d,k} with the Gamma
/// prefactor. Works for any evaluable chi, including odd d.
pub fn t_route_probability(
    d: u32,
    k: u32,
    chi: impl Fn(f64) -> f64,
) -> Result<f64, HyperError> {
    let alpha = 3 * d + 2 * k + 2;
    let (di, ki) = (d as i64, k as i64);
    // J_z = int_0^1 z^{d+k} chi(z) (1-z)^d 2F1(alpha, alpha; 2 alpha; 1-z) dz
    let mut prev = f64::NAN;
    let mut j_z = f64::NAN;
    for order in [64usize, 128, 256, 512, 1024] {
        let (nodes, weights) = gauss_legendre_01(order);
        let mut acc = 0.0;
        for (&z, &w) in nodes.iter().zip(&weights) {
            let f = hyp2f1_equal_ab(alpha, 1.0 - z)?;
            acc += w * z.powi((d + k) as i32) * chi(z) * (1.0 - z).powi(d as i32) * f;
        }
        j_z = acc;
        if (j_z - prev).abs() <= 1e-11 * j_z.abs().max(1e-3) {
            break;
        }
        prev = j_z;
    }
    // I_{d,k} = Gamma(alpha)^2 / Gamma(2 alpha) * J_z
    let lg = |x: f64| crate::special::ln_gamma(x);
    let kernel_scale =
        (2.0 * lg(alpha as f64) - lg(2.0 * alpha as f64)).exp();
    let i_dk = kernel_scale * j_z;
    let pref = gamma_int(2 + 2 * di + ki) * gamma_int(3 + 5 * di + 4 * ki)
        / (gamma_int(2 + 3 * di + 2 * ki)
            * gamma_int(1 + di + ki)
            * gamma_int(1 + 2 * di + 2 * ki)
            * gamma_int(di + 1));
    Ok(to_f64(&pref) * i_dk / to_f64(&s_dk(d, k)))
}

/// Field label for the closed-form induced-measure probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldTag {
    R,
    C,
    H,
}

/// Closed-form generalized two-qubit induced-measure separability
/// probabilities, evaluated exactly (the half-integer Gamma pairs cancel
/// their sqrt(pi) factors against the explicit one).
pub fn induced_closed_form(field: FieldTag, k: i64) -> BigRational {
    match field {
        FieldTag::C => {
            assert!(k >= -3, "complex formula needs k + 7/2 > 0");
            // 1 - 3 * 4^{k+3} (2k(k+7)+25) Gamma(k+7/2) Gamma(2k+9) /
            //     (sqrt(pi) Gamma(3k+13))
            let ratio = gamma_half_ratio(&[2 * k + 7, 2 * (2 * k + 9)], &[1, 2 * (3 * k + 13)]);
            let four_pow = pow_int(4, k + 3);
            BigRational::one()
                - int(3) * four_pow * int(2 * k * (k + 7) + 25) * ratio
        }
        FieldTag::R => {
            assert!(k >= -1, "real formula needs 2k + 9/2 > 0");
            // 1 - 4^{k+1} (8k+15) Gamma(k+2) Gamma(2k+9/2) / (sqrt(pi) Gamma(3k+7))
            let ratio = gamma_half_ratio(&[2 * (k + 2), 4 * k + 9], &[1, 2 * (3 * k + 7)]);
            BigRational::one() - pow_int(4, k + 1) * int(8 * k + 15) * ratio
        }
        FieldTag::H => {
            assert!(k >= -6);
            // 1 - 4^{k+6} (k(k(2k(k+21)+355)+1452)+2430) Gamma(k+13/2)
            //     Gamma(2k+15) / (3 sqrt(pi) Gamma(3k+22))
            let poly = k * (k * (2 * k * (k + 21) + 355) + 1452) + 2430;
            let ratio = gamma_half_ratio(&[2 * k + 13, 2 * (2 * k + 15)], &[1, 2 * (3 * k + 22)]);
            BigRational::one() - pow_int(4, k + 6) * int(poly) * ratio / int(3)
        }
    }
}

fn pow_int(base: i64, e: i64) -> BigRational {
    let b = BigRational::from_integer(num_bigint::BigInt::from(base));
    let mut acc = BigRational::one();
    if e >= 0 {
        for _ in 0..e {
            acc *= &b;
        }
    } else {
        for _ in 0..(-e) {
            acc /= &b;
        }
    }
    acc
}
