//! Separability functions chi_{d,k} for even Dyson index d, represented
//! exactly as chi(z) = 1 + (1-z)^{k+1} p(z) with rational p of degree d-1
//! (z is the squared singular-value ratio).
//!
//! Three independent construction routes back each other: the displayed
//! closed forms for d in {2, 4, 6}, the general triple-sum coefficient
//! formula, and the defining terminating-hypergeometric double sum.

use crate::hyper::pfq_terminating;
use crate::poly::Poly;
use crate::rational::{gamma_int, int, poch_int, rat};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// chi_{d,k}(z) = 1 + (1-z)^{k+1} p(z), exact rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiPoly {
    pub d: u32,
    pub k: u32,
    /// p(z), degree d - 1.
    pub p: Poly,
}

impl ChiPoly {
    /// Fully expanded chi as a polynomial in z.
    pub fn expanded(&self) -> Poly {
        Poly::one_minus_x()
            .pow(self.k + 1)
            .mul(&self.p)
            .add(&Poly::constant(BigRational::one()))
    }

    pub fn eval(&self, z: &BigRational) -> BigRational {
        let omz = BigRational::one() - z;
        let mut pw = BigRational::one();
        for _ in 0..=self.k {
            pw *= &omz;
        }
        BigRational::one() + pw * self.p.eval(z)
    }

    pub fn eval_f64(&self, z: f64) -> f64 {
        1.0 + (1.0 - z).powi(self.k as i32 + 1) * self.p.eval_f64(z)
    }

    /// Closure for quadrature.
    pub fn as_fn(&self) -> impl Fn(f64) -> f64 + '_ {
        move |z| self.eval_f64(z)
    }
}

/// Displayed closed forms for d in {2, 4, 6}.
pub fn chi_closed(d: u32, k: u32) -> Result<ChiPoly, String> {
    let kk = k as i64;
    let p = match d {
        2 => Poly::from_coeffs(vec![int(-1), rat(1, kk + 3)]),
        4 => Poly::from_coeffs(vec![
            int(-1),
            int(-(kk + 1)),
            int(2) * int(2 * kk * kk + 14 * kk + 21) / (int(kk + 5) * int(kk + 6)),
            int(-6) * int(kk + 3) / (int(kk + 6) * int(kk + 7)),
        ]),
        6 => Poly::from_coeffs(vec![
            int(-1),
            int(-(kk + 1)),
            -int(kk + 1) * int(kk + 2) / int(2),
            // quadratic term: 423, not 432 - the defining double sum and the
            // general coefficient formula agree on 423 for every k (both
            // reduce to the same k = 0 value either way)
            int(3) * int(3 * kk.pow(4) + 60 * kk.pow(3) + 423 * kk * kk + 1230 * kk + 1264)
                / (int(2) * int(kk + 7) * int(kk + 8) * int(kk + 9)),
            int(-6) * int(kk + 4) * int(3 * kk * kk + 33 * kk + 80)
                / (int(kk + 8) * int(kk + 9) * int(kk + 10)),
            int(30) * int(kk + 4) * int(kk + 5) / (int(kk + 9) * int(kk + 10) * int(kk + 11)),
        ]),
        _ => return Err(format!("no displayed closed form for d = {d}")),
    };
    Ok(ChiPoly { d, k, p })
}

/// General coefficient formula, any a = d/2 >= 1: the coefficient of z^i in
/// p(z) = (chi - 1)(1-z)^{-k-1} is -(k+1)_i/i! for i < a, and for i = a + j
/// (0 <= j <= a-1) it picks up the triple sum correction.
pub fn chi_general(a: u32, k: u32) -> ChiPoly {
    let (ai, ki) = (a as i64, k as i64);
    let mut coeffs = Vec::with_capacity(2 * a as usize);
    for i in 0..a as u64 {
        coeffs.push(-poch_int(ki + 1, i) / gamma_int(i as i64 + 1));
    }
    // prefactor without the Gamma(2a+k+1+j) part:
    // a Gamma(2a+k+1)^2 / (Gamma(a) Gamma(a+k+1)^2 Gamma(3a+k+1))
    let base_pref = int(ai) * gamma_int(2 * ai + ki + 1) * gamma_int(2 * ai + ki + 1)
        / (gamma_int(ai) * gamma_int(ai + ki + 1) * gamma_int(ai + ki + 1)
            * gamma_int(3 * ai + ki + 1));
    for j in 0..a as i64 {
        let mut double_sum = BigRational::zero();
        for s in 0..=j {
            for u in 0..=j {
                let sign = if (s + u) % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                let outer = sign * poch_int(ai + 1, s as u64)
                    / (int(ai + s)
                        * int(ai + u)
                        * gamma_int(s + 1)
                        * gamma_int(u + 1)
                        * poch_int(ai + ki + 1, s as u64));
                let i_lo = 0.max(s + u - j);
                let i_hi = s.min(u);
                let mut inner = BigRational::zero();
                for i in i_lo..=i_hi {
                    inner += poch_int(-s, i as u64) * poch_int(-u, i as u64)
                        * poch_int(2 * ai + ki + 1 + j, i as u64)
                        / (gamma_int(i + 1)
                            * gamma_int(j - s - u + i + 1)
                            * poch_int(3 * ai + ki + 1, i as u64));
                }
                double_sum += outer * inner;
            }
        }
        let pref = &base_pref * gamma_int(2 * ai + ki + 1 + j);
        let c = -poch_int(ki + 1, (ai + j) as u64) / gamma_int(ai + j + 1) + pref * double_sum;
        coeffs.push(c);
    }
    ChiPoly { d: 2 * a, k, p: Poly::from_coeffs(coeffs) }
}

/// Defining double sum: exact evaluation of chi_{d,k} at a rational z
/// through the terminating 3F2 functions (even d, integer k >= 0).
pub fn chi_double_sum(d: u32, k: u32, z: &BigRational) -> BigRational {
    assert!(d % 2 == 0 && d >= 2);
    let (di, ki) = (d as i64, k as i64);
    let half_d = di / 2;
    // Gamma(1+d+k)^2 Gamma(1+d) / (2 Gamma(1+d/2+k) Gamma(1+d/2)^2 Gamma(1+3d/2+k))
    let pref = gamma_int(1 + di + ki) * gamma_int(1 + di + ki) * gamma_int(1 + di)
        / (int(2)
            * gamma_int(1 + half_d + ki)
            * gamma_int(1 + half_d)
            * gamma_int(1 + half_d)
            * gamma_int(1 + 3 * half_d + ki));
    let mut zpow = BigRational::one();
    for _ in 0..half_d {
        zpow *= z;
    }
    let mut inner = int(2)
        * pfq_terminating(
            &[int(-half_d - ki), int(half_d), int(di)],
            &[int(1 + half_d), int(1 + ki + 3 * half_d)],
            z,
        );
    let omz = BigRational::one() - z;
    for j in 0..ki {
        let mut omz_pow = BigRational::one();
        for _ in 0..(ki - j) {
            omz_pow *= &omz;
        }
        inner += poch_int(di, (ki - j) as u64) / poch_int(half_d + 1, (ki - j) as u64)
            * omz_pow
            * pfq_terminating(
                &[int(-half_d - j), int(half_d), int(di + ki - j)],
                &[int(1 + half_d + ki - j), int(1 + ki + 3 * half_d)],
                z,
            );
    }
    pref * zpow * inner
}

/// chi_{2, -5/2}(z) = 2 ((z - 1/2)/(1-z)^{3/2} + 1/2); diverges as z -> 1.
pub fn chi_special_2_minus_5_2(eps: f64) -> Result<f64, String> {
    if !(0.0..1.0).contains(&eps) {
        return Err(format!("eps = {eps} outside [0, 1)"));
    }
    let z = eps * eps;
    Ok(2.0 * ((z - 0.5) / (1.0 - z).powf(1.5) + 0.5))
}

/// Same function directly in z = eps^2, for quadrature.
pub fn chi_special_2_minus_5_2_z(z: f64) -> f64 {
    2.0 * ((z - 0.5) / (1.0 - z).powf(1.5) + 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_hs_forms() {
        // chi_{2,0} = z(4-z)/3
        let c = chi_closed(2, 0).unwrap().expanded();
        assert_eq!(c, Poly::from_coeffs(vec![int(0), rat(4, 3), rat(-1, 3)]));
        // chi_{2,1} = z(3-z)^2/4
        let c = chi_closed(2, 1).unwrap().expanded();
        assert_eq!(c, Poly::from_coeffs(vec![int(0), rat(9, 4), rat(-6, 4), rat(1, 4)]));
        // chi_{4,0} = z^2(15z^2 - 64z + 84)/35 -> z^2 (84 - 64 z + 15 z^2)/35
        let c = chi_closed(4, 0).unwrap().expanded();
        assert_eq!(
            c,
            Poly::from_coeffs(vec![int(0), int(0), rat(84, 35), rat(-64, 35), rat(15, 35)])
        );
        // chi_{4,1} = z^2 (100 - 125 z + 55 z^2 - 9 z^3)/21
        let c = chi_closed(4, 1).unwrap().expanded();
        assert_eq!(
            c,
            Poly::from_coeffs(vec![
                int(0),
                int(0),
                rat(100, 21),
                rat(-125, 21),
                rat(55, 21),
                rat(-9, 21)
            ])
        );
        // chi_{2,2} = z(16 - 18z + 8z^2 - z^3)/5
        let c = chi_closed(2, 2).unwrap().expanded();
        assert_eq!(
            c,
            Poly::from_coeffs(vec![int(0), rat(16, 5), rat(-18, 5), rat(8, 5), rat(-1, 5)])
        );
    }

    #[test]
    fn boundary_values_and_divisibility() {
        for d in [2u32, 4, 6] {
            for k in 0..=6u32 {
                let chi = chi_closed(d, k).unwrap();
                // chi(0) = 0 means p(0) = -1
                assert_eq!(chi.p.coeff(0), int(-1));
                assert_eq!(chi.eval(&BigRational::zero()), BigRational::zero());
                // chi(1) = 1 by the (1-z)^{k+1} factor
                assert_eq!(chi.eval(&BigRational::one()), BigRational::one());
                // degree of p is d - 1
                assert_eq!(chi.p.degree() as u32, d - 1);
            }
        }
    }

    #[test]
    fn general_formula_matches_closed_forms() {
        for a in [1u32, 2, 3] {
            for k in 0..=6u32 {
                let g = chi_general(a, k);
                let c = chi_closed(2 * a, k).unwrap();
                assert_eq!(g.p, c.p, "a={a} k={k}");
            }
        }
    }

    #[test]
    fn double_sum_agrees_at_rational_points() {
        for d in [2u32, 4, 6] {
            for k in 0..=4u32 {
                let chi = chi_closed(d, k).unwrap();
                for num in 0..=20i64 {
                    let z = rat(num, 20);
                    assert_eq!(
                        chi.eval(&z),
                        chi_double_sum(d, k, &z),
                        "d={d} k={k} z={num}/20"
                    );
                }
            }
        }
    }

    #[test]
    fn specific_exact_value() {
        // chi_{2,1}(1/2) = (1/2)(5/2)^2/4 = 25/32
        let chi = chi_closed(2, 1).unwrap();
        assert_eq!(chi.eval(&rat(1, 2)), rat(25, 32));
        assert_eq!(chi_double_sum(2, 1, &rat(1, 2)), rat(25, 32));
    }

    #[test]
    fn chi_bounded_and_monotone_on_grid() {
        for d in [2u32, 4, 6] {
            for k in [0u32, 1, 2, 5] {
                let chi = chi_closed(d, k).unwrap();
                let mut prev = 0.0;
                for i in 0..=1000 {
                    let z = i as f64 / 1000.0;
                    let v = chi.eval_f64(z);
                    assert!((-1e-12..=1.0 + 1e-12).contains(&v), "d={d} k={k} z={z}: {v}");
                    assert!(v >= prev - 1e-12, "not monotone at d={d} k={k} z={z}");
                    prev = v;
                }
            }
        }
    }

    #[test]
    fn special_k_minus_5_2() {
        assert_eq!(chi_special_2_minus_5_2(0.0).unwrap(), 0.0);
        assert!(chi_special_2_minus_5_2(1.0).is_err());
        // divergence toward eps -> 1
        assert!(chi_special_2_minus_5_2(0.999999).unwrap() > 1e8);
    }
}
