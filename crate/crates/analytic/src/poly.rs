//! Dense univariate polynomials over exact rationals; just the operations
//! the exact integration scheme needs.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficient vector, index = power; normalized to no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub c: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: vec![] }
    }

    pub fn constant(v: BigRational) -> Self {
        let mut p = Poly { c: vec![v] };
        p.normalize();
        p
    }

    pub fn from_coeffs(c: Vec<BigRational>) -> Self {
        let mut p = Poly { c };
        p.normalize();
        p
    }

    /// x^k
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::one();
        Poly { c }
    }

    /// 1 - x
    pub fn one_minus_x() -> Self {
        Poly { c: vec![BigRational::one(), -BigRational::one()] }
    }

    fn normalize(&mut self) {
        while matches!(self.c.last(), Some(v) if v.is_zero()) {
            self.c.pop();
        }
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.c.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.c.len().max(other.c.len());
        let mut c = vec![BigRational::zero(); n];
        for (i, v) in self.c.iter().enumerate() {
            c[i] += v;
        }
        for (i, v) in other.c.iter().enumerate() {
            c[i] += v;
        }
        Poly::from_coeffs(c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.c.len().max(other.c.len());
        let mut c = vec![BigRational::zero(); n];
        for (i, v) in self.c.iter().enumerate() {
            c[i] += v;
        }
        for (i, v) in other.c.iter().enumerate() {
            c[i] -= v;
        }
        Poly::from_coeffs(c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn scale(&self, s: &BigRational) -> Poly {
        Poly::from_coeffs(self.c.iter().map(|v| v * s).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(BigRational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for v in self.c.iter().rev() {
            acc = acc * x + v;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for v in self.c.iter().rev() {
            acc = acc * x + crate::rational::to_f64(v);
        }
        acc
    }

    /// Exact division by x^k; panics if any lower coefficient is nonzero.
    pub fn div_xpow_exact(&self, k: usize) -> Poly {
        for i in 0..k.min(self.c.len()) {
            assert!(self.c[i].is_zero(), "division by x^{k} is not exact");
        }
        if self.c.len() <= k {
            return Poly::zero();
        }
        Poly::from_coeffs(self.c[k..].to_vec())
    }

    /// Exact division by (1 - x); panics if the remainder (value at 1) is
    /// nonzero.
    pub fn div_one_minus_x_exact(&self) -> Poly {
        // p(x) = (1-x) q(x) => synthetic division from the top:
        // q_{n-1} = -p_n; q_{k-1} = q_k - p_k ... easier forward: with
        // p = sum p_k x^k and q = sum q_k x^k of degree n-1:
        // p_0 = q_0; p_k = q_k - q_{k-1}; p_n = -q_{n-1}
        if self.is_zero() {
            return Poly::zero();
        }
        let n = self.degree();
        let mut q = Vec::with_capacity(n);
        let mut prev = BigRational::zero();
        for k in 0..n {
            let qk = self.coeff(k) + prev;
            q.push(qk.clone());
            prev = qk;
        }
        // consistency: p_n must equal -q_{n-1}
        assert_eq!(self.coeff(n), -prev, "not divisible by (1-x)");
        Poly::from_coeffs(q)
    }
}
