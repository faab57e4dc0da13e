//! Golden-ratio-generalized quasirandom (Korobov) sequence.
//!
//! Points are (alpha0 + n * alpha) mod 1 with alpha_i = phi_s^{-i} and phi_s
//! the real root of x^{s+1} = x + 1 in (1, 2). The n-th point is computed
//! directly from n (no accumulation), with a compensated product so that
//! index-1e9 points are still accurate to ~1e-15 per coordinate.

use crate::normal::inv_phi;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum QrError {
    /// to_normal was called on u exactly 0 or 1 (or outside [0,1]).
    DomainError(f64),
}

impl fmt::Display for QrError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QrError::DomainError(u) => write!(f, "inverse normal CDF undefined at u = {u}"),
        }
    }
}

impl std::error::Error for QrError {}

/// Smallest real root > 1 of x^{s+1} = x + 1, by Newton from x0 = 2.
pub fn solve_phi(s: usize) -> f64 {
    let sp = (s + 1) as i32;
    let mut x: f64 = 2.0;
    for _ in 0..200 {
        let f = x.powi(sp) - x - 1.0;
        if f.abs() <= 1e-15 {
            break;
        }
        let df = sp as f64 * x.powi(sp - 1) - 1.0;
        x -= f / df;
    }
    x
}

/// State of an s-dimensional sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct QrState {
    s: usize,
    phi: f64,
    alpha: Vec<f64>,
    alpha0: f64,
    n: u64,
}

impl QrState {
    /// alpha0 is typically 0 or 1/2; 1/2 is the symmetric variant preferred
    /// by the sequence's author and the default elsewhere in this crate.
    pub fn new(s: usize, alpha0: f64) -> Self {
        assert!(s >= 1);
        let phi = solve_phi(s);
        let mut alpha = Vec::with_capacity(s);
        let mut a = 1.0;
        for _ in 0..s {
            a /= phi;
            alpha.push(a);
        }
        QrState { s, phi, alpha, alpha0, n: 0 }
    }

    pub fn dim(&self) -> usize {
        self.s
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    /// Index of the next point to be emitted.
    pub fn index(&self) -> u64 {
        self.n
    }

    /// Repositions the state so the next emission is index n0 (O(1)).
    pub fn skip_to(&mut self, n0: u64) {
        self.n = n0;
    }

    /// Writes the next point into `out` and advances the index.
    pub fn next_point_into(&mut self, out: &mut [f64]) {
        assert_eq!(out.len(), self.s);
        let nf = self.n as f64;
        for (o, &a) in out.iter_mut().zip(&self.alpha) {
            // n*a split into rounded product + exact residual (FMA), so the
            // fractional part keeps full precision at large n
            let p = nf * a;
            let err = nf.mul_add(a, -p);
            let mut x = (p - p.floor()) + err + self.alpha0;
            x -= x.floor();
            if x >= 1.0 {
                x -= 1.0;
            }
            if x < 0.0 {
                x += 1.0;
            }
            *o = x;
        }
        self.n += 1;
    }

    pub fn next_point(&mut self) -> Vec<f64> {
        let mut v = vec![0.0; self.s];
        self.next_point_into(&mut v);
        v
    }
}

/// Inverse normal CDF with strict endpoint rejection: a silent clamp would
/// bias the tails, so u in {0, 1} is an error the caller must handle.
pub fn to_normal(u: f64) -> Result<f64, QrError> {
    if !(u > 0.0 && u < 1.0) {
        return Err(QrError::DomainError(u));
    }
    Ok(inv_phi(u))
}
