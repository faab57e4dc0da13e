//! Exact-rational helpers: factorials, Pochhammer symbols, half-integer
//! Gamma values with explicit sqrt(pi) bookkeeping.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Gamma(n) for a positive integer n, as a rational.
pub fn gamma_int(n: i64) -> BigRational {
    assert!(n >= 1, "gamma_int needs n >= 1, got {n}");
    BigRational::from_integer(factorial(n as u64 - 1))
}

/// Rising factorial (x)_n for rational x.
pub fn pochhammer(x: &BigRational, n: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc *= term.clone();
        term += BigRational::one();
    }
    acc
}

/// Rising factorial for an integer base.
pub fn poch_int(x: i64, n: u64) -> BigRational {
    pochhammer(&int(x), n)
}

/// Gamma at a half-integer or integer argument two_x/2 > 0, returned as
/// (rational, number of sqrt(pi) factors in {0, 1}):
/// Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!).
pub fn gamma_half(two_x: i64) -> (BigRational, u32) {
    assert!(two_x > 0, "gamma argument must be positive, got {two_x}/2");
    if two_x % 2 == 0 {
        (gamma_int(two_x / 2), 0)
    } else {
        let n = (two_x - 1) / 2; // two_x = 2n + 1
        let num = factorial(2 * n as u64);
        let den = BigInt::from(4u32).pow(n as u32) * factorial(n as u64);
        (BigRational::new(num, den), 1)
    }
}

/// Product of Gamma factors at half-integer arguments (numerator terms) over
/// another such product (denominator terms); the sqrt(pi) factors must
/// cancel, which is asserted.
pub fn gamma_half_ratio(num_two_x: &[i64], den_two_x: &[i64]) -> BigRational {
    let mut value = BigRational::one();
    let mut sqrt_pi: i64 = 0;
    for &t in num_two_x {
        let (v, s) = gamma_half(t);
        value *= v;
        sqrt_pi += s as i64;
    }
    for &t in den_two_x {
        let (v, s) = gamma_half(t);
        value /= v;
        sqrt_pi -= s as i64;
    }
    assert_eq!(sqrt_pi, 0, "sqrt(pi) factors do not cancel");
    value
}

pub fn to_f64(x: &BigRational) -> f64 {
    // exact conversion path: split into numer/denom doubles with scaling
    let num = x.numer();
    let den = x.denom();
    match (num.to_f64(), den.to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() && d != 0.0 => n / d,
        _ => {
            // fall back to bit-shifted division for huge operands
            let neg = x.is_negative();
            let mut n = num.abs().to_biguint().unwrap();
            let mut d = den.abs().to_biguint().unwrap();
            let shift_n = n.bits().saturating_sub(64);
            let shift_d = d.bits().saturating_sub(64);
            n >>= shift_n;
            d >>= shift_d;
            let v = n.to_f64().unwrap() / d.to_f64().unwrap()
                * 2f64.powi(shift_n as i32 - shift_d as i32);
            if neg {
                -v
            } else {
                v
            }
        }
    }
}

/// Canonical "num/den" rendering.
pub fn format_ratio(x: &BigRational) -> String {
    if x.denom() == &BigInt::one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Trial-division factorization of a positive big integer; the values in
/// this crate are built from small factorials so every prime is small.
pub fn factorize(n: &BigUint) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut rest = n.clone();
    let one = BigUint::one();
    if rest <= one {
        return out;
    }
    let mut p = 2u64;
    while rest > one {
        if p > 2_000_000 {
            panic!("factor beyond trial-division range: residual {rest}");
        }
        let bp = BigUint::from(p);
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p = if p == 2 { 3 } else { p + 2 };
        // residual prime shortcut
        if &bp * &bp > rest && rest > one {
            let r = rest.to_u64().expect("residual prime fits in u64");
            out.push((r, 1));
            break;
        }
    }
    out
}
