//! Test-only oracles, independent of the library's eigensolver path:
//! double-double arithmetic, Faddeev-LeVerrier characteristic polynomials
//! and Durand-Kerner root finding.

#![allow(dead_code)]

use num_complex::Complex64;
use seplab_core::matcore::ComplexMatrix;

/// Double-double value (~31 significant digits).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul(Dd::from(q1)));
        let q2 = r.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    pub fn scale(self, s: f64) -> Dd {
        self.mul(Dd::from(s))
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> f64 {
        self.to_f64().abs()
    }
}

/// Complex double-double.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd { re: Dd::ZERO, im: Dd::ZERO };

    pub fn from_c64(z: Complex64) -> Cdd {
        Cdd { re: Dd::from(z.re), im: Dd::from(z.im) }
    }

    pub fn from_f64(x: f64, y: f64) -> Cdd {
        Cdd { re: Dd::from(x), im: Dd::from(y) }
    }

    pub fn add(self, o: Cdd) -> Cdd {
        Cdd { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    pub fn sub(self, o: Cdd) -> Cdd {
        Cdd { re: self.re.sub(o.re), im: self.im.sub(o.im) }
    }

    pub fn mul(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    pub fn div(self, o: Cdd) -> Cdd {
        let denom = o.re.mul(o.re).add(o.im.mul(o.im));
        let num = self.mul(Cdd { re: o.re, im: o.im.neg() });
        Cdd { re: num.re.div(denom), im: num.im.div(denom) }
    }

    pub fn norm(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// Characteristic polynomial coefficients by Faddeev-LeVerrier in
/// double-double arithmetic. Returns c with
/// p(z) = z^n - c[0] z^{n-1} - c[1] z^{n-2} - ... - c[n-1].
pub fn char_poly_dd(m: &ComplexMatrix) -> Vec<Cdd> {
    let n = m.n();
    let a: Vec<Cdd> = m.data().iter().map(|&z| Cdd::from_c64(z)).collect();
    let idx = |i: usize, j: usize| i * n + j;
    let mut mk = a.clone(); // M_1 = A
    let mut coeffs = Vec::with_capacity(n);
    let trace = |mat: &[Cdd]| {
        let mut t = Cdd::ZERO;
        for i in 0..n {
            t = t.add(mat[idx(i, i)]);
        }
        t
    };
    let mut ck = trace(&mk); // c_1
    coeffs.push(ck);
    for k in 2..=n {
        // M_k = A (M_{k-1} - c_{k-1} I)
        let mut shifted = mk.clone();
        for i in 0..n {
            shifted[idx(i, i)] = shifted[idx(i, i)].sub(ck);
        }
        let mut next = vec![Cdd::ZERO; n * n];
        for i in 0..n {
            for l in 0..n {
                let ail = a[idx(i, l)];
                for j in 0..n {
                    next[idx(i, j)] = next[idx(i, j)].add(ail.mul(shifted[idx(l, j)]));
                }
            }
        }
        mk = next;
        ck = trace(&mk).div(Cdd::from_f64(k as f64, 0.0));
        coeffs.push(ck);
    }
    coeffs
}

/// Durand-Kerner simultaneous root iteration on a monic polynomial given in
/// the Faddeev-LeVerrier sign convention above. Double-double precision.
pub fn roots_dd(coeffs: &[Cdd]) -> Vec<Complex64> {
    let n = coeffs.len();
    // p(z) = z^n - sum c_k z^{n-1-k}; Horner form
    let eval = |z: Cdd| {
        let mut p = Cdd::from_f64(1.0, 0.0);
        for &c in coeffs {
            p = p.mul(z).sub(c);
        }
        p
    };
    let radius = 1.0
        + coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm().powf(1.0 / (k + 1) as f64))
            .fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Cdd> = (0..n)
        .map(|j| {
            let g = seed.powu(j as u32 + 1) * radius;
            Cdd::from_f64(g.re, g.im)
        })
        .collect();
    for _ in 0..300 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut denom = Cdd::from_f64(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom = denom.mul(z[i].sub(z[j]));
                }
            }
            let delta = eval(z[i]).div(denom);
            z[i] = z[i].sub(delta);
            moved = moved.max(delta.norm());
        }
        if moved < 1e-28 * radius {
            break;
        }
    }
    z.iter().map(|c| c.to_c64()).collect()
}

/// Real eigenvalue oracle for Hermitian matrices: char poly + Durand-Kerner,
/// sorted descending.
pub fn hermitian_eigen_oracle(m: &ComplexMatrix) -> Vec<f64> {
    let coeffs = char_poly_dd(m);
    let mut roots: Vec<f64> = roots_dd(&coeffs).iter().map(|z| z.re).collect();
    roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
    roots
}

/// Fixed-seed random Hermitian matrix with entries of order `scale`.
pub fn random_hermitian(rng: &mut seplab_core::rng::CounterRng, n: usize, scale: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        let d = rng.normal() * scale;
        m[(i, i)] = Complex64::new(d, 0.0);
        for j in i + 1..n {
            let z = Complex64::new(rng.normal(), rng.normal()) * (scale * 0.5);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}
