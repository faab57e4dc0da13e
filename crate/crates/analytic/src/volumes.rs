//! Exact state-space volumes (Hilbert-Schmidt and Lebesgue conventions over
//! R, C and H), induced-measure multipliers, prime-factorized reporting,
//! the 2 x m Bloch-radius profile, and the conjecture registry.

use crate::rational::{factorize, format_ratio, gamma_half, gamma_int, rat, to_f64};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exact value coeff * pi^pi_pow * sqrt(surd), with surd square-free.
#[derive(Debug, Clone, PartialEq)]
pub struct PiRational {
    pub coeff: BigRational,
    pub pi_pow: i32,
    pub surd: u64,
}

impl PiRational {
    pub fn rational(coeff: BigRational) -> Self {
        PiRational { coeff, pi_pow: 0, surd: 1 }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.coeff)
            * std::f64::consts::PI.powi(self.pi_pow)
            * (self.surd as f64).sqrt()
    }

    pub fn mul_rational(&self, r: &BigRational) -> PiRational {
        PiRational { coeff: &self.coeff * r, pi_pow: self.pi_pow, surd: self.surd }
    }

    /// Prime factorization (prime -> exponent) of numerator and denominator.
    pub fn factorization(&self) -> (BTreeMap<u64, u32>, BTreeMap<u64, u32>) {
        let num = self.coeff.numer().abs().to_biguint().unwrap();
        let den = self.coeff.denom().abs().to_biguint().unwrap();
        let fac = |n: &BigUint| factorize(n).into_iter().collect::<BTreeMap<_, _>>();
        (fac(&num), fac(&den))
    }

    /// Re-multiplies the factorization and checks it reproduces the value.
    pub fn factorization_roundtrip(&self) -> bool {
        let (nf, df) = self.factorization();
        let rebuild = |m: &BTreeMap<u64, u32>| {
            let mut acc = BigUint::one();
            for (&p, &e) in m {
                acc *= BigUint::from(p).pow(e);
            }
            acc
        };
        let num = self.coeff.numer().abs().to_biguint().unwrap();
        let den = self.coeff.denom().abs().to_biguint().unwrap();
        (num.is_zero() || rebuild(&nf) == num) && rebuild(&df) == den
    }
}

impl fmt::Display for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_ratio(&self.coeff))?;
        if self.surd != 1 {
            write!(f, " sqrt({})", self.surd)?;
        }
        match self.pi_pow {
            0 => Ok(()),
            1 => write!(f, " pi"),
            p => write!(f, " pi^{p}"),
        }
    }
}

/// Accumulator for products of rationals, powers of 2 and pi in half units,
/// and square roots of integers; folds into an exact PiRational.
struct SurdAcc {
    coeff: BigRational,
    two_half: i64,
    pi_half: i64,
    surd: u64,
}

impl SurdAcc {
    fn new() -> Self {
        SurdAcc { coeff: BigRational::one(), two_half: 0, pi_half: 0, surd: 1 }
    }

    fn mul_rat(&mut self, r: BigRational) -> &mut Self {
        self.coeff *= r;
        self
    }

    /// Multiply by Gamma(two_x / 2).
    fn mul_gamma_half(&mut self, two_x: i64) -> &mut Self {
        let (v, s) = gamma_half(two_x);
        self.coeff *= v;
        self.pi_half += s as i64;
        self
    }

    fn div_gamma_half(&mut self, two_x: i64) -> &mut Self {
        let (v, s) = gamma_half(two_x);
        self.coeff /= v;
        self.pi_half -= s as i64;
        self
    }

    /// Multiply by 2^{halves/2}.
    fn mul_two_half(&mut self, halves: i64) -> &mut Self {
        self.two_half += halves;
        self
    }

    /// Multiply by pi^{halves/2}.
    fn mul_pi_half(&mut self, halves: i64) -> &mut Self {
        self.pi_half += halves;
        self
    }

    /// Multiply by sqrt(n).
    fn mul_sqrt(&mut self, n: u64) -> &mut Self {
        self.surd *= n;
        self
    }

    fn finish(&mut self) -> PiRational {
        assert!(self.pi_half % 2 == 0, "pi ended up with a half power");
        let pi_pow = (self.pi_half / 2) as i32;
        // fold integer powers of two into the coefficient
        let whole_twos = self.two_half.div_euclid(2);
        if self.two_half.rem_euclid(2) == 1 {
            self.surd *= 2;
        }
        let mut coeff = self.coeff.clone();
        if whole_twos >= 0 {
            coeff *= BigRational::from_integer(BigInt::from(2u32).pow(whole_twos as u32));
        } else {
            coeff /= BigRational::from_integer(BigInt::from(2u32).pow((-whole_twos) as u32));
        }
        // pull square factors out of the surd
        let mut surd = self.surd;
        let mut p = 2u64;
        while p * p <= surd {
            while surd % (p * p) == 0 {
                surd /= p * p;
                coeff *= BigRational::from_integer(BigInt::from(p));
            }
            p += 1;
        }
        PiRational { coeff, pi_pow, surd }
    }
}

/// Hilbert-Schmidt volume of the N x N complex density matrices.
pub fn vol_hs_complex(n: u32) -> PiRational {
    assert!(n >= 2);
    let ni = n as i64;
    let mut acc = SurdAcc::new();
    acc.mul_sqrt(n as u64);
    acc.mul_two_half(ni * (ni - 1)); // 2^{N(N-1)/2}
    acc.mul_pi_half(ni * (ni - 1)); // pi^{N(N-1)/2}
    for i in 1..=ni {
        acc.mul_gamma_half(2 * i);
    }
    acc.div_gamma_half(2 * ni * ni);
    acc.finish()
}

/// Hilbert-Schmidt volume of the N x N real density matrices (N even),
/// built from the Lebesgue volume and the metric conversion factor
/// sqrt(N) 2^{N(N-1)/4}: each of the N(N-1)/2 off-diagonal coordinates
/// carries HS weight 2, and sqrt(N) accounts for the unit-trace slice.
/// (Checked against the directly computed rebit-disk volume pi/2 at N = 2.)
pub fn vol_hs_real(n: u32) -> PiRational {
    assert!(n >= 2 && n % 2 == 0);
    let ni = n as i64;
    let leb = vol_lebesgue_real(n / 2);
    let mut acc = SurdAcc::new();
    acc.mul_rat(leb.coeff);
    acc.mul_pi_half(2 * leb.pi_pow as i64);
    acc.mul_sqrt(n as u64);
    acc.mul_two_half(ni * (ni - 1) / 2); // 2^{N(N-1)/4} in halves
    acc.finish()
}

/// Lebesgue-convention volume, complex case.
pub fn vol_lebesgue_complex(n: u32) -> PiRational {
    assert!(n >= 2);
    let ni = n as i64;
    let mut num = BigRational::one();
    for i in 1..=(ni - 1) {
        num *= gamma_int(i + 1); // i!
    }
    let coeff = num / gamma_int(ni * ni); // (N^2 - 1)!
    PiRational { coeff, pi_pow: (ni * (ni - 1) / 2) as i32, surd: 1 }
}

/// Lebesgue-convention volume, real case with N = 2l.
pub fn vol_lebesgue_real(l: u32) -> PiRational {
    assert!(l >= 1);
    let li = l as i64;
    let mut coeff = gamma_int(2 * li + 1) / gamma_int(li + 1); // (2l)!/l!
    coeff /= gamma_int(2 * li * li + li); // (2l^2 + l - 1)!
    for i in 1..=(li - 1) {
        coeff *= gamma_int(2 * i + 1); // (2i)!
    }
    coeff /= BigRational::from_integer(BigInt::from(2u32).pow((li * li + li) as u32));
    PiRational { coeff, pi_pow: (li * li) as i32, surd: 1 }
}

/// Lebesgue-convention volume, quaternionic case.
pub fn vol_lebesgue_quaternionic(n: u32) -> PiRational {
    assert!(n >= 2);
    let ni = n as i64;
    let mut coeff = gamma_int(2 * ni - 1); // (2N-2)!
    coeff /= gamma_int(2 * ni * ni - ni); // (2N^2 - N - 1)!
    for i in 1..=(ni - 2) {
        coeff *= gamma_int(2 * i + 1); // (2i)!
    }
    PiRational { coeff, pi_pow: (ni * ni - ni) as i32, surd: 1 }
}

/// Exact induced-measure multiplier for the total volume, N in {4, 6}:
/// the k = 0 case is 1 by construction.
pub fn induced_multiplier(n: u32, k: u32) -> BigRational {
    let ki = k as i64;
    match n {
        4 => {
            // Gamma(16)/Gamma(4) * (1)_k (2)_k (3)_k Gamma(k+4) / Gamma(4k+16)
            let mut v = gamma_int(16) / gamma_int(4);
            for base in 1..=3i64 {
                v *= crate::rational::poch_int(base, k as u64);
            }
            v * gamma_int(ki + 4) / gamma_int(4 * ki + 16)
        }
        6 => {
            let mut v = gamma_int(36) / gamma_int(6);
            for base in 1..=5i64 {
                v *= crate::rational::poch_int(base, k as u64);
            }
            v * gamma_int(ki + 6) / gamma_int(6 * ki + 36)
        }
        _ => panic!("induced multiplier is tabulated for N in {{4, 6}}, got {n}"),
    }
}

/// Number field of a registry system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FieldLabel {
    R,
    C,
    H,
}

impl fmt::Display for FieldLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldLabel::R => write!(f, "R"),
            FieldLabel::C => write!(f, "C"),
            FieldLabel::H => write!(f, "H"),
        }
    }
}

/// Measure identifier for registry entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MeasureLabel {
    Hs,
    /// HS restricted to X-states.
    XStatesHs,
}

impl fmt::Display for MeasureLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureLabel::Hs => write!(f, "HS"),
            MeasureLabel::XStatesHs => write!(f, "X-HS"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Proven,
    StronglySupported,
    ConjecturedHere,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Proven => write!(f, "proven"),
            Status::StronglySupported => write!(f, "strongly-supported"),
            Status::ConjecturedHere => write!(f, "conjectured-here"),
        }
    }
}

/// One separability/PPT-probability value with its provenance.
#[derive(Debug, Clone)]
pub struct ConjectureRecord {
    pub field: FieldLabel,
    pub dims: (u32, u32),
    pub measure: MeasureLabel,
    pub value: PiRational,
    pub status: Status,
    pub source: String,
}

impl ConjectureRecord {
    pub fn value_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

fn rec(
    field: FieldLabel,
    dims: (u32, u32),
    measure: MeasureLabel,
    value: PiRational,
    status: Status,
    source: &str,
) -> ConjectureRecord {
    ConjectureRecord { field, dims, measure, value, status, source: source.to_string() }
}

/// The complete registry of separability/PPT-probability values handled by
/// this crate: proven and strongly supported small-system values, the 2 x m
/// and two-qutrit candidates, and the X-state values (one of which is a
/// pi-rational rather than a plain rational).
pub fn registry() -> Vec<ConjectureRecord> {
    use FieldLabel::*;
    use MeasureLabel::*;
    use Status::*;
    let r = |n: i64, d: i64| PiRational::rational(rat(n, d));
    vec![
        rec(C, (2, 2), Hs, r(8, 33), StronglySupported, "master extension + moment analyses"),
        rec(R, (2, 2), Hs, r(29, 64), Proven, "Lovas-Andai theorem"),
        rec(H, (2, 2), Hs, r(26, 323), StronglySupported, "random-matrix analyses"),
        rec(C, (2, 3), Hs, r(27, 1000), ConjecturedHere, "2.9e9-sample fit"),
        rec(R, (2, 3), Hs, r(860, 6561), ConjecturedHere, "3.53e9-sample fit"),
        rec(C, (2, 4), Hs, r(16, 12375), ConjecturedHere, "3.485e8-sample fit"),
        rec(R, (2, 4), Hs, r(201, 8192), ConjecturedHere, "4.9e8-sample fit"),
        rec(C, (2, 5), Hs, r(125, 4790016), ConjecturedHere, "6.21e8-sample fit"),
        rec(R, (2, 5), Hs, r(29058, 9765625), ConjecturedHere, "6.2e8-sample fit"),
        rec(C, (3, 3), Hs, r(323, 3161088), ConjecturedHere, "1e8-sample fit"),
        rec(C, (2, 2), XStatesHs, r(2, 5), Proven, "X-state closed-form analyses"),
        rec(C, (2, 3), XStatesHs, r(2, 5), StronglySupported, "X-state closed-form analyses"),
        rec(
            R,
            (2, 2),
            XStatesHs,
            PiRational { coeff: rat(16, 3), pi_pow: -2, surd: 1 },
            Proven,
            "two-rebit X closed form",
        ),
        rec(
            R,
            (2, 3),
            XStatesHs,
            PiRational { coeff: rat(16, 3), pi_pow: -2, surd: 1 },
            StronglySupported,
            "equality with the two-rebit X value",
        ),
        rec(
            R,
            (3, 3),
            XStatesHs,
            PiRational { coeff: rat(16, 3), pi_pow: -2, surd: 1 },
            StronglySupported,
            "equality with the two-rebit X value",
        ),
    ]
}

/// Registry lookup by system and measure.
pub fn registry_lookup(
    field: FieldLabel,
    dims: (u32, u32),
    measure: MeasureLabel,
) -> Option<ConjectureRecord> {
    registry()
        .into_iter()
        .find(|r| r.field == field && (r.dims == dims || r.dims == (dims.1, dims.0)) && r.measure == measure)
}

/// Volume of the separable subset: total Lebesgue volume times the
/// conjectured/known probability, fully factorized.
pub fn separable_volume(record: &ConjectureRecord) -> PiRational {
    let n = record.dims.0 * record.dims.1;
    let total = match record.field {
        FieldLabel::C => vol_lebesgue_complex(n),
        FieldLabel::R => vol_lebesgue_real(n / 2),
        FieldLabel::H => vol_lebesgue_quaternionic(n),
    };
    assert_eq!(record.value.pi_pow, 0, "separable volume needs a rational probability");
    total.mul_rational(&record.value.coeff)
}

/// 2 x m Hilbert-Schmidt volume profile over the qubit Bloch radius r:
/// V(r) = V(0) (1 - r^2)^{2(m^2-1)}, anchored so that V(0) is exactly the
/// full HS volume of the 2m-dimensional system.
pub fn milz_strunz_volume(m: u32, r: &BigRational) -> PiRational {
    assert!(m >= 2);
    let v0 = vol_hs_complex(2 * m);
    let one = BigRational::one();
    let factor = &one - r * r;
    let mut pw = BigRational::one();
    for _ in 0..(2 * (m * m - 1)) {
        pw *= &factor;
    }
    v0.mul_rational(&pw)
}

/// JSON export of the registry (schema: system, measure, value as
/// "num/den" with an optional pi_power, status, source, value_num).
pub fn registry_json() -> String {
    let mut out = String::from("[\n");
    let records = registry();
    for (i, r) in records.iter().enumerate() {
        out.push_str(&format!(
            "  {{\"system\": \"{}|{}x{}\", \"measure\": \"{}\", \"value\": \"{}\", \"pi_power\": {}, \"value_num\": {}, \"status\": \"{}\", \"source\": \"{}\"}}{}\n",
            r.field,
            r.dims.0,
            r.dims.1,
            r.measure,
            format_ratio(&r.value.coeff),
            r.value.pi_pow,
            r.value_f64(),
            r.status,
            r.source,
            if i + 1 < records.len() { "," } else { "" }
        ));
    }
    out.push_str("]\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn big(s: &str) -> BigInt {
        s.parse().unwrap()
    }

    #[test]
    fn lebesgue_complex_two_qubits() {
        let v = vol_lebesgue_complex(4);
        assert_eq!(v.pi_pow, 6);
        assert_eq!(v.surd, 1);
        assert_eq!(v.coeff, BigRational::new(BigInt::one(), big("108972864000")));
        let (num, den) = v.factorization();
        assert!(num.is_empty());
        let expect: BTreeMap<u64, u32> =
            [(2, 9), (3, 5), (5, 3), (7, 2), (11, 1), (13, 1)].into_iter().collect();
        assert_eq!(den, expect);
    }

    #[test]
    fn lebesgue_real_two_rebits() {
        let v = vol_lebesgue_real(2);
        assert_eq!(v.pi_pow, 4);
        assert_eq!(v.coeff, BigRational::new(BigInt::one(), big("967680")));
        let (_, den) = v.factorization();
        let expect: BTreeMap<u64, u32> = [(2, 10), (3, 3), (5, 1), (7, 1)].into_iter().collect();
        assert_eq!(den, expect);
    }

    #[test]
    fn lebesgue_quaternionic_two_quaterbits() {
        let v = vol_lebesgue_quaternionic(4);
        assert_eq!(v.pi_pow, 12);
        assert_eq!(v.coeff, BigRational::new(BigInt::one(), big("315071454005160652800000")));
    }

    #[test]
    fn lebesgue_complex_qubit_qutrit() {
        let v = vol_lebesgue_complex(6);
        assert_eq!(v.pi_pow, 15);
        assert_eq!(
            v.coeff,
            BigRational::new(BigInt::one(), big("298991549953302804677854494720000000"))
        );
        let (_, den) = v.factorization();
        let expect: BTreeMap<u64, u32> = [
            (2, 24),
            (3, 12),
            (5, 7),
            (7, 5),
            (11, 3),
            (13, 2),
            (17, 2),
            (19, 1),
            (23, 1),
            (29, 1),
            (31, 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(den, expect);
    }

    #[test]
    fn hs_equals_lebesgue_times_normalization() {
        // complex case: V_HS = sqrt(N) 2^{N(N-1)/2} V_Lebesgue exactly
        // (compared squared, since sqrt(4) folds into the coefficient)
        for n in [4u32, 6] {
            let hs = vol_hs_complex(n);
            let leb = vol_lebesgue_complex(n);
            let factor = BigRational::from_integer(BigInt::from(2u32).pow(n * (n - 1) / 2));
            assert_eq!(hs.pi_pow, leb.pi_pow, "N={n}");
            let lhs = &hs.coeff * &hs.coeff * int(hs.surd as i64);
            let rhs_c = leb.coeff * factor;
            let rhs = &rhs_c * &rhs_c * int(n as i64);
            assert_eq!(lhs, rhs, "N={n}");
        }
        // real case: the off-diagonal count is halved, so the exact factor
        // is sqrt(N) 2^{N(N-1)/4}
        for n in [4u32, 6] {
            let hs = vol_hs_real(n);
            let leb = vol_lebesgue_real(n / 2);
            let direct = leb.to_f64() * (n as f64).sqrt() * 2f64.powf(n as f64 * (n - 1) as f64 / 4.0);
            assert!((hs.to_f64() - direct).abs() <= 1e-15 * direct, "real N={n}");
            assert_eq!(hs.pi_pow, leb.pi_pow, "real N={n}");
        }
    }

    #[test]
    fn rebit_disk_volume_oracle() {
        // the 2x2 real density matrices form a disk of radius 1/2 in the
        // (rho_11, rho_12) plane; with the Tr(drho^2) metric the area
        // element is 2 da db, so V = pi/2. This anchors the real-case
        // normalization independently of any printed formula.
        let v = vol_hs_real(2);
        assert_eq!(v.pi_pow, 1);
        assert_eq!(v.surd, 1);
        assert_eq!(v.coeff, rat(1, 2));
    }

    #[test]
    fn separable_volume_factorizations() {
        // (C,2,2) x 8/33 -> pi^6 / (2^6 3^6 5^3 7^2 11^2 13)
        let r = registry_lookup(FieldLabel::C, (2, 2), MeasureLabel::Hs).unwrap();
        let v = separable_volume(&r);
        let (_, den) = v.factorization();
        let expect: BTreeMap<u64, u32> =
            [(2, 6), (3, 6), (5, 3), (7, 2), (11, 2), (13, 1)].into_iter().collect();
        assert_eq!(den, expect);

        // (R,2,2) x 29/64 -> 29 pi^4 / (2^16 3^3 5 7)
        let r = registry_lookup(FieldLabel::R, (2, 2), MeasureLabel::Hs).unwrap();
        let v = separable_volume(&r);
        let (num, den) = v.factorization();
        assert_eq!(num, [(29, 1)].into_iter().collect());
        let expect: BTreeMap<u64, u32> =
            [(2, 16), (3, 3), (5, 1), (7, 1)].into_iter().collect();
        assert_eq!(den, expect);

        // (C,2,3) x 27/1000 -> pi^15 / (2^27 3^9 5^10 7^5 11^3 13^2 17^2 19 23 29 31)
        let r = registry_lookup(FieldLabel::C, (2, 3), MeasureLabel::Hs).unwrap();
        let v = separable_volume(&r);
        let (_, den) = v.factorization();
        let expect: BTreeMap<u64, u32> = [
            (2, 27),
            (3, 9),
            (5, 10),
            (7, 5),
            (11, 3),
            (13, 2),
            (17, 2),
            (19, 1),
            (23, 1),
            (29, 1),
            (31, 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(den, expect);
    }

    #[test]
    fn induced_multiplier_unit_at_k0() {
        assert_eq!(induced_multiplier(4, 0), BigRational::one());
        assert_eq!(induced_multiplier(6, 0), BigRational::one());
    }

    #[test]
    fn induced_multiplier_cross_check() {
        // independent big-integer Gamma evaluation of the same ratio
        for k in 1..=3u32 {
            let ki = k as i64;
            let direct = induced_multiplier(4, k);
            let alt = int(217_945_728_000)
                * (gamma_int(1 + ki) / gamma_int(1))
                * (gamma_int(2 + ki) / gamma_int(2))
                * (gamma_int(3 + ki) / gamma_int(3))
                * gamma_int(ki + 4)
                / gamma_int(4 * (ki + 4));
            assert_eq!(direct, alt, "k={k}");
        }
    }

    #[test]
    fn milz_strunz_profile() {
        // r = 0 at m = 2 is exactly the N = 4 HS volume
        let v0 = milz_strunz_volume(2, &BigRational::zero());
        assert_eq!(v0, vol_hs_complex(4));
        // r = 1 vanishes
        let v1 = milz_strunz_volume(2, &BigRational::one());
        assert!(v1.coeff.is_zero());
        // m = 3, r = 1/2: V(0) (3/4)^16
        let v = milz_strunz_volume(3, &rat(1, 2));
        let expect = vol_hs_complex(6).mul_rational(&rat(3, 4).pow(16));
        assert_eq!(v, expect);
    }

    #[test]
    fn registry_values_in_unit_interval() {
        for r in registry() {
            let v = r.value_f64();
            assert!(v > 0.0 && v < 1.0, "{:?} -> {v}", (r.field, r.dims, r.measure));
            assert!(r.value.factorization_roundtrip());
        }
    }

    #[test]
    fn registry_lookups() {
        let v = registry_lookup(FieldLabel::C, (2, 3), MeasureLabel::Hs).unwrap();
        assert_eq!(v.value.coeff, rat(27, 1000));
        let v = registry_lookup(FieldLabel::R, (2, 3), MeasureLabel::Hs).unwrap();
        assert_eq!(v.value.coeff, rat(860, 6561));
        let v = registry_lookup(FieldLabel::C, (3, 3), MeasureLabel::Hs).unwrap();
        assert_eq!(v.value.coeff, rat(323, 3161088));
        // the X-state pi-rational
        let v = registry_lookup(FieldLabel::R, (2, 2), MeasureLabel::XStatesHs).unwrap();
        assert_eq!(v.value.pi_pow, -2);
        assert!((v.value_f64() - 0.54038).abs() < 1e-5);
    }

    #[test]
    fn json_export_schema() {
        let j = registry_json();
        assert!(j.contains("\"system\": \"C|2x2\""));
        assert!(j.contains("\"value\": \"8/33\""));
        assert!(j.contains("\"status\": \"proven\""));
        assert!(j.trim_end().ends_with(']'));
        assert_eq!(j.matches("{\"system\"").count(), registry().len());
    }
}
