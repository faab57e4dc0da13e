//! Random density-matrix generation under Hilbert-Schmidt, induced-k, Bures
//! and interpolated measures for real, complex and quaternionic fields, plus
//! X-state samplers and Haar unitaries.

use crate::matcore::{quaternion_embed, ComplexMatrix, DensityMatrix, QuaternionMatrix};
use crate::qrseq::QrState;
use crate::rng::CounterRng;
use num_complex::Complex64;
use std::fmt;

/// Number field of the Ginibre entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
    Quaternion,
}

impl Field {
    /// Independent standard normals per matrix entry.
    pub fn reals_per_entry(&self) -> usize {
        match self {
            Field::Real => 1,
            Field::Complex => 2,
            Field::Quaternion => 4,
        }
    }
}

/// Measure family on the density matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// Hilbert-Schmidt (flat) measure; identical to Induced(0).
    HilbertSchmidt,
    /// Induced measure of order k: the density picks up a det(rho)^k factor
    /// relative to HS. The complex flat case traces over an N-dimensional
    /// environment, the real one over N+1, so the Ginibre block has
    /// N + k columns over C and N + 1 + 2k over R.
    Induced(i64),
    /// Bures (minimal monotone) measure; identical to Interpolated(1/2).
    Bures,
    /// rho = (yI + xU) A A^dag (yI + xU^dag) normalized, y = 1 - x.
    Interpolated(f64),
}

/// Identifies an ensemble of random density matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureSpec {
    pub field: Field,
    pub dims: (usize, usize),
    pub family: Family,
}

impl MeasureSpec {
    pub fn new(field: Field, dims: (usize, usize), family: Family) -> Self {
        MeasureSpec { field, dims, family }
    }

    /// Total dimension N = m_A * m_B.
    pub fn n(&self) -> usize {
        self.dims.0 * self.dims.1
    }

    pub fn validate(&self) -> Result<(), EnsembleError> {
        let n = self.n() as i64;
        if n < 2 {
            return Err(EnsembleError::InvalidSpec("total dimension must be >= 2".into()));
        }
        match self.family {
            Family::Induced(k) => {
                let cols = ginibre_cols(self.field, n, k);
                if cols < self.dims.0 as i64 || cols < 1 {
                    return Err(EnsembleError::InvalidSpec(format!(
                        "induced k = {k} leaves the Ginibre block with too few columns"
                    )));
                }
            }
            Family::Interpolated(x) => {
                if !(0.0..=1.0).contains(&x) {
                    return Err(EnsembleError::InvalidSpec(format!(
                        "interpolation parameter {x} outside [0, 1]"
                    )));
                }
                if self.field == Field::Quaternion {
                    return Err(EnsembleError::InvalidSpec(
                        "interpolated/Bures sampling is defined here for R and C only".into(),
                    ));
                }
            }
            Family::Bures => {
                if self.field == Field::Quaternion {
                    return Err(EnsembleError::InvalidSpec(
                        "interpolated/Bures sampling is defined here for R and C only".into(),
                    ));
                }
            }
            Family::HilbertSchmidt => {}
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EnsembleError {
    InvalidSpec(String),
    /// A quasirandom stream ran out of coordinates for the requested draw.
    StreamExhausted { requested: usize, available: usize },
    /// The draw produced no usable matrix (e.g. an identically-zero Ginibre
    /// block, as the alpha0 = 1/2 sequence emits at index 0). Skip it.
    DegenerateDraw,
}

impl fmt::Display for EnsembleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnsembleError::InvalidSpec(msg) => write!(f, "invalid measure spec: {msg}"),
            EnsembleError::StreamExhausted { requested, available } => write!(
                f,
                "quasirandom point exhausted: requested {requested} normals, {available} left"
            ),
            EnsembleError::DegenerateDraw => write!(f, "degenerate draw (zero trace)"),
        }
    }
}

impl std::error::Error for EnsembleError {}

/// Normal-variate source shared by all samplers.
pub trait NormalSource {
    fn fill_normals(&mut self, out: &mut [f64]) -> Result<(), EnsembleError>;
    /// Uniform in (0, 1); used by the X-state sampler.
    fn uniform(&mut self) -> Result<f64, EnsembleError>;
}

/// Quasirandom stream: each point of the s-dimensional sequence supplies the
/// normals for exactly one sample. Points containing a coordinate that is
/// exactly 0 are rejected (the inverse CDF is undefined there) and counted.
#[derive(Debug, Clone)]
pub struct QuasiStream {
    state: QrState,
    buf: Vec<f64>,
    pos: usize,
    rejected: u64,
}

impl QuasiStream {
    pub fn new(s: usize, alpha0: f64, start_index: u64) -> Self {
        let mut state = QrState::new(s, alpha0);
        state.skip_to(start_index);
        QuasiStream { state, buf: vec![0.0; s], pos: s, rejected: 0 }
    }

    pub fn rejected(&self) -> u64 {
        self.rejected
    }

    pub fn index(&self) -> u64 {
        self.state.index()
    }

    /// Advances to the next sequence point, skipping rejected ones.
    fn refill(&mut self) {
        loop {
            self.state.next_point_into(&mut self.buf);
            if self.buf.iter().all(|&u| u > 0.0 && u < 1.0) {
                self.pos = 0;
                return;
            }
            self.rejected += 1;
        }
    }

    /// Discards the rest of the current point so the next draw starts fresh.
    pub fn align(&mut self) {
        self.pos = self.buf.len();
    }
}

impl NormalSource for QuasiStream {
    fn fill_normals(&mut self, out: &mut [f64]) -> Result<(), EnsembleError> {
        if self.pos >= self.buf.len() {
            self.refill();
        }
        let available = self.buf.len() - self.pos;
        if out.len() > available {
            return Err(EnsembleError::StreamExhausted { requested: out.len(), available });
        }
        for v in out.iter_mut() {
            *v = crate::normal::inv_phi(self.buf[self.pos]);
            self.pos += 1;
        }
        Ok(())
    }

    fn uniform(&mut self) -> Result<f64, EnsembleError> {
        if self.pos >= self.buf.len() {
            self.refill();
        }
        let u = self.buf[self.pos];
        self.pos += 1;
        Ok(u)
    }
}

/// Pseudo- or quasirandom source behind one enum, so sampler code is generic.
#[derive(Debug, Clone)]
pub enum RandomStream {
    Pseudo(CounterRng),
    Quasi(QuasiStream),
}

impl RandomStream {
    pub fn pseudo(seed: u64, stream: u64) -> Self {
        RandomStream::Pseudo(CounterRng::new(seed, stream))
    }

    pub fn quasi(s: usize, alpha0: f64, start_index: u64) -> Self {
        RandomStream::Quasi(QuasiStream::new(s, alpha0, start_index))
    }
}

impl NormalSource for RandomStream {
    fn fill_normals(&mut self, out: &mut [f64]) -> Result<(), EnsembleError> {
        match self {
            RandomStream::Pseudo(r) => {
                r.fill_normals(out);
                Ok(())
            }
            RandomStream::Quasi(q) => q.fill_normals(out),
        }
    }

    fn uniform(&mut self) -> Result<f64, EnsembleError> {
        match self {
            RandomStream::Pseudo(r) => Ok(r.uniform()),
            RandomStream::Quasi(q) => q.uniform(),
        }
    }
}

impl NormalSource for CounterRng {
    fn fill_normals(&mut self, out: &mut [f64]) -> Result<(), EnsembleError> {
        CounterRng::fill_normals(self, out);
        Ok(())
    }

    fn uniform(&mut self) -> Result<f64, EnsembleError> {
        Ok(CounterRng::uniform(self))
    }
}

/// Ginibre matrix: i.i.d. standard normal entries over the field. The
/// quaternionic case is produced directly in its complex embedding, so a
/// rows x cols draw comes back as 2*rows x 2*cols.
pub fn ginibre<S: NormalSource>(
    stream: &mut S,
    field: Field,
    rows: usize,
    cols: usize,
) -> Result<ComplexMatrix, EnsembleError> {
    assert!(rows >= 1 && cols >= 1);
    match field {
        Field::Real => {
            let mut buf = vec![0.0; rows * cols];
            stream.fill_normals(&mut buf)?;
            let mut m = ComplexMatrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m[(i, j)] = Complex64::new(buf[i * cols + j], 0.0);
                }
            }
            Ok(m)
        }
        Field::Complex => {
            let mut buf = vec![0.0; 2 * rows * cols];
            stream.fill_normals(&mut buf)?;
            let mut m = ComplexMatrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    let p = 2 * (i * cols + j);
                    m[(i, j)] = Complex64::new(buf[p], buf[p + 1]);
                }
            }
            Ok(m)
        }
        Field::Quaternion => {
            let mut buf = vec![0.0; 4 * rows * cols];
            stream.fill_normals(&mut buf)?;
            let mut q = QuaternionMatrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    let p = 4 * (i * cols + j);
                    q.set(i, j, [buf[p], buf[p + 1], buf[p + 2], buf[p + 3]]);
                }
            }
            Ok(quaternion_embed(&q))
        }
    }
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix via twice-applied
/// modified Gram-Schmidt; R's diagonal is positive by construction, which is
/// exactly the phase convention that makes Q Haar.
pub fn haar_unitary<S: NormalSource>(stream: &mut S, n: usize) -> Result<ComplexMatrix, EnsembleError> {
    let a = ginibre(stream, Field::Complex, n, n)?;
    Ok(gram_schmidt(&a))
}

/// Haar-distributed real orthogonal matrix.
pub fn haar_orthogonal<S: NormalSource>(
    stream: &mut S,
    n: usize,
) -> Result<ComplexMatrix, EnsembleError> {
    let a = ginibre(stream, Field::Real, n, n)?;
    Ok(gram_schmidt(&a))
}

fn gram_schmidt(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.n();
    let mut q = a.clone();
    for j in 0..n {
        // two orthogonalization passes for stability
        for _pass in 0..2 {
            for i in 0..j {
                let mut r = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    r += q[(k, i)].conj() * q[(k, j)];
                }
                for k in 0..n {
                    let sub = r * q[(k, i)];
                    q[(k, j)] -= sub;
                }
            }
        }
        let mut norm2 = 0.0;
        for k in 0..n {
            norm2 += q[(k, j)].norm_sqr();
        }
        let inv = 1.0 / norm2.sqrt();
        for k in 0..n {
            q[(k, j)] *= inv;
        }
    }
    q
}

fn normalize_to_density(
    m: ComplexMatrix,
    dims: (usize, usize),
) -> Result<DensityMatrix, EnsembleError> {
    let tr = m.trace().re;
    if !(tr > 1e-280) {
        return Err(EnsembleError::DegenerateDraw);
    }
    Ok(DensityMatrix::new_unchecked(m.scale(1.0 / tr), dims))
}

/// Random density matrix under the requested measure.
///
/// The quaternionic field is supported for HS/induced families and comes back
/// as the complex embedding (a 2N x 2N matrix with doubled spectrum), tagged
/// with dims (1, 2N).
pub fn sample_density<S: NormalSource>(
    stream: &mut S,
    spec: &MeasureSpec,
) -> Result<DensityMatrix, EnsembleError> {
    spec.validate()?;
    let n = spec.n();
    match spec.family {
        Family::HilbertSchmidt => sample_wishart(stream, spec, n),
        Family::Induced(_) => sample_wishart(stream, spec, n),
        Family::Bures => sample_interpolated(stream, spec, n, 0.5),
        Family::Interpolated(x) => sample_interpolated(stream, spec, n, x),
    }
}

/// Ginibre column count for the induced-k measure over each field: flat
/// (k = 0) needs K = N over C but K = N + 1 over R, and each extra det
/// power costs beta-dependent columns (2/beta more per unit k).
fn ginibre_cols(field: Field, n: i64, k: i64) -> i64 {
    match field {
        Field::Complex | Field::Quaternion => n + k,
        Field::Real => n + 1 + 2 * k,
    }
}

fn sample_wishart<S: NormalSource>(
    stream: &mut S,
    spec: &MeasureSpec,
    n: usize,
) -> Result<DensityMatrix, EnsembleError> {
    let k = if let Family::Induced(k) = spec.family { k } else { 0 };
    let cols = ginibre_cols(spec.field, n as i64, k) as usize;
    let a = ginibre(stream, spec.field, n, cols)?;
    let rho = a.aat();
    let dims = if spec.field == Field::Quaternion { (1, 2 * n) } else { spec.dims };
    normalize_to_density(rho, dims)
}

fn sample_interpolated<S: NormalSource>(
    stream: &mut S,
    spec: &MeasureSpec,
    n: usize,
    x: f64,
) -> Result<DensityMatrix, EnsembleError> {
    // x = 0 is the HS path (and stays on it exactly); x = 1/2 is Bures. The
    // real-field Bures/interpolated construction takes an N x (N+1) Ginibre
    // block and a Haar orthogonal U.
    if x == 0.0 {
        let hs = MeasureSpec::new(spec.field, spec.dims, Family::HilbertSchmidt);
        return sample_wishart(stream, &hs, n);
    }
    let y = 1.0 - x;
    let (a, u) = match spec.field {
        Field::Complex => {
            let a = ginibre(stream, Field::Complex, n, n)?;
            let u = haar_unitary(stream, n)?;
            (a, u)
        }
        Field::Real => {
            let a = ginibre(stream, Field::Real, n, n + 1)?;
            let u = haar_orthogonal(stream, n)?;
            (a, u)
        }
        Field::Quaternion => unreachable!("rejected by validate"),
    };
    // M = (yI + xU) A
    let m = a.scale(y).add(&u.matmul(&a).scale(x));
    normalize_to_density(m.aat(), spec.dims)
}

/// X-state sampler: support on the diagonal plus anti-diagonal only,
/// distributed per flat Lebesgue measure on the independent real parameters
/// restricted to positive matrices. Concretely: the positivity region over a
/// fixed diagonal is a product of disks (complex) or intervals (real) for
/// the anti-diagonal entries, so the diagonal's marginal density on the
/// simplex is proportional to that region's volume. The diagonal is drawn by
/// rejection against its AM-GM volume bound, then each anti-diagonal entry
/// uniformly on its disk/interval. Induced(k) reweights by det(rho)^k via a
/// second rejection against the global bound det <= n^{-n}.
pub fn sample_x_state<S: NormalSource>(
    stream: &mut S,
    spec: &MeasureSpec,
) -> Result<DensityMatrix, EnsembleError> {
    let n = spec.n();
    if !matches!(n, 4 | 6 | 9) {
        return Err(EnsembleError::InvalidSpec(format!("unsupported X-state dimension {n}")));
    }
    let k = match spec.family {
        Family::HilbertSchmidt => 0,
        Family::Induced(k) if k >= 0 => k as u32,
        _ => {
            return Err(EnsembleError::InvalidSpec(
                "X-state sampling supports HS and induced(k >= 0) measures".into(),
            ))
        }
    };
    if spec.field == Field::Quaternion {
        return Err(EnsembleError::InvalidSpec("X-states are sampled over R and C".into()));
    }
    let det_bound = (n as f64).powi(-(n as i32));
    let pairs = n / 2;
    // the paired diagonal product is maximized when all 2*pairs paired
    // entries equal 1/(2*pairs)
    let m_paired = (2 * pairs) as f64;
    let pair_prod_max = m_paired.powi(-2 * pairs as i32);
    let mut diag = vec![0.0; n];
    let mut off = vec![Complex64::new(0.0, 0.0); pairs];
    loop {
        // diagonal: flat Dirichlet via normalized exponentials...
        let mut sum = 0.0;
        for d in diag.iter_mut() {
            *d = -stream.uniform()?.ln();
            sum += *d;
        }
        for d in diag.iter_mut() {
            *d /= sum;
        }
        // ...weighted by the positivity-region volume: prod of disk areas
        // (complex) or interval lengths (real) across anti-diagonal pairs
        let mut pair_prod = 1.0;
        for i in 0..pairs {
            pair_prod *= diag[i] * diag[n - 1 - i];
        }
        let accept = match spec.field {
            Field::Complex => pair_prod / pair_prod_max,
            Field::Real => (pair_prod / pair_prod_max).sqrt(),
            Field::Quaternion => unreachable!(),
        };
        if stream.uniform()? >= accept {
            continue;
        }
        let mut det = 1.0;
        for i in 0..pairs {
            let j = n - 1 - i;
            let rmax = (diag[i] * diag[j]).sqrt();
            let c = match spec.field {
                Field::Real => Complex64::new(rmax * (2.0 * stream.uniform()? - 1.0), 0.0),
                Field::Complex => {
                    // uniform on the disk of radius rmax
                    let r = rmax * stream.uniform()?.sqrt();
                    let th = 2.0 * std::f64::consts::PI * stream.uniform()?;
                    Complex64::from_polar(r, th)
                }
                Field::Quaternion => unreachable!(),
            };
            off[i] = c;
            det *= diag[i] * diag[j] - c.norm_sqr();
        }
        if n % 2 == 1 {
            det *= diag[n / 2];
        }
        if k > 0 {
            // accept with probability (det / det_bound)^k
            let ratio = (det / det_bound).powi(k as i32);
            if stream.uniform()? >= ratio {
                continue;
            }
        }
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(diag[i], 0.0);
        }
        for i in 0..pairs {
            let j = n - 1 - i;
            m[(i, j)] = off[i];
            m[(j, i)] = off[i].conj();
        }
        return Ok(DensityMatrix::new_unchecked(m, spec.dims));
    }
}
