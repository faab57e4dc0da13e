//! Small dense complex-matrix kernel: construction, Hermitian eigenvalues,
//! determinants, partial transpose and the quaternionic embedding.
//!
//! Everything here is sized for the 4x4 .. 12x12 matrices that dominate the
//! sampling loops, so the eigensolver is a self-contained Householder
//! tridiagonalization followed by implicit-shift QL on the real tridiagonal
//! form (phases of the subdiagonal are removed by a diagonal unitary
//! similarity, which leaves the spectrum untouched).

use num_complex::Complex64;
use std::fmt;

/// Absolute tolerance below which an eigenvalue is treated as non-negative.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// Relative tolerance for the Hermitian-symmetry check.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Errors from the matrix kernel.
#[derive(Debug, Clone, PartialEq)]
pub enum MatError {
    /// Input violated the Hermitian symmetry tolerance.
    NonHermitian { defect: f64, scale: f64 },
    /// Operand shapes are inconsistent.
    DimensionMismatch(String),
    /// The QL iteration failed to converge (should not happen for Hermitian input).
    NoConvergence,
    /// A density-matrix invariant (trace, positivity, dims) failed.
    InvalidDensity(String),
}

impl fmt::Display for MatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatError::NonHermitian { defect, scale } => {
                write!(f, "matrix is not Hermitian: defect {defect:.3e} vs scale {scale:.3e}")
            }
            MatError::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            MatError::NoConvergence => write!(f, "eigenvalue iteration did not converge"),
            MatError::InvalidDensity(msg) => write!(f, "invalid density matrix: {msg}"),
        }
    }
}

impl std::error::Error for MatError {}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let r = rows.len();
        let c = if r > 0 { rows[0].len() } else { 0 };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ComplexMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Diagonal square matrix from real entries.
    pub fn diag(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Side length of a square matrix; panics on rectangular input.
    pub fn n(&self) -> usize {
        assert_eq!(self.rows, self.cols, "square matrix expected");
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        let n = self.n();
        (0..n).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// max |M - M^dagger| over all entries (0 for exactly Hermitian input).
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.n();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && self.hermitian_defect() <= HERMITIAN_TOL * self.max_abs().max(f64::MIN_POSITIVE)
    }

    pub fn dagger(&self) -> ComplexMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// self * self^dagger (always Hermitian positive semidefinite).
    pub fn aat(&self) -> ComplexMatrix {
        let mut out = Self::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..self.cols {
                    acc += self[(i, k)] * self[(j, k)].conj();
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
        }
        // force exactly real diagonal
        for i in 0..self.rows {
            out[(i, i)] = Complex64::new(out[(i, i)].re, 0.0);
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigs: Vec<f64>,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.eigs
    }

    pub fn len(&self) -> usize {
        self.eigs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigs.is_empty()
    }

    pub fn min(&self) -> f64 {
        *self.eigs.last().unwrap()
    }

    pub fn max(&self) -> f64 {
        self.eigs[0]
    }

    pub fn sum(&self) -> f64 {
        self.eigs.iter().sum()
    }

    /// Product of all eigenvalues (= determinant for the source matrix).
    pub fn product(&self) -> f64 {
        self.eigs.iter().product()
    }
}

/// Reusable buffers for the eigensolver; one per worker thread keeps the
/// sampling loops allocation-free.
#[derive(Debug, Default, Clone)]
pub struct EigenScratch {
    a: Vec<Complex64>,
    d: Vec<f64>,
    e: Vec<f64>,
    v: Vec<Complex64>,
    w: Vec<Complex64>,
}

/// Bipartite split of a density matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// N x N density matrix with a bipartite factorization n = m_a * m_b.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    dims: (usize, usize),
}

impl DensityMatrix {
    /// Validates trace, Hermitian symmetry and positivity (costs an eigensolve).
    pub fn new(mat: ComplexMatrix, dims: (usize, usize)) -> Result<Self, MatError> {
        if !mat.is_square() || dims.0 * dims.1 != mat.rows() {
            return Err(MatError::InvalidDensity(format!(
                "dims {}x{} incompatible with matrix order {}",
                dims.0,
                dims.1,
                mat.rows()
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(MatError::InvalidDensity(format!("trace {tr} != 1")));
        }
        if !mat.is_hermitian() {
            return Err(MatError::InvalidDensity("not Hermitian".into()));
        }
        let rho = DensityMatrix { mat, dims };
        let spec = hermitian_eigenvalues(&rho.mat)?;
        if spec.min() < -POSITIVITY_TOL {
            return Err(MatError::InvalidDensity(format!("negative eigenvalue {}", spec.min())));
        }
        Ok(rho)
    }

    /// For samplers whose output satisfies the invariants by construction.
    pub fn new_unchecked(mat: ComplexMatrix, dims: (usize, usize)) -> Self {
        debug_assert_eq!(dims.0 * dims.1, mat.rows());
        DensityMatrix { mat, dims }
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn n(&self) -> usize {
        self.mat.rows()
    }
}

/// All eigenvalues of a Hermitian matrix, sorted descending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Spectrum, MatError> {
    let mut scratch = EigenScratch::default();
    hermitian_eigenvalues_with(m, &mut scratch)
}

/// Scratch-reusing variant of [`hermitian_eigenvalues`].
pub fn hermitian_eigenvalues_with(
    m: &ComplexMatrix,
    ws: &mut EigenScratch,
) -> Result<Spectrum, MatError> {
    let n = m.n();
    let scale = m.max_abs();
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL * scale.max(f64::MIN_POSITIVE) {
        return Err(MatError::NonHermitian { defect, scale });
    }
    ws.a.clear();
    ws.a.extend_from_slice(m.data());
    ws.d.resize(n, 0.0);
    ws.e.resize(n, 0.0);
    ws.v.resize(n, Complex64::new(0.0, 0.0));
    ws.w.resize(n, Complex64::new(0.0, 0.0));
    tridiagonalize(&mut ws.a, n, &mut ws.d, &mut ws.e, &mut ws.v, &mut ws.w);
    ql_implicit(&mut ws.d, &mut ws.e, n)?;
    let mut eigs = ws.d.clone();
    eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(Spectrum { eigs })
}

/// Householder reduction of a Hermitian matrix (row-major in `a`) to real
/// tridiagonal (d, e); subdiagonal phases are dropped, which is a diagonal
/// unitary similarity.
fn tridiagonalize(
    a: &mut [Complex64],
    n: usize,
    d: &mut [f64],
    e: &mut [f64],
    v: &mut [Complex64],
    w: &mut [Complex64],
) {
    let idx = |i: usize, j: usize| i * n + j;
    for k in 0..n.saturating_sub(2) {
        // column below the diagonal
        let m = n - k - 1;
        let mut xnorm2 = 0.0;
        for i in 0..m {
            xnorm2 += a[idx(k + 1 + i, k)].norm_sqr();
        }
        let xnorm = xnorm2.sqrt();
        if xnorm == 0.0 {
            e[k + 1] = 0.0;
            continue;
        }
        let x0 = a[idx(k + 1, k)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * xnorm;
        // v = x - alpha e1
        let mut vnorm2 = 0.0;
        for i in 0..m {
            let mut vi = a[idx(k + 1 + i, k)];
            if i == 0 {
                vi -= alpha;
            }
            v[i] = vi;
            vnorm2 += vi.norm_sqr();
        }
        e[k + 1] = xnorm; // |alpha|
        if vnorm2 <= f64::MIN_POSITIVE {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // p = beta * B v over trailing block B = a[k+1.., k+1..]
        for i in 0..m {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..m {
                acc += a[idx(k + 1 + i, k + 1 + j)] * v[j];
            }
            w[i] = acc * beta;
        }
        // K = beta/2 * v^dagger p (real by Hermiticity)
        let mut kdot = Complex64::new(0.0, 0.0);
        for i in 0..m {
            kdot += v[i].conj() * w[i];
        }
        let kk = 0.5 * beta * kdot.re;
        // w = p - K v
        for i in 0..m {
            w[i] -= v[i] * kk;
        }
        // B <- B - v w^dagger - w v^dagger
        for i in 0..m {
            for j in 0..m {
                let upd = v[i] * w[j].conj() + w[i] * v[j].conj();
                a[idx(k + 1 + i, k + 1 + j)] -= upd;
            }
        }
        // store the reduced column
        a[idx(k + 1, k)] = alpha;
    }
    for i in 0..n {
        d[i] = a[idx(i, i)].re;
    }
    e[0] = 0.0;
    for i in 1..n {
        e[i] = a[idx(i, i - 1)].norm();
    }
}

/// Implicit-shift QL on a real symmetric tridiagonal matrix; `e[i]` couples
/// `d[i-1]` and `d[i]` on input (e[0] unused).
fn ql_implicit(d: &mut [f64], e: &mut [f64], n: usize) -> Result<(), MatError> {
    if n <= 1 {
        return Ok(());
    }
    // shift the couplings down: after this e[i] couples d[i] and d[i+1]
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(MatError::NoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = 0.0;
                let _ = f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// LU determinant with partial pivoting.
pub fn determinant(m: &ComplexMatrix) -> Complex64 {
    let n = m.n();
    let mut a = m.data().to_vec();
    let idx = |i: usize, j: usize| i * n + j;
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        // pivot
        let mut piv = k;
        let mut best = a[idx(k, k)].norm_sqr();
        for i in k + 1..n {
            let v = a[idx(i, k)].norm_sqr();
            if v > best {
                best = v;
                piv = i;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != k {
            for j in 0..n {
                a.swap(idx(k, j), idx(piv, j));
            }
            det = -det;
        }
        let pivot = a[idx(k, k)];
        det *= pivot;
        for i in k + 1..n {
            let f = a[idx(i, k)] / pivot;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in k + 1..n {
                let sub = f * a[idx(k, j)];
                a[idx(i, j)] -= sub;
            }
        }
    }
    det
}

/// Partial transpose over one tensor factor. The result stays Hermitian and
/// trace-preserving; the default choice everywhere else in the crate is B.
pub fn partial_transpose(rho: &DensityMatrix, sub: Subsystem) -> ComplexMatrix {
    let (ma, mb) = rho.dims();
    let n = rho.n();
    let m = rho.mat();
    let mut out = ComplexMatrix::zeros(n, n);
    for ia in 0..ma {
        for ja in 0..ma {
            for ib in 0..mb {
                for jb in 0..mb {
                    let (r, c) = (ia * mb + ib, ja * mb + jb);
                    let (rs, cs) = match sub {
                        // transpose the B indices
                        Subsystem::B => (ia * mb + jb, ja * mb + ib),
                        // transpose the A indices
                        Subsystem::A => (ja * mb + ib, ia * mb + jb),
                    };
                    out[(r, c)] = m[(rs, cs)];
                }
            }
        }
    }
    out
}

/// Quaternionic matrix stored as four real component blocks
/// (q = w + x i + y j + z k entrywise).
#[derive(Debug, Clone, PartialEq)]
pub struct QuaternionMatrix {
    rows: usize,
    cols: usize,
    pub w: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
}

impl QuaternionMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QuaternionMatrix {
            rows,
            cols,
            w: vec![0.0; rows * cols],
            x: vec![0.0; rows * cols],
            y: vec![0.0; rows * cols],
            z: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut q = Self::zeros(n, n);
        for i in 0..n {
            q.w[i * n + i] = 1.0;
        }
        q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, q: [f64; 4]) {
        let p = i * self.cols + j;
        self.w[p] = q[0];
        self.x[p] = q[1];
        self.y[p] = q[2];
        self.z[p] = q[3];
    }
}

/// Standard symplectic embedding of a quaternionic matrix into a complex one
/// of twice the size: q = w + xi + yj + zk maps entrywise to
/// [[w+ix, y+iz], [-(y-iz), w-ix]], laid out in 2x2 block form
/// [[A, B], [-conj(B), conj(A)]] with A = W + iX, B = Y + iZ.
/// Eigenvalues of a quaternion-Hermitian matrix appear with even multiplicity.
pub fn quaternion_embed(q: &QuaternionMatrix) -> ComplexMatrix {
    let (r, c) = (q.rows, q.cols);
    let mut out = ComplexMatrix::zeros(2 * r, 2 * c);
    for i in 0..r {
        for j in 0..c {
            let p = i * c + j;
            let a = Complex64::new(q.w[p], q.x[p]);
            let b = Complex64::new(q.y[p], q.z[p]);
            out[(i, j)] = a;
            out[(i, j + c)] = b;
            out[(i + r, j)] = -b.conj();
            out[(i + r, j + c)] = a.conj();
        }
    }
    out
}
