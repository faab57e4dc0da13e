//! Classification predicates on density matrices: PPT, the determinantal
//! comparison det(rho^PT) > det(rho), and separability-from-spectrum.

use crate::matcore::{
    hermitian_eigenvalues_with, partial_transpose, DensityMatrix, EigenScratch, MatError,
    Spectrum, Subsystem, POSITIVITY_TOL,
};

/// Outcome of classifying one density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub ppt: bool,
    /// det(rho^PT) > det(rho), both as signed reals.
    pub det_pt_greater: bool,
    /// Certified separable by the 2 x m eigenvalue-only criterion.
    pub spectrum_separable: bool,
    pub min_pt_eigenvalue: f64,
    /// Eigenvalues of the partial transpose below -POSITIVITY_TOL.
    pub negative_pt_count: usize,
    pub det_rho: f64,
    pub det_pt: f64,
}

/// Reusable classification buffers (one per worker thread).
#[derive(Debug, Default)]
pub struct ClassifyScratch {
    eig: EigenScratch,
}

/// Classifies `rho`: partial transpose over B, both spectra, determinants via
/// eigenvalue products, and the spectrum test when the state is 2 x m.
pub fn classify(rho: &DensityMatrix) -> Result<Verdict, MatError> {
    let mut ws = ClassifyScratch::default();
    classify_with(rho, &mut ws)
}

/// Scratch-reusing variant of [`classify`].
pub fn classify_with(rho: &DensityMatrix, ws: &mut ClassifyScratch) -> Result<Verdict, MatError> {
    let pt = partial_transpose(rho, Subsystem::B);
    let pt_spec = hermitian_eigenvalues_with(&pt, &mut ws.eig)?;
    let rho_spec = hermitian_eigenvalues_with(rho.mat(), &mut ws.eig)?;

    let min_pt = pt_spec.min();
    let ppt = min_pt >= -POSITIVITY_TOL;
    let negative_pt_count = pt_spec.values().iter().filter(|&&v| v < -POSITIVITY_TOL).count();
    let det_rho = rho_spec.product();
    let det_pt = pt_spec.product();

    let (ma, mb) = rho.dims();
    let spectrum_separable = if ma == 2 && mb >= 2 {
        spectrum_separable_2xm(&rho_spec, mb).unwrap_or(false)
    } else {
        false
    };

    Ok(Verdict {
        ppt,
        det_pt_greater: det_pt > det_rho,
        spectrum_separable,
        min_pt_eigenvalue: min_pt,
        negative_pt_count,
        det_rho,
        det_pt,
    })
}

/// Eigenvalue-only sufficient separability test for 2 x m states:
/// lambda_1 < lambda_{2m-1} + 2 sqrt(lambda_{2m-2} lambda_{2m}),
/// with eigenvalues sorted descending (1-based indexing).
pub fn spectrum_separable_2xm(spec: &Spectrum, m: usize) -> Result<bool, MatError> {
    let n = 2 * m;
    if spec.len() != n {
        return Err(MatError::DimensionMismatch(format!(
            "expected {n} eigenvalues for a 2x{m} state, got {}",
            spec.len()
        )));
    }
    let v = spec.values();
    let l1 = v[0];
    let l_2m_1 = v[n - 2];
    let prod = (v[n - 3].max(0.0)) * (v[n - 1].max(0.0));
    Ok(l1 < l_2m_1 + 2.0 * prod.sqrt())
}
