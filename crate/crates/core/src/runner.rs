//! Multi-threaded Monte Carlo drivers.
//!
//! Work is issued in rounds of `checkpoint_stride` samples; each round is
//! split across workers that own independent streams (pseudo: per-worker
//! stream ids; quasi: disjoint contiguous index blocks), and the reducer
//! merges worker states and records a checkpoint after every round. Merged
//! counts are independent of scheduling because streams are fixed per worker.

use crate::criteria::{classify_with, ClassifyScratch};
use crate::ensembles::{
    ginibre, haar_orthogonal, haar_unitary, sample_density, sample_x_state, EnsembleError,
    Family, Field, MeasureSpec, NormalSource, QuasiStream, RandomStream,
};
use crate::estimator::{CoupledState, EstimatorState};
use crate::matcore::DensityMatrix;

/// Options shared by the estimation drivers.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub samples: u64,
    pub seed: u64,
    pub threads: usize,
    /// Sample X-states instead of full-support states.
    pub x_states: bool,
    /// Checkpoint/merge interval; 0 disables checkpoints.
    pub checkpoint_stride: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            samples: 1_000_000,
            seed: 1,
            threads: default_threads(),
            x_states: false,
            checkpoint_stride: 5_000_000,
        }
    }
}

pub fn default_threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Runs a pseudo-random estimation of the PPT/separability fraction.
pub fn run_estimate(spec: &MeasureSpec, opts: &RunOptions) -> Result<EstimatorState, EnsembleError> {
    spec.validate()?;
    let threads = opts.threads.max(1);
    let stride = if opts.checkpoint_stride == 0 { opts.samples } else { opts.checkpoint_stride };
    let mut master = EstimatorState::new();
    if stride < opts.samples {
        master.trace = Some(Vec::new());
    }
    let mut streams: Vec<RandomStream> =
        (0..threads).map(|w| RandomStream::pseudo(opts.seed, w as u64)).collect();
    let mut done = 0u64;
    while done < opts.samples {
        let round = stride.min(opts.samples - done);
        let shares = split_round(round, threads);
        let results = std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for (stream, share) in streams.iter_mut().zip(shares.iter().copied()) {
                let spec = *spec;
                let x_states = opts.x_states;
                handles.push(scope.spawn(move || worker_estimate(stream, &spec, share, x_states)));
            }
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect::<Vec<_>>()
        });
        for r in results {
            master.merge(&r?);
        }
        done += round;
        if master.trace.is_some() {
            master.record_checkpoint();
        }
    }
    Ok(master)
}

fn split_round(round: u64, threads: usize) -> Vec<u64> {
    let base = round / threads as u64;
    let extra = (round % threads as u64) as usize;
    (0..threads).map(|w| base + if w < extra { 1 } else { 0 }).collect()
}

fn worker_estimate(
    stream: &mut RandomStream,
    spec: &MeasureSpec,
    count: u64,
    x_states: bool,
) -> Result<EstimatorState, EnsembleError> {
    let mut state = EstimatorState::new();
    let mut ws = ClassifyScratch::default();
    for _ in 0..count {
        let rho = loop {
            let draw =
                if x_states { sample_x_state(stream, spec) } else { sample_density(stream, spec) };
            match draw {
                Ok(rho) => break rho,
                Err(EnsembleError::DegenerateDraw) => continue,
                Err(e) => return Err(e),
            }
        };
        let v = classify_with(&rho, &mut ws).expect("sampled matrix must be Hermitian");
        state.update(&v);
    }
    Ok(state)
}

/// Quasirandom Bures estimation. The sequence dimension is the exact number
/// of normals one draw consumes: 4N^2 for the complex field (A then U), and
/// N(N+1) + N^2 for the real field (A is N x (N+1), U is orthogonal).
pub fn quasi_dimension(field: Field, n: usize) -> usize {
    match field {
        Field::Complex => 4 * n * n,
        Field::Real => n * (n + 1) + n * n,
        Field::Quaternion => panic!("quaternionic Bures sampling is out of scope"),
    }
}

pub fn run_quasi_bures(
    field: Field,
    dims: (usize, usize),
    points: u64,
    alpha0: f64,
    threads: usize,
    checkpoint_stride: u64,
) -> Result<EstimatorState, EnsembleError> {
    let spec = MeasureSpec::new(field, dims, Family::Bures);
    spec.validate()?;
    let n = spec.n();
    let s = quasi_dimension(field, n);
    let threads = threads.max(1);
    let stride = if checkpoint_stride == 0 { points } else { checkpoint_stride };
    let mut master = EstimatorState::new();
    if stride < points {
        master.trace = Some(Vec::new());
    }
    let mut done = 0u64;
    while done < points {
        let round = stride.min(points - done);
        let shares = split_round(round, threads);
        let mut offsets = Vec::with_capacity(threads);
        let mut acc = done;
        for share in &shares {
            offsets.push(acc);
            acc += share;
        }
        let results = std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for (offset, share) in offsets.iter().copied().zip(shares.iter().copied()) {
                handles.push(scope.spawn(move || {
                    let mut stream = QuasiStream::new(s, alpha0, offset);
                    let mut state = EstimatorState::new();
                    let mut ws = ClassifyScratch::default();
                    for _ in 0..share {
                        match sample_bures_one(&mut stream, field, dims, n) {
                            Ok(rho) => {
                                let v = classify_with(&rho, &mut ws)
                                    .expect("Hermitian by construction");
                                state.update(&v);
                            }
                            // degenerate points are skipped, not counted
                            Err(EnsembleError::DegenerateDraw) => {}
                            Err(e) => return Err(e),
                        }
                        stream.align();
                    }
                    Ok::<EstimatorState, EnsembleError>(state)
                }));
            }
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect::<Vec<_>>()
        });
        for r in results {
            master.merge(&r?);
        }
        done += round;
        if master.trace.is_some() {
            master.record_checkpoint();
        }
    }
    Ok(master)
}

fn sample_bures_one<S: NormalSource>(
    stream: &mut S,
    field: Field,
    dims: (usize, usize),
    n: usize,
) -> Result<DensityMatrix, EnsembleError> {
    let spec = MeasureSpec::new(field, dims, Family::Bures);
    sample_density(stream, &spec).map(|rho| {
        debug_assert_eq!(rho.n(), n);
        rho
    })
}

/// Jointly estimates the HS and Bures separable fractions with a shared
/// Ginibre block per draw (N x N over C, N x (N+1) over R, for both arms).
pub fn run_coupled_bures(
    field: Field,
    dims: (usize, usize),
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<CoupledState, EnsembleError> {
    let n = dims.0 * dims.1;
    let threads = threads.max(1);
    let shares = split_round(trials, threads);
    let results = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for (w, share) in shares.iter().copied().enumerate() {
            handles.push(scope.spawn(move || {
                let mut stream = RandomStream::pseudo(seed, w as u64);
                let mut state = CoupledState::default();
                let mut ws = ClassifyScratch::default();
                for _ in 0..share {
                    let (a, u) = match field {
                        Field::Complex => (
                            ginibre(&mut stream, Field::Complex, n, n)?,
                            haar_unitary(&mut stream, n)?,
                        ),
                        Field::Real => (
                            ginibre(&mut stream, Field::Real, n, n + 1)?,
                            haar_orthogonal(&mut stream, n)?,
                        ),
                        Field::Quaternion => {
                            return Err(EnsembleError::InvalidSpec(
                                "quaternionic coupled runs are out of scope".into(),
                            ))
                        }
                    };
                    // HS arm: the same Ginibre block (the real flat measure
                    // uses the full N x (N+1) block, like the Bures arm)
                    let hs_mat = a.aat();
                    let hs_tr = hs_mat.trace().re;
                    // Bures arm: (I + U) A, normalization absorbs the 1/2s
                    let b_mat = a.add(&u.matmul(&a)).aat();
                    let b_tr = b_mat.trace().re;
                    if !(hs_tr > 1e-280) || !(b_tr > 1e-280) {
                        continue;
                    }
                    let rho_hs = DensityMatrix::new_unchecked(hs_mat.scale(1.0 / hs_tr), dims);
                    let rho_b = DensityMatrix::new_unchecked(b_mat.scale(1.0 / b_tr), dims);

                    state.trials += 1;
                    if classify_with(&rho_hs, &mut ws).expect("Hermitian").ppt {
                        state.hs_hits += 1;
                    }
                    if classify_with(&rho_b, &mut ws).expect("Hermitian").ppt {
                        state.bures_hits += 1;
                    }
                }
                Ok::<CoupledState, EnsembleError>(state)
            }));
        }
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect::<Vec<_>>()
    });
    let mut master = CoupledState::default();
    for r in results {
        master.merge(&r?);
    }
    Ok(master)
}
