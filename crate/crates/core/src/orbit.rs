//! Coadjoint-orbit classification of states.
//!
//! The orbit of a density matrix under U(N) conjugation is fixed by its
//! clustered spectrum {e_i, n_i}; the orbit (symplectic leaf) dimension is
//! 2 Σ_{i>j} n_i n_j = N² − Σ n_i², matched numerically by the rank of the
//! Poisson tensor at the state.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::basis::{matrix_to_state, GellMannBasis, HermitianOperator, StructureTensors};
use crate::casimir::{self, eigenvalues};
use crate::error::{CoreError, Result};
use crate::poisson::{poisson_tensor, GellMannState};
use crate::{C64, CMatrix};

/// Default eigenvalue clustering tolerance.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Clustered eigenvalues with multiplicities identifying a coadjoint orbit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitSpectrum {
    pub n: usize,
    /// Distinct cluster values, strictly descending.
    pub eigenvalues: Vec<f64>,
    /// Multiplicities, Σ = N.
    pub multiplicities: Vec<usize>,
    pub degeneracy_tol: f64,
    /// Set when two clusters sit closer than 10× the tolerance; the
    /// foliation is singular nearby and rank checks are unreliable.
    pub near_degenerate: bool,
}

impl OrbitSpectrum {
    pub fn new(
        n: usize,
        eigenvalues: Vec<f64>,
        multiplicities: Vec<usize>,
        degeneracy_tol: f64,
    ) -> Result<Self> {
        if eigenvalues.len() != multiplicities.len() || eigenvalues.is_empty() {
            return Err(CoreError::InvalidArgument(
                "eigenvalues and multiplicities must have equal nonzero length".into(),
            ));
        }
        if multiplicities.iter().sum::<usize>() != n {
            return Err(CoreError::InvalidArgument("multiplicities must sum to N".into()));
        }
        if eigenvalues.windows(2).any(|w| w[1] >= w[0]) {
            return Err(CoreError::InvalidArgument("eigenvalues must be strictly descending".into()));
        }
        let near_degenerate = eigenvalues
            .windows(2)
            .any(|w| (w[0] - w[1]).abs() <= 10.0 * degeneracy_tol);
        Ok(Self {
            n,
            eigenvalues,
            multiplicities,
            degeneracy_tol,
            near_degenerate,
        })
    }

    pub fn trace(&self) -> f64 {
        self.eigenvalues
            .iter()
            .zip(&self.multiplicities)
            .map(|(e, m)| e * *m as f64)
            .sum()
    }
}

/// Clusters the state's Hermitian spectrum in descending order; values
/// within `degeneracy_tol` of a cluster representative join that cluster.
pub fn classify_spectrum(
    state: &GellMannState,
    basis: &GellMannBasis,
    degeneracy_tol: f64,
) -> Result<OrbitSpectrum> {
    if degeneracy_tol <= 0.0 {
        return Err(CoreError::InvalidArgument("degeneracy_tol must be positive".into()));
    }
    let mut eig: Vec<f64> = eigenvalues(state, basis)?.iter().cloned().collect();
    eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut values = Vec::new();
    let mut mults: Vec<usize> = Vec::new();
    let mut rep = f64::NAN;
    for e in eig {
        if values.is_empty() || (rep - e).abs() > degeneracy_tol {
            values.push(e);
            mults.push(1);
            rep = e;
        } else {
            *mults.last_mut().unwrap() += 1;
        }
    }
    OrbitSpectrum::new(basis.n, values, mults, degeneracy_tol)
}

/// dim orb = 2 Σ_{i>j} n_i n_j = N² − Σ n_i².
pub fn orbit_dimension(spectrum: &OrbitSpectrum) -> usize {
    let n = spectrum.n;
    n * n - spectrum.multiplicities.iter().map(|m| m * m).sum::<usize>()
}

/// Numerical rank of the Poisson tensor at the state: singular values above
/// `rank_tol` × the largest one.
pub fn poisson_rank(
    tensors: &StructureTensors,
    state: &GellMannState,
    rank_tol: f64,
) -> Result<usize> {
    if rank_tol <= 0.0 {
        return Err(CoreError::InvalidArgument("rank_tol must be positive".into()));
    }
    let r = poisson_tensor(tensors, state)?;
    let sv = r.svd(false, false).singular_values;
    // floor the scale at 1 so that a tensor that is zero up to rounding
    // noise (maximally mixed states after Haar sampling) has rank 0
    let threshold = rank_tol * sv.max().max(1.0);
    Ok(sv.iter().filter(|s| **s > threshold).count())
}

/// Haar-random unitary: QR of a complex Gaussian matrix with the phases of
/// the R diagonal absorbed into Q.
pub fn haar_unitary(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| {
        C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    });
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Samples a state on the orbit of the given spectrum: the diagonal matrix
/// conjugated by a Haar-random unitary.
pub fn sample_orbit(
    spectrum: &OrbitSpectrum,
    basis: &GellMannBasis,
    seed: u64,
) -> Result<GellMannState> {
    let tr = spectrum.trace();
    if (tr - 1.0).abs() > 1e-10 {
        return Err(CoreError::SpectrumTrace(tr));
    }
    let n = basis.n;
    let mut diag = CMatrix::zeros(n, n);
    let mut idx = 0;
    for (e, m) in spectrum.eigenvalues.iter().zip(&spectrum.multiplicities) {
        for _ in 0..*m {
            diag[(idx, idx)] = C64::new(*e, 0.0);
            idx += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = haar_unitary(n, &mut rng);
    let rho = &u * diag * u.adjoint();
    matrix_to_state(&HermitianOperator::new(rho)?, basis)
}

/// Purity test: Tr ρ² = 1 within tolerance and PSD.
pub fn is_pure(state: &GellMannState, basis: &GellMannBasis, tolerance: f64) -> Result<bool> {
    let m = casimir::moments(state, basis, 2)?;
    if (m[0] - 1.0).abs() > tolerance {
        return Ok(false);
    }
    let (psd, _) = casimir::is_psd(state, basis, tolerance.max(casimir::PSD_TOLERANCE))?;
    Ok(psd)
}

/// All partitions of `n` (multiplicity patterns), largest part first.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A generic strictly-decreasing unit-trace spectrum realizing the given
/// multiplicity pattern.
pub fn generic_spectrum(n: usize, mults: &[usize], degeneracy_tol: f64) -> Result<OrbitSpectrum> {
    let k = mults.len();
    // distinct weights 2^(k−i) normalized to unit trace
    let raw: Vec<f64> = (0..k).map(|i| 2.0_f64.powi((k - i) as i32)).collect();
    let norm: f64 = raw.iter().zip(mults).map(|(r, m)| r * *m as f64).sum();
    let values: Vec<f64> = raw.iter().map(|r| r / norm).collect();
    OrbitSpectrum::new(n, values, mults.to_vec(), degeneracy_tol)
}

/// Orbit summary produced by the `classify` CLI command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitClassification {
    pub spectrum: OrbitSpectrum,
    pub orbit_dimension: usize,
    pub poisson_rank: usize,
    pub agreement: bool,
    pub rank_checked: bool,
}

/// Classifies a state and cross-checks the orbit dimension against the
/// Poisson-tensor rank (skipped for near-degenerate spectra).
pub fn classify(
    state: &GellMannState,
    basis: &GellMannBasis,
    tensors: &StructureTensors,
    degeneracy_tol: f64,
    rank_tol: f64,
) -> Result<OrbitClassification> {
    let spectrum = classify_spectrum(state, basis, degeneracy_tol)?;
    let dim = orbit_dimension(&spectrum);
    let rank_checked = !spectrum.near_degenerate;
    let rank = poisson_rank(tensors, state, rank_tol)?;
    Ok(OrbitClassification {
        orbit_dimension: dim,
        poisson_rank: rank,
        agreement: !rank_checked || rank == dim,
        rank_checked,
        spectrum,
    })
}
