//! Seeded verification suites behind the `verify` command.
//!
//! Every check returns a [`VerificationReport`]; a suite is a sorted list of
//! them. All randomness is ChaCha8 seeded from the configuration, so a given
//! configuration always reproduces the same residuals.

use std::collections::BTreeMap;

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::basis::{
    compute_structure_tensors, generate_basis, hermitian_deviation, matrix_to_state, trace_prod,
    verify_product_identity, GellMannBasis, HermitianOperator, StructureTensors,
};
use crate::bipartite::{
    dnm_dimension, moment_equality_check, partial_trace, random_bipartite, tracing_jacobian_rank,
    Side,
};
use crate::canonical::{
    canonical_bracket_alpha, canonical_bracket_alpha_fd, lie_poisson_bracket_value, pushforward,
    random_canonical,
};
use crate::casimir::{
    self, casimir_report, char_coeffs, pure_chain_check, verify_ad_invariance,
};
use crate::dynamics::{casimir_drift, evolve_exact, evolve_rk4, exact_trajectory};
use crate::error::{CoreError, Result};
use crate::orbit::{
    generic_spectrum, orbit_dimension, partitions, poisson_rank, sample_orbit, OrbitSpectrum,
    DEGENERACY_TOL,
};
use crate::par::map_collect;
use crate::poisson::{hamiltonian_value, verify_jacobi, GellMannState, HamiltonianCoeffs};
use crate::report::VerificationReport;
use crate::{C64, CMatrix};

/// Knobs shared by all suites.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    /// Per-check tolerance overrides keyed by report name prefix.
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n_max: 4,
            trials: 50,
            seed: 42,
            tolerances: BTreeMap::new(),
        }
    }
}

impl SuiteConfig {
    pub fn validated(self) -> Result<Self> {
        if self.n_max < 2 {
            return Err(CoreError::InvalidArgument("n_max must be at least 2".into()));
        }
        if self.trials < 1 {
            return Err(CoreError::InvalidArgument("trials must be at least 1".into()));
        }
        Ok(self)
    }

    fn tol(&self, name: &str, default: f64) -> f64 {
        self.tolerances
            .iter()
            .filter(|(k, _)| name.starts_with(k.as_str()))
            .map(|(_, v)| *v)
            .next_back()
            .unwrap_or(default)
    }
}

pub const SUITE_NAMES: [&str; 7] = [
    "all",
    "gellmann",
    "poisson",
    "casimirs",
    "orbits",
    "bipartite",
    "dynamics",
];

/// Runs the named suite ("all" for every one); reports come back sorted by
/// name regardless of execution order.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let mut reports = match name {
        "gellmann" => gellmann_suite(cfg)?,
        "poisson" => poisson_suite(cfg)?,
        "casimirs" => casimirs_suite(cfg)?,
        "orbits" => orbits_suite(cfg)?,
        "bipartite" => bipartite_suite(cfg)?,
        "dynamics" => dynamics_suite(cfg)?,
        "all" => {
            let mut all = Vec::new();
            for s in &SUITE_NAMES[1..] {
                all.extend(run_suite(s, cfg)?);
            }
            all
        }
        other => {
            return Err(CoreError::InvalidArgument(format!(
                "unknown suite '{other}'; expected one of {SUITE_NAMES:?}"
            )))
        }
    };
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(reports)
}

fn setup(n: usize) -> Result<(GellMannBasis, StructureTensors)> {
    let b = generate_basis(n)?;
    let t = compute_structure_tensors(&b, 1e-12)?;
    Ok((b, t))
}

fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| {
        C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    });
    (&g + g.adjoint()) * C64::new(0.5, 0.0)
}

fn mixed_state(n: usize, rng: &mut ChaCha8Rng) -> GellMannState {
    GellMannState {
        n,
        alpha0: 1.0,
        alpha: crate::poisson::random_alpha(n * n - 1, rng) * 0.1,
    }
}

// --- gellmann ------------------------------------------------------------

pub fn gellmann_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for n in 2..=cfg.n_max {
        let (basis, tensors) = setup(n)?;
        let dim = basis.dim();

        // Hermiticity, tracelessness, pairwise trace orthonormality
        let mut worst = 0.0_f64;
        for (a, ta) in basis.matrices.iter().enumerate() {
            worst = worst.max(hermitian_deviation(ta));
            worst = worst.max(ta.trace().norm());
            for (b, tb) in basis.matrices.iter().enumerate() {
                let target = if a == b { 0.5 } else { 0.0 };
                worst = worst.max((trace_prod(ta, tb) - C64::new(target, 0.0)).norm());
            }
        }
        out.push(VerificationReport::new(
            format!("gellmann.orthonormality.N{n}"),
            worst,
            dim * dim,
            cfg.tol("gellmann.orthonormality", 1e-13),
        ));

        // [T_a, T_b] = i Σ f_abc T_c, rebuilt from the dense tensor
        let f = tensors.f_dense();
        let residuals = map_collect(
            (0..dim * dim).collect::<Vec<_>>(),
            |idx: usize| -> f64 {
                let (a, b) = (idx / dim, idx % dim);
                let mut rebuilt = CMatrix::zeros(n, n);
                for c in 0..dim {
                    let v = f[(a * dim + b) * dim + c];
                    if v != 0.0 {
                        rebuilt += &basis.matrices[c] * C64::new(0.0, v);
                    }
                }
                let comm = &basis.matrices[a] * &basis.matrices[b]
                    - &basis.matrices[b] * &basis.matrices[a];
                crate::basis::max_norm(&(comm - rebuilt))
            },
        );
        let worst = residuals.into_iter().fold(0.0, f64::max);
        out.push(VerificationReport::new(
            format!("gellmann.commutator.N{n}"),
            worst,
            dim * dim,
            cfg.tol("gellmann.commutator", 1e-12),
        ));

        let mut pi = verify_product_identity(&basis, &tensors, cfg.tol("gellmann.product_identity", 1e-12));
        pi.name = format!("gellmann.product_identity.N{n}");
        out.push(pi);
    }

    if cfg.n_max >= 3 {
        let (_, t3) = setup(3)?;
        // 1-based labels 123, 458, 118 in the pair-major ordering become
        // these 0-based index triples
        let worst = [
            (t3.f_at(0, 3, 6) - 1.0).abs(),
            (t3.f_at(1, 4, 7) - 0.75_f64.sqrt()).abs(),
            (t3.d_at(0, 0, 7) - 1.0 / 3.0_f64.sqrt()).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        out.push(VerificationReport::new(
            "gellmann.spot_values.N3",
            worst,
            3,
            cfg.tol("gellmann.spot_values", 1e-12),
        ));
    }
    Ok(out)
}

// --- poisson -------------------------------------------------------------

pub fn poisson_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for n in 2..=cfg.n_max {
        let (basis, tensors) = setup(n)?;
        let mut jac = verify_jacobi(
            &tensors,
            cfg.trials.max(100),
            cfg.seed,
            cfg.tol("poisson.jacobi", 1e-10),
        )?;
        jac.name = format!("poisson.jacobi.N{n}");
        out.push(jac);

        // no Hermitian canonical pair: Tr [A, B] vanishes identically
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6e6f_676f);
        let mut worst = 0.0_f64;
        for _ in 0..cfg.trials {
            let a = random_hermitian(n, &mut rng);
            let b = random_hermitian(n, &mut rng);
            worst = worst.max((&a * &b - &b * &a).trace().norm());
        }
        out.push(VerificationReport::new(
            format!("poisson.no_canonical_pair.N{n}"),
            worst,
            cfg.trials,
            cfg.tol("poisson.no_canonical_pair", 1e-12),
        ));

        if n <= 3 {
            // canonical bracket of pushed coordinates closes into 4 f α
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6272_6b74);
            let dim = basis.dim();
            let samples = cfg.trials.min(20);
            let (mut exact, mut fd, mut central) = (0.0_f64, 0.0_f64, 0.0_f64);
            for _ in 0..samples {
                let z = random_canonical(n, &mut rng);
                let alpha = pushforward(&z, &basis)?.alpha;
                for s in 1..=dim {
                    for t in 1..=dim {
                        let expect = lie_poisson_bracket_value(s - 1, t - 1, &alpha, &tensors);
                        exact = exact
                            .max((canonical_bracket_alpha(s, t, &z, &basis)? - expect).abs());
                    }
                    let t = (s % dim) + 1;
                    let expect = lie_poisson_bracket_value(s - 1, t - 1, &alpha, &tensors);
                    fd = fd.max(
                        (canonical_bracket_alpha_fd(s, t, &z, &basis, 1e-5)? - expect).abs(),
                    );
                    central = central.max(canonical_bracket_alpha(0, s, &z, &basis)?.abs());
                }
            }
            out.push(VerificationReport::new(
                format!("poisson.bracket_closure.N{n}"),
                exact,
                samples,
                cfg.tol("poisson.bracket_closure", 1e-11),
            ));
            out.push(VerificationReport::new(
                format!("poisson.bracket_closure_fd.N{n}"),
                fd,
                samples,
                cfg.tol("poisson.bracket_closure_fd", 1e-6),
            ));
            out.push(VerificationReport::new(
                format!("poisson.alpha0_central.N{n}"),
                central,
                samples,
                cfg.tol("poisson.alpha0_central", 1e-12),
            ));
        }
    }
    Ok(out)
}

// --- casimirs ------------------------------------------------------------

pub fn casimirs_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for n in 2..=cfg.n_max {
        let (basis, tensors) = setup(n)?;

        // characteristic coefficients against elementary symmetric
        // polynomials of the actual eigenvalues
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6e65_7774);
        let mut worst = 0.0_f64;
        let mut psd_mismatches = 0.0_f64;
        for _ in 0..cfg.trials {
            let mut h = random_hermitian(n, &mut rng);
            let shift = (1.0 - h.trace().re) / n as f64;
            for i in 0..n {
                h[(i, i)] += C64::new(shift, 0.0);
            }
            let state = matrix_to_state(&HermitianOperator::new(h.clone())?, &basis)?;
            let mom = casimir::moments(&state, &basis, n)?;
            let s = char_coeffs(&mom, state.alpha0)?;
            let eig = casimir::eigenvalues(&state, &basis)?;
            let sym = elementary_symmetric(eig.as_slice());
            for (a, b) in s.iter().zip(&sym[1..]) {
                worst = worst.max((a - b).abs());
            }
            let min_eig = eig.iter().cloned().fold(f64::INFINITY, f64::min);
            if min_eig.abs() > 1e-8 {
                let (psd, _) = casimir::is_psd(&state, &basis, 1e-9)?;
                if psd != (min_eig >= -1e-9) {
                    psd_mismatches += 1.0;
                }
            }
        }
        out.push(VerificationReport::new(
            format!("casimirs.newton_oracle.N{n}"),
            worst,
            cfg.trials,
            cfg.tol("casimirs.newton_oracle", 1e-10),
        ));
        out.push(VerificationReport::new(
            format!("casimirs.psd_agreement.N{n}"),
            psd_mismatches,
            cfg.trials,
            cfg.tol("casimirs.psd_agreement", 0.0),
        ));

        // pure-state surface, chain, and unit moments
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x7075_7265);
        let (mut surface, mut chain, mut moments_res) = (0.0_f64, 0.0_f64, 0.0_f64);
        for _ in 0..cfg.trials {
            let z = random_canonical(n, &mut rng).normalized()?;
            let state = pushforward(&z, &basis)?;
            let dot = state.alpha.dot(&state.alpha);
            surface = surface.max((dot - 2.0 * (1.0 - 1.0 / n as f64)).abs());
            if n >= 3 {
                let rep = pure_chain_check(&state, &basis, &tensors, 1e-9)?;
                chain = chain.max(rep.max_residual);
            }
            for m in casimir::moments(&state, &basis, n)? {
                moments_res = moments_res.max((m - 1.0).abs());
            }
        }
        out.push(VerificationReport::new(
            format!("casimirs.pure_surface.N{n}"),
            surface,
            cfg.trials,
            cfg.tol("casimirs.pure_surface", 1e-11),
        ));
        if n >= 3 {
            out.push(VerificationReport::new(
                format!("casimirs.pure_chain.N{n}"),
                chain,
                cfg.trials,
                cfg.tol("casimirs.pure_chain", 1e-10),
            ));
        }
        out.push(VerificationReport::new(
            format!("casimirs.pure_moments.N{n}"),
            moments_res,
            cfg.trials,
            cfg.tol("casimirs.pure_moments", 1e-11),
        ));

        for m in 3..=n {
            let mut rep = verify_ad_invariance(
                &tensors,
                m,
                cfg.trials.min(20),
                cfg.seed ^ 0x6164_6976,
                cfg.tol("casimirs.ad_invariance", 1e-9),
            )?;
            rep.name = format!("casimirs.ad_invariance.N{n}.m{m}");
            out.push(rep);
        }
    }
    Ok(out)
}

/// Coefficients [e_0, e_1, …, e_n] of Π(1 + λ x_i).
fn elementary_symmetric(xs: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; xs.len() + 1];
    e[0] = 1.0;
    for (i, x) in xs.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            e[k] += x * e[k - 1];
        }
    }
    e
}

// --- orbits --------------------------------------------------------------

pub fn orbits_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for n in 2..=cfg.n_max {
        let (basis, tensors) = setup(n)?;
        let samples = cfg.trials.min(50).max(1) as u64;
        let mut worst = 0.0_f64;
        let mut count = 0;
        for mults in partitions(n) {
            let spec = generic_spectrum(n, &mults, DEGENERACY_TOL)?;
            let expect = orbit_dimension(&spec);
            for k in 0..samples {
                let state = sample_orbit(&spec, &basis, cfg.seed ^ (k * 7919))?;
                let rank = poisson_rank(&tensors, &state, 1e-9)?;
                worst = worst.max((rank as f64 - expect as f64).abs());
                count += 1;
            }
        }
        out.push(VerificationReport::new(
            format!("orbits.rank_vs_dimension.N{n}"),
            worst,
            count,
            cfg.tol("orbits.rank_vs_dimension", 0.0),
        ));

        // pure orbit: rank 2(N−1)
        let pure_spec = OrbitSpectrum::new(
            n,
            if n == 1 { vec![1.0] } else { vec![1.0, 0.0] },
            if n == 1 { vec![1] } else { vec![1, n - 1] },
            DEGENERACY_TOL,
        )?;
        let mut worst = 0.0_f64;
        for k in 0..samples {
            let state = sample_orbit(&pure_spec, &basis, cfg.seed ^ (k * 104729))?;
            let rank = poisson_rank(&tensors, &state, 1e-9)?;
            worst = worst.max((rank as f64 - 2.0 * (n as f64 - 1.0)).abs());
        }
        out.push(VerificationReport::new(
            format!("orbits.pure_rank.N{n}"),
            worst,
            samples as usize,
            cfg.tol("orbits.pure_rank", 0.0),
        ));
    }
    Ok(out)
}

// --- bipartite -----------------------------------------------------------

pub fn bipartite_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();

    for (n, m) in [(2, 2), (3, 2), (4, 3)] {
        if n > cfg.n_max {
            continue;
        }
        let mut worst = 0.0_f64;
        for k in 0..cfg.trials as u64 {
            let bs = random_bipartite(n, m, cfg.seed ^ (k * 31))?;
            let rep = moment_equality_check(&bs, 4, 1e-12)?;
            worst = worst.max(rep.max_residual);
        }
        out.push(VerificationReport::new(
            format!("bipartite.moment_equality.{n}x{m}"),
            worst,
            cfg.trials,
            cfg.tol("bipartite.moment_equality", 1e-12),
        ));
    }

    for (n, m) in [(2, 1), (3, 1), (3, 2), (4, 2), (3, 3)] {
        if n > cfg.n_max {
            continue;
        }
        let basis = generate_basis(n)?;
        let expect = dnm_dimension(n, m)? as f64;
        let samples = cfg.trials.min(20) as u64;
        let mut worst = 0.0_f64;
        for k in 0..samples {
            let bs = random_bipartite(n, m, cfg.seed ^ (k * 53))?;
            let rank = tracing_jacobian_rank(&bs, &basis, 1e-9)? as f64;
            worst = worst.max((rank - expect).abs());
        }
        out.push(VerificationReport::new(
            format!("bipartite.tracing_rank.{n}x{m}"),
            worst,
            samples as usize,
            cfg.tol("bipartite.tracing_rank", 0.0),
        ));
    }

    // maximal-entropy submanifolds: flat spectra and their Poisson rank
    for (n, m) in [(3, 1), (3, 2), (4, 2)] {
        if n > cfg.n_max {
            continue;
        }
        let (basis, tensors) = setup(n)?;
        let spec = if m == n {
            OrbitSpectrum::new(n, vec![1.0 / n as f64], vec![n], DEGENERACY_TOL)?
        } else {
            OrbitSpectrum::new(n, vec![1.0 / m as f64, 0.0], vec![m, n - m], DEGENERACY_TOL)?
        };
        let mut worst = 0.0_f64;
        let samples = cfg.trials.min(10) as u64;
        for k in 0..samples {
            let state = sample_orbit(&spec, &basis, cfg.seed ^ (k * 97))?;
            if !crate::bipartite::max_entropy_check(&state, &basis, m, 1e-9)? {
                worst = worst.max(1.0);
            }
            let eig = casimir::eigenvalues(&state, &basis)?;
            for e in eig.iter() {
                let dev = e.abs().min((e - 1.0 / m as f64).abs());
                worst = worst.max(dev / 1e-8);
            }
            let ent = casimir::entropy(&state, &basis)?;
            worst = worst.max((ent - (m as f64).ln()).abs() / 1e-8);
            let rank = poisson_rank(&tensors, &state, 1e-9)?;
            worst = worst.max((rank as f64 - (2 * m * (n - m)) as f64).abs());
        }
        out.push(VerificationReport::new(
            format!("bipartite.max_entropy.{n}x{m}"),
            worst,
            samples as usize,
            cfg.tol("bipartite.max_entropy", 0.5),
        ));
    }

    // traced brackets close into the Lie-Poisson structure downstairs
    if cfg.n_max >= 3 {
        let (basis, tensors) = setup(3)?;
        let mut worst = 0.0_f64;
        let samples = cfg.trials.min(10) as u64;
        for k in 0..samples {
            let bs = random_bipartite(3, 2, cfg.seed ^ (k * 113))?;
            let alpha = partial_trace(&bs, Side::A, &basis)?.alpha;
            for s in 1..=basis.dim() {
                for t in 1..=basis.dim() {
                    let got = crate::bipartite::canonical_bracket_bipartite(s, t, &bs, &basis)?;
                    let expect = lie_poisson_bracket_value(s - 1, t - 1, &alpha, &tensors);
                    worst = worst.max((got - expect).abs());
                }
            }
        }
        out.push(VerificationReport::new(
            "bipartite.bracket_closure.3x2",
            worst,
            samples as usize,
            cfg.tol("bipartite.bracket_closure", 1e-10),
        ));
    }

    Ok(out)
}

// --- dynamics ------------------------------------------------------------

pub fn dynamics_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let n = cfg.n_max.min(3);
    let (basis, tensors) = setup(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6479_6e73);
    let state = mixed_state(n, &mut rng);
    let coeffs = HamiltonianCoeffs::new(
        n,
        0.3,
        crate::poisson::random_alpha(n * n - 1, &mut rng),
        1.0,
    )?;

    // convergence order over a dt-halving ladder
    let oracle = evolve_exact(&state, &coeffs, 1.0, &basis)?;
    let mut errors = Vec::new();
    let mut dt = 0.05;
    for _ in 0..4 {
        let traj = evolve_rk4(&state, &coeffs, &tensors, &basis, 1.0, dt)?;
        errors.push((&traj.states.last().unwrap().alpha - &oracle.alpha).amax());
        dt /= 2.0;
    }
    let mut order_dev = 0.0_f64;
    for w in errors.windows(2) {
        order_dev = order_dev.max(((w[0] / w[1]).log2() - 4.0).abs());
    }
    out.push(
        VerificationReport::new(
            "dynamics.convergence_order",
            order_dev,
            errors.len() - 1,
            cfg.tol("dynamics.convergence_order", 0.3),
        )
        .with_detail("coarsest_error", errors[0])
        .with_detail("finest_error", errors[3]),
    );

    let exact = exact_trajectory(&state, &coeffs, &tensors, &basis, 10.0, 100)?;
    let drift = casimir_drift(&exact)?;
    let worst = drift.values().cloned().fold(0.0, f64::max);
    out.push(VerificationReport::new(
        "dynamics.drift_exact",
        worst,
        exact.len(),
        cfg.tol("dynamics.drift_exact", 1e-11),
    ));
    let e0 = hamiltonian_value(&exact.states[0], &coeffs)?;
    let edrift = exact
        .states
        .iter()
        .map(|s| (hamiltonian_value(s, &coeffs).unwrap() - e0).abs())
        .fold(0.0, f64::max);
    out.push(VerificationReport::new(
        "dynamics.energy_drift_exact",
        edrift,
        exact.len(),
        cfg.tol("dynamics.energy_drift_exact", 1e-11),
    ));

    let rk4 = evolve_rk4(&state, &coeffs, &tensors, &basis, 10.0, 1e-3)?;
    let drift = casimir_drift(&rk4)?;
    let worst = drift.values().cloned().fold(0.0, f64::max);
    out.push(VerificationReport::new(
        "dynamics.drift_rk4",
        worst,
        rk4.len(),
        cfg.tol("dynamics.drift_rk4", 1e-8),
    ));
    let edrift = rk4
        .states
        .iter()
        .map(|s| (hamiltonian_value(s, &coeffs).unwrap() - e0).abs())
        .fold(0.0, f64::max);
    out.push(VerificationReport::new(
        "dynamics.energy_drift_rk4",
        edrift,
        rk4.len(),
        cfg.tol("dynamics.energy_drift_rk4", 1e-8),
    ));

    // qubit precession endpoint
    let (b2, t2) = setup(2)?;
    let init = GellMannState {
        n: 2,
        alpha0: 1.0,
        alpha: DVector::from_vec(vec![1.0, 0.0, 0.0]),
    };
    let c2 = HamiltonianCoeffs::new(2, 0.0, DVector::from_vec(vec![0.0, 0.0, 1.0]), 1.0)?;
    let traj = evolve_rk4(&init, &c2, &t2, &b2, std::f64::consts::FRAC_PI_2, 1e-3)?;
    let end = &traj.states.last().unwrap().alpha;
    let expect = DVector::from_vec(vec![0.0, 1.0, 0.0]);
    out.push(VerificationReport::new(
        "dynamics.precession",
        (end - expect).amax(),
        traj.len(),
        cfg.tol("dynamics.precession", 1e-10),
    ));

    // exact evolution keeps the full Casimir report of a mixed state
    let rep0 = casimir_report(&state, &basis, &tensors)?;
    let later = evolve_exact(&state, &coeffs, 3.7, &basis)?;
    let rep1 = casimir_report(&later, &basis, &tensors)?;
    let mut worst = (rep1.entropy - rep0.entropy).abs();
    for (a, b) in rep0.sudbery.iter().zip(&rep1.sudbery) {
        worst = worst.max((a - b).abs());
    }
    out.push(VerificationReport::new(
        "dynamics.casimir_report_invariance",
        worst,
        rep0.sudbery.len() + 1,
        cfg.tol("dynamics.casimir_report_invariance", 1e-11),
    ));

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_cfg() -> SuiteConfig {
        SuiteConfig {
            n_max: 3,
            trials: 5,
            seed: 42,
            tolerances: BTreeMap::new(),
        }
    }

    #[test]
    fn config_validation() {
        assert!(SuiteConfig { n_max: 1, ..quick_cfg() }.validated().is_err());
        assert!(SuiteConfig { trials: 0, ..quick_cfg() }.validated().is_err());
        assert!(quick_cfg().validated().is_ok());
    }

    #[test]
    fn unknown_suite_rejected() {
        assert!(run_suite("nope", &quick_cfg()).is_err());
    }

    #[test]
    fn reports_sorted_and_passing() {
        let reports = run_suite("gellmann", &quick_cfg()).unwrap();
        assert!(!reports.is_empty());
        for w in reports.windows(2) {
            assert!(w[0].name <= w[1].name);
        }
        for r in &reports {
            assert!(r.passed, "{} residual {:.3e}", r.name, r.max_residual);
        }
    }

    #[test]
    fn tolerance_override_applies() {
        let mut cfg = quick_cfg();
        cfg.tolerances.insert("gellmann.orthonormality".into(), -1.0);
        let reports = run_suite("gellmann", &cfg).unwrap();
        let r = reports
            .iter()
            .find(|r| r.name == "gellmann.orthonormality.N2")
            .unwrap();
        assert!(!r.passed);
        assert_eq!(r.details["tolerance"], -1.0);
    }

    #[test]
    fn elementary_symmetric_oracle() {
        let e = elementary_symmetric(&[1.0, 2.0, 3.0]);
        assert_eq!(e, vec![1.0, 6.0, 11.0, 6.0]);
    }

    #[test]
    fn quick_suites_pass() {
        for name in ["poisson", "casimirs", "orbits", "bipartite"] {
            for r in run_suite(name, &quick_cfg()).unwrap() {
                assert!(r.passed, "{} residual {:.3e}", r.name, r.max_residual);
            }
        }
    }

    #[test]
    fn dynamics_suite_passes() {
        let reports = run_suite("dynamics", &quick_cfg()).unwrap();
        for r in &reports {
            assert!(r.passed, "{} residual {:.3e}", r.name, r.max_residual);
        }
    }
}
