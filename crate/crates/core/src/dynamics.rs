//! Time evolution: exact unitary conjugation as oracle, fixed-step RK4 on
//! the Lie-Poisson flow, and invariant-drift accounting along trajectories.

use std::collections::BTreeMap;

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use crate::basis::{
    coeffs_to_operator, matrix_to_state, state_to_matrix, GellMannBasis, HermitianOperator,
    StructureTensors,
};
use crate::casimir::{casimir_report, CasimirReport};
use crate::error::{CoreError, Result};
use crate::poisson::{flow_field, GellMannState, HamiltonianCoeffs};
use crate::C64;

/// Sampled solution curve with its invariant record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<GellMannState>,
    pub casimir_track: Vec<CasimirReport>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// ρ(t) = U ρ U† with U = exp(−i Ĥ t / ħ), via diagonalization Ĥ = V E V†.
pub fn evolve_exact(
    state: &GellMannState,
    coeffs: &HamiltonianCoeffs,
    t: f64,
    basis: &GellMannBasis,
) -> Result<GellMannState> {
    if !t.is_finite() {
        return Err(CoreError::InvalidArgument("time must be finite".into()));
    }
    let op = coeffs_to_operator(coeffs, basis)?;
    let rho = state_to_matrix(state, basis)?;
    let u = propagator(&op, t, coeffs.hbar)?;
    let evolved = &u * &rho * u.adjoint();
    debug_assert!(derivative_convention_residual(&rho, &op, coeffs.hbar) <= 1e-9);
    matrix_to_state(&HermitianOperator::new(evolved)?, basis)
}

fn propagator(op: &HermitianOperator, t: f64, hbar: f64) -> Result<crate::CMatrix> {
    let eig = SymmetricEigen::new(op.entries.clone());
    let n = op.n;
    let mut u = crate::CMatrix::zeros(n, n);
    for k in 0..n {
        let phase = C64::new(0.0, -eig.eigenvalues[k] * t / hbar).exp();
        let vk = eig.eigenvectors.column(k);
        for i in 0..n {
            for j in 0..n {
                u[(i, j)] += vk[i] * phase * vk[j].conj();
            }
        }
    }
    let dev = crate::basis::max_norm(&(u.adjoint() * &u - crate::CMatrix::identity(n, n)));
    if dev > 1e-12 {
        return Err(CoreError::BasisInconsistency(format!(
            "propagator lost unitarity: deviation {dev:.3e}"
        )));
    }
    Ok(u)
}

/// Residual of d/dt (U ρ U†)|₀ against (i/ħ)[ρ, Ĥ]; pins the conjugation
/// ordering to the flow convention.
fn derivative_convention_residual(rho: &crate::CMatrix, op: &HermitianOperator, hbar: f64) -> f64 {
    let i_over_h = C64::new(0.0, 1.0 / hbar);
    let analytic = (rho * &op.entries - &op.entries * rho) * i_over_h;
    let eps = 1e-6;
    let up = propagator(op, eps, hbar).unwrap();
    let um = propagator(op, -eps, hbar).unwrap();
    let fd = (&up * rho * up.adjoint() - &um * rho * um.adjoint()) / C64::new(2.0 * eps, 0.0);
    crate::basis::max_norm(&(fd - analytic))
}

/// Classical fixed-step fourth-order Runge–Kutta on the Lie-Poisson flow;
/// records a Casimir report at every sample.
pub fn evolve_rk4(
    state: &GellMannState,
    coeffs: &HamiltonianCoeffs,
    tensors: &StructureTensors,
    basis: &GellMannBasis,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    if dt <= 0.0 || !dt.is_finite() {
        return Err(CoreError::InvalidArgument("dt must be positive and finite".into()));
    }
    if t_end < 0.0 || !t_end.is_finite() {
        return Err(CoreError::InvalidArgument("t_end must be non-negative and finite".into()));
    }
    if state.alpha.iter().any(|v| !v.is_finite()) {
        return Err(CoreError::Divergence { step: 0 });
    }
    let steps = (t_end / dt).round() as usize;
    let dt = if steps > 0 { t_end / steps as f64 } else { dt };
    let mut current = state.clone();
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut track = Vec::with_capacity(steps + 1);
    times.push(0.0);
    track.push(casimir_report(&current, basis, tensors)?);
    states.push(current.clone());
    let field = |s: &GellMannState| flow_field(s, coeffs, tensors);
    for step in 1..=steps {
        let k1 = field(&current)?;
        let k2 = field(&offset(&current, &k1, dt / 2.0))?;
        let k3 = field(&offset(&current, &k2, dt / 2.0))?;
        let k4 = field(&offset(&current, &k3, dt))?;
        let increment = (k1 + &k2 * 2.0 + &k3 * 2.0 + k4) * (dt / 6.0);
        current = offset(&current, &increment, 1.0);
        if current.alpha.iter().any(|v| !v.is_finite()) {
            return Err(CoreError::Divergence { step });
        }
        times.push(step as f64 * dt);
        track.push(casimir_report(&current, basis, tensors)?);
        states.push(current.clone());
    }
    Ok(Trajectory {
        times,
        states,
        casimir_track: track,
    })
}

fn offset(state: &GellMannState, dir: &crate::RVector, scale: f64) -> GellMannState {
    GellMannState {
        n: state.n,
        alpha0: state.alpha0,
        alpha: &state.alpha + dir * scale,
    }
}

/// Trajectory sampled with `evolve_exact` at uniform times; the oracle
/// counterpart of `evolve_rk4`.
pub fn exact_trajectory(
    state: &GellMannState,
    coeffs: &HamiltonianCoeffs,
    tensors: &StructureTensors,
    basis: &GellMannBasis,
    t_end: f64,
    steps: usize,
) -> Result<Trajectory> {
    if steps == 0 {
        return Err(CoreError::InvalidArgument("steps must be positive".into()));
    }
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut track = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let t = t_end * k as f64 / steps as f64;
        let s = evolve_exact(state, coeffs, t, basis)?;
        times.push(t);
        track.push(casimir_report(&s, basis, tensors)?);
        states.push(s);
    }
    Ok(Trajectory {
        times,
        states,
        casimir_track: track,
    })
}

/// Max |value(t) − value(0)| per tracked invariant: keys `tr{m}`, `S{m}`,
/// `C{m}` for m = 2..N, plus `entropy`.
pub fn casimir_drift(trajectory: &Trajectory) -> Result<BTreeMap<String, f64>> {
    let first = trajectory
        .casimir_track
        .first()
        .ok_or_else(|| CoreError::InvalidArgument("trajectory is empty".into()))?;
    let n = first.n;
    let mut drifts = BTreeMap::new();
    for (i, m) in (2..=n).enumerate() {
        let d = |get: &dyn Fn(&CasimirReport) -> f64| {
            let base = get(first);
            trajectory
                .casimir_track
                .iter()
                .map(|r| (get(r) - base).abs())
                .fold(0.0, f64::max)
        };
        drifts.insert(format!("tr{m}"), d(&|r| r.moments[i]));
        drifts.insert(format!("S{m}"), d(&|r| r.char_coeffs[m - 1]));
        drifts.insert(format!("C{m}"), d(&|r| r.sudbery[i]));
    }
    let base = first.entropy;
    let ent = trajectory
        .casimir_track
        .iter()
        .map(|r| (r.entropy - base).abs())
        .fold(0.0, f64::max);
    drifts.insert("entropy".into(), ent);
    Ok(drifts)
}

/// CSV rendering: `t,alpha_1..alpha_{N²−1},tr2..trN,S2..SN,entropy`,
/// 17 significant digits.
pub fn trajectory_to_csv(trajectory: &Trajectory) -> Result<String> {
    let first = trajectory
        .states
        .first()
        .ok_or_else(|| CoreError::InvalidArgument("trajectory is empty".into()))?;
    let n = first.n;
    let dim = n * n - 1;
    let mut out = String::from("t");
    for k in 1..=dim {
        out.push_str(&format!(",alpha_{k}"));
    }
    for m in 2..=n {
        out.push_str(&format!(",tr{m}"));
    }
    for m in 2..=n {
        out.push_str(&format!(",S{m}"));
    }
    out.push_str(",entropy\n");
    for ((t, s), rep) in trajectory
        .times
        .iter()
        .zip(&trajectory.states)
        .zip(&trajectory.casimir_track)
    {
        out.push_str(&format!("{t:.16e}"));
        for v in s.alpha.iter() {
            out.push_str(&format!(",{v:.16e}"));
        }
        for v in &rep.moments {
            out.push_str(&format!(",{v:.16e}"));
        }
        for v in &rep.char_coeffs[1..] {
            out.push_str(&format!(",{v:.16e}"));
        }
        out.push_str(&format!(",{:.16e}\n", rep.entropy));
    }
    Ok(out)
}
