//! Casimir invariants of the su(N) Poisson structure.
//!
//! Three interchangeable families: density-matrix moments Tr ρ^m,
//! characteristic-polynomial coefficients S_m (elementary symmetric
//! polynomials of the eigenvalues, via the Newton-type recursion), and the
//! Sudbery chain contractions C^(m). Positivity of all S_m characterizes
//! positive semi-definiteness; entropy −Tr ρ ln ρ is a further Casimir.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::basis::{state_to_matrix, GellMannBasis, StructureTensors};
use crate::error::{CoreError, Result};
use crate::poisson::{bracket, random_alpha, GellMannState};
use crate::report::VerificationReport;
use crate::RVector;

/// Eigenvalues below this are treated as exact zeros in the entropy sum.
pub const ENTROPY_EIGENVALUE_CUTOFF: f64 = 1e-12;
/// Default tolerance on S_m for the positivity test.
pub const PSD_TOLERANCE: f64 = 1e-10;

/// All Casimir families evaluated at one state.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CasimirReport {
    pub n: usize,
    /// [Tr ρ², …, Tr ρ^N]
    pub moments: Vec<f64>,
    /// [S_1, …, S_N]
    pub char_coeffs: Vec<f64>,
    /// [C^(2), …, C^(N)]
    pub sudbery: Vec<f64>,
    /// Von Neumann entropy in nats; NaN when the state is not PSD.
    pub entropy: f64,
    pub psd: bool,
    /// min_m S_m
    pub psd_margin: f64,
}

/// Moments [Tr ρ², …, Tr ρ^{m_max}] by repeated matrix products.
pub fn moments(state: &GellMannState, basis: &GellMannBasis, m_max: usize) -> Result<Vec<f64>> {
    if m_max < 2 {
        return Err(CoreError::InvalidArgument("m_max must be at least 2".into()));
    }
    let rho = state_to_matrix(state, basis)?;
    let mut out = Vec::with_capacity(m_max - 1);
    let mut power = rho.clone();
    for _ in 2..=m_max {
        power = &power * &rho;
        let tr = power.trace();
        debug_assert!(tr.im.abs() <= 1e-12);
        out.push(tr.re);
    }
    Ok(out)
}

/// Characteristic coefficients [S_1, …, S_N] from the recursion
/// S_m = (1/m) Σ_{k=1..m} (−1)^{k−1} Tr(ρ^k) S_{m−k}, S_0 = 1, S_1 = Tr ρ.
///
/// `moments` covers orders 2..=N; `alpha0` supplies Tr ρ.
pub fn char_coeffs(moments: &[f64], alpha0: f64) -> Result<Vec<f64>> {
    let n = moments.len() + 1;
    if n < 2 {
        return Err(CoreError::InsufficientMoments { need: 2, got: 1 });
    }
    // power sums Tr ρ^k indexed from k = 1
    let mut power = Vec::with_capacity(n);
    power.push(alpha0);
    power.extend_from_slice(moments);
    let mut s = vec![1.0]; // S_0
    for m in 1..=n {
        let mut acc = 0.0;
        for k in 1..=m {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            acc += sign * power[k - 1] * s[m - k];
        }
        s.push(acc / m as f64);
    }
    Ok(s[1..].to_vec())
}

/// PSD test: all S_m ≥ −tolerance. Returns the verdict and min_m S_m.
pub fn is_psd(state: &GellMannState, basis: &GellMannBasis, tolerance: f64) -> Result<(bool, f64)> {
    let mom = moments(state, basis, basis.n)?;
    let s = char_coeffs(&mom, state.alpha0)?;
    let margin = s.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok((margin >= -tolerance, margin))
}

/// Builds W(α) = Σ_a α_a D_a with (D_a)_{bc} = d_abc.
fn d_contraction_matrix(tensors: &StructureTensors, alpha: &RVector) -> DMatrix<f64> {
    let dim = tensors.dim();
    let mut w = DMatrix::zeros(dim, dim);
    // the expanded list stores each distinct ordering once, so each (b,c)
    // slot receives exactly one contribution per value of a
    for e in &tensors.d {
        w[(e.b, e.c)] += e.value * alpha[e.a];
    }
    w
}

fn factorial(m: usize) -> f64 {
    (2..=m).map(|k| k as f64).product()
}

/// Sudbery basis Casimir C^(m) = m! · α^T W(α)^{m−2} α with W = Σ α_a D_a.
///
/// The chain contraction of the symmetrized d-product collapses to a matrix
/// power because the commuting α factors make every permutation term equal;
/// base cases C^(2) = 2 α·α and C^(3) = 6 d αα α fix the m! convention.
pub fn sudbery_casimir(state: &GellMannState, tensors: &StructureTensors, m: usize) -> Result<f64> {
    if m < 2 || m > state.n {
        return Err(CoreError::InvalidArgument(format!(
            "Sudbery order m={m} out of range 2..={}",
            state.n
        )));
    }
    if state.alpha.len() != tensors.dim() {
        return Err(CoreError::DimensionMismatch {
            expected: tensors.dim(),
            got: state.alpha.len(),
            context: "sudbery_casimir",
        });
    }
    let alpha = &state.alpha;
    if m == 2 {
        return Ok(2.0 * alpha.dot(alpha));
    }
    let w = d_contraction_matrix(tensors, alpha);
    let mut v = alpha.clone();
    for _ in 0..(m - 2) {
        v = &w * v;
    }
    Ok(factorial(m) * alpha.dot(&v))
}

/// Analytic gradient of C^(m):
/// ∇_ν = m! [ 2 (W^{m−2} α)_ν + Σ_{r=0}^{m−3} α^T W^r D_ν W^{m−3−r} α ].
pub fn sudbery_gradient(
    state: &GellMannState,
    tensors: &StructureTensors,
    m: usize,
) -> Result<RVector> {
    if m < 2 || m > state.n {
        return Err(CoreError::InvalidArgument(format!(
            "Sudbery order m={m} out of range 2..={}",
            state.n
        )));
    }
    let alpha = &state.alpha;
    let dim = tensors.dim();
    if m == 2 {
        return Ok(alpha * 4.0);
    }
    let w = d_contraction_matrix(tensors, alpha);
    // p_r = W^r α for r = 0..m−2
    let mut p = vec![alpha.clone()];
    for r in 1..=(m - 2) {
        p.push(&w * &p[r - 1]);
    }
    let mut grad = &p[m - 2] * 2.0;
    for r in 0..=(m - 3) {
        // α^T W^r D_ν W^{m−3−r} α = p_r^T D_ν p_{m−3−r}
        let left = &p[r];
        let right = &p[m - 3 - r];
        let mut term = DVector::zeros(dim);
        for e in &tensors.d {
            term[e.a] += e.value * left[e.b] * right[e.c];
        }
        grad += term;
    }
    Ok(grad * factorial(m))
}

/// Checks the pure-state chain C^(m) = 2m(1 − 2/N) C^(m−1) for m = 3..N.
///
/// Errors when the input is not pure (Tr ρ² must be 1 within `tolerance`
/// and the state PSD).
pub fn pure_chain_check(
    state: &GellMannState,
    basis: &GellMannBasis,
    tensors: &StructureTensors,
    tolerance: f64,
) -> Result<VerificationReport> {
    let mom = moments(state, basis, basis.n)?;
    if (mom[0] - 1.0).abs() > tolerance {
        return Err(CoreError::NotPure(format!("Tr rho^2 = {}", mom[0])));
    }
    let (psd, margin) = is_psd(state, basis, tolerance.max(PSD_TOLERANCE))?;
    if !psd {
        return Err(CoreError::NotPure(format!("S_m margin = {margin}")));
    }
    let n = basis.n;
    let mut worst = 0.0_f64;
    for m in 3..=n {
        let cm = sudbery_casimir(state, tensors, m)?;
        let cprev = sudbery_casimir(state, tensors, m - 1)?;
        let expect = 2.0 * m as f64 * (1.0 - 2.0 / n as f64) * cprev;
        let scale = cm.abs().max(expect.abs()).max(1.0);
        worst = worst.max((cm - expect).abs() / scale);
    }
    Ok(VerificationReport::new("casimirs.pure_chain", worst, n.saturating_sub(2), tolerance))
}

/// Eigenvalues of the state's matrix, unsorted.
pub fn eigenvalues(state: &GellMannState, basis: &GellMannBasis) -> Result<RVector> {
    let rho = state_to_matrix(state, basis)?;
    Ok(nalgebra::SymmetricEigen::new(rho).eigenvalues)
}

/// Von Neumann entropy −Σ d_i ln d_i in nats. Requires PSD within 1e−10.
pub fn entropy(state: &GellMannState, basis: &GellMannBasis) -> Result<f64> {
    let eig = eigenvalues(state, basis)?;
    let mut s = 0.0;
    for &d in eig.iter() {
        if d < -1e-10 {
            return Err(CoreError::NotAState(format!("negative eigenvalue {d:.3e}")));
        }
        if d > ENTROPY_EIGENVALUE_CUTOFF {
            s -= d * d.ln();
        }
    }
    Ok(s)
}

/// Full Casimir summary at one state.
pub fn casimir_report(
    state: &GellMannState,
    basis: &GellMannBasis,
    tensors: &StructureTensors,
) -> Result<CasimirReport> {
    let mom = moments(state, basis, basis.n)?;
    let s = char_coeffs(&mom, state.alpha0)?;
    let margin = s.iter().cloned().fold(f64::INFINITY, f64::min);
    let psd = margin >= -PSD_TOLERANCE;
    let sudbery = (2..=basis.n)
        .map(|m| sudbery_casimir(state, tensors, m))
        .collect::<Result<Vec<_>>>()?;
    let ent = if psd { entropy(state, basis)? } else { f64::NAN };
    Ok(CasimirReport {
        n: basis.n,
        moments: mom,
        char_coeffs: s,
        sudbery,
        entropy: ent,
        psd,
        psd_margin: margin,
    })
}

/// Ad-invariance of the symmetric tensors.
///
/// For m = 3 sweeps the identity f_mlj d_npj + f_nlj d_pmj + f_plj d_mnj = 0
/// over all index triples; for any m additionally checks {α_ν, C^(m)} = 0 at
/// `trials` random points using the analytic Casimir gradient.
pub fn verify_ad_invariance(
    tensors: &StructureTensors,
    m: usize,
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<VerificationReport> {
    if m < 3 || m > tensors.n {
        return Err(CoreError::InvalidArgument(format!(
            "ad-invariance order m={m} out of range 3..={}",
            tensors.n
        )));
    }
    if trials == 0 {
        return Err(CoreError::InvalidArgument("trials must be >= 1".into()));
    }
    let dim = tensors.dim();
    let mut sweep_residual = 0.0_f64;
    if m == 3 {
        let f = tensors.f_dense();
        let d = tensors.d_dense();
        let idx = |a: usize, b: usize, c: usize| (a * dim + b) * dim + c;
        let rows: Vec<usize> = (0..dim).collect();
        sweep_residual = crate::par::map_max(rows, |mm| {
            let mut worst = 0.0_f64;
            for nn in 0..dim {
                for p in 0..dim {
                    for l in 0..dim {
                        let mut s = 0.0;
                        for j in 0..dim {
                            s += f[idx(mm, l, j)] * d[idx(nn, p, j)]
                                + f[idx(nn, l, j)] * d[idx(p, mm, j)]
                                + f[idx(p, l, j)] * d[idx(mm, nn, j)];
                        }
                        worst = worst.max(s.abs());
                    }
                }
            }
            worst
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphas: Vec<RVector> = (0..trials).map(|_| random_alpha(dim, &mut rng)).collect();
    let n = tensors.n;
    let bracket_residual = crate::par::map_max(alphas, |alpha| {
        let state = GellMannState { n, alpha, alpha0: 1.0 };
        let grad = sudbery_gradient(&state, tensors, m).expect("valid order");
        let mut worst = 0.0_f64;
        for nu in 0..dim {
            let e = RVector::from_fn(dim, |p, _| if p == nu { 1.0 } else { 0.0 });
            let v = bracket(&e, &grad, tensors, &state).expect("matching dims");
            worst = worst.max(v.abs());
        }
        worst
    });

    let max_residual = sweep_residual.max(bracket_residual);
    Ok(
        VerificationReport::new(format!("casimirs.ad_invariance_m{m}"), max_residual, trials, tolerance)
            .with_detail("sweep_residual", sweep_residual)
            .with_detail("bracket_residual", bracket_residual),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{compute_structure_tensors, generate_basis, matrix_to_state, HermitianOperator};
    use crate::canonical::{pushforward, random_canonical};
    use crate::{C64, CMatrix};
    use approx::assert_abs_diff_eq;
    use rand_distr::{Distribution, StandardNormal};

    fn setup(n: usize) -> (GellMannBasis, StructureTensors) {
        let b = generate_basis(n).unwrap();
        let t = compute_structure_tensors(&b, 1e-12).unwrap();
        (b, t)
    }

    fn state_from_eigenvalues(evs: &[f64], basis: &GellMannBasis) -> GellMannState {
        let n = basis.n;
        let mut m = CMatrix::zeros(n, n);
        for (i, &e) in evs.iter().enumerate() {
            m[(i, i)] = C64::new(e, 0.0);
        }
        matrix_to_state(&HermitianOperator::new(m).unwrap(), basis).unwrap()
    }

    fn random_unit_trace_state(n: usize, basis: &GellMannBasis, rng: &mut ChaCha8Rng) -> GellMannState {
        let raw = CMatrix::from_fn(n, n, |_, _| {
            C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
        });
        let mut herm = (&raw + raw.adjoint()) * C64::new(0.5, 0.0);
        let shift = (1.0 - herm.trace().re) / n as f64;
        for i in 0..n {
            herm[(i, i)] += C64::new(shift, 0.0);
        }
        matrix_to_state(&HermitianOperator::new(herm).unwrap(), basis).unwrap()
    }

    #[test]
    fn moments_examples() {
        let (b, _) = setup(3);
        let mixed = GellMannState::maximally_mixed(3);
        let m = moments(&mixed, &b, 3).unwrap();
        assert_abs_diff_eq!(m[0], 1.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m[1], 1.0 / 9.0, epsilon = 1e-14);

        let half = state_from_eigenvalues(&[0.5, 0.5, 0.0], &b);
        let m = moments(&half, &b, 3).unwrap();
        assert_abs_diff_eq!(m[0], 0.5, epsilon = 1e-13);
        assert_abs_diff_eq!(m[1], 0.25, epsilon = 1e-13);

        let pure = state_from_eigenvalues(&[1.0, 0.0, 0.0], &b);
        let m = moments(&pure, &b, 3).unwrap();
        assert!(m.iter().all(|v| (v - 1.0).abs() <= 1e-13));
    }

    #[test]
    fn moments_requires_order_two() {
        let (b, _) = setup(2);
        assert!(moments(&GellMannState::maximally_mixed(2), &b, 1).is_err());
    }

    #[test]
    fn char_coeffs_examples() {
        // pure state: S_k = 0 for k >= 2
        let s = char_coeffs(&[1.0, 1.0], 1.0).unwrap();
        assert_abs_diff_eq!(s[0], 1.0, epsilon = 1e-14);
        assert!(s[1].abs() <= 1e-14 && s[2].abs() <= 1e-14);

        // maximally mixed N=2: S_2 = 1/4
        let s = char_coeffs(&[0.5], 1.0).unwrap();
        assert_abs_diff_eq!(s[1], 0.25, epsilon = 1e-14);
    }

    #[test]
    fn char_coeffs_match_elementary_symmetric_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for n in [2, 3, 4] {
            let (b, _) = setup(n);
            for _ in 0..100 {
                let state = random_unit_trace_state(n, &b, &mut rng);
                let mom = moments(&state, &b, n).unwrap();
                let s = char_coeffs(&mom, state.alpha0).unwrap();
                let eig = eigenvalues(&state, &b).unwrap();
                // elementary symmetric polynomials via the product expansion
                let mut poly = vec![1.0];
                for &e in eig.iter() {
                    let mut next = vec![0.0; poly.len() + 1];
                    for (i, &c) in poly.iter().enumerate() {
                        next[i] += c;
                        next[i + 1] += c * e;
                    }
                    poly = next;
                }
                for m in 1..=n {
                    assert!((s[m - 1] - poly[m]).abs() <= 1e-10, "n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn psd_examples() {
        let (b, _) = setup(2);
        let (ok, margin) = is_psd(&GellMannState::maximally_mixed(2), &b, 1e-10).unwrap();
        assert!(ok && margin > 0.0);

        let bad = GellMannState::new(2, DVector::from_vec(vec![0.0, 0.0, 2.0]), 1.0).unwrap();
        let (ok, margin) = is_psd(&bad, &b, 1e-10).unwrap();
        assert!(!ok);
        assert_abs_diff_eq!(margin, -0.75, epsilon = 1e-12);

        let pure = state_from_eigenvalues(&[1.0, 0.0, 0.0], &generate_basis(3).unwrap());
        let (ok, margin) = is_psd(&pure, &generate_basis(3).unwrap(), 1e-10).unwrap();
        assert!(ok && margin.abs() <= 1e-10);
    }

    #[test]
    fn psd_agrees_with_min_eigenvalue_sign() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        let tol = 1e-9;
        for n in [2, 3, 4] {
            let (b, _) = setup(n);
            for _ in 0..333 {
                let state = random_unit_trace_state(n, &b, &mut rng);
                let (verdict, _) = is_psd(&state, &b, tol).unwrap();
                let min_eig = eigenvalues(&state, &b).unwrap().min();
                if min_eig > tol {
                    assert!(verdict);
                } else if min_eig < -tol {
                    assert!(!verdict);
                }
            }
        }
    }

    #[test]
    fn sudbery_base_cases_and_pure_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(79);
        for n in [2, 3, 4] {
            let (b, t) = setup(n);
            let z = random_canonical(n, &mut rng).normalized().unwrap();
            let pure = pushforward(&z, &b).unwrap();
            let c2 = sudbery_casimir(&pure, &t, 2).unwrap();
            assert!((c2 - 4.0 * (1.0 - 1.0 / n as f64)).abs() <= 1e-12);
            assert_eq!(c2, 2.0 * pure.alpha.dot(&pure.alpha));
            if n >= 3 {
                let c3 = sudbery_casimir(&pure, &t, 3).unwrap();
                let expect = 6.0 * 4.0 * (1.0 - 1.0 / n as f64) * (1.0 - 2.0 / n as f64);
                assert!((c3 - expect).abs() <= 1e-11, "n={n}: {c3} vs {expect}");
            }
            let zero = GellMannState::maximally_mixed(n);
            for m in 2..=n {
                assert_eq!(sudbery_casimir(&zero, &t, m).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn sudbery_c3_matches_direct_d_contraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        let (_, t) = setup(3);
        let alpha = random_alpha(8, &mut rng);
        let s = GellMannState::new(3, alpha.clone(), 1.0).unwrap();
        let mut direct = 0.0;
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    direct += t.d_at(i, j, k) * alpha[i] * alpha[j] * alpha[k];
                }
            }
        }
        assert!((sudbery_casimir(&s, &t, 3).unwrap() - 6.0 * direct).abs() <= 1e-11);
    }

    #[test]
    fn sudbery_gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(89);
        for n in [3, 4] {
            let (_, t) = setup(n);
            let dim = t.dim();
            let alpha = random_alpha(dim, &mut rng);
            for m in 2..=n {
                let s = GellMannState::new(n, alpha.clone(), 1.0).unwrap();
                let grad = sudbery_gradient(&s, &t, m).unwrap();
                let step = 1e-6;
                for nu in 0..dim {
                    let mut ap = alpha.clone();
                    ap[nu] += step;
                    let mut am = alpha.clone();
                    am[nu] -= step;
                    let fp = sudbery_casimir(&GellMannState::new(n, ap, 1.0).unwrap(), &t, m).unwrap();
                    let fm = sudbery_casimir(&GellMannState::new(n, am, 1.0).unwrap(), &t, m).unwrap();
                    let fd = (fp - fm) / (2.0 * step);
                    assert!((grad[nu] - fd).abs() <= 1e-5 * grad[nu].abs().max(1.0),
                        "n={n} m={m} nu={nu}: {} vs {fd}", grad[nu]);
                }
            }
        }
    }

    #[test]
    fn pure_chain_passes_for_random_pure_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(97);
        for n in [3, 4] {
            let (b, t) = setup(n);
            for _ in 0..10 {
                let z = random_canonical(n, &mut rng).normalized().unwrap();
                let pure = pushforward(&z, &b).unwrap();
                let rep = pure_chain_check(&pure, &b, &t, 1e-10).unwrap();
                assert!(rep.passed, "n={n}: residual {:.3e}", rep.max_residual);
            }
        }
    }

    #[test]
    fn pure_chain_rejects_mixed_state() {
        let (b, t) = setup(3);
        let err = pure_chain_check(&GellMannState::maximally_mixed(3), &b, &t, 1e-10);
        assert!(matches!(err, Err(CoreError::NotPure(_))));
    }

    #[test]
    fn entropy_examples() {
        let (b3, _) = setup(3);
        let pure = state_from_eigenvalues(&[1.0, 0.0, 0.0], &b3);
        assert!(entropy(&pure, &b3).unwrap().abs() <= 1e-10);

        for n in [2, 3, 4] {
            let (b, _) = setup(n);
            let mixed = GellMannState::maximally_mixed(n);
            assert_abs_diff_eq!(entropy(&mixed, &b).unwrap(), (n as f64).ln(), epsilon = 1e-12);
        }

        let half = state_from_eigenvalues(&[0.5, 0.5, 0.0], &b3);
        assert_abs_diff_eq!(entropy(&half, &b3).unwrap(), 2.0_f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn entropy_rejects_negative_eigenvalues() {
        let (b, _) = setup(2);
        let bad = GellMannState::new(2, DVector::from_vec(vec![0.0, 0.0, 2.0]), 1.0).unwrap();
        assert!(matches!(entropy(&bad, &b), Err(CoreError::NotAState(_))));
    }

    #[test]
    fn ad_invariance_passes_and_detects_fault() {
        let (_, t3) = setup(3);
        let rep = verify_ad_invariance(&t3, 3, 5, 42, 1e-9).unwrap();
        assert!(rep.passed, "residual {:.3e}", rep.max_residual);
        assert!(rep.details["sweep_residual"] <= 1e-12);

        let (_, t4) = setup(4);
        let rep = verify_ad_invariance(&t4, 4, 20, 42, 1e-9).unwrap();
        assert!(rep.passed, "m=4 residual {:.3e}", rep.max_residual);

        let mut broken = t3.clone();
        broken.d[0].value += 1e-2;
        let rep = verify_ad_invariance(&broken, 3, 5, 42, 1e-9).unwrap();
        assert!(!rep.passed);
    }

    #[test]
    fn pure_detection_equivalence() {
        // Tr ρ² = 1 with PSD <=> spectrum is (1, 0, ..., 0)
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let (b, _) = setup(3);
        for _ in 0..50 {
            let z = random_canonical(3, &mut rng).normalized().unwrap();
            let s = pushforward(&z, &b).unwrap();
            let mut eig: Vec<f64> = eigenvalues(&s, &b).unwrap().iter().cloned().collect();
            eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
            assert!((eig[0] - 1.0).abs() <= 1e-8);
            assert!(eig[1..].iter().all(|e| e.abs() <= 1e-8));
        }
    }

    #[test]
    fn report_consistency() {
        let (b, t) = setup(3);
        let mixed = GellMannState::maximally_mixed(3);
        let rep = casimir_report(&mixed, &b, &t).unwrap();
        assert_abs_diff_eq!(rep.char_coeffs[0], mixed.alpha0, epsilon = 1e-12);
        assert!(rep.psd);
        assert!(rep.entropy >= 0.0 && rep.entropy <= (3.0_f64).ln() + 1e-9);
        assert_eq!(rep.moments.len(), 2);
        assert_eq!(rep.sudbery.len(), 2);
    }
}
