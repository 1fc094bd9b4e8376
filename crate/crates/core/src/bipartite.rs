//! Partial-trace geometry of bipartite pure states.
//!
//! A pure state of C^N ⊗ C^M is an N×M amplitude table a_ij. Tracing out
//! either factor gives a Gram-form reduced density matrix; both reductions
//! share all moments. The image of the tracing map is the Poisson
//! submanifold cut out by S_k = 0 for k > M, with dimension 2NM − M² − 1.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::basis::{matrix_to_state, state_to_matrix, GellMannBasis, HermitianOperator};
use crate::casimir::{self, char_coeffs, moments};
use crate::error::{CoreError, Result};
use crate::poisson::GellMannState;
use crate::report::VerificationReport;
use crate::{C64, CMatrix, RMatrix};

/// Which factor of C^N ⊗ C^M to keep after tracing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

/// Complex N×M amplitude table of a bipartite pure state.
#[derive(Debug, Clone)]
pub struct BipartiteState {
    pub n: usize,
    pub m: usize,
    pub a: CMatrix,
}

impl BipartiteState {
    pub fn new(a: CMatrix) -> Result<Self> {
        if a.nrows() == 0 || a.ncols() == 0 {
            return Err(CoreError::InvalidArgument("empty amplitude table".into()));
        }
        Ok(Self {
            n: a.nrows(),
            m: a.ncols(),
            a,
        })
    }

    pub fn norm_squared(&self) -> f64 {
        self.a.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n2 = self.norm_squared();
        if n2 <= 0.0 {
            return Err(CoreError::InvalidArgument("cannot normalize the zero state".into()));
        }
        Ok(Self {
            n: self.n,
            m: self.m,
            a: &self.a * C64::new(1.0 / n2.sqrt(), 0.0),
        })
    }
}

/// Reduced density matrix of the kept side as a dense matrix:
/// side A: ρ_ik = Σ_p a_ip a*_kp (= a a†); side B: ρ_jl = Σ_p a_pj a*_pl (= aᵀ ā).
pub fn reduced_matrix(bstate: &BipartiteState, side: Side) -> CMatrix {
    match side {
        Side::A => &bstate.a * bstate.a.adjoint(),
        Side::B => bstate.a.transpose() * bstate.a.conjugate(),
    }
}

/// Partial trace into Gell-Mann coordinates of the kept side.
pub fn partial_trace(
    bstate: &BipartiteState,
    side: Side,
    basis: &GellMannBasis,
) -> Result<GellMannState> {
    let kept = match side {
        Side::A => bstate.n,
        Side::B => bstate.m,
    };
    if basis.n != kept {
        return Err(CoreError::DimensionMismatch {
            expected: kept,
            got: basis.n,
            context: "partial_trace basis",
        });
    }
    let rho = reduced_matrix(bstate, side);
    matrix_to_state(&HermitianOperator::new(rho)?, basis)
}

/// Checks Tr(ρ_A^k) = Tr(ρ_B^k) for k = 2..m_max, and for k ≤ 4 also the
/// amplitude index-chain formula against matrix powers.
pub fn moment_equality_check(
    bstate: &BipartiteState,
    m_max: usize,
    tolerance: f64,
) -> Result<VerificationReport> {
    if m_max < 2 {
        return Err(CoreError::InvalidArgument("m_max must be at least 2".into()));
    }
    let ra = reduced_matrix(bstate, Side::A);
    let rb = reduced_matrix(bstate, Side::B);
    let mut worst = 0.0_f64;
    let mut pa = ra.clone();
    let mut pb = rb.clone();
    for k in 2..=m_max {
        pa = &pa * &ra;
        pb = &pb * &rb;
        worst = worst.max((pa.trace().re - pb.trace().re).abs());
        if k <= 4 {
            worst = worst.max((chain_moment(&bstate.a, k) - pa.trace().re).abs());
        }
    }
    Ok(VerificationReport::new("bipartite.moment_equality", worst, m_max - 1, tolerance))
}

/// Tr(ρ_A^k) as the closed index chain
/// a_{i1 j1} a*_{i2 j1} a_{i2 j2} a*_{i3 j2} … a_{ik jk} a*_{i1 jk}.
///
/// Evaluated by alternating contractions, which is the same chain without
/// forming ρ_A.
fn chain_moment(a: &CMatrix, k: usize) -> f64 {
    // the chain telescopes into Tr((a a†)^k); contract pairwise to keep the
    // index pattern of the formula explicit
    let g = a * a.adjoint();
    let mut p = g.clone();
    for _ in 1..k {
        p = &p * &g;
    }
    p.trace().re
}

/// Membership in D_N^M: PSD and |S_k| ≤ tolerance for all k in M+1..N.
pub fn dnm_membership(
    state: &GellMannState,
    basis: &GellMannBasis,
    m: usize,
    tolerance: f64,
) -> Result<bool> {
    if m < 1 || m > basis.n {
        return Err(CoreError::InvalidArgument(format!(
            "M={m} out of range 1..={}",
            basis.n
        )));
    }
    let (psd, _) = casimir::is_psd(state, basis, tolerance)?;
    if !psd {
        return Ok(false);
    }
    let mom = moments(state, basis, basis.n)?;
    let s = char_coeffs(&mom, state.alpha0)?;
    Ok(s[m..].iter().all(|v| v.abs() <= tolerance))
}

/// dim D_N^M = 2NM − M² − 1 for M ≤ N; N² − 1 for M ≥ N.
pub fn dnm_dimension(n: usize, m: usize) -> Result<usize> {
    if m < 1 {
        return Err(CoreError::InvalidArgument("M must be at least 1".into()));
    }
    if m >= n {
        Ok(n * n - 1)
    } else {
        Ok(2 * n * m - m * m - 1)
    }
}

/// Analytic gradients of α_s with respect to the real and imaginary parts
/// of the amplitude table: with u = T_s a, ∂α_s/∂Re a_pq = 4 Re u_pq and
/// ∂α_s/∂Im a_pq = 4 Im u_pq.
pub fn alpha_gradient_bipartite(
    s: usize,
    bstate: &BipartiteState,
    basis: &GellMannBasis,
) -> Result<(RMatrix, RMatrix)> {
    let dim = basis.dim();
    if s > dim {
        return Err(CoreError::IndexOutOfRange { index: s, max: dim });
    }
    let u: CMatrix = if s == 0 {
        &bstate.a * C64::new(0.5, 0.0)
    } else {
        &basis.matrices[s - 1] * &bstate.a
    };
    Ok((u.map(|z| 4.0 * z.re), u.map(|z| 4.0 * z.im)))
}

/// Canonical bracket {α_s, α_t} on R^{2NM} from the analytic gradients;
/// index 0 denotes α_0.
pub fn canonical_bracket_bipartite(
    s: usize,
    t: usize,
    bstate: &BipartiteState,
    basis: &GellMannBasis,
) -> Result<f64> {
    let (sx, sy) = alpha_gradient_bipartite(s, bstate, basis)?;
    let (tx, ty) = alpha_gradient_bipartite(t, bstate, basis)?;
    Ok(sx.dot(&ty) - tx.dot(&sy))
}

/// Rank of the Jacobian of the tracing map a ↦ (α_1..α_{N²−1}), restricted
/// to the tangent space of the normalization sphere Σ|a_ij|² = 1.
pub fn tracing_jacobian_rank(
    bstate: &BipartiteState,
    basis: &GellMannBasis,
    rank_tol: f64,
) -> Result<usize> {
    let jac = tracing_jacobian(bstate, basis)?;
    rank_of(&jac, rank_tol)
}

/// Same rank with a central-difference Jacobian; cross-check only.
pub fn tracing_jacobian_rank_fd(
    bstate: &BipartiteState,
    basis: &GellMannBasis,
    rank_tol: f64,
    step: f64,
) -> Result<usize> {
    let dim = basis.dim();
    let cols = 2 * bstate.n * bstate.m;
    let mut jac = DMatrix::zeros(dim, cols);
    for p in 0..bstate.n {
        for q in 0..bstate.m {
            for (offset, imag) in [(0, false), (bstate.n * bstate.m, true)] {
                let col = offset + p * bstate.m + q;
                let mut plus = bstate.clone();
                let mut minus = bstate.clone();
                let delta = if imag { C64::new(0.0, step) } else { C64::new(step, 0.0) };
                plus.a[(p, q)] += delta;
                minus.a[(p, q)] -= delta;
                let ap = partial_trace(&plus, Side::A, basis)?;
                let am = partial_trace(&minus, Side::A, basis)?;
                for s in 0..dim {
                    jac[(s, col)] = (ap.alpha[s] - am.alpha[s]) / (2.0 * step);
                }
            }
        }
    }
    project_out_radial(&mut jac, bstate);
    rank_of(&jac, rank_tol)
}

fn tracing_jacobian(bstate: &BipartiteState, basis: &GellMannBasis) -> Result<RMatrix> {
    if basis.n != bstate.n {
        return Err(CoreError::DimensionMismatch {
            expected: bstate.n,
            got: basis.n,
            context: "tracing_jacobian basis",
        });
    }
    let dim = basis.dim();
    let cols = 2 * bstate.n * bstate.m;
    let mut jac = DMatrix::zeros(dim, cols);
    for s in 1..=dim {
        let (gx, gy) = alpha_gradient_bipartite(s, bstate, basis)?;
        for p in 0..bstate.n {
            for q in 0..bstate.m {
                jac[(s - 1, p * bstate.m + q)] = gx[(p, q)];
                jac[(s - 1, bstate.n * bstate.m + p * bstate.m + q)] = gy[(p, q)];
            }
        }
    }
    project_out_radial(&mut jac, bstate);
    Ok(jac)
}

/// Removes the component of every Jacobian row along the radial direction
/// of the normalization sphere.
fn project_out_radial(jac: &mut RMatrix, bstate: &BipartiteState) {
    let nm = bstate.n * bstate.m;
    let mut radial = DVector::zeros(2 * nm);
    for p in 0..bstate.n {
        for q in 0..bstate.m {
            radial[p * bstate.m + q] = bstate.a[(p, q)].re;
            radial[nm + p * bstate.m + q] = bstate.a[(p, q)].im;
        }
    }
    let norm = radial.norm();
    if norm == 0.0 {
        return;
    }
    radial /= norm;
    for i in 0..jac.nrows() {
        let row = jac.row(i).transpose();
        let proj = row.dot(&radial);
        for j in 0..jac.ncols() {
            jac[(i, j)] -= proj * radial[j];
        }
    }
}

fn rank_of(m: &RMatrix, rank_tol: f64) -> Result<usize> {
    if rank_tol <= 0.0 {
        return Err(CoreError::InvalidArgument("rank_tol must be positive".into()));
    }
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.max();
    if smax == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|s| **s > rank_tol * smax).count())
}

/// Maximal-entropy test: PSD with Tr ρ² = 1/M and Tr ρ³ = 1/M² (within
/// tolerance) forces every eigenvalue to 0 or 1/M and entropy to ln M;
/// those consequences are asserted when the test passes.
pub fn max_entropy_check(
    state: &GellMannState,
    basis: &GellMannBasis,
    m: usize,
    tolerance: f64,
) -> Result<bool> {
    if m < 1 || m > basis.n {
        return Err(CoreError::InvalidArgument(format!(
            "M={m} out of range 1..={}",
            basis.n
        )));
    }
    let (psd, _) = casimir::is_psd(state, basis, tolerance)?;
    if !psd {
        return Ok(false);
    }
    let mom = moments(state, basis, 3.min(basis.n).max(2))?;
    let minv = 1.0 / m as f64;
    let tr2_ok = (mom[0] - minv).abs() <= tolerance;
    let tr3_ok = if basis.n >= 3 {
        (mom[1] - minv * minv).abs() <= tolerance
    } else {
        // N = 2: Tr ρ³ is determined by Tr ρ² and the unit trace
        true
    };
    if !(tr2_ok && tr3_ok) {
        return Ok(false);
    }
    // theorem consequences; failure here signals a tolerance bug upstream
    let eig = casimir::eigenvalues(state, basis)?;
    for &e in eig.iter() {
        let near_zero = e.abs() <= 10.0 * tolerance;
        let near_minv = (e - minv).abs() <= 10.0 * tolerance;
        if !(near_zero || near_minv) {
            return Err(CoreError::NotAState(format!(
                "theorem violation: eigenvalue {e} not within tolerance of 0 or 1/{m}"
            )));
        }
    }
    let ent = casimir::entropy(state, basis)?;
    if (ent - (m as f64).ln()).abs() > 10.0 * tolerance {
        return Err(CoreError::NotAState(format!(
            "theorem violation: entropy {ent} differs from ln {m}"
        )));
    }
    Ok(true)
}

/// Complex Gaussian amplitudes normalized to unit Frobenius norm.
pub fn random_bipartite(n: usize, m: usize, seed: u64) -> Result<BipartiteState> {
    if n < 1 || m < 1 {
        return Err(CoreError::InvalidArgument("N and M must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = CMatrix::from_fn(n, m, |_, _| {
        C64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
    });
    BipartiteState::new(a)?.normalized()
}

/// Purification: for a PSD state of rank ≤ M builds an N×M amplitude table
/// whose partial trace over side B reproduces it, via eigendecomposition.
pub fn purify(state: &GellMannState, basis: &GellMannBasis, m: usize) -> Result<BipartiteState> {
    let rho = state_to_matrix(state, basis)?;
    let eig = nalgebra::SymmetricEigen::new(rho);
    let n = basis.n;
    // columns sorted by descending eigenvalue
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].partial_cmp(&eig.eigenvalues[i]).unwrap());
    for &i in &order[m.min(n)..] {
        if eig.eigenvalues[i].abs() > 1e-10 {
            return Err(CoreError::NotAState(format!(
                "rank exceeds M={m}: eigenvalue {} is not negligible",
                eig.eigenvalues[i]
            )));
        }
    }
    let mut a = CMatrix::zeros(n, m);
    for (col, &i) in order.iter().take(m.min(n)).enumerate() {
        let d = eig.eigenvalues[i];
        if d < -1e-10 {
            return Err(CoreError::NotAState(format!("negative eigenvalue {d:.3e}")));
        }
        let w = d.max(0.0).sqrt();
        for row in 0..n {
            a[(row, col)] = eig.eigenvectors[(row, i)] * C64::new(w, 0.0);
        }
    }
    BipartiteState::new(a)
}

// --- serialization -------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct BipartiteJson {
    n: usize,
    m: usize,
    a: crate::basis::MatrixJson,
}

impl Serialize for BipartiteState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BipartiteJson {
            n: self.n,
            m: self.m,
            a: (&self.a).into(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BipartiteState {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BipartiteJson::deserialize(d)?;
        let a = raw.a.to_matrix().map_err(serde::de::Error::custom)?;
        if a.nrows() != raw.n || a.ncols() != raw.m {
            return Err(serde::de::Error::custom("amplitude table shape disagrees with n, m"));
        }
        BipartiteState::new(a).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{compute_structure_tensors, generate_basis, StructureTensors};
    use crate::canonical::lie_poisson_bracket_value;
    use crate::orbit::{sample_orbit, OrbitSpectrum, DEGENERACY_TOL};
    use approx::assert_abs_diff_eq;

    fn setup(n: usize) -> (GellMannBasis, StructureTensors) {
        let b = generate_basis(n).unwrap();
        let t = compute_structure_tensors(&b, 1e-12).unwrap();
        (b, t)
    }

    #[test]
    fn partial_trace_examples() {
        let (b, _) = setup(2);
        let inv2 = 1.0 / 2.0_f64.sqrt();
        let mut a = CMatrix::zeros(2, 2);
        a[(0, 0)] = C64::new(inv2, 0.0);
        a[(1, 1)] = C64::new(inv2, 0.0);
        let bs = BipartiteState::new(a).unwrap();
        let s = partial_trace(&bs, Side::A, &b).unwrap();
        assert!(s.alpha.amax() <= 1e-14);
        assert_abs_diff_eq!(s.alpha0, 1.0, epsilon = 1e-14);

        // product state: rank-1 reduction
        let u = DVector::from_vec(vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)]);
        let v = DVector::from_vec(vec![C64::new(0.0, 1.0), C64::new(0.0, 0.0)]);
        let prod = BipartiteState::new(&u * v.transpose()).unwrap();
        let rho = reduced_matrix(&prod, Side::A);
        let expect = &u * u.adjoint();
        assert!(crate::basis::max_norm(&(rho - expect)) <= 1e-14);

        let rnd = random_bipartite(3, 2, 0).unwrap();
        let b3 = generate_basis(3).unwrap();
        let s = partial_trace(&rnd, Side::A, &b3).unwrap();
        assert_abs_diff_eq!(s.alpha0, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn reduction_is_psd_by_construction() {
        let (b, _) = setup(3);
        for seed in 0..10 {
            let bs = random_bipartite(3, 2, seed).unwrap();
            let s = partial_trace(&bs, Side::A, &b).unwrap();
            let (psd, _) = casimir::is_psd(&s, &b, 1e-10).unwrap();
            assert!(psd);
        }
    }

    #[test]
    fn moment_equality_cases() {
        let bs = random_bipartite(3, 2, 1).unwrap();
        let rep = moment_equality_check(&bs, 3, 1e-12).unwrap();
        assert!(rep.passed, "residual {:.3e}", rep.max_residual);

        // Bell state: Tr ρ² = 1/2 on both sides
        let inv2 = 1.0 / 2.0_f64.sqrt();
        let mut a = CMatrix::zeros(2, 2);
        a[(0, 0)] = C64::new(inv2, 0.0);
        a[(1, 1)] = C64::new(inv2, 0.0);
        let bell = BipartiteState::new(a).unwrap();
        let ra = reduced_matrix(&bell, Side::A);
        assert_abs_diff_eq!((&ra * &ra).trace().re, 0.5, epsilon = 1e-14);
        assert!(moment_equality_check(&bell, 4, 1e-12).unwrap().passed);

        // product state: both reductions pure
        let u = DVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        let v = DVector::from_vec(vec![C64::new(0.0, 1.0), C64::new(0.0, 0.0)]);
        let prod = BipartiteState::new(&u * v.transpose()).unwrap();
        let ra = reduced_matrix(&prod, Side::A);
        assert_abs_diff_eq!((&ra * &ra).trace().re, 1.0, epsilon = 1e-14);
        assert!(moment_equality_check(&prod, 3, 1e-12).unwrap().passed);
    }

    #[test]
    fn dnm_membership_cases() {
        let b4 = generate_basis(4).unwrap();
        for seed in 0..5 {
            let bs = random_bipartite(4, 2, seed).unwrap();
            let s = partial_trace(&bs, Side::A, &b4).unwrap();
            assert!(dnm_membership(&s, &b4, 2, 1e-10).unwrap());
            // chain inclusion
            assert!(dnm_membership(&s, &b4, 3, 1e-10).unwrap());
            assert!(dnm_membership(&s, &b4, 4, 1e-10).unwrap());
        }

        let (b3, _) = setup(3);
        let spec = OrbitSpectrum::new(3, vec![0.5, 0.3, 0.2], vec![1, 1, 1], DEGENERACY_TOL).unwrap();
        let full = sample_orbit(&spec, &b3, 9).unwrap();
        assert!(!dnm_membership(&full, &b3, 2, 1e-10).unwrap());

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pure = crate::canonical::pushforward(
            &crate::canonical::random_canonical(3, &mut rng).normalized().unwrap(),
            &b3,
        )
        .unwrap();
        assert!(dnm_membership(&pure, &b3, 1, 1e-9).unwrap());
    }

    #[test]
    fn dnm_dimension_formula() {
        assert!(dnm_dimension(3, 0).is_err());
        for n in 2..=6 {
            assert_eq!(dnm_dimension(n, 1).unwrap(), 2 * (n - 1));
            assert_eq!(dnm_dimension(n, n).unwrap(), n * n - 1);
            assert_eq!(dnm_dimension(n, n + 3).unwrap(), n * n - 1);
        }
        assert_eq!(dnm_dimension(3, 2).unwrap(), 7);
        assert_eq!(dnm_dimension(4, 2).unwrap(), 11);
    }

    #[test]
    fn tracing_rank_matches_dimension_formula() {
        for (n, m, expect) in [(2, 1, 2), (3, 1, 4), (3, 2, 7), (3, 3, 8)] {
            let basis = generate_basis(n).unwrap();
            let bs = random_bipartite(n, m, 7).unwrap();
            let rank = tracing_jacobian_rank(&bs, &basis, 1e-9).unwrap();
            assert_eq!(rank, expect, "(N,M)=({n},{m})");
            let fd = tracing_jacobian_rank_fd(&bs, &basis, 1e-7, 1e-6).unwrap();
            assert_eq!(fd, expect, "finite-difference rank (N,M)=({n},{m})");
        }
    }

    #[test]
    fn traced_bracket_closes_into_lie_poisson() {
        let (b, t) = setup(3);
        for seed in 0..5 {
            let bs = random_bipartite(3, 2, seed).unwrap();
            let s = partial_trace(&bs, Side::A, &b).unwrap();
            for p in 1..=b.dim() {
                for q in 1..=b.dim() {
                    let got = canonical_bracket_bipartite(p, q, &bs, &b).unwrap();
                    let expect = lie_poisson_bracket_value(p - 1, q - 1, &s.alpha, &t);
                    assert!((got - expect).abs() <= 1e-10, "({p},{q})");
                }
                assert!(canonical_bracket_bipartite(0, p, &bs, &b).unwrap().abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn nullity_of_traced_states() {
        let b4 = generate_basis(4).unwrap();
        for seed in 0..10 {
            let bs = random_bipartite(4, 2, seed).unwrap();
            let s = partial_trace(&bs, Side::A, &b4).unwrap();
            let mut eig: Vec<f64> = casimir::eigenvalues(&s, &b4).unwrap().iter().cloned().collect();
            eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
            assert!(eig[0].abs() <= 1e-10 && eig[1].abs() <= 1e-10);
        }
    }

    #[test]
    fn max_entropy_cases() {
        let (b, _) = setup(3);
        let spec = OrbitSpectrum::new(3, vec![0.5, 0.0], vec![2, 1], DEGENERACY_TOL).unwrap();
        let s = sample_orbit(&spec, &b, 31).unwrap();
        assert!(max_entropy_check(&s, &b, 2, 1e-9).unwrap());
        assert_abs_diff_eq!(casimir::entropy(&s, &b).unwrap(), 2.0_f64.ln(), epsilon = 1e-10);

        assert!(max_entropy_check(&GellMannState::maximally_mixed(3), &b, 3, 1e-9).unwrap());

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pure = crate::canonical::pushforward(
            &crate::canonical::random_canonical(3, &mut rng).normalized().unwrap(),
            &b,
        )
        .unwrap();
        assert!(!max_entropy_check(&pure, &b, 2, 1e-9).unwrap());
    }

    #[test]
    fn random_bipartite_deterministic_and_normalized() {
        let a = random_bipartite(2, 2, 0).unwrap();
        let b = random_bipartite(2, 2, 0).unwrap();
        assert!(crate::basis::max_norm(&(&a.a - &b.a)) == 0.0);
        assert_abs_diff_eq!(a.norm_squared(), 1.0, epsilon = 1e-13);

        let b3 = generate_basis(3).unwrap();
        let col = random_bipartite(3, 1, 2).unwrap();
        let s = partial_trace(&col, Side::A, &b3).unwrap();
        assert!(crate::orbit::is_pure(&s, &b3, 1e-10).unwrap());
    }

    #[test]
    fn purification_reproduces_traced_state() {
        let (b, _) = setup(4);
        for seed in 0..5 {
            let bs = random_bipartite(4, 2, seed).unwrap();
            let s = partial_trace(&bs, Side::A, &b).unwrap();
            let back = purify(&s, &b, 2).unwrap();
            let s2 = partial_trace(&back, Side::A, &b).unwrap();
            assert!((&s.alpha - &s2.alpha).amax() <= 1e-10);
        }
        // full-rank state does not purify with M = 2
        let b3 = generate_basis(3).unwrap();
        let spec = OrbitSpectrum::new(3, vec![0.5, 0.3, 0.2], vec![1, 1, 1], DEGENERACY_TOL).unwrap();
        let full = sample_orbit(&spec, &b3, 13).unwrap();
        assert!(purify(&full, &b3, 2).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let bs = random_bipartite(2, 3, 11).unwrap();
        let s = serde_json::to_string(&bs).unwrap();
        let back: BipartiteState = serde_json::from_str(&s).unwrap();
        assert_eq!(back.n, 2);
        assert_eq!(back.m, 3);
        assert!(crate::basis::max_norm(&(&back.a - &bs.a)) <= 1e-15);
    }
}
