//! The linear su(N) Poisson structure on Gell-Mann coordinates.
//!
//! Coordinate functions satisfy {α_i, α_j} = r^ij = 4 f_ijk α_k; the
//! Hamiltonian function is Tr(ρĤ)/2ħ and the induced flow is
//! α̇_l = −(1/ħ) f_lij α_i h_j.

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::basis::StructureTensors;
use crate::error::{CoreError, Result};
use crate::report::VerificationReport;
use crate::{RMatrix, RVector};

/// A state (or any Hermitian unit-trace direction) in Gell-Mann coordinates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GellMannState {
    pub n: usize,
    pub alpha0: f64,
    #[serde(with = "vec_f64")]
    pub alpha: RVector,
}

/// Expansion Ĥ = h_0 I + Σ h_k T_k plus the ħ scale of the dynamics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HamiltonianCoeffs {
    pub n: usize,
    pub h0: f64,
    #[serde(with = "vec_f64")]
    pub h: RVector,
    #[serde(default = "default_hbar")]
    pub hbar: f64,
}

fn default_hbar() -> f64 {
    1.0
}

mod vec_f64 {
    use super::RVector;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &RVector, s: S) -> Result<S::Ok, S::Error> {
        v.as_slice().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RVector, D::Error> {
        Ok(RVector::from_vec(Vec::<f64>::deserialize(d)?))
    }
}

impl GellMannState {
    pub fn new(n: usize, alpha: RVector, alpha0: f64) -> Result<Self> {
        if alpha.len() != n * n - 1 {
            return Err(CoreError::DimensionMismatch {
                expected: n * n - 1,
                got: alpha.len(),
                context: "GellMannState coordinate vector",
            });
        }
        Ok(Self { n, alpha, alpha0 })
    }

    /// The maximally mixed state I/N.
    pub fn maximally_mixed(n: usize) -> Self {
        Self {
            n,
            alpha: DVector::zeros(n * n - 1),
            alpha0: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.n * self.n - 1
    }
}

impl HamiltonianCoeffs {
    pub fn new(n: usize, h0: f64, h: RVector, hbar: f64) -> Result<Self> {
        if h.len() != n * n - 1 {
            return Err(CoreError::DimensionMismatch {
                expected: n * n - 1,
                got: h.len(),
                context: "HamiltonianCoeffs vector",
            });
        }
        if hbar <= 0.0 {
            return Err(CoreError::InvalidArgument("hbar must be positive".into()));
        }
        Ok(Self { n, h0, h, hbar })
    }
}

fn check_dim(tensors: &StructureTensors, len: usize, context: &'static str) -> Result<()> {
    if tensors.dim() != len {
        return Err(CoreError::DimensionMismatch {
            expected: tensors.dim(),
            got: len,
            context,
        });
    }
    Ok(())
}

/// Poisson tensor r_ij = 4 Σ_k f_ijk α_k, antisymmetric.
pub fn poisson_tensor(tensors: &StructureTensors, state: &GellMannState) -> Result<RMatrix> {
    check_dim(tensors, state.alpha.len(), "poisson_tensor")?;
    let dim = tensors.dim();
    let mut r = RMatrix::zeros(dim, dim);
    for e in &tensors.f {
        r[(e.a, e.b)] += 4.0 * e.value * state.alpha[e.c];
    }
    Ok(r)
}

/// {F, G} = Σ_ij (∂_i F) r_ij (∂_j G) for caller-supplied gradients.
pub fn bracket(
    grad_f: &RVector,
    grad_g: &RVector,
    tensors: &StructureTensors,
    state: &GellMannState,
) -> Result<f64> {
    check_dim(tensors, grad_f.len(), "bracket gradF")?;
    check_dim(tensors, grad_g.len(), "bracket gradG")?;
    check_dim(tensors, state.alpha.len(), "bracket state")?;
    let mut acc = 0.0;
    for e in &tensors.f {
        acc += grad_f[e.a] * 4.0 * e.value * state.alpha[e.c] * grad_g[e.b];
    }
    Ok(acc)
}

/// Hamiltonian function H = Tr(ρĤ)/2ħ = (1/2ħ)[h_0 α_0 + Σ α_k h_k / 2].
pub fn hamiltonian_value(state: &GellMannState, coeffs: &HamiltonianCoeffs) -> Result<f64> {
    if state.n != coeffs.n {
        return Err(CoreError::DimensionMismatch {
            expected: coeffs.n,
            got: state.n,
            context: "hamiltonian_value",
        });
    }
    Ok((coeffs.h0 * state.alpha0 + 0.5 * state.alpha.dot(&coeffs.h)) / (2.0 * coeffs.hbar))
}

/// Lie-Poisson flow field α̇_l = −(1/ħ) Σ_ij f_lij α_i h_j (and α̇_0 = 0).
pub fn flow_field(
    state: &GellMannState,
    coeffs: &HamiltonianCoeffs,
    tensors: &StructureTensors,
) -> Result<RVector> {
    check_dim(tensors, state.alpha.len(), "flow_field state")?;
    check_dim(tensors, coeffs.h.len(), "flow_field coeffs")?;
    let dim = tensors.dim();
    let mut dot = DVector::zeros(dim);
    for e in &tensors.f {
        dot[e.a] -= e.value * state.alpha[e.b] * coeffs.h[e.c] / coeffs.hbar;
    }
    Ok(dot)
}

/// Draws a coordinate vector with independent standard normal entries.
pub fn random_alpha(dim: usize, rng: &mut ChaCha8Rng) -> RVector {
    DVector::from_fn(dim, |_, _| StandardNormal.sample(rng))
}

/// Checks the Jacobi identity of r at random points:
/// Σ_l [r_lk ∂_l r_ij + r_li ∂_l r_jk + r_lj ∂_l r_ki] = 0 with ∂_l r_ij = 4 f_ijl,
/// equivalently 16 (f_lkm f_lij + f_lim f_ljk + f_ljm f_lki) α_m = 0.
pub fn verify_jacobi(
    tensors: &StructureTensors,
    sample_count: usize,
    seed: u64,
    tolerance: f64,
) -> Result<VerificationReport> {
    if sample_count == 0 {
        return Err(CoreError::InvalidArgument("sample_count must be >= 1".into()));
    }
    let dim = tensors.dim();
    let f = tensors.f_dense();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphas: Vec<RVector> = (0..sample_count).map(|_| random_alpha(dim, &mut rng)).collect();

    let idx = |a: usize, b: usize, c: usize| (a * dim + b) * dim + c;
    let max_residual = crate::par::map_max(alphas, |alpha| {
        // contract over m first: g_ab = f_abm α_m
        let mut g = vec![0.0; dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                let mut s = 0.0;
                for m in 0..dim {
                    s += f[idx(a, b, m)] * alpha[m];
                }
                g[a * dim + b] = s;
            }
        }
        let mut worst = 0.0_f64;
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let mut s = 0.0;
                    for l in 0..dim {
                        s += g[l * dim + k] * f[idx(l, i, j)]
                            + g[l * dim + i] * f[idx(l, j, k)]
                            + g[l * dim + j] * f[idx(l, k, i)];
                    }
                    worst = worst.max((16.0 * s).abs());
                }
            }
        }
        worst
    });
    Ok(VerificationReport::new("poisson.jacobi", max_residual, sample_count, tolerance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{compute_structure_tensors, generate_basis, state_to_matrix, coeffs_to_operator, matrix_to_state, HermitianOperator};
    use crate::C64;
    use approx::assert_abs_diff_eq;

    fn setup(n: usize) -> (crate::GellMannBasis, StructureTensors) {
        let b = generate_basis(n).unwrap();
        let t = compute_structure_tensors(&b, 1e-12).unwrap();
        (b, t)
    }

    #[test]
    fn tensor_vanishes_at_origin_and_matches_n2_spot_values() {
        let (_, t) = setup(2);
        let zero = GellMannState::new(2, DVector::zeros(3), 1.0).unwrap();
        assert_eq!(poisson_tensor(&t, &zero).unwrap().amax(), 0.0);

        let s = GellMannState::new(2, DVector::from_vec(vec![0.0, 0.0, 1.0]), 1.0).unwrap();
        let r = poisson_tensor(&t, &s).unwrap();
        assert_abs_diff_eq!(r[(0, 1)], 4.0, epsilon = 1e-13);
        assert_abs_diff_eq!(r[(1, 0)], -4.0, epsilon = 1e-13);
        assert_eq!(r[(0, 2)], 0.0);
        assert_eq!(r[(1, 2)], 0.0);
        for i in 0..3 {
            assert_eq!(r[(i, i)], 0.0);
        }
    }

    #[test]
    fn tensor_is_antisymmetric_with_even_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [2, 3, 4] {
            let (_, t) = setup(n);
            let dim = t.dim();
            let s = GellMannState::new(n, random_alpha(dim, &mut rng), 1.0).unwrap();
            let r = poisson_tensor(&t, &s).unwrap();
            assert!((&r + r.transpose()).amax() <= 1e-13);
            let svd = r.svd(false, false);
            let smax = svd.singular_values.max();
            let rank = svd.singular_values.iter().filter(|s| **s > 1e-9 * smax).count();
            assert_eq!(rank % 2, 0, "n={n}");
        }
    }

    #[test]
    fn bracket_examples() {
        let (_, t) = setup(2);
        let s = GellMannState::new(2, DVector::from_vec(vec![0.0, 0.0, 1.0]), 1.0).unwrap();
        let e1 = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        let e2 = DVector::from_vec(vec![0.0, 1.0, 0.0]);
        assert_abs_diff_eq!(bracket(&e1, &e2, &t, &s).unwrap(), 4.0, epsilon = 1e-13);
        assert_eq!(bracket(&e1, &e1, &t, &s).unwrap(), 0.0);
    }

    #[test]
    fn quadratic_casimir_gradient_commutes_with_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [2, 3] {
            let (_, t) = setup(n);
            let dim = t.dim();
            for _ in 0..20 {
                let alpha = random_alpha(dim, &mut rng);
                let s = GellMannState::new(n, alpha.clone(), 1.0).unwrap();
                let grad_g = random_alpha(dim, &mut rng);
                let v = bracket(&alpha, &grad_g, &t, &s).unwrap();
                assert!(v.abs() <= 1e-12, "n={n}: {v:.3e}");
            }
        }
    }

    #[test]
    fn bracket_bilinear_and_antisymmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (_, t) = setup(3);
        let dim = t.dim();
        for _ in 0..100 {
            let s = GellMannState::new(3, random_alpha(dim, &mut rng), 1.0).unwrap();
            let gf = random_alpha(dim, &mut rng);
            let gg = random_alpha(dim, &mut rng);
            let gh = random_alpha(dim, &mut rng);
            let fg = bracket(&gf, &gg, &t, &s).unwrap();
            let gf_swap = bracket(&gg, &gf, &t, &s).unwrap();
            assert!((fg + gf_swap).abs() <= 1e-12);
            let lin = bracket(&(&gf * 2.0 + &gh), &gg, &t, &s).unwrap();
            assert!((lin - 2.0 * fg - bracket(&gh, &gg, &t, &s).unwrap()).abs() <= 1e-11);
        }
    }

    #[test]
    fn leibniz_rule_for_coordinate_functions() {
        // {α_i, α_j α_k} = α_j {α_i, α_k} + {α_i, α_j} α_k
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let (_, t) = setup(3);
        let dim = t.dim();
        for _ in 0..50 {
            let alpha = random_alpha(dim, &mut rng);
            let s = GellMannState::new(3, alpha.clone(), 1.0).unwrap();
            for (i, j, k) in [(0, 1, 2), (3, 4, 5), (0, 4, 7), (2, 6, 1)] {
                let ei = RVector::from_fn(dim, |p, _| if p == i { 1.0 } else { 0.0 });
                let ej = RVector::from_fn(dim, |p, _| if p == j { 1.0 } else { 0.0 });
                let ek = RVector::from_fn(dim, |p, _| if p == k { 1.0 } else { 0.0 });
                // gradient of α_j α_k
                let grad_prod = &ej * alpha[k] + &ek * alpha[j];
                let lhs = bracket(&ei, &grad_prod, &t, &s).unwrap();
                let rhs = alpha[j] * bracket(&ei, &ek, &t, &s).unwrap()
                    + bracket(&ei, &ej, &t, &s).unwrap() * alpha[k];
                assert!((lhs - rhs).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn hamiltonian_value_examples() {
        let mixed = GellMannState::maximally_mixed(2);
        let c = HamiltonianCoeffs::new(2, 0.7, DVector::zeros(3), 1.0).unwrap();
        assert_abs_diff_eq!(hamiltonian_value(&mixed, &c).unwrap(), 0.35, epsilon = 1e-14);

        let s = GellMannState::new(2, DVector::from_vec(vec![0.0, 0.0, 1.0]), 1.0).unwrap();
        let c = HamiltonianCoeffs::new(2, 0.0, DVector::from_vec(vec![0.0, 0.0, 1.0]), 1.0).unwrap();
        assert_abs_diff_eq!(hamiltonian_value(&s, &c).unwrap(), 0.25, epsilon = 1e-14);
        let c2 = HamiltonianCoeffs::new(2, 0.0, DVector::from_vec(vec![0.0, 0.0, 1.0]), 2.0).unwrap();
        assert_abs_diff_eq!(hamiltonian_value(&s, &c2).unwrap(), 0.125, epsilon = 1e-14);
    }

    #[test]
    fn hamiltonian_value_matches_matrix_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let b = generate_basis(3).unwrap();
        for _ in 0..20 {
            let s = GellMannState::new(3, random_alpha(8, &mut rng), 1.0).unwrap();
            let c = HamiltonianCoeffs::new(3, StandardNormal.sample(&mut rng), random_alpha(8, &mut rng), 1.0).unwrap();
            let rho = state_to_matrix(&s, &b).unwrap();
            let h = coeffs_to_operator(&c, &b).unwrap();
            let tr = crate::basis::trace_prod(&rho, &h.entries).re / 2.0;
            assert!((hamiltonian_value(&s, &c).unwrap() - tr).abs() <= 1e-12);
        }
    }

    #[test]
    fn flow_field_examples() {
        let (_, t) = setup(2);
        let s = GellMannState::new(2, DVector::from_vec(vec![0.3, -0.4, 0.9]), 1.0).unwrap();
        let zero_h = HamiltonianCoeffs::new(2, 1.5, DVector::zeros(3), 1.0).unwrap();
        assert_eq!(flow_field(&s, &zero_h, &t).unwrap().amax(), 0.0);

        // precession about the third axis
        let c = HamiltonianCoeffs::new(2, 0.0, DVector::from_vec(vec![0.0, 0.0, 1.0]), 1.0).unwrap();
        let dot = flow_field(&s, &c, &t).unwrap();
        assert_abs_diff_eq!(dot[0], 0.4, epsilon = 1e-13);
        assert_abs_diff_eq!(dot[1], 0.3, epsilon = 1e-13);
        assert_abs_diff_eq!(dot[2], 0.0, epsilon = 1e-13);

        // α parallel to h is a fixed point
        let par = GellMannState::new(2, DVector::from_vec(vec![0.0, 0.0, 0.7]), 1.0).unwrap();
        assert!(flow_field(&par, &c, &t).unwrap().amax() <= 1e-15);
    }

    #[test]
    fn flow_conserves_quadratic_casimir_and_matches_commutator() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in [2, 3, 4] {
            let b = generate_basis(n).unwrap();
            let t = compute_structure_tensors(&b, 1e-12).unwrap();
            let dim = t.dim();
            for _ in 0..20 {
                let s = GellMannState::new(n, random_alpha(dim, &mut rng), 1.0).unwrap();
                let c = HamiltonianCoeffs::new(n, 0.0, random_alpha(dim, &mut rng), 1.0).unwrap();
                let dot = flow_field(&s, &c, &t).unwrap();
                assert!((2.0 * s.alpha.dot(&dot)).abs() <= 1e-12 * s.alpha.norm() * dot.norm().max(1.0));

                // matrix-side (i/ħ)[ρ, Ĥ]
                let rho = state_to_matrix(&s, &b).unwrap();
                let h = coeffs_to_operator(&c, &b).unwrap().entries;
                let comm = (&rho * &h - &h * &rho) * C64::new(0.0, 1.0);
                let dot_state = GellMannState::new(n, dot.clone(), 0.0).unwrap();
                let dot_matrix = state_to_matrix(&dot_state, &b).unwrap();
                assert!(crate::basis::max_norm(&(comm - dot_matrix)) <= 1e-12);

                // agrees with the bracket form {α_l, H}
                let mut from_bracket = DVector::zeros(dim);
                for l in 0..dim {
                    let el = RVector::from_fn(dim, |p, _| if p == l { 1.0 } else { 0.0 });
                    let grad_h = &c.h * (1.0 / (4.0 * c.hbar));
                    from_bracket[l] = bracket(&el, &grad_h, &t, &s).unwrap();
                }
                assert!((from_bracket - dot).amax() <= 1e-12);
            }
        }
    }

    #[test]
    fn roundtrip_matrix_state_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for n in [2, 3, 4, 5] {
            let b = generate_basis(n).unwrap();
            for _ in 0..100 {
                let raw = crate::CMatrix::from_fn(n, n, |_, _| {
                    C64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
                });
                let herm = (&raw + raw.adjoint()) * C64::new(0.5, 0.0);
                let op = HermitianOperator::new(herm.clone()).unwrap();
                let s = matrix_to_state(&op, &b).unwrap();
                let back = state_to_matrix(&s, &b).unwrap();
                assert!(crate::basis::max_norm(&(back - herm)) <= 1e-12);
            }
        }
    }

    #[test]
    fn jacobi_holds_and_detects_fault() {
        for n in [2, 4] {
            let (_, t) = setup(n);
            let rep = verify_jacobi(&t, 10, 42, 1e-10).unwrap();
            assert!(rep.passed, "n={n}: residual {:.3e}", rep.max_residual);
        }
        let (_, mut t) = setup(2);
        // zero one f entry (and keep its permutations intact): breaks Jacobi
        t.f.retain(|e| (e.a, e.b, e.c) != (0, 1, 2));
        let rep = verify_jacobi(&t, 10, 42, 1e-10).unwrap();
        assert!(!rep.passed);
    }
}
