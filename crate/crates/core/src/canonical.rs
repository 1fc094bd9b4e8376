//! Canonical symplectic mechanics on C^N and the pushforward to
//! Gell-Mann coordinates.
//!
//! With z_a = x_a + i y_a the pairs {x_m, y_n} = δ_mn are canonical, the
//! Schrödinger flow is the Hamilton flow of ⟨Ĥ⟩/2ħ, and the pushed-forward
//! coordinates α_s = 2 z†T_s z close into the su(N) algebra:
//! {α_s, α_t} = 4 f_stu α_u with α_0 central.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::basis::{GellMannBasis, HermitianOperator, StructureTensors};
use crate::error::{CoreError, Result};
use crate::poisson::GellMannState;
use crate::{C64, CVector, RVector};

/// A point of C^N split into real and imaginary parts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CanonicalState {
    pub n: usize,
    #[serde(with = "vec_f64")]
    pub x: RVector,
    #[serde(with = "vec_f64")]
    pub y: RVector,
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

impl CanonicalState {
    pub fn new(x: RVector, y: RVector) -> Result<Self> {
        if x.len() != y.len() {
            return Err(CoreError::DimensionMismatch {
                expected: x.len(),
                got: y.len(),
                context: "CanonicalState x/y lengths",
            });
        }
        Ok(Self { n: x.len(), x, y })
    }

    pub fn from_complex(z: &CVector) -> Self {
        Self {
            n: z.len(),
            x: z.map(|c| c.re),
            y: z.map(|c| c.im),
        }
    }

    pub fn to_complex(&self) -> CVector {
        CVector::from_fn(self.n, |i, _| C64::new(self.x[i], self.y[i]))
    }

    pub fn norm_squared(&self) -> f64 {
        self.x.norm_squared() + self.y.norm_squared()
    }

    /// Rescales to unit norm.
    pub fn normalized(&self) -> Result<Self> {
        let n2 = self.norm_squared();
        if n2 <= 0.0 {
            return Err(CoreError::InvalidArgument("cannot normalize the zero state".into()));
        }
        let s = 1.0 / n2.sqrt();
        Ok(Self {
            n: self.n,
            x: &self.x * s,
            y: &self.y * s,
        })
    }
}

/// Schrödinger flow in canonical coordinates:
/// ẋ_a = (1/ħ)(H^I_ab x_b + H^R_ab y_b), ẏ_a = (1/ħ)(−H^R_ab x_b + H^I_ab y_b).
pub fn schrodinger_field(
    state: &CanonicalState,
    op: &HermitianOperator,
    hbar: f64,
) -> Result<(RVector, RVector)> {
    if op.n != state.n {
        return Err(CoreError::DimensionMismatch {
            expected: state.n,
            got: op.n,
            context: "schrodinger_field",
        });
    }
    // equivalent complex form: ż = −(i/ħ) Ĥ z
    let z = state.to_complex();
    let w = &op.entries * z * C64::new(0.0, -1.0 / hbar);
    Ok((w.map(|c| c.re), w.map(|c| c.im)))
}

/// Hamiltonian function ⟨Ĥ⟩/2ħ = Re(z†Ĥz)/2ħ.
///
/// Fails if the quadratic form has an imaginary part beyond 1e−12, which
/// signals a non-Hermitian operator.
pub fn expectation_hamiltonian(
    state: &CanonicalState,
    op: &HermitianOperator,
    hbar: f64,
) -> Result<f64> {
    if op.n != state.n {
        return Err(CoreError::DimensionMismatch {
            expected: state.n,
            got: op.n,
            context: "expectation_hamiltonian",
        });
    }
    let z = state.to_complex();
    let q = z.dotc(&(&op.entries * &z));
    if q.im.abs() > 1e-12 {
        return Err(CoreError::NonHermitian {
            deviation: q.im.abs(),
            tolerance: 1e-12,
        });
    }
    Ok(q.re / (2.0 * hbar))
}

/// Pushforward α_s = 2 z†T_s z, α_0 = |z|². U(1)-invariant by construction.
pub fn pushforward(state: &CanonicalState, basis: &GellMannBasis) -> Result<GellMannState> {
    if basis.n != state.n {
        return Err(CoreError::DimensionMismatch {
            expected: state.n,
            got: basis.n,
            context: "pushforward",
        });
    }
    let z = state.to_complex();
    let dim = basis.dim();
    let mut alpha = DVector::zeros(dim);
    for (k, t) in basis.matrices.iter().enumerate() {
        let q = z.dotc(&(t * &z));
        debug_assert!(q.im.abs() <= 1e-12);
        alpha[k] = 2.0 * q.re;
    }
    Ok(GellMannState {
        n: state.n,
        alpha,
        alpha0: state.norm_squared(),
    })
}

/// Exact gradients of α_s in (x, y); index 0 denotes α_0.
///
/// With u = T_s z (and T_0 := I/2) they are ∂α_s/∂x_k = 4 Re u_k and
/// ∂α_s/∂y_k = 4 Im u_k.
pub fn alpha_gradient(
    s: usize,
    state: &CanonicalState,
    basis: &GellMannBasis,
) -> Result<(RVector, RVector)> {
    let dim = basis.dim();
    if s > dim {
        return Err(CoreError::IndexOutOfRange { index: s, max: dim });
    }
    let z = state.to_complex();
    let u: CVector = if s == 0 {
        z * C64::new(0.5, 0.0)
    } else {
        &basis.matrices[s - 1] * z
    };
    Ok((u.map(|c| 4.0 * c.re), u.map(|c| 4.0 * c.im)))
}

/// Canonical bracket {α_s, α_t} = Σ_i (∂_x α_s ∂_y α_t − ∂_x α_t ∂_y α_s)
/// from the exact analytic gradients. Index 0 denotes α_0.
pub fn canonical_bracket_alpha(
    s: usize,
    t: usize,
    state: &CanonicalState,
    basis: &GellMannBasis,
) -> Result<f64> {
    let (sx, sy) = alpha_gradient(s, state, basis)?;
    let (tx, ty) = alpha_gradient(t, state, basis)?;
    Ok(sx.dot(&ty) - tx.dot(&sy))
}

/// Same bracket with central-difference gradients; cross-check only.
pub fn canonical_bracket_alpha_fd(
    s: usize,
    t: usize,
    state: &CanonicalState,
    basis: &GellMannBasis,
    step: f64,
) -> Result<f64> {
    let dim = basis.dim();
    if s > dim {
        return Err(CoreError::IndexOutOfRange { index: s, max: dim });
    }
    if t > dim {
        return Err(CoreError::IndexOutOfRange { index: t, max: dim });
    }
    let alpha_of = |st: &CanonicalState, idx: usize| -> Result<f64> {
        if idx == 0 {
            Ok(st.norm_squared())
        } else {
            Ok(pushforward(st, basis)?.alpha[idx - 1])
        }
    };
    let grad = |idx: usize| -> Result<(RVector, RVector)> {
        let mut gx = DVector::zeros(state.n);
        let mut gy = DVector::zeros(state.n);
        for i in 0..state.n {
            let mut p = state.clone();
            p.x[i] += step;
            let mut m = state.clone();
            m.x[i] -= step;
            gx[i] = (alpha_of(&p, idx)? - alpha_of(&m, idx)?) / (2.0 * step);
            let mut p = state.clone();
            p.y[i] += step;
            let mut m = state.clone();
            m.y[i] -= step;
            gy[i] = (alpha_of(&p, idx)? - alpha_of(&m, idx)?) / (2.0 * step);
        }
        Ok((gx, gy))
    };
    let (sx, sy) = grad(s)?;
    let (tx, ty) = grad(t)?;
    Ok(sx.dot(&ty) - tx.dot(&sy))
}

/// Expected value 4 Σ_u f_stu α_u of the pushed bracket (1-based s,t ≥ 1
/// passed as 0-based tensor indices).
pub fn lie_poisson_bracket_value(
    s: usize,
    t: usize,
    alpha: &RVector,
    tensors: &StructureTensors,
) -> f64 {
    let mut acc = 0.0;
    for e in &tensors.f {
        if e.a == s && e.b == t {
            acc += 4.0 * e.value * alpha[e.c];
        }
    }
    acc
}

/// Draws a random canonical state with standard normal parts.
pub fn random_canonical(n: usize, rng: &mut rand_chacha::ChaCha8Rng) -> CanonicalState {
    use rand_distr::{Distribution, StandardNormal};
    CanonicalState {
        n,
        x: DVector::from_fn(n, |_, _| StandardNormal.sample(rng)),
        y: DVector::from_fn(n, |_, _| StandardNormal.sample(rng)),
    }
}
