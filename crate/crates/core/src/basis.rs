//! Generalized Gell-Mann basis of su(N) and its structure tensors.
//!
//! The basis is normalized to Tr(T_a T_b) = δ_ab/2 and ordered
//! deterministically: symmetric off-diagonal pairs, antisymmetric pairs,
//! then diagonal matrices, with (j,k) pairs lexicographic for j < k. For
//! N = 2 this yields the Pauli matrices divided by two; for N = 3 the
//! standard λ-matrices divided by two.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::poisson::{GellMannState, HamiltonianCoeffs};
use crate::report::VerificationReport;
use crate::{C64, CMatrix};

const HERMITICITY_TOL: f64 = 1e-13;
const REALITY_TOL: f64 = 1e-13;

/// Ordered Hermitian traceless basis of su(N), Tr(T_a T_b) = δ_ab/2.
#[derive(Debug, Clone)]
pub struct GellMannBasis {
    pub n: usize,
    pub matrices: Vec<CMatrix>,
    /// Fixed normalization tag.
    pub convention: &'static str,
}

/// One entry of a sparse rank-3 tensor, indices 0-based in memory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensorEntry {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub value: f64,
}

/// Sparse antisymmetric f and symmetric d tensors of su(N).
///
/// Storage is fully expanded: every index permutation of a nonzero entry
/// is present with its correct sign, so consumers may iterate the lists
/// directly without symmetrization bookkeeping.
#[derive(Debug, Clone)]
pub struct StructureTensors {
    pub n: usize,
    pub f: Vec<TensorEntry>,
    pub d: Vec<TensorEntry>,
    pub zero_threshold: f64,
}

/// A dense N×N Hermitian matrix (a Hamiltonian or a candidate state).
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    pub n: usize,
    pub entries: CMatrix,
}

impl HermitianOperator {
    /// Wraps a matrix, rejecting non-Hermitian input.
    pub fn new(entries: CMatrix) -> Result<Self> {
        let n = entries.nrows();
        if entries.ncols() != n {
            return Err(CoreError::DimensionMismatch {
                expected: n,
                got: entries.ncols(),
                context: "HermitianOperator must be square",
            });
        }
        let deviation = hermitian_deviation(&entries);
        if deviation > HERMITICITY_TOL {
            return Err(CoreError::NonHermitian {
                deviation,
                tolerance: HERMITICITY_TOL,
            });
        }
        Ok(Self { n, entries })
    }
}

/// Max-norm of A − A†.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let mut dev = 0.0_f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Tr(A B) without forming the product.
pub fn trace_prod(a: &CMatrix, b: &CMatrix) -> C64 {
    let n = a.nrows();
    let mut t = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            t += a[(i, j)] * b[(j, i)];
        }
    }
    t
}

/// Max-norm of a complex matrix.
pub fn max_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Constructs the generalized Gell-Mann basis for dimension `n`.
///
/// Output order: symmetric pairs (E_jk + E_kj)/2, antisymmetric pairs
/// −i(E_jk − E_kj)/2, then N−1 diagonal matrices, each block with (j,k)
/// lexicographic, j < k. Deterministic: same `n` gives bit-identical
/// matrices.
pub fn generate_basis(n: usize) -> Result<GellMannBasis> {
    if n < 2 {
        return Err(CoreError::InvalidDimension(n));
    }
    let mut matrices = Vec::with_capacity(n * n - 1);
    let half = C64::new(0.5, 0.0);
    let half_i = C64::new(0.0, 0.5);
    for j in 0..n {
        for k in (j + 1)..n {
            let mut m = CMatrix::zeros(n, n);
            m[(j, k)] = half;
            m[(k, j)] = half;
            matrices.push(m);
        }
    }
    for j in 0..n {
        for k in (j + 1)..n {
            let mut m = CMatrix::zeros(n, n);
            m[(j, k)] = -half_i;
            m[(k, j)] = half_i;
            matrices.push(m);
        }
    }
    for l in 1..n {
        let c = 1.0 / (2.0 * l as f64 * (l as f64 + 1.0)).sqrt();
        let mut m = CMatrix::zeros(n, n);
        for i in 0..l {
            m[(i, i)] = C64::new(c, 0.0);
        }
        m[(l, l)] = C64::new(-(l as f64) * c, 0.0);
        matrices.push(m);
    }
    Ok(GellMannBasis {
        n,
        matrices,
        convention: "tr(TaTb)=delta/2",
    })
}

impl GellMannBasis {
    pub fn dim(&self) -> usize {
        self.n * self.n - 1
    }
}

/// Extracts f_abc = −2i Tr([T_a,T_b] T_c) and d_abc = 2 Tr({T_a,T_b} T_c).
///
/// Only canonical index triples are evaluated; the exact algebraic
/// (anti)symmetry fills in the rest, so the stored tensors are totally
/// (anti)symmetric to the last bit. Entries with |value| < `zero_threshold`
/// are dropped. Fails if a trace comes out non-real beyond 1e−13.
pub fn compute_structure_tensors(
    basis: &GellMannBasis,
    zero_threshold: f64,
) -> Result<StructureTensors> {
    if zero_threshold < 0.0 {
        return Err(CoreError::InvalidArgument(
            "zero_threshold must be nonnegative".into(),
        ));
    }
    let dim = basis.dim();
    let pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|a| (a..dim).map(move |b| (a, b)))
        .collect();

    // Per-pair: canonical triples (a <= b <= c) of f (a < b < c only) and d.
    let per_pair = crate::par::map_collect(pairs, |(a, b)| {
        let ta = &basis.matrices[a];
        let tb = &basis.matrices[b];
        let ab = ta * tb;
        let ba = tb * ta;
        let comm = &ab - &ba;
        let anti = &ab + &ba;
        let mut f_entries = Vec::new();
        let mut d_entries = Vec::new();
        let mut worst_imag = 0.0_f64;
        for c in b..dim {
            let tc = &basis.matrices[c];
            if a < b && b < c {
                let tr = trace_prod(&comm, tc);
                // f_abc = -2i Tr([Ta,Tb] Tc): real part of the trace must vanish
                let value = 2.0 * tr.im;
                worst_imag = worst_imag.max(tr.re.abs());
                if value.abs() >= zero_threshold {
                    f_entries.push(TensorEntry { a, b, c, value });
                }
            }
            let tr = trace_prod(&anti, tc);
            let value = 2.0 * tr.re;
            worst_imag = worst_imag.max(tr.im.abs());
            if value.abs() >= zero_threshold {
                d_entries.push(TensorEntry { a, b, c, value });
            }
        }
        (f_entries, d_entries, worst_imag)
    });

    let mut f = Vec::new();
    let mut d = Vec::new();
    for (fe, de, worst) in per_pair {
        if worst > REALITY_TOL {
            return Err(CoreError::BasisInconsistency(format!(
                "structure-constant trace has imaginary residue {worst:.3e}"
            )));
        }
        for e in fe {
            push_antisymmetric(&mut f, e);
        }
        for e in de {
            push_symmetric(&mut d, e);
        }
    }
    f.sort_by_key(|e| (e.a, e.b, e.c));
    d.sort_by_key(|e| (e.a, e.b, e.c));
    Ok(StructureTensors {
        n: basis.n,
        f,
        d,
        zero_threshold,
    })
}

fn push_antisymmetric(out: &mut Vec<TensorEntry>, e: TensorEntry) {
    let (a, b, c, v) = (e.a, e.b, e.c, e.value);
    // even permutations
    for (i, j, k) in [(a, b, c), (b, c, a), (c, a, b)] {
        out.push(TensorEntry { a: i, b: j, c: k, value: v });
    }
    // odd permutations
    for (i, j, k) in [(b, a, c), (a, c, b), (c, b, a)] {
        out.push(TensorEntry { a: i, b: j, c: k, value: -v });
    }
}

fn push_symmetric(out: &mut Vec<TensorEntry>, e: TensorEntry) {
    let (a, b, c, v) = (e.a, e.b, e.c, e.value);
    let mut perms = [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)];
    perms.sort_unstable();
    let mut last = None;
    for p in perms {
        if Some(p) != last {
            out.push(TensorEntry { a: p.0, b: p.1, c: p.2, value: v });
            last = Some(p);
        }
    }
}

impl StructureTensors {
    pub fn dim(&self) -> usize {
        self.n * self.n - 1
    }

    /// Signed value f_abc for any index order (lists are fully expanded).
    pub fn f_at(&self, a: usize, b: usize, c: usize) -> f64 {
        lookup(&self.f, a, b, c)
    }

    /// Value d_abc for any index order.
    pub fn d_at(&self, a: usize, b: usize, c: usize) -> f64 {
        lookup(&self.d, a, b, c)
    }

    /// Dense copies (row-major, index a*dim²+b*dim+c) for hot loops.
    pub fn f_dense(&self) -> Vec<f64> {
        dense(&self.f, self.dim())
    }

    pub fn d_dense(&self) -> Vec<f64> {
        dense(&self.d, self.dim())
    }

    /// Dense symmetric matrices (D_a)_{bc} = d_abc.
    pub fn d_matrices(&self) -> Vec<nalgebra::DMatrix<f64>> {
        let dim = self.dim();
        let mut out = vec![nalgebra::DMatrix::zeros(dim, dim); dim];
        for e in &self.d {
            out[e.a][(e.b, e.c)] = e.value;
        }
        out
    }
}

fn lookup(entries: &[TensorEntry], a: usize, b: usize, c: usize) -> f64 {
    entries
        .binary_search_by_key(&(a, b, c), |e| (e.a, e.b, e.c))
        .map(|i| entries[i].value)
        .unwrap_or(0.0)
}

fn dense(entries: &[TensorEntry], dim: usize) -> Vec<f64> {
    let mut out = vec![0.0; dim * dim * dim];
    for e in entries {
        out[(e.a * dim + e.b) * dim + e.c] = e.value;
    }
    out
}

/// Coordinates α_k = 2 Tr(ρ T_k), α_0 = Tr ρ of a Hermitian matrix.
pub fn matrix_to_state(rho: &HermitianOperator, basis: &GellMannBasis) -> Result<GellMannState> {
    if rho.n != basis.n {
        return Err(CoreError::DimensionMismatch {
            expected: basis.n,
            got: rho.n,
            context: "matrix_to_state",
        });
    }
    let dim = basis.dim();
    let mut alpha = DVector::zeros(dim);
    for k in 0..dim {
        let tr = 2.0 * trace_prod(&rho.entries, &basis.matrices[k]);
        if tr.im.abs() > REALITY_TOL {
            return Err(CoreError::NonHermitian {
                deviation: tr.im.abs(),
                tolerance: REALITY_TOL,
            });
        }
        alpha[k] = tr.re;
    }
    let alpha0 = rho.entries.trace().re;
    Ok(GellMannState {
        n: basis.n,
        alpha,
        alpha0,
    })
}

/// Reconstructs α_0 I/N + Σ α_k T_k. Hermitian by construction, PSD not implied.
pub fn state_to_matrix(state: &GellMannState, basis: &GellMannBasis) -> Result<CMatrix> {
    if state.n != basis.n || state.alpha.len() != basis.dim() {
        return Err(CoreError::DimensionMismatch {
            expected: basis.dim(),
            got: state.alpha.len(),
            context: "state_to_matrix",
        });
    }
    let n = basis.n;
    let mut m = CMatrix::identity(n, n) * C64::new(state.alpha0 / n as f64, 0.0);
    for (k, t) in basis.matrices.iter().enumerate() {
        m += t * C64::new(state.alpha[k], 0.0);
    }
    Ok(m)
}

/// Expands a Hermitian operator as Ĥ = h_0 I + Σ h_k T_k.
pub fn operator_to_coeffs(
    op: &HermitianOperator,
    basis: &GellMannBasis,
    hbar: f64,
) -> Result<HamiltonianCoeffs> {
    if op.n != basis.n {
        return Err(CoreError::DimensionMismatch {
            expected: basis.n,
            got: op.n,
            context: "operator_to_coeffs",
        });
    }
    let dim = basis.dim();
    let h0 = op.entries.trace().re / basis.n as f64;
    let mut h = DVector::zeros(dim);
    for k in 0..dim {
        let tr = 2.0 * trace_prod(&op.entries, &basis.matrices[k]);
        if tr.im.abs() > REALITY_TOL {
            return Err(CoreError::NonHermitian {
                deviation: tr.im.abs(),
                tolerance: REALITY_TOL,
            });
        }
        h[k] = tr.re;
    }
    Ok(HamiltonianCoeffs {
        n: basis.n,
        h0,
        h,
        hbar,
    })
}

/// Rebuilds h_0 I + Σ h_k T_k.
pub fn coeffs_to_operator(coeffs: &HamiltonianCoeffs, basis: &GellMannBasis) -> Result<HermitianOperator> {
    if coeffs.n != basis.n {
        return Err(CoreError::DimensionMismatch {
            expected: basis.n,
            got: coeffs.n,
            context: "coeffs_to_operator",
        });
    }
    let n = basis.n;
    let mut m = CMatrix::identity(n, n) * C64::new(coeffs.h0, 0.0);
    for (k, t) in basis.matrices.iter().enumerate() {
        m += t * C64::new(coeffs.h[k], 0.0);
    }
    HermitianOperator::new(m)
}

/// Checks the product identity
/// T_a T_b = δ_ab I/(2N) + (1/2) Σ_c (i f_abc + d_abc) T_c over all pairs.
pub fn verify_product_identity(
    basis: &GellMannBasis,
    tensors: &StructureTensors,
    tolerance: f64,
) -> VerificationReport {
    let dim = basis.dim();
    let n = basis.n;
    let f = tensors.f_dense();
    let d = tensors.d_dense();
    let pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|a| (0..dim).map(move |b| (a, b)))
        .collect();
    let samples = pairs.len();
    let max_residual = crate::par::map_max(pairs, |(a, b)| {
        let mut rhs = CMatrix::zeros(n, n);
        if a == b {
            rhs += CMatrix::identity(n, n) * C64::new(1.0 / (2.0 * n as f64), 0.0);
        }
        for c in 0..dim {
            let fv = f[(a * dim + b) * dim + c];
            let dv = d[(a * dim + b) * dim + c];
            if fv != 0.0 || dv != 0.0 {
                rhs += &basis.matrices[c] * (C64::new(dv, fv) * 0.5);
            }
        }
        let lhs = &basis.matrices[a] * &basis.matrices[b];
        max_norm(&(lhs - rhs))
    });
    VerificationReport::new("gellmann.product_identity", max_residual, samples, tolerance)
}

// --- serialization -------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub(crate) struct ComplexMatrixJson {
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct BasisJson {
    n: usize,
    matrices: Vec<ComplexMatrixJson>,
}

impl From<&CMatrix> for ComplexMatrixJson {
    fn from(m: &CMatrix) -> Self {
        let rows = m.nrows();
        let cols = m.ncols();
        let re = (0..rows)
            .map(|i| (0..cols).map(|j| m[(i, j)].re).collect())
            .collect();
        let im = (0..rows)
            .map(|i| (0..cols).map(|j| m[(i, j)].im).collect())
            .collect();
        Self { re, im }
    }
}

impl ComplexMatrixJson {
    pub(crate) fn to_matrix(&self) -> Result<CMatrix> {
        let rows = self.re.len();
        if rows == 0 || self.im.len() != rows {
            return Err(CoreError::InvalidArgument("empty or ragged matrix field".into()));
        }
        let cols = self.re[0].len();
        if self.re.iter().any(|r| r.len() != cols) || self.im.iter().any(|r| r.len() != cols) {
            return Err(CoreError::InvalidArgument("ragged matrix field".into()));
        }
        Ok(CMatrix::from_fn(rows, cols, |i, j| {
            C64::new(self.re[i][j], self.im[i][j])
        }))
    }
}

pub(crate) use ComplexMatrixJson as MatrixJson;

impl Serialize for GellMannBasis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BasisJson {
            n: self.n,
            matrices: self.matrices.iter().map(ComplexMatrixJson::from).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GellMannBasis {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BasisJson::deserialize(d)?;
        let matrices = raw
            .matrices
            .iter()
            .map(|m| m.to_matrix())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(GellMannBasis {
            n: raw.n,
            matrices,
            convention: "tr(TaTb)=delta/2",
        })
    }
}

#[derive(Serialize, Deserialize)]
struct TensorsJson {
    n: usize,
    f: Vec<(usize, usize, usize, f64)>,
    d: Vec<(usize, usize, usize, f64)>,
    zero_threshold: f64,
}

impl Serialize for StructureTensors {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let conv = |v: &[TensorEntry]| {
            v.iter()
                .map(|e| (e.a + 1, e.b + 1, e.c + 1, e.value))
                .collect()
        };
        TensorsJson {
            n: self.n,
            f: conv(&self.f),
            d: conv(&self.d),
            zero_threshold: self.zero_threshold,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StructureTensors {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TensorsJson::deserialize(d)?;
        let conv = |v: Vec<(usize, usize, usize, f64)>| -> std::result::Result<Vec<TensorEntry>, D::Error> {
            v.into_iter()
                .map(|(a, b, c, value)| {
                    if a == 0 || b == 0 || c == 0 {
                        Err(serde::de::Error::custom("tensor indices are 1-based"))
                    } else {
                        Ok(TensorEntry { a: a - 1, b: b - 1, c: c - 1, value })
                    }
                })
                .collect()
        };
        Ok(StructureTensors {
            n: raw.n,
            f: conv(raw.f)?,
            d: conv(raw.d)?,
            zero_threshold: raw.zero_threshold,
        })
    }
}
