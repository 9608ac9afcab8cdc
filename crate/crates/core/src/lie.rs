//! Finite-dimensional complex Lie algebras given by structure constants,
//! together with a Hermitian form and a conjugate-linear real-form involution.
//!
//! `sl(2,ℂ)` in the basis `A0 = diag(1,−1)`, `B0 = e₁₂`, `C0 = e₂₁` is the
//! built-in instance; any other algebra can be loaded from a JSON descriptor
//! and is validated against the Lie axioms first.

use std::io::Read;

use num_traits::{One, Signed, Zero};
use serde::Deserialize;
use thiserror::Error;

use crate::linalg::{CMatrix, Matrix, QMatrix};
use crate::scalar::{GaussRational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invariant violated: {name} ({detail})")]
    Violation { name: &'static str, detail: String },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("malformed descriptor at `{path}`: {message}")]
    Descriptor { path: String, message: String },
}

/// An element of the algebra in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement(pub Vec<GaussRational>);

impl LieElement {
    pub fn zero(dim: usize) -> Self {
        Self(vec![GaussRational::zero(); dim])
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[k] = GaussRational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    /// `c^k_{ij}` stored at `(i·dim + j)·dim + k`: `[e_i, e_j] = Σ_k c^k_{ij} e_k`.
    structure: Vec<GaussRational>,
    labels: Vec<String>,
    /// Optional matrix realization, used by the trace form.
    realization: Option<Vec<CMatrix>>,
}

impl LieAlgebra {
    /// Build from a dense structure-constant array and validate it.
    pub fn new(dim: usize, structure: Vec<GaussRational>, labels: Vec<String>) -> Result<Self, LieError> {
        if dim == 0 {
            return Err(LieError::InvalidAlgebra("dimension must be positive".into()));
        }
        if structure.len() != dim * dim * dim {
            return Err(LieError::DimensionMismatch { expected: dim * dim * dim, got: structure.len() });
        }
        if labels.len() != dim {
            return Err(LieError::DimensionMismatch { expected: dim, got: labels.len() });
        }
        let g = Self { dim, structure, labels, realization: None };
        g.validate()?;
        Ok(g)
    }

    /// Structure constants of the span of `matrices` under the commutator.
    pub fn from_realization(labels: &[&str], matrices: Vec<CMatrix>) -> Result<Self, LieError> {
        let dim = matrices.len();
        let size = matrices[0].rows();
        // columns of `flat` are the vectorized basis matrices
        let flat = CMatrix::from_fn(size * size, dim, |r, c| matrices[c].data()[r].clone());
        let mut structure = vec![GaussRational::zero(); dim * dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let br = matrices[i].commutator(&matrices[j]);
                let coords = flat.solve(br.data()).ok_or_else(|| {
                    LieError::InvalidAlgebra(format!("[{}, {}] leaves the span", labels[i], labels[j]))
                })?;
                for (k, x) in coords.into_iter().enumerate() {
                    structure[(i * dim + j) * dim + k] = x;
                }
            }
        }
        let mut g = Self::new(dim, structure, labels.iter().map(|s| s.to_string()).collect())?;
        g.realization = Some(matrices);
        Ok(g)
    }

    /// The abelian algebra `ℂ^dim` (all brackets zero).
    pub fn abelian(dim: usize) -> Self {
        let labels = (1..=dim).map(|k| format!("E{k}")).collect();
        Self::new(dim, vec![GaussRational::zero(); dim * dim * dim], labels).expect("abelian algebra is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn realization(&self) -> Option<&[CMatrix]> {
        self.realization.as_deref()
    }

    /// `c^k_{ij}`
    pub fn c(&self, i: usize, j: usize, k: usize) -> &GaussRational {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(Zero::is_zero)
    }

    fn validate(&self) -> Result<(), LieError> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.c(i, j, k) != &-self.c(j, i, k) {
                        return Err(LieError::Violation {
                            name: "antisymmetry",
                            detail: format!("c^{k}_{{{i}{j}}} = {} but c^{k}_{{{j}{i}}} = {}", self.c(i, j, k), self.c(j, i, k)),
                        });
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let r = self.jacobi_residual(i, j, k, l);
                        if !r.is_zero() {
                            return Err(LieError::Violation {
                                name: "jacobi",
                                detail: format!("residual {r} at (i,j,k,l) = ({i},{j},{k},{l})"),
                            });
                        }
                    }
                }
            }
        }
        for i in 0..n {
            let t: GaussRational = (0..n).map(|k| self.c(i, k, k).clone()).sum();
            if !t.is_zero() {
                return Err(LieError::Violation {
                    name: "unimodularity",
                    detail: format!("trace ad(e_{i}) = {t}"),
                });
            }
        }
        Ok(())
    }

    /// `Σ_m (c^m_{ij} c^l_{mk} + c^m_{jk} c^l_{mi} + c^m_{ki} c^l_{mj})`
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize, l: usize) -> GaussRational {
        (0..self.dim)
            .map(|m| {
                self.c(i, j, m) * self.c(m, k, l)
                    + self.c(j, k, m) * self.c(m, i, l)
                    + self.c(k, i, m) * self.c(m, j, l)
            })
            .sum()
    }

    fn check_dim(&self, x: &LieElement) -> Result<(), LieError> {
        if x.dim() != self.dim {
            return Err(LieError::DimensionMismatch { expected: self.dim, got: x.dim() });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement, LieError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let n = self.dim;
        let mut out = LieElement::zero(n);
        for i in 0..n {
            if x.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y.0[j].is_zero() {
                    continue;
                }
                let xy = &x.0[i] * &y.0[j];
                for k in 0..n {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        out.0[k] += &(&xy * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad(x)`; column `j` holds the coordinates of `[x, e_j]`.
    pub fn ad_matrix(&self, x: &LieElement) -> Result<CMatrix, LieError> {
        self.check_dim(x)?;
        let n = self.dim;
        let mut m = CMatrix::zeros(n, n);
        for j in 0..n {
            let col = self.bracket(x, &LieElement::basis(n, j))?;
            for (k, v) in col.0.into_iter().enumerate() {
                m[(k, j)] = v;
            }
        }
        Ok(m)
    }

    /// `trace(XY)` in the matrix realization when one is attached; otherwise
    /// the Killing form `trace(ad x ∘ ad y)`.
    pub fn trace_form(&self, x: &LieElement, y: &LieElement) -> Result<GaussRational, LieError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        match &self.realization {
            Some(mats) => {
                let lift = |v: &LieElement| {
                    v.0.iter()
                        .zip(mats)
                        .fold(CMatrix::zeros(mats[0].rows(), mats[0].cols()), |acc, (c, m)| acc.add(&m.scale(c)))
                };
                Ok(lift(x).mul(&lift(y)).trace())
            }
            None => Ok(self.ad_matrix(x)?.mul(&self.ad_matrix(y)?).trace()),
        }
    }

    pub fn trace_gram(&self) -> CMatrix {
        let n = self.dim;
        CMatrix::from_fn(n, n, |i, j| {
            self.trace_form(&LieElement::basis(n, i), &LieElement::basis(n, j)).expect("basis dims")
        })
    }

    /// `true` when the structure constants coincide with those of the
    /// built-in `sl(2,ℂ)` basis.
    pub fn is_sl2_standard(&self) -> bool {
        self.dim == 3 && self.structure == sl2_standard().algebra.structure
    }

    /// Real basis `u1 = i·A0`, `u2 = B0 − C0`, `u3 = i(B0 + C0)` of `su(2) ⊂ sl(2,ℂ)`,
    /// with `[u_a, u_b] = 2 ε_{abc} u_c`.
    pub fn su2_generators(&self) -> Result<[LieElement; 3], LieError> {
        if !self.is_sl2_standard() {
            return Err(LieError::InvalidAlgebra("su(2) generators are defined for sl(2,C) in the A0,B0,C0 basis".into()));
        }
        Ok(su2_basis())
    }
}

fn su2_basis() -> [LieElement; 3] {
    let z = GaussRational::zero;
    let one = GaussRational::one;
    let i = GaussRational::i;
    [
        LieElement(vec![i(), z(), z()]),
        LieElement(vec![z(), one(), -one()]),
        LieElement(vec![z(), i(), i()]),
    ]
}

/// A Hermitian form `h(x, y) = Σ x_i conj(y_j) h_{ij}`: linear in the first
/// slot, conjugate-linear in the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm {
    matrix: CMatrix,
}

impl HermitianForm {
    pub fn new(matrix: CMatrix) -> Result<Self, LieError> {
        if !matrix.is_square() {
            return Err(LieError::DimensionMismatch { expected: matrix.rows(), got: matrix.cols() });
        }
        let n = matrix.rows();
        for i in 0..n {
            for j in 0..n {
                if matrix[(i, j)] != matrix[(j, i)].conj() {
                    return Err(LieError::Violation {
                        name: "conjugate symmetry",
                        detail: format!("h[{i}][{j}] = {} vs conj(h[{j}][{i}]) = {}", matrix[(i, j)], matrix[(j, i)].conj()),
                    });
                }
            }
        }
        let h = Self { matrix };
        let real = h.real_realization();
        for k in 1..=2 * n {
            let idx: Vec<usize> = (0..k).collect();
            let minor = real.submatrix(&idx, &idx).det();
            if !minor.is_positive() {
                return Err(LieError::Violation {
                    name: "positive definiteness",
                    detail: format!("leading principal minor of order {k} is {minor}"),
                });
            }
        }
        Ok(h)
    }

    pub fn diagonal(entries: &[GaussRational]) -> Result<Self, LieError> {
        let n = entries.len();
        Self::new(CMatrix::from_fn(n, n, |r, c| if r == c { entries[r].clone() } else { GaussRational::zero() }))
    }

    pub fn identity(n: usize) -> Self {
        Self { matrix: CMatrix::identity(n) }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn entry(&self, i: usize, j: usize) -> &GaussRational {
        &self.matrix[(i, j)]
    }

    pub fn eval(&self, x: &LieElement, y: &LieElement) -> GaussRational {
        let n = self.dim();
        let mut acc = GaussRational::zero();
        for i in 0..n {
            for j in 0..n {
                let h = &self.matrix[(i, j)];
                if !h.is_zero() {
                    acc += &(&(&x.0[i] * &y.0[j].conj()) * h);
                }
            }
        }
        acc
    }

    /// `[[S, −A], [A, S]]` for `h = S + iA`.
    pub fn real_realization(&self) -> QMatrix {
        let n = self.dim();
        Matrix::from_fn(2 * n, 2 * n, |r, c| {
            let z = &self.matrix[(r % n, c % n)];
            match (r < n, c < n) {
                (true, true) | (false, false) => z.re().clone(),
                (true, false) => -z.im().clone(),
                (false, true) => z.im().clone(),
            }
        })
    }

    /// The determinant of a Hermitian matrix is real.
    pub fn det(&self) -> Rational {
        self.matrix.det().re().clone()
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.matrix[(i, j)].is_zero()))
    }

    pub fn scaled(&self, lambda: &Rational) -> Result<Self, LieError> {
        Self::new(self.matrix.map(|z| z.scale(lambda)))
    }

    /// Residual of infinitesimal invariance under `ad(u)`:
    /// `h([u,x], y) + h(x, [u,y])` for every basis pair.
    pub fn invariance_residual(&self, g: &LieAlgebra, u: &LieElement) -> Result<CMatrix, LieError> {
        let n = self.dim();
        let ad = g.ad_matrix(u)?;
        let col = |j: usize| LieElement(ad.column(j));
        Ok(CMatrix::from_fn(n, n, |i, j| {
            self.eval(&col(i), &LieElement::basis(n, j)) + self.eval(&LieElement::basis(n, i), &col(j))
        }))
    }
}

/// The conjugate-linear involution `X ↦ D·conj(X)`; for `sl(2,ℂ)` this is
/// `X ↦ −X*`, whose fixed points form `su(2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DaggerMap {
    matrix: CMatrix,
}

impl DaggerMap {
    pub fn new(g: &LieAlgebra, matrix: CMatrix) -> Result<Self, LieError> {
        let n = g.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(LieError::DimensionMismatch { expected: n, got: matrix.rows() });
        }
        let d = Self { matrix };
        if d.matrix.mul(&d.matrix.conj()) != CMatrix::identity(n) {
            return Err(LieError::Violation { name: "dagger involution", detail: "D·conj(D) ≠ I".into() });
        }
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (LieElement::basis(n, i), LieElement::basis(n, j));
                let lhs = d.apply(&g.bracket(&x, &y)?);
                let rhs = g.bracket(&d.apply(&x), &d.apply(&y))?;
                if lhs != rhs {
                    return Err(LieError::Violation {
                        name: "dagger bracket compatibility",
                        detail: format!("fails on basis pair ({i},{j})"),
                    });
                }
            }
        }
        Ok(d)
    }

    /// `X ↦ −conj(X)` in the given basis, the standard choice for algebras
    /// with real structure constants.
    pub fn negated_conjugation(g: &LieAlgebra) -> Result<Self, LieError> {
        Self::new(g, CMatrix::identity(g.dim()).neg())
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &LieElement) -> LieElement {
        LieElement(self.matrix.mul_vec(&x.0.iter().map(GaussRational::conj).collect::<Vec<_>>()))
    }
}

/// The built-in `sl(2,ℂ)` data.
#[derive(Clone, Debug)]
pub struct Sl2Data {
    pub algebra: LieAlgebra,
    pub hermitian: HermitianForm,
    pub dagger: DaggerMap,
}

pub fn sl2_matrices() -> Vec<CMatrix> {
    vec![
        CMatrix::from_ints(&[&[1, 0], &[0, -1]]),
        CMatrix::from_ints(&[&[0, 1], &[0, 0]]),
        CMatrix::from_ints(&[&[0, 0], &[1, 0]]),
    ]
}

/// `sl(2,ℂ)` in the basis `{A0, B0, C0}` with `h₀(X, Y) = trace(X Y*)` and
/// dagger `X ↦ −X*`.
pub fn sl2_standard() -> Sl2Data {
    let mats = sl2_matrices();
    let algebra = LieAlgebra::from_realization(&["A0", "B0", "C0"], mats.clone()).expect("sl2 is a Lie algebra");
    let hermitian = HermitianForm::new(CMatrix::from_fn(3, 3, |i, j| mats[i].mul(&mats[j].adjoint()).trace()))
        .expect("trace(XY*) is positive definite");
    // −X* expressed in the basis: columns are coordinates of −(e_j)*
    let flat = CMatrix::from_fn(4, 3, |r, c| mats[c].data()[r].clone());
    let dmat_cols: Vec<Vec<GaussRational>> = mats
        .iter()
        .map(|m| flat.solve(m.adjoint().neg().data()).expect("sl2 closed under X*"))
        .collect();
    let dmat = CMatrix::from_fn(3, 3, |r, c| dmat_cols[c][r].clone());
    let dagger = DaggerMap::new(&algebra, dmat).expect("−X* is an involutive automorphism");
    Sl2Data { algebra, hermitian, dagger }
}

/// JSON algebra descriptor:
/// `{"dim": n, "structure": [[i, j, k, "c"], …], "hermitian": [["h11", …], …]}`
/// with optional `"labels"` and `"dagger"` (matrix of scalar strings).
/// Structure entries are taken literally; nothing is antisymmetrized.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDescriptor {
    pub dim: usize,
    pub structure: Vec<(usize, usize, usize, GaussRational)>,
    pub hermitian: Vec<Vec<GaussRational>>,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub dagger: Option<Vec<Vec<GaussRational>>>,
}

#[derive(Clone, Debug)]
pub struct LoadedAlgebra {
    pub algebra: LieAlgebra,
    pub hermitian: HermitianForm,
    pub dagger: Option<DaggerMap>,
}

impl AlgebraDescriptor {
    pub fn from_reader(r: impl Read) -> Result<Self, LieError> {
        let de = &mut serde_json::Deserializer::from_reader(r);
        serde_path_to_error::deserialize(de).map_err(|e| LieError::Descriptor {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })
    }

    pub fn from_json(s: &str) -> Result<Self, LieError> {
        Self::from_reader(s.as_bytes())
    }

    pub fn build(self) -> Result<LoadedAlgebra, LieError> {
        let n = self.dim;
        let mut structure = vec![GaussRational::zero(); n * n * n];
        for (idx, (i, j, k, c)) in self.structure.into_iter().enumerate() {
            if i >= n || j >= n || k >= n {
                return Err(LieError::Descriptor {
                    path: format!("structure[{idx}]"),
                    message: format!("index out of range for dim {n}"),
                });
            }
            structure[(i * n + j) * n + k] = c;
        }
        let labels = self.labels.unwrap_or_else(|| (1..=n).map(|k| format!("E{k}")).collect());
        let algebra = LieAlgebra::new(n, structure, labels)?;
        let rows = self.hermitian.len();
        if rows != n || self.hermitian.iter().any(|r| r.len() != n) {
            return Err(LieError::Descriptor { path: "hermitian".into(), message: format!("expected a {n}x{n} matrix") });
        }
        let hermitian = HermitianForm::new(Matrix::from_rows(self.hermitian))?;
        let dagger = match self.dagger {
            Some(d) => {
                if d.len() != n || d.iter().any(|r| r.len() != n) {
                    return Err(LieError::Descriptor { path: "dagger".into(), message: format!("expected a {n}x{n} matrix") });
                }
                Some(DaggerMap::new(&algebra, Matrix::from_rows(d))?)
            }
            None => DaggerMap::negated_conjugation(&algebra).ok(),
        };
        Ok(LoadedAlgebra { algebra, hermitian, dagger })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(k: usize) -> LieElement {
        LieElement::basis(3, k)
    }

    fn int(n: i64) -> GaussRational {
        GaussRational::from_int(n)
    }

    /// Independent oracle: brackets from 2×2 commutators, read off entrywise.
    fn commutator_coords(x: usize, y: usize) -> Vec<GaussRational> {
        let m = sl2_matrices();
        let c = m[x].commutator(&m[y]);
        vec![c[(0, 0)].clone(), c[(0, 1)].clone(), c[(1, 0)].clone()]
    }

    #[test]
    fn sl2_brackets_match_commutators() {
        let g = sl2_standard().algebra;
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(g.bracket(&e(x), &e(y)).unwrap().0, commutator_coords(x, y));
            }
        }
        assert_eq!(g.bracket(&e(0), &e(1)).unwrap(), e(1).scale(&int(2)));
        assert_eq!(g.bracket(&e(0), &e(2)).unwrap(), e(2).scale(&int(-2)));
        assert_eq!(g.bracket(&e(1), &e(2)).unwrap(), e(0));
        assert!(g.bracket(&e(1), &e(1)).unwrap().is_zero());
    }

    #[test]
    fn sl2_hermitian_is_diag_2_1_1() {
        let h = sl2_standard().hermitian;
        assert_eq!(h.matrix(), &CMatrix::from_ints(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn ad_matrix_examples() {
        let g = sl2_standard().algebra;
        assert_eq!(g.ad_matrix(&e(0)).unwrap(), CMatrix::from_ints(&[&[0, 0, 0], &[0, 2, 0], &[0, 0, -2]]));
        assert!(g.ad_matrix(&LieElement::zero(3)).unwrap().is_zero());
        for k in 0..3 {
            assert!(g.ad_matrix(&e(k)).unwrap().trace().is_zero());
        }
        // ad is a representation
        for x in 0..3 {
            for y in 0..3 {
                let lhs = g.ad_matrix(&g.bracket(&e(x), &e(y)).unwrap()).unwrap();
                let rhs = g.ad_matrix(&e(x)).unwrap().commutator(&g.ad_matrix(&e(y)).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn trace_form_examples() {
        let g = sl2_standard().algebra;
        assert_eq!(g.trace_form(&e(0), &e(0)).unwrap(), int(2));
        assert_eq!(g.trace_form(&e(1), &e(1)).unwrap(), int(0));
        assert_eq!(g.trace_form(&e(1), &e(2)).unwrap(), int(1));
        let gram = g.trace_gram();
        assert_eq!(gram, CMatrix::from_ints(&[&[2, 0, 0], &[0, 0, 1], &[0, 1, 0]]));
        assert!(!gram.det().is_zero());
        // ad-invariance
        for z in 0..3 {
            for x in 0..3 {
                for y in 0..3 {
                    let zx = g.bracket(&e(z), &e(x)).unwrap();
                    let zy = g.bracket(&e(z), &e(y)).unwrap();
                    let r = g.trace_form(&zx, &e(y)).unwrap() + g.trace_form(&e(x), &zy).unwrap();
                    assert!(r.is_zero());
                }
            }
        }
    }

    #[test]
    fn killing_form_fallback_is_four_times_trace_form() {
        let g = sl2_standard().algebra;
        let bare = LieAlgebra::new(3, g.structure.clone(), g.labels.clone()).unwrap();
        assert_eq!(bare.trace_gram(), g.trace_gram().scale(&int(4)));
    }

    #[test]
    fn su2_generators_are_skew_hermitian_and_close() {
        let g = sl2_standard();
        let u = g.algebra.su2_generators().unwrap();
        let mats = sl2_matrices();
        let lift = |v: &LieElement| {
            v.0.iter().zip(&mats).fold(CMatrix::zeros(2, 2), |acc, (c, m)| acc.add(&m.scale(c)))
        };
        for x in &u {
            let m = lift(x);
            assert_eq!(m.adjoint(), m.neg());
            assert!(m.trace().is_zero());
            assert_eq!(g.dagger.apply(x), *x);
        }
        let two = int(2);
        assert_eq!(g.algebra.bracket(&u[1], &u[2]).unwrap(), u[0].scale(&two));
        assert_eq!(g.algebra.bracket(&u[0], &u[1]).unwrap(), u[2].scale(&two));
        assert_eq!(g.algebra.bracket(&u[2], &u[0]).unwrap(), u[1].scale(&two));
        // real span of u and i·u intersect trivially: the 6 realified vectors are independent
        let mut rows = Vec::new();
        for x in &u {
            for v in [x.clone(), x.scale(&GaussRational::i())] {
                rows.push(v.0.iter().map(|z| z.re().clone()).chain(v.0.iter().map(|z| z.im().clone())).collect());
            }
        }
        assert_eq!(QMatrix::from_rows(rows).rank(), 6);
        assert!(LieAlgebra::abelian(3).su2_generators().is_err());
    }

    #[test]
    fn h0_is_su2_invariant() {
        let g = sl2_standard();
        for u in g.algebra.su2_generators().unwrap() {
            assert!(g.hermitian.invariance_residual(&g.algebra, &u).unwrap().is_zero());
        }
        let id = HermitianForm::identity(3);
        let u = g.algebra.su2_generators().unwrap();
        assert!(!id.invariance_residual(&g.algebra, &u[1]).unwrap().is_zero());
    }

    #[test]
    fn dagger_is_minus_adjoint() {
        let g = sl2_standard();
        assert_eq!(g.dagger.matrix(), &CMatrix::from_ints(&[&[-1, 0, 0], &[0, 0, -1], &[0, -1, 0]]));
        let x = LieElement(vec!["1+i".parse().unwrap(), "2".parse().unwrap(), "-3i".parse().unwrap()]);
        assert_eq!(g.dagger.apply(&g.dagger.apply(&x)), x);
    }

    #[test]
    fn dimension_mismatch() {
        let g = sl2_standard().algebra;
        assert!(matches!(
            g.bracket(&LieElement::zero(2), &e(0)),
            Err(LieError::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn hermitian_rejects_bad_forms() {
        let not_sym = CMatrix::from_rows(vec![vec![int(1), GaussRational::i()], vec![GaussRational::i(), int(1)]]);
        assert!(matches!(HermitianForm::new(not_sym), Err(LieError::Violation { name: "conjugate symmetry", .. })));
        let indefinite = CMatrix::from_ints(&[&[1, 0], &[0, -1]]);
        assert!(matches!(HermitianForm::new(indefinite), Err(LieError::Violation { name: "positive definiteness", .. })));
        let offdiag = CMatrix::from_rows(vec![
            vec![int(2), GaussRational::i()],
            vec![-GaussRational::i(), int(1)],
        ]);
        assert!(HermitianForm::new(offdiag).is_ok());
    }

    #[test]
    fn descriptor_roundtrip_and_violations() {
        let sl2 = r#"{"dim":3,"labels":["A0","B0","C0"],
            "structure":[[0,1,1,"2"],[1,0,1,"-2"],[0,2,2,"-2"],[2,0,2,"2"],[1,2,0,"1"],[2,1,0,"-1"]],
            "hermitian":[["2","0","0"],["0","1","0"],["0","0","1"]]}"#;
        let loaded = AlgebraDescriptor::from_json(sl2).unwrap().build().unwrap();
        assert!(loaded.algebra.is_sl2_standard());

        let not_antisym = r#"{"dim":3,"structure":[[0,1,1,"2"]],"hermitian":[["1","0","0"],["0","1","0"],["0","0","1"]]}"#;
        let err = AlgebraDescriptor::from_json(not_antisym).unwrap().build().unwrap_err();
        assert!(matches!(err, LieError::Violation { name: "antisymmetry", .. }), "{err}");

        let bad_field = r#"{"dim":3,"structure":[[0,1,1,"two"]],"hermitian":[]}"#;
        let err = AlgebraDescriptor::from_json(bad_field).unwrap_err();
        assert!(err.to_string().contains("structure"), "{err}");
    }
}
