//! Invariant connections on the holomorphic tangent bundle.
//!
//! Frame `e_1…e_n` of right-invariant holomorphic vector fields; direction
//! index `a < n` is `e_a`, `a ≥ n` is `ē_{a−n}`, matching the bit layout of
//! [`InvariantForm`] masks. `gamma10[i]` is the matrix of `∇_{e_i}` on the
//! frame (`∇_{e_i} e_j = Σ_k Γ_i[k,j] e_k`) and `gamma01[i]` that of `∇_{ē_i}`.

mod bismut;
mod endform;
mod holonomy;

use num_traits::Zero;
use thiserror::Error;

use crate::forms::{InvariantForm, SignConvention};
use crate::lie::{DaggerMap, HermitianForm, LieAlgebra};
use crate::linalg::CMatrix;
use crate::scalar::{GaussRational, Rational};

pub use bismut::{bismut_connection, bismut_connection_with, gauduchon_family, torsion_three_form};
pub use endform::{CurvatureTensor, EndForm};
pub use holonomy::{connection_at, curvature_at, holonomy_algebra, is_h_skew, real_directions, su3_containment, HolonomyAlgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnectionError {
    #[error("the metric is singular")]
    SingularMetric,
    #[error("connection data has the wrong shape: {0}")]
    Shape(String),
    #[error("no connection satisfies the defining conditions")]
    Unsolvable,
    #[error("the defining conditions leave a {0}-dimensional family")]
    NotUnique(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectionKind {
    Chern,
    Bismut,
    Gauduchon(Rational),
    Custom,
}

impl std::fmt::Display for ConnectionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConnectionKind::Chern => f.write_str("chern"),
            ConnectionKind::Bismut => f.write_str("bismut"),
            ConnectionKind::Gauduchon(t) => write!(f, "gauduchon:{t}"),
            ConnectionKind::Custom => f.write_str("custom"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantConnection {
    pub(crate) dim: usize,
    pub(crate) convention: SignConvention,
    pub(crate) gamma10: Vec<CMatrix>,
    pub(crate) gamma01: Vec<CMatrix>,
    pub(crate) kind: ConnectionKind,
}

impl InvariantConnection {
    pub fn new(
        convention: SignConvention,
        gamma10: Vec<CMatrix>,
        gamma01: Vec<CMatrix>,
        kind: ConnectionKind,
    ) -> Result<Self, ConnectionError> {
        let dim = gamma10.len();
        if gamma01.len() != dim {
            return Err(ConnectionError::Shape(format!("{} holomorphic vs {} antiholomorphic directions", dim, gamma01.len())));
        }
        let rank = gamma10.first().map_or(0, CMatrix::rows);
        if gamma10.iter().chain(&gamma01).any(|m| m.rows() != rank || m.cols() != rank) {
            return Err(ConnectionError::Shape("coefficient matrices must share one square size".into()));
        }
        Ok(Self { dim, convention, gamma10, gamma01, kind })
    }

    /// A connection on the trivial rank-`rank` bundle with zero coefficients.
    pub fn trivial(dim: usize, rank: usize, convention: SignConvention) -> Self {
        let z = vec![CMatrix::zeros(rank, rank); dim];
        Self { dim, convention, gamma10: z.clone(), gamma01: z, kind: ConnectionKind::Custom }
    }

    /// Metric-compatible connection with prescribed holomorphic coefficients;
    /// the antiholomorphic ones are fixed by compatibility with `h`.
    pub fn metric_from_holomorphic(
        h: &HermitianForm,
        convention: SignConvention,
        gamma10: Vec<CMatrix>,
        kind: ConnectionKind,
    ) -> Result<Self, ConnectionError> {
        let gamma01 = gamma10.iter().map(|g| compatible_partner(h, g)).collect::<Result<_, _>>()?;
        Self::new(convention, gamma10, gamma01, kind)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.gamma10.first().map_or(0, CMatrix::rows)
    }

    pub fn kind(&self) -> &ConnectionKind {
        &self.kind
    }

    pub fn convention(&self) -> SignConvention {
        self.convention
    }

    pub fn gamma10(&self) -> &[CMatrix] {
        &self.gamma10
    }

    pub fn gamma01(&self) -> &[CMatrix] {
        &self.gamma01
    }

    /// Coefficient matrix in direction `a` (`a < n` holomorphic).
    pub fn gamma(&self, a: usize) -> &CMatrix {
        if a < self.dim {
            &self.gamma10[a]
        } else {
            &self.gamma01[a - self.dim]
        }
    }

    /// `Γ^k_{ij}` in the holomorphic directions.
    pub fn christoffel(&self, i: usize, j: usize, k: usize) -> &GaussRational {
        &self.gamma10[i][(k, j)]
    }

    /// `Γ_i^T H + H conj(Γ̃_i)` and its partner for `ē_i`; all zero iff `∇h = 0`.
    pub fn metric_residual(&self, h: &HermitianForm) -> Vec<CMatrix> {
        let hm = h.matrix();
        let mut out = Vec::with_capacity(2 * self.dim);
        for i in 0..self.dim {
            out.push(self.gamma10[i].transpose().mul(hm).add(&hm.mul(&self.gamma01[i].conj())));
            out.push(self.gamma01[i].transpose().mul(hm).add(&hm.mul(&self.gamma10[i].conj())));
        }
        out
    }

    pub fn is_metric(&self, h: &HermitianForm) -> bool {
        self.metric_residual(h).iter().all(CMatrix::is_zero)
    }

    pub fn lincomb(&self, a: &GaussRational, o: &Self, b: &GaussRational, kind: ConnectionKind) -> Self {
        let mix = |x: &[CMatrix], y: &[CMatrix]| x.iter().zip(y).map(|(p, q)| p.scale(a).add(&q.scale(b))).collect();
        Self {
            dim: self.dim,
            convention: self.convention,
            gamma10: mix(&self.gamma10, &o.gamma10),
            gamma01: mix(&self.gamma01, &o.gamma01),
            kind,
        }
    }

    pub fn to_json(&self, h: &HermitianForm, g: &LieAlgebra) -> serde_json::Value {
        let mats = |ms: &[CMatrix]| {
            ms.iter()
                .map(|m| (0..m.rows()).map(|r| m.row(r).iter().map(|z| z.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        let torsion = torsion(g, self);
        serde_json::json!({
            "kind": self.kind.to_string(),
            "convention": self.convention.name(),
            "gamma10": mats(&self.gamma10),
            "gamma01": mats(&self.gamma01),
            "metric_compatible": self.is_metric(h),
            "curvature_zero": curvature(g, self).is_zero(),
            "torsion_zero": torsion.is_zero(),
        })
    }
}

/// `Γ̃ = −conj(H⁻¹ Γᵀ H)`.
pub(crate) fn compatible_partner(h: &HermitianForm, g: &CMatrix) -> Result<CMatrix, ConnectionError> {
    let hinv = h.matrix().inverse().ok_or(ConnectionError::SingularMetric)?;
    Ok(hinv.mul(&g.transpose()).mul(h.matrix()).conj().neg())
}

pub fn chern_connection(g: &LieAlgebra, convention: SignConvention) -> InvariantConnection {
    let n = g.dim();
    InvariantConnection {
        kind: ConnectionKind::Chern,
        ..InvariantConnection::trivial(n, n, convention)
    }
}

/// `σ^k([E_a, E_b])` for frame directions `a, b`.
pub(crate) fn frame_bracket(g: &LieAlgebra, s: SignConvention, a: usize, b: usize, k: usize) -> GaussRational {
    let n = g.dim();
    let s = GaussRational::from_int(-s.sign());
    match (a < n, b < n, k < n) {
        (true, true, true) => g.c(a, b, k) * &s,
        (false, false, false) => g.c(a - n, b - n, k - n).conj() * &s,
        _ => GaussRational::zero(),
    }
}

/// `R(E_a, E_b) = [Γ_a, Γ_b] − Γ_{[E_a, E_b]}`.
pub fn curvature(g: &LieAlgebra, conn: &InvariantConnection) -> CurvatureTensor {
    let n = conn.dim;
    let mut r = EndForm::zero(n, conn.rank());
    for a in 0..2 * n {
        for b in a + 1..2 * n {
            let mut m = conn.gamma(a).commutator(conn.gamma(b));
            for k in 0..2 * n {
                let f = frame_bracket(g, conn.convention, a, b, k);
                if !f.is_zero() {
                    m = m.sub(&conn.gamma(k).scale(&f));
                }
            }
            r.add_term((1 << a) | (1 << b), &m);
        }
    }
    r
}

/// Torsion of a tangent connection, with values in `T ⊗ ℂ = T^{1,0} ⊕ T^{0,1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionTensor {
    dim: usize,
    /// `(a, b, k) ↦ θ^k(T(E_a, E_b))` over all `2n` directions.
    values: Vec<GaussRational>,
}

impl TorsionTensor {
    fn idx(&self, a: usize, b: usize, k: usize) -> usize {
        let m = 2 * self.dim;
        (a * m + b) * m + k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, a: usize, b: usize, k: usize) -> &GaussRational {
        &self.values[self.idx(a, b, k)]
    }

    /// `T^k_{ij}` on holomorphic directions.
    pub fn t(&self, i: usize, j: usize, k: usize) -> &GaussRational {
        self.value(i, j, k)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn is_antisymmetric(&self) -> bool {
        let m = 2 * self.dim;
        (0..m).all(|a| (0..m).all(|b| (0..m).all(|k| self.value(a, b, k) == &-self.value(b, a, k))))
    }

    /// The (2,0) part `T^k = Σ_{i<j} T^k_{ij} σ^i ∧ σ^j` as `n` forms.
    pub fn holomorphic_forms(&self) -> Vec<InvariantForm> {
        let n = self.dim;
        (0..n)
            .map(|k| {
                let mut f = InvariantForm::zero(n);
                for i in 0..n {
                    for j in i + 1..n {
                        f.add_term((1 << i) | (1 << j), self.t(i, j, k));
                    }
                }
                f
            })
            .collect()
    }
}

pub fn torsion(g: &LieAlgebra, conn: &InvariantConnection) -> TorsionTensor {
    let n = conn.dim;
    assert_eq!(conn.rank(), n, "torsion needs a connection on the tangent bundle");
    let m = 2 * n;
    // ∇_{E_a} E_b expressed in the full frame
    let nabla = |a: usize, b: usize, k: usize| -> GaussRational {
        match (b < n, k < n) {
            (true, true) => conn.gamma(a)[(k, b)].clone(),
            (false, false) => {
                let conj_dir = if a < n { a + n } else { a - n };
                conn.gamma(conj_dir)[(k - n, b - n)].conj()
            }
            _ => GaussRational::zero(),
        }
    };
    let mut values = Vec::with_capacity(m * m * m);
    for a in 0..m {
        for b in 0..m {
            for k in 0..m {
                values.push(nabla(a, b, k) - nabla(b, a, k) - frame_bracket(g, conn.convention, a, b, k));
            }
        }
    }
    TorsionTensor { dim: n, values }
}

/// Raised torsion `s` and its dagger-identified image `ŝ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewReport {
    pub raised: Vec<GaussRational>,
    pub identified: Vec<GaussRational>,
    pub raised_antisymmetric: bool,
    pub identified_antisymmetric: bool,
}

impl SkewReport {
    pub fn identified_at(&self, n: usize, a: usize, b: usize, c: usize) -> &GaussRational {
        &self.identified[(a * n + b) * n + c]
    }

    pub fn raised_at(&self, n: usize, a: usize, b: usize, c: usize) -> &GaussRational {
        &self.raised[(a * n + b) * n + c]
    }
}

fn totally_antisymmetric(t: &[GaussRational], n: usize) -> bool {
    let at = |a: usize, b: usize, c: usize| &t[(a * n + b) * n + c];
    (0..n).all(|a| {
        (0..n).all(|b| (0..n).all(|c| at(a, b, c) == &-at(b, a, c) && at(a, b, c) == &-at(a, c, b)))
    })
}

/// Raise both form slots of the (2,0) torsion with `h`, then identify the
/// conjugate module with the module slotwise via `dagger`.
pub fn torsion_skew_check(
    t: &TorsionTensor,
    h: &HermitianForm,
    dagger: &DaggerMap,
) -> Result<SkewReport, ConnectionError> {
    let n = t.dim();
    let hinv = h.matrix().inverse().ok_or(ConnectionError::SingularMetric)?;
    let mut raised = vec![GaussRational::zero(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            for k in 0..n {
                let mut acc = GaussRational::zero();
                for i in 0..n {
                    for j in 0..n {
                        let v = t.t(i, j, k);
                        if !v.is_zero() {
                            acc += &(&(v * &hinv[(i, a)]) * &hinv[(j, b)]);
                        }
                    }
                }
                raised[(a * n + b) * n + k] = acc;
            }
        }
    }
    let d = dagger.matrix();
    let mut identified = vec![GaussRational::zero(); n * n * n];
    for a2 in 0..n {
        for b2 in 0..n {
            for k in 0..n {
                let mut acc = GaussRational::zero();
                for a in 0..n {
                    for b in 0..n {
                        let v = &raised[(a * n + b) * n + k];
                        if !v.is_zero() {
                            acc += &(&(v * &d[(a2, a)]) * &d[(b2, b)]);
                        }
                    }
                }
                identified[(a2 * n + b2) * n + k] = acc;
            }
        }
    }
    Ok(SkewReport {
        raised_antisymmetric: totally_antisymmetric(&raised, n),
        identified_antisymmetric: totally_antisymmetric(&identified, n),
        raised,
        identified,
    })
}

/// `trace(R ∧ R)`.
pub fn trace_r_wedge_r(r: &CurvatureTensor) -> InvariantForm {
    r.wedge(r).trace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::ChevalleyEilenberg;
    use crate::lie::sl2_standard;

    fn g(s: &str) -> GaussRational {
        s.parse().unwrap()
    }

    #[test]
    fn chern_is_flat_with_torsion() {
        let d = sl2_standard();
        for conv in [SignConvention::RightInvariant, SignConvention::Flipped] {
            let ch = chern_connection(&d.algebra, conv);
            assert!(ch.is_metric(&d.hermitian));
            assert!(curvature(&d.algebra, &ch).is_zero());
            let t = torsion(&d.algebra, &ch);
            assert!(t.is_antisymmetric());
            assert_eq!(t.t(0, 1, 1), &GaussRational::from_int(2 * conv.sign()));
            assert_eq!(t.t(1, 2, 0), &GaussRational::from_int(conv.sign()));
            assert!(trace_r_wedge_r(&curvature(&d.algebra, &ch)).is_zero());
        }
    }

    #[test]
    fn torsion_two_form_matches_structure_equations() {
        // For Chern, T^k = −dσ^k restricted to (2,0) up to the convention sign.
        let d = sl2_standard();
        let ce = ChevalleyEilenberg::new(&d.algebra, SignConvention::RightInvariant);
        let t = torsion(&d.algebra, &chern_connection(&d.algebra, SignConvention::RightInvariant));
        for (k, f) in t.holomorphic_forms().iter().enumerate() {
            assert_eq!(f, &ce.d(&InvariantForm::sigma(3, k)));
        }
    }

    #[test]
    fn abelian_torsion_vanishes() {
        let ab = LieAlgebra::abelian(3);
        let t = torsion(&ab, &chern_connection(&ab, SignConvention::RightInvariant));
        assert!(t.is_zero());
        let rep = torsion_skew_check(&t, &HermitianForm::identity(3), &DaggerMap::negated_conjugation(&ab).unwrap()).unwrap();
        assert!(rep.identified_antisymmetric);
    }

    #[test]
    fn skew_check_examples() {
        let d = sl2_standard();
        let t = torsion(&d.algebra, &chern_connection(&d.algebra, SignConvention::RightInvariant));
        let rep = torsion_skew_check(&t, &d.hermitian, &d.dagger).unwrap();
        assert!(rep.identified_antisymmetric);
        assert!(!rep.raised_antisymmetric);
        assert_eq!(rep.raised_at(3, 0, 1, 1), &g("1"));
        assert_eq!(rep.identified_at(3, 0, 1, 2), &g("-1"));
        assert_eq!(rep.identified_at(3, 1, 2, 0), &g("-1"));
        assert_eq!(rep.identified_at(3, 0, 2, 1), &g("1"));
        let flat = torsion_skew_check(&t, &HermitianForm::identity(3), &d.dagger).unwrap();
        assert!(!flat.identified_antisymmetric);
    }

    #[test]
    fn curvature_of_adjoint_connection() {
        // Γ_{e_i} = ad(e_i): R = [ad_a, ad_b] + s·ad_{[a,b]} = (1 + s) ad_{[a,b]}.
        let d = sl2_standard();
        let n = 3;
        let ad: Vec<CMatrix> = (0..n)
            .map(|i| d.algebra.ad_matrix(&crate::lie::LieElement::basis(n, i)).unwrap())
            .collect();
        let zero = vec![CMatrix::zeros(n, n); n];
        for conv in [SignConvention::RightInvariant, SignConvention::Flipped] {
            let conn = InvariantConnection::new(conv, ad.clone(), zero.clone(), ConnectionKind::Custom).unwrap();
            let r = curvature(&d.algebra, &conn);
            let factor = GaussRational::from_int(1 + conv.sign());
            for a in 0..n {
                for b in a + 1..n {
                    let br = d
                        .algebra
                        .bracket(&crate::lie::LieElement::basis(n, a), &crate::lie::LieElement::basis(n, b))
                        .unwrap();
                    let expect = d.algebra.ad_matrix(&br).unwrap().scale(&factor);
                    assert_eq!(r.get((1 << a) | (1 << b)), expect);
                }
            }
            assert!(r.component(1, 1).is_zero());
        }
    }

    #[test]
    fn metric_partner_restores_compatibility() {
        let d = sl2_standard();
        let g10: Vec<CMatrix> = (0..3)
            .map(|i| CMatrix::from_fn(3, 3, |r, c| GaussRational::from_fracs((r + 2 * c + i) as i64, 3, (r as i64) - (i as i64), 2)))
            .collect();
        let conn = InvariantConnection::metric_from_holomorphic(&d.hermitian, SignConvention::RightInvariant, g10, ConnectionKind::Custom).unwrap();
        assert!(conn.is_metric(&d.hermitian));
        let r = curvature(&d.algebra, &conn);
        assert!(!r.is_zero());
        let dirs = holonomy::real_directions(3);
        for x in &dirs {
            for y in &dirs {
                assert!(holonomy::is_h_skew(&holonomy::curvature_at(&r, x, y), &d.hermitian));
            }
        }
    }

    #[test]
    fn shape_errors() {
        let e = InvariantConnection::new(SignConvention::RightInvariant, vec![CMatrix::zeros(3, 3); 3], vec![CMatrix::zeros(3, 3); 2], ConnectionKind::Custom);
        assert!(matches!(e, Err(ConnectionError::Shape(_))));
    }
}
