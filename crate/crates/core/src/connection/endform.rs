use std::collections::BTreeMap;

use num_traits::Zero;

use crate::forms::{wedge_sign, HodgeStar, InvariantForm};
use crate::linalg::CMatrix;
use crate::scalar::GaussRational;

/// An endomorphism-valued invariant form: mask → `rank × rank` matrix, with
/// masks encoded as in [`InvariantForm`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndForm {
    dim: usize,
    rank: usize,
    terms: BTreeMap<u32, CMatrix>,
}

/// Curvature of a connection as an `End`-valued 2-form.
pub type CurvatureTensor = EndForm;

impl EndForm {
    pub fn zero(dim: usize, rank: usize) -> Self {
        Self { dim, rank, terms: BTreeMap::new() }
    }

    /// `a ⊗ M` for a scalar form `a`.
    pub fn from_form(a: &InvariantForm, m: &CMatrix) -> Self {
        let mut out = Self::zero(a.dim(), m.rows());
        for (mask, c) in a.terms() {
            out.add_term(mask, &m.scale(c));
        }
        out
    }

    pub fn add_term(&mut self, mask: u32, m: &CMatrix) {
        if m.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_insert_with(|| CMatrix::zeros(self.rank, self.rank));
        *slot = slot.add(m);
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &CMatrix)> {
        self.terms.iter().map(|(&m, x)| (m, x))
    }

    pub fn get(&self, mask: u32) -> CMatrix {
        self.terms.get(&mask).cloned().unwrap_or_else(|| CMatrix::zeros(self.rank, self.rank))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn component(&self, p: usize, q: usize) -> Self {
        let holo = (1u32 << self.dim) - 1;
        Self {
            dim: self.dim,
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(&m, _)| {
                    ((m & holo).count_ones() as usize, (m & !holo).count_ones() as usize) == (p, q)
                })
                .map(|(&m, x)| (m, x.clone()))
                .collect(),
        }
    }

    pub fn trace(&self) -> InvariantForm {
        InvariantForm::from_terms(self.dim, self.terms.iter().map(|(&m, x)| (m, x.trace())))
    }

    /// Entry `(r, c)` as a scalar form.
    pub fn entry(&self, r: usize, c: usize) -> InvariantForm {
        InvariantForm::from_terms(self.dim, self.terms.iter().map(|(&m, x)| (m, x[(r, c)].clone())))
    }

    pub fn wedge_form(&self, a: &InvariantForm) -> Self {
        let mut out = Self::zero(self.dim, self.rank);
        for (&m, x) in &self.terms {
            for (m2, c) in a.terms() {
                let s = wedge_sign(m, m2);
                if s != 0 {
                    let c = if s < 0 { -c } else { c.clone() };
                    out.add_term(m | m2, &x.scale(&c));
                }
            }
        }
        out
    }

    /// `A ∧ B` with matrix multiplication on the values.
    pub fn wedge(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.dim, self.rank);
        for (&a, x) in &self.terms {
            for (&b, y) in &o.terms {
                let s = wedge_sign(a, b);
                if s != 0 {
                    let p = x.mul(y);
                    out.add_term(a | b, &if s < 0 { p.neg() } else { p });
                }
            }
        }
        out
    }

    pub fn star(&self, hs: &HodgeStar) -> Self {
        let mut out = Self::zero(self.dim, self.rank);
        for (&m, x) in &self.terms {
            let s = hs.star(&InvariantForm::from_terms(self.dim, [(m, GaussRational::from_int(1))]));
            for (m2, c) in s.terms() {
                out.add_term(m2, &x.scale(c));
            }
        }
        out
    }

    /// The matrix of a 0-form.
    pub fn scalar_part(&self) -> CMatrix {
        self.get(0)
    }

    /// `Some(λ)` when the 0-form part is `λ·Id` and nothing else is present.
    pub fn as_identity_multiple(&self) -> Option<GaussRational> {
        if self.terms.keys().any(|&m| m != 0) {
            return None;
        }
        let m = self.scalar_part();
        let lambda = if self.rank == 0 { GaussRational::zero() } else { m[(0, 0)].clone() };
        (m == CMatrix::scalar(self.rank, lambda.clone())).then_some(lambda)
    }
}
