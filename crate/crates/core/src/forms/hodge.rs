//! Hodge star of an invariant Hermitian metric, extended complex-linearly.

use num_traits::{One, Zero};

use super::{masks_of_degree, wedge_sign, ChevalleyEilenberg, InvariantForm};
use crate::exec::Exec;
use crate::lie::HermitianForm;
use crate::linalg::CMatrix;
use crate::scalar::GaussRational;

#[derive(Clone, Debug)]
pub struct HodgeStar {
    dim: usize,
    /// `vol = volume · σ^{1…n} ∧ σ̄^{1…n}`.
    volume: GaussRational,
    /// `⋆` of each basis monomial, indexed by mask.
    table: Vec<InvariantForm>,
}

impl HodgeStar {
    pub fn new(h: &HermitianForm) -> Self {
        Self::with_exec(h, Exec::default())
    }

    pub fn with_exec(h: &HermitianForm, exec: Exec) -> Self {
        let n = h.dim();
        let hinv = h.matrix().inverse().expect("positive-definite forms are invertible");
        let two = GaussRational::from_int(2);
        // inverse of the bilinear metric on the coframe (σ^1…σ^n, σ̄^1…σ̄^n)
        let ginv = CMatrix::from_fn(2 * n, 2 * n, |a, b| match (a < n, b < n) {
            (true, false) => &two * &hinv[(b - n, a)],
            (false, true) => &two * &hinv[(b, a - n)],
            _ => GaussRational::zero(),
        });
        let omega = super::kaehler_form(h);
        let top = omega.power(n as u32).top_coefficient();
        let factorial: i64 = (1..=n as i64).product();
        let volume = top.scale(&crate::scalar::rational(1, factorial));
        let full = (1u32 << (2 * n)) - 1;
        let table = exec.map_range(1usize << (2 * n), |j| {
            let j = j as u32;
            let k = j.count_ones() as usize;
            let jbits = bits(j);
            let mut out = InvariantForm::zero(n);
            for i in masks_of_degree(n, k) {
                let gij = ginv.submatrix(&bits(i), &jbits).det();
                if gij.is_zero() {
                    continue;
                }
                let comp = full & !i;
                let eps = wedge_sign(i, comp);
                let c = &gij * &volume;
                out.add_term(comp, &if eps < 0 { -c } else { c });
            }
            out
        });
        Self { dim: n, volume, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn volume_coefficient(&self) -> &GaussRational {
        &self.volume
    }

    pub fn volume_form(&self) -> InvariantForm {
        InvariantForm::from_terms(self.dim, [((1u32 << (2 * self.dim)) - 1, self.volume.clone())])
    }

    pub fn star(&self, f: &InvariantForm) -> InvariantForm {
        assert_eq!(f.dim(), self.dim, "ambient mismatch");
        let mut out = InvariantForm::zero(self.dim);
        for (m, c) in f.terms() {
            for (m2, c2) in self.table[m as usize].terms() {
                out.add_term(m2, &(c * c2));
            }
        }
        out
    }

    /// Pointwise Hermitian inner product: `a ∧ ⋆conj(b) = ⟨a, b⟩ vol`.
    pub fn inner(&self, a: &InvariantForm, b: &InvariantForm) -> GaussRational {
        let top = a.w(&self.star(&b.conjugate())).top_coefficient();
        &top / &self.volume
    }

    /// `d* = −⋆ d ⋆` (even real dimension).
    pub fn codifferential(&self, ce: &ChevalleyEilenberg, f: &InvariantForm) -> InvariantForm {
        self.star(&ce.d(&self.star(f))).neg()
    }

    /// Coefficient of a top form relative to `vol`.
    pub fn integrand(&self, top: &InvariantForm) -> GaussRational {
        &top.top_coefficient() / &self.volume
    }

    pub fn identity_check(&self) -> bool {
        self.star(&InvariantForm::constant(self.dim, GaussRational::one())) == self.volume_form()
    }
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|&b| mask & (1 << b) != 0).collect()
}
