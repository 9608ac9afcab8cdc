//! Right-invariant complex differential forms on a complex Lie group.
//!
//! A form is a finite sum of monomials `σ^I ∧ σ̄^J` over the holomorphic
//! coframe `σ^1…σ^n` and its conjugate. Monomials are encoded as bit masks:
//! bit `k < n` is `σ^{k+1}`, bit `n + k` is `σ̄^{k+1}`, and the canonical
//! ordering of factors is increasing bit index (all `σ` before all `σ̄`).

mod complex;
mod hodge;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::lie::HermitianForm;
use crate::scalar::{GaussRational, Rational};

pub use complex::{ChevalleyEilenberg, SignConvention};
pub use hodge::HodgeStar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("forms live over algebras of different dimension ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("expected a form of degree {expected}, found degree {found:?}")]
    WrongDegree { expected: usize, found: Vec<usize> },
    #[error("holomorphic volume coefficient must be nonzero")]
    VanishingSection,
    #[error("the form is not a multiple of the reference form")]
    NotProportional,
}

/// Sign of `f_a ∧ f_b` relative to the canonical ordering of `a ∪ b`;
/// zero when the masks overlap.
pub fn wedge_sign(a: u32, b: u32) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        swaps += (a >> (y + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

fn signed(c: &GaussRational, sign: i32) -> GaussRational {
    if sign < 0 {
        -c
    } else {
        c.clone()
    }
}

/// All masks of the given total degree, in increasing numeric order.
pub fn masks_of_degree(dim: usize, degree: usize) -> Vec<u32> {
    (0u32..1 << (2 * dim)).filter(|m| m.count_ones() as usize == degree).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct InvariantForm {
    dim: usize,
    terms: BTreeMap<u32, GaussRational>,
}

impl InvariantForm {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= 15, "coframe too large for the mask encoding");
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: GaussRational) -> Self {
        Self::zero(dim).with_term(0, c)
    }

    /// `σ^{k+1}` (zero-based `k`).
    pub fn sigma(dim: usize, k: usize) -> Self {
        Self::zero(dim).with_term(1 << k, GaussRational::one())
    }

    /// `σ̄^{k+1}` (zero-based `k`).
    pub fn sigma_bar(dim: usize, k: usize) -> Self {
        Self::zero(dim).with_term(1 << (dim + k), GaussRational::one())
    }

    /// `c · σ^{h_1} ∧ … ∧ σ^{h_p} ∧ σ̄^{a_1} ∧ … ∧ σ̄^{a_q}` in the given
    /// (possibly unsorted) order; repeated factors give zero.
    pub fn monomial(dim: usize, holo: &[usize], anti: &[usize], c: GaussRational) -> Self {
        let factors = holo.iter().copied().chain(anti.iter().map(|&k| dim + k));
        let mut mask = 0u32;
        let mut sign = 1;
        for bit in factors {
            let b = 1u32 << bit;
            sign *= wedge_sign(mask, b);
            if sign == 0 {
                return Self::zero(dim);
            }
            mask |= b;
        }
        Self::zero(dim).with_term(mask, signed(&c, sign))
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (u32, GaussRational)>) -> Self {
        let mut f = Self::zero(dim);
        for (m, c) in terms {
            f.add_term(m, &c);
        }
        f
    }

    fn with_term(mut self, mask: u32, c: GaussRational) -> Self {
        self.add_term(mask, &c);
        self
    }

    pub fn add_term(&mut self, mask: u32, c: &GaussRational) {
        debug_assert!(mask < 1 << (2 * self.dim));
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_insert_with(GaussRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &GaussRational)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mask: u32) -> GaussRational {
        self.terms.get(&mask).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn full_mask(&self) -> u32 {
        (1u32 << (2 * self.dim)) - 1
    }

    /// Coefficient on `σ^{1…n} ∧ σ̄^{1…n}`.
    pub fn top_coefficient(&self) -> GaussRational {
        self.coefficient(self.full_mask())
    }

    pub fn holo_mask(&self) -> u32 {
        (1u32 << self.dim) - 1
    }

    pub fn bidegree_of(&self, mask: u32) -> (usize, usize) {
        let h = self.holo_mask();
        ((mask & h).count_ones() as usize, (mask & !h).count_ones() as usize)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|m| m.count_ones() as usize).collect();
        d.dedup();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut d: Vec<_> = self.terms.keys().map(|&m| self.bidegree_of(m)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_homogeneous_of(&self, degree: usize) -> bool {
        self.terms.keys().all(|m| m.count_ones() as usize == degree)
    }

    pub fn component(&self, p: usize, q: usize) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(&m, _)| self.bidegree_of(m) == (p, q))
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        }
    }

    pub fn of_degree(&self, k: usize) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(&m, _)| m.count_ones() as usize == k)
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        }
    }

    fn check_ambient(&self, o: &Self) -> Result<(), FormError> {
        if self.dim != o.dim {
            return Err(FormError::AmbientMismatch(self.dim, o.dim));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, FormError> {
        self.check_ambient(o)?;
        let mut out = self.clone();
        for (m, c) in o.terms() {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, FormError> {
        self.try_add(&o.neg())
    }

    /// Panics on ambient mismatch; use [`try_add`](Self::try_add) for untrusted input.
    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("ambient mismatch")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("ambient mismatch")
    }

    pub fn neg(&self) -> Self {
        self.scale(&-GaussRational::one())
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(&m, x)| (m, x * c)).collect(),
        }
    }

    pub fn wedge(&self, o: &Self) -> Result<Self, FormError> {
        self.check_ambient(o)?;
        let mut out = Self::zero(self.dim);
        for (&a, x) in &self.terms {
            for (&b, y) in &o.terms {
                let s = wedge_sign(a, b);
                if s != 0 {
                    out.add_term(a | b, &signed(&(x * y), s));
                }
            }
        }
        Ok(out)
    }

    /// Wedge where both sides are known to share an ambient algebra.
    pub fn w(&self, o: &Self) -> Self {
        self.wedge(o).expect("ambient mismatch")
    }

    pub fn power(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.dim, GaussRational::one()), |acc, _| acc.w(self))
    }

    /// Complex conjugation: `conj(c σ^I σ̄^J) = conj(c) (−1)^{|I||J|} σ^J σ̄^I`.
    pub fn conjugate(&self) -> Self {
        let n = self.dim;
        let h = self.holo_mask();
        let mut out = Self::zero(n);
        for (&m, c) in &self.terms {
            let holo = m & h;
            let anti = m >> n;
            let swapped = anti | (holo << n);
            let s = if holo.count_ones() * anti.count_ones() % 2 == 0 { 1 } else { -1 };
            out.add_term(swapped, &signed(&c.conj(), s));
        }
        out
    }

    pub fn is_real(&self) -> bool {
        &self.conjugate() == self
    }

    /// `Some(c)` when `self = c · reference`; `reference` must be nonzero.
    pub fn ratio_to(&self, reference: &Self) -> Option<GaussRational> {
        let (&m, r) = reference.terms.iter().next()?;
        let c = self.coefficient(m).checked_div(r).ok()?;
        (&reference.scale(&c) == self).then_some(c)
    }

    /// Indices `(holo, anti)` of a mask, zero-based.
    pub fn split_mask(&self, mask: u32) -> (Vec<usize>, Vec<usize>) {
        let n = self.dim;
        let holo = (0..n).filter(|&k| mask & (1 << k) != 0).collect();
        let anti = (0..n).filter(|&k| mask & (1 << (n + k)) != 0).collect();
        (holo, anti)
    }

    /// Text rendering, one term per line: `((p,q)) coeff σ^{I}σ̄^{J}`.
    pub fn render(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let name = |ks: &[usize]| ks.iter().map(|&k| labels[k].as_str()).collect::<Vec<_>>().join(",");
        self.terms
            .iter()
            .map(|(&m, c)| {
                let (p, q) = self.bidegree_of(m);
                let (h, a) = self.split_mask(m);
                let mut s = format!("(({p},{q})) {c}");
                if !h.is_empty() {
                    s += &format!(" σ^{{{}}}", name(&h));
                }
                if !a.is_empty() {
                    s += &format!(" σ̄^{{{}}}", name(&a));
                }
                s
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_terms(&self, labels: &[String]) -> Vec<FormTerm> {
        self.terms
            .iter()
            .map(|(&m, c)| {
                let (p, q) = self.bidegree_of(m);
                let (h, a) = self.split_mask(m);
                FormTerm {
                    bidegree: [p, q],
                    holo: h.iter().map(|&k| labels[k].clone()).collect(),
                    anti: a.iter().map(|&k| labels[k].clone()).collect(),
                    coeff: c.clone(),
                }
            })
            .collect()
    }
}

/// JSON term of a rendered form.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FormTerm {
    pub bidegree: [usize; 2],
    pub holo: Vec<String>,
    pub anti: Vec<String>,
    pub coeff: GaussRational,
}

impl fmt::Debug for InvariantForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (1..=self.dim).map(|k| k.to_string()).collect();
        write!(f, "{}", self.render(&labels))
    }
}

/// `ω = (i/2) Σ h_{mn} σ^m ∧ σ̄^n`.
pub fn kaehler_form(h: &HermitianForm) -> InvariantForm {
    let n = h.dim();
    let half_i = GaussRational::new(Rational::zero(), crate::scalar::rational(1, 2));
    let mut w = InvariantForm::zero(n);
    for m in 0..n {
        for k in 0..n {
            let c = h.entry(m, k);
            if !c.is_zero() {
                w = w.add(&InvariantForm::monomial(n, &[m], &[k], &half_i * c));
            }
        }
    }
    w
}

/// A nowhere-vanishing invariant holomorphic volume form `Ω = c · σ^1 ∧ … ∧ σ^n`,
/// dual to the trivialization `e_1 ∧ … ∧ e_n` of the anticanonical bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopFormSection {
    coefficient: GaussRational,
    norm_sq: Rational,
}

impl TopFormSection {
    pub fn new(coefficient: GaussRational, h: &HermitianForm) -> Result<Self, FormError> {
        if coefficient.is_zero() {
            return Err(FormError::VanishingSection);
        }
        let norm_sq = omega_norm_sq(&coefficient, h);
        Ok(Self { coefficient, norm_sq })
    }

    /// Accepts a caller-supplied cached norm; consumers re-check it against `h`.
    pub fn with_cached_norm(coefficient: GaussRational, norm_sq: Rational) -> Result<Self, FormError> {
        if coefficient.is_zero() {
            return Err(FormError::VanishingSection);
        }
        Ok(Self { coefficient, norm_sq })
    }

    pub fn coefficient(&self) -> &GaussRational {
        &self.coefficient
    }

    pub fn norm_sq(&self) -> &Rational {
        &self.norm_sq
    }

    pub fn is_consistent_with(&self, h: &HermitianForm) -> bool {
        self.norm_sq == omega_norm_sq(&self.coefficient, h)
    }

    pub fn as_form(&self, dim: usize) -> InvariantForm {
        InvariantForm::zero(dim).with_term((1 << dim) - 1, self.coefficient.clone())
    }
}

/// `‖Ω‖²` for `Ω = c·σ^{1…n}`: `|c|² / det h`. Constant over the manifold.
pub fn omega_norm_sq(coefficient: &GaussRational, h: &HermitianForm) -> Rational {
    coefficient.norm_sq() / h.det()
}

pub fn omega_norm(theta: &TopFormSection, h: &HermitianForm) -> Rational {
    omega_norm_sq(theta.coefficient(), h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::sl2_standard;

    fn g(s: &str) -> GaussRational {
        s.parse().unwrap()
    }

    #[test]
    fn wedge_parity() {
        let a = InvariantForm::sigma(3, 0);
        let b = InvariantForm::sigma(3, 1);
        assert!(a.w(&a).is_zero());
        assert_eq!(a.w(&b), b.w(&a).neg());
        let ab = InvariantForm::sigma_bar(3, 2);
        assert_eq!(a.w(&ab), ab.w(&a).neg());
        // even forms commute
        let two = a.w(&ab);
        let other = b.w(&InvariantForm::sigma_bar(3, 0));
        assert_eq!(two.w(&other), other.w(&two));
    }

    #[test]
    fn ambient_mismatch() {
        assert_eq!(
            InvariantForm::sigma(3, 0).wedge(&InvariantForm::sigma(2, 0)),
            Err(FormError::AmbientMismatch(3, 2))
        );
    }

    #[test]
    fn monomial_sorting_sign() {
        let f = InvariantForm::monomial(3, &[1, 0], &[], GaussRational::one());
        assert_eq!(f, InvariantForm::monomial(3, &[0, 1], &[], -GaussRational::one()));
        assert!(InvariantForm::monomial(3, &[1, 1], &[], GaussRational::one()).is_zero());
    }

    #[test]
    fn kaehler_form_examples() {
        let id = kaehler_form(&HermitianForm::identity(3));
        let half_i = g("1/2i");
        let expect = (0..3).fold(InvariantForm::zero(3), |acc, k| {
            acc.add(&InvariantForm::monomial(3, &[k], &[k], half_i.clone()))
        });
        assert_eq!(id, expect);
        assert!(id.is_real());
        let w = kaehler_form(&sl2_standard().hermitian);
        assert_eq!(w.coefficient(0b001_001), g("i"));
        assert_eq!(w.coefficient(0b010_010), g("1/2i"));
        assert_eq!(w.bidegrees(), vec![(1, 1)]);
        assert_eq!(w.conjugate(), w);
    }

    #[test]
    fn omega_powers_by_hand() {
        let w = kaehler_form(&sl2_standard().hermitian);
        // ω² = σ^{AB}σ̄^{AB} + σ^{AC}σ̄^{AC} + ½ σ^{BC}σ̄^{BC}
        let w2 = w.w(&w);
        let expect = InvariantForm::from_terms(
            3,
            [(0b011_011, g("1")), (0b101_101, g("1")), (0b110_110, g("1/2"))],
        );
        assert_eq!(w2, expect);
        // ω³ = (3/2)i σ^{ABC}σ̄^{ABC}; ω∧ω∧ω is nonzero on the volume monomial
        let w3 = w2.w(&w);
        assert_eq!(w3, InvariantForm::from_terms(3, [(0b111_111, g("3/2i"))]));
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(InvariantForm::sigma(3, 0).conjugate(), InvariantForm::sigma_bar(3, 0));
        let f = InvariantForm::from_terms(3, [(0b010_101, g("2-i")), (0b100_000, g("1/3i"))]);
        assert_eq!(f.conjugate().conjugate(), f);
    }

    #[test]
    fn omega_norm_examples() {
        let one = GaussRational::one();
        assert_eq!(omega_norm_sq(&one, &HermitianForm::identity(3)), crate::scalar::rational(1, 1));
        let h0 = sl2_standard().hermitian;
        let theta = TopFormSection::new(one.clone(), &h0).unwrap();
        assert_eq!(omega_norm(&theta, &h0), crate::scalar::rational(1, 2));
        let lam = crate::scalar::rational(3, 1);
        assert_eq!(
            omega_norm_sq(&one, &h0.scaled(&lam).unwrap()),
            crate::scalar::rational(1, 2) / (&lam * &lam * &lam)
        );
        assert_eq!(TopFormSection::new(GaussRational::zero(), &h0), Err(FormError::VanishingSection));
    }

    #[test]
    fn ratio_detection() {
        let w = kaehler_form(&sl2_standard().hermitian);
        let w2 = w.w(&w);
        assert_eq!(w2.scale(&g("2-3i")).ratio_to(&w2), Some(g("2-3i")));
        assert_eq!(InvariantForm::zero(3).ratio_to(&w2), Some(GaussRational::zero()));
        let partial = InvariantForm::from_terms(3, [(0b011_011, g("1"))]);
        assert_eq!(partial.ratio_to(&w2), None);
    }
}
