//! Chevalley–Eilenberg differential on invariant forms.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{wedge_sign, InvariantForm};
use crate::lie::LieAlgebra;
use crate::scalar::GaussRational;

/// Sign of the Maurer–Cartan equation. With `RightInvariant`,
/// `dσ^k = Σ_{i<j} c^k_{ij} σ^i ∧ σ^j`; `Flipped` negates it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    #[default]
    RightInvariant,
    Flipped,
}

impl SignConvention {
    pub fn sign(self) -> i64 {
        match self {
            SignConvention::RightInvariant => 1,
            SignConvention::Flipped => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SignConvention::RightInvariant => "default",
            SignConvention::Flipped => "flipped",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    Full,
    Holo,
    Anti,
}

#[derive(Clone, Debug)]
pub struct ChevalleyEilenberg {
    dim: usize,
    convention: SignConvention,
    /// `d` of each coframe element, indexed by bit.
    generators: Vec<Vec<(u32, GaussRational)>>,
}

impl ChevalleyEilenberg {
    pub fn new(g: &LieAlgebra, convention: SignConvention) -> Self {
        let n = g.dim();
        let s = GaussRational::from_int(convention.sign());
        let mut generators = Vec::with_capacity(2 * n);
        for k in 0..n {
            let mut terms = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let c = g.c(i, j, k);
                    if !c.is_zero() {
                        terms.push(((1u32 << i) | (1 << j), c * &s));
                    }
                }
            }
            generators.push(terms);
        }
        for k in 0..n {
            let conj = generators[k].iter().map(|(m, c)| (m << n, c.conj())).collect();
            generators.push(conj);
        }
        Self { dim: n, convention, generators }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn convention(&self) -> SignConvention {
        self.convention
    }

    /// `d` of the coframe element at `bit` (`σ^{k}` for `bit < n`, else `σ̄^{bit−n}`).
    pub fn d_generator(&self, bit: usize) -> InvariantForm {
        InvariantForm::from_terms(self.dim, self.generators[bit].iter().cloned())
    }

    fn apply(&self, f: &InvariantForm, part: Part) -> InvariantForm {
        assert_eq!(f.dim(), self.dim, "ambient mismatch");
        let n = self.dim;
        let mut out = InvariantForm::zero(n);
        for (mask, c) in f.terms() {
            let mut rest = mask;
            while rest != 0 {
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let holo = bit < n;
                if (part == Part::Holo && !holo) || (part == Part::Anti && holo) {
                    continue;
                }
                let below = mask & ((1u32 << bit) - 1);
                let above = mask & !((1u32 << (bit + 1)) - 1);
                let lead = if below.count_ones() % 2 == 0 { 1 } else { -1 };
                for (m2, dc) in &self.generators[bit] {
                    let s1 = wedge_sign(below, *m2);
                    if s1 == 0 {
                        continue;
                    }
                    let s2 = wedge_sign(below | m2, above);
                    if s2 == 0 {
                        continue;
                    }
                    let v = c * dc;
                    let v = if lead * s1 * s2 < 0 { -v } else { v };
                    out.add_term(below | m2 | above, &v);
                }
            }
        }
        out
    }

    pub fn d(&self, f: &InvariantForm) -> InvariantForm {
        self.apply(f, Part::Full)
    }

    pub fn del(&self, f: &InvariantForm) -> InvariantForm {
        self.apply(f, Part::Holo)
    }

    pub fn delbar(&self, f: &InvariantForm) -> InvariantForm {
        self.apply(f, Part::Anti)
    }
}
