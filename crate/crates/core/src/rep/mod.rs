//! `su(2)`-module calculus: functorial constructions, invariants and
//! Casimir decomposition, all over ℚ(i).

mod recipe;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exec::Exec;
use crate::forms::InvariantForm;
use crate::lie::{LieAlgebra, LieError};
use crate::linalg::CMatrix;
use crate::scalar::GaussRational;

pub use recipe::Recipe;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("malformed recipe: {0}")]
    MalformedRecipe(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("expected a one-dimensional invariant subspace, found dimension {0}")]
    NotOneDimensional(usize),
    #[error("vector of length {got} does not fit a module of dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the Casimir operator does not decompose the module")]
    NotSemisimple,
}

/// A finite-dimensional module with the actions of `u1, u2, u3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpace {
    pub recipe: Recipe,
    pub actions: [CMatrix; 3],
}

fn v0_actions() -> [CMatrix; 3] {
    let i = GaussRational::i();
    let z = GaussRational::zero();
    let one = GaussRational::one();
    [
        CMatrix::from_rows(vec![vec![i.clone(), z.clone()], vec![z.clone(), -i.clone()]]),
        CMatrix::from_rows(vec![vec![z.clone(), one.clone()], vec![-one, z.clone()]]),
        CMatrix::from_rows(vec![vec![z.clone(), i.clone()], vec![i, z]]),
    ]
}

/// Sorted `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Nondecreasing `k`-tuples over `0..n` in lexicographic order.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn wedge_action(m: &CMatrix, k: usize) -> CMatrix {
    let n = m.rows();
    let basis = subsets(n, k);
    let index: BTreeMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut out = CMatrix::zeros(basis.len(), basis.len());
    for (col, s) in basis.iter().enumerate() {
        for p in 0..k {
            for j in 0..n {
                let c = &m[(j, s[p])];
                if c.is_zero() || (s.contains(&j) && j != s[p]) {
                    continue;
                }
                let mut t = s.clone();
                t[p] = j;
                // sort with sign
                let mut sign = 1;
                for a in 0..k {
                    for b in 0..k - 1 - a {
                        if t[b] > t[b + 1] {
                            t.swap(b, b + 1);
                            sign = -sign;
                        }
                    }
                }
                let row = index[&t];
                let v = if sign < 0 { -c } else { c.clone() };
                out[(row, col)] += &v;
            }
        }
    }
    out
}

fn sym_action(m: &CMatrix, k: usize) -> CMatrix {
    let n = m.rows();
    let basis = multisets(n, k);
    let index: BTreeMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut out = CMatrix::zeros(basis.len(), basis.len());
    for (col, s) in basis.iter().enumerate() {
        for p in 0..k {
            for j in 0..n {
                let c = &m[(j, s[p])];
                if c.is_zero() {
                    continue;
                }
                let mut t = s.clone();
                t[p] = j;
                t.sort_unstable();
                out[(index[&t], col)] += c;
            }
        }
    }
    out
}

fn map3(a: &[CMatrix; 3], f: impl Fn(&CMatrix) -> CMatrix) -> [CMatrix; 3] {
    [f(&a[0]), f(&a[1]), f(&a[2])]
}

impl ModuleSpace {
    pub fn build(recipe: &Recipe, g: &LieAlgebra) -> Result<Self, RepError> {
        let gens = g.su2_generators()?;
        let ad = [g.ad_matrix(&gens[0])?, g.ad_matrix(&gens[1])?, g.ad_matrix(&gens[2])?];
        Ok(Self { recipe: recipe.clone(), actions: Self::actions(recipe, &ad) })
    }

    fn actions(r: &Recipe, ad: &[CMatrix; 3]) -> [CMatrix; 3] {
        match r {
            Recipe::V0 => v0_actions(),
            Recipe::Adjoint => ad.clone(),
            Recipe::Trivial => map3(ad, |_| CMatrix::zeros(1, 1)),
            Recipe::Conj(x) => map3(&Self::actions(x, ad), CMatrix::conj),
            Recipe::Dual(x) => map3(&Self::actions(x, ad), |m| m.transpose().neg()),
            Recipe::Tensor(a, b) => {
                let (pa, pb) = (Self::actions(a, ad), Self::actions(b, ad));
                let (ia, ib) = (CMatrix::identity(pa[0].rows()), CMatrix::identity(pb[0].rows()));
                [0, 1, 2].map(|k| pa[k].kron(&ib).add(&ia.kron(&pb[k])))
            }
            Recipe::Sum(a, b) => {
                let (pa, pb) = (Self::actions(a, ad), Self::actions(b, ad));
                [0, 1, 2].map(|k| pa[k].block_diag(&pb[k]))
            }
            Recipe::Wedge(k, x) => map3(&Self::actions(x, ad), |m| wedge_action(m, *k)),
            Recipe::Sym(k, x) => map3(&Self::actions(x, ad), |m| sym_action(m, *k)),
            Recipe::End(x) => Self::actions(&Recipe::Tensor(x.clone(), Box::new(Recipe::Dual(x.clone()))), ad),
        }
    }

    pub fn dim(&self) -> usize {
        self.actions[0].rows()
    }

    /// `[ρ(u_a), ρ(u_b)] = 2 ε_{abc} ρ(u_c)` for all pairs.
    pub fn satisfies_relations(&self) -> bool {
        let two = GaussRational::from_int(2);
        let a = &self.actions;
        a[0].commutator(&a[1]) == a[2].scale(&two)
            && a[1].commutator(&a[2]) == a[0].scale(&two)
            && a[2].commutator(&a[0]) == a[1].scale(&two)
    }

    /// `C = −Σ ρ(u_a)²`, acting on the irreducible of highest weight `m` as `m(m+2)`.
    pub fn casimir(&self) -> CMatrix {
        let mut c = CMatrix::zeros(self.dim(), self.dim());
        for m in &self.actions {
            c = c.sub(&m.mul(m));
        }
        c
    }

    /// The weight operator `−i·ρ(u1)`.
    pub fn weight_operator(&self) -> CMatrix {
        self.actions[0].scale(&-GaussRational::i())
    }

    pub fn invariant_subspace(&self) -> Vec<Vec<GaussRational>> {
        self.invariant_subspace_with(Exec::default())
    }

    /// Exact joint kernel, each basis vector scaled so its first nonzero entry is 1.
    pub fn invariant_subspace_with(&self, exec: Exec) -> Vec<Vec<GaussRational>> {
        if self.dim() == 0 {
            return Vec::new();
        }
        let stacked = CMatrix::vstack(&self.actions);
        let mut basis = stacked.kernel_with(exec);
        for v in basis.iter_mut() {
            if let Some(p) = v.iter().position(|x| !x.is_zero()) {
                let inv = v[p].inv().expect("nonzero pivot");
                for x in v.iter_mut() {
                    *x = &*x * &inv;
                }
            }
        }
        basis
    }

    pub fn decompose(&self) -> Result<Decomposition, RepError> {
        self.decompose_with(Exec::default())
    }

    pub fn decompose_with(&self, exec: Exec) -> Result<Decomposition, RepError> {
        let n = self.dim();
        let cas = self.casimir();
        let counts = exec.map_range(n, |m| {
            let lambda = GaussRational::from_int((m * (m + 2)) as i64);
            cas.sub(&CMatrix::scalar(n, lambda)).nullity()
        });
        let mut irreps = BTreeMap::new();
        let mut total = 0;
        for (m, &eig) in counts.iter().enumerate() {
            if eig == 0 {
                continue;
            }
            if eig % (m + 1) != 0 {
                return Err(RepError::NotSemisimple);
            }
            irreps.insert(m, eig / (m + 1));
            total += eig;
        }
        if total != n {
            return Err(RepError::NotSemisimple);
        }
        let d = Decomposition { module: self.recipe.to_string(), dim: n, irreps };
        if d != self.decompose_by_weights(exec)? {
            return Err(RepError::NotSemisimple);
        }
        Ok(d)
    }

    /// Multiplicities from weight counting: `mult(m) = #wt(m) − #wt(m+2)`.
    pub fn decompose_by_weights(&self, exec: Exec) -> Result<Decomposition, RepError> {
        let n = self.dim();
        let hw = self.weight_operator();
        let weights: Vec<i64> = (-(n as i64)..=n as i64).collect();
        let counts = exec.map(&weights, |&w| hw.sub(&CMatrix::scalar(n, GaussRational::from_int(w))).nullity());
        let count = |w: i64| -> usize {
            weights.iter().position(|&x| x == w).map_or(0, |p| counts[p])
        };
        if counts.iter().sum::<usize>() != n {
            return Err(RepError::NotSemisimple);
        }
        let mut irreps = BTreeMap::new();
        for m in 0..n as i64 {
            let (a, b) = (count(m), count(m + 2));
            if a < b {
                return Err(RepError::NotSemisimple);
            }
            if a > b {
                irreps.insert(m as usize, a - b);
            }
        }
        Ok(Decomposition { module: self.recipe.to_string(), dim: n, irreps })
    }

    /// Whether `candidate` lies on the (one-dimensional) invariant line, and
    /// the scalar relative to the normalized basis vector.
    pub fn locate_invariant(&self, candidate: &[GaussRational]) -> Result<Option<GaussRational>, RepError> {
        if candidate.len() != self.dim() {
            return Err(RepError::DimensionMismatch { expected: self.dim(), got: candidate.len() });
        }
        let inv = self.invariant_subspace();
        if inv.len() != 1 {
            return Err(RepError::NotOneDimensional(inv.len()));
        }
        let v = &inv[0];
        let p = v.iter().position(|x| !x.is_zero()).expect("basis vector is nonzero");
        let c = candidate[p].clone();
        let ok = v.iter().zip(candidate).all(|(x, y)| &(x * &c) == y);
        Ok(ok.then_some(c))
    }
}

/// Highest-weight label `m` (irreducible of dimension `m + 1`) ↦ multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub module: String,
    pub dim: usize,
    pub irreps: BTreeMap<usize, usize>,
}

impl Decomposition {
    pub fn invariant_dim(&self) -> usize {
        self.irreps.get(&0).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "module": self.module,
            "invariant_dim": self.invariant_dim(),
            "irreps": self.irreps.iter().map(|(k, v)| (k.to_string(), serde_json::json!(v))).collect::<serde_json::Map<_, _>>(),
        })
    }
}

/// Coordinates of a homogeneous `k`-form in the basis of `∧^k (g ⊕ ḡ)*`.
pub fn form_to_vector(f: &InvariantForm, k: usize) -> Vec<GaussRational> {
    subsets(2 * f.dim(), k)
        .iter()
        .map(|s| f.coefficient(s.iter().fold(0u32, |m, &b| m | (1 << b))))
        .collect()
}

pub fn vector_to_form(dim: usize, k: usize, v: &[GaussRational]) -> InvariantForm {
    InvariantForm::from_terms(
        dim,
        subsets(2 * dim, k).iter().zip(v).map(|(s, c)| (s.iter().fold(0u32, |m, &b| m | (1 << b)), c.clone())),
    )
}
