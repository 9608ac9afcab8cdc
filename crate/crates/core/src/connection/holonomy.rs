use num_traits::Zero;

use super::{CurvatureTensor, InvariantConnection};
use crate::lie::HermitianForm;
use crate::linalg::{CMatrix, RealSpan};
use crate::scalar::GaussRational;

/// A real Lie algebra of complex `rank × rank` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolonomyAlgebra {
    pub basis: Vec<CMatrix>,
}

impl HolonomyAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }
}

/// Real tangent directions `x_i = e_i + ē_i`, `y_i = i(e_i − ē_i)` in frame coordinates.
pub fn real_directions(n: usize) -> Vec<Vec<GaussRational>> {
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut x = vec![GaussRational::zero(); 2 * n];
        x[i] = GaussRational::from_int(1);
        x[i + n] = GaussRational::from_int(1);
        out.push(x);
        let mut y = vec![GaussRational::zero(); 2 * n];
        y[i] = GaussRational::i();
        y[i + n] = -GaussRational::i();
        out.push(y);
    }
    out
}

/// `R(X, Y)` for frame-coordinate vectors `X`, `Y`.
pub fn curvature_at(r: &CurvatureTensor, x: &[GaussRational], y: &[GaussRational]) -> CMatrix {
    let mut out = CMatrix::zeros(r.rank(), r.rank());
    for (mask, m) in r.terms() {
        let a = mask.trailing_zeros() as usize;
        let b = (mask & (mask - 1)).trailing_zeros() as usize;
        let c = &x[a] * &y[b] - &x[b] * &y[a];
        if !c.is_zero() {
            out = out.add(&m.scale(&c));
        }
    }
    out
}

pub fn connection_at(conn: &InvariantConnection, x: &[GaussRational]) -> CMatrix {
    let mut out = CMatrix::zeros(conn.rank(), conn.rank());
    for (a, c) in x.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&conn.gamma(a).scale(c));
        }
    }
    out
}

/// Smallest real matrix Lie algebra containing all `R(X, Y)` for real
/// `X, Y` and stable under `[Γ_X, ·]`.
pub fn holonomy_algebra(conn: &InvariantConnection, r: &CurvatureTensor) -> HolonomyAlgebra {
    let dirs = real_directions(conn.dim());
    let gammas: Vec<CMatrix> = dirs.iter().map(|x| connection_at(conn, x)).collect();
    let mut span = RealSpan::new();
    let mut basis: Vec<CMatrix> = Vec::new();
    let mut queue: Vec<CMatrix> = Vec::new();
    for (p, x) in dirs.iter().enumerate() {
        for y in &dirs[p + 1..] {
            queue.push(curvature_at(r, x, y));
        }
    }
    while let Some(m) = queue.pop() {
        if !span.insert(&m.realify()) {
            continue;
        }
        for gx in &gammas {
            queue.push(gx.commutator(&m));
        }
        for b in &basis {
            queue.push(b.commutator(&m));
        }
        basis.push(m);
    }
    HolonomyAlgebra { basis }
}

/// Every basis element is `h`-skew (`Mᵀh + h·conj(M) = 0`) and trace-free.
pub fn su3_containment(hol: &HolonomyAlgebra, h: &HermitianForm) -> bool {
    hol.basis.iter().all(|m| is_h_skew(m, h) && m.trace().is_zero())
}

pub fn is_h_skew(m: &CMatrix, h: &HermitianForm) -> bool {
    let hm = h.matrix();
    m.transpose().mul(hm).add(&hm.mul(&m.conj())).is_zero()
}
