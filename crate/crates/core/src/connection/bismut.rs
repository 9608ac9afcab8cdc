use num_traits::{One, Zero};

use super::{compatible_partner, torsion, ConnectionError, ConnectionKind, InvariantConnection};
use crate::exec::Exec;
use crate::forms::{InvariantForm, SignConvention};
use crate::lie::{HermitianForm, LieAlgebra};
use crate::linalg::{CMatrix, QMatrix};
use crate::scalar::{GaussRational, Rational};

/// Complex-bilinear metric on the frame: `g(e_k, ē_l) = h_{kl}/2`.
fn metric_c(h: &HermitianForm, a: usize, b: usize) -> GaussRational {
    let n = h.dim();
    let half = crate::scalar::rational(1, 2);
    match (a < n, b < n) {
        (true, false) => h.entry(a, b - n).scale(&half),
        (false, true) => h.entry(b, a - n).scale(&half),
        _ => GaussRational::zero(),
    }
}

/// `τ(a, b, c) = g(T(E_a, E_b), E_c)`, flattened.
fn lowered_torsion(g: &LieAlgebra, h: &HermitianForm, conn: &InvariantConnection) -> Vec<GaussRational> {
    let t = torsion(g, conn);
    let m = 2 * g.dim();
    let mut out = Vec::with_capacity(m * m * m);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let mut acc = GaussRational::zero();
                for k in 0..m {
                    let v = t.value(a, b, k);
                    if !v.is_zero() {
                        acc += &(v * &metric_c(h, k, c));
                    }
                }
                out.push(acc);
            }
        }
    }
    out
}

/// The torsion 3-form `Σ_{a<b<c} τ(a,b,c) θ^a ∧ θ^b ∧ θ^c`; meaningful when
/// `τ` is totally antisymmetric.
pub fn torsion_three_form(g: &LieAlgebra, h: &HermitianForm, conn: &InvariantConnection) -> InvariantForm {
    let n = g.dim();
    let m = 2 * n;
    let tau = lowered_torsion(g, h, conn);
    let mut f = InvariantForm::zero(n);
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                f.add_term((1 << a) | (1 << b) | (1 << c), &tau[(a * m + b) * m + c]);
            }
        }
    }
    f
}

fn skew_defect(tau: &[GaussRational], m: usize) -> Vec<GaussRational> {
    let mut out = Vec::new();
    for a in 0..m {
        for b in 0..m {
            for c in b..m {
                out.push(&tau[(a * m + b) * m + c] + &tau[(a * m + c) * m + b]);
            }
        }
    }
    out
}

fn connection_from(
    h: &HermitianForm,
    convention: SignConvention,
    u: &[Rational],
    kind: ConnectionKind,
) -> Result<InvariantConnection, ConnectionError> {
    let n = h.dim();
    let cube = n * n * n;
    let g10: Vec<CMatrix> = (0..n)
        .map(|i| {
            CMatrix::from_fn(n, n, |k, j| {
                let p = (i * n + k) * n + j;
                GaussRational::new(u[p].clone(), u[cube + p].clone())
            })
        })
        .collect();
    let g01 = g10.iter().map(|m| compatible_partner(h, m)).collect::<Result<_, _>>()?;
    InvariantConnection::new(convention, g10, g01, kind)
}

/// The unique `h`-compatible connection preserving the complex structure
/// whose lowered torsion is totally antisymmetric, found by an exact solve.
pub fn bismut_connection(
    g: &LieAlgebra,
    h: &HermitianForm,
    convention: SignConvention,
) -> Result<InvariantConnection, ConnectionError> {
    bismut_connection_with(g, h, convention, Exec::default())
}

pub fn bismut_connection_with(
    g: &LieAlgebra,
    h: &HermitianForm,
    convention: SignConvention,
    exec: Exec,
) -> Result<InvariantConnection, ConnectionError> {
    let n = g.dim();
    let m = 2 * n;
    let unknowns = 2 * n * n * n;
    let residual = |u: &[Rational]| -> Result<Vec<Rational>, ConnectionError> {
        let conn = connection_from(h, convention, u, ConnectionKind::Bismut)?;
        let defect = skew_defect(&lowered_torsion(g, h, &conn), m);
        Ok(defect.iter().map(|z| z.re().clone()).chain(defect.iter().map(|z| z.im().clone())).collect())
    };
    let origin = vec![Rational::zero(); unknowns];
    let offset = residual(&origin)?;
    let columns = exec.map_range(unknowns, |p| {
        let mut u = origin.clone();
        u[p] = Rational::one();
        residual(&u).map(|r| r.iter().zip(&offset).map(|(x, c)| x - c).collect::<Vec<_>>())
    });
    let columns = columns.into_iter().collect::<Result<Vec<_>, _>>()?;
    let rows = offset.len();
    let lin = QMatrix::from_fn(rows, unknowns, |r, c| columns[c][r].clone());
    let nullity = lin.nullity();
    if nullity != 0 {
        return Err(ConnectionError::NotUnique(nullity));
    }
    let rhs: Vec<Rational> = offset.iter().map(|x| -x).collect();
    let u = lin.solve(&rhs).ok_or(ConnectionError::Unsolvable)?;
    connection_from(h, convention, &u, ConnectionKind::Bismut)
}

/// `(1 − t)·Chern + t·Bismut`.
pub fn gauduchon_family(
    g: &LieAlgebra,
    h: &HermitianForm,
    convention: SignConvention,
    t: &Rational,
) -> Result<InvariantConnection, ConnectionError> {
    let bismut = bismut_connection(g, h, convention)?;
    let chern = super::chern_connection(g, convention);
    let t_c = GaussRational::from_real(t.clone());
    let one_minus = GaussRational::one() - &t_c;
    Ok(chern.lincomb(&one_minus, &bismut, &t_c, ConnectionKind::Gauduchon(t.clone())))
}
