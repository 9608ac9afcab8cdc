//! Unitary representations of finitely presented groups and the flat
//! bundles they define.

use std::collections::BTreeMap;
use std::io::Read;

use nalgebra::{Complex, DMatrix};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Exec;
use crate::forms::InvariantForm;
use crate::linalg::CMatrix;
use crate::scalar::{GaussRational, Rational};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Singular values in `(tol, GAP_FACTOR·tol]` make a rank decision ambiguous.
pub const GAP_FACTOR: f64 = 1e3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BundleError {
    #[error("rank must be at least 2, got {0}")]
    InvalidRank(usize),
    #[error("dimension mismatch: expected {expected}×{expected}, got {rows}×{cols} for generator {generator:?}")]
    DimensionMismatch { generator: String, expected: usize, rows: usize, cols: usize },
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("representation and presentation disagree: {0}")]
    GeneratorMismatch(String),
    #[error("cannot decide the rank: singular values {ambiguous:?} fall between {tol:e} and {upper:e}")]
    IndeterminateRank { ambiguous: Vec<f64>, tol: f64, upper: f64 },
    #[error("malformed descriptor at `{path}`: {message}")]
    Descriptor { path: String, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Float,
}

/// Generators are single lowercase letters; capitals denote inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<char>,
    relators: Vec<String>,
}

impl GroupPresentation {
    pub fn new(generators: &[char], relators: &[&str]) -> Result<Self, BundleError> {
        let mut seen = Vec::new();
        for &g in generators {
            if !g.is_ascii_lowercase() {
                return Err(BundleError::Presentation(format!("generator {g:?} is not a lowercase letter")));
            }
            if seen.contains(&g) {
                return Err(BundleError::Presentation(format!("generator {g:?} declared twice")));
            }
            seen.push(g);
        }
        for w in relators {
            if w.is_empty() {
                return Err(BundleError::Presentation("empty relator".into()));
            }
            if let Some(c) = w.chars().find(|c| !generators.contains(&c.to_ascii_lowercase())) {
                return Err(BundleError::Presentation(format!("relator {w:?} uses undeclared symbol {c:?}")));
            }
        }
        Ok(Self { generators: generators.to_vec(), relators: relators.iter().map(|s| s.to_string()).collect() })
    }

    pub fn free(generators: &[char]) -> Result<Self, BundleError> {
        Self::new(generators, &[])
    }

    pub fn generators(&self) -> &[char] {
        &self.generators
    }

    pub fn relators(&self) -> &[String] {
        &self.relators
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }
}

pub type FMatrix = DMatrix<Complex<f64>>;

#[derive(Clone, Debug, PartialEq)]
pub enum RepMatrices {
    Exact(Vec<CMatrix>),
    Float(Vec<FMatrix>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryRep {
    n: usize,
    names: Vec<char>,
    matrices: RepMatrices,
    presentation: GroupPresentation,
}

fn to_float(m: &CMatrix) -> FMatrix {
    FMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        let (re, im) = m[(r, c)].to_f64_pair();
        Complex::new(re, im)
    })
}

impl UnitaryRep {
    pub fn exact(presentation: GroupPresentation, matrices: Vec<CMatrix>) -> Result<Self, BundleError> {
        let n = matrices.first().map_or(0, CMatrix::rows);
        Self::check_shapes(&presentation, matrices.iter().map(|m| (m.rows(), m.cols())), n)?;
        Ok(Self { n, names: presentation.generators.clone(), matrices: RepMatrices::Exact(matrices), presentation })
    }

    pub fn float(presentation: GroupPresentation, matrices: Vec<FMatrix>) -> Result<Self, BundleError> {
        let n = matrices.first().map_or(0, FMatrix::nrows);
        Self::check_shapes(&presentation, matrices.iter().map(|m| (m.nrows(), m.ncols())), n)?;
        Ok(Self { n, names: presentation.generators.clone(), matrices: RepMatrices::Float(matrices), presentation })
    }

    fn check_shapes(
        p: &GroupPresentation,
        shapes: impl ExactSizeIterator<Item = (usize, usize)>,
        n: usize,
    ) -> Result<(), BundleError> {
        if shapes.len() != p.generators.len() {
            return Err(BundleError::GeneratorMismatch(format!(
                "{} matrices for {} generators",
                shapes.len(),
                p.generators.len()
            )));
        }
        for ((rows, cols), g) in shapes.zip(&p.generators) {
            if rows != n || cols != n {
                return Err(BundleError::DimensionMismatch { generator: g.to_string(), expected: n, rows, cols });
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        match self.matrices {
            RepMatrices::Exact(_) => Mode::Exact,
            RepMatrices::Float(_) => Mode::Float,
        }
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn matrices(&self) -> &RepMatrices {
        &self.matrices
    }

    pub fn float_matrices(&self) -> Vec<FMatrix> {
        match &self.matrices {
            RepMatrices::Exact(ms) => ms.iter().map(to_float).collect(),
            RepMatrices::Float(ms) => ms.clone(),
        }
    }

    /// `ρ₁ ⊕ ρ₂` over the same presentation.
    pub fn direct_sum(&self, o: &Self) -> Result<Self, BundleError> {
        if self.presentation != o.presentation {
            return Err(BundleError::GeneratorMismatch("direct sum needs one presentation".into()));
        }
        match (&self.matrices, &o.matrices) {
            (RepMatrices::Exact(a), RepMatrices::Exact(b)) => {
                Self::exact(self.presentation.clone(), a.iter().zip(b).map(|(x, y)| x.block_diag(y)).collect())
            }
            _ => {
                let (a, b) = (self.float_matrices(), o.float_matrices());
                let sum = a
                    .iter()
                    .zip(&b)
                    .map(|(x, y)| {
                        let (p, q) = (x.nrows(), y.nrows());
                        let mut m = FMatrix::zeros(p + q, p + q);
                        m.view_mut((0, 0), (p, p)).copy_from(x);
                        m.view_mut((p, p), (q, q)).copy_from(y);
                        m
                    })
                    .collect();
                Self::float(self.presentation.clone(), sum)
            }
        }
    }

    fn index_of(&self, c: char) -> usize {
        self.names.iter().position(|&g| g == c.to_ascii_lowercase()).expect("validated word")
    }

    /// Matrix of a word, multiplied left to right.
    pub fn evaluate_exact(&self, word: &str) -> Option<CMatrix> {
        let RepMatrices::Exact(ms) = &self.matrices else { return None };
        let mut acc = CMatrix::identity(self.n);
        for c in word.chars() {
            let m = &ms[self.index_of(c)];
            let m = if c.is_ascii_uppercase() { m.adjoint() } else { m.clone() };
            acc = acc.mul(&m);
        }
        Some(acc)
    }

    /// Inverses are taken as adjoints, valid for unitary generators.
    pub fn evaluate_float(&self, word: &str) -> FMatrix {
        let ms = self.float_matrices();
        let mut acc = FMatrix::identity(self.n, self.n);
        for c in word.chars() {
            let m = &ms[self.index_of(c)];
            acc = if c.is_ascii_uppercase() { acc * m.adjoint() } else { acc * m };
        }
        acc
    }
}

fn max_abs(m: &FMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualEntry {
    pub name: String,
    pub residual: f64,
    pub exact_zero: Option<bool>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub mode: Mode,
    pub tolerance: f64,
    pub entries: Vec<ResidualEntry>,
    pub pass: bool,
}

fn report(mode: Mode, tolerance: f64, entries: Vec<ResidualEntry>) -> CheckReport {
    let pass = entries.iter().all(|e| e.pass);
    CheckReport { mode, tolerance, entries, pass }
}

/// `‖U U† − I‖_max` per generator; exact mode requires an exact zero.
pub fn check_unitary(rep: &UnitaryRep, eps: f64) -> CheckReport {
    let n = rep.n;
    let names: Vec<char> = rep.names.clone();
    let entries = match &rep.matrices {
        RepMatrices::Exact(ms) => Exec::default().map_range(ms.len(), |k| {
            let d = ms[k].mul(&ms[k].adjoint()).sub(&CMatrix::identity(n));
            ResidualEntry {
                name: names[k].to_string(),
                residual: max_abs(&to_float(&d)),
                exact_zero: Some(d.is_zero()),
                pass: d.is_zero(),
            }
        }),
        RepMatrices::Float(ms) => Exec::default().map_range(ms.len(), |k| {
            let r = max_abs(&(&ms[k] * ms[k].adjoint() - FMatrix::identity(n, n)));
            ResidualEntry { name: names[k].to_string(), residual: r, exact_zero: None, pass: r <= eps }
        }),
    };
    report(rep.mode(), eps, entries)
}

/// Each relator's matrix compared with the identity.
pub fn check_relations(rep: &UnitaryRep, eps: f64) -> CheckReport {
    let n = rep.n;
    let words = rep.presentation.relators.clone();
    let entries = Exec::default().map(&words, |w| match rep.evaluate_exact(w) {
        Some(m) => {
            let d = m.sub(&CMatrix::identity(n));
            ResidualEntry { name: w.clone(), residual: max_abs(&to_float(&d)), exact_zero: Some(d.is_zero()), pass: d.is_zero() }
        }
        None => {
            let r = max_abs(&(rep.evaluate_float(w) - FMatrix::identity(n, n)));
            ResidualEntry { name: w.clone(), residual: r, exact_zero: None, pass: r <= eps }
        }
    });
    report(rep.mode(), eps, entries)
}

/// Determinant-normalized clock and shift matrices in `SU(n)` on the free
/// group `⟨a, b⟩`; their commutator is `e^{2πi/n}·Id`. Exact only for `n = 2`.
pub fn clock_shift(n: usize) -> Result<UnitaryRep, BundleError> {
    if n < 2 {
        return Err(BundleError::InvalidRank(n));
    }
    let pres = GroupPresentation::free(&['a', 'b'])?;
    if n == 2 {
        let i = GaussRational::i();
        let z = GaussRational::zero();
        let clock = CMatrix::from_rows(vec![vec![i.clone(), z.clone()], vec![z.clone(), -i.clone()]]);
        let shift = CMatrix::from_rows(vec![vec![z.clone(), i.clone()], vec![i, z]]);
        return UnitaryRep::exact(pres, vec![clock, shift]);
    }
    let nf = n as f64;
    let mu = Complex::from_polar(1.0, std::f64::consts::PI * (nf - 1.0) / nf);
    let clock = FMatrix::from_fn(n, n, |r, c| {
        if r == c {
            mu * Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * r as f64 / nf)
        } else {
            Complex::zero()
        }
    });
    let shift = FMatrix::from_fn(n, n, |r, c| if r == (c + 1) % n { mu } else { Complex::zero() });
    UnitaryRep::float(pres, vec![clock, shift])
}

#[derive(Clone, Debug, PartialEq)]
pub enum CommutantBasis {
    Exact(Vec<CMatrix>),
    Float(Vec<FMatrix>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Commutant {
    pub dim: usize,
    pub basis: CommutantBasis,
    /// Singular values of the float system, ascending; empty in exact mode.
    pub singular_values: Vec<f64>,
}

/// Solutions of `X ρ(g) = ρ(g) X` for all generators.
pub fn commutant(rep: &UnitaryRep, eps: f64) -> Result<Commutant, BundleError> {
    let n = rep.n;
    let nn = n * n;
    match &rep.matrices {
        RepMatrices::Exact(ms) => {
            // unknown X[p][q] at column p·n + q
            let blocks: Vec<CMatrix> = ms
                .iter()
                .map(|u| {
                    CMatrix::from_fn(nn, nn, |row, col| {
                        let (i, j) = (row / n, row % n);
                        let (p, q) = (col / n, col % n);
                        let mut v = GaussRational::zero();
                        if p == i {
                            v += &u[(q, j)];
                        }
                        if q == j {
                            v -= &u[(i, p)];
                        }
                        v
                    })
                })
                .collect();
            let system = if blocks.is_empty() { CMatrix::zeros(0, nn) } else { CMatrix::vstack(&blocks) };
            let kernel = if blocks.is_empty() {
                (0..nn)
                    .map(|k| (0..nn).map(|c| if c == k { GaussRational::one() } else { GaussRational::zero() }).collect())
                    .collect()
            } else {
                system.kernel()
            };
            let basis: Vec<CMatrix> = kernel.into_iter().map(|v| CMatrix::from_vec(n, n, v)).collect();
            Ok(Commutant { dim: basis.len(), basis: CommutantBasis::Exact(basis), singular_values: Vec::new() })
        }
        RepMatrices::Float(ms) => {
            let rows = ms.len().max(1) * nn;
            let mut sys = FMatrix::zeros(rows, nn);
            for (b, u) in ms.iter().enumerate() {
                for i in 0..n {
                    for j in 0..n {
                        let row = b * nn + i * n + j;
                        for q in 0..n {
                            sys[(row, i * n + q)] += u[(q, j)];
                        }
                        for p in 0..n {
                            sys[(row, p * n + j)] -= u[(i, p)];
                        }
                    }
                }
            }
            // pad to a square system so the SVD sees every column
            let square = if sys.nrows() < nn { sys.clone().resize(nn, nn, Complex::zero()) } else { sys.clone() };
            let svd = square.svd(true, true);
            let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
            sv.sort_by(f64::total_cmp);
            let smax = sv.last().copied().unwrap_or(0.0);
            let tol = eps * smax.max(1.0);
            let upper = GAP_FACTOR * tol;
            let ambiguous: Vec<f64> = sv.iter().copied().filter(|&s| s > tol && s <= upper).collect();
            if !ambiguous.is_empty() {
                return Err(BundleError::IndeterminateRank { ambiguous, tol, upper });
            }
            let v_t = svd.v_t.expect("requested");
            let basis: Vec<FMatrix> = (0..nn)
                .filter(|&k| svd.singular_values[k] <= tol)
                .map(|k| {
                    let row = v_t.row(k);
                    FMatrix::from_fn(n, n, |r, c| row[r * n + c].conj())
                })
                .collect();
            Ok(Commutant { dim: basis.len(), basis: CommutantBasis::Float(basis), singular_values: sv })
        }
    }
}

/// `∫ α ∧ ω²` with the volume normalized to `∫ ω³/3! = 1`.
pub fn degree(alpha: &InvariantForm, omega: &InvariantForm) -> GaussRational {
    let n = omega.dim() as u32;
    let factorial: i64 = (1..=n as i64).product();
    let vol = omega.power(n).top_coefficient().scale(&Rational::new(1.into(), factorial.into()));
    let top = alpha.w(&omega.power(n - 1)).top_coefficient();
    &top / &vol
}

/// A unitary flat bundle: zero curvature and zero first Chern form.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatBundle {
    pub rep: UnitaryRep,
}

impl FlatBundle {
    pub fn new(rep: UnitaryRep) -> Self {
        Self { rep }
    }

    pub fn rank(&self) -> usize {
        self.rep.rank()
    }

    pub fn curvature(&self, dim: usize) -> crate::connection::CurvatureTensor {
        crate::connection::EndForm::zero(dim, self.rank())
    }

    pub fn c1_form(&self, dim: usize) -> InvariantForm {
        InvariantForm::zero(dim)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StabilityVerdict {
    /// Irreducible unitary flat, hence stable.
    #[serde(rename = "stable-irreducible-flat")]
    StableIrreducibleFlat,
    /// The irreducibility criterion does not apply.
    #[serde(rename = "criterion-inapplicable")]
    CriterionInapplicable,
}

impl StabilityVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            StabilityVerdict::StableIrreducibleFlat => "stable-irreducible-flat",
            StabilityVerdict::CriterionInapplicable => "criterion-inapplicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityReport {
    pub mode: Mode,
    pub rank: usize,
    pub degree: GaussRational,
    pub commutant_dim: usize,
    pub verdict: StabilityVerdict,
    pub basis: &'static str,
}

/// Degree of the flat bundle and the Schur test on its holonomy.
pub fn stability_report(bundle: &FlatBundle, omega: &InvariantForm, eps: f64) -> Result<StabilityReport, BundleError> {
    let deg = degree(&bundle.c1_form(omega.dim()), omega);
    let c = commutant(&bundle.rep, eps)?;
    let verdict = if c.dim == 1 { StabilityVerdict::StableIrreducibleFlat } else { StabilityVerdict::CriterionInapplicable };
    Ok(StabilityReport {
        mode: bundle.rep.mode(),
        rank: bundle.rank(),
        degree: deg,
        commutant_dim: c.dim,
        verdict,
        basis: "irreducible unitary flat bundles are stable; no subsheaf enumeration",
    })
}

/// Matrix entry in a descriptor: `[re, im]` (numbers or rational strings) or a scalar string.
enum EntryDesc<'a> {
    Pair(&'a serde_json::Value, &'a serde_json::Value),
    Scalar(&'a str),
}

fn as_entry(v: &serde_json::Value) -> Option<EntryDesc<'_>> {
    use serde_json::Value;
    let part = |x: &Value| x.is_number() || x.is_string();
    match v {
        Value::String(s) => Some(EntryDesc::Scalar(s)),
        Value::Array(xs) if xs.len() == 2 && part(&xs[0]) && part(&xs[1]) => Some(EntryDesc::Pair(&xs[0], &xs[1])),
        _ => None,
    }
}

/// `{"n": k, "mode": "exact"|"float", "generators": {"a": [[re, im], …]}, "relators": ["aBAb"]}`;
/// matrices are row-major, either nested by rows or flat.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDescriptor {
    n: usize,
    mode: Mode,
    generators: BTreeMap<String, serde_json::Value>,
    #[serde(default)]
    relators: Vec<String>,
    #[serde(default)]
    is_free: Option<bool>,
}

fn desc_err(path: &str, message: impl Into<String>) -> BundleError {
    BundleError::Descriptor { path: path.to_string(), message: message.into() }
}

fn num_exact(d: &serde_json::Value, path: &str) -> Result<Rational, BundleError> {
    if let Some(k) = d.as_i64() {
        return Ok(Rational::from_integer(k.into()));
    }
    if let Some(x) = d.as_f64() {
        return Rational::from_float(x).ok_or_else(|| desc_err(path, "non-finite number"));
    }
    let s = d.as_str().unwrap_or_default();
    s.trim().parse::<Rational>().map_err(|e| desc_err(path, format!("{s:?}: {e}")))
}

fn entry_exact(e: &EntryDesc, path: &str) -> Result<GaussRational, BundleError> {
    match e {
        EntryDesc::Pair(re, im) => Ok(GaussRational::new(num_exact(re, path)?, num_exact(im, path)?)),
        EntryDesc::Scalar(s) => s.parse().map_err(|e| desc_err(path, format!("{e}"))),
    }
}

fn entry_float(e: &EntryDesc, path: &str) -> Result<Complex<f64>, BundleError> {
    let num = |d: &serde_json::Value| -> Result<f64, BundleError> {
        match d.as_f64() {
            Some(x) => Ok(x),
            None => {
                let s = d.as_str().unwrap_or_default().trim();
                s.parse::<f64>().or_else(|_| num_exact(d, path).map(|r| GaussRational::from_real(r).to_f64_pair().0))
            }
        }
    };
    match e {
        EntryDesc::Pair(re, im) => Ok(Complex::new(num(re)?, num(im)?)),
        EntryDesc::Scalar(_) => {
            let (re, im) = entry_exact(e, path)?.to_f64_pair();
            Ok(Complex::new(re, im))
        }
    }
}

/// Row-major entries, accepting nested rows or a flat list of `n²` entries.
fn flat_entries<'a>(n: usize, k: &str, m: &'a serde_json::Value) -> Result<Vec<(String, EntryDesc<'a>)>, BundleError> {
    let path = format!("generators.{k}");
    let items = m.as_array().ok_or_else(|| desc_err(&path, "expected an array"))?;
    let rows: Option<Vec<EntryDesc>> = (items.len() == n)
        .then(|| {
            items
                .iter()
                .map(|r| r.as_array().filter(|r| r.len() == n))
                .collect::<Option<Vec<_>>>()
                .and_then(|rs| rs.into_iter().flatten().map(as_entry).collect())
        })
        .flatten();
    let flat = match rows {
        Some(r) => r,
        None => items
            .iter()
            .map(as_entry)
            .collect::<Option<Vec<_>>>()
            .filter(|v| v.len() == n * n)
            .ok_or_else(|| desc_err(&path, format!("expected {n}×{n} rows or {} entries", n * n)))?,
    };
    Ok(flat.into_iter().enumerate().map(|(p, e)| (format!("{path}[{}][{}]", p / n, p % n), e)).collect())
}

impl RepDescriptor {
    pub fn from_reader(r: impl Read) -> Result<Self, BundleError> {
        let de = &mut serde_json::Deserializer::from_reader(r);
        serde_path_to_error::deserialize(de).map_err(|e| desc_err(&e.path().to_string(), e.inner().to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self, BundleError> {
        Self::from_reader(s.as_bytes())
    }

    pub fn build(&self) -> Result<UnitaryRep, BundleError> {
        let mut names = Vec::new();
        for k in self.generators.keys() {
            let mut cs = k.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => names.push(c),
                _ => return Err(desc_err(&format!("generators.{k}"), "generator names are single letters")),
            }
        }
        let rel: Vec<&str> = self.relators.iter().map(String::as_str).collect();
        let pres = GroupPresentation::new(&names, &rel)?;
        if self.is_free == Some(true) && !pres.is_free() {
            return Err(desc_err("is_free", "a free presentation has no relators"));
        }
        if self.is_free == Some(false) && pres.is_free() {
            return Err(desc_err("relators", "a non-free presentation needs at least one relator"));
        }
        let n = self.n;
        match self.mode {
            Mode::Exact => {
                let mut ms = Vec::new();
                for (k, m) in &self.generators {
                    let v = flat_entries(n, k, m)?
                        .into_iter()
                        .map(|(path, e)| entry_exact(&e, &path))
                        .collect::<Result<Vec<_>, _>>()?;
                    ms.push(CMatrix::from_vec(n, n, v));
                }
                UnitaryRep::exact(pres, ms)
            }
            Mode::Float => {
                let mut ms = Vec::new();
                for (k, m) in &self.generators {
                    let v = flat_entries(n, k, m)?
                        .into_iter()
                        .map(|(path, e)| entry_float(&e, &path))
                        .collect::<Result<Vec<_>, _>>()?;
                    ms.push(FMatrix::from_row_slice(n, n, &v));
                }
                UnitaryRep::float(pres, ms)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{kaehler_form, ChevalleyEilenberg, SignConvention};
    use crate::lie::sl2_standard;

    fn diag(entries: &[&str]) -> CMatrix {
        let n = entries.len();
        CMatrix::from_fn(n, n, |r, c| if r == c { entries[r].parse().unwrap() } else { GaussRational::zero() })
    }

    #[test]
    fn clock_shift_two_is_exact() {
        let rep = clock_shift(2).unwrap();
        assert_eq!(rep.mode(), Mode::Exact);
        let u = check_unitary(&rep, DEFAULT_TOLERANCE);
        assert!(u.pass && u.entries.iter().all(|e| e.residual == 0.0 && e.exact_zero == Some(true)));
        assert_eq!(rep.evaluate_exact("abAB").unwrap(), CMatrix::identity(2).neg());
        let RepMatrices::Exact(ms) = rep.matrices() else { unreachable!() };
        assert!(ms.iter().all(|m| m.det() == GaussRational::one()));
        assert_eq!(commutant(&rep, DEFAULT_TOLERANCE).unwrap().dim, 1);
    }

    #[test]
    fn clock_shift_float() {
        for n in [3usize, 4, 5] {
            let rep = clock_shift(n).unwrap();
            assert_eq!(rep.mode(), Mode::Float);
            assert!(check_unitary(&rep, DEFAULT_TOLERANCE).pass);
            let zeta = Complex::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64);
            let comm = rep.evaluate_float("abAB");
            assert!(max_abs(&(comm - FMatrix::identity(n, n) * zeta)) < 1e-12);
            for m in rep.float_matrices() {
                assert!((m.determinant() - Complex::new(1.0, 0.0)).norm() < 1e-12);
            }
            assert_eq!(commutant(&rep, DEFAULT_TOLERANCE).unwrap().dim, 1);
        }
        assert_eq!(clock_shift(1), Err(BundleError::InvalidRank(1)));
    }

    #[test]
    fn relations() {
        let rep = clock_shift(2).unwrap();
        assert!(check_relations(&rep, DEFAULT_TOLERANCE).pass);
        let pres = GroupPresentation::new(&['a', 'b'], &["abAB"]).unwrap();
        let RepMatrices::Exact(ms) = rep.matrices().clone() else { unreachable!() };
        let with_rel = UnitaryRep::exact(pres.clone(), ms).unwrap();
        let r = check_relations(&with_rel, DEFAULT_TOLERANCE);
        assert!(!r.pass);
        assert_eq!(r.entries[0].residual, 2.0);
        let commuting = UnitaryRep::exact(pres, vec![diag(&["i", "-1"]), diag(&["-i", "1"])]).unwrap();
        assert!(check_relations(&commuting, DEFAULT_TOLERANCE).pass);
    }

    #[test]
    fn non_unitary_is_reported() {
        let pres = GroupPresentation::free(&['a']).unwrap();
        let rep = UnitaryRep::exact(pres.clone(), vec![diag(&["2", "1"])]).unwrap();
        let u = check_unitary(&rep, DEFAULT_TOLERANCE);
        assert!(!u.pass);
        assert_eq!(u.entries[0].residual, 3.0);
        let id = UnitaryRep::exact(pres, vec![CMatrix::identity(3)]).unwrap();
        assert!(check_unitary(&id, DEFAULT_TOLERANCE).pass);
    }

    #[test]
    fn commutant_of_reducible_reps() {
        let pres = GroupPresentation::free(&['a', 'b']).unwrap();
        let one_a = UnitaryRep::exact(pres.clone(), vec![diag(&["i"]), diag(&["1"])]).unwrap();
        let one_b = UnitaryRep::exact(pres.clone(), vec![diag(&["-1"]), diag(&["-i"])]).unwrap();
        let sum = one_a.direct_sum(&one_b).unwrap();
        assert_eq!(commutant(&sum, DEFAULT_TOLERANCE).unwrap().dim, 2);
        let same = one_a.direct_sum(&one_a).unwrap();
        assert_eq!(commutant(&same, DEFAULT_TOLERANCE).unwrap().dim, 4);
        let trivial = UnitaryRep::exact(GroupPresentation::free(&['a']).unwrap(), vec![CMatrix::identity(1)]).unwrap();
        assert_eq!(commutant(&trivial, DEFAULT_TOLERANCE).unwrap().dim, 1);
        let f = clock_shift(3).unwrap();
        let fsum = f.direct_sum(&clock_shift(3).unwrap()).unwrap();
        assert_eq!(commutant(&fsum, DEFAULT_TOLERANCE).unwrap().dim, 4);
    }

    #[test]
    fn indeterminate_rank_is_loud() {
        let pres = GroupPresentation::free(&['a']).unwrap();
        let eps = 1e-10;
        let m = FMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex::new(1.0, 0.0),
            Complex::from_polar(1.0, 1e-8),
        ]));
        let rep = UnitaryRep::float(pres, vec![m]).unwrap();
        assert!(matches!(commutant(&rep, eps), Err(BundleError::IndeterminateRank { .. })));
    }

    #[test]
    fn degree_examples() {
        let d = sl2_standard();
        let w = kaehler_form(&d.hermitian);
        assert!(degree(&InvariantForm::zero(3), &w).is_zero());
        let ce = ChevalleyEilenberg::new(&d.algebra, SignConvention::RightInvariant);
        let delta = InvariantForm::sigma(3, 0).add(&InvariantForm::sigma_bar(3, 0));
        assert!(degree(&ce.d(&delta), &w).is_zero());
        let alpha = InvariantForm::monomial(3, &[1], &[1], GaussRational::i());
        assert_eq!(degree(&alpha, &w), GaussRational::from_int(4));
    }

    #[test]
    fn stability_verdicts() {
        let w = kaehler_form(&sl2_standard().hermitian);
        let r = stability_report(&FlatBundle::new(clock_shift(2).unwrap()), &w, DEFAULT_TOLERANCE).unwrap();
        assert_eq!((r.commutant_dim, r.verdict), (1, StabilityVerdict::StableIrreducibleFlat));
        assert!(r.degree.is_zero());
        let pres = GroupPresentation::free(&['a']).unwrap();
        let line = UnitaryRep::exact(pres.clone(), vec![diag(&["i"])]).unwrap();
        assert_eq!(stability_report(&FlatBundle::new(line.clone()), &w, DEFAULT_TOLERANCE).unwrap().verdict, StabilityVerdict::StableIrreducibleFlat);
        let sum = line.direct_sum(&UnitaryRep::exact(pres, vec![diag(&["-1"])]).unwrap()).unwrap();
        let r = stability_report(&FlatBundle::new(sum), &w, DEFAULT_TOLERANCE).unwrap();
        assert_eq!((r.commutant_dim, r.verdict), (2, StabilityVerdict::CriterionInapplicable));
    }

    #[test]
    fn presentation_validation() {
        assert!(GroupPresentation::new(&['a'], &["ab"]).is_err());
        assert!(GroupPresentation::new(&['a'], &[""]).is_err());
        assert!(GroupPresentation::new(&['A'], &[]).is_err());
        assert!(GroupPresentation::new(&['a', 'a'], &[]).is_err());
        assert!(GroupPresentation::free(&['a', 'b']).unwrap().is_free());
    }

    #[test]
    fn descriptors() {
        let src = r#"{"n": 2, "mode": "exact",
            "generators": {"a": [[[0, 1], [0, 0]], [[0, 0], [0, -1]]], "b": [[0, 0], [0, 1], [0, 1], [0, 0]]},
            "relators": []}"#;
        let rep = RepDescriptor::from_json(src).unwrap().build().unwrap();
        assert_eq!(rep, clock_shift(2).unwrap());
        let strings = r#"{"n": 1, "mode": "exact", "generators": {"a": [["1/2", "-3/4"]]}}"#;
        let rep = RepDescriptor::from_json(strings).unwrap().build().unwrap();
        assert!(!check_unitary(&rep, DEFAULT_TOLERANCE).pass);
        let float = r#"{"n": 1, "mode": "float", "generators": {"a": [[0.6, 0.8]]}, "relators": ["aaaaA"]}"#;
        let rep = RepDescriptor::from_json(float).unwrap().build().unwrap();
        assert!(check_unitary(&rep, DEFAULT_TOLERANCE).pass);
        assert!(!check_relations(&rep, DEFAULT_TOLERANCE).pass);
        let bad = r#"{"n": 2, "mode": "exact", "generators": {"a": [[1, 0]]}}"#;
        assert!(matches!(RepDescriptor::from_json(bad).unwrap().build(), Err(BundleError::Descriptor { .. })));
        let typo = r#"{"n": 2, "mode": "exakt", "generators": {}}"#;
        match RepDescriptor::from_json(typo) {
            Err(BundleError::Descriptor { path, .. }) => assert_eq!(path, "mode"),
            other => panic!("{other:?}"),
        }
    }
}
