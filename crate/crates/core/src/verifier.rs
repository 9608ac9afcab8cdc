//! The five Strominger-system equations on an invariant instance.
//!
//! Every quantity is right-invariant, so every identity is checked on the
//! coframe at the identity coset.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bundle::{clock_shift, stability_report, BundleError, FlatBundle, StabilityReport, DEFAULT_TOLERANCE};
use crate::connection::{
    bismut_connection, chern_connection, curvature, gauduchon_family, holonomy_algebra, su3_containment, torsion,
    torsion_skew_check, trace_r_wedge_r, ConnectionError, CurvatureTensor, EndForm, InvariantConnection,
};
use crate::exec::Exec;
use crate::forms::{kaehler_form, ChevalleyEilenberg, FormTerm, HodgeStar, InvariantForm, SignConvention, TopFormSection};
use crate::lie::{sl2_standard, DaggerMap, HermitianForm, LieAlgebra};
use crate::rep::{form_to_vector, ModuleSpace, Recipe};
use crate::scalar::{GaussRational, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InstanceError {
    #[error("the holomorphic volume form vanishes")]
    VanishingSection,
    #[error("cached ‖Ω‖² = {cached} disagrees with the metric, which gives {expected}")]
    InconsistentNorm { cached: Rational, expected: Rational },
    #[error("{0} connection is defined over a {1}-dimensional frame, the algebra has dimension {2}")]
    FrameMismatch(&'static str, usize, usize),
    #[error("the tangent connection must act on the tangent frame (rank {expected}, got {got})")]
    TangentRank { expected: usize, got: usize },
    #[error("the gauge bundle has rank 0")]
    ZeroRank,
    #[error("connection and instance use different sign conventions")]
    ConventionMismatch,
    #[error(transparent)]
    Connection(#[from] ConnectionError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
}

/// Which tangent connection to use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TangentChoice {
    Chern,
    Bismut,
    Gauduchon(Rational),
}

impl TangentChoice {
    /// `chern`, `bismut` or `gauduchon:<t>` with `t` rational.
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "chern" => Some(Self::Chern),
            "bismut" => Some(Self::Bismut),
            _ => s.strip_prefix("gauduchon:").and_then(|t| t.trim().parse().ok()).map(Self::Gauduchon),
        }
    }

    pub fn build(
        &self,
        g: &LieAlgebra,
        h: &HermitianForm,
        conv: SignConvention,
    ) -> Result<InvariantConnection, ConnectionError> {
        match self {
            Self::Chern => Ok(chern_connection(g, conv)),
            Self::Bismut => bismut_connection(g, h, conv),
            Self::Gauduchon(t) => gauduchon_family(g, h, conv, t),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GaugeConnection {
    Flat(FlatBundle),
    Custom(InvariantConnection),
}

#[derive(Clone, Debug, PartialEq)]
pub struct StromingerInstance {
    pub algebra: LieAlgebra,
    pub hermitian: HermitianForm,
    pub dagger: Option<DaggerMap>,
    pub convention: SignConvention,
    pub theta: TopFormSection,
    pub tangent: InvariantConnection,
    pub gauge: GaugeConnection,
    pub alpha_prime: Option<GaussRational>,
    pub tolerance: f64,
}

impl StromingerInstance {
    /// `sl(2,ℂ)` with `h = diag(2,1,1)`, `Ω = σ^{ABC}`, the Chern connection
    /// and the flat bundle of the rank-2 clock-shift representation.
    pub fn canonical(convention: SignConvention) -> Self {
        let d = sl2_standard();
        let theta = TopFormSection::new(GaussRational::one(), &d.hermitian).expect("nonzero");
        Self {
            tangent: chern_connection(&d.algebra, convention),
            algebra: d.algebra,
            hermitian: d.hermitian,
            dagger: Some(d.dagger),
            convention,
            theta,
            gauge: GaugeConnection::Flat(FlatBundle::new(clock_shift(2).expect("rank 2"))),
            alpha_prime: None,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    /// The flat torus: abelian `ℂ³` with the standard metric.
    pub fn abelian(convention: SignConvention) -> Self {
        let algebra = LieAlgebra::abelian(3);
        let hermitian = HermitianForm::identity(3);
        let theta = TopFormSection::new(GaussRational::one(), &hermitian).expect("nonzero");
        Self {
            tangent: chern_connection(&algebra, convention),
            dagger: DaggerMap::negated_conjugation(&algebra).ok(),
            algebra,
            hermitian,
            convention,
            theta,
            gauge: GaugeConnection::Flat(FlatBundle::new(clock_shift(2).expect("rank 2"))),
            alpha_prime: None,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_tangent(mut self, choice: &TangentChoice) -> Result<Self, InstanceError> {
        self.tangent = choice.build(&self.algebra, &self.hermitian, self.convention)?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        let n = self.algebra.dim();
        if self.theta.coefficient().is_zero() {
            return Err(InstanceError::VanishingSection);
        }
        if !self.theta.is_consistent_with(&self.hermitian) {
            return Err(InstanceError::InconsistentNorm {
                cached: self.theta.norm_sq().clone(),
                expected: crate::forms::omega_norm_sq(self.theta.coefficient(), &self.hermitian),
            });
        }
        if self.tangent.dim() != n {
            return Err(InstanceError::FrameMismatch("tangent", self.tangent.dim(), n));
        }
        if self.tangent.rank() != n {
            return Err(InstanceError::TangentRank { expected: n, got: self.tangent.rank() });
        }
        if self.tangent.convention() != self.convention {
            return Err(InstanceError::ConventionMismatch);
        }
        match &self.gauge {
            GaugeConnection::Flat(b) if b.rank() == 0 => return Err(InstanceError::ZeroRank),
            GaugeConnection::Custom(c) => {
                if c.dim() != n {
                    return Err(InstanceError::FrameMismatch("gauge", c.dim(), n));
                }
                if c.rank() == 0 {
                    return Err(InstanceError::ZeroRank);
                }
                if c.convention() != self.convention {
                    return Err(InstanceError::ConventionMismatch);
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn gauge_curvature(&self) -> CurvatureTensor {
        match &self.gauge {
            GaugeConnection::Flat(b) => b.curvature(self.algebra.dim()),
            GaugeConnection::Custom(c) => curvature(&self.algebra, c),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Conditional,
    NoSolution,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Conditional => "conditional",
            Verdict::NoSolution => "no_solution",
        }
    }

    /// `conditional` still admits a solution.
    pub fn is_acceptable(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::Conditional)
    }
}

/// One term of an endomorphism-valued form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndTerm {
    pub bidegree: [usize; 2],
    pub holo: Vec<String>,
    pub anti: Vec<String>,
    pub matrix: Vec<Vec<GaussRational>>,
}

pub fn end_terms(f: &EndForm, labels: &[String]) -> Vec<EndTerm> {
    f.terms()
        .map(|(mask, m)| {
            let t = InvariantForm::from_terms(f.dim(), [(mask, GaussRational::one())]).to_terms(labels).remove(0);
            EndTerm {
                bidegree: t.bidegree,
                holo: t.holo,
                anti: t.anti,
                matrix: (0..m.rows()).map(|r| m.row(r).to_vec()).collect(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaugeCheck {
    pub verdict: Verdict,
    pub f20: Vec<EndTerm>,
    pub f02: Vec<EndTerm>,
    pub f_wedge_omega_sq: Vec<EndTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorsionConstraintCheck {
    pub verdict: Verdict,
    pub lhs: Vec<FormTerm>,
    pub rhs: Vec<FormTerm>,
    pub rhs_log: Vec<FormTerm>,
    pub residual: Vec<FormTerm>,
    pub residual_log: Vec<FormTerm>,
    #[serde(serialize_with = "crate::scalar::serialize_rational")]
    pub norm_sq: Rational,
    pub star_omega_is_half_omega_sq: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BalancedCheck {
    pub verdict: Verdict,
    #[serde(serialize_with = "crate::scalar::serialize_rational")]
    pub norm_sq: Rational,
    /// `d(ω²)`; the left side is this times the constant `‖Ω‖`.
    pub d_omega_sq: Vec<FormTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum AlphaSolution {
    Empty,
    Unique(GaussRational),
    All,
    Fixed(GaussRational),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantLine {
    pub lhs: bool,
    pub trace_rr: bool,
    pub trace_ff: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnomalyCheck {
    pub verdict: Verdict,
    pub lhs: Vec<FormTerm>,
    pub trace_rr: Vec<FormTerm>,
    pub trace_ff: Vec<FormTerm>,
    /// Multiples of `ω²`; `None` if the form is not proportional to `ω²`.
    pub c_lhs: Option<GaussRational>,
    pub c_r: Option<GaussRational>,
    pub c_f: Option<GaussRational>,
    pub invariant_line: Option<InvariantLine>,
    pub alpha_prime: AlphaSolution,
    pub residual: Option<Vec<FormTerm>>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MotionCheck {
    pub verdict: Verdict,
    pub r20: Vec<EndTerm>,
    pub r02: Vec<EndTerm>,
    pub r_wedge_omega_sq: Vec<EndTerm>,
    /// `⋆(R∧ω²) = λ·Id`, when it is a multiple of the identity.
    pub lambda_star: Option<GaussRational>,
    /// `(∫ trace(R)∧ω²) / rank`.
    pub lambda_volume: GaussRational,
    pub paths_agree: bool,
    pub star_in_identity_line: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantDims {
    pub one_forms: usize,
    pub four_forms: usize,
    pub omega_sq_scalar: Option<GaussRational>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorsionSummary {
    pub nonzero: bool,
    pub raised_antisymmetric: Option<bool>,
    pub identified_antisymmetric: Option<bool>,
    pub identified_in_invariant_line: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HolonomySummary {
    pub dim: usize,
    pub su3: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Supporting {
    pub kaehler: bool,
    pub d_omega_sq_zero: bool,
    pub kappa: Option<GaussRational>,
    pub invariant_dims: Option<InvariantDims>,
    pub metric_compatible: bool,
    pub torsion: TorsionSummary,
    pub holonomy: HolonomySummary,
    pub stability: Option<StabilityReport>,
    pub stability_error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceSummary {
    pub algebra: Vec<String>,
    pub hermitian: Vec<Vec<GaussRational>>,
    pub convention: &'static str,
    pub tangent_connection: String,
    pub gauge: String,
    pub alpha_prime: Option<GaussRational>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub instance: InstanceSummary,
    pub gauge_hym: GaugeCheck,
    pub torsion_constraint: TorsionConstraintCheck,
    pub conformally_balanced: BalancedCheck,
    pub anomaly_cancellation: AnomalyCheck,
    pub equation_of_motion: MotionCheck,
    pub supporting: Supporting,
}

impl VerificationReport {
    /// `(id, verdict)` for each equation, in order.
    pub fn verdicts(&self) -> [(&'static str, Verdict); 5] {
        [
            ("gauge_hym", self.gauge_hym.verdict),
            ("torsion_constraint", self.torsion_constraint.verdict),
            ("conformally_balanced", self.conformally_balanced.verdict),
            ("anomaly_cancellation", self.anomaly_cancellation.verdict),
            ("equation_of_motion", self.equation_of_motion.verdict),
        ]
    }

    pub fn all_acceptable(&self) -> bool {
        self.verdicts().iter().all(|(_, v)| v.is_acceptable())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Shared data for all checks.
pub struct Context<'a> {
    pub instance: &'a StromingerInstance,
    pub ce: ChevalleyEilenberg,
    pub hodge: HodgeStar,
    pub omega: InvariantForm,
    pub omega_sq: InvariantForm,
    pub labels: Vec<String>,
}

impl<'a> Context<'a> {
    pub fn new(instance: &'a StromingerInstance) -> Self {
        let omega = kaehler_form(&instance.hermitian);
        Self {
            ce: ChevalleyEilenberg::new(&instance.algebra, instance.convention),
            hodge: HodgeStar::new(&instance.hermitian),
            omega_sq: omega.power(2),
            omega,
            labels: instance.algebra.labels().to_vec(),
            instance,
        }
    }

    fn terms(&self, f: &InvariantForm) -> Vec<FormTerm> {
        f.to_terms(&self.labels)
    }

    fn is_sl2(&self) -> bool {
        self.instance.algebra.is_sl2_standard()
    }
}

/// `F^{2,0} = F^{0,2} = 0` and `F ∧ ω² = 0`.
pub fn check_gauge(f: &CurvatureTensor, omega_sq: &InvariantForm, labels: &[String]) -> GaugeCheck {
    let (f20, f02, fw) = (f.component(2, 0), f.component(0, 2), f.wedge_form(omega_sq));
    GaugeCheck {
        verdict: Verdict::from_bool(f20.is_zero() && f02.is_zero() && fw.is_zero()),
        f20: end_terms(&f20, labels),
        f02: end_terms(&f02, labels),
        f_wedge_omega_sq: end_terms(&fw, labels),
    }
}

pub fn verify_gauge(cx: &Context) -> GaugeCheck {
    check_gauge(&cx.instance.gauge_curvature(), &cx.omega_sq, &cx.labels)
}

/// `d*ω = i(∂̄ − ∂)‖Ω‖`, also with `ln‖Ω‖` on the right.
pub fn verify_torsion_constraint(cx: &Context) -> TorsionConstraintCheck {
    let n = cx.instance.algebra.dim();
    let lhs = cx.hodge.codifferential(&cx.ce, &cx.omega);
    // ‖Ω‖ and ln‖Ω‖ are invariant, hence constant functions; only their
    // derivatives enter, so any nonzero constant represents them
    let twisted = |f: &InvariantForm| cx.ce.delbar(f).sub(&cx.ce.del(f)).scale(&GaussRational::i());
    let rhs = twisted(&InvariantForm::constant(n, GaussRational::one()));
    let rhs_log = twisted(&InvariantForm::constant(n, GaussRational::from_int(2)));
    let (res, res_log) = (lhs.sub(&rhs), lhs.sub(&rhs_log));
    let half = GaussRational::ratio(1, 2);
    TorsionConstraintCheck {
        verdict: Verdict::from_bool(res.is_zero() && res_log.is_zero()),
        lhs: cx.terms(&lhs),
        rhs: cx.terms(&rhs),
        rhs_log: cx.terms(&rhs_log),
        residual: cx.terms(&res),
        residual_log: cx.terms(&res_log),
        norm_sq: cx.instance.theta.norm_sq().clone(),
        star_omega_is_half_omega_sq: cx.hodge.star(&cx.omega) == cx.omega_sq.scale(&half),
    }
}

/// `d(‖Ω‖·ω²) = 0`.
pub fn verify_balanced(cx: &Context) -> BalancedCheck {
    let d = cx.ce.d(&cx.omega_sq);
    BalancedCheck {
        verdict: Verdict::from_bool(d.is_zero()),
        norm_sq: cx.instance.theta.norm_sq().clone(),
        d_omega_sq: cx.terms(&d),
    }
}

fn four_form_line(cx: &Context) -> Option<ModuleSpace> {
    cx.is_sl2().then(|| ModuleSpace::build(&Recipe::forms(4), &cx.instance.algebra).ok()).flatten()
}

fn on_line(m: &ModuleSpace, f: &InvariantForm) -> bool {
    f.is_homogeneous_of(4) && matches!(m.locate_invariant(&form_to_vector(f, 4)), Ok(Some(_)))
}

fn ratio_or_zero(f: &InvariantForm, reference: &InvariantForm) -> Option<GaussRational> {
    if f.is_zero() {
        Some(GaussRational::zero())
    } else {
        f.ratio_to(reference)
    }
}

/// `i∂∂̄ω = α′(trace(R∧R) − trace(F∧F))`, solved for `α′` unless it is fixed.
pub fn verify_anomaly(cx: &Context) -> AnomalyCheck {
    let inst = cx.instance;
    let lhs = cx.ce.del(&cx.ce.delbar(&cx.omega)).scale(&GaussRational::i());
    let trr = trace_r_wedge_r(&curvature(&inst.algebra, &inst.tangent));
    let tff = trace_r_wedge_r(&inst.gauge_curvature());
    let diff = trr.sub(&tff);
    let (c_lhs, c_r, c_f) =
        (ratio_or_zero(&lhs, &cx.omega_sq), ratio_or_zero(&trr, &cx.omega_sq), ratio_or_zero(&tff, &cx.omega_sq));
    let invariant_line = four_form_line(cx).map(|m| InvariantLine {
        lhs: on_line(&m, &lhs) || lhs.is_zero(),
        trace_rr: on_line(&m, &trr) || trr.is_zero(),
        trace_ff: on_line(&m, &tff) || tff.is_zero(),
    });
    let (alpha_prime, residual, verdict) = match &inst.alpha_prime {
        Some(a) => {
            let res = lhs.sub(&diff.scale(a));
            let ok = res.is_zero();
            (AlphaSolution::Fixed(a.clone()), Some(cx.terms(&res)), Verdict::from_bool(ok))
        }
        None => {
            if diff.is_zero() {
                if lhs.is_zero() {
                    (AlphaSolution::All, None, Verdict::Pass)
                } else {
                    (AlphaSolution::Empty, None, Verdict::NoSolution)
                }
            } else {
                match ratio_or_zero(&lhs, &diff) {
                    Some(a) => (AlphaSolution::Unique(a), None, Verdict::Conditional),
                    None => (AlphaSolution::Empty, None, Verdict::NoSolution),
                }
            }
        }
    };
    let note = (diff.is_zero() && !lhs.is_zero()).then(|| {
        format!(
            "i∂∂̄ω = ({})·ω² is nonzero while trace(R∧R) − trace(F∧F) vanishes identically for the {} tangent \
             connection; both sides are invariant multiples of ω², but the constants differ, so no α′ solves the \
             equation",
            c_lhs.as_ref().map_or_else(|| "?".to_string(), |c| c.to_string()),
            inst.tangent.kind()
        )
    });
    AnomalyCheck {
        verdict,
        lhs: cx.terms(&lhs),
        trace_rr: cx.terms(&trr),
        trace_ff: cx.terms(&tff),
        c_lhs,
        c_r,
        c_f,
        invariant_line,
        alpha_prime,
        residual,
        note,
    }
}

/// `R^{2,0} = R^{0,2} = 0`, `R∧ω² = 0`, and `λ` from `⋆(R∧ω²) = λ·Id` by two routes.
pub fn check_motion(r: &CurvatureTensor, cx: &Context) -> MotionCheck {
    let (r20, r02) = (r.component(2, 0), r.component(0, 2));
    let rw = r.wedge_form(&cx.omega_sq);
    let star = rw.star(&cx.hodge);
    let lambda_star = star.as_identity_multiple();
    let rank = GaussRational::from_int(r.rank() as i64);
    let lambda_volume = &cx.hodge.integrand(&r.trace().w(&cx.omega_sq)) / &rank;
    let star_in_identity_line = (cx.is_sl2() && r.rank() == cx.instance.algebra.dim())
        .then(|| {
            let m = ModuleSpace::build(&Recipe::End(Box::new(Recipe::Adjoint)), &cx.instance.algebra).ok()?;
            let s = star.scalar_part();
            let only_scalar = star.terms().all(|(mask, _)| mask == 0);
            Some(only_scalar && (s.is_zero() || matches!(m.locate_invariant(s.data()), Ok(Some(_)))))
        })
        .flatten();
    MotionCheck {
        verdict: Verdict::from_bool(r20.is_zero() && r02.is_zero() && rw.is_zero()),
        r20: end_terms(&r20, &cx.labels),
        r02: end_terms(&r02, &cx.labels),
        r_wedge_omega_sq: end_terms(&rw, &cx.labels),
        paths_agree: lambda_star.as_ref() == Some(&lambda_volume),
        lambda_star,
        lambda_volume,
        star_in_identity_line,
    }
}

pub fn verify_motion(cx: &Context) -> MotionCheck {
    check_motion(&curvature(&cx.instance.algebra, &cx.instance.tangent), cx)
}

fn supporting(cx: &Context) -> Supporting {
    let inst = cx.instance;
    let g = &inst.algebra;
    let d_omega = cx.ce.d(&cx.omega);
    let lhs = cx.ce.del(&cx.ce.delbar(&cx.omega)).scale(&GaussRational::i());
    let invariant_dims = cx.is_sl2().then(|| {
        let dim_of = |r: Recipe| ModuleSpace::build(&r, g).map(|m| m.invariant_subspace().len()).unwrap_or(0);
        let omega_sq_scalar = four_form_line(cx).and_then(|m| m.locate_invariant(&form_to_vector(&cx.omega_sq, 4)).ok().flatten());
        InvariantDims { one_forms: dim_of(Recipe::forms(1)), four_forms: dim_of(Recipe::forms(4)), omega_sq_scalar }
    });
    let t = torsion(g, &inst.tangent);
    let skew = inst.dagger.as_ref().and_then(|d| torsion_skew_check(&t, &inst.hermitian, d).ok());
    let identified_in_invariant_line = match (&skew, cx.is_sl2()) {
        (Some(s), true) => {
            let m = ModuleSpace::build(&Recipe::Adjoint.tensor(Recipe::Adjoint).tensor(Recipe::Adjoint), g).ok();
            m.map(|m| s.identified.iter().all(Zero::is_zero) || matches!(m.locate_invariant(&s.identified), Ok(Some(_))))
        }
        _ => None,
    };
    let r = curvature(g, &inst.tangent);
    let hol = holonomy_algebra(&inst.tangent, &r);
    let (stability, stability_error) = match &inst.gauge {
        GaugeConnection::Flat(b) => match stability_report(b, &cx.omega, inst.tolerance) {
            Ok(s) => (Some(s), None),
            Err(e) => (None, Some(e.to_string())),
        },
        GaugeConnection::Custom(_) => (None, None),
    };
    Supporting {
        kaehler: d_omega.is_zero(),
        d_omega_sq_zero: cx.ce.d(&cx.omega_sq).is_zero(),
        kappa: ratio_or_zero(&lhs, &cx.omega_sq),
        invariant_dims,
        metric_compatible: inst.tangent.is_metric(&inst.hermitian),
        torsion: TorsionSummary {
            nonzero: !t.is_zero(),
            raised_antisymmetric: skew.as_ref().map(|s| s.raised_antisymmetric),
            identified_antisymmetric: skew.as_ref().map(|s| s.identified_antisymmetric),
            identified_in_invariant_line,
        },
        holonomy: HolonomySummary { dim: hol.dim(), su3: su3_containment(&hol, &inst.hermitian) },
        stability,
        stability_error,
    }
}

enum Part {
    Gauge(GaugeCheck),
    Torsion(TorsionConstraintCheck),
    Balanced(BalancedCheck),
    Anomaly(Box<AnomalyCheck>),
    Motion(MotionCheck),
    Supporting(Box<Supporting>),
}

pub fn full_report(instance: &StromingerInstance) -> Result<VerificationReport, InstanceError> {
    full_report_with(instance, Exec::default())
}

pub fn full_report_with(instance: &StromingerInstance, exec: Exec) -> Result<VerificationReport, InstanceError> {
    instance.validate()?;
    let cx = Context::new(instance);
    let parts = exec.map_range(6, |k| match k {
        0 => Part::Gauge(verify_gauge(&cx)),
        1 => Part::Torsion(verify_torsion_constraint(&cx)),
        2 => Part::Balanced(verify_balanced(&cx)),
        3 => Part::Anomaly(Box::new(verify_anomaly(&cx))),
        4 => Part::Motion(verify_motion(&cx)),
        _ => Part::Supporting(Box::new(supporting(&cx))),
    });
    let mut it = parts.into_iter();
    let (
        Some(Part::Gauge(gauge_hym)),
        Some(Part::Torsion(torsion_constraint)),
        Some(Part::Balanced(conformally_balanced)),
        Some(Part::Anomaly(anomaly)),
        Some(Part::Motion(equation_of_motion)),
        Some(Part::Supporting(supporting)),
    ) = (it.next(), it.next(), it.next(), it.next(), it.next(), it.next())
    else {
        unreachable!("map_range preserves order")
    };
    let gauge = match &instance.gauge {
        GaugeConnection::Flat(b) => format!("flat rank {} ({})", b.rank(), if b.rep.mode() == crate::bundle::Mode::Exact { "exact" } else { "float" }),
        GaugeConnection::Custom(c) => format!("{} rank {}", c.kind(), c.rank()),
    };
    let hm = instance.hermitian.matrix();
    Ok(VerificationReport {
        instance: InstanceSummary {
            algebra: instance.algebra.labels().to_vec(),
            hermitian: (0..hm.rows()).map(|r| hm.row(r).to_vec()).collect(),
            convention: instance.convention.name(),
            tangent_connection: instance.tangent.kind().to_string(),
            gauge,
            alpha_prime: instance.alpha_prime.clone(),
        },
        gauge_hym,
        torsion_constraint,
        conformally_balanced,
        anomaly_cancellation: *anomaly,
        equation_of_motion,
        supporting: *supporting,
    })
}
