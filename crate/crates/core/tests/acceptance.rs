//! Acceptance matrix. Prints one line per criterion and exits nonzero on any
//! failure other than the documented sign-flip clause of criterion 6.

use std::collections::BTreeMap;
use std::process::ExitCode;

use num_traits::{One, Zero};

use stromver_core::bundle::{
    check_unitary, clock_shift, commutant, degree, stability_report, FlatBundle, GroupPresentation, StabilityVerdict,
    UnitaryRep, DEFAULT_TOLERANCE,
};
use stromver_core::connection::{chern_connection, curvature, holonomy_algebra, su3_containment, torsion, torsion_skew_check};
use stromver_core::forms::{kaehler_form, ChevalleyEilenberg, HodgeStar, InvariantForm, SignConvention};
use stromver_core::lie::sl2_standard;
use stromver_core::linalg::CMatrix;
use stromver_core::rep::{form_to_vector, ModuleSpace, Recipe};
use stromver_core::sample;
use stromver_core::scalar::{rational, GaussRational};
use stromver_core::verifier::{full_report, AlphaSolution, StromingerInstance, Verdict};

const CONVENTIONS: [SignConvention; 2] = [SignConvention::RightInvariant, SignConvention::Flipped];

/// Hand expansion with `dσ^A = s σ^{BC}`, `dσ^B = 2s σ^{AB}`, `dσ^C = −2s σ^{AC}`:
/// `i∂∂̄ω = s²(2σ^{AB}σ̄^{AB} + 2σ^{AC}σ̄^{AC} + σ^{BC}σ̄^{BC}) = 2s²·ω²`.
fn kappa(conv: SignConvention) -> GaussRational {
    GaussRational::from_int(2 * conv.sign() * conv.sign())
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn sl2_module(src: &str) -> ModuleSpace {
    ModuleSpace::build(&Recipe::parse(src).unwrap(), &sl2_standard().algebra).unwrap()
}

fn c1() -> Outcome {
    // direct solve: a 1-form is invariant iff it annihilates ad(u)·X for the
    // compact generators, on both the holomorphic and antiholomorphic slots
    let d = sl2_standard();
    let gens = d.algebra.su2_generators().unwrap();
    let blocks: Vec<CMatrix> = gens
        .iter()
        .map(|u| {
            let ad = d.algebra.ad_matrix(u).unwrap();
            ad.transpose().block_diag(&ad.conj().transpose())
        })
        .collect();
    let direct = CMatrix::vstack(&blocks).nullity();
    let via_modules = sl2_module("dual(g ⊕ gbar)").invariant_subspace().len();
    outcome(direct == 0 && via_modules == 0, format!("direct kernel {direct}, module kernel {via_modules}"))
}

fn c2() -> Outcome {
    let d = sl2_standard();
    let m = ModuleSpace::build(&Recipe::forms(4), &d.algebra).unwrap();
    let dim = m.invariant_subspace().len();
    let w2 = kaehler_form(&d.hermitian).power(2);
    let located = m.locate_invariant(&form_to_vector(&w2, 4)).unwrap();
    let pass = dim == 1 && located == Some(GaussRational::one());
    outcome(pass, format!("invariant dim {dim}, ω² located with scalar {located:?}"))
}

fn c3() -> Outcome {
    let d = sl2_standard();
    let mut pass = true;
    for conv in CONVENTIONS {
        let ce = ChevalleyEilenberg::new(&d.algebra, conv);
        for l in [rational(1, 1), rational(2, 1), rational(1, 3)] {
            let w = kaehler_form(&d.hermitian.scaled(&l).unwrap());
            pass &= ce.d(&w.power(2)).is_zero() && !ce.d(&w).is_zero();
        }
    }
    outcome(pass, "λ ∈ {1, 2, 1/3}, both conventions")
}

fn c4() -> Outcome {
    let d = sl2_standard();
    let mut pass = true;
    let mut detail = String::new();
    for conv in CONVENTIONS {
        let chern = chern_connection(&d.algebra, conv);
        let skew = torsion_skew_check(&torsion(&d.algebra, &chern), &d.hermitian, &d.dagger).unwrap();
        // ŝ is a multiple of the image of A0∧B0∧C0
        let s = |a, b, c| skew.identified_at(3, a, b, c).clone();
        let base = s(0, 1, 2);
        let image = !base.is_zero() && s(1, 2, 0) == base && s(2, 0, 1) == base && s(1, 0, 2) == -base.clone();
        let hol = holonomy_algebra(&chern, &curvature(&d.algebra, &chern));
        pass &= skew.identified_antisymmetric && image && hol.is_trivial() && su3_containment(&hol, &d.hermitian);
        detail = format!("ŝ^ABC = {base}, raw s skew: {}", skew.raised_antisymmetric);
    }
    let a = sl2_module("wedge2(sym2(V0))").decompose().unwrap().irreps;
    let b = sl2_module("sym2(V0) ⊗ sym2(V0)").decompose().unwrap().irreps;
    pass &= a == BTreeMap::from([(2, 1)]) && b == BTreeMap::from([(0, 1), (2, 1), (4, 1)]);
    outcome(pass, format!("{detail}; ∧²Sym² = {a:?}; Sym²⊗Sym² = {b:?}"))
}

fn c5() -> Outcome {
    let mut pass = true;
    let mut lambdas = Vec::new();
    for conv in CONVENTIONS {
        let r = full_report(&StromingerInstance::canonical(conv)).unwrap();
        let g = &r.gauge_hym;
        let t = &r.torsion_constraint;
        let m = &r.equation_of_motion;
        pass &= [g.verdict, t.verdict, r.conformally_balanced.verdict, m.verdict].iter().all(|v| *v == Verdict::Pass);
        pass &= g.f20.is_empty() && g.f02.is_empty() && g.f_wedge_omega_sq.is_empty();
        pass &= t.lhs.is_empty() && t.residual.is_empty() && t.residual_log.is_empty();
        pass &= r.conformally_balanced.d_omega_sq.is_empty();
        pass &= m.r20.is_empty() && m.r02.is_empty() && m.r_wedge_omega_sq.is_empty();
        pass &= m.lambda_star == Some(GaussRational::zero()) && m.lambda_volume.is_zero() && m.paths_agree;
        lambdas.push(format!("{:?}/{}", m.lambda_star, m.lambda_volume));
    }
    outcome(pass, format!("λ (star/volume) = {lambdas:?}"))
}

/// Returns the outcome and whether the only failing clause is the sign flip.
fn c6() -> (Outcome, bool) {
    let mut c = Vec::new();
    let mut rest = true;
    let mut note = String::new();
    for conv in CONVENTIONS {
        let a = full_report(&StromingerInstance::canonical(conv)).unwrap().anomaly_cancellation;
        rest &= a.c_r == Some(GaussRational::zero()) && a.c_f == Some(GaussRational::zero());
        rest &= a.c_lhs.as_ref() == Some(&kappa(conv)) && !kappa(conv).is_zero();
        rest &= a.alpha_prime == AlphaSolution::Empty && a.verdict == Verdict::NoSolution;
        rest &= a.note.is_some();
        note = a.note.unwrap_or_default();
        c.push(a.c_lhs.unwrap_or_default());
    }
    let flips = c[1] == -c[0].clone();
    let detail = format!(
        "c_LHS = {} (default) / {} (flipped), oracle {} / {}; c_R = c_F = 0; sign flips: {flips}; report note: {note}",
        c[0],
        c[1],
        kappa(CONVENTIONS[0]),
        kappa(CONVENTIONS[1])
    );
    (outcome(rest && flips, detail), rest && !flips && c[0] == c[1])
}

fn c7() -> Outcome {
    let w = kaehler_form(&sl2_standard().hermitian);
    let rep = clock_shift(2).unwrap();
    let u = check_unitary(&rep, DEFAULT_TOLERANCE);
    let zero_residual = u.entries.iter().all(|e| e.exact_zero == Some(true) && e.residual == 0.0);
    let irreducible = commutant(&rep, DEFAULT_TOLERANCE).unwrap().dim;
    let st = stability_report(&FlatBundle::new(rep), &w, DEFAULT_TOLERANCE).unwrap();
    let pres = GroupPresentation::free(&['a', 'b']).unwrap();
    let line = |a: &str, b: &str| {
        UnitaryRep::exact(pres.clone(), vec![CMatrix::scalar(1, a.parse().unwrap()), CMatrix::scalar(1, b.parse().unwrap())])
            .unwrap()
    };
    let sum = line("i", "-1").direct_sum(&line("1", "-i")).unwrap();
    let red = stability_report(&FlatBundle::new(sum), &w, DEFAULT_TOLERANCE).unwrap();
    let pass = zero_residual
        && irreducible == 1
        && st.degree.is_zero()
        && st.verdict == StabilityVerdict::StableIrreducibleFlat
        && red.commutant_dim >= 2
        && red.verdict == StabilityVerdict::CriterionInapplicable;
    outcome(
        pass,
        format!(
            "clock-shift: commutant {irreducible}, degree {}, {}; direct sum: commutant {}, {}",
            st.degree,
            st.verdict.as_str(),
            red.commutant_dim,
            red.verdict.as_str()
        ),
    )
}

fn c8() -> Outcome {
    let d = sl2_standard();
    let w = kaehler_form(&d.hermitian);
    let mut rng = sample::rng(8);
    let mut pass = true;
    let mut values = Vec::new();
    for conv in CONVENTIONS {
        let ce = ChevalleyEilenberg::new(&d.algebra, conv);
        for alpha in [
            InvariantForm::monomial(3, &[1], &[1], GaussRational::i()),
            sample::form(&mut rng, 3, 2),
        ] {
            let base = degree(&alpha, &w);
            for _ in 0..20 {
                let delta = sample::form(&mut rng, 3, 1);
                pass &= degree(&alpha.add(&ce.d(&delta)), &w) == base;
            }
            values.push(base.to_string());
        }
    }
    pass &= values[0] == "4+0i";
    outcome(pass, format!("degrees {values:?}, 20 shifts each"))
}

fn c9() -> Outcome {
    let d = sl2_standard();
    let mut failed = Vec::new();
    for conv in CONVENTIONS {
        let ce = ChevalleyEilenberg::new(&d.algebra, conv);
        let monomial = |m: u32| InvariantForm::from_terms(3, [(m, GaussRational::one())]);
        if !(0u32..64).all(|m| ce.d(&ce.d(&monomial(m))).is_zero()) {
            failed.push("d²");
        }
        let mut rng = sample::rng(9);
        let leibniz = (0..100).all(|k| {
            let (p, q) = (k % 3 + 1, (k / 3) % 3);
            let a = sample::form(&mut rng, 3, p);
            let b = sample::form(&mut rng, 3, q);
            let sign = GaussRational::from_int(if p % 2 == 0 { 1 } else { -1 });
            ce.d(&a.w(&b)) == ce.d(&a).w(&b).add(&a.w(&ce.d(&b)).scale(&sign))
        });
        if !leibniz {
            failed.push("Leibniz");
        }
    }
    for h in [d.hermitian.clone(), stromver_core::lie::HermitianForm::identity(3)] {
        let hs = HodgeStar::new(&h);
        let ok = (0u32..64).all(|m| {
            let f = InvariantForm::from_terms(3, [(m, GaussRational::one())]);
            let sign = GaussRational::from_int(if m.count_ones() % 2 == 0 { 1 } else { -1 });
            hs.star(&hs.star(&f)) == f.scale(&sign)
        });
        if !ok {
            failed.push("⋆⋆");
        }
    }
    let mut rng = sample::rng(99);
    let field = (0..1000).all(|_| {
        let (a, b, c) = (sample::gauss(&mut rng), sample::gauss(&mut rng), sample::nonzero_gauss(&mut rng));
        &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &a + &b == &b + &a
            && &(&a / &c) * &c == a
            && (&c * &c.inv().unwrap()).is_one()
    });
    if !field {
        failed.push("field axioms");
    }
    let modules = ["V0", "g", "gbar", "end(g)", "sym2(V0) ⊗ sym2(V0)", "wedge2(sym2(V0))", "wedge3(dual(g ⊕ gbar))", "sym4(V0) ⊕ C"];
    if !modules.iter().all(|m| sl2_module(m).satisfies_relations()) {
        failed.push("su(2) relations");
    }
    outcome(failed.is_empty(), format!("failed suites: {failed:?}"))
}

fn c10() -> Outcome {
    let mut pass = true;
    for conv in CONVENTIONS {
        let r = full_report(&StromingerInstance::abelian(conv)).unwrap();
        pass &= r.verdicts().iter().all(|(_, v)| *v == Verdict::Pass);
        pass &= r.anomaly_cancellation.alpha_prime == AlphaSolution::All && r.supporting.kaehler;
        let sl2 = full_report(&StromingerInstance::canonical(conv)).unwrap();
        pass &= !sl2.supporting.kaehler;
    }
    outcome(pass, "abelian: all five pass, α′ unconstrained, dω = 0; sl2: dω ≠ 0")
}

fn main() -> ExitCode {
    let (o6, c6_documented) = c6();
    let rows = [
        ("1", "invariant 1-forms vanish", c1()),
        ("2", "invariant 4-forms are spanned by ω²", c2()),
        ("3", "d(ω²) = 0 and dω ≠ 0", c3()),
        ("4", "skew torsion, decompositions, flat holonomy", c4()),
        ("5", "gauge, torsion, balanced and motion equations", c5()),
        ("6", "anomaly constants", o6),
        ("7", "flat bundle stability pipeline", c7()),
        ("8", "degree invariance", c8()),
        ("9", "structural suites", c9()),
        ("10", "Kähler control", c10()),
    ];
    let mut unexpected = false;
    for (id, name, o) in &rows {
        println!("criterion {id:>2} {}: {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        let known = *id == "6" && c6_documented;
        unexpected |= !o.pass && !known;
    }
    if !rows[5].2.pass && c6_documented {
        println!("criterion  6 fails only on the sign flip: i∂∂̄ω is quadratic in the differential, so κ(s) = 2s² is even in s");
    }
    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
