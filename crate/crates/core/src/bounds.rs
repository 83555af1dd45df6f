//! The four upper-bound pipelines for `|H₃(1)|`.
//!
//! Every pipeline is a chain of stages `|H₃(1)| = S₀ ≤ S₁ ≤ ⋯ ≤ Sₙ = bound`:
//!
//! 1. `S₁` is the triangle inequality applied to the grouped form.
//! 2. `S₂` replaces each `|c₃ + μc₁c₂ + νc₁³|` by `Φ(μ, ν)` and every other
//!    factor by its modulus majorant in `x = |c₁|`, `y = |c₂|`, `w = |c₄|`.
//! 3. `S₃` applies `|c₄| ≤ 1 − x² − y²`.
//! 4. The remaining stages are polynomials on `Ω` joined by exact identities,
//!    exact sign certificates, or a certified maximization.
//!
//! Stages 1–3 are derived mechanically from the grouped form, so the
//! hand-written later stages are checked against them rather than trusted.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Float, One, Signed};

use crate::bivariate::{BivariatePoly, OmegaDomain};
use crate::certificate::{NonnegAtom, SignCertificate, Var};
use crate::classes::{ClassId, GroupedForm, HankelEvaluator, hankel3_polynomial};
use crate::error::{Error, Result};
use crate::lemmas::{Region, RegionVerdict, SchwarzSample, classify_region_exact};
use crate::optimize::{OmegaMaximum, maximize_on_omega};
use crate::poly::CoeffPolynomial;
use crate::scalar::{q, to_f64};
use crate::univariate::maximize_on_interval;

/// How an [`InequalityStep`] was checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verification {
    /// Triangle inequality on a grouped form whose expansion equals `H₃(1)`.
    GroupedIdentity,
    /// Coefficient-functional bound with a covered region.
    Lemma,
    /// `|c₄| ≤ 1 − x² − y²` with a certified nonnegative weight.
    Carlson,
    /// Exact polynomial equality.
    ExactIdentity,
    /// Exact nonnegativity certificate for the dropped difference.
    ExactSign,
    /// Exact univariate maximization by root isolation.
    IntervalMaximum,
    /// Critical points, edge maxima and a grid with Lipschitz margin.
    GridCertified,
}

impl Verification {
    pub fn name(self) -> &'static str {
        match self {
            Verification::GroupedIdentity => "GROUPED_IDENTITY",
            Verification::Lemma => "LEMMA",
            Verification::Carlson => "CARLSON",
            Verification::ExactIdentity => "EXACT_IDENTITY",
            Verification::ExactSign => "EXACT_SIGN",
            Verification::IntervalMaximum => "INTERVAL_MAXIMUM",
            Verification::GridCertified => "GRID_CERTIFIED",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepStatus {
    Pass,
    Fail,
}

/// `stages[index] ≤ stages[index + 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityStep {
    pub index: usize,
    pub description: String,
    /// `S_{k+1} − S_k` when both sides are polynomials on `Ω`.
    pub dominating: String,
    pub verification: Verification,
    pub detail: String,
    pub status: StepStatus,
}

/// One upper expression in a chain.
#[derive(Debug, Clone, PartialEq)]
pub enum StageExpr {
    /// `|H₃(1)|` itself.
    Modulus,
    /// `Σ |kᵢ| ∏ |pᵢⱼ(c)|^eᵢⱼ` for a grouped form.
    Triangle(GroupedForm),
    /// `base(x, y) + weight(x, y)·|c₄|`.
    WithC4 { base: BivariatePoly, weight: BivariatePoly },
    /// A polynomial in `x = |c₁|`, `y = |c₂|`.
    Omega(BivariatePoly),
    Constant(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    pub label: String,
    pub expr: StageExpr,
}

impl Stage {
    pub fn eval(&self, c: &[Complex64; 4], h3: &HankelEvaluator) -> f64 {
        let (x, y) = (c[0].norm(), c[1].norm());
        match &self.expr {
            StageExpr::Modulus => h3.eval(c).norm(),
            StageExpr::Triangle(form) => triangle_eval(form, c),
            StageExpr::WithC4 { base, weight } => {
                base.to_float().eval(x, y) + weight.to_float().eval(x, y) * c[3].norm()
            }
            StageExpr::Omega(p) => p.to_float().eval(x, y),
            StageExpr::Constant(v) => *v,
        }
    }
}

fn triangle_eval(form: &GroupedForm, c: &[Complex64; 4]) -> f64 {
    let s: f64 = form
        .terms
        .iter()
        .map(|t| {
            t.factors
                .iter()
                .fold(to_f64(&t.coefficient).abs(), |acc, (p, e)| acc * p.eval(c).norm().powi(*e as i32))
        })
        .sum();
    s * to_f64(&form.scale).abs()
}

/// A use of the region classifier.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaInvocation {
    pub mu: BigRational,
    pub nu: BigRational,
    pub functional: String,
    pub verdict: RegionVerdict,
    /// `false` for pairs that are only classified for the record and not
    /// used by the chain.
    pub used: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForm {
    pub expression: String,
    pub value: f64,
    pub exact: Option<BigRational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub class: ClassId,
    pub upper_bound: f64,
    pub closed_form: ClosedForm,
    pub stages: Vec<Stage>,
    pub steps: Vec<InequalityStep>,
    pub lemma_invocations: Vec<LemmaInvocation>,
    /// Starlike only.
    pub optimizer: Option<OmegaMaximum>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominanceViolation {
    pub stage: usize,
    pub sample: usize,
    pub lower: f64,
    pub upper: f64,
}

impl BoundReport {
    pub fn all_steps_pass(&self) -> bool {
        self.steps.iter().all(|s| s.status == StepStatus::Pass)
    }

    /// Evaluates every stage at every sample and returns the places where a
    /// later stage falls more than `tol` below the previous one.
    pub fn check_dominance(&self, samples: &[SchwarzSample], tol: f64) -> Result<Vec<DominanceViolation>> {
        let h3 = HankelEvaluator::new(self.class)?;
        let mut out = Vec::new();
        for (n, s) in samples.iter().enumerate() {
            let values: Vec<f64> = self.stages.iter().map(|st| st.eval(&s.c, &h3)).collect();
            for k in 1..values.len() {
                if values[k] < values[k - 1] - tol {
                    out.push(DominanceViolation {
                        stage: k,
                        sample: n,
                        lower: values[k - 1],
                        upper: values[k],
                    });
                }
            }
        }
        Ok(out)
    }
}

/// `h(x, y) = −(9/8)x²y² − 9x²y + 9x² + 6x³ − 9x⁴ + 9y − 9y³`.
pub fn starlike_h() -> BivariatePoly {
    BivariatePoly::from_terms([
        (q(-9, 8), 2, 2),
        (q(-9, 1), 2, 1),
        (q(9, 1), 2, 0),
        (q(6, 1), 3, 0),
        (q(-9, 1), 4, 0),
        (q(9, 1), 0, 1),
        (q(-9, 1), 0, 3),
    ])
}

pub fn bound_for(class: ClassId) -> Result<BoundReport> {
    match class {
        ClassId::Starlike => bound_starlike(),
        ClassId::SymmetricPoints => bound_symmetric_points(),
        ClassId::Exponential => bound_exponential(),
        ClassId::Lune => bound_lune(),
    }
}

/// Polynomial in `w = |c₄|` with coefficients in `ℚ[x, y]`.
#[derive(Debug, Clone)]
struct WPoly(Vec<BivariatePoly>);

impl WPoly {
    fn constant(k: BigRational) -> Self {
        WPoly(vec![BivariatePoly::constant(k)])
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        WPoly(
            (0..n)
                .map(|i| {
                    let z = BivariatePoly::zero();
                    self.0.get(i).unwrap_or(&z).add(other.0.get(i).unwrap_or(&z))
                })
                .collect(),
        )
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BivariatePoly::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        WPoly(out)
    }

    fn scale(&self, k: &BigRational) -> Self {
        WPoly(self.0.iter().map(|p| p.scale(k)).collect())
    }
}

const C3: [u8; 4] = [0, 0, 1, 0];
const C1C2: [u8; 4] = [1, 1, 0, 0];
const C1_3: [u8; 4] = [3, 0, 0, 0];

/// `(μ, ν)` if `p = c₃ + μc₁c₂ + νc₁³`.
fn lemma_functional(p: &CoeffPolynomial) -> Option<(BigRational, BigRational)> {
    if !p.coeff(&C3).is_one() || !p.terms().all(|(m, _)| [C3, C1C2, C1_3].contains(m)) {
        return None;
    }
    Some((p.coeff(&C1C2), p.coeff(&C1_3)))
}

fn phi_exact(region: Region, nu: &BigRational) -> Option<BigRational> {
    match region {
        Region::D1 | Region::D2 | Region::Point21 => Some(BigRational::one()),
        Region::Uncovered => None,
        _ => Some(nu.abs()),
    }
}

fn invoke(
    mu: BigRational,
    nu: BigRational,
    functional: String,
    used: bool,
    record: &mut Vec<LemmaInvocation>,
) -> Result<RegionVerdict> {
    let verdict = classify_region_exact(&mu, &nu);
    if !verdict.is_covered() {
        return Err(Error::PipelineFailure {
            step: format!("lemma at ({}, {})", ratio(&mu), ratio(&nu)),
            reason: "region not covered".into(),
        });
    }
    if !record.iter().any(|r| r.mu == mu && r.nu == nu) {
        record.push(LemmaInvocation { mu, nu, functional, verdict, used });
    }
    Ok(verdict)
}

/// Modulus majorant of one factor; lemma functionals become `Φ`.
fn factor_majorant(p: &CoeffPolynomial, record: &mut Vec<LemmaInvocation>) -> Result<WPoly> {
    if let Some((mu, nu)) = lemma_functional(p) {
        let verdict = invoke(mu.clone(), nu.clone(), p.to_unicode(), true, record)?;
        let phi = phi_exact(verdict.region, &nu).expect("covered");
        return Ok(WPoly::constant(phi));
    }
    let mut out = WPoly(vec![BivariatePoly::zero()]);
    for (m, k) in p.terms() {
        if m[2] > 0 {
            return Err(Error::PipelineFailure {
                step: "lemma substitution".into(),
                reason: format!("c₃ appears outside a bounded functional in {}", p.to_unicode()),
            });
        }
        let mut w = vec![BivariatePoly::zero(); usize::from(m[3]) + 1];
        w[usize::from(m[3])] = BivariatePoly::term(k.abs(), u32::from(m[0]), u32::from(m[1]));
        out = out.add(&WPoly(w));
    }
    Ok(out)
}

fn ratio(r: &BigRational) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn triangle_label(form: &GroupedForm) -> String {
    let mut body = String::new();
    for (i, t) in form.terms.iter().enumerate() {
        if i > 0 {
            body.push('+');
        }
        let k = t.coefficient.abs();
        if !k.is_one() {
            body.push_str(&if k.is_integer() { ratio(&k) } else { format!("({})", ratio(&k)) });
        }
        for (p, e) in &t.factors {
            body.push('|');
            body.push_str(&p.to_unicode());
            body.push('|');
            if *e > 1 {
                body.push(['⁰', '¹', '²', '³', '⁴'][(*e as usize).min(4)]);
            }
        }
    }
    if form.scale.is_one() {
        body
    } else {
        format!("({})[{}]", ratio(&form.scale.abs()), body)
    }
}

fn omega_label(p: &BivariatePoly) -> String {
    p.to_unicode()
}

/// Shared opening of every chain: `S₀ … S₃`.
struct Prefix {
    stages: Vec<Stage>,
    steps: Vec<InequalityStep>,
    invocations: Vec<LemmaInvocation>,
    /// `S₃` as a polynomial on `Ω`.
    carlson: BivariatePoly,
}

fn prefix(class: ClassId) -> Result<Prefix> {
    let expr = hankel3_polynomial(class.into())?;
    let form = expr.grouped().clone();
    let mut invocations = Vec::new();

    let mut total = WPoly(vec![BivariatePoly::zero()]);
    for t in &form.terms {
        let mut acc = WPoly::constant(t.coefficient.abs());
        for (p, e) in &t.factors {
            let m = factor_majorant(p, &mut invocations)?;
            for _ in 0..*e {
                acc = acc.mul(&m);
            }
        }
        total = total.add(&acc);
    }
    let total = total.scale(&form.scale.abs());
    if total.0.len() > 2 {
        return Err(Error::PipelineFailure {
            step: "lemma substitution".into(),
            reason: "|c₄| appears nonlinearly".into(),
        });
    }
    let base = total.0[0].clone();
    let weight = total.0.get(1).cloned().unwrap_or_default();

    let mut stages = vec![
        Stage { label: "|H₃(1)|".into(), expr: StageExpr::Modulus },
        Stage { label: triangle_label(&form), expr: StageExpr::Triangle(form.clone()) },
        Stage {
            label: format!("{}+({})|c₄|", omega_label(&base), omega_label(&weight)),
            expr: StageExpr::WithC4 { base: base.clone(), weight: weight.clone() },
        },
    ];
    let carlson = base.add(&weight.mul(&OmegaDomain::gap().sub(&BivariatePoly::y().pow(2))));
    stages.push(Stage { label: omega_label(&carlson), expr: StageExpr::Omega(carlson.clone()) });

    let lemma_detail = invocations
        .iter()
        .map(|i| {
            format!(
                "({}, {}) in {} with phi = {}",
                ratio(&i.mu),
                ratio(&i.nu),
                i.verdict.region.name(),
                i.verdict.phi.unwrap_or(f64::NAN)
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    let lemma_ok = invocations.iter().all(|i| i.verdict.is_covered());

    let weight_cert = monomial_certificate(&weight);
    let weight_ok = weight_cert.verify(&weight).is_ok();

    let steps = vec![
        InequalityStep {
            index: 0,
            description: "triangle inequality on the grouped form".into(),
            dominating: String::from("|Σ tᵢ| ≤ Σ |tᵢ|"),
            verification: Verification::GroupedIdentity,
            detail: format!("grouped form expands to H₃(1) = {}", expr.polynomial.to_unicode()),
            status: StepStatus::Pass,
        },
        InequalityStep {
            index: 1,
            description: "coefficient functionals bounded by Phi; other factors by modulus".into(),
            dominating: String::from("Φ − |c₃+μc₁c₂+νc₁³| ≥ 0"),
            verification: Verification::Lemma,
            detail: lemma_detail,
            status: status(lemma_ok),
        },
        InequalityStep {
            index: 2,
            description: "|c₄| ≤ 1 − |c₁|² − |c₂|²".into(),
            dominating: format!("({})(1−x²−y²−|c₄|)", omega_label(&weight)),
            verification: Verification::Carlson,
            detail: format!("weight = {weight_cert} ≥ 0"),
            status: status(weight_ok),
        },
    ];
    Ok(Prefix { stages, steps, invocations, carlson })
}

fn status(ok: bool) -> StepStatus {
    if ok { StepStatus::Pass } else { StepStatus::Fail }
}

/// Certificate for a polynomial whose coefficients are all nonnegative.
fn monomial_certificate(p: &BivariatePoly) -> SignCertificate {
    p.terms().fold(SignCertificate::new(), |cert, (&(i, j), k)| {
        let atoms = core::iter::repeat_n(NonnegAtom::X, i as usize)
            .chain(core::iter::repeat_n(NonnegAtom::Y, j as usize));
        cert.term(k.clone(), atoms)
    })
}

/// Builder for the polynomial tail of a chain.
struct Chain {
    prefix: Prefix,
    current: BivariatePoly,
}

impl Chain {
    fn new(prefix: Prefix) -> Self {
        let current = prefix.carlson.clone();
        Self { prefix, current }
    }

    fn index(&self) -> usize {
        self.prefix.stages.len() - 1
    }

    fn push(&mut self, next: BivariatePoly, description: &str, verification: Verification, detail: String, ok: bool) {
        let diff = next.sub(&self.current);
        self.prefix.steps.push(InequalityStep {
            index: self.index(),
            description: description.into(),
            dominating: omega_label(&diff),
            verification,
            detail,
            status: status(ok),
        });
        self.prefix.stages.push(Stage { label: omega_label(&next), expr: StageExpr::Omega(next.clone()) });
        self.current = next;
    }

    fn identity(&mut self, next: BivariatePoly, description: &str) {
        let ok = next == self.current;
        self.push(next, description, Verification::ExactIdentity, "difference is the zero polynomial".into(), ok);
    }

    fn drop_terms(&mut self, next: BivariatePoly, description: &str, cert: SignCertificate) {
        let diff = next.sub(&self.current);
        let verdict = cert.verify(&diff);
        let mut detail = format!("difference = {cert}");
        for qa in cert.quadratics() {
            let d = qa.discriminant().expect("quadratic");
            detail.push_str(&format!("; discriminant of {qa} is {} < 0", ratio(&d)));
        }
        if let Err(e) = &verdict {
            detail.push_str(&format!("; {e}"));
        }
        self.push(next, description, Verification::ExactSign, detail, verdict.is_ok());
    }

    /// Closes the chain with a constant stage.
    fn finish(mut self, value: f64, label: String, step: InequalityStep) -> (Vec<Stage>, Vec<InequalityStep>, Vec<LemmaInvocation>) {
        self.prefix.steps.push(step);
        self.prefix.stages.push(Stage { label, expr: StageExpr::Constant(value) });
        (self.prefix.stages, self.prefix.steps, self.prefix.invocations)
    }
}

fn poly(terms: &[(i64, i64, u32, u32)]) -> BivariatePoly {
    BivariatePoly::from_terms(terms.iter().map(|&(n, d, i, j)| (q(n, d), i, j)))
}

fn ensure_passed(class: ClassId, steps: &[InequalityStep]) -> Result<()> {
    if let Some(s) = steps.iter().find(|s| s.status == StepStatus::Fail) {
        return Err(Error::PipelineFailure {
            step: format!("{class} step {}: {}", s.index, s.description),
            reason: s.detail.clone(),
        });
    }
    Ok(())
}

fn record_classified_only(mu: BigRational, nu: BigRational, functional: &str, invocations: &mut Vec<LemmaInvocation>) -> Result<()> {
    invoke(mu, nu, functional.to_owned(), false, invocations).map(|_| ())
}

pub fn bound_starlike() -> Result<BoundReport> {
    let class = ClassId::Starlike;
    let mut chain = Chain::new(prefix(class)?);
    record_classified_only(q(-5, 4), q(0, 1), "c₃-(5/4)c₁c₂", &mut chain.prefix.invocations)?;

    let h = starlike_h();
    let s4 = h.add(&BivariatePoly::constant(q(8, 1))).scale(&q(1, 18));
    chain.identity(s4, "collect into (8 + h(x, y))/18");

    let opt = maximize_on_omega(&h)?;
    let value = (8.0 + opt.value) / 18.0;
    let c = &opt.certificate;
    let detail = format!(
        "max h = {} at ({}, {}); {} interior critical points, {} rejected; grid {}x{} max {} with slack {}",
        opt.value,
        opt.argmax.0,
        opt.argmax.1,
        opt.critical.interior.len(),
        opt.critical.rejected.len(),
        c.resolution,
        c.resolution,
        c.grid_max,
        c.slack
    );
    let step = InequalityStep {
        index: chain.index(),
        description: "global maximum of h over Omega".into(),
        dominating: format!("{} − h(x, y) ≥ 0 on Ω", opt.value),
        verification: Verification::GridCertified,
        detail,
        status: status(c.passed),
    };
    let (stages, steps, lemma_invocations) = chain.finish(value, format!("(8 + {})/18", opt.value), step);
    ensure_passed(class, &steps)?;
    Ok(BoundReport {
        class,
        upper_bound: value,
        closed_form: ClosedForm {
            expression: format!("(8 + max h)/18 = (8 + {})/18", opt.value),
            value,
            exact: None,
        },
        stages,
        steps,
        lemma_invocations,
        optimizer: Some(opt),
        notes: vec![
            "the functional bounded with Phi is c₃-(5/8)c₁c₂, squared; (-5/4, 0) is classified for comparison and lies in D2 as well".into(),
        ],
    })
}

pub fn bound_symmetric_points() -> Result<BoundReport> {
    let class = ClassId::SymmetricPoints;
    let mut chain = Chain::new(prefix(class)?);

    // ¼[1 − 2x²y(1 − y) + 2y − 2y³]
    let s4 = poly(&[(1, 4, 0, 0), (-1, 2, 2, 1), (1, 2, 2, 2), (1, 2, 0, 1), (-1, 2, 0, 3)]);
    chain.identity(s4, "regroup as 1 − 2x²y(1−y) + 2y − 2y³");
    let s5 = poly(&[(1, 4, 0, 0), (1, 2, 0, 1), (-1, 2, 0, 3)]);
    let cert = SignCertificate::new().term(
        q(1, 2),
        [NonnegAtom::X, NonnegAtom::X, NonnegAtom::Y, NonnegAtom::OneMinusY],
    );
    chain.drop_terms(s5.clone(), "drop −2x²y(1−y)", cert);

    let closed = 0.25 + 1.0 / (3.0 * Float::sqrt(3.0));
    let u = s5.at_x(&q(0, 1));
    let (arg, max, crit) = maximize_on_interval(&u, &q(0, 1), &q(1, 1))?;
    let ok = s5.degree_x() == 0
        && (max - closed).abs() <= 1e-12
        && (arg - 1.0 / Float::sqrt(3.0)).abs() <= 1e-12;
    let step = InequalityStep {
        index: chain.index(),
        description: "maximum of (1 + 2y − 2y³)/4 on [0, 1]".into(),
        dominating: "1/4 + 1/(3√3) − (1 + 2y − 2y³)/4 ≥ 0".into(),
        verification: Verification::IntervalMaximum,
        detail: format!("{} critical root(s); argmax y = {arg}; max = {max}", crit.len()),
        status: status(ok),
    };
    let (stages, steps, lemma_invocations) = chain.finish(closed, "1/4 + 1/(3*sqrt(3))".into(), step);
    ensure_passed(class, &steps)?;
    Ok(BoundReport {
        class,
        upper_bound: closed,
        closed_form: ClosedForm { expression: "1/4 + 1/(3*sqrt(3))".into(), value: closed, exact: None },
        stages,
        steps,
        lemma_invocations,
        optimizer: None,
        notes: Vec::new(),
    })
}

/// Tail shared by the exponential and lune chains, which differ only in
/// the certificate of the last step.
fn seventeen_over_72(
    class: ClassId,
    expanded: BivariatePoly,
    regrouped: BivariatePoly,
    final_cert: SignCertificate,
    classified_only: Option<(BigRational, BigRational, &str)>,
    notes: Vec<String>,
) -> Result<BoundReport> {
    let mut chain = Chain::new(prefix(class)?);
    if let Some((mu, nu, f)) = classified_only {
        record_classified_only(mu, nu, f, &mut chain.prefix.invocations)?;
    }
    chain.identity(expanded.clone(), "expand the |c₄| bound");
    let replaced = expanded
        .sub(&poly(&[(1, 8, 0, 1)]))
        .add(&poly(&[(1, 8, 0, 0), (-1, 8, 2, 0)]));
    chain.drop_terms(
        replaced,
        "|c₂| ≤ 1 − |c₁|² in the linear term",
        SignCertificate::new().term(q(1, 8), [NonnegAtom::OmegaGap]),
    );
    chain.identity(regrouped, "regroup around 17/72");
    let exact = q(17, 72);
    let target = BivariatePoly::constant(exact.clone());
    let diff = target.sub(&chain.current);
    let verdict = final_cert.verify(&diff);
    let mut detail = format!("17/72 − S = {final_cert}");
    for qa in final_cert.quadratics() {
        let d = qa.discriminant().expect("quadratic");
        detail.push_str(&format!("; discriminant of {qa} is {} < 0", ratio(&d)));
    }
    let step = InequalityStep {
        index: chain.index(),
        description: "drop the nonpositive terms".into(),
        dominating: omega_label(&diff),
        verification: Verification::ExactSign,
        detail,
        status: status(verdict.is_ok()),
    };
    let value = to_f64(&exact);
    let (stages, steps, lemma_invocations) = chain.finish(value, "17/72".into(), step);
    ensure_passed(class, &steps)?;
    Ok(BoundReport {
        class,
        upper_bound: value,
        closed_form: ClosedForm { expression: "17/72".into(), value, exact: Some(exact) },
        stages,
        steps,
        lemma_invocations,
        optimizer: None,
        notes,
    })
}

fn quad(b: BigRational) -> NonnegAtom {
    NonnegAtom::PositiveQuadratic { var: Var::X, a: q(1, 1), b, c: q(1, 1) }
}

pub fn bound_exponential() -> Result<BoundReport> {
    use NonnegAtom::{X, Y};
    // 1/9 − x²y²/256 + 17x³/432 + y/8 − x²y/8 − y³/8 + x²/16 − x⁴/16
    let expanded = poly(&[
        (1, 9, 0, 0),
        (-1, 256, 2, 2),
        (17, 432, 3, 0),
        (1, 8, 0, 1),
        (-1, 8, 2, 1),
        (-1, 8, 0, 3),
        (1, 16, 2, 0),
        (-1, 16, 4, 0),
    ]);
    // 17/72 − x²y²/256 − (x²/16)(1 − 17x/27 + x²) − x²y/8 − y³/8
    let regrouped = BivariatePoly::constant(q(17, 72))
        .sub(&poly(&[(1, 256, 2, 2)]))
        .sub(&poly(&[(1, 16, 2, 0)]).mul(&quad(q(-17, 27)).poly()))
        .sub(&poly(&[(1, 8, 2, 1), (1, 8, 0, 3)]));
    let cert = SignCertificate::new()
        .term(q(1, 256), [X, X, Y, Y])
        .term(q(1, 16), [X, X, quad(q(-17, 27))])
        .term(q(1, 8), [X, X, Y])
        .term(q(1, 8), [Y, Y, Y]);
    seventeen_over_72(
        ClassId::Exponential,
        expanded,
        regrouped,
        cert,
        Some((q(-15, 16), q(0, 1), "c₃-(15/16)c₁c₂")),
        vec!["the squared functional is c₃-(5/16)c₁c₂; (-15/16, 0) is classified for comparison".into()],
    )
}

pub fn bound_lune() -> Result<BoundReport> {
    use NonnegAtom::{X, Y};
    let expanded = poly(&[
        (1, 9, 0, 0),
        (15, 256, 2, 2),
        (11, 144, 3, 0),
        (1, 8, 0, 1),
        (-1, 8, 2, 1),
        (-1, 8, 0, 3),
        (1, 16, 2, 0),
        (-1, 16, 4, 0),
    ]);
    let lin = NonnegAtom::LinearUnit { var: Var::Y, a: q(1, 1), b: q(-15, 32) };
    // 17/72 − (x²y/8)(1 − 15y/32) − (x²/16)(x² − 11x/9 + 1) − y³/8
    let regrouped = BivariatePoly::constant(q(17, 72))
        .sub(&poly(&[(1, 8, 2, 1)]).mul(&lin.poly()))
        .sub(&poly(&[(1, 16, 2, 0)]).mul(&quad(q(-11, 9)).poly()))
        .sub(&poly(&[(1, 8, 0, 3)]));
    let cert = SignCertificate::new()
        .term(q(1, 8), [X, X, Y, lin])
        .term(q(1, 16), [X, X, quad(q(-11, 9))])
        .term(q(1, 8), [Y, Y, Y]);
    seventeen_over_72(ClassId::Lune, expanded, regrouped, cert, None, Vec::new())
}

/// Convenience for reports: `value` as `p/q` when exact.
pub fn exact_string(r: &BigRational) -> String {
    ratio(r)
}

impl core::fmt::Display for StepStatus {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            StepStatus::Pass => "pass",
            StepStatus::Fail => "fail",
        })
    }
}

impl BoundReport {
    /// The upper bound as text: `p/q` when exact, otherwise the float.
    pub fn upper_bound_text(&self) -> String {
        match &self.closed_form.exact {
            Some(r) => ratio(r),
            None => self.upper_bound.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lemmas::sample_schwarz;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn starlike_value() {
        let r = bound_starlike().unwrap();
        assert!((r.upper_bound - 0.777_986_938_337_456).abs() < 1e-12);
        assert!(r.all_steps_pass());
        let used: Vec<_> = r.lemma_invocations.iter().filter(|i| i.used).collect();
        assert_eq!(used.len(), 2);
        assert!(used.iter().all(|i| i.verdict.phi == Some(1.0)));
    }

    #[test]
    fn symmetric_value() {
        let r = bound_symmetric_points().unwrap();
        assert!((r.upper_bound - 0.442_450_089_729_875).abs() < 1e-12);
        assert_eq!(r.lemma_invocations.len(), 1);
        assert_eq!(r.lemma_invocations[0].mu, q(-1, 1));
    }

    #[test]
    fn exponential_and_lune_are_exact() {
        for r in [bound_exponential().unwrap(), bound_lune().unwrap()] {
            assert_eq!(r.closed_form.exact, Some(q(17, 72)));
            assert_eq!(r.upper_bound_text(), "17/72");
            assert!(r.all_steps_pass());
        }
    }

    #[test]
    fn exponential_discriminant_reported() {
        let r = bound_exponential().unwrap();
        let last = r.steps.last().unwrap();
        assert!(last.detail.contains("-2627/729"), "{}", last.detail);
        let r = bound_lune().unwrap();
        assert!(r.steps.last().unwrap().detail.contains("-203/81"));
    }

    #[test]
    fn chains_are_monotone_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let samples = sample_schwarz(&mut rng, 500);
        for class in ClassId::ALL {
            let r = bound_for(class).unwrap();
            let v = r.check_dominance(&samples, 1e-9).unwrap();
            assert!(v.is_empty(), "{class}: {:?}", &v[..v.len().min(3)]);
        }
    }

    #[test]
    fn a_wrong_certificate_fails_the_pipeline() {
        let mut chain = Chain::new(prefix(ClassId::Lune).unwrap());
        chain.drop_terms(
            BivariatePoly::zero(),
            "bogus",
            SignCertificate::new().term(q(1, 1), [NonnegAtom::X]),
        );
        assert!(ensure_passed(ClassId::Lune, &chain.prefix.steps).is_err());
    }
}
