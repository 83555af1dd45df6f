//! Serializable views of core results. Exact rationals travel as `p/q`
//! strings; floats ride alongside as mirrors.

use serde::{Deserialize, Serialize};

use hankel_core::bounds::{BoundReport, StepStatus};
use hankel_core::classes::HankelExpression;
use hankel_core::optimize::OmegaMaximum;
use hankel_core::search::{GapRow, SearchResult};
use hankel_core::{Complex64, SchwarzSample};

use crate::format::{rational, sig17};
use crate::manifest::RunManifest;

fn subscript(k: usize) -> char {
    ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'][k]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Term {
    /// Exponents of `c₁…c₄`.
    pub monomial: [u8; 4],
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoefficientRow {
    pub index: usize,
    pub unicode: String,
    pub latex: String,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DeriveReport {
    pub manifest: RunManifest,
    pub class: String,
    pub relation: String,
    pub coefficients: Vec<CoefficientRow>,
    pub hankel3: String,
    pub grouped: String,
}

fn terms(p: &hankel_core::CoeffPolynomial) -> Vec<Term> {
    p.terms()
        .map(|(m, k)| Term { monomial: *m, coefficient: rational(k) })
        .collect()
}

impl DeriveReport {
    pub fn new(manifest: RunManifest, expr: &HankelExpression) -> Self {
        let coefficients = expr
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, p)| CoefficientRow {
                index: i + 2,
                unicode: p.to_unicode_factored(),
                latex: p.to_latex_factored(),
                terms: terms(p),
            })
            .collect();
        Self {
            manifest,
            class: expr.class.name().into(),
            relation: expr.class.relation().into(),
            coefficients,
            hankel3: expr.polynomial.to_unicode(),
            grouped: expr.grouped().to_unicode(),
        }
    }

    pub fn to_text(&self, latex: bool) -> String {
        let mut s = format!("{}\nclass {}: {}\n", self.manifest.comment_line(), self.class, self.relation);
        for row in &self.coefficients {
            if latex {
                s.push_str(&format!("\\[ a_{{{}}} = {} \\]\n", row.index, row.latex));
            } else {
                s.push_str(&format!("a{}={}\n", subscript(row.index), row.unicode));
            }
        }
        if !latex {
            s.push_str(&format!("H₃(1)={}\n", self.hankel3));
            s.push_str(&format!("H₃(1)={}\n", self.grouped));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StageRow {
    pub index: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StepRow {
    pub index: usize,
    pub description: String,
    pub dominating: String,
    pub verification: String,
    pub detail: String,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LemmaRow {
    pub mu: String,
    pub nu: String,
    pub functional: String,
    pub region: String,
    pub phi: Option<f64>,
    pub used: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PointRow {
    pub x: f64,
    pub y: f64,
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EdgeRow {
    pub edge: String,
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateRow {
    pub resolution: usize,
    pub grid_max: f64,
    pub lipschitz: [f64; 2],
    pub slack: f64,
    pub certified_upper: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OptimizerEvidence {
    pub max: f64,
    pub argmax: [f64; 2],
    pub resultant_roots: Vec<f64>,
    pub interior_critical_points: Vec<PointRow>,
    pub rejected_critical_points: Vec<PointRow>,
    pub boundary_maxima: Vec<EdgeRow>,
    pub certificate: CertificateRow,
}

impl From<&OmegaMaximum> for OptimizerEvidence {
    fn from(m: &OmegaMaximum) -> Self {
        let c = &m.certificate;
        Self {
            max: m.value,
            argmax: [m.argmax.0, m.argmax.1],
            resultant_roots: m.critical.y_roots.clone(),
            interior_critical_points: m
                .critical
                .interior
                .iter()
                .map(|p| PointRow { x: p.x, y: p.y, value: p.value, reason: None })
                .collect(),
            rejected_critical_points: m
                .critical
                .rejected
                .iter()
                .map(|r| PointRow {
                    x: r.point.x,
                    y: r.point.y,
                    value: r.point.value,
                    reason: Some(r.reason.clone()),
                })
                .collect(),
            boundary_maxima: m
                .boundary
                .iter()
                .map(|e| EdgeRow { edge: e.edge.label().into(), x: e.x, y: e.y, value: e.value })
                .collect(),
            certificate: CertificateRow {
                resolution: c.resolution,
                grid_max: c.grid_max,
                lipschitz: [c.lipschitz.0, c.lipschitz.1],
                slack: c.slack,
                certified_upper: c.certified_upper(),
                passed: c.passed,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundJson {
    pub manifest: RunManifest,
    pub class: String,
    /// `p/q` when the bound is rational, otherwise 17 significant digits.
    pub upper_bound: String,
    pub upper_bound_value: f64,
    pub closed_form: String,
    pub exact: bool,
    pub stages: Vec<StageRow>,
    pub steps: Vec<StepRow>,
    pub lemma_invocations: Vec<LemmaRow>,
    pub optimizer_evidence: Option<OptimizerEvidence>,
    pub notes: Vec<String>,
}

impl BoundJson {
    pub fn new(manifest: RunManifest, r: &BoundReport) -> Self {
        let exact = r.closed_form.exact.as_ref();
        Self {
            manifest,
            class: r.class.name().into(),
            upper_bound: exact.map(rational).unwrap_or_else(|| sig17(r.upper_bound)),
            upper_bound_value: r.upper_bound,
            closed_form: r.closed_form.expression.clone(),
            exact: exact.is_some(),
            stages: r
                .stages
                .iter()
                .enumerate()
                .map(|(index, s)| StageRow { index, label: s.label.clone() })
                .collect(),
            steps: r
                .steps
                .iter()
                .map(|s| StepRow {
                    index: s.index,
                    description: s.description.clone(),
                    dominating: s.dominating.clone(),
                    verification: s.verification.name().into(),
                    detail: s.detail.clone(),
                    status: match s.status {
                        StepStatus::Pass => "pass".into(),
                        StepStatus::Fail => "fail".into(),
                    },
                })
                .collect(),
            lemma_invocations: r
                .lemma_invocations
                .iter()
                .map(|l| LemmaRow {
                    mu: rational(&l.mu),
                    nu: rational(&l.nu),
                    functional: l.functional.clone(),
                    region: l.verdict.region.name().into(),
                    phi: l.verdict.phi,
                    used: l.used,
                })
                .collect(),
            optimizer_evidence: r.optimizer.as_ref().map(OptimizerEvidence::from),
            notes: r.notes.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\nclass: {}\n", self.manifest.comment_line(), self.class);
        s.push_str(&format!("upper bound: {}\n", self.upper_bound));
        s.push_str(&format!("closed form: {}\n", self.closed_form));
        s.push_str(&format!("value: {}\n", sig17(self.upper_bound_value)));
        s.push_str("chain:\n");
        for st in &self.stages {
            let rel = if st.index == 0 { "   " } else { "<= " };
            s.push_str(&format!("  S{} {rel}{}\n", st.index, st.label));
        }
        s.push_str("steps:\n");
        for st in &self.steps {
            s.push_str(&format!(
                "  [{}] S{} -> S{} {} ({}): {}\n",
                st.status,
                st.index,
                st.index + 1,
                st.description,
                st.verification,
                st.detail
            ));
        }
        s.push_str("lemma invocations:\n");
        for l in &self.lemma_invocations {
            let phi = l.phi.map(sig17).unwrap_or_else(|| "-".into());
            let tag = if l.used { "" } else { " (classified only)" };
            s.push_str(&format!(
                "  (mu, nu) = ({}, {}) for |{}|: {} phi={}{tag}\n",
                l.mu, l.nu, l.functional, l.region, phi
            ));
        }
        if let Some(o) = &self.optimizer_evidence {
            s.push_str(&format!(
                "optimizer: max h = {} at ({}, {})\n",
                sig17(o.max),
                sig17(o.argmax[0]),
                sig17(o.argmax[1])
            ));
            for p in &o.rejected_critical_points {
                s.push_str(&format!(
                    "  rejected critical point ({}, {}): {}\n",
                    sig17(p.x),
                    sig17(p.y),
                    p.reason.as_deref().unwrap_or("")
                ));
            }
            for e in &o.boundary_maxima {
                s.push_str(&format!(
                    "  edge {}: max {} at ({}, {})\n",
                    e.edge,
                    sig17(e.value),
                    sig17(e.x),
                    sig17(e.y)
                ));
            }
            let c = &o.certificate;
            s.push_str(&format!(
                "  grid {}x{}: max {}, slack {}, certified <= {}, {}\n",
                c.resolution,
                c.resolution,
                sig17(c.grid_max),
                sig17(c.slack),
                sig17(c.certified_upper),
                if c.passed { "pass" } else { "fail" }
            ));
        }
        for n in &self.notes {
            s.push_str(&format!("note: {n}\n"));
        }
        s
    }
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WitnessRow {
    /// `c₁…c₄` as `[re, im]`.
    pub c: Vec<[f64; 2]>,
    pub schur_params: Vec<[f64; 2]>,
}

impl From<&SchwarzSample> for WitnessRow {
    fn from(s: &SchwarzSample) -> Self {
        Self {
            c: s.c.iter().copied().map(pair).collect(),
            schur_params: s.schur_params.iter().copied().map(pair).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GapJson {
    pub class: String,
    pub lower: f64,
    pub upper: f64,
    pub prior: Option<f64>,
    pub ratio: f64,
}

impl From<&GapRow> for GapJson {
    fn from(g: &GapRow) -> Self {
        Self {
            class: g.class.name().into(),
            lower: g.lower,
            upper: g.upper,
            prior: g.prior,
            ratio: g.ratio,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchJson {
    pub class: String,
    pub best_value: f64,
    pub witness: WitnessRow,
    /// `[evaluation, best so far]`.
    pub history: Vec<(u64, f64)>,
    pub class_upper_bound: f64,
    pub evaluations: u64,
    pub gap: GapJson,
}

impl SearchJson {
    pub fn new(r: &SearchResult, gap: &GapRow) -> Self {
        Self {
            class: r.class.name().into(),
            best_value: r.best_value,
            witness: WitnessRow::from(&r.witness),
            history: r.history.clone(),
            class_upper_bound: r.class_upper_bound,
            evaluations: r.evaluations,
            gap: gap.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchReport {
    pub manifest: RunManifest,
    pub results: Vec<SearchJson>,
}

impl SearchReport {
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.manifest.comment_line());
        s.push_str("class        lower                upper                prior        ratio\n");
        for r in &self.results {
            let prior = r.gap.prior.map(sig17).unwrap_or_else(|| "-".into());
            s.push_str(&format!(
                "{:<12} {:<20} {:<20} {:<12} {}\n",
                r.class,
                sig17(r.best_value),
                sig17(r.class_upper_bound),
                prior,
                sig17(r.gap.ratio)
            ));
        }
        for r in &self.results {
            let c: Vec<String> = r
                .witness
                .c
                .iter()
                .map(|[re, im]| {
                    let sign = if im.is_sign_negative() { '-' } else { '+' };
                    format!("{}{sign}{}i", sig17(*re), sig17(im.abs()))
                })
                .collect();
            s.push_str(&format!(
                "{} witness c = [{}] after {} evaluations\n",
                r.class,
                c.join(", "),
                r.evaluations
            ));
        }
        s
    }
}
