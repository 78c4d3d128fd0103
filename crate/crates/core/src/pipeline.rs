//! End-to-end verification: matrix or (cubic, line) in, [`PipelineReport`] out.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::determinantal::{
    associated_conic, build_cubic, discriminant, extract_matrix, verify_det_identity, CubicThreefold,
    SymmetricMatrixRep,
};
use crate::error::{Error, Result};
use crate::geometry::{
    contains_line, even_contact_check, is_node, move_line_to_standard, share_component,
    singular_points_plane_curve, smoothness_search, ContactReport, ContactVerdict, ProjLine, ProjPoint,
    SmoothnessCertificate,
};
use crate::poly::Poly;
use crate::scalar::Domain;

pub const VERDICT_VERIFIED: &str = "quintic-odd-theta verified (bounded)";

/// Exit status of a report: verified, violation, usage error, inconclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Verified,
    Violation,
    Inconclusive,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Verified => 0,
            Outcome::Violation => 1,
            Outcome::Inconclusive => 3,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PipelineOptions {
    /// Largest extension degree searched for points of plane curves.
    pub ext_depth: u32,
    /// Largest extension degree searched for singular points of the cubic in `P^4`.
    pub smooth_depth: u32,
    pub order_bound: u32,
    /// Permit characteristics 3 and 5.
    pub allow_small_char: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { ext_depth: 2, smooth_depth: 2, order_bound: crate::geometry::DEFAULT_ORDER_BOUND, allow_small_char: false }
    }
}

pub enum PipelineInput {
    Matrix(SymmetricMatrixRep),
    CubicWithLine { cubic: Poly, line: ProjLine },
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularPointReport {
    pub point: ProjPoint,
    pub extension_degree: u32,
    pub node: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub input: String,
    pub field: String,
    pub ext_depth: u32,
    pub smooth_depth: u32,
    pub order_bound: u32,
    pub matrix: BTreeMap<String, String>,
    pub cubic: String,
    pub discriminant: String,
    pub conic: String,
    pub det_identity: bool,
    pub reducible_discriminant: bool,
    pub singular_points: Vec<SingularPointReport>,
    pub nodal: Option<bool>,
    pub contact: Option<ContactReport>,
    pub smoothness: Option<SmoothnessCertificate>,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
    pub outcome: Outcome,
    pub verdict: String,
}

impl PipelineReport {
    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    /// Human-readable summary, one fact per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("input: {}", self.input));
        line(format!(
            "field: {} (extension depth {}, smoothness depth {}, order bound {})",
            self.field, self.ext_depth, self.smooth_depth, self.order_bound
        ));
        for (label, entry) in &self.matrix {
            line(format!("  {label} = {entry}"));
        }
        line(format!("F = {}", self.cubic));
        line(format!("Delta = {}", self.discriminant));
        line(format!("h = {}", self.conic));
        line(format!("det identity: {}", if self.det_identity { "ok" } else { "FAILED" }));
        if self.reducible_discriminant {
            line("Delta shares a component with h (reducible discriminant)".into());
        }
        if !self.singular_points.is_empty() || self.nodal.is_some() {
            line(format!("singular points of Delta: {}", self.singular_points.len()));
        }
        for s in &self.singular_points {
            let kind = if s.node { "node" } else { "not a node" };
            line(format!("  {} over degree {}: {kind}", s.point, s.extension_degree));
        }
        if let Some(c) = &self.contact {
            line(format!(
                "contact with h: {} point(s), total {} of {}, {}",
                c.points.len(),
                c.total,
                c.bezout,
                if c.all_even { "all even" } else { "odd multiplicity present" }
            ));
            for p in &c.points {
                line(format!("  {} over degree {}: multiplicity {}", p.point, p.field_degree, p.multiplicity));
            }
        }
        if let Some(s) = &self.smoothness {
            match s.singular_point() {
                Some(p) => line(format!("cubic threefold: singular at {p}")),
                None => line(format!(
                    "cubic threefold: no singular point over GF({}^k), k <= {} (bounded search, not a proof of smoothness)",
                    s.p, s.k_max
                )),
            }
        }
        for v in &self.violations {
            line(format!("violation: {v}"));
        }
        for n in &self.notes {
            line(format!("note: {n}"));
        }
        line(format!("verdict: {}", self.verdict));
        out
    }
}

fn check_characteristic(domain: &Domain, opts: &PipelineOptions) -> Result<()> {
    let p = domain.characteristic();
    if p == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if (p == 3 || p == 5) && !opts.allow_small_char {
        return Err(Error::InvalidField(format!(
            "characteristic {p} divides a degree used by the checks; pass --allow-small-char to proceed"
        )));
    }
    Ok(())
}

/// Runs every check on the input and collects the results.
///
/// Errors are reserved for unusable input (wrong field, characteristic 2); mathematical
/// failures are reported as violations.
pub fn run_pipeline(input: PipelineInput, description: &str, opts: &PipelineOptions) -> Result<PipelineReport> {
    let mut violations = Vec::new();
    let mut notes = Vec::new();

    let (matrix, cubic) = match input {
        PipelineInput::Matrix(a) => {
            check_characteristic(a.domain(), opts)?;
            let cubic = build_cubic(&a)?;
            (Some(a), cubic)
        }
        PipelineInput::CubicWithLine { cubic, line } => {
            check_characteristic(cubic.domain(), opts)?;
            let cubic = CubicThreefold::new(cubic)?;
            if !contains_line(cubic.form(), &line)? {
                violations.push("the cubic does not contain the given line".to_string());
                (None, cubic)
            } else {
                let moved = move_line_to_standard(&line)?.push_forward_form(cubic.form())?;
                let a = extract_matrix(&CubicThreefold::new(moved)?)?;
                (Some(a), cubic)
            }
        }
    };
    let domain = cubic.form().domain().clone();
    let p = domain.characteristic();
    if p == 3 || p == 5 {
        notes.push(format!("small characteristic {p}: results may not lift to characteristic 0"));
    }

    let mut report = PipelineReport {
        input: description.to_string(),
        field: domain.to_string(),
        ext_depth: opts.ext_depth,
        smooth_depth: opts.smooth_depth,
        order_bound: opts.order_bound,
        matrix: BTreeMap::new(),
        cubic: cubic.form().to_string(),
        discriminant: String::new(),
        conic: String::new(),
        det_identity: false,
        reducible_discriminant: false,
        singular_points: Vec::new(),
        nodal: None,
        contact: None,
        smoothness: None,
        violations: Vec::new(),
        notes: Vec::new(),
        outcome: Outcome::Inconclusive,
        verdict: String::new(),
    };

    let Some(a) = matrix else {
        return Ok(finish(report, violations, notes, false));
    };
    for (label, entry, _) in a.labeled_entries() {
        report.matrix.insert(label.to_string(), entry.to_string());
    }
    let delta = discriminant(&a);
    let h = associated_conic(&a);
    report.discriminant = delta.form().to_string();
    report.conic = h.form().to_string();
    report.det_identity = verify_det_identity(&a);
    if !report.det_identity {
        violations.push("det A differs from f h - (l3 q1^2 - 2 l2 q1 q2 + l1 q2^2)".into());
    }
    if delta.is_degenerate() {
        violations.push("det A vanishes identically".into());
    }
    if h.is_degenerate() {
        violations.push("the conic h = l1 l3 - l2^2 vanishes identically".into());
    }

    if domain.field().is_none() {
        notes.push("point searches need a finite field; rerun with --field fp:<p>".into());
        return Ok(finish(report, violations, notes, false));
    }

    let mut contact_unverified = false;
    if !delta.is_degenerate() {
        for k in 1..=opts.ext_depth {
            for point in singular_points_plane_curve(delta.form(), p, k)? {
                if point.definition_degree() != k {
                    continue;
                }
                let node = is_node(delta.form(), &point)?;
                if !node {
                    violations.push(format!("Delta has a singular point at {point} that is not a node"));
                }
                report.singular_points.push(SingularPointReport { point, extension_degree: k, node });
            }
        }
        report.nodal = Some(report.singular_points.iter().all(|s| s.node));
    }

    if !delta.is_degenerate() && !h.is_degenerate() {
        if share_component(delta.form(), h.form())? {
            report.reducible_discriminant = true;
            contact_unverified = true;
            notes.push("Delta and h share a component; the contact test does not apply".into());
        } else {
            let contact = even_contact_check(delta.form(), h.form(), p, opts.ext_depth, opts.order_bound)?;
            match contact.verdict {
                ContactVerdict::OddContact => {
                    violations.push("h meets Delta with odd multiplicity".into());
                }
                ContactVerdict::Incomplete => {
                    contact_unverified = true;
                    notes.push(format!(
                        "contact total {} of {} found over extensions of degree <= {}; raise --ext-depth",
                        contact.total, contact.bezout, opts.ext_depth
                    ));
                }
                ContactVerdict::EvenComplete => {}
            }
            report.contact = Some(contact);
        }
    }

    let smoothness = smoothness_search(cubic.form(), 4, p, opts.smooth_depth)?;
    if let Some(point) = smoothness.singular_point() {
        violations.push(format!("the cubic threefold is singular at {point}"));
    }
    report.smoothness = Some(smoothness);
    Ok(finish(report, violations, notes, !contact_unverified))
}

fn finish(mut report: PipelineReport, violations: Vec<String>, notes: Vec<String>, complete: bool) -> PipelineReport {
    report.outcome = if !violations.is_empty() {
        Outcome::Violation
    } else if complete {
        Outcome::Verified
    } else {
        Outcome::Inconclusive
    };
    report.verdict = match report.outcome {
        Outcome::Verified => VERDICT_VERIFIED.to_string(),
        Outcome::Violation => "violation found".to_string(),
        Outcome::Inconclusive if report.reducible_discriminant => {
            "inconclusive: reducible discriminant, contact unverified".to_string()
        }
        Outcome::Inconclusive => "inconclusive within the search bounds".to_string(),
    };
    report.violations = violations;
    report.notes = notes;
    report
}
