//! Report drivers behind the command-line tool: parse a JSON input, run one
//! pipeline, and render the result as JSON or text with an exit status.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::rational::parse_rational;
use crate::algebra::MultiPoly;
use crate::broken::{
    classify_component, glue, ComponentData, ComponentError, ComponentReport, GlueError,
    GluingCertificate, Violation, J4,
};
use crate::broken::BrokenType;
use crate::cone::{
    classify_all_lines, crosscheck, discriminant_form, git_verdict, parametrize, stable_pair_report,
    ConeBranchData, CrosscheckRecord, GitVerdict, LineRecord, StablePairReport,
};
use crate::corpus::{run_corpus, CorpusConfig, CorpusReport};
use crate::kodaira::KodairaType;
use crate::SCHEMA;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Success = 0,
    Disagreement = 1,
    Rejected = 2,
    Structural = 3,
    Parse = 4,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// A rendered report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Emitted {
    pub status: Status,
    pub body: String,
}

#[derive(Debug, Clone, Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
}

#[derive(Debug, Clone, Serialize)]
struct ErrorReport {
    schema: &'static str,
    command: &'static str,
    error: ErrorBody,
}

fn render<T: Serialize>(report: &T, text: impl FnOnce() -> String, format: Format, status: Status) -> Emitted {
    let body = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => text(),
    };
    Emitted { status, body }
}

fn failure(command: &'static str, status: Status, message: String, format: Format) -> Emitted {
    let kind = if status == Status::Parse { "parse" } else { "structural" };
    let report = ErrorReport {
        schema: SCHEMA,
        command,
        error: ErrorBody { kind, message },
    };
    render(&report, || format!("error ({}): {}\n", report.error.kind, report.error.message), format, status)
}

/// Error report for an input that could not be read at all.
pub fn unreadable_input(command: &'static str, message: String, format: Format) -> Emitted {
    failure(command, Status::Parse, message, format)
}

// ---------------------------------------------------------------- inputs

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConeInput {
    cubic: MultiPoly,
    #[serde(default)]
    expected: Vec<ExpectedType>,
}

/// An expected fiber type for one discriminant factor, named as in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedType {
    pub factor: String,
    #[serde(rename = "type")]
    pub kind: KodairaType,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Coordinate {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentInput {
    cubic: MultiPoly,
    line: MultiPoly,
    point: Vec<Coordinate>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GlueInput {
    components: Vec<ComponentInput>,
}

enum InputError {
    Parse(String),
    Structural(String),
}

impl InputError {
    fn emit(self, command: &'static str, format: Format) -> Emitted {
        match self {
            InputError::Parse(m) => failure(command, Status::Parse, m, format),
            InputError::Structural(m) => failure(command, Status::Structural, m, format),
        }
    }
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Parse(e.to_string()))
}

fn component_data(input: ComponentInput) -> Result<ComponentData, InputError> {
    let coords = input
        .point
        .into_iter()
        .map(|c| match c {
            Coordinate::Int(n) => Ok(crate::algebra::rat(n)),
            Coordinate::Text(s) => parse_rational(&s).map_err(|e| InputError::Parse(e.to_string())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let point = <[_; 3]>::try_from(coords)
        .map_err(|v| InputError::Structural(format!("point has {} coordinates, expected 3", v.len())))?;
    Ok(ComponentData {
        cubic: input.cubic,
        line: input.line,
        point,
    })
}

fn cone_data(cubic: MultiPoly) -> Result<ConeBranchData, InputError> {
    ConeBranchData::new(cubic).map_err(|e| InputError::Structural(e.to_string()))
}

// ---------------------------------------------------------------- classify-cone

#[derive(Debug, Clone, Serialize)]
pub struct ConeReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub cubic: MultiPoly,
    pub sextic: MultiPoly,
    pub discriminant: Option<String>,
    pub git: GitVerdict,
    pub lines: Option<Vec<LineRecord>>,
    pub stable_pair: Option<StablePairReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn cone_report(data: &ConeBranchData) -> ConeReport {
    let f = parametrize(data);
    let outcome = classify_all_lines(&f);
    let git = git_verdict(&outcome);
    let (lines, error) = match outcome {
        Ok(records) => (Some(records), None),
        Err(e) => (None, Some(e.to_string())),
    };
    ConeReport {
        schema: SCHEMA,
        command: "classify-cone",
        cubic: data.cubic().clone(),
        sextic: f.poly().clone(),
        discriminant: discriminant_form(&f).ok().map(|d| d.to_string()),
        stable_pair: lines.as_deref().map(stable_pair_report),
        git,
        lines,
        error,
    }
}

fn verdict_text(git: &GitVerdict) -> String {
    match git {
        GitVerdict::Stable => "stable".into(),
        GitVerdict::Unstable { reason } => format!("unstable ({reason})"),
    }
}

fn cone_text(r: &ConeReport) -> String {
    let mut out = String::new();
    writeln!(out, "verdict: {}", verdict_text(&r.git)).unwrap();
    if let Some(d) = &r.discriminant {
        writeln!(out, "discriminant: {d}").unwrap();
    }
    for line in r.lines.iter().flatten() {
        let contact: Vec<String> = line.contact.iter().map(|c| c.multiplicity.to_string()).collect();
        let germ = line.singularity.map_or_else(|| "-".to_string(), |s| s.to_string());
        writeln!(
            out,
            "line {}  degree {}  fiber {}  disc {}  contact {}  germ {}",
            line.line,
            line.degree,
            line.kodaira,
            line.disc_mult,
            contact.join("+"),
            germ
        )
        .unwrap();
    }
    if let Some(sp) = &r.stable_pair {
        writeln!(
            out,
            "stable pair: fiber total {}, line total {} (discriminant) / {} (contact)",
            sp.fiber_total, sp.line_total_discriminant, sp.line_total_contact
        )
        .unwrap();
    }
    if let Some(e) = &r.error {
        writeln!(out, "error: {e}").unwrap();
    }
    out
}

pub fn run_classify_cone(input: &str, format: Format) -> Emitted {
    let command = "classify-cone";
    let data = match parse::<ConeInput>(input).and_then(|i| cone_data(i.cubic)) {
        Ok(d) => d,
        Err(e) => return e.emit(command, format),
    };
    let report = cone_report(&data);
    let status = if report.git.is_stable() { Status::Success } else { Status::Rejected };
    render(&report, || cone_text(&report), format, status)
}

// ---------------------------------------------------------------- crosscheck

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckRow {
    #[serde(flatten)]
    pub record: CrosscheckRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<KodairaType>,
}

impl CrosscheckRow {
    pub fn passes(&self) -> bool {
        self.record.agree && self.expected.map_or(true, |e| Some(e) == self.record.branch_type)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub cubic: MultiPoly,
    pub factors: Vec<CrosscheckRow>,
    /// Expected entries naming no factor of the discriminant.
    pub unmatched_expected: Vec<ExpectedType>,
    pub all_agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn crosscheck_report(data: &ConeBranchData, expected: &[ExpectedType]) -> CrosscheckReport {
    let f = parametrize(data);
    let (rows, error) = match crosscheck(&f) {
        Ok(records) => (records, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    let factors: Vec<CrosscheckRow> = rows
        .into_iter()
        .map(|record| {
            let name = record.factor.to_string();
            CrosscheckRow {
                expected: expected.iter().find(|e| e.factor == name).map(|e| e.kind),
                record,
            }
        })
        .collect();
    let unmatched_expected: Vec<ExpectedType> = expected
        .iter()
        .filter(|e| !factors.iter().any(|r| r.record.factor.to_string() == e.factor))
        .cloned()
        .collect();
    CrosscheckReport {
        schema: SCHEMA,
        command: "crosscheck",
        cubic: data.cubic().clone(),
        all_agree: error.is_none() && unmatched_expected.is_empty() && factors.iter().all(CrosscheckRow::passes),
        factors,
        unmatched_expected,
        error,
    }
}

fn label(k: Option<KodairaType>) -> String {
    k.map_or_else(|| "-".to_string(), |k| k.to_string())
}

fn crosscheck_text(r: &CrosscheckReport) -> String {
    let mut out = String::new();
    for row in &r.factors {
        let rec = &row.record;
        write!(
            out,
            "factor {}  valuations {}  oracle {}  branch {}",
            rec.factor,
            rec.valuations,
            label(rec.oracle_type),
            label(rec.branch_type)
        )
        .unwrap();
        if let Some(e) = row.expected {
            write!(out, "  expected {e}").unwrap();
        }
        writeln!(out, "  {}", if row.passes() { "agree" } else { "DISAGREE" }).unwrap();
    }
    for e in &r.unmatched_expected {
        writeln!(out, "expected factor {} not found", e.factor).unwrap();
    }
    if let Some(e) = &r.error {
        writeln!(out, "error: {e}").unwrap();
    }
    writeln!(out, "all agree: {}", r.all_agree).unwrap();
    out
}

pub fn run_crosscheck(input: &str, format: Format) -> Emitted {
    let command = "crosscheck";
    let (data, expected) = match parse::<ConeInput>(input).and_then(|i| Ok((cone_data(i.cubic)?, i.expected))) {
        Ok(d) => d,
        Err(e) => return e.emit(command, format),
    };
    let report = crosscheck_report(&data, &expected);
    let status = if report.error.is_some() {
        Status::Rejected
    } else if report.all_agree {
        Status::Success
    } else {
        Status::Disagreement
    };
    render(&report, || crosscheck_text(&report), format, status)
}

// ---------------------------------------------------------------- classify-component

#[derive(Debug, Clone, Serialize)]
pub struct ComponentRunReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub violations: Vec<Violation>,
    pub component: Option<ComponentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn component_status(e: &ComponentError) -> Status {
    match e {
        ComponentError::Invalid(_) => Status::Structural,
        _ => Status::Rejected,
    }
}

fn component_text(c: &ComponentReport) -> String {
    let mut out = String::new();
    writeln!(out, "normal: {}", c.normal).unwrap();
    writeln!(out, "gluing fiber: {}", c.gluing_type).unwrap();
    if let Some(o) = c.gluing_oracle_type {
        writeln!(out, "gluing fiber (valuations): {o}").unwrap();
    }
    let pattern: Vec<String> = c.profile.pattern.iter().map(u32::to_string).collect();
    writeln!(out, "divisor on l: {}  pattern {}", c.profile.divisor, pattern.join("+")).unwrap();
    writeln!(out, "j: {}", c.j4).unwrap();
    for f in &c.interior_fibers {
        writeln!(out, "interior {}  degree {}  fiber {}", f.member, f.degree, f.kodaira).unwrap();
    }
    if let Some(total) = c.euler_total {
        writeln!(out, "euler total: {total}").unwrap();
    }
    out
}

pub fn run_classify_component(input: &str, format: Format) -> Emitted {
    let command = "classify-component";
    let data = match parse::<ComponentInput>(input).and_then(component_data) {
        Ok(d) => d,
        Err(e) => return e.emit(command, format),
    };
    let (report, status) = match classify_component(&data) {
        Ok(c) => (
            ComponentRunReport { schema: SCHEMA, command, violations: Vec::new(), component: Some(c), error: None },
            Status::Success,
        ),
        Err(e) => (
            ComponentRunReport {
                schema: SCHEMA,
                command,
                violations: match &e {
                    ComponentError::Invalid(v) => v.clone(),
                    _ => Vec::new(),
                },
                component: None,
                error: Some(e.to_string()),
            },
            component_status(&e),
        ),
    };
    let text = || match (&report.component, &report.error) {
        (Some(c), _) => component_text(c),
        (None, Some(e)) => format!("error: {e}\n"),
        (None, None) => unreachable!(),
    };
    render(&report, text, format, status)
}

// ---------------------------------------------------------------- glue

#[derive(Debug, Clone, Serialize)]
pub struct GlueReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub compatible: bool,
    pub broken_type: Option<BrokenType>,
    pub gluing_fibers: Option<[KodairaType; 2]>,
    pub j4: Option<J4>,
    pub certificate: Option<GluingCertificate>,
    pub components: Option<[ComponentReport; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

pub fn glue_report(c1: &ComponentData, c2: &ComponentData) -> (GlueReport, Status) {
    let mut report = GlueReport {
        schema: SCHEMA,
        command: "glue",
        compatible: false,
        broken_type: None,
        gluing_fibers: None,
        j4: None,
        certificate: None,
        components: None,
        reason: None,
    };
    match glue(c1, c2) {
        Ok(out) => {
            report.compatible = true;
            report.broken_type = Some(out.broken_type);
            report.gluing_fibers = Some(out.gluing_fibers);
            report.j4 = Some(out.j4);
            report.certificate = Some(out.certificate);
            report.components = Some(out.components);
            (report, Status::Success)
        }
        Err(e) => {
            let status = match &e {
                GlueError::Component { error, .. } => component_status(error),
                _ => Status::Rejected,
            };
            report.reason = Some(e.to_string());
            (report, status)
        }
    }
}

fn glue_text(r: &GlueReport) -> String {
    let mut out = String::new();
    match (&r.broken_type, &r.certificate) {
        (Some(kind), Some(cert)) => {
            let fibers = r.gluing_fibers.as_ref().expect("set with the type");
            writeln!(out, "compatible: {kind} ({} / {})", fibers[0], fibers[1]).unwrap();
            writeln!(out, "j: {}", r.j4.as_ref().expect("set with the type")).unwrap();
            let t = &cert.tau;
            let f = crate::algebra::rational::display_rational;
            writeln!(out, "tau: [[{}, {}], [{}, {}]]", f(&t[0][0]), f(&t[0][1]), f(&t[1][0]), f(&t[1][1])).unwrap();
            for m in &cert.matched_points {
                writeln!(out, "  {} -> {}  (multiplicity {})", m.from, m.to, m.multiplicity).unwrap();
            }
        }
        _ => writeln!(out, "incompatible: {}", r.reason.as_deref().unwrap_or("")).unwrap(),
    }
    out
}

pub fn run_glue(input: &str, format: Format) -> Emitted {
    let command = "glue";
    let parsed = parse::<GlueInput>(input).and_then(|g| {
        let n = g.components.len();
        if n != 2 {
            return Err(InputError::Structural(format!("expected 2 components, found {n}")));
        }
        g.components.into_iter().map(component_data).collect::<Result<Vec<_>, _>>()
    });
    let pair = match parsed {
        Ok(p) => p,
        Err(e) => return e.emit(command, format),
    };
    let (report, status) = glue_report(&pair[0], &pair[1]);
    render(&report, || glue_text(&report), format, status)
}

// ---------------------------------------------------------------- corpus

fn corpus_text(r: &CorpusReport) -> String {
    let mut out = String::new();
    writeln!(out, "seed {}  height {}  count {}  draws {}", r.seed, r.height, r.count, r.draws).unwrap();
    writeln!(
        out,
        "rejected: {} cone point, {} vanishing discriminant",
        r.rejected.cone_point, r.rejected.non_reduced
    )
    .unwrap();
    let hist = |h: &std::collections::BTreeMap<String, usize>| {
        h.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join(", ")
    };
    writeln!(out, "discriminant degree: {}", hist(&r.disc_degree_histogram)).unwrap();
    let mult: Vec<String> = r.multiplicity_sum_histogram.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    writeln!(out, "multiplicity sum: {}", mult.join(", ")).unwrap();
    writeln!(out, "euler sum: {}", hist(&r.euler_sum_histogram)).unwrap();
    let o = &r.oracle_agreement;
    writeln!(out, "oracle agreement: {}/{} ({})", o.agreed, o.factors, o.rate).unwrap();
    let fibers: Vec<String> = r.fiber_types.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    writeln!(out, "fiber types: {}", fibers.join(", ")).unwrap();
    writeln!(out, "git stable: {}/{}", r.git_stable, r.samples.len()).unwrap();
    writeln!(out, "invariants hold: {}", r.invariants_hold).unwrap();
    out
}

pub fn run_corpus_report(config: &CorpusConfig, format: Format) -> Emitted {
    let report = run_corpus(config);
    let status = if report.invariants_hold { Status::Success } else { Status::Rejected };
    render(&report, || corpus_text(&report), format, status)
}
