//! Driver behind the `superreal` binary: turns a [`RunConfig`] into a [`Report`] that can be
//! rendered as text or JSON. Kept as a library so the acceptance suite can call it in-process.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};
use superreal_core::real_structures::{
    compact_scan, fixed_point_basis, representability_check, verify_real_structure, Representability, VerifyOptions,
    Xi2Form,
};
use superreal_core::report::Summary;
use superreal_core::supergroups::{fixed_tangent_check, induced_lie_structure, verify_group_real_structure};
use superreal_core::{
    AlgebraKind, AlgebraSignature, Check, Conjugation, Family, GroupRealStructureDescriptor, RealStructureDescriptor,
    Status, SuperMatrix, SuperNumber, VerificationReport,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad combination of arguments; reported with exit status 2.
    #[error("usage error: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] superreal_core::Error),
    #[error("could not serialize the report: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Verify,
    FixedBasis,
    CompactScan,
    Witness,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::FixedBasis => "fixed-basis",
            Command::CompactScan => "compact-scan",
            Command::Witness => "witness",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Everything a run depends on; echoed verbatim into the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    /// `gl`, `sl`, `osp` for the Lie level, `SL`, `OSp` for the group level.
    pub kind: String,
    pub m: usize,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub descriptor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    pub odd_pairs: usize,
    pub odd_selfreal: usize,
    pub even_nil: usize,
    pub samples: usize,
    pub seed: u64,
    pub format: Format,
    pub strict_printed: bool,
}

impl RunConfig {
    /// Defaults for everything but the command and the algebra.
    pub fn new(command: Command, kind: &str, m: usize, n: usize) -> Self {
        Self {
            command,
            kind: kind.to_string(),
            m,
            n,
            descriptor: None,
            p: None,
            q: None,
            odd_pairs: 1,
            odd_selfreal: 0,
            even_nil: 0,
            samples: 20,
            seed: 0,
            format: Format::Text,
            strict_printed: false,
        }
    }

    pub fn descriptor(mut self, name: &str) -> Self {
        self.descriptor = Some(name.to_string());
        self
    }

    pub fn params(mut self, p: Option<usize>, q: Option<usize>) -> Self {
        self.p = p;
        self.q = q;
        self
    }

    /// Fills parameters the descriptor takes but the caller left out with 0.
    pub fn resolved(&self) -> Result<Self, CliError> {
        let mut out = self.clone();
        if let Some(name) = &self.descriptor {
            let lower = name.to_ascii_lowercase();
            let family =
                Family::from_name(&lower).ok_or_else(|| CliError::Usage(format!("unknown descriptor `{name}`")))?;
            if family.param_count() >= 1 {
                out.p.get_or_insert(0);
            }
            if family.param_count() >= 2 {
                out.q.get_or_insert(0);
            }
        }
        Ok(out)
    }

    fn is_group(&self) -> bool {
        matches!(self.kind.as_str(), "SL" | "OSp")
    }

    fn algebra(&self) -> Result<AlgebraKind, CliError> {
        let lie = match self.kind.as_str() {
            "gl" | "sl" | "osp" => self.kind.clone(),
            "SL" => "sl".into(),
            "OSp" => "osp".into(),
            other => return Err(CliError::Usage(format!("unknown kind `{other}` (expected gl, sl, osp, SL or OSp)"))),
        };
        AlgebraKind::parse(&format!("{lie}({}|{})", self.m, self.n)).map_err(usage)
    }

    fn signature(&self, conjugation: Conjugation) -> Result<AlgebraSignature, CliError> {
        AlgebraSignature::new(self.odd_pairs, self.odd_selfreal, self.even_nil, conjugation).map_err(usage)
    }

    fn options(&self) -> VerifyOptions {
        VerifyOptions::new(self.samples, self.seed)
    }

    /// The Lie-level descriptor named in the config.
    fn lie_descriptor(&self) -> Result<RealStructureDescriptor, CliError> {
        let kind = self.algebra()?;
        let name = self.descriptor.as_deref().ok_or_else(|| CliError::Usage("a descriptor name is required".into()))?;
        let lower = name.to_ascii_lowercase();
        let family =
            Family::from_name(&lower).ok_or_else(|| CliError::Usage(format!("unknown descriptor `{name}`")))?;
        let wanted = family.param_count();
        let given = [self.p, self.q];
        for (k, flag) in ["--p", "--q"].iter().enumerate() {
            if k >= wanted && given[k].is_some() {
                return Err(CliError::Usage(format!("{lower} takes no {flag}")));
            }
        }
        let d = RealStructureDescriptor::new(family, kind, self.p, self.q).map_err(usage)?;
        if self.strict_printed {
            if family != Family::Xi2 {
                return Err(CliError::Usage("--strict-printed only applies to xi2".into()));
            }
            return d.with_xi2_form(Xi2Form::Printed).map_err(usage);
        }
        Ok(d)
    }
}

fn usage(e: superreal_core::Error) -> CliError {
    CliError::Usage(e.to_string())
}

/// Config echo, checks, summary and command-specific data.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub checks: Vec<Check>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

impl Report {
    fn new(config: &RunConfig, report: VerificationReport, data: Option<Value>) -> Self {
        Self { config: config.clone(), summary: report.summary(), checks: report.checks, data }
    }

    /// No check failed (flagged checks do not count).
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let target = match &c.descriptor {
            Some(d) => format!("{}({}|{}) {d}", c.kind, c.m, c.n),
            None => format!("{}({}|{})", c.kind, c.m, c.n),
        };
        let params =
            [("p", c.p), ("q", c.q)].iter().filter_map(|(k, v)| v.map(|v| format!(" {k}={v}"))).collect::<String>();
        let _ = writeln!(
            out,
            "{} {target}{params} | A: {} odd pairs, {} self-real, {} nilpotent | samples={} seed={}",
            c.command.name(),
            c.odd_pairs,
            c.odd_selfreal,
            c.even_nil,
            c.samples,
            c.seed
        );
        for check in &self.checks {
            let status = match check.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Flagged => "FLAG",
            };
            let _ = writeln!(out, "  {status:<4} {}", check.name);
            if let Some(w) = &check.witness {
                for (k, v) in w {
                    let _ = writeln!(out, "         {k}: {v}");
                }
            }
            if let Some(note) = &check.note {
                let _ = writeln!(out, "         note: {note}");
            }
        }
        if let Some(data) = &self.data {
            let _ = writeln!(out, "data:");
            for line in serde_json::to_string_pretty(data).unwrap_or_default().lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        let s = self.summary;
        let _ = writeln!(out, "summary: {} pass, {} fail, {} flagged", s.pass, s.fail, s.flagged);
        out
    }

    pub fn render(&self) -> Result<String, CliError> {
        match self.config.format {
            Format::Text => Ok(self.to_text()),
            Format::Json => self.to_json(),
        }
    }
}

pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    let config = &config.resolved()?;
    match config.command {
        Command::Verify => cmd_verify(config),
        Command::FixedBasis => cmd_fixed_basis(config),
        Command::CompactScan => cmd_compact_scan(config),
        Command::Witness => cmd_witness(config),
    }
}

/// The identity suite of a Lie-level descriptor, or, for `SL`/`OSp`, the group conditions
/// plus the induced Lie structure and the fixed-set comparison.
pub fn cmd_verify(config: &RunConfig) -> Result<Report, CliError> {
    let d = config.lie_descriptor()?;
    let sig = config.signature(d.conjugation())?;
    if !config.is_group() {
        let report = verify_real_structure(&d, &sig, config.options())?;
        return Ok(Report::new(config, report, None));
    }
    let g = GroupRealStructureDescriptor::new(d).map_err(usage)?;
    let mut report = verify_group_real_structure(&g, &sig, config.options())?;
    report.absorb("induced", induced_lie_structure(&g, &sig, config.options())?);
    report.absorb("fixed-tangent", fixed_tangent_check(&g, &sig, config.seed)?);
    Ok(Report::new(config, report, Some(json!({ "lift": g.full_name(), "expression": g.expr().to_string() }))))
}

fn literal(x: &SuperMatrix) -> String {
    x.to_string()
}

/// An exact ℚ-basis of the Φ-fixed points of `(A ⊗ V)₀`, each vector in matrix literal format.
pub fn cmd_fixed_basis(config: &RunConfig) -> Result<Report, CliError> {
    if config.is_group() {
        return Err(CliError::Usage("fixed-basis works on Lie-level kinds (gl, sl, osp)".into()));
    }
    let d = config.lie_descriptor()?;
    let sig = config.signature(d.conjugation())?;
    let basis = fixed_point_basis(&d, &sig)?;
    let mut report = VerificationReport::new();
    let not_fixed = basis.vectors.iter().position(|v| d.eval(v).map(|w| &w != v).unwrap_or(true));
    report.push(Check::from_outcome(
        "vectors-fixed",
        not_fixed.map(|k| superreal_core::report::witness([("vector", literal(basis.vectors[k].matrix()))])),
    ));
    report.push(Check::from_outcome(
        "real-dimension",
        (basis.len() != basis.complex_dim)
            .then(|| superreal_core::report::witness([("fixed", basis.len()), ("complex_dim", basis.complex_dim)])),
    ));
    let mut notes = Vec::new();
    if d.is_graded() && sig.odd_pairs() == 0 {
        notes.push("the algebra has no odd conjugate pair, so no non-representability witness exists here".to_string());
    }
    let data = json!({
        "descriptor": d.full_name(),
        "algebra": sig.describe(),
        "complex_dim": basis.complex_dim,
        "vectors": basis.vectors.iter().map(|v| literal(v.matrix())).collect::<Vec<_>>(),
        "notes": notes,
    });
    Ok(Report::new(config, report, Some(data)))
}

/// Sylvester test of `−Re tr(XY)` on `(V^φ)₀` for every applicable descriptor and parameter.
pub fn cmd_compact_scan(config: &RunConfig) -> Result<Report, CliError> {
    let kind = config.algebra()?;
    if config.is_group() || kind.kind() == superreal_core::Kind::Gl {
        return Err(CliError::Usage("compact-scan works on sl and osp".into()));
    }
    if config.descriptor.is_some() {
        return Err(CliError::Usage("compact-scan iterates all descriptors; do not name one".into()));
    }
    let scan = compact_scan(&kind);
    let mut report = VerificationReport::new();
    report.push(Check::from_outcome(
        "scan-complete",
        (!scan.errors.is_empty()).then(|| scan.errors.iter().cloned().collect()),
    ));
    let found = scan.compact_graded().count();
    report.push(Check::from_outcome(
        "graded-compact-found",
        (found == 0).then(|| superreal_core::report::witness([("entries", scan.entries.len())])),
    ));
    let unique = if scan.distinct_compact_graded == 1 {
        Check::pass("graded-compact-unique")
    } else {
        Check::flagged(
            "graded-compact-unique",
            format!("{} distinct compact graded (V^φ)₀ subspaces", scan.distinct_compact_graded),
        )
    };
    report.push(unique);
    let entries: Vec<Value> = scan
        .entries
        .iter()
        .map(|e| {
            let mut entry = json!({
                "descriptor": e.descriptor.name(),
                "graded": e.descriptor.is_graded(),
                "compact": e.compact,
                "minors": e.minors.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            if let Some((x, value)) = &e.indefinite_direction {
                entry["indefinite_direction"] = json!({ "matrix": x.to_string(), "value": value.to_string() });
            }
            let notes = e.descriptor.notes();
            if !notes.is_empty() {
                entry["notes"] = json!(notes);
            }
            entry
        })
        .collect();
    let data = json!({
        "kind": kind.to_string(),
        "entries": entries,
        "compact_graded": scan.compact_graded().map(|e| e.descriptor.name()).collect::<Vec<_>>(),
        "distinct_compact_graded": scan.distinct_compact_graded,
    });
    Ok(Report::new(config, report, Some(data)))
}

/// The explicit fixed point `a ⊗ v + â ⊗ φ(v)` lying outside `(A^real ⊗ V^φ)₀`.
pub fn cmd_witness(config: &RunConfig) -> Result<Report, CliError> {
    if config.is_group() {
        return Err(CliError::Usage("witness works on Lie-level kinds (sl, osp)".into()));
    }
    let d = config.lie_descriptor()?;
    if !d.is_graded() {
        return Err(CliError::Usage(format!("{} is standard; standard forms are representable", d.name())));
    }
    let sig = config.signature(d.conjugation())?;
    let mut report = VerificationReport::new();
    let data = match representability_check(&d, &sig) {
        Ok(Representability::NotRepresentable { a, v, phi_v, witness }) => {
            let fixed = d.eval(&witness)? == witness;
            report.push(Check::from_outcome(
                "witness-fixed",
                (!fixed).then(|| superreal_core::report::witness([("witness", literal(witness.matrix()))])),
            ));
            report.push(Check::pass("witness-outside-real-products"));
            json!({
                "descriptor": d.full_name(),
                "algebra": sig.describe(),
                "a": a.to_string(),
                "a_conjugate": SuperNumber::conjugate(&a).to_string(),
                "v": v.to_string(),
                "phi_v": phi_v.to_string(),
                "witness": literal(witness.matrix()),
            })
        }
        Ok(Representability::NoOddWitness { reason }) => {
            return Err(CliError::Usage(format!("no witness: {reason}; pass --odd-pairs 1 or more")));
        }
        Ok(Representability::Representable { .. }) => {
            report.push(Check::fail(
                "witness-outside-real-products",
                superreal_core::report::witness([("reason", "graded fixed points were representable")]),
            ));
            json!({ "descriptor": d.full_name() })
        }
        Err(superreal_core::Error::InternalInconsistency(msg)) => {
            report
                .push(Check::fail("witness-outside-real-products", superreal_core::report::witness([("error", msg)])));
            json!({ "descriptor": d.full_name() })
        }
        Err(e) => return Err(e.into()),
    };
    Ok(Report::new(config, report, Some(data)))
}
