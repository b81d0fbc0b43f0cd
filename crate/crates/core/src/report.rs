//! Invariant reports: run the pipeline on one group and compare the results
//! with every applicable closed form.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::abelian::AbelianStructure;
use crate::error::{Error, Result};
use crate::formulas::{self, formula_suite, Prediction, Quantity, RankKind, Value};
use crate::multiplier::{ker_beta, multiplier_order_log, KerBetaDims};
use crate::pc::families::{free_special, non_capable_witness, rank_deficient, rank_full_with_t, standard_power_table};
use crate::pc::{structure_report, text, PcPresentation, StructureReport};
use crate::wedge::{capability_report_with, j2_and_nabla, square, CapabilityReport, Mode, SquareResult};

/// Bumped whenever a field is added, removed or renamed.
pub const SCHEMA_VERSION: u32 = 1;

/// Grid cells above this order are skipped.
pub const GRID_ORDER_CAP: u128 = 59_049;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    FreeSpecial,
    RankFull,
    RankDeficient,
    NonCapableWitness,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::FreeSpecial, Family::RankFull, Family::RankDeficient, Family::NonCapableWitness];

    pub fn name(self) -> &'static str {
        match self {
            Family::FreeSpecial => "free-special",
            Family::RankFull => "rank-full",
            Family::RankDeficient => "rank-deficient",
            Family::NonCapableWitness => "non-capable-witness",
        }
    }

    /// The power-rank `t` this family forces, if any.
    pub fn fixed_t(self) -> Option<usize> {
        match self {
            Family::FreeSpecial => Some(0),
            Family::NonCapableWitness => Some(1),
            _ => None,
        }
    }

    /// `rank-deficient` quotients by `[x_2,x_1] = Π [x_j,x_i]` over the other pairs.
    pub fn build(self, d: usize, p: u32, t: usize) -> Result<PcPresentation> {
        if let Some(ft) = self.fixed_t() {
            if ft != t {
                return Err(Error::Usage(format!("{} has t = {ft}, not {t}", self.name())));
            }
        }
        match self {
            Family::FreeSpecial => free_special(d, p),
            Family::NonCapableWitness => non_capable_witness(d, p),
            Family::RankFull => rank_full_with_t(d, p, t),
            Family::RankDeficient => {
                let alpha = vec![1; (d * d.saturating_sub(1) / 2).saturating_sub(1)];
                standard_power_table(&rank_deficient(d, p, (1, 2), &alpha)?, t)
            }
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown family `{s}`")))
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Family { family: Family, d: usize, p: u32, t: usize },
    Text { name: String, text: String },
}

impl GroupSpec {
    pub fn family(family: Family, d: usize, p: u32, t: Option<usize>) -> Self {
        let t = t.or(family.fixed_t()).unwrap_or(0);
        GroupSpec::Family { family, d, p, t }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub family: Option<Family>,
    pub d: usize,
    pub p: u32,
    pub t: Option<usize>,
    pub source: Option<String>,
    /// SHA-256 of the presentation text, hex.
    pub hash: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Section {
    Structure,
    Multiplier,
    Wedge,
    Tensor,
    Capability,
}

impl Section {
    pub const ALL: [Section; 5] =
        [Section::Structure, Section::Multiplier, Section::Wedge, Section::Tensor, Section::Capability];

    pub fn name(self) -> &'static str {
        match self {
            Section::Structure => "structure",
            Section::Multiplier => "multiplier",
            Section::Wedge => "wedge",
            Section::Tensor => "tensor",
            Section::Capability => "capability",
        }
    }
}

impl FromStr for Section {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Section::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown section `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierSection {
    pub order_log: u32,
    pub dims: KerBetaDims,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareSection {
    pub certified: bool,
    pub structure: AbelianStructure,
    pub order_log: u32,
    pub target_log: Option<u32>,
    /// Kernel of the commutator map: `M(G)` for `∧`, `J₂(G)` for `⊗`.
    pub kernel: AbelianStructure,
    pub nabla: Option<AbelianStructure>,
    pub relations_used: usize,
    pub diagnostics: Vec<String>,
}

impl SquareSection {
    fn of(res: &SquareResult) -> Self {
        Self {
            certified: res.certified,
            structure: res.structure.clone(),
            order_log: res.order_log(),
            target_log: res.target_log,
            kernel: res.kernel.clone(),
            nabla: res.nabla.clone(),
            relations_used: res.relations_used,
            diagnostics: res.diagnostics.clone(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Computed {
    pub order_log: usize,
    pub structure: Option<StructureReport>,
    pub multiplier: Option<MultiplierSection>,
    pub wedge: Option<SquareSection>,
    pub tensor: Option<SquareSection>,
    pub capability: Option<CapabilityReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    Mismatch,
    OutOfHypothesis,
    KnownDiscrepancy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    pub id: String,
    pub formula: String,
    pub predicted: Value,
    pub computed: Value,
    pub status: Status,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub schema_version: u32,
    pub group: GroupDescriptor,
    pub sections: Vec<Section>,
    pub certified: bool,
    pub computed: Computed,
    pub flags: Vec<Flag>,
    /// Sections that could not be computed, with the reason.
    pub notes: Vec<String>,
}

impl InvariantReport {
    pub fn count(&self, status: Status) -> usize {
        self.flags.iter().filter(|f| f.status == status).count()
    }
}

fn sha256_hex(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn resolve(spec: &GroupSpec) -> Result<(PcPresentation, GroupDescriptor)> {
    match spec {
        GroupSpec::Family { family, d, p, t } => {
            let g = family.build(*d, *p, *t)?;
            let desc = GroupDescriptor { family: Some(*family), d: *d, p: *p, t: Some(*t), source: None, hash: None };
            Ok((g, desc))
        }
        GroupSpec::Text { name, text: body } => {
            let g = text::parse(body)?;
            let desc = GroupDescriptor {
                family: None,
                d: g.d(),
                p: g.p(),
                t: None,
                source: Some(name.clone()),
                hash: Some(sha256_hex(body)),
            };
            Ok((g, desc))
        }
    }
}

fn section_of(q: Quantity) -> Section {
    use Quantity::*;
    match q {
        Psi2ImageDim | PowerTensorDim | IntersectionDim | MultiplierLog | MultiplierMaximal => Section::Multiplier,
        ExteriorLog | ExteriorStructure | ExteriorElementaryMaximal => Section::Wedge,
        TensorLog | TensorStructure | TensorElementaryMaximal | NablaLog | J2Log => Section::Tensor,
        Capable => Section::Capability,
    }
}

fn split_value(s: &AbelianStructure, p: u64) -> Value {
    let (p1, p2) = (s.count_of(p), s.count_of(p * p));
    if p1 + p2 == s.rank() {
        Value::Structure { p2: p2 as i64, p1: p1 as i64 }
    } else {
        Value::Other(s.to_string())
    }
}

/// Everything a prediction can be compared against.
struct Observed {
    d: i64,
    p: u64,
    multiplier: Option<MultiplierSection>,
    wedge: Option<SquareSection>,
    tensor: Option<SquareSection>,
    j2_log: Option<u32>,
    capable: Option<bool>,
}

impl Observed {
    fn value(&self, q: Quantity) -> Option<Value> {
        use Quantity::*;
        let d = self.d;
        let certified = |s: &Option<SquareSection>| s.as_ref().filter(|s| s.certified).cloned();
        Some(match q {
            Psi2ImageDim => Value::Int(self.multiplier.as_ref()?.dims.psi2_image as i64),
            PowerTensorDim => Value::Int(self.multiplier.as_ref()?.dims.power as i64),
            IntersectionDim => Value::Int(self.multiplier.as_ref()?.dims.intersection as i64),
            MultiplierLog => Value::Int(self.multiplier.as_ref()?.order_log as i64),
            MultiplierMaximal => {
                Value::Bool(self.multiplier.as_ref()?.order_log as i64 == formulas::multiplier_rank_max(d))
            }
            ExteriorLog => Value::Int(certified(&self.wedge)?.order_log as i64),
            ExteriorStructure => split_value(&certified(&self.wedge)?.structure, self.p),
            ExteriorElementaryMaximal => {
                let w = certified(&self.wedge)?;
                Value::Bool(w.structure.is_elementary(self.p) && w.order_log as i64 == d * (d - 1) * (2 * d + 5) / 6)
            }
            TensorLog => Value::Int(certified(&self.tensor)?.order_log as i64),
            TensorStructure => split_value(&certified(&self.tensor)?.structure, self.p),
            TensorElementaryMaximal => {
                let t = certified(&self.tensor)?;
                Value::Bool(t.structure.is_elementary(self.p) && t.order_log as i64 == d * (d * d + 3 * d - 1) / 3)
            }
            NablaLog => Value::Int(certified(&self.tensor)?.nabla?.order_log(self.p)? as i64),
            J2Log => Value::Int(self.j2_log? as i64),
            Capable => Value::Bool(self.capable?),
        })
    }
}

fn flag(pred: &Prediction, computed: Value) -> Flag {
    let status = if !pred.applies {
        Status::OutOfHypothesis
    } else if pred.value == computed {
        Status::Match
    } else if pred.known_discrepancy.is_some() {
        Status::KnownDiscrepancy
    } else {
        Status::Mismatch
    };
    Flag {
        id: pred.id.clone(),
        formula: pred.formula.clone(),
        predicted: pred.value.clone(),
        computed,
        status,
        note: pred.known_discrepancy.clone(),
    }
}

/// Closed forms that apply to this presentation, if it is special of full or
/// deficient derived rank on at least three generators.
fn predictions(rep: &StructureReport) -> Option<Vec<Prediction>> {
    if !rep.is_special || rep.d < 3 {
        return None;
    }
    let kind = if rep.rank_full {
        RankKind::Full
    } else if rep.rank_deficient {
        RankKind::Deficient
    } else {
        return None;
    };
    formula_suite(rep.d, rep.p, rep.t, kind).ok()
}

pub fn run(spec: &GroupSpec, sections: &[Section]) -> Result<InvariantReport> {
    let (g, desc) = resolve(spec)?;
    let mut sections: Vec<Section> = sections.to_vec();
    sections.sort();
    sections.dedup();
    let want = |s: Section| sections.contains(&s);
    let p = g.p() as u64;
    let mut notes = Vec::new();
    let mut computed = Computed { order_log: g.order_log(), ..Default::default() };

    let rep = structure_report(&g);
    if want(Section::Structure) {
        match &rep {
            Ok(r) => computed.structure = Some(r.clone()),
            Err(e) => notes.push(format!("structure: {e}")),
        }
    }
    if want(Section::Multiplier) {
        match multiplier_order_log(&g).and_then(|m| Ok((m, ker_beta(&g)?.dims()))) {
            Ok((order_log, dims)) => computed.multiplier = Some(MultiplierSection { order_log, dims }),
            Err(e) => notes.push(format!("multiplier: {e}")),
        }
    }

    let need_wedge = want(Section::Wedge) || want(Section::Capability);
    let wedge = if need_wedge {
        match square(&g, Mode::Exterior) {
            Ok(w) => Some(w),
            Err(e) => {
                notes.push(format!("wedge: {e}"));
                None
            }
        }
    } else {
        None
    };
    if want(Section::Wedge) {
        computed.wedge = wedge.as_ref().map(SquareSection::of);
    }
    let mut j2_log = None;
    if want(Section::Tensor) {
        match square(&g, Mode::Tensor) {
            Ok(t) => {
                computed.tensor = Some(SquareSection::of(&t));
                match j2_and_nabla(&t) {
                    Ok((j2, _)) => j2_log = j2.order_log(p),
                    Err(e) => notes.push(format!("tensor: J2 unavailable: {e}")),
                }
            }
            Err(e) => notes.push(format!("tensor: {e}")),
        }
    }
    if want(Section::Capability) {
        match wedge.as_ref().map(|w| capability_report_with(&g, w)) {
            Some(Ok(c)) => computed.capability = Some(c),
            Some(Err(e)) => notes.push(format!("capability: {e}")),
            None => notes.push("capability: exterior square unavailable".into()),
        }
    }

    let certified = computed.wedge.as_ref().is_none_or(|s| s.certified)
        && computed.tensor.as_ref().is_none_or(|s| s.certified)
        && (!want(Section::Capability) || computed.capability.is_some());

    let mut flags = Vec::new();
    if let Some(preds) = rep.as_ref().ok().and_then(predictions) {
        let obs = Observed {
            d: g.d() as i64,
            p,
            multiplier: computed.multiplier.clone(),
            wedge: computed.wedge.clone(),
            tensor: computed.tensor.clone(),
            j2_log,
            capable: computed.capability.as_ref().map(|c| c.capable),
        };
        for pred in &preds {
            if !want(section_of(pred.quantity)) {
                continue;
            }
            if let Some(v) = obs.value(pred.quantity) {
                flags.push(flag(pred, v));
            }
        }
    }
    if let Some(cap) = &computed.capability {
        for c in cap.cross_checks.iter().filter(|c| c.name == "exp-p2-elementary-wedge" && c.applicable) {
            flags.push(Flag {
                id: "exterior_elementary_exp_p2_noncapable".into(),
                formula: "exponent p^2 and elementary G∧G imply non-capable".into(),
                predicted: Value::Bool(false),
                computed: Value::Bool(cap.capable),
                status: if c.consistent { Status::Match } else { Status::Mismatch },
                note: None,
            });
        }
    }

    Ok(InvariantReport { schema_version: SCHEMA_VERSION, group: desc, sections, certified, computed, flags, notes })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridRequest {
    pub primes: Vec<u32>,
    pub ds: Vec<usize>,
    pub ts: Vec<usize>,
    pub families: Vec<Family>,
    pub sections: Vec<Section>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedCell {
    pub family: Family,
    pub d: usize,
    pub p: u32,
    pub t: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSummary {
    pub reports: usize,
    pub matches: usize,
    pub mismatches: usize,
    pub out_of_hypothesis: usize,
    pub known_discrepancies: usize,
    pub uncertified: usize,
    pub skipped: Vec<SkippedCell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridReport {
    pub schema_version: u32,
    pub reports: Vec<InvariantReport>,
    pub summary: GridSummary,
}

/// Cells in `(family, p, d, t)` order. Families with a fixed `t` contribute
/// one cell per `(p, d)` and ignore the `t` list.
fn cells(req: &GridRequest) -> Vec<(Family, u32, usize, usize)> {
    let mut out = Vec::new();
    for &f in &req.families {
        for &p in &req.primes {
            for &d in &req.ds {
                match f.fixed_t() {
                    Some(t) => out.push((f, p, d, t)),
                    None => out.extend(req.ts.iter().map(|&t| (f, p, d, t))),
                }
            }
        }
    }
    out
}

pub fn run_grid(req: &GridRequest) -> GridReport {
    let results: Vec<std::result::Result<InvariantReport, SkippedCell>> = cells(req)
        .into_par_iter()
        .map(|(family, p, d, t)| {
            let skip = |reason: String| SkippedCell { family, d, p, t, reason };
            let g = family.build(d, p, t).map_err(|e| skip(e.to_string()))?;
            let order = g.order().unwrap_or(u128::MAX);
            if order > GRID_ORDER_CAP {
                return Err(skip(format!("order {order} exceeds the grid cap {GRID_ORDER_CAP}")));
            }
            run(&GroupSpec::Family { family, d, p, t }, &req.sections).map_err(|e| skip(e.to_string()))
        })
        .collect();
    let mut summary = GridSummary::default();
    let mut reports = Vec::new();
    for r in results {
        match r {
            Ok(rep) => {
                summary.matches += rep.count(Status::Match);
                summary.mismatches += rep.count(Status::Mismatch);
                summary.out_of_hypothesis += rep.count(Status::OutOfHypothesis);
                summary.known_discrepancies += rep.count(Status::KnownDiscrepancy);
                summary.uncertified += usize::from(!rep.certified);
                reports.push(rep);
            }
            Err(s) => summary.skipped.push(s),
        }
    }
    summary.reports = reports.len();
    GridReport { schema_version: SCHEMA_VERSION, reports, summary }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(Error::Usage(format!("unknown format `{s}`"))),
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialise");
    s.push('\n');
    s
}

pub fn group_name(g: &GroupDescriptor) -> String {
    match (&g.family, &g.source) {
        (Some(f), _) => format!("{f}(d={}, p={}, t={})", g.d, g.p, g.t.unwrap_or(0)),
        (None, Some(src)) => src.clone(),
        (None, None) => format!("group(d={}, p={})", g.d, g.p),
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Match => "match",
        Status::Mismatch => "mismatch",
        Status::OutOfHypothesis => "out-of-hypothesis",
        Status::KnownDiscrepancy => "known-discrepancy",
    }
}

fn markdown_report(out: &mut String, r: &InvariantReport) {
    let c = &r.computed;
    let _ = writeln!(out, "## {}\n", group_name(&r.group));
    let _ = writeln!(out, "| quantity | value |\n|---|---|");
    let _ = writeln!(out, "| order | p^{} |", c.order_log);
    if let Some(s) = &c.structure {
        let _ = writeln!(out, "| t | {} |", s.t);
        let _ = writeln!(out, "| special | {} |", s.is_special);
    }
    if let Some(m) = &c.multiplier {
        let _ = writeln!(out, "| M(G) | p^{} |", m.order_log);
    }
    for (name, sq) in [("G∧G", &c.wedge), ("G⊗G", &c.tensor)] {
        if let Some(s) = sq {
            let _ = writeln!(out, "| {name} | {} (certified: {}) |", s.structure, s.certified);
            let _ = writeln!(out, "| ker κ on {name} | {} |", s.kernel);
            if let Some(n) = &s.nabla {
                let _ = writeln!(out, "| ∇(G) | {n} |");
            }
        }
    }
    if let Some(cap) = &c.capability {
        let _ = writeln!(out, "| Z^∧(G) | p^{} |", cap.exterior_center_log);
        let _ = writeln!(out, "| capable | {} |", cap.capable);
    }
    if !r.flags.is_empty() {
        let _ = writeln!(out, "\n| formula | predicted | computed | status |\n|---|---|---|---|");
        for f in &r.flags {
            let _ = writeln!(out, "| {} | {} | {} | {} |", f.id, f.predicted, f.computed, status_name(f.status));
        }
    }
    for n in &r.notes {
        let _ = writeln!(out, "\n> {n}");
    }
    out.push('\n');
}

pub fn emit(report: &InvariantReport, format: Format) -> String {
    match format {
        Format::Json => json(report),
        Format::Markdown => {
            let mut out = String::new();
            markdown_report(&mut out, report);
            out
        }
    }
}

pub fn emit_grid(grid: &GridReport, format: Format) -> String {
    match format {
        Format::Json => json(grid),
        Format::Markdown => {
            let s = &grid.summary;
            let mut out = String::from("# Summary\n\n| formula | group | predicted | computed | status |\n|---|---|---|---|---|\n");
            for r in &grid.reports {
                for f in &r.flags {
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {} | {} |",
                        f.id,
                        group_name(&r.group),
                        f.predicted,
                        f.computed,
                        status_name(f.status)
                    );
                }
            }
            let _ = writeln!(
                out,
                "\n{} reports: {} match, {} mismatch, {} known discrepancy, {} out of hypothesis, {} uncertified, {} skipped\n",
                s.reports,
                s.matches,
                s.mismatches,
                s.known_discrepancies,
                s.out_of_hypothesis,
                s.uncertified,
                s.skipped.len()
            );
            for k in &s.skipped {
                let _ = writeln!(out, "- skipped {}(d={}, p={}, t={}): {}", k.family, k.d, k.p, k.t, k.reason);
            }
            for r in &grid.reports {
                markdown_report(&mut out, r);
            }
            out
        }
    }
}

pub fn parse_report(json: &str) -> Result<InvariantReport> {
    serde_json::from_str(json).map_err(|e| Error::Usage(format!("bad report JSON: {e}")))
}

pub fn parse_grid(json: &str) -> Result<GridReport> {
    serde_json::from_str(json).map_err(|e| Error::Usage(format!("bad grid JSON: {e}")))
}
