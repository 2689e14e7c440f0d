//! Per-degree reports combining every module, the registry of quoted
//! constants, and range batches.

use crate::hypersurface::{compute_invariants, HypersurfaceInvariants};
use crate::jtheory::{james_periodicity_check, JamesVerdict};
use crate::kreck_su::{self, FiniteAbelianGroup, MCGTableRow, THETA7_ORDER};
use crate::pham::{self, PhamSummary};
use crate::quadform::{arf_of_hypersurface, invariant_subgroup_scan, ker_rho_description, InvariantSubgroupReport, KerRhoDescriptor};
use crate::steenrod_ext::{
    apply_differential_pattern, differential_pattern, ext_chart, ExtChart, StemOutcome, ThreePrimaryOutcome,
};
use serde::Serialize;
use std::fmt::Write as _;
use thiserror::Error;

pub const SCHEMA: &str = "hypermono/1";

/// Filtration and stem range of the charts in a report.
pub const REPORT_S_MAX: usize = 5;
pub const REPORT_N_MAX: u32 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error("degree must be at least 1, got {0}")]
    Degree(i64),
    #[error("empty range {from}..={to}")]
    EmptyRange { from: i64, to: i64 },
    #[error("{module}: {message}")]
    Module { module: &'static str, message: String },
}

fn module_err(module: &'static str) -> impl Fn(String) -> ReportError {
    move |message| ReportError::Module { module, message }
}

/// A group or number recorded from the literature rather than computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantEntry {
    pub key: &'static str,
    pub value: &'static str,
    pub source: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantsRegistry {
    entries: Vec<ConstantEntry>,
}

impl ConstantsRegistry {
    pub fn get(&self, key: &str) -> Option<&ConstantEntry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn entries(&self) -> &[ConstantEntry] {
        &self.entries
    }
}

const fn entry(key: &'static str, value: &'static str, source: &'static str) -> ConstantEntry {
    ConstantEntry { key, value, source }
}

pub fn constants() -> ConstantsRegistry {
    ConstantsRegistry {
        entries: vec![
            entry("pi7s_sphere", "Z/240{sigma}", "stable 7-stem, image of J; sigma the octonionic Hopf map"),
            entry("pi7s_so_mod_so6", "Z/4", "Paechter's computation of the homotopy of SO/SO(6)"),
            entry("theta7", "Z/28", "Kervaire-Milnor group of homotopy 7-spheres"),
            entry("sigma_f3_adams_filtration", "2", "3-primary Adams spectral sequence for the sphere"),
            entry(
                "w_g1_framed_h1",
                "0 -> Z/4 -> H_1 -> Z/240 -> 0, split",
                "framed mapping classes of W_{g,1}, g >= 5",
            ),
            entry("mcg_1", "Z/4", "Kreck-Su classification, d = 1"),
            entry("mon_1", "0", "every degree-1 hypersurface is smooth"),
            entry("pi5_2local", "Z/4", "2-local homotopy of the Thom spectrum, 4 | d"),
            entry("pi7_2local_0mod8", "Z/2 + Z/16", "2-local homotopy of the Thom spectrum, d = 0 mod 8"),
            entry("pi7_2local_4mod8", "Z/2 + Z/8", "2-local homotopy of the Thom spectrum, d = 4 mod 8"),
            entry("pi8_2local", "Z_(2) + Z/4", "2-local homotopy of the Thom spectrum, 4 | d"),
        ],
    }
}

/// Outcome of one module in a report. Skipped is not a failure.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Section<T> {
    Computed { value: T },
    Skipped { reason: String },
    Failed { error: String },
}

impl<T> Section<T> {
    fn from_result<E: std::fmt::Display>(r: Result<T, E>) -> Self {
        match r {
            Ok(value) => Section::Computed { value },
            Err(e) => Section::Failed { error: e.to_string() },
        }
    }

    fn skipped(reason: impl Into<String>) -> Self {
        Section::Skipped { reason: reason.into() }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Section::Computed { value } => Some(value),
            _ => None,
        }
    }

    pub fn is_failed(&self) -> bool {
        matches!(self, Section::Failed { .. })
    }
}

/// A value with the module or registry key it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sourced<T> {
    pub value: T,
    pub source: String,
}

fn sourced<T>(value: T, source: &str) -> Sourced<T> {
    Sourced {
        value,
        source: source.to_string(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadformSection {
    pub ker_rho: KerRhoDescriptor,
    pub scan: Section<InvariantSubgroupReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhamSection {
    pub summary: PhamSummary,
    pub checks: Vec<Check>,
    /// Checks are asserted for `d >= 3` and only recorded below.
    pub asserted: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EinfOutcome {
    pub label: String,
    pub stems: Vec<StemOutcome>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtSection {
    pub p: u32,
    pub context: String,
    pub s_max: usize,
    pub n_max: u32,
    /// `dims[s][stem]`.
    pub dims: Vec<Vec<usize>>,
    pub einf: Vec<EinfOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub module: String,
    pub name: String,
    pub pass: bool,
}

fn check(module: &str, name: &str, pass: bool) -> Check {
    Check {
        module: module.to_string(),
        name: name.to_string(),
        pass,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremSummary {
    /// The structure results are stated for `d >= 3`.
    pub applies: bool,
    /// `Theta_7 / Ker(Theta_7 -> MCG_d)`, the disc-supported part of `Im(alpha)`.
    pub disc_part: Sourced<String>,
    pub disc_part_order: Sourced<u64>,
    pub target: Sourced<String>,
    pub ker_rho: Sourced<String>,
    pub extension: Sourced<String>,
    /// The finite residual of `Im(alpha)` equals the disc part.
    pub finite_residual: Sourced<String>,
    /// The part of `K_d` not hit by `Theta_7`, detected by `kappa`.
    pub coker_phi: Sourced<String>,
    pub theta7: Sourced<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub schema: &'static str,
    pub d: i64,
    pub degenerate: bool,
    pub notes: Vec<String>,
    pub hypersurface: Section<HypersurfaceInvariants>,
    pub kreck_su: Section<MCGTableRow>,
    pub arf: Section<u8>,
    pub quadform: Section<QuadformSection>,
    pub pham: Section<PhamSection>,
    pub jtheory: Section<JamesVerdict>,
    pub ext: Vec<Section<ExtSection>>,
    pub theorem_summary: Section<TheoremSummary>,
    pub checks: Vec<Check>,
    pub all_pass: bool,
}

fn quadform_section(d: i64) -> Result<QuadformSection, ReportError> {
    let err = module_err("quadform");
    let ker_rho = ker_rho_description(d).map_err(|e| err(e.to_string()))?;
    let n = ker_rho.cyclic_order;
    let scan = if (2..=4).contains(&n) {
        let arf = if d % 2 == 1 { arf_of_hypersurface(d).map_err(|e| err(e.to_string()))? } else { 0 };
        Section::from_result(invariant_subgroup_scan(n as u32, 2, arf))
    } else {
        Section::skipped(format!("exhaustive scan runs for moduli 2..=4, here {n}"))
    };
    Ok(QuadformSection { ker_rho, scan })
}

fn pham_section(d: i64) -> Section<PhamSection> {
    let max = pham::degree_bound();
    if d < 2 || d > max {
        return Section::skipped(format!("group-ring computation runs for 2 <= d <= {max}"));
    }
    Section::from_result(pham::summarize(d).map(|summary| PhamSection {
        checks: summary.checks().into_iter().map(|(n, ok)| check("pham", &n, ok)).collect(),
        asserted: d >= 3,
        summary,
    }))
}

fn ext_section(p: u32, d: i64) -> Result<ExtSection, ReportError> {
    let err = module_err("steenrod_ext");
    let chart: ExtChart = ext_chart(p, d, REPORT_S_MAX, REPORT_N_MAX).map_err(|e| err(e.to_string()))?;
    let mut einf = Vec::new();
    let outcomes: &[(ThreePrimaryOutcome, &str)] = match p {
        2 if d % 4 == 0 => &[(ThreePrimaryOutcome::NoDifferential, "unique pattern")],
        3 if d % 3 == 0 => &[
            (ThreePrimaryOutcome::NoDifferential, "d2 from (8,0) zero"),
            (ThreePrimaryOutcome::D2Nonzero, "d2 from (8,0) nonzero"),
        ],
        _ => &[],
    };
    for &(outcome, label) in outcomes {
        let pattern = differential_pattern(p, d, outcome).map_err(|e| err(e.to_string()))?;
        let applied = apply_differential_pattern(&chart, &pattern).map_err(|e| err(e.to_string()))?;
        einf.push(EinfOutcome {
            label: label.to_string(),
            stems: applied.einf.unwrap_or_default(),
        });
    }
    Ok(ExtSection {
        p,
        context: chart.context,
        s_max: chart.s_max,
        n_max: chart.n_max,
        dims: chart.dims,
        einf,
    })
}

fn theorem_summary(d: i64, row: &MCGTableRow, reg: &ConstantsRegistry) -> TheoremSummary {
    let disc = row.theta7_mod_ker.to_string();
    let target = if d % 2 == 1 {
        "Aut(H_3, lambda, mu)"
    } else {
        "Aut(H_3, lambda)"
    };
    let ker_rho = if d % 2 == 1 {
        format!("Hom(H_3, Z/{d})")
    } else {
        format!("Hom(H_3, ker(mu: Z/{d} -> Z/2))")
    };
    let theta7 = reg.get("theta7").expect("registry entry");
    TheoremSummary {
        applies: d >= 3,
        disc_part: sourced(disc.clone(), "kreck_su.theta7_mod_ker"),
        disc_part_order: sourced(row.theta7_mod_ker.order(), "kreck_su.theta7_mod_ker"),
        target: sourced(format!("Aut(pi_3, lambda, mu) -> {target}"), "quadform.ker_rho_description"),
        ker_rho: sourced(ker_rho, "quadform.ker_rho_description"),
        extension: sourced(
            format!("0 -> {disc} -> Im(alpha) -> Aut(pi_3, lambda, mu) -> 0"),
            "kreck_su.theta7_mod_ker",
        ),
        finite_residual: sourced(disc, "kreck_su.theta7_mod_ker"),
        coker_phi: sourced(row.coker_phi.to_string(), "kreck_su.coker_phi"),
        theta7: sourced(theta7.value.to_string(), "constants.theta7"),
    }
}

fn collect_checks(r: &DegreeReport) -> Vec<Check> {
    let mut c = Vec::new();
    if let Some(h) = r.hypersurface.value() {
        c.push(check("hypersurface", "b3 = 4 - chi", h.b3 == 4 - h.euler_char));
        c.push(check("hypersurface", "b3 even and nonnegative", h.b3 >= 0 && h.b3 % 2 == 0));
        if r.d >= 3 {
            c.push(check("hypersurface", "g >= 5", h.g >= 5));
        }
    }
    if let Some(row) = r.kreck_su.value() {
        c.push(check("kreck_su", "|Ker| |Theta_7/Ker| = 28", row.is_consistent()));
        c.push(check("kreck_su", "Theta_7/Ker cyclic", row.theta7_mod_ker.is_cyclic()));
        c.push(check(
            "kreck_su",
            "Coker nontrivial only if 3 | d or 4 | d",
            row.coker_phi.order() == 1 || r.d % 3 == 0 || r.d % 4 == 0,
        ));
    }
    if let Some(q) = r.quadform.value() {
        if let Some(scan) = q.scan.value() {
            c.push(check("quadform", "invariant subgroups are k (Z/n)^{2g}", scan.all_of_form_k_times_lattice));
        }
    }
    if let Some(p) = r.pham.value() {
        c.extend(p.checks.iter().cloned());
    }
    if let Some(j) = r.jtheory.value() {
        c.push(check("jtheory", "James periodicity at the expected shift", j.holds));
    }
    for e in r.ext.iter().filter_map(Section::value) {
        for o in &e.einf {
            let order = |n: usize| o.stems.get(n).map(|s| s.torsion_order);
            if e.p == 2 {
                let want = if r.d % 8 == 0 { 32 } else { 16 };
                c.push(check("steenrod_ext", "2-local stem 7 order", order(7) == Some(want)));
                c.push(check("steenrod_ext", "2-local stem 5 order", order(5) == Some(4)));
            } else {
                c.push(check(
                    "steenrod_ext",
                    &format!("3-local stem 7 order ({})", o.label),
                    matches!(order(7), Some(3) | Some(9)),
                ));
            }
        }
    }
    if let (Some(t), Some(row)) = (r.theorem_summary.value(), r.kreck_su.value()) {
        c.push(check(
            "report",
            "theorem summary order matches kreck_su",
            t.disc_part_order.value == THETA7_ORDER / row.ker_phi.order(),
        ));
    }
    c
}

/// Every module that applies to `d`; inapplicable ones are marked skipped.
pub fn build_report(d: i64) -> Result<DegreeReport, ReportError> {
    if d < 1 {
        return Err(ReportError::Degree(d));
    }
    let reg = constants();
    // the expensive modules run side by side; fields are filled in a fixed order
    let (quadform, pham, ext) = std::thread::scope(|s| {
        let q = s.spawn(|| match quadform_section(d) {
            Ok(v) => Section::Computed { value: v },
            Err(e) => Section::Failed { error: e.to_string() },
        });
        let p = s.spawn(|| pham_section(d));
        let e = s.spawn(|| {
            let mut out = Vec::new();
            if d % 2 == 0 {
                out.push(Section::from_result(ext_section(2, d)));
            }
            out.push(Section::from_result(ext_section(3, d)));
            out
        });
        (
            q.join().expect("quadform thread"),
            p.join().expect("pham thread"),
            e.join().expect("ext thread"),
        )
    });
    let hypersurface = Section::from_result(compute_invariants(d));
    let kreck_su = Section::from_result(kreck_su::mcg_row(d));
    let arf = if d % 2 == 1 {
        Section::from_result(arf_of_hypersurface(d))
    } else {
        Section::skipped("mu descends to H_3 only for odd d")
    };
    let jtheory = if d % 4 == 0 {
        Section::from_result(james_periodicity_check(d))
    } else {
        Section::skipped("periodicity check applies when 4 | d")
    };
    let theorem_summary = match kreck_su.value() {
        Some(row) => Section::Computed {
            value: theorem_summary(d, row, &reg),
        },
        None => Section::skipped("kreck_su row unavailable"),
    };
    let degenerate = d <= 2;
    let mut notes = Vec::new();
    if degenerate {
        notes.push("X_d has no S^3 x S^3 summands; the structure results assume d >= 3".to_string());
        notes.push("Im(alpha) is trivial for d <= 2".to_string());
        if d == 1 {
            notes.push(format!("MCG_1 = {}", reg.get("mcg_1").expect("registry entry").value));
            notes.push(format!("Mon_1 = {}", reg.get("mon_1").expect("registry entry").value));
        } else {
            notes.push("MCG_2 = 0".to_string());
        }
    }
    if d >= 3 {
        if let Some(row) = kreck_su.value() {
            if row.coker_phi.order() > 1 {
                notes.push(format!("Coker(Phi) = {} is the part of K_d detected by kappa", row.coker_phi));
            }
        }
    }
    let mut report = DegreeReport {
        schema: SCHEMA,
        d,
        degenerate,
        notes,
        hypersurface,
        kreck_su,
        arf,
        quadform,
        pham,
        jtheory,
        ext,
        theorem_summary,
        checks: Vec::new(),
        all_pass: false,
    };
    report.checks = collect_checks(&report);
    let failed_section = report.hypersurface.is_failed()
        || report.kreck_su.is_failed()
        || report.arf.is_failed()
        || report.quadform.is_failed()
        || report.pham.is_failed()
        || report.jtheory.is_failed()
        || report.ext.iter().any(Section::is_failed);
    report.all_pass = !failed_section && report.checks.iter().all(|c| c.pass);
    Ok(report)
}

pub fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn status<T>(s: &Section<T>) -> String {
    match s {
        Section::Computed { .. } => "computed".into(),
        Section::Skipped { reason } => format!("skipped ({reason})"),
        Section::Failed { error } => format!("FAILED: {error}"),
    }
}

pub fn to_text(r: &DegreeReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "degree {}{}", r.d, if r.degenerate { " (degenerate)" } else { "" });
    for n in &r.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    if let Some(h) = r.hypersurface.value() {
        let _ = writeln!(
            s,
            "hypersurface: c = {:?}, chi = {}, b3 = {}, g = {}, p1 = {} y",
            h.chern, h.euler_char, h.b3, h.g, h.p1_coeff
        );
    }
    if let Some(row) = r.kreck_su.value() {
        let _ = writeln!(
            s,
            "kreck_su: Ker = {}, Theta_7/Ker = {}, Coker = {}",
            row.ker_phi, row.theta7_mod_ker, row.coker_phi
        );
    }
    let _ = writeln!(s, "arf: {}", r.arf.value().map_or_else(|| status(&r.arf), |a| a.to_string()));
    let _ = writeln!(s, "quadform: {}", status(&r.quadform));
    let _ = writeln!(s, "pham: {}", status(&r.pham));
    let _ = writeln!(s, "jtheory: {}", status(&r.jtheory));
    for e in &r.ext {
        match e.value() {
            Some(x) => {
                let _ = write!(s, "ext p={} ({}):", x.p, x.context);
                if x.einf.is_empty() {
                    s.push_str(" E2 only, no differential pattern for this residue");
                }
                for o in &x.einf {
                    let orders: Vec<String> = o
                        .stems
                        .iter()
                        .filter(|t| t.stem >= 4)
                        .map(|t| format!("{}:{}", t.stem, t.torsion_order))
                        .collect();
                    let _ = write!(s, " [{}] {}", o.label, orders.join(" "));
                }
                s.push('\n');
            }
            None => {
                let _ = writeln!(s, "ext: {}", status(e));
            }
        }
    }
    if let Some(t) = r.theorem_summary.value() {
        let _ = writeln!(s, "theorem: {}", t.extension.value);
        let _ = writeln!(s, "  {}", t.target.value);
        let _ = writeln!(s, "  finite residual of Im(alpha): {}", t.finite_residual.value);
    }
    for c in &r.checks {
        let _ = writeln!(s, "[{}] {}: {}", if c.pass { "pass" } else { "FAIL" }, c.module, c.name);
    }
    let _ = writeln!(s, "{}", if r.all_pass { "all checks pass" } else { "some checks FAILED" });
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchRow {
    pub d: i64,
    pub degenerate: bool,
    pub b3: i64,
    pub g: i64,
    pub ker_phi: FiniteAbelianGroup,
    pub theta7_mod_ker: FiniteAbelianGroup,
    pub coker_phi: FiniteAbelianGroup,
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchReport {
    pub schema: &'static str,
    pub from: i64,
    pub to: i64,
    pub rows: Vec<BatchRow>,
    pub verdicts: Vec<Check>,
    pub all_pass: bool,
}

/// The cheap checks over a range of degrees.
pub fn batch(from: i64, to: i64) -> Result<BatchReport, ReportError> {
    if from > to {
        return Err(ReportError::EmptyRange { from, to });
    }
    if from < 1 {
        return Err(ReportError::Degree(from));
    }
    let err = |e: crate::hypersurface::HypersurfaceError| ReportError::Module {
        module: "hypersurface",
        message: e.to_string(),
    };
    let mut rows = Vec::new();
    for d in from..=to {
        let h = compute_invariants(d).map_err(err)?;
        let row = kreck_su::mcg_row(d).map_err(err)?;
        rows.push(BatchRow {
            d,
            degenerate: d <= 2,
            b3: h.b3,
            g: h.g,
            consistent: row.is_consistent() && h.b3 == 4 - h.euler_char && h.b3 >= 0 && h.b3 % 2 == 0,
            ker_phi: row.ker_phi,
            theta7_mod_ker: row.theta7_mod_ker,
            coker_phi: row.coker_phi,
        });
    }
    let verdicts = vec![
        check("batch", "order 28 consistency", rows.iter().all(|r| r.consistent)),
        check("batch", "g >= 5 for d >= 3", rows.iter().filter(|r| r.d >= 3).all(|r| r.g >= 5)),
        check(
            "batch",
            "Coker nontrivial only if 3 | d or 4 | d",
            rows.iter().all(|r| r.coker_phi.order() == 1 || r.d % 3 == 0 || r.d % 4 == 0),
        ),
        check("batch", "residue tables partition Z/16", kreck_su::validate_tables().is_ok()),
    ];
    let all_pass = verdicts.iter().all(|c| c.pass);
    Ok(BatchReport {
        schema: SCHEMA,
        from,
        to,
        rows,
        verdicts,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_report() {
        let r = build_report(3).unwrap();
        assert!(r.all_pass, "{}", to_text(&r));
        // the kernel of Im(alpha) -> Aut is Theta_7/Ker = Z/2, with Ker(Phi) = Z/14
        assert_eq!(r.theorem_summary.value().unwrap().disc_part.value, "Z/2");
        assert_eq!(r.kreck_su.value().unwrap().ker_phi.to_string(), "Z/14");
        assert_eq!(*r.arf.value().unwrap(), 1);
        assert!(r.pham.value().unwrap().summary.certificate.holds);
        assert!(matches!(r.jtheory, Section::Skipped { .. }));
    }

    #[test]
    fn degenerate_degrees() {
        let r = build_report(1).unwrap();
        assert!(r.degenerate);
        assert!(r.notes.iter().any(|n| n == "MCG_1 = Z/4"));
        assert!(r.notes.iter().any(|n| n == "Mon_1 = 0"));
        assert!(r.all_pass);
        assert!(build_report(2).unwrap().degenerate);
        assert!(build_report(0).is_err());
    }

    #[test]
    fn cokernel_note_at_twelve() {
        let r = build_report(12).unwrap();
        assert_eq!(r.theorem_summary.value().unwrap().coker_phi.value, "Z/6");
        assert!(r.notes.iter().any(|n| n.contains("Z/6")));
        assert!(matches!(r.pham, Section::Skipped { .. }));
        assert!(r.all_pass, "{}", to_text(&r));
    }

    #[test]
    fn batches() {
        let b = batch(3, 100).unwrap();
        assert!(b.all_pass);
        assert_eq!(b.rows.len(), 98);
        assert!(batch(1, 2).unwrap().rows.iter().all(|r| r.degenerate));
        assert!(batch(5, 4).is_err());
    }

    #[test]
    fn registry() {
        let reg = constants();
        assert_eq!(reg.get("theta7").unwrap().value, "Z/28");
        assert_eq!(reg.get("pi7s_so_mod_so6").unwrap().value, "Z/4");
        assert!(reg.get("missing").is_none());
    }
}
