//! Command handlers and their report schemas. Reports serialize with
//! declaration field order, so identical inputs produce byte-identical
//! output.

use std::fs;
use std::path::Path;

use serde::Serialize;

use gateswitch::budget::Budget;
use gateswitch::circseq::{
    count_switches, gate_profile, switch_bounds, two_phase_sequence, GateSet,
};
use gateswitch::ksets::{
    self, f_lr, gon_configuration, kset_counts, load_points, sandwich_check, LRSpec, PointConfig,
};
use gateswitch::multiperm::{
    closed_form_diameter, diameter, diameter_bounds, h_representation, Composition,
};
use gateswitch::oracle;
use gateswitch::perm_core::CircularSequence;
use gateswitch::verify;

use crate::error::{from_kset, from_multiperm, from_oracle, usage, CliError};
use crate::{Command, Format, OracleOp};

pub struct Context {
    pub format: Format,
    pub quiet: bool,
    pub budget: Budget,
}

/// Writes one line to stdout; a closed pipe (e.g. `| head`) ends the
/// process with the conventional SIGPIPE status instead of panicking.
fn write_line(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{text}").is_err() {
        std::process::exit(141);
    }
}

impl Context {
    /// Emits a report: the quiet line, CSV rows when asked and available,
    /// or pretty JSON.
    fn emit<T: Serialize>(
        &self,
        quiet_line: String,
        json: &T,
        csv: Option<Vec<String>>,
    ) -> Result<(), CliError> {
        if self.quiet {
            write_line(&quiet_line);
            return Ok(());
        }
        match self.format {
            Format::Json => {
                let text =
                    serde_json::to_string_pretty(json).expect("reports serialize without failure");
                write_line(&text);
            }
            Format::Csv => match csv {
                Some(rows) => {
                    for row in rows {
                        write_line(&row);
                    }
                }
                None => {
                    return Err(CliError::Usage(
                        "csv output is only available for ksets, verify and diameter-spectrum"
                            .to_string(),
                    ))
                }
            },
        }
        Ok(())
    }
}

pub fn run(ctx: &Context, command: Command) -> Result<u8, CliError> {
    match command {
        Command::Bounds { n, gates } => cmd_bounds(ctx, n, &gates),
        Command::Construct { n, gates } => cmd_construct(ctx, n, &gates),
        Command::Diameter {
            composition,
            bounds,
            closed_form,
            oracle,
        } => cmd_diameter(ctx, &composition, bounds, closed_form, oracle),
        Command::Hrep {
            composition,
            values,
        } => cmd_hrep(ctx, &composition, values.as_deref()),
        Command::Oracle { op } => cmd_oracle(ctx, op),
        Command::Ksets {
            points,
            left,
            right,
            sandwich,
        } => cmd_ksets(ctx, &points, left.as_deref(), right.as_deref(), sandwich),
        Command::Gon { k, n, out } => cmd_gon(ctx, k, n, out.as_deref()),
        Command::Perturb { points, q, out } => cmd_perturb(ctx, &points, q, out.as_deref()),
        Command::Verify {
            suite,
            max_n,
            seeds,
            samples,
            seed,
        } => cmd_verify(ctx, &suite, max_n, seeds, samples, seed),
        Command::DiameterSpectrum { n } => cmd_spectrum(ctx, n),
    }
}

fn parse_gates(n: u8, text: &str) -> Result<GateSet, CliError> {
    GateSet::parse(n, text).map_err(usage)
}

fn parse_composition(text: &str) -> Result<Composition, CliError> {
    Composition::parse(text).map_err(from_multiperm)
}

fn read_config(path: &Path) -> Result<PointConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|err| CliError::Usage(format!("{}: {err}", path.display())))?;
    load_points(&text).map_err(usage)
}

fn parse_k_list(text: &str) -> Result<Vec<u8>, CliError> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<u8>()
                .map_err(|_| CliError::Usage(format!("could not parse k value {t:?}")))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// bounds / construct

#[derive(Serialize)]
struct BoundsReport {
    n: u8,
    gates: Vec<u8>,
    distances: Vec<u8>,
    left: u8,
    right: u8,
    total_cost: u32,
    lower: u32,
    upper: u32,
}

fn bounds_report(gs: &GateSet) -> BoundsReport {
    let profile = gate_profile(gs);
    let (lower, upper) = switch_bounds(gs);
    BoundsReport {
        n: gs.n(),
        gates: gs.positions().to_vec(),
        distances: profile.distances,
        left: profile.left_count,
        right: profile.right_count,
        total_cost: profile.total_cost,
        lower,
        upper,
    }
}

fn cmd_bounds(ctx: &Context, n: u8, gates: &str) -> Result<u8, CliError> {
    let gs = parse_gates(n, gates)?;
    let report = bounds_report(&gs);
    let quiet = format!("{} {}", report.lower, report.upper);
    ctx.emit(quiet, &report, None)?;
    Ok(0)
}

#[derive(Serialize)]
struct TallyReport {
    total: u32,
    good: u32,
    bad: u32,
}

#[derive(Serialize)]
struct ConstructReport {
    bounds: BoundsReport,
    gate_switches: TallyReport,
    phase_one_steps: usize,
    phase_one_endpoint: String,
    switch_counts: Vec<u32>,
    permutations: Vec<String>,
    /// One line per step: "step position left-value right-value".
    events: Vec<String>,
}

fn sequence_lines(seq: &CircularSequence) -> (Vec<String>, Vec<String>) {
    let perms = seq.permutations().iter().map(|p| p.to_string()).collect();
    let events = seq
        .events()
        .iter()
        .map(|e| format!("{} {} {} {}", e.step, e.position, e.values.0, e.values.1))
        .collect();
    (perms, events)
}

fn cmd_construct(ctx: &Context, n: u8, gates: &str) -> Result<u8, CliError> {
    let gs = parse_gates(n, gates)?;
    let tp = two_phase_sequence(&gs);
    let tally = count_switches(&tp.sequence, &gs).expect("constructed sequences validate");
    let (permutations, events) = sequence_lines(&tp.sequence);
    let report = ConstructReport {
        bounds: bounds_report(&gs),
        gate_switches: TallyReport {
            total: tally.total,
            good: tally.good,
            bad: tally.bad,
        },
        phase_one_steps: tp.phase_one_steps,
        phase_one_endpoint: tp.phase_one_endpoint().to_string(),
        switch_counts: tp.sequence.switch_counts(),
        permutations,
        events,
    };
    ctx.emit(report.gate_switches.total.to_string(), &report, None)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// diameter / hrep / diameter-spectrum

#[derive(Serialize)]
struct DiameterReport {
    composition: Vec<u8>,
    n: u8,
    vertex_count: u128,
    diameter: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<(u32, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_all_pairs: Option<u32>,
}

fn cmd_diameter(
    ctx: &Context,
    composition: &str,
    bounds: bool,
    closed_form: bool,
    oracle_flag: bool,
) -> Result<u8, CliError> {
    let c = parse_composition(composition)?;
    let d = diameter(&c, &ctx.budget).map_err(from_multiperm)?;
    let report = DiameterReport {
        composition: c.parts().to_vec(),
        n: c.total(),
        vertex_count: c.vertex_count(),
        diameter: d,
        bounds: bounds.then(|| diameter_bounds(&c)),
        closed_form: if closed_form {
            closed_form_diameter(&c)
        } else {
            None
        },
        oracle_all_pairs: if oracle_flag {
            Some(oracle::all_pairs_diameter(&c, &ctx.budget).map_err(from_oracle)?)
        } else {
            None
        },
    };
    ctx.emit(d.to_string(), &report, None)?;
    Ok(0)
}

#[derive(Serialize)]
struct HrepRow {
    subset: Vec<u8>,
    rhs: i64,
}

#[derive(Serialize)]
struct HrepReport {
    composition: Vec<u8>,
    n: u8,
    values: Vec<i64>,
    equality_rhs: i64,
    row_count: usize,
    rows: Vec<HrepRow>,
    text: Vec<String>,
}

fn cmd_hrep(ctx: &Context, composition: &str, values: Option<&[i64]>) -> Result<u8, CliError> {
    let c = parse_composition(composition)?;
    let h = h_representation(&c, values, &ctx.budget).map_err(from_multiperm)?;
    let report = HrepReport {
        composition: c.parts().to_vec(),
        n: c.total(),
        values: h.values.clone(),
        equality_rhs: h.equality_rhs,
        row_count: h.rows.len(),
        rows: h
            .rows
            .iter()
            .map(|r| HrepRow {
                subset: r.subset.clone(),
                rhs: r.rhs,
            })
            .collect(),
        text: h.rows_text(c.total()),
    };
    ctx.emit(report.row_count.to_string(), &report, None)?;
    Ok(0)
}

#[derive(Serialize)]
struct SpectrumEntry {
    diameter: u32,
    compositions: Vec<String>,
}

#[derive(Serialize)]
struct SpectrumReport {
    n: u8,
    step_total: u32,
    achieved: Vec<SpectrumEntry>,
    missing: Vec<u32>,
}

fn cmd_spectrum(ctx: &Context, n: u8) -> Result<u8, CliError> {
    if !(2..=16).contains(&n) {
        return Err(CliError::Usage(format!("n={n} out of range 2..=16")));
    }
    let mut achieved: std::collections::BTreeMap<u32, Vec<String>> =
        std::collections::BTreeMap::new();
    for c in verify::all_compositions(n) {
        let d = diameter(&c, &ctx.budget).map_err(from_multiperm)?;
        achieved.entry(d).or_default().push(c.to_string());
    }
    let step_total = n as u32 * (n as u32 - 1) / 2;
    let missing = (1..=step_total)
        .filter(|d| !achieved.contains_key(d))
        .collect();
    let report = SpectrumReport {
        n,
        step_total,
        achieved: achieved
            .into_iter()
            .map(|(diameter, compositions)| SpectrumEntry {
                diameter,
                compositions,
            })
            .collect(),
        missing,
    };
    let quiet = report
        .achieved
        .iter()
        .map(|e| e.diameter.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    let mut csv = vec!["diameter,composition".to_string()];
    for entry in &report.achieved {
        for c in &entry.compositions {
            csv.push(format!("{},\"{}\"", entry.diameter, c));
        }
    }
    ctx.emit(quiet, &report, Some(csv))?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// oracle

#[derive(Serialize)]
struct MinSwitchesReport {
    n: u8,
    gates: Vec<u8>,
    min_switches: u32,
    lower: u32,
    upper: u32,
}

#[derive(Serialize)]
struct EnumerateReport {
    n: u8,
    count: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    switch_positions: Option<Vec<String>>,
}

#[derive(Serialize)]
struct CountReport {
    n: u8,
    count: u128,
}

#[derive(Serialize)]
struct AllPairsReport {
    composition: Vec<u8>,
    diameter: u32,
}

#[derive(Serialize)]
struct BruteKsetsReport {
    n: u8,
    k: u8,
    left: u64,
    right: u64,
    total: u64,
}

fn cmd_oracle(ctx: &Context, op: OracleOp) -> Result<u8, CliError> {
    match op {
        OracleOp::MinSwitches { n, gates } => {
            let gs = parse_gates(n, &gates)?;
            let min = oracle::min_switches(&gs, &ctx.budget).map_err(from_oracle)?;
            let (lower, upper) = switch_bounds(&gs);
            let report = MinSwitchesReport {
                n,
                gates: gs.positions().to_vec(),
                min_switches: min,
                lower,
                upper,
            };
            ctx.emit(min.to_string(), &report, None)?;
        }
        OracleOp::Enumerate { n, count_only } => {
            let mut positions = Vec::new();
            let mut count: u128 = 0;
            for seq in oracle::enumerate_sequences(n, &ctx.budget).map_err(from_oracle)? {
                count += 1;
                if !count_only {
                    positions.push(
                        seq.events()
                            .iter()
                            .map(|e| e.position.to_string())
                            .collect::<Vec<_>>()
                            .join(" "),
                    );
                }
            }
            let report = EnumerateReport {
                n,
                count,
                switch_positions: (!count_only).then_some(positions),
            };
            ctx.emit(count.to_string(), &report, None)?;
        }
        OracleOp::Count { n } => {
            let count = oracle::count_sequences(n, &ctx.budget).map_err(from_oracle)?;
            let report = CountReport { n, count };
            ctx.emit(count.to_string(), &report, None)?;
        }
        OracleOp::AllPairs { composition } => {
            let c = parse_composition(&composition)?;
            let d = oracle::all_pairs_diameter(&c, &ctx.budget).map_err(from_oracle)?;
            let report = AllPairsReport {
                composition: c.parts().to_vec(),
                diameter: d,
            };
            ctx.emit(d.to_string(), &report, None)?;
        }
        OracleOp::Ksets { points, k } => {
            let cfg = read_config(&points)?;
            let counts = oracle::ksets_bruteforce(&cfg, k).map_err(from_kset)?;
            let report = BruteKsetsReport {
                n: cfg.n(),
                k,
                left: counts.left,
                right: counts.right,
                total: counts.total,
            };
            ctx.emit(
                format!("{} {} {}", counts.left, counts.right, counts.total),
                &report,
                None,
            )?;
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// ksets / gon / perturb

#[derive(Serialize)]
struct KsetEntryReport {
    k: u8,
    left: u64,
    right: u64,
    total: u64,
}

#[derive(Serialize)]
struct SandwichSection {
    spec_left: Vec<u8>,
    spec_right: Vec<u8>,
    complement_left: Vec<u8>,
    complement_right: Vec<u8>,
    lower_diameter: u32,
    middle: u64,
    upper_bound: u64,
    complement_diameter: Option<u32>,
    complement_empty: bool,
    lower_ok: bool,
    upper_ok: bool,
}

#[derive(Serialize)]
struct KsetsReport {
    n: u8,
    points: Vec<String>,
    switch_counts: Vec<u32>,
    ksets: Vec<KsetEntryReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spec_left: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spec_right: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    f_lr: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sandwich: Option<SandwichSection>,
}

fn point_lines(cfg: &PointConfig) -> Vec<String> {
    cfg.points().iter().map(|p| p.to_string()).collect()
}

fn cmd_ksets(
    ctx: &Context,
    points: &Path,
    left: Option<&str>,
    right: Option<&str>,
    sandwich: bool,
) -> Result<u8, CliError> {
    let cfg = read_config(points)?;
    let counts = kset_counts(&cfg).map_err(usage)?;
    let entries: Vec<KsetEntryReport> = (1..=counts.max_k())
        .map(|k| KsetEntryReport {
            k,
            left: counts.f_left(k).expect("k in range"),
            right: counts.f_right(k).expect("k in range"),
            total: counts.f_total(k).expect("k in range"),
        })
        .collect();

    let spec = match (left, right, sandwich) {
        (None, None, false) => None,
        (l, r, _) => Some(
            LRSpec::new(
                l.map(parse_k_list).transpose()?.unwrap_or_default(),
                r.map(parse_k_list).transpose()?.unwrap_or_default(),
            )
            .map_err(from_kset)?,
        ),
    };

    let mut verdict_failed = false;
    let (mut f_value, mut sandwich_section) = (None, None);
    if let Some(spec) = &spec {
        f_value = Some(f_lr(&counts, spec).map_err(from_kset)?);
        if sandwich {
            let report = sandwich_check(&cfg, spec, &ctx.budget).map_err(from_kset)?;
            verdict_failed = !report.ok();
            sandwich_section = Some(SandwichSection {
                spec_left: report.spec.left().to_vec(),
                spec_right: report.spec.right().to_vec(),
                complement_left: report.complement.left().to_vec(),
                complement_right: report.complement.right().to_vec(),
                lower_diameter: report.lower_diameter,
                middle: report.middle,
                upper_bound: report.upper_bound,
                complement_diameter: report.complement_diameter,
                complement_empty: report.complement_empty,
                lower_ok: report.lower_ok,
                upper_ok: report.upper_ok,
            });
        }
    }

    let report = KsetsReport {
        n: cfg.n(),
        points: point_lines(&cfg),
        switch_counts: counts.switch_counts().to_vec(),
        ksets: entries,
        spec_left: spec.as_ref().map(|s| s.left().to_vec()),
        spec_right: spec.as_ref().map(|s| s.right().to_vec()),
        f_lr: f_value,
        sandwich: sandwich_section,
    };

    let quiet = if sandwich {
        if verdict_failed { "fail" } else { "pass" }.to_string()
    } else {
        report
            .ksets
            .iter()
            .map(|e| e.total.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut csv = vec!["k,left,right,total".to_string()];
    for e in &report.ksets {
        csv.push(format!("{},{},{},{}", e.k, e.left, e.right, e.total));
    }
    ctx.emit(quiet, &report, Some(csv))?;
    Ok(if verdict_failed { 1 } else { 0 })
}

#[derive(Serialize)]
struct GonReport {
    k: u8,
    n: u8,
    f_k: u64,
    points: Vec<String>,
}

fn cmd_gon(ctx: &Context, k: u8, n: u8, out: Option<&Path>) -> Result<u8, CliError> {
    if k == 0 || n < 2 * k + 1 || n > 16 {
        return Err(CliError::Usage(format!(
            "need 1 <= k and 2k+1 <= n <= 16, got k={k} n={n}"
        )));
    }
    let cfg = gon_configuration(k, n);
    let f_k = kset_counts(&cfg)
        .map_err(usage)?
        .f_total(k)
        .map_err(from_kset)?;
    let report = GonReport {
        k,
        n,
        f_k,
        points: point_lines(&cfg),
    };
    if let Some(path) = out {
        write_points_file(path, &report.points)?;
    }
    ctx.emit(f_k.to_string(), &report, None)?;
    Ok(0)
}

#[derive(Serialize)]
struct PerturbReport {
    q: u64,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<String>,
    points: Vec<String>,
}

fn cmd_perturb(ctx: &Context, points: &Path, q: u64, out: Option<&Path>) -> Result<u8, CliError> {
    if q == 0 {
        return Err(CliError::Usage("q must be positive".to_string()));
    }
    let text = fs::read_to_string(points)
        .map_err(|err| CliError::Usage(format!("{}: {err}", points.display())))?;
    let raw = ksets::parse_points(&text).map_err(usage)?;
    let moved = ksets::perturbed(&raw, q);
    let lines: Vec<String> = moved.iter().map(|p| p.to_string()).collect();
    let violation = PointConfig::new(moved).err().map(|e| e.to_string());
    let report = PerturbReport {
        q,
        valid: violation.is_none(),
        violation,
        points: lines,
    };
    if let Some(path) = out {
        write_points_file(path, &report.points)?;
    }
    let failed = !report.valid;
    ctx.emit(
        if failed { "degenerate" } else { "valid" }.to_string(),
        &report,
        None,
    )?;
    Ok(if failed { 1 } else { 0 })
}

fn write_points_file(path: &Path, lines: &[String]) -> Result<(), CliError> {
    let mut text = lines.join("\n");
    text.push('\n');
    fs::write(path, text).map_err(|err| CliError::Usage(format!("{}: {err}", path.display())))
}

// ---------------------------------------------------------------------------
// verify

#[derive(Serialize)]
struct CheckReport {
    name: String,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct VerifyReport {
    suite: String,
    passed: bool,
    checks: Vec<CheckReport>,
}

fn cmd_verify(
    ctx: &Context,
    suite: &str,
    max_n: Option<u8>,
    seeds: Option<u64>,
    samples: Option<u64>,
    seed: u64,
) -> Result<u8, CliError> {
    let budget = &ctx.budget;
    let pick = |default: u8| max_n.unwrap_or(default);
    let reports: Vec<verify::SuiteReport> = match suite {
        "theorem1" => vec![verify::bounds_suite(pick(8), budget)],
        "construction" => vec![verify::construction_suite(pick(8))],
        "bridge" => vec![verify::bridge_suite(pick(8), budget)],
        "farthest" => vec![verify::farthest_suite(
            pick(6),
            samples.unwrap_or(20),
            seed,
            budget,
        )],
        "closed-form" => vec![verify::closed_form_suite(pick(10), budget)],
        "permutohedron" => vec![verify::permutohedron_suite(pick(7), budget)],
        "enumeration" => vec![verify::enumeration_suite(pick(5), budget)],
        "fixture" => vec![verify::fixture_suite(budget)],
        "all-pairs" => vec![verify::all_pairs_suite(pick(6), budget)],
        "ksets" => vec![verify::kset_identity_suite(
            pick(10),
            seeds.unwrap_or(100),
            budget,
        )],
        "sandwich" => vec![
            verify::sandwich_suite(pick(9), seeds.unwrap_or(50), budget),
            verify::sandwich_spotcheck(budget),
        ],
        "gon" => vec![verify::gon_suite(3, pick(9))],
        "all" => vec![
            verify::bounds_suite(8, budget),
            verify::construction_suite(8),
            verify::bridge_suite(8, budget),
            verify::farthest_suite(6, 20, seed, budget),
            verify::closed_form_suite(10, budget),
            verify::permutohedron_suite(7, budget),
            verify::enumeration_suite(5, budget),
            verify::fixture_suite(budget),
            verify::all_pairs_suite(6, budget),
            verify::kset_identity_suite(10, seeds.unwrap_or(100), budget),
            verify::sandwich_suite(9, seeds.unwrap_or(50), budget),
            verify::sandwich_spotcheck(budget),
            verify::gon_suite(3, 9),
        ],
        other => {
            return Err(CliError::Usage(format!(
                "unknown suite {other:?}; see --help for the list"
            )))
        }
    };

    let checks: Vec<CheckReport> = reports
        .iter()
        .flat_map(|r| {
            r.checks.iter().map(|c| CheckReport {
                name: c.label.clone(),
                pass: c.passed,
                detail: c.detail.clone(),
            })
        })
        .collect();
    let passed = reports.iter().all(|r| r.passed());
    let report = VerifyReport {
        suite: suite.to_string(),
        passed,
        checks,
    };
    let mut csv = vec!["check,pass".to_string()];
    for c in &report.checks {
        csv.push(format!("\"{}\",{}", c.name, c.pass));
    }
    ctx.emit(
        if passed { "pass" } else { "fail" }.to_string(),
        &report,
        Some(csv),
    )?;
    Ok(if passed { 0 } else { 1 })
}
