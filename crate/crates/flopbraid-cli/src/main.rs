//! Command-line front end: parse a contraction spec, run the pipeline, emit
//! reports as JSON, text, DOT or SVG.
//!
//! Every command prints a machine-readable report (schema `flopbraid-report/1`)
//! and exits 0 exactly when every runtime invariant passed. DOT and SVG
//! payloads go to `--out` when given (the report then goes to stdout) or to
//! stdout (the report then goes to stderr).

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use flopbraid::arrangement::{
    self, build_arrangement, chamber_count_zaslavsky, chambers, codim2_walls, is_simplicial,
    Arrangement, ArrangementDoc, ChamberDoc,
};
use flopbraid::braid;
use flopbraid::contraction::{parse_spec, ContractionSpec};
use flopbraid::groupoid::{
    self, check_representation, relation_docs, relations_for, tracking_assignment,
    vertex_group_presentation, X1Graph,
};
use flopbraid::scan::{exhaustive_scan, min_path_law_holds};
use flopbraid::tracking::{explore, AtlasDoc, ChamberAtlas};
use serde::Serialize;
use serde_json::json;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "flopbraid",
    about = "Chamber structures, wall-crossing maps and braid relations for marked ADE contraction data",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the hyperplane arrangement of a contraction spec.
    Arrangement(CommonArgs),
    /// Explore the chamber atlas and run its invariant checks.
    Atlas(CommonArgs),
    /// Oriented chamber graph, codimension-two relations, representation verdict.
    Groupoid(CommonArgs),
    /// Verify the braid-word identities; optionally decide ad-hoc word pairs.
    BraidCheck(BraidArgs),
    /// Exhaustive verification scan over small marked diagrams.
    Scan(ScanArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Contraction spec, JSON.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the payload to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Verify::Fast)]
    verify: Verify,
}

#[derive(Args)]
struct BraidArgs {
    /// Word pair "w1,w2" over letters a b A B to test for equality. Repeatable.
    #[arg(long)]
    query: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    /// Largest diagram rank to scan (at most 8).
    #[arg(long, default_value_t = 8)]
    scan_rank: usize,
    /// Largest white-subset size to scan (at most 3).
    #[arg(long, default_value_t = 2)]
    scan_white: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Verify {
    Fast,
    Full,
}

#[derive(Serialize)]
struct Check {
    name: String,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct Report {
    schema: &'static str,
    command: &'static str,
    ok: bool,
    checks: Vec<Check>,
    notes: Vec<String>,
    data: serde_json::Value,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report {
            schema: "flopbraid-report/1",
            command,
            ok: true,
            checks: Vec::new(),
            notes: Vec::new(),
            data: serde_json::Value::Null,
        }
    }

    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.ok &= pass;
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for c in &self.checks {
            out.push_str(&format!(
                "check {}: {} ({})\n",
                c.name,
                if c.pass { "pass" } else { "FAIL" },
                c.detail
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out.push_str(&format!("ok: {}\n", self.ok));
        out
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let (report, artifact, format, out) = match cli.command {
        Command::Arrangement(args) => {
            let spec = load_spec(&args.input)?;
            let (r, a) = cmd_arrangement(&spec, args.format, args.verify)?;
            (r, a, args.format, args.out)
        }
        Command::Atlas(args) => {
            let spec = load_spec(&args.input)?;
            if matches!(args.format, Format::Dot | Format::Svg) {
                bail!("atlas emits json or text; use the groupoid command for dot");
            }
            (cmd_atlas(&spec, args.verify), None, args.format, args.out)
        }
        Command::Groupoid(args) => {
            let spec = load_spec(&args.input)?;
            if args.format == Format::Svg {
                bail!("svg is produced by the arrangement command for two-curve specs");
            }
            let (r, a) = cmd_groupoid(&spec, args.format, args.verify)?;
            (r, a, args.format, args.out)
        }
        Command::BraidCheck(args) => {
            if matches!(args.format, Format::Dot | Format::Svg) {
                bail!("braid-check emits json or text");
            }
            (cmd_braid_check(&args.query)?, None, args.format, args.out)
        }
        Command::Scan(args) => {
            if matches!(args.format, Format::Dot | Format::Svg) {
                bail!("scan emits json or text");
            }
            if args.scan_rank > 8 {
                bail!("--scan-rank is capped at 8");
            }
            if args.scan_white > 3 {
                bail!("--scan-white is capped at 3");
            }
            (
                cmd_scan(args.scan_rank, args.scan_white)?,
                None,
                args.format,
                args.out,
            )
        }
    };
    emit(&report, artifact.as_deref(), format, out.as_deref())?;
    Ok(if report.ok { 0 } else { 1 })
}

fn load_spec(path: &Path) -> Result<ContractionSpec> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    parse_spec(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_payload(payload: &str, out: Option<&Path>) -> Result<bool> {
    match out {
        Some(path) => {
            std::fs::write(path, payload).with_context(|| format!("writing {}", path.display()))?;
            Ok(true)
        }
        None => {
            std::io::stdout().write_all(payload.as_bytes())?;
            Ok(false)
        }
    }
}

fn emit(report: &Report, artifact: Option<&str>, format: Format, out: Option<&Path>) -> Result<()> {
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(report)? + "\n";
            write_payload(&text, out)?;
        }
        Format::Text => {
            write_payload(&report.render_text(), out)?;
        }
        Format::Dot | Format::Svg => {
            let artifact = artifact.context("no payload for this format")?;
            let went_to_file = write_payload(artifact, out)?;
            let line = serde_json::to_string(report)?;
            if went_to_file {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
        }
    }
    Ok(())
}

fn arrangement_checks(report: &mut Report, arr: &Arrangement, chamber_count: usize, full: bool) {
    report.check(
        "positive_chamber",
        arr.has_positive_chamber(),
        "all coordinate hyperplanes present and all functionals nonnegative",
    );
    let z = chamber_count_zaslavsky(arr);
    report.check(
        "zaslavsky_count",
        chamber_count as u64 == z,
        format!("enumeration {chamber_count} vs lattice count {z}"),
    );
    if full {
        report.check(
            "simplicial",
            is_simplicial(arr),
            "every chamber is an open simplicial cone",
        );
    }
}

fn cmd_arrangement(
    spec: &ContractionSpec,
    format: Format,
    verify: Verify,
) -> Result<(Report, Option<String>)> {
    let mut report = Report::new("arrangement");
    let arr = build_arrangement(spec);
    let chams = match chambers(&arr) {
        Ok(c) => c,
        Err(e) => {
            report.check("chambers", false, e.to_string());
            return Ok((report, None));
        }
    };
    arrangement_checks(&mut report, &arr, chams.len(), verify == Verify::Full);
    report.note(format!(
        "{} hyperplanes in R^{}, {} chambers",
        arr.len(),
        arr.dim(),
        chams.len()
    ));
    report.data = json!({
        "arrangement": ArrangementDoc::from(&arr),
        "chamber_count": chams.len(),
        "chambers": chams.iter().map(ChamberDoc::from).collect::<Vec<_>>(),
    });
    let artifact = if format == Format::Svg {
        if arr.dim() != 2 {
            bail!("svg plots need a two-curve arrangement (dimension 2)");
        }
        Some(render_svg(&arr, chams.len()))
    } else if format == Format::Dot {
        bail!("dot is produced by the groupoid command");
    } else {
        None
    };
    Ok((report, artifact))
}

fn atlas_with_checks(spec: &ContractionSpec, report: &mut Report) -> Option<ChamberAtlas> {
    let arr = build_arrangement(spec);
    match explore(&arr) {
        Ok(atlas) => {
            report.check(
                "path_independence",
                true,
                "composite maps agree on every revisited chamber",
            );
            report.check(
                "local_frames",
                true,
                "every local frame keeps coordinate walls and nonnegative functionals",
            );
            let involutions = atlas
                .edges
                .iter()
                .all(|e| e.step.mul(&e.step).is_identity());
            report.check("involutions", involutions, "every wall-crossing map squares to the identity");
            let z = chamber_count_zaslavsky(&arr);
            report.check(
                "zaslavsky_count",
                atlas.chambers.len() as u64 == z,
                format!("atlas {} vs lattice count {z}", atlas.chambers.len()),
            );
            report.check(
                "simplicial",
                is_simplicial(&arr),
                "every chamber is an open simplicial cone",
            );
            Some(atlas)
        }
        Err(e) => {
            report.check("atlas", false, format!("exploration failed: {e}"));
            None
        }
    }
}

fn cmd_atlas(spec: &ContractionSpec, verify: Verify) -> Report {
    let mut report = Report::new("atlas");
    let Some(atlas) = atlas_with_checks(spec, &mut report) else {
        return report;
    };
    let arr = &atlas.arrangement;
    if arr.dim() == 2 {
        let walls = codim2_walls(arr);
        report.note(format!(
            "two-curve braid length d = {}",
            walls[0].multiplicity()
        ));
    }
    if verify == Verify::Full {
        let x1 = X1Graph::from_atlas(&atlas);
        match relations_for(arr, &x1) {
            Ok((_, relations)) => {
                match check_representation(&x1, &relations, &tracking_assignment(&atlas)) {
                    Ok(ok) => report.check(
                        "representation",
                        ok,
                        format!("{} codimension-two relations", relations.len()),
                    ),
                    Err(e) => report.check("representation", false, e.to_string()),
                }
            }
            Err(e) => report.check("representation", false, e.to_string()),
        }
        match min_path_law_holds(arr) {
            Ok(ok) => report.check(
                "minimal_paths",
                ok,
                "minimal positive path lengths equal separation counts",
            ),
            Err(e) => report.check("minimal_paths", false, e.to_string()),
        }
    }
    report.note(format!("{} chambers", atlas.chambers.len()));
    report.data = serde_json::to_value(AtlasDoc::from(&atlas)).expect("atlas serializes");
    report
}

fn cmd_groupoid(
    spec: &ContractionSpec,
    format: Format,
    verify: Verify,
) -> Result<(Report, Option<String>)> {
    let mut report = Report::new("groupoid");
    let Some(atlas) = atlas_with_checks(spec, &mut report) else {
        return Ok((report, None));
    };
    let arr = atlas.arrangement.clone();
    let x1 = X1Graph::from_atlas(&atlas);
    let (walls, relations) = match relations_for(&arr, &x1) {
        Ok(r) => r,
        Err(e) => {
            report.check("relations", false, e.to_string());
            return Ok((report, None));
        }
    };
    let lengths_ok = relations
        .iter()
        .all(|r| r.length() == walls[r.wall].multiplicity());
    report.check(
        "relation_lengths",
        lengths_ok,
        "every relation pair has the length of its wall multiplicity",
    );
    let rep_ok = match check_representation(&x1, &relations, &tracking_assignment(&atlas)) {
        Ok(ok) => ok,
        Err(e) => {
            report.check("representation", false, e.to_string());
            return Ok((report, None));
        }
    };
    report.check(
        "representation",
        rep_ok,
        format!(
            "tracking assignment against {} relations at {} walls",
            relations.len(),
            walls.len()
        ),
    );
    let presentation = vertex_group_presentation(&x1, &relations, 0);
    if verify == Verify::Full {
        report.check(
            "abelianization_rank",
            presentation.abelianization_rank == arr.len(),
            format!(
                "rank {} vs {} hyperplanes",
                presentation.abelianization_rank,
                arr.len()
            ),
        );
    }
    report.note(format!(
        "{} chambers, {} arrows, {} relations",
        x1.chamber_count,
        x1.arrows.len(),
        relations.len()
    ));
    report.data = json!({
        "vertices": x1.chamber_count,
        "arrows": x1
            .arrows
            .iter()
            .map(|a| json!({"src": a.src, "dst": a.dst, "wall": a.wall, "hyperplane": a.hyperplane}))
            .collect::<Vec<_>>(),
        "relations": serde_json::to_value(relation_docs(&walls, &relations))?,
        "representation_ok": rep_ok,
        "presentation": {
            "generators": presentation.generators.len(),
            "relators": presentation.relators.len(),
            "abelianization_rank": presentation.abelianization_rank,
        },
    });
    let artifact = (format == Format::Dot).then(|| groupoid::to_dot(&atlas, &x1));
    Ok((report, artifact))
}

fn cmd_braid_check(queries: &[String]) -> Result<Report> {
    let mut report = Report::new("braid-check");
    let example = braid::verify_example();
    for c in &example.checks {
        report.check(&c.name, c.pass, c.detail.clone());
    }
    let mut query_results = Vec::new();
    for q in queries {
        let (left, right) = q
            .split_once(',')
            .with_context(|| format!("query {q:?} must be \"word1,word2\""))?;
        let w1 = braid::BraidWord::parse(left.trim()).map_err(|e| anyhow::anyhow!("{e}"))?;
        let w2 = braid::BraidWord::parse(right.trim()).map_err(|e| anyhow::anyhow!("{e}"))?;
        let equal = braid::words_equal(&w1, &w2);
        report.note(format!("{w1} = {w2}: {equal}"));
        query_results.push(json!({
            "left": w1.to_string(),
            "right": w2.to_string(),
            "equal": equal,
            "left_pure": braid::is_pure(&w1),
            "right_pure": braid::is_pure(&w2),
        }));
    }
    report.data = json!({
        "example": serde_json::to_value(&example)?,
        "queries": query_results,
    });
    Ok(report)
}

fn cmd_scan(rank: usize, white: usize) -> Result<Report> {
    let mut report = Report::new("scan");
    let scan = exhaustive_scan(rank, white).map_err(|e| anyhow::anyhow!("{e}"))?;
    report.check(
        "simplicial",
        scan.all_simplicial,
        "every scanned arrangement is simplicial",
    );
    report.check(
        "counts_agree",
        scan.all_counts_agree,
        "enumeration, lattice count and atlas agree everywhere",
    );
    report.check(
        "minimal_paths",
        scan.path_law_holds,
        "minimal path law on all rank-2 arrangements",
    );
    report.note(format!(
        "{} targets scanned; max two-curve d = {}",
        scan.entries.len(),
        scan.max_two_curve_d
    ));
    if scan.d_bound_violations.is_empty() {
        report.note("two-curve bound d <= 8 holds over this scan".to_string());
    } else {
        // A violation contradicts an expected (unproved) bound; it is
        // reported as a counterexample, not treated as a failure.
        report.note(format!(
            "CONJECTURE COUNTEREXAMPLE: two-curve cases with d > 8: {:?}",
            scan.d_bound_violations
        ));
    }
    report.data = serde_json::to_value(&scan)?;
    Ok(report)
}

/// Static SVG of a rank-2 arrangement: the lines through the origin with
/// labels, plus a chamber-count annotation.
fn render_svg(arr: &Arrangement, chamber_count: usize) -> String {
    let r = 200.0_f64;
    let mut out = String::new();
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-240 -240 480 480\" \
         width=\"480\" height=\"480\">\n",
    );
    out.push_str("  <rect x=\"-240\" y=\"-240\" width=\"480\" height=\"480\" fill=\"white\"/>\n");
    for f in arr.hyperplanes() {
        let c = f.coeffs();
        let (a, b) = (c[0] as f64, c[1] as f64);
        // The line a x + b y = 0 has direction (-b, a); svg y points down.
        let len = (a * a + b * b).sqrt();
        let (dx, dy) = (-b / len, a / len);
        let (x1, y1) = (dx * r, -dy * r);
        let (x2, y2) = (-dx * r, dy * r);
        out.push_str(&format!(
            "  <line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" \
             stroke=\"black\" stroke-width=\"1.5\"/>\n"
        ));
        let (lx, ly) = (dx * r * 1.12, -dy * r * 1.12);
        out.push_str(&format!(
            "  <text x=\"{lx:.1}\" y=\"{ly:.1}\" font-size=\"12\" text-anchor=\"middle\">{f}</text>\n"
        ));
    }
    out.push_str(&format!(
        "  <text x=\"-230\" y=\"-220\" font-size=\"14\">{} hyperplanes, {} chambers</text>\n",
        arr.len(),
        chamber_count
    ));
    out.push_str("</svg>\n");
    out
}
