mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use quotsing_core::group::DEFAULT_MAX_ORDER;
use quotsing_core::lab::{run_suite, Suite, SuiteOptions};
use quotsing_core::resolve::terminalize;
use quotsing_core::specfile::GroupSpecFile;
use quotsing_core::toric::abelianize;
use quotsing_core::{Error, GroupSpec, MatrixGroup};

use report::{to_json, AnalysisReport, VerifyReport, REPORT_FORMAT_VERSION};

#[derive(Parser)]
#[command(name = "quotsing", version, about = "Exact analysis of quotient singularities C^n/G")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classes, ages, classification and Euler numbers of a group.
    Analyze {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Crepant terminalization of an abelian quotient.
    Resolve {
        #[command(flatten)]
        group: GroupArgs,
        /// Write the resulting fan in text format.
        #[arg(long, value_name = "PATH")]
        out_fan: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run a check suite.
    Verify {
        /// One of: abelian, blowup, euler-proj, cclass-sum, type22, trichotomy, claims.
        suite: String,
        /// Largest denominator in generated families.
        #[arg(long, value_name = "N")]
        max_d: Option<u64>,
        /// Directory with one subdirectory of spec files per suite.
        #[arg(long, value_name = "DIR")]
        corpus: Option<PathBuf>,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GroupSource {
    /// Diagonal cyclic group, e.g. "1/3(1,1,1)".
    #[arg(long, value_name = "DIAG")]
    group: Option<String>,
    /// JSON group spec file.
    #[arg(long, value_name = "PATH")]
    group_file: Option<PathBuf>,
}

#[derive(Args)]
struct GroupArgs {
    #[command(flatten)]
    source: GroupSource,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
}

#[derive(Args)]
struct OutArgs {
    /// Write the JSON report here; "-" for standard output.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Shape(_) | Error::Input(_) | Error::Parse { .. } | Error::NonAbelian => 2,
            Error::GroupTooLarge { .. } => 3,
            Error::NotCanonical { .. } | Error::NotGorenstein => 4,
            Error::Internal(_) => 5,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_failure(message: String) -> Failure {
    Failure { code: 2, message }
}

fn load_group(src: &GroupSource) -> Result<GroupSpec, Failure> {
    match (&src.group, &src.group_file) {
        (Some(d), _) => Ok(GroupSpec::parse_diag(d)?),
        (None, Some(p)) => {
            let text = fs::read_to_string(p).map_err(|e| input_failure(format!("cannot read {}: {e}", p.display())))?;
            GroupSpecFile::parse(&text)
                .map(|f| f.spec)
                .map_err(|e| input_failure(format!("{}: {e}", p.display())))
        }
        (None, None) => Err(input_failure("one of --group or --group-file is required".into())),
    }
}

fn write_out(path: &Path, text: &str) -> Result<(), Failure> {
    if path.as_os_str() == "-" {
        print!("{text}");
        return Ok(());
    }
    fs::write(path, text).map_err(|e| input_failure(format!("cannot write {}: {e}", path.display())))
}

fn emit_json<T: serde::Serialize>(out: &OutArgs, report: &T) -> Result<(), Failure> {
    match &out.json {
        Some(p) => write_out(p, &to_json(report)),
        None => Ok(()),
    }
}

fn workers() -> Result<usize, Failure> {
    match std::env::var("WORKERS") {
        Err(_) => Ok(1),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(input_failure(format!("WORKERS must be an integer >= 1, got '{v}'"))),
        },
    }
}

/// Human-readable lines go to stdout unless the JSON report does.
struct Text {
    quiet: bool,
}

impl Text {
    fn new(out: &OutArgs) -> Self {
        Text {
            quiet: out.json.as_deref().is_some_and(|p| p.as_os_str() == "-"),
        }
    }

    fn line(&self, s: impl AsRef<str>) {
        if !self.quiet {
            println!("{}", s.as_ref());
        }
    }

    fn checks(&self, checks: &[quotsing_core::lab::CheckResult]) {
        for c in checks {
            self.line(format!("check {}", c.summary()));
        }
    }
}

fn cmd_analyze(group: &GroupArgs, out: &OutArgs) -> Result<u8, Failure> {
    let text = Text::new(out);
    let spec = load_group(&group.source)?;
    let report = report::analyze(&spec, group.max_order)?;
    let g = &report.group;
    text.line(format!("group {}: order {}, {} classes", g.name, g.order, g.class_count));
    text.line(format!("module type {}", g.module_type));
    text.line(format!("classification {}", g.classification));
    text.line(format!("weight-one classes {}", g.weight_one_classes));
    text.line(format!("contains center {}", g.contains_center));
    for w in &g.warnings {
        text.line(format!("warning: {w}"));
    }
    if let Some(t) = &report.toric {
        text.line(format!("toric multiplicity {}, junior points {}", t.multiplicity, t.junior_count));
    }
    text.checks(&report.checks);
    emit_json(out, &report)?;
    Ok(if report.checks.iter().all(|c| c.passed()) { 0 } else { 5 })
}

fn cmd_resolve(group: &GroupArgs, out_fan: Option<&Path>, out: &OutArgs) -> Result<u8, Failure> {
    let text = Text::new(out);
    let spec = load_group(&group.source)?;
    let g = MatrixGroup::closure(&spec, group.max_order)?;
    if !g.is_abelian() {
        return Err(input_failure("resolve requires an abelian group".into()));
    }
    let cone = abelianize(&g)?;
    let t = terminalize(&cone)?;
    let report = AnalysisReport {
        format_version: REPORT_FORMAT_VERSION,
        group: report::group_section(&g),
        toric: Some(report::toric_section(&cone, Some(&t))),
        checks: report::analysis_checks(&spec, &g, group.max_order)?,
    };
    text.line(format!(
        "fan: {} rays, {} cones, multiplicity sum {} (input {})",
        t.fan.rays.len(),
        t.fan.cones.len(),
        t.multiplicity_sum(),
        cone.multiplicity()
    ));
    text.line(format!(
        "crepant {}, terminal {}, smooth {}, volume conserved {}, faces compatible {}",
        t.crepant, t.terminal, t.smooth, t.volume_conserved, t.faces_compatible
    ));
    text.checks(&report.checks);
    if let Some(p) = out_fan {
        write_out(p, &t.fan.to_text())?;
    }
    emit_json(out, &report)?;
    let ok = t.all_verified() && report.checks.iter().all(|c| c.passed());
    Ok(if ok { 0 } else { 5 })
}

fn cmd_verify(
    suite: &str,
    max_d: Option<u64>,
    corpus: Option<PathBuf>,
    max_order: usize,
    out: &OutArgs,
) -> Result<u8, Failure> {
    let text = Text::new(out);
    let suite: Suite = suite.parse()?;
    let opts = SuiteOptions {
        max_d,
        corpus,
        max_order,
        workers: workers()?,
    };
    let checks = run_suite(suite, &opts)?;
    let report = VerifyReport::new(suite, checks);
    for c in report.checks.iter().filter(|c| !c.passed()) {
        text.line(format!("FAIL {}", c.summary()));
    }
    text.line(format!("{suite}: {} checks, {} passed, {} failed", report.total, report.passed, report.failed));
    emit_json(out, &report)?;
    Ok(if report.failed == 0 { 0 } else { 5 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { group, out } => cmd_analyze(group, out),
        Command::Resolve { group, out_fan, out } => cmd_resolve(group, out_fan.as_deref(), out),
        Command::Verify {
            suite,
            max_d,
            corpus,
            max_order,
            out,
        } => cmd_verify(suite, *max_d, corpus.clone(), *max_order, out),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
