//! `eqcoh` command line: parse a diagram file, analyze it, print a report.
//!
//! Exit codes: 0 on success, 1 on usage, parse, or validation errors, 2 when
//! an internal cross-check fails.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eqcoh_core::analysis::{analyze, AnalysisOptions, DEFAULT_MAX_DEGREE};
use eqcoh_core::diagram::{bundled, parse_diagram, DiagramFile, OutputFormat};
use eqcoh_core::mvkernel::DEFAULT_SEED;
use eqcoh_core::report::{render_section, Section};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "eqcoh", version, about = "Equivariant cohomology of cohomogeneity-one actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report: ranks, case, formality, kernel, freeness, Hilbert series, CM certificate.
    Analyze(Common),
    /// Hilbert series of the kernel module.
    Hilbert(Common),
    /// Degree-by-degree kernel dimensions and the splitting check.
    Kernel(Common),
    /// Equivariant formality from the isotropy ranks.
    CheckFormality(Common),
    /// Module generators with the freeness verdict, basis, or torsion witness.
    Basis(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Diagram file; names of bundled diagrams such as `example_n2.diagram` also work.
    diagram: String,
    /// Even truncation degree [default: 40, or `max_degree` from the file].
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed for the regular-sequence fallback search.
    #[arg(long)]
    seed: Option<u64>,
    /// Cross-check every kernel slice against a brute-force solver.
    #[arg(long)]
    oracle: bool,
    /// Print timings to standard error.
    #[arg(long)]
    verbose: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn load(path: &str) -> Result<DiagramFile, String> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => match bundled(path) {
            Some(t) if !Path::new(path).exists() => t.to_string(),
            _ => return Err(format!("{path}: {e}")),
        },
    };
    parse_diagram(&text).map_err(|e| format!("{path}: {e}"))
}

/// Runs the command line `argv` (including the program name), writing the
/// report to `out` and diagnostics to `err`.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let (section, c) = match cli.command {
        Command::Analyze(c) => (Section::Full, c),
        Command::Hilbert(c) => (Section::Hilbert, c),
        Command::Kernel(c) => (Section::Kernel, c),
        Command::CheckFormality(c) => (Section::Formality, c),
        Command::Basis(c) => (Section::Basis, c),
    };
    let start = Instant::now();
    let file = match load(&c.diagram) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID;
        }
    };
    let opts = AnalysisOptions {
        max_degree: c.max_degree.or(file.options.max_degree).unwrap_or(DEFAULT_MAX_DEGREE),
        seed: c.seed.or(file.options.seed).unwrap_or(DEFAULT_SEED),
        hsop: file.options.hsop.clone(),
        oracle: c.oracle,
        skip_kernel: section == Section::Formality,
    };
    if opts.max_degree % 2 == 1 {
        let _ = writeln!(err, "error: --max-degree must be even, got {}", opts.max_degree);
        return EXIT_INVALID;
    }
    let format = match (c.format, file.options.format) {
        (Some(Format::Json), _) | (None, Some(OutputFormat::Json)) => OutputFormat::Json,
        _ => OutputFormat::Text,
    };
    let parsed = start.elapsed();
    let report = match analyze(&file.diagram, &opts) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", c.diagram);
            return EXIT_INVALID;
        }
    };
    if c.verbose {
        let _ = writeln!(
            err,
            "timing: parse {:.3}s, analysis {:.3}s",
            parsed.as_secs_f64(),
            (start.elapsed() - parsed).as_secs_f64()
        );
    }
    let rendered = match format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
        OutputFormat::Text => render_section(&report, section),
    };
    let _ = out.write_all(rendered.as_bytes());
    if report.consistent() {
        EXIT_OK
    } else {
        for i in &report.inconsistencies {
            let _ = writeln!(err, "cross-check failed: {i}");
        }
        EXIT_INCONSISTENT
    }
}
