use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use veldkamp::hyperplanes::{EnumerationOptions, DEFAULT_MAX_POINTS};
use veldkamp::labeling::load_labeling;
use veldkamp::{
    build_extended_dynkin_d, builtin_labeling, compare_tables, d4_fixtures, d5_fixtures, emit_dot, parse_edge_list,
    reference_expectations, AnalysisReport, DotView,
};

/// Veldkamp spaces of graphs and their Pauli labelings.
#[derive(Parser)]
#[command(name = "veldkamp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on a D~n diagram or an edge-list file.
    Analyze(AnalyzeArgs),
    /// Compare D~4 or D~5 against the embedded reference tables.
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(4..=5))]
        dynkin_d: u8,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    dynkin_d: Option<usize>,
    /// Edge-list file: two vertex ids per line, `#` comments.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// `builtin` (D~n only) or a file of `vertex PAULI` lines.
    #[arg(long)]
    labeling: Option<String>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    variant: u8,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_enum, default_value_t = View::Hierarchy)]
    dot_view: View,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Check the reference values for D~4..D~8; exit 2 if any fails.
    #[arg(long, value_enum)]
    expect: Option<Expect>,
    /// Accept labelings whose total product is not the identity.
    #[arg(long)]
    allow_nonidentity: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
    max_points: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum View {
    Diagram,
    Veldkamp,
    Hierarchy,
}

#[derive(Clone, Copy, ValueEnum)]
enum Expect {
    Paper,
}

enum Outcome {
    Ok,
    VerificationFailed,
}

fn analyze(args: AnalyzeArgs) -> anyhow::Result<Outcome> {
    let mut warnings = Vec::new();
    let (source, structure) = match (&args.graph, args.dynkin_d) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let parsed = parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))?;
            warnings.extend(parsed.warnings);
            (path.display().to_string(), parsed.structure)
        }
        (None, Some(n)) => (format!("D~{n}"), build_extended_dynkin_d(n)?),
        (None, None) => bail!("one of --dynkin-d or --graph is required"),
    };
    if args.expect.is_some() && !matches!(args.dynkin_d, Some(4..=8)) {
        bail!("--expect paper needs --dynkin-d between 4 and 8");
    }
    let labeling = match (args.labeling.as_deref(), args.dynkin_d) {
        (Some("builtin"), Some(n)) => Some(builtin_labeling(n, args.variant)?),
        (Some("builtin"), None) => bail!("builtin labelings exist only for --dynkin-d"),
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            let loaded = load_labeling(&text, structure.point_count(), args.allow_nonidentity)?;
            warnings.extend(loaded.warnings);
            Some(loaded.labeling)
        }
        (None, Some(n)) if args.expect.is_some() => Some(builtin_labeling(n, args.variant)?),
        (None, _) => None,
    };
    let options = EnumerationOptions { max_points: args.max_points, ..Default::default() };
    let mut report = AnalysisReport::build(source, structure, labeling.as_ref(), options)?;
    report.warnings = warnings;

    let rendered = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
        Format::Dot => emit_dot(
            &report,
            match args.dot_view {
                View::Diagram => DotView::Diagram,
                View::Veldkamp => DotView::Veldkamp,
                View::Hierarchy => DotView::Hierarchy,
            },
        ),
    };
    match &args.out {
        Some(path) => fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{rendered}"),
    }

    let mut outcome = Outcome::Ok;
    if let (Some(Expect::Paper), Some(n)) = (args.expect, args.dynkin_d) {
        for e in reference_expectations(&report, n)? {
            let status = if e.passed { "PASS" } else { "FAIL" };
            eprintln!("{status} {}{}", e.name, if e.passed { String::new() } else { format!(": {}", e.detail) });
            if !e.passed {
                outcome = Outcome::VerificationFailed;
            }
        }
    }
    Ok(outcome)
}

fn tables(n: u8) -> anyhow::Result<Outcome> {
    let fixtures = if n == 4 { d4_fixtures() } else { d5_fixtures() };
    let cmp = compare_tables(&fixtures)?;
    print!("{cmp}");
    Ok(if cmp.is_match() { Outcome::Ok } else { Outcome::VerificationFailed })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Tables { dynkin_d } => tables(dynkin_d),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
