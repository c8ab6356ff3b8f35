use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use cutlab::characterizations::{verify_equivalences_in, Analysis, VerifyConfig};
use cutlab::corpus::{builtin_corpus, run_corpus, RunConfig, Tag};
use cutlab::io::{
    build_report, exit_code, parse_group_spec, render_corpus, render_report, render_spec,
    render_verify, table_spec, Format, VerifyDocument, EXIT_DISAGREEMENT,
    EXIT_EXPECTATION_MISMATCH, EXIT_OK, EXIT_PARSE_ERROR,
};
use cutlab::{construct_with, Error, FiniteGroup, GroupSpec, Limits};

#[derive(Parser)]
#[command(
    name = "cutlab",
    version,
    about = "Decide the cut property of finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one group given by a spec file.
    Analyze {
        specfile: PathBuf,
        /// Exit with status 2 unless the verdict matches.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Operations on the built-in corpus.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
    /// Print every characterization report with its per-class trace.
    Verify {
        specfile: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Build a group and print its size, or its Cayley table as a spec.
    Construct {
        specfile: PathBuf,
        #[arg(long)]
        emit_table: bool,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Analyze every corpus entry and cross-check the results.
    Run {
        /// Keep only entries carrying this tag (repeatable; all must match).
        #[arg(long = "filter", value_name = "TAG", value_parser = parse_tag)]
        filters: Vec<Tag>,
        /// Skip entries whose order exceeds N.
        #[arg(long, value_name = "N")]
        max_order: Option<usize>,
        /// Worker threads; 0 picks the number of cores.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// List corpus entries and their tags.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Expect {
    Cut,
    NotCut,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Text => Format::Text,
        }
    }
}

fn parse_tag(s: &str) -> Result<Tag, String> {
    Tag::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Tag::ALL.iter().map(|t| t.name()).collect();
        format!("unknown tag `{s}`; expected one of {}", names.join(", "))
    })
}

/// An error that ends the process with a specific status.
struct Exit(u8, String);

fn fail(e: Error) -> Exit {
    Exit(exit_code(&e), e.to_string())
}

fn load(path: &Path) -> Result<GroupSpec, Exit> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(|e| Exit(EXIT_PARSE_ERROR, format!("{e:#}")))?;
    parse_group_spec(&text).map_err(|e| Exit(exit_code(&e), format!("{}: {e}", path.display())))
}

fn build(spec: &GroupSpec) -> Result<FiniteGroup, Exit> {
    construct_with(spec, &Limits::from_env()).map_err(fail)
}

fn analyze(path: &Path, expect: Option<Expect>, format: Format) -> Result<u8, Exit> {
    let spec = load(path)?;
    let start = Instant::now();
    let g = build(&spec)?;
    let mut doc = build_report(&spec, &g, &VerifyConfig::default());
    doc.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    print!("{}", render_report(&doc, format));
    if doc.theorems.iter().any(|t| t.agrees == Some(false)) {
        eprintln!("characterization disagrees with the decider");
        return Ok(EXIT_DISAGREEMENT);
    }
    let mismatch = match expect {
        Some(Expect::Cut) => !doc.cut,
        Some(Expect::NotCut) => doc.cut,
        None => false,
    };
    if mismatch {
        let (wanted, got) = if doc.cut {
            ("not-cut", "cut")
        } else {
            ("cut", "not-cut")
        };
        eprintln!("expected {wanted}, got {got}");
        return Ok(EXIT_EXPECTATION_MISMATCH);
    }
    Ok(EXIT_OK)
}

fn verify(path: &Path, format: Format) -> Result<u8, Exit> {
    let spec = load(path)?;
    let g = build(&spec)?;
    let a = Analysis::new(&g);
    let reports = verify_equivalences_in(&a, &VerifyConfig::default());
    let disagreements = reports.iter().filter(|r| r.disagrees()).count();
    let doc = VerifyDocument {
        tool_version: cutlab::io::TOOL_VERSION.into(),
        group: spec,
        order: g.order(),
        cut: a.verdict.has_cut,
        reports,
        disagreements,
    };
    print!("{}", render_verify(&doc, format));
    Ok(if disagreements > 0 {
        EXIT_DISAGREEMENT
    } else {
        EXIT_OK
    })
}

fn construct(path: &Path, emit_table: bool) -> Result<u8, Exit> {
    let spec = load(path)?;
    let g = build(&spec)?;
    if emit_table {
        println!("{}", render_spec(&table_spec(&g)));
    } else {
        println!("group: {}", render_spec(&spec));
        println!("order: {}", g.order());
        println!("classes: {}", g.conjugacy().num_classes());
        println!("generators: {}", g.generators().len());
    }
    Ok(EXIT_OK)
}

fn corpus_run(filters: &[Tag], max_order: Option<usize>, threads: usize, format: Format) -> u8 {
    let entries: Vec<_> = builtin_corpus()
        .into_iter()
        .filter(|e| filters.iter().all(|&t| e.has(t)))
        .collect();
    let config = RunConfig {
        limits: max_order.map_or_else(Limits::from_env, Limits::new),
        parallelism: threads,
        ..RunConfig::default()
    };
    let result = run_corpus(&entries, &config);
    print!("{}", render_corpus(&result, format));
    if result.has_disagreements() {
        EXIT_DISAGREEMENT
    } else if result.counters.expectation_mismatches > 0 {
        EXIT_EXPECTATION_MISMATCH
    } else {
        EXIT_OK
    }
}

fn corpus_list() -> u8 {
    for e in builtin_corpus() {
        let tags: Vec<&str> = e.tags.iter().map(|t| t.name()).collect();
        println!(
            "{:<28} {:<60} {}",
            e.id,
            render_spec(&e.spec),
            tags.join(",")
        );
    }
    EXIT_OK
}

fn main() -> ExitCode {
    // Usage errors share the parse-error status so that 2 stays reserved for
    // expectation mismatches.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_PARSE_ERROR
            } else {
                EXIT_OK
            });
        }
    };
    let outcome = match cli.command {
        Command::Analyze {
            specfile,
            expect,
            format,
        } => analyze(&specfile, expect, format.into()),
        Command::Verify { specfile, format } => verify(&specfile, format.into()),
        Command::Construct {
            specfile,
            emit_table,
        } => construct(&specfile, emit_table),
        Command::Corpus { command } => Ok(match command {
            CorpusCommand::Run {
                filters,
                max_order,
                threads,
                format,
            } => corpus_run(&filters, max_order, threads, format.into()),
            CorpusCommand::List => corpus_list(),
        }),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
