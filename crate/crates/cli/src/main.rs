//! `evkg`: build, materialize, query and report on the EV knowledge graph.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use evkg_core::cq::{run_question, CqStatus};
use evkg_core::ingest::{ingest, load_config};
use evkg_core::materialize::{materialize_spatial_relations, materialize_subclass_closure};
use evkg_core::query::parse_query;
use evkg_core::rdf::{parse_ntriples, parse_turtle, serialize_ntriples, serialize_turtle, Graph};
use evkg_core::stats::compute_stats;
use evkg_core::vocabulary::{default_prefixes, individuals_graph, schema_graph};
use evkg_core::{evaluate, registry};

#[derive(Parser)]
#[command(name = "evkg", version, about = "EV knowledge graph toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ResultFormat {
    Tsv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Nt,
    Ttl,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from the CSV inputs named in a config file
    Ingest {
        #[arg(short, long)]
        config: PathBuf,
        /// Overrides the snapshot path from the config; `-` writes to stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Add spatial relations and subclass-closure type triples to a snapshot
    Materialize {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        no_closure: bool,
    },
    /// Run a query file against a snapshot
    Query {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        query: PathBuf,
        #[arg(long, value_enum, default_value = "tsv")]
        format: ResultFormat,
    },
    /// Run the competency-question suite (all questions unless one is given)
    Cq {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long, value_parser = clap::value_parser!(u8).range(1..=6))]
        question: Option<u8>,
        /// Directory of expected `listingNN.tsv` and series files
        #[arg(short, long)]
        expected: Option<PathBuf>,
        /// Directory for result and series files
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Entity and statement counts
    Stats {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Write the ontology (classes, properties, shared individuals) as Turtle
    ExportOntology {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-serialize a snapshot in canonical form
    Export {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "nt")]
        format: GraphFormat,
    },
}

/// A failure with its exit code: 1 CQ mismatch, 2 input/output, 3 query.
struct Failure(u8, String);

type CmdResult = Result<(), Failure>;

fn io_err(e: impl std::fmt::Display) -> Failure {
    Failure(2, e.to_string())
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(2, format!("cannot read {}: {e}", path.display())))
}

fn write_text(path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::write(p, text).map_err(|e| Failure(2, format!("cannot write {}: {e}", p.display())))
        }
        _ => std::io::stdout().write_all(text.as_bytes()).map_err(io_err),
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read_text(path)?;
    let parsed = if path.extension().is_some_and(|e| e == "ttl") {
        parse_turtle(&text)
    } else {
        parse_ntriples(&text)
    };
    parsed.map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn cmd_ingest(config: &Path, output: Option<PathBuf>) -> CmdResult {
    let config = load_config(config).map_err(io_err)?;
    let out = ingest(&config).map_err(io_err)?;
    let target = output.or(config.output.snapshot.clone());
    write_text(target.as_deref(), &serialize_ntriples(&out.graph))?;
    eprintln!("{}", out.report.to_string().trim_end());
    Ok(())
}

fn cmd_materialize(input: &Path, output: &Path, no_closure: bool) -> CmdResult {
    let mut graph = load_graph(input)?;
    let report = materialize_spatial_relations(&mut graph, registry());
    print!("{report}");
    if !no_closure {
        println!("rdf:type (subclass closure)\t{}", materialize_subclass_closure(&mut graph, registry()));
    }
    write_text(Some(output), &serialize_ntriples(&graph))
}

fn cmd_query(input: &Path, query: &Path, format: ResultFormat) -> CmdResult {
    let text = read_text(query)?;
    let q = parse_query(&text).map_err(|e| Failure(3, format!("{}: {e}", query.display())))?;
    for warning in q.lint() {
        eprintln!("warning: {warning}");
    }
    let graph = load_graph(input)?;
    let solutions = evaluate(&graph, &q);
    let out = match format {
        ResultFormat::Tsv => solutions.to_tsv(),
        ResultFormat::Json => solutions.to_json(),
    };
    write_text(None, &out)
}

fn cmd_cq(input: &Path, question: Option<u8>, expected: Option<&Path>, out: Option<&Path>) -> CmdResult {
    let graph = load_graph(input)?;
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Failure(2, format!("cannot create {}: {e}", dir.display())))?;
    }
    let questions: Vec<u8> = question.map_or_else(|| (1..=6).collect(), |q| vec![q]);
    let mut failed = false;
    for q in questions {
        let outcome = run_question(&graph, q, expected).map_err(|e| Failure(3, e.to_string()))?;
        println!("Q{q}: {}", outcome.status);
        for diff in &outcome.diffs {
            print!("{diff}");
        }
        let files = outcome
            .results
            .iter()
            .map(|(id, tsv)| (evkg_core::cq::expected_file_name(*id), tsv.as_str()))
            .chain(outcome.artifacts.iter().map(|a| (a.file_name.clone(), a.contents.as_str())));
        for (name, contents) in files {
            match out {
                Some(dir) => write_text(Some(&dir.join(&name)), contents)?,
                None if question.is_some() => print!("# {name}\n{contents}"),
                None => {}
            }
        }
        failed |= outcome.status == CqStatus::Fail;
    }
    if failed {
        Err(Failure(1, "competency-question results differ from the expected files".into()))
    } else {
        Ok(())
    }
}

fn cmd_stats(input: &Path) -> CmdResult {
    let graph = load_graph(input)?;
    print!("{}", compute_stats(&graph, registry()));
    Ok(())
}

fn cmd_export_ontology(output: Option<&Path>) -> CmdResult {
    let mut graph = schema_graph(registry());
    graph.merge(&individuals_graph());
    write_text(output, &serialize_turtle(&graph, &default_prefixes()))
}

fn cmd_export(input: &Path, output: Option<&Path>, format: GraphFormat) -> CmdResult {
    let graph = load_graph(input)?;
    let text = match format {
        GraphFormat::Nt => serialize_ntriples(&graph),
        GraphFormat::Ttl => serialize_turtle(&graph, &default_prefixes()),
    };
    write_text(output, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ingest { config, output } => cmd_ingest(&config, output),
        Command::Materialize {
            input,
            output,
            no_closure,
        } => cmd_materialize(&input, &output, no_closure),
        Command::Query { input, query, format } => cmd_query(&input, &query, format),
        Command::Cq {
            input,
            question,
            expected,
            out,
        } => cmd_cq(&input, question, expected.as_deref(), out.as_deref()),
        Command::Stats { input } => cmd_stats(&input),
        Command::ExportOntology { output } => cmd_export_ontology(output.as_deref()),
        Command::Export { input, output, format } => cmd_export(&input, output.as_deref(), format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
