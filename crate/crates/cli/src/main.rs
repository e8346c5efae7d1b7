use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polygraph::branching::{critical_branchings, join_branching, triple_branchings};
use polygraph::catalog::{lookup, CatalogObject};
use polygraph::completion::{describe, homotopical_completion, knuth_bendix, squier, TraceEvent};
use polygraph::dot::{dot_branching, dot_paths, dot_polygraph};
use polygraph::garside::{
    gar2, gar3, reduce_to_gar3, s_normalize_with, underline_gar2, underline_gar3, validate_datum, GarsideContext,
    GarsideDatum,
};
use polygraph::normalize::{Rewriter, StrategyRegistry};
use polygraph::order::{OrderContext, OrderRegistry, TerminationOrder};
use polygraph::reduce::{auto_collapsible_part, homotopical_reduce};
use polygraph::sphere::SearchLimits;
use polygraph::text::{parse_document, serialize_datum, serialize_polygraph, serialize_two, Document};
use polygraph::{Error, ThreeOnePolygraph, TwoPolygraph};

#[derive(Parser)]
#[command(name = "polygraph", version, about = "String rewriting over monoid presentations")]
struct Cli {
    /// Termination order: `deglex[:<gen-list>]` or `divlex`.
    #[arg(long, global = true)]
    order: Option<String>,
    /// Step budget for completion and normalization.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
}

/// Inputs are a path, `-` for stdin, or `catalog:<name>[:<n>]`.
#[derive(Subcommand)]
enum Command {
    /// Validates a document and prints a summary.
    Check { input: String },
    /// Rewrites a word to its normal form.
    Normalize {
        input: String,
        word: String,
        #[arg(long, default_value = "leftmost")]
        strategy: String,
    },
    /// Lists the critical branchings and whether they join.
    Branchings {
        input: String,
        #[arg(long)]
        triples: bool,
    },
    /// Knuth-Bendix completion.
    Complete { input: String },
    /// One 3-cell per critical branching of a convergent presentation.
    Squier { input: String },
    /// Knuth-Bendix followed by Squier completion.
    Hc { input: String },
    /// Homotopical reduction along an automatically found collapsible part.
    Reduce { input: String },
    Gar2 { input: String },
    Gar3 { input: String },
    Ugar2 { input: String },
    Ugar3 { input: String },
    /// Reduces the twelve-family presentation and checks it against gar3.
    ReduceGar3 { input: String },
    /// Prints a built-in presentation or datum.
    Catalog { name: String, n: Option<usize> },
    /// DOT rendering of a document.
    Render { input: String },
}

enum Failure {
    Lib(Error),
    Usage(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out = Result<String, Failure>;

fn read_input(input: &str) -> Result<Document, Failure> {
    if let Some(rest) = input.strip_prefix("catalog:") {
        let (name, n) = match rest.split_once(':') {
            Some((name, n)) => (
                name,
                Some(n.parse().map_err(|_| Failure::Usage(format!("bad catalog size `{n}`")))?),
            ),
            None => (rest, None),
        };
        return Ok(match lookup(name, n)? {
            CatalogObject::Presentation(p) => Document::Polygraph(ThreeOnePolygraph::new(p, Vec::new())?),
            CatalogObject::Datum(d) => Document::Datum(d),
        });
    }
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(input).map_err(|e| Failure::Usage(format!("{input}: {e}")))?
    };
    Ok(parse_document(&text)?)
}

fn polygraph_input(input: &str) -> Result<ThreeOnePolygraph, Failure> {
    match read_input(input)? {
        Document::Polygraph(x) => Ok(x),
        Document::Datum(_) => Err(Failure::Usage("expected a polygraph, got a Garside datum".into())),
    }
}

fn validated(d: GarsideDatum) -> Result<GarsideDatum, Failure> {
    let report = validate_datum(&d);
    if report.passed() {
        Ok(d)
    } else {
        Err(Failure::Invalid(report.to_string()))
    }
}

/// A datum that passed every table check.
fn datum_input(input: &str) -> Result<GarsideDatum, Failure> {
    match read_input(input)? {
        Document::Datum(d) => validated(d),
        Document::Polygraph(_) => Err(Failure::Usage("expected a Garside datum, got a polygraph".into())),
    }
}

/// The rewriting system of a document: the polygraph itself, or `ugar2` of a datum.
fn system(input: &str) -> Result<(TwoPolygraph, Option<GarsideDatum>), Failure> {
    match read_input(input)? {
        Document::Polygraph(x) => Ok((x.base().clone(), None)),
        Document::Datum(d) => {
            let d = validated(d)?;
            Ok((underline_gar2(&d)?, Some(d)))
        }
    }
}

fn order_for(cli: &Cli, p: &TwoPolygraph, d: Option<&GarsideDatum>) -> Result<Box<dyn TerminationOrder>, Failure> {
    let divides = d.map(GarsideDatum::generator_divisibility);
    let cx = OrderContext {
        alphabet: p.alphabet(),
        divides: divides.as_deref(),
    };
    let default = if d.is_some() { "divlex" } else { "deglex" };
    Ok(OrderRegistry::with_builtins().build(cli.order.as_deref().unwrap_or(default), &cx)?)
}

fn emit_three(cli: &Cli, x: &ThreeOnePolygraph) -> Out {
    match cli.format {
        Format::Text => Ok(serialize_polygraph(x)),
        Format::Dot => Ok(dot_polygraph(x)?),
    }
}

fn emit_two(cli: &Cli, p: &TwoPolygraph) -> Out {
    match cli.format {
        Format::Text => Ok(serialize_two(p)),
        Format::Dot => Ok(dot_paths(p, "presentation", &[])?),
    }
}

fn check(input: &str) -> Out {
    match read_input(input)? {
        Document::Polygraph(x) => {
            let (g, r, c) = x.counts();
            Ok(format!("polygraph: {g} generators, {r} rules, {c} cells\n"))
        }
        Document::Datum(d) => {
            let d = validated(d)?;
            Ok(format!("datum: {} elements\n{}", d.len(), validate_datum(&d)))
        }
    }
}

fn run_normalize(cli: &Cli, input: &str, word: &str, strategy: &str) -> Out {
    let registry = StrategyRegistry::with_builtins();
    let strategy = registry.get(strategy)?;
    match read_input(input)? {
        Document::Polygraph(x) => {
            let p = x.base();
            let w = p.parse_word(word)?;
            let (nf, path) = Rewriter::new(p).normalize(&w, strategy, cli.budget)?;
            match cli.format {
                Format::Text => {
                    let trace: Vec<String> = path.words(p)?.iter().map(|w| p.render(w)).collect();
                    Ok(format!("{}\n# {}\n", p.render(&nf), trace.join(" -> ")))
                }
                Format::Dot => Ok(dot_paths(p, "normalization", &[path])?),
            }
        }
        Document::Datum(d) => {
            let d = validated(d)?;
            let cx = GarsideContext::new(&d)?;
            let w = cx.ugar2.parse_word(word)?;
            let nf = s_normalize_with(&cx, &w, strategy)?;
            Ok(format!("{}\n", cx.ugar2.render(&nf.word)))
        }
    }
}

fn run_branchings(cli: &Cli, input: &str, triples: bool) -> Out {
    let (p, _) = system(input)?;
    if triples {
        let mut out = String::new();
        for t in triple_branchings(&p) {
            let steps: Vec<String> = t.steps.iter().map(|s| format!("{s:?}")).collect();
            out.push_str(&format!("{} {{{}}}\n", p.render(&t.source), steps.join(", ")));
        }
        return Ok(out);
    }
    let bs = critical_branchings(&p);
    match cli.format {
        Format::Text => {
            let mut out = String::new();
            for b in &bs {
                let joins = join_branching(&p, b)?.is_some();
                out.push_str(&format!(
                    "{} {} {}\n",
                    describe(&p, b),
                    b.shape.as_str(),
                    if joins { "joins" } else { "does not join" }
                ));
            }
            Ok(out)
        }
        Format::Dot => {
            let mut out = String::new();
            for b in &bs {
                out.push_str(&dot_branching(&p, b)?);
            }
            Ok(out)
        }
    }
}

fn run_complete(cli: &Cli, input: &str) -> Out {
    let (p, d) = system(input)?;
    let order = order_for(cli, &p, d.as_ref())?;
    let (done, trace) = knuth_bendix(&p, order.as_ref(), cli.budget)?;
    if cli.format == Format::Dot {
        return emit_two(cli, &done);
    }
    let mut out = serialize_two(&done);
    for e in trace {
        if let TraceEvent::Added { rule, from } = e {
            out.push_str(&format!("# added {} from {}\n", rule.label, describe(&done, &from)));
        }
    }
    Ok(out)
}

fn run_hc(cli: &Cli, input: &str) -> Out {
    let (p, d) = system(input)?;
    let order = order_for(cli, &p, d.as_ref())?;
    emit_three(cli, &homotopical_completion(&p, order.as_ref(), cli.budget)?)
}

fn run_reduce(cli: &Cli, input: &str) -> Out {
    let x = polygraph_input(input)?;
    let x = if x.cells().is_empty() { squier(x.base())? } else { x };
    let part = auto_collapsible_part(&x, SearchLimits::default())?;
    let y = homotopical_reduce(&x, &part)?;
    let mut out = emit_three(cli, &y)?;
    if cli.format == Format::Text {
        for w in part.warnings() {
            out.push_str(&format!("# warning: {w}\n"));
        }
    }
    Ok(out)
}

fn run_reduce_gar3(cli: &Cli, input: &str) -> Out {
    let d = datum_input(input)?;
    let (y, report) = reduce_to_gar3(&d)?;
    let mut out = emit_three(cli, &y)?;
    if cli.format == Format::Text {
        out.push_str(&format!(
            "# collapsed {} rules and {} cells\n",
            report.collapsed_rules,
            report.spheres.len()
        ));
        for w in &report.warnings {
            out.push_str(&format!("# warning: {w}\n"));
        }
    }
    Ok(out)
}

fn run_catalog(cli: &Cli, name: &str, n: Option<usize>) -> Out {
    match lookup(name, n)? {
        CatalogObject::Presentation(p) => emit_two(cli, &p),
        CatalogObject::Datum(d) => Ok(serialize_datum(&d)),
    }
}

fn run_render(input: &str) -> Out {
    match read_input(input)? {
        Document::Polygraph(x) => Ok(dot_polygraph(&x)?),
        Document::Datum(d) => Ok(dot_polygraph(&gar3(&validated(d)?)?)?),
    }
}

fn run(cli: &Cli) -> Out {
    match &cli.command {
        Command::Check { input } => check(input),
        Command::Normalize { input, word, strategy } => run_normalize(cli, input, word, strategy),
        Command::Branchings { input, triples } => run_branchings(cli, input, *triples),
        Command::Complete { input } => run_complete(cli, input),
        Command::Squier { input } => emit_three(cli, &squier(&system(input)?.0)?),
        Command::Hc { input } => run_hc(cli, input),
        Command::Reduce { input } => run_reduce(cli, input),
        Command::Gar2 { input } => emit_two(cli, &gar2(&datum_input(input)?)?),
        Command::Gar3 { input } => emit_three(cli, &gar3(&datum_input(input)?)?),
        Command::Ugar2 { input } => emit_two(cli, &underline_gar2(&datum_input(input)?)?),
        Command::Ugar3 { input } => emit_three(cli, &underline_gar3(&datum_input(input)?)?),
        Command::ReduceGar3 { input } => run_reduce_gar3(cli, input),
        Command::Catalog { name, n } => run_catalog(cli, name, *n),
        Command::Render { input } => run_render(input),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Lib(e @ Error::Parse { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(report)) => {
            eprint!("validation failed\n{report}");
            ExitCode::from(1)
        }
    }
}
