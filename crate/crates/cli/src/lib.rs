//! The `lagrange-forest` command line: `invert`, `verify` and `enumerate`.

pub mod document;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use lagrange_forest::combinat::{
    check_label_cap, enumerate_crowns, enumerate_enriched_maps, enumerate_rooted_trees, set_partitions,
    DEFAULT_LABEL_CAP,
};
use lagrange_forest::harness::{default_pool, run_suite, Suite, SuiteConfig};
use lagrange_forest::rational::parse_rational;
use lagrange_forest::series::compose_family;
use lagrange_forest::{Rational, TruncatedSeries};

use document::{json_error, AtomEntry, CoefficientRow, ProblemDocument, RationalText, ResultDocument, CONVENTION};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INVARIANT: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "lagrange-forest", version, about = "Exact tree and determinant inversion of colored power series")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the inverse series from a problem document.
    Invert {
        /// Problem document (JSON).
        config: PathBuf,
        /// Where to write the result document (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also evaluate the determinant formula and compare.
        #[arg(long)]
        det: bool,
        /// Truncate below the document's order.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Run an identity suite and report PASS/FAIL per identity.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long = "N", default_value_t = 4)]
        order: usize,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Comma-separated coefficient pool, e.g. "-1,0,1/2".
        #[arg(long, value_parser = parse_pool)]
        pool: Option<Vec<Rational>>,
        /// Print the reports as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Count (and optionally list) combinatorial structures.
    Enumerate {
        structure: Structure,
        #[arg(long)]
        n: usize,
        /// Number of sinks (maps only).
        #[arg(long, default_value_t = 0)]
        sinks: usize,
        #[arg(long)]
        list: bool,
        /// Largest allowed number of labels.
        #[arg(long, default_value_t = DEFAULT_LABEL_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Structure {
    Maps,
    Trees,
    Crowns,
    Partitions,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: lagrange_forest::Error| format!("{e}; expected one of {}", Suite::NAMES.join(", ")))
}

fn parse_pool(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',').map(|v| parse_rational(v).map_err(|e| e.to_string())).collect()
}

/// Parses `args` and runs the command, writing normal output to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Invert { config, output, det, order } => invert(&config, output.as_ref(), det, order, out),
        Command::Verify { suite, seed, d, order, trials, pool, json } => {
            let cfg = SuiteConfig { seed, d, order, trials, pool: pool.unwrap_or_else(default_pool), ..SuiteConfig::default() };
            verify(suite, &cfg, json, out)
        }
        Command::Enumerate { structure, n, sinks, list, cap } => enumerate(structure, n, sinks, list, cap, out),
    };
    match result {
        Ok(code) => code,
        Err((code, message)) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

type CommandResult = Result<u8, (u8, String)>;

fn io_error(e: std::io::Error) -> (u8, String) {
    (EXIT_USAGE, e.to_string())
}

fn invert(
    config: &PathBuf,
    output: Option<&PathBuf>,
    det: bool,
    order: Option<usize>,
    out: &mut impl Write,
) -> CommandResult {
    let path = config.display().to_string();
    let text = std::fs::read_to_string(config).map_err(|e| (EXIT_USAGE, format!("{path}: {e}")))?;
    let doc: ProblemDocument = serde_json::from_str(&text).map_err(|e| (EXIT_USAGE, json_error(&path, &e)))?;
    if let Some(o) = order {
        if o > doc.order {
            return Err((EXIT_USAGE, format!("--order {o} exceeds the document order {}", doc.order)));
        }
    }
    let built = doc.build(order).map_err(|m| (EXIT_INVARIANT, format!("{path}: {m}")))?;
    let problem = &built.problem;
    let colors = problem.colors();
    let internal = |e: lagrange_forest::Error| (EXIT_INVARIANT, e.to_string());

    let sol = problem.solve_tree_fixed_point().map_err(internal)?;
    let zeta_b = sol.zeta.evaluate(&built.subset).map_err(internal)?;
    let keys: Vec<_> = colors.keys_up_to(problem.order()).into_iter().skip(1).collect();

    let mut atoms = Vec::new();
    for q in colors.colors() {
        for (key, value) in sol.zeta.atom(q).entries() {
            atoms.push(AtomEntry {
                q: colors.name(q).to_string(),
                x: colors.render(key.colors()),
                value: RationalText(value.clone()),
            });
        }
    }

    let row = |key: &lagrange_forest::CoefficientKey, tree: Rational, determinant: Option<Rational>| CoefficientRow {
        x: colors.render(key.colors()),
        equal: determinant.as_ref().map(|d| *d == tree),
        tree: RationalText(tree),
        determinant: determinant.map(RationalText),
    };
    let mut zeta = Vec::new();
    for key in &keys {
        let determinant = if det {
            Some(problem.inverse_via_determinant(&built.subset, key.colors()).map_err(internal)?)
        } else {
            None
        };
        zeta.push(row(key, zeta_b.coefficient(key), determinant));
    }
    let psi = match &built.phi {
        Some(phi) => {
            let psi_series: TruncatedSeries = compose_family(phi, &sol.t).map_err(internal)?;
            let mut rows = Vec::new();
            for key in &keys {
                let determinant = if det {
                    Some(problem.lagrange_good_coefficient(phi, key.colors()).map_err(internal)?)
                } else {
                    None
                };
                rows.push(row(key, psi_series.coefficient(key), determinant));
            }
            Some(rows)
        }
        None => None,
    };

    let result = ResultDocument {
        colors: colors.names().to_vec(),
        order: problem.order(),
        b: colors.render(&built.subset),
        convention: CONVENTION.to_string(),
        atoms,
        zeta,
        psi,
    };
    let json = result.to_json();
    match output {
        Some(p) => std::fs::write(p, &json).map_err(io_error)?,
        None => out.write_all(json.as_bytes()).map_err(io_error)?,
    }
    Ok(if result.all_equal() { EXIT_OK } else { EXIT_MISMATCH })
}

fn verify(suite: Suite, cfg: &SuiteConfig, json: bool, out: &mut impl Write) -> CommandResult {
    let reports = run_suite(suite, cfg).map_err(|e| (EXIT_USAGE, e.to_string()))?;
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if json {
        let text = serde_json::to_string_pretty(&reports).expect("reports always serialize");
        writeln!(out, "{text}").map_err(io_error)?;
    } else {
        for r in &reports {
            writeln!(out, "{r}").map_err(io_error)?;
        }
        writeln!(out, "summary: {} passed, {failed} failed", reports.len() - failed).map_err(io_error)?;
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

fn enumerate(structure: Structure, n: usize, sinks: usize, list: bool, cap: usize, out: &mut impl Write) -> CommandResult {
    let labels = match structure {
        Structure::Maps => n + sinks,
        Structure::Trees => n + 1,
        Structure::Crowns | Structure::Partitions => n,
    };
    check_label_cap(labels, cap).map_err(|e| (EXIT_USAGE, e.to_string()))?;
    let lines: Vec<String> = match structure {
        Structure::Partitions => set_partitions(n)
            .iter()
            .map(|p| {
                p.iter()
                    .map(|b| format!("{{{}}}", b.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect(),
        Structure::Maps => enumerate_enriched_maps(n, sinks).iter().map(ToString::to_string).collect(),
        Structure::Trees => enumerate_rooted_trees(n).iter().map(ToString::to_string).collect(),
        Structure::Crowns => enumerate_crowns(n).iter().map(ToString::to_string).collect(),
    };
    writeln!(out, "{}", lines.len()).map_err(io_error)?;
    if list {
        for line in &lines {
            writeln!(out, "{line}").map_err(io_error)?;
        }
    }
    Ok(EXIT_OK)
}
