//! Command-line front end.
//!
//! Exit codes: 0 pass/true/found, 1 fail/false/none, 2 usage or input error,
//! 3 inconclusive search. Solver resolution: `--solver` overrides the
//! `XORENC_SAT_SOLVER` environment variable; nothing is bundled.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num::BigRational;

use crate::analysis::{
    bounds_report, check_isolated_bound, isolated_points, le_scaled_pow2, partition_heavy_light,
    weight_report, width_bound_holds,
};
use crate::boolfn::BoolFn;
use crate::cnf::Encoding;
use crate::dimacs::{parse_dimacs, write_dimacs, DimacsDocument};
use crate::error::Error;
use crate::generators::{block_parity_encoding, canonical_cnf, tseitin, XorCircuit};
use crate::search::{find_encoding, SearchConfig, SearchMode};
use crate::sigma3::{
    circuit_to_encoding, expand_circuit, expand_formula, formula_to_encoding, Sigma3Circuit,
    Sigma3Formula,
};
use crate::solver::solve_external;

pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_cli_to(args, &mut out, &mut err)
}

/// Same as [`run_cli`] with explicit sinks; `args` starts with the binary name.
pub fn run_cli_to<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

#[derive(Parser)]
#[command(name = "xorenc", version, about = "CNF encodings with guess variables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an encoding and print it as DIMACS.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Check a DIMACS file against a named function.
    Verify {
        #[arg(long = "fn", value_enum)]
        function: NamedFn,
        #[arg(long)]
        n: usize,
        file: PathBuf,
    },
    /// Expand an encoding into depth-3 text form.
    Expand {
        #[arg(long, value_enum, default_value = "formula")]
        mode: StructureMode,
        file: PathBuf,
    },
    /// Convert depth-3 text form back into an encoding.
    Convert {
        #[arg(long, value_enum, default_value = "formula")]
        mode: StructureMode,
        file: PathBuf,
    },
    /// Weight reports and counting-bound checks for an encoding.
    Analyze {
        #[arg(long = "fn", value_enum)]
        function: NamedFn,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_ratio)]
        epsilon: Option<BigRational>,
        file: PathBuf,
    },
    /// Print the size and width bounds for given n and s.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, value_parser = parse_ratio)]
        epsilon: Option<BigRational>,
    },
    /// Search for a small encoding and print the certificate.
    Search {
        #[arg(long = "fn", value_enum)]
        function: NamedFn,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        s: usize,
        #[arg(long)]
        m_max: usize,
        #[arg(long)]
        k_max: usize,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: SearchModeArg,
        /// Disable symmetry-based pruning.
        #[arg(long)]
        plain: bool,
        #[arg(long)]
        node_limit: Option<u64>,
        #[arg(long)]
        solver: Option<String>,
    },
    /// Run the external SAT solver on a DIMACS file.
    Solve {
        #[arg(long)]
        solver: Option<String>,
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Chain construction over a block partition of the inputs.
    Block {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        /// Comma-separated block sizes; balanced by default.
        #[arg(long, value_parser = parse_partition)]
        partition: Option<PartitionSpec>,
    },
    /// Canonical CNF of a named function, one clause per zero.
    Canonical {
        #[arg(long = "fn", value_enum)]
        function: NamedFn,
        #[arg(long)]
        n: usize,
    },
    /// Gate-by-gate encoding of an XOR circuit read from a file.
    Tseitin {
        file: PathBuf,
        /// Assert the output gate with a unit clause instead of folding it
        /// into its defining constraint.
        #[arg(long)]
        unit_output: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NamedFn {
    Parity,
    Constant0,
    Constant1,
}

impl NamedFn {
    fn build(self, n: usize) -> Result<BoolFn, Error> {
        match self {
            NamedFn::Parity => BoolFn::parity(n),
            NamedFn::Constant0 => BoolFn::constant(n, false),
            NamedFn::Constant1 => BoolFn::constant(n, true),
        }
    }

    fn name(self) -> &'static str {
        match self {
            NamedFn::Parity => "parity",
            NamedFn::Constant0 => "constant0",
            NamedFn::Constant1 => "constant1",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StructureMode {
    Formula,
    Circuit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchModeArg {
    Exhaustive,
    Cegar,
}

#[derive(Clone)]
struct PartitionSpec(Vec<usize>);

fn parse_partition(s: &str) -> Result<PartitionSpec, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad block size `{t}`"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(PartitionSpec)
}

fn parse_ratio(s: &str) -> Result<BigRational, String> {
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let num: i64 = num
        .trim()
        .parse()
        .map_err(|_| format!("bad numerator in `{s}`"))?;
    let den: i64 = den
        .trim()
        .parse()
        .map_err(|_| format!("bad denominator in `{s}`"))?;
    if num < 0 {
        return Err("epsilon must be nonnegative".into());
    }
    if den <= 0 {
        return Err("denominator must be positive".into());
    }
    Ok(BigRational::new(num.into(), den.into()))
}

fn read_input(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn resolve_solver(flag: Option<String>) -> Option<String> {
    flag.or_else(|| std::env::var("XORENC_SAT_SOLVER").ok())
        .filter(|p| !p.is_empty())
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, String> {
    match command {
        Command::Gen { what } => {
            let encoding = match what {
                GenCommand::Block { n, s, partition } => {
                    block_parity_encoding(n, s, partition.as_ref().map(|p| p.0.as_slice()))
                        .map_err(|e| e.to_string())?
                }
                GenCommand::Canonical { function, n } => {
                    let f = function.build(n).map_err(|e| e.to_string())?;
                    Encoding::new(n, 0, canonical_cnf(&f)).map_err(|e| e.to_string())?
                }
                GenCommand::Tseitin { file, unit_output } => {
                    let circuit = XorCircuit::from_text(&read_input(&file)?)
                        .map_err(|e| e.to_string())?;
                    tseitin(&circuit, !unit_output).map_err(|e| e.to_string())?
                }
            };
            let _ = write!(out, "{}", write_dimacs(&encoding));
            Ok(0)
        }
        Command::Verify { function, n, file } => {
            let encoding = parse_dimacs(&read_input(&file)?).map_err(|e| e.to_string())?;
            if encoding.n() != n {
                return Err(format!(
                    "file declares {} deterministic variables, expected {n}",
                    encoding.n()
                ));
            }
            let f = function.build(n).map_err(|e| e.to_string())?;
            let ok = if encoding.s() == 0 {
                encoding.cnf().computes(&f).map_err(|e| e.to_string())?
            } else {
                encoding.encodes(&f).map_err(|e| e.to_string())?
            };
            let _ = writeln!(out, "verified {}", yn(ok));
            Ok(if ok { 0 } else { 1 })
        }
        Command::Expand { mode, file } => {
            let encoding = parse_dimacs(&read_input(&file)?).map_err(|e| e.to_string())?;
            let text = match mode {
                StructureMode::Formula => expand_formula(&encoding)
                    .map_err(|e| e.to_string())?
                    .to_text(),
                StructureMode::Circuit => expand_circuit(&encoding)
                    .map_err(|e| e.to_string())?
                    .to_text(),
            };
            let _ = write!(out, "{text}");
            Ok(0)
        }
        Command::Convert { mode, file } => {
            let text = read_input(&file)?;
            let encoding = match mode {
                StructureMode::Formula => formula_to_encoding(
                    &Sigma3Formula::from_text(&text).map_err(|e| e.to_string())?,
                ),
                StructureMode::Circuit => circuit_to_encoding(
                    &Sigma3Circuit::from_text(&text).map_err(|e| e.to_string())?,
                ),
            };
            let _ = write!(out, "{}", write_dimacs(&encoding));
            Ok(0)
        }
        Command::Analyze {
            function,
            n,
            epsilon,
            file,
        } => analyze(function, n, epsilon, &file, out),
        Command::Bounds { n, s, epsilon } => {
            if n == 0 {
                return Err("n must be at least 1".into());
            }
            let report = bounds_report(n, s, epsilon);
            let _ = write!(out, "{}", report.to_text());
            Ok(0)
        }
        Command::Search {
            function,
            n,
            s,
            m_max,
            k_max,
            mode,
            plain,
            node_limit,
            solver,
        } => {
            let f = function.build(n).map_err(|e| e.to_string())?;
            let cfg = SearchConfig {
                f,
                s,
                m_max,
                k_max,
                mode: match mode {
                    SearchModeArg::Exhaustive => SearchMode::Exhaustive,
                    SearchModeArg::Cegar => SearchMode::Cegar,
                },
                canonicalize: !plain,
                node_limit,
            };
            let solver = resolve_solver(solver);
            let result = find_encoding(&cfg, solver.as_deref()).map_err(|e| e.to_string())?;
            let limit = match cfg.node_limit {
                Some(l) => l.to_string(),
                None => "none".into(),
            };
            let _ = writeln!(
                out,
                "search fn={} n={n} s={s} m_max={m_max} k_max={k_max} mode={} canonicalize={} node_limit={limit}",
                function.name(),
                match cfg.mode {
                    SearchMode::Exhaustive => "exhaustive",
                    SearchMode::Cegar => "cegar",
                },
                if cfg.canonicalize { "on" } else { "off" },
            );
            let _ = writeln!(out, "nodes {}", result.nodes_explored);
            let _ = writeln!(out, "exhausted {}", yn(result.exhausted));
            match (result.found, result.exhausted) {
                (Some(e), _) => {
                    let _ = writeln!(out, "result found");
                    let _ = write!(out, "{}", write_dimacs(&e));
                    Ok(0)
                }
                (None, true) => {
                    let _ = writeln!(
                        out,
                        "result none: no encoding with m <= {m_max}, width <= {k_max} at s = {s}; \
                         the certificate covers only these searched bounds"
                    );
                    Ok(1)
                }
                (None, false) => {
                    let _ = writeln!(out, "result inconclusive: stopped before exhausting the space");
                    Ok(3)
                }
            }
        }
        Command::Solve { solver, file } => {
            let doc = DimacsDocument::parse(&read_input(&file)?).map_err(|e| e.to_string())?;
            let Some(path) = resolve_solver(solver) else {
                return Err(Error::SolverNotConfigured.to_string());
            };
            let outcome = solve_external(&doc, &path).map_err(|e| e.to_string())?;
            match outcome.model {
                Some(model) => {
                    let _ = writeln!(out, "result sat");
                    let lits: Vec<String> = model
                        .iter()
                        .enumerate()
                        .map(|(i, &b)| {
                            let v = i as i64 + 1;
                            (if b { v } else { -v }).to_string()
                        })
                        .collect();
                    let _ = writeln!(out, "model {}", lits.join(" "));
                    Ok(0)
                }
                None => {
                    let _ = writeln!(out, "result unsat");
                    Ok(1)
                }
            }
        }
    }
}

fn analyze(
    function: NamedFn,
    n: usize,
    epsilon: Option<BigRational>,
    file: &Path,
    out: &mut dyn Write,
) -> Result<i32, String> {
    let encoding = parse_dimacs(&read_input(file)?).map_err(|e| e.to_string())?;
    if encoding.n() != n {
        return Err(format!(
            "file declares {} deterministic variables, expected {n}",
            encoding.n()
        ));
    }
    let f = function.build(n).map_err(|e| e.to_string())?;
    let ok = encoding.encodes(&f).map_err(|e| e.to_string())?;
    let _ = writeln!(out, "encodes {}", yn(ok));
    if !ok {
        return Ok(1);
    }
    let mut all_pass = true;
    for x in isolated_points(&f) {
        let report = weight_report(&encoding, &x).map_err(|e| e.to_string())?;
        let _ = write!(out, "{}", report.to_text());
    }
    if f.is_fully_sensitive() {
        let eps = epsilon.unwrap_or_else(|| BigRational::new(1.into(), (n as i64).into()));
        let (heavy, light) =
            partition_heavy_light(&encoding, &f, &eps).map_err(|e| e.to_string())?;
        let _ = writeln!(out, "heavy {} light {} epsilon {eps}", heavy.len(), light.len());
        let one = BigRational::from_integer(1.into());
        let exp = BigRational::from_integer((n as i64 - 1).into()) - &eps;
        let heavy_ok = le_scaled_pow2(heavy.len(), &one, &exp);
        let deficit = (1usize << (n - 1)).saturating_sub(light.len());
        let light_ok = le_scaled_pow2(deficit, &one, &exp);
        let _ = writeln!(out, "heavy_bound {}", if heavy_ok { "pass" } else { "fail" });
        let _ = writeln!(out, "light_bound {}", if light_ok { "pass" } else { "fail" });
        all_pass &= heavy_ok && light_ok;
    } else {
        let _ = writeln!(out, "partition not-applicable");
    }
    let width_ok = width_bound_holds(encoding.max_width(), n, encoding.s());
    let _ = writeln!(
        out,
        "width_bound {} (k={})",
        if width_ok { "pass" } else { "fail" },
        encoding.max_width()
    );
    all_pass &= width_ok;
    if encoding.s() == 0 && encoding.max_width() > 0 {
        let check = check_isolated_bound(encoding.cnf(), encoding.max_width())
            .map_err(|e| e.to_string())?;
        let _ = writeln!(
            out,
            "isolated_bound {} (count={})",
            if check.pass { "pass" } else { "fail" },
            check.count
        );
        all_pass &= check.pass;
    }
    Ok(if all_pass { 0 } else { 1 })
}
