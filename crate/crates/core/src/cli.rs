//! Command-line front end. [`run`] returns the report and exit code so the
//! commands can be driven from tests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;

use crate::certificate::{
    coefficient_table, load_certificate, sha256_hex, verify_with_table, Certificate,
    SHIPPED_CERTIFICATE,
};
use crate::colouredgraph::{
    corollary_value, count_models_polya, enumerate_models, goodman, mono_triangles, ColouredGraph,
};
use crate::exactmath::DEFAULT_MAX_DEN;
use crate::extremal::{brute_min_mono, build_gex, is_member_gn};
use crate::flags::{random_chain_triple, verify_chain_rule};
use crate::sdpbridge::{export_sdp, parse_solution, round_solution, RoundingMode};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Default seed for randomised checks.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Parser)]
#[command(
    name = "tricolour",
    version,
    about = "Monochromatic triangle certificates and constructions"
)]
pub struct Cli {
    /// Certificate file (defaults to the built-in certificate)
    #[arg(long, global = true)]
    pub cert: Option<PathBuf>,
    /// Output file
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true, default_value_t = 3)]
    pub k: u8,
    #[arg(long = "max-den", global = true, default_value_t = DEFAULT_MAX_DEN)]
    pub max_den: u64,
    /// Worker threads for parallel computations (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List models on --n vertices with --k colours
    Enumerate,
    /// Verify a certificate
    Verify,
    /// Build G_ex(--n)
    Extremal,
    /// Test membership of the family of extremal graphs
    CheckGn { graph: PathBuf },
    /// Count monochromatic triangles
    Count { graph: PathBuf },
    /// Exhaustive minimum over colourings of K_{--n}
    Brute,
    /// Compare the two-colour formula with exhaustive search
    Goodman,
    /// Check the chain rule on seeded random flag triples
    ChainRule {
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Write the flag SDP in sparse SDPA format
    SdpExport,
    /// Round a CSDP solution file to a certificate and verify it
    SdpRound {
        solution: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Grid)]
        mode: Mode,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum Mode {
    Grid,
    Cf,
}

/// Exit code plus the text printed for the user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub report: String,
}

impl CommandResult {
    fn ok(report: String, success: bool) -> Self {
        CommandResult {
            exit_code: if success { 0 } else { 1 },
            report,
        }
    }

    fn error(msg: impl std::fmt::Display) -> Self {
        CommandResult {
            exit_code: 2,
            report: format!("error: {msg}\n"),
        }
    }
}

pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return CommandResult {
                exit_code: code,
                report: e.to_string(),
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => return CommandResult::error(e),
    };
    pool.install(|| execute(&cli))
}

fn header(cli: &Cli, inputs: &[(&str, &[u8])]) -> String {
    let mut out = format!("tricolour {VERSION}\ncommand: {:?}\n", cli.command);
    for (name, bytes) in inputs {
        writeln!(out, "input {name} sha256={}", sha256_hex(bytes)).unwrap();
    }
    out
}

fn read(path: &Path) -> Result<String, CommandResult> {
    std::fs::read_to_string(path)
        .map_err(|e| CommandResult::error(format!("{}: {e}", path.display())))
}

fn write_out(cli: &Cli, contents: &str, report: &mut String) -> Result<(), CommandResult> {
    if let Some(path) = &cli.out {
        std::fs::write(path, contents)
            .map_err(|e| CommandResult::error(format!("{}: {e}", path.display())))?;
        writeln!(report, "wrote {}", path.display()).unwrap();
    }
    Ok(())
}

fn load_cert(cli: &Cli) -> Result<(String, String, Certificate), CommandResult> {
    let (name, text) = match &cli.cert {
        Some(p) => (p.display().to_string(), read(p)?),
        None => (
            "built-in certificate".to_string(),
            SHIPPED_CERTIFICATE.to_string(),
        ),
    };
    let cert = load_certificate(&text).map_err(|e| CommandResult::error(format!("{name}: {e}")))?;
    Ok((name, text, cert))
}

fn load_graph(path: &Path) -> Result<(String, ColouredGraph), CommandResult> {
    let text = read(path)?;
    let g = ColouredGraph::from_text(&text)
        .map_err(|e| CommandResult::error(format!("{}: {e}", path.display())))?;
    Ok((text, g))
}

fn execute(cli: &Cli) -> CommandResult {
    let result = match &cli.command {
        Command::Enumerate => cmd_enumerate(cli),
        Command::Verify => cmd_verify(cli),
        Command::Extremal => cmd_extremal(cli),
        Command::CheckGn { graph } => cmd_check_gn(cli, graph),
        Command::Count { graph } => cmd_count(cli, graph),
        Command::Brute => cmd_brute(cli),
        Command::Goodman => cmd_goodman(cli),
        Command::ChainRule { count } => cmd_chain_rule(cli, *count),
        Command::SdpExport => cmd_sdp_export(cli),
        Command::SdpRound { solution, mode } => cmd_sdp_round(cli, solution, *mode),
    };
    result.unwrap_or_else(|e| e)
}

fn require_n(cli: &Cli) -> Result<usize, CommandResult> {
    cli.n.ok_or_else(|| CommandResult::error("--n is required"))
}

fn cmd_enumerate(cli: &Cli) -> Result<CommandResult, CommandResult> {
    let l = require_n(cli)?;
    let models = enumerate_models(l, cli.k).map_err(CommandResult::error)?;
    let mut listing = String::new();
    for (idx, g) in models.iter().enumerate() {
        writeln!(listing, "# model {}", idx + 1).unwrap();
        listing.push_str(&g.to_text());
    }
    writeln!(listing, "count {}", models.len()).unwrap();
    let polya = count_models_polya(l, cli.k as u64);
    let ok = polya == models.len().into();
    let mut report = header(cli, &[]);
    writeln!(
        report,
        "l={l} k={} enumerated={} polya={polya} {}",
        cli.k,
        models.len(),
        if ok { "OK" } else { "MISMATCH" }
    )
    .unwrap();
    write_out(cli, &listing, &mut report)?;
    Ok(CommandResult::ok(report, ok))
}

fn cmd_verify(cli: &Cli) -> Result<CommandResult, CommandResult> {
    let (name, text, cert) = load_cert(cli)?;
    let table = coefficient_table(&cert);
    let verdict = verify_with_table(&cert, &table);
    let mut report = header(cli, &[(&name, text.as_bytes())]);
    report.push_str(&verdict.to_text());
    let kv = format!(
        "{}{}",
        header(cli, &[(&name, text.as_bytes())]),
        verdict.to_key_value()
    );
    write_out(cli, &kv, &mut report)?;
    report.push_str(&verdict.to_key_value());
    Ok(CommandResult::ok(report, verdict.verified))
}

fn cmd_extremal(cli: &Cli) -> Result<CommandResult, CommandResult> {
    let n = require_n(cli)?;
    let (g, partition) = build_gex(n, cli.k, None).map_err(CommandResult::error)?;
    let count = mono_triangles(&g).total;
    let formula = corollary_value(n as u64);
    let mut report = header(cli, &[]);
    writeln!(
        report,
        "class sizes: {:?}, clique colour {}",
        partition.sizes(),
        partition.colour
    )
    .unwrap();
    let ok = cli.k != 3 || count == formula;
    writeln!(
        report,
        "n={n} mono_triangles={count} formula={formula} {}",
        if ok { "OK" } else { "MISMATCH" }
    )
    .unwrap();
    write_out(cli, &g.to_text(), &mut report)?;
    if cli.out.is_none() {
        report.push_str(&g.to_text());
    }
    Ok(CommandResult::ok(report, ok))
}

fn cmd_check_gn(cli: &Cli, path: &Path) -> Result<CommandResult, CommandResult> {
    let (text, g) = load_graph(path)?;
    let m = is_member_gn(&g);
    let mut report = header(cli, &[(&path.display().to_string(), text.as_bytes())]);
    writeln!(
        report,
        "n={} mono_triangles={}",
        g.n(),
        mono_triangles(&g).total
    )
    .unwrap();
    if let Some(w) = &m.witness {
        writeln!(report, "member: yes (clique colour {})", w.partition.colour).unwrap();
        for (idx, class) in w.partition.classes.iter().enumerate() {
            writeln!(report, "class {}: {:?}", idx + 1, class).unwrap();
        }
        for ((a, b), edges) in w.matchings.iter().filter(|(_, e)| !e.is_empty()) {
            writeln!(
                report,
                "recoloured between classes {} and {}: {:?}",
                a + 1,
                b + 1,
                edges
            )
            .unwrap();
        }
    } else if m.complete {
        writeln!(report, "member: no").unwrap();
    } else {
        writeln!(report, "member: unknown (search budget exhausted)").unwrap();
    }
    Ok(CommandResult::ok(report, m.member))
}

fn cmd_count(cli: &Cli, path: &Path) -> Result<CommandResult, CommandResult> {
    let (text, g) = load_graph(path)?;
    let t = mono_triangles(&g);
    let mut report = header(cli, &[(&path.display().to_string(), text.as_bytes())]);
    for (c, count) in t.per_colour.iter().enumerate() {
        writeln!(report, "colour {}: {count}", c + 1).unwrap();
    }
    write!(report, "total={}", t.total).unwrap();
    if g.n() >= 5 && g.k() == 3 {
        write!(report, " formula={}", corollary_value(g.n() as u64)).unwrap();
    }
    report.push('\n');
    Ok(CommandResult::ok(report, true))
}

fn cmd_brute(cli: &Cli) -> Result<CommandResult, CommandResult> {
    let n = require_n(cli)?;
    let result = brute_min_mono(n, cli.k).map_err(CommandResult::error)?;
    let mut report = header(cli, &[]);
    write!(
        report,
        "n={n} k={} minimum={} minimisers={}",
        cli.k,
        result.minimum,
        result.minimisers.len()
    )
    .unwrap();
    let mut ok = true;
    if cli.k == 2 {
        let formula = goodman(n as u64);
        ok = formula == result.minimum;
        write!(
            report,
            " formula={formula} {}",
            if ok { "OK" } else { "MISMATCH" }
        )
        .unwrap();
    }
    report.push('\n');
    let mut listing = String::new();
    for (key, g) in &result.minimisers {
        writeln!(listing, "# {key}").unwrap();
        listing.push_str(&g.to_text());
    }
    write_out(cli, &listing, &mut report)?;
    if cli.out.is_none() {
        report.push_str(&listing);
    }
    Ok(CommandResult::ok(report, ok))
}

fn cmd_goodman(cli: &Cli) -> Result<CommandResult, CommandResult> {
    let n = require_n(cli)?;
    let formula = goodman(n as u64);
    let mut report = header(cli, &[]);
    let ok = match brute_min_mono(n, 2) {
        Ok(b) => {
            let ok = b.minimum == formula;
            writeln!(
                report,
                "formula={formula} brute={} {}",
                b.minimum,
                if ok { "OK" } else { "MISMATCH" }
            )
            .unwrap();
            ok
        }
        Err(_) => {
            writeln!(report, "formula={formula} brute=skipped (n too large)").unwrap();
            true
        }
    };
    Ok(CommandResult::ok(report, ok))
}

fn cmd_chain_rule(cli: &Cli, count: usize) -> Result<CommandResult, CommandResult> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
    let mut report = header(cli, &[]);
    let mut failures = 0;
    for idx in 0..count {
        let (f, m, h) = random_chain_triple(&mut rng);
        match verify_chain_rule(&f, m, &h) {
            Ok(true) => {}
            Ok(false) => {
                failures += 1;
                writeln!(
                    report,
                    "triple {}: chain rule FAILED (|F|={}, m={m}, |H|={})",
                    idx + 1,
                    f.size(),
                    h.size()
                )
                .unwrap();
            }
            Err(e) => return Err(CommandResult::error(e)),
        }
    }
    writeln!(
        report,
        "seed={} triples={count} failures={failures}",
        cli.seed
    )
    .unwrap();
    Ok(CommandResult::ok(report, failures == 0))
}

fn cmd_sdp_export(cli: &Cli) -> Result<CommandResult, CommandResult> {
    let (name, text, cert) = load_cert(cli)?;
    let Some(out) = &cli.out else {
        return Err(CommandResult::error("--out is required"));
    };
    let table = coefficient_table(&cert);
    export_sdp(&cert, &table, out)
        .map_err(|e| CommandResult::error(format!("{}: {e}", out.display())))?;
    let mut report = header(cli, &[(&name, text.as_bytes())]);
    writeln!(
        report,
        "wrote {}: {} constraints, {} blocks",
        out.display(),
        table.models().len(),
        cert.blocks.len() + 1
    )
    .unwrap();
    Ok(CommandResult::ok(report, true))
}

fn cmd_sdp_round(cli: &Cli, solution: &Path, mode: Mode) -> Result<CommandResult, CommandResult> {
    let (name, text, template) = load_cert(cli)?;
    let sol_text = read(solution)?;
    let dims: Vec<usize> = template.blocks.iter().map(|b| b.vectors.len()).collect();
    let table = coefficient_table(&template);
    let slack = table.models().len() + 1;
    let sol = parse_solution(&sol_text, &dims, slack)
        .map_err(|e| CommandResult::error(format!("{}: {e}", solution.display())))?;
    let mode = match mode {
        Mode::Grid => RoundingMode::Grid,
        Mode::Cf => RoundingMode::ContinuedFraction,
    };
    let cert =
        round_solution(&template, &sol.blocks, cli.max_den, mode).map_err(CommandResult::error)?;
    let verdict = verify_with_table(&cert, &table);
    let mut report = header(
        cli,
        &[
            (&name, text.as_bytes()),
            (&solution.display().to_string(), sol_text.as_bytes()),
        ],
    );
    if let Some(b) = &sol.bound {
        writeln!(report, "solver bound: {}", b.to_scientific(12)).unwrap();
    }
    writeln!(report, "max_den={} mode={mode:?}", cli.max_den).unwrap();
    write_out(
        cli,
        &crate::certificate::write_certificate(&cert),
        &mut report,
    )?;
    report.push_str(&verdict.to_text());
    report.push_str(&verdict.to_key_value());
    Ok(CommandResult::ok(report, verdict.verified))
}
