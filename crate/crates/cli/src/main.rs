use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qgroup::catalog::{self, Builtins, Loaded};
use qgroup::contract::{self, SolveOutcome};
use qgroup::report::{format_text, CheckRecord, CheckReport, RunReport, Status};
use qgroup::rewrite::{check_local_confluence, StrategyRegistry};
use qgroup::suite::{self, RunConfig, SuiteContext, SuiteRegistry};
use qgroup::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_LIMIT: u8 = 3;

#[derive(Parser)]
#[command(name = "qgroup", version, about = "Normal forms, Hopf checks and the SU_q(2) -> E_kappa(2) contraction")]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// `builtin:NAME` or a presentation file.
    #[arg(short = 'p', long, global = true)]
    presentation: Option<String>,

    /// Truncation order in eps (0..=4).
    #[arg(long, global = true, default_value_t = 1)]
    order: u32,

    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Rewrite steps allowed per normal form.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    step_limit: u64,

    /// Longest overlap considered for critical pairs.
    #[arg(long, global = true, default_value_t = 6)]
    max_overlap: usize,

    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,

    /// Set lam = 0 in the E_kappa(2) presentations.
    #[arg(long, global = true)]
    classical: bool,

    /// Fill in `millis` (otherwise 0, keeping output reproducible).
    #[arg(long, global = true)]
    timings: bool,

    /// Random elements per randomized check.
    #[arg(long, global = true, default_value_t = 200)]
    trials: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of an expression.
    Nf {
        expression: String,
        /// Rewriting strategy (`leftmost` or `random`).
        #[arg(long, default_value = "leftmost")]
        strategy: String,
    },
    /// Check that all critical pairs resolve.
    Confluence,
    /// Hopf axioms on generators and random elements.
    HopfCheck,
    /// Order-by-order verification of the contraction.
    Contract,
    /// Solve for a commutator from coproduct consistency.
    SolveCommutator {
        /// The pair `x,y`.
        #[arg(long, value_delimiter = ',', default_values_t = ["eta".to_string(), "etabar".to_string()])]
        pair: Vec<String>,
        /// Basis elements, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = ["eta".to_string(), "etabar".to_string(), "E - 1".to_string(), "F - 1".to_string()])]
        basis: Vec<String>,
    },
    /// Every suite: catalog, confluence, Hopf, contraction, solver.
    Report,
}

impl Global {
    fn config(&self) -> RunConfig {
        RunConfig {
            presentation: self.presentation.clone(),
            truncation_order: self.order,
            step_limit: self.step_limit,
            seed: self.seed,
            max_overlap: self.max_overlap,
            output: match self.output {
                Output::Text => "text".into(),
                Output::Json => "json".into(),
            },
            classical: self.classical,
            timings: self.timings,
            trials: self.trials,
        }
    }

    fn load(&self, default: &str) -> anyhow::Result<Loaded> {
        let spec = self.presentation.as_deref().unwrap_or(default);
        let l = catalog::resolve(spec, self.order).with_context(|| format!("loading `{spec}`"))?;
        Ok(match l {
            Loaded::Plain(p) => Loaded::Plain(p.with_step_limit(self.step_limit)),
            Loaded::Hopf(h) => Loaded::Hopf(Box::new(h.with_step_limit(self.step_limit))),
        })
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(g: &Global, rep: &CheckReport) -> u8 {
    match g.output {
        Output::Text => out(&format_text(&rep.records)),
        Output::Json => out(&format!("{}\n", RunReport::new(g.config(), rep.records.clone()).to_json())),
    }
    if rep.ok() {
        0
    } else {
        EXIT_FAIL
    }
}

fn cmd_nf(g: &Global, expression: &str, strategy: &str) -> anyhow::Result<u8> {
    let l = g.load("builtin:suq2")?;
    let p = l.presentation();
    let x = catalog::parse_expression(expression, p)?;
    let s = StrategyRegistry::default().get(strategy, g.seed)?;
    let n = s.normalize(p, &x, g.step_limit)?;
    match g.output {
        Output::Text => out(&format!("{n}\n")),
        Output::Json => out(&format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({
                "version": qgroup::report::REPORT_VERSION,
                "config": g.config(),
                "input": expression,
                "normal_form": n.to_string(),
            }))?
        )),
    }
    Ok(0)
}

fn cmd_confluence(g: &Global) -> anyhow::Result<u8> {
    let l = g.load("builtin:suq2")?;
    let p = l.presentation();
    let r = check_local_confluence(p, g.max_overlap, g.step_limit)?;
    let mut rep = CheckReport::new();
    for a in &r.ambiguities {
        rep.push(CheckRecord::new(
            format!("ambiguity {} (`{}` / `{}`)", a.word, a.rules.0, a.rules.1),
            "critical pairs resolve",
            if a.resolved { Status::Pass } else { Status::Fail },
            a.difference.clone(),
        ));
    }
    Ok(emit(g, &rep))
}

fn cmd_hopf_check(g: &Global) -> anyhow::Result<u8> {
    let l = g.load("builtin:suq2")?;
    let h = l.hopf().ok_or_else(|| Error::Usage(format!("`{}` has no Hopf structure", l.presentation().name())))?;
    let cx = SuiteContext::new(RunConfig { presentation: None, ..g.config() })?;
    let mut rep = suite::hopf_checks(h, &mut cx.rng(0), g.trials)?;
    if h.alphabet().names() == ["b", "c", "a", "d"] {
        rep.extend(suite::determinant_checks(h)?);
    }
    Ok(emit(g, &rep))
}

fn cmd_contract(g: &Global) -> anyhow::Result<u8> {
    if g.presentation.is_some() {
        return Err(Error::Usage("contract works on the builtin presentations only".into()).into());
    }
    let b = Builtins::load(g.order, g.classical)?;
    let b = Builtins {
        suq2: b.suq2.with_step_limit(g.step_limit),
        klmn: b.klmn.with_step_limit(g.step_limit),
        fin: b.fin.with_step_limit(g.step_limit),
        classical: b.classical,
    };
    Ok(emit(g, &contract::verify_all(&b)?.to_check_report()))
}

fn cmd_solve(g: &Global, pair: &[String], basis: &[String]) -> anyhow::Result<u8> {
    let l = g.load("builtin:ekappa2-final")?;
    let mut h = l.hopf().ok_or_else(|| Error::Usage("the solver needs a Hopf presentation".into()))?.clone();
    if g.classical {
        h = h.specialize_zero(qgroup::scalars::LAMBDA)?;
    }
    let p = h.base();
    let x = catalog::parse_expression(&pair[0], p)?;
    let y = catalog::parse_expression(&pair[1], p)?;
    let basis_el = basis
        .iter()
        .map(|b| catalog::parse_expression(b.trim(), p))
        .collect::<qgroup::Result<Vec<_>>>()?;
    let sol = contract::solve_commutator(&h, &x, &y, &basis_el)?;
    let name = format!("[{}, {}]", pair[0], pair[1]);
    let mut rep = CheckReport::new();
    match &sol.outcome {
        SolveOutcome::Unique(c) => {
            for (b, c) in basis.iter().zip(c) {
                rep.push(CheckRecord::new(
                    format!("coefficient of {} in {name}", b.trim()),
                    "unique solution",
                    Status::Pass,
                    c.to_string(),
                ));
            }
        }
        SolveOutcome::Inconsistent { augmented_rank } => rep.push(CheckRecord::new(
            format!("{name} over the basis"),
            "inconsistent",
            Status::Fail,
            format!("rank {} < augmented rank {augmented_rank}", sol.rank),
        )),
        SolveOutcome::Underdetermined { free } => {
            let free: Vec<String> = free.iter().map(|(i, d)| format!("{} * lam^{d}", basis[*i].trim())).collect();
            rep.push(CheckRecord::new(
                format!("{name} over the basis"),
                "underdetermined",
                Status::Fail,
                format!("rank {} of {} unknowns; free: {}", sol.rank, sol.unknowns, free.join(", ")),
            ))
        }
    }
    Ok(emit(g, &rep))
}

fn cmd_report(g: &Global) -> anyhow::Result<u8> {
    let cx = SuiteContext::new(g.config())?;
    let rep = SuiteRegistry::default().run(&cx)?;
    Ok(emit(g, &rep))
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let g = &cli.global;
    g.config().validate()?;
    match &cli.command {
        Command::Nf { expression, strategy } => cmd_nf(g, expression, strategy),
        Command::Confluence => cmd_confluence(g),
        Command::HopfCheck => cmd_hopf_check(g),
        Command::Contract => cmd_contract(g),
        Command::SolveCommutator { pair, basis } => {
            if pair.len() != 2 {
                return Err(anyhow!(Error::Usage("--pair takes exactly two names".into())));
            }
            cmd_solve(g, pair, basis)
        }
        Command::Report => cmd_report(g),
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(err) if err.is_resource_limit() => EXIT_LIMIT,
        Some(err) if err.is_usage() => EXIT_USAGE,
        Some(_) => EXIT_FAIL,
        None => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
