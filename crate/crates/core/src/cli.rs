//! The `kappa` command-line driver.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails,
//! 2 on usage or evaluation errors.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::{normalize, Element, RelationTable};
use crate::checks::{self, SelfTestOptions};
use crate::config::{Basis, CoproductVariant, MetricSign, Order, SmashConfig};
use crate::error::{Error, Result};
use crate::hopf::{ActionMode, HopfPair, Side};
use crate::represent::{self, Case, Differentiation, SweepConfig};
use crate::smash::{self, Route};
use crate::syntax;

#[derive(Debug, Parser)]
#[command(name = "kappa", version, about = "kappa-deformed phase spaces: derivations, Hopf maps, uncertainty checks")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Algebra {
    /// the derived phase space of the selected configuration
    #[default]
    Phase,
    Position,
    Momentum,
    /// no reordering, only folding of exponentials
    Free,
}

#[derive(Debug, Clone, Args)]
struct Common {
    /// generator basis: bicross | standard
    #[arg(long, default_value = "bicross", global = true)]
    basis: Basis,
    /// factor order of the phase space: xp | px
    #[arg(long, default_value = "px", global = true)]
    order: Order,
    /// metric convention: standard (-,+,+,+) | flipped
    #[arg(long, default_value = "standard", global = true)]
    metric: MetricSign,
    /// legs of D(P_k): direct | transposed
    #[arg(long, default_value = "direct", global = true)]
    coproduct: CoproductVariant,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

impl Common {
    fn config(&self) -> SmashConfig {
        SmashConfig { basis: self.basis, order: self.order, metric: self.metric, coproduct: self.coproduct }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Derive the phase-space table and compare it with the reference
    Derive {
        #[command(flatten)]
        common: Common,
        /// skip the reference comparison
        #[arg(long)]
        no_verify: bool,
        #[arg(long, default_value = "direct", value_parser = parse_route)]
        route: Route,
    },
    /// Normal-order an expression
    Normalize {
        expr: String,
        #[arg(long, value_enum, default_value_t = Algebra::Phase)]
        algebra: Algebra,
        #[command(flatten)]
        common: Common,
    },
    /// Commutator [a, b] in the phase space
    Commutator {
        a: String,
        b: String,
        #[command(flatten)]
        common: Common,
    },
    /// Duality pairing <x, p>
    Pair {
        x: String,
        p: String,
        #[command(flatten)]
        common: Common,
    },
    /// One of the four actions: x|>p, p|>x, p<|x, x<|p
    Act {
        a: String,
        b: String,
        #[arg(long)]
        mode: ActionMode,
        #[command(flatten)]
        common: Common,
    },
    /// Coproduct of a position or momentum element
    Coproduct {
        expr: String,
        /// x | p; inferred from the letters when omitted
        #[arg(long)]
        side: Option<Side>,
        #[command(flatten)]
        common: Common,
    },
    /// Classical limit of the derived table
    Limit {
        #[command(flatten)]
        common: Common,
    },
    /// Uncertainty inequalities on random Gaussian states
    Uncertainty {
        /// comma-separated values; `inf` for the undeformed case
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.5, 1.0, 10.0, 1000.0])]
        kappa: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        /// points per axis
        #[arg(long, default_value_t = 128)]
        grid: usize,
        /// half-width L of the momentum box
        #[arg(long, default_value_t = 10.0)]
        extent: f64,
        #[arg(long, default_value_t = 100)]
        states: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// spectral | fd4 | fd6 | fd8
        #[arg(long, default_value = "spectral")]
        diff: Differentiation,
        /// restrict to one basis instead of both
        #[arg(long = "case")]
        case: Option<Case>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run every property suite
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// smaller samples
        #[arg(long)]
        quick: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn parse_route(s: &str) -> std::result::Result<Route, String> {
    match s {
        "direct" => Ok(Route::Direct),
        "mirror" => Ok(Route::Mirror),
        other => Err(format!("unknown route `{other}` (direct | mirror)")),
    }
}

struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, passed: true }
    }
}

fn json_text(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn render_element(format: Format, input: &str, e: &Element) -> String {
    match format {
        Format::Json => json_text(&json!({ "input": input, "result": e.to_string() })),
        _ => format!("{e}\n"),
    }
}

fn table_for(algebra: Algebra, cfg: SmashConfig) -> Result<Option<RelationTable>> {
    Ok(match algebra {
        Algebra::Phase => Some(smash::derive_table(cfg)?.table().clone()),
        Algebra::Position => Some(HopfPair::from_config(cfg)?.position_table().clone()),
        Algebra::Momentum => Some(RelationTable::momentum(cfg)),
        Algebra::Free => None,
    })
}

fn derive(common: &Common, no_verify: bool, route: Route) -> Result<Outcome> {
    let t = smash::derive_table_via(common.config(), route)?;
    let diff = if no_verify { None } else { Some(smash::verify_against_reference(&t)?) };
    let passed = diff.as_ref().is_none_or(|d| d.is_clean());
    let text = match common.format {
        Format::Json => json_text(&json!({ "table": t.to_json(), "verification": diff })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(["lhs", "rhs"]).map_err(io)?;
            for r in t.relations().iter().chain(t.exponentials()) {
                w.write_record([r.label(), r.rhs.to_string()]).map_err(io)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).map_err(|e| Error::Io(e.to_string()))?
        }
        Format::Text => {
            let mut s = t.to_string();
            if let Some(d) = &diff {
                s.push_str(&d.to_string());
            }
            s
        }
    };
    Ok(Outcome { text, passed })
}

fn execute(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Derive { common, no_verify, route } => derive(&common, no_verify, route),
        Command::Normalize { expr, algebra, common } => {
            let e = syntax::parse(&expr)?;
            let out = match table_for(algebra, common.config())? {
                Some(t) => normalize(&e, &t)?,
                None => e,
            };
            Ok(Outcome::ok(render_element(common.format, &expr, &out)))
        }
        Command::Commutator { a, b, common } => {
            let t = smash::derive_table(common.config())?;
            let c = t.commutator(&syntax::parse(&a)?, &syntax::parse(&b)?)?;
            Ok(Outcome::ok(render_element(common.format, &format!("[{a},{b}]"), &c)))
        }
        Command::Pair { x, p, common } => {
            let h = HopfPair::from_config(common.config())?;
            let v = h.pair(&syntax::parse(&x)?, &syntax::parse(&p)?)?;
            Ok(Outcome::ok(render_element(common.format, &format!("<{x},{p}>"), &Element::scalar(v))))
        }
        Command::Act { a, b, mode, common } => {
            let h = HopfPair::from_config(common.config())?;
            let v = h.act(&syntax::parse(&a)?, &syntax::parse(&b)?, mode)?;
            Ok(Outcome::ok(render_element(common.format, &format!("{a} {} {b}", mode.symbol()), &v)))
        }
        Command::Coproduct { expr, side, common } => {
            let e = syntax::parse(&expr)?;
            let side = side.unwrap_or(if e.is_position() { Side::X } else { Side::P });
            let d = HopfPair::from_config(common.config())?.coproduct(&e, side)?;
            let text = match common.format {
                Format::Json => json_text(&json!({ "input": expr, "result": d.to_string() })),
                _ => format!("{d}\n"),
            };
            Ok(Outcome::ok(text))
        }
        Command::Limit { common } => {
            let report = smash::check_classical_limit(&smash::derive_table(common.config())?);
            let text = match common.format {
                Format::Json => json_text(&serde_json::to_value(&report).map_err(|e| Error::Io(e.to_string()))?),
                _ => report.to_string(),
            };
            Ok(Outcome::ok(text))
        }
        Command::Uncertainty { kappa, hbar, grid, extent, states, seed, diff, case, format } => {
            let cfg = SweepConfig {
                cases: case.map_or_else(|| Case::ALL.to_vec(), |c| vec![c]),
                kappas: kappa,
                states,
                seed,
                points: grid,
                extent,
                hbar,
                differentiation: diff,
            };
            let report = represent::sweep(&cfg)?;
            let text = match format {
                Format::Json => json_text(&serde_json::to_value(&report).map_err(|e| Error::Io(e.to_string()))?),
                Format::Csv => report.to_csv()?,
                Format::Text => report.to_string(),
            };
            Ok(Outcome { text, passed: report.passed() })
        }
        Command::Selftest { seed, quick, format } => {
            let opts = if quick {
                SelfTestOptions { seed, triples: 40, products: 20, states: 10 }
            } else {
                SelfTestOptions { seed, ..SelfTestOptions::default() }
            };
            let reports = checks::run_all(opts);
            let passed = reports.iter().all(|r| r.passed());
            let text = match format {
                Format::Json => json_text(&serde_json::to_value(&reports).map_err(|e| Error::Io(e.to_string()))?),
                Format::Csv => {
                    let mut s = String::from("suite,checks,failures\n");
                    for r in &reports {
                        s.push_str(&format!("\"{}\",{},{}\n", r.name, r.cases, r.failures.len()));
                    }
                    s
                }
                Format::Text => reports.iter().map(|r| r.to_string()).collect(),
            };
            Ok(Outcome { text, passed })
        }
    }
}

/// Parses `args` (program name first), runs the command, returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            if o.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
