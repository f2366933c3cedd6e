use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};

use rellat::decide::{certify, CertifyError};
use rellat::model::{default_attr_names, default_value_names};
use rellat::syntax::format_relation;
use rellat::{decide, format_certificate, parse_certificate, parse_model, Budget, Verdict};
use rellat_core::lattice::{check_laws, evaluate};
use rellat_core::space::DEFAULT_POINT_LIMIT;
use rellat_core::terms::{parse_inclusion, parse_term};
use rellat_core::verify::verify;
use rellat_core::{FunctionSpace, Inclusion, RelLattice};

const VALID: u8 = 0;
const REFUTED: u8 = 1;
const UNKNOWN: u8 = 2;
const USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "rellat", version, about = "Inclusions between lattice terms in relational lattices")]
struct Cli {
    /// Worker threads for the valuation search.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide `t <= s` within a search budget.
    Decide {
        /// The inclusion, e.g. "x ^ (y v z) <= x ^ y v x ^ z".
        inclusion: String,
        #[arg(long, default_value_t = 3)]
        max_attrs: usize,
        #[arg(long, default_value_t = 3)]
        max_vals: usize,
        /// Overridden by RELLAT_SEED.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Valuations per lattice size when exhaustive enumeration does not fit.
        #[arg(long, default_value_t = 100_000, conflicts_with = "exhaustive")]
        budget_valuations: u64,
        /// Only enumerate exhaustively, whatever the count.
        #[arg(long)]
        exhaustive: bool,
        /// Seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Where to write the certificate; printed otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shrink the failure of an inclusion in a given model.
    Shrink {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        inclusion: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        inclusion: String,
    },
    /// Print the value of a term in a model.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        term: String,
    },
    /// Check the lattice laws on every small R(D, A).
    Axioms {
        #[arg(long, default_value_t = 2)]
        max_attrs: usize,
        #[arg(long, default_value_t = 2)]
        max_vals: usize,
    },
    /// Print every element of R(D, A).
    Enumerate {
        #[arg(long, default_value_t = 2)]
        attrs: usize,
        #[arg(long, default_value_t = 2)]
        vals: usize,
    },
}

/// Largest lattice whose triples `axioms` checks.
const AXIOM_ELEMENT_LIMIT: u128 = 200;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { VALID };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn inclusion(text: &str) -> anyhow::Result<Inclusion> {
    parse_inclusion(text).map_err(|e| anyhow!("inclusion {e}"))
}

fn emit_certificate(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn seed(flag: u64) -> anyhow::Result<u64> {
    match std::env::var("RELLAT_SEED") {
        Ok(s) => s.trim().parse().with_context(|| format!("RELLAT_SEED=`{s}` is not an integer")),
        Err(std::env::VarError::NotPresent) => Ok(flag),
        Err(e) => bail!("RELLAT_SEED: {e}"),
    }
}

fn run(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Decide { inclusion: text, max_attrs, max_vals, seed: s, budget_valuations, exhaustive, time_limit, out } => {
            let inc = inclusion(&text)?;
            let time_limit = match time_limit {
                Some(t) if t.is_finite() && t > 0.0 => Some(Duration::from_secs_f64(t)),
                Some(t) => bail!("time limit must be positive, got {t}"),
                None => None,
            };
            if max_attrs == 0 || max_vals == 0 || budget_valuations == 0 {
                bail!("budgets must be positive");
            }
            let budget = Budget {
                max_attrs,
                max_vals,
                max_valuations: (!exhaustive).then_some(budget_valuations),
                time_limit,
                seed: seed(s)?,
            };
            match decide(&inc, &budget) {
                Verdict::Valid => {
                    println!("VALID (free lattice)");
                    Ok(VALID)
                }
                Verdict::Refuted(r) => {
                    let c = &r.certificate;
                    let text = format_certificate(c);
                    println!(
                        "REFUTED in R(D, A) with |A| = {}, |D| = {} (valuation {}{})",
                        r.model.attrs.len(),
                        r.model.values.len(),
                        r.index,
                        if r.exhaustive { ", exhaustive" } else { ", random" }
                    );
                    println!("certificate: {} atoms, {} values, verified", c.attrs.len(), c.values.len());
                    emit_certificate(&text, out.as_deref())?;
                    Ok(REFUTED)
                }
                Verdict::Unknown(why) => {
                    println!("UNKNOWN: {why}");
                    Ok(UNKNOWN)
                }
            }
        }
        Command::Shrink { model, inclusion: text, out } => {
            let inc = inclusion(&text)?;
            let m = parse_model(&read(&model)?).with_context(|| format!("in {}", model.display()))?;
            let space = FunctionSpace::hamming(m.attrs.len(), m.values.len(), DEFAULT_POINT_LIMIT)?;
            match certify(&inc, &m, &space) {
                Ok((c, _, _)) => {
                    println!("REFUTED: certificate with {} atoms, {} values, verified", c.attrs.len(), c.values.len());
                    emit_certificate(&format_certificate(&c), out.as_deref())?;
                    Ok(REFUTED)
                }
                Err(CertifyError::Holds) => bail!("no witness: the inclusion holds in this model"),
                Err(e) => Err(e.into()),
            }
        }
        Command::Verify { cert, inclusion: text } => {
            let inc = inclusion(&text)?;
            let c = parse_certificate(&read(&cert)?).with_context(|| format!("in {}", cert.display()))?;
            match verify(&c, &inc) {
                Ok(r) => {
                    println!("OK: {} atoms, {} values, witness checked", r.atoms, r.values);
                    Ok(VALID)
                }
                Err(e) => {
                    println!("REJECTED: {e}");
                    Ok(REFUTED)
                }
            }
        }
        Command::Eval { model, term } => {
            let t = parse_term(&term).map_err(|e| anyhow!("term {e}"))?;
            let m = parse_model(&read(&model)?).with_context(|| format!("in {}", model.display()))?;
            let r = evaluate(&m.lattice(), &t, &m.valuation)?;
            println!("{}", format_relation(&r, &m.attrs, &m.values));
            Ok(VALID)
        }
        Command::Axioms { max_attrs, max_vals } => {
            let mut failed = false;
            for attrs in 0..=max_attrs {
                for vals in 1..=max_vals {
                    let rl = RelLattice::new(attrs, vals);
                    match rl.element_count() {
                        Some(n) if n <= AXIOM_ELEMENT_LIMIT => {
                            let report = check_laws(&rl, &rl.enumerate());
                            let laws: Vec<String> = report.laws().iter().map(|(l, n)| format!("{l}={n}")).collect();
                            println!("|A| = {attrs}, |D| = {vals}: {n} elements, {} triples, {}", report.triples, laws.join(" "));
                            failed |= report.violations() > 0;
                        }
                        _ => println!("|A| = {attrs}, |D| = {vals}: skipped, too many elements"),
                    }
                }
            }
            Ok(if failed { REFUTED } else { VALID })
        }
        Command::Enumerate { attrs, vals } => {
            if attrs > 26 || (vals as u128).checked_pow(attrs as u32).is_none_or(|n| n >= 32) {
                bail!("R(D, A) with |A| = {attrs}, |D| = {vals} is too large to enumerate");
            }
            let rl = RelLattice::new(attrs, vals);
            let (a, v) = (default_attr_names(attrs), default_value_names(vals));
            for r in rl.enumerate() {
                println!("{}", format_relation(&r, &a, &v));
            }
            Ok(VALID)
        }
    }
}
