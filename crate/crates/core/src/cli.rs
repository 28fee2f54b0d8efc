//! The `tubecover` command line.
//!
//! Exit codes: 0 for success or a passing verdict, 1 for a rejection or a
//! failed check, 2 for usage and parse errors.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::classifier::{self, ClassifyOptions};
use crate::domains::{self, DomainProduct, IrreducibleDomain};
use crate::jordan::{self, JordanAlgebraSpec};
use crate::poly::{self, Polynomial};
use crate::tensors::{self, InvariantTensor, VerificationRecord};

#[derive(Parser, Debug)]
#[command(name = "tubecover", version, about = "Universal covers of tube-type locally symmetric manifolds from tensor polynomials")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PolyInput {
    /// Polynomial text, e.g. "(x1*x4 - x2*x3)^2".
    #[arg(long, conflicts_with = "poly_file", required_unless_present = "poly_file")]
    poly: Option<String>,
    /// File holding the polynomial text.
    #[arg(long)]
    poly_file: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyOpts {
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-5)]
    step: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide the universal cover from an evaluated tensor polynomial.
    Classify {
        #[command(flatten)]
        input: PolyInput,
        /// Manifold dimension n.
        #[arg(long)]
        dim: u32,
        /// Treat the input as a semi-special tensor (degree n).
        #[arg(long)]
        semispecial: bool,
        /// Random lines per irreducibility check.
        #[arg(long, default_value_t = classifier::DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the step-by-step trace.
        #[arg(long)]
        explain: bool,
    },
    /// Square-free decomposition and variable blocks.
    Squarefree {
        #[command(flatten)]
        input: PolyInput,
        /// Number of variables (default: largest index used).
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Rank, dimension and canonical form of a domain, or lookup by (r, n).
    DomainInfo {
        /// Domain in Cartan notation, e.g. "II_4", "IV_5", "E27".
        #[arg(long, conflicts_with_all = ["rank", "dim"], required_unless_present_all = ["rank", "dim"])]
        domain: Option<String>,
        #[arg(long, requires = "dim")]
        rank: Option<u32>,
        #[arg(long, requires = "rank")]
        dim: Option<u32>,
    },
    /// Least twist m and exponents a_j with a_j r_j = m n_j.
    SolveConditions {
        /// Comma-separated r:n pairs, e.g. "2:3,3:6".
        #[arg(long, conflicts_with = "product", required_unless_present = "product")]
        factors: Option<String>,
        /// A product of domains, e.g. "I_{2,2} x III_3".
        #[arg(long)]
        product: Option<String>,
    },
    /// Counts (a, b) of I_{2,2} and III_3 factors with 4a + 6b = n, a + b = p.
    SolveProp61 {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        factors: u32,
    },
    /// The tensor polynomial of a product of domains.
    BuildPsi {
        /// e.g. "I_{2,2} x III_3" or "H^3".
        #[arg(long)]
        product: String,
        /// Twist; defaults to the least admissible one.
        #[arg(long)]
        m: Option<u32>,
    },
    /// Check the quadratic-representation identities on random samples.
    VerifyJordan {
        /// sym:n, herm:n, quat:k, spin:d or albert.
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        opts: VerifyOpts,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Check that the invariant tensor is fixed by the automorphism group.
    VerifyInvariance {
        #[arg(long)]
        domain: String,
        /// Twist; defaults to the least admissible one.
        #[arg(long)]
        m: Option<u32>,
        #[command(flatten)]
        opts: VerifyOpts,
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
    },
    /// Check the Jacobian cocycle of the Mobius action (types I, II, III).
    VerifyCocycle {
        #[arg(long)]
        domain: String,
        #[command(flatten)]
        opts: VerifyOpts,
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
    },
    /// Check the tube inversion j(z) = -z^-1 chain.
    VerifyInversion {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        opts: VerifyOpts,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

/// Usage or input error: reported on stderr with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<i32, UsageError>;

/// Runs the command line with the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the command line, writing reports to `out` and errors to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let mut ctx = Ctx { out, json: cli.json };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    json: bool,
}

impl Ctx<'_> {
    fn line(&mut self, s: impl std::fmt::Display) {
        let _ = writeln!(self.out, "{s}");
    }

    fn json<T: Serialize>(&mut self, v: &T) {
        let _ = writeln!(self.out, "{}", serde_json::to_string(v).expect("serializable"));
    }
}

fn read_poly(input: &PolyInput, nvars: Option<usize>) -> Result<Polynomial, UsageError> {
    let text = match (&input.poly, &input.poly_file) {
        (Some(p), _) => p.clone(),
        (None, Some(path)) => {
            std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?
        }
        (None, None) => return Err(UsageError("one of --poly or --poly-file is required".into())),
    };
    let text = text.trim();
    Ok(match nvars {
        Some(n) => Polynomial::parse_with_nvars(text, n)?,
        None => text.parse()?,
    })
}

fn parse_domain(s: &str) -> Result<IrreducibleDomain, UsageError> {
    Ok(s.parse::<IrreducibleDomain>()?)
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> CmdResult {
    match cmd {
        Command::Classify { input, dim, semispecial, trials, seed, explain } => {
            let psi = read_poly(&input, None)?;
            if psi.nvars() > dim as usize {
                return Err(UsageError(format!("polynomial uses x{} but --dim is {dim}", psi.nvars())));
            }
            let opts = ClassifyOptions { trials, seed };
            let report = if semispecial {
                classifier::classify_semispecial_with(&psi, dim, &opts)?
            } else {
                classifier::classify_with(&psi, dim, &opts)?
            };
            if ctx.json {
                ctx.json(&report);
            } else if explain {
                let _ = write!(ctx.out, "{}", classifier::explain(&report));
            } else {
                match (&report.verdict, report.product()) {
                    (classifier::Verdict::Rejected { reason, .. }, _) => ctx.line(format!("Rejected: {reason}")),
                    (classifier::Verdict::Polydisk, Some(p)) => ctx.line(format!("Polydisk {p} (m = {})", report.m.unwrap_or(0))),
                    (_, Some(p)) => ctx.line(format!("TubeProduct {p} (m = {})", report.m.unwrap_or(0))),
                    _ => unreachable!("accepted verdicts carry a product"),
                }
            }
            Ok(if report.verdict.is_accepted() { 0 } else { 1 })
        }
        Command::Squarefree { input, nvars } => {
            let p = read_poly(&input, nvars)?;
            let ff = poly::squarefree_decomposition(&p)?;
            let blocks = poly::variable_blocks(&ff);
            if ctx.json {
                #[derive(Serialize)]
                struct Out<'a> {
                    squarefree: bool,
                    decomposition: &'a poly::FactoredForm,
                    blocks: &'a [poly::VariableBlock],
                }
                ctx.json(&Out { squarefree: ff.is_squarefree(), decomposition: &ff, blocks: &blocks });
            } else {
                ctx.line(format!("constant: {}", ff.constant));
                for (f, k) in &ff.factors {
                    ctx.line(format!("({f})^{k}"));
                }
                for b in &blocks {
                    let vars: Vec<String> = b.variables.iter().map(|v| format!("x{}", v + 1)).collect();
                    ctx.line(format!("block {{{}}}: {} factor(s)", vars.join(", "), b.factors.len()));
                }
                ctx.line(format!("square-free: {}", ff.is_squarefree()));
            }
            Ok(0)
        }
        Command::DomainInfo { domain, rank, dim } => {
            let d = match (domain, rank, dim) {
                (Some(s), _, _) => Some(parse_domain(&s)?),
                (None, Some(r), Some(n)) => domains::lookup(r, n),
                _ => return Err(UsageError("give --domain or both --rank and --dim".into())),
            };
            let Some(d) = d else {
                if ctx.json {
                    ctx.json(&serde_json::json!({ "domain": null }));
                } else {
                    ctx.line("no tube-type domain with that rank and dimension");
                }
                return Ok(1);
            };
            let algebra = JordanAlgebraSpec::from_domain(&d.canonical());
            let (m, a) = domains::minimal_m(&[(d.rank, d.dim)])?;
            if ctx.json {
                ctx.json(&serde_json::json!({
                    "domain": d, "rank": d.rank, "dim": d.dim, "canonical": d.canonical(),
                    "jordan_algebra": algebra, "minimal_m": m, "exponent": a[0],
                    "divisible": d.dim % d.rank == 0,
                }));
            } else {
                ctx.line(format!("{d}: rank {}, dimension {}", d.rank, d.dim));
                ctx.line(format!("canonical form: {}", d.canonical()));
                ctx.line(format!("Jordan algebra: {algebra}"));
                ctx.line(format!("least twist m = {m}, norm exponent a = {}", a[0]));
            }
            Ok(0)
        }
        Command::SolveConditions { factors, product } => {
            let pairs: Vec<(u32, u32)> = match (factors, product) {
                (Some(f), _) => f
                    .split(',')
                    .map(|s| {
                        let (r, n) = s.trim().split_once(':').ok_or_else(|| UsageError(format!("bad pair '{s}'")))?;
                        Ok((r.trim().parse()?, n.trim().parse()?))
                    })
                    .collect::<Result<_, UsageError>>()?,
                (None, Some(p)) => {
                    let p: DomainProduct = p.parse()?;
                    p.factors().iter().map(|d| (d.rank, d.dim)).collect()
                }
                _ => return Err(UsageError("give --factors or --product".into())),
            };
            if pairs.iter().any(|&(r, n)| r == 0 || n == 0) {
                return Err(UsageError("ranks and dimensions must be positive".into()));
            }
            let (m, a) = domains::minimal_m(&pairs)?;
            if ctx.json {
                ctx.json(&serde_json::json!({ "m": m, "a": a }));
            } else {
                ctx.line(format!("m={m}"));
                ctx.line(format!("a={}", a.iter().map(u32::to_string).collect::<Vec<_>>().join(",")));
            }
            Ok(0)
        }
        Command::SolveProp61 { dim, factors } => match domains::solve_prop61(dim, factors) {
            Some((a, b)) => {
                let parts: Vec<String> = std::iter::repeat_n("I_{2,2}", a as usize)
                    .chain(std::iter::repeat_n("III_3", b as usize))
                    .map(String::from)
                    .collect();
                let cover = parts.join(" × ");
                if ctx.json {
                    ctx.json(&serde_json::json!({ "a": a, "b": b, "cover": cover }));
                } else {
                    ctx.line(format!("a={a} b={b}"));
                    ctx.line(format!("cover: {cover}"));
                }
                Ok(0)
            }
            None => {
                if ctx.json {
                    ctx.json(&serde_json::json!({ "a": null, "b": null }));
                } else {
                    ctx.line("no non-negative solution");
                }
                Ok(1)
            }
        },
        Command::BuildPsi { product, m } => {
            let p: DomainProduct = product.parse()?;
            let m = match m {
                Some(m) => m,
                None => {
                    let pairs: Vec<(u32, u32)> = p.factors().iter().map(|d| (d.rank, d.dim)).collect();
                    domains::minimal_m(&pairs)?.0
                }
            };
            let psi = tensors::build_psi(&p, m)?;
            if ctx.json {
                ctx.json(&serde_json::json!({ "product": p, "m": m, "k": m * p.dim(), "psi": psi.to_string() }));
            } else {
                ctx.line(psi);
            }
            Ok(0)
        }
        Command::VerifyJordan { spec, opts, tol } => {
            let spec: JordanAlgebraSpec = spec.parse()?;
            check_trials(opts.trials)?;
            let report = jordan::verify_jordan_identities_with_step(spec, opts.trials, opts.seed, tol, opts.step);
            for r in &report.records {
                if ctx.json {
                    ctx.json(r);
                } else {
                    let mark = if r.max_deviation < tol { "PASS" } else { "FAIL" };
                    ctx.line(format!("{mark} {spec} {}: max deviation {:.3e} over {} trials", r.identity, r.max_deviation, r.trials));
                }
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::VerifyInvariance { domain, m, opts, tol } => {
            let d = parse_domain(&domain)?;
            check_trials(opts.trials)?;
            let tensor = match m {
                Some(m) => InvariantTensor::new(d, m)?,
                None => InvariantTensor::minimal(d),
            };
            let records = tensors::verify_tensor_invariance_with_step(&tensor, opts.trials, opts.seed, tol, opts.step)?;
            Ok(emit_records(ctx, &records))
        }
        Command::VerifyCocycle { domain, opts, tol } => {
            let d = parse_domain(&domain)?;
            check_trials(opts.trials)?;
            let records = tensors::verify_cocycle_with_step(&d, opts.trials, opts.seed, tol, opts.step)?;
            Ok(emit_records(ctx, &records))
        }
        Command::VerifyInversion { spec, opts, tol } => {
            let spec: JordanAlgebraSpec = spec.parse()?;
            check_trials(opts.trials)?;
            let records = tensors::verify_tube_inversion_with_step(spec, opts.trials, opts.seed, tol, opts.step);
            Ok(emit_records(ctx, &records))
        }
    }
}

fn check_trials(trials: usize) -> Result<(), UsageError> {
    if trials == 0 {
        return Err(UsageError("--trials must be at least 1".into()));
    }
    Ok(())
}

fn emit_records(ctx: &mut Ctx, records: &[VerificationRecord]) -> i32 {
    for r in records {
        if ctx.json {
            ctx.json(r);
        } else {
            let mark = if r.pass { "PASS" } else { "FAIL" };
            ctx.line(format!("{mark} {} {}: max residual {:.3e} over {} trials (step {:e})", r.kind, r.check, r.max_residual, r.trials, r.step));
        }
    }
    if records.iter().all(|r| r.pass && r.trials > 0) {
        0
    } else {
        1
    }
}
