//! Command-line front end: build, compose, verify, certify and synthesize
//! genuinely nonlocal product-state sets.
//!
//! Exit codes: 0 success (Certified where a verdict applies), 1 Inconclusive
//! or a synthesis that needs an external seed, 2 invalid input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nonlocal_core::constructors::{
    build_grid, build_stack, chain_plan, compose_general, read_plan, star_plan, synthesize,
    tristar_plan, ufl_check_with, write_plan, CompositionPlan, Synthesis, UflUnitary,
    UnitarySource, UFL_FLOOR,
};
use nonlocal_core::error::Error;
use nonlocal_core::numerics::DEFAULT_TOL;
use nonlocal_core::states::{read_state_set, write_state_set, OrderedBasis, PartyDims, StateSet};
use nonlocal_core::verifier::{
    certify_plan, check_orthogonality, direct_sweep, Certificate, VerifyConfig, DEFAULT_SIDE_CAP,
};

#[derive(Parser)]
#[command(
    name = "nonlocal",
    about = "Construct and certify genuinely nonlocal orthogonal product-state sets",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct VerifyOpts {
    /// Numerical tolerance for orthogonality and rank decisions.
    #[arg(long, default_value_t = DEFAULT_TOL, global = true)]
    tol: f64,
    /// Maximum merged dimension of one bipartition side.
    #[arg(long, default_value_t = DEFAULT_SIDE_CAP, global = true)]
    side_cap: usize,
}

impl VerifyOpts {
    fn config(self) -> VerifyConfig {
        VerifyConfig { tol: self.tol, side_cap: self.side_cap }
    }
}

#[derive(Args, Clone)]
struct SourceOpts {
    /// Unitary source: "hadamard", "fourier", or "random:<seed>".
    #[arg(long, default_value = "fourier")]
    unitary: String,
    /// Run seed folded into any random unitary source.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Minimum magnitude required of every first- and last-row entry.
    #[arg(long, default_value_t = UFL_FLOOR)]
    ufl_floor: f64,
}

impl SourceOpts {
    fn parse(&self) -> Result<UnitarySource, Error> {
        if self.ufl_floor <= 0.0 {
            return Err(Error::Input("--ufl-floor must be positive".into()));
        }
        UnitarySource::parse(&self.unitary)
    }

    /// Instantiate a unitary and enforce the requested floor (which may be
    /// stricter than the library default baked into the source).
    fn instantiate(&self, base_seed: u64, n: usize, salt: u64) -> Result<UflUnitary, Error> {
        let u = salted(self.parse()?, base_seed).instantiate(n, salt)?;
        if !ufl_check_with(u.matrix(), DEFAULT_TOL, self.ufl_floor)? {
            return Err(Error::Input(format!(
                "unitary source '{}' does not meet --ufl-floor {}",
                self.unitary, self.ufl_floor
            )));
        }
        Ok(u)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a base family of states.
    Build {
        #[command(subcommand)]
        family: BuildFamily,
    },
    /// Compose certified seeds into a larger set by a connectivity pattern.
    Compose {
        #[command(subcommand)]
        pattern: ComposePattern,
    },
    /// Audit pairwise orthogonality and sweep every bipartition.
    Verify {
        /// State-set JSON file.
        #[arg(long)]
        set: PathBuf,
        /// Write the certificate JSON here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Render the certificate as markdown instead of JSON.
        #[arg(long)]
        markdown: bool,
        #[command(flatten)]
        verify: VerifyOpts,
    },
    /// Certify a composition plan structurally (graph + union + block seeds).
    Certify {
        /// Composition-plan JSON file.
        #[arg(long)]
        plan: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        markdown: bool,
        #[command(flatten)]
        verify: VerifyOpts,
    },
    /// Pick a construction route for the given dims and emit set + plan.
    Synthesize {
        /// Party dimensions, e.g. 3,4,5.
        #[arg(value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[command(flatten)]
        source: SourceOpts,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        plan_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BuildFamily {
    /// Bipartite family of 2(x+y)-4 states on C^x (x) C^y.
    Grid {
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        #[command(flatten)]
        source: SourceOpts,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tripartite family of 2x+4y+2z-8 states on C^x (x) C^y (x) C^z.
    Stack {
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        #[arg(long)]
        z: usize,
        #[command(flatten)]
        source: SourceOpts,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the two-block composition plan.
        #[arg(long)]
        plan_out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ComposeArgs {
    /// Party dimensions of the composed system, e.g. 3,3,3,3.
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<usize>,
    /// Seed state-set JSON files, one per block, in block order.
    #[arg(long = "seed-file", required = true)]
    seed_files: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    plan_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ComposePattern {
    /// Bipartite seeds sharing party 1 as the hub.
    Star(ComposeArgs),
    /// Bipartite seeds along consecutive parties.
    Chain(ComposeArgs),
    /// Tripartite seeds sharing party 1.
    Tristar(ComposeArgs),
    /// Arbitrary plan from a JSON file; fails if its graph is disconnected.
    General {
        plan: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Build { family } => build(family),
        Command::Compose { pattern } => compose(pattern),
        Command::Verify { set, report, markdown, verify } => {
            let set = read_state_set(&set)?;
            let audit = check_orthogonality(&set, verify.tol);
            if !audit.pass {
                let (i, j, overlap) = audit.violations[0];
                return Err(Error::Input(format!(
                    "set is not orthogonal: states {} and {} overlap by {overlap:.3e}",
                    i + 1,
                    j + 1
                )));
            }
            let cert = direct_sweep(&set, &verify.config());
            finish_certificate(cert, report, markdown)
        }
        Command::Certify { plan, report, markdown, verify } => {
            let plan = read_plan(&plan)?;
            let cert = certify_plan(&plan, &verify.config())?;
            finish_certificate(cert, report, markdown)
        }
        Command::Synthesize { dims, source, out, plan_out } => {
            let dims = PartyDims::new(dims)?;
            match synthesize(&dims, source.parse()?, source.seed)? {
                Synthesis::Built { set, plan } => {
                    emit_set(&set, out)?;
                    if let Some(path) = plan_out {
                        match &plan {
                            Some(plan) => write_plan(plan, &path)?,
                            None => eprintln!(
                                "note: the bipartite route has no composition plan; \
                                 certify it with `nonlocal verify`"
                            ),
                        }
                    }
                    println!("verdict=built states={} label={}", set.len(), set.label());
                    Ok(ExitCode::SUCCESS)
                }
                Synthesis::NeedsExternalSeed { dims, reason } => {
                    println!("verdict=needs-external-seed dims={dims:?}");
                    eprintln!("{reason}");
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}

fn build(family: BuildFamily) -> Result<ExitCode, Error> {
    match family {
        BuildFamily::Grid { x, y, source, out } => {
            let set = build_grid(
                x,
                y,
                &source.instantiate(source.seed, x.saturating_sub(1), 0)?,
                &source.instantiate(source.seed, y.saturating_sub(1), 1)?,
                &OrderedBasis::identity(x),
                &OrderedBasis::identity(y),
            )?;
            emit_set(&set, out)?;
            println!("verdict=built states={} label={}", set.len(), set.label());
            Ok(ExitCode::SUCCESS)
        }
        BuildFamily::Stack { x, y, z, source, out, plan_out } => {
            let xu = source.instantiate(source.seed, x.saturating_sub(1), 0)?;
            let yu = source.instantiate(source.seed, y.saturating_sub(1), 1)?;
            let zu = source.instantiate(source.seed, z.saturating_sub(1), 2)?;
            let set = build_stack(x, y, z, &xu, &yu, &zu)?;
            emit_set(&set, out)?;
            if let Some(path) = plan_out {
                write_plan(&nonlocal_core::constructors::stack_plan(x, y, z, &xu, &yu, &zu)?, &path)?;
            }
            println!("verdict=built states={} label={}", set.len(), set.label());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn compose(pattern: ComposePattern) -> Result<ExitCode, Error> {
    let (plan, out, plan_out) = match pattern {
        ComposePattern::Star(args) => {
            let (plan, out, plan_out) = patterned(args, star_plan)?;
            (plan, out, plan_out)
        }
        ComposePattern::Chain(args) => {
            let (plan, out, plan_out) = patterned(args, chain_plan)?;
            (plan, out, plan_out)
        }
        ComposePattern::Tristar(args) => {
            let dims = PartyDims::new(args.dims)?;
            if args.seed_files.len() != 1 {
                return Err(Error::Input(
                    "the tri-star pattern repeats a single tripartite seed; pass one --seed-file"
                        .into(),
                ));
            }
            let seed = read_state_set(&args.seed_files[0])?;
            let plan =
                tristar_plan((dims.len() - 1) / 2, nonlocal_core::constructors::SeedSpec::Set(seed), &dims)?;
            (plan, args.out, args.plan_out)
        }
        ComposePattern::General { plan, out } => (read_plan(&plan)?, out, None),
    };
    let set = compose_general(&plan)?;
    emit_set(&set, out)?;
    if let Some(path) = plan_out {
        write_plan(&plan, &path)?;
    }
    println!("verdict=built states={} label={}", set.len(), set.label());
    Ok(ExitCode::SUCCESS)
}

fn patterned(
    args: ComposeArgs,
    make: impl Fn(&PartyDims, Vec<StateSet>) -> Result<CompositionPlan, Error>,
) -> Result<(CompositionPlan, Option<PathBuf>, Option<PathBuf>), Error> {
    let dims = PartyDims::new(args.dims)?;
    let seeds = args
        .seed_files
        .iter()
        .map(read_state_set)
        .collect::<Result<Vec<_>, _>>()?;
    Ok((make(&dims, seeds)?, args.out, args.plan_out))
}

fn salted(source: UnitarySource, seed: u64) -> UnitarySource {
    match source {
        UnitarySource::Random(s) => UnitarySource::Random(s.wrapping_add(seed)),
        other => other,
    }
}

fn emit_set(set: &StateSet, out: Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => write_state_set(set, &path),
        None => {
            println!("{}", set.to_json());
            Ok(())
        }
    }
}

fn finish_certificate(
    cert: Certificate,
    report: Option<PathBuf>,
    markdown: bool,
) -> Result<ExitCode, Error> {
    if let Some(path) = report {
        let text = if markdown { cert.to_markdown() } else { cert.to_json() };
        std::fs::write(&path, text)?;
    } else if markdown {
        print!("{}", cert.to_markdown());
    }
    println!("verdict={}", cert.verdict_name().to_lowercase());
    Ok(if cert.verdict.is_certified() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
