use std::path::PathBuf;
use std::process::ExitCode;

use carlitz_core::bounds::{collision_count, curve_affine_count};
use carlitz_core::poly::parse_codes;
use carlitz_core::rank::{carlitz_rank, default_cap, RankResult};
use carlitz_core::{CarlitzForm, Error as CoreError, Field, PermMap, Poly};
use carlitz_harness::{run_campaign, CampaignConfig, CampaignKind, FieldSpec, HarnessError, OutputFormat};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "carlitz", version, about = "Permutation polynomials in Carlitz form over small finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree.
    #[arg(long, default_value_t = 1)]
    r: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Order, modulus and primitive element of GF(p^r).
    Field(FieldArgs),
    /// Carlitz rank of a permutation given by its values or by a form.
    Crk {
        #[command(flatten)]
        field: FieldArgs,
        /// Images of 0, 1, ..., q-1 as element codes.
        #[arg(long, conflicts_with = "form", required_unless_present = "form")]
        perm: Option<String>,
        /// Form coefficients a0,a1,...,a_{n+1}.
        #[arg(long)]
        form: Option<String>,
        /// Largest rank searched (default q + 2).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Run a verification campaign.
    Verify(VerifyArgs),
    /// Collision statistics of a form against g.
    Mu {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        form: String,
        /// Coefficients of g, constant term first.
        #[arg(long)]
        g: String,
    },
    /// Point counts on the curve attached to c x^k.
    Curve {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        c: u64,
    },
    /// Reproduce the nine-element example for every generator.
    ExampleF9 {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// main, monomial, corollary, mu or curve.
    kind: String,
    /// JSON config; flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, requires = "r")]
    p: Option<u64>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    k_max: Option<u64>,
    /// Samples per cell, 0 for exhaustive.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
}

enum Failure {
    Counterexample,
    Usage(String),
    Internal(String),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Core(core) => core.into(),
            HarnessError::ConfigInvalid(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::BudgetExceeded { .. } => Failure::Internal(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Counterexample) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn field_of(args: FieldArgs) -> Result<Field, Failure> {
    Ok(Field::new(args.p, args.r)?)
}

fn json<T: serde::Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Field(args) => {
            let field = field_of(args)?;
            let modulus: Vec<String> = field.modulus().iter().map(u32::to_string).collect();
            println!("q: {}", field.order());
            println!("modulus: {}", modulus.join(","));
            println!("primitive: {}", field.primitive_element());
        }
        Command::Crk { field, perm, form, cap } => {
            let field = field_of(field)?;
            let map = match (perm, form) {
                (Some(perm), _) => PermMap::new(&field, parse_codes(&field, &perm)?)?,
                (None, Some(form)) => CarlitzForm::parse(&field, &form)?.expand(&field),
                (None, None) => return Err(Failure::Usage("one of --perm or --form is required".into())),
            };
            let cap = cap.unwrap_or_else(|| default_cap(&field));
            match carlitz_rank(&field, &map, cap)? {
                RankResult::Found { rank, witness } => {
                    println!("rank: {rank}");
                    println!("witness: {witness}");
                }
                RankResult::NotFoundWithinCap(cap) => println!("rank: none within cap {cap}"),
            }
        }
        Command::Verify(args) => return verify(args),
        Command::Mu { field, form, g } => {
            let field = field_of(field)?;
            let form = CarlitzForm::parse(&field, &form)?;
            let g = Poly::new(parse_codes(&field, &g)?);
            json(&collision_count(&field, &form, &g)?)?;
        }
        Command::Curve { field, k, b, c } => {
            let field = field_of(field)?;
            let (b, c) = (field.elem(b)?, field.elem(c)?);
            json(&curve_affine_count(&field, k, b, c)?)?;
        }
        Command::ExampleF9 { out, format } => {
            let mut cfg = CampaignConfig::new(CampaignKind::ExampleF9);
            cfg.out = out;
            cfg.format = format.parse()?;
            let report = run_campaign(&cfg)?;
            println!("zeta  form         rank  perm  +x^2  pass");
            for row in &report.example_rows {
                let rank = row.rank.map_or("-".to_string(), |r| r.to_string());
                println!(
                    "{:<5} {:<12} {:<5} {:<5} {:<5} {}",
                    row.zeta.to_string(),
                    row.form.to_string(),
                    rank,
                    row.is_permutation,
                    row.plus_x2_is_permutation,
                    row.passes
                );
            }
            println!("{}", report.summary());
            if !report.passed() {
                return Err(Failure::Counterexample);
            }
        }
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let kind: CampaignKind = args.kind.parse()?;
    if kind == CampaignKind::ExampleF9 {
        return Err(Failure::Usage("use the example-f9 subcommand".into()));
    }
    let mut cfg = match &args.config {
        Some(path) => {
            let cfg = CampaignConfig::load(path)?;
            if cfg.kind != kind {
                return Err(Failure::Usage(format!("config is for {} but {} was requested", cfg.kind, kind)));
            }
            cfg
        }
        None => CampaignConfig::new(kind),
    };
    if let (Some(p), Some(r)) = (args.p, args.r) {
        cfg.fields = vec![FieldSpec::new(p, r)];
    }
    if let Some(v) = args.n_max {
        cfg.n_max = v;
    }
    if let Some(v) = args.k_max {
        cfg.k_max = v;
    }
    if let Some(v) = args.budget {
        cfg.budget = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if let Some(v) = args.workers {
        cfg.workers = v;
    }
    if args.out.is_some() {
        cfg.out = args.out;
    }
    if let Some(f) = args.format {
        cfg.format = f.parse::<OutputFormat>()?;
    }
    let report = run_campaign(&cfg)?;
    if cfg.out.is_none() {
        print!("{}", report.render(cfg.format)?);
    }
    eprintln!("{}", report.summary());
    eprintln!("wall time: {:.3}s", report.wall_time.as_secs_f64());
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Counterexample)
    }
}
