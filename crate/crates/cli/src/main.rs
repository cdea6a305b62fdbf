mod args;
mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::args::CodeSpec;
use crate::report::{CliError, RunReport};

#[derive(Parser, Debug)]
#[command(name = "rankmetric", version, about = "MRD codes over F_{q^{2n}}: construction, distance, duality, nuclei, semifields, equivalence")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Characteristic p.
    #[arg(long, global = true, default_value_t = 3)]
    pub p: u32,
    /// q = p^e.
    #[arg(long, global = true, default_value_t = 1)]
    pub e: u32,
    /// Half degree: the codes live in F_{q^{2n}}.
    #[arg(long, global = true, default_value_t = 2)]
    pub n: u32,
    /// Defining polynomial over F_p, coefficients constant term first
    /// (default: smallest primitive polynomial).
    #[arg(long, global = true, value_delimiter = ',')]
    pub poly: Option<Vec<u32>>,

    #[arg(long, global = true, value_enum, ignore_case = true, default_value_t = FamilyArg::D)]
    pub family: FamilyArg,
    #[arg(long, global = true)]
    pub k: Option<u32>,
    #[arg(long, global = true, default_value_t = 1)]
    pub s: u32,
    /// Step of the second code in `equiv` (defaults to --s).
    #[arg(long, global = true)]
    pub t: Option<u32>,
    #[arg(long, global = true, default_value = "auto")]
    pub gamma: String,
    /// Parameter of the second code in `equiv` (defaults to --gamma).
    #[arg(long, global = true)]
    pub theta: Option<String>,
    #[arg(long, global = true, default_value = "w")]
    pub eta: String,
    #[arg(long, global = true, default_value_t = 1)]
    pub h: u32,
    /// Code descriptor overriding the family flags: G:k:s, H:k:s:eta:h or D:k:s:gamma.
    #[arg(long, global = true)]
    pub code: Option<CodeSpec>,

    #[arg(long, global = true, value_enum, default_value_t = SideArg::Right)]
    pub side: SideArg,
    #[arg(long, global = true, value_enum, default_value_t = ShapeArg::All)]
    pub shape: ShapeArg,
    /// Enumeration cap (overrides RANKMETRIC_BUDGET).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long, global = true)]
    pub json: Option<String>,
    /// Re-run the brute-force oracle and require agreement.
    #[arg(long, global = true)]
    pub oracle: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Tower parameters and the default gamma.
    Field,
    /// Build a code and list its generators.
    Construct,
    /// Exact minimum rank distance (sampled bound beyond the budget with --samples).
    Mindist {
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// MRD certification.
    Mrd,
    /// Delsarte dual.
    Dual,
    /// Adjoint code.
    Adjoint,
    /// Middle or right nucleus.
    Nucleus,
    /// Spread set of the Hughes-Kleinfeld semifield.
    Spreadset,
    /// Hughes-Kleinfeld multiplication: zero divisors and nuclei.
    Hk,
    /// Decide equivalence of two codes.
    Equiv {
        #[arg(long)]
        left: Option<CodeSpec>,
        #[arg(long)]
        right: Option<CodeSpec>,
    },
    /// Self-equivalences of a code.
    Auto,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    G,
    H,
    D,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Middle,
    Right,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShapeArg {
    Monomial,
    Binomial,
    All,
}

impl Cli {
    pub fn budget(&self) -> Result<u64, CliError> {
        if let Some(b) = self.budget {
            return Ok(b);
        }
        match std::env::var("RANKMETRIC_BUDGET") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("RANKMETRIC_BUDGET='{v}' is not an integer"))),
            Err(_) => Ok(rankmetric::DEFAULT_BUDGET),
        }
    }

    /// The code described by --code, or by the family flags.
    pub fn code_spec(&self) -> Result<CodeSpec, CliError> {
        if let Some(c) = &self.code {
            return Ok(c.clone());
        }
        let k = self.k.ok_or_else(|| CliError::Usage("--k is required".into()))?;
        Ok(match self.family {
            FamilyArg::G => CodeSpec::Gabidulin { k, s: self.s },
            FamilyArg::H => CodeSpec::Twisted {
                k,
                s: self.s,
                eta: self.eta.clone(),
                h: self.h,
            },
            FamilyArg::D => CodeSpec::D {
                k,
                s: self.s,
                gamma: self.gamma.clone(),
            },
        })
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    let result = std::panic::catch_unwind(|| commands::run(&cli));
    let outcome = match result {
        Ok(r) => r,
        Err(_) => Err(CliError::Internal("unexpected panic".into())),
    };
    match outcome {
        Ok(out) => {
            let report = RunReport::new(argv, out, start.elapsed());
            if let Err(e) = report.emit(cli.json.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
