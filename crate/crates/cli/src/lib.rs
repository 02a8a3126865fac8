//! The `tropval` command line. [`run`] is the whole program minus process
//! exit, so tests can drive it in-process.

use clap::{Args, Parser, Subcommand};

mod commands;
mod input;
mod report;

pub use report::Report;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// An error that ends the run with `code`.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PRECONDITION,
            message: message.into(),
        }
    }
}

impl From<tropval_core::Error> for Failure {
    fn from(e: tropval_core::Error) -> Self {
        use tropval_core::Error::*;
        let code = match e {
            Syntax { .. }
            | DuplicateVariable { .. }
            | UnknownVariable { .. }
            | InvalidRational(_)
            | DimensionMismatch { .. } => EXIT_USAGE,
            _ => EXIT_PRECONDITION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "tropval", version, about = "Exact generalized and graded valuations")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

/// Sampling controls shared by every randomized check.
#[derive(Args, Debug, Clone)]
pub struct Sampling {
    /// Seed for all sampled pairs.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of sampled pairs.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Total degree bound of sampled polynomials.
    #[arg(long = "degree-bound", default_value_t = 4)]
    pub degree_bound: u32,
}

impl Sampling {
    fn config(&self) -> tropval_core::sample::SampleConfig {
        tropval_core::sample::SampleConfig {
            seed: self.seed,
            samples: self.samples,
            degree_bound: self.degree_bound,
        }
    }
}

/// A presentation file plus weights.
#[derive(Args, Debug, Clone)]
pub struct IdealArgs {
    /// Presentation file (`ring`, `ideal`, `weight`, `coeffval` lines).
    #[arg(long)]
    pub ideal: String,
    /// Weight vector such as "1 -1/2"; repeatable. Defaults to the file's weights.
    #[arg(long = "weight", allow_hyphen_values = true)]
    pub weights: Vec<String>,
    /// Coefficient valuation: "trivial" or "tadic <var> <rational>".
    #[arg(long)]
    pub coeffval: Option<String>,
}

/// A graded algebra plus a functional.
#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    /// Graded-algebra file or builtin (monoid:<vars>, cross, dual-numbers, sl2-rep-ring, sl2-branching).
    #[arg(long)]
    pub algebra: String,
    /// Truncation bound for builtins.
    #[arg(long, default_value_t = 4)]
    pub truncation: u32,
    /// Lexicographic functional: rows separated by ';', e.g. "0 0 0 1 0; 1 0 0 0 0".
    #[arg(long, allow_hyphen_values = true)]
    pub functional: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Prevariety,
    Certified,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Parse a presentation file and print it normalized.
    Parse(IdealArgs),
    /// Initial ideal of the presentation at a weight.
    Initial(IdealArgs),
    /// Whether a weight lies on the tropical variety.
    TropCheck {
        #[command(flatten)]
        input: IdealArgs,
        #[arg(long, value_enum, default_value_t = Mode::Certified)]
        mode: Mode,
    },
    /// Valuation axioms for the weight valuation v_w.
    ValCheck {
        #[command(flatten)]
        input: IdealArgs,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// v => w for two weights, or the cone sum for three (v, w1, w2).
    Cone {
        #[command(flatten)]
        input: IdealArgs,
        #[command(flatten)]
        sampling: Sampling,
        /// Search only; skip the exact free-algebra decision.
        #[arg(long)]
        sampled: bool,
        /// Also scale the first weight by this positive rational.
        #[arg(long)]
        scale: Option<String>,
    },
    /// v -> w: in_v(in_w(I)) = in_v(I).
    Arrow(IdealArgs),
    /// Partition the given weights by initial ideal.
    Facets(IdealArgs),
    /// Enumerate the Groebner fan on a grid.
    Fan {
        #[command(flatten)]
        input: IdealArgs,
        /// Grid box [-B, B]^n.
        #[arg(long = "box", default_value_t = 1)]
        bound: u32,
        /// Grid step 1/d.
        #[arg(long, default_value_t = 1)]
        denominator: u32,
    },
    /// Graded-valuation axioms (or, with --full, valuation axioms).
    GradedCheck {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        sampling: Sampling,
        /// Override such as "x*y + x*z = 1"; repeatable.
        #[arg(long = "override", allow_hyphen_values = true)]
        overrides: Vec<String>,
        /// Require multiplicativity on all pairs.
        #[arg(long)]
        full: bool,
    },
    /// Hypotheses and conclusion of the monoid theorem for a total order.
    MonoidCheck {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Associated graded algebra, printed in the graded-algebra format.
    Gr {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Also search for zero divisors a*b = 0 with deg a + deg b at most this bound.
        #[arg(long = "zero-divisors")]
        zero_divisors: Option<u32>,
    },
    /// SL2 builders and root functionals.
    Sl2lab {
        #[command(subcommand)]
        what: Sl2Verb,
    },
}

#[derive(Subcommand, Debug)]
enum Sl2Verb {
    /// The representation ring Q[x, y] up to degree N.
    RepRing { n: u32 },
    /// The triple-tensor branching algebra up to a + b + c <= N.
    Branching { n: u32 },
    /// Sign of a functional on (a, b, c, eta, lambda) along the positive root.
    Root {
        #[arg(long, allow_hyphen_values = true)]
        functional: String,
        /// Zero this row first.
        #[arg(long)]
        collapse: Option<usize>,
    },
}

/// Runs one command. `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            return if code == EXIT_PASS {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(cli.verb) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn dispatch(verb: Verb) -> Result<(i32, String), Failure> {
    use commands as c;
    match verb {
        Verb::Parse(i) => c::parse(&i),
        Verb::Initial(i) => c::initial(&i),
        Verb::TropCheck { input, mode } => c::trop_check(&input, mode),
        Verb::ValCheck { input, sampling } => c::val_check(&input, &sampling),
        Verb::Cone {
            input,
            sampling,
            sampled,
            scale,
        } => c::cone(&input, &sampling, !sampled, scale.as_deref()),
        Verb::Arrow(i) => c::arrow(&i),
        Verb::Facets(i) => c::facets(&i),
        Verb::Fan {
            input,
            bound,
            denominator,
        } => c::fan(&input, bound, denominator),
        Verb::GradedCheck {
            algebra,
            sampling,
            overrides,
            full,
        } => c::graded_check(&algebra, &sampling, &overrides, full),
        Verb::MonoidCheck { algebra, sampling } => c::monoid_check(&algebra, &sampling),
        Verb::Gr { algebra, zero_divisors } => c::gr(&algebra, zero_divisors),
        Verb::Sl2lab { what } => match what {
            Sl2Verb::RepRing { n } => c::sl2_build("rep-ring", n),
            Sl2Verb::Branching { n } => c::sl2_build("branching", n),
            Sl2Verb::Root { functional, collapse } => c::sl2_root(&functional, collapse),
        },
    }
}
