use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "spherelab",
    version,
    about = "Lattice sphere counts, multilinear spherical averages and circle-method experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Directory for output files (optional; experiments default to `results`)
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Seed for random inputs
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker thread cap, 0 for one per core
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// TOML config file with one section per subcommand (optional)
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Directory caching representation tables by (dim, lambda_max) (optional)
    #[arg(long, value_name = "DIR")]
    pub table_cache: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print r_d(lambda), or N_l(lambda) = r_{l d}(lambda) with --arity
    Count(CountArgs),
    /// Enumerate the lattice points with |u|^2 = lambda
    Sphere(SphereArgs),
    /// Exact symbol sigma_hat_{lambda,0}(xi)
    SigmaHat(SigmaHatArgs),
    /// Major arcs |theta - a/q| <= 1/(8qN) and their disjointness
    Arcs(ArcsArgs),
    /// Normalized Gauss sum G(l, a, q)
    Gauss(GaussArgs),
    /// Weyl sum S_N(theta, xi), or its sup over xi
    Weyl(WeylArgs),
    /// l-linear spherical average T_lambda(f_1, ..., f_l)
    Average(AverageArgs),
    /// Truncated maximal operator over 1..=lambda-max
    Maximal(MaximalArgs),
    /// Exact symbol or a major-arc multiplier at one frequency
    Multiplier(MultiplierArgs),
    /// Scripted experiments with CSV, JSON and SVG reports
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Args, Debug)]
pub struct CountArgs {
    /// Lattice dimension d
    #[arg(short = 'd', long = "dim", visible_alias = "d", default_value_t = 3)]
    pub dim: usize,
    /// Squared radius lambda (integer)
    #[arg(long)]
    pub lambda: u64,
    /// Arity l; prints N_l(lambda) = r_{l d}(lambda) (optional)
    #[arg(long)]
    pub arity: Option<usize>,
    /// Also write the table r_{l d}(0..=lambda-max) to --out (optional)
    #[arg(long)]
    pub lambda_max: Option<u64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct SphereArgs {
    /// Lattice dimension d
    #[arg(short = 'd', long = "dim", visible_alias = "d", default_value_t = 3)]
    pub dim: usize,
    /// Squared radius lambda (integer, may be negative to probe the domain check)
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: i64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct SigmaHatArgs {
    /// Lattice dimension d
    #[arg(short = 'd', long = "dim", visible_alias = "d", default_value_t = 3)]
    pub dim: usize,
    /// Squared radius lambda (integer)
    #[arg(long)]
    pub lambda: u64,
    /// Frequency xi in T^d, comma-separated (cycles, not radians)
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub xi: Vec<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ArcsArgs {
    /// Largest denominator N; arcs have half-width 1/(8qN)
    #[arg(long = "N")]
    pub n: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct GaussArgs {
    /// Modulus q
    #[arg(long)]
    pub q: u64,
    /// Residue a, coprime to q
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub a: i64,
    /// Linear coefficients l_1, ..., l_d, comma-separated
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "0"
    )]
    pub l: Vec<i64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct WeylArgs {
    /// Length N; the sum runs over 0 <= u <= N
    #[arg(long = "N")]
    pub n: u64,
    /// Quadratic phase theta (cycles)
    #[arg(long, allow_hyphen_values = true)]
    pub theta: f64,
    /// Linear phase xi (cycles); without it the sup over xi is printed (optional)
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct AverageArgs {
    /// Lattice dimension d
    #[arg(short = 'd', long = "dim", visible_alias = "d", default_value_t = 3)]
    pub dim: usize,
    /// Squared radius lambda (integer)
    #[arg(long)]
    pub lambda: u64,
    /// Input functions, one per slot: `delta`, `const:<v>`, `box:<L>` or a CSV/JSON file
    #[arg(long, value_delimiter = ',', required = true)]
    pub input: Vec<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct MaximalArgs {
    /// Lattice dimension d
    #[arg(short = 'd', long = "dim", visible_alias = "d", default_value_t = 3)]
    pub dim: usize,
    /// Largest squared radius in the sup (integer)
    #[arg(long)]
    pub lambda_max: u64,
    /// Input functions, one per slot: `delta`, `const:<v>`, `box:<L>` or a CSV/JSON file
    #[arg(long, value_delimiter = ',', required = true)]
    pub input: Vec<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultiplierKind {
    /// Exact symbol sigma_hat_{lambda,0}
    Sigma,
    /// Main term M summed over q <= q-max
    M,
    /// A^{a/q}: truncated beta integral without cutoffs
    A,
    /// B^{a/q}: with the smooth cutoffs
    B,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Literal,
    Normalized,
}

#[derive(Args, Debug)]
pub struct MultiplierArgs {
    /// Squared radius lambda (integer)
    #[arg(long)]
    pub lambda: u64,
    /// Frequency xi in T^d, comma-separated (cycles); its length sets d
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub xi: Vec<f64>,
    /// Which symbol to evaluate
    #[arg(long, value_enum, default_value_t = MultiplierKind::M)]
    pub kind: MultiplierKind,
    /// Largest denominator in the main term
    #[arg(long, default_value_t = 1)]
    pub q_max: u64,
    /// Arc parameter N (optional; defaults to isqrt(lambda), at least q-max and q)
    #[arg(long = "N")]
    pub n: Option<u64>,
    /// Numerator a for --kind a|b
    #[arg(long, default_value_t = 1)]
    pub a: u64,
    /// Denominator q for --kind a|b
    #[arg(long, default_value_t = 1)]
    pub q: u64,
    /// Main-term normalization for --kind m
    #[arg(long, value_enum, default_value_t = Form::Literal)]
    pub form: Form,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Subcommand, Debug)]
pub enum Experiment {
    /// Growth of ||T*(chi_L, chi_L)||_r in the box side L
    Scaling(ScalingArgs),
    /// Partial sums of T*(delta_0, 1)^p along lambda = n|x|^2
    Sharpness(SharpnessArgs),
    /// Hoelder ratios over a grid of (p, q, r)
    Holder(HolderArgs),
    /// Minor-arc growth of sup_xi |S_N(theta, xi)|
    Weyl(WeylExperimentArgs),
    /// Decay of the normalized minor-arc integral
    ErrorDecay(ErrorDecayArgs),
    /// Exact symbol against the main term, layer by layer
    Multiplier(MultiplierExperimentArgs),
}

#[derive(Args, Debug)]
pub struct ScalingArgs {
    /// Lattice dimension d
    #[arg(short = 'd', long = "dim", visible_alias = "d", default_value_t = 3)]
    pub dim: usize,
    /// Box sides L, comma-separated (at least 4)
    #[arg(long, value_delimiter = ',', default_value = "2,4,8,16")]
    pub sizes: Vec<u64>,
    /// Exponent p of the first input norm (`inf` allowed)
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    /// Exponent q of the second input norm (`inf` allowed)
    #[arg(long = "q-exp", default_value_t = 2.0)]
    pub q_exp: f64,
    /// Exponent r of the output norm (`inf` allowed)
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct SharpnessArgs {
    /// Lattice dimension d (at least 3)
    #[arg(short = 'd', long = "dim", visible_alias = "d", default_value_t = 3)]
    pub dim: usize,
    /// Multiple n in lambda = n|x|^2
    #[arg(long, default_value_t = 1)]
    pub n: u64,
    /// Largest radius R of the partial sums
    #[arg(long, default_value_t = 60)]
    pub r_max: u64,
    /// Power p applied to each term
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyArg {
    /// Uniform random values on [0, L)^d, seeded by --seed
    Random,
    /// Box indicator of [0, L)^d
    Box,
    /// delta_0 and the constant 1
    DeltaConstant,
}

#[derive(Args, Debug)]
pub struct HolderArgs {
    /// Lattice dimension d
    #[arg(short = 'd', long = "dim", visible_alias = "d", default_value_t = 3)]
    pub dim: usize,
    /// Triples p,q,r separated by `;` (`inf` allowed)
    #[arg(long, default_value = "6,6,3.5;4,4,1;inf,inf,inf")]
    pub triples: String,
    /// Input family
    #[arg(long, value_enum, default_value_t = FamilyArg::Box)]
    pub family: FamilyArg,
    /// Size schedule L, comma-separated (at least 3)
    #[arg(long, value_delimiter = ',', default_value = "2,4,8,16")]
    pub sizes: Vec<u64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct WeylExperimentArgs {
    /// Values of N, comma-separated (at least 5)
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "32,64,128,256,512,1024,2048,4096"
    )]
    pub sizes: Vec<u64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ErrorDecayArgs {
    /// Lattice dimension d
    #[arg(short = 'd', long = "dim", visible_alias = "d", default_value_t = 3)]
    pub dim: usize,
    /// Values of N, comma-separated (each at most 128)
    #[arg(long, value_delimiter = ',', default_value = "8,16,32,64,128")]
    pub sizes: Vec<u64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct MultiplierExperimentArgs {
    /// Lattice dimension d
    #[arg(short = 'd', long = "dim", visible_alias = "d", default_value_t = 3)]
    pub dim: usize,
    /// Squared radii lambda, comma-separated
    #[arg(long, value_delimiter = ',', default_value = "50,101,200")]
    pub lambda: Vec<u64>,
    /// Largest denominator; clamped to isqrt(lambda)
    #[arg(long, default_value_t = 8)]
    pub q_max: u64,
    /// Grid steps k per axis; frequencies j/(2k) in [0, 1/2]^d
    #[arg(long, default_value_t = 4)]
    pub grid_steps: usize,
    #[command(flatten)]
    pub common: Common,
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Count(a) => &a.common,
            Command::Sphere(a) => &a.common,
            Command::SigmaHat(a) => &a.common,
            Command::Arcs(a) => &a.common,
            Command::Gauss(a) => &a.common,
            Command::Weyl(a) => &a.common,
            Command::Average(a) => &a.common,
            Command::Maximal(a) => &a.common,
            Command::Multiplier(a) => &a.common,
            Command::Experiment(e) => match e {
                Experiment::Scaling(a) => &a.common,
                Experiment::Sharpness(a) => &a.common,
                Experiment::Holder(a) => &a.common,
                Experiment::Weyl(a) => &a.common,
                Experiment::ErrorDecay(a) => &a.common,
                Experiment::Multiplier(a) => &a.common,
            },
        }
    }
}
