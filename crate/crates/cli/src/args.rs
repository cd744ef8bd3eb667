//! Command-line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};
use contpath_core::{HalfspaceRegion, Pattern, StepSet};

use crate::output::Format;
use crate::parse::{self, Coords, Intervals};

#[derive(Debug, Parser)]
#[command(
    name = "contpath",
    version,
    about = "Continuous binomial coefficients, Catalan volumes and lattice-path oracles"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Relative tolerance of every series stop rule.
    #[arg(long, global = true, env = "CONTPATH_TOL")]
    pub tol: Option<f64>,
    /// Hard cap on series terms.
    #[arg(long, global = true, default_value_t = 500)]
    pub max_terms: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Continuous binomial coefficient.
    #[command(subcommand)]
    Binom(BinomCmd),
    /// Continuous binomial distribution and the centered density.
    #[command(subcommand)]
    Dist(DistCmd),
    /// Λ-volumes and the continuous Catalan series.
    #[command(subcommand)]
    Catalan(CatalanCmd),
    /// Exact lattice path counts.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Polytope volume and integer-point oracles.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Special functions.
    #[command(subcommand)]
    Specfn(SpecfnCmd),
    /// Cross-check suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalMethod {
    Series,
    Bessel,
    /// Sum of component volumes over patterns.
    Oracle,
}

#[derive(Debug, Subcommand)]
pub enum BinomCmd {
    /// {x<s>}.
    Eval {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        s: f64,
        #[arg(long, value_enum, default_value_t = EvalMethod::Series)]
        method: EvalMethod,
    },
    /// ∫₀ˣ {x<s>} ds next to 2(eˣ−1).
    Integral {
        #[arg(long)]
        x: f64,
    },
    /// Finite-difference residual of the PDE.
    Pde {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
    },
    /// {(t+1)s<s>} from its (t, s) expansion.
    Expand {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 60)]
        order: usize,
    },
    /// Integer coefficient of tⁿsʲ/(n!j!) in the (t, s) expansion.
    Coeff {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        j: u64,
    },
    /// {2s<s>} from its own series.
    Midpoint {
        #[arg(long)]
        s: f64,
    },
    /// Directed path attached to a family of marked intervals in [0, x].
    Path {
        #[arg(long)]
        x: f64,
        /// Intervals `a:b` separated by commas.
        #[arg(long, value_parser = parse::intervals, default_value = "")]
        intervals: Intervals,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormMethod {
    /// Closed form at p = 1/2, quadrature otherwise.
    Auto,
    Quadrature,
    Series,
    Bessel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TestFn {
    Cos,
    One,
    Square,
}

#[derive(Debug, Subcommand)]
pub enum DistCmd {
    /// Centered density d_x on an even grid.
    Density {
        #[arg(long)]
        x: f64,
        /// Left end, default −x/2.
        #[arg(long, allow_negative_numbers = true)]
        from: Option<f64>,
        /// Right end, default x/2.
        #[arg(long, allow_negative_numbers = true)]
        to: Option<f64>,
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
    /// l-th moment of the continuous binomial distribution.
    Moments {
        #[arg(long)]
        x: f64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long)]
        l: usize,
    },
    /// Draws from d_x by rejection sampling.
    Sample {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Normalizer b_p(x).
    Normalizer {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, default_value_t = NormMethod::Auto)]
        method: NormMethod,
    },
    /// r-th moment of d_x.
    Centered {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        r: usize,
    },
    /// ∫ f·d_x along a decreasing sequence of x.
    Delta {
        #[arg(long, value_enum, default_value_t = TestFn::Cos)]
        f: TestFn,
        #[arg(long, value_delimiter = ',', default_value = "1,0.5,0.1,0.02")]
        xs: Vec<f64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalanCmd {
    /// C(x, y) truncated after Λ^{nmax}, with its majorant tail bound.
    Eval {
        #[arg(long)]
        x: f64,
        #[arg(long, default_value_t = 0.0)]
        y: f64,
        /// Default: smallest n whose majorant tail is below the tolerance.
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Taylor coefficients of C(2x) through x^{mmax}.
    Coeffs {
        #[arg(long)]
        mmax: usize,
    },
    /// Residual of the integral equation at (x, y).
    Residual {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
    },
    /// vol Λⁿ(x, y); `--exact` reads x and y as rationals like 7/2.
    Volume {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        exact: bool,
    },
    /// Polynomial vol Λⁿ in P = (x+y)/2, Q = (x−y)/2.
    Polynomial {
        #[arg(long)]
        n: usize,
        /// Build from a coefficient table of this size instead of the shared one.
        #[arg(long)]
        table: Option<usize>,
    },
    /// Nonzero entries of the coefficient table Iⁿ_{k,l}.
    Table {
        #[arg(long, default_value_t = 24)]
        n: usize,
        #[arg(long, default_value_t = 24)]
        m: usize,
    },
    /// Integer points of Λ-components of semilength n next to Narayana numbers.
    Anchor {
        #[arg(long)]
        n: usize,
    },
}

/// A path space given by steps, endpoints, time and an optional region.
#[derive(Debug, Args)]
pub struct PathArgs {
    /// `binomial`, `dyck`, or vectors like `1,0;0,1`.
    #[arg(long, value_parser = parse::steps, default_value = "binomial")]
    pub steps: StepSet,
    #[arg(long, value_parser = parse::point, allow_hyphen_values = true)]
    pub from: Coords,
    #[arg(long, value_parser = parse::point, allow_hyphen_values = true)]
    pub to: Coords,
    /// Number of steps.
    #[arg(long)]
    pub len: usize,
    /// `upper` or constraints like `0,1>=0;1,0>=-2`.
    #[arg(long, value_parser = parse::region, allow_hyphen_values = true)]
    pub region: Option<HalfspaceRegion>,
}

#[derive(Debug, Subcommand)]
pub enum LatticeCmd {
    /// Paths from --from to --to, optionally with a fixed pattern.
    Count {
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, value_parser = parse::pattern)]
        pattern: Option<Pattern>,
    },
    /// Path counts split by pattern.
    Decompose {
        #[command(flatten)]
        path: PathArgs,
    },
    /// All patterns of a given length over k labels.
    Patterns {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        len: usize,
    },
    /// Pattern of the path with the given step labels.
    PatternOf {
        #[arg(long, value_delimiter = ',')]
        labels: Vec<usize>,
    },
    /// Dyck paths of semilength n.
    Dyck {
        #[arg(long)]
        n: usize,
    },
    /// Dyck paths of semilength n by number of peaks, next to Narayana numbers.
    Narayana {
        #[arg(long)]
        n: usize,
    },
    /// Catalan number c_n from its closed form.
    Catalan {
        #[arg(long)]
        n: u64,
    },
    /// Binomial coefficient C(n, k).
    Binomial {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// Integer points with positive time coordinates in a component polytope.
    Interior {
        #[command(flatten)]
        poly: PolytopeArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolytopeKind {
    /// Γᶜ(s, u) for steps (1,0), (0,1).
    Binomial,
    /// Λⁿ(x, y).
    Catalan,
    /// Γᶜ_{p,q}(l) for any step set and region.
    Path,
}

#[derive(Debug, Args)]
pub struct PolytopeArgs {
    #[arg(long, value_enum)]
    pub kind: PolytopeKind,
    /// Pattern (binomial, path).
    #[arg(long, value_parser = parse::pattern)]
    pub pattern: Option<Pattern>,
    /// Horizontal time (binomial).
    #[arg(long)]
    pub s: Option<f64>,
    /// Vertical time (binomial).
    #[arg(long)]
    pub u: Option<f64>,
    /// Component index n (catalan).
    #[arg(long)]
    pub index: Option<usize>,
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long)]
    pub y: Option<f64>,
    #[arg(long, value_parser = parse::steps)]
    pub steps: Option<StepSet>,
    #[arg(long, value_parser = parse::point, allow_hyphen_values = true)]
    pub from: Option<Coords>,
    #[arg(long, value_parser = parse::point, allow_hyphen_values = true)]
    pub to: Option<Coords>,
    #[arg(long)]
    pub len: Option<usize>,
    #[arg(long, value_parser = parse::region, allow_hyphen_values = true)]
    pub region: Option<HalfspaceRegion>,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum OracleCmd {
    /// Monte Carlo volume of a component polytope.
    Volume {
        #[command(flatten)]
        poly: PolytopeArgs,
        #[arg(long, default_value_t = 1_000_000)]
        mc_samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact volume of one binomial component.
    Component {
        #[arg(long, value_parser = parse::pattern)]
        pattern: Pattern,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        u: f64,
    },
    /// Closed double series for the sum of component volumes.
    PatternSum {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        u: f64,
    },
    /// Integer points summed over all binomial components; equals C(s+u, s).
    Anchor {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        u: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BesselKind {
    I0,
    I1,
    /// I_{n+1/2}.
    Half,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HalfMethod {
    /// Recurrence for n ≤ z/4, series otherwise.
    Auto,
    Series,
    Recurrence,
    /// z^{−v} I_v(z).
    Scaled,
}

#[derive(Debug, Subcommand)]
pub enum SpecfnCmd {
    /// Modified Bessel functions of the first kind.
    Bessel {
        #[arg(long, value_enum)]
        kind: BesselKind,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long)]
        z: f64,
        #[arg(long, value_enum, default_value_t = HalfMethod::Auto)]
        method: HalfMethod,
    },
    /// Falling factorial (a)_n.
    Falling {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Run every cross-check and print a pass/fail table.
    All {
        /// Smaller grids and sample sizes.
        #[arg(long)]
        fast: bool,
    },
}
