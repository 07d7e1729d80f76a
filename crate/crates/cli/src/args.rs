use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "cubforge", version, about = "Exact cubature formulas, designs and Hilbert identities")]
pub struct Cli {
    /// Directory holding catalog data files (overrides CUBFORGE_DATA).
    #[arg(long, global = true)]
    pub data_dir: Option<PathBuf>,
    /// Print a JSON result object instead of the text report.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Block designs.
    #[command(subcommand)]
    Designs(DesignsCmd),
    /// Two-level orthogonal arrays.
    #[command(subcommand)]
    Oa(OaCmd),
    /// Cubature formulas.
    #[command(subcommand)]
    Cubature(CubatureCmd),
    /// Point elimination with designs and arrays.
    #[command(subcommand)]
    Victoir(VictoirCmd),
    /// Invariant designs of reflection groups.
    #[command(subcommand)]
    Reflect(ReflectCmd),
    /// Hilbert identities.
    #[command(subcommand)]
    Hilbert(HilbertCmd),
    /// Rebuild and check one named result.
    Repro(ReproArgs),
}

impl Command {
    pub fn name(&self) -> String {
        let (a, b) = match self {
            Command::Designs(c) => ("designs", c.name()),
            Command::Oa(c) => ("oa", c.name()),
            Command::Cubature(c) => ("cubature", c.name()),
            Command::Victoir(c) => ("victoir", c.name()),
            Command::Reflect(c) => ("reflect", c.name()),
            Command::Hilbert(c) => ("hilbert", c.name()),
            Command::Repro(r) => ("repro", r.target.as_str()),
        };
        format!("{a} {b}")
    }
}

#[derive(Debug, Subcommand)]
pub enum DesignsCmd {
    /// Check the t and lambda declared in a design file.
    Verify {
        file: PathBuf,
        /// Check this strength instead of the declared one.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Derived design at a point.
    Derive {
        file: PathBuf,
        #[arg(long)]
        point: usize,
    },
    /// Print a built-in design (sqs8, fano, inversive10, sym25).
    Catalog { name: String },
}

impl DesignsCmd {
    fn name(&self) -> &'static str {
        match self {
            DesignsCmd::Verify { .. } => "verify",
            DesignsCmd::Derive { .. } => "derive",
            DesignsCmd::Catalog { .. } => "catalog",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum OaCmd {
    /// Strength of an array file.
    Verify {
        file: PathBuf,
        #[arg(long)]
        strength: usize,
    },
    /// The full 2^l x l array.
    GenTrivial {
        #[arg(long)]
        l: usize,
    },
    /// Nordstrom-Robinson OA(256, 16, 2, 5).
    GenNr,
    /// Rows of the dual double-error-correcting BCH code of length 31.
    GenDualBch {
        /// Extend by the all-ones word so rows are closed under negation.
        #[arg(long)]
        symmetric: bool,
    },
}

impl OaCmd {
    fn name(&self) -> &'static str {
        match self {
            OaCmd::Verify { .. } => "verify",
            OaCmd::GenTrivial { .. } => "gen-trivial",
            OaCmd::GenNr => "gen-nr",
            OaCmd::GenDualBch { .. } => "gen-dual-bch",
        }
    }
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
pub struct Claim {
    #[arg(long)]
    pub index: Option<u32>,
    #[arg(long)]
    pub degree: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum CubatureCmd {
    /// Exact verification; defaults to the claim in the file header.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        claim: Claim,
    },
    /// Apply one domain transform and print the result.
    Transform {
        file: PathBuf,
        /// Gaussian index-q formula to the sphere.
        #[arg(long, value_name = "Q", group = "op")]
        to_sphere: Option<u32>,
        /// Keep one point of each antipodal pair.
        #[arg(long, group = "op")]
        halve: bool,
        /// Add the antipodal images.
        #[arg(long, group = "op")]
        double: bool,
        /// Sign-invariant Gaussian formula to the orthant (z ↦ z²).
        #[arg(long, group = "op")]
        square: bool,
        /// Orthant formula to the Gaussian (z ↦ ±√z).
        #[arg(long, group = "op")]
        sqrt: bool,
        /// One line per point.
        #[arg(long)]
        expand: bool,
    },
    /// Print a catalog formula.
    Gen {
        #[arg(long)]
        catalog: String,
        #[arg(long)]
        m: usize,
        /// Use the coefficients as printed in the source.
        #[arg(long)]
        printed: bool,
        #[arg(long)]
        expand: bool,
    },
}

impl CubatureCmd {
    fn name(&self) -> &'static str {
        match self {
            CubatureCmd::Verify { .. } => "verify",
            CubatureCmd::Transform { .. } => "transform",
            CubatureCmd::Gen { .. } => "gen",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum VictoirCmd {
    /// Run a named end-to-end pipeline.
    Run {
        #[arg(long)]
        pipeline: String,
        /// Print the final formula after the report.
        #[arg(long)]
        emit: bool,
    },
    /// Replace orbits of a formula file by design columns or array rows.
    Substitute {
        file: PathBuf,
        /// Orbit label(s); several with --design means a regular
        /// t-wise balanced substitution.
        #[arg(long, required = true, value_delimiter = ',')]
        slot: Vec<String>,
        #[arg(long, group = "with")]
        design: Option<PathBuf>,
        #[arg(long, group = "with")]
        oa: Option<PathBuf>,
        /// Design strength (design) or index/degree (array).
        #[arg(long)]
        t: usize,
        #[arg(long)]
        expand: bool,
    },
}

impl VictoirCmd {
    fn name(&self) -> &'static str {
        match self {
            VictoirCmd::Run { .. } => "run",
            VictoirCmd::Substitute { .. } => "substitute",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum ReflectCmd {
    /// Size of a corner-vector orbit (corners numbered from 1).
    Orbit {
        #[arg(long)]
        group: String,
        #[arg(long)]
        corner: usize,
    },
    /// Positivity certificate against designs of strength `degree`.
    Certify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        degree: u32,
    },
    /// Corner-orbit weights giving designs of strength t.
    Classify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        t: u32,
        /// Compare with the tabulated family (E8: the appendix data file).
        #[arg(long)]
        check_appendix: bool,
    },
    /// The u-vectors at the corners, compared with the tabulated ones.
    Uvectors {
        #[arg(long)]
        group: String,
    },
}

impl ReflectCmd {
    fn name(&self) -> &'static str {
        match self {
            ReflectCmd::Orbit { .. } => "orbit",
            ReflectCmd::Certify { .. } => "certify",
            ReflectCmd::Classify { .. } => "classify",
            ReflectCmd::Uvectors { .. } => "uvectors",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum HilbertCmd {
    /// Expand both sides of an identity file exactly.
    Verify { file: PathBuf },
    /// Identity of a sphere formula of index q.
    FromCubature {
        file: PathBuf,
        #[arg(long)]
        q: u32,
    },
    /// Print a catalog identity (sawa91, reznick, kurschak, ns, schur, hurwitz).
    Catalog {
        #[arg(long)]
        name: String,
        /// k for kurschak, a for ns.
        #[arg(long)]
        param: Option<String>,
        #[arg(long)]
        render: bool,
    },
    /// Show that no ±1 forms represent the norm power.
    Nopm1 {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 8)]
        q: u32,
    },
}

impl HilbertCmd {
    fn name(&self) -> &'static str {
        match self {
            HilbertCmd::Verify { .. } => "verify",
            HilbertCmd::FromCubature { .. } => "from-cubature",
            HilbertCmd::Catalog { .. } => "catalog",
            HilbertCmd::Nopm1 { .. } => "nopm1",
        }
    }
}

#[derive(Debug, Args)]
pub struct ReproArgs {
    /// Target name; `list` shows them all.
    pub target: String,
    #[arg(long)]
    pub group: Option<String>,
}
