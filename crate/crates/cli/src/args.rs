use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Parser, Serialize, Debug, Clone)]
#[command(name = "ffdyn", version, about = "Arithmetic dynamics over F_q(t)")]
pub struct Cli {
    /// Characteristic.
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Extension degree of the constant field.
    #[arg(long, global = true, default_value_t = 1)]
    pub e: u32,
    /// Monic irreducible modulus in `g` over F_p, e.g. "g^2+1".
    #[arg(long, global = true)]
    pub modulus: Option<String>,
    /// JSON report path, `-` for stdout.
    #[arg(long, global = true, default_value = "-")]
    pub out: String,
    /// Optional CSV table (integral-scan, zsigmondy, period-census).
    #[arg(long, global = true)]
    pub csv: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Overrides every degree budget.
    #[arg(long, global = true, env = "FFDYN_BUDGET")]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Serialize, Debug, Clone)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Forward orbit with heights.
    Orbit {
        #[arg(long)]
        map: String,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Weil and canonical heights, preperiodicity.
    Heights {
        #[arg(long)]
        map: String,
        #[arg(long, value_delimiter = ',')]
        z: Vec<String>,
        #[arg(long, default_value = "1/64")]
        eps: String,
        /// Random points audited against the functoriality constant.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        sample_degree: usize,
    },
    /// Reduction types, critical points, Newton polygons and cross ratios.
    Reduction {
        #[arg(long)]
        map: String,
        #[arg(long, value_delimiter = ',')]
        place: Vec<String>,
        /// Polynomial in x whose Newton polygon is reported at each place.
        #[arg(long)]
        newton: Option<String>,
        /// Four points x1,x2,y1,y2.
        #[arg(long, value_delimiter = ',')]
        cross: Vec<String>,
    },
    /// Cross-ratio witness of non-isotriviality of preimage sets.
    Witness {
        #[arg(long)]
        map: String,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, value_delimiter = ',')]
        place: Vec<String>,
        /// Probe only this level.
        #[arg(long)]
        at: Option<usize>,
    },
    /// S-integrality of orbit points relative to beta.
    IntegralScan {
        #[arg(long)]
        map: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, value_delimiter = ',', default_value = "inf")]
        s: Vec<String>,
        #[arg(long = "N", default_value_t = 10)]
        bound: usize,
    },
    /// Primitive divisors of f^n(alpha) - beta.
    Zsigmondy {
        #[arg(long)]
        map: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, value_delimiter = ',')]
        ell: Vec<u64>,
        #[arg(long = "N", default_value_t = 10)]
        bound: usize,
    },
    #[command(subcommand)]
    Curve(CurveCommand),
    #[command(subcommand)]
    Arboreal(ArborealCommand),
    /// Residue orbit shapes at small places.
    PeriodCensus {
        #[arg(long)]
        map: String,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 2)]
        max_deg: usize,
    },
}

#[derive(Subcommand, Serialize, Debug, Clone)]
#[serde(rename_all = "kebab-case")]
pub enum CurveCommand {
    Genus(CurveArgs),
    /// Non-isotriviality from a witness for the roots of F.
    Verdict {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        map: String,
        #[arg(long)]
        beta: String,
        /// Preimage level whose roots are the roots of F.
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        place: Vec<String>,
    },
    RamifiedSum {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_delimiter = ',')]
        a: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "inf")]
        s: Vec<String>,
    },
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct CurveArgs {
    #[arg(long)]
    pub ell: u64,
    /// Squarefree polynomial in x.
    #[arg(long = "F")]
    pub f: String,
}

#[derive(Subcommand, Serialize, Debug, Clone)]
#[serde(rename_all = "kebab-case")]
pub enum ArborealCommand {
    /// Places ramifying first at each level.
    Zram {
        #[arg(long)]
        map: String,
        #[arg(long)]
        beta: String,
        #[arg(long = "N", default_value_t = 3)]
        bound: usize,
        #[arg(long, default_value_t = 2)]
        ell: u64,
    },
    /// Degrees along the preimage tower.
    Tower {
        #[arg(long)]
        map: String,
        #[arg(long)]
        beta: String,
        #[arg(long = "N", default_value_t = 3)]
        bound: usize,
    },
    /// Places meeting the finite-index conditions.
    Finindex {
        #[arg(long)]
        map: String,
        #[arg(long, value_delimiter = ',')]
        gamma: Vec<String>,
        #[arg(long)]
        n: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Orbit { .. } => "orbit",
            Command::Heights { .. } => "heights",
            Command::Reduction { .. } => "reduction",
            Command::Witness { .. } => "witness",
            Command::IntegralScan { .. } => "integral-scan",
            Command::Zsigmondy { .. } => "zsigmondy",
            Command::Curve(CurveCommand::Genus(_)) => "curve genus",
            Command::Curve(CurveCommand::Verdict { .. }) => "curve verdict",
            Command::Curve(CurveCommand::RamifiedSum { .. }) => "curve ramified-sum",
            Command::Arboreal(ArborealCommand::Zram { .. }) => "arboreal zram",
            Command::Arboreal(ArborealCommand::Tower { .. }) => "arboreal tower",
            Command::Arboreal(ArborealCommand::Finindex { .. }) => "arboreal finindex",
            Command::PeriodCensus { .. } => "period-census",
        }
    }
}
