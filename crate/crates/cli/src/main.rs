use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use polydefect::commands::{self, IdentityRanges, Internal, Suite, SurveyFamily};
use polydefect::fuzz::FuzzKind;

/// Exact lattice-polytope invariants and the codegree criterion for dual
/// defect.
#[derive(Parser)]
#[command(name = "polydefect", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for randomized sweeps.
    #[arg(long, global = true, env = "POLYDEFECT_THREADS", default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the full invariant report for a polytope file.
    Info {
        file: PathBuf,
        /// Also search for lattice-width-one directions up to this radius.
        #[arg(long)]
        radius: Option<u32>,
    },
    /// Build a polytope from a construction expression and write its file.
    Construct {
        /// e.g. "product(pyramid(dilate(2,simplex(2))),cube(1,2))"
        spec: String,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the exhaustive binomial-identity sweeps.
    Identities {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Bound for a and b in the convolution sweep.
        #[arg(long, default_value_t = 20)]
        conv_max: i64,
        /// Bound for n in the alternating-sum sweep.
        #[arg(long, default_value_t = 12)]
        n_max: i64,
        /// Bound for a in the certificate sweep.
        #[arg(long, default_value_t = 6)]
        cert_a_max: i64,
        /// Bound for j in the certificate sweep.
        #[arg(long, default_value_t = 10)]
        cert_j_max: i64,
        /// Bound for a in the recurrence sweep.
        #[arg(long, default_value_t = 5)]
        rec_a_max: i64,
        /// Bound for j in the recurrence sweep.
        #[arg(long, default_value_t = 12)]
        rec_j_max: i64,
        /// Evaluate the certificate at one point "a,j,k,i" instead of sweeping.
        #[arg(long)]
        probe: Option<String>,
    },
    /// Tabulate invariants over a parametric family.
    Survey {
        #[command(subcommand)]
        family: FamilyArg,
    },
    /// Check the library invariants on seeded random instances.
    Fuzz {
        #[arg(long, value_enum, default_value_t = KindArg::Simplex)]
        kind: KindArg,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Coordinate bound (simplex) or dilation bound (simple).
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Convolution,
    AlternatingSum,
    Certificate,
    Recurrences,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Convolution => Suite::Convolution,
            SuiteArg::AlternatingSum => Suite::AlternatingSum,
            SuiteArg::Certificate => Suite::Certificate,
            SuiteArg::Recurrences => Suite::Recurrences,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand)]
enum FamilyArg {
    /// Products of two unimodular simplices S_k1 x S_k2.
    Segre {
        #[arg(long, default_value_t = 3)]
        k1_max: usize,
        #[arg(long, default_value_t = 3)]
        k2_max: usize,
    },
    /// Products of dilated unimodular simplices d*S_k.
    DilatedSimplex {
        #[arg(long, default_value_t = 1)]
        factors: usize,
        #[arg(long, default_value_t = 4)]
        d_max: u32,
        #[arg(long, default_value_t = 6)]
        k_max: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Simplex,
    Simple,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Info { ref file, radius } => commands::cmd_info(file, cli.json, radius),
        Cmd::Construct { ref spec, ref out } => commands::cmd_construct(spec, out.as_ref()),
        Cmd::Identities {
            suite,
            conv_max,
            n_max,
            cert_a_max,
            cert_j_max,
            rec_a_max,
            rec_j_max,
            ref probe,
        } => commands::cmd_identities(
            suite.into(),
            IdentityRanges {
                conv_max,
                n_max,
                cert_a_max,
                cert_j_max,
                rec_a_max,
                rec_j_max,
            },
            probe.as_deref(),
            cli.json,
        ),
        Cmd::Survey { family } => {
            let family = match family {
                FamilyArg::Segre { k1_max, k2_max } => SurveyFamily::Segre { k1_max, k2_max },
                FamilyArg::DilatedSimplex { factors, d_max, k_max } => {
                    SurveyFamily::DilatedSimplex { factors, d_max, k_max }
                }
            };
            commands::cmd_survey(family, cli.json)
        }
        Cmd::Fuzz { kind, dim, bound, count, seed } => {
            let kind = match kind {
                KindArg::Simplex => FuzzKind::Simplex,
                KindArg::Simple => FuzzKind::Simple,
            };
            commands::cmd_fuzz(kind, dim, bound, count, seed, cli.threads, cli.json)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<Internal>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
