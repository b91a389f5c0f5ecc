//! `twistbench`: validate, build and classify modular data from the command line.

mod cmds;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "twistbench", version, about = "Exact modular data workbench")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Validate a moddata-v1 JSON file.
    Verify { file: String },
    /// Enumerate metric groups on a finite abelian group.
    Metric(MetricArgs),
    /// Build or scan twisted doubles of abelian groups.
    Double(DoubleArgs),
    /// Classification tables for two or three twists.
    Classify(ClassifyArgs),
    /// SL(2, Z/n) representation tables and filters.
    Sl2(Sl2Args),
    /// Quadratic d-numbers and the appendix scans.
    Dnumber(DnumberArgs),
    /// Galois permutation of simples.
    Galois(GaloisArgs),
    /// Built-in fixtures: list, emit to a directory, or check a directory.
    Fixtures(FixturesArgs),
}

#[derive(Args, Debug)]
pub struct MetricArgs {
    /// Cyclic factors, e.g. `4,4`.
    #[arg(long)]
    pub group: String,
    /// Print every form rather than a count.
    #[arg(long)]
    pub list: bool,
    /// One representative per isometry class.
    #[arg(long)]
    pub classes: bool,
    /// Keep forms whose twist set is exactly this set (comma separated tokens).
    #[arg(long)]
    pub twists: Option<String>,
    /// With --twists: keep forms whose twists lie inside the set.
    #[arg(long)]
    pub subset: bool,
}

#[derive(Args, Debug)]
pub struct DoubleArgs {
    /// Cyclic factors; repeat for a scan over several groups.
    #[arg(long, required = true)]
    pub group: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub omega_index: u64,
    /// Write the data as moddata-v1 JSON.
    #[arg(long)]
    pub emit: Option<String>,
    /// Scan every ω class instead of building one double.
    #[arg(long)]
    pub scan: bool,
    #[arg(long, default_value_t = 3)]
    pub max_twists: usize,
    /// Also run the induction trace tests.
    #[arg(long)]
    pub traces: bool,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
    pub twists: u8,
    /// Print the row comparison with the published table; exit 1 on disagreement.
    #[arg(long)]
    pub compare: bool,
    /// Leave out the certificate bundle in text mode.
    #[arg(long)]
    pub no_certs: bool,
}

#[derive(Args, Debug)]
pub struct Sl2Args {
    /// CSV dump of irreducibles with at most this many t-eigenvalues.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub table: Option<u8>,
    /// Admissible sums covering a spectrum.
    #[arg(long)]
    pub admissible: Option<String>,
    /// Twist candidates for a spectrum.
    #[arg(long)]
    pub candidates: Option<String>,
    /// Regenerate the level-8 and level-12 twist tables and compare.
    #[arg(long)]
    pub regenerate: bool,
}

#[derive(Args, Debug)]
pub struct DnumberArgs {
    /// a + b√d with rational a, b (e.g. `5/2 1/2`).
    pub values: Vec<String>,
    #[arg(long, default_value_t = 5)]
    pub d: i64,
    /// d-numbers of Q(√5) with norm a power of 5 and conjugates in (LOW, HIGH).
    #[arg(long, num_args = 2, value_names = ["LOW", "HIGH"])]
    pub window: Option<Vec<String>>,
    /// The Q(√2) obstruction scan up to 2^A and ε^B.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub sqrt2_scan: Option<Vec<u32>>,
}

#[derive(Args, Debug)]
pub struct GaloisArgs {
    /// moddata-v1 file; or use --fixture.
    pub file: Option<String>,
    #[arg(long)]
    pub fixture: Option<String>,
    #[arg(long)]
    pub k: i64,
}

#[derive(Args, Debug)]
pub struct FixturesArgs {
    /// Write every fixture and a SHA256SUMS file into this directory.
    #[arg(long)]
    pub emit: Option<String>,
    /// Compare a directory written by --emit against the built-in data.
    #[arg(long)]
    pub check: Option<String>,
}

/// Outcome of a verb: text to print and whether every check passed.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

fn init_threads() {
    if let Some(n) = std::env::var("TWISTBENCH_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    let json = cli.json;
    let result = match cli.verb {
        Verb::Verify { file } => cmds::verify(&file, json),
        Verb::Metric(a) => cmds::metric(&a, json),
        Verb::Double(a) => cmds::double(&a, json),
        Verb::Classify(a) => cmds::classify(&a, json),
        Verb::Sl2(a) => cmds::sl2(&a, json),
        Verb::Dnumber(a) => cmds::dnumber(&a, json),
        Verb::Galois(a) => cmds::galois(&a, json),
        Verb::Fixtures(a) => cmds::fixtures(&a, json),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
