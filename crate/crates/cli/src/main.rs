//! `smoothsum`: command-line front end for the smoothsum library.
//!
//! Every subcommand prints a single JSON object on stdout (`--format text`
//! and, for tabular outputs, `--format csv` are also available) and echoes
//! the seed it ran under, so any stochastic run can be replayed exactly.
//! Exit codes: 0 success, 1 computation error (with a structured error
//! object on stdout), 2 usage error.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use smoothsum::Error;

mod cmd_keygen;
mod cmd_owf;
mod cmd_partition;
mod cmd_prime;
mod cmd_repr;
mod cmd_smooth;
mod out;

use out::Output;

#[derive(Parser)]
#[command(name = "smoothsum", version, about = "Smooth-number arithmetic toolbox")]
struct Cli {
    /// Seed for stochastic subcommands; defaults to 0 and is echoed on
    /// stderr and in the output
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output format (csv is available for tabular subcommands only)
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    group: Group,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Group {
    /// Enumerate and measure smooth numbers
    Smooth {
        #[command(subcommand)]
        cmd: SmoothCmd,
    },
    /// Count partitions into distinct 2-integers
    Partition {
        #[command(subcommand)]
        cmd: PartitionCmd,
    },
    /// Write integers as sums of few smooth numbers
    Repr {
        #[command(subcommand)]
        cmd: ReprCmd,
    },
    /// Primality screens and pseudoprime scans
    Prime {
        #[command(subcommand)]
        cmd: PrimeCmd,
    },
    /// Smooth-share sums as prime candidates
    Keygen {
        #[command(subcommand)]
        cmd: KeygenCmd,
    },
    /// The sum-of-two-smooth-numbers puzzle
    Owf {
        #[command(subcommand)]
        cmd: OwfCmd,
    },
}

#[derive(Subcommand)]
enum SmoothCmd {
    /// List every smooth number up to the limit
    Enum {
        /// Basis size: the first s primes
        #[arg(long)]
        s: usize,
        #[arg(long)]
        limit: BigUint,
    },
    /// Exact count up to the limit, next to the analytic approximation
    Count {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        limit: BigUint,
    },
    /// Gaps between consecutive smooth numbers up to the limit
    Gaps {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        limit: BigUint,
    },
}

#[derive(Subcommand)]
enum PartitionCmd {
    /// p(n) by the recursion
    Count {
        #[arg(long)]
        n: u64,
    },
    /// p(n) by brute-force subset sum (small n only)
    Oracle {
        #[arg(long)]
        n: u64,
    },
    /// Second-order estimate of ln p(n)
    Estimate {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand)]
enum ReprCmd {
    /// Largest-fitting-smooth-number decomposition
    Greedy {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: BigUint,
    },
    /// Fewest smooth terms summing to n, up to a term budget
    Min {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: BigUint,
        /// Largest term count to try
        #[arg(long, default_value_t = 4)]
        kmax: usize,
    },
    /// Smallest value not expressible with the given number of terms
    Unrepresentable {
        #[arg(long)]
        s: usize,
        /// Search limit (exclusive upper bound on the scan)
        #[arg(long)]
        n: u64,
        /// Term budget being tested
        #[arg(long, default_value_t = 2)]
        kmax: usize,
    },
    /// Split n = a + b with both parts smooth under a small prime bound
    Antigoldbach {
        #[arg(long)]
        n: u64,
    },
    /// Greedy term-count statistics over random fixed-size targets
    Sparsity {
        #[arg(long)]
        s: usize,
        /// Bit size of the sampled targets
        #[arg(long)]
        bits: u32,
        #[arg(long, default_value_t = 100)]
        samples: u64,
    },
}

#[derive(Subcommand)]
enum PrimeCmd {
    /// Trial division, Miller-Rabin, and optionally the Fibonacci screen
    Test {
        #[arg(long)]
        n: BigUint,
        /// Miller-Rabin rounds
        #[arg(long, default_value_t = 20)]
        rounds: u32,
        /// Skip the trial-division stage
        #[arg(long)]
        no_trial_division: bool,
        /// Also require the Fibonacci congruence
        #[arg(long)]
        fib: bool,
    },
    /// The Fibonacci screen alone: F(n^2 - 1) = 0 (mod n)
    Fib {
        #[arg(long)]
        n: BigUint,
    },
    /// Exhaustive Fermat and Fibonacci pseudoprime scan below a limit
    PseudoprimeScan {
        /// Scan limit (exclusive)
        #[arg(long)]
        n: u64,
        /// Fermat base
        #[arg(long, default_value_t = 2)]
        base: u64,
    },
}

#[derive(Subcommand)]
enum KeygenCmd {
    /// Draw one share pair and report its sum
    Pair {
        /// Basis size: the first s primes (must be even)
        #[arg(long, default_value_t = 100)]
        s: usize,
        #[arg(long, default_value_t = 1)]
        emin: u32,
        #[arg(long, default_value_t = 2)]
        emax: u32,
    },
    /// Draw k shares and report their sum
    Shares {
        #[arg(long, default_value_t = 100)]
        s: usize,
        #[arg(long, default_value_t = 1)]
        emin: u32,
        #[arg(long, default_value_t = 2)]
        emax: u32,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Measure the prime rate of share sums over many trials
    Stats {
        #[arg(long, default_value_t = 100)]
        s: usize,
        #[arg(long, default_value_t = 1)]
        emin: u32,
        #[arg(long, default_value_t = 2)]
        emax: u32,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 5000)]
        trials: u64,
    },
    /// Prime-rate table over exponent ranges (1,2) through (1,5)
    Table1 {
        #[arg(long, default_value_t = 100)]
        s: usize,
        #[arg(long, default_value_t = 5000)]
        trials: u64,
    },
    /// Expected-exponentiation table derived from the reference prime rates
    Table2,
    /// Time a modular exponentiation against a small-prime division
    Bench {
        /// Operand size (512, 1024, or 2048)
        #[arg(long, default_value_t = 512)]
        bits: u32,
        #[arg(long, default_value_t = 16)]
        iters: u32,
    },
}

#[derive(Subcommand)]
enum OwfCmd {
    /// Generate a challenge and its witness
    Forward {
        /// Target bit size of each summand
        #[arg(long)]
        bits: u64,
        /// Smoothness bound (default: largest prime <= bits^2)
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Check a claimed witness against a challenge
    Verify {
        #[arg(long)]
        n: BigUint,
        #[arg(long)]
        a: BigUint,
        #[arg(long)]
        b: BigUint,
        /// Smoothness bound (default: largest prime <= (log2 n)^2)
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Invert a challenge by enumerating smooth candidates
    Solve {
        #[arg(long)]
        n: BigUint,
        /// Smoothness bound (default: largest prime <= (log2 n)^2)
        #[arg(long)]
        bound: Option<u64>,
        /// Candidate budget; exceeding it is an error, not a miss
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
}

fn command_name(group: &Group) -> String {
    let (head, tail) = match group {
        Group::Smooth { cmd } => (
            "smooth",
            match cmd {
                SmoothCmd::Enum { .. } => "enum",
                SmoothCmd::Count { .. } => "count",
                SmoothCmd::Gaps { .. } => "gaps",
            },
        ),
        Group::Partition { cmd } => (
            "partition",
            match cmd {
                PartitionCmd::Count { .. } => "count",
                PartitionCmd::Oracle { .. } => "oracle",
                PartitionCmd::Estimate { .. } => "estimate",
            },
        ),
        Group::Repr { cmd } => (
            "repr",
            match cmd {
                ReprCmd::Greedy { .. } => "greedy",
                ReprCmd::Min { .. } => "min",
                ReprCmd::Unrepresentable { .. } => "unrepresentable",
                ReprCmd::Antigoldbach { .. } => "antigoldbach",
                ReprCmd::Sparsity { .. } => "sparsity",
            },
        ),
        Group::Prime { cmd } => (
            "prime",
            match cmd {
                PrimeCmd::Test { .. } => "test",
                PrimeCmd::Fib { .. } => "fib",
                PrimeCmd::PseudoprimeScan { .. } => "pseudoprime-scan",
            },
        ),
        Group::Keygen { cmd } => (
            "keygen",
            match cmd {
                KeygenCmd::Pair { .. } => "pair",
                KeygenCmd::Shares { .. } => "shares",
                KeygenCmd::Stats { .. } => "stats",
                KeygenCmd::Table1 { .. } => "table1",
                KeygenCmd::Table2 => "table2",
                KeygenCmd::Bench { .. } => "bench",
            },
        ),
        Group::Owf { cmd } => (
            "owf",
            match cmd {
                OwfCmd::Forward { .. } => "forward",
                OwfCmd::Verify { .. } => "verify",
                OwfCmd::Solve { .. } => "solve",
            },
        ),
    };
    format!("{head} {tail}")
}

fn run(group: Group, seed: u64) -> smoothsum::Result<Output> {
    match group {
        Group::Smooth { cmd } => match cmd {
            SmoothCmd::Enum { s, limit } => cmd_smooth::enumerate(s, &limit),
            SmoothCmd::Count { s, limit } => cmd_smooth::count(s, &limit),
            SmoothCmd::Gaps { s, limit } => cmd_smooth::gaps(s, &limit),
        },
        Group::Partition { cmd } => match cmd {
            PartitionCmd::Count { n } => cmd_partition::count(n),
            PartitionCmd::Oracle { n } => cmd_partition::oracle(n),
            PartitionCmd::Estimate { n } => cmd_partition::estimate(n),
        },
        Group::Repr { cmd } => match cmd {
            ReprCmd::Greedy { s, n } => cmd_repr::greedy(s, &n),
            ReprCmd::Min { s, n, kmax } => cmd_repr::min(s, &n, kmax),
            ReprCmd::Unrepresentable { s, n, kmax } => cmd_repr::unrepresentable(s, n, kmax),
            ReprCmd::Antigoldbach { n } => cmd_repr::antigoldbach(n),
            ReprCmd::Sparsity { s, bits, samples } => cmd_repr::sparsity(s, bits, samples, seed),
        },
        Group::Prime { cmd } => match cmd {
            PrimeCmd::Test { n, rounds, no_trial_division, fib } => {
                cmd_prime::test(&n, rounds, no_trial_division, fib, seed)
            }
            PrimeCmd::Fib { n } => cmd_prime::fib(&n),
            PrimeCmd::PseudoprimeScan { n, base } => cmd_prime::pseudoprime_scan(n, base),
        },
        Group::Keygen { cmd } => match cmd {
            KeygenCmd::Pair { s, emin, emax } => cmd_keygen::pair(s, emin, emax, seed),
            KeygenCmd::Shares { s, emin, emax, k } => cmd_keygen::shares(s, emin, emax, k, seed),
            KeygenCmd::Stats { s, emin, emax, k, trials } => {
                cmd_keygen::stats(s, emin, emax, k, trials, seed)
            }
            KeygenCmd::Table1 { s, trials } => cmd_keygen::table1(s, trials, seed),
            KeygenCmd::Table2 => cmd_keygen::table2(),
            KeygenCmd::Bench { bits, iters } => cmd_keygen::bench(bits, iters, seed),
        },
        Group::Owf { cmd } => match cmd {
            OwfCmd::Forward { bits, bound } => cmd_owf::forward(bits, bound, seed),
            OwfCmd::Verify { n, a, b, bound } => cmd_owf::verify(n, a, b, bound),
            OwfCmd::Solve { n, bound, budget } => cmd_owf::solve(n, bound, budget),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed.unwrap_or(0);
    match cli.seed {
        None => eprintln!("seed: 0 (default; pass --seed <n> to vary)"),
        Some(s) => eprintln!("seed: {s}"),
    }
    let command = command_name(&cli.group);
    match run(cli.group, seed) {
        Ok(output) => match out::render(&command, seed, output, cli.format) {
            Ok(rendered) => {
                print!("{rendered}");
                ExitCode::SUCCESS
            }
            Err(usage) => {
                eprintln!("{usage}");
                ExitCode::from(2)
            }
        },
        Err(err) => {
            print!("{}", out::render_error(&command, &err));
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::InvalidArgument(_) => "invalid-argument",
        Error::ExcludedInput(_) => "excluded-input",
        Error::ResourceLimit(_) => "resource-limit",
        Error::BudgetExceeded(_) => "budget-exceeded",
        Error::ScheduleExhausted { .. } => "schedule-exhausted",
    }
}
