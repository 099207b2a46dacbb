//! Command-line front end.
//!
//! Every command expands its flags into a grid of independent cells, runs the
//! cells on a worker pool and writes the rows in grid order, so output does
//! not depend on the worker count. Exit codes: 0 on success, 1 when an
//! unconditional bound (or an exact identity) fails, 2 on usage errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::bounds::{
    self, check_exp_sum, check_os_total, empirical_delta_prime, fit_epsilon_from_table, lemma31_from_parts, open_from_table,
    thm11_from_table, zhu_wan_from_table, BoundParams, BoundReport, LogBase,
};
use crate::combinatorics::{box_identity_check, cycle_index_identity, sieve_identity_check};
use crate::counters::{count_all, count_newton, decomposition_audit, total_count, Algorithm, ValuedDomain};
use crate::error::{Error, Result};
use crate::field::{character_profile, PowerResidueStructure, PrimeModulus};
use crate::real::DEFAULT_BITS;
use crate::report::{self, CountSource, Format, IdentityParams, PhiRow, Row};
use crate::waring::{gamma_distinct, gamma_ordinary, gamma_ordinary_nonzero, waring_bound_suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest modulus for which `--all-sets` enumerates every subset.
pub const ALL_SETS_MAX_P: u64 = 23;

#[derive(Parser, Debug)]
#[command(name = "waring-sieve", version, about = "Exact subset-sum counts of m-th powers modulo a prime")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// k-subset counts N*_m(k, b) or N(k, b, D) for an explicit set
    Count {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        count: CountOpts,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Counts summed over every subset size
    Total {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Largest nontrivial additive character sum over a set or subgroup
    Phi {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Evaluate an explicit bound against exact counts
    Check {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        check: CheckOpts,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Ordinary and distinct Waring numbers
    Waring {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        waring: WaringOpts,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact combinatorial identities
    Identity {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        identity: IdentityOpts,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare the subgroup lifting expansion with direct counts
    Audit {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run any grid command over a parameter grid; failing cells become skipped rows
    Sweep {
        #[arg(long = "command", value_enum)]
        target: SweepTarget,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        count: CountOpts,
        #[command(flatten)]
        check: CheckOpts,
        #[command(flatten)]
        waring: WaringOpts,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct GridArgs {
    /// Primes, comma separated
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<u64>,
    /// Every prime in an inclusive range A..B
    #[arg(long)]
    pub p_range: Option<String>,
    /// Exponents, comma separated
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<u64>,
    /// Every divisor of p - 1
    #[arg(long)]
    pub m_all_divisors: bool,
    /// Subset sizes, comma separated
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    /// Inclusive range A..B of subset sizes
    #[arg(long)]
    pub k_range: Option<String>,
    /// Targets, comma separated
    #[arg(long, value_delimiter = ',')]
    pub b: Vec<u64>,
    /// Every target (the default when --b is absent)
    #[arg(long)]
    pub all_b: bool,
    /// Explicit domain: "1,2,3" or with multiplicities "1:2,4:1"
    #[arg(long)]
    pub set: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "jsonl")]
    pub format: FormatArg,
    /// Write to a file instead of stdout
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// Worker threads; defaults to the available parallelism
    #[arg(long, env = "WARING_SIEVE_JOBS")]
    pub jobs: Option<usize>,
    /// Seed for random domains and random rationals
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fractional bits of every interval enclosure
    #[arg(long, default_value_t = DEFAULT_BITS)]
    pub precision_bits: u32,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatArg {
    Jsonl,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlgoArg {
    Dp,
    Genfun,
    #[default]
    Newton,
    All,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CountOpts {
    #[arg(long, value_enum, default_value = "newton")]
    pub algo: AlgoArg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundArg {
    Os,
    #[value(name = "os-log2")]
    OsLog2,
    Zhuwan,
    Lemma31,
    Expsum,
    Thm11,
    Open,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CheckOpts {
    #[arg(long, value_enum)]
    pub bound: Option<BoundArg>,
    /// Hypothesis exponent: m < p^(1 - delta)
    #[arg(long, default_value_t = 0.5)]
    pub delta: f64,
    #[arg(long, default_value_t = 0.25)]
    pub epsilon: f64,
    /// Draw this many random nonempty subsets of F_p* per prime
    #[arg(long)]
    pub random_sets: Option<usize>,
    /// Every nonempty subset of F_p*
    #[arg(long)]
    pub all_sets: bool,
}

#[derive(Args, Debug, Clone, Default)]
pub struct WaringOpts {
    /// Distinct bases, from the exact count tables
    #[arg(long)]
    pub distinct: bool,
    /// Sums of exactly k nonzero powers
    #[arg(long, conflicts_with = "distinct")]
    pub nonzero: bool,
    /// Compare both numbers for every p up to this bound and m | p-1, m < p-1
    #[arg(long)]
    pub suite: Option<u64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityArg {
    #[value(name = "cycle-index")]
    CycleIndex,
    Box,
    Sieve,
}

#[derive(Args, Debug, Clone)]
pub struct IdentityOpts {
    #[arg(long, value_enum)]
    pub which: IdentityArg,
    /// Rationals such as 4 or -3/7, comma separated
    #[arg(long, value_delimiter = ',')]
    pub q: Vec<String>,
    /// Number of seeded random rationals when --q is absent
    #[arg(long, default_value_t = 20)]
    pub random_q: usize,
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<u64>,
    #[arg(long, value_delimiter = ',')]
    pub s: Vec<u64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepTarget {
    Count,
    Total,
    Phi,
    Check,
    Waring,
    Audit,
}

#[derive(Debug, Clone)]
enum Task {
    Count(AlgoArg),
    Total,
    Phi,
    Check(BoundArg, CheckOpts),
    Waring(WaringOpts),
    Audit,
}

impl Task {
    fn name(&self) -> &'static str {
        match self {
            Task::Count(_) => "count",
            Task::Total => "total",
            Task::Phi => "phi",
            Task::Check(..) => "check",
            Task::Waring(_) => "waring",
            Task::Audit => "audit",
        }
    }
}

#[derive(Debug, Clone)]
struct Cell {
    p: u64,
    modulus: std::result::Result<PrimeModulus, Error>,
    m: Option<u64>,
    domain: Option<ValuedDomain>,
    sample: Option<usize>,
}

#[derive(Debug, Default)]
struct CellOutput {
    rows: Vec<Row>,
    violation: bool,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command) {
        Ok((rows, violation, out)) => match emit(&rows, &out, stdout) {
            Ok(()) => {
                if violation {
                    let _ = writeln!(stderr, "error: an unconditional bound or exact identity failed");
                    EXIT_VIOLATION
                } else {
                    EXIT_OK
                }
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(rows: &[Row], out: &OutputArgs, stdout: &mut dyn Write) -> io::Result<()> {
    let format = match out.format {
        FormatArg::Jsonl => Format::Jsonl,
        FormatArg::Csv => Format::Csv,
    };
    match &out.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            report::write_rows(rows, format, &mut w)?;
            w.flush()
        }
        None => report::write_rows(rows, format, stdout),
    }
}

fn execute(command: Command) -> Result<(Vec<Row>, bool, OutputArgs)> {
    let (task, grid, out, sweep) = match command {
        Command::Count { grid, count, out } => (Task::Count(count.algo), grid, out, false),
        Command::Total { grid, out } => (Task::Total, grid, out, false),
        Command::Phi { grid, out } => (Task::Phi, grid, out, false),
        Command::Check { grid, check, out } => {
            let bound = check.bound.ok_or_else(|| usage("check needs --bound"))?;
            (Task::Check(bound, check), grid, out, false)
        }
        Command::Waring { grid, waring, out } => {
            if let Some(p_max) = waring.suite {
                let (rows, violation) = run_waring_suite(p_max)?;
                return Ok((rows, violation, out));
            }
            (Task::Waring(waring), grid, out, false)
        }
        Command::Identity { grid, identity, out } => {
            let (rows, violation) = run_identity(&grid, &identity, out.seed)?;
            return Ok((rows, violation, out));
        }
        Command::Audit { grid, out } => (Task::Audit, grid, out, false),
        Command::Sweep { target, grid, count, check, waring, out } => {
            let task = match target {
                SweepTarget::Count => Task::Count(count.algo),
                SweepTarget::Total => Task::Total,
                SweepTarget::Phi => Task::Phi,
                SweepTarget::Check => {
                    let bound = check.bound.ok_or_else(|| usage("sweep --command check needs --bound"))?;
                    Task::Check(bound, check)
                }
                SweepTarget::Waring => Task::Waring(waring),
                SweepTarget::Audit => Task::Audit,
            };
            (task, grid, out, true)
        }
    };
    let cells = build_cells(&task, &grid, &out, sweep)?;
    let jobs = resolve_jobs(out.jobs)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<CellOutput>> =
        pool.install(|| cells.par_iter().map(|cell| run_cell(&task, cell, &grid, &out)).collect());

    let mut rows = Vec::new();
    let mut violation = false;
    for (cell, result) in cells.iter().zip(results) {
        match result {
            Ok(o) => {
                violation |= o.violation;
                rows.extend(o.rows);
            }
            Err(e) if sweep => {
                let set = cell.domain.as_ref().map(ToString::to_string);
                rows.push(report::skipped_row(task.name(), cell.p, cell.m, set, &e.to_string()));
            }
            Err(e) => return Err(e),
        }
    }
    Ok((rows, violation, out))
}

fn usage(msg: &str) -> Error {
    Error::InvalidParameter(msg.to_string())
}

fn resolve_jobs(jobs: Option<usize>) -> Result<usize> {
    match jobs {
        Some(0) => Err(usage("--jobs must be at least 1")),
        Some(n) => Ok(n),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Inclusive `A..B` (also `A..=B`).
pub fn parse_range(s: &str) -> Result<(u64, u64)> {
    let bad = || Error::InvalidParameter(format!("expected a range A..B, got '{s}'"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// `"1,2,3"` or `"1:2,4:1"` into `(value, multiplicity)` pairs.
pub fn parse_set(s: &str) -> Result<Vec<(u64, u64)>> {
    let bad = |part: &str| Error::InvalidParameter(format!("bad set element '{part}'"));
    s.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let part = part.trim();
            match part.split_once(':') {
                Some((v, mu)) => Ok((v.parse().map_err(|_| bad(part))?, mu.parse().map_err(|_| bad(part))?)),
                None => Ok((part.parse().map_err(|_| bad(part))?, 1)),
            }
        })
        .collect()
}

fn primes(grid: &GridArgs, sweep: bool) -> Result<Vec<(u64, std::result::Result<PrimeModulus, Error>)>> {
    let mut out = Vec::new();
    for &p in &grid.p {
        let modulus = PrimeModulus::new(p);
        if let Err(e) = &modulus {
            if !sweep {
                return Err(e.clone());
            }
        }
        out.push((p, modulus));
    }
    if let Some(r) = &grid.p_range {
        let (a, b) = parse_range(r)?;
        out.extend((a..=b).filter_map(|p| PrimeModulus::new(p).ok().map(|m| (p, Ok(m)))));
    }
    if out.is_empty() {
        return Err(usage("no primes selected: use --p or --p-range"));
    }
    Ok(out)
}

fn exponents(grid: &GridArgs, modulus: &std::result::Result<PrimeModulus, Error>) -> Result<Vec<u64>> {
    if grid.m_all_divisors {
        return Ok(match modulus {
            Ok(md) => md.group_order_divisors(),
            Err(_) => vec![],
        });
    }
    if grid.m.is_empty() {
        return Err(usage("no exponent selected: use --m or --m-all-divisors"));
    }
    Ok(grid.m.clone())
}

fn random_subsets(modulus: PrimeModulus, count: usize, rng: &mut ChaCha8Rng) -> Vec<ValuedDomain> {
    let p = modulus.value();
    (0..count)
        .map(|_| loop {
            let values: Vec<u64> = (1..p).filter(|_| rng.gen_bool(0.5)).collect();
            if !values.is_empty() {
                break ValuedDomain::from_set(modulus, &values).expect("distinct units");
            }
        })
        .collect()
}

fn all_subsets(modulus: PrimeModulus) -> Result<Vec<ValuedDomain>> {
    let p = modulus.value();
    if p > ALL_SETS_MAX_P {
        return Err(Error::InvalidParameter(format!("--all-sets supports p <= {ALL_SETS_MAX_P}, got {p}")));
    }
    Ok((1u64..(1 << (p - 1)))
        .map(|mask| {
            let values: Vec<u64> = (1..p).filter(|x| mask & (1 << (x - 1)) != 0).collect();
            ValuedDomain::from_set(modulus, &values).expect("distinct units")
        })
        .collect())
}

fn build_cells(task: &Task, grid: &GridArgs, out: &OutputArgs, sweep: bool) -> Result<Vec<Cell>> {
    let set = grid.set.as_deref().map(parse_set).transpose()?;
    let mut rng = ChaCha8Rng::seed_from_u64(out.seed);
    let mut cells = Vec::new();
    for (p, modulus) in primes(grid, sweep)? {
        let domain_cell = |domain: ValuedDomain, sample| Cell { p, modulus: modulus.clone(), m: None, domain: Some(domain), sample };
        if let Some(items) = &set {
            let domain = match &modulus {
                Ok(md) => ValuedDomain::new(*md, items.iter().copied()),
                Err(e) => Err(e.clone()),
            };
            match domain {
                Ok(d) => cells.push(domain_cell(d, None)),
                Err(e) if sweep => cells.push(Cell { p, modulus: Err(e), m: None, domain: None, sample: None }),
                Err(e) => return Err(e),
            }
            continue;
        }
        if let (Task::Check(BoundArg::Lemma31, opts), Ok(md)) = (task, &modulus) {
            if opts.all_sets {
                cells.extend(all_subsets(*md)?.into_iter().enumerate().map(|(i, d)| domain_cell(d, Some(i))));
                continue;
            }
            if let Some(n) = opts.random_sets {
                cells.extend(random_subsets(*md, n, &mut rng).into_iter().enumerate().map(|(i, d)| domain_cell(d, Some(i))));
                continue;
            }
        }
        for m in exponents(grid, &modulus)? {
            cells.push(Cell { p, modulus: modulus.clone(), m: Some(m), domain: None, sample: None });
        }
    }
    Ok(cells)
}

fn k_selection(grid: &GridArgs, lo: usize, hi: usize) -> Result<Vec<usize>> {
    let mut ks: Vec<usize> = grid.k.clone();
    if let Some(r) = &grid.k_range {
        let (a, b) = parse_range(r)?;
        ks.extend(a as usize..=b as usize);
    }
    if ks.is_empty() {
        return Ok((lo..=hi).collect());
    }
    if let Some(&k) = ks.iter().find(|&&k| k < lo || k > hi) {
        return Err(Error::KOutOfRange { k, n: hi });
    }
    Ok(ks)
}

fn b_selection(grid: &GridArgs, p: u64) -> Result<Vec<u64>> {
    if grid.b.is_empty() || grid.all_b {
        return Ok((0..p).collect());
    }
    if let Some(&b) = grid.b.iter().find(|&&b| b >= p) {
        return Err(Error::InvalidParameter(format!("target b = {b} is not a residue mod {p}")));
    }
    Ok(grid.b.clone())
}

impl Cell {
    fn modulus(&self) -> Result<PrimeModulus> {
        self.modulus.clone()
    }

    fn m(&self) -> Result<u64> {
        self.m.ok_or_else(|| usage("this command needs --m rather than --set"))
    }

    /// The explicit domain, or the m-th power multiset of `F_p*`.
    fn power_domain(&self) -> Result<ValuedDomain> {
        match &self.domain {
            Some(d) => Ok(d.clone()),
            None => Ok(ValuedDomain::power_image(&PowerResidueStructure::new(self.modulus()?, self.m()?)?)),
        }
    }

    /// The explicit domain, or the subgroup of m-th powers.
    fn subgroup_domain(&self) -> Result<ValuedDomain> {
        match &self.domain {
            Some(d) => Ok(d.clone()),
            None => Ok(ValuedDomain::subgroup(&PowerResidueStructure::new(self.modulus()?, self.m()?)?)),
        }
    }
}

fn run_cell(task: &Task, cell: &Cell, grid: &GridArgs, out: &OutputArgs) -> Result<CellOutput> {
    let modulus = cell.modulus()?;
    let p = modulus.value();
    let bits = out.precision_bits;
    let bs = b_selection(grid, p)?;
    let mut output = CellOutput::default();
    match task {
        Task::Count(algo) => {
            let domain = cell.power_domain()?;
            let ks = k_selection(grid, 0, domain.size())?;
            let k_max = ks.iter().copied().max().unwrap_or(0);
            let (tables, agreement, name) = match algo {
                AlgoArg::All => {
                    let (t, agree) = count_all(&domain, k_max)?;
                    (t, Some(agree), "all")
                }
                AlgoArg::Dp => (Algorithm::Dp.run(&domain, k_max)?, None, "dp"),
                AlgoArg::Genfun => (Algorithm::Genfun.run(&domain, k_max)?, None, "genfun"),
                AlgoArg::Newton => (Algorithm::Newton.run(&domain, k_max)?, None, "newton"),
            };
            output.violation = agreement == Some(false);
            let src = CountSource {
                command: "count",
                p,
                m: cell.m,
                set: cell.domain.as_ref().map(ToString::to_string),
                algo: name,
                agreement,
            };
            for k in ks {
                output.rows.extend(report::table_rows(&src, &tables[k], &bs));
            }
        }
        Task::Total => {
            let totals = match (&cell.domain, cell.m) {
                (None, Some(m)) => total_count(modulus, m)?,
                _ => {
                    let domain = cell.power_domain()?;
                    let tables = count_newton(&domain, domain.size())?;
                    (0..p).map(|b| tables.iter().map(|t| t.get(b)).sum()).collect()
                }
            };
            let src = CountSource {
                command: "total",
                p,
                m: cell.m,
                set: cell.domain.as_ref().map(ToString::to_string),
                algo: "genfun",
                agreement: None,
            };
            output.rows.extend(bs.iter().map(|&b| report::count_row(&src, None, b, &totals[b as usize])));
        }
        Task::Phi => {
            let domain = cell.subgroup_domain()?;
            let profile = character_profile(&domain)?;
            let subgroup_order = cell.m.map(|_| domain.size() as u64);
            output.rows.push(report::phi_row(&PhiRow {
                p,
                m: cell.m,
                set: domain.to_string(),
                phi: profile.phi(),
                argmax: profile.argmax(),
                numeric_error: profile.error_bound(),
                subgroup_order,
                delta_prime: subgroup_order.and_then(|s| empirical_delta_prime(&profile, s)),
            }));
        }
        Task::Check(bound, opts) => {
            let reports = run_check(*bound, opts, cell, grid, bits)?;
            let keep = |r: &BoundReport| r.b.map_or(true, |b| bs.contains(&b));
            for r in reports.iter().filter(|r| keep(r)) {
                output.violation |= r.is_violation();
                let mut row = report::bound_row(r);
                if let Some(i) = cell.sample {
                    row.insert("seed".into(), json!(out.seed));
                    row.insert("sample".into(), json!(i));
                }
                output.rows.push(row);
            }
        }
        Task::Waring(opts) => {
            let m = cell.m()?;
            let result = if opts.distinct {
                gamma_distinct(modulus, m)?
            } else if opts.nonzero {
                gamma_ordinary_nonzero(modulus, m)?
            } else {
                gamma_ordinary(modulus, m)?
            };
            output.rows.push(report::waring_row(&result));
        }
        Task::Audit => {
            let m = cell.m()?;
            for k in k_selection(grid, 0, modulus.group_order() as usize)? {
                for row in decomposition_audit(modulus, m, k)? {
                    if bs.contains(&row.b) {
                        output.rows.push(report::audit_row(p, m, k, &row));
                    }
                }
            }
        }
    }
    Ok(output)
}

fn run_check(bound: BoundArg, opts: &CheckOpts, cell: &Cell, grid: &GridArgs, bits: u32) -> Result<Vec<BoundReport>> {
    let modulus = cell.modulus()?;
    let n = modulus.group_order() as usize;
    let tables_for = |ks: &[usize], m: u64| {
        let k_max = ks.iter().copied().max().unwrap_or(0);
        crate::counters::count_odlyzko_stanley_upto(modulus, m, k_max)
    };
    Ok(match bound {
        BoundArg::Os => check_os_total(modulus, cell.m()?, LogBase::Natural, bits)?,
        BoundArg::OsLog2 => check_os_total(modulus, cell.m()?, LogBase::Two, bits)?,
        BoundArg::Expsum => check_exp_sum(modulus, cell.m()?, bits)?,
        BoundArg::Zhuwan => {
            let m = cell.m()?;
            let ks = k_selection(grid, 1, n)?;
            let tables = tables_for(&ks, m)?;
            ks.iter().flat_map(|&k| zhu_wan_from_table(modulus, m, &tables[k], bits)).collect()
        }
        BoundArg::Lemma31 => {
            let domain = cell.subgroup_domain()?;
            let ks = k_selection(grid, 1, domain.size())?;
            let profile = character_profile(&domain)?;
            let tables = count_newton(&domain, ks.iter().copied().max().unwrap_or(0))?;
            ks.iter().flat_map(|&k| lemma31_from_parts(&domain, &profile, &tables[k], bits)).collect()
        }
        BoundArg::Thm11 => {
            let m = cell.m()?;
            let params = BoundParams { delta: opts.delta, epsilon: opts.epsilon, bits, ..Default::default() };
            // validates epsilon, delta and the hypothesis on m
            bounds::check_thm11(modulus, m, 0, &params)?;
            let ks = k_selection(grid, 1, n)?;
            let tables = tables_for(&ks, m)?;
            ks.iter().flat_map(|&k| thm11_from_table(modulus, m, &tables[k], opts.epsilon, bits)).collect()
        }
        BoundArg::Open => {
            let m = cell.m()?;
            let ks = k_selection(grid, 1, n)?;
            let tables = tables_for(&ks, m)?;
            ks.iter()
                .flat_map(|&k| {
                    let fit = fit_epsilon_from_table(modulus, m, &tables[k], bits);
                    open_from_table(modulus, m, &tables[k], fit.epsilon, bits)
                })
                .collect()
        }
    })
}

fn run_waring_suite(p_max: u64) -> Result<(Vec<Row>, bool)> {
    let rows = waring_bound_suite(p_max)?;
    let violation = rows.iter().any(|r| r.violated());
    Ok((rows.iter().map(report::waring_comparison_row).collect(), violation))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| Error::InvalidParameter(format!("bad rational '{s}'")))
}

fn random_rationals(count: usize, seed: u64) -> Vec<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| BigRational::new(rng.gen_range(-60i64..=60).into(), rng.gen_range(1i64..=24).into()))
        .collect()
}

fn run_identity(grid: &GridArgs, opts: &IdentityOpts, seed: u64) -> Result<(Vec<Row>, bool)> {
    let mut rows = Vec::new();
    let mut violation = false;
    let explicit_k = !grid.k.is_empty() || grid.k_range.is_some();
    match opts.which {
        IdentityArg::CycleIndex => {
            let qs = if opts.q.is_empty() {
                random_rationals(opts.random_q, seed)
            } else {
                opts.q.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?
            };
            let ks = if explicit_k { k_selection(grid, 1, usize::MAX)? } else { (1..=12).collect() };
            for k in ks {
                for q in &qs {
                    let (lhs, rhs) = cycle_index_identity(k, q);
                    let holds = lhs == rhs;
                    violation |= !holds;
                    let params = IdentityParams { k, q: Some(q.to_string()), ..Default::default() };
                    rows.push(report::identity_row("cycle-index", &params, json!(lhs.to_string()), json!(rhs.to_string()), holds));
                }
            }
        }
        IdentityArg::Box => {
            let pairs: Vec<(u64, u64)> = if opts.n.is_empty() && opts.s.is_empty() {
                (1..=36).flat_map(|n| (1..=36 / n).map(move |s| (n, s))).collect()
            } else {
                if opts.n.is_empty() || opts.s.is_empty() {
                    return Err(usage("box identity needs both --n and --s"));
                }
                opts.n.iter().flat_map(|&n| opts.s.iter().map(move |&s| (n, s))).collect()
            };
            for (n, s) in pairs {
                let ks = if explicit_k { k_selection(grid, 0, usize::MAX)? } else { (0..=(n * s) as usize).collect() };
                for k in ks {
                    let check = box_identity_check(n, s, k);
                    violation |= !check.holds();
                    let params = IdentityParams { k, n: Some(n), s: Some(s), q: None };
                    rows.push(report::integer_identity_row("box", &params, &check));
                }
            }
        }
        IdentityArg::Sieve => {
            let ns: Vec<u64> = if opts.n.is_empty() { (0..=12).collect() } else { opts.n.clone() };
            let ks = if explicit_k { k_selection(grid, 1, usize::MAX)? } else { (1..=10).collect() };
            for &n in &ns {
                for &k in &ks {
                    let check = sieve_identity_check(n, k);
                    violation |= !check.holds();
                    let params = IdentityParams { k, n: Some(n), s: None, q: None };
                    rows.push(report::integer_identity_row("sieve", &params, &check));
                }
            }
        }
    }
    Ok((rows, violation))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["waring-sieve"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn lines(s: &str) -> Vec<serde_json::Value> {
        s.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
    }

    #[test]
    fn parse_helpers() {
        assert_eq!(parse_range("3..7").unwrap(), (3, 7));
        assert_eq!(parse_range("3..=7").unwrap(), (3, 7));
        assert!(parse_range("7..3").is_err());
        assert_eq!(parse_set("1,2,3").unwrap(), vec![(1, 1), (2, 1), (3, 1)]);
        assert_eq!(parse_set("1:2,4").unwrap(), vec![(1, 2), (4, 1)]);
        assert!(parse_set("x").is_err());
    }

    #[test]
    fn count_examples() {
        let (code, out, _) = run_str(&["count", "--p", "5", "--m", "2", "--k", "2", "--all-b", "--jobs", "1"]);
        assert_eq!(code, 0);
        let counts: Vec<String> = lines(&out).iter().map(|r| r["count"].as_str().unwrap().to_string()).collect();
        assert_eq!(counts, ["4", "0", "1", "1", "0"]);
        let (_, out, _) = run_str(&["count", "--p", "5", "--set", "1,2,3,4", "--k", "0", "--b", "0", "--jobs", "1"]);
        assert_eq!(lines(&out)[0]["count"], json!("1"));
        let (_, out, _) = run_str(&["count", "--p", "5", "--m", "2", "--k", "2", "--b", "0", "--algo", "all", "--jobs", "1"]);
        let r = &lines(&out)[0];
        assert_eq!((r["agreement"].clone(), r["count"].clone()), (json!(true), json!("4")));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&["count", "--p", "9", "--m", "2", "--k", "1"]).0, 2);
        assert_eq!(run_str(&["count", "--p", "5", "--m", "2", "--k", "7"]).0, 2);
        assert_eq!(run_str(&["count", "--p", "5", "--k", "1"]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["check", "--p", "7", "--m", "2"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn check_and_waring_examples() {
        let (code, out, _) = run_str(&["check", "--bound", "zhuwan", "--p", "7", "--m", "2", "--k", "3", "--jobs", "1"]);
        assert_eq!(code, 0);
        assert!(lines(&out).iter().all(|r| r["holds"] == json!(true)));
        let (code, out, _) = run_str(&["waring", "--p", "5", "--m", "2", "--distinct"]);
        assert_eq!(code, 0);
        assert_eq!(lines(&out)[0]["value"], json!("NONE"));
        let (code, out, _) = run_str(&["identity", "--which", "cycle-index", "--k", "6", "--q", "4"]);
        assert_eq!(code, 0);
        let r = &lines(&out)[0];
        assert_eq!((r["lhs"].clone(), r["rhs"].clone()), (json!("60480"), json!("60480")));
    }

    #[test]
    fn audit_never_fails_the_run() {
        let (code, out, _) = run_str(&["audit", "--p", "5", "--m", "2", "--k", "2", "--jobs", "1"]);
        assert_eq!(code, 0);
        let diffs: Vec<_> = lines(&out).iter().map(|r| r["diff"].clone()).collect();
        assert_eq!(diffs, [json!("0"), json!("1"), json!("-1"), json!("-1"), json!("1")]);
    }

    #[test]
    fn sweep_skips_bad_cells() {
        let (code, out, _) = run_str(&["sweep", "--command", "count", "--p", "5,9", "--m", "2", "--k", "2", "--b", "0"]);
        assert_eq!(code, 0);
        let rows = lines(&out);
        assert_eq!(rows.len(), 2);
        assert!(rows[1]["skipped"].as_str().unwrap().contains('3'));
    }
}
