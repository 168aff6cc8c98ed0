//! The `mofs` command line.
//!
//! Exit codes: 0 success, 1 a check failed or an input could not be processed,
//! 2 usage error, 3 a search ran out of budget (partial results are still printed).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::enumeration::{collect_squares, count_squares, EnumSpec};
use crate::error::{Error, Result};
use crate::format::{read_mofs, read_one, write_catalogue, write_mofs, GridFormat};
use crate::isomorphism::{canonical_form, dedupe_catalogue, IsoOptions, SymbolMode};
use crate::orthogonality::{set_bound, verify_mofs, VerifyMode};
use crate::relations::{
    check_parity_theorems, compatible_block, detect_any_relation, detect_block_structure, detect_full_relation,
    even_frequency_obstruction, extension_obstruction, zw_sum_all, Relation,
};
use crate::search::table1::{case_spec, run_case, sample_seeds};
use crate::search::{count_mates, extend_to_maximum, f_value, generate_mates, SearchOptions};
use crate::square::{MofsSet, TypeSignature};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Default seed for anything randomized.
pub const DEFAULT_SEED: u64 = 0x6d6f6673;

#[derive(Debug, Parser)]
#[command(name = "mofs", version, about = "Binary mutually orthogonal frequency squares")]
struct Cli {
    /// Worker threads.
    #[arg(long, global = true, env = "MOFS_WORKERS", value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    /// Seed for sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct IsoFlags {
    /// Squares keep their positions.
    #[arg(long)]
    ordered: bool,
    /// Only complement squares with λ1 = n/2.
    #[arg(long)]
    preserve_types: bool,
}

impl IsoFlags {
    fn options(&self) -> IsoOptions {
        IsoOptions {
            ordered: self.ordered,
            symbols: if self.preserve_types { SymbolMode::TypePreserving } else { SymbolMode::Free },
            transpose: true,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check mutual orthogonality and the cardinality bound.
    Verify { file: PathBuf },
    /// Z_w-sum, block structure, relations and the parity checks they imply.
    Relations {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        w: u64,
        /// Also search subsets of squares.
        #[arg(long)]
        subsets: bool,
    },
    /// Congruence test for squares that could extend the set.
    Obstruct {
        file: PathBuf,
        #[arg(long)]
        w: u64,
        /// λ1 of the candidate; every binary type when absent.
        #[arg(long)]
        mu: Option<usize>,
    },
    /// All binary squares of one type, optionally orthogonal to a given set.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda1: usize,
        /// One square per complementary pair when λ1 = n/2.
        #[arg(long)]
        dedup: bool,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        mate_of: Option<PathBuf>,
    },
    /// Canonical form of every set in a file.
    Canon {
        file: PathBuf,
        #[command(flatten)]
        iso: IsoFlags,
    },
    /// One representative per isomorphism class over every `.mofs` file in a directory.
    Dedupe {
        dir: PathBuf,
        #[command(flatten)]
        iso: IsoFlags,
    },
    /// Squares with λ1 in the given types orthogonal to the whole set.
    Mates {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        types: Vec<usize>,
        #[arg(long)]
        count_only: bool,
    },
    /// Largest extension of the set by mates of the given types.
    Extend {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        types: Vec<usize>,
        /// Clique search node limit.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Largest set of order n using exactly the given types.
    Fvalue {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        types: Vec<usize>,
        #[arg(long)]
        budget: Option<u64>,
        /// Also write the witness here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One row of the order-6 case split.
    Table1 {
        #[arg(long = "case")]
        case: usize,
        /// Run the complete census even when it is not desk-scale.
        #[arg(long)]
        full: bool,
        /// Seeds sampled for rows that are not run in full.
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Outcome { code, stdout, stderr };
        }
    };
    let mut out = String::new();
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(w) = cli.workers {
            b = b.num_threads(w as usize);
        }
        b.build()
    };
    let result = match pool {
        Ok(pool) => pool.install(|| dispatch(&cli, &mut out)),
        Err(e) => Err(Error::Io(e.to_string())),
    };
    match result {
        Ok(code) => Outcome { code, stdout: out, stderr: String::new() },
        Err(e) => {
            let code = match e {
                Error::InvalidSpec(_) | Error::InvalidSignature(_) | Error::UnsupportedOrder(_) => EXIT_USAGE,
                _ => EXIT_FAILED,
            };
            Outcome { code, stdout: out, stderr: format!("error: {e}\n") }
        }
    }
}

fn budget_code(exact: bool) -> i32 {
    if exact {
        EXIT_OK
    } else {
        EXIT_BUDGET
    }
}

fn list(xs: impl IntoIterator<Item = usize>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<i32> {
    match &cli.command {
        Command::Verify { file } => verify(file, out),
        Command::Relations { file, w, subsets } => relations(file, *w, *subsets, out),
        Command::Obstruct { file, w, mu } => obstruct(file, *w, *mu, out),
        Command::Enumerate { n, lambda1, dedup, count_only, mate_of } => {
            let mut spec = EnumSpec::new(*n, *lambda1).dedup(*dedup);
            if let Some(path) = mate_of {
                spec = spec.mates_of(read_one(path)?.squares());
            }
            if *count_only {
                writeln!(out, "COUNT n={n} lambda1={lambda1} count={}", count_squares(&spec)?).unwrap();
            } else {
                let squares = collect_squares(&spec)?;
                writeln!(out, "# {} squares", squares.len()).unwrap();
                let sets = squares
                    .into_iter()
                    .map(|s| MofsSet::new(*n, vec![s]))
                    .collect::<Result<Vec<_>>>()?;
                out.push_str(&write_catalogue(&sets, GridFormat::Decimal)?);
            }
            Ok(EXIT_OK)
        }
        Command::Canon { file, iso } => {
            let forms = read_mofs(file)?
                .iter()
                .map(|s| canonical_form(s, &iso.options())?.to_set())
                .collect::<Result<Vec<_>>>()?;
            out.push_str(&write_catalogue(&forms, GridFormat::Decimal)?);
            Ok(EXIT_OK)
        }
        Command::Dedupe { dir, iso } => dedupe(dir, &iso.options(), out),
        Command::Mates { file, types, count_only } => {
            let set = read_one(file)?;
            if *count_only {
                writeln!(out, "MATES count={}", count_mates(&set, types)?).unwrap();
                return Ok(EXIT_OK);
            }
            let mates = generate_mates(&set, types)?;
            writeln!(out, "MATES count={}", mates.len()).unwrap();
            let sets = mates
                .into_iter()
                .map(|s| MofsSet::new(set.order(), vec![s]))
                .collect::<Result<Vec<_>>>()?;
            out.push_str(&write_catalogue(&sets, GridFormat::Decimal)?);
            Ok(EXIT_OK)
        }
        Command::Extend { file, types, budget } => {
            let ext = extend_to_maximum(&read_one(file)?, types, *budget)?;
            writeln!(
                out,
                "EXTEND mates={} added={} size={} exact={}",
                ext.mates,
                ext.added,
                ext.set.len(),
                ext.exact
            )
            .unwrap();
            out.push_str(&write_mofs(&ext.set, GridFormat::Decimal)?);
            Ok(budget_code(ext.exact))
        }
        Command::Fvalue { n, types, budget, out: path } => {
            let opts = SearchOptions { budget: *budget, ..Default::default() };
            let f = f_value(*n, types, &opts)?;
            let witness = write_mofs(&f.witness, GridFormat::Decimal)?;
            writeln!(out, "{f}").unwrap();
            out.push_str(&witness);
            if let Some(path) = path {
                std::fs::write(path, &witness)?;
            }
            Ok(budget_code(f.exact))
        }
        Command::Table1 { case, full, samples, budget } => {
            let spec = case_spec(*case)?;
            let opts = SearchOptions { budget: *budget, ..Default::default() };
            if spec.desk_scale || *full {
                let row = run_case(spec, &opts)?;
                writeln!(out, "{row}").unwrap();
                writeln!(
                    out,
                    "REFERENCE mates=({},{}) max={}",
                    spec.reference_mates.0, spec.reference_mates.1, spec.reference_max
                )
                .unwrap();
                return Ok(budget_code(row.exact));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let seeds = sample_seeds(spec, *samples, &opts, &mut rng)?;
            let counts = seeds
                .iter()
                .map(|s| count_mates(s, spec.mate_types))
                .collect::<Result<Vec<_>>>()?;
            let (lo, hi) = (counts.iter().min().copied().unwrap_or(0), counts.iter().max().copied().unwrap_or(0));
            let (a, b) = spec.reference_mates;
            writeln!(
                out,
                "TABLE1-SAMPLE case={case} samples={} mates=({lo},{hi}) within={}",
                seeds.len(),
                lo as usize >= a && hi as usize <= b
            )
            .unwrap();
            writeln!(out, "REFERENCE mates=({a},{b}) max={}", spec.reference_max).unwrap();
            Ok(EXIT_OK)
        }
    }
}

fn verify(file: &Path, out: &mut String) -> Result<i32> {
    let mut code = EXIT_OK;
    for (i, set) in read_mofs(file)?.iter().enumerate() {
        let report = verify_mofs(set, VerifyMode::Exhaustive);
        let bound = set_bound(set);
        writeln!(
            out,
            "VERIFY record={} n={} k={} orthogonal={} bound={}/{} complete={}",
            i + 1,
            set.order(),
            set.len(),
            report.is_ok(),
            bound.sum,
            bound.bound,
            bound.complete
        )
        .unwrap();
        for f in &report.failures {
            writeln!(
                out,
                "FAIL squares=({},{}) symbols=({},{}) count={} expected={}",
                f.first + 1,
                f.second + 1,
                f.symbols.0,
                f.symbols.1,
                f.count,
                f.expected
            )
            .unwrap();
        }
        if !report.is_ok() || !bound.admissible {
            code = EXIT_FAILED;
        }
    }
    Ok(code)
}

fn relation_report(set: &MofsSet, rel: &Relation, out: &mut String) -> Result<()> {
    for v in check_parity_theorems(set, rel) {
        writeln!(out, "  {v}").unwrap();
    }
    if rel.is_full() && !rel.is_constant() {
        if let Ok(v) = even_frequency_obstruction(set, rel) {
            writeln!(out, "  {v}").unwrap();
        }
    }
    Ok(())
}

fn relations(file: &Path, w: u64, subsets: bool, out: &mut String) -> Result<i32> {
    for (i, set) in read_mofs(file)?.iter().enumerate() {
        writeln!(out, "RECORD {} n={} k={}", i + 1, set.order(), set.len()).unwrap();
        let z = zw_sum_all(set, w)?;
        writeln!(out, "ZSUM w={w}").unwrap();
        for row in z.rows() {
            writeln!(out, "  {}", row.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")).unwrap();
        }
        match detect_block_structure(&z) {
            Some(b) => writeln!(out, "{b}").unwrap(),
            None => writeln!(out, "BLOCKS none").unwrap(),
        }
        match detect_full_relation(set)? {
            Some(rel) => {
                let kind = if rel.is_constant() { "constant" } else { "non-constant" };
                writeln!(out, "FULL-RELATION {kind} {rel}").unwrap();
                relation_report(set, &rel, out)?;
            }
            None => writeln!(out, "FULL-RELATION none").unwrap(),
        }
        if subsets {
            match detect_any_relation(set)? {
                Some((sub, rel)) => {
                    writeln!(out, "RELATION subset={{{}}} {rel}", list(sub.iter().map(|s| s + 1))).unwrap();
                }
                None => writeln!(out, "RELATION none").unwrap(),
            }
        }
    }
    Ok(EXIT_OK)
}

fn obstruct(file: &Path, w: u64, mu: Option<usize>, out: &mut String) -> Result<i32> {
    if w < 2 {
        return Err(Error::InvalidSpec("w must be at least 2".into()));
    }
    for set in read_mofs(file)? {
        let n = set.order();
        let Some(block) = compatible_block(&set, w)? else {
            writeln!(out, "OBSTRUCTION w={w} none").unwrap();
            continue;
        };
        let types: Vec<usize> = match mu {
            Some(l) => vec![l],
            None => (1..=n / 2).collect(),
        };
        let mut excluded = Vec::new();
        for l in types {
            let report = extension_obstruction(&set, &block, &TypeSignature::binary(n, l)?)?;
            writeln!(out, "{report}").unwrap();
            if report.type_excluded {
                excluded.push(l);
            }
        }
        writeln!(out, "EXCLUDED types={{{}}}", list(excluded)).unwrap();
    }
    Ok(EXIT_OK)
}

fn dedupe(dir: &Path, opts: &IsoOptions, out: &mut String) -> Result<i32> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "mofs"))
        .collect();
    paths.sort();
    let mut sets = Vec::new();
    for p in &paths {
        sets.extend(read_mofs(p)?);
    }
    let cat = dedupe_catalogue(sets, opts)?;
    writeln!(out, "# classes={} inputs={}", cat.len(), cat.seen).unwrap();
    out.push_str(&write_catalogue(&cat.sorted_canonical()?, GridFormat::Decimal)?);
    Ok(EXIT_OK)
}
