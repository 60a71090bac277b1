use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use genodist::analysis::locate_favored;
use genodist::dissim::{PeakConfig, DEFAULT_BANDWIDTH, DEFAULT_EPS, DEFAULT_PEAKS};
use genodist::ingest::{open_fasta, CasePolicy};
use genodist::pipeline::{default_threads, scan_inputs, RunConfig};
use genodist::refmodel::BaseFrequencies;
use genodist::report::{dump_distributions, write_histogram, write_reference, write_report, REPORT_FILES};
use genodist::scan::DEFAULT_DMAX;
use genodist::store::{load_store, save_store};
use genodist::word::{check_k, parse_word};
use genodist::Error;

#[derive(Parser)]
#[command(
    name = "genodist",
    version,
    about = "Inter-word distance distributions and reverse-complement dissimilarity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count inter-word distances in FASTA files and write a count store
    Scan(ScanArgs),
    /// Compute pair measures, rankings and classes from a count store
    Report(ReportArgs),
    /// Print the model distance distribution of a word
    Reference(ReferenceArgs),
    /// Write BED rows where a word recurs at a given distance
    Locate(LocateArgs),
    /// Print the distance histogram of one word from a count store
    Dump(DumpArgs),
}

#[derive(Args)]
struct Common {
    /// Worker threads
    #[arg(long, default_value_t = default_threads())]
    threads: usize,
}

#[derive(Args)]
struct ScanArgs {
    /// FASTA inputs (plain or gzip)
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_DMAX)]
    dmax: usize,
    /// Treat lowercase bases as separators
    #[arg(long)]
    lowercase_as_mask: bool,
    /// Store file, or a directory to hold store.tsv
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ReportArgs {
    store: PathBuf,
    /// Expected word length; must match the store
    #[arg(long)]
    k: Option<usize>,
    /// Expected dmax; must match the store
    #[arg(long)]
    dmax: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_BANDWIDTH)]
    h: usize,
    #[arg(long, default_value_t = DEFAULT_PEAKS)]
    n_peaks: usize,
    #[arg(long, default_value_t = DEFAULT_EPS)]
    eps: f64,
    #[arg(long, default_value_t = genodist::analysis::DEFAULT_MIN_FREQ)]
    min_freq: u64,
    /// Base frequencies A,C,G,T for the reference model
    #[arg(long)]
    base_freq: Option<String>,
    #[arg(long)]
    out: PathBuf,
    /// Also write dist_<w>.tsv for this word and its reverse complement
    #[arg(long)]
    dump_dist: Vec<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ReferenceArgs {
    word: String,
    #[arg(long, default_value_t = DEFAULT_DMAX)]
    dmax: usize,
    /// Base frequencies A,C,G,T (default uniform)
    #[arg(long)]
    base_freq: Option<String>,
    /// Output file (default standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LocateArgs {
    /// FASTA inputs (plain or gzip)
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    word: String,
    /// Distance between consecutive occurrences
    #[arg(long)]
    distance: usize,
    #[arg(long, default_value_t = DEFAULT_DMAX)]
    dmax: usize,
    #[arg(long)]
    lowercase_as_mask: bool,
    /// BED output file (default standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DumpArgs {
    store: PathBuf,
    word: String,
    /// Output file (default standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::MalformedInput(_) => 2,
        Error::Config(_) | Error::Argument(_) | Error::Encoding(_) => 3,
        _ => 4,
    }
}

fn policy(mask: bool) -> CasePolicy {
    if mask {
        CasePolicy::Mask
    } else {
        CasePolicy::Fold
    }
}

fn output(path: Option<&Path>) -> genodist::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run_scan(a: ScanArgs) -> genodist::Result<()> {
    check_k(a.k)?;
    let cfg = RunConfig {
        k: a.k,
        dmax: a.dmax,
        inputs: a.inputs,
        threads: a.common.threads,
        case_policy: policy(a.lowercase_as_mask),
        ..RunConfig::default()
    };
    let path = if a.out.is_dir() { a.out.join("store.tsv") } else { a.out };
    let (store, summary) = scan_inputs(&cfg)?;
    if summary.symbols == 0 {
        eprintln!("warning: no sequence data in the inputs; writing an empty store");
    }
    save_store(&store, &path)?;
    println!("chromosomes\t{}", summary.chromosomes);
    println!("segments\t{}", summary.segments);
    println!("symbols\t{}", summary.symbols);
    println!("words\t{}", summary.words);
    println!("store\t{}", path.display());
    Ok(())
}

fn run_report(a: ReportArgs) -> genodist::Result<()> {
    let store = load_store(&a.store)?;
    for (name, want, have) in [("k", a.k, store.k()), ("dmax", a.dmax, store.dmax())] {
        if let Some(w) = want {
            if w != have {
                return Err(Error::Store(format!("store has {name}={have}, requested {name}={w}")));
            }
        }
    }
    let cfg = RunConfig {
        k: store.k(),
        dmax: store.dmax(),
        peaks: PeakConfig::new(a.h, a.n_peaks)?,
        eps: a.eps,
        min_freq: a.min_freq,
        out_dir: a.out,
        threads: a.common.threads,
        base_freqs: a.base_freq.as_deref().map(BaseFrequencies::parse).transpose()?,
        ..RunConfig::default()
    };
    let existed = cfg.out_dir.exists();
    let result = (|| {
        let summary = write_report(&store, &cfg)?;
        let mut dumps = Vec::new();
        for w in &a.dump_dist {
            dumps.extend(dump_distributions(&store, w, &cfg)?);
        }
        Ok((summary, dumps))
    })();
    match result {
        Ok((summary, dumps)) => {
            println!("pairs\t{}", summary.pairs);
            println!("palindromes\t{}", summary.palindromes);
            println!("ranked\t{}", summary.ranked);
            for f in summary.files.iter().chain(&dumps) {
                println!("wrote\t{}", f.display());
            }
            Ok(())
        }
        Err(e) => {
            for name in REPORT_FILES {
                let _ = fs::remove_file(cfg.out_dir.join(name));
            }
            for w in &a.dump_dist {
                let _ = fs::remove_file(cfg.out_dir.join(format!("dist_{}.tsv", w.to_ascii_uppercase())));
            }
            if !existed {
                let _ = fs::remove_dir(&cfg.out_dir);
            }
            Err(e)
        }
    }
}

fn run_reference(a: ReferenceArgs) -> genodist::Result<()> {
    let word = parse_word(&a.word)?;
    if a.dmax <= word.k() {
        return Err(Error::Config(format!("dmax={} must exceed k={}", a.dmax, word.k())));
    }
    let base = match a.base_freq.as_deref() {
        Some(s) => BaseFrequencies::parse(s)?,
        None => BaseFrequencies::uniform(),
    };
    write_reference(word, &base, a.dmax, output(a.out.as_deref())?)
}

fn run_locate(a: LocateArgs) -> genodist::Result<()> {
    let word = parse_word(&a.word)?;
    if a.distance > a.dmax {
        return Err(Error::Config(format!(
            "distance {} exceeds dmax={}",
            a.distance, a.dmax
        )));
    }
    let mut sites = Vec::new();
    for path in &a.inputs {
        let mut reader = open_fasta(path)?;
        sites.push(locate_favored(
            &mut reader,
            word,
            a.distance,
            a.dmax,
            policy(a.lowercase_as_mask),
        )?);
    }
    let mut out = Vec::new();
    for s in &sites {
        s.write_bed(&mut out)?;
    }
    match &a.out {
        Some(p) => {
            fs::write(p, &out)?;
            for s in &sites {
                for (chrom, hits) in &s.chromosomes {
                    println!("{chrom}\t{}", hits.len());
                }
            }
            println!("total\t{}", sites.iter().map(|s| s.total()).sum::<usize>());
        }
        None => {
            io::stdout().write_all(&out)?;
            for s in &sites {
                for (chrom, hits) in &s.chromosomes {
                    eprintln!("{chrom}\t{}", hits.len());
                }
            }
        }
    }
    Ok(())
}

fn run_dump(a: DumpArgs) -> genodist::Result<()> {
    let store = load_store(&a.store)?;
    let word = parse_word(&a.word)?;
    if word.k() != store.k() {
        return Err(Error::Store(format!(
            "store has k={}, word {} has length {}",
            store.k(),
            word,
            word.k()
        )));
    }
    write_histogram(&store, word, output(a.out.as_deref())?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    let result = match cli.command {
        Command::Scan(a) => run_scan(a),
        Command::Report(a) => run_report(a),
        Command::Reference(a) => run_reference(a),
        Command::Locate(a) => run_locate(a),
        Command::Dump(a) => run_dump(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
