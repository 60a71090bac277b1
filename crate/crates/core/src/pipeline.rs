//! Run configuration and the scan stage over FASTA files.

use std::path::{Path, PathBuf};
use std::thread;

use crossbeam_channel::bounded;

use crate::analysis::{PairConfig, DEFAULT_MIN_FREQ};
use crate::dissim::{PeakConfig, DEFAULT_EPS};
use crate::error::{Error, Result};
use crate::ingest::{open_fasta, CasePolicy, Segment, SegmentSplitter};
use crate::refmodel::BaseFrequencies;
use crate::scan::{merge_into, CountStore, Scanner, DEFAULT_DMAX};
use crate::word::check_k;

/// Percentiles and top fractions used by the report.
#[derive(Debug, Clone, PartialEq)]
pub struct Percentiles {
    /// Top-set fractions for the overlap table.
    pub top_fractions: Vec<f64>,
    /// D_P percentile above which pairs are listed as most dissimilar.
    pub top_dp: f64,
    /// D_P percentile below which pairs count as similar.
    pub similar: f64,
    /// APR / D_P cut separating the classes.
    pub class_cut: f64,
    /// Second, stricter line for the classes table.
    pub class_extreme: f64,
}

impl Default for Percentiles {
    fn default() -> Self {
        Percentiles {
            top_fractions: vec![0.01, 0.10],
            top_dp: 99.0,
            similar: 10.0,
            class_cut: 90.0,
            class_extreme: 99.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub k: usize,
    pub dmax: usize,
    pub peaks: PeakConfig,
    pub eps: f64,
    pub min_freq: u64,
    pub percentiles: Percentiles,
    pub inputs: Vec<PathBuf>,
    pub out_dir: PathBuf,
    pub threads: usize,
    pub case_policy: CasePolicy,
    pub base_freqs: Option<BaseFrequencies>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            k: 5,
            dmax: DEFAULT_DMAX,
            peaks: PeakConfig::default(),
            eps: DEFAULT_EPS,
            min_freq: DEFAULT_MIN_FREQ,
            percentiles: Percentiles::default(),
            inputs: Vec::new(),
            out_dir: PathBuf::from("."),
            threads: default_threads(),
            case_policy: CasePolicy::Fold,
            base_freqs: None,
        }
    }
}

pub fn default_threads() -> usize {
    thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

impl RunConfig {
    /// Checks the settings the scan stage depends on.
    pub fn validate_scan(&self) -> Result<()> {
        check_k(self.k)?;
        if self.dmax <= self.k {
            return Err(Error::config(format!("dmax={} must exceed k={}", self.dmax, self.k)));
        }
        if self.threads == 0 {
            return Err(Error::config("thread count must be positive"));
        }
        Ok(())
    }

    /// Checks every downstream constraint up front.
    pub fn validate(&self) -> Result<()> {
        self.validate_scan()?;
        if self.peaks.bandwidth < 2 || self.peaks.peaks == 0 {
            return Err(Error::config("peak bandwidth must be >= 2 and peak count >= 1"));
        }
        self.peaks.validate_for(self.dmax - self.k)?;
        if self.eps.is_nan() || self.eps <= 0.0 {
            return Err(Error::config("eps must be positive"));
        }
        let p = &self.percentiles;
        for q in [p.top_dp, p.similar, p.class_cut, p.class_extreme] {
            if !(q > 0.0 && q < 100.0) {
                return Err(Error::config(format!("percentile {q} outside (0, 100)")));
            }
        }
        for &f in &p.top_fractions {
            if !(f > 0.0 && f < 1.0) {
                return Err(Error::config(format!("top fraction {f} outside (0, 1)")));
            }
        }
        Ok(())
    }

    pub fn pair_config(&self) -> PairConfig {
        PairConfig {
            peaks: self.peaks,
            eps: self.eps,
            min_freq: self.min_freq,
            base_freqs: self.base_freqs,
        }
    }

    /// `key=value` fields describing the analysis. Paths and the thread
    /// count are left out: they do not change results, and reports must
    /// be identical across output locations and thread counts.
    pub fn metadata_fields(&self) -> Vec<String> {
        let p = &self.percentiles;
        let fractions: Vec<String> = p.top_fractions.iter().map(|f| f.to_string()).collect();
        let mut fields = vec![
            format!("k={}", self.k),
            format!("dmax={}", self.dmax),
            format!("h={}", self.peaks.bandwidth),
            format!("n_peaks={}", self.peaks.peaks),
            format!("eps={:e}", self.eps),
            format!("min_freq={}", self.min_freq),
            format!("top_fractions={}", fractions.join(",")),
            format!("top_dp_q={}", p.top_dp),
            format!("similar_q={}", p.similar),
            format!("class_cut_q={}", p.class_cut),
            format!("class_extreme_q={}", p.class_extreme),
            format!("case={}", self.case_policy.as_str()),
        ];
        if let Some(b) = self.base_freqs {
            let v = b.probs();
            fields.push(format!("base_freq={},{},{},{}", v[0], v[1], v[2], v[3]));
        }
        fields
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub chromosomes: u64,
    pub segments: u64,
    /// All sequence symbols, separators included.
    pub symbols: u64,
    /// Word occurrences counted.
    pub words: u64,
}

fn input_label(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Scans every input into one store. With one thread the FASTA is
/// streamed straight into the scanner; with more, segments are handed to
/// workers that each own a private store, merged at the end.
pub fn scan_inputs(cfg: &RunConfig) -> Result<(CountStore, ScanSummary)> {
    cfg.validate_scan()?;
    let mut summary = ScanSummary::default();
    let mut store = if cfg.threads <= 1 {
        scan_serial(cfg, &mut summary)?
    } else {
        scan_parallel(cfg, &mut summary)?
    };
    for path in &cfg.inputs {
        store.provenance.inputs.insert(input_label(path));
    }
    summary.segments = store.provenance.segments;
    summary.words = store.total_occurrences();
    Ok((store, summary))
}

fn scan_serial(cfg: &RunConfig, summary: &mut ScanSummary) -> Result<CountStore> {
    let mut store = CountStore::new(cfg.k, cfg.dmax)?;
    let mut scanner = Scanner::new(cfg.k, cfg.dmax, cfg.case_policy)?;
    for path in &cfg.inputs {
        let mut reader = open_fasta(path)?;
        while let Some(rec) = reader.next_record_with(|chunk| scanner.feed(&mut store, chunk))? {
            scanner.break_segment();
            summary.chromosomes += 1;
            summary.symbols += rec.length;
        }
    }
    Ok(store)
}

fn scan_parallel(cfg: &RunConfig, summary: &mut ScanSummary) -> Result<CountStore> {
    let (tx, rx) = bounded::<Segment>(cfg.threads * 4);
    thread::scope(|scope| {
        let workers: Vec<_> = (0..cfg.threads)
            .map(|_| {
                let rx = rx.clone();
                scope.spawn(move || -> Result<CountStore> {
                    let mut store = CountStore::new(cfg.k, cfg.dmax)?;
                    let mut scanner = Scanner::new(cfg.k, cfg.dmax, CasePolicy::Fold)?;
                    for seg in rx {
                        scanner.scan_segment(&mut store, &seg.symbols);
                    }
                    Ok(store)
                })
            })
            .collect();
        drop(rx);

        let read_result = (|| -> Result<()> {
            for path in &cfg.inputs {
                let mut reader = open_fasta(path)?;
                loop {
                    let mut splitter: Option<SegmentSplitter> = None;
                    let mut send_failed = false;
                    let mut emit = |s: Segment| {
                        if tx.send(s).is_err() {
                            send_failed = true;
                        }
                    };
                    let rec = reader.next_record_with(|chunk| {
                        splitter
                            .get_or_insert_with(|| SegmentSplitter::new("", cfg.case_policy))
                            .push(chunk, &mut emit);
                    })?;
                    if let Some(sp) = splitter {
                        sp.finish(&mut emit);
                    }
                    if send_failed {
                        return Err(Error::config("scan worker stopped unexpectedly"));
                    }
                    match rec {
                        Some(r) => {
                            summary.chromosomes += 1;
                            summary.symbols += r.length;
                        }
                        None => break,
                    }
                }
            }
            Ok(())
        })();
        drop(tx);

        let mut merged = CountStore::new(cfg.k, cfg.dmax)?;
        for w in workers {
            let part = w.join().map_err(|_| Error::config("scan worker panicked"))??;
            merge_into(&mut merged, &part)?;
        }
        read_result?;
        Ok(merged)
    })
}

/// Runs `f` on a rayon pool with the configured number of threads.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::config(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(f))
}
