//! Per-pair records and the ranking / selection analyses built on them.

mod classify;
mod locate;
mod rank;

pub use classify::{classify_pairs, rank_similar_unexpected, ClassCounts, PairClass, PairClassification};
pub use locate::{locate_favored, FavoredSites};
pub use rank::{
    average_ranks, nearest_rank_threshold, percentile_select, spearman, top_overlap, RankEntry, RankTable, Side,
};

use rayon::prelude::*;

use crate::dissim::{
    apr, euclidean, jeffreys, peak_dissimilarity, to_distribution, DistanceDistribution, PeakConfig, DEFAULT_EPS,
};
use crate::error::Result;
use crate::refmodel::{reference_distribution, rs_score, BaseFrequencies, PatternAutomaton};
use crate::scan::CountStore;
use crate::word::WordId;

pub const DEFAULT_MIN_FREQ: u64 = 100;

/// The per-pair quantities that can be ranked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Apr,
    Euclidean,
    Jeffreys,
    Peak,
    Reference,
}

impl Measure {
    /// The four measures compared against each other.
    pub const COMPARED: [Measure; 4] = [Measure::Apr, Measure::Euclidean, Measure::Jeffreys, Measure::Peak];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Apr => "APR",
            Measure::Euclidean => "D_E",
            Measure::Jeffreys => "D_J",
            Measure::Peak => "D_P",
            Measure::Reference => "rs",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PairFlags {
    /// `w` is its own reverse complement.
    pub palindrome: bool,
    /// `min(n_w, n_wbar)` is below the frequency threshold.
    pub low_frequency: bool,
    /// One of the distributions (observed or reference) has no mass on
    /// the retained domain, so the distribution measures are undefined.
    pub no_distribution: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairRecord {
    /// Lexicographically smaller member of the pair.
    pub word: WordId,
    pub rc: WordId,
    pub n_w: u64,
    pub n_wbar: u64,
    pub apr: f64,
    pub d_e: f64,
    pub d_j: f64,
    pub d_p: f64,
    pub rs: f64,
    pub flags: PairFlags,
}

impl PairRecord {
    pub fn value(&self, m: Measure) -> f64 {
        match m {
            Measure::Apr => self.apr,
            Measure::Euclidean => self.d_e,
            Measure::Jeffreys => self.d_j,
            Measure::Peak => self.d_p,
            Measure::Reference => self.rs,
        }
    }

    /// Whether the record takes part in rankings and correlations.
    pub fn is_ranked(&self) -> bool {
        !(self.flags.palindrome || self.flags.low_frequency || self.flags.no_distribution)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairConfig {
    pub peaks: PeakConfig,
    pub eps: f64,
    pub min_freq: u64,
    /// Background model; `None` estimates it from the store's base counts.
    pub base_freqs: Option<BaseFrequencies>,
}

impl Default for PairConfig {
    fn default() -> Self {
        PairConfig {
            peaks: PeakConfig::default(),
            eps: DEFAULT_EPS,
            min_freq: DEFAULT_MIN_FREQ,
            base_freqs: None,
        }
    }
}

/// Base frequencies for the reference model: the override if given, else
/// the store's symbol counts, else the composition of the counted words.
pub fn effective_base_freqs(store: &CountStore, cfg: &PairConfig) -> Result<BaseFrequencies> {
    if let Some(b) = cfg.base_freqs {
        return Ok(b);
    }
    let bases = store.base_counts();
    if bases.iter().any(|&b| b > 0) {
        return BaseFrequencies::from_counts(bases);
    }
    let mut comp = [0u64; 4];
    for w in store.words() {
        let n = store.occurrences(w);
        if n > 0 {
            for s in w.symbols() {
                comp[s as usize] += n;
            }
        }
    }
    if comp.iter().all(|&c| c == 0) {
        return Ok(BaseFrequencies::uniform());
    }
    BaseFrequencies::from_counts(comp)
}

/// Computes one record per unordered pair `{w, rc(w)}`, sorted by word.
pub fn pair_records(store: &CountStore, cfg: &PairConfig) -> Result<Vec<PairRecord>> {
    let k = store.k();
    let dmax = store.dmax();
    if dmax <= k {
        return Err(crate::Error::config(format!("dmax={dmax} must exceed k={k}")));
    }
    cfg.peaks.validate_for(dmax - k)?;
    if cfg.eps.is_nan() || cfg.eps <= 0.0 {
        return Err(crate::Error::config("eps must be positive"));
    }
    let base = effective_base_freqs(store, cfg)?;

    let words: Vec<WordId> = store.words().filter(|w| *w <= w.reverse_complement()).collect();
    let records = words
        .par_iter()
        .map(|&w| build_record(store, cfg, &base, w))
        .collect::<Result<Vec<_>>>()?;
    Ok(records)
}

fn build_record(store: &CountStore, cfg: &PairConfig, base: &BaseFrequencies, w: WordId) -> Result<PairRecord> {
    let (k, dmax) = (store.k(), store.dmax());
    let rc = w.reverse_complement();
    let n_w = store.occurrences(w);
    let n_wbar = store.occurrences(rc);
    let mut rec = PairRecord {
        word: w,
        rc,
        n_w,
        n_wbar,
        apr: apr(n_w, n_wbar),
        d_e: 0.0,
        d_j: 0.0,
        d_p: 0.0,
        rs: 0.0,
        flags: PairFlags {
            palindrome: w == rc,
            low_frequency: n_w.min(n_wbar) < cfg.min_freq,
            no_distribution: false,
        },
    };

    let observed = to_distribution(&store.histogram(w), k, dmax)
        .and_then(|f| Ok((f, to_distribution(&store.histogram(rc), k, dmax)?)));
    let reference = reference_distribution(&PatternAutomaton::new(w), base, dmax)
        .and_then(|g| Ok((g, reference_distribution(&PatternAutomaton::new(rc), base, dmax)?)));

    match (observed, reference) {
        (Ok((f_w, f_wbar)), Ok((g_w, g_wbar))) => {
            fill_measures(&mut rec, &f_w, &f_wbar, cfg)?;
            rec.rs = rs_score(&f_w, &f_wbar, &g_w, &g_wbar, &cfg.peaks)?;
        }
        (Ok((f_w, f_wbar)), Err(_)) => {
            fill_measures(&mut rec, &f_w, &f_wbar, cfg)?;
            rec.flags.no_distribution = true;
        }
        _ => rec.flags.no_distribution = true,
    }
    Ok(rec)
}

fn fill_measures(
    rec: &mut PairRecord,
    f_w: &DistanceDistribution,
    f_wbar: &DistanceDistribution,
    cfg: &PairConfig,
) -> Result<()> {
    rec.d_e = euclidean(f_w, f_wbar)?;
    rec.d_j = jeffreys(f_w, f_wbar, cfg.eps)?;
    rec.d_p = peak_dissimilarity(f_w, f_wbar, &cfg.peaks)?;
    Ok(())
}

/// Records that enter rankings, in word order.
pub fn ranked(records: &[PairRecord]) -> Vec<PairRecord> {
    records.iter().filter(|r| r.is_ranked()).cloned().collect()
}

/// Spearman matrix over [`Measure::COMPARED`]; entry `[i][j]` is `None`
/// when the correlation is undefined (constant input or fewer than two
/// records).
pub fn spearman_matrix(records: &[PairRecord]) -> [[Option<f64>; 4]; 4] {
    let cols: Vec<Vec<f64>> = Measure::COMPARED
        .iter()
        .map(|&m| records.iter().map(|r| r.value(m)).collect())
        .collect();
    let mut out = [[None; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = spearman(&cols[i], &cols[j]).ok();
        }
    }
    out
}
