//! Report tables written by the `report` stage.
//!
//! Every file starts with `#`-prefixed metadata (tool version and the
//! analysis configuration) followed by one column-header line.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::analysis::{
    classify_pairs, effective_base_freqs, pair_records, percentile_select, rank_similar_unexpected, ranked,
    spearman_matrix, top_overlap, ClassCounts, Measure, PairRecord, RankTable, Side,
};
use crate::dissim::to_distribution;
use crate::error::{Error, Result};
use crate::pipeline::{with_threads, RunConfig};
use crate::refmodel::{first_return_probabilities, reference_distribution, BaseFrequencies, PatternAutomaton};
use crate::scan::CountStore;
use crate::word::{encode_word, WordId};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const REPORT_FILES: [&str; 8] = [
    "pairs.tsv",
    "palindromes.tsv",
    "spearman.tsv",
    "overlap.tsv",
    "top_dp.tsv",
    "similar_unexpected.tsv",
    "classes.tsv",
    "scatter_apr_dp.tsv",
];

const PAIR_COLUMNS: &str = "word\trc\tn_w\tn_wbar\tapr\td_e\td_j\td_p\trs\tlow_freq\tno_dist";

#[derive(Debug, Clone, PartialEq)]
pub struct ReportSummary {
    pub pairs: usize,
    pub palindromes: usize,
    pub ranked: usize,
    pub files: Vec<PathBuf>,
}

struct Table {
    out: BufWriter<File>,
    path: PathBuf,
}

impl Table {
    fn create(dir: &Path, name: &str, meta: &[String], columns: &str) -> Result<Self> {
        let path = dir.join(name);
        let mut out = BufWriter::new(File::create(&path)?);
        writeln!(out, "#genodist\t{TOOL_VERSION}")?;
        for line in meta {
            writeln!(out, "{line}")?;
        }
        writeln!(out, "{columns}")?;
        Ok(Table { out, path })
    }

    fn row(&mut self, fields: &[String]) -> Result<()> {
        writeln!(self.out, "{}", fields.join("\t"))?;
        Ok(())
    }

    fn finish(mut self) -> Result<PathBuf> {
        self.out.flush()?;
        Ok(self.path)
    }
}

fn flag(b: bool) -> String {
    u8::from(b).to_string()
}

fn pair_row(r: &PairRecord) -> Vec<String> {
    vec![
        r.word.to_text(),
        r.rc.to_text(),
        r.n_w.to_string(),
        r.n_wbar.to_string(),
        r.apr.to_string(),
        r.d_e.to_string(),
        r.d_j.to_string(),
        r.d_p.to_string(),
        r.rs.to_string(),
        flag(r.flags.low_frequency),
        flag(r.flags.no_distribution),
    ]
}

fn base_line(b: &BaseFrequencies) -> String {
    let p = b.probs();
    format!("#base_freq\tA={}\tC={}\tG={}\tT={}", p[0], p[1], p[2], p[3])
}

/// Runs the pair analysis on `store` and writes every report table to
/// `cfg.out_dir`. `cfg.k` and `cfg.dmax` must match the store.
pub fn write_report(store: &CountStore, cfg: &RunConfig) -> Result<ReportSummary> {
    cfg.validate()?;
    store
        .ensure_config(cfg.k, cfg.dmax)
        .map_err(|e| Error::store(e.to_string()))?;
    fs::create_dir_all(&cfg.out_dir)?;

    let pair_cfg = cfg.pair_config();
    let base = effective_base_freqs(store, &pair_cfg)?;
    let records = with_threads(cfg.threads, || pair_records(store, &pair_cfg))??;
    let ranked = ranked(&records);
    let pct = &cfg.percentiles;

    let mut meta = vec![format!("#config\t{}", cfg.metadata_fields().join("\t"))];
    meta.push(base_line(&base));
    meta.push(format!(
        "#pairs\ttotal={}\tpalindromes={}\tranked={}",
        records.iter().filter(|r| !r.flags.palindrome).count(),
        records.iter().filter(|r| r.flags.palindrome).count(),
        ranked.len()
    ));

    let dir = cfg.out_dir.as_path();
    let mut files = Vec::new();

    let mut t = Table::create(dir, "pairs.tsv", &meta, PAIR_COLUMNS)?;
    for r in records.iter().filter(|r| !r.flags.palindrome) {
        t.row(&pair_row(r))?;
    }
    files.push(t.finish()?);

    let mut t = Table::create(dir, "palindromes.tsv", &meta, PAIR_COLUMNS)?;
    for r in records.iter().filter(|r| r.flags.palindrome) {
        t.row(&pair_row(r))?;
    }
    files.push(t.finish()?);

    let names: Vec<&str> = Measure::COMPARED.iter().map(|m| m.name()).collect();
    let mut t = Table::create(dir, "spearman.tsv", &meta, &format!("measure\t{}", names.join("\t")))?;
    let matrix = spearman_matrix(&ranked);
    for (i, row) in matrix.iter().enumerate() {
        let mut fields = vec![names[i].to_string()];
        fields.extend(row.iter().map(|v| v.map_or("NA".to_string(), |x| x.to_string())));
        t.row(&fields)?;
    }
    files.push(t.finish()?);

    let mut t = Table::create(dir, "overlap.tsv", &meta, "top_fraction\tset_size\tR_EJ\tR_EP\tR_JP")?;
    let col = |m: Measure| ranked.iter().map(|r| r.value(m)).collect::<Vec<f64>>();
    let (de, dj, dp) = (col(Measure::Euclidean), col(Measure::Jeffreys), col(Measure::Peak));
    for &q in &pct.top_fractions {
        let cell = |a: &[f64], b: &[f64]| top_overlap(a, b, q).map_or("NA".to_string(), |x| x.to_string());
        let size = (q * ranked.len() as f64).ceil() as usize;
        t.row(&[
            q.to_string(),
            size.to_string(),
            cell(&de, &dj),
            cell(&de, &dp),
            cell(&dj, &dp),
        ])?;
    }
    files.push(t.finish()?);

    let dp_table = RankTable::new(&ranked, Measure::Peak, &[pct.similar, pct.top_dp]);
    let mut top_meta = meta.clone();
    if let Some(thr) = dp_table.threshold(pct.top_dp) {
        top_meta.push(format!("#threshold\tD_P\tq={}\tvalue={thr}", pct.top_dp));
    }
    let mut t = Table::create(dir, "top_dp.tsv", &top_meta, "word\trc\td_p\tapr\tn_w\tn_wbar")?;
    for r in percentile_select(&ranked, Measure::Peak, pct.top_dp, Side::Above) {
        t.row(&[
            r.word.to_text(),
            r.rc.to_text(),
            r.d_p.to_string(),
            r.apr.to_string(),
            r.n_w.to_string(),
            r.n_wbar.to_string(),
        ])?;
    }
    files.push(t.finish()?);

    let mut sim_meta = meta.clone();
    if let Some(thr) = dp_table.threshold(pct.similar) {
        sim_meta.push(format!("#threshold\tD_P\tq={}\tvalue={thr}", pct.similar));
    }
    let mut t = Table::create(dir, "similar_unexpected.tsv", &sim_meta, "word\trc\td_p\trs\tapr")?;
    for r in rank_similar_unexpected(&ranked, pct.similar) {
        t.row(&[
            r.word.to_text(),
            r.rc.to_text(),
            r.d_p.to_string(),
            r.rs.to_string(),
            r.apr.to_string(),
        ])?;
    }
    files.push(t.finish()?);

    let classes = classify_pairs(&ranked, pct.class_cut, pct.class_extreme);
    let counts = ClassCounts::of(&classes);
    let mut class_meta = meta.clone();
    class_meta.push(format!(
        "#classes\tc1={}\tc2={}\tc3={}\tc4={}",
        counts.c1, counts.c2, counts.c3, counts.c4
    ));
    let mut t = Table::create(
        dir,
        "classes.tsv",
        &class_meta,
        "word\tapr\td_p\tclass\tapr_extreme\tdp_extreme",
    )?;
    for c in &classes {
        t.row(&[
            c.record.word.to_text(),
            c.record.apr.to_string(),
            c.record.d_p.to_string(),
            c.class.to_string(),
            flag(c.apr_extreme),
            flag(c.dp_extreme),
        ])?;
    }
    files.push(t.finish()?);

    let mut t = Table::create(dir, "scatter_apr_dp.tsv", &meta, "word\tapr\td_p")?;
    for r in &ranked {
        t.row(&[r.word.to_text(), r.apr.to_string(), r.d_p.to_string()])?;
    }
    files.push(t.finish()?);

    Ok(ReportSummary {
        pairs: records.iter().filter(|r| !r.flags.palindrome).count(),
        palindromes: records.iter().filter(|r| r.flags.palindrome).count(),
        ranked: ranked.len(),
        files,
    })
}

/// Writes `dist_<w>.tsv` (columns `d`, `frequency`) for `word` and its
/// reverse complement.
pub fn dump_distributions(store: &CountStore, word: &str, cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let w = encode_word(word, store.k())?;
    let mut words = vec![w];
    if w.reverse_complement() != w {
        words.push(w.reverse_complement());
    }
    fs::create_dir_all(&cfg.out_dir)?;
    let meta = vec![format!("#config\t{}", cfg.metadata_fields().join("\t"))];
    let mut out = Vec::new();
    for w in words {
        let dist = to_distribution(&store.histogram(w), store.k(), store.dmax())?;
        let mut t = Table::create(&cfg.out_dir, &format!("dist_{w}.tsv"), &meta, "d\tfrequency")?;
        for d in dist.first_distance()..=dist.dmax() {
            t.row(&[d.to_string(), dist.freq(d).to_string()])?;
        }
        out.push(t.finish()?);
    }
    Ok(out)
}

/// Histogram rows of one word: `d`, `count`, normalized frequency on the
/// retained domain (empty when the word has no retained distances).
pub fn write_histogram<W: Write>(store: &CountStore, word: WordId, mut out: W) -> Result<()> {
    let h = store.histogram(word);
    let dist = to_distribution(&h, store.k(), store.dmax()).ok();
    writeln!(
        out,
        "#word\t{word}\toccurrences={}\toverflow={}",
        h.occurrences, h.overflow
    )?;
    writeln!(out, "d\tcount\tfrequency")?;
    for d in 1..=store.dmax() {
        let c = h.count(d);
        if c == 0 {
            continue;
        }
        let f = dist.as_ref().map_or(String::new(), |x| {
            if d > store.k() {
                x.freq(d).to_string()
            } else {
                String::new()
            }
        });
        writeln!(out, "{d}\t{c}\t{f}")?;
    }
    out.flush()?;
    Ok(())
}

/// Model distribution of `word`: raw first-return probabilities and the
/// restricted, renormalized reference.
pub fn write_reference<W: Write>(word: WordId, base: &BaseFrequencies, dmax: usize, mut out: W) -> Result<()> {
    let automaton = PatternAutomaton::new(word);
    let raw = first_return_probabilities(&automaton, base, dmax);
    let reference = reference_distribution(&automaton, base, dmax)?;
    writeln!(out, "{}", base_line(base))?;
    writeln!(
        out,
        "#word\t{word}\tdmax={dmax}\ttail={}",
        1.0 - raw.iter().sum::<f64>()
    )?;
    writeln!(out, "d\tprobability\treference")?;
    for (i, g) in raw.iter().enumerate() {
        let d = i + 1;
        writeln!(
            out,
            "{d}\t{g}\t{}",
            if d > word.k() {
                reference.freq(d).to_string()
            } else {
                String::new()
            }
        )?;
    }
    out.flush()?;
    Ok(())
}
