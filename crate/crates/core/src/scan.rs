//! Sliding-window word counting with inter-occurrence distance histograms.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ingest::{CasePolicy, Segment, SymbolTable, SEPARATOR};
use crate::word::{check_k, word_count, WordId};

/// Maximal distance used when none is given.
pub const DEFAULT_DMAX: usize = 1000;

/// Read-only view of one word's histogram inside a [`CountStore`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceHistogram<'a> {
    /// `counts[d - 1]` is the number of consecutive-occurrence gaps of length `d`.
    pub counts: &'a [u32],
    pub occurrences: u64,
    /// Gaps longer than `dmax`.
    pub overflow: u64,
}

impl<'a> DistanceHistogram<'a> {
    pub fn new(counts: &'a [u32], occurrences: u64, overflow: u64) -> Self {
        DistanceHistogram {
            counts,
            occurrences,
            overflow,
        }
    }

    pub fn dmax(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, d: usize) -> u32 {
        if d == 0 || d > self.counts.len() {
            0
        } else {
            self.counts[d - 1]
        }
    }

    pub fn tallied_gaps(&self) -> u64 {
        self.counts.iter().map(|&c| u64::from(c)).sum::<u64>() + self.overflow
    }
}

/// Where a store's counts came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Provenance {
    pub inputs: BTreeSet<String>,
    pub segments: u64,
}

/// Dense per-word counts for every word of length `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountStore {
    k: usize,
    dmax: usize,
    counts: Vec<u32>,
    occurrences: Vec<u64>,
    overflow: Vec<u64>,
    bases: [u64; 4],
    pub provenance: Provenance,
}

impl CountStore {
    pub fn new(k: usize, dmax: usize) -> Result<Self> {
        check_k(k)?;
        if dmax == 0 {
            return Err(Error::config("dmax must be positive"));
        }
        let words = word_count(k);
        Ok(CountStore {
            k,
            dmax,
            counts: vec![0; words * dmax],
            occurrences: vec![0; words],
            overflow: vec![0; words],
            bases: [0; 4],
            provenance: Provenance::default(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dmax(&self) -> usize {
        self.dmax
    }

    pub fn word_count(&self) -> usize {
        self.occurrences.len()
    }

    pub fn words(&self) -> impl Iterator<Item = WordId> + '_ {
        (0..self.word_count() as u32).map(move |c| WordId::from_raw(self.k, c))
    }

    pub fn histogram(&self, word: WordId) -> DistanceHistogram<'_> {
        let w = word.code() as usize;
        DistanceHistogram {
            counts: &self.counts[w * self.dmax..(w + 1) * self.dmax],
            occurrences: self.occurrences[w],
            overflow: self.overflow[w],
        }
    }

    pub fn occurrences(&self, word: WordId) -> u64 {
        self.occurrences[word.code() as usize]
    }

    pub fn total_occurrences(&self) -> u64 {
        self.occurrences.iter().sum()
    }

    /// ACGT symbol counts over all scanned segments.
    pub fn base_counts(&self) -> [u64; 4] {
        self.bases
    }

    pub fn set_base_counts(&mut self, bases: [u64; 4]) {
        self.bases = bases;
    }

    pub fn is_empty(&self) -> bool {
        self.occurrences.iter().all(|&n| n == 0)
    }

    pub(crate) fn set_word(&mut self, code: usize, occurrences: u64, overflow: u64) {
        self.occurrences[code] = occurrences;
        self.overflow[code] = overflow;
    }

    pub(crate) fn set_count(&mut self, code: usize, d: usize, count: u32) {
        self.counts[code * self.dmax + d - 1] = count;
    }

    pub fn ensure_config(&self, k: usize, dmax: usize) -> Result<()> {
        if self.k != k || self.dmax != dmax {
            return Err(Error::config(format!(
                "store has k={} dmax={}, expected k={k} dmax={dmax}",
                self.k, self.dmax
            )));
        }
        Ok(())
    }
}

/// Element-wise sum of two stores with equal `(k, dmax)`.
pub fn merge_stores(a: &CountStore, b: &CountStore) -> Result<CountStore> {
    let mut out = a.clone();
    merge_into(&mut out, b)?;
    Ok(out)
}

pub fn merge_into(acc: &mut CountStore, other: &CountStore) -> Result<()> {
    acc.ensure_config(other.k, other.dmax)?;
    for (x, &y) in acc.counts.iter_mut().zip(&other.counts) {
        *x = x
            .checked_add(y)
            .ok_or_else(|| Error::store("distance counter overflow during merge"))?;
    }
    for (x, &y) in acc.occurrences.iter_mut().zip(&other.occurrences) {
        *x += y;
    }
    for (x, &y) in acc.overflow.iter_mut().zip(&other.overflow) {
        *x += y;
    }
    for (x, &y) in acc.bases.iter_mut().zip(&other.bases) {
        *x += y;
    }
    acc.provenance.inputs.extend(other.provenance.inputs.iter().cloned());
    acc.provenance.segments += other.provenance.segments;
    Ok(())
}

/// Single-pass scanner state. Positions are global across everything fed
/// to one scanner; a gap is only tallied when the previous occurrence lies
/// in the current segment.
pub struct Scanner {
    k: usize,
    dmax: usize,
    mask: u32,
    table: SymbolTable,
    /// 1 + start position of the last occurrence of each word; 0 = none.
    last: Vec<u64>,
    code: u32,
    run: usize,
    pos: u64,
    seg_start: u64,
}

impl Scanner {
    pub fn new(k: usize, dmax: usize, policy: CasePolicy) -> Result<Self> {
        check_k(k)?;
        Ok(Scanner {
            k,
            dmax,
            mask: (word_count(k) - 1) as u32,
            table: SymbolTable::new(policy),
            last: vec![0; word_count(k)],
            code: 0,
            run: 0,
            pos: 0,
            seg_start: 0,
        })
    }

    /// Feeds raw chromosome bytes; separators end the current segment.
    pub fn feed(&mut self, store: &mut CountStore, bytes: &[u8]) {
        debug_assert!(store.k == self.k && store.dmax == self.dmax);
        let k = self.k as u64;
        let dmax = self.dmax;
        let mask = self.mask;
        let table = &self.table;
        let last = &mut self.last[..];
        let counts = &mut store.counts[..];
        let occurrences = &mut store.occurrences[..];
        let overflow = &mut store.overflow[..];
        let mut bases = store.bases;
        let mut segments = 0u64;

        let mut code = self.code;
        let mut run = self.run as u64;
        let mut pos = self.pos;
        let mut seg_start = self.seg_start;

        for &b in bytes {
            let c = table.classify(b);
            if c == SEPARATOR {
                run = 0;
                pos += 1;
                continue;
            }
            if run == 0 {
                seg_start = pos;
                segments += 1;
            }
            bases[c as usize] += 1;
            code = ((code << 2) | u32::from(c)) & mask;
            run += 1;
            pos += 1;
            if run >= k {
                let w = code as usize;
                let start1 = pos - k + 1;
                occurrences[w] += 1;
                let prev = last[w];
                if prev > seg_start {
                    let d = (start1 - prev) as usize;
                    if d <= dmax {
                        counts[w * dmax + d - 1] += 1;
                    } else {
                        overflow[w] += 1;
                    }
                }
                last[w] = start1;
            }
        }

        store.bases = bases;
        store.provenance.segments += segments;
        self.code = code;
        self.run = run as usize;
        self.pos = pos;
        self.seg_start = seg_start;
    }

    /// Ends the current segment (e.g. at a chromosome boundary).
    pub fn break_segment(&mut self) {
        self.run = 0;
    }

    /// Scans one segment as a unit, independent of what was fed before.
    pub fn scan_segment(&mut self, store: &mut CountStore, segment: &[u8]) {
        self.break_segment();
        self.feed(store, segment);
        self.break_segment();
    }
}

/// Scans a single segment into `store`.
pub fn scan_segment(segment: &Segment, k: usize, dmax: usize, store: &mut CountStore) -> Result<()> {
    store.ensure_config(k, dmax)?;
    if segment.symbols.iter().any(|b| !b"ACGT".contains(b)) {
        return Err(Error::Argument("segment contains non-ACGT symbols".into()));
    }
    let mut scanner = Scanner::new(k, dmax, CasePolicy::Fold)?;
    scanner.scan_segment(store, &segment.symbols);
    Ok(())
}
