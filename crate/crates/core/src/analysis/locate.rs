use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::ingest::{CasePolicy, FastaReader, SymbolTable, SEPARATOR};
use crate::word::WordId;

/// Positions `p` where `word` occurs at `p` and next occurs at `p + d_star`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FavoredSites {
    pub word: WordId,
    pub d_star: usize,
    /// Per chromosome, in input order, 0-based start positions.
    pub chromosomes: Vec<(String, Vec<u64>)>,
}

impl FavoredSites {
    pub fn total(&self) -> usize {
        self.chromosomes.iter().map(|(_, p)| p.len()).sum()
    }

    /// BED rows spanning both occurrences: `[p, p + d_star + k)`.
    pub fn write_bed<W: Write>(&self, mut out: W) -> Result<()> {
        let span = (self.d_star + self.word.k()) as u64;
        for (chrom, positions) in &self.chromosomes {
            for &p in positions {
                writeln!(out, "{chrom}\t{p}\t{}\t{}|{}", p + span, self.word, self.d_star)?;
            }
        }
        out.flush()?;
        Ok(())
    }
}

/// Rescans a FASTA source and records where `word` recurs at exactly
/// `d_star`. Distances never span separators.
pub fn locate_favored<R: BufRead>(
    reader: &mut FastaReader<R>,
    word: WordId,
    d_star: usize,
    dmax: usize,
    policy: CasePolicy,
) -> Result<FavoredSites> {
    let k = word.k();
    if d_star <= k {
        return Err(Error::Argument(format!(
            "distance {d_star} must exceed the word length {k}"
        )));
    }
    if d_star > dmax {
        return Err(Error::config(format!("distance {d_star} exceeds dmax={dmax}")));
    }
    let table = SymbolTable::new(policy);
    let mask = (1u32 << (2 * k)).wrapping_sub(1);
    let target = word.code();
    let mut chromosomes = Vec::new();

    loop {
        let mut hits = Vec::new();
        let mut pos = 0u64;
        let mut run = 0usize;
        let mut code = 0u32;
        let mut last: Option<u64> = None;
        let rec = reader.next_record_with(|chunk| {
            for &b in chunk {
                let c = table.classify(b);
                pos += 1;
                if c == SEPARATOR {
                    run = 0;
                    last = None;
                    continue;
                }
                code = ((code << 2) | u32::from(c)) & mask;
                run += 1;
                if run >= k && code == target {
                    let start = pos - k as u64;
                    if last == Some(start.wrapping_sub(d_star as u64)) && start >= d_star as u64 {
                        hits.push(start - d_star as u64);
                    }
                    last = Some(start);
                }
            }
        })?;
        match rec {
            Some(r) => chromosomes.push((r.id, hits)),
            None => break,
        }
    }
    Ok(FavoredSites {
        word,
        d_star,
        chromosomes,
    })
}
