//! FASTA input and ACGT segmentation.
//!
//! Each FASTA record is one chromosome. Any byte outside `ACGT` (after the
//! case policy is applied) acts as a separator, so a chromosome decomposes
//! into maximal ACGT runs ("segments"). Distances are never measured across
//! segment boundaries.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::Path;

use flate2::read::MultiGzDecoder;

use crate::error::{Error, Result};

/// Marker returned by [`SymbolTable::classify`] for separator bytes.
pub const SEPARATOR: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CasePolicy {
    /// `acgt` is folded to uppercase and kept.
    #[default]
    Fold,
    /// `acgt` is treated as masked sequence, i.e. as a separator.
    Mask,
}

impl CasePolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            CasePolicy::Fold => "fold",
            CasePolicy::Mask => "mask",
        }
    }
}

/// Byte -> 2-bit code lookup, `SEPARATOR` for everything else.
#[derive(Clone)]
pub struct SymbolTable([u8; 256]);

impl SymbolTable {
    pub fn new(policy: CasePolicy) -> Self {
        let mut table = [SEPARATOR; 256];
        for (code, &b) in b"ACGT".iter().enumerate() {
            table[b as usize] = code as u8;
            if policy == CasePolicy::Fold {
                table[b.to_ascii_lowercase() as usize] = code as u8;
            }
        }
        SymbolTable(table)
    }

    #[inline(always)]
    pub fn classify(&self, b: u8) -> u8 {
        self.0[b as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromosomeRecord {
    pub id: String,
    /// Total symbol count, separators included.
    pub length: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub chromosome_id: String,
    /// 0-based offset of the first symbol within the chromosome.
    pub offset: u64,
    /// Uppercase `ACGT` only.
    pub symbols: Vec<u8>,
}

impl Segment {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn end(&self) -> u64 {
        self.offset + self.symbols.len() as u64
    }
}

/// Streaming FASTA reader. Sequence data is handed out line by line, so a
/// chromosome never has to be held in memory.
pub struct FastaReader<R> {
    inner: R,
    line: Vec<u8>,
    pending_header: Option<String>,
    started: bool,
}

pub type BoxedFastaReader = FastaReader<Box<dyn BufRead + Send>>;

/// Opens a plain or gzip-compressed FASTA file (detected by magic bytes).
pub fn open_fasta(path: impl AsRef<Path>) -> Result<BoxedFastaReader> {
    let file = File::open(path.as_ref())?;
    Ok(FastaReader::new(decompress_if_gzip(file)?))
}

/// Wraps `source` in a gzip decoder when it starts with `1f 8b`.
pub fn decompress_if_gzip<R: Read + Send + 'static>(source: R) -> Result<Box<dyn BufRead + Send>> {
    let mut buffered = BufReader::with_capacity(1 << 16, source);
    let is_gzip = {
        let head = buffered.fill_buf()?;
        head.len() >= 2 && head[0] == 0x1f && head[1] == 0x8b
    };
    if is_gzip {
        Ok(Box::new(BufReader::with_capacity(
            1 << 16,
            MultiGzDecoder::new(buffered),
        )))
    } else {
        Ok(Box::new(buffered))
    }
}

impl<R: BufRead> FastaReader<R> {
    pub fn new(inner: R) -> Self {
        FastaReader {
            inner,
            line: Vec::with_capacity(256),
            pending_header: None,
            started: false,
        }
    }

    fn read_line(&mut self) -> io::Result<bool> {
        self.line.clear();
        let n = self.inner.read_until(b'\n', &mut self.line)?;
        while matches!(self.line.last(), Some(b'\n' | b'\r')) {
            self.line.pop();
        }
        Ok(n > 0)
    }

    fn parse_header(line: &[u8]) -> Result<String> {
        let text =
            std::str::from_utf8(&line[1..]).map_err(|_| Error::MalformedInput("header is not valid UTF-8".into()))?;
        let id = text.split_whitespace().next().unwrap_or("");
        if id.is_empty() {
            return Err(Error::MalformedInput("empty FASTA header".into()));
        }
        Ok(id.to_string())
    }

    /// Reads the next record, passing its sequence lines to `sink` with line
    /// breaks removed. Returns `None` at end of input.
    pub fn next_record_with<F>(&mut self, mut sink: F) -> Result<Option<ChromosomeRecord>>
    where
        F: FnMut(&[u8]),
    {
        if !self.started {
            self.started = true;
            loop {
                if !self.read_line()? {
                    return Ok(None);
                }
                if self.line.first() == Some(&b'>') {
                    self.pending_header = Some(Self::parse_header(&self.line)?);
                    break;
                }
                if !self.line.iter().all(u8::is_ascii_whitespace) {
                    return Err(Error::MalformedInput(
                        "sequence data before the first '>' header".into(),
                    ));
                }
            }
        }
        let Some(id) = self.pending_header.take() else {
            return Ok(None);
        };
        let mut length = 0u64;
        while self.read_line()? {
            if self.line.first() == Some(&b'>') {
                self.pending_header = Some(Self::parse_header(&self.line)?);
                break;
            }
            length += self.line.len() as u64;
            sink(&self.line);
        }
        Ok(Some(ChromosomeRecord { id, length }))
    }

    /// Reads the next record into memory.
    pub fn next_record(&mut self) -> Result<Option<(ChromosomeRecord, Vec<u8>)>> {
        let mut seq = Vec::new();
        let rec = self.next_record_with(|chunk| seq.extend_from_slice(chunk))?;
        Ok(rec.map(|r| (r, seq)))
    }
}

/// Parses a whole FASTA stream (plain or gzip) into memory.
pub fn parse_fasta<R: Read + Send + 'static>(source: R) -> Result<Vec<(ChromosomeRecord, Vec<u8>)>> {
    let mut reader = FastaReader::new(decompress_if_gzip(source)?);
    let mut out = Vec::new();
    while let Some(rec) = reader.next_record()? {
        out.push(rec);
    }
    Ok(out)
}

/// Incremental splitter: feed chromosome bytes in arbitrary chunks, receive
/// completed segments.
pub struct SegmentSplitter {
    table: SymbolTable,
    chromosome_id: String,
    position: u64,
    current: Option<Segment>,
}

impl SegmentSplitter {
    pub fn new(chromosome_id: &str, policy: CasePolicy) -> Self {
        SegmentSplitter {
            table: SymbolTable::new(policy),
            chromosome_id: chromosome_id.to_string(),
            position: 0,
            current: None,
        }
    }

    pub fn push<F: FnMut(Segment)>(&mut self, chunk: &[u8], emit: &mut F) {
        for &b in chunk {
            let code = self.table.classify(b);
            if code == SEPARATOR {
                if let Some(seg) = self.current.take() {
                    emit(seg);
                }
            } else {
                let seg = self.current.get_or_insert_with(|| Segment {
                    chromosome_id: self.chromosome_id.clone(),
                    offset: self.position,
                    symbols: Vec::new(),
                });
                seg.symbols.push(b"ACGT"[code as usize]);
            }
            self.position += 1;
        }
    }

    pub fn finish<F: FnMut(Segment)>(mut self, emit: &mut F) {
        if let Some(seg) = self.current.take() {
            emit(seg);
        }
    }
}

/// Splits a chromosome into its maximal ACGT runs.
pub fn segmentize(record: &ChromosomeRecord, symbols: &[u8], policy: CasePolicy) -> Vec<Segment> {
    let mut out = Vec::new();
    let mut emit = |s| out.push(s);
    let mut splitter = SegmentSplitter::new(&record.id, policy);
    splitter.push(symbols, &mut emit);
    splitter.finish(&mut emit);
    out
}
