//! Versioned TSV persistence for [`CountStore`].
//!
//! ```text
//! #genodist-store v1 k=<k> dmax=<dmax>
//! #bases  <A> <C> <G> <T>
//! #segments  <n>
//! #input  <id>            (one line per input)
//! <word>  <occurrences>  <overflow>
//! <word>  <d>  <count>    (one per nonzero distance, d ascending)
//! ...
//! #end  <data rows>
//! ```
//!
//! Words appear in code (= lexicographic) order. The first row of a word is
//! its summary row, the following rows for the same word are distance rows.
//! Words that never occur are omitted.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::scan::CountStore;
use crate::word::{encode_word, WordId};

pub const STORE_MAGIC: &str = "#genodist-store";
pub const STORE_VERSION: &str = "v1";

pub fn write_store<W: Write>(store: &CountStore, mut out: W) -> Result<()> {
    writeln!(
        out,
        "{STORE_MAGIC} {STORE_VERSION} k={} dmax={}",
        store.k(),
        store.dmax()
    )?;
    let b = store.base_counts();
    writeln!(out, "#bases\t{}\t{}\t{}\t{}", b[0], b[1], b[2], b[3])?;
    writeln!(out, "#segments\t{}", store.provenance.segments)?;
    for input in &store.provenance.inputs {
        writeln!(out, "#input\t{input}")?;
    }
    let mut rows = 0u64;
    for word in store.words() {
        let h = store.histogram(word);
        if h.occurrences == 0 && h.tallied_gaps() == 0 {
            continue;
        }
        let text = word.to_text();
        writeln!(out, "{text}\t{}\t{}", h.occurrences, h.overflow)?;
        rows += 1;
        for (i, &c) in h.counts.iter().enumerate() {
            if c > 0 {
                writeln!(out, "{text}\t{}\t{c}", i + 1)?;
                rows += 1;
            }
        }
    }
    writeln!(out, "#end\t{rows}")?;
    out.flush()?;
    Ok(())
}

/// Writes via a temporary sibling file that is renamed into place, so a
/// failed write never leaves a partial store behind.
pub fn save_store(store: &CountStore, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let tmp = path.with_extension("tmp-partial");
    let result = File::create(&tmp)
        .map_err(Error::from)
        .and_then(|f| write_store(store, BufWriter::new(f)))
        .and_then(|_| fs::rename(&tmp, path).map_err(Error::from));
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

pub fn load_store(path: impl AsRef<Path>) -> Result<CountStore> {
    read_store(BufReader::new(File::open(path.as_ref())?))
}

fn parse_num<T: std::str::FromStr>(field: &str, line_no: usize) -> Result<T> {
    field
        .parse()
        .map_err(|_| Error::store(format!("line {line_no}: expected integer, found {field:?}")))
}

fn parse_header(line: &str) -> Result<(usize, usize)> {
    let mut parts = line.split(' ');
    if parts.next() != Some(STORE_MAGIC) {
        return Err(Error::store("missing store header"));
    }
    let version = parts.next().unwrap_or("");
    if version != STORE_VERSION {
        return Err(Error::StoreVersion(version.to_string()));
    }
    let mut k = None;
    let mut dmax = None;
    for p in parts {
        match p.split_once('=') {
            Some(("k", v)) => k = Some(parse_num(v, 1)?),
            Some(("dmax", v)) => dmax = Some(parse_num(v, 1)?),
            _ => return Err(Error::store(format!("unexpected header field {p:?}"))),
        }
    }
    match (k, dmax) {
        (Some(k), Some(d)) => Ok((k, d)),
        _ => Err(Error::store("header lacks k or dmax")),
    }
}

pub fn read_store<R: Read>(input: R) -> Result<CountStore> {
    let reader = BufReader::new(input);
    let mut lines = reader.lines().enumerate();

    let header = match lines.next() {
        Some((_, l)) => l?,
        None => return Err(Error::store("empty store file")),
    };
    let (k, dmax) = parse_header(&header)?;
    let mut store = CountStore::new(k, dmax).map_err(|e| Error::store(e.to_string()))?;

    let mut rows = 0u64;
    let mut ended = false;
    let mut current: Option<(WordId, usize, u64)> = None;
    let mut bases = [0u64; 4];

    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line?;
        if ended {
            return Err(Error::store(format!("line {line_no}: data after end marker")));
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if let Some(tag) = fields[0].strip_prefix('#') {
            match (tag, fields.len()) {
                ("bases", 5) => {
                    for (b, f) in bases.iter_mut().zip(&fields[1..]) {
                        *b = parse_num(f, line_no)?;
                    }
                }
                ("segments", 2) => store.provenance.segments = parse_num(fields[1], line_no)?,
                ("input", 2) => {
                    store.provenance.inputs.insert(fields[1].to_string());
                }
                ("end", 2) => {
                    let declared: u64 = parse_num(fields[1], line_no)?;
                    if declared != rows {
                        return Err(Error::store(format!(
                            "end marker declares {declared} rows, found {rows}"
                        )));
                    }
                    ended = true;
                }
                _ => return Err(Error::store(format!("line {line_no}: unknown metadata {line:?}"))),
            }
            continue;
        }
        if fields.len() != 3 {
            return Err(Error::store(format!(
                "line {line_no}: expected 3 fields, found {}",
                fields.len()
            )));
        }
        let word = encode_word(fields[0], k).map_err(|e| Error::store(format!("line {line_no}: {e}")))?;
        let a: u64 = parse_num(fields[1], line_no)?;
        let b: u64 = parse_num(fields[2], line_no)?;
        rows += 1;
        match current {
            Some((w, ref mut last_d, ref mut tally)) if w == word => {
                let d = a as usize;
                if d <= *last_d || d == 0 || d > dmax {
                    return Err(Error::store(format!(
                        "line {line_no}: distance {d} out of order or range"
                    )));
                }
                let count = u32::try_from(b).map_err(|_| Error::store(format!("line {line_no}: count too large")))?;
                store.set_count(word.code() as usize, d, count);
                *last_d = d;
                *tally += b;
            }
            _ => {
                if let Some((prev, _, tally)) = current {
                    check_balance(&store, prev, tally)?;
                    if word <= prev {
                        return Err(Error::store(format!("line {line_no}: words out of order")));
                    }
                }
                store.set_word(word.code() as usize, a, b);
                current = Some((word, 0, b));
            }
        }
    }
    if !ended {
        return Err(Error::store("truncated store file (no end marker)"));
    }
    if let Some((prev, _, tally)) = current {
        check_balance(&store, prev, tally)?;
    }
    store.set_base_counts(bases);
    Ok(store)
}

fn check_balance(store: &CountStore, word: WordId, tallied: u64) -> Result<()> {
    if tallied > store.occurrences(word) {
        return Err(Error::store(format!(
            "{word}: {tallied} gaps exceed {} occurrences",
            store.occurrences(word)
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::Segment;
    use crate::scan::scan_segment;

    fn sample() -> CountStore {
        let mut s = CountStore::new(2, 10).unwrap();
        let seg = Segment {
            chromosome_id: "c".into(),
            offset: 0,
            symbols: b"ACGTCGATCCGTGCGCGAAAAAAAAAAAAAAAAAAAAAAAAAAACG".to_vec(),
        };
        scan_segment(&seg, 2, 10, &mut s).unwrap();
        s.provenance.inputs.insert("fixture.fa".into());
        s.set_base_counts([5, 6, 7, 8]);
        s
    }

    fn to_bytes(s: &CountStore) -> Vec<u8> {
        let mut buf = Vec::new();
        write_store(s, &mut buf).unwrap();
        buf
    }

    #[test]
    fn round_trip() {
        let s = sample();
        let back = read_store(&to_bytes(&s)[..]).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn round_trip_through_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.tsv");
        let s = sample();
        save_store(&s, &path).unwrap();
        assert_eq!(load_store(&path).unwrap(), s);
        assert!(!dir.path().join("s.tmp-partial").exists());
    }

    #[test]
    fn empty_store_has_no_rows() {
        let s = CountStore::new(3, 7).unwrap();
        let bytes = to_bytes(&s);
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.lines().all(|l| l.starts_with('#')));
        assert_eq!(read_store(&bytes[..]).unwrap(), s);
    }

    #[test]
    fn header_format() {
        let text = String::from_utf8(to_bytes(&sample())).unwrap();
        assert!(text.starts_with("#genodist-store v1 k=2 dmax=10\n"));
        assert!(text.contains("\nCG\t6\t1\nCG\t2\t1\nCG\t3\t1\n"));
    }

    #[test]
    fn version_mismatch() {
        let text = "#genodist-store v9 k=2 dmax=10\n#end\t0\n";
        assert!(matches!(read_store(text.as_bytes()), Err(Error::StoreVersion(v)) if v == "v9"));
    }

    #[test]
    fn truncated_file() {
        let bytes = to_bytes(&sample());
        let text = String::from_utf8(bytes).unwrap();
        let cut: String = text.lines().take(6).map(|l| format!("{l}\n")).collect();
        assert!(matches!(read_store(cut.as_bytes()), Err(Error::Store(_))));
        let half = &text.as_bytes()[..text.len() - 3];
        assert!(read_store(half).is_err());
    }

    #[test]
    fn non_integer_field() {
        let text = "#genodist-store v1 k=2 dmax=10\nCG\tfive\t0\n#end\t1\n";
        assert!(matches!(read_store(text.as_bytes()), Err(Error::Store(_))));
    }

    #[test]
    fn out_of_range_distance() {
        let text = "#genodist-store v1 k=2 dmax=10\nCG\t3\t0\nCG\t11\t1\n#end\t2\n";
        assert!(read_store(text.as_bytes()).is_err());
    }
}
