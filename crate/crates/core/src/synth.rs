//! Deterministic synthetic genomes with planted periodic motifs.

use std::io::Write;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::word::ALPHABET;

/// A tandem array: `unit` repeated `copies` times, inserted `arrays` times
/// per chromosome at random positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedMotif {
    pub unit: String,
    pub copies: usize,
    pub arrays: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub seed: u64,
    pub chromosome_lengths: Vec<usize>,
    pub base_freqs: [f64; 4],
    /// Expected number of N runs per megabase.
    pub n_runs_per_mb: f64,
    pub max_n_run: usize,
    pub motifs: Vec<PlantedMotif>,
}

impl SynthSpec {
    /// About 10 Mbp over three chromosomes, with one motif planted together
    /// with its reverse complement and one planted alone.
    pub fn ten_megabase(seed: u64) -> Self {
        SynthSpec {
            seed,
            chromosome_lengths: vec![4_000_000, 3_500_000, 2_500_000],
            base_freqs: [0.3, 0.2, 0.2, 0.3],
            n_runs_per_mb: 20.0,
            max_n_run: 5_000,
            motifs: vec![
                PlantedMotif {
                    unit: "GATTACAGCCTAGGCATCAG".into(),
                    copies: 12,
                    arrays: 40,
                },
                PlantedMotif {
                    unit: reverse_complement_text("GATTACAGCCTAGGCATCAG"),
                    copies: 12,
                    arrays: 40,
                },
                PlantedMotif {
                    unit: "CCATGGTTCAGAGCGGTATCCTAAGTC".into(),
                    copies: 10,
                    arrays: 60,
                },
            ],
        }
    }
}

pub fn reverse_complement_text(s: &str) -> String {
    s.bytes()
        .rev()
        .map(|b| match b.to_ascii_uppercase() {
            b'A' => 'T',
            b'C' => 'G',
            b'G' => 'C',
            b'T' => 'A',
            other => other as char,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthChromosome {
    pub id: String,
    pub sequence: Vec<u8>,
}

pub fn generate(spec: &SynthSpec) -> Vec<SynthChromosome> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let bases = WeightedIndex::new(spec.base_freqs).expect("base frequencies must be positive");
    let mut out = Vec::with_capacity(spec.chromosome_lengths.len());
    for (i, &len) in spec.chromosome_lengths.iter().enumerate() {
        let mut seq: Vec<u8> = (0..len).map(|_| ALPHABET[bases.sample(&mut rng)]).collect();
        for m in &spec.motifs {
            let array: Vec<u8> = m.unit.as_bytes().repeat(m.copies);
            if array.len() >= len {
                continue;
            }
            for _ in 0..m.arrays {
                let at = rng.gen_range(0..len - array.len());
                seq[at..at + array.len()].copy_from_slice(&array);
            }
        }
        let runs = (spec.n_runs_per_mb * len as f64 / 1e6).round() as usize;
        for _ in 0..runs {
            let run = rng.gen_range(1..=spec.max_n_run.max(1)).min(len);
            let at = rng.gen_range(0..=len - run);
            seq[at..at + run].fill(b'N');
        }
        out.push(SynthChromosome {
            id: format!("chr{}", i + 1),
            sequence: seq,
        });
    }
    out
}

pub fn write_fasta<W: Write>(mut w: W, chromosomes: &[SynthChromosome], line_width: usize) -> Result<()> {
    for c in chromosomes {
        writeln!(w, ">{}", c.id)?;
        for line in c.sequence.chunks(line_width.max(1)) {
            w.write_all(line)?;
            w.write_all(b"\n")?;
        }
    }
    w.flush()?;
    Ok(())
}
