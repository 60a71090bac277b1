//! Exact inter-occurrence distance distribution of a word in an i.i.d.
//! nucleotide sequence.
//!
//! A KMP-style automaton tracks the longest word prefix matched so far.
//! After an occurrence the automaton sits in the longest-border state;
//! propagating the state distribution one symbol at a time and absorbing
//! at the accept state yields the probability that the next occurrence
//! starts exactly `d` positions later.

use crate::dissim::{peak_dissimilarity, DistanceDistribution, PeakConfig};
use crate::error::{Error, Result};
use crate::word::{parse_word, WordId};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseFrequencies([f64; 4]);

impl BaseFrequencies {
    pub fn new(p: [f64; 4]) -> Result<Self> {
        if p.iter().any(|&x| !x.is_finite() || x < 0.0) {
            return Err(Error::config("base frequencies must be non-negative"));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::config(format!("base frequencies sum to {total}, not 1")));
        }
        Ok(BaseFrequencies(p))
    }

    pub fn uniform() -> Self {
        BaseFrequencies([0.25; 4])
    }

    /// Maximum-likelihood estimate from symbol counts.
    pub fn from_counts(counts: [u64; 4]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::InsufficientData(
                "no nucleotides to estimate frequencies from".into(),
            ));
        }
        let t = total as f64;
        let mut p = counts.map(|c| c as f64 / t);
        // absorb rounding so the sum is 1 to machine precision
        let drift = 1.0 - p.iter().sum::<f64>();
        let i = (0..4).max_by(|&a, &b| p[a].total_cmp(&p[b])).unwrap_or(0);
        p[i] += drift;
        BaseFrequencies::new(p)
    }

    /// Parses `A,C,G,T` probabilities. Values are renormalized when they
    /// sum to within 1e-6 of one, so rounded inputs are accepted.
    pub fn parse(text: &str) -> Result<Self> {
        let vals: Vec<f64> = text
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::config(format!("cannot parse base frequencies {text:?}")))?;
        if vals.len() != 4 {
            return Err(Error::config("base frequencies need four values (A,C,G,T)"));
        }
        let total: f64 = vals.iter().sum();
        if (total - 1.0).abs() > 1e-6 {
            return Err(Error::config(format!("base frequencies sum to {total}, not 1")));
        }
        BaseFrequencies::new([vals[0] / total, vals[1] / total, vals[2] / total, vals[3] / total])
            .or_else(|_| BaseFrequencies::new([vals[0], vals[1], vals[2], 1.0 - vals[0] - vals[1] - vals[2]]))
    }

    pub fn probs(&self) -> [f64; 4] {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternAutomaton {
    word: WordId,
    /// `delta[s][c]` for states `0..=k`; row `k` (accept) equals the
    /// border-state row.
    delta: Vec<[u8; 4]>,
    border: usize,
}

impl PatternAutomaton {
    pub fn new(word: WordId) -> Self {
        let sym = word.symbols();
        let k = sym.len();
        // fail[i]: longest proper border of the prefix of length i.
        let mut fail = vec![0usize; k + 1];
        for i in 1..k {
            let mut j = fail[i];
            while j > 0 && sym[i] != sym[j] {
                j = fail[j];
            }
            fail[i + 1] = if sym[i] == sym[j] { j + 1 } else { 0 };
        }
        let mut delta = vec![[0u8; 4]; k + 1];
        for s in 0..=k {
            for c in 0..4u8 {
                delta[s][c as usize] = if s < k && sym[s] == c {
                    (s + 1) as u8
                } else if s == 0 {
                    0
                } else {
                    delta[fail[s]][c as usize]
                };
            }
        }
        PatternAutomaton {
            word,
            delta,
            border: fail[k],
        }
    }

    pub fn from_text(text: &str) -> Result<Self> {
        Ok(Self::new(parse_word(text)?))
    }

    pub fn word(&self) -> WordId {
        self.word
    }

    pub fn k(&self) -> usize {
        self.word.k()
    }

    /// State entered right after an occurrence: the longest proper border.
    pub fn post_match_state(&self) -> usize {
        self.border
    }

    pub fn accept_state(&self) -> usize {
        self.k()
    }

    pub fn transition(&self, state: usize, symbol: u8) -> usize {
        self.delta[state][symbol as usize] as usize
    }
}

pub fn build_automaton(word: &str) -> Result<PatternAutomaton> {
    PatternAutomaton::from_text(word)
}

/// `g[d - 1]` = probability that the next occurrence starts exactly `d`
/// positions after the previous one, for `d = 1..=dmax`.
pub fn first_return_probabilities(automaton: &PatternAutomaton, freqs: &BaseFrequencies, dmax: usize) -> Vec<f64> {
    let k = automaton.k();
    let p = freqs.probs();
    let mut cur = vec![0.0f64; k + 1];
    let mut next = vec![0.0f64; k + 1];
    cur[automaton.post_match_state()] = 1.0;
    let mut g = Vec::with_capacity(dmax);
    for _ in 0..dmax {
        next.iter_mut().for_each(|x| *x = 0.0);
        for s in 0..k {
            let mass = cur[s];
            if mass == 0.0 {
                continue;
            }
            for c in 0..4 {
                next[automaton.delta[s][c] as usize] += mass * p[c];
            }
        }
        g.push(next[k]);
        next[k] = 0.0;
        std::mem::swap(&mut cur, &mut next);
    }
    g
}

/// Model counterpart of an observed distribution: first-return
/// probabilities restricted to `k < d <= dmax` and renormalized.
pub fn reference_distribution(
    automaton: &PatternAutomaton,
    freqs: &BaseFrequencies,
    dmax: usize,
) -> Result<DistanceDistribution> {
    let k = automaton.k();
    if dmax <= k {
        return Err(Error::config(format!("dmax={dmax} must exceed k={k}")));
    }
    let g = first_return_probabilities(automaton, freqs, dmax);
    let retained = &g[k..];
    let mass: f64 = retained.iter().sum();
    if mass.is_nan() || mass <= 0.0 {
        return Err(Error::InsufficientData(format!(
            "{} cannot recur within {}..={dmax} under the given base frequencies",
            automaton.word(),
            k + 1
        )));
    }
    let mut freqs: Vec<f64> = retained.iter().map(|x| x / mass).collect();
    let drift = 1.0 - freqs.iter().sum::<f64>();
    if let Some(i) = (0..freqs.len()).max_by(|&a, &b| freqs[a].total_cmp(&freqs[b])) {
        freqs[i] += drift;
    }
    DistanceDistribution::from_frequencies(k, dmax, freqs)
}

/// Peak dissimilarity between the pair's averaged observed distribution
/// and its averaged reference distribution.
pub fn rs_score(
    f_w: &DistanceDistribution,
    f_wbar: &DistanceDistribution,
    g_w: &DistanceDistribution,
    g_wbar: &DistanceDistribution,
    cfg: &PeakConfig,
) -> Result<f64> {
    let observed = DistanceDistribution::mean(f_w, f_wbar)?;
    let expected = DistanceDistribution::mean(g_w, g_wbar)?;
    observed.same_domain(&expected)?;
    peak_dissimilarity(&observed, &expected, cfg)
}
