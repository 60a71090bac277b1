use std::cmp::Ordering;

use super::{Measure, PairRecord};
use crate::error::{Error, Result};
use crate::word::WordId;

/// 1-based ranks, ties sharing the average of the positions they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // positions i+1 ..= j share their mean rank
        let rank = (i + 1 + j) as f64 / 2.0;
        for &idx in &order[i..j] {
            ranks[idx] = rank;
        }
        i = j;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman's rank correlation: Pearson correlation of the average ranks.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Argument(format!("lengths differ ({} vs {})", x.len(), y.len())));
    }
    if x.len() < 2 {
        return Err(Error::Argument("need at least two observations".into()));
    }
    pearson(&average_ranks(x), &average_ranks(y))
}

/// Nearest-rank percentile: the value at 1-based position `ceil(q/100 * N)`
/// of the ascending values.
pub fn nearest_rank_threshold(values: &[f64], q: f64) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let rank = ((q / 100.0) * n as f64).ceil() as usize;
    Some(sorted[rank.clamp(1, n) - 1])
}

/// Fraction of the top `ceil(q N)` items of `m1` that are also in the top
/// of `m2`. Ties go to the smaller index.
pub fn top_overlap(m1: &[f64], m2: &[f64], q: f64) -> Result<f64> {
    if m1.len() != m2.len() {
        return Err(Error::Argument("measures cover different pair sets".into()));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Argument(format!("top fraction {q} outside (0, 1)")));
    }
    let size = (q * m1.len() as f64).ceil() as usize;
    if size == 0 {
        return Err(Error::EmptySelection("no pairs to select from".into()));
    }
    let top = |m: &[f64]| {
        let mut idx: Vec<usize> = (0..m.len()).collect();
        idx.sort_by(|&a, &b| m[b].total_cmp(&m[a]).then(a.cmp(&b)));
        let mut sel = vec![false; m.len()];
        for &i in &idx[..size] {
            sel[i] = true;
        }
        sel
    };
    let (a, b) = (top(m1), top(m2));
    let common = a.iter().zip(&b).filter(|(x, y)| **x && **y).count();
    Ok(common as f64 / size as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Above,
    Below,
}

/// Records strictly above (below) the nearest-rank `q`-th percentile of the
/// measure, sorted descending (ascending); ties by word.
pub fn percentile_select(records: &[PairRecord], measure: Measure, q: f64, side: Side) -> Vec<&PairRecord> {
    let values: Vec<f64> = records.iter().map(|r| r.value(measure)).collect();
    let Some(threshold) = nearest_rank_threshold(&values, q) else {
        return Vec::new();
    };
    let mut out: Vec<&PairRecord> = records
        .iter()
        .filter(|r| match side {
            Side::Above => r.value(measure) > threshold,
            Side::Below => r.value(measure) < threshold,
        })
        .collect();
    out.sort_by(|a, b| {
        let ord = a.value(measure).total_cmp(&b.value(measure));
        let ord = if side == Side::Above { ord.reverse() } else { ord };
        ord.then(a.word.cmp(&b.word))
    });
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankEntry {
    pub word: WordId,
    pub value: f64,
    pub rank: f64,
}

/// Records ranked from smallest to largest value of one measure.
#[derive(Debug, Clone, PartialEq)]
pub struct RankTable {
    pub measure: Measure,
    pub entries: Vec<RankEntry>,
    /// `(q, value)` for each requested percentile.
    pub thresholds: Vec<(f64, f64)>,
}

impl RankTable {
    pub fn new(records: &[PairRecord], measure: Measure, percentiles: &[f64]) -> Self {
        let values: Vec<f64> = records.iter().map(|r| r.value(measure)).collect();
        let ranks = average_ranks(&values);
        let mut entries: Vec<RankEntry> = records
            .iter()
            .zip(&ranks)
            .map(|(r, &rank)| RankEntry {
                word: r.word,
                value: r.value(measure),
                rank,
            })
            .collect();
        entries.sort_by(|a, b| a.value.total_cmp(&b.value).then_with(|| a.word.cmp(&b.word)));
        let thresholds = percentiles
            .iter()
            .filter_map(|&q| nearest_rank_threshold(&values, q).map(|t| (q, t)))
            .collect();
        RankTable {
            measure,
            entries,
            thresholds,
        }
    }

    pub fn threshold(&self, q: f64) -> Option<f64> {
        self.thresholds
            .iter()
            .find(|(p, _)| p.partial_cmp(&q) == Some(Ordering::Equal))
            .map(|&(_, t)| t)
    }
}
