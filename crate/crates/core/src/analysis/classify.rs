use std::fmt;

use super::rank::nearest_rank_threshold;
use super::{Measure, PairRecord};

/// Joint APR / D_P category of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairClass {
    /// similar frequency, similar distances
    C1,
    /// dissimilar frequency, similar distances
    C2,
    /// similar frequency, dissimilar distances
    C3,
    /// dissimilar in both
    C4,
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairClass::C1 => "c1",
            PairClass::C2 => "c2",
            PairClass::C3 => "c3",
            PairClass::C4 => "c4",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairClassification<'a> {
    pub record: &'a PairRecord,
    pub class: PairClass,
    /// APR above the `extreme` percentile.
    pub apr_extreme: bool,
    /// D_P above the `extreme` percentile.
    pub dp_extreme: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassCounts {
    pub c1: usize,
    pub c2: usize,
    pub c3: usize,
    pub c4: usize,
}

impl ClassCounts {
    pub fn of(classes: &[PairClassification<'_>]) -> Self {
        let mut c = ClassCounts::default();
        for x in classes {
            match x.class {
                PairClass::C1 => c.c1 += 1,
                PairClass::C2 => c.c2 += 1,
                PairClass::C3 => c.c3 += 1,
                PairClass::C4 => c.c4 += 1,
            }
        }
        c
    }
}

/// Splits pairs at the `cut` percentile of APR and of D_P ("high" means
/// strictly above it). `extreme` marks pairs beyond a second, stricter
/// percentile line.
pub fn classify_pairs(records: &[PairRecord], cut: f64, extreme: f64) -> Vec<PairClassification<'_>> {
    let apr: Vec<f64> = records.iter().map(|r| r.value(Measure::Apr)).collect();
    let dp: Vec<f64> = records.iter().map(|r| r.value(Measure::Peak)).collect();
    let (Some(apr_cut), Some(dp_cut)) = (nearest_rank_threshold(&apr, cut), nearest_rank_threshold(&dp, cut)) else {
        return Vec::new();
    };
    let apr_ext = nearest_rank_threshold(&apr, extreme).unwrap_or(f64::INFINITY);
    let dp_ext = nearest_rank_threshold(&dp, extreme).unwrap_or(f64::INFINITY);
    records
        .iter()
        .map(|r| {
            let class = match (r.apr > apr_cut, r.d_p > dp_cut) {
                (false, false) => PairClass::C1,
                (true, false) => PairClass::C2,
                (false, true) => PairClass::C3,
                (true, true) => PairClass::C4,
            };
            PairClassification {
                record: r,
                class,
                apr_extreme: r.apr > apr_ext,
                dp_extreme: r.d_p > dp_ext,
            }
        })
        .collect()
}

/// Pairs whose D_P is below its `q`-th percentile, most unexpected (largest
/// `rs`) first; ties by word.
pub fn rank_similar_unexpected(records: &[PairRecord], q: f64) -> Vec<&PairRecord> {
    let dp: Vec<f64> = records.iter().map(|r| r.d_p).collect();
    let Some(threshold) = nearest_rank_threshold(&dp, q) else {
        return Vec::new();
    };
    let mut out: Vec<&PairRecord> = records.iter().filter(|r| r.d_p < threshold).collect();
    out.sort_by(|a, b| b.rs.total_cmp(&a.rs).then(a.word.cmp(&b.word)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::PairFlags;
    use crate::word::WordId;

    fn rec(code: u32, apr: f64, d_p: f64, rs: f64) -> PairRecord {
        let w = WordId::new(5, code).unwrap();
        PairRecord {
            word: w,
            rc: w.reverse_complement(),
            n_w: 0,
            n_wbar: 0,
            apr,
            d_e: 0.0,
            d_j: 0.0,
            d_p,
            rs,
            flags: PairFlags::default(),
        }
    }

    /// 100 background pairs with APR = D_P = i, plus the probes.
    fn population(probes: &[(f64, f64)]) -> Vec<PairRecord> {
        let mut recs: Vec<_> = (0..100).map(|i| rec(i, i as f64, i as f64, 0.0)).collect();
        for (j, &(a, d)) in probes.iter().enumerate() {
            recs.push(rec(200 + j as u32, a, d, 0.0));
        }
        recs
    }

    #[test]
    fn class_examples() {
        let recs = population(&[(49.5, 49.5), (1000.0, 2.5), (49.5, 1000.0), (500.0, 1000.0)]);
        let classes = classify_pairs(&recs, 90.0, 99.0);
        let probe = |i: usize| &classes[100 + i];
        assert_eq!(probe(0).class, PairClass::C1);
        assert_eq!(probe(1).class, PairClass::C2);
        assert!(probe(1).apr_extreme && !probe(1).dp_extreme);
        assert_eq!(probe(2).class, PairClass::C3);
        assert_eq!(probe(3).class, PairClass::C4);
        let counts = ClassCounts::of(&classes);
        assert_eq!(counts.c1 + counts.c2 + counts.c3 + counts.c4, recs.len());
    }

    #[test]
    fn similar_unexpected_filters_and_sorts() {
        let mut recs: Vec<_> = (0..100).map(|i| rec(i, 0.0, i as f64, (i * 37 % 11) as f64)).collect();
        recs.push(rec(500, 0.0, 0.5, 99.0));
        let out = rank_similar_unexpected(&recs, 10.0);
        let thr = nearest_rank_threshold(&recs.iter().map(|r| r.d_p).collect::<Vec<_>>(), 10.0).unwrap();
        assert!(out.iter().all(|r| r.d_p < thr));
        assert!(out.windows(2).all(|w| w[0].rs >= w[1].rs));
        assert_eq!(out[0].rs, 99.0);
        assert!(!out.iter().any(|r| r.d_p >= thr));
    }
}
