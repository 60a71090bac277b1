//! Distance distributions and the measures comparing a word with its
//! reverse complement: APR, Euclidean distance, Jeffreys divergence and
//! peak dissimilarity.

use crate::error::{Error, Result};
use crate::scan::DistanceHistogram;

pub const DEFAULT_BANDWIDTH: usize = 5;
pub const DEFAULT_PEAKS: usize = 3;
pub const DEFAULT_EPS: f64 = 1e-10;

/// Floor for the peak-size scale in [`peak_pair_dissim`]; only matters
/// when a distribution is perfectly flat.
pub const PEAK_SIZE_FLOOR: f64 = 1e-12;

/// Relative frequencies on the distances `k+1 ..= dmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceDistribution {
    k: usize,
    dmax: usize,
    freqs: Vec<f64>,
    /// Count mass the frequencies were normalized from (0 for model
    /// distributions).
    pub support_total: u64,
}

impl DistanceDistribution {
    /// Builds a distribution from explicit frequencies for `k+1 ..= dmax`.
    /// They must be non-negative and sum to one.
    pub fn from_frequencies(k: usize, dmax: usize, freqs: Vec<f64>) -> Result<Self> {
        if dmax <= k {
            return Err(Error::config(format!("dmax={dmax} must exceed k={k}")));
        }
        if freqs.len() != dmax - k {
            return Err(Error::Argument(format!(
                "expected {} frequencies, found {}",
                dmax - k,
                freqs.len()
            )));
        }
        if freqs.iter().any(|&p| !p.is_finite() || p < 0.0) {
            return Err(Error::Argument("frequencies must be finite and non-negative".into()));
        }
        let total: f64 = freqs.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Argument(format!("frequencies sum to {total}, not 1")));
        }
        Ok(DistanceDistribution {
            k,
            dmax,
            freqs,
            support_total: 0,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dmax(&self) -> usize {
        self.dmax
    }

    /// Smallest distance in the domain.
    pub fn first_distance(&self) -> usize {
        self.k + 1
    }

    /// Domain length `R = dmax - k`.
    pub fn domain_len(&self) -> usize {
        self.freqs.len()
    }

    pub fn freqs(&self) -> &[f64] {
        &self.freqs
    }

    /// Frequency of distance `d`; zero outside the domain.
    pub fn freq(&self, d: usize) -> f64 {
        if d <= self.k || d > self.dmax {
            0.0
        } else {
            self.freqs[d - self.k - 1]
        }
    }

    pub fn same_domain(&self, other: &Self) -> Result<()> {
        if self.k != other.k || self.dmax != other.dmax {
            return Err(Error::DomainMismatch(
                format!("{}..={}", self.k + 1, self.dmax),
                format!("{}..={}", other.k + 1, other.dmax),
            ));
        }
        Ok(())
    }

    /// Pointwise average `(a + b) / 2`.
    pub fn mean(a: &Self, b: &Self) -> Result<Self> {
        a.same_domain(b)?;
        Ok(DistanceDistribution {
            k: a.k,
            dmax: a.dmax,
            freqs: a.freqs.iter().zip(&b.freqs).map(|(x, y)| (x + y) / 2.0).collect(),
            support_total: a.support_total + b.support_total,
        })
    }
}

/// Restricts a histogram to `d > k` and normalizes the retained counts.
pub fn to_distribution(hist: &DistanceHistogram<'_>, k: usize, dmax: usize) -> Result<DistanceDistribution> {
    if hist.dmax() != dmax {
        return Err(Error::config(format!(
            "histogram has dmax={}, expected {dmax}",
            hist.dmax()
        )));
    }
    if dmax <= k {
        return Err(Error::config(format!("dmax={dmax} must exceed k={k}")));
    }
    let retained = &hist.counts[k..dmax];
    let total: u64 = retained.iter().map(|&c| u64::from(c)).sum();
    if total == 0 {
        return Err(Error::InsufficientData(format!("no distances in {}..={dmax}", k + 1)));
    }
    let scale = total as f64;
    Ok(DistanceDistribution {
        k,
        dmax,
        freqs: retained.iter().map(|&c| f64::from(c) / scale).collect(),
        support_total: total,
    })
}

/// Absolute Pearson residual of a word's count against the pair mean.
pub fn apr(n_w: u64, n_wbar: u64) -> f64 {
    let total = n_w + n_wbar;
    if total == 0 {
        return 0.0;
    }
    n_w.abs_diff(n_wbar) as f64 / (2.0 * total as f64).sqrt()
}

pub fn euclidean(f: &DistanceDistribution, g: &DistanceDistribution) -> Result<f64> {
    f.same_domain(g)?;
    let sq: f64 = f.freqs.iter().zip(&g.freqs).map(|(p, q)| (p - q) * (p - q)).sum();
    Ok(sq.sqrt())
}

#[inline]
fn floor_zero(p: f64, eps: f64) -> f64 {
    if p == 0.0 {
        eps
    } else {
        p
    }
}

/// `KL(f || g)` with zero frequencies replaced by `eps` (no renormalization).
pub fn kl_divergence(f: &DistanceDistribution, g: &DistanceDistribution, eps: f64) -> Result<f64> {
    f.same_domain(g)?;
    Ok(f.freqs
        .iter()
        .zip(&g.freqs)
        .map(|(&p, &q)| {
            let (p, q) = (floor_zero(p, eps), floor_zero(q, eps));
            p * (p / q).ln()
        })
        .sum())
}

/// Jeffreys divergence `KL(f||g) + KL(g||f)`, evaluated term-wise as
/// `(p - q)(ln p - ln q)` so every term is non-negative.
pub fn jeffreys(f: &DistanceDistribution, g: &DistanceDistribution, eps: f64) -> Result<f64> {
    f.same_domain(g)?;
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::config("eps must be positive"));
    }
    Ok(f.freqs
        .iter()
        .zip(&g.freqs)
        .map(|(&p, &q)| {
            let (p, q) = (floor_zero(p, eps), floor_zero(q, eps));
            (p - q) * (p.ln() - q.ln())
        })
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeakConfig {
    /// Window width in domain points.
    pub bandwidth: usize,
    /// Number of strongest peaks compared.
    pub peaks: usize,
}

impl Default for PeakConfig {
    fn default() -> Self {
        PeakConfig {
            bandwidth: DEFAULT_BANDWIDTH,
            peaks: DEFAULT_PEAKS,
        }
    }
}

impl PeakConfig {
    pub fn new(bandwidth: usize, peaks: usize) -> Result<Self> {
        if bandwidth < 2 {
            return Err(Error::config("peak bandwidth must be at least 2"));
        }
        if peaks == 0 {
            return Err(Error::config("number of peaks must be at least 1"));
        }
        Ok(PeakConfig { bandwidth, peaks })
    }

    /// Smallest domain on which greedy disjoint selection of `peaks`
    /// windows can never run out of candidates: each selected window rules
    /// out at most `2h - 1` window starts.
    pub fn min_domain_len(&self) -> usize {
        let (h, n) = (self.bandwidth, self.peaks);
        (n - 1) * (2 * h - 1) + h
    }

    pub fn validate_for(&self, domain_len: usize) -> Result<()> {
        if self.bandwidth < 2 || self.peaks == 0 {
            return Err(Error::config("invalid peak configuration"));
        }
        if self.peaks * self.bandwidth > domain_len || self.min_domain_len() > domain_len {
            return Err(Error::config(format!(
                "{} peaks of bandwidth {} need a domain of at least {} points, have {domain_len}",
                self.peaks,
                self.bandwidth,
                self.min_domain_len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    /// First distance covered by the window.
    pub start: usize,
    /// Window midpoint (lower middle for even bandwidth).
    pub location: usize,
    /// Mean absolute difference between successive frequencies in the window.
    pub size: f64,
}

impl Peak {
    pub fn interval(&self, bandwidth: usize) -> (usize, usize) {
        (self.start, self.start + bandwidth - 1)
    }
}

/// Greedy selection of the `n` strongest pairwise-disjoint windows.
/// Returned in decreasing size; equal sizes resolve to the smaller location.
pub fn find_peaks(f: &DistanceDistribution, cfg: &PeakConfig) -> Result<Vec<Peak>> {
    let r = f.domain_len();
    cfg.validate_for(r)?;
    let h = cfg.bandwidth;
    let diffs: Vec<f64> = f.freqs.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let sizes: Vec<f64> = (0..=r - h)
        .map(|s| diffs[s..s + h - 1].iter().sum::<f64>() / (h - 1) as f64)
        .collect();

    // Window starts (domain indices) already taken.
    let mut taken: Vec<usize> = Vec::with_capacity(cfg.peaks);
    let mut peaks = Vec::with_capacity(cfg.peaks);
    for _ in 0..cfg.peaks {
        let mut best: Option<usize> = None;
        for (s, &size) in sizes.iter().enumerate() {
            if taken.iter().any(|&t| s + h > t && t + h > s) {
                continue;
            }
            if best.is_none_or(|b| size > sizes[b]) {
                best = Some(s);
            }
        }
        let s = best.ok_or_else(|| Error::config("no disjoint window left for peak selection"))?;
        taken.push(s);
        let start = f.first_distance() + s;
        peaks.push(Peak {
            start,
            location: start + (h - 1) / 2,
            size: sizes[s],
        });
    }
    Ok(peaks)
}

/// Dissimilarity between two peaks, scaled by the domain length and by
/// the strongest peak sizes `v`, `vbar` of the two distributions.
pub fn peak_pair_dissim(a: &Peak, b: &Peak, v: f64, vbar: f64, domain_len: usize) -> f64 {
    let loc = a.location.abs_diff(b.location) as f64 / domain_len as f64;
    let scale = v.min(vbar).max(PEAK_SIZE_FLOOR);
    let size = (a.size - b.size).abs() / scale;
    (loc + 1.0) * (size + 1.0) - 1.0
}

/// Minimum of `sum_i cost[i][perm[i]]` over all permutations, summed in
/// row order.
pub fn min_assignment(cost: &[Vec<f64>]) -> f64 {
    fn go(cost: &[Vec<f64>], row: usize, used: &mut [bool], acc: f64, best: &mut f64) {
        if row == cost.len() {
            if acc < *best {
                *best = acc;
            }
            return;
        }
        for j in 0..cost.len() {
            if !used[j] {
                used[j] = true;
                go(cost, row + 1, used, acc + cost[row][j], best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    let mut used = vec![false; cost.len()];
    go(cost, 0, &mut used, 0.0, &mut best);
    best
}

/// Peak-pair cost matrix between the selected peaks of two distributions.
pub fn peak_cost_matrix(fp: &[Peak], gp: &[Peak], domain_len: usize) -> Vec<Vec<f64>> {
    let v = fp[0].size;
    let vbar = gp[0].size;
    fp.iter()
        .map(|a| gp.iter().map(|b| peak_pair_dissim(a, b, v, vbar, domain_len)).collect())
        .collect()
}

pub fn peak_dissimilarity(f: &DistanceDistribution, g: &DistanceDistribution, cfg: &PeakConfig) -> Result<f64> {
    f.same_domain(g)?;
    let fp = find_peaks(f, cfg)?;
    let gp = find_peaks(g, cfg)?;
    Ok(min_assignment(&peak_cost_matrix(&fp, &gp, f.domain_len())))
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn dist(k: usize, freqs: &[f64]) -> DistanceDistribution {
        DistanceDistribution::from_frequencies(k, k + freqs.len(), freqs.to_vec()).unwrap()
    }

    fn random_dist(rng: &mut impl Rng, k: usize, r: usize, sparse: bool) -> DistanceDistribution {
        let mut w: Vec<f64> = (0..r)
            .map(|_| {
                if sparse && rng.gen_bool(0.6) {
                    0.0
                } else {
                    rng.gen::<f64>().powi(3)
                }
            })
            .collect();
        if w.iter().all(|&x| x == 0.0) {
            w[0] = 1.0;
        }
        let s: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= s);
        let total: f64 = w.iter().sum();
        w[0] += 1.0 - total;
        w[0] = w[0].max(0.0);
        dist(k, &w)
    }

    #[test]
    fn normalization_examples() {
        let mut c = vec![0u32; 9];
        c[5] = 2; // d=6
        c[7] = 2; // d=8
        let d = to_distribution(&DistanceHistogram::new(&c, 5, 0), 5, 9).unwrap();
        assert_eq!(d.freqs(), &[0.5, 0.0, 0.5, 0.0]);

        let mut c = vec![0u32; 3];
        c[0] = 7;
        c[2] = 3;
        let d = to_distribution(&DistanceHistogram::new(&c, 11, 0), 2, 3).unwrap();
        assert_eq!(d.freqs(), &[1.0]);
        assert_eq!(d.support_total, 3);

        let mut c = vec![0u32; 9];
        c[5] = 1;
        c[6] = 2;
        c[8] = 1;
        let d = to_distribution(&DistanceHistogram::new(&c, 4, 0), 5, 9).unwrap();
        assert_eq!(d.freqs(), &[0.25, 0.5, 0.0, 0.25]);
    }

    #[test]
    fn empty_support_is_insufficient() {
        let mut c = vec![0u32; 9];
        c[2] = 5;
        let r = to_distribution(&DistanceHistogram::new(&c, 6, 3), 5, 9);
        assert!(matches!(r, Err(Error::InsufficientData(_))));
    }

    #[test]
    fn apr_examples() {
        assert_eq!(apr(10, 10), 0.0);
        assert!((apr(8, 2) - 6.0 / 20f64.sqrt()).abs() < 1e-15);
        assert!((apr(8, 2) - 1.341_640_786_5).abs() < 1e-9);
        assert_eq!(apr(0, 0), 0.0);
        assert_eq!(apr(3, 17), apr(17, 3));
    }

    #[test]
    fn euclidean_examples() {
        let f = dist(5, &[1.0, 0.0, 0.0]);
        let g = dist(5, &[0.0, 1.0, 0.0]);
        assert_eq!(euclidean(&f, &f).unwrap(), 0.0);
        assert!((euclidean(&f, &g).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let h = dist(4, &[1.0, 0.0, 0.0]);
        assert!(matches!(euclidean(&f, &h), Err(Error::DomainMismatch(..))));
    }

    #[test]
    fn jeffreys_examples() {
        let f = dist(1, &[0.75, 0.25]);
        let g = dist(1, &[0.25, 0.75]);
        assert_eq!(jeffreys(&f, &f, DEFAULT_EPS).unwrap(), 0.0);
        assert!((jeffreys(&f, &g, DEFAULT_EPS).unwrap() - 3f64.ln()).abs() < 1e-12);

        let p = dist(1, &[1.0, 0.0]);
        let q = dist(1, &[0.5, 0.5]);
        let coarse = jeffreys(&p, &q, 1e-10).unwrap();
        let fine = jeffreys(&p, &q, 1e-14).unwrap();
        assert!(coarse.is_finite() && fine.is_finite());
        assert!(fine > coarse);
    }

    #[test]
    fn jeffreys_matches_two_kl_terms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let f = random_dist(&mut rng, 3, 40, true);
            let g = random_dist(&mut rng, 3, 40, true);
            let kl = kl_divergence(&f, &g, DEFAULT_EPS).unwrap() + kl_divergence(&g, &f, DEFAULT_EPS).unwrap();
            let dj = jeffreys(&f, &g, DEFAULT_EPS).unwrap();
            assert!((kl - dj).abs() <= 1e-12 * dj.max(1.0), "{kl} vs {dj}");
        }
    }

    /// Scores every window directly from the definition.
    fn window_oracle(freqs: &[f64], h: usize) -> Vec<f64> {
        (0..=freqs.len() - h)
            .map(|s| {
                let mut total = 0.0;
                for i in s..s + h - 1 {
                    total += (freqs[i + 1] - freqs[i]).abs();
                }
                total / (h - 1) as f64
            })
            .collect()
    }

    #[test]
    fn single_peak_example() {
        let f = dist(5, &[0.1, 0.1, 0.5, 0.1, 0.1, 0.02, 0.02, 0.02, 0.02, 0.02]);
        let cfg = PeakConfig::new(3, 1).unwrap();
        let peaks = find_peaks(&f, &cfg).unwrap();
        assert_eq!(peaks.len(), 1);
        assert_eq!(peaks[0].interval(3), (7, 9));
        assert_eq!(peaks[0].location, 8);
        assert!((peaks[0].size - 0.4).abs() < 1e-15);

        let scores = window_oracle(f.freqs(), 3);
        let best = scores
            .iter()
            .enumerate()
            .fold(0, |b, (i, &s)| if s > scores[b] { i } else { b });
        assert_eq!(best + 6, peaks[0].start);
    }

    #[test]
    fn flat_distribution_has_zero_size_peaks() {
        let f = dist(2, &[0.05; 20]);
        let peaks = find_peaks(&f, &PeakConfig::new(3, 3).unwrap()).unwrap();
        assert_eq!(peaks.len(), 3);
        assert!(peaks.iter().all(|p| p.size == 0.0));
        // Ties go to the leftmost free window.
        assert_eq!(peaks.iter().map(|p| p.start).collect::<Vec<_>>(), vec![3, 6, 9]);
    }

    #[test]
    fn even_bandwidth_uses_lower_middle() {
        let f = dist(0, &[0.0, 0.0, 0.5, 0.5, 0.0, 0.0, 0.0, 0.0]);
        let p = find_peaks(&f, &PeakConfig::new(4, 1).unwrap()).unwrap();
        assert_eq!(p[0].location, p[0].start + 1);
    }

    #[test]
    fn adjacent_spikes_merge_with_wide_windows() {
        // Two adjacent high frequencies: narrow windows see two peaks,
        // wide windows one.
        let mut w = vec![0.01; 40];
        w[20] = 0.3;
        w[21] = 0.3;
        let s: f64 = w.iter().sum();
        let w: Vec<f64> = w.iter().map(|x| x / s).collect();
        let f = dist(0, &w);
        let narrow = find_peaks(&f, &PeakConfig::new(2, 2).unwrap()).unwrap();
        assert!((narrow[0].size - narrow[1].size).abs() < 1e-15);
        let wide = find_peaks(&f, &PeakConfig::new(4, 2).unwrap()).unwrap();
        assert!(wide[0].size > 1.5 * wide[1].size);
    }

    #[test]
    fn config_too_large_for_domain() {
        let f = dist(2, &[0.1; 10]);
        assert!(matches!(
            find_peaks(&f, &PeakConfig::new(3, 4).unwrap()),
            Err(Error::Config(_))
        ));
        assert!(PeakConfig::new(1, 3).is_err());
        assert!(PeakConfig::new(3, 0).is_err());
    }

    #[test]
    fn peak_pair_examples() {
        let p = |location, size| Peak {
            start: location - 1,
            location,
            size,
        };
        assert_eq!(peak_pair_dissim(&p(8, 0.4), &p(8, 0.4), 0.4, 0.4, 10), 0.0);
        assert!((peak_pair_dissim(&p(8, 0.4), &p(8, 0.2), 0.4, 0.2, 10) - 1.0).abs() < 1e-15);
        assert!((peak_pair_dissim(&p(8, 0.3), &p(18, 0.3), 0.3, 0.3, 10) - 1.0).abs() < 1e-15);
        // flat vs flat
        assert_eq!(peak_pair_dissim(&p(8, 0.0), &p(8, 0.0), 0.0, 0.0, 10), 0.0);
    }

    /// Brute force over the six assignments of three peaks.
    fn six_permutation_oracle(c: &[Vec<f64>]) -> f64 {
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        PERMS
            .iter()
            .map(|p| 0.0 + c[0][p[0]] + c[1][p[1]] + c[2][p[2]])
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn peak_dissimilarity_matches_exhaustive_assignment() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let cfg = PeakConfig::default();
        for _ in 0..300 {
            let f = {
                let sparse = rng.gen_bool(0.5);
                random_dist(&mut rng, 4, 120, sparse)
            };
            let g = {
                let sparse = rng.gen_bool(0.5);
                random_dist(&mut rng, 4, 120, sparse)
            };
            let fp = find_peaks(&f, &cfg).unwrap();
            let gp = find_peaks(&g, &cfg).unwrap();
            let c = peak_cost_matrix(&fp, &gp, f.domain_len());
            assert_eq!(peak_dissimilarity(&f, &g, &cfg).unwrap(), six_permutation_oracle(&c));
        }
    }

    #[test]
    fn peak_dissimilarity_ignores_order_of_equal_peaks() {
        let cost = vec![vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 3.0], vec![0.5, 4.0, 0.25]];
        let mut swapped = cost.clone();
        swapped.swap(0, 1);
        assert_eq!(min_assignment(&cost), min_assignment(&swapped));
    }

    #[test]
    fn semimetric_fuzz() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cfg = PeakConfig::default();
        for _ in 0..1000 {
            let f = {
                let sparse = rng.gen_bool(0.3);
                random_dist(&mut rng, 5, 60, sparse)
            };
            let g = {
                let sparse = rng.gen_bool(0.3);
                random_dist(&mut rng, 5, 60, sparse)
            };
            for (name, m) in [
                (
                    "euclidean",
                    &(|a: &_, b: &_| euclidean(a, b).unwrap()) as &dyn Fn(&_, &_) -> f64,
                ),
                ("jeffreys", &|a, b| jeffreys(a, b, DEFAULT_EPS).unwrap()),
                ("peak", &|a, b| peak_dissimilarity(a, b, &cfg).unwrap()),
            ] {
                let (fg, gf) = (m(&f, &g), m(&g, &f));
                assert!(fg >= 0.0, "{name} negative");
                assert!((fg - gf).abs() <= 1e-12, "{name} asymmetric: {fg} {gf}");
                assert!(m(&f, &f) <= 1e-12, "{name} nonzero on identical input");
            }
            let de = euclidean(&f, &g).unwrap();
            assert!(de * de <= 2.0 + 1e-12);
        }
    }

    proptest! {
        #[test]
        fn peaks_are_disjoint_and_sorted(
            w in proptest::collection::vec(0.0f64..1.0, 30..80),
            h in 2usize..6,
            n in 1usize..4,
        ) {
            let s: f64 = w.iter().sum::<f64>() + 1e-9;
            let mut w: Vec<f64> = w.iter().map(|x| x / s).collect();
            let rest = 1.0 - w.iter().sum::<f64>();
            w[0] += rest;
            let f = dist(3, &w);
            let cfg = PeakConfig::new(h, n).unwrap();
            prop_assume!(cfg.validate_for(f.domain_len()).is_ok());
            let peaks = find_peaks(&f, &cfg).unwrap();
            prop_assert_eq!(peaks.len(), n);
            let oracle = window_oracle(f.freqs(), h);
            for (i, a) in peaks.iter().enumerate() {
                prop_assert!((a.size - oracle[a.start - 4]).abs() < 1e-12);
                for b in &peaks[i + 1..] {
                    let (a0, a1) = a.interval(h);
                    let (b0, b1) = b.interval(h);
                    prop_assert!(a1 < b0 || b1 < a0);
                    prop_assert!(a.size >= b.size);
                }
            }
            // The strongest peak is the global maximum window.
            let max = oracle.iter().cloned().fold(0.0, f64::max);
            prop_assert!((peaks[0].size - max).abs() < 1e-12);
        }

        #[test]
        fn peaks_stable_under_zero_padding(
            w in proptest::collection::vec(0.0f64..1.0, 30..60),
            pad in 1usize..40,
        ) {
            let h = 5;
            let cfg = PeakConfig::new(h, 3).unwrap();
            let mut w = w;
            let len = w.len();
            for x in &mut w[len - h..] { *x = 0.0; }
            let s: f64 = w.iter().sum();
            prop_assume!(s > 0.0);
            let mut w: Vec<f64> = w.iter().map(|x| x / s).collect();
            let rest = 1.0 - w.iter().sum::<f64>();
            let first_nonzero = w.iter().position(|&x| x > 0.0).unwrap();
            w[first_nonzero] += rest;
            let f = dist(4, &w);
            let mut padded_w = w.clone();
            padded_w.extend(std::iter::repeat_n(0.0, pad));
            let padded = dist(4, &padded_w);
            prop_assert_eq!(find_peaks(&f, &cfg).unwrap(), find_peaks(&padded, &cfg).unwrap());
        }
    }
}
