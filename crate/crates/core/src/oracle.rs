//! Exhaustive committee enumeration, the ground truth for every formula.

use std::ops::RangeInclusive;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{cap, Error, Result};
use crate::om::OrientedMatroid;
use crate::report::KappaReport;
use crate::sets::{binomial, IndexSet};

fn check_indices(om: &OrientedMatroid, set: IndexSet) -> Result<()> {
    match set.max() {
        Some(i) if i >= om.num_topes() => Err(Error::IndexOutOfRange {
            index: i,
            len: om.num_topes(),
        }),
        _ => Ok(()),
    }
}

/// `|K ∩ T_e^+|` minus `|K ∩ T_e^-|`, per element.
fn margins(om: &OrientedMatroid, set: IndexSet) -> impl Iterator<Item = i64> + '_ {
    let k = set.len() as i64;
    om.positive_halfspaces()
        .iter()
        .map(move |&h| 2 * (set & h).len() as i64 - k)
}

/// Strict majority of `K` inside every positive halfspace.
pub fn is_committee(om: &OrientedMatroid, set: IndexSet) -> Result<bool> {
    check_indices(om, set)?;
    Ok(!set.is_empty() && margins(om, set).all(|m| m > 0))
}

/// Strict minority inside every positive halfspace, i.e. `-K` is a committee.
pub fn is_anti_committee(om: &OrientedMatroid, set: IndexSet) -> Result<bool> {
    check_indices(om, set)?;
    Ok(!set.is_empty() && margins(om, set).all(|m| m < 0))
}

/// No tope appears together with its negation.
pub fn is_free_of_opposites(om: &OrientedMatroid, set: IndexSet) -> bool {
    set.iter()
        .all(|i| i >= om.num_topes() || om.negation_of(i).is_none_or(|j| !set.contains(j)))
}

/// `I` meets every `⌊(|T| - |I| + 1)/2⌋`-subset of every positive halfspace.
///
/// A set of size `i` is a committee iff it is such a blocking set: it meets
/// every `q`-subset of `T_e^+` iff `|T_e^+ \ I| < q`, and with `|T_e^+| =
/// |T|/2` and `q = ⌊(|T| - i + 1)/2⌋` that reads `|I ∩ T_e^+| > i/2`.
pub fn is_blocking_set(om: &OrientedMatroid, set: IndexSet) -> Result<bool> {
    check_indices(om, set)?;
    let n = om.num_topes() as i64;
    let q = (n - set.len() as i64 + 1) / 2;
    Ok(om
        .positive_halfspaces()
        .iter()
        .all(|&h| ((h - set).len() as i64) < q))
}

/// No proper nonempty subset of the committee `K` is a committee.
///
/// By the threshold identity in [`is_blocking_set`], this is exactly the
/// requirement that no proper subset is a blocking set for its own size.
pub fn is_minimal_committee(om: &OrientedMatroid, set: IndexSet) -> Result<bool> {
    if !is_committee(om, set)? {
        return Err(Error::NotACommittee);
    }
    let universe: Vec<IndexSet> = om
        .positive_halfspaces()
        .iter()
        .map(|&h| IndexSet(set.extract(h) as u128))
        .collect();
    let size = set.len();
    Ok((1..size).all(|j| !exists_majority_subset(&universe, size, j)))
}

/// Whether some `j`-subset of `{0..n}` has a strict majority in every given
/// local halfspace.
fn exists_majority_subset(halves: &[IndexSet], n: usize, j: usize) -> bool {
    let mut found = false;
    majority_dfs(halves, n, j, 0, &mut vec![0i64; halves.len()], 0, &mut |_| {
        found = true;
        false
    });
    found
}

/// Depth-first enumeration of `k`-subsets of `{start..n}` (extending
/// `chosen`) whose margins end strictly positive; aborts a branch as soon as
/// some deficit cannot be recovered by the remaining picks. The visitor
/// returns `false` to stop the search.
fn majority_dfs(
    halves: &[IndexSet],
    n: usize,
    k: usize,
    start: usize,
    margin: &mut Vec<i64>,
    chosen: u128,
    visit: &mut dyn FnMut(u128) -> bool,
) -> bool {
    let depth = chosen.count_ones() as usize;
    let left = (k - depth) as i64;
    if margin.iter().any(|&m| m + left < 1) {
        return true;
    }
    if left == 0 {
        return visit(chosen);
    }
    for i in start..=n - left as usize {
        for (e, h) in halves.iter().enumerate() {
            margin[e] += if h.contains(i) { 1 } else { -1 };
        }
        let go_on = majority_dfs(halves, n, k, i + 1, margin, chosen | 1 << i, visit);
        for (e, h) in halves.iter().enumerate() {
            margin[e] -= if h.contains(i) { 1 } else { -1 };
        }
        if !go_on {
            return false;
        }
    }
    true
}

/// Which count vectors a sweep produces besides the committee counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Variants {
    pub free: bool,
    pub min: bool,
    pub maxplus: bool,
}

impl Variants {
    pub const ALL: Variants = Variants {
        free: true,
        min: true,
        maxplus: true,
    };
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepBudget {
    /// Largest tope count for a full `2^|T|` sweep.
    pub max_full_topes: usize,
    /// Largest number of combinations visited by per-cardinality enumeration.
    pub max_combinations: u128,
    /// Largest number of committees kept in memory for the minimality scan.
    pub max_stored: usize,
}

impl Default for SweepBudget {
    fn default() -> Self {
        SweepBudget {
            max_full_topes: 36,
            max_combinations: 1 << 36,
            max_stored: 50_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepStrategy {
    /// One pass over all tope subsets, meeting in the middle.
    Full,
    /// Depth-first enumeration per cardinality with deficit pruning.
    PerCardinality,
}

impl SweepStrategy {
    pub fn tag(self) -> &'static str {
        match self {
            SweepStrategy::Full => "brute-full",
            SweepStrategy::PerCardinality => "brute-per-k",
        }
    }
}

/// Raw per-size counts, indexed by cardinality `0..=|T|`.
#[derive(Clone, Debug, Default)]
struct Counts {
    committees: Vec<u64>,
    anti: Vec<u64>,
    free: Vec<u64>,
    maxplus: Vec<u64>,
    stored: Vec<u64>,
}

impl Counts {
    fn new(n: usize) -> Self {
        Counts {
            committees: vec![0; n + 1],
            anti: vec![0; n + 1],
            free: vec![0; n + 1],
            maxplus: vec![0; n + 1],
            stored: Vec::new(),
        }
    }

    fn merge(mut self, other: Counts) -> Counts {
        for (a, b) in [
            (&mut self.committees, &other.committees),
            (&mut self.anti, &other.anti),
            (&mut self.free, &other.free),
            (&mut self.maxplus, &other.maxplus),
        ] {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        self.stored.extend(other.stored);
        self
    }
}

/// Pick the cheaper strategy for the requested range.
pub fn choose_strategy(num_topes: usize, k_range: &RangeInclusive<usize>, budget: &SweepBudget) -> SweepStrategy {
    let per_k: u128 = k_range
        .clone()
        .map(|k| binomial(num_topes as i64, k as i64) as u128)
        .sum::<u128>()
        .saturating_mul(2);
    if num_topes > budget.max_full_topes || per_k.saturating_mul(4) < 1u128 << num_topes.min(127) {
        SweepStrategy::PerCardinality
    } else {
        SweepStrategy::Full
    }
}

/// Exact per-cardinality committee counts for `k` in `k_range`.
pub fn kappa_sweep(
    om: &OrientedMatroid,
    k_range: RangeInclusive<usize>,
    variants: Variants,
    budget: &SweepBudget,
) -> Result<KappaReport> {
    let strategy = choose_strategy(om.num_topes(), &k_range, budget);
    kappa_sweep_with(om, k_range, variants, budget, strategy)
}

pub fn kappa_sweep_with(
    om: &OrientedMatroid,
    k_range: RangeInclusive<usize>,
    variants: Variants,
    budget: &SweepBudget,
    strategy: SweepStrategy,
) -> Result<KappaReport> {
    let n = om.num_topes();
    let (lo, hi) = (*k_range.start(), *k_range.end());
    if n < 2 || lo < 1 || hi > n - 1 || lo > hi {
        return Err(Error::OutOfRangeK {
            k: if lo < 1 || lo > hi { lo } else { hi },
            lo: 1,
            hi: n.saturating_sub(1),
        });
    }
    if n > 64 {
        return Err(cap("tope count for enumeration", n, 64));
    }
    let started = Instant::now();
    // Minimality needs every committee smaller than the largest requested.
    let store_upto = if variants.min { hi } else { 0 };
    let counts = match strategy {
        SweepStrategy::Full => {
            if n > budget.max_full_topes {
                return Err(cap("full sweep tope count", n, budget.max_full_topes));
            }
            full_sweep(om, store_upto, budget)?
        }
        SweepStrategy::PerCardinality => {
            let visited: u128 = (1..=hi.max(store_upto))
                .filter(|&k| k_range.contains(&k) || k <= store_upto)
                .map(|k| binomial(n as i64, k as i64) as u128)
                .sum();
            if visited > budget.max_combinations {
                return Err(cap("enumerated combinations", visited, budget.max_combinations));
            }
            per_k_sweep(om, &k_range, store_upto, budget)?
        }
    };
    let kappa_min = variants.min.then(|| minimal_counts(&counts.stored, n));
    let pick = |v: &Vec<u64>| v[lo..=hi].to_vec();
    let n_star = (lo..=hi)
        .map(|k| binomial(n as i64, k as i64) as u64 - counts.committees[k] - counts.anti[k])
        .collect();
    Ok(KappaReport {
        t: om.ground_size(),
        num_topes: n,
        k_lo: lo,
        k_hi: hi,
        kappa: pick(&counts.committees),
        anti: pick(&counts.anti),
        kappa_free: variants.free.then(|| pick(&counts.free)),
        kappa_min: kappa_min.map(|v| v[lo..=hi].to_vec()),
        kappa_maxplus: variants.maxplus.then(|| pick(&counts.maxplus)),
        n_star,
        method: strategy.tag().to_string(),
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

/// Packed per-element margins: eight 8-bit lanes per word. Low-half lanes
/// hold `margin + 63`, high-half lanes `margin + 64`, so a lane of the sum has
/// its top bit set iff the combined margin is at least one.
const TOP_BITS: u64 = 0x8080_8080_8080_8080;

struct HalfTable {
    words: usize,
    plus: Vec<u64>,
    minus: Vec<u64>,
    size: Vec<u8>,
    neg: Vec<u64>,
}

fn half_table(om: &OrientedMatroid, offset: usize, width: usize, bias: i64) -> HalfTable {
    let t = om.ground_size();
    let words = t.div_ceil(8);
    let count = 1usize << width;
    let mut plus = vec![0u64; count * words];
    let mut minus = vec![0u64; count * words];
    let mut size = vec![0u8; count];
    let mut neg = vec![0u64; count];
    for a in 0..count {
        let set = IndexSet((a as u128) << offset);
        let k = set.len() as i64;
        size[a] = k as u8;
        for w in 0..words {
            let (mut p, mut m) = (0u64, 0u64);
            for lane in 0..8 {
                let e = w * 8 + lane;
                let (vp, vm) = if e < t {
                    let margin = 2 * (set & om.positive_halfspaces()[e]).len() as i64 - k;
                    (margin + bias, -margin + bias)
                } else {
                    (64, 64)
                };
                p |= (vp as u64) << (8 * lane);
                m |= (vm as u64) << (8 * lane);
            }
            plus[a * words + w] = p;
            minus[a * words + w] = m;
        }
        neg[a] = set
            .iter()
            .map(|i| om.negation_of(i).map_or(0, |j| 1u64 << j))
            .fold(0, |x, y| x | y);
    }
    HalfTable {
        words,
        plus,
        minus,
        size,
        neg,
    }
}

fn full_sweep(om: &OrientedMatroid, store_upto: usize, budget: &SweepBudget) -> Result<Counts> {
    let n = om.num_topes();
    let low_width = n / 2;
    let high_width = n - low_width;
    let low = half_table(om, 0, low_width, 63);
    let high = half_table(om, low_width, high_width, 64);
    let words = low.words;
    let maxplus = om.max_positive_topes().0 as u64;
    let hi_count = 1usize << high_width;
    let counts = (0..1usize << low_width)
        .into_par_iter()
        .fold(
            || Counts::new(n),
            |mut acc, a| {
                let lp = &low.plus[a * words..(a + 1) * words];
                let lm = &low.minus[a * words..(a + 1) * words];
                for b in 0..hi_count {
                    let hp = &high.plus[b * words..(b + 1) * words];
                    let hm = &high.minus[b * words..(b + 1) * words];
                    let size = (low.size[a] + high.size[b]) as usize;
                    let set = a as u64 | (b as u64) << low_width;
                    if (0..words).all(|w| (lp[w] + hp[w]) & TOP_BITS == TOP_BITS) {
                        acc.committees[size] += 1;
                        if set & (low.neg[a] | high.neg[b]) == 0 {
                            acc.free[size] += 1;
                        }
                        if set & !maxplus == 0 {
                            acc.maxplus[size] += 1;
                        }
                        if size <= store_upto {
                            acc.stored.push(set);
                        }
                    } else if (0..words).all(|w| (lm[w] + hm[w]) & TOP_BITS == TOP_BITS) {
                        acc.anti[size] += 1;
                    }
                }
                acc
            },
        )
        .reduce(|| Counts::new(n), Counts::merge);
    if counts.stored.len() > budget.max_stored {
        return Err(cap("stored committees", counts.stored.len(), budget.max_stored));
    }
    Ok(counts)
}

fn per_k_sweep(
    om: &OrientedMatroid,
    k_range: &RangeInclusive<usize>,
    store_upto: usize,
    budget: &SweepBudget,
) -> Result<Counts> {
    let n = om.num_topes();
    let plus: Vec<IndexSet> = om.positive_halfspaces().to_vec();
    let minus: Vec<IndexSet> = plus.iter().map(|&h| om.all_topes() - h).collect();
    let maxplus = om.max_positive_topes();
    let mut counts = Counts::new(n);
    let top = k_range.end().max(&store_upto).to_owned();
    for k in 1..=top {
        let wanted = k_range.contains(&k);
        let store = k <= store_upto;
        if !wanted && !store {
            continue;
        }
        let found: Vec<(u64, u64, u64, Vec<u64>)> = (0..n)
            .into_par_iter()
            .map(|first| {
                let (mut all, mut free, mut mp, mut kept) = (0u64, 0u64, 0u64, Vec::new());
                let mut margin: Vec<i64> = plus.iter().map(|h| if h.contains(first) { 1 } else { -1 }).collect();
                majority_dfs(&plus, n, k, first + 1, &mut margin, 1u128 << first, &mut |s| {
                    let set = IndexSet(s);
                    all += 1;
                    if is_free_of_opposites(om, set) {
                        free += 1;
                    }
                    if set.is_subset(maxplus) {
                        mp += 1;
                    }
                    if store {
                        kept.push(s as u64);
                    }
                    true
                });
                (all, free, mp, kept)
            })
            .collect();
        let anti: u64 = (0..n)
            .into_par_iter()
            .map(|first| {
                let mut count = 0u64;
                let mut margin: Vec<i64> = minus.iter().map(|h| if h.contains(first) { 1 } else { -1 }).collect();
                majority_dfs(&minus, n, k, first + 1, &mut margin, 1u128 << first, &mut |_| {
                    count += 1;
                    true
                });
                count
            })
            .sum();
        for (all, free, mp, kept) in found {
            counts.committees[k] += all;
            counts.free[k] += free;
            counts.maxplus[k] += mp;
            counts.stored.extend(kept);
        }
        counts.anti[k] = anti;
        if counts.stored.len() > budget.max_stored {
            return Err(cap("stored committees", counts.stored.len(), budget.max_stored));
        }
    }
    Ok(counts)
}

/// Minimal committees per size: scanning by increasing size, a committee is
/// minimal iff it contains no minimal committee found earlier.
fn minimal_counts(stored: &[u64], n: usize) -> Vec<u64> {
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for &s in stored {
        by_size[s.count_ones() as usize].push(s);
    }
    let mut minimal: Vec<u64> = Vec::new();
    let mut out = vec![0u64; n + 1];
    for (size, layer) in by_size.iter().enumerate() {
        let fresh: Vec<u64> = layer
            .par_iter()
            .copied()
            .filter(|&k| !minimal.iter().any(|&m| m & !k == 0))
            .collect();
        out[size] = fresh.len() as u64;
        minimal.extend(fresh);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{paper_example, triangle};

    fn set(om: &OrientedMatroid, topes: &[&str]) -> IndexSet {
        topes
            .iter()
            .map(|s| om.topes().iter().position(|x| x.to_string() == *s).unwrap())
            .collect()
    }

    #[test]
    fn triangle_committee_predicates() {
        let c3 = triangle();
        let k = set(&c3, &["++-", "-++", "+-+"]);
        assert!(is_committee(&c3, k).unwrap());
        assert!(is_free_of_opposites(&c3, k));
        assert!(is_minimal_committee(&c3, k).unwrap());
        assert!(!is_committee(&c3, c3.all_topes()).unwrap());
        assert!(!is_committee(&c3, set(&c3, &["+--"])).unwrap());
        assert!(is_free_of_opposites(&c3, IndexSet::EMPTY));
        assert!(!is_free_of_opposites(&c3, set(&c3, &["+--", "-++"])));
        assert_eq!(
            is_committee(&c3, IndexSet::singleton(6)),
            Err(Error::IndexOutOfRange { index: 6, len: 6 })
        );
        assert_eq!(is_minimal_committee(&c3, set(&c3, &["+--"])), Err(Error::NotACommittee));
    }

    #[test]
    fn unique_triangle_committee() {
        let c3 = triangle();
        let committees: Vec<IndexSet> = IndexSet::full(6)
            .subsets_of_size(3)
            .filter(|&s| is_committee(&c3, s).unwrap())
            .collect();
        assert_eq!(committees, vec![set(&c3, &["++-", "-++", "+-+"])]);
    }

    #[test]
    fn triangle_sweep() {
        let c3 = triangle();
        for strategy in [SweepStrategy::Full, SweepStrategy::PerCardinality] {
            let r = kappa_sweep_with(&c3, 1..=5, Variants::ALL, &SweepBudget::default(), strategy).unwrap();
            assert_eq!(r.kappa, vec![0, 0, 1, 0, 0]);
            assert_eq!(r.anti, vec![0, 0, 1, 0, 0]);
            assert_eq!(r.kappa_free.unwrap()[2], 1);
            assert_eq!(r.kappa_min.unwrap()[2], 1);
            assert_eq!(r.kappa_maxplus.unwrap()[2], 1);
        }
    }

    #[test]
    fn blocking_formulation_matches_majority() {
        let om = paper_example();
        for s in IndexSet::full(28).subsets_of_size(5).take(20_000) {
            assert_eq!(is_blocking_set(&om, s).unwrap(), is_committee(&om, s).unwrap());
        }
    }

    #[test]
    fn minimality_matches_literal_blocking_definition() {
        let om = paper_example();
        let r = kappa_sweep(&om, 1..=6, Variants::ALL, &SweepBudget::default()).unwrap();
        assert_eq!(r.kappa, vec![0, 0, 3, 0, 144, 1]);
        // Literal: no proper subset of any size is a blocking set for its size.
        let mut literal = [0u64; 7];
        for k in 3..=6 {
            for s in IndexSet::full(28).subsets_of_size(k) {
                if is_committee(&om, s).unwrap() {
                    let minimal = s.subsets().all(|p| p == s || p.is_empty() || !is_blocking_set(&om, p).unwrap());
                    assert_eq!(minimal, is_minimal_committee(&om, s).unwrap());
                    literal[k] += minimal as u64;
                }
            }
        }
        assert_eq!(r.kappa_min.unwrap(), literal[1..=6].to_vec());
    }

    #[test]
    fn strategies_agree_on_paper_prefix() {
        let om = paper_example();
        let a = kappa_sweep_with(&om, 1..=7, Variants::ALL, &SweepBudget::default(), SweepStrategy::PerCardinality)
            .unwrap();
        assert_eq!(a.kappa, vec![0, 0, 3, 0, 144, 1, 1942]);
        assert_eq!(a.kappa_free.as_ref().unwrap(), &vec![0, 0, 3, 0, 111, 1, 778]);
        assert_eq!(a.anti, a.kappa);
    }

    #[test]
    fn out_of_range() {
        let c3 = triangle();
        let b = SweepBudget::default();
        assert!(matches!(kappa_sweep(&c3, 0..=3, Variants::default(), &b), Err(Error::OutOfRangeK { .. })));
        assert!(matches!(kappa_sweep(&c3, 1..=6, Variants::default(), &b), Err(Error::OutOfRangeK { .. })));
    }
}
