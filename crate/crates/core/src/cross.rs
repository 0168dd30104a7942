//! Relatively r-blocking elements in the face semilattice `O'(m)` of the
//! boundary of an m-crosspolytope: subsets of `{−m..−1, 1..m}` free of
//! opposites.
//!
//! Signed element `+i` is bit `i − 1` and `−i` is bit `m + i − 1`, so
//! opposite-freeness is a single mask test. A union containing an opposite
//! pair is the adjoined top `1̂` and carries no terms.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alternating::{grouped_sum, HitAll, Pairing};
use crate::blocking::{exceeds, floor_times, BRUTE_LIMIT};
use crate::error::{cap, Error, Result};
use crate::formulas::{double_mobius, grouped_eval, Evaluation, FormulaBudget};
use crate::sets::{binomial, pow2, IndexSet, MAX_INDEX};

/// Largest `m` supported (signed elements occupy `2m` bits).
pub const MAX_M: usize = MAX_INDEX / 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossMethod {
    DoubleMobius,
    DoubleIE,
}

impl CrossMethod {
    pub const ALL: [CrossMethod; 2] = [CrossMethod::DoubleMobius, CrossMethod::DoubleIE];

    pub fn tag(self) -> &'static str {
        match self {
            CrossMethod::DoubleMobius => "double-mobius",
            CrossMethod::DoubleIE => "double-ie",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossInstance {
    m: usize,
    antichain: Vec<IndexSet>,
    r: Ratio<u64>,
    k: usize,
}

/// Bit index of the signed element `e ∈ {±1..±m}`.
pub fn encode(m: usize, e: i64) -> Result<usize> {
    let a = e.unsigned_abs() as usize;
    if e == 0 || a > m {
        return Err(Error::ElementOutOfRange { element: a, t: m });
    }
    Ok(if e > 0 { a - 1 } else { m + a - 1 })
}

pub fn decode(m: usize, bit: usize) -> i64 {
    if bit < m {
        bit as i64 + 1
    } else {
        -((bit - m) as i64 + 1)
    }
}

pub fn is_opposite_free(m: usize, s: IndexSet) -> bool {
    Pairing::Opposites { half: m }.is_admissible(s)
}

/// Signed elements of `s`, positives first.
pub fn signed_elements(m: usize, s: IndexSet) -> Vec<i64> {
    s.iter().map(|b| decode(m, b)).collect()
}

impl CrossInstance {
    pub fn new(m: usize, antichain: Vec<IndexSet>, r: Ratio<u64>, k: usize) -> Result<Self> {
        if m == 0 || m > MAX_M {
            return Err(Error::InvalidInstance(format!("m = {m} outside 1..={MAX_M}")));
        }
        if r >= Ratio::from_integer(1) {
            return Err(Error::InvalidInstance(format!("r = {r} must lie in [0, 1)")));
        }
        if k == 0 || k > m {
            return Err(Error::OutOfRangeK { k, lo: 1, hi: m });
        }
        if antichain.is_empty() {
            return Err(Error::InvalidInstance("antichain is empty".into()));
        }
        let ground = IndexSet::full(2 * m);
        for (i, &a) in antichain.iter().enumerate() {
            if let Some(b) = (a - ground).min() {
                return Err(Error::ElementOutOfRange { element: b, t: m });
            }
            if a.is_empty() {
                return Err(Error::EmptyMember);
            }
            if !is_opposite_free(m, a) {
                return Err(Error::InvalidInstance(format!(
                    "member {:?} contains an opposite pair",
                    signed_elements(m, a)
                )));
            }
            if antichain[..i].iter().any(|&b| a.is_subset(b) || b.is_subset(a)) {
                return Err(Error::InvalidInstance(format!(
                    "member {:?} is comparable with an earlier member",
                    signed_elements(m, a)
                )));
            }
        }
        Ok(CrossInstance { m, antichain, r, k })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn antichain(&self) -> &[IndexSet] {
        &self.antichain
    }

    pub fn r(&self) -> Ratio<u64> {
        self.r
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn nu(&self) -> usize {
        floor_times(self.r, self.k) + 1
    }

    pub fn is_blocking(&self, b: IndexSet) -> bool {
        self.antichain.iter().all(|&l| exceeds(self.r, (b & l).len(), self.k))
    }

    /// `ν ≤ min |λ|`.
    pub fn satisfies_rank_bound(&self) -> bool {
        self.antichain.iter().all(|l| l.len() >= self.nu())
    }
}

/// `|O'(m)^{(k)}| = 2^k C(m, k)`.
pub fn layer_size(m: usize, k: usize) -> u128 {
    (pow2(k as i64) * binomial(m as i64, k as i64)) as u128
}

/// The rank-`k` elements of `O'(m)`: choose a support, then signs.
pub fn layer(m: usize, k: usize) -> impl Iterator<Item = IndexSet> {
    IndexSet::full(m).subsets_of_size(k).flat_map(move |support| {
        support.subsets().map(move |neg| (support - neg) | IndexSet(neg.0 << m))
    })
}

pub fn brute_blockers_cross(inst: &CrossInstance) -> Result<u128> {
    let size = layer_size(inst.m, inst.k);
    if size > BRUTE_LIMIT {
        return Err(cap("crosspolytope layer enumeration", size, BRUTE_LIMIT));
    }
    Ok(layer(inst.m, inst.k).filter(|&b| inst.is_blocking(b)).count() as u128)
}

pub fn count_blockers_cross(inst: &CrossInstance, method: CrossMethod) -> Result<u128> {
    let v = evaluate_blockers_cross(inst, method, &FormulaBudget::default())?.value;
    u128::try_from(v).map_err(|_| Error::InvalidInstance(format!("formula produced a negative count {v}")))
}

pub fn evaluate_blockers_cross(inst: &CrossInstance, method: CrossMethod, budget: &FormulaBudget) -> Result<Evaluation> {
    if !inst.satisfies_rank_bound() {
        let min = inst.antichain.iter().map(|l| l.len()).min().unwrap_or(0);
        return Err(Error::ConstraintViolation(format!(
            "floor(r*k)+1 = {} exceeds the smallest member rank {min}",
            inst.nu()
        )));
    }
    let (m, k) = (inst.m, inst.k);
    let pairing = Pairing::Opposites { half: m };
    let w = |s: usize| {
        if s > k {
            0
        } else {
            pow2((k - s) as i64) * binomial((m - s) as i64, (m - k) as i64)
        }
    };
    match method {
        CrossMethod::DoubleMobius => double_mobius(2 * m, &inst.antichain, inst.nu(), k, pairing, &w, budget),
        CrossMethod::DoubleIE => {
            let integrand = HitAll {
                parts: inst.antichain.clone(),
                nu: inst.nu(),
            };
            let out = grouped_sum(2 * m, budget.reach(k, 2 * m), pairing, &w, &integrand, &budget.grouped)?;
            Ok(grouped_eval(out.value, out.visited, k))
        }
    }
}

/// One set per nonblank line, comma-separated nonzero integers in
/// `−m..=m`; `#` starts a comment.
pub fn parse_signed_antichain(text: &str, m: usize) -> Result<Vec<IndexSet>> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut set = IndexSet::EMPTY;
        for tok in line.split(',') {
            let tok = tok.trim();
            let e: i64 = tok.parse().map_err(|_| Error::MalformedLine {
                line: no + 1,
                reason: format!("{tok:?} is not an integer"),
            })?;
            set = set.with(encode(m, e)?);
        }
        out.push(set);
    }
    Ok(out)
}

pub fn format_signed_antichain(m: usize, antichain: &[IndexSet]) -> String {
    antichain
        .iter()
        .map(|&s| {
            let v: Vec<String> = signed_elements(m, s).iter().map(|e| e.to_string()).collect();
            v.join(",") + "\n"
        })
        .collect()
}

/// A seeded antichain of opposite-free sets with ranks in `ranks`
/// (clamped to `1..=m`).
pub fn random_signed_antichain(
    m: usize,
    members: usize,
    ranks: std::ops::RangeInclusive<usize>,
    seed: u64,
) -> Result<Vec<IndexSet>> {
    if m == 0 || m > MAX_M {
        return Err(Error::InvalidInstance(format!("m = {m} outside 1..={MAX_M}")));
    }
    let lo = (*ranks.start()).max(1);
    let hi = (*ranks.end()).min(m);
    if lo > hi || members == 0 {
        return Err(Error::InvalidInstance("empty rank range or member count".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<IndexSet> = Vec::new();
    let attempts = 64 * members;
    for _ in 0..attempts {
        if out.len() == members {
            break;
        }
        let rank = rng.gen_range(lo..=hi);
        let mut pool: Vec<usize> = (0..m).collect();
        let mut s = IndexSet::EMPTY;
        for _ in 0..rank {
            let i = pool.swap_remove(rng.gen_range(0..pool.len()));
            s = s.with(if rng.gen_bool(0.5) { i } else { i + m });
        }
        if out.iter().all(|&t| !t.is_subset(s) && !s.is_subset(t)) {
            out.push(s);
        }
    }
    if out.is_empty() {
        return Err(Error::RetryBudgetExceeded { attempts });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signed(m: usize, s: &[i64]) -> IndexSet {
        s.iter().map(|&e| encode(m, e).unwrap()).collect()
    }

    fn inst(m: usize, sets: &[&[i64]], p: u64, q: u64, k: usize) -> CrossInstance {
        CrossInstance::new(m, sets.iter().map(|s| signed(m, s)).collect(), Ratio::new(p, q), k).unwrap()
    }

    #[test]
    fn rank_one_examples() {
        let a = inst(2, &[&[1]], 0, 1, 1);
        assert_eq!(brute_blockers_cross(&a).unwrap(), 1);
        for method in CrossMethod::ALL {
            assert_eq!(count_blockers_cross(&a, method).unwrap(), 1, "{method:?}");
        }
        let b = inst(2, &[&[1], &[-1]], 0, 1, 1);
        assert_eq!(brute_blockers_cross(&b).unwrap(), 0);
        for method in CrossMethod::ALL {
            assert_eq!(count_blockers_cross(&b, method).unwrap(), 0, "{method:?}");
        }
    }

    #[test]
    fn pairs_in_three() {
        let a = inst(3, &[&[1, 2], &[2, 3]], 1, 2, 2);
        let expected = brute_blockers_cross(&a).unwrap();
        for method in CrossMethod::ALL {
            assert_eq!(count_blockers_cross(&a, method).unwrap(), expected, "{method:?}");
        }
    }

    #[test]
    fn layers() {
        for m in 1..=6 {
            for k in 0..=m {
                let all: Vec<IndexSet> = layer(m, k).collect();
                assert_eq!(all.len() as u128, layer_size(m, k));
                assert!(all.iter().all(|&s| s.len() == k && is_opposite_free(m, s)));
            }
        }
    }

    #[test]
    fn validation_and_parsing() {
        assert!(CrossInstance::new(2, vec![signed(2, &[1, -1])], Ratio::new(0, 1), 1).is_err());
        assert!(CrossInstance::new(2, vec![signed(2, &[1]), signed(2, &[1, 2])], Ratio::new(0, 1), 1).is_err());
        let a = parse_signed_antichain("1,-2\n-1\n", 2).unwrap();
        assert_eq!(a, vec![signed(2, &[1, -2]), signed(2, &[-1])]);
        assert_eq!(format_signed_antichain(2, &a), "1,-2\n-1\n");
        assert!(parse_signed_antichain("3", 2).is_err());
        assert!(parse_signed_antichain("0", 2).is_err());
        let c = inst(3, &[&[1]], 1, 2, 2);
        assert!(matches!(count_blockers_cross(&c, CrossMethod::DoubleIE), Err(Error::ConstraintViolation(_))));
    }
}
