use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use crate::error::{cap, Error, Result};
use crate::sets::{binomial, IndexSet, MAX_INDEX};

/// Largest support for which Möbius values come from a transform over all
/// its subsets rather than element by element.
const MAX_TRANSFORM_SUPPORT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeBudget {
    pub max_elements: usize,
    /// Candidate unions examined by [`union_semilattice_of_layers`].
    pub max_candidates: u128,
}

impl Default for LatticeBudget {
    fn default() -> Self {
        LatticeBudget {
            max_elements: 1_000_000,
            max_candidates: 1 << 26,
        }
    }
}

/// Unions of nonempty subfamilies of a generator family, ordered by
/// inclusion, with a formal least element `0̂` below everything.
///
/// With a size cap (or an admissibility filter) only the admissible unions
/// are kept. Every union strictly below a kept union is itself kept, since
/// it is a subset of it, so down-sets, and hence Möbius values, of kept
/// elements are exactly those of the uncapped lattice.
#[derive(Debug)]
pub struct GeneratedJoinSemilattice {
    universe: usize,
    cap: Option<usize>,
    generators: Vec<IndexSet>,
    elements: Vec<IndexSet>,
    index: HashMap<IndexSet, usize>,
    mobius: OnceLock<Vec<i128>>,
}

pub fn union_semilattice(
    universe: usize,
    generators: &[IndexSet],
    size_cap: Option<usize>,
    budget: &LatticeBudget,
) -> Result<GeneratedJoinSemilattice> {
    union_semilattice_filtered(universe, generators, size_cap, &|_| true, budget)
}

/// As [`union_semilattice`], keeping only unions accepted by `admissible`.
/// The filter must be inherited by subsets (e.g. "free of opposites").
pub fn union_semilattice_filtered(
    universe: usize,
    generators: &[IndexSet],
    size_cap: Option<usize>,
    admissible: &dyn Fn(IndexSet) -> bool,
    budget: &LatticeBudget,
) -> Result<GeneratedJoinSemilattice> {
    if universe > MAX_INDEX {
        return Err(cap("lattice universe", universe, MAX_INDEX));
    }
    if generators.iter().any(|g| g.is_empty()) {
        return Err(Error::EmptyMember);
    }
    let keep = |s: IndexSet| size_cap.is_none_or(|c| s.len() <= c) && admissible(s);
    let mut gens: Vec<IndexSet> = generators.iter().copied().filter(|&g| keep(g)).collect();
    gens.sort_by_key(|s| (s.len(), *s));
    gens.dedup();

    let mut seen: HashSet<IndexSet> = gens.iter().copied().collect();
    let mut frontier = gens.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            for &g in &gens {
                let y = x | g;
                if y != x && keep(y) && seen.insert(y) {
                    next.push(y);
                }
            }
        }
        if seen.len() > budget.max_elements {
            return Err(cap("lattice elements", seen.len(), budget.max_elements));
        }
        frontier = next;
    }
    let mut elements: Vec<IndexSet> = seen.into_iter().collect();
    elements.sort_by_key(|s| (s.len(), *s));
    let index = elements.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    Ok(GeneratedJoinSemilattice {
        universe,
        cap: size_cap,
        generators: gens,
        elements,
        index,
        mobius: OnceLock::new(),
    })
}

/// The union semilattice generated by `⋃_i C(A_i, c_i)`, all `c_i`-subsets
/// of the parts `A_i`, without listing the generators: a set `U` is a union
/// of generators iff `U = ⋃ {U ∩ A_i : |U ∩ A_i| ≥ c_i}`. Candidates are
/// the admissible subsets of `⋃ A_i` up to the cap.
pub fn union_semilattice_of_layers(
    universe: usize,
    parts: &[(IndexSet, usize)],
    size_cap: Option<usize>,
    admissible: &(dyn Fn(IndexSet) -> bool + Sync),
    budget: &LatticeBudget,
) -> Result<GeneratedJoinSemilattice> {
    if universe > MAX_INDEX {
        return Err(cap("lattice universe", universe, MAX_INDEX));
    }
    if parts.iter().any(|&(_, c)| c == 0) {
        return Err(Error::EmptyMember);
    }
    let parts: Vec<(IndexSet, usize)> = parts.iter().copied().filter(|&(a, c)| a.len() >= c).collect();
    let support: Vec<usize> = parts.iter().fold(IndexSet::EMPTY, |s, &(a, _)| s | a).iter().collect();
    let limit = size_cap.unwrap_or(support.len()).min(support.len());
    let candidates: u128 = (0..=limit).map(|s| binomial(support.len() as i64, s as i64) as u128).sum();
    if candidates > budget.max_candidates {
        return Err(cap("lattice candidates", candidates, budget.max_candidates));
    }
    let covered = |u: IndexSet| {
        parts.iter().fold(IndexSet::EMPTY, |acc, &(a, c)| {
            let x = u & a;
            if x.len() >= c {
                acc | x
            } else {
                acc
            }
        })
    };
    let mut elements = Vec::new();
    let mut stack = vec![(IndexSet::EMPTY, 0usize)];
    while let Some((u, from)) = stack.pop() {
        if !u.is_empty() && covered(u) == u {
            elements.push(u);
            if elements.len() > budget.max_elements {
                return Err(cap("lattice elements", elements.len(), budget.max_elements));
            }
        }
        if u.len() < limit {
            for (i, &x) in support.iter().enumerate().skip(from) {
                let w = u.with(x);
                if admissible(w) {
                    stack.push((w, i + 1));
                }
            }
        }
    }
    elements.sort_by_key(|s| (s.len(), *s));
    let generators = elements
        .iter()
        .copied()
        .filter(|e| parts.iter().any(|&(a, c)| e.len() == c && e.is_subset(a)))
        .collect();
    let index = elements.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    Ok(GeneratedJoinSemilattice {
        universe,
        cap: size_cap,
        generators,
        elements,
        index,
        mobius: OnceLock::new(),
    })
}

impl GeneratedJoinSemilattice {
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn size_cap(&self) -> Option<usize> {
        self.cap
    }

    /// Generators that survived the cap/filter, deduplicated.
    pub fn generators(&self) -> &[IndexSet] {
        &self.generators
    }

    /// Elements above `0̂`, by increasing size.
    pub fn elements(&self) -> &[IndexSet] {
        &self.elements
    }

    /// Number of elements including `0̂`.
    pub fn len(&self) -> usize {
        self.elements.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, set: IndexSet) -> bool {
        self.index.contains_key(&set)
    }

    /// The greatest element, if the kept elements have one.
    pub fn top(&self) -> Option<IndexSet> {
        let all = self.elements.iter().fold(IndexSet::EMPTY, |a, &b| a | b);
        self.contains(all).then_some(all)
    }

    /// Positions of the elements strictly below `self.elements()[pos]`.
    fn strictly_below(&self, pos: usize) -> Vec<usize> {
        let z = self.elements[pos];
        let smaller = self.elements.partition_point(|s| s.len() < z.len());
        if z.len() < 63 && (1usize << z.len()) < smaller {
            z.subsets()
                .filter(|&s| s != z)
                .filter_map(|s| self.index.get(&s).copied())
                .collect()
        } else {
            (0..smaller).filter(|&i| self.elements[i].is_subset(z)).collect()
        }
    }

    /// `μ(0̂, z)` for every element `z` above `0̂`, aligned with
    /// [`elements`](Self::elements); `μ(0̂, 0̂) = 1` is implicit.
    pub fn mobius_below(&self) -> &[i128] {
        self.mobius.get_or_init(|| {
            let support = self.elements.iter().fold(IndexSet::EMPTY, |a, &b| a | b);
            let s = support.len();
            let recursive_cost: u128 = {
                let mut smaller = 0usize;
                let mut cost = 0u128;
                for (pos, z) in self.elements.iter().enumerate() {
                    if pos > 0 && self.elements[pos - 1].len() < z.len() {
                        smaller = pos;
                    }
                    cost += (1u128 << z.len().min(100)).min(smaller as u128);
                }
                cost
            };
            if s <= MAX_TRANSFORM_SUPPORT && recursive_cost > (4 * s as u128) << s {
                return self.mobius_by_transform(support);
            }
            let mut mu = vec![0i128; self.elements.len()];
            for pos in 0..self.elements.len() {
                let below: i128 = self.strictly_below(pos).into_iter().map(|i| mu[i]).sum();
                mu[pos] = -1 - below;
            }
            mu
        })
    }

    /// Every `S` below a kept `z` meets the kept elements in a down-set with
    /// greatest element `⋃{x ∈ L : x ⊆ S}` whenever it is nonempty, so
    /// `Σ_{x ∈ L, x ⊆ S} μ(0̂, x) = −[S contains an element]`. Inverting that
    /// over the Boolean lattice of the support gives `μ` on all of `L` at
    /// once.
    fn mobius_by_transform(&self, support: IndexSet) -> Vec<i128> {
        let s = support.len();
        let size = 1usize << s;
        let mut f = vec![0i32; size];
        for &z in &self.elements {
            f[support.extract(z) as usize] = 1;
        }
        for bit in 0..s {
            for x in 0..size {
                if x >> bit & 1 == 1 && f[x ^ 1 << bit] != 0 {
                    f[x] = 1;
                }
            }
        }
        for v in f.iter_mut() {
            *v = -*v;
        }
        for bit in 0..s {
            for x in 0..size {
                if x >> bit & 1 == 1 {
                    f[x] -= f[x ^ 1 << bit];
                }
            }
        }
        self.elements.iter().map(|&z| f[support.extract(z) as usize] as i128).collect()
    }

    pub fn mobius_at(&self, set: IndexSet) -> Option<i128> {
        self.index.get(&set).map(|&i| self.mobius_below()[i])
    }
}
