//! Relatively r-blocking elements of rank `k` in the Boolean lattice `B(n)`:
//! `k`-sets `b` with `|b ∩ λ| > r·k` for every member `λ` of an antichain.
//!
//! Every formula is a sum over families of generator sets grouped by their
//! union (see [`crate::alternating`]); the Möbius variants walk the explicit
//! generated union semilattice when it fits the lattice budget.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alternating::{grouped_sum, AvoidAll, CoverIntegrand, HitAll, LabelSystem, MobiusNumber, Pairing};
use crate::error::{acc_add, cap, Error, Result};
use crate::formulas::{double_mobius, explicit_or_grouped, grouped_eval, lattice_sum, Evaluation, FormulaBudget};
use crate::poset::{min_sets, union_semilattice, union_semilattice_of_layers};
use crate::sets::{binomial, sign, IndexSet, MAX_INDEX};

/// Largest `C(n, k)` the brute-force counter will enumerate.
pub const BRUTE_LIMIT: u128 = 1 << 28;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockingInstance {
    n: usize,
    antichain: Vec<IndexSet>,
    r: Ratio<u64>,
    k: usize,
}

impl BlockingInstance {
    pub fn new(n: usize, antichain: Vec<IndexSet>, r: Ratio<u64>, k: usize) -> Result<Self> {
        if n == 0 || n > MAX_INDEX {
            return Err(Error::InvalidInstance(format!("ground size {n} outside 1..={MAX_INDEX}")));
        }
        if r >= Ratio::from_integer(1) {
            return Err(Error::InvalidInstance(format!("r = {r} must lie in [0, 1)")));
        }
        if k == 0 || k > n {
            return Err(Error::OutOfRangeK { k, lo: 1, hi: n });
        }
        check_antichain(n, &antichain)?;
        Ok(BlockingInstance { n, antichain, r, k })
    }

    pub fn n(&self) -> usize {
        self.n
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

    /// `⌊r·k⌋`.
    pub fn floor_rk(&self) -> usize {
        floor_times(self.r, self.k)
    }

    /// `ν = ⌊r·k⌋ + 1`.
    pub fn nu(&self) -> usize {
        self.floor_rk() + 1
    }

    /// `|b ∩ λ| > r·k` for every member, compared as integers.
    pub fn is_blocking(&self, b: IndexSet) -> bool {
        self.antichain.iter().all(|&l| exceeds(self.r, (b & l).len(), self.k))
    }

    /// Member-wise complements `Λ^⊥`.
    pub fn complements(&self) -> Vec<IndexSet> {
        let full = IndexSet::full(self.n);
        self.antichain.iter().map(|&l| full - l).collect()
    }
}

pub(crate) fn floor_times(r: Ratio<u64>, k: usize) -> usize {
    (*r.numer() as u128 * k as u128 / *r.denom() as u128) as usize
}

/// `x > r·k` via `q·x > p·k`.
pub(crate) fn exceeds(r: Ratio<u64>, x: usize, k: usize) -> bool {
    *r.denom() as u128 * x as u128 > *r.numer() as u128 * k as u128
}

fn check_antichain(n: usize, antichain: &[IndexSet]) -> Result<()> {
    let full = IndexSet::full(n);
    if antichain.is_empty() {
        return Err(Error::InvalidInstance("antichain is empty".into()));
    }
    for (i, &a) in antichain.iter().enumerate() {
        if let Some(e) = (a - full).min() {
            return Err(Error::ElementOutOfRange { element: e + 1, t: n });
        }
        if a.is_empty() || a == full {
            return Err(Error::InvalidInstance(format!(
                "member {:?} is the bottom or top of the lattice",
                a.to_one_based()
            )));
        }
        if let Some(&b) = antichain[..i].iter().find(|&&b| a.is_subset(b) || b.is_subset(a)) {
            return Err(Error::InvalidInstance(format!(
                "members {:?} and {:?} are comparable",
                b.to_one_based(),
                a.to_one_based()
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstraintStatus {
    /// `⌊rk⌋ + 1 ≤ min |λ|` and `max |λ| ≤ n + ⌊rk⌋ − k`.
    pub satisfies_22: bool,
    /// `⌊rk⌋ + 1 ≤ min |λ|`.
    pub satisfies_23: bool,
}

pub fn check_constraints(inst: &BlockingInstance) -> ConstraintStatus {
    let min = inst.antichain.iter().map(|l| l.len()).min().unwrap_or(0);
    let max = inst.antichain.iter().map(|l| l.len()).max().unwrap_or(0);
    let lower = inst.nu() <= min;
    ConstraintStatus {
        satisfies_22: lower && max + inst.k <= inst.n + inst.floor_rk(),
        satisfies_23: lower,
    }
}

fn require(inst: &BlockingInstance, strong: bool) -> Result<()> {
    let status = check_constraints(inst);
    let min = inst.antichain.iter().map(|l| l.len()).min().unwrap_or(0);
    let max = inst.antichain.iter().map(|l| l.len()).max().unwrap_or(0);
    if !status.satisfies_23 {
        return Err(Error::ConstraintViolation(format!(
            "floor(r*k)+1 = {} exceeds the smallest member size {min}",
            inst.nu()
        )));
    }
    if strong && !status.satisfies_22 {
        return Err(Error::ConstraintViolation(format!(
            "largest member size {max} exceeds n + floor(r*k) - k = {}",
            inst.n + inst.floor_rk() - inst.k
        )));
    }
    Ok(())
}

pub fn brute_blockers(inst: &BlockingInstance) -> Result<u128> {
    Ok(brute_blockers_list(inst)?.len() as u128)
}

/// The blocking `k`-sets themselves, in colex order.
pub fn brute_blockers_list(inst: &BlockingInstance) -> Result<Vec<IndexSet>> {
    let total = binomial(inst.n as i64, inst.k as i64) as u128;
    if total > BRUTE_LIMIT {
        return Err(cap("blocking enumeration", total, BRUTE_LIMIT));
    }
    Ok(IndexSet::full(inst.n)
        .subsets_of_size(inst.k)
        .filter(|&b| inst.is_blocking(b))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IeMethod {
    ComplementIdeal,
    Ideal,
    Vandermonde,
    DoubleIE,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MobiusMethod {
    ComplementIdeal,
    Ideal,
    Vandermonde,
    DoubleMobius,
}

impl IeMethod {
    pub const ALL: [IeMethod; 4] = [
        IeMethod::ComplementIdeal,
        IeMethod::Ideal,
        IeMethod::Vandermonde,
        IeMethod::DoubleIE,
    ];
}

impl MobiusMethod {
    pub const ALL: [MobiusMethod; 4] = [
        MobiusMethod::ComplementIdeal,
        MobiusMethod::Ideal,
        MobiusMethod::Vandermonde,
        MobiusMethod::DoubleMobius,
    ];
}

/// Every way of counting blockers, for drivers that iterate over all of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockingMethod {
    Brute,
    Ie(IeMethod),
    Mobius(MobiusMethod),
    Nerve,
}

impl BlockingMethod {
    pub fn all() -> Vec<BlockingMethod> {
        let mut out = vec![BlockingMethod::Brute];
        out.extend(IeMethod::ALL.iter().map(|&m| BlockingMethod::Ie(m)));
        out.extend(MobiusMethod::ALL.iter().map(|&m| BlockingMethod::Mobius(m)));
        out.push(BlockingMethod::Nerve);
        out
    }

    pub fn tag(self) -> &'static str {
        match self {
            BlockingMethod::Brute => "brute",
            BlockingMethod::Ie(IeMethod::ComplementIdeal) => "ie-complement",
            BlockingMethod::Ie(IeMethod::Ideal) => "ie-ideal",
            BlockingMethod::Ie(IeMethod::Vandermonde) => "ie-vandermonde",
            BlockingMethod::Ie(IeMethod::DoubleIE) => "double-ie",
            BlockingMethod::Mobius(MobiusMethod::ComplementIdeal) => "mobius-complement",
            BlockingMethod::Mobius(MobiusMethod::Ideal) => "mobius-ideal",
            BlockingMethod::Mobius(MobiusMethod::Vandermonde) => "mobius-vandermonde",
            BlockingMethod::Mobius(MobiusMethod::DoubleMobius) => "double-mobius",
            BlockingMethod::Nerve => "nerve",
        }
    }

    /// Whether the method's constraint holds for `inst`.
    pub fn applies(self, inst: &BlockingInstance) -> bool {
        let status = check_constraints(inst);
        match self {
            BlockingMethod::Brute => true,
            BlockingMethod::Ie(IeMethod::DoubleIE)
            | BlockingMethod::Mobius(MobiusMethod::DoubleMobius)
            | BlockingMethod::Nerve => status.satisfies_23,
            _ => status.satisfies_22,
        }
    }

    pub fn count(self, inst: &BlockingInstance, budget: &FormulaBudget) -> Result<u128> {
        match self {
            BlockingMethod::Brute => brute_blockers(inst),
            BlockingMethod::Ie(m) => to_count(evaluate_blockers_ie(inst, m, budget)?.value),
            BlockingMethod::Mobius(m) => to_count(evaluate_blockers_mobius(inst, m, budget)?.value),
            BlockingMethod::Nerve => to_count(evaluate_blockers_nerve(inst, budget)?.value),
        }
    }
}

impl fmt::Display for BlockingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for BlockingMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BlockingMethod::all()
            .into_iter()
            .find(|m| m.tag() == s)
            .ok_or_else(|| Error::InvalidInstance(format!("unknown blocking method {s:?}")))
    }
}

fn to_count(v: i128) -> Result<u128> {
    u128::try_from(v).map_err(|_| Error::InvalidInstance(format!("formula produced a negative count {v}")))
}

pub fn count_blockers_ie(inst: &BlockingInstance, method: IeMethod) -> Result<u128> {
    to_count(evaluate_blockers_ie(inst, method, &FormulaBudget::default())?.value)
}

pub fn count_blockers_mobius(inst: &BlockingInstance, method: MobiusMethod) -> Result<u128> {
    to_count(evaluate_blockers_mobius(inst, method, &FormulaBudget::default())?.value)
}

pub fn count_blockers_nerve(inst: &BlockingInstance) -> Result<u128> {
    to_count(evaluate_blockers_nerve(inst, &FormulaBudget::default())?.value)
}

/// The three plain generator families: `(parts, cap, weight, constant)`.
struct Plain {
    parts: Vec<(IndexSet, usize)>,
    size_cap: usize,
    weight: Box<dyn Fn(usize) -> i128 + Sync>,
    constant: i128,
}

fn plain(inst: &BlockingInstance, which: MobiusMethod, truncate: bool) -> Plain {
    let n = inst.n as i64;
    let k = inst.k as i64;
    let f = inst.floor_rk();
    let total = binomial(n, k);
    let un = inst.n;
    let limit = |c: usize| if truncate { c } else { un };
    match which {
        MobiusMethod::ComplementIdeal => Plain {
            parts: inst.complements().into_iter().map(|c| (c, inst.k - f)).collect(),
            size_cap: limit(inst.k),
            weight: Box::new(move |s| binomial(n - s as i64, n - k)),
            constant: total,
        },
        MobiusMethod::Ideal => Plain {
            parts: inst.antichain.iter().map(|&l| (l, l.len() - f)).collect(),
            size_cap: limit(inst.n - inst.k),
            weight: Box::new(move |s| binomial(n - s as i64, k)),
            constant: total,
        },
        MobiusMethod::Vandermonde => Plain {
            parts: inst.antichain.iter().map(|&l| (l, l.len() - f)).collect(),
            size_cap: un,
            weight: Box::new(move |s| -(1..=k).map(|h| binomial(s as i64, h) * binomial(n - s as i64, k - h)).sum::<i128>()),
            constant: 0,
        },
        MobiusMethod::DoubleMobius => unreachable!("not a plain family"),
    }
}

/// `bmin ⋃_λ C(λ, |λ| − ⌊rk⌋)`.
pub fn ideal_generators(inst: &BlockingInstance) -> Vec<IndexSet> {
    let f = inst.floor_rk();
    let all: Vec<IndexSet> = inst
        .antichain
        .iter()
        .flat_map(|&l| l.subsets_of_size(l.len() - f))
        .collect();
    min_sets(&all)
}

pub fn evaluate_blockers_ie(inst: &BlockingInstance, method: IeMethod, budget: &FormulaBudget) -> Result<Evaluation> {
    let k = inst.k;
    let n = inst.n;
    match method {
        IeMethod::DoubleIE => {
            require(inst, false)?;
            let integrand = HitAll {
                parts: inst.antichain.clone(),
                nu: inst.nu(),
            };
            let nn = n as i64;
            let w = |s: usize| binomial(nn - s as i64, nn - k as i64);
            let size_cap = budget.reach(k, n);
            let out = grouped_sum(n, size_cap, Pairing::All, &w, &integrand, &budget.grouped)?;
            Ok(grouped_eval(out.value, out.visited, k))
        }
        other => {
            require(inst, true)?;
            let which = match other {
                IeMethod::ComplementIdeal => MobiusMethod::ComplementIdeal,
                IeMethod::Ideal => MobiusMethod::Ideal,
                _ => MobiusMethod::Vandermonde,
            };
            let p = plain(inst, which, budget.truncate);
            let avoid = AvoidAll { parts: p.parts };
            let out = grouped_sum(n, p.size_cap, Pairing::All, &*p.weight, &avoid, &budget.grouped)?;
            Ok(grouped_eval(acc_add(p.constant, out.value)?, out.visited, k))
        }
    }
}

pub fn evaluate_blockers_mobius(
    inst: &BlockingInstance,
    method: MobiusMethod,
    budget: &FormulaBudget,
) -> Result<Evaluation> {
    let k = inst.k;
    let n = inst.n;
    if method == MobiusMethod::DoubleMobius {
        require(inst, false)?;
        let nn = n as i64;
        let w = |s: usize| binomial(nn - s as i64, nn - k as i64);
        let size_cap = budget.reach(k, n);
        return double_mobius(n, &inst.antichain, inst.nu(), size_cap, Pairing::All, &w, budget);
    }
    require(inst, true)?;
    let p = plain(inst, method, budget.truncate);
    let lattice_budget = &budget.lattice;
    explicit_or_grouped(
        || {
            let lat = if method == MobiusMethod::ComplementIdeal {
                union_semilattice_of_layers(n, &p.parts, Some(p.size_cap), &|_| true, lattice_budget)?
            } else {
                let cap_opt = (p.size_cap < n).then_some(p.size_cap);
                union_semilattice(n, &ideal_generators(inst), cap_opt, lattice_budget)?
            };
            Ok((acc_add(p.constant, lattice_sum(&lat, &*p.weight)?)?, lat.elements().len() as u64))
        },
        || {
            let avoid = AvoidAll { parts: p.parts.clone() };
            let out = grouped_sum(n, p.size_cap, Pairing::All, &*p.weight, &avoid, &budget.grouped)?;
            Ok((acc_add(p.constant, out.value)?, out.visited))
        },
        k,
    )
}

/// Sum over families `D` of `ν`-sets below `Λ` whose supports
/// `{i : d ⊆ λ_i}` (faces of the nerve of `Λ`) cover every index, weighted
/// by `(−1)^{|D|} μ_{S(D)}(0̂, 1̂) C(n − |∪D|, k − |∪D|)`.
pub fn evaluate_blockers_nerve(inst: &BlockingInstance, budget: &FormulaBudget) -> Result<Evaluation> {
    require(inst, false)?;
    let n = inst.n;
    let k = inst.k;
    let labels = LabelSystem::new(n, inst.antichain.clone(), inst.nu())?;
    let integrand = CoverIntegrand::new(&labels, MobiusNumber::UnionLattice, None);
    let nn = n as i64;
    let w = |s: usize| binomial(nn - s as i64, k as i64 - s as i64);
    let size_cap = budget.reach(k, n);
    let out = grouped_sum(n, size_cap, Pairing::All, &w, &integrand, &budget.grouped)?;
    Ok(grouped_eval(out.value, out.visited, k))
}

/// `B(n)^{(j)} ∩ 𝔍(Λ)`, by enumeration.
pub fn ideal_layer(antichain: &[IndexSet], j: usize) -> Vec<IndexSet> {
    let mut out: Vec<IndexSet> = antichain.iter().flat_map(|&l| l.subsets_of_size(j)).collect();
    out.sort_by_key(|s| s.0);
    out.dedup();
    out
}

/// `|B(n)^{(j)} ∩ 𝔍(Λ)| = Σ_{C≠∅} (−1)^{|C|+1} C(|∩C|, j)`.
pub fn ideal_layer_size(antichain: &[IndexSet], j: usize) -> Result<u128> {
    if antichain.len() > 24 {
        return Err(cap("antichain members for layer inclusion-exclusion", antichain.len(), 24));
    }
    let mut total = 0i128;
    for mask in 1u32..(1 << antichain.len()) {
        let inter = (0..antichain.len())
            .filter(|&i| mask >> i & 1 == 1)
            .fold(IndexSet(u128::MAX), |a, i| a & antichain[i]);
        total = acc_add(total, -sign(mask.count_ones() as usize) * binomial(inter.len() as i64, j as i64))?;
    }
    u128::try_from(total).map_err(|_| Error::Overflow)
}

/// One set per nonblank line, comma-separated 1-based elements; `#` starts
/// a comment.
pub fn parse_antichain(text: &str, n: usize) -> Result<Vec<IndexSet>> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut set = IndexSet::EMPTY;
        for tok in line.split(',') {
            let tok = tok.trim();
            let e: usize = tok.parse().map_err(|_| Error::MalformedLine {
                line: no + 1,
                reason: format!("{tok:?} is not a positive integer"),
            })?;
            if e == 0 || e > n {
                return Err(Error::ElementOutOfRange { element: e, t: n });
            }
            set = set.with(e - 1);
        }
        out.push(set);
    }
    Ok(out)
}

pub fn format_antichain(antichain: &[IndexSet]) -> String {
    antichain
        .iter()
        .map(|s| {
            let v: Vec<String> = s.to_one_based().iter().map(|e| e.to_string()).collect();
            v.join(",") + "\n"
        })
        .collect()
}

/// A seeded nontrivial antichain of `members` sets over `{0..n}`, with
/// member sizes drawn from `sizes` (clamped to `1..n`).
pub fn random_antichain(n: usize, members: usize, sizes: std::ops::RangeInclusive<usize>, seed: u64) -> Result<Vec<IndexSet>> {
    if !(2..=MAX_INDEX).contains(&n) {
        return Err(Error::InvalidInstance(format!("ground size {n} outside 2..={MAX_INDEX}")));
    }
    let lo = (*sizes.start()).max(1);
    let hi = (*sizes.end()).min(n - 1);
    if lo > hi || members == 0 {
        return Err(Error::InvalidInstance("empty size range or member count".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<IndexSet> = Vec::new();
    let attempts = 64 * members;
    for _ in 0..attempts {
        if out.len() == members {
            break;
        }
        let size = rng.gen_range(lo..=hi);
        let mut pool: Vec<usize> = (0..n).collect();
        let mut s = IndexSet::EMPTY;
        for _ in 0..size {
            let i = rng.gen_range(0..pool.len());
            s = s.with(pool.swap_remove(i));
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
