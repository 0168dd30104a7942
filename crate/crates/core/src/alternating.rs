//! Grouped evaluation of alternating sums over set families.
//!
//! The counting formulas share one shape: a sum over nonempty families `D`
//! of generator sets, each family weighted by `(-1)^{|D|}` times some
//! family-dependent factor, times a binomial weight `w(|∪D|)`. Grouping the
//! families by their union `U` gives `Σ_U w(|U|) f(U)` with
//! `f(U) = Σ_{V⊆U} (-1)^{|U∖V|} φ(V)`, where `φ(V)` is the contribution of
//! all families living inside `V` (for plain families it is just
//! "V contains no generator"). Exchanging the two sums once more,
//!
//! ```text
//! Σ_{U≠∅} w(|U|) f(U) = Σ_V φ(V) · W(|V|) − w(0) φ(∅),
//! W(v) = Σ_{j≥0} (−1)^j · #{U ⊇ V : |U| = v + j} · w(v + j),
//! ```
//!
//! so each formula becomes a single pass over sets `V` with `|V|` at most
//! the largest union size carrying a nonzero weight. When the admissible
//! unions are the sets free of opposite pairs, the superset count becomes
//! `C(h − v, j) · 2^j` for `h` pairs.
//!
//! The integrands in this module cover the three kinds of family factors:
//! [`AvoidAll`] (plain families), [`HitAll`] (the double
//! inclusion-exclusion factor `Σ_C (−1)^{|C|}`), and the label-based
//! [`CoverIntegrand`] / [`DoubleMobiusIntegrand`] built on a
//! [`LabelSystem`].

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use rayon::prelude::*;

use crate::error::{acc_add, acc_mul, cap, Error, Result};
use crate::poset::{
    min_sets, union_mobius_number, union_semilattice, LatticeBudget, SimplicialComplex,
};
use crate::sets::{binomial, pow2, sign, IndexSet};

/// Which unions are admissible: all sets, or sets free of opposite pairs
/// where `i` and `i + half` are opposite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    All,
    Opposites { half: usize },
}

impl Pairing {
    #[inline]
    fn admits(self, v: IndexSet, x: usize) -> bool {
        match self {
            Pairing::All => true,
            Pairing::Opposites { half } => {
                let partner = if x < half { x + half } else { x - half };
                !v.contains(partner)
            }
        }
    }

    pub fn is_admissible(self, v: IndexSet) -> bool {
        match self {
            Pairing::All => true,
            Pairing::Opposites { half } => {
                let lo = v & IndexSet::full(half);
                let hi = IndexSet((v.0 >> half) & IndexSet::full(half).0);
                !lo.intersects(hi)
            }
        }
    }

    /// Number of admissible supersets of a `v`-set inside an `n`-set having
    /// `v + j` elements.
    fn supersets(self, n: usize, v: usize, j: usize) -> i128 {
        match self {
            Pairing::All => binomial((n - v) as i64, j as i64),
            Pairing::Opposites { half } => {
                binomial(half as i64 - v as i64, j as i64) * pow2(j as i64)
            }
        }
    }

    fn max_size(self, n: usize) -> usize {
        match self {
            Pairing::All => n,
            Pairing::Opposites { half } => half.min(n),
        }
    }
}

/// The family factor `φ(V)`, accumulated over all families inside `V`.
pub trait Integrand: Sync {
    fn value(&self, v: IndexSet) -> Result<i64>;

    /// True when `value(V) = 0` forces `value(W) = 0` for every `W ⊇ V`,
    /// which lets the enumeration skip whole subtrees.
    fn prunable(&self) -> bool {
        false
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupedBudget {
    /// Largest number of sets `V` the pass may visit.
    pub max_sets: u64,
}

impl Default for GroupedBudget {
    fn default() -> Self {
        GroupedBudget { max_sets: 1 << 31 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GroupedOutcome {
    pub value: i128,
    /// Sets `V` visited.
    pub visited: u64,
    /// Sets with a nonzero family factor.
    pub nonzero: u64,
}

/// The grouped weights `W(v)` for `v = 0..=max_size`.
pub fn grouped_weights(
    n: usize,
    max_size: usize,
    pairing: Pairing,
    weight: &dyn Fn(usize) -> i128,
) -> Result<Vec<i128>> {
    let mut out = Vec::with_capacity(max_size + 1);
    for v in 0..=max_size {
        let mut acc = 0i128;
        for j in 0..=(max_size - v) {
            let w = weight(v + j);
            if w == 0 {
                continue;
            }
            let term = acc_mul(pairing.supersets(n, v, j), w)?;
            acc = acc_add(acc, sign(j) * term)?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// `Σ_{U≠∅ admissible, |U|≤max_size} w(|U|) · Σ_{V⊆U} (−1)^{|U∖V|} φ(V)`
/// over subsets of `0..n`, evaluated as one pass over `V`.
///
/// `max_size` must bound every union with a nonzero weight; pass `n` when
/// there is no such bound.
pub fn grouped_sum(
    n: usize,
    max_size: usize,
    pairing: Pairing,
    weight: &dyn Fn(usize) -> i128,
    integrand: &dyn Integrand,
    budget: &GroupedBudget,
) -> Result<GroupedOutcome> {
    if n > crate::sets::MAX_INDEX {
        return Err(cap("grouped universe", n, crate::sets::MAX_INDEX));
    }
    let max_size = max_size.min(pairing.max_size(n));
    let weights = grouped_weights(n, max_size, pairing, weight)?;
    let pass = VPass {
        n,
        max_size,
        pairing,
        integrand,
        prune: integrand.prunable(),
        budget: budget.max_sets,
        visited: AtomicU64::new(0),
    };
    let (sums, nonzero) = pass.run()?;
    let mut value = 0i128;
    for (v, &s) in sums.iter().enumerate() {
        if s != 0 {
            value = acc_add(value, acc_mul(weights[v], s as i128)?)?;
        }
    }
    value = acc_add(value, -acc_mul(weight(0), sums[0] as i128)?)?;
    Ok(GroupedOutcome {
        value,
        visited: pass.visited.load(Ordering::Relaxed),
        nonzero,
    })
}

struct VPass<'a> {
    n: usize,
    max_size: usize,
    pairing: Pairing,
    integrand: &'a dyn Integrand,
    prune: bool,
    budget: u64,
    visited: AtomicU64,
}

struct Local {
    sums: Vec<i64>,
    nonzero: u64,
    pending: u64,
}

impl VPass<'_> {
    fn run(&self) -> Result<(Vec<i64>, u64)> {
        // Prefixes of size <= 2 are the parallel tasks; size-2 prefixes
        // also own their extensions.
        let mut prefixes = vec![IndexSet::EMPTY];
        if self.max_size >= 1 {
            for x in 0..self.n {
                prefixes.push(IndexSet::singleton(x));
            }
        }
        if self.max_size >= 2 {
            for x in 0..self.n {
                for y in x + 1..self.n {
                    if self.pairing.admits(IndexSet::singleton(x), y) {
                        prefixes.push(IndexSet::singleton(x).with(y));
                    }
                }
            }
        }
        let locals: Vec<Local> = prefixes
            .par_iter()
            .map(|&p| {
                let mut local = Local {
                    sums: vec![0; self.max_size + 1],
                    nonzero: 0,
                    pending: 0,
                };
                let value = self.visit(p, &mut local)?;
                if p.len() == 2 && !(self.prune && value == 0) {
                    self.extend(p, p.max().unwrap() + 1, &mut local)?;
                }
                self.flush(&mut local)?;
                Ok(local)
            })
            .collect::<Result<_>>()?;
        let mut sums = vec![0i64; self.max_size + 1];
        let mut nonzero = 0;
        for l in locals {
            for (a, b) in sums.iter_mut().zip(&l.sums) {
                *a = a.checked_add(*b).ok_or(Error::Overflow)?;
            }
            nonzero += l.nonzero;
        }
        Ok((sums, nonzero))
    }

    fn visit(&self, v: IndexSet, local: &mut Local) -> Result<i64> {
        let value = self.integrand.value(v)?;
        let s = &mut local.sums[v.len()];
        *s = s.checked_add(value).ok_or(Error::Overflow)?;
        local.nonzero += (value != 0) as u64;
        local.pending += 1;
        if local.pending >= 1 << 14 {
            self.flush(local)?;
        }
        Ok(value)
    }

    fn flush(&self, local: &mut Local) -> Result<()> {
        let seen = self.visited.fetch_add(local.pending, Ordering::Relaxed) + local.pending;
        local.pending = 0;
        if seen > self.budget {
            return Err(cap("grouped sets visited", seen, self.budget));
        }
        Ok(())
    }

    fn extend(&self, v: IndexSet, from: usize, local: &mut Local) -> Result<()> {
        if v.len() >= self.max_size {
            return Ok(());
        }
        for x in from..self.n {
            if !self.pairing.admits(v, x) {
                continue;
            }
            let w = v.with(x);
            let value = self.visit(w, local)?;
            if !(self.prune && value == 0) {
                self.extend(w, x + 1, local)?;
            }
        }
        Ok(())
    }
}

/// Reference evaluation of the same sum by explicit unions: computes every
/// `f(U)` by its own inner sum. Exponential; for tests on tiny universes.
pub fn grouped_sum_by_unions(
    n: usize,
    max_size: usize,
    pairing: Pairing,
    weight: &dyn Fn(usize) -> i128,
    integrand: &dyn Integrand,
) -> Result<i128> {
    if n > 16 {
        return Err(cap("explicit union universe", n, 16));
    }
    let mut total = 0i128;
    for u in IndexSet::full(n).subsets() {
        if u.is_empty() || u.len() > max_size || !pairing.is_admissible(u) {
            continue;
        }
        let mut f = 0i128;
        for v in u.subsets() {
            f += sign(u.len() - v.len()) * integrand.value(v)? as i128;
        }
        total = acc_add(total, acc_mul(weight(u.len()), f)?)?;
    }
    Ok(total)
}

/// Direct sum over nonempty subfamilies of `generators`:
/// `Σ_D term(D, ∪D)`, `D` given as a bitmask over the generator list.
/// For tests on tiny families.
pub fn family_sum(
    generators: &[IndexSet],
    term: &dyn Fn(u32, IndexSet) -> Result<i128>,
) -> Result<i128> {
    if generators.len() > 24 {
        return Err(cap("explicit family generators", generators.len(), 24));
    }
    let mut unions = vec![IndexSet::EMPTY; 1 << generators.len()];
    let mut total = 0i128;
    for mask in 1u32..(1 << generators.len()) {
        let low = mask.trailing_zeros() as usize;
        unions[mask as usize] = unions[(mask & (mask - 1)) as usize] | generators[low];
        total = acc_add(total, term(mask, unions[mask as usize])?)?;
    }
    Ok(total)
}

/// `φ(V) = [no part A_i has |V ∩ A_i| ≥ c_i]`: no generator from
/// `⋃_i C(A_i, c_i)` lies inside `V`.
#[derive(Clone, Debug)]
pub struct AvoidAll {
    pub parts: Vec<(IndexSet, usize)>,
}

impl Integrand for AvoidAll {
    fn value(&self, v: IndexSet) -> Result<i64> {
        Ok(self.parts.iter().all(|&(a, c)| (v & a).len() < c) as i64)
    }

    fn prunable(&self) -> bool {
        true
    }
}

/// `φ(V) = Σ_{D ⊆ G, D ⊆ 2^V} (−1)^{|D|}` for an explicit generator list
/// `G`, i.e. `[no generator inside V]`.
#[derive(Clone, Debug)]
pub struct AvoidGenerators {
    pub generators: Vec<IndexSet>,
}

impl Integrand for AvoidGenerators {
    fn value(&self, v: IndexSet) -> Result<i64> {
        Ok(!self.generators.iter().any(|g| g.is_subset(v)) as i64)
    }

    fn prunable(&self) -> bool {
        true
    }
}

/// The double inclusion-exclusion factor. For layer generators `d`
/// (`ν`-subsets of the parts) the families inside `V` contribute
/// `Σ_D (−1)^{|D|} Σ_{C: D ⊆ 𝔍(C)} (−1)^{|C|} = Π_λ [|V ∩ λ| ≥ ν]`.
#[derive(Clone, Debug)]
pub struct HitAll {
    pub parts: Vec<IndexSet>,
    pub nu: usize,
}

impl Integrand for HitAll {
    fn value(&self, v: IndexSet) -> Result<i64> {
        Ok(self.parts.iter().all(|&a| (v & a).len() >= self.nu) as i64)
    }
}

/// Generators `⋃_i C(A_i, m)` labelled by their support
/// `γ(d) = {i : d ⊆ A_i}` (a subset of the part indices `0..p`).
#[derive(Clone, Debug)]
pub struct LabelSystem {
    parts: Vec<IndexSet>,
    m: usize,
    /// `π(x) = {i : x ∈ A_i}` for every universe element.
    membership: Vec<IndexSet>,
}

impl LabelSystem {
    pub fn new(universe: usize, parts: Vec<IndexSet>, m: usize) -> Result<Self> {
        if parts.len() > crate::sets::MAX_INDEX {
            return Err(cap("label parts", parts.len(), crate::sets::MAX_INDEX));
        }
        let membership = (0..universe)
            .map(|x| (0..parts.len()).filter(|&i| parts[i].contains(x)).collect())
            .collect();
        Ok(LabelSystem { parts, m, membership })
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[IndexSet] {
        &self.parts
    }

    pub fn generator_size(&self) -> usize {
        self.m
    }

    /// Support of a generator.
    pub fn label(&self, d: IndexSet) -> IndexSet {
        d.iter().fold(IndexSet::full(self.parts.len()), |acc, x| acc & self.membership[x])
    }

    /// Parts containing at least one generator inside `v`.
    pub fn hit(&self, v: IndexSet) -> IndexSet {
        (0..self.parts.len()).filter(|&i| (v & self.parts[i]).len() >= self.m).collect()
    }

    /// Walk the nonempty index sets `E` with `|v ∩ ⋂_{i∈E} A_i| ≥ m`,
    /// reporting each with its common part and whether it is maximal.
    fn walk(&self, v: IndexSet, visit: &mut dyn FnMut(IndexSet, IndexSet, bool)) {
        fn go(
            sys: &LabelSystem,
            e: IndexSet,
            common: IndexSet,
            next: usize,
            visit: &mut dyn FnMut(IndexSet, IndexSet, bool),
        ) {
            let maximal = (0..sys.parts.len())
                .all(|j| e.contains(j) || (common & sys.parts[j]).len() < sys.m);
            visit(e, common, maximal);
            if maximal {
                return;
            }
            for j in next..sys.parts.len() {
                let c = common & sys.parts[j];
                if c.len() >= sys.m {
                    go(sys, e.with(j), c, j + 1, visit);
                }
            }
        }
        for i in 0..self.parts.len() {
            let c = v & self.parts[i];
            if c.len() >= self.m {
                go(self, IndexSet::singleton(i), c, i + 1, visit);
            }
        }
    }

    /// Maximal supports of generators inside `v`, sorted.
    pub fn maximal_labels(&self, v: IndexSet) -> Vec<IndexSet> {
        let mut out = Vec::new();
        self.walk(v, &mut |e, _, maximal| {
            if maximal {
                out.push(e);
            }
        });
        out.sort_by_key(|s| (s.len(), *s));
        out
    }

    /// Every support realized by a generator inside `v`, sorted.
    pub fn labels(&self, v: IndexSet) -> Vec<IndexSet> {
        let mut out = Vec::new();
        self.walk(v, &mut |e, common, _| {
            if self.realizes(e, common) {
                out.push(e);
            }
        });
        out.sort_by_key(|s| (s.len(), *s));
        out
    }

    /// Some `m`-subset of `common` (all of whose elements lie in every part
    /// of `e`, `|common| ≥ m`) has support exactly `e`.
    fn realizes(&self, e: IndexSet, common: IndexSet) -> bool {
        // Padding never enlarges a support, so it suffices to reach `e` as
        // the intersection of at most `m` memberships.
        let starts: HashSet<IndexSet> = common.iter().map(|x| self.membership[x]).collect();
        if starts.contains(&e) {
            return true;
        }
        let mut frontier: HashSet<IndexSet> = starts.clone();
        let mut seen = frontier.clone();
        for _ in 1..self.m {
            let mut next = HashSet::new();
            for &a in &frontier {
                for &b in &starts {
                    let c = a & b;
                    if c == e {
                        return true;
                    }
                    if seen.insert(c) {
                        next.insert(c);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        false
    }
}

/// How the Möbius number `μ_S(0̂, 1̂)` of the union lattice of a covering
/// antichain of supports is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MobiusNumber {
    /// Reduced Euler characteristic of the complex whose facets are the
    /// complements of the supports.
    Euler,
    /// Möbius function of the generated union lattice.
    UnionLattice,
    /// A fixed value, e.g. `(−1)^t` under the unique-facet hypothesis.
    Constant(i128),
}

/// `φ(V) = Σ_{families G inside V, ⋃ bmin γ(G) = [p]} (−1)^{#G} μ_{S(G)}`.
///
/// Families with the same support set `S` contribute `(−1)^{|S|}` in
/// total, and grouping support sets by their minimal members cancels
/// every `S` that has a member strictly below another realized support,
/// leaving `Σ_{B ⊆ bmax c(V), ⋃B = [p]} (−1)^{|B|} μ_B`.
pub struct CoverIntegrand<'a> {
    pub labels: &'a LabelSystem,
    pub mobius: MobiusNumber,
    /// When set, verify on every `V` with `|V| ≤ bound` that no qualifying
    /// family uses a generator lying in two or more parts.
    pub unique_facet_bound: Option<usize>,
    memo: RwLock<HashMap<Vec<IndexSet>, i64>>,
}

impl<'a> CoverIntegrand<'a> {
    pub fn new(labels: &'a LabelSystem, mobius: MobiusNumber, unique_facet_bound: Option<usize>) -> Self {
        CoverIntegrand {
            labels,
            mobius,
            unique_facet_bound,
            memo: RwLock::new(HashMap::new()),
        }
    }

    fn psi(&self, maximal: &[IndexSet]) -> Result<i64> {
        let p = self.labels.num_parts();
        let full = IndexSet::full(p);
        if maximal.iter().fold(IndexSet::EMPTY, |a, &b| a | b) != full {
            return Ok(0);
        }
        if let Some(&v) = self.memo.read().unwrap().get(maximal) {
            return Ok(v);
        }
        let value = cover_sum(maximal, p, self.mobius)?;
        let value = i64::try_from(value).map_err(|_| Error::Overflow)?;
        self.memo.write().unwrap().insert(maximal.to_vec(), value);
        Ok(value)
    }

    fn check_unique_facet(&self, v: IndexSet) -> Result<()> {
        let c = self.labels.labels(v);
        let full = IndexSet::full(self.labels.num_parts());
        for &big in c.iter().filter(|l| l.len() >= 2) {
            for &b in c.iter().filter(|b| b.is_subset(big)) {
                let reach = c
                    .iter()
                    .filter(|x| !x.is_subset(b) && !b.is_subset(**x))
                    .fold(b, |a, &x| a | x);
                if reach == full {
                    return Err(Error::HypothesisFailed(format!(
                        "a qualifying family inside topes {:?} uses a set contained in the halfspaces {:?}",
                        v.to_one_based(),
                        big.to_one_based()
                    )));
                }
            }
        }
        Ok(())
    }
}

impl Integrand for CoverIntegrand<'_> {
    fn value(&self, v: IndexSet) -> Result<i64> {
        let maximal = self.labels.maximal_labels(v);
        if let Some(bound) = self.unique_facet_bound {
            if v.len() <= bound && maximal.iter().any(|l| l.len() >= 2) {
                self.check_unique_facet(v)?;
            }
        }
        self.psi(&maximal)
    }
}

/// `Σ_{B ⊆ family, ⋃B = [p]} (−1)^{|B|} μ_B` for an antichain `family`.
pub fn cover_sum(family: &[IndexSet], p: usize, mobius: MobiusNumber) -> Result<i128> {
    if family.len() > 24 {
        return Err(cap("covering subfamilies", family.len(), 24));
    }
    let full = IndexSet::full(p);
    let mut total = 0i128;
    for mask in 1u32..(1 << family.len()) {
        let b: Vec<IndexSet> = (0..family.len()).filter(|i| mask >> i & 1 == 1).map(|i| family[i]).collect();
        if b.iter().fold(IndexSet::EMPTY, |a, &x| a | x) != full {
            continue;
        }
        let mu = match mobius {
            MobiusNumber::Euler => SimplicialComplex::from_complements(p, &b)?.reduced_euler_characteristic()?,
            MobiusNumber::UnionLattice => union_mobius_number(&b, p)?,
            MobiusNumber::Constant(c) => c,
        };
        total += sign(b.len()) * mu;
    }
    Ok(total)
}

/// Reference for [`cover_sum`]: the same quantity summed over every
/// nonempty support set `S ⊆ labels` through its minimal members.
pub fn cover_sum_unreduced(labels: &[IndexSet], p: usize, mobius: MobiusNumber) -> Result<i128> {
    if labels.len() > 20 {
        return Err(cap("support subfamilies", labels.len(), 20));
    }
    let full = IndexSet::full(p);
    let mut total = 0i128;
    for mask in 1u32..(1 << labels.len()) {
        let s: Vec<IndexSet> = (0..labels.len()).filter(|i| mask >> i & 1 == 1).map(|i| labels[i]).collect();
        let b = min_sets(&s);
        if b.iter().fold(IndexSet::EMPTY, |a, &x| a | x) != full {
            continue;
        }
        let mu = match mobius {
            MobiusNumber::Euler => SimplicialComplex::from_complements(p, &b)?.reduced_euler_characteristic()?,
            MobiusNumber::UnionLattice => union_mobius_number(&b, p)?,
            MobiusNumber::Constant(c) => c,
        };
        total += sign(s.len()) * mu;
    }
    Ok(total)
}

/// The outer lattice of a double Möbius formula: the sets
/// `X_C = ⋃_{i∈C} C(A_i, m)` for nonempty `C ⊆ [p]`, ordered by inclusion.
/// `X_C` is identified with the realized supports meeting `C`, so the
/// lattice is the union semilattice generated by the per-part atoms.
#[derive(Clone, Debug)]
pub struct OuterLattice {
    /// `(C_X, μ(0̂, X))` with `C_X = {i : X_{{i}} ⊆ X}` the largest index
    /// set producing `X`; zero Möbius values are dropped.
    pub members: Vec<(IndexSet, i128)>,
    /// Number of elements above `0̂`, including zero-Möbius ones.
    pub size: usize,
    pub realized_labels: usize,
}

impl OuterLattice {
    pub fn new(labels: &LabelSystem, universe: usize, budget: &LatticeBudget) -> Result<Self> {
        let realized = labels.labels(IndexSet::full(universe));
        if realized.len() > crate::sets::MAX_INDEX {
            return Err(cap("realized supports", realized.len(), crate::sets::MAX_INDEX));
        }
        let p = labels.num_parts();
        let atoms: Vec<IndexSet> = (0..p)
            .map(|i| (0..realized.len()).filter(|&j| realized[j].contains(i)).collect())
            .collect();
        let nonempty: Vec<IndexSet> = atoms.iter().copied().filter(|a| !a.is_empty()).collect();
        let lat = union_semilattice(realized.len(), &nonempty, None, budget)?;
        let members = lat
            .elements()
            .iter()
            .zip(lat.mobius_below())
            .filter(|(_, &mu)| mu != 0)
            .map(|(&x, &mu)| ((0..p).filter(|&i| !atoms[i].is_empty() && atoms[i].is_subset(x)).collect(), mu))
            .collect();
        Ok(OuterLattice {
            members,
            size: lat.elements().len(),
            realized_labels: realized.len(),
        })
    }
}

/// `φ(V) = Σ_{X>0̂} μ_C(0̂, X) · [no generator of X inside V]`; `X_C` has
/// a generator inside `V` exactly when `C` meets `hit(V)`.
pub struct DoubleMobiusIntegrand<'a> {
    pub labels: &'a LabelSystem,
    pub outer: &'a OuterLattice,
    /// `Σ_{C ⊆ mask} μ(C)` for every mask of part indices, when there are
    /// few enough parts.
    below: Option<Vec<i64>>,
    memo: RwLock<HashMap<IndexSet, i64>>,
}

/// Most parts for which the subset sums are tabulated.
const MAX_TABULATED_PARTS: usize = 22;

impl<'a> DoubleMobiusIntegrand<'a> {
    pub fn new(labels: &'a LabelSystem, outer: &'a OuterLattice) -> Self {
        let p = labels.num_parts();
        let below = (p <= MAX_TABULATED_PARTS)
            .then(|| {
                let mut table = vec![0i64; 1 << p];
                for &(c, mu) in &outer.members {
                    table[c.0 as usize] += i64::try_from(mu).ok()?;
                }
                for bit in 0..p {
                    for x in 0..table.len() {
                        if x >> bit & 1 == 1 {
                            table[x] = table[x].checked_add(table[x ^ 1 << bit])?;
                        }
                    }
                }
                Some(table)
            })
            .flatten();
        DoubleMobiusIntegrand {
            labels,
            outer,
            below,
            memo: RwLock::new(HashMap::new()),
        }
    }
}

impl Integrand for DoubleMobiusIntegrand<'_> {
    fn value(&self, v: IndexSet) -> Result<i64> {
        let z = self.labels.hit(v);
        if let Some(table) = &self.below {
            let p = self.labels.num_parts();
            return Ok(table[(IndexSet::full(p) - z).0 as usize]);
        }
        if let Some(&x) = self.memo.read().unwrap().get(&z) {
            return Ok(x);
        }
        let total: i128 = self.outer.members.iter().filter(|(c, _)| !c.intersects(z)).map(|(_, mu)| mu).sum();
        let total = i64::try_from(total).map_err(|_| Error::Overflow)?;
        self.memo.write().unwrap().insert(z, total);
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(sets: &[&[usize]]) -> Vec<IndexSet> {
        sets.iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[test]
    fn grouped_matches_unions_and_families() {
        let parts = fam(&[&[0, 1, 2, 3], &[2, 3, 4, 5], &[0, 5, 6]]);
        let gens: Vec<IndexSet> = {
            let mut g: Vec<IndexSet> = parts.iter().flat_map(|p| p.subsets_of_size(2)).collect();
            g.sort();
            g.dedup();
            g
        };
        let avoid = AvoidAll {
            parts: parts.iter().map(|&p| (p, 2)).collect(),
        };
        let n = 7;
        for ell in 2..=5 {
            let w = move |s: usize| binomial((n - s) as i64, (n - ell) as i64);
            let grouped = grouped_sum(n, ell, Pairing::All, &w, &avoid, &GroupedBudget::default()).unwrap();
            let uncapped = grouped_sum(n, n, Pairing::All, &w, &avoid, &GroupedBudget::default()).unwrap();
            let unions = grouped_sum_by_unions(n, n, Pairing::All, &w, &avoid).unwrap();
            let direct = family_sum(&gens, &|mask, u| Ok(sign(mask.count_ones() as usize) * w(u.len()))).unwrap();
            assert_eq!(grouped.value, direct);
            assert_eq!(uncapped.value, direct);
            assert_eq!(unions, direct);
        }
    }

    #[test]
    fn paired_grouping() {
        // Opposites i, i+4; generators are opposite-free pairs inside parts.
        let parts = fam(&[&[0, 1, 2], &[1, 6, 3], &[0, 7, 3]]);
        let avoid = AvoidAll {
            parts: parts.iter().map(|&p| (p, 2)).collect(),
        };
        let pairing = Pairing::Opposites { half: 4 };
        let gens: Vec<IndexSet> = parts.iter().flat_map(|p| p.subsets_of_size(2)).collect::<HashSet<_>>().into_iter().collect();
        let w = |s: usize| if s <= 3 { pow2(3 - s as i64) * binomial(4 - s as i64, 3 - s as i64) } else { 0 };
        let grouped = grouped_sum(8, 3, pairing, &w, &avoid, &GroupedBudget::default()).unwrap();
        let direct = family_sum(&gens, &|mask, u| {
            Ok(if pairing.is_admissible(u) { sign(mask.count_ones() as usize) * w(u.len()) } else { 0 })
        })
        .unwrap();
        assert_eq!(grouped.value, direct);
        assert_eq!(grouped_sum_by_unions(8, 3, pairing, &w, &avoid).unwrap(), direct);
    }

    #[test]
    fn hit_all_is_the_double_sum() {
        let lambda = fam(&[&[0, 1, 2], &[1, 2, 3], &[3, 4]]);
        let nu = 2;
        let gens: Vec<IndexSet> = lambda
            .iter()
            .flat_map(|l| l.subsets_of_size(nu))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        let hit = HitAll { parts: lambda.clone(), nu };
        let w = |s: usize| binomial(5 - s as i64, 2);
        let grouped = grouped_sum(5, 5, Pairing::All, &w, &hit, &GroupedBudget::default()).unwrap();
        let direct = family_sum(&gens, &|mask, u| {
            let d: Vec<IndexSet> = (0..gens.len()).filter(|i| mask >> i & 1 == 1).map(|i| gens[i]).collect();
            let mut inner = 0i128;
            for c in 0u32..(1 << lambda.len()) {
                let covered = d.iter().all(|x| (0..lambda.len()).any(|i| c >> i & 1 == 1 && x.is_subset(lambda[i])));
                if covered {
                    inner += sign(c.count_ones() as usize);
                }
            }
            Ok(sign(d.len()) * inner * w(u.len()))
        })
        .unwrap();
        assert_eq!(grouped.value, direct);
    }

    #[test]
    fn pruning_respects_budget() {
        let avoid = AvoidAll { parts: vec![(IndexSet::full(20), 21)] };
        let err = grouped_sum(20, 20, Pairing::All, &|_| 1, &avoid, &GroupedBudget { max_sets: 1000 }).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn labels_and_maximal_labels() {
        let parts = fam(&[&[0, 1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);
        let sys = LabelSystem::new(6, parts.clone(), 2).unwrap();
        let v = IndexSet::full(6);
        let brute: Vec<IndexSet> = {
            let mut s: Vec<IndexSet> = parts
                .iter()
                .flat_map(|p| p.subsets_of_size(2))
                .map(|d| sys.label(d))
                .collect::<HashSet<_>>()
                .into_iter()
                .collect();
            s.sort_by_key(|x| (x.len(), *x));
            s
        };
        assert_eq!(sys.labels(v), brute);
        assert_eq!(sys.maximal_labels(v), crate::poset::max_sets(&brute));
        for v in IndexSet::full(6).subsets() {
            let gens: Vec<IndexSet> = parts.iter().flat_map(|p| p.subsets_of_size(2)).filter(|d| d.is_subset(v)).collect();
            let mut want: Vec<IndexSet> = gens.iter().map(|&d| sys.label(d)).collect::<HashSet<_>>().into_iter().collect();
            want.sort_by_key(|x| (x.len(), *x));
            assert_eq!(sys.labels(v), want, "{v:?}");
            assert_eq!(sys.maximal_labels(v), crate::poset::max_sets(&want));
        }
    }

    #[test]
    fn cover_sum_reduction() {
        let mut seed = 0x9e37_79b9_7f4a_7c15u64;
        for _ in 0..200 {
            let mut labels = Vec::new();
            for _ in 0..(seed % 6 + 1) {
                seed ^= seed << 13;
                seed ^= seed >> 7;
                seed ^= seed << 17;
                let l = IndexSet((seed % 15 + 1) as u128);
                if !labels.contains(&l) {
                    labels.push(l);
                }
            }
            let maximal = crate::poset::max_sets(&labels);
            for mobius in [MobiusNumber::Euler, MobiusNumber::UnionLattice, MobiusNumber::Constant(1)] {
                assert_eq!(
                    cover_sum(&maximal, 4, mobius).unwrap(),
                    cover_sum_unreduced(&labels, 4, mobius).unwrap(),
                    "{labels:?}"
                );
            }
            let euler = cover_sum(&maximal, 4, MobiusNumber::Euler).unwrap();
            let covered = maximal.iter().fold(IndexSet::EMPTY, |a, &b| a | b) == IndexSet::full(4);
            assert_eq!(euler, covered as i128);
        }
    }
}
