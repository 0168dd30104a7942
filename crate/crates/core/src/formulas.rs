//! Committee-counting formulas and the oracle cross-check driver.
//!
//! All formulas are evaluated on the halfspace antichain `Υ` inside the
//! Boolean lattice of tope subsets. Formulas stated over generated union
//! semilattices are evaluated on the explicit lattice with its Möbius
//! function when that lattice fits the lattice budget, and otherwise by the
//! grouped pass of [`crate::alternating`], which computes the same sum
//! through `μ(0̂, U) = Σ_{V⊆U} (−1)^{|U∖V|} [V contains no generator]`.
//! The plain inclusion-exclusion formulas and the convex-set formulas are
//! always evaluated by the grouped pass.
//!
//! Practical envelope: at 28 topes the capped formulas run for
//! `min(k, |T|−k)` up to about 7; the uncapped Vandermonde forms visit the
//! independent sets of the generator family and are the slowest.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alternating::{
    grouped_sum, AvoidAll, CoverIntegrand, DoubleMobiusIntegrand, GroupedBudget, LabelSystem, MobiusNumber,
    OuterLattice, Pairing,
};
use crate::error::{acc_add, acc_mul, cap, Error, Result};
use crate::om::OrientedMatroid;
use crate::oracle::{kappa_sweep, SweepBudget, Variants};
use crate::poset::{union_semilattice_of_layers, GeneratedJoinSemilattice, LatticeBudget};
use crate::report::KappaReport;
use crate::sets::{binomial, pow2, sign, IndexSet};

/// Which of `k` and `|T| − k` a formula is evaluated at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EllChoice {
    Small,
    Large,
    Explicit(usize),
}

impl EllChoice {
    pub fn resolve(self, num_topes: usize, k: usize) -> Result<usize> {
        let (a, b) = (k.min(num_topes - k), k.max(num_topes - k));
        match self {
            EllChoice::Small => Ok(a),
            EllChoice::Large => Ok(b),
            EllChoice::Explicit(l) if l == a || l == b => Ok(l),
            EllChoice::Explicit(l) => Err(Error::InvalidInstance(format!(
                "ell must be k or |T|-k (here {a} or {b}), got {l}"
            ))),
        }
    }
}

impl FromStr for EllChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(EllChoice::Small),
            "large" => Ok(EllChoice::Large),
            other => other
                .parse()
                .map(EllChoice::Explicit)
                .map_err(|_| Error::InvalidInstance(format!("unknown ell selector {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CommitteeMethod {
    HalfspaceIE,
    Vandermonde,
    MobiusUnion,
    MobiusVandermonde,
    DoubleMobius,
    ConvexEuler,
    UniqueFacet,
}

impl CommitteeMethod {
    pub const ALL: [CommitteeMethod; 7] = [
        CommitteeMethod::HalfspaceIE,
        CommitteeMethod::Vandermonde,
        CommitteeMethod::MobiusUnion,
        CommitteeMethod::MobiusVandermonde,
        CommitteeMethod::DoubleMobius,
        CommitteeMethod::ConvexEuler,
        CommitteeMethod::UniqueFacet,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            CommitteeMethod::HalfspaceIE => "hs-ie",
            CommitteeMethod::Vandermonde => "vandermonde",
            CommitteeMethod::MobiusUnion => "mobius-union",
            CommitteeMethod::MobiusVandermonde => "mobius-vandermonde",
            CommitteeMethod::DoubleMobius => "double-mobius",
            CommitteeMethod::ConvexEuler => "convex-euler",
            CommitteeMethod::UniqueFacet => "unique-facet",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FreeMethod {
    DoubleMobius,
    ConvexEuler,
    UniqueFacet,
}

impl FreeMethod {
    pub const ALL: [FreeMethod; 3] = [FreeMethod::DoubleMobius, FreeMethod::ConvexEuler, FreeMethod::UniqueFacet];

    pub fn tag(self) -> &'static str {
        match self {
            FreeMethod::DoubleMobius => "free-double-mobius",
            FreeMethod::ConvexEuler => "free-convex-euler",
            FreeMethod::UniqueFacet => "free-unique-facet",
        }
    }
}

/// A committee formula or a formula for committees free of opposites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MethodId {
    Committee(CommitteeMethod),
    Free(FreeMethod),
}

impl MethodId {
    pub fn all() -> Vec<MethodId> {
        CommitteeMethod::ALL
            .iter()
            .map(|&m| MethodId::Committee(m))
            .chain(FreeMethod::ALL.iter().map(|&m| MethodId::Free(m)))
            .collect()
    }

    pub fn tag(self) -> &'static str {
        match self {
            MethodId::Committee(m) => m.tag(),
            MethodId::Free(m) => m.tag(),
        }
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for MethodId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MethodId::all()
            .into_iter()
            .find(|m| m.tag() == s)
            .ok_or_else(|| Error::InvalidInstance(format!("unknown method {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaBudget {
    pub grouped: GroupedBudget,
    /// Explicit lattices larger than this are replaced by the grouped pass.
    pub lattice: LatticeBudget,
    /// Skip unions too large to carry a nonzero binomial weight. Turning
    /// this off only costs time.
    pub truncate: bool,
}

impl FormulaBudget {
    /// Largest union size visited when weights vanish beyond `cap`.
    pub fn reach(&self, cap: usize, n: usize) -> usize {
        if self.truncate {
            cap.min(n)
        } else {
            n
        }
    }
}

impl Default for FormulaBudget {
    fn default() -> Self {
        FormulaBudget {
            grouped: GroupedBudget::default(),
            lattice: LatticeBudget {
                max_elements: 200_000,
                max_candidates: 1 << 22,
            },
            truncate: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvalPath {
    /// Explicit union semilattices and their Möbius functions.
    Lattice,
    /// The grouped pass over sets `V`.
    Grouped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: i128,
    pub ell: usize,
    pub path: EvalPath,
    /// Lattice elements, or sets visited by the grouped pass.
    pub terms: u64,
}

/// Topes renumbered so that `i` and `i + |T|/2` are opposite, with the
/// positive halfspaces in that numbering.
struct Frame {
    n: usize,
    t: usize,
    halfspaces: Vec<IndexSet>,
}

impl Frame {
    fn new(om: &OrientedMatroid) -> Result<Self> {
        let report = om.validate();
        if !report.is_clean() {
            return Err(Error::ValidationFailure(report.to_string()));
        }
        let n = om.num_topes();
        let half = n / 2;
        let mut new_index = vec![usize::MAX; n];
        let mut next = 0;
        for i in 0..n {
            let j = om.negation_of(i).ok_or_else(|| Error::InvalidInstance("tope set is not symmetric".into()))?;
            if i < j {
                new_index[i] = next;
                new_index[j] = next + half;
                next += 1;
            }
        }
        let halfspaces = om
            .positive_halfspaces()
            .iter()
            .map(|h| h.iter().map(|i| new_index[i]).collect())
            .collect();
        Ok(Frame {
            n,
            t: om.ground_size(),
            halfspaces,
        })
    }

    fn layers(&self, m: usize) -> Vec<(IndexSet, usize)> {
        self.halfspaces.iter().map(|&h| (h, m)).collect()
    }

    fn pairing(&self) -> Pairing {
        Pairing::Opposites { half: self.n / 2 }
    }
}

fn check_k(k: usize, lo: usize, hi: usize) -> Result<()> {
    if k < lo || k > hi || hi < lo {
        return Err(Error::OutOfRangeK { k, lo, hi });
    }
    Ok(())
}

/// `Σ_{max(1, ℓ−N+s) ≤ h ≤ min(ℓ, s)} C(s, h) C(N − s, ℓ − h)`.
fn vandermonde_inner(n: usize, ell: usize, s: usize) -> i128 {
    let lo = 1.max((ell + s).saturating_sub(n));
    let hi = ell.min(s);
    (lo..=hi)
        .map(|h| binomial(s as i64, h as i64) * binomial((n - s) as i64, (ell - h) as i64))
        .sum()
}

pub(crate) fn lattice_sum(lat: &GeneratedJoinSemilattice, weight: &dyn Fn(usize) -> i128) -> Result<i128> {
    let mut total = 0i128;
    for (z, &mu) in lat.elements().iter().zip(lat.mobius_below()) {
        if mu != 0 {
            total = acc_add(total, acc_mul(mu, weight(z.len()))?)?;
        }
    }
    Ok(total)
}

pub(crate) fn explicit_or_grouped(
    explicit: impl FnOnce() -> Result<(i128, u64)>,
    grouped: impl FnOnce() -> Result<(i128, u64)>,
    ell: usize,
) -> Result<Evaluation> {
    match explicit() {
        Ok((value, terms)) => Ok(Evaluation {
            value,
            ell,
            path: EvalPath::Lattice,
            terms,
        }),
        Err(Error::CapExceeded { .. }) => {
            let (value, terms) = grouped()?;
            Ok(Evaluation {
                value,
                ell,
                path: EvalPath::Grouped,
                terms,
            })
        }
        Err(e) => Err(e),
    }
}

pub(crate) fn grouped_eval(value: i128, terms: u64, ell: usize) -> Evaluation {
    Evaluation {
        value,
        ell,
        path: EvalPath::Grouped,
        terms,
    }
}

/// `#K*_k(M)` by the chosen formula, with the default budget.
pub fn count_committees(om: &OrientedMatroid, k: usize, method: CommitteeMethod, ell: EllChoice) -> Result<u128> {
    to_count(evaluate_committees(om, k, method, ell, &FormulaBudget::default())?.value)
}

/// `#K°*_k(M)`, committees free of opposites, with the default budget.
pub fn count_free_committees(om: &OrientedMatroid, k: usize, method: FreeMethod) -> Result<u128> {
    to_count(evaluate_free_committees(om, k, method, &FormulaBudget::default())?.value)
}

fn to_count(v: i128) -> Result<u128> {
    u128::try_from(v).map_err(|_| Error::InvalidInstance(format!("formula produced a negative count {v}")))
}

pub fn evaluate_committees(
    om: &OrientedMatroid,
    k: usize,
    method: CommitteeMethod,
    ell: EllChoice,
    budget: &FormulaBudget,
) -> Result<Evaluation> {
    let frame = Frame::new(om)?;
    let n = frame.n;
    check_k(k, 3, n.saturating_sub(3))?;
    let ell = ell.resolve(n, k)?;
    let nn = n as i64;
    let l = ell as i64;
    match method {
        CommitteeMethod::HalfspaceIE | CommitteeMethod::MobiusUnion => {
            let m = ell.div_ceil(2);
            let w = |s: usize| binomial(nn - s as i64, nn - l);
            let constant = binomial(nn, nn - l);
            let grouped = || {
                let avoid = AvoidAll { parts: frame.layers(m) };
                let out = grouped_sum(n, budget.reach(ell, n), Pairing::All, &w, &avoid, &budget.grouped)?;
                Ok((acc_add(constant, out.value)?, out.visited))
            };
            if method == CommitteeMethod::HalfspaceIE {
                let (value, terms) = grouped()?;
                return Ok(grouped_eval(value, terms, ell));
            }
            explicit_or_grouped(
                || {
                    let lat = union_semilattice_of_layers(n, &frame.layers(m), Some(budget.reach(ell, n)), &|_| true, &budget.lattice)?;
                    Ok((acc_add(constant, lattice_sum(&lat, &w)?)?, lat.elements().len() as u64))
                },
                grouped,
                ell,
            )
        }
        CommitteeMethod::Vandermonde | CommitteeMethod::MobiusVandermonde => {
            let m = (n - ell).div_ceil(2);
            let w = |s: usize| -vandermonde_inner(n, ell, s);
            let grouped = || {
                let avoid = AvoidAll { parts: frame.layers(m) };
                let out = grouped_sum(n, n, Pairing::All, &w, &avoid, &budget.grouped)?;
                Ok((out.value, out.visited))
            };
            if method == CommitteeMethod::Vandermonde {
                let (value, terms) = grouped()?;
                return Ok(grouped_eval(value, terms, ell));
            }
            explicit_or_grouped(
                || {
                    let lat = union_semilattice_of_layers(n, &frame.layers(m), None, &|_| true, &budget.lattice)?;
                    Ok((lattice_sum(&lat, &w)?, lat.elements().len() as u64))
                },
                grouped,
                ell,
            )
        }
        CommitteeMethod::DoubleMobius => {
            let m = ell / 2 + 1;
            let w = |s: usize| if s <= ell { binomial(nn - s as i64, l - s as i64) } else { 0 };
            double_mobius(n, &frame.halfspaces, m, ell, Pairing::All, &w, budget)
        }
        CommitteeMethod::ConvexEuler => {
            evaluate_cover_formula(om, k, Some(EllChoice::Explicit(ell)), MobiusNumber::Euler, budget)
        }
        CommitteeMethod::UniqueFacet => {
            let mobius = MobiusNumber::Constant(sign(frame.t));
            evaluate_cover_formula(om, k, Some(EllChoice::Explicit(ell)), mobius, budget)
        }
    }
}

pub fn evaluate_free_committees(
    om: &OrientedMatroid,
    k: usize,
    method: FreeMethod,
    budget: &FormulaBudget,
) -> Result<Evaluation> {
    let frame = Frame::new(om)?;
    let n = frame.n;
    check_k(k, 3, n / 2)?;
    let half = (n / 2) as i64;
    let kk = k as i64;
    let m = k / 2 + 1;
    let w = |s: usize| {
        if s <= k {
            pow2(kk - s as i64) * binomial(half - s as i64, kk - s as i64)
        } else {
            0
        }
    };
    let pairing = frame.pairing();
    match method {
        FreeMethod::DoubleMobius => double_mobius(n, &frame.halfspaces, m, k, pairing, &w, budget),
        FreeMethod::ConvexEuler => evaluate_cover_formula(om, k, None, MobiusNumber::Euler, budget),
        FreeMethod::UniqueFacet => {
            evaluate_cover_formula(om, k, None, MobiusNumber::Constant(sign(frame.t)), budget)
        }
    }
}

/// The convex-set formula with an explicit choice of Möbius number for
/// the support lattices; `ell = None` selects the variant for committees
/// free of opposites. [`MobiusNumber::Constant`] turns on the unique-facet
/// hypothesis check.
pub fn evaluate_cover_formula(
    om: &OrientedMatroid,
    k: usize,
    ell: Option<EllChoice>,
    mobius: MobiusNumber,
    budget: &FormulaBudget,
) -> Result<Evaluation> {
    let frame = Frame::new(om)?;
    let n = frame.n;
    let (ell, pairing, w): (usize, Pairing, Box<dyn Fn(usize) -> i128 + Sync>) = match ell {
        Some(choice) => {
            check_k(k, 3, n.saturating_sub(3))?;
            let ell = choice.resolve(n, k)?;
            let (nn, l) = (n as i64, ell as i64);
            let w = move |s: usize| if s <= ell { binomial(nn - s as i64, l - s as i64) } else { 0 };
            (ell, Pairing::All, Box::new(w))
        }
        None => {
            check_k(k, 3, n / 2)?;
            let (half, kk) = ((n / 2) as i64, k as i64);
            let w = move |s: usize| {
                if s <= k {
                    pow2(kk - s as i64) * binomial(half - s as i64, kk - s as i64)
                } else {
                    0
                }
            };
            (k, frame.pairing(), Box::new(w))
        }
    };
    let labels = LabelSystem::new(n, frame.halfspaces.clone(), ell / 2 + 1)?;
    let bound = matches!(mobius, MobiusNumber::Constant(_)).then_some(ell);
    let integrand = CoverIntegrand::new(&labels, mobius, bound);
    let out = grouped_sum(n, budget.reach(ell, n), pairing, &*w, &integrand, &budget.grouped)?;
    Ok(grouped_eval(out.value, out.visited, ell))
}

/// `Σ_{X>0̂} μ_C(0̂, X) Σ_{z ∈ E(X), z>0̂} μ_E(0̂, z) w(|z|)` over the outer
/// lattice of `X_E = ⋃_{e∈E} C(A_e, m)`; unions that are not admissible
/// under `pairing` carry no terms.
pub(crate) fn double_mobius(
    n: usize,
    parts: &[IndexSet],
    m: usize,
    ell: usize,
    pairing: Pairing,
    w: &(dyn Fn(usize) -> i128 + Sync),
    budget: &FormulaBudget,
) -> Result<Evaluation> {
    let reach = budget.reach(ell, n);
    let labels = LabelSystem::new(n, parts.to_vec(), m)?;
    let outer = OuterLattice::new(&labels, n, &LatticeBudget::default())?;
    explicit_or_grouped(
        || {
            // One inner lattice per outer member: budget their candidates
            // together so a hopeless attempt fails before any is built.
            let candidates: u128 = outer
                .members
                .iter()
                .map(|&(c, _)| {
                    let support = c.iter().fold(IndexSet::EMPTY, |a, e| a | parts[e]).len();
                    (0..=reach.min(support)).map(|j| binomial(support as i64, j as i64) as u128).sum::<u128>()
                })
                .sum();
            if candidates > budget.lattice.max_candidates {
                return Err(cap("inner lattice candidates", candidates, budget.lattice.max_candidates));
            }
            let admissible = |u: IndexSet| pairing.is_admissible(u);
            let inner: Vec<(i128, u64)> = outer
                .members
                .par_iter()
                .map(|&(c, mu)| {
                    let parts: Vec<(IndexSet, usize)> = c.iter().map(|e| (parts[e], m)).collect();
                    let lat = union_semilattice_of_layers(n, &parts, Some(reach), &admissible, &budget.lattice)?;
                    Ok((acc_mul(mu, lattice_sum(&lat, w)?)?, lat.elements().len() as u64))
                })
                .collect::<Result<_>>()?;
            let mut total = 0i128;
            let mut terms = outer.size as u64;
            for (v, t) in inner {
                total = acc_add(total, v)?;
                terms += t;
            }
            Ok((total, terms))
        },
        || {
            let integrand = DoubleMobiusIntegrand::new(&labels, &outer);
            let out = grouped_sum(n, reach, pairing, w, &integrand, &budget.grouped)?;
            Ok((out.value, out.visited))
        },
        ell,
    )
}

/// One `(k, method)` entry of a cross-check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckCell {
    pub k: usize,
    pub method: MethodId,
    pub ell: Option<usize>,
    pub value: Option<i128>,
    pub oracle: u64,
    /// `None` when the method did not produce a value.
    pub agrees: Option<bool>,
    pub error: Option<String>,
    pub path: Option<EvalPath>,
    pub terms: u64,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub t: usize,
    pub num_topes: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckTotals {
    pub cells: usize,
    pub agreeing: usize,
    pub disagreeing: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub instance: InstanceSummary,
    pub results: Vec<CrosscheckCell>,
    pub totals: CrosscheckTotals,
    pub oracle: KappaReport,
}

impl CrosscheckReport {
    pub fn all_agree(&self) -> bool {
        self.totals.disagreeing == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Columns: `k method ell value oracle agrees path terms elapsed_ms note`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("k\tmethod\tell\tvalue\toracle\tagrees\tpath\tterms\telapsed_ms\tnote\n");
        for c in &self.results {
            let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.1}\t{}\n",
                c.k,
                c.method,
                opt(c.ell.map(|x| x.to_string())),
                opt(c.value.map(|x| x.to_string())),
                c.oracle,
                opt(c.agrees.map(|x| if x { "yes".into() } else { "NO".into() })),
                opt(c.path.map(|p| match p {
                    EvalPath::Lattice => "lattice".into(),
                    EvalPath::Grouped => "grouped".into(),
                })),
                c.terms,
                c.elapsed_ms,
                opt(c.error.clone()),
            ));
        }
        out
    }
}

/// Runs the oracle and every requested method for every `k` in range.
/// Cells whose `k` lies outside a method's admissible range are skipped;
/// method failures (budgets, hypotheses) become cell entries.
pub fn crosscheck(
    om: &OrientedMatroid,
    k_range: RangeInclusive<usize>,
    methods: &[MethodId],
    ell: EllChoice,
    budget: &FormulaBudget,
    sweep_budget: &SweepBudget,
) -> Result<CrosscheckReport> {
    let n = om.num_topes();
    let oracle = kappa_sweep(
        om,
        k_range.clone(),
        Variants {
            free: true,
            ..Variants::default()
        },
        sweep_budget,
    )?;
    let free = oracle.kappa_free.clone().unwrap_or_default();
    let mut jobs = Vec::new();
    for k in k_range.clone() {
        for &method in methods {
            let applicable = match method {
                MethodId::Committee(_) => k >= 3 && k + 3 <= n,
                MethodId::Free(_) => k >= 3 && k <= n / 2,
            };
            if applicable {
                jobs.push((k, method));
            }
        }
    }
    let results: Vec<CrosscheckCell> = jobs
        .par_iter()
        .map(|&(k, method)| {
            let start = Instant::now();
            let (expected, outcome) = match method {
                MethodId::Committee(m) => (oracle.kappa_at(k).unwrap_or(0), evaluate_committees(om, k, m, ell, budget)),
                MethodId::Free(m) => (free[k - oracle.k_lo], evaluate_free_committees(om, k, m, budget)),
            };
            let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            match outcome {
                Ok(e) => CrosscheckCell {
                    k,
                    method,
                    ell: Some(e.ell),
                    value: Some(e.value),
                    oracle: expected,
                    agrees: Some(e.value == expected as i128),
                    error: None,
                    path: Some(e.path),
                    terms: e.terms,
                    elapsed_ms,
                },
                Err(err) => CrosscheckCell {
                    k,
                    method,
                    ell: None,
                    value: None,
                    oracle: expected,
                    agrees: None,
                    error: Some(err.to_string()),
                    path: None,
                    terms: 0,
                    elapsed_ms,
                },
            }
        })
        .collect();
    let totals = CrosscheckTotals {
        cells: results.len(),
        agreeing: results.iter().filter(|c| c.agrees == Some(true)).count(),
        disagreeing: results.iter().filter(|c| c.agrees == Some(false)).count(),
        errors: results.iter().filter(|c| c.error.is_some()).count(),
    };
    Ok(CrosscheckReport {
        instance: InstanceSummary {
            t: om.ground_size(),
            num_topes: n,
        },
        results,
        totals,
        oracle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{paper_example, triangle};

    #[test]
    fn triangle_every_method() {
        let om = triangle();
        for m in CommitteeMethod::ALL {
            for ell in [EllChoice::Small, EllChoice::Large] {
                assert_eq!(count_committees(&om, 3, m, ell).unwrap(), 1, "{m:?} {ell:?}");
            }
        }
        for m in FreeMethod::ALL {
            assert_eq!(count_free_committees(&om, 3, m).unwrap(), 1, "{m:?}");
        }
    }

    #[test]
    fn range_checks() {
        let om = triangle();
        assert!(matches!(
            count_committees(&om, 2, CommitteeMethod::HalfspaceIE, EllChoice::Small),
            Err(Error::OutOfRangeK { .. })
        ));
        assert!(matches!(
            count_free_committees(&om, 4, FreeMethod::ConvexEuler),
            Err(Error::OutOfRangeK { .. })
        ));
        assert!(EllChoice::Explicit(4).resolve(6, 3).is_err());
        assert_eq!(EllChoice::Explicit(3).resolve(6, 3).unwrap(), 3);
    }

    #[test]
    fn paper_k3_capped_methods() {
        let om = paper_example();
        for m in [
            CommitteeMethod::HalfspaceIE,
            CommitteeMethod::MobiusUnion,
            CommitteeMethod::DoubleMobius,
            CommitteeMethod::ConvexEuler,
        ] {
            assert_eq!(count_committees(&om, 3, m, EllChoice::Small).unwrap(), 3, "{m:?}");
        }
        assert_eq!(count_free_committees(&om, 3, FreeMethod::DoubleMobius).unwrap(), 3);
        assert_eq!(count_free_committees(&om, 3, FreeMethod::ConvexEuler).unwrap(), 3);
    }
}
