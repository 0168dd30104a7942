//! Convex subsets of the ground set under the tope-support closure
//! `e ∈ conv(A) ⇔ T_A^+ ⊆ T_e^+`, free sets, the γ map and the counts of
//! tope sets lying in some positive halfspace.
//!
//! The closure is computed from tope data alone. On realizable instances it
//! agrees with positive-span membership; for non-realizable tope sets it is
//! taken as the definition.

use std::collections::HashSet;

use crate::error::{acc_add, acc_mul, cap, Error, Result};
use crate::om::OrientedMatroid;
use crate::sets::{binomial, sign, IndexSet};

/// Largest ground set for which convex sets are enumerated.
pub const MAX_CONVEX_T: usize = 24;

/// `T_A^+ = ⋂_{a∈A} T_a^+`; all topes for `A = ∅`.
pub fn positive_cell(om: &OrientedMatroid, a: IndexSet) -> IndexSet {
    let hs = om.positive_halfspaces();
    a.iter().fold(om.all_topes(), |acc, e| acc & hs[e])
}

pub fn conv(om: &OrientedMatroid, a: IndexSet) -> IndexSet {
    let cell = positive_cell(om, a);
    om.positive_halfspaces()
        .iter()
        .enumerate()
        .filter(|(_, h)| cell.is_subset(**h))
        .map(|(e, _)| e)
        .collect()
}

/// `{e : d ⊆ T_e^+}`, the largest convex `A` with `d ⊆ T_A^+`.
pub fn gamma(om: &OrientedMatroid, d: IndexSet) -> IndexSet {
    om.positive_halfspaces()
        .iter()
        .enumerate()
        .filter(|(_, h)| d.is_subset(**h))
        .map(|(e, _)| e)
        .collect()
}

fn require_convex(om: &OrientedMatroid, a: IndexSet) -> Result<()> {
    if a.max().is_some_and(|e| e >= om.ground_size()) {
        return Err(Error::ElementOutOfRange {
            element: a.max().unwrap() + 1,
            t: om.ground_size(),
        });
    }
    if conv(om, a) != a {
        return Err(Error::NotConvex);
    }
    Ok(())
}

/// Points `a ∈ A` with `a ∉ conv(A ∖ {a})`.
pub fn extreme_points(om: &OrientedMatroid, a: IndexSet) -> Result<IndexSet> {
    require_convex(om, a)?;
    Ok(a.iter().filter(|&x| !conv(om, a.without(x)).contains(x)).collect())
}

/// Convex with every point extreme.
pub fn is_free(om: &OrientedMatroid, a: IndexSet) -> Result<bool> {
    Ok(extreme_points(om, a)? == a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexSet {
    pub elements: IndexSet,
    /// `T_A^+`, as tope indices.
    pub cell: IndexSet,
    pub extreme: IndexSet,
    pub free: bool,
}

/// All convex sets, ordered by size then value; `∅` first.
#[derive(Clone, Debug)]
pub struct ConvexSemilattice {
    pub t: usize,
    pub sets: Vec<ConvexSet>,
}

impl ConvexSemilattice {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn get(&self, a: IndexSet) -> Option<&ConvexSet> {
        self.sets.iter().find(|s| s.elements == a)
    }

    pub fn free_sets(&self) -> impl Iterator<Item = &ConvexSet> {
        self.sets.iter().filter(|s| s.free)
    }

    /// `(convex, free)` counts indexed by cardinality `0..=t`.
    pub fn counts_by_size(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(0, 0); self.t + 1];
        for s in &self.sets {
            out[s.elements.len()].0 += 1;
            out[s.elements.len()].1 += s.free as usize;
        }
        out
    }
}

pub fn convex_sets(om: &OrientedMatroid) -> Result<ConvexSemilattice> {
    let t = om.ground_size();
    if t > MAX_CONVEX_T {
        return Err(cap("convex-set ground size", t, MAX_CONVEX_T));
    }
    // Every closed set is reached from conv(∅) by adding one element and
    // closing, repeatedly.
    let bottom = conv(om, IndexSet::EMPTY);
    let mut seen: HashSet<IndexSet> = HashSet::from([bottom]);
    let mut stack = vec![bottom];
    while let Some(a) = stack.pop() {
        for e in (IndexSet::full(t) - a).iter() {
            let b = conv(om, a.with(e));
            if seen.insert(b) {
                stack.push(b);
            }
        }
    }
    let mut elements: Vec<IndexSet> = seen.into_iter().collect();
    elements.sort_by_key(|s| (s.len(), *s));
    let sets = elements
        .into_iter()
        .map(|a| {
            let extreme = extreme_points(om, a)?;
            Ok(ConvexSet {
                elements: a,
                cell: positive_cell(om, a),
                extreme,
                free: extreme == a,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ConvexSemilattice { t, sets })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerMethod {
    /// Inclusion-exclusion over nonempty element sets, each term read off
    /// the cell of its convex hull.
    Direct,
    /// `−Σ_{A free, A ≠ ∅} (−1)^{|A|} C(|T_A^+|, j)`.
    FreeSets,
}

/// Number of `j`-subsets of topes lying in at least one positive halfspace.
pub fn ideal_layer_count(om: &OrientedMatroid, j: usize, method: LayerMethod) -> Result<u128> {
    let n = om.num_topes();
    if j < 1 || j > n / 2 {
        return Err(Error::OutOfRangeK { k: j, lo: 1, hi: n / 2 });
    }
    let t = om.ground_size();
    if t > MAX_CONVEX_T {
        return Err(cap("convex-set ground size", t, MAX_CONVEX_T));
    }
    let mut total = 0i128;
    match method {
        LayerMethod::Direct => {
            let hs = om.positive_halfspaces();
            for e in IndexSet::full(t).subsets().skip(1) {
                let hull = conv(om, e);
                let cell = hull.iter().fold(om.all_topes(), |acc, x| acc & hs[x]);
                let term = binomial(cell.len() as i64, j as i64);
                total = acc_add(total, -sign(e.len()) * term)?;
            }
        }
        LayerMethod::FreeSets => {
            for a in convex_sets(om)?.free_sets().filter(|a| !a.elements.is_empty()) {
                let term = binomial(a.cell.len() as i64, j as i64);
                total = acc_add(total, -acc_mul(sign(a.elements.len()), term)?)?;
            }
        }
    }
    u128::try_from(total).map_err(|_| Error::Overflow)
}

/// `Σ_{E' ⊆ E_t, conv(E') = A} (−1)^{|E'|}`.
pub fn hull_alternating_sum(om: &OrientedMatroid, a: IndexSet) -> Result<i128> {
    let t = om.ground_size();
    if t > MAX_CONVEX_T {
        return Err(cap("convex-set ground size", t, MAX_CONVEX_T));
    }
    Ok(a.subsets().filter(|&e| conv(om, e) == a).map(|e| sign(e.len())).sum())
}
