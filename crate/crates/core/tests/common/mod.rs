//! Invariant checks shared by the property tests and the acceptance run.
#![allow(dead_code)]

use tope_committees::convex::{conv, ideal_layer_count, LayerMethod};
use tope_committees::cross::{layer, layer_size};
use tope_committees::oracle::{kappa_sweep, SweepBudget, Variants};
use tope_committees::poset::{blocker, min_sets, union_semilattice, LatticeBudget, SimplicialComplex};
use tope_committees::sets::{binomial, sign};
use tope_committees::{IndexSet, OrientedMatroid};

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `κ_k = κ_{|T|−k}` and `2κ_k + n*_k = C(|T|, k)` for every `k`.
pub fn kappa_symmetry_and_n_star(om: &OrientedMatroid) -> Check {
    let n = om.num_topes();
    let r = kappa_sweep(om, 1..=n - 1, Variants::default(), &SweepBudget::default()).map_err(|e| e.to_string())?;
    for k in 1..n {
        let i = k - 1;
        ensure(r.kappa[i] == r.kappa[n - k - 1], || format!("kappa[{k}] != kappa[{}]", n - k))?;
        ensure(r.kappa[i] == r.anti[i], || format!("anti-committee count differs at k={k}"))?;
        ensure(
            2 * r.kappa[i] as i128 + r.n_star[i] as i128 == binomial(n as i64, k as i64),
            || format!("N* identity fails at k={k}"),
        )?;
    }
    Ok(())
}

/// `b(b(F)) = F` for Sperner `F` without empty members.
pub fn blocker_involution(family: &[IndexSet]) -> Check {
    let f = min_sets(family);
    if f.is_empty() || f.iter().any(|s| s.is_empty()) {
        return Ok(());
    }
    let b = blocker(&f).map_err(|e| e.to_string())?;
    let bb = blocker(&b).map_err(|e| e.to_string())?;
    ensure(min_sets(&bb) == f, || format!("blocker twice gave {bb:?} for {f:?}"))
}

fn support(cx: &SimplicialComplex) -> IndexSet {
    cx.facets().iter().fold(IndexSet::EMPTY, |a, &b| a | b)
}

/// Complexes built from the complements of `G` and of its blocker; `None`
/// when `G` is empty or has an empty member.
fn dual_pair(t: usize, family: &[IndexSet]) -> Option<(SimplicialComplex, SimplicialComplex)> {
    let g = min_sets(family);
    if g.is_empty() || g.iter().any(|s| s.is_empty()) {
        return None;
    }
    let b = blocker(&g).ok()?;
    let delta = SimplicialComplex::from_complements(t, &g).ok()?;
    let dual = SimplicialComplex::from_complements(t, &b).ok()?;
    Some((delta, dual))
}

/// `χ̃(Δ*) = (−1)^{t−1} χ̃(Δ)` when both complexes live on all of `{0..t}`.
/// Returns whether the case applied.
pub fn alexander_sign_law(t: usize, family: &[IndexSet]) -> Result<bool, String> {
    let Some((delta, dual)) = dual_pair(t, family) else {
        return Ok(false);
    };
    let full = IndexSet::full(t);
    if support(&delta) != full || support(&dual) != full {
        return Ok(false);
    }
    let a = delta.reduced_euler_characteristic().map_err(|e| e.to_string())?;
    let b = dual.reduced_euler_characteristic().map_err(|e| e.to_string())?;
    ensure(b == sign(t - 1) * a, || format!("chi(dual) = {b}, chi = {a}, t = {t}, family {family:?}"))?;
    Ok(true)
}

/// A family missing some vertex gives a cone: `χ̃(Δ*) = 0`.
pub fn cone_vanishes(t: usize, family: &[IndexSet]) -> Result<bool, String> {
    let union = family.iter().fold(IndexSet::EMPTY, |a, &b| a | b);
    if union == IndexSet::full(t) {
        return Ok(false);
    }
    let Some((_, dual)) = dual_pair(t, family) else {
        return Ok(false);
    };
    let chi = dual.reduced_euler_characteristic().map_err(|e| e.to_string())?;
    ensure(chi == 0, || format!("cone has chi = {chi}, family {family:?}"))?;
    Ok(true)
}

fn chi_by_faces(cx: &SimplicialComplex) -> i128 {
    cx.faces().iter().map(|f| -sign(f.len())).sum()
}

/// For a covering family, `χ̃` of the complement complex equals the Möbius
/// number of the union lattice.
pub fn crosscut_equality(t: usize, family: &[IndexSet]) -> Result<bool, String> {
    let g = min_sets(family);
    let union = g.iter().fold(IndexSet::EMPTY, |a, &b| a | b);
    if g.is_empty() || g.iter().any(|s| s.is_empty()) || union != IndexSet::full(t) {
        return Ok(false);
    }
    let delta = SimplicialComplex::from_complements(t, &g).map_err(|e| e.to_string())?;
    let lat = union_semilattice(t, &g, None, &LatticeBudget::default()).map_err(|e| e.to_string())?;
    let mu = lat.mobius_at(union).ok_or("top missing")?;
    let chi = delta.reduced_euler_characteristic().map_err(|e| e.to_string())?;
    ensure(chi == mu && chi_by_faces(&delta) == mu, || {
        format!("chi {chi} (faces {}) vs mu {mu} for {g:?}", chi_by_faces(&delta))
    })?;
    Ok(true)
}

/// Extensive, monotone and idempotent, on the pair `a ⊆ a ∪ b`.
pub fn conv_closure_laws(om: &OrientedMatroid, a: IndexSet, b: IndexSet) -> Check {
    let t = IndexSet::full(om.ground_size());
    let (a, b) = (a & t, (a | b) & t);
    let ca = conv(om, a);
    ensure(a.is_subset(ca), || format!("conv not extensive at {a:?}"))?;
    ensure(conv(om, ca) == ca, || format!("conv not idempotent at {a:?}"))?;
    ensure(ca.is_subset(conv(om, b)), || format!("conv not monotone at {a:?} ⊆ {b:?}"))
}

pub fn layer_count_methods_agree(om: &OrientedMatroid) -> Check {
    for j in 1..=om.num_topes() / 2 {
        let d = ideal_layer_count(om, j, LayerMethod::Direct).map_err(|e| e.to_string())?;
        let f = ideal_layer_count(om, j, LayerMethod::FreeSets).map_err(|e| e.to_string())?;
        ensure(d == f, || format!("layer j={j}: direct {d}, free sets {f}"))?;
    }
    Ok(())
}

pub fn cross_layer_size(m: usize, k: usize) -> Check {
    let n = layer(m, k).count() as u128;
    let expected = (1u128 << k) * binomial(m as i64, k as i64) as u128;
    ensure(n == expected && layer_size(m, k) == expected, || format!("m={m} k={k}: {n} vs {expected}"))
}

/// Grouped inclusion-exclusion equals the Möbius function: for every union
/// `U`, `Σ_{D ⊆ G, ∪D = U} (−1)^{|D|} = μ(0̂, U)`.
pub fn grouping_identity(universe: usize, generators: &[IndexSet]) -> Check {
    let g: Vec<IndexSet> = {
        let mut v: Vec<IndexSet> = generators.iter().copied().filter(|s| !s.is_empty()).collect();
        v.sort_by_key(|s| s.0);
        v.dedup();
        v
    };
    if g.is_empty() || g.len() > 12 {
        return Ok(());
    }
    let lat = union_semilattice(universe, &g, None, &LatticeBudget::default()).map_err(|e| e.to_string())?;
    let mut sums = std::collections::HashMap::new();
    for mask in 1u32..(1 << g.len()) {
        let u = (0..g.len()).filter(|&i| mask >> i & 1 == 1).fold(IndexSet::EMPTY, |a, i| a | g[i]);
        *sums.entry(u).or_insert(0i128) += sign(mask.count_ones() as usize);
    }
    for (z, &mu) in lat.elements().iter().zip(lat.mobius_below()) {
        let s = sums.get(z).copied().unwrap_or(0);
        ensure(s == mu, || format!("union {z:?}: family sum {s}, mobius {mu}"))?;
    }
    ensure(sums.len() == lat.elements().len(), || "union sets differ from lattice elements".into())
}
