use crate::error::{Error, Result};
use crate::sets::IndexSet;

fn canonical(mut family: Vec<IndexSet>) -> Vec<IndexSet> {
    family.sort_by_key(|s| (s.len(), *s));
    family.dedup();
    family
}

/// Inclusion-minimal members, deduplicated, ordered by size then value.
pub fn min_sets(family: &[IndexSet]) -> Vec<IndexSet> {
    let sorted = canonical(family.to_vec());
    let mut out: Vec<IndexSet> = Vec::with_capacity(sorted.len());
    for s in sorted {
        if !out.iter().any(|m| m.is_subset(s)) {
            out.push(s);
        }
    }
    out
}

/// Inclusion-maximal members, deduplicated, ordered by size then value.
pub fn max_sets(family: &[IndexSet]) -> Vec<IndexSet> {
    let sorted = canonical(family.to_vec());
    let mut out: Vec<IndexSet> = Vec::with_capacity(sorted.len());
    for s in sorted.into_iter().rev() {
        if !out.iter().any(|m| s.is_subset(*m)) {
            out.push(s);
        }
    }
    canonical(out)
}

/// All inclusion-minimal sets meeting every member (Berge's incremental
/// transversal algorithm). The blocker of the empty family is `{∅}`.
pub fn blocker(family: &[IndexSet]) -> Result<Vec<IndexSet>> {
    if family.iter().any(|s| s.is_empty()) {
        return Err(Error::EmptyMember);
    }
    let mut current = vec![IndexSet::EMPTY];
    for &member in &min_sets(family) {
        let mut next = Vec::with_capacity(current.len() * 2);
        for &b in &current {
            if b.intersects(member) {
                next.push(b);
            } else {
                next.extend(member.iter().map(|x| b.with(x)));
            }
        }
        current = min_sets(&next);
    }
    Ok(current)
}
