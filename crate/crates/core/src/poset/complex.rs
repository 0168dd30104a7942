use std::collections::HashSet;

use crate::error::{cap, Error, Result};
use crate::poset::sperner::max_sets;
use crate::sets::{IndexSet, MAX_INDEX};

/// Largest number of search nodes the alternating facet sum may visit.
const EULER_NODE_BUDGET: u64 = 1 << 32;

/// A simplicial complex on vertices `0..vertices`, stored by its facets.
/// No facets is the void complex; the single facet `∅` is `{∅}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: usize,
    facets: Vec<IndexSet>,
}

impl SimplicialComplex {
    /// Complex generated by `sets`; non-maximal sets are dropped.
    pub fn new(vertices: usize, sets: &[IndexSet]) -> Result<Self> {
        if vertices > MAX_INDEX {
            return Err(cap("complex vertices", vertices, MAX_INDEX));
        }
        let ground = IndexSet::full(vertices);
        if let Some(bad) = sets.iter().find(|s| !s.is_subset(ground)) {
            return Err(Error::ElementOutOfRange {
                element: IndexSet::max(*bad).unwrap_or(0) + 1,
                t: vertices,
            });
        }
        Ok(SimplicialComplex {
            vertices,
            facets: max_sets(sets),
        })
    }

    /// Complex generated by the complements of `sets` in `0..vertices`.
    pub fn from_complements(vertices: usize, sets: &[IndexSet]) -> Result<Self> {
        let ground = IndexSet::full(vertices);
        let comps: Vec<IndexSet> = sets.iter().map(|&s| ground & !s).collect();
        Self::new(vertices, &comps)
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn facets(&self) -> &[IndexSet] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains_face(&self, face: IndexSet) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    /// Every face, by size then value. Exponential; meant for small complexes.
    pub fn faces(&self) -> Vec<IndexSet> {
        let mut seen: HashSet<IndexSet> = HashSet::new();
        for f in &self.facets {
            seen.extend(f.subsets());
        }
        let mut out: Vec<IndexSet> = seen.into_iter().collect();
        out.sort_by_key(|s| (s.len(), *s));
        out
    }

    /// `χ̃ = Σ_faces (-1)^{dim}`, computed from the facets alone.
    pub fn reduced_euler_characteristic(&self) -> Result<i128> {
        alternating_empty_intersections(&self.facets)
    }
}

/// `Σ (-1)^{|J|}` over nonempty subfamilies `J` of `family` whose
/// intersection is empty. For any generating family of a complex this is
/// its reduced Euler characteristic.
///
/// Once a prefix of the chosen members already has empty intersection, the
/// extensions by later members cancel in pairs unless there are none, so
/// only subfamilies with a nonempty running intersection are explored.
fn alternating_empty_intersections(family: &[IndexSet]) -> Result<i128> {
    fn go(family: &[IndexSet], from: usize, inter: IndexSet, sign: i128, nodes: &mut u64) -> Result<i128> {
        let mut total = 0i128;
        for j in from..family.len() {
            *nodes += 1;
            if *nodes > EULER_NODE_BUDGET {
                return Err(cap("Euler characteristic search nodes", *nodes, EULER_NODE_BUDGET));
            }
            let next = inter & family[j];
            if next.is_empty() {
                if j + 1 == family.len() {
                    total -= sign;
                }
            } else {
                total += go(family, j + 1, next, -sign, nodes)?;
            }
        }
        Ok(total)
    }
    let mut nodes = 0;
    let mut total = 0i128;
    for (j, &f) in family.iter().enumerate() {
        if f.is_empty() {
            if j + 1 == family.len() {
                total -= 1;
            }
        } else {
            total += go(family, j + 1, f, -1, &mut nodes)?;
        }
    }
    Ok(total)
}

pub fn reduced_euler_characteristic(complex: &SimplicialComplex) -> Result<i128> {
    complex.reduced_euler_characteristic()
}

/// `μ(0̂, [n])` in the union semilattice generated by `family`, i.e.
/// `Σ (-1)^{|J|}` over subfamilies whose union is `{0..n}`.
pub fn union_mobius_number(family: &[IndexSet], n: usize) -> Result<i128> {
    if family.iter().any(|s| s.is_empty()) {
        return Err(Error::EmptyMember);
    }
    let ground = IndexSet::full(n);
    let union = family.iter().fold(IndexSet::EMPTY, |a, &b| a | b);
    if n == 0 && family.is_empty() {
        return Ok(1);
    }
    if union != ground {
        return Err(Error::DoesNotCover);
    }
    // Unions cover the ground set exactly when complements meet in nothing.
    let comps: Vec<IndexSet> = family.iter().map(|&s| ground & !s).collect();
    alternating_empty_intersections(&comps)
}

/// Nerve of a family: vertex `i` per member, a face for every set of
/// members with a common point.
pub fn nerve(family: &[IndexSet]) -> Result<SimplicialComplex> {
    let union = family.iter().fold(IndexSet::EMPTY, |a, &b| a | b);
    let stars: Vec<IndexSet> = union
        .iter()
        .map(|x| (0..family.len()).filter(|&i| family[i].contains(x)).collect())
        .collect();
    SimplicialComplex::new(family.len(), &stars)
}
