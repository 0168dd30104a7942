//! Exact feasibility of homogeneous strict linear systems `a_i · x > 0`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Default bound on the number of variables.
pub const DEFAULT_MAX_DIM: usize = 4;

/// Decide whether some `x` satisfies `row · x > 0` for every row.
///
/// Fourier–Motzkin elimination over exact rationals: eliminating a variable
/// replaces each (positive, negative) coefficient pair by the positive
/// combination cancelling it, and rows without the variable pass through.
/// A strict homogeneous system is feasible iff nothing survives the
/// elimination of every variable (a surviving row reads `0 > 0`).
pub fn strictly_feasible(rows: &[Vec<BigRational>], max_dim: usize) -> Result<bool> {
    let dim = rows.iter().map(Vec::len).max().unwrap_or(0);
    if dim > max_dim {
        return Err(Error::DimensionTooLarge { dim, max: max_dim });
    }
    let mut system: Vec<Vec<BigRational>> = Vec::with_capacity(rows.len());
    for r in rows {
        let mut row = r.clone();
        row.resize(dim, BigRational::zero());
        push_normalized(&mut system, row);
    }
    for j in 0..dim {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for row in system {
            if row[j].is_positive() {
                pos.push(row);
            } else if row[j].is_negative() {
                neg.push(row);
            } else {
                rest.push(row);
            }
        }
        let mut next = Vec::with_capacity(rest.len() + pos.len() * neg.len());
        for row in rest {
            push_normalized(&mut next, row);
        }
        for p in &pos {
            for n in &neg {
                let (a, b) = (-&n[j], p[j].clone());
                let combo: Vec<BigRational> = p.iter().zip(n).map(|(x, y)| &a * x + &b * y).collect();
                push_normalized(&mut next, combo);
            }
        }
        system = next;
    }
    Ok(system.is_empty())
}

/// Scale so the first nonzero entry is ±1 and drop exact duplicates; an
/// all-zero row is kept as the contradiction `0 > 0`.
fn push_normalized(system: &mut Vec<Vec<BigRational>>, mut row: Vec<BigRational>) {
    if let Some(lead) = row.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
        for x in row.iter_mut() {
            *x = &*x / &lead;
        }
    }
    if !system.contains(&row) {
        system.push(row);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rows(data: &[&[i64]]) -> Vec<Vec<BigRational>> {
        data.iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
            .collect()
    }

    #[test]
    fn single_variable() {
        assert!(!strictly_feasible(&rows(&[&[1], &[-1]]), 4).unwrap());
        assert!(strictly_feasible(&rows(&[&[1]]), 4).unwrap());
        assert!(strictly_feasible(&[], 4).unwrap());
        assert!(!strictly_feasible(&rows(&[&[0, 0]]), 4).unwrap());
    }

    #[test]
    fn triangle_vectors_span_the_plane() {
        // (1,0), (-1,2), (-1,-2): all three positive is impossible.
        let v = [[2, 0], [-1, 2], [-1, -2]];
        let all_plus = rows(&[&v[0], &v[1], &v[2]]);
        assert!(!strictly_feasible(&all_plus, 4).unwrap());
        let mixed = rows(&[&v[0], &[1, -2], &v[2]]);
        assert!(strictly_feasible(&mixed, 4).unwrap());
    }

    #[test]
    fn dimension_bound() {
        let r = rows(&[&[1, 0, 0, 0, 1]]);
        assert_eq!(strictly_feasible(&r, 4), Err(Error::DimensionTooLarge { dim: 5, max: 4 }));
    }

    #[test]
    fn three_dimensional_cone() {
        // x > 0, y > 0, z > 0, -(x + y + z) + 10 z > 0 is feasible; adding
        // -z - x > 0 is not.
        let base = rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, 9]]);
        assert!(strictly_feasible(&base, 4).unwrap());
        let mut bad = base.clone();
        bad.extend(rows(&[&[-1, 0, -1]]));
        assert!(!strictly_feasible(&bad, 4).unwrap());
    }
}
