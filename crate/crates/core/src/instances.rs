//! Built-in instances and seeded realizable instances.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{cap, Error, Result};
use crate::fm::{strictly_feasible, DEFAULT_MAX_DIM};
use crate::om::{OrientedMatroid, SignVector, MAX_TOPES};
use crate::sets::binomial;

/// The third positive halfspace of the 28-tope example on six elements.
pub const PAPER_HALFSPACE: [&str; 14] = [
    "--++++", "--+-++", "+-+-++", "+-+-+-", "--+-+-", "--+++-", "--++-+", "-+++-+",
    "-++++-", "-++-+-", "+++-+-", "+++---", "-++---", "-+++--",
];

/// The 28-tope example, listed halfspace first and negations after.
pub fn paper_example() -> OrientedMatroid {
    let mut text = String::from("t 6\nsymmetry half\n");
    for row in PAPER_HALFSPACE {
        text.push_str(row);
        text.push('\n');
    }
    OrientedMatroid::parse(&text).expect("embedded example is valid")
}

/// Three lines through the origin of the plane: six topes.
pub fn triangle() -> OrientedMatroid {
    let topes = ["+--", "++-", "-+-", "-++", "--+", "+-+"]
        .iter()
        .map(|s| s.parse::<SignVector>().expect("literal sign vector"))
        .collect();
    OrientedMatroid::from_topes(3, topes).expect("triangle is structurally valid")
}

/// Number of regions of a generic central arrangement of `t` hyperplanes in
/// dimension `d`.
pub fn generic_tope_count(t: usize, d: usize) -> u128 {
    (0..d).map(|i| 2 * binomial(t as i64 - 1, i as i64) as u128).sum()
}

/// Integer vectors whose hyperplane arrangement realizes an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorConfiguration {
    pub dim: usize,
    pub vectors: Vec<Vec<i64>>,
}

impl VectorConfiguration {
    /// All sign vectors `σ` for which `σ_e (v_e · x) > 0` has a solution.
    pub fn topes(&self) -> Result<Vec<SignVector>> {
        let t = self.vectors.len();
        let rat: Vec<Vec<BigRational>> = self
            .vectors
            .iter()
            .map(|v| v.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
            .collect();
        let found: Vec<Result<Option<SignVector>>> = (0..1u64 << t)
            .into_par_iter()
            .map(|mask| {
                let rows: Vec<Vec<BigRational>> = rat
                    .iter()
                    .enumerate()
                    .map(|(e, v)| if mask >> e & 1 == 1 { v.clone() } else { v.iter().map(|c| -c).collect() })
                    .collect();
                Ok(strictly_feasible(&rows, DEFAULT_MAX_DIM)?.then(|| SignVector::new(t, mask)))
            })
            .collect();
        found.into_iter().filter_map(Result::transpose).collect()
    }

    fn is_generic(&self) -> bool {
        let d = self.dim;
        let t = self.vectors.len();
        if self.vectors.iter().any(|v| v.iter().all(|&c| c == 0)) {
            return false;
        }
        // Pairwise independence, then all maximal minors.
        for i in 0..t {
            for j in i + 1..t {
                if rank_deficient_pair(&self.vectors[i], &self.vectors[j]) {
                    return false;
                }
            }
        }
        if t < d {
            return true;
        }
        let mut idx: Vec<usize> = (0..d).collect();
        loop {
            let m: Vec<Vec<i128>> = idx
                .iter()
                .map(|&i| self.vectors[i].iter().map(|&c| c as i128).collect())
                .collect();
            if determinant(m) == 0 {
                return false;
            }
            // next combination
            let mut p = d;
            loop {
                if p == 0 {
                    return true;
                }
                p -= 1;
                if idx[p] < t - d + p {
                    idx[p] += 1;
                    for q in p + 1..d {
                        idx[q] = idx[q - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

fn rank_deficient_pair(a: &[i64], b: &[i64]) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| a[i] as i128 * b[j] as i128 == a[j] as i128 * b[i] as i128))
}

fn determinant(mut m: Vec<Vec<i128>>) -> i128 {
    // Bareiss fraction-free elimination.
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Largest coordinate magnitude of random draws.
const COORD_RANGE: i64 = 9;
/// Draws attempted before giving up.
pub const MAX_ATTEMPTS: usize = 200;
/// Largest supported ground set for random instances.
pub const MAX_RANDOM_T: usize = 16;

/// A seeded generic vector configuration whose arrangement is simple and not
/// acyclic. If the draw is acyclic, one vector is negated so that it is not;
/// draws where no single negation helps are discarded.
pub fn random_configuration(t: usize, d: usize, seed: u64) -> Result<VectorConfiguration> {
    if !(2..=DEFAULT_MAX_DIM).contains(&d) {
        return Err(Error::DimensionTooLarge { dim: d, max: DEFAULT_MAX_DIM });
    }
    if !(3..=MAX_RANDOM_T).contains(&t) {
        return Err(Error::InvalidInstance(format!("ground set size {t} outside 3..={MAX_RANDOM_T}")));
    }
    let expected = generic_tope_count(t, d);
    if expected > MAX_TOPES as u128 {
        return Err(cap("tope count", expected, MAX_TOPES));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut config = VectorConfiguration {
            dim: d,
            vectors: (0..t)
                .map(|_| (0..d).map(|_| rng.gen_range(-COORD_RANGE..=COORD_RANGE)).collect())
                .collect(),
        };
        if !config.is_generic() {
            continue;
        }
        let topes = config.topes()?;
        let all_plus = SignVector::new(t, u64::MAX);
        if !topes.contains(&all_plus) {
            return Ok(config);
        }
        let flip = (0..t).find(|&e| !topes.contains(&SignVector::new(t, !(1u64 << e))));
        if let Some(e) = flip {
            for c in config.vectors[e].iter_mut() {
                *c = -*c;
            }
            return Ok(config);
        }
    }
    Err(Error::RetryBudgetExceeded { attempts: MAX_ATTEMPTS })
}

/// Tope set of [`random_configuration`]; deterministic per `(t, d, seed)`.
pub fn random_realizable(t: usize, d: usize, seed: u64) -> Result<OrientedMatroid> {
    let config = random_configuration(t, d, seed)?;
    let om = OrientedMatroid::from_topes(t, config.topes()?)?;
    let report = om.validate();
    if !report.is_clean() {
        return Err(Error::ValidationFailure(report.to_string()));
    }
    Ok(om)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::om::Sign;
    use crate::sets::IndexSet;

    #[test]
    fn paper_example_shape() {
        let om = paper_example();
        assert_eq!((om.ground_size(), om.num_topes()), (6, 28));
        assert!(om.validate().is_clean());
        let h = om.halfspace(2, Sign::Plus).unwrap().members;
        let listed: IndexSet = (0..14).collect();
        assert_eq!(h, listed);
        for (i, row) in PAPER_HALFSPACE.iter().enumerate() {
            assert_eq!(om.tope(i).to_string(), *row);
        }
    }

    #[test]
    fn triangle_shape() {
        let c3 = triangle();
        assert_eq!((c3.ground_size(), c3.num_topes()), (3, 6));
        assert!(c3.validate().is_clean());
    }

    #[test]
    fn triangle_is_realized_by_plane_vectors() {
        let config = VectorConfiguration {
            dim: 2,
            vectors: vec![vec![2, 0], vec![-1, 2], vec![-1, -2]],
        };
        let mut got = config.topes().unwrap();
        let mut want = triangle().topes().to_vec();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn generic_counts() {
        assert_eq!(generic_tope_count(3, 2), 6);
        assert_eq!(generic_tope_count(4, 2), 8);
        assert_eq!(generic_tope_count(6, 3), 32);
    }

    #[test]
    fn random_instances_are_deterministic_and_valid() {
        for (t, d) in [(3, 2), (4, 2), (5, 3), (6, 3)] {
            let a = random_realizable(t, d, 7).unwrap();
            let b = random_realizable(t, d, 7).unwrap();
            assert_eq!(a, b);
            assert!(a.validate().is_clean());
            assert_eq!(a.num_topes() as u128, generic_tope_count(t, d));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(random_realizable(4, 5, 1), Err(Error::DimensionTooLarge { .. })));
        assert!(matches!(random_realizable(2, 2, 1), Err(Error::InvalidInstance(_))));
    }

    #[test]
    fn three_generic_vectors_in_space_are_always_acyclic() {
        // Every sign vector is a tope, so no reorientation removes the
        // all-plus one.
        assert_eq!(generic_tope_count(3, 3), 8);
        assert!(matches!(random_realizable(3, 3, 1), Err(Error::RetryBudgetExceeded { .. })));
    }
}
