//! Per-cardinality committee count reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Committee counts for `k` in `k_lo..=k_hi`; vector entry `i` is `k_lo + i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KappaReport {
    pub t: usize,
    pub num_topes: usize,
    pub k_lo: usize,
    pub k_hi: usize,
    pub kappa: Vec<u64>,
    /// Anti-committees, counted independently of `kappa`.
    pub anti: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_free: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_min: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_maxplus: Option<Vec<u64>>,
    /// Sets that are neither committees nor anti-committees.
    pub n_star: Vec<u64>,
    pub method: String,
    pub elapsed_ms: f64,
}

impl KappaReport {
    pub fn ks(&self) -> impl Iterator<Item = usize> {
        self.k_lo..=self.k_hi
    }

    pub fn kappa_at(&self, k: usize) -> Option<u64> {
        k.checked_sub(self.k_lo).and_then(|i| self.kappa.get(i).copied())
    }

    pub fn total(&self) -> u64 {
        self.kappa.iter().sum()
    }

    pub fn total_free(&self) -> Option<u64> {
        self.kappa_free.as_ref().map(|v| v.iter().sum())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed columns: `k kappa anti n_star free min maxplus`; absent
    /// variants print `-`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("k\tkappa\tanti\tn_star\tfree\tmin\tmaxplus\n");
        let cell = |v: &Option<Vec<u64>>, i: usize| v.as_ref().map_or("-".to_string(), |v| v[i].to_string());
        for (i, k) in self.ks().enumerate() {
            let _ = writeln!(
                out,
                "{k}\t{}\t{}\t{}\t{}\t{}\t{}",
                self.kappa[i],
                self.anti[i],
                self.n_star[i],
                cell(&self.kappa_free, i),
                cell(&self.kappa_min, i),
                cell(&self.kappa_maxplus, i)
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> KappaReport {
        KappaReport {
            t: 3,
            num_topes: 6,
            k_lo: 2,
            k_hi: 4,
            kappa: vec![0, 1, 0],
            anti: vec![0, 1, 0],
            kappa_free: Some(vec![0, 1, 0]),
            kappa_min: None,
            kappa_maxplus: None,
            n_star: vec![15, 18, 15],
            method: "brute-full".into(),
            elapsed_ms: 0.5,
        }
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let back: KappaReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.kappa_at(3), Some(1));
        assert_eq!(r.kappa_at(1), None);
    }

    #[test]
    fn tsv_layout() {
        let tsv = sample().to_tsv();
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines[0], "k\tkappa\tanti\tn_star\tfree\tmin\tmaxplus");
        assert_eq!(lines[2], "3\t1\t1\t18\t1\t-\t-");
        assert_eq!(lines.len(), 4);
    }
}
