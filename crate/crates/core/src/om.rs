//! Tope sets of simple oriented matroids.
//!
//! Elements are addressed 0-based in the library (`0..t`) and 1-based in the
//! `.topes` text format and in every report. Topes keep the order in which
//! they were read; a tope subset is an [`IndexSet`] over tope positions.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{cap, Error, Result};
use crate::sets::{IndexSet, MAX_INDEX};

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 64;
/// Largest supported tope set (one packed `u128` per tope subset).
pub const MAX_TOPES: usize = MAX_INDEX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A full-support sign vector; only the positive coordinates are stored.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    t: usize,
    positives: u64,
}

impl SignVector {
    pub fn new(t: usize, positives: u64) -> Self {
        assert!((1..=MAX_ELEMENTS).contains(&t), "ground set size {t} unsupported");
        let mask = if t == 64 { u64::MAX } else { (1u64 << t) - 1 };
        SignVector {
            t,
            positives: positives & mask,
        }
    }

    pub fn from_positive_set(t: usize, positives: IndexSet) -> Self {
        SignVector::new(t, positives.0 as u64)
    }

    pub fn len(&self) -> usize {
        self.t
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sign(&self, e: usize) -> Sign {
        if self.positives >> e & 1 == 1 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Positive part as an element set.
    pub fn positive_part(&self) -> IndexSet {
        IndexSet(self.positives as u128)
    }

    pub fn positive_mask(&self) -> u64 {
        self.positives
    }

    pub fn negate(&self) -> SignVector {
        SignVector::new(self.t, !self.positives)
    }

    pub fn reorient(&self, flip: IndexSet) -> SignVector {
        SignVector::new(self.t, self.positives ^ flip.0 as u64)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in 0..self.t {
            write!(f, "{}", self.sign(e))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl std::str::FromStr for SignVector {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let t = s.chars().count();
        if t == 0 || t > MAX_ELEMENTS {
            return Err(format!("sign vector length {t} outside 1..={MAX_ELEMENTS}"));
        }
        let mut positives = 0u64;
        for (e, c) in s.chars().enumerate() {
            match c {
                '+' => positives |= 1 << e,
                '-' => {}
                other => return Err(format!("unexpected character {other:?} at position {}", e + 1)),
            }
        }
        Ok(SignVector::new(t, positives))
    }
}

/// One of the `2t` halfspaces `T_e^+`, `T_e^-`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub element: usize,
    pub sign: Sign,
    pub members: IndexSet,
}

/// A ground set plus a list of distinct topes.
///
/// Construction only enforces structural facts (lengths, distinctness, size
/// limits). The oriented-matroid conditions are reported by
/// [`OrientedMatroid::validate`].
#[derive(Clone, PartialEq, Eq)]
pub struct OrientedMatroid {
    t: usize,
    topes: Vec<SignVector>,
    negation: Vec<Option<usize>>,
    positive_halfspaces: Vec<IndexSet>,
}

impl fmt::Debug for OrientedMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrientedMatroid")
            .field("t", &self.t)
            .field("topes", &self.topes.iter().map(|s| s.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EmptyTopeSet,
    /// `tope` is present, its negation is not.
    MissingNegation { tope: String },
    /// Elements with identical sign columns (1-based).
    Parallel { e: usize, f: usize },
    /// Elements with opposite sign columns (1-based).
    Antiparallel { e: usize, f: usize },
    /// The all-plus sign vector is a tope.
    Acyclic,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyTopeSet => write!(f, "empty tope set"),
            Violation::MissingNegation { tope } => write!(f, "negation of {tope} missing"),
            Violation::Parallel { e, f: g } => write!(f, "elements {e} and {g} are parallel"),
            Violation::Antiparallel { e, f: g } => write!(f, "elements {e} and {g} are antiparallel"),
            Violation::Acyclic => write!(f, "all-plus sign vector is a tope (acyclic)"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryMode {
    /// Every tope is listed.
    Full,
    /// One tope of each opposite pair is listed.
    Half,
}

impl OrientedMatroid {
    pub fn from_topes(t: usize, topes: Vec<SignVector>) -> Result<Self> {
        if t == 0 || t > MAX_ELEMENTS {
            return Err(cap("ground set size", t, MAX_ELEMENTS));
        }
        if topes.len() > MAX_TOPES {
            return Err(cap("tope count", topes.len(), MAX_TOPES));
        }
        let mut seen: HashMap<SignVector, usize> = HashMap::with_capacity(topes.len());
        for (i, s) in topes.iter().enumerate() {
            if s.len() != t {
                return Err(Error::MalformedLine {
                    line: i + 1,
                    reason: format!("tope {s} has length {}, expected {t}", s.len()),
                });
            }
            if let Some(&j) = seen.get(s) {
                return Err(Error::DuplicateTope {
                    tope: s.to_string(),
                    first: j + 1,
                    second: i + 1,
                });
            }
            seen.insert(*s, i);
        }
        let negation = topes.iter().map(|s| seen.get(&s.negate()).copied()).collect();
        let positive_halfspaces = (0..t)
            .map(|e| {
                topes
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.sign(e) == Sign::Plus)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Ok(OrientedMatroid {
            t,
            topes,
            negation,
            positive_halfspaces,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.t
    }

    pub fn num_topes(&self) -> usize {
        self.topes.len()
    }

    pub fn topes(&self) -> &[SignVector] {
        &self.topes
    }

    pub fn tope(&self, i: usize) -> SignVector {
        self.topes[i]
    }

    pub fn all_topes(&self) -> IndexSet {
        IndexSet::full(self.topes.len())
    }

    /// Index of `-T` for tope `i`, if present.
    pub fn negation_of(&self, i: usize) -> Option<usize> {
        self.negation[i]
    }

    /// `-K` as a tope subset; `None` if some negation is missing.
    pub fn negate_set(&self, set: IndexSet) -> Option<IndexSet> {
        set.iter()
            .map(|i| self.negation[i])
            .try_fold(IndexSet::EMPTY, |acc, j| j.map(|j| acc.with(j)))
    }

    /// The positive halfspaces `T_e^+` as tope subsets, indexed by element.
    pub fn positive_halfspaces(&self) -> &[IndexSet] {
        &self.positive_halfspaces
    }

    pub fn halfspace(&self, e: usize, sign: Sign) -> Result<Halfspace> {
        if e >= self.t {
            return Err(Error::ElementOutOfRange {
                element: e + 1,
                t: self.t,
            });
        }
        let plus = self.positive_halfspaces[e];
        let members = match sign {
            Sign::Plus => plus,
            Sign::Minus => self.all_topes() - plus,
        };
        Ok(Halfspace {
            element: e,
            sign,
            members,
        })
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.topes.is_empty() {
            violations.push(Violation::EmptyTopeSet);
            return ValidationReport { violations };
        }
        for (i, s) in self.topes.iter().enumerate() {
            if self.negation[i].is_none() {
                violations.push(Violation::MissingNegation { tope: s.to_string() });
            }
        }
        let all = self.all_topes();
        for e in 0..self.t {
            for f in e + 1..self.t {
                let (pe, pf) = (self.positive_halfspaces[e], self.positive_halfspaces[f]);
                if pe == pf {
                    violations.push(Violation::Parallel { e: e + 1, f: f + 1 });
                } else if pe == all - pf {
                    violations.push(Violation::Antiparallel { e: e + 1, f: f + 1 });
                }
            }
        }
        let all_plus = SignVector::new(self.t, u64::MAX);
        if self.topes.contains(&all_plus) {
            violations.push(Violation::Acyclic);
        }
        ValidationReport { violations }
    }

    /// Flip the signs of every element in `flip` on every tope.
    pub fn reorient(&self, flip: IndexSet) -> Result<OrientedMatroid> {
        if let Some(e) = flip.max().filter(|&e| e >= self.t) {
            return Err(Error::ElementOutOfRange {
                element: e + 1,
                t: self.t,
            });
        }
        OrientedMatroid::from_topes(self.t, self.topes.iter().map(|s| s.reorient(flip)).collect())
    }

    /// Topes whose positive part is inclusion-maximal among all positive parts.
    pub fn max_positive_topes(&self) -> IndexSet {
        let parts: Vec<u64> = self.topes.iter().map(|s| s.positive_mask()).collect();
        parts
            .iter()
            .enumerate()
            .filter(|&(_, &p)| !parts.iter().any(|&q| q != p && p & !q == 0))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn parse(text: &str) -> Result<OrientedMatroid> {
        let mut t: Option<usize> = None;
        let mut mode: Option<SymmetryMode> = None;
        let mut rows: Vec<(usize, SignVector)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = |reason: String| Error::MalformedLine { line: line_no, reason };
            if let Some(rest) = line.strip_prefix('t').filter(|r| r.starts_with(char::is_whitespace)) {
                if t.is_some() {
                    return Err(malformed("repeated `t` header".into()));
                }
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| malformed(format!("bad ground set size {:?}", rest.trim())))?;
                if n == 0 || n > MAX_ELEMENTS {
                    return Err(malformed(format!("ground set size {n} outside 1..={MAX_ELEMENTS}")));
                }
                t = Some(n);
                continue;
            }
            if let Some(rest) = line.strip_prefix("symmetry") {
                mode = Some(match rest.trim() {
                    "full" => SymmetryMode::Full,
                    "half" => SymmetryMode::Half,
                    other => return Err(malformed(format!("unknown symmetry mode {other:?}"))),
                });
                continue;
            }
            let Some(n) = t else {
                return Err(malformed("tope listed before the `t` header".into()));
            };
            if mode.is_none() {
                return Err(malformed("tope listed before the `symmetry` line".into()));
            }
            let sv: SignVector = line.parse().map_err(malformed)?;
            if sv.len() != n {
                return Err(malformed(format!("tope {line} has length {}, expected {n}", sv.len())));
            }
            rows.push((line_no, sv));
        }
        let t = t.ok_or(Error::MalformedLine {
            line: 0,
            reason: "missing `t` header".into(),
        })?;
        let mode = mode.ok_or(Error::MalformedLine {
            line: 0,
            reason: "missing `symmetry` line".into(),
        })?;

        let mut first_line: HashMap<SignVector, usize> = HashMap::new();
        for &(line, sv) in &rows {
            if let Some(&prev) = first_line.get(&sv) {
                return Err(Error::DuplicateTope {
                    tope: sv.to_string(),
                    first: prev,
                    second: line,
                });
            }
            first_line.insert(sv, line);
        }

        let mut topes: Vec<SignVector> = rows.iter().map(|&(_, s)| s).collect();
        match mode {
            SymmetryMode::Full => {
                if let Some(s) = topes.iter().find(|s| !first_line.contains_key(&s.negate())) {
                    return Err(Error::SymmetryViolation { tope: s.to_string() });
                }
            }
            SymmetryMode::Half => {
                for &(line, s) in &rows {
                    if first_line.get(&s.negate()).is_some_and(|&earlier| earlier < line) {
                        return Err(Error::MalformedLine {
                            line,
                            reason: format!("`symmetry half` lists both {s} and its negation"),
                        });
                    }
                }
                let negs: Vec<SignVector> = topes.iter().map(|s| s.negate()).collect();
                topes.extend(negs);
            }
        }
        let om = OrientedMatroid::from_topes(t, topes)?;
        let report = om.validate();
        if !report.is_clean() {
            return Err(Error::ValidationFailure(report.to_string()));
        }
        Ok(om)
    }

    /// `.topes` text with `symmetry full`.
    pub fn to_topes_string(&self) -> String {
        let mut out = format!("t {}\nsymmetry full\n", self.t);
        for s in &self.topes {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }

    pub fn describe_set(&self, set: IndexSet) -> Vec<String> {
        set.iter().map(|i| self.topes[i].to_string()).collect()
    }
}
