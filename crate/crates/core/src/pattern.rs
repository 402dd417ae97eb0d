//! Vincular (dashed) patterns and occurrence search.
//!
//! A pattern such as `31-4-2` is written as dash-separated groups of digits;
//! letters inside a group must sit at adjacent positions of the host. The
//! backtracking search in [`for_each_occurrence`] is the reference engine.
//! The recursive checkers [`is_satisfying_fast`] and [`avoids_3142v_fast`]
//! are only optimisations and are tested for equality against it.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::sync::LazyLock;

use crate::error::{Error, Result};
use crate::perm::{self, Permutation, SortDirection, Value};

/// A reduced pattern plus adjacency constraints between consecutive letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VincularPattern {
    letters: Permutation,
    glued: Vec<bool>,
}

impl VincularPattern {
    pub fn new(letters: Permutation, glued: Vec<bool>) -> Result<Self> {
        if letters.is_empty() || glued.len() + 1 != letters.len() {
            return Err(Error::Pattern {
                pattern: letters.to_string(),
                reason: format!(
                    "{} letters need {} glue flags, got {}",
                    letters.len(),
                    letters.len().saturating_sub(1),
                    glued.len()
                ),
            });
        }
        Ok(VincularPattern { letters, glued })
    }

    /// A classical pattern: no adjacency constraints.
    pub fn classical(letters: Permutation) -> Result<Self> {
        let glued = vec![false; letters.len().saturating_sub(1)];
        Self::new(letters, glued)
    }

    pub fn letters(&self) -> &Permutation {
        &self.letters
    }

    /// `glued()[i]` is true iff letters `i` and `i + 1` must be adjacent.
    pub fn glued(&self) -> &[bool] {
        &self.glued
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Parses the dash notation, e.g. `"31-4-2"`.
pub fn parse_pattern(text: &str) -> Result<VincularPattern> {
    let err = |reason: String| Error::Pattern {
        pattern: text.to_string(),
        reason,
    };
    let mut digits = Vec::new();
    let mut glued = Vec::new();
    for (g, group) in text.split('-').enumerate() {
        if group.is_empty() {
            return Err(err(format!("empty group at position {}", g + 1)));
        }
        if g > 0 {
            glued.push(false);
        }
        for (i, c) in group.chars().enumerate() {
            let d = match c {
                '1'..='9' => c as i64 - '0' as i64,
                _ => return Err(err(format!("unexpected character {c:?}"))),
            };
            if i > 0 {
                glued.push(true);
            }
            digits.push(d);
        }
    }
    let letters = perm::make_permutation(&digits).map_err(|e| match e {
        Error::Repeated { value, .. } => err(format!("digit {value} is repeated")),
        Error::OutOfRange { value, n, .. } => err(format!("digit {value} is out of range for a pattern of length {n}")),
        other => other,
    })?;
    VincularPattern::new(letters, glued)
}

impl FromStr for VincularPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pattern(s)
    }
}

impl fmt::Display for VincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.letters.values().iter().enumerate() {
            if i > 0 && !self.glued[i - 1] {
                f.write_str("-")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Strictly increasing 1-based host positions witnessing a containment.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    indices: Vec<usize>,
}

impl Occurrence {
    pub fn new(indices: Vec<usize>) -> Self {
        Occurrence { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Host values at the occurrence's positions.
    pub fn values_in(&self, host: &Permutation) -> Vec<Value> {
        self.indices.iter().map(|&i| host.at(i)).collect()
    }
}

impl fmt::Display for Occurrence {
    /// `(1,3,4,5)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.indices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Visits every occurrence of `pattern` in `host` in lexicographic order of
/// positions. The callback receives 0-based indices and may stop the search.
pub fn for_each_occurrence<F>(host: &[Value], pattern: &VincularPattern, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let mut chosen = Vec::with_capacity(pattern.len());
    search(host, pattern.letters.values(), &pattern.glued, &mut chosen, &mut visit)
}

fn search<F>(
    host: &[Value],
    letters: &[Value],
    glued: &[bool],
    chosen: &mut Vec<usize>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let t = chosen.len();
    let k = letters.len();
    if t == k {
        return visit(chosen);
    }
    // leave room for the k - t - 1 letters still to place after this one
    let Some(hi) = host.len().checked_sub(k - t) else {
        return ControlFlow::Continue(());
    };
    let lo = chosen.last().map_or(0, |&i| i + 1);
    let hi = if t > 0 && glued[t - 1] { hi.min(lo) } else { hi };
    for i in lo..=hi {
        let fits = chosen
            .iter()
            .zip(letters)
            .all(|(&j, &l)| (l < letters[t]) == (host[j] < host[i]));
        if fits {
            chosen.push(i);
            let flow = search(host, letters, glued, chosen, visit);
            chosen.pop();
            flow?;
        }
    }
    ControlFlow::Continue(())
}

/// All occurrences in lexicographic order, or only the first `limit`.
pub fn occurrences(host: &Permutation, pattern: &VincularPattern, limit: Option<usize>) -> Vec<Occurrence> {
    let mut found = Vec::new();
    if limit == Some(0) {
        return found;
    }
    let _ = for_each_occurrence(host.values(), pattern, |idx| {
        found.push(Occurrence::new(idx.iter().map(|i| i + 1).collect()));
        if limit.is_some_and(|l| found.len() >= l) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

pub fn first_occurrence(host: &Permutation, pattern: &VincularPattern) -> Option<Occurrence> {
    occurrences(host, pattern, Some(1)).pop()
}

pub fn avoids(host: &Permutation, pattern: &VincularPattern) -> bool {
    for_each_occurrence(host.values(), pattern, |_| ControlFlow::Break(())).is_continue()
}

/// `3-2-4-1`
pub static P3241: LazyLock<VincularPattern> = LazyLock::new(|| parse_pattern("3-2-4-1").unwrap());
/// `31-4-2`
pub static P3142_VINCULAR: LazyLock<VincularPattern> = LazyLock::new(|| parse_pattern("31-4-2").unwrap());
static P321: LazyLock<VincularPattern> = LazyLock::new(|| parse_pattern("3-2-1").unwrap());
static P312: LazyLock<VincularPattern> = LazyLock::new(|| parse_pattern("3-1-2").unwrap());

/// The first 3-2-4-1 occurrence `(i, j, k, l)` with no position strictly
/// between `i` and `j` holding a value above `host[k]`.
pub fn unextendable_3241(host: &Permutation) -> Option<Occurrence> {
    let v = host.values();
    let mut bad = None;
    let _ = for_each_occurrence(v, &P3241, |idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        if v[i + 1..j].iter().any(|&w| w > v[k]) {
            ControlFlow::Continue(())
        } else {
            bad = Some(Occurrence::new(idx.iter().map(|x| x + 1).collect()));
            ControlFlow::Break(())
        }
    });
    bad
}

/// True iff every 3-2-4-1 occurrence extends to a 3-5-2-4-1 occurrence.
pub fn is_satisfying_naive(host: &Permutation) -> bool {
    unextendable_3241(host).is_none()
}

/// Shared recursion of the two LRmax characterisations: sorting the gaps in
/// `direction` must give the fill of the spec, and every reduced gap must
/// itself belong to the class.
fn lrmax_recursive(values: &[Value], direction: SortDirection, maximal: bool) -> bool {
    if values.len() <= 1 {
        return true;
    }
    let mut positions = Vec::new();
    let mut maxima = Vec::new();
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > best {
            best = v;
            positions.push(i + 1);
            maxima.push(v);
        }
    }
    let target = perm::fill(&positions, &maxima, values.len(), maximal);
    if target.as_deref() != Some(perm::sort_gaps_slice(values, direction).as_slice()) {
        return false;
    }
    let ends = positions[1..].iter().map(|p| p - 1).chain([values.len()]);
    positions.iter().zip(ends).all(|(&p, end)| {
        let gap = &values[p..end];
        gap.len() <= 1 || lrmax_recursive(&perm::reduce_distinct(gap), direction, maximal)
    })
}

/// Recursive test via the LRmax decomposition: each gap satisfying, and the
/// gaps sorted ascending giving the minimal permutation.
pub fn is_satisfying_fast(host: &Permutation) -> bool {
    lrmax_recursive(host.values(), SortDirection::Ascending, false)
}

/// Recursive test via the LRmax decomposition: each gap 31-4-2-avoiding,
/// and the gaps sorted descending giving the maximal permutation.
pub fn avoids_3142v_fast(host: &Permutation) -> bool {
    lrmax_recursive(host.values(), SortDirection::Descending, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classical {
    P321,
    P312,
}

impl Classical {
    pub fn pattern(self) -> &'static VincularPattern {
        match self {
            Classical::P321 => &P321,
            Classical::P312 => &P312,
        }
    }
}

/// Specialised scans: linear for 321, quadratic for 312.
pub fn avoids_classical(host: &Permutation, which: Classical) -> bool {
    let v = host.values();
    match which {
        Classical::P321 => {
            // no entry with a larger one before it and a smaller one after it
            let mut suffix_min = vec![Value::MAX; v.len() + 1];
            for i in (0..v.len()).rev() {
                suffix_min[i] = suffix_min[i + 1].min(v[i]);
            }
            let mut prefix_max = 0;
            for (i, &x) in v.iter().enumerate() {
                if prefix_max > x && suffix_min[i + 1] < x {
                    return false;
                }
                prefix_max = prefix_max.max(x);
            }
            true
        }
        Classical::P312 => {
            let mut prefix_max = 0;
            for (j, &x) in v.iter().enumerate() {
                if prefix_max > x && v[j + 1..].iter().any(|&z| x < z && z < prefix_max) {
                    return false;
                }
                prefix_max = prefix_max.max(x);
            }
            true
        }
    }
}

pub(crate) fn classical_witness(host: &Permutation, which: Classical) -> Option<Occurrence> {
    if avoids_classical(host, which) {
        None
    } else {
        first_occurrence(host, which.pattern())
    }
}

/// The four permutation classes the tool can test membership of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Satisfying,
    Avoids3142v,
    Avoids321,
    Avoids312,
}

impl Class {
    pub const ALL: [Class; 4] = [
        Class::Satisfying,
        Class::Avoids3142v,
        Class::Avoids321,
        Class::Avoids312,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Class::Satisfying => "satisfying",
            Class::Avoids3142v => "avoiding3142v",
            Class::Avoids321 => "avoids321",
            Class::Avoids312 => "avoids312",
        }
    }

    pub fn contains(self, host: &Permutation) -> bool {
        match self {
            Class::Satisfying => is_satisfying_fast(host),
            Class::Avoids3142v => avoids_3142v_fast(host),
            Class::Avoids321 => avoids_classical(host, Classical::P321),
            Class::Avoids312 => avoids_classical(host, Classical::P312),
        }
    }

    /// `None` if `host` belongs to the class, otherwise an occurrence that
    /// disqualifies it, found by the naive engine.
    pub fn witness(self, host: &Permutation) -> Option<Occurrence> {
        match self {
            Class::Satisfying => unextendable_3241(host),
            Class::Avoids3142v => first_occurrence(host, &P3142_VINCULAR),
            Class::Avoids321 => first_occurrence(host, &P321),
            Class::Avoids312 => first_occurrence(host, &P312),
        }
    }
}

impl FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Class::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse {
                token: s.to_string(),
                reason: "expected satisfying, avoiding3142v, avoids321 or avoids312".into(),
            })
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn occ(xs: &[usize]) -> Occurrence {
        Occurrence::new(xs.to_vec())
    }

    #[test]
    fn parse_cases() {
        let pat = parse_pattern("31-4-2").unwrap();
        assert_eq!(pat.letters(), &p("3,1,4,2"));
        assert_eq!(pat.glued(), &[true, false, false]);
        let pat = parse_pattern("3-2-4-1").unwrap();
        assert_eq!(pat.letters(), &p("3,2,4,1"));
        assert_eq!(pat.glued(), &[false, false, false]);
        assert_eq!(parse_pattern("1").unwrap().glued(), &[] as &[bool]);
        assert_eq!(parse_pattern("123").unwrap().glued(), &[true, true]);
        assert_eq!(pat.to_string(), "3-2-4-1");
        assert_eq!(P3142_VINCULAR.to_string(), "31-4-2");
    }

    #[test]
    fn parse_errors() {
        for bad in ["3-1-4-22", "", "3--1-2", "-1", "1-", "13", "1-0", "1,2", "a", "21-4"] {
            assert!(
                matches!(parse_pattern(bad), Err(Error::Pattern { .. })),
                "{bad:?} should be rejected"
            );
        }
    }

    #[test]
    fn occurrences_of_worked_example() {
        let host = p("3,5,1,4,2");
        let classical = parse_pattern("3-1-4-2").unwrap();
        assert_eq!(occurrences(&host, &classical, None), vec![occ(&[1, 3, 4, 5])]);
        assert!(occurrences(&host, &P3142_VINCULAR, None).is_empty());
        assert!(avoids(&host, &P3142_VINCULAR));
        assert!(!avoids(&host, &classical));
    }

    #[test]
    fn occurrences_order_and_limit() {
        let host = p("3,2,1,4");
        let pat = parse_pattern("2-1").unwrap();
        let all = occurrences(&host, &pat, None);
        assert_eq!(all, vec![occ(&[1, 2]), occ(&[1, 3]), occ(&[2, 3])]);
        assert_eq!(occurrences(&host, &pat, Some(2)), all[..2].to_vec());
        assert!(occurrences(&host, &pat, Some(0)).is_empty());
        let glued = parse_pattern("21").unwrap();
        assert_eq!(occurrences(&host, &glued, None), vec![occ(&[1, 2]), occ(&[2, 3])]);
        // pattern longer than host
        assert!(occurrences(&p("2,1"), &P3241, None).is_empty());
    }

    #[test]
    fn avoids_cases() {
        assert!(avoids(&Permutation::identity(7), &P3241));
        assert!(!avoids(&p("3,1,4,2"), &P3142_VINCULAR));
        assert_eq!(
            first_occurrence(&p("3,1,4,2"), &P3142_VINCULAR),
            Some(occ(&[1, 2, 3, 4]))
        );
        assert!(avoids(&Permutation::empty(), &P3241));
        assert!(avoids(&Permutation::empty(), &parse_pattern("1").unwrap()));
    }

    #[test]
    fn satisfying_naive_cases() {
        assert!(!is_satisfying_naive(&p("3,2,4,1")));
        assert_eq!(unextendable_3241(&p("3,2,4,1")), Some(occ(&[1, 2, 3, 4])));
        assert!(is_satisfying_naive(&p("3,5,2,4,1")));
        assert_eq!(occurrences(&p("3,5,2,4,1"), &P3241, None), vec![occ(&[1, 3, 4, 5])]);
        assert!(is_satisfying_naive(&Permutation::identity(6)));
        // the witness must beat the '4', not just the '3'
        assert!(!is_satisfying_naive(&p("3,4,2,5,1")));
    }

    #[test]
    fn fast_checkers() {
        assert!(is_satisfying_fast(&p("3,1,4,2")));
        assert!(!is_satisfying_fast(&p("3,2,4,1")));
        assert!(is_satisfying_fast(&Permutation::empty()));
        assert!(avoids_3142v_fast(&p("3,2,4,1")));
        assert!(!avoids_3142v_fast(&p("3,1,4,2")));
        assert!(avoids_3142v_fast(&Permutation::identity(5)));
        assert!(avoids_3142v_fast(&Permutation::empty()));
        assert!(is_satisfying_fast(&p("3,5,2,4,1")));
    }

    #[test]
    fn classical_cases() {
        assert!(avoids_classical(&p("3,1,5,2,4,7,6"), Classical::P321));
        assert!(avoids_classical(&p("3,2,5,4,1,7,6"), Classical::P312));
        assert!(!avoids_classical(&p("3,2,1"), Classical::P321));
        assert!(!avoids_classical(&p("3,1,2"), Classical::P312));
        assert!(avoids_classical(&Permutation::empty(), Classical::P312));
    }

    #[test]
    fn class_names_round_trip() {
        for c in Class::ALL {
            assert_eq!(c.name().parse::<Class>().unwrap(), c);
        }
        assert!("avoids123".parse::<Class>().is_err());
        assert_eq!(Class::Satisfying.witness(&p("3,2,4,1")), Some(occ(&[1, 2, 3, 4])));
        assert_eq!(Class::Avoids3142v.witness(&p("3,5,1,4,2")), None);
    }
}
