//! Permutations in one-line notation, their left-to-right maxima, and the
//! minimal/maximal fills of an LRmax specification.
//!
//! Everything here is 1-based: a permutation of length `n` holds the values
//! `1..=n`, and positions reported in an [`LrMaxSpec`] start at 1.

use std::fmt;
use std::str::FromStr;

use crate::error::{Domain, Error, Result};
use crate::pattern::{self, Classical};

/// An entry of a permutation.
pub type Value = u32;

/// A permutation of `{1, …, n}` in one-line notation.
///
/// ```
/// use wilfcheck::Permutation;
/// let p: Permutation = "3,1,5,4,2,7,6".parse().unwrap();
/// assert_eq!(p.len(), 7);
/// assert_eq!(p.to_string(), "3,1,5,4,2,7,6");
/// ```
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<Value>,
}

impl Permutation {
    /// Validates `values` as a permutation of `1..=values.len()`.
    pub fn new(values: Vec<Value>) -> Result<Self> {
        check_values(values.iter().map(|&v| i64::from(v)), values.len())?;
        Ok(Permutation { values })
    }

    /// Caller guarantees `values` is a permutation of `1..=values.len()`.
    pub(crate) fn from_unchecked(values: Vec<Value>) -> Self {
        debug_assert!(check_values(values.iter().map(|&v| i64::from(v)), values.len()).is_ok());
        Permutation { values }
    }

    pub(crate) fn values_mut(&mut self) -> &mut Vec<Value> {
        &mut self.values
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as Value).collect(),
        }
    }

    pub fn empty() -> Self {
        Permutation::default()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Value> {
        self.values
    }

    /// Value at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> Value {
        self.values[pos - 1]
    }

    pub fn lrmax_spec(&self) -> LrMaxSpec {
        lrmax_spec(self)
    }

    pub fn decompose(&self) -> Decomposition {
        decompose(self)
    }
}

/// Builds a permutation from arbitrary integers, rejecting zeros, negatives,
/// values above `n` and repeats. Error indices are 1-based.
pub fn make_permutation(values: &[i64]) -> Result<Permutation> {
    check_values(values.iter().copied(), values.len())?;
    Ok(Permutation {
        values: values.iter().map(|&v| v as Value).collect(),
    })
}

fn check_values(values: impl Iterator<Item = i64>, n: usize) -> Result<()> {
    let mut seen = vec![false; n + 1];
    for (i, v) in values.enumerate() {
        if v < 1 || v > n as i64 {
            return Err(Error::OutOfRange {
                index: i + 1,
                value: v,
                n,
            });
        }
        if std::mem::replace(&mut seen[v as usize], true) {
            return Err(Error::Repeated { index: i + 1, value: v });
        }
    }
    Ok(())
}

impl AsRef<[Value]> for Permutation {
    fn as_ref(&self) -> &[Value] {
        &self.values
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.values)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Comma-separated values; the empty string is the empty permutation.
    fn from_str(s: &str) -> Result<Self> {
        make_permutation(&parse_list(s)?)
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<i64>().map_err(|_| Error::Parse {
                token: tok.to_string(),
                reason: "expected an integer".into(),
            })
        })
        .collect()
}

/// Replaces the smallest entry by 1, the next smallest by 2, and so on.
///
/// ```
/// use wilfcheck::perm::reduce;
/// assert_eq!(reduce(&[9, 4, 7]).unwrap().values(), &[3, 1, 2]);
/// ```
pub fn reduce<T: Ord + Copy + Into<i64>>(values: &[T]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by_key(|&i| (values[i], i));
    let mut out = vec![0; values.len()];
    for (rank, w) in order.windows(2).enumerate() {
        if values[w[0]] == values[w[1]] {
            return Err(Error::Repeated {
                index: w[0].max(w[1]) + 1,
                value: values[w[1]].into(),
            });
        }
        out[w[0]] = rank as Value + 1;
    }
    if let Some(&last) = order.last() {
        out[last] = values.len() as Value;
    }
    Ok(Permutation { values: out })
}

/// Reduction of distinct values, without the repeat check.
pub(crate) fn reduce_distinct(values: &[Value]) -> Vec<Value> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    values
        .iter()
        .map(|v| sorted.binary_search(v).unwrap() as Value + 1)
        .collect()
}

/// Positions (1-based) and values of the left-to-right maxima of a
/// permutation of size `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LrMaxSpec {
    pub positions: Vec<usize>,
    pub maxima: Vec<Value>,
    pub n: usize,
}

impl LrMaxSpec {
    pub fn new(positions: Vec<usize>, maxima: Vec<Value>, n: usize) -> Self {
        LrMaxSpec { positions, maxima, n }
    }

    /// Number of left-to-right maxima.
    pub fn r(&self) -> usize {
        self.positions.len()
    }

    pub fn is_valid(&self) -> bool {
        is_valid_spec(self)
    }
}

impl fmt::Display for LrMaxSpec {
    /// `P=1,3,6;M=3,5,7;n=7`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("P=")?;
        write_list(f, &self.positions)?;
        f.write_str(";M=")?;
        write_list(f, &self.maxima)?;
        write!(f, ";n={}", self.n)
    }
}

impl FromStr for LrMaxSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (mut positions, mut maxima, mut n) = (None, None, None);
        for field in s.trim().split(';') {
            let bad = || Error::Parse {
                token: field.to_string(),
                reason: "expected P=…, M=… or n=…".into(),
            };
            let (key, val) = field.split_once('=').ok_or_else(bad)?;
            let non_negative = |xs: Vec<i64>| -> Result<Vec<i64>> {
                match xs.iter().find(|&&x| x < 0) {
                    Some(x) => Err(Error::Parse {
                        token: x.to_string(),
                        reason: "negative entry".into(),
                    }),
                    None => Ok(xs),
                }
            };
            let slot = match key.trim() {
                "P" => &mut positions,
                "M" => &mut maxima,
                "n" => &mut n,
                _ => return Err(bad()),
            };
            if slot.is_some() {
                return Err(Error::Parse {
                    token: field.to_string(),
                    reason: "duplicate field".into(),
                });
            }
            *slot = Some(non_negative(parse_list(val)?)?);
        }
        let missing = |name: &str| Error::Parse {
            token: s.to_string(),
            reason: format!("missing {name}= field"),
        };
        let n = match n.ok_or_else(|| missing("n"))?.as_slice() {
            [n] => *n as usize,
            _ => {
                return Err(Error::Parse {
                    token: s.to_string(),
                    reason: "n= takes a single integer".into(),
                })
            }
        };
        Ok(LrMaxSpec {
            positions: positions
                .ok_or_else(|| missing("P"))?
                .into_iter()
                .map(|p| p as usize)
                .collect(),
            maxima: maxima
                .ok_or_else(|| missing("M"))?
                .into_iter()
                .map(|m| m as Value)
                .collect(),
            n,
        })
    }
}

pub fn lrmax_spec(perm: &Permutation) -> LrMaxSpec {
    let mut spec = LrMaxSpec {
        n: perm.len(),
        ..Default::default()
    };
    let mut best = 0;
    for (i, &v) in perm.values.iter().enumerate() {
        if v > best {
            best = v;
            spec.positions.push(i + 1);
            spec.maxima.push(v);
        }
    }
    spec
}

/// Checks `1 = p₁ < … < p_r ≤ n`, `1 ≤ m₁ < … < m_r = n` and
/// `p_{i+1} ≤ m_i + 1`. The empty spec is valid exactly when `n = 0`.
pub fn is_valid_spec(spec: &LrMaxSpec) -> bool {
    let (p, m, n) = (&spec.positions, &spec.maxima, spec.n);
    if p.len() != m.len() {
        return false;
    }
    if p.is_empty() {
        return n == 0;
    }
    p[0] == 1
        && m[0] >= 1
        && p.windows(2).all(|w| w[0] < w[1])
        && m.windows(2).all(|w| w[0] < w[1])
        && *p.last().unwrap() <= n
        && *m.last().unwrap() as usize == n
        && p.windows(2).zip(m.iter()).all(|(w, &mi)| w[1] <= mi as usize + 1)
}

/// A left-to-right maximum together with the entries after it, up to the
/// next maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub max: Value,
    pub gap: Vec<Value>,
}

/// `π = m₁ L₁ m₂ L₂ … m_r L_r` with `m_i` the left-to-right maxima.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    pub blocks: Vec<Block>,
}

impl Decomposition {
    /// Concatenates the blocks back into one-line notation.
    pub fn flatten(&self) -> Vec<Value> {
        let mut out = Vec::new();
        for b in &self.blocks {
            out.push(b.max);
            out.extend_from_slice(&b.gap);
        }
        out
    }
}

pub fn decompose(perm: &Permutation) -> Decomposition {
    let mut blocks: Vec<Block> = Vec::new();
    for &v in &perm.values {
        match blocks.last_mut() {
            Some(b) if v < b.max => b.gap.push(v),
            _ => blocks.push(Block {
                max: v,
                gap: Vec::new(),
            }),
        }
    }
    Decomposition { blocks }
}

/// Fills the non-record positions of a spec. Returns `None` if the maximal
/// fill runs out of admissible values, which cannot happen for valid specs.
pub(crate) fn fill(positions: &[usize], maxima: &[Value], n: usize, maximal: bool) -> Option<Vec<Value>> {
    let mut used = vec![false; n + 1];
    for &m in maxima {
        used[m as usize] = true;
    }
    let mut out = Vec::with_capacity(n);
    let mut next_record = 0;
    let mut current = 0;
    let mut smallest = 1;
    for pos in 1..=n {
        if positions.get(next_record) == Some(&pos) {
            current = maxima[next_record];
            next_record += 1;
            out.push(current);
            continue;
        }
        let v = if maximal {
            (1..current).rev().find(|&v| !used[v as usize])?
        } else {
            while used[smallest] {
                smallest += 1;
            }
            smallest as Value
        };
        used[v as usize] = true;
        out.push(v);
    }
    Some(out)
}

fn checked_fill(spec: &LrMaxSpec, maximal: bool) -> Result<Permutation> {
    if !is_valid_spec(spec) {
        return Err(Error::InvalidSpec(spec.to_string()));
    }
    let values = fill(&spec.positions, &spec.maxima, spec.n, maximal).expect("valid specs always admit a fill");
    Ok(Permutation::from_unchecked(values))
}

/// Fills each non-record position, left to right, with the smallest unused
/// value.
pub fn minimal_permutation(spec: &LrMaxSpec) -> Result<Permutation> {
    checked_fill(spec, false)
}

/// Fills each non-record position, left to right, with the largest unused
/// value below the most recent left-to-right maximum.
pub fn maximal_permutation(spec: &LrMaxSpec) -> Result<Permutation> {
    checked_fill(spec, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SortDirection {
    Ascending,
    Descending,
}

pub(crate) fn sort_gaps_slice(values: &[Value], direction: SortDirection) -> Vec<Value> {
    let mut out = values.to_vec();
    let mut start = 0;
    let mut best = 0;
    let finish = |gap: &mut [Value]| match direction {
        SortDirection::Ascending => gap.sort_unstable(),
        SortDirection::Descending => gap.sort_unstable_by(|a, b| b.cmp(a)),
    };
    for i in 0..out.len() {
        if out[i] > best {
            finish(&mut out[start..i]);
            best = out[i];
            start = i + 1;
        }
    }
    let len = out.len();
    finish(&mut out[start.min(len)..]);
    out
}

/// Sorts every gap `L_i` independently, leaving the maxima in place.
pub fn sort_gaps(perm: &Permutation, direction: SortDirection) -> Permutation {
    Permutation::from_unchecked(sort_gaps_slice(&perm.values, direction))
}

/// The classic bijection from 3-2-1-avoiders to 3-1-2-avoiders: the maximal
/// permutation with the same LRmax specification.
pub fn simion_schmidt(perm: &Permutation) -> Result<Permutation> {
    if let Some(witness) = pattern::classical_witness(perm, Classical::P321) {
        return Err(Error::OutsideDomain {
            domain: Domain::Avoids321,
            witness,
        });
    }
    maximal_permutation(&lrmax_spec(perm))
}

/// Inverse of [`simion_schmidt`]: the minimal permutation with the same
/// LRmax specification.
pub fn simion_schmidt_inverse(perm: &Permutation) -> Result<Permutation> {
    if let Some(witness) = pattern::classical_witness(perm, Classical::P312) {
        return Err(Error::OutsideDomain {
            domain: Domain::Avoids312,
            witness,
        });
    }
    minimal_permutation(&lrmax_spec(perm))
}
