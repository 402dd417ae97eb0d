//! The recursive bijection from 3-5-2-4-1-satisfying permutations onto
//! 31-4-2-avoiding permutations, preserving the LRmax specification.
//!
//! For a satisfying `π = m₁L₁…m_rL_r`, sorting every gap ascending yields the
//! minimal permutation of its spec. The image keeps the maxima in place and
//! fills gap `i` with the values the maximal permutation of the same spec puts
//! there, arranged in the relative order `φ(reduce(L_i))`. The inverse runs
//! the same construction with minimal and maximal swapped.

use crate::error::{Domain, Error, Result};
use crate::pattern::{self, P3142_VINCULAR};
use crate::perm::{self, Permutation, SortDirection, Value};

/// Maps a 3-5-2-4-1-satisfying permutation to a 31-4-2-avoiding one with the
/// same LRmax specification.
///
/// ```
/// use wilfcheck::{bijection::phi, Permutation};
/// let p: Permutation = "3,1,4,2".parse().unwrap();
/// assert_eq!(phi(&p).unwrap().to_string(), "3,2,4,1");
/// ```
pub fn phi(perm: &Permutation) -> Result<Permutation> {
    if let Some(witness) = pattern::unextendable_3241(perm) {
        return Err(Error::OutsideDomain {
            domain: Domain::Satisfying,
            witness,
        });
    }
    Ok(Permutation::from_unchecked(transport(perm.values(), true)))
}

/// Inverse of [`phi`].
pub fn phi_inverse(perm: &Permutation) -> Result<Permutation> {
    if let Some(witness) = pattern::first_occurrence(perm, &P3142_VINCULAR) {
        return Err(Error::OutsideDomain {
            domain: Domain::Avoids3142v,
            witness,
        });
    }
    Ok(Permutation::from_unchecked(transport(perm.values(), false)))
}

/// `forward` maps minimal-side (satisfying) to maximal-side (avoiding).
/// Membership of the gaps is inherited from the top-level check.
fn transport(values: &[Value], forward: bool) -> Vec<Value> {
    let n = values.len();
    if n <= 1 {
        return values.to_vec();
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
    let (direction, source_is_maximal) = if forward {
        (SortDirection::Ascending, false)
    } else {
        (SortDirection::Descending, true)
    };
    let source = perm::fill(&positions, &maxima, n, source_is_maximal);
    assert_eq!(
        source.as_deref(),
        Some(perm::sort_gaps_slice(values, direction).as_slice()),
        "sorted gaps of {values:?} do not match the spec's fill; input is outside the domain"
    );
    let mut out = perm::fill(&positions, &maxima, n, !source_is_maximal).expect("spec read off a permutation is valid");

    let ends = positions[1..].iter().map(|p| p - 1).chain([n]);
    for (&start, end) in positions.iter().zip(ends) {
        // 0-based gap range is start..end
        if start == end {
            continue;
        }
        let order = transport(&perm::reduce_distinct(&values[start..end]), forward);
        let mut pool = out[start..end].to_vec();
        pool.sort_unstable();
        for (slot, rank) in out[start..end].iter_mut().zip(order) {
            *slot = pool[rank as usize - 1];
        }
    }
    out
}
