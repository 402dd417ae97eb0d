//! Exhaustive verification of every structural claim the library relies on.
//!
//! Each check runs over all of `S_n` (or all valid specs for `[n]`) and
//! records the first counterexample. The occurrence-search engine is treated
//! as ground truth; the specialised checkers are looked up through
//! [`Checkers`] so that a broken one can be injected to test the harness.

use std::collections::HashSet;
use std::fmt;

use crate::bijection::{phi, phi_inverse};
use crate::enumerate::{self, for_each_valid_spec};
use crate::pattern::{self, Classical, P3142_VINCULAR};
use crate::perm::{self, Permutation, SortDirection};

pub type Checker = fn(&Permutation) -> bool;

/// The optimised predicates under test.
#[derive(Clone, Copy)]
pub struct Checkers {
    pub satisfying_fast: Checker,
    pub avoids_3142v_fast: Checker,
    pub avoids_321: Checker,
    pub avoids_312: Checker,
}

impl Default for Checkers {
    fn default() -> Self {
        Checkers {
            satisfying_fast: pattern::is_satisfying_fast,
            avoids_3142v_fast: pattern::avoids_3142v_fast,
            avoids_321: |p| pattern::avoids_classical(p, Classical::P321),
            avoids_312: |p| pattern::avoids_classical(p, Classical::P312),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub n: usize,
    /// Permutation or spec in text form.
    pub counterexample: String,
    pub reason: String,
}

impl Failure {
    fn new(n: usize, counterexample: impl fmt::Display, reason: impl Into<String>) -> Self {
        Failure {
            n,
            counterexample: counterexample.to_string(),
            reason: reason.into(),
        }
    }
}

type Outcome = Result<u64, Failure>;

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    /// Largest `n` the check was run at.
    pub n_max: usize,
    pub cases: u64,
    pub failure: Option<Failure>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} (n<={}, {} cases)", self.name, self.n_max, self.cases),
            Some(e) => write!(
                f,
                "FAIL {}: n={} counterexample {} ({})",
                self.name, e.n, e.counterexample, e.reason
            ),
        }
    }
}

/// A named check and the largest `n` it is run at inside the suite.
pub struct Check {
    pub name: &'static str,
    pub max_n: usize,
    run: fn(usize, &Checkers) -> Outcome,
}

impl Check {
    /// Runs this check for every `n` in `0..=n_max` (capped at its own
    /// ceiling), stopping at the first failure.
    pub fn run(&self, n_max: usize, checkers: &Checkers) -> CheckResult {
        let top = n_max.min(self.max_n);
        let mut result = CheckResult {
            name: self.name,
            n_max: top,
            cases: 0,
            failure: None,
        };
        for n in 0..=top {
            match (self.run)(n, checkers) {
                Ok(cases) => result.cases += cases,
                Err(e) => {
                    result.failure = Some(e);
                    break;
                }
            }
        }
        result
    }
}

pub const CHECKS: &[Check] = &[
    Check {
        name: "decompose round-trip",
        max_n: 12,
        run: decompose_round_trip,
    },
    Check {
        name: "sort_gaps preserves spec",
        max_n: 12,
        run: sort_gaps_preserves_spec,
    },
    Check {
        name: "spec fills round-trip",
        max_n: 12,
        run: spec_fill_round_trip,
    },
    Check {
        name: "valid specs = catalan",
        max_n: 12,
        run: valid_specs_catalan,
    },
    Check {
        name: "321-avoiding <=> minimal fill",
        max_n: 12,
        run: characterization_minimal,
    },
    Check {
        name: "312-avoiding <=> maximal fill",
        max_n: 12,
        run: characterization_maximal,
    },
    Check {
        name: "321 scan = occurrence engine",
        max_n: 12,
        run: classical_321_agrees,
    },
    Check {
        name: "312 scan = occurrence engine",
        max_n: 12,
        run: classical_312_agrees,
    },
    Check {
        name: "satisfying fast = naive",
        max_n: 12,
        run: satisfying_agrees,
    },
    Check {
        name: "31-4-2 fast = naive",
        max_n: 12,
        run: avoiding_agrees,
    },
    Check {
        name: "31-4-2 occurrences within 3-1-4-2",
        max_n: 7,
        run: glue_monotone,
    },
    Check {
        name: "simion-schmidt bijection",
        max_n: 12,
        run: simion_schmidt_bijection,
    },
    Check {
        name: "phi well-defined",
        max_n: 12,
        run: phi_well_defined,
    },
    Check {
        name: "phi bijection onto avoiders",
        max_n: 12,
        run: phi_bijective,
    },
    Check {
        name: "phi round-trip",
        max_n: 12,
        run: phi_round_trip,
    },
    Check {
        name: "satisfying = avoiding",
        max_n: 12,
        run: classes_equinumerous,
    },
];

pub fn check(name: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.name == name)
}

fn all_perms(n: usize) -> impl Iterator<Item = Permutation> {
    enumerate::permutations_with_limit(n, enumerate::HARD_MAX_N).expect("check sizes are within the hard limit")
}

/// Runs `test` over `S_n`, returning the case count or the first failure.
fn over_perms(n: usize, mut test: impl FnMut(&Permutation) -> Result<(), String>) -> Outcome {
    let mut cases = 0;
    for p in all_perms(n) {
        test(&p).map_err(|reason| Failure::new(n, &p, reason))?;
        cases += 1;
    }
    Ok(cases)
}

fn agree(label: &str, fast: bool, truth: bool) -> Result<(), String> {
    if fast == truth {
        Ok(())
    } else {
        Err(format!("{label} says {fast}, occurrence engine says {truth}"))
    }
}

fn decompose_round_trip(n: usize, _: &Checkers) -> Outcome {
    over_perms(n, |p| {
        let d = p.decompose();
        if d.flatten() != p.values() {
            return Err("blocks do not concatenate to the input".into());
        }
        match d.blocks.iter().find(|b| b.gap.iter().any(|&v| v >= b.max)) {
            Some(b) => Err(format!("gap after {} holds a larger value", b.max)),
            None => Ok(()),
        }
    })
}

fn sort_gaps_preserves_spec(n: usize, _: &Checkers) -> Outcome {
    over_perms(n, |p| {
        let spec = p.lrmax_spec();
        for dir in [SortDirection::Ascending, SortDirection::Descending] {
            if perm::sort_gaps(p, dir).lrmax_spec() != spec {
                return Err(format!("{dir:?} sort changed the spec"));
            }
        }
        Ok(())
    })
}

fn spec_fill_round_trip(n: usize, _: &Checkers) -> Outcome {
    let mut cases = 0;
    let mut failure = None;
    for_each_valid_spec(n, |s| {
        if failure.is_some() {
            return;
        }
        cases += 1;
        let min = perm::minimal_permutation(s).map(|p| p.lrmax_spec());
        let max = perm::maximal_permutation(s).map(|p| p.lrmax_spec());
        if min.as_ref() != Ok(s) {
            failure = Some(Failure::new(n, s, "minimal fill has a different spec"));
        } else if max.as_ref() != Ok(s) {
            failure = Some(Failure::new(n, s, "maximal fill has a different spec"));
        }
    });
    if let Some(f) = failure {
        return Err(f);
    }
    // every permutation's spec is valid
    cases += over_perms(n, |p| {
        if p.lrmax_spec().is_valid() {
            Ok(())
        } else {
            Err("spec read off a permutation is invalid".into())
        }
    })?;
    Ok(cases)
}

fn valid_specs_catalan(n: usize, _: &Checkers) -> Outcome {
    let specs = enumerate::count_valid_specs_with_limit(n, enumerate::HARD_MAX_N)
        .map_err(|e| Failure::new(n, "-", e.to_string()))?;
    let catalan = enumerate::catalan(n).map_err(|e| Failure::new(n, "-", e.to_string()))?;
    if specs == catalan {
        Ok(1)
    } else {
        Err(Failure::new(n, "-", format!("{specs} valid specs, C_{n} = {catalan}")))
    }
}

fn characterization(n: usize, which: Classical, maximal: bool) -> Outcome {
    over_perms(n, |p| {
        let avoids = pattern::avoids(p, which.pattern());
        let spec = p.lrmax_spec();
        let fill = if maximal {
            perm::maximal_permutation(&spec)
        } else {
            perm::minimal_permutation(&spec)
        }
        .map_err(|e| e.to_string())?;
        let kind = if maximal { "maximal" } else { "minimal" };
        agree(&format!("equals-{kind}-fill"), fill == *p, avoids)
    })
}

fn characterization_minimal(n: usize, _: &Checkers) -> Outcome {
    characterization(n, Classical::P321, false)
}

fn characterization_maximal(n: usize, _: &Checkers) -> Outcome {
    characterization(n, Classical::P312, true)
}

fn classical_321_agrees(n: usize, c: &Checkers) -> Outcome {
    over_perms(n, |p| {
        agree(
            "321 scan",
            (c.avoids_321)(p),
            pattern::avoids(p, Classical::P321.pattern()),
        )
    })
}

fn classical_312_agrees(n: usize, c: &Checkers) -> Outcome {
    over_perms(n, |p| {
        agree(
            "312 scan",
            (c.avoids_312)(p),
            pattern::avoids(p, Classical::P312.pattern()),
        )
    })
}

fn satisfying_agrees(n: usize, c: &Checkers) -> Outcome {
    over_perms(n, |p| {
        agree("fast checker", (c.satisfying_fast)(p), pattern::is_satisfying_naive(p))
    })
}

fn avoiding_agrees(n: usize, c: &Checkers) -> Outcome {
    over_perms(n, |p| {
        agree(
            "fast checker",
            (c.avoids_3142v_fast)(p),
            pattern::avoids(p, &P3142_VINCULAR),
        )
    })
}

fn glue_monotone(n: usize, _: &Checkers) -> Outcome {
    let classical = pattern::parse_pattern("3-1-4-2").expect("literal pattern");
    over_perms(n, |p| {
        let loose: HashSet<_> = pattern::occurrences(p, &classical, None).into_iter().collect();
        match pattern::occurrences(p, &P3142_VINCULAR, None)
            .into_iter()
            .find(|o| !loose.contains(o))
        {
            Some(o) => Err(format!("31-4-2 occurrence {o} is not a 3-1-4-2 occurrence")),
            None => Ok(()),
        }
    })
}

/// Shared shape of the two bijection checks: `forward` must send `domain`
/// onto `codomain`, preserve specs, and be undone by `backward`.
fn check_bijection(
    n: usize,
    domain: impl Fn(&Permutation) -> bool,
    codomain: impl Fn(&Permutation) -> bool,
    forward: impl Fn(&Permutation) -> crate::Result<Permutation>,
    backward: impl Fn(&Permutation) -> crate::Result<Permutation>,
) -> Result<(u64, u64), Failure> {
    let mut image = HashSet::new();
    let mut domain_size = 0u64;
    let mut targets = Vec::new();
    for p in all_perms(n) {
        if codomain(&p) {
            targets.push(p.clone());
        }
        if !domain(&p) {
            continue;
        }
        domain_size += 1;
        let q = forward(&p).map_err(|e| Failure::new(n, &p, format!("rejected: {e}")))?;
        if !codomain(&q) {
            return Err(Failure::new(n, &p, format!("image {q} is outside the codomain")));
        }
        if q.lrmax_spec() != p.lrmax_spec() {
            return Err(Failure::new(n, &p, format!("image {q} has a different spec")));
        }
        let back = backward(&q).map_err(|e| Failure::new(n, &q, format!("inverse rejected: {e}")))?;
        if back != p {
            return Err(Failure::new(n, &p, format!("inverse of image {q} is {back}")));
        }
        if !image.insert(q.clone()) {
            return Err(Failure::new(n, &p, format!("image {q} is hit twice")));
        }
    }
    if let Some(missed) = targets.iter().find(|t| !image.contains(*t)) {
        return Err(Failure::new(n, missed, "not in the image"));
    }
    Ok((domain_size, targets.len() as u64))
}

fn simion_schmidt_bijection(n: usize, _: &Checkers) -> Outcome {
    let (from, onto) = check_bijection(
        n,
        |p| pattern::avoids(p, Classical::P321.pattern()),
        |p| pattern::avoids(p, Classical::P312.pattern()),
        perm::simion_schmidt,
        perm::simion_schmidt_inverse,
    )?;
    let catalan = enumerate::catalan(n).map_err(|e| Failure::new(n, "-", e.to_string()))?;
    if from != catalan || onto != catalan {
        return Err(Failure::new(
            n,
            "-",
            format!("{from} 321-avoiders and {onto} 312-avoiders, C_{n} = {catalan}"),
        ));
    }
    Ok(from)
}

fn phi_well_defined(n: usize, _: &Checkers) -> Outcome {
    let mut cases = 0;
    for p in all_perms(n).filter(pattern::is_satisfying_naive) {
        let q = phi(&p).map_err(|e| Failure::new(n, &p, e.to_string()))?;
        if !pattern::avoids(&q, &P3142_VINCULAR) {
            return Err(Failure::new(n, &p, format!("image {q} contains 31-4-2")));
        }
        if q.lrmax_spec() != p.lrmax_spec() {
            return Err(Failure::new(n, &p, format!("image {q} has a different spec")));
        }
        let gaps = |x: &Permutation| x.decompose().blocks.iter().map(|b| b.gap.len()).collect::<Vec<_>>();
        if gaps(&q) != gaps(&p) {
            return Err(Failure::new(n, &p, format!("image {q} has different gap sizes")));
        }
        cases += 1;
    }
    Ok(cases)
}

fn phi_bijective(n: usize, _: &Checkers) -> Outcome {
    check_bijection(
        n,
        pattern::is_satisfying_naive,
        |p| pattern::avoids(p, &P3142_VINCULAR),
        phi,
        phi_inverse,
    )
    .map(|(from, _)| from)
}

fn phi_round_trip(n: usize, _: &Checkers) -> Outcome {
    over_perms(n, |p| {
        if pattern::is_satisfying_naive(p) {
            let q = phi(p).map_err(|e| e.to_string())?;
            let back = phi_inverse(&q).map_err(|e| e.to_string())?;
            if back != *p {
                return Err(format!("phi gives {q}, inverse gives {back}"));
            }
        }
        if pattern::avoids(p, &P3142_VINCULAR) {
            let q = phi_inverse(p).map_err(|e| e.to_string())?;
            let back = phi(&q).map_err(|e| e.to_string())?;
            if back != *p {
                return Err(format!("inverse gives {q}, phi gives {back}"));
            }
        }
        Ok(())
    })
}

fn class_counts(n: usize, c: &Checkers) -> (u64, u64) {
    all_perms(n).fold((0, 0), |(s, a), p| {
        (
            s + u64::from((c.satisfying_fast)(&p)),
            a + u64::from((c.avoids_3142v_fast)(&p)),
        )
    })
}

fn classes_equinumerous(n: usize, c: &Checkers) -> Outcome {
    let (s, a) = class_counts(n, c);
    if s == a {
        Ok(1)
    } else {
        Err(Failure::new(n, "-", format!("{s} satisfying, {a} avoiding")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub n_max: usize,
    pub checks: Vec<CheckResult>,
    /// Satisfying-class counts for `n = 0..=n_max` (fast checker).
    pub satisfying: Vec<u64>,
    pub avoiding: Vec<u64>,
    /// Permutations fixed by phi, per `n`. Observed only.
    pub phi_fixed_points: Vec<u64>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        // n = 0 is trivially 1 in both classes; sequences start at n = 1
        let from_one = |xs: &[u64]| join(xs.get(1..).unwrap_or_default());
        let range = format!("(n=1..{})", self.n_max);
        if self.satisfying == self.avoiding {
            writeln!(f, "satisfying=avoiding: {} {range}", from_one(&self.satisfying))?;
        } else {
            writeln!(f, "satisfying: {} {range}", from_one(&self.satisfying))?;
            writeln!(f, "avoiding: {} {range}", from_one(&self.avoiding))?;
        }
        writeln!(
            f,
            "phi fixed points (observed): {} {range}",
            from_one(&self.phi_fixed_points)
        )?;
        let failed = self.failures().count();
        if failed == 0 {
            write!(f, "all {} checks passed", self.checks.len())
        } else {
            write!(f, "{failed} of {} checks failed", self.checks.len())
        }
    }
}

/// Runs every check in [`CHECKS`] for `n ≤ n_max` with the default checkers.
pub fn verify_suite(n_max: usize) -> VerifyReport {
    verify_suite_with(n_max, &Checkers::default())
}

pub fn verify_suite_with(n_max: usize, checkers: &Checkers) -> VerifyReport {
    let checks = CHECKS.iter().map(|c| c.run(n_max, checkers)).collect();
    let mut report = VerifyReport {
        n_max,
        checks,
        satisfying: Vec::new(),
        avoiding: Vec::new(),
        phi_fixed_points: Vec::new(),
    };
    for n in 0..=n_max {
        let (s, a) = class_counts(n, checkers);
        report.satisfying.push(s);
        report.avoiding.push(a);
        let fixed = all_perms(n)
            .filter(pattern::is_satisfying_naive)
            .filter(|p| phi(p).as_ref() == Ok(p))
            .count();
        report.phi_fixed_points.push(fixed as u64);
    }
    report
}
