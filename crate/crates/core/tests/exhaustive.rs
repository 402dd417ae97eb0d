use std::collections::HashSet;

use wilfcheck::enumerate::{
    count_classes_with, count_partition, for_each_valid_spec, partitions, permutations, CountOptions,
};
use wilfcheck::pattern::{self, P3142_VINCULAR};
use wilfcheck::perm::{maximal_permutation, minimal_permutation, sort_gaps, SortDirection};
use wilfcheck::verify::{check, Checkers};

#[test]
fn decompose_and_sort_gaps_up_to_8() {
    for n in 0..=8 {
        for p in permutations(n).unwrap() {
            assert_eq!(p.decompose().flatten(), p.values());
            let spec = p.lrmax_spec();
            assert_eq!(sort_gaps(&p, SortDirection::Ascending).lrmax_spec(), spec);
            assert_eq!(sort_gaps(&p, SortDirection::Descending).lrmax_spec(), spec);
        }
    }
}

#[test]
fn fills_reproduce_their_spec_up_to_9() {
    for n in 0..=9 {
        let mut seen = HashSet::new();
        for_each_valid_spec(n, |s| {
            assert!(seen.insert(s.clone()), "spec {s} enumerated twice");
            assert_eq!(&minimal_permutation(s).unwrap().lrmax_spec(), s);
            assert_eq!(&maximal_permutation(s).unwrap().lrmax_spec(), s);
        });
    }
}

/// Every spec read off S_n is among the enumerated valid specs, and every
/// enumerated spec is realised by some permutation.
#[test]
fn valid_specs_are_exactly_the_realised_ones() {
    for n in 0..=7 {
        let realised: HashSet<_> = permutations(n).unwrap().map(|p| p.lrmax_spec()).collect();
        let mut enumerated = HashSet::new();
        for_each_valid_spec(n, |s| {
            enumerated.insert(s.clone());
        });
        assert_eq!(realised, enumerated, "n={n}");
    }
}

#[test]
fn glued_occurrences_are_classical_occurrences_up_to_7() {
    let r = check("31-4-2 occurrences within 3-1-4-2")
        .unwrap()
        .run(7, &Checkers::default());
    assert!(r.passed(), "{r}");
    assert_eq!(r.n_max, 7);
}

#[test]
fn every_returned_occurrence_is_valid() {
    let patterns = ["31-4-2", "3-2-4-1", "2-31", "12-3", "3-1-2", "132"];
    for text in patterns {
        let pat = pattern::parse_pattern(text).unwrap();
        for p in permutations(6).unwrap() {
            let mut previous = None;
            for occ in pattern::occurrences(&p, &pat, None) {
                let idx = occ.indices();
                assert!(idx.windows(2).all(|w| w[0] < w[1]));
                for (i, &g) in pat.glued().iter().enumerate() {
                    assert!(!g || idx[i + 1] == idx[i] + 1, "{text} in {p}: {occ}");
                }
                let values: Vec<i64> = occ.values_in(&p).into_iter().map(i64::from).collect();
                assert_eq!(&wilfcheck::perm::reduce(&values).unwrap(), pat.letters());
                assert!(previous.as_ref() < Some(&occ), "not in lexicographic order");
                previous = Some(occ);
            }
        }
    }
}

#[test]
fn partitioned_counting_matches_single_stream() {
    for n in 0..=8 {
        let (mut sat, mut avoid) = (0, 0);
        for p in permutations(n).unwrap() {
            sat += u64::from(pattern::is_satisfying_fast(&p));
            avoid += u64::from(pattern::avoids_3142v_fast(&p));
        }
        // merged in reverse to show order independence
        let merged = partitions(n)
            .into_iter()
            .rev()
            .map(|f| count_partition(n, f, true))
            .fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        assert_eq!(merged, (sat, avoid), "n={n}");
        for jobs in [1, 3] {
            let r = count_classes_with(
                n,
                &CountOptions {
                    use_fast: true,
                    jobs,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!((r.satisfying_count, r.avoiding_count), (sat, avoid));
        }
    }
}

#[test]
fn fast_and_naive_counts_agree_up_to_8() {
    for n in 0..=8 {
        let opts = |use_fast| CountOptions {
            use_fast,
            jobs: 1,
            ..Default::default()
        };
        let fast = count_classes_with(n, &opts(true)).unwrap();
        let naive = count_classes_with(n, &opts(false)).unwrap();
        assert!(fast.same_counts(&naive), "n={n}: {fast:?} vs {naive:?}");
        let again = count_classes_with(n, &opts(true)).unwrap();
        assert!(fast.same_counts(&again));
    }
}

#[test]
fn membership_tests_agree_with_pattern_definitions_up_to_7() {
    for n in 0..=7 {
        for p in permutations(n).unwrap() {
            assert_eq!(pattern::is_satisfying_fast(&p), pattern::is_satisfying_naive(&p), "{p}");
            assert_eq!(
                pattern::avoids_3142v_fast(&p),
                pattern::avoids(&p, &P3142_VINCULAR),
                "{p}"
            );
        }
    }
}
