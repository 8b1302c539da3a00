use dbscanpp::eval::{
    adjusted_mutual_info, adjusted_mutual_info_with, adjusted_rand_index, hausdorff_distance, AmiNormalization,
    NoiseHandling,
};
use dbscanpp::{ClusterLabels, Dataset};
use proptest::prelude::*;

fn labels(v: &[i64]) -> ClusterLabels {
    ClusterLabels::new(v.to_vec()).unwrap()
}

// Reference values from scikit-learn 1.7 (noise id -1 treated as an ordinary label).
#[rustfmt::skip]
const REFERENCE: &[(&[i64], &[i64], f64, f64, f64)] = &[
    (&[0, 0, 1, 1], &[0, 0, 1, 2], 0.5714285714285714, 0.4000000000000001, 0.5714285714285715),
    (&[0, 0, 0, 1, 1, 1], &[0, 0, 1, 1, 2, 2], 0.24242424242424243, 0.22504228319830885, 0.2987924581708901),
    (&[0, 1, 2, 3], &[0, 0, 0, 0], 0.0, 0.0, 0.0),
    (&[-1, -1, 0, 0, 1, 1, 1], &[0, 1, 0, 0, 1, 1, 2], 0.14035087719298245, 0.18055411833141827, 0.1912924413004043),
    (&[2, 2, 3, 1, 2, 3, 0, -1, 0, 0, 3, 3, -1, 1, 3, -1, 2, -1, 1, 3, 0, 0, 0, 2, 0, 3, 1, 1, 1, 1, 1, 1, 3, 3, 2, 2, 2, 0], &[2, 1, 0, 2, 0, 2, 1, 0, 0, 1, 0, 0, 1, 2, 1, 2, 2, 2, 1, 1, 1, 0, 1, 1, 0, 2, 0, 0, 0, 2, 2, 2, 0, 2, 1, 1, 0, 1], 0.01978277734678045, 0.022740817346964964, 0.027217873333097643),
    (&[2, -1, 1, 0, 3, 3, -1, 1, 3, 3, 2, 2, -1, 2, 1, -1, 0, 1, 2, 1, 2, 3, 2, 0, 2, 1, -1, -1, 2, 0, 1, 0, 0, -1], &[1, 2, 1, 1, 1, 2, 1, 1, 1, 1, 1, 1, 1, 2, 2, 0, 1, 1, 1, 0, 0, 1, 2, 0, 1, 2, 2, 0, 0, 2, 0, 0, 1, 2], -0.0411234402056172, -0.044656605285887295, -0.05517717072521225),
    (&[2, 1, -1, 3, 3, 1, 3, 2, 3, 3], &[1, 0, 0, 1, 0, 2, 2, 0, 1, 0], -0.18705035971223022, -0.20448839679256325, -0.23119117069157277),
    (&[0, 3, 3, 2, 1, 1, -1, 0, 3, 1, 0, 0, 2], &[0, 2, 2, 1, 1, 2, 1, 1, 0, 1, 2, 0, 0], -0.04819277108433735, -0.042086820845434865, -0.05230131255219355),
];

#[test]
fn agrees_with_reference_implementation() {
    for (i, &(a, b, ari, ami_max, ami_mean)) in REFERENCE.iter().enumerate() {
        let (a, b) = (labels(a), labels(b));
        assert!((adjusted_rand_index(&a, &b).unwrap() - ari).abs() < 1e-12, "case {i} ari");
        assert!((adjusted_mutual_info(&a, &b).unwrap() - ami_max).abs() < 1e-10, "case {i} ami max");
        let mean = adjusted_mutual_info_with(&a, &b, NoiseHandling::AsCluster, AmiNormalization::Arithmetic).unwrap();
        assert!((mean - ami_mean).abs() < 1e-10, "case {i} ami arithmetic");
    }
}

#[test]
fn ari_small_case_is_four_sevenths() {
    assert_eq!(adjusted_rand_index(&labels(&[0, 0, 1, 1]), &labels(&[0, 0, 1, 2])).unwrap(), 4.0 / 7.0);
}

/// Pair-counting ARI over all n(n-1)/2 pairs.
fn ari_by_pairs(a: &[i64], b: &[i64]) -> f64 {
    let n = a.len();
    let (mut both, mut only_a, mut only_b, mut total) = (0f64, 0f64, 0f64, 0f64);
    for i in 0..n {
        for j in i + 1..n {
            let sa = a[i] == a[j];
            let sb = b[i] == b[j];
            both += (sa && sb) as u8 as f64;
            only_a += sa as u8 as f64;
            only_b += sb as u8 as f64;
            total += 1.0;
        }
    }
    let expected = only_a * only_b / total;
    let max = 0.5 * (only_a + only_b);
    if max == expected {
        return 1.0;
    }
    (both - expected) / (max - expected)
}

fn labeling(n: usize, k: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-1..k, n)
}

proptest! {
    #[test]
    fn ari_matches_pair_counting((a, b) in (2usize..40).prop_flat_map(|n| (labeling(n, 4), labeling(n, 5)))) {
        let got = adjusted_rand_index(&labels(&a), &labels(&b)).unwrap();
        prop_assert!((got - ari_by_pairs(&a, &b)).abs() < 1e-9);
    }

    #[test]
    fn scores_are_invariant_to_relabelling((a, shift) in (2usize..40).prop_flat_map(|n| (labeling(n, 4), 1i64..50))) {
        let b: Vec<i64> = a.iter().map(|&x| if x < 0 { x } else { (3 - x) * 7 + shift }).collect();
        let (la, lb) = (labels(&a), labels(&b));
        prop_assert!((adjusted_rand_index(&la, &lb).unwrap() - 1.0).abs() < 1e-12);
        prop_assert!((adjusted_mutual_info(&la, &lb).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn scores_are_symmetric((a, b) in (2usize..30).prop_flat_map(|n| (labeling(n, 3), labeling(n, 4)))) {
        let (la, lb) = (labels(&a), labels(&b));
        prop_assert!((adjusted_rand_index(&la, &lb).unwrap() - adjusted_rand_index(&lb, &la).unwrap()).abs() < 1e-12);
        prop_assert!((adjusted_mutual_info(&la, &lb).unwrap() - adjusted_mutual_info(&lb, &la).unwrap()).abs() < 1e-9);
    }
}

fn brute_hausdorff(a: &Dataset, b: &Dataset) -> f64 {
    let directed = |x: &Dataset, y: &Dataset| {
        (0..x.len())
            .map(|i| {
                (0..y.len())
                    .map(|j| dbscanpp::dataset::distance(x.point(i), y.point(j)))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

proptest! {
    #[test]
    fn hausdorff_matches_brute_force(
        dim in 1usize..4,
        a in prop::collection::vec(-5.0f64..5.0, 3..90),
        b in prop::collection::vec(-5.0f64..5.0, 3..90),
    ) {
        let trim = |v: Vec<f64>| {
            let len = v.len() / dim * dim;
            Dataset::from_flat(v[..len].to_vec(), dim).unwrap()
        };
        let (a, b) = (trim(a), trim(b));
        let got = hausdorff_distance(&a, &b).unwrap();
        prop_assert_eq!(got, brute_hausdorff(&a, &b));
        prop_assert_eq!(got, hausdorff_distance(&b, &a).unwrap());
    }
}
