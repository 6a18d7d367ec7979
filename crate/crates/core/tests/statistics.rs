use lfc_core::stats::{
    friedman, friedman_posthoc, kendalls_w, levene, untied_chi_square, wilcoxon_signed_rank, wilcoxon_z, LeveneCenter,
    ResultMatrix,
};
use proptest::prelude::*;

fn labels(k: usize) -> Vec<String> {
    (0..k).map(|j| format!("t{j}")).collect()
}

// Reference values below were produced with scipy.stats 1.15.

#[test]
fn friedman_matches_reference_with_ties() {
    let rows = vec![
        vec![0.0, 0.8, 0.7, -0.7],
        vec![-0.5, -0.5, 1.1, 1.5],
        vec![-0.5, -0.1, 1.5, 0.6],
        vec![0.1, -0.4, 1.0, 0.9],
        vec![-1.3, 0.0, -0.9, -1.1],
        vec![-1.8, 0.3, -0.3, 0.5],
        vec![0.2, 0.3, -1.5, -0.3],
        vec![0.0, 0.6, -0.5, -0.3],
        vec![-1.0, -0.3, 2.1, -0.6],
        vec![0.0, 1.4, 0.4, 0.1],
        vec![0.1, 0.6, -0.2, 0.3],
        vec![1.4, -1.0, 1.9, 0.3],
    ];
    let r = friedman(&ResultMatrix::new(labels(4), rows).unwrap()).unwrap();
    assert!((r.chi_square - 5.621848739495816).abs() < 1e-10);
    assert!((r.p_value - 0.13152965766794994).abs() < 1e-10);
    let want = [1.7916666666666667, 2.9583333333333335, 2.75, 2.5];
    for (g, w) in r.mean_ranks.iter().zip(want) {
        assert!((g - w).abs() < 1e-12);
    }
    assert!(r.tie_correction < 1.0);
}

#[test]
fn wilcoxon_matches_reference() {
    let a = [
        -0.6415, 2.0004, 0.7623, -1.1993, 0.0745, 0.5767, -0.1888, 0.6829, -0.0665, 0.6672, 1.4385, -0.6757, 0.2031,
        -0.4633, 0.1273, -1.1872, -0.5793, -0.1962, 0.8988, 1.1452,
    ];
    let b = [
        -1.665, 1.5058, 1.7092, -2.8917, -0.0887, 0.7794, 1.3682, 1.6723, -0.0937, 0.5986, 1.4883, 1.1478, 0.0751,
        -0.467, 0.7799, -1.008, -0.4766, -1.0103, 1.1873, 1.0016,
    ];
    let r = wilcoxon_signed_rank(&a, &b).unwrap();
    assert_eq!((r.sum_positive, r.sum_negative), (90.0, 120.0));
    assert!((r.z - -0.559990044709918).abs() < 1e-10);
    assert!((r.p_two_tailed - 0.5754862281364963).abs() < 1e-10);
}

#[test]
fn levene_matches_reference() {
    let g0 = vec![
        1.166, 0.653, -0.024, 0.668, -0.34, 1.052, -0.005, 0.583, -1.291, 0.347, -1.688, -2.035, -0.304, -0.9, 0.164,
        2.245, -0.832, -0.624, 0.205, 0.493, -0.176, -0.206, 0.702, 0.52, -1.034,
    ];
    let g1 = vec![
        -0.158, 0.071, -2.109, 0.52, -1.716, 1.944, 0.385, 0.179, -1.182, -0.237, -3.995, -2.263, 0.726, -4.257, 1.693,
        -3.492, 1.513, -1.691, 1.558, 0.262, -3.074, 2.498, 2.883, -0.132, -0.548, -0.32, -1.95, 2.197, -1.086, -0.102,
    ];
    let g2 = vec![
        -1.19, -0.939, -1.917, 1.886, -0.231, 1.449, 0.02, -1.042, -0.49, -0.84, 0.012, -0.563, -0.45, -2.068, -1.21,
        2.481, -1.007, -1.581, 0.506, 2.111, -2.181, -0.313,
    ];
    let groups = [g0, g1, g2];
    for (center, f, p) in [
        (LeveneCenter::Mean, 5.301900586572929, 0.007049336145420747),
        (LeveneCenter::Median, 4.4446099239635215, 0.015036463451308896),
        // Deviations of every value from the 5% trimmed mean (scipy.stats.trim_mean + f_oneway).
        (LeveneCenter::TrimmedMean, 5.184019994719165, 0.007816082162815152),
    ] {
        let r = levene(&groups, center).unwrap();
        assert!((r.statistic - f).abs() < 1e-10, "{center}: {}", r.statistic);
        assert!((r.p_value - p).abs() < 1e-10, "{center}: {}", r.p_value);
        assert_eq!((r.df1, r.df2), (2, 74));
    }
}

#[test]
fn published_rank_sums_give_published_z() {
    for (neg, pos, m, z) in [(6676.5, 3763.5, 144, -2.905), (6441.5, 3149.5, 138, -3.498), (7616.0, 3115.0, 146, -4.397)] {
        let mf = m as f64;
        assert_eq!(neg + pos, mf * (mf + 1.0) / 2.0);
        assert!((wilcoxon_z(pos, m) - z).abs() < 5e-4, "{}", wilcoxon_z(pos, m));
    }
}

#[test]
fn published_mean_ranks() {
    // ChOA, EGBO, GBO, GWO, PSO, SCA.
    let ranks = [4.92, 1.94, 2.01, 3.73, 2.42, 5.98];
    let chi = untied_chi_square(&ranks, 150);
    assert!((chi - 605.0794).abs() / 605.0794 < 0.01, "{chi}");
    assert!((kendalls_w(605.0794, 150, 6) - 0.8068).abs() < 5e-5);

    let report = lfc_core::stats::FriedmanReport {
        labels: ["choa", "egbo", "gbo", "gwo", "pso", "sca"].map(String::from).to_vec(),
        mean_ranks: ranks.to_vec(),
        blocks: 150,
        chi_square: 605.0794,
        df: 5,
        p_value: 0.0,
        kendalls_w: 0.8068,
        tie_correction: 1.0,
        alpha: 0.05,
    };
    let post = friedman_posthoc(&report);
    assert!((post.std_error - 0.21602).abs() < 5e-6);
    assert_eq!(post.family_size, 15);
    let eg = post.get("egbo", "gbo").unwrap();
    assert!((eg.statistic - -0.07).abs() < 1e-12);
    assert!((eg.std_statistic - -0.324).abs() < 1e-3);
    assert_eq!(eg.p_adjusted, 1.0);
}

#[test]
fn single_dominant_treatment_gets_rank_one() {
    let rows: Vec<Vec<f64>> = (0..10).map(|b| vec![5.0 + b as f64, b as f64 - 10.0, 7.0]).collect();
    let r = friedman(&ResultMatrix::new(labels(3), rows).unwrap()).unwrap();
    assert_eq!(r.mean_ranks[1], 1.0);
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (2usize..6, 2usize..15).prop_flat_map(|(k, n)| {
        proptest::collection::vec(proptest::collection::vec((0i32..8).prop_map(|v| v as f64 * 0.5), k), n)
    })
}

proptest! {
    #[test]
    fn mean_ranks_sum_to_constant(rows in matrix_strategy()) {
        let k = rows[0].len() as f64;
        let m = ResultMatrix::new(labels(rows[0].len()), rows).unwrap();
        if let Ok(r) = friedman(&m) {
            let sum: f64 = r.mean_ranks.iter().sum();
            prop_assert!((sum - k * (k + 1.0) / 2.0).abs() < 1e-9);
            prop_assert!(r.kendalls_w >= -1e-12 && r.kendalls_w <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn column_permutation_permutes_ranks(rows in matrix_strategy(), rot in 0usize..5) {
        let k = rows[0].len();
        let rot = rot % k;
        let permuted: Vec<Vec<f64>> = rows.iter().map(|r| {
            let mut r = r.clone();
            r.rotate_left(rot);
            r
        }).collect();
        let a = friedman(&ResultMatrix::new(labels(k), rows).unwrap());
        let b = friedman(&ResultMatrix::new(labels(k), permuted).unwrap());
        if let (Ok(a), Ok(b)) = (a, b) {
            let mut expect = a.mean_ranks.clone();
            expect.rotate_left(rot);
            prop_assert_eq!(expect, b.mean_ranks);
            prop_assert!((a.chi_square - b.chi_square).abs() < 1e-9);
        }
    }

    #[test]
    fn block_shift_invariance(rows in matrix_strategy(), shift in -50i32..50, block in 0usize..15) {
        let k = rows[0].len();
        let block = block % rows.len();
        let mut shifted = rows.clone();
        shifted[block].iter_mut().for_each(|v| *v += shift as f64);
        let a = friedman(&ResultMatrix::new(labels(k), rows.clone()).unwrap());
        let b = friedman(&ResultMatrix::new(labels(k), shifted.clone()).unwrap());
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(a.mean_ranks, b.mean_ranks);
            prop_assert!((a.chi_square - b.chi_square).abs() < 1e-9);
        }
        // Shifting a block moves both members of the pair, so the differences stay put.
        let col = |m: &Vec<Vec<f64>>, j: usize| m.iter().map(|r| r[j]).collect::<Vec<_>>();
        let (wa, wb) = (
            wilcoxon_signed_rank(&col(&rows, 0), &col(&rows, 1)),
            wilcoxon_signed_rank(&col(&shifted, 0), &col(&shifted, 1)),
        );
        if let (Ok(wa), Ok(wb)) = (wa, wb) {
            prop_assert_eq!(wa.sum_positive, wb.sum_positive);
            prop_assert_eq!(wa.n_ties, wb.n_ties);
        }
    }

    #[test]
    fn wilcoxon_rank_sum_identity(pairs in proptest::collection::vec(((0i32..20), (0i32..20)), 5..60)) {
        let a: Vec<f64> = pairs.iter().map(|p| p.0 as f64).collect();
        let b: Vec<f64> = pairs.iter().map(|p| p.1 as f64).collect();
        if let Ok(r) = wilcoxon_signed_rank(&a, &b) {
            let m = (r.n_negative + r.n_positive) as f64;
            prop_assert_eq!(r.n_negative + r.n_positive + r.n_ties, a.len());
            prop_assert!((r.sum_negative + r.sum_positive - m * (m + 1.0) / 2.0).abs() < 1e-9);
        }
    }
}
