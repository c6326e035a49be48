use std::sync::OnceLock;

use itertools::Itertools;
use proptest::prelude::*;
use tricolour::certificate::{coefficient_table, Certificate, CoefficientTable};
use tricolour::colouredgraph::{
    density, enumerate_models, family_density, mono_triangle_family, mono_triangles, ColouredGraph,
};
use tricolour::exactmath::{
    binomial, ldl_factor, psd_check, rational_reconstruct, round_to_grid, PsdVerdict, Rational,
    SymMatrix,
};
use tricolour::flags::{avg_coefficient, enumerate_flags, ten_types};

fn graph(n: usize) -> impl Strategy<Value = ColouredGraph> {
    prop::collection::vec(1u8..=3, n * (n - 1) / 2)
        .prop_map(move |upper| ColouredGraph::from_upper_triangle(n, 3, &upper).unwrap())
}

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, cols), rows)
}

fn gram(b: &[Vec<i64>]) -> SymMatrix {
    let cols = b[0].len();
    let rows = (0..cols)
        .map(|i| {
            (0..cols)
                .map(|j| Rational::from(b.iter().map(|r| r[i] * r[j]).sum::<i64>()))
                .collect()
        })
        .collect();
    SymMatrix::from_rows(rows).unwrap()
}

fn shipped_table() -> &'static (Certificate, CoefficientTable) {
    static T: OnceLock<(Certificate, CoefficientTable)> = OnceLock::new();
    T.get_or_init(|| {
        let cert = Certificate::shipped();
        let table = coefficient_table(&cert);
        (cert, table)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gram_matrices_are_psd(b in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| int_matrix(r, c))) {
        let m = gram(&b);
        prop_assert!(psd_check(&m).is_psd());
        let ldl = ldl_factor(&m).unwrap();
        prop_assert_eq!(ldl.reconstruct(), m);
    }

    #[test]
    fn shifted_below_trace_is_not_psd(b in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| int_matrix(r, c))) {
        let m = gram(&b);
        // the trace bounds every eigenvalue of a PSD matrix from above
        let trace: Rational = (0..m.dim()).map(|i| m.get(i, i).clone()).sum();
        let shifted = m.add(&SymMatrix::identity(m.dim()).scale(&-(trace + Rational::one())));
        match psd_check(&shifted) {
            PsdVerdict::NotPsd { witness, value, .. } => {
                prop_assert!(value.is_negative());
                prop_assert_eq!(shifted.quadratic_form(&witness), value);
            }
            PsdVerdict::Psd { .. } => prop_assert!(false, "shifted matrix reported PSD"),
        }
    }

    #[test]
    fn symmetric_ldl_round_trip(b in int_matrix(4, 4), d in prop::collection::vec(0i64..=3, 4)) {
        // B^T diag(d) B has a factorization whenever d >= 0
        let m = SymMatrix::from_rows(
            (0..4)
                .map(|i| (0..4).map(|j| Rational::from((0..4).map(|r| b[r][i] * d[r] * b[r][j]).sum::<i64>())).collect())
                .collect(),
        )
        .unwrap();
        let ldl = ldl_factor(&m).unwrap();
        prop_assert!(ldl.d.iter().all(|x| !x.is_negative()));
        prop_assert_eq!(ldl.reconstruct(), m);
    }

    #[test]
    fn reconstruction_recovers_small_fractions(p in -1000i64..=1000, q in 1i64..=2000, extra in 0u64..=1000) {
        let x = Rational::new(p, q);
        prop_assert_eq!(rational_reconstruct(&x, q as u64 + extra), x.clone());
        // a perturbation far below 1/(2 q^2) still rounds back
        let nudged = &x + &Rational::new(1, 10_000_000_000i64);
        prop_assert_eq!(rational_reconstruct(&nudged, 2000), x.clone());
        prop_assert_eq!(round_to_grid(&nudged, q as u64), x);
    }

    #[test]
    fn scientific_text_is_accurate(p in any::<i64>(), q in 1i64..=i64::MAX) {
        let x = Rational::new(p, q);
        let back = Rational::from_decimal_str(&x.to_scientific(40)).unwrap();
        let err = (&back - &x).abs();
        prop_assert!(err <= x.abs() * Rational::new(1, 10i64.pow(18)) * Rational::new(1, 10i64.pow(18)));
    }

    #[test]
    fn density_is_relabelling_invariant(
        (g, pg) in (5usize..=7).prop_flat_map(|n| (graph(n), perm(n))),
        (h, ph) in graph(3).prop_flat_map(|h| (Just(h), perm(3))),
    ) {
        prop_assert_eq!(density(&h, &g).unwrap(), density(&h.permuted(&ph), &g.permuted(&pg)).unwrap());
    }

    #[test]
    fn model_densities_sum_to_one(g in graph(7)) {
        for l in 3..=5 {
            let total: Rational = enumerate_models(l, 3).unwrap().iter().map(|h| density(h, &g).unwrap()).sum();
            prop_assert_eq!(total, Rational::one(), "l={}", l);
        }
    }

    #[test]
    fn triangle_count_matches_family_density(n in 3usize..=9, seed in any::<u64>()) {
        let mut state = seed;
        let g = ColouredGraph::from_fn(n, 3, |_, _| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 62) as u8 % 3 + 1
        })
        .unwrap();
        let t = mono_triangles(&g);
        prop_assert_eq!(t.per_colour.iter().sum::<u64>(), t.total);
        prop_assert_eq!(
            Rational::new(t.total as i64, binomial(n as u64, 3)),
            family_density(&mono_triangle_family(3), &g).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn averaging_coefficient_symmetry(r in 0usize..10, k in 0usize..792, i in 0usize..27, j in 0usize..27, p in perm(5)) {
        let (_, table) = shipped_table();
        let sigma = &ten_types()[r];
        let flags = enumerate_flags(sigma, 4).unwrap();
        let model = &table.models()[k].1;
        let forward = avg_coefficient(sigma, &flags[i], &flags[j], model).unwrap();
        prop_assert_eq!(&forward, &avg_coefficient(sigma, &flags[j], &flags[i], model).unwrap());
        prop_assert_eq!(&forward, &avg_coefficient(sigma, &flags[i], &flags[j], &model.permuted(&p)).unwrap());
    }

    #[test]
    fn averaging_coefficients_sum_to_embedding_fraction(r in 0usize..10, k in 0usize..792) {
        let (_, table) = shipped_table();
        let sigma = &ten_types()[r];
        let flags = enumerate_flags(sigma, 4).unwrap();
        let model = &table.models()[k].1;
        let total: Rational = flags
            .iter()
            .cartesian_product(&flags)
            .map(|(f1, f2)| avg_coefficient(sigma, f1, f2, model).unwrap())
            .sum();
        let embeds = (0..5).permutations(3).filter(|t| sigma.embeds(model, t)).count() as i64;
        prop_assert_eq!(total, Rational::new(embeds, 60));
    }

    #[test]
    fn table_matches_direct_coefficients(r in 0usize..10, k in 0usize..792, i in 0usize..27, j in 0usize..27) {
        let (cert, table) = shipped_table();
        let block = &cert.blocks[r];
        let model = &table.models()[k].1;
        let direct = avg_coefficient(&block.sigma, &block.flags[i], &block.flags[j], model).unwrap();
        prop_assert_eq!(table.entry(r, k, i, j), direct);
    }
}
