use fuzzyrel::consistency::apply_F;
use fuzzyrel::oracle::oracle_delta_grid;
use fuzzyrel::*;
use proptest::prelude::*;

fn grid() -> impl Strategy<Value = f64> {
    (0u32..=20).prop_map(|k| k as f64 / 20.0)
}

fn vector(n: usize) -> impl Strategy<Value = UnitVector> {
    prop::collection::vec(grid(), n).prop_map(|xs| UnitVector::new(xs).unwrap())
}

fn matrix(n: usize, m: usize) -> impl Strategy<Value = UnitMatrix> {
    prop::collection::vec(grid(), n * m).prop_map(move |xs| UnitMatrix::new(n, m, xs).unwrap())
}

/// Matrix `n × m` with a right-hand side of length `n` and two vectors of length `m`.
fn system() -> impl Strategy<Value = (UnitMatrix, UnitVector, UnitVector, UnitVector)> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(n, m)| (matrix(n, m), vector(n), vector(m), vector(m)))
}

fn tol() -> Tolerance {
    Tolerance::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn compositions_return_input_values((a, _, x, _) in system()) {
        for out in [maxmin_prod(&a, &x).unwrap(), minmax_prod(&a, &x).unwrap()] {
            for y in out.iter() {
                prop_assert!(a.as_slice().contains(y) || x.iter().any(|z| z == y));
            }
        }
    }

    #[test]
    fn compositions_are_monotone((a, _, x, y) in system()) {
        let hi = UnitVector::new(x.iter().zip(y.iter()).map(|(p, q)| p.max(*q)).collect()).unwrap();
        prop_assert!(leq(&maxmin_prod(&a, &x).unwrap(), &maxmin_prod(&a, &hi).unwrap(), tol()).unwrap());
        prop_assert!(leq(&minmax_prod(&a, &x).unwrap(), &minmax_prod(&a, &hi).unwrap(), tol()).unwrap());
    }

    #[test]
    fn de_morgan_switches_compositions((a, _, x, _) in system()) {
        let direct = minmax_prod(&a, &x).unwrap();
        let switched = maxmin_prod(&a.complement(), &x.complement()).unwrap().complement();
        prop_assert!(tol().eq_vec(&direct, &switched));
    }

    #[test]
    fn residual_products_are_adjoint((a, b, x, _) in system()) {
        // A □ x ≤ b iff x ≤ Aᵗ →G b.
        let e = godel_min_prod(&a.transpose(), &b, tol()).unwrap();
        let lhs = leq(&maxmin_prod(&a, &x).unwrap(), &b, tol()).unwrap();
        prop_assert_eq!(lhs, leq(&x, &e, tol()).unwrap());
        // b ≤ G □ x iff Gᵗ ε b ≤ x for the min-max composition.
        let r = eps_max_prod(&a.transpose(), &b, tol()).unwrap();
        let lhs = leq(&b, &minmax_prod(&a, &x).unwrap(), tol()).unwrap();
        prop_assert_eq!(lhs, leq(&r, &x, tol()).unwrap());
    }

    #[test]
    fn consistency_matches_greatest_candidate((a, b, _, _) in system()) {
        let p = SystemProblem::maxmin(a.clone(), b.clone()).unwrap();
        let e = greatest_candidate(&p, tol()).unwrap();
        let reproduces = tol().eq_vec(&maxmin_prod(&a, &e).unwrap(), &b);
        prop_assert_eq!(is_consistent(&p, tol()).unwrap(), reproduces);
        prop_assert_eq!(tol().eq_vec(&apply_F(&a, &b, tol()).unwrap(), &b), reproduces);
    }

    #[test]
    fn solution_sets_are_exact((a, b, _, _) in system()) {
        let p = SystemProblem::maxmin(a.clone(), b.clone()).unwrap();
        let set = solve(&p, tol(), DEFAULT_ENUMERATION_CAP).unwrap();
        for (lo, hi) in set.intervals() {
            prop_assert!(tol().eq_vec(&maxmin_prod(&a, &lo).unwrap(), &b));
            prop_assert!(tol().eq_vec(&maxmin_prod(&a, &hi).unwrap(), &b));
        }
        prop_assert_eq!(set.consistent, !set.extremal_opposite.is_empty());
    }

    #[test]
    fn delta_bounds_the_distance_to_every_image((a, b, x, _) in system()) {
        let report = chebyshev_report(&a, &b, tol(), DEFAULT_ENUMERATION_CAP).unwrap();
        let image = maxmin_prod(&a, &x).unwrap();
        prop_assert!(linf_dist(&b, &image).unwrap() >= report.delta - tol().eps);
        for c in report.minimal_chebs().iter().chain([&report.greatest_cheb]) {
            prop_assert!(tol().eq(linf_dist(&b, c).unwrap(), report.delta));
        }
        for s in report.minimal_approx_solutions() {
            prop_assert!(leq(s, &report.eta, tol()).unwrap());
            prop_assert!(is_approx_solution(&a, &report, s, tol()).unwrap());
        }
    }

    #[test]
    fn delta_matches_grid_search((a, b, _, _) in system()) {
        let delta = chebyshev_delta(&a, &b).unwrap().delta;
        let g = oracle_delta_grid(&a, &b, tol(), 200).unwrap();
        prop_assert!(g >= delta - 1e-9 && g <= delta + 1.0 / 200.0 + 1e-9);
    }

    #[test]
    fn minimal_solutions_satisfy_and_are_minimal((a, t, bound, _) in system()) {
        let p = IneqProblem::lower(a.clone(), t.clone(), bound.clone()).unwrap();
        let sols = minimal_solutions(&p, tol(), DEFAULT_ENUMERATION_CAP).unwrap();
        for s in &sols {
            prop_assert!(leq(&t, &maxmin_prod(&a, s).unwrap(), tol()).unwrap());
            prop_assert!(leq(s, &bound, tol()).unwrap());
            for j in 0..s.len() {
                if s[j] > 0.0 {
                    let mut lower = s.as_slice().to_vec();
                    lower[j] = 0.0;
                    let lower = UnitVector::new(lower).unwrap();
                    prop_assert!(!leq(&t, &maxmin_prod(&a, &lower).unwrap(), tol()).unwrap());
                }
            }
        }
        for w in sols.windows(2) {
            prop_assert_eq!(w[0].lex_cmp(&w[1]), std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn maximal_solutions_mirror_minimal((a, t, bound, _) in system()) {
        let up = IneqProblem::upper(a.complement(), t.complement(), bound.complement()).unwrap();
        let down = IneqProblem::lower(a, t, bound).unwrap();
        let mut mirrored: Vec<UnitVector> = minimal_solutions(&down, tol(), DEFAULT_ENUMERATION_CAP)
            .unwrap()
            .iter()
            .map(UnitVector::complement)
            .collect();
        mirrored.sort_by(UnitVector::lex_cmp);
        let maximal = maximal_solutions(&up, tol(), DEFAULT_ENUMERATION_CAP).unwrap();
        prop_assert_eq!(maximal.len(), mirrored.len());
        for (x, y) in maximal.iter().zip(&mirrored) {
            prop_assert!(tol().eq_vec(x, y));
        }
    }
}
