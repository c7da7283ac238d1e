mod common;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use z4sec::constructions::{bdcc, pdcc, BorderParams, CirculantSeed};
use z4sec::enumerators::{classify_swe, gray_we_from_swe, is_fsd_swe, swe, CodeType};
use z4sec::search::SearchSpace;
use z4sec::z4::{Z4Code, Z4Vector};
use z4sec::Budget;

use common::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn double_macwilliams_returns_the_input(p in swe_poly(8)) {
        prop_double_macwilliams(p)?;
    }

    #[test]
    fn macwilliams_of_swe_is_swe_of_dual(m in z4_matrix(3, 1, 6)) {
        prop_macwilliams_is_dual_swe(m)?;
    }

    #[test]
    fn jwe_identities_hold(pair in binary_pair(8)) {
        prop_jwe_identities(pair)?;
    }

    #[test]
    fn theta_series_counts_lattice_points(m in z4_matrix(3, 1, 4)) {
        prop_theta_matches_points(m)?;
    }

    #[test]
    fn jacobi_formula_residual_is_small(input in (z4_matrix(4, 1, 8), tau())) {
        prop_jacobi_formula(input)?;
    }

    #[test]
    fn secrecy_function_is_symmetric_in_log_tau(input in (seed(1, 4), tau())) {
        prop_secrecy_symmetry(input)?;
    }

    #[test]
    fn h_path_agrees_with_theta_path(input in (seed(1, 4), tau())) {
        prop_h_matches_theta(input)?;
    }

    #[test]
    fn odd_extension_without_a_or_c_multiplies_by_a_plus_c(m in square_z4(3)) {
        prop_oext_product_law(m)?;
    }

    #[test]
    fn flatness_orders_opposite_to_secrecy(input in equal_length_seeds(4)) {
        prop_flatness_ordering(input)?;
    }

    #[test]
    fn standard_form_spans_the_same_code(m in z4_matrix(4, 1, 6)) {
        let n = m.cols();
        let words = span(&rows_of(&m), n);
        let code = Z4Code::from_generator(&m);
        prop_assert_eq!(BigUint::from(words.len()), code.cardinality());
        prop_assert_eq!(code.cardinality_log2() as usize, 2 * code.k1() + code.k2());
        prop_assert_eq!(span(&rows_of(&code.original_generator()), n), words.clone());

        let g = code.generator();
        let (k1, k2) = (code.k1(), code.k2());
        for i in 0..k1 + k2 {
            let width = if i < k1 { k1 } else { k1 + k2 };
            for j in 0..width {
                let want = match (i < k1, i == j) {
                    (_, false) => 0,
                    (true, true) => 1,
                    (false, true) => 2,
                };
                prop_assert_eq!(g.get(i, j), want);
            }
        }
        let mut perm: Vec<usize> = code.column_permutation().to_vec();
        perm.sort_unstable();
        prop_assert_eq!(perm, (0..n).collect::<Vec<_>>());

        let listed: BTreeSet<Vec<u8>> = (0..words.len() as u64)
            .map(|i| code.codeword_at(i).entries().to_vec())
            .collect();
        prop_assert_eq!(&listed, &words);
        for w in &words {
            prop_assert!(code.contains(&Z4Vector::new(w.clone()).unwrap()));
        }
    }

    #[test]
    fn dual_of_dual_is_the_code(m in z4_matrix(4, 1, 6)) {
        let code = Z4Code::from_generator(&m);
        prop_assert!(code.dual().dual().same_code(&code));
    }

    #[test]
    fn swe_mass_and_gray_image(m in z4_matrix(4, 1, 8)) {
        let code = Z4Code::from_generator(&m);
        let p = swe(&code, Budget::default()).unwrap();
        prop_assert_eq!(p.total(), code.cardinality());
        let g = gray_we_from_swe(&p);
        prop_assert_eq!(g.total(), code.cardinality());
        prop_assert_eq!(g.degree(), 2 * p.degree());
    }

    #[test]
    fn self_dual_codes_classify_as_type_i_or_ii(s in seed(1, 4)) {
        let code = pdcc(&s);
        let p = swe(&code, Budget::default()).unwrap();
        prop_assert!(is_fsd_swe(&p));
        if code.is_self_dual() {
            prop_assert!(matches!(classify_swe(&p), CodeType::TypeI | CodeType::TypeII));
        }
    }

    #[test]
    fn symmetry_orbit_preserves_swe(digits in prop::collection::vec(0u8..4, 5)) {
        let space = SearchSpace::bdcc(3).unwrap();
        let base = swe(&space.build(&digits).unwrap(), Budget::default()).unwrap();
        for other in space.orbit(&digits).unwrap() {
            prop_assert_eq!(&swe(&space.build(&other).unwrap(), Budget::default()).unwrap(), &base);
        }
        let canon = space.canonical(&digits).unwrap();
        prop_assert!(canon <= digits);
        prop_assert_eq!(space.canonical(&canon).unwrap(), canon);
    }

    #[test]
    fn bdcc_is_built_from_its_border(alpha in 0u8..4, beta in 0u8..4, gamma in 0u8..4, r in prop::collection::vec(0u8..4, 1..4)) {
        let eta = r.len() + 1;
        let params = BorderParams::new(alpha, beta, gamma, CirculantSeed::new(r.clone()).unwrap()).unwrap();
        let g = bdcc(&params).original_generator();
        let b = params.matrix();
        prop_assert_eq!(b.get(0, 0), alpha);
        for j in 1..eta {
            prop_assert_eq!(b.get(0, j), beta);
            prop_assert_eq!(b.get(j, 0), gamma);
            for k in 1..eta {
                prop_assert_eq!(b.get(j, k), r[(k + eta - 1 - j) % (eta - 1)]);
            }
        }
        let words = span(&rows_of(&g), 2 * eta);
        prop_assert_eq!(words.len(), 1 << (2 * eta));
    }
}
