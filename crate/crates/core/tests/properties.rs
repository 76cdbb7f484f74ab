//! Randomized property suites: field axioms for the rational-function
//! arithmetic, evaluation homomorphism, normalization idempotence, branch
//! machinery invariants and reduction consistency on random networks.

use proptest::prelude::*;

use isored_core::linalg::det;
use isored_core::netgraph::{
    branch_weight, branches, branches_by_length, reduced_entry, Network,
};
use isored_core::ratfield::{GaussianRational, Poly, RatFunc};
use isored_core::reduction::{cross_validate, reduce_graph, reduce_sequence, Partition};

fn gauss_strategy() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
        .prop_map(|(rn, rd, im, id)| GaussianRational::from_parts(rn, rd, im, id))
}

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(gauss_strategy(), 1..=max_deg + 1).prop_map(Poly::new)
}

fn ratfunc_strategy() -> impl Strategy<Value = RatFunc> {
    (poly_strategy(3), poly_strategy(2))
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

fn nonzero_ratfunc() -> impl Strategy<Value = RatFunc> {
    ratfunc_strategy().prop_filter("nonzero", |f| !f.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(a in ratfunc_strategy(), b in ratfunc_strategy(), c in ratfunc_strategy()) {
        // associativity and commutativity
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        // distributivity
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        // identities and inverses
        prop_assert_eq!(&a + &RatFunc::zero(), a.clone());
        prop_assert_eq!(&a * &RatFunc::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn multiplicative_inverse(a in nonzero_ratfunc()) {
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn normalization_invariants(a in ratfunc_strategy(), b in ratfunc_strategy()) {
        for f in [&a + &b, &a - &b, &a * &b] {
            if !f.is_zero() {
                prop_assert!(f.den().is_monic());
                prop_assert!(f.num().gcd(f.den()).is_one());
            } else {
                prop_assert!(f.den().is_one());
            }
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        f in ratfunc_strategy(),
        g in ratfunc_strategy(),
        z in gauss_strategy(),
    ) {
        let fz = f.eval_exact(&z);
        let gz = g.eval_exact(&z);
        if let (Ok(fz), Ok(gz)) = (fz, gz) {
            let prod = &f * &g;
            // f*g can cancel a pole of one factor, but at a common regular
            // point the values must multiply
            if let Ok(pz) = prod.eval_exact(&z) {
                prop_assert_eq!(pz, &fz * &gz);
            }
            let sum = &f + &g;
            if let Ok(sz) = sum.eval_exact(&z) {
                prop_assert_eq!(sz, &fz + &gz);
            }
        }
    }

    #[test]
    fn numeric_eval_tracks_exact(f in ratfunc_strategy(), z in gauss_strategy()) {
        if let Ok(exact) = f.eval_exact(&z) {
            if let Ok(numeric) = f.eval_numeric(z.to_c64(), 1e-10) {
                let expect = exact.to_c64();
                let err = (numeric - expect).norm();
                prop_assert!(err <= 1e-12 * (1.0 + expect.norm()),
                    "numeric {numeric} vs exact {expect}");
            }
        }
    }

    #[test]
    fn parse_print_round_trip(f in ratfunc_strategy()) {
        let literal = f.to_literal();
        let back: RatFunc = literal.parse().unwrap();
        prop_assert_eq!(back, f);
    }
}

/// Random network with an acyclic complement: kept vertices may connect
/// freely, complement edges only go "forward" along a hidden order.
fn network_strategy() -> impl Strategy<Value = (Network, Vec<usize>)> {
    (3usize..=6).prop_flat_map(|n| {
        let keep_size = 1..=n - 1;
        (Just(n), keep_size, prop::collection::vec(0u8..4, n * n))
            .prop_map(|(n, keep_size, codes)| {
                let keep: Vec<usize> = (1..=keep_size).collect();
                let mut net = Network::new(n);
                for i in 1..=n {
                    for j in 1..=n {
                        let code = codes[(i - 1) * n + (j - 1)];
                        // forbid back-edges inside the complement: complement
                        // vertices are keep_size+1..=n, ordered by label
                        let in_comp = |v: usize| v > keep_size;
                        if in_comp(i) && in_comp(j) && j <= i {
                            continue; // no loops or back-edges in complement
                        }
                        let w = match code {
                            1 => RatFunc::from_int(1),
                            2 => RatFunc::from_int(-2),
                            3 => RatFunc::new(
                                Poly::from_ints(&[1]),
                                Poly::from_ints(&[0, 1]),
                            )
                            .unwrap(), // 1/l
                            _ => continue,
                        };
                        net.add_edge(i, j, w).unwrap();
                    }
                }
                (net, keep)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn branch_sum_identity_on_random_networks((net, keep) in network_strategy()) {
        let ss = net.validate_structural(&keep).unwrap();
        let bound = ss.complement().len() + 1;
        for &i in ss.keep() {
            for &j in ss.keep() {
                let total = reduced_entry(&net, &ss, i, j);
                let mut by_length = RatFunc::zero();
                for p in 1..=bound {
                    by_length = &by_length + &branches_by_length(&net, &ss, i, j, p);
                }
                prop_assert_eq!(total.clone(), by_length);

                // and both agree with the explicit enumeration
                let mut enumerated = RatFunc::zero();
                for b in branches(&net, &ss, i, j) {
                    prop_assert!(b.length() <= bound);
                    enumerated = &enumerated + &branch_weight(&net, &b);
                }
                prop_assert_eq!(total, enumerated);
            }
        }
    }

    #[test]
    fn branch_paths_are_honest((net, keep) in network_strategy()) {
        let ss = net.validate_structural(&keep).unwrap();
        for &i in ss.keep() {
            for &j in ss.keep() {
                for b in branches(&net, &ss, i, j) {
                    let p = b.path();
                    prop_assert_eq!(p[0], i);
                    prop_assert_eq!(*p.last().unwrap(), j);
                    // consecutive pairs are edges
                    for w in p.windows(2) {
                        prop_assert!(net.has_edge(w[0], w[1]));
                    }
                    // interior vertices distinct, in the complement, not endpoints
                    let interior = &p[1..p.len() - 1];
                    for (a, v) in interior.iter().enumerate() {
                        prop_assert!(ss.in_complement(*v));
                        prop_assert!(*v != i && *v != j);
                        prop_assert!(!interior[a + 1..].contains(v));
                    }
                }
            }
        }
    }

    #[test]
    fn branch_count_matches_dag_path_count((net, keep) in network_strategy()) {
        let ss = net.validate_structural(&keep).unwrap();
        for &i in ss.keep() {
            for &j in ss.keep() {
                let found = branches(&net, &ss, i, j).len();
                let counted = count_paths_brute(&net, &ss, i, j);
                prop_assert_eq!(found, counted);
            }
        }
    }

    #[test]
    fn graph_and_matrix_reductions_agree((net, keep) in network_strategy()) {
        let ss = net.validate_structural(&keep).unwrap();
        prop_assert!(cross_validate(&net, &ss).unwrap());
    }

    #[test]
    fn sequential_reduction_is_path_independent((net, keep) in network_strategy()) {
        // reduce through any intermediate superset, compare with direct
        let ss = net.validate_structural(&keep).unwrap();
        let direct = reduce_graph(&net, &ss);
        let n = net.n();
        if keep.len() + 1 < n {
            let mut via = keep.clone();
            via.push(n); // complement vertices are keep_size+1..=n
            if net.validate_structural(&via).is_ok() {
                let seq = reduce_sequence(&net, &[via, keep.clone()]).unwrap();
                prop_assert_eq!(seq.network, direct.network);
            }
        }
    }

    #[test]
    fn reduction_dimension_and_determinant_sanity((net, keep) in network_strategy()) {
        let ss = net.validate_structural(&keep).unwrap();
        let red = reduce_graph(&net, &ss);
        prop_assert_eq!(red.network.n(), keep.len());

        // complement block invertibility holds on structural sets
        let part = Partition::new(net.n(), &keep).unwrap();
        let blocks = isored_core::reduction::split_blocks(&net.adjacency(), &part).unwrap();
        if !part.complement().is_empty() {
            let shifted = blocks
                .comp_comp
                .sub_scalar_diag(&RatFunc::lambda())
                .unwrap();
            prop_assert!(!det(&shifted).unwrap().is_zero());
        }
    }
}

/// Test-only oracle: brute-force path counting honoring the branch rules.
fn count_paths_brute(
    net: &Network,
    ss: &isored_core::netgraph::StructuralSet,
    i: usize,
    j: usize,
) -> usize {
    fn rec(
        net: &Network,
        ss: &isored_core::netgraph::StructuralSet,
        j: usize,
        path: &mut Vec<usize>,
    ) -> usize {
        let last = *path.last().unwrap();
        let mut count = 0;
        for v in 1..=net.n() {
            if !net.has_edge(last, v) {
                continue;
            }
            if v == j {
                count += 1;
            }
            if v != j && ss.in_complement(v) && !path.contains(&v) {
                path.push(v);
                count += rec(net, ss, j, path);
                path.pop();
            }
        }
        count
    }
    rec(net, ss, j, &mut vec![i])
}

#[test]
fn eigenvector_lift_dimensions_match_on_random_reductions() {
    // deterministic instance of the bijection property
    use isored_core::preservation::{lift_eigenvector, project_vector};
    use isored_core::ratfield::parse_gauss;
    use isored_core::spectra::eigenvectors_at;

    let net = isored_core::io::parse_network(
        r#"{"n": 4, "edges": [
            {"from": 1, "to": 2, "w": "1"},
            {"from": 2, "to": 3, "w": "1"},
            {"from": 3, "to": 4, "w": "1"},
            {"from": 4, "to": 3, "w": "-2"},
            {"from": 4, "to": 1, "w": "-1"}
        ]}"#,
    )
    .unwrap()
    .0;
    let a = net.adjacency();
    let lambda0 = parse_gauss("i").unwrap();
    for keep in [vec![1usize, 4], vec![2, 4], vec![1, 2, 4]] {
        let ss = net.validate_structural(&keep).unwrap();
        let part = Partition::new(4, &keep).unwrap();
        let reduced = reduce_graph(&net, &ss);
        let up = eigenvectors_at(&a, &lambda0).unwrap();
        let down = eigenvectors_at(&reduced.network.adjacency(), &lambda0).unwrap();
        // geometric multiplicity matches through the bijection
        assert_eq!(up.len(), down.len());
        for u in &down {
            let lifted = lift_eigenvector(u, &a, &part, &lambda0).unwrap();
            // lift lands in the eigenspace and projects back to u
            let b = isored_core::spectra::eval_matrix(&a, &lambda0)
                .unwrap()
                .sub_scalar_diag(&lambda0)
                .unwrap();
            assert!(b.mul_vec(&lifted).iter().all(|x| x.is_zero()));
            assert_eq!(&project_vector(&lifted, &keep), u);
        }
    }
}
