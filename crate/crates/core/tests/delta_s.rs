use proptest::prelude::*;
use symgamma::algebra::{dual_numbers, truncated_polynomial, GradedAlgebra};
use symgamma::delta_s::{
    epi_morphisms, epi_strings, hs0_consistency, reduced_symmetric_homology, Comparison, DeltaMap, DeltaSMorphism,
    SymVariant, SymmetricComplex,
};
use symgamma::linalg::{homology, ChainSlice, SparseMatrix};
use symgamma::symmetric::Permutation;

fn dual() -> GradedAlgebra {
    GradedAlgebra::validated(&dual_numbers(), None).unwrap()
}

fn trunc3() -> GradedAlgebra {
    GradedAlgebra::validated(&truncated_polynomial(3), None).unwrap()
}

fn theta(k: usize, n: usize) -> Permutation {
    Permutation::transposition(k, n).unwrap()
}

fn pair(phi: DeltaMap, g: Permutation) -> DeltaSMorphism {
    DeltaSMorphism::from_pair(&phi, &g).unwrap()
}

#[test]
fn faces_past_transpositions_follow_the_table() {
    // (id, theta_k) o (delta_i, id) = (delta_{theta_k(i)}, delta_i^*(theta_k))
    for n in 1..=4usize {
        for i in 1..=n + 1 {
            for k in 1..=n {
                let lhs = pair(DeltaMap::identity(n + 1), theta(k, n + 1))
                    .compose(&pair(DeltaMap::face(n, i).unwrap(), Permutation::identity(n)))
                    .unwrap();
                let star = if k + 1 < i {
                    theta(k, n)
                } else if k + 1 == i || k == i {
                    Permutation::identity(n)
                } else {
                    theta(k - 1, n)
                };
                let moved = theta(k, n + 1).image(i);
                let rhs = pair(DeltaMap::face(n, moved).unwrap(), star);
                assert_eq!(lhs, rhs, "n={n} i={i} k={k}");
            }
        }
    }
}

#[test]
fn degeneracies_past_transpositions_follow_the_table() {
    // (id, theta_k) o (sigma_j, id) = (sigma_{theta_k(j)}, sigma_j^*(theta_k))
    for n in 1..=4usize {
        for j in 1..=n {
            for k in 1..n {
                let lhs = pair(DeltaMap::identity(n), theta(k, n))
                    .compose(&pair(DeltaMap::degeneracy(n, j).unwrap(), Permutation::identity(n + 1)))
                    .unwrap();
                let m = n + 1;
                let star = if k + 1 < j {
                    theta(k, m)
                } else if k + 1 == j {
                    theta(j, m).compose(&theta(j - 1, m)).unwrap()
                } else if k == j {
                    theta(j, m).compose(&theta(j + 1, m)).unwrap()
                } else {
                    theta(k + 1, m)
                };
                let moved = theta(k, n).image(j);
                let rhs = pair(DeltaMap::degeneracy(n, moved).unwrap(), star);
                assert_eq!(lhs, rhs, "n={n} j={j} k={k}");
            }
        }
    }
}

#[test]
fn spelled_out_table_entries() {
    // delta_2^*(theta_1) = id
    let lhs = pair(DeltaMap::identity(3), theta(1, 3))
        .compose(&pair(DeltaMap::face(2, 2).unwrap(), Permutation::identity(2)))
        .unwrap();
    assert_eq!(lhs, pair(DeltaMap::face(2, 1).unwrap(), Permutation::identity(2)));
    // sigma_1^*(theta_1) = theta_1 theta_2
    let lhs = pair(DeltaMap::identity(2), theta(1, 2))
        .compose(&pair(DeltaMap::degeneracy(2, 1).unwrap(), Permutation::identity(3)))
        .unwrap();
    let star = theta(1, 3).compose(&theta(2, 3)).unwrap();
    assert_eq!(lhs, pair(DeltaMap::degeneracy(2, 2).unwrap(), star));
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

#[test]
fn epimorphism_counts() {
    for x in 1..=5usize {
        for y in 1..=x {
            let all = epi_morphisms(x, y).unwrap();
            let fact: u64 = (1..=x as u64).product();
            assert_eq!(all.len() as u64, fact * binomial(x - 1, y - 1), "x={x} y={y}");
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            assert!(all.iter().all(|f| f.is_epi() && f.pair_form().0.is_epi()));
        }
    }
}

#[test]
fn reversed_fiber_acts_by_reversed_product() {
    let f = DeltaSMorphism::new(2, &[vec![2, 1]]).unwrap();
    let out = f.apply_formal(&[vec!['x'], vec!['y']]).unwrap();
    assert_eq!(out, vec![vec!['y', 'x']]);
    let (phi, g) = f.pair_form();
    assert_eq!(phi, DeltaMap::new(1, &[1, 1]).unwrap());
    assert_eq!(g, theta(1, 2));
}

#[test]
fn boundaries_square_to_zero() {
    for alg in [dual(), trunc3()] {
        for variant in [SymVariant::Full, SymVariant::Quotient] {
            for w in 0..=3 {
                let c = SymmetricComplex::build(&alg, 4, w, variant, None).unwrap();
                c.slice().check_complex().unwrap();
            }
        }
    }
}

#[test]
fn quotient_keeps_strings_ending_at_one() {
    for alg in [dual(), trunc3()] {
        for w in 1..=3 {
            let full = SymmetricComplex::build(&alg, 3, w, SymVariant::Full, None).unwrap();
            let quot = SymmetricComplex::build(&alg, 3, w, SymVariant::Quotient, None).unwrap();
            for n in 0..=3 {
                let ending_at_one: Vec<_> = full.basis(n).iter().filter(|g| g.string.target() == 1).cloned().collect();
                assert_eq!(quot.basis(n).iter().cloned().collect::<Vec<_>>(), ending_at_one);
            }
        }
    }
}

#[test]
fn weight_zero_is_empty() {
    let h = reduced_symmetric_homology(&dual(), 3, 0, None).unwrap();
    assert_eq!(h[0].dims(), vec![0, 0, 0, 0]);
}

#[test]
fn comparison_is_a_surjective_chain_map() {
    for alg in [dual(), trunc3()] {
        for w in 0..=3 {
            let cmp = Comparison::build(&alg, 3, w, None).unwrap();
            let cert = cmp.certify().unwrap();
            assert!(cert.passed(), "{cert:?}");
            assert_eq!(cert.ranks, cert.gamma_dims);
            for n in 0..=3 {
                assert_eq!(cert.kernel_dims[n] + cert.gamma_dims[n], cert.symmetric_dims[n]);
            }
        }
    }
}

#[test]
fn fiber_orders_are_invisible_to_phi() {
    let alg = dual();
    let quot = SymmetricComplex::build(&alg, 2, 3, SymVariant::Quotient, None).unwrap();
    let cmp = Comparison::build(&alg, 2, 3, None).unwrap();
    for n in 0..=2 {
        let phi = &cmp.phi.components()[n];
        let basis = quot.basis(n);
        for (a, ga) in basis.iter().enumerate() {
            for (b, gb) in basis.iter().enumerate().skip(a + 1) {
                let ua = ga.string.forget().unwrap();
                let ub = gb.string.forget().unwrap();
                if ua == ub && ga.word == gb.word {
                    assert_eq!(phi.column(a), phi.column(b));
                }
            }
        }
    }
}

#[test]
fn long_exact_sequence_is_exact() {
    for alg in [dual(), trunc3()] {
        for w in 0..=3 {
            let les = Comparison::build(&alg, 4, w, None).unwrap().long_exact_sequence().unwrap();
            assert!(les.is_exact(), "{:?}", les.first_failure());
            assert_eq!(les.nodes.len(), 12);
        }
    }
}

#[test]
fn degree_zero_symmetric_homology_is_the_algebra() {
    for alg in [dual(), trunc3()] {
        for row in hs0_consistency(&alg, 4).unwrap() {
            assert!(row.consistent, "{row:?}");
        }
    }
    let h = reduced_symmetric_homology(&dual(), 0, 1, None).unwrap();
    assert_eq!(h[1].dim(0), 1);
}

fn reversed(c: &ChainSlice) -> ChainSlice {
    let field = c.field();
    let boundaries = (1..=c.top())
        .map(|n| {
            let d = c.boundary(n).unwrap();
            let (r, k) = d.shape();
            SparseMatrix::from_triplets(r, k, field, d.entries().map(|(i, j, v)| (r - 1 - i, k - 1 - j, v.clone())))
                .unwrap()
        })
        .collect();
    ChainSlice::new(field, c.dims().to_vec(), boundaries).unwrap()
}

#[test]
fn symmetric_homology_is_deterministic_and_basis_independent() {
    for alg in [dual(), trunc3()] {
        let a = reduced_symmetric_homology(&alg, 3, 3, None).unwrap();
        let b = reduced_symmetric_homology(&alg, 3, 3, None).unwrap();
        assert_eq!(a, b);
        for w in 0..=3 {
            let c = SymmetricComplex::build(&alg, 4, w, SymVariant::Full, None).unwrap();
            let h = homology(&reversed(c.slice())).unwrap().truncated(3);
            assert_eq!(h.dims(), a[w as usize].dims());
        }
    }
}

#[test]
fn string_counts_from_three_points() {
    // n = 1: 3! C(2, 0..2) minus the identity
    let counts: Vec<usize> = (1..=3).map(|n| epi_strings(3, n, true).unwrap().len()).collect();
    assert_eq!(counts[0], 6 + 12 + 6 - 1);
}

fn morphism(x: usize, y: usize) -> impl Strategy<Value = DeltaSMorphism> {
    (proptest::collection::vec(0..y, x), Just((0..x).collect::<Vec<_>>()).prop_shuffle()).prop_map(move |(images, order)| {
        let mut fibers = vec![Vec::new(); y];
        for p in order {
            fibers[images[p]].push(p + 1);
        }
        DeltaSMorphism::new(x, &fibers).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (DeltaSMorphism, DeltaSMorphism, DeltaSMorphism)> {
    (1usize..=4, 1usize..=4, 1usize..=4, 1usize..=4)
        .prop_flat_map(|(a, b, c, d)| (morphism(a, b), morphism(b, c), morphism(c, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative((f, g, h) in triple()) {
        let left = h.compose(&g.compose(&f).unwrap()).unwrap();
        let right = h.compose(&g).unwrap().compose(&f).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(DeltaSMorphism::identity(g.target()).compose(&g).unwrap(), g.clone());
        prop_assert_eq!(g.compose(&DeltaSMorphism::identity(g.source())).unwrap(), g);
    }

    #[test]
    fn pair_form_round_trips(f in (1usize..=5, 1usize..=5).prop_flat_map(|(x, y)| morphism(x, y))) {
        let (phi, g) = f.pair_form();
        prop_assert_eq!(DeltaSMorphism::from_pair(&phi, &g).unwrap(), f.clone());
        prop_assert_eq!(phi.is_epi(), f.is_epi());
        for i in 1..=f.source() {
            prop_assert_eq!(f.image(i), phi.image(g.image(i)));
        }
    }

    #[test]
    fn b_sym_is_functorial_on_formal_words((f, g, _h) in triple()) {
        let slots: Vec<Vec<char>> = (0..f.source()).map(|i| vec![(b'a' + i as u8) as char]).collect();
        let direct = g.compose(&f).unwrap().apply_formal(&slots).unwrap();
        let stepwise = g.apply_formal(&f.apply_formal(&slots).unwrap()).unwrap();
        prop_assert_eq!(direct, stepwise);
    }

    #[test]
    fn underlying_maps_compose(f in (1usize..=4, 1usize..=4).prop_flat_map(|(x, y)| morphism(x, y)),
                               seed in 0usize..1000) {
        let y = f.target();
        let z = 1 + seed % y;
        let fibers: Vec<Vec<usize>> = (1..=z).map(|k| (1..=y).filter(|j| (j + seed) % z == k - 1).collect()).collect();
        let g = DeltaSMorphism::new(y, &fibers).unwrap();
        let gf = g.compose(&f).unwrap();
        for i in 1..=f.source() {
            prop_assert_eq!(gf.image(i), g.image(f.image(i)));
        }
    }
}
