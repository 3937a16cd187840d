use proptest::prelude::*;
use symgamma::algebra::{dual_numbers, truncated_polynomial, Bimodule, Coefficients, GradedAlgebra};
use symgamma::gamma::{
    certify_pruning, enumerate_surjections, gamma_homology, induced_tensor_map, omega_strings, surjection_count,
    GammaComplex, GammaOptions, OmegaString, PruningSplit, Surjection, Variant,
};
use symgamma::hochschild::harrison_homology;
use symgamma::linalg::homology;

fn dual() -> GradedAlgebra {
    GradedAlgebra::validated(&dual_numbers(), None).unwrap()
}

fn trunc3() -> GradedAlgebra {
    GradedAlgebra::validated(&truncated_polynomial(3), None).unwrap()
}

fn stirling2(n: usize, k: usize) -> u128 {
    let mut s = vec![vec![0u128; k + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for j in 1..=k.min(i) {
            s[i][j] = j as u128 * s[i - 1][j] + s[i - 1][j - 1];
        }
    }
    s[n][k]
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[test]
fn surjection_counts_are_ordered_stirling_numbers() {
    for x in 1..=6 {
        for y in 1..=x {
            let expected = factorial(y) * stirling2(x, y);
            assert_eq!(surjection_count(x, y), expected);
            let all = enumerate_surjections(x, y).unwrap();
            assert_eq!(all.len() as u128, expected);
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

// strings x -> ... -> 1 of length n, counted by a transfer recursion
fn string_count(x: usize, n: usize, normalized: bool) -> u128 {
    if n == 0 {
        return u128::from(x == 1);
    }
    (1..=x)
        .map(|y| {
            let mut edges = factorial(y) * stirling2(x, y);
            if normalized && y == x {
                edges -= 1;
            }
            edges * string_count(y, n - 1, normalized)
        })
        .sum()
}

#[test]
fn string_counts_match_the_transfer_recursion() {
    for x in 1..=4 {
        for n in 0..=3 {
            for normalized in [false, true] {
                let got = omega_strings(x, n, normalized);
                assert_eq!(got.len() as u128, string_count(x, n, normalized), "x={x} n={n}");
                assert!(got.iter().all(|s| s.len() == n && s.source() == x));
                if normalized {
                    assert!(got.iter().all(|s| !s.is_degenerate()));
                }
            }
        }
    }
}

#[test]
fn components_partition_the_source() {
    for s in omega_strings(4, 3, true) {
        let last = s.maps().last().unwrap().source();
        let mut seen = Vec::new();
        for i in 1..=last {
            let (comp, pre) = s.ith_component(i).unwrap();
            assert_eq!(comp.source(), pre.len());
            seen.extend(pre);
        }
        seen.sort_unstable();
        assert_eq!(seen, (0..4).collect::<Vec<_>>());
    }
}

#[test]
fn boundaries_square_to_zero() {
    for alg in [dual(), trunc3()] {
        for kind in [Coefficients::Ground, Coefficients::Algebra] {
            let m = Bimodule::new(&alg, kind);
            for variant in [Variant::A, Variant::I] {
                for normalized in [true, false] {
                    for w in 0..=3 {
                        let mut opts = GammaOptions::new(variant);
                        opts.normalized = normalized;
                        let top = if normalized { 4 } else { 3 };
                        let c = GammaComplex::build(m, top, w, opts).unwrap();
                        c.slice().check_complex().unwrap();
                    }
                }
            }
        }
    }
}

#[test]
fn normalization_preserves_homology() {
    for alg in [dual(), trunc3()] {
        let k = Bimodule::new(&alg, Coefficients::Ground);
        for variant in [Variant::A, Variant::I] {
            for w in 0..=3 {
                let norm = GammaComplex::build(k, 3, w, GammaOptions::new(variant)).unwrap();
                let mut opts = GammaOptions::new(variant);
                opts.normalized = false;
                let raw = GammaComplex::build(k, 3, w, opts).unwrap();
                let hn = homology(norm.slice()).unwrap().truncated(2);
                let hr = homology(raw.slice()).unwrap().truncated(2);
                assert_eq!(hn.dims(), hr.dims(), "{variant} w={w}");
            }
        }
    }
}

#[test]
fn pruning_splits_the_complex() {
    for alg in [dual(), trunc3()] {
        for kind in [Coefficients::Ground, Coefficients::Algebra] {
            let m = Bimodule::new(&alg, kind);
            for w in 0..=3 {
                let full = GammaComplex::build(m, 3, w, GammaOptions::new(Variant::A)).unwrap();
                let ideal = GammaComplex::build(m, 3, w, GammaOptions::new(Variant::I)).unwrap();
                let cert = PruningSplit::new(&full, &ideal).unwrap().certify(w).unwrap();
                assert!(cert.passed(), "{cert:?}");
                let streamed = certify_pruning(m, w, 3, None).unwrap();
                assert!(streamed.passed(), "{streamed:?}");
                assert_eq!(streamed.full_dims, cert.full_dims);
                assert_eq!(streamed.kernel_dims, cert.kernel_dims);
            }
        }
    }
}

#[test]
fn gamma_homology_of_dual_numbers_agrees_across_variants() {
    let alg = dual();
    let k = Bimodule::new(&alg, Coefficients::Ground);
    let a = gamma_homology(k, Variant::A, 3, 3, None, None).unwrap();
    let i = gamma_homology(k, Variant::I, 3, 3, None, None).unwrap();
    for w in 0..=3 {
        assert_eq!(a[w].dims(), i[w].dims(), "w={w}");
    }
    // HΓ_0(A, k) is the module of indecomposables
    assert_eq!(a[1].dim(0), 1);
    assert_eq!(a[2].dim(0), 0);
}

#[test]
fn gamma_homology_is_harrison_shifted_down() {
    for alg in [dual(), trunc3()] {
        let k = Bimodule::new(&alg, Coefficients::Ground);
        let gamma = gamma_homology(k, Variant::I, 3, 3, None, None).unwrap();
        let harr = harrison_homology(k, 4, 3, None).unwrap();
        for w in 0..=3usize {
            for n in 1..=4 {
                assert_eq!(gamma[w].dim(n - 1), harr[w].quotient_dims[n], "n={n} w={w}");
            }
        }
    }
}

fn surjection_pair() -> impl Strategy<Value = (Surjection, Surjection, u32)> {
    (1usize..=4)
        .prop_flat_map(|x| (Just(x), 1..=x))
        .prop_flat_map(|(x, y)| (Just(x), Just(y), 1..=y))
        .prop_flat_map(|(x, y, z)| {
            let fs = enumerate_surjections(x, y).unwrap();
            let gs = enumerate_surjections(y, z).unwrap();
            (0..fs.len(), 0..gs.len(), 0u32..=4).prop_map(move |(i, j, w)| (fs[i].clone(), gs[j].clone(), w))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn induced_maps_are_functorial((f, g, w) in surjection_pair()) {
        for alg in [dual(), trunc3()] {
            let gf = g.compose(&f).unwrap();
            let lhs = induced_tensor_map(&alg, &gf, w).unwrap();
            let rhs = induced_tensor_map(&alg, &g, w).unwrap().mul(&induced_tensor_map(&alg, &f, w).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn composing_strings_stays_surjective((f, g, _w) in surjection_pair()) {
        let s = OmegaString::new(vec![f.clone(), g.clone(), Surjection::collapse(g.target())]).unwrap();
        prop_assert_eq!(s.source(), f.source());
        let gf = g.compose(&f).unwrap();
        prop_assert_eq!(gf.source(), f.source());
        prop_assert_eq!(gf.target(), g.target());
        for i in 1..=f.source() {
            prop_assert_eq!(gf.image(i), g.image(f.image(i)));
        }
    }
}
