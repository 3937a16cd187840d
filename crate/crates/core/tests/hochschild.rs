use symgamma::algebra::{dual_numbers, truncated_polynomial, Bimodule, Coefficients, GradedAlgebra};
use symgamma::hochschild::{harrison_homology, HochschildComplex, Selector};
use symgamma::linalg::{homology, Field};

fn dual() -> GradedAlgebra {
    GradedAlgebra::validated(&dual_numbers(), None).unwrap()
}

fn trunc3() -> GradedAlgebra {
    GradedAlgebra::validated(&truncated_polynomial(3), None).unwrap()
}

// Tor^{k[x]/x^m}_n(k, k) is one-dimensional, in weight n for m = 2 and in
// weight (n/2) m or (n-1)/2 m + 1 for general m.
fn tor_weight(m: u32, n: usize) -> u32 {
    let n = n as u32;
    if n.is_multiple_of(2) {
        n / 2 * m
    } else {
        (n - 1) / 2 * m + 1
    }
}

#[test]
fn hochschild_homology_with_ground_coefficients_is_tor() {
    for (alg, m) in [(dual(), 2), (trunc3(), 3)] {
        let k = Bimodule::new(&alg, Coefficients::Ground);
        for w in 0..=5 {
            let c = HochschildComplex::build(k, 5, w, None).unwrap();
            let h = homology(c.slice()).unwrap().truncated(4);
            for n in 0..=4 {
                assert_eq!(h.dim(n), usize::from(tor_weight(m, n) == w), "m={m} n={n} w={w}");
            }
        }
    }
}

#[test]
fn harrison_of_truncated_polynomials() {
    // a complete intersection on one generator of weight 1 and one relation
    // of weight m: Harrison homology sits in degrees 1 and 2 only
    for (alg, m) in [(dual(), 2), (trunc3(), 3)] {
        let k = Bimodule::new(&alg, Coefficients::Ground);
        let table = harrison_homology(k, 4, 4, None).unwrap();
        for row in &table {
            for n in 0..=4 {
                let expected = (n == 1 && row.weight == 1) || (n == 2 && row.weight == m);
                assert_eq!(row.quotient_dims[n], usize::from(expected), "m={m} n={n} w={}", row.weight);
            }
        }
    }
}

#[test]
fn hodge_pieces_of_dual_numbers() {
    // HH_{2j} lives in Hodge piece j, HH_{2j+1} in piece j + 1
    let alg = dual();
    let k = Bimodule::new(&alg, Coefficients::Ground);
    for n in 1..=4usize {
        let c = HochschildComplex::build(k, n + 1, n as u32, None).unwrap();
        let piece = if n % 2 == 0 { n / 2 } else { n / 2 + 1 };
        for i in 1..=n {
            let sel = c.select(Selector::Idempotent(i)).unwrap();
            let h = homology(&sel.slice).unwrap();
            assert_eq!(h.dim(n), usize::from(i == piece), "n={n} i={i}");
        }
    }
}

#[test]
fn certificates_on_both_presets() {
    for alg in [dual(), trunc3()] {
        for kind in [Coefficients::Ground, Coefficients::Algebra] {
            let m = Bimodule::new(&alg, kind);
            for w in 0..=4 {
                let c = HochschildComplex::build(m, 4, w, None).unwrap();
                assert!(c.certify_hodge().unwrap().passed());
                assert!(c.certify_barr().unwrap().passed());
                c.aug_split().unwrap().certify().unwrap();
                for i in 1..=4 {
                    let cert = c.normalized_harrison(i).unwrap().certify().unwrap();
                    assert!(cert.passed(), "{cert:?}");
                }
                let full = c.select(Selector::Full).unwrap().slice;
                let sh = c.select(Selector::Shuffle).unwrap().slice;
                let q = c.select(Selector::HarrisonQuotient).unwrap().slice;
                for n in 1..=4 {
                    assert_eq!(sh.dim(n) + q.dim(n), full.dim(n));
                }
            }
        }
    }
}

#[test]
fn shuffle_slice_in_degree_two() {
    // spanned by m (x) (a (x) b - b (x) a)
    let alg = GradedAlgebra::validated(&symgamma::algebra::xy_square_zero(), None).unwrap();
    let k = Bimodule::new(&alg, Coefficients::Ground);
    let c = HochschildComplex::build(k, 2, 2, None).unwrap();
    let sh = c.subspaces(Selector::Shuffle).unwrap();
    // weight-2 pairs: (x,y), (y,x), (x,x), (y,y), and (1, xy-type letters)
    let basis = c.basis(2);
    let antisym: Vec<_> = (0..basis.len())
        .filter_map(|j| {
            let w = basis.get(j);
            let flipped = vec![w[0], w[2], w[1]];
            let jf = basis.index_of(&flipped).unwrap();
            (jf > j).then_some((j, jf))
        })
        .collect();
    assert_eq!(sh[2].dim(), antisym.len());
}

#[test]
fn idempotents_over_a_large_prime_agree_with_rationals() {
    let alg = GradedAlgebra::validated(&dual_numbers(), Some(Field::prime(101).unwrap())).unwrap();
    let k = Bimodule::new(&alg, Coefficients::Ground);
    let table = harrison_homology(k, 3, 3, None).unwrap();
    assert_eq!(table[1].quotient_dims[1], 1);
    assert_eq!(table[2].quotient_dims[2], 1);
}
