use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use warpknot::diagram::{parse_arc, parse_gauss_code};
use warpknot::{corpus, statesum, warping, GaussDiagram, IntPolynomial, PolyError, Shadow, Strand};

/// Warping degree of the edge after passage `e`, straight from the definition.
fn naive_degree(d: &GaussDiagram, e: usize) -> usize {
    let ps = d.passages();
    let len = ps.len();
    let mut met = Vec::new();
    let mut count = 0;
    for k in 1..=len {
        let p = ps[(e + k) % len];
        if !met.contains(&p.crossing) {
            met.push(p.crossing);
            if p.strand == Strand::Under {
                count += 1;
            }
        }
    }
    count
}

fn naive_w(d: &GaussDiagram) -> IntPolynomial {
    (0..d.passages().len().max(1))
        .map(|e| IntPolynomial::monomial(1, if d.crossing_count() == 0 { 0 } else { naive_degree(d, e) }))
        .sum()
}

fn naive_x(d: &GaussDiagram) -> IntPolynomial {
    let len = d.passages().len();
    d.passages()
        .iter()
        .enumerate()
        .filter(|(_, p)| p.strand == Strand::Over)
        .map(|(pos, _)| IntPolynomial::monomial(1, naive_degree(d, (pos + len - 1) % len)))
        .sum()
}

fn diagram(seed: u64, n: usize) -> GaussDiagram {
    corpus::random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

#[test]
fn one_bridge_trefoil_values() {
    let d = parse_gauss_code("O1 O2 O3 U1 U2 U3").unwrap();
    assert_eq!(naive_x(&d), IntPolynomial::new(vec![1, 1, 1]));
    assert_eq!(naive_w(&d), IntPolynomial::new(vec![1, 2, 2, 1]));
    assert_eq!(warping::warping_crossing_polynomial(&d), naive_x(&d));
    assert_eq!(warping::warping_polynomial(&d), naive_w(&d));
    assert!(warping::classify(&d).unwrap().one_bridge);
}

#[test]
fn alternating_trefoil_values() {
    let d = parse_gauss_code("O1 U2 O3 U1 O2 U3").unwrap();
    assert_eq!(warping::warping_crossing_polynomial(&d), IntPolynomial::monomial(3, 1));
    assert!(warping::classify(&d).unwrap().alternating);
}

#[test]
fn division_examples() {
    let p = |c: &[i64]| IntPolynomial::new(c.to_vec());
    assert_eq!(p(&[1, 2, 2, 1]).div_exact_one_plus_t(), Ok(p(&[1, 1, 1])));
    assert_eq!(IntPolynomial::zero().div_exact_one_plus_t(), Ok(IntPolynomial::zero()));
    assert_eq!(p(&[2, 5, 2]).div_exact_one_plus_t(), Err(PolyError::NotDivisible));
    assert_eq!(p(&[1, 2]).reciprocal_transform(4), Ok(p(&[0, 0, 2, 1])));
    assert_eq!(p(&[1, 1, 1]).reciprocal_transform(3), Ok(p(&[1, 1, 1])));
}

#[test]
fn reciprocal_matches_reversed_diagrams() {
    // some 3-crossing diagram has X = 3; its reverse must have X = 3t^2
    let d = corpus::gauss_diagrams(3)
        .into_iter()
        .find(|d| naive_x(d) == IntPolynomial::constant(3))
        .expect("a diagram with X = 3 exists");
    assert_eq!(naive_x(&d.reverse()), IntPolynomial::new(vec![0, 0, 3]));
    assert_eq!(IntPolynomial::constant(3).reciprocal_transform(3), Ok(naive_x(&d.reverse())));
}

#[test]
fn arc_edge_and_crossing_totals() {
    let s = parse_arc("O1 U2 O3 U1 O4 U3 O2 U4").unwrap();
    let (w, x) = warping::arc_polynomials(&s);
    assert_eq!((w.evaluate(1), x.evaluate(1)), (9, 4));
    let s = parse_arc("O1 U1").unwrap();
    assert_eq!(warping::arc_polynomials(&s), (IntPolynomial::new(vec![2, 1]), IntPolynomial::one()));
}

#[test]
fn realizable_polynomials_have_contiguous_support() {
    for n in 1..=4 {
        let found = warping::realizable_polynomials(n);
        for f in &found {
            assert!(warping::realizability_check(f), "{f}");
        }
        let expected = (0..n).map(|lo| (lo..n).map(|hi| shapes(n, hi - lo + 1)).sum::<usize>()).sum::<usize>();
        assert_eq!(found.len(), expected);
    }
}

/// Compositions of `n` into `parts` positive parts.
fn shapes(n: usize, parts: usize) -> usize {
    if parts == 0 {
        return usize::from(n == 0);
    }
    (1..=n).map(|first| shapes(n - first, parts - 1)).sum()
}

#[test]
fn state_sums_against_brute_force() {
    for n in 1..=5 {
        for p in corpus::shadows_up_to_rotation(n) {
            let (mut z, mut w) = (IntPolynomial::zero(), IntPolynomial::zero());
            for mask in 0..1u64 << n {
                let bits: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
                let d = p.assign_state(&bits).unwrap();
                z = z + naive_x(&d);
                w = w + naive_w(&d);
            }
            let report = statesum::state_sum(&p).unwrap();
            assert_eq!(report.z, z);
            assert_eq!(report.w_total, w);
            assert_eq!(z, IntPolynomial::one_plus_t_pow(2 * n as i64, n - 1));
        }
    }
    let four = Shadow::new(vec![1, 2, 3, 1, 4, 3, 2, 4]).unwrap();
    assert_eq!(statesum::state_sum(&four).unwrap().z, IntPolynomial::one_plus_t_pow(8, 3));
}

#[test]
fn edge_distributions_by_counting() {
    for p in corpus::shadows_up_to_rotation(4) {
        for e in 0..p.edge_count() {
            let mut counts = vec![0u64; 5];
            for mask in 0..16 {
                counts[naive_degree(&p.assign_state_mask(mask), e)] += 1;
            }
            assert_eq!(statesum::edge_degree_distribution(&p, e).unwrap(), counts);
            assert_eq!(counts, vec![1, 4, 6, 4, 1]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn polynomials_match_definitions(seed in any::<u64>(), n in 1usize..=10) {
        let d = diagram(seed, n);
        prop_assert_eq!(warping::warping_polynomial(&d), naive_w(&d));
        prop_assert_eq!(warping::warping_crossing_polynomial(&d), naive_x(&d));
        let profile = warping::edge_degrees(&d);
        for e in 0..d.edge_count() {
            prop_assert_eq!(profile.degrees()[e], naive_degree(&d, e));
        }
    }

    #[test]
    fn warping_polynomial_is_divisible(seed in any::<u64>(), n in 1usize..=12) {
        let d = diagram(seed, n);
        prop_assert_eq!(naive_w(&d), naive_x(&d).mul_by_one_plus_t());
    }

    #[test]
    fn reverse_and_mirror_reflect_x(seed in any::<u64>(), n in 1usize..=10) {
        let d = diagram(seed, n);
        let reflected = naive_x(&d).reciprocal_transform(n).unwrap();
        prop_assert_eq!(naive_x(&d.reverse()), reflected.clone());
        prop_assert_eq!(naive_x(&d.mirror()), reflected);
    }

    #[test]
    fn crossing_change_identities(seed in any::<u64>(), n in 1usize..=9, pick in any::<prop::sample::Index>()) {
        let d = diagram(seed, n);
        let c = pick.index(n) as u32 + 1;
        let changed = d.crossing_change(c).unwrap();
        let (x, x2) = (naive_x(&d), naive_x(&changed));
        let (a, b) = warping::crossing_change_partition(&d, c).unwrap();
        let t = IntPolynomial::monomial(1, 1);
        let one_minus_t = IntPolynomial::new(vec![1, -1]);
        prop_assert_eq!(&x - &(&t * &x2), &one_minus_t * &a);
        prop_assert_eq!(&x2 - &(&t * &x), &one_minus_t * &b);
        prop_assert_eq!(&x + &x2, &a + &b);
        let span = |p: &IntPolynomial| p.span().unwrap() as i64;
        prop_assert!((span(&x) - span(&x2)).abs() <= 2);
    }

    #[test]
    fn classification_matches_shape(seed in any::<u64>(), n in 1usize..=8) {
        let d = diagram(seed, n);
        let x = naive_x(&d);
        let class = warping::classify(&d).unwrap();
        let monomial = x.lowest_degree() == x.degree();
        prop_assert_eq!(class.alternating, monomial);
        prop_assert_eq!(class.one_bridge, x == IntPolynomial::new(vec![1; n]));
        prop_assert!(warping::realizability_check(&x));
    }
}
