mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{arb_algebra, eval_naive, holds_naive, random_equation, random_quasi_identities, random_term};
use scasc::algebra::{catalog, FiniteAlgebra};
use scasc::term::{eval_term, holds_in_algebra, parse_quasi_identity, parse_term, ParseError, QuasiIdentity};
use scasc::Limits;

const PASSIVE: &str = "d(x0,c0,c1)=x0 & d(x0,c1,c0)=x0 => c0=c1";

fn relabel(a: &FiniteAlgebra, perm: &[usize]) -> FiniteAlgebra {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    FiniteAlgebra::from_fn(a.signature().clone(), a.size(), |op, args| {
        let pre: Vec<usize> = args.iter().map(|&x| inv[x]).collect();
        perm[a.apply(op, &pre)]
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn printed_terms_parse_back(seed in any::<u64>(), depth in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for alg in [catalog::boolean_algebra(), catalog::three_element_disc_with_constants()] {
            let sig = alg.signature();
            let t = random_term(&mut rng, sig, 4, depth);
            prop_assert_eq!(parse_term(&t.to_string_with(sig), sig).unwrap(), t);
        }
    }

    #[test]
    fn printed_quasi_identities_parse_back(seed in any::<u64>()) {
        let alg = catalog::three_element_disc_with_constants();
        let sig = alg.signature();
        for q in random_quasi_identities(sig, 3, 3, 3, 5, seed) {
            prop_assert_eq!(parse_quasi_identity(&q.to_string_with(sig), sig).unwrap(), q);
        }
    }

    #[test]
    fn evaluation_matches_recursive_oracle(a in arb_algebra(3, vec![2, 1, 0]), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_term(&mut rng, a.signature(), 2, 4);
        for x in 0..a.size() {
            for y in 0..a.size() {
                prop_assert_eq!(eval_term(&a, &t, &[x, y]).unwrap(), eval_naive(&a, &t, &[x, y]));
            }
        }
    }

    #[test]
    fn validity_matches_exhaustive_oracle(a in arb_algebra(3, vec![2, 1]), seed in any::<u64>()) {
        for q in random_quasi_identities(a.signature(), 3, 2, 2, 4, seed) {
            prop_assert_eq!(holds_in_algebra(&a, &q, &Limits::default()).unwrap(), holds_naive(&a, &q));
        }
    }

    #[test]
    fn extra_premises_never_break_validity(a in arb_algebra(3, vec![2, 1]), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for q in random_quasi_identities(a.signature(), 2, 2, 2, 4, seed) {
            let mut stronger = q.premises.clone();
            stronger.push(random_equation(&mut rng, a.signature(), 2, 2));
            let q2 = QuasiIdentity::new(stronger, q.conclusion.clone());
            if holds_in_algebra(&a, &q, &Limits::default()).unwrap() {
                prop_assert!(holds_in_algebra(&a, &q2, &Limits::default()).unwrap());
            }
        }
    }

    #[test]
    fn validity_is_invariant_under_relabelling(
        a in arb_algebra(4, vec![2, 1]),
        perm in Just((0..4usize).collect::<Vec<_>>()).prop_shuffle(),
        seed in any::<u64>(),
    ) {
        let perm: Vec<usize> = perm.into_iter().filter(|&x| x < a.size()).collect();
        let b = relabel(&a, &perm);
        for q in random_quasi_identities(a.signature(), 2, 2, 3, 4, seed) {
            prop_assert_eq!(
                holds_in_algebra(&a, &q, &Limits::default()).unwrap(),
                holds_in_algebra(&b, &q, &Limits::default()).unwrap()
            );
        }
    }
}

#[test]
fn passive_example_parses() {
    let sig = catalog::three_element_disc_with_constants().signature().clone();
    let q = parse_quasi_identity("d(x0,c0,c1) = x0 & d(x0,c1,c0) = x0 => c0 = c1", &sig).unwrap();
    assert_eq!(q.premises.len(), 2);
    assert_eq!(q.conclusion.to_string_with(&sig), "c0 = c1");
}

#[test]
fn bare_equation_is_an_identity() {
    let alg = FiniteAlgebra::from_fn(scasc::algebra::Signature::from_pairs(&[("f", 1)]).unwrap(), 2, |_, a| a[0]).unwrap();
    let q = parse_quasi_identity("f(x0) = x0", alg.signature()).unwrap();
    assert!(q.is_identity());
}

#[test]
fn dangling_equation_reports_end_of_input() {
    let sig = catalog::semilattice().signature().clone();
    match parse_quasi_identity("x0 = ", &sig) {
        Err(ParseError::Syntax { position: None, .. }) => {}
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn discriminator_values() {
    let a = catalog::three_element_disc();
    let t = parse_term("d(x0,x1,x2)", a.signature()).unwrap();
    assert_eq!(eval_term(&a, &t, &[2, 0, 1]).unwrap(), 2);
    assert_eq!(eval_term(&a, &t, &[0, 0, 1]).unwrap(), 1);
    let x3 = parse_term("x3", a.signature()).unwrap();
    assert_eq!(eval_term(&a, &x3, &[0, 0, 0, 2]).unwrap(), 2);
}

#[test]
fn passive_example_fails_only_in_the_larger_algebra() {
    let a = catalog::three_element_disc_with_constants();
    let q = parse_quasi_identity(PASSIVE, a.signature()).unwrap();
    assert!(!holds_in_algebra(&a, &q, &Limits::default()).unwrap());
    assert!(!holds_naive(&a, &q));
    let sub = a.induced(&[0, 1]).unwrap();
    assert!(holds_in_algebra(&sub, &q, &Limits::default()).unwrap());
    assert!(holds_naive(&sub, &q));
}
