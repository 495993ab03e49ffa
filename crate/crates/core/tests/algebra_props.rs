mod common;

use proptest::prelude::*;

use common::{all_maps, arb_algebra, arb_pair};
use scasc::algebra::{
    are_isomorphic, catalog, congruence_generated, decode_product_element, find_homomorphism, generated_subuniverse,
    is_homomorphism, is_simple, product, quotient, subalgebras_up_to_iso, Congruence, FiniteAlgebra,
};
use scasc::Limits;

fn homs_by_brute_force(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Vec<Vec<usize>> {
    all_maps(a.size(), b.size())
        .into_iter()
        .filter(|m| is_homomorphism(a, b, m))
        .collect()
}

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

/// Restricted growth strings of length `n`: every partition once.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for b in 0..=next {
            prefix.push(b);
            go(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

fn compatible(a: &FiniteAlgebra, labels: &[usize]) -> bool {
    let n = a.size();
    let sig = a.signature();
    (0..sig.len()).all(|op| {
        let r = sig.arity(op);
        let tuples = all_maps(r, n);
        tuples.iter().all(|s| {
            tuples.iter().all(|t| {
                !s.iter().zip(t).all(|(&x, &y)| labels[x] == labels[y])
                    || labels[a.apply(op, s)] == labels[a.apply(op, t)]
            })
        })
    })
}

fn refines(fine: &[usize], coarse: &[usize]) -> bool {
    (0..fine.len()).all(|x| (0..fine.len()).all(|y| fine[x] != fine[y] || coarse[x] == coarse[y]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hom_search_matches_brute_force((a, b) in arb_pair(3)) {
        let all = homs_by_brute_force(&a, &b);
        let found = find_homomorphism(&a, &b, false, &[]).unwrap();
        prop_assert_eq!(found.map(|h| h.map), all.first().cloned());
        let injective = all.iter().find(|m| {
            let mut seen = m.to_vec();
            seen.sort_unstable();
            seen.dedup();
            seen.len() == m.len()
        });
        let found = find_homomorphism(&a, &b, true, &[]).unwrap();
        prop_assert_eq!(found.map(|h| h.map), injective.cloned());
    }

    #[test]
    fn separating_homs_match_brute_force((a, b) in arb_pair(3), x in 0usize..3, y in 0usize..3) {
        let (x, y) = (x % a.size(), y % a.size());
        prop_assume!(x != y);
        let expected = homs_by_brute_force(&a, &b).into_iter().find(|m| m[x] != m[y]);
        let found = find_homomorphism(&a, &b, false, &[(x, y)]).unwrap();
        prop_assert_eq!(found.map(|h| h.map), expected);
    }

    #[test]
    fn generated_congruence_is_least_compatible_partition(
        a in arb_algebra(5, vec![2]),
        raw in proptest::collection::vec((0usize..5, 0usize..5), 0..3),
    ) {
        let n = a.size();
        let pairs: Vec<(usize, usize)> = raw.iter().map(|&(x, y)| (x % n, y % n)).collect();
        let cg = congruence_generated(&a, &pairs).unwrap();
        let candidates: Vec<Vec<usize>> = partitions(n)
            .into_iter()
            .filter(|p| pairs.iter().all(|&(x, y)| p[x] == p[y]) && compatible(&a, p))
            .collect();
        prop_assert!(candidates.iter().any(|p| p.as_slice() == cg.labels()));
        for p in &candidates {
            prop_assert!(refines(cg.labels(), p));
        }
    }

    #[test]
    fn subuniverse_closure_is_idempotent(a in arb_algebra(4, vec![2, 1]), seed in proptest::collection::vec(0usize..4, 1..3)) {
        let seed: Vec<usize> = seed.iter().map(|&x| x % a.size()).collect();
        let s = generated_subuniverse(&a, &seed).unwrap();
        prop_assert_eq!(generated_subuniverse(&a, &s).unwrap(), s.clone());
        for &x in &seed {
            prop_assert!(s.contains(&x));
        }
    }

    #[test]
    fn isomorphism_is_an_equivalence(a in arb_algebra(4, vec![2]), p in Just((0..4usize).collect::<Vec<_>>()).prop_shuffle()) {
        let perm: Vec<usize> = p.iter().copied().filter(|&x| x < a.size()).collect();
        let b = relabel(&a, &perm);
        let c = relabel(&b, &perm);
        prop_assert!(are_isomorphic(&a, &a).unwrap());
        prop_assert!(are_isomorphic(&a, &b).unwrap());
        prop_assert!(are_isomorphic(&b, &a).unwrap());
        prop_assert!(are_isomorphic(&b, &c).unwrap());
        prop_assert!(are_isomorphic(&a, &c).unwrap());
    }

    #[test]
    fn isomorphism_classes_are_consistent(a in arb_algebra(3, vec![2]), b in arb_algebra(3, vec![2]), c in arb_algebra(3, vec![2])) {
        let ab = are_isomorphic(&a, &b).unwrap();
        let bc = are_isomorphic(&b, &c).unwrap();
        let ac = are_isomorphic(&a, &c).unwrap();
        prop_assert_eq!(ab, are_isomorphic(&b, &a).unwrap());
        if ab && bc {
            prop_assert!(ac);
        }
    }
}

#[test]
fn product_rows_agree_with_coordinates() {
    let two = catalog::semilattice();
    let three = FiniteAlgebra::from_fn(two.signature().clone(), 3, |_, args| args[0].min(args[1])).unwrap();
    let p = product(&[&two, &three], &Limits::default()).unwrap();
    assert_eq!(p.size(), 6);
    for x in 0..6 {
        for y in 0..6 {
            let (cx, cy) = (decode_product_element(&[2, 3], x), decode_product_element(&[2, 3], y));
            let z = decode_product_element(&[2, 3], p.apply(0, &[x, y]));
            assert_eq!(z, vec![two.apply(0, &[cx[0], cy[0]]), three.apply(0, &[cx[1], cy[1]])]);
        }
    }
}

#[test]
fn constants_close_to_the_two_element_subuniverse() {
    let a = catalog::three_element_disc_with_constants();
    assert_eq!(generated_subuniverse(&a, &[]).unwrap(), vec![0, 1]);
}

#[test]
fn gluing_congruence_of_the_square_semilattice() {
    let s = catalog::semilattice();
    let sq = product(&[&s, &s], &Limits::default()).unwrap();
    // (0,0) = 0 and (0,1) = 1 in the mixed-radix encoding.
    let cg = congruence_generated(&sq, &[(0, 1)]).unwrap();
    let candidates: Vec<Vec<usize>> = partitions(4)
        .into_iter()
        .filter(|p| p[0] == p[1] && compatible(&sq, p))
        .collect();
    let expected = candidates
        .iter()
        .find(|p| candidates.iter().all(|q| refines(p, q)))
        .unwrap();
    assert_eq!(cg.labels(), expected.as_slice());
    assert!(!cg.is_total());
    assert!(!is_simple(&sq));
    // The least congruence only glues below (1,0); the three blocks form a chain.
    assert_eq!(cg.block_count(), 3);
    let chain = FiniteAlgebra::from_fn(s.signature().clone(), 3, |_, args| args[0].min(args[1])).unwrap();
    assert!(are_isomorphic(&quotient(&sq, &cg).unwrap(), &chain).unwrap());
    // Gluing the second coordinate everywhere is the kernel of the first projection.
    let kernel = congruence_generated(&sq, &[(0, 1), (2, 3)]).unwrap();
    assert!(are_isomorphic(&quotient(&sq, &kernel).unwrap(), &s).unwrap());
}

#[test]
fn disc_algebra_is_simple_by_enumeration() {
    let a = catalog::three_element_disc();
    assert!(is_simple(&a));
    for p in partitions(3) {
        if compatible(&a, &p) {
            let c = Congruence::canonical(&p);
            assert!(c.is_identity() || c.is_total());
        }
    }
}

#[test]
fn no_hom_from_three_element_disc_onto_its_two_element_subalgebra() {
    let a = catalog::three_element_disc_with_constants();
    let b = a.induced(&[0, 1]).unwrap();
    assert!(homs_by_brute_force(&a, &b).is_empty());
    assert!(find_homomorphism(&a, &b, false, &[]).unwrap().is_none());
}

#[test]
fn semilattice_embeds_into_its_square() {
    let s = catalog::semilattice();
    let sq = product(&[&s, &s], &Limits::default()).unwrap();
    let h = find_homomorphism(&s, &sq, true, &[]).unwrap().unwrap();
    assert!(h.is_injective());
    assert!(is_homomorphism(&s, &sq, &h.map));
}

#[test]
fn swapped_semilattice_is_isomorphic() {
    let s = catalog::semilattice();
    assert!(are_isomorphic(&s, &relabel(&s, &[1, 0])).unwrap());
    assert!(!are_isomorphic(&s, &product(&[&s, &s], &Limits::default()).unwrap()).unwrap());
}

#[test]
fn subalgebra_counts() {
    let limits = Limits::default();
    assert_eq!(subalgebras_up_to_iso(&catalog::two_element_disc_with_constants(), &limits).unwrap().len(), 1);
    let three = subalgebras_up_to_iso(&catalog::three_element_disc_with_constants(), &limits).unwrap();
    let universes: Vec<Vec<usize>> = three.iter().map(|s| s.universe.clone()).collect();
    assert_eq!(universes, vec![vec![0, 1], vec![0, 1, 2]]);
    assert_eq!(subalgebras_up_to_iso(&catalog::trivial_semilattice(), &limits).unwrap().len(), 1);
}
