use std::collections::{BTreeSet, VecDeque};

use super::finite::{generated_subuniverse, FiniteAlgebra};
use super::hom::are_isomorphic;
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    pub universe: Vec<usize>,
    pub algebra: FiniteAlgebra,
}

/// Every nonempty subuniverse, ordered by size then lexicographically.
///
/// Walks the subuniverse lattice upward from the minimal ones, so the cost
/// tracks the number of subuniverses rather than `2^size`; the carrier is
/// still bounded by `limits.subset_carrier`.
pub fn all_subuniverses(alg: &FiniteAlgebra, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let n = alg.size();
    if n > limits.subset_carrier {
        return Err(Error::capacity("subset enumeration carrier", limits.subset_carrier, n));
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    if alg.signature().has_constants() {
        let s = generated_subuniverse(alg, &[])?;
        seen.insert(s.clone());
        queue.push_back(s);
    } else {
        for a in 0..n {
            let s = generated_subuniverse(alg, &[a])?;
            if seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    while let Some(s) = queue.pop_front() {
        let mut member = vec![false; n];
        for &e in &s {
            member[e] = true;
        }
        for a in (0..n).filter(|&a| !member[a]) {
            let mut seed = s.clone();
            seed.push(a);
            let t = generated_subuniverse(alg, &seed)?;
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Subalgebras deduplicated by isomorphism; the representative kept for each
/// class is the first subuniverse in `all_subuniverses` order.
pub fn subalgebras_up_to_iso(alg: &FiniteAlgebra, limits: &Limits) -> Result<Vec<Subalgebra>> {
    let mut kept: Vec<Subalgebra> = Vec::new();
    for universe in all_subuniverses(alg, limits)? {
        let algebra = alg.induced(&universe)?;
        let mut duplicate = false;
        for k in kept.iter().filter(|k| k.universe.len() == universe.len()) {
            if are_isomorphic(&k.algebra, &algebra)? {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            kept.push(Subalgebra { universe, algebra });
        }
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn two_element_disc_with_constants_has_one_subalgebra() {
        let subs = subalgebras_up_to_iso(&catalog::two_element_disc_with_constants(), &Limits::default()).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].universe, vec![0, 1]);
    }

    #[test]
    fn three_element_disc_with_constants_has_two() {
        let subs =
            subalgebras_up_to_iso(&catalog::three_element_disc_with_constants(), &Limits::default()).unwrap();
        let universes: Vec<_> = subs.iter().map(|s| s.universe.clone()).collect();
        assert_eq!(universes, vec![vec![0, 1], vec![0, 1, 2]]);
    }

    #[test]
    fn trivial_algebra_has_one() {
        let subs = subalgebras_up_to_iso(&catalog::trivial_semilattice(), &Limits::default()).unwrap();
        assert_eq!(subs.len(), 1);
    }

    #[test]
    fn pure_disc_subalgebras_dedup_by_size() {
        // Every subset is a subuniverse; up to isomorphism only the size matters.
        let a = catalog::three_element_disc();
        assert_eq!(all_subuniverses(&a, &Limits::default()).unwrap().len(), 7);
        assert_eq!(subalgebras_up_to_iso(&a, &Limits::default()).unwrap().len(), 3);
    }

    #[test]
    fn carrier_cap_is_enforced() {
        let limits = Limits {
            subset_carrier: 2,
            ..Limits::default()
        };
        assert!(all_subuniverses(&catalog::three_element_disc(), &limits)
            .unwrap_err()
            .is_capacity());
    }
}
