//! Discriminator terms, minimality of discriminator varieties, the SC/ASC
//! verdict and the random-algebra survey.

mod survey;
mod verdict;

pub use survey::{murskii_survey, random_algebra, SurveyCounts, SurveyReport, SurveySample, DEFAULT_SEED};
pub use verdict::{sc_verdict, IdempotentWitness, Justification, Tri, Verdict, VerdictOptions};

use serde::{Deserialize, Serialize};

use crate::algebra::{all_subuniverses, catalog::disc, find_homomorphism, generated_subuniverse, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::free::{free_algebra_until, GeneratingClass};
use crate::limits::Limits;
use crate::term::{eval_unchecked, Term};

/// Products `A_i × A_j` up to this size have their 2-generated subuniverses
/// checked against the discriminator before any free algebra is built.
const PRUNE_PRODUCT_SIZE: usize = 32;

/// Term functions preserve every subuniverse of every product of members, so
/// the discriminator must too. Returns `false` when some 1- or 2-generated
/// subuniverse of a small product `A_i × A_j` is not preserved.
fn disc_may_be_term(class: &GeneratingClass) -> Result<bool> {
    let members = class.members();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i..] {
            let (na, nb) = (a.size(), b.size());
            if na * nb > PRUNE_PRODUCT_SIZE {
                continue;
            }
            let prod = crate::algebra::product(&[a, b], &Limits::default())?;
            let n = prod.size();
            let mut inside = vec![false; n];
            for x in 0..n {
                for y in x..n {
                    let s = generated_subuniverse(&prod, &[x, y])?;
                    inside.iter_mut().for_each(|m| *m = false);
                    for &e in &s {
                        inside[e] = true;
                    }
                    for &p in &s {
                        for &q in &s {
                            for &r in &s {
                                let d = disc(p / nb, q / nb, r / nb) * nb + disc(p % nb, q % nb, r % nb);
                                if !inside[d] {
                                    return Ok(false);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Does `t` realize the discriminator on every member?
pub fn is_discriminator_term(class: &GeneratingClass, t: &Term) -> Result<bool> {
    t.check(class.signature())?;
    if t.max_var().is_some_and(|m| m > 2) {
        return Ok(false);
    }
    Ok(class.members().iter().all(|m| {
        let n = m.size();
        (0..n * n * n).all(|i| {
            let (a, b, c) = (i / (n * n), (i / n) % n, i % n);
            eval_unchecked(m, t, &[a, b, c]) == disc(a, b, c)
        })
    }))
}

/// A ternary term interpreted as the discriminator in every member, of
/// minimal depth; `None` if the term functions of rank 3 do not contain it.
/// Running out of capacity is an error, distinct from `None`.
pub fn find_discriminator_term(class: &GeneratingClass, limits: &Limits) -> Result<Option<Term>> {
    class.require_nontrivial()?;
    if !disc_may_be_term(class)? {
        return Ok(None);
    }
    // Coordinates of F(3) are (member, a, b, c) in lexicographic order.
    let mut target = Vec::new();
    for m in class.members() {
        let n = m.size();
        for i in 0..n * n * n {
            target.push(disc(i / (n * n), (i / n) % n, i % n) as u8);
        }
    }
    match free_algebra_until(class, 3, None, limits, |v| v == target.as_slice()) {
        Ok((f3, hit)) => Ok(hit.map(|e| f3.witness_term(e))),
        Err(e) if e.is_capacity() => match disc_from_binary_clone(class, limits)? {
            Some(t) if is_discriminator_term(class, &t)? => Ok(Some(t)),
            _ => Err(e),
        },
        Err(e) => Err(e),
    }
}

/// For a single algebra whose binary term operations include `max`, `min`,
/// the characteristic maps `χ_c` (valued in `{0, n-1}`) and the slices
/// `d(x0,x1,c)`, the discriminator is `max_c min(χ_c(x2), d(x0,x1,c))`.
/// Primal algebras always qualify. The result is not of minimal depth; it is
/// only used once the rank-3 search has run out of room.
fn disc_from_binary_clone(class: &GeneratingClass, limits: &Limits) -> Result<Option<Term>> {
    let [alg] = class.members() else {
        return Ok(None);
    };
    let n = alg.size();
    let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<u8> { (0..n * n).map(|i| f(i / n, i % n) as u8).collect() };
    let mut targets = vec![table(&|a, b| a.max(b)), table(&|a, b| a.min(b))];
    for c in 0..n {
        targets.push(table(&|a, _| if a == c { n - 1 } else { 0 }));
        targets.push(table(&|a, b| disc(a, b, c)));
    }
    let mut found = vec![false; targets.len()];
    let mut missing = targets.len();
    let mut note = |v: &[u8]| {
        for (t, f) in targets.iter().zip(found.iter_mut()) {
            if !*f && t.as_slice() == v {
                *f = true;
                missing -= 1;
            }
        }
        missing == 0
    };
    let (f2, _) = free_algebra_until(class, 2, None, limits, &mut note)?;
    if missing > 0 {
        return Ok(None);
    }
    let term = |f: &dyn Fn(usize, usize) -> usize| f2.index_of(&table(f)).map(|e| f2.witness_term(e)).expect("target found");
    let max = term(&|a, b| a.max(b));
    let min = term(&|a, b| a.min(b));
    let (x0, x1, x2) = (Term::Var(0), Term::Var(1), Term::Var(2));
    let mut acc: Option<Term> = None;
    for c in 0..n {
        let chi = term(&|a, _| if a == c { n - 1 } else { 0 }).substitute(&[x2.clone(), x2.clone()]);
        let slice = term(&|a, b| disc(a, b, c)).substitute(&[x0.clone(), x1.clone()]);
        let t = min.substitute(&[chi, slice]);
        acc = Some(match acc {
            None => t,
            Some(p) => max.substitute(&[p, t]),
        });
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MinimalityCertificate {
    /// Every nontrivial subalgebra of a member is the whole member.
    NoProperNontrivialSubalgebra,
    /// Every nontrivial member embeds into every nontrivial subalgebra.
    AllSubalgebrasEmbedMembers,
    /// `missing_member` has no embedding into the subalgebra `subuniverse` of `member`.
    MissingEmbedding {
        member: usize,
        subuniverse: Vec<usize>,
        missing_member: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minimality {
    pub minimal: bool,
    pub certificate: MinimalityCertificate,
}

fn require_discriminator(class: &GeneratingClass, disc_term: &Term) -> Result<()> {
    if is_discriminator_term(class, disc_term)? {
        Ok(())
    } else {
        Err(Error::Precondition("the given term is not a discriminator term for the class".into()))
    }
}

/// Nontrivial subalgebras of nontrivial members as `(member, universe, algebra)`.
fn nontrivial_subalgebras(class: &GeneratingClass, limits: &Limits) -> Result<Vec<(usize, Vec<usize>, FiniteAlgebra)>> {
    let mut out = Vec::new();
    for (i, m) in class.members().iter().enumerate() {
        if m.is_trivial() {
            continue;
        }
        for u in all_subuniverses(m, limits)? {
            if u.len() >= 2 {
                let alg = m.induced(&u)?;
                out.push((i, u, alg));
            }
        }
    }
    Ok(out)
}

/// Whether the discriminator variety generated by `class` is minimal: every
/// simple algebra in it lies in `S(K)`, so it is minimal exactly when every
/// nontrivial member embeds into every nontrivial subalgebra of a member.
/// Trivial members generate nothing and are ignored.
pub fn minimal_variety(class: &GeneratingClass, disc_term: &Term, limits: &Limits) -> Result<Minimality> {
    require_discriminator(class, disc_term)?;
    let members = class.members();
    let mut all_whole = true;
    for (i, universe, b) in nontrivial_subalgebras(class, limits)? {
        all_whole &= universe.len() == members[i].size();
        for (j, a) in members.iter().enumerate() {
            if a.is_trivial() {
                continue;
            }
            if find_homomorphism(a, &b, true, &[])?.is_none() {
                return Ok(Minimality {
                    minimal: false,
                    certificate: MinimalityCertificate::MissingEmbedding {
                        member: i,
                        subuniverse: universe,
                        missing_member: j,
                    },
                });
            }
        }
    }
    Ok(Minimality {
        minimal: true,
        certificate: if all_whole {
            MinimalityCertificate::NoProperNontrivialSubalgebra
        } else {
            MinimalityCertificate::AllSubalgebrasEmbedMembers
        },
    })
}

/// A pair of elements of `source_member` that no homomorphism into the
/// subalgebra `subuniverse` of `member` separates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationFailure {
    pub member: usize,
    pub subuniverse: Vec<usize>,
    pub source_member: usize,
    pub pair: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsequenceReport {
    pub subalgebras_checked: usize,
    pub pairs_checked: usize,
    pub failure: Option<SeparationFailure>,
}

impl ConsequenceReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// For a minimal discriminator variety, checks that every nontrivial member
/// lies in `SP(B)` for every nontrivial subalgebra `B` of a member: the
/// homomorphisms into `B` separate all pairs of distinct elements.
pub fn quasivariety_minimality_consequence(
    class: &GeneratingClass,
    disc_term: &Term,
    limits: &Limits,
) -> Result<ConsequenceReport> {
    if !minimal_variety(class, disc_term, limits)?.minimal {
        return Err(Error::Precondition("the variety is not minimal".into()));
    }
    let mut report = ConsequenceReport {
        subalgebras_checked: 0,
        pairs_checked: 0,
        failure: None,
    };
    for (i, universe, b) in nontrivial_subalgebras(class, limits)? {
        report.subalgebras_checked += 1;
        for (j, a) in class.members().iter().enumerate() {
            for x in 0..a.size() {
                for y in x + 1..a.size() {
                    report.pairs_checked += 1;
                    if find_homomorphism(a, &b, false, &[(x, y)])?.is_none() {
                        report.failure = Some(SeparationFailure {
                            member: i,
                            subuniverse: universe,
                            source_member: j,
                            pair: (x, y),
                        });
                        return Ok(report);
                    }
                }
            }
        }
    }
    Ok(report)
}
