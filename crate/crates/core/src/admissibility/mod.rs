//! Validity, admissibility and activity of quasi-identities relative to the
//! quasivariety generated by a finite class, and the bounded search for
//! passive admissible quasi-identities that refute structural completeness.

mod refute;

pub use refute::{refute_sc, RefuteBudget, RefuteOutcome, Refutation};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free::{find_assignment, fp_algebra, free_algebra, pe_satisfiable_in_free, GeneratingClass, TermFunctionAlgebra};
use crate::limits::Limits;
use crate::term::{find_falsifying_assignment, QuasiIdentity, Term};

/// An assignment into a member of the class under which a quasi-identity fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FalsifyingAssignment {
    pub member: usize,
    pub assignment: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityCheck {
    pub holds: bool,
    pub falsifying: Option<FalsifyingAssignment>,
}

/// A quasi-identity holds in `Q(K)` iff it holds in every member, since
/// quasi-identities are preserved by subalgebras, products and ultraproducts.
pub fn holds_in_quasivariety(class: &GeneratingClass, q: &QuasiIdentity, limits: &Limits) -> Result<ValidityCheck> {
    for (j, m) in class.members().iter().enumerate() {
        if let Some(assignment) = find_falsifying_assignment(m, q, limits)? {
            return Ok(ValidityCheck {
                holds: false,
                falsifying: Some(FalsifyingAssignment { member: j, assignment }),
            });
        }
    }
    Ok(ValidityCheck {
        holds: true,
        falsifying: None,
    })
}

/// Value of `t` in a closed term-function algebra, computed through its
/// operations on element indices.
fn eval_in_closure(tfa: &TermFunctionAlgebra, t: &Term) -> Result<usize> {
    match t {
        Term::Var(i) => Ok(tfa.generators()[*i]),
        Term::App(op, args) => {
            let vals = args.iter().map(|a| eval_in_closure(tfa, a)).collect::<Result<Vec<_>>>()?;
            tfa.apply(*op, &vals)
                .ok_or_else(|| Error::Consistency("finitely presented algebra is not closed".into()))
        }
    }
}

/// The same question answered through `P_φ`: `q` holds in `Q(K)` iff the
/// conclusion holds in `P_φ` at the generators.
pub fn holds_via_presentation(class: &GeneratingClass, q: &QuasiIdentity, limits: &Limits) -> Result<bool> {
    q.check(class.signature())?;
    let k = q.var_count().max(1);
    let p = fp_algebra(class, &q.premises, k, limits)?;
    Ok(eval_in_closure(&p, &q.conclusion.lhs)? == eval_in_closure(&p, &q.conclusion.rhs)?)
}

/// Both validity paths; disagreement is an internal-consistency error.
pub fn holds_in_quasivariety_checked(
    class: &GeneratingClass,
    q: &QuasiIdentity,
    limits: &Limits,
) -> Result<ValidityCheck> {
    let direct = holds_in_quasivariety(class, q, limits)?;
    let via = holds_via_presentation(class, q, limits)?;
    if direct.holds != via {
        return Err(Error::Consistency(format!(
            "direct validity ({}) disagrees with the finitely presented algebra ({via})",
            direct.holds
        )));
    }
    Ok(direct)
}

/// An assignment of the variables to elements of `F(rank)` under which the
/// quasi-identity fails in the free algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeCounterexample {
    pub rank: usize,
    pub assignment: Vec<usize>,
    pub terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibilityMethod {
    /// Valid in the quasivariety, hence in its free algebras.
    ValidInQuasivariety,
    /// The premises have no solution in `F(1)`, hence none in any free algebra.
    PremisesUnsatisfiable,
    /// Checked exhaustively in the free algebra of the given rank.
    FreeAlgebra(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissibility {
    pub admissible: bool,
    pub method: AdmissibilityMethod,
    pub counterexample: Option<FreeCounterexample>,
}

/// Whether `q` holds in the free algebra of `Q(K)` of rank `rank`.
pub fn holds_in_free_algebra(
    class: &GeneratingClass,
    q: &QuasiIdentity,
    rank: usize,
    limits: &Limits,
) -> Result<Option<FreeCounterexample>> {
    q.check(class.signature())?;
    let f = free_algebra(class, rank, limits)?;
    Ok(counterexample_in(&f, q, limits)?.map(|assignment| FreeCounterexample {
        rank,
        terms: assignment.iter().map(|&e| f.witness_term(e)).collect(),
        assignment,
    }))
}

fn counterexample_in(f: &TermFunctionAlgebra, q: &QuasiIdentity, limits: &Limits) -> Result<Option<Vec<usize>>> {
    find_assignment(f, &q.premises, Some(&q.conclusion), q.var_count(), limits)
}

/// `q` is admissible iff it holds in the free algebra of denumerable rank.
///
/// Any failure there is witnessed in `F(m)`, `m` the largest member size:
/// the failing coordinate `(A, ā)` takes at most `|A|` distinct values, and
/// identifying the variables that `ā` identifies keeps the premises true and
/// the conclusion false. Valid and passive quasi-identities are recognized
/// before any free algebra beyond `F(1)` is built; otherwise ranks `1..=m`
/// are searched in order and the first counterexample is returned.
pub fn is_admissible(class: &GeneratingClass, q: &QuasiIdentity, limits: &Limits) -> Result<Admissibility> {
    q.check(class.signature())?;
    class.require_nontrivial()?;
    if holds_in_quasivariety(class, q, limits)?.holds {
        return Ok(Admissibility {
            admissible: true,
            method: AdmissibilityMethod::ValidInQuasivariety,
            counterexample: None,
        });
    }
    if !pe_satisfiable_in_free(class, &q.premises, limits)?.satisfiable {
        return Ok(Admissibility {
            admissible: true,
            method: AdmissibilityMethod::PremisesUnsatisfiable,
            counterexample: None,
        });
    }
    let m = class.max_size();
    for rank in 1..=m {
        if let Some(c) = holds_in_free_algebra(class, q, rank, limits)? {
            return Ok(Admissibility {
                admissible: false,
                method: AdmissibilityMethod::FreeAlgebra(rank),
                counterexample: Some(c),
            });
        }
    }
    Ok(Admissibility {
        admissible: true,
        method: AdmissibilityMethod::FreeAlgebra(m),
        counterexample: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Activity {
    Active,
    Passive,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub valid_in_q: bool,
    pub admissible: bool,
    pub activity: Activity,
    /// Member assignment falsifying `q` when it is not valid.
    pub falsifying: Option<FalsifyingAssignment>,
    pub admissibility_method: AdmissibilityMethod,
    /// Free-algebra assignment falsifying `q` when it is not admissible.
    pub free_counterexample: Option<FreeCounterexample>,
    /// Witness terms in `x0` of an `F(1)` solution of the premises when active.
    pub satisfying_f1: Option<Vec<Term>>,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match (self.admissible, self.activity) {
            (false, _) => "not admissible",
            (true, Activity::Passive) => "passive-admissible",
            (true, _) => "active-admissible",
        };
        let validity = if self.valid_in_q { "valid" } else { "not valid" };
        write!(f, "{kind}, {validity}")
    }
}

pub fn classify(class: &GeneratingClass, q: &QuasiIdentity, limits: &Limits) -> Result<Classification> {
    let validity = holds_in_quasivariety(class, q, limits)?;
    let adm = is_admissible(class, q, limits)?;
    let (activity, satisfying_f1) = if adm.admissible {
        let pe = pe_satisfiable_in_free(class, &q.premises, limits)?;
        if pe.satisfiable {
            (Activity::Active, pe.terms)
        } else {
            (Activity::Passive, None)
        }
    } else {
        (Activity::NotApplicable, None)
    };
    Ok(Classification {
        valid_in_q: validity.holds,
        admissible: adm.admissible,
        activity,
        falsifying: validity.falsifying,
        admissibility_method: adm.method,
        free_counterexample: adm.counterexample,
        satisfying_f1,
    })
}
