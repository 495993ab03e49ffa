use serde::{Deserialize, Serialize};

use super::{find_discriminator_term, minimal_variety, Minimality};
use crate::admissibility::{refute_sc, RefuteBudget, RefuteOutcome};
use crate::error::{Error, Result};
use crate::free::{free_algebra, GeneratingClass};
use crate::limits::Limits;
use crate::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn as_str(self) -> &'static str {
        match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        }
    }
}

/// Why a tri-state came out the way it did.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Justification {
    /// A discriminator term exists, so the variety is almost structurally complete.
    DiscriminatorTerm,
    /// `F(1)` has an idempotent element.
    Idempotent,
    /// The discriminator variety is minimal.
    Minimal,
    /// No idempotent in `F(1)` and the discriminator variety is not minimal.
    NoIdempotentNotMinimal,
    /// A passive admissible quasi-identity fails in the class.
    RefutedByQuasiIdentity,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentWitness {
    /// Element index in `F(1)`.
    pub element: usize,
    pub term: Term,
}

#[derive(Clone, Debug, Default)]
pub struct VerdictOptions {
    pub limits: Limits,
    /// Also search for a refuting quasi-identity within this budget.
    pub refutation: Option<RefuteBudget>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    /// Yes: a term was found; no: rank-3 term functions exclude it; unknown: capacity.
    pub discriminator: Tri,
    pub discriminator_term: Option<Term>,
    pub is_discriminator_variety: bool,
    /// Yes/no as found; unknown when `F(1)` could not be built.
    pub idempotent: Tri,
    pub idempotent_in_f1: Option<IdempotentWitness>,
    pub f1_size: Option<usize>,
    pub minimal_variety: Tri,
    pub minimality: Option<Minimality>,
    pub asc: Tri,
    pub asc_justification: Justification,
    pub sc: Tri,
    pub sc_justification: Justification,
    pub refutation: Option<RefuteOutcome>,
    /// Capacity limits that left something undecided.
    pub notes: Vec<String>,
}

fn absorb<T>(r: Result<T>, notes: &mut Vec<String>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_capacity() => {
            notes.push(e.to_string());
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// SC/ASC verdict for the quasivariety generated by `class`.
///
/// With a discriminator term the variety is ASC, and for a finite language it
/// is SC iff `F(1)` has an idempotent element or the variety is minimal.
/// Without one, only a refuting quasi-identity (when a budget is given)
/// settles anything.
pub fn sc_verdict(class: &GeneratingClass, options: &VerdictOptions) -> Result<Verdict> {
    class.require_nontrivial()?;
    let limits = &options.limits;
    let mut notes = Vec::new();

    let disc_term = absorb(find_discriminator_term(class, limits), &mut notes)?;
    let (discriminator, discriminator_term) = match disc_term {
        Some(Some(t)) => (Tri::Yes, Some(t)),
        Some(None) => (Tri::No, None),
        None => (Tri::Unknown, None),
    };

    let (idempotent, idempotent_in_f1, f1_size) = if class.distinct_constants().is_some() {
        (Tri::No, None, None)
    } else {
        match absorb(free_algebra(class, 1, limits), &mut notes)? {
            Some(f1) => match f1.find_idempotent() {
                Some(e) => (
                    Tri::Yes,
                    Some(IdempotentWitness {
                        element: e,
                        term: f1.witness_term(e),
                    }),
                    Some(f1.len()),
                ),
                None => (Tri::No, None, Some(f1.len())),
            },
            None => (Tri::Unknown, None, None),
        }
    };

    let minimality = match &discriminator_term {
        Some(t) => absorb(minimal_variety(class, t, limits), &mut notes)?,
        None => None,
    };
    let minimal = match &minimality {
        Some(m) if m.minimal => Tri::Yes,
        Some(_) => Tri::No,
        None => Tri::Unknown,
    };

    let (mut asc, mut asc_justification) = (Tri::Unknown, Justification::Unknown);
    let (mut sc, mut sc_justification) = (Tri::Unknown, Justification::Unknown);
    if discriminator == Tri::Yes {
        asc = Tri::Yes;
        asc_justification = Justification::DiscriminatorTerm;
        if idempotent == Tri::Yes {
            sc = Tri::Yes;
            sc_justification = Justification::Idempotent;
        } else if minimal == Tri::Yes {
            sc = Tri::Yes;
            sc_justification = Justification::Minimal;
        } else if minimal == Tri::No && idempotent == Tri::No {
            sc = Tri::No;
            sc_justification = Justification::NoIdempotentNotMinimal;
        }
    }

    let refutation = match options.refutation {
        Some(budget) => Some(refute_sc(class, budget, limits)?),
        None => None,
    };
    if let Some(RefuteOutcome::Found(_)) = &refutation {
        if sc == Tri::Yes {
            return Err(Error::Consistency(
                "a refuting quasi-identity was found for a structurally complete class".into(),
            ));
        }
        if sc == Tri::Unknown {
            sc = Tri::No;
            sc_justification = Justification::RefutedByQuasiIdentity;
        }
    }
    if let Some(RefuteOutcome::Capacity { reason, .. }) = &refutation {
        notes.push(reason.clone());
    }

    Ok(Verdict {
        discriminator,
        is_discriminator_variety: discriminator == Tri::Yes,
        discriminator_term,
        idempotent,
        idempotent_in_f1,
        f1_size,
        minimal_variety: minimal,
        minimality,
        asc,
        asc_justification,
        sc,
        sc_justification,
        refutation,
        notes,
    })
}
