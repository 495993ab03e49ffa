use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::admissibility::{classify, Activity, AdmissibilityMethod, Classification, RefuteOutcome};
use crate::algebra::{find_homomorphism, is_subuniverse, Signature};
use crate::discriminator::{is_discriminator_term, MinimalityCertificate, Tri, Verdict};
use crate::error::{Error, Result};
use crate::free::{free_algebra, GeneratingClass, TermFunctionAlgebra};
use crate::limits::Limits;
use crate::term::{parse_quasi_identity, parse_term, QuasiIdentity, Term};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentReport {
    pub element: usize,
    pub term: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MinimalityReport {
    NoProperNontrivialSubalgebra,
    AllSubalgebrasEmbedMembers,
    MissingEmbedding {
        member: String,
        subuniverse: Vec<usize>,
        missing_member: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum RefutationReport {
    Found {
        quasi_identity: String,
        presented_size: usize,
        candidates: usize,
    },
    Exhausted {
        candidates: usize,
    },
    Capacity {
        candidates: usize,
        reason: String,
    },
}

impl RefutationReport {
    pub fn new(outcome: &RefuteOutcome, sig: &Signature) -> Self {
        match outcome {
            RefuteOutcome::Found(r) => RefutationReport::Found {
                quasi_identity: r.quasi_identity.to_string_with(sig),
                presented_size: r.presented_size,
                candidates: r.candidates,
            },
            RefuteOutcome::Exhausted { candidates } => RefutationReport::Exhausted { candidates: *candidates },
            RefuteOutcome::Capacity { candidates, reason } => RefutationReport::Capacity {
                candidates: *candidates,
                reason: reason.clone(),
            },
        }
    }
}

/// A verdict with certificates printed in the term grammar and members named.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub algebras: Vec<String>,
    pub signature: String,
    pub discriminator: Tri,
    pub discriminator_term: Option<String>,
    pub is_discriminator_variety: bool,
    pub idempotent: Tri,
    pub idempotent_in_f1: Option<IdempotentReport>,
    pub f1_size: Option<usize>,
    pub minimal_variety: Tri,
    pub minimality: Option<MinimalityReport>,
    pub asc: Tri,
    pub asc_justification: String,
    pub sc: Tri,
    pub sc_justification: String,
    pub refutation: Option<RefutationReport>,
    pub notes: Vec<String>,
}

fn tag<T: Serialize>(value: &T) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}

impl VerdictReport {
    pub fn new(verdict: &Verdict, names: &[String], sig: &Signature) -> Self {
        let name = |i: usize| names.get(i).cloned().unwrap_or_else(|| format!("#{i}"));
        VerdictReport {
            algebras: names.to_vec(),
            signature: sig.to_string(),
            discriminator: verdict.discriminator,
            discriminator_term: verdict.discriminator_term.as_ref().map(|t| t.to_string_with(sig)),
            is_discriminator_variety: verdict.is_discriminator_variety,
            idempotent: verdict.idempotent,
            idempotent_in_f1: verdict.idempotent_in_f1.as_ref().map(|w| IdempotentReport {
                element: w.element,
                term: w.term.to_string_with(sig),
            }),
            f1_size: verdict.f1_size,
            minimal_variety: verdict.minimal_variety,
            minimality: verdict.minimality.as_ref().map(|m| match &m.certificate {
                MinimalityCertificate::NoProperNontrivialSubalgebra => MinimalityReport::NoProperNontrivialSubalgebra,
                MinimalityCertificate::AllSubalgebrasEmbedMembers => MinimalityReport::AllSubalgebrasEmbedMembers,
                MinimalityCertificate::MissingEmbedding {
                    member,
                    subuniverse,
                    missing_member,
                } => MinimalityReport::MissingEmbedding {
                    member: name(*member),
                    subuniverse: subuniverse.clone(),
                    missing_member: name(*missing_member),
                },
            }),
            asc: verdict.asc,
            asc_justification: tag(&verdict.asc_justification),
            sc: verdict.sc,
            sc_justification: tag(&verdict.sc_justification),
            refutation: verdict.refutation.as_ref().map(|r| RefutationReport::new(r, sig)),
            notes: verdict.notes.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "algebras: {}", self.algebras.join(", "));
        let _ = writeln!(out, "signature: {}", self.signature);
        let disc = match (&self.discriminator_term, self.discriminator) {
            (Some(t), _) => t.clone(),
            (None, Tri::Unknown) => "unknown(budget)".into(),
            (None, _) => "none".into(),
        };
        let _ = writeln!(out, "discriminator term: {disc}");
        let idem = match (&self.idempotent_in_f1, self.idempotent) {
            (Some(w), _) => format!("{} (element {})", w.term, w.element),
            (None, t) => t.as_str().to_string(),
        };
        let _ = writeln!(out, "idempotent in F(1): {idem}");
        let minimal = match &self.minimality {
            Some(MinimalityReport::NoProperNontrivialSubalgebra) => "yes (no proper nontrivial subalgebra)".into(),
            Some(MinimalityReport::AllSubalgebrasEmbedMembers) => {
                "yes (every nontrivial subalgebra embeds every member)".into()
            }
            Some(MinimalityReport::MissingEmbedding {
                member,
                subuniverse,
                missing_member,
            }) => format!("no ({missing_member} does not embed into subalgebra {subuniverse:?} of {member})"),
            None => self.minimal_variety.as_str().to_string(),
        };
        let _ = writeln!(out, "minimal variety: {minimal}");
        let _ = writeln!(out, "asc: {} ({})", self.asc.as_str(), self.asc_justification);
        let _ = writeln!(out, "sc: {} ({})", self.sc.as_str(), self.sc_justification);
        if let Some(r) = &self.refutation {
            let _ = writeln!(out, "refutation: {}", r.to_text());
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

impl RefutationReport {
    pub fn to_text(&self) -> String {
        match self {
            RefutationReport::Found { quasi_identity, .. } => quasi_identity.clone(),
            RefutationReport::Exhausted { candidates } => format!("none ({candidates} premise sets examined)"),
            RefutationReport::Capacity { reason, .. } => format!("none (budget: {reason})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FalsifyingReport {
    pub member: String,
    pub assignment: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeCounterexampleReport {
    pub rank: usize,
    pub assignment: Vec<usize>,
    pub terms: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub quasi_identity: String,
    pub summary: String,
    pub valid_in_q: bool,
    pub admissible: bool,
    pub activity: Activity,
    pub admissibility_method: String,
    pub falsifying: Option<FalsifyingReport>,
    pub free_counterexample: Option<FreeCounterexampleReport>,
    pub satisfying_f1: Option<Vec<String>>,
}

impl ClassificationReport {
    pub fn new(q: &QuasiIdentity, c: &Classification, names: &[String], sig: &Signature) -> Self {
        let print = |ts: &[Term]| ts.iter().map(|t| t.to_string_with(sig)).collect::<Vec<_>>();
        ClassificationReport {
            quasi_identity: q.to_string_with(sig),
            summary: c.to_string(),
            valid_in_q: c.valid_in_q,
            admissible: c.admissible,
            activity: c.activity,
            admissibility_method: match c.admissibility_method {
                AdmissibilityMethod::ValidInQuasivariety => "valid-in-quasivariety".into(),
                AdmissibilityMethod::PremisesUnsatisfiable => "premises-unsatisfiable-in-F(1)".into(),
                AdmissibilityMethod::FreeAlgebra(r) => format!("checked-in-F({r})"),
            },
            falsifying: c.falsifying.as_ref().map(|f| FalsifyingReport {
                member: names.get(f.member).cloned().unwrap_or_else(|| format!("#{}", f.member)),
                assignment: f.assignment.clone(),
            }),
            free_counterexample: c.free_counterexample.as_ref().map(|f| FreeCounterexampleReport {
                rank: f.rank,
                assignment: f.assignment.clone(),
                terms: print(&f.terms),
            }),
            satisfying_f1: c.satisfying_f1.as_deref().map(print),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.summary);
        if let Some(f) = &self.falsifying {
            let _ = writeln!(out, "falsified in {} at {:?}", f.member, f.assignment);
        }
        if let Some(f) = &self.free_counterexample {
            let _ = writeln!(out, "falsified in F({}) at [{}]", f.rank, f.terms.join(", "));
        }
        if let Some(s) = &self.satisfying_f1 {
            let _ = writeln!(out, "premises satisfied in F(1) at [{}]", s.join(", "));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeReport {
    pub rank: usize,
    pub size: usize,
    pub terms: Option<Vec<String>>,
}

impl FreeReport {
    pub fn new(f: &TermFunctionAlgebra, with_terms: bool) -> Self {
        let sig = f.signature();
        FreeReport {
            rank: f.rank(),
            size: f.len(),
            terms: with_terms.then(|| (0..f.len()).map(|e| f.witness_term(e).to_string_with(sig)).collect()),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("size {}\n", self.size);
        for (i, t) in self.terms.iter().flatten().enumerate() {
            let _ = writeln!(out, "{i} {t}");
        }
        out
    }
}

fn fail(what: impl Into<String>) -> Error {
    Error::Consistency(what.into())
}

/// Re-checks every certificate of a verdict report against the class: the
/// discriminator term re-evaluates, the idempotent term is idempotent in
/// `F(1)`, subalgebra certificates are closed sets with the claimed missing
/// embedding, and a refuting quasi-identity classifies as passive-admissible
/// and not valid.
pub fn verify_verdict_report(report: &VerdictReport, class: &GeneratingClass, limits: &Limits) -> Result<()> {
    let sig = class.signature();
    if report.sc == Tri::Yes && report.asc != Tri::Yes {
        return Err(fail("sc = yes without asc = yes"));
    }
    if let Some(text) = &report.discriminator_term {
        let t = parse_term(text, sig)?;
        if !is_discriminator_term(class, &t)? {
            return Err(fail(format!("`{text}` is not a discriminator term")));
        }
    }
    if let Some(w) = &report.idempotent_in_f1 {
        let t = parse_term(&w.term, sig)?;
        let f1 = free_algebra(class, 1, limits)?;
        let v = f1.eval_term(&t, &[f1.generators()[0]]);
        let e = f1
            .index_of(&v)
            .ok_or_else(|| fail("idempotent term is not an element of F(1)"))?;
        if !is_idempotent_element(&f1, e) {
            return Err(fail(format!("`{}` is not idempotent in F(1)", w.term)));
        }
    }
    if let Some(MinimalityReport::MissingEmbedding {
        member,
        subuniverse,
        missing_member,
    }) = &report.minimality
    {
        let index = |n: &str| {
            report
                .algebras
                .iter()
                .position(|a| a == n)
                .ok_or_else(|| fail(format!("unknown member `{n}`")))
        };
        let host = &class.members()[index(member)?];
        if !is_subuniverse(host, subuniverse) {
            return Err(fail(format!("{subuniverse:?} is not a subuniverse of {member}")));
        }
        let b = host.induced(subuniverse)?;
        let a = &class.members()[index(missing_member)?];
        if find_homomorphism(a, &b, true, &[])?.is_some() {
            return Err(fail(format!("{missing_member} does embed into {subuniverse:?}")));
        }
    }
    if let Some(RefutationReport::Found { quasi_identity, .. }) = &report.refutation {
        let q = parse_quasi_identity(quasi_identity, sig)?;
        let c = classify(class, &q, limits)?;
        if c.valid_in_q || !c.admissible || c.activity != Activity::Passive {
            return Err(fail(format!("refutation `{quasi_identity}` classifies as {c}")));
        }
    }
    Ok(())
}

fn is_idempotent_element(f: &TermFunctionAlgebra, e: usize) -> bool {
    let sig = f.signature();
    (0..sig.len()).all(|op| f.apply(op, &vec![e; sig.arity(op)]) == Some(e))
}
