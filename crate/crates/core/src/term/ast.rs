use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::Signature;
use crate::error::{Error, Result};

/// A term over a signature: a variable `x<i>` or an operation symbol (by
/// signature index) applied to arguments. Constants are applications with no
/// arguments.
///
/// The derived order (variables first, then by symbol index, then by
/// arguments) is the canonical term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Term {
    Var(usize),
    App(usize, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn app(op: usize, args: Vec<Term>) -> Term {
        Term::App(op, args)
    }

    /// Variables have depth 0; an application is one deeper than its deepest
    /// argument, so constants have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn nodes(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::nodes).sum::<usize>(),
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            Term::Var(i) => Some(*i),
            Term::App(_, args) => args.iter().filter_map(Term::max_var).max(),
        }
    }

    pub fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            Term::Var(i) => {
                if !out.contains(i) {
                    out.push(*i);
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Every symbol exists in `sig` with the arity used here.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            Term::Var(_) => Ok(()),
            Term::App(op, args) => {
                if *op >= sig.len() {
                    return Err(Error::UnknownSymbol(format!("#{op}")));
                }
                if sig.arity(*op) != args.len() {
                    return Err(Error::ArityMismatch {
                        name: sig.name(*op).to_string(),
                        expected: sig.arity(*op),
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| a.check(sig))
            }
        }
    }

    /// Replace each variable `x_i` by `subst[i]`.
    pub fn substitute(&self, subst: &[Term]) -> Term {
        match self {
            Term::Var(i) => subst[*i].clone(),
            Term::App(op, args) => Term::App(*op, args.iter().map(|a| a.substitute(subst)).collect()),
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> TermDisplay<'a> {
        TermDisplay { term: self, sig }
    }

    pub fn to_string_with(&self, sig: &Signature) -> String {
        self.display(sig).to_string()
    }
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    sig: &'a Signature,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            Term::Var(i) => write!(f, "x{i}"),
            Term::App(op, args) => {
                f.write_str(self.sig.name(*op))?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{}", a.display(self.sig))?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    pub fn max_var(&self) -> Option<usize> {
        self.lhs.max_var().max(self.rhs.max_var())
    }

    pub fn nodes(&self) -> usize {
        self.lhs.nodes() + self.rhs.nodes()
    }

    pub fn to_string_with(&self, sig: &Signature) -> String {
        format!("{} = {}", self.lhs.display(sig), self.rhs.display(sig))
    }
}

/// `(∀x̄)[premises → conclusion]`; no premises means an identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuasiIdentity {
    pub premises: Vec<Equation>,
    pub conclusion: Equation,
}

impl QuasiIdentity {
    pub fn new(premises: Vec<Equation>, conclusion: Equation) -> Self {
        QuasiIdentity { premises, conclusion }
    }

    pub fn identity(conclusion: Equation) -> Self {
        QuasiIdentity {
            premises: Vec::new(),
            conclusion,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.premises.is_empty()
    }

    /// One more than the largest variable index, or 0 for ground sentences.
    pub fn var_count(&self) -> usize {
        self.premises
            .iter()
            .chain(std::iter::once(&self.conclusion))
            .filter_map(Equation::max_var)
            .max()
            .map_or(0, |m| m + 1)
    }

    pub fn check(&self, sig: &Signature) -> Result<()> {
        for eq in self.premises.iter().chain(std::iter::once(&self.conclusion)) {
            eq.lhs.check(sig)?;
            eq.rhs.check(sig)?;
        }
        Ok(())
    }

    pub fn to_string_with(&self, sig: &Signature) -> String {
        let conclusion = self.conclusion.to_string_with(sig);
        if self.premises.is_empty() {
            return conclusion;
        }
        let premises: Vec<String> = self.premises.iter().map(|e| e.to_string_with(sig)).collect();
        format!("{} => {}", premises.join(" & "), conclusion)
    }
}

/// Largest variable index among `equations`, plus one.
pub fn var_count(equations: &[Equation]) -> usize {
    equations
        .iter()
        .filter_map(Equation::max_var)
        .max()
        .map_or(0, |m| m + 1)
}
