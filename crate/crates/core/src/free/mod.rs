//! Free algebras `F(k)` and finitely presented algebras `P_φ` of the
//! quasivariety generated by a finite class, represented as algebras of term
//! functions.

mod class;
mod tfa;

pub use class::{GeneratingClass, MAX_MEMBER_SIZE};
pub(crate) use tfa::{full_coordinates, ClosureSpec};
pub use tfa::{Coordinate, TermFunctionAlgebra, Witness};

use serde::{Deserialize, Serialize};

use crate::algebra::{next_tuple, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::limits::{checked_pow, Limits};
use crate::term::{equation_holds, var_count, Equation, Term};

fn check_equations(class: &GeneratingClass, eqs: &[Equation]) -> Result<()> {
    let sig = class.signature();
    for e in eqs {
        e.lhs.check(sig)?;
        e.rhs.check(sig)?;
    }
    Ok(())
}

/// `F(k)`: the closure of the `k` projections over every member and every
/// assignment `A^k`.
pub fn free_algebra(class: &GeneratingClass, k: usize, limits: &Limits) -> Result<TermFunctionAlgebra> {
    Ok(free_algebra_until(class, k, None, limits, |_| false)?.0)
}

/// `F(k)` truncated to terms of depth at most `max_depth` (variables have
/// depth 0, constants depth 1). The result is usually not closed.
pub fn bounded_free_algebra(
    class: &GeneratingClass,
    k: usize,
    max_depth: usize,
    limits: &Limits,
) -> Result<TermFunctionAlgebra> {
    Ok(free_algebra_until(class, k, Some(max_depth), limits, |_| false)?.0)
}

pub(crate) fn free_algebra_until(
    class: &GeneratingClass,
    k: usize,
    max_depth: Option<usize>,
    limits: &Limits,
    stop: impl FnMut(&[u8]) -> bool,
) -> Result<(TermFunctionAlgebra, Option<usize>)> {
    class.require_nontrivial()?;
    if k == 0 {
        return Err(Error::Precondition("free algebra rank must be positive".into()));
    }
    let coords = full_coordinates(class, k, limits)?;
    TermFunctionAlgebra::close(
        ClosureSpec {
            class,
            rank: k,
            coords,
            max_depth,
            limit: limits.free_elements,
            steps: limits.closure_steps,
        },
        stop,
    )
}

/// `Sat(φ)`: every `(member, assignment index in A^k)` satisfying all of `eqs`.
pub fn satisfying_coordinates(
    class: &GeneratingClass,
    eqs: &[Equation],
    k: usize,
    limits: &Limits,
) -> Result<Vec<(usize, usize)>> {
    check_equations(class, eqs)?;
    let needed = var_count(eqs);
    if needed > k {
        return Err(Error::UnboundVariable(needed - 1));
    }
    let mut out = Vec::new();
    let mut examined = 0usize;
    for (j, m) in class.members().iter().enumerate() {
        let count = checked_pow(m.size(), k).filter(|&c| c <= limits.product_size).ok_or_else(|| {
            Error::capacity("finitely presented algebra coordinates", limits.product_size, usize::MAX)
        })?;
        examined += count;
        if examined > limits.product_size {
            return Err(Error::capacity(
                "finitely presented algebra coordinates",
                limits.product_size,
                examined,
            ));
        }
        let mut tuple = vec![0usize; k];
        for t in 0..count {
            if eqs.iter().all(|e| equation_holds(m, e, &tuple)) {
                out.push((j, t));
            }
            next_tuple(&mut tuple, m.size());
        }
    }
    Ok(out)
}

/// `P_φ` on generators `x0..x{k-1}`: the subalgebra of the product over
/// `Sat(φ)` generated by the restricted projections. An empty `Sat(φ)` gives
/// the one-element algebra.
pub fn fp_algebra(class: &GeneratingClass, eqs: &[Equation], k: usize, limits: &Limits) -> Result<TermFunctionAlgebra> {
    if k == 0 {
        return Err(Error::Precondition("presentation rank must be positive".into()));
    }
    let coords = satisfying_coordinates(class, eqs, k, limits)?;
    Ok(TermFunctionAlgebra::close(
        ClosureSpec {
            class,
            rank: k,
            coords,
            max_depth: None,
            limit: limits.free_elements,
            steps: limits.closure_steps,
        },
        |_| false,
    )?
    .0)
}

/// Least element fixed by every operation (constants included).
pub fn find_idempotent(alg: &FiniteAlgebra) -> Option<usize> {
    let sig = alg.signature();
    (0..alg.size()).find(|&e| (0..sig.len()).all(|op| alg.apply(op, &vec![e; sig.arity(op)]) == e))
}

/// Outcome of deciding `F ⊨ (∃x̄)φ` in `F(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeSatisfaction {
    pub satisfiable: bool,
    /// Elements of `F(1)` bound to `x0, x1, ...` when satisfiable.
    pub assignment: Option<Vec<usize>>,
    /// Witness terms (in `x0`) of the assigned elements.
    pub terms: Option<Vec<Term>>,
    pub free_size: usize,
}

/// Decides whether the conjunction `eqs` is satisfiable in the free algebra of
/// denumerable rank. Every `F(k)` retracts onto `F(1)` by sending all
/// generators to `x0`, so searching `F(1)` suffices.
pub fn pe_satisfiable_in_free(class: &GeneratingClass, eqs: &[Equation], limits: &Limits) -> Result<PeSatisfaction> {
    check_equations(class, eqs)?;
    let f1 = free_algebra(class, 1, limits)?;
    let found = find_assignment(&f1, eqs, None, var_count(eqs), limits)?;
    Ok(PeSatisfaction {
        satisfiable: found.is_some(),
        terms: found
            .as_ref()
            .map(|a| a.iter().map(|&e| f1.witness_term(e)).collect()),
        assignment: found,
        free_size: f1.len(),
    })
}

/// Searches assignments of `vars` variables into the elements of `tfa` that
/// satisfy every equation of `eqs` and, when given, falsify `conclusion`.
/// Equations are tested as soon as their variables are bound.
pub fn find_assignment(
    tfa: &TermFunctionAlgebra,
    eqs: &[Equation],
    conclusion: Option<&Equation>,
    vars: usize,
    limits: &Limits,
) -> Result<Option<Vec<usize>>> {
    let n = tfa.len();
    let total = checked_pow(n, vars).map(|t| t as u64).unwrap_or(u64::MAX);
    if total > limits.assignments {
        return Err(Error::capacity(
            "assignments into a term-function algebra",
            limits.assignments as usize,
            total.min(usize::MAX as u64) as usize,
        ));
    }
    let mut at_depth: Vec<Vec<&Equation>> = vec![Vec::new(); vars + 1];
    for e in eqs {
        let d = e.lhs.max_var().max(e.rhs.max_var()).map_or(0, |m| m + 1);
        if d > vars {
            return Err(Error::UnboundVariable(d - 1));
        }
        at_depth[d].push(e);
    }
    let mut assignment = vec![0usize; vars];
    if !at_depth[0].iter().all(|e| tfa.equation_holds(e, &assignment)) {
        return Ok(None);
    }
    Ok(search(tfa, &at_depth, conclusion, &mut assignment, 0))
}

fn search(
    tfa: &TermFunctionAlgebra,
    at_depth: &[Vec<&Equation>],
    conclusion: Option<&Equation>,
    assignment: &mut Vec<usize>,
    var: usize,
) -> Option<Vec<usize>> {
    if var == assignment.len() {
        let ok = conclusion.is_none_or(|c| !tfa.equation_holds(c, assignment));
        return ok.then(|| assignment.clone());
    }
    for v in 0..tfa.len() {
        assignment[var] = v;
        if at_depth[var + 1].iter().all(|e| tfa.equation_holds(e, assignment)) {
            if let Some(found) = search(tfa, at_depth, conclusion, assignment, var + 1) {
                return Some(found);
            }
        }
    }
    None
}
