use super::ast::{Equation, QuasiIdentity, Term};
use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::limits::{checked_pow, Limits};

/// Bottom-up evaluation through the tables. Symbols must already be checked.
pub(crate) fn eval_unchecked(alg: &FiniteAlgebra, t: &Term, assignment: &[usize]) -> usize {
    match t {
        Term::Var(i) => assignment[*i],
        Term::App(op, args) => {
            let mut vals = [0usize; 8];
            if args.len() <= vals.len() {
                for (slot, a) in vals.iter_mut().zip(args) {
                    *slot = eval_unchecked(alg, a, assignment);
                }
                alg.apply(*op, &vals[..args.len()])
            } else {
                let vals: Vec<usize> = args.iter().map(|a| eval_unchecked(alg, a, assignment)).collect();
                alg.apply(*op, &vals)
            }
        }
    }
}

pub fn eval_term(alg: &FiniteAlgebra, t: &Term, assignment: &[usize]) -> Result<usize> {
    t.check(alg.signature())?;
    if let Some(m) = t.max_var() {
        if m >= assignment.len() {
            return Err(Error::UnboundVariable(m));
        }
    }
    if let Some(&bad) = assignment.iter().find(|&&e| e >= alg.size()) {
        return Err(Error::ElementOutOfRange {
            element: bad,
            size: alg.size(),
        });
    }
    Ok(eval_unchecked(alg, t, assignment))
}

pub(crate) fn equation_holds(alg: &FiniteAlgebra, eq: &Equation, assignment: &[usize]) -> bool {
    eval_unchecked(alg, &eq.lhs, assignment) == eval_unchecked(alg, &eq.rhs, assignment)
}

/// Exhaustive search for an assignment that satisfies every premise and
/// falsifies the conclusion. Premises are checked as soon as their variables
/// are bound, so unsatisfiable prefixes are pruned.
pub fn find_falsifying_assignment(
    alg: &FiniteAlgebra,
    q: &QuasiIdentity,
    limits: &Limits,
) -> Result<Option<Vec<usize>>> {
    q.check(alg.signature())?;
    let k = q.var_count();
    let n = alg.size();
    let total = checked_pow(n, k).map(|t| t as u64).unwrap_or(u64::MAX);
    if total > limits.assignments {
        return Err(Error::capacity(
            "quasi-identity assignments",
            limits.assignments as usize,
            total.min(usize::MAX as u64) as usize,
        ));
    }
    // Premises bucketed by the variable that completes them.
    let mut at_depth: Vec<Vec<&Equation>> = vec![Vec::new(); k + 1];
    for p in &q.premises {
        let d = p.max_var().map_or(0, |m| m + 1);
        at_depth[d].push(p);
    }
    let mut assignment = vec![0usize; k];
    if !at_depth[0].iter().all(|e| equation_holds(alg, e, &assignment)) {
        return Ok(None);
    }
    Ok(search(alg, q, &at_depth, &mut assignment, 0))
}

fn search(
    alg: &FiniteAlgebra,
    q: &QuasiIdentity,
    at_depth: &[Vec<&Equation>],
    assignment: &mut Vec<usize>,
    var: usize,
) -> Option<Vec<usize>> {
    if var == assignment.len() {
        return (!equation_holds(alg, &q.conclusion, assignment)).then(|| assignment.clone());
    }
    for v in 0..alg.size() {
        assignment[var] = v;
        if at_depth[var + 1].iter().all(|e| equation_holds(alg, e, assignment)) {
            if let Some(found) = search(alg, q, at_depth, assignment, var + 1) {
                return Some(found);
            }
        }
    }
    None
}

pub fn holds_in_algebra(alg: &FiniteAlgebra, q: &QuasiIdentity, limits: &Limits) -> Result<bool> {
    Ok(find_falsifying_assignment(alg, q, limits)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::term::parse_quasi_identity;

    const PASSIVE: &str = "d(x0,c0,c1) = x0 & d(x0,c1,c0) = x0 => c0 = c1";

    #[test]
    fn discriminator_evaluation() {
        let a = catalog::three_element_disc();
        let d = Term::App(0, vec![Term::Var(0), Term::Var(1), Term::Var(2)]);
        assert_eq!(eval_term(&a, &d, &[2, 0, 1]).unwrap(), 2);
        assert_eq!(eval_term(&a, &d, &[0, 0, 1]).unwrap(), 1);
    }

    #[test]
    fn projection() {
        let a = catalog::three_element_disc();
        assert_eq!(eval_term(&a, &Term::Var(3), &[0, 0, 0, 2]).unwrap(), 2);
        assert!(matches!(
            eval_term(&a, &Term::Var(3), &[0]),
            Err(Error::UnboundVariable(3))
        ));
    }

    #[test]
    fn reflexive_conclusion_always_holds() {
        let a = catalog::boolean_algebra();
        let q = parse_quasi_identity("meet(x0,x1) = x2 => x0 = x0", a.signature()).unwrap();
        assert!(holds_in_algebra(&a, &q, &Limits::default()).unwrap());
    }

    #[test]
    fn passive_rule_fails_in_three_element_algebra() {
        let a = catalog::three_element_disc_with_constants();
        let q = parse_quasi_identity(PASSIVE, a.signature()).unwrap();
        assert_eq!(
            find_falsifying_assignment(&a, &q, &Limits::default()).unwrap(),
            Some(vec![2])
        );
    }

    #[test]
    fn passive_rule_holds_in_two_element_subalgebra() {
        let a = catalog::three_element_disc_with_constants().induced(&[0, 1]).unwrap();
        let q = parse_quasi_identity(PASSIVE, a.signature()).unwrap();
        assert!(holds_in_algebra(&a, &q, &Limits::default()).unwrap());
    }

    #[test]
    fn assignment_cap() {
        let a = catalog::three_element_disc();
        let q = parse_quasi_identity("x0 = x0 => x5 = x5", a.signature()).unwrap();
        let limits = Limits {
            assignments: 100,
            ..Limits::default()
        };
        assert!(holds_in_algebra(&a, &q, &limits).unwrap_err().is_capacity());
    }
}
