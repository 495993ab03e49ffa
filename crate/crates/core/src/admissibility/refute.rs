use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free::{bounded_free_algebra, free_algebra, full_coordinates, ClosureSpec, GeneratingClass, TermFunctionAlgebra};
use crate::limits::Limits;
use crate::term::{Equation, QuasiIdentity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefuteBudget {
    pub max_vars: usize,
    /// Largest number of premises.
    pub max_premises: usize,
    /// Largest depth of a premise term; variables have depth 0.
    pub max_depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    /// Passive, admissible and false in the quasivariety.
    pub quasi_identity: QuasiIdentity,
    /// Size of the finitely presented algebra of the premises.
    pub presented_size: usize,
    /// Premise sets examined, this one included.
    pub candidates: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum RefuteOutcome {
    Found(Refutation),
    /// Every premise set within the budget was examined.
    Exhausted { candidates: usize },
    /// A capacity limit was hit before the budget was exhausted.
    Capacity { candidates: usize, reason: String },
}

impl RefuteOutcome {
    pub fn refutation(&self) -> Option<&Refutation> {
        match self {
            RefuteOutcome::Found(r) => Some(r),
            _ => None,
        }
    }
}

/// A candidate premise: two distinct term functions of the depth-bounded pool.
struct PoolEquation {
    equation: Equation,
    nodes: usize,
    vars: u64,
    /// Coordinates of `F(nv)` where both sides agree.
    agree: Vec<u64>,
}

/// What a satisfying-coordinate set says about its presentation.
#[derive(Clone, Copy)]
enum Verdict {
    Trivial,
    Satisfiable,
    /// Nontrivial and unsatisfiable in `F(1)`.
    Witness,
}

/// Searches premise sets `φ` over `x0..x{max_vars-1}` for one whose finitely
/// presented algebra is nontrivial yet has no homomorphism into the free
/// algebra. Then `φ → s = t`, with `s`, `t` the witness terms of two distinct
/// elements of `P_φ`, is passive (hence admissible) and fails in `Q(K)`.
///
/// Premises are equations between distinct term functions of depth at most
/// `max_depth`, each represented by its canonical witness term. Sets are
/// visited by number of variables, then total term nodes, then
/// lexicographically in the order of equations by (nodes, lhs, rhs).
pub fn refute_sc(class: &GeneratingClass, budget: RefuteBudget, limits: &Limits) -> Result<RefuteOutcome> {
    if budget.max_vars == 0 || budget.max_premises == 0 || budget.max_depth == 0 {
        return Err(Error::Precondition("refutation budgets must be positive".into()));
    }
    class.require_nontrivial()?;
    let mut candidates = 0usize;
    match search(class, budget, limits, &mut candidates) {
        Ok(Some(mut r)) => {
            r.candidates = candidates;
            Ok(RefuteOutcome::Found(r))
        }
        Ok(None) => Ok(RefuteOutcome::Exhausted { candidates }),
        Err(e) if e.is_capacity() => Ok(RefuteOutcome::Capacity {
            candidates,
            reason: e.to_string(),
        }),
        Err(e) => Err(e),
    }
}

fn search(
    class: &GeneratingClass,
    budget: RefuteBudget,
    limits: &Limits,
    candidates: &mut usize,
) -> Result<Option<Refutation>> {
    let f1 = free_algebra(class, 1, limits)?;
    for nv in 1..=budget.max_vars {
        let pool = bounded_free_algebra(class, nv, budget.max_depth, limits)?;
        let coords = full_coordinates(class, nv, limits)?;
        let eqs = pool_equations(&pool);
        if eqs.is_empty() {
            continue;
        }
        let all_vars = if nv >= 64 { u64::MAX } else { (1u64 << nv) - 1 };
        let offsets = member_offsets(class, nv);
        let mut cache: HashMap<Vec<u64>, Verdict> = HashMap::new();
        let max_total = budget.max_premises * eqs.iter().map(|e| e.nodes).max().unwrap_or(0);
        let min_nodes = eqs[0].nodes;
        let mut chosen = Vec::new();
        for total in min_nodes..=max_total {
            let mut found = None;
            let mut visit = |set: &[usize]| -> Result<bool> {
                let vars = set.iter().fold(0u64, |acc, &i| acc | eqs[i].vars);
                if nv > 1 && vars != all_vars {
                    return Ok(false);
                }
                *candidates += 1;
                let mut sat = eqs[set[0]].agree.clone();
                for &i in &set[1..] {
                    for (w, a) in sat.iter_mut().zip(&eqs[i].agree) {
                        *w &= a;
                    }
                }
                let verdict = match cache.get(&sat) {
                    Some(v) => *v,
                    None => {
                        let v = judge(class, &coords, &sat, &f1, &offsets, nv, limits)?;
                        cache.insert(sat.clone(), v);
                        v
                    }
                };
                if let Verdict::Witness = verdict {
                    found = Some((set.to_vec(), sat));
                    return Ok(true);
                }
                Ok(false)
            };
            if enumerate(&eqs, budget.max_premises, total, 0, &mut chosen, &mut visit)? {
                let (set, sat) = found.expect("hit recorded");
                let premises: Vec<Equation> = set.iter().map(|&i| eqs[i].equation.clone()).collect();
                let p = presented(class, &coords, &sat, nv, limits)?;
                let conclusion = Equation::new(p.witness_term(0), p.witness_term(1));
                return Ok(Some(Refutation {
                    quasi_identity: QuasiIdentity::new(premises, conclusion),
                    presented_size: p.len(),
                    candidates: 0,
                }));
            }
        }
    }
    Ok(None)
}

/// Sets of at most `max_len` equation indices, increasing, whose node counts
/// sum to `total`, in lexicographic order. Stops when `visit` returns true.
fn enumerate(
    eqs: &[PoolEquation],
    max_len: usize,
    remaining: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> Result<bool>,
) -> Result<bool> {
    for i in start..eqs.len() {
        let n = eqs[i].nodes;
        if n > remaining {
            break;
        }
        chosen.push(i);
        let stop = if n == remaining {
            visit(chosen)?
        } else if chosen.len() < max_len {
            enumerate(eqs, max_len, remaining - n, i + 1, chosen, visit)?
        } else {
            false
        };
        chosen.pop();
        if stop {
            return Ok(true);
        }
    }
    Ok(false)
}

fn pool_equations(pool: &TermFunctionAlgebra) -> Vec<PoolEquation> {
    let width = pool.width();
    let words = width.div_ceil(64).max(1);
    let terms: Vec<_> = (0..pool.len()).map(|e| pool.witness_term(e)).collect();
    let mut out = Vec::new();
    for a in 0..pool.len() {
        for b in a + 1..pool.len() {
            let (va, vb) = (pool.vector(a), pool.vector(b));
            let mut agree = vec![0u64; words];
            for c in 0..width {
                if va[c] == vb[c] {
                    agree[c / 64] |= 1 << (c % 64);
                }
            }
            let (lhs, rhs) = if terms[a] <= terms[b] {
                (terms[a].clone(), terms[b].clone())
            } else {
                (terms[b].clone(), terms[a].clone())
            };
            let mut vs = Vec::new();
            lhs.collect_vars(&mut vs);
            rhs.collect_vars(&mut vs);
            out.push(PoolEquation {
                nodes: lhs.nodes() + rhs.nodes(),
                vars: vs.iter().filter(|&&v| v < 64).fold(0, |acc, &v| acc | (1 << v)),
                equation: Equation::new(lhs, rhs),
                agree,
            });
        }
    }
    out.sort_by(|x, y| {
        x.nodes
            .cmp(&y.nodes)
            .then_with(|| x.equation.cmp(&y.equation))
    });
    out
}

/// Start of each member's block of coordinates in `F(nv)`.
fn member_offsets(class: &GeneratingClass, nv: usize) -> Vec<usize> {
    let mut offsets = Vec::new();
    let mut at = 0;
    for m in class.members() {
        offsets.push(at);
        at += m.size().pow(nv as u32);
    }
    offsets
}

fn bit(set: &[u64], c: usize) -> bool {
    set[c / 64] >> (c % 64) & 1 == 1
}

fn presented(
    class: &GeneratingClass,
    coords: &[(usize, usize)],
    sat: &[u64],
    nv: usize,
    limits: &Limits,
) -> Result<TermFunctionAlgebra> {
    let selected: Vec<(usize, usize)> = (0..coords.len()).filter(|&c| bit(sat, c)).map(|c| coords[c]).collect();
    Ok(TermFunctionAlgebra::close(
        ClosureSpec {
            class,
            rank: nv,
            coords: selected,
            max_depth: None,
            limit: limits.free_elements,
            steps: limits.closure_steps,
        },
        |_| false,
    )?
    .0)
}

fn judge(
    class: &GeneratingClass,
    coords: &[(usize, usize)],
    sat: &[u64],
    f1: &TermFunctionAlgebra,
    offsets: &[usize],
    nv: usize,
    limits: &Limits,
) -> Result<Verdict> {
    if sat.iter().all(|&w| w == 0) {
        return Ok(Verdict::Trivial);
    }
    if satisfiable_in(f1, class, sat, offsets, nv, limits)? {
        return Ok(Verdict::Satisfiable);
    }
    let p = presented(class, coords, sat, nv, limits)?;
    Ok(if p.is_trivial() {
        Verdict::Trivial
    } else {
        Verdict::Witness
    })
}

/// Whether some assignment of `nv` elements of `F(1)` lands, at every
/// coordinate of `F(1)`, on a satisfying assignment of the member: exactly
/// when the premises whose solution set is `sat` are solvable in `F(1)`.
fn satisfiable_in(
    f1: &TermFunctionAlgebra,
    class: &GeneratingClass,
    sat: &[u64],
    offsets: &[usize],
    nv: usize,
    limits: &Limits,
) -> Result<bool> {
    let n = f1.len();
    let total = crate::limits::checked_pow(n, nv).map(|t| t as u64).unwrap_or(u64::MAX);
    if total > limits.assignments {
        return Err(Error::capacity(
            "assignments into the free algebra of rank 1",
            limits.assignments as usize,
            total.min(usize::MAX as u64) as usize,
        ));
    }
    let width = f1.width();
    let mut sigma = vec![0usize; nv];
    loop {
        let ok = (0..width).all(|c| {
            let coord = f1.coordinate(c);
            let size = class.members()[coord.member].size();
            let t = sigma.iter().fold(0, |acc, &e| acc * size + f1.vector(e)[c] as usize);
            bit(sat, offsets[coord.member] + t)
        });
        if ok {
            return Ok(true);
        }
        if !crate::algebra::next_tuple(&mut sigma, n) {
            return Ok(false);
        }
    }
}
