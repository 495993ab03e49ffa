#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scasc::algebra::{FiniteAlgebra, Signature};
use scasc::free::GeneratingClass;
use scasc::io::{parse_class, parse_corpus};
use scasc::term::{Equation, QuasiIdentity, Term};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(format!("{name}.ua"))
}

pub fn load(name: &str) -> (Vec<String>, GeneratingClass) {
    let text = std::fs::read_to_string(data_path(name)).unwrap();
    parse_class(&text).unwrap()
}

pub fn class(name: &str) -> GeneratingClass {
    load(name).1
}

/// The shipped quasi-identity corpus of a class.
pub fn corpus(name: &str, class: &GeneratingClass) -> Vec<QuasiIdentity> {
    let path = data_path(name).with_extension("qi");
    parse_corpus(&std::fs::read_to_string(path).unwrap(), class.signature()).unwrap()
}

/// Every shipped class.
pub const SHIPPED: [&str; 7] = [
    "semilattice",
    "boolean",
    "two_elem_disc",
    "two_elem_pure_disc",
    "three_elem_pure_disc",
    "three_elem_disc",
    "idempotent_example",
];

/// The worked example classes with the number of variables their random
/// corpora may use.
pub const WORKED: [(&str, usize); 3] = [("two_elem_disc", 2), ("three_elem_disc", 1), ("idempotent_example", 1)];

pub fn random_term(rng: &mut ChaCha8Rng, sig: &Signature, vars: usize, depth: usize) -> Term {
    let leaves: Vec<usize> = (0..sig.len()).filter(|&op| sig.arity(op) == 0).collect();
    let inner: Vec<usize> = (0..sig.len()).filter(|&op| sig.arity(op) > 0).collect();
    if depth == 0 || inner.is_empty() || rng.gen_bool(0.3) {
        let choices = vars + leaves.len();
        let i = rng.gen_range(0..choices.max(1));
        return if i < vars || leaves.is_empty() {
            Term::Var(i.min(vars.saturating_sub(1)))
        } else {
            Term::App(leaves[i - vars], Vec::new())
        };
    }
    let op = inner[rng.gen_range(0..inner.len())];
    let args = (0..sig.arity(op)).map(|_| random_term(rng, sig, vars, depth - 1)).collect();
    Term::App(op, args)
}

pub fn random_equation(rng: &mut ChaCha8Rng, sig: &Signature, vars: usize, depth: usize) -> Equation {
    Equation::new(random_term(rng, sig, vars, depth), random_term(rng, sig, vars, depth))
}

/// Quasi-identities in `x0..x{vars-1}` with up to `premises` premises.
pub fn random_quasi_identities(
    sig: &Signature,
    vars: usize,
    premises: usize,
    depth: usize,
    count: usize,
    seed: u64,
) -> Vec<QuasiIdentity> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(0..=premises);
            let ps = (0..n).map(|_| random_equation(&mut rng, sig, vars, depth)).collect();
            QuasiIdentity::new(ps, random_equation(&mut rng, sig, vars, depth))
        })
        .collect()
}

/// Algebras of size `1..=max_size` with operations of the given arities.
pub fn arb_algebra(max_size: usize, arities: Vec<usize>) -> impl Strategy<Value = FiniteAlgebra> {
    (1..=max_size).prop_flat_map(move |n| {
        let tables: Vec<_> = arities
            .iter()
            .map(|&a| proptest::collection::vec(0..n, n.pow(a as u32)))
            .collect();
        let arities = arities.clone();
        tables.prop_map(move |tables| {
            let names: Vec<(String, usize)> = arities.iter().enumerate().map(|(i, &a)| (format!("f{i}"), a)).collect();
            FiniteAlgebra::new(Signature::from_pairs(&names).unwrap(), n, tables).unwrap()
        })
    })
}

/// Two algebras over one binary and one unary operation.
pub fn arb_pair(max_size: usize) -> impl Strategy<Value = (FiniteAlgebra, FiniteAlgebra)> {
    (arb_algebra(max_size, vec![2, 1]), arb_algebra(max_size, vec![2, 1]))
}

/// Every map `0..n → 0..m` as a vector.
pub fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    loop {
        out.push(map.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            map[i] += 1;
            if map[i] < m {
                break;
            }
            map[i] = 0;
        }
    }
}

/// Evaluates `t` by structural recursion on the tables.
pub fn eval_naive(alg: &FiniteAlgebra, t: &Term, assignment: &[usize]) -> usize {
    match t {
        Term::Var(i) => assignment[*i],
        Term::App(op, args) => {
            let vals: Vec<usize> = args.iter().map(|a| eval_naive(alg, a, assignment)).collect();
            alg.apply(*op, &vals)
        }
    }
}

/// Exhaustive validity of `q` in `alg`.
pub fn holds_naive(alg: &FiniteAlgebra, q: &QuasiIdentity) -> bool {
    let k = q.var_count();
    all_maps(k, alg.size()).iter().all(|a| {
        let premises = q
            .premises
            .iter()
            .all(|e| eval_naive(alg, &e.lhs, a) == eval_naive(alg, &e.rhs, a));
        !premises || eval_naive(alg, &q.conclusion.lhs, a) == eval_naive(alg, &q.conclusion.rhs, a)
    })
}
