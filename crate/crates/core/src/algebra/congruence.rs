use serde::{Deserialize, Serialize};

use super::finite::{next_tuple, FiniteAlgebra};
use crate::error::{Error, Result};

/// A partition of a carrier, stored as a canonical block-label vector: labels
/// appear in first-occurrence order, so equal partitions compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Congruence {
    labels: Vec<usize>,
    blocks: usize,
}

impl Congruence {
    pub fn identity(n: usize) -> Self {
        Congruence {
            labels: (0..n).collect(),
            blocks: n,
        }
    }

    pub fn total(n: usize) -> Self {
        Congruence {
            labels: vec![0; n],
            blocks: n.min(1),
        }
    }

    /// Canonicalizes `labels` and checks compatibility with every operation.
    pub fn from_labels(alg: &FiniteAlgebra, labels: &[usize]) -> Result<Self> {
        if labels.len() != alg.size() {
            return Err(Error::Precondition(format!(
                "partition covers {} elements, algebra has {}",
                labels.len(),
                alg.size()
            )));
        }
        let c = Self::canonical(labels);
        if let Some(op) = c.incompatible_op(alg) {
            return Err(Error::IncompatiblePartition(alg.signature().name(op).to_string()));
        }
        Ok(c)
    }

    /// Canonical form of an arbitrary labelling, without a compatibility check.
    pub fn canonical(labels: &[usize]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let mut out = Vec::with_capacity(labels.len());
        for &l in labels {
            let next = remap.len();
            out.push(*remap.entry(l).or_insert(next));
        }
        Congruence {
            blocks: remap.len(),
            labels: out,
        }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn is_identity(&self) -> bool {
        self.blocks == self.labels.len()
    }

    pub fn is_total(&self) -> bool {
        self.blocks <= 1
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (e, &l) in self.labels.iter().enumerate() {
            out[l].push(e);
        }
        out
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Congruence) -> bool {
        let mut image = vec![usize::MAX; self.blocks];
        for (e, &l) in self.labels.iter().enumerate() {
            let o = other.labels[e];
            if image[l] == usize::MAX {
                image[l] = o;
            } else if image[l] != o {
                return false;
            }
        }
        true
    }

    /// First operation the partition fails to respect, if any.
    pub(crate) fn incompatible_op(&self, alg: &FiniteAlgebra) -> Option<usize> {
        let n = alg.size();
        let blocks = self.blocks();
        let reps: Vec<usize> = blocks.iter().map(|b| b[0]).collect();
        let sig = alg.signature();
        // Compatible iff every tuple maps to the block of the tuple of representatives.
        let mut tuple_args = Vec::new();
        let mut rep_args = Vec::new();
        for op in 0..sig.len() {
            let arity = sig.arity(op);
            if arity == 0 {
                continue;
            }
            let mut tuple = vec![0; arity];
            loop {
                tuple_args.clear();
                tuple_args.extend_from_slice(&tuple);
                rep_args.clear();
                rep_args.extend(tuple.iter().map(|&e| reps[self.labels[e]]));
                if !self.related(alg.apply(op, &tuple_args), alg.apply(op, &rep_args)) {
                    return Some(op);
                }
                if !next_tuple(&mut tuple, n) {
                    break;
                }
            }
        }
        None
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two distinct classes were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Least congruence containing `pairs`.
///
/// Every pair that merges two classes is pushed through all basic
/// translations `x ↦ f(c_0,..,x,..,c_{r-1})`; pairs that were already related
/// lie in the equivalence generated by earlier pushed pairs, so their
/// translations are implied.
pub fn congruence_generated(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<Congruence> {
    let n = alg.size();
    for &(a, b) in pairs {
        for e in [a, b] {
            if e >= n {
                return Err(Error::ElementOutOfRange { element: e, size: n });
            }
        }
    }
    let mut uf = UnionFind::new(n);
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            queue.push((a, b));
        }
    }
    let sig = alg.signature();
    let mut args_a = Vec::new();
    let mut args_b = Vec::new();
    while let Some((a, b)) = queue.pop() {
        for op in 0..sig.len() {
            let arity = sig.arity(op);
            if arity == 0 {
                continue;
            }
            for pos in 0..arity {
                let mut rest = vec![0; arity - 1];
                loop {
                    args_a.clear();
                    args_a.extend_from_slice(&rest[..pos]);
                    args_a.push(a);
                    args_a.extend_from_slice(&rest[pos..]);
                    args_b.clear();
                    args_b.extend_from_slice(&args_a);
                    args_b[pos] = b;
                    let (x, y) = (alg.apply(op, &args_a), alg.apply(op, &args_b));
                    if uf.union(x, y) {
                        queue.push((x, y));
                    }
                    if !next_tuple(&mut rest, n) {
                        break;
                    }
                }
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|e| uf.find(e)).collect();
    Ok(Congruence::canonical(&labels))
}

/// Nontrivial and every principal congruence is total.
pub fn is_simple(alg: &FiniteAlgebra) -> bool {
    let n = alg.size();
    if n < 2 {
        return false;
    }
    for a in 0..n {
        for b in (a + 1)..n {
            match congruence_generated(alg, &[(a, b)]) {
                Ok(c) if c.is_total() => {}
                _ => return false,
            }
        }
    }
    true
}

/// Quotient algebra whose elements are the blocks of `c`, in label order.
pub fn quotient(alg: &FiniteAlgebra, c: &Congruence) -> Result<FiniteAlgebra> {
    if c.size() != alg.size() {
        return Err(Error::Precondition(format!(
            "partition covers {} elements, algebra has {}",
            c.size(),
            alg.size()
        )));
    }
    if let Some(op) = c.incompatible_op(alg) {
        return Err(Error::IncompatiblePartition(alg.signature().name(op).to_string()));
    }
    let reps: Vec<usize> = c.blocks().iter().map(|b| b[0]).collect();
    let mut args = Vec::new();
    FiniteAlgebra::from_fn(alg.signature().clone(), c.block_count(), |op, tuple| {
        args.clear();
        args.extend(tuple.iter().map(|&b| reps[b]));
        c.labels()[alg.apply(op, &args)]
    })
}
