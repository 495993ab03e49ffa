use serde::{Deserialize, Serialize};

use super::finite::{next_tuple, FiniteAlgebra};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Homomorphism {
    pub map: Vec<usize>,
}

impl Homomorphism {
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.map.iter().all(|v| seen.insert(*v))
    }
}

/// Does `map` commute with every operation?
pub fn is_homomorphism(src: &FiniteAlgebra, dst: &FiniteAlgebra, map: &[usize]) -> bool {
    if src.signature() != dst.signature() || map.len() != src.size() {
        return false;
    }
    if map.iter().any(|&v| v >= dst.size()) {
        return false;
    }
    let sig = src.signature();
    let mut image = Vec::new();
    for op in 0..sig.len() {
        let arity = sig.arity(op);
        let mut tuple = vec![0; arity];
        loop {
            image.clear();
            image.extend(tuple.iter().map(|&e| map[e]));
            if map[src.apply(op, &tuple)] != dst.apply(op, &image) {
                return false;
            }
            if arity == 0 || !next_tuple(&mut tuple, src.size()) {
                break;
            }
        }
    }
    true
}

const UNSET: usize = usize::MAX;

/// Backtracking search with forward propagation through the tables.
struct HomSearch<'a> {
    src: &'a FiniteAlgebra,
    dst: &'a FiniteAlgebra,
    injective: bool,
    /// For each source element, the partners it must be separated from.
    separate: Vec<Vec<usize>>,
    map: Vec<usize>,
    used: Vec<u32>,
    /// Assigned source elements, in assignment order.
    trail: Vec<usize>,
    queue: Vec<(usize, usize)>,
    args: Vec<usize>,
    image: Vec<usize>,
}

impl<'a> HomSearch<'a> {
    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let x = self.trail.pop().unwrap();
            self.used[self.map[x]] -= 1;
            self.map[x] = UNSET;
        }
    }

    /// Assign `x ↦ v` and everything it forces. On failure the partial
    /// assignment is left for the caller to undo.
    fn assign(&mut self, x: usize, v: usize) -> bool {
        self.queue.clear();
        self.queue.push((x, v));
        while let Some((x, v)) = self.queue.pop() {
            if self.map[x] != UNSET {
                if self.map[x] != v {
                    return false;
                }
                continue;
            }
            if self.injective && self.used[v] > 0 {
                return false;
            }
            for &other in &self.separate[x] {
                if self.map[other] == v {
                    return false;
                }
            }
            self.map[x] = v;
            self.used[v] += 1;
            self.trail.push(x);
            if !self.propagate(x) {
                return false;
            }
        }
        true
    }

    /// Check (or force) every tuple whose arguments are all assigned and
    /// that contains `x`.
    fn propagate(&mut self, x: usize) -> bool {
        let sig = self.src.signature();
        for op in 0..sig.len() {
            let arity = sig.arity(op);
            if arity == 0 {
                continue;
            }
            let assigned = self.trail.len();
            for pos in 0..arity {
                let mut rest = vec![0; arity - 1];
                loop {
                    self.args.clear();
                    self.image.clear();
                    for (i, &r) in rest.iter().enumerate() {
                        if i == pos {
                            self.args.push(x);
                            self.image.push(self.map[x]);
                        }
                        let e = self.trail[r];
                        self.args.push(e);
                        self.image.push(self.map[e]);
                    }
                    if pos == arity - 1 {
                        self.args.push(x);
                        self.image.push(self.map[x]);
                    }
                    let s = self.src.apply(op, &self.args);
                    let t = self.dst.apply(op, &self.image);
                    if self.map[s] == UNSET {
                        self.queue.push((s, t));
                    } else if self.map[s] != t {
                        return false;
                    }
                    if !next_tuple(&mut rest, assigned) {
                        break;
                    }
                }
            }
        }
        true
    }

    fn search(&mut self, from: usize) -> bool {
        let Some(x) = (from..self.src.size()).find(|&e| self.map[e] == UNSET) else {
            return true;
        };
        for v in 0..self.dst.size() {
            let mark = self.trail.len();
            if self.assign(x, v) && self.search(x + 1) {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// First homomorphism `src → dst` in lexicographic order of the image vector,
/// optionally injective and separating each listed pair.
pub fn find_homomorphism(
    src: &FiniteAlgebra,
    dst: &FiniteAlgebra,
    injective: bool,
    distinct_images: &[(usize, usize)],
) -> Result<Option<Homomorphism>> {
    src.same_signature(dst)?;
    let n = src.size();
    if injective && n > dst.size() {
        return Ok(None);
    }
    let mut separate = vec![Vec::new(); n];
    for &(a, b) in distinct_images {
        for e in [a, b] {
            if e >= n {
                return Err(Error::ElementOutOfRange { element: e, size: n });
            }
        }
        if a == b {
            return Ok(None);
        }
        separate[a].push(b);
        separate[b].push(a);
    }
    let mut s = HomSearch {
        src,
        dst,
        injective,
        separate,
        map: vec![UNSET; n],
        used: vec![0; dst.size()],
        trail: Vec::with_capacity(n),
        queue: Vec::new(),
        args: Vec::new(),
        image: Vec::new(),
    };
    for c in src.signature().constants() {
        if !s.assign(src.constant(c), dst.constant(c)) {
            return Ok(None);
        }
    }
    if s.search(0) {
        debug_assert!(is_homomorphism(src, dst, &s.map));
        Ok(Some(Homomorphism { map: s.map }))
    } else {
        Ok(None)
    }
}

/// A bijective homomorphism exists.
pub fn are_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<bool> {
    a.same_signature(b)?;
    if a.size() != b.size() {
        return Ok(false);
    }
    Ok(find_homomorphism(a, b, true, &[])?.is_some())
}
