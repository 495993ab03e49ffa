use rustc_hash::FxHashMap;

use serde::{Deserialize, Serialize};

use super::class::GeneratingClass;
use crate::algebra::{FiniteAlgebra, Signature};
use crate::error::{Error, Result};
use crate::limits::{checked_pow, Limits};
use crate::term::{eval_unchecked, Equation, Term};

/// How an element was first reached: a generator, or an operation applied to
/// earlier elements. Following witnesses down to generators yields a term of
/// minimal depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    Var(usize),
    App(usize, Vec<usize>),
}

/// One index of the product a term-function algebra lives in: a member of the
/// class together with an assignment of the generators into it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coordinate {
    pub member: usize,
    pub assignment: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
struct Segment {
    member: usize,
    start: usize,
    end: usize,
}

/// A subalgebra of `∏ A` over a list of coordinates `(A, ā)`, generated by the
/// restricted projections. Over all of `A^k` for every member this is the free
/// algebra `F(k)`; over the assignments satisfying a set of equations it is the
/// finitely presented algebra of those equations.
///
/// Elements are kept in breadth-first discovery order, which is the canonical
/// element order. Vectors are pairwise distinct.
#[derive(Clone, Debug)]
pub struct TermFunctionAlgebra {
    members: Vec<FiniteAlgebra>,
    rank: usize,
    coords: Vec<(usize, usize)>,
    segments: Vec<Segment>,
    width: usize,
    data: Vec<u8>,
    index: VectorIndex,
    witnesses: Vec<Witness>,
    depths: Vec<u32>,
    generators: Vec<usize>,
    complete: bool,
}

pub(crate) struct ClosureSpec<'a> {
    pub class: &'a GeneratingClass,
    pub rank: usize,
    /// `(member, index of the assignment in A^rank)`, grouped by member.
    pub coords: Vec<(usize, usize)>,
    pub max_depth: Option<usize>,
    pub limit: usize,
    pub steps: u64,
}

/// Every coordinate `(member, ā)` with `ā` ranging over `A^rank`, in order.
pub(crate) fn full_coordinates(class: &GeneratingClass, rank: usize, limits: &Limits) -> Result<Vec<(usize, usize)>> {
    let mut coords = Vec::new();
    for (j, m) in class.members().iter().enumerate() {
        let count = checked_pow(m.size(), rank)
            .filter(|&c| c <= limits.product_size)
            .ok_or_else(|| Error::capacity("free algebra coordinates", limits.product_size, usize::MAX))?;
        if coords.len() + count > limits.product_size {
            return Err(Error::capacity(
                "free algebra coordinates",
                limits.product_size,
                coords.len() + count,
            ));
        }
        coords.extend((0..count).map(|t| (j, t)));
    }
    Ok(coords)
}

/// Position lookup for vectors. Small products get a dense table, vectors
/// that fit a `u64` in mixed radix are hashed as integers.
#[derive(Clone, Debug)]
enum VectorIndex {
    Dense { radices: Vec<u64>, slots: Vec<u32> },
    Packed { radices: Vec<u64>, map: FxHashMap<u64, usize> },
    Bytes(FxHashMap<Box<[u8]>, usize>),
}

const DENSE_SLOTS: u64 = 1 << 22;

impl VectorIndex {
    fn new(radices: impl Iterator<Item = usize>) -> Self {
        let radices: Vec<u64> = radices.map(|r| r as u64).collect();
        match radices.iter().try_fold(1u64, |acc, &r| acc.checked_mul(r)) {
            Some(total) if total <= DENSE_SLOTS => VectorIndex::Dense {
                slots: vec![u32::MAX; total as usize],
                radices,
            },
            Some(_) => VectorIndex::Packed {
                radices,
                map: FxHashMap::default(),
            },
            None => VectorIndex::Bytes(FxHashMap::default()),
        }
    }

    #[inline]
    fn pack(radices: &[u64], v: &[u8]) -> u64 {
        radices.iter().zip(v).fold(0, |acc, (&r, &x)| acc * r + x as u64)
    }

    #[inline]
    fn get(&self, v: &[u8]) -> Option<usize> {
        match self {
            VectorIndex::Dense { radices, slots } => {
                let s = slots[Self::pack(radices, v) as usize];
                (s != u32::MAX).then_some(s as usize)
            }
            VectorIndex::Packed { radices, map } => map.get(&Self::pack(radices, v)).copied(),
            VectorIndex::Bytes(map) => map.get(v).copied(),
        }
    }

    fn insert(&mut self, v: &[u8], idx: usize) {
        match self {
            VectorIndex::Dense { radices, slots } => {
                slots[Self::pack(radices, v) as usize] = u32::try_from(idx).expect("dense index fits u32")
            }
            VectorIndex::Packed { radices, map } => {
                map.insert(Self::pack(radices, v), idx);
            }
            VectorIndex::Bytes(map) => {
                map.insert(v.into(), idx);
            }
        }
    }
}

#[inline]
fn digit(tuple: usize, n: usize, rank: usize, i: usize) -> usize {
    let mut t = tuple;
    for _ in 0..(rank - 1 - i) {
        t /= n;
    }
    t % n
}

impl TermFunctionAlgebra {
    /// Breadth-first closure of the generators. Stops early (returning the
    /// element) as soon as `stop` accepts a newly discovered vector.
    pub(crate) fn close(spec: ClosureSpec<'_>, mut stop: impl FnMut(&[u8]) -> bool) -> Result<(Self, Option<usize>)> {
        let class = spec.class;
        let mut segments: Vec<Segment> = Vec::new();
        for (c, &(j, _)) in spec.coords.iter().enumerate() {
            match segments.last_mut() {
                Some(s) if s.member == j => s.end = c + 1,
                _ => segments.push(Segment {
                    member: j,
                    start: c,
                    end: c + 1,
                }),
            }
        }
        let width = spec.coords.len();
        let index = VectorIndex::new(spec.coords.iter().map(|&(j, _)| class.members()[j].size()));
        let mut tfa = TermFunctionAlgebra {
            members: class.members().to_vec(),
            rank: spec.rank,
            coords: spec.coords,
            segments,
            width,
            data: Vec::new(),
            index,
            witnesses: Vec::new(),
            depths: Vec::new(),
            generators: Vec::with_capacity(spec.rank),
            complete: false,
        };

        let mut scratch = vec![0u8; width];
        for i in 0..spec.rank {
            for (c, &(j, t)) in tfa.coords.iter().enumerate() {
                let n = tfa.members[j].size();
                scratch[c] = digit(t, n, spec.rank, i) as u8;
            }
            let (idx, fresh) = tfa.insert(&scratch, Witness::Var(i), 0, spec.limit)?;
            tfa.generators.push(idx);
            if fresh && stop(&scratch) {
                return Ok((tfa, Some(idx)));
            }
        }

        // A term's value at `(A, ā)` lies in the subuniverse generated by `ā`,
        // so once every such vector is present nothing new can appear.
        let saturated = tfa.saturation_bound()?;
        let sig = class.signature().clone();
        let mut prev_start = 0;
        let mut prev_end = tfa.len();
        let mut depth = 1usize;
        let mut steps = 0u64;
        loop {
            if spec.max_depth.is_some_and(|m| depth > m) {
                break;
            }
            for op in 0..sig.len() {
                let arity = sig.arity(op);
                if arity == 0 {
                    if depth == 1 {
                        tfa.compute(op, &[], &mut scratch);
                        let (idx, fresh) = tfa.insert(&scratch, Witness::App(op, Vec::new()), 1, spec.limit)?;
                        if fresh && stop(&scratch) {
                            return Ok((tfa, Some(idx)));
                        }
                    }
                    continue;
                }
                if prev_end == prev_start {
                    continue;
                }
                // Lexicographic tuples over [0, prev_end) touching the last round.
                let lo = prev_start;
                let mut t = vec![0usize; arity];
                t[arity - 1] = lo;
                loop {
                    if t.iter().any(|&x| x >= lo) {
                        steps += 1;
                        if steps > spec.steps {
                            return Err(Error::capacity("term-function closure steps", spec.steps as usize, steps as usize));
                        }
                        tfa.compute(op, &t, &mut scratch);
                        if tfa.index.get(&scratch).is_none() {
                            let (idx, _) = tfa.insert(&scratch, Witness::App(op, t.clone()), depth as u32, spec.limit)?;
                            if stop(&scratch) {
                                return Ok((tfa, Some(idx)));
                            }
                            if saturated == Some(tfa.len()) {
                                tfa.complete = true;
                                return Ok((tfa, None));
                            }
                        }
                    }
                    if !advance(&mut t, prev_end, lo) {
                        break;
                    }
                }
            }
            if tfa.len() == prev_end {
                tfa.complete = true;
                break;
            }
            prev_start = prev_end;
            prev_end = tfa.len();
            depth += 1;
        }
        Ok((tfa, None))
    }

    /// Product over coordinates `(A, ā)` of `|Sg_A(ā)|`, or `None` on overflow.
    fn saturation_bound(&self) -> Result<Option<usize>> {
        let mut memo: FxHashMap<(usize, Vec<usize>), usize> = FxHashMap::default();
        let mut bound = Some(1usize);
        for &(j, t) in &self.coords {
            let alg = &self.members[j];
            let mut seed: Vec<usize> = (0..self.rank).map(|i| digit(t, alg.size(), self.rank, i)).collect();
            seed.sort_unstable();
            seed.dedup();
            let size = match memo.get(&(j, seed.clone())) {
                Some(&s) => s,
                None => {
                    let s = crate::algebra::generated_subuniverse(alg, &seed)?.len();
                    memo.insert((j, seed), s);
                    s
                }
            };
            bound = bound.and_then(|b| b.checked_mul(size));
        }
        Ok(bound)
    }

    fn insert(&mut self, vector: &[u8], witness: Witness, depth: u32, limit: usize) -> Result<(usize, bool)> {
        if let Some(i) = self.index.get(vector) {
            return Ok((i, false));
        }
        if self.witnesses.len() >= limit {
            return Err(Error::capacity("term-function algebra elements", limit, self.witnesses.len() + 1));
        }
        let idx = self.witnesses.len();
        self.data.extend_from_slice(vector);
        self.index.insert(vector, idx);
        self.witnesses.push(witness);
        self.depths.push(depth);
        Ok((idx, true))
    }

    /// Pointwise application of `op` to the elements `args`.
    fn compute(&self, op: usize, args: &[usize], out: &mut [u8]) {
        let w = self.width;
        let row = |a: usize| &self.data[a * w..(a + 1) * w];
        match *args {
            [] => self.compute_slices(op, &[], out),
            [a] => self.compute_slices(op, &[row(a)], out),
            [a, b] => self.compute_slices(op, &[row(a), row(b)], out),
            [a, b, c] => self.compute_slices(op, &[row(a), row(b), row(c)], out),
            _ => {
                let slices: Vec<&[u8]> = args.iter().map(|&a| row(a)).collect();
                self.compute_slices(op, &slices, out);
            }
        }
    }

    fn compute_slices(&self, op: usize, args: &[&[u8]], out: &mut [u8]) {
        for seg in &self.segments {
            let alg = &self.members[seg.member];
            let n = alg.size();
            let table = alg.table(op);
            let range = seg.start..seg.end;
            match args {
                [] => out[range].fill(table[0] as u8),
                [a] => {
                    for c in range {
                        out[c] = table[a[c] as usize] as u8;
                    }
                }
                [a, b] => {
                    for c in range {
                        out[c] = table[a[c] as usize * n + b[c] as usize] as u8;
                    }
                }
                [a, b, d] => {
                    for c in range {
                        out[c] = table[(a[c] as usize * n + b[c] as usize) * n + d[c] as usize] as u8;
                    }
                }
                _ => {
                    for c in range {
                        let idx = args.iter().fold(0, |acc, a| acc * n + a[c] as usize);
                        out[c] = table[idx] as u8;
                    }
                }
            }
        }
    }

    pub fn signature(&self) -> &Signature {
        self.members[0].signature()
    }

    pub fn members(&self) -> &[FiniteAlgebra] {
        &self.members
    }

    /// Number of generators (the `k` of `F(k)`).
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    /// False when the closure was cut off by a depth bound.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Number of coordinates of every element vector.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn vector(&self, e: usize) -> &[u8] {
        &self.data[e * self.width..(e + 1) * self.width]
    }

    pub fn index_of(&self, vector: &[u8]) -> Option<usize> {
        self.index.get(vector)
    }

    /// Element index of each generator. Generators may coincide.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn coordinate(&self, c: usize) -> Coordinate {
        let (member, t) = self.coords[c];
        let n = self.members[member].size();
        Coordinate {
            member,
            assignment: (0..self.rank).map(|i| digit(t, n, self.rank, i)).collect(),
        }
    }

    pub fn witness(&self, e: usize) -> &Witness {
        &self.witnesses[e]
    }

    pub fn depth(&self, e: usize) -> usize {
        self.depths[e] as usize
    }

    /// The witness term of element `e`, over `x0..x{rank-1}`.
    pub fn witness_term(&self, e: usize) -> Term {
        match &self.witnesses[e] {
            Witness::Var(i) => Term::Var(*i),
            Witness::App(op, args) => Term::App(*op, args.iter().map(|&a| self.witness_term(a)).collect()),
        }
    }

    /// The element `op(args)`, if present (always present when complete).
    pub fn apply(&self, op: usize, args: &[usize]) -> Option<usize> {
        let mut out = vec![0u8; self.width];
        self.compute(op, args, &mut out);
        self.index_of(&out)
    }

    /// Pointwise value of `t` with `x_i` bound to element `assignment[i]`.
    pub fn eval_term(&self, t: &Term, assignment: &[usize]) -> Vec<u8> {
        match t {
            Term::Var(i) => self.vector(assignment[*i]).to_vec(),
            Term::App(op, args) => {
                let vals: Vec<Vec<u8>> = args.iter().map(|a| self.eval_term(a, assignment)).collect();
                let slices: Vec<&[u8]> = vals.iter().map(Vec::as_slice).collect();
                let mut out = vec![0u8; self.width];
                self.compute_slices(*op, &slices, &mut out);
                out
            }
        }
    }

    /// Does `eq` hold at every coordinate when `x_i ↦ assignment[i]`?
    pub fn equation_holds(&self, eq: &Equation, assignment: &[usize]) -> bool {
        self.first_disagreement(eq, assignment).is_none()
    }

    /// First coordinate where the two sides of `eq` differ.
    pub fn first_disagreement(&self, eq: &Equation, assignment: &[usize]) -> Option<usize> {
        let mut values = vec![0usize; assignment.len()];
        let vectors: Vec<&[u8]> = assignment.iter().map(|&e| self.vector(e)).collect();
        for seg in &self.segments {
            let alg = &self.members[seg.member];
            for c in seg.start..seg.end {
                for (v, vec) in values.iter_mut().zip(&vectors) {
                    *v = vec[c] as usize;
                }
                if eval_unchecked(alg, &eq.lhs, &values) != eval_unchecked(alg, &eq.rhs, &values) {
                    return Some(c);
                }
            }
        }
        None
    }

    /// Least element fixed by every operation, constants included.
    pub fn find_idempotent(&self) -> Option<usize> {
        let sig = self.signature();
        let mut out = vec![0u8; self.width];
        (0..self.len()).find(|&e| {
            (0..sig.len()).all(|op| {
                let args = vec![e; sig.arity(op)];
                self.compute(op, &args, &mut out);
                out == self.vector(e)
            })
        })
    }

    /// The induced finite algebra on element indices. Only for complete
    /// closures whose tables fit the limits.
    pub fn to_algebra(&self, limits: &Limits) -> Result<FiniteAlgebra> {
        if !self.complete {
            return Err(Error::Precondition("closure was cut off by a depth bound".into()));
        }
        let sig = self.signature().clone();
        let n = self.len();
        let entries = (0..sig.len())
            .map(|op| checked_pow(n, sig.arity(op)).unwrap_or(usize::MAX))
            .fold(0usize, |a, b| a.saturating_add(b));
        if entries > limits.table_entries {
            return Err(Error::capacity("materialized table entries", limits.table_entries, entries));
        }
        let mut out = vec![0u8; self.width];
        let mut tables = Vec::with_capacity(sig.len());
        for op in 0..sig.len() {
            let arity = sig.arity(op);
            let mut table = Vec::with_capacity(checked_pow(n, arity).unwrap_or(0));
            let mut t = vec![0usize; arity];
            loop {
                self.compute(op, &t, &mut out);
                let idx = self
                    .index_of(&out)
                    .ok_or_else(|| Error::Consistency("complete closure is not closed".into()))?;
                table.push(idx as u32);
                if !crate::algebra::next_tuple(&mut t, n) {
                    break;
                }
            }
            tables.push(table);
        }
        Ok(FiniteAlgebra::from_raw(sig, n, tables))
    }
}

/// Lexicographic successor over `0..n` that jumps straight to tuples with at
/// least one entry `>= lo`.
fn advance(t: &mut [usize], n: usize, lo: usize) -> bool {
    if !crate::algebra::next_tuple(t, n) {
        return false;
    }
    let last = t.len() - 1;
    if t[last] < lo && t[..last].iter().all(|&x| x < lo) {
        t[last] = lo;
    }
    true
}
