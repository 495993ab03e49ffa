use std::fmt;

use serde::{Deserialize, Serialize};

use super::signature::Signature;
use crate::error::{Error, Result};
use crate::limits::{checked_pow, Limits};

/// A finite algebra over `{0..size-1}`. Every table is flat row-major with the
/// leftmost argument most significant, so `f(a_0,..,a_{r-1})` lives at
/// `sum a_i * size^(r-1-i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    signature: Signature,
    size: usize,
    tables: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Defect {
    pub symbol: Option<String>,
    pub kind: DefectKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DefectKind {
    EmptyCarrier,
    MissingTable,
    ExtraTable { count: usize },
    NotTotal { expected: usize, found: usize },
    OutOfRange { tuple: Vec<usize>, value: usize },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = &self.symbol {
            write!(f, "`{s}`: ")?;
        }
        match &self.kind {
            DefectKind::EmptyCarrier => write!(f, "carrier is empty"),
            DefectKind::MissingTable => write!(f, "table missing"),
            DefectKind::ExtraTable { count } => write!(f, "{count} table(s) without a symbol"),
            DefectKind::NotTotal { expected, found } => {
                write!(f, "table not total: expected {expected} entries, found {found}")
            }
            DefectKind::OutOfRange { tuple, value } => {
                write!(f, "value out of range: {value} at {tuple:?}")
            }
        }
    }
}

/// Every totality and range violation of the given tables. Empty when the
/// data describes a valid algebra.
pub fn validate_tables(signature: &Signature, size: usize, tables: &[Vec<usize>]) -> Vec<Defect> {
    let mut defects = Vec::new();
    if size == 0 {
        defects.push(Defect {
            symbol: None,
            kind: DefectKind::EmptyCarrier,
        });
    }
    if tables.len() > signature.len() {
        defects.push(Defect {
            symbol: None,
            kind: DefectKind::ExtraTable {
                count: tables.len() - signature.len(),
            },
        });
    }
    for (op, sym) in signature.symbols().iter().enumerate() {
        let Some(table) = tables.get(op) else {
            defects.push(Defect {
                symbol: Some(sym.name.clone()),
                kind: DefectKind::MissingTable,
            });
            continue;
        };
        let expected = checked_pow(size, sym.arity).unwrap_or(usize::MAX);
        if table.len() != expected {
            defects.push(Defect {
                symbol: Some(sym.name.clone()),
                kind: DefectKind::NotTotal {
                    expected,
                    found: table.len(),
                },
            });
        }
        for (idx, &value) in table.iter().enumerate() {
            if value >= size {
                defects.push(Defect {
                    symbol: Some(sym.name.clone()),
                    kind: DefectKind::OutOfRange {
                        tuple: decode_tuple(idx, size.max(1), sym.arity),
                        value,
                    },
                });
            }
        }
    }
    defects
}

/// Row index of `args` in a table over a carrier of size `n`.
#[inline]
pub fn tuple_index(args: &[usize], n: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

/// Inverse of [`tuple_index`].
pub fn decode_tuple(mut idx: usize, n: usize, arity: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    out
}

/// Advance `tuple` to its lexicographic successor over `0..n`. Returns false
/// after the last tuple.
#[inline]
pub(crate) fn next_tuple(tuple: &mut [usize], n: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < n {
            return true;
        }
        *slot = 0;
    }
    false
}

impl FiniteAlgebra {
    pub fn new(signature: Signature, size: usize, tables: Vec<Vec<usize>>) -> Result<Self> {
        let defects = validate_tables(&signature, size, &tables);
        if !defects.is_empty() {
            return Err(Error::InvalidAlgebra(defects));
        }
        if size > u32::MAX as usize {
            return Err(Error::capacity("carrier size", u32::MAX as usize, size));
        }
        let tables = tables
            .into_iter()
            .map(|t| t.into_iter().map(|v| v as u32).collect())
            .collect();
        Ok(FiniteAlgebra {
            signature,
            size,
            tables,
        })
    }

    /// Builds the tables by evaluating `f(op, args)` on every tuple.
    pub fn from_fn(
        signature: Signature,
        size: usize,
        mut f: impl FnMut(usize, &[usize]) -> usize,
    ) -> Result<Self> {
        let mut tables = Vec::with_capacity(signature.len());
        for op in 0..signature.len() {
            let arity = signature.arity(op);
            let rows = checked_pow(size, arity)
                .ok_or_else(|| Error::capacity("table entries", usize::MAX, usize::MAX))?;
            let mut table = Vec::with_capacity(rows);
            let mut tuple = vec![0; arity];
            if size > 0 {
                loop {
                    table.push(f(op, &tuple));
                    if !next_tuple(&mut tuple, size) {
                        break;
                    }
                }
            }
            tables.push(table);
        }
        FiniteAlgebra::new(signature, size, tables)
    }

    pub(crate) fn from_raw(signature: Signature, size: usize, tables: Vec<Vec<u32>>) -> Self {
        debug_assert!(tables.len() == signature.len());
        FiniteAlgebra {
            signature,
            size,
            tables,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn table(&self, op: usize) -> &[u32] {
        &self.tables[op]
    }

    /// Tables widened back to `usize`, in signature order.
    pub fn tables(&self) -> Vec<Vec<usize>> {
        self.tables
            .iter()
            .map(|t| t.iter().map(|&v| v as usize).collect())
            .collect()
    }

    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        self.tables[op][tuple_index(args, self.size)] as usize
    }

    /// Value of the constant symbol `op`.
    pub fn constant(&self, op: usize) -> usize {
        self.tables[op][0] as usize
    }

    /// Always empty: construction already rejects defective tables.
    pub fn validate(&self) -> Vec<Defect> {
        validate_tables(&self.signature, self.size, &self.tables())
    }

    pub fn same_signature(&self, other: &FiniteAlgebra) -> Result<()> {
        if self.signature != other.signature {
            return Err(Error::SignatureMismatch(format!(
                "{} vs {}",
                self.signature, other.signature
            )));
        }
        Ok(())
    }

    /// The subalgebra on `universe`, which must be a sorted subuniverse.
    /// Element `universe[i]` becomes `i`.
    pub fn induced(&self, universe: &[usize]) -> Result<FiniteAlgebra> {
        if universe.is_empty() {
            return Err(Error::Precondition("subuniverse is empty".into()));
        }
        let mut position = vec![usize::MAX; self.size];
        for (i, &e) in universe.iter().enumerate() {
            if e >= self.size {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    size: self.size,
                });
            }
            position[e] = i;
        }
        let mut args = Vec::new();
        let sub = FiniteAlgebra::from_fn(self.signature.clone(), universe.len(), |op, tuple| {
            args.clear();
            args.extend(tuple.iter().map(|&i| universe[i]));
            position[self.apply(op, &args)]
        });
        sub.map_err(|_| Error::Precondition("element set is not closed under the operations".into()))
    }
}

/// Mixed-radix encoding of product elements; the first factor is most significant.
pub fn encode_product_element(sizes: &[usize], coords: &[usize]) -> usize {
    sizes.iter().zip(coords).fold(0, |acc, (&n, &c)| acc * n + c)
}

pub fn decode_product_element(sizes: &[usize], mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for (slot, &n) in out.iter_mut().zip(sizes).rev() {
        *slot = idx % n;
        idx /= n;
    }
    out
}

/// Direct product with coordinatewise operations.
pub fn product(algs: &[&FiniteAlgebra], limits: &Limits) -> Result<FiniteAlgebra> {
    let first = algs
        .first()
        .ok_or_else(|| Error::Precondition("product of an empty list".into()))?;
    for a in &algs[1..] {
        first.same_signature(a)?;
    }
    let sizes: Vec<usize> = algs.iter().map(|a| a.size()).collect();
    let mut size: usize = 1;
    for &n in &sizes {
        size = size
            .checked_mul(n)
            .filter(|&s| s <= limits.product_size)
            .ok_or_else(|| Error::capacity("product size", limits.product_size, size.saturating_mul(n)))?;
    }
    let sig = first.signature().clone();
    let entries: usize = (0..sig.len())
        .map(|op| checked_pow(size, sig.arity(op)).unwrap_or(usize::MAX))
        .fold(0usize, |a, b| a.saturating_add(b));
    if entries > limits.table_entries {
        return Err(Error::capacity("product table entries", limits.table_entries, entries));
    }
    let decoded: Vec<Vec<usize>> = (0..size).map(|e| decode_product_element(&sizes, e)).collect();
    let mut coord_args = Vec::new();
    let mut out = vec![0; algs.len()];
    FiniteAlgebra::from_fn(sig, size, |op, tuple| {
        for (i, alg) in algs.iter().enumerate() {
            coord_args.clear();
            coord_args.extend(tuple.iter().map(|&e| decoded[e][i]));
            out[i] = alg.apply(op, &coord_args);
        }
        encode_product_element(&sizes, &out)
    })
}

/// Least subuniverse containing `seed` and the constants, as a sorted list.
pub fn generated_subuniverse(alg: &FiniteAlgebra, seed: &[usize]) -> Result<Vec<usize>> {
    let n = alg.size();
    if let Some(&bad) = seed.iter().find(|&&e| e >= n) {
        return Err(Error::ElementOutOfRange { element: bad, size: n });
    }
    let sig = alg.signature();
    if seed.is_empty() && !sig.has_constants() {
        return Err(Error::Precondition(
            "empty seed generates nothing without constants".into(),
        ));
    }
    let mut member = vec![false; n];
    let mut list: Vec<usize> = Vec::new();
    for &e in seed {
        if !member[e] {
            member[e] = true;
            list.push(e);
        }
    }
    for c in sig.constants() {
        let v = alg.constant(c);
        if !member[v] {
            member[v] = true;
            list.push(v);
        }
    }
    // Semi-naive closure: each round only needs tuples touching the last frontier.
    let mut old_len = 0;
    let mut args = Vec::new();
    while old_len < list.len() {
        let frontier_start = old_len;
        let cur_len = list.len();
        old_len = cur_len;
        for op in 0..sig.len() {
            let arity = sig.arity(op);
            if arity == 0 {
                continue;
            }
            let mut idx = vec![0; arity];
            loop {
                if idx.iter().any(|&i| i >= frontier_start) {
                    args.clear();
                    args.extend(idx.iter().map(|&i| list[i]));
                    let v = alg.apply(op, &args);
                    if !member[v] {
                        member[v] = true;
                        list.push(v);
                    }
                }
                if !next_tuple(&mut idx, cur_len) {
                    break;
                }
            }
        }
    }
    list.sort_unstable();
    Ok(list)
}

/// True when `set` is closed under every operation (and contains every constant).
pub fn is_subuniverse(alg: &FiniteAlgebra, set: &[usize]) -> bool {
    if set.iter().any(|&e| e >= alg.size()) {
        return false;
    }
    let mut member = vec![false; alg.size()];
    for &e in set {
        member[e] = true;
    }
    let sig = alg.signature();
    let mut args = Vec::new();
    for op in 0..sig.len() {
        let arity = sig.arity(op);
        if arity == 0 {
            if !member[alg.constant(op)] {
                return false;
            }
            continue;
        }
        if set.is_empty() {
            continue;
        }
        let mut idx = vec![0; arity];
        loop {
            args.clear();
            args.extend(idx.iter().map(|&i| set[i]));
            if !member[alg.apply(op, &args)] {
                return false;
            }
            if !next_tuple(&mut idx, set.len()) {
                break;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog as examples;

    #[test]
    fn out_of_range_value_is_reported() {
        let sig = Signature::from_pairs(&[("f", 1)]).unwrap();
        let defects = validate_tables(&sig, 2, &[vec![0, 2]]);
        assert_eq!(defects.len(), 1);
        assert!(defects[0].to_string().contains("value out of range"));
        assert_eq!(
            defects[0].kind,
            DefectKind::OutOfRange {
                tuple: vec![1],
                value: 2
            }
        );
    }

    #[test]
    fn meet_table_is_valid() {
        let sig = Signature::from_pairs(&[("meet", 2)]).unwrap();
        assert!(validate_tables(&sig, 2, &[vec![0, 0, 0, 1]]).is_empty());
    }

    #[test]
    fn short_table_is_not_total() {
        let sig = Signature::from_pairs(&[("meet", 2)]).unwrap();
        let defects = validate_tables(&sig, 2, &[vec![0, 0, 0]]);
        assert_eq!(defects.len(), 1);
        assert!(defects[0].to_string().contains("table not total"));
    }

    #[test]
    fn empty_carrier_rejected() {
        let sig = Signature::from_pairs(&[("f", 1)]).unwrap();
        assert!(FiniteAlgebra::new(sig, 0, vec![vec![]]).is_err());
    }

    #[test]
    fn product_of_semilattices_is_coordinatewise() {
        let s = examples::semilattice();
        let p = product(&[&s, &s], &Limits::default()).unwrap();
        assert_eq!(p.size(), 4);
        for a in 0..4 {
            for b in 0..4 {
                let ca = decode_product_element(&[2, 2], a);
                let cb = decode_product_element(&[2, 2], b);
                let expected = encode_product_element(&[2, 2], &[ca[0].min(cb[0]), ca[1].min(cb[1])]);
                assert_eq!(p.apply(0, &[a, b]), expected);
            }
        }
    }

    #[test]
    fn unary_product_is_identity_copy() {
        let b = examples::boolean_algebra();
        let p = product(&[&b], &Limits::default()).unwrap();
        assert_eq!(p, b);
    }

    #[test]
    fn product_respects_capacity() {
        let s = examples::semilattice();
        let limits = Limits {
            product_size: 3,
            ..Limits::default()
        };
        let err = product(&[&s, &s], &limits).unwrap_err();
        assert!(err.is_capacity());
    }

    #[test]
    fn closure_of_constants_under_discriminator() {
        let a = examples::three_element_disc_with_constants();
        assert_eq!(generated_subuniverse(&a, &[]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn closure_of_everything_is_everything() {
        let a = examples::three_element_disc_with_constants();
        assert_eq!(generated_subuniverse(&a, &[2, 0, 1]).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn negation_closes_singleton() {
        let sig = Signature::from_pairs(&[("neg", 1)]).unwrap();
        let a = FiniteAlgebra::new(sig, 2, vec![vec![1, 0]]).unwrap();
        assert_eq!(generated_subuniverse(&a, &[0]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn empty_seed_without_constants_is_an_error() {
        let s = examples::semilattice();
        assert!(generated_subuniverse(&s, &[]).is_err());
    }

    #[test]
    fn induced_rejects_non_subuniverse() {
        let a = examples::three_element_disc_with_constants();
        assert!(a.induced(&[0, 1]).is_ok());
        assert!(a.induced(&[0, 2]).is_err());
    }
}
