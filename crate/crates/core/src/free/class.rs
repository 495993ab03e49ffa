use crate::algebra::{FiniteAlgebra, Signature};
use crate::error::{Error, Result};

/// A finite, nonempty list of finite algebras over one signature; the
/// quasivariety under study is the one they generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingClass {
    members: Vec<FiniteAlgebra>,
}

/// Term functions are stored one byte per coordinate.
pub const MAX_MEMBER_SIZE: usize = 256;

impl GeneratingClass {
    pub fn new(members: Vec<FiniteAlgebra>) -> Result<Self> {
        let first = members.first().ok_or(Error::EmptyClass)?;
        for m in &members[1..] {
            first.same_signature(m)?;
        }
        if let Some(m) = members.iter().find(|m| m.size() > MAX_MEMBER_SIZE) {
            return Err(Error::capacity("member size", MAX_MEMBER_SIZE, m.size()));
        }
        Ok(GeneratingClass { members })
    }

    pub fn single(alg: FiniteAlgebra) -> Self {
        GeneratingClass::new(vec![alg]).expect("single algebra forms a class")
    }

    pub fn members(&self) -> &[FiniteAlgebra] {
        &self.members
    }

    pub fn signature(&self) -> &Signature {
        self.members[0].signature()
    }

    pub fn max_size(&self) -> usize {
        self.members.iter().map(FiniteAlgebra::size).max().unwrap_or(0)
    }

    pub fn has_nontrivial(&self) -> bool {
        self.members.iter().any(|m| !m.is_trivial())
    }

    pub(crate) fn require_nontrivial(&self) -> Result<()> {
        if self.has_nontrivial() {
            Ok(())
        } else {
            Err(Error::TrivialClass)
        }
    }

    /// Two constant symbols that differ in some member, i.e. denote distinct
    /// elements of every free algebra.
    pub fn distinct_constants(&self) -> Option<(usize, usize)> {
        let consts: Vec<usize> = self.signature().constants().collect();
        for (i, &c) in consts.iter().enumerate() {
            for &e in &consts[i + 1..] {
                if self.members.iter().any(|m| m.constant(c) != m.constant(e)) {
                    return Some((c, e));
                }
            }
        }
        None
    }
}
