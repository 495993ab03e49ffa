use std::fmt::Write;

use crate::algebra::Signature;
use crate::error::{Error, Result};
use crate::term::{parse_quasi_identity, QuasiIdentity};

/// Quasi-identities one per line; `#` starts a comment, blank lines are skipped.
pub fn parse_corpus(text: &str, sig: &Signature) -> Result<Vec<QuasiIdentity>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let code = line.split('#').next().unwrap_or("").trim();
        if code.is_empty() {
            continue;
        }
        let q = parse_quasi_identity(code, sig).map_err(|e| Error::Syntax {
            line: i + 1,
            message: e.to_string(),
        })?;
        out.push(q);
    }
    Ok(out)
}

pub fn write_corpus(qs: &[QuasiIdentity], sig: &Signature) -> String {
    let mut out = String::new();
    for q in qs {
        let _ = writeln!(out, "{}", q.to_string_with(sig));
    }
    out
}
