use std::fmt::Write as _;

use crate::algebra::{is_identifier, FiniteAlgebra, Signature, Symbol};
use crate::error::{Error, Result};
use crate::free::GeneratingClass;
use crate::limits::checked_pow;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedAlgebra {
    pub name: String,
    pub algebra: FiniteAlgebra,
}

/// Table values beyond this many per file are rejected.
const MAX_VALUES: usize = 1 << 24;

struct Tokens<'a> {
    items: Vec<(&'a str, usize)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let mut items = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let code = line.split('#').next().unwrap_or("");
            items.extend(code.split_whitespace().map(|t| (t, i + 1)));
        }
        Tokens { items, pos: 0 }
    }

    fn peek(&self) -> Option<&'a str> {
        self.items.get(self.pos).map(|(t, _)| *t)
    }

    fn line(&self) -> usize {
        self.items
            .get(self.pos)
            .or_else(|| self.items.last())
            .map_or(1, |(_, l)| *l)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line(),
            message: message.into(),
        }
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        let t = self
            .peek()
            .ok_or_else(|| self.error(format!("expected {what}, found end of file")))?;
        self.pos += 1;
        Ok(t)
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(t) if t == kw => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.error(format!("expected `{kw}`, found `{t}`"))),
            None => Err(self.error(format!("expected `{kw}`, found end of file"))),
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        let t = self.next(what)?;
        t.parse().map_err(|_| {
            self.pos -= 1;
            self.error(format!("expected {what}, found `{t}`"))
        })
    }

    fn identifier(&mut self, what: &str) -> Result<&'a str> {
        let t = self.next(what)?;
        if is_identifier(t) {
            Ok(t)
        } else {
            self.pos -= 1;
            Err(self.error(format!("expected {what}, found `{t}`")))
        }
    }
}

struct Block {
    name: String,
    line: usize,
    size: usize,
    ops: Vec<(Symbol, Vec<usize>)>,
}

fn parse_block(toks: &mut Tokens<'_>, total_values: &mut usize) -> Result<Block> {
    let line = toks.line();
    toks.keyword("algebra")?;
    let name = toks.identifier("an algebra name")?.to_string();
    toks.keyword("size")?;
    let size = toks.number("a carrier size")?;
    if size == 0 {
        toks.pos -= 1;
        return Err(toks.error("carrier size must be positive"));
    }
    let mut ops: Vec<(Symbol, Vec<usize>)> = Vec::new();
    while toks.peek() == Some("op") {
        toks.pos += 1;
        let op_name = toks.identifier("an operation name")?.to_string();
        if ops.iter().any(|(s, _)| s.name == op_name) {
            toks.pos -= 1;
            return Err(toks.error(format!("operation `{op_name}` listed twice")));
        }
        let arity = toks.number("an arity")?;
        let count = checked_pow(size, arity)
            .filter(|&c| *total_values + c <= MAX_VALUES)
            .ok_or_else(|| toks.error(format!("table of `{op_name}` is too large")))?;
        *total_values += count;
        let mut values = Vec::with_capacity(count);
        for i in 0..count {
            let what = format!("value {} of {count} for `{op_name}`", i + 1);
            match toks.peek() {
                Some(t) if t.parse::<usize>().is_ok() => values.push(toks.number(&what)?),
                Some(t) => return Err(toks.error(format!("table not total: expected {what}, found `{t}`"))),
                None => return Err(toks.error(format!("table not total: expected {what}, found end of file"))),
            }
        }
        ops.push((Symbol { name: op_name, arity }, values));
    }
    match toks.peek() {
        None | Some("algebra") => Ok(Block { name, line, size, ops }),
        Some(t) => Err(toks.error(format!("expected `op` or `algebra`, found `{t}`"))),
    }
}

/// Parses one or more `algebra` blocks sharing the signature of the first.
/// Later blocks may list the operations in any order.
pub fn parse_algebra_file(text: &str) -> Result<Vec<NamedAlgebra>> {
    let mut toks = Tokens::new(text);
    if toks.peek().is_none() {
        return Err(Error::Syntax {
            line: 1,
            message: "no algebra defined".into(),
        });
    }
    let mut total_values = 0;
    let mut blocks = Vec::new();
    while toks.peek().is_some() {
        blocks.push(parse_block(&mut toks, &mut total_values)?);
    }
    let sig = Signature::new(blocks[0].ops.iter().map(|(s, _)| s.clone()).collect())?;
    let mut out: Vec<NamedAlgebra> = Vec::with_capacity(blocks.len());
    for b in blocks {
        if out.iter().any(|a| a.name == b.name) {
            return Err(Error::Syntax {
                line: b.line,
                message: format!("algebra `{}` defined twice", b.name),
            });
        }
        let mut tables = vec![None; sig.len()];
        for (sym, values) in b.ops {
            match sig.index_of(&sym.name) {
                Some(i) if sig.arity(i) == sym.arity => tables[i] = Some(values),
                Some(i) => {
                    return Err(Error::SignatureMismatch(format!(
                        "algebra `{}` gives `{}` arity {}, expected {}",
                        b.name,
                        sym.name,
                        sym.arity,
                        sig.arity(i)
                    )))
                }
                None => {
                    return Err(Error::SignatureMismatch(format!(
                        "algebra `{}` has operation `{}` not in the signature {sig}",
                        b.name, sym.name
                    )))
                }
            }
        }
        if let Some(i) = tables.iter().position(Option::is_none) {
            return Err(Error::SignatureMismatch(format!(
                "algebra `{}` lacks operation `{}` of the signature {sig}",
                b.name,
                sig.name(i)
            )));
        }
        let tables = tables.into_iter().map(Option::unwrap).collect();
        let algebra = FiniteAlgebra::new(sig.clone(), b.size, tables)?;
        out.push(NamedAlgebra { name: b.name, algebra });
    }
    Ok(out)
}

/// The generating class of every algebra in the file.
pub fn parse_class(text: &str) -> Result<(Vec<String>, GeneratingClass)> {
    let named = parse_algebra_file(text)?;
    let names = named.iter().map(|n| n.name.clone()).collect();
    let class = GeneratingClass::new(named.into_iter().map(|n| n.algebra).collect())?;
    Ok((names, class))
}

/// Renders algebras in the file format, one table row per line.
pub fn write_algebra_file(algebras: &[NamedAlgebra]) -> String {
    let mut out = String::new();
    for (i, a) in algebras.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let alg = &a.algebra;
        let n = alg.size();
        let _ = writeln!(out, "algebra {}", a.name);
        let _ = writeln!(out, "size {n}");
        for (op, sym) in alg.signature().symbols().iter().enumerate() {
            let _ = writeln!(out, "op {} {}", sym.name, sym.arity);
            let row = if sym.arity == 0 { 1 } else { n };
            for chunk in alg.table(op).chunks(row) {
                let line: Vec<String> = chunk.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "{}", line.join(" "));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn semilattice_block() {
        let algs = parse_algebra_file("algebra A\nsize 2\nop meet 2\n0 0 0 1\n").unwrap();
        assert_eq!(algs.len(), 1);
        assert_eq!(algs[0].name, "A");
        assert_eq!(algs[0].algebra, catalog::semilattice());
    }

    #[test]
    fn comments_and_layout() {
        let text = "# a semilattice\nalgebra A size 2 # inline\nop meet 2 0 0\n0 1";
        assert_eq!(parse_algebra_file(text).unwrap()[0].algebra, catalog::semilattice());
    }

    #[test]
    fn mismatched_blocks() {
        let text = "algebra A\nsize 2\nop meet 2\n0 0 0 1\nalgebra B\nsize 2\nop join 2\n0 1 1 1\n";
        assert!(matches!(parse_algebra_file(text), Err(Error::SignatureMismatch(_))));
    }

    #[test]
    fn reordered_operations_are_aligned() {
        let text = "algebra A size 2 op meet 2 0 0 0 1 op neg 1 1 0\nalgebra B size 2 op neg 1 1 0 op meet 2 0 0 0 1";
        let algs = parse_algebra_file(text).unwrap();
        assert_eq!(algs[0].algebra, algs[1].algebra);
    }

    #[test]
    fn short_table_is_positioned() {
        let err = parse_algebra_file("algebra A\nsize 2\nop meet 2\n0 0 0\n").unwrap_err();
        match err {
            Error::Syntax { line, message } => {
                assert_eq!(line, 4);
                assert!(message.contains("table not total"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn out_of_range_value() {
        let err = parse_algebra_file("algebra A size 2 op neg 1 2 0").unwrap_err();
        assert!(err.to_string().contains("value out of range"));
    }

    #[test]
    fn round_trip() {
        let algs = vec![NamedAlgebra {
            name: "D".into(),
            algebra: catalog::three_element_disc_with_constants(),
        }];
        assert_eq!(parse_algebra_file(&write_algebra_file(&algs)).unwrap(), algs);
    }
}
