//! A small composable construction grammar for polytopes:
//!
//! ```text
//! expr := simplex(n) | cube(n, a) | dilate(k, expr) | product(expr, expr)
//!       | pyramid(expr) | cayley(expr, ..., expr) | file(path)
//! ```
//!
//! Whitespace is ignored. `file` paths run to the closing parenthesis and
//! therefore cannot contain `)` or `,`.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use polydefect_core::LatticePolytope;

use crate::format::load_polytope;

/// Parses and evaluates a construction expression. Relative `file(...)`
/// paths are resolved against `base_dir`.
pub fn build(spec: &str, base_dir: &Path) -> Result<LatticePolytope> {
    let mut parser = Parser {
        input: spec,
        pos: 0,
        base_dir,
    };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.input.len() {
        bail!(
            "trailing input after construction expression: {:?}",
            &parser.input[parser.pos..]
        );
    }
    Ok(p)
}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
    base_dir: &'a Path,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.input[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.input[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            bail!("expected {c:?} at position {} in construction expression", self.pos);
        }
    }

    fn peek_is(&mut self, c: char) -> bool {
        self.skip_ws();
        self.input[self.pos..].starts_with(c)
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.input[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_alphabetic() && c != '_')
            .unwrap_or(rest.len());
        if len == 0 {
            bail!("expected a constructor name at position {}", self.pos);
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let rest = &self.input[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if len == 0 {
            bail!("expected a number at position {}", self.pos);
        }
        self.pos += len;
        rest[..len]
            .parse()
            .with_context(|| format!("number out of range: {}", &rest[..len]))
    }

    fn expr(&mut self) -> Result<LatticePolytope> {
        let name = self.ident()?;
        self.expect('(')?;
        let result = match name {
            "simplex" => {
                let n = self.number()?;
                if n == 0 {
                    bail!("simplex dimension must be >= 1");
                }
                polydefect_core::polytope::build::simplex(n as usize)
            }
            "cube" => {
                let n = self.number()?;
                self.expect(',')?;
                let a = self.number()?;
                if n == 0 || a == 0 {
                    bail!("cube needs dimension >= 1 and side length >= 1");
                }
                polydefect_core::polytope::build::cube(n as usize, a)
            }
            "dilate" => {
                let k = self.number()?;
                self.expect(',')?;
                let inner = self.expr()?;
                if k == 0 {
                    bail!("dilation factor must be >= 1");
                }
                inner
                    .dilate(k)
                    .map_err(|e| anyhow::anyhow!("dilate failed: {e}"))?
            }
            "product" => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                a.product(&b)
            }
            "pyramid" => self.expr()?.pyramid(),
            "cayley" => {
                let mut factors = vec![self.expr()?];
                while self.peek_is(',') {
                    self.expect(',')?;
                    factors.push(self.expr()?);
                }
                LatticePolytope::cayley(&factors)
                    .map_err(|e| anyhow::anyhow!("cayley failed: {e}"))?
            }
            "file" => {
                self.skip_ws();
                let rest = &self.input[self.pos..];
                let len = rest
                    .find(|c| c == ')' || c == ',')
                    .context("unterminated file(...) path")?;
                let raw = rest[..len].trim();
                if raw.is_empty() {
                    bail!("empty file(...) path");
                }
                self.pos += len;
                let mut path = PathBuf::from(raw);
                if path.is_relative() {
                    path = self.base_dir.join(path);
                }
                load_polytope(&path)?
            }
            other => bail!("unknown constructor {other:?}"),
        };
        self.expect(')')?;
        Ok(result)
    }
}
