//! Map files:
//!
//! ```text
//! # comment
//! vars: x, y, z
//! f1 = (x^2 - y*z)*z
//! f2 = 2*x*(x^2 - y*z)
//! f3 = 0
//! ```

use std::fmt;

use derivalg::{parse_polynomial, PolyMap, Polynomial};

#[derive(Clone, Debug)]
pub struct MapFile {
    pub vars: Vec<String>,
    pub map: PolyMap,
}

/// A located failure; `line` and `column` are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapFileError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for MapFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

fn fail(line: usize, column: usize, message: impl Into<String>) -> MapFileError {
    MapFileError {
        line,
        column,
        message: message.into(),
    }
}

fn char_column(text: &str, byte: usize) -> usize {
    text[..byte].chars().count() + 1
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl MapFile {
    pub fn parse(text: &str) -> Result<MapFile, MapFileError> {
        let mut vars: Option<Vec<String>> = None;
        let mut comps: Vec<Option<Polynomial>> = Vec::new();
        let mut last_line = 0;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            last_line = line;
            let body = raw.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            let Some(names) = &vars else {
                let lead = body.len() - body.trim_start().len();
                let rest = body.trim_start();
                let Some(list) = rest.strip_prefix("vars:") else {
                    return Err(fail(line, char_column(body, lead) , "expected `vars:` header"));
                };
                let mut names = Vec::new();
                let mut offset = lead + "vars:".len();
                for piece in list.split(',') {
                    let name = piece.trim();
                    let col = char_column(body, offset + (piece.len() - piece.trim_start().len()));
                    if !valid_name(name) {
                        return Err(fail(line, col, format!("invalid variable name `{name}`")));
                    }
                    if names.iter().any(|n| n == name) {
                        return Err(fail(line, col, format!("duplicate variable `{name}`")));
                    }
                    names.push(name.to_string());
                    offset += piece.len() + 1;
                }
                comps = vec![None; names.len()];
                vars = Some(names);
                continue;
            };
            let Some(eq) = body.find('=') else {
                return Err(fail(line, 1, "expected `f<i> = <polynomial>`"));
            };
            let lhs = body[..eq].trim();
            let lhs_col = char_column(body, body.len() - body.trim_start().len());
            let index = lhs
                .strip_prefix('f')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|i| (1..=names.len()).contains(i))
                .ok_or_else(|| {
                    fail(
                        line,
                        lhs_col,
                        format!("expected f1 .. f{} on the left, found `{lhs}`", names.len()),
                    )
                })?;
            if comps[index - 1].is_some() {
                return Err(fail(line, lhs_col, format!("f{index} defined twice")));
            }
            let expr = &body[eq + 1..];
            let p = parse_polynomial(expr, names).map_err(|e| {
                let col = char_column(body, eq + 1) + e.position;
                fail(line, col, e.kind.to_string())
            })?;
            comps[index - 1] = Some(p);
        }
        let vars = vars.ok_or_else(|| fail(last_line.max(1), 1, "missing `vars:` header"))?;
        if vars.is_empty() {
            return Err(fail(1, 1, "no variables"));
        }
        let mut out = Vec::with_capacity(vars.len());
        for (i, c) in comps.into_iter().enumerate() {
            out.push(c.ok_or_else(|| fail(last_line.max(1), 1, format!("f{} is not defined", i + 1)))?);
        }
        let map = PolyMap::new(out).map_err(|e| fail(1, 1, e.to_string()))?;
        Ok(MapFile { vars, map })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let m = MapFile::parse("# c\nvars: x, y\nf2 = 0 # trailing\nf1 = y^2\n").unwrap();
        assert_eq!(m.vars, ["x", "y"]);
        assert_eq!(m.map.format(&m.vars), "(y^2, 0)");
    }

    #[test]
    fn reports_expression_column() {
        let e = MapFile::parse("vars: x, y\nf1 = x + q\nf2 = 0\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 10));
        assert!(e.message.contains("`q`"), "{e}");
    }

    #[test]
    fn rejects_missing_and_duplicate_definitions() {
        assert!(MapFile::parse("vars: x, y\nf1 = x\n").unwrap_err().message.contains("f2"));
        let e = MapFile::parse("vars: x\nf1 = x\nf1 = 0\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(MapFile::parse("vars: x, x\nf1 = 0\n").is_err());
        assert!(MapFile::parse("f1 = 0\n").is_err());
        assert_eq!(MapFile::parse("vars: x\nf3 = 0\n").unwrap_err().column, 1);
    }
}
