//! Line-oriented spec grammar:
//!
//! ```text
//! grid M N                  | hypergrid M N
//! L (i,j) (k,l) [w=p/q]     # signed edge, default weight 1
//! Q (i,j) (k,l) [w=p/q]     # signless edge
//! H (i,j) (k,l) (m,n)       # hyperedge (hypergrid only)
//! ```

use std::fmt::Write as _;

use num_bigint::BigInt;

use super::Spec;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeKind, GridGraph, Hyperedge, Hypergraph, VertexId, Weight};
use crate::Rational;

struct Cursor<'a> {
    line: usize,
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        Self {
            line,
            chars: text.char_indices().collect(),
            pos: 0,
            text,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.chars.len()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => Err(self.error(format!("expected `{c}`, found `{found}`"))),
            None => Err(self.error(format!("expected `{c}`, found end of line"))),
        }
    }

    fn word(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a keyword"));
        }
        Ok(self.slice(start, self.pos))
    }

    fn slice(&self, start: usize, end: usize) -> &'a str {
        let from = self.chars[start].0;
        let to = self.chars.get(end).map_or(self.text.len(), |&(i, _)| i);
        &self.text[from..to]
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s = self.slice(start, self.pos);
        if s.is_empty() || s == "-" {
            self.pos = start;
            return Err(self.error("expected a number"));
        }
        Ok(s)
    }

    fn index(&mut self) -> Result<usize> {
        let start = self.pos;
        let s = self.digits()?;
        s.parse().map_err(|_| {
            self.pos = start;
            self.skip_ws();
            self.error(format!("`{s}` is not a valid index"))
        })
    }

    fn vertex(&mut self) -> Result<VertexId> {
        self.expect('(')?;
        let row = self.index()?;
        self.expect(',')?;
        let col = self.index()?;
        self.expect(')')?;
        Ok(VertexId::new(row, col))
    }

    /// `w=p/q` or `w=p`, as an unchecked rational.
    fn weight(&mut self) -> Result<Rational> {
        let key = self.word()?;
        if key != "w" {
            return Err(self.error(format!("expected `w=`, found `{key}`")));
        }
        self.expect('=')?;
        let numer: BigInt = self.digits()?.parse().expect("digits form an integer");
        self.skip_ws();
        let denom: BigInt = if self.peek() == Some('/') {
            self.pos += 1;
            let s = self.digits()?;
            let d: BigInt = s.parse().expect("digits form an integer");
            if d == BigInt::from(0) {
                return Err(self.error("zero denominator"));
            }
            d
        } else {
            BigInt::from(1)
        };
        Ok(Rational::new(numer, denom))
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(code, _)| code)
}

/// Parses a spec. Syntax errors carry line and column; semantic errors
/// (bounds, self-loops, duplicates, weights) carry the statement index, where
/// the header is statement 0.
pub fn parse_spec(text: &str) -> Result<Spec> {
    let mut spec: Option<Spec> = None;
    let mut statement = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut cur = Cursor::new(line, strip_comment(raw));
        if cur.at_end() {
            continue;
        }
        let head_col = cur.column();
        let keyword = cur.word()?;
        let semantic = |statement: usize, source: Error| Error::Semantic {
            statement,
            line,
            source: Box::new(source),
        };
        let Some(current) = spec.as_mut() else {
            let hyper = match keyword {
                "grid" => false,
                "hypergrid" => true,
                other => {
                    return Err(Error::Parse {
                        line,
                        column: head_col,
                        message: format!("expected `grid` or `hypergrid`, found `{other}`"),
                    })
                }
            };
            let rows = cur.index()?;
            let cols = cur.index()?;
            cur.finish()?;
            spec = Some(if hyper {
                Spec::Hypergraph(Hypergraph::new(rows, cols).map_err(|e| semantic(0, e))?)
            } else {
                Spec::Graph(GridGraph::new(rows, cols).map_err(|e| semantic(0, e))?)
            });
            continue;
        };
        statement += 1;
        let wrong = |what: &str| Error::Parse {
            line,
            column: head_col,
            message: what.to_string(),
        };
        match (keyword, current) {
            ("L" | "Q", Spec::Graph(g)) => {
                let kind = if keyword == "L" { EdgeKind::L } else { EdgeKind::Q };
                let a = cur.vertex()?;
                let b = cur.vertex()?;
                let weight = if cur.at_end() { None } else { Some(cur.weight()?) };
                cur.finish()?;
                let weight = match weight {
                    Some(w) => Weight::new(w).map_err(|e| semantic(statement, e))?,
                    None => Weight::one(),
                };
                g.check_vertex(a)
                    .and_then(|_| g.check_vertex(b))
                    .and_then(|_| Edge::new(kind, a, b, weight))
                    .and_then(|e| g.insert(e))
                    .map_err(|e| semantic(statement, e))?;
            }
            ("H", Spec::Hypergraph(h)) => {
                let a = cur.vertex()?;
                let b = cur.vertex()?;
                let c = cur.vertex()?;
                cur.finish()?;
                Hyperedge::new(a, b, c)
                    .and_then(|e| h.add(e))
                    .map_err(|e| semantic(statement, e))?;
            }
            ("L" | "Q", Spec::Hypergraph(_)) => return Err(wrong("edge lines are not allowed in a hypergrid")),
            ("H", Spec::Graph(_)) => return Err(wrong("hyperedge lines need a `hypergrid` header")),
            (other, _) => return Err(wrong(&format!("unknown statement `{other}`"))),
        }
    }
    spec.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        column: 1,
        message: "missing `grid` or `hypergrid` header".into(),
    })
}

/// Canonical text: header, then statements in canonical edge order.
pub fn print_spec(spec: &Spec) -> String {
    let mut out = String::new();
    match spec {
        Spec::Graph(g) => {
            let _ = writeln!(out, "grid {} {}", g.rows(), g.cols());
            for e in g.edges() {
                let _ = writeln!(out, "{e}");
            }
        }
        Spec::Hypergraph(h) => {
            let _ = writeln!(out, "hypergrid {} {}", h.rows(), h.cols());
            for e in h.hyperedges() {
                let _ = writeln!(out, "{e}");
            }
        }
    }
    out
}
