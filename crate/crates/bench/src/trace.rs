//! Plain-text operation traces.
//!
//! ```text
//! n 5
//! L 0 1
//! Q 1 0
//! C 0 1
//! ```

use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use ettforest::measure::{vertex_id, InvalidVertex};
use ettforest::VertexId;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    Link,
    Cut,
    Query,
}

impl OpKind {
    pub const ALL: [OpKind; 3] = [OpKind::Link, OpKind::Cut, OpKind::Query];

    pub fn letter(self) -> char {
        match self {
            OpKind::Link => 'L',
            OpKind::Cut => 'C',
            OpKind::Query => 'Q',
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TraceOp {
    pub kind: OpKind,
    pub x: VertexId,
    pub y: VertexId,
}

impl TraceOp {
    pub fn new(kind: OpKind, x: VertexId, y: VertexId) -> Self {
        TraceOp { kind, x, y }
    }
}

impl fmt::Display for TraceOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.kind.letter(), self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trace {
    pub n: usize,
    pub ops: Vec<TraceOp>,
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("reading trace: {0}")]
    Io(#[from] io::Error),
    #[error("trace is missing its `n <count>` header")]
    MissingHeader,
    #[error("line {line}: malformed header `{text}`")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: expected `L|C|Q x y`, found `{text}`")]
    BadOp { line: usize, text: String },
    #[error("line {line}: {source}")]
    BadVertex { line: usize, source: InvalidVertex },
    #[error("line {line}: vertex {vertex} is not below n = {n}")]
    OutOfRange {
        line: usize,
        vertex: VertexId,
        n: usize,
    },
}

fn parse_vertex(tok: &str, line: usize, text: &str) -> Result<VertexId, TraceError> {
    let raw: i64 = tok.parse().map_err(|_| TraceError::BadOp {
        line,
        text: text.to_string(),
    })?;
    vertex_id(raw).map_err(|source| TraceError::BadVertex { line, source })
}

impl FromStr for Trace {
    type Err = TraceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or(TraceError::MissingHeader)?;
        let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["n", count] => count.parse::<usize>().ok(),
            _ => None,
        }
        .ok_or_else(|| TraceError::BadHeader {
            line: hl,
            text: header.to_string(),
        })?;
        let mut ops = Vec::new();
        for (line, text) in lines {
            let bad = || TraceError::BadOp {
                line,
                text: text.to_string(),
            };
            let toks: Vec<&str> = text.split_whitespace().collect();
            let [k, x, y] = toks[..] else {
                return Err(bad());
            };
            let kind = match k {
                "L" => OpKind::Link,
                "C" => OpKind::Cut,
                "Q" => OpKind::Query,
                _ => return Err(bad()),
            };
            let (x, y) = (parse_vertex(x, line, text)?, parse_vertex(y, line, text)?);
            for vertex in [x, y] {
                if vertex as usize >= n {
                    return Err(TraceError::OutOfRange { line, vertex, n });
                }
            }
            ops.push(TraceOp { kind, x, y });
        }
        Ok(Trace { n, ops })
    }
}

impl Trace {
    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "n {}", self.n)?;
        for op in &self.ops {
            writeln!(w, "{op}")?;
        }
        w.flush()
    }

    pub fn save(&self, path: &Path) -> io::Result<()> {
        self.write_to(BufWriter::new(fs::File::create(path)?))
    }

    pub fn load(path: &Path) -> Result<Self, TraceError> {
        fs::read_to_string(path)?.parse()
    }

    pub fn count(&self, kind: OpKind) -> usize {
        self.ops.iter().filter(|o| o.kind == kind).count()
    }

    /// The links of this trace in reverse order, as cuts.
    pub fn reversed_cuts(&self) -> Trace {
        Trace {
            n: self.n,
            ops: self
                .ops
                .iter()
                .rev()
                .filter(|o| o.kind == OpKind::Link)
                .map(|o| TraceOp::new(OpKind::Cut, o.x, o.y))
                .collect(),
        }
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for op in &self.ops {
            writeln!(f, "{op}")?;
        }
        Ok(())
    }
}
