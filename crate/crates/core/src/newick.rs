//! Newick dialect with mutation times in the internal-node label position.
//!
//! ```text
//! tree    := subtree ";"
//! subtree := leaf | "(" subtree "," subtree ")" time
//! leaf    := name
//! name    := [A-Za-z0-9_.|-]+
//! time    := digits ["." 1-6 digits]
//! ```
//!
//! Spaces, tabs and newlines may separate tokens on input. Output is canonical:
//! no whitespace, shortest decimal times, children in stored order.
//!
//! The parser and writer are iterative, so caterpillar trees with many
//! thousands of levels do not exhaust the stack.

use thiserror::Error;

use crate::time::{TimeParseError, TimeTicks};
use crate::tree::{build_tree, MixtureTree, NodeId, RawNode, Strictness, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NewickError {
    #[error("syntax error at byte {offset}: expected {expected}")]
    Syntax { offset: usize, expected: &'static str },
    #[error("missing mutation time at byte {offset}")]
    MissingTime { offset: usize },
    #[error("negative mutation time at byte {offset}")]
    NegativeTime { offset: usize },
    #[error("more than 6 fractional digits in time at byte {offset}")]
    TooManyFractionDigits { offset: usize },
    #[error("time at byte {offset} does not fit in 64-bit ticks")]
    TimeOutOfRange { offset: usize },
    #[error("invalid tree (byte {}): {source}", offset.map_or("?".to_string(), |o| o.to_string()))]
    Tree {
        offset: Option<usize>,
        source: TreeError,
    },
}

impl NewickError {
    /// Byte offset of the error in the parsed text, when known.
    pub fn offset(&self) -> Option<usize> {
        match *self {
            NewickError::Syntax { offset, .. }
            | NewickError::MissingTime { offset }
            | NewickError::NegativeTime { offset }
            | NewickError::TooManyFractionDigits { offset }
            | NewickError::TimeOutOfRange { offset } => Some(offset),
            NewickError::Tree { offset, .. } => offset,
        }
    }
}

/// An error in a multi-tree file, tagged with its 1-based line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {error}")]
pub struct NewickFileError {
    pub line: usize,
    pub error: NewickError,
}

fn is_name_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || matches!(b, b'_' | b'.' | b'|' | b'-')
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while matches!(self.bytes.get(self.pos), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        // only ASCII bytes pass the predicates used here
        std::str::from_utf8(&self.bytes[start..self.pos]).unwrap()
    }

    fn error(&self, expected: &'static str) -> NewickError {
        NewickError::Syntax {
            offset: self.pos.min(self.bytes.len().saturating_sub(1)),
            expected,
        }
    }
}

/// Parses one tree into unvalidated records plus the byte offset of each record.
pub fn parse_records(text: &str) -> Result<(Vec<RawNode>, Vec<usize>), NewickError> {
    let mut cur = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let mut records = Vec::new();
    let mut offsets = Vec::new();
    // open parentheses: (offset of '(', children completed so far)
    let mut open: Vec<(usize, Vec<usize>)> = Vec::new();

    'subtree: loop {
        cur.skip_ws();
        let mut done = match cur.peek() {
            Some(b'(') => {
                open.push((cur.pos, Vec::with_capacity(2)));
                cur.pos += 1;
                continue 'subtree;
            }
            Some(b) if is_name_byte(b) => {
                let start = cur.pos;
                let name = cur.take_while(is_name_byte).to_owned();
                records.push(RawNode::leaf(name));
                offsets.push(start);
                records.len() - 1
            }
            _ => return Err(cur.error("'(' or leaf name")),
        };

        loop {
            let Some((_, children)) = open.last_mut() else {
                break 'subtree;
            };
            children.push(done);
            cur.skip_ws();
            if children.len() == 1 {
                if cur.peek() != Some(b',') {
                    return Err(cur.error("','"));
                }
                cur.pos += 1;
                continue 'subtree;
            }
            if cur.peek() != Some(b')') {
                return Err(cur.error("')'"));
            }
            cur.pos += 1;
            let (start, children) = open.pop().unwrap();
            let time = parse_time(&mut cur)?;
            records.push(RawNode::internal(time, children[0], children[1]));
            offsets.push(start);
            done = records.len() - 1;
        }
    }

    cur.skip_ws();
    if cur.peek() != Some(b';') {
        return Err(cur.error("';'"));
    }
    cur.pos += 1;
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.error("end of input"));
    }
    Ok((records, offsets))
}

fn parse_time(cur: &mut Cursor<'_>) -> Result<TimeTicks, NewickError> {
    cur.skip_ws();
    let offset = cur.pos;
    if cur.peek() == Some(b'-') {
        return Err(NewickError::NegativeTime { offset });
    }
    let token = cur.take_while(|b| b.is_ascii_digit() || b == b'.');
    if token.is_empty() {
        return Err(NewickError::MissingTime { offset });
    }
    TimeTicks::parse_decimal(token).map_err(|e| match e {
        TimeParseError::TooManyFractionDigits => NewickError::TooManyFractionDigits { offset },
        TimeParseError::OutOfRange => NewickError::TimeOutOfRange { offset },
        TimeParseError::Negative => NewickError::NegativeTime { offset },
        TimeParseError::Empty | TimeParseError::InvalidChar(_) => NewickError::Syntax {
            offset,
            expected: "time as digits[.digits]",
        },
    })
}

/// Parses and validates one tree.
pub fn parse_newick(text: &str, strictness: Strictness) -> Result<MixtureTree, NewickError> {
    let (records, offsets) = parse_records(text)?;
    build_tree(&records, strictness).map_err(|source| NewickError::Tree {
        offset: source.node().map(|i| offsets[i]),
        source,
    })
}

/// Parses a file holding one tree per line; blank lines are skipped.
pub fn parse_newick_lines(
    text: &str,
    strictness: Strictness,
) -> Result<Vec<MixtureTree>, NewickFileError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_newick(l, strictness).map_err(|error| NewickFileError { line: i + 1, error })
        })
        .collect()
}

/// Canonical Newick text for `tree`.
pub fn write_newick(tree: &MixtureTree) -> String {
    enum Step {
        Enter(NodeId),
        Comma,
        Close(NodeId),
    }
    let mut out = String::with_capacity(tree.node_count() * 8);
    let mut stack = vec![Step::Enter(tree.root())];
    while let Some(step) = stack.pop() {
        match step {
            Step::Enter(v) => match tree.children(v) {
                None => out.push_str(tree.label(v).unwrap()),
                Some((l, r)) => {
                    out.push('(');
                    stack.push(Step::Close(v));
                    stack.push(Step::Enter(r));
                    stack.push(Step::Comma);
                    stack.push(Step::Enter(l));
                }
            },
            Step::Comma => out.push(','),
            Step::Close(v) => {
                out.push(')');
                out.push_str(&tree.time(v).to_string());
            }
        }
    }
    out.push(';');
    out
}
