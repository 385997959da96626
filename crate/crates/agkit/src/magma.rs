//! Cayley-table representation of finite magmas.
//!
//! Elements are 0-based indices `0..n`. The table is stored row-major:
//! entry `(a, b) = a*n + b` holds the product `a·b`. That linearization is
//! also the total order used by canonical-form comparison, so it must not
//! change.

use std::fmt;

use thiserror::Error;

/// An element of a magma, always an index below the owning magma's order.
pub type Element = u8;

/// Hard cap on supported order; keeps tables and permutation sets small.
pub const MAX_ORDER: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MagmaError {
    #[error("order {0} exceeds the maximum supported order {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("table has {got} entries, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("entry {value} at row {row}, column {col} is out of range for order {order}")]
    OutOfRangeEntry {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("permutation has size {got}, magma has order {expected}")]
    SizeMismatch { expected: usize, got: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: first token is not a positive integer: {token:?}")]
    MalformedHeader { line: usize, token: String },
    #[error("line {line}: expected {expected} entries in row {row}, found {got}")]
    RowLengthMismatch {
        line: usize,
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("expected {expected} rows, found {got}")]
    MissingRows { expected: usize, got: usize },
    #[error("line {line}, row {row}, column {col}: entry {value} is not in 0..{order}")]
    OutOfRangeEntry {
        line: usize,
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("line {line}, row {row}, column {col}: not an integer: {token:?}")]
    BadEntry {
        line: usize,
        row: usize,
        col: usize,
        token: String,
    },
    #[error(transparent)]
    Invalid(#[from] MagmaError),
}

/// A finite magma given by its Cayley table.
///
/// Immutable after construction; freely shareable across threads.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Magma {
    order: usize,
    table: Vec<Element>,
}

impl Magma {
    /// Build from a row-major table, validating closure and dimensions.
    pub fn new(order: usize, table: Vec<Element>) -> Result<Self, MagmaError> {
        if order == 0 {
            return Err(MagmaError::ZeroOrder);
        }
        if order > MAX_ORDER {
            return Err(MagmaError::OrderTooLarge(order));
        }
        if table.len() != order * order {
            return Err(MagmaError::DimensionMismatch {
                expected: order * order,
                got: table.len(),
            });
        }
        for (idx, &v) in table.iter().enumerate() {
            if (v as usize) >= order {
                return Err(MagmaError::OutOfRangeEntry {
                    row: idx / order + 1,
                    col: idx % order + 1,
                    value: v as usize,
                    order,
                });
            }
        }
        Ok(Magma { order, table })
    }

    /// Convenience constructor from nested rows.
    pub fn from_rows(rows: &[&[Element]]) -> Result<Self, MagmaError> {
        let order = rows.len();
        let mut table = Vec::with_capacity(order * order);
        for row in rows {
            table.extend_from_slice(row);
        }
        Magma::new(order, table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The product `a·b`.
    #[inline]
    pub fn apply(&self, a: Element, b: Element) -> Element {
        debug_assert!((a as usize) < self.order && (b as usize) < self.order);
        self.table[a as usize * self.order + b as usize]
    }

    /// Row-major linearized table; the canonical comparison key.
    pub fn cells(&self) -> &[Element] {
        &self.table
    }

    /// All elements of the magma, ascending.
    pub fn elements(&self) -> impl Iterator<Item = Element> {
        0..self.order as Element
    }

    /// Parse the Cayley-table text format.
    ///
    /// Comment lines start with `#` and may appear anywhere. The first
    /// non-comment line is the order `n`; the next `n` non-comment lines
    /// each hold `n` space-separated entries in `0..n`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            });

        let (header_line, header) = lines.next().ok_or(ParseError::MalformedHeader {
            line: 1,
            token: String::new(),
        })?;
        let token = header.trim().split_whitespace().next().unwrap_or("");
        let order: usize = token.parse().map_err(|_| ParseError::MalformedHeader {
            line: header_line,
            token: token.to_string(),
        })?;
        if order == 0 {
            return Err(ParseError::MalformedHeader {
                line: header_line,
                token: token.to_string(),
            });
        }

        let mut table = Vec::with_capacity(order * order);
        let mut rows = 0usize;
        for (line_no, line) in lines.by_ref() {
            if rows == order {
                break;
            }
            rows += 1;
            let tokens: Vec<&str> = line.trim().split_whitespace().collect();
            if tokens.len() != order {
                return Err(ParseError::RowLengthMismatch {
                    line: line_no,
                    row: rows,
                    expected: order,
                    got: tokens.len(),
                });
            }
            for (col, tok) in tokens.iter().enumerate() {
                let value: usize = tok.parse().map_err(|_| ParseError::BadEntry {
                    line: line_no,
                    row: rows,
                    col: col + 1,
                    token: tok.to_string(),
                })?;
                if value >= order {
                    return Err(ParseError::OutOfRangeEntry {
                        line: line_no,
                        row: rows,
                        col: col + 1,
                        value,
                        order,
                    });
                }
                table.push(value as Element);
            }
        }
        if rows < order {
            return Err(ParseError::MissingRows {
                expected: order,
                got: rows,
            });
        }
        Ok(Magma::new(order, table)?)
    }

    /// Render to the text format: header line, then one row per line,
    /// single spaces, trailing newline. Round-trips through `parse`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.order.to_string());
        out.push('\n');
        for a in 0..self.order {
            for b in 0..self.order {
                if b > 0 {
                    out.push(' ');
                }
                out.push_str(&self.table[a * self.order + b].to_string());
            }
            out.push('\n');
        }
        out
    }

    /// The isomorphic image under `p`: result `r` satisfies
    /// `r.apply(p(a), p(b)) = p(m.apply(a, b))` for all `a`, `b`.
    pub fn relabel(&self, p: &Permutation) -> Result<Magma, MagmaError> {
        if p.size() != self.order {
            return Err(MagmaError::SizeMismatch {
                expected: self.order,
                got: p.size(),
            });
        }
        let n = self.order;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let pa = p.image(a as Element) as usize;
                let pb = p.image(b as Element) as usize;
                table[pa * n + pb] = p.image(self.table[a * n + b]);
            }
        }
        Ok(Magma { order: n, table })
    }

    /// All left identities: elements `e` with `e·a = a` for every `a`.
    pub fn left_identities(&self) -> Vec<Element> {
        (0..self.order as Element)
            .filter(|&e| (0..self.order as Element).all(|a| self.apply(e, a) == a))
            .collect()
    }
}

impl fmt::Debug for Magma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Magma(order={}, cells={:?})", self.order, self.table)
    }
}

/// A bijection on `{0, …, n-1}`, the carrier of magma isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<Element>,
}

impl Permutation {
    pub fn new(images: Vec<Element>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if (v as usize) >= n || seen[v as usize] {
                return None;
            }
            seen[v as usize] = true;
        }
        Some(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as Element).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, a: Element) -> Element {
        self.images[a as usize]
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as Element;
        }
        Permutation { images: inv }
    }

    /// Composition `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.size(), other.size());
        Permutation {
            images: other.images.iter().map(|&v| self.image(v)).collect(),
        }
    }

    /// All permutations of `{0, …, n-1}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        assert!(n <= MAX_ORDER);
        let mut out = Vec::new();
        let mut current: Vec<Element> = (0..n as Element).collect();
        let mut used = vec![false; n];
        fn rec(
            n: usize,
            depth: usize,
            current: &mut Vec<Element>,
            used: &mut Vec<bool>,
            out: &mut Vec<Permutation>,
        ) {
            if depth == n {
                out.push(Permutation {
                    images: current.clone(),
                });
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    current[depth] = v as Element;
                    rec(n, depth + 1, current, used, out);
                    used[v] = false;
                }
            }
        }
        rec(n, 0, &mut current, &mut used, &mut out);
        out
    }
}
