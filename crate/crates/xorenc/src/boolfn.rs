//! Boolean functions as packed truth tables, plus the packed assignments
//! they are evaluated on.

use crate::bits;
use crate::error::{Error, ParseError, ParseErrorKind};
use std::fmt;

/// Largest arity for which truth tables are materialized (2^24 bits = 2 MiB).
pub const MAX_ARITY: usize = 24;

/// Largest variable count an [`Assignment`] can pack into its index.
pub const MAX_ASSIGNMENT_VARS: usize = 32;

/// A total assignment to variables 1..=n, packed as an integer.
///
/// Variable i holds bit i-1 of the index, so the assignment (x1,x2,x3) =
/// (1,0,1) over n=3 variables has index 0b101 = 5.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Assignment {
    n: usize,
    index: u32,
}

impl Assignment {
    pub fn new(n: usize, index: u32) -> Result<Self, Error> {
        if n == 0 || n > MAX_ASSIGNMENT_VARS {
            return Err(Error::ArityOutOfRange {
                n,
                max: MAX_ASSIGNMENT_VARS,
            });
        }
        if n < 32 && index >= 1u32 << n {
            return Err(Error::IndexOutOfRange {
                index: index as u64,
                n,
            });
        }
        Ok(Assignment { n, index })
    }

    pub fn from_bools(values: &[bool]) -> Result<Self, Error> {
        let mut index = 0u32;
        for (i, &v) in values.iter().enumerate() {
            if v {
                index |= 1 << i;
            }
        }
        Assignment::new(values.len(), index)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Value of variable `var` (1-based).
    pub fn get(&self, var: u32) -> Result<bool, Error> {
        if var == 0 || var as usize > self.n {
            return Err(Error::VarOutOfRange {
                var,
                limit: self.n,
            });
        }
        Ok(self.index >> (var - 1) & 1 == 1)
    }

    /// Copy with variable `var` flipped.
    pub fn flipped(&self, var: u32) -> Result<Self, Error> {
        if var == 0 || var as usize > self.n {
            return Err(Error::VarOutOfRange {
                var,
                limit: self.n,
            });
        }
        Ok(Assignment {
            n: self.n,
            index: self.index ^ (1 << (var - 1)),
        })
    }

    /// Joint assignment (self, other) over n + other.n variables, with
    /// `other`'s variables renumbered to follow self's.
    pub fn concat(&self, other: &Assignment) -> Result<Self, Error> {
        Assignment::new(self.n + other.n, self.index | other.index << self.n)
    }

    /// Splits into the first `k` variables and the remaining ones.
    pub fn split(&self, k: usize) -> Result<(Self, Self), Error> {
        if k == 0 || k >= self.n {
            return Err(Error::ArityOutOfRange { n: k, max: self.n });
        }
        let low = Assignment::new(k, self.index & ((1u32 << k) - 1))?;
        let high = Assignment::new(self.n - k, self.index >> k)?;
        Ok((low, high))
    }
}

impl fmt::Display for Assignment {
    /// Writes values of x1..xn left to right.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for var in 1..=self.n as u32 {
            let bit = self.index >> (var - 1) & 1;
            write!(f, "{bit}")?;
        }
        Ok(())
    }
}

/// A Boolean function on n <= 24 variables, stored as a packed truth table.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BoolFn {
    n: usize,
    blocks: Vec<u64>,
}

impl BoolFn {
    fn check_arity(n: usize) -> Result<(), Error> {
        if n == 0 || n > MAX_ARITY {
            return Err(Error::ArityOutOfRange { n, max: MAX_ARITY });
        }
        Ok(())
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(u32) -> bool) -> Result<Self, Error> {
        Self::check_arity(n)?;
        let size = 1usize << n;
        let mut blocks = vec![0u64; bits::words_for(size)];
        for idx in 0..size {
            if f(idx as u32) {
                bits::set_bit(&mut blocks, idx);
            }
        }
        Ok(BoolFn { n, blocks })
    }

    pub(crate) fn from_blocks(n: usize, mut blocks: Vec<u64>) -> Result<Self, Error> {
        Self::check_arity(n)?;
        debug_assert_eq!(blocks.len(), bits::words_for(1 << n));
        bits::clear_tail(&mut blocks, 1 << n);
        Ok(BoolFn { n, blocks })
    }

    /// XOR of all n inputs.
    pub fn parity(n: usize) -> Result<Self, Error> {
        Self::from_fn(n, |idx| idx.count_ones() % 2 == 1)
    }

    pub fn constant(n: usize, value: bool) -> Result<Self, Error> {
        Self::from_fn(n, |_| value)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Value at the assignment with integer encoding `index`.
    pub fn value(&self, index: u32) -> bool {
        debug_assert!((index as u64) < 1u64 << self.n);
        bits::get_bit(&self.blocks, index as usize)
    }

    pub fn eval(&self, a: &Assignment) -> Result<bool, Error> {
        if a.n() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: a.n(),
            });
        }
        Ok(self.value(a.index()))
    }

    /// Number of satisfying assignments.
    pub fn ones(&self) -> u64 {
        bits::count_ones(&self.blocks)
    }

    /// Indices of satisfying assignments, ascending.
    pub fn ones_iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..1u32 << self.n).filter(move |&i| self.value(i))
    }

    pub fn negated(&self) -> Self {
        let mut blocks: Vec<u64> = self.blocks.iter().map(|w| !w).collect();
        bits::clear_tail(&mut blocks, 1 << self.n);
        BoolFn {
            n: self.n,
            blocks,
        }
    }

    /// g with g(x) = f(x with variable `var` flipped).
    pub fn with_input_flipped(&self, var: u32) -> Result<Self, Error> {
        if var == 0 || var as usize > self.n {
            return Err(Error::VarOutOfRange {
                var,
                limit: self.n,
            });
        }
        Ok(BoolFn {
            n: self.n,
            blocks: bits::xor_shuffle(&self.blocks, var as usize - 1),
        })
    }

    /// True iff flipping any single input always flips the output.
    pub fn is_fully_sensitive(&self) -> bool {
        let tail = bits::tail_mask(1 << self.n);
        for pos in 0..self.n {
            let sh = bits::xor_shuffle(&self.blocks, pos);
            for (i, (&a, &b)) in self.blocks.iter().zip(&sh).enumerate() {
                let mut diff = a ^ b;
                if i + 1 == self.blocks.len() {
                    diff |= !tail;
                }
                if diff != !0 {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    /// Serializes as `fn n=<n>` followed by 2^n characters of 0/1, where
    /// character i is the value at the assignment with integer encoding i.
    pub fn to_text(&self) -> String {
        let mut out = format!("fn n={}\n", self.n);
        for idx in 0..1u32 << self.n {
            out.push(if self.value(idx) { '1' } else { '0' });
        }
        out.push('\n');
        out
    }

    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate();
        let (line0, header) = lines
            .next()
            .ok_or(ParseError {
                line: 1,
                kind: ParseErrorKind::Eof("missing header".into()),
            })?;
        let n = parse_fn_header(header).map_err(|kind| ParseError {
            line: line0 + 1,
            kind,
        })?;
        let (line1, table) = lines.next().ok_or(ParseError {
            line: line0 + 2,
            kind: ParseErrorKind::Eof("missing truth table line".into()),
        })?;
        let table = table.trim();
        if table.len() != 1usize << n {
            return Err(ParseError {
                line: line1 + 1,
                kind: ParseErrorKind::CountMismatch {
                    what: "table entries",
                    declared: 1usize << n,
                    found: table.len(),
                },
            });
        }
        let mut blocks = vec![0u64; bits::words_for(1 << n)];
        for (idx, ch) in table.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits::set_bit(&mut blocks, idx),
                other => {
                    return Err(ParseError {
                        line: line1 + 1,
                        kind: ParseErrorKind::Token(other.to_string()),
                    })
                }
            }
        }
        Ok(BoolFn { n, blocks })
    }
}

fn parse_fn_header(header: &str) -> Result<usize, ParseErrorKind> {
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("fn") {
        return Err(ParseErrorKind::Header("expected `fn n=<n>`".into()));
    }
    let n = match tokens.next().and_then(|t| t.strip_prefix("n=")) {
        Some(v) => v
            .parse::<usize>()
            .map_err(|_| ParseErrorKind::Header(format!("bad arity {v:?}")))?,
        None => return Err(ParseErrorKind::Header("expected `fn n=<n>`".into())),
    };
    if n == 0 || n > MAX_ARITY {
        return Err(ParseErrorKind::Header(format!(
            "arity {n} out of range 1..={MAX_ARITY}"
        )));
    }
    if let Some(extra) = tokens.next() {
        return Err(ParseErrorKind::Header(format!("trailing token {extra:?}")));
    }
    Ok(n)
}
