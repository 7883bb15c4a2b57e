//! DIMACS CNF reading and writing.
//!
//! Output is byte-stable: an `c enc n=<n> s=<s>` annotation records the
//! deterministic-variable split, followed by the standard `p cnf` header and
//! one zero-terminated clause per line in canonical clause order.

use crate::cnf::{Clause, Cnf, Encoding, Literal};
use crate::error::{Error, ParseError, ParseErrorKind};

/// A parsed or constructed DIMACS file.
///
/// Clauses are kept as raw signed integers so the document can carry
/// solver-facing instances (selector variables, counters) that never become
/// an [`Encoding`]. Invariant: every literal is nonzero with |lit| <= n_vars,
/// and `n_clauses == clauses.len()`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DimacsDocument {
    n_vars: usize,
    clauses: Vec<Vec<i32>>,
    det_vars: Option<usize>,
}

impl DimacsDocument {
    pub fn new(
        n_vars: usize,
        clauses: Vec<Vec<i32>>,
        det_vars: Option<usize>,
    ) -> Result<Self, Error> {
        if n_vars == 0 {
            return Err(Error::InvalidPartition {
                reason: "DIMACS document needs at least one variable".into(),
            });
        }
        for clause in &clauses {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > n_vars {
                    return Err(Error::VarOutOfRange {
                        var: lit.unsigned_abs(),
                        limit: n_vars,
                    });
                }
            }
        }
        if let Some(det) = det_vars {
            if det > n_vars {
                return Err(Error::InvalidPartition {
                    reason: format!("det_vars {det} exceeds {n_vars} variables"),
                });
            }
        }
        Ok(DimacsDocument {
            n_vars,
            clauses,
            det_vars,
        })
    }

    pub fn from_cnf(cnf: &Cnf) -> Self {
        DimacsDocument {
            n_vars: cnf.n_vars(),
            clauses: cnf
                .clauses()
                .map(|c| c.literals().iter().map(Literal::to_dimacs).collect())
                .collect(),
            det_vars: None,
        }
    }

    pub fn from_encoding(e: &Encoding) -> Self {
        let mut doc = DimacsDocument::from_cnf(e.cnf());
        doc.det_vars = Some(e.n());
        doc
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Deterministic-variable count from the `c enc` annotation, if present.
    pub fn det_vars(&self) -> Option<usize> {
        self.det_vars
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(det) = self.det_vars {
            out.push_str(&format!("c enc n={} s={}\n", det, self.n_vars - det));
        }
        out.push_str(&format!("p cnf {} {}\n", self.n_vars, self.clauses.len()));
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&format!("{lit} "));
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        let fail = |line: usize, kind: ParseErrorKind| Error::Parse(ParseError { line, kind });
        let mut annotation: Option<(usize, usize, usize)> = None;
        let mut header: Option<(usize, usize)> = None;
        let mut clauses: Vec<Vec<i32>> = Vec::new();
        let mut current: Vec<i32> = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            last_line = line_no;
            if let Some(rest) = line.strip_prefix('c') {
                let rest = rest.trim_start();
                if let Some(body) = rest.strip_prefix("enc") {
                    if annotation.is_some() {
                        return Err(fail(
                            line_no,
                            ParseErrorKind::Annotation("duplicate `c enc` line".into()),
                        ));
                    }
                    annotation = Some(parse_annotation(body, line_no)?);
                }
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                if header.is_some() {
                    return Err(fail(
                        line_no,
                        ParseErrorKind::Header("duplicate `p cnf` header".into()),
                    ));
                }
                header = Some(parse_header(rest, line_no)?);
                continue;
            }
            let Some((n_vars, _)) = header else {
                return Err(fail(
                    line_no,
                    ParseErrorKind::Header("clause body before `p cnf` header".into()),
                ));
            };
            for tok in line.split_whitespace() {
                let lit: i32 = tok.parse().map_err(|_| {
                    fail(line_no, ParseErrorKind::Token(format!("literal `{tok}`")))
                })?;
                if lit == 0 {
                    close_clause(&mut current, &mut clauses, line_no)?;
                } else if lit.unsigned_abs() as usize > n_vars {
                    return Err(fail(
                        line_no,
                        ParseErrorKind::LiteralOutOfRange {
                            lit: lit as i64,
                            max_var: n_vars,
                        },
                    ));
                } else {
                    current.push(lit);
                }
            }
        }
        let Some((n_vars, declared)) = header else {
            return Err(fail(
                last_line.max(1),
                ParseErrorKind::Header("missing `p cnf` header".into()),
            ));
        };
        if !current.is_empty() {
            return Err(fail(
                last_line,
                ParseErrorKind::Eof("clause missing its 0 terminator".into()),
            ));
        }
        if clauses.len() != declared {
            return Err(fail(
                last_line,
                ParseErrorKind::CountMismatch {
                    what: "clauses",
                    declared,
                    found: clauses.len(),
                },
            ));
        }
        let det_vars = match annotation {
            None => None,
            Some((n, s, ann_line)) => {
                if n + s != n_vars {
                    return Err(fail(
                        ann_line,
                        ParseErrorKind::Annotation(format!(
                            "annotation n={n} s={s} does not sum to {n_vars} variables"
                        )),
                    ));
                }
                Some(n)
            }
        };
        Ok(DimacsDocument {
            n_vars,
            clauses,
            det_vars,
        })
    }

    pub fn to_encoding(&self) -> Result<Encoding, Error> {
        let n = self.det_vars.unwrap_or(self.n_vars);
        let s = self.n_vars - n;
        let mut cnf = Cnf::new(self.n_vars);
        for ints in &self.clauses {
            let mut lits = Vec::with_capacity(ints.len());
            for &lit in ints {
                lits.push(Literal::from_dimacs(lit)?);
            }
            cnf.add(Clause::new(lits)?)?;
        }
        Encoding::new(n, s, cnf)
    }
}

fn parse_annotation(body: &str, line_no: usize) -> Result<(usize, usize, usize), Error> {
    let fail = |msg: String| {
        Error::Parse(ParseError {
            line: line_no,
            kind: ParseErrorKind::Annotation(msg),
        })
    };
    let mut n = None;
    let mut s = None;
    for tok in body.split_whitespace() {
        let Some((key, val)) = tok.split_once('=') else {
            return Err(fail(format!("expected key=value, got `{tok}`")));
        };
        let parsed: usize = val
            .parse()
            .map_err(|_| fail(format!("bad value in `{tok}`")))?;
        match key {
            "n" => n = Some(parsed),
            "s" => s = Some(parsed),
            _ => return Err(fail(format!("unknown key `{key}`"))),
        }
    }
    match (n, s) {
        (Some(n), Some(s)) => Ok((n, s, line_no)),
        _ => Err(fail("`c enc` needs both n= and s=".into())),
    }
}

fn parse_header(rest: &str, line_no: usize) -> Result<(usize, usize), Error> {
    let fail = |msg: String| {
        Error::Parse(ParseError {
            line: line_no,
            kind: ParseErrorKind::Header(msg),
        })
    };
    let toks: Vec<&str> = rest.split_whitespace().collect();
    let [fmt, vars, count] = toks[..] else {
        return Err(fail(format!("expected `p cnf <vars> <clauses>`, got `p{rest}`")));
    };
    if fmt != "cnf" {
        return Err(fail(format!("unknown format `{fmt}`")));
    }
    let n_vars: usize = vars
        .parse()
        .map_err(|_| fail(format!("bad variable count `{vars}`")))?;
    let n_clauses: usize = count
        .parse()
        .map_err(|_| fail(format!("bad clause count `{count}`")))?;
    if n_vars == 0 {
        return Err(fail("variable count must be positive".into()));
    }
    Ok((n_vars, n_clauses))
}

fn close_clause(
    current: &mut Vec<i32>,
    clauses: &mut Vec<Vec<i32>>,
    line_no: usize,
) -> Result<(), Error> {
    // Complementary pairs surface here so the diagnostic carries a line number.
    let lits: Result<Vec<Literal>, Error> =
        current.iter().map(|&l| Literal::from_dimacs(l)).collect();
    if let Err(Error::ComplementaryPair { var }) = lits.and_then(Clause::new) {
        return Err(Error::Parse(ParseError {
            line: line_no,
            kind: ParseErrorKind::ComplementaryPair { var },
        }));
    }
    clauses.push(std::mem::take(current));
    Ok(())
}

pub fn write_dimacs(e: &Encoding) -> String {
    DimacsDocument::from_encoding(e).to_text()
}

pub fn parse_dimacs(text: &str) -> Result<Encoding, Error> {
    DimacsDocument::parse(text)?.to_encoding()
}
