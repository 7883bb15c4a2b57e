//! Encoding generators: canonical full-width CNFs, block-chain parity
//! encodings, and Tseitin transformations of XOR-gate circuits.

use crate::boolfn::{BoolFn, MAX_ARITY};
use crate::cnf::{Clause, Cnf, Encoding, Literal};
use crate::error::{Error, ParseError, ParseErrorKind};

/// Maximum constraint arity for a single gate (fan-ins plus the gate's own
/// variable); 2^19 clauses per constraint at the cap.
pub const MAX_GATE_ARITY: usize = 20;

/// One maxterm-style clause per falsifying input of f, each of full width n.
/// The result computes f exactly.
pub fn canonical_cnf(f: &BoolFn) -> Cnf {
    let n = f.n();
    let mut cnf = Cnf::new(n);
    for idx in 0..1u32 << n {
        if f.value(idx) {
            continue;
        }
        let clause = Clause::new((1..=n as u32).map(|var| {
            // Literal false at idx: negated iff the bit is set there.
            Literal::new(var, idx >> (var - 1) & 1 == 1)
        }))
        .expect("one literal per variable");
        cnf.add(clause).expect("vars within universe");
    }
    cnf
}

/// Canonical CNF of the constraint XOR(vars) = rhs, relabeled onto the given
/// global variables. 2^(arity-1) clauses of full arity.
fn parity_equation(global_vars: &[u32], rhs: bool, n_vars: usize) -> Result<Vec<Clause>, Error> {
    let arity = global_vars.len();
    debug_assert!(arity >= 1 && arity <= MAX_ARITY);
    debug_assert!(global_vars.iter().all(|&v| v >= 1 && v as usize <= n_vars));
    let local = BoolFn::from_fn(arity, |t| (t.count_ones() % 2 == 1) == rhs)?;
    let clauses = canonical_cnf(&local)
        .clauses()
        .map(|c| {
            Clause::new(
                c.literals()
                    .iter()
                    .map(|l| Literal::new(global_vars[l.var() as usize - 1], l.is_negated())),
            )
            .expect("relabeling a bijection preserves pair-freeness")
        })
        .collect();
    Ok(clauses)
}

fn default_partition(n: usize, s: usize) -> Vec<usize> {
    let blocks = s + 1;
    let big = n.div_ceil(blocks);
    let small = n / blocks;
    let n_big = n % blocks;
    (0..blocks)
        .map(|i| if i < n_big { big } else { small })
        .collect()
}

/// Chain encoding of PAR_n with s guess variables: guess variable y_i carries
/// the running parity of the first i blocks, and the last constraint pins the
/// total parity to 1.
///
/// `partition` gives the s+1 block sizes; when omitted, blocks are balanced
/// (first n mod (s+1) blocks get the ceiling size).
pub fn block_parity_encoding(
    n: usize,
    s: usize,
    partition: Option<&[usize]>,
) -> Result<Encoding, Error> {
    block_parity_with_target(n, s, partition, true)
}

/// Same construction with the final constant exposed: target=true yields an
/// encoding of PAR_n, target=false one of its complement.
fn block_parity_with_target(
    n: usize,
    s: usize,
    partition: Option<&[usize]>,
    target: bool,
) -> Result<Encoding, Error> {
    if n == 0 || n > MAX_ARITY {
        return Err(Error::ArityOutOfRange { n, max: MAX_ARITY });
    }
    let default;
    let blocks = match partition {
        Some(p) => p,
        None => {
            default = default_partition(n, s);
            &default
        }
    };
    if blocks.len() != s + 1 {
        return Err(Error::InvalidPartition {
            reason: format!("expected {} blocks, got {}", s + 1, blocks.len()),
        });
    }
    if blocks.iter().any(|&b| b == 0) {
        return Err(Error::InvalidPartition {
            reason: "empty block (s too large for n?)".into(),
        });
    }
    if blocks.iter().sum::<usize>() != n {
        return Err(Error::InvalidPartition {
            reason: format!("block sizes sum to {}, expected {n}", blocks.iter().sum::<usize>()),
        });
    }
    let n_vars = n + s;
    let mut cnf = Cnf::new(n_vars);
    let mut next_x = 1u32;
    for (i, &size) in blocks.iter().enumerate() {
        let mut vars: Vec<u32> = (next_x..next_x + size as u32).collect();
        next_x += size as u32;
        if i > 0 {
            vars.push((n + i) as u32);
        }
        let is_last = i == s;
        if !is_last {
            vars.push((n + i + 1) as u32);
        }
        // Middle constraints assert even parity over (block, y_{i-1}, y_i);
        // the final one pins the remaining parity to the target.
        let rhs = if is_last { target } else { false };
        for clause in parity_equation(&vars, rhs, n_vars)? {
            cnf.add(clause)?;
        }
    }
    Encoding::new(n, s, cnf)
}

/// Fan-in of an XOR gate: a circuit input (1-based) or an earlier gate
/// (0-based index).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FanIn {
    Input(u32),
    Gate(usize),
}

/// A topologically ordered XOR-gate circuit; the last gate is the output.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XorCircuit {
    n: usize,
    gates: Vec<Vec<FanIn>>,
}

impl XorCircuit {
    pub fn new(n: usize, gates: Vec<Vec<FanIn>>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::MalformedCircuit {
                reason: "no inputs".into(),
            });
        }
        if gates.is_empty() {
            return Err(Error::MalformedCircuit {
                reason: "no gates".into(),
            });
        }
        for (g, fanins) in gates.iter().enumerate() {
            if fanins.is_empty() {
                return Err(Error::MalformedCircuit {
                    reason: format!("gate {} has no fan-ins", g + 1),
                });
            }
            let mut seen = std::collections::BTreeSet::new();
            for &f in fanins {
                match f {
                    FanIn::Input(i) if i == 0 || i as usize > n => {
                        return Err(Error::MalformedCircuit {
                            reason: format!("gate {} references input x{i}", g + 1),
                        })
                    }
                    FanIn::Gate(j) if j >= g => {
                        return Err(Error::MalformedCircuit {
                            reason: format!("gate {} references gate g{}", g + 1, j + 1),
                        })
                    }
                    _ => {}
                }
                if !seen.insert(fanin_key(f)) {
                    return Err(Error::MalformedCircuit {
                        reason: format!("gate {} has a duplicate fan-in", g + 1),
                    });
                }
            }
        }
        Ok(XorCircuit { n, gates })
    }

    /// Chain of XOR gates over consecutive input blocks: gate i takes block i
    /// plus the previous gate. Computes PAR_n.
    pub fn parity_chain(n: usize, input_blocks: &[usize]) -> Result<Self, Error> {
        if input_blocks.iter().sum::<usize>() != n || input_blocks.iter().any(|&b| b == 0) {
            return Err(Error::MalformedCircuit {
                reason: "input blocks must be positive and sum to n".into(),
            });
        }
        let mut gates = Vec::new();
        let mut next = 1u32;
        for (i, &size) in input_blocks.iter().enumerate() {
            let mut fanins = Vec::new();
            if i > 0 {
                fanins.push(FanIn::Gate(i - 1));
            }
            fanins.extend((next..next + size as u32).map(FanIn::Input));
            next += size as u32;
            gates.push(fanins);
        }
        XorCircuit::new(n, gates)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn gates(&self) -> &[Vec<FanIn>] {
        &self.gates
    }

    /// Value of the output gate at the packed input assignment.
    pub fn eval_index(&self, x: u32) -> bool {
        let mut values = Vec::with_capacity(self.gates.len());
        for fanins in &self.gates {
            let v = fanins.iter().fold(false, |acc, &f| {
                acc ^ match f {
                    FanIn::Input(i) => x >> (i - 1) & 1 == 1,
                    FanIn::Gate(j) => values[j],
                }
            });
            values.push(v);
        }
        *values.last().expect("at least one gate")
    }

    pub fn to_boolfn(&self) -> Result<BoolFn, Error> {
        BoolFn::from_fn(self.n, |x| self.eval_index(x))
    }

    /// Serializes as `xor-circuit n=<n> g=<gates>`, one line of `x<i>`/`g<j>`
    /// tokens per gate, then `output g<j>`.
    pub fn to_text(&self) -> String {
        let mut out = format!("xor-circuit n={} g={}\n", self.n, self.gates.len());
        for fanins in &self.gates {
            let tokens: Vec<String> = fanins
                .iter()
                .map(|f| match f {
                    FanIn::Input(i) => format!("x{i}"),
                    FanIn::Gate(j) => format!("g{}", j + 1),
                })
                .collect();
            out.push_str(&tokens.join(" "));
            out.push('\n');
        }
        out.push_str(&format!("output g{}\n", self.gates.len()));
        out
    }

    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        let fail = |line: usize, kind: ParseErrorKind| ParseError { line, kind };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (line0, header) = lines
            .next()
            .ok_or_else(|| fail(1, ParseErrorKind::Eof("missing header".into())))?;
        let (n, g) = parse_circuit_header(header).map_err(|kind| fail(line0 + 1, kind))?;
        let mut gates = Vec::with_capacity(g);
        for gate_idx in 0..g {
            let (line_no, line) = lines.next().ok_or_else(|| {
                fail(
                    line0 + 2 + gate_idx,
                    ParseErrorKind::Eof(format!("missing gate line {}", gate_idx + 1)),
                )
            })?;
            let mut fanins = Vec::new();
            for token in line.split_whitespace() {
                let fanin = parse_fanin(token, gate_idx)
                    .map_err(|kind| fail(line_no + 1, kind))?;
                fanins.push(fanin);
            }
            gates.push(fanins);
        }
        let (line_no, line) = lines.next().ok_or_else(|| {
            fail(line0 + 2 + g, ParseErrorKind::Eof("missing output line".into()))
        })?;
        let mut tokens = line.split_whitespace();
        match (tokens.next(), tokens.next(), tokens.next()) {
            (Some("output"), Some(tok), None) => {
                let idx: usize = tok
                    .strip_prefix('g')
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| fail(line_no + 1, ParseErrorKind::Token(tok.into())))?;
                if idx != g {
                    return Err(fail(
                        line_no + 1,
                        ParseErrorKind::Annotation(format!(
                            "output must be the last gate g{g}, got g{idx}"
                        )),
                    ));
                }
            }
            _ => return Err(fail(line_no + 1, ParseErrorKind::Token(line.trim().into()))),
        }
        XorCircuit::new(n, gates)
            .map_err(|e| fail(line0 + 1, ParseErrorKind::Annotation(e.to_string())))
    }
}

fn fanin_key(f: FanIn) -> (u8, usize) {
    match f {
        FanIn::Input(i) => (0, i as usize),
        FanIn::Gate(j) => (1, j),
    }
}

fn parse_circuit_header(header: &str) -> Result<(usize, usize), ParseErrorKind> {
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("xor-circuit") {
        return Err(ParseErrorKind::Header(
            "expected `xor-circuit n=<n> g=<gates>`".into(),
        ));
    }
    let n = tokens
        .next()
        .and_then(|t| t.strip_prefix("n="))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| ParseErrorKind::Header("bad n= field".into()))?;
    let g = tokens
        .next()
        .and_then(|t| t.strip_prefix("g="))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| ParseErrorKind::Header("bad g= field".into()))?;
    if let Some(extra) = tokens.next() {
        return Err(ParseErrorKind::Header(format!("trailing token {extra:?}")));
    }
    Ok((n, g))
}

fn parse_fanin(token: &str, gate_idx: usize) -> Result<FanIn, ParseErrorKind> {
    if let Some(v) = token.strip_prefix('x') {
        if let Ok(i) = v.parse::<u32>() {
            return Ok(FanIn::Input(i));
        }
    }
    if let Some(v) = token.strip_prefix('g') {
        if let Ok(j) = v.parse::<usize>() {
            if j == 0 || j > gate_idx {
                return Err(ParseErrorKind::Annotation(format!(
                    "gate {} may only reference g1..g{gate_idx}",
                    gate_idx + 1
                )));
            }
            return Ok(FanIn::Gate(j - 1));
        }
    }
    Err(ParseErrorKind::Token(token.into()))
}

/// Tseitin transformation: one guess variable per gate, each gate contributing
/// the canonical CNF of (gate variable = XOR of fan-ins).
///
/// With `propagate_output` the output constant 1 is substituted into the last
/// gate's constraint and the output variable is dropped (s = gates-1);
/// otherwise a unit clause on the output variable is appended (s = gates).
pub fn tseitin(circuit: &XorCircuit, propagate_output: bool) -> Result<Encoding, Error> {
    let n = circuit.n();
    let g = circuit.gate_count();
    if n + g > MAX_ARITY {
        return Err(Error::ArityOutOfRange {
            n: n + g,
            max: MAX_ARITY,
        });
    }
    let s = if propagate_output { g - 1 } else { g };
    let n_vars = n + s;
    let gate_var = |j: usize| (n + j + 1) as u32;
    let mut cnf = Cnf::new(n_vars);
    for (gi, fanins) in circuit.gates().iter().enumerate() {
        let arity = fanins.len() + 1;
        if arity > MAX_GATE_ARITY {
            return Err(Error::GateArityTooLarge {
                gate: gi + 1,
                arity,
                max: MAX_GATE_ARITY,
            });
        }
        let mut vars: Vec<u32> = fanins
            .iter()
            .map(|&f| match f {
                FanIn::Input(i) => i,
                FanIn::Gate(j) => gate_var(j),
            })
            .collect();
        let is_output = gi + 1 == g;
        let rhs = if is_output && propagate_output {
            // Output forced to 1: the gate equation becomes XOR(fan-ins) = 1.
            true
        } else {
            vars.push(gate_var(gi));
            false
        };
        for clause in parity_equation(&vars, rhs, n_vars)? {
            cnf.add(clause)?;
        }
    }
    if !propagate_output {
        cnf.add(Clause::new([Literal::positive(gate_var(g - 1))]).unwrap())?;
    }
    Encoding::new(n, s, cnf)
}

/// 10-clause, 2-guess-variable chain encoding of PAR_4 over blocks
/// {x1,x2},{x3},{x4}; the standard small worked example.
pub fn toy_par4_encoding() -> Encoding {
    block_parity_encoding(4, 2, Some(&[2, 1, 1])).expect("valid fixed partition")
}

/// Near-identical variant whose final constraint pins y2 = x4 instead of
/// y2 = NOT x4; it encodes the complement of PAR_4. Kept as an adjudication
/// vector for the brute-force `encodes` check.
pub fn toy_par4_complement_encoding() -> Encoding {
    block_parity_with_target(4, 2, Some(&[2, 1, 1]), false).expect("valid fixed partition")
}
