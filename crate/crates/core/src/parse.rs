//! Readers for the two input formats: a strict OpenQASM 2.0 subset and the
//! native rotation-list format (`ppc <N>` header).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{GateInstr, GateKind, LogicalCircuit, PPCircuit};
use crate::pauli::PauliString;
use crate::rotation::{OpTag, RotationOp};

/// Stable diagnostic codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiagCode {
    UnknownGate,
    ArityMismatch,
    QubitOutOfRange,
    MalformedHeader,
    Syntax,
    DuplicateOperand,
    GateAfterMeasure,
    MissingRegister,
    UnsupportedRegister,
    InvalidRotation,
    WidthMismatch,
}

impl DiagCode {
    pub fn code(self) -> &'static str {
        match self {
            DiagCode::UnknownGate => "E001",
            DiagCode::ArityMismatch => "E002",
            DiagCode::QubitOutOfRange => "E003",
            DiagCode::MalformedHeader => "E004",
            DiagCode::Syntax => "E005",
            DiagCode::DuplicateOperand => "E006",
            DiagCode::GateAfterMeasure => "E007",
            DiagCode::MissingRegister => "E008",
            DiagCode::UnsupportedRegister => "E009",
            DiagCode::InvalidRotation => "E010",
            DiagCode::WidthMismatch => "E011",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: error[{}]: {message}", code.code())]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub code: DiagCode,
    pub message: String,
}

type PResult<T> = Result<T, ParseError>;

fn err<T>(pos: Pos, code: DiagCode, message: impl Into<String>) -> PResult<T> {
    Err(ParseError {
        line: pos.line,
        col: pos.col,
        code,
        message: message.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Pos {
    line: usize,
    col: usize,
}

/// A parsed input program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Program {
    Logical(LogicalCircuit),
    PauliProduct(PPCircuit),
}

impl Program {
    pub fn num_qubits(&self) -> usize {
        match self {
            Program::Logical(c) => c.num_qubits,
            Program::PauliProduct(c) => c.num_qubits,
        }
    }

    /// Instruction count as written in the source.
    pub fn gate_count(&self) -> usize {
        match self {
            Program::Logical(c) => c.instrs.len(),
            Program::PauliProduct(c) => c.rotations.len() + c.measurements.len(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    #[default]
    Auto,
    Qasm,
    Ppc,
}

impl FromStr for InputFormat {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(InputFormat::Auto),
            "qasm" => Ok(InputFormat::Qasm),
            "ppc" => Ok(InputFormat::Ppc),
            other => Err(crate::Error::UnknownFormat(other.to_owned())),
        }
    }
}

impl fmt::Display for InputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputFormat::Auto => "auto",
            InputFormat::Qasm => "qasm",
            InputFormat::Ppc => "ppc",
        })
    }
}

/// Parses either format, detecting the native one by its `ppc` header line.
pub fn parse(text: &str) -> PResult<Program> {
    parse_as(text, InputFormat::Auto)
}

pub fn parse_as(text: &str, format: InputFormat) -> PResult<Program> {
    let native = match format {
        InputFormat::Auto => first_significant_word(text) == Some("ppc"),
        InputFormat::Ppc => true,
        InputFormat::Qasm => false,
    };
    if native {
        parse_native(text).map(Program::PauliProduct)
    } else {
        parse_qasm(text).map(Program::Logical)
    }
}

fn strip_comment(line: &str) -> &str {
    let cut = [line.find("//"), line.find('#')].into_iter().flatten().min();
    match cut {
        Some(i) => &line[..i],
        None => line,
    }
}

fn first_significant_word(text: &str) -> Option<&str> {
    text.lines()
        .map(strip_comment)
        .find_map(|l| l.split_whitespace().next())
}

/// Parses the native format: `ppc <N>` then `<angle> <string>` or `measure <string>` lines.
pub fn parse_native(text: &str) -> PResult<PPCircuit> {
    let mut circuit: Option<PPCircuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        let Some(first) = line.split_whitespace().next() else {
            continue;
        };
        let col = line.find(first).unwrap_or(0) + 1;
        let pos = Pos { line: idx + 1, col };
        let words: Vec<&str> = line.split_whitespace().collect();
        let Some(c) = circuit.as_mut() else {
            let n = match words.as_slice() {
                ["ppc", n] => n.parse::<usize>().ok().filter(|&n| n >= 1),
                _ => None,
            };
            let Some(n) = n else {
                return err(pos, DiagCode::MalformedHeader, "expected `ppc <N>` with N >= 1");
            };
            circuit = Some(PPCircuit::new(n));
            continue;
        };
        let [head, body] = words.as_slice() else {
            return err(pos, DiagCode::Syntax, "expected `<angle> <string>` or `measure <string>`");
        };
        let pauli: PauliString = match body.parse() {
            Ok(p) => p,
            Err(e) => return err(pos, DiagCode::InvalidRotation, e.to_string()),
        };
        if pauli.len() != c.num_qubits {
            return err(
                pos,
                DiagCode::WidthMismatch,
                format!("string has {} letters, expected {}", pauli.len(), c.num_qubits),
            );
        }
        if *head == "measure" {
            c.measurements.push(pauli);
            continue;
        }
        let op = head
            .parse()
            .and_then(|angle| RotationOp::new(pauli, angle, OpTag(c.rotations.len() as u32)));
        match op {
            Ok(op) => c.rotations.push(op),
            Err(e) => return err(pos, DiagCode::InvalidRotation, e.to_string()),
        }
    }
    match circuit {
        Some(c) => Ok(c),
        None => err(Pos { line: 1, col: 1 }, DiagCode::MalformedHeader, "missing `ppc <N>` header"),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(usize),
    Real(String),
    Str(String),
    Sym(&'static str),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Real(s) => f.write_str(s),
            Tok::Int(i) => write!(f, "{i}"),
            Tok::Str(s) => write!(f, "\"{s}\""),
            Tok::Sym(s) => f.write_str(s),
        }
    }
}

fn tokenize(text: &str) -> PResult<Vec<(Pos, Tok)>> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = match raw.find("//") {
            Some(i) => &raw[..i],
            None => raw,
        };
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos { line: li + 1, col: i + 1 };
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((pos, Tok::Ident(chars[start..i].iter().collect())));
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                match s.parse::<usize>() {
                    Ok(v) => out.push((pos, Tok::Int(v))),
                    Err(_) => out.push((pos, Tok::Real(s))),
                }
            } else if c == '"' {
                let start = i + 1;
                i += 1;
                while i < chars.len() && chars[i] != '"' {
                    i += 1;
                }
                if i == chars.len() {
                    return err(pos, DiagCode::Syntax, "unterminated string");
                }
                out.push((pos, Tok::Str(chars[start..i].iter().collect())));
                i += 1;
            } else if c == '-' && chars.get(i + 1) == Some(&'>') {
                out.push((pos, Tok::Sym("->")));
                i += 2;
            } else {
                let sym = match c {
                    '[' => "[",
                    ']' => "]",
                    ',' => ",",
                    ';' => ";",
                    '(' => "(",
                    ')' => ")",
                    _ => return err(pos, DiagCode::Syntax, format!("unexpected character `{c}`")),
                };
                out.push((pos, Tok::Sym(sym)));
                i += 1;
            }
        }
    }
    Ok(out)
}

struct QasmParser {
    toks: Vec<(Pos, Tok)>,
    at: usize,
    eof: Pos,
}

impl QasmParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.eof)
    }

    fn next(&mut self) -> Option<(Pos, Tok)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn expect_sym(&mut self, sym: &'static str) -> PResult<()> {
        let pos = self.pos();
        match self.next() {
            Some((_, Tok::Sym(s))) if s == sym => Ok(()),
            Some((p, t)) => err(p, DiagCode::Syntax, format!("expected `{sym}`, found `{t}`")),
            None => err(pos, DiagCode::Syntax, format!("expected `{sym}`, found end of input")),
        }
    }

    fn expect_ident(&mut self) -> PResult<(Pos, String)> {
        let pos = self.pos();
        match self.next() {
            Some((p, Tok::Ident(s))) => Ok((p, s)),
            Some((p, t)) => err(p, DiagCode::Syntax, format!("expected identifier, found `{t}`")),
            None => err(pos, DiagCode::Syntax, "expected identifier, found end of input"),
        }
    }

    fn expect_int(&mut self) -> PResult<(Pos, usize)> {
        let pos = self.pos();
        match self.next() {
            Some((p, Tok::Int(v))) => Ok((p, v)),
            Some((p, t)) => err(p, DiagCode::Syntax, format!("expected integer, found `{t}`")),
            None => err(pos, DiagCode::Syntax, "expected integer, found end of input"),
        }
    }

    /// `name[index]`
    fn indexed(&mut self) -> PResult<(Pos, String, usize)> {
        let (pos, name) = self.expect_ident()?;
        self.expect_sym("[")?;
        let (_, index) = self.expect_int()?;
        self.expect_sym("]")?;
        Ok((pos, name, index))
    }

    fn skip_statement(&mut self) -> PResult<()> {
        loop {
            match self.next() {
                Some((_, Tok::Sym(";"))) => return Ok(()),
                Some(_) => {}
                None => return err(self.eof, DiagCode::Syntax, "missing `;`"),
            }
        }
    }
}

/// Parses the accepted OpenQASM 2.0 subset.
///
/// `include` and `creg` statements are accepted and ignored, as is `barrier`.
/// Measurement targets are ignored. A gate acting on an already measured qubit
/// is rejected since measurements must be terminal.
pub fn parse_qasm(text: &str) -> PResult<LogicalCircuit> {
    let toks = tokenize(text)?;
    let eof = Pos {
        line: text.lines().count().max(1),
        col: text.lines().last().map_or(1, |l| l.len() + 1),
    };
    let mut p = QasmParser { toks, at: 0, eof };
    let mut register: Option<(String, usize)> = None;
    let mut circuit: Option<LogicalCircuit> = None;
    let mut measured: Vec<bool> = Vec::new();
    let mut statement = 0usize;

    while p.peek().is_some() {
        let (pos, word) = p.expect_ident()?;
        statement += 1;
        match word.as_str() {
            "OPENQASM" => {
                if statement != 1 {
                    return err(pos, DiagCode::MalformedHeader, "`OPENQASM` must be the first statement");
                }
                let vpos = p.pos();
                match p.next() {
                    Some((_, Tok::Real(v))) if v == "2.0" => {}
                    _ => return err(vpos, DiagCode::MalformedHeader, "only `OPENQASM 2.0` is supported"),
                }
                p.expect_sym(";")?;
            }
            "include" => {
                match p.next() {
                    Some((_, Tok::Str(_))) => {}
                    _ => return err(pos, DiagCode::Syntax, "expected a file name after `include`"),
                }
                p.expect_sym(";")?;
            }
            "qreg" => {
                let (rpos, name, size) = p.indexed()?;
                p.expect_sym(";")?;
                if register.is_some() {
                    return err(rpos, DiagCode::UnsupportedRegister, "only one quantum register is supported");
                }
                if size == 0 {
                    return err(rpos, DiagCode::MalformedHeader, "register size must be at least 1");
                }
                register = Some((name, size));
                circuit = Some(LogicalCircuit::new(size));
                measured = vec![false; size];
            }
            "creg" => {
                p.indexed()?;
                p.expect_sym(";")?;
            }
            "barrier" => p.skip_statement()?,
            gate => {
                let Some(kind) = GateKind::from_mnemonic(gate) else {
                    return err(pos, DiagCode::UnknownGate, format!("unknown gate `{gate}`"));
                };
                let (Some((reg, size)), Some(c)) = (register.as_ref(), circuit.as_mut()) else {
                    return err(pos, DiagCode::MissingRegister, "gate before `qreg` declaration");
                };
                let mut qubits = Vec::new();
                loop {
                    let (qpos, name, index) = p.indexed()?;
                    if &name != reg {
                        return err(qpos, DiagCode::UnsupportedRegister, format!("unknown register `{name}`"));
                    }
                    if index >= *size {
                        return err(
                            qpos,
                            DiagCode::QubitOutOfRange,
                            format!("qubit {index} out of range for `qreg {reg}[{size}]`"),
                        );
                    }
                    if qubits.contains(&index) {
                        return err(qpos, DiagCode::DuplicateOperand, format!("qubit {index} used twice"));
                    }
                    if measured[index] {
                        return err(qpos, DiagCode::GateAfterMeasure, format!("qubit {index} was already measured"));
                    }
                    qubits.push(index);
                    match p.peek() {
                        Some(Tok::Sym(",")) => {
                            p.next();
                        }
                        _ => break,
                    }
                }
                if kind == GateKind::Measure && p.peek() == Some(&Tok::Sym("->")) {
                    p.next();
                    p.indexed()?;
                }
                p.expect_sym(";")?;
                if qubits.len() != kind.arity() {
                    return err(
                        pos,
                        DiagCode::ArityMismatch,
                        format!("`{gate}` takes {} operand(s), got {}", kind.arity(), qubits.len()),
                    );
                }
                if kind == GateKind::Measure {
                    measured[qubits[0]] = true;
                }
                c.instrs.push(GateInstr::new(kind, qubits));
            }
        }
    }
    circuit.ok_or(ParseError {
        line: eof.line,
        col: eof.col,
        code: DiagCode::MissingRegister,
        message: "no `qreg` declaration".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_pair() {
        let c = parse_qasm("qreg q[2]; h q[0]; cx q[0],q[1];").unwrap();
        assert_eq!(c.num_qubits, 2);
        assert_eq!(
            c.instrs,
            vec![
                GateInstr::new(GateKind::H, vec![0]),
                GateInstr::new(GateKind::CX, vec![0, 1]),
            ]
        );
    }

    #[test]
    fn header_include_creg_and_measure_target() {
        let src = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\ncreg c[3];\n\
                   // comment\nccx q[0],q[1],q[2]; measure q[2] -> c[2];\n";
        let c = parse_qasm(src).unwrap();
        assert_eq!(c.instrs.len(), 2);
        assert_eq!(c.instrs[1].kind, GateKind::Measure);
    }

    fn code(src: &str) -> DiagCode {
        parse(src).unwrap_err().code
    }

    #[test]
    fn diagnostics_are_distinct() {
        assert_eq!(code("qreg q[2]; t q[3];"), DiagCode::QubitOutOfRange);
        assert_eq!(code("qreg q[2]; foo q[0];"), DiagCode::UnknownGate);
        assert_eq!(code("qreg q[2]; cx q[0];"), DiagCode::ArityMismatch);
        assert_eq!(code("OPENQASM 3.0; qreg q[2];"), DiagCode::MalformedHeader);
        assert_eq!(code("qreg q[2]; OPENQASM 2.0;"), DiagCode::MalformedHeader);
        assert_eq!(code("qreg q[0];"), DiagCode::MalformedHeader);
        assert_eq!(code("qreg q[2]; h q[0]"), DiagCode::Syntax);
        assert_eq!(code("qreg q[2]; cx q[1],q[1];"), DiagCode::DuplicateOperand);
        assert_eq!(code("qreg q[2]; measure q[0]; h q[0];"), DiagCode::GateAfterMeasure);
        assert_eq!(code("h q[0];"), DiagCode::MissingRegister);
        assert_eq!(code("qreg q[2]; qreg r[2];"), DiagCode::UnsupportedRegister);
        assert_eq!(code("ppc 2\npi/3 +ZI"), DiagCode::InvalidRotation);
        assert_eq!(code("ppc 2\npi/4 +Z"), DiagCode::WidthMismatch);
        assert_eq!(code("ppc x"), DiagCode::MalformedHeader);
    }

    #[test]
    fn diagnostics_carry_positions() {
        let e = parse("qreg q[2];\n  t q[3];").unwrap_err();
        assert_eq!((e.line, e.col), (2, 5));
        assert!(e.to_string().starts_with("2:5: error[E003]"));
    }

    #[test]
    fn native_format() {
        let Program::PauliProduct(c) = parse("ppc 2\npi/4 +ZI\nmeasure +ZI\n").unwrap() else {
            panic!("expected native program");
        };
        assert_eq!(c.num_qubits, 2);
        assert_eq!(c.rotations.len(), 1);
        assert_eq!(c.rotations[0].to_string(), "pi/4 +ZI");
        assert_eq!(c.measurements.len(), 1);
    }

    #[test]
    fn qasm_round_trip() {
        let src = "qreg q[3]; h q[0]; s q[1]; sdg q[2]; x q[0]; y q[1]; z q[2]; t q[0]; \
                   tdg q[1]; cx q[0],q[2]; ccx q[2],q[1],q[0]; measure q[0];";
        let c = parse_qasm(src).unwrap();
        assert_eq!(parse_qasm(&c.to_qasm()).unwrap(), c);
    }
}
