//! Minimal OpenQASM 2.0 subset: one `qreg`, `cx` and `rz` instructions,
//! and the output permutation carried as a `// permutation: [...]` comment.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::synth::{Circuit, Gate};

const PERMUTATION_TAG: &str = "// permutation:";

pub fn to_qasm(circuit: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", circuit.n);
    for gate in &circuit.gates {
        let _ = match *gate {
            Gate::Cnot(c) => writeln!(out, "cx q[{}],q[{}];", c.control, c.target),
            Gate::Rz { qubit, angle } => writeln!(out, "rz({angle:.16e}) q[{qubit}];"),
        };
    }
    if !circuit.has_identity_output() {
        let perm = circuit
            .output_permutation
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(out, "{PERMUTATION_TAG} [{perm}]");
    }
    out
}

pub fn from_qasm(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    let mut reg_name = String::new();
    let mut permutation: Option<Vec<usize>> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let perr = |msg: String| Error::Parse { line: lineno, msg };
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix(PERMUTATION_TAG) {
            let inner = rest
                .trim()
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| perr("malformed permutation comment".into()))?;
            let perm = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|e| perr(format!("bad permutation entry {s:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            permutation = Some(perm);
            continue;
        }
        let line = match line.find("//") {
            Some(pos) => line[..pos].trim(),
            None => line,
        };
        for stmt in line.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            if stmt.starts_with("OPENQASM") || stmt.starts_with("include") {
                continue;
            }
            if let Some(rest) = stmt.strip_prefix("qreg") {
                if circuit.is_some() {
                    return Err(perr("only one qreg is supported".into()));
                }
                let (name, size) = parse_indexed(rest.trim()).ok_or_else(|| perr(format!("bad qreg {stmt:?}")))?;
                reg_name = name.to_string();
                circuit = Some(Circuit::new(size));
                continue;
            }
            let c = circuit
                .as_mut()
                .ok_or_else(|| perr("gate before qreg declaration".into()))?;
            let size = c.n;
            let qubit = |arg: &str| -> Result<usize> {
                let (name, q) = parse_indexed(arg.trim()).ok_or_else(|| perr(format!("bad operand {arg:?}")))?;
                if name != reg_name {
                    return Err(perr(format!("unknown register {name:?}")));
                }
                if q >= size {
                    return Err(perr(format!("qubit {q} out of range")));
                }
                Ok(q)
            };
            if let Some(rest) = stmt.strip_prefix("cx") {
                let mut args = rest.split(',');
                let (a, b) = match (args.next(), args.next(), args.next()) {
                    (Some(a), Some(b), None) => (qubit(a)?, qubit(b)?),
                    _ => return Err(perr(format!("cx needs two operands: {stmt:?}"))),
                };
                if a == b {
                    return Err(perr("cx control equals target".into()));
                }
                c.cnot(a, b);
            } else if let Some(rest) = stmt.strip_prefix("rz") {
                let rest = rest.trim_start();
                let close = rest
                    .strip_prefix('(')
                    .and_then(|r| r.find(')').map(|p| (r, p)))
                    .ok_or_else(|| perr(format!("bad rz {stmt:?}")))?;
                let (body, p) = close;
                let angle: f64 = body[..p]
                    .trim()
                    .parse()
                    .map_err(|e| perr(format!("bad angle {:?}: {e}", &body[..p])))?;
                let q = qubit(&body[p + 1..])?;
                c.rz(q, angle);
            } else {
                return Err(perr(format!("unsupported statement {stmt:?}")));
            }
        }
    }

    let mut circuit = circuit.ok_or_else(|| Error::Parse {
        line: text.lines().count(),
        msg: "missing qreg declaration".into(),
    })?;
    if let Some(p) = permutation {
        circuit.output_permutation = p;
    }
    circuit.validate()?;
    Ok(circuit)
}

/// `name[idx]` → `(name, idx)`.
fn parse_indexed(s: &str) -> Option<(&str, usize)> {
    let open = s.find('[')?;
    let inner = s[open + 1..].strip_suffix(']')?;
    Some((s[..open].trim(), inner.trim().parse().ok()?))
}
