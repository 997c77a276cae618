use std::fmt::Write;

use super::{CodeError, StabilizerCode};
use crate::gf2::PauliOperator;

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Generators,
    LogicalX,
    LogicalZ,
}

/// Parses a stabilizer file: one Pauli string per line, `#` comments, and
/// optional `LX:` / `LZ:` sections whose operator may sit on the same line or
/// the next one.
pub fn parse_code(text: &str) -> Result<StabilizerCode, CodeError> {
    let mut generators: Vec<(usize, PauliOperator)> = Vec::new();
    let mut lx: Option<PauliOperator> = None;
    let mut lz: Option<PauliOperator> = None;
    let mut section = Section::Generators;
    let mut last_line = 0;

    let parse_op = |line: usize, s: &str| -> Result<PauliOperator, CodeError> {
        s.parse().map_err(|e| CodeError::Parse {
            line,
            message: format!("{e}"),
        })
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (body, new_section) = if let Some(rest) = content.strip_prefix("LX:") {
            (rest.trim(), Some(Section::LogicalX))
        } else if let Some(rest) = content.strip_prefix("LZ:") {
            (rest.trim(), Some(Section::LogicalZ))
        } else {
            (content, None)
        };
        if let Some(s) = new_section {
            let slot = if s == Section::LogicalX { &lx } else { &lz };
            if slot.is_some() {
                return Err(CodeError::Parse {
                    line,
                    message: "duplicate logical section".to_string(),
                });
            }
            section = s;
            if body.is_empty() {
                continue;
            }
        }
        let op = parse_op(line, body)?;
        match section {
            Section::Generators => generators.push((line, op)),
            Section::LogicalX | Section::LogicalZ => {
                let slot = if section == Section::LogicalX { &mut lx } else { &mut lz };
                if slot.is_some() {
                    return Err(CodeError::Parse {
                        line,
                        message: "generators must precede the logical sections".to_string(),
                    });
                }
                *slot = Some(op);
            }
        }
    }

    let n = generators
        .first()
        .map(|(_, g)| g.num_qubits())
        .or(lx.as_ref().map(|p| p.num_qubits()))
        .or(lz.as_ref().map(|p| p.num_qubits()))
        .ok_or(CodeError::Parse {
            line: last_line.max(1),
            message: "no operators found".to_string(),
        })?;
    if let Some((line, g)) = generators.iter().find(|(_, g)| g.num_qubits() != n) {
        return Err(CodeError::Parse {
            line: *line,
            message: format!("operator acts on {} qubits, expected {n}", g.num_qubits()),
        });
    }
    let code = StabilizerCode::new(n, generators.into_iter().map(|(_, g)| g).collect())?;
    match (lx, lz) {
        (Some(x), Some(z)) => code.with_logicals(x, z),
        (None, None) => Ok(code),
        _ => Err(CodeError::InvalidLogical(
            "LX and LZ must be given together".to_string(),
        )),
    }
}

/// Writes a code in the format read by [`parse_code`].
pub fn serialize_code(code: &StabilizerCode) -> String {
    let mut out = format!("# [[{}, {}]] stabilizer code\n", code.n(), code.k());
    let unsigned = |p: &PauliOperator| {
        let s = p.to_string();
        s.strip_prefix('+').map(str::to_string).unwrap_or(s)
    };
    for g in code.generators() {
        let _ = writeln!(out, "{}", unsigned(g));
    }
    if let (Some(x), Some(z)) = (code.logical_x(), code.logical_z()) {
        let _ = writeln!(out, "LX: {}", unsigned(x));
        let _ = writeln!(out, "LZ: {}", unsigned(z));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{five_qubit_code, random_code};

    #[test]
    fn parses_sections() {
        let text = "# five qubit code\nXZZXI\nIXZZX\nXIXZZ\nZXIXZ  # last\n\nLX:\nXXXXX\nLZ: ZZZZZ\n";
        assert_eq!(parse_code(text).unwrap(), five_qubit_code());
    }

    #[test]
    fn parses_signs() {
        let c = parse_code("-ZZ\n").unwrap();
        assert_eq!(c.generators()[0].sign(), Some(-1));
        assert!(c.logical_x().is_none());
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_code("XX\n\nXQ\n").unwrap_err();
        assert!(matches!(err, CodeError::Parse { line: 3, .. }), "{err:?}");
        let err = parse_code("XX\nZZZ\n").unwrap_err();
        assert!(matches!(err, CodeError::Parse { line: 2, .. }), "{err:?}");
        assert!(matches!(parse_code("# nothing\n"), Err(CodeError::Parse { .. })));
        assert_eq!(
            parse_code("XX\nZI\n").unwrap_err(),
            CodeError::Anticommuting(0, 1)
        );
        assert!(parse_code("ZZ\nLX: XX\n").is_err());
    }

    #[test]
    fn round_trip() {
        for seed in 0..20 {
            let c = random_code(1 + seed as usize % 8, seed);
            assert_eq!(parse_code(&serialize_code(&c)).unwrap(), c);
        }
    }
}
