//! FASTA ingestion and emission.
//!
//! Records start with `>` header lines; the header text (after `>`, trimmed)
//! is the sequence name. Sequence lines hold IUPAC letters, case-insensitive,
//! concatenated across lines; content is canonicalized to lowercase subsets
//! internally. `u` is rejected along with everything outside the 15-letter
//! DNA code.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::sequence::{DegenerateBase, InstanceSet};

#[derive(Debug, Error)]
pub enum FastaError {
    #[error("line {line}, column {column}: invalid character `{found}`")]
    InvalidCharacter {
        line: usize,
        column: usize,
        found: char,
    },
    #[error("line {line}: sequence content before the first `>` header")]
    MissingHeader { line: usize },
    #[error("record `{name}` has no sequence content")]
    EmptyRecord { name: String },
    #[error("duplicate header name `{name}`")]
    DuplicateName { name: String },
    #[error("no records found")]
    NoRecords,
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Parses a FASTA stream into an instance, assigning ids in file order.
pub fn parse_fasta<R: BufRead>(reader: R) -> Result<InstanceSet, FastaError> {
    let mut records: Vec<(String, Vec<DegenerateBase>)> = Vec::new();
    let mut current: Option<(String, Vec<DegenerateBase>)> = None;

    for (line_index, line) in reader.lines().enumerate() {
        let line_no = line_index + 1;
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('>') {
            if let Some((name, bases)) = current.take() {
                if bases.is_empty() {
                    return Err(FastaError::EmptyRecord { name });
                }
                records.push((name, bases));
            }
            current = Some((header.trim().to_string(), Vec::new()));
        } else {
            let Some((_, bases)) = current.as_mut() else {
                return Err(FastaError::MissingHeader { line: line_no });
            };
            for (col, byte) in line.bytes().enumerate() {
                match DegenerateBase::from_iupac(byte) {
                    Some(base) => bases.push(base),
                    None => {
                        return Err(FastaError::InvalidCharacter {
                            line: line_no,
                            column: col + 1,
                            found: byte as char,
                        })
                    }
                }
            }
        }
    }
    if let Some((name, bases)) = current.take() {
        if bases.is_empty() {
            return Err(FastaError::EmptyRecord { name });
        }
        records.push((name, bases));
    }
    if records.is_empty() {
        return Err(FastaError::NoRecords);
    }

    let names: Vec<String> = records.iter().map(|(n, _)| n.clone()).collect();
    InstanceSet::from_named_bases(records).map_err(|e| match e {
        crate::sequence::ModelError::DuplicateName(name) => FastaError::DuplicateName { name },
        crate::sequence::ModelError::EmptySequence(name) => FastaError::EmptyRecord { name },
        // from_named_bases only reports the two variants above for non-empty
        // record lists; anything else would be a bug in this parser.
        other => unreachable!("unexpected instance error for records {names:?}: {other}"),
    })
}

pub fn parse_fasta_str(text: &str) -> Result<InstanceSet, FastaError> {
    parse_fasta(text.as_bytes())
}

const LINE_WIDTH: usize = 70;

/// Writes the instance as FASTA, wrapping sequence lines at 70 columns.
/// Output round-trips through [`parse_fasta`].
pub fn write_fasta<W: Write>(instance: &InstanceSet, mut writer: W) -> io::Result<()> {
    for seq in instance.sequences() {
        writeln!(writer, ">{}", seq.name())?;
        for chunk in seq.bases().chunks(LINE_WIDTH) {
            let line: String = chunk.iter().map(|b| b.to_iupac() as char).collect();
            writeln!(writer, "{line}")?;
        }
    }
    Ok(())
}

pub fn fasta_string(instance: &InstanceSet) -> String {
    let mut out = Vec::new();
    write_fasta(instance, &mut out).expect("writing to a Vec cannot fail");
    String::from_utf8(out).expect("FASTA output is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::DegenerateBase;

    #[test]
    fn parses_two_records() {
        let inst = parse_fasta_str(">s1\nacgt\n>s2\nttt\n").unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.get(0).name(), "s1");
        assert_eq!(inst.get(0).len(), 4);
        assert_eq!(inst.get(1).len(), 3);
        assert_eq!(inst.get(0).id(), 0);
        assert_eq!(inst.get(1).id(), 1);
    }

    #[test]
    fn maps_iupac_n_to_full_subset() {
        let inst = parse_fasta_str(">s1\nacnt\n").unwrap();
        assert_eq!(inst.get(0).base(2), DegenerateBase::N);
    }

    #[test]
    fn reports_invalid_character_position() {
        let err = parse_fasta_str(">s1\nacxt\n").unwrap_err();
        match err {
            FastaError::InvalidCharacter {
                line,
                column,
                found,
            } => {
                assert_eq!((line, column, found), (2, 3, 'x'));
            }
            other => panic!("unexpected error {other:?}"),
        }
        // u is not a DNA base here.
        assert!(matches!(
            parse_fasta_str(">s1\nacut\n").unwrap_err(),
            FastaError::InvalidCharacter { column: 3, .. }
        ));
    }

    #[test]
    fn rejects_structural_problems() {
        assert!(matches!(
            parse_fasta_str("").unwrap_err(),
            FastaError::NoRecords
        ));
        assert!(matches!(
            parse_fasta_str(">s1\n\n>s2\nacgt\n").unwrap_err(),
            FastaError::EmptyRecord { .. }
        ));
        assert!(matches!(
            parse_fasta_str(">s1\nac\n>s1\ngt\n").unwrap_err(),
            FastaError::DuplicateName { .. }
        ));
        assert!(matches!(
            parse_fasta_str("acgt\n").unwrap_err(),
            FastaError::MissingHeader { line: 1 }
        ));
    }

    #[test]
    fn case_insensitive_and_multiline() {
        let inst = parse_fasta_str(">S one\nACgT\nryn\n").unwrap();
        assert_eq!(inst.get(0).name(), "S one");
        assert_eq!(inst.get(0).len(), 7);
        assert_eq!(inst.get(0).base(0).to_iupac(), b'a');
        assert_eq!(inst.get(0).base(4).to_iupac(), b'r');
    }

    #[test]
    fn round_trips() {
        let text = ">alpha\nacgtryswkmbdhvn\n>beta\ntttt\n";
        let inst = parse_fasta_str(text).unwrap();
        let emitted = fasta_string(&inst);
        let reparsed = parse_fasta_str(&emitted).unwrap();
        assert_eq!(inst, reparsed);
    }
}
