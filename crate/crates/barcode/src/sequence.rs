//! Sequences of (possibly degenerate) DNA bases and the three-way match
//! relation between plain probe strings and those sequences.
//!
//! A position in a genomic sequence holds a [`DegenerateBase`]: a non-empty
//! subset of `{a,c,g,t}`. A probe (a plain string over `{a,c,g,t}`) compared
//! against a window of such a sequence either matches every position exactly
//! (perfect match), is admitted everywhere but with at least one position
//! ambiguous (uncertain match), or is excluded by some position (perfect
//! mismatch). A probe *distinguishes* two sequences when it has a perfect
//! match somewhere in one and perfect mismatches everywhere in the other;
//! uncertainty on either side blocks the call.
//!
//! Positions handed to [`match_at`] are 1-based, as are positions in every
//! report this crate emits. Matching is against the forward strand only;
//! reverse-complement hits are out of scope and callers that need them must
//! add the complemented sequences to the input themselves.

use std::fmt;

use thiserror::Error;

/// A plain, non-degenerate nucleotide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Nucleotide {
    A,
    C,
    G,
    T,
}

impl Nucleotide {
    pub const ALL: [Nucleotide; 4] = [Nucleotide::A, Nucleotide::C, Nucleotide::G, Nucleotide::T];

    /// Case-insensitive; returns `None` for anything outside `acgt`.
    pub fn from_ascii(byte: u8) -> Option<Self> {
        match byte.to_ascii_lowercase() {
            b'a' => Some(Nucleotide::A),
            b'c' => Some(Nucleotide::C),
            b'g' => Some(Nucleotide::G),
            b't' => Some(Nucleotide::T),
            _ => None,
        }
    }

    pub fn to_ascii(self) -> u8 {
        match self {
            Nucleotide::A => b'a',
            Nucleotide::C => b'c',
            Nucleotide::G => b'g',
            Nucleotide::T => b't',
        }
    }

    /// Two-bit code: a=0, c=1, g=2, t=3.
    pub fn code(self) -> u8 {
        match self {
            Nucleotide::A => 0,
            Nucleotide::C => 1,
            Nucleotide::G => 2,
            Nucleotide::T => 3,
        }
    }

    pub fn from_code(code: u8) -> Self {
        match code & 3 {
            0 => Nucleotide::A,
            1 => Nucleotide::C,
            2 => Nucleotide::G,
            _ => Nucleotide::T,
        }
    }

    fn bit(self) -> u8 {
        1 << self.code()
    }
}

impl fmt::Display for Nucleotide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ascii() as char)
    }
}

/// A non-empty subset of the DNA alphabet occupying one sequence position,
/// stored as a 4-bit mask (bit 0 = a, 1 = c, 2 = g, 3 = t).
///
/// Subsets of cardinality 1 are identified with plain nucleotides. The full
/// 15-letter IUPAC code maps onto these subsets; `u` is rejected because the
/// alphabet is DNA.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct DegenerateBase(u8);

impl DegenerateBase {
    /// The fully ambiguous base `n` = {a,c,g,t}.
    pub const N: DegenerateBase = DegenerateBase(0b1111);

    pub fn exact(n: Nucleotide) -> Self {
        DegenerateBase(n.bit())
    }

    /// Builds from a raw 4-bit mask; `None` when the subset would be empty.
    pub fn from_mask(mask: u8) -> Option<Self> {
        let mask = mask & 0b1111;
        if mask == 0 {
            None
        } else {
            Some(DegenerateBase(mask))
        }
    }

    /// Case-insensitive IUPAC letter to subset. `u` and anything outside the
    /// 15-letter code return `None`.
    pub fn from_iupac(byte: u8) -> Option<Self> {
        const A: u8 = 0b0001;
        const C: u8 = 0b0010;
        const G: u8 = 0b0100;
        const T: u8 = 0b1000;
        let mask = match byte.to_ascii_lowercase() {
            b'a' => A,
            b'c' => C,
            b'g' => G,
            b't' => T,
            b'r' => A | G,
            b'y' => C | T,
            b's' => C | G,
            b'w' => A | T,
            b'k' => G | T,
            b'm' => A | C,
            b'b' => C | G | T,
            b'd' => A | G | T,
            b'h' => A | C | T,
            b'v' => A | C | G,
            b'n' => A | C | G | T,
            _ => return None,
        };
        Some(DegenerateBase(mask))
    }

    /// The lowercase IUPAC letter for this subset.
    pub fn to_iupac(self) -> u8 {
        match self.0 {
            0b0001 => b'a',
            0b0010 => b'c',
            0b0100 => b'g',
            0b1000 => b't',
            0b0101 => b'r',
            0b1010 => b'y',
            0b0110 => b's',
            0b1001 => b'w',
            0b1100 => b'k',
            0b0011 => b'm',
            0b1110 => b'b',
            0b1101 => b'd',
            0b1011 => b'h',
            0b0111 => b'v',
            0b1111 => b'n',
            _ => unreachable!("mask is always a non-empty 4-bit subset"),
        }
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    /// Number of plain nucleotides in the subset.
    pub fn degeneracy(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_exact(self) -> bool {
        self.0.count_ones() == 1
    }

    pub fn as_nucleotide(self) -> Option<Nucleotide> {
        if self.is_exact() {
            Some(Nucleotide::from_code(self.0.trailing_zeros() as u8))
        } else {
            None
        }
    }

    /// Whether the subset admits the given plain nucleotide.
    pub fn admits(self, n: Nucleotide) -> bool {
        self.0 & n.bit() != 0
    }

    /// The plain nucleotides in this subset, in a/c/g/t order.
    pub fn nucleotides(self) -> impl Iterator<Item = Nucleotide> {
        Nucleotide::ALL.into_iter().filter(move |n| self.admits(*n))
    }
}

impl From<Nucleotide> for DegenerateBase {
    fn from(n: Nucleotide) -> Self {
        DegenerateBase::exact(n)
    }
}

impl fmt::Debug for DegenerateBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_iupac() as char)
    }
}

impl fmt::Display for DegenerateBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_iupac() as char)
    }
}

/// One identified input sequence. Ids are assigned densely in input order by
/// [`InstanceSet`]; both ids and names are unique within an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenomicSequence {
    id: u32,
    name: String,
    bases: Vec<DegenerateBase>,
}

impl GenomicSequence {
    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bases(&self) -> &[DegenerateBase] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// 0-based position access.
    pub fn base(&self, index: usize) -> DegenerateBase {
        self.bases[index]
    }

    /// True when no position is degenerate.
    pub fn is_plain(&self) -> bool {
        self.bases.iter().all(|b| b.is_exact())
    }
}

/// A collection of sequences forming one problem input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSet {
    sequences: Vec<GenomicSequence>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("duplicate sequence name `{0}`")]
    DuplicateName(String),
    #[error("sequence `{0}` has no bases")]
    EmptySequence(String),
    #[error("instance contains no sequences")]
    Empty,
    #[error("start position {position} out of range 1..={last} for probe of length {probe_len}")]
    PositionOutOfRange {
        position: usize,
        last: usize,
        probe_len: usize,
    },
    #[error("invalid probe character `{0}` (probes are plain acgt strings)")]
    InvalidProbeBase(char),
}

impl InstanceSet {
    /// Builds an instance from `(name, bases)` pairs, assigning ids `0..n` in
    /// the given order. Rejects empty input, empty sequences and duplicate
    /// names.
    pub fn from_named_bases(
        records: Vec<(String, Vec<DegenerateBase>)>,
    ) -> Result<Self, ModelError> {
        if records.is_empty() {
            return Err(ModelError::Empty);
        }
        let mut seen = std::collections::HashSet::new();
        let mut sequences = Vec::with_capacity(records.len());
        for (id, (name, bases)) in records.into_iter().enumerate() {
            if bases.is_empty() {
                return Err(ModelError::EmptySequence(name));
            }
            if !seen.insert(name.clone()) {
                return Err(ModelError::DuplicateName(name));
            }
            sequences.push(GenomicSequence {
                id: id as u32,
                name,
                bases,
            });
        }
        Ok(InstanceSet { sequences })
    }

    pub fn n(&self) -> usize {
        self.sequences.len()
    }

    pub fn sequences(&self) -> &[GenomicSequence] {
        &self.sequences
    }

    pub fn get(&self, id: u32) -> &GenomicSequence {
        &self.sequences[id as usize]
    }

    pub fn by_name(&self, name: &str) -> Option<&GenomicSequence> {
        self.sequences.iter().find(|s| s.name == name)
    }

    pub fn max_len(&self) -> usize {
        self.sequences.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn total_len(&self) -> usize {
        self.sequences.iter().map(|s| s.len()).sum()
    }

    pub fn has_degenerate(&self) -> bool {
        self.sequences.iter().any(|s| !s.is_plain())
    }
}

/// Relation of a probe against one start position of a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchKind {
    /// Every window position equals the probe base exactly.
    PerfectMatch,
    /// Every window position admits the probe base, at least one strictly.
    UncertainMatch,
    /// Some window position excludes the probe base.
    PerfectMismatch,
}

/// Relation of a probe against a whole sequence, over all start positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OccurrenceClass {
    /// At least one start position is a perfect match.
    HasPerfect,
    /// No perfect match, but at least one uncertain match.
    UncertainOnly,
    /// Every start position is a perfect mismatch. A probe longer than the
    /// sequence has no valid start positions and falls in this class by
    /// convention: it cannot hybridize anywhere.
    AllMismatch,
}

/// Parses a plain probe string (case-insensitive `acgt`).
pub fn parse_probe(text: &str) -> Result<Vec<Nucleotide>, ModelError> {
    text.bytes()
        .map(|b| Nucleotide::from_ascii(b).ok_or(ModelError::InvalidProbeBase(b as char)))
        .collect()
}

pub fn probe_string(probe: &[Nucleotide]) -> String {
    probe.iter().map(|n| n.to_ascii() as char).collect()
}

fn window_kind(probe: &[Nucleotide], bases: &[DegenerateBase]) -> MatchKind {
    debug_assert_eq!(probe.len(), bases.len());
    let mut strict = false;
    for (p, b) in probe.iter().zip(bases) {
        if !b.admits(*p) {
            return MatchKind::PerfectMismatch;
        }
        if !b.is_exact() {
            strict = true;
        }
    }
    if strict {
        MatchKind::UncertainMatch
    } else {
        MatchKind::PerfectMatch
    }
}

/// Classifies the probe against the window starting at 1-based `position`.
///
/// Valid positions are `1..=L - |probe| + 1`; anything else is an error.
pub fn match_at(
    probe: &[Nucleotide],
    seq: &GenomicSequence,
    position: usize,
) -> Result<MatchKind, ModelError> {
    let last = seq.len().saturating_sub(probe.len()).wrapping_add(1);
    if probe.is_empty() || position == 0 || probe.len() > seq.len() || position > last {
        return Err(ModelError::PositionOutOfRange {
            position,
            last: if probe.len() > seq.len() { 0 } else { last },
            probe_len: probe.len(),
        });
    }
    let start = position - 1;
    Ok(window_kind(probe, &seq.bases()[start..start + probe.len()]))
}

/// Classifies the probe against the whole sequence by scanning every valid
/// start position.
pub fn occurrence_class(probe: &[Nucleotide], seq: &GenomicSequence) -> OccurrenceClass {
    if probe.is_empty() || probe.len() > seq.len() {
        return OccurrenceClass::AllMismatch;
    }
    let mut saw_uncertain = false;
    for window in seq.bases().windows(probe.len()) {
        match window_kind(probe, window) {
            MatchKind::PerfectMatch => return OccurrenceClass::HasPerfect,
            MatchKind::UncertainMatch => saw_uncertain = true,
            MatchKind::PerfectMismatch => {}
        }
    }
    if saw_uncertain {
        OccurrenceClass::UncertainOnly
    } else {
        OccurrenceClass::AllMismatch
    }
}

/// Whether the probe separates the two sequences: a perfect match somewhere
/// in one, perfect mismatches everywhere in the other. An uncertain-only
/// occurrence on either side blocks that side.
pub fn distinguishes(probe: &[Nucleotide], a: &GenomicSequence, b: &GenomicSequence) -> bool {
    use OccurrenceClass::*;
    matches!(
        (occurrence_class(probe, a), occurrence_class(probe, b)),
        (HasPerfect, AllMismatch) | (AllMismatch, HasPerfect)
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn plain(text: &str) -> Vec<DegenerateBase> {
        text.bytes()
            .map(|b| DegenerateBase::from_iupac(b).unwrap())
            .collect()
    }

    fn instance(texts: &[&str]) -> InstanceSet {
        InstanceSet::from_named_bases(
            texts
                .iter()
                .enumerate()
                .map(|(i, t)| (format!("s{i}"), plain(t)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn iupac_round_trip() {
        for letter in "acgtryswkmbdhvn".bytes() {
            let base = DegenerateBase::from_iupac(letter).unwrap();
            assert_eq!(base.to_iupac(), letter);
            assert_eq!(
                DegenerateBase::from_iupac(letter.to_ascii_uppercase()),
                Some(base)
            );
        }
        assert_eq!(DegenerateBase::from_iupac(b'u'), None);
        assert_eq!(DegenerateBase::from_iupac(b'x'), None);
        assert_eq!(DegenerateBase::from_iupac(b'-'), None);
    }

    #[test]
    fn degenerate_subsets() {
        let r = DegenerateBase::from_iupac(b'r').unwrap();
        assert!(r.admits(Nucleotide::A) && r.admits(Nucleotide::G));
        assert!(!r.admits(Nucleotide::C) && !r.admits(Nucleotide::T));
        assert_eq!(r.degeneracy(), 2);
        assert!(!r.is_exact());
        assert_eq!(DegenerateBase::N.degeneracy(), 4);
        assert_eq!(
            DegenerateBase::exact(Nucleotide::T).as_nucleotide(),
            Some(Nucleotide::T)
        );
        assert_eq!(DegenerateBase::from_mask(0), None);
    }

    #[test]
    fn match_at_three_cases() {
        let inst = instance(&["acgt", "ggtt"]);
        let ac = parse_probe("ac").unwrap();
        assert_eq!(
            match_at(&ac, inst.get(0), 1).unwrap(),
            MatchKind::PerfectMatch
        );
        assert_eq!(
            match_at(&ac, inst.get(1), 1).unwrap(),
            MatchKind::PerfectMismatch
        );

        // a[n]a: both starts admit "aa" but through a strict superset.
        let ana = InstanceSet::from_named_bases(vec![("d".into(), plain("ana"))]).unwrap();
        let aa = parse_probe("aa").unwrap();
        assert_eq!(
            match_at(&aa, ana.get(0), 1).unwrap(),
            MatchKind::UncertainMatch
        );
        assert_eq!(
            match_at(&aa, ana.get(0), 2).unwrap(),
            MatchKind::UncertainMatch
        );
        assert!(match_at(&aa, ana.get(0), 3).is_err());
        assert!(match_at(&aa, ana.get(0), 0).is_err());
    }

    #[test]
    fn occurrence_class_cases() {
        let inst = instance(&["acgt"]);
        let s = inst.get(0);
        assert_eq!(
            occurrence_class(&parse_probe("ac").unwrap(), s),
            OccurrenceClass::HasPerfect
        );
        // Brute scan of all 3 start positions of "ca" against "acgt".
        assert_eq!(
            occurrence_class(&parse_probe("ca").unwrap(), s),
            OccurrenceClass::AllMismatch
        );
        let ana = InstanceSet::from_named_bases(vec![("d".into(), plain("ana"))]).unwrap();
        assert_eq!(
            occurrence_class(&parse_probe("aa").unwrap(), ana.get(0)),
            OccurrenceClass::UncertainOnly
        );
        // Longer than the sequence: no valid positions, AllMismatch by convention.
        assert_eq!(
            occurrence_class(&parse_probe("aaaaa").unwrap(), ana.get(0)),
            OccurrenceClass::AllMismatch
        );
    }

    #[test]
    fn distinguishes_cases() {
        let inst = instance(&["acgt", "ggtt", "tacg"]);
        let ac = parse_probe("ac").unwrap();
        assert!(distinguishes(&ac, inst.get(0), inst.get(1)));
        assert!(distinguishes(&ac, inst.get(1), inst.get(0)));
        // Both contain "ac": no separation.
        assert!(!distinguishes(&ac, inst.get(0), inst.get(2)));
        // Uncertain side blocks even though the other side is all-mismatch.
        let mixed = InstanceSet::from_named_bases(vec![
            ("u".into(), plain("ana")),
            ("m".into(), plain("cccc")),
        ])
        .unwrap();
        let aa = parse_probe("aa").unwrap();
        assert!(!distinguishes(&aa, mixed.get(0), mixed.get(1)));
    }

    #[test]
    fn no_self_separation() {
        let inst = instance(&["acgtacgt"]);
        for probe in ["a", "cg", "acgt", "tt"] {
            let p = parse_probe(probe).unwrap();
            assert!(!distinguishes(&p, inst.get(0), inst.get(0)));
        }
    }

    #[test]
    fn plain_sequences_never_uncertain() {
        let inst = instance(&["acgtgca", "ttgacca"]);
        for len in 1..=4 {
            for start in 0..=(7 - len) {
                let probe: Vec<Nucleotide> = inst.get(0).bases()[start..start + len]
                    .iter()
                    .map(|b| b.as_nucleotide().unwrap())
                    .collect();
                for s in inst.sequences() {
                    assert_ne!(occurrence_class(&probe, s), OccurrenceClass::UncertainOnly);
                }
            }
        }
    }

    #[test]
    fn instance_validation() {
        assert_eq!(
            InstanceSet::from_named_bases(vec![]).unwrap_err(),
            ModelError::Empty
        );
        assert_eq!(
            InstanceSet::from_named_bases(vec![("a".into(), vec![])]).unwrap_err(),
            ModelError::EmptySequence("a".into())
        );
        let dup = InstanceSet::from_named_bases(vec![
            ("a".into(), plain("ac")),
            ("a".into(), plain("gt")),
        ]);
        assert_eq!(dup.unwrap_err(), ModelError::DuplicateName("a".into()));
    }
}
