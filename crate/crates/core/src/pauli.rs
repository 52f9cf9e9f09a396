//! Dense Pauli strings and their commutation semantics.
//!
//! A [`PauliString`] is a sign bit plus one [`PauliLetter`] per qubit. The
//! letter encoding follows the usual symplectic bit pair `(x, z)`:
//! `(0,0) = I`, `(1,0) = X`, `(0,1) = Z`, `(1,1) = Y`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub const ALL: [PauliLetter; 4] = [PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z];

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (false, true) => PauliLetter::Z,
            (true, true) => PauliLetter::Y,
        }
    }

    /// The `(x, z)` bit pair of this letter.
    pub fn bits(self) -> (bool, bool) {
        match self {
            PauliLetter::I => (false, false),
            PauliLetter::X => (true, false),
            PauliLetter::Z => (false, true),
            PauliLetter::Y => (true, true),
        }
    }

    pub fn is_identity(self) -> bool {
        self == PauliLetter::I
    }

    pub fn anticommutes_with(self, other: PauliLetter) -> bool {
        anticommutes_at(self, other)
    }

    pub fn to_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliLetter::I),
            'X' => Some(PauliLetter::X),
            'Y' => Some(PauliLetter::Y),
            'Z' => Some(PauliLetter::Z),
            _ => None,
        }
    }
}

/// True iff both letters are non-identity and distinct.
pub fn anticommutes_at(p: PauliLetter, q: PauliLetter) -> bool {
    !p.is_identity() && !q.is_identity() && p != q
}

/// A signed tensor product of single-qubit Paulis, `(-1)^r P_0 ⊗ … ⊗ P_{n-1}`.
///
/// The length is fixed at construction. Letter `i` acts on qubit `i`, and the
/// textual form lists qubit 0 first: `-IXZY` has `X` on qubit 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    negative: bool,
    letters: Vec<PauliLetter>,
}

impl PauliString {
    pub fn new(negative: bool, letters: Vec<PauliLetter>) -> Self {
        Self { negative, letters }
    }

    pub fn identity(num_qubits: usize) -> Self {
        Self::new(false, vec![PauliLetter::I; num_qubits])
    }

    /// `+letter` on `qubit`, identity elsewhere.
    pub fn single(num_qubits: usize, qubit: usize, letter: PauliLetter) -> Self {
        let mut p = Self::identity(num_qubits);
        p.letters[qubit] = letter;
        p
    }

    /// Builds a positive string from `(qubit, letter)` pairs.
    pub fn from_sparse(num_qubits: usize, entries: &[(usize, PauliLetter)]) -> Self {
        let mut p = Self::identity(num_qubits);
        for &(q, l) in entries {
            p.letters[q] = l;
        }
        p
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn letters(&self) -> &[PauliLetter] {
        &self.letters
    }

    pub fn letter(&self, qubit: usize) -> PauliLetter {
        self.letters[qubit]
    }

    pub fn set_letter(&mut self, qubit: usize, letter: PauliLetter) {
        self.letters[qubit] = letter;
    }

    pub fn negated(&self) -> Self {
        Self::new(!self.negative, self.letters.clone())
    }

    pub fn with_sign(mut self, negative: bool) -> Self {
        self.negative = negative;
        self
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|l| !l.is_identity()).count()
    }

    /// Qubits carrying a non-identity letter, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.is_identity())
            .map(|(q, _)| q)
            .collect()
    }

    pub fn has_y(&self) -> bool {
        self.letters.contains(&PauliLetter::Y)
    }

    /// Whether `self` and `other` commute; the signs never matter.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let anticommuting = self
            .letters
            .iter()
            .zip(&other.letters)
            .filter(|(&p, &q)| anticommutes_at(p, q))
            .count();
        Ok(anticommuting % 2 == 0)
    }

    pub fn check_len(&self, num_qubits: usize) -> Result<()> {
        if self.len() == num_qubits {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                left: self.len(),
                right: num_qubits,
            })
        }
    }
}

/// Free-function form of [`PauliString::commutes`].
pub fn commutes(p: &PauliString, q: &PauliString) -> Result<bool> {
    p.commutes(q)
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (negative, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        if body.is_empty() {
            return Err(Error::InvalidPauli(s.to_owned()));
        }
        let letters = body
            .chars()
            .map(PauliLetter::from_char)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidPauli(s.to_owned()))?;
        Ok(Self::new(negative, letters))
    }
}

impl Serialize for PauliString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use PauliLetter::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn letter_anticommutation() {
        assert!(anticommutes_at(X, Y));
        assert!(!anticommutes_at(I, Z));
        assert!(!anticommutes_at(Z, Z));
        for a in PauliLetter::ALL {
            for b in PauliLetter::ALL {
                assert_eq!(anticommutes_at(a, b), anticommutes_at(b, a));
            }
        }
    }

    #[test]
    fn bit_pairs_round_trip() {
        for l in PauliLetter::ALL {
            let (x, z) = l.bits();
            assert_eq!(PauliLetter::from_bits(x, z), l);
        }
        assert_eq!(PauliLetter::from_bits(true, true), Y);
    }

    #[test]
    fn string_commutation() {
        assert!(p("+XI").commutes(&p("+IX")).unwrap());
        assert!(!p("+X").commutes(&p("+Z")).unwrap());
        assert!(p("+XX").commutes(&p("+ZZ")).unwrap());
        assert!(p("-XX").commutes(&p("ZZ")).unwrap());
    }

    #[test]
    fn length_mismatch_is_rejected() {
        assert!(matches!(
            p("XX").commutes(&p("X")),
            Err(Error::LengthMismatch { left: 2, right: 1 })
        ));
    }

    #[test]
    fn weight_counts_non_identity() {
        assert_eq!(p("+IIII").weight(), 0);
        assert_eq!(p("+IXZI").weight(), 2);
        assert_eq!(p("+YYY").weight(), 3);
        assert_eq!(p("IXZI").support(), vec![1, 2]);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("-IXZY").to_string(), "-IXZY");
        assert_eq!(p("XZ").to_string(), "+XZ");
        assert!("".parse::<PauliString>().is_err());
        assert!("+".parse::<PauliString>().is_err());
        assert!("+XQ".parse::<PauliString>().is_err());
    }
}
