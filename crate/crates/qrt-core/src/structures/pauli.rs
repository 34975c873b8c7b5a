//! The n-qubit Pauli group, stored symbolically as a phase exponent
//! (powers of i) plus a letter word, with exact phase arithmetic.

use crate::error::{Error, Result};
use crate::linalg::{C64, DenseOperator};

pub const MAX_QUBITS: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub const ALL: [PauliLetter; 4] = [PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z];

    fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    fn matrix(self) -> DenseOperator {
        let zero = C64::new(0.0, 0.0);
        match self {
            PauliLetter::I => DenseOperator::identity(2),
            PauliLetter::X => DenseOperator::from_fn(2, |i, j| {
                if i != j { C64::new(1.0, 0.0) } else { zero }
            }),
            PauliLetter::Y => DenseOperator::from_fn(2, |i, j| match (i, j) {
                (0, 1) => C64::new(0.0, -1.0),
                (1, 0) => C64::new(0.0, 1.0),
                _ => zero,
            }),
            PauliLetter::Z => DenseOperator::from_fn(2, |i, j| match (i, j) {
                (0, 0) => C64::new(1.0, 0.0),
                (1, 1) => C64::new(-1.0, 0.0),
                _ => zero,
            }),
        }
    }
}

/// Single-letter product a * b = i^phase * letter.
fn letter_mul(a: PauliLetter, b: PauliLetter) -> (u8, PauliLetter) {
    use PauliLetter::*;
    match (a, b) {
        (I, x) => (0, x),
        (x, I) => (0, x),
        (X, X) | (Y, Y) | (Z, Z) => (0, I),
        (X, Y) => (1, Z),
        (Y, X) => (3, Z),
        (Y, Z) => (1, X),
        (Z, Y) => (3, X),
        (Z, X) => (1, Y),
        (X, Z) => (3, Y),
    }
}

/// i^phase * (word of letters), the general element of the Pauli group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliElement {
    phase: u8,
    word: Vec<PauliLetter>,
}

impl PauliElement {
    pub fn new(phase: u8, word: Vec<PauliLetter>) -> Self {
        Self { phase: phase % 4, word }
    }

    pub fn identity(qubits: usize) -> Self {
        Self { phase: 0, word: vec![PauliLetter::I; qubits] }
    }

    /// Single-site letter embedded in an n-qubit word.
    pub fn single(qubits: usize, site: usize, letter: PauliLetter) -> Self {
        let mut word = vec![PauliLetter::I; qubits];
        word[site] = letter;
        Self { phase: 0, word }
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn word(&self) -> &[PauliLetter] {
        &self.word
    }

    pub fn qubits(&self) -> usize {
        self.word.len()
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.word.len() != rhs.word.len() {
            return Err(Error::DimMismatch(self.word.len(), rhs.word.len()));
        }
        let mut phase = self.phase + rhs.phase;
        let word = self
            .word
            .iter()
            .zip(rhs.word.iter())
            .map(|(&a, &b)| {
                let (p, letter) = letter_mul(a, b);
                phase += p;
                letter
            })
            .collect();
        Ok(Self { phase: phase % 4, word })
    }

    /// The inverse element. Every letter squares to I with no phase, so a
    /// word is its own inverse and only the i^phase needs undoing.
    pub fn inverse(&self) -> Self {
        Self { phase: (4 - self.phase) % 4, word: self.word.clone() }
    }

    /// Dense matrix i^phase * kron(word).
    pub fn matrix(&self) -> DenseOperator {
        let mut op = DenseOperator::identity(1);
        for &letter in &self.word {
            op = op.kron(&letter.matrix());
        }
        let phase = C64::new(0.0, 1.0).powu(self.phase as u32);
        op.scale(phase)
    }

    pub fn label(&self) -> String {
        let prefix = match self.phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        format!("{prefix}{}", self.word.iter().map(|l| l.as_char()).collect::<String>())
    }
}

/// Full enumeration of the n-qubit Pauli group: 4 phases x 4^n words.
pub fn pauli_group(qubits: u32) -> Result<Vec<PauliElement>> {
    if qubits == 0 || qubits > MAX_QUBITS {
        return Err(Error::OutOfRange(format!(
            "Pauli group enumeration supports 1..={MAX_QUBITS} qubits, got {qubits}"
        )));
    }
    let n = qubits as usize;
    let mut words = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(words.len() * 4);
        for word in &words {
            for letter in PauliLetter::ALL {
                let mut extended: Vec<PauliLetter> = word.clone();
                extended.push(letter);
                next.push(extended);
            }
        }
        words = next;
    }
    let mut group = Vec::with_capacity(4 * words.len());
    for phase in 0..4u8 {
        for word in &words {
            group.push(PauliElement::new(phase, word.clone()));
        }
    }
    Ok(group)
}

/// All 4^n phase-free words, used as membership candidates.
pub(crate) fn pauli_words(qubits: u32) -> Result<Vec<PauliElement>> {
    Ok(pauli_group(qubits)?
        .into_iter()
        .filter(|p| p.phase() == 0)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_sizes() {
        assert_eq!(pauli_group(1).unwrap().len(), 16);
        assert_eq!(pauli_group(2).unwrap().len(), 64);
        assert!(pauli_group(0).is_err());
        assert!(pauli_group(4).is_err());
    }

    #[test]
    fn xy_gives_iz() {
        let x = PauliElement::single(1, 0, PauliLetter::X);
        let y = PauliElement::single(1, 0, PauliLetter::Y);
        let product = x.mul(&y).unwrap();
        assert_eq!(product.phase(), 1);
        assert_eq!(product.word(), &[PauliLetter::Z]);
        assert_eq!(product.label(), "iZ");
    }

    #[test]
    fn symbolic_matches_matrix_multiplication() {
        let group = pauli_group(1).unwrap();
        for a in &group {
            for b in &group {
                let symbolic = a.mul(b).unwrap().matrix();
                let numeric = a.matrix().matmul(&b.matrix()).unwrap();
                assert!(symbolic.sub(&numeric).unwrap().fro_norm() < 1e-14);
            }
        }
    }

    #[test]
    fn closure_exhaustive_two_qubits() {
        let group = pauli_group(2).unwrap();
        let lookup: std::collections::HashSet<_> = group.iter().cloned().collect();
        for a in &group {
            for b in &group {
                let product = a.mul(b).unwrap();
                assert!(lookup.contains(&product), "{} * {} escaped", a.label(), b.label());
            }
        }
    }

    #[test]
    fn associativity_and_inverses() {
        // Exhaustive associativity at one qubit, sampled stride at two.
        let one = pauli_group(1).unwrap();
        for a in &one {
            for b in &one {
                for c in &one {
                    let left = a.mul(b).unwrap().mul(c).unwrap();
                    let right = a.mul(&b.mul(c).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
        let two = pauli_group(2).unwrap();
        for (i, a) in two.iter().enumerate().step_by(7) {
            for (j, b) in two.iter().enumerate().step_by(5) {
                for c in two.iter().skip((i + j) % 3).step_by(9) {
                    let left = a.mul(b).unwrap().mul(c).unwrap();
                    let right = a.mul(&b.mul(c).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
        // Inverse existence for every element.
        for group in [&one, &two] {
            for a in group.iter() {
                let inv = a.inverse();
                assert_eq!(a.mul(&inv).unwrap(), PauliElement::identity(a.qubits()));
                assert_eq!(inv.mul(a).unwrap(), PauliElement::identity(a.qubits()));
            }
        }
    }
}
