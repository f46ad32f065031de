//! Pauli strings in symplectic (x, z) bit-mask form and Hermitian sums of them.
//!
//! A term stores masks `x`, `z` over qubits and a coefficient `c`; it denotes
//! the operator `c * prod_q W_q` with `W_q = I, X, Y, Z` for
//! `(x_q, z_q) = (0,0), (1,0), (1,1), (0,1)`. The letter product is Hermitian,
//! so a real coefficient gives a Hermitian term. On a basis state `|b>`:
//!
//! `W |b> = i^{#Y} * (-1)^{popcount(b & z)} |b ^ x>`

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Coefficients below this are dropped after merging.
pub const COEFF_DROP_TOL: f64 = 1e-12;

/// Single Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (true, true) => PauliLetter::Y,
            (false, true) => PauliLetter::Z,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }
}

/// One Pauli string with a complex coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliTerm {
    pub n_qubits: usize,
    pub x: u64,
    pub z: u64,
    pub coeff: Complex64,
}

impl PauliTerm {
    pub fn new(n_qubits: usize, x: u64, z: u64, coeff: Complex64) -> Self {
        debug_assert!(n_qubits <= 64);
        PauliTerm { n_qubits, x, z, coeff }
    }

    pub fn identity(n_qubits: usize, coeff: Complex64) -> Self {
        Self::new(n_qubits, 0, 0, coeff)
    }

    pub fn letter(&self, q: usize) -> PauliLetter {
        PauliLetter::from_bits(self.x >> q & 1 == 1, self.z >> q & 1 == 1)
    }

    /// Qubits carrying a non-identity letter.
    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Product `self * rhs` as a single term with the symplectic phase.
    pub fn multiply(&self, rhs: &PauliTerm) -> Result<PauliTerm> {
        if self.n_qubits != rhs.n_qubits {
            return Err(Error::QubitMismatch(self.n_qubits, rhs.n_qubits));
        }
        let x = self.x ^ rhs.x;
        let z = self.z ^ rhs.z;
        // i exponent: nY(a) + nY(b) - nY(ab) + 2*popcount(x_b & z_a)  (mod 4)
        let k = (self.y_count() as i64 + rhs.y_count() as i64 - (x & z).count_ones() as i64
            + 2 * (rhs.x & self.z).count_ones() as i64)
            .rem_euclid(4);
        let phase = match k {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        Ok(PauliTerm::new(self.n_qubits, x, z, self.coeff * rhs.coeff * phase))
    }

    /// Pauli word like "X0 Z3 Y5"; the identity string is "I".
    pub fn word(&self) -> String {
        word_of_masks(self.n_qubits, self.x, self.z)
    }
}

pub fn word_of_masks(n_qubits: usize, x: u64, z: u64) -> String {
    if x | z == 0 {
        return "I".to_string();
    }
    let mut s = String::new();
    for q in 0..n_qubits {
        let l = PauliLetter::from_bits(x >> q & 1 == 1, z >> q & 1 == 1);
        if l != PauliLetter::I {
            if !s.is_empty() {
                s.push(' ');
            }
            let _ = write!(s, "{}{}", l.symbol(), q);
        }
    }
    s
}

/// Canonical ordering key: (qubit, letter) pairs of the word, identity first.
pub fn term_order_key(n_qubits: usize, x: u64, z: u64) -> Vec<(u32, u8)> {
    let mut key = Vec::new();
    for q in 0..n_qubits as u32 {
        let xb = x >> q & 1 == 1;
        let zb = z >> q & 1 == 1;
        if xb || zb {
            let rank = match PauliLetter::from_bits(xb, zb) {
                PauliLetter::X => 0u8,
                PauliLetter::Y => 1,
                PauliLetter::Z => 2,
                PauliLetter::I => unreachable!(),
            };
            key.push((q, rank));
        }
    }
    key
}

/// Hermitian sum of Pauli strings with unique keys and real coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitHamiltonian {
    pub n_qubits: usize,
    /// (x, z, coefficient), sorted by the canonical term ordering.
    pub terms: Vec<(u64, u64, f64)>,
}

impl QubitHamiltonian {
    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the identity string, if present.
    pub fn constant(&self) -> f64 {
        self.terms
            .iter()
            .find(|(x, z, _)| x | z == 0)
            .map(|&(_, _, c)| c)
            .unwrap_or(0.0)
    }

    /// True when every term has an even number of Y letters, i.e. the matrix
    /// representation is real symmetric.
    pub fn is_real_symmetric(&self) -> bool {
        self.terms.iter().all(|&(x, z, _)| (x & z).count_ones() % 2 == 0)
    }

    /// One term per line: "coefficient pauli_word".
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &(x, z, c) in &self.terms {
            let _ = writeln!(out, "{} {}", fmt_f64(c), word_of_masks(self.n_qubits, x, z));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<QubitHamiltonian> {
        let mut acc = PauliAccumulator::new(0);
        let mut n_qubits = 0usize;
        let mut terms = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let coeff: f64 = it
                .next()
                .ok_or_else(|| Error::Parse { line: ln + 1, msg: "empty line".into() })?
                .parse()
                .map_err(|e| Error::Parse { line: ln + 1, msg: format!("bad coefficient: {e}") })?;
            let mut x = 0u64;
            let mut z = 0u64;
            for tok in it {
                if tok == "I" {
                    continue;
                }
                let (letter, qs) = tok.split_at(1);
                let q: usize = qs
                    .parse()
                    .map_err(|e| Error::Parse { line: ln + 1, msg: format!("bad qubit index: {e}") })?;
                n_qubits = n_qubits.max(q + 1);
                match letter {
                    "X" => x |= 1 << q,
                    "Y" => {
                        x |= 1 << q;
                        z |= 1 << q;
                    }
                    "Z" => z |= 1 << q,
                    other => {
                        return Err(Error::Parse {
                            line: ln + 1,
                            msg: format!("unknown Pauli letter {other}"),
                        })
                    }
                }
            }
            terms.push((x, z, coeff));
        }
        acc.n_qubits = n_qubits;
        for (x, z, c) in terms {
            acc.add(x, z, Complex64::new(c, 0.0));
        }
        acc.finish()
    }
}

fn fmt_f64(v: f64) -> String {
    // Shortest representation that round-trips; deterministic for diffs.
    format!("{v}")
}

/// Accumulates complex term contributions and produces a merged Hermitian sum.
pub struct PauliAccumulator {
    pub n_qubits: usize,
    map: BTreeMap<(u64, u64), Complex64>,
}

impl PauliAccumulator {
    pub fn new(n_qubits: usize) -> Self {
        PauliAccumulator { n_qubits, map: BTreeMap::new() }
    }

    pub fn add(&mut self, x: u64, z: u64, c: Complex64) {
        *self.map.entry((x, z)).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    pub fn add_term(&mut self, t: &PauliTerm) {
        self.add(t.x, t.z, t.coeff);
    }

    /// Merge, check Hermiticity, drop below tolerance, sort canonically.
    pub fn finish(self) -> Result<QubitHamiltonian> {
        let mut terms: Vec<(u64, u64, f64)> = Vec::with_capacity(self.map.len());
        for ((x, z), c) in self.map {
            if c.norm() < COEFF_DROP_TOL {
                continue;
            }
            if c.im.abs() >= COEFF_DROP_TOL {
                return Err(Error::StrategyMismatch(format!(
                    "non-Hermitian accumulation: imag {:.3e} on {}",
                    c.im,
                    word_of_masks(self.n_qubits, x, z)
                )));
            }
            terms.push((x, z, c.re));
        }
        let n = self.n_qubits;
        terms.sort_by(|a, b| term_order_key(n, a.0, a.1).cmp(&term_order_key(n, b.0, b.1)));
        Ok(QubitHamiltonian { n_qubits: n, terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, x: u64, z: u64) -> PauliTerm {
        PauliTerm::new(n, x, z, Complex64::new(1.0, 0.0))
    }

    #[test]
    fn single_qubit_products() {
        // X * Y = i Z
        let p = t(1, 1, 0).multiply(&t(1, 1, 1)).unwrap();
        assert_eq!((p.x, p.z), (0, 1));
        assert!((p.coeff - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        // Z * Z = I
        let p = t(1, 0, 1).multiply(&t(1, 0, 1)).unwrap();
        assert_eq!((p.x, p.z), (0, 0));
        assert!((p.coeff - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        // Y * X = -i Z
        let p = t(1, 1, 1).multiply(&t(1, 1, 0)).unwrap();
        assert!((p.coeff - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn qubit_count_mismatch_rejected() {
        assert!(t(1, 1, 0).multiply(&t(2, 1, 0)).is_err());
    }

    #[test]
    fn word_formatting() {
        let p = PauliTerm::new(6, 0b100001, 0b100010, Complex64::new(1.0, 0.0));
        assert_eq!(p.word(), "X0 Z1 Y5");
        assert_eq!(t(3, 0, 0).word(), "I");
    }

    #[test]
    fn text_round_trip_and_ordering() {
        let mut acc = PauliAccumulator::new(3);
        acc.add(0b001, 0b000, Complex64::new(0.5, 0.0));
        acc.add(0, 0b100, Complex64::new(-0.25, 0.0));
        acc.add(0, 0, Complex64::new(1.5, 0.0));
        let h = acc.finish().unwrap();
        let text = h.to_text();
        let h2 = QubitHamiltonian::from_text(&text).unwrap();
        assert_eq!(h, h2);
        // identity first in canonical order
        assert_eq!(h.terms[0].0 | h.terms[0].1, 0);
        // re-emission is byte-identical
        assert_eq!(text, h2.to_text());
    }

    #[test]
    fn merging_drops_small_and_duplicates() {
        let mut acc = PauliAccumulator::new(2);
        acc.add(1, 0, Complex64::new(0.5, 0.0));
        acc.add(1, 0, Complex64::new(-0.5, 0.0));
        acc.add(2, 0, Complex64::new(1e-13, 0.0));
        acc.add(0, 1, Complex64::new(1.0, 0.0));
        let h = acc.finish().unwrap();
        assert_eq!(h.n_terms(), 1);
    }
}
