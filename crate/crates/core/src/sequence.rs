//! Cyclic sign sequences describing the twist boxes of a pretzel.
//!
//! Box `i` carries `+a` or `-a` twists. Indices increase counterclockwise,
//! so the counterclockwise neighbour of `i` is `i + 1 mod m`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Which family a sequence belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// `2n+1` boxes, `n+1` plus and `n` minus: a knot.
    OddKnot,
    /// `2n` boxes, `n` of each sign: a two component link.
    EvenLink,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::OddKnot => f.write_str("odd-knot"),
            Mode::EvenLink => f.write_str("even-link"),
        }
    }
}

impl Mode {
    pub fn len_for(self, n: usize) -> usize {
        match self {
            Mode::OddKnot => 2 * n + 1,
            Mode::EvenLink => 2 * n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignSeq(Vec<Sign>);

impl SignSeq {
    pub fn new(signs: Vec<Sign>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::Empty);
        }
        Ok(SignSeq(signs))
    }

    /// The alternating sequence `+,-,+,-,...` of the given mode.
    pub fn alternating(n: usize, mode: Mode) -> Self {
        let m = mode.len_for(n).max(1);
        let signs = (0..m)
            .map(|i| if i % 2 == 0 { Sign::Plus } else { Sign::Minus })
            .collect();
        SignSeq(signs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    /// Sign at `i`, index taken modulo the length.
    pub fn sign(&self, i: usize) -> Sign {
        self.0[i % self.0.len()]
    }

    pub fn plus_count(&self) -> usize {
        self.0.iter().filter(|s| s.is_plus()).count()
    }

    pub fn minus_count(&self) -> usize {
        self.0.len() - self.plus_count()
    }

    /// Number of minus boxes, i.e. the number of bands in each band set.
    pub fn n(&self) -> usize {
        self.minus_count()
    }

    pub fn succ(&self, i: usize) -> usize {
        (i + 1) % self.len()
    }

    pub fn pred(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    pub fn mode(&self) -> Option<Mode> {
        [Mode::OddKnot, Mode::EvenLink]
            .into_iter()
            .find(|&mode| self.validate(mode).is_ok())
    }

    pub fn validate(&self, mode: Mode) -> Result<()> {
        let len = self.len();
        let plus = self.plus_count();
        let minus = len - plus;
        let (expected_plus, expected_minus) = match mode {
            Mode::OddKnot => (len / 2 + 1, len / 2),
            Mode::EvenLink => (len / 2, len / 2),
        };
        let parity_ok = match mode {
            Mode::OddKnot => len % 2 == 1,
            Mode::EvenLink => len.is_multiple_of(2),
        };
        if parity_ok && plus == expected_plus && minus == expected_minus {
            Ok(())
        } else {
            Err(Error::Unbalanced {
                mode,
                len,
                plus,
                minus,
                expected_plus,
                expected_minus,
            })
        }
    }

    /// `out[i] = self[i + k]`.
    pub fn rotated(&self, k: usize) -> SignSeq {
        let m = self.len();
        SignSeq((0..m).map(|i| self.0[(i + k) % m]).collect())
    }

    /// `out[i] = self[k - i]`, indices mod m.
    pub fn reflected(&self, k: usize) -> SignSeq {
        let m = self.len();
        SignSeq((0..m).map(|i| self.0[(k % m + m - i) % m]).collect())
    }

    pub fn apply(&self, sym: Symmetry) -> SignSeq {
        match sym {
            Symmetry::Rotation(k) => self.rotated(k),
            Symmetry::Reflection(k) => self.reflected(k),
        }
    }

    pub fn is_alternating(&self) -> bool {
        (0..self.len()).all(|i| self.sign(i) != self.sign(i + 1))
    }

    /// Least representative of the dihedral orbit, with the symmetry that
    /// produced it. Ties go to the first symmetry in the order
    /// rotations `0..m`, then reflections `0..m`.
    pub fn canonical_form(&self) -> (SignSeq, Symmetry) {
        let m = self.len();
        let mut best = (self.clone(), Symmetry::Rotation(0));
        let candidates = (0..m)
            .map(Symmetry::Rotation)
            .chain((0..m).map(Symmetry::Reflection));
        for sym in candidates {
            let image = self.apply(sym);
            if image < best.0 {
                best = (image, sym);
            }
        }
        best
    }
}

impl fmt::Display for SignSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for SignSeq {
    type Err = Error;

    /// Accepts `+`, `-` and the unicode minus sign.
    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .trim()
            .chars()
            .enumerate()
            .map(|(position, c)| match c {
                '+' => Ok(Sign::Plus),
                '-' | '\u{2212}' => Ok(Sign::Minus),
                found => Err(Error::BadChar { position, found }),
            })
            .collect::<Result<Vec<_>>>()?;
        SignSeq::new(signs)
    }
}

impl Serialize for SignSeq {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignSeq {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of the dihedral group acting on cyclic positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symmetry {
    Rotation(usize),
    Reflection(usize),
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symmetry::Rotation(0) => f.write_str("identity"),
            Symmetry::Rotation(k) => write!(f, "rotation {k}"),
            Symmetry::Reflection(k) => write!(f, "reflection {k}"),
        }
    }
}

/// Every balanced sequence of the mode with `n` minus signs, in
/// lexicographic order (`+` before `-`).
pub fn enumerate_balanced(n: usize, mode: Mode) -> Balanced {
    let m = mode.len_for(n);
    let next = (m > 0).then(|| {
        let minus = n;
        let mut v = vec![Sign::Plus; m - minus];
        v.extend(std::iter::repeat_n(Sign::Minus, minus));
        v
    });
    Balanced { next }
}

/// Lexicographic stream of multiset permutations.
#[derive(Clone, Debug)]
pub struct Balanced {
    next: Option<Vec<Sign>>,
}

impl Iterator for Balanced {
    type Item = SignSeq;

    fn next(&mut self) -> Option<SignSeq> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(SignSeq(current))
    }
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let pivot = i - 1;
    let j = (i..v.len()).rev().find(|&j| v[j] > v[pivot]).unwrap();
    v.swap(pivot, j);
    v[i..].reverse();
    true
}

/// Binomial coefficient, exact for the sizes used here.
pub fn binomial(n: u64, k: u64) -> u64 {
    assert!(k <= n);
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
