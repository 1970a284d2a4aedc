//! Permutations of `{1..n}` in one-line notation, their Coxeter length and
//! reduced words over the adjacent transpositions `s_1, ..., s_{n-1}`.
//!
//! Composition is `(u ∘ v)(x) = u(v(x))`. With this convention `s_i ∘ w`
//! swaps the *values* `i` and `i + 1` in the one-line notation of `w`, while
//! `w ∘ s_i` swaps the *positions* `i` and `i + 1`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported number of strands.
pub const MAX_N: usize = 12;

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::StrandCountOutOfRange(n));
    }
    Ok(())
}

/// `n!` as a machine integer; only meaningful for `n <= MAX_N`.
pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// An element of the symmetric group `S_n`.
///
/// The derived ordering compares one-line notations lexicographically, which
/// is the same as comparing [`Permutation::lex_rank`] for equal `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation `image[p - 1] = w(p)`.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        check_n(n)?;
        let mut seen = [false; MAX_N + 1];
        for &v in &image {
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotAPermutation { n, image });
            }
            seen[v] = true;
        }
        Ok(Self {
            image: image.into_iter().map(|v| v as u8).collect(),
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self {
            image: (1..=n as u8).collect(),
        })
    }

    /// The adjacent transposition `s_i`, exchanging `i` and `i + 1`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        let mut w = Self::identity(n)?;
        check_generator(n, i)?;
        w.image.swap(i - 1, i);
        Ok(w)
    }

    /// The longest element `w_0 = [n, n-1, ..., 1]`.
    pub fn longest_element(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self {
            image: (1..=n as u8).rev().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// One-line notation.
    pub fn image(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v as usize).collect()
    }

    /// `w(p)` for `1 <= p <= n`.
    pub fn apply(&self, p: usize) -> usize {
        self.image[p - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(p, &v)| v as usize == p + 1)
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(Self {
            image: other
                .image
                .iter()
                .map(|&v| self.image[v as usize - 1])
                .collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0u8; self.n()];
        for (p, &v) in self.image.iter().enumerate() {
            image[v as usize - 1] = p as u8 + 1;
        }
        Self { image }
    }

    /// Coxeter length, i.e. the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.image;
        let mut count = 0;
        for x in 0..w.len() {
            for y in x + 1..w.len() {
                if w[x] > w[y] {
                    count += 1;
                }
            }
        }
        count
    }

    fn position_of(&self, value: usize) -> usize {
        self.image
            .iter()
            .position(|&v| v as usize == value)
            .expect("value in range")
    }

    /// Whether `l(s_i w) < l(w)`: the value `i + 1` sits left of the value `i`.
    pub fn left_descent(&self, i: usize) -> Result<bool> {
        check_generator(self.n(), i)?;
        Ok(self.has_left_descent(i))
    }

    /// Whether `l(w s_i) < l(w)`: `w(i) > w(i + 1)`.
    pub fn right_descent(&self, i: usize) -> Result<bool> {
        check_generator(self.n(), i)?;
        Ok(self.has_right_descent(i))
    }

    pub(crate) fn has_left_descent(&self, i: usize) -> bool {
        self.position_of(i) > self.position_of(i + 1)
    }

    pub(crate) fn has_right_descent(&self, i: usize) -> bool {
        self.image[i - 1] > self.image[i]
    }

    /// `s_i ∘ self` without range checking.
    pub(crate) fn left_mul_generator(&self, i: usize) -> Self {
        let image = self
            .image
            .iter()
            .map(|&v| match v as usize {
                x if x == i => v + 1,
                x if x == i + 1 => v - 1,
                _ => v,
            })
            .collect();
        Self { image }
    }

    /// `self ∘ s_i` without range checking.
    pub(crate) fn right_mul_generator(&self, i: usize) -> Self {
        let mut image = self.image.clone();
        image.swap(i - 1, i);
        Self { image }
    }

    /// The lexicographically smallest reduced word.
    ///
    /// Any left descent can start a reduced word, so picking the smallest one
    /// at every step yields the lexicographic minimum.
    pub fn reduced_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.length());
        let mut w = self.clone();
        'outer: loop {
            for i in 1..w.n() {
                if w.has_left_descent(i) {
                    letters.push(i);
                    w = w.left_mul_generator(i);
                    continue 'outer;
                }
            }
            break;
        }
        Word(letters)
    }

    /// Ordering key used for reports: length, then canonical reduced word.
    pub fn shortlex_key(&self) -> (usize, Word) {
        let word = self.reduced_word();
        (word.len(), word)
    }

    /// `w_0 ∘ self ∘ w_0`, which maps `s_i` to `s_{n-i}`.
    pub fn conjugate_by_w0(&self) -> Self {
        let n = self.n() as u8;
        let image = self.image.iter().rev().map(|&v| n + 1 - v).collect();
        Self { image }
    }

    /// Index of `self` among all permutations of `S_n` sorted by one-line
    /// notation.
    pub fn lex_rank(&self) -> usize {
        let n = self.n();
        let mut rank = 0;
        for x in 0..n {
            let smaller_later = self.image[x + 1..]
                .iter()
                .filter(|&&v| v < self.image[x])
                .count();
            rank += smaller_later * factorial(n - 1 - x);
        }
        rank
    }

    /// Inverse of [`Permutation::lex_rank`].
    pub fn from_lex_rank(n: usize, rank: usize) -> Result<Self> {
        check_n(n)?;
        if rank >= factorial(n) {
            return Err(Error::IndexOutOfRange {
                index: rank,
                max: factorial(n) - 1,
            });
        }
        let mut remaining: Vec<u8> = (1..=n as u8).collect();
        let mut image = Vec::with_capacity(n);
        let mut r = rank;
        for x in 0..n {
            let f = factorial(n - 1 - x);
            image.push(remaining.remove(r / f));
            r %= f;
        }
        Ok(Self { image })
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Result<Vec<Self>> {
        check_n(n)?;
        let mut out = Vec::with_capacity(factorial(n));
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(Self { image: cur.clone() });
            if !next_permutation(&mut cur) {
                break;
            }
        }
        Ok(out)
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub(crate) fn check_generator(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: n.saturating_sub(1),
        });
    }
    Ok(())
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.image())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.image())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.image().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let image = Vec::<usize>::deserialize(deserializer)?;
        Permutation::new(image).map_err(serde::de::Error::custom)
    }
}

/// A word in the generators `s_1, ..., s_{n-1}`, read left to right as a
/// product `s_{i_1} ∘ ... ∘ s_{i_k}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The permutation `s_{i_1} ∘ ... ∘ s_{i_k}` in `S_n`.
    pub fn evaluate(&self, n: usize) -> Result<Permutation> {
        let mut w = Permutation::identity(n)?;
        for &i in &self.0 {
            check_generator(n, i)?;
        }
        for &i in self.0.iter().rev() {
            w = w.left_mul_generator(i);
        }
        Ok(w)
    }

    /// Letters joined by dots, `"e"` for the empty word.
    pub fn dotted(&self) -> String {
        if self.0.is_empty() {
            return "e".to_string();
        }
        self.0
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl From<Vec<usize>> for Word {
    fn from(letters: Vec<usize>) -> Self {
        Word(letters)
    }
}
