//! Mutation words: finite sequences of vertex directions with the
//! involution relation `mu_k mu_k = 1`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A mutation word. Letters are 1-based vertex indices and are applied
/// first-listed-first: `[1, 2]` means "mutate at 1, then at 2".
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MutationWord {
    letters: Vec<usize>,
}

impl MutationWord {
    /// Builds a word, checking every letter against the rank.
    pub fn new(letters: Vec<usize>, rank: usize) -> Result<Self> {
        for &l in &letters {
            if l == 0 || l > rank {
                return Err(Error::LetterOutOfRange { letter: l, rank });
            }
        }
        Ok(Self { letters })
    }

    /// The letters in application order.
    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// Word length.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// True for the empty word.
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// True when no two adjacent letters are equal.
    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1])
    }

    /// Cancels adjacent equal pairs until none remain. The result is the
    /// normal form in the free product of order-2 generators, so it does
    /// not depend on cancellation order.
    pub fn reduce(&self) -> Self {
        let mut stack: Vec<usize> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if stack.last() == Some(&l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Self { letters: stack }
    }

    /// The set of distinct letters.
    pub fn support(&self) -> BTreeSet<usize> {
        self.letters.iter().copied().collect()
    }

    /// How many times direction `j` occurs.
    pub fn multiplicity(&self, j: usize) -> usize {
        self.letters.iter().filter(|&&l| l == j).count()
    }

    /// True when no split into two nonempty contiguous halves has
    /// disjoint supports.
    pub fn is_homogeneous(&self) -> bool {
        (1..self.letters.len()).all(|cut| {
            let head: BTreeSet<usize> = self.letters[..cut].iter().copied().collect();
            self.letters[cut..].iter().any(|l| head.contains(l))
        })
    }

    /// True when the support is all of `1..=rank`.
    pub fn is_full(&self, rank: usize) -> bool {
        self.support().len() == rank
    }

    /// The reversed word.
    pub fn reversed(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.reverse();
        Self { letters }
    }
}

impl std::fmt::Display for MutationWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// All reduced words over the given ascending alphabet with length in
/// `1..=max_len`, in shortlex order (length first, then lexicographic).
pub fn reduced_words(alphabet: &[usize], max_len: usize) -> Vec<MutationWord> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    fn rec(alphabet: &[usize], max_len: usize, len: usize, current: &mut Vec<usize>, out: &mut Vec<MutationWord>) {
        if current.len() == len {
            out.push(MutationWord {
                letters: current.clone(),
            });
            return;
        }
        for &a in alphabet {
            if current.last() == Some(&a) {
                continue;
            }
            current.push(a);
            rec(alphabet, max_len, len, current, out);
            current.pop();
        }
    }
    for len in 1..=max_len {
        rec(alphabet, max_len, len, &mut current, &mut out);
    }
    out
}
