//! Binary words: the bijection with (213,231)-avoiding permutations and
//! shuffle-square detection for words.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{Permutation, PositionSet};

/// Default length cap for [`count_square_words`].
pub const DEFAULT_WORD_COUNT_CAP: usize = 20;

/// A word over `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BinaryWord {
    bits: Vec<bool>,
}

impl BinaryWord {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// The word encoded by the low `len` bits of `value`, least significant
    /// bit first.
    pub fn from_bits_of(value: u64, len: usize) -> Self {
        Self {
            bits: (0..len).map(|i| value >> i & 1 == 1).collect(),
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn count_zeros(&self) -> usize {
        self.bits.iter().filter(|b| !**b).count()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }
}

/// Replaces, left to right, each 0 by `1..=k` and, right to left, each 1 by
/// `k+1..=n` (k = number of zeros). The image avoids 213 and 231.
pub fn bin_to_perm(u: &BinaryWord) -> Permutation {
    let n = u.len();
    let k = u.count_zeros();
    let mut next_low = 1u32;
    let mut next_high = n as u32;
    let mut letters = vec![0u32; n];
    for (i, &b) in u.bits.iter().enumerate() {
        if !b {
            letters[i] = next_low;
            next_low += 1;
        } else {
            letters[i] = next_high;
            next_high -= 1;
        }
    }
    debug_assert_eq!(next_low, k as u32 + 1);
    Permutation::from_letters(letters).expect("construction tiles 1..=n")
}

/// Greedy inverse of [`bin_to_perm`] for even-size permutations: each letter
/// maps to 0 if it is the smallest remaining value, 1 if the largest; the
/// final (ambiguous) letter is chosen so both letter counts are even.
pub fn perm_to_bin(pi: &Permutation) -> Result<BinaryWord> {
    let n = pi.size();
    if !n.is_multiple_of(2) {
        return Err(Error::OddSize(n));
    }
    if n == 0 {
        return Ok(BinaryWord::default());
    }
    let mut low = 1u32;
    let mut high = n as u32;
    let mut bits = Vec::with_capacity(n);
    for (i, &v) in pi.letters().iter().enumerate() {
        if i == n - 1 {
            debug_assert_eq!(low, high);
            // parity rule: exactly one choice makes both counts even
            let zeros = bits.iter().filter(|b: &&bool| !**b).count();
            let pick_zero = (zeros + 1) % 2 == 0;
            let ones = bits.len() - zeros;
            debug_assert_eq!(pick_zero, ones % 2 == 0);
            bits.push(!pick_zero);
        } else if v == low {
            bits.push(false);
            low += 1;
        } else if v == high {
            bits.push(true);
            high -= 1;
        } else {
            return Err(Error::NotInImage);
        }
    }
    Ok(BinaryWord { bits })
}

// Left-to-right two-coloring; position 1 goes to copy A, copies must carry
// identical letters index by index.
fn square_word_search(u: &BinaryWord) -> Option<Vec<bool>> {
    let n = u.len();
    if !n.is_multiple_of(2) {
        return None;
    }
    if n == 0 {
        return Some(vec![]);
    }
    let half = n / 2;
    let zeros_total = u.count_zeros();
    if !zeros_total.is_multiple_of(2) {
        return None;
    }

    struct State<'a> {
        bits: &'a [bool],
        half: usize,
        a: Vec<bool>,
        b: Vec<bool>,
        in_a: Vec<bool>,
        zeros_left: Vec<usize>, // zeros in suffix starting at i
    }

    fn rec(st: &mut State, i: usize) -> bool {
        if i == st.bits.len() {
            return true;
        }
        let bit = st.bits[i];
        for to_a in [true, false] {
            if i == 0 && !to_a {
                continue;
            }
            let (cur_len, other_len) = if to_a {
                (st.a.len(), st.b.len())
            } else {
                (st.b.len(), st.a.len())
            };
            if cur_len == st.half {
                continue;
            }
            // the copy letters must agree where both are filled
            if other_len > cur_len {
                let other = if to_a { &st.b } else { &st.a };
                if other[cur_len] != bit {
                    continue;
                }
            }
            // zero-count feasibility: the copies' zero counts must be able to
            // meet using the zeros remaining after this position
            let (za, zb) = (
                st.a.iter().filter(|b| !**b).count() + usize::from(to_a && !bit),
                st.b.iter().filter(|b| !**b).count() + usize::from(!to_a && !bit),
            );
            let remaining_zeros = st.zeros_left[i] - usize::from(!bit);
            if za.abs_diff(zb) > remaining_zeros {
                continue;
            }
            if to_a {
                st.a.push(bit);
            } else {
                st.b.push(bit);
            }
            st.in_a.push(to_a);
            if rec(st, i + 1) {
                return true;
            }
            st.in_a.pop();
            if to_a {
                st.a.pop();
            } else {
                st.b.pop();
            }
        }
        false
    }

    let mut zeros_left = vec![0usize; n + 1];
    for i in (0..n).rev() {
        zeros_left[i] = zeros_left[i + 1] + usize::from(!u.bits[i]);
    }
    let mut st = State {
        bits: &u.bits,
        half,
        a: Vec::with_capacity(half),
        b: Vec::with_capacity(half),
        in_a: Vec::with_capacity(n),
        zeros_left,
    };
    if rec(&mut st, 0) {
        Some(st.in_a)
    } else {
        None
    }
}

/// Returns the positions of one copy when `u` is a shuffle-square, else
/// `None`.
pub fn is_square_word(u: &BinaryWord) -> Option<PositionSet> {
    square_word_search(u).map(|in_a| {
        let ps: Vec<usize> = in_a
            .iter()
            .enumerate()
            .filter(|(_, a)| **a)
            .map(|(i, _)| i + 1)
            .collect();
        PositionSet::new(ps, u.len()).expect("increasing by construction")
    })
}

/// Number of binary shuffle-square words of the given length.
pub fn count_square_words(len: usize) -> Result<u64> {
    count_square_words_capped(len, DEFAULT_WORD_COUNT_CAP)
}

pub fn count_square_words_capped(len: usize, cap: usize) -> Result<u64> {
    if len > cap {
        return Err(Error::SizeLimit { size: len, cap });
    }
    if !len.is_multiple_of(2) {
        return Ok(if len == 0 { 1 } else { 0 });
    }
    if len == 0 {
        return Ok(1);
    }
    // complementation is a squareness-preserving involution pairing words
    // that start with 0 with words that start with 1
    let with_leading_zero: u64 = (0u64..1 << (len - 1))
        .into_par_iter()
        .filter(|&v| square_word_search(&BinaryWord::from_bits_of(v << 1, len)).is_some())
        .count() as u64;
    Ok(2 * with_leading_zero)
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits: Result<Vec<bool>> = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("bad binary letter {other:?}"))),
            })
            .collect();
        Ok(Self { bits: bits? })
    }
}
