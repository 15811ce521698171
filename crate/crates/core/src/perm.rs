//! Permutations, integer words, standardization, symmetries, subwords and
//! pattern involvement.
//!
//! Positions and values are one-based throughout; the empty permutation is a
//! first-class value (it is the unit of the shuffle product).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}` stored as its one-line word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Permutation {
    letters: Vec<u32>,
}

/// A strictly increasing set of one-based positions into some host word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PositionSet {
    positions: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line word, checking that every value
    /// of `1..=n` appears exactly once.
    pub fn from_letters(letters: Vec<u32>) -> Result<Self> {
        let n = letters.len();
        let mut seen = vec![false; n];
        for &v in &letters {
            if v == 0 || v as usize > n {
                return Err(Error::NotAPermutation(format!(
                    "letter {v} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(Error::NotAPermutation(format!("letter {v} repeated")));
            }
        }
        Ok(Self { letters })
    }

    /// The empty permutation.
    pub fn empty() -> Self {
        Self::default()
    }

    /// The increasing permutation `1 2 ... n`.
    pub fn identity(n: usize) -> Self {
        Self {
            letters: (1..=n as u32).collect(),
        }
    }

    /// The decreasing permutation `n (n-1) ... 1`.
    pub fn decreasing(n: usize) -> Self {
        Self {
            letters: (1..=n as u32).rev().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    /// The letter at one-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.letters[i - 1]
    }

    /// Reverses the word.
    pub fn mirror(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    /// Replaces each letter `v` by `n - v + 1`.
    pub fn complement(&self) -> Self {
        let n = self.size() as u32;
        Self {
            letters: self.letters.iter().map(|&v| n - v + 1).collect(),
        }
    }

    /// The functional inverse.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.size()];
        for (i, &v) in self.letters.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Self { letters: inv }
    }

    /// All distinct images of `self` under the group generated by mirror,
    /// complement and inverse (at most eight).
    pub fn symmetry_orbit(&self) -> Vec<Permutation> {
        let mut orbit = vec![self.clone()];
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i].clone();
            for q in [p.mirror(), p.complement(), p.inverse()] {
                if !orbit.contains(&q) {
                    orbit.push(q);
                }
            }
            i += 1;
        }
        orbit
    }

    /// The lexicographically smallest member of [`Self::symmetry_orbit`].
    pub fn symmetry_canonical(&self) -> Permutation {
        self.symmetry_orbit().into_iter().min().unwrap()
    }
}

impl PositionSet {
    /// Builds a position set, checking strict monotonicity and bounds against
    /// a host word of length `host_len`.
    pub fn new(positions: Vec<usize>, host_len: usize) -> Result<Self> {
        for w in positions.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Parse(format!(
                    "positions not strictly increasing: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        for &p in &positions {
            if p == 0 || p > host_len {
                return Err(Error::OutOfRange(p, host_len));
            }
        }
        Ok(Self { positions })
    }

    /// An empty position set.
    pub fn empty() -> Self {
        Self::default()
    }

    /// The full set `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        Self {
            positions: (1..=n).collect(),
        }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// The complement within `{1, ..., n}`.
    pub fn complement_in(&self, n: usize) -> PositionSet {
        let mut member = vec![false; n + 1];
        for &p in &self.positions {
            member[p] = true;
        }
        PositionSet {
            positions: (1..=n).filter(|&p| !member[p]).collect(),
        }
    }
}

/// Replaces a duplicate-free integer word by the unique permutation with the
/// same relative order of letters.
pub fn standardize(word: &[u32]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by_key(|&i| word[i]);
    for w in order.windows(2) {
        if word[w[0]] == word[w[1]] {
            return Err(Error::DuplicateLetter(word[w[0]]));
        }
    }
    let mut letters = vec![0u32; word.len()];
    for (rank, &i) in order.iter().enumerate() {
        letters[i] = rank as u32 + 1;
    }
    Ok(Permutation { letters })
}

/// The subword of `word` at the positions of `set`, in position order.
pub fn subword(word: &[u32], set: &PositionSet) -> Result<Vec<u32>> {
    set.positions
        .iter()
        .map(|&p| {
            if p == 0 || p > word.len() {
                Err(Error::OutOfRange(p, word.len()))
            } else {
                Ok(word[p - 1])
            }
        })
        .collect()
}

/// Increments every letter of `word` by `k` (which may be negative).
pub fn shift_word(word: &[u32], k: i64) -> Result<Vec<u32>> {
    word.iter()
        .map(|&v| {
            let shifted = v as i64 + k;
            if shifted <= 0 {
                Err(Error::NonPositiveShift {
                    letter: v,
                    shift: k,
                })
            } else {
                Ok(shifted as u32)
            }
        })
        .collect()
}

/// Searches for an occurrence of the pattern `sigma` in `pi`.
///
/// Returns the lexicographically smallest occurrence when one exists.
/// Backtracking over positions with value-window pruning; worst-case
/// exponential (the problem is NP-complete).
pub fn find_occurrence(sigma: &Permutation, pi: &Permutation) -> Option<PositionSet> {
    let k = sigma.size();
    let n = pi.size();
    if k > n {
        return None;
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(k);

    fn rec(
        sigma: &Permutation,
        pi: &Permutation,
        chosen: &mut Vec<usize>,
        start: usize,
    ) -> bool {
        let m = chosen.len();
        if m == sigma.size() {
            return true;
        }
        // Value window implied by the already-placed letters.
        let target = sigma.at(m + 1);
        let mut lo = 0u32;
        let mut hi = u32::MAX;
        for (j, &p) in chosen.iter().enumerate() {
            let v = pi.at(p);
            if sigma.at(j + 1) < target {
                lo = lo.max(v);
            } else {
                hi = hi.min(v);
            }
        }
        let remaining = sigma.size() - m;
        for p in start..=pi.size().saturating_sub(remaining - 1) {
            let v = pi.at(p);
            if v > lo && v < hi {
                chosen.push(p);
                if rec(sigma, pi, chosen, p + 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    if k == 0 {
        return Some(PositionSet::empty());
    }
    if rec(sigma, pi, &mut chosen, 1) {
        Some(PositionSet::new(chosen, n).expect("search yields valid positions"))
    } else {
        None
    }
}

/// True iff `pi` avoids every pattern in `patterns`.
pub fn avoids(pi: &Permutation, patterns: &[Permutation]) -> bool {
    patterns.iter().all(|p| find_occurrence(p, pi).is_none())
}

/// Parses an integer word: whitespace-separated positive decimal integers, or
/// the compact digit form (single token, every digit in `1..=9`). The empty
/// string is the empty word.
pub fn parse_word(text: &str) -> Result<Vec<u32>> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Ok(Vec::new());
    }
    if tokens.len() == 1 && tokens[0].len() > 1 && tokens[0].bytes().all(|b| (b'1'..=b'9').contains(&b))
    {
        return Ok(tokens[0].bytes().map(|b| (b - b'0') as u32).collect());
    }
    tokens
        .iter()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
                .and_then(|v| {
                    if v == 0 {
                        Err(Error::Parse("letter 0 not allowed".into()))
                    } else {
                        Ok(v)
                    }
                })
        })
        .collect()
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::from_letters(parse_word(s)?)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &v in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for PositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &p in &self.positions {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&[]).unwrap(), Permutation::empty());
        assert_eq!(
            standardize(&[1, 8, 9, 2, 10, 4]).unwrap(),
            perm("145263")
        );
        assert_eq!(standardize(&[7, 3, 9]).unwrap(), perm("213"));
        assert_eq!(
            standardize(&[5, 5]).unwrap_err(),
            Error::DuplicateLetter(5)
        );
    }

    #[test]
    fn standardize_idempotent_on_permutations() {
        for s in ["1432", "2413", "1", ""] {
            let p = perm(s);
            assert_eq!(standardize(p.letters()).unwrap(), p);
        }
    }

    #[test]
    fn subword_examples() {
        let u = parse_word("1 8 3 9 2 7 11 5 12 6 10 4").unwrap();
        let set = PositionSet::new(vec![1, 2, 4, 5, 11, 12], 12).unwrap();
        assert_eq!(subword(&u, &set).unwrap(), vec![1, 8, 9, 2, 10, 4]);
        assert_eq!(subword(&u, &PositionSet::empty()).unwrap(), vec![]);
        assert_eq!(subword(&u, &PositionSet::full(12)).unwrap(), u);
        let bad = PositionSet::new(vec![13], 13).unwrap();
        assert!(subword(&u, &bad).is_err());
    }

    #[test]
    fn symmetries() {
        assert_eq!(perm("1432").complement(), perm("4123"));
        assert_eq!(perm("12345").inverse(), perm("12345"));
        let p = perm("3142");
        assert_eq!(p.mirror().mirror(), p);
        assert_eq!(p.complement().complement(), p);
        assert_eq!(p.inverse().inverse(), p);
        assert_eq!(p.mirror().complement(), p.complement().mirror());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift_word(&[1, 2], 3).unwrap(), vec![4, 5]);
        assert_eq!(shift_word(&[3, 1], 0).unwrap(), vec![3, 1]);
        assert_eq!(shift_word(&[], 5).unwrap(), Vec::<u32>::new());
        assert!(shift_word(&[1], -1).is_err());
    }

    #[test]
    fn occurrence_examples() {
        assert_eq!(
            find_occurrence(&Permutation::empty(), &perm("321")),
            Some(PositionSet::empty())
        );
        assert_eq!(find_occurrence(&perm("12"), &perm("21")), None);
        assert_eq!(find_occurrence(&perm("213"), &perm("1432")), None);
        let occ = find_occurrence(&perm("213"), &perm("2413")).unwrap();
        assert_eq!(occ.positions(), &[1, 3, 4]);
    }

    #[test]
    fn occurrence_is_lex_smallest() {
        // 12 occurs in 1234 at many places; expect {1,2}.
        let occ = find_occurrence(&perm("12"), &perm("1234")).unwrap();
        assert_eq!(occ.positions(), &[1, 2]);
    }

    #[test]
    fn avoids_examples() {
        assert!(avoids(&perm("1432"), &[perm("213"), perm("231")]));
        assert!(avoids(&perm("1432"), &[]));
        assert!(!avoids(&perm("2413"), &[perm("213")]));
    }

    #[test]
    fn occurrence_agrees_with_brute_force() {
        use itertools::Itertools;
        // All sigma of size 3 against all pi of size 5.
        let sigmas: Vec<Permutation> = (1..=3u32)
            .permutations(3)
            .map(|w| Permutation::from_letters(w).unwrap())
            .collect();
        for pi_word in (1..=5u32).permutations(5) {
            let pi = Permutation::from_letters(pi_word).unwrap();
            for sigma in &sigmas {
                let brute = (1..=5usize).combinations(3).any(|ps| {
                    let set = PositionSet::new(ps, 5).unwrap();
                    standardize(&subword(pi.letters(), &set).unwrap()).unwrap() == *sigma
                });
                assert_eq!(find_occurrence(sigma, &pi).is_some(), brute);
            }
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(perm("1 4 3 2"), perm("1432"));
        assert_eq!(perm("").size(), 0);
        assert_eq!(perm("1 4 3 2").to_string(), "1 4 3 2");
        let big: Permutation = "10 1 2 3 4 5 6 7 8 9".parse().unwrap();
        assert_eq!(big.at(1), 10);
        assert!("1 1".parse::<Permutation>().is_err());
        assert!("0 1".parse::<Permutation>().is_err());
    }
}
