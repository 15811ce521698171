//! The unshuffling coproduct and its dual shuffle product on the linear span
//! of permutations, with exact integer multiplicities.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{standardize, Permutation};

/// Default size cap for [`unshuffle`]: the 2^n subset enumeration is intended
/// for n of at most about this size.
pub const DEFAULT_UNSHUFFLE_CAP: usize = 22;

/// Default cap on `|sigma| + |nu|` for [`shuffle`].
pub const DEFAULT_SHUFFLE_CAP: usize = 16;

/// A finite integer combination of permutations (a shuffle product result).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Expansion {
    terms: BTreeMap<Permutation, u64>,
}

/// A finite integer combination of ordered permutation pairs (a coproduct
/// result).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorExpansion {
    terms: BTreeMap<(Permutation, Permutation), u64>,
}

impl Expansion {
    pub fn coefficient(&self, pi: &Permutation) -> u64 {
        self.terms.get(pi).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, u64)> {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient_sum(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn add(&mut self, pi: Permutation, coeff: u64) {
        if coeff > 0 {
            *self.terms.entry(pi).or_insert(0) += coeff;
        }
    }
}

impl TensorExpansion {
    pub fn coefficient(&self, sigma: &Permutation, nu: &Permutation) -> u64 {
        self.terms
            .get(&(sigma.clone(), nu.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Permutation, Permutation), u64)> {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient_sum(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn add(&mut self, sigma: Permutation, nu: Permutation, coeff: u64) {
        if coeff > 0 {
            *self.terms.entry((sigma, nu)).or_insert(0) += coeff;
        }
    }
}

/// Expands the unshuffling coproduct of `pi`: the sum over all ordered
/// two-set partitions of positions of the tensor of standardized subwords.
///
/// Enumerates all 2^n subsets (in parallel for larger sizes); the coefficient
/// sum is exactly 2^n.
pub fn unshuffle(pi: &Permutation) -> Result<TensorExpansion> {
    unshuffle_capped(pi, DEFAULT_UNSHUFFLE_CAP)
}

pub fn unshuffle_capped(pi: &Permutation, cap: usize) -> Result<TensorExpansion> {
    let n = pi.size();
    if n > cap {
        return Err(Error::SizeLimit { size: n, cap });
    }
    let letters = pi.letters();
    let total: u64 = 1 << n;
    let term_of = |mask: u64| {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (i, &v) in letters.iter().enumerate() {
            if mask >> i & 1 == 1 {
                left.push(v);
            } else {
                right.push(v);
            }
        }
        (
            standardize(&left).expect("distinct letters"),
            standardize(&right).expect("distinct letters"),
        )
    };
    let merged = (0..total)
        .into_par_iter()
        .fold(TensorExpansion::default, |mut acc, mask| {
            let (l, r) = term_of(mask);
            acc.add(l, r, 1);
            acc
        })
        .reduce(TensorExpansion::default, |mut a, b| {
            for ((l, r), c) in b.terms {
                *a.terms.entry((l, r)).or_insert(0) += c;
            }
            a
        });
    Ok(merged)
}

/// Expands the shuffle product of `sigma` and `nu`.
///
/// Enumerates every (position subset, value subset) pair of the result size:
/// each pair determines exactly one permutation containing `sigma` on the
/// chosen positions/values and `nu` on the complement, and contributes one to
/// its multiplicity. By duality the coefficient of `pi` equals the
/// coefficient of the tensor in the coproduct of `pi` (tested).
pub fn shuffle(sigma: &Permutation, nu: &Permutation) -> Result<Expansion> {
    shuffle_capped(sigma, nu, DEFAULT_SHUFFLE_CAP)
}

pub fn shuffle_capped(sigma: &Permutation, nu: &Permutation, cap: usize) -> Result<Expansion> {
    let a = sigma.size();
    let b = nu.size();
    let n = a + b;
    if n > cap {
        return Err(Error::SizeLimit { size: n, cap });
    }
    let mut result = Expansion::default();
    let all: Vec<u32> = (1..=n as u32).collect();
    for pos in (0..n).combinations(a) {
        let mut is_sigma_pos = vec![false; n];
        for &p in &pos {
            is_sigma_pos[p] = true;
        }
        for vals in all.iter().copied().combinations(a) {
            let mut in_sigma = vec![false; n];
            for &v in &vals {
                in_sigma[v as usize - 1] = true;
            }
            let other: Vec<u32> = all.iter().copied().filter(|&v| !in_sigma[v as usize - 1]).collect();
            let mut word = vec![0u32; n];
            let mut si = 0;
            let mut ni = 0;
            for (i, w) in word.iter_mut().enumerate() {
                if is_sigma_pos[i] {
                    *w = vals[sigma.letters()[si] as usize - 1];
                    si += 1;
                } else {
                    *w = other[nu.letters()[ni] as usize - 1];
                    ni += 1;
                }
            }
            result.add(Permutation::from_letters(word).expect("tiled values"), 1);
        }
    }
    Ok(result)
}

/// The multiplicity of `sigma (x) nu` in the coproduct of `pi`, computed by
/// counting qualifying position subsets without materializing the expansion.
pub fn coefficient(pi: &Permutation, sigma: &Permutation, nu: &Permutation) -> u64 {
    let n = pi.size();
    if sigma.size() + nu.size() != n {
        return 0;
    }
    let letters = pi.letters();
    (0..n)
        .combinations(sigma.size())
        .filter(|pos| {
            let mut chosen = vec![false; n];
            for &p in pos {
                chosen[p] = true;
            }
            let left: Vec<u32> = (0..n).filter(|&i| chosen[i]).map(|i| letters[i]).collect();
            if standardize(&left).expect("distinct") != *sigma {
                return false;
            }
            let right: Vec<u32> = (0..n).filter(|&i| !chosen[i]).map(|i| letters[i]).collect();
            standardize(&right).expect("distinct") == *nu
        })
        .count() as u64
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pi, c) in self.terms() {
            writeln!(f, "{c}\t{pi}")?;
        }
        Ok(())
    }
}

impl fmt::Display for TensorExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((l, r), c) in self.terms() {
            writeln!(f, "{c}\t{l}\t⊗\t{r}")?;
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
    fn unshuffle_213() {
        let d = unshuffle(&perm("213")).unwrap();
        let e = Permutation::empty();
        let expected = [
            (e.clone(), perm("213"), 1),
            (perm("1"), perm("12"), 2),
            (perm("1"), perm("21"), 1),
            (perm("12"), perm("1"), 2),
            (perm("21"), perm("1"), 1),
            (perm("213"), e.clone(), 1),
        ];
        assert_eq!(d.num_terms(), expected.len());
        for (l, r, c) in expected {
            assert_eq!(d.coefficient(&l, &r), c, "{l} (x) {r}");
        }
        assert_eq!(d.coefficient_sum(), 8);
    }

    #[test]
    fn unshuffle_1432_term() {
        let d = unshuffle(&perm("1432")).unwrap();
        assert_eq!(d.coefficient(&perm("1"), &perm("132")), 3);
        assert_eq!(d.coefficient_sum(), 16);
    }

    #[test]
    fn unshuffle_empty() {
        let d = unshuffle(&Permutation::empty()).unwrap();
        assert_eq!(d.num_terms(), 1);
        assert_eq!(d.coefficient(&Permutation::empty(), &Permutation::empty()), 1);
    }

    #[test]
    fn unshuffle_cap() {
        let p = Permutation::identity(5);
        assert!(matches!(
            unshuffle_capped(&p, 4),
            Err(Error::SizeLimit { size: 5, cap: 4 })
        ));
    }

    #[test]
    fn shuffle_unit_and_small() {
        let p = perm("231");
        let s = shuffle(&Permutation::empty(), &p).unwrap();
        assert_eq!(s.num_terms(), 1);
        assert_eq!(s.coefficient(&p), 1);

        let s = shuffle(&perm("1"), &perm("1")).unwrap();
        assert_eq!(s.coefficient(&perm("12")), 2);
        assert_eq!(s.coefficient(&perm("21")), 2);
        assert_eq!(s.num_terms(), 2);
    }

    #[test]
    fn shuffle_12_21() {
        let s = shuffle(&perm("12"), &perm("21")).unwrap();
        assert_eq!(s.num_terms(), 20);
        assert_eq!(s.coefficient(&perm("1432")), 3);
        assert_eq!(s.coefficient(&perm("4312")), 1);
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(coefficient(&perm("1432"), &perm("12"), &perm("21")), 3);
        let p = perm("2413");
        assert_eq!(coefficient(&p, &p, &Permutation::empty()), 1);
        assert_eq!(coefficient(&perm("1234"), &perm("12"), &perm("12")), 6);
        // size mismatch
        assert_eq!(coefficient(&perm("123"), &perm("12"), &perm("12")), 0);
    }

    #[test]
    fn duality_small() {
        use itertools::Itertools;
        // coefficient of pi in sigma ⧢ nu equals coefficient of (sigma, nu)
        // in the coproduct of pi, for all sigma, nu of sizes 1..=2.
        let small: Vec<Permutation> = (1..=2usize)
            .flat_map(|k| {
                (1..=k as u32)
                    .permutations(k)
                    .map(|w| Permutation::from_letters(w).unwrap())
            })
            .collect();
        for sigma in &small {
            for nu in &small {
                let prod = shuffle(sigma, nu).unwrap();
                for (pi, c) in prod.terms() {
                    let d = unshuffle(pi).unwrap();
                    assert_eq!(d.coefficient(sigma, nu), c);
                }
            }
        }
    }
}
