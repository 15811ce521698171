//! Exhaustive counting of square permutations, optionally restricted by
//! pattern avoidance or grouped into symmetry classes.

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{avoids, Permutation};
use crate::square::is_square;

/// Default size cap for the exhaustive counts (n! permutations are visited).
pub const DEFAULT_COUNT_CAP: usize = 10;

// Runs `tally` over all permutations of size n, parallelized over the
// (first, second) letter prefix; completions are generated in lexicographic
// order of the remaining letters.
fn sum_over_permutations<F>(n: usize, tally: F) -> u64
where
    F: Fn(&Permutation) -> u64 + Sync,
{
    if n == 0 {
        return tally(&Permutation::empty());
    }
    if n == 1 {
        return tally(&Permutation::identity(1));
    }
    let prefixes: Vec<(u32, u32)> = (1..=n as u32)
        .flat_map(|a| (1..=n as u32).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    prefixes
        .into_par_iter()
        .map(|(a, b)| {
            let rest: Vec<u32> = (1..=n as u32).filter(|&v| v != a && v != b).collect();
            let mut acc = 0u64;
            for tail in rest.iter().copied().permutations(rest.len()) {
                let mut letters = Vec::with_capacity(n);
                letters.push(a);
                letters.push(b);
                letters.extend(tail);
                let pi = Permutation::from_letters(letters).expect("tiled values");
                acc += tally(&pi);
            }
            acc
        })
        .sum()
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::SizeLimit { size: n, cap })
    } else {
        Ok(())
    }
}

/// Number of square permutations of size `n`.
pub fn count_squares(n: usize) -> Result<u64> {
    count_squares_capped(n, DEFAULT_COUNT_CAP)
}

pub fn count_squares_capped(n: usize, cap: usize) -> Result<u64> {
    check_cap(n, cap)?;
    if !n.is_multiple_of(2) {
        return Ok(0);
    }
    Ok(sum_over_permutations(n, |pi| {
        u64::from(is_square(pi).is_some())
    }))
}

/// Number of square permutations of size `n` avoiding every given pattern.
pub fn count_squares_avoiding(n: usize, patterns: &[Permutation]) -> Result<u64> {
    count_squares_avoiding_capped(n, patterns, DEFAULT_COUNT_CAP)
}

pub fn count_squares_avoiding_capped(
    n: usize,
    patterns: &[Permutation],
    cap: usize,
) -> Result<u64> {
    check_cap(n, cap)?;
    if !n.is_multiple_of(2) {
        return Ok(0);
    }
    Ok(sum_over_permutations(n, |pi| {
        u64::from(avoids(pi, patterns) && is_square(pi).is_some())
    }))
}

/// Number of symmetry classes of square permutations of size `n`, under the
/// group generated by mirror, complement, and inverse. Squareness is constant
/// on each class, so classes are counted via their lexicographically least
/// member.
pub fn count_square_classes(n: usize) -> Result<u64> {
    count_square_classes_capped(n, DEFAULT_COUNT_CAP)
}

pub fn count_square_classes_capped(n: usize, cap: usize) -> Result<u64> {
    check_cap(n, cap)?;
    if !n.is_multiple_of(2) {
        return Ok(0);
    }
    Ok(sum_over_permutations(n, |pi| {
        u64::from(pi.symmetry_canonical() == *pi && is_square(pi).is_some())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn square_counts() {
        assert_eq!(count_squares(0).unwrap(), 1);
        assert_eq!(count_squares(1).unwrap(), 0);
        assert_eq!(count_squares(2).unwrap(), 2);
        assert_eq!(count_squares(3).unwrap(), 0);
        assert_eq!(count_squares(4).unwrap(), 20);
        assert_eq!(count_squares(6).unwrap(), 504);
    }

    #[test]
    fn avoiding_counts() {
        assert_eq!(
            count_squares_avoiding(6, &[perm("123")]).unwrap(),
            118
        );
        assert_eq!(count_squares_avoiding(6, &[perm("132")]).unwrap(), 84);
        // no patterns: same as the plain count
        assert_eq!(count_squares_avoiding(4, &[]).unwrap(), 20);
    }

    #[test]
    fn class_counts() {
        assert_eq!(count_square_classes(2).unwrap(), 1);
        assert_eq!(count_square_classes(4).unwrap(), 6);
        assert_eq!(count_square_classes(6).unwrap(), 81);
    }

    #[test]
    fn cap_applies() {
        assert!(matches!(
            count_squares_capped(14, 12),
            Err(Error::SizeLimit { size: 14, cap: 12 })
        ));
    }
}
