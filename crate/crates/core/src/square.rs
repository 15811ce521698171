//! Square recognition: witnesses, square roots, and the oriented-matching
//! characterization as an independent second engine.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::{standardize, Permutation, PositionSet};

/// Which copy a position belongs to in a two-coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// A two-coloring of positions into copies A and B with order-isomorphic
/// subwords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareWitness {
    coloring: Vec<Side>,
}

/// An oriented perfect matching on positions: ordered arcs (source, target)
/// covering every position exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedMatching {
    arcs: Vec<(usize, usize)>,
}

impl SquareWitness {
    /// Builds a witness from a raw coloring; copy counts must be equal.
    pub fn new(coloring: Vec<Side>) -> Result<Self> {
        let a = coloring.iter().filter(|s| **s == Side::A).count();
        if a * 2 != coloring.len() {
            return Err(Error::InvalidWitness(format!(
                "{} A-positions out of {}",
                a,
                coloring.len()
            )));
        }
        Ok(Self { coloring })
    }

    /// Builds a witness from the one-based positions of copy A.
    pub fn from_a_positions(set: &PositionSet, len: usize) -> Result<Self> {
        let mut coloring = vec![Side::B; len];
        for &p in set.positions() {
            if p == 0 || p > len {
                return Err(Error::OutOfRange(p, len));
            }
            coloring[p - 1] = Side::A;
        }
        Self::new(coloring)
    }

    pub fn coloring(&self) -> &[Side] {
        &self.coloring
    }

    pub fn len(&self) -> usize {
        self.coloring.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coloring.is_empty()
    }

    pub fn a_positions(&self) -> PositionSet {
        let ps: Vec<usize> = self
            .coloring
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Side::A)
            .map(|(i, _)| i + 1)
            .collect();
        PositionSet::new(ps, self.coloring.len()).expect("increasing by construction")
    }

    pub fn b_positions(&self) -> PositionSet {
        self.a_positions().complement_in(self.coloring.len())
    }

    /// Checks this witness against `pi`: equal copy sizes and order-isomorphic
    /// subwords.
    pub fn validate(&self, pi: &Permutation) -> Result<()> {
        if self.len() != pi.size() {
            return Err(Error::InvalidWitness(format!(
                "coloring length {} vs permutation size {}",
                self.len(),
                pi.size()
            )));
        }
        let a = crate::perm::subword(pi.letters(), &self.a_positions())?;
        let b = crate::perm::subword(pi.letters(), &self.b_positions())?;
        if standardize(&a)? != standardize(&b)? {
            return Err(Error::InvalidWitness(
                "copies are not order-isomorphic".into(),
            ));
        }
        Ok(())
    }

    /// The standardized copy (the square root this witness certifies).
    pub fn root(&self, pi: &Permutation) -> Result<Permutation> {
        let a = crate::perm::subword(pi.letters(), &self.a_positions())?;
        standardize(&a)
    }
}

impl OrientedMatching {
    /// Builds a matching on `[n]`, checking that it is perfect.
    pub fn new(mut arcs: Vec<(usize, usize)>, n: usize) -> Result<Self> {
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidMatching(format!("odd host size {n}")));
        }
        let mut seen = vec![false; n + 1];
        for &(s, t) in &arcs {
            for p in [s, t] {
                if p == 0 || p > n {
                    return Err(Error::OutOfRange(p, n));
                }
                if std::mem::replace(&mut seen[p], true) {
                    return Err(Error::InvalidMatching(format!(
                        "position {p} used twice"
                    )));
                }
            }
            if s == t {
                return Err(Error::InvalidMatching(format!("loop at {s}")));
            }
        }
        if arcs.len() * 2 != n {
            return Err(Error::InvalidMatching(format!(
                "{} arcs do not cover {n} positions",
                arcs.len()
            )));
        }
        arcs.sort_unstable();
        Ok(Self { arcs })
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }
}

// A pair of arcs is allowed by P1 unless their position spans are nested, or
// they cross with opposite orientations.
fn p1_pair_ok(a: (usize, usize), b: (usize, usize)) -> bool {
    let (l1, r1) = (a.0.min(a.1), a.0.max(a.1));
    let (l2, r2) = (b.0.min(b.1), b.0.max(b.1));
    let nested = (l1 < l2 && r2 < r1) || (l2 < l1 && r1 < r2);
    if nested {
        return false;
    }
    let crossing = (l1 < l2 && l2 < r1 && r1 < r2) || (l2 < l1 && l1 < r2 && r2 < r1);
    if crossing {
        let left_to_right_1 = a.0 < a.1;
        let left_to_right_2 = b.0 < b.1;
        return left_to_right_1 == left_to_right_2;
    }
    true
}

fn p2_pair_ok(pi: &Permutation, a: (usize, usize), b: (usize, usize)) -> bool {
    (pi.at(a.0) < pi.at(b.0)) == (pi.at(a.1) < pi.at(b.1))
}

fn check_bounds(pi: &Permutation, m: &OrientedMatching) -> Result<()> {
    if m.arcs.len() * 2 != pi.size() {
        return Err(Error::InvalidMatching(format!(
            "{} arcs on permutation of size {}",
            m.arcs.len(),
            pi.size()
        )));
    }
    Ok(())
}

/// True iff no pair of arcs forms a forbidden configuration: the four
/// inclusions (in every orientation) or the two opposite-orientation
/// crossings. Same-orientation crossings and disjoint pairs are allowed.
pub fn check_p1(pi: &Permutation, m: &OrientedMatching) -> Result<bool> {
    check_bounds(pi, m)?;
    for (i, &a) in m.arcs.iter().enumerate() {
        for &b in &m.arcs[i + 1..] {
            if !p1_pair_ok(a, b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff for every two arcs, source values and target values are
/// order-consistent.
pub fn check_p2(pi: &Permutation, m: &OrientedMatching) -> Result<bool> {
    check_bounds(pi, m)?;
    for (i, &a) in m.arcs.iter().enumerate() {
        for &b in &m.arcs[i + 1..] {
            if !p2_pair_ok(pi, a, b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// Depth-first two-coloring of positions, left to right. Position 1 is always
// colored A. When the later-filled copy reaches length m, the rank of its
// m-th value within its prefix must match the other copy's.
fn witness_search(pi: &Permutation, collect_all: bool) -> Vec<SquareWitness> {
    let n = pi.size();
    let mut found = Vec::new();
    if !n.is_multiple_of(2) {
        return found;
    }
    if n == 0 {
        found.push(SquareWitness { coloring: vec![] });
        return found;
    }
    let half = n / 2;
    let letters = pi.letters();
    let mut coloring: Vec<Side> = Vec::with_capacity(n);
    let mut a_vals: Vec<u32> = Vec::with_capacity(half);
    let mut b_vals: Vec<u32> = Vec::with_capacity(half);

    fn rank(prefix: &[u32]) -> usize {
        let v = *prefix.last().unwrap();
        prefix.iter().filter(|&&x| x < v).count()
    }

    fn rec(
        letters: &[u32],
        half: usize,
        coloring: &mut Vec<Side>,
        a_vals: &mut Vec<u32>,
        b_vals: &mut Vec<u32>,
        found: &mut Vec<SquareWitness>,
        collect_all: bool,
    ) -> bool {
        let i = coloring.len();
        if i == letters.len() {
            found.push(SquareWitness {
                coloring: coloring.clone(),
            });
            return !collect_all;
        }
        let v = letters[i];
        for side in [Side::A, Side::B] {
            if i == 0 && side == Side::B {
                continue;
            }
            let (cur, other) = match side {
                Side::A => (&mut *a_vals, &mut *b_vals),
                Side::B => (&mut *b_vals, &mut *a_vals),
            };
            if cur.len() == half {
                continue;
            }
            cur.push(v);
            let m = cur.len();
            let ok = other.len() < m || rank(&cur[..m]) == rank(&other[..m]);
            if ok {
                coloring.push(side);
                if rec(letters, half, coloring, a_vals, b_vals, found, collect_all) {
                    return true;
                }
                coloring.pop();
            }
            match side {
                Side::A => a_vals.pop(),
                Side::B => b_vals.pop(),
            };
        }
        false
    }

    rec(
        letters,
        half,
        &mut coloring,
        &mut a_vals,
        &mut b_vals,
        &mut found,
        collect_all,
    );
    found
}

/// Decides whether `pi` is a square; returns the first witness found by the
/// deterministic A-before-B search, or `None`.
pub fn is_square(pi: &Permutation) -> Option<SquareWitness> {
    witness_search(pi, false).into_iter().next()
}

/// All square roots of `pi` (set semantics; multiplicities are recoverable
/// via [`crate::algebra::coefficient`]).
pub fn square_roots(pi: &Permutation) -> Result<BTreeSet<Permutation>> {
    if !pi.size().is_multiple_of(2) {
        return Err(Error::OddSize(pi.size()));
    }
    let mut roots = BTreeSet::new();
    for w in witness_search(pi, true) {
        roots.insert(w.root(pi)?);
    }
    Ok(roots)
}

// Arc search: match the leftmost unmatched position against every unmatched
// partner, smaller target first, pruning on P1/P2 against placed arcs.
fn matching_search(pi: &Permutation, collect_all: bool) -> Vec<OrientedMatching> {
    let n = pi.size();
    let mut found = Vec::new();
    if !n.is_multiple_of(2) {
        return found;
    }
    if n == 0 {
        found.push(OrientedMatching { arcs: vec![] });
        return found;
    }
    let mut matched = vec![false; n + 1];
    let mut arcs: Vec<(usize, usize)> = Vec::with_capacity(n / 2);

    fn rec(
        pi: &Permutation,
        matched: &mut Vec<bool>,
        arcs: &mut Vec<(usize, usize)>,
        found: &mut Vec<OrientedMatching>,
        collect_all: bool,
    ) -> bool {
        let n = pi.size();
        let Some(i) = (1..=n).find(|&p| !matched[p]) else {
            found.push(OrientedMatching::new(arcs.clone(), n).expect("perfect by construction"));
            return !collect_all;
        };
        // Arcs with target i first (smaller target), then targets ascending.
        let candidates: Vec<(usize, usize)> = (i + 1..=n)
            .filter(|&j| !matched[j])
            .map(|j| (j, i))
            .chain((i + 1..=n).filter(|&j| !matched[j]).map(|j| (i, j)))
            .collect();
        for arc in candidates {
            if arcs
                .iter()
                .all(|&prev| p1_pair_ok(prev, arc) && p2_pair_ok(pi, prev, arc))
            {
                matched[arc.0] = true;
                matched[arc.1] = true;
                arcs.push(arc);
                if rec(pi, matched, arcs, found, collect_all) {
                    return true;
                }
                arcs.pop();
                matched[arc.0] = false;
                matched[arc.1] = false;
            }
        }
        false
    }

    rec(pi, &mut matched, &mut arcs, &mut found, collect_all);
    found
}

/// Decides squareness through the matching characterization: returns an
/// oriented perfect matching satisfying P1 and P2 iff one exists.
pub fn is_square_via_matching(pi: &Permutation) -> Option<OrientedMatching> {
    matching_search(pi, false).into_iter().next()
}

/// Enumerates every oriented perfect matching on `pi` satisfying P1 and P2.
pub fn p1_p2_matchings(pi: &Permutation) -> Vec<OrientedMatching> {
    matching_search(pi, true)
}

/// Pairs the i-th A-position (source) with the i-th B-position (target).
pub fn witness_to_matching(pi: &Permutation, w: &SquareWitness) -> Result<OrientedMatching> {
    w.validate(pi)?;
    let arcs: Vec<(usize, usize)> = w
        .a_positions()
        .positions()
        .iter()
        .zip(w.b_positions().positions())
        .map(|(&a, &b)| (a, b))
        .collect();
    OrientedMatching::new(arcs, pi.size())
}

/// Colors sources A and targets B; fails if the resulting coloring is not a
/// valid witness (which cannot happen for a P1 and P2 matching).
pub fn matching_to_witness(pi: &Permutation, m: &OrientedMatching) -> Result<SquareWitness> {
    check_bounds(pi, m)?;
    let mut coloring = vec![Side::B; pi.size()];
    for &(s, _) in &m.arcs {
        coloring[s - 1] = Side::A;
    }
    let w = SquareWitness::new(coloring)?;
    w.validate(pi)?;
    Ok(w)
}

impl fmt::Display for SquareWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.coloring {
            f.write_str(match s {
                Side::A => "A",
                Side::B => "B",
            })?;
        }
        Ok(())
    }
}

impl fmt::Display for OrientedMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(s, t) in &self.arcs {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{s}>{t}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for SquareWitness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coloring: Result<Vec<Side>> = s
            .trim()
            .chars()
            .map(|c| match c {
                'A' => Ok(Side::A),
                'B' => Ok(Side::B),
                other => Err(Error::Parse(format!("bad witness letter {other:?}"))),
            })
            .collect();
        SquareWitness::new(coloring?)
    }
}

impl OrientedMatching {
    /// Parses the `s>t,s>t,...` arc format against a host size `n`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Self::new(vec![], n);
        }
        let arcs: Result<Vec<(usize, usize)>> = s
            .split(',')
            .map(|pair| {
                let (a, b) = pair
                    .split_once('>')
                    .ok_or_else(|| Error::Parse(format!("bad arc {pair:?}")))?;
                let src = a
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad position {a:?}")))?;
                let tgt = b
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad position {b:?}")))?;
                Ok((src, tgt))
            })
            .collect();
        Self::new(arcs?, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn fig_perm() -> Permutation {
        "1 8 3 9 2 7 11 5 12 6 10 4".parse().unwrap()
    }

    fn fig_matching() -> OrientedMatching {
        OrientedMatching::parse("1>3,2>6,4>7,5>8,11>9,12>10", 12).unwrap()
    }

    #[test]
    fn is_square_examples() {
        let w = is_square(&perm("2413")).unwrap();
        w.validate(&perm("2413")).unwrap();
        assert!(is_square(&perm("1432")).is_none());
        let w = is_square(&Permutation::empty()).unwrap();
        assert!(w.is_empty());
        // odd sizes short-circuit
        assert!(is_square(&perm("132")).is_none());
    }

    #[test]
    fn square_roots_examples() {
        let roots = square_roots(&perm("12")).unwrap();
        assert_eq!(roots.into_iter().collect::<Vec<_>>(), vec![perm("1")]);
        assert!(square_roots(&perm("1432")).unwrap().is_empty());
        let roots = square_roots(&perm("1234")).unwrap();
        assert_eq!(roots.into_iter().collect::<Vec<_>>(), vec![perm("12")]);
        assert_eq!(
            square_roots(&perm("132")).unwrap_err(),
            Error::OddSize(3)
        );
    }

    #[test]
    fn p1_examples() {
        assert!(check_p1(&fig_perm(), &fig_matching()).unwrap());
        let single = OrientedMatching::parse("1>2", 2).unwrap();
        assert!(check_p1(&perm("12"), &single).unwrap());
        let crossing = OrientedMatching::parse("3>1,2>4", 4).unwrap();
        assert!(!check_p1(&perm("2143"), &crossing).unwrap());
        // nesting forbidden in any orientation
        let nested = OrientedMatching::parse("1>4,2>3", 4).unwrap();
        assert!(!check_p1(&perm("1234"), &nested).unwrap());
        // same-orientation crossing allowed
        let cross_same = OrientedMatching::parse("1>3,2>4", 4).unwrap();
        assert!(check_p1(&perm("1234"), &cross_same).unwrap());
    }

    #[test]
    fn p2_examples() {
        assert!(check_p2(&fig_perm(), &fig_matching()).unwrap());
        let single = OrientedMatching::parse("2>1", 2).unwrap();
        assert!(check_p2(&perm("21"), &single).unwrap());
        // sources 1 < 3 but targets 4 > 2
        let m = OrientedMatching::parse("1>3,2>4", 4).unwrap();
        assert!(!check_p2(&perm("1342"), &m).unwrap());
    }

    #[test]
    fn matching_engine_examples() {
        let m = is_square_via_matching(&fig_perm()).unwrap();
        assert!(check_p1(&fig_perm(), &m).unwrap());
        assert!(check_p2(&fig_perm(), &m).unwrap());
        assert!(is_square_via_matching(&perm("1432")).is_none());
        let m = is_square_via_matching(&perm("12")).unwrap();
        assert_eq!(m.to_string(), "2>1");
    }

    #[test]
    fn witness_matching_conversions() {
        let pi = fig_perm();
        let set = PositionSet::new(vec![1, 2, 4, 5, 11, 12], 12).unwrap();
        let w = SquareWitness::from_a_positions(&set, 12).unwrap();
        w.validate(&pi).unwrap();
        let m = witness_to_matching(&pi, &w).unwrap();
        assert_eq!(m, fig_matching());
        assert!(check_p1(&pi, &m).unwrap());
        assert!(check_p2(&pi, &m).unwrap());
        let back = matching_to_witness(&pi, &m).unwrap();
        assert_eq!(back, w);

        let w2: SquareWitness = "AB".parse().unwrap();
        let m2 = witness_to_matching(&perm("12"), &w2).unwrap();
        assert_eq!(m2.to_string(), "1>2");
    }

    #[test]
    fn round_trip_on_all_size_4_witnesses() {
        use itertools::Itertools;
        for word in (1..=4u32).permutations(4) {
            let pi = Permutation::from_letters(word).unwrap();
            for w in witness_search(&pi, true) {
                let m = witness_to_matching(&pi, &w).unwrap();
                assert!(check_p1(&pi, &m).unwrap());
                assert!(check_p2(&pi, &m).unwrap());
                assert_eq!(matching_to_witness(&pi, &m).unwrap(), w);
            }
        }
    }

    #[test]
    fn malformed_matchings_rejected() {
        assert!(OrientedMatching::parse("1>1", 2).is_err());
        assert!(OrientedMatching::parse("1>2,2>3", 4).is_err());
        assert!(OrientedMatching::parse("1>2", 4).is_err());
        assert!(OrientedMatching::new(vec![(1, 2)], 3).is_err());
    }

    #[test]
    fn witness_format() {
        let w: SquareWitness = "AABB".parse().unwrap();
        assert_eq!(w.to_string(), "AABB");
        assert!("AAB".parse::<SquareWitness>().is_err());
        assert!("AXBB".parse::<SquareWitness>().is_err());
    }
}
