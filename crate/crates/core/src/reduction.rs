//! Gadget construction reducing pattern involvement to square recognition,
//! with structural validation and forward-direction witness extraction.
//!
//! Given an instance (pi, sigma), [`build_mu`] assembles a permutation `mu`
//! from twelve blocks: four pairs of large monotone guard runs, a framed copy
//! of the pattern, a framed copy of the text, and plain copies of both. The
//! guard sizes N1 > N2 > N3 > N4 are odd and each dominates everything to its
//! right, so any equal split of `mu` is forced to align the blocks; `mu` is a
//! square exactly when `sigma` occurs in `pi`, and an occurrence yields an
//! explicit witness ([`forward_witness`]).

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{standardize, Permutation, PositionSet};
use crate::square::{Side, SquareWitness};

/// Default cap on the size of the constructed permutation.
pub const DEFAULT_MU_CAP: usize = 1_000_000;

/// A pattern-involvement instance: does `sigma` occur in `pi`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInstance {
    pi: Permutation,
    sigma: Permutation,
}

/// The twelve blocks of the constructed permutation, in position order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetBlock {
    Guard1A,
    Guard2A,
    Guard1B,
    Guard3A,
    PatternFramed,
    Guard4A,
    Guard2B,
    Guard3B,
    TextFramed,
    Guard4B,
    TextPlain,
    PatternPlain,
}

/// Monotone shape of a guard block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Increasing,
    Decreasing,
    Pattern,
}

/// Extent of one block: inclusive one-based position range and value range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSpan {
    pub block: GadgetBlock,
    pub shape: Shape,
    pub first_pos: usize,
    pub last_pos: usize,
    pub low_value: u32,
    pub high_value: u32,
}

/// Full layout of a constructed permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionLayout {
    pub text_size: usize,
    pub pattern_size: usize,
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    pub n4: u64,
    pub blocks: Vec<BlockSpan>,
}

/// Diagnostics from [`validate_layout`].
#[derive(Debug, Clone, Default)]
pub struct LayoutReport {
    pub problems: Vec<String>,
}

impl LayoutReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

impl GadgetBlock {
    pub const ALL: [GadgetBlock; 12] = [
        GadgetBlock::Guard1A,
        GadgetBlock::Guard2A,
        GadgetBlock::Guard1B,
        GadgetBlock::Guard3A,
        GadgetBlock::PatternFramed,
        GadgetBlock::Guard4A,
        GadgetBlock::Guard2B,
        GadgetBlock::Guard3B,
        GadgetBlock::TextFramed,
        GadgetBlock::Guard4B,
        GadgetBlock::TextPlain,
        GadgetBlock::PatternPlain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GadgetBlock::Guard1A => "guard1a",
            GadgetBlock::Guard2A => "guard2a",
            GadgetBlock::Guard1B => "guard1b",
            GadgetBlock::Guard3A => "guard3a",
            GadgetBlock::PatternFramed => "pattern-framed",
            GadgetBlock::Guard4A => "guard4a",
            GadgetBlock::Guard2B => "guard2b",
            GadgetBlock::Guard3B => "guard3b",
            GadgetBlock::TextFramed => "text-framed",
            GadgetBlock::Guard4B => "guard4b",
            GadgetBlock::TextPlain => "text-plain",
            GadgetBlock::PatternPlain => "pattern-plain",
        }
    }
}

impl fmt::Display for GadgetBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl ReductionInstance {
    pub fn new(pi: Permutation, sigma: Permutation) -> Result<Self> {
        if pi.is_empty() || sigma.is_empty() {
            return Err(Error::Parse(
                "reduction instance needs nonempty text and pattern".into(),
            ));
        }
        Ok(Self { pi, sigma })
    }

    pub fn text(&self) -> &Permutation {
        &self.pi
    }

    pub fn pattern(&self) -> &Permutation {
        &self.sigma
    }

    /// The guard sizes (N1, N2, N3, N4).
    pub fn guard_sizes(&self) -> (u64, u64, u64, u64) {
        let n = self.pi.size() as u64;
        let k = self.sigma.size() as u64;
        (
            1000 * n + 1000 * k + 1325,
            100 * n + 100 * k + 225,
            20 * n + 20 * k + 45,
            4 * n + 4 * k + 9,
        )
    }

    /// The size of the constructed permutation:
    /// `2(N1 + N2 + N3 + N4) + 2n + 2k + 4`.
    pub fn mu_size(&self) -> u64 {
        let (n1, n2, n3, n4) = self.guard_sizes();
        2 * (n1 + n2 + n3 + n4)
            + 2 * self.pi.size() as u64
            + 2 * self.sigma.size() as u64
            + 4
    }
}

/// Constructs the reduction permutation and its layout.
pub fn build_mu(inst: &ReductionInstance) -> Result<(Permutation, ReductionLayout)> {
    build_mu_capped(inst, DEFAULT_MU_CAP)
}

pub fn build_mu_capped(
    inst: &ReductionInstance,
    cap: usize,
) -> Result<(Permutation, ReductionLayout)> {
    let total = inst.mu_size();
    if total > cap as u64 {
        return Err(Error::SizeLimit {
            size: total as usize,
            cap,
        });
    }
    let n = inst.pi.size() as u64;
    let k = inst.sigma.size() as u64;
    let (n1, n2, n3, n4) = inst.guard_sizes();

    let inc = |len: u64, shift: u64| (1..=len).map(move |v| (v + shift) as u32);
    let dec = |len: u64, shift: u64| (1..=len).rev().map(move |v| (v + shift) as u32);
    let framed = |p: &Permutation, shift: u64| {
        let m = p.size() as u64;
        std::iter::once((m + 1 + shift) as u32)
            .chain(p.letters().iter().map(move |&v| (v as u64 + shift) as u32))
            .chain(std::iter::once((m + 2 + shift) as u32))
            .collect::<Vec<u32>>()
    };
    let plain = |p: &Permutation, shift: u64| {
        p.letters()
            .iter()
            .map(move |&v| (v as u64 + shift) as u32)
            .collect::<Vec<u32>>()
    };

    let base = 2 * n + 2 * k + 4;
    let pieces: Vec<(GadgetBlock, Shape, Vec<u32>)> = vec![
        (
            GadgetBlock::Guard1A,
            Shape::Increasing,
            inc(n1, 2 * n2 + 2 * n3 + 2 * n4 + base).collect(),
        ),
        (GadgetBlock::Guard2A, Shape::Decreasing, dec(n2, n2).collect()),
        (
            GadgetBlock::Guard1B,
            Shape::Increasing,
            inc(n1, n1 + 2 * n2 + 2 * n3 + 2 * n4 + base).collect(),
        ),
        (
            GadgetBlock::Guard3A,
            Shape::Increasing,
            inc(n3, 2 * n2 + 2 * n4 + base).collect(),
        ),
        (
            GadgetBlock::PatternFramed,
            Shape::Pattern,
            framed(&inst.sigma, 2 * n2 + 2 * n + k + 2),
        ),
        (
            GadgetBlock::Guard4A,
            Shape::Decreasing,
            dec(n4, 2 * n2 + n4 + base).collect(),
        ),
        (GadgetBlock::Guard2B, Shape::Decreasing, dec(n2, 0).collect()),
        (
            GadgetBlock::Guard3B,
            Shape::Increasing,
            inc(n3, 2 * n2 + n3 + 2 * n4 + base).collect(),
        ),
        (
            GadgetBlock::TextFramed,
            Shape::Pattern,
            framed(&inst.pi, 2 * n2 + n + k),
        ),
        (
            GadgetBlock::Guard4B,
            Shape::Decreasing,
            dec(n4, 2 * n2 + base).collect(),
        ),
        (GadgetBlock::TextPlain, Shape::Pattern, plain(&inst.pi, 2 * n2 + k)),
        (GadgetBlock::PatternPlain, Shape::Pattern, plain(&inst.sigma, 2 * n2)),
    ];

    let mut letters = Vec::with_capacity(total as usize);
    let mut blocks = Vec::with_capacity(pieces.len());
    for (block, shape, piece) in pieces {
        let first_pos = letters.len() + 1;
        let low_value = *piece.iter().min().expect("nonempty block");
        let high_value = *piece.iter().max().expect("nonempty block");
        letters.extend_from_slice(&piece);
        blocks.push(BlockSpan {
            block,
            shape,
            first_pos,
            last_pos: letters.len(),
            low_value,
            high_value,
        });
    }
    let mu = Permutation::from_letters(letters)?;
    debug_assert_eq!(mu.size() as u64, total);
    Ok((
        mu,
        ReductionLayout {
            text_size: inst.pi.size(),
            pattern_size: inst.sigma.size(),
            n1,
            n2,
            n3,
            n4,
            blocks,
        },
    ))
}

impl ReductionLayout {
    pub fn span(&self, block: GadgetBlock) -> &BlockSpan {
        self.blocks
            .iter()
            .find(|s| s.block == block)
            .expect("every block present")
    }
}

/// Extracts a square witness of `mu` from an occurrence of the pattern in the
/// text.
///
/// Copy A takes the A-side guards, the framed pattern, the text's inner
/// non-occurrence letters, and the plain text's occurrence letters; copy B is
/// the complement. The order-isomorphism of the copies is checked before
/// returning.
pub fn forward_witness(
    inst: &ReductionInstance,
    occurrence: &PositionSet,
    mu: &Permutation,
    layout: &ReductionLayout,
) -> Result<SquareWitness> {
    let occ_word = crate::perm::subword(inst.pi.letters(), occurrence)
        .map_err(|e| Error::InvalidOccurrence(e.to_string()))?;
    if standardize(&occ_word)? != inst.sigma {
        return Err(Error::InvalidOccurrence(format!(
            "positions {occurrence} are not an occurrence of the pattern"
        )));
    }
    let mut coloring = vec![Side::B; mu.size()];
    let mut color_span = |span: &BlockSpan| {
        for p in span.first_pos..=span.last_pos {
            coloring[p - 1] = Side::A;
        }
    };
    for block in [
        GadgetBlock::Guard1A,
        GadgetBlock::Guard2A,
        GadgetBlock::Guard3A,
        GadgetBlock::PatternFramed,
        GadgetBlock::Guard4A,
    ] {
        color_span(layout.span(block));
    }
    let in_occurrence = {
        let mut mask = vec![false; inst.pi.size() + 1];
        for &p in occurrence.positions() {
            mask[p] = true;
        }
        mask
    };
    let framed_text = layout.span(GadgetBlock::TextFramed);
    for (i, p) in (framed_text.first_pos + 1..framed_text.last_pos).enumerate() {
        if !in_occurrence[i + 1] {
            coloring[p - 1] = Side::A;
        }
    }
    let plain_text = layout.span(GadgetBlock::TextPlain);
    for (i, p) in (plain_text.first_pos..=plain_text.last_pos).enumerate() {
        if in_occurrence[i + 1] {
            coloring[p - 1] = Side::A;
        }
    }
    let witness = SquareWitness::new(coloring)?;
    witness
        .validate(mu)
        .map_err(|_| Error::WitnessCheckFailed)?;
    Ok(witness)
}

/// Structural validation of a constructed permutation against its layout:
/// guard parity and dominance, tiling of positions and values, block
/// monotonicity, and cross-consistency of the pattern/text copies.
pub fn validate_layout(mu: &Permutation, layout: &ReductionLayout) -> LayoutReport {
    let mut report = LayoutReport::default();
    fn check(problems: &mut Vec<String>, cond: bool, msg: String) {
        if !cond {
            problems.push(msg);
        }
    }
    macro_rules! flag {
        ($cond:expr, $msg:expr $(,)?) => {
            check(&mut report.problems, $cond, $msg)
        };
    }

    let n = layout.text_size as u64;
    let k = layout.pattern_size as u64;
    let guards = [layout.n1, layout.n2, layout.n3, layout.n4];
    for (i, &g) in guards.iter().enumerate() {
        flag!(g % 2 == 1, format!("N{} = {g} is even", i + 1));
        let tail: u64 = guards[i + 1..].iter().map(|&x| 2 * x).sum();
        flag!(
            g > tail + 2 * n + 2 * k + k,
            format!("N{} = {g} does not dominate its tail", i + 1),
        );
    }
    flag!(
        layout.n1 == 1000 * n + 1000 * k + 1325
            && layout.n2 == 100 * n + 100 * k + 225
            && layout.n3 == 20 * n + 20 * k + 45
            && layout.n4 == 4 * n + 4 * k + 9,
        "guard sizes do not match the instance dimensions".into(),
    );
    let expected_size = 2 * guards.iter().sum::<u64>() + 2 * n + 2 * k + 4;
    flag!(
        mu.size() as u64 == expected_size,
        format!("size {} differs from expected {expected_size}", mu.size()),
    );

    // positions tile [|mu|] in order
    let mut next = 1usize;
    for span in &layout.blocks {
        flag!(
            span.first_pos == next && span.last_pos >= span.first_pos,
            format!("{} does not start at position {next}", span.block),
        );
        next = span.last_pos + 1;
    }
    flag!(
        next == mu.size() + 1,
        "blocks do not tile the position range".into(),
    );

    // value ranges are exact and monotone blocks are monotone
    for span in &layout.blocks {
        if span.last_pos > mu.size() || span.first_pos == 0 {
            report
                .problems
                .push(format!("{} has out-of-range positions", span.block));
            continue;
        }
        let letters: Vec<u32> = (span.first_pos..=span.last_pos)
            .map(|p| mu.at(p))
            .collect();
        let lo = *letters.iter().min().unwrap();
        let hi = *letters.iter().max().unwrap();
        flag!(
            lo == span.low_value && hi == span.high_value,
            format!("{} letters leave the recorded value band", span.block),
        );
        flag!(
            hi as u64 - lo as u64 + 1 == letters.len() as u64,
            format!("{} value band is not contiguous", span.block),
        );
        match span.shape {
            Shape::Increasing => flag!(
                letters.windows(2).all(|w| w[0] < w[1]),
                format!("{} is not increasing", span.block),
            ),
            Shape::Decreasing => flag!(
                letters.windows(2).all(|w| w[0] > w[1]),
                format!("{} is not decreasing", span.block),
            ),
            Shape::Pattern => {}
        }
    }

    // relative value ordering of the bands, lowest first
    let band_order = [
        GadgetBlock::Guard2B,
        GadgetBlock::Guard2A,
        GadgetBlock::PatternPlain,
        GadgetBlock::TextPlain,
        GadgetBlock::TextFramed,
        GadgetBlock::PatternFramed,
        GadgetBlock::Guard4B,
        GadgetBlock::Guard4A,
        GadgetBlock::Guard3A,
        GadgetBlock::Guard3B,
        GadgetBlock::Guard1A,
        GadgetBlock::Guard1B,
    ];
    for w in band_order.windows(2) {
        let (lo, hi) = (layout.span(w[0]), layout.span(w[1]));
        flag!(
            lo.high_value < hi.low_value,
            format!("{} band is not below {} band", w[0], w[1]),
        );
    }

    // the framed and plain copies must carry the same patterns
    let inner = |b: GadgetBlock| -> Vec<u32> {
        let span = layout.span(b);
        (span.first_pos + 1..span.last_pos).map(|p| mu.at(p)).collect()
    };
    let whole = |b: GadgetBlock| -> Vec<u32> {
        let span = layout.span(b);
        (span.first_pos..=span.last_pos).map(|p| mu.at(p)).collect()
    };
    for (framed, plain, label) in [
        (GadgetBlock::PatternFramed, GadgetBlock::PatternPlain, "pattern"),
        (GadgetBlock::TextFramed, GadgetBlock::TextPlain, "text"),
    ] {
        let f = whole(framed);
        let fi = inner(framed);
        let p = whole(plain);
        match (standardize(&fi), standardize(&p)) {
            (Ok(a), Ok(b)) => flag!(a == b, format!("{label} copies disagree")),
            _ => report.problems.push(format!("{label} letters repeat")),
        }
        let span = layout.span(framed);
        flag!(
            f.first() == Some(&(span.high_value - 1)) && f.last() == Some(&span.high_value),
            format!("{label} frame letters are misplaced"),
        );
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::find_occurrence;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn inst(pi: &str, sigma: &str) -> ReductionInstance {
        ReductionInstance::new(perm(pi), perm(sigma)).unwrap()
    }

    #[test]
    fn guard_sizes_and_mu_size() {
        let i = inst("1", "1");
        assert_eq!(i.guard_sizes(), (3325, 425, 85, 17));
        assert_eq!(i.mu_size(), 7712);
        let (mu, layout) = build_mu(&i).unwrap();
        assert_eq!(mu.size(), 7712);
        assert_eq!(layout.blocks.len(), 12);
    }

    #[test]
    fn pattern_plain_placement() {
        let i = inst("2 1", "1");
        let (mu, layout) = build_mu(&i).unwrap();
        let span = layout.span(GadgetBlock::PatternPlain);
        assert_eq!(span.last_pos, mu.size());
        assert_eq!(span.first_pos, mu.size());
        // value is 2*N2 + 1 with N2 = 525
        assert_eq!(mu.at(mu.size()), 1051);
    }

    #[test]
    fn mu_is_valid_and_layout_checks() {
        for (pi, sigma) in [("1", "1"), ("2 1", "1"), ("2 4 1 3", "2 1"), ("3 1 2", "1 2")] {
            let i = inst(pi, sigma);
            let (mu, layout) = build_mu(&i).unwrap();
            let report = validate_layout(&mu, &layout);
            assert!(report.is_valid(), "{pi}/{sigma}: {:?}", report.problems);
        }
    }

    #[test]
    fn corrupted_mu_is_rejected() {
        let i = inst("2 1", "1");
        let (mu, layout) = build_mu(&i).unwrap();
        let mut letters = mu.letters().to_vec();
        letters.swap(0, mu.size() - 1);
        let bad = Permutation::from_letters(letters).unwrap();
        assert!(!validate_layout(&bad, &layout).is_valid());

        let mut bad_layout = layout.clone();
        bad_layout.n1 -= 1;
        assert!(!validate_layout(&mu, &bad_layout).is_valid());
    }

    #[test]
    fn forward_witness_examples() {
        for (pi, sigma) in [("1", "1"), ("1 2", "1"), ("2 4 1 3", "2 1"), ("3 1 4 2 5", "2 1 3")] {
            let i = inst(pi, sigma);
            let occ = find_occurrence(i.pattern(), i.text()).unwrap();
            let (mu, layout) = build_mu(&i).unwrap();
            let w = forward_witness(&i, &occ, &mu, &layout).unwrap();
            w.validate(&mu).unwrap();
        }
    }

    #[test]
    fn invalid_occurrence_rejected() {
        let i = inst("1 2", "2 1");
        let (mu, layout) = build_mu(&i).unwrap();
        let not_occ = PositionSet::new(vec![1, 2], 2).unwrap();
        assert!(matches!(
            forward_witness(&i, &not_occ, &mu, &layout),
            Err(Error::InvalidOccurrence(_))
        ));
    }

    #[test]
    fn size_cap() {
        let i = inst("1", "1");
        assert!(matches!(
            build_mu_capped(&i, 100),
            Err(Error::SizeLimit { .. })
        ));
    }
}
