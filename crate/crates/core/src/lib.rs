//! Shuffle algebra on permutations: the unshuffling coproduct, square
//! (shuffle of a permutation with itself) recognition with witnesses, a
//! bijection between binary words and (213,231)-avoiding permutations,
//! hardness-reduction gadgets, and exhaustive counting utilities.

pub mod algebra;
pub mod count;
pub mod error;
pub mod perm;
pub mod reduction;
pub mod square;
pub mod words;

pub use algebra::{coefficient, shuffle, unshuffle, Expansion, TensorExpansion};
pub use count::{count_square_classes, count_squares, count_squares_avoiding};
pub use error::{Error, Result};
pub use perm::{avoids, find_occurrence, standardize, Permutation, PositionSet};
pub use reduction::{build_mu, forward_witness, validate_layout, ReductionInstance, ReductionLayout};
pub use square::{
    check_p1, check_p2, is_square, is_square_via_matching, p1_p2_matchings, square_roots,
    OrientedMatching, Side, SquareWitness,
};
pub use words::{bin_to_perm, count_square_words, is_square_word, perm_to_bin, BinaryWord};
