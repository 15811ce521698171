//! Command-line front end: stable text I/O over every library operation.
//!
//! Exit codes: 0 on success, 1 on domain errors (odd sizes, images, failed
//! checks), 2 on usage errors.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use permshuffle::algebra::{
    coefficient, shuffle_capped, unshuffle_capped, DEFAULT_SHUFFLE_CAP, DEFAULT_UNSHUFFLE_CAP,
};
use permshuffle::count::{
    count_square_classes_capped, count_squares_avoiding_capped, count_squares_capped,
    DEFAULT_COUNT_CAP,
};
use permshuffle::error::Error;
use permshuffle::perm::{find_occurrence, parse_word, standardize, Permutation};
use permshuffle::reduction::{
    build_mu_capped, forward_witness, validate_layout, ReductionInstance, DEFAULT_MU_CAP,
};
use permshuffle::square::{
    check_p1, check_p2, is_square, is_square_via_matching, matching_to_witness, square_roots,
    OrientedMatching,
};
use permshuffle::words::{
    bin_to_perm, count_square_words_capped, is_square_word, perm_to_bin, BinaryWord,
    DEFAULT_WORD_COUNT_CAP,
};

#[derive(Parser)]
#[command(name = "permshuffle", version, about = "Shuffle algebra on permutations", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    /// Depth-first two-coloring of positions.
    Direct,
    /// Oriented perfect matching search (P1 and P2).
    Matching,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountKind {
    Squares,
    SquareWords,
    Classes,
}

#[derive(Args)]
struct ThreadsOpt {
    /// Worker threads (default: available cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Standardize an integer word into a permutation.
    Std { word: String },
    /// Expand the shuffle product of two permutations.
    Shuffle {
        sigma: String,
        nu: String,
        /// Cap on the combined input size.
        #[arg(long, default_value_t = DEFAULT_SHUFFLE_CAP)]
        max_size: usize,
    },
    /// Expand the unshuffling coproduct of a permutation.
    Unshuffle {
        pi: String,
        /// Cap on the input size (2^n subsets are enumerated).
        #[arg(long, default_value_t = DEFAULT_UNSHUFFLE_CAP)]
        max_size: usize,
    },
    /// Multiplicity of a tensor in the coproduct of a permutation.
    Coeff {
        pi: String,
        sigma: String,
        nu: String,
    },
    /// Decide whether a permutation is a square.
    IsSquare {
        pi: String,
        /// Print the witness coloring when the permutation is a square.
        #[arg(long)]
        witness: bool,
        #[arg(long, value_enum, default_value_t = Engine::Direct)]
        engine: Engine,
    },
    /// List all square roots of a permutation.
    Roots { pi: String },
    /// Check properties P1 and P2 of an oriented matching on a permutation.
    MatchCheck {
        pi: String,
        /// Arcs as comma-separated source>target pairs, e.g. "1>3,2>4".
        #[arg(long)]
        arcs: String,
    },
    /// Map a binary word to its permutation.
    B2p { word: String },
    /// Map a (213,231)-avoiding even-size permutation back to a binary word.
    P2b { pi: String },
    /// Decide whether a binary word is a shuffle square.
    IsSquareWord { word: String },
    /// Count squares of a given size.
    Count {
        kind: CountKind,
        #[arg(long)]
        size: usize,
        /// Restrict to permutations avoiding this pattern (repeatable).
        #[arg(long)]
        avoid: Vec<String>,
        #[command(flatten)]
        threads: ThreadsOpt,
        /// Size cap for the enumeration.
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Build the reduction permutation for a pattern-involvement instance.
    Reduce {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        text: String,
        /// Find an occurrence and check the forward witness construction.
        #[arg(long)]
        verify_forward: bool,
        /// Print the block layout as tab-separated lines.
        #[arg(long)]
        layout: bool,
        /// Cap on the size of the constructed permutation.
        #[arg(long, default_value_t = DEFAULT_MU_CAP)]
        max_size: usize,
    },
}

fn parse_perm(s: &str) -> Result<Permutation, Error> {
    s.parse()
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Std { word } => {
            println!("{}", standardize(&parse_word(&word)?)?);
        }
        Command::Shuffle {
            sigma,
            nu,
            max_size,
        } => {
            let e = shuffle_capped(&parse_perm(&sigma)?, &parse_perm(&nu)?, max_size)?;
            print!("{e}");
        }
        Command::Unshuffle { pi, max_size } => {
            let e = unshuffle_capped(&parse_perm(&pi)?, max_size)?;
            print!("{e}");
        }
        Command::Coeff { pi, sigma, nu } => {
            println!(
                "{}",
                coefficient(&parse_perm(&pi)?, &parse_perm(&sigma)?, &parse_perm(&nu)?)
            );
        }
        Command::IsSquare {
            pi,
            witness,
            engine,
        } => {
            let pi = parse_perm(&pi)?;
            let found = match engine {
                Engine::Direct => is_square(&pi),
                Engine::Matching => is_square_via_matching(&pi)
                    .map(|m| matching_to_witness(&pi, &m).expect("engine matchings are valid")),
            };
            match found {
                Some(w) => {
                    println!("true");
                    if witness {
                        println!("{w}");
                    }
                }
                None => println!("false"),
            }
        }
        Command::Roots { pi } => {
            for root in square_roots(&parse_perm(&pi)?)? {
                println!("{root}");
            }
        }
        Command::MatchCheck { pi, arcs } => {
            let pi = parse_perm(&pi)?;
            let m = OrientedMatching::parse(&arcs, pi.size())?;
            println!("P1\t{}", check_p1(&pi, &m)?);
            println!("P2\t{}", check_p2(&pi, &m)?);
        }
        Command::B2p { word } => {
            println!("{}", bin_to_perm(&word.parse::<BinaryWord>()?));
        }
        Command::P2b { pi } => {
            println!("{}", perm_to_bin(&parse_perm(&pi)?)?);
        }
        Command::IsSquareWord { word } => {
            match is_square_word(&word.parse::<BinaryWord>()?) {
                Some(copy) => {
                    println!("true");
                    println!("{copy}");
                }
                None => println!("false"),
            }
        }
        Command::Count {
            kind,
            size,
            avoid,
            threads,
            max_size,
        } => {
            if let Some(t) = threads.threads {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build_global()
                    .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
            }
            let patterns: Result<Vec<Permutation>, Error> =
                avoid.iter().map(|s| parse_perm(s)).collect();
            let patterns = patterns?;
            if kind != CountKind::Squares && !patterns.is_empty() {
                return Err(Error::Parse(
                    "--avoid only applies to `count squares`".into(),
                ));
            }
            let start = Instant::now();
            let (filter, count) = match kind {
                CountKind::Squares if patterns.is_empty() => (
                    "squares".to_string(),
                    count_squares_capped(size, max_size.unwrap_or(DEFAULT_COUNT_CAP))?,
                ),
                CountKind::Squares => (
                    format!(
                        "squares avoiding {}",
                        patterns
                            .iter()
                            .map(|p| p.to_string())
                            .collect::<Vec<_>>()
                            .join("; ")
                    ),
                    count_squares_avoiding_capped(
                        size,
                        &patterns,
                        max_size.unwrap_or(DEFAULT_COUNT_CAP),
                    )?,
                ),
                CountKind::SquareWords => (
                    "square-words".to_string(),
                    count_square_words_capped(size, max_size.unwrap_or(DEFAULT_WORD_COUNT_CAP))?,
                ),
                CountKind::Classes => (
                    "classes".to_string(),
                    count_square_classes_capped(size, max_size.unwrap_or(DEFAULT_COUNT_CAP))?,
                ),
            };
            println!(
                "{size}\t{filter}\t{count}\t{:.3}",
                start.elapsed().as_secs_f64()
            );
        }
        Command::Reduce {
            pattern,
            text,
            verify_forward,
            layout,
            max_size,
        } => {
            let inst = ReductionInstance::new(parse_perm(&text)?, parse_perm(&pattern)?)?;
            let (mu, lay) = build_mu_capped(&inst, max_size)?;
            println!("{mu}");
            if layout {
                for span in &lay.blocks {
                    println!(
                        "{}\t{}..{}\t{}..{}",
                        span.block, span.first_pos, span.last_pos, span.low_value, span.high_value
                    );
                }
            }
            if verify_forward {
                let report = validate_layout(&mu, &lay);
                if !report.is_valid() {
                    return Err(Error::Parse(format!(
                        "layout validation failed: {}",
                        report.problems.join("; ")
                    )));
                }
                let occ = find_occurrence(inst.pattern(), inst.text()).ok_or_else(|| {
                    Error::InvalidOccurrence("pattern does not occur in the text".into())
                })?;
                forward_witness(&inst, &occ, &mu, &lay)?;
                eprintln!("forward witness verified");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // Die quietly when the consumer closes the pipe instead of panicking
    // mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
