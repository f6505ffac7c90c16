use std::path::PathBuf;

use crate::diagram::Site;
use crate::sequence::Mode;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty sign sequence")]
    Empty,

    #[error("invalid character {found:?} at position {position} (expected '+' or '-')")]
    BadChar { position: usize, found: char },

    #[error(
        "not a valid {mode} sequence: length {len} has {plus} plus and {minus} minus \
         entries (expected {expected_plus} and {expected_minus})"
    )]
    Unbalanced {
        mode: Mode,
        len: usize,
        plus: usize,
        minus: usize,
        expected_plus: usize,
        expected_minus: usize,
    },

    #[error("pairing needs at least as many plus as minus entries ({plus} < {minus})")]
    TooManyMinus { plus: usize, minus: usize },

    #[error("site {0} was already cut by an earlier band")]
    StaleSite(Site),

    #[error("site {0} does not exist on a diagram with {1} twist boxes")]
    NoSuchSite(Site, usize),

    #[error("band feet must be distinct, got {0} twice")]
    SameSite(Site),

    #[error("n = {n} exceeds the configured bound {max}")]
    BoundExceeded { n: usize, max: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
