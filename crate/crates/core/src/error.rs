use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplication table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("entry {value} at ({row}, {col}) is out of range for a table of size {size}")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },

    #[error("table is not associative: ({s}*{t})*{u} != {s}*({t}*{u})")]
    NonAssociative { s: usize, t: usize, u: usize },

    #[error("empty semigroup or empty generator set")]
    EmptyGeneratorSet,

    #[error("closure exceeded the size limit of {cap} elements")]
    SizeLimitExceeded { cap: usize },

    #[error("J-class {0} is not regular")]
    NotRegular(usize),

    #[error("element {0} is not an idempotent")]
    NotIdempotent(usize),

    #[error("semigroup is not an inverse semigroup")]
    NotInverse,

    #[error("action is not semisimple")]
    NotSemisimpleAction,

    #[error("semigroup is not Rhodes semisimple ({} nontrivial classes of the GGM congruence)", classes.len())]
    NotRhodesSemisimple { classes: Vec<Vec<usize>> },

    #[error("J-class {0} is not RM-irreducible")]
    NotIrreducible(usize),

    #[error("group of order {order} exceeds the subgroup-enumeration cap {cap}")]
    GroupTooLarge { order: usize, cap: usize },

    #[error("subset is not a subgroup")]
    NotSubgroup,

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("time budget of {secs} s exceeded while searching degree {degree}")]
    Timeout { secs: u64, degree: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
