use thiserror::Error;

use crate::algebra::Generator;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generator {0} has no rules in the `{1}` table")]
    UnknownGenerator(Generator, String),

    #[error("no rewrite rule for the pair {0}·{1}")]
    MissingRule(Generator, Generator),

    #[error("normalization exceeded {0} rewrite steps")]
    RewriteLimit(usize),

    #[error("invalid relation table: {0}")]
    InvalidTable(String),

    #[error("element {element} does not live on the {side} side")]
    WrongSide { element: String, side: &'static str },

    #[error("{0} is not a cross pair of one position and one momentum generator")]
    NotCrossPair(String),

    #[error("cross-product construction did not close: {0}")]
    Construction(String),

    #[error("no reference fixture for configuration {0}")]
    MissingFixture(String),

    #[error("fixture {name}: {message}")]
    BadFixture { name: String, message: String },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown symbol `{symbol}` at position {position}")]
    UnknownSymbol { position: usize, symbol: String },

    #[error("invalid value `{value}` for {flag}")]
    InvalidFlag { flag: &'static str, value: String },

    #[error("grid: {0}")]
    InvalidGrid(String),

    #[error("state is not normalized: <psi|psi> = {0}")]
    NotNormalized(f64),

    #[error("exponential overflow: exp({0}) exceeds floating range")]
    Overflow(f64),

    #[error("generator {0} is not represented on the 1+1 grid")]
    Unrepresented(Generator),

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
