use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};

/// One letter of a word.
///
/// The derived order `X(0) < … < X(3) < Exp(_) < P(0) < … < P(3)` is the
/// canonical ordering of the normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// Position `x_μ`.
    X(u8),
    /// `Exp(r) = exp(-r·P_0/(κℏ))`, group-like.
    Exp(Rational64),
    /// Momentum `P_μ`.
    P(u8),
}

impl Generator {
    pub fn x(mu: u8) -> Generator {
        assert!(mu < 4, "index out of range");
        Generator::X(mu)
    }

    pub fn p(mu: u8) -> Generator {
        assert!(mu < 4, "index out of range");
        Generator::P(mu)
    }

    /// `E = exp(-P_0/(κℏ))`.
    pub fn e() -> Generator {
        Generator::Exp(Rational64::one())
    }

    pub fn exp(num: i64, den: i64) -> Generator {
        Generator::Exp(Rational64::new(num, den))
    }

    pub fn is_position(&self) -> bool {
        matches!(self, Generator::X(_))
    }

    /// Momenta and their exponentials.
    pub fn is_momentum(&self) -> bool {
        !self.is_position()
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Generator::Exp(r) if r.is_zero())
    }

    pub fn index(&self) -> Option<u8> {
        match self {
            Generator::X(m) | Generator::P(m) => Some(*m),
            Generator::Exp(_) => None,
        }
    }

    /// The eight non-exponential generators.
    pub fn basic() -> impl Iterator<Item = Generator> {
        (0..4).map(Generator::X).chain((0..4).map(Generator::P))
    }
}

pub(crate) fn format_rational(r: &Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::X(m) => write!(f, "x{m}"),
            Generator::P(m) => write!(f, "P{m}"),
            Generator::Exp(r) if r.is_one() => write!(f, "E"),
            Generator::Exp(r) => write!(f, "E^({})", format_rational(r)),
        }
    }
}
