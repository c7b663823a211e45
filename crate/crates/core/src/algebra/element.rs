use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::{Generator, Monomial};
use crate::scalar::{format_term_magnitude, Scalar};

/// Formal sum of words with exact coefficients.
///
/// Products here are free (concatenation); ordering rewrites need a
/// [`RelationTable`](super::RelationTable), see [`normalize`](super::normalize).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::scalar(Scalar::one())
    }

    pub fn scalar(s: Scalar) -> Self {
        Element::term(Monomial::one(), s)
    }

    pub fn generator(g: Generator) -> Self {
        Element::term(Monomial::generator(g), Scalar::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Element::term(m, Scalar::one())
    }

    pub fn term(m: Monomial, s: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(m, s);
        e
    }

    pub fn add_term(&mut self, m: Monomial, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(c) => {
                *c += &s;
                if c.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, s);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub(crate) fn into_terms(self) -> BTreeMap<Monomial, Scalar> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The value if the element is a pure scalar (or zero).
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    /// Concatenation product.
    pub fn mul_free(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.concat(mb), ca * cb);
            }
        }
        out
    }

    pub fn is_canonical(&self) -> bool {
        self.terms.keys().all(Monomial::is_canonical)
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms.keys().flat_map(|m| m.letters().iter().copied()).collect()
    }

    pub fn is_position(&self) -> bool {
        self.terms.keys().all(Monomial::is_position)
    }

    pub fn is_momentum(&self) -> bool {
        self.terms.keys().all(Monomial::is_momentum)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Monomial::len).max().unwrap_or(0)
    }

    /// `κ → ∞`: drops terms with κ⁻¹ and sends every exponential to 1.
    pub fn classical_limit(&self) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.add_term(m.without_exponentials(), c.classical_limit());
        }
        out
    }
}

impl From<Generator> for Element {
    fn from(g: Generator) -> Self {
        Element::generator(g)
    }
}

impl From<Scalar> for Element {
    fn from(s: Scalar) -> Self {
        Element::scalar(s)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self + &(-rhs)
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

/// Free product; see [`Element::mul_free`].
impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.mul_free(rhs)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let body = match c.as_single() {
                Some((key, q)) => {
                    let sign = if q.is_negative() { "-" } else { "+" };
                    let mag = format_term_magnitude(&key, q, !m.is_empty());
                    let text = match (mag.is_empty(), m.is_empty()) {
                        (true, _) => m.to_string(),
                        (false, true) => mag,
                        (false, false) => format!("{mag}*{m}"),
                    };
                    (sign, text)
                }
                None => {
                    let text = if m.is_empty() { format!("({c})") } else { format!("({c})*{m}") };
                    ("+", text)
                }
            };
            match (n, body.0) {
                (0, "-") => write!(f, "-{}", body.1)?,
                (0, _) => write!(f, "{}", body.1)?,
                (_, s) => write!(f, " {s} {}", body.1)?,
            }
        }
        Ok(())
    }
}
