use std::fmt;

use num_traits::Zero;

use super::Generator;

/// A word in the generators.
///
/// Construction folds adjacent exponentials and drops `Exp(0)`, so the only
/// way a word is non-canonical is an out-of-order adjacent pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<Generator>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(word: impl IntoIterator<Item = Generator>) -> Self {
        let mut out: Vec<Generator> = Vec::new();
        for g in word {
            push_folded(&mut out, g);
        }
        Monomial(out)
    }

    pub fn generator(g: Generator) -> Self {
        Monomial::new([g])
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for g in &other.0 {
            push_folded(&mut out, *g);
        }
        Monomial(out)
    }

    /// Replaces `letters[at..at + 2]` with `middle`.
    pub(crate) fn splice_pair(&self, at: usize, middle: &Monomial) -> Monomial {
        Monomial::new(
            self.0[..at]
                .iter()
                .chain(&middle.0)
                .chain(&self.0[at + 2..])
                .copied(),
        )
    }

    /// Index of the leftmost adjacent pair that is out of canonical order.
    pub fn first_disorder(&self) -> Option<usize> {
        self.0.windows(2).position(|w| out_of_order(w[0], w[1]))
    }

    pub fn is_canonical(&self) -> bool {
        self.first_disorder().is_none()
    }

    /// Number of letter pairs `(i < j)` with `word[i] > word[j]`.
    pub fn inversions(&self) -> usize {
        let mut n = 0;
        for (i, a) in self.0.iter().enumerate() {
            n += self.0[i + 1..].iter().filter(|b| out_of_order(*a, **b)).count();
        }
        n
    }

    /// Count of `P_μ` letters (exponentials excluded).
    pub fn p_degree(&self) -> usize {
        self.0.iter().filter(|g| matches!(g, Generator::P(_))).count()
    }

    /// Termination measure for the rewrite engine.
    pub fn measure(&self) -> (usize, usize) {
        (self.inversions(), self.p_degree())
    }

    pub fn is_position(&self) -> bool {
        self.0.iter().all(Generator::is_position)
    }

    pub fn is_momentum(&self) -> bool {
        self.0.iter().all(Generator::is_momentum)
    }

    /// Removes exponential letters (classical limit of `Exp(θ) → 1`).
    pub fn without_exponentials(&self) -> Monomial {
        Monomial::new(self.0.iter().copied().filter(|g| !matches!(g, Generator::Exp(_))))
    }

    pub fn reversed(&self) -> Monomial {
        Monomial::new(self.0.iter().rev().copied())
    }
}

fn out_of_order(a: Generator, b: Generator) -> bool {
    match (a, b) {
        (Generator::Exp(_), Generator::Exp(_)) => true,
        _ => a > b,
    }
}

fn push_folded(out: &mut Vec<Generator>, g: Generator) {
    if g.is_identity() {
        return;
    }
    if let (Some(Generator::Exp(prev)), Generator::Exp(r)) = (out.last().copied(), g) {
        let sum = prev + r;
        out.pop();
        if !sum.is_zero() {
            out.push(Generator::Exp(sum));
        }
        return;
    }
    out.push(g);
}

impl FromIterator<Generator> for Monomial {
    fn from_iter<T: IntoIterator<Item = Generator>>(iter: T) -> Self {
        Monomial::new(iter)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == g {
                run += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if run > 1 {
                write!(f, "{g}^{run}")?;
            } else {
                write!(f, "{g}")?;
            }
            i += run;
        }
        Ok(())
    }
}
