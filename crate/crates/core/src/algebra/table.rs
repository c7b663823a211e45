use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Element, Generator, Monomial};
use crate::config::SmashConfig;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which generators an algebra contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableKind {
    /// κ-Minkowski coordinates only.
    Configuration,
    /// Momenta and their exponentials only.
    Momentum,
    /// A cross-product phase space.
    PhaseSpace,
}

impl TableKind {
    pub fn has_position(self) -> bool {
        matches!(self, TableKind::Configuration | TableKind::PhaseSpace)
    }

    pub fn has_momentum(self) -> bool {
        matches!(self, TableKind::Momentum | TableKind::PhaseSpace)
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::Configuration => "configuration",
            TableKind::Momentum => "momentum",
            TableKind::PhaseSpace => "phase-space",
        })
    }
}

/// Rewrite rules `g·h → rhs` for every out-of-order pair `g > h`.
///
/// Exponentials are handled without per-exponent rules: they commute with
/// momenta, fold with each other, and pass a position generator as
/// `Exp(r)·x_ν → x_ν·Exp(r) + r·s_ν·Exp(r)` with `s_ν = exp_shift[ν]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationTable {
    kind: TableKind,
    config: SmashConfig,
    rules: BTreeMap<(Generator, Generator), Element>,
    exp_shift: [Scalar; 4],
}

impl RelationTable {
    pub fn builder(kind: TableKind, config: SmashConfig) -> RelationTableBuilder {
        RelationTableBuilder {
            table: RelationTable {
                kind,
                config,
                rules: BTreeMap::new(),
                exp_shift: Default::default(),
            },
        }
    }

    /// κ-Minkowski space with `[x_0, x_k] = sign·(i/κ)·x_k`, `[x_k, x_l] = 0`.
    pub fn kappa_minkowski(sign: i64, config: SmashConfig) -> RelationTable {
        let coeff = Scalar::monomial(sign, 1, 1, 0, 1);
        let mut b = RelationTable::builder(TableKind::Configuration, config);
        for hi in 0..4u8 {
            for lo in 0..hi {
                // x_hi x_lo = x_lo x_hi - [x_lo, x_hi]
                let mut rhs = Element::monomial(Monomial::new([Generator::X(lo), Generator::X(hi)]));
                if lo == 0 {
                    rhs = &rhs - &Element::generator(Generator::X(hi)).scale(&coeff);
                }
                b = b.rule(Generator::X(hi), Generator::X(lo), rhs);
            }
        }
        b.build().expect("kappa-Minkowski table is well formed")
    }

    /// Commutative momentum algebra.
    pub fn momentum(config: SmashConfig) -> RelationTable {
        let mut b = RelationTable::builder(TableKind::Momentum, config);
        for hi in 0..4u8 {
            for lo in 0..hi {
                b = b.rule(
                    Generator::P(hi),
                    Generator::P(lo),
                    Element::monomial(Monomial::new([Generator::P(lo), Generator::P(hi)])),
                );
            }
        }
        b.build().expect("momentum table is well formed")
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn config(&self) -> SmashConfig {
        self.config
    }

    pub fn rules(&self) -> impl Iterator<Item = (&(Generator, Generator), &Element)> {
        self.rules.iter()
    }

    pub fn rule(&self, g: Generator, h: Generator) -> Option<&Element> {
        self.rules.get(&(g, h))
    }

    pub fn exp_shift(&self) -> &[Scalar; 4] {
        &self.exp_shift
    }

    pub fn contains(&self, g: Generator) -> bool {
        (g.is_position() && self.kind.has_position()) || (g.is_momentum() && self.kind.has_momentum())
    }

    /// Right-hand side for an out-of-order adjacent pair `a·b`.
    pub(crate) fn rewrite_pair(&self, a: Generator, b: Generator) -> Result<Element> {
        use Generator::*;
        match (a, b) {
            (Exp(r), Exp(s)) => Ok(Element::monomial(Monomial::new([Exp(r + s)]))),
            (P(_), Exp(_)) => Ok(Element::monomial(Monomial::new([b, a]))),
            (Exp(r), X(nu)) => {
                let swapped = Element::monomial(Monomial::new([b, a]));
                let q = BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()));
                let shift = Element::term(Monomial::new([a]), self.exp_shift[nu as usize].scale(&q));
                Ok(&swapped + &shift)
            }
            _ => self.rules.get(&(a, b)).cloned().ok_or(Error::MissingRule(a, b)),
        }
    }

    fn required_pairs(&self) -> Vec<(Generator, Generator)> {
        let gens: Vec<Generator> = Generator::basic().filter(|g| self.contains(*g)).collect();
        let mut out = Vec::new();
        for &g in &gens {
            for &h in &gens {
                if g > h {
                    out.push((g, h));
                }
            }
        }
        out
    }
}

impl fmt::Display for RelationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} table ({})", self.kind, self.config)?;
        for ((g, h), rhs) in &self.rules {
            writeln!(f, "  {g}*{h} -> {rhs}")?;
        }
        if self.kind == TableKind::PhaseSpace {
            for (nu, s) in self.exp_shift.iter().enumerate() {
                writeln!(f, "  E^(r)*x{nu} -> x{nu}*E^(r) + r*({s})*E^(r)")?;
            }
        }
        Ok(())
    }
}

pub struct RelationTableBuilder {
    table: RelationTable,
}

impl RelationTableBuilder {
    pub fn rule(mut self, g: Generator, h: Generator, rhs: Element) -> Self {
        self.table.rules.insert((g, h), rhs);
        self
    }

    pub fn exp_shift(mut self, nu: u8, s: Scalar) -> Self {
        self.table.exp_shift[nu as usize] = s;
        self
    }

    /// Checks completeness, canonical right-hand sides and the termination
    /// measure of every rule.
    pub fn build(self) -> Result<RelationTable> {
        let t = self.table;
        for (g, h) in t.required_pairs() {
            if !t.rules.contains_key(&(g, h)) {
                return Err(Error::InvalidTable(format!("missing rule for {g}*{h}")));
            }
        }
        for ((g, h), rhs) in &t.rules {
            if g <= h {
                return Err(Error::InvalidTable(format!("rule {g}*{h} is not an out-of-order pair")));
            }
            if !t.contains(*g) || !t.contains(*h) {
                return Err(Error::InvalidTable(format!("rule {g}*{h} uses foreign generators")));
            }
            let lhs = Monomial::new([*g, *h]).measure();
            for (m, _) in rhs.terms() {
                if !m.is_canonical() {
                    return Err(Error::InvalidTable(format!("rule {g}*{h}: right side {m} is not canonical")));
                }
                if m.measure() >= lhs {
                    return Err(Error::InvalidTable(format!("rule {g}*{h}: term {m} does not decrease the measure")));
                }
                if m.letters().iter().any(|l| !t.contains(*l)) {
                    return Err(Error::InvalidTable(format!("rule {g}*{h}: term {m} leaves the algebra")));
                }
            }
        }
        if t.kind != TableKind::PhaseSpace && t.exp_shift.iter().any(|s| !s.is_zero()) {
            return Err(Error::InvalidTable("exponential shifts need both sectors".into()));
        }
        Ok(t)
    }
}
