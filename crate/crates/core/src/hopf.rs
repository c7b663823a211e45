//! Coalgebra maps of the translation algebra `P_κ` and the coordinate algebra
//! `X_κ`, their duality pairing, and the four induced actions.
//!
//! `Δ(P_k)` is always of the form `P_k ⊗ Exp(a) + Exp(b) ⊗ P_k` with
//! group-like legs; the basis and the transposition flag only move `(a, b)`.
//! The `X_κ` commutation relations are not an input: they are read off the
//! pairing, `⟨[x_μ, x_ν], P_ρ⟩ = ⟨x_μ ⊗ x_ν - x_ν ⊗ x_μ, Δ P_ρ⟩`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{normalize, Element, Generator, Monomial, RelationTable, TableKind};
use crate::config::{Basis, CoproductVariant, MetricSign, SmashConfig};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    X,
    P,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::X => "position",
            Side::P => "momentum",
        }
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" | "position" => Ok(Side::X),
            "p" | "momentum" => Ok(Side::P),
            other => Err(Error::InvalidFlag { flag: "side", value: other.into() }),
        }
    }
}

/// Diagonal metric, `(-1, 1, 1, 1)` unless flipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Metric {
    pub sign: MetricSign,
}

impl Metric {
    pub fn flipped() -> Self {
        Metric { sign: MetricSign::Flipped }
    }

    pub fn g(&self, mu: u8) -> i64 {
        let base = if mu == 0 { -1 } else { 1 };
        match self.sign {
            MetricSign::Standard => base,
            MetricSign::Flipped => -base,
        }
    }
}

impl From<MetricSign> for Metric {
    fn from(sign: MetricSign) -> Self {
        Metric { sign }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Coalgebra {
    pub basis: Basis,
    pub variant: CoproductVariant,
}

impl Coalgebra {
    pub fn new(basis: Basis) -> Self {
        Coalgebra { basis, variant: CoproductVariant::Direct }
    }

    /// `(a, b)` with `Δ(P_k) = P_k ⊗ Exp(a) + Exp(b) ⊗ P_k`.
    pub fn spatial_legs(&self) -> (Rational64, Rational64) {
        let (a, b) = match self.basis {
            Basis::Bicrossproduct => (Rational64::zero(), Rational64::from_integer(1)),
            Basis::Standard => (Rational64::new(-1, 2), Rational64::new(1, 2)),
        };
        match self.variant {
            CoproductVariant::Direct => (a, b),
            CoproductVariant::Transposed => (b, a),
        }
    }
}

impl From<Basis> for Coalgebra {
    fn from(basis: Basis) -> Self {
        Coalgebra::new(basis)
    }
}

/// Formal sum of `left ⊗ right`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn one() -> Self {
        TensorElement::term(Monomial::one(), Monomial::one(), Scalar::one())
    }

    pub fn term(l: Monomial, r: Monomial, c: Scalar) -> Self {
        let mut t = TensorElement::zero();
        t.add_term(l, r, c);
        t
    }

    pub fn add_term(&mut self, l: Monomial, r: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (l, r);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Monomial, &Scalar)> {
        self.terms.iter().map(|((l, r), c)| (l, r, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Componentwise free product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn mul_free(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((la, ra), ca) in &self.terms {
            for ((lb, rb), cb) in &other.terms {
                out.add_term(la.concat(lb), ra.concat(rb), ca * cb);
            }
        }
        out
    }

    pub fn normalize_legs(&self, left: &RelationTable, right: &RelationTable) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for ((l, r), c) in &self.terms {
            let ln = normalize(&Element::monomial(l.clone()), left)?;
            let rn = normalize(&Element::monomial(r.clone()), right)?;
            for (lm, lc) in ln.terms() {
                for (rm, rc) in rn.terms() {
                    out.add_term(lm.clone(), rm.clone(), &(c * lc) * rc);
                }
            }
        }
        Ok(out)
    }

    /// `Σ c·left` with the right leg replaced by a scalar.
    pub fn contract_right(&self, f: impl Fn(&Monomial) -> Result<Scalar>) -> Result<Element> {
        let mut out = Element::zero();
        for ((l, r), c) in &self.terms {
            let s = f(r)?;
            out.add_term(l.clone(), c * &s);
        }
        Ok(out)
    }

    /// `Σ c·right` with the left leg replaced by a scalar.
    pub fn contract_left(&self, f: impl Fn(&Monomial) -> Result<Scalar>) -> Result<Element> {
        let mut out = Element::zero();
        for ((l, r), c) in &self.terms {
            let s = f(l)?;
            out.add_term(r.clone(), c * &s);
        }
        Ok(out)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, ((l, r), c)) in self.terms.iter().enumerate() {
            let coeff = Element::scalar(c.clone()).to_string();
            let (neg, body) = match coeff.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ => (false, coeff),
            };
            let pair = format!("{l} ⊗ {r}");
            let text = if body == "1" { pair } else { format!("{body}*({pair})") };
            match (n, neg) {
                (0, true) => write!(f, "-{text}")?,
                (0, false) => write!(f, "{text}")?,
                (_, true) => write!(f, " - {text}")?,
                (_, false) => write!(f, " + {text}")?,
            }
        }
        Ok(())
    }
}

/// Three-leg tensor, only used for coassociativity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tensor3 {
    terms: BTreeMap<[Monomial; 3], Scalar>,
}

impl Tensor3 {
    fn add_term(&mut self, key: [Monomial; 3], c: Scalar) {
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The four actions of the dual pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ActionMode {
    /// `x ▷ p = ⟨x, p₍₂₎⟩ p₍₁₎`
    XOnP,
    /// `p ▷ x = ⟨p, x₍₂₎⟩ x₍₁₎`
    POnX,
    /// `p ◁ x = ⟨x, p₍₁₎⟩ p₍₂₎`
    PByX,
    /// `x ◁ p = ⟨p, x₍₁₎⟩ x₍₂₎`
    XByP,
}

impl ActionMode {
    pub const ALL: [ActionMode; 4] = [ActionMode::XOnP, ActionMode::POnX, ActionMode::PByX, ActionMode::XByP];

    /// Sides of the left and right argument.
    pub fn sides(self) -> (Side, Side) {
        match self {
            ActionMode::XOnP | ActionMode::XByP => (Side::X, Side::P),
            ActionMode::POnX | ActionMode::PByX => (Side::P, Side::X),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ActionMode::XOnP | ActionMode::POnX => "|>",
            ActionMode::PByX | ActionMode::XByP => "<|",
        }
    }
}

impl fmt::Display for ActionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ActionMode::XOnP => "x|>p",
            ActionMode::POnX => "p|>x",
            ActionMode::PByX => "p<|x",
            ActionMode::XByP => "x<|p",
        })
    }
}

impl FromStr for ActionMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x|>p" | "x-on-p" => Ok(ActionMode::XOnP),
            "p|>x" | "p-on-x" => Ok(ActionMode::POnX),
            "p<|x" | "p-by-x" => Ok(ActionMode::PByX),
            "x<|p" | "x-by-p" => Ok(ActionMode::XByP),
            other => Err(Error::InvalidFlag { flag: "mode", value: other.into() }),
        }
    }
}

/// `ε`: exponentials and the unit map to 1, every other word to 0.
pub fn counit(e: &Element) -> Scalar {
    let mut out = Scalar::zero();
    for (m, c) in e.terms() {
        if counit_word(m).is_one() {
            out += c;
        }
    }
    out
}

fn counit_word(m: &Monomial) -> Scalar {
    if m.letters().iter().all(|g| matches!(g, Generator::Exp(_))) {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

fn big(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// A dual pair `(X_κ, P_κ)` for one choice of coproduct and metric.
#[derive(Debug, Clone)]
pub struct HopfPair {
    coalgebra: Coalgebra,
    metric: Metric,
    momentum: RelationTable,
    position: RelationTable,
    position_provenance: BTreeMap<(Generator, Generator), Vec<String>>,
}

impl HopfPair {
    pub fn new(coalgebra: Coalgebra, metric: Metric) -> Result<HopfPair> {
        let config = SmashConfig {
            basis: coalgebra.basis,
            metric: metric.sign,
            coproduct: coalgebra.variant,
            ..Default::default()
        };
        let momentum = RelationTable::momentum(config);
        // the position table is not needed to evaluate pairings, so a
        // placeholder is enough while the dual relations are computed
        let mut pair = HopfPair {
            coalgebra,
            metric,
            momentum,
            position: RelationTable::kappa_minkowski(1, config),
            position_provenance: BTreeMap::new(),
        };
        let (table, provenance) = pair.dual_position_table(config)?;
        pair.position = table;
        pair.position_provenance = provenance;
        Ok(pair)
    }

    pub fn from_config(cfg: SmashConfig) -> Result<HopfPair> {
        HopfPair::new(Coalgebra { basis: cfg.basis, variant: cfg.coproduct }, cfg.metric.into())
    }

    pub fn coalgebra(&self) -> Coalgebra {
        self.coalgebra
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn momentum_table(&self) -> &RelationTable {
        &self.momentum
    }

    /// The κ-Minkowski relations obtained by duality.
    pub fn position_table(&self) -> &RelationTable {
        &self.position
    }

    pub fn position_provenance(&self) -> &BTreeMap<(Generator, Generator), Vec<String>> {
        &self.position_provenance
    }

    pub fn table(&self, side: Side) -> &RelationTable {
        match side {
            Side::X => &self.position,
            Side::P => &self.momentum,
        }
    }

    fn check_side(e: &Element, side: Side) -> Result<()> {
        let ok = match side {
            Side::X => e.is_position(),
            Side::P => e.is_momentum(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::WrongSide { element: e.to_string(), side: side.name() })
        }
    }

    fn generator_coproduct(&self, g: Generator) -> TensorElement {
        let one = Monomial::one;
        let gm = Monomial::generator(g);
        match g {
            Generator::X(_) | Generator::P(0) => {
                let mut t = TensorElement::term(gm.clone(), one(), Scalar::one());
                t.add_term(one(), gm, Scalar::one());
                t
            }
            Generator::P(_) => {
                let (a, b) = self.coalgebra.spatial_legs();
                let mut t = TensorElement::term(gm.clone(), Monomial::new([Generator::Exp(a)]), Scalar::one());
                t.add_term(Monomial::new([Generator::Exp(b)]), gm, Scalar::one());
                t
            }
            Generator::Exp(_) => TensorElement::term(gm.clone(), gm, Scalar::one()),
        }
    }

    fn word_coproduct(&self, m: &Monomial) -> TensorElement {
        m.letters()
            .iter()
            .fold(TensorElement::one(), |acc, g| acc.mul_free(&self.generator_coproduct(*g)))
    }

    /// `Δ` extended multiplicatively; legs are normal-ordered in their own algebra.
    pub fn coproduct(&self, e: &Element, side: Side) -> Result<TensorElement> {
        HopfPair::check_side(e, side)?;
        let mut raw = TensorElement::zero();
        for (m, c) in e.terms() {
            for (l, r, d) in self.word_coproduct(m).terms() {
                raw.add_term(l.clone(), r.clone(), c * d);
            }
        }
        let t = self.table(side);
        raw.normalize_legs(t, t)
    }

    pub fn counit(&self, e: &Element) -> Scalar {
        counit(e)
    }

    fn generator_antipode(&self, g: Generator) -> Element {
        match g {
            Generator::X(_) | Generator::P(0) => -Element::generator(g),
            Generator::P(_) => {
                // from m(S ⊗ id)Δ(P_k) = 0 with group-like legs
                let (a, b) = self.coalgebra.spatial_legs();
                -Element::monomial(Monomial::new([Generator::Exp(-(a + b)), g]))
            }
            Generator::Exp(r) => Element::generator(Generator::Exp(-r)),
        }
    }

    /// Anti-homomorphic extension of `S`.
    pub fn antipode(&self, e: &Element, side: Side) -> Result<Element> {
        HopfPair::check_side(e, side)?;
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            let image = m
                .letters()
                .iter()
                .rev()
                .fold(Element::one(), |acc, g| acc.mul_free(&self.generator_antipode(*g)));
            out = &out + &image.scale(c);
        }
        normalize(&out, self.table(side))
    }

    /// `⟨x_μ, P_ν⟩ = iℏ g_{μν}`.
    fn pair_basic(&self, mu: u8, nu: u8) -> Scalar {
        if mu != nu {
            return Scalar::zero();
        }
        Scalar::monomial(self.metric.g(mu), 1, 1, 1, 0)
    }

    fn pair_generator(&self, x: Generator, g: Generator) -> Scalar {
        let Generator::X(mu) = x else { unreachable!("position letter expected") };
        match g {
            Generator::P(nu) => self.pair_basic(mu, nu),
            // only the linear term of the exponential series survives
            Generator::Exp(r) => {
                let lin = Scalar::monomial(-1, 1, 0, -1, 1).scale(&big(r));
                &lin * &self.pair_basic(mu, 0)
            }
            Generator::X(_) => unreachable!("momentum letter expected"),
        }
    }

    fn pair_words(&self, xw: &Monomial, pw: &Monomial) -> Scalar {
        let letters = xw.letters();
        match letters.len() {
            0 => counit_word(pw),
            1 => {
                // x primitive: ⟨x, g_1…g_n⟩ = Σ_i ⟨x, g_i⟩ Π_{j≠i} ε(g_j)
                let mut acc = Scalar::zero();
                for (i, g) in pw.letters().iter().enumerate() {
                    let others_unit = pw
                        .letters()
                        .iter()
                        .enumerate()
                        .all(|(j, h)| j == i || matches!(h, Generator::Exp(_)));
                    if others_unit {
                        acc += &self.pair_generator(letters[0], *g);
                    }
                }
                acc
            }
            _ => {
                let head = Monomial::generator(letters[0]);
                let tail = Monomial::new(letters[1..].iter().copied());
                let mut acc = Scalar::zero();
                for (l, r, c) in self.word_coproduct(pw).terms() {
                    let a = self.pair_words(&head, l);
                    if a.is_zero() {
                        continue;
                    }
                    acc += &(&(c * &a) * &self.pair_words(&tail, r));
                }
                acc
            }
        }
    }

    /// Duality pairing `⟨x, p⟩`, bilinear, products via `⟨xy, p⟩ = ⟨x ⊗ y, Δp⟩`.
    pub fn pair(&self, x: &Element, p: &Element) -> Result<Scalar> {
        HopfPair::check_side(x, Side::X)?;
        HopfPair::check_side(p, Side::P)?;
        let mut acc = Scalar::zero();
        for (xm, xc) in x.terms() {
            for (pm, pc) in p.terms() {
                let v = self.pair_words(xm, pm);
                acc += &(&(xc * pc) * &v);
            }
        }
        Ok(acc)
    }

    /// Same pairing evaluated by splitting the momentum word with `Δx`
    /// (`⟨x, pq⟩ = ⟨Δx, p ⊗ q⟩`); single letters fall back to [`pair`](Self::pair).
    pub fn pair_via_position_coproduct(&self, x: &Element, p: &Element) -> Result<Scalar> {
        HopfPair::check_side(x, Side::X)?;
        HopfPair::check_side(p, Side::P)?;
        let mut acc = Scalar::zero();
        for (xm, xc) in x.terms() {
            for (pm, pc) in p.terms() {
                acc += &(&(xc * pc) * &self.pair_split_momentum(xm, pm));
            }
        }
        Ok(acc)
    }

    fn pair_split_momentum(&self, xw: &Monomial, pw: &Monomial) -> Scalar {
        if pw.len() <= 1 {
            return self.pair_words(xw, pw);
        }
        let head = Monomial::generator(pw.letters()[0]);
        let tail = Monomial::new(pw.letters()[1..].iter().copied());
        let mut acc = Scalar::zero();
        for (l, r, c) in self.word_coproduct(xw).terms() {
            let a = self.pair_words(l, &head);
            if a.is_zero() {
                continue;
            }
            acc += &(&(c * &a) * &self.pair_split_momentum(r, &tail));
        }
        acc
    }

    /// `act(a, b, mode)` computes `a ▷ b` or `a ◁ b` as selected by `mode`.
    pub fn act(&self, a: &Element, b: &Element, mode: ActionMode) -> Result<Element> {
        let (sa, sb) = mode.sides();
        HopfPair::check_side(a, sa)?;
        HopfPair::check_side(b, sb)?;
        let raw = match mode {
            ActionMode::XOnP => self.coproduct(b, Side::P)?.contract_right(|r| self.pair(a, &Element::monomial(r.clone())))?,
            ActionMode::PByX => self.coproduct(a, Side::P)?.contract_left(|l| self.pair(b, &Element::monomial(l.clone())))?,
            ActionMode::POnX => self.coproduct(b, Side::X)?.contract_right(|r| self.pair(&Element::monomial(r.clone()), a))?,
            ActionMode::XByP => self.coproduct(a, Side::X)?.contract_left(|l| self.pair(&Element::monomial(l.clone()), b))?,
        };
        let out_side = match mode {
            ActionMode::XOnP | ActionMode::PByX => Side::P,
            ActionMode::POnX | ActionMode::XByP => Side::X,
        };
        normalize(&raw, self.table(out_side))
    }

    /// `(Δ ⊗ id)Δ(e)`.
    pub fn coproduct_twice_left(&self, e: &Element, side: Side) -> Result<Tensor3> {
        let mut out = Tensor3::default();
        for (l, r, c) in self.coproduct(e, side)?.terms() {
            for (ll, lr, d) in self.coproduct(&Element::monomial(l.clone()), side)?.terms() {
                out.add_term([ll.clone(), lr.clone(), r.clone()], c * d);
            }
        }
        Ok(out)
    }

    /// `(id ⊗ Δ)Δ(e)`.
    pub fn coproduct_twice_right(&self, e: &Element, side: Side) -> Result<Tensor3> {
        let mut out = Tensor3::default();
        for (l, r, c) in self.coproduct(e, side)?.terms() {
            for (rl, rr, d) in self.coproduct(&Element::monomial(r.clone()), side)?.terms() {
                out.add_term([l.clone(), rl.clone(), rr.clone()], c * d);
            }
        }
        Ok(out)
    }

    /// `(ε ⊗ id)Δ(e)` and `(id ⊗ ε)Δ(e)`.
    pub fn counit_contractions(&self, e: &Element, side: Side) -> Result<(Element, Element)> {
        let d = self.coproduct(e, side)?;
        let left = d.contract_left(|l| Ok(counit_word(l)))?;
        let right = d.contract_right(|r| Ok(counit_word(r)))?;
        Ok((left, right))
    }

    /// `m(S ⊗ id)Δ(e)` and `m(id ⊗ S)Δ(e)`.
    pub fn antipode_contractions(&self, e: &Element, side: Side) -> Result<(Element, Element)> {
        let d = self.coproduct(e, side)?;
        let table = self.table(side);
        let mut left = Element::zero();
        let mut right = Element::zero();
        for (l, r, c) in d.terms() {
            let le = Element::monomial(l.clone());
            let re = Element::monomial(r.clone());
            left = &left + &self.antipode(&le, side)?.mul_free(&re).scale(c);
            right = &right + &le.mul_free(&self.antipode(&re, side)?).scale(c);
        }
        Ok((normalize(&left, table)?, normalize(&right, table)?))
    }

    fn dual_position_table(
        &self,
        config: SmashConfig,
    ) -> Result<(RelationTable, BTreeMap<(Generator, Generator), Vec<String>>)> {
        let mut builder = RelationTable::builder(TableKind::Configuration, config);
        let mut provenance = BTreeMap::new();
        let probes = momentum_probe_words(3);
        for hi in 0..4u8 {
            for lo in 0..hi {
                let (xl, xh) = (Generator::X(lo), Generator::X(hi));
                let forward = Monomial::new([xl, xh]);
                let backward = Monomial::new([xh, xl]);
                let mut bracket = Element::zero();
                let mut notes = Vec::new();
                for rho in 0..4u8 {
                    let pr = Monomial::generator(Generator::P(rho));
                    let v = &self.pair_words(&forward, &pr) - &self.pair_words(&backward, &pr);
                    if v.is_zero() {
                        continue;
                    }
                    let unit = self.pair_basic(rho, rho);
                    let coeff = &v * &unit.inverse().expect("metric entries are invertible");
                    notes.push(format!("<[{xl},{xh}], P{rho}> = {v}, so the x{rho} coefficient is {coeff}"));
                    bracket.add_term(Monomial::generator(Generator::X(rho)), coeff);
                }
                // the linear ansatz must annihilate every higher momentum word
                for q in &probes {
                    let lhs = &self.pair_words(&forward, q) - &self.pair_words(&backward, q);
                    let rhs = self.pair(&bracket, &Element::monomial(q.clone()))?;
                    if lhs != rhs {
                        return Err(Error::Construction(format!(
                            "[{xl},{xh}] is not linear: pairing with {q} gives {lhs} vs {rhs}"
                        )));
                    }
                }
                notes.push(format!("checked against {} momentum words of degree <= 3", probes.len()));
                let rhs = &Element::monomial(Monomial::new([xl, xh])) - &bracket;
                builder = builder.rule(xh, xl, rhs);
                provenance.insert((xh, xl), notes);
            }
        }
        Ok((builder.build()?, provenance))
    }
}

/// Canonical momentum words up to `max_len` letters over `P_0..P_3` and a few
/// exponentials; used as probes for duality checks.
pub fn momentum_probe_words(max_len: usize) -> Vec<Monomial> {
    let letters: Vec<Generator> = (0..4)
        .map(Generator::P)
        .chain([Generator::e(), Generator::exp(1, 2), Generator::exp(-1, 2)])
        .collect();
    let mut words = vec![Monomial::one()];
    let mut frontier = vec![Monomial::one()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &letters {
                let m = w.concat(&Monomial::generator(*g));
                if m.is_canonical() && m.len() == w.len() + 1 {
                    next.push(m);
                }
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    words
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(mu: u8) -> Element {
        Element::generator(Generator::X(mu))
    }
    fn p(mu: u8) -> Element {
        Element::generator(Generator::P(mu))
    }
    fn e_pow(num: i64, den: i64) -> Element {
        Element::generator(Generator::exp(num, den))
    }
    fn bicross() -> HopfPair {
        HopfPair::new(Basis::Bicrossproduct.into(), Metric::default()).unwrap()
    }
    fn standard() -> HopfPair {
        HopfPair::new(Basis::Standard.into(), Metric::default()).unwrap()
    }
    fn i_hbar(sign: i64) -> Scalar {
        Scalar::monomial(sign, 1, 1, 1, 0)
    }

    /// Truncated `exp(-r P_0/(κℏ))` as an explicit polynomial in `P_0`.
    fn exp_series(r: i64, order: usize) -> Element {
        let mut out = Element::zero();
        let mut coeff = Scalar::one();
        let mut word = Monomial::one();
        for n in 0..=order {
            out.add_term(word.clone(), coeff.clone());
            coeff = &coeff * &Scalar::monomial(-r, (n + 1) as i64, 0, -1, 1);
            word = word.concat(&Monomial::generator(Generator::P(0)));
        }
        out
    }

    #[test]
    fn coproduct_of_generators() {
        let h = bicross();
        let d = h.coproduct(&p(0), Side::P).unwrap();
        let mut expect = TensorElement::term(Monomial::generator(Generator::P(0)), Monomial::one(), Scalar::one());
        expect.add_term(Monomial::one(), Monomial::generator(Generator::P(0)), Scalar::one());
        assert_eq!(d, expect);

        let d = standard().coproduct(&p(2), Side::P).unwrap();
        let mut expect = TensorElement::term(Monomial::generator(Generator::P(2)), Monomial::new([Generator::exp(-1, 2)]), Scalar::one());
        expect.add_term(Monomial::new([Generator::exp(1, 2)]), Monomial::generator(Generator::P(2)), Scalar::one());
        assert_eq!(d, expect);
        assert_eq!(d.to_string(), "E^(1/2) ⊗ P2 + P2 ⊗ E^(-1/2)");
    }

    #[test]
    fn wrong_side_is_rejected() {
        let h = bicross();
        assert!(matches!(h.coproduct(&x(0), Side::P), Err(Error::WrongSide { .. })));
        assert!(h.pair(&p(0), &p(0)).is_err());
        assert!(h.act(&p(0), &p(1), ActionMode::XOnP).is_err());
    }

    #[test]
    fn exponential_is_group_like_against_series() {
        // oracle: Δ of the order-6 series of exp(-P0/κℏ) equals the product of two
        // order-6 series up to total degree 6
        let h = bicross();
        let order = 6;
        let series = exp_series(1, order);
        let poly_table = h.momentum_table().clone();
        let d = h.coproduct(&series, Side::P).unwrap();
        let s = exp_series(1, order);
        let mut prod = TensorElement::zero();
        for (lm, lc) in s.terms() {
            for (rm, rc) in s.terms() {
                if lm.len() + rm.len() <= order {
                    prod.add_term(lm.clone(), rm.clone(), lc * rc);
                }
            }
        }
        assert_eq!(d.normalize_legs(&poly_table, &poly_table).unwrap(), prod);
        let g = h.coproduct(&Element::generator(Generator::e()), Side::P).unwrap();
        assert_eq!(g, TensorElement::term(Monomial::new([Generator::e()]), Monomial::new([Generator::e()]), Scalar::one()));
    }

    #[test]
    fn counit_values() {
        assert!(counit(&p(1)).is_zero());
        assert!(counit(&e_pow(-3, 2)).is_one());
        let e = &Element::one() + &Element::monomial(Monomial::new([Generator::X(0), Generator::X(1)]));
        assert!(counit(&e).is_one());
    }

    #[test]
    fn antipode_values() {
        let h = bicross();
        assert_eq!(h.antipode(&p(0), Side::P).unwrap(), -p(0));
        assert_eq!(h.antipode(&Element::generator(Generator::e()), Side::P).unwrap(), e_pow(-1, 1));
        // with Δ(P_k) = P_k ⊗ 1 + E ⊗ P_k the axiom forces S(P_k) = -E^(-1) P_k
        assert_eq!(
            h.antipode(&p(1), Side::P).unwrap(),
            -Element::monomial(Monomial::new([Generator::exp(-1, 1), Generator::P(1)]))
        );
        assert_eq!(standard().antipode(&p(1), Side::P).unwrap(), -p(1));
        let x0x1 = Element::monomial(Monomial::new([Generator::X(0), Generator::X(1)]));
        let s = h.antipode(&x0x1, Side::X).unwrap();
        let expect = normalize(&Element::monomial(Monomial::new([Generator::X(1), Generator::X(0)])), h.position_table()).unwrap();
        assert_eq!(s, expect);
    }

    #[test]
    fn antipode_of_exponential_against_series() {
        // oracle: S(P0) = -P0 applied termwise flips the sign of the exponent
        let h = bicross();
        let order = 6;
        let s = h.antipode(&exp_series(1, order), Side::P).unwrap();
        assert_eq!(s, exp_series(-1, order));
    }

    #[test]
    fn pairing_on_generators() {
        let h = bicross();
        assert_eq!(h.pair(&x(0), &p(0)).unwrap(), i_hbar(-1));
        for k in 1..4 {
            for l in 1..4 {
                let v = h.pair(&x(k), &p(l)).unwrap();
                assert_eq!(v, if k == l { i_hbar(1) } else { Scalar::zero() });
            }
        }
        assert_eq!(h.pair(&x(0), &Element::generator(Generator::e())).unwrap(), Scalar::monomial(1, 1, 1, 0, 1));
        let hf = HopfPair::new(Basis::Bicrossproduct.into(), Metric::flipped()).unwrap();
        assert_eq!(hf.pair(&x(0), &p(0)).unwrap(), i_hbar(1));
    }

    #[test]
    fn pairing_with_exponential_against_series() {
        // oracle: truncated series, ⟨x0, P0^n⟩ vanishes for n ≥ 2
        let h = bicross();
        let series = exp_series(1, 6);
        assert_eq!(
            h.pair(&x(0), &series).unwrap(),
            h.pair(&x(0), &Element::generator(Generator::e())).unwrap()
        );
        let xx = Element::monomial(Monomial::new([Generator::X(0), Generator::X(0)]));
        // group-like: ⟨x0 x0, E⟩ = ⟨x0, E⟩²
        let lin = h.pair(&x(0), &Element::generator(Generator::e())).unwrap();
        assert_eq!(h.pair(&xx, &Element::generator(Generator::e())).unwrap(), &lin * &lin);
        assert_eq!(h.pair(&xx, &series).unwrap(), &lin * &lin);
    }

    #[test]
    fn pairing_routes_agree_on_quadratics() {
        for h in [bicross(), standard()] {
            for k in 0..4 {
                for l in 0..4 {
                    for m in 0..4 {
                        for n in 0..4 {
                            let xw = Element::monomial(Monomial::new([Generator::X(k), Generator::X(l)]));
                            let pw = Element::monomial(Monomial::new([Generator::P(m), Generator::P(n)]));
                            assert_eq!(h.pair(&xw, &pw).unwrap(), h.pair_via_position_coproduct(&xw, &pw).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dual_position_table_is_kappa_minkowski() {
        let cfg = SmashConfig::default();
        assert_eq!(bicross().position_table().rules().collect::<Vec<_>>(), RelationTable::kappa_minkowski(1, cfg).rules().collect::<Vec<_>>());
        let s = standard();
        assert_eq!(s.position_table().rule(Generator::X(2), Generator::X(0)), RelationTable::kappa_minkowski(1, cfg).rule(Generator::X(2), Generator::X(0)));
        let flipped = HopfPair::new(Basis::Bicrossproduct.into(), Metric::flipped()).unwrap();
        assert_eq!(flipped.position_table().rule(Generator::X(1), Generator::X(0)), RelationTable::kappa_minkowski(-1, cfg).rule(Generator::X(1), Generator::X(0)));
        let transposed = HopfPair::new(Coalgebra { basis: Basis::Bicrossproduct, variant: CoproductVariant::Transposed }, Metric::default()).unwrap();
        assert_eq!(transposed.position_table().rule(Generator::X(3), Generator::X(0)), RelationTable::kappa_minkowski(-1, cfg).rule(Generator::X(3), Generator::X(0)));
    }

    #[test]
    fn pairing_respects_position_relations() {
        // ⟨x_k x_0 - x_0 x_k + (i/κ) x_k, q⟩ = 0 for every probe word
        let h = bicross();
        let rel = &(&Element::monomial(Monomial::new([Generator::X(1), Generator::X(0)]))
            - &Element::monomial(Monomial::new([Generator::X(0), Generator::X(1)])))
            + &x(1).scale(&Scalar::monomial(1, 1, 1, 0, 1));
        for q in momentum_probe_words(3) {
            assert!(h.pair(&rel, &Element::monomial(q)).unwrap().is_zero());
        }
    }

    #[test]
    fn action_tables_on_generators() {
        let h = bicross();
        let delta = |k: u8, l: u8| if k == l { 1 } else { 0 };
        let e = Element::generator(Generator::e());
        for k in 1..4u8 {
            for l in 1..4u8 {
                assert_eq!(h.act(&x(k), &p(l), ActionMode::XOnP).unwrap(), e.scale(&i_hbar(delta(k, l))));
                assert_eq!(h.act(&p(k), &x(l), ActionMode::POnX).unwrap(), Element::scalar(i_hbar(delta(k, l))));
                assert_eq!(h.act(&p(k), &x(l), ActionMode::PByX).unwrap(), Element::scalar(i_hbar(delta(k, l))));
                assert_eq!(h.act(&x(k), &p(l), ActionMode::XByP).unwrap(), Element::scalar(i_hbar(delta(k, l))));
            }
            assert_eq!(h.act(&p(k), &x(0), ActionMode::PByX).unwrap(), p(k).scale(&Scalar::monomial(1, 1, 1, 0, 1)));
            assert!(h.act(&x(0), &p(k), ActionMode::XOnP).unwrap().is_zero());
            assert!(h.act(&p(0), &x(k), ActionMode::POnX).unwrap().is_zero());
        }
        for mode in ActionMode::ALL {
            let (a, b) = match mode.sides() {
                (Side::X, _) => (x(0), p(0)),
                _ => (p(0), x(0)),
            };
            assert_eq!(h.act(&a, &b, mode).unwrap(), Element::scalar(i_hbar(-1)));
        }
    }

    #[test]
    fn module_algebra_property() {
        for h in [bicross(), standard()] {
            for pm in (0..4).map(p).chain([Element::generator(Generator::e())]) {
                for a in 0..4 {
                    for b in 0..4 {
                        let xy = Element::monomial(Monomial::new([Generator::X(a), Generator::X(b)]));
                        let lhs = h.act(&pm, &xy, ActionMode::POnX).unwrap();
                        let mut rhs = Element::zero();
                        for (l, r, c) in h.coproduct(&pm, Side::P).unwrap().terms() {
                            let left = h.act(&Element::monomial(l.clone()), &x(a), ActionMode::POnX).unwrap();
                            let right = h.act(&Element::monomial(r.clone()), &x(b), ActionMode::POnX).unwrap();
                            rhs = &rhs + &left.mul_free(&right).scale(c);
                        }
                        assert_eq!(lhs, normalize(&rhs, h.position_table()).unwrap(), "p={pm} x{a} x{b}");
                    }
                }
            }
        }
    }

    #[test]
    fn hopf_axioms_on_generators() {
        for basis in [Basis::Bicrossproduct, Basis::Standard] {
            for variant in [CoproductVariant::Direct, CoproductVariant::Transposed] {
                let h = HopfPair::new(Coalgebra { basis, variant }, Metric::default()).unwrap();
                let gens = Generator::basic().chain([Generator::e(), Generator::exp(-1, 2)]);
                for g in gens {
                    let side = if g.is_position() { Side::X } else { Side::P };
                    let a = Element::generator(g);
                    assert_eq!(h.coproduct_twice_left(&a, side).unwrap(), h.coproduct_twice_right(&a, side).unwrap());
                    let (l, r) = h.counit_contractions(&a, side).unwrap();
                    assert_eq!(l, a);
                    assert_eq!(r, a);
                    let (l, r) = h.antipode_contractions(&a, side).unwrap();
                    let unit = Element::scalar(counit(&a));
                    assert_eq!(l, unit, "{g} in {basis:?}/{variant:?}");
                    assert_eq!(r, unit);
                }
            }
        }
    }
}
