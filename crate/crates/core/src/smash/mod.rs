//! Cross-product phase spaces `X ⋊ P` and `P ⋊ X`.
//!
//! Every cross rule `p·x` is computed from the coproduct, the pairing and
//! one action of [`HopfPair`]:
//!
//! | order | direct route              | mirror route            |
//! |-------|---------------------------|-------------------------|
//! | XP    | `p∘x = (p₁ ▷ x) p₂`        | `p∘x = x₁ (p ◁ x₂)`      |
//! | PX    | `x∘p = p₁ (x ◁ p₂)`        | `x∘p = (x₁ ▷ p) x₂`      |
//!
//! In the PX order the defining identity is solved for `p·x`.

mod fixtures;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{classical_limit, commutator, normalize, Element, Generator, Monomial, RelationTable, TableKind};
use crate::config::{Order, SmashConfig};
use crate::error::{Error, Result};
use crate::hopf::{ActionMode, HopfPair, Side};
use crate::scalar::Scalar;

pub use fixtures::{Fixture, FixtureRelation, FIXTURE_DIR_ENV};

/// Which of the two equivalent constructions produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    #[default]
    Direct,
    Mirror,
}

/// One commutator `[a, b]` of the derived algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub lhs: (Generator, Generator),
    pub rhs: Element,
    pub provenance: Vec<String>,
}

impl Relation {
    pub fn label(&self) -> String {
        bracket(self.lhs.0, self.lhs.1)
    }
}

pub(crate) fn bracket(a: Generator, b: Generator) -> String {
    format!("[{a},{b}]")
}

/// The 28 commutator pairs in report order: x-x, P-P, then x-P.
pub fn relation_pairs() -> Vec<(Generator, Generator)> {
    let mut out = Vec::with_capacity(28);
    for mk in [Generator::X as fn(u8) -> Generator, Generator::P] {
        for mu in 0..4u8 {
            for nu in mu + 1..4 {
                out.push((mk(mu), mk(nu)));
            }
        }
    }
    for mu in 0..4u8 {
        for nu in 0..4u8 {
            out.push((Generator::X(mu), Generator::P(nu)));
        }
    }
    out
}

/// A phase-space relation table with a record of how each rule arose.
#[derive(Debug, Clone)]
pub struct DerivedTable {
    config: SmashConfig,
    route: Route,
    table: RelationTable,
    relations: Vec<Relation>,
    exponentials: Vec<Relation>,
}

impl DerivedTable {
    pub fn config(&self) -> SmashConfig {
        self.config
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn table(&self) -> &RelationTable {
        &self.table
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// `[x_ν, E]` for each `ν`.
    pub fn exponentials(&self) -> &[Relation] {
        &self.exponentials
    }

    pub fn relation(&self, a: Generator, b: Generator) -> Option<&Relation> {
        self.relations.iter().find(|r| r.lhs == (a, b))
    }

    /// `[a, b]` for arbitrary elements, normal-ordered in this table.
    pub fn commutator(&self, a: &Element, b: &Element) -> Result<Element> {
        commutator(a, b, &self.table)
    }

    pub fn normalize(&self, e: &Element) -> Result<Element> {
        normalize(e, &self.table)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rel = |r: &Relation| {
            serde_json::json!({ "lhs": r.label(), "rhs": r.rhs.to_string(), "provenance": r.provenance })
        };
        serde_json::json!({
            "config": self.config,
            "route": self.route,
            "relations": self.relations.iter().map(rel).collect::<Vec<_>>(),
            "exponentials": self.exponentials.iter().map(rel).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for DerivedTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {} ({} route)", self.config, if self.route == Route::Direct { "direct" } else { "mirror" })?;
        for r in self.relations.iter().chain(&self.exponentials) {
            writeln!(f, "{} = {}", r.label(), r.rhs)?;
        }
        Ok(())
    }
}

fn cross_operands(g: Generator, h: Generator) -> Result<(Generator, Generator)> {
    match (g.is_position(), h.is_position()) {
        (true, false) if h.is_momentum() && !h.is_identity() => Ok((h, g)),
        (false, true) if g.is_momentum() && !g.is_identity() => Ok((g, h)),
        _ => Err(Error::NotCrossPair(format!("({g}, {h})"))),
    }
}

/// Normal-ordered form of the out-of-order product `p·x` of a cross pair,
/// given in either order.
pub fn cross_relation(g: Generator, h: Generator, cfg: SmashConfig) -> Result<Element> {
    let (p, x) = cross_operands(g, h)?;
    let hopf = HopfPair::from_config(cfg)?;
    Ok(cross_rule(&hopf, p, x, cfg.order, Route::Direct)?.0)
}

fn leg(m: &Monomial) -> Element {
    Element::monomial(m.clone())
}

fn cross_rule(hopf: &HopfPair, p: Generator, x: Generator, order: Order, route: Route) -> Result<(Element, Vec<String>)> {
    let pe = Element::generator(p);
    let xe = Element::generator(x);
    let mut notes = Vec::new();
    let mut sum = Element::zero();
    match (order, route) {
        (Order::Xp, Route::Direct) => {
            for (l, r, c) in hopf.coproduct(&pe, Side::P)?.terms() {
                let a = hopf.act(&leg(l), &xe, ActionMode::POnX)?;
                notes.push(format!("D({p}) has {c}*({l} ⊗ {r}); {l} |> {x} = {a}"));
                sum = &sum + &a.mul_free(&leg(r)).scale(c);
            }
        }
        (Order::Xp, Route::Mirror) => {
            for (l, r, c) in hopf.coproduct(&xe, Side::X)?.terms() {
                let a = hopf.act(&pe, &leg(r), ActionMode::PByX)?;
                notes.push(format!("D({x}) has {c}*({l} ⊗ {r}); {p} <| {r} = {a}"));
                sum = &sum + &leg(l).mul_free(&a).scale(c);
            }
        }
        (Order::Px, Route::Direct) => {
            for (l, r, c) in hopf.coproduct(&pe, Side::P)?.terms() {
                let a = hopf.act(&xe, &leg(r), ActionMode::XByP)?;
                notes.push(format!("D({p}) has {c}*({l} ⊗ {r}); {x} <| {r} = {a}"));
                sum = &sum + &leg(l).mul_free(&a).scale(c);
            }
        }
        (Order::Px, Route::Mirror) => {
            for (l, r, c) in hopf.coproduct(&xe, Side::X)?.terms() {
                let a = hopf.act(&leg(l), &pe, ActionMode::XOnP)?;
                notes.push(format!("D({x}) has {c}*({l} ⊗ {r}); {l} |> {p} = {a}"));
                sum = &sum + &a.mul_free(&leg(r)).scale(c);
            }
        }
    }
    let rule = match order {
        Order::Xp => {
            notes.push(format!("{p}*{x} = {sum}"));
            sum
        }
        Order::Px => {
            // sum = p·x + (pure momentum terms); solve for p·x
            let px = Monomial::new([p, x]);
            if !sum.coefficient(&px).is_one() {
                return Err(Error::Construction(format!("{x}*{p} does not contain {p}*{x} once: {sum}")));
            }
            let rest = &sum - &Element::monomial(px);
            if !rest.is_momentum() {
                return Err(Error::Construction(format!("{x}*{p} leaves position terms: {rest}")));
            }
            let rule = &Element::monomial(Monomial::new([x, p])) - &rest;
            notes.push(format!("{x}*{p} = {p}*{x} + {rest}, so {p}*{x} = {rule}"));
            rule
        }
    };
    if !rule.is_canonical() {
        return Err(Error::Construction(format!("{p}*{x} gave a non-canonical right-hand side {rule}")));
    }
    Ok((rule, notes))
}

fn position_probe_words(max_len: usize) -> Vec<Monomial> {
    let mut words = vec![Monomial::one()];
    let mut frontier = vec![Monomial::one()];
    for _ in 0..max_len {
        let next: Vec<Monomial> = frontier
            .iter()
            .flat_map(|w| (0..4).map(move |mu| w.concat(&Monomial::generator(Generator::X(mu)))))
            .collect();
        words.extend(next.iter().cloned());
        frontier = next;
    }
    words
}

/// Builds the phase-space table for `cfg` by the direct route.
pub fn derive_table(cfg: SmashConfig) -> Result<DerivedTable> {
    derive_table_via(cfg, Route::Direct)
}

pub fn derive_table_via(cfg: SmashConfig, route: Route) -> Result<DerivedTable> {
    let hopf = HopfPair::from_config(cfg)?;
    let mut builder = RelationTable::builder(TableKind::PhaseSpace, cfg);
    let mut provenance: BTreeMap<(Generator, Generator), Vec<String>> = BTreeMap::new();

    for (key, rhs) in hopf.position_table().rules() {
        builder = builder.rule(key.0, key.1, rhs.clone());
        provenance.insert(*key, hopf.position_provenance()[key].clone());
    }

    // [P_μ, P_ν] pairs to zero against every position word: Δx is cocommutative
    let probes = position_probe_words(3);
    for (key, rhs) in hopf.momentum_table().rules() {
        let (hi, lo) = *key;
        let forward = Element::monomial(Monomial::new([hi, lo]));
        let backward = Element::monomial(Monomial::new([lo, hi]));
        for w in &probes {
            let w = Element::monomial(w.clone());
            let d = &hopf.pair_via_position_coproduct(&w, &forward)? - &hopf.pair_via_position_coproduct(&w, &backward)?;
            if !d.is_zero() {
                return Err(Error::Construction(format!("[{lo},{hi}] pairs to {d} against {w}")));
            }
        }
        builder = builder.rule(hi, lo, rhs.clone());
        provenance.insert(
            *key,
            vec![format!("<w, [{lo},{hi}]> = 0 for {} position words w of degree <= 3 (D(x) is cocommutative)", probes.len())],
        );
    }

    for nu in 0..4u8 {
        let x = Generator::X(nu);
        for mu in 0..4u8 {
            let p = Generator::P(mu);
            let (rule, notes) = cross_rule(&hopf, p, x, cfg.order, route)?;
            builder = builder.rule(p, x, rule);
            provenance.insert((p, x), notes);
        }

        let (rule, mut notes) = cross_rule(&hopf, Generator::e(), x, cfg.order, route)?;
        let e = Monomial::generator(Generator::e());
        let shift = rule.coefficient(&e);
        let expect = &Element::monomial(Monomial::new([x, Generator::e()])) + &Element::term(e, shift.clone());
        if rule != expect {
            return Err(Error::Construction(format!("E*{x} = {rule} is not a shift of {x}*E")));
        }
        for (num, den) in [(1, 2), (-1, 2)] {
            let g = Generator::exp(num, den);
            let (half, _) = cross_rule(&hopf, g, x, cfg.order, route)?;
            let scaled = &Element::monomial(Monomial::new([x, g]))
                + &Element::term(Monomial::generator(g), shift.scale(&num_rational::BigRational::new(num.into(), den.into())));
            if half != scaled {
                return Err(Error::Construction(format!("{g}*{x} = {half} is not linear in the exponent")));
            }
        }
        notes.push(format!("E^(r)*{x} = {x}*E^(r) + r*({shift})*E^(r), checked at r = 1/2, -1/2"));
        builder = builder.exp_shift(nu, shift);
        provenance.insert((Generator::e(), x), notes);
    }

    let table = builder.build()?;
    let mut relations = Vec::with_capacity(28);
    for (a, b) in relation_pairs() {
        let rhs = commutator(&Element::generator(a), &Element::generator(b), &table)?;
        let notes = provenance.get(&(b, a)).cloned().unwrap_or_default();
        relations.push(Relation { lhs: (a, b), rhs, provenance: notes });
    }
    let mut exponentials = Vec::with_capacity(4);
    for nu in 0..4u8 {
        let (a, b) = (Generator::X(nu), Generator::e());
        let rhs = commutator(&Element::generator(a), &Element::generator(b), &table)?;
        exponentials.push(Relation { lhs: (a, b), rhs, provenance: provenance[&(b, a)].clone() });
    }
    Ok(DerivedTable { config: cfg, route, table, relations, exponentials })
}

/// Result of sending `κ⁻¹ → 0` in every commutator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitReport {
    pub config: SmashConfig,
    pub relations: Vec<(String, String)>,
    pub sectors_commute: bool,
    /// `σ` with `[x_μ, P_ν] → σ iℏ g_{μν}`, if one sign fits every entry.
    pub sign: Option<i64>,
    pub canonical: bool,
}

impl fmt::Display for LimitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# classical limit, {}", self.config)?;
        for (lhs, rhs) in &self.relations {
            writeln!(f, "{lhs} -> {rhs}")?;
        }
        let verdict = match (self.canonical, self.sign) {
            (true, _) => "canonical: [x_mu,P_nu] = i*hbar*g_mu_nu".to_string(),
            (false, Some(s)) if self.sectors_commute => format!("non-canonical: [x_mu,P_nu] = {}i*hbar*g_mu_nu", if s < 0 { "-" } else { "" }),
            _ => "non-canonical: not a Heisenberg algebra".to_string(),
        };
        writeln!(f, "{verdict}")
    }
}

pub fn check_classical_limit(t: &DerivedTable) -> LimitReport {
    let metric = crate::hopf::Metric::from(t.config.metric);
    let mut sectors_commute = true;
    let mut cross = Vec::new();
    let mut relations = Vec::new();
    for r in &t.relations {
        let lim = classical_limit(&r.rhs);
        relations.push((r.label(), lim.to_string()));
        match r.lhs {
            (Generator::X(mu), Generator::P(nu)) => cross.push((mu, nu, lim)),
            _ => sectors_commute &= lim.is_zero(),
        }
    }
    let fits = |s: i64| {
        cross.iter().all(|(mu, nu, lim)| {
            let expect = if mu == nu {
                Element::scalar(Scalar::monomial(s * metric.g(*mu), 1, 1, 1, 0))
            } else {
                Element::zero()
            };
            *lim == expect
        })
    };
    let sign = [1, -1].into_iter().find(|s| fits(*s));
    LimitReport { config: t.config, relations, sectors_commute, sign, canonical: sectors_commute && sign == Some(1) }
}

/// A derived commutator that differs from the reference.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mismatch {
    pub lhs: String,
    pub derived: String,
    pub expected: String,
}

/// A reference entry whose literature form differs from the stored value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Flag {
    pub lhs: String,
    pub derived: String,
    pub literature: String,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffReport {
    pub fixture: String,
    pub config: SmashConfig,
    pub mismatches: Vec<Mismatch>,
    pub flagged: Vec<Flag>,
    /// Derived relations the fixture does not mention.
    pub unmatched: Vec<String>,
}

impl DiffReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty() && self.unmatched.is_empty()
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.is_clean() { "match" } else { "MISMATCH" };
        writeln!(f, "# reference `{}`: {verdict}", self.fixture)?;
        for m in &self.mismatches {
            writeln!(f, "mismatch {}: derived {} vs reference {}", m.lhs, m.derived, m.expected)?;
        }
        for u in &self.unmatched {
            writeln!(f, "no reference entry for {u}")?;
        }
        for fl in &self.flagged {
            writeln!(f, "flagged {}: derived {}, literature prints {} ({})", fl.lhs, fl.derived, fl.literature, fl.note)?;
        }
        Ok(())
    }
}

/// Compares against the reference fixture registered for the table's config.
pub fn verify_against_reference(t: &DerivedTable) -> Result<DiffReport> {
    verify_against(t, &Fixture::for_config(t.config)?)
}

pub fn verify_against(t: &DerivedTable, fixture: &Fixture) -> Result<DiffReport> {
    let mut report = DiffReport {
        fixture: fixture.name.clone(),
        config: t.config,
        mismatches: Vec::new(),
        flagged: Vec::new(),
        unmatched: Vec::new(),
    };
    let entries = fixture.parsed(false)?;
    for r in &t.relations {
        let Some(((_, expected), entry)) = entries.iter().zip(&fixture.relations).find(|((k, _), _)| *k == r.lhs) else {
            report.unmatched.push(r.label());
            continue;
        };
        let expected = normalize(expected, &t.table)?;
        if expected != r.rhs {
            report.mismatches.push(Mismatch { lhs: r.label(), derived: r.rhs.to_string(), expected: expected.to_string() });
        } else if let Some(lit) = &entry.literature {
            report.flagged.push(Flag {
                lhs: r.label(),
                derived: r.rhs.to_string(),
                literature: lit.clone(),
                note: entry.note.clone().unwrap_or_default(),
            });
        }
    }
    Ok(report)
}

/// Triples of basic generators whose Jacobiator does not vanish in `t`.
pub fn jacobi_violations(t: &RelationTable, gens: &[Generator]) -> Result<Vec<(Generator, Generator, Generator, Element)>> {
    let mut out = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for (j, &b) in gens.iter().enumerate().skip(i + 1) {
            for &c in gens.iter().skip(j + 1) {
                let (ea, eb, ec) = (Element::generator(a), Element::generator(b), Element::generator(c));
                let s = &(&commutator(&commutator(&ea, &eb, t)?, &ec, t)? + &commutator(&commutator(&eb, &ec, t)?, &ea, t)?)
                    + &commutator(&commutator(&ec, &ea, t)?, &eb, t)?;
                if !s.is_zero() {
                    out.push((a, b, c, s));
                }
            }
        }
    }
    Ok(out)
}

/// Generators spanning a phase-space table, exponentials included.
pub fn phase_space_generators() -> Vec<Generator> {
    Generator::basic().chain([Generator::e(), Generator::exp(1, 2), Generator::exp(-1, 2)]).collect()
}

#[cfg(test)]
mod tests;
