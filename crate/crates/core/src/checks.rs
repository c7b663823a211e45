//! Property suites behind `kappa selftest`.
//!
//! Each suite returns a [`SuiteReport`] instead of panicking so that the
//! CLI and the acceptance target can print and aggregate them.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{commutator, multiply, normalize, Element, Generator, Monomial, RelationTable};
use crate::config::{Basis, CoproductVariant, Order, SmashConfig};
use crate::error::Result;
use crate::hopf::{counit, ActionMode, Coalgebra, HopfPair, Metric, Side};
use crate::represent::{self, build_operators, residuals, smooth_states, Case, Differentiation, Grid, SweepConfig};
use crate::scalar::Scalar;
use crate::smash::{
    check_classical_limit, derive_table, derive_table_via, jacobi_violations, phase_space_generators, verify_against,
    Fixture, Route,
};
use crate::syntax;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> SuiteReport {
        SuiteReport { name: name.to_string(), cases: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn record<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "[{tag}] {}: {} checks, {} failures", self.name, self.cases, self.failures.len())?;
        for m in self.failures.iter().take(10) {
            writeln!(f, "    {m}")?;
        }
        Ok(())
    }
}

/// Sample sizes for the randomized suites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SelfTestOptions {
    pub seed: u64,
    pub triples: usize,
    pub products: usize,
    pub states: usize,
}

impl Default for SelfTestOptions {
    fn default() -> Self {
        SelfTestOptions { seed: 1, triples: 500, products: 200, states: 100 }
    }
}

fn letters_for(t: &RelationTable) -> Vec<Generator> {
    let mut out: Vec<Generator> = Generator::basic().filter(|g| t.contains(*g)).collect();
    if t.contains(Generator::e()) {
        out.extend([Generator::e(), Generator::exp(1, 2), Generator::exp(-1, 2)]);
    }
    out
}

fn random_scalar(rng: &mut impl Rng) -> Scalar {
    let n = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
    Scalar::monomial(n, rng.gen_range(1..=2), rng.gen_range(0..2), rng.gen_range(-1..=1), rng.gen_range(0..=1))
}

/// Sum of one or two terms, each a word of at most `max_len` letters.
pub fn random_element(rng: &mut impl Rng, letters: &[Generator], max_len: usize) -> Element {
    let mut e = Element::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let len = rng.gen_range(0..=max_len);
        let w: Vec<Generator> = (0..len).map(|_| *letters.choose(rng).unwrap()).collect();
        e.add_term(Monomial::new(w), random_scalar(rng));
    }
    e
}

/// Every table the crate ships: κ-Minkowski of both signs, momenta, and
/// the sixteen derived phase spaces.
pub fn shipped_tables() -> Result<Vec<(String, RelationTable)>> {
    let cfg = SmashConfig::default();
    let mut out = vec![
        ("kappa-minkowski(+)".to_string(), RelationTable::kappa_minkowski(1, cfg)),
        ("kappa-minkowski(-)".to_string(), RelationTable::kappa_minkowski(-1, cfg)),
        ("momentum".to_string(), RelationTable::momentum(cfg)),
    ];
    for c in SmashConfig::all() {
        out.push((format!("phase space {c}"), derive_table(c)?.table().clone()));
    }
    Ok(out)
}

/// Associativity, Jacobi and idempotence on random triples.
pub fn algebra_suite(seed: u64, triples: usize) -> SuiteReport {
    let mut r = SuiteReport::new("algebra: associativity, Jacobi, idempotent normal form");
    let Some(tables) = r.record(shipped_tables(), || "building tables".into()) else { return r };
    for (ti, (name, t)) in tables.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((ti as u64) << 32));
        let letters = letters_for(t);
        for _ in 0..triples {
            let a = random_element(&mut rng, &letters, 2);
            let b = random_element(&mut rng, &letters, 2);
            let c = random_element(&mut rng, &letters, 2);
            let outcome = (|| -> Result<(bool, bool, bool)> {
                let ab = multiply(&a, &b, t)?;
                let assoc = multiply(&ab, &c, t)? == multiply(&a, &multiply(&b, &c, t)?, t)?;
                let jac = &(&commutator(&commutator(&a, &b, t)?, &c, t)? + &commutator(&commutator(&b, &c, t)?, &a, t)?)
                    + &commutator(&commutator(&c, &a, t)?, &b, t)?;
                let idem = normalize(&ab, t)? == ab && ab.is_canonical();
                Ok((assoc, jac.is_zero(), idem))
            })();
            let Some((assoc, jac, idem)) = r.record(outcome, || format!("{name}: ({a}; {b}; {c})")) else { continue };
            r.check(assoc, || format!("{name}: associativity fails for ({a}; {b}; {c})"));
            r.check(jac, || format!("{name}: Jacobi fails for ({a}; {b}; {c})"));
            r.check(idem, || format!("{name}: normal form of {a}*{b} is not a fixed point"));
        }
    }
    r
}

fn random_word(rng: &mut impl Rng, letters: &[Generator], max_len: usize) -> Element {
    let len = rng.gen_range(1..=max_len);
    Element::monomial(Monomial::new((0..len).map(|_| *letters.choose(rng).unwrap())))
}

fn hopf_axioms(r: &mut SuiteReport, h: &HopfPair, a: &Element, side: Side, label: &str) {
    let res = (|| -> Result<[bool; 3]> {
        let coassoc = h.coproduct_twice_left(a, side)? == h.coproduct_twice_right(a, side)?;
        let (l, rr) = h.counit_contractions(a, side)?;
        let na = normalize(a, h.table(side))?;
        let counit_ok = l == na && rr == na;
        let unit = Element::scalar(counit(&na));
        let (sl, sr) = h.antipode_contractions(a, side)?;
        Ok([coassoc, counit_ok, sl == unit && sr == unit])
    })();
    if let Some([c, e, s]) = r.record(res, || format!("{label}: {a}")) {
        r.check(c, || format!("{label}: coassociativity fails on {a}"));
        r.check(e, || format!("{label}: counit axiom fails on {a}"));
        r.check(s, || format!("{label}: antipode axiom fails on {a}"));
    }
}

/// Coassociativity, counit and antipode axioms on generators and random
/// products of degree ≤ 3, for both bases and both leg orders.
pub fn hopf_suite(seed: u64, products: usize) -> SuiteReport {
    let mut r = SuiteReport::new("hopf: coassociativity, counit, antipode");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for basis in [Basis::Bicrossproduct, Basis::Standard] {
        for variant in [CoproductVariant::Direct, CoproductVariant::Transposed] {
            let label = format!("{basis}/{variant}");
            let Some(h) = r.record(HopfPair::new(Coalgebra { basis, variant }, Metric::default()), || label.clone()) else {
                continue;
            };
            let gens: Vec<Generator> = phase_space_generators();
            for g in &gens {
                let side = if g.is_position() { Side::X } else { Side::P };
                hopf_axioms(&mut r, &h, &Element::generator(*g), side, &label);
            }
            let p_letters: Vec<Generator> = gens.iter().copied().filter(|g| g.is_momentum()).collect();
            let x_letters: Vec<Generator> = gens.iter().copied().filter(|g| g.is_position()).collect();
            for _ in 0..products {
                hopf_axioms(&mut r, &h, &random_word(&mut rng, &p_letters, 3), Side::P, &label);
                hopf_axioms(&mut r, &h, &random_word(&mut rng, &x_letters, 3), Side::X, &label);
            }
        }
    }
    r
}

/// `⟨x_k x_l, P_m P_n⟩` split by `Δp` and by `Δx` for every index choice.
pub fn pairing_suite() -> SuiteReport {
    let mut r = SuiteReport::new("pairing: <xy,p> = <x⊗y,Dp> vs <x,pq> = <Dx,p⊗q>");
    for basis in [Basis::Bicrossproduct, Basis::Standard] {
        let Some(h) = r.record(HopfPair::new(basis.into(), Metric::default()), || basis.to_string()) else { continue };
        for k in 0..4 {
            for l in 0..4 {
                for m in 0..4 {
                    for n in 0..4 {
                        let xw = Element::monomial(Monomial::new([Generator::X(k), Generator::X(l)]));
                        let pw = Element::monomial(Monomial::new([Generator::P(m), Generator::P(n)]));
                        let both = h.pair(&xw, &pw).and_then(|a| Ok((a, h.pair_via_position_coproduct(&xw, &pw)?)));
                        if let Some((a, b)) = r.record(both, || format!("{basis}: <{xw},{pw}>")) {
                            r.check(a == b, || format!("{basis}: <{xw},{pw}> = {a} vs {b}"));
                        }
                    }
                }
            }
        }
    }
    r
}

/// `p ▷ (xy) = (p₁ ▷ x)(p₂ ▷ y)` on generator pairs.
pub fn module_algebra_suite() -> SuiteReport {
    let mut r = SuiteReport::new("module algebra: p |> (xy) = (p1 |> x)(p2 |> y)");
    for basis in [Basis::Bicrossproduct, Basis::Standard] {
        let Some(h) = r.record(HopfPair::new(basis.into(), Metric::default()), || basis.to_string()) else { continue };
        for g in (0..4).map(Generator::P).chain([Generator::e(), Generator::exp(1, 2)]) {
            let pm = Element::generator(g);
            for a in 0..4 {
                for b in 0..4 {
                    let res = (|| -> Result<bool> {
                        let xy = Element::monomial(Monomial::new([Generator::X(a), Generator::X(b)]));
                        let lhs = h.act(&pm, &xy, ActionMode::POnX)?;
                        let mut rhs = Element::zero();
                        for (l, rt, c) in h.coproduct(&pm, Side::P)?.terms() {
                            let left = h.act(&Element::monomial(l.clone()), &Element::generator(Generator::X(a)), ActionMode::POnX)?;
                            let right = h.act(&Element::monomial(rt.clone()), &Element::generator(Generator::X(b)), ActionMode::POnX)?;
                            rhs = &rhs + &left.mul_free(&right).scale(c);
                        }
                        Ok(lhs == normalize(&rhs, h.position_table())?)
                    })();
                    if let Some(ok) = r.record(res, || format!("{basis}: {g} on x{a}x{b}")) {
                        r.check(ok, || format!("{basis}: module-algebra property fails for {g} on x{a} x{b}"));
                    }
                }
            }
        }
    }
    r
}

/// Reference action values on generators, `(actor, target) -> value`.
///
/// The bicrossproduct entries are the published table; the standard-basis
/// entries were worked out by hand from the same definitions.
pub fn reference_action(basis: Basis, mode: ActionMode, mu: u8, nu: u8) -> &'static str {
    let diag = mu == nu;
    match (mode, mu, nu) {
        (_, 0, 0) => "-i*hbar",
        (ActionMode::XOnP, 0, _) => match basis {
            Basis::Bicrossproduct => "0",
            Basis::Standard => "-i/(2*kappa)*P",
        },
        (ActionMode::PByX, _, 0) => match basis {
            Basis::Bicrossproduct => "i/kappa*P",
            Basis::Standard => "i/(2*kappa)*P",
        },
        (_, 0, _) | (_, _, 0) => "0",
        (_, _, _) if !diag => "0",
        (ActionMode::XOnP, _, _) => match basis {
            Basis::Bicrossproduct => "i*hbar*E",
            Basis::Standard => "i*hbar*E^(1/2)",
        },
        (ActionMode::PByX, _, _) => match basis {
            Basis::Bicrossproduct => "i*hbar",
            Basis::Standard => "i*hbar*E^(-1/2)",
        },
        _ => "i*hbar",
    }
}

/// All 16 generator entries of each of the four actions, both bases.
pub fn action_table_suite() -> SuiteReport {
    let mut r = SuiteReport::new("actions: generator tables");
    for basis in [Basis::Bicrossproduct, Basis::Standard] {
        let Some(h) = r.record(HopfPair::new(basis.into(), Metric::default()), || basis.to_string()) else { continue };
        for mode in ActionMode::ALL {
            for mu in 0..4u8 {
                for nu in 0..4u8 {
                    // `mu` indexes the actor, `nu` the target
                    let (a, b, p_index) = match mode.sides() {
                        (Side::X, _) => (Generator::X(mu), Generator::P(nu), nu),
                        _ => (Generator::P(mu), Generator::X(nu), mu),
                    };
                    let text = reference_action(basis, mode, mu, nu).replace('P', &format!("P{p_index}"));
                    let res = syntax::parse(&text)
                        .and_then(|want| Ok((want, h.act(&Element::generator(a), &Element::generator(b), mode)?)));
                    if let Some((want, got)) = r.record(res, || format!("{basis} {a} {} {b}", mode.symbol())) {
                        r.check(got == want, || format!("{basis}: {a} {} {b} = {got}, expected {want}", mode.symbol()));
                    }
                }
            }
        }
    }
    r
}

/// Every fixture against its re-derivation, both routes for every config,
/// and the literature forms of flagged entries against Jacobi.
pub fn golden_suite() -> SuiteReport {
    let mut r = SuiteReport::new("cross products: reference tables, routes, flagged entries");
    let Some(fixtures) = r.record(Fixture::all(), || "loading fixtures".into()) else { return r };
    let gens = phase_space_generators();
    for f in &fixtures {
        let res = derive_table(f.config).and_then(|t| verify_against(&t, f));
        if let Some(report) = r.record(res, || f.name.clone()) {
            r.check(report.is_clean(), || report.to_string());
        }
        if f.relations.iter().any(|e| e.literature.is_some()) {
            let res = f.table(true).and_then(|t| jacobi_violations(&t, &gens));
            if let Some(v) = r.record(res, || format!("{} literature table", f.name)) {
                r.check(!v.is_empty(), || format!("{}: literature forms unexpectedly satisfy Jacobi", f.name));
            }
        }
    }
    for c in SmashConfig::all() {
        let res = derive_table_via(c, Route::Direct).and_then(|d| Ok((d, derive_table_via(c, Route::Mirror)?)));
        if let Some((d, m)) = r.record(res, || c.to_string()) {
            let same = d.relations().iter().zip(m.relations()).all(|(a, b)| a.rhs == b.rhs)
                && d.table().exp_shift() == m.table().exp_shift();
            r.check(same, || format!("{c}: direct and mirror routes differ"));
        }
    }
    r
}

/// PX tables are canonical at `κ⁻¹ = 0`, XP tables carry the opposite sign.
pub fn limit_suite() -> SuiteReport {
    let mut r = SuiteReport::new("classical limit");
    for basis in [Basis::Bicrossproduct, Basis::Standard] {
        for (order, want) in [(Order::Px, Some(1)), (Order::Xp, Some(-1))] {
            let c = SmashConfig::new(basis, order);
            if let Some(t) = r.record(derive_table(c), || c.to_string()) {
                let rep = check_classical_limit(&t);
                r.check(rep.sign == want && rep.sectors_commute && rep.canonical == (want == Some(1)), || rep.to_string());
            }
        }
    }
    r
}

/// Grid residuals of every represented relation.
pub fn residual_suite(points: usize) -> SuiteReport {
    let mut r = SuiteReport::new("grid residuals");
    for (how, tol, n) in [(Differentiation::Spectral, 1e-6, points), (Differentiation::FiniteDifference(8), 1e-4, 2 * points)] {
        for case in Case::ALL {
            let res = (|| {
                let grid = Grid::new(n, 10.0)?;
                let ops = build_operators(case, grid, 1.0, 1.0, how)?;
                residuals(&ops, &derive_table(case.config())?, &smooth_states(grid)?)
            })();
            if let Some(rows) = r.record(res, || format!("{case} {how}")) {
                for row in rows {
                    r.check(row.residual <= tol, || format!("{case} {how} {}: {:.3e}", row.relation, row.residual));
                }
            }
        }
    }
    r
}

pub fn uncertainty_suite(seed: u64, states: usize) -> SuiteReport {
    let mut r = SuiteReport::new("uncertainty relations");
    let cfg = SweepConfig { seed, states, ..SweepConfig::default() };
    if let Some(rep) = r.record(represent::sweep(&cfg), || "sweep".into()) {
        for s in &rep.summaries {
            r.check(s.failures == 0, || format!("{} kappa={}: {} failures", s.case, s.kappa, s.failures));
            if s.kappa >= 1000.0 {
                r.check(s.bound_deviation <= 1e-3, || {
                    format!("{} kappa={}: (P1,x1) bound off hbar/2 by {:.3e}", s.case, s.kappa, s.bound_deviation)
                });
            }
        }
    }
    r
}

/// `parse(print(e)) = e` on random elements.
pub fn parser_suite(seed: u64, samples: usize) -> SuiteReport {
    let mut r = SuiteReport::new("parser round trip");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = phase_space_generators();
    for _ in 0..samples {
        let e = random_element(&mut rng, &letters, 4);
        let text = syntax::print(&e);
        match syntax::parse(&text) {
            Ok(back) => r.check(back == e, || format!("`{text}` parsed back as `{back}`")),
            Err(err) => r.check(false, || format!("`{text}`: {err}")),
        }
    }
    r
}

/// Every suite, in a fixed order.
pub fn run_all(opts: SelfTestOptions) -> Vec<SuiteReport> {
    vec![
        parser_suite(opts.seed, 200),
        algebra_suite(opts.seed, opts.triples),
        hopf_suite(opts.seed, opts.products),
        pairing_suite(),
        module_algebra_suite(),
        action_table_suite(),
        golden_suite(),
        limit_suite(),
        residual_suite(128),
        uncertainty_suite(opts.seed, opts.states),
    ]
}
