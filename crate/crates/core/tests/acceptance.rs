//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use kappa_core::checks;
use kappa_core::hopf::{ActionMode, HopfPair, Metric};
use kappa_core::represent::{self, build_operators, residuals, smooth_states, Case, Differentiation, Grid, SweepConfig};
use kappa_core::smash::{
    check_classical_limit, derive_table, jacobi_violations, phase_space_generators, verify_against, DerivedTable, Fixture,
};
use kappa_core::syntax::parse;
use kappa_core::{Basis, CoproductVariant, Element, Generator, MetricSign, Order, SmashConfig};

const SEED: u64 = 20_241_014;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if let Some(limit) = limit {
        if took > limit {
            o = fail(format!("{}; took {:.2?}, limit {:.2?}", o.detail, took, limit));
        }
    }
    (o, took)
}

fn cfg(basis: Basis, order: Order) -> SmashConfig {
    SmashConfig::new(basis, order)
}

fn golden(name: &str, c: SmashConfig) -> Result<DerivedTable, String> {
    let t = derive_table(c).map_err(|e| e.to_string())?;
    let fixture = Fixture::by_name(name).map_err(|e| e.to_string())?;
    let report = verify_against(&t, &fixture).map_err(|e| e.to_string())?;
    if !report.is_clean() {
        return Err(report.to_string());
    }
    Ok(t)
}

fn criterion_1() -> Outcome {
    match golden("bicross-xp", cfg(Basis::Bicrossproduct, Order::Xp)) {
        Ok(t) => pass(format!("{} relations equal", t.relations().len())),
        Err(e) => fail(e),
    }
}

fn criterion_2() -> Outcome {
    let t = match golden("bicross-px", cfg(Basis::Bicrossproduct, Order::Px)) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    // the exponential must be one exact generator, not a series
    let want = Element::term(
        kappa_core::Monomial::generator(Generator::e()),
        kappa_core::Scalar::monomial(1, 1, 1, 1, 0),
    );
    for k in 1..4 {
        if t.relation(Generator::X(k), Generator::P(k)).map(|r| &r.rhs) != Some(&want) {
            return fail(format!("[x{k},P{k}] is not i*hbar*E"));
        }
    }
    pass("28 relations equal; [x_k,P_k] = i*hbar*E")
}

fn criterion_3() -> Outcome {
    let gens = phase_space_generators();
    let mut notes = Vec::new();
    for (name, order, flagged_lhs) in [("standard-xp", Order::Xp, "[x1,P1]"), ("standard-px", Order::Px, "[x0,P1]")] {
        let c = cfg(Basis::Standard, order);
        let t = match derive_table(c) {
            Ok(t) => t,
            Err(e) => return fail(e.to_string()),
        };
        let f = Fixture::by_name(name).unwrap();
        let report = verify_against(&t, &f).unwrap();
        if !report.is_clean() {
            return fail(report.to_string());
        }
        let Some(flag) = report.flagged.iter().find(|fl| fl.lhs == flagged_lhs) else {
            return fail(format!("{name}: {flagged_lhs} not flagged"));
        };
        if parse(&flag.literature).unwrap() == parse(&flag.derived).unwrap() {
            return fail(format!("{name}: flagged entry equals the derivation"));
        }
        // the flagged printed forms are not merely different: they are inconsistent
        if !jacobi_violations(t.table(), &gens).unwrap().is_empty() {
            return fail(format!("{name}: derived table violates Jacobi"));
        }
        if jacobi_violations(&f.table(true).unwrap(), &gens).unwrap().is_empty() {
            return fail(format!("{name}: printed forms satisfy Jacobi"));
        }
        notes.push(format!("{name} {} derived {} (printed {})", flag.lhs, flag.derived, flag.literature));
    }
    pass(notes.join("; "))
}

/// Published action table for the bicrossproduct basis; `mu` indexes the
/// actor and `nu` the target.
fn published_action(mode: ActionMode, mu: u8, nu: u8) -> String {
    let d = mu == nu;
    let s = match mode {
        ActionMode::XOnP => match (mu, nu) {
            (0, 0) => "-i*hbar".to_string(),
            (_, 0) | (0, _) => "0".into(),
            _ if d => "i*hbar*E".into(),
            _ => "0".into(),
        },
        ActionMode::POnX => match (mu, nu) {
            (0, 0) => "-i*hbar".into(),
            (_, 0) | (0, _) => "0".into(),
            _ if d => "i*hbar".into(),
            _ => "0".into(),
        },
        ActionMode::PByX => match (mu, nu) {
            (0, 0) => "-i*hbar".into(),
            (_, 0) => format!("i/kappa*P{mu}"),
            (0, _) => "0".into(),
            _ if d => "i*hbar".into(),
            _ => "0".into(),
        },
        ActionMode::XByP => match (mu, nu) {
            (0, 0) => "-i*hbar".into(),
            (_, 0) | (0, _) => "0".into(),
            _ if d => "i*hbar".into(),
            _ => "0".into(),
        },
    };
    s
}

fn criterion_4() -> Outcome {
    let h = HopfPair::new(Basis::Bicrossproduct.into(), Metric::default()).unwrap();
    let mut n = 0;
    for mode in ActionMode::ALL {
        for mu in 0..4u8 {
            for nu in 0..4u8 {
                let (a, b) = match mode {
                    ActionMode::XOnP | ActionMode::XByP => (Generator::X(mu), Generator::P(nu)),
                    _ => (Generator::P(mu), Generator::X(nu)),
                };
                let got = h.act(&Element::generator(a), &Element::generator(b), mode).unwrap();
                let want = parse(&published_action(mode, mu, nu)).unwrap();
                if got != want {
                    return fail(format!("{a} {} {b} = {got}, published {want}", mode.symbol()));
                }
                n += 1;
            }
        }
    }
    let standard = checks::action_table_suite();
    if !standard.passed() {
        return fail(standard.to_string());
    }
    pass(format!("{n} published entries exact; {} entries across both bases", standard.cases))
}

fn negated_sectors(flipped: &DerivedTable, base: &DerivedTable) -> bool {
    flipped.relations().iter().zip(base.relations()).all(|(f, b)| {
        if b.lhs.0.is_momentum() {
            f.rhs == b.rhs
        } else {
            f.rhs == -b.rhs.clone()
        }
    })
}

fn criterion_5() -> Outcome {
    let mut notes = Vec::new();
    for (order, base_name, flipped_name) in [
        (Order::Xp, "bicross-xp", "bicross-xp-flipped-metric"),
        (Order::Px, "bicross-px", "bicross-px-flipped-metric"),
    ] {
        let base = match golden(base_name, cfg(Basis::Bicrossproduct, order)) {
            Ok(t) => t,
            Err(e) => return fail(e),
        };
        let flipped = match golden(flipped_name, cfg(Basis::Bicrossproduct, order).with_metric(MetricSign::Flipped)) {
            Ok(t) => t,
            Err(e) => return fail(e),
        };
        if !negated_sectors(&flipped, &base) {
            return fail(format!("{flipped_name}: x-x and x-P sectors are not the negated defaults"));
        }
        let diff = verify_against(&flipped, &Fixture::by_name(base_name).unwrap()).unwrap();
        notes.push(format!("{flipped_name}: {} sign flips vs default", diff.mismatches.len()));
    }
    let transposed = cfg(Basis::Bicrossproduct, Order::Px).with_coproduct(CoproductVariant::Transposed);
    let t = match golden("bicross-px-transposed", transposed) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    let xp = derive_table(cfg(Basis::Bicrossproduct, Order::Xp)).unwrap();
    if !negated_sectors(&t, &xp) {
        return fail("transposed coproduct does not negate the X ⋊ P relations");
    }
    notes.push("transposed coproduct (P ⋊ X) = X ⋊ P with all signs flipped".into());
    pass(notes.join("; "))
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    for basis in [Basis::Bicrossproduct, Basis::Standard] {
        let px = check_classical_limit(&derive_table(cfg(basis, Order::Px)).unwrap());
        let xp = check_classical_limit(&derive_table(cfg(basis, Order::Xp)).unwrap());
        if !px.canonical {
            return fail(format!("{basis} PX limit not canonical:\n{px}"));
        }
        if xp.canonical || xp.sign != Some(-1) {
            return fail(format!("{basis} XP limit reported canonical:\n{xp}"));
        }
        // [x_mu, P_nu] -> i*hbar*g_mu_nu with g = (-1,1,1,1)
        for (lhs, want) in [("[x0,P0]", "-i*hbar"), ("[x1,P1]", "i*hbar"), ("[x0,P1]", "0")] {
            let got = px.relations.iter().find(|(l, _)| l == lhs).map(|(_, r)| r.as_str());
            if got != Some(want) {
                return fail(format!("{basis} PX {lhs} -> {got:?}"));
            }
        }
        notes.push(format!("{basis}: PX canonical, XP sign -1"));
    }
    pass(notes.join("; "))
}

fn suite(r: checks::SuiteReport) -> Outcome {
    if r.passed() {
        pass(format!("{} checks", r.cases))
    } else {
        fail(r.to_string())
    }
}

fn criterion_9() -> Outcome {
    let grid = Grid::new(128, 10.0).unwrap();
    let mut worst: f64 = 0.0;
    for case in Case::ALL {
        let ops = build_operators(case, grid, 1.0, 1.0, Differentiation::Spectral).unwrap();
        let table = derive_table(case.config()).unwrap();
        for r in residuals(&ops, &table, &smooth_states(grid).unwrap()).unwrap() {
            if r.residual > 1e-6 {
                return fail(format!("{case} {} = {}: residual {:.3e}", r.relation, r.target, r.residual));
            }
            worst = worst.max(r.residual);
        }
    }
    pass(format!("worst relative residual {worst:.2e}"))
}

fn criterion_10() -> Outcome {
    let cfg = SweepConfig { kappas: vec![0.5, 1.0, 10.0, 1000.0], states: 100, seed: SEED, ..SweepConfig::default() };
    let report = match represent::sweep(&cfg) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let mut checks = 0;
    let mut worst = f64::INFINITY;
    for s in &report.summaries {
        if s.failures > 0 {
            return fail(format!("{} kappa={}: {} failures\n{report}", s.case, s.kappa, s.failures));
        }
        if s.kappa == 1000.0 && s.bound_deviation > 1e-3 {
            return fail(format!("{} kappa=1000: (P1,x1) bound off hbar/2 by {:.3e}", s.case, s.bound_deviation));
        }
        checks += s.checks;
        worst = worst.min(s.worst_relative_margin);
    }
    let limit = report.summaries.iter().filter(|s| s.kappa == 1000.0).map(|s| s.bound_deviation).fold(0.0, f64::max);
    pass(format!("{checks} inequalities, worst relative margin {worst:.2e}, kappa=1000 bound within {limit:.1e} of hbar/2"))
}

fn main() -> ExitCode {
    let second = Some(Duration::from_secs(1));
    let half_minute = Some(Duration::from_secs(30));
    let criteria: Vec<(&str, Option<Duration>, Box<dyn FnOnce() -> Outcome>)> = vec![
        ("golden derivation, bicrossproduct X ⋊ P", second, Box::new(criterion_1)),
        ("golden derivation, bicrossproduct P ⋊ X", second, Box::new(criterion_2)),
        ("golden derivation, standard basis, flagged entries derived", None, Box::new(criterion_3)),
        ("action tables", None, Box::new(criterion_4)),
        ("metric flip and transposed coproduct", None, Box::new(criterion_5)),
        ("classical limit", None, Box::new(criterion_6)),
        ("Hopf axioms", None, Box::new(|| suite(checks::hopf_suite(SEED, 200)))),
        ("associativity, Jacobi, idempotence", None, Box::new(|| suite(checks::algebra_suite(SEED, 500)))),
        ("grid commutator residuals", half_minute, Box::new(criterion_9)),
        ("uncertainty inequalities", None, Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let (o, took) = timed(limit, f);
        let tag = if o.ok { "PASS" } else { "FAIL" };
        println!("[{tag}] {:>2} {name} ({:.2?}): {}", i + 1, took, o.detail);
        failed += usize::from(!o.ok);
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
