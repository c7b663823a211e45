use super::*;
use crate::config::{Basis, CoproductVariant, MetricSign};
use crate::syntax::parse;

fn cfg(basis: Basis, order: Order) -> SmashConfig {
    SmashConfig::new(basis, order)
}

fn golden(name: &str, c: SmashConfig) {
    let t = derive_table(c).unwrap();
    let report = verify_against(&t, &Fixture::by_name(name).unwrap()).unwrap();
    assert!(report.is_clean(), "{report}");
}

#[test]
fn bicross_tables_match_reference() {
    golden("bicross-xp", cfg(Basis::Bicrossproduct, Order::Xp));
    golden("bicross-px", cfg(Basis::Bicrossproduct, Order::Px));
}

#[test]
fn standard_tables_match_reference_with_flags() {
    for (name, order, flagged) in [("standard-xp", Order::Xp, "[x1,P1]"), ("standard-px", Order::Px, "[x0,P1]")] {
        let t = derive_table(cfg(Basis::Standard, order)).unwrap();
        let report = verify_against_reference(&t).unwrap();
        assert_eq!(report.fixture, name);
        assert!(report.is_clean(), "{report}");
        assert_eq!(report.flagged.len(), 3);
        assert!(report.flagged.iter().any(|f| f.lhs == flagged));
    }
}

#[test]
fn literature_forms_break_jacobi() {
    let gens = phase_space_generators();
    for name in ["standard-xp", "standard-px"] {
        let f = Fixture::by_name(name).unwrap();
        assert!(jacobi_violations(&f.table(false).unwrap(), &gens).unwrap().is_empty());
        assert!(!jacobi_violations(&f.table(true).unwrap(), &gens).unwrap().is_empty(), "{name}");
    }
}

#[test]
fn cross_relation_examples() {
    let xp = cfg(Basis::Bicrossproduct, Order::Xp);
    let got = cross_relation(Generator::P(2), Generator::X(2), xp).unwrap();
    assert_eq!(got, parse("x2*P2 + i*hbar").unwrap());
    let got = cross_relation(Generator::X(0), Generator::P(1), xp).unwrap();
    assert_eq!(got, parse("x0*P1 + i/kappa*P1").unwrap());
    let px = cfg(Basis::Bicrossproduct, Order::Px);
    let got = cross_relation(Generator::P(1), Generator::X(1), px).unwrap();
    assert_eq!(got, parse("x1*P1 - i*hbar*E").unwrap());
}

#[test]
fn non_cross_pair_is_rejected() {
    let c = SmashConfig::default();
    assert!(matches!(cross_relation(Generator::X(0), Generator::X(1), c), Err(Error::NotCrossPair(_))));
    assert!(matches!(cross_relation(Generator::P(0), Generator::e(), c), Err(Error::NotCrossPair(_))));
}

#[test]
fn metric_flip_negates_deformed_sectors() {
    for (order, name) in [(Order::Xp, "bicross-xp"), (Order::Px, "bicross-px")] {
        let c = cfg(Basis::Bicrossproduct, order).with_metric(MetricSign::Flipped);
        let t = derive_table(c).unwrap();
        assert!(verify_against_reference(&t).unwrap().is_clean());
        let diff = verify_against(&t, &Fixture::by_name(name).unwrap()).unwrap();
        assert!(!diff.mismatches.is_empty());
        for m in &diff.mismatches {
            assert_eq!(parse(&m.derived).unwrap(), -parse(&m.expected).unwrap(), "{}", m.lhs);
        }
    }
}

#[test]
fn transposed_coproduct_flips_signs() {
    let negated = |t: &DerivedTable, other: &DerivedTable| {
        t.relations().iter().zip(other.relations()).all(|(a, b)| a.rhs == -b.rhs.clone())
    };
    let xp = derive_table(cfg(Basis::Bicrossproduct, Order::Xp)).unwrap();
    let px = derive_table(cfg(Basis::Bicrossproduct, Order::Px)).unwrap();
    let px_t = derive_table(cfg(Basis::Bicrossproduct, Order::Px).with_coproduct(CoproductVariant::Transposed)).unwrap();
    let xp_t = derive_table(cfg(Basis::Bicrossproduct, Order::Xp).with_coproduct(CoproductVariant::Transposed)).unwrap();
    assert!(negated(&px_t, &xp));
    assert!(negated(&xp_t, &px));
    assert!(verify_against_reference(&px_t).unwrap().is_clean());
    assert!(matches!(verify_against_reference(&xp_t), Err(Error::MissingFixture(_))));
}

#[test]
fn routes_agree() {
    for c in SmashConfig::all() {
        let direct = derive_table_via(c, Route::Direct).unwrap();
        let mirror = derive_table_via(c, Route::Mirror).unwrap();
        for (a, b) in direct.relations().iter().zip(mirror.relations()) {
            assert_eq!(a.rhs, b.rhs, "{c}: {}", a.label());
        }
        assert_eq!(direct.table().exp_shift(), mirror.table().exp_shift(), "{c}");
    }
}

#[test]
fn sectors_agree_across_basis_and_order() {
    let sector = |t: &DerivedTable| -> Vec<Element> {
        t.relations().iter().filter(|r| r.lhs.0.is_position() == r.lhs.1.is_position()).map(|r| r.rhs.clone()).collect()
    };
    for metric in [MetricSign::Standard, MetricSign::Flipped] {
        for coproduct in [CoproductVariant::Direct, CoproductVariant::Transposed] {
            let configs: Vec<SmashConfig> = SmashConfig::all()
                .into_iter()
                .filter(|c| c.metric == metric && c.coproduct == coproduct)
                .collect();
            let first = sector(&derive_table(configs[0]).unwrap());
            for c in &configs[1..] {
                assert_eq!(sector(&derive_table(*c).unwrap()), first, "{c}");
            }
        }
    }
}

#[test]
fn every_derived_table_satisfies_jacobi() {
    let gens = phase_space_generators();
    for c in SmashConfig::all() {
        let t = derive_table(c).unwrap();
        let bad = jacobi_violations(t.table(), &gens).unwrap();
        assert!(bad.is_empty(), "{c}: {:?}", bad.first());
        assert!(t.relations().iter().all(|r| !r.provenance.is_empty()), "{c}");
    }
}

#[test]
fn exponential_shift_is_linear() {
    let t = derive_table(cfg(Basis::Standard, Order::Px)).unwrap();
    for (r, text) in [("1/2", "E^(1/2)"), ("-1/2", "E^(-1/2)")] {
        let got = t.commutator(&parse("x0").unwrap(), &parse(text).unwrap()).unwrap();
        // [x0, f(P0)] = f'(P0) [x0, P0] with [x0, P0] = -i*hbar
        let expect = parse(&format!("({r})*i/kappa*{text}")).unwrap();
        assert_eq!(got, expect);
    }
}

#[test]
fn classical_limits() {
    for basis in [Basis::Bicrossproduct, Basis::Standard] {
        let px = check_classical_limit(&derive_table(cfg(basis, Order::Px)).unwrap());
        assert!(px.canonical && px.sign == Some(1), "{px}");
        let xp = check_classical_limit(&derive_table(cfg(basis, Order::Xp)).unwrap());
        assert!(!xp.canonical && xp.sectors_commute && xp.sign == Some(-1), "{xp}");
    }
    let xp = check_classical_limit(&derive_table(cfg(Basis::Bicrossproduct, Order::Xp)).unwrap());
    let x1p1 = xp.relations.iter().find(|(l, _)| l == "[x1,P1]").unwrap();
    assert_eq!(x1p1.1, "-i*hbar");
}

#[test]
fn json_shape() {
    let t = derive_table(SmashConfig::default()).unwrap();
    let v = t.to_json();
    assert_eq!(v["config"]["basis"], "bicross");
    assert_eq!(v["relations"].as_array().unwrap().len(), 28);
    assert_eq!(v["relations"][27]["lhs"], "[x3,P3]");
    assert_eq!(v["relations"][27]["rhs"], "i*hbar*E");
    assert!(!v["relations"][27]["provenance"].as_array().unwrap().is_empty());
}
