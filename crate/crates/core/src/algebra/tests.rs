use proptest::prelude::*;

use super::*;
use crate::config::SmashConfig;
use crate::error::Error;
use crate::scalar::Scalar;

fn x(mu: u8) -> Element {
    Element::generator(Generator::X(mu))
}
fn p(mu: u8) -> Element {
    Element::generator(Generator::P(mu))
}
fn word(gs: &[Generator]) -> Element {
    Element::monomial(Monomial::new(gs.iter().copied()))
}
fn i_over_kappa(sign: i64) -> Scalar {
    Scalar::monomial(sign, 1, 1, 0, 1)
}
fn i_hbar(sign: i64) -> Scalar {
    Scalar::monomial(sign, 1, 1, 1, 0)
}

/// Hand transcription of the X ⋊ P bicrossproduct relations, used only as
/// an engine fixture here.
fn transcribed_xp_table() -> RelationTable {
    let cfg = SmashConfig::default();
    let mut b = RelationTable::builder(TableKind::PhaseSpace, cfg);
    for (g, rhs) in RelationTable::kappa_minkowski(1, cfg).rules().chain(RelationTable::momentum(cfg).rules()) {
        b = b.rule(g.0, g.1, rhs.clone());
    }
    for mu in 0..4u8 {
        for nu in 0..4u8 {
            let swapped = word(&[Generator::X(nu), Generator::P(mu)]);
            let extra = match (mu, nu) {
                (0, 0) => Element::scalar(i_hbar(-1)),
                (0, _) => Element::zero(),
                (_, 0) => p(mu).scale(&i_over_kappa(1)),
                (m, n) if m == n => Element::scalar(i_hbar(1)),
                _ => Element::zero(),
            };
            b = b.rule(Generator::P(mu), Generator::X(nu), &swapped + &extra);
        }
    }
    b.exp_shift(0, i_over_kappa(1)).build().unwrap()
}

fn minkowski() -> RelationTable {
    RelationTable::kappa_minkowski(1, SmashConfig::default())
}

#[test]
fn normalize_reorders_position_pair() {
    let got = normalize(&word(&[Generator::X(2), Generator::X(0)]), &minkowski()).unwrap();
    let expect = &word(&[Generator::X(0), Generator::X(2)]) - &x(2).scale(&i_over_kappa(1));
    assert_eq!(got, expect);
    assert_eq!(got.to_string(), "x0*x2 - i/kappa*x2");
}

#[test]
fn normalize_unit_and_zero() {
    for t in [minkowski(), transcribed_xp_table()] {
        assert_eq!(normalize(&Element::one(), &t).unwrap(), Element::one());
        assert!(normalize(&Element::zero(), &t).unwrap().is_zero());
    }
}

#[test]
fn unknown_generator_is_reported() {
    let err = normalize(&p(0), &minkowski()).unwrap_err();
    assert!(matches!(err, Error::UnknownGenerator(Generator::P(0), _)));
    let mom = RelationTable::momentum(SmashConfig::default());
    assert!(normalize(&x(1), &mom).is_err());
}

#[test]
fn multiply_examples() {
    let t = minkowski();
    assert_eq!(multiply(&x(0), &x(3), &t).unwrap(), word(&[Generator::X(0), Generator::X(3)]));
    let got = multiply(&x(3), &x(0), &t).unwrap();
    assert_eq!(got, &word(&[Generator::X(0), Generator::X(3)]) - &x(3).scale(&i_over_kappa(1)));
    let mom = RelationTable::momentum(SmashConfig::default());
    let a = Element::generator(Generator::exp(1, 2));
    let b = Element::generator(Generator::exp(-3, 2));
    assert_eq!(multiply(&a, &b, &mom).unwrap(), Element::generator(Generator::exp(-1, 1)));
    assert_eq!(multiply(&a, &Element::generator(Generator::exp(-1, 2)), &mom).unwrap(), Element::one());
}

#[test]
fn commutator_examples() {
    assert_eq!(commutator(&x(0), &x(1), &minkowski()).unwrap(), x(1).scale(&i_over_kappa(1)));
    let mom = RelationTable::momentum(SmashConfig::default());
    assert!(commutator(&p(0), &p(3), &mom).unwrap().is_zero());
}

/// Truncated `exp(-P_0/(κℏ))` written with explicit powers of `P_0`.
fn exp_series(order: usize) -> Element {
    let mut out = Element::zero();
    let mut coeff = Scalar::one();
    let mut w = Monomial::one();
    for n in 0..=order {
        out.add_term(w.clone(), coeff.clone());
        coeff = &coeff * &Scalar::monomial(-1, (n + 1) as i64, 0, -1, 1);
        w = w.concat(&Monomial::generator(Generator::P(0)));
    }
    out
}

#[test]
fn position_commutator_with_exponential_matches_series() {
    let t = transcribed_xp_table();
    let exact = commutator(&x(0), &Element::generator(Generator::e()), &t).unwrap();
    assert_eq!(exact, Element::generator(Generator::e()).scale(&i_over_kappa(-1)));

    // oracle: [x0, Σ_{n≤8} c_n P0^n] via [x0, P0] = iℏ only
    let oracle = commutator(&x(0), &exp_series(8), &t).unwrap();
    let coeff = exact.coefficient(&Monomial::generator(Generator::e()));
    assert_eq!(oracle, exp_series(7).scale(&coeff));
}

#[test]
fn classical_limit_examples() {
    let e = Element::generator(Generator::e()).scale(&i_hbar(1));
    assert_eq!(classical_limit(&e), Element::scalar(i_hbar(1)));
    assert!(classical_limit(&x(1).scale(&i_over_kappa(1))).is_zero());
    let xp = word(&[Generator::X(0), Generator::P(0)]);
    assert_eq!(classical_limit(&xp), xp);
}

#[test]
fn builder_rejects_bad_tables() {
    let cfg = SmashConfig::default();
    let incomplete = RelationTable::builder(TableKind::Configuration, cfg)
        .rule(Generator::X(1), Generator::X(0), word(&[Generator::X(0), Generator::X(1)]))
        .build();
    assert!(matches!(incomplete, Err(Error::InvalidTable(_))));

    let mut b = RelationTable::builder(TableKind::Momentum, cfg);
    for (g, rhs) in RelationTable::momentum(cfg).rules() {
        b = b.rule(g.0, g.1, rhs.clone());
    }
    // non-canonical right-hand side
    let bad = b.rule(Generator::P(1), Generator::P(0), word(&[Generator::P(1), Generator::P(0)])).build();
    assert!(bad.is_err());
}

#[test]
fn every_rule_decreases_measure() {
    for t in [minkowski(), RelationTable::momentum(SmashConfig::default()), transcribed_xp_table()] {
        for ((g, h), rhs) in t.rules() {
            let lhs = Monomial::new([*g, *h]).measure();
            for (m, _) in rhs.terms() {
                assert!(m.measure() < lhs);
            }
        }
    }
}

fn letter() -> impl Strategy<Value = Generator> {
    prop_oneof![
        (0u8..4).prop_map(Generator::X),
        (0u8..4).prop_map(Generator::P),
        prop_oneof![Just(Generator::e()), Just(Generator::exp(-1, 2)), Just(Generator::exp(1, 2))],
    ]
}

fn element(max_len: usize) -> impl Strategy<Value = Element> {
    proptest::collection::vec(
        (proptest::collection::vec(letter(), 0..=max_len), -3i64..=3, 0u32..2, -1i32..=1, 0i32..=1),
        1..=3,
    )
    .prop_map(|terms| {
        let mut e = Element::zero();
        for (w, n, i, h, k) in terms {
            e.add_term(Monomial::new(w), Scalar::monomial(n, 1, i, h, k));
        }
        e
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalize_is_idempotent_and_canonical(e in element(4)) {
        let t = transcribed_xp_table();
        let once = normalize(&e, &t).unwrap();
        prop_assert!(once.is_canonical());
        prop_assert_eq!(normalize(&once, &t).unwrap(), once);
    }

    #[test]
    fn normalize_is_linear(a in element(3), b in element(3)) {
        let t = transcribed_xp_table();
        let sum = normalize(&(&a + &b), &t).unwrap();
        prop_assert_eq!(sum, &normalize(&a, &t).unwrap() + &normalize(&b, &t).unwrap());
    }

    #[test]
    fn product_is_associative(a in element(2), b in element(2), c in element(2)) {
        let t = transcribed_xp_table();
        let left = multiply(&multiply(&a, &b, &t).unwrap(), &c, &t).unwrap();
        let right = multiply(&a, &multiply(&b, &c, &t).unwrap(), &t).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn jacobi_identity(a in element(2), b in element(2), c in element(2)) {
        let t = transcribed_xp_table();
        let ab_c = commutator(&commutator(&a, &b, &t).unwrap(), &c, &t).unwrap();
        let bc_a = commutator(&commutator(&b, &c, &t).unwrap(), &a, &t).unwrap();
        let ca_b = commutator(&commutator(&c, &a, &t).unwrap(), &b, &t).unwrap();
        prop_assert!((&(&ab_c + &bc_a) + &ca_b).is_zero());
    }

    #[test]
    fn commutator_is_antisymmetric(a in element(2), b in element(2)) {
        let t = transcribed_xp_table();
        prop_assert_eq!(commutator(&a, &b, &t).unwrap(), -commutator(&b, &a, &t).unwrap());
    }

    #[test]
    fn long_words_terminate(w in proptest::collection::vec(letter(), 0..=12)) {
        let t = transcribed_xp_table();
        prop_assert!(normalize(&Element::monomial(Monomial::new(w)), &t).is_ok());
    }
}
