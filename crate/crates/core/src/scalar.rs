//! Exact coefficients: Gaussian rationals times integer powers of ℏ and κ⁻¹.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exponent key of one scalar term: `i^i_pow · ℏ^hbar · κ^(-kappa_inv)`.
///
/// `i_pow` is kept in `{0, 1}`; `i² = -1` is folded into the rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ScalarKey {
    pub i_pow: u8,
    pub hbar: i32,
    pub kappa_inv: i32,
}

impl ScalarKey {
    pub const ONE: ScalarKey = ScalarKey { i_pow: 0, hbar: 0, kappa_inv: 0 };

    /// Product of two keys plus the sign picked up from `i·i`.
    fn mul(self, other: ScalarKey) -> (ScalarKey, bool) {
        let i = self.i_pow + other.i_pow;
        let key = ScalarKey {
            i_pow: i % 2,
            hbar: self.hbar + other.hbar,
            kappa_inv: self.kappa_inv + other.kappa_inv,
        };
        (key, i >= 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<ScalarKey, BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::term(ScalarKey::ONE, BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn rational(q: BigRational) -> Self {
        Scalar::term(ScalarKey::ONE, q)
    }

    pub fn term(key: ScalarKey, q: BigRational) -> Self {
        let mut s = Scalar::zero();
        s.add_term(key, q);
        s
    }

    pub fn i() -> Self {
        Scalar::term(ScalarKey { i_pow: 1, hbar: 0, kappa_inv: 0 }, BigRational::one())
    }

    pub fn hbar() -> Self {
        Scalar::hbar_pow(1)
    }

    pub fn hbar_pow(m: i32) -> Self {
        Scalar::term(ScalarKey { i_pow: 0, hbar: m, kappa_inv: 0 }, BigRational::one())
    }

    /// `κ^(-n)`.
    pub fn kappa_inv_pow(n: i32) -> Self {
        Scalar::term(ScalarKey { i_pow: 0, hbar: 0, kappa_inv: n }, BigRational::one())
    }

    /// `i^a ℏ^m κ^(-n)` times `num/den`.
    pub fn monomial(num: i64, den: i64, i_pow: u32, hbar: i32, kappa_inv: i32) -> Self {
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        let mut s = Scalar::term(ScalarKey { i_pow: 0, hbar, kappa_inv }, q);
        for _ in 0..(i_pow % 4) {
            s = &s * &Scalar::i();
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&ScalarKey::ONE).is_some_and(|q| q.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ScalarKey, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single term if this scalar has exactly one.
    pub fn as_single(&self) -> Option<(ScalarKey, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, q)| (*k, q))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, key: ScalarKey, q: BigRational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, q: &BigRational) -> Scalar {
        if q.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(k, c)| (*k, c * q)).collect(),
        }
    }

    /// Multiplicative inverse of a single-term scalar.
    pub fn inverse(&self) -> Option<Scalar> {
        let (key, q) = self.as_single()?;
        let inv_key = ScalarKey { i_pow: key.i_pow, hbar: -key.hbar, kappa_inv: -key.kappa_inv };
        // 1/i = -i
        let q_inv = if key.i_pow == 1 { -q.recip() } else { q.recip() };
        Some(Scalar::term(inv_key, q_inv))
    }

    /// Largest power of κ⁻¹ among the terms.
    pub fn max_kappa_inv(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.kappa_inv).max()
    }

    /// Drops every term carrying κ⁻ⁿ with `n ≥ 1`.
    pub fn classical_limit(&self) -> Scalar {
        Scalar {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.kappa_inv <= 0)
                .map(|(k, q)| (*k, q.clone()))
                .collect(),
        }
    }

    /// Numerical value for given `ℏ` and `κ⁻¹`.
    pub fn to_complex(&self, hbar: f64, kappa_inv: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, q) in &self.terms {
            let q = q.to_f64().unwrap_or(f64::NAN);
            let mag = q * hbar.powi(k.hbar) * kappa_inv.powi(k.kappa_inv);
            acc += if k.i_pow == 1 { Complex64::new(0.0, mag) } else { Complex64::new(mag, 0.0) };
        }
        acc
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (k, q) in &rhs.terms {
            self.add_term(*k, q.clone());
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(k, q)| (*k, -q)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ka, qa) in &self.terms {
            for (kb, qb) in &rhs.terms {
                let (key, flip) = ka.mul(*kb);
                let q = qa * qb;
                out.add_term(key, if flip { -q } else { q });
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

fn pow_factor(name: &str, p: i32) -> String {
    if p == 1 {
        name.to_string()
    } else {
        format!("{name}^{p}")
    }
}

/// Renders one term by magnitude; the caller handles the sign.
/// `unit_elided` drops a bare `1` so the term can be glued to a word.
pub(crate) fn format_term_magnitude(key: &ScalarKey, q: &BigRational, unit_elided: bool) -> String {
    let num = q.numer().abs();
    let den = q.denom().clone();
    let mut top: Vec<String> = Vec::new();
    let mut bottom: Vec<String> = Vec::new();
    if !num.is_one() {
        top.push(num.to_string());
    }
    if key.i_pow == 1 {
        top.push("i".into());
    }
    if key.hbar > 0 {
        top.push(pow_factor("hbar", key.hbar));
    }
    if key.kappa_inv < 0 {
        top.push(pow_factor("kappa", -key.kappa_inv));
    }
    if !den.is_one() {
        bottom.push(den.to_string());
    }
    if key.kappa_inv > 0 {
        bottom.push(pow_factor("kappa", key.kappa_inv));
    }
    if key.hbar < 0 {
        bottom.push(pow_factor("hbar", -key.hbar));
    }
    let top_str = if top.is_empty() {
        if unit_elided && bottom.is_empty() {
            String::new()
        } else {
            "1".to_string()
        }
    } else {
        top.join("*")
    };
    match bottom.len() {
        0 => top_str,
        1 => format!("{top_str}/{}", bottom[0]),
        _ => format!("{top_str}/({})", bottom.join("*")),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, q)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{}", format_term_magnitude(k, q, false))?;
        }
        Ok(())
    }
}
