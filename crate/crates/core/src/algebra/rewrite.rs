use std::collections::btree_map::{BTreeMap, Entry};

use super::{Element, Monomial, RelationTable};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Upper bound on single-pair rewrites in one call.
pub const REWRITE_LIMIT: usize = 2_000_000;

/// Normal-orders `e` with the rules of `t`.
///
/// Strategy: repeatedly rewrite the leftmost out-of-order adjacent pair of
/// the smallest pending word; equal words are merged before they are
/// expanded further.
pub fn normalize(e: &Element, t: &RelationTable) -> Result<Element> {
    for g in e.generators() {
        if !t.contains(g) {
            return Err(Error::UnknownGenerator(g, t.kind().to_string()));
        }
    }
    let mut pending: BTreeMap<Monomial, Scalar> = e.clone().into_terms();
    let mut out = Element::zero();
    let mut steps = 0usize;
    while let Some((word, coeff)) = pending.pop_first() {
        let Some(at) = word.first_disorder() else {
            out.add_term(word, coeff);
            continue;
        };
        steps += 1;
        if steps > REWRITE_LIMIT {
            return Err(Error::RewriteLimit(REWRITE_LIMIT));
        }
        let letters = word.letters();
        let rhs = t.rewrite_pair(letters[at], letters[at + 1])?;
        for (m, c) in rhs.terms() {
            let value = &coeff * c;
            match pending.entry(word.splice_pair(at, m)) {
                Entry::Occupied(mut slot) => {
                    *slot.get_mut() += &value;
                    // cancelled words are dropped before they expand further
                    if slot.get().is_zero() {
                        slot.remove();
                    }
                }
                Entry::Vacant(slot) => {
                    if !value.is_zero() {
                        slot.insert(value);
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn multiply(a: &Element, b: &Element, t: &RelationTable) -> Result<Element> {
    normalize(&a.mul_free(b), t)
}

/// `[a, b] = ab - ba`, normal-ordered.
pub fn commutator(a: &Element, b: &Element, t: &RelationTable) -> Result<Element> {
    normalize(&(&a.mul_free(b) - &b.mul_free(a)), t)
}

pub fn classical_limit(e: &Element) -> Element {
    e.classical_limit()
}
