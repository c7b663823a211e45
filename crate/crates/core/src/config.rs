//! Construction flags shared by the Hopf, cross-product and table layers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Which κ-Poincaré generator basis fixes `Δ(P_k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    #[default]
    #[serde(rename = "bicross")]
    Bicrossproduct,
    Standard,
}

/// Factor order of the cross product: `X ⋊ P` or `P ⋊ X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    Xp,
    #[default]
    Px,
}

/// Metric signature convention of the duality pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricSign {
    /// `g = diag(-1, 1, 1, 1)`
    #[default]
    Standard,
    /// `g = diag(1, -1, -1, -1)`
    Flipped,
}

/// Whether the legs of `Δ(P_k)` are swapped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoproductVariant {
    #[default]
    Direct,
    Transposed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct SmashConfig {
    pub basis: Basis,
    pub order: Order,
    pub metric: MetricSign,
    pub coproduct: CoproductVariant,
}

impl SmashConfig {
    pub fn new(basis: Basis, order: Order) -> Self {
        SmashConfig { basis, order, ..Default::default() }
    }

    pub fn with_metric(mut self, metric: MetricSign) -> Self {
        self.metric = metric;
        self
    }

    pub fn with_coproduct(mut self, coproduct: CoproductVariant) -> Self {
        self.coproduct = coproduct;
        self
    }

    /// All sixteen flag combinations in a fixed order.
    pub fn all() -> Vec<SmashConfig> {
        let mut out = Vec::with_capacity(16);
        for basis in [Basis::Bicrossproduct, Basis::Standard] {
            for order in [Order::Xp, Order::Px] {
                for metric in [MetricSign::Standard, MetricSign::Flipped] {
                    for coproduct in [CoproductVariant::Direct, CoproductVariant::Transposed] {
                        out.push(SmashConfig { basis, order, metric, coproduct });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for SmashConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "basis={} order={} metric={} coproduct={}", self.basis, self.order, self.metric, self.coproduct)
    }
}

macro_rules! flag_strings {
    ($ty:ty, $what:literal, $( $variant:path => [$canon:literal $(, $alias:literal)*] ),+ $(,)?) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let s = match self { $( $variant => $canon ),+ };
                f.write_str(s)
            }
        }

        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self, Error> {
                match s.to_ascii_lowercase().as_str() {
                    $( $canon $(| $alias)* => Ok($variant), )+
                    other => Err(Error::InvalidFlag { flag: $what, value: other.to_string() }),
                }
            }
        }
    };
}

flag_strings!(Basis, "basis",
    Basis::Bicrossproduct => ["bicross", "bicrossproduct"],
    Basis::Standard => ["standard"],
);
flag_strings!(Order, "order",
    Order::Xp => ["xp"],
    Order::Px => ["px"],
);
flag_strings!(MetricSign, "metric",
    MetricSign::Standard => ["standard", "default"],
    MetricSign::Flipped => ["flipped"],
);
flag_strings!(CoproductVariant, "coproduct",
    CoproductVariant::Direct => ["direct"],
    CoproductVariant::Transposed => ["transposed"],
);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_documented_choice() {
        let c = SmashConfig::default();
        assert_eq!(c.basis, Basis::Bicrossproduct);
        assert_eq!(c.order, Order::Px);
        assert_eq!(c.metric, MetricSign::Standard);
        assert_eq!(c.coproduct, CoproductVariant::Direct);
    }

    #[test]
    fn flag_parsing() {
        assert_eq!("BICROSS".parse::<Basis>().unwrap(), Basis::Bicrossproduct);
        assert_eq!("xp".parse::<Order>().unwrap(), Order::Xp);
        assert!("diagonal".parse::<MetricSign>().is_err());
        assert_eq!(SmashConfig::all().len(), 16);
    }
}
