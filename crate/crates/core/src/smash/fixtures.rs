//! Reference commutator tables, transcribed by hand and stored as JSON.
//!
//! The files are compiled in; setting [`FIXTURE_DIR_ENV`] to a directory
//! makes every `*.json` file there replace the built-in set.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, Generator, Monomial, RelationTable, TableKind};
use crate::config::SmashConfig;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::syntax;

pub const FIXTURE_DIR_ENV: &str = "KAPPA_FIXTURE_DIR";

const BUILTIN: &[&str] = &[
    include_str!("../../fixtures/bicross-xp.json"),
    include_str!("../../fixtures/bicross-px.json"),
    include_str!("../../fixtures/standard-xp.json"),
    include_str!("../../fixtures/standard-px.json"),
    include_str!("../../fixtures/bicross-xp-flipped-metric.json"),
    include_str!("../../fixtures/bicross-px-flipped-metric.json"),
    include_str!("../../fixtures/bicross-px-transposed.json"),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureRelation {
    pub lhs: String,
    pub rhs: String,
    /// The form found in the literature, when it differs from `rhs`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub literature: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub config: SmashConfig,
    pub relations: Vec<FixtureRelation>,
}

impl Fixture {
    pub fn from_json(text: &str) -> Result<Fixture> {
        serde_json::from_str(text).map_err(|e| Error::BadFixture { name: "<json>".into(), message: e.to_string() })
    }

    /// The built-in set, or the directory named by [`FIXTURE_DIR_ENV`].
    pub fn all() -> Result<Vec<Fixture>> {
        match std::env::var_os(FIXTURE_DIR_ENV) {
            Some(dir) => Fixture::load_dir(Path::new(&dir)),
            None => BUILTIN.iter().map(|t| Fixture::from_json(t)).collect(),
        }
    }

    pub fn load_dir(dir: &Path) -> Result<Vec<Fixture>> {
        let io = |e: std::io::Error| Error::Io(format!("{}: {e}", dir.display()));
        let mut paths: Vec<_> = std::fs::read_dir(dir)
            .map_err(io)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        paths
            .iter()
            .map(|p| {
                let text = std::fs::read_to_string(p).map_err(io)?;
                Fixture::from_json(&text).map_err(|e| match e {
                    Error::BadFixture { message, .. } => Error::BadFixture { name: p.display().to_string(), message },
                    other => other,
                })
            })
            .collect()
    }

    pub fn for_config(cfg: SmashConfig) -> Result<Fixture> {
        Fixture::all()?
            .into_iter()
            .find(|f| f.config == cfg)
            .ok_or_else(|| Error::MissingFixture(cfg.to_string()))
    }

    pub fn by_name(name: &str) -> Result<Fixture> {
        Fixture::all()?.into_iter().find(|f| f.name == name).ok_or_else(|| Error::MissingFixture(name.to_string()))
    }

    fn bad(&self, message: String) -> Error {
        Error::BadFixture { name: self.name.clone(), message }
    }

    /// Parsed `([a,b], rhs)` entries; `literature` selects the printed forms.
    pub fn parsed(&self, literature: bool) -> Result<Vec<((Generator, Generator), Element)>> {
        self.relations
            .iter()
            .map(|r| {
                let lhs = parse_bracket(&r.lhs).map_err(|m| self.bad(m))?;
                let text = if literature { r.literature.as_deref().unwrap_or(&r.rhs) } else { &r.rhs };
                let rhs = syntax::parse(text).map_err(|e| self.bad(format!("{}: {e}", r.lhs)))?;
                Ok((lhs, rhs))
            })
            .collect()
    }

    /// Builds a phase-space table straight from the stored commutators.
    ///
    /// Exponential shifts follow from `[x_ν, P_0]`, which must be a scalar:
    /// `[x_ν, E^(r)] = -(r/(κℏ)) [x_ν, P_0] E^(r)`.
    pub fn table(&self, literature: bool) -> Result<RelationTable> {
        let mut b = RelationTable::builder(TableKind::PhaseSpace, self.config);
        for ((g, h), rhs) in self.parsed(literature)? {
            let (lo, hi, c) = if g < h { (g, h, rhs) } else { (h, g, -rhs) };
            // hi·lo = lo·hi - [lo, hi]
            b = b.rule(hi, lo, &Element::monomial(Monomial::new([lo, hi])) - &c);
            if let (Generator::X(nu), Generator::P(0)) = (lo, hi) {
                let s = c.as_scalar().ok_or_else(|| self.bad(format!("[x{nu},P0] is not a scalar")))?;
                b = b.exp_shift(nu, &s * &Scalar::monomial(1, 1, 0, -1, 1));
            }
        }
        b.build().map_err(|e| self.bad(e.to_string()))
    }
}

fn parse_bracket(s: &str) -> std::result::Result<(Generator, Generator), String> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| format!("`{s}` is not of the form [a,b]"))?;
    let (a, b) = inner.split_once(',').ok_or_else(|| format!("`{s}` has no comma"))?;
    let g = syntax::parse_generator(a.trim()).map_err(|e| e.to_string())?;
    let h = syntax::parse_generator(b.trim()).map_err(|e| e.to_string())?;
    Ok((g, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Basis, Order};

    #[test]
    fn builtin_fixtures_parse_and_build() {
        let all = Fixture::all().unwrap();
        assert_eq!(all.len(), BUILTIN.len());
        for f in &all {
            assert_eq!(f.relations.len(), 28, "{}", f.name);
            f.table(false).unwrap();
            f.table(true).unwrap();
        }
    }

    #[test]
    fn lookup_by_config() {
        let f = Fixture::for_config(SmashConfig::new(Basis::Bicrossproduct, Order::Px)).unwrap();
        assert_eq!(f.name, "bicross-px");
        let missing = SmashConfig::new(Basis::Standard, Order::Px).with_metric(crate::config::MetricSign::Flipped);
        assert!(matches!(Fixture::for_config(missing), Err(Error::MissingFixture(_))));
    }

    #[test]
    fn directory_override() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("a.json"), BUILTIN[0]).unwrap();
        std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
        let loaded = Fixture::load_dir(dir.path()).unwrap();
        assert_eq!(loaded.len(), 1);
        std::fs::write(dir.path().join("b.json"), "{").unwrap();
        assert!(matches!(Fixture::load_dir(dir.path()), Err(Error::BadFixture { .. })));
    }

    #[test]
    fn brackets() {
        assert_eq!(parse_bracket("[x0, P1]").unwrap(), (Generator::X(0), Generator::P(1)));
        assert!(parse_bracket("x0,P1").is_err());
    }
}
