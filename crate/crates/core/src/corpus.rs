//! The bundled link corpus: PD files plus an index of expected values.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::diagram::{parse_pd, LinkDiagram, SingularLink};
use crate::error::{Error, Result};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Stated in the published literature.
    Published,
    /// Immediate from the definitions.
    Definition,
    /// Computed along two independent routes that agree.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub value: String,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

/// What a singular fixture is for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// Inter-component points on a one-color link; `(-1)^lk` jumps by `±2^k`.
    Parity,
    /// Three same-component points realizing the `α_2` jump formula.
    Jump,
    /// Self-crossing points, one color per component.
    Kl,
    /// Arbitrary points, one color.
    Mono,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub file: String,
    /// Overrides the coloring stored in the file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyKind>,
    #[serde(default)]
    pub tags: Vec<String>,
    #[serde(default)]
    pub expected: BTreeMap<String, Expected>,
    /// Diagram text, filled in on load.
    #[serde(skip)]
    pub text: String,
}

impl CorpusEntry {
    pub fn diagram(&self) -> Result<LinkDiagram> {
        let d = parse_pd(&self.text)?.with_name(&self.name);
        match &self.colors {
            Some(c) => d.recolor(c),
            None => Ok(d),
        }
    }

    pub fn singular(&self) -> Result<SingularLink> {
        Ok(SingularLink::new(self.diagram()?))
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub schema: String,
    pub entries: Vec<CorpusEntry>,
}

pub const CORPUS_SCHEMA: &str = "linkinv.corpus/1";

macro_rules! bundled_files {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name)))),*]
    };
}

const FILES: &[(&str, &str)] = bundled_files![
    "borromean.pd",
    "chain-h3.pd",
    "chain-h4.pd",
    "figure-eight.pd",
    "hopf-chain3.pd",
    "hopf-neg.pd",
    "hopf-pos.pd",
    "hopf-sum-trefoil.pd",
    "jump-d.pd",
    "jump.pd",
    "kl-cinquefoil-clasp.pd",
    "kl-cinquefoil.pd",
    "kl-figure-eight.pd",
    "kl-trefoil-clasp.pd",
    "kl-trefoil-clasp3.pd",
    "kl-whitehead.pd",
    "mono-borromean.pd",
    "mono-chain-h3.pd",
    "mono-figure-eight.pd",
    "mono-hopf.pd",
    "mono-solomon.pd",
    "mono-trefoil.pd",
    "mono-whitehead.pd",
    "parity-k0.pd",
    "parity-k1.pd",
    "parity-k2.pd",
    "parity-k3.pd",
    "parity-k4.pd",
    "solomon-sum-trefoil.pd",
    "solomon.pd",
    "trefoil-clasp.pd",
    "trefoil-left.pd",
    "trefoil-right.pd",
    "unknot.pd",
    "unlink2.pd",
    "unlink3.pd",
    "whitehead-sum-figure-eight.pd",
    "whitehead.pd",
];

const INDEX: &str = include_str!("../corpus/corpus.json");

impl Corpus {
    /// The corpus compiled into the library.
    pub fn bundled() -> Self {
        Self::from_index(INDEX, |file| {
            FILES
                .iter()
                .find(|(n, _)| *n == file)
                .map(|(_, t)| t.to_string())
                .ok_or_else(|| Error::InvalidDiagram(format!("no bundled file {}", file)))
        })
        .expect("bundled corpus is valid")
    }

    /// Loads `corpus.json` and its PD files from a directory.
    pub fn load(dir: &Path) -> Result<Self> {
        let index = std::fs::read_to_string(dir.join("corpus.json"))
            .map_err(|e| Error::InvalidDiagram(format!("cannot read {}: {}", dir.join("corpus.json").display(), e)))?;
        Self::from_index(&index, |file| {
            std::fs::read_to_string(dir.join(file))
                .map_err(|e| Error::InvalidDiagram(format!("cannot read {}: {}", dir.join(file).display(), e)))
        })
    }

    fn from_index(index: &str, read: impl Fn(&str) -> Result<String>) -> Result<Self> {
        let mut c: Corpus = serde_json::from_str(index).map_err(|e| Error::Parse {
            pos: 0,
            msg: format!("corpus index: {}", e),
        })?;
        if c.schema != CORPUS_SCHEMA {
            return Err(Error::Precondition(format!("unsupported corpus schema {}", c.schema)));
        }
        for e in &mut c.entries {
            let named = |err: Error| Error::InvalidDiagram(format!("corpus entry `{}` ({}): {}", e.name, e.file, err));
            e.text = read(&e.file).map_err(named)?;
            e.diagram().map_err(named)?;
        }
        Ok(c)
    }

    pub fn get(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Classical (non-singular) entries.
    pub fn links(&self) -> impl Iterator<Item = &CorpusEntry> {
        self.entries.iter().filter(|e| e.family.is_none())
    }

    pub fn families(&self, kind: FamilyKind) -> impl Iterator<Item = &CorpusEntry> {
        self.entries.iter().filter(move |e| e.family == Some(kind))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_corpus_parses() {
        let c = Corpus::bundled();
        assert_eq!(c.entries.len(), FILES.len());
        for e in &c.entries {
            let d = e.diagram().unwrap();
            if e.family.is_none() {
                assert!(d.singular_crossings().is_empty(), "{}", e.name);
            }
        }
    }
}
