use super::{parse_scenario, Scenario};

/// A bundled scenario file.
#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub text: &'static str,
}

impl CorpusEntry {
    pub fn scenario(&self) -> Scenario {
        parse_scenario(self.text).expect("bundled scenarios parse")
    }
}

const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "poisson-plane",
        text: include_str!("../../corpus/poisson-plane.scn"),
    },
    CorpusEntry {
        name: "so3-courant",
        text: include_str!("../../corpus/so3-courant.scn"),
    },
    CorpusEntry {
        name: "weil-casimir",
        text: include_str!("../../corpus/weil-casimir.scn"),
    },
    CorpusEntry {
        name: "twisted-courant",
        text: include_str!("../../corpus/twisted-courant.scn"),
    },
];

pub fn corpus() -> &'static [CorpusEntry] {
    CORPUS
}

pub fn corpus_entry(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.name == name)
}
