use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::inventory::{LabelInventory, TargetClass};

/// Number of tab-separated fields on a token line.
pub const N_COLUMNS: usize = 19;

/// Membership of a token in a strong multiword expression: `group:position`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MweSlot {
    pub group: usize,
    pub position: usize,
}

impl fmt::Display for MweSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.group, self.position)
    }
}

impl FromStr for MweSlot {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (g, p) = s
            .split_once(':')
            .ok_or_else(|| format!("expected group:position, found {s:?}"))?;
        let parse = |x: &str| {
            x.parse::<usize>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| format!("expected positive integer in smwe, found {x:?}"))
        };
        Ok(MweSlot {
            group: parse(g)?,
            position: parse(p)?,
        })
    }
}

/// One token line. Label columns keep their raw text (including any `p.`
/// prefix) so that writing reproduces the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub id: usize,
    pub form: String,
    pub lemma: String,
    pub upos: String,
    pub xpos: String,
    pub feats: String,
    pub head: usize,
    pub deprel: String,
    pub deps: String,
    pub misc: String,
    pub smwe: Option<MweSlot>,
    pub lexcat: Option<String>,
    pub lexlemma: Option<String>,
    pub ss: Option<String>,
    pub ss2: Option<String>,
    pub wmwe: Option<String>,
    pub wcat: Option<String>,
    pub wlemma: Option<String>,
    pub lextag: String,
}

impl Token {
    /// A token with only the UD basics filled in.
    pub fn new(id: usize, form: impl Into<String>, lemma: impl Into<String>) -> Self {
        Token {
            id,
            form: form.into(),
            lemma: lemma.into(),
            upos: "_".into(),
            xpos: "_".into(),
            feats: "_".into(),
            head: 0,
            deprel: "_".into(),
            deps: "_".into(),
            misc: "_".into(),
            smwe: None,
            lexcat: None,
            lexlemma: None,
            ss: None,
            ss2: None,
            wmwe: None,
            wcat: None,
            wlemma: None,
            lextag: "O".into(),
        }
    }

    /// The token's construal, if both label columns are filled.
    pub fn construal(&self) -> Option<Construal> {
        match (&self.ss, &self.ss2) {
            (Some(a), Some(b)) => Some(Construal::new(strip_prefix(a), strip_prefix(b))),
            _ => None,
        }
    }

    pub fn is_mwe_continuation(&self) -> bool {
        self.smwe.is_some_and(|s| s.position > 1)
    }
}

/// Removes the `p.` namespace prefix used by published SNACS corpora.
pub fn strip_prefix(label: &str) -> &str {
    label.strip_prefix("p.").unwrap_or(label)
}

/// A line that is kept verbatim: a multiword-token range (`3-4`) or an
/// empty node (`5.1`). It is written before the token at `before`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpaqueLine {
    pub before: usize,
    pub line: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub sent_id: String,
    pub text: String,
    pub tokens: Vec<Token>,
    /// Raw comment lines, `#` included, in file order.
    pub comments: Vec<String>,
    pub opaque_lines: Vec<OpaqueLine>,
}

impl Sentence {
    /// Builds a sentence with `# sent_id` and `# text` comments.
    pub fn new(sent_id: impl Into<String>, tokens: Vec<Token>) -> Self {
        let sent_id = sent_id.into();
        let text = tokens
            .iter()
            .map(|t| t.form.as_str())
            .collect::<Vec<_>>()
            .join(" ");
        Sentence {
            comments: vec![format!("# sent_id = {sent_id}"), format!("# text = {text}")],
            sent_id,
            text,
            tokens,
            opaque_lines: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Token by 1-based id.
    pub fn token(&self, id: usize) -> Option<&Token> {
        id.checked_sub(1).and_then(|i| self.tokens.get(i))
    }
}

/// A parsed corpus. Immutable once built; share it behind `&` or `Arc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub sentences: Vec<Sentence>,
    pub inventory: Arc<LabelInventory>,
}

impl Corpus {
    pub fn new(sentences: Vec<Sentence>, inventory: Arc<LabelInventory>) -> Self {
        Corpus {
            sentences,
            inventory,
        }
    }

    pub fn n_tokens(&self) -> usize {
        self.sentences.iter().map(Sentence::len).sum()
    }

    /// All targets in corpus order. Extraction diagnostics are dropped.
    pub fn targets(&self) -> Vec<Target> {
        self.sentences
            .iter()
            .flat_map(|s| super::extract_targets(s, &self.inventory).0)
            .collect()
    }

    /// A new corpus containing the sentences selected by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Sentence) -> bool) -> Corpus {
        Corpus {
            sentences: self.sentences.iter().filter(|s| keep(s)).cloned().collect(),
            inventory: Arc::clone(&self.inventory),
        }
    }
}

/// Which side of a construal a label refers to.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum LabelDimension {
    Scene,
    Function,
    Construal,
}

impl LabelDimension {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Scene => "scene",
            Self::Function => "function",
            Self::Construal => "construal",
        }
    }
}

impl fmt::Display for LabelDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LabelDimension {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "scene" | "role" => Ok(Self::Scene),
            "function" | "fxn" => Ok(Self::Function),
            "construal" => Ok(Self::Construal),
            other => Err(format!("unknown label dimension {other:?}")),
        }
    }
}

/// A scene role / function pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Construal {
    pub scene: String,
    pub function: String,
}

impl Construal {
    pub fn new(scene: impl Into<String>, function: impl Into<String>) -> Self {
        Construal {
            scene: scene.into(),
            function: function.into(),
        }
    }

    /// Scene role and function are the same label.
    pub fn simple(label: impl Into<String>) -> Self {
        let label = label.into();
        Construal {
            function: label.clone(),
            scene: label,
        }
    }

    pub fn is_congruent(&self) -> bool {
        self.scene == self.function
    }

    /// The label for one dimension; `Construal` gives the rendered pair.
    pub fn label(&self, dimension: LabelDimension) -> String {
        match dimension {
            LabelDimension::Scene => self.scene.clone(),
            LabelDimension::Function => self.function.clone(),
            LabelDimension::Construal => self.to_string(),
        }
    }
}

impl fmt::Display for Construal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_congruent() {
            f.write_str(&self.scene)
        } else {
            write!(f, "{}~>{}", self.scene, self.function)
        }
    }
}

impl FromStr for Construal {
    type Err = String;

    /// Accepts `Scene`, `Scene~>Function`, `Scene↝Function`, each label
    /// optionally prefixed with `p.`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (scene, function) = match s.split_once("~>").or_else(|| s.split_once('↝')) {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, s),
        };
        let (scene, function) = (strip_prefix(scene), strip_prefix(function));
        if scene.is_empty() || function.is_empty() {
            return Err(format!("empty label in construal {s:?}"));
        }
        Ok(Construal::new(scene, function))
    }
}

/// A labeled annotation target: one token, or a contiguous MWE.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Target {
    pub sent_id: String,
    /// 1-based token ids, ascending and contiguous.
    pub span: Vec<usize>,
    pub lemma: String,
    pub klass: TargetClass,
    pub construal: Construal,
}

impl Target {
    pub fn first(&self) -> usize {
        self.span[0]
    }

    pub fn last(&self) -> usize {
        *self.span.last().expect("target span is non-empty")
    }
}
