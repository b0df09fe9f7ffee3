use std::fmt;

use serde::Serialize;

/// The invariant or format rule a diagnostic reports on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    WrongColumnCount,
    BadField,
    NonConsecutiveIds,
    UnpairedConstrual,
    UnknownLabel,
    SpecialMismatch,
    LabelOnMweContinuation,
    MalformedMwe,
    DuplicateSentId,
    UnknownTargetLemma,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::WrongColumnCount => "wrong column count",
            Rule::BadField => "bad field",
            Rule::NonConsecutiveIds => "non-consecutive ids",
            Rule::UnpairedConstrual => "unpaired construal",
            Rule::UnknownLabel => "unknown label",
            Rule::SpecialMismatch => "special label mismatch",
            Rule::LabelOnMweContinuation => "label on mwe continuation",
            Rule::MalformedMwe => "malformed mwe",
            Rule::DuplicateSentId => "duplicate sent_id",
            Rule::UnknownTargetLemma => "unknown target lemma",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub rule: Rule,
    pub severity: Severity,
    /// 1-based line in the source file, when known.
    pub line: Option<usize>,
    pub sent_id: Option<String>,
    pub token_id: Option<usize>,
    pub message: String,
}

impl Diagnostic {
    pub fn error(rule: Rule, message: impl Into<String>) -> Self {
        Diagnostic {
            rule,
            severity: Severity::Error,
            line: None,
            sent_id: None,
            token_id: None,
            message: message.into(),
        }
    }

    pub fn warning(rule: Rule, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            ..Self::error(rule, message)
        }
    }

    pub fn at_line(mut self, line: Option<usize>) -> Self {
        self.line = line;
        self
    }

    pub fn in_sentence(mut self, sent_id: &str) -> Self {
        self.sent_id = Some(sent_id.to_owned());
        self
    }

    pub fn at_token(mut self, id: usize) -> Self {
        self.token_id = Some(id);
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        if let Some(sent) = &self.sent_id {
            write!(f, "[{sent}")?;
            if let Some(tok) = self.token_id {
                write!(f, " token {tok}")?;
            }
            f.write_str("] ")?;
        }
        let level = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{level}: {}: {}", self.rule.name(), self.message)
    }
}
