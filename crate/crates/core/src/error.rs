use crate::dsl::Diagnostic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid bench:{}", render(.0))]
    InvalidBench(Vec<Diagnostic>),

    #[error("unknown detector `{0}`")]
    UnknownDetector(String),

    #[error("unknown port `{0}`")]
    UnknownPort(String),

    #[error("`{0}` and `{1}` are not a cross-party pair")]
    NotCrossParty(String, String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("sampling configuration: {0}")]
    Config(String),

    #[error("degenerate correlation: {0}")]
    Degenerate(String),

    #[error("node `{node}`: {message}")]
    Element { node: String, message: String },
}

fn render(diags: &[Diagnostic]) -> String {
    diags.iter().map(|d| format!("\n  {d}")).collect()
}
