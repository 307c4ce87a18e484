use thiserror::Error;

/// Errors produced anywhere in the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lexical error at {line}:{col}: {message}")]
    Lexical {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("channel constant #{0} is not in the declared universe")]
    OutsideUniverse(String),
    #[error("process is not closed: {0}")]
    OpenProcess(String),
    #[error("unbound variable {0}")]
    UnboundVariable(String),
    #[error("exploration budget of {budget} configurations exhausted")]
    BudgetExhausted { budget: usize },
    #[error("enumeration of {size} cases exceeds the cap of {cap}")]
    EnumerationCap { size: usize, cap: usize },
    #[error("comparison refused: {0}")]
    Incomparable(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("generator exhausted: {0}")]
    GeneratorExhausted(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
