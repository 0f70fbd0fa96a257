use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Model(#[from] hartmann_susy::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("malformed report: {0}")]
    Decode(String),
}

impl CliError {
    /// 2 for anything the user can fix by changing the invocation,
    /// 1 for failures during the computation itself.
    pub fn exit_code(&self) -> i32 {
        use hartmann_susy::Error as E;
        match self {
            CliError::Config(_) | CliError::Decode(_) => 2,
            CliError::Model(
                E::InvalidParameter { .. }
                | E::InconsistentQuantumNumbers(_)
                | E::NoPartner(_)
                | E::InvalidGrid(_),
            ) => 2,
            _ => 1,
        }
    }
}
