use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical error: {0}")]
    Numerical(#[from] dualwave::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("raster error: {0}")]
    Raster(#[from] image::ImageError),
}

impl CliError {
    /// 2 for configuration problems, 3 for numerical failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) | CliError::Raster(_) => 1,
        }
    }
}
