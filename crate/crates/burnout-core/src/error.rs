use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("empty request: {0}")]
    EmptyRequest(&'static str),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("pole hit at recursion level {level}: {what}")]
    Pole { level: usize, what: String },

    #[error("precision budget exceeded: {required} bits required, cap is {cap}")]
    Precision { required: usize, cap: usize },

    #[error(
        "quadrature did not converge: estimate {estimate}, error bound {error_bound}, \
         tolerance {tolerance}"
    )]
    Quadrature {
        estimate: f64,
        error_bound: f64,
        tolerance: f64,
    },

    #[error("table too short: x = {x}, table extends to {x_max}")]
    TableTooShort { x: f64, x_max: f64 },

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("root solve failed: {0}")]
    Solver(String),
}

pub type Result<T> = std::result::Result<T, Error>;
