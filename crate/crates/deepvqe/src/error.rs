use thiserror::Error;

/// Crate-wide error type.
#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("element {0} has no native basis; produce an FCIDUMP with an external code and ingest it")]
    UnsupportedElement(String),

    #[error("overlap matrix is near-singular (eigenvalue {0:.3e} <= 1e-10)")]
    LinearDependence(f64),

    #[error("SCF did not converge in {iterations} iterations (last energy {last_energy:.10} Ha)")]
    ScfNoConvergence { iterations: usize, last_energy: f64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("qubit count mismatch: {0} vs {1}")]
    QubitMismatch(usize, usize),

    #[error("spin-orbital ordering is not a bijection")]
    OrderingNotBijective,

    #[error("operator acts outside the given qubit subset")]
    SupportOutsideSubset,

    #[error("no interaction terms: subsystems are fully decoupled")]
    NoInteractions,

    #[error("eigensolver did not converge: residual {residual:.3e} after {iterations} iterations")]
    SolverNoConvergence { residual: f64, iterations: usize },

    #[error("qubit budget 2^{budget} is below the starting-vector span {span}")]
    BudgetBelowStartSpan { budget: usize, span: usize },

    #[error("product dimension {dim} exceeds the configured budget {budget}")]
    DimensionOverBudget { dim: usize, budget: usize },

    #[error("strategy mismatch: {0}")]
    StrategyMismatch(String),

    #[error("projected factor is not normal (deviation {0:.3e}); projection bug upstream")]
    NonNormalFactor(f64),

    #[error("degenerate correlation-energy denominator at x={0}")]
    DegenerateDenominator(f64),

    #[error("variational sandwich violated at x={x}, strategy {strategy}: fci={fci:.10}, deep={deep:.10}, combined={combined:.10}")]
    SandwichViolation {
        x: f64,
        strategy: String,
        fci: f64,
        deep: f64,
        combined: f64,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
