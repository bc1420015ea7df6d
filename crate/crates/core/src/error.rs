use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid CNOT: control {control} and target {target}")]
    InvalidGate { control: usize, target: usize },

    #[error("expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular over F2")]
    Singular,

    #[error("not a bitstring: {0:?}")]
    BadBitstring(String),

    #[error("constant (empty) term is not representable")]
    ConstantTerm,

    #[error("matrix is not square: {rows} rows, row {row} has {cols} columns")]
    NotSquare { rows: usize, row: usize, cols: usize },

    #[error("parity {parity} has weight {weight}, need at least {min}")]
    WeightTooLow { parity: String, weight: usize, min: usize },

    #[error("parity {0} was never placed on a wire")]
    Unplaced(String),

    #[error("gamma is zero but the circuit contains RZ gates")]
    ZeroGamma,

    #[error("{n} qubits exceeds the simulation limit of {max}")]
    TooManyQubits { n: usize, max: usize },

    #[error("circuit does not act diagonally: basis state {0} is not restored")]
    NotDiagonal(usize),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
