use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("table is not a group: {0}")]
    InvalidTable(String),

    #[error("group order {order} exceeds the cap of {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("evaluation budget exceeded: the scan needs up to {required} products, budget is {budget}")]
    Budget { required: u128, budget: u64 },

    #[error("invalid permutation: {0}")]
    Permutation(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("no binding for variable x{0}")]
    MissingVariable(usize),

    #[error("invalid construction: {0}")]
    Construction(String),

    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
