use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("group closure exceeded {limit} elements ({partial} found so far)")]
    GroupTooLarge { limit: usize, partial: usize },

    #[error("cone is not canonical: box point of height {height} below 1")]
    NotCanonical { height: String },

    #[error("cone is not Gorenstein")]
    NotGorenstein,

    #[error("group is not abelian")]
    NonAbelian,

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}
