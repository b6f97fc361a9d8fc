use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed or out-of-range parameters.
    #[error("input error: {0}")]
    Input(String),
    /// A configured bound (desk-scale n, kernel parameters, shears) was hit.
    #[error("capability bound exceeded: {0}")]
    Capability(String),
    /// An identity that must hold did not; always a bug.
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! input_err {
    ($($arg:tt)*) => { $crate::error::Error::Input(alloc::format!($($arg)*)) };
}
macro_rules! capability_err {
    ($($arg:tt)*) => { $crate::error::Error::Capability(alloc::format!($($arg)*)) };
}
macro_rules! internal_err {
    ($($arg:tt)*) => { $crate::error::Error::Internal(alloc::format!($($arg)*)) };
}
pub(crate) use {capability_err, input_err, internal_err};
