//! Command-line front end for `ddf-core`: JSON formats and the command
//! implementations behind the `ddf` binary.

mod commands;
mod error;
pub mod format;

pub use commands::*;
pub use error::CliError;

/// Environment variable overriding the element-enumeration bound.
pub const MAX_ORDER_VAR: &str = "DDF_MAX_ORDER";

/// Applies `DDF_MAX_ORDER` if it is set.
pub fn apply_max_order_env() -> Result<(), CliError> {
    match std::env::var(MAX_ORDER_VAR) {
        Ok(s) => {
            let bound: u64 = s
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{MAX_ORDER_VAR} must be a positive integer, got {s:?}")))?;
            ddf_core::group::set_enumeration_bound(bound);
            Ok(())
        }
        Err(std::env::VarError::NotPresent) => Ok(()),
        Err(e) => Err(CliError::Usage(format!("{MAX_ORDER_VAR}: {e}"))),
    }
}
