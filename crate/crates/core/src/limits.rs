//! Resource guards.
//!
//! Exhaustive operations are exponential in `n`, so each one carries a default
//! ceiling. `ZONOTILE_MAX_N` raises (or lowers) every ceiling at once; nothing
//! can exceed [`HARD_MAX_N`].

use crate::error::{Error, Result};

/// Absolute bound on the ground size, from the 16-bit subset encoding.
pub const HARD_MAX_N: usize = 16;
/// Default ceiling for clique enumeration over a domain in `2^[n]`.
pub const ENUMERATION_MAX_N: usize = 8;
/// Default ceiling for flip-graph exploration.
pub const FLIP_GRAPH_MAX_N: usize = 5;
/// Largest domain (number of vertices) the clique search accepts.
pub const MAX_DOMAIN: usize = 256;

pub const ENV_MAX_N: &str = "ZONOTILE_MAX_N";

fn env_override() -> Option<usize> {
    std::env::var(ENV_MAX_N)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|v| v.min(HARD_MAX_N))
}

/// Effective ceiling for an operation whose default ceiling is `default`.
pub fn effective_max(default: usize) -> usize {
    env_override().unwrap_or(default)
}

pub fn guard_n(what: &str, n: usize, default: usize) -> Result<()> {
    let max = effective_max(default);
    if n > max {
        return Err(Error::ResourceGuard(format!(
            "{what} requires n <= {max}, got n = {n} (set {ENV_MAX_N} to override)"
        )));
    }
    Ok(())
}
